pub mod fingrp;
pub mod perm;
pub mod subz;

pub use fingrp::{FinGrp, FinGrpHom, Subgroup, SubgroupId, DEFAULT_ORDER_BOUND};
pub use perm::Perm;
pub use subz::{SubZ, SubZMorphism, SubZObject};
