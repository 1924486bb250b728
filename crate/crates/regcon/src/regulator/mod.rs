//! Regulator constants, Burnside-ring functions and the twist sets T_{Θ,p}.

pub mod constants;
pub mod functions;
pub mod square;
pub mod tau;

pub use constants::{
    d_function, regconst_irreducible, regconst_perm, regconst_rep, regconst_rep_exact, OrbitConstant, RegulatorContext, SourceModule, Strategy,
};
pub use functions::{functions_equivalent, gdi_ef, gdi_local, BurnsideFunction, CompareMode, Equivalence};
pub use square::{PadicSquareClass, SquareClass};
pub use tau::{check_twist_properties, tau_theta, OrbitParity, PropertyCheck, TwistSpec};
