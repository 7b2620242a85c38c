//! Torsion certificates, the three-way vanishing/torsion harness, and
//! Eulerianness checks in k_∞.

pub mod euler;
pub mod harness;
pub mod torsion;

pub use euler::{
    carlitz_zeta_inf, carlitz_zeta_partial, euler_ratio, eulerian_check_ext, eulerian_check_inf,
    eulerian_ratio_check, power_sum_enumerated, power_sum_exact, zeta_euler_check, EulerReport,
    EulerVerdict, WitnessPower, ZetaPartial, ZetaPlace, ZetaValue,
};
pub use harness::{
    flag_for, simultaneous_vanishing, theorem_harness, Flag, HarnessReport, VanishingReport,
    DEFAULT_PRECISION,
};
pub use torsion::{torsion_search, Torsion};
