//! Closed-form solution families: momentum–helicity plane waves, squared
//! sets from `sin(kz + γ)` and plane-wave seeds, and massless Weyl waves.

mod generators;
mod mode;
mod structured;
mod weyl;

pub use generators::{
    combine_sets, helicity_eigenvalue, helicity_operator, helicity_wave, phi_basis, squared_from_seed, squared_set,
    squared_set_primed, transform_set, u_sets, w_sets, Generator, Helicity, SolutionSet,
};
pub use mode::{helicity_data, make_mode, HelicityData, ModeParams};
pub use structured::{momentum_slash, Event, Seed, SolutionForm, StructuredSolution};
pub use weyl::{weyl_current_z, weyl_ratios, weyl_waves, WeylSpinor};
