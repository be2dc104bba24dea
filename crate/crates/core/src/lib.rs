pub mod bessel;
pub mod density;
pub mod error;
pub mod experiments;
pub mod field;
pub mod grid;
pub mod kernel;
pub mod spectral;

pub use density::{
    binary_entropy, decoherence_predicate, eigenvalues2, entropy_bits, reduce, reduce_from_modes,
    EntropySample, EntropyTrace, ReducedDensityMatrix,
};
pub use error::{Error, Result};
pub use field::{make_gaussian_packet, make_plane_wave, Chirality, InitialSpec, SpinorField};
pub use grid::Grid1D;
pub use spectral::{EnergySign, ModeDecomposition, SpectralEngine};

// The guide's Rust snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grid-and-states.md")]
    mod grid_and_states {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    mod entropy {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
