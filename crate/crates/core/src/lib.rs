//! CHSH correlations for two qubits measured with unsharp spin-POVMs.
//!
//! The crate evaluates quantum CHSH values for biased and unbiased dichotomic
//! POVMs `Π± = (𝕀 ± (α𝕀 + η a·σ))/2`, computes the local bound that follows
//! when hidden variables only fix the response of the projectors in each
//! POVM's spectral decomposition (`2(|α|+η)²`), and classifies the `(α, η)`
//! plane by which bound the quantum value violates.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: fixed-size 2×2 / 4×4 complex matrices and Bloch vectors.
//! - [`povm`]: projector pairs and biased/unbiased effect pairs.
//! - [`quantum`]: density matrices, Born-rule correlations, CHSH values and
//!   their closed forms.
//! - [`lhv`]: deterministic local strategies and brute-force local bounds.
//! - [`analysis`]: violation margins, thresholds and region scans.
//! - [`cli`]: the `unsharp-chsh` command-line front end.
//! - [`verify`]: a self-check suite over all of the above.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod lhv;
pub mod linalg;
pub mod povm;
pub mod quantum;
pub mod verify;

pub use error::{Error, Result};
