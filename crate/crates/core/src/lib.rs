//! Quantum burst-error-correcting codes: finite fields, classical and
//! stabilizer codes, burst analysis, code search, tensor product codes and a
//! correlated memory-channel simulator.

pub mod burst;
pub mod channel;
pub mod classical;
pub mod error;
pub mod ext;
pub mod field;
pub mod gf4;
pub mod matrix;
pub mod poly;
pub mod qtpc;
pub mod registry;
pub mod search;
pub mod stabilizer;
pub mod syndrome;

pub use burst::{
    check_qrb, located_burst_check, no_cloning_check, oracle_burst_capability, qrb, quantum_burst_capability,
    BurstAnalysis,
};
pub use channel::{build_decoder, entanglement_fidelity, ChannelModel, DecoderMode, DecoderTable, EfResult, Strategy};
pub use classical::{cyclic_from_poly, LinearCode};
pub use error::{Error, Result};
pub use ext::ExtField;
pub use field::{Field, Gf2, Gf4};
pub use gf4::F4;
pub use poly::Poly;
pub use registry::{Construction, RegistryEntry};
pub use search::{build_code, build_entry, parse_genpoly, GenPolySpec};
pub use stabilizer::{min_distance, StabilizerCode, SymplecticVector};
