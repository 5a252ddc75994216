//! Permutation codes under the Chebyshev (ℓ∞) distance.
//!
//! - [`perm`]: permutations, distances, the head-extension map, head sets
//!   and interval sets.
//! - [`dpgp`]: direct product group permutation codes.
//! - [`rep`]: recursively extended permutation (REP) code specs.
//! - [`codec`]: natural and sequential encoders, sequential decoder.
//! - [`verify`]: brute-force checks with machine-readable reports.

pub mod codec;
pub mod dpgp;
pub mod error;
pub mod perm;
pub mod rank_set;
pub mod rep;
pub mod rng;
pub mod verify;

pub use codec::{
    decode, encode_natural, encode_sequential, heads_from_message, message_from_heads,
    DecodeResult, HeadSequence, Message,
};
pub use dpgp::{
    dpgp_decode, dpgp_encode, dpgp_enumerate, dpgp_project, dpgp_size, is_dpgp_member, ClassRanks,
    DpgpParams,
};
pub use error::{Error, Result};
pub use perm::{
    chebyshev, code_min_distance, extend_code, headset_min_distance, interval_set,
    maximum_interval, phi_symbol, Distance, HeadSet, Interval, Permutation,
};
pub use rep::{
    c1_headset, kloeve_spec, optimal_rep_size, optimal_spec, rep_enumerate, rep_size,
    validate_spec, RepSpec, SpecReport,
};
