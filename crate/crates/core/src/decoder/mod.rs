//! Sequential decoding of a classical-quantum channel.
//!
//! The decoder tests the received state against each codeword in turn with
//! the binary measurement `{I − A_j, A_j}` and stops at the first acceptance.
//! Each measurement is realized by the square-root dilation on a fresh qubit
//! probe. Because every probe is used once, the system after a rejected step
//! is `R_j(τ) = (I−A_j)τ(I−A_j) + B_j τ B_j` with `B_j = √(A_j(I−A_j))`, and
//! [`SequentialDecoder`] runs on that compressed recursion in `O(M d³)`.
//! [`success_prob_dilated`] and [`union_bound_lhs_dilated`] build the full
//! `d · 2^M` register instead and exist as cross-checks for small `M`.
//!
//! Codeword, step and message indices are 0-based throughout.

mod channel;
mod coding;
mod coherent;
mod maps;
mod simulate;

pub use channel::{Codebook, CqChannel};
pub use coding::{
    capacity_lower_bound, decoding_stats, one_shot_rate, position_operator, random_coding_bound,
    random_coding_experiment, simplex_grid, CapacityBound, DecoderSpec, DecodingStats,
    ExperimentReport,
};
pub use coherent::{coherent_decode, CoherentBranches};
pub use maps::{accept_map, reject_map, BinaryStep, TwoKrausMap};
pub use simulate::{
    decode_trajectory, probe_projectors, sen_bound_check, success_prob_dilated, success_prob_exact,
    union_bound_check, union_bound_lhs_dilated, SequentialDecoder, Trajectory, UnionBound,
    DEGENERATE_REJECT,
};

pub(crate) use simulate::check_projector;
