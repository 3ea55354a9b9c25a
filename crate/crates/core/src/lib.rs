//! Numerical experiments on subconvex `L^p`-sets of integers.
//!
//! A set `𝒜 ⊆ ℕ` is described by a [`SetExpr`](sets::SetExpr) and
//! materialized over `[1, N]` as an [`IndicatorSlice`](sets::IndicatorSlice).
//! From there:
//!
//! * [`moments`] computes `I_p(N; 𝒜) = ∫₀¹ |Σ_{n ∈ 𝒜(N)} e(nα)|^p dα` and the
//!   discrete analogue modulo `q`, and fits growth exponents across scales;
//! * [`weyl`] evaluates Weyl sums restricted to the set against explicit
//!   bound envelopes;
//! * [`equidist`] measures how `ψ(a_n) mod 1` is distributed;
//! * [`arith`] averages arithmetic functions over the set.
//!
//! ```
//! use subconvex::sets::{materialize, SetExpr};
//! use subconvex::moments::moment_lp;
//!
//! let squarefree: SetExpr = "rfree 2".parse()?;
//! let slice = materialize(&squarefree, 1000)?;
//! assert_eq!(slice.count(), 608);
//! let second = moment_lp(&slice, 2.0, 32768)?;
//! assert!((second.value - 608.0).abs() < 1e-6);
//! # Ok::<(), subconvex::Error>(())
//! ```

pub mod arith;
pub mod equidist;
pub mod error;
pub mod fft;
pub mod moments;
pub mod phase;
pub mod real;
pub mod sets;
pub mod weyl;

pub use error::{Error, Result};

/// Code blocks of the guide under `book/`, compiled and run as doc-tests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/sets.md")]
    pub mod sets {}
    #[doc = include_str!("../../../book/src/moments.md")]
    pub mod moments {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    pub mod weyl {}
    #[doc = include_str!("../../../book/src/equidist.md")]
    pub mod equidist {}
    #[doc = include_str!("../../../book/src/arith.md")]
    pub mod arith {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
