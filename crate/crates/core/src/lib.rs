//! Invertible lifting of Boolean function pipelines and the groups the lifted
//! steps generate.
//!
//! A non-invertible pipeline `x ↦ f_n(... f_1(x))` is turned into a product of
//! involutions `φ_n ∘ ... ∘ φ_1` by XOR-lifting each step into its own output
//! register. The crate then works with the group those involutions generate:
//!
//! - [`boolfn`]: truth-table functions and the bit packing convention.
//! - [`lifting`]: pipelines, register layout, and the lifted involutions.
//! - [`permgroup`]: explicit closure, shortest words, `D_8` recognition.
//! - [`coxeter`]: Coxeter matrices, presentations, Todd–Coxeter enumeration.
//! - [`quantum`]: the induced permutation unitaries on sparse qubit states.
//! - [`cli`]: pipeline files, reports, and the `coxlift` command.
//!
//! ```
//! use coxlift::boolfn::BoolFunc;
//! use coxlift::lifting::{LiftedPipeline, PipelineSpec};
//! use coxlift::permgroup::closure;
//!
//! let id = BoolFunc::identity(1)?;
//! let spec = PipelineSpec::new(vec![1, 1, 1], vec![id.clone(), id])?;
//! let lifted = LiftedPipeline::new(&spec)?;
//! let group = closure(lifted.generators(), 1_000)?;
//! assert_eq!(group.order(), 8);
//! assert!(group.is_dihedral_8());
//! # Ok::<(), coxlift::Error>(())
//! ```

pub mod boolfn;
pub mod cli;
pub mod coxeter;
mod error;
mod keyed;
pub mod lifting;
pub mod perm;
pub mod permgroup;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/coxeter.md")]
    mod coxeter {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    mod quantum {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
