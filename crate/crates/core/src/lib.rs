//! Equivariant puzzles for two-step flag varieties.
//!
//! The crate enumerates equivariant puzzles and sums their weights to get
//! Schubert structure constants, checks them against an independent
//! recursion, and implements puzzle mutation together with the aura
//! bookkeeping that proves the rule.
//!
//! ```
//! use twostep::{enumerate::product_expansion, String012};
//! let u: String012 = "01201".parse().unwrap();
//! let v: String012 = "10102".parse().unwrap();
//! let terms = product_expansion(&u, &v).unwrap();
//! assert_eq!(terms.len(), 5);
//! assert_eq!(terms[&"10210".parse().unwrap()].to_string(), "y5 + y4 - y3 - y1");
//! ```

pub mod error;
pub mod label;
pub mod lattice;
pub mod pieces;
pub mod cyclotomic;
pub mod poly;
pub mod delta;
pub mod strings;
pub mod region;
pub mod puzzle;
pub mod enumerate;
pub mod oracle;
pub mod quantum;
pub mod gash;
pub mod flaws;
pub mod mutation;
pub mod aura;
pub mod verify;

pub use error::{Error, Result};
pub use label::Label;
pub use strings::{Content, String012};

/// Guide chapters, compiled as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/strings.md")]
    struct Strings;
    #[doc = include_str!("../../../book/src/puzzles.md")]
    struct Puzzles;
    #[doc = include_str!("../../../book/src/oracle.md")]
    struct Oracle;
    #[doc = include_str!("../../../book/src/quantum.md")]
    struct Quantum;
    #[doc = include_str!("../../../book/src/mutation.md")]
    struct Mutation;
    #[doc = include_str!("../../../book/src/auras.md")]
    struct Auras;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
