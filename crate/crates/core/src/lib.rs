//! Enumeration and query engine for Dung-style abstract argumentation
//! frameworks.
//!
//! ```
//! use afsolve::{enumerate, ArgumentationFramework, Budget, SemanticsKind};
//!
//! let af = ArgumentationFramework::build(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
//! let prf = enumerate(&af, SemanticsKind::Preferred, &mut Budget::default()).unwrap();
//! let names: Vec<_> = af.member_names(&prf.as_slice()[0]).collect();
//! assert_eq!(names, ["a", "c"]);
//! ```

pub mod argset;
pub mod bench;
pub mod encodings;
pub mod error;
pub mod framework;
pub mod io;
pub mod oracle;
pub mod semantics;

pub use argset::ArgumentSet;
pub use error::{Error, Result};
pub use framework::{ArgumentationFramework, EndpointMode};
pub use semantics::{credulous, enumerate, skeptical, Budget, ExtensionSet, SemanticsKind};
