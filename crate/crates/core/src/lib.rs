//! A Gray code for ordered trees in which consecutive trees differ by
//! removing one leaf and appending one leaf elsewhere.
//!
//! Trees are preorder level sequences ([`OrderedTree`]). The code for size
//! `n` is the leaf order of a family tree whose parent relation drops the
//! rightmost leaf; [`ordering`] decides the order of each node's children,
//! and [`generator`] streams the result level by level. [`oracle`] checks
//! everything against brute force.
//!
//! ```
//! use ordtree_gray::{gray_code_vec, relations::is_adjacent};
//!
//! let code = gray_code_vec(5).unwrap();
//! assert_eq!(code.len(), 14);
//! assert!(code.windows(2).all(|w| is_adjacent(&w[0], &w[1]).unwrap()));
//! ```

pub mod cli;
pub mod error;
pub mod generator;
pub mod metrics;
pub mod oracle;
pub mod ordering;
pub mod relations;
pub mod tree;

pub use error::{Error, Result};
pub use generator::{
    build_family_tree, delta_stream, export_dot, gray_code, gray_code_vec, DeltaStream, FamilyTree,
    GrayCode,
};
pub use ordering::{CaseId, StepDecision};
pub use relations::Delta;
pub use tree::{LevelSet, OrderedTree};
