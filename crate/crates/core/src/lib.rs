//! Reverse Prüfer codes for labeled rooted trees, the rooted Prüfer codec,
//! and exhaustive checks of leader/degree enumeration identities with exact
//! integer polynomials.
//!
//! ```
//! use rptree::{rp_decode, rp_encode, LabeledTree, RpCode};
//!
//! let tree = LabeledTree::from_parent_array(&[3, 6, 0, 1, 6, 3]).unwrap();
//! let code = rp_encode(&tree);
//! assert_eq!(code.entries(), &[3, 3, 6, 1, 6]);
//! assert_eq!(rp_decode(&code), tree);
//! assert_eq!(tree.leaders(), vec![1, 2, 4, 5]);
//! ```

pub mod cli;
pub mod codec;
pub mod enumerate;
pub mod error;
pub mod experiments;
pub mod format;
pub mod poly;
pub mod report;
pub mod tree;
pub mod variants;

pub use codec::{
    leader_choice_count, predicted_leaders, prufer_decode, prufer_encode, prufer_encode_with,
    reversal_check, rp_decode, rp_decode_annotated, rp_encode, LeafOrder, PruferCode, RpCode,
    StepAnnotation, StepCase,
};
pub use enumerate::{enumerate_trees, sample_tree, CodeSpace, RootPolicy, TreeSampler};
pub use error::{Error, Result};
pub use poly::{
    pn, product_formula, rhs_indegree, rhs_main, BivariatePolynomial, MultivariatePolynomial,
    Polynomial, UnivariatePolynomial,
};
pub use report::{Verdict, VerificationReport};
pub use tree::{Label, LabeledTree, StatRecord, TreeStats};
