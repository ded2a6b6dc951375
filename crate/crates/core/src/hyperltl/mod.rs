//! HyperLTL formulas: syntax, parsing, normalization, zipping and exact
//! evaluation on lasso-shaped traces.

mod ast;
mod eval;
mod lasso;
mod parser;
mod transform;

pub use ast::{
    classify_prefix, FragmentClass, Formula, IndexedAtom, Ltl, QfFormula, Quantifier, TupleProp,
    ZippedFormula,
};
pub use eval::{bounded_eval, eval_plain, eval_positions, eval_zipped};
pub use lasso::{common_shape, unzip_lasso, zip_lassos, LassoTrace, Letter};
pub use parser::{parse_body, parse_formula, ParseError};
pub use transform::{desugar, negate_nnf, to_nnf, zip_formula, ZipError};
