//! Ground-truth engines for the q-boson algebra `a a† - q a† a = 1`.
//!
//! [`NormalForm`] normal-orders operator words symbolically; [`FockVector`]
//! applies them to states in a truncated Fock space. The two are independent
//! and are expected to agree wherever both apply.

mod fock;
mod normal;
mod parse;

pub use fock::FockVector;
pub use normal::NormalForm;
pub use parse::{parse_op_expr, Bindings, OpExpr, ParseError, ParseErrorKind};

use num_bigint::BigInt;

use crate::poly::QPoly;

/// `m N + r` as a normal form.
pub fn affine_number(m: u64, r: u64) -> NormalForm {
    NormalForm::monomial(1, 1, QPoly::constant(BigInt::from(m)))
        + NormalForm::scalar(QPoly::constant(BigInt::from(r)))
}
