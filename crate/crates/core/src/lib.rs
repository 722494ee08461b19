// `!(x > y)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod groundstate;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod spectrum;
