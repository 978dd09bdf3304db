//! JSON input and output: matrix files, report documents and witness
//! re-verification.

pub mod codec;
pub mod encode;
pub mod witness;

pub use codec::{parse_matrix_file, parse_matrix_json, InputMatrix, JsonCodec};
pub use encode::{cert_report_json, certificate_json, diag_recipe_json, report_json, tri_recipe_json, typed_decision_json};
pub use witness::{verify_report, VerifyOutcome, WitnessEntry};
