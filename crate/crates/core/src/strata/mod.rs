//! Equations, point classification and finite-field audits for the
//! triangularization variety X_M, its strata V_r, and the diagonalization
//! variety Y_M.

pub mod audit;
pub mod components;
pub mod dim;
pub mod equations;
pub mod field;
pub mod index;
pub mod points;

pub use audit::{stratification_audit, stratum_table, table_csv, transport_audit, x_audit, y_audit, ComponentAudit, StrataAudit, TransportAudit};
pub use components::{classify_stratum, classify_y_point, is_triangularizing, transport_point, x_membership_flag, y_components, Target};
pub use dim::{count_polynomial, dim_stratum, dimension_check, dimension_checks, DimensionCheck};
pub use equations::{equations, membership, Constraint, EquationSet, Variety};
pub use field::Fq;
pub use index::{enum_strata, JordanShape, StratumIndex, Which};
pub use points::{enum_equations, enum_gl, PointSet, DEFAULT_ENUM_BUDGET};
