//! Level-one modular functions: j, the Faber family j_m, and CM traces.

pub mod cache;
pub mod cm;
pub mod domain;
pub mod eval;
pub mod faber;
pub mod series;

pub use cache::{resolve_cache_dir, JCache, CACHE_ENV};
pub use cm::{auto_precision, cm_trace, cm_trace_deviation, cm_trace_with, heegner};
pub use domain::{mobius, reduce_generic, reduce_to_fundamental_domain, DomainPoint};
pub use eval::{eval_jm, eval_jm_generic, eval_jm_with_terms, jm_series, jm_series_double, jm_series_extended, JmSeries, SeriesScalar};
pub use faber::{compose_faber, faber_polynomial, jm_coefficients_hecke, FaberPolynomial, MAX_FABER_DEGREE};
pub use series::{delta_series, j_coefficients, j_coefficients_capped, QSeries};
