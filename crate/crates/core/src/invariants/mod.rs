//! RT and TV invariants of link complements, growth series, integrality,
//! infinite-order certificates and the persistent result cache.

pub mod cache;
pub mod certify;
pub mod growth;
pub mod integrality;
pub mod rt;
pub mod tv;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::{Backend, Scalar};
use crate::skein::EngineOptions;

pub use cache::{Cache, CacheKey, InvariantRecord};
pub use certify::{certify_infinite_order, check_admissible, Certificate, SearchOutcome};
pub use growth::{dehn_filling_compare, growth_series, DehnReport, GrowthEntry, GrowthSeries};
pub use integrality::{integrality_check, IntegralityReport};
pub use rt::{rt_s3_link, RtValue};
pub use tv::{coloring_count, nth_coloring, tv_link_complement, tv_real};

/// Colorings allowed in one sum unless configured otherwise.
pub const DEFAULT_COLORING_BUDGET: u128 = 1_000_000;

/// Levels above this need a registered fast path for growth series.
pub const GENERIC_GROWTH_MAX_R: u32 = 31;

#[derive(Clone, Copy, Debug)]
pub struct InvariantOptions {
    pub engine: EngineOptions,
    pub coloring_budget: u128,
    /// Use registered closed forms for recognized knots.
    pub use_fast_path: bool,
    /// Allow the generic engine in growth series beyond `GENERIC_GROWTH_MAX_R`.
    pub force_generic: bool,
}

impl InvariantOptions {
    pub fn for_backend<S: Scalar>() -> Self {
        InvariantOptions {
            engine: EngineOptions::for_backend::<S>(),
            coloring_budget: DEFAULT_COLORING_BUDGET,
            use_fast_path: true,
            force_generic: false,
        }
    }
}

/// A computed number in both decimal and (when exact) coefficient form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberRepr {
    pub backend: Backend,
    pub re: String,
    pub im: String,
    /// Power-basis coefficients as "num/den" strings, exact backend only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
}

impl NumberRepr {
    pub fn from_scalar<S: Scalar + ExactForm>(v: &S) -> Self {
        let z = v.to_complex();
        let exact = v.exact_form();
        NumberRepr {
            backend: S::backend(),
            re: sig12(z.re),
            im: sig12(z.im),
            order: exact.as_ref().map(|e| e.0),
            coeffs: exact.map(|e| e.1),
        }
    }

    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.re.parse().unwrap_or(f64::NAN), self.im.parse().unwrap_or(f64::NAN))
    }
}

/// Access to exact coefficients where the backend has them.
pub trait ExactForm {
    fn exact_form(&self) -> Option<(u64, Vec<String>)>;
}

impl ExactForm for crate::cyclo::CyclotomicElement {
    fn exact_form(&self) -> Option<(u64, Vec<String>)> {
        Some((self.order(), self.coefficient_strings()))
    }
}

impl ExactForm for Complex64 {
    fn exact_form(&self) -> Option<(u64, Vec<String>)> {
        None
    }
}

/// Decimal rendering with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            let t = s.trim_end_matches('0').trim_end_matches('.');
            if t == "-0" { "0".into() } else { t.to_string() }
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}
