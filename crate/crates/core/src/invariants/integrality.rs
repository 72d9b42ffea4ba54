use serde::{Deserialize, Serialize};

use crate::braid::ClosedBraidLink;
use crate::cyclo::CyclotomicElement;
use crate::error::Result;
use crate::skein::ExactRoot;

use super::tv::tv_link_complement;
use super::InvariantOptions;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub r: u32,
    pub is_integer: bool,
    /// The rational value, when TV is rational.
    pub value: Option<String>,
    /// Distance of the embedded value from the nearest integer.
    pub residual: f64,
    /// TV is fixed by every ζ → ζ^k with k a unit.
    pub galois_fixed: bool,
    pub tv: CyclotomicElement,
}

pub fn integrality_check(link: &ClosedBraidLink, root: &ExactRoot, opts: &InvariantOptions) -> Result<IntegralityReport> {
    let tv = tv_link_complement(link, root, opts)?;
    let rational = tv.is_rational();
    let is_integer = tv.as_integer().is_some();
    let x = tv.embed().re;
    let residual = (x - x.round()).abs();
    let mut galois_fixed = true;
    for &k in tv.context().units() {
        if tv.galois(k as i64)? != tv {
            galois_fixed = false;
            break;
        }
    }
    Ok(IntegralityReport {
        r: root.r,
        is_integer,
        value: rational.map(|q| q.to_string()),
        residual,
        galois_fixed,
        tv,
    })
}
