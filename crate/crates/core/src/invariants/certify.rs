use serde::{Deserialize, Serialize};

use crate::braid::ClosedBraidLink;
use crate::error::{Error, Result};
use crate::skein::{FloatRoot, RootData};
use crate::scalar::Scalar;

use super::rt::rt_s3_link;
use super::tv::{coloring_count, nth_coloring};
use super::InvariantOptions;

/// Surfaces excluded from the dimension bound.
const EXCLUDED: [(i64, i64); 5] = [(1, 0), (0, 0), (0, 1), (0, 2), (0, 3)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub r: u32,
    pub coloring: Vec<u32>,
    pub trace_modulus: f64,
    /// r^{3g−3+n}.
    pub dim_bound: f64,
    pub genus: i64,
    pub boundary: i64,
}

impl Certificate {
    /// Recomputes |RT| in the float backend with the generic engine and
    /// rechecks the inequality and the surface guard.
    pub fn replay(&self, link: &ClosedBraidLink) -> Result<bool> {
        check_admissible(self.genus, self.boundary)?;
        let root = FloatRoot::new(self.r as i64)?;
        let mut opts = InvariantOptions::for_backend::<num_complex::Complex64>();
        opts.use_fast_path = false;
        let m = rt_s3_link(link, &self.coloring, &root, &opts)?.modulus();
        Ok(m > dim_bound(self.r, self.genus, self.boundary) && self.trace_modulus > self.dim_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    pub searched: u128,
    pub total: u128,
    /// Largest modulus seen, with its coloring.
    pub best: Option<(Vec<u32>, f64)>,
}

impl SearchOutcome {
    /// A certificate was found or every coloring was checked.
    pub fn is_definite(&self) -> bool {
        self.certificate.is_some() || self.searched == self.total
    }
}

pub fn check_admissible(g: i64, n: i64) -> Result<()> {
    if g < 0 || n < 0 || EXCLUDED.contains(&(g, n)) {
        return Err(Error::Inadmissible { g, n });
    }
    Ok(())
}

pub fn dim_bound(r: u32, g: i64, n: i64) -> f64 {
    (r as f64).powi((3 * g - 3 + n) as i32)
}

/// Searches colorings in lexicographic order for the first c with
/// |RT_r(S³, (L, c))| > r^{3g−3+n}. At most `coloring_budget` colorings are
/// examined; `searched < total` reports partial coverage.
pub fn certify_infinite_order<S: Scalar>(
    link: &ClosedBraidLink,
    root: &RootData<S>,
    g: i64,
    n: i64,
    opts: &InvariantOptions,
) -> Result<SearchOutcome> {
    check_admissible(g, n)?;
    let bound = dim_bound(root.r, g, n);
    let total = coloring_count(root.r, link.component_count());
    let limit = total.min(opts.coloring_budget);
    let chunk = 256u128;
    let mut searched = 0u128;
    let mut best: Option<(Vec<u32>, f64)> = None;
    while searched < limit {
        let end = (searched + chunk).min(limit);
        let idx: Vec<u128> = (searched..end).collect();
        let moduli = crate::parallel::par_try_map(&idx, opts.engine.parallelism, |&k| {
            let c = nth_coloring(&root.colors, link.component_count(), k);
            let m = rt_s3_link(link, &c, root, opts)?.modulus();
            Ok((c, m))
        })?;
        for (c, m) in moduli {
            searched += 1;
            if best.as_ref().map_or(true, |b| m > b.1) {
                best = Some((c.clone(), m));
            }
            if m > bound {
                let cert = Certificate { r: root.r, coloring: c, trace_modulus: m, dim_bound: bound, genus: g, boundary: n };
                return Ok(SearchOutcome { certificate: Some(cert), searched, total, best });
            }
        }
    }
    Ok(SearchOutcome { certificate: None, searched, total, best })
}
