//! Level data, Temperley–Lieb algebra and the colored Kauffman bracket.

pub mod engine;
pub mod fastpath;
pub mod root;
pub mod tl;

use serde::{Deserialize, Serialize};

use crate::braid::ClosedBraidLink;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use engine::{bracket_qg, EngineOptions, EXACT_CABLE_CAP, FLOAT_CABLE_CAP};
pub use fastpath::{fast_path_value, recognize, FastPath};
pub use root::{exact_root, float_root, ExactRoot, FloatRoot, RootData, CONVENTION_TAG};
pub use tl::{jones_wenzl, TLElement};

/// Colors of the link components, in component order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    /// Checks membership in U_r = {0, 2, …, r−3}.
    pub fn validate_tv(&self, r: u32) -> Result<()> {
        for &c in &self.0 {
            if c % 2 == 1 || c + 3 > r {
                return Err(Error::InvalidColor { color: c, r });
            }
        }
        Ok(())
    }
}

/// [n] at the given level.
pub fn quantum_integer<S: Scalar>(n: i64, root: &RootData<S>) -> S {
    root.quantum_integer(n)
}

/// Framing-corrected colored bracket ⟨L(c)⟩ of a closed braid: each
/// component i colored c_i is multiplied by μ_{c_i}^{−w_i}, so the result is
/// an invariant of the unframed link.
pub fn colored_bracket<S: Scalar>(
    link: &ClosedBraidLink,
    coloring: &[u32],
    root: &RootData<S>,
    opts: &EngineOptions,
) -> Result<S> {
    if coloring.len() != link.component_count() {
        return Err(Error::ColoringMismatch { got: coloring.len(), expected: link.component_count() });
    }
    let strand_colors: Vec<u32> = link.component_of_strand.iter().map(|&c| coloring[c]).collect();
    let raw = bracket_qg(&link.braid, &strand_colors, root, opts)?;
    Ok(raw.mul_ref(&framing_correction(link, coloring, root)))
}

/// ∏_i μ_{c_i}^{−w_i}.
pub fn framing_correction<S: Scalar>(link: &ClosedBraidLink, coloring: &[u32], root: &RootData<S>) -> S {
    let mut exp = 0i64;
    let mut odd = false;
    for (i, &c) in coloring.iter().enumerate() {
        let w = link.writhe_per_component[i];
        let c = c as i64;
        exp -= w * (c * c + 2 * c);
        odd ^= (c * w) % 2 != 0;
    }
    let v = root.a_pow(exp).clone();
    if odd {
        v.neg()
    } else {
        v
    }
}

/// Framing-corrected bracket, through a registered closed form when one exists.
pub fn colored_bracket_auto<S: Scalar>(
    link: &ClosedBraidLink,
    coloring: &[u32],
    root: &RootData<S>,
    opts: &EngineOptions,
    use_fast_path: bool,
) -> Result<S> {
    if use_fast_path && coloring.len() == 1 {
        if let Some(fp) = recognize(&link.braid) {
            root.check_color(coloring[0])?;
            return Ok(fast_path_value(fp, coloring[0], root));
        }
    }
    colored_bracket(link, coloring, root, opts)
}

/// The closed form for a recognized knot, or `None`.
pub fn fast_path<S: Scalar>(link: &ClosedBraidLink, coloring: &[u32], root: &RootData<S>) -> Option<S> {
    if coloring.len() != 1 || root.check_color(coloring[0]).is_err() {
        return None;
    }
    recognize(&link.braid).map(|fp| fast_path_value(fp, coloring[0], root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure, BraidWord};
    use crate::cyclo::CyclotomicElement;

    fn eopts() -> EngineOptions {
        EngineOptions::for_backend::<CyclotomicElement>()
    }

    #[test]
    fn unknot_from_stabilized_word() {
        let root = exact_root(9).unwrap();
        let l = closure(&BraidWord::new(2, vec![1]).unwrap());
        for n in 0..=6 {
            assert_eq!(colored_bracket(&l, &[n], &root, &eopts()).unwrap(), root.unknot(n));
        }
    }

    #[test]
    fn hopf_closed_form() {
        let root = exact_root(11).unwrap();
        let l = closure(&BraidWord::new(2, vec![1, 1]).unwrap());
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let v = colored_bracket(&l, &[a, b], &root, &eopts()).unwrap();
                let mut expected = root.quantum_integer(((a + 1) * (b + 1)) as i64);
                if (a + b) % 2 == 1 {
                    expected = expected.neg();
                }
                assert_eq!(v, expected, "({a}, {b})");
            }
        }
    }

    #[test]
    fn figure_eight_fast_path_matches_engine() {
        let root = exact_root(7).unwrap();
        let l = closure(&BraidWord::new(3, vec![-2, 1, -2, 1]).unwrap());
        for n in 0..=5 {
            let e = colored_bracket(&l, &[n], &root, &eopts()).unwrap();
            assert_eq!(Some(e), fast_path(&l, &[n], &root), "n = {n}");
        }
    }

    #[test]
    fn torus_fast_path_matches_engine() {
        let root = exact_root(7).unwrap();
        for (p, q) in [(2usize, 3i32), (2, -3), (2, 5), (3, 4), (3, -2)] {
            let letters: Vec<i32> = (0..q.unsigned_abs() as usize)
                .flat_map(|_| (1..p as i32).map(move |g| g * q.signum()))
                .collect();
            let l = closure(&BraidWord::new(p, letters).unwrap());
            for n in 0..=4 {
                let e = colored_bracket(&l, &[n], &root, &eopts()).unwrap();
                assert_eq!(Some(e), fast_path(&l, &[n], &root), "T({p},{q}) n = {n}");
            }
        }
    }

    #[test]
    fn tv_colors_validated() {
        assert!(Coloring(vec![0, 2, 4]).validate_tv(7).is_ok());
        assert!(Coloring(vec![1]).validate_tv(7).is_err());
        assert!(Coloring(vec![6]).validate_tv(7).is_err());
    }
}
