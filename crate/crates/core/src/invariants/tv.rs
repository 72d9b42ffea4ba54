use crate::braid::ClosedBraidLink;
use crate::error::{Error, Result};
use crate::parallel::par_try_map;
use crate::scalar::Scalar;
use crate::skein::{colored_bracket_auto, recognize, RootData};

use super::InvariantOptions;

/// |U_r|ⁿ, saturating.
pub fn coloring_count(r: u32, components: usize) -> u128 {
    let m = ((r - 1) / 2) as u128;
    (0..components).fold(1u128, |acc, _| acc.saturating_mul(m))
}

/// The k-th coloring in lexicographic order, first component most significant.
pub fn nth_coloring(colors: &[u32], components: usize, mut k: u128) -> Vec<u32> {
    let m = colors.len() as u128;
    let mut out = vec![0; components];
    for slot in out.iter_mut().rev() {
        *slot = colors[(k % m) as usize];
        k /= m;
    }
    out
}

pub(crate) fn check_budget(link: &ClosedBraidLink, r: u32, opts: &InvariantOptions) -> Result<u128> {
    let count = coloring_count(r, link.component_count());
    if count > opts.coloring_budget {
        let fast = link.component_count() == 1 && opts.use_fast_path && recognize(&link.braid).is_some();
        if !fast {
            return Err(Error::ColoringBudget { count, limit: opts.coloring_budget });
        }
    }
    Ok(count)
}

/// TV_r(S³∖L) = η²·Σ_{c ∈ U_rⁿ} ⟨L(c)⟩·conj⟨L(c)⟩. Terms are evaluated in
/// parallel and summed in coloring order.
pub fn tv_link_complement<S: Scalar>(link: &ClosedBraidLink, root: &RootData<S>, opts: &InvariantOptions) -> Result<S> {
    let count = check_budget(link, root.r, opts)?;
    let n = link.component_count();
    let idx: Vec<u128> = (0..count).collect();
    let terms = par_try_map(&idx, opts.engine.parallelism, |&k| {
        let c = nth_coloring(&root.colors, n, k);
        let b = colored_bracket_auto(link, &c, root, &opts.engine, opts.use_fast_path)?;
        Ok(b.mul_ref(&b.conj()))
    })?;
    let mut acc = root.zero();
    for t in &terms {
        acc.add_assign_ref(t);
    }
    Ok(acc.mul_ref(&root.eta_sq))
}

/// The real value of a TV result; fails if the imaginary part is not negligible.
pub fn tv_real<S: Scalar>(v: &S) -> Result<f64> {
    let z = v.to_complex();
    if z.im.abs() > 1e-9 * z.re.abs().max(1.0) {
        return Err(Error::NotReal(z.im));
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure, BraidWord};
    use crate::cyclo::CyclotomicElement;
    use crate::skein::{exact_root, float_root};

    #[test]
    fn coloring_enumeration() {
        assert_eq!(coloring_count(7, 2), 9);
        assert_eq!(coloring_count(7, 0), 1);
        assert_eq!(nth_coloring(&[0, 2, 4], 2, 0), vec![0, 0]);
        assert_eq!(nth_coloring(&[0, 2, 4], 2, 5), vec![2, 4]);
    }

    #[test]
    fn unknot_is_one() {
        let l = closure(&BraidWord::new(1, vec![]).unwrap());
        for r in [5, 7, 9, 15] {
            let root = exact_root(r).unwrap();
            let v = tv_link_complement(&l, &root, &InvariantOptions::for_backend::<CyclotomicElement>()).unwrap();
            assert_eq!(v, root.one());
        }
    }

    #[test]
    fn hopf_exact_matches_float() {
        let l = closure(&BraidWord::new(2, vec![1, 1]).unwrap());
        let e = tv_link_complement(&l, &exact_root(7).unwrap(), &InvariantOptions::for_backend::<CyclotomicElement>()).unwrap();
        let f = tv_link_complement(&l, &float_root(7).unwrap(), &InvariantOptions::for_backend::<num_complex::Complex64>())
            .unwrap();
        assert_eq!(e.conj(), e);
        assert!((e.embed() - f).norm() < 1e-9);
        assert!(tv_real(&f).unwrap() > 0.0);
    }

    #[test]
    fn budget_guard() {
        let l = closure(&BraidWord::new(2, vec![1, 1]).unwrap());
        let mut opts = InvariantOptions::for_backend::<CyclotomicElement>();
        opts.coloring_budget = 3;
        let err = tv_link_complement(&l, &exact_root(7).unwrap(), &opts).unwrap_err();
        assert!(matches!(err, Error::ColoringBudget { count: 9, limit: 3 }));
    }
}
