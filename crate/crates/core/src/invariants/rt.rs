use serde::{Deserialize, Serialize};

use crate::braid::ClosedBraidLink;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::skein::{colored_bracket_auto, RootData};

use super::InvariantOptions;

/// RT_r(S³, (L, c)) stored as the pair (⟨L(c)⟩, η²); the phase of η is not fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RtValue<S> {
    pub bracket: S,
    pub eta_sq: S,
}

impl<S: Scalar> RtValue<S> {
    /// |RT| = sqrt(η²)·|⟨L(c)⟩|.
    pub fn modulus(&self) -> f64 {
        self.eta_sq.to_complex().re.sqrt() * self.bracket.to_complex().norm()
    }

    /// |RT|² = η²·⟨L(c)⟩·conj⟨L(c)⟩, in the backend's arithmetic.
    pub fn modulus_sq(&self) -> S {
        self.eta_sq.mul_ref(&self.bracket).mul_ref(&self.bracket.conj())
    }
}

pub fn rt_s3_link<S: Scalar>(
    link: &ClosedBraidLink,
    coloring: &[u32],
    root: &RootData<S>,
    opts: &InvariantOptions,
) -> Result<RtValue<S>> {
    let bracket = colored_bracket_auto(link, coloring, root, &opts.engine, opts.use_fast_path)?;
    Ok(RtValue { bracket, eta_sq: root.eta_sq.clone() })
}

/// RT_r(S³) of the empty link.
pub fn rt_empty<S: Scalar>(root: &RootData<S>) -> RtValue<S> {
    RtValue { bracket: root.one(), eta_sq: root.eta_sq.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure, BraidWord};
    use crate::skein::{exact_root, float_root};

    #[test]
    fn empty_link_is_eta() {
        let root = float_root(7).unwrap();
        let v = rt_empty(&root);
        assert!((v.modulus() - root.eta_sq.re.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn unknot_modulus() {
        let root = exact_root(9).unwrap();
        let opts = InvariantOptions::for_backend::<crate::cyclo::CyclotomicElement>();
        let l = closure(&BraidWord::new(1, vec![]).unwrap());
        for c in [0u32, 2, 4, 6] {
            let v = rt_s3_link(&l, &[c], &root, &opts).unwrap();
            let expected = root.eta_sq.embed().re.sqrt() * root.quantum_integer(c as i64 + 1).embed().norm();
            assert!((v.modulus() - expected).abs() < 1e-12);
        }
    }
}
