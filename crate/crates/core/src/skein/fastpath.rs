//! Closed-form colored brackets for recognized link families.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::scalar::Scalar;
use crate::skein::root::RootData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FastPath {
    /// Figure-eight knot, via the Habiro cyclotomic expansion.
    FigureEight,
    /// Torus knot T(p, q) with gcd(p, q) = 1, via the Rosso–Jones formula.
    TorusKnot { p: u32, q: i32 },
}

impl FastPath {
    pub fn name(&self) -> String {
        match self {
            FastPath::FigureEight => "habiro".into(),
            FastPath::TorusKnot { p, q } => format!("torus({p},{q})"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Recognizes the registered braid words.
pub fn recognize(braid: &BraidWord) -> Option<FastPath> {
    let l = braid.letters();
    if braid.strands() == 3 && (l == [-2, 1, -2, 1] || l == [2, -1, 2, -1] || l == [1, -2, 1, -2] || l == [-1, 2, -1, 2]) {
        return Some(FastPath::FigureEight);
    }
    let p = braid.strands();
    if p < 2 || l.is_empty() || l.len() % (p - 1) != 0 {
        return None;
    }
    let sign = l[0].signum();
    let reps = l.len() / (p - 1);
    let matches = l
        .iter()
        .enumerate()
        .all(|(k, &x)| x == sign * ((k % (p - 1)) as i32 + 1));
    if matches && gcd(p as u64, reps as u64) == 1 {
        return Some(FastPath::TorusKnot { p: p as u32, q: sign * reps as i32 });
    }
    None
}

fn signed<S: Scalar>(v: S, odd: bool) -> S {
    if odd {
        v.neg()
    } else {
        v
    }
}

/// Σ_{k=0}^{N−1} ∏_{j=1}^{k} {N+j}{N−j} with N = n+1 and {m} = A^{2m} − A^{−2m}.
pub fn habiro_normalized<S: Scalar>(n: u32, root: &RootData<S>) -> S {
    let big_n = n as i64 + 1;
    let brace = |m: i64| root.a_pow(2 * m).sub_ref(root.a_pow(-2 * m));
    let mut term = root.one();
    let mut acc = root.one();
    for j in 1..big_n {
        term = term.mul_ref(&brace(big_n + j)).mul_ref(&brace(big_n - j));
        acc.add_assign_ref(&term);
    }
    acc
}

/// 0-framed colored bracket of T(p, q) for a single color n.
pub fn rosso_jones<S: Scalar>(p: u32, q: i32, n: u32, root: &RootData<S>) -> S {
    if q < 0 {
        return rosso_jones(p, -q, n, root).conj();
    }
    let (p, q, n) = (p as i64, q as i64, n as i64);
    let mut acc = root.zero();
    for i in 0..=n {
        let s = n - 2 * i;
        for (m, neg) in [(p * s, false), (p * s - 2, true)] {
            if m < 0 {
                continue;
            }
            let e = q * m * (m + 2) / p;
            let term = root.a_pow(e).mul_ref(&root.quantum_integer(m + 1));
            acc = if neg { acc.sub_ref(&term) } else { acc.add_ref(&term) };
        }
    }
    signed(root.a_pow(-p * q * n * (n + 2)).mul_ref(&acc), n % 2 == 1)
}

/// 0-framed colored bracket of a recognized knot with color n.
pub fn fast_path_value<S: Scalar>(fp: FastPath, n: u32, root: &RootData<S>) -> S {
    match fp {
        FastPath::FigureEight => root.unknot(n).mul_ref(&habiro_normalized(n, root)),
        FastPath::TorusKnot { p, q } => rosso_jones(p, q, n, root),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::root::exact_root;

    #[test]
    fn recognition() {
        let f8 = BraidWord::new(3, vec![-2, 1, -2, 1]).unwrap();
        assert_eq!(recognize(&f8), Some(FastPath::FigureEight));
        let t = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(recognize(&t), Some(FastPath::TorusKnot { p: 3, q: 4 }));
        assert_eq!(recognize(&BraidWord::new(2, vec![1, 1, 1, 1]).unwrap()), None);
        assert_eq!(recognize(&BraidWord::new(3, vec![1, 2, 2]).unwrap()), None);
    }

    #[test]
    fn color_zero_is_one() {
        let root = exact_root(7).unwrap();
        assert_eq!(fast_path_value(FastPath::FigureEight, 0, &root), root.one());
        assert_eq!(rosso_jones(2, 3, 0, &root), root.one());
    }

    #[test]
    fn color_one_figure_eight_is_jones() {
        // J(4_1) normalized = q^{-2} - q^{-1} + 1 - q + q^2 with q = A^{-4}.
        let root = exact_root(11).unwrap();
        let expected = [-8i64, -4, 0, 4, 8]
            .iter()
            .zip([1i64, -1, 1, -1, 1])
            .fold(root.zero(), |acc, (&e, c)| acc.add_ref(&root.a_pow(e).scale(c)));
        assert_eq!(habiro_normalized(1, &root), expected);
    }
}
