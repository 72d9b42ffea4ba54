//! Temperley–Lieb algebra on planar matchings and Jones–Wenzl idempotents.
//!
//! A matching of 2k points lists the partner of every point; points `0..k`
//! are the top boundary (left to right) and `k..2k` the bottom boundary.
//! The product `x * y` stacks `x` on top of `y`.

use std::collections::BTreeMap;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::skein::root::RootData;

pub type Matching = Vec<u8>;

fn identity_matching(k: usize) -> Matching {
    (0..2 * k).map(|p| if p < k { (p + k) as u8 } else { (p - k) as u8 }).collect()
}

/// Stacks `x` on top of `y`; returns the matching and the number of closed loops.
pub fn compose(x: &[u8], y: &[u8], k: usize) -> (Matching, usize) {
    let mut out = vec![u8::MAX; 2 * k];
    let mut mid_seen = vec![false; k];
    // Walk from a boundary point of the result until another boundary point is hit.
    let walk = |start_in_x: bool, p: usize, mid_seen: &mut Vec<bool>| -> usize {
        let (mut in_x, mut p) = (start_in_x, p);
        loop {
            if in_x {
                let q = x[p] as usize;
                if q < k {
                    return q;
                }
                mid_seen[q - k] = true;
                in_x = false;
                p = q - k;
            } else {
                let q = y[p] as usize;
                if q >= k {
                    return q;
                }
                mid_seen[q] = true;
                in_x = true;
                p = q + k;
            }
        }
    };
    for t in 0..2 * k {
        if out[t] != u8::MAX {
            continue;
        }
        let end = if t < k { walk(true, t, &mut mid_seen) } else { walk(false, t, &mut mid_seen) };
        out[t] = end as u8;
        out[end] = t as u8;
    }
    let mut loops = 0;
    for j in 0..k {
        if mid_seen[j] {
            continue;
        }
        loops += 1;
        // Trace the cycle through the middle: x bottom j → … alternating.
        let mut m = j;
        loop {
            mid_seen[m] = true;
            let a = y[m] as usize; // partner in y of its top point m, also a top point
            mid_seen[a] = true;
            let b = x[a + k] as usize - k; // partner in x of bottom point a
            if b == j {
                break;
            }
            m = b;
        }
    }
    (out, loops)
}

/// Number of loops in the Markov closure of a matching (top j joined to bottom j).
pub fn closure_loops(x: &[u8], k: usize) -> usize {
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut parent: Vec<usize> = (0..2 * k).collect();
    let mut components = 2 * k;
    let arcs = (0..2 * k).map(|p| (p, x[p] as usize)).chain((0..k).map(|j| (j, j + k)));
    for (a, b) in arcs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}

#[derive(Clone, Debug, PartialEq)]
pub struct TLElement<S: Scalar> {
    k: usize,
    terms: BTreeMap<Matching, S>,
}

impl<S: Scalar> TLElement<S> {
    pub fn zero(k: usize) -> Self {
        TLElement { k, terms: BTreeMap::new() }
    }

    pub fn identity(k: usize, one: &S) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(identity_matching(k), one.clone());
        TLElement { k, terms }
    }

    /// The cup–cap generator e_i, 1 ≤ i < k.
    pub fn generator(k: usize, i: usize, one: &S) -> Self {
        assert!(i >= 1 && i < k);
        let mut m = identity_matching(k);
        let (a, b) = (i - 1, i);
        m[a] = b as u8;
        m[b] = a as u8;
        m[k + a] = (k + b) as u8;
        m[k + b] = (k + a) as u8;
        let mut terms = BTreeMap::new();
        terms.insert(m, one.clone());
        TLElement { k, terms }
    }

    pub fn strands(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u8]) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn identity_coefficient(&self) -> Option<&S> {
        self.terms.get(&identity_matching(self.k))
    }

    fn add_term(&mut self, m: Matching, c: S) {
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale_by(&self, s: &S) -> Self {
        let mut out = Self::zero(self.k);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul_ref(s));
        }
        out
    }

    fn delta_pow(root: &RootData<S>, n: usize) -> S {
        let mut v = root.one();
        for _ in 0..n {
            v = v.mul_ref(&root.delta);
        }
        v
    }

    pub fn mul(&self, other: &Self, root: &RootData<S>) -> Self {
        assert_eq!(self.k, other.k);
        let mut out = Self::zero(self.k);
        let mut dpow = vec![root.one()];
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let (m, loops) = compose(mx, my, self.k);
                while dpow.len() <= loops {
                    let next = dpow.last().unwrap().mul_ref(&root.delta);
                    dpow.push(next);
                }
                let c = cx.mul_ref(cy).mul_ref(&dpow[loops]);
                out.add_term(m, c);
            }
        }
        out
    }

    /// Right multiplication by e_i, cheaper than a general product.
    pub fn mul_generator(&self, i: usize, root: &RootData<S>) -> Self {
        let e = Self::generator(self.k, i, &root.one());
        let (me, _) = e.terms.iter().next().unwrap();
        let mut out = Self::zero(self.k);
        for (mx, cx) in &self.terms {
            let (m, loops) = compose(mx, me, self.k);
            let c = if loops == 0 { cx.clone() } else { cx.mul_ref(&Self::delta_pow(root, loops)) };
            out.add_term(m, c);
        }
        out
    }

    /// Left multiplication by e_i.
    pub fn generator_mul(&self, i: usize, root: &RootData<S>) -> Self {
        let e = Self::generator(self.k, i, &root.one());
        let (me, _) = e.terms.iter().next().unwrap();
        let mut out = Self::zero(self.k);
        for (mx, cx) in &self.terms {
            let (m, loops) = compose(me, mx, self.k);
            let c = if loops == 0 { cx.clone() } else { cx.mul_ref(&Self::delta_pow(root, loops)) };
            out.add_term(m, c);
        }
        out
    }

    /// Juxtaposition: `self` on the left, `other` on the right.
    pub fn tensor(&self, other: &Self) -> Self {
        let (k1, k2) = (self.k, other.k);
        let k = k1 + k2;
        let map1 = |p: usize| if p < k1 { p } else { k + (p - k1) };
        let map2 = |p: usize| if p < k2 { k1 + p } else { k + k1 + (p - k2) };
        let mut out = Self::zero(k);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = vec![0u8; 2 * k];
                for p in 0..2 * k1 {
                    m[map1(p)] = map1(m1[p] as usize) as u8;
                }
                for p in 0..2 * k2 {
                    m[map2(p)] = map2(m2[p] as usize) as u8;
                }
                out.add_term(m, c1.mul_ref(c2));
            }
        }
        out
    }

    /// `self ⊗ 1`: one more vertical strand on the right.
    pub fn extend(&self, one: &S) -> Self {
        self.tensor(&TLElement::identity(1, one))
    }

    /// Markov trace: close every strand, each loop contributing δ.
    pub fn trace(&self, root: &RootData<S>) -> S {
        let mut acc = root.zero();
        for (m, c) in &self.terms {
            let loops = closure_loops(m, self.k);
            acc.mul_add_assign(c, &Self::delta_pow(root, loops));
        }
        acc
    }
}

/// The Jones–Wenzl idempotent f_n, defined for 0 ≤ n ≤ r − 2.
///
/// Uses f_{n+1} = f_n⊗1 + Σ_{k=1}^{n} ([k]/[n+1]) (f_n⊗1) e_n e_{n−1} ⋯ e_k, the
/// single-sum form of the Wenzl recursion for loop value δ = −[2].
pub fn jones_wenzl<S: Scalar>(n: usize, root: &RootData<S>) -> Result<TLElement<S>> {
    if n + 2 > root.r as usize {
        return Err(Error::InvalidColor { color: n as u32, r: root.r });
    }
    let one = root.one();
    let mut f = TLElement::identity(n.min(1), &one);
    if n == 0 {
        return Ok(TLElement::identity(0, &one));
    }
    for m in 1..n {
        let base = f.extend(&one);
        let inv = root.quantum_integer(m as i64 + 1).inv()?;
        let mut next = base.clone();
        let mut chain = base;
        for k in (1..=m).rev() {
            chain = chain.mul_generator(k, root);
            let c = root.quantum_integer(k as i64).mul_ref(&inv);
            next = next.add(&chain.scale_by(&c));
        }
        f = next;
    }
    Ok(f)
}

/// Cables a braid: strand s is replaced by `colors[s]` parallel strands
/// (colors refer to top positions). Returns the cabled word and the top
/// cable widths in order.
pub fn cable_word(braid: &BraidWord, colors: &[u32]) -> (BraidWord, Vec<u32>) {
    let mut at: Vec<u32> = colors.to_vec();
    let width: usize = colors.iter().map(|&c| c as usize).sum();
    let mut letters = Vec::new();
    for &l in braid.letters() {
        let i = l.unsigned_abs() as usize;
        let (a, b) = (at[i - 1] as usize, at[i] as usize);
        let p: usize = at[..i - 1].iter().map(|&c| c as usize).sum();
        for k in (0..a).rev() {
            for t in 0..b {
                letters.push(l.signum() * (p + k + t + 1) as i32);
            }
        }
        at.swap(i - 1, i);
    }
    (BraidWord::new(width.max(1), letters).expect("cabled word is valid"), colors.to_vec())
}

/// Blackboard-framed colored bracket of a closed braid computed in the
/// Temperley–Lieb algebra. Only practical for small total cable width.
pub fn bracket_via_tl<S: Scalar>(braid: &BraidWord, strand_colors: &[u32], root: &RootData<S>) -> Result<S> {
    let one = root.one();
    let mut x = TLElement::identity(0, &one);
    for &c in strand_colors {
        x = x.tensor(&jones_wenzl(c as usize, root)?);
    }
    let (cabled, _) = cable_word(braid, strand_colors);
    if x.strands() == 0 {
        return Ok(one);
    }
    for &l in cabled.letters() {
        let i = l.unsigned_abs() as usize;
        let (id_c, e_c) = if l > 0 { (root.a_pow(1), root.a_pow(-1)) } else { (root.a_pow(-1), root.a_pow(1)) };
        let xe = x.mul_generator(i, root);
        x = x.scale_by(id_c).add(&xe.scale_by(e_c));
    }
    Ok(x.trace(root))
}
