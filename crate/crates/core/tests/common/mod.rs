//! Brute-force reference for colored Kauffman brackets of closed braids.
//!
//! Each component colored n is replaced by the Chebyshev combination
//! S_n(z) = z·S_{n−1}(z) − S_{n−2}(z) of blackboard-parallel cables. Each
//! cable is evaluated by summing over every A/B smoothing of every crossing,
//! in chunks whose boundary matchings are glued with a union-find. All
//! arithmetic is in Z[A, A⁻¹] until the final evaluation at the root.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use qtv::braid::{closure, BraidWord};
use qtv::cyclo::{CycloContext, CyclotomicElement};

/// Laurent polynomial in A with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(pub BTreeMap<i32, i128>);

impl Laurent {
    pub fn monomial(e: i32, c: i128) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn add_assign(&mut self, o: &Laurent) {
        for (&e, &c) in &o.0 {
            let v = self.0.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                self.0.remove(&e);
            }
        }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                out.add_assign(&Laurent::monomial(e1 + e2, c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, k: i128) -> Laurent {
        let mut out = Laurent::default();
        for (&e, &c) in &self.0 {
            out.add_assign(&Laurent::monomial(e, c * k));
        }
        out
    }

    /// Value at A = e^{iπ/r}, a primitive 2r-th root of unity.
    pub fn evaluate(&self, r: u64) -> CyclotomicElement {
        let ctx = CycloContext::get(2 * r).unwrap();
        let mut acc = CyclotomicElement::zero(&ctx);
        for (&e, &c) in &self.0 {
            let term = CyclotomicElement::zeta_pow(&ctx, e as i64).scale(c as i64);
            acc = &acc + &term;
        }
        acc
    }
}

/// δ^k with δ = −A² − A⁻².
fn delta_pow(k: usize) -> Laurent {
    let delta = {
        let mut d = Laurent::monomial(2, -1);
        d.add_assign(&Laurent::monomial(-2, -1));
        d
    };
    (0..k).fold(Laurent::one(), |acc, _| acc.mul(&delta))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Boundary matching of a diagram on k strands: points 0..k on top, k..2k on
/// the bottom; entry i is the partner of point i.
type Matching = Vec<u8>;

/// Reads off the boundary matching and the closed loops from a union-find
/// whose boundary points are `top` and `bottom`; `n` is the total point count.
fn extract(dsu: &mut Dsu, top: &[usize], bottom: &[usize], n: usize) -> (Matching, usize) {
    let k = top.len();
    let boundary: Vec<usize> = top.iter().chain(bottom).copied().collect();
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &p) in boundary.iter().enumerate() {
        by_root.entry(dsu.find(p)).or_default().push(i);
    }
    let mut m = vec![0u8; 2 * k];
    for ends in by_root.values() {
        assert_eq!(ends.len(), 2, "boundary arc must have two ends");
        m[ends[0]] = ends[1] as u8;
        m[ends[1]] = ends[0] as u8;
    }
    let mut roots: Vec<usize> = (0..n).map(|p| dsu.find(p)).collect();
    roots.sort_unstable();
    roots.dedup();
    (m, roots.len() - by_root.len())
}

type Dict = HashMap<Matching, Laurent>;

/// Exhaustive smoothing sum of a braid chunk: every one of the 2^len states.
fn chunk_dict(k: usize, letters: &[i32]) -> Dict {
    let len = letters.len();
    let npts = (len + 1) * k;
    let pt = |level: usize, pos: usize| level * k + pos;
    let top: Vec<usize> = (0..k).map(|p| pt(0, p)).collect();
    let bottom: Vec<usize> = (0..k).map(|p| pt(len, p)).collect();
    let mut raw: HashMap<(Matching, usize), BTreeMap<i32, i128>> = HashMap::new();
    for state in 0u64..(1u64 << len) {
        let mut dsu = Dsu::new(npts);
        let mut exp = 0i32;
        for (t, &l) in letters.iter().enumerate() {
            let g = l.unsigned_abs() as usize;
            for p in 0..k {
                if p != g - 1 && p != g {
                    dsu.union(pt(t, p), pt(t + 1, p));
                }
            }
            // Bit set: the smoothing weighted A for this crossing sign.
            let a_side = state >> t & 1 == 1;
            let vertical = a_side == (l > 0);
            if vertical {
                dsu.union(pt(t, g - 1), pt(t + 1, g - 1));
                dsu.union(pt(t, g), pt(t + 1, g));
            } else {
                dsu.union(pt(t, g - 1), pt(t, g));
                dsu.union(pt(t + 1, g - 1), pt(t + 1, g));
            }
            exp += if a_side { 1 } else { -1 };
        }
        let key = extract(&mut dsu, &top, &bottom, npts);
        *raw.entry(key).or_default().entry(exp).or_insert(0) += 1;
    }
    let mut dict = Dict::new();
    for ((m, loops), poly) in raw {
        let p = Laurent(poly).mul(&delta_pow(loops));
        dict.entry(m).or_default().add_assign(&p);
    }
    dict
}

/// Stacks `x` on top of `y`.
fn compose(x: &Matching, y: &Matching, k: usize) -> (Matching, usize) {
    // Points: x top 0..k, middle k..2k, y bottom 2k..3k.
    let mut dsu = Dsu::new(3 * k);
    for i in 0..2 * k {
        let j = x[i] as usize;
        dsu.union(i, j);
    }
    for i in 0..2 * k {
        let j = y[i] as usize;
        dsu.union(i + k, j + k);
    }
    let top: Vec<usize> = (0..k).collect();
    let bottom: Vec<usize> = (2 * k..3 * k).collect();
    extract(&mut dsu, &top, &bottom, 3 * k)
}

fn closure_loops(m: &Matching, k: usize) -> usize {
    let mut dsu = Dsu::new(2 * k);
    for i in 0..2 * k {
        dsu.union(i, m[i] as usize);
    }
    for i in 0..k {
        dsu.union(i, i + k);
    }
    let mut roots: Vec<usize> = (0..2 * k).map(|p| dsu.find(p)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Kauffman bracket of the closure of a braid, by exhaustive smoothing.
pub fn bracket(k: usize, letters: &[i32], chunk: usize) -> Laurent {
    if k == 0 {
        return Laurent::one();
    }
    let identity: Matching = (0..2 * k).map(|i| ((i + k) % (2 * k)) as u8).collect();
    let mut acc: Dict = Dict::from([(identity, Laurent::one())]);
    for part in letters.chunks(chunk.max(1)) {
        let c = chunk_dict(k, part);
        let mut next = Dict::new();
        for (m1, p1) in &acc {
            for (m2, p2) in &c {
                let (m, loops) = compose(m1, m2, k);
                next.entry(m).or_default().add_assign(&p1.mul(p2).mul(&delta_pow(loops)));
            }
        }
        acc = next;
    }
    let mut total = Laurent::default();
    for (m, p) in &acc {
        total.add_assign(&p.mul(&delta_pow(closure_loops(m, k))));
    }
    total
}

/// Blackboard-parallel cable: the strand at each position becomes `widths[pos]` strands.
pub fn parallel_cable(braid: &BraidWord, strand_widths: &[usize]) -> (usize, Vec<i32>) {
    let mut widths = strand_widths.to_vec();
    let mut out = Vec::new();
    for &l in braid.letters() {
        let g = l.unsigned_abs() as usize;
        let (a, b) = (widths[g - 1], widths[g]);
        let p: usize = widths[..g - 1].iter().sum();
        let s = l.signum();
        for kk in (0..a).rev() {
            for t in 0..b {
                out.push(s * (p + kk + t + 1) as i32);
            }
        }
        widths.swap(g - 1, g);
    }
    (strand_widths.iter().sum(), out)
}

/// Coefficients of S_n(z) in powers of z.
pub fn chebyshev(n: usize) -> Vec<i128> {
    let mut prev = vec![1i128];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0i128, 1];
    for _ in 1..n {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Blackboard-framed colored bracket, colors indexed by component.
pub fn colored_bracket_oracle(braid: &BraidWord, colors: &[u32]) -> Laurent {
    let link = closure(braid);
    assert_eq!(colors.len(), link.component_count());
    let polys: Vec<Vec<i128>> = colors.iter().map(|&c| chebyshev(c as usize)).collect();
    let mut memo: HashMap<Vec<usize>, Laurent> = HashMap::new();
    let mut total = Laurent::default();
    let mut ks = vec![0usize; colors.len()];
    loop {
        let coef: i128 = ks.iter().zip(&polys).map(|(&k, p)| p[k]).product();
        if coef != 0 {
            let widths: Vec<usize> = link.component_of_strand.iter().map(|&c| ks[c]).collect();
            let b = memo
                .entry(ks.clone())
                .or_insert_with(|| {
                    let (k, word) = parallel_cable(braid, &widths);
                    bracket(k, &word, 10)
                })
                .clone();
            total.add_assign(&b.scale(coef));
        }
        // Next exponent vector.
        let mut i = 0;
        loop {
            if i == ks.len() {
                return total;
            }
            ks[i] += 1;
            if ks[i] < polys[i].len() {
                break;
            }
            ks[i] = 0;
            i += 1;
        }
    }
}

/// The framing factor ∏ μ_{c_i}^{−w_i} with μ_n = (−1)ⁿ A^{n²+2n}.
pub fn framing_factor(braid: &BraidWord, colors: &[u32]) -> Laurent {
    let link = closure(braid);
    let mut e = 0i32;
    let mut sign = 1i128;
    for (i, &c) in colors.iter().enumerate() {
        let w = link.writhe_per_component[i] as i32;
        let c = c as i32;
        e -= w * (c * c + 2 * c);
        if (c * w) % 2 != 0 {
            sign = -sign;
        }
    }
    Laurent::monomial(e, sign)
}
