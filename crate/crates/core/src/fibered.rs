//! Stallings homogenization, linking adjustment, the pattern move, the
//! L_{n,m} family, torus braids and Stallings-twist pattern detection.
//!
//! Homogenization layout: original strand j (1-based) sits at position
//! 3j−1 between two filler strands, giving 3n strands in total. Generator
//! σ_g has sign + when g ≡ 0, 1 (mod 3) and − when g ≡ 2 (mod 3), so every
//! gadget below is homogeneous by construction.

use serde::{Deserialize, Serialize};

use crate::braid::{closure, crossings, BraidWord, ClosedBraidLink, StateGraph};
use crate::error::{Error, Result};

fn layout_sign(g: usize) -> i32 {
    if g % 3 == 2 {
        -1
    } else {
        1
    }
}

fn letter(g: usize) -> i32 {
    layout_sign(g) * g as i32
}

/// Output position (1-based) of original strand j (1-based).
fn rest_position(j: usize) -> usize {
    3 * j - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogenizationResult {
    pub braid: BraidWord,
    pub original: BraidWord,
    /// Component id of the Stallings component in the closure of `braid`.
    pub stallings_component: usize,
    /// `original_component[c]` is the component of `braid` matching component c of `original`.
    pub original_component: Vec<usize>,
    /// Index in `braid` where the gadget of each original crossing starts.
    pub gadget_start: Vec<usize>,
    /// lk(K, L_c) for each original component c.
    pub linking_vector: Vec<i64>,
}

impl HomogenizationResult {
    /// Keep-mask selecting the original strands of `braid`.
    pub fn original_mask(&self) -> Vec<bool> {
        let n = self.original.strands();
        let mut keep = vec![false; 3 * n];
        for j in 1..=n {
            keep[rest_position(j) - 1] = true;
        }
        keep
    }

    /// Deletes the Stallings strands, which recovers the original word.
    pub fn delete_stallings(&self) -> BraidWord {
        self.braid.delete_strands(&self.original_mask())
    }

    pub fn closure(&self) -> ClosedBraidLink {
        closure(&self.braid)
    }

    fn refresh(&mut self) {
        let link = closure(&self.braid);
        let n = self.original.strands();
        let orig = closure(&self.original);
        self.original_component = orig
            .components
            .iter()
            .map(|c| link.component_of_strand[rest_position(c[0] + 1) - 1])
            .collect();
        self.stallings_component = link.component_of_strand[0];
        let k = self.stallings_component;
        self.linking_vector = self.original_component.iter().map(|&c| link.linking_matrix[k][c]).collect();
        debug_assert_eq!(link.component_count(), orig.component_count() + 1);
        debug_assert_eq!(self.braid.strands(), 3 * n);
    }

    /// Checks the structural guarantees of the construction.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidBraid(format!("homogenization invariant failed: {m}")));
        if !self.braid.is_homogeneous() {
            return fail("not homogeneous");
        }
        if self.delete_stallings() != self.original {
            return fail("deleting the Stallings strands does not recover the input");
        }
        let link = self.closure();
        if link.component_count() != closure(&self.original).component_count() + 1 {
            return fail("expected exactly one added component");
        }
        // The Stallings sub-braid uses every generator exactly once, so its
        // closure is an unknot.
        let mask: Vec<bool> = self.original_mask().iter().map(|k| !k).collect();
        let k_word = self.braid.delete_strands(&mask);
        let mut seen = vec![0usize; k_word.strands()];
        for &l in k_word.letters() {
            seen[l.unsigned_abs() as usize] += 1;
        }
        if seen[1..].iter().any(|&c| c != 1) {
            return fail("Stallings component is not a trivial one-crossing-per-generator braid");
        }
        Ok(())
    }
}

/// Stallings homogenization: every original strand gains a filler on each
/// side, crossings become homogeneous gadgets, and the fillers are merged
/// into one unknotted component K.
pub fn homogenize(braid: &BraidWord) -> HomogenizationResult {
    let n = braid.strands();
    let mut letters = Vec::new();
    let mut gadget_start = Vec::with_capacity(braid.crossing_count());
    for &l in braid.letters() {
        let j = l.unsigned_abs() as usize;
        let p = rest_position(j);
        gadget_start.push(letters.len());
        let gadget: [usize; 5] = if l > 0 { [p, p + 2, p + 1, p, p + 2] } else { [p + 2, p + 1, p, p + 1, p + 2] };
        letters.extend(gadget.iter().map(|&g| letter(g)));
    }
    // Merge fillers: across each original strand, and across each gap.
    for j in 1..=n {
        let p = rest_position(j);
        letters.extend([letter(p - 1), letter(p), letter(p - 1)]);
        if j < n {
            letters.push(letter(p + 1));
        }
    }
    let mut h = HomogenizationResult {
        braid: BraidWord::new(3 * n, letters).expect("homogenized word is valid"),
        original: braid.clone(),
        stallings_component: 0,
        original_component: Vec::new(),
        gadget_start,
        linking_vector: Vec::new(),
    };
    h.refresh();
    h
}

/// Appends clasps between K and each original component until
/// lk(K, L_c) = targets[c].
pub fn adjust_linking(h: &HomogenizationResult, targets: &[i64]) -> Result<HomogenizationResult> {
    if targets.len() != h.linking_vector.len() {
        return Err(Error::ColoringMismatch { got: targets.len(), expected: h.linking_vector.len() });
    }
    let orig = closure(&h.original);
    // Original strand occupying each rest position at the bottom of the word.
    let perm = h.original.permutation();
    let mut at_bottom = vec![0usize; perm.len()];
    for (top, &bottom) in perm.iter().enumerate() {
        at_bottom[bottom] = top;
    }
    let mut letters = h.braid.letters().to_vec();
    for (c, (&target, &current)) in targets.iter().zip(&h.linking_vector).enumerate() {
        let delta = target - current;
        if delta == 0 {
            continue;
        }
        let pos = (0..perm.len())
            .find(|&q| orig.component_of_strand[at_bottom[q]] == c)
            .expect("component has a strand");
        let p = rest_position(pos + 1);
        // σ_{P−1}² adds +1 (left filler), σ_P^{−2} adds −1 (right filler).
        let g = if delta > 0 { p - 1 } else { p };
        for _ in 0..delta.unsigned_abs() {
            letters.extend([letter(g), letter(g)]);
        }
    }
    let mut out = h.clone();
    out.braid = BraidWord::new(h.braid.strands(), letters)?;
    out.refresh();
    Ok(out)
}

/// The pattern move: before the gadget of original crossing `site`, insert
/// (a^{−l} b^{l})^k where a is a clasp of K with the under strand and b a
/// clasp of K with the over strand. Starting from (lk(K,L₁), lk(K,L₂)) = (1, 0)
/// with the under strand in L₁ this yields (1 − kl, kl).
pub fn insert_pattern(h: &HomogenizationResult, l: usize, k: usize, site: usize) -> Result<HomogenizationResult> {
    let infos = crossings(&h.original);
    let info = infos.get(site).ok_or(Error::InvalidSite(site))?;
    if info.left == info.right {
        return Err(Error::InvalidSite(site));
    }
    if l == 0 || k == 0 {
        return Ok(h.clone());
    }
    let j = info.generator;
    let (under_pos, over_pos) = if info.sign > 0 { (j + 1, j) } else { (j, j + 1) };
    let a = letter(rest_position(under_pos)); // right filler of the under strand: −
    let b = letter(rest_position(over_pos) - 1); // left filler of the over strand: +
    let mut insert = Vec::with_capacity(4 * k * l);
    for _ in 0..k {
        for _ in 0..l {
            insert.extend([a, a]);
        }
        for _ in 0..l {
            insert.extend([b, b]);
        }
    }
    let at = h.gadget_start[site];
    let mut letters = h.braid.letters().to_vec();
    letters.splice(at..at, insert.iter().copied());
    let mut out = h.clone();
    out.braid = BraidWord::new(h.braid.strands(), letters)?;
    for g in out.gadget_start.iter_mut().skip(site) {
        *g += insert.len();
    }
    out.refresh();
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// gcd over i ≠ K of |lk(K, L_i)| equals 1.
pub fn condition_club_gcd(link: &ClosedBraidLink, k: usize) -> Result<bool> {
    if link.component_count() < 2 {
        return Err(Error::TooFewComponents);
    }
    if k >= link.component_count() {
        return Err(Error::InvalidComponent(k));
    }
    let g = (0..link.component_count())
        .filter(|&i| i != k)
        .fold(0u64, |acc, i| gcd(acc, link.linking_matrix[k][i].unsigned_abs()));
    Ok(g == 1)
}

/// (σ₁ ⋯ σ_{p−1})^q.
pub fn torus_braid(p: usize, q: i32) -> Result<BraidWord> {
    if p < 2 {
        return Err(Error::InvalidFamily(format!("torus braid needs p >= 2, got {p}")));
    }
    let letters = (0..q.unsigned_abs())
        .flat_map(|_| (1..p as i32).map(move |g| g * q.signum()))
        .collect();
    BraidWord::new(p, letters)
}

/// Alternating sign pattern of the family: σ_i positive for odd i.
fn family_letter(i: usize) -> i32 {
    if i % 2 == 1 {
        i as i32
    } else {
        -(i as i32)
    }
}

/// The L_{n,m} braid. K₁ = 4₁ occupies strands 1–3, K_j (j ≥ 2) strand j+2;
/// C(j) = σ_{j+2}^{±2} clasps K_j with K_{j+1}.
pub fn family_lnm(n: usize, m: usize) -> Result<BraidWord> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidFamily(format!("L_(n,m) needs n >= 2, m >= 1, got ({n}, {m})")));
    }
    let clasp = |j: usize| [family_letter(j + 2); 2];
    let mut letters = vec![-2, 1, -2, 1];
    letters.extend(clasp(1));
    if n == 2 {
        letters.extend(std::iter::repeat(family_letter(4)).take(2 * m - 1));
        letters.extend(clasp(1));
        letters.extend(clasp(1));
        return BraidWord::new(5, letters);
    }
    letters.extend(std::iter::repeat(family_letter(4)).take(2 * m));
    for _ in 0..2 {
        for j in 1..n {
            letters.extend(clasp(j));
        }
    }
    BraidWord::new(n + 2, letters)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSite {
    /// Seifert circle shared by the two sides.
    pub circle: usize,
    /// Two clasp pairs (edge positions) joining `circle − 1` and `circle`.
    pub left_pairs: [(usize, usize); 2],
    /// Two clasp pairs joining `circle` and `circle + 1`.
    pub right_pairs: [(usize, usize); 2],
    /// Edge signs on the left and right side.
    pub signs: (i32, i32),
    /// Self-linking lk(c_i, c_i⁺) of the two curves; sums to zero.
    pub framing_check: (i64, i64),
}

/// Finds the pattern of a Seifert circle met by two same-sign clasp pairs on
/// one side and two clasp pairs of the opposite sign on the other. A curve
/// through four half-twisted bands of sign ε has self-linking −2ε, so the
/// connected sum of the two curves has lk(c, c⁺) = 0.
pub fn detect_stallings_twist(g: &StateGraph) -> Vec<TwistSite> {
    let mut sites = Vec::new();
    for circle in 1..g.vertices.saturating_sub(1) {
        for eps in [1, -1] {
            let left: Vec<usize> = g.edges_between(circle - 1).filter(|e| e.sign == eps).map(|e| e.position).collect();
            let right: Vec<usize> = g.edges_between(circle).filter(|e| e.sign == -eps).map(|e| e.position).collect();
            if left.len() >= 4 && right.len() >= 4 {
                let framing_check = (-2 * eps as i64, 2 * eps as i64);
                debug_assert_eq!(framing_check.0 + framing_check.1, 0);
                sites.push(TwistSite {
                    circle,
                    left_pairs: [(left[0], left[1]), (left[2], left[3])],
                    right_pairs: [(right[0], right[1]), (right[2], right[3])],
                    signs: (eps, -eps),
                    framing_check,
                });
            }
        }
    }
    sites
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{fiber_data, state_graph};

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn homogenize_figure_eight() {
        let h = homogenize(&bw(3, &[-2, 1, -2, 1]));
        h.check_invariants().unwrap();
        assert_eq!(h.closure().component_count(), 2);
        assert_eq!(h.linking_vector.len(), 1);
    }

    #[test]
    fn homogenize_trivial_word() {
        let h = homogenize(&bw(2, &[1, -1]));
        h.check_invariants().unwrap();
        assert_eq!(h.delete_stallings(), bw(2, &[1, -1]));
    }

    #[test]
    fn adjust_to_targets() {
        let h = homogenize(&bw(2, &[1, 1]));
        let a = adjust_linking(&h, &[1, 0]).unwrap();
        assert_eq!(a.linking_vector, vec![1, 0]);
        a.check_invariants().unwrap();
        assert!(condition_club_gcd(&a.closure(), a.stallings_component).unwrap());
        let same = adjust_linking(&a, &[1, 0]).unwrap();
        assert_eq!(same.braid, a.braid);
    }

    #[test]
    fn pattern_move_linking() {
        let h = adjust_linking(&homogenize(&bw(2, &[1, 1])), &[1, 0]).unwrap();
        let p = insert_pattern(&h, 2, 2, 0).unwrap();
        p.check_invariants().unwrap();
        // Site 0 is positive, so its under strand is the right strand, in L₂.
        let under = closure(&p.original).component_of_strand[crossings(&p.original)[0].under()];
        let (lk_under, lk_over) = (p.linking_vector[under], p.linking_vector[1 - under]);
        assert_eq!(lk_under - h.linking_vector[under], -4);
        assert_eq!(lk_over - h.linking_vector[1 - under], 4);
        assert_eq!(insert_pattern(&h, 0, 3, 0).unwrap().braid, h.braid);
        assert!(insert_pattern(&h, 1, 1, 7).is_err());
    }

    #[test]
    fn club_condition() {
        assert!(condition_club_gcd(&closure(&bw(2, &[1, 1])), 0).unwrap());
        assert!(!condition_club_gcd(&closure(&bw(2, &[1, 1, 1, 1])), 0).unwrap());
        assert!(condition_club_gcd(&closure(&bw(2, &[1])), 0).is_err());
    }

    #[test]
    fn torus_components() {
        assert_eq!(closure(&torus_braid(2, 3).unwrap()).component_count(), 1);
        assert_eq!(closure(&torus_braid(2, 4).unwrap()).component_count(), 2);
        assert_eq!(closure(&torus_braid(3, 3).unwrap()).component_count(), 3);
    }

    #[test]
    fn family_counts() {
        for m in 1..=3 {
            let b = family_lnm(2, m).unwrap();
            assert_eq!((b.strands(), b.crossing_count()), (5, 9 + 2 * m));
            let l = closure(&b);
            assert_eq!(l.component_count(), 2);
            assert_eq!(fiber_data(&l).unwrap().genus, m as i64 + 2);
            for n in 3..=6 {
                let b = family_lnm(n, m).unwrap();
                assert_eq!((b.strands(), b.crossing_count()), (n + 2, 2 + 4 * n + 2 * m));
                assert!(b.is_homogeneous());
                let f = fiber_data(&closure(&b)).unwrap();
                assert_eq!(f.chi, -3 * n as i64 - 2 * m as i64);
                assert_eq!(f.genus, (n + m + 1) as i64);
            }
        }
        assert!(family_lnm(1, 1).is_err());
    }

    #[test]
    fn twist_sites() {
        assert!(detect_stallings_twist(&state_graph(&bw(2, &[1, 1, 1]))).is_empty());
        assert!(detect_stallings_twist(&state_graph(&bw(1, &[]))).is_empty());
        assert!(detect_stallings_twist(&state_graph(&bw(3, &[-2, 1, -2, 1]))).is_empty());
        let sites = detect_stallings_twist(&state_graph(&family_lnm(4, 2).unwrap()));
        assert!(!sites.is_empty());
        assert!(sites.iter().all(|s| s.framing_check.0 + s.framing_check.1 == 0));
    }
}
