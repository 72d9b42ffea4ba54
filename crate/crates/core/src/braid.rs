//! Braid words, their closures, and the Seifert state graph.
//!
//! Strand positions are 0-based internally. Letter `±i` is σ_i^{±1} and acts
//! on positions `i-1` and `i`. In a positive crossing the strand coming from
//! the left passes over.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("strand count must be positive".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!("letter {l} invalid on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace- or comma-separated nonzero integers. The strand
    /// count defaults to max|letter| + 1.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters: Vec<i32> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|_| Error::InvalidBraid(format!("bad letter '{t}'"))))
            .collect::<Result<_>>()?;
        let inferred = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1;
        let n = strands.unwrap_or(inferred);
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Canonical text `n:l1 l2 ...` used as a cache and report key.
    pub fn canonical(&self) -> String {
        format!("{}:{}", self.strands, self.text())
    }

    pub fn from_canonical(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidBraid(format!("missing strand count in '{s}'")))?;
        let n = n.trim().parse().map_err(|_| Error::InvalidBraid(format!("bad strand count in '{s}'")))?;
        Self::parse(rest, Some(n))
    }

    /// Letters as whitespace-separated integers.
    pub fn text(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// `perm[p]` is the bottom position reached by the strand starting at top position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    pub fn is_homogeneous(&self) -> bool {
        is_homogeneous(self)
    }

    /// True when every generator σ_1..σ_{n-1} occurs, i.e. the closure diagram is connected.
    pub fn is_connected_diagram(&self) -> bool {
        let mut seen = vec![false; self.strands.saturating_sub(1)];
        for &l in &self.letters {
            seen[l.unsigned_abs() as usize - 1] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// Removes the strands whose top position is not kept, together with
    /// every crossing they take part in.
    pub fn delete_strands(&self, keep: &[bool]) -> BraidWord {
        assert_eq!(keep.len(), self.strands);
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut letters = Vec::new();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let (a, b) = (at[i - 1], at[i]);
            if keep[a] && keep[b] {
                let rank = (0..i).filter(|&p| keep[at[p]]).count();
                letters.push(l.signum() * rank as i32);
            }
            at.swap(i - 1, i);
        }
        let strands = keep.iter().filter(|&&k| k).count().max(1);
        BraidWord { strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedBraidLink {
    pub braid: BraidWord,
    /// Top positions of each component, components ordered by smallest position.
    pub components: Vec<Vec<usize>>,
    pub component_of_strand: Vec<usize>,
    pub writhe_per_component: Vec<i64>,
    /// Off-diagonal: linking numbers. Diagonal: self-writhe.
    pub linking_matrix: Vec<Vec<i64>>,
}

impl ClosedBraidLink {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Closure of the sub-braid formed by the selected components.
    pub fn sublink(&self, keep: &[usize]) -> Result<ClosedBraidLink> {
        let mut mask = vec![false; self.braid.strands()];
        for &c in keep {
            let comp = self.components.get(c).ok_or(Error::InvalidComponent(c))?;
            for &p in comp {
                mask[p] = true;
            }
        }
        Ok(closure(&self.braid.delete_strands(&mask)))
    }
}

/// Crossing data as seen along the word: strands meeting, sign, and which one is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub position: usize,
    pub generator: usize,
    pub sign: i32,
    /// Top positions (strand ids) of the left and right incoming strands.
    pub left: usize,
    pub right: usize,
}

impl CrossingInfo {
    pub fn over(&self) -> usize {
        if self.sign > 0 {
            self.left
        } else {
            self.right
        }
    }

    pub fn under(&self) -> usize {
        if self.sign > 0 {
            self.right
        } else {
            self.left
        }
    }
}

/// Strand identities of every crossing, in word order.
pub fn crossings(braid: &BraidWord) -> Vec<CrossingInfo> {
    let mut at: Vec<usize> = (0..braid.strands()).collect();
    braid
        .letters()
        .iter()
        .enumerate()
        .map(|(position, &l)| {
            let i = l.unsigned_abs() as usize;
            let info = CrossingInfo { position, generator: i, sign: l.signum(), left: at[i - 1], right: at[i] };
            at.swap(i - 1, i);
            info
        })
        .collect()
}

pub fn closure(braid: &BraidWord) -> ClosedBraidLink {
    let n = braid.strands();
    let perm = braid.permutation();
    let mut component_of_strand = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if component_of_strand[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut cycle = Vec::new();
        let mut p = start;
        while component_of_strand[p] == usize::MAX {
            component_of_strand[p] = id;
            cycle.push(p);
            p = perm[p];
        }
        cycle.sort_unstable();
        components.push(cycle);
    }
    let k = components.len();
    let mut sums = vec![vec![0i64; k]; k];
    for c in crossings(braid) {
        let (a, b) = (component_of_strand[c.left], component_of_strand[c.right]);
        if a == b {
            sums[a][a] += c.sign as i64;
        } else {
            sums[a][b] += c.sign as i64;
            sums[b][a] += c.sign as i64;
        }
    }
    let mut linking_matrix = sums.clone();
    for (i, row) in linking_matrix.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                debug_assert_eq!(*v % 2, 0);
                *v /= 2;
            }
        }
    }
    let writhe_per_component = (0..k).map(|i| sums[i][i]).collect();
    ClosedBraidLink { braid: braid.clone(), components, component_of_strand, writhe_per_component, linking_matrix }
}

pub fn is_homogeneous(braid: &BraidWord) -> bool {
    let mut sign = vec![0i32; braid.strands()];
    for &l in braid.letters() {
        let i = l.unsigned_abs() as usize;
        if sign[i] == 0 {
            sign[i] = l.signum();
        } else if sign[i] != l.signum() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberData {
    pub chi: i64,
    pub boundary: i64,
    pub genus: i64,
    /// Whether the braid is homogeneous, i.e. whether the surface is a fiber.
    pub fibered: bool,
}

/// Euler characteristic, boundary count and genus of the Seifert surface of the closure.
pub fn fiber_data(link: &ClosedBraidLink) -> Result<FiberData> {
    let b = &link.braid;
    if !b.is_connected_diagram() {
        let missing = (1..b.strands())
            .find(|&i| !b.letters().iter().any(|l| l.unsigned_abs() as usize == i))
            .unwrap_or(0);
        return Err(Error::SplitDiagram(missing));
    }
    let chi = b.strands() as i64 - b.crossing_count() as i64;
    let boundary = link.component_count() as i64;
    let twice = 2 - chi - boundary;
    if twice % 2 != 0 || twice < 0 {
        return Err(Error::NonIntegralGenus { chi, boundary });
    }
    Ok(FiberData { chi, boundary, genus: twice / 2, fibered: b.is_homogeneous() })
}

/// Which unoriented smoothing the Seifert smoothing of a crossing is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resolution {
    A,
    B,
}

/// The Seifert smoothing of a braid crossing keeps the two strands vertical.
/// In the bracket σ_i ↦ A·id + A⁻¹·e_i the vertical term carries A, so
/// positive crossings are labelled A and negative crossings B.
pub fn seifert_label(sign: i32) -> Resolution {
    if sign > 0 {
        Resolution::A
    } else {
        Resolution::B
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateEdge {
    /// Seifert circles joined (i-1, i), 0-based.
    pub circles: (usize, usize),
    pub sign: i32,
    pub position: usize,
    pub label: Resolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateGraph {
    pub vertices: usize,
    pub edges: Vec<StateEdge>,
}

impl StateGraph {
    /// Edges joining circles `i` and `i+1`, in word order.
    pub fn edges_between(&self, i: usize) -> impl Iterator<Item = &StateEdge> {
        self.edges.iter().filter(move |e| e.circles.0 == i)
    }
}

pub fn state_graph(braid: &BraidWord) -> StateGraph {
    let edges = braid
        .letters()
        .iter()
        .enumerate()
        .map(|(position, &l)| {
            let i = l.unsigned_abs() as usize;
            StateEdge { circles: (i - 1, i), sign: l.signum(), position, label: seifert_label(l.signum()) }
        })
        .collect();
    StateGraph { vertices: braid.strands(), edges }
}

/// Output of a Markov move with the induced map on components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovResult {
    pub braid: BraidWord,
    /// `component_map[old]` is the component of the new closure corresponding to `old`.
    pub component_map: Vec<usize>,
}

/// γ β γ⁻¹, with γ in the same braid group as β.
pub fn conjugate(beta: &BraidWord, gamma: &BraidWord) -> Result<MarkovResult> {
    let n = beta.strands();
    if gamma.letters.iter().any(|l| l.unsigned_abs() as usize >= n) {
        return Err(Error::InvalidBraid(format!("conjugator {gamma} does not lie in B_{n}")));
    }
    let gamma = BraidWord { strands: n, letters: gamma.letters.clone() };
    let out = gamma.concat(beta).concat(&gamma.inverse());
    let old = closure(beta);
    let new = closure(&out);
    // The new strand at top position p reaches β at position perm_γ(p).
    let pg = gamma.permutation();
    let mut component_map = vec![usize::MAX; old.component_count()];
    for p in 0..n {
        component_map[old.component_of_strand[pg[p]]] = new.component_of_strand[p];
    }
    Ok(MarkovResult { braid: out, component_map })
}

/// β σ_n^{±1} on n+1 strands.
pub fn stabilize(beta: &BraidWord, positive: bool) -> MarkovResult {
    let n = beta.strands();
    let mut letters = beta.letters.clone();
    letters.push(if positive { n as i32 } else { -(n as i32) });
    let out = BraidWord { strands: n + 1, letters };
    let old = closure(beta);
    let new = closure(&out);
    let component_map = old.components.iter().map(|c| new.component_of_strand[c[0]]).collect();
    MarkovResult { braid: out, component_map }
}

/// Inverse of [`stabilize`]: the last strand must meet exactly one crossing.
pub fn destabilize(beta: &BraidWord) -> Result<MarkovResult> {
    let n = beta.strands();
    if n < 2 {
        return Err(Error::IllegalDestabilization("single strand".into()));
    }
    let last = (n - 1) as i32;
    let hits: Vec<usize> = (0..beta.letters.len()).filter(|&k| beta.letters[k].abs() == last).collect();
    if hits.len() != 1 {
        return Err(Error::IllegalDestabilization(format!(
            "generator {last} occurs {} times",
            hits.len()
        )));
    }
    // Conjugate the single occurrence to the end, then drop it.
    let k = hits[0];
    let mut letters: Vec<i32> = beta.letters[k + 1..].to_vec();
    letters.extend_from_slice(&beta.letters[..k]);
    let out = BraidWord { strands: n - 1, letters };
    let old = closure(beta);
    let new = closure(&out);
    // Track components through the cyclic rotation: the rotated word starts
    // at the configuration reached after letter k.
    let mut at: Vec<usize> = (0..n).collect();
    for &l in &beta.letters[..=k] {
        let i = l.unsigned_abs() as usize;
        at.swap(i - 1, i);
    }
    let mut component_map = vec![usize::MAX; old.component_count()];
    for (pos, &strand) in at.iter().enumerate() {
        let target = if pos == n - 1 { n - 2 } else { pos };
        component_map[old.component_of_strand[strand]] = new.component_of_strand[target];
    }
    Ok(MarkovResult { braid: out, component_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&bw(2, &[1])).component_count(), 1);
        let hopf = closure(&bw(2, &[1, 1]));
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.linking_matrix[0][1], 1);
        assert_eq!(closure(&bw(3, &[-2, 1, -2, 1])).component_count(), 1);
    }

    #[test]
    fn homogeneity_examples() {
        assert!(is_homogeneous(&bw(3, &[-2, 1, -2, 1])));
        assert!(!is_homogeneous(&bw(2, &[1, -1])));
        assert!(is_homogeneous(&bw(3, &[1, 2, 1])));
    }

    #[test]
    fn figure_eight_fiber() {
        let f = fiber_data(&closure(&bw(3, &[-2, 1, -2, 1]))).unwrap();
        assert_eq!(f, FiberData { chi: -1, boundary: 1, genus: 1, fibered: true });
        assert!(matches!(fiber_data(&closure(&bw(3, &[1, 1]))), Err(Error::SplitDiagram(2))));
    }

    #[test]
    fn state_graph_examples() {
        let g = state_graph(&bw(2, &[]));
        assert_eq!((g.vertices, g.edges.len()), (2, 0));
        let g = state_graph(&bw(2, &[1, 1, 1]));
        assert_eq!(g.edges.len(), 3);
        assert!(g.edges.iter().all(|e| e.circles == (0, 1) && e.sign == 1 && e.label == Resolution::A));
    }

    #[test]
    fn markov_examples() {
        let c = conjugate(&bw(2, &[1, 1]), &bw(2, &[-1])).unwrap();
        assert_eq!(c.braid, bw(2, &[-1, 1, 1, 1]));
        assert!(conjugate(&bw(2, &[1]), &bw(3, &[2])).is_err());
        let s = stabilize(&bw(2, &[1]), false);
        assert_eq!(s.braid, bw(3, &[1, -2]));
        assert_eq!(closure(&s.braid).component_count(), 1);
        let d = destabilize(&bw(3, &[1, 2])).unwrap();
        assert_eq!(d.braid, bw(2, &[1]));
        assert!(destabilize(&bw(3, &[2, 1, 2])).is_err());
    }

    #[test]
    fn delete_strands_recovers_sublink() {
        // Hopf link with a third strand linked to the first component only.
        let l = closure(&bw(3, &[1, 1, 2, 2]));
        assert_eq!(l.component_count(), 3);
        let sub = l.sublink(&[0, 1]).unwrap();
        assert_eq!(sub.braid, bw(2, &[1, 1]));
    }

    #[test]
    fn parse_and_canonical() {
        let b = BraidWord::parse("1 -2 1 -2", None).unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(BraidWord::from_canonical(&b.canonical()).unwrap(), b);
        assert!(BraidWord::parse("1 0", None).is_err());
        assert!(BraidWord::parse("3", Some(3)).is_err());
        assert_eq!(BraidWord::parse("", None).unwrap().strands(), 1);
    }
}
