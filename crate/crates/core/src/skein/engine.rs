//! Colored bracket of a closed braid through the quantum sl₂ representation.
//!
//! Each strand colored c carries the (c+1)-dimensional module with basis
//! w_0..w_c (weight c − 2j). A crossing acts by the braiding in the
//! divided-power basis, whose entries lie in Z[A^{±1}]. Total weight is
//! conserved, so the trace splits into blocks indexed by J = Σ j_s, and in
//! each block the pivotal weight is the constant (−1)^W A^{2W−4J}.

use std::collections::HashMap;
use std::sync::Arc;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::parallel::{par_try_map, Parallelism};
use crate::scalar::Scalar;
use crate::skein::root::RootData;

/// Default cable-width caps.
pub const EXACT_CABLE_CAP: usize = 24;
pub const FLOAT_CABLE_CAP: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    pub cable_cap: usize,
    pub parallelism: Parallelism,
}

impl EngineOptions {
    pub fn for_backend<S: Scalar>() -> Self {
        let cable_cap = match S::backend() {
            crate::scalar::Backend::Exact => EXACT_CABLE_CAP,
            crate::scalar::Backend::Float => FLOAT_CABLE_CAP,
        };
        EngineOptions { cable_cap, parallelism: Parallelism::default() }
    }
}

/// Sparse action of one crossing on V_a ⊗ V_b → V_b ⊗ V_a.
/// `out[i * (b+1) + j]` lists (left index, right index, coefficient).
pub struct CrossingTable<S> {
    pub a: u32,
    pub b: u32,
    pub out: Vec<Vec<(u8, u8, S)>>,
}

pub fn crossing_table<S: Scalar>(a: u32, b: u32, positive: bool, root: &RootData<S>) -> CrossingTable<S> {
    let (ai, bi) = (a as i64, b as i64);
    let qq = root.a_pow(2).sub_ref(root.a_pow(-2));
    let mut qq_pow = vec![root.one()];
    for n in 1..=(a.max(b) as usize) {
        let next = qq_pow[n - 1].mul_ref(&qq);
        qq_pow.push(next);
    }
    let mut out = Vec::with_capacity(((a + 1) * (b + 1)) as usize);
    for i in 0..=ai {
        for j in 0..=bi {
            let mut list = Vec::new();
            if positive {
                for n in 0..=i.min(bi - j) {
                    let lam = ai - 2 * (i - n);
                    let mu = bi - 2 * (j + n);
                    let nu = n as usize;
                    let c = root
                        .a_pow(lam * mu + n * (n - 1))
                        .mul_ref(&qq_pow[nu])
                        .mul_ref(root.qfact(nu))
                        .mul_ref(root.qbinom((ai - i + n) as usize, nu))
                        .mul_ref(root.qbinom((j + n) as usize, nu));
                    if !c.is_zero() {
                        list.push(((j + n) as u8, (i - n) as u8, c));
                    }
                }
            } else {
                let lam = bi - 2 * j;
                let mu = ai - 2 * i;
                for n in 0..=j.min(ai - i) {
                    let nu = n as usize;
                    let mut c = root
                        .a_pow(-lam * mu - n * (n - 1))
                        .mul_ref(&qq_pow[nu])
                        .mul_ref(root.qfact(nu))
                        .mul_ref(root.qbinom((bi - j + n) as usize, nu))
                        .mul_ref(root.qbinom((i + n) as usize, nu));
                    if n % 2 == 1 {
                        c = c.neg();
                    }
                    if !c.is_zero() {
                        list.push(((j - n) as u8, (i + n) as u8, c));
                    }
                }
            }
            out.push(list);
        }
    }
    CrossingTable { a, b, out }
}

/// Weight-space states of one color arrangement, grouped by J and sorted.
struct Arrangement {
    blocks: Vec<Vec<u128>>,
}

struct Packing {
    bits: u32,
    mask: u128,
}

impl Packing {
    fn get(&self, st: u128, s: usize) -> u8 {
        ((st >> (self.bits * s as u32)) & self.mask) as u8
    }
    fn set(&self, st: u128, s: usize, v: u8) -> u128 {
        let sh = self.bits * s as u32;
        (st & !(self.mask << sh)) | ((v as u128) << sh)
    }
}

fn enumerate_states(colors: &[u32], pack: &Packing) -> Arrangement {
    let total: u32 = colors.iter().sum();
    let mut blocks = vec![Vec::new(); total as usize + 1];
    let mut j = vec![0u32; colors.len()];
    loop {
        let mut st = 0u128;
        let mut sum = 0;
        for (s, &v) in j.iter().enumerate() {
            st = pack.set(st, s, v as u8);
            sum += v;
        }
        blocks[sum as usize].push(st);
        // Odometer increment.
        let mut s = 0;
        loop {
            if s == colors.len() {
                for b in blocks.iter_mut() {
                    b.sort_unstable();
                }
                return Arrangement { blocks };
            }
            if j[s] < colors[s] {
                j[s] += 1;
                break;
            }
            j[s] = 0;
            s += 1;
        }
    }
}

/// Blackboard-framed colored bracket of the closure of `braid`, strand `s`
/// (top position) carrying color `strand_colors[s]`.
pub fn bracket_qg<S: Scalar>(
    braid: &BraidWord,
    strand_colors: &[u32],
    root: &RootData<S>,
    opts: &EngineOptions,
) -> Result<S> {
    if strand_colors.len() != braid.strands() {
        return Err(Error::ColoringMismatch { got: strand_colors.len(), expected: braid.strands() });
    }
    for &c in strand_colors {
        root.check_color(c)?;
    }
    // Color 0 is the trivial module; such strands are deleted outright.
    let keep: Vec<bool> = strand_colors.iter().map(|&c| c > 0).collect();
    let colors: Vec<u32> = strand_colors.iter().copied().filter(|&c| c > 0).collect();
    if colors.is_empty() {
        return Ok(root.one());
    }
    let word = braid.delete_strands(&keep);
    if word.letters().is_empty() {
        return Ok(colors.iter().fold(root.one(), |acc, &c| acc.mul_ref(&root.unknot(c))));
    }
    let width: usize = colors.iter().map(|&c| c as usize).sum();
    if width > opts.cable_cap {
        return Err(Error::CableWidth { width, limit: opts.cable_cap });
    }
    let max_c = *colors.iter().max().unwrap();
    let bits = 32 - max_c.leading_zeros();
    if bits as usize * colors.len() > 128 {
        return Err(Error::CableWidth { width, limit: opts.cable_cap });
    }
    let pack = Packing { bits, mask: (1u128 << bits) - 1 };

    // Color arrangement before each letter, deduplicated.
    let mut arr_ids = Vec::with_capacity(word.crossing_count() + 1);
    let mut arrangements: Vec<(Vec<u32>, Arrangement)> = Vec::new();
    let mut cur = colors.clone();
    let lookup = |cur: &Vec<u32>, arrangements: &mut Vec<(Vec<u32>, Arrangement)>| -> usize {
        if let Some(k) = arrangements.iter().position(|(c, _)| c == cur) {
            return k;
        }
        arrangements.push((cur.clone(), enumerate_states(cur, &pack)));
        arrangements.len() - 1
    };
    arr_ids.push(lookup(&cur, &mut arrangements));
    let mut tables: HashMap<(u32, u32, bool), Arc<CrossingTable<S>>> = HashMap::new();
    let mut steps = Vec::with_capacity(word.crossing_count());
    for &l in word.letters() {
        let i = l.unsigned_abs() as usize;
        let key = (cur[i - 1], cur[i], l > 0);
        let table = tables
            .entry(key)
            .or_insert_with(|| Arc::new(crossing_table(key.0, key.1, key.2, root)))
            .clone();
        cur.swap(i - 1, i);
        arr_ids.push(lookup(&cur, &mut arrangements));
        steps.push((i - 1, table));
    }
    if arr_ids[0] != *arr_ids.last().unwrap() {
        return Err(Error::InvalidBraid("strand colors are not constant on components".into()));
    }

    let start = &arrangements[arr_ids[0]].1;
    let tasks: Vec<(usize, usize)> = start
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(jj, b)| (0..b.len()).map(move |k| (jj, k)))
        .collect();

    let diag = par_try_map(&tasks, opts.parallelism, |&(jj, k)| -> Result<Option<S>> {
        let mut block = &start.blocks[jj];
        let mut vec: Vec<Option<S>> = vec![None; block.len()];
        vec[k] = Some(root.one());
        for (t, (pos, table)) in steps.iter().enumerate() {
            let next_block = &arrangements[arr_ids[t + 1]].1.blocks[jj];
            let mut next: Vec<Option<S>> = vec![None; next_block.len()];
            let stride = table.b as usize + 1;
            for (idx, val) in vec.iter().enumerate() {
                let Some(val) = val else { continue };
                let st = block[idx];
                let ji = pack.get(st, *pos) as usize;
                let jr = pack.get(st, pos + 1) as usize;
                for (o1, o2, c) in &table.out[ji * stride + jr] {
                    let st2 = pack.set(pack.set(st, *pos, *o1), pos + 1, *o2);
                    let target = next_block.binary_search(&st2).expect("weight is conserved");
                    match &mut next[target] {
                        Some(acc) => acc.mul_add_assign(c, val),
                        slot @ None => *slot = Some(c.mul_ref(val)),
                    }
                }
            }
            vec = next;
            block = next_block;
        }
        Ok(vec[k].take())
    })?;

    let w = width as i64;
    let mut block_traces: Vec<Option<S>> = vec![None; start.blocks.len()];
    for ((jj, _), d) in tasks.iter().zip(diag) {
        if let Some(d) = d {
            match &mut block_traces[*jj] {
                Some(acc) => acc.add_assign_ref(&d),
                slot @ None => *slot = Some(d),
            }
        }
    }
    let mut total = root.zero();
    for (jj, tr) in block_traces.into_iter().enumerate() {
        if let Some(tr) = tr {
            total.mul_add_assign(root.a_pow(2 * w - 4 * jj as i64), &tr);
        }
    }
    Ok(if w % 2 == 1 { total.neg() } else { total })
}
