//! Per-level data: the Kauffman variable, colors, quantum integers and η².

use num_complex::Complex64;

use crate::cyclo::CyclotomicElement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Bumped whenever a convention affecting stored values changes.
pub const CONVENTION_TAG: &str = "A=exp(i*pi/r);v1";

/// Level data at odd r ≥ 5 with A = e^{iπ/r}, q = A² and [n] = (q^n − q^{−n})/(q − q^{−1}).
#[derive(Clone, Debug)]
pub struct RootData<S: Scalar> {
    pub r: u32,
    /// A^k for 0 ≤ k < 2r.
    apow: Vec<S>,
    pub colors: Vec<u32>,
    /// [n] for 0 ≤ n ≤ r.
    qint: Vec<S>,
    /// [n]! for 0 ≤ n < r.
    qfact: Vec<S>,
    /// qbin[n][k] for 0 ≤ k ≤ n < r.
    qbin: Vec<Vec<S>>,
    pub delta: S,
    pub eta_sq: S,
}

pub type ExactRoot = RootData<CyclotomicElement>;
pub type FloatRoot = RootData<Complex64>;

pub fn check_level(r: i64) -> Result<u32> {
    if r < 5 || r % 2 == 0 || r > u32::MAX as i64 {
        Err(Error::InvalidLevel(r))
    } else {
        Ok(r as u32)
    }
}

impl<S: Scalar> RootData<S> {
    pub fn new(r: i64) -> Result<Self> {
        let r = check_level(r)?;
        let order = 2 * r as u64;
        let apow = S::root_powers(order)?;
        let one = apow[0].clone();
        let zero = one.zero_like();
        let ap = |k: i64| apow[k.rem_euclid(order as i64) as usize].clone();

        // [n] = Σ_{k<n} q^{n-1-2k}, with no division.
        let qint: Vec<S> = (0..=r as i64)
            .map(|n| (0..n).fold(zero.clone(), |acc, k| acc.add_ref(&ap(2 * (n - 1 - 2 * k)))))
            .collect();
        let mut qfact = vec![one.clone()];
        for n in 1..r as usize {
            let next = qfact[n - 1].mul_ref(&qint[n]);
            qfact.push(next);
        }
        // Balanced q-Pascal rule: [n,k] = q^{-k}[n-1,k] + q^{n-k}[n-1,k-1].
        let mut qbin: Vec<Vec<S>> = Vec::with_capacity(r as usize);
        for n in 0..r as i64 {
            let row: Vec<S> = (0..=n)
                .map(|k| {
                    if k == 0 || k == n {
                        return one.clone();
                    }
                    let prev = &qbin[(n - 1) as usize];
                    let mut v = ap(-2 * k).mul_ref(&prev[k as usize]);
                    v.mul_add_assign(&ap(2 * (n - k)), &prev[(k - 1) as usize]);
                    v
                })
                .collect();
            qbin.push(row);
        }
        let delta = ap(2).add_ref(&ap(-2)).neg();
        let colors: Vec<u32> = (0..r.saturating_sub(2)).step_by(2).collect();
        let norm_sq = colors
            .iter()
            .fold(zero.clone(), |mut acc, &c| {
                let q = &qint[c as usize + 1];
                acc.mul_add_assign(q, q);
                acc
            });
        let eta_sq = norm_sq.inv()?;
        Ok(RootData { r, apow, colors, qint, qfact, qbin, delta, eta_sq })
    }

    pub fn order(&self) -> u64 {
        2 * self.r as u64
    }

    pub fn one(&self) -> S {
        self.apow[0].clone()
    }

    pub fn zero(&self) -> S {
        self.apow[0].zero_like()
    }

    /// A^k for any integer k.
    pub fn a_pow(&self, k: i64) -> &S {
        &self.apow[k.rem_euclid(self.apow.len() as i64) as usize]
    }

    /// [n] for any integer n; periodic with period r at this root.
    pub fn quantum_integer(&self, n: i64) -> S {
        let r = self.r as i64;
        let m = n.rem_euclid(r) as usize;
        self.qint[m].clone()
    }

    /// [n]! for 0 ≤ n < r.
    pub fn qfact(&self, n: usize) -> &S {
        &self.qfact[n]
    }

    /// Balanced Gaussian binomial [n choose k] for 0 ≤ k ≤ n < r.
    pub fn qbinom(&self, n: usize, k: usize) -> &S {
        &self.qbin[n][k]
    }

    /// Framing factor μ_n = (−1)ⁿ A^{n²+2n}.
    pub fn twist(&self, n: u32) -> S {
        let n = n as i64;
        let v = self.a_pow(n * n + 2 * n).clone();
        if n % 2 == 1 {
            v.neg()
        } else {
            v
        }
    }

    /// Value of the 0-framed unknot colored n: (−1)ⁿ[n+1].
    pub fn unknot(&self, n: u32) -> S {
        let v = self.quantum_integer(n as i64 + 1);
        if n % 2 == 1 {
            v.neg()
        } else {
            v
        }
    }

    pub fn check_color(&self, c: u32) -> Result<()> {
        if c + 2 > self.r {
            Err(Error::InvalidColor { color: c, r: self.r })
        } else {
            Ok(())
        }
    }
}

/// RootData for the exact backend.
pub fn exact_root(r: i64) -> Result<ExactRoot> {
    RootData::new(r)
}

/// RootData for the floating-point backend.
pub fn float_root(r: i64) -> Result<FloatRoot> {
    RootData::new(r)
}
