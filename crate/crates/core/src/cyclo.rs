//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis ζ⁰…ζ^{φ(n)−1}, reduced modulo the
//! n-th cyclotomic polynomial. Integral elements whose coefficients fit in
//! `i128` use a compact representation; every operation on it is checked and
//! falls back to arbitrary precision on overflow, so results are always exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use dashu_int::ops::Gcd;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared per-order data: the cyclotomic polynomial and the reduced powers of ζ.
#[derive(Debug)]
pub struct CycloContext {
    order: u64,
    phi: usize,
    /// Coefficients of Φ_order, lowest degree first; monic of degree `phi`.
    modulus: Vec<i64>,
    /// `pow[k]` is ζ^k in canonical form, for 0 ≤ k < order.
    pow: Vec<Vec<i64>>,
    roots: Vec<Complex64>,
    units: Vec<u64>,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &q);
        }
    }
    memo.insert(n, p.clone());
    p
}

/// Φ_n with coefficients lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    cyclotomic_poly(n, &mut HashMap::new())
}

impl CycloContext {
    fn build(order: u64) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let mut pow = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            pow.push(cur.clone());
            let carry = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for i in 0..phi {
                    cur[i] -= carry * modulus[i];
                }
            }
        }
        let roots = (0..phi)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / order as f64))
            .collect();
        let units = (1..=order).filter(|&k| gcd_u64(k, order) == 1).collect();
        CycloContext { order, phi, modulus, pow, roots, units }
    }

    /// Shared context for `order`, built once per process.
    pub fn get(order: u64) -> Result<Arc<CycloContext>> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        static REGISTRY: OnceLock<Mutex<HashMap<u64, Arc<CycloContext>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = reg.lock().expect("cyclotomic registry poisoned");
        Ok(map.entry(order).or_insert_with(|| Arc::new(CycloContext::build(order))).clone())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Residues coprime to the order, i.e. the Galois group.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    fn reduce_index(&self, k: i64) -> usize {
        k.rem_euclid(self.order as i64) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Integral element, every coefficient fits in i128.
    Small(Vec<i128>),
    /// Numerators over a common positive denominator, fully reduced, and never
    /// representable as `Small`.
    Big(Vec<IBig>, UBig),
}

/// An exact element of Q(ζ_order) in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicElement {
    ctx: Arc<CycloContext>,
    repr: Repr,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.repr == other.repr
    }
}

impl Eq for CyclotomicElement {}

impl std::hash::Hash for CyclotomicElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.repr.hash(state);
    }
}

fn normalize(mut num: Vec<IBig>, mut den: UBig) -> Repr {
    let mut g = den.clone();
    for c in &num {
        if g == UBig::ONE {
            break;
        }
        g = c.gcd(&g);
    }
    if g != UBig::ONE {
        let gi = IBig::from(g.clone());
        for c in num.iter_mut() {
            *c = &*c / &gi;
        }
        den = den / g;
    }
    if den == UBig::ONE {
        let small: Option<Vec<i128>> = num.iter().map(|c| i128::try_from(c).ok()).collect();
        if let Some(v) = small {
            return Repr::Small(v);
        }
    }
    Repr::Big(num, den)
}

fn small_to_big(v: &[i128]) -> Vec<IBig> {
    v.iter().map(|&c| IBig::from(c)).collect()
}

fn checked_add_vec(a: &[i128], b: &[i128], sign: i128) -> Option<Vec<i128>> {
    a.iter().zip(b).map(|(&x, &y)| x.checked_add(y.checked_mul(sign)?)).collect()
}

fn small_mul(ctx: &CycloContext, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let phi = ctx.phi;
    let mut prod = vec![0i128; 2 * phi - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = prod[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
    }
    for d in phi..2 * phi - 1 {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        let row = &ctx.pow[d % ctx.order as usize];
        for t in 0..phi {
            if row[t] != 0 {
                prod[t] = prod[t].checked_add(c.checked_mul(row[t] as i128)?)?;
            }
        }
    }
    prod.truncate(phi);
    Some(prod)
}

fn big_mul(ctx: &CycloContext, a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    let phi = ctx.phi;
    let mut prod = vec![IBig::ZERO; 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == IBig::ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if *y != IBig::ZERO {
                prod[i + j] += x * y;
            }
        }
    }
    for d in phi..2 * phi - 1 {
        if prod[d] == IBig::ZERO {
            continue;
        }
        let c = std::mem::take(&mut prod[d]);
        let row = &ctx.pow[d % ctx.order as usize];
        for t in 0..phi {
            if row[t] != 0 {
                prod[t] += &c * IBig::from(row[t]);
            }
        }
    }
    prod.truncate(phi);
    prod
}

impl CyclotomicElement {
    fn from_repr(ctx: Arc<CycloContext>, repr: Repr) -> Self {
        CyclotomicElement { ctx, repr }
    }

    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        Self::from_repr(ctx.clone(), Repr::Small(vec![0; ctx.phi]))
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<CycloContext>, k: i64) -> Self {
        let mut v = vec![0i128; ctx.phi];
        v[0] = k as i128;
        Self::from_repr(ctx.clone(), Repr::Small(v))
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, q: &RBig) -> Self {
        let mut num = vec![IBig::ZERO; ctx.phi];
        num[0] = q.numerator().clone();
        Self::from_repr(ctx.clone(), normalize(num, q.denominator().clone()))
    }

    /// ζ^k in canonical form, for any integer k.
    pub fn zeta_pow(ctx: &Arc<CycloContext>, k: i64) -> Self {
        let row = &ctx.pow[ctx.reduce_index(k)];
        Self::from_repr(ctx.clone(), Repr::Small(row.iter().map(|&c| c as i128).collect()))
    }

    /// Builds an element from rational coefficients of ζ⁰, ζ¹, … (any length),
    /// reducing modulo the cyclotomic polynomial.
    pub fn from_coefficients(ctx: &Arc<CycloContext>, coeffs: &[RBig]) -> Self {
        let mut acc = Self::zero(ctx);
        for (k, c) in coeffs.iter().enumerate() {
            if *c != RBig::ZERO {
                let term = Self::zeta_pow(ctx, k as i64).mul_rational(c);
                acc = &acc + &term;
            }
        }
        acc
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn order(&self) -> u64 {
        self.ctx.order
    }

    /// Canonical coefficients as exact rationals, length φ(order).
    pub fn coefficients(&self) -> Vec<RBig> {
        match &self.repr {
            Repr::Small(v) => v.iter().map(|&c| RBig::from(IBig::from(c))).collect(),
            Repr::Big(num, den) => num.iter().map(|c| RBig::from_parts(c.clone(), den.clone())).collect(),
        }
    }

    /// Coefficients as `num/den` strings.
    pub fn coefficient_strings(&self) -> Vec<String> {
        match &self.repr {
            Repr::Small(v) => v.iter().map(|c| format!("{c}/1")).collect(),
            Repr::Big(num, den) => num.iter().map(|c| format!("{c}/{den}")).collect(),
        }
    }

    pub fn from_coefficient_strings(ctx: &Arc<CycloContext>, coeffs: &[String]) -> Result<Self> {
        if coeffs.len() != ctx.phi {
            return Err(Error::Parse(format!("expected {} coefficients, got {}", ctx.phi, coeffs.len())));
        }
        let parsed: Result<Vec<RBig>> = coeffs.iter().map(|s| parse_rational(s)).collect();
        let parsed = parsed?;
        let den = parsed.iter().fold(UBig::ONE, |acc, q| {
            let d = q.denominator();
            let g = acc.clone().gcd(d);
            acc * (d / g)
        });
        let num = parsed
            .iter()
            .map(|q| q.numerator() * IBig::from(&den / q.denominator()))
            .collect();
        Ok(Self::from_repr(ctx.clone(), normalize(num, den)))
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(v) => v.iter().all(|&c| c == 0),
            Repr::Big(..) => false,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.order != other.ctx.order {
            Err(Error::OrderMismatch(self.ctx.order, other.ctx.order))
        } else {
            Ok(())
        }
    }

    fn big_parts(&self) -> (Vec<IBig>, UBig) {
        match &self.repr {
            Repr::Small(v) => (small_to_big(v), UBig::ONE),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    fn add_signed(&self, other: &Self, sign: i128) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(v) = checked_add_vec(a, b, sign) {
                return Self::from_repr(self.ctx.clone(), Repr::Small(v));
            }
        }
        let (na, da) = self.big_parts();
        let (nb, db) = other.big_parts();
        let ia = IBig::from(da.clone());
        let ib = IBig::from(db.clone());
        let s = IBig::from(sign);
        let num = na.iter().zip(&nb).map(|(x, y)| x * &ib + &s * y * &ia).collect();
        Self::from_repr(self.ctx.clone(), normalize(num, da * db))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_signed(other, 1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_signed(other, -1))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(v) = small_mul(&self.ctx, a, b) {
                return Self::from_repr(self.ctx.clone(), Repr::Small(v));
            }
        }
        let (na, da) = self.big_parts();
        let (nb, db) = other.big_parts();
        let num = big_mul(&self.ctx, &na, &nb);
        Self::from_repr(self.ctx.clone(), normalize(num, da * db))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// `self += a * b`.
    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if let (Repr::Small(acc), Repr::Small(x), Repr::Small(y)) = (&mut self.repr, &a.repr, &b.repr) {
            if let Some(p) = small_mul(&self.ctx, x, y) {
                if let Some(s) = checked_add_vec(acc, &p, 1) {
                    *acc = s;
                    return;
                }
            }
        }
        let p = a.mul_unchecked(b);
        *self = self.add_signed(&p, 1);
    }

    pub fn scale(&self, k: i64) -> Self {
        if let Repr::Small(v) = &self.repr {
            let k = k as i128;
            if let Some(s) = v.iter().map(|&c| c.checked_mul(k)).collect::<Option<Vec<_>>>() {
                return Self::from_repr(self.ctx.clone(), Repr::Small(s));
            }
        }
        let (n, d) = self.big_parts();
        let k = IBig::from(k);
        Self::from_repr(self.ctx.clone(), normalize(n.iter().map(|c| c * &k).collect(), d))
    }

    pub fn mul_rational(&self, q: &RBig) -> Self {
        let (n, d) = self.big_parts();
        let num = n.iter().map(|c| c * q.numerator()).collect();
        Self::from_repr(self.ctx.clone(), normalize(num, d * q.denominator()))
    }

    /// Multiplicative inverse via the norm: a⁻¹ = (∏_{σ≠1} σ(a)) / N(a).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.is_rational() {
            return Ok(Self::from_rational(&self.ctx, &(RBig::ONE / q)));
        }
        let mut others = Self::one(&self.ctx);
        for &k in self.ctx.units.iter().filter(|&&k| k != 1) {
            others = others.mul_unchecked(&self.galois_unchecked(k));
        }
        let norm = self
            .mul_unchecked(&others)
            .is_rational()
            .expect("field norm must be rational");
        Ok(others.mul_rational(&(RBig::ONE / norm)))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.ctx.order as usize;
        let k = k as usize;
        match &self.repr {
            Repr::Small(v) => {
                let mut out = vec![0i128; self.ctx.phi];
                let mut ok = true;
                'outer: for (j, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = &self.ctx.pow[(j * k) % n];
                    for t in 0..self.ctx.phi {
                        let term = match c.checked_mul(row[t] as i128) {
                            Some(x) => x,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        };
                        match out[t].checked_add(term) {
                            Some(x) => out[t] = x,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                if ok {
                    return Self::from_repr(self.ctx.clone(), Repr::Small(out));
                }
                let (num, den) = self.big_parts();
                Self::galois_big(&self.ctx, &num, den, k)
            }
            Repr::Big(num, den) => Self::galois_big(&self.ctx, num, den.clone(), k),
        }
    }

    fn galois_big(ctx: &Arc<CycloContext>, num: &[IBig], den: UBig, k: usize) -> Self {
        let n = ctx.order as usize;
        let mut out = vec![IBig::ZERO; ctx.phi];
        for (j, c) in num.iter().enumerate() {
            if *c == IBig::ZERO {
                continue;
            }
            let row = &ctx.pow[(j * k) % n];
            for t in 0..ctx.phi {
                if row[t] != 0 {
                    out[t] += c * IBig::from(row[t]);
                }
            }
        }
        Self::from_repr(ctx.clone(), normalize(out, den))
    }

    /// The automorphism ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.ctx.order;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd_u64(kk, n) != 1 {
            return Err(Error::NotCoprime { k, order: n });
        }
        Ok(self.galois_unchecked(kk))
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.ctx.order - 1)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn is_rational(&self) -> Option<RBig> {
        match &self.repr {
            Repr::Small(v) => v[1..]
                .iter()
                .all(|&c| c == 0)
                .then(|| RBig::from(IBig::from(v[0]))),
            Repr::Big(num, den) => num[1..]
                .iter()
                .all(|c| *c == IBig::ZERO)
                .then(|| RBig::from_parts(num[0].clone(), den.clone())),
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<IBig> {
        let q = self.is_rational()?;
        (*q.denominator() == UBig::ONE).then(|| q.numerator().clone())
    }

    /// Numerical value at ζ = exp(2πi/order).
    pub fn embed(&self) -> Complex64 {
        match &self.repr {
            Repr::Small(v) => v
                .iter()
                .zip(&self.ctx.roots)
                .fold(Complex64::new(0.0, 0.0), |acc, (&c, z)| acc + z * c as f64),
            Repr::Big(num, den) => num
                .iter()
                .zip(&self.ctx.roots)
                .fold(Complex64::new(0.0, 0.0), |acc, (c, z)| {
                    let q = RBig::from_parts(c.clone(), den.clone());
                    acc + z * q.to_f64().value()
                }),
        }
    }
}

fn parse_rational(s: &str) -> Result<RBig> {
    let s = s.trim();
    let bad = |_| Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: IBig = n.trim().parse().map_err(bad)?;
            let d: IBig = d.trim().parse().map_err(bad)?;
            if d == IBig::ZERO {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(RBig::from_parts_signed(n, d))
        }
        None => Ok(RBig::from(s.parse::<IBig>().map_err(bad)?)),
    }
}

/// ζ_order^power in canonical form. The order must be a positive multiple of 4.
pub fn cyc_make(order: u64, power: i64) -> Result<CyclotomicElement> {
    if order < 4 || order % 4 != 0 {
        return Err(Error::InvalidOrder(order));
    }
    let ctx = CycloContext::get(order)?;
    Ok(CyclotomicElement::zeta_pow(&ctx, power))
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc<{}>({})", self.ctx.order, self)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficients();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate().rev() {
            if *c == RBig::ZERO {
                continue;
            }
            let neg = *c < RBig::ZERO;
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == RBig::ONE;
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{mag}*z")?,
                _ if unit => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CyclotomicElement> for &'a CyclotomicElement {
            type Output = CyclotomicElement;
            /// Panics if the orders differ; use the `try_` methods for a checked variant.
            fn $m(self, rhs: &'a CyclotomicElement) -> CyclotomicElement {
                let f: fn(&CyclotomicElement, &CyclotomicElement) -> Result<CyclotomicElement> = $body;
                f(self, rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $m(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.try_add(b));
binop!(Sub, sub, |a, b| a.try_sub(b));
binop!(Mul, mul, |a, b| a.try_mul(b));

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.scale(-1)
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.scale(-1)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRecord {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRecord { order: self.ctx.order, coeffs: self.coefficient_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = CycloRecord::deserialize(d)?;
        let ctx = CycloContext::get(rec.order).map_err(serde::de::Error::custom)?;
        CyclotomicElement::from_coefficient_strings(&ctx, &rec.coeffs).map_err(serde::de::Error::custom)
    }
}
