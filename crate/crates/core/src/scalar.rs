//! The number type shared by the exact and floating-point backends.

use std::fmt::Debug;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloContext, CyclotomicElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn tag(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

pub trait Scalar: Clone + Send + Sync + Debug + 'static {
    /// ζ_order^k for 0 ≤ k < order.
    fn root_powers(order: u64) -> Result<Vec<Self>>;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
    fn scale(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn to_complex(&self) -> Complex64;
    fn backend() -> Backend;

    fn zero_like(&self) -> Self {
        self.scale(0)
    }

    fn neg(&self) -> Self {
        self.scale(-1)
    }

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
}

impl Scalar for CyclotomicElement {
    fn root_powers(order: u64) -> Result<Vec<Self>> {
        let ctx = CycloContext::get(order)?;
        Ok((0..order as i64).map(|k| CyclotomicElement::zeta_pow(&ctx, k)).collect())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        CyclotomicElement::mul_add_assign(self, a, b)
    }
    fn scale(&self, k: i64) -> Self {
        CyclotomicElement::scale(self, k)
    }
    fn is_zero(&self) -> bool {
        CyclotomicElement::is_zero(self)
    }
    fn conj(&self) -> Self {
        CyclotomicElement::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        CyclotomicElement::inv(self)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed()
    }
    fn backend() -> Backend {
        Backend::Exact
    }
}

impl Scalar for Complex64 {
    fn root_powers(order: u64) -> Result<Vec<Self>> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let step = 2.0 * std::f64::consts::PI / order as f64;
        Ok((0..order).map(|k| Complex64::from_polar(1.0, step * k as f64)).collect())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn scale(&self, k: i64) -> Self {
        self * k as f64
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(Complex64::inv(self))
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn backend() -> Backend {
        Backend::Float
    }
}
