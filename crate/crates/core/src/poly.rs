//! Laurent polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense Laurent polynomial: `coeffs[k]` is the coefficient of `x^(low + k)`.
/// The first and last stored coefficients are nonzero; zero has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        Self::from_raw(e, vec![c.into()])
    }

    /// Coefficients listed from exponent `low` upwards.
    pub fn from_coeffs(low: i32, coeffs: &[i64]) -> Self {
        Self::from_raw(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(c, e);
        }
        out
    }

    fn from_raw(mut low: i32, mut coeffs: Vec<BigInt>) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        low += lead as i32;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `±x^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let k = e - self.low;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// Coefficients from the lowest to the highest exponent, zeros included.
    pub fn dense_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `p(x^-1)`.
    pub fn invert_variable(&self) -> Self {
        match self.high_degree() {
            None => Self::zero(),
            Some(h) => Self { low: -h, coeffs: self.coeffs.iter().rev().cloned().collect() },
        }
    }

    /// `p(x^k)` for `k >= 1`.
    pub fn stretch(&self, k: i32) -> Self {
        assert!(k >= 1);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// `p(x^(1/k))`; `None` when some exponent is not divisible by `k`.
    pub fn compress(&self, k: i32) -> Option<Self> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            if e % k != 0 {
                return None;
            }
            out.push((e / k, c.clone()));
        }
        Some(Self::from_terms(out))
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return None;
        }
        let lead = d.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dl + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let f = top / lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * dc;
            }
            q[k] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_raw(self.low - d.low, q))
    }

    /// Representative up to units `±x^k`: lowest exponent 0 and positive
    /// top coefficient.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.shift(-self.low);
        if self.coeffs.last().expect("nonzero").is_negative() {
            -p
        } else {
            p
        }
    }

    /// Equality up to multiplication by `±x^k`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Renders as e.g. `2t^-1 - 5 + 2t`, terms in increasing exponent order.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() || !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

/// Serialised as a list of `[exponent, coefficient]` pairs; coefficients are
/// strings when they exceed 64 bits.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde_json::Value;
        let terms: Vec<(i32, Value)> = self
            .terms()
            .map(|(e, c)| {
                let v = i64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()));
                (e, v)
            })
            .collect();
        terms.serialize(s)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, o: &LaurentPolynomial) {
        combine(self, o, false);
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, o: &LaurentPolynomial) {
        combine(self, o, true);
    }
}

fn combine(a: &mut LaurentPolynomial, b: &LaurentPolynomial, negate: bool) {
    if b.is_zero() {
        return;
    }
    if a.is_zero() {
        *a = if negate { -b } else { b.clone() };
        return;
    }
    let low = a.low.min(b.low);
    let high = a.high_degree().unwrap().max(b.high_degree().unwrap());
    let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        v[(a.low - low) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut v[(b.low - low) as usize + k];
        if negate {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    *a = LaurentPolynomial::from_raw(low, v);
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || o.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        LaurentPolynomial::from_raw(self.low + o.low, v)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, o: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
