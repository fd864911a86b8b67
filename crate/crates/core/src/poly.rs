//! Exact rational scalars and dense univariate polynomials.
//!
//! Every value in the calculus lives in Q\[x\]; there is no floating point
//! anywhere in this module. Polynomials are kept in canonical form (trailing
//! zero coefficients stripped, the zero polynomial is the empty coefficient
//! vector), so equality is plain structural equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`; the highest stored coefficient is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    /// The monomial x.
    pub fn x() -> Poly {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// The polynomial 1 - x.
    pub fn one_minus_x() -> Poly {
        Poly::from_coeffs(vec![Rational::one(), -Rational::one()])
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant value of a degree-zero (or zero) polynomial.
    ///
    /// Panics if the polynomial has positive degree.
    pub fn as_constant(&self) -> Rational {
        assert!(
            self.coeffs.len() <= 1,
            "polynomial has positive degree: {self}"
        );
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// x ↦ ∫_0^x p(t) dt.
    pub fn integral_from_zero(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a / rat_int(i as i64 + 1));
        }
        Poly::from_coeffs(coeffs)
    }

    /// x ↦ ∫_x^1 p(t) dt.
    pub fn integral_to_one(&self) -> Poly {
        Poly::constant(self.definite_integral_01()) - self.integral_from_zero()
    }

    /// ∫_0^1 p(t) dt, exactly.
    pub fn definite_integral_01(&self) -> Rational {
        let mut total = Rational::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            total += a / rat_int(i as i64 + 1);
        }
        total
    }

    /// order-fold formal derivative.
    pub fn derivative(&self, order: usize) -> Poly {
        let mut cur = self.clone();
        for _ in 0..order {
            if cur.is_zero() {
                return cur;
            }
            let coeffs = cur
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat_int(i as i64))
                .collect();
            cur = Poly::from_coeffs(coeffs);
        }
        cur
    }

    /// The antiderivative q with q' = p and q(c) = 0.
    pub fn antiderivative_vanishing_at(&self, c: &Rational) -> Poly {
        let q = self.integral_from_zero();
        let at_c = q.evaluate(c);
        q - Poly::constant(at_c)
    }

    /// x ↦ p(x - c), by Horner composition.
    pub fn shift(&self, c: &Rational) -> Poly {
        let arg = Poly::from_coeffs(vec![-c.clone(), Rational::one()]);
        self.compose(&arg)
    }

    /// x ↦ p(1 - x). An involution and a ring homomorphism.
    pub fn reflect(&self) -> Poly {
        self.compose(&Poly::one_minus_x())
    }

    fn compose(&self, arg: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &acc * arg + Poly::constant(a.clone());
        }
        acc
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ascending coefficients rendered exactly, for machine output.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (i, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
