use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::numio::rat_to_f64;

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Gaussian rational: an element of Q(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(Rat::from_integer(n.into()))
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    /// |z|^2 = re^2 + im^2, an exact rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}{}{}i", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
        }
    }
}

use num_traits::Signed;

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Scalar field the matrix algorithms run over.
///
/// `EXACT` scalars ignore every tolerance argument; float scalars use them
/// for pivot selection and zero tests.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rat_pair(re: &Rat, im: &Rat) -> Self;

    /// Multiplicative inverse; `None` for exactly-zero values.
    fn try_inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;

    fn is_zero_tol(&self, tol: f64) -> bool;
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn to_c64(&self) -> Complex64;
    /// Exact scalars round-trip; float scalars return `None`.
    fn to_rat_pair(&self) -> Option<(Rat, Rat)>;

    /// Pivot preference in elimination: magnitude for floats, 0/1 for exact.
    fn pivot_weight(&self) -> f64;
}

impl Coeff for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussRat::real(Rat::zero())
    }

    fn one() -> Self {
        GaussRat::real(Rat::one())
    }

    fn from_i64(n: i64) -> Self {
        GaussRat::from_int(n)
    }

    fn from_rat_pair(re: &Rat, im: &Rat) -> Self {
        GaussRat::new(re.clone(), im.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn to_rat_pair(&self) -> Option<(Rat, Rat)> {
        Some((self.re.clone(), self.im.clone()))
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rat_pair(re: &Rat, im: &Rat) -> Self {
        Complex64::new(rat_to_f64(re), rat_to_f64(im))
    }

    fn try_inv(&self) -> Option<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn to_rat_pair(&self) -> Option<(Rat, Rat)> {
        None
    }

    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}
