//! Exact elements `p + q√3` of the quadratic field `Q(√3)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// `p + q√3` with rational `p`, `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: Rational,
    q: Rational,
}

impl QuadSurd {
    pub fn new(p: Rational, q: Rational) -> Self {
        QuadSurd { p, q }
    }

    pub fn from_rational(p: Rational) -> Self {
        QuadSurd {
            p,
            q: Rational::zero(),
        }
    }

    /// Builds `p + q√3` from integers without any gcd reduction.
    fn from_integers(p: BigInt, q: BigInt) -> Self {
        QuadSurd {
            p: Rational::from_integer(p),
            q: Rational::from_integer(q),
        }
    }

    /// Both coefficients as integers, when they are. Integral values take
    /// plain integer arithmetic: rationals re-run a gcd after every
    /// operation, which dominates at the sizes `(2+√3)^1000` reaches.
    fn integral(&self) -> Option<(&BigInt, &BigInt)> {
        (self.p.is_integer() && self.q.is_integer()).then(|| (self.p.numer(), self.q.numer()))
    }

    /// `√3`.
    pub fn sqrt3() -> Self {
        QuadSurd {
            p: Rational::zero(),
            q: Rational::one(),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn surd_part(&self) -> &Rational {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// `p - q√3`.
    pub fn conjugate(&self) -> Self {
        QuadSurd {
            p: self.p.clone(),
            q: -self.q.clone(),
        }
    }

    /// Field norm `p² - 3q²`.
    pub fn norm(&self) -> Rational {
        if let Some((p, q)) = self.integral() {
            return Rational::from_integer(p * p - 3u32 * (q * q));
        }
        &self.p * &self.p - Rational::from_integer(3.into()) * &self.q * &self.q
    }

    /// The rational value, or an error when the `√3` coefficient is nonzero.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.p.clone())
        } else {
            Err(Error::Irrational(self.to_string()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.p) + to_f64(&self.q) * 3f64.sqrt()
    }

    pub fn checked_div(&self, rhs: &QuadSurd) -> Option<QuadSurd> {
        if let (Some((p, q)), Some((c, d))) = (self.integral(), rhs.integral()) {
            // (p + q√3)/(d√3) = q/d + (p/3d)√3 keeps the operands half the
            // size of the norm route
            if c.is_zero() && !d.is_zero() {
                return Some(QuadSurd {
                    p: Rational::new(q.clone(), d.clone()),
                    q: Rational::new(p.clone(), 3u32 * d),
                });
            }
            let norm = c * c - 3u32 * (d * d);
            if norm.is_zero() {
                return None;
            }
            let num = self * &rhs.conjugate();
            let (p, q) = num.integral().expect("product of integral elements");
            return Some(QuadSurd {
                p: Rational::new(p.clone(), norm.clone()),
                q: Rational::new(q.clone(), norm),
            });
        }
        let norm = rhs.norm();
        if norm.is_zero() {
            return None;
        }
        let num = self * &rhs.conjugate();
        Some(QuadSurd {
            p: num.p / &norm,
            q: num.q / norm,
        })
    }

    pub fn scale(&self, r: &Rational) -> QuadSurd {
        if let (Some((p, q)), true) = (self.integral(), r.is_integer()) {
            return QuadSurd::from_integers(p * r.numer(), q * r.numer());
        }
        QuadSurd {
            p: &self.p * r,
            q: &self.q * r,
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, exp: u64) -> QuadSurd {
        if let Some((p, q)) = self.integral() {
            let (p, q) = integral_pow(p, q, exp);
            return QuadSurd::from_integers(p, q);
        }
        let mut exp = exp;
        let mut base = self.clone();
        let mut acc = QuadSurd::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

fn integral_mul(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    (a.0 * b.0 + 3u32 * (a.1 * b.1), a.0 * b.1 + a.1 * b.0)
}

fn integral_pow(p: &BigInt, q: &BigInt, mut exp: u64) -> (BigInt, BigInt) {
    let mut base = (p.clone(), q.clone());
    let mut acc = (BigInt::one(), BigInt::zero());
    while exp > 0 {
        if exp & 1 == 1 {
            acc = integral_mul((&acc.0, &acc.1), (&base.0, &base.1));
        }
        exp >>= 1;
        if exp > 0 {
            base = integral_mul((&base.0, &base.1), (&base.0, &base.1));
        }
    }
    acc
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        QuadSurd::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        QuadSurd::from_rational(Rational::one())
    }
}

impl From<Rational> for QuadSurd {
    fn from(p: Rational) -> Self {
        QuadSurd::from_rational(p)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + ({})√3", self.p, self.q)
        }
    }
}

impl<'a> Add<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: &QuadSurd) -> QuadSurd {
        if let (Some(a), Some(b)) = (self.integral(), rhs.integral()) {
            return QuadSurd::from_integers(a.0 + b.0, a.1 + b.1);
        }
        QuadSurd {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl<'a> Sub<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: &QuadSurd) -> QuadSurd {
        if let (Some(a), Some(b)) = (self.integral(), rhs.integral()) {
            return QuadSurd::from_integers(a.0 - b.0, a.1 - b.1);
        }
        QuadSurd {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl<'a> Mul<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: &QuadSurd) -> QuadSurd {
        if let (Some(a), Some(b)) = (self.integral(), rhs.integral()) {
            let (p, q) = integral_mul(a, b);
            return QuadSurd::from_integers(p, q);
        }
        let three = Rational::from_integer(3.into());
        QuadSurd {
            p: &self.p * &rhs.p + three * &self.q * &rhs.q,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }
}

impl<'a> Div<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn div(self, rhs: &QuadSurd) -> QuadSurd {
        self.checked_div(rhs).expect("division by zero in Q(√3)")
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            p: -self.p.clone(),
            q: -self.q.clone(),
        }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            p: -self.p,
            q: -self.q,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QuadSurd> for &'a QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn two_plus() -> QuadSurd {
        QuadSurd::new(int(2), int(1))
    }

    #[test]
    fn unit_and_square() {
        let a = two_plus();
        assert_eq!(&a * &a.conjugate(), QuadSurd::one());
        assert_eq!(a.pow(2), QuadSurd::new(int(7), int(4)));
        assert_eq!(a.norm(), int(1));
        assert_eq!(a.pow(0), QuadSurd::one());
        // (2+√3)^4 = 97 + 56√3
        assert_eq!(a.pow(4), QuadSurd::new(int(97), int(56)));
    }

    #[test]
    fn division_and_rationality() {
        let x = QuadSurd::new(rat(2, 7), rat(1, 7));
        let y = QuadSurd::new(rat(-3, 5), rat(4, 11));
        assert_eq!(&(&x / &y) * &y, x);
        assert!(x.checked_div(&QuadSurd::zero()).is_none());
        assert!(matches!(x.to_rational(), Err(Error::Irrational(_))));
        assert_eq!((&x + &x.conjugate()).to_rational().unwrap(), rat(4, 7));
        assert!((two_plus().to_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-15);
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_quad() -> impl Strategy<Value = QuadSurd> {
        (arb_rat(), arb_rat()).prop_map(|(p, q)| QuadSurd::new(p, q))
    }

    proptest! {
        #[test]
        fn conjugation_is_ring_homomorphism(a in arb_quad(), b in arb_quad()) {
            prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
            prop_assert!((&a * &a.conjugate()).is_rational());
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_quad(), k in 0u64..9) {
            let mut acc = QuadSurd::one();
            for _ in 0..k {
                acc = &acc * &a;
            }
            prop_assert_eq!(a.pow(k), acc);
        }
    }
}
