use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element of the number field Q(i, sqrt2), stored as exact rational
/// coordinates with respect to the basis {1, i, sqrt2, i*sqrt2}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    /// Coordinates of 1, i, sqrt2, i*sqrt2 in that order.
    c: [BigRational; 4],
}

fn rat_i64(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        let mut s = Scalar::zero();
        s.c[1] = BigRational::one();
        s
    }

    /// sqrt(2).
    pub fn sqrt2() -> Self {
        let mut s = Scalar::zero();
        s.c[2] = BigRational::one();
        s
    }

    /// i * sqrt(2).
    pub fn i_sqrt2() -> Self {
        let mut s = Scalar::zero();
        s.c[3] = BigRational::one();
        s
    }

    pub fn from_int(n: i64) -> Self {
        let mut s = Scalar::zero();
        s.c[0] = rat_i64(n, 1);
        s
    }

    /// Rational n/d.
    pub fn rat(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let mut s = Scalar::zero();
        s.c[0] = rat_i64(n, d);
        s
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Scalar::zero();
        s.c[0] = r;
        s
    }

    /// Coordinate with respect to {1, i, sqrt2, i*sqrt2}.
    pub fn coord(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    pub fn from_coords(c: [BigRational; 4]) -> Self {
        Scalar { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// True when the element lies in the real subfield Q(sqrt2).
    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }

    /// The rational part if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Complex conjugation: negates the i-coordinates.
    pub fn conj(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    /// The Galois conjugate sqrt2 -> -sqrt2.
    pub fn conj_sqrt2(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // z * conj(z) lands in the real subfield Q(sqrt2); one more
        // conjugation gives a rational norm.
        let real = self * &self.conj(); // u + v*sqrt2
        let u = real.c[0].clone();
        let v = real.c[2].clone();
        let norm = &u * &u - rat_i64(2, 1) * &v * &v;
        debug_assert!(!norm.is_zero());
        let mut adj = self.conj() * real.conj_sqrt2();
        let inv_norm = BigRational::one() / norm;
        for k in 0..4 {
            adj.c[k] *= &inv_norm;
        }
        Some(adj)
    }

    /// Multiplicative inverse; panics on zero (use `checked_inv` to probe).
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero in Q(i,sqrt2)")
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of a nonzero element of the real subfield Q(sqrt2).
    /// Panics if the element is not real.
    pub fn real_sign(&self) -> i32 {
        assert!(self.is_real(), "sign of a non-real scalar");
        let u = &self.c[0];
        let v = &self.c[2];
        if u.is_zero() && v.is_zero() {
            return 0;
        }
        let su = if u.is_positive() {
            1
        } else if u.is_negative() {
            -1
        } else {
            0
        };
        let sv = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if su == 0 {
            return sv;
        }
        if sv == 0 || su == sv {
            return su;
        }
        // Mixed signs: compare u^2 against 2 v^2.
        let d = u * u - rat_i64(2, 1) * v * v;
        if d.is_zero() {
            0
        } else if d.is_positive() {
            su
        } else {
            sv
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.real_sign() > 0
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const UNITS: [&str; 4] = ["", "i", "sqrt2", "i*sqrt2"];
        let mut first = true;
        for (k, unit) in UNITS.iter().enumerate() {
            let r = &self.c[k];
            if r.is_zero() {
                continue;
            }
            if first {
                if r.is_negative() {
                    write!(f, "-")?;
                }
            } else if r.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = r.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{a}*{unit}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let a = &self.c;
        let b = &rhs.c;
        let two = rat_i64(2, 1);
        Scalar {
            c: [
                &a[0] * &b[0] - &a[1] * &b[1] + &two * (&a[2] * &b[2]) - &two * (&a[3] * &b[3]),
                &a[0] * &b[1] + &a[1] * &b[0] + &two * (&a[2] * &b[3]) + &two * (&a[3] * &b[2]),
                &a[0] * &b[2] + &a[2] * &b[0] - &a[1] * &b[3] - &a[3] * &b[1],
                &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1],
            ],
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for k in 0..4 {
            self.c[k] += &rhs.c[k];
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for k in 0..4 {
            self.c[k] -= &rhs.c[k];
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_units() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(&Scalar::i() * &Scalar::sqrt2(), Scalar::i_sqrt2());
    }

    #[test]
    fn norm_product() {
        // (1 + i*sqrt2)(1 - i*sqrt2) = 3
        let a = Scalar::one() + Scalar::i_sqrt2();
        assert_eq!(&a * &a.conj(), Scalar::from_int(3));
    }

    #[test]
    fn inverse_sqrt2() {
        let inv = Scalar::sqrt2().inv();
        let mut expect = Scalar::zero();
        expect.c[2] = rat_i64(1, 2);
        assert_eq!(inv, expect);
        assert!((Scalar::sqrt2() * inv).is_one());
    }

    #[test]
    fn generic_inverse() {
        let z = Scalar::rat(3, 7) + Scalar::i() * Scalar::rat(-2, 5) + Scalar::sqrt2()
            - Scalar::i_sqrt2() * Scalar::rat(11, 3);
        assert!((&z * &z.inv()).is_one());
    }

    #[test]
    fn real_signs() {
        // 1 - sqrt2 < 0, 3 - 2*sqrt2 > 0 (since 9 > 8)
        assert_eq!((Scalar::one() - Scalar::sqrt2()).real_sign(), -1);
        assert_eq!(
            (Scalar::from_int(3) - Scalar::from_int(2) * Scalar::sqrt2()).real_sign(),
            1
        );
        assert_eq!(Scalar::zero().real_sign(), 0);
    }
}
