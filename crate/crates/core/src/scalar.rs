//! Exact scalars over ℚ or a prime field GF(p).
//!
//! Every value carries its field. The checked methods (`checked_add`,
//! `checked_div`, ...) report [`Error::MixedFields`] and
//! [`Error::DivisionByZero`]; the operator impls are for algorithm code that
//! already knows its operands live in one field, and panic otherwise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exclusive upper bound on prime moduli, so residues fit comfortably in `u64`.
pub const MAX_MODULUS: u64 = 1 << 61;

/// A prime modulus below [`MAX_MODULUS`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < MAX_MODULUS && is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn reduce(self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let r = ((n % &p) + &p) % &p;
        r.to_u64().expect("residue below modulus")
    }
}

/// Deterministic Miller-Rabin; the fixed witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(Modulus),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        Modulus::new(p).map(Field::Prime)
    }

    /// Number of elements, or `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(m) => Some(m.get()),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(m) => Scalar::Mod {
                residue: m.reduce(n),
                modulus: m,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses `"a"` or `"a/b"` (optional leading `-` or `−`) into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let cleaned = text.trim().replace('\u{2212}', "-");
        let bad = || Error::Parse(format!("invalid scalar {text:?}"));
        let (num, den) = match cleaned.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (cleaned.as_str(), None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) if d.starts_with('-') || d.starts_with('+') => return Err(bad()),
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(_) => self.from_bigint(&num).checked_div(&self.from_bigint(&den)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(m) => write!(f, "gf:{}", m.get()),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `rational` or `gf:p`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("gf:")
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("invalid modulus {p:?}")))?;
        Field::prime(p)
    }
}

/// An element of ℚ or GF(p). Rationals are always reduced with a positive
/// denominator, so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { residue: u64, modulus: Modulus },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { residue, .. } => *residue == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: modulus.add(*a, *b),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: modulus.sub(*a, *b),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: modulus.mul(*a, *b),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: modulus.pow(*residue, modulus.get() - 2),
                modulus: *modulus,
            },
        })
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(match base {
            Scalar::Rational(q) => {
                let e = usize::try_from(e).expect("exponent fits in usize");
                Scalar::Rational(num_traits::pow(q, e))
            }
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: modulus.pow(residue, e),
                modulus,
            },
        })
    }

    /// Structural equality that refuses to compare across fields.
    pub fn checked_eq(&self, other: &Scalar) -> Result<bool> {
        self.same_field(other)?;
        Ok(self == other)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: modulus.sub(0, *residue),
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
