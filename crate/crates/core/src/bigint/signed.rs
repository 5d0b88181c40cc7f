use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Natural;

/// Signed arbitrary-precision integer, sign-magnitude form.
///
/// Zero always carries a positive sign so equality stays structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedInt {
    negative: bool,
    magnitude: Natural,
}

impl SignedInt {
    pub fn zero() -> Self {
        SignedInt { negative: false, magnitude: Natural::zero() }
    }

    pub fn from_natural(magnitude: Natural) -> Self {
        SignedInt { negative: false, magnitude }
    }

    pub fn from_parts(negative: bool, magnitude: Natural) -> Self {
        SignedInt { negative: negative && !magnitude.is_zero(), magnitude }
    }

    pub fn from_i64(v: i64) -> Self {
        SignedInt::from_parts(v < 0, Natural::from_u64(v.unsigned_abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn magnitude(&self) -> &Natural {
        &self.magnitude
    }

    pub fn abs(&self) -> SignedInt {
        SignedInt::from_natural(self.magnitude.clone())
    }

    /// Magnitude's bit length; sign does not contribute.
    pub fn bit_length(&self) -> usize {
        self.magnitude.bit_length()
    }

    pub fn to_i64(&self) -> Option<i64> {
        let mag = self.magnitude.to_u64()?;
        if self.negative {
            if mag <= 1 << 63 {
                Some((mag as i64).wrapping_neg())
            } else {
                None
            }
        } else {
            i64::try_from(mag).ok()
        }
    }

    /// Canonical residue in `[0, modulus)`.
    pub fn rem_euclid(&self, modulus: &Natural) -> Natural {
        assert!(!modulus.is_zero(), "rem_euclid by zero");
        let (_, r) = self.magnitude.divmod(modulus);
        if self.negative && !r.is_zero() {
            modulus - &r
        } else {
            r
        }
    }

    pub fn shl(&self, bits: usize) -> SignedInt {
        SignedInt::from_parts(self.negative, self.magnitude.shl(bits))
    }
}

impl From<Natural> for SignedInt {
    fn from(n: Natural) -> Self {
        SignedInt::from_natural(n)
    }
}

impl Neg for &SignedInt {
    type Output = SignedInt;
    fn neg(self) -> SignedInt {
        SignedInt::from_parts(!self.negative, self.magnitude.clone())
    }
}

impl Add for &SignedInt {
    type Output = SignedInt;
    fn add(self, rhs: &SignedInt) -> SignedInt {
        if self.negative == rhs.negative {
            return SignedInt::from_parts(self.negative, &self.magnitude + &rhs.magnitude);
        }
        // Opposite signs: subtract the smaller magnitude from the larger.
        match self.magnitude.cmp(&rhs.magnitude) {
            Ordering::Equal => SignedInt::zero(),
            Ordering::Greater => {
                SignedInt::from_parts(self.negative, &self.magnitude - &rhs.magnitude)
            }
            Ordering::Less => {
                SignedInt::from_parts(rhs.negative, &rhs.magnitude - &self.magnitude)
            }
        }
    }
}

impl Sub for &SignedInt {
    type Output = SignedInt;
    fn sub(self, rhs: &SignedInt) -> SignedInt {
        self + &-rhs
    }
}

impl Mul for &SignedInt {
    type Output = SignedInt;
    fn mul(self, rhs: &SignedInt) -> SignedInt {
        SignedInt::from_parts(
            self.negative != rhs.negative,
            &self.magnitude * &rhs.magnitude,
        )
    }
}

impl Ord for SignedInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.magnitude.cmp(&other.magnitude),
            (true, true) => other.magnitude.cmp(&self.magnitude),
        }
    }
}

impl PartialOrd for SignedInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{:?}", self.magnitude)
    }
}
