//! Integer vectors of arbitrary precision.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point of ℤ^d.
///
/// Ordering is lexicographic on the coordinates, which is the canonical
/// output order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec(pub Vec<BigInt>);

impl IntVec {
    pub fn zero(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        IntVec(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        !self.0.iter().any(Signed::is_negative)
    }

    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Sum of the entries.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|x| x * k).collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// `Σ coeffs[i] · vectors[i]`; `dim` is used when the list is empty.
    pub fn combination(coeffs: &[BigInt], vectors: &[IntVec], dim: usize) -> IntVec {
        let mut out = IntVec::zero(dim);
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(&v.0) {
                *o += c * x;
            }
        }
        out
    }
}

impl<'a> Add<&'a IntVec> for &'a IntVec {
    type Output = IntVec;
    fn add(self, rhs: &'a IntVec) -> IntVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a IntVec> for &'a IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &'a IntVec) -> IntVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec(v.into_iter().map(BigInt::from).collect())
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Entries go out as JSON integers when they fit in i64 and as decimal
// strings otherwise; both forms are accepted on input.
impl Serialize for IntVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            match x.to_i64() {
                Some(small) => seq.serialize_element(&small)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Str(String),
        }

        struct VecVisitor;
        impl<'de> Visitor<'de> for VecVisitor {
            type Value = IntVec;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntVec, A::Error> {
                let mut out = Vec::new();
                while let Some(e) = seq.next_element::<Entry>()? {
                    out.push(match e {
                        Entry::Int(x) => BigInt::from(x),
                        Entry::Str(s) => s.trim().parse::<BigInt>().map_err(de::Error::custom)?,
                    });
                }
                Ok(IntVec(out))
            }
        }
        deserializer.deserialize_seq(VecVisitor)
    }
}

/// Shorthand for building vectors in tests and examples.
#[macro_export]
macro_rules! ivec {
    ($($x:expr),* $(,)?) => {
        $crate::IntVec::from_i64s(&[$($x as i64),*])
    };
}
