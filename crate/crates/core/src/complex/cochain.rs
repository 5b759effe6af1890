use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::SimplicialComplex;
use crate::error::Error;

/// Integer k-cochain: one value per k-simplex in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    complex: SimplicialComplex,
    degree: usize,
    values: Vec<BigInt>,
}

/// Integer k-chain: one coefficient per k-simplex in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    complex: SimplicialComplex,
    degree: usize,
    values: Vec<BigInt>,
}

macro_rules! common_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(complex: &SimplicialComplex, degree: usize) -> Result<Self, Error> {
                complex.check_degree(degree)?;
                Ok($ty {
                    complex: complex.clone(),
                    degree,
                    values: vec![BigInt::zero(); complex.count(degree)],
                })
            }

            pub fn from_values(
                complex: &SimplicialComplex,
                degree: usize,
                values: Vec<BigInt>,
            ) -> Result<Self, Error> {
                complex.check_degree(degree)?;
                if values.len() != complex.count(degree) {
                    return Err(Error::LengthMismatch {
                        expected: complex.count(degree),
                        found: values.len(),
                    });
                }
                Ok($ty { complex: complex.clone(), degree, values })
            }

            pub fn from_i64(complex: &SimplicialComplex, degree: usize, values: &[i64]) -> Result<Self, Error> {
                Self::from_values(complex, degree, values.iter().map(|&v| BigInt::from(v)).collect())
            }

            /// Sparse constructor: `(simplex, value)` pairs, any vertex order, unlisted simplices zero.
            pub fn from_entries<I, V>(complex: &SimplicialComplex, degree: usize, entries: I) -> Result<Self, Error>
            where
                I: IntoIterator<Item = (Vec<usize>, V)>,
                V: Into<BigInt>,
            {
                let mut out = Self::zero(complex, degree)?;
                for (simplex, value) in entries {
                    if simplex.len() != degree + 1 {
                        return Err(Error::DegreeMismatch { expected: degree, found: simplex.len().saturating_sub(1) });
                    }
                    let idx = complex.index_of(&simplex).ok_or_else(|| Error::UnknownSimplex(simplex.clone()))?;
                    out.values[idx] += value.into();
                }
                Ok(out)
            }

            pub fn complex(&self) -> &SimplicialComplex {
                &self.complex
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn values(&self) -> &[BigInt] {
                &self.values
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            /// Value on a simplex given by its vertices in any order.
            pub fn value_at(&self, simplex: &[usize]) -> Option<&BigInt> {
                if simplex.len() != self.degree + 1 {
                    return None;
                }
                self.complex.index_of(simplex).map(|i| &self.values[i])
            }

            pub fn is_zero(&self) -> bool {
                self.values.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                $ty {
                    complex: self.complex.clone(),
                    degree: self.degree,
                    values: self.values.iter().map(|v| v * k).collect(),
                }
            }

            pub fn scale_i64(&self, k: i64) -> Self {
                self.scale(&BigInt::from(k))
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
                self.compatible(other)?;
                Ok($ty {
                    complex: self.complex.clone(),
                    degree: self.degree,
                    values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
                })
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
                self.checked_add(&-other)
            }

            fn compatible(&self, other: &Self) -> Result<(), Error> {
                if self.complex != other.complex {
                    return Err(Error::BaseMismatch);
                }
                if self.degree != other.degree {
                    return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
                }
                Ok(())
            }

            /// Nonzero entries as `(simplex, value)` in canonical order.
            pub fn support(&self) -> impl Iterator<Item = (&[usize], &BigInt)> {
                self.complex
                    .simplices(self.degree)
                    .iter()
                    .zip(&self.values)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(s, v)| (s.as_slice(), v))
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    complex: self.complex.clone(),
                    degree: self.degree,
                    values: self.values.iter().map(|v| -v).collect(),
                }
            }
        }

        /// Panics on mismatched complexes or degrees; use `checked_add` to handle that case.
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.checked_add(rhs).expect("cochain operands must share complex and degree")
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self.checked_sub(rhs).expect("cochain operands must share complex and degree")
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}<{}>", stringify!($ty), self.degree)?;
                f.debug_map().entries(self.support()).finish()
            }
        }
    };
}

common_impl!(Cochain);
common_impl!(Chain);

impl Cochain {
    /// The coboundary `δz`. Fails in the top degree, which has no (k+1)-simplices.
    pub fn coboundary(&self) -> Result<Cochain, Error> {
        let k = self.degree;
        if k >= self.complex.dim() {
            return Err(Error::DegreeOutOfRange { degree: k + 1, top: self.complex.dim() });
        }
        let values = self
            .complex
            .faces(k + 1)
            .iter()
            .map(|faces| {
                let mut acc = BigInt::zero();
                for (i, &f) in faces.iter().enumerate() {
                    if i % 2 == 0 {
                        acc += &self.values[f];
                    } else {
                        acc -= &self.values[f];
                    }
                }
                acc
            })
            .collect();
        Ok(Cochain { complex: self.complex.clone(), degree: k + 1, values })
    }

    /// `δz = 0`; always true in the top degree.
    pub fn is_cocycle(&self) -> bool {
        self.coboundary().map_or(true, |d| d.is_zero())
    }

    /// First simplex on which `δ(self)` differs from `target`, if any.
    pub(crate) fn first_coboundary_mismatch(&self, target: &Cochain) -> Result<Option<Vec<usize>>, Error> {
        let d = self.coboundary()?;
        d.compatible(target)?;
        Ok(d
            .values
            .iter()
            .zip(&target.values)
            .position(|(a, b)| a != b)
            .map(|i| self.complex.simplices(d.degree)[i].clone()))
    }

    /// Kronecker pairing with a chain of the same degree.
    pub fn evaluate(&self, c: &Chain) -> Result<BigInt, Error> {
        if self.complex != c.complex {
            return Err(Error::BaseMismatch);
        }
        if self.degree != c.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: c.degree });
        }
        Ok(self.values.iter().zip(&c.values).map(|(a, b)| a * b).sum())
    }
}

impl Chain {
    /// The boundary `∂c`; the boundary of a 0-chain is zero and reported as `None`.
    pub fn boundary(&self) -> Option<Chain> {
        let k = self.degree;
        if k == 0 {
            return None;
        }
        let mut values = vec![BigInt::zero(); self.complex.count(k - 1)];
        for (faces, v) in self.complex.faces(k).iter().zip(&self.values) {
            if v.is_zero() {
                continue;
            }
            for (i, &f) in faces.iter().enumerate() {
                if i % 2 == 0 {
                    values[f] += v;
                } else {
                    values[f] -= v;
                }
            }
        }
        Some(Chain { complex: self.complex.clone(), degree: k - 1, values })
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_none_or(|b| b.is_zero())
    }
}
