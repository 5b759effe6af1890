//! Circle bundles over a simplicial base, given by a pinned Euler 2-cocycle.

use num_bigint::BigInt;

use crate::complex::{Cochain, CohomologyClass, SimplicialComplex};
use crate::error::Error;

/// A circle bundle over `base` with a fixed Euler cocycle representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleBundle {
    euler_cocycle: Cochain,
}

fn check_euler_cocycle(z: &Cochain) -> Result<(), Error> {
    if z.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: z.degree() });
    }
    if !z.is_cocycle() {
        return Err(Error::NotCocycle(2));
    }
    // fails early on bases whose cohomology cannot be computed
    z.complex().cohomology(2)?;
    Ok(())
}

impl CircleBundle {
    pub fn new(euler_cocycle: Cochain) -> Result<Self, Error> {
        check_euler_cocycle(&euler_cocycle)?;
        Ok(CircleBundle { euler_cocycle })
    }

    pub fn trivial(base: &SimplicialComplex) -> Result<Self, Error> {
        Self::new(Cochain::zero(base, 2)?)
    }

    /// The bundle whose Euler cocycle is the canonical representative of `class`.
    pub fn from_class(class: &CohomologyClass) -> Result<Self, Error> {
        Self::new(class.group().representative(class)?)
    }

    pub fn base(&self) -> &SimplicialComplex {
        self.euler_cocycle.complex()
    }

    pub fn euler_cocycle(&self) -> &Cochain {
        &self.euler_cocycle
    }

    pub fn euler_class(&self) -> CohomologyClass {
        self.base().coordinates(&self.euler_cocycle).expect("validated at construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.euler_class().is_zero()
    }

    /// Same bundle with Euler representative `ê + δu`.
    pub fn repin(&self, u: &Cochain) -> Result<Self, Error> {
        if u.complex() != self.base() {
            return Err(Error::BaseMismatch);
        }
        Self::new(self.euler_cocycle.checked_add(&u.coboundary()?)?)
    }
}

/// Bundles over the same base are isomorphic iff their Euler classes agree.
pub fn bundles_isomorphic(a: &CircleBundle, b: &CircleBundle) -> Result<bool, Error> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch);
    }
    Ok(a.euler_class() == b.euler_class())
}

/// A contact structure on the base, known only by name and pinned Euler cocycle.
///
/// Two labels denote the same contact structure only if both name and cocycle
/// agree; equal Euler classes are not enough.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContactLabel {
    name: String,
    euler_cocycle: Cochain,
}

impl ContactLabel {
    pub fn new(name: impl Into<String>, euler_cocycle: Cochain) -> Result<Self, Error> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!("contact label name {name:?} must be a non-empty word")));
        }
        check_euler_cocycle(&euler_cocycle)?;
        Ok(ContactLabel { name, euler_cocycle })
    }

    pub fn from_class(name: impl Into<String>, class: &CohomologyClass) -> Result<Self, Error> {
        Self::new(name, class.group().representative(class)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &SimplicialComplex {
        self.euler_cocycle.complex()
    }

    pub fn euler_cocycle(&self) -> &Cochain {
        &self.euler_cocycle
    }

    pub fn euler_class(&self) -> CohomologyClass {
        self.base().coordinates(&self.euler_cocycle).expect("validated at construction")
    }
}

/// Euler class of the projectivized contact planes: `2·e(ξ)`.
pub fn prolongation_euler(xi: &ContactLabel) -> CohomologyClass {
    xi.euler_class().scale(&BigInt::from(2))
}

/// Euler class of the oriented unit-direction bundle: `e(ξ)`.
pub fn unit_sphere_euler(xi: &ContactLabel) -> CohomologyClass {
    xi.euler_class()
}

/// The prolongation bundle with representative `sign·2·ê_ξ`.
pub fn prolongation_bundle(xi: &ContactLabel, sign: i64) -> CircleBundle {
    CircleBundle { euler_cocycle: xi.euler_cocycle.scale_i64(2 * sign.signum()) }
}

/// The unit-sphere bundle with representative `sign·ê_ξ`.
pub fn unit_sphere_bundle(xi: &ContactLabel, sign: i64) -> CircleBundle {
    CircleBundle { euler_cocycle: xi.euler_cocycle.scale_i64(sign.signum()) }
}
