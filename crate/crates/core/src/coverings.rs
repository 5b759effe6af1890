//! Fiberwise n-fold coverings between circle bundles over a common base.
//!
//! A homotopy class of coverings `Q -> P` with `n` sheets is modelled by a
//! 1-cochain `c` with `δc = n·ê_Q − ê_P`, taken up to coboundaries. Two such
//! cochains differ by a cocycle whose class is the horizontal distance.

use num_bigint::BigInt;

use crate::bundles::CircleBundle;
use crate::complex::{seam_cocycle, Chain, Cochain, CohomologyClass, SimplicialComplex};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberwiseCovering {
    source: CircleBundle,
    target: CircleBundle,
    sheets: u64,
    twist: Cochain,
}

/// `n·ê_Q − ê_P`, the cocycle a twist cochain must trivialize.
fn obstruction(source: &CircleBundle, target: &CircleBundle, n: u64) -> Result<Cochain, Error> {
    if source.base() != target.base() {
        return Err(Error::BaseMismatch);
    }
    source.euler_cocycle().scale(&BigInt::from(n)).checked_sub(target.euler_cocycle())
}

fn check_sheets(n: i64) -> Result<u64, Error> {
    u64::try_from(n).ok().filter(|&n| n >= 1).ok_or(Error::InvalidSheets(n))
}

impl FiberwiseCovering {
    /// Validates `δc = n·ê_Q − ê_P`, reporting the first 2-simplex where it fails.
    pub fn new(source: CircleBundle, target: CircleBundle, sheets: i64, twist: Cochain) -> Result<Self, Error> {
        let n = check_sheets(sheets)?;
        let rhs = obstruction(&source, &target, n)?;
        if twist.complex() != source.base() {
            return Err(Error::BaseMismatch);
        }
        if twist.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: twist.degree() });
        }
        if let Some(simplex) = twist.first_coboundary_mismatch(&rhs)? {
            return Err(Error::CoveringEquation(simplex));
        }
        Ok(FiberwiseCovering { source, target, sheets: n, twist })
    }

    pub fn source(&self) -> &CircleBundle {
        &self.source
    }

    pub fn target(&self) -> &CircleBundle {
        &self.target
    }

    pub fn sheets(&self) -> u64 {
        self.sheets
    }

    /// Raw constructor data. Only differences of twist cochains are invariants.
    pub fn twist_cochain(&self) -> &Cochain {
        &self.twist
    }

    pub fn base(&self) -> &SimplicialComplex {
        self.source.base()
    }

    fn with_twist(&self, twist: Cochain) -> Self {
        FiberwiseCovering { twist, ..self.clone() }
    }
}

/// Some covering with `n` sheets iff `n·e(Q) = e(P)`.
pub fn exists_covering(q: &CircleBundle, p: &CircleBundle, n: i64) -> Result<Option<FiberwiseCovering>, Error> {
    let sheets = check_sheets(n)?;
    let rhs = obstruction(q, p, sheets)?;
    Ok(q.base().is_coboundary(&rhs)?.map(|c| FiberwiseCovering {
        source: q.clone(),
        target: p.clone(),
        sheets,
        twist: c,
    }))
}

fn same_bundles(a: &FiberwiseCovering, b: &FiberwiseCovering) -> Result<(), Error> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch);
    }
    if a.source != b.source || a.target != b.target {
        return Err(Error::BundleMismatch);
    }
    Ok(())
}

fn difference(a: &FiberwiseCovering, b: &FiberwiseCovering) -> Result<Cochain, Error> {
    same_bundles(a, b)?;
    if a.sheets != b.sheets {
        return Err(Error::SheetMismatch(a.sheets, b.sheets));
    }
    b.twist.checked_sub(&a.twist)
}

/// `d(φ₁, φ₂) = [c₂ − c₁] ∈ H¹`.
pub fn horizontal_distance(phi1: &FiberwiseCovering, phi2: &FiberwiseCovering) -> Result<CohomologyClass, Error> {
    let d = difference(phi1, phi2)?;
    phi1.base().coordinates(&d)
}

/// `d(φ₁, φ₂)` evaluated on a 1-cycle.
pub fn distance_on_loop(phi1: &FiberwiseCovering, phi2: &FiberwiseCovering, gamma: &Chain) -> Result<BigInt, Error> {
    let d = difference(phi1, phi2)?;
    phi1.base().evaluate(&d, gamma)
}

pub fn homotopic(phi1: &FiberwiseCovering, phi2: &FiberwiseCovering) -> Result<bool, Error> {
    same_bundles(phi1, phi2)?;
    if phi1.sheets != phi2.sheets {
        return Ok(false);
    }
    Ok(horizontal_distance(phi1, phi2)?.is_zero())
}

/// Equal sheet count `n` and `d(φ₁, φ₂) ∈ n·H¹`.
pub fn isomorphic(phi1: &FiberwiseCovering, phi2: &FiberwiseCovering) -> Result<bool, Error> {
    same_bundles(phi1, phi2)?;
    if phi1.sheets != phi2.sheets {
        return Ok(false);
    }
    let d = horizontal_distance(phi1, phi2)?;
    d.group().contains_multiple(&d, &BigInt::from(phi1.sheets))
}

/// The H¹ action: `c ↦ c + α` for a 1-cocycle `α`.
pub fn act(alpha: &Cochain, phi: &FiberwiseCovering) -> Result<FiberwiseCovering, Error> {
    if alpha.complex() != phi.base() {
        return Err(Error::BaseMismatch);
    }
    if alpha.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: alpha.degree() });
    }
    if !alpha.is_cocycle() {
        return Err(Error::NotCocycle(1));
    }
    Ok(phi.with_twist(phi.twist.checked_add(alpha)?))
}

/// Transports `φ` along the source re-pinning `ê_Q ↦ ê_Q + δu`: `c ↦ c + n·u`.
pub fn repin_source(phi: &FiberwiseCovering, u: &Cochain) -> Result<FiberwiseCovering, Error> {
    let source = phi.source.repin(u)?;
    let twist = phi.twist.checked_add(&u.scale(&BigInt::from(phi.sheets)))?;
    Ok(FiberwiseCovering { source, twist, ..phi.clone() })
}

/// Transports `φ` along the target re-pinning `ê_P ↦ ê_P + δu`: `c ↦ c − u`.
pub fn repin_target(phi: &FiberwiseCovering, u: &Cochain) -> Result<FiberwiseCovering, Error> {
    let target = phi.target.repin(u)?;
    let twist = phi.twist.checked_sub(u)?;
    Ok(FiberwiseCovering { target, twist, ..phi.clone() })
}

/// `ψ ∘ φ` for `φ: Q -> P` with `n` sheets and `ψ: P -> R` with `m` sheets: `c = m·c_φ + c_ψ`.
pub fn compose(phi: &FiberwiseCovering, psi: &FiberwiseCovering) -> Result<FiberwiseCovering, Error> {
    if phi.base() != psi.base() {
        return Err(Error::BaseMismatch);
    }
    if phi.target != psi.source {
        return Err(Error::BundleMismatch);
    }
    let twist = phi.twist.scale(&BigInt::from(psi.sheets)).checked_add(&psi.twist)?;
    Ok(FiberwiseCovering {
        source: phi.source.clone(),
        target: psi.target.clone(),
        sheets: phi.sheets * psi.sheets,
        twist,
    })
}

/// The covering `φ_α` of the trivial bundle over the built-in 3-torus:
/// `c = −Σ α_i σ_i`, so that `d(φ_α, φ_0)` takes the value `α_i` on the i-th loop.
pub fn torus_model_covering(n: i64, alpha: [i64; 3]) -> Result<FiberwiseCovering, Error> {
    let t3 = SimplicialComplex::torus3();
    let trivial = CircleBundle::trivial(&t3)?;
    let mut c = Cochain::zero(&t3, 1)?;
    for (i, &a) in alpha.iter().enumerate() {
        c = c.checked_sub(&seam_cocycle(i).scale_i64(a))?;
    }
    FiberwiseCovering::new(trivial.clone(), trivial, n, c)
}
