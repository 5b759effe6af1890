//! Isotopy classes of Engel structures whose characteristic line field is
//! tangent to the fibers, modelled by their development maps.
//!
//! A class with twisting number `tw` over the bundle `Q` and contact label `ξ`
//! is a fiberwise covering `Q -> Pξ` with `|tw|` sheets. The sign of `tw` is
//! folded into the target representative `sign(tw)·2·ê_ξ`.

use std::fmt;

use num_bigint::BigInt;

use crate::bundles::{prolongation_bundle, prolongation_euler, unit_sphere_bundle, unit_sphere_euler, CircleBundle, ContactLabel};
use crate::complex::{Cochain, CohomologyClass, SimplicialComplex};
use crate::coverings::{act, exists_covering, horizontal_distance, FiberwiseCovering};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EngelClass {
    bundle: CircleBundle,
    contact: ContactLabel,
    tw: i64,
    covering: FiberwiseCovering,
    witness: Option<OrientedWitness>,
}

/// Lift of the development map to the unit-sphere bundle, `|tw|/2` sheets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedWitness {
    half_covering: FiberwiseCovering,
}

impl OrientedWitness {
    pub fn half_covering(&self) -> &FiberwiseCovering {
        &self.half_covering
    }
}

fn check_twist(n: i64) -> Result<(), Error> {
    if n == 0 {
        Err(Error::ZeroTwist)
    } else {
        Ok(())
    }
}

fn check_base(q: &CircleBundle, xi: &ContactLabel) -> Result<(), Error> {
    if q.base() != xi.base() {
        Err(Error::BaseMismatch)
    } else {
        Ok(())
    }
}

impl EngelClass {
    /// A class from raw development-map data `c` with `δc = |tw|·ê_Q − sign(tw)·2·ê_ξ`.
    pub fn new(bundle: CircleBundle, contact: ContactLabel, tw: i64, twist: Cochain) -> Result<Self, Error> {
        check_twist(tw)?;
        check_base(&bundle, &contact)?;
        let target = prolongation_bundle(&contact, tw);
        let covering = FiberwiseCovering::new(bundle.clone(), target, tw.abs(), twist)?;
        Ok(EngelClass { bundle, contact, tw, covering, witness: None })
    }

    /// Attaches an oriented witness `c_half` with `δc_half = (|tw|/2)·ê_Q − sign(tw)·ê_ξ`.
    /// Composing with the double cover must give back this class up to homotopy,
    /// i.e. `c − 2·c_half` must be a coboundary.
    pub fn with_witness(&self, half_twist: Cochain) -> Result<Self, Error> {
        if self.tw % 2 != 0 {
            return Err(Error::WitnessMismatch(format!("twisting number {} is odd", self.tw)));
        }
        let target = unit_sphere_bundle(&self.contact, self.tw);
        let half = FiberwiseCovering::new(self.bundle.clone(), target, self.tw.abs() / 2, half_twist)?;
        let comparison = self.covering.twist_cochain().checked_sub(&half.twist_cochain().scale_i64(2))?;
        if !self.base().coordinates(&comparison)?.is_zero() {
            return Err(Error::WitnessMismatch("the doubled witness is not homotopic to the development map".into()));
        }
        Ok(EngelClass { witness: Some(OrientedWitness { half_covering: half }), ..self.clone() })
    }

    pub fn bundle(&self) -> &CircleBundle {
        &self.bundle
    }

    pub fn contact(&self) -> &ContactLabel {
        &self.contact
    }

    pub fn tw(&self) -> i64 {
        self.tw
    }

    /// The development map.
    pub fn covering(&self) -> &FiberwiseCovering {
        &self.covering
    }

    pub fn witness(&self) -> Option<&OrientedWitness> {
        self.witness.as_ref()
    }

    pub fn base(&self) -> &SimplicialComplex {
        self.bundle.base()
    }

    pub fn without_witness(&self) -> Self {
        EngelClass { witness: None, ..self.clone() }
    }
}

/// `n·e(Q) = 2·e(ξ)`.
pub fn eng_nonempty(q: &CircleBundle, xi: &ContactLabel, n: i64) -> Result<bool, Error> {
    check_twist(n)?;
    check_base(q, xi)?;
    Ok(q.euler_class().scale_i64(n) == prolongation_euler(xi))
}

/// `n` even and `(n/2)·e(Q) = e(ξ)`.
pub fn eng_oriented_nonempty(q: &CircleBundle, xi: &ContactLabel, n: i64) -> Result<bool, Error> {
    check_twist(n)?;
    check_base(q, xi)?;
    Ok(n % 2 == 0 && q.euler_class().scale_i64(n / 2) == unit_sphere_euler(xi))
}

pub fn make_engel_class(q: &CircleBundle, xi: &ContactLabel, n: i64) -> Result<Option<EngelClass>, Error> {
    check_twist(n)?;
    check_base(q, xi)?;
    let target = prolongation_bundle(xi, n);
    Ok(exists_covering(q, &target, n.abs())?.map(|covering| EngelClass {
        bundle: q.clone(),
        contact: xi.clone(),
        tw: n,
        covering,
        witness: None,
    }))
}

/// An oriented class carrying its witness, built from a covering into the
/// unit-sphere bundle and its double.
pub fn make_oriented_engel_class(q: &CircleBundle, xi: &ContactLabel, n: i64) -> Result<Option<EngelClass>, Error> {
    check_twist(n)?;
    check_base(q, xi)?;
    if n % 2 != 0 {
        return Ok(None);
    }
    let Some(half) = exists_covering(q, &unit_sphere_bundle(xi, n), n.abs() / 2)? else {
        return Ok(None);
    };
    let class = EngelClass::new(q.clone(), xi.clone(), n, half.twist_cochain().scale_i64(2))?;
    Ok(Some(EngelClass { witness: Some(OrientedWitness { half_covering: half }), ..class }))
}

fn comparable(d1: &EngelClass, d2: &EngelClass) -> Result<(), Error> {
    if d1.base() != d2.base() {
        return Err(Error::BaseMismatch);
    }
    if d1.bundle != d2.bundle {
        return Err(Error::BundleMismatch);
    }
    Ok(())
}

/// Horizontal distance of the development maps. Requires equal bundle, contact label and `tw`.
pub fn twist(d1: &EngelClass, d2: &EngelClass) -> Result<CohomologyClass, Error> {
    comparable(d1, d2)?;
    if d1.contact != d2.contact {
        return Err(Error::ContactMismatch(d1.contact.name().into(), d2.contact.name().into()));
    }
    if d1.tw != d2.tw {
        return Err(Error::TwistMismatch(d1.tw, d2.tw));
    }
    horizontal_distance(&d1.covering, &d2.covering)
}

/// Equal `tw`, identical contact labels and vanishing twist.
pub fn isotopic(d1: &EngelClass, d2: &EngelClass) -> Result<bool, Error> {
    comparable(d1, d2)?;
    if d1.tw != d2.tw || d1.contact != d2.contact {
        return Ok(false);
    }
    Ok(twist(d1, d2)?.is_zero())
}

/// The H¹ action on development maps. Drops any oriented witness.
pub fn act_engel(alpha: &Cochain, d: &EngelClass) -> Result<EngelClass, Error> {
    let covering = act(alpha, &d.covering)?;
    Ok(EngelClass { covering, witness: None, ..d.clone() })
}

/// The H¹ action on oriented classes: `β` on the witness, `2β` on the development map.
pub fn act_oriented(beta: &Cochain, d: &EngelClass) -> Result<EngelClass, Error> {
    let w = d.witness.as_ref().ok_or(Error::MissingWitness)?;
    let half_covering = act(beta, &w.half_covering)?;
    let covering = act(&beta.scale_i64(2), &d.covering)?;
    Ok(EngelClass { covering, witness: Some(OrientedWitness { half_covering }), ..d.clone() })
}

/// Whether `d` lies in the oriented coset: `twist(base, d) ∈ 2·H¹`.
pub fn is_orientable_class(d: &EngelClass, base_oriented: &EngelClass) -> Result<bool, Error> {
    if base_oriented.witness.is_none() {
        return Err(Error::MissingWitness);
    }
    let t = twist(base_oriented, d)?;
    t.group().contains_multiple(&t, &BigInt::from(2))
}

/// All `x ∈ H²(M)` with `2x = 0`.
pub fn two_torsion_euler_classes(m: &SimplicialComplex) -> Result<Vec<CohomologyClass>, Error> {
    Ok(m.cohomology(2)?.two_torsion())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRow {
    pub n: i64,
    pub xi: String,
    pub admissible: bool,
    /// Isomorphism type of the H¹ torsor, when admissible.
    pub torsor: Option<String>,
    /// Whether oriented classes exist, when admissible.
    pub oriented: Option<bool>,
    /// `|H¹ / 2H¹|`, zero when not admissible.
    pub cosets: BigInt,
}

impl fmt::Display for EnumerationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} xi={} admissible={} torsor={} oriented={} cosets2H1={}",
            self.n,
            self.xi,
            self.admissible,
            self.torsor.as_deref().unwrap_or("none"),
            self.oriented.map_or("empty".to_string(), |b| b.to_string()),
            self.cosets
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EnumerationReport {
    pub rows: Vec<EnumerationRow>,
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Classes over the trivial bundle, for each twisting number and label.
pub fn enumerate_trivial_bundle(
    q: &CircleBundle,
    tw_values: &[i64],
    labels: &[ContactLabel],
) -> Result<EnumerationReport, Error> {
    if !q.is_trivial() {
        return Err(Error::NonTrivialBundle);
    }
    let h1 = q.base().cohomology(1)?;
    let torsor = h1.signature("+");
    let cosets = h1.quotient_order(2);
    let mut rows = Vec::new();
    for &n in tw_values {
        for xi in labels {
            let admissible = eng_nonempty(q, xi, n)?;
            let oriented = eng_oriented_nonempty(q, xi, n)?;
            rows.push(EnumerationRow {
                n,
                xi: xi.name().to_string(),
                admissible,
                torsor: admissible.then(|| torsor.clone()),
                oriented: admissible.then_some(oriented),
                cosets: if admissible { cosets.clone() } else { BigInt::from(0) },
            });
        }
    }
    Ok(EnumerationReport { rows })
}

/// Labels used by the command-line enumeration: every 2-torsion class of H²
/// and every generator, named by its coordinates.
pub fn standard_labels(m: &SimplicialComplex) -> Result<Vec<ContactLabel>, Error> {
    let h2 = m.cohomology(2)?;
    let mut classes = h2.two_torsion();
    let r = h2.free_rank();
    let s = h2.torsion_orders().len();
    for i in 0..r + s {
        let mut free = vec![0i64; r];
        let mut torsion = vec![0i64; s];
        if i < r {
            free[i] = 1;
        } else {
            torsion[i - r] = 1;
        }
        let c = h2.class_i64(&free, &torsion)?;
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    classes.iter().map(|c| ContactLabel::from_class(c.to_string(), c)).collect()
}
