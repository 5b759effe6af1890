//! Integral cohomology from Smith normal forms of the coboundary maps.
//!
//! For degree k, write `δ_{k-1} = U⁻¹ S V⁻¹`. The first `r = rank δ_{k-1}`
//! columns of `U⁻¹` are cocycles whose multiples `d_i` span the coboundaries;
//! those with `d_i > 1` generate the torsion. The remaining columns are
//! reduced once more against `δ_k` to find the free cocycles. The rows of `U`
//! (and of the second transform) give linear functionals that read off
//! canonical coordinates of any cocycle without solving a system.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Chain, Cochain, SimplicialComplex};
use crate::error::Error;
use crate::intlinalg::{smith_normal_form, solve_integer, IntMatrix, SmithDecomposition};

pub(crate) struct CohomologyData {
    degree: usize,
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
    /// Free generators first, then torsion generators.
    generators: Vec<Vec<BigInt>>,
    free_functional: IntMatrix,
    torsion_functional: IntMatrix,
    /// Smith form of `δ_{k-1}`, used to produce primitives.
    previous: SmithDecomposition<BigInt>,
}

impl CohomologyData {
    fn compute(x: &SimplicialComplex, k: usize) -> Result<Self, Error> {
        let n = x.count(k);
        let prev_matrix = if k == 0 { IntMatrix::zeros(n, 0) } else { x.coboundary_matrix(k - 1) };
        let previous = smith_normal_form(&prev_matrix);
        let r = previous.rank();
        let factors = previous.invariant_factors();

        // δ_k applied to the trailing columns of U⁻¹, using the sparse face lists.
        let tail = n - r;
        let next_rows = if k < x.dim() { x.count(k + 1) } else { 0 };
        let mut reduced = IntMatrix::zeros(next_rows, tail);
        if next_rows > 0 {
            for (row, faces) in x.faces(k + 1).iter().enumerate() {
                for c in 0..tail {
                    let mut acc = BigInt::zero();
                    for (i, &f) in faces.iter().enumerate() {
                        let e = previous.u_inv.get(f, r + c);
                        if i % 2 == 0 {
                            acc += e;
                        } else {
                            acc -= e;
                        }
                    }
                    reduced.set(row, c, acc);
                }
            }
        }
        let kernel = smith_normal_form(&reduced);
        let r2 = kernel.rank();
        let free_rank = tail - r2;

        let u_tail_inv = previous.u_inv.slice(0..n, r..n);
        let mut generators: Vec<Vec<BigInt>> = (0..free_rank)
            .map(|j| u_tail_inv.mul_vec(&kernel.v.column(r2 + j)))
            .collect();
        let mut free_functional = kernel.v_inv.slice(r2..tail, 0..tail).mul(&previous.u.slice(r..n, 0..n));

        let mut torsion_orders = Vec::new();
        let mut torsion_rows = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if d > &BigInt::one() {
                torsion_orders.push(d.clone());
                torsion_rows.push(previous.u.row(i).to_vec());
                generators.push(previous.u_inv.column(i));
            }
        }
        let torsion_functional = if torsion_rows.is_empty() {
            IntMatrix::zeros(0, n)
        } else {
            IntMatrix::from_rows(torsion_rows)
        };

        if let Some(cycles) = x.reference_cycles(k) {
            if cycles.len() != free_rank {
                return Err(Error::InvalidHomologyBasis(format!(
                    "{} reference cycles for a free part of rank {free_rank}",
                    cycles.len()
                )));
            }
            // pairing[j][i] = <g_i, γ_j>
            let pairing = IntMatrix::from_rows(
                cycles
                    .iter()
                    .map(|gamma| {
                        generators[..free_rank]
                            .iter()
                            .map(|g| g.iter().zip(gamma).map(|(a, b)| a * b).sum())
                            .collect()
                    })
                    .collect(),
            );
            let snf = smith_normal_form(&pairing);
            if snf.rank() != free_rank || snf.invariant_factors().iter().any(|d| !d.is_one()) {
                return Err(Error::InvalidHomologyBasis(
                    "reference cycles do not pair unimodularly with the free cohomology".into(),
                ));
            }
            let inverse = snf.v.mul(&snf.u);
            let old: Vec<Vec<BigInt>> = generators[..free_rank].to_vec();
            for j in 0..free_rank {
                let mut g = vec![BigInt::zero(); n];
                for (i, gi) in old.iter().enumerate() {
                    let c = inverse.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    for (acc, v) in g.iter_mut().zip(gi) {
                        *acc += c * v;
                    }
                }
                generators[j] = g;
            }
            free_functional = pairing.mul(&free_functional);
        }

        Ok(CohomologyData {
            degree: k,
            free_rank,
            torsion_orders,
            generators,
            free_functional,
            torsion_functional,
            previous,
        })
    }
}

/// The group `H^k(X; Z)` with fixed generators.
#[derive(Clone)]
pub struct CohomologyGroup {
    complex: SimplicialComplex,
    data: Arc<CohomologyData>,
}

/// A cohomology class in canonical coordinates: free part in `Z^r`,
/// torsion part reduced into `[0, t_i)`.
#[derive(Clone)]
pub struct CohomologyClass {
    group: CohomologyGroup,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl SimplicialComplex {
    pub fn cohomology(&self, k: usize) -> Result<CohomologyGroup, Error> {
        self.check_degree(k)?;
        let cell = self.cohomology_cell(k);
        let data = match cell.get() {
            Some(d) => d.clone(),
            None => {
                let computed = Arc::new(CohomologyData::compute(self, k)?);
                cell.get_or_init(|| computed).clone()
            }
        };
        Ok(CohomologyGroup { complex: self.clone(), data })
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn coordinates(&self, z: &Cochain) -> Result<CohomologyClass, Error> {
        if z.complex() != self {
            return Err(Error::BaseMismatch);
        }
        self.cohomology(z.degree())?.coordinates(z)
    }

    /// A primitive `w` with `δw = z` when the class of `z` vanishes.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<Option<Cochain>, Error> {
        let k = z.degree();
        if k == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, top: self.dim() });
        }
        let group = self.cohomology(k)?;
        if !group.coordinates(z)?.is_zero() {
            return Ok(None);
        }
        let w = group
            .data
            .previous
            .solve(z.values())
            .expect("arbitrary precision arithmetic cannot overflow")
            .expect("a cocycle with zero coordinates is a coboundary");
        let w = Cochain::from_values(self, k - 1, w)?;
        debug_assert!(w.coboundary().map(|d| &d == z).unwrap_or(false));
        Ok(Some(w))
    }

    /// Cycles dual to the free cohomology generators: `<g_i, c_j> = δ_ij`.
    pub fn cycle_basis(&self, k: usize) -> Result<Vec<Chain>, Error> {
        let group = self.cohomology(k)?;
        let cell = self.cycle_basis_cell(k);
        let raw = match cell.get() {
            Some(r) => r,
            None => {
                let computed = match self.reference_cycles(k) {
                    Some(refs) => refs.to_vec(),
                    None => dual_cycles(self, &group)?,
                };
                cell.get_or_init(|| computed)
            }
        };
        raw.iter().map(|v| Chain::from_values(self, k, v.clone())).collect()
    }

    /// Kronecker pairing of a cocycle with a cycle.
    pub fn evaluate(&self, z: &Cochain, c: &Chain) -> Result<BigInt, Error> {
        if z.complex() != self {
            return Err(Error::BaseMismatch);
        }
        if !c.is_cycle() {
            return Err(Error::NotCycle);
        }
        z.evaluate(c)
    }
}

fn dual_cycles(x: &SimplicialComplex, group: &CohomologyGroup) -> Result<Vec<Vec<BigInt>>, Error> {
    let k = group.degree();
    let n = x.count(k);
    let r = group.free_rank();
    let boundary_rows = if k == 0 { 0 } else { x.count(k - 1) };
    let mut system = IntMatrix::zeros(boundary_rows + r, n);
    if k > 0 {
        for (j, faces) in x.faces(k).iter().enumerate() {
            for (i, &f) in faces.iter().enumerate() {
                system.set(f, j, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    for (i, g) in group.data.generators[..r].iter().enumerate() {
        for (j, v) in g.iter().enumerate() {
            system.set(boundary_rows + i, j, v.clone());
        }
    }
    (0..r)
        .map(|j| {
            let mut rhs = vec![BigInt::zero(); boundary_rows + r];
            rhs[boundary_rows + j] = BigInt::one();
            solve_integer(&system, &rhs).ok_or_else(|| {
                Error::InvalidHomologyBasis("free cohomology does not pair unimodularly with cycles".into())
            })
        })
        .collect()
}

impl CohomologyGroup {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn free_rank(&self) -> usize {
        self.data.free_rank
    }

    /// Torsion orders `t_1 | t_2 | ...`, each at least 2.
    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.data.torsion_orders
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.torsion_orders().is_empty()
    }

    /// Generator cocycles: free generators first, then torsion generators.
    pub fn generators(&self) -> Vec<Cochain> {
        self.data
            .generators
            .iter()
            .map(|g| Cochain::from_values(&self.complex, self.degree(), g.clone()).expect("generator length"))
            .collect()
    }

    pub fn free_generators(&self) -> Vec<Cochain> {
        let mut g = self.generators();
        g.truncate(self.free_rank());
        g
    }

    pub fn torsion_generators(&self) -> Vec<Cochain> {
        self.generators().split_off(self.free_rank())
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass {
            group: self.clone(),
            free: vec![BigInt::zero(); self.free_rank()],
            torsion: vec![BigInt::zero(); self.torsion_orders().len()],
        }
    }

    /// Class with the given coordinates; torsion coordinates are reduced.
    pub fn class(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<CohomologyClass, Error> {
        if free.len() != self.free_rank() {
            return Err(Error::LengthMismatch { expected: self.free_rank(), found: free.len() });
        }
        if torsion.len() != self.torsion_orders().len() {
            return Err(Error::LengthMismatch { expected: self.torsion_orders().len(), found: torsion.len() });
        }
        let torsion = torsion.iter().zip(self.torsion_orders()).map(|(x, t)| x.mod_floor(t)).collect();
        Ok(CohomologyClass { group: self.clone(), free, torsion })
    }

    pub fn class_i64(&self, free: &[i64], torsion: &[i64]) -> Result<CohomologyClass, Error> {
        self.class(
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn coordinates(&self, z: &Cochain) -> Result<CohomologyClass, Error> {
        if z.complex() != &self.complex {
            return Err(Error::BaseMismatch);
        }
        if z.degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: z.degree() });
        }
        if !z.is_cocycle() {
            return Err(Error::NotCocycle(z.degree()));
        }
        let free = self.data.free_functional.mul_vec(z.values());
        let torsion = self.data.torsion_functional.mul_vec(z.values());
        self.class(free, torsion)
    }

    /// The cocycle `Σ coord_i · g_i`.
    pub fn representative(&self, class: &CohomologyClass) -> Result<Cochain, Error> {
        self.check_member(class)?;
        let mut values = vec![BigInt::zero(); self.complex.count(self.degree())];
        let coords = class.free.iter().chain(&class.torsion);
        for (c, g) in coords.zip(&self.data.generators) {
            if c.is_zero() {
                continue;
            }
            for (acc, v) in values.iter_mut().zip(g) {
                *acc += c * v;
            }
        }
        Cochain::from_values(&self.complex, self.degree(), values)
    }

    /// Whether `class = n · y` for some class `y`.
    ///
    /// Solved as an integer system in coordinates, with the torsion
    /// relations `t_i · e_i = 0` as extra unknowns.
    pub fn contains_multiple(&self, class: &CohomologyClass, n: &BigInt) -> Result<bool, Error> {
        self.check_member(class)?;
        let r = self.free_rank();
        let s = self.torsion_orders().len();
        let mut a = IntMatrix::zeros(r + s, r + 2 * s);
        for j in 0..r + s {
            a.set(j, j, n.clone());
        }
        for (i, t) in self.torsion_orders().iter().enumerate() {
            a.set(r + i, r + s + i, t.clone());
        }
        let rhs: Vec<BigInt> = class.free.iter().chain(&class.torsion).cloned().collect();
        Ok(solve_integer(&a, &rhs).is_some())
    }

    /// Order of `H / nH`: `n^r · Π gcd(n, t_i)`.
    pub fn quotient_order(&self, n: u32) -> BigInt {
        let n = BigInt::from(n);
        let free = num_traits::pow(n.clone(), self.free_rank());
        self.torsion_orders().iter().fold(free, |acc, t| acc * t.gcd(&n))
    }

    /// All classes `x` with `2x = 0`.
    pub fn two_torsion(&self) -> Vec<CohomologyClass> {
        let two = BigInt::from(2);
        let mut out = vec![self.zero()];
        for (i, t) in self.torsion_orders().iter().enumerate() {
            if !t.is_multiple_of(&two) {
                continue;
            }
            let half = t / &two;
            let extra: Vec<CohomologyClass> = out
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.torsion[i] = half.clone();
                    c
                })
                .collect();
            out.extend(extra);
        }
        out.sort_by(|a, b| a.torsion.cmp(&b.torsion));
        out
    }

    /// Human-readable isomorphism type, e.g. `Z^3`, `Z_2`, `Z + Z_2`, `0`.
    pub fn signature(&self, separator: &str) -> String {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion_orders().iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(separator)
        }
    }

    fn check_member(&self, class: &CohomologyClass) -> Result<(), Error> {
        if class.group != *self {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }
}

impl PartialEq for CohomologyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.complex == other.complex
    }
}

impl Eq for CohomologyGroup {}

impl fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}({}) = {}", self.degree(), self.complex.name(), self.signature(" + "))
    }
}

impl CohomologyClass {
    pub fn group(&self) -> &CohomologyGroup {
        &self.group
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Free coordinates as `i64`, for tests and reports. Panics if they do not fit.
    pub fn free_i64(&self) -> Vec<i64> {
        self.free.iter().map(|x| i64::try_from(x).expect("coordinate fits in i64")).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.group.check_member(other)?;
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect();
        let torsion = self.torsion.iter().zip(&other.torsion).map(|(a, b)| a + b).collect();
        self.group.class(free, torsion)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let free = self.free.iter().map(|a| a * k).collect();
        let torsion = self.torsion.iter().map(|a| a * k).collect();
        self.group.class(free, torsion).expect("same shape")
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn representative(&self) -> Cochain {
        self.group.representative(self).expect("class belongs to its own group")
    }
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.free == other.free && self.torsion == other.torsion
    }
}

impl Eq for CohomologyClass {}

/// `[a,b,c]` for free groups, `[a,b|t1,t2]` when there is torsion.
impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        if self.torsion.is_empty() {
            write!(f, "[{}]", join(&self.free))
        } else {
            write!(f, "[{}|{}]", join(&self.free), join(&self.torsion))
        }
    }
}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{} class {}", self.group.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(1, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn circle_cohomology() {
        let x = circle();
        let h1 = x.cohomology(1).unwrap();
        assert_eq!(h1.free_rank(), 1);
        assert!(h1.torsion_orders().is_empty());
        let h0 = x.cohomology(0).unwrap();
        assert_eq!(h0.free_rank(), 1);
        assert!(matches!(x.cohomology(2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn circle_cycle_pairs_with_generator() {
        let x = circle();
        let cycles = x.cycle_basis(1).unwrap();
        assert_eq!(cycles.len(), 1);
        let g = &x.cohomology(1).unwrap().free_generators()[0];
        assert_eq!(x.evaluate(g, &cycles[0]).unwrap(), BigInt::one());
    }

    #[test]
    fn zero_cocycle_has_zero_coordinates() {
        let x = SimplicialComplex::torus3();
        let z = Cochain::zero(&x, 1).unwrap();
        assert!(x.coordinates(&z).unwrap().is_zero());
        let w = x.is_coboundary(&z).unwrap().unwrap();
        assert!(w.coboundary().unwrap().is_zero());
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let x = SimplicialComplex::torus3();
        let h1 = x.cohomology(1).unwrap();
        for (i, g) in h1.generators().iter().enumerate() {
            let mut expected = vec![0; 3];
            expected[i] = 1;
            assert_eq!(x.coordinates(g).unwrap().free_i64(), expected);
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let x = circle();
        let z = Cochain::from_i64(&x, 0, &[1, 0, 0]).unwrap();
        assert!(matches!(x.coordinates(&z), Err(Error::NotCocycle(0))));
        let y = SimplicialComplex::from_top_simplices(2, &[vec![0, 1, 2]]).unwrap();
        let e = Cochain::from_entries(&y, 1, [(vec![0, 1], 1)]).unwrap();
        assert!(matches!(y.is_coboundary(&e), Err(Error::NotCocycle(1))));
    }

    #[test]
    fn projective_torsion_generator_doubles_to_zero() {
        let x = SimplicialComplex::projective3();
        let h2 = x.cohomology(2).unwrap();
        let tau = &h2.torsion_generators()[0];
        assert!(x.is_coboundary(tau).unwrap().is_none());
        let w = x.is_coboundary(&tau.scale_i64(2)).unwrap().unwrap();
        assert_eq!(w.coboundary().unwrap(), tau.scale_i64(2));
    }

    #[test]
    fn two_torsion_of_projective_h2() {
        let x = SimplicialComplex::projective3();
        let h2 = x.cohomology(2).unwrap();
        let all = h2.two_torsion();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_zero());
        assert_eq!(all[1].torsion(), &[BigInt::one()]);
    }

    #[test]
    fn multiples_in_free_and_torsion_parts() {
        let t3 = SimplicialComplex::torus3();
        let h1 = t3.cohomology(1).unwrap();
        let three = BigInt::from(3);
        assert!(h1.contains_multiple(&h1.class_i64(&[3, 0, -6], &[]).unwrap(), &three).unwrap());
        assert!(!h1.contains_multiple(&h1.class_i64(&[1, 0, 0], &[]).unwrap(), &three).unwrap());
        let rp3 = SimplicialComplex::projective3();
        let h2 = rp3.cohomology(2).unwrap();
        let tau = h2.class_i64(&[], &[1]).unwrap();
        assert!(h2.contains_multiple(&tau, &three).unwrap());
        assert!(!h2.contains_multiple(&tau, &BigInt::from(2)).unwrap());
    }
}
