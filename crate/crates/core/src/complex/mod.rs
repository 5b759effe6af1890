//! Simplicial complexes and their integral (co)homology.
//!
//! Simplices are strictly increasing vertex tuples, listed per dimension in
//! lexicographic order. That order fixes the bases of the chain and cochain
//! groups, and the boundary sign of dropping vertex `i` is `(-1)^i`.

mod builtin;
mod cochain;
mod cohomology;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::error::Error;
use crate::intlinalg::IntMatrix;

pub use builtin::{coordinate_loops, seam_cocycle, torus3_vertex, T3_GRID};
pub use cochain::{Chain, Cochain};
pub use cohomology::{CohomologyClass, CohomologyGroup};

use cohomology::CohomologyData;

/// An oriented simplicial complex, shared by reference.
///
/// Cloning is cheap. Cohomology data is computed once per degree and cached
/// inside the complex, so repeated coordinate queries are stable and fast.
#[derive(Clone)]
pub struct SimplicialComplex {
    inner: Arc<ComplexInner>,
}

struct ComplexInner {
    name: String,
    /// `simplices[k]` lists the k-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// `faces[k][j]` = indices of the (k-1)-faces of the j-th k-simplex, face `i` omits vertex `i`.
    faces: Vec<Vec<Vec<usize>>>,
    /// Preferred homology bases, by degree, that pin the free cohomology generators.
    reference_cycles: Vec<Option<Vec<Vec<BigInt>>>>,
    cohomology: Vec<OnceLock<Arc<CohomologyData>>>,
    cycle_bases: Vec<OnceLock<Vec<Vec<BigInt>>>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by the given top-dimensional simplices.
    ///
    /// Vertex ids may be arbitrary; each simplex must have `dim + 1` distinct
    /// vertices. All faces are generated.
    pub fn from_top_simplices(dim: usize, top: &[Vec<usize>]) -> Result<Self, Error> {
        Self::build(String::from("complex"), dim, top)
    }

    pub(crate) fn build(name: String, dim: usize, top: &[Vec<usize>]) -> Result<Self, Error> {
        if top.is_empty() {
            return Err(Error::InvalidComplex("no simplices given".into()));
        }
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for s in top {
            if s.len() != dim + 1 {
                return Err(Error::InvalidComplex(format!(
                    "simplex {s:?} has {} vertices, expected {}",
                    s.len(),
                    dim + 1
                )));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(Error::InvalidComplex(format!("simplex {s:?} repeats a vertex")));
            }
            levels[dim].insert(sorted);
        }
        for k in (1..=dim).rev() {
            let (lower, upper) = levels.split_at_mut(k);
            for s in &upper[0] {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    lower[k - 1].insert(f);
                }
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            levels.into_iter().map(|l| l.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let faces = (0..=dim)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                simplices[k]
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                index[k - 1][&f]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex {
            inner: Arc::new(ComplexInner {
                name,
                simplices,
                index,
                faces,
                reference_cycles: vec![None; dim + 1],
                cohomology: (0..=dim).map(|_| OnceLock::new()).collect(),
                cycle_bases: (0..=dim).map(|_| OnceLock::new()).collect(),
            }),
        })
    }

    /// Returns a copy whose free degree-`k` cohomology generators are dual to
    /// the given cycles. The cycles must be a basis of the free part of `H_k`.
    pub fn with_homology_basis(&self, k: usize, cycles: &[Chain]) -> Result<Self, Error> {
        self.check_degree(k)?;
        for c in cycles {
            if c.complex() != self {
                return Err(Error::BaseMismatch);
            }
            if c.degree() != k {
                return Err(Error::DegreeMismatch { expected: k, found: c.degree() });
            }
            if !c.is_cycle() {
                return Err(Error::NotCycle);
            }
        }
        let mut refs = self.inner.reference_cycles.clone();
        refs[k] = Some(cycles.iter().map(|c| c.values().to_vec()).collect());
        let complex = self.rebuilt(self.inner.name.clone(), refs);
        complex.cohomology(k)?;
        Ok(complex)
    }

    fn rebuilt(&self, name: String, reference_cycles: Vec<Option<Vec<Vec<BigInt>>>>) -> Self {
        let dim = self.dim();
        SimplicialComplex {
            inner: Arc::new(ComplexInner {
                name,
                simplices: self.inner.simplices.clone(),
                index: self.inner.index.clone(),
                faces: self.inner.faces.clone(),
                reference_cycles,
                cohomology: (0..=dim).map(|_| OnceLock::new()).collect(),
                cycle_bases: (0..=dim).map(|_| OnceLock::new()).collect(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub(crate) fn with_name(&self, name: &str) -> Self {
        self.rebuilt(name.to_string(), self.inner.reference_cycles.clone())
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.inner.simplices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.simplices[0].len()
    }

    /// Number of k-simplices (zero above the top dimension).
    pub fn count(&self, k: usize) -> usize {
        self.inner.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.inner.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// Position of a simplex (given in any vertex order) in the canonical basis.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        let mut sorted = simplex.to_vec();
        sorted.sort_unstable();
        self.inner.index.get(k)?.get(&sorted).copied()
    }

    pub(crate) fn faces(&self, k: usize) -> &[Vec<usize>] {
        &self.inner.faces[k]
    }

    pub(crate) fn reference_cycles(&self, k: usize) -> Option<&[Vec<BigInt>]> {
        self.inner.reference_cycles.get(k)?.as_deref()
    }

    pub(crate) fn cohomology_cell(&self, k: usize) -> &OnceLock<Arc<CohomologyData>> {
        &self.inner.cohomology[k]
    }

    pub(crate) fn cycle_basis_cell(&self, k: usize) -> &OnceLock<Vec<Vec<BigInt>>> {
        &self.inner.cycle_bases[k]
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) })
            .sum()
    }

    pub(crate) fn check_degree(&self, k: usize) -> Result<(), Error> {
        if k > self.dim() {
            Err(Error::DegreeOutOfRange { degree: k, top: self.dim() })
        } else {
            Ok(())
        }
    }

    /// Boundary matrix `C_k -> C_{k-1}` in the canonical bases, for `1 <= k <= dim`.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntMatrix, Error> {
        if k == 0 || k > self.dim() {
            return Err(Error::DegreeOutOfRange { degree: k, top: self.dim() });
        }
        let mut m = IntMatrix::zeros(self.count(k - 1), self.count(k));
        for (j, faces) in self.faces(k).iter().enumerate() {
            for (i, &f) in faces.iter().enumerate() {
                m.set(f, j, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        Ok(m)
    }

    /// Coboundary matrix `C^k -> C^{k+1}`. Has zero rows when `k` is the top dimension.
    pub(crate) fn coboundary_matrix(&self, k: usize) -> IntMatrix {
        if k >= self.dim() {
            return IntMatrix::zeros(0, self.count(k));
        }
        self.boundary_matrix(k + 1).expect("degree checked").transpose()
    }

    /// Every (k-1)-face of a k-simplex appears in the complex and every
    /// (dim-1)-simplex is a face of exactly two top simplices.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let top = self.dim();
        if top == 0 {
            return false;
        }
        let mut incidence = vec![0usize; self.count(top - 1)];
        for faces in self.faces(top) {
            for &f in faces {
                incidence[f] += 1;
            }
        }
        incidence.iter().all(|&c| c == 2)
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.simplices == other.inner.simplices
                && self.inner.reference_cycles == other.inner.reference_cycles)
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = (0..=self.dim()).map(|k| self.count(k)).collect();
        f.debug_struct("SimplicialComplex")
            .field("name", &self.inner.name)
            .field("f_vector", &counts)
            .finish()
    }
}
