//! Built-in triangulations of the 3-torus and real projective 3-space.

use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{Chain, Cochain, SimplicialComplex};

/// Side length of the cube grid underlying the built-in 3-torus.
pub const T3_GRID: usize = 3;

/// Vertex id of grid point `(a, b, c)`, coordinates taken mod the grid size.
pub fn torus3_vertex(a: usize, b: usize, c: usize) -> usize {
    let n = T3_GRID;
    a % n + n * (b % n) + n * n * (c % n)
}

fn grid_coords(v: usize) -> [usize; 3] {
    let n = T3_GRID;
    [v % n, (v / n) % n, v / (n * n)]
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn torus3_tetrahedra() -> Vec<Vec<usize>> {
    let n = T3_GRID;
    let mut out = Vec::with_capacity(6 * n * n * n);
    for c in 0..n {
        for b in 0..n {
            for a in 0..n {
                for perm in PERMUTATIONS {
                    let mut p = [a, b, c];
                    let mut tet = vec![torus3_vertex(p[0], p[1], p[2])];
                    for axis in perm {
                        p[axis] += 1;
                        tet.push(torus3_vertex(p[0], p[1], p[2]));
                    }
                    out.push(tet);
                }
            }
        }
    }
    out
}

/// 11-vertex triangulation of RP^3: the antipodal quotient of a subdivided
/// 4-cube boundary, reduced by edge contractions.
const RP3_TETRAHEDRA: [[usize; 4]; 42] = [
    [0, 1, 4, 5], [0, 1, 4, 10], [0, 1, 5, 7], [0, 1, 6, 7], [0, 1, 6, 9], [0, 1, 9, 10],
    [0, 2, 3, 8], [0, 2, 3, 10], [0, 2, 6, 8], [0, 2, 6, 9], [0, 2, 9, 10], [0, 3, 4, 5],
    [0, 3, 4, 10], [0, 3, 5, 8], [0, 5, 7, 8], [0, 6, 7, 8], [1, 2, 3, 7], [1, 2, 3, 8],
    [1, 2, 4, 5], [1, 2, 4, 8], [1, 2, 5, 7], [1, 3, 6, 7], [1, 3, 6, 9], [1, 3, 8, 9],
    [1, 4, 8, 10], [1, 8, 9, 10], [2, 3, 7, 10], [2, 4, 5, 6], [2, 4, 6, 8], [2, 5, 6, 9],
    [2, 5, 7, 10], [2, 5, 9, 10], [3, 4, 5, 6], [3, 4, 6, 7], [3, 4, 7, 10], [3, 5, 6, 9],
    [3, 5, 8, 9], [4, 6, 7, 8], [4, 7, 8, 10], [5, 7, 8, 9], [5, 7, 9, 10], [7, 8, 9, 10],
];

impl SimplicialComplex {
    /// The 3-torus as a 3×3×3 cube grid with periodic identifications, each
    /// cube cut into six tetrahedra along its main diagonal.
    ///
    /// Free degree-1 cohomology is pinned to the three coordinate loops, so
    /// H¹ coordinates of a cocycle are its values on those loops.
    pub fn torus3() -> SimplicialComplex {
        static T3: OnceLock<SimplicialComplex> = OnceLock::new();
        T3.get_or_init(|| {
            let bare = SimplicialComplex::build("t3".into(), 3, &torus3_tetrahedra()).expect("static table");
            let loops: Vec<Chain> = (0..3).map(|i| coordinate_loop_on(&bare, i)).collect();
            bare.with_homology_basis(1, &loops).expect("coordinate loops form a basis")
        })
        .clone()
    }

    /// Vertex-minimal (11 vertices) triangulation of real projective 3-space.
    pub fn projective3() -> SimplicialComplex {
        static RP3: OnceLock<SimplicialComplex> = OnceLock::new();
        RP3.get_or_init(|| {
            let top: Vec<Vec<usize>> = RP3_TETRAHEDRA.iter().map(|t| t.to_vec()).collect();
            SimplicialComplex::build("rp3".into(), 3, &top).expect("static table")
        })
        .clone()
    }
}

fn coordinate_loop_on(x: &SimplicialComplex, axis: usize) -> Chain {
    let mut entries = Vec::new();
    for step in 0..T3_GRID {
        let mut p = [0; 3];
        p[axis] = step;
        let u = torus3_vertex(p[0], p[1], p[2]);
        p[axis] = step + 1;
        let v = torus3_vertex(p[0], p[1], p[2]);
        let sign = if u < v { 1 } else { -1 };
        entries.push((vec![u, v], sign));
    }
    Chain::from_entries(x, 1, entries).expect("grid edges exist")
}

/// The loops `γ_1, γ_2, γ_3` on the built-in torus: unit steps along each axis through the origin.
pub fn coordinate_loops() -> Vec<Chain> {
    let t3 = SimplicialComplex::torus3();
    (0..3).map(|i| coordinate_loop_on(&t3, i)).collect()
}

/// Cocycle counting signed crossings of the seam `x_axis ≡ 0` on the built-in
/// torus. Dual to the coordinate loops: `σ_i(γ_j) = δ_ij`.
pub fn seam_cocycle(axis: usize) -> Cochain {
    assert!(axis < 3, "axis must be 0, 1 or 2");
    let t3 = SimplicialComplex::torus3();
    let n = T3_GRID as i64;
    let values = t3
        .simplices(1)
        .iter()
        .map(|e| {
            let p = grid_coords(e[0])[axis] as i64;
            let q = grid_coords(e[1])[axis] as i64;
            let d = (q - p + 1).rem_euclid(n) - 1;
            BigInt::from((p + d).div_euclid(n))
        })
        .collect();
    Cochain::from_values(&t3, 1, values).expect("edge count")
}
