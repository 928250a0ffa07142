//! The cellular chain complex of a Seifert manifold: one 0-cell σ, 1-cells
//! t_j, q_k, h, 2-cells δ, ρ_k, ν_j, μ_k, 3-cells ε, ζ_k, with the boundary
//! formulas depending on the type and the signs ε_j.

use crate::invariants::SeifertInvariants;
use crate::linalg::{self, FpMatrix};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellLabel {
    Sigma,
    /// t_j, 1-based j
    T(usize),
    /// q_k, 0-based k
    Q(usize),
    H,
    Delta,
    Rho(usize),
    Nu(usize),
    Mu(usize),
    Eps,
    Zeta(usize),
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Sigma => write!(f, "sigma"),
            CellLabel::T(j) => write!(f, "t{j}"),
            CellLabel::Q(k) => write!(f, "q{k}"),
            CellLabel::H => write!(f, "h"),
            CellLabel::Delta => write!(f, "delta"),
            CellLabel::Rho(k) => write!(f, "rho{k}"),
            CellLabel::Nu(j) => write!(f, "nu{j}"),
            CellLabel::Mu(k) => write!(f, "mu{k}"),
            CellLabel::Eps => write!(f, "eps"),
            CellLabel::Zeta(k) => write!(f, "zeta{k}"),
        }
    }
}

/// Cellular chain complex with labelled cells and integer boundary matrices.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub cells: [Vec<CellLabel>; 4],
    index: HashMap<CellLabel, (usize, usize)>,
    /// boundary[d-1] maps d-chains to (d-1)-chains, entries as dense rows:
    /// boundary[d-1][target][source]
    boundary: [Vec<Vec<i64>>; 3],
}

/// A cellular cochain with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCochain {
    pub degree: usize,
    pub values: Vec<i64>,
}

impl CellComplex {
    pub fn len(&self, dim: usize) -> usize {
        self.cells[dim].len()
    }

    pub fn index_of(&self, label: CellLabel) -> (usize, usize) {
        *self
            .index
            .get(&label)
            .unwrap_or_else(|| panic!("no cell labelled {label} in this complex"))
    }

    /// Boundary matrix ∂_d as rows over targets, columns over sources.
    pub fn boundary(&self, d: usize) -> &Vec<Vec<i64>> {
        assert!((1..=3).contains(&d));
        &self.boundary[d - 1]
    }

    /// ∂_d as an F_p matrix (rows: dim d-1, cols: dim d).
    pub fn boundary_fp(&self, d: usize, p: u64) -> FpMatrix {
        FpMatrix::from_rows(p, self.boundary(d))
    }

    /// Coboundary of an integer cochain of degree ≤ 2.
    pub fn coboundary(&self, x: &CellCochain) -> Result<CellCochain, String> {
        if x.degree >= 3 {
            return Err("no coboundary out of degree 3".into());
        }
        assert_eq!(x.values.len(), self.len(x.degree));
        let b = self.boundary(x.degree + 1);
        let n = self.len(x.degree + 1);
        let mut values = vec![0i64; n];
        for (s, slot) in values.iter_mut().enumerate() {
            *slot = (0..self.len(x.degree)).map(|t| x.values[t] * b[t][s]).sum();
        }
        Ok(CellCochain {
            degree: x.degree + 1,
            values,
        })
    }

    /// Build an integer cochain from labelled terms.
    pub fn cochain(&self, degree: usize, terms: &[(CellLabel, i64)]) -> CellCochain {
        let mut values = vec![0i64; self.len(degree)];
        for &(label, coeff) in terms {
            let (d, i) = self.index_of(label);
            assert_eq!(
                d, degree,
                "label {label} has dimension {d}, expected {degree}"
            );
            values[i] += coeff;
        }
        CellCochain { degree, values }
    }
}

pub fn build_cell_complex(inv: &SeifertInvariants) -> CellComplex {
    let gp = inv.g_prime();
    let m = inv.m();
    let eps = inv.eps_signs();

    let dim0 = vec![CellLabel::Sigma];
    let mut dim1 = Vec::new();
    dim1.extend((1..=gp).map(CellLabel::T));
    dim1.extend((0..=m).map(CellLabel::Q));
    dim1.push(CellLabel::H);
    let mut dim2 = vec![CellLabel::Delta];
    dim2.extend((0..=m).map(CellLabel::Rho));
    dim2.extend((1..=gp).map(CellLabel::Nu));
    dim2.extend((0..=m).map(CellLabel::Mu));
    let mut dim3 = vec![CellLabel::Eps];
    dim3.extend((0..=m).map(CellLabel::Zeta));

    let cells = [dim0, dim1, dim2, dim3];
    let mut index = HashMap::new();
    for (d, labels) in cells.iter().enumerate() {
        for (i, &l) in labels.iter().enumerate() {
            index.insert(l, (d, i));
        }
    }
    let at = |label: CellLabel| index[&label].1;

    // ∂1 = 0 (every 1-cell is a loop at sigma)
    let b1 = vec![vec![0i64; cells[1].len()]; cells[0].len()];

    let mut b2 = vec![vec![0i64; cells[2].len()]; cells[1].len()];
    {
        let dl = at(CellLabel::Delta);
        for k in 0..=m {
            b2[at(CellLabel::Q(k))][dl] += 1;
        }
        if !inv.ty.is_orientable_base() {
            for j in 1..=gp {
                b2[at(CellLabel::T(j))][dl] += 2;
            }
        }
        for (j, &e) in eps.iter().enumerate() {
            if e == -1 {
                b2[at(CellLabel::H)][at(CellLabel::Nu(j + 1))] += 2;
            }
        }
        for (k, &(ak, bk)) in inv.fibers.iter().enumerate() {
            let c = at(CellLabel::Mu(k));
            b2[at(CellLabel::Q(k))][c] += ak;
            b2[at(CellLabel::H)][c] += bk;
        }
    }

    let mut b3 = vec![vec![0i64; cells[3].len()]; cells[2].len()];
    {
        let ec = at(CellLabel::Eps);
        for k in 0..=m {
            b3[at(CellLabel::Rho(k))][ec] += 1;
            b3[at(CellLabel::Rho(k))][at(CellLabel::Zeta(k))] -= 1;
        }
        match inv.ty {
            crate::invariants::SeifertType::O1 => {}
            crate::invariants::SeifertType::O2 => {
                for j in 1..=gp {
                    b3[at(CellLabel::Nu(j))][ec] += 2 * if j % 2 == 0 { 1 } else { -1 };
                }
            }
            _ => {
                for (j, &e) in eps.iter().enumerate() {
                    if e == 1 {
                        b3[at(CellLabel::Nu(j + 1))][ec] += 2;
                    }
                }
            }
        }
    }

    let cx = CellComplex {
        cells,
        index,
        boundary: [b1, b2, b3],
    };
    debug_assert!(cx.d_squared_is_zero());
    cx
}

impl CellComplex {
    pub fn d_squared_is_zero(&self) -> bool {
        for d in 2..=3 {
            let hi = self.boundary(d);
            let lo = self.boundary(d - 1);
            for s in 0..self.len(d) {
                for t in 0..self.len(d - 2) {
                    let sum: i64 = (0..self.len(d - 1))
                        .map(|mid| lo[t][mid] * hi[mid][s])
                        .sum();
                    if sum != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Cohomology of a labelled complex over F_p: dimensions and explicit
/// cocycle representatives per degree.
pub struct GradedBasis {
    pub p: u64,
    pub dims: [usize; 4],
    /// representatives[d] = list of cocycle vectors in degree d
    pub representatives: [Vec<Vec<u64>>; 4],
    /// coboundary image basis per degree (columns of the degree d-1 map)
    pub coboundaries: [Vec<Vec<u64>>; 4],
}

/// Generic F_p cohomology from boundary matrices. `lens[d]` is the number of
/// cells in degree d; `boundary(d)` maps degree-d chains down.
pub fn cohomology_from_boundaries(
    p: u64,
    lens: [usize; 4],
    boundary: impl Fn(usize) -> FpMatrix,
) -> GradedBasis {
    let mut dims = [0usize; 4];
    let mut reps: [Vec<Vec<u64>>; 4] = Default::default();
    let mut cobs: [Vec<Vec<u64>>; 4] = Default::default();
    for d in 0..4 {
        // coboundary out of degree d is the transpose of boundary(d+1)
        let cocycles: Vec<Vec<u64>> = if d < 3 {
            let up = boundary(d + 1).transpose();
            linalg::kernel_basis(&up)
        } else {
            (0..lens[3])
                .map(|i| {
                    let mut v = vec![0u64; lens[3]];
                    v[i] = 1;
                    v
                })
                .collect()
        };
        let image: Vec<Vec<u64>> = if d > 0 {
            let down_t = boundary(d).transpose();
            let im: Vec<Vec<u64>> = (0..down_t.cols).map(|c| down_t.col(c)).collect();
            let keep = linalg::independent_mod(p, lens[d], &[], &im);
            keep.into_iter().map(|i| im[i].clone()).collect()
        } else {
            Vec::new()
        };
        let chosen = linalg::independent_mod(p, lens[d], &image, &cocycles);
        reps[d] = chosen.into_iter().map(|i| cocycles[i].clone()).collect();
        dims[d] = reps[d].len();
        cobs[d] = image;
    }
    GradedBasis {
        p,
        dims,
        representatives: reps,
        coboundaries: cobs,
    }
}

pub fn cellular_cohomology(cx: &CellComplex, p: u64) -> GradedBasis {
    let lens = [cx.len(0), cx.len(1), cx.len(2), cx.len(3)];
    cohomology_from_boundaries(p, lens, |d| cx.boundary_fp(d, p))
}
