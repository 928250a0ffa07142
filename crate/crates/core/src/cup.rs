//! Cup products on the Δ-complex via the Alexander–Whitney front/back-face
//! rule, the coefficient shortcut for H¹⊗H¹, projection through T^t, and
//! assembly of the full ring in the chosen generator basis.

use crate::cellular::{
    build_cell_complex, cellular_cohomology, CellComplex, CellLabel, GradedBasis,
};
use crate::invariants::{DerivedConstants, SeifertInvariants};
use crate::linalg;
use crate::simplicial::{build_delta_complex, simplicial_cohomology, DeltaComplex};
use crate::transfer::{
    build_t, cell_terms_to_fp, check_lift, generator_set, lift_generator, BasisVariant, ChainMap,
    CocycleLift, Generator, GeneratorLabel, GeneratorSet,
};
use serde::{Deserialize, Serialize};

/// Alexander–Whitney cup product of two F_p cochains. Degrees must sum to 3
/// or less.
pub fn aw_cup(
    cx: &DeltaComplex,
    p: u64,
    f_deg: usize,
    f: &[u64],
    g_deg: usize,
    g: &[u64],
) -> Result<Vec<u64>, String> {
    let out_deg = f_deg + g_deg;
    if out_deg > 3 {
        return Err(format!("cup degree overflow: {f_deg} + {g_deg}"));
    }
    assert_eq!(f.len(), cx.len(f_deg));
    assert_eq!(g.len(), cx.len(g_deg));
    let n = cx.len(out_deg);
    let mut out = vec![0u64; n];
    for s in 0..n {
        let value = match (f_deg, g_deg) {
            (0, _) => f[cx.first_vertex(out_deg, s)] * g[s],
            (_, 0) => f[s] * g[cx.last_vertex(out_deg, s)],
            (1, 1) => f[cx.face(2, s, 2)] * g[cx.face(2, s, 0)],
            (1, 2) => {
                // (v0,v1) = (s_2)_2 = (s_3)_2
                let edge = cx.face(2, cx.face(3, s, 2), 2);
                debug_assert_eq!(edge, cx.face(2, cx.face(3, s, 3), 2));
                f[edge] * g[cx.face(3, s, 0)]
            }
            (2, 1) => {
                // (v2,v3) = (s_0)_0 = (s_1)_0
                let edge = cx.face(2, cx.face(3, s, 0), 0);
                debug_assert_eq!(edge, cx.face(2, cx.face(3, s, 1), 0));
                f[cx.face(3, s, 3)] * g[edge]
            }
            _ => unreachable!(),
        };
        out[s] = value % p;
    }
    Ok(out)
}

/// Raw coefficient-method data for a simplicial 2-cochain: evaluations on the
/// T-images of the 2-cells. `r` and `z` are indexed by complex slot.
pub struct CoeffData {
    pub x: u64,
    pub y: Vec<u64>,
    pub z: Vec<u64>,
    pub r: Vec<u64>,
}

/// One structure constant: coordinates of `left ∪ right` in the target basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    pub target_degree: usize,
    pub coords: Vec<u64>,
}

/// Every pairwise product of the generator basis, with target coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureConstants {
    pub p: u64,
    pub h1: Vec<GeneratorLabel>,
    pub h2: Vec<GeneratorLabel>,
    pub h3: Vec<GeneratorLabel>,
    pub products: Vec<Product>,
}

impl StructureConstants {
    pub fn get(&self, left: GeneratorLabel, right: GeneratorLabel) -> Option<&Product> {
        self.products
            .iter()
            .find(|pr| pr.left == left && pr.right == right)
    }
}

/// Everything needed to compute the ring of one (invariants, prime, basis).
pub struct RingContext {
    pub inv: SeifertInvariants,
    pub d: DerivedConstants,
    pub variant: BasisVariant,
    pub cell: CellComplex,
    pub simp: DeltaComplex,
    pub t: ChainMap,
    pub hcell: GradedBasis,
    pub gens: GeneratorSet,
    pub lifts1: Vec<CocycleLift>,
    pub lifts2: Vec<Option<CocycleLift>>,
}

impl RingContext {
    pub fn new(
        inv: &SeifertInvariants,
        d: &DerivedConstants,
        variant: BasisVariant,
    ) -> Result<Self, String> {
        let p = d.p;
        let cell = build_cell_complex(inv);
        let simp = build_delta_complex(inv);
        simp.check_coherence()?;
        let t = build_t(inv, &cell, &simp)?;
        let hcell = cellular_cohomology(&cell, p);
        let gens = generator_set(inv, d, variant);

        // the claimed generators must be cocycles and a basis
        for (degree, list) in [(1usize, &gens.h1), (2usize, &gens.h2)] {
            let reps: Vec<Vec<u64>> = list
                .iter()
                .map(|g| cell_terms_to_fp(&cell, degree, &g.cell_terms, p))
                .collect();
            let up = cell.boundary_fp(degree + 1, p).transpose();
            for (g, rep) in list.iter().zip(&reps) {
                if up.mul_vec(rep).iter().any(|&v| v != 0) {
                    return Err(format!("generator {} is not a cocycle mod {p}", g.label));
                }
            }
            if hcell.dims[degree] != list.len() {
                return Err(format!(
                    "H^{degree} has dimension {} but {} generators are listed",
                    hcell.dims[degree],
                    list.len()
                ));
            }
            let indep =
                linalg::independent_mod(p, cell.len(degree), &hcell.coboundaries[degree], &reps);
            if indep.len() != list.len() {
                return Err(format!(
                    "generators do not span H^{degree}: rank {} of {}",
                    indep.len(),
                    list.len()
                ));
            }
        }
        if hcell.dims[3] != usize::from(gens.h3.is_some()) {
            return Err(format!(
                "H^3 has dimension {} but gamma presence is {:?}",
                hcell.dims[3],
                gens.h3.is_some()
            ));
        }

        let mut lifts1 = Vec::new();
        for g in &gens.h1 {
            let lift = lift_generator(g, inv, d, &cell, &simp, variant)?;
            check_lift(&lift, &cell, &simp, &t, p)?;
            lifts1.push(lift);
        }
        let mut lifts2 = Vec::new();
        for g in &gens.h2 {
            match lift_generator(g, inv, d, &cell, &simp, variant) {
                Ok(lift) => {
                    check_lift(&lift, &cell, &simp, &t, p)?;
                    lifts2.push(Some(lift));
                }
                Err(_) => lifts2.push(None),
            }
        }

        Ok(Self {
            inv: inv.clone(),
            d: d.clone(),
            variant,
            cell,
            simp,
            t,
            hcell,
            gens,
            lifts1,
            lifts2,
        })
    }

    pub fn p(&self) -> u64 {
        self.d.p
    }

    fn h2_rep(&self, i: usize) -> Vec<u64> {
        cell_terms_to_fp(&self.cell, 2, &self.gens.h2[i].cell_terms, self.p())
    }

    /// Express a cellular 2-cocycle in the H² generator basis.
    pub fn h2_coords(&self, v: &[u64]) -> Result<Vec<u64>, String> {
        let reps: Vec<Vec<u64>> = (0..self.gens.h2.len()).map(|i| self.h2_rep(i)).collect();
        linalg::quotient_coords(self.p(), v, &reps, &self.hcell.coboundaries[2])
            .ok_or_else(|| "2-cochain is not a cocycle class in the generator span".into())
    }

    /// Express a cellular 3-cochain in the H³ basis {γ}.
    pub fn h3_coords(&self, v: &[u64]) -> Result<Vec<u64>, String> {
        let reps: Vec<Vec<u64>> = self
            .gens
            .h3
            .iter()
            .map(|g| cell_terms_to_fp(&self.cell, 3, &g.cell_terms, self.p()))
            .collect();
        linalg::quotient_coords(self.p(), v, &reps, &self.hcell.coboundaries[3])
            .ok_or_else(|| "3-cochain does not reduce to the H^3 basis".into())
    }

    /// Evaluate a simplicial 2-cochain on the T-images of the 2-cells.
    pub fn coefficient_data(&self, phi: &[u64]) -> CoeffData {
        let p = self.p();
        let m = self.inv.m();
        let at = |label: CellLabel| self.cell.index_of(label).1;
        let x = self.t.evaluate_on_image(2, at(CellLabel::Delta), phi, p);
        let y = (1..=self.inv.g_prime())
            .map(|j| self.t.evaluate_on_image(2, at(CellLabel::Nu(j)), phi, p))
            .collect();
        let z = (0..=m)
            .map(|k| self.t.evaluate_on_image(2, at(CellLabel::Rho(k)), phi, p))
            .collect();
        let r = (0..=m)
            .map(|k| self.t.evaluate_on_image(2, at(CellLabel::Mu(k)), phi, p))
            .collect();
        CoeffData { x, y, z, r }
    }

    /// The coefficient method: class of a product 2-cocycle from the few
    /// evaluations in `CoeffData`. Errors if some z_k is nonzero (the input
    /// was not a cocycle).
    pub fn coefficient_method(&self, phi: &[u64]) -> Result<Vec<u64>, String> {
        let cd = self.coefficient_data(phi);
        if cd.z.iter().any(|&v| v != 0) {
            return Err("nonzero rho-coefficient: product is not a cocycle".into());
        }
        let mut v = vec![0u64; self.cell.len(2)];
        let at = |label: CellLabel| self.cell.index_of(label).1;
        v[at(CellLabel::Delta)] = cd.x;
        for (j, &yj) in cd.y.iter().enumerate() {
            v[at(CellLabel::Nu(j + 1))] = yj;
        }
        for (k, &rk) in cd.r.iter().enumerate() {
            v[at(CellLabel::Mu(k))] = rk;
        }
        self.h2_coords(&v)
    }

    /// Full route: evaluate T^t of the product on every 2-cell, then take
    /// quotient coordinates. Must agree with `coefficient_method`.
    pub fn full_h2_class(&self, phi: &[u64]) -> Result<Vec<u64>, String> {
        let p = self.p();
        let up = self.simp.boundary_fp(3, p).transpose();
        if up.mul_vec(phi).iter().any(|&v| v != 0) {
            return Err("product of cocycles failed to be a cocycle".into());
        }
        let pulled = self.t.pull_back(2, phi, p);
        self.h2_coords(&pulled)
    }

    /// Cup a 1-cocycle lift with a 2-cocycle lift into H³ coordinates.
    pub fn cup_to_h3(&self, f: &[u64], g: &[u64], order_12: bool) -> Result<Vec<u64>, String> {
        if self.gens.h3.is_none() {
            return Err("H^3 vanishes for this type and prime".into());
        }
        let p = self.p();
        let c = if order_12 {
            aw_cup(&self.simp, p, 1, f, 2, g)?
        } else {
            aw_cup(&self.simp, p, 2, g, 1, f)?
        };
        let pulled = self.t.pull_back(3, &c, p);
        self.h3_coords(&pulled)
    }

    /// A cocycle representative of an H² generator class obtained by solving
    /// in the simplicial cohomology basis (used when no closed-form lift is
    /// defined, in paranoid mode).
    fn generic_h2_lift(&self, gen_index: usize) -> Result<Vec<u64>, String> {
        let p = self.p();
        let hs = simplicial_cohomology(&self.simp, p);
        let images: Vec<Vec<u64>> = hs.representatives[2]
            .iter()
            .map(|f| self.t.pull_back(2, f, p))
            .collect();
        let rep = self.h2_rep(gen_index);
        let coords = linalg::quotient_coords(p, &rep, &images, &self.hcell.coboundaries[2])
            .ok_or("generator class is outside the image of T^t")?;
        let mut out = vec![0u64; self.simp.len(2)];
        for (lambda, basis_vec) in coords.iter().zip(&hs.representatives[2]) {
            for (o, b) in out.iter_mut().zip(basis_vec) {
                *o = (*o + lambda * b) % p;
            }
        }
        Ok(out)
    }

    /// All pairwise products of generators with total degree ≤ 3.
    /// With `paranoid`, products that are provably zero (H³ = 0) are still
    /// evaluated and checked to be coboundaries.
    pub fn assemble_ring(&self, paranoid: bool) -> Result<StructureConstants, String> {
        let p = self.p();
        let mut products = Vec::new();

        for (i, li) in self.lifts1.iter().enumerate() {
            for (j, lj) in self.lifts1.iter().enumerate() {
                let phi = aw_cup(&self.simp, p, 1, &li.simp_fp, 1, &lj.simp_fp)?;
                let coords = self.coefficient_method(&phi).map_err(|e| {
                    format!("{} ∪ {}: {e}", self.gens.h1[i].label, self.gens.h1[j].label)
                })?;
                products.push(Product {
                    left: li.label,
                    right: lj.label,
                    target_degree: 2,
                    coords,
                });
            }
        }

        let h3_dim = usize::from(self.gens.h3.is_some());
        let resolved2: Vec<Option<Vec<u64>>> = self
            .lifts2
            .iter()
            .enumerate()
            .map(|(j, l)| match l {
                Some(l) => Ok(Some(l.simp_fp.clone())),
                None if paranoid => self.generic_h2_lift(j).map(Some),
                None => Ok(None),
            })
            .collect::<Result<_, String>>()?;
        for li in &self.lifts1 {
            for (j, gj) in self.gens.h2.iter().enumerate() {
                let mut coords12 = vec![0u64; h3_dim];
                let mut coords21 = vec![0u64; h3_dim];
                let lift2 = &resolved2[j];
                if self.gens.h3.is_some() {
                    let g = lift2.as_ref().expect("lifts exist whenever H^3 is nonzero");
                    coords12 = self
                        .cup_to_h3(&li.simp_fp, g, true)
                        .map_err(|e| format!("{} ∪ {}: {e}", li.label, gj.label))?;
                    coords21 = self
                        .cup_to_h3(&li.simp_fp, g, false)
                        .map_err(|e| format!("{} ∪ {}: {e}", gj.label, li.label))?;
                } else if let Some(g) = &lift2 {
                    // H³ = 0: verify the products are coboundaries anyway
                    for order_12 in [true, false] {
                        let c = if order_12 {
                            aw_cup(&self.simp, p, 1, &li.simp_fp, 2, g)?
                        } else {
                            aw_cup(&self.simp, p, 2, g, 1, &li.simp_fp)?
                        };
                        let pulled = self.t.pull_back(3, &c, p);
                        let res =
                            linalg::quotient_coords(p, &pulled, &[], &self.hcell.coboundaries[3]);
                        if res.is_none() {
                            return Err(format!(
                                "{} ∪ {} is not a coboundary although H^3 = 0",
                                li.label, gj.label
                            ));
                        }
                    }
                }
                products.push(Product {
                    left: li.label,
                    right: gj.label,
                    target_degree: 3,
                    coords: coords12,
                });
                products.push(Product {
                    left: gj.label,
                    right: li.label,
                    target_degree: 3,
                    coords: coords21,
                });
            }
        }

        Ok(StructureConstants {
            p,
            h1: self.gens.h1.iter().map(|g| g.label).collect(),
            h2: self.gens.h2.iter().map(|g| g.label).collect(),
            h3: self.gens.h3.iter().map(|g| g.label).collect(),
            products,
        })
    }

    /// Coefficient method vs full projection, on every H¹⊗H¹ product.
    pub fn method_agreement(&self) -> Result<(), String> {
        let p = self.p();
        for (i, li) in self.lifts1.iter().enumerate() {
            for (j, lj) in self.lifts1.iter().enumerate() {
                let phi = aw_cup(&self.simp, p, 1, &li.simp_fp, 1, &lj.simp_fp)?;
                let a = self.coefficient_method(&phi)?;
                let b = self.full_h2_class(&phi)?;
                if a != b {
                    return Err(format!(
                        "methods disagree on {} ∪ {}: {a:?} vs {b:?}",
                        self.gens.h1[i].label, self.gens.h1[j].label
                    ));
                }
            }
        }
        Ok(())
    }

    /// Class-level graded commutativity of the computed constants:
    /// deg (1,1) products anticommute (for p > 2), the rest commute.
    pub fn commutativity(&self, sc: &StructureConstants) -> Result<(), String> {
        let p = self.p();
        for pr in &sc.products {
            let Some(rev) = sc.get(pr.right, pr.left) else {
                continue;
            };
            let want: Vec<u64> = if pr.target_degree == 2 && p > 2 {
                rev.coords.iter().map(|&c| (p - c) % p).collect()
            } else {
                rev.coords.clone()
            };
            if pr.coords != want {
                return Err(format!(
                    "commutativity fails: [{} ∪ {}] = {:?} vs [{} ∪ {}] = {:?}",
                    pr.left, pr.right, pr.coords, pr.right, pr.left, rev.coords
                ));
            }
        }
        Ok(())
    }

    /// The H⁰ generator is a two-sided identity at cochain level.
    pub fn neutrality(&self) -> Result<(), String> {
        let p = self.p();
        let one = lift_generator(
            &Generator {
                label: GeneratorLabel::One,
                degree: 0,
                cell_terms: vec![(CellLabel::Sigma, 1, 1)],
            },
            &self.inv,
            &self.d,
            &self.cell,
            &self.simp,
            self.variant,
        )?;
        for lift in self.lifts1.iter().chain(self.lifts2.iter().flatten()) {
            let left = aw_cup(&self.simp, p, 0, &one.simp_fp, lift.degree, &lift.simp_fp)?;
            let right = aw_cup(&self.simp, p, lift.degree, &lift.simp_fp, 0, &one.simp_fp)?;
            if left != lift.simp_fp || right != lift.simp_fp {
                return Err(format!("1 ∪ {} differs from {}", lift.label, lift.label));
            }
        }
        Ok(())
    }
}

/// Convenience: build the context for (invariants, p) with the given basis.
pub fn ring_context(
    inv: &SeifertInvariants,
    p: u64,
    variant: BasisVariant,
) -> Result<RingContext, String> {
    let d = crate::invariants::derive(inv, p).map_err(|e| e.to_string())?;
    RingContext::new(inv, &d, variant)
}
