//! The Δ-complex refining the cellular decomposition: every 2-cell is split
//! into triangles around an added center, every 3-cell into tetrahedra, with
//! explicit ordered face lists. Repeated faces are allowed; vertices are
//! materialized so that face-of-face coherence can be checked.

use crate::invariants::{SeifertInvariants, SeifertType};
use crate::linalg::FpMatrix;
use crate::words::{build_word, Letter, PavementWord};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimplexLabel {
    // dimension 0
    Sigma,
    VertA,
    VertB,
    VertC(usize),
    VertD(usize),
    // dimension 1
    T(usize),
    Q(usize),
    H,
    G(usize),
    F(usize),
    E(usize),
    APlus,
    AMinus,
    SPlus(usize),
    SMinus(usize),
    /// p_{k,l}, l = 1..z_k
    P(usize, usize),
    CPlus(usize),
    CMinus(usize),
    /// S_{k,l}, l = 0..z_k
    SK(usize, usize),
    // dimension 2
    Rho1(usize),
    Rho2(usize),
    Nu1(usize),
    Nu2(usize),
    Delta(usize),
    Mu(usize, usize),
    EPlus(usize),
    EMinus(usize),
    TPlus(usize),
    TMinus(usize),
    HSimp(usize),
    FSimp(usize),
    PMinus(usize, usize),
    PPlus(usize, usize),
    X(usize, usize),
    QSimp(usize),
    HPrime(usize),
    GSimp(usize),
    // dimension 3
    DPlus(usize),
    DMinus(usize),
    N1(usize),
    N2(usize),
    NP1(usize),
    NP2(usize),
    R1(usize),
    R2(usize),
    MPlus(usize, usize),
    MMinus(usize, usize),
    RP1(usize),
    RP2(usize),
}

impl fmt::Display for SimplexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SimplexLabel::*;
        match self {
            Sigma => write!(f, "sigma"),
            VertA => write!(f, "a"),
            VertB => write!(f, "b"),
            VertC(k) => write!(f, "c{k}"),
            VertD(k) => write!(f, "d{k}"),
            T(j) => write!(f, "t{j}"),
            Q(k) => write!(f, "q{k}"),
            H => write!(f, "h"),
            G(k) => write!(f, "g{k}"),
            F(j) => write!(f, "f{j}"),
            E(l) => write!(f, "e{l}"),
            APlus => write!(f, "A+"),
            AMinus => write!(f, "A-"),
            SPlus(l) => write!(f, "S{l}+"),
            SMinus(l) => write!(f, "S{l}-"),
            P(k, l) => write!(f, "p{k}_{l}"),
            CPlus(k) => write!(f, "C{k}+"),
            CMinus(k) => write!(f, "C{k}-"),
            SK(k, l) => write!(f, "s{k}_{l}"),
            Rho1(k) => write!(f, "rho{k}_1"),
            Rho2(k) => write!(f, "rho{k}_2"),
            Nu1(j) => write!(f, "nu{j}_1"),
            Nu2(j) => write!(f, "nu{j}_2"),
            Delta(l) => write!(f, "delta{l}"),
            Mu(k, l) => write!(f, "mu{k}_{l}"),
            EPlus(l) => write!(f, "E{l}+"),
            EMinus(l) => write!(f, "E{l}-"),
            TPlus(l) => write!(f, "T{l}+"),
            TMinus(l) => write!(f, "T{l}-"),
            HSimp(l) => write!(f, "H{l}"),
            FSimp(l) => write!(f, "F{l}"),
            PMinus(k, l) => write!(f, "Pm{k}_{l}"),
            PPlus(k, l) => write!(f, "Pp{k}_{l}"),
            X(k, l) => write!(f, "X{k}_{l}"),
            QSimp(k) => write!(f, "Q{k}"),
            HPrime(k) => write!(f, "Hp{k}"),
            GSimp(k) => write!(f, "G{k}"),
            DPlus(l) => write!(f, "Dp{l}"),
            DMinus(l) => write!(f, "Dm{l}"),
            N1(j) => write!(f, "N{j}_1"),
            N2(j) => write!(f, "N{j}_2"),
            NP1(j) => write!(f, "Np{j}_1"),
            NP2(j) => write!(f, "Np{j}_2"),
            R1(k) => write!(f, "R{k}_1"),
            R2(k) => write!(f, "R{k}_2"),
            MPlus(k, l) => write!(f, "Mp{k}_{l}"),
            MMinus(k, l) => write!(f, "Mm{k}_{l}"),
            RP1(k) => write!(f, "Rp{k}_1"),
            RP2(k) => write!(f, "Rp{k}_2"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Simplex {
    pub label: SimplexLabel,
    /// faces s_0..s_d as indices into the (d-1)-table; empty for vertices
    pub faces: Vec<usize>,
}

/// A simplicial cochain with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCochain {
    pub degree: usize,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct DeltaComplex {
    pub simplices: [Vec<Simplex>; 4],
    index: HashMap<SimplexLabel, (usize, usize)>,
    /// pavement word per fiber slot (input order)
    pub words: Vec<PavementWord>,
}

impl DeltaComplex {
    pub fn len(&self, dim: usize) -> usize {
        self.simplices[dim].len()
    }

    pub fn index_of(&self, label: SimplexLabel) -> (usize, usize) {
        *self
            .index
            .get(&label)
            .unwrap_or_else(|| panic!("no simplex labelled {label} in this complex"))
    }

    pub fn idx(&self, label: SimplexLabel) -> usize {
        self.index_of(label).1
    }

    pub fn label(&self, dim: usize, i: usize) -> SimplexLabel {
        self.simplices[dim][i].label
    }

    /// Face s_i of the simplex at (dim, idx).
    pub fn face(&self, dim: usize, idx: usize, i: usize) -> usize {
        self.simplices[dim][idx].faces[i]
    }

    /// Boundary matrix ∂_d, rows over (d-1)-simplices, columns over
    /// d-simplices, entry = Σ_{i : s_i = τ} (-1)^i.
    pub fn boundary_matrix(&self, d: usize) -> Vec<Vec<i64>> {
        assert!((1..=3).contains(&d));
        let mut b = vec![vec![0i64; self.len(d)]; self.len(d - 1)];
        for (s, simplex) in self.simplices[d].iter().enumerate() {
            for (i, &f) in simplex.faces.iter().enumerate() {
                b[f][s] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        b
    }

    pub fn boundary_fp(&self, d: usize, p: u64) -> FpMatrix {
        FpMatrix::from_rows(p, &self.boundary_matrix(d))
    }

    /// Build an integer cochain from labelled terms.
    pub fn cochain(&self, degree: usize, terms: &[(SimplexLabel, i64)]) -> SimplicialCochain {
        let mut values = vec![0i64; self.len(degree)];
        for &(label, coeff) in terms {
            let (d, i) = self.index_of(label);
            assert_eq!(
                d, degree,
                "label {label} has dimension {d}, expected {degree}"
            );
            values[i] += coeff;
        }
        SimplicialCochain { degree, values }
    }

    /// Coboundary of an integer cochain, via the transpose of ∂_{deg+1}.
    pub fn coboundary(&self, x: &SimplicialCochain) -> SimplicialCochain {
        assert!(x.degree < 3);
        let b = self.boundary_matrix(x.degree + 1);
        let n = self.len(x.degree + 1);
        let mut values = vec![0i64; n];
        for (s, slot) in values.iter_mut().enumerate() {
            *slot = (0..self.len(x.degree)).map(|t| x.values[t] * b[t][s]).sum();
        }
        SimplicialCochain {
            degree: x.degree + 1,
            values,
        }
    }

    /// First vertex v_0 of a simplex, as an index into dimension 0.
    pub fn first_vertex(&self, dim: usize, idx: usize) -> usize {
        match dim {
            0 => idx,
            1 => self.face(1, idx, 1),
            d => {
                let last_face = self.face(d, idx, d);
                self.first_vertex(d - 1, last_face)
            }
        }
    }

    /// Last vertex v_d of a simplex.
    pub fn last_vertex(&self, dim: usize, idx: usize) -> usize {
        match dim {
            0 => idx,
            1 => self.face(1, idx, 0),
            d => {
                let first_face = self.face(d, idx, 0);
                self.last_vertex(d - 1, first_face)
            }
        }
    }

    /// Δ-complex coherence: (s_i)_j = (s_j)_{i-1} for j < i, all simplices.
    pub fn check_coherence(&self) -> Result<(), String> {
        for d in 2..=3 {
            for s in &self.simplices[d] {
                for i in 1..=d {
                    for j in 0..i {
                        let a = self.face(d - 1, s.faces[i], j);
                        let b = self.face(d - 1, s.faces[j], i - 1);
                        if a != b {
                            return Err(format!(
                                "face mismatch at {} (dim {d}): (s_{i})_{j} = {} but (s_{j})_{} = {}",
                                s.label,
                                self.label(d - 2, a),
                                i - 1,
                                self.label(d - 2, b),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn d_squared_is_zero(&self) -> bool {
        for d in 2..=3 {
            let hi = self.boundary_matrix(d);
            let lo = self.boundary_matrix(d - 1);
            for s in 0..self.len(d) {
                for t in 0..self.len(d - 2) {
                    let sum: i64 = (0..self.len(d - 1)).map(|m| lo[t][m] * hi[m][s]).sum();
                    if sum != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..4)
            .map(|d| {
                if d % 2 == 0 {
                    self.len(d) as i64
                } else {
                    -(self.len(d) as i64)
                }
            })
            .sum()
    }

    /// Line-oriented dump: `SIMPLEX <dim> <label> FACES <label0> ...`
    pub fn export(&self) -> String {
        let mut out = String::new();
        for d in 0..4 {
            for s in &self.simplices[d] {
                out.push_str(&format!("SIMPLEX {d} {}", s.label));
                out.push_str(" FACES");
                for &f in &s.faces {
                    out.push_str(&format!(" {}", self.label(d.wrapping_sub(1), f)));
                }
                out.push('\n');
            }
        }
        out
    }
}

struct Builder {
    simplices: [Vec<Simplex>; 4],
    index: HashMap<SimplexLabel, (usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            simplices: Default::default(),
            index: HashMap::new(),
        }
    }

    fn vertex(&mut self, label: SimplexLabel) {
        self.push(0, label, vec![]);
    }

    fn push(&mut self, dim: usize, label: SimplexLabel, faces: Vec<usize>) {
        let idx = self.simplices[dim].len();
        let prev = self.index.insert(label, (dim, idx));
        assert!(prev.is_none(), "duplicate simplex label {label}");
        self.simplices[dim].push(Simplex { label, faces });
    }

    fn at(&self, label: SimplexLabel) -> usize {
        self.index
            .get(&label)
            .unwrap_or_else(|| panic!("face {label} referenced before construction"))
            .1
    }

    fn edge(&mut self, label: SimplexLabel, head: SimplexLabel, tail: SimplexLabel) {
        let faces = vec![self.at(head), self.at(tail)];
        self.push(1, label, faces);
    }

    fn tri(&mut self, label: SimplexLabel, s: [SimplexLabel; 3]) {
        let faces = s.iter().map(|&l| self.at(l)).collect();
        self.push(2, label, faces);
    }

    fn tet(&mut self, label: SimplexLabel, s: [SimplexLabel; 4]) {
        let faces = s.iter().map(|&l| self.at(l)).collect();
        self.push(3, label, faces);
    }
}

/// Successor in the cycle 1..=z.
fn next1(l: usize, z: usize) -> usize {
    if l < z {
        l + 1
    } else {
        1
    }
}

/// Construct the full Δ-complex for an invariant list.
pub fn build_delta_complex(inv: &SeifertInvariants) -> DeltaComplex {
    use SimplexLabel::*;
    let gp = inv.g_prime();
    let star = inv.star();
    let m = inv.m();
    let eps = inv.eps_signs();
    let orient = inv.ty.is_orientable_base();
    let lmax = star + m; // e/S/delta/... indices run 0..=lmax
    let wrap = |l: usize| if l > lmax { l - lmax - 1 } else { l };

    let words: Vec<PavementWord> = inv
        .fibers
        .iter()
        .map(|&(a, b)| build_word(a, b).expect("admissible invariants give buildable words"))
        .collect();

    let mut b = Builder::new();

    // 0-simplexes
    b.vertex(Sigma);
    b.vertex(VertA);
    b.vertex(VertB);
    for k in 0..=m {
        b.vertex(VertC(k));
        b.vertex(VertD(k));
    }

    // 1-simplexes
    for j in 1..=gp {
        b.edge(T(j), Sigma, Sigma);
    }
    for k in 0..=m {
        b.edge(Q(k), Sigma, Sigma);
    }
    b.edge(H, Sigma, Sigma);
    for k in 0..=m {
        b.edge(G(k), Sigma, Sigma);
    }
    for j in 1..=gp {
        b.edge(F(j), Sigma, Sigma);
    }
    for l in 0..=lmax {
        b.edge(E(l), Sigma, VertA);
    }
    b.edge(APlus, VertA, VertB);
    b.edge(AMinus, VertA, VertB);
    for l in 0..=lmax {
        b.edge(SPlus(l), Sigma, VertB);
        b.edge(SMinus(l), Sigma, VertB);
    }
    for (k, w) in words.iter().enumerate() {
        for l in 1..=w.z {
            b.edge(P(k, l), Sigma, VertC(k));
        }
        b.edge(CPlus(k), VertC(k), VertD(k));
        b.edge(CMinus(k), VertC(k), VertD(k));
        for l in 0..=w.z {
            b.edge(SK(k, l), Sigma, VertD(k));
        }
    }

    // 2-simplexes: rho, nu
    for k in 0..=m {
        b.tri(Rho1(k), [H, G(k), Q(k)]);
        b.tri(Rho2(k), [Q(k), G(k), H]);
    }
    for j in 1..=gp {
        if eps[j - 1] == 1 {
            b.tri(Nu1(j), [H, F(j), T(j)]);
        } else {
            b.tri(Nu1(j), [H, T(j), F(j)]);
        }
        b.tri(Nu2(j), [T(j), F(j), H]);
    }

    // delta fan: (edge, e_out, e_in) per slot
    let delta_edges: Vec<(SimplexLabel, usize, usize)> = {
        let mut v = Vec::with_capacity(lmax + 1);
        if orient {
            for i in 0..inv.g as usize {
                v.push((T(2 * i + 1), 4 * i + 1, 4 * i));
                v.push((T(2 * i + 2), 4 * i + 2, 4 * i + 1));
                v.push((T(2 * i + 1), 4 * i + 2, 4 * i + 3));
                v.push((T(2 * i + 2), 4 * i + 3, 4 * i + 4));
            }
        } else {
            for j in 1..=inv.g as usize {
                v.push((T(j), 2 * j - 1, 2 * j - 2));
                v.push((T(j), 2 * j, 2 * j - 1));
            }
        }
        for k in 0..=m {
            v.push((Q(k), wrap(star + k + 1), star + k));
        }
        v
    };
    for (l, &(edge, a, bb)) in delta_edges.iter().enumerate() {
        b.tri(Delta(l), [edge, E(a), E(bb)]);
    }

    // mu fans
    for (k, w) in words.iter().enumerate() {
        let z = w.z;
        if w.beta > 0 {
            for l in 1..=z {
                let x = if w.letter(l) == Letter::Q { Q(k) } else { H };
                b.tri(Mu(k, l), [x, P(k, next1(l, z)), P(k, l)]);
            }
        } else if w.beta < 0 {
            b.tri(Mu(k, 1), [Q(k), P(k, 2), P(k, 1)]);
            for l in 2..=z {
                b.tri(Mu(k, l), [H, P(k, l), P(k, next1(l, z))]);
            }
        } else {
            b.tri(Mu(k, 1), [Q(k), P(k, 1), P(k, 1)]);
        }
    }

    // E, T, H, F families
    for l in 0..=lmax {
        b.tri(EPlus(l), [E(l), SPlus(l), APlus]);
        b.tri(EMinus(l), [E(l), SMinus(l), AMinus]);
    }
    for (l, &(edge, a, bb)) in delta_edges.iter().enumerate() {
        b.tri(TPlus(l), [edge, SPlus(a), SPlus(bb)]);
        b.tri(TMinus(l), [edge, SMinus(a), SMinus(bb)]);
    }
    for l in 0..=lmax {
        let flipped = l % 2 == 1 && l < star && eps[l.div_ceil(2) - 1] == -1;
        if flipped {
            b.tri(HSimp(l), [H, SMinus(l), SPlus(l)]);
        } else {
            b.tri(HSimp(l), [H, SPlus(l), SMinus(l)]);
        }
    }
    {
        // F fan: (edge, S^?_a, S^?_b) — sign pattern by type
        let f_slot = |bld: &mut Builder,
                      l: usize,
                      edge: SimplexLabel,
                      a: usize,
                      bb: usize,
                      swapped: bool| {
            if swapped {
                bld.tri(FSimp(l), [edge, SMinus(a), SPlus(bb)]);
            } else {
                bld.tri(FSimp(l), [edge, SPlus(a), SMinus(bb)]);
            }
        };
        if orient {
            for i in 0..inv.g as usize {
                let o2 = inv.ty == SeifertType::O2;
                f_slot(&mut b, 4 * i, F(2 * i + 1), 4 * i + 1, 4 * i, false);
                f_slot(&mut b, 4 * i + 1, F(2 * i + 2), 4 * i + 2, 4 * i + 1, o2);
                f_slot(&mut b, 4 * i + 2, F(2 * i + 1), 4 * i + 2, 4 * i + 3, o2);
                f_slot(&mut b, 4 * i + 3, F(2 * i + 2), 4 * i + 3, 4 * i + 4, false);
            }
        } else {
            for j in 1..=inv.g as usize {
                f_slot(&mut b, 2 * j - 2, F(j), 2 * j - 1, 2 * j - 2, false);
                f_slot(&mut b, 2 * j - 1, F(j), 2 * j, 2 * j - 1, eps[j - 1] == -1);
            }
        }
        for k in 0..=m {
            f_slot(&mut b, star + k, G(k), wrap(star + k + 1), star + k, false);
        }
    }

    // P^-, P^+, X, Q, H', G triangle families around each fiber
    for (k, w) in words.iter().enumerate() {
        let z = w.z;
        for l in 1..=z {
            b.tri(PMinus(k, l), [P(k, l), SK(k, l), CMinus(k)]);
        }
        if w.beta > 0 {
            let wk = w.w;
            for l in 1..=z {
                let s_index = if l <= z - wk + 1 {
                    wk + l - 1
                } else if l == z - wk + 2 {
                    0
                } else {
                    l + wk - 1 - z
                };
                b.tri(PPlus(k, l), [P(k, l), SK(k, s_index), CPlus(k)]);
            }
            for l in 1..=z {
                let x = if w.letter(l) == Letter::Q { Q(k) } else { H };
                b.tri(X(k, l), [x, SK(k, next1(l, z)), SK(k, l)]);
            }
            b.tri(QSimp(k), [Q(k), SK(k, 0), SK(k, z)]);
            b.tri(HPrime(k), [H, SK(k, 2), SK(k, 0)]);
            b.tri(GSimp(k), [G(k), SK(k, 2), SK(k, z)]);
        } else if w.beta < 0 {
            b.tri(PPlus(k, 1), [P(k, 1), SK(k, 0), CPlus(k)]);
            for l in 2..=z {
                b.tri(PPlus(k, l), [P(k, l), SK(k, next1(l, z)), CPlus(k)]);
            }
            b.tri(X(k, 1), [Q(k), SK(k, 2), SK(k, 1)]);
            for l in 2..=z {
                b.tri(X(k, l), [H, SK(k, l), SK(k, next1(l, z))]);
            }
            b.tri(QSimp(k), [Q(k), SK(k, next1(2, z)), SK(k, 0)]);
            b.tri(HPrime(k), [H, SK(k, 1), SK(k, 0)]);
            b.tri(GSimp(k), [G(k), SK(k, 2), SK(k, 0)]);
        } else {
            b.tri(PPlus(k, 1), [P(k, 1), SK(k, 0), CPlus(k)]);
            b.tri(X(k, 1), [Q(k), SK(k, 1), SK(k, 1)]);
            b.tri(QSimp(k), [Q(k), SK(k, 0), SK(k, 0)]);
            b.tri(HPrime(k), [H, SK(k, 1), SK(k, 0)]);
            b.tri(GSimp(k), [G(k), SK(k, 1), SK(k, 0)]);
        }
    }

    // 3-simplexes: D fan over delta
    for (l, &(_, aa, bb)) in delta_edges.iter().enumerate() {
        b.tet(DPlus(l), [Delta(l), TPlus(l), EPlus(aa), EPlus(bb)]);
        b.tet(DMinus(l), [Delta(l), TMinus(l), EMinus(aa), EMinus(bb)]);
    }

    // N tetrahedra over each nu_j
    for j in 1..=gp {
        match inv.ty {
            SeifertType::O1 => {
                if j % 2 == 1 {
                    b.tet(
                        N1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            FSimp(2 * j - 2),
                            TMinus(2 * j - 2),
                        ],
                    );
                    b.tet(NP1(j), [Nu1(j), HSimp(2 * j), FSimp(2 * j), TMinus(2 * j)]);
                    b.tet(
                        N2(j),
                        [Nu2(j), TPlus(2 * j - 2), FSimp(2 * j - 2), HSimp(2 * j - 2)],
                    );
                    b.tet(
                        NP2(j),
                        [Nu2(j), TPlus(2 * j), FSimp(2 * j), HSimp(2 * j + 1)],
                    );
                } else {
                    b.tet(
                        N1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 2),
                            FSimp(2 * j - 3),
                            TMinus(2 * j - 3),
                        ],
                    );
                    b.tet(
                        NP1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            FSimp(2 * j - 1),
                            TMinus(2 * j - 1),
                        ],
                    );
                    b.tet(
                        N2(j),
                        [Nu2(j), TPlus(2 * j - 3), FSimp(2 * j - 3), HSimp(2 * j - 3)],
                    );
                    b.tet(
                        NP2(j),
                        [Nu2(j), TPlus(2 * j - 1), FSimp(2 * j - 1), HSimp(2 * j)],
                    );
                }
            }
            SeifertType::O2 => {
                if j % 2 == 1 {
                    b.tet(
                        N1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            TMinus(2 * j - 2),
                            FSimp(2 * j - 2),
                        ],
                    );
                    b.tet(NP1(j), [Nu1(j), HSimp(2 * j), TPlus(2 * j), FSimp(2 * j)]);
                    b.tet(
                        N2(j),
                        [Nu2(j), TPlus(2 * j - 2), FSimp(2 * j - 2), HSimp(2 * j - 2)],
                    );
                    b.tet(
                        NP2(j),
                        [Nu2(j), TMinus(2 * j), FSimp(2 * j), HSimp(2 * j + 1)],
                    );
                } else {
                    b.tet(
                        N1(j),
                        [Nu1(j), HSimp(2 * j - 2), TPlus(2 * j - 3), FSimp(2 * j - 3)],
                    );
                    b.tet(
                        NP1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            TMinus(2 * j - 1),
                            FSimp(2 * j - 1),
                        ],
                    );
                    b.tet(
                        N2(j),
                        [
                            Nu2(j),
                            TMinus(2 * j - 3),
                            FSimp(2 * j - 3),
                            HSimp(2 * j - 3),
                        ],
                    );
                    b.tet(
                        NP2(j),
                        [Nu2(j), TPlus(2 * j - 1), FSimp(2 * j - 1), HSimp(2 * j)],
                    );
                }
            }
            _ => {
                if eps[j - 1] == 1 {
                    b.tet(
                        N1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            FSimp(2 * j - 2),
                            TMinus(2 * j - 2),
                        ],
                    );
                    b.tet(
                        NP1(j),
                        [Nu1(j), HSimp(2 * j), FSimp(2 * j - 1), TMinus(2 * j - 1)],
                    );
                    b.tet(
                        N2(j),
                        [Nu2(j), TPlus(2 * j - 2), FSimp(2 * j - 2), HSimp(2 * j - 2)],
                    );
                    b.tet(
                        NP2(j),
                        [Nu2(j), TPlus(2 * j - 1), FSimp(2 * j - 1), HSimp(2 * j - 1)],
                    );
                } else {
                    b.tet(
                        N1(j),
                        [
                            Nu1(j),
                            HSimp(2 * j - 1),
                            TMinus(2 * j - 2),
                            FSimp(2 * j - 2),
                        ],
                    );
                    b.tet(
                        NP1(j),
                        [Nu1(j), HSimp(2 * j), TPlus(2 * j - 1), FSimp(2 * j - 1)],
                    );
                    b.tet(
                        N2(j),
                        [Nu2(j), TPlus(2 * j - 2), FSimp(2 * j - 2), HSimp(2 * j - 2)],
                    );
                    b.tet(
                        NP2(j),
                        [
                            Nu2(j),
                            TMinus(2 * j - 1),
                            FSimp(2 * j - 1),
                            HSimp(2 * j - 1),
                        ],
                    );
                }
            }
        }
    }

    // R tetrahedra (H index wraps past star+m to 0)
    for k in 0..=m {
        let l = star + k;
        b.tet(R1(k), [Rho1(k), HSimp(wrap(l + 1)), FSimp(l), TMinus(l)]);
        b.tet(R2(k), [Rho2(k), TPlus(l), FSimp(l), HSimp(l)]);
    }

    // M and R' tetrahedra around each fiber
    for (k, w) in words.iter().enumerate() {
        let z = w.z;
        if w.beta > 0 {
            let wk = w.w;
            for l in 1..=z {
                b.tet(
                    MMinus(k, l),
                    [Mu(k, l), X(k, l), PMinus(k, next1(l, z)), PMinus(k, l)],
                );
            }
            for l in 1..=z {
                // rotated word: X_w .. X_{z-1}, Q, H', X_2 .. X_{w-1}
                let second = if l <= z - wk {
                    X(k, wk + l - 1)
                } else if l == z - wk + 1 {
                    QSimp(k)
                } else if l == z - wk + 2 {
                    HPrime(k)
                } else {
                    X(k, l + wk - 1 - z)
                };
                b.tet(
                    MPlus(k, l),
                    [Mu(k, l), second, PPlus(k, next1(l, z)), PPlus(k, l)],
                );
            }
            b.tet(RP1(k), [Rho1(k), HPrime(k), GSimp(k), QSimp(k)]);
            b.tet(RP2(k), [Rho2(k), X(k, 1), GSimp(k), X(k, z)]);
        } else if w.beta < 0 {
            b.tet(
                MMinus(k, 1),
                [Mu(k, 1), X(k, 1), PMinus(k, 2), PMinus(k, 1)],
            );
            for l in 2..=z {
                b.tet(
                    MMinus(k, l),
                    [Mu(k, l), X(k, l), PMinus(k, l), PMinus(k, next1(l, z))],
                );
            }
            b.tet(MPlus(k, 1), [Mu(k, 1), QSimp(k), PPlus(k, 2), PPlus(k, 1)]);
            for l in 2..z {
                b.tet(
                    MPlus(k, l),
                    [Mu(k, l), X(k, l + 1), PPlus(k, l), PPlus(k, l + 1)],
                );
            }
            b.tet(MPlus(k, z), [Mu(k, z), HPrime(k), PPlus(k, z), PPlus(k, 1)]);
            b.tet(RP1(k), [Rho1(k), X(k, 2), GSimp(k), QSimp(k)]);
            b.tet(RP2(k), [Rho2(k), X(k, 1), GSimp(k), HPrime(k)]);
        } else {
            b.tet(
                MMinus(k, 1),
                [Mu(k, 1), X(k, 1), PMinus(k, 1), PMinus(k, 1)],
            );
            b.tet(MPlus(k, 1), [Mu(k, 1), QSimp(k), PPlus(k, 1), PPlus(k, 1)]);
            b.tet(RP1(k), [Rho1(k), HPrime(k), GSimp(k), QSimp(k)]);
            b.tet(RP2(k), [Rho2(k), X(k, 1), GSimp(k), HPrime(k)]);
        }
    }

    let cx = DeltaComplex {
        simplices: b.simplices,
        index: b.index,
        words,
    };
    debug_assert_eq!(cx.check_coherence(), Ok(()));
    debug_assert!(cx.d_squared_is_zero());
    debug_assert_eq!(cx.euler_characteristic(), 0);
    cx
}

pub fn simplicial_cohomology(cx: &DeltaComplex, p: u64) -> crate::cellular::GradedBasis {
    let lens = [cx.len(0), cx.len(1), cx.len(2), cx.len(3)];
    crate::cellular::cohomology_from_boundaries(p, lens, |d| cx.boundary_fp(d, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::parse;
    use crate::simplicial::SimplexLabel::*;

    fn fixtures() -> Vec<&'static str> {
        vec![
            "e=0;type=o1;g=0",
            "e=-1;type=o1;g=0",
            "e=-2;type=o1;g=0",
            "e=2;type=o1;g=0",
            "e=0;type=o1;g=2",
            "e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)",
            "e=0;type=o1;g=0;fibers=(5,2)",
            "e=0;type=o2;g=1;fibers=(2,1),(4,3)",
            "e=-1;type=o2;g=2",
            "e=0;type=n1;g=1;fibers=(3,1),(3,2)",
            "e=-1;type=n1;g=2",
            "e=0;type=n2;g=1;fibers=(5,2)",
            "e=-1;type=n2;g=2;fibers=(2,1)",
            "e=0;type=n3;g=2;fibers=(3,2)",
            "e=-1;type=n3;g=3",
            "e=0;type=n4;g=3;fibers=(2,1),(3,1)",
            "e=-1;type=n4;g=4",
        ]
    }

    #[test]
    fn face_examples() {
        let cx = build_delta_complex(&parse("e=0;type=n2;g=1;fibers=(5,2)").unwrap());
        // rho faces
        let (d, r1) = cx.index_of(Rho1(0));
        assert_eq!(d, 2);
        let f: Vec<SimplexLabel> = cx.simplices[2][r1]
            .faces
            .iter()
            .map(|&i| cx.label(1, i))
            .collect();
        assert_eq!(f, vec![H, G(0), Q(0)]);
        let (_, r2) = cx.index_of(Rho2(0));
        let f: Vec<SimplexLabel> = cx.simplices[2][r2]
            .faces
            .iter()
            .map(|&i| cx.label(1, i))
            .collect();
        assert_eq!(f, vec![Q(0), G(0), H]);
        // nu_{1,1} for eps_1 = -1
        let (_, n1) = cx.index_of(Nu1(1));
        let f: Vec<SimplexLabel> = cx.simplices[2][n1]
            .faces
            .iter()
            .map(|&i| cx.label(1, i))
            .collect();
        assert_eq!(f, vec![H, T(1), F(1)]);
    }

    #[test]
    fn h_flip_rule() {
        // n2, g=2: eps_1 = eps_2 = -1; star = 4; flips at l = 1, 3
        let cx = build_delta_complex(&parse("e=0;type=n2;g=2").unwrap());
        for l in 0..=4 {
            let (_, hi) = cx.index_of(HSimp(l));
            let f: Vec<SimplexLabel> = cx.simplices[2][hi]
                .faces
                .iter()
                .map(|&i| cx.label(1, i))
                .collect();
            if l == 1 || l == 3 {
                assert_eq!(f, vec![H, SMinus(l), SPlus(l)], "l={l}");
            } else {
                assert_eq!(f, vec![H, SPlus(l), SMinus(l)], "l={l}");
            }
        }
        // n3, g=2: eps = (1, -1); flip only at l = 3
        let cx = build_delta_complex(&parse("e=0;type=n3;g=2").unwrap());
        for l in 0..=4 {
            let (_, hi) = cx.index_of(HSimp(l));
            let f: Vec<SimplexLabel> = cx.simplices[2][hi]
                .faces
                .iter()
                .map(|&i| cx.label(1, i))
                .collect();
            let flipped = l == 3;
            assert_eq!(f[1], if flipped { SMinus(l) } else { SPlus(l) }, "l={l}");
        }
    }

    #[test]
    fn structural_validity_all_fixtures() {
        for txt in fixtures() {
            let cx = build_delta_complex(&parse(txt).unwrap());
            cx.check_coherence()
                .unwrap_or_else(|e| panic!("{txt}: {e}"));
            assert!(cx.d_squared_is_zero(), "{txt}: dd != 0");
            assert_eq!(cx.euler_characteristic(), 0, "{txt}: chi != 0");
        }
    }

    #[test]
    fn rho_boundary_column() {
        let cx = build_delta_complex(&parse("e=0;type=o1;g=0;fibers=(5,2)").unwrap());
        let b2 = cx.boundary_matrix(2);
        let (_, r1) = cx.index_of(Rho1(1));
        for (t, row) in b2.iter().enumerate() {
            let want = match cx.label(1, t) {
                H => 1,
                G(1) => -1,
                Q(1) => 1,
                _ => 0,
            };
            assert_eq!(row[r1], want, "∂rho_{{1,1}} at {}", cx.label(1, t));
        }
    }

    #[test]
    fn mu_column_with_b_zero() {
        let inv = parse("e=0;type=o1;g=0").unwrap(); // single fiber (1,0)
        let cx = build_delta_complex(&inv);
        let b2 = cx.boundary_matrix(2);
        let (_, mu) = cx.index_of(Mu(0, 1));
        let (_, q0) = cx.index_of(Q(0));
        for (t, row) in b2.iter().enumerate() {
            assert_eq!(row[mu], i64::from(t == q0), "repeated face must cancel");
        }
    }

    #[test]
    fn simplex_counts_and_chi() {
        // e=0, o1, g=0, one extra (1,0) fiber
        let inv = parse("e=0;type=o1;g=0;fibers=(1,0)").unwrap();
        let cx = build_delta_complex(&inv);
        // m=1, star=0, z_0=z_1=1
        assert_eq!(cx.len(0), 3 + 4);
        assert_eq!(cx.len(1), 2 + 1 + 2 + 2 + 2 + 4 + 2 + 4 + 4);
        assert_eq!(cx.len(3), 2 * 2 + 2 * 2 + 2 * 2 + 2 * 2);
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn label_family_multiplicities() {
        let inv = parse("e=-1;type=n3;g=2;fibers=(5,2)").unwrap();
        let cx = build_delta_complex(&inv);
        let gp = 2;
        let m = 1;
        let star = 4;
        let zs = [2usize, 7];
        let w_total: usize = zs.iter().sum();
        assert_eq!(cx.len(0), 3 + 2 * (m + 1));
        assert_eq!(
            cx.len(1),
            2 * gp
                + 2 * (m + 1)
                + 1
                + (star + m + 1)
                + 2
                + 2 * (star + m + 1)
                + w_total
                + 2 * (m + 1)
                + (w_total + m + 1)
        );
        assert_eq!(
            cx.len(2),
            2 * (m + 1)
                + 2 * gp
                + (star + m + 1)
                + w_total
                + 6 * (star + m + 1)
                + 3 * w_total
                + 3 * (m + 1)
        );
        assert_eq!(
            cx.len(3),
            2 * (star + m + 1) + 4 * gp + 2 * (m + 1) + 2 * w_total + 2 * (m + 1)
        );
    }

    #[test]
    fn cohomology_three_torus() {
        let cx = build_delta_complex(&parse("e=0;type=o1;g=1").unwrap());
        assert_eq!(simplicial_cohomology(&cx, 5).dims, [1, 3, 3, 1]);
    }

    #[test]
    fn cohomology_connected() {
        for txt in ["e=0;type=o1;g=0", "e=-1;type=n4;g=3;fibers=(2,1)"] {
            let cx = build_delta_complex(&parse(txt).unwrap());
            for p in [2u64, 3] {
                assert_eq!(simplicial_cohomology(&cx, p).dims[0], 1, "{txt} p={p}");
            }
        }
    }

    #[test]
    fn export_roundtrip_shape() {
        let cx = build_delta_complex(&parse("e=0;type=o1;g=0").unwrap());
        let dump = cx.export();
        let total: usize = (0..4).map(|d| cx.len(d)).sum();
        assert_eq!(dump.lines().count(), total);
        assert!(dump
            .lines()
            .next()
            .unwrap()
            .starts_with("SIMPLEX 0 sigma FACES"));
        assert!(dump.contains("SIMPLEX 2 rho0_1 FACES h g0 q0"));
    }
}
