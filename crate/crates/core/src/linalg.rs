//! Exact linear algebra kernels: F_p row reduction and integer Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Modular inverse of `a` mod prime `p`. Panics if `a ≡ 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "division by zero mod {p}");
    // Fermat: a^(p-2) mod p
    let mut result: u128 = 1;
    let mut base = a as u128;
    let mut exp = p - 2;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result as u64
}

/// Reduce a signed integer into `{0..p-1}`.
pub fn reduce_mod(x: i64, p: u64) -> u64 {
    let m = p as i64;
    (((x % m) + m) % m) as u64
}

/// Evaluate `num / den` mod `p`. Panics if `den ≡ 0 mod p`.
pub fn ratio_mod(num: i64, den: i64, p: u64) -> u64 {
    let d = reduce_mod(den, p);
    assert!(d != 0, "denominator {den} is not a unit mod {p}");
    reduce_mod(num, p) * inv_mod(d, p) % p
}

/// Dense matrix over F_p, column-major storage (entries reduced mod p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, reduce_mod(x, p));
            }
        }
        m
    }

    /// Build from column vectors.
    pub fn from_cols(p: u64, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[c * self.rows + r]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[c * self.rows + r] = v % self.p;
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        self.data[c * self.rows..(c + 1) * self.rows].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for c in 0..self.cols {
            for r in 0..self.rows {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u128;
        let mut out = vec![0u128; self.rows];
        for c in 0..self.cols {
            let x = (v[c] % self.p) as u128;
            if x == 0 {
                continue;
            }
            for r in 0..self.rows {
                out[r] = (out[r] + self.get(r, c) as u128 * x) % p;
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for j in 0..other.cols {
            let col = other.col(j);
            let res = self.mul_vec(&col);
            for i in 0..self.rows {
                out.set(i, j, res[i]);
            }
        }
        out
    }
}

/// Result of `rref`: reduced matrix, pivot columns, rank.
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form over F_p.
pub fn rref(m: &FpMatrix) -> Rref {
    let p = m.p;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r >= a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                let (x, y) = (a.get(r, j), a.get(pr, j));
                a.set(r, j, y);
                a.set(pr, j, x);
            }
        }
        let inv = inv_mod(a.get(r, c), p);
        for j in 0..a.cols {
            a.set(r, j, a.get(r, j) * inv % p);
        }
        for i in 0..a.rows {
            if i != r && a.get(i, c) != 0 {
                let f = a.get(i, c);
                for j in 0..a.cols {
                    let v = (a.get(i, j) + p * p - f * a.get(r, j) % p) % p;
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    rref(m).rank
}

/// Basis of the kernel (null space) of `m`, as column vectors of length `m.cols`.
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<u64>> {
    let p = m.p;
    let red = rref(m);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (row, &pc) in red.pivots.iter().enumerate() {
            v[pc] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec = vec![0u64; m.cols];
        vec[free] = 1;
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(row) = slot {
                let coeff = red.matrix.get(*row, free);
                if coeff != 0 {
                    vec[c] = p - coeff;
                }
            }
        }
        basis.push(vec);
    }
    basis
}

/// Solve `A x = b` over F_p. Returns any solution, or `None` if inconsistent.
pub fn solve(a: &FpMatrix, b: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(b.len(), a.rows);
    let p = a.p;
    let mut aug = FpMatrix::zeros(p, a.rows, a.cols + 1);
    for c in 0..a.cols {
        for r in 0..a.rows {
            aug.set(r, c, a.get(r, c));
        }
    }
    for r in 0..a.rows {
        aug.set(r, a.cols, b[r] % p);
    }
    let red = rref(&aug);
    if red.pivots.contains(&a.cols) {
        return None; // pivot in the constants column
    }
    let mut x = vec![0u64; a.cols];
    for (row, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(row, a.cols);
    }
    Some(x)
}

/// Coordinates of the class `[v]` in the basis induced by `generators` modulo
/// the span of `relators`. `generators` and `relators` are column vectors.
///
/// Solves `v = Σ λ_i g_i + Σ μ_j r_j` and returns λ; unique whenever the
/// generator classes are independent in the quotient. `None` if `v` is not in
/// the combined span.
pub fn quotient_coords(
    p: u64,
    v: &[u64],
    generators: &[Vec<u64>],
    relators: &[Vec<u64>],
) -> Option<Vec<u64>> {
    let n = v.len();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(generators.len() + relators.len());
    cols.extend(generators.iter().cloned());
    cols.extend(relators.iter().cloned());
    let a = FpMatrix::from_cols(p, n, &cols);
    let x = solve(&a, v)?;
    Some(x[..generators.len()].to_vec())
}

/// From `candidates`, select a maximal subset independent modulo `span`.
/// Returns indices into `candidates`.
pub fn independent_mod(p: u64, n: usize, span: &[Vec<u64>], candidates: &[Vec<u64>]) -> Vec<usize> {
    let mut cols: Vec<Vec<u64>> = span.to_vec();
    cols.extend(candidates.iter().cloned());
    let a = FpMatrix::from_cols(p, n, &cols);
    let red = rref(&a);
    red.pivots
        .iter()
        .filter(|&&c| c >= span.len())
        .map(|&c| c - span.len())
        .collect()
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[c * self.rows + r]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[c * self.rows + r] = v;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let x = other.get(k, j);
                if x.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let v = out.get(i, j) + self.get(i, k) * x;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Smith normal form: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with `d_i | d_{i+1}`.
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for c in t..d.cols {
                for r in t..d.rows {
                    let x = d.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    match &best {
                        Some((br, bc)) if d.get(*br, *bc).abs() <= x.abs() => {}
                        _ => best = Some((r, c)),
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish_snf(d, u, v, t);
            };
            swap_rows(&mut d, &mut u, t, pr);
            swap_cols(&mut d, &mut v, t, pc);

            let mut dirty = false;
            for r in t + 1..d.rows {
                let q = div_round(d.get(r, t), d.get(t, t));
                if !q.is_zero() {
                    row_op(&mut d, &mut u, r, t, &q);
                }
                if !d.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..d.cols {
                let q = div_round(d.get(t, c), d.get(t, t));
                if !q.is_zero() {
                    col_op(&mut d, &mut v, c, t, &q);
                }
                if !d.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let mut offender = None;
            'scan: for c in t + 1..d.cols {
                for r in t + 1..d.rows {
                    if !d.get(r, c).mod_floor(&d.get(t, t).abs()).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    // fold the offending row into row t and retry
                    let one = BigInt::from(-1);
                    row_op(&mut d, &mut u, t, r, &one);
                }
                None => break,
            }
        }
    }
    finish_snf(d, u, v, n)
}

fn finish_snf(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix, upto: usize) -> Snf {
    for i in 0..upto.min(d.rows.min(d.cols)) {
        if d.get(i, i).is_negative() {
            for j in 0..d.cols {
                let x = -d.get(i, j).clone();
                d.set(i, j, x);
            }
            for j in 0..u.cols {
                let x = -u.get(i, j).clone();
                u.set(i, j, x);
            }
        }
    }
    Snf { d, u, v }
}

fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let (x, y) = (d.get(a, j).clone(), d.get(b, j).clone());
        d.set(a, j, y);
        d.set(b, j, x);
    }
    for j in 0..u.cols {
        let (x, y) = (u.get(a, j).clone(), u.get(b, j).clone());
        u.set(a, j, y);
        u.set(b, j, x);
    }
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let (x, y) = (d.get(i, a).clone(), d.get(i, b).clone());
        d.set(i, a, y);
        d.set(i, b, x);
    }
    for i in 0..v.rows {
        let (x, y) = (v.get(i, a).clone(), v.get(i, b).clone());
        v.set(i, a, y);
        v.set(i, b, x);
    }
}

/// row_a -= q * row_b (and mirror on u)
fn row_op(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for j in 0..d.cols {
        let x = d.get(a, j) - q * d.get(b, j);
        d.set(a, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j) - q * u.get(b, j);
        u.set(a, j, x);
    }
}

/// col_a -= q * col_b (and mirror on v)
fn col_op(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for i in 0..d.rows {
        let x = d.get(i, a) - q * d.get(i, b);
        d.set(i, a, x);
    }
    for i in 0..v.rows {
        let x = v.get(i, a) - q * v.get(i, b);
        v.set(i, a, x);
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - qb|
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (&r * b).is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}
