//! Exact rational linear algebra and integer lattices.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. The predicates downstream compare
//! coordinates against 1 with strict and non-strict inequalities, so a
//! rounding error would flip answers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::vector::IntVec;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Coordinates of a vector with respect to a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatCoords(pub Vec<Rat>);

impl RatCoords {
    pub fn all_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Componentwise floor.
    pub fn floors(&self) -> Vec<BigInt> {
        self.0.iter().map(|x| x.floor().to_integer()).collect()
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Matrix whose columns are the given vectors (all of dimension `dim`).
    pub fn from_columns(columns: &[IntVec], dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.dim(), dim, "column {j} has the wrong dimension");
            for (i, x) in c.entries().iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> IntVec {
        IntVec((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| self.data[r * n..(r + 1) * n].to_vec())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// Solves `Σ λ_i · basis_i = v` exactly.
pub fn coords_in_basis(basis: &[IntVec], v: &IntVec) -> Result<RatCoords> {
    let n = basis.len();
    if n != v.dim() || basis.iter().any(|b| b.dim() != n) {
        return Err(Error::InvalidInput(
            "coordinate basis must be square and match the vector dimension".into(),
        ));
    }
    // augmented system [B | v], B with the basis vectors as columns
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = basis.iter().map(|b| Rat::from(b.0[r].clone())).collect();
            row.push(Rat::from(v.0[r].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularBasis)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Ok(RatCoords(a.into_iter().map(|mut row| row.pop().unwrap()).collect()))
}

/// A fixed invertible basis prepared for repeated coordinate queries.
///
/// Coordinates are `adj · v / det` with `det > 0`, so cone and floor tests
/// need only integer arithmetic.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Vec<IntVec>,
    // rows of the (sign-normalized) adjugate
    adj: Vec<IntVec>,
    det: BigInt,
}

impl CoordinateSystem {
    pub fn new(basis: Vec<IntVec>) -> Result<Self> {
        let d = basis.len();
        let m = IntMatrix::from_columns(&basis, d);
        let det = m.determinant();
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        // column j of B^{-1} solves B x = e_j
        let mut inv_cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = IntVec::zero(d);
            e.0[j] = BigInt::one();
            inv_cols.push(coords_in_basis(&basis, &e)?);
        }
        let det_abs = det.abs();
        let adj = (0..d)
            .map(|i| {
                IntVec(
                    (0..d)
                        .map(|j| {
                            let x = &inv_cols[j].0[i] * Rat::from(det_abs.clone());
                            debug_assert!(x.is_integer());
                            x.to_integer()
                        })
                        .collect(),
                )
            })
            .collect::<Vec<_>>();
        Ok(CoordinateSystem {
            basis,
            adj,
            det: det_abs,
        })
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Common positive denominator of all coordinates.
    pub fn denominator(&self) -> &BigInt {
        &self.det
    }

    /// Numerators `N` with `[v]_i = N_i / denominator()`.
    pub fn numerators(&self, v: &IntVec) -> Vec<BigInt> {
        self.adj
            .iter()
            .map(|row| row.0.iter().zip(&v.0).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn coords(&self, v: &IntVec) -> RatCoords {
        RatCoords(
            self.numerators(v)
                .into_iter()
                .map(|n| Rat::new(n, self.det.clone()))
                .collect(),
        )
    }

    /// `⌊[v]_i⌋` for every i.
    pub fn floors(&self, v: &IntVec) -> Vec<BigInt> {
        self.numerators(v)
            .iter()
            .map(|n| n.div_floor(&self.det))
            .collect()
    }

    /// All coordinates `≥ 0`.
    pub fn in_cone(&self, v: &IntVec) -> bool {
        self.adj
            .iter()
            .all(|row| !row.0.iter().zip(&v.0).map(|(a, x)| a * x).sum::<BigInt>().is_negative())
    }

    /// `Σ n_i · basis_i`.
    pub fn combine(&self, coeffs: &[BigInt]) -> IntVec {
        IntVec::combination(coeffs, &self.basis, self.dim())
    }
}

/// Integer lattice spanned by a set of vectors, in column Hermite normal form.
///
/// Basis vector `i` has its first nonzero entry (the pivot, positive) at
/// `pivots[i]`, pivots strictly increase, and every other basis vector's
/// entry in a pivot position lies in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    basis: Vec<IntVec>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The HNF basis vectors (columns of the HNF matrix).
    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        in_lattice(self, v)
    }

    /// Every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// Column Hermite normal form of `m`: a canonical basis of the integer span
/// of its columns.
pub fn hnf(m: &IntMatrix) -> LatticeBasis {
    lattice_of(&m.columns(), m.rows())
}

/// Same as [`hnf`], taking the spanning vectors directly.
pub fn lattice_of(vectors: &[IntVec], dim: usize) -> LatticeBasis {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..dim {
        if p == rows.len() {
            break;
        }
        // Euclid on column c over rows p.. until only row p is nonzero there
        loop {
            let best = (p..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(p, best);
            let mut done = true;
            for r in p + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[p][c]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[p]) {
                    *x -= &q * y;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[p][c].is_zero() {
            continue;
        }
        if rows[p][c].is_negative() {
            for x in rows[p].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..p {
            let q = rows[r][c].div_floor(&rows[p][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(p);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        pivots.push(c);
        p += 1;
    }
    rows.truncate(p);
    LatticeBasis {
        dim,
        basis: rows.into_iter().map(IntVec).collect(),
        pivots,
    }
}

/// Whether `v` is an integer combination of the lattice basis.
pub fn in_lattice(l: &LatticeBasis, v: &IntVec) -> bool {
    assert_eq!(l.dim, v.dim(), "lattice/vector dimension mismatch");
    let mut residual = v.0.clone();
    for (b, &c) in l.basis.iter().zip(&l.pivots) {
        if residual[..c].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = residual[c].div_rem(&b.0[c]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in residual.iter_mut().zip(&b.0) {
            *x -= &q * y;
        }
    }
    residual.iter().all(Zero::is_zero)
}

/// Finds `x ≥ 0` (rational) with `Σ x_i · columns_i = target`, if one exists.
///
/// Phase-one simplex on an exact tableau, Bland's rule for entering and
/// leaving variables (lowest index wins every tie).
pub fn nonneg_witness(columns: &[IntVec], target: &IntVec) -> Option<Vec<Rat>> {
    let m = target.dim();
    let n = columns.len();
    if m == 0 {
        return Some(vec![Rat::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = vec![Rat::zero(); width];
            for (j, col) in columns.iter().enumerate() {
                row[j] = Rat::from(col.0[i].clone());
            }
            row[n + i] = Rat::one();
            row[rhs] = Rat::from(target.0[i].clone());
            if row[rhs].is_negative() {
                for (j, x) in row.iter_mut().enumerate() {
                    if j < n || j == rhs {
                        *x = -&*x;
                    }
                }
            }
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cost = |j: usize| -> bool { j >= n }; // artificial columns cost 1

    loop {
        // reduced cost of column j: c_j - Σ_{basic artificial rows} t[i][j]
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = if cost(j) { Rat::one() } else { Rat::zero() };
            for (i, &b) in basis.iter().enumerate() {
                if cost(b) {
                    r -= &t[i][j];
                }
            }
            r.is_negative()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !t[i][j].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][j];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (pr, _) = leave.expect("phase-one simplex cannot be unbounded");
        let inv = t[pr][j].recip();
        for x in t[pr].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != pr && !t[i][j].is_zero() {
                let factor = t[i][j].clone();
                for c in 0..width {
                    let delta = &factor * &t[pr][c];
                    t[i][c] -= delta;
                }
            }
        }
        basis[pr] = j;
    }

    let infeasibility: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| cost(b))
        .map(|(i, _)| t[i][rhs].clone())
        .sum();
    if !infeasibility.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[i][rhs].clone();
        }
    }
    Some(x)
}

/// Whether `target` lies in the rational cone spanned by `columns`.
pub fn lp_feasible_nonneg(columns: &[IntVec], target: &IntVec) -> bool {
    nonneg_witness(columns, target).is_some()
}
