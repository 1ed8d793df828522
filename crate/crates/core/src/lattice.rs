//! Integer lattices kept in row Hermite normal form.
//!
//! Convention: rows are in echelon form, every pivot is positive, and the
//! entries above a pivot lie in `[0, pivot)`. With this normalization two
//! lattices are equal exactly when their bases are equal entry by entry.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice<T> {
    dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> Lattice<T> {
    /// The lattice spanned by `rows` in `ℤ^dim`.
    pub fn from_rows(dim: usize, rows: &[Vec<T>]) -> Self {
        Lattice { dim, basis: hermite_normal_form(rows, dim) }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let rows: Vec<Vec<T>> = (0..dim).map(|i| unit(dim, i)).collect();
        Lattice { dim, basis: rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Column index of each basis row's pivot.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| pivot_col(r).expect("basis rows are nonzero")).collect()
    }

    /// Membership by back-substitution against the echelon basis.
    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length must match the lattice dimension");
        let mut rest = v.to_vec();
        for row in &self.basis {
            let p = pivot_col(row).expect("basis rows are nonzero");
            if rest[p].is_zero() {
                continue;
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            axpy(&mut rest, &q, row);
        }
        rest.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &Lattice<T>) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }

    pub fn intersect(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.dim, other.dim, "lattices must share an ambient dimension");
        if self.basis.is_empty() || other.basis.is_empty() {
            return Lattice::zero(self.dim);
        }
        // (a, b) with aB1 + bB2 = 0 gives aB1 = -bB2 in both lattices
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let kernel = left_kernel(&stacked, self.dim);
        let k1 = self.basis.len();
        let rows: Vec<Vec<T>> = kernel.iter().map(|coeffs| combine(&coeffs[..k1], &self.basis, self.dim)).collect();
        Lattice::from_rows(self.dim, &rows)
    }

    pub fn sum(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.dim, other.dim, "lattices must share an ambient dimension");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice::from_rows(self.dim, &rows)
    }

    /// `[ℤ^dim : L]`, or `None` when the lattice is not of full rank.
    pub fn index(&self) -> Option<T> {
        if !self.is_full_rank() {
            return None;
        }
        Some(self.basis.iter().enumerate().fold(T::one(), |acc, (i, row)| acc * row[i].clone()))
    }
}

pub(crate) fn unit<T: Scalar>(dim: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = T::one();
    v
}

fn pivot_col<T: Scalar>(row: &[T]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

// rest -= q * row
fn axpy<T: Scalar>(rest: &mut [T], q: &T, row: &[T]) {
    for (x, r) in rest.iter_mut().zip(row) {
        *x = x.clone() - q.clone() * r.clone();
    }
}

/// Σ coeffs[i] * rows[i].
pub(crate) fn combine<T: Scalar>(coeffs: &[T], rows: &[Vec<T>], dim: usize) -> Vec<T> {
    let mut out = vec![T::zero(); dim];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o = o.clone() + c.clone() * r.clone();
        }
    }
    out
}

/// Row Hermite normal form of the row lattice of `rows` (each of length
/// `ncols`); zero rows are dropped.
pub fn hermite_normal_form<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .inspect(|r| assert_eq!(r.len(), ncols, "row length must equal the column count"))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            // unimodular 2x2 step [[x, y], [-q, p]] leaves gcd in row r, zero in row i
            let eg = a[r][c].extended_gcd(&a[i][c]);
            let p = a[r][c].clone() / eg.gcd.clone();
            let q = a[i][c].clone() / eg.gcd.clone();
            let (top, bottom): (Vec<T>, Vec<T>) = a[r]
                .iter()
                .zip(&a[i])
                .map(|(u, v)| {
                    (
                        eg.x.clone() * u.clone() + eg.y.clone() * v.clone(),
                        p.clone() * v.clone() - q.clone() * u.clone(),
                    )
                })
                .unzip();
            a[r] = top;
            a[i] = bottom;
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = a[r].clone();
        for row in a.iter_mut().take(r) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                axpy(row, &q, &pivot_row);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Basis (in HNF) of `{ x ∈ ℤ^m : x · rows = 0 }` where `rows` is `m × ncols`.
pub fn left_kernel<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let m = rows.len();
    let augmented: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = row.clone();
            out.extend(unit::<T>(m, i));
            out
        })
        .collect();
    let echelon = hermite_normal_form(&augmented, ncols + m);
    let kernel: Vec<Vec<T>> = echelon
        .into_iter()
        .filter(|row| row[..ncols].iter().all(|x| x.is_zero()))
        .map(|row| row[ncols..].to_vec())
        .collect();
    hermite_normal_form(&kernel, m)
}
