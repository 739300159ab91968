//! Exact integer linear algebra: Smith normal form, lattice membership,
//! and the Tate cohomology of lattice involutions.
//!
//! All matrices carry arbitrary-precision entries; unimodular reductions
//! can blow up intermediate coefficients, so no machine-word arithmetic is
//! used anywhere in this module.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; rows must be rectangular.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn transpose(&self) -> IntMat {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "apply: dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Bilinear evaluation `xᵀ · self · y`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let my = self.apply(y);
        x.iter().zip(my.iter()).map(|(a, b)| a * b).sum()
    }

    /// Glues `self | other` side by side.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row(i) += k * row(j)
    fn add_row_mul(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = &self[(j, c)] * k;
            self[(i, c)] += t;
        }
    }

    /// col(i) += k * col(j)
    fn add_col_mul(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let t = &self[(r, j)] * k;
            self[(r, i)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let t = -self[(i, c)].clone();
            self[(i, c)] = t;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Add for &IntMat {
    type Output = IntMat;
    fn add(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &IntMat {
    type Output = IntMat;
    fn sub(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &IntMat {
    type Output = IntMat;
    fn neg(self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "mul: dimension mismatch");
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

/// Result of [`smith_normal_form`]: `left · A · right = diag`, both
/// transforms unimodular, diagonal non-negative with `dᵢ | dᵢ₊₁` and zeros
/// last. `rank` counts the non-zero diagonal entries.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub left: IntMat,
    pub diag: IntMat,
    pub right: IntMat,
    pub rank: usize,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n).map(|i| self.diag[(i, i)].clone()).collect()
    }
}

/// Smith normal form over ℤ by repeated gcd pivoting.
///
/// Total on every matrix, including empty and zero ones.
pub fn smith_normal_form(a: &IntMat) -> SmithNormalForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMat::identity(rows);
    let mut right = IntMat::identity(cols);

    let mut t = 0;
    'outer: while t < rows.min(cols) {
        // Pivot search: non-zero entry of minimal absolute value in the
        // trailing block, moved to (t, t).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        // Clear row and column t; a non-divisible remainder becomes the new
        // (smaller) pivot, so this terminates.
        let mut clean = true;
        for i in t + 1..rows {
            if !d[(i, t)].is_zero() {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let k = -q;
                d.add_row_mul(i, t, &k);
                left.add_row_mul(i, t, &k);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !d[(t, j)].is_zero() {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let k = -q;
                d.add_col_mul(j, t, &k);
                right.add_col_mul(j, t, &k);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue 'outer;
        }

        // Enforce divisibility d_t | d_{i,j} on the trailing block.
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    let one = BigInt::one();
                    d.add_row_mul(t, i, &one);
                    left.add_row_mul(t, i, &one);
                    continue 'outer;
                }
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let rank = t;
    SmithNormalForm {
        left,
        diag: d,
        right,
        rank,
    }
}

/// Solves `A·x = b` over ℤ; `None` when `b` is outside the integer column
/// span of `A`.
pub fn lattice_solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "lattice_solve: dimension mismatch");
    let snf = smith_normal_form(a);
    // A = L⁻¹ D R⁻¹, so A x = b  ⇔  D (R⁻¹ x) = L b.
    let lb = snf.left.apply(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < a.cols() && !snf.diag[(i, i)].is_zero() {
            let (q, r) = lb[i].div_rem(&snf.diag[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !lb[i].is_zero() {
            return None;
        }
    }
    Some(snf.right.apply(&y))
}

/// Saturated basis of `ker(A)` as the columns of an `n × k` matrix.
///
/// The columns generate the full integer kernel, so the sublattice they
/// span is primitive in ℤⁿ.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let k = n - snf.rank;
    IntMat::from_fn(n, k, |i, j| snf.right[(i, snf.rank + j)].clone())
}

fn ensure_involution(tau: &IntMat) -> Result<()> {
    if tau.rows() != tau.cols() {
        return Err(Error::DimensionMismatch(format!(
            "involution must be square, got {}x{}",
            tau.rows(),
            tau.cols()
        )));
    }
    if !(tau * tau).is_identity() {
        return Err(Error::NotInvolution);
    }
    Ok(())
}

/// An elementary 2-group `K/I` presented by coset representatives plus a
/// stored reducer, for `I ⊆ K ⊆ ℤⁿ` with `2K ⊆ I`.
///
/// `reduce` maps any vector of `K` to its ℤ₂-coordinate vector; vectors of
/// `I` reduce to zero and `coset_reps[j]` reduces to the j-th standard
/// basis vector.
#[derive(Clone, Debug)]
pub struct ElementaryTwoGroup {
    rank: usize,
    coset_reps: Vec<Vec<BigInt>>,
    /// Saturated basis of the ambient kernel `K` (columns).
    kernel: IntMat,
    /// Change of basis on `K`-coordinates; composed with `two_indices` it
    /// diagonalizes the denominator subgroup.
    change: IntMat,
    /// Indices (in the changed basis) where the invariant factor is 2.
    two_indices: Vec<usize>,
}

impl ElementaryTwoGroup {
    /// Quotient `ker(kmat) / im(imat)`; requires `im ⊆ ker` and
    /// `2·ker ⊆ im` (both hold for Tate quotients of involutions).
    fn from_kernel_mod_image(kmat: &IntMat, imat: &IntMat) -> Self {
        let kernel = kernel_basis(kmat);
        let k = kernel.cols();
        // Coordinates of the image generators in the kernel basis. The
        // kernel basis is saturated, so these are integral.
        let coords = IntMat::from_fn(k, imat.cols(), |i, j| {
            let col = imat.column(j);
            let sol = lattice_solve(&kernel, &col)
                .expect("image generator outside kernel: not an involution quotient");
            sol[i].clone()
        });
        let snf = smith_normal_form(&coords);
        let mut two_indices = Vec::new();
        for i in 0..k {
            let d = if i < snf.rank {
                snf.diag[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d == BigInt::from(2) {
                two_indices.push(i);
            } else {
                debug_assert!(
                    d.is_one(),
                    "invariant factor not in {{1,2}}: quotient has odd torsion"
                );
            }
        }
        // change = left transform: class of c ∈ ℤᵏ is (left·c) mod d_i.
        let change = snf.left.clone();
        // Representatives: kernel · change⁻¹ · e_i for each 2-index; solved
        // column by column to avoid a matrix inverse.
        let mut coset_reps = Vec::with_capacity(two_indices.len());
        for &idx in &two_indices {
            let mut e = vec![BigInt::zero(); k];
            e[idx] = BigInt::one();
            let c = lattice_solve(&change, &e).expect("unimodular solve cannot fail");
            coset_reps.push(kernel.apply(&c));
        }
        ElementaryTwoGroup {
            rank: two_indices.len(),
            coset_reps,
            kernel,
            change,
            two_indices,
        }
    }

    /// Number of ℤ₂-factors; the group has `2^rank` elements.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Lattice vectors whose classes form a ℤ₂-basis of the group.
    pub fn coset_reps(&self) -> &[Vec<BigInt>] {
        &self.coset_reps
    }

    /// ℤ₂-coordinates of the class of `v`; `None` when `v` is not in the
    /// ambient kernel.
    pub fn reduce(&self, v: &[BigInt]) -> Option<Vec<u8>> {
        let coords = lattice_solve(&self.kernel, v)?;
        let changed = self.change.apply(&coords);
        Some(
            self.two_indices
                .iter()
                .map(|&i| (changed[i].mod_floor(&BigInt::from(2)) == BigInt::one()) as u8)
                .collect(),
        )
    }

    /// Canonical representative of the class with ℤ₂-coordinates `bits`:
    /// the sum of the chosen coset representatives.
    pub fn rep_from_bits(&self, bits: &[u8]) -> Vec<BigInt> {
        assert_eq!(bits.len(), self.rank);
        let n = self.kernel.rows();
        let mut v = vec![BigInt::zero(); n];
        for (rep, &b) in self.coset_reps.iter().zip(bits) {
            if b & 1 == 1 {
                for (vi, ri) in v.iter_mut().zip(rep) {
                    *vi += ri;
                }
            }
        }
        v
    }
}

/// `H¹ = ker(id+τ)/im(id−τ)`, indexing the connected components of the
/// fixed locus of the involution induced on the torus.
pub fn tate_h1(tau: &IntMat) -> Result<ElementaryTwoGroup> {
    ensure_involution(tau)?;
    let id = IntMat::identity(tau.rows());
    Ok(ElementaryTwoGroup::from_kernel_mod_image(
        &(&id + tau),
        &(&id - tau),
    ))
}

/// `H² = ker(id−τ)/im(id+τ)`, the obstruction-style quotient.
pub fn tate_h2(tau: &IntMat) -> Result<ElementaryTwoGroup> {
    ensure_involution(tau)?;
    let id = IntMat::identity(tau.rows());
    Ok(ElementaryTwoGroup::from_kernel_mod_image(
        &(&id - tau),
        &(&id + tau),
    ))
}

/// Gaussian elimination over ℤ₂ with deterministic (first-hit) pivoting.
///
/// Solves `M·x = rhs` for 0/1 vectors; returns `None` when inconsistent.
/// When the system is underdetermined the free variables are set to 0.
#[allow(clippy::needless_range_loop)]
pub fn solve_gf2(m: &[Vec<u8>], rhs: &[u8]) -> Option<Vec<u8>> {
    let rows = m.len();
    assert_eq!(rows, rhs.len());
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x & 1).collect())
        .collect();
    let mut b: Vec<u8> = rhs.iter().map(|&x| x & 1).collect();

    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                for j in 0..cols {
                    a[i][j] ^= a[r][j];
                }
                b[i] ^= b[r];
            }
        }
        pivot_of_col[c] = r;
        r += 1;
        if r == rows {
            break;
        }
    }
    // Rows reduced to zero must have zero right-hand side.
    for i in 0..rows {
        if a[i].iter().all(|&x| x == 0) && b[i] == 1 {
            return None;
        }
    }
    let mut x = vec![0u8; cols];
    for c in 0..cols {
        if pivot_of_col[c] != usize::MAX {
            x[c] = b[pivot_of_col[c]];
        }
    }
    Some(x)
}

/// Rank of a 0/1 matrix over ℤ₂.
#[allow(clippy::needless_range_loop)]
pub fn rank_gf2(m: &[Vec<u8>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x & 1).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && a[i][c] == 1 {
                for j in 0..cols {
                    a[i][j] ^= a[rank][j];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
