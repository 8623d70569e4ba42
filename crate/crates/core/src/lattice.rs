//! Exact integer and rational linear algebra over `N ≅ Z^n`.
//!
//! Everything here works with unbounded integers and rationals. Matrices are
//! small (a few dozen rows at most), so the algorithms are the plain textbook
//! ones: Smith normal form by elementary operations, Bareiss determinants and
//! Gauss-Jordan elimination over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &Integer) -> Rational {
    BigRational::from_integer(n.clone())
}

/// A point of the ambient lattice `N ≅ Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Integer>);

impl LatticeVector {
    pub fn new(coords: Vec<Integer>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![Integer::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Integer::one();
        v
    }

    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Integer> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> Integer {
        self.0.iter().fold(Integer::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(rat_int).collect()
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Integer) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Pairing `⟨m, v⟩` of a rational covector with a lattice point.
pub fn pair(m: &[Rational], v: &LatticeVector) -> Rational {
    m.iter()
        .zip(v.coords())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Returns `v / gcd(v)`.
pub fn primitivize(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Clears denominators of a rational vector and divides by the content,
/// keeping the direction.
pub fn primitive_integer_direction(v: &[Rational]) -> Result<LatticeVector> {
    let l = v
        .iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = LatticeVector(v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect());
    primitivize(&scaled)
}

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: Vec<Vec<Integer>>,
    cols: usize,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<Vec<Integer>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::NotRectangular);
        }
        Ok(IntegerMatrix { rows, cols })
    }

    /// Matrix with the given number of columns; `rows` may be empty.
    pub fn with_cols(rows: Vec<Vec<Integer>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::NotRectangular);
        }
        Ok(IntegerMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_vectors(vectors: &[LatticeVector], cols: usize) -> Result<Self> {
        Self::with_cols(vectors.iter().map(|v| v.coords().to_vec()).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Integer::one() } else { Integer::zero() })
                    .collect()
            })
            .collect();
        IntegerMatrix { rows, cols: n }
    }

    pub fn diagonal(entries: &[Integer], nrows: usize, ncols: usize) -> Self {
        let mut rows = vec![vec![Integer::zero(); ncols]; nrows];
        for (i, e) in entries.iter().enumerate() {
            rows[i][i] = e.clone();
        }
        IntegerMatrix { rows, cols: ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.rows[i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntegerMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(Integer::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        Ok(IntegerMatrix {
            rows,
            cols: other.cols,
        })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector(
            (0..self.cols)
                .map(|j| {
                    v.coords()
                        .iter()
                        .zip(&self.rows)
                        .fold(Integer::zero(), |acc, (a, r)| acc + a * &r[j])
                })
                .collect(),
        )
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(rat_int).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    /// row[target] += k * row[source]
    fn add_row(&mut self, target: usize, source: usize, k: &Integer) {
        let src = self.rows[source].clone();
        for (t, s) in self.rows[target].iter_mut().zip(&src) {
            *t += k * s;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, k: &Integer) {
        for r in &mut self.rows {
            let s = r[source].clone();
            r[target] += k * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.rows[i] {
            *x = -x.clone();
        }
    }
}

/// `left · A · right = diag(diag)` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntegerMatrix,
    pub diag: Vec<Integer>,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(&self.diag, self.left.nrows(), self.right.ncols())
    }
}

fn min_abs_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let x = &a.rows[i][j];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.rows[bi][bj].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with transforms, pivoting on the smallest nonzero entry.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut left = IntegerMatrix::identity(m);
    let mut right = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_abs_nonzero(&d, t) {
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = d.rows[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = &d.rows[i][t] / &pivot;
                if !q.is_zero() {
                    d.add_row(i, t, &-q.clone());
                    left.add_row(i, t, &-q);
                }
                if !d.rows[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = &d.rows[t][j] / &pivot;
                if !q.is_zero() {
                    d.add_col(j, t, &-q.clone());
                    right.add_col(j, t, &-q);
                }
                if !d.rows[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&d.rows[i][j] % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    d.add_row(t, i, &Integer::one());
                    left.add_row(t, i, &Integer::one());
                }
                None => break,
            }
        }
        if d.rows.get(t).is_some_and(|r| r[t].is_negative()) {
            d.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..m.min(n)).map(|i| d.rows[i][i].clone()).collect();
    SmithDecomposition { left, diag, right }
}

/// Fraction-free determinant (Bareiss).
pub fn determinant(a: &IntegerMatrix) -> Result<Integer> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(Integer::one());
    }
    let mut m = a.rows.clone();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Integer::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Index of the subgroup generated by the rows inside the saturated lattice
/// of their span.
pub fn sublattice_index(generators: &IntegerMatrix) -> Result<Integer> {
    let snf = smith_normal_form(generators);
    if snf.rank() != generators.nrows() {
        return Err(Error::DependentGenerators);
    }
    Ok(snf
        .diag
        .iter()
        .filter(|d| !d.is_zero())
        .fold(Integer::one(), |acc, d| acc * d))
}

/// Index of the sublattice generated by `vectors` in its saturation.
pub fn vectors_index(vectors: &[LatticeVector]) -> Result<Integer> {
    if vectors.is_empty() {
        return Ok(Integer::one());
    }
    let dim = vectors[0].dim();
    sublattice_index(&IntegerMatrix::from_vectors(vectors, dim)?)
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
pub fn rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(a: &[Vec<Rational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

pub fn rank_vectors(vectors: &[LatticeVector]) -> usize {
    let m: Vec<Vec<Rational>> = vectors.iter().map(LatticeVector::to_rational).collect();
    rank_q(&m)
}

/// Basis of `{x : A x = 0}` for an `m × ncols` matrix. Each basis vector is
/// scaled so that its first nonzero entry is 1.
pub fn nullspace_q(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            let lead = x.iter().find(|v| !v.is_zero()).cloned().unwrap();
            x.iter().map(|v| v / &lead).collect()
        })
        .collect()
}

/// Outcome of [`solve_rational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSolution {
    Inconsistent,
    Solved {
        /// Particular solution with every free variable set to zero.
        solution: Vec<Rational>,
        null_basis: Vec<Vec<Rational>>,
    },
}

impl RationalSolution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            RationalSolution::Inconsistent => None,
            RationalSolution::Solved { solution, .. } => Some(solution),
        }
    }
}

pub fn solve_q(a: &[Vec<Rational>], ncols: usize, b: &[Rational]) -> RationalSolution {
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return RationalSolution::Inconsistent;
    }
    let mut solution = vec![Rational::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        solution[p] = aug[r][ncols].clone();
    }
    RationalSolution::Solved {
        solution,
        null_basis: nullspace_q(a, ncols),
    }
}

/// Solves `A x = b` exactly.
pub fn solve_rational(a: &IntegerMatrix, b: &[Rational]) -> Result<RationalSolution> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    Ok(solve_q(&a.to_rational(), a.ncols(), b))
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse_q(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The quotient `N / (V ∩ N)` for the rational span `V` of some lattice
/// vectors, realized as `Z^k` through the Smith normal form.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ambient_dim: usize,
    /// `n × k` matrix; a point `x` maps to `x · projection`.
    projection: IntegerMatrix,
    /// Lattice basis of the saturated subspace `V ∩ N`.
    kernel_basis: Vec<LatticeVector>,
    /// Lifts of the standard basis of `Z^k`.
    section: Vec<LatticeVector>,
}

impl LatticeQuotient {
    pub fn new(ambient_dim: usize, generators: &[LatticeVector]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: g.dim(),
            });
        }
        let g = IntegerMatrix::from_vectors(generators, ambient_dim)?;
        let snf = smith_normal_form(&g);
        let r = snf.rank();
        let right = snf.right;
        let inv = inverse_q(&right.to_rational()).expect("unimodular transform");
        let basis: Vec<LatticeVector> = inv
            .iter()
            .map(|row| LatticeVector(row.iter().map(|x| x.to_integer()).collect()))
            .collect();
        let projection = IntegerMatrix::with_cols(
            right.rows().iter().map(|row| row[r..].to_vec()).collect(),
            ambient_dim - r,
        )?;
        Ok(LatticeQuotient {
            ambient_dim,
            projection,
            kernel_basis: basis[..r].to_vec(),
            section: basis[r..].to_vec(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.section.len()
    }

    pub fn project(&self, v: &LatticeVector) -> LatticeVector {
        self.projection.apply_row(v)
    }

    pub fn kernel_basis(&self) -> &[LatticeVector] {
        &self.kernel_basis
    }

    pub fn section(&self) -> &[LatticeVector] {
        &self.section
    }
}
