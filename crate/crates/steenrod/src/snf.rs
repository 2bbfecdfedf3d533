//! Smith normal form and the exact solvers built on it.
//!
//! The decomposition `u * a * v = s` with unimodular `u`, `v` and diagonal
//! `s` whose entries form a divisibility chain is the single primitive
//! everything else reduces to: ranks, kernels, integral and modular linear
//! solving, cokernel presentations.
//!
//! Pivoting is deterministic: the surviving submatrix entry of minimal
//! absolute value wins, ties broken by lowest row then lowest column index.
//! This makes every downstream basis canonical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, MatrixError};
use crate::matrix::IntMatrix;
use crate::ring::RingSpec;

/// Smith decomposition of a matrix `a`: `u * a * v = s`.
///
/// The inverses of the transforms are tracked during the elimination, so no
/// separate inversion step (and no extra precision loss surface) exists.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Left unimodular transform, `rows x rows`.
    pub u: IntMatrix,
    /// The diagonal form, same shape as the input.
    pub s: IntMatrix,
    /// Right unimodular transform, `cols x cols`.
    pub v: IntMatrix,
    /// Inverse of `u`, maintained alongside the elimination.
    pub u_inv: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
    /// The nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// The rank of the input matrix (over `Z`, equivalently over `Q`).
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Rank of the input over `F_p`: the count of invariant factors not
    /// divisible by `p` (the transforms stay invertible mod `p`).
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|d| !(*d % &p).is_zero())
            .count()
    }
}

/// Computes the Smith normal form. Total on every matrix, including ones
/// with zero rows or columns.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = minimal_pivot(&s, k) else {
            break;
        };
        swap_rows(&mut s, &mut u, &mut u_inv, k, pi);
        swap_cols(&mut s, &mut v, &mut v_inv, k, pj);
        if s[(k, k)].is_negative() {
            negate_row(&mut s, &mut u, &mut u_inv, k);
        }

        let mut settled = false;
        while !settled {
            settled = true;
            // Clear column k with floored quotients; a nonzero remainder is
            // strictly smaller than the pivot and becomes the next pivot.
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = s[(i, k)].div_floor(&s[(k, k)]);
                add_row(&mut s, &mut u, &mut u_inv, i, k, &-q);
                if !s[(i, k)].is_zero() {
                    swap_rows(&mut s, &mut u, &mut u_inv, k, i);
                    settled = false;
                }
            }
            if !settled {
                continue;
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = s[(k, j)].div_floor(&s[(k, k)]);
                add_col(&mut s, &mut v, &mut v_inv, j, k, &-q);
                if !s[(k, j)].is_zero() {
                    swap_cols(&mut s, &mut v, &mut v_inv, k, j);
                    settled = false;
                }
            }
            if !settled {
                continue;
            }
            // Row and column are clear; force the divisibility chain. Pulling
            // an offending row up re-enters the reduction with a strictly
            // smaller pivot, so this terminates.
            'chain: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&s[(i, j)] % &s[(k, k)]).is_zero() {
                        add_row(&mut s, &mut u, &mut u_inv, k, i, &BigInt::one());
                        settled = false;
                        break 'chain;
                    }
                }
            }
        }
        k += 1;
    }

    let invariant_factors = (0..rows.min(cols))
        .map(|i| s[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect();

    SnfResult {
        u,
        s,
        v,
        u_inv,
        v_inv,
        invariant_factors,
    }
}

fn minimal_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let e = &s[(i, j)];
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            match &best {
                Some((_, _, cur)) if *cur <= mag => {}
                _ => best = Some((i, j, mag)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    s.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize) {
    s.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
}

/// row[target] += q * row[source], with the inverse updated as col[source] -= q * col[target].
fn add_row(
    s: &mut IntMatrix,
    u: &mut IntMatrix,
    u_inv: &mut IntMatrix,
    target: usize,
    source: usize,
    q: &BigInt,
) {
    s.add_row_multiple(target, source, q);
    u.add_row_multiple(target, source, q);
    u_inv.add_col_multiple(source, target, &-q);
}

fn add_col(
    s: &mut IntMatrix,
    v: &mut IntMatrix,
    v_inv: &mut IntMatrix,
    target: usize,
    source: usize,
    q: &BigInt,
) {
    s.add_col_multiple(target, source, q);
    v.add_col_multiple(target, source, q);
    v_inv.add_row_multiple(source, target, &-q);
}

/// A solution of `a * x = b` over a ring, kept in exact integers.
///
/// Over `Z` and the modular rings the denominator is 1. Over `Q` the vector
/// `numerators / denominator` solves the system; the denominator is positive
/// and minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl Solution {
    pub fn integral(numerators: Vec<BigInt>) -> Self {
        Solution {
            numerators,
            denominator: BigInt::one(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }
}

/// Solves `a * x = b` over the given ring, or reports definite unsolvability.
///
/// Over `Z` the answer is decided by the Smith form: the transformed right
/// hand side must be divisible entrywise by the invariant factors and vanish
/// beyond the rank. Over `Z/m` and `F_p` the system is lifted to `Z` with
/// `m * I` adjoined. Over `Q` the same Smith data decides solvability and a
/// common denominator is cleared.
pub fn solve(
    a: &IntMatrix,
    b: &[BigInt],
    ring: RingSpec,
) -> Result<Option<Solution>, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::Matrix(MatrixError::Incompatible {
            left: (a.rows(), a.cols()),
            right: (b.len(), 1),
        }));
    }
    let rhs = IntMatrix::column(b);
    match ring {
        RingSpec::Integers => {
            Ok(solve_integral_matrix(&snf(a), &rhs).map(|m| Solution::integral(m.column_vec(0))))
        }
        RingSpec::Rationals => Ok(solve_rational(&snf(a), &rhs)),
        RingSpec::PrimeField(m) | RingSpec::ModRing(m) => {
            Ok(solve_mod_matrix(a, &rhs, m).map(|x| Solution::integral(x.column_vec(0))))
        }
    }
}

/// Integral solve with a matrix right hand side: finds `x` with `a * x = b`
/// column by column, or `None` if some column has no integral solution.
pub(crate) fn solve_integral_matrix(decomp: &SnfResult, b: &IntMatrix) -> Option<IntMatrix> {
    let rows = decomp.s.rows();
    let cols = decomp.s.cols();
    debug_assert_eq!(b.rows(), rows);
    let c = decomp.u.mul(b).expect("shape checked");
    let r = decomp.rank();
    let mut y = IntMatrix::zeros(cols, b.cols());
    for col in 0..b.cols() {
        for i in 0..rows {
            if i < r {
                let d = &decomp.invariant_factors[i];
                let (q, rem) = c[(i, col)].div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, col)] = q;
            } else if !c[(i, col)].is_zero() {
                return None;
            }
        }
    }
    Some(decomp.v.mul(&y).expect("shape checked"))
}

/// Solves `a * x = b (mod m)` by adjoining `m * I` and solving over `Z`.
/// The returned entries are canonical residues in `[0, m)`.
pub(crate) fn solve_mod_matrix(a: &IntMatrix, b: &IntMatrix, m: u64) -> Option<IntMatrix> {
    let lifted = a
        .hstack(&IntMatrix::scalar(a.rows(), m))
        .expect("rows agree");
    let x = solve_integral_matrix(&snf(&lifted), b)?;
    let ring = RingSpec::ModRing(m.max(2));
    Some(x.top_rows(a.cols()).reduced(ring))
}

fn solve_rational(decomp: &SnfResult, b: &IntMatrix) -> Option<Solution> {
    let rows = decomp.s.rows();
    let c = decomp.u.mul(b).expect("shape checked");
    let r = decomp.rank();
    for i in r..rows {
        if !c[(i, 0)].is_zero() {
            return None;
        }
    }
    // Common denominator = lcm of the invariant factors' uncancelled parts.
    let mut den = BigInt::one();
    for i in 0..r {
        let d = &decomp.invariant_factors[i];
        let g = c[(i, 0)].gcd(d);
        den = den.lcm(&(d / g));
    }
    let mut y = IntMatrix::zeros(decomp.s.cols(), 1);
    for i in 0..r {
        let d = &decomp.invariant_factors[i];
        y[(i, 0)] = &c[(i, 0)] * &den / d;
    }
    let x = decomp.v.mul(&y).expect("shape checked");
    Some(Solution {
        numerators: x.column_vec(0),
        denominator: den,
    })
}

/// A basis (over `Z`: of the kernel lattice; over `Q`/`F_p`: of the kernel
/// space; over `Z/m`: a generating set, zero columns dropped) of
/// `{x : a x = 0}` over the ring.
pub fn kernel_basis(a: &IntMatrix, ring: RingSpec) -> IntMatrix {
    match ring {
        RingSpec::Integers | RingSpec::Rationals => kernel_lattice(&snf(a)),
        RingSpec::PrimeField(p) => {
            let decomp = snf(a);
            let p_big = BigInt::from(p);
            let keep: Vec<usize> = (0..a.cols())
                .filter(|&j| {
                    j >= decomp.rank() || (&decomp.invariant_factors[j] % &p_big).is_zero()
                })
                .collect();
            decomp.v.select_columns(&keep).reduced(ring)
        }
        RingSpec::ModRing(m) => {
            let full = kernel_lattice_mod(a, m);
            let reduced = full.reduced(ring);
            let keep: Vec<usize> = (0..reduced.cols())
                .filter(|&j| (0..reduced.rows()).any(|i| !reduced[(i, j)].is_zero()))
                .collect();
            reduced.select_columns(&keep)
        }
    }
}

/// Basis of the integer kernel lattice, as columns.
pub(crate) fn kernel_lattice(decomp: &SnfResult) -> IntMatrix {
    let r = decomp.rank();
    let cols = decomp.v.cols();
    let keep: Vec<usize> = (r..cols).collect();
    decomp.v.select_columns(&keep)
}

/// Basis of the lattice `{x in Z^n : a x = 0 mod m}`. Always square of full
/// rank `n` since it contains `m Z^n`.
pub(crate) fn kernel_lattice_mod(a: &IntMatrix, m: u64) -> IntMatrix {
    let lifted = a
        .hstack(&IntMatrix::scalar(a.rows(), m))
        .expect("rows agree");
    let full = kernel_lattice(&snf(&lifted));
    debug_assert_eq!(full.cols(), a.cols());
    full.top_rows(a.cols())
}

/// Rank of `a` over the ring (fields and `Z`; not defined for `Z/m`).
pub(crate) fn rank_over(a: &IntMatrix, ring: RingSpec) -> usize {
    let decomp = snf(a);
    match ring {
        RingSpec::Integers | RingSpec::Rationals => decomp.rank(),
        RingSpec::PrimeField(p) => decomp.rank_mod(p),
        RingSpec::ModRing(_) => unreachable!("rank is not defined over Z/m"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(a: &IntMatrix) {
        let d = snf(a);
        // u a v = s
        let lhs = d.u.mul(a).unwrap().mul(&d.v).unwrap();
        assert_eq!(lhs, d.s, "u a v != s");
        // unimodularity, via the independent Bareiss determinant
        assert!(d.u.is_unimodular(), "u not unimodular");
        assert!(d.v.is_unimodular(), "v not unimodular");
        // tracked inverses are actual inverses
        assert_eq!(d.u.mul(&d.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        // diagonal with divisibility chain
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero(), "off-diagonal junk");
                }
            }
        }
        for w in d.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain broken");
        }
        for f in &d.invariant_factors {
            assert!(f.is_positive());
        }
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::from_rows(&[vec![0]]);
        let d = snf(&a);
        assert_eq!(d.s, IntMatrix::from_rows(&[vec![0]]));
        assert!(d.invariant_factors.is_empty());
        check_contract(&a);
    }

    #[test]
    fn identity_three() {
        let a = IntMatrix::identity(3);
        let d = snf(&a);
        assert_eq!(
            d.invariant_factors,
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        check_contract(&a);
    }

    #[test]
    fn two_four_six_eight() {
        // By hand: d_1 = gcd of entries = 2, d_1 d_2 = |det| = |16 - 24| = 8.
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let d = snf(&a);
        assert_eq!(d.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
        check_contract(&a);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zeros(r, c);
            let d = snf(&a);
            assert!(d.invariant_factors.is_empty());
            check_contract(&a);
        }
    }

    #[test]
    fn storage_independent_canonical_form() {
        // Same matrix entered in different row orders still gives the same
        // invariant factors (canonicality of the form itself).
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let b = IntMatrix::from_rows(&[vec![6, 8], vec![2, 4]]);
        assert_eq!(snf(&a).invariant_factors, snf(&b).invariant_factors);
    }

    #[test]
    fn solve_identity() {
        let a = IntMatrix::identity(3);
        let b = [BigInt::from(5), BigInt::from(-7), BigInt::from(0)];
        let x = solve(&a, &b, RingSpec::Integers).unwrap().unwrap();
        assert_eq!(x.numerators, b.to_vec());
        assert!(x.is_integral());
    }

    #[test]
    fn solve_parity_obstruction() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let b = [BigInt::from(3)];
        assert!(solve(&a, &b, RingSpec::Integers).unwrap().is_none());
        // 2 * 4 = 8 = 3 mod 5
        let x = solve(&a, &b, RingSpec::ModRing(5)).unwrap().unwrap();
        assert_eq!(x.numerators, vec![BigInt::from(4)]);
        // over Q: x = 3/2
        let x = solve(&a, &b, RingSpec::Rationals).unwrap().unwrap();
        assert_eq!(x.numerators, vec![BigInt::from(3)]);
        assert_eq!(x.denominator, BigInt::from(2));
    }

    #[test]
    fn solve_certificate() {
        // returning Some(x) must mean a x = b exactly
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let b = [BigInt::from(6), BigInt::from(14)];
        let x = solve(&a, &b, RingSpec::Integers).unwrap().unwrap();
        let prod = a.mul(&IntMatrix::column(&x.numerators)).unwrap();
        assert_eq!(prod.column_vec(0), b.to_vec());
    }

    #[test]
    fn solve_dimension_error() {
        let a = IntMatrix::identity(2);
        let b = [BigInt::from(1)];
        assert!(solve(&a, &b, RingSpec::Integers).is_err());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let a = IntMatrix::identity(4);
        let k = kernel_basis(&a, RingSpec::Integers);
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_of_sum_map() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]);
        let k = kernel_basis(&a, RingSpec::Integers);
        assert_eq!(k.cols(), 1);
        let col = k.column_vec(0);
        // (1, -1) up to sign
        assert_eq!(&col[0] + &col[1], BigInt::from(0));
        assert_eq!(col[0].abs(), BigInt::from(1));
    }

    #[test]
    fn kernel_mod_m_generators() {
        // kernel of [2] over Z/4 is generated by 2
        let a = IntMatrix::from_rows(&[vec![2]]);
        let k = kernel_basis(&a, RingSpec::ModRing(4));
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)], BigInt::from(2));
    }

    #[test]
    fn kernel_counts_match_rank() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let d = snf(&a);
        assert_eq!(d.rank(), 1);
        let k = kernel_basis(&a, RingSpec::Integers);
        assert_eq!(k.cols(), 3 - 1);
        let prod = a.mul(&k).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn rank_mod_p_drops() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let d = snf(&a);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.rank_mod(2), 1);
        assert_eq!(d.rank_mod(3), 1);
        assert_eq!(d.rank_mod(5), 2);
    }
}
