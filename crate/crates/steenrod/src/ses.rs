//! Short exact sequences of complexes, the connecting homomorphism, and
//! certified long exact sequences.
//!
//! A [`ShortExactSeqOfComplexes`] is certified degreewise on construction:
//! the inclusion must be injective, the projection surjective, and the
//! kernel of the projection must equal the image of the inclusion: the
//! latter by lattice membership, not rank counting. The connecting
//! homomorphism is computed by the snake lemma: lift a cycle through the
//! projection, differentiate, pull back through the inclusion. Every long
//! exact sequence carries an exactness certificate at every term before it
//! is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{ChainComplex, ChainMap};
use crate::error::SequenceError;
use crate::homology::{homology, induced_map, GradedModule};
use crate::matrix::IntMatrix;
use crate::module::{is_exact_at, FgModule, ModuleMap};
use crate::ring::RingSpec;
use crate::snf::{self, snf};

/// `0 -> left -> middle -> right -> 0`, exact in every degree.
#[derive(Debug, Clone)]
pub struct ShortExactSeqOfComplexes {
    inclusion: ChainMap,
    projection: ChainMap,
}

impl ShortExactSeqOfComplexes {
    /// Validates the composable shapes and certifies degreewise exactness
    /// over the common ring.
    pub fn new(inclusion: ChainMap, projection: ChainMap) -> Result<Self, SequenceError> {
        if inclusion.target() != projection.source() {
            return Err(SequenceError::Complex(
                crate::error::ComplexError::RingMismatch(inclusion.ring(), projection.ring()),
            ));
        }
        let ses = ShortExactSeqOfComplexes {
            inclusion,
            projection,
        };
        ses.certify()?;
        Ok(ses)
    }

    pub fn left(&self) -> &ChainComplex {
        self.inclusion.source()
    }

    pub fn middle(&self) -> &ChainComplex {
        self.inclusion.target()
    }

    pub fn right(&self) -> &ChainComplex {
        self.projection.target()
    }

    pub fn inclusion(&self) -> &ChainMap {
        &self.inclusion
    }

    pub fn projection(&self) -> &ChainMap {
        &self.projection
    }

    pub fn ring(&self) -> RingSpec {
        self.inclusion.ring()
    }

    fn certify(&self) -> Result<(), SequenceError> {
        let ring = self.ring();
        let top = self
            .left()
            .len()
            .max(self.middle().len())
            .max(self.right().len());
        for n in 0..top {
            let incl = self.inclusion.component(n);
            let proj = self.projection.component(n);
            if !is_injective(&incl, ring) {
                return Err(SequenceError::NotInjective { degree: n, ring });
            }
            if !is_surjective(&proj, ring) {
                return Err(SequenceError::NotSurjective { degree: n, ring });
            }
            let composite = proj.mul(&incl).expect("shapes agree");
            if !composite.is_zero_over(ring) {
                return Err(SequenceError::CompositeNonzero { degree: n });
            }
            // kernel of the projection must land in the image of the
            // inclusion; the reverse inclusion is the zero composite above
            let kernel = snf::kernel_basis(&proj, ring);
            for j in 0..kernel.cols() {
                let col = kernel.column_vec(j);
                if lift(&incl, &col, ring).is_none() {
                    return Err(SequenceError::MiddleNotExact { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Homology of all three complexes, computed once for reuse.
    pub fn homology(&self) -> SesHomology {
        SesHomology {
            left: homology(self.left()),
            middle: homology(self.middle()),
            right: homology(self.right()),
        }
    }
}

/// The three homology computations of a short exact sequence.
#[derive(Debug, Clone)]
pub struct SesHomology {
    pub left: GradedModule,
    pub middle: GradedModule,
    pub right: GradedModule,
}

fn is_injective(a: &IntMatrix, ring: RingSpec) -> bool {
    match ring {
        RingSpec::Integers | RingSpec::Rationals => snf(a).rank() == a.cols(),
        RingSpec::PrimeField(p) => snf(a).rank_mod(p) == a.cols(),
        RingSpec::ModRing(_) => snf::kernel_basis(a, ring).cols() == 0,
    }
}

fn is_surjective(a: &IntMatrix, ring: RingSpec) -> bool {
    match ring {
        RingSpec::Integers => {
            let d = snf(a);
            d.rank() == a.rows() && d.invariant_factors.iter().all(One::is_one)
        }
        RingSpec::Rationals => snf(a).rank() == a.rows(),
        RingSpec::PrimeField(p) => snf(a).rank_mod(p) == a.rows(),
        RingSpec::ModRing(m) => {
            let lifted = a
                .hstack(&IntMatrix::scalar(a.rows(), m))
                .expect("rows agree");
            let d = snf(&lifted);
            d.rank() == a.rows() && d.invariant_factors.iter().all(One::is_one)
        }
    }
}

/// Ring-appropriate preimage: integral over `Z` and `Q`, lifted over `Z/m`.
fn lift(a: &IntMatrix, b: &[BigInt], ring: RingSpec) -> Option<Vec<BigInt>> {
    let rhs = IntMatrix::column(b);
    match ring {
        RingSpec::Integers | RingSpec::Rationals => {
            snf::solve_integral_matrix(&snf(a), &rhs).map(|m| m.column_vec(0))
        }
        RingSpec::PrimeField(m) | RingSpec::ModRing(m) => {
            snf::solve_mod_matrix(a, &rhs, m).map(|m| m.column_vec(0))
        }
    }
}

/// Preimage over `Q` with an explicit scale: returns `(x, t)` with
/// `a x = t b`, `t` positive and minimal. Over the other rings `t = 1`.
fn lift_scaled(a: &IntMatrix, b: &[BigInt], ring: RingSpec) -> Option<(Vec<BigInt>, BigInt)> {
    if let Some(x) = lift(a, b, ring) {
        return Some((x, BigInt::one()));
    }
    if ring != RingSpec::Rationals {
        return None;
    }
    let solution = crate::snf::solve(a, b, ring).ok()??;
    Some((solution.numerators, solution.denominator))
}

/// The snake-lemma connecting homomorphism `H_n(right) -> H_{n-1}(left)`.
///
/// Scales are tracked so that a rational lift (possible only over `Q`)
/// still yields exact integer coordinates; a connecting matrix that fails
/// to be integral in the canonical bases cannot be represented and is
/// reported as a failed lift.
pub fn connecting_homomorphism(
    s: &ShortExactSeqOfComplexes,
    h: &SesHomology,
    n: usize,
) -> Result<ModuleMap, SequenceError> {
    connecting_with_offsets(s, h, n, &[])
}

/// Connecting homomorphism with deliberately perturbed lifts: offset `j`
/// (coordinates in `left_n`, plus a multiple of the modulus over `Z/m`) is
/// added to the lift of generator `j`. Used to verify independence of the
/// lift choice; the empty slice keeps the canonical lifts.
pub(crate) fn connecting_with_offsets(
    s: &ShortExactSeqOfComplexes,
    h: &SesHomology,
    n: usize,
    offsets: &[(Vec<BigInt>, Vec<BigInt>)],
) -> Result<ModuleMap, SequenceError> {
    let ring = s.ring();
    let source = h.right.module(n);
    let target = if n == 0 {
        FgModule::zero(ring)
    } else {
        h.left.module(n - 1)
    };
    if n == 0 || source.is_zero() {
        return Ok(ModuleMap::zero(&source, &target));
    }
    let proj_n = s.projection.component(n);
    let incl_n1 = s.inclusion.component(n - 1);
    let d_mid = s.middle().differential(n);
    let incl_n = s.inclusion.component(n);

    let reps = h.right.representatives(n);
    let mut columns = Vec::with_capacity(reps.cols());
    for j in 0..reps.cols() {
        let z = reps.column_vec(j);
        let (mut x, scale_x) =
            lift_scaled(&proj_n, &z, ring).ok_or(SequenceError::LiftFailed { degree: n })?;
        if let Some((left_offset, middle_offset)) = offsets.get(j) {
            // any valid lift differs by an element of the image of the
            // inclusion (plus a multiple of the modulus over Z/m)
            let shifted = incl_n
                .mul(&IntMatrix::column(left_offset))
                .expect("offset length");
            for (xi, si) in x.iter_mut().zip(shifted.column_vec(0)) {
                *xi += si;
            }
            if let Some(m) = ring.modulus() {
                for (xi, wi) in x.iter_mut().zip(middle_offset) {
                    *xi += BigInt::from(m) * wi;
                }
            }
        }
        let w = d_mid.mul(&IntMatrix::column(&x)).expect("shapes agree");
        let (y, scale_y) = lift_scaled(&incl_n1, &w.column_vec(0), ring)
            .ok_or(SequenceError::LiftFailed { degree: n })?;
        let mut coords = h.left.class_coordinates(n - 1, &y)?;
        let scale = scale_x * scale_y;
        if !scale.is_one() {
            for c in coords.iter_mut() {
                let (q, r) = c.div_rem(&scale);
                if !r.is_zero() {
                    return Err(SequenceError::LiftFailed { degree: n });
                }
                *c = q;
            }
        }
        columns.push(coords);
    }
    let matrix = IntMatrix::from_columns(target.generator_count(), &columns);
    Ok(ModuleMap::new(source, target, matrix)?)
}

/// A long exact sequence: alternating modules and maps, each consecutive
/// composite zero and image = kernel certified at every interior term.
#[derive(Debug, Clone)]
pub struct LongExactSequence {
    ring: RingSpec,
    terms: Vec<FgModule>,
    maps: Vec<ModuleMap>,
    term_labels: Vec<String>,
    map_labels: Vec<String>,
}

impl LongExactSequence {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &[FgModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn term_labels(&self) -> &[String] {
        &self.term_labels
    }

    pub fn map_labels(&self) -> &[String] {
        &self.map_labels
    }

    /// Looks up a term by its label.
    pub fn term(&self, label: &str) -> Option<&FgModule> {
        self.term_labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.terms[i])
    }

    /// Looks up a map by its label.
    pub fn map(&self, label: &str) -> Option<&ModuleMap> {
        self.map_labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.maps[i])
    }

    /// Re-runs the full exactness certificate: zero composites and
    /// image = kernel at every term, the two ends checked against the zero
    /// module.
    pub fn certify(&self) -> Result<(), SequenceError> {
        let zero = FgModule::zero(self.ring);
        for i in 0..self.terms.len() {
            let incoming = if i == 0 {
                ModuleMap::zero(&zero, &self.terms[0])
            } else {
                self.maps[i - 1].clone()
            };
            let outgoing = if i + 1 == self.terms.len() {
                ModuleMap::zero(&self.terms[i], &zero)
            } else {
                self.maps[i].clone()
            };
            if !is_exact_at(&incoming, &outgoing) {
                return Err(SequenceError::NotExactAt {
                    index: i,
                    label: self.term_labels[i].clone(),
                });
            }
        }
        Ok(())
    }
}

/// Assembles the long exact sequence of a short exact sequence of
/// complexes, from `top_degree` down to degree zero, and certifies it.
///
/// The three complexes are labeled `left / middle / right`; see
/// [`les_from_ses_labeled`] to name them.
pub fn les_from_ses(
    s: &ShortExactSeqOfComplexes,
    top_degree: usize,
) -> Result<LongExactSequence, SequenceError> {
    les_from_ses_labeled(s, top_degree, ["left", "middle", "right"])
}

/// As [`les_from_ses`], with caller-supplied names for the three complexes
/// used in the term labels.
pub fn les_from_ses_labeled(
    s: &ShortExactSeqOfComplexes,
    top_degree: usize,
    names: [&str; 3],
) -> Result<LongExactSequence, SequenceError> {
    let h = s.homology();
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut term_labels = Vec::new();
    let mut map_labels = Vec::new();

    for n in (0..=top_degree).rev() {
        terms.push(h.left.module(n));
        term_labels.push(format!("H_{}({})", n, names[0]));
        maps.push(induced_map(s.inclusion(), &h.left, &h.middle, n)?);
        map_labels.push(format!("H_{}({}) -> H_{}({})", n, names[0], n, names[1]));

        terms.push(h.middle.module(n));
        term_labels.push(format!("H_{}({})", n, names[1]));
        maps.push(induced_map(s.projection(), &h.middle, &h.right, n)?);
        map_labels.push(format!("H_{}({}) -> H_{}({})", n, names[1], n, names[2]));

        terms.push(h.right.module(n));
        term_labels.push(format!("H_{}({})", n, names[2]));
        if n > 0 {
            maps.push(connecting_homomorphism(s, &h, n)?);
            map_labels.push(format!(
                "d: H_{}({}) -> H_{}({})",
                n,
                names[2],
                n - 1,
                names[0]
            ));
        }
    }

    let les = LongExactSequence {
        ring: s.ring(),
        terms,
        maps,
        term_labels,
        map_labels,
    };
    les.certify()?;
    Ok(les)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 0 -> C(S^0) -> C(D^1) -> C(D^1)/C(S^0) -> 0 by hand: the edge with
    /// its two endpoint vertices, relative to the endpoints.
    fn interval_pair() -> ShortExactSeqOfComplexes {
        let ring = RingSpec::Integers;
        // D^1: two vertices, one edge, d_1 = (-1, 1)^T
        let middle = ChainComplex::new(
            ring,
            vec![2, 1],
            vec![IntMatrix::from_rows(&[vec![-1], vec![1]])],
        )
        .unwrap();
        // S^0: the two vertices
        let left = ChainComplex::concentrated(ring, 2);
        // quotient: one generator in degree 1
        let right = ChainComplex::new(ring, vec![0, 1], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let inclusion =
            ChainMap::new(left.clone(), middle.clone(), vec![IntMatrix::identity(2)]).unwrap();
        let projection = ChainMap::new(
            middle,
            right,
            vec![IntMatrix::zeros(0, 2), IntMatrix::identity(1)],
        )
        .unwrap();
        ShortExactSeqOfComplexes::new(inclusion, projection).unwrap()
    }

    #[test]
    fn interval_rel_boundary_connecting_is_injective() {
        let s = interval_pair();
        let h = s.homology();
        // H_1(D^1, S^0) = Z
        assert_eq!(h.right.module(1), FgModule::free(RingSpec::Integers, 1));
        let d = connecting_homomorphism(&s, &h, 1).unwrap();
        // d : H_1(D^1, S^0) -> H_0(S^0) = Z^2 is injective (class of v1 - v0)
        assert!(!d.is_zero_map());
        let les = les_from_ses_labeled(&s, 2, ["S0", "D1", "(D1,S0)"]).unwrap();
        les.certify().unwrap();
        assert_eq!(
            les.term("H_1((D1,S0))"),
            Some(&FgModule::free(RingSpec::Integers, 1))
        );
    }

    #[test]
    fn connecting_is_independent_of_lift() {
        // Two vertices joined by parallel edges e, e'; the subcomplex keeps
        // e'. Lifting the relative class of e can be shifted by multiples of
        // e', which changes the chain-level answer by a boundary; the class
        // must not move.
        let ring = RingSpec::Integers;
        let middle = ChainComplex::new(
            ring,
            vec![2, 2],
            vec![IntMatrix::from_rows(&[vec![-1, -1], vec![1, 1]])],
        )
        .unwrap();
        let left = ChainComplex::new(
            ring,
            vec![2, 1],
            vec![IntMatrix::from_rows(&[vec![-1], vec![1]])],
        )
        .unwrap();
        let right = ChainComplex::new(ring, vec![0, 1], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let incl = ChainMap::new(
            left,
            middle.clone(),
            vec![
                IntMatrix::identity(2),
                IntMatrix::from_rows(&[vec![0], vec![1]]),
            ],
        )
        .unwrap();
        let proj = ChainMap::new(
            middle,
            right,
            vec![IntMatrix::zeros(0, 2), IntMatrix::from_rows(&[vec![1, 0]])],
        )
        .unwrap();
        let s = ShortExactSeqOfComplexes::new(incl, proj).unwrap();
        let h = s.homology();
        let canonical = connecting_homomorphism(&s, &h, 1).unwrap();
        for shift in [1i64, -4, 9] {
            let offsets = vec![(vec![BigInt::from(shift)], vec![BigInt::zero(); 2])];
            let perturbed = connecting_with_offsets(&s, &h, 1, &offsets).unwrap();
            assert_eq!(canonical, perturbed, "shift {shift}");
        }
        let les = les_from_ses(&s, 2).unwrap();
        les.certify().unwrap();
    }

    #[test]
    fn right_acyclic_gives_zero_connecting() {
        // 0 -> C --id--> C -> 0 -> 0
        let ring = RingSpec::Integers;
        let c = ChainComplex::new(ring, vec![1, 1], vec![IntMatrix::zeros(1, 1)]).unwrap();
        let zero = ChainComplex::new(ring, vec![0, 0], vec![IntMatrix::zeros(0, 0)]).unwrap();
        let incl = ChainMap::identity(&c);
        let proj = ChainMap::new(c.clone(), zero, vec![]).unwrap();
        let s = ShortExactSeqOfComplexes::new(incl, proj).unwrap();
        let h = s.homology();
        let d = connecting_homomorphism(&s, &h, 1).unwrap();
        assert!(d.is_zero_map());
        // the sequence degenerates to isomorphisms H_n(left) = H_n(middle)
        let les = les_from_ses(&s, 2).unwrap();
        les.certify().unwrap();
    }

    #[test]
    fn split_direct_sum_has_zero_connecting() {
        let ring = RingSpec::Integers;
        let a = ChainComplex::new(ring, vec![1, 1], vec![IntMatrix::zeros(1, 1)]).unwrap();
        let b = ChainComplex::concentrated(ring, 1);
        let (total, inclusions) = ChainComplex::direct_sum(&[&a, &b]).unwrap();
        // project onto b
        let proj_components = vec![IntMatrix::from_rows(&[vec![0, 1]]), IntMatrix::zeros(0, 1)];
        let proj = ChainMap::new(total.clone(), b, proj_components).unwrap();
        let s = ShortExactSeqOfComplexes::new(inclusions[0].clone(), proj).unwrap();
        let h = s.homology();
        for n in 0..=2 {
            assert!(connecting_homomorphism(&s, &h, n).unwrap().is_zero_map());
        }
        les_from_ses(&s, 2).unwrap();
    }

    #[test]
    fn non_exact_input_is_rejected() {
        let ring = RingSpec::Integers;
        let z = ChainComplex::concentrated(ring, 1);
        // "inclusion" multiplication by 2, "projection" identity: the
        // composite is nonzero
        let incl =
            ChainMap::new(z.clone(), z.clone(), vec![IntMatrix::from_rows(&[vec![2]])]).unwrap();
        let proj = ChainMap::identity(&z);
        assert!(matches!(
            ShortExactSeqOfComplexes::new(incl, proj),
            Err(SequenceError::CompositeNonzero { .. })
        ));
        // projection not surjective over Z
        let two =
            ChainMap::new(z.clone(), z.clone(), vec![IntMatrix::from_rows(&[vec![2]])]).unwrap();
        let from_zero = ChainMap::new(
            ChainComplex::concentrated(ring, 0),
            z.clone(),
            vec![IntMatrix::zeros(1, 0)],
        )
        .unwrap();
        assert!(matches!(
            ShortExactSeqOfComplexes::new(from_zero, two),
            Err(SequenceError::NotSurjective { .. })
        ));
    }

    #[test]
    fn modular_sequence_certifies() {
        let ring = RingSpec::ModRing(4);
        let middle = ChainComplex::new(
            ring,
            vec![2, 1],
            vec![IntMatrix::from_rows(&[vec![-1], vec![1]])],
        )
        .unwrap();
        let left = ChainComplex::concentrated(ring, 2);
        let right = ChainComplex::new(ring, vec![0, 1], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let incl = ChainMap::new(left, middle.clone(), vec![IntMatrix::identity(2)]).unwrap();
        let proj = ChainMap::new(
            middle,
            right,
            vec![IntMatrix::zeros(0, 2), IntMatrix::identity(1)],
        )
        .unwrap();
        let s = ShortExactSeqOfComplexes::new(incl, proj).unwrap();
        let les = les_from_ses(&s, 2).unwrap();
        les.certify().unwrap();
    }
}
