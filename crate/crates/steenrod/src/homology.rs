//! Homology of chain complexes with canonical cycle representatives, the
//! functorial induced maps, homology with coefficients, and the
//! universal-coefficient cross-check oracle.
//!
//! Per degree `n` the engine computes a lattice basis of the cycles, writes
//! the boundaries in that basis and reads the module structure off the Smith
//! form of the resulting relation matrix. The chosen generators come with
//! explicit cycle representatives, so induced maps and connecting
//! homomorphisms are honest matrices rather than abstract isomorphism
//! classes.
//!
//! Ring handling:
//! * `Z`: the full invariant-factor module.
//! * `Q`: the free part of the integral computation (tensoring a complex of
//!   free modules with `Q` kills exactly the torsion).
//! * `F_p`, `Z/m`: computed through the integral lift with `m * I`
//!   relations adjoined; over a prime modulus every surviving factor is `p`
//!   and the result is reported as a vector space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{ChainComplex, ChainMap};
use crate::error::HomologyError;
use crate::matrix::IntMatrix;
use crate::module::{FgModule, ModuleMap};
use crate::ring::RingSpec;
use crate::snf::{self, snf, SnfResult};

/// Homology of a complex: one [`FgModule`] per degree plus representative
/// cycles and the data needed to express arbitrary cycles in the canonical
/// generators.
#[derive(Debug, Clone)]
pub struct GradedModule {
    ring: RingSpec,
    chain_ranks: Vec<usize>,
    degrees: Vec<DegreeHomology>,
}

#[derive(Debug, Clone)]
struct DegreeHomology {
    module: FgModule,
    /// `rank_n x generator_count`; column `j` is a cycle representing the
    /// `j`-th canonical generator.
    representatives: IntMatrix,
    coords: CoordSystem,
}

/// Everything needed to express a cycle's class in canonical generators:
/// the cycle-lattice basis (pre-decomposed) and the left transform of the
/// boundary-relation Smith form.
#[derive(Debug, Clone)]
struct CoordSystem {
    kernel_decomp: SnfResult,
    relation_u: IntMatrix,
    kept: Vec<usize>,
}

impl GradedModule {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Stored degree range (everything above is the zero module).
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `H_n`; the zero module beyond the stored range.
    pub fn module(&self, n: usize) -> FgModule {
        self.degrees
            .get(n)
            .map(|d| d.module.clone())
            .unwrap_or_else(|| FgModule::zero(self.ring))
    }

    /// All stored modules, degree 0 upward.
    pub fn modules(&self) -> Vec<FgModule> {
        self.degrees.iter().map(|d| d.module.clone()).collect()
    }

    /// Representative cycles at degree `n` (columns, one per generator).
    pub fn representatives(&self, n: usize) -> IntMatrix {
        self.degrees
            .get(n)
            .map(|d| d.representatives.clone())
            .unwrap_or_else(|| IntMatrix::zeros(self.chain_rank(n), 0))
    }

    pub fn chain_rank(&self, n: usize) -> usize {
        self.chain_ranks.get(n).copied().unwrap_or(0)
    }

    /// True when every degree is the zero module.
    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(|d| d.module.is_zero())
    }

    /// Degreewise equality of the underlying modules (representatives are
    /// basis choices and do not enter).
    pub fn same_modules(&self, other: &GradedModule) -> bool {
        let top = self.len().max(other.len());
        (0..top).all(|n| self.module(n) == other.module(n))
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for (n, d) in self.degrees.iter().enumerate() {
            if n % 2 == 0 {
                chi += d.module.free_rank() as i64;
            } else {
                chi -= d.module.free_rank() as i64;
            }
        }
        chi
    }

    /// Coordinates of the class of `cycle` in the canonical generators at
    /// degree `n`. The vector must be a cycle over the ring; anything else
    /// signals inconsistent inputs and is an error, not a wrong answer.
    pub fn class_coordinates(
        &self,
        n: usize,
        cycle: &[BigInt],
    ) -> Result<Vec<BigInt>, HomologyError> {
        if cycle.len() != self.chain_rank(n) {
            return Err(HomologyError::ChainRank {
                degree: n,
                got: cycle.len(),
                expected: self.chain_rank(n),
            });
        }
        let Some(data) = self.degrees.get(n) else {
            // beyond the top everything is the zero module
            return Ok(Vec::new());
        };
        let rhs = IntMatrix::column(cycle);
        let w = snf::solve_integral_matrix(&data.coords.kernel_decomp, &rhs)
            .ok_or(HomologyError::RepresentativeExpression { degree: n })?;
        let y = data.coords.relation_u.mul(&w).expect("shapes agree");
        let mut coords: Vec<BigInt> = data
            .coords
            .kept
            .iter()
            .map(|&i| y[(i, 0)].clone())
            .collect();
        data.module.reduce_coords(&mut coords);
        Ok(coords)
    }
}

/// Computes homology with canonical representatives in every degree.
pub fn homology(c: &ChainComplex) -> GradedModule {
    let ring = c.ring();
    let degrees = (0..c.len())
        .map(|n| degree_homology(ring, c.rank(n), &c.differential(n), &c.differential(n + 1)))
        .collect();
    GradedModule {
        ring,
        chain_ranks: c.ranks().to_vec(),
        degrees,
    }
}

fn degree_homology(
    ring: RingSpec,
    rank_n: usize,
    d_out: &IntMatrix,
    d_in: &IntMatrix,
) -> DegreeHomology {
    let (kernel, relations) = match ring.modulus() {
        None => (snf::kernel_lattice(&snf(d_out)), d_in.clone()),
        Some(m) => {
            let kernel = snf::kernel_lattice_mod(d_out, m);
            let relations = d_in
                .hstack(&IntMatrix::scalar(rank_n, m))
                .expect("rows agree");
            (kernel, relations)
        }
    };
    let kernel_decomp = snf(&kernel);
    let w = snf::solve_integral_matrix(&kernel_decomp, &relations)
        .expect("boundaries are cycles: d.d = 0 was asserted on construction");
    let wd = snf(&w);
    let generator_cycles = kernel.mul(&wd.u_inv).expect("shapes agree");

    let k = kernel.cols();
    let r = wd.rank();
    let torsion_positions: Vec<usize> = (0..r)
        .filter(|&i| !wd.invariant_factors[i].is_one())
        .collect();
    let free_positions: Vec<usize> = (r..k).collect();

    let (module, kept) = match ring {
        RingSpec::Integers => {
            let torsion: Vec<BigInt> = torsion_positions
                .iter()
                .map(|&i| wd.invariant_factors[i].clone())
                .collect();
            let mut kept = torsion_positions.clone();
            kept.extend(&free_positions);
            (
                FgModule::new(ring, free_positions.len(), torsion).expect("chain from SNF"),
                kept,
            )
        }
        RingSpec::Rationals => (
            FgModule::new(ring, free_positions.len(), Vec::new()).expect("free"),
            free_positions,
        ),
        RingSpec::PrimeField(p) => {
            debug_assert!(free_positions.is_empty());
            debug_assert!(torsion_positions
                .iter()
                .all(|&i| wd.invariant_factors[i] == BigInt::from(p)));
            (
                FgModule::new(ring, torsion_positions.len(), Vec::new()).expect("vector space"),
                torsion_positions,
            )
        }
        RingSpec::ModRing(_) => {
            debug_assert!(free_positions.is_empty());
            let torsion: Vec<BigInt> = torsion_positions
                .iter()
                .map(|&i| wd.invariant_factors[i].clone())
                .collect();
            (
                FgModule::new(ring, 0, torsion).expect("chain from SNF"),
                torsion_positions,
            )
        }
    };

    let representatives = generator_cycles.select_columns(&kept).reduced(ring);
    DegreeHomology {
        module,
        representatives,
        coords: CoordSystem {
            kernel_decomp,
            relation_u: wd.u,
            kept,
        },
    }
}

/// The matrix of `H_n(f)` in canonical generators: push each source
/// representative through `f_n` and express it in the target's generators.
pub fn induced_map(
    f: &ChainMap,
    h_source: &GradedModule,
    h_target: &GradedModule,
    n: usize,
) -> Result<ModuleMap, HomologyError> {
    let source_module = h_source.module(n);
    let target_module = h_target.module(n);
    let reps = h_source.representatives(n);
    let f_n = f.component(n);
    let mut columns = Vec::with_capacity(reps.cols());
    for j in 0..reps.cols() {
        let image = f_n
            .mul(&IntMatrix::column(&reps.column_vec(j)))
            .map_err(crate::error::ComplexError::from)?;
        columns.push(h_target.class_coordinates(n, &image.column_vec(0))?);
    }
    let matrix = IntMatrix::from_columns(target_module.generator_count(), &columns);
    Ok(ModuleMap::new(source_module, target_module, matrix)?)
}

/// Homology of `c` with coefficients in a finitely generated `Z`-module.
///
/// The coefficient module `A = Z^r + Z/t_1 + ...` is realized at chain level
/// as `r` copies of `c` plus, per cyclic factor, the cone of multiplication
/// by `t_j` on `c` (a free resolution of `Z/t_j` tensored in). The result is
/// honest homology of a free integral complex, with genuine cycle
/// representatives.
pub fn homology_with_coefficients(
    c: &ChainComplex,
    coefficients: &FgModule,
) -> Result<GradedModule, HomologyError> {
    if c.ring() != RingSpec::Integers {
        return Err(HomologyError::NotIntegral(c.ring()));
    }
    if coefficients.ring() != RingSpec::Integers {
        return Err(HomologyError::CoefficientRing(coefficients.ring()));
    }
    let mut summands: Vec<ChainComplex> = Vec::new();
    for _ in 0..coefficients.free_rank() {
        summands.push(c.clone());
    }
    for t in coefficients.torsion() {
        let components = (0..c.len())
            .map(|n| IntMatrix::scalar(c.rank(n), t.clone()))
            .collect();
        let mult = ChainMap::new(c.clone(), c.clone(), components)
            .expect("scalar multiples commute with the differentials");
        summands.push(mult.cone());
    }
    let refs: Vec<&ChainComplex> = summands.iter().collect();
    let (total, _) = ChainComplex::direct_sum(&refs)?;
    Ok(homology(&total))
}

/// The graded module the universal-coefficient formula predicts:
/// `H_n(C; A) = (H_n tensor A) + Tor(H_{n-1}, A)`, evaluated purely on
/// invariant factors. Independent of the chain-level route; used to
/// cross-check [`homology_with_coefficients`].
pub fn uct_oracle(
    h_integral: &GradedModule,
    coefficients: &FgModule,
) -> Result<Vec<FgModule>, HomologyError> {
    if h_integral.ring() != RingSpec::Integers {
        return Err(HomologyError::NotIntegral(h_integral.ring()));
    }
    if coefficients.ring() != RingSpec::Integers {
        return Err(HomologyError::CoefficientRing(coefficients.ring()));
    }
    let top = h_integral.len();
    let mut out = Vec::with_capacity(top);
    for n in 0..top {
        let tensor = tensor_with(&h_integral.module(n), coefficients)?;
        let tor = if n == 0 {
            FgModule::zero(RingSpec::Integers)
        } else {
            tor_with(&h_integral.module(n - 1), coefficients)?
        };
        out.push(tensor.direct_sum(&tor)?);
    }
    Ok(out)
}

/// `M tensor A` for f.g. abelian groups, by bilinearity on cyclic pieces:
/// `Z tensor Z/t = Z/t`, `Z/d tensor Z/t = Z/gcd(d, t)`.
fn tensor_with(m: &FgModule, a: &FgModule) -> Result<FgModule, HomologyError> {
    let mut torsion: Vec<BigInt> = Vec::new();
    for _ in 0..a.free_rank() {
        torsion.extend(m.torsion().iter().cloned());
    }
    for _ in 0..m.free_rank() {
        torsion.extend(a.torsion().iter().cloned());
    }
    for d in m.torsion() {
        for t in a.torsion() {
            torsion.push(d.gcd(t));
        }
    }
    crate::module::normalize_chain(&mut torsion);
    Ok(FgModule::new(
        RingSpec::Integers,
        m.free_rank() * a.free_rank(),
        torsion,
    )?)
}

/// `Tor(M, A)`: free parts contribute nothing, `Tor(Z/d, Z/t) = Z/gcd(d, t)`.
fn tor_with(m: &FgModule, a: &FgModule) -> Result<FgModule, HomologyError> {
    let mut torsion: Vec<BigInt> = Vec::new();
    for d in m.torsion() {
        for t in a.torsion() {
            torsion.push(d.gcd(t));
        }
    }
    crate::module::normalize_chain(&mut torsion);
    Ok(FgModule::new(RingSpec::Integers, 0, torsion)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(ring: RingSpec) -> ChainComplex {
        ChainComplex::concentrated(ring, 1)
    }

    fn circle(ring: RingSpec) -> ChainComplex {
        ChainComplex::new(ring, vec![1, 1], vec![IntMatrix::zeros(1, 1)]).unwrap()
    }

    /// Chains of the standard delta-complex projective plane: two vertices,
    /// three edges, two triangles.
    fn projective_plane(ring: RingSpec) -> ChainComplex {
        let d1 = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 1, 0]]);
        let d2 = IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1], vec![1, 1]]);
        ChainComplex::new(ring, vec![2, 3, 2], vec![d1, d2]).unwrap()
    }

    #[test]
    fn point_satisfies_point_axiom() {
        for ring in [
            RingSpec::Integers,
            RingSpec::Rationals,
            RingSpec::PrimeField(5),
            RingSpec::ModRing(6),
        ] {
            let h = homology(&point(ring));
            assert_eq!(h.module(0), FgModule::coefficient(ring), "ring {ring}");
            for n in 1..=5 {
                assert!(h.module(n).is_zero());
            }
        }
    }

    #[test]
    fn zero_complex_trivial() {
        let h = homology(&ChainComplex::empty(RingSpec::Integers));
        assert!(h.is_trivial());
        assert!(h.module(3).is_zero());
    }

    #[test]
    fn circle_homology() {
        let h = homology(&circle(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert_eq!(h.module(1), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(2).is_zero());
    }

    #[test]
    fn projective_plane_over_rings() {
        let h = homology(&projective_plane(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert_eq!(
            h.module(1),
            FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(2)]).unwrap()
        );
        assert!(h.module(2).is_zero());
        // over F_2 every degree is a line
        let h2 = homology(&projective_plane(RingSpec::PrimeField(2)));
        for n in 0..=2 {
            assert_eq!(h2.module(n), FgModule::free(RingSpec::PrimeField(2), 1));
        }
        // over Q only H_0 survives
        let hq = homology(&projective_plane(RingSpec::Rationals));
        assert_eq!(hq.module(0), FgModule::free(RingSpec::Rationals, 1));
        assert!(hq.module(1).is_zero());
        assert!(hq.module(2).is_zero());
        // over Z/2 as a quotient ring
        let hm = homology(&projective_plane(RingSpec::ModRing(2)));
        for n in 0..=2 {
            assert_eq!(hm.module(n), FgModule::coefficient(RingSpec::ModRing(2)));
        }
    }

    #[test]
    fn representatives_are_cycles() {
        let c = projective_plane(RingSpec::Integers);
        let h = homology(&c);
        for n in 0..c.len() {
            let reps = h.representatives(n);
            if reps.cols() == 0 {
                continue;
            }
            let image = c.differential(n).mul(&reps).unwrap();
            assert!(image.is_zero(), "degree {n} representative not a cycle");
        }
    }

    #[test]
    fn class_coordinates_identify_representatives() {
        let c = projective_plane(RingSpec::Integers);
        let h = homology(&c);
        for n in 0..c.len() {
            let reps = h.representatives(n);
            let module = h.module(n);
            for j in 0..reps.cols() {
                let coords = h.class_coordinates(n, &reps.column_vec(j)).unwrap();
                for (i, coord) in coords.iter().enumerate() {
                    let expected = if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(*coord, expected, "degree {n}, generator {j}");
                }
                assert_eq!(coords.len(), module.generator_count());
            }
        }
    }

    #[test]
    fn induced_by_identity_is_identity() {
        let c = projective_plane(RingSpec::Integers);
        let h = homology(&c);
        let id = ChainMap::identity(&c);
        for n in 0..c.len() {
            let map = induced_map(&id, &h, &h, n).unwrap();
            assert_eq!(map, ModuleMap::identity(&h.module(n)));
        }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        for c in [
            point(RingSpec::Integers),
            circle(RingSpec::Integers),
            projective_plane(RingSpec::Integers),
        ] {
            let cone = ChainMap::identity(&c).cone();
            assert!(homology(&cone).is_trivial());
        }
    }

    #[test]
    fn coefficients_in_z_are_plain_homology() {
        let c = projective_plane(RingSpec::Integers);
        let h = homology(&c);
        let with_z =
            homology_with_coefficients(&c, &FgModule::free(RingSpec::Integers, 1)).unwrap();
        assert!(h.same_modules(&with_z));
    }

    #[test]
    fn projective_plane_mod_two_coefficients() {
        let c = projective_plane(RingSpec::Integers);
        let z2 = FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(2)]).unwrap();
        let h = homology_with_coefficients(&c, &z2).unwrap();
        for n in 0..=2 {
            assert_eq!(h.module(n), z2, "degree {n}");
        }
        assert!(h.module(3).is_zero());
    }

    #[test]
    fn point_with_arbitrary_coefficients() {
        let a = FgModule::new(RingSpec::Integers, 2, vec![BigInt::from(6)]).unwrap();
        let h = homology_with_coefficients(&point(RingSpec::Integers), &a).unwrap();
        assert_eq!(h.module(0), a);
        assert!(h.module(1).is_zero());
    }

    #[test]
    fn uct_oracle_matches_chain_level() {
        let c = projective_plane(RingSpec::Integers);
        let h = homology(&c);
        for a in [
            FgModule::free(RingSpec::Integers, 1),
            FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(2)]).unwrap(),
            FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(4)]).unwrap(),
            FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(6)]).unwrap(),
            FgModule::new(RingSpec::Integers, 2, vec![]).unwrap(),
        ] {
            let predicted = uct_oracle(&h, &a).unwrap();
            let computed = homology_with_coefficients(&c, &a).unwrap();
            for (n, p) in predicted.iter().enumerate() {
                assert_eq!(*p, computed.module(n), "coefficients {a}, degree {n}");
            }
        }
    }

    #[test]
    fn coefficients_demand_integral_inputs() {
        let c = circle(RingSpec::Rationals);
        let a = FgModule::free(RingSpec::Integers, 1);
        assert!(matches!(
            homology_with_coefficients(&c, &a),
            Err(HomologyError::NotIntegral(RingSpec::Rationals))
        ));
        let c = circle(RingSpec::Integers);
        let bad = FgModule::free(RingSpec::Rationals, 1);
        assert!(matches!(
            homology_with_coefficients(&c, &bad),
            Err(HomologyError::CoefficientRing(RingSpec::Rationals))
        ));
    }

    #[test]
    fn cone_of_vertex_inclusion_into_circle() {
        // the cone of C(pt) -> C(S^1) computes H(S^1, pt): one class in
        // degree one, nothing in degree zero
        let circle = circle(RingSpec::Integers);
        let point = point(RingSpec::Integers);
        let inclusion = ChainMap::new(point, circle, vec![IntMatrix::identity(1)]).unwrap();
        let h = homology(&inclusion.cone());
        assert!(h.module(0).is_zero());
        assert_eq!(h.module(1), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(2).is_zero());
    }

    #[test]
    fn collapse_to_point_is_iso_on_h0() {
        let c = circle(RingSpec::Integers);
        let p = point(RingSpec::Integers);
        // chain-level collapse: vertex to vertex, loop to zero
        let collapse = ChainMap::new(
            c.clone(),
            p,
            vec![IntMatrix::identity(1), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        let h_c = homology(&c);
        let h_p = homology(collapse.target());
        let on_h0 = induced_map(&collapse, &h_c, &h_p, 0).unwrap();
        assert!(on_h0.is_isomorphism());
    }

    #[test]
    fn tor_of_cyclic_modules() {
        let z2 = FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(2)]).unwrap();
        let t = tor_with(&z2, &z2).unwrap();
        assert_eq!(t, z2);
        let free = FgModule::free(RingSpec::Integers, 3);
        assert!(tor_with(&free, &z2).unwrap().is_zero());
    }

    #[test]
    fn euler_characteristic_matches_over_q() {
        let c = projective_plane(RingSpec::Rationals);
        let h = homology(&c);
        assert_eq!(c.euler_characteristic(), h.euler_characteristic());
    }
}
