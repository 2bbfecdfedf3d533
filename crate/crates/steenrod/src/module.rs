//! Finitely generated modules in invariant-factor form, and maps between
//! them in canonical generators.
//!
//! An [`FgModule`] is the engine's value object: free rank plus a torsion
//! divisibility chain. Canonical generator order is fixed everywhere as
//! torsion generators (in chain order) followed by free generators; a
//! [`ModuleMap`] matrix is written against that order, entries reduced
//! modulo the order of the target generator of their row.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ModuleError;
use crate::matrix::IntMatrix;
use crate::ring::RingSpec;
use crate::snf::{self, snf};

/// A finitely generated module over one of the four rings.
///
/// Over `Q` and `F_p` the torsion list is empty and `free_rank` is the
/// dimension. Over `Z/m` every generator is torsion (each order divides `m`)
/// and `free_rank` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgModule {
    ring: RingSpec,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgModule {
    pub fn new(
        ring: RingSpec,
        free_rank: usize,
        torsion: Vec<BigInt>,
    ) -> Result<Self, ModuleError> {
        if ring.is_field() && !torsion.is_empty() {
            return Err(ModuleError::TorsionOverField {
                ring,
                got: torsion.len(),
            });
        }
        for t in &torsion {
            if *t < BigInt::from(2) {
                return Err(ModuleError::TorsionBelowTwo(t.to_string()));
            }
        }
        for (i, w) in torsion.windows(2).enumerate() {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(ModuleError::BrokenChain(i));
            }
        }
        Ok(FgModule {
            ring,
            free_rank,
            torsion,
        })
    }

    pub fn zero(ring: RingSpec) -> Self {
        FgModule {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// The rank-one free module `R` over `Z`, `Q`, `F_p`; the cyclic module
    /// `Z/m` over `Z/m`. This is `H_0` of a point: the coefficient object.
    pub fn coefficient(ring: RingSpec) -> Self {
        match ring {
            RingSpec::ModRing(m) => FgModule {
                ring,
                free_rank: 0,
                torsion: vec![BigInt::from(m)],
            },
            _ => FgModule {
                ring,
                free_rank: 1,
                torsion: Vec::new(),
            },
        }
    }

    /// Free module of the given rank (over `Z/m`: the rank-many copies of
    /// the full cyclic module).
    pub fn free(ring: RingSpec, rank: usize) -> Self {
        match ring {
            RingSpec::ModRing(m) => FgModule {
                ring,
                free_rank: 0,
                torsion: vec![BigInt::from(m); rank],
            },
            _ => FgModule {
                ring,
                free_rank: rank,
                torsion: Vec::new(),
            },
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Total number of canonical generators: torsion then free.
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the `i`-th canonical generator: `Some(d)` for torsion,
    /// `None` for free (infinite order). Over `F_p` every generator has
    /// order `p`.
    pub fn generator_order(&self, i: usize) -> Option<BigInt> {
        if i < self.torsion.len() {
            Some(self.torsion[i].clone())
        } else if let RingSpec::PrimeField(p) = self.ring {
            Some(BigInt::from(p))
        } else {
            None
        }
    }

    /// The diagonal relation matrix of the canonical presentation: one
    /// column `o_i e_i` per finite-order generator.
    pub(crate) fn relation_matrix(&self) -> IntMatrix {
        let gens = self.generator_count();
        let orders: Vec<(usize, BigInt)> = (0..gens)
            .filter_map(|i| self.generator_order(i).map(|o| (i, o)))
            .collect();
        let mut rel = IntMatrix::zeros(gens, orders.len());
        for (j, (i, o)) in orders.iter().enumerate() {
            rel[(*i, j)] = o.clone();
        }
        rel
    }

    /// Is the integer vector zero as an element of this module (entry `i`
    /// divisible by the order of generator `i`, exactly zero on free ones)?
    pub(crate) fn element_is_zero(&self, coords: &[BigInt]) -> bool {
        debug_assert_eq!(coords.len(), self.generator_count());
        coords
            .iter()
            .enumerate()
            .all(|(i, c)| match self.generator_order(i) {
                Some(o) => (c % &o).is_zero(),
                None => c.is_zero(),
            })
    }

    /// Canonical residue of a coordinate vector.
    pub(crate) fn reduce_coords(&self, coords: &mut [BigInt]) {
        debug_assert_eq!(coords.len(), self.generator_count());
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(o) = self.generator_order(i) {
                *c = ((&*c % &o) + &o) % &o;
            }
        }
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &FgModule) -> Result<FgModule, ModuleError> {
        if self.ring != other.ring {
            return Err(ModuleError::RingMismatch(self.ring, other.ring));
        }
        let mut torsion: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        normalize_chain(&mut torsion);
        FgModule::new(self.ring, self.free_rank + other.free_rank, torsion)
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.ring {
            RingSpec::Integers | RingSpec::ModRing(_) => "Z".to_string(),
            RingSpec::Rationals => "Q".to_string(),
            RingSpec::PrimeField(p) => format!("F_{p}"),
        };
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(base.clone());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j + 1 < self.torsion.len() && self.torsion[j + 1] == self.torsion[i] {
                j += 1;
            }
            let count = j - i + 1;
            if count == 1 {
                parts.push(format!("Z/{}", self.torsion[i]));
            } else {
                parts.push(format!("(Z/{})^{count}", self.torsion[i]));
            }
            i = j + 1;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewrites a multiset of cyclic orders into the canonical divisibility
/// chain by repeated gcd/lcm exchanges. Factorization-free.
pub(crate) fn normalize_chain(orders: &mut Vec<BigInt>) {
    orders.retain(|d| !d.is_one());
    loop {
        let mut changed = false;
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                if !(&orders[j] % &orders[i]).is_zero() {
                    let g = orders[i].gcd(&orders[j]);
                    let l = (&orders[i] / &g) * &orders[j];
                    orders[i] = g;
                    orders[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    orders.retain(|d| !d.is_one());
    orders.sort();
}

/// The module presented by the columns of `a` as relations among `a.rows()`
/// generators, over the given ring.
///
/// Over `Z` this reads the invariant factors off the Smith form. Over the
/// fields torsion is absorbed into rank reduction. Over `Z/m` the
/// presentation is lifted to `Z` with `m * I` adjoined.
pub fn cokernel(a: &IntMatrix, ring: RingSpec) -> FgModule {
    match ring {
        RingSpec::Integers => {
            let decomp = snf(a);
            let torsion: Vec<BigInt> = decomp
                .invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect();
            FgModule {
                ring,
                free_rank: a.rows() - decomp.rank(),
                torsion,
            }
        }
        RingSpec::Rationals | RingSpec::PrimeField(_) => FgModule {
            ring,
            free_rank: a.rows() - snf::rank_over(a, ring),
            torsion: Vec::new(),
        },
        RingSpec::ModRing(m) => {
            let lifted = a
                .hstack(&IntMatrix::scalar(a.rows(), m))
                .expect("rows agree");
            let decomp = snf(&lifted);
            let torsion: Vec<BigInt> = decomp
                .invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect();
            debug_assert_eq!(decomp.rank(), a.rows());
            FgModule {
                ring,
                free_rank: 0,
                torsion,
            }
        }
    }
}

/// A homomorphism between two modules, as a matrix on canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    matrix: IntMatrix,
}

impl ModuleMap {
    /// Validates shape and torsion-respect, then stores the canonically
    /// reduced matrix.
    pub fn new(source: FgModule, target: FgModule, matrix: IntMatrix) -> Result<Self, ModuleError> {
        if source.ring != target.ring {
            return Err(ModuleError::RingMismatch(source.ring, target.ring));
        }
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(ModuleError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                target_gens: target.generator_count(),
                source_gens: source.generator_count(),
            });
        }
        // A generator of order t must map to an element killed by t.
        for j in 0..source.generator_count() {
            if let Some(order) = source.generator_order(j) {
                let image: Vec<BigInt> = (0..target.generator_count())
                    .map(|i| &matrix[(i, j)] * &order)
                    .collect();
                if !target.element_is_zero(&image) {
                    return Err(ModuleError::TorsionNotRespected {
                        generator: j,
                        order: order.to_string(),
                    });
                }
            }
        }
        let mut reduced = matrix;
        for j in 0..source.generator_count() {
            let mut col = reduced.column_vec(j);
            target.reduce_coords(&mut col);
            for (i, c) in col.into_iter().enumerate() {
                reduced[(i, j)] = c;
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn identity(module: &FgModule) -> Self {
        ModuleMap {
            source: module.clone(),
            target: module.clone(),
            matrix: IntMatrix::identity(module.generator_count()),
        }
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> RingSpec {
        self.source.ring
    }

    /// `self . inner`, applied right-to-left.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if inner.target != self.source {
            return Err(ModuleError::ComposeMismatch {
                inner: inner.target.generator_count(),
                outer: self.source.generator_count(),
            });
        }
        let matrix = self
            .matrix
            .mul(&inner.matrix)
            .expect("generator counts agree");
        ModuleMap::new(inner.source.clone(), self.target.clone(), matrix)
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.source.generator_count()).all(|j| {
            let col = self.matrix.column_vec(j);
            self.target.element_is_zero(&col)
        })
    }

    /// Certifies bijectivity of this specific map over its ring.
    ///
    /// Over the fields this is a rank check. Over `Z` and `Z/m` surjectivity
    /// is trivial cokernel of `[M | relations]` and injectivity is the
    /// preimage-lattice membership test; both are Smith-certified, so
    /// torsion cannot hide behind equal ranks.
    pub fn is_isomorphism(&self) -> bool {
        let ring = self.ring();
        let src_gens = self.source.generator_count();
        let tgt_gens = self.target.generator_count();
        match ring {
            RingSpec::Rationals => src_gens == tgt_gens && snf(&self.matrix).rank() == tgt_gens,
            RingSpec::PrimeField(p) => {
                src_gens == tgt_gens && snf(&self.matrix).rank_mod(p) == tgt_gens
            }
            RingSpec::Integers | RingSpec::ModRing(_) => {
                let rel_t = self.target.relation_matrix();
                let combined = self.matrix.hstack(&rel_t).expect("rows agree");
                let decomp = snf(&combined);
                let surjective =
                    decomp.rank() == tgt_gens && decomp.invariant_factors.iter().all(One::is_one);
                if !surjective {
                    return false;
                }
                self.kernel_inside_source_relations()
            }
        }
    }

    /// Injectivity over `Z` / `Z/m`: the lattice of coordinate vectors
    /// mapping into the target's relation lattice must itself lie in the
    /// source's relation lattice.
    fn kernel_inside_source_relations(&self) -> bool {
        for col in self.preimage_of_relations_basis() {
            let mut v = col;
            self.source.reduce_coords(&mut v);
            if !self.source.element_is_zero(&v) {
                return false;
            }
        }
        true
    }

    /// Basis of `{y : M y lies in the target relation lattice}`.
    fn preimage_of_relations_basis(&self) -> Vec<Vec<BigInt>> {
        let rel_t = self.target.relation_matrix();
        let combined = self.matrix.hstack(&rel_t).expect("rows agree");
        let kernel = snf::kernel_lattice(&snf(&combined));
        let src_gens = self.source.generator_count();
        (0..kernel.cols())
            .map(|j| kernel.column_vec(j)[..src_gens].to_vec())
            .collect()
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.source, self.target, self.matrix)
    }
}

/// Certifies `im(f) = ker(g)` as subgroups of the middle module's canonical
/// presentation.
///
/// `g . f = 0` gives the image-in-kernel inclusion; the converse is checked
/// generator by generator: every basis vector of the kernel-preimage lattice
/// of `g` must be an integral combination of the columns of `f` and the
/// middle relations.
pub fn is_exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    debug_assert_eq!(f.target, g.source, "maps not composable");
    let middle = &f.target;
    let ring = middle.ring;
    match g.compose(f) {
        Ok(composite) => {
            if !composite.is_zero_map() {
                return false;
            }
        }
        Err(_) => return false,
    }
    match ring {
        RingSpec::Rationals => {
            snf(f.matrix()).rank() + snf(g.matrix()).rank() == middle.generator_count()
        }
        RingSpec::PrimeField(p) => {
            snf(f.matrix()).rank_mod(p) + snf(g.matrix()).rank_mod(p) == middle.generator_count()
        }
        RingSpec::Integers | RingSpec::ModRing(_) => {
            let image_with_relations = f
                .matrix()
                .hstack(&middle.relation_matrix())
                .expect("rows agree");
            let image_decomp = snf(&image_with_relations);
            for col in g.preimage_of_relations_basis() {
                let rhs = IntMatrix::column(&col);
                if snf::solve_integral_matrix(&image_decomp, &rhs).is_none() {
                    return false;
                }
            }
            true
        }
    }
}
