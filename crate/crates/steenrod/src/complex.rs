//! Bounded, non-negatively graded chain complexes of free modules with
//! integer differentials, and the chain maps, cones and direct sums over
//! them.
//!
//! Matrices are always integral; the ring decides what "zero" means when
//! `d . d = 0` and the chain-map squares are checked (exact zero over `Z`
//! and `Q`, congruence over `Z/m` and `F_p`).

use num_bigint::BigInt;

use crate::error::ComplexError;
use crate::matrix::IntMatrix;
use crate::ring::RingSpec;

/// A chain complex `C_0 <- C_1 <- ... <- C_top` of free modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: RingSpec,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d_{i+1} : C_{i+1} -> C_i`.
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Builds and validates: matrix shapes must match the ranks and
    /// `d_{n-1} . d_n` must vanish over the ring.
    pub fn new(
        ring: RingSpec,
        ranks: Vec<usize>,
        differentials: Vec<IntMatrix>,
    ) -> Result<Self, ComplexError> {
        let expected = ranks.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(ComplexError::DifferentialShape {
                degree: differentials.len(),
                rows: 0,
                cols: 0,
                expected_rows: expected,
                expected_cols: expected,
            });
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(ComplexError::DifferentialShape {
                    degree: i + 1,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows: ranks[i],
                    expected_cols: ranks[i + 1],
                });
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            let square = differentials[i]
                .mul(&differentials[i + 1])
                .expect("shapes already checked");
            if !square.is_zero_over(ring) {
                return Err(ComplexError::SquareNonzero {
                    lower: i + 1,
                    upper: i + 2,
                    ring,
                });
            }
        }
        Ok(ChainComplex {
            ring,
            ranks,
            diffs: differentials,
        })
    }

    /// The complex with no chains at all (every degree zero).
    pub fn empty(ring: RingSpec) -> Self {
        ChainComplex {
            ring,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single free module concentrated in degree zero.
    pub fn concentrated(ring: RingSpec, rank: usize) -> Self {
        ChainComplex {
            ring,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Number of stored degrees; degrees `0..len()` may be nonzero.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_n`, zero beyond the stored range.
    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n : C_n -> C_{n-1}`, materialized with correct (possibly zero)
    /// dimensions for every `n`, including `n = 0` and degrees beyond the
    /// top.
    pub fn differential(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.rank(0));
        }
        match self.diffs.get(n - 1) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    /// Alternating sum of the chain ranks.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::from(0);
        for (n, r) in self.ranks.iter().enumerate() {
            if n % 2 == 0 {
                chi += *r as i64;
            } else {
                chi -= *r as i64;
            }
        }
        chi
    }

    /// Blockwise direct sum, together with the canonical inclusions.
    pub fn direct_sum(
        summands: &[&ChainComplex],
    ) -> Result<(ChainComplex, Vec<ChainMap>), ComplexError> {
        let ring = summands.first().map_or(RingSpec::Integers, |c| c.ring);
        for c in summands {
            if c.ring != ring {
                return Err(ComplexError::RingMismatch(ring, c.ring));
            }
        }
        let len = summands.iter().map(|c| c.len()).max().unwrap_or(0);
        let ranks: Vec<usize> = (0..len)
            .map(|n| summands.iter().map(|c| c.rank(n)).sum())
            .collect();
        let diffs: Vec<IntMatrix> = (1..len)
            .map(|n| {
                let blocks: Vec<IntMatrix> = summands.iter().map(|c| c.differential(n)).collect();
                let refs: Vec<&IntMatrix> = blocks.iter().collect();
                IntMatrix::block_diag(&refs)
            })
            .collect();
        let total = ChainComplex::new(ring, ranks, diffs)?;
        let mut inclusions = Vec::with_capacity(summands.len());
        for (idx, c) in summands.iter().enumerate() {
            let components: Vec<IntMatrix> = (0..c.len())
                .map(|n| {
                    let mut comp = IntMatrix::zeros(total.rank(n), c.rank(n));
                    let offset: usize = summands[..idx].iter().map(|s| s.rank(n)).sum();
                    for j in 0..c.rank(n) {
                        comp[(offset + j, j)] = BigInt::from(1);
                    }
                    comp
                })
                .collect();
            inclusions.push(ChainMap::new((*c).clone(), total.clone(), components)?);
        }
        Ok((total, inclusions))
    }
}

/// A degreewise map of chain complexes commuting with the differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// `components[n] : C_n -> C'_n`; missing entries are zero maps.
    components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<IntMatrix>,
    ) -> Result<Self, ComplexError> {
        if source.ring != target.ring {
            return Err(ComplexError::RingMismatch(source.ring, target.ring));
        }
        let ring = source.ring;
        let map = ChainMap {
            source,
            target,
            components,
        };
        let top = map
            .source
            .len()
            .max(map.target.len())
            .max(map.components.len());
        for n in 0..top {
            let f_n = map.component(n);
            if f_n.rows() != map.target.rank(n) || f_n.cols() != map.source.rank(n) {
                return Err(ComplexError::ComponentShape {
                    degree: n,
                    rows: f_n.rows(),
                    cols: f_n.cols(),
                    expected_rows: map.target.rank(n),
                    expected_cols: map.source.rank(n),
                });
            }
        }
        // f_{n-1} d_n = d'_n f_n over the ring
        for n in 1..=top {
            let lhs = map
                .component(n - 1)
                .mul(&map.source.differential(n))
                .expect("shapes checked");
            let rhs = map
                .target
                .differential(n)
                .mul(&map.component(n))
                .expect("shapes checked");
            let diff = lhs.add(&rhs.neg()).expect("same shape");
            if !diff.is_zero_over(ring) {
                return Err(ComplexError::NotChainMap { degree: n });
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = (0..c.len())
            .map(|n| IntMatrix::identity(c.rank(n)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), Vec::new())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn ring(&self) -> RingSpec {
        self.source.ring
    }

    /// `f_n`, materialized with correct dimensions for every degree.
    pub fn component(&self, n: usize) -> IntMatrix {
        match self.components.get(n) {
            Some(f) => f.clone(),
            None => IntMatrix::zeros(self.target.rank(n), self.source.rank(n)),
        }
    }

    /// `self . inner` (right-to-left).
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap, ComplexError> {
        if inner.target != self.source {
            return Err(ComplexError::RingMismatch(
                inner.target.ring,
                self.source.ring,
            ));
        }
        let top = inner.source.len().max(self.target.len());
        let components = (0..top)
            .map(|n| {
                self.component(n)
                    .mul(&inner.component(n))
                    .expect("generator counts agree")
            })
            .collect();
        ChainMap::new(inner.source.clone(), self.target.clone(), components)
    }

    /// Mapping cone: `Cone(f)_n = target_n + source_{n-1}` with differential
    /// `[[d', f], [0, -d]]` (the sign sits on the shifted source copy).
    pub fn cone(&self) -> ChainComplex {
        let src = &self.source;
        let tgt = &self.target;
        let len = tgt.len().max(src.len() + 1);
        let ranks: Vec<usize> = (0..len)
            .map(|n| tgt.rank(n) + if n > 0 { src.rank(n - 1) } else { 0 })
            .collect();
        let diffs: Vec<IntMatrix> = (1..len)
            .map(|n| {
                let d_tgt = tgt.differential(n);
                let f = self.component(n - 1);
                let zero = IntMatrix::zeros(if n >= 2 { src.rank(n - 2) } else { 0 }, tgt.rank(n));
                let d_src = if n >= 2 {
                    src.differential(n - 1).neg()
                } else {
                    IntMatrix::zeros(0, src.rank(n - 1))
                };
                IntMatrix::block(&d_tgt, &f, &zero, &d_src).expect("block shapes agree")
            })
            .collect();
        ChainComplex::new(src.ring, ranks, diffs).expect("cone of a chain map is a complex")
    }
}
