//! Delta complexes (semi-simplicial sets without degeneracies), subcomplex
//! pairs, simplicial maps, and the chain-level functors out of them.
//!
//! A map may mark a simplex `Collapsed`: its chain image is zero. This is
//! how dimension-crushing maps (a circle onto a point, a cylinder onto its
//! base) are encoded without degeneracy bookkeeping. Validation is two-tier:
//! honest images must commute with the face maps on the nose, and collapsed
//! ones must still satisfy the chain-level commutation, checked column by
//! column so a violation names the offending simplex.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::complex::{ChainComplex, ChainMap};
use crate::error::SpaceError;
use crate::matrix::IntMatrix;
use crate::ring::RingSpec;
use crate::ses::ShortExactSeqOfComplexes;

/// An ordered combinatorial space: per dimension an indexed list of
/// simplices, each `n`-simplex carrying its `n + 1` codimension-one faces
/// (face `i` omits vertex `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    counts: Vec<usize>,
    /// `faces[n][s][i]` for `n >= 1`; `faces[0]` is unused and empty.
    faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    pub fn new(counts: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self, SpaceError> {
        let complex = DeltaComplex { counts, faces };
        complex.validate()?;
        Ok(complex)
    }

    /// A single vertex.
    pub fn point() -> Self {
        DeltaComplex {
            counts: vec![1],
            faces: vec![Vec::new()],
        }
    }

    fn validate(&self) -> Result<(), SpaceError> {
        if self.faces.len() != self.counts.len() {
            return Err(SpaceError::FlagShape);
        }
        for n in 1..self.counts.len() {
            if self.faces[n].len() != self.counts[n] {
                return Err(SpaceError::AssignmentShape { dim: n });
            }
            for (s, fs) in self.faces[n].iter().enumerate() {
                if fs.len() != n + 1 {
                    return Err(SpaceError::FaceCount {
                        dim: n,
                        simplex: s,
                        got: fs.len(),
                        expected: n + 1,
                    });
                }
                for &f in fs {
                    if f >= self.counts[n - 1] {
                        return Err(SpaceError::FaceOutOfRange {
                            dim: n,
                            simplex: s,
                            face: f,
                            lower_dim: n - 1,
                            count: self.counts[n - 1],
                        });
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..self.counts.len() {
            for s in 0..self.counts[n] {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, self.face(n, s, j), i);
                        let rhs = self.face(n - 1, self.face(n, s, i), j - 1);
                        if lhs != rhs {
                            return Err(SpaceError::SimplicialIdentity {
                                dim: n,
                                simplex: s,
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Simplex counts per dimension.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    /// The `i`-th face of the `s`-th `n`-simplex.
    pub fn face(&self, n: usize, s: usize, i: usize) -> usize {
        self.faces[n][s][i]
    }

    pub fn face_table(&self) -> &[Vec<Vec<usize>>] {
        &self.faces
    }

    /// Chains with the alternating-sum boundary `d(s) = sum (-1)^i face_i(s)`.
    pub fn chain_complex(&self, ring: RingSpec) -> ChainComplex {
        let diffs: Vec<IntMatrix> = (1..self.counts.len())
            .map(|n| {
                let mut d = IntMatrix::zeros(self.counts[n - 1], self.counts[n]);
                for s in 0..self.counts[n] {
                    for (i, &f) in self.faces[n][s].iter().enumerate() {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        d[(f, s)] += BigInt::from(sign);
                    }
                }
                d
            })
            .collect();
        ChainComplex::new(ring, self.counts.clone(), diffs)
            .expect("validated delta complex yields d.d = 0")
    }

    /// Fresh all-false flag table shaped like this complex.
    pub fn blank_flags(&self) -> Vec<Vec<bool>> {
        self.counts.iter().map(|&c| vec![false; c]).collect()
    }

    /// All-true flag table.
    pub fn full_flags(&self) -> Vec<Vec<bool>> {
        self.counts.iter().map(|&c| vec![true; c]).collect()
    }

    /// Flags of the `p`-skeleton.
    pub fn skeleton_flags(&self, p: usize) -> Vec<Vec<bool>> {
        self.counts
            .iter()
            .enumerate()
            .map(|(n, &c)| vec![n <= p; c])
            .collect()
    }

    /// Closes a flag set downward (faces of flagged simplices get flagged).
    pub fn close_flags(&self, mut flags: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
        for n in (1..self.counts.len()).rev() {
            for s in 0..self.counts[n] {
                if flags[n][s] {
                    for &f in &self.faces[n][s] {
                        flags[n - 1][f] = true;
                    }
                }
            }
        }
        flags
    }

    /// Disjoint union with the canonical inclusion maps. Indices of the
    /// `k`-th summand are shifted past all earlier summands.
    pub fn disjoint_union(
        pieces: &[&DeltaComplex],
    ) -> Result<(DeltaComplex, Vec<SimplicialMap>), SpaceError> {
        if pieces.is_empty() {
            return Err(SpaceError::EmptyUnion);
        }
        let dims = pieces.iter().map(|x| x.counts.len()).max().unwrap();
        let mut counts = vec![0usize; dims];
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dims];
        // offsets[k][n] = index shift of summand k in dimension n
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let mut offs = Vec::with_capacity(dims);
            for n in 0..dims {
                offs.push(counts[n]);
                counts[n] += piece.count(n);
                if n >= 1 && n < piece.counts.len() {
                    let shift = offs[n - 1];
                    for fs in &piece.faces[n] {
                        faces[n].push(fs.iter().map(|&f| f + shift).collect());
                    }
                }
            }
            offsets.push(offs);
        }
        // trim empty top dimensions introduced by max()
        while counts.last() == Some(&0) {
            counts.pop();
            faces.pop();
        }
        let total = DeltaComplex::new(counts, faces)?;
        let mut inclusions = Vec::with_capacity(pieces.len());
        for (k, piece) in pieces.iter().enumerate() {
            let images: Vec<Vec<SimplexImage>> = (0..piece.counts.len())
                .map(|n| {
                    (0..piece.count(n))
                        .map(|s| SimplexImage::Simplex(offsets[k][n] + s))
                        .collect()
                })
                .collect();
            inclusions.push(SimplicialMap::new((*piece).clone(), total.clone(), images)?);
        }
        Ok((total, inclusions))
    }

    /// The cone: a new apex vertex (last index) joined to everything.
    /// Always contractible; useful as a corpus space with known homology.
    pub fn cone(&self) -> DeltaComplex {
        let old_dims = self.counts.len();
        let dims = old_dims + 1;
        let apex = self.count(0);
        let mut counts = vec![0usize; dims];
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dims];
        counts[0] = self.count(0) + 1;
        for n in 1..old_dims {
            counts[n] = self.count(n) + self.count(n - 1);
            faces[n] = self.faces[n].clone();
        }
        counts[old_dims] = self.count(old_dims - 1);
        // cone over an (n-1)-simplex s sits at index count(n) + s in dim n
        for n in 1..dims {
            for s in 0..self.count(n - 1) {
                let mut fs: Vec<usize> = Vec::with_capacity(n + 1);
                if n == 1 {
                    // edge (v, apex): face 0 omits v, face 1 omits apex
                    fs.push(apex);
                    fs.push(s);
                } else {
                    for i in 0..n {
                        fs.push(self.count(n - 1) + self.face(n - 1, s, i));
                    }
                    fs.push(s);
                }
                faces[n].push(fs);
            }
        }
        DeltaComplex::new(counts, faces).expect("cone of a valid complex is valid")
    }
}

/// A pair `(X, Y)`: a complex with a closed subcomplex flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcomplexPair {
    total: DeltaComplex,
    flags: Vec<Vec<bool>>,
}

impl SubcomplexPair {
    pub fn new(total: DeltaComplex, flags: Vec<Vec<bool>>) -> Result<Self, SpaceError> {
        check_flag_shape(&total, &flags)?;
        check_closed(&total, &flags)?;
        Ok(SubcomplexPair { total, flags })
    }

    /// `(X, X)`.
    pub fn whole(total: DeltaComplex) -> Self {
        let flags = total.full_flags();
        SubcomplexPair { total, flags }
    }

    /// `(X, 0)`.
    pub fn empty_subspace(total: DeltaComplex) -> Self {
        let flags = total.blank_flags();
        SubcomplexPair { total, flags }
    }

    /// `(X, {v})` for a single vertex.
    pub fn with_basepoint(total: DeltaComplex, vertex: usize) -> Result<Self, SpaceError> {
        if vertex >= total.count(0) {
            return Err(SpaceError::MissingBasepoint(vertex));
        }
        let mut flags = total.blank_flags();
        flags[0][vertex] = true;
        Ok(SubcomplexPair { total, flags })
    }

    pub fn total(&self) -> &DeltaComplex {
        &self.total
    }

    pub fn flags(&self) -> &[Vec<bool>] {
        &self.flags
    }

    pub fn is_flagged(&self, n: usize, s: usize) -> bool {
        self.flags
            .get(n)
            .is_some_and(|row| row.get(s).copied().unwrap_or(false))
    }

    pub fn subspace_is_empty(&self) -> bool {
        self.flags.iter().all(|row| row.iter().all(|&f| !f))
    }

    pub fn subspace_is_whole(&self) -> bool {
        self.flags.iter().all(|row| row.iter().all(|&f| f))
    }

    /// Extracts the flagged subcomplex with its index maps into the total
    /// complex: `to_total[n][local] = global`.
    pub fn subcomplex(&self) -> (DeltaComplex, Vec<Vec<usize>>) {
        extract(&self.total, &self.flags)
    }

    /// The inclusion `Y -> X` as a simplicial map of the extracted
    /// subcomplex into the total complex.
    pub fn inclusion_simplicial_map(&self) -> SimplicialMap {
        let (sub, to_total) = self.subcomplex();
        let images: Vec<Vec<SimplexImage>> = to_total
            .iter()
            .map(|row| row.iter().map(|&g| SimplexImage::Simplex(g)).collect())
            .collect();
        SimplicialMap::new(sub, self.total.clone(), images)
            .expect("subcomplex inclusion is simplicial")
    }

    /// The inclusion `C(Y) -> C(X)` at chain level.
    pub fn inclusion_chain_map(&self, ring: RingSpec) -> ChainMap {
        let (sub, to_total) = self.subcomplex();
        let sub_chains = sub.chain_complex(ring);
        let total_chains = self.total.chain_complex(ring);
        let components: Vec<IntMatrix> = (0..sub.counts.len())
            .map(|n| {
                let mut comp = IntMatrix::zeros(self.total.count(n), sub.count(n));
                for (local, &global) in to_total[n].iter().enumerate() {
                    comp[(global, local)] = BigInt::from(1);
                }
                comp
            })
            .collect();
        ChainMap::new(sub_chains, total_chains, components)
            .expect("subcomplex inclusion is a chain map")
    }

    /// The quotient complex `C(X)/C(Y)`: free on the unflagged simplices.
    pub fn quotient_chain_complex(&self, ring: RingSpec) -> ChainComplex {
        let keep: Vec<Vec<usize>> = self
            .flags
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(s, &f)| (!f).then_some(s))
                    .collect()
            })
            .collect();
        let total_chains = self.total.chain_complex(ring);
        let ranks: Vec<usize> = keep.iter().map(Vec::len).collect();
        let diffs: Vec<IntMatrix> = (1..ranks.len())
            .map(|n| {
                total_chains
                    .differential(n)
                    .select_rows(&keep[n - 1])
                    .select_columns(&keep[n])
            })
            .collect();
        ChainComplex::new(ring, ranks, diffs).expect("quotient of a complex is a complex")
    }

    /// The projection `C(X) -> C(X)/C(Y)`.
    pub fn projection_chain_map(&self, ring: RingSpec) -> ChainMap {
        let total_chains = self.total.chain_complex(ring);
        let quotient = self.quotient_chain_complex(ring);
        let components: Vec<IntMatrix> = (0..self.total.counts.len())
            .map(|n| {
                let mut comp = IntMatrix::zeros(quotient.rank(n), self.total.count(n));
                let mut local = 0;
                for s in 0..self.total.count(n) {
                    if !self.flags[n][s] {
                        comp[(local, s)] = BigInt::from(1);
                        local += 1;
                    }
                }
                comp
            })
            .collect();
        ChainMap::new(total_chains, quotient, components)
            .expect("quotient projection is a chain map")
    }

    /// The short exact sequence `0 -> C(Y) -> C(X) -> C(X)/C(Y) -> 0`,
    /// certified on construction.
    pub fn chain_ses(&self, ring: RingSpec) -> ShortExactSeqOfComplexes {
        ShortExactSeqOfComplexes::new(
            self.inclusion_chain_map(ring),
            self.projection_chain_map(ring),
        )
        .expect("subcomplex pair yields a degreewise split exact sequence")
    }

    /// The relative chain complex, realized as the mapping cone of the
    /// inclusion `C(Y) -> C(X)`. Its homology is `H_*(X, Y)`; the quotient
    /// complex computes the same groups and the test corpus certifies the
    /// agreement.
    pub fn relative_chain_complex(&self, ring: RingSpec) -> ChainComplex {
        self.inclusion_chain_map(ring).cone()
    }
}

fn check_flag_shape(total: &DeltaComplex, flags: &[Vec<bool>]) -> Result<(), SpaceError> {
    if flags.len() != total.counts.len() {
        return Err(SpaceError::FlagShape);
    }
    for (n, row) in flags.iter().enumerate() {
        if row.len() != total.count(n) {
            return Err(SpaceError::FlagShape);
        }
    }
    Ok(())
}

fn check_closed(total: &DeltaComplex, flags: &[Vec<bool>]) -> Result<(), SpaceError> {
    for n in 1..total.counts.len() {
        for s in 0..total.count(n) {
            if flags[n][s] {
                for &f in &total.faces[n][s] {
                    if !flags[n - 1][f] {
                        return Err(SpaceError::NotClosed {
                            dim: n,
                            simplex: s,
                            face: f,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn extract(total: &DeltaComplex, flags: &[Vec<bool>]) -> (DeltaComplex, Vec<Vec<usize>>) {
    let mut to_total: Vec<Vec<usize>> = Vec::with_capacity(total.counts.len());
    let mut to_local: Vec<HashMap<usize, usize>> = Vec::with_capacity(total.counts.len());
    for (n, row) in flags.iter().enumerate() {
        let mut fwd = Vec::new();
        let mut back = HashMap::new();
        for s in 0..total.count(n) {
            if row[s] {
                back.insert(s, fwd.len());
                fwd.push(s);
            }
        }
        to_total.push(fwd);
        to_local.push(back);
    }
    let mut counts: Vec<usize> = to_total.iter().map(Vec::len).collect();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); counts.len()];
    for n in 1..counts.len() {
        for &global in &to_total[n] {
            faces[n].push(
                total.faces[n][global]
                    .iter()
                    .map(|f| to_local[n - 1][f])
                    .collect(),
            );
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
        faces.pop();
        to_total.pop();
    }
    let sub = DeltaComplex::new(counts, faces).expect("closed flags extract a valid complex");
    (sub, to_total)
}

/// A two-subcomplex cover `X = U u V`: the combinatorial stand-in for a
/// square inducing excision. Both flag sets must be closed and together
/// reach every simplex; the intersection is derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisiveSquare {
    total: DeltaComplex,
    u_flags: Vec<Vec<bool>>,
    v_flags: Vec<Vec<bool>>,
}

impl ExcisiveSquare {
    pub fn new(
        total: DeltaComplex,
        u_flags: Vec<Vec<bool>>,
        v_flags: Vec<Vec<bool>>,
    ) -> Result<Self, SpaceError> {
        check_flag_shape(&total, &u_flags)?;
        check_flag_shape(&total, &v_flags)?;
        check_closed(&total, &u_flags)?;
        check_closed(&total, &v_flags)?;
        for n in 0..total.counts.len() {
            for s in 0..total.count(n) {
                if !u_flags[n][s] && !v_flags[n][s] {
                    return Err(SpaceError::CoverGap { dim: n, simplex: s });
                }
            }
        }
        Ok(ExcisiveSquare {
            total,
            u_flags,
            v_flags,
        })
    }

    pub fn total(&self) -> &DeltaComplex {
        &self.total
    }

    pub fn u_flags(&self) -> &[Vec<bool>] {
        &self.u_flags
    }

    pub fn v_flags(&self) -> &[Vec<bool>] {
        &self.v_flags
    }

    /// Flags of `U n V`.
    pub fn intersection_flags(&self) -> Vec<Vec<bool>> {
        self.u_flags
            .iter()
            .zip(&self.v_flags)
            .map(|(u, v)| u.iter().zip(v).map(|(a, b)| *a && *b).collect())
            .collect()
    }

    /// The pair `(U, U n V)` inside the extracted subcomplex `U`.
    pub fn u_relative_pair(&self) -> SubcomplexPair {
        relative_pair_inside(&self.total, &self.u_flags, &self.intersection_flags())
    }

    /// The pair `(X, V)`.
    pub fn v_pair(&self) -> SubcomplexPair {
        SubcomplexPair::new(self.total.clone(), self.v_flags.clone())
            .expect("cover flags are closed")
    }
}

/// Builds the pair `(A, B)` for closed `B` inside closed `A` as a pair on
/// the extracted complex of `A`.
fn relative_pair_inside(
    total: &DeltaComplex,
    outer: &[Vec<bool>],
    inner: &[Vec<bool>],
) -> SubcomplexPair {
    let (sub, to_total) = extract(total, outer);
    let flags: Vec<Vec<bool>> = (0..sub.counts.len())
        .map(|n| to_total[n].iter().map(|&global| inner[n][global]).collect())
        .collect();
    SubcomplexPair::new(sub, flags).expect("intersection of closed flag sets is closed")
}

/// Image of one simplex under a simplicial map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexImage {
    /// An honest simplex of the same dimension in the target.
    Simplex(usize),
    /// The simplex is crushed to lower dimension; its chain image is zero.
    Collapsed,
}

/// A dimension-preserving, face-commuting assignment of simplices, with an
/// explicit collapse marker for dimension-crushing behavior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: DeltaComplex,
    target: DeltaComplex,
    images: Vec<Vec<SimplexImage>>,
}

impl SimplicialMap {
    pub fn new(
        source: DeltaComplex,
        target: DeltaComplex,
        images: Vec<Vec<SimplexImage>>,
    ) -> Result<Self, SpaceError> {
        if images.len() != source.counts.len() {
            return Err(SpaceError::AssignmentShape { dim: images.len() });
        }
        for (n, row) in images.iter().enumerate() {
            if row.len() != source.count(n) {
                return Err(SpaceError::AssignmentShape { dim: n });
            }
            for (s, image) in row.iter().enumerate() {
                if let SimplexImage::Simplex(t) = image {
                    if *t >= target.count(n) {
                        return Err(SpaceError::NotSimplicial { dim: n, simplex: s });
                    }
                }
            }
        }
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        map.validate_faces()?;
        Ok(map)
    }

    fn validate_faces(&self) -> Result<(), SpaceError> {
        // honest images must commute with faces on the nose
        for n in 1..self.source.counts.len() {
            for s in 0..self.source.count(n) {
                if let SimplexImage::Simplex(t) = self.images[n][s] {
                    for i in 0..=n {
                        let face_of_image = self.target.face(n, t, i);
                        match self.images[n - 1][self.source.face(n, s, i)] {
                            SimplexImage::Simplex(u) if u == face_of_image => {}
                            _ => return Err(SpaceError::NotSimplicial { dim: n, simplex: s }),
                        }
                    }
                }
            }
        }
        // collapsed images must still commute at chain level: the signed
        // face images have to cancel
        for n in 1..self.source.counts.len() {
            for s in 0..self.source.count(n) {
                if self.images[n][s] == SimplexImage::Collapsed {
                    let mut sums: HashMap<usize, BigInt> = HashMap::new();
                    for i in 0..=n {
                        if let SimplexImage::Simplex(u) =
                            self.images[n - 1][self.source.face(n, s, i)]
                        {
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            *sums.entry(u).or_default() += BigInt::from(sign);
                        }
                    }
                    if sums.values().any(|c| !num_traits::Zero::is_zero(c)) {
                        return Err(SpaceError::NotSimplicial { dim: n, simplex: s });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &DeltaComplex) -> Self {
        let images = (0..x.counts.len())
            .map(|n| (0..x.count(n)).map(SimplexImage::Simplex).collect())
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            images,
        }
    }

    /// The map crushing everything to one vertex of the target.
    pub fn constant(
        source: &DeltaComplex,
        target: &DeltaComplex,
        vertex: usize,
    ) -> Result<Self, SpaceError> {
        if vertex >= target.count(0) {
            return Err(SpaceError::MissingBasepoint(vertex));
        }
        let images = (0..source.counts.len())
            .map(|n| {
                (0..source.count(n))
                    .map(|_| {
                        if n == 0 {
                            SimplexImage::Simplex(vertex)
                        } else {
                            SimplexImage::Collapsed
                        }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &DeltaComplex {
        &self.source
    }

    pub fn target(&self) -> &DeltaComplex {
        &self.target
    }

    pub fn image(&self, n: usize, s: usize) -> SimplexImage {
        self.images
            .get(n)
            .and_then(|row| row.get(s).copied())
            .unwrap_or(SimplexImage::Collapsed)
    }

    /// `self . inner` (right-to-left); collapses propagate.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap, SpaceError> {
        let images = (0..inner.source.counts.len())
            .map(|n| {
                (0..inner.source.count(n))
                    .map(|s| match inner.image(n, s) {
                        SimplexImage::Collapsed => SimplexImage::Collapsed,
                        SimplexImage::Simplex(t) => self.image(n, t),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(inner.source.clone(), self.target.clone(), images)
    }

    /// The induced map on chains: an honest image contributes a unit entry,
    /// a collapsed one a zero column.
    pub fn chain_map(&self, ring: RingSpec) -> ChainMap {
        let source_chains = self.source.chain_complex(ring);
        let target_chains = self.target.chain_complex(ring);
        let components: Vec<IntMatrix> = (0..self.source.counts.len())
            .map(|n| {
                let mut comp = IntMatrix::zeros(self.target.count(n), self.source.count(n));
                for s in 0..self.source.count(n) {
                    if let SimplexImage::Simplex(t) = self.images[n][s] {
                        comp[(t, s)] = BigInt::from(1);
                    }
                }
                comp
            })
            .collect();
        ChainMap::new(source_chains, target_chains, components)
            .expect("validated simplicial map commutes at chain level")
    }

    /// Restricts to flagged subcomplexes on both sides. Every flagged source
    /// simplex must land in the flagged part of the target (or collapse).
    pub fn restrict(
        &self,
        source_flags: &[Vec<bool>],
        target_flags: &[Vec<bool>],
    ) -> Result<SimplicialMap, SpaceError> {
        check_flag_shape(&self.source, source_flags)?;
        check_flag_shape(&self.target, target_flags)?;
        check_closed(&self.source, source_flags)?;
        check_closed(&self.target, target_flags)?;
        let (sub_source, src_to_total) = extract(&self.source, source_flags);
        let (sub_target, tgt_to_total) = extract(&self.target, target_flags);
        let mut tgt_to_local: Vec<HashMap<usize, usize>> = Vec::new();
        for row in &tgt_to_total {
            tgt_to_local.push(row.iter().enumerate().map(|(l, &g)| (g, l)).collect());
        }
        let mut images: Vec<Vec<SimplexImage>> = Vec::with_capacity(sub_source.counts.len());
        for n in 0..sub_source.counts.len() {
            let mut row = Vec::with_capacity(sub_source.count(n));
            for (local, &global) in src_to_total[n].iter().enumerate() {
                let image = match self.image(n, global) {
                    SimplexImage::Collapsed => SimplexImage::Collapsed,
                    SimplexImage::Simplex(t) => match tgt_to_local.get(n).and_then(|m| m.get(&t)) {
                        Some(&l) => SimplexImage::Simplex(l),
                        None => {
                            return Err(SpaceError::NotSubcomplexPreserving {
                                dim: n,
                                simplex: local,
                            })
                        }
                    },
                };
                row.push(image);
            }
            images.push(row);
        }
        SimplicialMap::new(sub_source, sub_target, images)
    }
}
