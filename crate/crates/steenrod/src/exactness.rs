//! Assembled and certified exact sequences: the long exact sequence of a
//! pair, Mayer-Vietoris for subcomplex covers, naturality ladders, excision
//! comparisons, and reduced homology.
//!
//! Failed comparisons are findings, not errors: the harness exists to
//! verify structural identities, so a non-isomorphism comes back as data
//! with the offending degree attached.

use num_bigint::BigInt;

use crate::complex::{ChainComplex, ChainMap};
use crate::delta::{DeltaComplex, ExcisiveSquare, SimplicialMap, SubcomplexPair};
use crate::error::{SequenceError, SpaceError};
use crate::homology::{homology, induced_map, GradedModule};
use crate::matrix::IntMatrix;
use crate::module::FgModule;
use crate::ring::RingSpec;
use crate::ses::{
    connecting_homomorphism, les_from_ses_labeled, LongExactSequence, ShortExactSeqOfComplexes,
};

/// The long exact sequence of the pair `(X, Y)`:
/// `... -> H_n(Y) -> H_n(X) -> H_n(X,Y) -> H_{n-1}(Y) -> ...`,
/// assembled from the chain-level quotient sequence and certified.
pub fn pair_les(pair: &SubcomplexPair, ring: RingSpec) -> Result<LongExactSequence, SequenceError> {
    let ses = pair.chain_ses(ring);
    let top = pair.total().dimension() + 1;
    les_from_ses_labeled(&ses, top, ["Y", "X", "X,Y"])
}

/// The chain-level Mayer-Vietoris sequence of a cover `X = U u V`:
/// `0 -> C(UnV) -> C(U) + C(V) -> C(X) -> 0` with `z -> (z, z)` into the
/// sum and `(a, b) -> a - b` out of it. The cover condition makes the
/// difference map surjective simplex by simplex, so the sequence is exact
/// at chain level and certifies on construction.
pub fn mayer_vietoris_ses(
    square: &ExcisiveSquare,
    ring: RingSpec,
) -> Result<ShortExactSeqOfComplexes, SequenceError> {
    let u_pair = SubcomplexPair::new(square.total().clone(), square.u_flags().to_vec())
        .expect("cover flags are closed");
    let v_pair = SubcomplexPair::new(square.total().clone(), square.v_flags().to_vec())
        .expect("cover flags are closed");

    let u_incl = u_pair.inclusion_chain_map(ring);
    let v_incl = v_pair.inclusion_chain_map(ring);
    let (sum, summand_inclusions) = ChainComplex::direct_sum(&[u_incl.source(), v_incl.source()])?;

    // U n V -> U + V, z -> (z, z)
    let intersection = square.intersection_flags();
    let inter_in_u = restriction_components(square.total(), &intersection, square.u_flags());
    let inter_in_v = restriction_components(square.total(), &intersection, square.v_flags());
    let inter_complex = SubcomplexPair::new(square.total().clone(), intersection)
        .expect("intersection of closed flag sets is closed")
        .subcomplex()
        .0
        .chain_complex(ring);
    let into_sum: Vec<IntMatrix> = (0..inter_complex.len())
        .map(|n| {
            let top_block = summand_inclusions[0]
                .component(n)
                .mul(&inter_in_u[n])
                .expect("shapes agree");
            let bottom_block = summand_inclusions[1]
                .component(n)
                .mul(&inter_in_v[n])
                .expect("shapes agree");
            top_block.add(&bottom_block).expect("same shape")
        })
        .collect();
    let inclusion = ChainMap::new(inter_complex, sum.clone(), into_sum)?;

    // U + V -> X, (a, b) -> a - b
    let total_chains = square.total().chain_complex(ring);
    let difference: Vec<IntMatrix> = (0..sum.len())
        .map(|n| {
            let from_u = u_incl.component(n);
            let from_v = v_incl.component(n).neg();
            from_u.hstack(&from_v).expect("rows agree")
        })
        .collect();
    let projection = ChainMap::new(sum, total_chains, difference)?;

    ShortExactSeqOfComplexes::new(inclusion, projection)
}

/// The certified Mayer-Vietoris long exact sequence
/// `... -> H_n(UnV) -> H_n(U) + H_n(V) -> H_n(X) -> H_{n-1}(UnV) -> ...`.
pub fn mayer_vietoris(
    square: &ExcisiveSquare,
    ring: RingSpec,
) -> Result<LongExactSequence, SequenceError> {
    let ses = mayer_vietoris_ses(square, ring)?;
    let top = square.total().dimension() + 1;
    les_from_ses_labeled(&ses, top, ["UnV", "U+V", "X"])
}

/// Chain-level components of the inclusion of one closed flag set into a
/// larger one, in the local bases of both extractions.
fn restriction_components(
    total: &DeltaComplex,
    inner: &[Vec<bool>],
    outer: &[Vec<bool>],
) -> Vec<IntMatrix> {
    let inner_pair = SubcomplexPair::new(total.clone(), inner.to_vec()).expect("closed");
    let outer_pair = SubcomplexPair::new(total.clone(), outer.to_vec()).expect("closed");
    let (_, inner_to_total) = inner_pair.subcomplex();
    let (outer_sub, outer_to_total) = outer_pair.subcomplex();
    let mut outer_local: Vec<std::collections::HashMap<usize, usize>> = Vec::new();
    for row in &outer_to_total {
        outer_local.push(row.iter().enumerate().map(|(l, &g)| (g, l)).collect());
    }
    (0..inner_to_total.len())
        .map(|n| {
            let mut comp = IntMatrix::zeros(outer_sub.count(n), inner_to_total[n].len());
            for (local, &global) in inner_to_total[n].iter().enumerate() {
                let target = outer_local[n]
                    .get(&global)
                    .expect("inner flags lie inside outer flags");
                comp[(*target, local)] = BigInt::from(1);
            }
            comp
        })
        .collect()
}

/// One commuting-square verdict in a naturality ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck {
    pub degree: usize,
    pub description: String,
    pub commutes: bool,
}

/// Result of comparing two Mayer-Vietoris sequences along a map of covers.
#[derive(Debug, Clone)]
pub struct NaturalityReport {
    pub squares: Vec<SquareCheck>,
}

impl NaturalityReport {
    pub fn all_commute(&self) -> bool {
        self.squares.iter().all(|s| s.commutes)
    }
}

/// Certifies that a simplicial map carrying one cover into another induces
/// a commuting ladder between the two Mayer-Vietoris sequences, connecting
/// homomorphisms included.
pub fn mv_naturality_check(
    map: &SimplicialMap,
    source: &ExcisiveSquare,
    target: &ExcisiveSquare,
    ring: RingSpec,
) -> Result<NaturalityReport, SequenceError> {
    let on_u = map
        .restrict(source.u_flags(), target.u_flags())
        .map_err(SequenceError::CoverNotPreserved)?;
    let on_v = map
        .restrict(source.v_flags(), target.v_flags())
        .map_err(SequenceError::CoverNotPreserved)?;
    let on_inter = map
        .restrict(&source.intersection_flags(), &target.intersection_flags())
        .map_err(SequenceError::CoverNotPreserved)?;

    let src_ses = mayer_vietoris_ses(source, ring)?;
    let tgt_ses = mayer_vietoris_ses(target, ring)?;
    let src_h = src_ses.homology();
    let tgt_h = tgt_ses.homology();

    // ladder rungs: on U n V, on U + V (block diagonal), on X
    let rung_inter = on_inter.chain_map(ring);
    let rung_sum = {
        let u_chain = on_u.chain_map(ring);
        let v_chain = on_v.chain_map(ring);
        let len = src_ses.middle().len().max(tgt_ses.middle().len());
        let components: Vec<IntMatrix> = (0..len)
            .map(|n| IntMatrix::block_diag(&[&u_chain.component(n), &v_chain.component(n)]))
            .collect();
        ChainMap::new(
            src_ses.middle().clone(),
            tgt_ses.middle().clone(),
            components,
        )?
    };
    let rung_total = map.chain_map(ring);

    let top = source.total().dimension().max(target.total().dimension()) + 1;
    let mut squares = Vec::new();
    for n in (0..=top).rev() {
        let src_incl = induced_map(src_ses.inclusion(), &src_h.left, &src_h.middle, n)?;
        let tgt_incl = induced_map(tgt_ses.inclusion(), &tgt_h.left, &tgt_h.middle, n)?;
        let src_proj = induced_map(src_ses.projection(), &src_h.middle, &src_h.right, n)?;
        let tgt_proj = induced_map(tgt_ses.projection(), &tgt_h.middle, &tgt_h.right, n)?;
        let f_inter = induced_map(&rung_inter, &src_h.left, &tgt_h.left, n)?;
        let f_sum = induced_map(&rung_sum, &src_h.middle, &tgt_h.middle, n)?;
        let f_total = induced_map(&rung_total, &src_h.right, &tgt_h.right, n)?;

        squares.push(SquareCheck {
            degree: n,
            description: format!("inclusion square at degree {n}"),
            commutes: tgt_incl.compose(&f_inter)? == f_sum.compose(&src_incl)?,
        });
        squares.push(SquareCheck {
            degree: n,
            description: format!("difference square at degree {n}"),
            commutes: tgt_proj.compose(&f_sum)? == f_total.compose(&src_proj)?,
        });
        if n > 0 {
            let src_conn = connecting_homomorphism(&src_ses, &src_h, n)?;
            let tgt_conn = connecting_homomorphism(&tgt_ses, &tgt_h, n)?;
            let f_inter_below = induced_map(&rung_inter, &src_h.left, &tgt_h.left, n - 1)?;
            squares.push(SquareCheck {
                degree: n,
                description: format!("connecting square at degree {n}"),
                commutes: tgt_conn.compose(&f_total)? == f_inter_below.compose(&src_conn)?,
            });
        }
    }
    Ok(NaturalityReport { squares })
}

/// Per-degree comparison of `H_n(U, UnV)` against `H_n(X, V)`.
#[derive(Debug, Clone)]
pub struct ExcisionReport {
    pub degrees: Vec<ExcisionDegree>,
}

#[derive(Debug, Clone)]
pub struct ExcisionDegree {
    pub degree: usize,
    pub from: FgModule,
    pub to: FgModule,
    pub isomorphism: bool,
}

impl ExcisionReport {
    pub fn all_isomorphisms(&self) -> bool {
        self.degrees.iter().all(|d| d.isomorphism)
    }
}

/// Certifies the excision comparison `H_n(U, UnV) -> H_n(X, V)` induced by
/// the inclusion of pairs, in every degree up to the dimension plus one.
/// A failed isomorphism is reported, not raised.
pub fn excision_compare(
    square: &ExcisiveSquare,
    ring: RingSpec,
) -> Result<ExcisionReport, SequenceError> {
    let u_pair = square.u_relative_pair();
    let x_pair = square.v_pair();
    let from = u_pair.quotient_chain_complex(ring);
    let to = x_pair.quotient_chain_complex(ring);

    // basis of the source quotient: simplices of U outside U n V, in local
    // U-extraction order; the cover puts each of them outside V
    let outer =
        SubcomplexPair::new(square.total().clone(), square.u_flags().to_vec()).expect("closed");
    let (_, u_to_total) = outer.subcomplex();
    let intersection = square.intersection_flags();
    let v_flags = square.v_flags();
    let mut x_quotient_index: Vec<std::collections::HashMap<usize, usize>> = Vec::new();
    for n in 0..square.total().counts().len() {
        let mut map = std::collections::HashMap::new();
        let mut local = 0;
        for s in 0..square.total().count(n) {
            if !v_flags[n][s] {
                map.insert(s, local);
                local += 1;
            }
        }
        x_quotient_index.push(map);
    }
    let components: Vec<IntMatrix> = (0..from.len())
        .map(|n| {
            let mut comp = IntMatrix::zeros(to.rank(n), from.rank(n));
            let mut from_local = 0;
            for &global in &u_to_total[n] {
                if !intersection[n][global] {
                    let target = x_quotient_index[n]
                        .get(&global)
                        .expect("cover: a U-simplex outside UnV is outside V");
                    comp[(*target, from_local)] = BigInt::from(1);
                    from_local += 1;
                }
            }
            comp
        })
        .collect();
    let chain_map = ChainMap::new(from.clone(), to.clone(), components)?;

    let h_from = homology(&from);
    let h_to = homology(&to);
    let top = square.total().dimension() + 1;
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let map = induced_map(&chain_map, &h_from, &h_to, n)?;
        degrees.push(ExcisionDegree {
            degree: n,
            from: h_from.module(n),
            to: h_to.module(n),
            isomorphism: map.is_isomorphism(),
        });
    }
    Ok(ExcisionReport { degrees })
}

/// Reduced homology `H_n(X, pt)` relative to a basepoint vertex.
pub fn reduced_homology(
    x: &DeltaComplex,
    basepoint: usize,
    ring: RingSpec,
) -> Result<GradedModule, SpaceError> {
    let pair = SubcomplexPair::with_basepoint(x.clone(), basepoint)?;
    Ok(homology(&pair.quotient_chain_complex(ring)))
}

/// The splitting `H_0(X) = reduced H_0 + R` and `H_n = reduced H_n` for
/// `n > 0`, checked as exact module equalities.
pub fn reduced_consistency(
    x: &DeltaComplex,
    basepoint: usize,
    ring: RingSpec,
) -> Result<bool, SpaceError> {
    let reduced = reduced_homology(x, basepoint, ring)?;
    let full = homology(&x.chain_complex(ring));
    let split = reduced
        .module(0)
        .direct_sum(&FgModule::coefficient(ring))
        .expect("same ring");
    if full.module(0) != split {
        return Ok(false);
    }
    let top = x.dimension() + 1;
    Ok((1..=top).all(|n| full.module(n) == reduced.module(n)))
}

/// The chain map `C(X)/C(Y) -> C(X')/C(Y')` induced by a simplicial map of
/// pairs. The map must carry the subspace into the subspace; images landing
/// in the target subspace die in the quotient.
pub fn relative_chain_map(
    f: &SimplicialMap,
    source_pair: &SubcomplexPair,
    target_pair: &SubcomplexPair,
    ring: RingSpec,
) -> Result<ChainMap, SpaceError> {
    if source_pair.total() != f.source() || target_pair.total() != f.target() {
        return Err(SpaceError::FlagShape);
    }
    // subspace preservation
    for n in 0..f.source().counts().len() {
        for s in 0..f.source().count(n) {
            if source_pair.is_flagged(n, s) {
                if let crate::delta::SimplexImage::Simplex(t) = f.image(n, s) {
                    if !target_pair.is_flagged(n, t) {
                        return Err(SpaceError::NotSubcomplexPreserving { dim: n, simplex: s });
                    }
                }
            }
        }
    }
    let source_quotient = source_pair.quotient_chain_complex(ring);
    let target_quotient = target_pair.quotient_chain_complex(ring);
    let mut target_index: Vec<std::collections::HashMap<usize, usize>> = Vec::new();
    for n in 0..f.target().counts().len() {
        let mut map = std::collections::HashMap::new();
        let mut local = 0;
        for t in 0..f.target().count(n) {
            if !target_pair.is_flagged(n, t) {
                map.insert(t, local);
                local += 1;
            }
        }
        target_index.push(map);
    }
    let components: Vec<IntMatrix> = (0..f.source().counts().len())
        .map(|n| {
            let mut comp = IntMatrix::zeros(target_quotient.rank(n), source_quotient.rank(n));
            let mut local = 0;
            for s in 0..f.source().count(n) {
                if source_pair.is_flagged(n, s) {
                    continue;
                }
                if let crate::delta::SimplexImage::Simplex(t) = f.image(n, s) {
                    if let Some(&tl) = target_index[n].get(&t) {
                        comp[(tl, local)] = BigInt::from(1);
                    }
                }
                local += 1;
            }
            comp
        })
        .collect();
    Ok(ChainMap::new(source_quotient, target_quotient, components)
        .expect("pair maps induce quotient chain maps"))
}

/// Homology of a space over a ring.
pub fn space_homology(x: &DeltaComplex, ring: RingSpec) -> GradedModule {
    homology(&x.chain_complex(ring))
}

/// Relative homology of a pair, via the quotient complex.
pub fn pair_homology(pair: &SubcomplexPair, ring: RingSpec) -> GradedModule {
    homology(&pair.quotient_chain_complex(ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{
        circle_arc_cover, circle_mgon, disk_pair, mgon_alternating_cover, sphere_disk_cover,
        torus_patch_cover, wrap_map,
    };

    fn free_z(rank: usize) -> FgModule {
        FgModule::free(RingSpec::Integers, rank)
    }

    #[test]
    fn pair_les_of_disk_rel_boundary() {
        let les = pair_les(&disk_pair(2), RingSpec::Integers).unwrap();
        assert_eq!(les.term("H_2(X,Y)"), Some(&free_z(1)));
        assert_eq!(
            les.term("H_1(X,Y)"),
            Some(&FgModule::zero(RingSpec::Integers))
        );
        // the relative class flows through the connecting map onto the
        // boundary circle
        let d = les.map("d: H_2(X,Y) -> H_1(Y)").unwrap();
        assert!(d.is_isomorphism());
    }

    #[test]
    fn pair_les_whole_and_empty() {
        let x = circle_mgon(3).unwrap();
        let whole = SubcomplexPair::whole(x.clone());
        let les = pair_les(&whole, RingSpec::Integers).unwrap();
        for n in 0..=2 {
            assert_eq!(
                les.term(&format!("H_{n}(X,Y)")),
                Some(&FgModule::zero(RingSpec::Integers))
            );
        }
        let empty = SubcomplexPair::empty_subspace(x);
        let les = pair_les(&empty, RingSpec::Integers).unwrap();
        assert_eq!(les.term("H_1(X,Y)"), Some(&free_z(1)));
        assert_eq!(les.term("H_1(X)"), Some(&free_z(1)));
    }

    #[test]
    fn mv_circle_two_arcs() {
        let les = mayer_vietoris(&circle_arc_cover(), RingSpec::Integers).unwrap();
        assert_eq!(les.term("H_1(X)"), Some(&free_z(1)));
        assert_eq!(les.term("H_0(UnV)"), Some(&free_z(2)));
        let d = les.map("d: H_1(X) -> H_0(UnV)").unwrap();
        assert!(!d.is_zero_map());
    }

    #[test]
    fn mv_sphere_two_disks() {
        let les = mayer_vietoris(&sphere_disk_cover(), RingSpec::Integers).unwrap();
        assert_eq!(les.term("H_2(X)"), Some(&free_z(1)));
        assert_eq!(les.term("H_1(UnV)"), Some(&free_z(1)));
        let d = les.map("d: H_2(X) -> H_1(UnV)").unwrap();
        assert!(d.is_isomorphism());
    }

    #[test]
    fn mv_torus_two_patches() {
        let les = mayer_vietoris(&torus_patch_cover(), RingSpec::Integers).unwrap();
        assert_eq!(les.term("H_2(X)"), Some(&free_z(1)));
        assert_eq!(les.term("H_1(X)"), Some(&free_z(2)));
        les.certify().unwrap();
    }

    #[test]
    fn mv_degenerate_cover() {
        // V = X, U = a vertex: the sequence splits trivially
        let x = circle_mgon(2).unwrap();
        let mut u = x.blank_flags();
        u[0][0] = true;
        let square = ExcisiveSquare::new(x.clone(), u, x.full_flags()).unwrap();
        let les = mayer_vietoris(&square, RingSpec::Integers).unwrap();
        les.certify().unwrap();
    }

    #[test]
    fn mv_naturality_for_double_cover() {
        // the wrap map 4-gon -> 2-gon doubles the circle and carries the
        // alternating cover onto the arc cover
        let f = wrap_map(2, 2).unwrap();
        let source = mgon_alternating_cover(2).unwrap();
        let target = circle_arc_cover();
        let report = mv_naturality_check(&f, &source, &target, RingSpec::Integers).unwrap();
        assert!(report.all_commute(), "{:#?}", report.squares);
    }

    #[test]
    fn mv_naturality_identity_and_collapse() {
        let cover = circle_arc_cover();
        let id = SimplicialMap::identity(cover.total());
        let report = mv_naturality_check(&id, &cover, &cover, RingSpec::Integers).unwrap();
        assert!(report.all_commute());
        // collapse to a point with the degenerate cover on the target
        let point = DeltaComplex::point();
        let collapse = SimplicialMap::constant(cover.total(), &point, 0).unwrap();
        let degenerate =
            ExcisiveSquare::new(point.clone(), point.full_flags(), point.full_flags()).unwrap();
        let report =
            mv_naturality_check(&collapse, &cover, &degenerate, RingSpec::Integers).unwrap();
        assert!(report.all_commute());
    }

    #[test]
    fn naturality_rejects_non_cover_preserving_maps() {
        let cover = circle_arc_cover();
        let x = cover.total().clone();
        let mut u = x.blank_flags();
        u[0][0] = true;
        let small = ExcisiveSquare::new(x.clone(), u, x.full_flags()).unwrap();
        let id = SimplicialMap::identity(&x);
        assert!(matches!(
            mv_naturality_check(&id, &cover, &small, RingSpec::Integers),
            Err(SequenceError::CoverNotPreserved(_))
        ));
    }

    #[test]
    fn excision_on_corpus_covers() {
        for square in [circle_arc_cover(), sphere_disk_cover(), torus_patch_cover()] {
            let report = excision_compare(&square, RingSpec::Integers).unwrap();
            assert!(report.all_isomorphisms(), "{:#?}", report.degrees);
        }
    }

    #[test]
    fn excision_excises_a_subdisk() {
        // the disk as a cone over the triangle circle: three triangles
        // around a center vertex; excise the closure of one of them
        let disk = crate::builders::sphere_delta(1).cone();
        assert_eq!(disk.counts(), &[4, 6, 3]);
        let mut v = disk.blank_flags();
        v[2][0] = true;
        let v = disk.close_flags(v);
        let mut u = disk.blank_flags();
        u[2][1] = true;
        u[2][2] = true;
        let u = disk.close_flags(u);
        let square = ExcisiveSquare::new(disk, u, v).unwrap();
        for ring in [RingSpec::Integers, RingSpec::ModRing(4)] {
            let report = excision_compare(&square, ring).unwrap();
            assert!(report.all_isomorphisms(), "{ring}: {:#?}", report.degrees);
        }
    }

    #[test]
    fn excision_identity_cover() {
        // U = X: the comparison is the identity of (X, V)
        let x = circle_mgon(2).unwrap();
        let mut v = x.blank_flags();
        v[0][0] = true;
        let v = x.close_flags(v);
        let square = ExcisiveSquare::new(x.clone(), x.full_flags(), v).unwrap();
        let report = excision_compare(&square, RingSpec::Integers).unwrap();
        assert!(report.all_isomorphisms());
    }

    #[test]
    fn reduced_homology_examples() {
        let ring = RingSpec::Integers;
        let point = DeltaComplex::point();
        let h = reduced_homology(&point, 0, ring).unwrap();
        assert!(h.is_trivial());
        let circle = circle_mgon(3).unwrap();
        let h = reduced_homology(&circle, 0, ring).unwrap();
        assert!(h.module(0).is_zero());
        assert_eq!(h.module(1), free_z(1));
        // two points: reduced H_0 = Z
        let two = crate::builders::sphere_delta(0);
        let h = reduced_homology(&two, 0, ring).unwrap();
        assert_eq!(h.module(0), free_z(1));
        assert!(matches!(
            reduced_homology(&point, 5, ring),
            Err(SpaceError::MissingBasepoint(5))
        ));
    }

    #[test]
    fn reduced_splitting_certified() {
        for ring in [
            RingSpec::Integers,
            RingSpec::ModRing(6),
            RingSpec::PrimeField(3),
        ] {
            for x in [
                DeltaComplex::point(),
                circle_mgon(2).unwrap(),
                crate::builders::rp2_delta(),
                crate::builders::sphere_delta(0),
            ] {
                assert!(reduced_consistency(&x, 0, ring).unwrap(), "ring {ring}");
            }
        }
    }

    #[test]
    fn connecting_survives_perturbed_lifts() {
        use crate::ses::connecting_with_offsets;
        // over Z/4 the lift of a relative 2-class on (D^2, S^1) can be
        // shifted by multiples of the modulus
        let pair = disk_pair(2);
        let ses = pair.chain_ses(RingSpec::ModRing(4));
        let h = ses.homology();
        let canonical = connecting_homomorphism(&ses, &h, 2).unwrap();
        let middle_rank = ses.middle().rank(2);
        let offsets = vec![(
            vec![BigInt::from(0); ses.left().rank(2)],
            (0..middle_rank)
                .map(|i| BigInt::from(i as i64 + 3))
                .collect(),
        )];
        let perturbed = connecting_with_offsets(&ses, &h, 2, &offsets).unwrap();
        assert_eq!(canonical, perturbed);
    }
}
