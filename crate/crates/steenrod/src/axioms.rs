//! The axiom verification harness and the cellular homology engine.
//!
//! Each check certifies a structural identity of homology on concrete
//! inputs (point axiom, homotopy invariance through explicit cylinders,
//! additivity of disjoint unions, excision, good filtrations and the
//! cellular complex) and returns witness data rather than a bare boolean.
//! [`full_report`] runs the whole battery over a parsed corpus and is the
//! engine behind the `verify-axioms` command.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::complex::{ChainComplex, ChainMap};
use crate::corpus::{CorpusFile, CorpusObject};
use crate::cylinder::{cylinder, cylinder_pair};
use crate::delta::{DeltaComplex, SimplicialMap, SubcomplexPair};
use crate::error::AxiomError;
use crate::exactness::{
    excision_compare, mayer_vietoris, pair_homology, pair_les, reduced_consistency,
    relative_chain_map, space_homology,
};
use crate::filtration::Filtration;
use crate::homology::{homology, induced_map, GradedModule};
use crate::matrix::IntMatrix;
use crate::module::{FgModule, ModuleMap};
use crate::ring::RingSpec;
use crate::ses::{connecting_homomorphism, SesHomology, ShortExactSeqOfComplexes};
use crate::snf::snf;

/// Point axiom: `H_0(pt)` is the coefficient object and the higher groups
/// vanish.
#[derive(Debug, Clone)]
pub struct PointAxiomReport {
    pub ring: RingSpec,
    pub h0: FgModule,
    pub expected: FgModule,
    pub higher_vanish: bool,
}

impl PointAxiomReport {
    pub fn passed(&self) -> bool {
        self.h0 == self.expected && self.higher_vanish
    }
}

pub fn check_point_axiom(ring: RingSpec) -> PointAxiomReport {
    let h = space_homology(&DeltaComplex::point(), ring);
    PointAxiomReport {
        ring,
        h0: h.module(0),
        expected: FgModule::coefficient(ring),
        higher_vanish: (1..=5).all(|n| h.module(n).is_zero()),
    }
}

/// Homotopy invariance witnessed by a cylinder: the projection induces
/// isomorphisms and the two end inclusions agree on homology.
#[derive(Debug, Clone)]
pub struct HomotopyReport {
    pub degrees: Vec<HomotopyDegree>,
}

#[derive(Debug, Clone)]
pub struct HomotopyDegree {
    pub degree: usize,
    pub projection_iso: bool,
    pub ends_agree: bool,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.projection_iso && d.ends_agree)
    }
}

pub fn check_homotopy_invariance(
    x: &DeltaComplex,
    ring: RingSpec,
) -> Result<HomotopyReport, AxiomError> {
    let cyl = cylinder(x);
    let p = cyl.projection.chain_map(ring);
    let i0 = cyl.bottom.chain_map(ring);
    let i1 = cyl.top.chain_map(ring);
    let h_cyl = homology(p.source());
    let h_x = homology(p.target());
    let top = cyl.space.dimension() + 1;
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let proj = induced_map(&p, &h_cyl, &h_x, n)?;
        let bottom = induced_map(&i0, &h_x, &h_cyl, n)?;
        let top_incl = induced_map(&i1, &h_x, &h_cyl, n)?;
        degrees.push(HomotopyDegree {
            degree: n,
            projection_iso: proj.is_isomorphism(),
            ends_agree: bottom == top_incl,
        });
    }
    Ok(HomotopyReport { degrees })
}

/// The relative version, on the quotient complexes of the cylinder pair.
pub fn check_homotopy_invariance_pair(
    pair: &SubcomplexPair,
    ring: RingSpec,
) -> Result<HomotopyReport, AxiomError> {
    let (cyl, cyl_pair) = cylinder_pair(pair)?;
    let p = relative_chain_map(&cyl.projection, &cyl_pair, pair, ring)?;
    let i0 = relative_chain_map(&cyl.bottom, pair, &cyl_pair, ring)?;
    let i1 = relative_chain_map(&cyl.top, pair, &cyl_pair, ring)?;
    let h_cyl = homology(p.source());
    let h_x = homology(p.target());
    let top = cyl.space.dimension() + 1;
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let proj = induced_map(&p, &h_cyl, &h_x, n)?;
        let bottom = induced_map(&i0, &h_x, &h_cyl, n)?;
        let top_incl = induced_map(&i1, &h_x, &h_cyl, n)?;
        degrees.push(HomotopyDegree {
            degree: n,
            projection_iso: proj.is_isomorphism(),
            ends_agree: bottom == top_incl,
        });
    }
    Ok(HomotopyReport { degrees })
}

/// Additivity of a disjoint union: the summand inclusions induce an
/// isomorphism from the direct sum, and `H_i(Y) = H_i(X u Y, X)`.
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub degrees: Vec<AdditivityDegree>,
}

#[derive(Debug, Clone)]
pub struct AdditivityDegree {
    pub degree: usize,
    pub sum_matches: bool,
    pub inclusions_surject: bool,
    pub kappa_iso: bool,
}

impl AdditivityReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.sum_matches && d.inclusions_surject && d.kappa_iso)
    }
}

pub fn check_additivity(
    pieces: &[&DeltaComplex],
    ring: RingSpec,
) -> Result<AdditivityReport, AxiomError> {
    let (union, inclusions) = DeltaComplex::disjoint_union(pieces)?;
    let h_union = space_homology(&union, ring);
    let piece_homology: Vec<GradedModule> =
        pieces.iter().map(|x| space_homology(x, ring)).collect();
    let top = union.dimension() + 1;

    // kappa: the last summand relative to the union of the others
    let kappa_maps: Option<Vec<ModuleMap>> = if pieces.len() >= 2 {
        let last = pieces.len() - 1;
        let mut rest_flags = union.blank_flags();
        for (k, incl) in inclusions.iter().enumerate().take(last) {
            for n in 0..pieces[k].counts().len() {
                for s in 0..pieces[k].count(n) {
                    if let crate::delta::SimplexImage::Simplex(t) = incl.image(n, s) {
                        rest_flags[n][t] = true;
                    }
                }
            }
        }
        let union_pair = SubcomplexPair::new(union.clone(), rest_flags)?;
        let piece_pair = SubcomplexPair::empty_subspace(pieces[last].clone());
        let quotient_map = relative_chain_map(&inclusions[last], &piece_pair, &union_pair, ring)?;
        let h_piece = homology(quotient_map.source());
        let h_rel = homology(quotient_map.target());
        let mut maps = Vec::with_capacity(top + 1);
        for n in 0..=top {
            maps.push(induced_map(&quotient_map, &h_piece, &h_rel, n)?);
        }
        Some(maps)
    } else {
        None
    };

    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        // abstract equality of the canonical direct sum
        let mut sum = FgModule::zero(ring);
        for h in &piece_homology {
            sum = sum.direct_sum(&h.module(n))?;
        }
        let sum_matches = sum == h_union.module(n);

        // the stacked inclusion-induced matrix must hit every generator;
        // together with the module equality this certifies the canonical
        // map is an isomorphism
        let mut blocks: Vec<IntMatrix> = Vec::new();
        for (k, incl) in inclusions.iter().enumerate() {
            let chain = incl.chain_map(ring);
            let map = induced_map(&chain, &piece_homology[k], &h_union, n)?;
            blocks.push(map.matrix().clone());
        }
        let mut stacked = IntMatrix::zeros(h_union.module(n).generator_count(), 0);
        for b in &blocks {
            stacked = stacked
                .hstack(b)
                .map_err(crate::error::ComplexError::from)
                .map_err(crate::error::HomologyError::from)?;
        }
        let with_relations = stacked
            .hstack(&relation_matrix_of(&h_union.module(n)))
            .map_err(crate::error::ComplexError::from)
            .map_err(crate::error::HomologyError::from)?;
        let decomp = snf(&with_relations);
        let inclusions_surject = decomp.rank() == h_union.module(n).generator_count()
            && decomp.invariant_factors.iter().all(num_traits::One::is_one);

        let kappa_iso = match &kappa_maps {
            Some(maps) => maps[n].is_isomorphism(),
            None => true,
        };
        degrees.push(AdditivityDegree {
            degree: n,
            sum_matches,
            inclusions_surject,
            kappa_iso,
        });
    }
    Ok(AdditivityReport { degrees })
}

fn relation_matrix_of(module: &FgModule) -> IntMatrix {
    let gens = module.generator_count();
    let orders: Vec<(usize, BigInt)> = (0..gens)
        .filter_map(|i| module.generator_order(i).map(|o| (i, o)))
        .collect();
    let mut rel = IntMatrix::zeros(gens, orders.len());
    for (j, (i, o)) in orders.iter().enumerate() {
        rel[(*i, j)] = o.clone();
    }
    rel
}

/// Verdict of the three good-filtration conditions at one stage.
#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: usize,
    /// relative homology concentrated in the stage degree (or trivial)
    pub concentrated: bool,
    /// `H_i(X_p) = 0` for `i > p`
    pub vanishing_above: bool,
    /// `H_i(X_p) = H_i(X)` for `i < p`, induced by the inclusion
    pub stable_below: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct GoodFiltrationReport {
    pub stages: Vec<StageReport>,
}

impl GoodFiltrationReport {
    pub fn is_good(&self) -> bool {
        self.stages
            .iter()
            .all(|s| s.concentrated && s.vanishing_above && s.stable_below)
    }
}

pub fn validate_good_filtration(
    filtration: &Filtration,
    ring: RingSpec,
) -> Result<GoodFiltrationReport, AxiomError> {
    let total_h = space_homology(filtration.total(), ring);
    let top = filtration.total().dimension() + 1;
    let mut stages = Vec::with_capacity(filtration.len());
    for p in 0..filtration.len() {
        let mut failures = Vec::new();
        let pair = filtration.stage_pair(p);
        let relative = pair_homology(&pair, ring);
        let mut concentrated = true;
        for i in 0..=top {
            if i != p && !relative.module(i).is_zero() {
                concentrated = false;
                failures.push(format!(
                    "H_{i}(X_{p}, X_{}) = {} is nonzero",
                    p.wrapping_sub(1),
                    relative.module(i)
                ));
            }
        }
        let stage_inclusion = filtration.stage_to_total(p).chain_map(ring);
        let stage_h = homology(stage_inclusion.source());
        let mut vanishing_above = true;
        for i in p + 1..=top {
            if !stage_h.module(i).is_zero() {
                vanishing_above = false;
                failures.push(format!("H_{i}(X_{p}) = {} is nonzero", stage_h.module(i)));
            }
        }
        let mut stable_below = true;
        for i in 0..p.min(top + 1) {
            let comparison = induced_map(&stage_inclusion, &stage_h, &total_h, i)?;
            if !comparison.is_isomorphism() {
                stable_below = false;
                failures.push(format!(
                    "H_{i}(X_{p}) = {} does not map isomorphically onto H_{i}(X) = {}",
                    stage_h.module(i),
                    total_h.module(i)
                ));
            }
        }
        stages.push(StageReport {
            stage: p,
            concentrated,
            vanishing_above,
            stable_below,
            failures,
        });
    }
    Ok(GoodFiltrationReport { stages })
}

/// The pair sequences of all stages, computed once.
pub(crate) struct FiltrationAnalysis {
    pub ses: Vec<ShortExactSeqOfComplexes>,
    pub h: Vec<SesHomology>,
}

pub(crate) fn analyze_filtration(filtration: &Filtration, ring: RingSpec) -> FiltrationAnalysis {
    let ses: Vec<ShortExactSeqOfComplexes> = (0..filtration.len())
        .map(|p| filtration.stage_pair(p).chain_ses(ring))
        .collect();
    let h = ses.iter().map(|s| s.homology()).collect();
    FiltrationAnalysis { ses, h }
}

/// The composite boundary `H_i(X_p, X_{p-1}) -> H_{i-1}(X_{p-1}) ->
/// H_{i-1}(X_{p-1}, X_{p-2})` for an arbitrary filtration: connecting map
/// followed by the quotient projection. Consecutive composites vanish for
/// every filtration, good or not; the test suite asserts this on random
/// growth filtrations.
pub fn relative_boundary(
    filtration: &Filtration,
    ring: RingSpec,
    p: usize,
    i: usize,
) -> Result<ModuleMap, AxiomError> {
    assert!(p >= 1, "the boundary leaves the lowest stage");
    let analysis = analyze_filtration(filtration, ring);
    relative_boundary_from(&analysis, p, i)
}

fn relative_boundary_from(
    analysis: &FiltrationAnalysis,
    p: usize,
    i: usize,
) -> Result<ModuleMap, AxiomError> {
    let connecting = connecting_homomorphism(&analysis.ses[p], &analysis.h[p], i)?;
    if i == 0 {
        // boundary out of degree zero is the zero map into the zero module
        return Ok(connecting);
    }
    let beta = induced_map(
        analysis.ses[p - 1].projection(),
        &analysis.h[p - 1].middle,
        &analysis.h[p - 1].right,
        i - 1,
    )?;
    Ok(beta.compose(&connecting)?)
}

/// The cellular chain complex of a good filtration: `C_p` is the free
/// module on the canonical generators of `H_p(X_p, X_{p-1})`, the
/// differential the composite boundary. Torsion in a relative group is a
/// refusal, not a projection.
pub fn cellular_complex(
    filtration: &Filtration,
    ring: RingSpec,
) -> Result<ChainComplex, AxiomError> {
    let report = validate_good_filtration(filtration, ring)?;
    if !report.is_good() {
        let reason = report
            .stages
            .iter()
            .flat_map(|s| s.failures.iter())
            .cloned()
            .collect::<Vec<_>>()
            .join("; ");
        return Err(AxiomError::NotGood { reason });
    }
    let analysis = analyze_filtration(filtration, ring);
    cellular_complex_from(&analysis, filtration, ring)
}

fn cellular_complex_from(
    analysis: &FiltrationAnalysis,
    filtration: &Filtration,
    ring: RingSpec,
) -> Result<ChainComplex, AxiomError> {
    let mut ranks = Vec::with_capacity(filtration.len());
    for p in 0..filtration.len() {
        let module = analysis.h[p].right.module(p);
        ensure_free(&module, p, ring)?;
        ranks.push(module.generator_count());
    }
    let mut diffs = Vec::with_capacity(filtration.len().saturating_sub(1));
    for p in 1..filtration.len() {
        let boundary = relative_boundary_from(analysis, p, p)?;
        diffs.push(boundary.matrix().clone());
    }
    ChainComplex::new(ring, ranks, diffs).map_err(AxiomError::Complex)
}

/// Free over the ring: no torsion over `Z`; every factor equal to `m` over
/// `Z/m`; vector spaces are always free.
fn ensure_free(module: &FgModule, stage: usize, ring: RingSpec) -> Result<(), AxiomError> {
    let torsion: Vec<String> = match ring {
        RingSpec::Integers => module.torsion().iter().map(|t| t.to_string()).collect(),
        RingSpec::Rationals | RingSpec::PrimeField(_) => Vec::new(),
        RingSpec::ModRing(m) => module
            .torsion()
            .iter()
            .filter(|t| **t != BigInt::from(m))
            .map(|t| t.to_string())
            .collect(),
    };
    if torsion.is_empty() {
        Ok(())
    } else {
        Err(AxiomError::CellularTorsion {
            stage,
            torsion,
            ring,
        })
    }
}

/// Degreewise comparison of the cellular computation against the direct
/// simplicial one, with the canonical comparison isomorphism certified
/// whenever the homology representatives live in the matching stages (the
/// skeletal case always does).
#[derive(Debug, Clone)]
pub struct CellularComparison {
    pub degrees: Vec<CellularDegree>,
    /// Comparison maps `H_i(X) -> H_i(cellular)`, when constructible.
    pub comparison_isos: Option<Vec<bool>>,
}

#[derive(Debug, Clone)]
pub struct CellularDegree {
    pub degree: usize,
    pub cellular: FgModule,
    pub direct: FgModule,
}

impl CellularComparison {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.cellular == d.direct)
            && self
                .comparison_isos
                .as_ref()
                .is_none_or(|isos| isos.iter().all(|&b| b))
    }
}

pub fn compare_cellular_vs_direct(
    filtration: &Filtration,
    ring: RingSpec,
) -> Result<CellularComparison, AxiomError> {
    let analysis = analyze_filtration(filtration, ring);
    let cellular = {
        let report = validate_good_filtration(filtration, ring)?;
        if !report.is_good() {
            let reason = report
                .stages
                .iter()
                .flat_map(|s| s.failures.iter())
                .cloned()
                .collect::<Vec<_>>()
                .join("; ");
            return Err(AxiomError::NotGood { reason });
        }
        cellular_complex_from(&analysis, filtration, ring)?
    };
    let h_cellular = homology(&cellular);
    let h_direct = space_homology(filtration.total(), ring);
    let top = (filtration.len() - 1).max(filtration.total().dimension()) + 1;
    let degrees = (0..=top)
        .map(|i| CellularDegree {
            degree: i,
            cellular: h_cellular.module(i),
            direct: h_direct.module(i),
        })
        .collect();
    let comparison_isos = comparison_maps(filtration, &analysis, &h_direct, &h_cellular)?
        .map(|maps| maps.iter().map(ModuleMap::is_isomorphism).collect());
    Ok(CellularComparison {
        degrees,
        comparison_isos,
    })
}

/// The canonical comparison `H_i(X) -> H_i(cellular)`: restrict a cycle to
/// stage `i`, read its relative class, then its class in the homology of
/// the cellular complex. Returns `None` when some representative is not
/// supported on its stage (never for skeletal filtrations).
fn comparison_maps(
    filtration: &Filtration,
    analysis: &FiltrationAnalysis,
    h_direct: &GradedModule,
    h_cellular: &GradedModule,
) -> Result<Option<Vec<ModuleMap>>, AxiomError> {
    let total = filtration.total();
    let mut maps = Vec::new();
    for i in 0..filtration.len() {
        let source = h_direct.module(i);
        let target = h_cellular.module(i);
        let reps = h_direct.representatives(i);
        let mut columns = Vec::with_capacity(reps.cols());
        let stage_pair = filtration.stage_pair(i);
        let (_, to_total) = SubcomplexPair::new(total.clone(), filtration.stage_flags(i).to_vec())
            .expect("validated stage")
            .subcomplex();
        for j in 0..reps.cols() {
            let cycle = reps.column_vec(j);
            // support check: the cycle must live in stage i
            for (s, coeff) in cycle.iter().enumerate() {
                if !num_traits::Zero::is_zero(coeff)
                    && !(i < filtration.len() && filtration.stage_flags(i)[i][s])
                {
                    return Ok(None);
                }
            }
            // rewrite in the local basis of the stage, then project to the
            // quotient by the previous stage
            let empty = Vec::new();
            let stage_locals: &Vec<usize> = to_total.get(i).unwrap_or(&empty);
            let local_cycle: Vec<BigInt> = stage_locals
                .iter()
                .map(|&global| cycle[global].clone())
                .collect();
            let quotient_coords: Vec<BigInt> = local_cycle
                .iter()
                .enumerate()
                .filter(|(local, _)| !stage_pair.is_flagged(i, *local))
                .map(|(_, c)| c.clone())
                .collect();
            let relative_class = analysis.h[i].right.class_coordinates(i, &quotient_coords)?;
            let cellular_class = h_cellular.class_coordinates(i, &relative_class)?;
            columns.push(cellular_class);
        }
        let matrix = IntMatrix::from_columns(target.generator_count(), &columns);
        maps.push(ModuleMap::new(source, target, matrix)?);
    }
    // degrees above the stage range must be trivial on both sides
    for i in filtration.len()..=total.dimension() + 1 {
        if !h_direct.module(i).is_zero() || !h_cellular.module(i).is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(maps))
}

/// Functoriality of the cellular construction: a filtration-preserving map
/// induces a chain map of cellular complexes, and the ladder against the
/// direct computation commutes through the canonical comparison.
#[derive(Debug, Clone)]
pub struct CellularMapReport {
    pub chain_map_commutes: bool,
    pub ladder_commutes: Vec<bool>,
}

impl CellularMapReport {
    pub fn passed(&self) -> bool {
        self.chain_map_commutes && self.ladder_commutes.iter().all(|&b| b)
    }
}

pub fn compare_cellular_with_map(
    map: &SimplicialMap,
    source: &Filtration,
    target: &Filtration,
    ring: RingSpec,
) -> Result<CellularMapReport, AxiomError> {
    if source.len() != target.len() {
        return Err(AxiomError::NotGood {
            reason: "filtrations have different stage counts".into(),
        });
    }
    let src_analysis = analyze_filtration(source, ring);
    let tgt_analysis = analyze_filtration(target, ring);
    let src_cellular = cellular_complex(source, ring)?;
    let tgt_cellular = cellular_complex(target, ring)?;

    // induced components on the relative groups of each stage
    let mut components = Vec::with_capacity(source.len());
    for p in 0..source.len() {
        let restricted = map
            .restrict(source.stage_flags(p), target.stage_flags(p))
            .map_err(AxiomError::Space)?;
        let rel = relative_chain_map(
            &restricted,
            &source.stage_pair(p),
            &target.stage_pair(p),
            ring,
        )?;
        let induced = induced_map(&rel, &src_analysis.h[p].right, &tgt_analysis.h[p].right, p)?;
        components.push(induced.matrix().clone());
    }
    let cellular_chain_map = ChainMap::new(src_cellular.clone(), tgt_cellular.clone(), components);
    let chain_map_commutes = cellular_chain_map.is_ok();

    let mut ladder_commutes = Vec::new();
    if let Ok(cellular_chain_map) = cellular_chain_map {
        let h_src_cell = homology(&src_cellular);
        let h_tgt_cell = homology(&tgt_cellular);
        let h_src = space_homology(source.total(), ring);
        let h_tgt = space_homology(target.total(), ring);
        let src_phi = comparison_maps(source, &src_analysis, &h_src, &h_src_cell)?;
        let tgt_phi = comparison_maps(target, &tgt_analysis, &h_tgt, &h_tgt_cell)?;
        if let (Some(src_phi), Some(tgt_phi)) = (src_phi, tgt_phi) {
            let direct_chain = map.chain_map(ring);
            for i in 0..source.len() {
                let direct = induced_map(&direct_chain, &h_src, &h_tgt, i)?;
                let cellular = induced_map(&cellular_chain_map, &h_src_cell, &h_tgt_cell, i)?;
                let around_top = tgt_phi[i].compose(&direct)?;
                let around_bottom = cellular.compose(&src_phi[i])?;
                ladder_commutes.push(around_top == around_bottom);
            }
        }
    }
    Ok(CellularMapReport {
        chain_map_commutes,
        ladder_commutes,
    })
}

/// The degree of a map between homology `n`-spheres: the unique integer by
/// which it acts on the top homology in canonical generators. Both sides
/// are certified to have `H_n = Z` first.
pub fn degree(map: &SimplicialMap) -> Result<BigInt, AxiomError> {
    let ring = RingSpec::Integers;
    let n = map.source().dimension();
    let chain = map.chain_map(ring);
    let h_src = homology(chain.source());
    let h_tgt = homology(chain.target());
    let line = FgModule::free(ring, 1);
    if h_src.module(n) != line {
        return Err(AxiomError::NotASphere {
            n,
            side: "source".into(),
            found: h_src.module(n).to_string(),
        });
    }
    if h_tgt.module(n) != line {
        return Err(AxiomError::NotASphere {
            n,
            side: "target".into(),
            found: h_tgt.module(n).to_string(),
        });
    }
    let induced = induced_map(&chain, &h_src, &h_tgt, n)?;
    Ok(induced.matrix()[(0, 0)].clone())
}

/// One check's outcome inside a corpus run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub item: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

/// Aggregated verdict over a corpus.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub passed: bool,
    pub warnings: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u128,
}

impl AxiomReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn run_check(
    records: &mut Vec<CheckRecord>,
    item: &str,
    check: &str,
    body: impl FnOnce() -> Result<(bool, String), AxiomError>,
) {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(outcome) => outcome,
        Err(err) => (false, format!("error: {err}")),
    };
    records.push(CheckRecord {
        item: item.to_string(),
        check: check.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    });
}

fn homology_table(h: &GradedModule, top: usize) -> String {
    (0..=top)
        .map(|n| format!("H_{n} = {}", h.module(n)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs the full battery over a corpus: the point axiom once, then every
/// applicable check per item (in corpus order), then additivity across the
/// listed spaces. Any failure flips the aggregate verdict.
///
/// Items are independent; set `STEENROD_THREADS` to process them
/// concurrently. The report order is corpus order either way.
pub fn full_report(corpus: &CorpusFile, ring: RingSpec) -> AxiomReport {
    let start = Instant::now();
    let mut warnings = corpus.warnings.clone();
    let mut checks = Vec::new();

    run_check(&mut checks, "(corpus)", "point-axiom", || {
        let report = check_point_axiom(ring);
        Ok((
            report.passed(),
            format!(
                "H_0(pt) = {}, higher degrees vanish: {}",
                report.h0, report.higher_vanish
            ),
        ))
    });

    for records in run_items(corpus, ring) {
        checks.extend(records);
    }

    let spaces: Vec<&DeltaComplex> = corpus
        .items
        .iter()
        .filter_map(|item| match &item.object {
            CorpusObject::Space(x) => Some(x),
            _ => None,
        })
        .collect();
    if spaces.len() >= 2 {
        run_check(&mut checks, "(corpus)", "additivity", || {
            let report = check_additivity(&spaces, ring)?;
            Ok((
                report.passed(),
                format!("{} summands, both comparisons certified", spaces.len()),
            ))
        });
    }

    if corpus.items.is_empty() {
        warnings.push("corpus contains no items; axioms pass vacuously".to_string());
    }

    let passed = checks.iter().all(|c| c.passed);
    AxiomReport {
        ring: ring.to_string(),
        passed,
        warnings,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn thread_count() -> usize {
    std::env::var("STEENROD_THREADS")
        .ok()
        .and_then(|t| t.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn run_items(corpus: &CorpusFile, ring: RingSpec) -> Vec<Vec<CheckRecord>> {
    let threads = thread_count().min(corpus.items.len().max(1));
    if threads <= 1 {
        return corpus.items.iter().map(|i| item_checks(i, ring)).collect();
    }
    let counter = std::sync::atomic::AtomicUsize::new(0);
    let mut results: Vec<Option<Vec<CheckRecord>>> = vec![None; corpus.items.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(threads);
        for _ in 0..threads {
            handles.push(scope.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let idx = counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if idx >= corpus.items.len() {
                        break;
                    }
                    local.push((idx, item_checks(&corpus.items[idx], ring)));
                }
                local
            }));
        }
        for handle in handles {
            for (idx, records) in handle.join().expect("worker panicked") {
                results[idx] = Some(records);
            }
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every item processed"))
        .collect()
}

fn item_checks(item: &crate::corpus::CorpusItem, ring: RingSpec) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let name = item.name.as_str();
    match &item.object {
        CorpusObject::Space(x) => {
            let top = x.dimension() + 1;
            run_check(&mut checks, name, "homology", || {
                let h = space_homology(x, ring);
                Ok((true, homology_table(&h, top)))
            });
            run_check(&mut checks, name, "homotopy-invariance", || {
                let report = check_homotopy_invariance(x, ring)?;
                Ok((
                    report.passed(),
                    format!("{} degrees checked", report.degrees.len()),
                ))
            });
            run_check(&mut checks, name, "euler-characteristic", || {
                let chains = x.chain_complex(RingSpec::Rationals);
                let h = homology(&chains);
                let chi_chain = chains.euler_characteristic();
                let chi_hom = h.euler_characteristic();
                Ok((
                    chi_chain == chi_hom,
                    format!("chain chi = {chi_chain}, homology chi = {chi_hom}"),
                ))
            });
            run_check(&mut checks, name, "skeletal-filtration", || {
                let filtration = Filtration::skeletal(x);
                let good = validate_good_filtration(&filtration, ring)?;
                if !good.is_good() {
                    return Ok((false, "skeletal filtration is not good".into()));
                }
                let comparison = compare_cellular_vs_direct(&filtration, ring)?;
                Ok((
                    comparison.passed(),
                    "good filtration; cellular homology matches the direct computation".into(),
                ))
            });
            if x.count(0) > 0 {
                run_check(&mut checks, name, "reduced-splitting", || {
                    let ok = reduced_consistency(x, 0, ring)?;
                    Ok((ok, "H_0 splits off one coefficient object".into()))
                });
            }
        }
        CorpusObject::Cells(cw) => {
            run_check(&mut checks, name, "homology", || {
                let h = homology(&cw.chain_complex(ring));
                Ok((true, homology_table(&h, cw.dimension() + 1)))
            });
        }
        CorpusObject::Poset(poset) => {
            run_check(&mut checks, name, "order-complex-homology", || {
                let complex = poset.order_complex();
                let h = space_homology(&complex, ring);
                Ok((true, homology_table(&h, complex.dimension() + 1)))
            });
            if poset.has_minimum() || poset.has_maximum() {
                run_check(&mut checks, name, "extreme-point-acyclicity", || {
                    let complex = poset.order_complex();
                    let h = space_homology(&complex, ring);
                    let acyclic = h.module(0) == FgModule::coefficient(ring)
                        && (1..=complex.dimension() + 1).all(|n| h.module(n).is_zero());
                    Ok((acyclic, "order complex of a cone poset is acyclic".into()))
                });
            }
        }
        CorpusObject::Pair(pair) => {
            run_check(&mut checks, name, "pair-les", || {
                let les = pair_les(pair, ring)?;
                les.certify()?;
                Ok((
                    true,
                    format!("{} terms, exactness certified", les.terms().len()),
                ))
            });
            run_check(&mut checks, name, "relative-routes-agree", || {
                let via_quotient = pair_homology(pair, ring);
                let via_cone = homology(&pair.relative_chain_complex(ring));
                Ok((
                    via_quotient.same_modules(&via_cone),
                    "quotient complex and mapping cone agree".into(),
                ))
            });
            run_check(&mut checks, name, "homotopy-invariance", || {
                let report = check_homotopy_invariance_pair(pair, ring)?;
                Ok((
                    report.passed(),
                    format!("{} degrees checked", report.degrees.len()),
                ))
            });
        }
        CorpusObject::Cover(square) => {
            run_check(&mut checks, name, "mayer-vietoris", || {
                let les = mayer_vietoris(square, ring)?;
                les.certify()?;
                Ok((
                    true,
                    format!("{} terms, exactness certified", les.terms().len()),
                ))
            });
            run_check(&mut checks, name, "excision", || {
                let report = excision_compare(square, ring)?;
                let detail = report
                    .degrees
                    .iter()
                    .map(|d| format!("H_{}: {} -> {}", d.degree, d.from, d.to))
                    .collect::<Vec<_>>()
                    .join(", ");
                Ok((report.all_isomorphisms(), detail))
            });
        }
        CorpusObject::Filt(filtration) => {
            run_check(&mut checks, name, "good-filtration", || {
                let report = validate_good_filtration(filtration, ring)?;
                let detail = if report.is_good() {
                    "all three conditions hold at every stage".to_string()
                } else {
                    report
                        .stages
                        .iter()
                        .flat_map(|s| s.failures.iter())
                        .cloned()
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                Ok((report.is_good(), detail))
            });
            run_check(
                &mut checks,
                name,
                "cellular-vs-direct",
                || match compare_cellular_vs_direct(filtration, ring) {
                    Ok(comparison) => Ok((comparison.passed(), "cellular homology matches".into())),
                    Err(AxiomError::NotGood { reason }) => {
                        Ok((false, format!("not a good filtration: {reason}")))
                    }
                    Err(err) => Err(err),
                },
            );
        }
        CorpusObject::Map(map) => {
            run_check(&mut checks, name, "induced-maps", || {
                let chain = map.chain_map(ring);
                let h_src = homology(chain.source());
                let h_tgt = homology(chain.target());
                let top = map.source().dimension().max(map.target().dimension()) + 1;
                for n in 0..=top {
                    induced_map(&chain, &h_src, &h_tgt, n)?;
                }
                Ok((true, format!("induced maps computed through degree {top}")))
            });
            if ring == RingSpec::Integers {
                let n = map.source().dimension();
                let line = FgModule::free(RingSpec::Integers, 1);
                let src_is_sphere =
                    space_homology(map.source(), RingSpec::Integers).module(n) == line;
                let tgt_is_sphere =
                    space_homology(map.target(), RingSpec::Integers).module(n) == line;
                if src_is_sphere && tgt_is_sphere {
                    run_check(&mut checks, name, "degree", || {
                        let d = degree(map)?;
                        Ok((true, format!("degree {d}")))
                    });
                }
            }
        }
    }
    checks
}
