//! An exact-arithmetic homology engine.
//!
//! `steenrod` computes ordinary homology of combinatorial spaces (delta
//! complexes, CW complexes with incidence matrices, finite posets) over
//! `Z`, `Q`, `F_p` and `Z/m`, and mechanically certifies the structural
//! identities of homology on that corpus: the point axiom, homotopy
//! invariance, excision and additivity, together with Mayer-Vietoris
//! sequences, long exact sequences of pairs and the cellular complex of a
//! good filtration. Every answer is exact: the computational substrate is
//! Smith normal form over arbitrary-precision integers, and every
//! exactness or isomorphism claim ships with a Smith-certified witness
//! rather than a rank count.
//!
//! The layers, bottom up:
//!
//! * [`matrix`], [`mod@snf`], [`module`]: integer matrices, the Smith
//!   decomposition with tracked inverses, exact solvers and kernels, and
//!   finitely generated modules in invariant-factor form.
//! * [`complex`], [`mod@homology`], [`ses`]: chain complexes and maps, cones,
//!   homology with canonical cycle representatives, induced maps,
//!   coefficients plus the universal-coefficient oracle, snake-lemma
//!   connecting maps and certified long exact sequences.
//! * [`delta`], [`mod@cylinder`], [`cw`], [`poset`], [`builders`],
//!   [`filtration`]: the combinatorial space models and the golden corpus.
//! * [`exactness`], [`axioms`]: pair sequences, Mayer-Vietoris, excision
//!   comparisons, reduced homology, and the verification harness with its
//!   cellular homology engine.
//! * [`corpus`]: the JSON ingestion format behind the `steenrod` CLI.
//!
//! The narrative guide lives in `book/` and doubles as this crate's
//! doc-tests (see [`guide`]).

pub mod axioms;
pub mod builders;
pub mod complex;
pub mod corpus;
pub mod cw;
pub mod cylinder;
pub mod delta;
pub mod error;
pub mod exactness;
pub mod filtration;
pub mod guide;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod poset;
pub mod ring;
pub mod ses;
pub mod snf;

pub use axioms::{
    cellular_complex, check_additivity, check_homotopy_invariance, check_homotopy_invariance_pair,
    check_point_axiom, compare_cellular_vs_direct, compare_cellular_with_map, degree, full_report,
    relative_boundary, validate_good_filtration, AxiomReport, CellularComparison,
    GoodFiltrationReport,
};
pub use complex::{ChainComplex, ChainMap};
pub use corpus::{
    parse_corpus, parse_corpus_str, parse_module_spec, CorpusFile, CorpusItem, CorpusObject,
};
pub use cw::CwComplex;
pub use cylinder::{cylinder, cylinder_pair, Cylinder};
pub use delta::{DeltaComplex, ExcisiveSquare, SimplexImage, SimplicialMap, SubcomplexPair};
pub use error::*;
pub use exactness::{
    excision_compare, mayer_vietoris, mayer_vietoris_ses, mv_naturality_check, pair_homology,
    pair_les, reduced_consistency, reduced_homology, relative_chain_map, space_homology,
    ExcisionReport, NaturalityReport,
};
pub use filtration::Filtration;
pub use homology::{homology, homology_with_coefficients, induced_map, uct_oracle, GradedModule};
pub use matrix::IntMatrix;
pub use module::{cokernel, is_exact_at, FgModule, ModuleMap};
pub use poset::FinitePoset;
pub use ring::RingSpec;
pub use ses::{
    connecting_homomorphism, les_from_ses, les_from_ses_labeled, LongExactSequence, SesHomology,
    ShortExactSeqOfComplexes,
};
pub use snf::{kernel_basis, snf, solve, SnfResult, Solution};

#[cfg(test)]
mod concurrency {
    use super::*;

    fn value_type<T: Send + Sync + Clone>() {}

    /// Every value in the engine is immutable after construction and free
    /// of interior mutability, so sharing across threads is safe.
    #[test]
    fn engine_values_are_send_and_sync() {
        value_type::<IntMatrix>();
        value_type::<SnfResult>();
        value_type::<FgModule>();
        value_type::<ModuleMap>();
        value_type::<ChainComplex>();
        value_type::<ChainMap>();
        value_type::<GradedModule>();
        value_type::<ShortExactSeqOfComplexes>();
        value_type::<LongExactSequence>();
        value_type::<DeltaComplex>();
        value_type::<SubcomplexPair>();
        value_type::<ExcisiveSquare>();
        value_type::<SimplicialMap>();
        value_type::<CwComplex>();
        value_type::<FinitePoset>();
        value_type::<Filtration>();
        value_type::<CorpusFile>();
    }
}
