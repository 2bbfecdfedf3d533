//! Error types, one per subsystem.

use thiserror::Error;

use crate::ring::RingSpec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime; use Zm:{0} for the composite quotient ring")]
    NotPrime(u64),
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(u64),
    #[error("cannot parse ring `{0}` (expected Z, Q, Fp:<p> or Zm:<m>)")]
    Unparsable(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    Incompatible {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("operation over {0} is not supported here")]
    UnsupportedRing(RingSpec),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("torsion coefficient {0} is below 2")]
    TorsionBelowTwo(String),
    #[error("torsion coefficients violate the divisibility chain at position {0}")]
    BrokenChain(usize),
    #[error("{ring} modules carry no torsion, got {got} torsion coefficients")]
    TorsionOverField { ring: RingSpec, got: usize },
    #[error(
        "map matrix is {rows}x{cols} but target/source have {target_gens}/{source_gens} generators"
    )]
    MapShape {
        rows: usize,
        cols: usize,
        target_gens: usize,
        source_gens: usize,
    },
    #[error("map does not respect torsion: generator {generator} of order {order} maps to an element not killed by it")]
    TorsionNotRespected { generator: usize, order: String },
    #[error("maps over different rings: {0} and {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("cannot compose: inner target has {inner} generators, outer source {outer}")]
    ComposeMismatch { inner: usize, outer: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential d_{degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DifferentialShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("d_{lower} . d_{upper} is nonzero over {ring}")]
    SquareNonzero {
        lower: usize,
        upper: usize,
        ring: RingSpec,
    },
    #[error("chain map component f_{degree} does not commute with the differentials")]
    NotChainMap { degree: usize },
    #[error(
        "chain map component f_{degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
    )]
    ComponentShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("complexes over different rings: {0} and {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("expected a complex over Z, got {0}")]
    NotIntegral(RingSpec),
    #[error("coefficient module must be over Z, got {0}")]
    CoefficientRing(RingSpec),
    #[error("cycle does not lie in the stored cycle lattice at degree {degree}; inputs are inconsistent")]
    RepresentativeExpression { degree: usize },
    #[error("vector length {got} does not match chain rank {expected} at degree {degree}")]
    ChainRank {
        degree: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("inclusion fails to be injective over {ring} at degree {degree}")]
    NotInjective { degree: usize, ring: RingSpec },
    #[error("projection fails to be surjective over {ring} at degree {degree}")]
    NotSurjective { degree: usize, ring: RingSpec },
    #[error("image of inclusion differs from kernel of projection at degree {degree}")]
    MiddleNotExact { degree: usize },
    #[error("projection . inclusion is nonzero at degree {degree}")]
    CompositeNonzero { degree: usize },
    #[error("snake lift failed at degree {degree}: the sequence is not exact there")]
    LiftFailed { degree: usize },
    #[error("assembled sequence fails exactness at term {index} ({label})")]
    NotExactAt { index: usize, label: String },
    #[error("map does not carry the cover pieces into the target cover: {0}")]
    CoverNotPreserved(#[source] SpaceError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("face index {face} of {dim}-simplex {simplex} is out of range (dimension {lower_dim} has {count} simplices)")]
    FaceOutOfRange {
        dim: usize,
        simplex: usize,
        face: usize,
        lower_dim: usize,
        count: usize,
    },
    #[error("{dim}-simplex {simplex} has {got} faces, expected {expected}")]
    FaceCount {
        dim: usize,
        simplex: usize,
        got: usize,
        expected: usize,
    },
    #[error("simplicial identity fails on {dim}-simplex {simplex} at face pair ({i}, {j})")]
    SimplicialIdentity {
        dim: usize,
        simplex: usize,
        i: usize,
        j: usize,
    },
    #[error(
        "subcomplex is not closed: face {face} of flagged {dim}-simplex {simplex} is not flagged"
    )]
    NotClosed {
        dim: usize,
        simplex: usize,
        face: usize,
    },
    #[error("flag table shape does not match the complex")]
    FlagShape,
    #[error("map assignment missing or extra entries at dimension {dim}")]
    AssignmentShape { dim: usize },
    #[error("map does not commute with face maps at {dim}-simplex {simplex}")]
    NotSimplicial { dim: usize, simplex: usize },
    #[error("map sends {dim}-simplex {simplex} outside the designated subcomplex")]
    NotSubcomplexPreserving { dim: usize, simplex: usize },
    #[error("cell complex: D_{lower} . D_{upper} is nonzero")]
    IncidenceSquareNonzero { lower: usize, upper: usize },
    #[error(
        "incidence matrix D_{degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
    )]
    IncidenceShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("relation on ({a}, {b}) breaks antisymmetry")]
    NotAntisymmetric { a: String, b: String },
    #[error("poset relation references unknown element {0}")]
    UnknownElement(String),
    #[error("filtration stage {stage} is not monotone: simplex lost from previous stage")]
    NotMonotone { stage: usize },
    #[error("filtration has no stages")]
    EmptyFiltration,
    #[error("final filtration stage must be the whole complex")]
    LastStageNotTotal,
    #[error("cover does not reach {dim}-simplex {simplex}: neither flag set contains it")]
    CoverGap { dim: usize, simplex: usize },
    #[error("basepoint vertex {0} does not exist")]
    MissingBasepoint(usize),
    #[error("disjoint union of an empty list")]
    EmptyUnion,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AxiomError {
    #[error("filtration is not good: {reason}")]
    NotGood { reason: String },
    #[error("relative homology at stage {stage} has torsion {torsion:?}; the cellular complex over {ring} is refused")]
    CellularTorsion {
        stage: usize,
        torsion: Vec<String>,
        ring: RingSpec,
    },
    #[error("degree is defined only between homology {n}-spheres; {side} has H_{n} = {found}")]
    NotASphere {
        n: usize,
        side: String,
        found: String,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("unsupported format_version {0} (this build reads version 1)")]
    FormatVersion(u32),
    #[error("duplicate item name `{0}`")]
    DuplicateName(String),
    #[error("item `{item}` references unknown item `{reference}`")]
    DanglingReference { item: String, reference: String },
    #[error("item `{item}` must reference a {expected}, but `{reference}` is a {found}")]
    WrongKind {
        item: String,
        reference: String,
        expected: String,
        found: String,
    },
    #[error("item `{item}` is invalid: {source}")]
    InvalidItem {
        item: String,
        #[source]
        source: SpaceError,
    },
    #[error("item `{item}`: unknown builder `{builder}`")]
    UnknownBuilder { item: String, builder: String },
    #[error("no item named `{0}` in the corpus")]
    UnknownItem(String),
    #[error("item `{item}` is a {found}, but the command needs a {expected}")]
    KindMismatch {
        item: String,
        expected: String,
        found: String,
    },
    #[error("cannot parse module spec `{0}` (expected e.g. Z, Z/6, Z^2+Z/2)")]
    ModuleSpec(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
