use alloc::string::String;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch between context and defined atoms")]
    DomainMismatch,
    #[error("domain must be non-empty")]
    EmptyDomain,
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("atom {0} is outside the universe")]
    AtomOutsideUniverse(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),
    #[error("invalid interpretation of `{symbol}`: {reason}")]
    InvalidInterpretation { symbol: String, reason: String },
    #[error("ill-formed definition: {0}")]
    IllFormed(String),
    #[error("equality cannot head a rule")]
    EqualityHead,
    #[error("rule {0} does not exist")]
    RuleIndex(usize),
    #[error("body of rule {0} is not a disjunction")]
    NotDisjunction(usize),
    #[error("relation size {found} does not match universe size {expected}")]
    RelationSize { expected: usize, found: usize },
    #[error("empty induction step")]
    EmptyStep,
    #[error("{0} is not derivable at the current stage")]
    NotDerivable(String),
    #[error("{0} is already derived")]
    AlreadyDerived(String),
    #[error("stage {0} of the trace is not contained in the next")]
    InvalidTrace(usize),
    #[error("induction exceeded {0} stages")]
    StageLimit(usize),
    #[error("trace does not respect the relation: {atom} derived at stage {stage} before {missing}")]
    NotRespecting {
        atom: String,
        stage: usize,
        missing: String,
    },
    #[error("strict part of the relation contains a cycle through {0}")]
    CyclicOrder(String),
    #[error("no atom can be added under the {0} policy")]
    NoProgress(&'static str),
    #[error("state budget exceeded: more than {0} reachable states")]
    StateBudget(usize),
    #[error("{atom} depends on {size} atoms, above the cap of {cap}")]
    SupportCap {
        atom: String,
        size: usize,
        cap: usize,
    },
    #[error("universe of {size} atoms exceeds the brute-force cap of {cap}")]
    UniverseCap { size: usize, cap: usize },
    #[error("{found} applicable atoms exceed the branching cap of {cap}")]
    BranchingCap { found: usize, cap: usize },
    #[error("fixpoint search exceeded {0} nodes")]
    FixpointBudget(usize),
    #[error("invalid DNF: {0}")]
    Dnf(String),
}

pub type Result<T> = core::result::Result<T, Error>;
