use std::fmt;

use thiserror::Error;

/// Identifier of a tower validation rule. The string form is what the CLI
/// prints next to a rejected curve document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    PNotPrime,
    PEven,
    EmptyTower,
    StepDegree,
    AdditivePower,
    Separability,
    EmptyRhs,
    RhsArity,
    ExponentBound,
    ZeroCoefficient,
    DuplicateMonomial,
    JumpNotCoprime,
    JumpsNotIncreasing,
    Overflow,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::PNotPrime => "p-not-prime",
            Rule::PEven => "p-even",
            Rule::EmptyTower => "empty-tower",
            Rule::StepDegree => "step-degree",
            Rule::AdditivePower => "additive-power",
            Rule::Separability => "separability",
            Rule::EmptyRhs => "empty-rhs",
            Rule::RhsArity => "rhs-arity",
            Rule::ExponentBound => "exponent-bound",
            Rule::ZeroCoefficient => "zero-coefficient",
            Rule::DuplicateMonomial => "duplicate-monomial",
            Rule::JumpNotCoprime => "jump-not-coprime",
            Rule::JumpsNotIncreasing => "jumps-not-increasing",
            Rule::Overflow => "overflow",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// A tower document violates one of the tower constraints.
    #[error("{}{rule}: {detail}", .step.map(|s| format!("step {s}: ")).unwrap_or_default())]
    Validation {
        step: Option<usize>,
        rule: Rule,
        detail: String,
    },

    /// Shape mismatch between arguments (tuple lengths, levels).
    #[error("structural error: {0}")]
    Structural(String),

    /// A derived quantity contradicts a property that holds for every valid
    /// tower; the input is not an HKG tower.
    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("ambiguous initial term: {0}")]
    AmbiguousInitial(String),

    #[error("Petri preconditions unmet: {0}")]
    PetriUnmet(String),

    #[error("precondition fault: {0}")]
    Precondition(String),

    #[error("Φ bijection failure: {0}")]
    PhiBijection(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(step: Option<usize>, rule: Rule, detail: impl Into<String>) -> Self {
        Error::Validation {
            step,
            rule,
            detail: detail.into(),
        }
    }

    /// Process exit status for this error: 3 for I/O and parse failures,
    /// 2 for failed certification, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse(_) => 3,
            Error::AmbiguousInitial(_) | Error::PhiBijection(_) => 2,
            _ => 1,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Error::Validation { rule, .. } => Some(*rule),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
