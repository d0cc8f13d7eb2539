use std::fmt;

use puiseux::classify::ClassifyError;
use puiseux::exact::ExactError;
use puiseux::factor::FactorError;
use puiseux::model::ModelError;
use puiseux::numsg::NumsgError;
use serde_json::{json, Value};

/// Exit status for malformed input.
pub const EXIT_SYNTAX: i32 = 2;
/// Exit status for well-formed input outside an operation's domain.
pub const EXIT_DOMAIN: i32 = 1;

/// A failure with a stable code, printed on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub position: Option<usize>,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
            position: None,
        }
    }

    fn at(mut self, position: usize) -> CliError {
        self.position = Some(position);
        self
    }

    pub fn not_finitely_generated(what: &str) -> CliError {
        CliError::new(
            "E-NOT-FINITELY-GENERATED",
            format!("{what} needs a finitely generated monoid"),
        )
    }

    pub fn exit_code(&self) -> i32 {
        match self.code {
            "E-USAGE" | "E-SYNTAX" | "E-INVALID-MONOID" | "E-NEGATIVE" => EXIT_SYNTAX,
            _ => EXIT_DOMAIN,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.code, "message": self.message });
        if let Some(p) = self.position {
            v["position"] = json!(p);
        }
        v
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> CliError {
        let message = e.to_string();
        let err = match e {
            ModelError::Syntax { .. } => CliError::new("E-SYNTAX", message),
            ModelError::Validation { .. } => CliError::new("E-INVALID-MONOID", message),
            ModelError::NegativeGenerator { .. } => CliError::new("E-NEGATIVE", message),
            ModelError::MixedSignsGeneratesGroup | ModelError::ZeroValue => {
                CliError::new("E-INVALID-MONOID", message)
            }
        };
        match e.position() {
            Some(p) => err.at(p),
            None => err,
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> CliError {
        let message = e.to_string();
        match e {
            ExactError::Syntax { position, .. } => CliError::new("E-SYNTAX", message).at(position),
            ExactError::ZeroDenominator => CliError::new("E-SYNTAX", message),
            ExactError::NegativeValue(_) => CliError::new("E-NEGATIVE", message),
            ExactError::NotPrime(_) => CliError::new("E-NOT-PRIME", message),
            ExactError::FactorizationLimit(_) => CliError::new("E-TOO-LARGE", message),
        }
    }
}

impl From<NumsgError> for CliError {
    fn from(e: NumsgError) -> CliError {
        let code = match e {
            NumsgError::NotAMember(_) => "E-NOT-MEMBER",
            NumsgError::EmbeddingDimension { .. } => "E-EMBEDDING-DIMENSION",
            NumsgError::TooManyFactorizations(_) => "E-SEARCH-LIMIT",
            NumsgError::TooLarge(_) => "E-TOO-LARGE",
            NumsgError::NoGenerators | NumsgError::NonPositive => "E-INVALID-MONOID",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> CliError {
        match e {
            FactorError::Exact(inner) => inner.into(),
            FactorError::Numsg(inner) => inner.into(),
            FactorError::NotAMember(_) => CliError::new("E-NOT-MEMBER", e.to_string()),
            FactorError::NonSquarefreeDenominator(_) => {
                CliError::new("E-NOT-SQUAREFREE", e.to_string())
            }
            FactorError::SearchLimit(_) => CliError::new("E-SEARCH-LIMIT", e.to_string()),
            FactorError::Unsupported(_) => CliError::new("E-UNSUPPORTED", e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> CliError {
        CliError::new("E-CONTRADICTION", e.to_string())
    }
}
