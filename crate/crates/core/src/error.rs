use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown species '{0}'")]
    UnknownSpecies(String),

    #[error("invalid species definition: {0}")]
    InvalidSpecies(String),

    #[error("species config: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate ground state at alpha = {alpha}: levels n1 = {lower} and n1 = {upper} tie; pick a branch explicitly")]
    DegenerateGroundState {
        alpha: f64,
        lower: String,
        upper: String,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
