use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infeasible cache budget: requires mu_r + 3*mu_t >= 1 (got mu_r={mu_r}, mu_t={mu_t})")]
    InfeasibleBudget { mu_r: String, mu_t: String },

    #[error("value {0} is outside the domain of this curve")]
    OutOfDomain(String),

    #[error("demand vector must contain three distinct file indices")]
    NonDistinctDemand,

    #[error("file size {file_size} is not a multiple of {required}; subfile lengths must be integral")]
    IndivisibleFileSize { file_size: usize, required: usize },

    #[error("receiver {receiver} failed to decode bits [{start}, {end}) of its demanded file")]
    DecodeFailure { receiver: usize, start: usize, end: usize },

    #[error("no feasible basis exists for the linear program")]
    NoFeasibleBasis,
}

pub type Result<T> = std::result::Result<T, Error>;
