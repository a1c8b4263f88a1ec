use thiserror::Error;

/// Which configured budget was exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resource {
    MemberCells,
    MinSolutionCandidates,
    AccelRounds,
    AccelPoints,
    Nodes,
    Cycles,
    OracleConfigs,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Resource::MemberCells => "membership grid cells",
            Resource::MinSolutionCandidates => "minimal-solution candidates",
            Resource::AccelRounds => "acceleration rounds",
            Resource::AccelPoints => "acceleration points",
            Resource::Nodes => "exploration nodes",
            Resource::Cycles => "elementary cycles",
            Resource::OracleConfigs => "oracle configurations",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: state `{state}` occurs twice among the inputs of a rule")]
    DuplicateInput { line: usize, state: String },

    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },

    #[error("resource limit exceeded: {resource} (limit {limit})")]
    ResourceLimit { resource: Resource, limit: u64 },

    #[error("periodic generator {0} is not in ℕ²")]
    NegativeGenerator(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),
}

impl Error {
    pub fn limit(resource: Resource, limit: u64) -> Self {
        Error::ResourceLimit { resource, limit }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
