use thiserror::Error;

/// Errors raised by graph construction, I/O and the budgeted searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("cluster size must be positive")]
    EmptyClusters,

    #[error("{op} needs an even number of vertices, got {order}")]
    OddOrder { op: &'static str, order: usize },

    #[error("{op} supports at most {limit} vertices, got {order}")]
    OrderTooLarge {
        op: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    EdgeNotInGraph(usize, usize),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("{rule}: {detail}")]
    Hypothesis { rule: &'static str, detail: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

impl Error {
    pub(crate) fn hypothesis(rule: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            rule,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for the errors that signal an exhausted search budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
