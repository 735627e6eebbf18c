use std::io;
use std::path::PathBuf;

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A node id does not exist in the graph it was used with.
    #[error("node id {id} out of range for a graph with {nodes} nodes")]
    InvalidNode {
        /// The offending id.
        id: usize,
        /// Node count of the graph.
        nodes: usize,
    },

    /// A label is outside `1..=q`.
    #[error("label {label} out of range 1..={q}")]
    LabelOutOfRange {
        /// The offending label.
        label: u32,
        /// Number of states.
        q: u32,
    },

    /// The label vector length does not match the node count.
    #[error("expected {expected} labels, got {got}")]
    LabelCount {
        /// Node count of the graph.
        expected: usize,
        /// Labels supplied.
        got: usize,
    },

    /// Fewer than two distinct label states; the Potts model is degenerate.
    #[error("need at least 2 label states, got {got}")]
    TooFewStates {
        /// Distinct states found.
        got: u32,
    },

    /// An operation that needs edges was given an edgeless graph.
    #[error("graph has no edges")]
    EdgelessGraph,

    /// An operation that needs at least two nodes was given fewer.
    #[error("graph has {nodes} nodes, need at least 2")]
    TooFewNodes {
        /// Node count of the graph.
        nodes: usize,
    },

    /// Conductance of an empty node set (or its empty complement).
    #[error("conductance needs both sides of the cut non-empty")]
    EmptyCutSide,

    /// A quantile outside the open interval (0, 1).
    #[error("quantile {p} outside (0, 1)")]
    QuantileRange {
        /// The offending value.
        p: f64,
    },

    /// An empty score list where at least one score is required.
    #[error("empty score list")]
    EmptyScores,

    /// A parameter failed validation; the message names it.
    #[error("{0}")]
    InvalidConfig(String),

    /// A file could not be read or written.
    #[error("{path}: {source}")]
    Io {
        /// The file involved.
        path: PathBuf,
        /// Underlying I/O error.
        #[source]
        source: io::Error,
    },

    /// A line of an input file could not be parsed.
    #[error("{path}:{line}: {message}")]
    Parse {
        /// The file involved.
        path: PathBuf,
        /// 1-based line number.
        line: usize,
        /// What was wrong.
        message: String,
    },

    /// An edge-list file contained no edges.
    #[error("{path}: no edges")]
    NoEdges {
        /// The file involved.
        path: PathBuf,
    },

    /// A label file referenced a node name the graph does not have.
    #[error("unknown node name {name:?}")]
    UnknownNode {
        /// The unrecognized name.
        name: String,
    },

    /// A node received no label (name-keyed label files).
    #[error("no label for node {name:?}")]
    MissingLabel {
        /// The unlabeled node.
        name: String,
    },

    /// The feature CSV lacks the requested class column.
    #[error("no column named {name:?}; available: {available:?}")]
    MissingColumn {
        /// The requested column.
        name: String,
        /// Columns that do exist.
        available: Vec<String>,
    },

    /// A feature value is NaN or infinite.
    #[error("non-finite feature value at row {row}, column {column:?}")]
    NonFiniteFeature {
        /// 1-based data row.
        row: usize,
        /// Column name.
        column: String,
    },

    /// k-NN construction needs more samples than neighbors.
    #[error("k = {k} but only {n} samples; need n > k")]
    KTooLarge {
        /// Requested neighbor count.
        k: usize,
        /// Sample count.
        n: usize,
    },
}

impl Error {
    /// Whether this error is a usage problem (bad parameters) as opposed to a
    /// data problem (unreadable or malformed input). CLI front ends map usage
    /// to exit code 1 and data to exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::QuantileRange { .. }
                | Error::InvalidConfig(_)
                | Error::KTooLarge { .. }
                | Error::MissingColumn { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
