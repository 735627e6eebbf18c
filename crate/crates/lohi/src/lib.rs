//! Potts-field information scoring and low/high-information decomposition of
//! labeled networks.
//!
//! A labeled graph is treated as a sample of a q-state Potts Markov random
//! field. Fitting the field strength by maximum pseudo-likelihood gives every
//! node two information scores, observed (`phi`) and expected (`psi`); their
//! regularized ratio, the shape operator, separates nodes that conform to
//! their neighborhood from nodes that carry information about the label
//! field. Thresholding the normalized scores splits the graph into a
//! low-information subgraph `L` (where community structure concentrates) and
//! a high-information remainder `H`.
//!
//! ```
//! use lohi::graph::{Graph, LabeledGraph};
//! use lohi::pipeline::{run_pipeline, RunConfig};
//!
//! // Two triangles and the bridge between them, labeled by triangle.
//! let (graph, _) = Graph::new(
//!     6,
//!     [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
//! )?;
//! let field = LabeledGraph::new(graph, vec![1, 1, 1, 2, 2, 2], 2)?;
//!
//! let result = run_pipeline(&field, &RunConfig::default())?;
//! // The bridge endpoints are where the label field is informative.
//! assert_eq!(result.decomposition.high.as_slice(), &[2, 3]);
//! assert_eq!(result.decomposition.low.len(), 4);
//! # Ok::<(), lohi::Error>(())
//! ```

pub mod community;
pub mod decompose;
pub mod error;
pub mod fisher;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod pipeline;
pub mod potts;
pub mod report;
pub mod sampler;

pub use error::{Error, Result};
pub use graph::{Graph, LabeledGraph, NodeSet};
pub use pipeline::{run_pipeline, PipelineResult, RunConfig};

// The guide's code blocks compile and run with the test suite; each chapter
// is its own named module so a failure points at the page it came from.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    pub mod model {}
    #[doc = include_str!("../../../book/src/scoring.md")]
    pub mod scoring {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    pub mod decomposition {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    pub mod metrics {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    pub mod sampling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
