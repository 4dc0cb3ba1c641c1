//! Whitehead-diagram calculus for spines of surfaces on handlebodies.
//!
//! The crate decides circular-handle-structure questions for knots given by
//! free Seifert surface spines: fiberedness witnesses, handle-number bounds,
//! one-handledness searches over boundary-parallel arcs, and the Euclidean
//! slide sequence on torus sutured manifolds.
//!
//! Main entry points:
//! - [`free_group`]: words, cyclic words, Whitehead automorphisms, greedy
//!   minimization, primitivity and separability tests, power roots.
//! - [`graph`]: genuine Whitehead graphs (loopless labeled multigraphs),
//!   cut vertices, complexity, simple associated graphs.
//! - [`diagram`]: Whitehead diagrams with rotation systems on the boundary
//!   sphere, face tracing, curve tracing, drilling and filling of 2-handles,
//!   cut-vertex handle slides, and a line-oriented text format.
//! - [`handle_search`]: fiberedness / handle-number decision procedures and
//!   the exhaustive boundary-parallel arc search with replayable witnesses.
//! - [`torus`]: continued fractions, `(p,q)`-torus sutured manifold diagrams,
//!   the canonical 2-handle and the Euclidean slide sequence.
//! - [`families`]: rational knots `[2b1,...,2bg]` and pretzel knots `P(p,q,r)`.
//! - [`oracle`]: brute-force cross-checks (exhaustive minimization search,
//!   drill/fill roundtrips, slide-stage comparisons).

pub mod cli;
pub mod diagram;
pub mod families;
pub mod free_group;
pub mod graph;
pub mod handle_search;
pub mod oracle;
pub mod torus;

mod error;

pub use error::{Error, Result};
