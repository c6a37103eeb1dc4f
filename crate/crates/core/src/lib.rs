//! Regular vines, MAT-labeled complete graphs and maximal Arrow's
//! single-peaked domains as three realisations of one split-merge species,
//! with the maps between them, extremal lattices and enumeration.
//!
//! ```
//! use splitmerge::{correspond, io};
//!
//! let text = r#"{"kind":"vine","ground":["a","b","c"],
//!                "nodes":[["a"],["b"],["c"],["a","b"],["b","c"],["a","b","c"]]}"#;
//! let io::Structure::Vine(v) = io::parse(text).unwrap() else { unreachable!() };
//! let d = correspond::vine_to_domain(&v).unwrap();
//! assert_eq!(d.len(), 4);
//! ```

pub mod correspond;
pub mod domain;
pub mod enumerate;
pub mod error;
pub mod ground;
pub mod io;
pub mod lattice;
pub mod matgraph;
pub mod samples;
pub mod species;
pub mod vine;

pub use domain::{DomainSpecies, PreferenceDomain};
pub use error::{Error, Result, ValidationReport, Violation};
pub use ground::{GroundSet, Mask, Relabeling};
pub use lattice::{BinaryMatrix, BoundedLattice};
pub use matgraph::{MatGraphSpecies, MatLabeledGraph};
pub use species::{Species, SplitPair};
pub use vine::{RegularVine, VineSpecies};
