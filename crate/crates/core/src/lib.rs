//! Signed graphs with a fixed smallest eigenvalue: switching, spectra,
//! positive cliques, Hoffman graphs, integral representations and structure.

pub mod checks;
pub mod cliques;
pub mod embed;
pub mod error;
pub mod graph;
pub mod hoffman;
pub mod intmat;
pub mod lattice;
pub mod random;
pub mod spectra;
pub mod structure;
pub mod switching;

pub use cliques::{maximal_positive_cliques, CliqueCatalog, PositiveClique};
pub use embed::{Embedding, SearchOutcome, SignMode};
pub use error::{Error, Result};
pub use graph::{GraphJson, Sign, SignedGraph, StandardFamily, SwitchingMap};
pub use hoffman::{AssociatedHoffmanGraph, HoffmanSignedGraph, Label, SpecialMatrix};
pub use intmat::IntMatrix;
pub use lattice::{FactorOutcome, IntegrabilityCertificate, IntegrabilityOutcome, LatticeDescription};
pub use spectra::{Spectrum, SymmetricMatrix};
pub use structure::{Decomposition, DecompositionParams, DecompositionReport, KappaConfig};
pub use switching::{PatternFamily, SwitchingEquivalenceWitness};
