//! Coincidence and fixed point invariants of finite digital images.
//!
//! Images are finite sets of lattice points or graph vertices with a
//! symmetric, antireflexive adjacency. Continuous maps send adjacent points
//! to equal or adjacent points. The crate enumerates continuous maps by
//! pruned backtracking, explores homotopy classes as closures under one-step
//! moves, and computes the spectra built from fixed, coincidence and common
//! fixed point counts.
//!
//! ```
//! use digitop::{catalog, invariants, SearchBudget};
//!
//! let c5 = catalog::load_key("cycle:5").unwrap();
//! let (f, _) = invariants::fixed_point_spectrum(&c5, &SearchBudget::sequential()).unwrap();
//! assert_eq!(f.values, vec![0, 1, 2, 3, 5]);
//! ```

pub mod catalog;
pub mod cli;
pub mod error;
pub mod homotopy;
pub mod image;
pub mod invariants;
pub mod iso;
pub mod map;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
pub use image::{digital_interval, kappa_count, DigitalImage, PointId};
pub use map::{is_continuous, DigitalMap};
pub use search::{SearchBudget, SearchStats};
