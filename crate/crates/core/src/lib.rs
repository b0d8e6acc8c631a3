//! Boolean matrix factorization from below.
//!
//! The crate factors a Boolean matrix `I` as a Boolean product `A∘B` whose
//! rectangles are formal concepts of `I`, so the approximation never covers
//! a 0. It provides
//!
//! * [`boolmat`]: matrices, the Boolean product, error measures, clarification;
//! * [`galois`]: the Galois operators, concept enumeration, lattice intervals;
//! * [`essential`]: the essential part `E(I)` and exact rank search for small inputs;
//! * [`algorithms`]: GreEss, GreConD, GreCon, and Asso;
//! * [`synth`] and [`eval`]: synthetic data, noise, and coverage experiments;
//! * [`io`]: dense, sparse, and concept-list text formats.
//!
//! ```
//! use essbmf::{algorithms::greess, fixtures};
//!
//! let input = fixtures::example_matrix();
//! let run = greess(&input, 0).unwrap();
//! assert_eq!(run.factors.product(), input);
//! assert_eq!(run.residual_overcovered, 0);
//! ```

pub mod algorithms;
pub mod bitset;
pub mod boolmat;
pub mod error;
pub mod essential;
pub mod eval;
pub mod fixtures;
pub mod galois;
pub mod io;
pub mod synth;

pub use bitset::BitSet;
pub use boolmat::{BooleanMatrix, FactorSet};
pub use error::{BmfError, Result};
pub use galois::FormalConcept;
