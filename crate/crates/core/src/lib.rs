//! Exact construction, analysis and transformation of c-friezes.
//!
//! A c-frieze of order `n` is the function `f(i, j) = P_{j-i+1}(x_i, ..., x_j)`
//! on the band `-2 <= j - i <= n + 1`, where `P_k` is the continuant polynomial
//! with parameter `c` and the first row `x_i` is a bi-infinite sequence whose
//! `n + 2`-windows all have vanishing continuant. Everything is computed over
//! exact rationals.
//!
//! ```
//! use cfrieze::{Frieze, FriezeParams, Rat};
//!
//! let params = FriezeParams::new(Rat::from(4), 2).unwrap();
//! let free: Vec<Rat> = ["2", "-3", "-1"].iter().map(|s| s.parse().unwrap()).collect();
//! let f = Frieze::from_free(params, 1, &free).unwrap();
//! assert_eq!(f.first_row(4).to_string(), "4/5");
//! assert_eq!(f.value_at(1, 3).unwrap(), Rat::from(10));
//! ```

pub mod analysis;
pub mod continuant;
pub mod exactnum;
pub mod frieze;
pub mod par;
pub mod section;
pub mod transform;

pub use analysis::{AnalysisError, Classification, IntegralityVerdict};
pub use continuant::ContinuantError;
pub use exactnum::{rat_parse, ExactError, Rat};
pub use frieze::{Frieze, FriezeDescriptor, FriezeError, FriezeParams, GridPoint, PolygonalSequence};
pub use par::Exec;
pub use section::{Section, SectionError, SectionJson, SectionValues};
pub use transform::TransformError;
