//! Central-extension models of the groups acted on by `B̃_n`, the quotient
//! by the normal subgroup `N`, and the identity suite.

pub mod action;
pub mod group;
pub mod identities;
pub mod lines;
pub mod predict;
pub mod prime;
pub mod quotient;
pub mod twists;

pub use action::{Family, Model};
pub use group::{Automorphism, Central, CentralExtGroup, Element, MU, NU};
pub use twists::{Adjacency, Letter, Twist, TwistSystem, TwistWord};
pub use lines::LineModel;
pub use prime::{check_prime, Condition, PrimeReport};
pub use quotient::{build_n_quotient, lambda, n_generators, NQuotient, QuotientSummary, Reading, Subgroup};
pub use identities::{verify_identities, IdentityKind, IdentityReport, IdentityResult};
pub use predict::{edge_lattice, m1, predict_series, Series, SeriesPrediction};
