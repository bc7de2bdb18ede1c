pub mod acceptance;
pub mod congruence;
pub mod error;
pub mod family;
pub mod fan;
pub mod hopf;
pub mod oracle;
pub mod perm;
pub mod poset;
pub mod weak_order;

pub use congruence::{Congruence, ForcingOrder, QuotientPoset};
pub use error::{Error, Result};
pub use family::{named_family, CongruenceFamily, Family, FamilyKind, FamilySpec};
pub use fan::{build_fan, check_fan_poset_properties, FanReport, QuotientFan, RationalCone};
pub use hopf::{
    check_axioms, check_embedding, AxiomReport, GradedVector, HopfAmbient, MalvenutoReutenauer,
    QuotientHopf, TensorVector,
};
pub use perm::{InversionSet, Permutation};
pub use poset::Poset;
pub use weak_order::{JoinIrreducible, WeakOrder};
