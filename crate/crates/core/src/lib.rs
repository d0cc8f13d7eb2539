//! Symbolic Puiseux monoids: additive submonoids of the nonnegative rationals.
//!
//! Monoids are described by a closed set of families ([`model::MonoidExpr`]),
//! parsed from a small text language, and analysed exactly:
//!
//! - [`exact`]: reduced rationals, p-adic valuations, supernatural numbers
//! - [`numsg`]: finitely generated monoids as numerical monoids (membership,
//!   Frobenius number, Apéry sets, factorizations)
//! - [`closure`]: root closure, conductor, isomorphism by rational scaling
//! - [`factor`]: atoms, bounded membership, the prime-reciprocal normal form
//! - [`classify`]: the factorization-property lattice, one certified verdict
//!   per property

pub mod classify;
pub mod closure;
pub mod exact;
pub mod factor;
pub mod model;
pub mod numsg;
pub mod sample;

pub use exact::Rat;
pub use model::MonoidExpr;

/// Three-valued answer used wherever a search or rule table can be silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_known(self) -> bool {
        self != Tri::Unknown
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            Tri::Yes => Some(true),
            Tri::No => Some(false),
            Tri::Unknown => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }
}

impl std::ops::Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
