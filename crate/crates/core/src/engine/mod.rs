//! Separating an element from a cyclic subgroup by homomorphisms onto finite
//! (p-)groups, enumeration of homomorphisms of amalgams into a fixed finite
//! group, and the case studies.
//!
//! The witness procedure works by induction on length: pass to a quotient
//! amalgam `G_{R,S}` in which the syllable lengths of `h` and `g` survive,
//! split on how the lengths divide each other, refine the pair by the kernel
//! of a further homomorphism when the lengths alone do not decide, and then
//! search the catalog for a homomorphism of the final quotient that
//! separates. Every certificate is re-verified against the original input.

mod cases;
mod homs;
mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::amalgam::{AmalgamError, FreeAmalgamError, Side};
use crate::compat::{CompatError, Mode};
use crate::fingrp::{Elem, GroupError, GroupJson};
use crate::freegrp::FreeGroupError;

pub use cases::{run_case_study, congruence_inverse, Assertion, CaseId, CaseStudyReport};
pub use homs::{
    enumerate_amalgam_homs, enumerate_free_homs, enumerate_quotient_homs, witness_targets, AmalgamHom, FreeHom,
};
pub use witness::{find_length_preserving_pair, separate_from_cyclic, verify_certificate};

pub const DEFAULT_CATALOG_BOUND: usize = 48;
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("g is the identity")]
    TrivialG,
    #[error("nothing suitable found up to order {0}")]
    BoundExhausted(usize),
    #[error("unknown case study {0:?}")]
    UnknownCase(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Compat(#[from] CompatError),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error(transparent)]
    FreeAmalgam(#[from] FreeAmalgamError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

/// `catalog` bounds the scan for compatible pairs of free factors and the
/// factor-level family check; `max_order` bounds witness targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub catalog: usize,
    pub max_order: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { catalog: DEFAULT_CATALOG_BOUND, max_order: DEFAULT_MAX_ORDER }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    pub h: String,
    pub g: String,
    pub mode: Mode,
}

/// `θ` on the factors: full tables for finite factors, generator images for
/// free ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "factors", rename_all = "snake_case")]
pub enum Theta {
    Finite { a: Vec<Elem>, b: Vec<Elem> },
    Free { a: Vec<Elem>, b: Vec<Elem> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub target: String,
    pub target_order: usize,
    pub image_order: usize,
    pub theta: Theta,
    pub h_image: Elem,
    pub g_image: Elem,
    /// Order of `gθ`; `hθ` is none of its powers.
    pub g_image_order: usize,
    pub verified: bool,
    pub target_table: GroupJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Obstruction {
    /// `root^q = g` with `q ≠ p` prime while `h ∉ <g>`.
    NotIsolated { q: u64, root: String },
    LambdaFamily { side: Side, excluded: String },
    BoundExhausted { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Separated(Certificate),
    Member { k: i64 },
    Obstructed(Obstruction),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub query: Query,
    pub outcome: Outcome,
    /// The steps taken, in order.
    pub trail: Vec<String>,
}

impl WitnessReport {
    pub fn is_separated(&self) -> bool {
        matches!(self.outcome, Outcome::Separated(_))
    }
}
