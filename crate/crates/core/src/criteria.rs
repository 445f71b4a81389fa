//! Sufficient criteria for uniqueness in the genus, surjectivity onto the
//! discriminant group, and uniqueness of primitive embeddings, plus the
//! assembly of Fourier–Mukai partner counts from them.
//!
//! Every criterion here is one-sided: a failed hypothesis yields
//! `Inconclusive`, never `Refuted`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::discriminant_form;
use crate::json::JsonInt;
use crate::lattice::{GramLattice, Signature};

pub const UNIQUE_CLASS_AND_SURJECTIVE: &str = "indefinite, rank >= 2 + l(A)";
pub const UNIQUE_PRIMITIVE_EMBEDDING: &str = "signature fits strictly, ambient rank - rank >= 2 + l(A)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionStatus {
    Certified,
    Inconclusive,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputsSummary {
    pub rank: usize,
    pub signature: Signature,
    /// Minimal number of generators of the discriminant group.
    pub length: usize,
    pub disc_order: JsonInt,
}

impl InputsSummary {
    pub fn of(l: &GramLattice) -> Self {
        let a = discriminant_form(l);
        InputsSummary {
            rank: l.rank(),
            signature: l.signature(),
            length: a.factors().len(),
            disc_order: JsonInt(a.order()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub status: CriterionStatus,
    pub criterion_name: String,
    pub inputs_summary: InputsSummary,
    /// Rank (or corank) minus `2 + l(A)`; nonnegative when that hypothesis holds.
    pub margin: i64,
    pub assumed_facts: Vec<String>,
}

/// Sufficient condition for the genus of `l` to contain one class and for
/// `O(l) -> O(A_l)` to be onto.
pub fn criterion_unique_class_and_surjective(l: &GramLattice) -> CriterionVerdict {
    let inputs = InputsSummary::of(l);
    let margin = inputs.rank as i64 - inputs.length as i64 - 2;
    let ok = inputs.signature.is_indefinite() && margin >= 0;
    CriterionVerdict {
        status: if ok {
            CriterionStatus::Certified
        } else {
            CriterionStatus::Inconclusive
        },
        criterion_name: UNIQUE_CLASS_AND_SURJECTIVE.into(),
        inputs_summary: inputs,
        margin,
        assumed_facts: Vec::new(),
    }
}

/// Sufficient condition for a primitive embedding of `t` into the even
/// unimodular lattice of the given rank and signature to be unique up to
/// isometries of the ambient.
pub fn criterion_unique_primitive_embedding(
    t: &GramLattice,
    ambient_rank: usize,
    ambient_signature: Signature,
) -> CriterionVerdict {
    let inputs = InputsSummary::of(t);
    let margin = ambient_rank as i64 - inputs.rank as i64 - inputs.length as i64 - 2;
    let fits = inputs.signature.positive < ambient_signature.positive
        && inputs.signature.negative < ambient_signature.negative;
    CriterionVerdict {
        status: if fits && margin >= 0 {
            CriterionStatus::Certified
        } else {
            CriterionStatus::Inconclusive
        },
        criterion_name: UNIQUE_PRIMITIVE_EMBEDDING.into(),
        inputs_summary: inputs,
        margin,
        assumed_facts: Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusClasses {
    CertifiedOne,
    Count(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartnerCount {
    Exact {
        count: u64,
    },
    /// `upper` is absent when some class is known not to be surjective.
    Interval {
        lower: u64,
        upper: Option<u64>,
    },
}

/// Number of Fourier–Mukai partners from the class count of the genus and
/// one surjectivity verdict per class.
pub fn fm_partner_count(classes: GenusClasses, surjectivity: &[CriterionStatus]) -> Result<PartnerCount> {
    let count = match classes {
        GenusClasses::CertifiedOne => 1,
        GenusClasses::Count(c) => c,
    };
    if count == 0 || surjectivity.len() as u64 != count {
        return Err(Error::InconsistentInput(format!(
            "{count} classes but {} surjectivity verdicts",
            surjectivity.len()
        )));
    }
    if surjectivity.iter().all(|&s| s == CriterionStatus::Certified) {
        return Ok(PartnerCount::Exact { count });
    }
    let upper = (!surjectivity.contains(&CriterionStatus::Refuted)).then_some(count);
    Ok(PartnerCount::Interval { lower: 1, upper })
}

pub(crate) fn big(x: &BigInt) -> JsonInt {
    JsonInt(x.clone())
}
