//! Foundation-context word pools and frequency-ratio measures.
//!
//! Documents written under one foundation's context (virtue and vice
//! combined) form that foundation's word pool. For a pool and a
//! measured foundation, the raw count is the number of matched tokens,
//! the percent is per hundred pool tokens, and the normalized ratio
//! additionally divides by the dictionary size of the measured
//! foundation.

use std::collections::BTreeMap;

use crate::category::MoralFoundation;
use crate::matcher::{CompiledLexicon, TokenDocument};
use crate::num::Real;

/// All documents collected under one foundation's context.
#[derive(Debug, Clone)]
pub struct WordPool {
    pub context_foundation: MoralFoundation,
    documents: Vec<TokenDocument>,
    pool_size: u64,
}

impl WordPool {
    pub fn documents(&self) -> &[TokenDocument] {
        &self.documents
    }

    /// Total tokens across member documents.
    pub fn pool_size(&self) -> u64 {
        self.pool_size
    }
}

/// One measured frequency-ratio observation.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow<F> {
    /// `None` under pooled grouping.
    pub participant_id: Option<String>,
    pub context_foundation: MoralFoundation,
    pub measured_foundation: MoralFoundation,
    pub raw_count: u64,
    pub group_tokens: u64,
    /// 100 * raw_count / group_tokens.
    pub percent: F,
    /// raw_count / (group_tokens * dict_size(measured)).
    pub normalized_ratio: F,
    /// Set when the group had zero tokens; percent and ratio are 0.
    pub flagged_empty: bool,
}

/// How observations are grouped within a pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    PerParticipant,
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoringError {
    #[error("document `{0}` has no context foundation")]
    MissingContext(String),
    #[error("document `{0}` has no participant id")]
    MissingParticipant(String),
    #[error("dictionary size for {0} is zero")]
    ZeroDictSize(MoralFoundation),
}

/// Partitions documents into the five foundation pools by context.
/// Virtue and vice contexts merge; every pool exists, possibly empty.
pub fn build_pools(
    docs: Vec<TokenDocument>,
) -> Result<BTreeMap<MoralFoundation, WordPool>, ScoringError> {
    let mut pools: BTreeMap<MoralFoundation, WordPool> = MoralFoundation::ALL
        .iter()
        .map(|&f| {
            (
                f,
                WordPool {
                    context_foundation: f,
                    documents: Vec::new(),
                    pool_size: 0,
                },
            )
        })
        .collect();
    for doc in docs {
        let foundation = doc
            .context_foundation
            .ok_or_else(|| ScoringError::MissingContext(doc.doc_id.clone()))?;
        let pool = pools.get_mut(&foundation).expect("all pools present");
        pool.pool_size += doc.token_count() as u64;
        pool.documents.push(doc);
    }
    Ok(pools)
}

/// Computes frequency ratios for one pool, either per participant or
/// pooled. Rows come out grouped first, then in canonical foundation
/// order; groups with zero tokens are emitted flagged rather than
/// dropped.
pub fn frequency_ratios<F: Real>(
    pool: &WordPool,
    compiled: &CompiledLexicon,
    dict_sizes: &BTreeMap<MoralFoundation, usize>,
    grouping: Grouping,
) -> Result<Vec<RatioRow<F>>, ScoringError> {
    for f in MoralFoundation::ALL {
        if dict_sizes.get(&f).copied().unwrap_or(0) == 0 {
            return Err(ScoringError::ZeroDictSize(f));
        }
    }

    // (group key, docs) with deterministic order
    let mut groups: Vec<(Option<String>, Vec<&TokenDocument>)> = Vec::new();
    match grouping {
        Grouping::Pooled => {
            groups.push((None, pool.documents.iter().collect()));
        }
        Grouping::PerParticipant => {
            let mut by_participant: BTreeMap<String, Vec<&TokenDocument>> = BTreeMap::new();
            for doc in &pool.documents {
                let pid = doc
                    .participant_id
                    .clone()
                    .ok_or_else(|| ScoringError::MissingParticipant(doc.doc_id.clone()))?;
                by_participant.entry(pid).or_default().push(doc);
            }
            for (pid, docs) in by_participant {
                groups.push((Some(pid), docs));
            }
        }
    }

    let mut rows = Vec::with_capacity(groups.len() * MoralFoundation::ALL.len());
    for (participant_id, docs) in groups {
        let group_tokens: u64 = docs.iter().map(|d| d.token_count() as u64).sum();
        let mut counts: BTreeMap<MoralFoundation, u64> = BTreeMap::new();
        for doc in &docs {
            let report = compiled.match_document(doc);
            for f in MoralFoundation::ALL {
                *counts.entry(f).or_insert(0) += report.foundation_count(f);
            }
        }
        for measured in MoralFoundation::ALL {
            let raw_count = counts.get(&measured).copied().unwrap_or(0);
            let (percent, normalized_ratio, flagged_empty) = if group_tokens == 0 {
                (F::zero(), F::zero(), true)
            } else {
                let raw = F::from_usize_exact(raw_count as usize);
                let tokens = F::from_usize_exact(group_tokens as usize);
                let dict = F::from_usize_exact(dict_sizes[&measured]);
                (
                    F::hundred() * raw / tokens,
                    raw / (tokens * dict),
                    false,
                )
            };
            rows.push(RatioRow {
                participant_id: participant_id.clone(),
                context_foundation: pool.context_foundation,
                measured_foundation: measured,
                raw_count,
                group_tokens,
                percent,
                normalized_ratio,
                flagged_empty,
            });
        }
    }
    Ok(rows)
}

/// Per-participant, per-foundation description measures: situations
/// listed, total words used, and dictionary words of the context
/// foundation used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParticipantMeasure {
    pub participant_id: String,
    pub foundation: MoralFoundation,
    pub n_situations: u64,
    pub n_total_words: u64,
    pub n_dict_words: u64,
}

/// One document is one listed situation. Every participant gets a row
/// for every foundation, zero-filled where they wrote nothing. Rows are
/// sorted by participant, then canonical foundation order.
pub fn participant_measures(
    docs: &[TokenDocument],
    compiled: &CompiledLexicon,
) -> Result<Vec<ParticipantMeasure>, ScoringError> {
    let mut table: BTreeMap<String, BTreeMap<MoralFoundation, (u64, u64, u64)>> = BTreeMap::new();
    for doc in docs {
        let pid = doc
            .participant_id
            .clone()
            .ok_or_else(|| ScoringError::MissingParticipant(doc.doc_id.clone()))?;
        let foundation = doc
            .context_foundation
            .ok_or_else(|| ScoringError::MissingContext(doc.doc_id.clone()))?;
        let report = compiled.match_document(doc);
        let cell = table
            .entry(pid)
            .or_default()
            .entry(foundation)
            .or_insert((0, 0, 0));
        cell.0 += 1;
        cell.1 += doc.token_count() as u64;
        cell.2 += report.foundation_count(foundation);
    }
    let mut rows = Vec::new();
    for (pid, cells) in &table {
        for f in MoralFoundation::ALL {
            let (n_situations, n_total_words, n_dict_words) =
                cells.get(&f).copied().unwrap_or((0, 0, 0));
            rows.push(ParticipantMeasure {
                participant_id: pid.clone(),
                foundation: f,
                n_situations,
                n_total_words,
                n_dict_words,
            });
        }
    }
    Ok(rows)
}
