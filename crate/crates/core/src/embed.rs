//! Context windows and per-sense averaging of contextual embeddings.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::corpus::PartOfSpeech;

/// Tokens kept on either side of the target word.
pub const DEFAULT_RADIUS: usize = 10;

/// Hidden size of base-size contextual encoders. Files declare their own.
pub const DEFAULT_DIM: usize = 768;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("target index {index} is out of range for {len} tokens")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("records mix words: expected {expected}, found {found}")]
    MixedLemma { expected: String, found: String },
    #[error("records mix dimensions: expected {expected}, found {found}")]
    MixedDimension { expected: usize, found: usize },
    #[error("sense key {sense_key:?} appears with groups {first} and {second}")]
    InconsistentGroup {
        sense_key: String,
        first: u32,
        second: u32,
    },
}

/// Cuts `tokens` down to `radius` tokens on each side of the target.
///
/// Returns the window and the target's index inside it.
pub fn context_window<T>(
    tokens: &[T],
    target_index: usize,
    radius: usize,
) -> Result<(&[T], usize), EmbedError> {
    if target_index >= tokens.len() {
        return Err(EmbedError::IndexOutOfRange {
            index: target_index,
            len: tokens.len(),
        });
    }
    let start = target_index.saturating_sub(radius);
    let end = target_index
        .saturating_add(radius)
        .saturating_add(1)
        .min(tokens.len());
    Ok((&tokens[start..end], target_index - start))
}

/// Contextual vector for one target occurrence.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct EmbeddingRecord {
    pub sentence_id: String,
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_key: String,
    pub group_id: u32,
    pub vector: Vec<f64>,
}

/// Mean embedding of every occurrence of one sense key.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct AveragedEmbedding {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_key: String,
    pub group_id: u32,
    pub mean_vector: Vec<f64>,
    pub count: usize,
}

/// Averages the records of one word per sense key.
///
/// Output order follows the first appearance of each sense key. All records
/// must share lemma, part of speech and dimension, and a sense key must
/// always carry the same group.
pub fn average_by_sense(records: &[EmbeddingRecord]) -> Result<Vec<AveragedEmbedding>, EmbedError> {
    let Some(first) = records.first() else {
        return Ok(Vec::new());
    };
    let dim = first.vector.len();

    let mut slot_of: BTreeMap<&str, usize> = BTreeMap::new();
    let mut out: Vec<AveragedEmbedding> = Vec::new();
    for r in records {
        if r.lemma != first.lemma || r.pos != first.pos {
            return Err(EmbedError::MixedLemma {
                expected: alloc::format!("{}/{}", first.lemma, first.pos),
                found: alloc::format!("{}/{}", r.lemma, r.pos),
            });
        }
        if r.vector.len() != dim {
            return Err(EmbedError::MixedDimension {
                expected: dim,
                found: r.vector.len(),
            });
        }
        let slot = *slot_of.entry(r.sense_key.as_str()).or_insert_with(|| {
            out.push(AveragedEmbedding {
                lemma: r.lemma.clone(),
                pos: r.pos,
                sense_key: r.sense_key.clone(),
                group_id: r.group_id,
                mean_vector: alloc::vec![0.0; dim],
                count: 0,
            });
            out.len() - 1
        });
        let acc = &mut out[slot];
        if acc.group_id != r.group_id {
            return Err(EmbedError::InconsistentGroup {
                sense_key: r.sense_key.clone(),
                first: acc.group_id,
                second: r.group_id,
            });
        }
        for (s, x) in acc.mean_vector.iter_mut().zip(&r.vector) {
            *s += x;
        }
        acc.count += 1;
    }
    for acc in &mut out {
        let c = acc.count as f64;
        acc.mean_vector.iter_mut().for_each(|s| *s /= c);
    }
    Ok(out)
}
