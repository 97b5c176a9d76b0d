//! Sense-tagged instances, the sense index and the homonym inventory.
//!
//! A word type is identified by its lemma together with its part of speech,
//! so `bank/n` and `bank/v` are separate words. Each instance's sense key is
//! resolved to a sense number through the [`SenseIndex`], and the sense
//! number to a homonym group through the [`HomonymInventory`]. Words whose
//! instances attest fewer than two groups carry no signal for clustering and
//! are dropped by [`filter_multigroup`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown part-of-speech tag {0:?} (expected one of n, v, a, r)")]
    UnknownPos(String),
    #[error("target index {index} is out of range for {len} tokens")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("instance has no tokens")]
    EmptyTokens,
    #[error("instance has an empty lemma")]
    EmptyLemma,
    #[error("sense number must be positive")]
    ZeroSenseNumber,
    #[error("group id must be positive")]
    ZeroGroupId,
    #[error("duplicate sense key {0:?}")]
    DuplicateSenseKey(String),
    #[error("duplicate inventory entry for {word} sense {sense_number}")]
    DuplicateKey { word: WordKey, sense_number: u32 },
}

/// WordNet's four open-class tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum PartOfSpeech {
    #[cfg_attr(feature = "serde", serde(rename = "n"))]
    Noun,
    #[cfg_attr(feature = "serde", serde(rename = "v"))]
    Verb,
    #[cfg_attr(feature = "serde", serde(rename = "a"))]
    Adjective,
    #[cfg_attr(feature = "serde", serde(rename = "r"))]
    Adverb,
}

impl PartOfSpeech {
    pub fn tag(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "n",
            PartOfSpeech::Verb => "v",
            PartOfSpeech::Adjective => "a",
            PartOfSpeech::Adverb => "r",
        }
    }
}

impl FromStr for PartOfSpeech {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n" => Ok(PartOfSpeech::Noun),
            "v" => Ok(PartOfSpeech::Verb),
            "a" => Ok(PartOfSpeech::Adjective),
            "r" => Ok(PartOfSpeech::Adverb),
            other => Err(CorpusError::UnknownPos(other.into())),
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A word type: lemma plus part of speech.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WordKey {
    pub lemma: String,
    pub pos: PartOfSpeech,
}

impl WordKey {
    pub fn new(lemma: impl Into<String>, pos: PartOfSpeech) -> Self {
        WordKey {
            lemma: lemma.into(),
            pos,
        }
    }
}

impl fmt::Display for WordKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.lemma, self.pos)
    }
}

/// One corpus sentence with a marked target token.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SenseTaggedInstance {
    pub sentence_id: String,
    pub tokens: Vec<String>,
    pub target_index: usize,
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_key: String,
}

impl SenseTaggedInstance {
    /// Checks the token/lemma invariants.
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.tokens.is_empty() {
            return Err(CorpusError::EmptyTokens);
        }
        if self.lemma.is_empty() {
            return Err(CorpusError::EmptyLemma);
        }
        if self.target_index >= self.tokens.len() {
            return Err(CorpusError::IndexOutOfRange {
                index: self.target_index,
                len: self.tokens.len(),
            });
        }
        Ok(())
    }

    pub fn target_token(&self) -> &str {
        &self.tokens[self.target_index]
    }

    pub fn word(&self) -> WordKey {
        WordKey::new(self.lemma.clone(), self.pos)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SenseEntry {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_number: u32,
}

/// Sense key → (lemma, pos, sense number).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SenseIndex {
    entries: BTreeMap<String, SenseEntry>,
}

impl SenseIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, sense_key: String, entry: SenseEntry) -> Result<(), CorpusError> {
        if entry.sense_number == 0 {
            return Err(CorpusError::ZeroSenseNumber);
        }
        if self.entries.contains_key(&sense_key) {
            return Err(CorpusError::DuplicateSenseKey(sense_key));
        }
        self.entries.insert(sense_key, entry);
        Ok(())
    }

    pub fn get(&self, sense_key: &str) -> Option<&SenseEntry> {
        self.entries.get(sense_key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in sense-key order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &SenseEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// (lemma, pos, sense number) → homonym group id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomonymInventory {
    entries: BTreeMap<(WordKey, u32), u32>,
}

impl HomonymInventory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        word: WordKey,
        sense_number: u32,
        group_id: u32,
    ) -> Result<(), CorpusError> {
        if sense_number == 0 {
            return Err(CorpusError::ZeroSenseNumber);
        }
        if group_id == 0 {
            return Err(CorpusError::ZeroGroupId);
        }
        let key = (word, sense_number);
        if self.entries.contains_key(&key) {
            let (word, sense_number) = key;
            return Err(CorpusError::DuplicateKey { word, sense_number });
        }
        self.entries.insert(key, group_id);
        Ok(())
    }

    pub fn group_of(&self, word: &WordKey, sense_number: u32) -> Option<u32> {
        self.entries.get(&(word.clone(), sense_number)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by word, then sense number.
    pub fn iter(&self) -> impl Iterator<Item = (&WordKey, u32, u32)> {
        self.entries.iter().map(|((w, s), g)| (w, *s, *g))
    }

    /// Distinct groups listed for `word`.
    pub fn groups_for(&self, word: &WordKey) -> BTreeSet<u32> {
        self.iter()
            .filter(|(w, _, _)| *w == word)
            .map(|(_, _, g)| g)
            .collect()
    }
}

/// An instance together with its resolved sense number and homonym group.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GroupedInstance {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub instance: SenseTaggedInstance,
    pub sense_number: u32,
    pub group_id: u32,
}

/// Why instances were dropped during group assignment.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SkipTally {
    /// Sense key absent from the sense index.
    pub unknown_sense_key: usize,
    /// The index names a different lemma or POS than the instance.
    pub word_mismatch: usize,
    /// Sense number has no inventory group.
    pub not_in_inventory: usize,
}

impl SkipTally {
    pub fn total(&self) -> usize {
        self.unknown_sense_key + self.word_mismatch + self.not_in_inventory
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub grouped: Vec<GroupedInstance>,
    pub skipped: SkipTally,
}

/// Resolves every instance to a homonym group, dropping (and counting) the
/// ones that cannot be resolved.
pub fn assign_groups<I>(
    instances: I,
    index: &SenseIndex,
    inventory: &HomonymInventory,
) -> Assignment
where
    I: IntoIterator<Item = SenseTaggedInstance>,
{
    let mut out = Assignment::default();
    for instance in instances {
        let Some(entry) = index.get(&instance.sense_key) else {
            out.skipped.unknown_sense_key += 1;
            continue;
        };
        if entry.lemma != instance.lemma || entry.pos != instance.pos {
            out.skipped.word_mismatch += 1;
            continue;
        }
        let word = instance.word();
        let Some(group_id) = inventory.group_of(&word, entry.sense_number) else {
            out.skipped.not_in_inventory += 1;
            continue;
        };
        out.grouped.push(GroupedInstance {
            sense_number: entry.sense_number,
            group_id,
            instance,
        });
    }
    out
}

/// All instances of one word type that attests at least two homonym groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordDataset {
    pub word: WordKey,
    pub instances: Vec<GroupedInstance>,
    pub attested_groups: BTreeSet<u32>,
}

impl WordDataset {
    /// Distinct sense keys in first-appearance order.
    pub fn sense_keys(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.instances
            .iter()
            .map(|g| g.instance.sense_key.as_str())
            .filter(|k| seen.insert(*k))
            .collect()
    }
}

/// Groups instances by word and keeps only words attesting two or more
/// homonym groups. Instance order within a word is preserved.
pub fn filter_multigroup<I>(grouped: I) -> BTreeMap<WordKey, WordDataset>
where
    I: IntoIterator<Item = GroupedInstance>,
{
    let mut words: BTreeMap<WordKey, WordDataset> = BTreeMap::new();
    for g in grouped {
        let word = g.instance.word();
        let entry = words.entry(word.clone()).or_insert_with(|| WordDataset {
            word,
            instances: Vec::new(),
            attested_groups: BTreeSet::new(),
        });
        entry.attested_groups.insert(g.group_id);
        entry.instances.push(g);
    }
    words.retain(|_, ds| ds.attested_groups.len() >= 2);
    words
}
