//! Readers and writers for the on-disk formats.
//!
//! * `corpus.jsonl` holds one [`SenseTaggedInstance`] object per line.
//! * `sense_index.tsv` has columns `sense_key lemma pos sense_number`.
//! * `inventory.tsv` has columns `lemma pos sense_number group_id`.
//! * `embeddings.jsonl` starts with a `{"dim": d}` header line followed by
//!   one [`EmbeddingRecord`] per line.
//!
//! TSV files have no header. Blank lines are ignored everywhere. Errors
//! carry the file path and the 1-based line number.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use homonym_core::corpus::{
    CorpusError, HomonymInventory, PartOfSpeech, SenseEntry, SenseIndex, SenseTaggedInstance,
    WordKey,
};
use homonym_core::embed::EmbeddingRecord;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WorkbenchError};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| WorkbenchError::io(path, e))
}

/// Non-blank lines with their 1-based line numbers.
fn numbered_lines<'a, R: BufRead + 'a>(
    path: &'a Path,
    reader: R,
) -> impl Iterator<Item = Result<(usize, String)>> + 'a {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(i, line)| match line {
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(Ok((i + 1, l))),
            Err(e) => Some(Err(WorkbenchError::io(path, e))),
        })
}

fn malformed(path: &Path, line: usize, reason: impl ToString) -> WorkbenchError {
    WorkbenchError::MalformedRecord {
        path: path.to_path_buf(),
        line,
        reason: reason.to_string(),
    }
}

fn json_line<T: DeserializeOwned>(path: &Path, line: usize, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| malformed(path, line, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| WorkbenchError::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| WorkbenchError::io(path, e))
}

fn write_json_lines<H: Serialize, T: Serialize>(
    path: &Path,
    header: Option<&H>,
    rows: &[T],
) -> Result<()> {
    fn push<V: Serialize>(out: &mut String, v: &V) -> Result<()> {
        out.push_str(
            &serde_json::to_string(v).map_err(|source| WorkbenchError::Serialize {
                what: "record",
                source,
            })?,
        );
        out.push('\n');
        Ok(())
    }
    let mut out = String::new();
    if let Some(h) = header {
        push(&mut out, h)?;
    }
    for row in rows {
        push(&mut out, row)?;
    }
    let mut w = create(path)?;
    w.write_all(out.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| WorkbenchError::io(path, e))
}

fn check_instance(path: &Path, line: usize, inst: &SenseTaggedInstance) -> Result<()> {
    inst.validate().map_err(|e| match e {
        CorpusError::IndexOutOfRange { index, len } => WorkbenchError::IndexOutOfRange {
            path: path.to_path_buf(),
            line,
            index,
            len,
        },
        other => malformed(path, line, other),
    })
}

pub fn read_corpus(path: &Path, reader: impl BufRead) -> Result<Vec<SenseTaggedInstance>> {
    numbered_lines(path, reader)
        .map(|item| {
            let (line, text) = item?;
            let inst: SenseTaggedInstance = json_line(path, line, &text)?;
            check_instance(path, line, &inst)?;
            Ok(inst)
        })
        .collect()
}

/// Instances in file order.
pub fn parse_corpus(path: &Path) -> Result<Vec<SenseTaggedInstance>> {
    read_corpus(path, open(path)?)
}

pub fn write_corpus(instances: &[SenseTaggedInstance], path: &Path) -> Result<()> {
    write_json_lines(path, None::<&()>, instances)
}

fn tsv_fields<'a, const N: usize>(path: &Path, line: usize, text: &'a str) -> Result<[&'a str; N]> {
    let fields: Vec<&str> = text.split('\t').collect();
    fields.try_into().map_err(|f: Vec<&str>| {
        malformed(
            path,
            line,
            format!("expected {N} tab-separated fields, found {}", f.len()),
        )
    })
}

fn parse_field<T: std::str::FromStr>(path: &Path, line: usize, name: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.trim()
        .parse()
        .map_err(|e| malformed(path, line, format!("bad {name} {raw:?}: {e}")))
}

fn positive(path: &Path, line: usize, name: &str, raw: &str) -> Result<u32> {
    match parse_field::<u32>(path, line, name, raw)? {
        0 => Err(malformed(path, line, format!("{name} must be positive"))),
        v => Ok(v),
    }
}

pub fn read_sense_index(path: &Path, reader: impl BufRead) -> Result<SenseIndex> {
    let mut index = SenseIndex::new();
    for item in numbered_lines(path, reader) {
        let (line, text) = item?;
        let [key, lemma, pos, number] = tsv_fields(path, line, &text)?;
        let entry = SenseEntry {
            lemma: lemma.to_string(),
            pos: parse_field::<PartOfSpeech>(path, line, "part of speech", pos)?,
            sense_number: positive(path, line, "sense number", number)?,
        };
        if key.is_empty() || lemma.is_empty() {
            return Err(malformed(path, line, "empty sense key or lemma"));
        }
        index
            .insert(key.to_string(), entry)
            .map_err(|_| WorkbenchError::DuplicateSenseKey {
                path: path.to_path_buf(),
                line,
                key: key.to_string(),
            })?;
    }
    Ok(index)
}

pub fn parse_sense_index(path: &Path) -> Result<SenseIndex> {
    read_sense_index(path, open(path)?)
}

/// Rows in sense-key order.
pub fn write_sense_index(index: &SenseIndex, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let io_err = |e| WorkbenchError::io(path, e);
    for (key, e) in index.iter() {
        writeln!(w, "{key}\t{}\t{}\t{}", e.lemma, e.pos, e.sense_number).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_inventory(path: &Path, reader: impl BufRead) -> Result<HomonymInventory> {
    let mut inventory = HomonymInventory::new();
    for item in numbered_lines(path, reader) {
        let (line, text) = item?;
        let [lemma, pos, number, group] = tsv_fields(path, line, &text)?;
        if lemma.is_empty() {
            return Err(malformed(path, line, "empty lemma"));
        }
        let word = WordKey::new(lemma, parse_field(path, line, "part of speech", pos)?);
        let number = positive(path, line, "sense number", number)?;
        let group = positive(path, line, "group id", group)?;
        inventory.insert(word, number, group).map_err(|e| match e {
            CorpusError::DuplicateKey { word, sense_number } => WorkbenchError::DuplicateKey {
                path: path.to_path_buf(),
                line,
                word: word.to_string(),
                sense_number,
            },
            other => malformed(path, line, other),
        })?;
    }
    Ok(inventory)
}

pub fn parse_inventory(path: &Path) -> Result<HomonymInventory> {
    read_inventory(path, open(path)?)
}

/// Rows ordered by word, then sense number.
pub fn write_inventory(inventory: &HomonymInventory, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let io_err = |e| WorkbenchError::io(path, e);
    for (word, number, group) in inventory.iter() {
        writeln!(w, "{}\t{}\t{number}\t{group}", word.lemma, word.pos).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingHeader {
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingFile {
    pub dim: usize,
    pub records: Vec<EmbeddingRecord>,
}

pub fn read_embeddings(path: &Path, reader: impl BufRead) -> Result<EmbeddingFile> {
    let mut lines = numbered_lines(path, reader);
    let missing = || WorkbenchError::MissingHeader {
        path: path.to_path_buf(),
    };
    let (_, first) = lines.next().ok_or_else(missing)??;
    let header: EmbeddingHeader = serde_json::from_str(&first).map_err(|_| missing())?;
    let dim = header.dim;
    let records = lines
        .map(|item| {
            let (line, text) = item?;
            let rec: EmbeddingRecord = json_line(path, line, &text)?;
            if rec.vector.len() != dim {
                return Err(WorkbenchError::DimensionMismatch {
                    path: path.to_path_buf(),
                    line,
                    expected: dim,
                    found: rec.vector.len(),
                });
            }
            if rec.group_id == 0 {
                return Err(malformed(path, line, "group id must be positive"));
            }
            Ok(rec)
        })
        .collect::<Result<_>>()?;
    Ok(EmbeddingFile { dim, records })
}

pub fn parse_embeddings(path: &Path) -> Result<EmbeddingFile> {
    read_embeddings(path, open(path)?)
}

/// Writes the header and records. Every record must have `dim` components.
pub fn write_embeddings(dim: usize, records: &[EmbeddingRecord], path: &Path) -> Result<()> {
    if let Some((i, r)) = records
        .iter()
        .enumerate()
        .find(|(_, r)| r.vector.len() != dim)
    {
        return Err(WorkbenchError::DimensionMismatch {
            path: path.to_path_buf(),
            line: i + 2,
            expected: dim,
            found: r.vector.len(),
        });
    }
    write_json_lines(path, Some(&EmbeddingHeader { dim }), records)
}

/// Reads a whole JSON Lines file of any record type.
pub fn read_json_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    numbered_lines(path, open(path)?)
        .map(|item| {
            let (line, text) = item?;
            json_line(path, line, &text)
        })
        .collect()
}

pub fn write_records<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    write_json_lines(path, None::<&()>, rows)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(value: &T, what: &'static str, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|source| WorkbenchError::Serialize { what, source })?;
    text.push('\n');
    let mut w = create(path)?;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| WorkbenchError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| malformed(path, e.line(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn corpus_line() {
        let text = r#"{"sentence_id":"s1","tokens":["the","bank","closed"],"target_index":1,"lemma":"bank","pos":"n","sense_key":"bank%1:14:00::"}"#;
        let got = read_corpus(p(), text.as_bytes()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].target_token(), "bank");
        assert!(read_corpus(p(), "".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn corpus_errors_carry_line_numbers() {
        let text = "\n{\"sentence_id\":\"s\",\"tokens\":[\"a\",\"b\",\"c\"],\"target_index\":5,\"lemma\":\"a\",\"pos\":\"n\",\"sense_key\":\"k\"}";
        match read_corpus(p(), text.as_bytes()) {
            Err(WorkbenchError::IndexOutOfRange {
                line: 2,
                index: 5,
                len: 3,
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        let bad_pos = r#"{"sentence_id":"s","tokens":["a"],"target_index":0,"lemma":"a","pos":"x","sense_key":"k"}"#;
        assert!(matches!(
            read_corpus(p(), bad_pos.as_bytes()),
            Err(WorkbenchError::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn sense_index_rows() {
        let idx = read_sense_index(
            p(),
            "bank%1:14:00::\tbank\tn\t2\nlight%3:00:01::\tlight\ta\t1\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(idx.get("bank%1:14:00::").unwrap().sense_number, 2);
        assert_eq!(
            idx.get("light%3:00:01::").unwrap().pos,
            PartOfSpeech::Adjective
        );
        let dup = "k\tbank\tn\t1\nk\tbank\tn\t2\n";
        assert!(matches!(
            read_sense_index(p(), dup.as_bytes()),
            Err(WorkbenchError::DuplicateSenseKey { line: 2, .. })
        ));
        assert!(matches!(
            read_sense_index(p(), "k\tbank\tn\n".as_bytes()),
            Err(WorkbenchError::MalformedRecord { .. })
        ));
        assert!(matches!(
            read_sense_index(p(), "k\tbank\tn\t0\n".as_bytes()),
            Err(WorkbenchError::MalformedRecord { .. })
        ));
    }

    #[test]
    fn inventory_rows() {
        let inv = read_inventory(p(), "light\ta\t1\t100\n".as_bytes()).unwrap();
        assert_eq!(inv.len(), 1);
        let dup = "light\ta\t1\t100\nlight\ta\t1\t100\n";
        assert!(matches!(
            read_inventory(p(), dup.as_bytes()),
            Err(WorkbenchError::DuplicateKey { line: 2, .. })
        ));
    }

    #[test]
    fn embedding_header_and_dimensions() {
        let ok = "{\"dim\": 4}\n{\"sentence_id\":\"s\",\"lemma\":\"a\",\"pos\":\"n\",\"sense_key\":\"k\",\"group_id\":1,\"vector\":[0.1,0.2,0.3,0.4]}\n";
        let f = read_embeddings(p(), ok.as_bytes()).unwrap();
        assert_eq!((f.dim, f.records.len()), (4, 1));
        let short = ok.replace(",0.4]", "]");
        assert!(matches!(
            read_embeddings(p(), short.as_bytes()),
            Err(WorkbenchError::DimensionMismatch {
                line: 2,
                expected: 4,
                found: 3,
                ..
            })
        ));
        let headless = ok.lines().nth(1).unwrap();
        assert!(matches!(
            read_embeddings(p(), headless.as_bytes()),
            Err(WorkbenchError::MissingHeader { .. })
        ));
        assert!(matches!(
            read_embeddings(p(), "".as_bytes()),
            Err(WorkbenchError::MissingHeader { .. })
        ));
    }
}
