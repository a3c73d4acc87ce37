//! Tab-separated file formats.
//!
//! * raw annotations: `modifier<TAB>head<TAB>paraphrase[<TAB>annotator]`
//! * compiled gold: `modifier<TAB>head<TAB>rank<TAB>frequency<TAB>paraphrase`
//! * system output: `modifier<TAB>head<TAB>position<TAB>paraphrase`, with
//!   1-based positions dense per compound
//!
//! Blank lines and lines starting with `#` are skipped in every format.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use ncpara_core::{AnnotationRecord, Compound, GoldEntry, GoldList, RawParaphrase, Submission};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Data { line: usize, source: ncpara_core::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line { line, message: message.into() }
}

/// A parsed item together with its 1-based source line.
#[derive(Debug, Clone, PartialEq)]
pub struct Located<T> {
    pub line: usize,
    pub value: T,
}

/// Yields `(line number, fields)` for every content line.
fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), FormatError>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let l = l.strip_suffix('\r').map(str::to_owned).unwrap_or(l);
            if l.trim().is_empty() || l.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, l)))
            }
        }
    })
}

fn compound_at(line: usize, modifier: &str, head: &str) -> Result<Compound, FormatError> {
    Compound::new(modifier, head).map_err(|source| FormatError::Data { line, source })
}

fn paraphrase_at(line: usize, field: usize, text: &str) -> Result<RawParaphrase, FormatError> {
    RawParaphrase::new(text).map_err(|_| line_err(line, format!("field {field} (paraphrase): empty paraphrase")))
}

fn number_at<T: std::str::FromStr>(line: usize, field: usize, name: &str, text: &str) -> Result<T, FormatError> {
    text.trim()
        .parse()
        .map_err(|_| line_err(line, format!("field {field} ({name}): expected a non-negative integer, found {text:?}")))
}

pub fn parse_raw_annotations<R: BufRead>(reader: R) -> Result<Vec<Located<AnnotationRecord>>, FormatError> {
    let mut out = Vec::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(line_err(line, format!("expected 3 or 4 tab-separated fields, found {}", fields.len())));
        }
        let compound = compound_at(line, fields[0], fields[1])?;
        let paraphrase = paraphrase_at(line, 3, fields[2])?;
        let annotator = fields.get(3).map(|s| s.trim()).filter(|s| !s.is_empty()).map(str::to_owned);
        out.push(Located { line, value: AnnotationRecord { compound, paraphrase, annotator } });
    }
    Ok(out)
}

/// Reads a gold file into one list per compound, in order of first appearance.
pub fn parse_gold_file<R: BufRead>(reader: R) -> Result<Vec<GoldList>, FormatError> {
    let mut order: Vec<(Compound, usize)> = Vec::new();
    let mut entries: HashMap<Compound, Vec<GoldEntry>> = HashMap::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 5 {
            return Err(line_err(line, format!("expected 5 tab-separated fields, found {}", fields.len())));
        }
        let compound = compound_at(line, fields[0], fields[1])?;
        let rank: u32 = number_at(line, 3, "rank", fields[2])?;
        let frequency: u32 = number_at(line, 4, "frequency", fields[3])?;
        if frequency == 0 {
            return Err(line_err(line, "field 4 (frequency): must be positive"));
        }
        let tokens = paraphrase_at(line, 5, fields[4])?
            .tokenize()
            .map_err(|_| line_err(line, "field 5 (paraphrase): no tokens"))?;
        let slot = entries.entry(compound.clone()).or_insert_with(|| {
            order.push((compound, line));
            Vec::new()
        });
        slot.push(GoldEntry { tokens, rank, frequency });
    }
    let mut lists = Vec::with_capacity(order.len());
    for (compound, line) in order {
        let e = entries.remove(&compound).unwrap_or_default();
        lists.push(GoldList::new(compound, e).map_err(|source| FormatError::Data { line, source })?);
    }
    Ok(lists)
}

/// Writes gold lists sorted by (modifier, head, rank, paraphrase).
pub fn write_gold_file<W: Write>(mut writer: W, gold: &[GoldList]) -> io::Result<()> {
    let mut rows: Vec<(&Compound, u32, String, u32)> = gold
        .iter()
        .flat_map(|g| g.entries().iter().map(move |e| (g.compound(), e.rank, e.tokens.joined(), e.frequency)))
        .collect();
    rows.sort();
    for (c, rank, text, freq) in rows {
        writeln!(writer, "{}\t{}\t{}\t{}\t{}", c.modifier(), c.head(), rank, freq, text)?;
    }
    writer.flush()
}

/// Reads a system output file. Each compound's lines must be contiguous and
/// its positions must run 1..=n.
pub fn parse_system_output<R: BufRead>(reader: R) -> Result<Submission, FormatError> {
    struct Block {
        compound: Compound,
        items: Vec<(usize, usize, RawParaphrase)>,
    }
    let mut blocks: Vec<Block> = Vec::new();
    let mut seen: HashMap<Compound, usize> = HashMap::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 4 {
            return Err(line_err(line, format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let compound = compound_at(line, fields[0], fields[1])?;
        let position: usize = number_at(line, 3, "position", fields[2])?;
        if position == 0 {
            return Err(line_err(line, "field 3 (position): positions are 1-based"));
        }
        let paraphrase = paraphrase_at(line, 4, fields[3])?;
        let continues = blocks.last().is_some_and(|b| b.compound == compound);
        if !continues {
            if let Some(first) = seen.get(&compound) {
                return Err(line_err(
                    line,
                    format!("compound '{compound}' appears again after line {first} (duplicate compound)"),
                ));
            }
            seen.insert(compound.clone(), line);
            blocks.push(Block { compound, items: Vec::new() });
        }
        blocks.last_mut().expect("block pushed above").items.push((position, line, paraphrase));
    }

    let mut items = Vec::with_capacity(blocks.len());
    for mut b in blocks {
        b.items.sort_by_key(|(pos, line, _)| (*pos, *line));
        for (expected, (pos, line, _)) in (1..).zip(&b.items) {
            if *pos != expected {
                let what = if *pos < expected { "repeats" } else { "skips" };
                return Err(line_err(
                    *line,
                    format!("position {pos} for '{}' {what} a position (positions must be dense 1..n)", b.compound),
                ));
            }
        }
        items.push((b.compound, b.items.into_iter().map(|(_, _, p)| p).collect()));
    }
    Ok(Submission::new(items).expect("compound blocks are unique"))
}

pub fn write_system_output<W: Write>(mut writer: W, items: &[(Compound, Vec<RawParaphrase>)]) -> io::Result<()> {
    for (c, paraphrases) in items {
        for (i, p) in paraphrases.iter().enumerate() {
            writeln!(writer, "{}\t{}\t{}\t{}", c.modifier(), c.head(), i + 1, p)?;
        }
    }
    writer.flush()
}

/// One compound per line: `modifier<TAB>head` or `modifier head`.
pub fn parse_compound_list<R: BufRead>(reader: R) -> Result<Vec<Compound>, FormatError> {
    let mut out = Vec::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(line_err(line, format!("expected modifier and head, found {} fields", fields.len())));
        }
        out.push(compound_at(line, fields[0], fields[1])?);
    }
    Ok(out)
}
