//! Leaderboard and statistics rendering.

use std::io::{self, Write};

use ncpara_core::gold::DatasetStats;
use ncpara_core::scoring::{GoldMatch, ScoreReport};
use ncpara_core::{GoldList, Mode};
use serde::Serialize;

/// `x * 100` rounded half-to-even at one decimal, e.g. `0.5294 -> "52.9"`.
pub fn percent(x: f64) -> String {
    format!("{:.1}", (x * 1000.0).round_ties_even() / 10.0)
}

fn percent_or_dash(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), percent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// One scored system, named by its input path.
pub struct SystemResult<'a> {
    pub name: &'a str,
    pub report: &'a ScoreReport,
    pub gold: &'a [GoldList],
}

pub fn write_leaderboard<W: Write>(
    mut w: W,
    results: &[SystemResult<'_>],
    format: Format,
    per_compound: bool,
) -> io::Result<()> {
    match format {
        Format::Text => {
            writeln!(w, "# system\tiso / noniso")?;
            for r in results {
                writeln!(w, "{}\t{} / {}", r.name, percent_or_dash(r.report.iso), percent_or_dash(r.report.noniso))?;
                if per_compound {
                    for c in &r.report.compounds {
                        writeln!(w, "  {}\t{} / {}", c.compound, percent_or_dash(c.iso), percent_or_dash(c.noniso))?;
                    }
                }
            }
        }
        Format::Tsv => {
            writeln!(w, "system\tcompound\tiso\tnoniso")?;
            for r in results {
                writeln!(
                    w,
                    "{}\tALL\t{}\t{}",
                    r.name,
                    percent_or_dash(r.report.iso),
                    percent_or_dash(r.report.noniso)
                )?;
                if per_compound {
                    for c in &r.report.compounds {
                        writeln!(
                            w,
                            "{}\t{}\t{}\t{}",
                            r.name,
                            c.compound,
                            percent_or_dash(c.iso),
                            percent_or_dash(c.noniso)
                        )?;
                    }
                }
            }
        }
        Format::Json => {
            let doc = JsonLeaderboard {
                rank_r: results.first().map(|r| r.report.rank_r),
                systems: results.iter().map(|r| JsonSystem::new(r, per_compound)).collect(),
            };
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

#[derive(Serialize)]
struct JsonLeaderboard<'a> {
    rank_r: Option<f64>,
    systems: Vec<JsonSystem<'a>>,
}

#[derive(Serialize)]
struct JsonSystem<'a> {
    system: &'a str,
    mode: &'static str,
    iso: Option<f64>,
    noniso: Option<f64>,
    iso_percent: Option<String>,
    noniso_percent: Option<String>,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compounds: Option<Vec<JsonCompound>>,
}

#[derive(Serialize)]
struct JsonCompound {
    compound: String,
    submitted: bool,
    iso: Option<f64>,
    noniso: Option<f64>,
    paraphrases: Vec<JsonParaphrase>,
}

#[derive(Serialize)]
struct JsonParaphrase {
    position: usize,
    tokens: String,
    iso_match: Option<JsonMatch>,
    noniso_match: Option<JsonMatch>,
}

#[derive(Serialize)]
struct JsonMatch {
    gold_entry: usize,
    gold: String,
    rank: u32,
    overlap: f64,
    weighted: f64,
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Iso => "iso",
        Mode::NonIso => "noniso",
        Mode::Both => "both",
    }
}

impl<'a> JsonSystem<'a> {
    fn new(r: &SystemResult<'a>, per_compound: bool) -> Self {
        let rep = r.report;
        let compounds = per_compound.then(|| {
            rep.compounds
                .iter()
                .zip(r.gold)
                .map(|(c, g)| {
                    let describe = |m: Option<GoldMatch>| {
                        m.map(|m| {
                            let e = &g.entries()[m.entry];
                            JsonMatch {
                                gold_entry: m.entry,
                                gold: e.tokens.joined(),
                                rank: e.rank,
                                overlap: m.overlap,
                                weighted: m.weighted,
                            }
                        })
                    };
                    JsonCompound {
                        compound: c.compound.to_string(),
                        submitted: c.submitted,
                        iso: c.iso,
                        noniso: c.noniso,
                        paraphrases: c
                            .paraphrases
                            .iter()
                            .map(|p| JsonParaphrase {
                                position: p.position,
                                tokens: p.tokens.joined(),
                                iso_match: describe(p.iso),
                                noniso_match: describe(p.noniso),
                            })
                            .collect(),
                    }
                })
                .collect()
        });
        JsonSystem {
            system: r.name,
            mode: mode_name(rep.mode),
            iso: rep.iso,
            noniso: rep.noniso,
            iso_percent: rep.iso.map(percent),
            noniso_percent: rep.noniso.map(percent),
            warnings: rep.warnings.iter().map(ToString::to_string).collect(),
            compounds,
        }
    }
}

fn thousands(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

fn avg(x: f64) -> String {
    format!("{:.1}", (x * 10.0).round_ties_even() / 10.0)
}

/// Statistics laid out as totals plus min / max / avg per compound.
pub fn write_stats<W: Write>(mut w: W, stats: &DatasetStats, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "compounds": stats.compounds,
                "paraphrases": {
                    "total": stats.total,
                    "min": stats.per_compound.min,
                    "max": stats.per_compound.max,
                    "avg": stats.per_compound.avg,
                },
                "unique_paraphrases": {
                    "total": stats.unique,
                    "min": stats.unique_per_compound.min,
                    "max": stats.unique_per_compound.max,
                    "avg": stats.unique_per_compound.avg,
                },
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
        Format::Tsv => {
            writeln!(w, "row\ttotal\tmin\tmax\tavg")?;
            writeln!(w, "compounds\t{}\t\t\t", stats.compounds)?;
            let s = &stats.per_compound;
            writeln!(w, "paraphrases\t{}\t{}\t{}\t{}", stats.total, s.min, s.max, avg(s.avg))?;
            let s = &stats.unique_per_compound;
            writeln!(w, "unique paraphrases\t{}\t{}\t{}\t{}", stats.unique, s.min, s.max, avg(s.avg))?;
        }
        Format::Text => {
            let title = format!("Gold ({} NCs)", stats.compounds);
            writeln!(w, "{:<20}{:>10}   Min / Max / Avg", title, "Total")?;
            let s = &stats.per_compound;
            writeln!(
                w,
                "{:<20}{:>10}   {} / {} / {}",
                "paraphrases",
                thousands(stats.total),
                s.min,
                s.max,
                avg(s.avg)
            )?;
            let s = &stats.unique_per_compound;
            writeln!(
                w,
                "{:<20}{:>10}   {} / {} / {}",
                "unique paraphrases",
                thousands(stats.unique),
                s.min,
                s.max,
                avg(s.avg)
            )?;
        }
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_rounds_half_even() {
        assert_eq!(percent(1.0), "100.0");
        assert_eq!(percent(0.0), "0.0");
        assert_eq!(percent(9.0 / 17.0), "52.9");
        // exact binary halves
        assert_eq!(percent(0.0625), "6.2");
        assert_eq!(percent(0.1875), "18.8");
    }

    #[test]
    fn thousands_separator() {
        assert_eq!(thousands(9706), "9,706");
        assert_eq!(thousands(706), "706");
        assert_eq!(thousands(1_234_567), "1,234,567");
    }
}
