//! The output record and its three renderings.

use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One table entry, keyed either by a bidegree or by a bare total degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub bidegree: Option<[i64; 2]>,
    pub total_degree: i64,
    pub value: i64,
    /// Coordinates of the character after descending through the roots of
    /// unity; only set by `index-set`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub character: Option<[i64; 2]>,
}

impl Row {
    pub fn at(m: cmlie::MultiDegree, value: i64) -> Self {
        Row {
            bidegree: Some([m.m1, m.m2]),
            total_degree: m.total(),
            value,
            character: None,
        }
    }

    pub fn total(n: i64, value: i64) -> Self {
        Row {
            bidegree: None,
            total_degree: n,
            value,
            character: None,
        }
    }

    /// Bidegree rows by `(|m|, m1)` first, then total-degree rows.
    fn sort_key(&self) -> (bool, i64, i64) {
        let m1 = self.bidegree.map_or(0, |b| b[0]);
        (self.bidegree.is_none(), self.total_degree, m1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bracketing: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image_x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image_y: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub table: Vec<Row>,
    pub basis: Vec<BasisEntry>,
    pub provenance: Vec<Check>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            table: Vec::new(),
            basis: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sort_table(&mut self) {
        self.table.sort_by_key(Row::sort_key);
    }

    pub fn all_passed(&self) -> bool {
        self.provenance.iter().all(|c| c.passed)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => self.write_csv(out)?,
            Format::Table => self.write_table(out)?,
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut impl Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        if !self.table.is_empty() {
            let pair = |p: Option<[i64; 2]>| match p {
                Some([a, b]) => [a.to_string(), b.to_string()],
                None => [String::new(), String::new()],
            };
            let with_char = self.table.iter().any(|r| r.character.is_some());
            let mut header = vec!["m1", "m2", "total_degree", "value"];
            if with_char {
                header.extend(["a", "b"]);
            }
            w.write_record(&header)?;
            for r in &self.table {
                let [a, b] = pair(r.bidegree);
                let mut rec = vec![a, b, r.total_degree.to_string(), r.value.to_string()];
                if with_char {
                    rec.extend(pair(r.character));
                }
                w.write_record(&rec)?;
            }
        } else if !self.basis.is_empty() {
            w.write_record(["index", "word", "bracketing", "image_x", "image_y"])?;
            for e in &self.basis {
                let f = |s: &Option<String>| s.clone().unwrap_or_default();
                w.write_record([
                    e.index.to_string(),
                    f(&e.word),
                    f(&e.bracketing),
                    f(&e.image_x),
                    f(&e.image_y),
                ])?;
            }
        } else if !self.provenance.is_empty() {
            w.write_record(["check", "passed", "detail"])?;
            for c in &self.provenance {
                w.write_record([c.name.clone(), c.passed.to_string(), c.detail.clone()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    fn write_table(&self, out: &mut impl Write) -> CliResult<()> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "# {} {}", self.command, params.join(" "))?;
        let (by_bidegree, by_total): (Vec<&Row>, Vec<&Row>) =
            self.table.iter().partition(|r| r.bidegree.is_some());
        if !by_bidegree.is_empty() {
            writeln!(out, "{:<10} {:>6} {:>10}", "bidegree", "total", "value")?;
            for r in by_bidegree {
                let [a, b] = r.bidegree.unwrap_or_default();
                write!(out, "{:<10} {:>6} {:>10}", format!("({a},{b})"), r.total_degree, r.value)?;
                if let Some([ca, cb]) = r.character {
                    write!(out, "  chi=({ca},{cb})")?;
                }
                writeln!(out)?;
            }
        }
        if !by_total.is_empty() {
            writeln!(out, "{:>6} {:>10}", "total", "value")?;
            for r in by_total {
                writeln!(out, "{:>6} {:>10}", r.total_degree, r.value)?;
            }
        }
        for e in &self.basis {
            match (&e.word, &e.image_x) {
                (Some(w), _) => {
                    let br = e.bracketing.as_deref().unwrap_or("");
                    writeln!(out, "{:>3}  {w}  {br}", e.index)?;
                }
                (None, Some(ix)) => {
                    let iy = e.image_y.as_deref().unwrap_or("0");
                    writeln!(out, "{:>3}  x -> {ix}; y -> {iy}", e.index)?;
                }
                (None, None) => {}
            }
        }
        for c in &self.provenance {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{mark} {:<22} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut rec = OutputRecord::new("dims").param("wk", 2).param("mode", "outer-special");
        rec.table = vec![
            Row::total(4, 3),
            Row::at(cmlie::MultiDegree::new(2, 2), 1),
            Row {
                character: Some([2, -1]),
                ..Row::at(cmlie::MultiDegree::new(1, 3), 1)
            },
        ];
        rec.basis.push(BasisEntry {
            index: 0,
            word: None,
            bracketing: None,
            image_x: Some("-1/2*XXY".into()),
            image_y: Some("1*XYY".into()),
        });
        rec.provenance.push(Check {
            name: "bracket-surjective".into(),
            passed: true,
            detail: "a, \"quoted\" detail".into(),
        });
        rec
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let rec = sample();
        let mut buf = Vec::new();
        rec.write(Format::Json, &mut buf).unwrap();
        let back: OutputRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn table_sorting_puts_bidegrees_first() {
        let mut rec = sample();
        rec.sort_table();
        let keys: Vec<_> = rec.table.iter().map(|r| (r.bidegree, r.total_degree)).collect();
        assert_eq!(keys, vec![(Some([1, 3]), 4), (Some([2, 2]), 4), (None, 4)]);
    }

    #[test]
    fn csv_quotes_details() {
        let mut rec = OutputRecord::new("verify");
        rec.provenance = sample().provenance;
        let mut buf = Vec::new();
        rec.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "check,passed,detail\nbracket-surjective,true,\"a, \"\"quoted\"\" detail\"\n"
        );
    }
}
