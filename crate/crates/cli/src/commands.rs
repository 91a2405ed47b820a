use cmlie::weights::{index_set_generators, RootsOfUnity};
use cmlie::{
    classical_witt, descend_character, free_lie_dims, lyndon_basis, outer_special_dims,
    special_kernel_basis, total_collapse, witt_dim, FreeLie, MultiDegree,
};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::output::{BasisEntry, Check, OutputRecord, Row};
use crate::{BasisKind, DimsMode};

fn truncation_error(needed: i64, truncation: u32) -> CliError {
    CliError::Core(cmlie::Error::Truncation { needed, truncation })
}

pub fn dims(wk: i64, max_degree: i64, mode: DimsMode, truncation: u32) -> CliResult<OutputRecord> {
    let w = RootsOfUnity::new(wk)?;
    if max_degree > truncation as i64 {
        return Err(truncation_error(max_degree, truncation));
    }
    let mode_name = match mode {
        DimsMode::FreeUpperBound => "free-upper-bound",
        DimsMode::OuterSpecial => "outer-special",
        DimsMode::ClassicalWitt => "classical-witt",
    };
    let mut rec = OutputRecord::new("dims")
        .param("mode", mode_name)
        .param("wk", w.get())
        .param("max_degree", max_degree)
        .param("truncation", truncation);
    match mode {
        DimsMode::FreeUpperBound => {
            let gens = index_set_generators(w.get(), max_degree)?;
            let dims = free_lie_dims(&gens, max_degree as u32)?;
            rec.table.extend(dims.iter().filter(|(_, c)| *c != 0).map(|(m, c)| Row::at(m, c)));
            let collapse = total_collapse(&dims);
            rec.table
                .extend((1..=max_degree).map(|n| Row::total(n, collapse[n as usize])));
        }
        DimsMode::OuterSpecial => {
            let lie = FreeLie::new(truncation)?;
            let table = outer_special_dims(&lie, max_degree)?.centralizing(w.get());
            rec.table
                .extend(table.entries.values().map(|e| Row::at(e.bidegree, e.outer_dim as i64)));
            rec.table
                .extend(table.totals().into_iter().map(|(n, d)| Row::total(n, d as i64)));
            rec.provenance.push(Check {
                name: "bracket-surjective".into(),
                passed: table.all_surjective(),
                detail: format!("{} bidegrees", table.entries.len()),
            });
        }
        DimsMode::ClassicalWitt => {
            let rows: Vec<Row> = (1..=max_degree)
                .into_par_iter()
                .map(|n| -> CliResult<Vec<Row>> {
                    let mut rows = MultiDegree::with_total(n)
                        .map(|m| Ok(Row::at(m, witt_dim(m)? as i64)))
                        .collect::<CliResult<Vec<_>>>()?;
                    rows.push(Row::total(n, classical_witt(n as u64)? as i64));
                    Ok(rows)
                })
                .collect::<CliResult<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            rec.table = rows;
        }
    }
    rec.sort_table();
    Ok(rec)
}

pub fn basis(bidegree: &str, kind: BasisKind, truncation: u32) -> CliResult<OutputRecord> {
    let m: MultiDegree = bidegree.parse()?;
    let mut rec = OutputRecord::new("basis").param("bidegree", m);
    match kind {
        BasisKind::Lyndon => {
            rec = rec.param("kind", "lyndon");
            rec.basis = lyndon_basis(m)?
                .iter()
                .enumerate()
                .map(|(i, w)| BasisEntry {
                    index: i,
                    word: Some(w.to_string()),
                    bracketing: Some(w.bracketing()),
                    image_x: None,
                    image_y: None,
                })
                .collect();
        }
        BasisKind::SpecialDerivation => {
            rec = rec.param("kind", "special-derivation").param("truncation", truncation);
            let lie = FreeLie::new(truncation)?;
            rec.basis = special_kernel_basis(&lie, m)?
                .vectors
                .iter()
                .enumerate()
                .map(|(i, d)| BasisEntry {
                    index: i,
                    word: None,
                    bracketing: None,
                    image_x: Some(d.image_x().to_string()),
                    image_y: Some(d.image_y().to_string()),
                })
                .collect();
        }
    }
    Ok(rec)
}

pub fn index_set(wk: i64, bound: i64) -> CliResult<OutputRecord> {
    let mut rec = OutputRecord::new("index-set").param("wk", wk).param("bound", bound);
    for m in cmlie::index_set(wk, bound)? {
        let (a, b) = descend_character(m, wk)?;
        rec.table.push(Row {
            character: Some([a, b]),
            ..Row::at(m, 1)
        });
    }
    rec.sort_table();
    Ok(rec)
}

pub fn verify(opts: &cmlie::verify::VerifyOptions) -> CliResult<OutputRecord> {
    let mut rec = OutputRecord::new("verify")
        .param("max_degree", opts.max_degree)
        .param("truncation", opts.truncation)
        .param("seed", opts.seed)
        .param("samples", opts.leibniz_samples);
    if opts.fault.is_some() {
        rec = rec.param("inject_fault", "flip-x-bracket");
    }
    rec.provenance = cmlie::verify::run_all(opts)?
        .into_iter()
        .map(|c| Check {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        })
        .collect();
    Ok(rec)
}
