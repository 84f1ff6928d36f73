//! JSON and CSV file formats. Subchannel indices in files are 1-based.

use std::io::Write;

use anyhow::Result;
use serde::{Deserialize, Serialize};

use polar_ga::construction::Construction;
use polar_ga::diagnostics::SetCensus;

use crate::{Method, SimResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub method: String,
    pub n: u32,
    #[serde(rename = "N")]
    pub block_len: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub sigma2: f64,
    pub info_set: Vec<usize>,
    pub sc_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub means: Option<Vec<f64>>,
}

impl ConstructionRecord {
    pub fn new(method: Method, c: &Construction) -> Self {
        ConstructionRecord {
            method: method.name().to_string(),
            n: c.code.level(),
            block_len: c.code.block_len(),
            k: c.code.k(),
            sigma2: c.sigma2,
            info_set: c.code.info_set().iter().map(|&j| j + 1).collect(),
            sc_bound: c.sc_bound(),
            means: c.profile.means().map(<[f64]>::to_vec),
        }
    }
}

pub fn write_construction<W: Write>(out: W, record: &ConstructionRecord) -> Result<()> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, record)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: u32,
    pub mu_pvs: u64,
    pub theta_pvs: f64,
    pub mu_prs: u64,
    pub theta_prs: f64,
}

impl From<&SetCensus> for CensusRow {
    fn from(c: &SetCensus) -> Self {
        CensusRow {
            n: c.n,
            mu_pvs: c.mu_pvs,
            theta_pvs: c.theta_pvs,
            mu_prs: c.mu_prs,
            theta_prs: c.theta_prs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CleRow {
    pub t: f64,
    pub method: String,
    pub cle_exact: f64,
    pub cle_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub ebn0_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    /// Empty when no bound applies.
    pub sc_bound: Option<f64>,
}

pub fn sim_rows(result: &SimResult) -> Vec<SimRow> {
    result
        .points
        .iter()
        .map(|p| SimRow {
            ebn0_db: p.ebn0_db,
            trials: p.trials,
            block_errors: p.block_errors,
            bler: p.bler,
            sc_bound: p.sc_bound,
        })
        .collect()
}

/// Writes `rows` as CSV with a header row.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(data: &[u8]) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(data);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
