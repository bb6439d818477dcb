//! Experiment harness: digraph enumeration and sampling, monotonicity-gap
//! scans and their CSV / JSON-lines reports.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arena::GameVariant;
use crate::digraph::{Digraph, VertexSet};
use crate::solver::{gap, verify_certificate, Certificate, MonotoneFailure, SolveOptions};

/// Largest `n` accepted by [`enumerate_digraphs`] (`2^20` digraphs at 5).
pub const ENUMERATION_MAX_VERTICES: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("exhaustive enumeration is limited to n <= {ENUMERATION_MAX_VERTICES}, got {n}")]
    TooLarge { n: usize },
    #[error("arc probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("family index must be at least 1, got {0}")]
    InvalidFamilyIndex(usize),
    #[error("the {variant} counterexample construction for k = {k} is not available")]
    ConstructionUnavailable { k: usize, variant: GameVariant },
    #[error("no counterexample family for the {0} variant")]
    UnsupportedFamilyVariant(GameVariant),
}

/// Ordered pairs `(u, v)`, `u != v`, row-major. Bit `i` of an enumeration
/// mask selects pair `i`.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

pub fn digraph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Digraph {
    let mut out = vec![VertexSet::EMPTY; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out[u].insert(v);
        }
    }
    Digraph::from_adjacency(out).expect("pairs are simple arcs")
}

/// Every labelled simple digraph on `n` vertices, in increasing arc-mask order.
pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>, LabError> {
    if n > ENUMERATION_MAX_VERTICES {
        return Err(LabError::TooLarge { n });
    }
    let pairs = ordered_pairs(n);
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |mask| digraph_from_mask(n, &pairs, mask)))
}

/// Erdős–Rényi style digraph: ChaCha8 seeded via `seed_from_u64(seed)`, one
/// `gen_bool(p)` draw per ordered pair in row-major order.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, LabError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(LabError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![VertexSet::EMPTY; n];
    for (u, v) in ordered_pairs(n) {
        if rng.gen_bool(p) {
            out[u].insert(v);
        }
    }
    Ok(Digraph::from_adjacency(out).expect("pairs are simple arcs"))
}

/// Where a scan takes its instances from.
#[derive(Clone, Debug)]
pub enum Source {
    Exhaustive {
        n: usize,
    },
    /// Instance `i` is `random_digraph(n, p, seed + i)`.
    Random {
        n: usize,
        count: usize,
        p: f64,
        seed: u64,
    },
    Instances(Vec<(String, Digraph)>),
}

impl Source {
    pub fn instances(&self) -> Result<Vec<(String, Digraph)>, LabError> {
        match self {
            Source::Exhaustive { n } => {
                let n = *n;
                Ok(enumerate_digraphs(n)?
                    .enumerate()
                    .map(|(mask, d)| (format!("n{n}-m{mask}"), d))
                    .collect())
            }
            Source::Random { n, count, p, seed } => (0..*count)
                .map(|i| {
                    let s = seed.wrapping_add(i as u64);
                    Ok((format!("n{n}-p{p}-s{s}"), random_digraph(*n, *p, s)?))
                })
                .collect(),
            Source::Instances(list) => Ok(list.clone()),
        }
    }
}

/// The `k`-th member of the non-monotonicity counterexample family.
///
/// The gadget construction is not transcribed yet, so every valid index
/// reports [`LabError::ConstructionUnavailable`]; callers still get the
/// argument validation.
pub fn counterexample_family(k: usize, variant: GameVariant) -> Result<Digraph, LabError> {
    if k == 0 {
        return Err(LabError::InvalidFamilyIndex(k));
    }
    if variant != GameVariant::VISIBLE && variant != GameVariant::INERT {
        return Err(LabError::UnsupportedFamilyVariant(variant));
    }
    Err(LabError::ConstructionUnavailable { k, variant })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub variant: GameVariant,
    pub copnum: Option<usize>,
    pub mon_copnum: Option<usize>,
    pub gap: Option<usize>,
    pub ratio: Option<f64>,
    pub runtime_ms: u64,
    pub status: String,
    pub cert_path: Option<String>,
    pub mon_cert_path: Option<String>,
    /// Plain certificate at `copnum`; kept for positive gaps.
    #[serde(skip)]
    pub certificate: Option<Certificate>,
    #[serde(skip)]
    pub monotone_certificate: Option<Certificate>,
    /// Monotone failure at `copnum`; present for positive gaps.
    #[serde(skip)]
    pub attestation: Option<MonotoneFailure>,
}

pub const GAP_CSV_HEADER: &str =
    "graph_id,n,m,variant,copnum,mon_copnum,gap,ratio,runtime_ms,status";

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl GapRecord {
    pub fn to_csv(&self) -> String {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.graph_id),
            self.n,
            self.m,
            self.variant,
            opt(self.copnum),
            opt(self.mon_copnum),
            opt(self.gap),
            self.ratio.map(|r| format!("{r:.4}")).unwrap_or_default(),
            self.runtime_ms,
            csv_field(&self.status)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanSummary {
    pub instances: usize,
    pub solved: usize,
    pub errors: usize,
    pub positive_gaps: usize,
    pub max_gap: usize,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub records: Vec<GapRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(GAP_CSV_HEADER);
        s.push('\n');
        for r in &self.records {
            s.push_str(&r.to_csv());
            s.push('\n');
        }
        s
    }

    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    pub solve: SolveOptions,
    /// Record wall-clock time; otherwise `runtime_ms` is 0 so reports are
    /// byte-for-byte reproducible.
    pub timing: bool,
}

fn scan_one(id: &str, d: &Digraph, variant: GameVariant, opts: ScanOptions) -> GapRecord {
    let started = Instant::now();
    let mut record = GapRecord {
        graph_id: id.to_string(),
        n: d.vertex_count(),
        m: d.arc_count(),
        variant,
        copnum: None,
        mon_copnum: None,
        gap: None,
        ratio: None,
        runtime_ms: 0,
        status: "ok".into(),
        cert_path: None,
        mon_cert_path: None,
        certificate: None,
        monotone_certificate: None,
        attestation: None,
    };
    match gap(d, variant, opts.solve) {
        Ok(g) => {
            record.copnum = Some(g.cop_number);
            record.mon_copnum = Some(g.monotone_cop_number);
            record.gap = Some(g.gap);
            record.ratio = Some(g.ratio);
            if g.gap > 0 {
                let plain_ok =
                    matches!(verify_certificate(d, &g.certificate), Ok(v) if v.is_valid());
                let mono_ok =
                    matches!(verify_certificate(d, &g.monotone_certificate), Ok(v) if v.is_valid());
                if !(plain_ok && mono_ok) || g.attestation.is_none() {
                    record.status = "error: gap certificate failed verification".into();
                }
                record.certificate = Some(g.certificate);
                record.monotone_certificate = Some(g.monotone_certificate);
                record.attestation = g.attestation;
            }
        }
        Err(e) => record.status = format!("error: {e}"),
    }
    if opts.timing {
        record.runtime_ms = started.elapsed().as_millis() as u64;
    }
    record
}

/// Solves every instance for its plain and monotone cop numbers. Instances
/// run in parallel; records keep source order. Per-instance solver errors
/// are recorded in the row and the scan continues.
pub fn gap_scan(
    source: &Source,
    variant: GameVariant,
    opts: ScanOptions,
) -> Result<ScanReport, LabError> {
    let instances = source.instances()?;
    let records: Vec<GapRecord> = instances
        .par_iter()
        .map(|(id, d)| scan_one(id, d, variant, opts))
        .collect();
    let mut summary = ScanSummary {
        instances: records.len(),
        ..Default::default()
    };
    for r in &records {
        match r.gap {
            Some(g) if r.status == "ok" => {
                summary.solved += 1;
                if g > 0 {
                    summary.positive_gaps += 1;
                }
                summary.max_gap = summary.max_gap.max(g);
                summary.max_ratio = summary.max_ratio.max(r.ratio.unwrap_or(1.0));
            }
            _ => summary.errors += 1,
        }
    }
    Ok(ScanReport { records, summary })
}
