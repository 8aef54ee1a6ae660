//! Certificate rows for single graphs and for generated corpora.
//!
//! Sweep configurations are TOML:
//!
//! ```toml
//! oracle = false          # also run the exhaustive oracle on every instance
//! out = "sweep.csv"       # optional; the CLI flag --out takes precedence
//!
//! [[range]]
//! kind = "perturbed_turan"
//! n = [10, 20]            # inclusive vertex-count range
//! p = [2, 3]
//! params = ["0", "3"]     # generator parameter grid (k, or num/den)
//! seed_base = 1
//! replicates = 2
//! ```
//!
//! Instances are expanded in `n`, `p`, `param`, replicate order; the `i`-th
//! instance of a range (from 0) uses seed `seed_base + i`.
//!
//! Output is CSV with a leading `# schema=…` line, a header row, one row per
//! instance in expansion order and, when there is at least one row, a trailing
//! `# summary …` line.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::generators::GenSpec;
use crate::graph::Graph;
use crate::guards::Guards;
use crate::oracle::oracle_report_with;
use crate::stability::{corollary1_certificate_with, StabilityCertificate, StabilityOutcome};

pub const SCHEMA: &str = "stability-certificate/1";
pub const SCHEMA_WITH_ORACLE: &str = "stability-certificate+oracle/1";
pub const ORACLE_COLUMNS: [&str; 3] = ["max_p_partite_edges", "oracle_deletion", "exact_ed"];

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub oracle: bool,
    pub out: Option<PathBuf>,
    #[serde(default, rename = "range")]
    pub ranges: Vec<SpecRange>,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpecRange {
    pub kind: String,
    pub n: [usize; 2],
    pub p: Vec<usize>,
    pub params: Vec<String>,
    #[serde(default)]
    pub seed_base: u64,
    #[serde(default = "one")]
    pub replicates: usize,
}

fn one() -> usize {
    1
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map(|s| text[..s.start].lines().count().max(1))
                .unwrap_or(1),
            message: e.message().to_string(),
        })
    }

    /// All generator specs, in output order.
    pub fn expand(&self) -> Result<Vec<GenSpec>> {
        let mut specs = Vec::new();
        for range in &self.ranges {
            let mut seed = range.seed_base;
            for n in range.n[0]..=range.n[1] {
                for &p in &range.p {
                    for param in &range.params {
                        for _ in 0..range.replicates {
                            let line = format!("{}:{n}:{p}:{param}:{seed}", range.kind);
                            specs.push(line.parse()?);
                            seed = seed.wrapping_add(1);
                        }
                    }
                }
            }
        }
        Ok(specs)
    }

    /// Fails with [`Error::GuardExceeded`] if the oracle is on and an instance is too large.
    pub fn check_guards(&self, specs: &[GenSpec], guards: &Guards) -> Result<()> {
        if self.oracle {
            for spec in specs {
                guards.check_oracle(spec.n(), spec.p())?;
            }
        }
        Ok(())
    }
}

/// Oracle figures next to the algorithm's, with the sandwich checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleComparison {
    pub max_p_partite_edges: u64,
    /// `e(G) − max_p_partite_edges`.
    pub oracle_deletion: u64,
    pub exact_ed: u64,
    /// `e(G) − t ≤ max`, `internal_total ≥ oracle_deletion` and `exact_ed ≤ ed_G_K ≤ 3t`.
    pub sandwich_ok: bool,
}

#[derive(Debug, Clone)]
pub struct CertificateRow {
    pub certificate: StabilityCertificate,
    pub oracle: Option<OracleComparison>,
}

impl CertificateRow {
    /// Failures of verdicts that are theorems (including the oracle sandwich).
    pub fn theorem_failures(&self) -> usize {
        usize::from(!self.certificate.theorem_verdicts_hold())
            + usize::from(self.oracle.is_some_and(|o| !o.sandwich_ok))
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.theorem_failures() == 0 && self.certificate.balance_failures() == 0
    }

    pub fn csv_record(&self) -> Vec<String> {
        let mut record = self.certificate.csv_record();
        if let Some(o) = &self.oracle {
            record.extend(
                [o.max_p_partite_edges, o.oracle_deletion, o.exact_ed].map(|v| v.to_string()),
            );
        }
        record
    }
}

pub fn compare_with_oracle(
    g: &Graph,
    outcome: &StabilityOutcome,
    guards: &Guards,
) -> Result<OracleComparison> {
    let c = &outcome.certificate;
    let report = oracle_report_with(g, c.p, guards)?;
    let e = g.edge_count();
    let oracle_deletion = e - report.max_p_partite_edges;
    // e(G) − t is negative for sparse graphs, where the first check is vacuous
    let sandwich_ok = e as i128 - c.t as i128 <= report.max_p_partite_edges as i128
        && c.internal_total >= oracle_deletion
        && report.exact_ed_to_p_partite <= c.ed_g_k
        && c.ed_g_k <= 3 * c.t;
    Ok(OracleComparison {
        max_p_partite_edges: report.max_p_partite_edges,
        oracle_deletion,
        exact_ed: report.exact_ed_to_p_partite,
        sandwich_ok,
    })
}

/// Certificate row for one graph, optionally compared against the oracle.
pub fn certify(
    g: &Graph,
    p: usize,
    with_oracle: bool,
    seed: Option<u64>,
    guards: &Guards,
) -> Result<CertificateRow> {
    if with_oracle {
        guards.check_oracle(g.n(), p)?;
    }
    let outcome = corollary1_certificate_with(g, p, guards)?;
    let oracle = if with_oracle {
        Some(compare_with_oracle(g, &outcome, guards)?)
    } else {
        None
    };
    let mut certificate = outcome.certificate;
    certificate.seed = seed;
    Ok(CertificateRow {
        certificate,
        oracle,
    })
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<CertificateRow>,
    pub with_oracle: bool,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().map(CertificateRow::theorem_failures).sum()
    }

    pub fn balance_failures(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.certificate.balance_failures())
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let schema = if self.with_oracle {
            SCHEMA_WITH_ORACLE
        } else {
            SCHEMA
        };
        let mut header: Vec<&str> = StabilityCertificate::CSV_HEADER.to_vec();
        if self.with_oracle {
            header.extend(ORACLE_COLUMNS);
        }
        let mut out = format!("# schema={schema}\n");
        out.push_str(&csv_lines(std::iter::once(
            header.iter().map(|s| s.to_string()).collect(),
        )));
        out.push_str(&csv_lines(self.rows.iter().map(CertificateRow::csv_record)));
        if !self.rows.is_empty() {
            writeln!(
                out,
                "# summary rows={} failures={} balance_failures={}",
                self.rows.len(),
                self.failures(),
                self.balance_failures()
            )
            .unwrap();
        }
        out
    }
}

/// CSV lines for the given records.
pub fn csv_lines(records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for record in records {
        writer.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory"))
        .expect("CSV of ASCII fields")
}

/// Generates and certifies every instance; rows come back in expansion order.
pub fn run_sweep(config: &SweepConfig, guards: &Guards) -> Result<SweepResult> {
    let specs = config.expand()?;
    config.check_guards(&specs, guards)?;
    let rows = specs
        .par_iter()
        .map(|spec| {
            let g = spec.generate_with(guards)?;
            certify(&g, spec.p(), config.oracle, Some(spec.seed()), guards)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        rows,
        with_oracle: config.oracle,
    })
}

/// `a/b` in lowest terms.
pub fn fraction(a: u64, b: u64) -> String {
    if b == 0 {
        return format!("{a}/0");
    }
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    format!("{}/{}", a / x, b / x)
}

/// Human-readable summary of a certificate row.
pub fn render_report(row: &CertificateRow) -> String {
    let c = &row.certificate;
    let mut out = String::new();
    let verdict = |ok: bool| if ok { "holds" } else { "FAILS" };
    writeln!(
        out,
        "n = {}, p = {}, e(T_n,p) - e(G) = t = {}",
        c.n, c.p, c.t
    )
    .unwrap();
    writeln!(out, "steps s = {}, part sizes = {:?}", c.s, c.part_sizes).unwrap();
    writeln!(
        out,
        "internal edges = {} <= t: {} (internal/t = {})",
        c.internal_total,
        verdict(c.internal_total <= c.t),
        fraction(c.internal_total, c.t)
    )
    .unwrap();
    writeln!(
        out,
        "ed(G,K) = {} <= 3t = {}: {} (ed/t = {})",
        c.ed_g_k,
        3 * c.t,
        verdict(c.bound_3t_ok),
        fraction(c.ed_g_k, c.t)
    )
    .unwrap();
    writeln!(
        out,
        "imbalance sum (p|V_i| - n)^2 = {} <= 4tp^2: {}",
        c.imbalance, c.imbalance_ok
    )
    .unwrap();
    writeln!(
        out,
        "ed(K, Turan shape) = {}, ed^2 p <= n^2 t: {}",
        c.ed_k_tshape, c.co2_ok
    )
    .unwrap();
    if let Some(o) = &row.oracle {
        writeln!(
            out,
            "oracle: max p-partite subgraph = {}, optimum deletion = {}, exact ed = {}, sandwich {}",
            o.max_p_partite_edges,
            o.oracle_deletion,
            o.exact_ed,
            verdict(o.sandwich_ok)
        )
        .unwrap();
    }
    out
}
