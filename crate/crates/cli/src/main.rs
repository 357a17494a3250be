//! `hqx`: exact hypercube isoperimetry and extra-connectivity tables,
//! verifications, and oracle runs.
//!
//! Exit codes: 0 success / all checks pass, 1 a verified claim failed,
//! 2 usage or guard error, 3 enumeration budget exceeded.

mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hqx_core::hypercube::{vertex_boundary, CubeDim};
use hqx_core::isoperimetry::{
    boundary_cascade, boundary_closed_form, dimension_difference, plateau_identities, witness_set,
};
use hqx_core::oracle::{
    adversarial_trials, extra_conn_bruteforce, min_boundary_bruteforce, structure_trials,
    CutSearch, DEFAULT_BUDGET,
};
use hqx_core::reliability::{extra_conn_table, extra_connectivity};
use hqx_core::Error;

use output::{opt_cell, Format, Output};

/// Inclusive range written `a..b`; a bare value means a single point.
#[derive(Debug, Clone, Copy)]
struct Range {
    lo: u64,
    hi: u64,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| format!("invalid range bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("invalid range bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Range { lo, hi })
}

#[derive(Parser)]
#[command(
    name = "hqx",
    version,
    about = "Exact hypercube isoperimetry, fault structure, and extra connectivity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum m-boundary numbers over a range, cascade vs closed form.
    Boundary {
        #[arg(long)]
        n: u32,
        /// Inclusive order range, e.g. 1..10 or a single value.
        #[arg(long, value_parser = parse_range)]
        m: Range,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// The licensed extra-connectivity table with explicit gap rows.
    Extraconn {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Oracle runs and identity sweeps; exit 0 means zero violations.
    #[command(subcommand)]
    Verify(Verify),
    /// An extremal witness set and its boundary size against the b_v target.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Exhaustive minimum-boundary search vs the cascade formula.
    #[command(name = "boundary-oracle")]
    BoundaryOracle {
        #[arg(long)]
        n: u32,
        /// Orders to check; defaults to 1..2^n-1.
        #[arg(long, value_parser = parse_range)]
        m: Option<Range>,
        /// Candidate cap; defaults to HQX_BUDGET or 20000000.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Exhaustive smallest extra-cut search vs the closed form.
    #[command(name = "extraconn-oracle")]
    ExtraconnOracle {
        #[arg(long)]
        n: u32,
        /// Single h-1 to check; defaults to the feasible range for n.
        #[arg(long)]
        h: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Seeded fault-injection trials of the small-component guarantee.
    Structure {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Bias sampling toward witness boundaries instead of uniform sets.
        #[arg(long)]
        adversarial: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Plateau, strict-run, and jump identities over a dimension sweep.
    Plateaus {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// First differences b_v(h; Q_n) - b_v(h-1; Q_{n-1}) over a sweep.
    Differences {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Budget { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Boundary { n, m, format } => cmd_boundary(n, m, format),
        Command::Extraconn { n, format } => cmd_extraconn(n, format),
        Command::Witness { n, m, format } => cmd_witness(n, m, format),
        Command::Verify(kind) => {
            let start = Instant::now();
            let result = match kind {
                Verify::BoundaryOracle {
                    n,
                    m,
                    budget,
                    format,
                } => verify_boundary_oracle(n, m, budget, format),
                Verify::ExtraconnOracle {
                    n,
                    h,
                    budget,
                    format,
                } => verify_extraconn_oracle(n, h, budget, format),
                Verify::Structure {
                    n,
                    h,
                    trials,
                    seed,
                    workers,
                    adversarial,
                    format,
                } => verify_structure(n, h, trials, seed, workers, adversarial, format),
                Verify::Plateaus {
                    n_min,
                    n_max,
                    format,
                } => verify_plateaus(n_min, n_max, format),
                Verify::Differences {
                    n_min,
                    n_max,
                    format,
                } => verify_differences(n_min, n_max, format),
            };
            // Timing goes to the error stream so reports stay byte-identical.
            eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
            result
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("HQX_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Domain(format!("invalid HQX_BUDGET value {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(e) => Err(Error::Domain(format!("unreadable HQX_BUDGET: {e}"))),
    }
}

fn order_limit(n: u32) -> Result<u64, Error> {
    if n == 0 || n > 64 {
        return Err(Error::Domain(format!(
            "dimension must satisfy 1 <= n <= 64, got {n}"
        )));
    }
    Ok(if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    })
}

fn success(all_pass: bool) -> ExitCode {
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// --- boundary ---------------------------------------------------------

#[derive(Serialize)]
struct BoundaryParams {
    n: u32,
    m_min: u64,
    m_max: u64,
}

#[derive(Serialize)]
struct BoundaryRow {
    m: u64,
    cascade: u64,
    closed_form: Option<u64>,
    agreement: &'static str,
}

#[derive(Serialize)]
struct BoundarySummary {
    rows: u64,
    agree: u64,
    mismatch: u64,
    not_applicable: u64,
}

fn cmd_boundary(n: u32, m: Range, format: Format) -> Result<ExitCode, Error> {
    let limit = order_limit(n)?;
    if m.lo < 1 || m.hi > limit {
        return Err(Error::Domain(format!(
            "orders must satisfy 1 <= m <= 2^{n} - 1, got {}..{}",
            m.lo, m.hi
        )));
    }
    let mut rows = Vec::new();
    let mut summary = BoundarySummary {
        rows: 0,
        agree: 0,
        mismatch: 0,
        not_applicable: 0,
    };
    for order in m.lo..=m.hi {
        let cascade = boundary_cascade(n, order)?.value;
        let closed_form = match boundary_closed_form(n, order) {
            Ok(v) => Some(v.value),
            Err(Error::Range(_)) => None,
            Err(other) => return Err(other),
        };
        let agreement = match closed_form {
            Some(c) if c == cascade => "ok",
            Some(_) => "mismatch",
            None => "n/a",
        };
        summary.rows += 1;
        match agreement {
            "ok" => summary.agree += 1,
            "mismatch" => summary.mismatch += 1,
            _ => summary.not_applicable += 1,
        }
        rows.push(BoundaryRow {
            m: order,
            cascade,
            closed_form,
            agreement,
        });
    }
    let all_ok = summary.mismatch == 0;
    let out = Output::new(
        "boundary",
        BoundaryParams {
            n,
            m_min: m.lo,
            m_max: m.hi,
        },
        rows,
        summary,
    );
    print!(
        "{}",
        out.render(format, "m,cascade,closed_form,agreement", |r| format!(
            "{},{},{},{}",
            r.m,
            r.cascade,
            opt_cell(r.closed_form),
            r.agreement
        ))
    );
    Ok(success(all_ok))
}

// --- extraconn --------------------------------------------------------

#[derive(Serialize)]
struct ExtraconnParams {
    n: u32,
}

#[derive(Serialize)]
struct ExtraconnRow {
    h_minus_1: u64,
    value: Option<u64>,
    formula_row: String,
    guard: String,
}

#[derive(Serialize)]
struct ExtraconnSummary {
    entries: u64,
    gaps: u64,
}

fn cmd_extraconn(n: u32, format: Format) -> Result<ExitCode, Error> {
    let table = extra_conn_table(n)?;
    let mut rows: Vec<ExtraconnRow> = table
        .entries
        .iter()
        .map(|e| ExtraconnRow {
            h_minus_1: e.h_minus_1,
            value: Some(e.value),
            formula_row: e.formula_row.to_string(),
            guard: e.guard().to_string(),
        })
        .chain(table.gaps.iter().map(|g| ExtraconnRow {
            h_minus_1: g.h_minus_1,
            value: None,
            formula_row: "gap".to_string(),
            guard: g.reason.clone(),
        }))
        .collect();
    rows.sort_by_key(|r| r.h_minus_1);
    let summary = ExtraconnSummary {
        entries: table.entries.len() as u64,
        gaps: table.gaps.len() as u64,
    };
    let out = Output::new("extraconn", ExtraconnParams { n }, rows, summary);
    print!(
        "{}",
        out.render(format, "h_minus_1,value,formula_row,guard", |r| format!(
            "{},{},{},{}",
            r.h_minus_1,
            opt_cell(r.value),
            r.formula_row,
            r.guard
        ))
    );
    Ok(ExitCode::SUCCESS)
}

// --- witness ----------------------------------------------------------

#[derive(Serialize)]
struct WitnessParams {
    n: u32,
    m: u64,
}

#[derive(Serialize)]
struct WitnessRow {
    index: u64,
    label_bits: String,
    label: u64,
}

#[derive(Serialize)]
struct WitnessSummary {
    family: String,
    order: u64,
    boundary: u64,
    target: u64,
    matched: bool,
}

fn cmd_witness(n: u32, m: u64, format: Format) -> Result<ExitCode, Error> {
    let dim = CubeDim::new(n)?;
    let witness = witness_set(dim, m)?;
    let boundary = vertex_boundary(&witness.vertices)?.len();
    let target = boundary_cascade(n, m)?.value;
    let rows: Vec<WitnessRow> = witness
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| WitnessRow {
            index: i as u64,
            label_bits: v.bit_string(n),
            label: v.0 as u64,
        })
        .collect();
    let summary = WitnessSummary {
        family: witness.family.to_string(),
        order: m,
        boundary,
        target,
        matched: boundary == target,
    };
    let matched = summary.matched;
    let out = Output::new("witness", WitnessParams { n, m }, rows, summary);
    print!(
        "{}",
        out.render(format, "index,label_bits,label", |r| format!(
            "{},{},{}",
            r.index, r.label_bits, r.label
        ))
    );
    Ok(success(matched))
}

// --- verify boundary-oracle --------------------------------------------

#[derive(Serialize)]
struct BoundaryOracleParams {
    n: u32,
    m_min: u64,
    m_max: u64,
    budget: u64,
}

#[derive(Serialize)]
struct BoundaryOracleRow {
    m: u64,
    oracle: u64,
    cascade: u64,
    explored: u64,
    matched: bool,
}

#[derive(Serialize)]
struct CheckSummary {
    checked: u64,
    matched: u64,
    mismatched: u64,
}

fn verify_boundary_oracle(
    n: u32,
    m: Option<Range>,
    budget: Option<u64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let dim = CubeDim::new(n)?;
    let budget = resolve_budget(budget)?;
    let m = m.unwrap_or(Range {
        lo: 1,
        hi: dim.vertex_count() - 1,
    });
    if m.lo < 1 || m.hi > dim.vertex_count() - 1 {
        return Err(Error::Domain(format!(
            "orders must satisfy 1 <= m <= 2^{n} - 1, got {}..{}",
            m.lo, m.hi
        )));
    }
    let mut rows = Vec::new();
    let mut summary = CheckSummary {
        checked: 0,
        matched: 0,
        mismatched: 0,
    };
    for order in m.lo..=m.hi {
        let oracle = min_boundary_bruteforce(dim, order, budget)?;
        let cascade = boundary_cascade(n, order)?.value;
        let matched = oracle.value == cascade;
        summary.checked += 1;
        if matched {
            summary.matched += 1;
        } else {
            summary.mismatched += 1;
        }
        rows.push(BoundaryOracleRow {
            m: order,
            oracle: oracle.value,
            cascade,
            explored: oracle.explored,
            matched,
        });
    }
    let all_ok = summary.mismatched == 0;
    let out = Output::new(
        "verify boundary-oracle",
        BoundaryOracleParams {
            n,
            m_min: m.lo,
            m_max: m.hi,
            budget,
        },
        rows,
        summary,
    );
    print!(
        "{}",
        out.render(format, "m,oracle,cascade,explored,matched", |r| format!(
            "{},{},{},{},{}",
            r.m, r.oracle, r.cascade, r.explored, r.matched
        ))
    );
    Ok(success(all_ok))
}

// --- verify extraconn-oracle ---------------------------------------------

#[derive(Serialize)]
struct ExtraconnOracleParams {
    n: u32,
    h_min: u64,
    h_max: u64,
    budget: u64,
}

#[derive(Serialize)]
struct ExtraconnOracleRow {
    h_minus_1: u64,
    oracle: Option<u64>,
    formula: Option<u64>,
    explored: u64,
    matched: bool,
}

fn verify_extraconn_oracle(
    n: u32,
    h: Option<u64>,
    budget: Option<u64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let dim = CubeDim::new(n)?;
    let budget = resolve_budget(budget)?;
    let (h_min, h_max) = match h {
        Some(h) => (h, h),
        // Feasible defaults under the standard budget.
        None => match n {
            4 => (0, 3),
            _ => (0, 1),
        },
    };
    let mut rows = Vec::new();
    let mut summary = CheckSummary {
        checked: 0,
        matched: 0,
        mismatched: 0,
    };
    for h_minus_1 in h_min..=h_max {
        let (oracle, explored) = match extra_conn_bruteforce(dim, h_minus_1, budget)? {
            CutSearch::Found(r) => (Some(r.value), r.explored),
            CutSearch::NotFound { explored, .. } => (None, explored),
        };
        let formula = extra_connectivity(n, h_minus_1).ok().map(|e| e.value);
        let matched = match (oracle, formula) {
            (Some(o), Some(f)) => o == f,
            (Some(_), None) => true,
            (None, _) => false,
        };
        summary.checked += 1;
        if matched {
            summary.matched += 1;
        } else {
            summary.mismatched += 1;
        }
        rows.push(ExtraconnOracleRow {
            h_minus_1,
            oracle,
            formula,
            explored,
            matched,
        });
    }
    let all_ok = summary.mismatched == 0;
    let out = Output::new(
        "verify extraconn-oracle",
        ExtraconnOracleParams {
            n,
            h_min,
            h_max,
            budget,
        },
        rows,
        summary,
    );
    print!(
        "{}",
        out.render(
            format,
            "h_minus_1,oracle,formula,explored,matched",
            |r| format!(
                "{},{},{},{},{}",
                r.h_minus_1,
                opt_cell(r.oracle),
                opt_cell(r.formula),
                r.explored,
                r.matched
            )
        )
    );
    Ok(success(all_ok))
}

// --- verify structure ----------------------------------------------------

#[derive(Serialize)]
struct StructureParams {
    n: u32,
    h: u64,
    trials: u64,
    seed: u64,
    sampler: &'static str,
}

// The worker count never appears in the report: partitioning must not be
// observable, and identical invocations stay byte-identical under any
// worker setting.
#[derive(Serialize)]
struct StructureRow {
    n: u32,
    h: u64,
    sampler: &'static str,
    trials: u64,
    seed: u64,
    violations: u64,
    worst_small_total: u64,
    bound: u64,
    threshold: u64,
    pass: bool,
}

#[derive(Serialize)]
struct StructureSummary {
    violations: u64,
    worst_small_total: u64,
    pass: bool,
}

fn verify_structure(
    n: u32,
    h: u64,
    trials: u64,
    seed: u64,
    workers: usize,
    adversarial: bool,
    format: Format,
) -> Result<ExitCode, Error> {
    let dim = CubeDim::new(n)?;
    let report = if adversarial {
        adversarial_trials(dim, h, trials, seed, workers)?
    } else {
        structure_trials(dim, h, trials, seed, workers)?
    };
    let sampler = if adversarial { "adversarial" } else { "uniform" };
    let bound = hqx_core::reliability::f_of_h(n, h)?;
    let threshold = boundary_cascade(n, h)?.value;
    let pass = report.violations == 0;
    let row = StructureRow {
        n,
        h,
        sampler,
        trials: report.trials,
        seed: report.seed,
        violations: report.violations,
        worst_small_total: report.worst_small_total,
        bound,
        threshold,
        pass,
    };
    let out = Output::new(
        "verify structure",
        StructureParams {
            n,
            h,
            trials,
            seed,
            sampler,
        },
        vec![row],
        StructureSummary {
            violations: report.violations,
            worst_small_total: report.worst_small_total,
            pass,
        },
    );
    print!(
        "{}",
        out.render(
            format,
            "n,h,sampler,trials,seed,violations,worst_small_total,bound,threshold,pass",
            |r| format!(
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.h,
                r.sampler,
                r.trials,
                r.seed,
                r.violations,
                r.worst_small_total,
                r.bound,
                r.threshold,
                r.pass
            )
        )
    );
    Ok(success(pass))
}

// --- verify plateaus -------------------------------------------------------

#[derive(Serialize)]
struct SweepParams {
    n_min: u32,
    n_max: u32,
}

#[derive(Serialize)]
struct PlateauRow {
    n: u32,
    claim: String,
    pass: bool,
}

#[derive(Serialize)]
struct SweepSummary {
    checks: u64,
    failures: u64,
}

fn verify_plateaus(n_min: u32, n_max: u32, format: Format) -> Result<ExitCode, Error> {
    if n_min > n_max {
        return Err(Error::Range(format!("empty sweep {n_min}..{n_max}")));
    }
    let mut rows = Vec::new();
    let mut failures = 0u64;
    for n in n_min..=n_max {
        for record in plateau_identities(n)? {
            if !record.pass {
                failures += 1;
            }
            rows.push(PlateauRow {
                n,
                claim: record.claim.to_string(),
                pass: record.pass,
            });
        }
    }
    let summary = SweepSummary {
        checks: rows.len() as u64,
        failures,
    };
    let out = Output::new(
        "verify plateaus",
        SweepParams { n_min, n_max },
        rows,
        summary,
    );
    print!(
        "{}",
        out.render(format, "n,claim,pass", |r| format!(
            "{},{},{}",
            r.n, r.claim, r.pass
        ))
    );
    Ok(success(failures == 0))
}

// --- verify differences -----------------------------------------------------

#[derive(Serialize)]
struct DifferenceRow {
    n: u32,
    h: u64,
    difference: u64,
    expected: u64,
    pass: bool,
}

fn verify_differences(n_min: u32, n_max: u32, format: Format) -> Result<ExitCode, Error> {
    if n_min > n_max {
        return Err(Error::Range(format!("empty sweep {n_min}..{n_max}")));
    }
    let mut rows = Vec::new();
    let mut failures = 0u64;
    for n in n_min..=n_max {
        for h in 2..=(2 * n as u64 - 1) {
            let difference = dimension_difference(n, h)?;
            let expected = if h <= n as u64 + 1 {
                n as u64 - 1
            } else {
                h - 2
            };
            let pass = difference == expected;
            if !pass {
                failures += 1;
            }
            rows.push(DifferenceRow {
                n,
                h,
                difference,
                expected,
                pass,
            });
        }
    }
    let summary = SweepSummary {
        checks: rows.len() as u64,
        failures,
    };
    let out = Output::new(
        "verify differences",
        SweepParams { n_min, n_max },
        rows,
        summary,
    );
    print!(
        "{}",
        out.render(format, "n,h,difference,expected,pass", |r| format!(
            "{},{},{},{},{}",
            r.n, r.h, r.difference, r.expected, r.pass
        ))
    );
    Ok(success(failures == 0))
}
