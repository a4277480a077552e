//! Batch front end: resolve a configuration selector, run one operation,
//! render the report as JSON, CSV, or text, and write it to stdout or a file.
//!
//! Every report embeds the resolved numeric options so a run can be
//! reproduced from its own output. Fixed seeds give bit-identical outputs
//! across runs on the same platform.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::catalog::{self, PointConfiguration};
use crate::certificates::certify_max;
use crate::designs::{sharpness_report, DEFAULT_DESIGN_TOL, DEFAULT_STRENGTH_CAP};
use crate::polarization::{
    compare_random, global_max, global_min, pair_energy, ComparisonReport, SearchOptions,
};
use crate::potentials::PotentialFamily;
use crate::{Error, Result};

/// Where the configuration comes from: a catalog selector or a JSON file.
#[derive(Debug, Clone)]
pub enum ConfigSource {
    Name(String),
    File(PathBuf),
}

impl ConfigSource {
    fn resolve(&self) -> Result<PointConfiguration> {
        match self {
            ConfigSource::Name(name) => catalog::by_name(name),
            ConfigSource::File(path) => catalog::load(path),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// One fully resolved batch command.
#[derive(Debug, Clone)]
pub enum CommandSpec {
    /// List the catalog, or dump one configuration in the JSON file format.
    Catalog { member: Option<ConfigSource> },
    Verify {
        source: ConfigSource,
        cap: usize,
        tol: f64,
    },
    Certify {
        source: ConfigSource,
        potential: String,
    },
    Search {
        source: ConfigSource,
        potential: String,
        minimize: bool,
        opts: SearchOptions,
    },
    Compare {
        source: ConfigSource,
        potential: String,
        trials: usize,
        seed: u64,
        opts: SearchOptions,
    },
    Energy {
        source: ConfigSource,
        potential: String,
    },
}

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub command: CommandSpec,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Verification outcome: `Fail` maps to exit code 1 (e.g. comparison trials
/// that found a violation); usage and certification errors surface as
/// [`Error`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

struct Rendered {
    json: Value,
    text: String,
    csv: String,
    /// Canonical body that overrides the format switch (configuration dumps
    /// must keep their 17-significant-digit coordinate encoding).
    raw: Option<String>,
}

/// Execute a command and write its report. Exit-code contract: `Ok(Pass)`
/// is 0, `Ok(Fail)` is 1, errors map through [`Error::exit_code`].
pub fn run(spec: &RunSpec) -> Result<Verdict> {
    let (rendered, verdict) = match &spec.command {
        CommandSpec::Catalog { member } => run_catalog(member)?,
        CommandSpec::Verify { source, cap, tol } => run_verify(source, *cap, *tol)?,
        CommandSpec::Certify { source, potential } => run_certify(source, potential)?,
        CommandSpec::Search {
            source,
            potential,
            minimize,
            opts,
        } => run_search(source, potential, *minimize, opts)?,
        CommandSpec::Compare {
            source,
            potential,
            trials,
            seed,
            opts,
        } => run_compare(source, potential, *trials, *seed, opts)?,
        CommandSpec::Energy { source, potential } => run_energy(source, potential)?,
    };
    let body = match (&rendered.raw, spec.format) {
        (Some(raw), _) => raw.clone(),
        (None, OutputFormat::Json) => {
            let mut s = serde_json::to_string_pretty(&rendered.json)
                .map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        (None, OutputFormat::Csv) => rendered.csv,
        (None, OutputFormat::Text) => rendered.text,
    };
    match &spec.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(verdict)
}

fn parse_potential(spec: &str) -> Result<PotentialFamily> {
    PotentialFamily::parse(spec)
}

fn options_json(opts: &SearchOptions) -> Value {
    serde_json::to_value(opts).unwrap_or(Value::Null)
}

fn run_catalog(member: &Option<ConfigSource>) -> Result<(Rendered, Verdict)> {
    if let Some(source) = member {
        let cfg = source.resolve()?;
        let body = catalog::render_config(&cfg);
        let json: Value =
            serde_json::from_str(&body).map_err(|e| Error::Internal(e.to_string()))?;
        let mut csv = String::from("name,dim,n\n");
        let _ = writeln!(csv, "{},{},{}", cfg.name(), cfg.dim_d(), cfg.len());
        return Ok((
            Rendered {
                json,
                text: body.clone(),
                csv,
                raw: Some(body),
            },
            Verdict::Pass,
        ));
    }
    let members = catalog::standard_catalog();
    let mut text = String::from("catalog members (selector forms: ");
    text.push_str(&catalog::SELECTOR_FORMS.join(", "));
    text.push_str(")\n");
    let mut csv = String::from("name,dim,n\n");
    let mut list = Vec::new();
    for cfg in &members {
        let _ = writeln!(
            text,
            "  {:18} d={} N={}",
            cfg.name(),
            cfg.dim_d(),
            cfg.len()
        );
        let _ = writeln!(csv, "{},{},{}", cfg.name(), cfg.dim_d(), cfg.len());
        list.push(json!({"name": cfg.name(), "dim": cfg.dim_d(), "n": cfg.len()}));
    }
    Ok((
        Rendered {
            json: json!({"members": list, "selector_forms": catalog::SELECTOR_FORMS}),
            text,
            csv,
            raw: None,
        },
        Verdict::Pass,
    ))
}

fn run_verify(source: &ConfigSource, cap: usize, tol: f64) -> Result<(Rendered, Verdict)> {
    let cfg = source.resolve()?;
    let report = sharpness_report(&cfg, cap, tol);
    let options = json!({"cap": cap, "tol": tol});
    let json = json!({
        "config": cfg.name(),
        "n": cfg.len(),
        "dim": cfg.dim_d(),
        "report": serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?,
        "options": options,
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "config: {} (N={}, S^{})",
        cfg.name(),
        cfg.len(),
        cfg.dim_d()
    );
    let _ = writeln!(text, "strength: {}", report.design_strength);
    let _ = writeln!(text, "m: {}", report.m);
    let _ = writeln!(
        text,
        "spectrum: [{}]",
        report
            .spectrum
            .values
            .iter()
            .map(|v| format!("{v:.12}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(text, "antipodal: {}", report.antipodal);
    let _ = writeln!(text, "sharp: {}", report.is_sharp);
    let _ = writeln!(text, "strongly_sharp: {}", report.is_strongly_sharp);
    let worst = report
        .residuals
        .iter()
        .take(report.design_strength)
        .map(|(_, s)| *s)
        .fold(0.0_f64, f64::max);
    let _ = writeln!(text, "max residual within strength: {worst:.3e}");
    let _ = writeln!(text, "options: cap={cap} tol={tol:.1e}");
    let mut csv = String::from("key,value\n");
    let _ = writeln!(csv, "config,{}", cfg.name());
    let _ = writeln!(csv, "strength,{}", report.design_strength);
    let _ = writeln!(csv, "m,{}", report.m);
    let _ = writeln!(csv, "antipodal,{}", report.antipodal);
    let _ = writeln!(csv, "strongly_sharp,{}", report.is_strongly_sharp);
    Ok((
        Rendered {
            json,
            text,
            csv,
            raw: None,
        },
        Verdict::Pass,
    ))
}

fn run_certify(source: &ConfigSource, potential: &str) -> Result<(Rendered, Verdict)> {
    let cfg = source.resolve()?;
    let fam = parse_potential(potential)?;
    let cert = certify_max(&cfg, &fam)?;
    let mut json = serde_json::to_value(&cert).map_err(|e| Error::Internal(e.to_string()))?;
    if let Value::Object(map) = &mut json {
        map.insert(
            "options".into(),
            json!({
                "strength_cap": DEFAULT_STRENGTH_CAP,
                "design_tol": DEFAULT_DESIGN_TOL,
                "dominance_grid": crate::certificates::DEFAULT_DOMINANCE_GRID,
                "slack_tol": crate::certificates::SLACK_TOL,
            }),
        );
    }
    let mut text = String::new();
    let _ = writeln!(text, "config: {}", cert.config);
    let _ = writeln!(text, "potential: {}", cert.potential);
    let _ = writeln!(text, "nu: {}", cert.nu);
    let _ = writeln!(
        text,
        "nodes: [{}]",
        cert.nodes
            .iter()
            .map(|v| format!("{v:.12}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(text, "certified_max: {:.17e}", cert.certified_max);
    let _ = writeln!(text, "min_slack: {:.3e}", cert.min_slack);
    let _ = writeln!(
        text,
        "consistency: moment {:.3e}, potential {:.3e}, constancy {:.3e}",
        cert.consistency.moment, cert.consistency.potential, cert.consistency.constancy
    );
    let _ = writeln!(
        text,
        "options: strength_cap={DEFAULT_STRENGTH_CAP} design_tol={DEFAULT_DESIGN_TOL:.1e} \
         dominance_grid={} slack_tol={:.1e}",
        crate::certificates::DEFAULT_DOMINANCE_GRID,
        crate::certificates::SLACK_TOL
    );
    let mut csv = String::from("key,value\n");
    let _ = writeln!(csv, "config,{}", cert.config);
    let _ = writeln!(csv, "potential,{}", cert.potential);
    let _ = writeln!(csv, "certified_max,{:.17e}", cert.certified_max);
    let _ = writeln!(csv, "min_slack,{:.3e}", cert.min_slack);
    Ok((
        Rendered {
            json,
            text,
            csv,
            raw: None,
        },
        Verdict::Pass,
    ))
}

fn run_search(
    source: &ConfigSource,
    potential: &str,
    minimize: bool,
    opts: &SearchOptions,
) -> Result<(Rendered, Verdict)> {
    let cfg = source.resolve()?;
    let fam = parse_potential(potential)?;
    let result = if minimize {
        global_min(&cfg, &fam, opts)?
    } else {
        global_max(&cfg, &fam, opts)?
    };
    let json = json!({
        "config": cfg.name(),
        "potential": fam.to_string(),
        "objective": if minimize { "min" } else { "max" },
        "result": serde_json::to_value(&result).map_err(|e| Error::Internal(e.to_string()))?,
        "options": options_json(opts),
    });
    let mut text = String::new();
    let _ = writeln!(text, "config: {}", cfg.name());
    let _ = writeln!(text, "potential: {fam}");
    let _ = writeln!(text, "objective: {}", if minimize { "min" } else { "max" });
    let _ = writeln!(text, "best_value: {:.17e}", result.best_value);
    let _ = writeln!(text, "extremizers: {}", result.argmax.len());
    let _ = writeln!(text, "strategy: {:?}", result.strategy);
    let _ = writeln!(text, "converged_fraction: {:.3}", result.converged_fraction);
    let _ = writeln!(
        text,
        "options: starts={} grid={} seed={} tol={:.1e} max_iters={} cluster_tol={:.1e}",
        opts.starts, opts.grid_size, opts.seed, opts.tol, opts.max_iters, opts.cluster_tol
    );
    let mut csv = String::from("key,value\n");
    let _ = writeln!(csv, "config,{}", cfg.name());
    let _ = writeln!(csv, "best_value,{:.17e}", result.best_value);
    let _ = writeln!(csv, "extremizers,{}", result.argmax.len());
    Ok((
        Rendered {
            json,
            text,
            csv,
            raw: None,
        },
        Verdict::Pass,
    ))
}

fn run_compare(
    source: &ConfigSource,
    potential: &str,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<(Rendered, Verdict)> {
    let cfg = source.resolve()?;
    let fam = parse_potential(potential)?;
    let report = compare_random(&cfg, &fam, trials, seed, opts)?;
    let verdict = if report.violations == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let json = json!({
        "config": cfg.name(),
        "potential": fam.to_string(),
        "seed": seed,
        "summary": serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?,
        "options": options_json(opts),
    });
    let text = compare_text(&cfg, &fam, seed, &report, opts);
    let csv = compare_csv(seed, &report, opts);
    Ok((
        Rendered {
            json,
            text,
            csv,
            raw: None,
        },
        verdict,
    ))
}

fn compare_text(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    seed: u64,
    report: &ComparisonReport,
    opts: &SearchOptions,
) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "config: {}", cfg.name());
    let _ = writeln!(text, "potential: {fam}");
    let _ = writeln!(text, "reference_value: {:.17e}", report.reference_value);
    let _ = writeln!(text, "trials: {}", report.trials);
    let _ = writeln!(text, "violations: {}", report.violations);
    let _ = writeln!(text, "min_gap: {:.6e}", report.min_gap);
    let _ = writeln!(
        text,
        "options: seed={seed} starts={} max_iters={} tol={:.1e}",
        opts.starts, opts.max_iters, opts.tol
    );
    text
}

fn compare_csv(seed: u64, report: &ComparisonReport, opts: &SearchOptions) -> String {
    let mut csv = String::new();
    let _ = writeln!(csv, "# reference_value,{:.17e}", report.reference_value);
    let _ = writeln!(csv, "# violations,{}", report.violations);
    let _ = writeln!(csv, "# min_gap,{:.6e}", report.min_gap);
    let _ = writeln!(
        csv,
        "# options,seed={seed};starts={};max_iters={};tol={:.1e}",
        opts.starts, opts.max_iters, opts.tol
    );
    csv.push_str("trial_id,seed,competitor_Q,gap\n");
    for r in &report.records {
        let _ = writeln!(
            csv,
            "{},{},{:.17e},{:.6e}",
            r.trial, seed, r.competitor_value, r.gap
        );
    }
    csv
}

fn run_energy(source: &ConfigSource, potential: &str) -> Result<(Rendered, Verdict)> {
    let cfg = source.resolve()?;
    let fam = parse_potential(potential)?;
    let report = pair_energy(&cfg, &fam)?;
    let json = json!({
        "config": cfg.name(),
        "potential": fam.to_string(),
        "report": serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?,
    });
    let mut text = String::new();
    let _ = writeln!(text, "config: {}", report.config);
    let _ = writeln!(text, "n: {}", report.n);
    let _ = writeln!(text, "energy: {:.17e}", report.energy);
    match report.mean_value_check {
        Some(v) => {
            let _ = writeln!(text, "mean_value_check: {v:.3e}");
        }
        None => {
            let _ = writeln!(text, "mean_value_check: n/a (no certificate)");
        }
    }
    let mut csv = String::from("key,value\n");
    let _ = writeln!(csv, "config,{}", report.config);
    let _ = writeln!(csv, "energy,{:.17e}", report.energy);
    Ok((
        Rendered {
            json,
            text,
            csv,
            raw: None,
        },
        Verdict::Pass,
    ))
}
