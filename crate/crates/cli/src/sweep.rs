//! Experiment manifests: a grid of group parameters crossed with a list of commands.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use frobpow::GroupSpec;

use crate::commands::{self, Caps, Mode};
use crate::report::{Report, EXIT_CAP, EXIT_CONJECTURE_MISMATCH, EXIT_MISMATCH, EXIT_PASS};
use crate::{exit_code, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Hilbert,
    Gbcheck,
    Decompose,
    Orbits,
    Resolution2d,
    Conjecture,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub p: Vec<u64>,
    #[serde(default = "default_r")]
    pub r: Vec<u32>,
    pub n: Vec<usize>,
    pub m: Vec<u32>,
    /// Every `0 <= ell < n` when absent.
    pub ell: Option<Vec<usize>>,
    /// Every divisor of `q - 1` when absent.
    pub e: Option<Vec<u64>>,
    #[serde(default = "default_full")]
    pub full_stabilizer: Vec<bool>,
}

fn default_r() -> Vec<u32> {
    vec![1]
}

fn default_full() -> Vec<bool> {
    vec![false]
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub grid: Grid,
    pub commands: Vec<Command>,
    /// JSON results are also written here, relative to the manifest's directory.
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default = "default_mode")]
    pub mode: Mode,
}

fn default_mode() -> Mode {
    Mode::Both
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub point: Value,
    pub reason: String,
}

#[derive(Clone, Debug)]
enum Job {
    Spec(Command, GroupSpec, u32),
    Conjecture(u64, usize, u32),
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest, UsageError> {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
    }

    /// The valid group specs of the grid, in grid order and without repeats, plus the
    /// combinations that were rejected.
    pub fn specs(&self) -> (Vec<GroupSpec>, Vec<Skipped>) {
        let g = &self.grid;
        let mut seen = BTreeSet::new();
        let mut specs = Vec::new();
        let mut skipped = Vec::new();
        let mut consider = |spec: GroupSpec| {
            match spec.validate() {
                Ok(()) => {
                    let key = (spec.p, spec.r, spec.n, spec.ell, spec.e, spec.full_stabilizer);
                    if seen.insert(key) {
                        specs.push(spec);
                    }
                }
                Err(err) => skipped.push(Skipped { point: json!(spec), reason: err.to_string() }),
            }
        };
        for &p in &g.p {
            for &r in &g.r {
                for &n in &g.n {
                    for &full in &g.full_stabilizer {
                        if full {
                            let q = p.checked_pow(r).unwrap_or(0);
                            consider(GroupSpec { p, r, n, ell: n.saturating_sub(1), e: q.saturating_sub(1), full_stabilizer: true });
                            continue;
                        }
                        let ells = g.ell.clone().unwrap_or_else(|| (0..n).collect());
                        let es = g.e.clone().unwrap_or_else(|| {
                            let q = p.checked_pow(r).unwrap_or(0).max(2);
                            (1..q).filter(|e| (q - 1) % e == 0).collect()
                        });
                        for &ell in &ells {
                            for &e in &es {
                                consider(GroupSpec { p, r, n, ell, e, full_stabilizer: false });
                            }
                        }
                    }
                }
            }
        }
        (specs, skipped)
    }

    fn jobs(&self) -> (Vec<Job>, Vec<Skipped>) {
        let (specs, mut skipped) = self.specs();
        let mut jobs = Vec::new();
        let mut conjectures = BTreeSet::new();
        for spec in &specs {
            for &m in &self.grid.m {
                for &cmd in &self.commands {
                    let skip = |reason: &str| Skipped { point: json!({ "command": cmd, "spec": spec, "m": m }), reason: reason.into() };
                    match cmd {
                        Command::Gbcheck if !spec.is_maximal() => skipped.push(skip("needs ell = n - 1")),
                        Command::Resolution2d if spec.n != 2 || spec.r != 1 => skipped.push(skip("needs n = 2 over a prime field")),
                        Command::Hilbert if self.mode != Mode::Brute && spec.r > 1 && !spec.full_stabilizer => {
                            skipped.push(skip("no closed form for this group; use mode brute"))
                        }
                        Command::Conjecture => {
                            if conjectures.insert((spec.q(), spec.n, m)) {
                                jobs.push(Job::Conjecture(spec.q(), spec.n, m));
                            }
                        }
                        _ => jobs.push(Job::Spec(cmd, spec.clone(), m)),
                    }
                }
            }
        }
        (jobs, skipped)
    }
}

fn run_job(job: &Job, mode: Mode, caps: Caps) -> (Value, anyhow::Result<Report>) {
    match job {
        Job::Spec(cmd, spec, m) => {
            let key = json!({ "command": cmd, "spec": spec, "m": m });
            let out = match cmd {
                Command::Hilbert => commands::hilbert(spec, *m, mode, None, caps),
                Command::Gbcheck => commands::gbcheck(spec, *m, false, caps),
                Command::Decompose => commands::decompose(spec, *m, caps),
                Command::Orbits => commands::orbits(spec, *m, caps),
                Command::Resolution2d => commands::resolution2d(spec.p, *m, spec.e, spec.ell),
                Command::Conjecture => unreachable!("conjecture jobs are keyed by (q, n, m)"),
            };
            (key, out)
        }
        Job::Conjecture(q, n, m) => {
            let key = json!({ "command": Command::Conjecture, "q": q, "n": n, "m": m });
            (key, commands::conjecture(*q, *n, *m, None, caps))
        }
    }
}

/// Runs every job of the manifest and collects `{results, skipped, summary}`.
pub fn run(manifest: &Manifest) -> (Value, i32) {
    let (jobs, skipped) = manifest.jobs();
    let outcomes: Vec<(Value, anyhow::Result<Report>)> =
        jobs.par_iter().map(|job| run_job(job, manifest.mode, manifest.caps)).collect();
    let mut results = Vec::new();
    let (mut passed, mut failed, mut capped, mut mismatches) = (0, 0, 0, 0);
    for (key, outcome) in outcomes {
        let (code, output, error) = match outcome {
            Ok(report) => (report.code, report.json, None),
            Err(err) => (exit_code(&err), Value::Null, Some(format!("{err:#}"))),
        };
        let status = match code {
            EXIT_PASS => {
                passed += 1;
                "pass"
            }
            EXIT_CAP => {
                capped += 1;
                "cap_exceeded"
            }
            EXIT_CONJECTURE_MISMATCH => {
                mismatches += 1;
                "conjecture_mismatch"
            }
            EXIT_MISMATCH => {
                failed += 1;
                "fail"
            }
            _ => {
                failed += 1;
                "error"
            }
        };
        results.push(json!({ "job": key, "status": status, "exit_code": code, "output": output, "error": error }));
    }
    let summary = json!({
        "jobs": results.len(),
        "passed": passed,
        "failed": failed,
        "cap_exceeded": capped,
        "conjecture_mismatches": mismatches,
        "skipped": skipped.len(),
    });
    let code = if failed > 0 {
        EXIT_MISMATCH
    } else if mismatches > 0 {
        EXIT_CONJECTURE_MISMATCH
    } else {
        EXIT_PASS
    };
    (json!({ "results": results, "skipped": skipped, "summary": summary }), code)
}
