//! The individual subcommands. Each returns a [`Report`] carrying its own exit code;
//! errors are classified into exit codes by the caller.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::json;

use frobpow::ff::Field;
use frobpow::groebner::{buchberger_check, from_scratch_check, resolution_2d};
use frobpow::group::{enumerate, GroupElement};
use frobpow::invariants::{basic_invariants, brute_force_hilbert, full_gl_hilbert, h_generators, hilbert_of_generators, verify_decomposition};
use frobpow::orbits::{count_orbits_enum, count_orbits_generators};
use frobpow::qseries::{
    closed_form_fp, closed_form_stabilizer, default_truncation, hilbert_main_fp, hilbert_stabilizer_fq, lrs_conjecture,
    lrs_dimension,
};
use frobpow::{GroupSpec, MatrixFq, TruncatedSeries};

use crate::report::{series_json, status, Report, EXIT_CONJECTURE_MISMATCH, EXIT_MISMATCH, EXIT_PASS};
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formula,
    Brute,
    Both,
}

/// Enumeration limits shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_points: u64,
    pub max_monomials: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_points: 1_000_000, max_monomials: 1_000_000 }
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    }
}

fn big_q(q: u64, m: u32) -> Result<u64, UsageError> {
    if m < 1 {
        return Err(UsageError("m must be at least 1".into()));
    }
    q.checked_pow(m).ok_or_else(|| UsageError(format!("q^m = {q}^{m} overflows")))
}

/// The closed-form series and its display, when one is established for `spec`.
fn formula_series(spec: &GroupSpec, m: u32, d: usize) -> anyhow::Result<Option<(TruncatedSeries, String)>> {
    Ok(if spec.full_stabilizer {
        Some((hilbert_stabilizer_fq(spec.q(), spec.n, m, d)?, closed_form_stabilizer(spec.q(), spec.n, m)))
    } else if spec.r == 1 {
        Some((hilbert_main_fp(spec.p, spec.n, m, spec.ell, spec.e, d)?, closed_form_fp(spec.p, spec.n, m, spec.ell, spec.e)))
    } else {
        None
    })
}

pub fn hilbert(spec: &GroupSpec, m: u32, mode: Mode, d: Option<usize>, caps: Caps) -> anyhow::Result<Report> {
    let qm = big_q(spec.q(), m)?;
    let d = d.unwrap_or(spec.n * (qm as usize - 1));
    let formula = if mode == Mode::Brute {
        None
    } else {
        let f = formula_series(spec, m, d)?;
        if f.is_none() {
            return Err(UsageError(format!("no closed form is established for {spec}; use --mode brute")).into());
        }
        f
    };
    let brute = if mode == Mode::Formula { None } else { Some(brute_force_hilbert(spec, m, caps.max_monomials)?) };

    let mut table = Vec::new();
    let mut csv = String::from("degree,formula,brute,equal\n");
    let mut pretty = format!("{spec}, m = {m}, Q = {qm}\n{:>6} {:>10} {:>10}  equal\n", "degree", "formula", "brute");
    let mut all_equal = true;
    for k in 0..=d {
        let f = formula.as_ref().map(|(s, _)| s.coeff(k));
        let b = brute.as_ref().map(|h| h.dim(k) as i64);
        let equal = match (f, b) {
            (Some(f), Some(b)) => Some(f == b),
            _ => None,
        };
        all_equal &= equal != Some(false);
        table.push(json!({ "degree": k, "formula": f, "brute": b, "equal": equal }));
        let cell = |v: Option<i64>| v.map_or(String::new(), |v| v.to_string());
        let eq = equal.map_or(String::new(), |e| e.to_string());
        writeln!(csv, "{k},{},{},{eq}", cell(f), cell(b)).unwrap();
        writeln!(pretty, "{k:>6} {:>10} {:>10}  {eq}", cell(f), cell(b)).unwrap();
    }
    let formula_total = formula.as_ref().map(|(s, _)| s.total());
    let brute_total = brute.as_ref().map(|h| h.total);
    let cell = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    writeln!(
        pretty,
        "totals: formula {} brute {} ({})",
        cell(formula_total.map(|t| t.to_string())),
        cell(brute_total.map(|t| t.to_string())),
        status(all_equal)
    )
    .unwrap();
    let json = json!({
        "command": "hilbert",
        "spec": spec,
        "m": m,
        "field": spec.field()?.to_string(),
        "quotient_dim": (qm as u128).pow(spec.n as u32),
        "mode": mode,
        "truncation": d,
        "formula": formula.as_ref().map(|(s, c)| series_json(s, Some(c.clone()))),
        "brute": brute,
        "table": table,
        "totals": { "formula": formula_total, "brute": brute_total },
        "pass": all_equal,
    });
    Ok(Report { json, csv, pretty, code: exit_for(all_equal) })
}

pub fn gbcheck(spec: &GroupSpec, m: u32, from_scratch: bool, caps: Caps) -> anyhow::Result<Report> {
    big_q(spec.q(), m)?;
    let basic = basic_invariants(spec)?;
    let h = h_generators(&basic, m)?;
    let mut report = buchberger_check(&h, Some(caps.max_monomials))?;
    if from_scratch {
        report.from_scratch = Some(from_scratch_check(&h, caps.max_monomials)?);
    }
    let ok = report.passed();
    let mut csv = String::from("i,j,remainder\n");
    for c in &report.certificates {
        writeln!(csv, "{},{},{}", c.pair[0], c.pair[1], c.remainder).unwrap();
    }
    let mut pretty = format!("{spec}, m = {m}: {} generators, {} S-pairs\n", report.generators.len(), report.certificates.len());
    for (g, lm) in report.generators.iter().zip(&report.leading_monomials) {
        writeln!(pretty, "  LM {lm:<16} {g}").unwrap();
    }
    let zero = report.certificates.iter().filter(|c| c.is_zero()).count();
    writeln!(pretty, "S-pairs reducing to 0: {zero}/{}", report.certificates.len()).unwrap();
    writeln!(pretty, "expansions in m^[Q]: {}", status(report.membership.iter().all(|&b| b))).unwrap();
    writeln!(pretty, "closed forms: {}", status(report.closed_forms.iter().all(|&b| b))).unwrap();
    let opt = |b: Option<bool>| b.map_or("skipped", status);
    writeln!(pretty, "Hilbert certificate: {}", opt(report.hilbert_certificate)).unwrap();
    writeln!(pretty, "from-scratch basis: {}", opt(report.from_scratch)).unwrap();
    writeln!(pretty, "overall: {}", status(ok)).unwrap();
    let labels: Vec<String> = h.gens().iter().map(|g| g.label.to_string()).collect();
    let json = json!({
        "command": "gbcheck",
        "field": spec.field()?.to_string(),
        "labels": labels,
        "report": report,
        "pass": ok,
    });
    Ok(Report { json, csv, pretty, code: exit_for(ok) })
}

pub fn decompose(spec: &GroupSpec, m: u32, caps: Caps) -> anyhow::Result<Report> {
    big_q(spec.q(), m)?;
    let report = verify_decomposition(spec, m, caps.max_monomials)?;
    let ok = report.holds();
    let mut pretty = format!("{spec}, m = {m}\n{:>6} {:>6} {:>6} {:>6} {:>6}  rank\n", "degree", "A", "B", "A+B", "brute");
    for d in &report.degrees {
        writeln!(pretty, "{:>6} {:>6} {:>6} {:>6} {:>6}  {}", d.degree, d.a, d.b, d.sum, d.brute, status(d.holds())).unwrap();
    }
    writeln!(pretty, "overall: {}", status(ok)).unwrap();
    let json = json!({ "command": "decompose", "field": spec.field()?.to_string(), "report": report, "pass": ok });
    Ok(Report { json, csv: report.to_csv(), pretty, code: exit_for(ok) })
}

fn histogram_text(h: &std::collections::BTreeMap<u64, u64>) -> String {
    h.iter().map(|(s, k)| format!("{k} x size {s}")).collect::<Vec<_>>().join(", ")
}

pub fn orbits(spec: &GroupSpec, m: u32, caps: Caps) -> anyhow::Result<Report> {
    big_q(spec.q(), m)?;
    let report = count_orbits_enum(spec, m, caps.max_points)?;
    let ok = report.holds() && report.histogram_points() == report.total_points;
    let mut csv = String::from("orbit_size,count\n");
    for (s, k) in &report.histogram {
        writeln!(csv, "{s},{k}").unwrap();
    }
    let formula = report.formula.map_or("none".to_string(), |f| f.to_string());
    let pretty = format!(
        "{spec} on (F_{})^{}: {} points, {} orbits (formula {formula})\nhistogram: {}\nsingletons exactly on x_n = 0: {}\nfree off the hyperplane: {}\noverall: {}\n",
        report.coordinate_field,
        report.n,
        report.total_points,
        report.orbits,
        histogram_text(&report.histogram),
        report.singletons_on_hyperplane,
        report.free_off_hyperplane,
        status(ok)
    );
    let json = json!({ "command": "orbits", "spec": spec, "field": spec.field()?.to_string(), "report": report, "pass": ok });
    Ok(Report { json, csv, pretty, code: exit_for(ok) })
}

/// Generators for the exploratory orbit mode: matrices over `GF(p^r)` whose entries are
/// element indices (integers `< p^r`, base-`p` digits of the coefficient vector).
#[derive(Clone, Debug, Deserialize)]
pub struct GeneratorFile {
    pub p: u64,
    #[serde(default = "one")]
    pub r: u32,
    pub generators: Vec<Vec<Vec<u64>>>,
}

fn one() -> u32 {
    1
}

/// Orbits of an arbitrary generated group; reports without asserting a formula.
pub fn orbits_from_file(path: &Path, m: u32, caps: Caps) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let file: GeneratorFile = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let field = Field::new(file.p, file.r)?;
    let first = file.generators.first().ok_or_else(|| UsageError("no generators given".into()))?;
    let n = first.len();
    let gens = file
        .generators
        .iter()
        .map(|rows| {
            let rows: Vec<Vec<_>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&i| if i < field.order() { Ok(field.elem(i)) } else { Err(UsageError(format!("entry {i} out of range"))) })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            Ok(GroupElement::new(MatrixFq::from_rows(&field, &rows)?)?)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let order = enumerate(&field, n, &gens)?.len() as u64;
    let report = count_orbits_generators(&field, n, &gens, order, m, caps.max_points)?;
    let qm = big_q(field.order(), m)?;
    let hilbert = hilbert_of_generators(&field, n, &gens, qm as u32, caps.max_monomials)?;
    let covered = report.histogram_points() == report.total_points;
    let pretty = format!(
        "group of order {order} over {field} on (F_{})^{n}: {} orbits, invariant dimension {}\nhistogram: {}\n",
        report.coordinate_field,
        report.orbits,
        hilbert.total,
        histogram_text(&report.histogram)
    );
    let mut csv = String::from("orbit_size,count\n");
    for (s, k) in &report.histogram {
        writeln!(csv, "{s},{k}").unwrap();
    }
    let json = json!({
        "command": "orbits",
        "exploratory": true,
        "field": field.to_string(),
        "group_order": order,
        "report": report,
        "invariant_dimension": hilbert.total,
        "hilbert": hilbert,
        "orbits_equal_dimension": report.orbits == hilbert.total,
    });
    Ok(Report { json, csv, pretty, code: exit_for(covered) })
}

pub fn resolution2d(p: u64, m: u32, e: u64, ell: usize) -> anyhow::Result<Report> {
    if ell > 1 {
        return Err(UsageError(format!("ell = {ell} but the plane allows only 0 or 1")).into());
    }
    let report = resolution_2d(p, m, e, ell == 1)?;
    let ok = report.holds();
    let mut csv = String::from("degree,ideal,resolution,closed_form\n");
    for k in 0..=report.truncation {
        let at = |v: &[i64]| v.get(k).copied().unwrap_or(0);
        writeln!(csv, "{k},{},{},{}", at(&report.ideal_series), at(&report.resolution_series), at(&report.closed_form_series))
            .unwrap();
    }
    let mut pretty = format!("p = {p}, m = {m}, e = {e}, {}\n", if ell == 1 { "modular" } else { "nonmodular" });
    for (g, ok) in report.generators.iter().zip(&report.membership) {
        writeln!(pretty, "  generator {g} in m^[Q]: {ok}").unwrap();
    }
    for s in &report.syzygies {
        writeln!(pretty, "  {} = ({}): dot {}", s.name, s.entries.join(", "), if s.dot_is_zero { "0" } else { "NONZERO" }).unwrap();
    }
    if let Some(r) = report.redundancy_holds {
        writeln!(pretty, "  tau_02 redundancy: {r}").unwrap();
    }
    writeln!(pretty, "F0 shifts {:?}, F1 shifts {:?}", report.f0_shifts, report.f1_shifts).unwrap();
    writeln!(pretty, "closed form {}", report.closed_form).unwrap();
    writeln!(pretty, "series agree to degree {}: {}", report.truncation, status(ok)).unwrap();
    let field = Field::new(p, 1)?;
    let json = json!({ "command": "resolution2d", "field": field.to_string(), "report": report, "pass": ok });
    Ok(Report { json, csv, pretty, code: exit_for(ok) })
}

/// Whether the conjecture command cross-checks against a full-group enumeration.
pub fn conjecture_brute_feasible(q: u64, n: usize, m: u32) -> bool {
    n <= 2 && q <= 3 && m <= 2
}

/// A mismatch is a finding, so it gets its own code rather than the failure code.
pub fn conjecture_exit(matches: Option<bool>) -> i32 {
    if matches == Some(false) {
        EXIT_CONJECTURE_MISMATCH
    } else {
        EXIT_PASS
    }
}

pub fn conjecture(q: u64, n: usize, m: u32, d: Option<usize>, caps: Caps) -> anyhow::Result<Report> {
    if frobpow::ff::prime_power(q).is_none() {
        return Err(UsageError(format!("q = {q} is not a prime power")).into());
    }
    if n < 1 {
        return Err(UsageError("n must be at least 1".into()).into());
    }
    big_q(q, m)?;
    let d = d.unwrap_or_else(|| default_truncation(q, n, m));
    let conj = lrs_conjecture(q, n, m, d);
    let brute = if conjecture_brute_feasible(q, n, m) { Some(full_gl_hilbert(q, n, m, caps.max_monomials)?) } else { None };
    let brute_series = brute.as_ref().map(|h| TruncatedSeries::from_coeffs(h.dims.iter().map(|&c| c as i64).collect(), d));
    let matches = brute_series.as_ref().map(|b| *b == conj);
    let mut csv = String::from("degree,conjecture,brute,equal\n");
    let mut pretty = format!("GL_{n}(F_{q}) on S/m^[{q}^{m}]\n");
    for k in 0..=d {
        let b = brute_series.as_ref().map(|b| b.coeff(k));
        let cell = b.map_or(String::new(), |b| b.to_string());
        let eq = b.map_or(String::new(), |b| (b == conj.coeff(k)).to_string());
        writeln!(csv, "{k},{},{cell},{eq}", conj.coeff(k)).unwrap();
    }
    writeln!(pretty, "conjecture: {conj}").unwrap();
    match (&brute_series, matches) {
        (Some(b), Some(ok)) => writeln!(pretty, "brute:      {b}\n{}", if ok { "match" } else { "MISMATCH" }).unwrap(),
        _ => writeln!(pretty, "brute force skipped (needs n <= 2, q <= 3, m <= 2)").unwrap(),
    }
    let json = json!({
        "command": "conjecture",
        "q": q,
        "n": n,
        "m": m,
        "conjecture": series_json(&conj, None),
        "conjectured_dimension": lrs_dimension(q, n, m).to_string(),
        "brute": brute,
        "matches": matches,
    });
    Ok(Report { json, csv, pretty, code: conjecture_exit(matches) })
}
