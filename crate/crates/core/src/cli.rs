//! Command-line front end. `run` parses argv, dispatches to the library and
//! returns the process exit code: 0 on success, 1 on a failed check or a
//! numerical error, 2 on a usage error.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::{
    coeff, coeffs_up_to, conj_symmetry_max, gaussian_char_sum, parity_report, recurrence_residuals, scaling_residual,
    CoeffIndex,
};
use crate::elliptic::{theta_identity_report, WeierstrassData};
use crate::error::Error;
use crate::kernel::ThetaFockSpace;
use crate::lattice::Lattice;
use crate::pseudochar::PseudoCharacter;
use crate::verify;
use crate::zeros::{reduced_modulus_grid, xi_probe, zero_count_seeded, zero_locate, DEFAULT_SEED};

/// Rows printed by `coeffs sumtable` when no range is given.
pub const SUMTABLE_DEFAULT_T: [f64; 12] = [0.001, 0.01, 0.1, 1.0, 1.25, 1.5, 1.75, 2.0, 3.0, 4.0, 8.0, 80.0];

#[derive(Parser, Debug)]
#[command(name = "theta-kernel", version, about = "Reproducing kernels of theta Bargmann-Fock spaces")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Lattice as "re1,im1,re2,im2", a JSON object {"omega1":[re,im],"omega2":[re,im]}, or @file.
    #[arg(long, global = true, default_value = "1,0,0,1", value_parser = parse_lattice)]
    lattice: Lattice,
    /// Magnetic parameter; accepts π multiples such as "2pi", "pi/2", "1.5pi".
    #[arg(long, global = true, default_value = "pi", value_parser = parse_real)]
    nu: f64,
    /// "weierstrass" or "unitary:re1,im1,re2,im2".
    #[arg(long, global = true, default_value = "weierstrass", value_parser = parse_chi)]
    chi: ChiSpec,
    /// Truncation tolerance for lattice sums.
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps: f64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum ChiSpec {
    Weierstrass,
    Unitary(Complex64, Complex64),
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel evaluation and expansions.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Hermite-Taylor coefficients and lattice sums.
    #[command(subcommand)]
    Coeffs(CoeffsCmd),
    /// Zeros of the kernel sections.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Weierstrass sigma data and theta identities.
    #[command(subcommand)]
    Elliptic(EllipticCmd),
    /// Acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum KernelCmd {
    /// K(z, w) by direct lattice summation.
    Eval {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
    },
    /// Truncated double power series against the direct sum.
    Series {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, default_value_t = 20)]
        max_m: usize,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Poincaré series of the monomial z^m.
    Poincare {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Reproducing-property residual for P(e_m) at z.
    Reproduce {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, default_value_t = 48)]
        quad_n: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct IndexArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    q: usize,
}

impl From<IndexArgs> for CoeffIndex {
    fn from(a: IndexArgs) -> Self {
        CoeffIndex::new(a.m, a.n, a.p, a.q)
    }
}

#[derive(Subcommand, Debug)]
enum CoeffsCmd {
    /// A single coefficient a^{p,q}_{m,n}.
    One {
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Every coefficient up to a total degree.
    Table {
        #[arg(long)]
        degree: usize,
    },
    /// Largest odd-total coefficient for a real character.
    Parity {
        #[arg(long, default_value_t = 7)]
        degree: usize,
    },
    /// Residual of the scaling law under Γ → λΓ.
    Scaling {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Recurrence and conjugation residuals up to a total degree.
    Recur {
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Σ (−1)^{m+n+mn} e^{−(tπ/2)(m²+n²)} over all integer pairs.
    Sumtable {
        #[arg(long, value_parser = parse_real, conflicts_with_all = ["t_min", "t_max", "t_step"])]
        t: Option<f64>,
        #[arg(long, value_parser = parse_real, requires_all = ["t_max", "t_step"])]
        t_min: Option<f64>,
        #[arg(long, value_parser = parse_real, requires_all = ["t_min", "t_step"])]
        t_max: Option<f64>,
        #[arg(long, value_parser = parse_real, requires_all = ["t_min", "t_max"])]
        t_step: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum ZerosCmd {
    /// Zero count of K(., w) in a cell by the argument principle.
    Count {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, default_value_t = crate::zeros::DEFAULT_CONTOUR_NODES)]
        nodes: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Zero locations in the centered cell.
    Locate {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, default_value_t = 24)]
        grid: usize,
        /// Also write re,im,|φ| samples of the reduced modulus to this CSV file.
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Search for w whose section K(., w) vanishes identically.
    Xi {
        #[arg(long, default_value_t = 8)]
        wgrid: usize,
        #[arg(long, default_value_t = 8)]
        zgrid: usize,
    },
}

#[derive(Subcommand, Debug)]
enum EllipticCmd {
    /// Quasi-periods and the invariant μ of the space.
    Mu,
    /// σ, ζ and the modified σ at z.
    Sigma {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Theta-constant identity for the character sum at --nu.
    ThetaIdentity,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run every acceptance criterion.
    All,
    /// Run one criterion by number.
    One {
        #[arg(long)]
        id: u32,
    },
}

/// A report in the three output formats.
struct Report {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    text: String,
    default_format: Format,
    /// Exit with 1 after printing.
    failed: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> Report {
        Report {
            json: serde_json::to_value(value).expect("report serializes"),
            table: None,
            text,
            default_format: Format::Json,
            failed: false,
        }
    }

    fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Report {
        self.table = Some((header, rows));
        self
    }
}

enum Failure {
    Usage(String),
    Numeric(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn parse_pi_term(s: &str) -> Result<f64, String> {
    let bad = || format!("cannot read {s:?} as a number");
    let body = s.replace('π', "pi");
    if let Some(coef) = body.strip_suffix("pi") {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let k = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        Ok(k * PI)
    } else {
        body.parse::<f64>().map_err(|_| bad())
    }
}

/// Reals with optional π literals: "2pi", "pi/2", "-1.5pi", "3*pi/4", "0.25".
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_pi_term(den.trim())?;
            if d == 0.0 {
                return Err(format!("division by zero in {s:?}"));
            }
            parse_pi_term(num.trim())? / d
        }
        None => parse_pi_term(s)?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// "re,im" or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        None => Ok(Complex64::new(parse_real(s)?, 0.0)),
    }
}

fn parse_lattice(s: &str) -> Result<Lattice, String> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => s.to_string(),
    };
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| format!("bad lattice JSON: {e}"));
    }
    let parts: Vec<f64> = text.split(',').map(parse_real).collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err(format!("expected re1,im1,re2,im2, got {} numbers", parts.len()));
    }
    Lattice::new(Complex64::new(parts[0], parts[1]), Complex64::new(parts[2], parts[3]))
        .map_err(|e| format!("{}: {e}", e.name()))
}

fn parse_chi(s: &str) -> Result<ChiSpec, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("weierstrass") {
        return Ok(ChiSpec::Weierstrass);
    }
    let rest = s
        .strip_prefix("unitary:")
        .ok_or_else(|| format!("expected \"weierstrass\" or \"unitary:re1,im1,re2,im2\", got {s:?}"))?;
    let v: Vec<f64> = rest.split(',').map(parse_real).collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!("unitary character needs 4 numbers, got {}", v.len()));
    }
    Ok(ChiSpec::Unitary(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])))
}

/// 17 significant digits, as used in CSV output.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Fixed 12-decimal rendering without a negative sign on zero.
fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

fn cplx(z: Complex64) -> String {
    format!("{:.15e} {:+.15e}i", z.re, z.im)
}

fn space(g: &GlobalArgs) -> Result<ThetaFockSpace, Error> {
    match g.chi {
        ChiSpec::Weierstrass => ThetaFockSpace::weierstrass(g.lattice, g.nu),
        ChiSpec::Unitary(u1, u2) => Ok(ThetaFockSpace::new(PseudoCharacter::from_generators(
            g.lattice, g.nu, u1, u2,
        )?)),
    }
}

fn kernel_cmd(g: &GlobalArgs, cmd: &KernelCmd) -> Result<Report, Failure> {
    let sp = space(g)?;
    Ok(match *cmd {
        KernelCmd::Eval { z, w } => {
            let r = sp.kernel_eval(z, w, g.eps)?;
            Report::new(&r, format!("{}\n", cplx(r.value)))
        }
        KernelCmd::Series { z, w, max_m, max_n } => {
            let series = sp.kernel_series(max_m, max_n, g.eps)?;
            let approx = series.evaluate(z, w);
            let direct = sp.kernel_eval(z, w, g.eps)?.value;
            let mut rows = Vec::new();
            let mut coeffs = Vec::new();
            for m in 0..=max_m {
                for n in 0..=max_n {
                    if let Some(a) = series.coeff(m, n) {
                        rows.push(vec![m.to_string(), n.to_string(), sci(a.re), sci(a.im)]);
                        coeffs.push(json!({"m": m, "n": n, "value": [a.re, a.im]}));
                    }
                }
            }
            let body = json!({
                "max_m": max_m,
                "max_n": max_n,
                "series_value": [approx.re, approx.im],
                "direct_value": [direct.re, direct.im],
                "abs_difference": (approx - direct).norm(),
                "coefficients": coeffs,
            });
            Report::new(
                &body,
                format!("series {}\ndirect {}\ndifference {:.3e}\n", cplx(approx), cplx(direct), (approx - direct).norm()),
            )
            .with_table(vec!["m", "n", "re", "im"], rows)
        }
        KernelCmd::Poincare { m, z } => {
            let r = sp.poincare_monomial(m, z, g.eps)?;
            Report::new(&r, format!("{}\n", cplx(r.value)))
        }
        KernelCmd::Reproduce { m, z, quad_n } => {
            let residual = sp.reproducing_residual(m, z, quad_n, g.eps)?;
            Report::new(
                &json!({"m": m, "z": [z.re, z.im], "quad_n": quad_n, "residual": residual}),
                format!("{residual:.3e}\n"),
            )
        }
    })
}

fn coeffs_cmd(g: &GlobalArgs, cmd: &CoeffsCmd) -> Result<Report, Failure> {
    if let CoeffsCmd::Sumtable { t, t_min, t_max, t_step } = *cmd {
        return sumtable(t, t_min, t_max, t_step);
    }
    let sp = space(g)?;
    Ok(match *cmd {
        CoeffsCmd::One { index } => {
            let idx = CoeffIndex::from(index);
            let r = coeff(&sp, idx, g.eps)?;
            Report::new(&json!({"index": idx, "result": r}), format!("{}\n", cplx(r.value)))
        }
        CoeffsCmd::Table { degree } => {
            let all = coeffs_up_to(&sp, degree, g.eps)?;
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            let mut text = String::new();
            for (idx, r) in &all {
                rows.push(vec![
                    idx.m.to_string(),
                    idx.n.to_string(),
                    idx.p.to_string(),
                    idx.q.to_string(),
                    sci(r.value.re),
                    sci(r.value.im),
                    sci(r.tail_bound),
                ]);
                entries.push(json!({"index": idx, "result": r}));
                text.push_str(&format!("{} {} {} {}  {}\n", idx.m, idx.n, idx.p, idx.q, cplx(r.value)));
            }
            Report::new(&json!({"degree": degree, "coefficients": entries}), text)
                .with_table(vec!["m", "n", "p", "q", "re", "im", "tail_bound"], rows)
        }
        CoeffsCmd::Parity { degree } => {
            let r = parity_report(&sp, degree, g.eps)?;
            let text = format!(
                "{} odd coefficients, max |a|/mass {:.3e}, max |a_odd|/|a_even| {:.3e}\n",
                r.odd.len(),
                r.max_odd_ratio,
                r.max_odd_vs_even
            );
            Report::new(&r, text)
        }
        CoeffsCmd::Scaling { lambda, index } => {
            let idx = CoeffIndex::from(index);
            let residual = scaling_residual(&sp, lambda, idx, g.eps)?;
            Report::new(
                &json!({"lambda": [lambda.re, lambda.im], "index": idx, "residual": residual}),
                format!("{residual:.3e}\n"),
            )
        }
        CoeffsCmd::Recur { degree } => {
            let rec = recurrence_residuals(&sp, degree, g.eps)?;
            let conj = conj_symmetry_max(&sp, degree, g.eps)?;
            let text = format!(
                "raise p {:.3e}\nraise q {:.3e}\nconjugation {:.3e}\n",
                rec.raise_p, rec.raise_q, conj.swapped
            );
            Report::new(&json!({"recurrences": rec, "conjugation": conj}), text)
        }
        CoeffsCmd::Sumtable { .. } => unreachable!("handled above"),
    })
}

fn sumtable(t: Option<f64>, t_min: Option<f64>, t_max: Option<f64>, t_step: Option<f64>) -> Result<Report, Failure> {
    let ts: Vec<f64> = match (t, t_min, t_max, t_step) {
        (Some(t), ..) => vec![t],
        (None, Some(lo), Some(hi), Some(step)) => {
            if step <= 0.0 || hi < lo {
                return Err(Failure::Usage("need t-step > 0 and t-max >= t-min".into()));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize;
            (0..=count).map(|i| lo + step * i as f64).collect()
        }
        _ => SUMTABLE_DEFAULT_T.to_vec(),
    };
    let values: Vec<f64> = ts.iter().map(|&t| gaussian_char_sum(t)).collect::<Result<_, _>>()?;
    let text = if t.is_some() {
        format!("{}\n", fixed12(values[0]))
    } else {
        ts.iter()
            .zip(&values)
            .map(|(t, v)| format!("{t} & {} \\\\\n", fixed12(*v)))
            .collect()
    };
    let rows = ts.iter().zip(&values).map(|(t, v)| vec![sci(*t), sci(*v)]).collect();
    let entries: Vec<Value> = ts.iter().zip(&values).map(|(t, v)| json!({"t": t, "value": v})).collect();
    let mut r = Report::new(&json!({ "rows": entries }), text).with_table(vec!["t", "value"], rows);
    r.default_format = Format::Text;
    Ok(r)
}

fn zeros_cmd(g: &GlobalArgs, cmd: &ZerosCmd) -> Result<Report, Failure> {
    let sp = space(g)?;
    Ok(match cmd {
        ZerosCmd::Count { w, nodes, seed } => {
            let r = zero_count_seeded(&sp, *w, *nodes, *seed)?;
            Report::new(&r, format!("{}\n", r.count))
        }
        ZerosCmd::Locate { w, grid, emit_csv } => {
            let r = zero_locate(&sp, *w, *grid)?;
            if let Some(path) = emit_csv {
                let samples = reduced_modulus_grid(&sp, *w, *grid)?;
                let rows: Vec<Vec<String>> = samples.iter().map(|(z, a)| vec![sci(z.re), sci(z.im), sci(*a)]).collect();
                let csv = render_csv(&["re", "im", "abs"], &rows).map_err(Failure::Io)?;
                std::fs::write(path, csv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let rows = r
                .zeros
                .iter()
                .map(|z| {
                    vec![
                        sci(z.location.re),
                        sci(z.location.im),
                        sci(z.refined_abs),
                        z.multiplicity.to_string(),
                    ]
                })
                .collect();
            let text = r
                .zeros
                .iter()
                .map(|z| format!("{}  x{}\n", cplx(z.location), z.multiplicity))
                .collect();
            Report::new(&r, text).with_table(vec!["re", "im", "abs", "multiplicity"], rows)
        }
        ZerosCmd::Xi { wgrid, zgrid } => {
            let r = xi_probe(&sp, *wgrid, *zgrid)?;
            let text = format!(
                "{} candidates (threshold {:.1e}){}\n",
                r.candidates.len(),
                r.threshold,
                if r.low_confidence { ", low confidence" } else { "" }
            );
            Report::new(&r, text)
        }
    })
}

fn elliptic_cmd(g: &GlobalArgs, cmd: &EllipticCmd) -> Result<Report, Failure> {
    Ok(match *cmd {
        EllipticCmd::Mu => {
            let wd = WeierstrassData::new(g.lattice)?;
            let mu = wd.mu_invariant(g.nu)?;
            let body = json!({
                "eta1": [wd.eta1.re, wd.eta1.im],
                "eta2": [wd.eta2.re, wd.eta2.im],
                "legendre": [wd.legendre().re, wd.legendre().im],
                "mu": [mu.mu.re, mu.mu.im],
                "nu": mu.nu,
            });
            Report::new(&body, format!("{}\n", cplx(mu.mu)))
        }
        EllipticCmd::Sigma { z } => {
            let wd = WeierstrassData::new(g.lattice)?;
            let sigma = wd.sigma(z);
            let zeta = wd.zeta(z).ok();
            let modified = match wd.mu_invariant(g.nu) {
                Ok(mu) => Some(wd.modified_sigma(&mu, z)),
                Err(Error::NotOneDimensional { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let pair = |v: Option<Complex64>| v.map(|v| [v.re, v.im]);
            let body = json!({
                "z": [z.re, z.im],
                "sigma": [sigma.re, sigma.im],
                "zeta": pair(zeta),
                "modified_sigma": pair(modified),
            });
            Report::new(&body, format!("{}\n", cplx(sigma)))
        }
        EllipticCmd::ThetaIdentity => {
            let r = theta_identity_report(g.nu)?;
            let text = format!(
                "character sum {:.15e}\ncorrected combination {:.15e}\nprinted identity residual {:.3e}\n",
                r.char_sum, r.corrected_combination, r.printed_residual
            );
            Report::new(&r, text)
        }
    })
}

fn verify_cmd(cmd: &VerifyCmd, err: &mut dyn Write) -> Result<Report, Failure> {
    let results = match *cmd {
        VerifyCmd::All => verify::run_all(),
        VerifyCmd::One { id } => {
            vec![verify::criterion(id).ok_or_else(|| Failure::Usage(format!("no criterion {id}; use 1..=12")))?]
        }
    };
    for c in &results {
        let _ = writeln!(err, "criterion {:>2}: {:.2}s", c.id, c.elapsed_s);
    }
    let passed = results.iter().filter(|c| c.passed).count();
    let mut text: String = results.iter().map(|c| c.summary() + "\n").collect();
    text.push_str(&format!("{passed}/{} passed\n", results.len()));
    let rows = results
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.title.clone(),
                c.passed.to_string(),
                sci(c.measured),
                sci(c.threshold),
                c.note.clone(),
            ]
        })
        .collect();
    let mut r = Report::new(&results, text).with_table(vec!["id", "title", "passed", "measured", "threshold", "note"], rows);
    r.default_format = Format::Text;
    r.failed = passed != results.len();
    Ok(r)
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        w.write_record(row).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn render(report: &Report, format: Option<Format>) -> Result<String, Failure> {
    match format.unwrap_or(report.default_format) {
        Format::Json => Ok(serde_json::to_string_pretty(&report.json).expect("JSON value renders") + "\n"),
        Format::Text => Ok(report.text.clone()),
        Format::Csv => match &report.table {
            Some((header, rows)) => render_csv(header, rows).map_err(Failure::Io),
            None => Err(Failure::Usage("this command has no CSV form; use --format json or text".into())),
        },
    }
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let g = &cli.global;
    if g.eps.is_nan() || g.eps <= 0.0 {
        let _ = writeln!(err, "error: --eps must be positive\nhint: try --eps 1e-12");
        return 2;
    }
    let report = match &cli.command {
        Command::Kernel(c) => kernel_cmd(g, c),
        Command::Coeffs(c) => coeffs_cmd(g, c),
        Command::Zeros(c) => zeros_cmd(g, c),
        Command::Elliptic(c) => elliptic_cmd(g, c),
        Command::Verify(c) => verify_cmd(c, err),
    };
    let result = report.and_then(|r| render(&r, g.format).map(|s| (s, r.failed)));
    match result {
        Ok((body, failed)) => {
            let written = match &g.output {
                Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: Io: {e}");
                return 1;
            }
            i32::from(failed)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: Io: {msg}");
            1
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
