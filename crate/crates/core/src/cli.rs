//! Command-line front end. `run` parses arguments, dispatches, prints the
//! result and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bispectral::{build_dual, DualOptions};
use crate::darboux::{
    build_f_basis, build_p_bar_from, check_admissible, jordan_matrix, lift_via_contiguous, DarbouxBundle,
    DarbouxSpec, LiftDirection,
};
use crate::error::{Error, Result};
use crate::exact::rat::{fmt_rat, parse_rat, Rat};
use crate::exact::{Poly, RatFunc};
use crate::example::reproduce;
use crate::ndiff::{DiffOp, SignedRatFunc};
use crate::series::{psi_family, verify_eigen_n};

#[derive(Parser, Debug)]
#[command(name = "bispectral", version, about = "Darboux transformations of the Jacobi difference operator and their bispectral duals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build P, L, Q, the Casoratians and the Jordan matrix from a spec file.
    Build(Common),
    /// Run the consistency suites on a spec or on a bundle written by `build`.
    Verify(Common),
    /// Construct and verify a dual differential operator.
    Dual(Common),
    /// Check the α = 2, β = 0, k = 2 example against its published closed forms.
    #[command(name = "reproduce-example")]
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Spec (or bundle) JSON file.
    #[arg(long)]
    pub spec: PathBuf,
    #[command(flatten)]
    pub run: RunFlags,
}

#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Series truncation order.
    #[arg(long, default_value_t = 48, value_parser = clap::value_parser!(u32).range(8..))]
    pub order: u32,
    /// Range of n checked on series.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, default_values_t = [-8, 8])]
    pub window: Vec<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "1/3")]
    pub eps: String,
    #[arg(long, default_value = "2")]
    pub b0: String,
    #[arg(long, default_value = "5/7")]
    pub b1: String,
    /// Judge the published dual operator with its two misprinted coefficients corrected.
    #[arg(long)]
    pub corrected: bool,
    /// Also run the dual construction for the example.
    #[arg(long)]
    pub with_dual: bool,
    #[command(flatten)]
    pub run: RunFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl RunFlags {
    fn window(&self) -> Result<(i64, i64)> {
        match self.window[..] {
            [a, b] if a <= b => Ok((a, b)),
            _ => Err(Error::Parse("window must be two integers a <= b".into())),
        }
    }
}

/// The serialised form of a [`DarbouxBundle`].
#[derive(Serialize, Deserialize)]
pub struct BundleFile {
    pub spec: DarbouxSpec,
    #[serde(rename = "P", with = "crate::json::diffop")]
    pub p: DiffOp,
    #[serde(rename = "L", with = "crate::json::diffop")]
    pub l: DiffOp,
    #[serde(rename = "Q", with = "crate::json::diffop")]
    pub q: DiffOp,
    #[serde(with = "crate::json::signed_vec")]
    pub dets: Vec<SignedRatFunc>,
    #[serde(with = "crate::json::rat_matrix")]
    pub jordan: Vec<Vec<Rat>>,
    #[serde(with = "crate::json::poly")]
    pub eigen_poly: Poly,
}

impl BundleFile {
    pub fn from_bundle(b: &DarbouxBundle) -> Result<Self> {
        Ok(BundleFile {
            spec: b.spec.clone(),
            p: b.p.clone(),
            l: b.l.clone(),
            q: b.q.clone(),
            dets: b.dets.clone(),
            jordan: jordan_matrix(&b.spec)?,
            eigen_poly: b.eigen_poly.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialises")
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SuiteResult {
    pub suite: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub suites: Vec<SuiteResult>,
    pub notes: Vec<String>,
}

fn suite(name: &str, ok: bool, detail: impl Into<Option<String>>) -> SuiteResult {
    SuiteResult { suite: name.into(), ok, detail: if ok { None } else { detail.into() } }
}

fn read_spec(path: &Path) -> Result<(DarbouxSpec, Option<(String, BundleFile)>)> {
    let text = fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("P").is_some() {
        let b: BundleFile = serde_json::from_value(v)?;
        Ok((b.spec.clone(), Some((text, b))))
    } else {
        Ok((serde_json::from_value(v)?, None))
    }
}

fn checked_bundle(spec: &DarbouxSpec) -> Result<DarbouxBundle> {
    spec.validate()?;
    let adm = check_admissible(spec)?;
    if adm.identically_zero {
        return Err(Error::Inadmissible("the Casoratian det(n) vanishes identically".into()));
    }
    if let Some(n) = adm.witness {
        return Err(Error::Inadmissible(format!("the Casoratian det(n) vanishes at the integer n = {n}")));
    }
    DarbouxBundle::new(spec)
}

pub fn cmd_build(c: &Common) -> Result<String> {
    let (spec, _) = read_spec(&c.spec)?;
    let bundle = checked_bundle(&spec)?;
    let file = BundleFile::from_bundle(&bundle)?;
    Ok(match c.run.format {
        Format::Json => file.to_json(),
        Format::Text => format!(
            "P = {}\nL = {}\nQ = {}\nq(x) = {}\n",
            file.p.display(),
            file.l.display(),
            file.q.display(),
            file.eigen_poly.display("x")
        ),
    })
}

pub fn cmd_verify(c: &Common) -> Result<VerifyReport> {
    let (spec, stored) = read_spec(&c.spec)?;
    let bundle = checked_bundle(&spec)?;
    let window = c.run.window()?;
    let mut suites = Vec::new();
    let mut notes = Vec::new();
    let (p, l, q) = match &stored {
        Some((text, b)) => {
            let fresh = BundleFile::from_bundle(&bundle)?.to_json();
            suites.push(suite(
                "round_trip",
                fresh.trim_end() == text.trim_end(),
                "stored bundle differs from the one rebuilt from its spec".to_string(),
            ));
            (b.p.clone(), b.l.clone(), b.q.clone())
        }
        None => (bundle.p.clone(), bundle.l.clone(), bundle.q.clone()),
    };
    let l0 = bundle.l0();
    let qp = spec.eigen_poly();
    suites.push(suite("intertwining", l.compose(&p) == p.compose(&l0), "L∘P ≠ P∘L0".to_string()));
    suites.push(suite("factorization_QP", q.compose(&p) == l0.poly_eval(&qp), "Q∘P ≠ q(L0)".to_string()));
    suites.push(suite("factorization_PQ", p.compose(&q) == l.poly_eval(&qp), "P∘Q ≠ q(L)".to_string()));
    suites.push(suite(
        "regularity",
        l.is_regular(),
        l.regularity().err().map(|e| e.to_string()),
    ));
    let basis = build_f_basis(&spec)?;
    let bad = basis.iter().position(|f| !p.apply(f).is_zero());
    suites.push(suite("kernel", bad.is_none(), bad.map(|i| format!("P f^({i}) ≠ 0"))));
    if spec.order() > 0 && spec.params.alpha_int().is_some() {
        let (spec_g, p_g) = if spec.order() % 2 == 1 {
            let dir = LiftDirection::preferred(&spec);
            notes.push(format!("k + l is odd: auto-lift {dir:?} applied for the symmetric gauge"));
            let lifted = lift_via_contiguous(&bundle, dir)?;
            (lifted.bundle.spec.clone(), lifted.bundle.p.clone())
        } else {
            (spec.clone(), p.clone())
        };
        let res = build_p_bar_from(&spec_g, &p_g);
        let ok = match &res {
            Ok(pb) => pb.pbar.involution_i(&spec_g.params)? == pb.pbar,
            Err(_) => false,
        };
        suites.push(suite("reflection_invariance", ok, res.err().map(|e| e.to_string())));
    }
    let mut checked = bundle.clone();
    checked.p = p;
    let fam = psi_family(&checked, c.run.order as usize);
    let rep = verify_eigen_n(&l, &RatFunc::from_poly(Poly::x()), &fam, window);
    suites.push(suite(
        "series_eigen",
        rep.ok,
        rep.points.iter().find(|p| !p.ok).map(|p| format!("residual at n = {}", p.n)),
    ));
    let ok = suites.iter().all(|s| s.ok);
    Ok(VerifyReport { ok, suites, notes })
}

pub fn cmd_dual(c: &Common) -> Result<String> {
    let (spec, _) = read_spec(&c.spec)?;
    let bundle = checked_bundle(&spec)?;
    let opts = DualOptions { order: c.run.order as usize, window: c.run.window()? };
    let dual = build_dual(&bundle, &opts)?;
    let cert = &dual.certificate;
    Ok(match c.run.format {
        Format::Json => serde_json::to_string_pretty(cert)?,
        Format::Text => format!(
            "B = {}\neigen(x) = {}\nshift = {}\nverified_order = {}\n{}",
            cert.b.display(),
            cert.eigen.display("x"),
            cert.shift,
            cert.verified_order,
            dual.lift.map(|d| format!("auto-lift: {d:?}\n")).unwrap_or_default()
        ),
    })
}

pub fn cmd_reproduce(a: &ReproduceArgs) -> Result<(bool, String)> {
    let (eps, b0, b1) = (parse_rat(&a.eps)?, parse_rat(&a.b0)?, parse_rat(&a.b1)?);
    let r = reproduce(&eps, &b0, &b1, a.run.order as usize, a.run.window()?, a.with_dual)?;
    let ok = if a.corrected { r.derived_ok() } else { r.printed_ok() && r.derived_ok() };
    let out = match a.run.format {
        Format::Json => serde_json::to_string_pretty(&r)?,
        Format::Text => {
            let mut s = format!("eps = {}, B0 = {}, B1 = {}\n", fmt_rat(&eps), fmt_rat(&b0), fmt_rat(&b1));
            for (group, list) in [("printed", &r.printed), ("derived", &r.derived)] {
                for c in list {
                    s += &format!(
                        "{} {group}/{}{}\n",
                        if c.ok { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
                    );
                }
            }
            s
        }
    };
    Ok((ok, out))
}

fn emit(out: &str) {
    let mut h = std::io::stdout().lock();
    let _ = writeln!(h, "{}", out.trim_end());
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for n in &r.notes {
        s += &format!("note: {n}\n");
    }
    for x in &r.suites {
        s += &format!(
            "{} {}{}\n",
            if x.ok { "PASS" } else { "FAIL" },
            x.suite,
            x.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
        );
    }
    s
}

/// Runs the tool on the given arguments (including the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res: Result<i32> = match &cli.command {
        Command::Build(c) => cmd_build(c).map(|s| {
            emit(&s);
            0
        }),
        Command::Verify(c) => cmd_verify(c).map(|r| {
            match c.run.format {
                Format::Json => emit(&serde_json::to_string_pretty(&r).expect("report serialises")),
                Format::Text => emit(&verify_text(&r)),
            }
            if r.ok {
                0
            } else {
                4
            }
        }),
        Command::Dual(c) => cmd_dual(c).map(|s| {
            emit(&s);
            0
        }),
        Command::Reproduce(a) => cmd_reproduce(a).map(|(ok, s)| {
            emit(&s);
            if ok {
                0
            } else {
                4
            }
        }),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
