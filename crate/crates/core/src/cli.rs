//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and reports through the given streams; it returns the process
//! exit status: 0 on success, 1 on bad flags or domain errors, 2 when an
//! internal invariant check fails.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::basis::{decompose_l, reconstruct, Basis};
use crate::error::{Error, Result};
use crate::families::k_series_q;
use crate::oracle::{linear::format_vector, q_square_in_span, spreading_violation};
use crate::series::Series;
use crate::shuffle::{gp, k1_product, LetterString};
use crate::subset::{all_subsets, SubsetSpec};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "kspan", version, about = "Exact K/L series arithmetic and decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print K_{n,set} truncated to x_1..x_V.
    Kseries(FamilyArgs),
    /// Print L_{n,set} truncated to x_1..x_V.
    Lseries(FamilyArgs),
    /// Multiply factors such as K:2:1 and L:3:2.
    Multiply(ProductArgs),
    /// Write a product of factors as an integer combination of K or L members.
    Decompose(DecomposeArgs),
    /// List the sets Gp(s) over shuffles s, giving K_{1,{}} K_{m,set}.
    ShuffleFormula(ShuffleArgs),
    /// Generalized peak set of a string over A > B > C > D.
    Gp(GpArgs),
    /// Test the doubling rule on a product of factors.
    CheckSpreading(ProductArgs),
    /// Decide whether the base-q square K_{1,{}}^2 lies in the span of the K_{2,set}.
    CheckQ(QArgs),
    /// Run the exhaustive small-degree verification suites.
    Selftest,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated members, empty for the empty set.
    #[arg(long, default_value = "", allow_hyphen_values = false)]
    set: String,
    /// Natural variables kept; defaults to max(n, 1).
    #[arg(long)]
    vars: Option<u32>,
    /// Coefficient base instead of 2 (K only).
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ProductArgs {
    /// First factor, KIND:n:set (e.g. K:2:1,2 or L:3: for the empty set).
    #[arg(long)]
    left: String,
    /// Second factor.
    #[arg(long)]
    right: Option<String>,
    /// Further factors.
    #[arg(long = "factor")]
    factors: Vec<String>,
    /// Natural variables kept; defaults to the total degree (plus one for
    /// check-spreading).
    #[arg(long)]
    vars: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    /// Basis of the output combination.
    #[arg(long, default_value = "L")]
    basis: String,
    #[command(flatten)]
    product: ProductArgs,
}

#[derive(Debug, Args)]
struct ShuffleArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value = "")]
    set: String,
    /// Also verify the identity as series at V = m + 1.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GpArgs {
    /// A word over A, B, C, D.
    word: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct QArgs {
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, default_value_t = 2)]
    vars: u32,
    #[arg(long)]
    json: bool,
}

/// A factor `KIND:n:set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub basis: Basis,
    pub spec: SubsetSpec,
}

impl Factor {
    pub fn parse(text: &str) -> Result<Factor> {
        let mut parts = text.splitn(3, ':');
        let (Some(kind), Some(n), Some(set)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "factor `{text}` is not of the form KIND:n:set"
            )));
        };
        let basis: Basis = kind.parse()?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in factor `{text}`")))?;
        Ok(Factor {
            basis,
            spec: SubsetSpec::parse(n, set)?,
        })
    }

    pub fn series(&self, trunc: u32) -> Series {
        self.basis.member(&self.spec, trunc)
    }
}

enum Failure {
    Domain(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("write failed: {e}"))
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs one command line (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "internal invariant violated: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Kseries(a) => family(Basis::K, a, out),
        Command::Lseries(a) => family(Basis::L, a, out),
        Command::Multiply(a) => multiply(a, out),
        Command::Decompose(a) => decompose(a, out),
        Command::ShuffleFormula(a) => shuffle_formula(a, out),
        Command::Gp(a) => peak_set(a, out),
        Command::CheckSpreading(a) => check_spreading(a, out),
        Command::CheckQ(a) => check_q(a, out),
        Command::Selftest => selftest(out),
    }
}

fn positive_vars(vars: Option<u32>, default: u32) -> Result<u32> {
    match vars {
        Some(0) => Err(Error::Parse("--vars must be at least 1".into())),
        Some(v) => Ok(v),
        None => Ok(default.max(1)),
    }
}

fn family(basis: Basis, a: FamilyArgs, out: &mut dyn Write) -> Outcome {
    let spec = SubsetSpec::parse(a.n, &a.set)?;
    let vars = positive_vars(a.vars, a.n as u32)?;
    let series = match (basis, a.q) {
        (Basis::K, Some(q)) => k_series_q(&spec, vars, q)?,
        (Basis::L, Some(_)) => return Err(Failure::Domain("--q applies to kseries only".into())),
        (_, None) => basis.member(&spec, vars),
    };
    if a.json {
        writeln!(out, "{}", series.to_json())?;
    } else {
        writeln!(
            out,
            "{basis}_{{{},{spec}}} at V={vars}: {} terms",
            a.n,
            series.len()
        )?;
        write!(out, "{series}")?;
    }
    Ok(0)
}

fn factors(a: &ProductArgs) -> Result<Vec<Factor>> {
    std::iter::once(&a.left)
        .chain(a.right.iter())
        .chain(a.factors.iter())
        .map(|t| Factor::parse(t))
        .collect()
}

fn product(fs: &[Factor], trunc: u32) -> Result<Series> {
    fs.iter()
        .try_fold(Series::one(trunc), |acc, f| acc.mul(&f.series(trunc)))
}

fn total_degree(fs: &[Factor]) -> u32 {
    fs.iter().map(|f| f.spec.n() as u32).sum()
}

fn multiply(a: ProductArgs, out: &mut dyn Write) -> Outcome {
    let fs = factors(&a)?;
    let vars = positive_vars(a.vars, total_degree(&fs))?;
    let p = product(&fs, vars)?;
    if a.json {
        writeln!(out, "{}", p.to_json())?;
    } else {
        writeln!(out, "degree {} at V={vars}: {} terms", p.degree(), p.len())?;
        write!(out, "{p}")?;
    }
    Ok(0)
}

fn decompose(a: DecomposeArgs, out: &mut dyn Write) -> Outcome {
    let basis: Basis = a.basis.parse()?;
    let fs = factors(&a.product)?;
    let vars = positive_vars(a.product.vars, total_degree(&fs))?;
    let target = product(&fs, vars)?;
    let dec = decompose_l(&target)?.to_basis(basis);
    if reconstruct(&dec, vars)? != target {
        return Err(Failure::Invariant(
            "decomposition does not reconstruct the product".into(),
        ));
    }
    if a.product.json {
        writeln!(out, "{}", dec.to_json())?;
    } else {
        write!(out, "{dec}")?;
    }
    Ok(0)
}

fn shuffle_formula(a: ShuffleArgs, out: &mut dyn Write) -> Outcome {
    let right = SubsetSpec::parse(a.m, &a.set)?;
    let ms = k1_product(&right);
    if a.check {
        let v = a.m as u32 + 1;
        let mut sum = Series::zero(a.m + 1, v);
        for spec in ms.expanded() {
            sum = sum.add(&Basis::K.member(spec, v))?;
        }
        let prod = Basis::K
            .member(&SubsetSpec::empty(1), v)
            .mul(&Basis::K.member(&right, v))?;
        if sum != prod {
            return Err(Failure::Invariant(
                "peak-set sum differs from the product".into(),
            ));
        }
    }
    if a.json {
        writeln!(out, "{}", ms.to_json())?;
    } else {
        write!(out, "{ms}")?;
        if a.check {
            writeln!(out, "identity verified at V={}", a.m + 1)?;
        }
    }
    Ok(0)
}

fn peak_set(a: GpArgs, out: &mut dyn Write) -> Outcome {
    let word: LetterString = a.word.parse()?;
    let set = gp(&word);
    if a.json {
        writeln!(out, "{}", json!({ "string": word.to_string(), "set": set.members() }))?;
    } else {
        writeln!(out, "{set}")?;
    }
    Ok(0)
}

fn check_spreading(a: ProductArgs, out: &mut dyn Write) -> Outcome {
    let fs = factors(&a)?;
    let vars = positive_vars(a.vars, total_degree(&fs) + 1)?;
    let p = product(&fs, vars)?;
    let violation = spreading_violation(&p)?;
    if a.json {
        let v = violation.as_ref().map(|(g, r, h)| {
            json!({ "monomial": g.to_string(), "relation": r.to_string(), "resolved": h.to_string() })
        });
        writeln!(out, "{}", json!({ "holds": violation.is_none(), "violation": v }))?;
    } else {
        match &violation {
            None => writeln!(out, "spreading condition holds at V={vars}")?,
            Some((g, r, h)) => writeln!(
                out,
                "spreading condition fails: 2*[{g}] = {} but [{h}] = {} (resolving {r})",
                p.coefficient(g) * 2,
                p.coefficient(h)
            )?,
        }
    }
    Ok(if violation.is_none() { 0 } else { 1 })
}

fn check_q(a: QArgs, out: &mut dyn Write) -> Outcome {
    let solution = q_square_in_span(a.q, a.vars)?;
    let labels: Vec<String> = all_subsets(2).iter().map(|s| s.to_string()).collect();
    if a.json {
        let sol = solution.as_ref().map(|s| format_vector(&s.particular));
        writeln!(
            out,
            "{}",
            json!({ "q": a.q, "vars": a.vars, "in_span": solution.is_some(), "columns": labels, "solution": sol })
        )?;
    } else {
        match &solution {
            None => writeln!(
                out,
                "q={}: K_{{1,{{}}}}^2 is not in the span of K_{{2,set}} at V={}",
                a.q, a.vars
            )?,
            Some(s) => writeln!(
                out,
                "q={}: K_{{1,{{}}}}^2 = {} . K_{{2,{}}} at V={} (rank {})",
                a.q,
                format_vector(&s.particular),
                labels.join("/"),
                a.vars,
                s.rank
            )?,
        }
    }
    Ok(0)
}

fn selftest(out: &mut dyn Write) -> Outcome {
    let mut ok = true;
    for report in suites::selftest() {
        writeln!(out, "{report}")?;
        ok &= report.passed();
    }
    writeln!(out, "{}", if ok { "all suites passed" } else { "some suites failed" })?;
    Ok(if ok { 0 } else { 1 })
}
