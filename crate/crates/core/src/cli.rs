//! The `frolicher` command line.
//!
//! Exit codes: `0` success, `1` parse or validation failure (including a
//! failed `verify-paper` check), `2` internal invariant violation, `3` no
//! zig-zag of the requested length.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::algebra::Form;
use crate::model::{self, family_xn, xn_beta_chain, xn_dx, xn_top_form, StructureEquations};
use crate::spectral::{
    dolbeault_dims, find_zigzag, pages_up_to, total_cohomology, verify_zigzag, DoubleComplex, FrolicherReport,
    SpectralSequence, ZigZag, ZigZagFailure,
};
use crate::structfile::{self, parse_form_expr, ParseError};

#[derive(Parser, Debug)]
#[command(name = "frolicher", version, about = "Exact Frölicher spectral sequences of nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a structure-equation file.
    Check { file: PathBuf },
    /// Print page dimension tables, Betti and Hodge numbers.
    Pages {
        #[command(flatten)]
        input: Input,
        /// Last page to compute (default m+1, where the sequence is stable).
        #[arg(long, value_name = "R")]
        max_page: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Emit a member of a built-in family as a structure-equation file.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Search for a zig-zag of the given length from a ∂̄-closed form.
    Zigzag {
        #[command(flatten)]
        input: Input,
        /// Starting form, e.g. "~f4^~f2".
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, value_name = "R")]
        length: usize,
    },
    /// Check that X_N carries the chain with d_N[β_1] = [dx_1∧⋯∧dx_N] ≠ 0.
    VerifyPaper {
        #[arg(long, value_name = "N")]
        n: usize,
        /// Read β_1..β_N from a file (one form per line) instead of the
        /// built-in chain.
        #[arg(long, value_name = "FILE")]
        chain: Option<PathBuf>,
    },
    /// Print Hodge numbers, Betti numbers and the Frölicher inequality.
    Hodge {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// The algebra X_N (2N generators).
    Xn {
        #[arg(long, value_name = "N")]
        n: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "builtin", "family_xn"])))]
struct Input {
    /// Structure-equation file.
    file: Option<PathBuf>,
    /// Built-in example (torus, iwasawa).
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Generator count for built-ins that take one.
    #[arg(long, value_name = "M", requires = "builtin")]
    dim: Option<usize>,
    /// The algebra X_N.
    #[arg(long, value_name = "N")]
    family_xn: Option<usize>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::internal(format!("write failed: {e}"))
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Check { file } => check(&file, out, err),
        Command::Pages { input, max_page, json } => pages(&input, max_page, json, out, err),
        Command::Family { family: Family::Xn { n, output } } => family(n, output.as_deref(), out),
        Command::Zigzag { input, start, length } => zigzag(&input, &start, length, out, err),
        Command::VerifyPaper { n, chain } => verify_paper(n, chain.as_deref(), out),
        Command::Hodge { input } => hodge(&input, out, err),
    };
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn describe_parse_error(origin: &str, text: &str, e: &ParseError) -> String {
    let line = text.lines().nth(e.span.line.saturating_sub(1)).unwrap_or("");
    let width = text[e.span.start.min(text.len())..e.span.end.min(text.len())].chars().count().max(1);
    format!("{origin}:{e}\n  | {line}\n  | {}{}", " ".repeat(e.span.column.saturating_sub(1)), "^".repeat(width))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_file(path: &Path, err: &mut impl Write) -> Result<StructureEquations, Failure> {
    let text = read_file(path)?;
    let origin = path.display().to_string();
    match structfile::parse_structure_file_with_lints(&text) {
        Ok((eq, lints)) => {
            for lint in lints {
                writeln!(err, "{origin}:{lint}")?;
            }
            Ok(eq)
        }
        Err(e) => Err(Failure::input(describe_parse_error(&origin, &text, &e))),
    }
}

fn load(input: &Input, err: &mut impl Write) -> Result<StructureEquations, Failure> {
    if let Some(path) = &input.file {
        load_file(path, err)
    } else if let Some(name) = &input.builtin {
        Ok(model::builtin(name, input.dim)?)
    } else if let Some(n) = input.family_xn {
        Ok(family_xn(n)?)
    } else {
        unreachable!("clap enforces an input source")
    }
}

fn build(eq: &StructureEquations) -> Result<DoubleComplex, Failure> {
    Ok(DoubleComplex::build(eq)?)
}

fn check(file: &Path, out: &mut impl Write, err: &mut impl Write) -> Outcome {
    let eq = load_file(file, err)?;
    let report = eq.validate();
    write!(out, "generators: {}\n{report}", eq.m())?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::input("structure equations are not valid"))
    }
}

/// Writes a `(p, q)` grid with `p` down and `q` across.
fn grid(out: &mut impl Write, m: usize, value: impl Fn(usize, usize) -> usize) -> std::io::Result<()> {
    let width = (0..=m)
        .flat_map(|p| (0..=m).map(move |q| (p, q)))
        .map(|(p, q)| value(p, q).to_string().len())
        .chain([3, m.to_string().len()])
        .max()
        .unwrap_or(3);
    write!(out, "{:>w$}", "p\\q", w = width)?;
    for q in 0..=m {
        write!(out, " {q:>width$}")?;
    }
    writeln!(out)?;
    for p in 0..=m {
        write!(out, "{p:>width$}")?;
        for q in 0..=m {
            write!(out, " {:>width$}", value(p, q))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn join_numbers(values: &[usize]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Cheap consistency checks on a finished report.
fn check_report(report: &FrolicherReport) -> Outcome {
    for page in &report.pages {
        if page.euler() != report.euler {
            return Err(Failure::internal(format!("Euler characteristic changed on E_{}", page.r)));
        }
    }
    for pair in report.pages.windows(2).skip(1) {
        if pair[1].iter().zip(pair[0].iter()).any(|(a, b)| a.2 > b.2) {
            return Err(Failure::internal(format!("E_{} is larger than E_{}", pair[1].r, pair[0].r)));
        }
    }
    if report.pages.len() == report.m + 2 {
        let last = report.pages.last().expect("nonempty");
        if (0..=2 * report.m).any(|k| last.total(k) != report.betti[k]) {
            return Err(Failure::internal("stable page does not match the Betti numbers"));
        }
    }
    if !report.frolicher_inequality_holds() {
        return Err(Failure::internal("Frölicher inequality fails"));
    }
    Ok(())
}

fn pages(input: &Input, max_page: Option<usize>, json: bool, out: &mut impl Write, err: &mut impl Write) -> Outcome {
    let eq = load(input, err)?;
    let dc = build(&eq)?;
    let report = pages_up_to(&dc, max_page);
    check_report(&report)?;
    if json {
        out.write_all(structfile::emit_report_json(&report).as_bytes())?;
        return Ok(());
    }
    let m = report.m;
    writeln!(out, "m = {m}")?;
    for page in &report.pages {
        writeln!(out, "\nE_{}", page.r)?;
        grid(out, m, |p, q| page.dim(p, q))?;
    }
    let nonzero: Vec<_> = report.differential_ranks.iter().filter(|(_, &rank)| rank > 0).collect();
    writeln!(out)?;
    if nonzero.is_empty() {
        writeln!(out, "nonzero differentials: none")?;
    } else {
        writeln!(out, "nonzero differentials:")?;
        for (&(r, p, q), rank) in nonzero {
            writeln!(out, "  d_{r}: E_{r}^{{{p},{q}}} -> E_{r}^{{{},{}}}  rank {rank}", p + r, q + 1 - r)?;
        }
    }
    writeln!(out, "betti: {}", join_numbers(&report.betti))?;
    writeln!(out, "euler characteristic: {}", report.euler)?;
    match report.degeneration_page {
        Some(r) => writeln!(out, "degeneration page: {r}")?,
        None => writeln!(out, "degeneration page: beyond E_{}", report.pages.len() - 1)?,
    }
    Ok(())
}

fn hodge(input: &Input, out: &mut impl Write, err: &mut impl Write) -> Outcome {
    let eq = load(input, err)?;
    let dc = build(&eq)?;
    let m = dc.m();
    let h = dolbeault_dims(&dc);
    let betti = total_cohomology(&dc);
    writeln!(out, "h^{{p,q}}")?;
    grid(out, m, |p, q| h[p][q])?;
    let sums: Vec<usize> =
        (0..=2 * m).map(|k| (0..=k.min(m)).filter(|&p| k - p <= m).map(|p| h[p][k - p]).sum()).collect();
    writeln!(out, "\nbetti:         {}", join_numbers(&betti))?;
    writeln!(out, "sum of h^{{p,q}}: {}", join_numbers(&sums))?;
    let holds = betti.iter().zip(&sums).all(|(b, s)| b <= s);
    let equal = betti == sums;
    writeln!(
        out,
        "frolicher inequality b_k <= sum h^{{p,q}}: {}{}",
        if holds { "holds" } else { "FAILS" },
        if equal { " (equality: degenerates at E_1)" } else { "" }
    )?;
    if holds {
        Ok(())
    } else {
        Err(Failure::internal("Frölicher inequality fails"))
    }
}

fn family(n: usize, output: Option<&Path>, out: &mut impl Write) -> Outcome {
    let eq = family_xn(n)?;
    let mut text = format!("# X_{n}: f1..f{n} are dx_1..dx_{n}, f{}..f{} are omega_1..omega_{n}\n", n + 1, 2 * n);
    text.push_str(&structfile::serialize_structure_file(&eq));
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn zigzag(input: &Input, start: &str, length: usize, out: &mut impl Write, err: &mut impl Write) -> Outcome {
    if length == 0 {
        return Err(Failure::input("--length must be at least 1"));
    }
    let eq = load(input, err)?;
    let dc = build(&eq)?;
    let beta0 =
        parse_form_expr(start, eq.m()).map_err(|e| Failure::input(describe_parse_error("--start", start, &e)))?;
    match find_zigzag(&dc, &beta0, length)? {
        Ok(z) => {
            verify_zigzag(&dc, &z).map_err(|v| Failure::internal(format!("returned chain is invalid: {v}")))?;
            writeln!(out, "{z}")?;
            writeln!(out, "lives to E_{length}")?;
            Ok(())
        }
        Err(ZigZagFailure::LivesOnlyTo { reached, chain }) => {
            writeln!(out, "{chain}")?;
            writeln!(out, "lives only to E_{reached}")?;
            Err(Failure { code: 3, message: format!("no zig-zag of length {length}; lives only to E_{reached}") })
        }
    }
}

fn read_chain(path: &Path, m: usize) -> Result<Vec<Form>, Failure> {
    let text = read_file(path)?;
    let origin = path.display().to_string();
    let mut chain = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let form = parse_form_expr(body, m).map_err(|e| {
            let mut e = e;
            e.span.line = i + 1;
            Failure::input(describe_parse_error(&origin, &text, &e))
        })?;
        chain.push(form);
    }
    Ok(chain)
}

struct Checklist<'w, W: Write> {
    out: &'w mut W,
    failed: bool,
}

impl<W: Write> Checklist<'_, W> {
    fn item(&mut self, ok: bool, what: impl std::fmt::Display) -> std::io::Result<()> {
        self.failed |= !ok;
        writeln!(self.out, "[{}] {what}", if ok { " ok " } else { "FAIL" })
    }
}

fn wedge_all(m: usize, factors: impl IntoIterator<Item = Form>) -> Form {
    factors.into_iter().fold(Form::constant(m, 1.into()), |acc, x| acc.wedge(&x).expect("same ambient"))
}

fn verify_paper(n: usize, chain_file: Option<&Path>, out: &mut impl Write) -> Outcome {
    let eq = family_xn(n)?;
    let m = eq.m();
    let report = eq.validate();
    let mut list = Checklist { out, failed: false };
    list.item(report.is_valid() && report.nilpotent, format!("X_{n} is a valid nilpotent structure ({m} generators)"))?;
    if !report.is_valid() {
        return Err(Failure::internal("family equations fail validation"));
    }
    let dc = build(&eq)?;

    let beta = match chain_file {
        Some(path) => read_chain(path, m)?,
        None => xn_beta_chain(n),
    };
    if beta.len() != n {
        return Err(Failure::input(format!("chain must have {n} forms, found {}", beta.len())));
    }
    let del = |f: &Form| eq.del(f);
    let del_bar = |f: &Form| eq.del_bar(f);
    let top = xn_top_form(n);

    for (i, b) in beta.iter().enumerate() {
        let (p, q) = (i, n - 1 - i);
        list.item(b.is_bihomogeneous(p, q) && !b.is_zero(), format!("beta_{} is a nonzero ({p},{q})-form", i + 1))?;
    }
    let all_bihomogeneous = beta.iter().enumerate().all(|(i, b)| b.is_bihomogeneous(i, n - 1 - i));
    if !all_bihomogeneous {
        writeln!(list.out, "chain has the wrong shape; stopping")?;
        return Err(Failure::input("verification failed"));
    }

    list.item(del_bar(&beta[0])?.is_zero(), "delbar beta_1 = 0")?;
    list.item(del(&beta[n - 1])? == top, format!("del beta_{n} = {top}"))?;
    list.item(del(&beta[0])? == del_bar(&beta[1])?.neg(), "del beta_1 = -delbar beta_2")?;
    for k in 2..n {
        let dxb = |j| xn_dx(n, j).conjugate();
        let mut expected = wedge_all(m, (2..=k).map(|j| xn_dx(n, j)).chain([xn_dx(n, 1)]).chain((k..n).map(dxb)));
        if k % 2 == 1 {
            expected = expected.neg();
        }
        let lhs = del_bar(&beta[k])?;
        let ok = lhs == del(&beta[k - 1])?.neg() && lhs == expected;
        list.item(ok, format!("delbar beta_{} = -del beta_{k} = {expected}", k + 1))?;
    }

    let chain = ZigZag { start: (0, n - 1), chain: beta.clone(), terminal: top.clone() };
    let verified = verify_zigzag(&dc, &chain);
    list.item(verified.is_ok(), "zig-zag relations hold for the chain")?;
    if let Err(v) = &verified {
        writeln!(list.out, "       {v}")?;
    }

    match find_zigzag(&dc, &beta[0], n)? {
        Ok(found) => {
            let ok = verify_zigzag(&dc, &found).is_ok();
            list.item(ok, format!("solver finds a zig-zag of length {n} from beta_1"))?;
        }
        Err(ZigZagFailure::LivesOnlyTo { reached, .. }) => {
            list.item(false, format!("solver finds a zig-zag of length {n} from beta_1 (stopped at {reached})"))?
        }
    }
    let extension = match find_zigzag(&dc, &beta[0], n + 1)? {
        Err(ZigZagFailure::LivesOnlyTo { reached, .. }) => {
            list.item(reached == n, format!("no zig-zag of length {} exists (lives only to E_{reached})", n + 1))?;
            None
        }
        Ok(z) => {
            list.item(false, format!("no zig-zag of length {} exists", n + 1))?;
            Some(z)
        }
    };

    // Classes in E_n, computed from the filtration independently of the
    // chain.
    let ss = SpectralSequence::new(&dc);
    let source = ss.quotient(n, 0, n - 1);
    let target = ss.quotient(n, n, 0);
    writeln!(list.out, "dim E_{n}^{{0,{}}} = {}, dim E_{n}^{{{n},0}} = {}", n - 1, source.dim(), target.dim())?;
    let x = dc.total_vec(n - 1, &chain.total())?;
    let in_numerator = source.numerator().contains(&x);
    list.item(
        in_numerator && !source.is_zero_class(&x),
        format!("beta_1 + ... + beta_{n} represents a nonzero class in E_{n}^{{0,{}}}", n - 1),
    )?;
    let dx = dc.apply_total_d(n - 1, &x);
    let top_vec = dc.total_vec(n, &top)?;
    list.item(dx == top_vec, format!("d(beta_1 + ... + beta_{n}) = {top}"))?;
    let image_ok = ss.cycles(n as i64, 0, n - 1).contains(&x);
    let class = if image_ok && target.numerator().contains(&top_vec) {
        Some(ss.apply_differential(&target, n - 1, &x))
    } else {
        None
    };
    let top_class = target.class_of(&top_vec);
    let nonzero = matches!((&class, &top_class), (Some(c), Some(t)) if c == t && !c.is_zero());
    list.item(nonzero, format!("d_{n}[beta_1] = [{top}] is nonzero in E_{n}^{{{n},0}}"))?;

    let failed = list.failed;
    if nonzero {
        writeln!(out, "d_{n}[β1] = [{top}] ≠ 0 in E_{n}^{{{n},0}}")?;
    } else {
        writeln!(out, "d_{n}[β1] = 0 in E_{n}^{{{n},0}}")?;
    }
    if let Some(z) = extension {
        writeln!(out, "beta_1 extends to a zig-zag of length {}:", n + 1)?;
        writeln!(out, "{z}")?;
    }
    if failed {
        return Err(Failure::input(format!("verification of X_{n} failed")));
    }
    writeln!(out, "X_{n} does not degenerate at E_{n}")?;
    Ok(())
}
