//! The `constacode` command line.
//!
//! Every subcommand builds one report, rendered as JSON or as a plain text
//! table. Exit status is 0 on success, 1 when the input violates a
//! hypothesis (or a capacity bound), and 2 when a closed form disagrees with
//! the oracle.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use constacode::capacity;
use constacode::codes::{code_count, table_for, CodeEnumerator};
use constacode::cyclotomic::CosetFamily;
use constacode::json::{
    CensusJson, CheckJson, ClassJson, CodeHandleJson, CodeListJson, CosetFamilyJson, ElemJson, FactorTableJson,
    FieldInfoJson, VerifyJson,
};
use constacode::oracle::{self, brute_factor, brute_selfdual_enumerate, verify_code_duality};
use constacode::selfdual::{selfdual_count, selfdual_enumerate, SelfDualError};
use constacode::{
    classify_unit, equivalence_scalar, factor_modulus, Elem, Error, Field, FieldSpec, Instance, LambdaSpec, Params,
    Polynomial,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "constacode", version, about = "Constacyclic codes of length 3 l p^s over F_(p^m)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Characteristic p (a prime other than 3).
    #[arg(short = 'p')]
    pub p: u64,
    /// Extension degree: q = p^m.
    #[arg(short = 'm', default_value_t = 1)]
    pub m: u32,
    /// Repetition exponent: n = 3 l p^s.
    #[arg(short = 's', default_value_t = 1)]
    pub s: u32,
    /// Odd prime l other than 3 and p.
    #[arg(short = 'l')]
    pub l: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// JSON field description pinning the modulus and generator.
    #[arg(long)]
    pub field_spec: Option<PathBuf>,
    /// Largest field order that may be built.
    #[arg(long, env = capacity::ENV_VAR)]
    pub capacity: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArg {
    /// A xi-power `k`, coefficients `[c0,c1,...]`, an element code `@c`, or
    /// `all` for every class representative.
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the field description and derived parameters.
    FieldInfo(Common),
    /// Class index of lambda and the scalar carrying it to its representative.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lambda: LambdaArg,
    },
    /// Irreducible factorization of x^n - lambda.
    Factor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lambda: LambdaArg,
    },
    /// List lambda-constacyclic codes with generators, duals and dimensions.
    Codes {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long, default_value_t = 64)]
        max_list: usize,
    },
    /// Self-dual cyclic codes (p = 2).
    SelfDual {
        #[command(flatten)]
        common: Common,
        /// Also count by exhaustive search.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 64)]
        max_list: usize,
    },
    /// Cross-check factorization and duals against the oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        lambda: LambdaArg,
        /// Largest number of codes whose duals are checked per lambda.
        #[arg(long, default_value_t = 10_000)]
        max_verify: u64,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::FieldInfo(c) => c,
            Command::Classify { common, .. }
            | Command::Factor { common, .. }
            | Command::Codes { common, .. }
            | Command::SelfDual { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::FieldInfo(_) => "field-info",
            Command::Classify { .. } => "classify",
            Command::Factor { .. } => "factor",
            Command::Codes { .. } => "codes",
            Command::SelfDual { .. } => "self-dual",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Failure before a report exists.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Lib(e.into())
    }
}

/// A finished report: its JSON body, its table text, and the exit status.
struct Report {
    json: serde_json::Value,
    table: String,
    status: i32,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    params: Params,
    field: FieldSpec,
    results: T,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_HYPOTHESIS,
            };
            let text = e.render().to_string();
            let _ = if status == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return status;
        }
    };
    let common = cli.command.common().clone();
    capacity::set_field_limit(common.capacity);
    let result = dispatch(&cli.command, &common);
    capacity::set_field_limit(None);
    match result {
        Ok(report) => {
            let text = match common.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
                Format::Table => report.table,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_HYPOTHESIS;
            }
            report.status
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_HYPOTHESIS
        }
        Err(Failure::Lib(e)) => {
            let mismatch = e.is_verification_failure();
            let _ = writeln!(err, "{}: {e}", if mismatch { "verification failed" } else { "error" });
            if mismatch {
                EXIT_MISMATCH
            } else {
                EXIT_HYPOTHESIS
            }
        }
    }
}

fn instance(common: &Common) -> Result<Instance, Failure> {
    let params = Params::new(common.p, common.m, common.s, common.l)?;
    match &common.field_spec {
        None => Ok(Instance::new(params)?),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let spec: FieldSpec =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let field = Field::from_spec(&spec)?;
            Ok(Instance::with_field(params, field)?)
        }
    }
}

fn lambdas(inst: &Instance, arg: &LambdaArg) -> Result<Vec<Elem>, Failure> {
    let spec: LambdaSpec = arg.lambda.parse()?;
    Ok(spec.resolve(inst)?)
}

fn envelope<T: Serialize>(cmd: &Command, inst: &Instance, results: T) -> serde_json::Value {
    serde_json::to_value(Envelope {
        command: cmd.name(),
        params: inst.params,
        field: inst.field.spec(),
        results,
    })
    .expect("reports serialize")
}

fn header(inst: &Instance) -> String {
    let p = inst.params;
    format!(
        "F_{} (p={}, m={}), n = 3*{}*{}^{} = {}, d = {}\n",
        p.q(),
        p.p,
        p.m,
        p.l,
        p.p,
        p.s,
        p.n(),
        p.d()
    )
}

fn elem_str(field: &Field, a: Elem) -> String {
    match field.log(a) {
        Some(0) => "1".to_string(),
        Some(1) => "ξ".to_string(),
        Some(k) => format!("ξ^{k}"),
        None => "0".to_string(),
    }
}

fn dispatch(cmd: &Command, common: &Common) -> Result<Report, Failure> {
    let inst = instance(common)?;
    match cmd {
        Command::FieldInfo(_) => field_info(cmd, &inst),
        Command::Classify { lambda, .. } => classify(cmd, &inst, &lambdas(&inst, lambda)?),
        Command::Factor { lambda, .. } => factor(cmd, &inst, &lambdas(&inst, lambda)?),
        Command::Codes { lambda, max_list, .. } => codes(cmd, &inst, &lambdas(&inst, lambda)?, *max_list),
        Command::SelfDual { verify, max_list, .. } => self_dual(cmd, &inst, *verify, *max_list),
        Command::Verify { lambda, max_verify, .. } => verify(cmd, &inst, &lambdas(&inst, lambda)?, *max_verify),
    }
}

fn field_info(cmd: &Command, inst: &Instance) -> Result<Report, Failure> {
    let p = inst.params;
    let info = FieldInfoJson {
        params: p,
        q: p.q(),
        n: p.n(),
        d: p.d(),
        f: p.f(),
        e: p.e(),
        field: inst.field.spec(),
    };
    let cosets = CosetFamily::new(p.q(), p.l).ok().map(|c| CosetFamilyJson::from(&c));
    let mut table = header(inst);
    let _ = writeln!(table, "modulus (low first): {:?}", info.field.modulus);
    let _ = writeln!(table, "xi (low first):      {:?}", info.field.xi);
    let _ = writeln!(table, "f = ord_l(q) = {}, e = (l-1)/f = {}", info.f, info.e);
    if let Some(c) = &cosets {
        let _ = writeln!(table, "q-cosets mod 3l ({}):", c.case);
        for coset in &c.cosets {
            let _ = writeln!(table, "  {:<8} {:?}", coset.label, coset.members);
        }
    }
    #[derive(Serialize)]
    struct Body {
        info: FieldInfoJson,
        cosets_mod_3l: Option<CosetFamilyJson>,
    }
    Ok(Report {
        json: envelope(cmd, inst, Body { info, cosets_mod_3l: cosets }),
        table,
        status: EXIT_OK,
    })
}

fn classify(cmd: &Command, inst: &Instance, units: &[Elem]) -> Result<Report, Failure> {
    let field = &inst.field;
    let mut rows = Vec::new();
    let mut table = header(inst);
    let _ = writeln!(table, "{:<10} {:>4} {:>4}  {:<10} {:<10}", "lambda", "d", "j", "rep", "a");
    for &lambda in units {
        let class = classify_unit(inst, lambda)?;
        let rep = field.xi_pow((class.j * inst.params.ps()) as i64);
        let a = equivalence_scalar(inst, lambda, rep)?;
        let _ = writeln!(
            table,
            "{:<10} {:>4} {:>4}  {:<10} {:<10}",
            elem_str(field, lambda),
            class.d,
            class.j,
            elem_str(field, rep),
            elem_str(field, a)
        );
        rows.push(ClassJson::new(field, lambda, class, rep, a));
    }
    Ok(Report {
        json: envelope(cmd, inst, rows),
        table,
        status: EXIT_OK,
    })
}

fn factor(cmd: &Command, inst: &Instance, units: &[Elem]) -> Result<Report, Failure> {
    let field = &inst.field;
    let mut rows = Vec::new();
    let mut table = header(inst);
    for &lambda in units {
        let t = factor_modulus(inst, lambda)?;
        let _ = writeln!(
            table,
            "\nx^{} - {}: class j = {}, case {}, {} distinct factors",
            t.n,
            elem_str(field, lambda),
            t.class.j,
            t.case,
            t.len()
        );
        for e in &t.entries {
            let _ = writeln!(table, "  ({})^{}    [{}]", e.factor, e.multiplicity, e.label);
        }
        rows.push(FactorTableJson::new(inst.params, &t));
    }
    Ok(Report {
        json: envelope(cmd, inst, rows),
        table,
        status: EXIT_OK,
    })
}

fn codes(cmd: &Command, inst: &Instance, units: &[Elem], max_list: usize) -> Result<Report, Failure> {
    let field = &inst.field;
    let mut rows = Vec::new();
    let mut table = header(inst);
    for &lambda in units {
        let t = table_for(inst, lambda)?;
        let total = code_count(&t);
        let mut list = Vec::new();
        for h in CodeEnumerator::new(inst.params, t.clone()).take(max_list) {
            list.push(CodeHandleJson::new(&h)?);
        }
        let _ = writeln!(
            table,
            "\nlambda = {} ({}): {} codes, showing {}",
            elem_str(field, lambda),
            t.case,
            total,
            list.len()
        );
        for (c, h) in list.iter().zip(CodeEnumerator::new(inst.params, t.clone())) {
            let (g, dual) = h.generator_and_dual()?;
            let _ = writeln!(table, "  {:?} dim {:>3}  g = {}  |  g_dual = {}", c.exponents, c.dimension, g, dual);
        }
        rows.push(CodeListJson {
            lambda: ElemJson::new(field, lambda),
            case: t.case.name.to_string(),
            total: total.to_string(),
            listed: list.len(),
            codes: list,
        });
    }
    Ok(Report {
        json: envelope(cmd, inst, rows),
        table,
        status: EXIT_OK,
    })
}

fn self_dual(cmd: &Command, inst: &Instance, run_oracle: bool, max_list: usize) -> Result<Report, Failure> {
    let census = selfdual_count(inst)?;
    let handles = match selfdual_enumerate(inst, &census) {
        Ok(h) => h,
        Err(SelfDualError::Capacity(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let mut status = EXIT_OK;
    let mut mismatch = String::new();
    let oracle_count = if run_oracle {
        let brute = brute_selfdual_enumerate(&inst.field, inst.n())?;
        let ours: BTreeSet<Vec<u32>> = handles.iter().map(|h| h.generator().codes()).collect();
        let theirs: BTreeSet<Vec<u32>> = brute.iter().map(|c| c.generator.codes()).collect();
        if census.formula_count != brute.len().into() || ours != theirs {
            status = EXIT_MISMATCH;
            mismatch = format!(
                "oracle found {} codes; {} differ from the listed set\n",
                brute.len(),
                ours.symmetric_difference(&theirs).count()
            );
        }
        Some(brute.len())
    } else {
        None
    };
    let mut listed = Vec::new();
    for h in handles.iter().take(max_list) {
        listed.push(CodeHandleJson::new(h)?);
    }
    let mut table = header(inst);
    let _ = writeln!(table, "case {}", census.case.tag());
    let _ = writeln!(table, "formula count:   {}", census.formula_count);
    let _ = writeln!(table, "partition count: {}", census.partition_count);
    if let Some(c) = oracle_count {
        let _ = writeln!(table, "oracle count:    {c}");
    }
    let _ = writeln!(
        table,
        "self-reciprocal factors: {}, reciprocal pairs: {}",
        census.partition.self_reciprocal.len(),
        census.partition.pairs.len()
    );
    table.push_str(&mismatch);
    let _ = writeln!(table, "showing {} of {}", listed.len(), census.formula_count);
    for (c, h) in listed.iter().zip(&handles) {
        let _ = writeln!(table, "  {:?}  g = {}", c.exponents, h.generator());
    }
    let body = CensusJson::new(inst.params, &census, oracle_count, listed);
    Ok(Report {
        json: envelope(cmd, inst, body),
        table,
        status,
    })
}

fn verify(cmd: &Command, inst: &Instance, units: &[Elem], max_verify: u64) -> Result<Report, Failure> {
    let field = &inst.field;
    let mut rows = Vec::new();
    let mut table = header(inst);
    let mut status = EXIT_OK;
    for &lambda in units {
        let (case, checks) = verify_one(inst, lambda, max_verify)?;
        let passed = checks.iter().all(|c| c.passed);
        if !passed {
            status = EXIT_MISMATCH;
        }
        let _ = writeln!(table, "\nlambda = {} ({case})", elem_str(field, lambda));
        for c in &checks {
            let _ = writeln!(
                table,
                "  {} {:<20} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.property,
                c.detail
            );
        }
        rows.push(VerifyJson {
            params: inst.params,
            lambda: ElemJson::new(field, lambda),
            case,
            checks,
            passed,
        });
    }
    Ok(Report {
        json: envelope(cmd, inst, rows),
        table,
        status,
    })
}

fn verify_one(inst: &Instance, lambda: Elem, max_verify: u64) -> Result<(String, Vec<CheckJson>), Failure> {
    let field = &inst.field;
    let mut checks = Vec::new();
    let mut push = |property: &str, passed: bool, detail: String| {
        checks.push(CheckJson {
            property: property.to_string(),
            passed,
            detail,
        })
    };
    let table = match factor_modulus(inst, lambda) {
        Ok(t) => Arc::new(t),
        Err(e) => {
            let e = Error::from(e);
            if !e.is_verification_failure() {
                return Err(Failure::Lib(e));
            }
            push("closed-form", false, e.to_string());
            return Ok(("unknown".to_string(), checks));
        }
    };

    let class = classify_unit(inst, lambda)?;
    let rep = field.xi_pow((class.j * inst.params.ps()) as i64);
    let a = equivalence_scalar(inst, lambda, rep)?;
    let ok = field.mul(field.pow(a, inst.params.n()), lambda) == rep && classify_unit(inst, rep)? == class;
    push("classification", ok, format!("j = {}, a = {}", class.j, elem_str(field, a)));

    let oracle = brute_factor(&table.target())?;
    let ok = table.pairs() == oracle;
    push(
        "factorization",
        ok,
        format!("{} closed-form factors, {} from the oracle", table.len(), oracle.len()),
    );

    let mut reducible = 0;
    for e in &table.entries {
        if !oracle::is_irreducible(&e.factor)? {
            reducible += 1;
        }
    }
    push("irreducibility", reducible == 0, format!("{reducible} reducible"));

    let inv_target = Polynomial::binomial(field, inst.n(), field.inv(lambda)?);
    let bad = table
        .entries
        .iter()
        .filter(|e| e.factor.monic_reciprocal().ok().as_ref() != Some(&e.partner) || !e.partner.divides(&inv_target))
        .count();
    push("reciprocal-partners", bad == 0, format!("{bad} disagree"));

    let dual_table = table_for(inst, field.inv(lambda)?)?;
    let total = code_count(&table);
    let (mut checked, mut failed) = (0u64, 0u64);
    let mut first_failure = None;
    for h in CodeEnumerator::new(inst.params, table.clone()).take(max_verify as usize) {
        checked += 1;
        let outcome = h.generator_and_dual().map_err(Error::from).and_then(|(g, dual)| {
            let orthogonal = verify_code_duality(&g, lambda, &dual, inst.n())?;
            let back = h.dual_handle(dual_table.clone())?.dual_handle(table.clone())?;
            Ok(orthogonal && back.exponents == h.exponents)
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => {
                failed += 1;
                first_failure.get_or_insert_with(|| format!("{:?}", h.exponents));
            }
            Err(e) if e.is_verification_failure() => {
                failed += 1;
                first_failure.get_or_insert_with(|| e.to_string());
            }
            Err(e) => return Err(Failure::Lib(e)),
        }
    }
    let mut detail = format!("{checked} of {total} codes checked, {failed} failed");
    if let Some(f) = first_failure {
        let _ = write!(detail, " (first: {f})");
    }
    push("duals", failed == 0, detail);
    Ok((table.case.name.to_string(), checks))
}
