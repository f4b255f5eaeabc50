//! The `orbichar` command line.
//!
//! Exit codes: 0 success, 2 malformed or insufficient input, 3 unsupported
//! Γ or input outside the modelled scope, 4 verification failure.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::characteristic::{chi_es, chi_gamma, chi_gamma_times_manifold, chi_l};
use crate::classify::{
    char_sequence, enumerate_by_chi_es, for_each_with_chi_es, reconstruct, search_collisions,
    CharSequence, ReconstructError,
};
use crate::constructions::{
    base_pair, build_collision_pair, expand_family, general_gamma_family, prime_avoiding_q,
    required_base_orders, same_chi_l_family, EqualizeMode,
};
use crate::error::{Error, Result};
use crate::gamma::GammaDescriptor;
use crate::mirrored::{chi_es_mirrored, MirroredCylinder};
use crate::rational::Rational;
use crate::sectors::{
    chi_gamma_mirrored, chi_gamma_quotient, hom_classes, rotation_sphere_action, FiniteGroup,
    FixedPointCharacter, FixedPointEntry, GroupTableJson, DEFAULT_HOM_BUDGET,
};
use crate::signature::OrbifoldSignature;

/// Overrides the homomorphism-enumeration budget.
pub const BUDGET_ENV: &str = "ORBICHAR_HOM_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// How many levels past `L` to look for the first disagreement.
const DISAGREEMENT_WINDOW: u32 = 8;

#[derive(Parser, Debug)]
#[command(
    name = "orbichar",
    version,
    about = "Exact Γ-Euler-Satake characteristics of 2-orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// χ_Γ of a signature, a single χ_(l), or the sequence χ_(0..=L).
    Chi(ChiArgs),
    /// Build a family of distinct signatures with equal χ_(l) for l ≤ L.
    Construct(ConstructArgs),
    /// Recover a signature from (χ_(0), …, χ_(L)).
    Reconstruct(ReconstructArgs),
    /// Stream every signature with the given Euler-Satake characteristic.
    Enumerate(EnumerateArgs),
    /// Search a bounded box for signatures sharing χ_(0..=L).
    Search(SearchArgs),
    /// χ_Γ of a global quotient of a manifold by a finite group.
    Quotient(QuotientArgs),
    /// χ_Γ of a mirrored cylinder with odd corner reflectors.
    Mirrored(MirroredArgs),
    /// Re-check one of the worked examples and report pass/fail.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
struct ChiArgs {
    /// Signature JSON, `Σ_g(m1,…)` / `S_g(m1,…)`, or a file holding either.
    #[arg(long)]
    sig: String,
    #[arg(long, default_value = "trivial", conflicts_with_all = ["l", "seq_len"])]
    gamma: String,
    /// Γ = Z^l.
    #[arg(long, conflicts_with = "seq_len")]
    l: Option<u32>,
    /// Print χ_(0), …, χ_(L).
    #[arg(long = "seq-len")]
    seq_len: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long = "L")]
    levels: u32,
    #[arg(long, default_value_t = 0)]
    g: u64,
    /// Base parameters q, comma separated; 2^(L−2) of them for L ≥ 3.
    /// Defaults to parameters whose base pairs avoid the prime 3.
    #[arg(long, value_delimiter = ',')]
    orders: Vec<u64>,
    /// Family size; a bare pair when omitted.
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long, default_value = "lcm")]
    equalize: EqualizeMode,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    /// Comma-separated exact values, e.g. "-1/2,2,19,…".
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long = "chi-es", allow_hyphen_values = true)]
    chi_es: Rational,
    /// One JSON signature per line.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long = "g-max")]
    g_max: u64,
    #[arg(long = "k-max")]
    k_max: usize,
    #[arg(long = "m-max")]
    m_max: u64,
    #[arg(long = "L")]
    levels: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    /// Built-in name (C6, D10, C2xC3) or a JSON table file.
    #[arg(long, required_unless_present = "rotation", requires = "fpc")]
    group: Option<String>,
    /// JSON list of {"subgroup": [...], "chi": n}, inline or as a file.
    #[arg(long)]
    fpc: Option<String>,
    /// `n,r`: Z/n rotating the sphere by 2πr/n; replaces --group/--fpc.
    #[arg(long, conflicts_with_all = ["group", "fpc"], value_delimiter = ',', num_args = 1)]
    rotation: Vec<usize>,
    #[arg(long, default_value = "trivial")]
    gamma: String,
    /// Also list the homomorphism classes.
    #[arg(long)]
    classes: bool,
}

#[derive(Args, Debug)]
struct MirroredArgs {
    /// Corner orders on the first boundary circle.
    #[arg(long, value_delimiter = ',')]
    b0: Vec<u64>,
    /// Corner orders on the second boundary circle.
    #[arg(long, value_delimiter = ',')]
    b1: Vec<u64>,
    #[arg(long, default_value = "trivial")]
    gamma: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// sameESCsameg, sameLESC, basecase, noneffective, nonorientable,
    /// generaldim, or all.
    example: String,
    #[arg(long)]
    json: bool,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedGamma(_) | Error::Unsupported(_) | Error::BudgetExceeded { .. } => {
                EXIT_UNSUPPORTED
            }
            Error::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

/// Runs the command line against the given streams and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Chi(a) => chi(a, out),
        Command::Construct(a) => construct(a, out),
        Command::Reconstruct(a) => reconstruct_cmd(a, out),
        Command::Enumerate(a) => enumerate(a, out),
        Command::Search(a) => search(a, out),
        Command::Quotient(a) => quotient(a, out),
        Command::Mirrored(a) => mirrored(a, out),
        Command::VerifyPaper(a) => verify(a, out),
    }
}

fn budget() -> CliResult<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: EXIT_INPUT,
            message: format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_HOM_BUDGET),
    }
}

/// Inline text first; otherwise the contents of the named file.
fn inline_or_file(text: &str) -> Result<String> {
    let path = Path::new(text);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{text}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

fn parse_signature(text: &str) -> Result<OrbifoldSignature> {
    match text.parse() {
        Ok(sig) => Ok(sig),
        Err(e) if Path::new(text).is_file() => inline_or_file(text)?.trim().parse().map_err(|_| e),
        Err(e) => Err(e),
    }
}

fn parse_gamma(text: &str) -> Result<GammaDescriptor> {
    text.parse()
}

fn chi(a: ChiArgs, out: &mut dyn Write) -> CliResult<i32> {
    let sig = parse_signature(&a.sig)?;
    if let Some(last) = a.seq_len {
        let seq = char_sequence(&sig, last);
        if a.json {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&seq).expect("serializable")
            )?;
        } else {
            writeln!(out, "{seq}")?;
        }
        return Ok(EXIT_OK);
    }
    let value = match a.l {
        Some(l) => chi_l(&sig, l),
        None => chi_gamma(&sig, &parse_gamma(&a.gamma)?)?,
    };
    if a.json {
        writeln!(out, "{}", json!({ "value": value }))?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(EXIT_OK)
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> CliResult<i32> {
    let orders = if a.orders.is_empty() {
        prime_avoiding_q(&[3], required_base_orders(a.levels))?
    } else {
        a.orders.clone()
    };
    let (p, q) = build_collision_pair(a.levels, a.g, &orders, a.equalize)?;
    let family = match a.n {
        Some(n) => expand_family(&p, &q, n, a.levels)?,
        None => vec![p, q],
    };
    let verification = verify_family(&family, a.levels);
    let report = ConstructReport {
        levels: a.levels,
        genus: a.g,
        orders,
        equalize: match a.equalize {
            EqualizeMode::Lcm => "lcm",
            EqualizeMode::Product => "product",
        },
        family,
        verification,
    };
    let text = serde_json::to_string(&report).expect("serializable");
    if !(report.verification.sequences_agree && report.verification.pairwise_distinct) {
        return Err(Failure {
            code: EXIT_VERIFICATION,
            message: format!("constructed family failed verification: {text}"),
        });
    }
    writeln!(out, "{text}")?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ConstructReport {
    #[serde(rename = "L")]
    levels: u32,
    genus: u64,
    orders: Vec<u64>,
    equalize: &'static str,
    family: Vec<OrbifoldSignature>,
    verification: FamilyVerification,
}

#[derive(Serialize)]
struct FamilyVerification {
    sequences: Vec<CharSequence>,
    sequences_agree: bool,
    pairwise_distinct: bool,
    /// Smallest l > L where some neighbours differ, looking a few levels out.
    first_disagreement: Option<u32>,
}

fn verify_family(family: &[OrbifoldSignature], levels: u32) -> FamilyVerification {
    let sequences: Vec<CharSequence> = family.iter().map(|s| char_sequence(s, levels)).collect();
    let sequences_agree = sequences.windows(2).all(|w| w[0] == w[1]);
    let pairwise_distinct = family
        .iter()
        .enumerate()
        .all(|(i, a)| family[i + 1..].iter().all(|b| a != b));
    let first_disagreement = (levels + 1..=levels + DISAGREEMENT_WINDOW).find(|&l| {
        family
            .windows(2)
            .any(|w| chi_l(&w[0], l) != chi_l(&w[1], l))
    });
    FamilyVerification {
        sequences,
        sequences_agree,
        pairwise_distinct,
        first_disagreement,
    }
}

fn reconstruct_cmd(a: ReconstructArgs, out: &mut dyn Write) -> CliResult<i32> {
    let seq: CharSequence = a.seq.parse()?;
    match reconstruct(&seq) {
        Ok(sig) => {
            if a.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&sig).expect("serializable")
                )?;
            } else {
                writeln!(out, "{sig}")?;
            }
            Ok(EXIT_OK)
        }
        Err(e @ ReconstructError::InsufficientData { .. })
        | Err(e @ ReconstructError::Invalid(_)) => Err(Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }),
    }
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let mut io_error = None;
    for_each_with_chi_es(&a.chi_es, |sig| {
        if io_error.is_some() {
            return;
        }
        let line = if a.json {
            serde_json::to_string(sig).expect("serializable")
        } else {
            sig.to_string()
        };
        if let Err(e) = writeln!(out, "{line}") {
            io_error = Some(e);
        }
    });
    match io_error {
        Some(e) => Err(e.into()),
        None => Ok(EXIT_OK),
    }
}

fn search(a: SearchArgs, out: &mut dyn Write) -> CliResult<i32> {
    let groups = search_collisions(a.g_max, a.k_max, a.m_max, a.levels);
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&groups).expect("serializable")
        )?;
    } else {
        for group in &groups {
            let members: Vec<String> = group.members.iter().map(ToString::to_string).collect();
            writeln!(out, "({}): {}", group.sequence, members.join(", "))?;
        }
    }
    Ok(EXIT_OK)
}

fn load_group(text: &str) -> Result<FiniteGroup> {
    if let Ok(g) = FiniteGroup::by_name(text) {
        return Ok(g);
    }
    let body = inline_or_file(text)?;
    let table: GroupTableJson =
        serde_json::from_str(&body).map_err(|e| Error::Parse(format!("group table: {e}")))?;
    FiniteGroup::from_json(&table)
}

fn quotient(a: QuotientArgs, out: &mut dyn Write) -> CliResult<i32> {
    let gamma = parse_gamma(&a.gamma)?;
    let (group, fpc) = if a.rotation.is_empty() {
        let group = load_group(a.group.as_deref().expect("clap enforces --group"))?;
        let body = inline_or_file(a.fpc.as_deref().expect("clap enforces --fpc"))?;
        let entries: Vec<FixedPointEntry> = serde_json::from_str(&body)
            .map_err(|e| Error::Parse(format!("fixed-point character: {e}")))?;
        let fpc = FixedPointCharacter::from_json(&group, &entries)?;
        (group, fpc)
    } else {
        let [n, r] = a.rotation[..] else {
            return Err(Error::InvalidArgument("--rotation takes n,r".into()).into());
        };
        let action = rotation_sphere_action(n, r)?;
        (action.group, action.fpc)
    };
    let budget = budget()?;
    let value = chi_gamma_quotient(&group, &fpc, &gamma, budget)?;
    if a.classes {
        for class in hom_classes(&gamma, &group, budget)? {
            writeln!(
                out,
                "class {:?}: size {}, centralizer {}, image {:?}",
                class.representative, class.class_size, class.centralizer_order, class.image
            )?;
        }
    }
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn mirrored(a: MirroredArgs, out: &mut dyn Write) -> CliResult<i32> {
    let mc = MirroredCylinder::new(a.b0, a.b1)?;
    let value = chi_gamma_mirrored(&mc, &parse_gamma(&a.gamma)?, budget()?)?;
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

/// One line of a `verify-paper` report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub const EXAMPLE_IDS: [&str; 6] = [
    "sameESCsameg",
    "sameLESC",
    "basecase",
    "noneffective",
    "nonorientable",
    "generaldim",
];

/// Recomputes a worked example. Unknown IDs are an input error.
pub fn verify_example(id: &str, budget: u64) -> Result<Vec<Check>> {
    match id {
        "sameESCsameg" => same_es_same_genus(),
        "sameLESC" => same_l_es(),
        "basecase" => base_case(),
        "noneffective" => noneffective(budget),
        "nonorientable" => nonorientable(budget),
        "generaldim" => general_dimension(),
        _ => Err(Error::InvalidArgument(format!(
            "unknown example {id:?}; expected one of {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let budget = budget()?;
    let ids: Vec<&str> = if a.example == "all" {
        EXAMPLE_IDS.to_vec()
    } else {
        vec![a.example.as_str()]
    };
    let mut all_passed = true;
    let mut report = Vec::new();
    for id in ids {
        let checks = verify_example(id, budget)?;
        all_passed &= checks.iter().all(|c| c.passed);
        if a.json {
            report.push(json!({ "example": id, "checks": checks }));
        } else {
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {id}: {} — {}", c.name, c.detail)?;
            }
        }
    }
    if a.json {
        writeln!(out, "{}", Value::Array(report))?;
    }
    Ok(if all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn sig_counts(g: u64, m: u64, count: u32) -> Result<OrbifoldSignature> {
    OrbifoldSignature::from_counts(g, [(m, count)])
}

fn same_es_same_genus() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for g in 0..=5u64 {
        let a = sig_counts(g, 3, 9)?;
        let b = sig_counts(g, 4, 8)?;
        let expected = Rational::from(-4 - 2 * g as i64);
        let (ea, eb) = (chi_es(&a), chi_es(&b));
        checks.push(Check::new(
            format!("genus {g}"),
            ea == expected && eb == expected && a != b,
            format!("χ_ES({a}) = {ea}, χ_ES({b}) = {eb}"),
        ));
    }
    let all = enumerate_by_chi_es(&Rational::from(-4));
    let a = sig_counts(0, 3, 9)?;
    let b = sig_counts(0, 4, 8)?;
    checks.push(Check::new(
        "enumeration at χ_ES = −4",
        all.contains(&a) && all.contains(&b),
        format!("{} signatures, both genus-0 examples present", all.len()),
    ));
    Ok(checks)
}

fn same_l_es() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (j, l) in [(3u64, 2u32), (3, 3), (5, 2), (7, 3)] {
        let family = same_chi_l_family(j, l, 5)?;
        let values: Vec<Rational> = family.iter().map(|s| chi_l(s, l)).collect();
        let distinct = family
            .iter()
            .enumerate()
            .all(|(i, a)| family[i + 1..].iter().all(|b| a != b));
        checks.push(Check::new(
            format!("j = {j}, l = {l}"),
            distinct && values.iter().all(|v| v == &Rational::from(2)),
            format!(
                "χ_({l}) = [{}]",
                values
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    Ok(checks)
}

fn base_case() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for g in 0..=3u64 {
        for q in 2..=10u64 {
            let (a, b) = base_pair(g, q)?;
            let (gi, qi) = (g as i64, q as i64);
            let expected = [
                Rational::new(1, qi) - Rational::from(1 + 2 * gi),
                Rational::from(2 - 2 * gi),
                Rational::from(1 - 2 * gi + 5 * qi + 2 * qi * qi),
            ];
            let agree = (0..=2u32).all(|l| {
                chi_l(&a, l) == expected[l as usize] && chi_l(&b, l) == expected[l as usize]
            });
            checks.push(Check::new(
                format!("g = {g}, q = {q}"),
                agree && a != b && chi_l(&a, 3) != chi_l(&b, 3),
                format!("{a} vs {b}: ({})", char_sequence(&a, 2)),
            ));
        }
    }
    Ok(checks)
}

fn gamma_battery() -> Vec<GammaDescriptor> {
    [
        "trivial", "Z", "Z^2", "Z^3", "Z/2", "Z/3", "Z/6", "Z+Z/2", "Z+Z/4", "F_2",
    ]
    .iter()
    .map(|s| s.parse().expect("battery entries parse"))
    .collect()
}

fn noneffective(budget: u64) -> Result<Vec<Check>> {
    let effective = rotation_sphere_action(6, 1)?;
    let noneffective = rotation_sphere_action(6, 2)?;
    let mut checks = vec![Check::new(
        "actions",
        effective.is_effective() && noneffective.kernel.len() == 2,
        format!(
            "kernel of the π/3 rotation {:?}, of the 2π/3 rotation {:?}",
            effective.kernel, noneffective.kernel
        ),
    )];
    let z = GammaDescriptor::free_abelian(1);
    let classes = hom_classes(&z, &effective.group, budget)?;
    let contributions: Vec<Rational> = classes
        .iter()
        .map(|c| {
            let chi = effective.fpc.get(&c.image).unwrap_or_default();
            Rational::new(chi, c.centralizer_order as i64)
        })
        .collect();
    let total: Rational = contributions.iter().cloned().sum();
    checks.push(Check::new(
        "Γ = Z sectors",
        classes.len() == 6
            && contributions.iter().all(|c| c == &Rational::new(1, 3))
            && total == Rational::from(2),
        format!("{} classes of χ_ES 1/3, total {total}", classes.len()),
    ));
    for gamma in gamma_battery() {
        let a = chi_gamma_quotient(&effective.group, &effective.fpc, &gamma, budget)?;
        let b = chi_gamma_quotient(&noneffective.group, &noneffective.fpc, &gamma, budget)?;
        checks.push(Check::new(
            format!("Γ = {gamma}"),
            a == b,
            format!("{a} vs {b}"),
        ));
    }
    Ok(checks)
}

fn nonorientable(budget: u64) -> Result<Vec<Check>> {
    let q = MirroredCylinder::new(vec![3, 5], vec![7, 11])?;
    let q2 = MirroredCylinder::new(vec![3, 7], vec![5, 11])?;
    let (a, b) = (chi_es_mirrored(&q), chi_es_mirrored(&q2));
    let expected = Rational::new(-1867, 1155);
    let mut checks = vec![
        Check::new(
            "χ_ES",
            a == expected && b == expected,
            format!("χ_ES({q}) = {a}, χ_ES({q2}) = {b}"),
        ),
        Check::new(
            "not diffeomorphic",
            !q.is_diffeomorphic(&q2),
            "boundary corner multisets differ",
        ),
    ];
    for s in ["trivial", "Z", "Z^2", "Z^3", "Z/2", "Z/3", "Z+Z/2"] {
        let gamma: GammaDescriptor = s.parse()?;
        let x = chi_gamma_mirrored(&q, &gamma, budget)?;
        let y = chi_gamma_mirrored(&q2, &gamma, budget)?;
        checks.push(Check::new(
            format!("Γ = {gamma}"),
            x == y,
            format!("{x} vs {y}"),
        ));
    }
    Ok(checks)
}

fn general_dimension() -> Result<Vec<Check>> {
    let sphere = 2;
    let mut checks = Vec::new();
    for levels in 2..=4u32 {
        let orders = prime_avoiding_q(&[3], required_base_orders(levels))?;
        let (a, b) = build_collision_pair(levels, 0, &orders, EqualizeMode::Lcm)?;
        let mut agree = a != b;
        for l in 0..=levels {
            let z = GammaDescriptor::free_abelian(l);
            agree &= chi_gamma_times_manifold(&a, &z, sphere)?
                == chi_gamma_times_manifold(&b, &z, sphere)?;
        }
        checks.push(Check::new(
            format!("L = {levels} pair × S²"),
            agree,
            format!("χ_(l) equal on the 4-dimensional products for l ≤ {levels}"),
        ));
    }
    let groups: Vec<GammaDescriptor> = ["Z+Z/4", "Z/3", "Z^2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let family = general_gamma_family(&groups, 3, 0, EqualizeMode::Lcm)?;
    let mut agree = true;
    for gamma in &groups {
        let values = family
            .iter()
            .map(|s| chi_gamma_times_manifold(s, gamma, sphere))
            .collect::<Result<Vec<_>>>()?;
        agree &= values.windows(2).all(|w| w[0] == w[1]);
    }
    checks.push(Check::new(
        "Γ ∈ {Z+Z/4, Z/3, Z^2} family × S²",
        agree && family.len() == 3,
        format!("{} distinct orbifolds", family.len()),
    ));
    Ok(checks)
}
