//! Command-line front end. Exit codes: 0 every check passed, 1 some check
//! failed, 2 usage or parse error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::builtin::builtin;
use crate::catalog::CatalogFile;
use crate::equations::{
    is_algebraically_closed_sample, is_verbally_closed, solve, solve_in, AlgebraicAudit,
    AuditBounds, EquationSystem, SolveOutcome, VerbalAudit, DEFAULT_SOLVE_BUDGET,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits, Subgroup};
use crate::hom::{are_isomorphic, SearchOutcome, DEFAULT_SEARCH_BUDGET};
use crate::perm::Permutation;
use crate::report::{CheckResult, Report};
use crate::retracts::{
    find_retraction_brute, find_retraction_lemma, point_embedding, variety_membership,
    VarietyOptions, VarietyVerdict,
};
use crate::structure::{is_nilpotent, monolith_from_lattice, normal_subgroups};
use crate::suite::{verify_paper, SuiteOptions};
use crate::sylow::{is_prime, sylow_subgroup};
use crate::words::{holds_law, parse_law, Convention, LawOptions, LawSet, DEFAULT_LAW_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// [a,b] = a^-1 b^-1 a b
    Standard,
    /// [a,b] = a b a^-1 b^-1
    Opposite,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Standard => Convention::Standard,
            ConventionArg::Opposite => Convention::Opposite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Lemma,
    Brute,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "fingroup", version, about = "Finite permutation groups: laws, equations, monoliths and retractions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Evaluation/search budget (ignored by verify-paper, which pins its own).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Catalog file with named groups; the shipped catalog is used otherwise.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, flags, normal subgroups, monolith and Sylow subgroups.
    Analyze { group: String },
    /// Law checks.
    Law {
        #[command(subcommand)]
        action: LawCommand,
    },
    /// Least solution of an equation system, e.g. "x^2 = <(1 2 3)>".
    Solve {
        group: String,
        system: String,
        /// Restrict unknowns to a subgroup (generator list or group expression).
        #[arg(long)]
        within: Option<String>,
    },
    /// Bounded verbal (and optionally algebraic) closedness audit of H in G.
    Closedness {
        group: String,
        /// Generator list "(1 2 3), (1 2)" in G, or a group placed on the first points.
        subgroup: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        max_vars: usize,
        /// Systems with coefficients in H for the algebraic sample (repeatable).
        #[arg(long = "system")]
        systems: Vec<String>,
    },
    /// Retraction of G onto H.
    Retract {
        group: String,
        subgroup: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Bounded membership of G in the variety generated by H.
    Variety {
        group: String,
        of: String,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        /// `s4`, `d`, `none`, or laws separated by `;`.
        #[arg(long, default_value = "s4")]
        laws: String,
    },
    /// Runs the full verification suite with pinned bounds.
    VerifyPaper {
        /// Commutator convention reported first; both are always run.
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        convention: ConventionArg,
        /// 2 adds the sweep over S4^2 up to conjugacy.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        star_k_max: u8,
        /// Include wall-clock timings (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum LawCommand {
    /// Checks each law (`w = 1`) on every assignment.
    Check {
        group: String,
        laws: Vec<String>,
        /// Named law set instead of explicit laws: s4, d, cubed.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        convention: ConventionArg,
        /// Scan every tuple instead of class representatives for the first variable.
        #[arg(long)]
        no_reduce: bool,
    },
}

/// Errors that come from malformed input rather than failed checks.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::UnknownGroup(_)
            | Error::InvalidPermutation(_)
            | Error::UnboundVariable(_)
            | Error::Catalog { .. }
            | Error::DegreeMismatch { .. }
            | Error::DegreeTooLarge(..)
            | Error::NotAnElement(_)
            | Error::NotASubgroup
            | Error::Invalid(_)
    )
}

struct Ctx {
    catalog: CatalogFile,
    budget: Option<u64>,
    limits: Limits,
}

impl Ctx {
    fn group(&self, spec: &str) -> Result<FiniteGroup> {
        self.catalog.resolve(spec, &self.limits)
    }

    /// `(1 2 3), (1 2)` is a generator list; anything else is a group
    /// expression placed on the first points.
    fn subgroup(&self, g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
        if spec.trim_start().starts_with('(') {
            let gens = spec
                .split(',')
                .map(|s| Permutation::parse(s.trim(), Some(g.degree())))
                .collect::<Result<Vec<_>>>()?;
            g.subgroup_from_perms(&gens)
        } else {
            point_embedding(g, &self.group(spec)?)
        }
    }
}

fn named_law_set(name: &str) -> Result<LawSet> {
    match name {
        "s4" => Ok(LawSet::s4_laws()),
        "d" => Ok(LawSet::dihedral_d()),
        "cubed" => Ok(LawSet::cubed_two_group_laws()),
        "none" => Ok(LawSet::new("none", vec![])),
        other => {
            let laws = other
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(parse_law)
                .collect::<Result<Vec<_>>>()?;
            Ok(LawSet::new("custom", laws))
        }
    }
}

fn gens_text(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    g.minimal_generators(s).into_iter().map(|x| g.element(x).to_string()).collect()
}

/// Names a small group when it matches a builtin of the same order.
fn identify(g: &FiniteGroup) -> Option<String> {
    let n = g.order();
    let mut names = vec![format!("C{n}")];
    names.extend(
        ["V4", "S3", "Dih(4)", "Q8", "A4", "S4", "A5", "S5", "A6", "S6"]
            .iter()
            .map(|s| s.to_string()),
    );
    names.into_iter().find_map(|name| {
        let h = builtin(&name).ok()?;
        (h.order() == n && are_isomorphic(g, &h).is_some()).then_some(name)
    })
}

fn analyze(ctx: &Ctx, spec: &str) -> Result<Report> {
    let g = ctx.group(spec)?;
    let normals = normal_subgroups(&g);
    let mono = monolith_from_lattice(&g, &normals);
    let nilpotent = is_nilpotent(&g);
    let simple = normals.len() == 2;
    let sylow: Vec<_> = (2..=g.order())
        .filter(|&p| is_prime(p) && g.order() % p == 0)
        .map(|p| {
            let s = sylow_subgroup(&g, p);
            json!({ "p": p, "order": s.order(), "generators": gens_text(&g, &s) })
        })
        .collect();
    let mono_name = if mono.is_monolithic {
        let mg = g.subgroup_as_group(&mono.monolith)?;
        if mono.monolith.order() == g.order() {
            Some("the whole group".to_string())
        } else {
            identify(&mg)
        }
    } else {
        None
    };
    let summary = format!(
        "order {}, {}{}{}",
        g.order(),
        if g.is_abelian() { "abelian" } else if nilpotent { "nilpotent" } else { "not nilpotent" },
        if simple { ", simple" } else { "" },
        match (&mono_name, mono.is_monolithic) {
            (_, false) => ", not monolithic".to_string(),
            (Some(n), true) => format!(", monolith {n} of order {}", mono.monolith.order()),
            (None, true) => format!(", monolith of order {}", mono.monolith.order()),
        }
    );
    let details = json!({
        "group": g.label(),
        "degree": g.degree(),
        "order": g.order(),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "abelian": g.is_abelian(),
        "nilpotent": nilpotent,
        "simple": simple,
        "exponent": g.exponent(),
        "class_sizes": g.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(),
        "normal_subgroups": normals.iter().map(|n| json!({ "order": n.order(), "generators": gens_text(&g, n) })).collect::<Vec<_>>(),
        "monolith": {
            "monolithic": mono.is_monolithic,
            "order": mono.monolith.order(),
            "abelian": mono.monolith_abelian,
            "type": mono_name,
            "generators": gens_text(&g, &mono.monolith),
        },
        "sylow": sylow,
    });
    let mut r = Report::new("analyze");
    r.push(CheckResult::new("analyze", true, summary, details));
    Ok(r)
}

fn law_check(
    ctx: &Ctx,
    spec: &str,
    laws: &[String],
    set: Option<&str>,
    convention: Convention,
    reduce: bool,
) -> Result<Report> {
    let g = ctx.group(spec)?;
    let list = match set {
        Some(name) => named_law_set(name)?.laws,
        None => laws.iter().map(|l| parse_law(l)).collect::<Result<Vec<_>>>()?,
    };
    if list.is_empty() {
        return Err(Error::Invalid("no laws given".into()));
    }
    let opts = LawOptions {
        budget: ctx.budget.unwrap_or(DEFAULT_LAW_BUDGET),
        convention,
        reduce,
    };
    let mut r = Report::new("law check");
    for law in list {
        let c = holds_law(&g, &law, &opts)?;
        let witness = c.counterexample.as_ref().map(|a| {
            a.iter()
                .map(|(v, &x)| format!("{v} = {}", g.element(x)))
                .collect::<Vec<_>>()
                .join(", ")
        });
        let summary = match &witness {
            None => format!("holds in {} ({} assignments)", g.label(), c.assignments),
            Some(w) => format!("fails in {} at {w}", g.label()),
        };
        r.push(CheckResult::new(
            &law.to_string(),
            c.holds,
            summary,
            json!({
                "holds": c.holds,
                "assignments": c.assignments,
                "evaluations": c.evaluations,
                "counterexample": witness,
                "convention": convention,
            }),
        ));
    }
    Ok(r)
}

fn solve_cmd(ctx: &Ctx, spec: &str, system: &str, within: Option<&str>) -> Result<Report> {
    let g = ctx.group(spec)?;
    let sys = EquationSystem::parse(system)?;
    let budget = ctx.budget.unwrap_or(DEFAULT_SOLVE_BUDGET);
    let out = match within {
        Some(h) => solve_in(&sys, &g, &ctx.subgroup(&g, h)?, budget)?,
        None => solve(&sys, &g, budget)?,
    };
    let (passed, summary, details) = match &out {
        SolveOutcome::Solution(a) => {
            let shown: Vec<String> = a.iter().map(|(v, &x)| format!("{v} = {}", g.element(x))).collect();
            (true, shown.join(", "), json!({ "outcome": "solution", "solution": shown }))
        }
        SolveOutcome::NoSolution => (false, "no solution".to_string(), json!({ "outcome": "no_solution" })),
        SolveOutcome::Exhausted(b) => (
            false,
            format!("budget of {b} tuples exhausted"),
            json!({ "outcome": "exhausted", "budget": b }),
        ),
    };
    let mut r = Report::new("solve");
    r.push(CheckResult::new(&sys.to_string(), passed, summary, details));
    Ok(r)
}

fn closedness(
    ctx: &Ctx,
    spec: &str,
    sub: &str,
    max_len: usize,
    max_vars: usize,
    systems: &[String],
) -> Result<Report> {
    let g = ctx.group(spec)?;
    let h = ctx.subgroup(&g, sub)?;
    let bounds = AuditBounds {
        max_len,
        max_vars,
        budget: ctx.budget.unwrap_or(DEFAULT_SOLVE_BUDGET),
    };
    let mut r = Report::new("closedness");
    let (passed, summary, details) = match is_verbally_closed(&g, &h, &bounds)? {
        VerbalAudit::ClosedWithinBounds { words_checked } => (
            true,
            format!("no counterexample among {words_checked} words (L = {max_len}, n = {max_vars})"),
            json!({ "outcome": "closed_within_bounds", "words_checked": words_checked }),
        ),
        VerbalAudit::Counterexample { word, target, solution_in_g } => {
            let sol: Vec<String> = solution_in_g.iter().map(|(v, &x)| format!("{v} = {}", g.element(x))).collect();
            (
                false,
                format!("{word} = {} is solvable in G but not in H", g.element(target)),
                json!({
                    "outcome": "counterexample",
                    "word": word.to_string(),
                    "target": g.element(target).to_string(),
                    "solution_in_G": sol,
                }),
            )
        }
        VerbalAudit::Exhausted { words_checked, budget } => (
            false,
            format!("budget {budget} exhausted after {words_checked} words"),
            json!({ "outcome": "exhausted", "words_checked": words_checked }),
        ),
    };
    r.push(CheckResult::new("verbal", passed, summary, details));
    if !systems.is_empty() {
        let parsed = systems.iter().map(|s| EquationSystem::parse(s)).collect::<Result<Vec<_>>>()?;
        let out = is_algebraically_closed_sample(&g, &h, &parsed, bounds.budget)?;
        let (passed, summary) = match &out {
            AlgebraicAudit::ClosedOnSample { systems_checked } => {
                (true, format!("all {systems_checked} systems solvable in G are solvable in H"))
            }
            AlgebraicAudit::Counterexample { index, .. } => {
                (false, format!("system `{}` is solvable in G but not in H", parsed[*index]))
            }
            AlgebraicAudit::Exhausted { index, budget } => {
                (false, format!("budget {budget} exhausted on system {index}"))
            }
        };
        r.push(CheckResult::new("algebraic_sample", passed, summary, json!({ "outcome": format!("{out:?}") })));
    }
    Ok(r)
}

fn retract(ctx: &Ctx, spec: &str, sub: &str, method: MethodArg) -> Result<Report> {
    let g = ctx.group(spec)?;
    let h = ctx.subgroup(&g, sub)?;
    let mut r = Report::new("retract");
    if matches!(method, MethodArg::Lemma | MethodArg::Both) {
        let check = match find_retraction_lemma(&g, &h) {
            Ok(cert) => {
                let v = cert.verify(&g, &h);
                CheckResult::new(
                    "lemma",
                    v.all(),
                    format!("retraction found, kernel order {}", cert.kernel.order()),
                    json!({ "kernel_order": cert.kernel.order(), "kernel_generators": gens_text(&g, &cert.kernel), "checks": v }),
                )
            }
            Err(e @ (Error::NoRetraction(_) | Error::NotMonolithic)) => {
                CheckResult::new("lemma", false, e.to_string(), json!(null))
            }
            Err(e) => return Err(e),
        };
        r.push(check);
    }
    if matches!(method, MethodArg::Brute | MethodArg::Both) {
        let budget = ctx.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
        let check = match find_retraction_brute(&g, &h, budget)? {
            SearchOutcome::Found(cert) => {
                let v = cert.verify(&g, &h);
                CheckResult::new(
                    "exhaustive",
                    v.all(),
                    format!("retraction found, kernel order {}", cert.kernel.order()),
                    json!({ "kernel_order": cert.kernel.order(), "checks": v }),
                )
            }
            SearchOutcome::Absent => CheckResult::new("exhaustive", false, "no retraction exists", json!(null)),
            SearchOutcome::Exhausted(b) => {
                CheckResult::new("exhaustive", false, format!("budget {b} exhausted"), json!(null))
            }
        };
        r.push(check);
    }
    Ok(r)
}

fn variety(ctx: &Ctx, spec: &str, of: &str, k_max: usize, laws: &str) -> Result<Report> {
    let g = ctx.group(spec)?;
    let h = ctx.group(of)?;
    let mut opts = VarietyOptions {
        k_max,
        ..VarietyOptions::default()
    };
    if let Some(b) = ctx.budget {
        opts.budget = b;
        opts.law_options.budget = b;
    }
    let cert = variety_membership(&g, &h, &named_law_set(laws)?, &opts)?;
    let summary = match (cert.verdict, &cert.member, &cert.non_member) {
        (VarietyVerdict::Member, Some(c), _) => format!(
            "member: section S/T of {}^{} with |S| = {}, |T| = {}",
            h.label(),
            c.k,
            c.s_order,
            c.t_order
        ),
        (VarietyVerdict::NonMember, _, Some(w)) => format!("non-member: {} fails", w.law),
        _ => format!("unknown within k <= {k_max}"),
    };
    let details = json!({
        "verdict": cert.verdict,
        "k": cert.member.as_ref().map(|c| c.k),
        "s_generators": cert.member.as_ref().map(|c| c.s_generators.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        "g_images": cert.member.as_ref().map(|c| c.g_images.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        "failing_law": cert.non_member.as_ref().map(|w| w.law.to_string()),
        "witness": cert.non_member.as_ref().map(|w| w.assignment.iter().map(|(v, p)| format!("{v} = {p}")).collect::<Vec<_>>()),
        "skipped_laws": cert.skipped_laws.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    });
    let mut r = Report::new("variety");
    r.push(CheckResult::new("membership", cert.verdict == VarietyVerdict::Member, summary, details));
    Ok(r)
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Report> {
    match &cli.command {
        Command::Analyze { group } => analyze(ctx, group),
        Command::Law {
            action: LawCommand::Check { group, laws, set, convention, no_reduce },
        } => law_check(ctx, group, laws, set.as_deref(), (*convention).into(), !no_reduce),
        Command::Solve { group, system, within } => solve_cmd(ctx, group, system, within.as_deref()),
        Command::Closedness { group, subgroup, max_len, max_vars, systems } => {
            closedness(ctx, group, subgroup, *max_len, *max_vars, systems)
        }
        Command::Retract { group, subgroup, method } => retract(ctx, group, subgroup, *method),
        Command::Variety { group, of, k_max, laws } => variety(ctx, group, of, *k_max, laws),
        Command::VerifyPaper { convention, star_k_max, timings } => Ok(verify_paper(&SuiteOptions {
            convention: (*convention).into(),
            star_k_max: *star_k_max as usize,
            timings: *timings,
        })),
    }
}

/// Runs a parsed command line; returns the rendered output and exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let fail = |e: Error| {
        let code = if is_usage_error(&e) { 2 } else { 1 };
        (format!("error: {e}\n"), code)
    };
    let catalog = match &cli.catalog {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match CatalogFile::parse(&text, &Limits::default()) {
                Ok(c) => c,
                Err(e) => return fail(e),
            },
            Err(e) => return (format!("error: cannot read {}: {e}\n", path.display()), 2),
        },
        None => CatalogFile::shipped(),
    };
    let ctx = Ctx {
        catalog,
        budget: cli.budget,
        limits: Limits::default(),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return (format!("error: {e}\n"), 2),
    };
    match pool.install(|| dispatch(cli, &ctx)) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            (text, report.exit_code())
        }
        Err(e) => fail(e),
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (out, code) = run(&cli);
    if out.starts_with("error:") {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    code
}
