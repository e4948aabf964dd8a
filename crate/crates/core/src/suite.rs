//! The `verify-paper` suite: every finite claim about S3, A4, S4 and the
//! larger symmetric and alternating groups, as one report with pinned
//! bounds.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::builtin::builtin;
use crate::catalog::CatalogFile;
use crate::equations::{
    is_algebraically_closed_sample, is_verbally_closed, solve, word_image, AlgebraicAudit,
    AuditBounds, EquationSystem, SolveOutcome, VerbalAudit,
};
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{are_isomorphic, SearchOutcome, DEFAULT_SEARCH_BUDGET};
use crate::perm::Permutation;
use crate::report::{CheckResult, Report};
use crate::retracts::{
    find_retraction_brute, find_retraction_lemma, point_embedding, strong_retract_audit,
    variety_membership, verify_star, AuditOptions, VarietyOptions, VarietyVerdict,
};
use crate::structure::{
    abelian_strong_retract_criterion, is_maximal_monolithic, kmo_hypotheses, monolith,
    verify_subnormal_series,
};
use crate::sylow::sylow_subgroup;
use crate::words::{
    holds_law, holds_law_set, parse_law, parse_word, Assignment, Convention, LawOptions, LawSet,
    Word,
};

/// Pinned bounds; only these knobs are exposed.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Convention listed first; both are always run.
    pub convention: Convention,
    /// 1: sweep S4 and S4 x S3. 2: additionally S4^2 up to conjugacy.
    pub star_k_max: usize,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            convention: Convention::Standard,
            star_k_max: 1,
            timings: false,
        }
    }
}

const STAR_CAP: usize = 100_000;
const ORACLE_SEED: u64 = 0x5eed;

fn g(spec: &str) -> Result<FiniteGroup> {
    builtin(spec)
}

fn show(g: &FiniteGroup, a: &Assignment) -> String {
    a.iter()
        .map(|(v, &x)| format!("{v} = {}", g.element(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn v4_in(s: &FiniteGroup) -> Result<Subgroup> {
    let v4 = g("V4")?;
    s.subgroup_from_perms(v4.elements())
}

/// Runs the full suite.
pub fn verify_paper(opts: &SuiteOptions) -> Report {
    let mut r = Report::new("verify-paper").with_timings(opts.timings);
    let other = match opts.convention {
        Convention::Standard => Convention::Opposite,
        Convention::Opposite => Convention::Standard,
    };
    for conv in [opts.convention, other] {
        let name = match conv {
            Convention::Standard => "s4_laws.standard_commutator",
            Convention::Opposite => "s4_laws.opposite_commutator",
        };
        r.run(name, || s4_laws(conv));
    }
    r.run("law_counterexamples", counterexamples);
    r.run("subnormal_series", subnormal_series);
    r.run("sylow_2_and_variety_d", sylow_and_d);
    r.run("two_group_law_sweep", two_group_sweep);
    r.run("monolith_table", monolith_table);
    r.run("kmo_hypotheses", kmo);
    r.run("abelian_criterion", abelian_criterion);
    r.run("maximal_monolithic", maximal_monolithic);
    let mut bases = vec![("star.S4", "S4", false), ("star.direct(S4,S3)", "direct(S4,S3)", false)];
    if opts.star_k_max >= 2 {
        bases.push(("star.power(S4,2)", "power(S4,2)", true));
    }
    for (name, base, dedup) in bases {
        r.run(name, || star(base, dedup));
    }
    r.run("retraction_certificates", retraction_certificates);
    r.run("strong_retract_audit.S4", audit_s4);
    r.run("verbal_closedness", verbal_closedness);
    r.run("algebraic_closedness_sample", algebraic_sample);
    r.run("variety_certificates", variety_certificates);
    r.run("solver_oracle", solver_oracle);
    r
}

fn s4_laws(conv: Convention) -> Result<CheckResult> {
    let s4 = g("S4")?;
    let lopts = LawOptions {
        convention: conv,
        ..LawOptions::default()
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for law in LawSet::s4_laws().laws {
        let c = holds_law(&s4, &law, &lopts)?;
        ok &= c.holds;
        rows.push(json!({
            "law": law.to_string(),
            "holds": c.holds,
            "assignments": c.assignments,
            "evaluations": c.evaluations,
        }));
    }
    // Recorded, not gating: the middle law without its outer cube.
    let literal = LawSet::s4_literal_middle_law();
    let lc = holds_law(&s4, &literal, &lopts)?;
    Ok(CheckResult::new(
        "",
        ok,
        if ok { "all three laws hold in S4" } else { "a law fails in S4" },
        json!({
            "convention": conv,
            "laws": rows,
            "literal_middle_law": {
                "law": literal.to_string(),
                "holds": lc.holds,
                "counterexample": lc.counterexample.as_ref().map(|a| show(&s4, a)),
            },
        }),
    ))
}

fn counterexamples() -> Result<CheckResult> {
    let s4 = g("S4")?;
    let c5 = g("C5")?;
    let sq = holds_law(&s4, &parse_law("x^2 = 1")?, &LawOptions::default())?;
    let w1 = sq.counterexample.clone().unwrap_or_default();
    let three_cycle = w1
        .get("x")
        .map(|&x| {
            let c = s4.element(x).cycles();
            c.len() == 1 && c[0].len() == 3
        })
        .unwrap_or(false);
    let twelve = holds_law(&c5, &parse_law("x^12 = 1")?, &LawOptions::default())?;
    let w2 = twelve.counterexample.clone().unwrap_or_default();
    let ok = !sq.holds && three_cycle && !twelve.holds;
    Ok(CheckResult::new(
        "",
        ok,
        format!("S4 fails x^2 at {}; C5 fails x^12 at {}", show(&s4, &w1), show(&c5, &w2)),
        json!({
            "s4_x2": { "holds": sq.holds, "witness": show(&s4, &w1), "witness_is_3_cycle": three_cycle },
            "c5_x12": { "holds": twelve.holds, "witness": show(&c5, &w2) },
        }),
    ))
}

fn subnormal_series() -> Result<CheckResult> {
    let s4 = g("S4")?;
    let chain = vec![
        s4.trivial_subgroup(),
        v4_in(&s4)?,
        s4.derived_subgroup(),
        s4.whole(),
    ];
    let factors = verify_subnormal_series(&s4, &chain)?;
    let exps: Vec<u64> = factors.iter().map(|f| f.exponent).collect();
    let ok = factors.iter().all(|f| f.abelian) && exps == [2, 3, 2];
    Ok(CheckResult::new(
        "",
        ok,
        format!("1 < V4 < A4 < S4 has factor exponents {exps:?}"),
        json!({ "factors": factors }),
    ))
}

fn sylow_and_d() -> Result<CheckResult> {
    let s4 = g("S4")?;
    let p = sylow_subgroup(&s4, 2);
    let pg = s4.subgroup_as_group(&p)?;
    let dih = g("Dih(4)")?;
    let iso = are_isomorphic(&pg, &dih).is_some();
    let d = LawSet::dihedral_d();
    let lo = LawOptions::default();
    let dih_d = holds_law_set(&dih, &d, &lo)?.holds;
    let q8_d = holds_law_set(&g("Q8")?, &d, &lo)?.holds;
    let ok = p.order() == 8 && iso && dih_d && q8_d;
    Ok(CheckResult::new(
        "",
        ok,
        format!("Sylow 2-subgroup of S4 has order {} and is {}isomorphic to Dih(4)", p.order(), if iso { "" } else { "not " }),
        json!({
            "sylow_order": p.order(),
            "isomorphic_to_dih4": iso,
            "dih4_in_d": dih_d,
            "q8_in_d": q8_d,
        }),
    ))
}

fn is_two_power(n: usize) -> bool {
    n.is_power_of_two() && n > 1
}

fn two_group_sweep() -> Result<CheckResult> {
    let catalog = CatalogFile::shipped();
    let lo = LawOptions::default();
    let cubed = LawSet::cubed_two_group_laws();
    let d = LawSet::dihedral_d();
    let mut rows = Vec::new();
    let mut ok = true;
    let mut saw_negative = false;
    for (entry, grp) in catalog.iter() {
        if !is_two_power(grp.order()) || grp.order() > 32 {
            continue;
        }
        let a = holds_law_set(grp, &cubed, &lo)?.holds;
        let b = holds_law_set(grp, &d, &lo)?.holds;
        let mut image = crate::elemset::ElemSet::empty(grp.order());
        for x in 0..grp.order() {
            image.insert(grp.pow(x, 3));
        }
        let cube_bijective = image.len() == grp.order();
        ok &= a == b && cube_bijective;
        if entry.name == "D16" {
            saw_negative = !a && !b;
        }
        rows.push(json!({
            "group": entry.name,
            "order": grp.order(),
            "cubed_laws": a,
            "d_laws": b,
            "cube_map_bijective": cube_bijective,
        }));
    }
    ok &= saw_negative;
    Ok(CheckResult::new(
        "",
        ok,
        format!("{} catalog 2-groups; law sets agree on each, D16 fails both", rows.len()),
        json!({ "groups": rows }),
    ))
}

fn monolith_table() -> Result<CheckResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    // (group, expected monolith description, expected order, abelian)
    for (name, expect, order, abelian) in [
        ("S3", "A3", 3, true),
        ("A4", "V4", 4, true),
        ("S4", "V4", 4, true),
        ("A5", "A5", 60, false),
        ("S5", "A5", 60, false),
        ("A6", "A6", 360, false),
        ("S6", "A6", 360, false),
    ] {
        let grp = g(name)?;
        let m = monolith(&grp);
        let matches = match expect {
            "V4" => m.monolith == v4_in(&grp)?,
            _ => m.monolith == grp.derived_subgroup(),
        };
        let row_ok = m.is_monolithic
            && m.monolith.order() == order
            && m.monolith_abelian == abelian
            && matches;
        ok &= row_ok;
        rows.push(json!({
            "group": name,
            "monolith": expect,
            "monolith_order": m.monolith.order(),
            "abelian": m.monolith_abelian,
            "ok": row_ok,
        }));
    }
    Ok(CheckResult::new(
        "",
        ok,
        "S3 -> A3, A4 and S4 -> V4 (abelian); S5, S6 -> A5, A6 and A5, A6 -> themselves (nonabelian)",
        json!({ "rows": rows }),
    ))
}

fn kmo() -> Result<CheckResult> {
    let s3 = g("S3")?;
    let a4 = g("A4")?;
    let s4 = g("S4")?;
    let r1 = kmo_hypotheses(&s3, &s3.derived_subgroup())?;
    let r2 = kmo_hypotheses(&a4, &a4.derived_subgroup())?;
    let r3 = kmo_hypotheses(&s4, &v4_in(&s4)?)?;
    let s4_ok = !r3.verdict
        && r3.c_is_normal.passed
        && r3.c_equals_centralizer.passed
        && r3.c_normally_indecomposable.passed
        && !r3.orders_coprime.passed
        && r3.orders_coprime.detail.contains("= 2");
    let ok = r1.verdict && r2.verdict && s4_ok;
    Ok(CheckResult::new(
        "",
        ok,
        format!("(S3,A3) {}, (A4,V4) {}, (S4,V4) fails only on coprimality: {}", r1.verdict, r2.verdict, r3.orders_coprime.detail),
        json!({ "S3_A3": r1, "A4_V4": r2, "S4_V4": r3 }),
    ))
}

fn abelian_criterion() -> Result<CheckResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    // Small symmetric and alternating groups are cyclic; C2 x C4 is a
    // negative control.
    for (name, expect) in [
        ("S1", true),
        ("S2", true),
        ("A1", true),
        ("A2", true),
        ("A3", true),
        ("C1", true),
        ("C2", true),
        ("direct(C2,C4)", false),
    ] {
        let grp = g(name)?;
        let c = abelian_strong_retract_criterion(&grp)?;
        let cyclic = c.invariant_factors.len() <= 1;
        let row_ok = c.holds == expect && (cyclic || !expect);
        ok &= row_ok;
        rows.push(json!({
            "group": name,
            "invariant_factors": c.invariant_factors,
            "cyclic": cyclic,
            "criterion": c.holds,
        }));
    }
    Ok(CheckResult::new(
        "",
        ok,
        "symmetric groups of degree <= 2 and alternating groups of degree <= 3 are cyclic and satisfy the criterion",
        json!({ "rows": rows }),
    ))
}

fn maximal_monolithic() -> Result<CheckResult> {
    let cands = vec![g("S3")?, g("A4")?, g("S4")?];
    let s4 = maximal_monolithic_row(&g("S4")?, &cands)?;
    let a4g = g("A4")?;
    let a4 = is_maximal_monolithic(&a4g, &cands, DEFAULT_SEARCH_BUDGET)?;
    let witness_ok = match &a4.violation {
        Some((i, phi)) => *i == 2 && phi.is_injective() && phi.image(&cands[2]) == cands[2].derived_subgroup(),
        None => false,
    };
    let ok = s4 && !a4.holds && witness_ok;
    Ok(CheckResult::new(
        "",
        ok,
        "S4 is maximal monolithic among {S3, A4, S4}; A4 is not (A4 -> S4 carries V4 into V4)",
        json!({
            "S4": s4,
            "A4": a4.holds,
            "A4_witness_target": a4.violation.as_ref().map(|(i, _)| cands[*i].label()),
            "A4_witness_is_inclusion": witness_ok,
        }),
    ))
}

fn maximal_monolithic_row(h: &FiniteGroup, cands: &[FiniteGroup]) -> Result<bool> {
    Ok(is_maximal_monolithic(h, cands, DEFAULT_SEARCH_BUDGET)?.holds)
}

fn star(base: &str, dedup: bool) -> Result<CheckResult> {
    let grp = g(base)?;
    let rep = verify_star(&grp, dedup, STAR_CAP)?;
    Ok(CheckResult::new(
        "",
        rep.passed(),
        format!(
            "{} subgroups{}, {} sections, {} non-nilpotent monolithic, {} outliers",
            rep.subgroups,
            if dedup { " up to conjugacy" } else { "" },
            rep.sections_examined,
            rep.non_nilpotent_monolithic,
            rep.outliers.len()
        ),
        serde_json::to_value(&rep).expect("serializes"),
    ))
}

fn retraction_certificates() -> Result<CheckResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (gs, hs) in [
        ("direct(S4,C3)", "S4"),
        ("direct(S4,V4)", "S4"),
        ("direct(S4,S3)", "S4"),
        ("direct(S3,C3)", "S3"),
    ] {
        let gg = g(gs)?;
        let h = point_embedding(&gg, &g(hs)?)?;
        let cert = find_retraction_lemma(&gg, &h)?;
        let check = cert.verify(&gg, &h);
        ok &= check.all();
        rows.push(json!({
            "G": gs,
            "H": hs,
            "kernel_order": cert.kernel.order(),
            "checks": check,
        }));
    }
    let mut absent = Vec::new();
    for (gs, which) in [("S3", "A3"), ("A4", "V4")] {
        let gg = g(gs)?;
        let h = gg.derived_subgroup();
        let out = find_retraction_brute(&gg, &h, DEFAULT_SEARCH_BUDGET)?;
        let is_absent = matches!(out, SearchOutcome::Absent);
        ok &= is_absent;
        absent.push(json!({ "G": gs, "H": which, "absent": is_absent }));
    }
    Ok(CheckResult::new(
        "",
        ok,
        "lemma certificates verify on all four pairs; no retraction of S3 onto A3 or A4 onto V4",
        json!({ "lemma": rows, "exhaustive": absent }),
    ))
}

fn audit_s4() -> Result<CheckResult> {
    let h = g("S4")?;
    let tests = ["direct(S4,C3)", "direct(S4,V4)", "direct(S4,S3)"]
        .iter()
        .map(|s| {
            let gg = g(s)?;
            let sub = point_embedding(&gg, &h)?;
            Ok((gg, sub))
        })
        .collect::<Result<Vec<_>>>()?;
    let opts = AuditOptions {
        variety: VarietyOptions {
            k_max: 2,
            ..VarietyOptions::default()
        },
        ..AuditOptions::default()
    };
    let entries = strong_retract_audit(&h, &tests, &LawSet::s4_laws(), &opts)?;
    let ok = entries.iter().all(|e| e.passed());
    Ok(CheckResult::new(
        "",
        ok,
        format!("{} test groups in var S4, retraction found for each (bounded evidence, not a proof)", entries.len()),
        json!({ "entries": entries }),
    ))
}

fn verbal_closedness() -> Result<CheckResult> {
    let bounds = AuditBounds::default();
    let s3 = g("S3")?;
    let a3 = s3.derived_subgroup();
    let neg = is_verbally_closed(&s3, &a3, &bounds)?;
    let comm = parse_word("[x,y]")?;
    let (neg_ok, neg_detail) = match &neg {
        VerbalAudit::Counterexample { word, target, solution_in_g } => {
            // The reported word and [x,y] have the same value set on S3.
            let same_image = word_image(word, &s3, u64::MAX)? == word_image(&comm, &s3, u64::MAX)?;
            let direct = EquationSystem::single(comm.clone(), crate::equations::constant(s3.element(*target)));
            let in_g = solve(&direct, &s3, u64::MAX)?.is_solution();
            let in_h = crate::equations::solve_in(&direct, &s3, &a3, u64::MAX)?.is_solution();
            let t = s3.element(*target).to_string();
            (
                t == "(1 2 3)" && same_image && in_g && !in_h,
                json!({
                    "word": word.to_string(),
                    "target": t,
                    "solution_in_G": show(&s3, solution_in_g),
                    "same_values_as_commutator": same_image,
                    "commutator_equation": format!("[x,y] = {t}"),
                    "commutator_solvable_in_G": in_g,
                    "commutator_solvable_in_H": in_h,
                }),
            )
        }
        other => (false, json!({ "outcome": format!("{other:?}") })),
    };
    let s4v4 = g("direct(S4,V4)")?;
    let h = point_embedding(&s4v4, &g("S4")?)?;
    let pos = is_verbally_closed(&s4v4, &h, &bounds)?;
    let (pos_ok, words) = match pos {
        VerbalAudit::ClosedWithinBounds { words_checked } => (true, words_checked),
        _ => (false, 0),
    };
    Ok(CheckResult::new(
        "",
        neg_ok && pos_ok,
        "A3 in S3 is not verbally closed ([x,y] = (1 2 3)); S4 x 1 in S4 x V4 passes at L = 4, n = 2",
        json!({
            "bounds": { "max_len": bounds.max_len, "max_vars": bounds.max_vars },
            "A3_in_S3": neg_detail,
            "S4_in_S4xV4": { "closed_within_bounds": pos_ok, "words_checked": words },
        }),
    ))
}

fn algebraic_sample() -> Result<CheckResult> {
    let s3 = g("S3")?;
    let a3 = s3.derived_subgroup();
    let neg = is_algebraically_closed_sample(
        &s3,
        &a3,
        &[EquationSystem::parse("[x,y] <(1 3 2)> = 1")?],
        u64::MAX,
    )?;
    let s4v4 = g("direct(S4,V4)")?;
    let h = point_embedding(&s4v4, &g("S4")?)?;
    // x^-1 a x = b for every conjugate pair a, b in H.
    let mut systems = Vec::new();
    let members = h.member_vec();
    for &a in &members {
        for &c in &members {
            let b = s4v4.conj(a, c);
            if a <= b {
                let text = format!(
                    "x^-1 <{}> x = <{}>",
                    s4v4.element(a),
                    s4v4.element(b)
                );
                let sys = EquationSystem::parse(&text)?;
                if !systems.contains(&sys) {
                    systems.push(sys);
                }
            }
        }
    }
    let pos = is_algebraically_closed_sample(&s4v4, &h, &systems, u64::MAX)?;
    let ok = matches!(neg, AlgebraicAudit::Counterexample { index: 0, .. })
        && matches!(pos, AlgebraicAudit::ClosedOnSample { .. });
    Ok(CheckResult::new(
        "",
        ok,
        format!("A3 in S3 fails on [x,y](1 3 2) = 1; S4 x 1 in S4 x V4 passes {} conjugacy systems", systems.len()),
        json!({ "A3_in_S3": format!("{neg:?}"), "S4_in_S4xV4": format!("{pos:?}") }),
    ))
}

fn variety_certificates() -> Result<CheckResult> {
    let s4 = g("S4")?;
    let laws = LawSet::s4_laws();
    let opts = VarietyOptions {
        k_max: 2,
        ..VarietyOptions::default()
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, expect, max_k) in [
        ("S3", VarietyVerdict::Member, 1),
        ("C5", VarietyVerdict::NonMember, 0),
        ("Q8", VarietyVerdict::Member, 2),
    ] {
        let grp = g(name)?;
        let cert = variety_membership(&grp, &s4, &laws, &opts)?;
        let verified = match (&cert.member, &cert.non_member) {
            (Some(sec), _) => sec.k <= max_k && sec.verify(&grp, &s4)?,
            (_, Some(w)) => {
                w.law.to_string() == "x^12 = 1"
                    && holds_law(&s4, &w.law, &LawOptions::default())?.holds
                    && !holds_law(&grp, &w.law, &LawOptions::default())?.holds
            }
            _ => false,
        };
        let row_ok = cert.verdict == expect && verified;
        ok &= row_ok;
        rows.push(json!({
            "group": name,
            "verdict": cert.verdict,
            "k": cert.member.as_ref().map(|c| c.k),
            "section_orders": cert.member.as_ref().map(|c| [c.s_order, c.t_order]),
            "failing_law": cert.non_member.as_ref().map(|w| w.law.to_string()),
            "witness": cert.non_member.as_ref().map(|w| w.assignment.iter().map(|(v, p)| format!("{v} = {p}")).collect::<Vec<_>>().join(", ")),
            "certificate_verified": verified,
        }));
    }
    Ok(CheckResult::new(
        "",
        ok,
        "S3 in var S4 (k = 1), C5 not in var S4 (x^12 = 1), Q8 in var S4 (k = 2)",
        json!({ "rows": rows }),
    ))
}

// Independent evaluation on permutations, for the solver cross-check.
fn naive_eval(w: &Word, vals: &[(String, Permutation)], degree: usize) -> Permutation {
    match w {
        Word::Var(v) => vals
            .iter()
            .find(|(n, _)| n == v)
            .map(|(_, p)| p.clone())
            .expect("bound"),
        Word::Const(c) => Permutation::from_cycles(degree, c).expect("valid constant"),
        Word::Product(ps) => ps
            .iter()
            .fold(Permutation::identity(degree), |acc, p| acc.compose(&naive_eval(p, vals, degree))),
        Word::Power(b, e) => {
            let base = naive_eval(b, vals, degree);
            let step = if *e < 0 { base.inverse() } else { base };
            (0..e.unsigned_abs()).fold(Permutation::identity(degree), |acc, _| acc.compose(&step))
        }
        Word::Commutator(ps) => {
            let mut acc = naive_eval(&ps[0], vals, degree);
            for p in &ps[1..] {
                let b = naive_eval(p, vals, degree);
                acc = acc.inverse().compose(&b.inverse()).compose(&acc).compose(&b);
            }
            acc
        }
    }
}

fn naive_solve(sys: &EquationSystem, grp: &FiniteGroup) -> Option<Vec<Permutation>> {
    let n = sys.variables.len() as u32;
    let order = grp.order();
    'tuples: for t in 0..order.pow(n) {
        let mut vals = Vec::new();
        let mut rest = t;
        for (i, v) in sys.variables.iter().enumerate() {
            let place = order.pow(n - 1 - i as u32);
            vals.push((v.clone(), grp.element(rest / place).clone()));
            rest %= place;
        }
        for (l, r) in &sys.equations {
            if naive_eval(l, &vals, grp.degree()) != naive_eval(r, &vals, grp.degree()) {
                continue 'tuples;
            }
        }
        return Some(vals.into_iter().map(|(_, p)| p).collect());
    }
    None
}

fn random_word(rng: &mut ChaCha8Rng, vars: &[&str], depth: u32) -> Word {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        let v = Word::var(vars.choose(rng).expect("nonempty"));
        return if rng.gen_bool(0.5) { v } else { v.pow(rng.gen_range(-3..=4)) };
    }
    match rng.gen_range(0..3) {
        0 => Word::product((0..rng.gen_range(2..=3)).map(|_| random_word(rng, vars, depth - 1)).collect()),
        1 => random_word(rng, vars, depth - 1).pow(rng.gen_range(-3..=3)),
        _ => Word::comm(vec![random_word(rng, vars, depth - 1), random_word(rng, vars, depth - 1)]),
    }
}

fn random_rhs(rng: &mut ChaCha8Rng, lhs: &Word, grp: &FiniteGroup) -> Word {
    if rng.gen_bool(0.5) {
        // A value the left side actually takes, so the equation is solvable.
        let vals: Vec<(String, Permutation)> = lhs
            .variables()
            .into_iter()
            .map(|v| (v, grp.element(rng.gen_range(0..grp.order())).clone()))
            .collect();
        crate::equations::constant(&naive_eval(lhs, &vals, grp.degree()))
    } else {
        crate::equations::constant(grp.element(rng.gen_range(0..grp.order())))
    }
}

fn solver_oracle() -> Result<CheckResult> {
    let groups = ["S3", "C6", "V4", "Dih(4)", "Q8", "A4", "S4", "direct(S3,C2)"]
        .iter()
        .map(|s| g(s))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut agree = 0;
    let mut mismatches = Vec::new();
    let mut solvable = 0;
    let total_single = 24;
    let total_systems = 6;
    for i in 0..total_single + total_systems {
        let grp = &groups[rng.gen_range(0..groups.len())];
        let vars: &[&str] = if rng.gen_bool(0.5) { &["x"] } else { &["x", "y"] };
        let count = if i < total_single { 1 } else { rng.gen_range(2..=3) };
        let eqs = (0..count)
            .map(|_| {
                let lhs = random_word(&mut rng, vars, 3);
                let rhs = random_rhs(&mut rng, &lhs, grp);
                (lhs, rhs)
            })
            .collect();
        let sys = EquationSystem::new(eqs);
        let fast = match solve(&sys, grp, u64::MAX)? {
            SolveOutcome::Solution(a) => Some(a.values().map(|&x| grp.element(x).clone()).collect::<Vec<_>>()),
            _ => None,
        };
        let slow = naive_solve(&sys, grp);
        solvable += slow.is_some() as usize;
        if fast == slow {
            agree += 1;
        } else {
            mismatches.push(format!("{} over {}", sys, grp.label()));
        }
    }
    let total = total_single + total_systems;
    Ok(CheckResult::new(
        "",
        mismatches.is_empty(),
        format!("{agree}/{total} randomized equations and systems agree with the naive enumerator ({solvable} solvable)"),
        json!({
            "seed": ORACLE_SEED,
            "single_equations": total_single,
            "systems": total_systems,
            "agree": agree,
            "mismatches": mismatches,
        }),
    ))
}
