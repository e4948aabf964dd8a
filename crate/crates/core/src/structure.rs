//! Normal structure: the normal lattice, monoliths, nilpotency, subnormal
//! series, the self-centralizing-subgroup criterion, abelian strong
//! retracts, and maximal monolithic groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{for_each_monomorphism, Homomorphism, SearchEnd};
use crate::perm::{gcd, lcm};
use crate::quotient::quotient;

/// All normal subgroups, sorted by order and then by member list.
///
/// Every normal subgroup is the join of the normal closures of the classes
/// it contains, so closing the class closures under joins is complete.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, all: &mut Vec<Subgroup>| {
        if seen.insert(s.set().clone()) {
            all.push(s);
            true
        } else {
            false
        }
    };
    push(g.trivial_subgroup(), &mut all);
    let atoms: Vec<Subgroup> = g
        .conjugacy_classes()
        .iter()
        .skip(1)
        .map(|class| g.closure(class))
        .collect();
    for a in &atoms {
        push(a.clone(), &mut all);
    }
    let mut frontier: Vec<Subgroup> = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for a in &atoms {
                if a.is_subgroup_of(f) {
                    continue;
                }
                let j = g.extend(f, &a.member_vec());
                if push(j.clone(), &mut all) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}

#[derive(Debug, Clone)]
pub struct MonolithReport {
    pub minimal_normals: Vec<Subgroup>,
    pub monolith: Subgroup,
    pub is_monolithic: bool,
    pub monolith_abelian: bool,
}

/// Monolith of `g`. The trivial group is reported with a trivial monolith
/// and as not monolithic.
pub fn monolith(g: &FiniteGroup) -> MonolithReport {
    let normals = normal_subgroups(g);
    monolith_from_lattice(g, &normals)
}

pub fn monolith_from_lattice(g: &FiniteGroup, normals: &[Subgroup]) -> MonolithReport {
    let nontrivial: Vec<&Subgroup> = normals.iter().filter(|n| !n.is_trivial()).collect();
    let minimal_normals: Vec<Subgroup> = nontrivial
        .iter()
        .filter(|n| {
            !nontrivial
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .map(|n| (*n).clone())
        .collect();
    let mut set = ElemSet::full(g.order());
    for n in &nontrivial {
        set = set.intersection(n.set());
    }
    if nontrivial.is_empty() {
        set = ElemSet::from_indices(g.order(), [0]);
    }
    let monolith = Subgroup::new(g, set);
    let monolith_abelian = {
        let m = monolith.member_vec();
        m.iter()
            .all(|&a| m.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    };
    MonolithReport {
        is_monolithic: !monolith.is_trivial(),
        minimal_normals,
        monolith,
        monolith_abelian,
    }
}

/// `γ₁ = G, γ_{k+1} = [G, γ_k]` until it stabilizes.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = g.commutator_subgroup(&whole, last).expect("same parent");
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    lower_central_series(g)
        .last()
        .is_some_and(Subgroup::is_trivial)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorInfo {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
}

/// Checks that each term is normal in the next and describes the factors.
pub fn verify_subnormal_series(g: &FiniteGroup, chain: &[Subgroup]) -> Result<Vec<FactorInfo>> {
    for s in chain {
        g.check(s)?;
    }
    let mut out = Vec::new();
    for (i, pair) in chain.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotAscending(i));
        }
        let ug = g.subgroup_as_group(upper)?;
        let members = upper.member_vec();
        let inner: Vec<usize> = lower
            .members()
            .map(|x| members.binary_search(&x).expect("contained"))
            .collect();
        let inner = ug.subgroup_from_set(&inner)?;
        if !ug.is_normal(&inner)? {
            return Err(Error::NotNormalAt(i));
        }
        let (q, _) = quotient(&ug, &inner)?;
        out.push(FactorInfo {
            order: q.order(),
            abelian: q.is_abelian(),
            exponent: q.exponent(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check {
            passed,
            detail: detail.into(),
        }
    }
}

/// Hypotheses on a normal subgroup `C` of `H`: self-centralizing, not a
/// direct product of two nontrivial subgroups normal in `H`, and of order
/// coprime to its index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KmoReport {
    pub c_order: usize,
    pub c_is_normal: Check,
    pub c_equals_centralizer: Check,
    pub c_normally_indecomposable: Check,
    pub orders_coprime: Check,
    pub verdict: bool,
}

pub fn kmo_hypotheses(h: &FiniteGroup, c: &Subgroup) -> Result<KmoReport> {
    h.check(c)?;
    let normal = h.is_normal(c)?;
    let c_is_normal = Check::new(normal, if normal { "C is normal" } else { "C is not normal" });
    if !normal {
        let skipped = || Check::new(false, "skipped: C is not normal");
        return Ok(KmoReport {
            c_order: c.order(),
            c_is_normal,
            c_equals_centralizer: skipped(),
            c_normally_indecomposable: skipped(),
            orders_coprime: skipped(),
            verdict: false,
        });
    }
    let cent = h.centralizer(c)?;
    let c_equals_centralizer = Check::new(
        cent == *c,
        format!("|C_H(C)| = {}, |C| = {}", cent.order(), c.order()),
    );

    let inside: Vec<Subgroup> = normal_subgroups(h)
        .into_iter()
        .filter(|n| !n.is_trivial() && n.order() < c.order() && n.is_subgroup_of(c))
        .collect();
    let mut decomposition = None;
    'outer: for (i, a) in inside.iter().enumerate() {
        for b in &inside[i + 1..] {
            if a.order() * b.order() != c.order() || a.set().intersection_len(b.set()) != 1 {
                continue;
            }
            let commute = a
                .members()
                .all(|x| b.members().all(|y| h.mul(x, y) == h.mul(y, x)));
            if commute {
                decomposition = Some((a.order(), b.order()));
                break 'outer;
            }
        }
    }
    let c_normally_indecomposable = match decomposition {
        None => Check::new(
            true,
            format!("{} proper nontrivial H-normal subgroups of C, no direct decomposition", inside.len()),
        ),
        Some((a, b)) => Check::new(false, format!("C = A x B with |A| = {a}, |B| = {b}")),
    };
    let index = h.order() / c.order();
    let d = gcd(c.order() as u64, index as u64);
    let orders_coprime = Check::new(d == 1, format!("gcd({}, {index}) = {d}", c.order()));
    let verdict = c_equals_centralizer.passed && c_normally_indecomposable.passed && orders_coprime.passed;
    Ok(KmoReport {
        c_order: c.order(),
        c_is_normal,
        c_equals_centralizer,
        c_normally_indecomposable,
        orders_coprime,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianCriterion {
    /// Orders of the cyclic factors of prime-power order.
    pub primary_factors: Vec<u64>,
    /// The same group regrouped into cyclic factors `d_1 | d_2 | ...`.
    pub invariant_factors: Vec<u64>,
    /// Some decomposition into cyclic factors has pairwise equal-or-coprime
    /// orders, i.e. every primary component is homocyclic.
    pub holds: bool,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// For finite abelian `g`: decomposes into cyclic factors and checks that
/// they can be chosen with pairwise equal-or-coprime orders.
pub fn abelian_strong_retract_criterion(g: &FiniteGroup) -> Result<AbelianCriterion> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut primary = Vec::new();
    let mut by_prime: Vec<Vec<u32>> = Vec::new();
    for p in prime_factors(g.order() as u64) {
        // log_p |{x : x^(p^k) = 1}| = Σ min(k, e_i)
        let mut logs = vec![0u32];
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = (0..g.order())
                .filter(|&x| pk % g.element_order(x) == 0)
                .count() as u64;
            let mut l = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                l += 1;
            }
            if l == *logs.last().expect("nonempty") {
                break;
            }
            logs.push(l);
            k += 1;
        }
        // at_least[k-1] = #{i : e_i >= k}
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for (k, &n) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(n - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable();
        primary.extend(exps.iter().map(|&e| p.pow(e)));
        by_prime.push(exps.into_iter().map(|e| p.pow(e) as u32).collect());
    }
    let holds = by_prime.iter().all(|f| f.windows(2).all(|w| w[0] == w[1]));
    let rank = by_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut invariant = vec![1u64; rank];
    for f in &by_prime {
        // largest factors go to the last slots
        for (slot, &q) in invariant.iter_mut().rev().zip(f.iter().rev()) {
            *slot = lcm(*slot, q as u64);
        }
    }
    Ok(AbelianCriterion {
        primary_factors: primary,
        invariant_factors: invariant,
        holds,
    })
}

#[derive(Debug, Clone)]
pub struct MaximalMonolithic {
    pub holds: bool,
    /// Candidate index and an embedding carrying the monolith of H into the
    /// monolith of that candidate.
    pub violation: Option<(usize, Homomorphism)>,
    /// Candidates skipped because they are not monolithic.
    pub skipped: Vec<usize>,
}

/// Whether `h` fails to embed into a strictly larger monolithic candidate
/// with its monolith landing inside the candidate's monolith.
pub fn is_maximal_monolithic(
    h: &FiniteGroup,
    candidates: &[FiniteGroup],
    budget: u64,
) -> Result<MaximalMonolithic> {
    let mh = monolith(h);
    if !mh.is_monolithic {
        return Err(Error::NotMonolithic);
    }
    let mut skipped = Vec::new();
    for (i, g) in candidates.iter().enumerate() {
        if g.order() <= h.order() {
            continue;
        }
        let mg = monolith(g);
        if !mg.is_monolithic {
            skipped.push(i);
            continue;
        }
        let mut hit = None;
        let end = for_each_monomorphism(h, g, budget, |phi| {
            if mh.monolith.members().all(|x| mg.monolith.contains(phi.apply(x))) {
                hit = Some(phi);
                true
            } else {
                false
            }
        });
        if let Some(phi) = hit {
            return Ok(MaximalMonolithic {
                holds: false,
                violation: Some((i, phi)),
                skipped,
            });
        }
        if end == SearchEnd::Exhausted {
            return Err(Error::BudgetExhausted(budget));
        }
    }
    Ok(MaximalMonolithic {
        holds: true,
        violation: None,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::hom::DEFAULT_SEARCH_BUDGET;
    use crate::perm::Permutation;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn orders(name: &str) -> Vec<usize> {
        normal_subgroups(&builtin(name).unwrap())
            .iter()
            .map(Subgroup::order)
            .collect()
    }

    #[test]
    fn normal_lattices() {
        assert_eq!(orders("S(3)"), vec![1, 3, 6]);
        assert_eq!(orders("S(4)"), vec![1, 4, 12, 24]);
        assert_eq!(orders("A(5)"), vec![1, 60]);
        assert_eq!(orders("V4"), vec![1, 2, 2, 2, 4]);
        assert_eq!(orders("C(1)"), vec![1]);
    }

    #[test]
    fn monoliths() {
        let s4 = builtin("S(4)").unwrap();
        let m = monolith(&s4);
        assert_eq!(m.monolith.order(), 4);
        assert!(m.monolith_abelian && m.is_monolithic);
        assert!(m.monolith.contains(s4.index_of(&p("(1 2)(3 4)", 4)).unwrap()));

        let v4 = monolith(&builtin("V4").unwrap());
        assert!(!v4.is_monolithic);
        assert_eq!(v4.minimal_normals.len(), 3);

        let t = monolith(&builtin("C(1)").unwrap());
        assert!(!t.is_monolithic && t.monolith.is_trivial());
    }

    #[test]
    fn nilpotency() {
        assert!(!is_nilpotent(&builtin("S(4)").unwrap()));
        let s4 = builtin("S(4)").unwrap();
        let lcs = lower_central_series(&s4);
        assert_eq!(lcs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![24, 12]);
        assert!(is_nilpotent(&builtin("Dih(4)").unwrap()));
        assert!(is_nilpotent(&builtin("C(6)").unwrap()));
        assert!(is_nilpotent(&builtin("C(1)").unwrap()));
    }

    #[test]
    fn series_factors() {
        let s3 = builtin("S(3)").unwrap();
        let a3 = s3.subgroup_from_perms(&[p("(1 2 3)", 3)]).unwrap();
        let f = verify_subnormal_series(&s3, &[s3.trivial_subgroup(), a3, s3.whole()]).unwrap();
        assert_eq!(f.iter().map(|x| x.exponent).collect::<Vec<_>>(), vec![3, 2]);
        assert!(f.iter().all(|x| x.abelian));

        let c6 = builtin("C6").unwrap();
        let f = verify_subnormal_series(&c6, &[c6.trivial_subgroup(), c6.whole()]).unwrap();
        assert_eq!(f, vec![FactorInfo { order: 6, abelian: true, exponent: 6 }]);

        let s4 = builtin("S(4)").unwrap();
        let c2 = s4.subgroup_from_perms(&[p("(1 2)", 4)]).unwrap();
        let a4 = s4.derived_subgroup();
        assert_eq!(
            verify_subnormal_series(&s4, &[c2.clone(), a4]),
            Err(Error::NotAscending(0))
        );
        assert_eq!(
            verify_subnormal_series(&s4, &[s4.trivial_subgroup(), c2, s4.whole()]),
            Err(Error::NotNormalAt(1))
        );
    }

    #[test]
    fn kmo_examples() {
        let s3 = builtin("S(3)").unwrap();
        let a3 = s3.subgroup_from_perms(&[p("(1 2 3)", 3)]).unwrap();
        assert!(kmo_hypotheses(&s3, &a3).unwrap().verdict);

        let a4 = builtin("A(4)").unwrap();
        let v4 = monolith(&a4).monolith;
        let r = kmo_hypotheses(&a4, &v4).unwrap();
        assert!(r.verdict, "{r:?}");

        let s4 = builtin("S(4)").unwrap();
        let v4 = monolith(&s4).monolith;
        let r = kmo_hypotheses(&s4, &v4).unwrap();
        assert!(!r.verdict);
        assert!(r.c_is_normal.passed && r.c_equals_centralizer.passed);
        assert!(r.c_normally_indecomposable.passed);
        assert!(!r.orders_coprime.passed);
        assert_eq!(r.orders_coprime.detail, "gcd(4, 6) = 2");

        let c2 = s4.subgroup_from_perms(&[p("(1 2)", 4)]).unwrap();
        let r = kmo_hypotheses(&s4, &c2).unwrap();
        assert!(!r.c_is_normal.passed && !r.verdict);
        assert!(r.c_equals_centralizer.detail.starts_with("skipped"));
    }

    #[test]
    fn decomposable_c_is_detected() {
        // In V4 itself every subgroup is normal, so V4 = C2 x C2 decomposes.
        let v4 = builtin("V4").unwrap();
        let r = kmo_hypotheses(&v4, &v4.whole()).unwrap();
        assert!(!r.c_normally_indecomposable.passed);
    }

    #[test]
    fn abelian_criterion() {
        let check = |name: &str| abelian_strong_retract_criterion(&builtin(name).unwrap()).unwrap();
        let c6 = check("C6");
        assert!(c6.holds);
        assert_eq!(c6.primary_factors, vec![2, 3]);
        assert_eq!(c6.invariant_factors, vec![6]);
        let c2c4 = check("direct(C2,C4)");
        assert!(!c2c4.holds);
        assert_eq!(c2c4.invariant_factors, vec![2, 4]);
        assert!(check("direct(C2,C2)").holds);
        assert!(check("direct(C2,C3)").holds);
        assert!(check("C1").holds);
        assert_eq!(
            abelian_strong_retract_criterion(&builtin("S3").unwrap()),
            Err(Error::NotAbelian)
        );
    }

    #[test]
    fn maximal_monolithic() {
        let cands: Vec<FiniteGroup> = ["S(3)", "A(4)", "S(4)"]
            .iter()
            .map(|n| builtin(n).unwrap())
            .collect();
        let s4 = builtin("S(4)").unwrap();
        assert!(is_maximal_monolithic(&s4, &cands, DEFAULT_SEARCH_BUDGET).unwrap().holds);

        let a4 = builtin("A(4)").unwrap();
        let r = is_maximal_monolithic(&a4, &cands, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(!r.holds);
        let (i, phi) = r.violation.unwrap();
        assert_eq!(i, 2);
        assert!(phi.verify(&a4, &cands[2]) && phi.is_injective());
        assert_eq!(phi.image(&cands[2]), cands[2].derived_subgroup());

        assert!(is_maximal_monolithic(&a4, &[a4.clone()], DEFAULT_SEARCH_BUDGET).unwrap().holds);
        assert!(matches!(
            is_maximal_monolithic(&builtin("V4").unwrap(), &cands, DEFAULT_SEARCH_BUDGET),
            Err(Error::NotMonolithic)
        ));
    }
}
