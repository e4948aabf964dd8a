use serde::Serialize;

use crate::builtin::power;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::hom::{
    are_isomorphic, extend_map, find_monomorphism, reset, Homomorphism, SearchOutcome, UNSET,
};
use crate::perm::Permutation;
use crate::quotient::quotient;
use crate::words::{holds_law, Law, LawOptions, LawSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyVerdict {
    Member,
    NonMember,
    Unknown,
}

/// `G ≅ S/T` with `S ≤ H^k`: `S` is generated by `s_generators` and the
/// surjection `S -> G` sends them to `g_images`; `T` is its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCertificate {
    pub k: usize,
    pub s_generators: Vec<Permutation>,
    pub g_images: Vec<Permutation>,
    pub s_order: usize,
    pub t_order: usize,
}

impl SectionCertificate {
    /// Rebuilds `H^k`, `S`, `T` and `S/T` and checks `S/T ≅ G` with an
    /// independent isomorphism search.
    pub fn verify(&self, g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
        let base = power(h, self.k, &Limits::default())?;
        let s = base.subgroup_from_perms(&self.s_generators)?;
        let sg = base.subgroup_as_group(&s)?;
        let gens = self
            .s_generators
            .iter()
            .map(|p| sg.index_of(p).ok_or_else(|| Error::NotAnElement(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let images = self
            .g_images
            .iter()
            .map(|p| g.index_of(p).ok_or_else(|| Error::NotAnElement(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let Some(psi) = Homomorphism::from_generator_images(&sg, &gens, &images, g) else {
            return Ok(false);
        };
        let t = psi.kernel(&sg);
        let (q, _) = quotient(&sg, &t)?;
        Ok(s.order() == self.s_order
            && t.order() == self.t_order
            && psi.image(g).order() == g.order()
            && are_isomorphic(&q, g).is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawWitness {
    pub law: Law,
    /// Failing assignment in G, as permutations.
    pub assignment: Vec<(String, Permutation)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyCertificate {
    pub verdict: VarietyVerdict,
    pub member: Option<SectionCertificate>,
    pub non_member: Option<LawWitness>,
    /// Laws of the database that fail in H itself and were skipped.
    pub skipped_laws: Vec<Law>,
}

#[derive(Debug, Clone, Copy)]
pub struct VarietyOptions {
    pub k_max: usize,
    pub budget: u64,
    pub law_options: LawOptions,
}

impl Default for VarietyOptions {
    fn default() -> Self {
        VarietyOptions {
            k_max: 2,
            budget: crate::hom::DEFAULT_SEARCH_BUDGET,
            law_options: LawOptions::default(),
        }
    }
}

/// Bounded, three-valued membership of `g` in var `h`.
///
/// Negative evidence: a law of `law_db` holding in `h` but failing in `g`.
/// Positive evidence: `g` as a subgroup, or a quotient of a subgroup, of
/// `h^k` for `k <= k_max`.
pub fn variety_membership(
    g: &FiniteGroup,
    h: &FiniteGroup,
    law_db: &LawSet,
    opts: &VarietyOptions,
) -> Result<VarietyCertificate> {
    let mut skipped_laws = Vec::new();
    for law in &law_db.laws {
        if !holds_law(h, law, &opts.law_options)?.holds {
            skipped_laws.push(law.clone());
            continue;
        }
        let r = holds_law(g, law, &opts.law_options)?;
        if let Some(a) = r.counterexample {
            return Ok(VarietyCertificate {
                verdict: VarietyVerdict::NonMember,
                member: None,
                non_member: Some(LawWitness {
                    law: law.clone(),
                    assignment: a.into_iter().map(|(v, x)| (v, g.element(x).clone())).collect(),
                }),
                skipped_laws,
            });
        }
    }
    for k in 1..=opts.k_max {
        let base_order = (h.order() as u128).pow(k as u32);
        if base_order < g.order() as u128 || base_order > Limits::default().element_cap as u128 {
            continue;
        }
        let base = power(h, k, &Limits::default())?;
        if let Some(cert) = section_of(g, &base, k, opts.budget)? {
            return Ok(VarietyCertificate {
                verdict: VarietyVerdict::Member,
                member: Some(cert),
                non_member: None,
                skipped_laws,
            });
        }
    }
    Ok(VarietyCertificate {
        verdict: VarietyVerdict::Unknown,
        member: None,
        non_member: None,
        skipped_laws,
    })
}

/// `g` as a subgroup of `base`, else as a quotient of a subgroup.
///
/// If `S/T ≅ G` then lifting a generating tuple of `G` gives a subgroup of
/// `S` mapping onto `G`, so it suffices to search tuples `(a_1..a_d)` in
/// `base` for which `a_i ↦ g_i` extends to a homomorphism `<a> -> G`.
/// Conjugating the tuple changes nothing, so `a_1` runs over class
/// representatives.
fn section_of(
    g: &FiniteGroup,
    base: &FiniteGroup,
    k: usize,
    budget: u64,
) -> Result<Option<SectionCertificate>> {
    match find_monomorphism(g, base, budget) {
        SearchOutcome::Found(phi) => {
            let gens = phi.generators().to_vec();
            return Ok(Some(SectionCertificate {
                k,
                s_generators: phi
                    .generator_images()
                    .iter()
                    .map(|&x| base.element(x).clone())
                    .collect(),
                g_images: gens.iter().map(|&x| g.element(x).clone()).collect(),
                s_order: g.order(),
                t_order: 1,
            }));
        }
        SearchOutcome::Exhausted(b) => return Err(Error::BudgetExhausted(b)),
        SearchOutcome::Absent => {}
    }
    let targets = g.minimal_generators(&g.whole());
    if targets.is_empty() {
        return Ok(Some(SectionCertificate {
            k,
            s_generators: Vec::new(),
            g_images: Vec::new(),
            s_order: 1,
            t_order: 1,
        }));
    }
    let reps: Vec<usize> = base.conjugacy_classes().iter().map(|c| c[0]).collect();
    let candidates: Vec<Vec<usize>> = targets
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let pool: Vec<usize> = if i == 0 { reps.clone() } else { (0..base.order()).collect() };
            pool.into_iter()
                .filter(|&a| base.element_order(a) % g.element_order(t) == 0)
                .collect()
        })
        .collect();
    let mut map = vec![UNSET; base.order()];
    let mut chosen = Vec::with_capacity(targets.len());
    let mut steps = 0u64;
    let found = lift(
        g, base, &targets, &candidates, &mut chosen, &mut map, &mut steps, budget,
    );
    if steps > budget {
        return Err(Error::BudgetExhausted(budget));
    }
    Ok(found.map(|(s_order, t_order)| SectionCertificate {
        k,
        s_generators: chosen.iter().map(|&a| base.element(a).clone()).collect(),
        g_images: targets.iter().map(|&x| g.element(x).clone()).collect(),
        s_order,
        t_order,
    }))
}

#[allow(clippy::too_many_arguments)]
fn lift(
    g: &FiniteGroup,
    base: &FiniteGroup,
    targets: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    map: &mut [u32],
    steps: &mut u64,
    budget: u64,
) -> Option<(usize, usize)> {
    let depth = chosen.len();
    for &a in &candidates[depth] {
        chosen.push(a);
        if let Some(support) =
            extend_map(base, g, chosen, &targets[..=depth], map, steps, budget)
        {
            let kernel = support.iter().filter(|&&x| map[x] == 0).count();
            let s_order = support.len();
            reset(map, &support);
            if depth + 1 == targets.len() {
                return Some((s_order, kernel));
            }
            if let Some(found) = lift(g, base, targets, candidates, chosen, map, steps, budget) {
                return Some(found);
            }
        }
        if *steps > budget {
            return None;
        }
        chosen.pop();
    }
    None
}
