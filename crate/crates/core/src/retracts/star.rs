use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::builtin::builtin;
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::are_isomorphic;
use crate::quotient::quotient;
use crate::structure::{is_nilpotent, monolith, normal_subgroups};

/// Result of a subgroup enumeration.
#[derive(Debug, Clone)]
pub struct SubgroupEnumeration {
    pub subgroups: Vec<Subgroup>,
    /// False when the cap stopped the enumeration early.
    pub complete: bool,
    /// True when only one subgroup per conjugacy class was kept.
    pub up_to_conjugacy: bool,
}

fn conjugate_set(g: &FiniteGroup, s: &ElemSet, by: usize) -> ElemSet {
    ElemSet::from_indices(g.order(), s.iter().map(|x| g.conj(x, by)))
}

fn canonical_conjugate(g: &FiniteGroup, s: &ElemSet) -> ElemSet {
    (0..g.order())
        .map(|c| conjugate_set(g, s, c))
        .min()
        .expect("nonempty group")
}

/// Every subgroup of `g` (or one per conjugacy class), by closing the
/// cyclic subgroups under single-element extensions.
///
/// Each subgroup `⟨x_1, ..., x_r⟩` is reached from the cyclic seed `⟨x_1⟩`,
/// so the closure is complete. Up to conjugacy this still holds because
/// `⟨S^c, y⟩ = ⟨S, y^(c⁻¹)⟩^c`.
pub fn all_subgroups(g: &FiniteGroup, up_to_conjugacy: bool, cap: usize) -> SubgroupEnumeration {
    // Raw sets already handled, so each is canonicalized at most once.
    let mut raw_seen: HashSet<ElemSet> = HashSet::new();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut found: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    let mut admit = |t: Subgroup, gens: Vec<usize>, found: &mut Vec<(Subgroup, Vec<usize>)>| {
        if !raw_seen.insert(t.set().clone()) {
            return;
        }
        let key = if up_to_conjugacy {
            canonical_conjugate(g, t.set())
        } else {
            t.set().clone()
        };
        if seen.insert(key) {
            found.push((t, gens));
        }
    };
    for x in 0..g.order() {
        admit(g.closure(&[x]), vec![x], &mut found);
    }
    let mut k = 0;
    let mut complete = true;
    while k < found.len() {
        if found.len() > cap {
            complete = false;
            break;
        }
        let (s, gens) = found[k].clone();
        k += 1;
        // <S, y> only depends on the coset Sy.
        let mut covered = s.set().clone();
        let mut reps = Vec::new();
        for y in 0..g.order() {
            if !covered.contains(y) {
                reps.push(y);
                for x in s.members() {
                    covered.insert(g.mul(x, y));
                }
            }
        }
        let ext: Vec<(Subgroup, Vec<usize>)> = reps
            .into_par_iter()
            .map(|y| {
                let mut gy = gens.clone();
                gy.push(y);
                (g.extend_with(&s, &gens, &[y]), gy)
            })
            .collect();
        for (t, gy) in ext {
            admit(t, gy, &mut found);
        }
    }
    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
    subgroups.sort_by(|a, b| a.canonical_cmp(b));
    SubgroupEnumeration {
        subgroups,
        complete,
        up_to_conjugacy,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionOutlier {
    pub subgroup_order: usize,
    pub kernel_order: usize,
    pub section_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub base: String,
    pub base_order: usize,
    pub subgroups: usize,
    pub up_to_conjugacy: bool,
    pub sections_examined: usize,
    pub non_nilpotent_monolithic: usize,
    /// Matches against S3, A4, S4.
    pub classified: BTreeMap<String, usize>,
    pub outliers: Vec<SectionOutlier>,
    /// False if the enumeration hit its cap; such a run is not conclusive.
    pub complete: bool,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.complete && self.outliers.is_empty()
    }
}

/// Runs through every section `S/T` of `base` and checks that the
/// non-nilpotent monolithic ones are isomorphic to S3, A4 or S4.
pub fn verify_star(base: &FiniteGroup, up_to_conjugacy: bool, cap: usize) -> Result<StarReport> {
    let targets: Vec<(String, FiniteGroup)> = ["S3", "A4", "S4"]
        .iter()
        .map(|n| Ok((n.to_string(), builtin(n)?)))
        .collect::<Result<_>>()?;
    let enumeration = all_subgroups(base, up_to_conjugacy, cap);
    let per_subgroup: Vec<Result<(usize, Vec<Option<String>>, Vec<SectionOutlier>)>> = enumeration
        .subgroups
        .par_iter()
        .map(|s| {
            let sg = base.subgroup_as_group(s)?;
            let mut labels = Vec::new();
            let mut outliers = Vec::new();
            let normals = normal_subgroups(&sg);
            for t in &normals {
                let (q, _) = quotient(&sg, t)?;
                if is_nilpotent(&q) || !monolith(&q).is_monolithic {
                    continue;
                }
                let label = targets
                    .iter()
                    .find(|(_, x)| x.order() == q.order() && are_isomorphic(&q, x).is_some())
                    .map(|(n, _)| n.clone());
                if label.is_none() {
                    outliers.push(SectionOutlier {
                        subgroup_order: s.order(),
                        kernel_order: t.order(),
                        section_order: q.order(),
                    });
                }
                labels.push(label);
            }
            Ok((normals.len(), labels, outliers))
        })
        .collect();
    let mut report = StarReport {
        base: base.label(),
        base_order: base.order(),
        subgroups: enumeration.subgroups.len(),
        up_to_conjugacy,
        sections_examined: 0,
        non_nilpotent_monolithic: 0,
        classified: targets.iter().map(|(n, _)| (n.clone(), 0)).collect(),
        outliers: Vec::new(),
        complete: enumeration.complete,
    };
    for r in per_subgroup {
        let (sections, labels, outliers) = r?;
        report.sections_examined += sections;
        report.non_nilpotent_monolithic += labels.len();
        for l in labels.into_iter().flatten() {
            *report.classified.get_mut(&l).expect("known label") += 1;
        }
        report.outliers.extend(outliers);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every subset closed under multiplication.
    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u64..1 << n)
            .filter(|mask| {
                mask & 1 == 1
                    && (0..n).filter(|i| mask >> i & 1 == 1).all(|a| {
                        (0..n)
                            .filter(|j| mask >> j & 1 == 1)
                            .all(|b| mask >> g.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for name in ["S3", "V4", "C6", "Dih(4)", "Q8", "C(12)"] {
            let g = builtin(name).unwrap();
            let e = all_subgroups(&g, false, usize::MAX);
            assert!(e.complete);
            assert_eq!(e.subgroups.len(), brute_subgroup_count(&g), "{name}");
        }
    }

    #[test]
    fn s4_subgroups() {
        let g = builtin("S4").unwrap();
        assert_eq!(all_subgroups(&g, false, usize::MAX).subgroups.len(), 30);
        assert_eq!(all_subgroups(&g, true, usize::MAX).subgroups.len(), 11);
    }

    #[test]
    fn star_on_s4() {
        let r = verify_star(&builtin("S4").unwrap(), false, usize::MAX).unwrap();
        assert!(r.passed());
        assert!(r.classified.values().all(|&c| c > 0), "{r:?}");
    }

    #[test]
    fn star_on_c2() {
        let r = verify_star(&builtin("C2").unwrap(), false, usize::MAX).unwrap();
        assert!(r.passed());
        assert_eq!(r.non_nilpotent_monolithic, 0);
    }

    #[test]
    fn capped_run_is_not_conclusive() {
        let r = verify_star(&builtin("S4").unwrap(), false, 3).unwrap();
        assert!(!r.complete && !r.passed());
    }
}
