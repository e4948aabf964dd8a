use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{are_isomorphic, SearchOutcome};
use crate::words::LawSet;

use super::variety::{variety_membership, VarietyOptions, VarietyVerdict};
use super::{find_retraction_brute, find_retraction_lemma};

#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    pub variety: VarietyOptions,
    /// Budget of the exhaustive cross-check; 0 disables it.
    pub brute_budget: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            variety: VarietyOptions::default(),
            brute_budget: crate::hom::DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    /// Lemma retraction found and verified.
    Retracted,
    /// G is provably outside var H; the strong-retract claim says nothing.
    OutsideVariety,
    /// Membership could not be decided within bounds.
    MembershipUnknown,
    /// The embedded subgroup is not isomorphic to H.
    BadEmbedding,
    /// G is in var H but no verified retraction was produced.
    NoRetraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub group: String,
    pub group_order: usize,
    pub variety: Option<VarietyVerdict>,
    pub section_k: Option<usize>,
    pub status: AuditStatus,
    pub kernel_order: Option<usize>,
    /// Outcome of the exhaustive search: "found", "absent", "exhausted" or
    /// "skipped".
    pub brute_force: String,
    pub detail: String,
}

impl AuditEntry {
    /// Only unknown membership and genuine failures count against H.
    pub fn passed(&self) -> bool {
        matches!(self.status, AuditStatus::Retracted | AuditStatus::OutsideVariety)
    }
}

fn entry(g: &FiniteGroup, status: AuditStatus, detail: String) -> AuditEntry {
    AuditEntry {
        group: g.label(),
        group_order: g.order(),
        variety: None,
        section_k: None,
        status,
        kernel_order: None,
        brute_force: "skipped".into(),
        detail,
    }
}

/// For each `(G, H')` with `H' ≅ H`: confirms `G ∈ var H`, then requires the
/// lemma construction to produce a verified retraction onto `H'`.
pub fn strong_retract_audit(
    h: &FiniteGroup,
    tests: &[(FiniteGroup, Subgroup)],
    law_db: &LawSet,
    opts: &AuditOptions,
) -> Result<Vec<AuditEntry>> {
    let mut out = Vec::new();
    for (g, sub) in tests {
        g.check(sub)?;
        let hg = g.subgroup_as_group(sub)?;
        if hg.order() != h.order() || are_isomorphic(&hg, h).is_none() {
            out.push(entry(g, AuditStatus::BadEmbedding, "embedded subgroup is not isomorphic to H".into()));
            continue;
        }
        let v = variety_membership(g, h, law_db, &opts.variety)?;
        let mut e = entry(g, AuditStatus::NoRetraction, String::new());
        e.variety = Some(v.verdict);
        e.section_k = v.member.as_ref().map(|c| c.k);
        match v.verdict {
            VarietyVerdict::NonMember => {
                e.status = AuditStatus::OutsideVariety;
                e.detail = format!("fails {}", v.non_member.as_ref().map(|w| w.law.to_string()).unwrap_or_default());
                out.push(e);
                continue;
            }
            VarietyVerdict::Unknown => {
                e.status = AuditStatus::MembershipUnknown;
                e.detail = format!("no section of H^k for k <= {} and no failing law", opts.variety.k_max);
                out.push(e);
                continue;
            }
            VarietyVerdict::Member => {}
        }
        match find_retraction_lemma(g, sub) {
            Ok(cert) => {
                let check = cert.verify(g, sub);
                e.kernel_order = Some(cert.kernel.order());
                if check.all() {
                    e.status = AuditStatus::Retracted;
                    e.detail = format!("kernel order {}", cert.kernel.order());
                } else {
                    e.detail = format!("certificate failed verification: {check:?}");
                }
            }
            Err(err @ (Error::NoRetraction(_) | Error::NotMonolithic)) => e.detail = err.to_string(),
            Err(err) => return Err(err),
        }
        if opts.brute_budget > 0 {
            e.brute_force = match find_retraction_brute(g, sub, opts.brute_budget)? {
                SearchOutcome::Found(c) => {
                    if !c.verify(g, sub).all() {
                        e.status = AuditStatus::NoRetraction;
                        e.detail = "exhaustive certificate failed verification".into();
                    }
                    "found"
                }
                SearchOutcome::Absent => {
                    if e.status == AuditStatus::Retracted {
                        e.status = AuditStatus::NoRetraction;
                        e.detail = "exhaustive search disagrees with the lemma".into();
                    }
                    "absent"
                }
                SearchOutcome::Exhausted(_) => "exhausted",
            }
            .into();
        }
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::retracts::point_embedding;

    fn tests_for(h: &str, gs: &[&str]) -> (FiniteGroup, Vec<(FiniteGroup, Subgroup)>) {
        let hg = builtin(h).unwrap();
        let t = gs
            .iter()
            .map(|s| {
                let g = builtin(s).unwrap();
                let sub = point_embedding(&g, &hg).unwrap();
                (g, sub)
            })
            .collect();
        (hg, t)
    }

    #[test]
    fn s4_audit() {
        let (h, t) = tests_for("S4", &["direct(S4,C3)", "direct(S4,V4)", "S4"]);
        let r = strong_retract_audit(&h, &t, &LawSet::s4_laws(), &AuditOptions::default()).unwrap();
        for e in &r {
            assert_eq!(e.status, AuditStatus::Retracted, "{e:?}");
            assert_eq!(e.brute_force, "found");
        }
        assert_eq!(r[0].kernel_order, Some(3));
        assert_eq!(r[2].kernel_order, Some(1));
    }

    #[test]
    fn s3_audit() {
        let (h, t) = tests_for("S3", &["direct(S3,C3)"]);
        let laws = LawSet::new("none", vec![]);
        let r = strong_retract_audit(&h, &t, &laws, &AuditOptions::default()).unwrap();
        assert_eq!(r[0].status, AuditStatus::Retracted, "{:?}", r[0]);
    }

    #[test]
    fn outside_variety_is_skipped() {
        let (h, t) = tests_for("S4", &["direct(S4,C5)"]);
        let r = strong_retract_audit(&h, &t, &LawSet::s4_laws(), &AuditOptions::default()).unwrap();
        assert_eq!(r[0].status, AuditStatus::OutsideVariety);
        assert!(r[0].passed());
    }
}
