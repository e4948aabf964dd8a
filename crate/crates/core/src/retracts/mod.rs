//! Retractions: the construction through a maximal normal subgroup that
//! meets `H` trivially, an exhaustive search for comparison, bounded variety
//! membership, the monolithic-section sweep, and the strong-retract audit.

mod audit;
mod star;
mod variety;

use serde::Serialize;

pub use audit::{strong_retract_audit, AuditEntry, AuditOptions, AuditStatus};
pub use star::{all_subgroups, verify_star, SectionOutlier, StarReport, SubgroupEnumeration};
pub use variety::{
    variety_membership, LawWitness, SectionCertificate, VarietyCertificate, VarietyOptions,
    VarietyVerdict,
};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{HomSearch, Homomorphism, SearchEnd, SearchOutcome};
use crate::quotient::quotient;
use crate::structure::{monolith, normal_subgroups};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lemma,
    BruteForce,
}

/// An idempotent endomorphism `rho` of G with image H.
#[derive(Debug, Clone)]
pub struct RetractionCertificate {
    pub kernel: Subgroup,
    pub rho: Homomorphism,
    pub method: Method,
}

/// Outcome of [`RetractionCertificate::verify`]; every field is checked on
/// the full element set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub multiplicative: bool,
    pub idempotent: bool,
    pub fixes_h: bool,
    pub image_is_h: bool,
    pub kernel_matches: bool,
    pub kernel_order_law: bool,
}

impl CertificateCheck {
    pub fn all(&self) -> bool {
        self.multiplicative
            && self.idempotent
            && self.fixes_h
            && self.image_is_h
            && self.kernel_matches
            && self.kernel_order_law
    }
}

impl RetractionCertificate {
    pub fn verify(&self, g: &FiniteGroup, h: &Subgroup) -> CertificateCheck {
        let rho = &self.rho;
        let multiplicative = rho.verify(g, g);
        let idempotent = multiplicative && (0..g.order()).all(|x| rho.apply(rho.apply(x)) == rho.apply(x));
        let fixes_h = multiplicative && h.members().all(|x| rho.apply(x) == x);
        let image_is_h = multiplicative && rho.image(g) == *h;
        let kernel = if multiplicative { Some(rho.kernel(g)) } else { None };
        let kernel_matches = kernel.as_ref() == Some(&self.kernel);
        let kernel_order_law = self.kernel.order() * h.order() == g.order();
        CertificateCheck {
            multiplicative,
            idempotent,
            fixes_h,
            image_is_h,
            kernel_matches,
            kernel_order_law,
        }
    }
}

/// Normal subgroups meeting `h` trivially that are maximal by inclusion
/// among such, in canonical order.
pub fn maximal_trivially_intersecting(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let candidates: Vec<Subgroup> = normal_subgroups(g)
        .into_iter()
        .filter(|n| n.set().intersection_len(h.set()) == 1)
        .collect();
    candidates
        .iter()
        .filter(|n| {
            !candidates
                .iter()
                .any(|m| m.order() > n.order() && n.is_subgroup_of(m))
        })
        .cloned()
        .collect()
}

/// Builds `G -> G/N -> H` for a maximal normal `N` with `N ∩ H = 1`, where
/// the second arrow inverts the projection restricted to `H`.
pub fn find_retraction_lemma(g: &FiniteGroup, h: &Subgroup) -> Result<RetractionCertificate> {
    g.check(h)?;
    let hg = g.subgroup_as_group(h)?;
    if !monolith(&hg).is_monolithic {
        return Err(Error::NotMonolithic);
    }
    let mut tried = Vec::new();
    for n in maximal_trivially_intersecting(g, h) {
        let (q, pi) = quotient(g, &n)?;
        let mut back = vec![usize::MAX; q.order()];
        let mut injective = true;
        for x in h.members() {
            let slot = &mut back[pi.apply(x)];
            if *slot != usize::MAX {
                injective = false;
                break;
            }
            *slot = x;
        }
        if !injective || q.order() != h.order() {
            tried.push(format!("|N| = {}, |G/N| = {}", n.order(), q.order()));
            continue;
        }
        let map: Vec<usize> = (0..g.order()).map(|x| back[pi.apply(x)]).collect();
        let rho = Homomorphism::from_map(g, g, map)?;
        return Ok(RetractionCertificate {
            kernel: n,
            rho,
            method: Method::Lemma,
        });
    }
    Err(Error::NoRetraction(format!(
        "no maximal normal subgroup meeting H trivially has quotient isomorphic to H via the projection; tried: [{}]",
        tried.join("; ")
    )))
}

/// Exhaustive search for a homomorphism `G -> H` fixing `H` pointwise.
/// The generators of `G` start with generators of `H`, whose images are
/// forced.
pub fn find_retraction_brute(
    g: &FiniteGroup,
    h: &Subgroup,
    budget: u64,
) -> Result<SearchOutcome<RetractionCertificate>> {
    g.check(h)?;
    let h_gens = g.minimal_generators(h);
    let gens = g.extend_generators(&g.whole(), &h_gens);
    let h_members = h.member_vec();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i < h_gens.len() {
                vec![x]
            } else {
                h_members
                    .iter()
                    .copied()
                    .filter(|&y| g.element_order(x) % g.element_order(y) == 0)
                    .collect()
            }
        })
        .collect();
    let search = HomSearch {
        domain: g,
        domain_gens: gens.clone(),
        codomain: g,
        candidates,
        injective: false,
        budget,
    };
    let mut hit = None;
    let (end, _) = search.run(|f| {
        if f.support.len() == g.order() {
            hit = Some(Homomorphism::from_parts(g, g, &gens, f.images, f.map.to_vec()));
            true
        } else {
            false
        }
    });
    Ok(match (hit, end) {
        (Some(rho), _) => SearchOutcome::Found(RetractionCertificate {
            kernel: rho.kernel(g),
            rho,
            method: Method::BruteForce,
        }),
        (None, SearchEnd::Exhausted) => SearchOutcome::Exhausted(budget),
        (None, _) => SearchOutcome::Absent,
    })
}

/// `H` placed in `G` by fixing the extra points: `h`'s permutations are
/// padded with fixed points up to the degree of `g`.
pub fn point_embedding(g: &FiniteGroup, h: &FiniteGroup) -> Result<Subgroup> {
    if h.degree() > g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let padded: Vec<_> = h
        .generators()
        .iter()
        .map(|p| p.shifted(0, g.degree()))
        .collect();
    let s = g.subgroup_from_perms(&padded)?;
    if s.order() != h.order() {
        return Err(Error::Invalid("point embedding is not injective".into()));
    }
    Ok(s)
}
