use fingroup::equations::{is_verbally_closed, AuditBounds, VerbalAudit};
use fingroup::hom::{SearchOutcome, DEFAULT_SEARCH_BUDGET};
use fingroup::retracts::{
    all_subgroups, find_retraction_brute, find_retraction_lemma, point_embedding,
};
use fingroup::structure::monolith;
use fingroup::{builtin, FiniteGroup, Subgroup};

fn pairs() -> Vec<(String, FiniteGroup, Subgroup)> {
    let mut out = Vec::new();
    for (gs, hs) in [
        ("direct(S4,C3)", "S4"),
        ("direct(S3,C3)", "S3"),
        ("direct(S3,C2)", "S3"),
        ("direct(S3,S3)", "S3"),
        ("direct(A4,C2)", "A4"),
        ("direct(Q8,C3)", "Q8"),
        ("direct(Dih(4),C2)", "Dih(4)"),
    ] {
        let g = builtin(gs).unwrap();
        let h = point_embedding(&g, &builtin(hs).unwrap()).unwrap();
        out.push((format!("{hs} in {gs}"), g, h));
    }
    for gs in ["S3", "A4", "S4", "Dih(4)", "Q8", "C4", "Dih(6)"] {
        let g = builtin(gs).unwrap();
        for h in all_subgroups(&g, true, 10_000).subgroups {
            if h.is_trivial() {
                continue;
            }
            out.push((format!("{} in {gs}", h.order()), g.clone(), h));
        }
    }
    out
}

#[test]
fn lemma_and_search_agree_when_lemma_succeeds() {
    let mut lemma_hits = 0;
    for (label, g, h) in pairs() {
        let hg = g.subgroup_as_group(&h).unwrap();
        if !monolith(&hg).is_monolithic {
            continue;
        }
        let brute = find_retraction_brute(&g, &h, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(!matches!(brute, SearchOutcome::Exhausted(_)), "{label}");
        if let Ok(cert) = find_retraction_lemma(&g, &h) {
            lemma_hits += 1;
            assert!(cert.verify(&g, &h).all(), "{label}");
            assert!(matches!(brute, SearchOutcome::Found(_)), "{label}");
        }
        if let SearchOutcome::Found(cert) = brute {
            assert!(cert.verify(&g, &h).all(), "{label}");
        }
    }
    assert!(lemma_hits >= 10, "{lemma_hits}");
}

#[test]
fn retracts_are_verbally_closed() {
    let bounds = AuditBounds { max_len: 3, ..AuditBounds::default() };
    let mut seen = 0;
    for (label, g, h) in pairs() {
        if let SearchOutcome::Found(_) = find_retraction_brute(&g, &h, DEFAULT_SEARCH_BUDGET).unwrap() {
            let audit = is_verbally_closed(&g, &h, &bounds).unwrap();
            assert!(matches!(audit, VerbalAudit::ClosedWithinBounds { .. }), "{label}: {audit:?}");
            seen += 1;
        }
    }
    assert!(seen >= 10, "{seen}");
}

#[test]
fn conjugacy_classes_of_subgroups_add_up() {
    for gs in ["S4", "direct(S3,C3)", "Dih(6)", "direct(Dih(4),C2)"] {
        let g = builtin(gs).unwrap();
        let all = all_subgroups(&g, false, 100_000);
        let reps = all_subgroups(&g, true, 100_000);
        assert!(all.complete && reps.complete);
        let total: usize = reps
            .subgroups
            .iter()
            .map(|h| g.order() / g.normalizer(h).unwrap().order())
            .sum();
        assert_eq!(total, all.subgroups.len(), "{gs}");
    }
}
