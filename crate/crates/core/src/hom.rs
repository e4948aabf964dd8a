//! Homomorphisms between enumerated groups and the generator-image
//! backtracking search behind isomorphism, monomorphism and retraction
//! searches.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

pub(crate) const UNSET: u32 = u32::MAX;

/// A homomorphism given by images of domain generators, with the full
/// element map materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain_key: u64,
    codomain_key: u64,
    generators: Vec<usize>,
    generator_images: Vec<usize>,
    map: Vec<usize>,
}

impl Homomorphism {
    /// Extends `gens -> images` to a homomorphism on all of `domain`.
    /// Returns `None` if `gens` do not generate `domain` or the assignment
    /// is not well defined.
    pub fn from_generator_images(
        domain: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
        codomain: &FiniteGroup,
    ) -> Option<Self> {
        assert_eq!(gens.len(), images.len());
        let mut map = vec![UNSET; domain.order()];
        let mut steps = 0;
        let reached = extend_map(domain, codomain, gens, images, &mut map, &mut steps, u64::MAX)?;
        if reached.len() != domain.order() {
            return None;
        }
        Some(Self::from_parts(domain, codomain, gens, images, map))
    }

    pub(crate) fn from_parts(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
        map: Vec<u32>,
    ) -> Self {
        Homomorphism {
            domain_key: domain.key(),
            codomain_key: codomain.key(),
            generators: gens.to_vec(),
            generator_images: images.to_vec(),
            map: map.into_iter().map(|x| x as usize).collect(),
        }
    }

    /// Builds a homomorphism from an explicit element map.
    pub fn from_map(domain: &FiniteGroup, codomain: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.order() || map.iter().any(|&x| x >= codomain.order()) {
            return Err(Error::Invalid("element map has the wrong shape".into()));
        }
        let gens = domain.generator_indices();
        let images = gens.iter().map(|&g| map[g]).collect();
        let h = Homomorphism {
            domain_key: domain.key(),
            codomain_key: codomain.key(),
            generators: gens,
            generator_images: images,
            map,
        };
        if !h.verify(domain, codomain) {
            return Err(Error::Invalid("element map is not multiplicative".into()));
        }
        Ok(h)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        let gens = g.generator_indices();
        Homomorphism {
            domain_key: g.key(),
            codomain_key: g.key(),
            generator_images: gens.clone(),
            generators: gens,
            map: (0..g.order()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    /// Exhaustive check: the map belongs to these groups and is multiplicative.
    pub fn verify(&self, domain: &FiniteGroup, codomain: &FiniteGroup) -> bool {
        if self.domain_key != domain.key()
            || self.codomain_key != codomain.key()
            || self.map.len() != domain.order()
        {
            return false;
        }
        (0..domain.order()).all(|a| {
            (0..domain.order())
                .all(|b| self.map[domain.mul(a, b)] == codomain.mul(self.map[a], self.map[b]))
        })
    }

    pub fn image(&self, codomain: &FiniteGroup) -> Subgroup {
        let set = ElemSet::from_indices(codomain.order(), self.map.iter().copied());
        Subgroup::new(codomain, set)
    }

    pub fn kernel(&self, domain: &FiniteGroup) -> Subgroup {
        let set = ElemSet::from_indices(
            domain.order(),
            (0..domain.order()).filter(|&x| self.map[x] == 0),
        );
        Subgroup::new(domain, set)
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&x| x == 0).count() == 1
    }

    pub fn is_bijective(&self, codomain: &FiniteGroup) -> bool {
        self.is_injective() && self.map.len() == codomain.order()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        let map: Vec<usize> = self.map.iter().map(|&x| other.map[x]).collect();
        Homomorphism {
            domain_key: self.domain_key,
            codomain_key: other.codomain_key,
            generators: self.generators.clone(),
            generator_images: self.generators.iter().map(|&g| map[g]).collect(),
            map,
        }
    }
}

/// BFS over `<gens>` in `domain`, defining `map(x g_j) = map(x) φ(g_j)`.
/// Returns the reached elements, or `None` on an inconsistency (or when the
/// step budget runs out, signalled through `steps > budget`).
pub(crate) fn extend_map(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    map: &mut [u32],
    steps: &mut u64,
    budget: u64,
) -> Option<Vec<usize>> {
    map[0] = 0;
    let mut reached = vec![0usize];
    let mut k = 0;
    while k < reached.len() {
        let x = reached[k];
        k += 1;
        let mx = map[x] as usize;
        for (&g, &img) in gens.iter().zip(images) {
            *steps += 1;
            if *steps > budget {
                reset(map, &reached);
                return None;
            }
            let y = domain.mul(x, g);
            let my = codomain.mul(mx, img) as u32;
            if map[y] == UNSET {
                map[y] = my;
                reached.push(y);
            } else if map[y] != my {
                reset(map, &reached);
                return None;
            }
        }
    }
    Some(reached)
}

pub(crate) fn reset(map: &mut [u32], touched: &[usize]) {
    for &t in touched {
        map[t] = UNSET;
    }
}

/// Outcome of an exhaustive homomorphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEnd {
    /// Every candidate was examined.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// The step budget ran out first.
    Exhausted,
}

/// Backtracking search for homomorphisms from `<domain_gens>` into
/// `codomain`, with per-generator candidate image lists.
pub struct HomSearch<'a> {
    pub domain: &'a FiniteGroup,
    pub domain_gens: Vec<usize>,
    pub codomain: &'a FiniteGroup,
    pub candidates: Vec<Vec<usize>>,
    pub injective: bool,
    pub budget: u64,
}

/// A homomorphism found by [`HomSearch`], defined on `<domain_gens>`.
pub struct Found<'s> {
    pub images: &'s [usize],
    /// Domain elements reached, in BFS order.
    pub support: &'s [usize],
    /// Element map; meaningful on `support` only.
    pub map: &'s [u32],
}

impl<'a> HomSearch<'a> {
    /// Candidates preserving element order (and, for `injective`, not
    /// shrinking centralizers).
    pub fn new(
        domain: &'a FiniteGroup,
        domain_gens: Vec<usize>,
        codomain: &'a FiniteGroup,
        injective: bool,
        budget: u64,
    ) -> Self {
        let dc = if injective { domain.centralizer_orders() } else { Vec::new() };
        let cc = if injective { codomain.centralizer_orders() } else { Vec::new() };
        let candidates = domain_gens
            .iter()
            .map(|&g| {
                let og = domain.element_order(g);
                (0..codomain.order())
                    .filter(|&c| {
                        let oc = codomain.element_order(c);
                        if injective {
                            oc == og && cc[c] >= dc[g]
                        } else {
                            og % oc == 0
                        }
                    })
                    .collect()
            })
            .collect();
        HomSearch {
            domain,
            domain_gens,
            codomain,
            candidates,
            injective,
            budget,
        }
    }

    /// Visits homomorphisms in lexicographic order of generator images.
    /// The visitor returns `true` to stop.
    pub fn run(&self, mut visit: impl FnMut(&Found<'_>) -> bool) -> (SearchEnd, u64) {
        let mut map = vec![UNSET; self.domain.order()];
        let mut images = Vec::with_capacity(self.domain_gens.len());
        let mut steps = 0u64;
        let end = self.descend(&mut images, &mut map, &mut steps, &mut visit);
        (end, steps)
    }

    fn descend(
        &self,
        images: &mut Vec<usize>,
        map: &mut [u32],
        steps: &mut u64,
        visit: &mut impl FnMut(&Found<'_>) -> bool,
    ) -> SearchEnd {
        let depth = images.len();
        if depth == self.domain_gens.len() {
            let Some(support) = extend_map(
                self.domain,
                self.codomain,
                &self.domain_gens,
                images,
                map,
                steps,
                self.budget,
            ) else {
                return if *steps > self.budget { SearchEnd::Exhausted } else { SearchEnd::Complete };
            };
            let ok = !self.injective || support.iter().all(|&x| x == 0 || map[x] != 0);
            let stop = ok
                && visit(&Found {
                    images,
                    support: &support,
                    map,
                });
            reset(map, &support);
            return if stop { SearchEnd::Stopped } else { SearchEnd::Complete };
        }
        for &c in &self.candidates[depth] {
            images.push(c);
            // Prefix consistency on <g_1..g_depth+1>.
            let prefix_ok = if depth + 1 < self.domain_gens.len() {
                match extend_map(
                    self.domain,
                    self.codomain,
                    &self.domain_gens[..=depth],
                    images,
                    map,
                    steps,
                    self.budget,
                ) {
                    Some(support) => {
                        let ok = !self.injective || support.iter().all(|&x| x == 0 || map[x] != 0);
                        reset(map, &support);
                        ok
                    }
                    None => false,
                }
            } else {
                true
            };
            if *steps > self.budget {
                return SearchEnd::Exhausted;
            }
            if prefix_ok {
                match self.descend(images, map, steps, visit) {
                    SearchEnd::Complete => {}
                    other => return other,
                }
            }
            images.pop();
        }
        SearchEnd::Complete
    }
}

/// Default budget (extension steps) for monomorphism searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Result of a bounded search for a single map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Absent,
    Exhausted(u64),
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// First injective homomorphism `domain -> codomain` in canonical order.
pub fn find_monomorphism(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    budget: u64,
) -> SearchOutcome<Homomorphism> {
    let mut hit = None;
    let end = for_each_monomorphism(domain, codomain, budget, |h| {
        hit = Some(h);
        true
    });
    match (hit, end) {
        (Some(h), _) => SearchOutcome::Found(h),
        (None, SearchEnd::Exhausted) => SearchOutcome::Exhausted(budget),
        (None, _) => SearchOutcome::Absent,
    }
}

/// Visits every monomorphism `domain -> codomain` in canonical order of
/// generator images; the visitor returns `true` to stop.
pub fn for_each_monomorphism(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    budget: u64,
    mut visit: impl FnMut(Homomorphism) -> bool,
) -> SearchEnd {
    if codomain.order() % domain.order() != 0 {
        return SearchEnd::Complete;
    }
    let gens = domain.minimal_generators(&domain.whole());
    let search = HomSearch::new(domain, gens.clone(), codomain, true, budget);
    search
        .run(|f| {
            let h = Homomorphism::from_parts(domain, codomain, &gens, f.images, f.map.to_vec());
            visit(h)
        })
        .0
}

/// Isomorphism invariants used to prune before backtracking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: usize,
    pub order_histogram: Vec<(u64, usize)>,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub abelianization_order: usize,
}

pub fn invariants(g: &FiniteGroup) -> Invariants {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    Invariants {
        order: g.order(),
        order_histogram: g.order_histogram(),
        class_sizes,
        center_order: g.center().order(),
        abelianization_order: g.order() / g.derived_subgroup().order(),
    }
}

/// An isomorphism `g -> h` if one exists.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Homomorphism> {
    if g.order() != h.order() || invariants(g) != invariants(h) {
        return None;
    }
    find_monomorphism(g, h, u64::MAX).found()
}
