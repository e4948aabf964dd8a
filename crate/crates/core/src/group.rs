//! Fully enumerated permutation groups and their subgroups.
//!
//! Elements are kept in lexicographic order of their image sequences, so
//! the identity is always index 0 and "least element" means least index.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::perm::{lcm, Permutation};

/// Multiplication tables are precomputed up to this order.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    pub degree_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 200_000,
            degree_cap: 64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    key: u64,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Subgroup of `Sym(degree)` generated by `gens`, under default limits.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::generate_with(degree, gens, &Limits::default())
    }

    pub fn generate_with(degree: usize, gens: &[Permutation], limits: &Limits) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        if degree > limits.degree_cap {
            return Err(Error::DegreeTooLarge(degree, limits.degree_cap));
        }
        Self::close(degree, gens, limits.element_cap)
    }

    /// Closure without the degree cap; used for internally built groups such
    /// as coset actions whose degree equals their order.
    pub(crate) fn close(degree: usize, gens: &[Permutation], element_cap: usize) -> Result<Self> {
        if degree > u16::MAX as usize {
            return Err(Error::DegreeTooLarge(degree, u16::MAX as usize));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= element_cap {
                        return Err(Error::GroupTooLarge(element_cap));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(degree, gens, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()] as u32).collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        let mut h = DefaultHasher::new();
        degree.hash(&mut h);
        elements.hash(&mut h);
        FiniteGroup {
            name: None,
            degree,
            generators,
            elements,
            index,
            table,
            inverses,
            orders,
            key: h.finish(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("<group of order {}>", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub(crate) fn key(&self) -> u64 {
        self.key
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let mut base = if exp < 0 { self.inv(a) } else { a };
        let mut e = exp.unsigned_abs() % self.orders[a] as u64;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a] as u64
    }

    /// `g⁻¹ a g`
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o as u64))
    }

    /// Histogram of element orders, sorted by order.
    pub fn order_histogram(&self) -> Vec<(u64, usize)> {
        let mut m: std::collections::BTreeMap<u64, usize> = Default::default();
        for &o in &self.orders {
            *m.entry(o as u64).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::new(self, ElemSet::full(self.order()))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::new(self, ElemSet::from_indices(self.order(), [0]))
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens = self.generator_indices();
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut class = vec![start];
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                k += 1;
                for &g in &gens {
                    let y = self.conj(x, g);
                    if !assigned[y] {
                        assigned[y] = true;
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// `|C_G(x)|` for every element, via class sizes.
    pub fn centralizer_orders(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for class in self.conjugacy_classes() {
            for &x in &class {
                out[x] = self.order() / class.len();
            }
        }
        out
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let set = self.close_set(ElemSet::from_indices(self.order(), [0]), gens);
        Subgroup::new(self, set)
    }

    /// Subgroup generated by `base` together with `extra`.
    pub fn extend(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.generating_set(base);
        gens.extend_from_slice(extra);
        let set = self.close_set(base.set.clone(), &gens);
        Subgroup::new(self, set)
    }

    /// As [`extend`](Self::extend) with a known generating set of `base`.
    pub(crate) fn extend_with(&self, base: &Subgroup, base_gens: &[usize], extra: &[usize]) -> Subgroup {
        let mut gens = base_gens.to_vec();
        gens.extend_from_slice(extra);
        let set = self.close_set(base.set.clone(), &gens);
        Subgroup::new(self, set)
    }

    fn close_set(&self, mut set: ElemSet, gens: &[usize]) -> ElemSet {
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue: Vec<usize> = set.iter().collect();
        for &g in &gens {
            if set.insert(g) {
                queue.push(g);
            }
        }
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::NotAnElement(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&idx))
    }

    /// Validates that the given element indices form a subgroup.
    pub fn subgroup_from_set(&self, members: &[usize]) -> Result<Subgroup> {
        let set = ElemSet::from_indices(self.order(), members.iter().copied());
        if !set.contains(0) {
            return Err(Error::NotASubgroup);
        }
        for a in set.iter() {
            if !set.contains(self.inv(a)) {
                return Err(Error::NotASubgroup);
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup::new(self, set))
    }

    pub(crate) fn check(&self, s: &Subgroup) -> Result<()> {
        if s.parent_key != self.key || s.set.universe() != self.order() {
            Err(Error::ParentMismatch)
        } else {
            Ok(())
        }
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        Ok(Subgroup::new(self, a.set.intersection(&b.set)))
    }

    /// Normality by conjugating every member by every generator.
    pub fn is_normal(&self, s: &Subgroup) -> Result<bool> {
        self.check(s)?;
        let gens = self.generator_indices();
        Ok(s
            .members()
            .all(|x| gens.iter().all(|&g| s.contains(self.conj(x, g)))))
    }

    pub fn centralizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.check(s)?;
        let gens = self.generating_set(s);
        let set = ElemSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        );
        Ok(Subgroup::new(self, set))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole()).expect("whole group belongs to its parent")
    }

    pub fn normalizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.check(s)?;
        let gens = self.generating_set(s);
        let set = ElemSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g)))),
        );
        Ok(Subgroup::new(self, set))
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let gens = self.generator_indices();
        let mut seeds: Vec<usize> = elems.to_vec();
        let mut s = self.closure(&seeds);
        loop {
            let mut grown = false;
            for x in s.members().collect::<Vec<_>>() {
                for &g in &gens {
                    let y = self.conj(x, g);
                    if !s.contains(y) {
                        seeds.push(y);
                        grown = true;
                    }
                }
            }
            if !grown {
                return s;
            }
            s = self.closure(&seeds);
        }
    }

    /// `[A, B]`, the subgroup generated by all commutators `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        let mut comms = ElemSet::empty(self.order());
        for x in a.members() {
            for y in b.members() {
                comms.insert(self.commutator(x, y));
            }
        }
        Ok(self.closure(&comms.iter().collect::<Vec<_>>()))
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup(&w, &w).expect("same parent")
    }

    /// A generating set of at most `log2 |s|` elements: scan members in
    /// order and keep each one not yet generated.
    pub fn generating_set(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = ElemSet::from_indices(self.order(), [0]);
        for x in s.members() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.close_set(cur, &gens);
            }
        }
        gens
    }

    /// Greedy small generating set: repeatedly add the element that enlarges
    /// the generated subgroup the most (ties broken by least index).
    pub fn minimal_generators(&self, s: &Subgroup) -> Vec<usize> {
        self.extend_generators(s, &[])
    }

    /// `start` followed by greedily chosen elements so that together they
    /// generate `s`. `start` must lie in `s`.
    pub fn extend_generators(&self, s: &Subgroup, start: &[usize]) -> Vec<usize> {
        let mut gens = start.to_vec();
        let mut current = self.closure(start);
        while current.order() < s.order() {
            let mut best: Option<(usize, Subgroup)> = None;
            for x in s.members() {
                if current.contains(x) {
                    continue;
                }
                let cand = self.extend(&current, &[x]);
                let better = match &best {
                    None => true,
                    Some((_, b)) => cand.order() > b.order(),
                };
                if better {
                    let full = cand.order() == s.order();
                    best = Some((x, cand));
                    if full {
                        break;
                    }
                }
            }
            let (x, cand) = best.expect("a proper subgroup misses some member");
            gens.push(x);
            current = cand;
        }
        gens
    }

    /// The subgroup as a standalone group on the same points. Index `i` of the
    /// result is the `i`-th smallest member of `s`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> Result<FiniteGroup> {
        self.check(s)?;
        let gens = self
            .generating_set(s)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        let elements = s.members().map(|i| self.elements[i].clone()).collect();
        Ok(Self::from_sorted(self.degree, gens, elements))
    }
}

/// A subgroup of a fixed parent group, stored as a set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_key: u64,
    set: ElemSet,
    order: usize,
}

impl Subgroup {
    pub(crate) fn new(parent: &FiniteGroup, set: ElemSet) -> Self {
        let order = set.len();
        Subgroup {
            parent_key: parent.key,
            set,
            order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    /// Members in increasing index order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn member_vec(&self) -> Vec<usize> {
        self.set.iter().collect()
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent_key == other.parent_key && self.set.is_subset(&other.set)
    }

    /// Canonical ordering: by order, then by sorted member list.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members().cmp(other.members()))
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        self.parent_key == other.parent_key
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn generates_s4() {
        let g = FiniteGroup::generate(4, &[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trivial_and_cyclic() {
        assert_eq!(FiniteGroup::generate(1, &[]).unwrap().order(), 1);
        assert_eq!(FiniteGroup::generate(3, &[p("(1 2 3)", 3)]).unwrap().order(), 3);
    }

    #[test]
    fn generate_errors() {
        assert!(matches!(
            FiniteGroup::generate(4, &[p("(1 2)", 3)]),
            Err(Error::DegreeMismatch { .. })
        ));
        let limits = Limits {
            element_cap: 100,
            degree_cap: 64,
        };
        assert!(matches!(
            FiniteGroup::generate_with(5, &[p("(1 2)", 5), p("(1 2 3 4 5)", 5)], &limits),
            Err(Error::GroupTooLarge(100))
        ));
        assert!(matches!(
            FiniteGroup::generate(65, &[]),
            Err(Error::DegreeTooLarge(65, 64))
        ));
    }

    #[test]
    fn class_sizes() {
        let sizes = |name: &str| {
            let g = builtin(name).unwrap();
            g.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>()
        };
        // classes listed by least element: e, (34), (234), (12)(34), (1234)
        assert_eq!(sizes("S(3)"), vec![1, 3, 2]);
        let mut s4 = sizes("S(4)");
        s4.sort();
        assert_eq!(s4, vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes("C(1)"), vec![1]);
    }

    #[test]
    fn centralizers() {
        let a4 = builtin("A(4)").unwrap();
        let v4 = a4
            .subgroup_from_perms(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)])
            .unwrap();
        assert_eq!(a4.centralizer(&v4).unwrap(), v4);
        let s3 = builtin("S(3)").unwrap();
        let a3 = s3.subgroup_from_perms(&[p("(1 2 3)", 3)]).unwrap();
        assert_eq!(s3.centralizer(&a3).unwrap(), a3);
        assert_eq!(s3.centralizer(&s3.trivial_subgroup()).unwrap(), s3.whole());
    }

    #[test]
    fn intersections_and_normality() {
        let s4 = builtin("S(4)").unwrap();
        let v4 = s4
            .subgroup_from_perms(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)])
            .unwrap();
        let a4 = s4
            .subgroup_from_perms(&[p("(1 2 3)", 4), p("(2 3 4)", 4)])
            .unwrap();
        assert_eq!(s4.intersect(&a4, &v4).unwrap(), v4);
        assert!(s4.is_normal(&v4).unwrap());
        let c2 = s4.subgroup_from_perms(&[p("(1 2)", 4)]).unwrap();
        assert!(!s4.is_normal(&c2).unwrap());

        let g = builtin("direct(S(4),C(3))").unwrap();
        let left = g
            .subgroup_from_perms(&[p("(1 2)", 7), p("(1 2 3 4)", 7)])
            .unwrap();
        let right = g.subgroup_from_perms(&[p("(5 6 7)", 7)]).unwrap();
        assert!(g.intersect(&left, &right).unwrap().is_trivial());

        let s3 = builtin("S(3)").unwrap();
        assert_eq!(s4.intersect(&v4, &s3.whole()), Err(Error::ParentMismatch));
    }

    #[test]
    fn subgroup_validation() {
        let s3 = builtin("S(3)").unwrap();
        let t = s3.index_of(&p("(1 2)", 3)).unwrap();
        assert!(s3.subgroup_from_set(&[0, t]).is_ok());
        let c = s3.index_of(&p("(1 2 3)", 3)).unwrap();
        assert_eq!(s3.subgroup_from_set(&[0, c]), Err(Error::NotASubgroup));
    }

    #[test]
    fn minimal_generators_of_s4() {
        let s4 = builtin("S(4)").unwrap();
        let gens = s4.minimal_generators(&s4.whole());
        assert_eq!(gens.len(), 2);
        assert_eq!(s4.closure(&gens), s4.whole());
    }
}
