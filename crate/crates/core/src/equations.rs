//! Equations with coefficients, the exhaustive solver, and bounded audits
//! of verbal and algebraic closedness.

use std::collections::BTreeSet;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;
use crate::words::{parse_system, Assignment, CompiledWord, Convention, Word};

pub const DEFAULT_SOLVE_BUDGET: u64 = 100_000_000;

/// A finite system `lhs_i = rhs_i` over mixed words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    pub equations: Vec<(Word, Word)>,
    /// Unknowns in search order.
    pub variables: Vec<String>,
}

impl EquationSystem {
    /// Unknowns default to the sorted set of variables that occur.
    pub fn new(equations: Vec<(Word, Word)>) -> Self {
        let mut vars = BTreeSet::new();
        for (l, r) in &equations {
            vars.extend(l.variables());
            vars.extend(r.variables());
        }
        EquationSystem {
            equations,
            variables: vars.into_iter().collect(),
        }
    }

    pub fn single(lhs: Word, rhs: Word) -> Self {
        Self::new(vec![(lhs, rhs)])
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(parse_system(text)?))
    }

    fn constants(&self) -> impl Iterator<Item = &Vec<Vec<usize>>> {
        self.equations
            .iter()
            .flat_map(|(l, r)| l.constants().into_iter().chain(r.constants()))
    }
}

impl std::fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .equations
            .iter()
            .map(|(l, r)| format!("{l} = {r}"))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Assignment),
    NoSolution,
    Exhausted(u64),
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution(_))
    }
}

struct Compiled {
    sides: Vec<(CompiledWord, CompiledWord)>,
}

impl Compiled {
    fn new(sys: &EquationSystem, g: &FiniteGroup) -> Result<Self> {
        let sides = sys
            .equations
            .iter()
            .map(|(l, r)| {
                Ok((
                    CompiledWord::compile(l, &sys.variables, g)?,
                    CompiledWord::compile(r, &sys.variables, g)?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(Compiled { sides })
    }

    fn satisfied(&self, g: &FiniteGroup, values: &[usize]) -> bool {
        self.sides.iter().all(|(l, r)| {
            l.eval(g, values, Convention::Standard) == r.eval(g, values, Convention::Standard)
        })
    }
}

/// Least solution over `G^n` in lexicographic order.
pub fn solve(sys: &EquationSystem, g: &FiniteGroup, budget: u64) -> Result<SolveOutcome> {
    let all: Vec<usize> = (0..g.order()).collect();
    solve_over(sys, g, &all, budget)
}

/// Least solution with every unknown ranging over `domain`.
pub fn solve_in(
    sys: &EquationSystem,
    g: &FiniteGroup,
    domain: &Subgroup,
    budget: u64,
) -> Result<SolveOutcome> {
    g.check(domain)?;
    solve_over(sys, g, &domain.member_vec(), budget)
}

fn solve_over(
    sys: &EquationSystem,
    g: &FiniteGroup,
    domain: &[usize],
    budget: u64,
) -> Result<SolveOutcome> {
    let compiled = Compiled::new(sys, g)?;
    let n = sys.variables.len();
    let mut digits = vec![0usize; n];
    let mut values: Vec<usize> = vec![domain[0]; n];
    let mut used = 0u64;
    loop {
        if used == budget {
            return Ok(SolveOutcome::Exhausted(budget));
        }
        used += 1;
        if compiled.satisfied(g, &values) {
            return Ok(SolveOutcome::Solution(
                sys.variables.iter().cloned().zip(values).collect(),
            ));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(SolveOutcome::NoSolution);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < domain.len() {
                values[k] = domain[digits[k]];
                break;
            }
            digits[k] = 0;
            values[k] = domain[0];
        }
    }
}

/// The set `{ w(g_1, ..., g_n) }` with each `g_i` ranging over `domain`.
fn image_over(
    compiled: &CompiledWord,
    n: usize,
    g: &FiniteGroup,
    domain: &[usize],
) -> ElemSet {
    let mut out = ElemSet::empty(g.order());
    let mut digits = vec![0usize; n];
    let mut values: Vec<usize> = vec![domain[0]; n];
    loop {
        out.insert(compiled.eval(g, &values, Convention::Standard));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < domain.len() {
                values[k] = domain[digits[k]];
                break;
            }
            digits[k] = 0;
            values[k] = domain[0];
        }
    }
}

fn image_cost(domain: usize, n: usize) -> u64 {
    (domain as u64).saturating_pow(n as u32)
}

/// All values of `w` on `G`.
pub fn word_image(w: &Word, g: &FiniteGroup, budget: u64) -> Result<ElemSet> {
    word_image_in(w, g, &g.whole(), budget)
}

/// All values of `w` with variables ranging over the subgroup `h`.
pub fn word_image_in(w: &Word, g: &FiniteGroup, h: &Subgroup, budget: u64) -> Result<ElemSet> {
    g.check(h)?;
    let vars: Vec<String> = w.variables().into_iter().collect();
    if image_cost(h.order(), vars.len()) > budget {
        return Err(Error::BudgetExhausted(budget));
    }
    let compiled = CompiledWord::compile(w, &vars, g)?;
    Ok(image_over(&compiled, vars.len(), g, &h.member_vec()))
}

/// Bounds for the verbal-closedness audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditBounds {
    pub max_len: usize,
    pub max_vars: usize,
    pub budget: u64,
}

impl Default for AuditBounds {
    fn default() -> Self {
        AuditBounds {
            max_len: 4,
            max_vars: 2,
            budget: DEFAULT_SOLVE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerbalAudit {
    /// No counterexample among the audited words.
    ClosedWithinBounds { words_checked: usize },
    /// `word = target` is solvable in G but not in H.
    Counterexample {
        word: Word,
        target: usize,
        solution_in_g: Assignment,
    },
    Exhausted { words_checked: usize, budget: u64 },
}

fn var_name(i: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "t"];
    NAMES.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string())
}

/// Letter `2v` is variable `v`, `2v + 1` its inverse.
fn letters_to_word(letters: &[usize]) -> Word {
    let mut terms: Vec<Word> = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == letters[k] {
            run += 1;
        }
        let base = Word::Var(var_name(letters[k] / 2));
        let exp = if letters[k] % 2 == 0 { run as i64 } else { -(run as i64) };
        terms.push(if exp == 1 { base } else { base.pow(exp) });
        k += run;
    }
    if terms.len() == 1 {
        terms.pop().expect("one term")
    } else {
        Word::Product(terms)
    }
}

fn inverse_letters(letters: &[usize]) -> Vec<usize> {
    letters.iter().rev().map(|&l| l ^ 1).collect()
}

/// Coefficient-free words for the verbal audit, ordered by number of
/// variables, then length, then lexicographically on `x < x⁻¹ < y < y⁻¹ ...`.
/// Only cyclically reduced words using exactly the first `k` variables are
/// kept, one from each pair `{w, w⁻¹}`.
pub fn audit_words(max_len: usize, max_vars: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for k in 1..=max_vars {
        let alphabet = 2 * k;
        for len in 1..=max_len {
            let mut letters = vec![0usize; len];
            loop {
                if keep_word(&letters, k) {
                    out.push(letters_to_word(&letters));
                }
                let mut i = len;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    letters[i] += 1;
                    if letters[i] < alphabet {
                        break;
                    }
                    letters[i] = 0;
                }
                if letters.iter().all(|&l| l == 0) {
                    break;
                }
            }
        }
    }
    out
}

fn keep_word(letters: &[usize], k: usize) -> bool {
    let reduced = letters.windows(2).all(|w| w[0] != w[1] ^ 1);
    let cyclic = letters.len() < 2 || letters[0] != letters[letters.len() - 1] ^ 1;
    let mut used = vec![false; k];
    for &l in letters {
        used[l / 2] = true;
    }
    reduced && cyclic && used.iter().all(|&u| u) && letters <= inverse_letters(letters).as_slice()
}

/// Bounded audit of verbal closedness of `h` in `g`: looks for the least
/// `(w, h)` with `w = h` solvable in G but not in H.
pub fn is_verbally_closed(g: &FiniteGroup, h: &Subgroup, bounds: &AuditBounds) -> Result<VerbalAudit> {
    g.check(h)?;
    let h_members = h.member_vec();
    let mut spent = 0u64;
    let words = audit_words(bounds.max_len, bounds.max_vars);
    for (checked, w) in words.iter().enumerate() {
        let n = w.variables().len();
        let cost = image_cost(g.order(), n) + image_cost(h.order(), n);
        if spent + cost > bounds.budget {
            return Ok(VerbalAudit::Exhausted {
                words_checked: checked,
                budget: bounds.budget,
            });
        }
        spent += cost;
        let in_g = word_image(w, g, u64::MAX)?;
        let in_h = word_image_in(w, g, h, u64::MAX)?;
        if let Some(&target) = h_members
            .iter()
            .find(|&&x| in_g.contains(x) && !in_h.contains(x))
        {
            let sys = EquationSystem::single(w.clone(), constant(g.element(target)));
            let SolveOutcome::Solution(solution_in_g) = solve(&sys, g, u64::MAX)? else {
                unreachable!("target lies in the word image");
            };
            return Ok(VerbalAudit::Counterexample {
                word: w.clone(),
                target,
                solution_in_g,
            });
        }
    }
    Ok(VerbalAudit::ClosedWithinBounds {
        words_checked: words.len(),
    })
}

/// A permutation as a constant leaf.
pub fn constant(p: &Permutation) -> Word {
    Word::Const(p.cycles())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraicAudit {
    ClosedOnSample { systems_checked: usize },
    /// System `index` is solvable in G but not in H.
    Counterexample { index: usize, solution_in_g: Assignment },
    Exhausted { index: usize, budget: u64 },
}

/// Checks, for each system with coefficients in `h`, that solvability in
/// G implies solvability in H.
pub fn is_algebraically_closed_sample(
    g: &FiniteGroup,
    h: &Subgroup,
    systems: &[EquationSystem],
    budget: u64,
) -> Result<AlgebraicAudit> {
    g.check(h)?;
    for sys in systems {
        for c in sys.constants() {
            let p = Permutation::from_cycles(g.degree(), c)?;
            match g.index_of(&p) {
                Some(i) if h.contains(i) => {}
                _ => return Err(Error::NotAnElement(format!("coefficient {p} not in H"))),
            }
        }
    }
    for (index, sys) in systems.iter().enumerate() {
        match solve(sys, g, budget)? {
            SolveOutcome::Exhausted(b) => return Ok(AlgebraicAudit::Exhausted { index, budget: b }),
            SolveOutcome::NoSolution => continue,
            SolveOutcome::Solution(solution_in_g) => match solve_in(sys, g, h, budget)? {
                SolveOutcome::Solution(_) => {}
                SolveOutcome::NoSolution => {
                    return Ok(AlgebraicAudit::Counterexample {
                        index,
                        solution_in_g,
                    })
                }
                SolveOutcome::Exhausted(b) => {
                    return Ok(AlgebraicAudit::Exhausted { index, budget: b })
                }
            },
        }
    }
    Ok(AlgebraicAudit::ClosedOnSample {
        systems_checked: systems.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::words::parse_word;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn square_root_of_three_cycle() {
        let g = builtin("S(3)").unwrap();
        let sys = EquationSystem::parse("x^2 = <(1 2 3)>").unwrap();
        match solve(&sys, &g, DEFAULT_SOLVE_BUDGET).unwrap() {
            SolveOutcome::Solution(a) => assert_eq!(g.element(a["x"]).to_string(), "(1 3 2)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transposition_is_not_a_square() {
        let g = builtin("S(4)").unwrap();
        let sys = EquationSystem::parse("x^2 = <(1 2)>").unwrap();
        assert_eq!(solve(&sys, &g, DEFAULT_SOLVE_BUDGET).unwrap(), SolveOutcome::NoSolution);
    }

    #[test]
    fn trivial_commutator_has_identity_solution() {
        let g = builtin("A(4)").unwrap();
        let sys = EquationSystem::parse("[x, y] = e").unwrap();
        assert_eq!(
            solve(&sys, &g, DEFAULT_SOLVE_BUDGET).unwrap(),
            SolveOutcome::Solution(Assignment::from([("x".into(), 0), ("y".into(), 0)]))
        );
    }

    #[test]
    fn budget_never_reports_no_solution() {
        let g = builtin("S(4)").unwrap();
        let sys = EquationSystem::parse("x^2 = <(1 2)>").unwrap();
        assert_eq!(solve(&sys, &g, 23).unwrap(), SolveOutcome::Exhausted(23));
        assert_eq!(solve(&sys, &g, 24).unwrap(), SolveOutcome::NoSolution);
    }

    #[test]
    fn coefficient_outside_group() {
        let g = builtin("A(4)").unwrap();
        let sys = EquationSystem::parse("x = <(1 2)>").unwrap();
        assert!(matches!(solve(&sys, &g, 100), Err(Error::NotAnElement(_))));
    }

    #[test]
    fn word_images() {
        let s3 = builtin("S(3)").unwrap();
        let img = word_image(&parse_word("[x,y]").unwrap(), &s3, u64::MAX).unwrap();
        let shown: Vec<String> = img.iter().map(|i| s3.element(i).to_string()).collect();
        assert_eq!(shown, ["()", "(1 2 3)", "(1 3 2)"]);
        assert_eq!(word_image(&parse_word("x").unwrap(), &s3, u64::MAX).unwrap().len(), 6);
        let s4 = builtin("S(4)").unwrap();
        let sq = word_image(&parse_word("x^2").unwrap(), &s4, u64::MAX).unwrap();
        assert_eq!(sq.len(), 12);
        assert!(sq.iter().all(|i| s4.element(i).is_even()));
    }

    #[test]
    fn audit_word_list() {
        let words = audit_words(4, 2);
        assert_eq!(words[0], parse_word("x").unwrap());
        assert_eq!(words[1], parse_word("x^2").unwrap());
        // x^-1 is identified with x
        assert!(!words.contains(&parse_word("x^-1").unwrap()));
        assert!(words.contains(&parse_word("x y x^-1 y^-1").unwrap()));
        assert!(!words.contains(&parse_word("y x y^-1 x^-1").unwrap()));
        assert!(!words.contains(&parse_word("y").unwrap()));
        assert!(!words.contains(&parse_word("x y x^-1").unwrap()));
    }

    #[test]
    fn a3_in_s3_is_not_verbally_closed() {
        let g = builtin("S(3)").unwrap();
        let h = g.subgroup_from_perms(&[p("(1 2 3)", 3)]).unwrap();
        match is_verbally_closed(&g, &h, &AuditBounds::default()).unwrap() {
            VerbalAudit::Counterexample { word, target, .. } => {
                assert_eq!(word, parse_word("x y x^-1 y^-1").unwrap());
                assert_eq!(g.element(target).to_string(), "(1 2 3)");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            is_verbally_closed(&g, &g.whole(), &AuditBounds::default()).unwrap(),
            VerbalAudit::ClosedWithinBounds { .. }
        ));
    }

    #[test]
    fn algebraic_sample() {
        let g = builtin("S(3)").unwrap();
        let h = g.subgroup_from_perms(&[p("(1 2 3)", 3)]).unwrap();
        let sys = EquationSystem::parse("[x,y] <(1 3 2)> = 1").unwrap();
        assert!(matches!(
            is_algebraically_closed_sample(&g, &h, &[sys], DEFAULT_SOLVE_BUDGET).unwrap(),
            AlgebraicAudit::Counterexample { index: 0, .. }
        ));
        assert_eq!(
            is_algebraically_closed_sample(&g, &h, &[], DEFAULT_SOLVE_BUDGET).unwrap(),
            AlgebraicAudit::ClosedOnSample { systems_checked: 0 }
        );
        let bad = EquationSystem::parse("x = <(1 2)>").unwrap();
        assert!(is_algebraically_closed_sample(&g, &h, &[bad], DEFAULT_SOLVE_BUDGET).is_err());
    }
}
