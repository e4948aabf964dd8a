//! Word evaluation and exhaustive law checking.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

use super::{Law, LawSet, Word};

/// Default cap on word evaluations for a single law check.
pub const DEFAULT_LAW_BUDGET: u64 = 100_000_000;

/// Commutator convention. `Standard` is `[a,b] = a⁻¹b⁻¹ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    /// `[a,b] = a b a⁻¹ b⁻¹`
    Opposite,
}

/// Variable name to element index.
pub type Assignment = BTreeMap<String, usize>;

/// A word with variables resolved to slots and constants to elements of a
/// particular group.
#[derive(Debug, Clone)]
pub enum CompiledWord {
    Slot(usize),
    Elem(usize),
    Product(Vec<CompiledWord>),
    Power(Box<CompiledWord>, i64),
    Commutator(Vec<CompiledWord>),
}

impl CompiledWord {
    /// `vars` fixes the slot of every variable.
    pub fn compile(w: &Word, vars: &[String], g: &FiniteGroup) -> Result<Self> {
        Ok(match w {
            Word::Var(v) => CompiledWord::Slot(
                vars.iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            ),
            Word::Const(cycles) => {
                let p = Permutation::from_cycles(g.degree(), cycles)?;
                CompiledWord::Elem(g.index_of(&p).ok_or_else(|| Error::NotAnElement(p.to_string()))?)
            }
            Word::Product(ws) => CompiledWord::Product(
                ws.iter()
                    .map(|w| Self::compile(w, vars, g))
                    .collect::<Result<_>>()?,
            ),
            Word::Power(w, e) => CompiledWord::Power(Box::new(Self::compile(w, vars, g)?), *e),
            Word::Commutator(ws) => CompiledWord::Commutator(
                ws.iter()
                    .map(|w| Self::compile(w, vars, g))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn eval(&self, g: &FiniteGroup, values: &[usize], conv: Convention) -> usize {
        match self {
            CompiledWord::Slot(i) => values[*i],
            CompiledWord::Elem(e) => *e,
            CompiledWord::Product(ws) => ws
                .iter()
                .fold(g.identity(), |acc, w| g.mul(acc, w.eval(g, values, conv))),
            CompiledWord::Power(w, e) => g.pow(w.eval(g, values, conv), *e),
            CompiledWord::Commutator(ws) => {
                let mut acc = ws[0].eval(g, values, conv);
                for w in &ws[1..] {
                    let b = w.eval(g, values, conv);
                    acc = match conv {
                        Convention::Standard => g.commutator(acc, b),
                        Convention::Opposite => g.commutator(g.inv(acc), g.inv(b)),
                    };
                }
                acc
            }
        }
    }
}

/// Value of `w` under `assignment` in `g` (standard convention).
pub fn evaluate(w: &Word, assignment: &Assignment, g: &FiniteGroup) -> Result<usize> {
    let vars: Vec<String> = assignment.keys().cloned().collect();
    let compiled = CompiledWord::compile(w, &vars, g)?;
    let values: Vec<usize> = assignment.values().copied().collect();
    if let Some(&bad) = values.iter().find(|&&v| v >= g.order()) {
        return Err(Error::NotAnElement(format!("index {bad}")));
    }
    Ok(compiled.eval(g, &values, Convention::Standard))
}

#[derive(Debug, Clone, Copy)]
pub struct LawOptions {
    pub budget: u64,
    pub convention: Convention,
    /// Restrict the first variable to conjugacy class representatives.
    pub reduce: bool,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions {
            budget: DEFAULT_LAW_BUDGET,
            convention: Convention::Standard,
            reduce: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub holds: bool,
    /// Least failing assignment in lexicographic order over all tuples.
    pub counterexample: Option<Assignment>,
    /// `|G|^n` for `n` variables.
    pub assignments: u64,
    /// Number of tuples actually evaluated.
    pub evaluations: u64,
}

/// Row-major odometer over `G^k` in lexicographic order, with `first`
/// as the leading coordinate.
fn scan_tail(
    g: &FiniteGroup,
    word: &CompiledWord,
    first: usize,
    tail_len: usize,
    conv: Convention,
) -> Option<Vec<usize>> {
    let mut values = vec![0usize; tail_len + 1];
    values[0] = first;
    loop {
        if word.eval(g, &values, conv) != g.identity() {
            return Some(values);
        }
        let mut k = tail_len;
        loop {
            if k == 0 {
                return None;
            }
            values[k] += 1;
            if values[k] < g.order() {
                break;
            }
            values[k] = 0;
            k -= 1;
        }
    }
}

/// Exhaustive law check. With `reduce` the first variable runs over class
/// representatives only: `w(x^g, ...) = w(x, ...)^g`, so failing first
/// coordinates form a union of classes whose least member is a
/// representative, and the reported witness is still the least one.
pub fn holds_law(g: &FiniteGroup, law: &Law, opts: &LawOptions) -> Result<LawCheck> {
    let vars: Vec<String> = law.variables().into_iter().collect();
    let word = CompiledWord::compile(&law.lhs, &vars, g)?;
    let n = vars.len();
    let order = g.order() as u64;
    let assignments = order.saturating_pow(n as u32);
    if n == 0 {
        let v = word.eval(g, &[], opts.convention);
        return Ok(LawCheck {
            holds: v == g.identity(),
            counterexample: (v != g.identity()).then(Assignment::new),
            assignments: 1,
            evaluations: 1,
        });
    }
    let firsts: Vec<usize> = if opts.reduce {
        g.conjugacy_classes().iter().map(|c| c[0]).collect()
    } else {
        (0..g.order()).collect()
    };
    let evaluations = (firsts.len() as u64).saturating_mul(order.saturating_pow(n as u32 - 1));
    if evaluations > opts.budget {
        return Err(Error::BudgetExhausted(opts.budget));
    }
    let witness = firsts
        .par_iter()
        .find_map_first(|&x| scan_tail(g, &word, x, n - 1, opts.convention));
    Ok(LawCheck {
        holds: witness.is_none(),
        counterexample: witness.map(|vals| vars.iter().cloned().zip(vals).collect()),
        assignments,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawSetCheck {
    pub holds: bool,
    pub results: Vec<LawCheck>,
    /// Index into the law set of the first failing law.
    pub first_failure: Option<usize>,
}

/// Checks every law; stops at the first failure.
pub fn holds_law_set(g: &FiniteGroup, ls: &LawSet, opts: &LawOptions) -> Result<LawSetCheck> {
    let mut results = Vec::new();
    for (i, law) in ls.laws.iter().enumerate() {
        let r = holds_law(g, law, opts)?;
        let failed = !r.holds;
        results.push(r);
        if failed {
            return Ok(LawSetCheck {
                holds: false,
                results,
                first_failure: Some(i),
            });
        }
    }
    Ok(LawSetCheck {
        holds: true,
        results,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::words::{parse_law, parse_word};

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn commutator_of_equal_elements() {
        let g = builtin("S(4)").unwrap();
        let w = parse_word("[x,y]").unwrap();
        for a in 0..g.order() {
            let asg = Assignment::from([("x".into(), a), ("y".into(), a)]);
            assert_eq!(evaluate(&w, &asg, &g).unwrap(), 0);
        }
    }

    #[test]
    fn twelfth_power_of_four_cycle() {
        let g = builtin("S(4)").unwrap();
        let x = g.index_of(&p("(1 2 3 4)", 4)).unwrap();
        let w = parse_word("x^12").unwrap();
        assert_eq!(evaluate(&w, &Assignment::from([("x".into(), x)]), &g).unwrap(), 0);
    }

    #[test]
    fn commutator_of_transpositions() {
        let g = builtin("S(3)").unwrap();
        let x = g.index_of(&p("(1 2)", 3)).unwrap();
        let y = g.index_of(&p("(1 3)", 3)).unwrap();
        let w = parse_word("[x,y]").unwrap();
        let v = evaluate(&w, &Assignment::from([("x".into(), x), ("y".into(), y)]), &g).unwrap();
        // (1 2)(1 3)(1 2)(1 3) composed left to right
        let expected = p("(1 2)", 3)
            .compose(&p("(1 3)", 3))
            .compose(&p("(1 2)", 3))
            .compose(&p("(1 3)", 3));
        assert_eq!(g.element(v), &expected);
        assert_eq!(g.element(v).order(), 3);
    }

    #[test]
    fn unbound_variable() {
        let g = builtin("S(3)").unwrap();
        let w = parse_word("x y").unwrap();
        assert_eq!(
            evaluate(&w, &Assignment::from([("x".into(), 0)]), &g),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn s4_fails_involution_law() {
        let g = builtin("S(4)").unwrap();
        let r = holds_law(&g, &parse_law("x^2 = 1").unwrap(), &LawOptions::default()).unwrap();
        assert!(!r.holds);
        let x = r.counterexample.unwrap()["x"];
        assert_eq!(g.element(x).to_string(), "(2 3 4)");
    }

    #[test]
    fn dihedral_laws() {
        let g = builtin("Dih(4)").unwrap();
        let opts = LawOptions::default();
        assert!(holds_law(&g, &parse_law("x^4 = 1").unwrap(), &opts).unwrap().holds);
        assert!(holds_law(&g, &parse_law("[x^2, y] = 1").unwrap(), &opts).unwrap().holds);
        let d8 = builtin("Dih(8)").unwrap();
        let r = holds_law_set(&d8, &LawSet::dihedral_d(), &opts).unwrap();
        assert_eq!(r.first_failure, Some(0));
        assert!(holds_law_set(&builtin("C(1)").unwrap(), &LawSet::s4_laws(), &opts)
            .unwrap()
            .holds);
    }

    #[test]
    fn budget_is_enforced() {
        let g = builtin("S(4)").unwrap();
        let opts = LawOptions {
            budget: 10,
            ..LawOptions::default()
        };
        assert_eq!(
            holds_law(&g, &parse_law("[x,y] = 1").unwrap(), &opts),
            Err(Error::BudgetExhausted(10))
        );
    }
}
