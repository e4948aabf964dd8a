//! Free-group words, laws and law sets.
//!
//! Words are kept as syntax trees; the same tree type carries coefficient
//! constants (mixed words) for equations, see [`Word::Const`].

mod eval;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use eval::{
    evaluate, holds_law, holds_law_set, Assignment, CompiledWord, Convention, LawCheck,
    LawOptions, LawSetCheck, DEFAULT_LAW_BUDGET,
};
pub use parse::{parse_equation, parse_law, parse_mixed_word, parse_system, parse_word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Var(String),
    /// A coefficient given in cycle notation; no cycles is the identity `e`.
    Const(Vec<Vec<usize>>),
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    /// Left-normed: `[a, b, c] = [[a, b], c]`.
    Commutator(Vec<Word>),
}

impl Word {
    pub fn var(name: &str) -> Word {
        Word::Var(name.to_string())
    }

    pub fn pow(self, e: i64) -> Word {
        Word::Power(Box::new(self), e)
    }

    pub fn inverse(self) -> Word {
        self.pow(-1)
    }

    pub fn product(parts: Vec<Word>) -> Word {
        Word::Product(parts)
    }

    pub fn comm(parts: Vec<Word>) -> Word {
        Word::Commutator(parts)
    }

    pub fn identity() -> Word {
        Word::Const(Vec::new())
    }

    /// Variables in sorted order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Word::Var(v) => {
                out.insert(v.clone());
            }
            Word::Const(_) => {}
            Word::Power(w, _) => w.collect_vars(out),
            Word::Product(ws) | Word::Commutator(ws) => {
                ws.iter().for_each(|w| w.collect_vars(out))
            }
        }
    }

    pub fn is_coefficient_free(&self) -> bool {
        match self {
            Word::Var(_) => true,
            Word::Const(_) => false,
            Word::Power(w, _) => w.is_coefficient_free(),
            Word::Product(ws) | Word::Commutator(ws) => ws.iter().all(Word::is_coefficient_free),
        }
    }

    pub fn constants(&self) -> Vec<&Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.collect_consts(&mut out);
        out
    }

    fn collect_consts<'a>(&'a self, out: &mut Vec<&'a Vec<Vec<usize>>>) {
        match self {
            Word::Var(_) => {}
            Word::Const(c) => out.push(c),
            Word::Power(w, _) => w.collect_consts(out),
            Word::Product(ws) | Word::Commutator(ws) => {
                ws.iter().for_each(|w| w.collect_consts(out))
            }
        }
    }

    /// Replaces every variable by its image. Variables missing from `map`
    /// are left alone.
    pub fn substitute(&self, map: &BTreeMap<String, Word>) -> Word {
        match self {
            Word::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Word::Const(_) => self.clone(),
            Word::Power(w, e) => Word::Power(Box::new(w.substitute(map)), *e),
            Word::Product(ws) => Word::Product(ws.iter().map(|w| w.substitute(map)).collect()),
            Word::Commutator(ws) => {
                Word::Commutator(ws.iter().map(|w| w.substitute(map)).collect())
            }
        }
    }

    /// Collapses nested powers `(w^a)^b` to `w^(ab)` and drops `^1`.
    pub fn normalize_powers(&self) -> Word {
        match self {
            Word::Var(_) | Word::Const(_) => self.clone(),
            Word::Power(w, e) => match w.normalize_powers() {
                Word::Power(inner, f) => Word::Power(inner, e * f).normalize_powers(),
                inner if *e == 1 => inner,
                inner => Word::Power(Box::new(inner), *e),
            },
            Word::Product(ws) => Word::Product(ws.iter().map(Word::normalize_powers).collect()),
            Word::Commutator(ws) => {
                Word::Commutator(ws.iter().map(Word::normalize_powers).collect())
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(v) => f.write_str(v),
            Word::Const(cycles) if cycles.is_empty() => f.write_str("e"),
            Word::Const(cycles) => {
                f.write_str("<")?;
                for c in cycles {
                    let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                    write!(f, "({})", pts.join(" "))?;
                }
                f.write_str(">")
            }
            Word::Product(ws) => {
                for (k, w) in ws.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    match w {
                        Word::Product(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
            Word::Power(w, e) => match **w {
                Word::Product(_) | Word::Power(..) => write!(f, "({w})^{e}"),
                _ => write!(f, "{w}^{e}"),
            },
            Word::Commutator(ws) => {
                f.write_str("[")?;
                for (k, w) in ws.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A word asserted to be identically 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub lhs: Word,
    pub name: Option<String>,
}

impl Law {
    pub fn new(lhs: Word) -> Self {
        Law { lhs, name: None }
    }

    pub fn named(lhs: Word, name: &str) -> Self {
        Law {
            lhs,
            name: Some(name.to_string()),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.lhs.variables()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 1", self.lhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawSet {
    pub name: String,
    pub laws: Vec<Law>,
}

impl LawSet {
    pub fn new(name: &str, laws: Vec<Law>) -> LawSet {
        LawSet {
            name: name.to_string(),
            laws,
        }
    }

    fn from_texts(name: &str, texts: &[&str]) -> LawSet {
        LawSet {
            name: name.to_string(),
            laws: texts
                .iter()
                .map(|t| parse_law(t).expect("builtin law parses"))
                .collect(),
        }
    }

    /// The three laws of `S4` used for non-membership certificates:
    /// `x^12`, `((x^3 y^3)^4 [x^3, y^6])^3` and `[[x,y]^3, y^3, y^2]`.
    ///
    /// The middle law is the cube of `(x^3 y^3)^4 [x^3, y^6]`; without the
    /// outer cube it fails in S4, e.g. at `x = (3 4), y = (2 3)`. See
    /// [`LawSet::s4_literal_middle_law`].
    pub fn s4_laws() -> LawSet {
        Self::from_texts(
            "S4 laws",
            &["x^12 = 1", "((x^3 y^3)^4 [x^3, y^6])^3 = 1", "[[x,y]^3, y^3, y^2] = 1"],
        )
    }

    /// The variety generated by the dihedral group of order 8.
    pub fn dihedral_d() -> LawSet {
        Self::from_texts("D", &["x^4 = 1", "[x^2, y] = 1"])
    }

    /// Laws inherited by 2-subgroups of groups in var S4 after the cube
    /// substitution.
    pub fn cubed_two_group_laws() -> LawSet {
        Self::from_texts("cubed S4 laws", &["x^4 = 1", "((x y)^4 [x, y^2])^3 = 1"])
    }

    /// `(x^3 y^3)^4 [x^3, y^6]^3 = 1` with the cube on the commutator only.
    /// Not a law of S4; kept so reports can show that.
    pub fn s4_literal_middle_law() -> Law {
        parse_law("(x^3 y^3)^4 [x^3, y^6]^3 = 1").expect("parses")
    }

    /// Abelian groups of exponent `n`.
    pub fn abelian_exponent(n: u32) -> LawSet {
        LawSet {
            name: format!("A{n}"),
            laws: vec![
                parse_law("[x, y] = 1").expect("parses"),
                Law::new(Word::var("x").pow(n as i64)),
            ],
        }
    }
}
