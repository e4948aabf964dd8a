//! Named groups: `S(n)`, `A(n)`, `C(n)`, `Dih(n)`, `Q8`, `V4`,
//! `direct(G, H, ...)` and `power(G, k)`.
//!
//! Short forms such as `S4`, `C3` or `Dih4` are accepted for the indexed
//! families.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Permutation;

/// Resolves a builtin group expression under default limits.
pub fn builtin(spec: &str) -> Result<FiniteGroup> {
    resolve(spec, &HashMap::new(), &Limits::default())
}

/// Resolves a group expression; bare identifiers are looked up in `named`
/// before being tried as builtin short forms.
pub fn resolve(
    spec: &str,
    named: &HashMap<String, FiniteGroup>,
    limits: &Limits,
) -> Result<FiniteGroup> {
    let mut p = SpecParser {
        src: spec,
        pos: 0,
        named,
        limits,
    };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != spec.len() {
        return Err(Error::Syntax {
            pos: p.pos,
            msg: "trailing input in group expression".into(),
        });
    }
    Ok(g)
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let n = n.max(1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![1, 2]])?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(1..=n).collect()])?);
    }
    Ok(FiniteGroup::generate_with(n, &gens, limits)?.with_name(format!("S({n})")))
}

pub fn alternating(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let n = n.max(1);
    let gens = (3..=n)
        .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup::generate_with(n, &gens, limits)?.with_name(format!("A({n})")))
}

pub fn cyclic(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let n = n.max(1);
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(n, &[(1..=n).collect()])?]
    } else {
        Vec::new()
    };
    Ok(FiniteGroup::generate_with(n, &gens, limits)?.with_name(format!("C({n})")))
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let g = match n {
        0 => return Err(Error::UnknownGroup("Dih(0)".into())),
        1 => cyclic(2, limits)?,
        2 => klein(limits)?,
        _ => {
            let rot = Permutation::from_cycles(n, &[(1..=n).collect()])?;
            let refl: Vec<usize> = (0..n).map(|i| (n - i) % n + 1).collect();
            let refl = Permutation::from_images(&refl)?;
            FiniteGroup::generate_with(n, &[rot, refl], limits)?
        }
    };
    Ok(g.with_name(format!("Dih({n})")))
}

pub fn klein(limits: &Limits) -> Result<FiniteGroup> {
    let a = Permutation::parse("(1 2)(3 4)", Some(4))?;
    let b = Permutation::parse("(1 3)(2 4)", Some(4))?;
    Ok(FiniteGroup::generate_with(4, &[a, b], limits)?.with_name("V4"))
}

/// Quaternion group in its right regular representation on
/// `1, i, j, k, -1, -i, -j, -k` (points 1..8).
pub fn quaternion(limits: &Limits) -> Result<FiniteGroup> {
    // unit = (negative, basis) with basis 0..4 for 1, i, j, k
    fn mul((sa, a): (bool, usize), (sb, b): (bool, usize)) -> (bool, usize) {
        const TABLE: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let (s, c) = TABLE[a][b];
        (s ^ sa ^ sb, c)
    }
    let point = |(s, c): (bool, usize)| c + if s { 4 } else { 0 } + 1;
    let unit = |p: usize| ((p - 1) >= 4, (p - 1) % 4);
    let right = |g| {
        let images: Vec<usize> = (1..=8).map(|p| point(mul(unit(p), g))).collect();
        Permutation::from_images(&images)
    };
    let i = right((false, 1))?;
    let j = right((false, 2))?;
    Ok(FiniteGroup::generate_with(8, &[i, j], limits)?.with_name("Q8"))
}

pub fn direct(factors: &[&FiniteGroup], limits: &Limits) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for g in factors {
        for x in g.generators() {
            gens.push(x.shifted(offset, degree));
        }
        offset += g.degree();
    }
    let name = format!(
        "direct({})",
        factors.iter().map(|g| g.label()).collect::<Vec<_>>().join(",")
    );
    Ok(FiniteGroup::generate_with(degree, &gens, limits)?.with_name(name))
}

pub fn power(g: &FiniteGroup, k: usize, limits: &Limits) -> Result<FiniteGroup> {
    if k == 0 {
        return Ok(FiniteGroup::trivial(1).with_name("1"));
    }
    let factors = vec![g; k];
    Ok(direct(&factors, limits)?.with_name(format!("power({},{k})", g.label())))
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
    named: &'a HashMap<String, FiniteGroup>,
    limits: &'a Limits,
}

impl SpecParser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a group name");
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a number");
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| Error::Syntax {
            pos: self.pos,
            msg: "number out of range".into(),
        })
    }

    fn group(&mut self) -> Result<FiniteGroup> {
        let name = self.ident()?;
        if self.eat('(') {
            let g = match name.as_str() {
                "direct" => {
                    let mut parts = vec![self.group()?];
                    while self.eat(',') {
                        parts.push(self.group()?);
                    }
                    let refs: Vec<&FiniteGroup> = parts.iter().collect();
                    direct(&refs, self.limits)?
                }
                "power" => {
                    let g = self.group()?;
                    if !self.eat(',') {
                        return self.err("expected `,` in power(G, k)");
                    }
                    let k = self.number()?;
                    power(&g, k, self.limits)?
                }
                family => {
                    let n = self.number()?;
                    self.family(family, n)?
                }
            };
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(g);
        }
        if let Some(g) = self.named.get(&name) {
            return Ok(g.clone());
        }
        match name.as_str() {
            "Q8" => return quaternion(self.limits),
            "V4" => return klein(self.limits),
            _ => {}
        }
        let split = name
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::UnknownGroup(name.clone()))?;
        let (family, digits) = name.split_at(split);
        let n: usize = digits
            .parse()
            .map_err(|_| Error::UnknownGroup(name.clone()))?;
        self.family(family, n)
            .map(|g| g.with_name(name.clone()))
    }

    fn family(&self, family: &str, n: usize) -> Result<FiniteGroup> {
        match family {
            "S" => symmetric(n, self.limits),
            "A" => alternating(n, self.limits),
            "C" => cyclic(n, self.limits),
            "Dih" | "D" => dihedral(n, self.limits),
            _ => Err(Error::UnknownGroup(format!("{family}({n})"))),
        }
    }
}
