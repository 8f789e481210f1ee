//! Words over a finite list of named generators.

use std::fmt;

use crate::error::{Error, Result};
use crate::plmap::LineMap;

/// A nonzero letter: `+k` is generator `k-1`, `-k` its inverse.
pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(gen: usize, inverse: bool) -> Self {
        let l = gen as Letter + 1;
        Word(vec![if inverse { -l } else { l }])
    }

    pub fn power(gen: usize, n: i64) -> Self {
        let l = gen as Letter + 1;
        let l = if n < 0 { -l } else { l };
        Word(vec![l; n.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Concatenation followed by free cancellation at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn free_reduce(&self) -> Word {
        Word::empty().concat(self)
    }

    /// The map `g_{w_1} ∘ g_{w_2} ∘ ⋯`: the rightmost letter acts first.
    pub fn eval<M: LineMap>(&self, gens: &[M]) -> M {
        let invs: Vec<M> = gens.iter().map(LineMap::inverse).collect();
        self.eval_with(gens, &invs)
    }

    pub fn eval_with<M: LineMap>(&self, gens: &[M], invs: &[M]) -> M {
        self.0.iter().fold(M::identity(), |acc, &l| {
            let g = (l.unsigned_abs() - 1) as usize;
            acc.compose(if l > 0 { &gens[g] } else { &invs[g] })
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses `name`, `name^k` factors joined by `*`; `1` is the empty word.
    pub fn parse(s: &str, names: &[String]) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut out = Word::empty();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(format!("word {s:?}"), format!("bad exponent in {factor:?}")))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::parse(format!("word {s:?}"), format!("unknown generator {name:?}")))?;
            out = out.concat(&Word::power(idx, exp));
        }
        Ok(out)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    /// Runs of one letter are written as powers: `x0^-2*x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let g = (letters[i].unsigned_abs() - 1) as usize;
            let name = self.names.get(g).map_or_else(|| format!("g{g}"), Clone::clone);
            let exp = (j - i) as i64 * letters[i].signum() as i64;
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Default generator names `g0, g1, …`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

/// All freely reduced words of length `1..=max_len` over `n` generators and
/// their inverses, shortest first, in a fixed order.
pub fn reduced_words(n: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=n as Letter).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.0.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All positive words of length `1..=max_len` over `n` generators.
pub fn positive_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 1..=n as Letter {
                let mut v = w.0.clone();
                v.push(g);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // 4 + 12 + 36
        assert_eq!(reduced_words(2, 3).len(), 52);
        assert_eq!(positive_words(2, 12).len(), (1 << 13) - 2);
    }

    #[test]
    fn parse_and_print() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::parse("a^2*b^-1*b*a", &names).unwrap();
        assert_eq!(w, Word(vec![1, 1, 1]));
        assert_eq!(w.display(&names).to_string(), "a^3");
        let v = Word::parse("a^-2*b", &names).unwrap();
        assert_eq!(v.display(&names).to_string(), "a^-2*b");
        assert_eq!(Word::parse("1", &names).unwrap(), Word::empty());
        assert!(Word::parse("c", &names).is_err());
        assert_eq!(v.concat(&v.inverse()), Word::empty());
    }
}
