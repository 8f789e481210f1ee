//! Artin braid words, Dehornoy handle reduction and the σ-order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A word in `σ_1, …, σ_{n-1}`: letter `i > 0` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Precondition(format!("a braid needs at least 2 strands, got {strands}")));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::Precondition(format!("letter {l} is not a generator of B_{strands}")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord::new(strands, Vec::new()).expect("strand count checked by caller")
    }

    pub fn generator(strands: usize, i: i32) -> Result<Self> {
        BraidWord::new(strands, vec![i])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        same_strands(self, other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn power(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let letters = base.letters.repeat(k.unsigned_abs() as usize);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Parses `n=<strands>` followed by signed generator indices.
    pub fn parse(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let head = tokens
            .next()
            .ok_or_else(|| Error::parse("braid word", "empty input; expected n=<strands>"))?;
        let strands: usize = head
            .strip_prefix("n=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse("braid word token 1", format!("expected n=<strands>, got {head:?}")))?;
        let letters = tokens
            .enumerate()
            .map(|(i, t)| {
                t.parse::<i32>()
                    .map_err(|_| Error::parse(format!("braid word token {}", i + 2), format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters).map_err(|e| Error::parse("braid word", e.to_string()))
    }

    /// The lowest generator index present, with its sign if all its
    /// occurrences share one.
    fn lowest_sign(&self) -> Option<(u32, Option<i32>)> {
        let low = self.letters.iter().map(|l| l.unsigned_abs()).min()?;
        let mut signs = self.letters.iter().filter(|l| l.unsigned_abs() == low).map(|l| l.signum());
        let first = signs.next().unwrap();
        Some((low, signs.all(|s| s == first).then_some(first)))
    }

    /// `Some(true)` for σ-positive, `Some(false)` for σ-negative, `None`
    /// for the empty word or a word with mixed signs at its lowest index.
    pub fn sigma_sign(&self) -> Option<bool> {
        self.lowest_sign().and_then(|(_, s)| s).map(|s| s > 0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

fn same_strands(u: &BraidWord, v: &BraidWord) -> Result<()> {
    if u.strands != v.strands {
        return Err(Error::Precondition(format!(
            "strand counts differ: {} and {}",
            u.strands, v.strands
        )));
    }
    Ok(())
}

/// Position pair `(p, q)` of the handle whose closing letter is leftmost.
fn find_handle(w: &[i32]) -> Option<(usize, usize)> {
    // stack of positions with nondecreasing |letter|; its top is the last
    // earlier position whose index is ≤ the current one
    let mut stack: Vec<usize> = Vec::new();
    for (q, &l) in w.iter().enumerate() {
        let i = l.unsigned_abs();
        while let Some(&top) = stack.last() {
            if w[top].unsigned_abs() > i {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&p) = stack.last() {
            if w[p] == -l {
                return Some((p, q));
            }
        }
        stack.push(q);
    }
    None
}

/// Replaces the handle `σ_i^e u σ_i^-e` at `(p, q)`: each `σ_{i+1}^d` in
/// `u` becomes `σ_{i+1}^-e σ_i^d σ_{i+1}^e`; higher letters stay.
fn reduce_handle(w: &[i32], p: usize, q: usize) -> Vec<i32> {
    let e = w[p].signum();
    let i = w[p].abs();
    let mut out = Vec::with_capacity(w.len() + 2 * (q - p));
    out.extend_from_slice(&w[..p]);
    for &l in &w[p + 1..q] {
        if l.abs() == i + 1 {
            let d = l.signum();
            out.extend_from_slice(&[-e * (i + 1), d * i, e * (i + 1)]);
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&w[q + 1..]);
    out
}

/// Handle reduction with a step budget. The result has no handles, so it
/// is empty, σ-positive or σ-negative.
pub fn handle_reduce(w: &BraidWord, budget: u64) -> Result<BraidWord> {
    let mut letters = w.letters.clone();
    let mut steps = 0u64;
    while let Some((p, q)) = find_handle(&letters) {
        if steps >= budget {
            return Err(Error::BudgetExceeded { budget });
        }
        steps += 1;
        letters = reduce_handle(&letters, p, q);
    }
    Ok(BraidWord {
        strands: w.strands,
        letters,
    })
}

pub fn is_trivial(w: &BraidWord, budget: u64) -> Result<bool> {
    Ok(handle_reduce(w, budget)?.is_empty())
}

/// Dehornoy order: `u < v` iff `u⁻¹v` is σ-positive.
pub fn braid_compare(u: &BraidWord, v: &BraidWord, budget: u64) -> Result<Ordering> {
    same_strands(u, v)?;
    let r = handle_reduce(&u.inverse().concat(v)?, budget)?;
    match r.lowest_sign() {
        None => Ok(Ordering::Equal),
        Some((_, Some(s))) if s > 0 => Ok(Ordering::Less),
        Some((_, Some(_))) => Ok(Ordering::Greater),
        Some((low, None)) => Err(Error::Postcondition(format!(
            "reduced word {r} still has σ_{low} with both signs"
        ))),
    }
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters.iter().map(|l| l.signum() as i64).sum()
}

/// `(σ_1 ⋯ σ_{n-1})^n`, generating the center of `B_n`.
pub fn center_generator(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::Precondition(format!("need n ≥ 2, got {n}")));
    }
    let cycle: Vec<i32> = (1..n as i32).collect();
    BraidWord::new(n, cycle.repeat(n))
}

/// Whether `w σ_i^r w⁻¹ σ_i^-r` is trivial for every generator `σ_i`.
pub fn commutes_with_generators(w: &BraidWord, r: u32, budget: u64) -> Result<bool> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    for i in 1..w.strands as i32 {
        let s = BraidWord::generator(w.strands, i)?.power(r.into());
        let commutator = w.concat(&s)?.concat(&w.inverse())?.concat(&s.inverse())?;
        if !is_trivial(&commutator, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image in `S_n` with `σ_i ↦ (i, i+1)`, as the one-line notation of the
/// resulting permutation of `1..=n` (strand positions after the braid).
pub fn permutation_projection(w: &BraidWord) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=w.strands).collect();
    for l in &w.letters {
        let i = l.unsigned_abs() as usize;
        perm.swap(i - 1, i);
    }
    perm
}

pub fn is_identity_permutation(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| v == i + 1)
}
