//! Resolution of command-line operands into values, with a running digest
//! of everything read.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use ordalab::braid::BraidWord;
use ordalab::literal::{parse_map, parse_set};
use ordalab::thompson::fixture;
use ordalab::{rational, AnyMap, ClosedSet, PLMap, PeriodicMap, Rational};

/// Failure reading operands; always reported as `status: error`.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<ordalab::Error> for InputError {
    fn from(e: ordalab::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type InputResult<T> = Result<T, InputError>;

#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

/// A family of maps of one representation.
pub enum Family {
    Line(Vec<PLMap>),
    Periodic(Vec<PeriodicMap>),
}

impl Inputs {
    fn record(&mut self, flag: &str, source: &str, content: &str) {
        for part in [flag, source, content] {
            self.hasher.update(part.as_bytes());
            self.hasher.update([0]);
        }
    }

    pub fn digest(self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.finalize()))
    }

    /// Contents of `operand` if it names a file, else the operand itself,
    /// with a location prefix for diagnostics.
    pub fn text(&mut self, flag: &str, operand: &str) -> InputResult<(String, String)> {
        let path = Path::new(operand);
        if !operand.trim_start().starts_with(['{', '[']) && path.is_file() {
            let content = fs::read_to_string(path).map_err(|e| InputError(format!("{operand}: {e}")))?;
            self.record(flag, "file", &content);
            Ok((content, operand.to_string()))
        } else {
            self.record(flag, "inline", operand);
            Ok((operand.to_string(), flag.to_string()))
        }
    }

    /// A fixture name, a file holding a map literal, or an inline literal.
    pub fn map(&mut self, flag: &str, operand: &str) -> InputResult<AnyMap> {
        if let Some(m) = fixture(operand) {
            self.record(flag, "fixture", operand);
            return Ok(m);
        }
        let (text, loc) = self.text(flag, operand)?;
        Ok(parse_map(&text, &loc)?)
    }

    pub fn line_map(&mut self, flag: &str, operand: &str) -> InputResult<PLMap> {
        match self.map(flag, operand)? {
            AnyMap::Line(f) => Ok(f),
            AnyMap::Periodic(_) => Err(InputError(format!("{flag}: expected a finite PL map, got a periodic one"))),
        }
    }

    /// Comma-separated operands; commas inside literals do not split.
    pub fn maps(&mut self, flag: &str, operand: &str) -> InputResult<Vec<AnyMap>> {
        split_list(operand)
            .iter()
            .enumerate()
            .map(|(i, op)| self.map(&format!("{flag}[{i}]"), op))
            .collect()
    }

    pub fn line_maps(&mut self, flag: &str, operand: &str) -> InputResult<Vec<PLMap>> {
        match family(flag, self.maps(flag, operand)?)? {
            Family::Line(v) => Ok(v),
            Family::Periodic(_) => Err(InputError(format!("{flag}: expected finite PL maps"))),
        }
    }

    pub fn set(&mut self, flag: &str, operand: &str) -> InputResult<ClosedSet> {
        let (text, loc) = self.text(flag, operand)?;
        Ok(parse_set(&text, &loc)?)
    }

    pub fn braid(&mut self, flag: &str, operand: &str) -> InputResult<BraidWord> {
        let (text, loc) = self.text(flag, operand)?;
        BraidWord::parse(text.trim()).map_err(|e| InputError(format!("{loc}: {e}")))
    }

    pub fn rational(&mut self, flag: &str, operand: &str) -> InputResult<Rational> {
        self.record(flag, "inline", operand);
        rational::parse(operand.trim()).map_err(|e| InputError(format!("{flag}: {e}")))
    }

    pub fn rationals(&mut self, flag: &str, operand: &str) -> InputResult<Vec<Rational>> {
        split_list(operand).iter().map(|op| self.rational(flag, op)).collect()
    }

    /// Plain value that affects the output, such as a depth or seed.
    pub fn param(&mut self, flag: &str, value: impl ToString) {
        self.record(flag, "param", &value.to_string());
    }
}

/// Groups maps that share a representation.
pub fn family(flag: &str, maps: Vec<AnyMap>) -> InputResult<Family> {
    if maps.iter().all(|m| m.as_line().is_some()) {
        Ok(Family::Line(maps.into_iter().filter_map(|m| m.as_line().cloned()).collect()))
    } else if maps.iter().all(|m| m.as_periodic().is_some()) {
        Ok(Family::Periodic(maps.into_iter().filter_map(|m| m.as_periodic().cloned()).collect()))
    } else {
        Err(InputError(format!("{flag}: cannot mix periodic and finite PL maps")))
    }
}

/// Splits at commas outside brackets, braces and quotes.
pub fn split_list(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut quoted = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '"' => quoted = !quoted,
            '{' | '[' if !quoted => depth += 1,
            '}' | ']' if !quoted => depth -= 1,
            ',' if !quoted && depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() || !parts.is_empty() {
        parts.push(cur.trim().to_string());
    }
    parts
}
