//! Word and surd literals.

use std::sync::OnceLock;

use num_bigint::BigInt;
use regex::Regex;
use valkit_core::{PeriodicWord, QuadSurd};

/// Parses `[a1,a2,...]`.
pub fn parse_word(s: &str) -> Result<PeriodicWord, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("word literal must look like [a1,a2,...], got {s:?}"))?;
    let letters = inner
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("bad letter {p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    PeriodicWord::new(letters).map_err(|e| e.to_string())
}

fn surd_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^\(?\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)?\s*(?:/\s*([+-]?\d+))?$").unwrap()
    })
}

/// Parses `(p+q*sqrt(d))/r`; the sign between the terms may be `-` and `/r`
/// may be omitted.
pub fn parse_surd(s: &str) -> Result<QuadSurd, String> {
    let caps = surd_pattern()
        .captures(s.trim())
        .ok_or_else(|| format!("surd literal must look like (p+q*sqrt(d))/r, got {s:?}"))?;
    let int = |i: usize| -> BigInt { caps[i].parse().unwrap() };
    let mut q = int(3);
    if &caps[2] == "-" {
        q = -q;
    }
    let r = caps.get(5).map_or(BigInt::from(1), |m| m.as_str().parse().unwrap());
    let x = QuadSurd::new(int(1), q, r, int(4)).map_err(|e| e.to_string())?;
    if x.is_rational() {
        return Err(format!("{s:?} is rational"));
    }
    Ok(x)
}
