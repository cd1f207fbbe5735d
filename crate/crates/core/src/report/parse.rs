//! Text inputs: weight vectors, exponent lists, family parameters and
//! binomials. Errors carry a 1-based column.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{BresinskyData, FreeExponents, MonomialCurve};
use crate::kernel::{Binomial, Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    NVector { n: [u64; 4] },
    AMatrix { a: FreeExponents },
    FamilyC { c: u64 },
}

impl std::fmt::Display for Input {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Input::NVector { n } => write!(f, "{},{},{},{}", n[0], n[1], n[2], n[3]),
            Input::AMatrix { a } => {
                let parts: Vec<String> =
                    a.named().iter().map(|(k, v)| format!("{k}={v}")).collect();
                f.write_str(&parts.join(","))
            }
            Input::FamilyC { c } => write!(f, "c={c}"),
        }
    }
}

/// Comma separated fields with their starting columns.
fn fields(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == ',' {
            out.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &text[start..]));
    out.into_iter()
        .map(|(s, f)| {
            let lead = f.len() - f.trim_start().len();
            (base + text[..s + lead].chars().count(), f.trim())
        })
        .collect()
}

fn numeral(col: usize, s: &str) -> Result<u64, ParseError> {
    if s.is_empty() {
        return err(col, "expected a number");
    }
    if let Some(bad) = s.chars().position(|c| !c.is_ascii_digit()) {
        return err(col + bad, format!("unexpected character in numeral {s:?}"));
    }
    s.parse::<u64>()
        .or_else(|_| err(col, format!("numeral {s} does not fit in 64 bits")))
}

fn leading_ws(text: &str) -> usize {
    text.chars().take_while(|c| c.is_whitespace()).count()
}

/// `n1,n2,n3,n4`.
pub fn parse_n(text: &str) -> Result<[u64; 4], ParseError> {
    let t = text.trim();
    let base = 1 + leading_ws(text);
    let fs = fields(t, base);
    if fs.len() != 4 {
        return err(
            base,
            format!("expected 4 comma separated entries, found {}", fs.len()),
        );
    }
    let mut n = [0u64; 4];
    for (k, (col, f)) in fs.iter().enumerate() {
        n[k] = numeral(*col, f)?;
        if n[k] == 0 {
            return err(*col, "entries must be positive");
        }
    }
    if let Err(e) = MonomialCurve::new(&n) {
        return err(base, e.to_string());
    }
    Ok(n)
}

const FREE_KEYS: [&str; 8] = ["a13", "a14", "a21", "a23", "a32", "a34", "a41", "a42"];
const SUM_KEYS: [&str; 4] = ["a1", "a2", "a3", "a4"];

/// `a13=..,a14=..,a21=..,a23=..,a32=..,a34=..,a41=..,a42=..`, optionally with
/// `a1..a4`, which must then agree with the sums.
pub fn parse_a(text: &str) -> Result<FreeExponents, ParseError> {
    let t = text.trim();
    let base = 1 + leading_ws(text);
    let mut free: [Option<u64>; 8] = [None; 8];
    let mut sums: [Option<(usize, u64)>; 4] = [None; 4];
    for (col, f) in fields(t, base) {
        let Some((k, v)) = f.split_once('=') else {
            return err(col, format!("expected key=value, found {f:?}"));
        };
        let key = k.trim();
        let vcol = col + k.chars().count() + 1 + leading_ws(v);
        let val = numeral(vcol, v.trim())?;
        if val == 0 {
            return err(vcol, format!("{key} must be positive"));
        }
        if let Some(i) = FREE_KEYS.iter().position(|&x| x == key) {
            if free[i].replace(val).is_some() {
                return err(col, format!("{key} given twice"));
            }
        } else if let Some(i) = SUM_KEYS.iter().position(|&x| x == key) {
            if sums[i].replace((vcol, val)).is_some() {
                return err(col, format!("{key} given twice"));
            }
        } else {
            return err(col, format!("unknown key {key:?}"));
        }
    }
    let end = base + t.chars().count();
    let mut v = [0u64; 8];
    for (i, x) in free.iter().enumerate() {
        match x {
            Some(x) => v[i] = *x,
            None => return err(end, format!("missing {}", FREE_KEYS[i])),
        }
    }
    let e = FreeExponents {
        a13: v[0],
        a14: v[1],
        a21: v[2],
        a23: v[3],
        a32: v[4],
        a34: v[5],
        a41: v[6],
        a42: v[7],
    };
    let expect = [e.a21 + e.a41, e.a32 + e.a42, e.a13 + e.a23, e.a14 + e.a34];
    for (i, s) in sums.iter().enumerate() {
        if let Some((col, val)) = s {
            if *val != expect[i] {
                return err(
                    *col,
                    format!(
                        "{} = {val} disagrees with the sum {}",
                        SUM_KEYS[i], expect[i]
                    ),
                );
            }
        }
    }
    Ok(e)
}

/// Family parameters need `c >= 2` and `227` not dividing `c + 80`.
pub fn check_family_c(c: u64) -> Result<(), String> {
    if c < 2 {
        return Err(format!("c = {c} is below 2"));
    }
    if (c + 80).is_multiple_of(227) {
        return Err(format!("227 divides c + 80 = {}", c + 80));
    }
    Ok(())
}

/// `c=N`.
pub fn parse_c(text: &str) -> Result<u64, ParseError> {
    let t = text.trim();
    let base = 1 + leading_ws(text);
    let Some((k, v)) = t.split_once('=') else {
        return err(base, "expected c=N");
    };
    if k.trim() != "c" {
        return err(base, format!("expected key c, found {:?}", k.trim()));
    }
    let col = base + k.chars().count() + 1 + leading_ws(v);
    let c = numeral(col, v.trim())?;
    check_family_c(c).or_else(|m| err(col, m))?;
    Ok(c)
}

/// Any of the three input forms.
pub fn parse_input(text: &str) -> Result<Input, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return err(1, "empty input");
    }
    let key = t.split('=').next().unwrap_or("").trim();
    if t.contains('=') && key == "c" {
        parse_c(text).map(|c| Input::FamilyC { c })
    } else if t.contains('=') {
        parse_a(text).map(|a| Input::AMatrix { a })
    } else {
        parse_n(text).map(|n| Input::NVector { n })
    }
}

/// Exponents for the family member at `c`.
pub fn family_data(c: u64) -> Result<BresinskyData, String> {
    check_family_c(c)?;
    BresinskyData::from_free(FreeExponents {
        a13: 1,
        a14: c - 1,
        a21: 2 * c + 3,
        a23: 2,
        a32: 1,
        a34: 1,
        a41: 1,
        a42: c - 1,
    })
    .map_err(|e| e.to_string())
}

/// `(3c^2-4c+2, 6c^2+9c+2, 4c^2+5c-3, 6c^2+6c-11)`.
pub fn family_n(c: u64) -> [u64; 4] {
    let c2 = c * c;
    [
        3 * c2 - 4 * c + 2,
        6 * c2 + 9 * c + 2,
        4 * c2 + 5 * c - 3,
        6 * c2 + 6 * c - 11,
    ]
}

fn parse_monomial(text: &str, col: usize) -> Result<Monomial, ParseError> {
    let mut exps = [0u64; 4];
    let t = text.trim();
    let base = col + leading_ws(text);
    if t == "1" {
        return Ok(Monomial::one(4));
    }
    if t.is_empty() {
        return err(base, "expected a monomial");
    }
    let mut pos = 0usize;
    for factor in t.split(|c: char| c == '*' || c.is_whitespace()) {
        let fcol = base + t[..pos].chars().count();
        pos += factor.len() + 1;
        if factor.is_empty() {
            continue;
        }
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => (v, numeral(fcol + v.chars().count() + 1, e)?),
            None => (factor, 1),
        };
        let idx = match var {
            "x1" => 0,
            "x2" => 1,
            "x3" => 2,
            "x4" => 3,
            _ => return err(fcol, format!("unknown variable {var:?}, expected x1..x4")),
        };
        exps[idx] = exps[idx].checked_add(exp).ok_or(ParseError {
            column: fcol,
            message: "exponent overflow".into(),
        })?;
    }
    Monomial::new(&exps).or_else(|e| err(base, e.to_string()))
}

/// `M` or `M - N` over `x1..x4`; a leading `-` with `+` is accepted too.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let t = text.replace('\u{2212}', "-");
    let col0 = 1;
    let body = t.trim_end();
    let lead = leading_ws(body);
    let rest = &body[lead..];
    if let Some(stripped) = rest.strip_prefix('-') {
        let Some((a, b)) = stripped.split_once('+') else {
            return err(col0 + lead, "a negated monomial alone is not a generator");
        };
        let ca = col0 + lead + 1;
        let cb = ca + a.chars().count() + 1;
        let minus = parse_monomial(a, ca)?;
        let plus = parse_monomial(b, cb)?;
        return Binomial::new(plus, minus)
            .map(Poly::Binomial)
            .or_else(|e| err(col0 + lead, e.to_string()));
    }
    if rest.contains('+') {
        return err(
            col0 + lead + rest.find('+').unwrap_or(0),
            "expected a difference of monomials",
        );
    }
    match rest.split_once('-') {
        None => parse_monomial(rest, col0 + lead).map(Poly::Monomial),
        Some((a, b)) => {
            let ca = col0 + lead;
            let cb = ca + a.chars().count() + 1;
            let plus = parse_monomial(a, ca)?;
            let minus = parse_monomial(b, cb)?;
            Binomial::new(plus, minus)
                .map(Poly::Binomial)
                .or_else(|e| err(ca, e.to_string()))
        }
    }
}

/// One generator per line or separated by `;`. `#` starts a comment.
/// Errors report the column within the offending entry, prefixed with its
/// line.
pub fn parse_poly_list(text: &str) -> Result<Vec<Poly>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for part in line.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            out.push(parse_poly(part).map_err(|e| ParseError {
                column: e.column,
                message: format!("line {}: {}", ln + 1, e.message),
            })?);
        }
    }
    if out.is_empty() {
        return err(1, "no generators");
    }
    Ok(out)
}
