use std::sync::Arc;

use num::BigInt;

use super::{MultiPoly, PolyError, PolyRing};

/// Parses the shared polynomial grammar: terms are `coef*var^exp*var^exp...`
/// joined by `+`/`-`; the coefficient is optional when it is 1, `^exp` is
/// optional when the exponent is 1, and there is no implicit multiplication.
/// Integer coefficients only; rational constants can be written at the
/// rational-function level with `/`.
pub fn parse_poly(ring: &Arc<PolyRing>, input: &str) -> Result<MultiPoly, PolyError> {
    let toks = tokenize(input).map_err(PolyError::Parse)?;
    let mut out = MultiPoly::zero(ring);
    let mut pos = 0usize;

    // leading sign
    let mut sign = 1i64;
    loop {
        if pos >= toks.len() {
            if out.is_zero() && sign == 1 && toks.is_empty() {
                return Err(PolyError::Parse("empty polynomial".into()));
            }
            break;
        }
        match &toks[pos] {
            Tok::Plus => {
                pos += 1;
                continue;
            }
            Tok::Minus => {
                sign = -sign;
                pos += 1;
                continue;
            }
            _ => {}
        }
        // one term: factor (* factor)*
        let mut coef = BigInt::from(sign);
        let mut mono = vec![0u32; ring.nvars()];
        sign = 1;
        loop {
            match toks.get(pos) {
                Some(Tok::Int(n)) => {
                    coef *= n;
                    pos += 1;
                }
                Some(Tok::Ident(name)) => {
                    let idx = ring.var_index(name).ok_or_else(|| {
                        PolyError::Parse(format!("unknown variable {name:?}"))
                    })?;
                    pos += 1;
                    let mut exp: u32 = 1;
                    if let Some(Tok::Caret) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Tok::Int(n)) => {
                                exp = u32::try_from(n.clone()).map_err(|_| {
                                    PolyError::Parse("exponent out of range".into())
                                })?;
                                pos += 1;
                            }
                            _ => return Err(PolyError::Parse("expected exponent".into())),
                        }
                    }
                    mono[idx] += exp;
                }
                other => {
                    return Err(PolyError::Parse(format!(
                        "unexpected token {other:?} in term"
                    )))
                }
            }
            match toks.get(pos) {
                Some(Tok::Star) => {
                    pos += 1;
                    continue;
                }
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
                other => {
                    return Err(PolyError::Parse(format!(
                        "unexpected token {other:?} after factor (implicit multiplication is not allowed)"
                    )))
                }
            }
        }
        let k = ring.field().from_bigint(&coef);
        let term = MultiPoly::from_terms(ring, vec![(mono, k)]);
        out = out.add(&term);
    }
    Ok(out)
}

/// Splits a rational-function expression at its top-level `/`, stripping one
/// optional layer of parentheses from each side. Returns (numerator text,
/// optional denominator text).
pub fn parse_ratfun_split(input: &str) -> Result<(String, Option<String>), PolyError> {
    let s = input.trim();
    let mut depth = 0i32;
    let mut split_at: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(PolyError::Parse("unbalanced parentheses".into()));
                }
            }
            '/' if depth == 0 => {
                if split_at.is_some() {
                    return Err(PolyError::Parse(
                        "more than one top-level '/' in rational function".into(),
                    ));
                }
                split_at = Some(i);
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(PolyError::Parse("unbalanced parentheses".into()));
    }
    let strip = |t: &str| -> String {
        let t = t.trim();
        if t.starts_with('(') && t.ends_with(')') {
            let inner = &t[1..t.len() - 1];
            if inner.find('(').is_none() && inner.find(')').is_none() {
                return inner.trim().to_string();
            }
        }
        t.to_string()
    };
    match split_at {
        None => Ok((strip(s), None)),
        Some(i) => Ok((strip(&s[..i]), Some(strip(&s[i + 1..])))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(s.parse().map_err(|e| format!("{e}"))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    #[test]
    fn grammar_round_trip() {
        let r = PolyRing::from_names(&["x", "y", "z"], FieldSpec::Q);
        for src in [
            "x^2*y-3*z+1",
            "-x+y",
            "2*x^10",
            "x*x*y", // repeated factors accumulate
            "7",
            "0",
        ] {
            let p = parse_poly(&r, src).unwrap();
            let back = parse_poly(&r, &p.to_string()).unwrap();
            assert_eq!(p, back, "round trip failed for {src}");
        }
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let r = PolyRing::from_names(&["x", "y"], FieldSpec::Q);
        assert!(parse_poly(&r, "2x").is_err());
        assert!(parse_poly(&r, "x y").is_err());
        assert!(parse_poly(&r, "w").is_err());
    }

    #[test]
    fn ratfun_splitting() {
        assert_eq!(
            parse_ratfun_split("t^2+1").unwrap(),
            ("t^2+1".to_string(), None)
        );
        assert_eq!(
            parse_ratfun_split("(2+t)/(1-t)").unwrap(),
            ("2+t".to_string(), Some("1-t".to_string()))
        );
        assert_eq!(
            parse_ratfun_split("-1/3").unwrap(),
            ("-1".to_string(), Some("3".to_string()))
        );
        assert!(parse_ratfun_split("1/2/3").is_err());
    }
}
