use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use super::CliError;
use crate::ring_core::GradedPoly;
use crate::verdict::Sign;

/// Parse JSON with a field path and position in the error message.
pub fn parse_json<T: DeserializeOwned>(label: &str, text: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        // Tagged enums are buffered before they are checked, which loses the position.
        let position = if inner.line() == 0 {
            String::new()
        } else {
            format!(" (line {}, column {})", inner.line(), inner.column())
        };
        CliError::Usage(format!("{label}: malformed JSON at field `{}`{position}: {inner}", e.path()))
    })?;
    de.end().map_err(|e| CliError::Usage(format!("{label}: {e}")))?;
    Ok(value)
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&path.display().to_string(), &text)
}

pub fn parse_signs(s: &str) -> Result<Vec<Sign>, CliError> {
    s.split(',')
        .map(|t| Sign::parse(t).ok_or_else(|| CliError::Usage(format!("invalid sign `{t}` (use + or -)"))))
        .collect()
}

/// Parse an inline Laurent polynomial in `S`, e.g. `1 + 2S^3 - S^-1`.
pub fn parse_inline_poly(s: &str) -> Result<GradedPoly, CliError> {
    let bad = |m: &str| CliError::Usage(format!("invalid polynomial `{s}`: {m}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut poly = GradedPoly::zero();
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let (coeff_part, var_part) = match body.find(['S', 's']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
        let coeff: i64 = match (coeff_part.is_empty(), var_part.is_some()) {
            (true, true) => 1,
            (true, false) => return Err(bad("empty term")),
            _ => coeff_part.parse().map_err(|_| bad(&format!("bad coefficient `{coeff_part}`")))?,
        };
        let exponent: i64 = match var_part {
            None => 0,
            Some("") => 1,
            Some(rest) => rest
                .strip_prefix('^')
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| bad(&format!("bad exponent `{rest}`")))?,
        };
        poly.add_term(exponent, (if negative { -coeff } else { coeff }).into());
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_polynomials() {
        let p = parse_inline_poly("1+S^3+S^-1").unwrap();
        assert_eq!(p, GradedPoly::from_terms([(-1, 1), (0, 1), (3, 1)]));
        let p = parse_inline_poly("2S^2 - S + 3*S^4 - 4").unwrap();
        assert_eq!(p, GradedPoly::from_terms([(0, -4), (1, -1), (2, 2), (4, 3)]));
        assert!(parse_inline_poly("").is_err());
        assert!(parse_inline_poly("1+").is_err());
        assert!(parse_inline_poly("S^x").is_err());
    }

    #[test]
    fn json_errors_name_the_field() {
        #[derive(serde::Deserialize, Debug)]
        #[allow(dead_code)]
        struct Probe {
            n: u32,
        }
        let err = parse_json::<Probe>("probe", "{\n  \"n\": \"six\"\n}").unwrap_err();
        let CliError::Usage(msg) = err else { panic!("usage error expected") };
        assert!(msg.contains("field `n`") && msg.contains("line 2"), "{msg}");
    }
}
