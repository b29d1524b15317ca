//! Element grammar and the line-oriented field file.
//!
//! ```text
//! # comment
//! prime 7
//! ext t 1 0 1        # optional: F_7[t]/(1 + 0*t + t^2)
//! ```
//!
//! Elements of a prime field are decimal residues; elements of an extension
//! are `[c0,c1,...,c_{n-1}]`. A bare decimal in an extension denotes a
//! constant. Signed and unreduced integers are accepted and reduced mod p.

use num_bigint::BigInt;

use super::{Field, FieldElement, FieldError};

fn parse_int(s: &str) -> Result<BigInt, FieldError> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FieldError::Syntax(format!("not an integer: {s:?}")));
    }
    s.parse()
        .map_err(|_| FieldError::Syntax(format!("not an integer: {s:?}")))
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl Field {
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| {
                FieldError::Syntax(format!("unterminated coefficient list: {s:?}"))
            })?;
            let coeffs = inner
                .split(',')
                .map(parse_int)
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != self.degree() {
                return Err(FieldError::CoefficientCountMismatch {
                    expected: self.degree(),
                    found: coeffs.len(),
                });
            }
            let p = self.characteristic();
            return self.from_coeffs(coeffs.iter().map(|c| super::reduce_signed(c, p)).collect());
        }
        Ok(self.from_bigint(&parse_int(s)?))
    }

    pub fn format_element(&self, a: &FieldElement) -> String {
        if self.degree() == 1 {
            return a.coeffs()[0].to_string();
        }
        let parts: Vec<String> = a.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Parses a field file. `check_irreducible` is forwarded to [`Field::extend`].
pub fn parse_field_file(text: &str, check_irreducible: bool) -> Result<Field, FieldError> {
    let mut lines = text.lines().map(strip_comment).filter(|l| !l.is_empty());
    let first = lines
        .next()
        .ok_or_else(|| FieldError::Syntax("empty field file".into()))?;
    let mut words = first.split_whitespace();
    if words.next() != Some("prime") {
        return Err(FieldError::Syntax(format!(
            "expected `prime <p>`, got {first:?}"
        )));
    }
    let p = words
        .next()
        .ok_or_else(|| FieldError::Syntax("missing characteristic".into()))?;
    if words.next().is_some() {
        return Err(FieldError::Syntax(format!("trailing input on {first:?}")));
    }
    let p = parse_int(p)?
        .to_biguint()
        .ok_or_else(|| FieldError::Syntax("negative characteristic".into()))?;
    let base = Field::prime(p)?;

    let Some(ext_line) = lines.next() else {
        return Ok(base);
    };
    if let Some(extra) = lines.next() {
        return Err(FieldError::Syntax(format!("unexpected line {extra:?}")));
    }
    let mut words = ext_line.split_whitespace();
    if words.next() != Some("ext") {
        return Err(FieldError::Syntax(format!(
            "expected `ext <name> <c0> ... <cn>`, got {ext_line:?}"
        )));
    }
    let name = words
        .next()
        .ok_or_else(|| FieldError::Syntax("missing generator name".into()))?;
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(FieldError::Syntax(format!("bad generator name {name:?}")));
    }
    let coeffs = words.map(parse_int).collect::<Result<Vec<_>, _>>()?;
    base.extend(name, &coeffs, check_irreducible)
}

pub fn format_field_file(field: &Field) -> String {
    let mut out = format!("prime {}\n", field.characteristic());
    if let Some(ext) = field.extension() {
        out.push_str("ext ");
        out.push_str(&ext.name);
        for c in &ext.modulus {
            out.push(' ');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}
