//! Relation files.
//!
//! ```text
//! rel rm1: +1*a(1,3)^2 -1*a(1,0)*a(2,1)
//! ```
//!
//! One relation per line; `#` starts a comment. A parsed file whose content
//! equals a generated family (ids and polynomials) carries that family's tag,
//! anything else is `external`.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{
    Family, Monomial, Polynomial, Relation, RelationError, RelationFamily, RelationSet, VarRef,
};
use crate::index::Index;

pub fn serialize_relations(rs: &RelationSet) -> String {
    let mut out = String::new();
    for r in rs {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_relations(text: &str) -> Result<RelationSet, RelationError> {
    let mut relations = Vec::new();
    let mut ids = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let err = |message: String| RelationError::Syntax {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("rel ")
            .ok_or_else(|| err(format!("expected `rel <id>: ...`, got {line:?}")))?;
        let (id, body) = rest
            .split_once(':')
            .ok_or_else(|| err("missing `:` after relation id".into()))?;
        let id = id.trim();
        if id.is_empty()
            || !id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(err(format!("bad relation id {id:?}")));
        }
        if !ids.insert(id.to_string()) {
            return Err(err(format!("duplicate relation id {id:?}")));
        }
        let poly = parse_polynomial(body).map_err(err)?;
        if poly.is_zero() {
            return Err(err(format!("relation {id} is zero")));
        }
        relations.push(Relation {
            id: id.to_string(),
            poly,
        });
    }
    let parsed = RelationSet::from_relations(RelationFamily::External, relations);
    let family = generated()
        .iter()
        .find(|g| {
            g.len() == parsed.len()
                && g.iter()
                    .zip(&parsed)
                    .all(|(x, y)| x.id == y.id && x.poly == y.poly)
        })
        .map_or(RelationFamily::External, RelationSet::family);
    Ok(RelationSet::from_relations(
        family,
        parsed.relations().to_vec(),
    ))
}

fn generated() -> &'static [RelationSet] {
    static SETS: OnceLock<Vec<RelationSet>> = OnceLock::new();
    SETS.get_or_init(|| {
        RelationFamily::GENERATED
            .map(RelationFamily::generate)
            .to_vec()
    })
}

fn parse_polynomial(body: &str) -> Result<Polynomial, String> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(Polynomial::zero());
    }
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (pos, c) in compact.char_indices().skip(1) {
        if c == '+' || c == '-' {
            terms.push(&compact[start..pos]);
            start = pos;
        }
    }
    terms.push(&compact[start..]);
    let mut poly = Polynomial::zero();
    for t in terms {
        let (m, c) = parse_term(t)?;
        poly = poly + Polynomial::from_terms([(m, c)]);
    }
    Ok(poly)
}

fn parse_term(t: &str) -> Result<(Monomial, BigInt), String> {
    let (negative, body) = match t.as_bytes().first() {
        Some(b'+') => (false, &t[1..]),
        Some(b'-') => (true, &t[1..]),
        _ => (false, t),
    };
    let mut factors = body.split('*');
    let first = factors.next().unwrap_or("");
    let mut powers = Vec::new();
    let coeff: BigInt = if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        first
            .parse()
            .map_err(|_| format!("bad coefficient {first:?}"))?
    } else {
        powers.push(parse_factor(first)?);
        BigInt::from(1)
    };
    for f in factors {
        powers.push(parse_factor(f)?);
    }
    Ok((
        Monomial::from_powers(powers),
        if negative { -coeff } else { coeff },
    ))
}

fn parse_factor(f: &str) -> Result<(VarRef, u32), String> {
    let (var, exp) = match f.split_once('^') {
        Some((v, e)) => {
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in {f:?}"))?;
            if e == 0 {
                return Err(format!("zero exponent in {f:?}"));
            }
            (v, e)
        }
        None => (f, 1),
    };
    let family = match var.as_bytes().first() {
        Some(b'a') => Family::A,
        Some(b'b') => Family::B,
        _ => return Err(format!("unknown variable {var:?}")),
    };
    let inner = var[1..]
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("malformed variable {var:?}"))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| format!("malformed variable {var:?}"))?;
    let component = |s: &str| match s {
        "0" | "1" | "2" | "3" => Ok(s.parse::<i64>().unwrap()),
        _ => Err(format!("index {s:?} out of range 0..3 in {var:?}")),
    };
    let index = Index::new(component(i)?, component(j)?);
    Ok((VarRef { family, index }, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::mumford_relations;

    #[test]
    fn format_example() {
        let p = Polynomial::a(1, 3).pow(2) - Polynomial::a(1, 0) * Polynomial::a(2, 1);
        let rs = RelationSet::from_polys(RelationFamily::External, "r", [p]);
        assert_eq!(
            serialize_relations(&rs),
            "rel r1: +1*a(1,3)^2 -1*a(1,0)*a(2,1)\n"
        );
    }

    #[test]
    fn round_trips() {
        for family in RelationFamily::GENERATED {
            let rs = family.generate();
            let text = serialize_relations(&rs);
            assert_eq!(text.lines().count(), rs.len());
            assert_eq!(parse_relations(&text).unwrap(), rs);
        }
        let edited = serialize_relations(&mumford_relations()).replace("rel m26:", "rel x:");
        assert_eq!(
            parse_relations(&edited).unwrap().family(),
            RelationFamily::External
        );
    }

    #[test]
    fn lenient_input() {
        let rs = parse_relations("# comment\nrel x: a(0,0)*a(0,0) - 2*b(1,2)^1\n").unwrap();
        assert_eq!(rs.family(), RelationFamily::External);
        assert_eq!(
            rs.relations()[0].poly,
            Polynomial::a(0, 0).pow(2) - 2 * Polynomial::b(1, 2)
        );
    }

    #[test]
    fn syntax_errors() {
        let bad = [
            "rel r1: +1*a(4,0)",
            "rel r1: +1*c(0,0)",
            "rel r1 +1*a(0,0)",
            "relation r1: +1*a(0,0)",
            "rel r1: +1*a(0,0)^0",
            "rel r1: 0",
            "rel r1: +1*a(0,0)\nrel r1: +1*a(0,1)",
            "set rm\nrel r1: +1*a(0,0)",
            "rel r1: +1*a(0,0",
            "rel r1: ",
        ];
        for text in bad {
            assert!(
                matches!(parse_relations(text), Err(RelationError::Syntax { .. })),
                "{text:?}"
            );
        }
        match parse_relations("\n\nrel r1: +1*a(4,0)") {
            Err(RelationError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
