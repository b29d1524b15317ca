use std::collections::{BTreeMap, HashMap};

use crate::field::{Field, FieldElement, FieldError};

use super::{Polynomial, RelationError, RelationFamily, RelationSet, VarRef};

/// A source of values for relation variables.
pub trait Assignment {
    fn value(&self, v: VarRef) -> Option<&FieldElement>;
}

impl Assignment for BTreeMap<VarRef, FieldElement> {
    fn value(&self, v: VarRef) -> Option<&FieldElement> {
        self.get(&v)
    }
}

impl Assignment for HashMap<VarRef, FieldElement> {
    fn value(&self, v: VarRef) -> Option<&FieldElement> {
        self.get(&v)
    }
}

/// The exact value of `poly` at `assignment` in `field`.
pub fn evaluate(
    poly: &Polynomial,
    assignment: &impl Assignment,
    field: &Field,
) -> Result<FieldElement, RelationError> {
    let mut total = field.zero();
    for (m, c) in poly.terms() {
        let mut term = field.from_bigint(c);
        for &(v, e) in m.powers() {
            let x = assignment
                .value(v)
                .ok_or(RelationError::MissingVariable(v))?;
            if !field.contains(x) {
                return Err(FieldError::FieldMismatch.into());
            }
            term = field.mul(&term, &field.pow_u64(x, e as u64));
        }
        total = field.add(&total, &term);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub id: String,
    pub residual: FieldElement,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Per-relation residuals, ordered by relation id (`m2` before `m10`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub family: RelationFamily,
    pub checks: Vec<RelationCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }
}

fn id_sort_key(id: &str) -> (&str, u64, &str) {
    let stem = id.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &id[stem.len()..];
    (stem, digits.parse().unwrap_or(0), id)
}

/// Evaluates every relation of `rs`; the report passes iff every residual is
/// exactly zero.
pub fn verify(
    assignment: &impl Assignment,
    rs: &RelationSet,
    field: &Field,
) -> Result<VerificationReport, RelationError> {
    let mut checks = rs
        .iter()
        .map(|r| {
            Ok(RelationCheck {
                id: r.id.clone(),
                residual: evaluate(&r.poly, assignment, field)?,
            })
        })
        .collect::<Result<Vec<_>, RelationError>>()?;
    checks.sort_by(|x, y| id_sort_key(&x.id).cmp(&id_sort_key(&y.id)));
    Ok(VerificationReport {
        family: rs.family(),
        checks,
    })
}
