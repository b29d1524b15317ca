//! Level-4 and level-2 theta null points and their text files.
//!
//! ```text
//! a 0 0 [1,0]          # level 4: ten representatives, or all 16
//! b 0 1 5              # level 2 point
//! sq 0 1 25            # level 2 data: four squares ...
//! prod 0 0 0 1 5       # ... and six products b(00)·b(01), ...
//! ```

use std::collections::BTreeMap;

use crate::field::{Field, FieldElement};
use crate::index::Index;
use crate::relation::{Assignment, Family, VarRef};

use super::PipelineError;

fn slot(u: Index) -> usize {
    4 * u.i() as usize + u.j() as usize
}

/// Divides by the first nonzero entry.
fn normalize_projective(field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let inv = field.inv(lead).expect("nonzero");
    v.iter().map(|x| field.mul(x, &inv)).collect()
}

/// A level-4 theta null point (a_u), u in (Z/4Z)^2, with a_u = a_{-u}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPoint4 {
    field: Field,
    coords: Vec<FieldElement>,
}

impl ThetaPoint4 {
    /// Builds a point from any assignment covering u or -u for every index.
    /// Values given for both u and -u must agree.
    pub fn new(
        field: &Field,
        values: &BTreeMap<Index, FieldElement>,
    ) -> Result<Self, PipelineError> {
        for x in values.values() {
            field.check(x)?;
        }
        let mut coords = Vec::with_capacity(16);
        for u in Index::all() {
            let v = match (values.get(&u), values.get(&u.neg())) {
                (Some(x), Some(y)) if x != y => return Err(PipelineError::Asymmetric(u)),
                (Some(x), _) | (None, Some(x)) => x.clone(),
                (None, None) => return Err(PipelineError::MissingCoordinate(u.to_string())),
            };
            coords.push(v);
        }
        if coords.iter().all(FieldElement::is_zero) {
            return Err(PipelineError::AllZero);
        }
        Ok(ThetaPoint4 {
            field: field.clone(),
            coords,
        })
    }

    /// From the ten values at [`Index::symmetric_representatives`], in order.
    pub fn from_representatives(
        field: &Field,
        values: [FieldElement; 10],
    ) -> Result<Self, PipelineError> {
        let map = Index::symmetric_representatives().zip(values).collect();
        Self::new(field, &map)
    }

    pub fn from_fn(
        field: &Field,
        f: impl Fn(Index) -> FieldElement,
    ) -> Result<Self, PipelineError> {
        let map = Index::all().map(|u| (u, f(u))).collect();
        Self::new(field, &map)
    }

    pub fn all_ones(field: &Field) -> Self {
        Self::from_fn(field, |_| field.one()).expect("symmetric and nonzero")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, u: Index) -> &FieldElement {
        &self.coords[slot(u)]
    }

    /// a(i, j) with components taken mod 4.
    pub fn at(&self, i: i64, j: i64) -> &FieldElement {
        self.get(Index::new(i, j))
    }

    /// The representative of the projective class with first nonzero
    /// coordinate (in index order) equal to 1.
    pub fn normalized(&self) -> ThetaPoint4 {
        ThetaPoint4 {
            field: self.field.clone(),
            coords: normalize_projective(&self.field, &self.coords),
        }
    }

    pub fn projectively_equal(&self, other: &ThetaPoint4) -> bool {
        self.field == other.field && self.normalized().coords == other.normalized().coords
    }

    /// Applies a field map to every coordinate.
    pub fn map(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        ThetaPoint4 {
            field: target.clone(),
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

/// a(u) reads coordinate u; b(v) reads a(Mv), the √3 substitution.
impl Assignment for ThetaPoint4 {
    fn value(&self, v: VarRef) -> Option<&FieldElement> {
        Some(match v.family {
            Family::A => self.get(v.index),
            Family::B => self.get(v.index.apply_m()),
        })
    }
}

/// Labels of the level-2 coordinates, in storage order.
pub(super) const LEVEL2_LABELS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Pairs (k, l) of level-2 slots in [`Level2Data`] product order.
pub(super) const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A level-2 theta null point (b00, b01, b10, b11).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPoint2 {
    field: Field,
    coords: [FieldElement; 4],
}

impl ThetaPoint2 {
    pub fn new(field: &Field, coords: [FieldElement; 4]) -> Result<Self, PipelineError> {
        for x in &coords {
            field.check(x)?;
        }
        if coords.iter().all(FieldElement::is_zero) {
            return Err(PipelineError::AllZero);
        }
        Ok(ThetaPoint2 {
            field: field.clone(),
            coords,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coordinates in the order b00, b01, b10, b11.
    pub fn coords(&self) -> &[FieldElement; 4] {
        &self.coords
    }

    pub fn normalized(&self) -> ThetaPoint2 {
        let v = normalize_projective(&self.field, &self.coords);
        ThetaPoint2 {
            field: self.field.clone(),
            coords: v.try_into().expect("four coordinates"),
        }
    }

    pub fn projectively_equal(&self, other: &ThetaPoint2) -> bool {
        self.field == other.field && self.normalized().coords == other.normalized().coords
    }

    pub fn squares(&self) -> [FieldElement; 4] {
        self.coords.clone().map(|b| self.field.square(&b))
    }

    pub fn to_data(&self) -> Level2Data {
        let f = &self.field;
        Level2Data {
            squares: self.squares(),
            products: PAIRS.map(|(k, l)| f.mul(&self.coords[k], &self.coords[l])),
        }
    }
}

/// Squares b00², b01², b10², b11² and the products b00·b01, b00·b10,
/// b00·b11, b01·b10, b01·b11, b10·b11.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level2Data {
    pub squares: [FieldElement; 4],
    pub products: [FieldElement; 6],
}

impl Level2Data {
    /// b_k·b_l for slots k != l in either order.
    pub fn product(&self, k: usize, l: usize) -> &FieldElement {
        let key = (k.min(l), k.max(l));
        let pos = PAIRS
            .iter()
            .position(|&p| p == key)
            .expect("distinct slots");
        &self.products[pos]
    }

    /// squares[k]·squares[l] = products[kl]² for all six pairs.
    pub fn is_consistent(&self, field: &Field) -> bool {
        PAIRS
            .iter()
            .zip(&self.products)
            .all(|(&(k, l), p)| field.mul(&self.squares[k], &self.squares[l]) == field.square(p))
    }
}

/// Contents of a level-2 file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level2Input {
    Point(ThetaPoint2),
    Data(Level2Data),
}

fn syntax(line: usize, message: impl Into<String>) -> PipelineError {
    PipelineError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits off `n` whitespace-separated words; the remainder is the element.
fn split_words(line: &str, n: usize) -> Option<(Vec<&str>, &str)> {
    let mut rest = line.trim();
    let mut words = Vec::with_capacity(n);
    for _ in 0..n {
        let (w, r) = rest.split_once(char::is_whitespace)?;
        words.push(w);
        rest = r.trim_start();
    }
    Some((words, rest))
}

fn parse_component(s: &str, max: u8, line: usize) -> Result<u8, PipelineError> {
    match s.parse::<u8>() {
        Ok(v) if v <= max => Ok(v),
        _ => Err(syntax(
            line,
            format!("index component {s:?} out of range 0..{max}"),
        )),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_point4_file(text: &str, field: &Field) -> Result<ThetaPoint4, PipelineError> {
    let mut values = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let (words, elem) = split_words(line, 3)
            .filter(|(w, _)| w[0] == "a")
            .ok_or_else(|| syntax(n, format!("expected `a <i> <j> <element>`, got {line:?}")))?;
        let u = Index::new(
            parse_component(words[1], 3, n)? as i64,
            parse_component(words[2], 3, n)? as i64,
        );
        let x = field
            .parse_element(elem)
            .map_err(|e| syntax(n, e.to_string()))?;
        if values.insert(u, x).is_some() {
            return Err(syntax(n, format!("duplicate coordinate {u}")));
        }
    }
    ThetaPoint4::new(field, &values)
}

/// The ten representative coordinates, one per line.
pub fn format_point4(p: &ThetaPoint4) -> String {
    Index::symmetric_representatives()
        .map(|u| {
            format!(
                "a {} {} {}\n",
                u.i(),
                u.j(),
                p.field.format_element(p.get(u))
            )
        })
        .collect()
}

pub fn format_point2(b: &ThetaPoint2) -> String {
    LEVEL2_LABELS
        .iter()
        .zip(&b.coords)
        .map(|((i, j), x)| format!("b {i} {j} {}\n", b.field.format_element(x)))
        .collect()
}

pub fn format_level2_data(d: &Level2Data, field: &Field) -> String {
    let mut out = String::new();
    for ((i, j), x) in LEVEL2_LABELS.iter().zip(&d.squares) {
        out.push_str(&format!("sq {i} {j} {}\n", field.format_element(x)));
    }
    for (&(k, l), x) in PAIRS.iter().zip(&d.products) {
        let (a, b) = (LEVEL2_LABELS[k], LEVEL2_LABELS[l]);
        out.push_str(&format!(
            "prod {} {} {} {} {}\n",
            a.0,
            a.1,
            b.0,
            b.1,
            field.format_element(x)
        ));
    }
    out
}

/// Reads either a level-2 point (`b` lines) or level-2 data (`sq` and
/// `prod` lines).
pub fn parse_level2_file(text: &str, field: &Field) -> Result<Level2Input, PipelineError> {
    let slot_of = |i: u8, j: u8| (2 * i + j) as usize;
    let mut b: [Option<FieldElement>; 4] = Default::default();
    let mut sq: [Option<FieldElement>; 4] = Default::default();
    let mut prod: [Option<FieldElement>; 6] = Default::default();
    for (n, line) in content_lines(text) {
        let keyword = line.split_whitespace().next().unwrap_or("");
        let (target, words, elem): (&mut Option<FieldElement>, Vec<&str>, &str) = match keyword {
            "b" | "sq" => {
                let (w, e) = split_words(line, 3).ok_or_else(|| syntax(n, "truncated line"))?;
                let k = slot_of(parse_component(w[1], 1, n)?, parse_component(w[2], 1, n)?);
                let arr = if keyword == "b" { &mut b } else { &mut sq };
                (&mut arr[k], w, e)
            }
            "prod" => {
                let (w, e) = split_words(line, 5).ok_or_else(|| syntax(n, "truncated line"))?;
                let k = slot_of(parse_component(w[1], 1, n)?, parse_component(w[2], 1, n)?);
                let l = slot_of(parse_component(w[3], 1, n)?, parse_component(w[4], 1, n)?);
                let pos = PAIRS
                    .iter()
                    .position(|&p| p == (k.min(l), k.max(l)))
                    .filter(|_| k != l)
                    .ok_or_else(|| syntax(n, "product of a coordinate with itself"))?;
                (&mut prod[pos], w, e)
            }
            _ => return Err(syntax(n, format!("unknown line {line:?}"))),
        };
        if target.is_some() {
            return Err(syntax(n, format!("duplicate entry {}", words.join(" "))));
        }
        *target = Some(
            field
                .parse_element(elem)
                .map_err(|e| syntax(n, e.to_string()))?,
        );
    }
    let has_b = b.iter().any(Option::is_some);
    let has_data = sq.iter().chain(&prod).any(Option::is_some);
    let missing = |what: &str| PipelineError::MissingCoordinate(what.to_string());
    match (has_b, has_data) {
        (true, false) => {
            let coords = b.map(|x| x.ok_or_else(|| missing("b")));
            let [c0, c1, c2, c3] = coords;
            Ok(Level2Input::Point(ThetaPoint2::new(
                field,
                [c0?, c1?, c2?, c3?],
            )?))
        }
        (false, true) => {
            let [s0, s1, s2, s3] = sq.map(|x| x.ok_or_else(|| missing("sq")));
            let [p0, p1, p2, p3, p4, p5] = prod.map(|x| x.ok_or_else(|| missing("prod")));
            Ok(Level2Input::Data(Level2Data {
                squares: [s0?, s1?, s2?, s3?],
                products: [p0?, p1?, p2?, p3?, p4?, p5?],
            }))
        }
        (true, true) => Err(syntax(0, "file mixes `b` lines with `sq`/`prod` lines")),
        (false, false) => Err(syntax(0, "empty level-2 file")),
    }
}
