//! Genus-2 curves in Rosenhain form y² = x(x−1)(x−λ1)(x−λ2)(x−λ3), the
//! Thomae formulas, and their inversion.
//!
//! Branch points are five finite values with the sixth at infinity. Curve
//! files hold one line, `rosenhain <λ1> <λ2> <λ3>` or `branch <e1> ... <e6>`;
//! six finite branch points are moved to Rosenhain form by the Möbius map
//! sending e1, e2, e6 to 0, 1, ∞.

use crate::field::{Field, FieldElement};

use super::{PipelineError, ThetaPoint2};

/// Five pairwise distinct finite branch points e1, ..., e5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoints {
    e: [FieldElement; 5],
}

fn pairwise_distinct(v: &[FieldElement]) -> bool {
    v.iter()
        .enumerate()
        .all(|(k, x)| v[k + 1..].iter().all(|y| x != y))
}

impl BranchPoints {
    pub fn new(field: &Field, e: [FieldElement; 5]) -> Result<Self, PipelineError> {
        for x in &e {
            field.check(x)?;
        }
        if !pairwise_distinct(&e) {
            return Err(PipelineError::RepeatedBranchPoint);
        }
        Ok(BranchPoints { e })
    }

    pub fn values(&self) -> &[FieldElement; 5] {
        &self.e
    }

    /// (e_{perm[0]}, ..., e_{perm[4]}).
    pub fn permuted(&self, perm: &[usize; 5]) -> BranchPoints {
        BranchPoints {
            e: perm.map(|k| self.e[k].clone()),
        }
    }
}

/// Rosenhain invariants λ1, λ2, λ3: not 0 or 1 and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosenhainCurve {
    field: Field,
    lambdas: [FieldElement; 3],
}

impl RosenhainCurve {
    pub fn new(field: &Field, lambdas: [FieldElement; 3]) -> Result<Self, PipelineError> {
        for x in &lambdas {
            field.check(x)?;
            if x.is_zero() || field.is_one(x) {
                return Err(PipelineError::InvalidCurve("an invariant is 0 or 1".into()));
            }
        }
        if !pairwise_distinct(&lambdas) {
            return Err(PipelineError::InvalidCurve(
                "invariants are not distinct".into(),
            ));
        }
        Ok(RosenhainCurve {
            field: field.clone(),
            lambdas,
        })
    }

    /// Normalizes six finite branch points: x ↦ (x−e1)(e2−e6) / ((x−e6)(e2−e1)).
    pub fn from_branch_points(field: &Field, e: [FieldElement; 6]) -> Result<Self, PipelineError> {
        for x in &e {
            field.check(x)?;
        }
        if !pairwise_distinct(&e) {
            return Err(PipelineError::RepeatedBranchPoint);
        }
        let f = field;
        let num = f.sub(&e[1], &e[5]);
        let den = f.sub(&e[1], &e[0]);
        let t = |x: &FieldElement| -> Result<FieldElement, PipelineError> {
            let n = f.mul(&f.sub(x, &e[0]), &num);
            let d = f.mul(&f.sub(x, &e[5]), &den);
            Ok(f.div(&n, &d)?)
        };
        Self::new(field, [t(&e[2])?, t(&e[3])?, t(&e[4])?])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lambdas(&self) -> &[FieldElement; 3] {
        &self.lambdas
    }

    /// (0, 1, λ1, λ2, λ3).
    pub fn branch_points(&self) -> BranchPoints {
        let [l1, l2, l3] = self.lambdas.clone();
        BranchPoints {
            e: [self.field.zero(), self.field.one(), l1, l2, l3],
        }
    }

    pub fn map(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        RosenhainCurve {
            field: target.clone(),
            lambdas: self.lambdas.each_ref().map(f),
        }
    }
}

/// The Thomae values r1..r4, each the square of a signed sum of the b²:
/// r1 = (e1−e3)(e1−e5)(e2−e4)(e3−e5), r2 = (e1−e3)(e1−e4)(e2−e5)(e3−e4),
/// r3 = (e1−e2)(e1−e4)(e2−e4)(e3−e5), r4 = (e1−e2)(e1−e5)(e2−e5)(e3−e4).
pub fn thomae_squares(e: &BranchPoints, field: &Field) -> [FieldElement; 4] {
    let d = |i: usize, j: usize| field.sub(&e.e[i - 1], &e.e[j - 1]);
    let prod = |xs: [FieldElement; 4]| {
        xs.iter()
            .skip(1)
            .fold(xs[0].clone(), |acc, x| field.mul(&acc, x))
    };
    [
        prod([d(1, 3), d(1, 5), d(2, 4), d(3, 5)]),
        prod([d(1, 3), d(1, 4), d(2, 5), d(3, 4)]),
        prod([d(1, 2), d(1, 4), d(2, 4), d(3, 5)]),
        prod([d(1, 2), d(1, 5), d(2, 5), d(3, 4)]),
    ]
}

/// (T1, T2, T3, T4) = (s0+s1+s2+s3, s0−s1+s2−s3, s0+s1−s2−s3, s0−s1−s2+s3).
fn thomae_combinations(s: &[FieldElement; 4], f: &Field) -> [FieldElement; 4] {
    let (p01, m01) = (f.add(&s[0], &s[1]), f.sub(&s[0], &s[1]));
    let (p23, m23) = (f.add(&s[2], &s[3]), f.sub(&s[2], &s[3]));
    [
        f.add(&p01, &p23),
        f.add(&m01, &m23),
        f.sub(&p01, &p23),
        f.sub(&m01, &m23),
    ]
}

/// Whether (r) and (t²) agree projectively.
fn ratios_match(r: &[FieldElement; 4], t2: &[FieldElement; 4], f: &Field) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| f.mul(&r[i], &t2[j]) == f.mul(&r[j], &t2[i])))
}

/// Rosenhain curves whose Thomae values match the level-2 squares
/// (b00², b01², b10², b11²) under (e1, ..., e5) = (0, 1, λ1, λ2, λ3).
///
/// With u = T1²/T3², w = T3²/T4² and k = λ3/λ2 = u/λ1:
/// λ1 = ±T1T2/(T3T4) and
/// (k − wk²)λ2² + (wk + wk²λ1 − k − λ1)λ2 + λ1(1 − wk) = 0.
/// Every returned curve passes the forward Thomae check.
pub fn rosenhain_from_squares(
    squares: &[FieldElement; 4],
    field: &Field,
) -> Result<Vec<RosenhainCurve>, PipelineError> {
    let f = field;
    for x in squares {
        f.check(x)?;
    }
    let t = thomae_combinations(squares, f);
    if t.iter().any(FieldElement::is_zero) {
        return Err(PipelineError::DegenerateThetaPoint);
    }
    let t2 = t.clone().map(|x| f.square(&x));
    let u = f.div(&t2[0], &t2[2])?;
    let w = f.div(&t2[2], &t2[3])?;
    let base = f.div(&f.mul(&t[0], &t[1]), &f.mul(&t[2], &t[3]))?;

    let mut out: Vec<RosenhainCurve> = Vec::new();
    let mut root_missing = false;
    for l1 in [base.clone(), f.neg(&base)] {
        let k = f.div(&u, &l1)?;
        let wk = f.mul(&w, &k);
        let a = f.sub(&k, &f.mul(&wk, &k));
        let b = f.sub(&f.add(&wk, &f.mul(&f.mul(&wk, &k), &l1)), &f.add(&k, &l1));
        let c = f.mul(&l1, &f.sub(&f.one(), &wk));
        let mut l2s = Vec::new();
        if a.is_zero() {
            if !b.is_zero() {
                l2s.push(f.neg(&f.div(&c, &b)?));
            }
        } else {
            let disc = f.sub(&f.square(&b), &f.scale(&f.mul(&a, &c), 4));
            match f.sqrt(&disc) {
                Some(s) => {
                    let two_a = f.scale(&a, 2);
                    l2s.push(f.div(&f.sub(&s, &b), &two_a)?);
                    if !s.is_zero() {
                        l2s.push(f.div(&f.sub(&f.neg(&s), &b), &two_a)?);
                    }
                }
                None => root_missing = true,
            }
        }
        for l2 in l2s {
            let l3 = f.mul(&k, &l2);
            let Ok(curve) = RosenhainCurve::new(f, [l1.clone(), l2, l3]) else {
                continue;
            };
            let r = thomae_squares(&curve.branch_points(), f);
            if ratios_match(&r, &t2, f) && !out.contains(&curve) {
                out.push(curve);
            }
        }
    }
    if out.is_empty() && root_missing {
        return Err(PipelineError::NoSolutionInField);
    }
    Ok(out)
}

pub fn rosenhain_from_level2(b: &ThetaPoint2) -> Result<Vec<RosenhainCurve>, PipelineError> {
    rosenhain_from_squares(&b.squares(), b.field())
}

/// Contents of a curve file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveInput {
    Rosenhain([FieldElement; 3]),
    Branch([FieldElement; 6]),
}

impl CurveInput {
    pub fn into_curve(self, field: &Field) -> Result<RosenhainCurve, PipelineError> {
        match self {
            CurveInput::Rosenhain(l) => RosenhainCurve::new(field, l),
            CurveInput::Branch(e) => RosenhainCurve::from_branch_points(field, e),
        }
    }
}

/// Splits on whitespace outside square brackets.
fn tokens(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in line.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !c.is_whitespace() {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse_curve_file(text: &str, field: &Field) -> Result<CurveInput, PipelineError> {
    let mut found = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let err = |message: String| PipelineError::Syntax {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if found.is_some() {
            return Err(err("a curve file holds a single curve".into()));
        }
        let toks = tokens(line);
        let elems = toks[1..]
            .iter()
            .map(|s| field.parse_element(s).map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let count = elems.len();
        found = Some(match toks[0].as_str() {
            "rosenhain" => CurveInput::Rosenhain(
                elems
                    .try_into()
                    .map_err(|_| err(format!("`rosenhain` takes 3 values, got {count}")))?,
            ),
            "branch" => CurveInput::Branch(
                elems
                    .try_into()
                    .map_err(|_| err(format!("`branch` takes 6 values, got {count}")))?,
            ),
            other => return Err(err(format!("unknown curve keyword {other:?}"))),
        });
    }
    found.ok_or(PipelineError::Syntax {
        line: 0,
        message: "empty curve file".into(),
    })
}

pub fn format_curve_file(c: &RosenhainCurve) -> String {
    let parts: Vec<String> = c
        .lambdas
        .iter()
        .map(|x| c.field.format_element(x))
        .collect();
    format!("rosenhain {}\n", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::level2_squares_from_thomae;

    fn field(p: u64) -> Field {
        Field::prime_u64(p).unwrap()
    }

    #[test]
    fn thomae_examples() {
        let f = field(1_000_003);
        let e = BranchPoints::new(&f, [0, 1, 2, 3, 4].map(|k| f.from_i64(k))).unwrap();
        let r = thomae_squares(&e, &f);
        assert_eq!(r[0], f.from_i64(32));
        // (0−1)(0−4)(1−4)(2−3) = 12
        assert_eq!(r[3], f.from_i64(12));
        assert_eq!(
            BranchPoints::new(&f, [0, 1, 0, 3, 4].map(|k| f.from_i64(k))),
            Err(PipelineError::RepeatedBranchPoint)
        );
    }

    #[test]
    fn curve_invariants() {
        let f = field(101);
        let e = |k| f.from_i64(k);
        assert!(RosenhainCurve::new(&f, [e(2), e(3), e(4)]).is_ok());
        assert!(RosenhainCurve::new(&f, [e(0), e(3), e(4)]).is_err());
        assert!(RosenhainCurve::new(&f, [e(2), e(1), e(4)]).is_err());
        assert!(RosenhainCurve::new(&f, [e(2), e(2), e(4)]).is_err());
    }

    #[test]
    fn moebius_normalization() {
        let f = field(101);
        // e = 2k + 5 for k in (0, 1, 7, 11, 13, 50); the map is affine, so the
        // normalized invariants are k(1 − 50)/(k − 50).
        let pts = [0, 1, 7, 11, 13, 50].map(|k| f.from_i64(2 * k + 5));
        let curve = RosenhainCurve::from_branch_points(&f, pts).unwrap();
        let want = [7, 11, 13].map(|k| f.div(&f.from_i64(-49 * k), &f.from_i64(k - 50)).unwrap());
        assert_eq!(curve.lambdas(), &want);
        let repeated = [0, 1, 7, 11, 7, 50].map(|k| f.from_i64(k));
        assert_eq!(
            RosenhainCurve::from_branch_points(&f, repeated),
            Err(PipelineError::RepeatedBranchPoint)
        );
    }

    #[test]
    fn round_trip_through_thomae() {
        let f = field(10007);
        let mut found = 0;
        for (a, b, c) in [(3, 5, 7), (2, 9, 20), (11, 40, 77), (5, 6, 1000)] {
            let curve = RosenhainCurve::new(&f, [a, b, c].map(|k| f.from_i64(k))).unwrap();
            let r = thomae_squares(&curve.branch_points(), &f);
            let Ok(classes) = level2_squares_from_thomae(&r, &f) else {
                continue;
            };
            for sq in classes {
                match rosenhain_from_squares(&sq, &f) {
                    Ok(list) => {
                        if list.contains(&curve) {
                            found += 1;
                        }
                        for c in &list {
                            let r2 = thomae_squares(&c.branch_points(), &f);
                            let t2 = thomae_combinations(&sq, &f).map(|x| f.square(&x));
                            assert!(ratios_match(&r2, &t2, &f));
                        }
                    }
                    Err(PipelineError::NoSolutionInField | PipelineError::DegenerateThetaPoint) => {
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn degenerate_input() {
        let f = field(101);
        let sq = [1, 0, 0, -1].map(|k| f.from_i64(k)); // T1 = 0
        assert_eq!(
            rosenhain_from_squares(&sq, &f),
            Err(PipelineError::DegenerateThetaPoint)
        );
    }

    #[test]
    fn curve_files() {
        let f = field(101);
        let c = RosenhainCurve::new(&f, [2, 3, 4].map(|k| f.from_i64(k))).unwrap();
        let text = format_curve_file(&c);
        assert_eq!(text, "rosenhain 2 3 4\n");
        assert_eq!(
            parse_curve_file(&text, &f).unwrap().into_curve(&f).unwrap(),
            c
        );
        let six = parse_curve_file("# six points\nbranch 0 1 2 3 4 5\n", &f).unwrap();
        assert!(matches!(six, CurveInput::Branch(_)));
        assert!(parse_curve_file("rosenhain 1 2", &f).is_err());
        assert!(parse_curve_file("ellipse 1 2 3", &f).is_err());
        assert!(parse_curve_file("", &f).is_err());
        let g = f
            .extend("t", &[2.into(), 0.into(), 1.into()], true)
            .unwrap();
        let spaced = parse_curve_file("rosenhain [2, 1] [3,0] 4", &g).unwrap();
        assert!(matches!(spaced, CurveInput::Rosenhain(_)));
    }
}
