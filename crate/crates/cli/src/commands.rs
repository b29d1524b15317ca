use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use thetarm_core::field::{format_field_file, parse_field_file, Field};
use thetarm_core::pipeline::{
    format_curve_file, format_level2_data, format_point4, level2_point_from_data, level2_to_level4,
    level4_to_level2, parse_curve_file, parse_level2_file, parse_point4_file, rm_test,
    rosenhain_from_level2, rosenhain_from_squares, thomae_squares, Decision, Level2Input,
    RosenhainCurve, SearchConfig, ThetaPoint4,
};
use thetarm_core::relation::{
    parse_relations, serialize_relations, verify, RelationFamily, RelationSet, VerificationReport,
};

use crate::{FieldArgs, Outcome};

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub(crate) fn load_field(path: &Path, check_irreducible: bool) -> Result<Field> {
    parse_field_file(&read(path)?, check_irreducible)
        .with_context(|| format!("field file {}", path.display()))
}

fn field_of(args: &FieldArgs) -> Result<Field> {
    load_field(&args.field, args.check_irreducible)
}

pub(crate) fn load_point(path: &Path, field: &Field) -> Result<ThetaPoint4> {
    parse_point4_file(&read(path)?, field).with_context(|| format!("point file {}", path.display()))
}

pub(crate) fn load_curve(path: &Path, field: &Field) -> Result<RosenhainCurve> {
    let input = parse_curve_file(&read(path)?, field)
        .with_context(|| format!("curve file {}", path.display()))?;
    Ok(input.into_curve(field)?)
}

fn load_level2(path: &Path, field: &Field) -> Result<Level2Input> {
    parse_level2_file(&read(path)?, field)
        .with_context(|| format!("level-2 file {}", path.display()))
}

/// A generated family by name, or else a relation file.
fn relation_set(name: &str) -> Result<RelationSet> {
    if let Ok(family) = name.parse::<RelationFamily>() {
        return Ok(family.generate());
    }
    let path = Path::new(name);
    if path.is_file() {
        return parse_relations(&read(path)?)
            .with_context(|| format!("relation file {}", path.display()));
    }
    Err(name.parse::<RelationFamily>().unwrap_err().into())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub(crate) fn cmd_relations(set: &str, out: Option<&Path>) -> Result<Outcome> {
    let family: RelationFamily = set.parse()?;
    emit(&serialize_relations(&family.generate()), out)?;
    Ok(Outcome::Success)
}

/// One line per relation, then the verdict.
pub(crate) fn format_report(report: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let status = if c.passed() {
            "pass"
        } else {
            "FAIL residual nonzero"
        };
        s.push_str(&format!("{} {status}\n", c.id));
    }
    s.push_str(&format!(
        "{}: {}/{} relations vanish: {}\n",
        report.family,
        report.pass_count(),
        report.checks.len(),
        if report.passed() { "PASS" } else { "FAIL" }
    ));
    s
}

pub(crate) fn cmd_verify(args: &FieldArgs, point: &Path, set: &str) -> Result<Outcome> {
    let field = field_of(args)?;
    let p = load_point(point, &field)?;
    let rs = relation_set(set)?;
    let start = Instant::now();
    let report = verify(&p, &rs, &field)?;
    eprintln!(
        "evaluated {} relations in {:.3?}",
        rs.len(),
        start.elapsed()
    );
    print!("{}", format_report(&report));
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}

pub(crate) fn cmd_thomae(args: &FieldArgs, curve: &Path, out: Option<&Path>) -> Result<Outcome> {
    let field = field_of(args)?;
    let c = load_curve(curve, &field)?;
    let r = thomae_squares(&c.branch_points(), &field);
    let text: String = r
        .iter()
        .enumerate()
        .map(|(k, x)| format!("r{} {}\n", k + 1, field.format_element(x)))
        .collect();
    emit(&text, out)?;
    Ok(Outcome::Success)
}

pub(crate) fn cmd_down(args: &FieldArgs, point: &Path, out: Option<&Path>) -> Result<Outcome> {
    let field = field_of(args)?;
    let p = load_point(point, &field)?;
    let d = level4_to_level2(&p)?;
    if !d.is_consistent(&field) {
        bail!("level-2 data fails the consistency identities");
    }
    emit(&format_level2_data(&d, &field), out)?;
    Ok(Outcome::Success)
}

fn nonempty(n: usize) -> Outcome {
    if n == 0 {
        Outcome::Negative
    } else {
        Outcome::Success
    }
}

pub(crate) fn cmd_up(args: &FieldArgs, point: &Path, out: Option<&Path>) -> Result<Outcome> {
    use thetarm_core::pipeline::PipelineError::{NoLift, NoSquareRoots};
    let field = field_of(args)?;
    let classes = match load_level2(point, &field)? {
        Level2Input::Point(b) => vec![b],
        Level2Input::Data(d) => level2_point_from_data(&d, &field)?,
    };
    let mut found: Vec<ThetaPoint4> = Vec::new();
    for b in &classes {
        match level2_to_level4(b) {
            Ok(ps) => {
                for p in ps {
                    if !found.contains(&p) {
                        found.push(p);
                    }
                }
            }
            Err(NoLift | NoSquareRoots) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let mut text = String::new();
    for (k, p) in found.iter().enumerate() {
        text.push_str(&format!("# candidate {} of {}\n", k + 1, found.len()));
        text.push_str(&format_point4(p));
    }
    emit(&text, out)?;
    if found.is_empty() {
        eprintln!("no level-4 point above this level-2 input is defined over the field");
    }
    Ok(nonempty(found.len()))
}

pub(crate) fn cmd_rosenhain(args: &FieldArgs, point: &Path, out: Option<&Path>) -> Result<Outcome> {
    let field = field_of(args)?;
    let curves = match load_level2(point, &field)? {
        Level2Input::Point(b) => rosenhain_from_level2(&b)?,
        Level2Input::Data(d) => {
            if !d.is_consistent(&field) {
                bail!("level-2 data fails the consistency identities");
            }
            rosenhain_from_squares(&d.squares, &field)?
        }
    };
    let text: String = curves.iter().map(format_curve_file).collect();
    emit(&text, out)?;
    Ok(nonempty(curves.len()))
}

pub(crate) fn cmd_rm_test(
    args: &FieldArgs,
    curve: &Path,
    config: SearchConfig,
    out: Option<&Path>,
) -> Result<Outcome> {
    let field = field_of(args)?;
    let c = load_curve(curve, &field)?;
    match rm_test(&c, &config)? {
        Decision::Positive {
            witness,
            ordering,
            examined,
        } => {
            println!("POSITIVE");
            let order: Vec<String> = ordering.iter().map(usize::to_string).collect();
            println!("# ordering {} after {examined} candidates", order.join(" "));
            if witness.field() != &field {
                for line in format_field_file(witness.field()).lines() {
                    println!("# witness field: {line}");
                }
            }
            let text = format_point4(&witness);
            print!("{text}");
            if let Some(path) = out {
                emit(&text, Some(path))?;
            }
            Ok(Outcome::Success)
        }
        Decision::Negative {
            examined,
            orderings,
            complete,
        } => {
            println!("NEGATIVE");
            println!(
                "# no witness among {examined} candidates over {orderings} orderings{}",
                if complete {
                    ""
                } else {
                    " (candidate limit reached)"
                }
            );
            Ok(Outcome::Negative)
        }
    }
}
