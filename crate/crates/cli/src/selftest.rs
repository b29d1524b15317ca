//! End-to-end check of the bundled example: the level-4 point over
//! F_p[x]/(x^8 + 3), its Rosenhain model over F_p[y]/(y^2 + 3) and the
//! quadratic correspondence relations.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use thetarm_core::index::{enumerate_s, equivalent_pairs};
use thetarm_core::pipeline::{level4_to_level2, rosenhain_from_squares};
use thetarm_core::relation::{
    mumford_relations, parse_relations, rm_relations, span_contains, span_rank, verify,
};

use crate::commands::{load_curve, load_field, load_point, read};
use crate::Outcome;

pub(crate) fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/example")
}

/// A failed check: the criterion and what went wrong.
struct Failure(&'static str, String);

fn check(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        println!("{name}: pass");
        Ok(())
    } else {
        Err(Failure(name, detail()))
    }
}

pub(crate) fn run(dir: &Path) -> Result<Outcome> {
    let file = |name: &str| dir.join(name);
    let f8 = load_field(&file("field-p8.txt"), false)?;
    let f2 = load_field(&file("field-p2.txt"), false)?;
    let point = load_point(&file("point.txt"), &f8)?;
    let curve2 = load_curve(&file("curve-p2.txt"), &f2)?;
    let curve8 = load_curve(&file("curve-p8.txt"), &f8)?;
    let block_path = file("rm-block.txt");
    let block = parse_relations(&read(&block_path)?)
        .with_context(|| format!("relation file {}", block_path.display()))?;

    // y -> x^4; `embedding` rejects the image unless y^2 + 3 vanishes there
    let x = f8
        .generator()
        .context("field-p8.txt must define an extension")?;
    let embedding = f8.embedding(&f2, f8.pow_u64(&x, 4))?;
    let embedded = curve2.map(&f8, |v| embedding.apply(v));

    let result = (|| -> Result<(), Failure> {
        for rs in [mumford_relations(), rm_relations()] {
            let report = verify(&point, &rs, &f8).map_err(|e| Failure("A1", e.to_string()))?;
            let name = if rs.len() == 3 {
                "A1 rm relations"
            } else {
                "A1 mumford relations"
            };
            check(name, report.passed(), || {
                let first = report.failures().next().expect("a failure");
                format!("relation {} does not vanish at the example point", first.id)
            })?;
        }

        let rm = rm_relations();
        for r in block.iter() {
            let inside = span_contains(&r.poly, &rm).map_err(|e| Failure("A2", e.to_string()))?;
            check("A2 correspondence relation in rm span", inside, || {
                format!("{} is not in the span of the rm relations", r.id)
            })?;
        }

        check("A3 |S| = 256", enumerate_s().len() == 256, || {
            format!("|S| = {}", enumerate_s().len())
        })?;
        let pairs = equivalent_pairs().len();
        check("A3 equivalent pairs = 1920", pairs == 1920, || {
            format!("{pairs} pairs")
        })?;
        check(
            "A3 rm relations: 3 of rank 3",
            rm.len() == 3 && span_rank(&rm) == 3,
            || format!("{} relations of rank {}", rm.len(), span_rank(&rm)),
        )?;

        check(
            "A4 bundled curves agree under y -> x^4",
            embedded == curve8,
            || "curve-p8.txt is not the image of curve-p2.txt".into(),
        )?;
        let data = level4_to_level2(&point).map_err(|e| Failure("A4", e.to_string()))?;
        check(
            "A4 level-2 data consistent",
            data.is_consistent(&f8),
            || "squares and products disagree".into(),
        )?;
        let models =
            rosenhain_from_squares(&data.squares, &f8).map_err(|e| Failure("A4", e.to_string()))?;
        check(
            "A4 Rosenhain model recovered",
            models.contains(&embedded),
            || {
                format!(
                    "none of the {} recovered models is the bundled curve",
                    models.len()
                )
            },
        )
    })();

    match result {
        Ok(()) => {
            println!("selftest: PASS");
            Ok(Outcome::Success)
        }
        Err(Failure(name, detail)) => {
            println!("FAIL {name}: {detail}");
            Ok(Outcome::Negative)
        }
    }
}
