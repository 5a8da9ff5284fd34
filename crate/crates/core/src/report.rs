//! Running a command on a problem file and rendering the outcome.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{finite_order, ElementClass};
use crate::error::{Error, Mechanism};
use crate::forms::{display_covector, LatticeMap, LinearForm, TrilinearForm};
use crate::geometry::{
    check_hyperbolic_relations, check_unipotent_relations, hyperbolic_factorization,
    unipotent_factorization, Factorization, QuadricShape, RelationReport,
};
use crate::group::{
    analyze_group, enumerate_symmetries, ElementRecord, ElementRole, FactorizationCertificate,
    GroupVerdict, Reduction, Witness, DEFAULT_ENUMERATION_BOUND,
};
use crate::problem::{json_error, ProblemFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify,
    Factor,
    Analyze,
    Enumerate,
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "classify" => Ok(Command::Classify),
            "factor" => Ok(Command::Factor),
            "analyze" => Ok(Command::Analyze),
            "enumerate" => Ok(Command::Enumerate),
            other => Err(Error::Validation(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides the bound of the problem file.
    pub bound: Option<u32>,
    pub allow_large_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Classified {
        count: usize,
    },
    Factored {
        shape: String,
    },
    Group {
        verdict: GroupVerdict,
    },
    Enumerated {
        bound: u32,
        count: usize,
        elements: Vec<LatticeMap>,
    },
    GeometricInconsistency {
        mechanism: Option<Mechanism>,
        message: String,
    },
    InputError {
        message: String,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub elements: Vec<ElementRecord>,
    pub relations: Option<RelationReport>,
    pub factorization: Option<FactorizationCertificate>,
    pub verdict: Verdict,
    pub reductions: Vec<Reduction>,
    pub version: String,
}

impl Report {
    fn new(verdict: Verdict) -> Self {
        Report {
            elements: Vec::new(),
            relations: None,
            factorization: None,
            verdict,
            reductions: Vec::new(),
            version: VERSION.to_string(),
        }
    }

    /// 0 definitive, 1 input error, 2 geometric inconsistency, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match &self.verdict {
            Verdict::InputError { .. } => 1,
            Verdict::GeometricInconsistency { .. } => 2,
            Verdict::Inconclusive { .. }
            | Verdict::Group {
                verdict: GroupVerdict::Inconclusive { .. },
            } => 3,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn parse_report(text: &str) -> crate::error::Result<Report> {
    serde_json::from_str(text).map_err(json_error)
}

/// Maps a pipeline error onto the verdict it stands for.
pub fn verdict_for_error(e: Error) -> Verdict {
    match e {
        Error::GeometricInconsistency { mechanism, detail } => Verdict::GeometricInconsistency {
            mechanism: Some(mechanism),
            message: format!("{detail}; {mechanism}"),
        },
        Error::ConstraintViolated(what) => Verdict::GeometricInconsistency {
            mechanism: None,
            message: format!(
                "unipotent symmetry violates a = c, d = a(a - 1)/2 or quadric invariance: {what}"
            ),
        },
        e @ (Error::Validation(_)
        | Error::Parse { .. }
        | Error::NotUnimodular(_)
        | Error::DoesNotPreserveL
        | Error::NonPreservingGenerator(_)
        | Error::BoundTooLarge { .. }) => Verdict::InputError {
            message: e.to_string(),
        },
        e => Verdict::Inconclusive {
            reason: e.to_string(),
        },
    }
}

pub fn run(problem: &ProblemFile, command: Command, options: RunOptions) -> Report {
    let mut report = Report::new(Verdict::Inconclusive {
        reason: "not run".into(),
    });
    let t = problem.trilinear();
    let l = problem.c2;
    let outcome = match command {
        Command::Classify => run_classify(problem, &l, &mut report),
        Command::Factor => run_factor(problem, &t, &l, options, &mut report),
        Command::Analyze => run_analyze(problem, &t, &l, options, &mut report),
        Command::Enumerate => run_enumerate(problem, &t, &l, options, &mut report),
    };
    report.verdict = match outcome {
        Ok(v) => v,
        Err(e) => verdict_for_error(e),
    };
    report
}

fn bound_of(problem: &ProblemFile, options: RunOptions) -> u32 {
    options
        .bound
        .or(problem.bound)
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
}

fn run_classify(
    problem: &ProblemFile,
    l: &LinearForm,
    report: &mut Report,
) -> crate::error::Result<Verdict> {
    let Some(ms) = &problem.matrices else {
        return Err(Error::Validation("classify needs \"matrices\"".into()));
    };
    for g in ms {
        report.elements.push(ElementRecord::new(ElementRole::Input, g, l)?);
    }
    Ok(Verdict::Classified { count: ms.len() })
}

fn run_factor(
    problem: &ProblemFile,
    t: &TrilinearForm,
    l: &LinearForm,
    options: RunOptions,
    report: &mut Report,
) -> crate::error::Result<Verdict> {
    let candidates = match &problem.matrices {
        Some(ms) => ms.clone(),
        None => {
            let bound = bound_of(problem, options);
            let found = enumerate_symmetries(t, l, bound, options.allow_large_bound)?;
            report.reductions.push(Reduction::EnumeratedGenerators {
                bound,
                count: found.len(),
            });
            found
        }
    };
    let Some(g) = candidates
        .iter()
        .find(|g| g.det() == 1 && finite_order(g).is_none())
    else {
        return Ok(Verdict::Inconclusive {
            reason: "no determinant-one element of infinite order to build a frame from".into(),
        });
    };
    let record = ElementRecord::new(ElementRole::Witness, g, l)?;
    let class = record.class.clone();
    report.elements.push(record);
    let factorization = match class {
        ElementClass::Hyperbolic { u, v, w, .. } => {
            let wv = crate::forms::FieldVector::from_ints(&w);
            report.relations = Some(check_hyperbolic_relations(t, l, &u, &v, &wv)?);
            hyperbolic_factorization(t, l, &u, &v, &w)?
        }
        ElementClass::UnipotentFull { w, w1, w2 } => {
            report.relations = Some(check_unipotent_relations(t, l, &w, &w1, &w2)?);
            unipotent_factorization(t, l, &w, &w1, &w2)?.factorization
        }
        ElementClass::UnipotentDeficient { .. } => {
            return Err(Error::geometric(
                Mechanism::RankOneJordanBlock,
                format!("{g} has rank(g - id) = 1"),
            ))
        }
        other => {
            return Ok(Verdict::Inconclusive {
                reason: format!("element classified as {}", other.name()),
            })
        }
    };
    let shape = match &factorization {
        Factorization::ThreeLines { .. } => "three_lines",
        Factorization::QuadricLine { .. } => "quadric_line",
    };
    report.factorization = Some(FactorizationCertificate::new(t, factorization)?);
    Ok(Verdict::Factored {
        shape: shape.to_string(),
    })
}

fn run_analyze(
    problem: &ProblemFile,
    t: &TrilinearForm,
    l: &LinearForm,
    options: RunOptions,
    report: &mut Report,
) -> crate::error::Result<Verdict> {
    let generators = match &problem.matrices {
        Some(ms) => ms.clone(),
        None => {
            let bound = bound_of(problem, options);
            let found = enumerate_symmetries(t, l, bound, options.allow_large_bound)?;
            report.reductions.push(Reduction::EnumeratedGenerators {
                bound,
                count: found.len(),
            });
            found
        }
    };
    let analysis = analyze_group(t, l, Some(&generators))?;
    report.elements = analysis.elements;
    report.relations = analysis.relations;
    report.factorization = analysis.factorization;
    report.reductions.extend(analysis.reductions);
    Ok(Verdict::Group {
        verdict: analysis.verdict,
    })
}

fn run_enumerate(
    problem: &ProblemFile,
    t: &TrilinearForm,
    l: &LinearForm,
    options: RunOptions,
    report: &mut Report,
) -> crate::error::Result<Verdict> {
    let bound = bound_of(problem, options);
    let elements = enumerate_symmetries(t, l, bound, options.allow_large_bound)?;
    for g in &elements {
        report.elements.push(ElementRecord::new(ElementRole::Input, g, l)?);
    }
    Ok(Verdict::Enumerated {
        bound,
        count: elements.len(),
        elements,
    })
}

fn describe_class(c: &ElementClass) -> String {
    match c {
        ElementClass::Identity => "identity".into(),
        ElementClass::FiniteOrder { n, lambda_tag } => {
            format!("finite order {n}, {lambda_tag}")
        }
        ElementClass::Hyperbolic { alpha, u, v, w, .. } => {
            format!("hyperbolic, alpha = {alpha}, u = {u}, v = {v}, w = {w:?}")
        }
        ElementClass::UnipotentFull { w, w1, w2 } => {
            format!("unipotent, w = {w:?}, w1 = {w1:?}, w2 = {w2:?}")
        }
        ElementClass::UnipotentDeficient { rank_of_g_minus_id } => {
            format!("unipotent with rank(g - id) = {rank_of_g_minus_id}")
        }
        ElementClass::OutOfTheory { reason } => format!("outside the trichotomy: {reason}"),
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    if !r.elements.is_empty() {
        let _ = writeln!(w, "elements:");
        for e in &r.elements {
            let role = match e.role {
                ElementRole::Input => "input",
                ElementRole::Reduced => "reduced",
                ElementRole::Witness => "witness",
            };
            let _ = writeln!(w, "  [{role}] {} (det {}): {}", e.matrix, e.det, describe_class(&e.class));
        }
    }
    if let Some(rel) = &r.relations {
        let _ = writeln!(w, "relations:");
        for row in &rel.rows {
            let op = match row.op {
                crate::geometry::RelationOp::Equal => "=",
                crate::geometry::RelationOp::NotEqual => "!=",
            };
            let mark = if row.holds { "ok" } else { "FAIL" };
            let _ = writeln!(w, "  {:<24} {} {} {}  {mark}", row.name, row.left, op, row.right);
        }
    }
    if let Some(cert) = &r.factorization {
        let _ = writeln!(w, "factorization:");
        match &cert.factorization {
            Factorization::ThreeLines { a, b, l1, l2, l, .. } => {
                let _ = writeln!(w, "  three lines, A = {a}, B = {b}");
                let _ = writeln!(w, "  L1 = {}", display_covector(l1));
                let _ = writeln!(w, "  L2 = {}", display_covector(l2));
                let _ = writeln!(w, "  L  = {l}");
            }
            Factorization::QuadricLine { shape, quadric, l, .. } => {
                match shape {
                    QuadricShape::Hyperbolic { a, b } => {
                        let _ = writeln!(w, "  quadric and line, A = {a}, B = {b}");
                    }
                    QuadricShape::Unipotent { e, f } => {
                        let _ = writeln!(w, "  quadric and line, E = {e}, F = {f}");
                    }
                }
                let _ = writeln!(w, "  Q = {quadric}");
                let _ = writeln!(w, "  L = {l}");
            }
        }
        if let Some(sig) = cert.signature {
            let _ = writeln!(w, "  signature {sig}");
        }
        for p in &cert.singular_locus {
            let _ = writeln!(w, "  singular line {p}");
        }
        let _ = writeln!(w, "  reconstructs the cubic: {}", cert.reconstructs);
    }
    if !r.reductions.is_empty() {
        let _ = writeln!(w, "reductions:");
        for red in &r.reductions {
            let line = match red {
                Reduction::EnumeratedGenerators { bound, count } => {
                    format!("generators enumerated at bound {bound} ({count} found)")
                }
                Reduction::DeterminantOne { index, generators } => {
                    format!("passed to determinant one (index {index}, {generators} generators)")
                }
                Reduction::Squared { element, reason } => format!("squared {element}: {reason}"),
                Reduction::FourthPower => "characters taken on fourth powers".into(),
            };
            let _ = writeln!(w, "  {line}");
        }
    }
    let _ = write!(w, "verdict: ");
    let _ = match &r.verdict {
        Verdict::Classified { count } => writeln!(w, "classified {count} element(s)"),
        Verdict::Factored { shape } => writeln!(w, "factored ({shape})"),
        Verdict::Enumerated { bound, count, .. } => {
            writeln!(w, "{count} symmetries with entries in [-{bound}, {bound}]")
        }
        Verdict::GeometricInconsistency { message, .. } => {
            writeln!(w, "geometric inconsistency: {message}")
        }
        Verdict::InputError { message } => writeln!(w, "input error: {message}"),
        Verdict::Inconclusive { reason } => writeln!(w, "inconclusive: {reason}"),
        Verdict::Group { verdict } => match verdict {
            GroupVerdict::Finite { order, .. } => writeln!(w, "finite group of order {order}"),
            GroupVerdict::Inconclusive { reason } => writeln!(w, "inconclusive: {reason}"),
            GroupVerdict::AlmostAbelianRankOne { witness } => match witness {
                Witness::Tau { generator_value, p, .. } => writeln!(
                    w,
                    "almost abelian of rank 1; tau = p*a embeds it in Z with image {generator_value}Z (p = {p})"
                ),
                Witness::Character { generator_surd, fourth_root, .. } => {
                    let root = fourth_root
                        .as_ref()
                        .map(|g| format!(" = ({g})^4"))
                        .unwrap_or_default();
                    writeln!(
                        w,
                        "almost abelian of rank 1; the scaling character has cyclic image generated by {generator_surd}{root}"
                    )
                }
            },
        },
    };
    let _ = writeln!(w, "version: {}", r.version);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    fn problem(text: &str) -> ProblemFile {
        parse_problem(text).unwrap()
    }

    const GOLDEN: &str = r#"{"cubic": {"x2z": 1, "xyz": -1, "y2z": -1}, "c2": [0, 0, 1],
        "matrices": [[[2,1,0],[1,1,0],[0,0,1]]]}"#;
    const SIX_XYZ: &str = r#"{"cubic": {"xyz": 6}, "c2": [0, 0, 1],
        "matrices": [[[1,1,0],[0,1,1],[0,0,1]]]}"#;

    #[test]
    fn analyze_golden() {
        let r = run(&problem(GOLDEN), Command::Analyze, RunOptions::default());
        assert_eq!(r.exit_code(), 0);
        assert!(matches!(
            r.verdict,
            Verdict::Group { verdict: GroupVerdict::AlmostAbelianRankOne { .. } }
        ));
        assert_eq!(parse_report(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn factor_six_xyz_is_inconsistent() {
        let r = run(&problem(SIX_XYZ), Command::Factor, RunOptions::default());
        assert_eq!(r.exit_code(), 2);
        let Verdict::GeometricInconsistency { mechanism, message } = &r.verdict else {
            panic!("{:?}", r.verdict)
        };
        assert_eq!(*mechanism, Some(Mechanism::Lefschetz));
        assert!(message.contains("Lefschetz"));
        assert!(!r.relations.as_ref().unwrap().overall);
    }

    #[test]
    fn enumerate_guard() {
        let opts = RunOptions { bound: Some(9), allow_large_bound: false };
        let r = run(&problem(GOLDEN), Command::Enumerate, opts);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_keys() {
        let r = run(&problem(GOLDEN), Command::Factor, RunOptions::default());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["elements", "factorization", "reductions", "relations", "verdict", "version"]
        );
        assert!(render_text(&r).contains("three lines, A = 0, B = 5/6"));
    }
}
