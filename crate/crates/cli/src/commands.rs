//! One function per subcommand. Each returns the verdict, the JSON results
//! and a short human summary.

use lvmb_core::exactmath::{parse_rational, Rational};
use lvmb_core::fundsys::FundamentalSet;
use lvmb_core::geometry::{
    check_good_system, lvm_witness_check, polytope_combinatorics, polytope_vertices, satisfies_siegel,
    search_lvm_witness, siegel_translate, verify_dual, ImbricationStatus, System, WitnessSearch,
};
use lvmb_core::inverse::{construct, primitive_generators, stabilize, validate_starshaped, Realization};
use lvmb_core::macomplex::{build_ma, reduce_indispensable, verify_m1_identity, ENUMERATION_LIMIT};
use lvmb_core::simplicial::SimplicialComplex;
use lvmb_core::toricfan::{fan_of_s, orbit_cone_table, underlying_complex, verify_main_theorem};
use lvmb_core::Error;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

/// Why a command could not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
    /// The computation answered "no" by raising an error; exit code 1.
    Negative(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotGoodSystem(_)
            | Error::StarshapeViolated(_)
            | Error::SeuViolated
            | Error::SiegelViolated
            | Error::NotConditionK
            | Error::CollapsedCone(_)
            | Error::NotFullDimensional(_)
            | Error::NoIndispensable
            | Error::DegenerateType
            | Error::NotPure => Failure::Negative(e),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub verdict: bool,
    pub results: Value,
    pub summary: Vec<String>,
    /// Written by `--emit`.
    pub artifact: Option<Value>,
}

impl Outcome {
    fn new(verdict: bool, results: Value, summary: Vec<String>) -> Self {
        Self {
            verdict,
            results,
            summary,
            artifact: None,
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize")
}

/// A bare fundamental set, or the `fundamental_set` of a system.
fn parse_set(text: &str) -> Result<FundamentalSet, Failure> {
    if let Ok(sys) = serde_json::from_str::<System>(text) {
        return Ok(sys.fundamental_set);
    }
    parse(text, "fundamental set")
}

/// Comma-separated rationals, e.g. `1/4,1/4`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| Failure::Input(format!("point: {e}"))))
        .collect()
}

pub fn check(text: &str) -> CmdResult {
    let sys: System = parse(text, "system")?;
    let (e, l) = (&sys.fundamental_set, &sys.directions);
    let report = check_good_system(e, l)?;
    let minimality = e.minimality_pseudomanifold_check().ok();
    let mut summary = vec![
        format!("type {}", e.type_signature()),
        match report.acceptable_failure {
            Some(p) => format!("acceptable: false, the hull of {p} is degenerate"),
            None => format!("acceptable: {}", report.acceptable),
        },
        format!("SE: {}", report.se),
    ];
    summary.push(match &report.imbrication {
        ImbricationStatus::Holds { pairs_checked } => format!("imbrication: holds on {pairs_checked} pairs"),
        ImbricationStatus::Fails { first, second, .. } => {
            format!("imbrication: fails, {first} and {second} are separated")
        }
        ImbricationStatus::NotEvaluated => "imbrication: not evaluated".into(),
    });
    summary.push(format!("minimal SEU: {}", report.minimal_seu));
    summary.push(format!("condition (K): {}", report.condition_k));
    let results = json!({
        "type": e.type_signature(),
        "good_system": report,
        "minimality": minimality,
    });
    Ok(Outcome::new(report.verdict, results, summary))
}

pub fn complex(text: &str) -> CmdResult {
    let e = parse_set(text)?;
    let p = e.associated_complex();
    let eq = e.seu_equivalences();
    let minimality = e.minimality_pseudomanifold_check()?;
    let components = e.replacement_graph().components().len();
    let arrangement = e.arrangement_description();
    let summary = vec![
        format!("type {}", e.type_signature()),
        format!("associated complex: {} facets, dimension {}", p.facets().len(), p.dimension().unwrap_or(-1)),
        format!("SEU: {} (facet exchange {}, two-facet ridges {})", eq.seu, eq.facet_exchange, eq.two_facet_ridges),
        format!("replacement graph components: {components}"),
        format!("minimal: {}, pseudo-manifold: {}", minimality.minimal_seu, minimality.pseudo_manifold),
        format!("S = {arrangement}"),
    ];
    let results = json!({
        "type": e.type_signature(),
        "indispensable": e.indispensable(),
        "complex": p,
        "seu": eq,
        "minimality": minimality,
        "replacement_components": components,
        "arrangement": arrangement.to_string(),
    });
    Ok(Outcome::new(minimality.minimal_seu && minimality.agree, results, summary))
}

pub fn sphere_cert(text: &str, dim: Option<usize>) -> CmdResult {
    let k: SimplicialComplex = parse(text, "complex")?;
    let d = match dim {
        Some(d) => d,
        None => match k.is_pure()? {
            Some(d) if d >= 0 => d as usize,
            _ => return Err(Failure::Input("cannot infer the dimension of {∅}".into())),
        },
    };
    let cert = k.sphere_certificate(d)?;
    let summary = vec![
        format!("expected dimension {d}, found {}", cert.dimension),
        format!("pseudo-manifold: {}", cert.pseudo_manifold),
        format!("betti {:?}, expected {:?}", cert.betti, cert.expected_betti),
        format!("certificate level: {}", cert.level),
    ];
    Ok(Outcome::new(cert.pass, to_value(&cert), summary))
}

pub fn fan(text: &str) -> CmdResult {
    let e = parse_set(text)?;
    let f = fan_of_s(&e);
    let table = orbit_cone_table(&e);
    let round_trip = underlying_complex(&f, e.n())?.same_faces(&e.associated_complex());
    let summary = vec![
        format!("fan in Z^{} with {} maximal cones", f.rank(), f.max_cones().len()),
        format!("orbit cones: {}", table.entries.len()),
        format!("underlying complex equals the associated complex: {round_trip}"),
    ];
    let mut out = Outcome::new(round_trip, json!({"fan": f, "orbit_cones": table}), summary);
    out.artifact = Some(to_value(&f));
    Ok(out)
}

pub fn project(text: &str) -> CmdResult {
    let sys: System = parse(text, "system")?;
    let report = verify_main_theorem(&sys.fundamental_set, &sys.directions)?;
    let mut summary: Vec<String> = report
        .stages
        .iter()
        .map(|s| {
            let status = if s.passed { "pass" } else { "FAIL" };
            if s.detail.is_empty() {
                format!("{}: {status}", s.name)
            } else {
                format!("{}: {status} ({})", s.name, s.detail)
            }
        })
        .collect();
    if let Some(stage) = report.failing_stage {
        summary.push(format!("stopped at {stage}"));
    }
    let complete = report.completeness.as_ref().map(|c| c.complete);
    summary.push(format!("complete: {}", complete.map_or("n/a".into(), |c| c.to_string())));
    let mut out = Outcome::new(report.holds, to_value(&report), summary);
    out.artifact = report.projected_fan.as_ref().map(to_value);
    Ok(out)
}

pub fn polytope(text: &str, translate: Option<&str>) -> CmdResult {
    let sys: System = parse(text, "system")?;
    let lambda = match translate {
        Some(x) => siegel_translate(&sys.directions, &parse_point(x)?)?,
        None => sys.directions.clone(),
    };
    if !satisfies_siegel(&lambda)? {
        return Err(Error::SiegelViolated.into());
    }
    let e = &sys.fundamental_set;
    let combinatorics = polytope_combinatorics(e, &lambda)?;
    let vertices = polytope_vertices(e, &lambda)?;
    let dual = verify_dual(e, &lambda)?;
    let summary = vec![
        format!("faces: {}", combinatorics.faces.len()),
        format!("vertices: {}", vertices.len()),
        format!("dual to the associated complex: {}", dual.holds),
    ];
    let results = json!({
        "lambda": lambda,
        "combinatorics": combinatorics,
        "vertices": vertices,
        "dual": dual,
    });
    Ok(Outcome::new(dual.holds, results, summary))
}

pub fn lvm_witness(text: &str, point: Option<&str>) -> CmdResult {
    let sys: System = parse(text, "system")?;
    let (e, l) = (&sys.fundamental_set, &sys.directions);
    match point {
        Some(x) => {
            let r = lvm_witness_check(e, l, &parse_point(x)?)?;
            let mut summary = vec![format!("witness: {}", r.is_lvm_witness)];
            if let Some(s) = r.blocking_subset {
                summary.push(format!("blocked by the hull of {s}"));
            }
            summary.push(format!("E_x matches E: {}", r.e_x_matches));
            Ok(Outcome::new(r.is_lvm_witness, to_value(&r), summary))
        }
        None => {
            let r = search_lvm_witness(e, l)?;
            let (found, line) = match &r {
                WitnessSearch::Found { x } => {
                    let coords: Vec<String> = x.iter().map(|q| q.to_string()).collect();
                    (true, format!("witness found at ({})", coords.join(", ")))
                }
                WitnessSearch::Inconclusive { candidates_tried } => {
                    (false, format!("no barycenter among {candidates_tried} works; inconclusive"))
                }
            };
            Ok(Outcome::new(found, to_value(&r), vec![line]))
        }
    }
}

pub fn inverse(text: &str) -> CmdResult {
    let r: Realization = parse(text, "realization")?;
    let gens = primitive_generators(&r)?;
    if !validate_starshaped(&r)? {
        return Err(Error::StarshapeViolated("the facet cones do not form a complete simplicial fan".into()).into());
    }
    let c = construct(&r)?;
    let summary = vec![
        format!("{} vertices, d = {}", r.vertex_count(), r.d()),
        format!("constructed system of type {}", c.type_signature),
        "associated complex equals the input; verdict good".into(),
    ];
    let gens: Vec<Vec<String>> = gens.iter().map(|g| g.iter().map(|x| x.to_string()).collect()).collect();
    let mut out = Outcome::new(true, json!({"primitive_generators": gens, "system": c}), summary);
    out.artifact = Some(to_value(&c.system()));
    Ok(out)
}

pub fn stabilize_cmd(text: &str, times: usize) -> CmdResult {
    let mut sys: System = parse(text, "system")?;
    let mut steps = Vec::new();
    for _ in 0..times {
        let c = stabilize(&sys)?;
        sys = c.system();
        steps.push(c);
    }
    let summary = steps
        .iter()
        .enumerate()
        .map(|(i, c)| format!("step {}: type {}, good, complex unchanged", i + 1, c.type_signature))
        .collect();
    let mut out = Outcome::new(true, json!({"steps": steps}), summary);
    out.artifact = Some(to_value(&sys));
    Ok(out)
}

pub fn ma(text: &str, n: Option<usize>) -> CmdResult {
    let e = parse_set(text)?;
    let n = n.unwrap_or(e.n());
    let p = e.associated_complex();
    let model = build_ma(&p, n)?;
    let identity = match verify_m1_identity(&e) {
        Ok(b) => Some(b),
        Err(Error::TooLarge { .. }) => None,
        Err(err) => return Err(err.into()),
    };
    let reduced = match reduce_indispensable(&e) {
        Ok(m) => Some(m),
        Err(Error::NoIndispensable) => None,
        Err(err) => return Err(err.into()),
    };
    let mut summary = vec![
        format!("Z_(P,{n}): {} blocks, dimension {}", model.blocks.len(), model.dimension()),
        match identity {
            Some(b) => format!("set identity over all subsets of 1..{}: {b}", e.n()),
            None => format!("set identity skipped (n > {ENUMERATION_LIMIT})"),
        },
    ];
    summary.push(match &reduced {
        Some(m) => format!("indispensable reduction: Z_(P,{}), dimension {}", m.n, m.dimension()),
        None => "no indispensable element; no reduction".into(),
    });
    let results = json!({
        "model": model,
        "dimension": model.dimension(),
        "m1_identity": identity,
        "reduced": reduced.as_ref().map(|m| json!({"model": m, "dimension": m.dimension()})),
    });
    Ok(Outcome::new(identity.unwrap_or(true), results, summary))
}
