//! Rational simplicial fans, the lattice sequence `0 → Z^{2m+1} → Z^n → N`,
//! and the projected fan whose underlying complex is the associated complex.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{serde_bigint, snf, solve_square, IntMatrix, Rational};
use crate::fundsys::FundamentalSet;
use crate::geometry::{check_good_system, DirectionFamily};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// A simplicial fan. Generator `i` carries label `labels[i]`; cones are sets
/// of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    generators: Vec<Vec<BigInt>>,
    labels: Vec<usize>,
    max_cones: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    rank: usize,
    #[serde(with = "serde_bigint::vec_vec")]
    generators: Vec<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
    max_cones: Vec<VertexSet>,
}

impl Serialize for Fan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let identity = self.labels.iter().enumerate().all(|(i, &l)| l == i + 1);
        FanJson {
            rank: self.rank,
            generators: self.generators.clone(),
            labels: (!identity).then(|| self.labels.clone()),
            max_cones: self.max_cones.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FanJson::deserialize(d)?;
        let labels = raw.labels.unwrap_or_else(|| (1..=raw.generators.len()).collect());
        Self::new(raw.rank, raw.generators, labels, raw.max_cones).map_err(serde::de::Error::custom)
    }
}

fn primitive(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

impl Fan {
    /// Validates primitivity, distinctness, simpliciality and that no cone
    /// contains another.
    pub fn new(
        rank: usize,
        generators: Vec<Vec<BigInt>>,
        labels: Vec<usize>,
        max_cones: Vec<VertexSet>,
    ) -> Result<Self> {
        if labels.len() != generators.len() {
            return Err(Error::InvalidFan(format!(
                "{} labels for {} generators",
                labels.len(),
                generators.len()
            )));
        }
        let label_set = VertexSet::from_labels(labels.iter().copied())?;
        if label_set.len() != labels.len() {
            return Err(Error::InvalidFan("repeated generator label".into()));
        }
        let mut seen = HashSet::new();
        for (g, l) in generators.iter().zip(&labels) {
            if g.len() != rank {
                return Err(Error::InvalidFan(format!("generator {l} is not in Z^{rank}")));
            }
            if primitive(g).as_deref() != Some(g.as_slice()) {
                return Err(Error::InvalidFan(format!("generator {l} is zero or not primitive")));
            }
            if !seen.insert(g.clone()) {
                return Err(Error::InvalidFan(format!("generator {l} is repeated")));
            }
        }
        let max_cones: Vec<VertexSet> = max_cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let fan = Self {
            rank,
            generators,
            labels,
            max_cones,
        };
        for (i, c) in fan.max_cones.iter().enumerate() {
            if !c.is_subset(label_set) {
                return Err(Error::InvalidFan(format!("cone {c} uses an unknown label")));
            }
            if fan.cone_matrix(*c).rank() != c.len() {
                return Err(Error::InvalidFan(format!("cone {c} is not simplicial")));
            }
            if fan.max_cones[i + 1..].iter().any(|d| c.is_subset(*d) || d.is_subset(*c)) {
                return Err(Error::InvalidFan(format!("cone {c} is nested in another")));
            }
        }
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn max_cones(&self) -> &[VertexSet] {
        &self.max_cones
    }

    pub fn generator(&self, label: usize) -> Option<&[BigInt]> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| self.generators[i].as_slice())
    }

    /// Generators of `cone` as rows.
    fn cone_matrix(&self, cone: VertexSet) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = cone
            .iter()
            .map(|l| self.generator(l).expect("label checked").to_vec())
            .collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.rank);
        }
        IntMatrix::from_big_rows(rows).expect("rectangular")
    }

    /// Coefficients of `p` in the generators of a full-dimensional cone.
    fn coordinates(&self, cone: VertexSet, p: &[Rational]) -> Option<Vec<Rational>> {
        let gens: Vec<&[BigInt]> = cone.iter().map(|l| self.generator(l).unwrap()).collect();
        let a: Vec<Vec<Rational>> = (0..self.rank)
            .map(|r| gens.iter().map(|g| Rational::from_integer(g[r].clone())).collect())
            .collect();
        solve_square(&a, p)
    }

    fn contains(&self, cone: VertexSet, p: &[Rational]) -> bool {
        self.coordinates(cone, p)
            .is_some_and(|x| x.iter().all(|c| !c.is_negative()))
    }
}

/// Normal of the hyperplane spanned by `k - 1` vectors in `Z^k`, by cofactors.
fn hyperplane_normal(rows: &[Vec<BigInt>], k: usize) -> Vec<BigInt> {
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = if minor.is_empty() {
                BigInt::one()
            } else {
                IntMatrix::from_big_rows(minor).unwrap().determinant().unwrap()
            };
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| Rational::from_integer(x.clone()) * y)
        .sum()
}

/// Generators `e_1, …, e_n`, maximal cones the facets of the associated
/// complex.
pub fn fan_of_s(e: &FundamentalSet) -> Fan {
    let n = e.n();
    let generators = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    Fan::new(
        n,
        generators,
        (1..=n).collect(),
        e.associated_complex().facets().to_vec(),
    )
    .expect("coordinate cones are simplicial")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCone {
    /// Face `I`; the orbit is `{z : z_i = 0 exactly for i ∈ I}`.
    pub face: VertexSet,
    pub dimension: usize,
}

/// Faces of the associated complex with their cones `pos(e_j, j ∈ I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitConeTable {
    pub entries: Vec<OrbitCone>,
}

impl OrbitConeTable {
    pub fn get(&self, face: VertexSet) -> Option<&OrbitCone> {
        self.entries.iter().find(|c| c.face == face)
    }
}

pub fn orbit_cone_table(e: &FundamentalSet) -> OrbitConeTable {
    let mut entries: Vec<OrbitCone> = e
        .associated_complex()
        .faces()
        .into_iter()
        .map(|face| OrbitCone {
            face,
            dimension: face.len(),
        })
        .collect();
    entries.sort_by(|a, b| a.dimension.cmp(&b.dimension).then(a.face.cmp(&b.face)));
    OrbitConeTable { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelProfile {
    pub rank_defect: usize,
    #[serde(with = "serde_bigint")]
    pub torsion_order: BigInt,
    pub finite: bool,
    pub injective: bool,
}

/// Kernel of the torus map `t ↦ (t^{a_1}, …, t^{a_n})` for the exponent rows
/// `a_j` of an `n × k` matrix.
pub fn character_kernel(exponents: &IntMatrix) -> KernelProfile {
    let s = snf(exponents);
    let rank_defect = exponents.cols() - s.rank;
    let torsion_order = s.torsion_product();
    KernelProfile {
        rank_defect,
        finite: rank_defect == 0,
        injective: rank_defect == 0 && torsion_order.is_one(),
        torsion_order,
    }
}

/// `F` has rows `(1, l_j)`; `G` spans the integer left kernel of `F` and maps
/// `Z^n` onto `Z^{n-2m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeProjection {
    pub f: IntMatrix,
    pub g: IntMatrix,
    #[serde(with = "serde_bigint")]
    pub saturation_index: BigInt,
}

fn integer_family(l: &DirectionFamily) -> Result<Vec<Vec<BigInt>>> {
    l.vectors()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()).ok_or(Error::NotConditionK))
                .collect()
        })
        .collect()
}

pub fn build_projection(e: &FundamentalSet, l: &DirectionFamily) -> Result<LatticeProjection> {
    if e.n() != l.n() {
        return Err(Error::DimensionMismatch(format!(
            "fundamental set on {} elements, {} direction vectors",
            e.n(),
            l.n()
        )));
    }
    let ints = integer_family(l)?;
    let rows: Vec<Vec<BigInt>> = ints
        .into_iter()
        .map(|v| std::iter::once(BigInt::one()).chain(v).collect())
        .collect();
    let f = IntMatrix::from_big_rows(rows)?;
    projection_from_f(f)
}

/// Builds `G` from the unimodular left factor of the Smith form of `F`.
pub fn projection_from_f(f: IntMatrix) -> Result<LatticeProjection> {
    let s = snf(&f);
    if s.rank != f.cols() {
        return Err(Error::RankDeficient {
            rank: s.rank,
            expected: f.cols(),
        });
    }
    let g = s.u.row_block(s.rank, f.rows());
    if !g.mul(&f)?.is_zero() {
        return Err(Error::InternalInconsistency("G·F is not zero".into()));
    }
    if g.rows() > 0 {
        let gs = snf(&g);
        if gs.rank != g.rows() || !gs.torsion_product().is_one() {
            return Err(Error::InternalInconsistency("G is not surjective".into()));
        }
    }
    Ok(LatticeProjection {
        f,
        g,
        saturation_index: s.torsion_product(),
    })
}

/// Sends the ray `e_i` to the primitive vector along `G e_i`, for every
/// label used by a cone.
pub fn project_fan(fan: &Fan, proj: &LatticeProjection) -> Result<Fan> {
    if proj.g.cols() != fan.rank {
        return Err(Error::DimensionMismatch(format!(
            "projection from Z^{} applied to a fan in Z^{}",
            proj.g.cols(),
            fan.rank
        )));
    }
    let used = fan
        .max_cones
        .iter()
        .fold(VertexSet::empty(), |acc, c| acc.union(*c));
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    let mut seen: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for label in used.iter() {
        let source = fan.generator(label).unwrap();
        let image: Vec<BigInt> = (0..proj.g.rows()).map(|r| dot_int(proj.g.row(r), source)).collect();
        let ray = primitive(&image)
            .ok_or_else(|| Error::CollapsedCone(format!("ray {label} maps to zero")))?;
        if let Some(other) = seen.insert(ray.clone(), label) {
            return Err(Error::CollapsedCone(format!("rays {other} and {label} map to the same ray")));
        }
        labels.push(label);
        generators.push(ray);
    }
    let rank = proj.g.rows();
    let out = Fan {
        rank,
        generators,
        labels,
        max_cones: fan.max_cones.clone(),
    };
    for c in &out.max_cones {
        if out.cone_matrix(*c).rank() != c.len() {
            return Err(Error::CollapsedCone(format!("cone {c} loses dimension")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallFailure {
    pub wall: VertexSet,
    pub cones: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Walls not shared by exactly two cones.
    pub unpaired_walls: Vec<WallFailure>,
    /// Walls whose two cones lie on the same side.
    pub same_side_walls: Vec<WallFailure>,
    pub connected: bool,
    /// The generic probe lies in exactly one cone.
    pub degree_one: bool,
    pub generic_probe_hits: usize,
    /// Advisory: axis and diagonal probes each land in some cone.
    pub probes_covered: bool,
}

/// Completeness by wall crossing: every wall in two cones on opposite sides,
/// a connected cone graph, and one generic point covered exactly once.
pub fn is_complete(fan: &Fan) -> Result<CompletenessReport> {
    let k = fan.rank;
    if let Some(c) = fan.max_cones.iter().find(|c| c.len() != k) {
        return Err(Error::NotFullDimensional(format!(
            "cone {c} has dimension {} in rank {k}",
            c.len()
        )));
    }
    if fan.max_cones.is_empty() {
        return Err(Error::NotFullDimensional("fan has no cones".into()));
    }
    if k == 0 {
        return Ok(CompletenessReport {
            complete: true,
            unpaired_walls: vec![],
            same_side_walls: vec![],
            connected: true,
            degree_one: true,
            generic_probe_hits: 1,
            probes_covered: true,
        });
    }

    let mut walls: BTreeMap<VertexSet, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in fan.max_cones.iter().enumerate() {
        for v in c.iter() {
            walls.entry(c.without(v)).or_default().push((i, v));
        }
    }
    let walls: Vec<(VertexSet, Vec<(usize, usize)>)> = walls.into_iter().collect();
    let normals: Vec<Vec<BigInt>> = walls
        .par_iter()
        .map(|(w, _)| hyperplane_normal(&fan.cone_matrix(*w).to_rows(), k))
        .collect();

    let mut unpaired_walls = Vec::new();
    let mut same_side_walls = Vec::new();
    let mut parent: Vec<usize> = (0..fan.max_cones.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for ((wall, inc), normal) in walls.iter().zip(&normals) {
        let cones: Vec<VertexSet> = inc.iter().map(|&(i, _)| fan.max_cones[i]).collect();
        if inc.len() != 2 {
            unpaired_walls.push(WallFailure { wall: *wall, cones });
            continue;
        }
        let side = |&(_, v): &(usize, usize)| dot_int(normal, fan.generator(v).unwrap()).signum();
        if side(&inc[0]) * side(&inc[1]) != BigInt::from(-1) {
            same_side_walls.push(WallFailure { wall: *wall, cones });
        }
        let (a, b) = (find(&mut parent, inc[0].0), find(&mut parent, inc[1].0));
        parent[a.max(b)] = a.min(b);
    }
    let roots: BTreeSet<usize> = (0..fan.max_cones.len()).map(|i| find(&mut parent, i)).collect();
    let connected = roots.len() == 1;

    let probe = generic_probe(&normals, k);
    let generic_probe_hits = fan
        .max_cones
        .par_iter()
        .filter(|c| fan.contains(**c, &probe))
        .count();
    let degree_one = generic_probe_hits == 1;

    let probes_covered = advisory_probes(k)
        .iter()
        .all(|p| fan.max_cones.iter().any(|c| fan.contains(*c, p)));

    let complete = unpaired_walls.is_empty() && same_side_walls.is_empty() && connected && degree_one;
    if complete && !probes_covered {
        return Err(Error::InternalInconsistency(
            "complete fan misses an advisory probe".into(),
        ));
    }
    Ok(CompletenessReport {
        complete,
        unpaired_walls,
        same_side_walls,
        connected,
        degree_one,
        generic_probe_hits,
        probes_covered,
    })
}

/// `(1, t, t², …)` for the first `t` off every wall hyperplane.
fn generic_probe(normals: &[Vec<BigInt>], k: usize) -> Vec<Rational> {
    let mut t = 1i64;
    loop {
        let p: Vec<Rational> = (0..k as u32)
            .map(|e| Rational::from_integer(BigInt::from(t).pow(e)))
            .collect();
        if normals.iter().all(|n| !dot_rat(n, &p).is_zero()) {
            return p;
        }
        t += 1;
    }
}

/// `±e_i` and the all-ones direction.
fn advisory_probes(k: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(2 * k + 1);
    for i in 0..k {
        for sign in [1, -1] {
            let mut p = vec![Rational::zero(); k];
            p[i] = Rational::from_integer(BigInt::from(sign));
            out.push(p);
        }
    }
    out.push(vec![Rational::one(); k]);
    out
}

/// The complex whose faces are the label sets of cones.
pub fn underlying_complex(fan: &Fan, ground_size: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::new(ground_size, fan.max_cones.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MainTheoremReport {
    pub holds: bool,
    pub failing_stage: Option<&'static str>,
    pub stages: Vec<Stage>,
    pub projected_fan: Option<Fan>,
    pub completeness: Option<CompletenessReport>,
}

/// Good system → projection → projected fan → completeness → underlying
/// complex equals the associated complex → sphere certificate. Stops at the
/// first failing stage. Rational directions are scaled to integers first.
pub fn verify_main_theorem(e: &FundamentalSet, l: &DirectionFamily) -> Result<MainTheoremReport> {
    let mut report = MainTheoremReport {
        holds: false,
        failing_stage: None,
        stages: Vec::new(),
        projected_fan: None,
        completeness: None,
    };
    fn stage(r: &mut MainTheoremReport, name: &'static str, passed: bool, detail: String) -> bool {
        r.stages.push(Stage { name, passed, detail });
        if !passed {
            r.failing_stage = Some(name);
        }
        passed
    }

    let good = check_good_system(e, l)?;
    let detail = format!(
        "acceptable={} se={} imbrication={}",
        good.acceptable,
        good.se,
        good.imbrication.holds()
    );
    if !stage(&mut report, "good_system", good.verdict, detail) {
        return Ok(report);
    }

    let (scale, ints) = l.integralize();
    let scaled = DirectionFamily::new(
        l.m(),
        ints.into_iter()
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .collect(),
    )?;
    let proj = match build_projection(e, &scaled) {
        Ok(p) => p,
        Err(err) => {
            stage(&mut report, "projection", false, err.to_string());
            return Ok(report);
        }
    };
    stage(
        &mut report,
        "projection",
        true,
        format!("scale={scale} saturation_index={}", proj.saturation_index),
    );

    let projected = match project_fan(&fan_of_s(e), &proj) {
        Ok(f) => f,
        Err(err) => {
            stage(&mut report, "project_fan", false, err.to_string());
            return Ok(report);
        }
    };
    stage(
        &mut report,
        "project_fan",
        true,
        format!("{} rays in Z^{}", projected.generators.len(), projected.rank),
    );

    let completeness = is_complete(&projected)?;
    let complete = completeness.complete;
    report.projected_fan = Some(projected.clone());
    report.completeness = Some(completeness);
    if !stage(&mut report, "complete", complete, String::new()) {
        return Ok(report);
    }

    let k_sigma = underlying_complex(&projected, e.n())?;
    let same = k_sigma.same_faces(&e.associated_complex());
    if !stage(&mut report, "underlying_complex", same, String::new()) {
        return Ok(report);
    }

    let dim = e.n() as isize - e.subset_size() as isize - 1;
    let cert = if dim >= 0 {
        e.associated_complex().sphere_certificate(dim as usize)?.pass
    } else {
        false
    };
    if !stage(&mut report, "sphere_certificate", cert, format!("dimension {dim}")) {
        return Ok(report);
    }
    report.holds = true;
    Ok(report)
}
