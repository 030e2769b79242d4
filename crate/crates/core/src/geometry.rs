//! Direction families in `C^m = R^{2m}` and the exact geometry of good
//! systems: spanning, imbrication, LVM witnesses, Siegel translation and the
//! associated polytope.
//!
//! A vector of `C^m` is stored as `(Re z_1, …, Re z_m, Im z_1, …, Im z_m)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{
    lp_solve, rational_rank, serde_rational, solve_square, LpOutcome, LpProblem, Rational, Relation, Sense,
};
use crate::fundsys::{FundamentalSet, SwapWitness};
use crate::simplicial::{SimplicialComplex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionFamily {
    m: usize,
    vectors: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct DirectionFamilyJson {
    m: usize,
    #[serde(with = "serde_rational::vec_vec")]
    vectors: Vec<Vec<Rational>>,
}

impl Serialize for DirectionFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DirectionFamilyJson {
            m: self.m,
            vectors: self.vectors.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectionFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DirectionFamilyJson::deserialize(d)?;
        Self::new(raw.m, raw.vectors).map_err(serde::de::Error::custom)
    }
}

impl DirectionFamily {
    /// Needs at least `2m + 1` vectors, each of length `2m`.
    pub fn new(m: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some((j, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != 2 * m) {
            return Err(Error::DimensionMismatch(format!(
                "vector {} has {} coordinates, expected {}",
                j + 1,
                v.len(),
                2 * m
            )));
        }
        if vectors.len() < 2 * m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} vectors in C^{m}, need at least {}",
                vectors.len(),
                2 * m + 1
            )));
        }
        Ok(Self { m, vectors })
    }

    /// From complex coordinates `re[j] + i·im[j]`.
    pub fn from_complex(m: usize, re: &[Vec<Rational>], im: &[Vec<Rational>]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch("real and imaginary parts differ in count".into()));
        }
        let vectors = re
            .iter()
            .zip(im)
            .map(|(a, b)| {
                if a.len() != m || b.len() != m {
                    return Err(Error::DimensionMismatch(format!("expected {m} complex coordinates")));
                }
                Ok(a.iter().chain(b).cloned().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, vectors)
    }

    /// Points of `C^1` given as `(re, im)`.
    pub fn from_c1(points: &[(Rational, Rational)]) -> Result<Self> {
        Self::new(1, points.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn real_dim(&self) -> usize {
        2 * self.m
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// The vector carrying label `j` (1-based).
    pub fn get(&self, j: usize) -> &[Rational] {
        &self.vectors[j - 1]
    }

    fn points(&self, s: VertexSet) -> Vec<&[Rational]> {
        s.iter().map(|j| self.get(j)).collect()
    }

    /// Vector `j` moves to position `perm[j - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() || VertexSet::from_labels(perm.iter().copied())? != VertexSet::full(self.n()) {
            return Err(Error::DimensionMismatch(format!("{perm:?} is not a permutation")));
        }
        let mut vectors = vec![Vec::new(); self.n()];
        for (j, v) in self.vectors.iter().enumerate() {
            vectors[perm[j] - 1] = v.clone();
        }
        Self::new(self.m, vectors)
    }

    /// `l_j ↦ A l_j + b` for a real `2m × 2m` matrix `A` (rows) and shift `b`.
    pub fn affine_image(&self, a: &[Vec<Rational>], b: &[Rational]) -> Result<Self> {
        let d = self.real_dim();
        if a.len() != d || a.iter().any(|r| r.len() != d) || b.len() != d {
            return Err(Error::DimensionMismatch(format!("affine map must be {d}x{d} plus shift")));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                a.iter()
                    .zip(b)
                    .map(|(row, shift)| dot(row, v) + shift)
                    .collect()
            })
            .collect();
        Self::new(self.m, vectors)
    }

    /// Scales by the lcm of all denominators; the result is integral, which
    /// is the witness for condition (K) on rational input.
    pub fn integralize(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let scale = self
            .vectors
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.numer() * (&scale / x.denom()))
                    .collect()
            })
            .collect();
        (scale, ints)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_match(e: &FundamentalSet, l: &DirectionFamily) -> Result<()> {
    if e.n() != l.n() {
        return Err(Error::DimensionMismatch(format!(
            "fundamental set on {} elements, {} direction vectors",
            e.n(),
            l.n()
        )));
    }
    Ok(())
}

fn check_odd_type(e: &FundamentalSet, l: &DirectionFamily) -> Result<()> {
    check_match(e, l)?;
    if e.subset_size() != 2 * l.m() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "members have {} elements, expected 2m+1 = {}",
            e.subset_size(),
            2 * l.m() + 1
        )));
    }
    Ok(())
}

/// Affine rank of the points labelled by `s`.
pub fn affine_rank(l: &DirectionFamily, s: VertexSet) -> usize {
    let pts = l.points(s);
    let Some((first, rest)) = pts.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(*first).map(|(a, b)| a - b).collect())
        .collect();
    rational_rank(&rows)
}

fn spans(l: &DirectionFamily, s: VertexSet) -> bool {
    affine_rank(l, s) == l.real_dim()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptabilityReport {
    pub holds: bool,
    /// First member whose points do not affinely span `R^{2m}`.
    pub failing_member: Option<VertexSet>,
}

/// Every member's points affinely span `R^{2m}`.
pub fn check_acceptable(e: &FundamentalSet, l: &DirectionFamily) -> Result<AcceptabilityReport> {
    check_odd_type(e, l)?;
    let failing_member = e.members().iter().copied().find(|&p| !spans(l, p));
    Ok(AcceptabilityReport {
        holds: failing_member.is_none(),
        failing_member,
    })
}

/// Hyperplane `normal·y = offset` with the first hull on the `≥` side and the
/// second on the `≤` side, scaled so the total slack over all points is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    #[serde(with = "serde_rational::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
}

impl Separator {
    /// Exact check against the generating points.
    pub fn verify(&self, l: &DirectionFamily, p: VertexSet, q: VertexSet) -> bool {
        let mut total = Rational::zero();
        for pt in l.points(p) {
            let slack = dot(&self.normal, pt) - &self.offset;
            if slack.is_negative() {
                return false;
            }
            total += slack;
        }
        for pt in l.points(q) {
            let slack = &self.offset - dot(&self.normal, pt);
            if slack.is_negative() {
                return false;
            }
            total += slack;
        }
        total.is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HullIntersection {
    /// `point` is a strictly positive convex combination of both point sets;
    /// `t` is the optimal smallest weight.
    Intersect {
        #[serde(with = "serde_rational")]
        t: Rational,
        #[serde(with = "serde_rational::vec")]
        point: Vec<Rational>,
    },
    Separated {
        #[serde(with = "serde_rational")]
        t: Rational,
        separator: Separator,
    },
}

impl HullIntersection {
    pub fn intersects(&self) -> bool {
        matches!(self, HullIntersection::Intersect { .. })
    }
}

/// Whether the interiors of `Conv(l_p, p ∈ P)` and `Conv(l_q, q ∈ Q)` meet.
///
/// Both hulls must be full-dimensional; the interior is then the set of
/// strictly positive convex combinations.
pub fn hull_interior_point_lp(l: &DirectionFamily, p: VertexSet, q: VertexSet) -> Result<HullIntersection> {
    for s in [p, q] {
        if s.max_label().is_some_and(|j| j > l.n()) {
            return Err(Error::LabelOutOfRange {
                label: s.max_label().unwrap() as i64,
                max: l.n(),
            });
        }
        if !spans(l, s) {
            return Err(Error::NotFullDimensional(format!("hull of {s}")));
        }
    }
    let (np, nq, d) = (p.len(), q.len(), l.real_dim());
    let vars = np + nq + 1;
    let t = np + nq;
    let mut objective = vec![Rational::zero(); vars];
    objective[t] = Rational::one();
    let mut lp = LpProblem::new(Sense::Maximize, objective);
    for v in 0..vars {
        lp.set_free(v);
    }
    let pp = l.points(p);
    let qp = l.points(q);
    for c in 0..d {
        let mut row = vec![Rational::zero(); vars];
        for (i, pt) in pp.iter().enumerate() {
            row[i] = pt[c].clone();
        }
        for (i, pt) in qp.iter().enumerate() {
            row[np + i] = -pt[c].clone();
        }
        lp.constrain(row, Relation::Eq, Rational::zero());
    }
    let mut sum_p = vec![Rational::zero(); vars];
    sum_p[..np].iter_mut().for_each(|x| *x = Rational::one());
    lp.constrain(sum_p, Relation::Eq, Rational::one());
    let mut sum_q = vec![Rational::zero(); vars];
    sum_q[np..np + nq].iter_mut().for_each(|x| *x = Rational::one());
    lp.constrain(sum_q, Relation::Eq, Rational::one());
    for i in 0..np + nq {
        let mut row = vec![Rational::zero(); vars];
        row[i] = Rational::one();
        row[t] = -Rational::one();
        lp.constrain(row, Relation::Ge, Rational::zero());
    }
    let (value, point) = match lp_solve(&lp)? {
        LpOutcome::Optimal { value, point } => (value, point),
        other => {
            return Err(Error::InternalInconsistency(format!(
                "imbrication LP should have a finite optimum, got {other:?}"
            )))
        }
    };
    if value.is_positive() {
        let witness = (0..d)
            .map(|c| pp.iter().zip(&point[..np]).map(|(pt, w)| &pt[c] * w).sum())
            .collect();
        return Ok(HullIntersection::Intersect { t: value, point: witness });
    }
    let separator = separating_hyperplane(l, p, q)?;
    Ok(HullIntersection::Separated { t: value, separator })
}

fn separating_hyperplane(l: &DirectionFamily, p: VertexSet, q: VertexSet) -> Result<Separator> {
    let d = l.real_dim();
    // variables: normal (d), offset
    let vars = d + 1;
    let mut lp = LpProblem::new(Sense::Maximize, vec![Rational::zero(); vars]);
    for v in 0..vars {
        lp.set_free(v);
    }
    let mut total = vec![Rational::zero(); vars];
    for pt in l.points(p) {
        let mut row: Vec<Rational> = pt.to_vec();
        row.push(-Rational::one());
        for (acc, x) in total.iter_mut().zip(&row) {
            *acc += x;
        }
        lp.constrain(row, Relation::Ge, Rational::zero());
    }
    for pt in l.points(q) {
        let mut row: Vec<Rational> = pt.iter().map(|x| -x).collect();
        row.push(Rational::one());
        for (acc, x) in total.iter_mut().zip(&row) {
            *acc += x;
        }
        lp.constrain(row, Relation::Ge, Rational::zero());
    }
    lp.constrain(total, Relation::Eq, Rational::one());
    let LpOutcome::Optimal { mut point, .. } = lp_solve(&lp)? else {
        return Err(Error::InternalInconsistency(format!(
            "hulls of {p} and {q} have disjoint interiors but no separating hyperplane was found"
        )));
    };
    let offset = point.pop().unwrap();
    let sep = Separator { normal: point, offset };
    if !sep.verify(l, p, q) {
        return Err(Error::InternalInconsistency("separator failed exact verification".into()));
    }
    Ok(sep)
}

/// Exact closed convex-hull membership.
pub fn in_hull(l: &DirectionFamily, s: VertexSet, x: &[Rational]) -> Result<bool> {
    if x.len() != l.real_dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, expected {}",
            x.len(),
            l.real_dim()
        )));
    }
    if s.is_empty() {
        return Ok(false);
    }
    let pts = l.points(s);
    let mut lp = LpProblem::new(Sense::Maximize, vec![Rational::zero(); pts.len()]);
    for (c, xc) in x.iter().enumerate() {
        lp.constrain(pts.iter().map(|pt| pt[c].clone()).collect(), Relation::Eq, xc.clone());
    }
    lp.constrain(vec![Rational::one(); pts.len()], Relation::Eq, Rational::one());
    Ok(lp_solve(&lp)?.is_feasible())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ImbricationStatus {
    Holds {
        pairs_checked: usize,
    },
    Fails {
        first: VertexSet,
        second: VertexSet,
        separator: Separator,
    },
    /// Skipped because some member's hull is degenerate.
    NotEvaluated,
}

impl ImbricationStatus {
    pub fn holds(&self) -> bool {
        matches!(self, ImbricationStatus::Holds { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodSystemReport {
    pub acceptable: bool,
    pub acceptable_failure: Option<VertexSet>,
    pub se: bool,
    pub se_witness: Option<SwapWitness>,
    pub imbrication: ImbricationStatus,
    pub verdict: bool,
    pub minimal_seu: bool,
    pub condition_k: bool,
}

/// Good iff acceptable, SE, and pairwise imbrication.
///
/// Pairs are checked in parallel; the reported failure is the first failing
/// pair in sorted order regardless of scheduling.
pub fn check_good_system(e: &FundamentalSet, l: &DirectionFamily) -> Result<GoodSystemReport> {
    let acc = check_acceptable(e, l)?;
    let se = e.check_se();
    let imbrication = if acc.holds {
        imbrication(e, l)?
    } else {
        ImbricationStatus::NotEvaluated
    };
    let verdict = acc.holds && se.holds && imbrication.holds();
    let minimal_seu = e.is_minimal_seu();
    if verdict && !minimal_seu {
        return Err(Error::InternalInconsistency(
            "good system that is not minimal for SEU".into(),
        ));
    }
    Ok(GoodSystemReport {
        acceptable: acc.holds,
        acceptable_failure: acc.failing_member,
        se: se.holds,
        se_witness: se.witness,
        imbrication,
        verdict,
        minimal_seu,
        // rational coordinates clear denominators, see `integralize`
        condition_k: true,
    })
}

fn imbrication(e: &FundamentalSet, l: &DirectionFamily) -> Result<ImbricationStatus> {
    let members = e.members();
    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (i + 1..members.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<HullIntersection>> = pairs
        .par_iter()
        .map(|&(i, j)| hull_interior_point_lp(l, members[i], members[j]))
        .collect();
    for (&(i, j), r) in pairs.iter().zip(results) {
        if let HullIntersection::Separated { separator, .. } = r? {
            return Ok(ImbricationStatus::Fails {
                first: members[i],
                second: members[j],
                separator,
            });
        }
    }
    Ok(ImbricationStatus::Holds {
        pairs_checked: pairs.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LvmWitnessReport {
    pub is_lvm_witness: bool,
    /// First `2m`-subset whose closed hull contains `x`.
    pub blocking_subset: Option<VertexSet>,
    /// All `(2m+1)`-subsets whose closed hull contains `x`.
    pub e_x: Vec<VertexSet>,
    pub e_x_matches: bool,
}

/// Checks that `x` avoids every hull of `2m` vectors and that the
/// `(2m+1)`-subsets whose hull contains `x` are exactly the members.
pub fn lvm_witness_check(e: &FundamentalSet, l: &DirectionFamily, x: &[Rational]) -> Result<LvmWitnessReport> {
    let report = check_good_system(e, l)?;
    if !report.verdict {
        return Err(Error::NotGoodSystem(
            "witness checks need a good system".into(),
        ));
    }
    witness_report(e, l, x)
}

fn witness_report(e: &FundamentalSet, l: &DirectionFamily, x: &[Rational]) -> Result<LvmWitnessReport> {
    let d = l.real_dim();
    let small = VertexSet::k_subsets(l.n(), d);
    let hits: Vec<bool> = small
        .par_iter()
        .map(|&s| in_hull(l, s, x))
        .collect::<Result<_>>()?;
    let blocking_subset = small.iter().zip(&hits).find(|(_, &h)| h).map(|(s, _)| *s);

    let big = VertexSet::k_subsets(l.n(), d + 1);
    let inside: Vec<bool> = big
        .par_iter()
        .map(|&s| in_hull(l, s, x))
        .collect::<Result<_>>()?;
    let mut e_x: Vec<VertexSet> = big.iter().zip(&inside).filter(|(_, &h)| h).map(|(s, _)| *s).collect();
    e_x.sort();
    let e_x_matches = e_x.as_slice() == e.members();
    Ok(LvmWitnessReport {
        is_lvm_witness: blocking_subset.is_none() && e_x_matches,
        blocking_subset,
        e_x,
        e_x_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessSearch {
    Found {
        #[serde(with = "serde_rational::vec")]
        x: Vec<Rational>,
    },
    /// No barycenter worked; says nothing about LVM-ness.
    Inconclusive { candidates_tried: usize },
}

/// Tries the barycenter of each member as a witness.
pub fn search_lvm_witness(e: &FundamentalSet, l: &DirectionFamily) -> Result<WitnessSearch> {
    let report = check_good_system(e, l)?;
    if !report.verdict {
        return Err(Error::NotGoodSystem("witness search needs a good system".into()));
    }
    for &p in e.members() {
        let x = barycenter(l, p);
        if witness_report(e, l, &x)?.is_lvm_witness {
            return Ok(WitnessSearch::Found { x });
        }
    }
    Ok(WitnessSearch::Inconclusive {
        candidates_tried: e.members().len(),
    })
}

pub fn barycenter(l: &DirectionFamily, s: VertexSet) -> Vec<Rational> {
    let k = Rational::from_integer(BigInt::from(s.len()));
    (0..l.real_dim())
        .map(|c| s.iter().map(|j| l.get(j)[c].clone()).sum::<Rational>() / &k)
        .collect()
}

/// `λ_j = l_j − x`.
pub fn siegel_translate(l: &DirectionFamily, x: &[Rational]) -> Result<DirectionFamily> {
    if x.len() != l.real_dim() {
        return Err(Error::DimensionMismatch(format!(
            "translation has {} coordinates, expected {}",
            x.len(),
            l.real_dim()
        )));
    }
    let vectors = l
        .vectors
        .iter()
        .map(|v| v.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    DirectionFamily::new(l.m, vectors)
}

/// `0 ∈ Conv(λ_1, …, λ_n)`.
pub fn satisfies_siegel(l: &DirectionFamily) -> Result<bool> {
    in_hull(l, VertexSet::full(l.n()), &vec![Rational::zero(); l.real_dim()])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedFace {
    pub set: VertexSet,
    /// `n − 2m − 1 − |I|`, the dimension of the polytope face it encodes.
    pub rank: i64,
}

/// The sets `I` with `0 ∈ Conv(λ_k, k ∉ I)`, graded by face dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeCombinatorics {
    pub n: usize,
    pub m: usize,
    pub faces: Vec<GradedFace>,
}

impl PolytopeCombinatorics {
    pub fn sets(&self) -> BTreeSet<VertexSet> {
        self.faces.iter().map(|f| f.set).collect()
    }

    /// Inclusion-maximal sets, which encode the vertices of the polytope.
    pub fn maximal_sets(&self) -> Vec<VertexSet> {
        let sets = self.sets();
        sets.iter()
            .filter(|s| !s.complement(self.n).iter().any(|v| sets.contains(&s.with(v))))
            .copied()
            .collect()
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_faces(self.n, self.sets().into_iter().collect())
    }
}

fn zero_in_complement_hull(l: &DirectionFamily, i: VertexSet) -> Result<bool> {
    in_hull(l, i.complement(l.n()), &vec![Rational::zero(); l.real_dim()])
}

/// Enumerates the collection breadth-first; it is closed under subsets
/// because shrinking `I` enlarges the hull.
pub fn polytope_combinatorics(e: &FundamentalSet, lambda: &DirectionFamily) -> Result<PolytopeCombinatorics> {
    check_match(e, lambda)?;
    if !satisfies_siegel(lambda)? {
        return Err(Error::SiegelViolated);
    }
    let n = lambda.n();
    let top = n as i64 - 2 * lambda.m() as i64 - 1;
    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    found.insert(VertexSet::empty());
    let mut layer = vec![VertexSet::empty()];
    while !layer.is_empty() {
        let candidates: BTreeSet<VertexSet> = layer
            .iter()
            .flat_map(|s| s.complement(n).iter().map(move |v| s.with(v)))
            .filter(|c| c.iter().all(|u| found.contains(&c.without(u))))
            .collect();
        let candidates: Vec<VertexSet> = candidates.into_iter().collect();
        let keep: Vec<bool> = candidates
            .par_iter()
            .map(|&c| zero_in_complement_hull(lambda, c))
            .collect::<Result<_>>()?;
        layer = candidates
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c)
            .collect();
        found.extend(layer.iter().copied());
    }
    let mut faces: Vec<GradedFace> = found
        .into_iter()
        .map(|set| GradedFace {
            set,
            rank: top - set.len() as i64,
        })
        .collect();
    faces.sort_by(|a, b| a.set.len().cmp(&b.set.len()).then(a.set.cmp(&b.set)));
    Ok(PolytopeCombinatorics {
        n,
        m: lambda.m(),
        faces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeVertex {
    /// Coordinates forced to zero at this vertex.
    pub zero_set: VertexSet,
    #[serde(with = "serde_rational::vec")]
    pub point: Vec<Rational>,
}

/// For each maximal set `I`, the unique `r ≥ 0` with `Σ r_j λ_j = 0`,
/// `Σ r_j = 1` and `r_i = 0` on `I`. `None` when that system is not square
/// and uniquely solvable with `r_j > 0` off `I`.
fn vertex_of(lambda: &DirectionFamily, zero_set: VertexSet) -> Option<Vec<Rational>> {
    let support: Vec<usize> = zero_set.complement(lambda.n()).iter().collect();
    let d = lambda.real_dim();
    if support.len() != d + 1 {
        return None;
    }
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|c| support.iter().map(|&j| lambda.get(j)[c].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); d + 1]);
    let mut b = vec![Rational::zero(); d];
    b.push(Rational::one());
    let r = solve_square(&a, &b)?;
    if r.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let mut point = vec![Rational::zero(); lambda.n()];
    for (&j, x) in support.iter().zip(r) {
        point[j - 1] = x;
    }
    Some(point)
}

pub fn polytope_vertices(e: &FundamentalSet, lambda: &DirectionFamily) -> Result<Vec<PolytopeVertex>> {
    let combinatorics = polytope_combinatorics(e, lambda)?;
    combinatorics
        .maximal_sets()
        .into_iter()
        .map(|zero_set| {
            vertex_of(lambda, zero_set)
                .map(|point| PolytopeVertex { zero_set, point })
                .ok_or_else(|| Error::VerificationFailed(format!("{zero_set} does not encode a simple vertex")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    /// The collection equals the associated complex as a set family.
    pub same_sets: bool,
    /// Every maximal set encodes a simple vertex, so inclusion of sets is
    /// reverse inclusion of polytope faces.
    pub order_reversed: bool,
    pub holds: bool,
}

pub fn verify_dual(e: &FundamentalSet, lambda: &DirectionFamily) -> Result<DualReport> {
    let combinatorics = polytope_combinatorics(e, lambda)?;
    let same_sets = combinatorics.sets() == e.associated_complex().faces();
    let order_reversed = combinatorics.maximal_sets().into_iter().all(|s| {
        combinatorics.faces.iter().any(|f| f.set == s && f.rank == 0) && vertex_of(lambda, s).is_some()
    });
    Ok(DualReport {
        same_sets,
        order_reversed,
        holds: same_sets && order_reversed,
    })
}

/// A fundamental set with its direction family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct System {
    pub fundamental_set: FundamentalSet,
    pub directions: DirectionFamily,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn square_set() -> FundamentalSet {
        FundamentalSet::from_lists(5, 3, &[vec![1, 2, 5], vec![1, 4, 5], vec![2, 3, 5], vec![3, 4, 5]]).unwrap()
    }

    fn c1(points: &[(i64, i64)]) -> DirectionFamily {
        DirectionFamily::from_c1(&points.iter().map(|&(a, b)| (int(a), int(b))).collect::<Vec<_>>()).unwrap()
    }

    fn square_l() -> DirectionFamily {
        c1(&[(1, 0), (0, 1), (1, 0), (0, 1), (0, 0)])
    }

    fn vs(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels.iter().copied()).unwrap()
    }

    fn quarter() -> Vec<Rational> {
        vec![rat(1, 4), rat(1, 4)]
    }

    #[test]
    fn family_shape() {
        assert!(DirectionFamily::new(1, vec![vec![int(1)]; 3]).is_err());
        assert!(DirectionFamily::new(1, vec![vec![int(1), int(0)]; 2]).is_err());
        let l = square_l();
        assert_eq!((l.m(), l.n(), l.real_dim()), (1, 5, 2));
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"m":1,"vectors":[["1","0"],["0","1"],["1","0"],["0","1"],["0","0"]]}"#);
        let back: DirectionFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        let halves = DirectionFamily::from_c1(&[(rat(1, 2), rat(1, 3)), (int(0), int(0)), (int(1), int(1))]).unwrap();
        let (scale, ints) = halves.integralize();
        assert_eq!(scale, BigInt::from(6));
        assert_eq!(ints[0], vec![BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn acceptability() {
        assert!(check_acceptable(&square_set(), &square_l()).unwrap().holds);
        let zeros = c1(&[(0, 0); 5]);
        let r = check_acceptable(&square_set(), &zeros).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_member, Some(vs(&[1, 2, 5])));
        let kernel = FundamentalSet::from_lists(4, 3, &[vec![1, 2, 4], vec![2, 3, 4]]).unwrap();
        assert!(check_acceptable(&kernel, &c1(&[(1, 0), (0, 1), (3, 0), (-1, -1)])).unwrap().holds);
        let wrong = FundamentalSet::from_lists(5, 2, &[vec![1, 2]]).unwrap();
        assert!(matches!(check_acceptable(&wrong, &square_l()), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn identical_hulls_meet_at_barycenter() {
        let l = square_l();
        let p = vs(&[1, 2, 5]);
        match hull_interior_point_lp(&l, p, p).unwrap() {
            HullIntersection::Intersect { t, .. } => assert_eq!(t, rat(1, 3)),
            other => panic!("{other:?}"),
        }
        assert!(hull_interior_point_lp(&l, p, vs(&[3, 4, 5])).unwrap().intersects());
    }

    #[test]
    fn disjoint_triangles_are_separated() {
        let l = c1(&[(0, 0), (1, 0), (0, 1), (5, 5), (6, 5), (5, 6)]);
        let (p, q) = (vs(&[1, 2, 3]), vs(&[4, 5, 6]));
        match hull_interior_point_lp(&l, p, q).unwrap() {
            HullIntersection::Separated { t, separator } => {
                assert!(!t.is_positive());
                assert!(separator.verify(&l, p, q));
            }
            other => panic!("{other:?}"),
        }
        assert!(!hull_interior_point_lp(&l, q, p).unwrap().intersects());
    }

    #[test]
    fn touching_triangles_do_not_imbricate() {
        // closures share an edge, interiors are disjoint
        let l = c1(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(!hull_interior_point_lp(&l, vs(&[1, 2, 3]), vs(&[2, 3, 4])).unwrap().intersects());
    }

    #[test]
    fn degenerate_hull_rejected() {
        let l = c1(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
        assert!(matches!(
            hull_interior_point_lp(&l, vs(&[1, 2, 3]), vs(&[1, 2, 4])),
            Err(Error::NotFullDimensional(_))
        ));
    }

    #[test]
    fn good_systems() {
        let r = check_good_system(&square_set(), &square_l()).unwrap();
        assert!(r.acceptable && r.se && r.imbrication.holds() && r.verdict && r.minimal_seu);
        assert_eq!(r.imbrication, ImbricationStatus::Holds { pairs_checked: 6 });

        let r = check_good_system(&square_set(), &c1(&[(0, 0); 5])).unwrap();
        assert!(!r.acceptable && !r.verdict);
        assert_eq!(r.imbrication, ImbricationStatus::NotEvaluated);

        let kernel = FundamentalSet::from_lists(4, 3, &[vec![1, 2, 4], vec![2, 3, 4]]).unwrap();
        let r = check_good_system(&kernel, &c1(&[(1, 0), (0, 1), (3, 0), (-1, -1)])).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn separated_members_fail_imbrication() {
        let e = FundamentalSet::from_lists(4, 3, &[vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let r = check_good_system(&e, &c1(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert!(r.acceptable && !r.verdict);
        match r.imbrication {
            ImbricationStatus::Fails { first, second, .. } => {
                assert_eq!((first, second), (vs(&[1, 2, 3]), vs(&[2, 3, 4])))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lvm_witnesses() {
        let r = lvm_witness_check(&square_set(), &square_l(), &quarter()).unwrap();
        assert!(r.is_lvm_witness);
        assert_eq!(r.e_x, square_set().members());

        // (1+i)/2 lies on the segment between l_1 = 1 and l_2 = i
        let r = lvm_witness_check(&square_set(), &square_l(), &[rat(1, 2), rat(1, 2)]).unwrap();
        assert!(!r.is_lvm_witness);
        assert_eq!(r.blocking_subset, Some(vs(&[1, 2])));

        let r = lvm_witness_check(&square_set(), &square_l(), &[int(1), int(0)]).unwrap();
        assert!(!r.is_lvm_witness);

        let bad = lvm_witness_check(&square_set(), &c1(&[(0, 0); 5]), &quarter());
        assert!(matches!(bad, Err(Error::NotGoodSystem(_))));

        assert!(matches!(
            search_lvm_witness(&square_set(), &square_l()).unwrap(),
            WitnessSearch::Found { .. }
        ));
    }

    #[test]
    fn siegel_translation() {
        let lam = siegel_translate(&square_l(), &quarter()).unwrap();
        assert_eq!(lam.get(1), &[rat(3, 4), rat(-1, 4)]);
        assert_eq!(lam.get(3), lam.get(1));
        assert_eq!(lam.get(2), &[rat(-1, 4), rat(3, 4)]);
        assert_eq!(lam.get(5), &[rat(-1, 4), rat(-1, 4)]);
        assert_eq!(siegel_translate(&square_l(), &[int(0), int(0)]).unwrap(), square_l());
        let back = siegel_translate(&lam, &[rat(-1, 4), rat(-1, 4)]).unwrap();
        assert_eq!(back, square_l());
        assert!(satisfies_siegel(&lam).unwrap());
    }

    #[test]
    fn square_polytope() {
        let lam = siegel_translate(&square_l(), &quarter()).unwrap();
        let pc = polytope_combinatorics(&square_set(), &lam).unwrap();
        assert_eq!(pc.sets(), square_set().associated_complex().faces());
        assert!(pc.faces.iter().any(|f| f.set.is_empty() && f.rank == 2));
        assert!(verify_dual(&square_set(), &lam).unwrap().holds);

        let mut points: Vec<Vec<Rational>> = polytope_vertices(&square_set(), &lam)
            .unwrap()
            .into_iter()
            .map(|v| v.point)
            .collect();
        points.sort();
        let q = rat(1, 4);
        let z = int(0);
        let h = rat(1, 2);
        let mut expected = vec![
            vec![q.clone(), q.clone(), z.clone(), z.clone(), h.clone()],
            vec![z.clone(), q.clone(), q.clone(), z.clone(), h.clone()],
            vec![q.clone(), z.clone(), z.clone(), q.clone(), h.clone()],
            vec![z.clone(), z.clone(), q.clone(), q.clone(), h.clone()],
        ];
        expected.sort();
        assert_eq!(points, expected);
    }

    #[test]
    fn simplex_polytope() {
        // three points around the origin: the polytope is a single point
        let e = FundamentalSet::from_lists(3, 3, &[vec![1, 2, 3]]).unwrap();
        let lam = c1(&[(1, 0), (0, 1), (-1, -1)]);
        let pc = polytope_combinatorics(&e, &lam).unwrap();
        assert_eq!(pc.faces.len(), 1);
        assert_eq!(pc.faces[0].rank, 0);
        assert!(verify_dual(&e, &lam).unwrap().holds);

        // four points: a segment, dual to two points
        let e = FundamentalSet::from_lists(4, 3, &[vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let lam = c1(&[(2, 1), (-1, 1), (-1, -1), (2, -1)]);
        assert!(verify_dual(&e, &lam).unwrap().holds);
    }

    #[test]
    fn siegel_violation() {
        let lam = c1(&[(1, 0), (2, 1), (1, 0), (2, 1), (1, 1)]);
        assert_eq!(polytope_combinatorics(&square_set(), &lam), Err(Error::SiegelViolated));
    }
}
