//! Fundamental sets: families of `M`-subsets of `{1, …, n}`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplicial::{FacetGraph, SimplicialComplex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSet {
    n: usize,
    m: usize,
    members: Vec<VertexSet>,
}

/// `(M, n, k)` with `k` the number of indispensable elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeSignature {
    #[serde(rename = "M")]
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, self.k)
    }
}

#[derive(Serialize, Deserialize)]
struct FundamentalSetJson {
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    members: Vec<VertexSet>,
}

impl Serialize for FundamentalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FundamentalSetJson {
            n: self.n,
            m: self.m,
            members: self.members.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FundamentalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FundamentalSetJson::deserialize(d)?;
        Self::new(raw.n, raw.m, raw.members).map_err(serde::de::Error::custom)
    }
}

/// A failed substitution: `member`, the incoming element `k`, and every `k'`
/// whose swap stays in the set (none for SE failures, several for SEU).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapWitness {
    pub member: VertexSet,
    pub k: usize,
    pub substitutes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapReport {
    pub holds: bool,
    pub witness: Option<SwapWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeuEquivalenceReport {
    pub seu: bool,
    pub facet_exchange: bool,
    pub two_facet_ridges: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub minimal_seu: bool,
    pub pseudo_manifold: bool,
    pub agree: bool,
}

impl FundamentalSet {
    pub fn new(n: usize, m: usize, members: Vec<VertexSet>) -> Result<Self> {
        if n > VertexSet::MAX_LABEL {
            return Err(Error::TooLarge {
                n,
                limit: VertexSet::MAX_LABEL,
            });
        }
        if m > n {
            return Err(Error::InvalidFundamentalSet(format!(
                "subset size {m} exceeds ground size {n}"
            )));
        }
        if members.is_empty() {
            return Err(Error::InvalidFundamentalSet("no members".into()));
        }
        for p in &members {
            if p.len() != m {
                return Err(Error::InvalidFundamentalSet(format!(
                    "member {p} does not have {m} elements"
                )));
            }
            if let Some(max) = p.max_label() {
                if max > n {
                    return Err(Error::LabelOutOfRange {
                        label: max as i64,
                        max: n,
                    });
                }
            }
        }
        let members = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(Self { n, m, members })
    }

    pub fn from_lists(n: usize, m: usize, members: &[Vec<usize>]) -> Result<Self> {
        let sets = members
            .iter()
            .map(|p| VertexSet::from_labels(p.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, m, sets)
    }

    /// Members are the complements of the facets of a pure complex.
    pub fn from_complex(k: &SimplicialComplex) -> Result<Self> {
        let dim = k.is_pure()?.ok_or(Error::NotPure)?;
        let n = k.ground_size();
        let members = k.facets().iter().map(|f| f.complement(n)).collect();
        Self::new(n, n - (dim + 1) as usize, members)
    }

    /// Builds a set over arbitrary integer labels. `ground` lists the labels
    /// in the order they are mapped to `1, …, n`.
    pub fn from_external(m: usize, ground: &[i64], members: &[Vec<i64>]) -> Result<(Self, LabelMap)> {
        let map = LabelMap::new(ground.to_vec())?;
        let sets = members
            .iter()
            .map(|p| VertexSet::from_labels(p.iter().map(|&l| map.to_internal(l)).collect::<Result<Vec<_>>>()?))
            .collect::<Result<Vec<_>>>()?;
        Ok((Self::new(ground.len(), m, sets)?, map))
    }

    /// Renames label `i` to `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if VertexSet::from_labels(perm.iter().copied())? != VertexSet::full(self.n) || perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{perm:?} is not a permutation of 1..={}",
                self.n
            )));
        }
        let members = self
            .members
            .iter()
            .map(|p| VertexSet::from_labels(p.iter().map(|i| perm[i - 1])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, self.m, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset_size(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn contains(&self, p: VertexSet) -> bool {
        self.members.binary_search(&p).is_ok()
    }

    pub fn indispensable(&self) -> VertexSet {
        self.members
            .iter()
            .fold(VertexSet::full(self.n), |acc, p| acc.intersection(*p))
    }

    pub fn type_signature(&self) -> TypeSignature {
        TypeSignature {
            m: self.m,
            n: self.n,
            k: self.indispensable().len(),
        }
    }

    /// Contains a member.
    pub fn is_acceptable(&self, s: VertexSet) -> bool {
        self.members.iter().any(|p| p.is_subset(s))
    }

    /// Every `k' ∈ P` such that `(P ∖ {k'}) ∪ {k}` is a member.
    pub fn substitutes(&self, p: VertexSet, k: usize) -> Vec<usize> {
        let lookup: HashSet<VertexSet> = self.members.iter().copied().collect();
        substitutes_in(&lookup, p, k)
    }

    fn swap_report(&self, unique: bool) -> SwapReport {
        let lookup: HashSet<VertexSet> = self.members.iter().copied().collect();
        for &p in &self.members {
            for k in 1..=self.n {
                let subs = substitutes_in(&lookup, p, k);
                if subs.is_empty() || (unique && subs.len() > 1) {
                    return SwapReport {
                        holds: false,
                        witness: Some(SwapWitness {
                            member: p,
                            k,
                            substitutes: subs,
                        }),
                    };
                }
            }
        }
        SwapReport {
            holds: true,
            witness: None,
        }
    }

    pub fn check_se(&self) -> SwapReport {
        self.swap_report(false)
    }

    pub fn check_seu(&self) -> SwapReport {
        self.swap_report(true)
    }

    /// Faces are the sets whose complement is acceptable; facets are the
    /// complements of the members.
    pub fn associated_complex(&self) -> SimplicialComplex {
        let facets = self.members.iter().map(|p| p.complement(self.n)).collect();
        SimplicialComplex::new(self.n, facets).expect("complements of equal-size sets are incomparable")
    }

    /// For each facet `Q` and each `k`, exactly one `k' ∉ Q` makes
    /// `(Q ∪ {k'}) ∖ {k}` a facet again.
    pub fn facet_exchange_property(&self) -> bool {
        let complex = self.associated_complex();
        let facets: HashSet<VertexSet> = complex.facets().iter().copied().collect();
        complex.facets().iter().all(|&q| {
            (1..=self.n).all(|k| {
                let count = q
                    .complement(self.n)
                    .iter()
                    .filter(|&k2| facets.contains(&q.with(k2).without(k)))
                    .count();
                count == 1
            })
        })
    }

    /// SEU, facet exchange and two-facet ridges, which always coincide.
    pub fn seu_equivalences(&self) -> SeuEquivalenceReport {
        let seu = self.check_seu().holds;
        let facet_exchange = self.facet_exchange_property();
        let two_facet_ridges = self
            .associated_complex()
            .ridges_two_facet_property()
            .map(|r| r.holds)
            .expect("associated complex is pure and nonempty");
        SeuEquivalenceReport {
            seu,
            facet_exchange,
            two_facet_ridges,
            agree: seu == facet_exchange && seu == two_facet_ridges,
        }
    }

    /// Members joined when they differ by exactly one element.
    pub fn replacement_graph(&self) -> FacetGraph {
        let mut edges = Vec::new();
        for (i, p) in self.members.iter().enumerate() {
            for (j, q) in self.members.iter().enumerate().skip(i + 1) {
                if p.intersection(*q).len() + 1 == self.m {
                    edges.push((i, j));
                }
            }
        }
        FacetGraph {
            nodes: self.members.clone(),
            edges,
        }
    }

    /// SEU with a connected replacement graph.
    pub fn is_minimal_seu(&self) -> bool {
        self.check_seu().holds && self.replacement_graph().is_connected()
    }

    /// Splits an SEU set into its minimal parts, one per component of the
    /// replacement graph.
    pub fn decompose_minimal(&self) -> Result<Vec<FundamentalSet>> {
        if !self.check_seu().holds {
            return Err(Error::SeuViolated);
        }
        let graph = self.replacement_graph();
        graph
            .components()
            .into_iter()
            .map(|comp| Self::new(self.n, self.m, comp.iter().map(|&i| self.members[i]).collect()))
            .collect()
    }

    pub fn minimality_pseudomanifold_check(&self) -> Result<MinimalityReport> {
        if self.n == self.m {
            return Err(Error::DegenerateType);
        }
        let minimal_seu = self.is_minimal_seu();
        let pseudo_manifold = self.associated_complex().is_pseudo_manifold()?;
        Ok(MinimalityReport {
            minimal_seu,
            pseudo_manifold,
            agree: minimal_seu == pseudo_manifold,
        })
    }

    pub fn arrangement_description(&self) -> ArrangementDescription {
        ArrangementDescription {
            n: self.n,
            subspaces: minimal_non_faces(&self.associated_complex()),
        }
    }
}

fn substitutes_in(lookup: &HashSet<VertexSet>, p: VertexSet, k: usize) -> Vec<usize> {
    p.iter()
        .filter(|&k2| lookup.contains(&p.without(k2).with(k)))
        .collect()
}

/// Inclusion-minimal subsets of `1..=n` that are not faces.
pub fn minimal_non_faces(k: &SimplicialComplex) -> Vec<VertexSet> {
    if k.facets().is_empty() {
        return vec![VertexSet::empty()];
    }
    let n = k.ground_size();
    let faces = k.faces();
    let mut out = BTreeSet::new();
    for tau in &faces {
        for v in tau.complement(n).iter() {
            let sigma = tau.with(v);
            if !faces.contains(&sigma) && sigma.iter().all(|u| faces.contains(&sigma.without(u))) {
                out.insert(sigma);
            }
        }
    }
    out.into_iter().collect()
}

/// The open set as the complement of coordinate subspaces
/// `L_σ = {z : z_i = 0 for i ∈ σ}`, one per minimal non-face `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementDescription {
    pub n: usize,
    pub subspaces: Vec<VertexSet>,
}

impl ArrangementDescription {
    /// Whether points with nonzero coordinates exactly on `support` lie in
    /// the complement.
    pub fn contains_support(&self, support: VertexSet) -> bool {
        self.subspaces.iter().all(|s| !s.intersection(support).is_empty())
    }
}

impl fmt::Display for ArrangementDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subspaces.is_empty() {
            return write!(f, "C^{}", self.n);
        }
        let parts: Vec<String> = self
            .subspaces
            .iter()
            .map(|s| {
                let coords: Vec<String> = s.iter().map(|i| format!("z_{i}")).collect();
                if coords.len() == 1 {
                    format!("{} != 0", coords[0])
                } else {
                    format!("({}) != 0", coords.join(","))
                }
            })
            .collect();
        write!(f, "{{z in C^{} : {}}}", self.n, parts.join(", "))
    }
}

/// Correspondence between external integer labels and `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMap {
    external: Vec<i64>,
}

impl LabelMap {
    pub fn new(external: Vec<i64>) -> Result<Self> {
        let distinct: HashSet<i64> = external.iter().copied().collect();
        if distinct.len() != external.len() {
            return Err(Error::InvalidFundamentalSet("repeated ground label".into()));
        }
        if external.len() > VertexSet::MAX_LABEL {
            return Err(Error::TooLarge {
                n: external.len(),
                limit: VertexSet::MAX_LABEL,
            });
        }
        Ok(Self { external })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            external: (1..=n as i64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.external.is_empty()
    }

    pub fn to_internal(&self, label: i64) -> Result<usize> {
        self.external
            .iter()
            .position(|&l| l == label)
            .map(|i| i + 1)
            .ok_or(Error::LabelOutOfRange {
                label,
                max: self.external.len(),
            })
    }

    pub fn to_external(&self, label: usize) -> i64 {
        self.external[label - 1]
    }

    pub fn external_set(&self, s: VertexSet) -> Vec<i64> {
        let mut out: Vec<i64> = s.iter().map(|l| self.to_external(l)).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_set() -> FundamentalSet {
        FundamentalSet::from_lists(5, 3, &[vec![1, 2, 5], vec![1, 4, 5], vec![2, 3, 5], vec![3, 4, 5]]).unwrap()
    }

    fn vs(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(FundamentalSet::from_lists(3, 2, &[vec![1, 2, 3]]).is_err());
        assert!(FundamentalSet::from_lists(3, 4, &[vec![1, 2, 3]]).is_err());
        assert!(FundamentalSet::from_lists(3, 2, &[]).is_err());
        assert!(FundamentalSet::from_lists(3, 2, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn indispensable_elements() {
        let e = square_set();
        assert_eq!(e.indispensable(), vs(&[5]));
        assert_eq!(e.type_signature(), TypeSignature { m: 3, n: 5, k: 1 });
        let singletons = FundamentalSet::from_lists(4, 1, &[vec![1], vec![2], vec![3], vec![4]]).unwrap();
        assert!(singletons.indispensable().is_empty());
        let one = FundamentalSet::from_lists(3, 3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(one.indispensable(), vs(&[1, 2, 3]));
    }

    #[test]
    fn se_and_seu() {
        let e = square_set();
        assert!(e.check_se().holds);
        assert!(e.check_seu().holds);

        let split = FundamentalSet::from_lists(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let r = split.check_se();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.member, w.k), (vs(&[1, 2]), 3));
        assert!(w.substitutes.is_empty());

        let one = FundamentalSet::from_lists(3, 3, &[vec![1, 2, 3]]).unwrap();
        assert!(one.check_se().holds && one.check_seu().holds);

        let pairs = FundamentalSet::from_lists(3, 2, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let r = pairs.check_seu();
        assert!(pairs.check_se().holds && !r.holds);
        assert_eq!(r.witness.unwrap().substitutes, vec![1, 2]);

        let tail = FundamentalSet::from_lists(4, 2, &[vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4]]).unwrap();
        assert!(!tail.check_seu().holds);
    }

    #[test]
    fn associated_complexes() {
        let k = square_set().associated_complex();
        assert_eq!(k.facets(), &[vs(&[1, 2]), vs(&[1, 4]), vs(&[2, 3]), vs(&[3, 4])]);
        assert_eq!(k.vertices(), vs(&[1, 2, 3, 4]));

        let single = FundamentalSet::from_lists(5, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(single.associated_complex().facets(), &[vs(&[3, 4, 5])]);

        let all = FundamentalSet::from_lists(4, 3, &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]])
            .unwrap();
        assert_eq!(all.associated_complex().facets().len(), 4);
        assert!(all.associated_complex().facets().iter().all(|f| f.len() == 1));
    }

    #[test]
    fn equivalence_reports() {
        let r = square_set().seu_equivalences();
        assert!(r.seu && r.facet_exchange && r.two_facet_ridges && r.agree);
        let split = FundamentalSet::from_lists(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let r = split.seu_equivalences();
        assert!(!r.seu && !r.facet_exchange && !r.two_facet_ridges && r.agree);
    }

    #[test]
    fn decomposition() {
        assert_eq!(square_set().decompose_minimal().unwrap().len(), 1);
        let squares = SimplicialComplex::from_lists(
            10,
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4], vec![6, 7], vec![7, 8], vec![8, 9], vec![6, 9]],
        )
        .unwrap();
        let two = FundamentalSet::from_complex(&squares).unwrap();
        assert_eq!(two.type_signature(), TypeSignature { m: 8, n: 10, k: 2 });
        assert!(two.check_seu().holds);
        let parts = two.decompose_minimal().unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.is_minimal_seu()));
        let one = FundamentalSet::from_lists(3, 1, &[vec![2]]).unwrap();
        assert_eq!(one.decompose_minimal(), Err(Error::SeuViolated));
        let fixed = FundamentalSet::from_lists(2, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(fixed.decompose_minimal().unwrap().len(), 1);
    }

    #[test]
    fn minimality_matches_pseudo_manifold() {
        let r = square_set().minimality_pseudomanifold_check().unwrap();
        assert!(r.minimal_seu && r.pseudo_manifold);
        let split = FundamentalSet::from_lists(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let r = split.minimality_pseudomanifold_check().unwrap();
        assert!(!r.minimal_seu && !r.pseudo_manifold);
        let degenerate = FundamentalSet::from_lists(2, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(degenerate.minimality_pseudomanifold_check(), Err(Error::DegenerateType));
    }

    #[test]
    fn arrangement() {
        let a = square_set().arrangement_description();
        assert_eq!(a.subspaces, vec![vs(&[1, 3]), vs(&[2, 4]), vs(&[5])]);
        assert_eq!(a.to_string(), "{z in C^5 : (z_1,z_3) != 0, (z_2,z_4) != 0, z_5 != 0}");

        let full = SimplicialComplex::from_lists(3, &[vec![1, 2, 3]]).unwrap();
        assert!(minimal_non_faces(&full).is_empty());
        let boundary = SimplicialComplex::simplex_boundary(4);
        assert_eq!(minimal_non_faces(&boundary), vec![vs(&[1, 2, 3, 4])]);
    }

    #[test]
    fn external_labels() {
        let (e, map) =
            FundamentalSet::from_external(2, &[0, 1, 2, 3], &[vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert_eq!(e.indispensable(), vs(&[1]));
        assert_eq!(map.external_set(e.indispensable()), vec![0]);
        assert!(FundamentalSet::from_external(1, &[0, 0], &[vec![0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = serde_json::to_string(&square_set()).unwrap();
        assert_eq!(json, r#"{"n":5,"M":3,"members":[[1,2,5],[1,4,5],[2,3,5],[3,4,5]]}"#);
        let back: FundamentalSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, square_set());
    }
}
