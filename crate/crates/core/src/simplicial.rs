//! Pure simplicial complexes on labels `1..=n`.
//!
//! Faces are derived from the facet list on demand. Sphere recognition is
//! certificate based: pseudo-manifold axioms plus the rational Betti numbers
//! of a sphere. That is a set of necessary conditions, not a homeomorphism
//! proof.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;

/// A set of labels from `1..=64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const MAX_LABEL: usize = 64;

    pub const fn empty() -> Self {
        Self(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_LABEL);
        if n == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn singleton(label: usize) -> Self {
        Self::empty().with(label)
    }

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        let mut s = Self::empty();
        for l in labels {
            if l == 0 || l > Self::MAX_LABEL {
                return Err(Error::LabelOutOfRange {
                    label: l as i64,
                    max: Self::MAX_LABEL,
                });
            }
            s = s.with(l);
        }
        Ok(s)
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=Self::MAX_LABEL).contains(&label) && self.0 & (1u64 << (label - 1)) != 0
    }

    #[must_use]
    pub fn with(self, label: usize) -> Self {
        debug_assert!((1..=Self::MAX_LABEL).contains(&label));
        Self(self.0 | (1u64 << (label - 1)))
    }

    #[must_use]
    pub fn without(self, label: usize) -> Self {
        if label == 0 || label > Self::MAX_LABEL {
            return self;
        }
        Self(self.0 & !(1u64 << (label - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    /// Complement inside `{1, …, n}`.
    pub fn complement(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn max_label(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(tz + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        // standard submask enumeration, descending, then the empty set
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }

    /// All `k`-subsets of `{1, …, n}`, in increasing bit order.
    pub fn k_subsets(n: usize, k: usize) -> Vec<VertexSet> {
        assert!(n <= Self::MAX_LABEL);
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![Self::empty()];
        }
        let limit = 1u128 << n;
        let mut out = Vec::new();
        let mut x: u128 = (1u128 << k) - 1;
        while x < limit {
            out.push(Self(x as u64));
            // Gosper's hack: next integer with the same popcount
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
        out
    }

    /// Applies a label map; labels missing from the map are dropped.
    pub fn map_labels(self, map: &impl Fn(usize) -> Option<usize>) -> Result<Self> {
        Self::from_labels(self.iter().filter_map(map))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        let set = Self::from_labels(labels.iter().copied()).map_err(serde::de::Error::custom)?;
        if set.len() != labels.len() {
            return Err(serde::de::Error::custom("repeated label in a set"));
        }
        Ok(set)
    }
}

/// A simplicial complex given by its facets on the ground set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground_size: usize,
    facets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Vec<VertexSet>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            n: self.ground_size,
            facets: self.facets.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        Self::new(raw.n, raw.facets).map_err(serde::de::Error::custom)
    }
}

fn check_ground(n: usize, sets: &[VertexSet]) -> Result<()> {
    if n > VertexSet::MAX_LABEL {
        return Err(Error::LabelOutOfRange {
            label: n as i64,
            max: VertexSet::MAX_LABEL,
        });
    }
    for s in sets {
        if let Some(max) = s.max_label() {
            if max > n {
                return Err(Error::LabelOutOfRange {
                    label: max as i64,
                    max: n,
                });
            }
        }
    }
    Ok(())
}

impl SimplicialComplex {
    /// Facets must be pairwise incomparable; duplicates are merged.
    pub fn new(ground_size: usize, facets: Vec<VertexSet>) -> Result<Self> {
        check_ground(ground_size, &facets)?;
        let facets: Vec<VertexSet> = facets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for (i, a) in facets.iter().enumerate() {
            for b in &facets[i + 1..] {
                if a.is_subset(*b) || b.is_subset(*a) {
                    return Err(Error::InvalidComplex(format!(
                        "facet {a} and facet {b} are nested"
                    )));
                }
            }
        }
        Ok(Self {
            ground_size,
            facets,
        })
    }

    /// Keeps only the inclusion-maximal sets of `faces`.
    pub fn from_faces(ground_size: usize, faces: Vec<VertexSet>) -> Result<Self> {
        check_ground(ground_size, &faces)?;
        let faces: BTreeSet<VertexSet> = faces.into_iter().collect();
        let facets = faces
            .iter()
            .filter(|f| !faces.iter().any(|g| g != *f && f.is_subset(*g)))
            .copied()
            .collect();
        Ok(Self {
            ground_size,
            facets,
        })
    }

    pub fn from_lists(ground_size: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let sets = facets
            .iter()
            .map(|f| {
                let s = VertexSet::from_labels(f.iter().copied())?;
                if s.len() != f.len() {
                    return Err(Error::InvalidComplex(format!("repeated label in {f:?}")));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, sets)
    }

    /// Boundary of the simplex on `1..=k`, as a complex on `1..=k`.
    pub fn simplex_boundary(k: usize) -> Self {
        let full = VertexSet::full(k);
        Self::new(k, (1..=k).map(|i| full.without(i)).collect()).expect("valid boundary")
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Facets in lexicographic order of their sorted labels.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::empty(), |acc, f| acc.union(*f))
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Dimension of the largest facet (`-1` for `{∅}`); `None` when empty.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Same facets, ignoring the declared ground size.
    pub fn same_faces(&self, other: &Self) -> bool {
        self.facets == other.facets
    }

    pub fn with_ground_size(&self, n: usize) -> Result<Self> {
        Self::new(n, self.facets.clone())
    }

    /// All faces, the empty face included.
    pub fn faces(&self) -> BTreeSet<VertexSet> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.subsets());
        }
        out
    }

    /// Faces grouped by dimension; index 0 holds the vertices.
    pub fn faces_by_dimension(&self) -> Vec<Vec<VertexSet>> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); (dim + 1).max(0) as usize];
        for face in self.faces() {
            if !face.is_empty() {
                out[face.len() - 1].push(face);
            }
        }
        out
    }

    /// `(f_0, f_1, …)`, not counting the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `Some(dim)` when every facet has the same size.
    pub fn is_pure(&self) -> Result<Option<isize>> {
        let first = self.facets.first().ok_or(Error::EmptyComplex)?;
        let size = first.len();
        Ok(self
            .facets
            .iter()
            .all(|f| f.len() == size)
            .then_some(size as isize - 1))
    }

    fn pure_dimension(&self) -> Result<isize> {
        self.is_pure()?.ok_or(Error::NotPure)
    }

    /// Ridge → indices of facets containing it.
    fn ridge_incidence(&self) -> BTreeMap<VertexSet, Vec<usize>> {
        let mut map: BTreeMap<VertexSet, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for v in f.iter() {
                map.entry(f.without(v)).or_default().push(i);
            }
        }
        map
    }

    /// Whether every ridge lies in exactly two facets, with the violators.
    pub fn ridges_two_facet_property(&self) -> Result<RidgeReport> {
        self.pure_dimension()?;
        let violations: Vec<RidgeViolation> = self
            .ridge_incidence()
            .into_iter()
            .filter(|(_, fs)| fs.len() != 2)
            .map(|(ridge, fs)| RidgeViolation {
                ridge,
                facet_count: fs.len(),
            })
            .collect();
        Ok(RidgeReport {
            holds: violations.is_empty(),
            violations,
        })
    }

    /// Facets joined when they share a ridge.
    pub fn facet_graph(&self) -> Result<FacetGraph> {
        self.pure_dimension()?;
        let mut edges = BTreeSet::new();
        for fs in self.ridge_incidence().values() {
            for (a, &i) in fs.iter().enumerate() {
                for &j in &fs[a + 1..] {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        Ok(FacetGraph {
            nodes: self.facets.clone(),
            edges: edges.into_iter().collect(),
        })
    }

    /// Two-facet ridges and a connected facet graph. `{∅}` has no ridges at
    /// all and is not a pseudo-manifold.
    pub fn is_pseudo_manifold(&self) -> Result<bool> {
        let dim = self.pure_dimension()?;
        if dim < 0 {
            return Ok(false);
        }
        Ok(self.ridges_two_facet_property()?.holds && self.facet_graph()?.is_connected())
    }

    /// Betti numbers over the rationals.
    pub fn homology(&self) -> Result<HomologyProfile> {
        if self.facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let by_dim = self.faces_by_dimension();
        let index: Vec<HashMap<VertexSet, usize>> = by_dim
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        // ranks[k] = rank of ∂_k : C_k → C_{k-1}, with ∂_0 = 0
        let mut ranks = vec![0usize; by_dim.len() + 1];
        for k in 1..by_dim.len() {
            let mut m = IntMatrix::zeros(by_dim[k - 1].len(), by_dim[k].len());
            for (j, face) in by_dim[k].iter().enumerate() {
                for (pos, v) in face.iter().enumerate() {
                    let row = index[k - 1][&face.without(v)];
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    m.set(row, j, BigInt::from(sign));
                }
            }
            ranks[k] = m.rank();
        }
        let betti = (0..by_dim.len())
            .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
            .collect();
        Ok(HomologyProfile { betti })
    }

    /// Necessary conditions for being a simplicial `d`-sphere.
    pub fn sphere_certificate(&self, expected_dim: usize) -> Result<SphereCertificate> {
        let dim = self.pure_dimension()?;
        let pseudo_manifold = self.is_pseudo_manifold()?;
        let ridges = self.ridges_two_facet_property()?;
        let components = self.facet_graph()?.components().len();
        let homology = self.homology()?;
        let expected = HomologyProfile::sphere(expected_dim);
        let dimension_matches = dim == expected_dim as isize;
        let homology_matches = homology == expected;
        Ok(SphereCertificate {
            pass: pseudo_manifold && dimension_matches && homology_matches,
            level: CERTIFICATE_LEVEL.to_string(),
            dimension: dim,
            expected_dimension: expected_dim,
            pseudo_manifold,
            ridge_violations: ridges.violations.len(),
            facet_graph_components: components,
            betti: homology.betti,
            expected_betti: expected.betti,
            euler_characteristic: self.euler_characteristic(),
        })
    }
}

const CERTIFICATE_LEVEL: &str =
    "necessary conditions: pseudo-manifold with the rational homology of a sphere";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeViolation {
    pub ridge: VertexSet,
    pub facet_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeReport {
    pub holds: bool,
    pub violations: Vec<RidgeViolation>,
}

/// Facet adjacency through shared ridges. Undirected, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetGraph {
    pub nodes: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

impl FacetGraph {
    /// Node indices per component, components ordered by their least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
}

impl HomologyProfile {
    /// Betti numbers of `S^d`.
    pub fn sphere(d: usize) -> Self {
        let mut betti = vec![0; d + 1];
        if d == 0 {
            betti[0] = 2;
        } else {
            betti[0] = 1;
            betti[d] = 1;
        }
        Self { betti }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereCertificate {
    pub pass: bool,
    pub level: String,
    pub dimension: isize,
    pub expected_dimension: usize,
    pub pseudo_manifold: bool,
    pub ridge_violations: usize,
    pub facet_graph_components: usize,
    pub betti: Vec<usize>,
    pub expected_betti: Vec<usize>,
    pub euler_characteristic: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_lists(n, &lists).unwrap()
    }

    fn square() -> SimplicialComplex {
        k(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    /// Minimal 7-vertex torus.
    fn torus() -> SimplicialComplex {
        let mut facets = Vec::new();
        for i in 0..7 {
            let a = |x: usize| (i + x) % 7 + 1;
            facets.push(vec![a(0), a(1), a(3)]);
            facets.push(vec![a(0), a(2), a(3)]);
        }
        SimplicialComplex::from_lists(7, &facets).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::from_labels([5, 1, 2]).unwrap();
        assert_eq!(s.to_vec(), vec![1, 2, 5]);
        assert_eq!(s.complement(5).to_vec(), vec![3, 4]);
        assert_eq!(s.subsets().count(), 8);
        assert_eq!(s.max_label(), Some(5));
        assert!(VertexSet::from_labels([0]).is_err());
        assert_eq!(s.to_string(), "{1,2,5}");
        assert!(VertexSet::from_labels([1, 4]).unwrap() < VertexSet::from_labels([2, 3]).unwrap());
        assert_eq!(VertexSet::k_subsets(5, 2).len(), 10);
        assert_eq!(VertexSet::k_subsets(4, 0), vec![VertexSet::empty()]);
        assert!(VertexSet::k_subsets(3, 4).is_empty());
        assert_eq!(VertexSet::k_subsets(64, 64), vec![VertexSet::full(64)]);
    }

    #[test]
    fn nested_facets_rejected() {
        assert!(SimplicialComplex::from_lists(3, &[vec![1, 2], vec![1]]).is_err());
        assert!(SimplicialComplex::from_lists(2, &[vec![1, 3]]).is_err());
        let reduced =
            SimplicialComplex::from_faces(3, vec![VertexSet::singleton(1), VertexSet::from_labels([1, 2]).unwrap()])
                .unwrap();
        assert_eq!(reduced.facets().len(), 1);
    }

    #[test]
    fn purity() {
        assert_eq!(square().is_pure().unwrap(), Some(1));
        assert_eq!(k(3, &[&[1, 2], &[3]]).is_pure().unwrap(), None);
        assert_eq!(k(1, &[&[1]]).is_pure().unwrap(), Some(0));
        let empty = SimplicialComplex::new(3, vec![]).unwrap();
        assert_eq!(empty.is_pure(), Err(Error::EmptyComplex));
    }

    #[test]
    fn two_facet_ridges() {
        assert!(square().ridges_two_facet_property().unwrap().holds);
        let path = k(3, &[&[1, 2], &[2, 3]]);
        let r = path.ridges_two_facet_property().unwrap();
        assert!(!r.holds);
        let bad: Vec<_> = r.violations.iter().map(|v| v.ridge.to_vec()).collect();
        assert_eq!(bad, vec![vec![1], vec![3]]);
        let fan3 = k(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        let r = fan3.ridges_two_facet_property().unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| v.ridge.to_vec() == vec![1, 2] && v.facet_count == 3));
        assert_eq!(
            k(3, &[&[1, 2], &[3]]).ridges_two_facet_property(),
            Err(Error::NotPure)
        );
    }

    #[test]
    fn pseudo_manifolds() {
        assert!(square().is_pseudo_manifold().unwrap());
        let two_squares = k(8, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4], &[5, 6], &[6, 7], &[7, 8], &[5, 8]]);
        assert!(two_squares.ridges_two_facet_property().unwrap().holds);
        assert!(!two_squares.is_pseudo_manifold().unwrap());
        let empty_face = SimplicialComplex::new(3, vec![VertexSet::empty()]).unwrap();
        assert!(!empty_face.is_pseudo_manifold().unwrap());
    }

    #[test]
    fn facet_graphs() {
        let g = square().facet_graph().unwrap();
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(g.edges.len(), 4);
        let mut degree = [0; 4];
        for &(a, b) in &g.edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        assert_eq!(degree, [2; 4]);
        assert_eq!(g.components().len(), 1);

        let two = k(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]);
        assert_eq!(two.facet_graph().unwrap().components().len(), 2);

        let single = k(3, &[&[1, 2, 3]]).facet_graph().unwrap();
        assert_eq!((single.nodes.len(), single.edges.len()), (1, 0));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(square().homology().unwrap().betti, vec![1, 1]);
        assert_eq!(
            SimplicialComplex::simplex_boundary(4).homology().unwrap().betti,
            vec![1, 0, 1]
        );
        assert_eq!(k(3, &[&[1, 2, 3]]).homology().unwrap().betti, vec![1, 0, 0]);
        assert_eq!(torus().homology().unwrap().betti, vec![1, 2, 1]);
    }

    #[test]
    fn simplex_boundaries_are_homology_spheres() {
        for n in 2..=7 {
            let b = SimplicialComplex::simplex_boundary(n);
            assert_eq!(b.homology().unwrap(), HomologyProfile::sphere(n - 2));
            assert_eq!(
                b.euler_characteristic(),
                b.homology().unwrap().euler_characteristic()
            );
        }
    }

    #[test]
    fn sphere_certificates() {
        let c = square().sphere_certificate(1).unwrap();
        assert!(c.pass);
        assert_eq!(c.betti, vec![1, 1]);
        let t = torus().sphere_certificate(2).unwrap();
        assert!(t.pseudo_manifold);
        assert!(!t.pass);
        assert_eq!(t.betti[1], 2);
        assert!(!square().sphere_certificate(2).unwrap().pass);
        assert!(k(2, &[&[1], &[2]]).sphere_certificate(0).unwrap().pass);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&square()).unwrap();
        assert_eq!(json, r#"{"n":4,"facets":[[1,2],[1,4],[2,3],[3,4]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, square());
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"n":2,"facets":[[1,3]]}"#).is_err());
    }
}
