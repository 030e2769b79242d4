//! Shared generators for the integration suites.
#![allow(dead_code)]

use lvmb_core::exactmath::{int, IntMatrix, Rational};
use lvmb_core::fundsys::FundamentalSet;
use lvmb_core::geometry::DirectionFamily;
use lvmb_core::inverse::{validate_starshaped, Realization};
use lvmb_core::simplicial::SimplicialComplex;
use lvmb_core::VertexSet;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

pub const MAX_N: usize = 10;

pub type Facets = Vec<Vec<usize>>;

pub fn square_set() -> FundamentalSet {
    FundamentalSet::from_lists(5, 3, &[vec![1, 2, 5], vec![1, 4, 5], vec![2, 3, 5], vec![3, 4, 5]]).unwrap()
}

pub fn c1(points: &[(i64, i64)]) -> DirectionFamily {
    DirectionFamily::from_c1(&points.iter().map(|&(a, b)| (int(a), int(b))).collect::<Vec<_>>()).unwrap()
}

/// `1, i, 1, i, 0`.
pub fn square_l() -> DirectionFamily {
    c1(&[(1, 0), (0, 1), (1, 0), (0, 1), (0, 0)])
}

pub fn vs(labels: &[usize]) -> VertexSet {
    VertexSet::from_labels(labels.iter().copied()).unwrap()
}

fn shift(facets: &Facets, by: usize) -> Facets {
    facets.iter().map(|f| f.iter().map(|v| v + by).collect()).collect()
}

fn vertex_count(facets: &Facets) -> usize {
    facets.iter().flatten().copied().max().unwrap_or(0)
}

pub fn polygon(k: usize) -> Facets {
    (1..=k).map(|i| vec![i, i % k + 1]).collect()
}

pub fn simplex_boundary(k: usize) -> Facets {
    (1..=k).map(|skip| (1..=k).filter(|&v| v != skip).collect()).collect()
}

/// Boundary of the `r`-dimensional cross-polytope; `i` and `i + r` are
/// antipodal.
pub fn cross(r: usize) -> Facets {
    (0u32..1 << r)
        .map(|mask| (0..r).map(|i| if mask >> i & 1 == 1 { i + 1 + r } else { i + 1 }).collect())
        .collect()
}

pub fn join(a: &Facets, b: &Facets) -> Facets {
    let b = shift(b, vertex_count(a));
    a.iter()
        .flat_map(|f| b.iter().map(move |g| f.iter().chain(g).copied().collect()))
        .collect()
}

pub fn disjoint_union(a: &Facets, b: &Facets) -> Facets {
    let mut out = a.clone();
    out.extend(shift(b, vertex_count(a)));
    out
}

/// Small simplicial spheres with at most `MAX_N` vertices.
pub fn sphere() -> impl Strategy<Value = Facets> {
    prop_oneof![
        (3..=8usize).prop_map(polygon),
        (2..=7usize).prop_map(simplex_boundary),
        (1..=4usize).prop_map(cross),
        (3..=5usize, 3..=5usize).prop_map(|(a, b)| join(&polygon(a), &polygon(b))),
        (3..=8usize).prop_map(|k| join(&polygon(k), &simplex_boundary(2))),
        (3..=4usize).prop_map(|k| join(&simplex_boundary(k), &cross(2))),
    ]
}

/// Applies a permutation and pads the ground set to `n`.
fn place(facets: Facets, n: usize, perm: &[usize]) -> SimplicialComplex {
    let mapped: Facets = facets
        .iter()
        .map(|f| f.iter().map(|&v| perm[v - 1]).collect())
        .collect();
    SimplicialComplex::from_lists(n, &mapped).unwrap()
}

fn placed(facets: Facets) -> impl Strategy<Value = SimplicialComplex> {
    let used = vertex_count(&facets);
    (used.max(1)..=MAX_N.max(used))
        .prop_flat_map(move |n| (Just(n), Just((1..=n).collect::<Vec<_>>()).prop_shuffle()))
        .prop_map(move |(n, perm)| place(facets.clone(), n, &perm))
}

fn random_selection() -> impl Strategy<Value = SimplicialComplex> {
    (2..=MAX_N)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, s)| {
            let all = VertexSet::k_subsets(n, s);
            let len = all.len();
            (Just(n), subsequence(all, 1..=len.min(12)))
        })
        .prop_map(|(n, facets)| SimplicialComplex::new(n, facets).unwrap())
}

/// Drops facet `i` (if more than one) or adds a random same-size facet.
fn perturbed(facets: Facets) -> impl Strategy<Value = Facets> {
    let size = facets[0].len();
    let used = vertex_count(&facets);
    let total = used.max(size) + 1;
    (any::<bool>(), 0..facets.len(), subsequence((1..=total).collect::<Vec<_>>(), size)).prop_map(
        move |(drop, i, extra)| {
            let mut out = facets.clone();
            if drop && out.len() > 1 {
                out.remove(i);
            } else if !out.iter().any(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f == extra
            }) {
                out.push(extra);
            }
            out
        },
    )
}

/// Pure complexes on at most `MAX_N` labels, mixing spheres, unions of
/// spheres, perturbed spheres and random families.
pub fn pure_complex() -> impl Strategy<Value = SimplicialComplex> {
    let unions = (3..=5usize, 3..=5usize).prop_map(|(a, b)| disjoint_union(&polygon(a), &polygon(b)));
    prop_oneof![
        3 => sphere().prop_flat_map(placed),
        1 => unions.prop_flat_map(placed),
        2 => sphere()
            .prop_filter("room for one more vertex", |f| vertex_count(f) < MAX_N)
            .prop_flat_map(perturbed)
            .prop_flat_map(placed),
        2 => random_selection(),
    ]
}

fn cross_ok(a: &[i64], b: &[i64]) -> bool {
    a[0] * b[1] - a[1] * b[0] > 0
}

/// Integer polygons around the origin: vertices sorted by angle with every
/// consecutive turn strictly less than a half-turn.
pub fn polygon_realization() -> impl Strategy<Value = Realization> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 3..=7)
        .prop_map(|pts| {
            let mut pts: Vec<Vec<i64>> = pts
                .into_iter()
                .filter(|&(x, y)| (x, y) != (0, 0))
                .map(|(x, y)| vec![x, y])
                .collect();
            pts.sort_by(|a, b| {
                (a[1] as f64).atan2(a[0] as f64).partial_cmp(&(b[1] as f64).atan2(b[0] as f64)).unwrap()
            });
            pts
        })
        .prop_filter("needs a starshaped polygon", |pts| {
            pts.len() >= 3 && (0..pts.len()).all(|i| cross_ok(&pts[i], &pts[(i + 1) % pts.len()]))
        })
        .prop_map(|pts| {
            let k = pts.len();
            Realization::from_lists(1, &pts, &polygon(k)).unwrap()
        })
}

/// The boundary of a tetrahedron with vertices `e_1, e_2, e_3, -(a, b, c)`.
pub fn tetrahedron_realization() -> impl Strategy<Value = Realization> {
    (1i64..=4, 1i64..=4, 1i64..=4).prop_map(|(a, b, c)| {
        let coords = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-a, -b, -c]];
        Realization::from_lists(2, &coords, &simplex_boundary(4)).unwrap()
    })
}

/// `±5 e_i` plus a small perturbation per vertex.
pub fn octahedron_realization() -> impl Strategy<Value = Realization> {
    prop::collection::vec(-1i64..=1, 18).prop_map(|noise| {
        let coords: Vec<Vec<i64>> = (0..6)
            .map(|j| {
                let sign = if j < 3 { 5 } else { -5 };
                (0..3)
                    .map(|i| if i == j % 3 { sign } else { 0 } + noise[3 * j + i])
                    .collect()
            })
            .collect();
        let r = Realization::from_lists(2, &coords, &cross(3)).unwrap();
        assert!(validate_starshaped(&r).unwrap());
        r
    })
}

pub fn realization() -> impl Strategy<Value = Realization> {
    prop_oneof![
        3 => polygon_realization(),
        1 => tetrahedron_realization(),
        1 => octahedron_realization(),
    ]
}

/// Small integer directions in `C` for the square set.
pub fn square_directions() -> impl Strategy<Value = DirectionFamily> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 5).prop_map(|pts| c1(&pts))
}

/// Invertible integer `k × k` matrices with entries in `[-2, 2]`.
pub fn invertible(k: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, k), k)
        .prop_filter("singular", |rows| {
            !IntMatrix::from_rows(rows).unwrap().determinant().unwrap().eq(&BigInt::from(0))
        })
        .prop_map(|rows| rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
}

pub fn shift_vector(k: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, k).prop_map(|v| v.into_iter().map(int).collect())
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}
