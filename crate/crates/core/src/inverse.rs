//! From a starshaped sphere back to a good system.
//!
//! A realization places the `v` vertices of a pure complex `K` at integer
//! points of `Z^{d+1}`. When the cones over its facets form a complete fan,
//! `K` is the associated complex of an explicit good system whose shape
//! depends on the parity of `v`. Stabilization then appends two indispensable
//! elements and one complex coordinate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{serde_bigint, IntMatrix, Rational};
use crate::fundsys::{FundamentalSet, LabelMap, TypeSignature};
use crate::geometry::{check_good_system, DirectionFamily, System};
use crate::simplicial::{SimplicialComplex, VertexSet};
use crate::toricfan::{is_complete, Fan};

/// Integer vertex coordinates for a pure `d`-dimensional complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    d: usize,
    coords: Vec<Vec<BigInt>>,
    complex: SimplicialComplex,
}

#[derive(Serialize, Deserialize)]
struct RealizationJson {
    d: usize,
    #[serde(with = "serde_bigint::vec_vec")]
    coords: Vec<Vec<BigInt>>,
    facets: Vec<VertexSet>,
}

impl Serialize for Realization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RealizationJson {
            d: self.d,
            coords: self.coords.clone(),
            facets: self.complex.facets().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Realization {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RealizationJson::deserialize(d)?;
        let complex = SimplicialComplex::new(raw.coords.len(), raw.facets).map_err(serde::de::Error::custom)?;
        Self::new(raw.d, raw.coords, complex).map_err(serde::de::Error::custom)
    }
}

impl Realization {
    /// The complex must be pure of dimension `d`, live on `1..=v` with every
    /// label used, and each coordinate vector must be a nonzero point of
    /// `Z^{d+1}`.
    pub fn new(d: usize, coords: Vec<Vec<BigInt>>, complex: SimplicialComplex) -> Result<Self> {
        let v = coords.len();
        if complex.ground_size() != v {
            return Err(Error::InvalidRealization(format!(
                "{v} coordinate vectors for a complex on {} labels",
                complex.ground_size()
            )));
        }
        if complex.vertices() != VertexSet::full(v) {
            return Err(Error::InvalidRealization(format!(
                "labels {} are not vertices of the complex",
                VertexSet::full(v).difference(complex.vertices())
            )));
        }
        match complex.is_pure()? {
            Some(dim) if dim == d as isize => {}
            Some(dim) => {
                return Err(Error::InvalidRealization(format!(
                    "complex has dimension {dim}, expected {d}"
                )))
            }
            None => return Err(Error::NotPure),
        }
        for (j, x) in coords.iter().enumerate() {
            if x.len() != d + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {} has {} coordinates, expected {}",
                    j + 1,
                    x.len(),
                    d + 1
                )));
            }
            if x.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVertex(j + 1));
            }
        }
        Ok(Self { d, coords, complex })
    }

    pub fn from_lists(d: usize, coords: &[Vec<i64>], facets: &[Vec<usize>]) -> Result<Self> {
        let complex = SimplicialComplex::from_lists(coords.len(), facets)?;
        let coords = coords
            .iter()
            .map(|x| x.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        Self::new(d, coords, complex)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }
}

/// `x_j` divided by the gcd of its entries.
pub fn primitive_generators(r: &Realization) -> Result<Vec<Vec<BigInt>>> {
    r.coords
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let g = x.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if g.is_zero() {
                return Err(Error::ZeroVertex(j + 1));
            }
            Ok(x.iter().map(|c| c / &g).collect())
        })
        .collect()
}

/// True when the cones over the facets are simplicial and form a complete
/// fan. A facet with dependent vectors, or two vertices on the same ray,
/// gives `false`.
pub fn validate_starshaped(r: &Realization) -> Result<bool> {
    let gens = primitive_generators(r)?;
    let k = r.d + 1;
    for f in r.complex.facets() {
        let rows: Vec<Vec<BigInt>> = f.iter().map(|j| gens[j - 1].clone()).collect();
        if IntMatrix::from_big_rows(rows)?.rank() != k {
            return Ok(false);
        }
    }
    let labels = (1..=gens.len()).collect();
    let fan = match Fan::new(k, gens, labels, r.complex.facets().to_vec()) {
        Ok(fan) => fan,
        Err(Error::InvalidFan(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(is_complete(&fan)?.complete)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A verified good system built from a realization or by stabilization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructedSystem {
    pub fundamental_set: FundamentalSet,
    pub directions: DirectionFamily,
    /// `None` for a stabilized system.
    pub parity: Option<Parity>,
    pub type_signature: TypeSignature,
    /// Internal label `i` stands for `label_map.to_external(i)`.
    pub label_map: LabelMap,
}

impl ConstructedSystem {
    pub fn system(&self) -> System {
        System {
            fundamental_set: self.fundamental_set.clone(),
            directions: self.directions.clone(),
        }
    }
}

fn ensure_starshaped(r: &Realization) -> Result<()> {
    if validate_starshaped(r)? {
        Ok(())
    } else {
        Err(Error::StarshapeViolated(
            "the facet cones do not form a complete simplicial fan".into(),
        ))
    }
}

/// Checks the two guarantees of the construction.
fn finish(
    e: FundamentalSet,
    l: DirectionFamily,
    parity: Option<Parity>,
    label_map: LabelMap,
    expected: &SimplicialComplex,
) -> Result<ConstructedSystem> {
    let complex = e.associated_complex();
    if !complex.same_faces(expected) {
        return Err(Error::VerificationFailed(format!(
            "associated complex {:?} differs from the input",
            complex.facets()
        )));
    }
    let report = check_good_system(&e, &l)?;
    if !report.verdict {
        return Err(Error::VerificationFailed(format!(
            "acceptable {}, SE {}, imbrication {}",
            report.acceptable,
            report.se,
            report.imbrication.holds()
        )));
    }
    Ok(ConstructedSystem {
        type_signature: e.type_signature(),
        fundamental_set: e,
        directions: l,
        parity,
        label_map,
    })
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Row `i` of the matrix whose columns are the generators, negated.
fn negated_rows(gens: &[Vec<BigInt>], k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| gens.iter().map(|p| Rational::from_integer(-&p[i])).collect())
        .collect()
}

/// Members `P ∪ extra` where `P` runs over facet complements in `1..=v+d+1`.
fn members(r: &Realization, extra: VertexSet) -> Vec<VertexSet> {
    let base = r.vertex_count() + r.d + 1;
    r.complex
        .facets()
        .iter()
        .map(|f| f.complement(base).union(extra))
        .collect()
}

/// Even vertex count. External label `0` becomes internal `v+d+2`; directions
/// live in `R^v`.
pub fn construct_even(r: &Realization) -> Result<ConstructedSystem> {
    let v = r.vertex_count();
    if !v.is_multiple_of(2) {
        return Err(Error::OddVertexCount(v));
    }
    ensure_starshaped(r)?;
    let gens = primitive_generators(r)?;
    let k = r.d + 1;
    let n = v + k + 1;

    let mut vectors: Vec<Vec<Rational>> = (0..v).map(|j| unit(v, j)).collect();
    vectors.extend(negated_rows(&gens, k));
    vectors.push(vec![Rational::zero(); v]);
    let l = DirectionFamily::new(v / 2, vectors)?;

    let e = FundamentalSet::new(n, v + 1, members(r, VertexSet::singleton(n)))?;
    let ground: Vec<i64> = (1..n as i64).chain([0]).collect();
    finish(e, l, Some(Parity::Even), LabelMap::new(ground)?, &r.complex)
}

/// Odd vertex count. External labels `0` and `-1` become internal `v+d+2` and
/// `v+d+3`; directions live in `R^{v+1}` with `e_0` as the first coordinate.
pub fn construct_odd(r: &Realization) -> Result<ConstructedSystem> {
    let v = r.vertex_count();
    if v.is_multiple_of(2) {
        return Err(Error::EvenVertexCount(v));
    }
    ensure_starshaped(r)?;
    let gens = primitive_generators(r)?;
    let k = r.d + 1;
    let n = v + k + 2;
    let dim = v + 1;

    let mut vectors: Vec<Vec<Rational>> = (1..=v).map(|j| unit(dim, j)).collect();
    for row in negated_rows(&gens, k) {
        let mut x = vec![Rational::zero()];
        x.extend(row);
        vectors.push(x);
    }
    vectors.push(unit(dim, 0));
    vectors.push(vec![Rational::zero(); dim]);
    let l = DirectionFamily::new(dim / 2, vectors)?;

    let extra = VertexSet::singleton(n - 1).with(n);
    let e = FundamentalSet::new(n, v + 2, members(r, extra))?;
    let ground: Vec<i64> = (1..(n - 1) as i64).chain([0, -1]).collect();
    finish(e, l, Some(Parity::Odd), LabelMap::new(ground)?, &r.complex)
}

/// Dispatches on the parity of the vertex count.
pub fn construct(r: &Realization) -> Result<ConstructedSystem> {
    if r.vertex_count().is_multiple_of(2) {
        construct_even(r)
    } else {
        construct_odd(r)
    }
}

/// Appends elements `n+1, n+2` to every member and one complex coordinate
/// with real row `(-1 … -1, 1, 0)` and imaginary row `(-1 … -1, -1, 1)`.
pub fn stabilize(system: &System) -> Result<ConstructedSystem> {
    let (e, l) = (&system.fundamental_set, &system.directions);
    let report = check_good_system(e, l)?;
    if !report.verdict {
        return Err(Error::NotGoodSystem(format!(
            "acceptable {}, SE {}, imbrication {}",
            report.acceptable,
            report.se,
            report.imbrication.holds()
        )));
    }
    let (n, m) = (e.n(), l.m());
    let int = |x: i64| Rational::from_integer(x.into());
    let lift = |v: &[Rational], re: i64, im: i64| {
        let mut out = v[..m].to_vec();
        out.push(int(re));
        out.extend_from_slice(&v[m..]);
        out.push(int(im));
        out
    };
    let zero = vec![Rational::zero(); 2 * m];
    let mut vectors: Vec<Vec<Rational>> = l.vectors().iter().map(|v| lift(v, -1, -1)).collect();
    vectors.push(lift(&zero, 1, -1));
    vectors.push(lift(&zero, 0, 1));
    let new_l = DirectionFamily::new(m + 1, vectors)?;

    let extra = VertexSet::singleton(n + 1).with(n + 2);
    let members = e.members().iter().map(|p| p.union(extra)).collect();
    let new_e = FundamentalSet::new(n + 2, e.subset_size() + 2, members)?;
    finish(new_e, new_l, None, LabelMap::identity(n + 2), &e.associated_complex())
}
