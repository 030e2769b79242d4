//! Moment-angle complexes as block decompositions.
//!
//! `Z_{K,n}` is the union over facets `σ` of `B_σ = D^{2|σ|} × T^{n-|σ|}`,
//! the points of the closed polydisc whose coordinates outside `σ` have
//! modulus one. Only the combinatorics of the blocks is represented.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundsys::{FundamentalSet, LabelMap};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Largest `n` accepted by the exhaustive subset enumeration.
pub const ENUMERATION_LIMIT: usize = 22;

/// `B_σ`: disc coordinates `sigma`, circle coordinates `torus_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub sigma: VertexSet,
    pub torus_part: VertexSet,
}

impl Block {
    /// Real dimension `2|σ| + (n - |σ|)`.
    pub fn dimension(&self) -> usize {
        2 * self.sigma.len() + self.torus_part.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentAngleModel {
    pub n: usize,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    pub blocks: Vec<Block>,
    /// Present when the model was obtained by relabeling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_map: Option<LabelMap>,
}

impl MomentAngleModel {
    /// Largest block dimension, `n + d` for a pure complex of dimension
    /// `d - 1`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Block::dimension).max().unwrap_or(self.n)
    }

    /// Whether a support pattern lies in the model: `outside` is the set of
    /// coordinates with modulus one.
    pub fn contains_pattern(&self, outside: VertexSet) -> bool {
        self.blocks.iter().any(|b| b.torus_part.is_subset(outside))
    }
}

/// One block per facet of `k`, viewed inside `D^n`.
pub fn build_ma(k: &SimplicialComplex, n: usize) -> Result<MomentAngleModel> {
    if let Some(label) = k.vertices().max_label() {
        if label > n {
            return Err(Error::LabelOverflow { label, n });
        }
    }
    let blocks = k
        .facets()
        .iter()
        .map(|&sigma| Block {
            sigma,
            torus_part: sigma.complement(n),
        })
        .collect();
    Ok(MomentAngleModel {
        n,
        complex: k.with_ground_size(n)?,
        blocks,
        label_map: None,
    })
}

/// Compares `{J : J acceptable}` with `{J : J ⊇ σ^c for a facet σ}` over
/// all `J ⊆ {1, …, n}`.
pub fn verify_m1_identity(e: &FundamentalSet) -> Result<bool> {
    let n = e.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let complements: Vec<VertexSet> = e
        .associated_complex()
        .facets()
        .iter()
        .map(|f| f.complement(n))
        .collect();
    let mismatch = (0u64..1 << n).into_par_iter().any(|bits| {
        let j = VertexSet::from_bits(bits);
        e.is_acceptable(j) != complements.iter().any(|c| c.is_subset(j))
    });
    Ok(!mismatch)
}

/// Moves the largest indispensable label to position `n` and drops it,
/// giving `Z_{P,n-1}`.
pub fn reduce_indispensable(e: &FundamentalSet) -> Result<MomentAngleModel> {
    let n = e.n();
    let top = e.indispensable().max_label().ok_or(Error::NoIndispensable)?;
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.swap(top - 1, n - 1);
    let rotated = e.relabel(&perm)?;
    let complex = rotated.associated_complex();
    let mut model = build_ma(&complex, n - 1)?;
    let external: Vec<i64> = (1..n).map(|i| perm[i - 1] as i64).collect();
    model.label_map = Some(LabelMap::new(external)?);
    Ok(model)
}
