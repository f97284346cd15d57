//! Constructions of intriguing sets: perps of totally singular subspaces,
//! set algebra on them, orbits of explicit isometry groups, and the sets cut
//! out by a nonsingular point.

mod algebra;
pub mod expected;
mod groups;
pub mod lemmas;
mod nonsingular;
mod orbit_sets;
mod singular;

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitSet;
use crate::error::{Error, Result};
use crate::srg::GraphSpec;
use crate::verify::SetType;

pub use algebra::{complement, difference, disjoint_union};
pub use groups::{
    g_elements, g_generators, g_orbit_key, group_orbits, group_orbits_full, k_constant, k_elements,
    k_generators, l_elements, l_generators, mat_inv, mat_mul, vec_mat, GElement, GroupKind,
    KElement, LElement, Matrix,
};
pub use nonsingular::{construction_iii, nonsingular_points_in_class, vertex_class};
pub use orbit_sets::{mk_by_log_class, mk_count, mk_set, orbit_union_sets, RepChoice};
pub use singular::{
    construction_i, construction_i_bound, difference_bound, flag_difference_set, perp_set,
    singular_chain, totally_singular_subspaces,
};

/// How a vertex set came about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    ConstructionI { t: usize },
    Complement { of: Box<Provenance> },
    Difference { outer: Box<Provenance>, inner: Box<Provenance> },
    Union { parts: Vec<Provenance> },
    KOrbit { rep: String },
    KOrbitUnion { x: String },
    LOrbit { u: String },
    GOrbit { k: u64, i: u32 },
    Mk { k: u64 },
    ConstructionIii { y: String },
    Trivial { full: bool },
    Explicit,
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::ConstructionI { t } => format!("perp of singular W_{t}"),
            Provenance::Complement { of } => format!("complement of ({})", of.label()),
            Provenance::Difference { outer, inner } => {
                format!("({}) minus ({})", outer.label(), inner.label())
            }
            Provenance::Union { parts } => {
                let parts: Vec<String> = parts.iter().map(Provenance::label).collect();
                format!("union of [{}]", parts.join("; "))
            }
            Provenance::KOrbit { rep } => format!("K-orbit of {rep}"),
            Provenance::KOrbitUnion { x } => format!("K-orbit union over x = {x}"),
            Provenance::LOrbit { u } => format!("L-orbit over u = {u}"),
            Provenance::GOrbit { k, i } => format!("G-orbit k={k} i=#{i}"),
            Provenance::Mk { k } => format!("M_{k}"),
            Provenance::ConstructionIii { y } => format!("square-class set of y = {y}"),
            Provenance::Trivial { full: true } => "all vertices".into(),
            Provenance::Trivial { full: false } => "empty set".into(),
            Provenance::Explicit => "explicit".into(),
        }
    }
}

/// One printed value for `(h1, h2, type)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedValue {
    pub label: String,
    pub h1: i64,
    pub h2: i64,
    #[serde(rename = "type")]
    pub set_type: SetType,
}

/// Expected intersection numbers; more than one candidate when sources
/// disagree, each carrying its own label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub candidates: Vec<ExpectedValue>,
}

impl Expected {
    pub fn single(value: ExpectedValue) -> Self {
        Expected {
            candidates: vec![value],
        }
    }

    pub fn primary(&self) -> &ExpectedValue {
        &self.candidates[0]
    }
}

/// An ordered subset of the vertices of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    spec: GraphSpec,
    universe: usize,
    indices: Vec<usize>,
    pub provenance: Provenance,
    pub expected: Option<Expected>,
}

impl VertexSet {
    /// Sorts and deduplicates `indices`; every index must be below `universe`.
    pub fn new(
        spec: GraphSpec,
        universe: usize,
        mut indices: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            if last >= universe {
                return Err(Error::Invariant(format!(
                    "vertex index {last} out of range (v = {universe})"
                )));
            }
        }
        Ok(VertexSet {
            spec,
            universe,
            indices,
            provenance,
            expected: None,
        })
    }

    pub fn from_bits(spec: GraphSpec, bits: &BitSet, provenance: Provenance) -> Self {
        VertexSet {
            spec,
            universe: bits.universe(),
            indices: bits.iter().collect(),
            provenance,
            expected: None,
        }
    }

    pub fn with_expected(mut self, expected: Option<Expected>) -> Self {
        self.expected = expected;
        self
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.is_empty() || self.indices.len() == self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn bits(&self) -> BitSet {
        BitSet::from_indices(self.universe, &self.indices)
    }
}
