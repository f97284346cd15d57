use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::{expected, Expected, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::geometry::{dot, rref, QuadraticForm, Subspace};
use crate::gf::Elem;
use crate::srg::{Family, Graph, GraphSpec};

fn quadratic_family(spec: &GraphSpec) -> Result<()> {
    if spec.family == Family::Nu {
        return Err(Error::WrongFamily(format!(
            "{spec} is hermitian; singular-subspace constructions need a quadratic form"
        )));
    }
    Ok(())
}

/// Legal `t` for `W_t^perp ∩ X`. For the odd-dimensional families with
/// eps = -1 the perp of a maximal subspace meets no vertex, so `t = r` is
/// excluded there.
pub fn construction_i_bound(spec: &GraphSpec) -> Result<RangeInclusive<usize>> {
    quadratic_family(spec)?;
    let r = spec.r as usize;
    let top = match spec.family {
        Family::NoPerp | Family::NoOdd if spec.eps == Some(1) => r,
        _ => r - 1,
    };
    Ok(1..=top)
}

/// Legal `t` for `(W_t^perp ∩ X) \ (W_{t+1}^perp ∩ X)`.
pub fn difference_bound(spec: &GraphSpec) -> Result<RangeInclusive<usize>> {
    quadratic_family(spec)?;
    let r = spec.r as usize;
    let top = match spec.family {
        Family::NoEven3 | Family::NoEven2 if spec.eps == Some(-1) => r.saturating_sub(2),
        _ => r - 1,
    };
    Ok(1..=top)
}

/// Length of the canonical flag used by the constructions.
fn chain_length(spec: &GraphSpec) -> usize {
    match spec.family {
        Family::NoPerp | Family::NoOdd => spec.r as usize,
        _ => spec.r as usize - 1,
    }
}

/// The canonical flag `W_1 ⊂ W_2 ⊂ ... ⊂ W_len` of totally singular
/// subspaces.
pub fn singular_chain(form: &QuadraticForm, len: usize) -> Result<Vec<Subspace>> {
    let flag = form.singular_flag_vectors();
    if len > flag.len() {
        return Err(Error::UnsupportedParameters(format!(
            "a chain of length {len} exceeds the Witt index {}",
            flag.len()
        )));
    }
    (1..=len)
        .map(|t| Subspace::new(form.field().clone(), flag[..t].to_vec()))
        .collect()
}

fn form_of(g: &Graph) -> Result<&QuadraticForm> {
    g.space()
        .quadratic()
        .ok_or_else(|| Error::WrongFamily(format!("{} has no quadratic form", g.spec())))
}

/// `W^perp ∩ X` for any subspace `W`; may be empty.
pub fn perp_set(g: &Graph, w: &Subspace) -> Result<VertexSet> {
    let form = form_of(g)?;
    let f = form.field();
    if w.basis().iter().any(|b| b.len() != form.dim()) {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: w.basis()[0].len(),
        });
    }
    let images: Vec<Vec<Elem>> = w.basis().iter().map(|b| form.polar_image(b)).collect();
    let indices: Vec<usize> = g
        .vertices()
        .par_iter()
        .enumerate()
        .filter(|(_, x)| images.iter().all(|m| dot(f, m, &x.0).is_zero()))
        .map(|(i, _)| i)
        .collect();
    VertexSet::new(
        *g.spec(),
        g.v(),
        indices,
        Provenance::ConstructionI { t: w.dim() },
    )
}

/// `W_t^perp ∩ X` for the canonical `W_t`.
pub fn construction_i(g: &Graph, t: usize) -> Result<VertexSet> {
    let spec = g.spec();
    let bound = construction_i_bound(spec)?;
    if !bound.contains(&t) {
        return Err(Error::UnsupportedParameters(format!(
            "t = {t} outside {}..={} for {spec}",
            bound.start(),
            bound.end()
        )));
    }
    let chain = singular_chain(form_of(g)?, chain_length(spec))?;
    let set = perp_set(g, &chain[t - 1])?;
    if set.is_empty() {
        return Err(Error::UnsupportedParameters(format!(
            "W_{t}^perp contains no vertex of {spec}"
        )));
    }
    let value = expected::singular_perp(spec, t)?;
    Ok(set.with_expected(Some(Expected::single(value))))
}

/// `(W_t^perp ∩ X) \ (W_{t+1}^perp ∩ X)`; the inner set may be empty.
pub fn flag_difference_set(g: &Graph, t: usize) -> Result<VertexSet> {
    let spec = g.spec();
    let bound = difference_bound(spec)?;
    if !bound.contains(&t) {
        return Err(Error::UnsupportedParameters(format!(
            "t = {t} outside {}..={} for flag differences in {spec}",
            bound.start(),
            bound.end()
        )));
    }
    let outer = construction_i(g, t)?;
    let chain = singular_chain(form_of(g)?, t + 1)?;
    let inner = perp_set(g, &chain[t])?;
    super::difference(&outer, &inner)
}

/// Every totally singular subspace of dimension `t`, as reduced echelon
/// bases in sorted order.
pub fn totally_singular_subspaces(form: &QuadraticForm, t: usize) -> Result<Vec<Subspace>> {
    let witt = form.model().witt_index(form.r());
    if t == 0 || t > witt {
        return Err(Error::UnsupportedParameters(format!(
            "no totally singular subspaces of dimension {t} (Witt index {witt})"
        )));
    }
    let f = form.field();
    let singular: Vec<Vec<Elem>> = form
        .points()
        .into_iter()
        .filter(|p| form.value(&p.0).is_zero())
        .map(|p| p.0)
        .collect();
    let mut level: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    level.insert(Vec::new());
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for basis in &level {
            let images: Vec<Vec<Elem>> = basis.iter().map(|b| form.polar_image(b)).collect();
            for p in &singular {
                if !images.iter().all(|m| dot(f, m, p).is_zero()) {
                    continue;
                }
                let mut rows = basis.clone();
                rows.push(p.clone());
                let (reduced, _) = rref(f, &rows);
                if reduced.len() == rows.len() {
                    next.insert(reduced);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|b| Subspace::new(f.clone(), b))
        .collect()
}
