use std::collections::BTreeMap;

use super::groups::{g_orbit_of, group_orbits, GroupKind};
use super::{disjoint_union, expected, Expected, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::geometry::{normalize_linear, HermitianSpace, Point};
use crate::srg::{Family, Graph};

/// Which `v` in canonical order represents `<(w^k, v)>` for a given trace.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepChoice {
    #[default]
    First,
    Second,
}

fn hermitian(g: &Graph) -> Result<&HermitianSpace> {
    g.space()
        .hermitian()
        .ok_or_else(|| Error::WrongFamily(format!("M_k lives in nu graphs, not {}", g.spec())))
}

fn mk_expected(g: &Graph) -> Result<Expected> {
    Ok(Expected {
        candidates: expected::mk(g.spec())?,
    })
}

/// `e = (q^{2r} - 1) / (q^2 - 1)`, the number of sets `M_k`.
pub fn mk_count(h: &HermitianSpace) -> u64 {
    let q = u64::from(h.q());
    (u64::from(h.big().order()) - 1) / (q * q - 1)
}

/// `M_k` as the union over `i` in GF(q)^* of the G-orbits of
/// `<(w^k, v_ki)>`, `Tr(w^{k q^r} v_ki) = i`.
pub fn mk_set(g: &Graph, k: u64, choice: RepChoice) -> Result<VertexSet> {
    let h = hermitian(g)?;
    let e = mk_count(h);
    if k >= e {
        return Err(Error::UnsupportedParameters(format!("k = {k} outside 0..{e}")));
    }
    let f = h.big();
    let u = f.exp(k);
    let uc = h.conj(u);
    let skip = usize::from(choice == RepChoice::Second);
    let mut indices = Vec::new();
    for i in h.base().nonzero() {
        let v = f
            .elements()
            .filter(|&v| h.trace_base(f.mul(uc, v)) == i)
            .nth(skip)
            .ok_or_else(|| Error::Invariant(format!("no representative for k={k}")))?;
        let p = h
            .normalize(&[u, v])
            .ok_or_else(|| Error::Invariant("zero representative".into()))?;
        indices.extend(g_orbit_of(g, &p)?);
    }
    Ok(VertexSet::new(*g.spec(), g.v(), indices, Provenance::Mk { k })?
        .with_expected(Some(mk_expected(g)?)))
}

/// `M_k` as the vertices whose first coordinate has discrete log `k` mod `e`.
pub fn mk_by_log_class(g: &Graph, k: u64) -> Result<VertexSet> {
    let h = hermitian(g)?;
    let e = mk_count(h);
    let f = h.big();
    let indices = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, p)| f.log(p.0[0]).is_some_and(|l| u64::from(l) % e == k))
        .map(|(i, _)| i)
        .collect();
    Ok(VertexSet::new(*g.spec(), g.v(), indices, Provenance::Mk { k })?
        .with_expected(Some(mk_expected(g)?)))
}

/// The orbit unions designated as intriguing: each K-orbit on the
/// orthogonality graph; on the tangency graph the unions of K-orbits that
/// share a projective `x`, plus the orbit of `<(0,0,1)>` when it is a vertex;
/// every `M_k` on the hermitian graph.
pub fn orbit_union_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let spec = *g.spec();
    match spec.family {
        Family::NoPerp => group_orbits(g, GroupKind::K),
        Family::NoOdd => {
            let orbits = group_orbits(g, GroupKind::K)?;
            let r = spec.r as usize;
            let f = g.space().coord_field().clone();
            let mut by_x: BTreeMap<Option<Point>, Vec<VertexSet>> = BTreeMap::new();
            for o in orbits {
                let rep = &g.vertices()[o.indices()[0]];
                by_x.entry(normalize_linear(&f, &rep.0[..r])).or_default().push(o);
            }
            let value = expected::k_orbit_union(&spec)?;
            let mut out = Vec::new();
            for (x, parts) in by_x {
                match x {
                    None => out.extend(parts),
                    Some(x) => {
                        let mut u = disjoint_union(&parts)?;
                        u.provenance = Provenance::KOrbitUnion { x: x.to_string() };
                        out.push(u.with_expected(Some(Expected::single(value.clone()))));
                    }
                }
            }
            out.sort_by_key(|s| s.indices()[0]);
            Ok(out)
        }
        Family::Nu => {
            let h = hermitian(g)?;
            (0..mk_count(h)).map(|k| mk_set(g, k, RepChoice::First)).collect()
        }
        _ => Err(Error::WrongFamily(format!(
            "no designated orbit unions on {spec}"
        ))),
    }
}
