use super::{expected, Expected, ExpectedValue, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::srg::expected_params;

fn same_graph(a: &VertexSet, b: &VertexSet) -> Result<()> {
    if a.spec() != b.spec() || a.universe() != b.universe() {
        return Err(Error::Invariant(format!(
            "operands live on different graphs: {} and {}",
            a.spec(),
            b.spec()
        )));
    }
    Ok(())
}

/// `X \ Y`. A perp set gets the printed complement value; any other set
/// with an expectation gets `(k - h2, k - h1)`.
pub fn complement(y: &VertexSet) -> Result<VertexSet> {
    let spec = *y.spec();
    let bits = y.bits().complement();
    let provenance = Provenance::Complement {
        of: Box::new(y.provenance.clone()),
    };
    let out = VertexSet::from_bits(spec, &bits, provenance);
    if out.is_trivial() {
        return Ok(out);
    }
    let expected = match (&y.provenance, &y.expected) {
        (Provenance::ConstructionI { t }, Some(_)) => Some(Expected::single(
            expected::singular_perp_complement(&spec, *t)?,
        )),
        (_, Some(e)) => {
            let k = expected_params(&spec)?.k as i64;
            Some(Expected {
                candidates: e
                    .candidates
                    .iter()
                    .map(|c| ExpectedValue {
                        label: format!("complement of {}", c.label),
                        h1: k - c.h2,
                        h2: k - c.h1,
                        set_type: c.set_type,
                    })
                    .collect(),
            })
        }
        (_, None) => None,
    };
    Ok(out.with_expected(expected))
}

/// `outer \ inner` for `inner ⊆ outer`. Consecutive perp sets get the
/// printed chain-difference value.
pub fn difference(outer: &VertexSet, inner: &VertexSet) -> Result<VertexSet> {
    same_graph(outer, inner)?;
    let (a, b) = (outer.bits(), inner.bits());
    if !b.is_subset(&a) {
        return Err(Error::NotNested);
    }
    let spec = *outer.spec();
    let out = VertexSet::from_bits(
        spec,
        &a.difference(&b),
        Provenance::Difference {
            outer: Box::new(outer.provenance.clone()),
            inner: Box::new(inner.provenance.clone()),
        },
    );
    let expected = match (&outer.provenance, &inner.provenance) {
        (Provenance::ConstructionI { t }, Provenance::ConstructionI { t: s }) if *s == t + 1 => {
            Some(Expected::single(expected::flag_difference(&spec, *t)?))
        }
        _ => match (&outer.expected, &inner.expected) {
            (Some(ea), Some(eb)) if ea.primary().set_type == eb.primary().set_type => {
                let (x, y) = (ea.primary(), eb.primary());
                Some(Expected::single(ExpectedValue {
                    label: "difference".into(),
                    h1: x.h1 - y.h2,
                    h2: x.h2 - y.h2,
                    set_type: x.set_type,
                }))
            }
            _ => None,
        },
    };
    Ok(out.with_expected(expected))
}

/// Union of pairwise disjoint sets. When every part carries an expectation
/// the parts must share a type and the result gets the summed value.
pub fn disjoint_union(parts: &[VertexSet]) -> Result<VertexSet> {
    let Some(first) = parts.first() else {
        return Err(Error::Invariant("union of no sets".into()));
    };
    let mut acc = first.bits();
    for p in &parts[1..] {
        same_graph(first, p)?;
        let b = p.bits();
        if !acc.is_disjoint(&b) {
            return Err(Error::NotDisjoint);
        }
        acc.union_with(&b);
    }
    let expected: Option<Vec<&ExpectedValue>> = parts
        .iter()
        .map(|p| p.expected.as_ref().map(Expected::primary))
        .collect();
    let expected = match expected {
        Some(values) => {
            let set_type = values[0].set_type;
            if values.iter().any(|v| v.set_type != set_type) {
                return Err(Error::MixedTypes);
            }
            let h2: i64 = values.iter().map(|v| v.h2).sum();
            Some(Expected::single(ExpectedValue {
                label: expected::DISJOINT_UNION.into(),
                h1: values[0].h1 + h2 - values[0].h2,
                h2,
                set_type,
            }))
        }
        None => None,
    };
    let provenance = Provenance::Union {
        parts: parts.iter().map(|p| p.provenance.clone()).collect(),
    };
    Ok(VertexSet::from_bits(*first.spec(), &acc, provenance).with_expected(expected))
}
