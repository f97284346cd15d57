//! Exhaustive intriguing-set checks: per-vertex neighbour counts, the
//! eigenvector identity in integer arithmetic, and orbit-union scans.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::{BitMatrix, BitSet};
use crate::construct::{Expected, VertexSet};
use crate::error::{Error, Result};
use crate::srg::{Graph, SrgParams};

/// Largest orbit count scanned without an explicit cap.
pub const SCAN_ORBIT_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetType {
    Positive,
    Negative,
    /// Constant counts whose difference is neither eigenvalue.
    Degenerate,
    /// The empty set or the whole vertex set.
    Trivial,
    NotIntriguing,
}

impl SetType {
    pub fn name(self) -> &'static str {
        match self {
            SetType::Positive => "positive",
            SetType::Negative => "negative",
            SetType::Degenerate => "degenerate",
            SetType::Trivial => "trivial",
            SetType::NotIntriguing => "not_intriguing",
        }
    }
}

impl std::fmt::Display for SetType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// First vertex whose count breaks constancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: usize,
    pub inside: bool,
    pub count: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntriguingReport {
    pub set_size: usize,
    pub h1: Option<u64>,
    pub h2: Option<u64>,
    pub is_intriguing: bool,
    pub set_type: SetType,
    pub matches_expected: Option<bool>,
    /// Labels of the expected candidates that agree with the measurement.
    pub matched: Vec<String>,
    pub witness: Option<Witness>,
}

impl IntriguingReport {
    /// `(h1, h2)` when intriguing.
    pub fn values(&self) -> Option<(u64, u64)> {
        Some((self.h1?, self.h2?))
    }
}

/// Classifies `set` against an arbitrary adjacency matrix with known
/// eigenvalues.
pub fn check_bits(adj: &BitMatrix, params: &SrgParams, set: &BitSet) -> IntriguingReport {
    let n = adj.n();
    let counts: Vec<u64> = (0..n).into_par_iter().map(|i| adj.count_in(i, set)).collect();
    let size = set.len();
    let mut h = [None::<u64>; 2];
    let mut witness = None;
    for (i, &c) in counts.iter().enumerate() {
        let inside = set.contains(i);
        let slot = &mut h[usize::from(!inside)];
        match *slot {
            None => *slot = Some(c),
            Some(e) if e != c => {
                witness = Some(Witness {
                    vertex: i,
                    inside,
                    count: c,
                    expected: e,
                });
                break;
            }
            Some(_) => {}
        }
    }
    if witness.is_some() {
        return IntriguingReport {
            set_size: size,
            h1: None,
            h2: None,
            is_intriguing: false,
            set_type: SetType::NotIntriguing,
            matches_expected: None,
            matched: Vec::new(),
            witness,
        };
    }
    let (h1, h2, set_type) = if size == 0 {
        (0, 0, SetType::Trivial)
    } else if size == n {
        (params.k, params.k, SetType::Trivial)
    } else {
        let (h1, h2) = (h[0].unwrap_or(0), h[1].unwrap_or(0));
        let d = h1 as i64 - h2 as i64;
        let t = if d == params.e_plus {
            SetType::Positive
        } else if d == params.e_minus {
            SetType::Negative
        } else {
            SetType::Degenerate
        };
        (h1, h2, t)
    };
    IntriguingReport {
        set_size: size,
        h1: Some(h1),
        h2: Some(h2),
        is_intriguing: true,
        set_type,
        matches_expected: None,
        matched: Vec::new(),
        witness: None,
    }
}

/// Fills `matches_expected` and `matched` from the expected candidates.
pub fn compare_expected(report: &mut IntriguingReport, expected: Option<&Expected>) {
    let Some(expected) = expected else {
        report.matches_expected = None;
        report.matched.clear();
        return;
    };
    report.matched = match report.values() {
        Some((h1, h2)) => expected
            .candidates
            .iter()
            .filter(|c| {
                c.h1 == h1 as i64 && c.h2 == h2 as i64 && c.set_type == report.set_type
            })
            .map(|c| c.label.clone())
            .collect(),
        None => Vec::new(),
    };
    report.matches_expected = Some(!report.matched.is_empty());
}

fn same_graph(g: &Graph, y: &VertexSet) -> Result<()> {
    if y.spec() != g.spec() || y.universe() != g.v() {
        return Err(Error::Invariant(format!(
            "set over {} (v = {}) checked against {} (v = {})",
            y.spec(),
            y.universe(),
            g.spec(),
            g.v()
        )));
    }
    Ok(())
}

/// Measures `(h1, h2)` of `y` in `g` and compares with `y.expected`.
pub fn check_intriguing(g: &Graph, y: &VertexSet) -> Result<IntriguingReport> {
    same_graph(g, y)?;
    let params = g.params()?;
    let mut report = check_bits(g.adj(), &params, &y.bits());
    compare_expected(&mut report, y.expected.as_ref());
    Ok(report)
}

/// Checks `A w = (h1 - h2) w` for `w = (h1 - h2 - k) j_Y + h2 j`, summing
/// `w` over each neighbourhood.
pub fn eigenvector_check_bits(
    adj: &BitMatrix,
    k: u64,
    set: &BitSet,
    report: &IntriguingReport,
) -> Result<bool> {
    let (h1, h2) = report.values().ok_or(Error::NotIntriguing)?;
    let (h1, h2, k) = (i128::from(h1), i128::from(h2), i128::from(k));
    let theta = h1 - h2;
    let w = |i: usize| if set.contains(i) { theta - k + h2 } else { h2 };
    Ok((0..adj.n())
        .into_par_iter()
        .all(|p| adj.row_ones(p).map(w).sum::<i128>() == theta * w(p)))
}

pub fn eigenvector_check(g: &Graph, y: &VertexSet, report: &IntriguingReport) -> Result<bool> {
    same_graph(g, y)?;
    let k = g.params()?.k;
    eigenvector_check_bits(g.adj(), k, &y.bits(), report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    /// Bit `i` selects orbit `i`.
    pub mask: u64,
    pub report: IntriguingReport,
}

/// Every intriguing union of a subset of `orbits`, in mask order. The empty
/// mask is skipped. `max_subsets` caps the number of masks tried and is
/// required beyond [`SCAN_ORBIT_LIMIT`] orbits.
pub fn orbit_union_scan_bits(
    adj: &BitMatrix,
    params: &SrgParams,
    orbits: &[BitSet],
    max_subsets: Option<u64>,
) -> Result<Vec<ScanHit>> {
    let m = orbits.len();
    if m > SCAN_ORBIT_LIMIT && max_subsets.is_none() {
        return Err(Error::TooManyOrbits {
            count: m,
            limit: SCAN_ORBIT_LIMIT,
        });
    }
    if m > 63 {
        return Err(Error::UnsupportedParameters(format!("{m} orbits do not fit a 64-bit mask")));
    }
    let n = adj.n();
    let mut orbit_of = vec![usize::MAX; n];
    for (o, s) in orbits.iter().enumerate() {
        for i in s.iter() {
            if orbit_of[i] != usize::MAX {
                return Err(Error::NotDisjoint);
            }
            orbit_of[i] = o;
        }
    }
    // counts[p * m + o] = |N(p) ∩ O_o|
    let counts: Vec<u64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|p| orbits.iter().map(move |s| adj.count_in(p, s)))
        .collect();
    let sizes: Vec<usize> = orbits.iter().map(BitSet::len).collect();
    let total = (1u64 << m) - 1;
    let last = max_subsets.map_or(total, |cap| cap.min(total));
    let hits = (1..=last)
        .into_par_iter()
        .filter_map(|mask| {
            let inside = |p: usize| orbit_of[p] != usize::MAX && mask >> orbit_of[p] & 1 == 1;
            let mut h = [None::<u64>; 2];
            for p in 0..n {
                let row = &counts[p * m..(p + 1) * m];
                let c: u64 = (0..m).filter(|&o| mask >> o & 1 == 1).map(|o| row[o]).sum();
                let slot = &mut h[usize::from(!inside(p))];
                match *slot {
                    None => *slot = Some(c),
                    Some(e) if e != c => return None,
                    Some(_) => {}
                }
            }
            let size: usize = (0..m).filter(|&o| mask >> o & 1 == 1).map(|o| sizes[o]).sum();
            let mut bits = BitSet::new(n);
            for (o, s) in orbits.iter().enumerate() {
                if mask >> o & 1 == 1 {
                    bits.union_with(s);
                }
            }
            debug_assert_eq!(bits.len(), size);
            Some(ScanHit {
                mask,
                report: check_bits(adj, params, &bits),
            })
        })
        .collect();
    Ok(hits)
}

pub fn orbit_union_scan(
    g: &Graph,
    orbits: &[VertexSet],
    max_subsets: Option<u64>,
) -> Result<Vec<ScanHit>> {
    for o in orbits {
        same_graph(g, o)?;
    }
    let params = g.params()?;
    let bits: Vec<BitSet> = orbits.iter().map(VertexSet::bits).collect();
    orbit_union_scan_bits(g.adj(), &params, &bits, max_subsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::measure_matrix;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> BitMatrix {
        let mut m = BitMatrix::new(n);
        for &(a, b) in edges {
            m.set(a, b);
            m.set(b, a);
        }
        m
    }

    fn k33() -> BitMatrix {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        from_edges(6, &edges)
    }

    fn petersen() -> BitMatrix {
        // vertices are 2-subsets of {0..4}; adjacent when disjoint
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        from_edges(10, &edges)
    }

    #[test]
    fn k33_side_is_negative() {
        let adj = k33();
        let p = measure_matrix(&adj).unwrap();
        assert_eq!((p.e_plus, p.e_minus), (0, -3));
        let side = BitSet::from_indices(6, &[0, 1, 2]);
        let r = check_bits(&adj, &p, &side);
        assert_eq!(r.values(), Some((0, 3)));
        assert_eq!(r.set_type, SetType::Negative);
        assert!(eigenvector_check_bits(&adj, p.k, &side, &r).unwrap());
    }

    #[test]
    fn single_petersen_vertex_is_not_intriguing() {
        let adj = petersen();
        let p = measure_matrix(&adj).unwrap();
        let r = check_bits(&adj, &p, &BitSet::from_indices(10, &[0]));
        assert!(!r.is_intriguing);
        assert_eq!(r.set_type, SetType::NotIntriguing);
        let w = r.witness.clone().unwrap();
        assert!(!w.inside);
        assert_ne!(w.count, w.expected);
        assert_eq!(
            eigenvector_check_bits(&adj, p.k, &BitSet::from_indices(10, &[0]), &r),
            Err(Error::NotIntriguing)
        );
    }

    #[test]
    fn petersen_star_complement_coclique() {
        // the four pairs containing 0 pairwise meet, so they are independent;
        // each other pair is disjoint from exactly two of them
        let adj = petersen();
        let p = measure_matrix(&adj).unwrap();
        let star = BitSet::from_indices(10, &[0, 1, 2, 3]);
        let r = check_bits(&adj, &p, &star);
        assert_eq!(r.values(), Some((0, 2)));
        assert_eq!(r.set_type, SetType::Negative);
        let c = check_bits(&adj, &p, &star.complement());
        assert_eq!(c.values(), Some((1, 3)));
        assert_eq!(c.set_type, SetType::Negative);
    }

    #[test]
    fn trivial_sets() {
        let adj = petersen();
        let p = measure_matrix(&adj).unwrap();
        let empty = BitSet::new(10);
        let r = check_bits(&adj, &p, &empty);
        assert_eq!((r.values(), r.set_type), (Some((0, 0)), SetType::Trivial));
        assert!(eigenvector_check_bits(&adj, p.k, &empty, &r).unwrap());
        let full = BitSet::full(10);
        let r = check_bits(&adj, &p, &full);
        assert_eq!((r.values(), r.set_type), (Some((3, 3)), SetType::Trivial));
        assert!(eigenvector_check_bits(&adj, p.k, &full, &r).unwrap());
    }

    #[test]
    fn wrong_values_fail_the_eigenvector_identity() {
        let adj = k33();
        let p = measure_matrix(&adj).unwrap();
        let side = BitSet::from_indices(6, &[0, 1, 2]);
        let mut r = check_bits(&adj, &p, &side);
        r.h1 = Some(1);
        assert!(!eigenvector_check_bits(&adj, p.k, &side, &r).unwrap());
    }

    #[test]
    fn scan_finds_both_sides() {
        let adj = k33();
        let p = measure_matrix(&adj).unwrap();
        let orbits = vec![
            BitSet::from_indices(6, &[0, 1, 2]),
            BitSet::from_indices(6, &[3, 4, 5]),
        ];
        let hits = orbit_union_scan_bits(&adj, &p, &orbits, None).unwrap();
        let masks: Vec<u64> = hits.iter().map(|h| h.mask).collect();
        assert_eq!(masks, vec![1, 2, 3]);
        assert_eq!(hits[2].report.set_type, SetType::Trivial);
    }

    #[test]
    fn scan_refuses_many_orbits_without_cap() {
        let adj = BitMatrix::new(30);
        let p = SrgParams {
            v: 30,
            k: 0,
            lambda: 0,
            mu: 0,
            e_plus: 0,
            e_minus: 0,
        };
        let orbits: Vec<BitSet> = (0..30).map(|i| BitSet::from_indices(30, &[i])).collect();
        assert!(matches!(
            orbit_union_scan_bits(&adj, &p, &orbits, None),
            Err(Error::TooManyOrbits { count: 30, .. })
        ));
        let hits = orbit_union_scan_bits(&adj, &p, &orbits, Some(5)).unwrap();
        assert_eq!(hits.len(), 5);
    }

    #[test]
    fn scan_rejects_overlapping_orbits() {
        let adj = k33();
        let p = measure_matrix(&adj).unwrap();
        let orbits = vec![BitSet::from_indices(6, &[0, 1]), BitSet::from_indices(6, &[1, 2])];
        assert_eq!(
            orbit_union_scan_bits(&adj, &p, &orbits, None),
            Err(Error::NotDisjoint)
        );
    }
}
