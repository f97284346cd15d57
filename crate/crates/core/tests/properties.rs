use std::sync::OnceLock;

use polar_srg::bitmatrix::{BitMatrix, BitSet};
use polar_srg::construct::{complement, disjoint_union, group_orbits, GroupKind, VertexSet};
use polar_srg::geometry::HermitianSpace;
use polar_srg::gf::Field;
use polar_srg::srg::{build_graph, expected_params, Coords, Family, Graph, GraphSpec};
use polar_srg::tables::{counting_identity, default_grid};
use polar_srg::verify::{check_bits, check_intriguing, SetType};
use proptest::prelude::*;
use proptest::sample::subsequence;

struct Fixture {
    graph: Graph,
    orbits: Vec<VertexSet>,
}

fn fixture(family: Family, q: u32, eps: i8, kind: GroupKind) -> Fixture {
    let spec = GraphSpec::new(family, q, 2, Some(eps))
        .unwrap()
        .with_coords(Coords::Split)
        .unwrap();
    let graph = build_graph(&spec).unwrap();
    let orbits = group_orbits(&graph, kind).unwrap();
    Fixture { graph, orbits }
}

/// Orthogonality graphs whose group orbits are all intriguing of one type.
fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            fixture(Family::NoPerp, 3, 1, GroupKind::K),
            fixture(Family::NoPerp, 3, -1, GroupKind::K),
            fixture(Family::NoPerp, 5, -1, GroupKind::K),
            fixture(Family::NoEven3, 3, 1, GroupKind::L),
        ]
    })
}

fn union_of(fx: &Fixture, picks: &[usize]) -> VertexSet {
    let parts: Vec<VertexSet> = picks.iter().map(|&i| fx.orbits[i].clone()).collect();
    disjoint_union(&parts).unwrap()
}

fn fixture_and_picks() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..fixtures().len()).prop_flat_map(|f| {
        let n = fixtures()[f].orbits.len();
        (Just(f), subsequence((0..n).collect::<Vec<_>>(), 1..n))
    })
}

fn permuted(adj: &BitMatrix, perm: &[usize]) -> BitMatrix {
    let n = adj.n();
    let mut out = BitMatrix::new(n);
    for i in 0..n {
        for j in adj.row_ones(i) {
            out.set(perm[i], perm[j]);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unions_of_same_type_are_intriguing((f, picks) in fixture_and_picks()) {
        let fx = &fixtures()[f];
        let y = union_of(fx, &picks);
        let rep = check_intriguing(&fx.graph, &y).unwrap();
        prop_assert!(rep.is_intriguing);
        prop_assert_eq!(rep.matches_expected, Some(true));
        let p = fx.graph.params().unwrap();
        prop_assert!(counting_identity(p.v, p.k, &rep));
    }

    #[test]
    fn complement_swaps_counts((f, picks) in fixture_and_picks()) {
        let fx = &fixtures()[f];
        let y = union_of(fx, &picks);
        let c = complement(&y).unwrap();
        let k = fx.graph.params().unwrap().k;
        let a = check_intriguing(&fx.graph, &y).unwrap();
        let b = check_intriguing(&fx.graph, &c).unwrap();
        let (h1, h2) = a.values().unwrap();
        prop_assert_eq!(b.values(), Some((k - h2, k - h1)));
        prop_assert_eq!(a.set_type, b.set_type);
        prop_assert_eq!(b.matches_expected, Some(true));
    }

    #[test]
    fn counts_ignore_vertex_order((f, picks) in fixture_and_picks(), seed in any::<u64>()) {
        let fx = &fixtures()[f];
        let n = fx.graph.v();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let y = union_of(fx, &picks);
        let moved: Vec<usize> = y.indices().iter().map(|&i| perm[i]).collect();
        let params = fx.graph.params().unwrap();
        let a = check_bits(fx.graph.adj(), &params, &y.bits());
        let b = check_bits(&permuted(fx.graph.adj(), &perm), &params, &BitSet::from_indices(n, &moved));
        prop_assert_eq!(a.values(), b.values());
        prop_assert_eq!(a.set_type, b.set_type);
    }

    #[test]
    fn random_sets_are_classified_consistently(bits in proptest::collection::vec(any::<bool>(), 45)) {
        let fx = &fixtures()[0];
        let idx: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        let params = fx.graph.params().unwrap();
        let rep = check_bits(fx.graph.adj(), &params, &BitSet::from_indices(fx.graph.v(), &idx));
        match rep.values() {
            Some((h1, h2)) => {
                prop_assert!(counting_identity(params.v, params.k, &rep));
                let d = h1 as i64 - h2 as i64;
                let ok = match rep.set_type {
                    SetType::Positive => d == params.e_plus,
                    SetType::Negative => d == params.e_minus,
                    SetType::Trivial => idx.is_empty() || idx.len() == fx.graph.v(),
                    _ => false,
                };
                prop_assert!(ok);
            }
            None => {
                prop_assert_eq!(rep.set_type, SetType::NotIntriguing);
                prop_assert!(rep.witness.is_some());
            }
        }
    }

    #[test]
    fn field_axioms(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let f = Field::new(2, 6, None).unwrap();
        let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.frobenius(a, 6), a);
    }

    #[test]
    fn hermitian_normalization(u in 0u32..64, v in 0u32..64, s in 1u32..4) {
        let h = HermitianSpace::new(2, 3).unwrap();
        let f = h.big().clone();
        let x = [f.element(u).unwrap(), f.element(v).unwrap()];
        let scalar = h.scalars()[(s as usize - 1) % h.scalars().len()];
        match h.normalize(&x) {
            None => prop_assert!(x.iter().all(|e| e.is_zero())),
            Some(p) => {
                prop_assert_eq!(h.normalize(&p.0), Some(p.clone()));
                let y = [f.mul(scalar, x[0]), f.mul(scalar, x[1])];
                prop_assert_eq!(h.normalize(&y), Some(p));
            }
        }
    }
}

#[test]
fn eigenvalue_relations_hold_on_the_grid() {
    for spec in default_grid() {
        let p = expected_params(&spec).unwrap();
        let (k, l, m) = (p.k as i64, p.lambda as i64, p.mu as i64);
        assert_eq!(p.e_plus * p.e_minus, m - k, "{spec}");
        assert_eq!(p.e_plus + p.e_minus, l - m, "{spec}");
        // no-even2 q=2 r=2 eps=+1 has e+ = 0
        assert!(p.e_plus >= 0 && p.e_minus < 0, "{spec}");
    }
}

#[test]
fn no_even3_parts_give_isomorphic_tables() {
    use polar_srg::construct::construction_i;
    for part in [1, 2] {
        let spec = GraphSpec::new(Family::NoEven3, 3, 2, Some(1))
            .unwrap()
            .with_part(part)
            .unwrap();
        let g = build_graph(&spec).unwrap();
        assert_eq!(g.params().unwrap(), expected_params(&spec).unwrap());
        let rep = check_intriguing(&g, &construction_i(&g, 1).unwrap()).unwrap();
        assert_eq!(rep.matches_expected, Some(true), "part {part}");
    }
}
