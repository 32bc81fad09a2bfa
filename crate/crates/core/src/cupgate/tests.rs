use super::*;
use crate::homology::{all_bases, HomologyBasis};
use proptest::prelude::*;

fn triangle() -> SimplicialComplex {
    SimplicialComplex::from_top_simplices(3, &[vec![0, 1, 2]]).unwrap()
}

/// Pullback of the circle cocycle on edge [0, 1] through coordinate `k` of circle(l)^n.
fn coordinate_cocycle(sc: &SimplicialComplex, l: u32, n: u32, k: u32) -> Cochain {
    let coord = |v: u32| (v / l.pow(n - 1 - k)) % l;
    let coeffs = BitVector::from_bools(
        &sc.simplices(1)
            .iter()
            .map(|e| {
                let (a, b) = (coord(e[0]), coord(e[1]));
                (a.min(b), a.max(b)) == (0, 1)
            })
            .collect::<Vec<_>>(),
    );
    Cochain::new(1, coeffs)
}

fn coordinate_basis(sc: &SimplicialComplex, l: u32) -> HomologyBasis {
    let generic = &all_bases(&sc.chain_complex().unwrap()).unwrap()[1];
    let cocycles: Vec<BitVector> = (0..3).map(|k| coordinate_cocycle(sc, l, 3, k).coeffs).collect();
    // cycles: the coordinate loops through vertex 0
    let cycles = (0..3)
        .map(|k| {
            let step = l.pow(2 - k);
            BitVector::from_indices(
                sc.count(1),
                (0..l).map(|i| {
                    let (a, b) = (i * step, ((i + 1) % l) * step);
                    sc.index_of(&[a.min(b), a.max(b)]).unwrap()
                }),
            )
        })
        .collect();
    let b = HomologyBasis {
        degree: 1,
        cycles,
        cocycles,
        normalized: true,
    };
    assert_eq!(b.pairing().unwrap(), crate::gf2::BitMatrix::identity(3).unwrap());
    assert_eq!(generic.len(), 3);
    b
}

#[test]
fn cup_front_back_rule() {
    let sc = triangle();
    let a = Cochain::indicator(&sc, &[0, 1]).unwrap();
    let b = Cochain::indicator(&sc, &[1, 2]).unwrap();
    assert_eq!(cup(&sc, &a, &b).unwrap(), Cochain::indicator(&sc, &[0, 1, 2]).unwrap());
    assert!(cup(&sc, &b, &a).unwrap().coeffs.is_zero());
    assert!(cup(&sc, &Cochain::zero(&sc, 1), &b).unwrap().coeffs.is_zero());
    let two = Cochain::indicator(&sc, &[0, 1, 2]).unwrap();
    assert!(matches!(cup(&sc, &two, &a), Err(CupError::DegreeOverflow { .. })));
}

#[test]
fn three_torus_triple_cup() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let [x, y, z] = [0, 1, 2].map(|k| coordinate_cocycle(&sc, 3, 3, k));
    assert!(triple_cup_sum(&sc, &x, &y, &z).unwrap());
    assert!(!triple_cup_sum(&sc, &x, &x, &y).unwrap());
    assert!(matches!(
        triple_cup_sum(&sc, &x, &y, &Cochain::zero(&sc, 2)),
        Err(CupError::DegreeMismatch { .. })
    ));
}

#[test]
fn circuit_on_three_torus() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    assert_eq!(c.candidates, 162);
    let s = sc.simplex(3, 0).to_vec();
    let expect = [
        sc.index_of(&s[0..2]).unwrap() as u32,
        sc.index_of(&s[1..3]).unwrap() as u32,
        sc.index_of(&s[2..4]).unwrap() as u32,
    ];
    assert!(c.triples.contains(&expect));
    assert!(c.max_overlap() <= 162);
    let text = c.write();
    assert!(text.lines().nth(1).unwrap().starts_with("CCZ "));
    assert_eq!(CczCircuit::read(&text).unwrap().triples, c.triples);
}

#[test]
fn zero_degree_slot_is_allowed() {
    let sc = triangle();
    let c = synthesize_circuit(&sc, 1, 1, 0).unwrap();
    assert_eq!(c.triples, vec![[0, 2, 2]]);
}

#[test]
fn logical_action_is_permutation_tensor() {
    for l in [3u32, 4] {
        let sc = SimplicialComplex::circle_power(l as usize, 3).unwrap();
        let b = coordinate_basis(&sc, l);
        let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
        let t = logical_action(&c, [&b, &b, &b]).unwrap();
        let perms: Vec<_> = vec![(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)];
        assert_eq!(t.entries.iter().copied().collect::<Vec<_>>(), perms);
        assert_eq!(cup_sum_tensor(&sc, [&b, &b, &b]).unwrap(), t);
    }
}

#[test]
fn logical_action_in_generic_basis_matches_cup_sums() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let bases = all_bases(&sc.chain_complex().unwrap()).unwrap();
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    let t = logical_action(&c, [&bases[1], &bases[1], &bases[1]]).unwrap();
    assert_eq!(cup_sum_tensor(&sc, [&bases[1], &bases[1], &bases[1]]).unwrap(), t);
    assert!(t.support() > 0);
}

#[test]
fn coboundary_shift_leaves_tensor_fixed() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let b = coordinate_basis(&sc, 3);
    let d0 = sc.boundary(1);
    let mut shifted = b.clone();
    shifted.cocycles[0] ^= &d0.transpose_mul_vec(&BitVector::from_indices(27, [0, 5, 13]));
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    assert_eq!(
        logical_action(&c, [&shifted, &b, &b]).unwrap(),
        logical_action(&c, [&b, &b, &b]).unwrap()
    );
}

#[test]
fn phase_check_passes_and_negative_control_fails() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let b = coordinate_basis(&sc, 3);
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    let r = phase_polynomial_check(&sc, &c, [&b, &b, &b], 200, 7).unwrap();
    assert_eq!((r.passes, r.failures, r.seed), (200, 0, 7));
    let open = sc.without_top_simplex(0).unwrap();
    let oc = synthesize_circuit(&open, 1, 1, 1).unwrap();
    let r = phase_polynomial_check(&open, &oc, [&b, &b, &b], 200, 7).unwrap();
    assert!(r.failures > 0);
    assert_eq!(r, phase_polynomial_check(&open, &oc, [&b, &b, &b], 200, 7).unwrap());
}

#[test]
fn fountain_examples() {
    let single = InteractionHypergraph {
        counts: [1, 1, 1],
        edges: vec![[0, 0, 0]],
    };
    assert_eq!(fountain_schedule(&single).magic_count, 1);
    let shared = InteractionHypergraph {
        counts: [1, 2, 2],
        edges: vec![[0, 0, 0], [0, 1, 1]],
    };
    let s = fountain_schedule(&shared);
    assert_eq!(s.magic_count, 1);
    assert_eq!(s.zero, vec![(1, 1), (2, 1)]);
    let empty = interaction_hypergraph(&LogicalCczTensor::default());
    assert_eq!(fountain_schedule(&empty).magic_count, 0);
}

#[test]
fn fountain_on_permutation_hypergraph() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let b = coordinate_basis(&sc, 3);
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    let h = interaction_hypergraph(&logical_action(&c, [&b, &b, &b]).unwrap());
    assert_eq!((h.vertex_count(), h.edges.len()), (9, 6));
    let s = fountain_schedule(&h);
    assert_eq!(s.magic_count, 3);
    assert!(s.is_disjoint(&h));
    assert_eq!(InteractionHypergraph::read(&h.write()).unwrap(), h);
    assert!(s.write().ends_with("magic_count 3\n"));
}

fn random_cochain(sc: &SimplicialComplex, q: usize, bits: &[bool]) -> Cochain {
    let n = sc.count(q);
    Cochain::new(q, BitVector::from_bools(&(0..n).map(|i| bits[i % bits.len()]).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cup_is_associative(bits in proptest::collection::vec(any::<bool>(), 1..200), p in 0usize..2, q in 0usize..2) {
        let sc = SimplicialComplex::circle_power(3, 3).unwrap();
        let r = 3 - p - q;
        let a = random_cochain(&sc, p, &bits);
        let b = random_cochain(&sc, q, &bits[bits.len() / 2..].iter().chain(&bits).copied().collect::<Vec<_>>());
        let c = random_cochain(&sc, r, &bits.iter().rev().copied().collect::<Vec<_>>());
        let left = cup(&sc, &cup(&sc, &a, &b).unwrap(), &c).unwrap();
        let right = cup(&sc, &a, &cup(&sc, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cup_descends_to_cohomology(zeta in proptest::collection::vec(any::<bool>(), 16)) {
        let sc = SimplicialComplex::torus(4).unwrap();
        let cc = sc.chain_complex().unwrap();
        let b = &all_bases(&cc).unwrap()[1];
        let dz = cc.boundary(1).transpose_mul_vec(&BitVector::from_bools(&zeta));
        let a = b.cocycle(0);
        let shifted = Cochain::new(1, &a.coeffs ^ &dz);
        let other = b.cocycle(1);
        let diff = &cup(&sc, &shifted, &other).unwrap().coeffs ^ &cup(&sc, &a, &other).unwrap().coeffs;
        // the difference is a coboundary: it solves d x = diff
        let d1 = cc.coboundary(1).to_dense().unwrap();
        prop_assert!(d1.solve(&diff).is_some());
    }
}

#[test]
fn induced_schedule_leaves_no_stray_edges() {
    let sc = SimplicialComplex::circle_power(3, 3).unwrap();
    let b = coordinate_basis(&sc, 3);
    let c = synthesize_circuit(&sc, 1, 1, 1).unwrap();
    let h = interaction_hypergraph(&logical_action(&c, [&b, &b, &b]).unwrap());
    let plain = fountain_schedule(&h);
    assert_eq!(plain.uncovered_edges(&h).len(), 3);
    let s = induced_fountain_schedule(&h);
    assert!(s.is_disjoint(&h));
    assert!(s.uncovered_edges(&h).is_empty());
    assert_eq!(s.magic_count, 2);
}
