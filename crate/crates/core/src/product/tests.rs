use super::*;
use crate::cupgate::{cup_sum_tensor, logical_action, synthesize_circuit};
use crate::homology::all_bases;
use proptest::prelude::*;

fn bases_of(sc: &SimplicialComplex) -> Vec<HomologyBasis> {
    all_bases(&sc.chain_complex().unwrap()).unwrap()
}

#[test]
fn three_circles_give_the_three_torus() {
    let c = SimplicialComplex::circle(3).unwrap();
    let t = triple_product(&c, &c, &c).unwrap();
    assert_eq!(t.num_vertices(), 27);
    assert_eq!(t, SimplicialComplex::circle_power(3, 3).unwrap());
    assert!(t.is_closed_manifold());
}

#[test]
fn point_factor_is_neutral() {
    let t = SimplicialComplex::torus(3).unwrap();
    let p = SimplicialComplex::point();
    assert_eq!(triple_product(&p, &t, &p).unwrap().f_vector(), t.f_vector());
}

#[test]
fn labels_follow_betti_arithmetic() {
    let t2 = [1, 2, 1];
    let table = kunneth_families([&t2, &t2, &t2], 2).unwrap();
    assert_eq!(table.len(), 15);
    for f in [Family::Alpha, Family::Beta, Family::Gamma] {
        assert_eq!(table.members(f).len(), 4, "{f}");
    }
    assert_eq!(table.members(Family::Residual).len(), 3);
    for i in table.members(Family::Alpha) {
        assert_eq!(table.labels[i].degrees, vec![1, 1, 0]);
    }
    let s1 = [1, 1];
    let t3 = kunneth_families([&s1, &s1, &s1], 1).unwrap();
    assert_eq!(t3.len(), 3);
    assert_eq!(t3.members(Family::Residual).len(), 3);
    let zero = kunneth_families([&s1, &s1, &s1], 0).unwrap();
    assert_eq!(zero.labels, vec![KunnethLabel { degrees: vec![0, 0, 0], indices: vec![0, 0, 0] }]);
    assert!(matches!(
        kunneth_families([&s1, &s1, &s1], 4),
        Err(ProductError::DegreeOutOfRange { q: 4, n: 3 })
    ));
    assert!(table.write().lines().next().unwrap().ends_with(" 0"));
}

#[test]
fn kunneth_basis_of_three_torus() {
    let c = SimplicialComplex::circle(3).unwrap();
    let cb = bases_of(&c);
    let (t, bases) = kunneth_bases(&[&c, &c, &c], &[&cb, &cb, &cb], 3).unwrap();
    let betti = t.chain_complex().unwrap().betti_numbers();
    assert_eq!(betti, vec![1, 3, 3, 1]);
    for b in &bases {
        validate_basis(&t, &b.basis, betti[b.basis.degree]).unwrap();
        assert_eq!(b.labels, labels_at(&[vec![1, 1], vec![1, 1], vec![1, 1]], b.basis.degree));
    }
    let b1 = &bases[1].basis;
    let circuit = synthesize_circuit(&t, 1, 1, 1).unwrap();
    let tensor = logical_action(&circuit, [b1, b1, b1]).unwrap();
    assert_eq!(tensor.support(), 6);
    for (a, b, c) in &tensor.entries {
        assert!(a != b && b != c && a != c);
    }
    assert_eq!(tensor, cup_sum_tensor(&t, [b1, b1, b1]).unwrap());
}

#[test]
fn mixed_product_bases_validate() {
    let c = SimplicialComplex::circle(3).unwrap();
    let t = SimplicialComplex::torus(3).unwrap();
    let (cb, tb) = (bases_of(&c), bases_of(&t));
    let (p, bases) = kunneth_bases(&[&t, &c], &[&tb, &cb], 3).unwrap();
    let betti = p.chain_complex().unwrap().betti_numbers();
    for b in &bases {
        validate_basis(&p, &b.basis, betti[b.basis.degree]).unwrap();
    }
}

#[test]
fn factorized_count_on_circle_torus_circle() {
    let c = SimplicialComplex::circle(3).unwrap();
    let t = SimplicialComplex::torus(3).unwrap();
    let (cb, tb) = (bases_of(&c), bases_of(&t));
    let (p, bases) = kunneth_bases(&[&c, &t, &c], &[&cb, &tb, &cb], 2).unwrap();
    // degrees (1,1,1) on a 4-manifold need one slot of degree 2
    let b1 = &bases[1].basis;
    let b2 = &bases[2].basis;
    let tensor = cup_sum_tensor(&p, [b1, b1, b2]).unwrap();
    let mut eval = FactorEvaluator::new([&c, &t, &c], [&cb, &tb, &cb]);
    let mut mismatches = 0;
    for a in 0..b1.len() {
        for b in 0..b1.len() {
            for k in 0..b2.len() {
                let f = eval
                    .evaluate(&bases[1].labels[a], &bases[1].labels[b], &bases[2].labels[k])
                    .unwrap();
                mismatches += usize::from(f != tensor.get(a, b, k));
            }
        }
    }
    assert_eq!(mismatches, 0);
    assert!(tensor.support() > 0);
}

#[test]
fn count_rejects_foreign_tensor() {
    let s1 = [1, 1];
    let table = kunneth_families([&s1, &s1, &s1], 1).unwrap();
    let c = SimplicialComplex::circle(3).unwrap();
    let cb = bases_of(&c);
    let mut eval = FactorEvaluator::new([&c, &c, &c], [&cb, &cb, &cb]);
    let t = LogicalCczTensor {
        dims: [2, 2, 2],
        entries: Default::default(),
    };
    assert!(matches!(
        ccz_count(&t, &table, &mut eval, CrossCheck::All),
        Err(ProductError::LabelMismatch { expected: 3, .. })
    ));
}

#[test]
fn three_torus_count_has_no_aligned_entries() {
    let c = SimplicialComplex::circle(3).unwrap();
    let cb = bases_of(&c);
    let (t, bases) = kunneth_bases(&[&c, &c, &c], &[&cb, &cb, &cb], 1).unwrap();
    let b1 = &bases[1].basis;
    let tensor = cup_sum_tensor(&t, [b1, b1, b1]).unwrap();
    let table = kunneth_families([&[1, 1], &[1, 1], &[1, 1]], 1).unwrap();
    assert_eq!(table.labels, bases[1].labels);
    let mut eval = FactorEvaluator::new([&c, &c, &c], [&cb, &cb, &cb]);
    let count = ccz_count(&tensor, &table, &mut eval, CrossCheck::All).unwrap();
    assert_eq!(count.aligned, 0);
    assert_eq!(count.total, 6);
    assert_eq!(count.checked, 27);
    assert!(count.mismatches.is_empty());
    assert_eq!(count.by_families[&(Family::Residual, Family::Residual, Family::Residual)], 6);
}

proptest! {
    #[test]
    fn alpha_family_size_is_a_betti_product(
        a in proptest::collection::vec(1usize..4, 2..5),
        b in proptest::collection::vec(1usize..4, 2..5),
        c in proptest::collection::vec(1usize..4, 2..5),
        q in 0usize..8,
    ) {
        let n = a.len() + b.len() + c.len() - 3;
        prop_assume!(q <= n);
        let table = kunneth_families([&a, &b, &c], q).unwrap();
        let expected_alpha: usize = (1..q)
            .map(|l| a.get(l).copied().unwrap_or(0) * b.get(q - l).copied().unwrap_or(0) * c[0])
            .sum();
        prop_assert_eq!(table.members(Family::Alpha).len(), expected_alpha);
        let total: usize = (0..=q)
            .flat_map(|l| (0..=q - l).map(move |m| (l, m, q - l - m)))
            .map(|(l, m, t)| {
                a.get(l).copied().unwrap_or(0) * b.get(m).copied().unwrap_or(0) * c.get(t).copied().unwrap_or(0)
            })
            .sum();
        prop_assert_eq!(table.len(), total);
    }
}
