use super::*;
use crate::complex::SimplicialComplex;
use crate::gf2::{SparseBitMatrix, XorBasis};

fn bases_of(sc: &SimplicialComplex) -> Vec<HomologyBasis> {
    all_bases(&sc.chain_complex().unwrap()).unwrap()
}

/// Classes are independent modulo boundaries: adding them to the boundary
/// span raises its dimension by the number of classes.
fn independent_mod_image(image: &SparseBitMatrix, reps: &[BitVector]) -> bool {
    let mut span = XorBasis::new(image.rows());
    for j in 0..image.cols() {
        span.insert(BitVector::from_indices(image.rows(), image.column(j).iter().map(|&r| r as usize)));
    }
    reps.iter().all(|r| span.insert(r.clone()))
}

#[test]
fn circle_has_one_class() {
    let c = SimplicialComplex::circle(3).unwrap();
    let b = &bases_of(&c)[1];
    assert_eq!(b.len(), 1);
    assert_eq!(b.cycles[0], BitVector::ones(3));
    assert_eq!(b.cocycles[0].weight(), 1);
}

#[test]
fn torus_has_two_pairs() {
    let cc = SimplicialComplex::torus(3).unwrap().chain_complex().unwrap();
    let raw = &raw_bases(&cc)[1];
    assert_eq!(raw.len(), 2);
    assert!(invert(&raw.pairing().unwrap()).is_some());
    let b = homology_basis(&cc, 1).unwrap();
    assert_eq!(b.pairing().unwrap(), BitMatrix::identity(2).unwrap());
    assert!(b.normalized);
    for z in &b.cocycles {
        assert!(cc.is_cocycle(1, z));
    }
    for c in &b.cycles {
        assert!(cc.is_cycle(1, c));
    }
    assert!(independent_mod_image(cc.boundary(2), &b.cycles));
    assert!(independent_mod_image(&cc.coboundary(0), &b.cocycles));
}

#[test]
fn connected_complex_has_one_zero_class() {
    let b = &bases_of(&SimplicialComplex::torus(4).unwrap())[0];
    assert_eq!(b.len(), 1);
    assert_eq!(b.cycles[0].weight(), 1);
    assert_eq!(b.cocycles[0], BitVector::ones(16));
}

#[test]
fn normalization_is_idempotent() {
    let cc = SimplicialComplex::circle_power(3, 3).unwrap().chain_complex().unwrap();
    for raw in raw_bases(&cc) {
        let once = normalize_pairing(&raw).unwrap();
        assert_eq!(normalize_pairing(&once).unwrap(), once);
    }
}

#[test]
fn open_interval_has_no_one_classes() {
    let path = SimplicialComplex::from_top_simplices(3, &[vec![0, 1], vec![1, 2]]).unwrap();
    let cc = path.chain_complex().unwrap();
    assert!(homology_basis(&cc, 1).unwrap().is_empty());
    assert_eq!(homology_basis(&cc, 2), Err(HomologyError::DegreeOutOfRange { q: 2, n: 1 }));
}

#[test]
fn degenerate_pairing_is_reported() {
    let b = HomologyBasis {
        degree: 1,
        cycles: vec![BitVector::from_indices(3, [0])],
        cocycles: vec![BitVector::from_indices(3, [1])],
        normalized: false,
    };
    assert_eq!(normalize_pairing(&b), Err(HomologyError::DegeneratePairing));
    assert!(matches!(
        pairing_matrix(&[BitVector::zeros(2)], &[BitVector::zeros(3)]),
        Err(HomologyError::LengthMismatch { .. })
    ));
}

#[test]
fn disjoint_supports_pair_to_zero() {
    let m = pairing_matrix(&[BitVector::from_indices(4, [0, 1])], &[BitVector::from_indices(4, [2])]).unwrap();
    assert!(!m.get(0, 0));
}

#[test]
fn poincare_pairing_on_tori() {
    let t2 = SimplicialComplex::torus(3).unwrap();
    let p = poincare_pairing(&t2, 1).unwrap();
    assert_eq!(p.rank(), 2);
    let t3 = SimplicialComplex::circle_power(3, 3).unwrap();
    assert_eq!(poincare_pairing(&t3, 1).unwrap().rank(), 3);
    assert_eq!(poincare_pairing(&t3, 2).unwrap().rank(), 3);
    let top = poincare_pairing(&t2, 0).unwrap();
    assert_eq!((top.rows(), top.cols(), top.get(0, 0)), (1, 1, true));
    let open = t2.without_top_simplex(0).unwrap();
    assert_eq!(poincare_pairing(&open, 1), Err(HomologyError::NotClosedManifold));
}

#[test]
fn basis_export_round_trips() {
    let cc = SimplicialComplex::torus(3).unwrap().chain_complex().unwrap();
    let b = homology_basis(&cc, 1).unwrap();
    let text = b.export();
    assert!(text.starts_with("cycle 1 0 "));
    assert_eq!(HomologyBasis::import(&text, 27).unwrap(), b);
}
