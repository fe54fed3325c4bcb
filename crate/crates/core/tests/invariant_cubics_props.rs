//! Properties of the del Pezzo lattice and the invariant cubics.

use std::collections::BTreeSet;

use proptest::prelude::*;

use hodgecy::cubic_family::TubeModel;
use hodgecy::invariant_cubics::{
    cartan_cubic, dp_conic_pencils, dp_lines, restrict_cartan, su26_cubic, tritangent_triples, PicClass, VarKind,
};
use hodgecy::sampling::Sampler;

fn permutation(r: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..r).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lines_are_permutation_invariant(sigma in permutation(6)) {
        let lines: BTreeSet<PicClass> = dp_lines(6).unwrap().into_iter().collect();
        let moved: BTreeSet<PicClass> = lines.iter().map(|l| l.permuted(&sigma)).collect();
        prop_assert_eq!(&moved, &lines);
        for l in &lines {
            prop_assert_eq!((l.self_intersection(), l.k_degree()), (-1, -1));
        }
    }

    #[test]
    fn conic_pencils_are_permutation_invariant(sigma in permutation(5)) {
        let pencils: BTreeSet<PicClass> = dp_conic_pencils().into_iter().collect();
        let moved: BTreeSet<PicClass> = pencils.iter().map(|c| c.permuted(&sigma)).collect();
        prop_assert_eq!(moved, pencils);
    }

    #[test]
    fn cartan_tube_identities(seed in any::<u64>()) {
        let tube = TubeModel::from_cubic(&cartan_cubic().to_cubic_form().unwrap());
        let w = Sampler::new(seed).rational_vec(tube.h(), 3);
        prop_assert_eq!(tube.exp_orbit(&w).unwrap(), tube.exp_orbit_closed(&w));
        prop_assert!(tube.nilpotent(&w).unwrap().is_symplectic());
    }

    #[test]
    fn su26_tube_identities(seed in any::<u64>()) {
        let tube = TubeModel::from_cubic(&su26_cubic().to_cubic_form().unwrap());
        let w = Sampler::new(seed).rational_vec(tube.h(), 3);
        prop_assert_eq!(tube.exp_orbit(&w).unwrap(), tube.exp_orbit_closed(&w));
    }
}

#[test]
fn tritangents_cover_each_line_five_times() {
    let lines = dp_lines(6).unwrap();
    let tri = tritangent_triples();
    assert_eq!((lines.len(), tri.len()), (27, 45));
    let anticanonical = PicClass::new(3, vec![1; 6]);
    assert_eq!(anticanonical.add(&PicClass::canonical(6)), PicClass::new(0, vec![0; 6]));
    let mut deg = [0; 27];
    for t in &tri {
        assert_eq!(lines[t[0]].add(&lines[t[1]]).add(&lines[t[2]]), anticanonical);
        for &i in t {
            deg[i] += 1;
        }
    }
    assert!(deg.iter().all(|&d| d == 5));
}

#[test]
fn restriction_has_two_lines_and_a_conic_per_monomial() {
    let r = restrict_cartan();
    assert_eq!(r.monomials().len(), 40);
    assert_eq!((r.count_kind(VarKind::Line), r.count_kind(VarKind::Conic)), (16, 10));
    for (idx, _) in r.monomials() {
        let kinds: Vec<VarKind> = idx.iter().map(|&v| r.kinds()[v]).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == VarKind::Line).count(), 2);
        assert_eq!(kinds.iter().filter(|&&k| k == VarKind::Conic).count(), 1);
    }
    assert_eq!(su26_cubic().regularity(), Some(5));
}
