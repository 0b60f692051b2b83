use std::collections::HashSet;

use super::*;
use crate::embedding::{construct_additive, transversal_points};
use crate::groupcat::additive_group;

fn whole(q: u64) -> GeneratedGroup {
    let field = Field::finite(q, None).unwrap();
    let gens: Vec<Vec<Scalar>> = field.elements().unwrap().into_iter().map(|x| vec![x]).collect();
    additive_group(&field, 1, &gens).unwrap()
}

fn gaussian(q: u64, d: u32) -> usize {
    ((q.pow(d + 1) - 1) / (q - 1)) as usize
}

#[test]
fn space_sizes_and_duality() {
    for &q in SUPPORTED_Q {
        for &d in SUPPORTED_D {
            if q > 5 && d == 3 {
                continue;
            }
            let s = PGSpace::enumerate(q, d).unwrap();
            let count = gaussian(q, d as u32);
            assert_eq!((s.points.len(), s.hyperplanes.len()), (count, count));
            let per = gaussian(q, d as u32 - 1);
            assert!((0..s.hyperplanes.len()).all(|h| s.points_on(h).len() == per));
            assert!((0..s.points.len()).all(|p| s.hyperplanes_through(p) == per));
        }
    }
    let s = PGSpace::enumerate(5, 2).unwrap();
    assert_eq!(s.points_on(0).len(), 6);
    assert_eq!(PGSpace::enumerate(9, 2).unwrap().points.len(), 91);
    assert_eq!(PGSpace::enumerate(2, 3).unwrap().hyperplanes.len(), 15);
}

#[test]
fn unsupported_sizes() {
    assert_eq!(PGSpace::enumerate(11, 2).unwrap_err(), OracleError::UnsupportedSize { q: 11, d: 2 });
    assert_eq!(PGSpace::enumerate(4, 4).unwrap_err(), OracleError::UnsupportedSize { q: 4, d: 4 });
}

#[test]
fn brute_force_agrees_with_the_formula() {
    for (q, want) in [(4, 8), (5, 15), (7, 35), (8, 48), (9, 63)] {
        let space = PGSpace::enumerate(q, 2).unwrap();
        let e = construct_additive(&whole(q)).unwrap();
        let brute: HashSet<HomPoint> = brute_transversal_points(&space, &e).unwrap().into_iter().collect();
        let formula: HashSet<HomPoint> = transversal_points(&e).unwrap().into_iter().collect();
        assert_eq!(brute.len(), want, "q = {q}");
        assert_eq!(brute, formula, "q = {q}");
    }
}

#[test]
fn brute_force_with_a_binary_stabilizer_is_empty() {
    let f8 = Field::finite(8, None).unwrap();
    let g = additive_group(&f8, 1, &[vec![f8.one()], vec![f8.element(2).unwrap()]]).unwrap();
    let e = construct_additive(&g).unwrap();
    let space = PGSpace::enumerate(8, 2).unwrap();
    assert!(brute_transversal_points(&space, &e).unwrap().is_empty());
}

#[test]
fn brute_force_in_three_space_over_f9() {
    // pure translations {(1, c) : c ∈ F_3}: exactly [1, 1, 2, c] for c ∈ F_3
    let f9 = Field::finite(9, None).unwrap();
    let g = crate::groupcat::semidirect_cyclic(&f9.one(), &[f9.one()], 100).unwrap();
    let e = crate::embedding::construct_semidirect(&g, 3).unwrap();
    let space = PGSpace::enumerate(9, 3).unwrap();
    let got: HashSet<HomPoint> = brute_transversal_points(&space, &e).unwrap().into_iter().collect();
    let want: HashSet<HomPoint> = (0..3).map(|c| HomPoint::from_ints(&f9, &[1, 1, 2, c]).unwrap()).collect();
    assert_eq!(got, want);
}

#[test]
fn mismatched_space_is_rejected() {
    let space = PGSpace::enumerate(4, 2).unwrap();
    let e = construct_additive(&whole(5)).unwrap();
    assert!(matches!(brute_transversal_points(&space, &e), Err(OracleError::Mismatch(_))));
}

#[test]
fn concurrent_search_finds_only_coset_patterns() {
    let space = PGSpace::enumerate(3, 2).unwrap();
    let r = search_td_on_frame(&space, Frame::Concurrent, 3).unwrap();
    assert!(!r.configurations.is_empty());
    assert!(r.configurations.iter().all(|c| c.elementary_abelian && c.group.order() == 3));
    let space = PGSpace::enumerate(5, 2).unwrap();
    let r = search_td_on_frame(&space, Frame::Concurrent, 5).unwrap();
    assert_eq!(r.configurations.len(), 1);
    assert!(r.configurations[0].elementary_abelian);
    // n = 4 is not a power of 5
    assert!(search_td_on_frame(&space, Frame::Concurrent, 4).unwrap().configurations.is_empty());
    let space = PGSpace::enumerate(4, 2).unwrap();
    assert!(matches!(
        search_td_on_frame(&space, Frame::Concurrent, 2),
        Err(OracleError::Embedding(EmbeddingError::GroupTooSmall(2)))
    ));
}

#[test]
fn concurrent_search_over_f9_lines_are_subgroup_cosets() {
    let space = PGSpace::enumerate(9, 2).unwrap();
    let r = search_td_on_frame(&space, Frame::Concurrent, 3).unwrap();
    // P1 = α + G and P2 = β + G for one of the four F_3-lines G of F_9
    assert_eq!(r.configurations.len(), 4 * 3 * 3);
    assert!(r.configurations.iter().all(|c| c.elementary_abelian));
    assert_eq!(r.classes, 4);
}

#[test]
fn triangle_search_finds_cyclic_subgroups_of_the_multiplicative_group() {
    let space = PGSpace::enumerate(4, 2).unwrap();
    let r = search_td_on_frame(&space, Frame::Triangle, 3).unwrap();
    assert!(!r.configurations.is_empty());
    for c in &r.configurations {
        assert!(c.cyclic);
        assert_eq!(c.group.order(), 3);
        assert_eq!(3 % c.group.order(), 0);
    }
    let space = PGSpace::enumerate(5, 2).unwrap();
    assert!(search_td_on_frame(&space, Frame::Triangle, 5).unwrap().configurations.is_empty());
    let space = PGSpace::enumerate(7, 2).unwrap();
    let r = search_td_on_frame(&space, Frame::Triangle, 3).unwrap();
    assert!(!r.configurations.is_empty());
    assert!(r.configurations.iter().all(|c| c.cyclic && 6 % c.group.order() == 0));
}

#[test]
fn search_size_gate() {
    let space = PGSpace::enumerate(9, 3).unwrap();
    assert!(matches!(
        search_td_on_frame(&space, Frame::Concurrent, 9),
        Err(OracleError::SearchSpaceTooLarge(_))
    ));
}
