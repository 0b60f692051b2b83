use std::collections::HashSet;

use proptest::prelude::*;
use serde_json::json;

use super::*;
use crate::design::{cayley_isomorphism, check_orthogonal, loop_operation, td_to_mols, validate_td, TdViolation};
use crate::exactalg::{Field, Scalar};
use crate::groupcat::{
    additive_group, catalog, certify, generate, group_equivalence, semidirect_cyclic, EquivalenceMode,
    GeneratedGroup, GroupElement, GroupKind, DEFAULT_BOUND,
};
use crate::projgeom::{incident, intersect_hyperplanes, third_intersection, span_flat, HomPoint, Hyperplane};

fn f(q: u64) -> Field {
    Field::finite(q, None).unwrap()
}

/// The whole additive group of `F_q` as a subgroup of `F_q^1`.
fn whole(q: u64) -> GeneratedGroup {
    let field = f(q);
    let gens: Vec<Vec<Scalar>> = field.elements().unwrap().into_iter().map(|x| vec![x]).collect();
    additive_group(&field, 1, &gens).unwrap()
}

/// The prime subfield `F_p` inside `F_q`.
fn prime_sub(q: u64) -> GeneratedGroup {
    let field = f(q);
    additive_group(&field, 1, &[vec![field.one()]]).unwrap()
}

fn pt(field: &Field, c: &[i64]) -> HomPoint {
    HomPoint::from_ints(field, c).unwrap()
}

/// Every point of `PG(d, q)`, independently of the library enumeration.
fn all_points(field: &Field, d: usize) -> Vec<HomPoint> {
    let els = field.elements().unwrap();
    let q = els.len();
    let mut out = Vec::new();
    for last in 0..=d {
        for mut idx in 0..q.pow(last as u32) {
            let mut c = vec![field.zero(); d + 1];
            for slot in c.iter_mut().take(last) {
                *slot = els[idx % q].clone();
                idx /= q;
            }
            c[last] = field.one();
            out.push(HomPoint::new(c).unwrap());
        }
    }
    out
}

fn off_parts(e: &EmbeddedTD, p: &HomPoint) -> bool {
    e.part_hyperplanes.iter().all(|h| !incident(p, h).unwrap())
}

fn brute_transversal_points(e: &EmbeddedTD) -> HashSet<HomPoint> {
    all_points(&e.field, e.d)
        .into_iter()
        .filter(|p| off_parts(e, p) && is_transversal_point(e, p).unwrap())
        .collect()
}

#[test]
fn additive_over_f5_is_concurrent_at_x_axis_point() {
    let e = construct_additive(&whole(5)).unwrap();
    assert_eq!(e.points.len(), 15);
    let report = verify_embedding(&e).unwrap();
    assert_eq!(report.flat_dim, 0);
    assert!(report.proper);
    assert_eq!(report.frame, Some(Frame::Concurrent));
    let center = intersect_hyperplanes(&e.part_hyperplanes).unwrap().as_point().unwrap();
    assert_eq!(center, pt(&e.field, &[1, 0, 0]));
    let c = classify(&e).unwrap();
    assert_eq!((c.flat_dim, c.characteristic), (0, 5));
    assert!(c.consistent && c.loop_elementary_abelian);
    assert!(c.conclusions.iter().any(|s| s == "n = 5 = 5^1"));
}

#[test]
fn additive_blocks_follow_the_difference_law() {
    // line [α,0,1][β,1,1] meets z = 0 at [α-β, -1, 0] = [-(α-β), 1, 0]
    let g = whole(5);
    let e = construct_additive(&g).unwrap();
    let n = 5;
    let gamma = |i: usize| match &g.elements()[i] {
        GroupElement::Additive(v) => v[0].clone(),
        _ => unreachable!(),
    };
    for (cell, b) in e.td.blocks.iter().enumerate() {
        let (i, j) = (cell / n, cell % n);
        let diff = &gamma(i) - &gamma(j);
        let third = HomPoint::new(vec![-&diff, e.field.one(), e.field.zero()]).unwrap();
        assert_eq!(e.points[b[2]], third);
    }
}

#[test]
fn additive_examples_over_f9_and_f3_squared() {
    let e = construct_additive(&whole(9)).unwrap();
    assert_eq!((e.td.k, e.td.n), (3, 9));
    validate_td(&e.td).unwrap();
    let c = classify(&e).unwrap();
    assert!(c.conclusions.iter().any(|s| s == "n = 9 = 3^2"));

    let f3 = f(3);
    let g = additive_group(&f3, 2, &[vec![f3.one(), f3.zero()]]).unwrap();
    let e = construct_additive(&g).unwrap();
    assert_eq!((e.d, e.td.n), (3, 3));
    let r = verify_embedding(&e).unwrap();
    assert_eq!(r.flat_dim, 1);
    assert!(!r.proper);
}

#[test]
fn additive_rejects_char_zero_and_small_groups() {
    let q = Field::rationals();
    let trivial = certify(vec![GroupElement::Additive(vec![q.zero()])], "0").unwrap();
    assert_eq!(construct_additive(&trivial), Err(EmbeddingError::CharZeroConcurrentImpossible));
    let f4 = f(4);
    let g = additive_group(&f4, 1, &[vec![f4.one()]]).unwrap();
    assert_eq!(construct_additive(&g), Err(EmbeddingError::GroupTooSmall(2)));
}

#[test]
fn q8_gives_a_nonabelian_triangle_embedding() {
    let q8 = catalog("Q8").unwrap();
    let e = construct_multiplicative(&q8, 2).unwrap();
    assert_eq!(e.points.len(), 24);
    let r = verify_embedding(&e).unwrap();
    assert_eq!(r.flat_dim, -1);
    assert_eq!(r.frame, Some(Frame::Triangle));
    let c = classify(&e).unwrap();
    assert_eq!(c.characteristic, 0);
    assert!(!c.loop_abelian && c.loop_associative && !c.loop_elementary_abelian);
    let ex = extract_group(&e, None, None).unwrap();
    assert_eq!(ex.group.order(), 8);
    assert!(!ex.group.is_abelian());
    assert!(cayley_isomorphism(ex.group.table(), q8.table()).is_some());
}

#[test]
fn cyclic_three_over_q_zeta3() {
    let e = construct_multiplicative(&catalog("cyclic:3").unwrap(), 2).unwrap();
    assert_eq!(e.points.len(), 9);
    verify_embedding(&e).unwrap();
}

#[test]
fn semidirect_over_q_zeta5_meets_in_a_point_but_is_improper() {
    let k = Field::cyclotomic(5).unwrap();
    let z = k.zeta_pow(1);
    let g = semidirect_cyclic(&z, &[k.one()], DEFAULT_BOUND).unwrap();
    assert_eq!(g.order(), 5);
    let e = construct_semidirect(&g, 3).unwrap();
    let r = verify_embedding(&e).unwrap();
    assert_eq!(r.flat_dim, 0);
    // (ζ,1)^k = (ζ^k, (ζ^k - 1)/(ζ - 1)), so every point satisfies
    // x_4 = c (x_1 + x_2 - x_3) with c = (ζ - 1)^{-1}
    assert!(!r.proper);
    let c = (&z - &k.one()).inv().unwrap();
    let h = Hyperplane::new(vec![c.clone(), c.clone(), -&c, -k.one()]).unwrap();
    assert!(e.points.iter().all(|p| incident(p, &h).unwrap()));
    let ex = extract_group(&e, None, None).unwrap();
    assert!(cayley_isomorphism(ex.group.table(), g.table()).is_some());
}

#[test]
fn affine_group_of_f4_is_proper() {
    let f4 = f(4);
    let w = f4.element(2).unwrap();
    let gens = [
        GroupElement::Semidirect { gamma: w, x: vec![f4.zero()] },
        GroupElement::Semidirect { gamma: f4.one(), x: vec![f4.one()] },
    ];
    let els = generate(GroupKind::Semidirect, &f4, 1, &gens, DEFAULT_BOUND).unwrap();
    let g = certify(els, "AGL(1,4)").unwrap();
    assert_eq!(g.order(), 12);
    let e = construct_semidirect(&g, 3).unwrap();
    let r = verify_embedding(&e).unwrap();
    assert!(r.proper);
    assert_eq!(r.flat_dim, 0);
}

#[test]
fn pure_translations_lie_in_the_special_hyperplane() {
    let f9 = f(9);
    let g = semidirect_cyclic(&f9.one(), &[f9.one()], DEFAULT_BOUND).unwrap();
    assert_eq!(g.order(), 3);
    let e = construct_semidirect(&g, 3).unwrap();
    let r = verify_embedding(&e).unwrap();
    assert!(!r.proper);
    let h = Hyperplane::from_ints(&f9, &[1, 1, -1, 0]).unwrap();
    assert!(e.points.iter().all(|p| incident(p, &h).unwrap()));
}

#[test]
fn zero_translations_match_the_multiplicative_construction() {
    let k = Field::cyclotomic(3).unwrap();
    let g = semidirect_cyclic(&k.zeta_pow(1), &[k.zero()], DEFAULT_BOUND).unwrap();
    let a = construct_semidirect(&g, 3).unwrap();
    let b = construct_multiplicative(&catalog("cyclic:3").unwrap(), 3).unwrap();
    assert_eq!(a.points, b.points);
    assert_eq!(a.td, b.td);
}

#[test]
fn semidirect_dimension_checks() {
    let k = Field::cyclotomic(3).unwrap();
    let g = semidirect_cyclic(&k.zeta_pow(1), &[k.zero()], DEFAULT_BOUND).unwrap();
    assert_eq!(construct_semidirect(&g, 2), Err(EmbeddingError::DimensionTooSmall(2)));
    assert_eq!(
        construct_semidirect(&g, 4),
        Err(EmbeddingError::DimensionMismatch { expected: 2, got: 1 })
    );
}

#[test]
fn moving_a_point_breaks_collinearity() {
    let mut e = construct_additive(&prime_sub(9)).unwrap();
    let x = e.field.element(3).unwrap();
    e.points[0] = HomPoint::new(vec![x, e.field.zero(), e.field.one()]).unwrap();
    let v = verify_embedding(&e).unwrap_err();
    assert!(matches!(v, EmbeddingViolation::BlockNotCollinear { .. }), "{v:?}");
    assert_eq!(v.code(), "block_not_collinear");
}

#[test]
fn other_violations_are_reported() {
    let e = construct_additive(&whole(5)).unwrap();
    let mut dup = e.clone();
    dup.points[1] = dup.points[0].clone();
    assert_eq!(verify_embedding(&dup), Err(EmbeddingViolation::NotInjective(0, 1)));
    let mut hyp = e.clone();
    hyp.part_hyperplanes[2] = hyp.part_hyperplanes[0].clone();
    assert_eq!(verify_embedding(&hyp), Err(EmbeddingViolation::DuplicateHyperplanes(0, 2)));
    let mut swapped = e.clone();
    swapped.points.swap(0, 5);
    assert!(matches!(verify_embedding(&swapped), Err(EmbeddingViolation::PointOffPart { point: 0, part: 0 })));
    let with_inf = EmbeddedTD { infinity: Some(pt(&e.field, &[0, 2, 1])), ..e.clone() };
    assert_eq!(verify_embedding(&with_inf), Err(EmbeddingViolation::MissingT));
}

#[test]
fn attached_transversal_point_over_f5() {
    let e = construct_additive(&whole(5)).unwrap();
    let inf = pt(&e.field, &[0, 2, 1]);
    assert!(is_transversal_point(&e, &inf).unwrap());
    let e = attach_transversal_point(&e, &inf).unwrap();
    verify_embedding(&e).unwrap();
    // blocks {[g,0,1], [3g,1,1], [2g,1,0]}
    let t = e.td.t.as_ref().unwrap();
    assert_eq!(t.len(), 5);
    for b in t {
        let g = e.points[b[0]].coords()[0].clone();
        let three = e.field.from_int(3);
        let two = e.field.from_int(2);
        let want1 = HomPoint::new(vec![&three * &g, e.field.one(), e.field.one()]).unwrap();
        let want2 = HomPoint::new(vec![&two * &g, e.field.one(), e.field.zero()]).unwrap();
        assert_eq!((&e.points[b[1]], &e.points[b[2]]), (&want1, &want2));
    }
    let mut moved = e.clone();
    moved.infinity = Some(pt(&e.field, &[0, 3, 1]));
    assert!(matches!(verify_embedding(&moved), Err(EmbeddingViolation::TLineMissesInfinity { .. })));
}

#[test]
fn transversal_points_over_f5_match_formula_and_brute_force() {
    let e = construct_additive(&whole(5)).unwrap();
    let got: HashSet<HomPoint> = transversal_points(&e).unwrap().into_iter().collect();
    let mut want = HashSet::new();
    for g in 0..5 {
        for a in 2..5 {
            want.insert(pt(&e.field, &[g, a, 1]));
        }
    }
    assert_eq!(got.len(), 15);
    assert_eq!(got, want);
    assert_eq!(brute_transversal_points(&e), want);
}

#[test]
fn transversal_points_in_f4_and_an_f2_stabilizer() {
    let e = construct_additive(&whole(4)).unwrap();
    let got: HashSet<HomPoint> = transversal_points(&e).unwrap().into_iter().collect();
    assert_eq!(got.len(), 8);
    assert_eq!(brute_transversal_points(&e), got);

    // G = F_2-span of 1 and x in F_8: D_G = F_2
    let f8 = f(8);
    let g = additive_group(&f8, 1, &[vec![f8.one()], vec![f8.element(2).unwrap()]]).unwrap();
    assert_eq!(compute_dg(&g).unwrap().size(), 2);
    let e = construct_additive(&g).unwrap();
    assert!(transversal_points(&e).unwrap().is_empty());
    assert!(brute_transversal_points(&e).is_empty());
    assert_eq!(extend_to_max_td(&e), Err(EmbeddingError::NothingToExtend));
}

#[test]
fn transversal_point_preconditions() {
    let e = construct_additive(&whole(5)).unwrap();
    assert_eq!(
        is_transversal_point(&e, &pt(&e.field, &[0, 1, 1])),
        Err(EmbeddingError::PointOnPartHyperplane(1))
    );
    let e9 = construct_additive(&prime_sub(9)).unwrap();
    let x = e9.field.element(3).unwrap();
    let q = HomPoint::new(vec![e9.field.zero(), x, e9.field.one()]).unwrap();
    assert!(!is_transversal_point(&e9, &q).unwrap());
    let q8 = construct_multiplicative(&catalog("Q8").unwrap(), 2).unwrap();
    assert!(matches!(transversal_points(&q8), Err(EmbeddingError::WrongClassification { expected: 0, got: -1 })));
}

#[test]
fn dg_examples() {
    assert_eq!(compute_dg(&whole(5)).unwrap().size(), 5);
    let sub = compute_dg(&prime_sub(9)).unwrap();
    assert_eq!(sub.size(), 3);
    assert_eq!(sub.degree(), 1);
    let all = compute_dg(&whole(9)).unwrap();
    assert_eq!((all.size(), all.degree()), (9, 2));
    let q8 = catalog("Q8").unwrap();
    assert!(matches!(compute_dg(&q8), Err(EmbeddingError::WrongGroupKind { .. })));
}

fn assert_mols(e: &EmbeddedTD, k: usize) {
    assert_eq!(e.td.k, k);
    verify_embedding(e).unwrap();
    let squares = td_to_mols(&e.td).unwrap();
    assert_eq!(squares.len(), k - 2);
    for i in 0..squares.len() {
        for j in 0..i {
            assert!(check_orthogonal(&squares[i], &squares[j]).unwrap().is_orthogonal());
        }
    }
}

#[test]
fn extension_to_complete_mols() {
    assert_mols(&extend_to_max_td(&construct_additive(&whole(5)).unwrap()).unwrap(), 6);
    assert_mols(&extend_to_max_td(&construct_additive(&whole(9)).unwrap()).unwrap(), 10);
    let small = extend_to_max_td(&construct_additive(&prime_sub(9)).unwrap()).unwrap();
    assert_mols(&small, 4);
    assert_eq!(small.td.n, 3);
}

#[test]
fn extension_parts_follow_ascending_scalars() {
    let e = extend_to_max_td(&construct_additive(&whole(5)).unwrap()).unwrap();
    for (i, a) in (2..5).enumerate() {
        assert_eq!(e.part_hyperplanes[3 + i], Hyperplane::from_ints(&e.field, &[0, 1, -a]).unwrap());
    }
}

#[test]
fn part_outside_dg_leaves_a_pair_uncovered() {
    let e = construct_additive(&prime_sub(9)).unwrap();
    let x = e.field.element(3).unwrap();
    assert!(matches!(add_part(&e, &x), Err(EmbeddingError::PairCoverage(TdViolation::PairUncovered(_, _)))));
    let two = e.field.from_int(2);
    assert_eq!(add_part(&e, &two).unwrap().td.k, 4);
    assert!(matches!(
        add_part(&e, &e.field.one()),
        Err(EmbeddingError::Invalid(EmbeddingViolation::DuplicateHyperplanes(1, 3)))
    ));
}

#[test]
fn improper_transversal_over_f9() {
    let f9 = f(9);
    let g = semidirect_cyclic(&f9.one(), &[f9.one()], DEFAULT_BOUND).unwrap();
    let e = construct_semidirect(&g, 3).unwrap();
    for c in 0..3 {
        let inf = pt(&f9, &[1, 1, 2, c]);
        match check_improper_transversal(&e, &inf).unwrap() {
            ImproperVerdict::Containment { hyperplane, points_on, infinity_on, is_transversal } => {
                assert_eq!(hyperplane, Hyperplane::from_ints(&f9, &[1, 1, -1, 0]).unwrap());
                assert!(points_on && infinity_on);
                assert_eq!(is_transversal, Some(true));
            }
            v => panic!("{v:?}"),
        }
    }
    let x = f9.element(3).unwrap();
    let off = HomPoint::new(vec![f9.one(), f9.one(), f9.from_int(2), x]).unwrap();
    assert!(!is_transversal_point(&e, &off).unwrap());
}

#[test]
fn improper_transversal_in_the_plane_is_impossible() {
    let e = construct_multiplicative(&catalog("Q8").unwrap(), 2).unwrap();
    let h = Field::parse("H:Q").unwrap();
    let v = check_improper_transversal(&e, &pt(&h, &[1, 1, 1])).unwrap();
    assert_eq!(v, ImproperVerdict::ImpossibleInPlane { is_transversal: Some(false) });
    let c = construct_additive(&whole(5)).unwrap();
    assert!(matches!(
        check_improper_transversal(&c, &pt(&c.field, &[0, 2, 1])),
        Err(EmbeddingError::WrongClassification { .. })
    ));
}

#[test]
fn proper_semidirect_has_no_sampled_transversal_point() {
    let k = Field::cyclotomic(5).unwrap();
    let g = semidirect_cyclic(&k.zeta_pow(1), &[k.one()], DEFAULT_BOUND).unwrap();
    let e = construct_semidirect(&g, 3).unwrap();
    let mut values: Vec<Scalar> = vec![k.zero(), k.one(), -k.one(), k.from_int(2)];
    values.extend((1..5).map(|i| k.zeta_pow(i)));
    values.extend((1..5).map(|i| -k.zeta_pow(i)));
    values.push(&k.one() + &k.zeta_pow(1));
    let mut tried = 0;
    for a in &values {
        for b in &values {
            for c in &values {
                let p = HomPoint::new(vec![k.one(), a.clone(), b.clone(), c.clone()]).unwrap();
                if !off_parts(&e, &p) {
                    continue;
                }
                tried += 1;
                assert!(!is_transversal_point(&e, &p).unwrap(), "{p}");
            }
        }
    }
    assert!(tried > 1000);
}

#[test]
fn extraction_round_trips() {
    let g = whole(5);
    let ex = extract_group(&construct_additive(&g).unwrap(), None, None).unwrap();
    assert_eq!(ex.group.elements(), g.elements());
    assert_eq!(ex.point_of, (0..5).collect::<Vec<_>>());

    let f9 = f(9);
    let sd = semidirect_cyclic(&f9.one(), &[f9.one()], DEFAULT_BOUND).unwrap();
    let ex = extract_group(&construct_semidirect(&sd, 3).unwrap(), None, None).unwrap();
    assert!(cayley_isomorphism(ex.group.table(), sd.table()).is_some());
    assert!(group_equivalence(&ex.group, &sd, EquivalenceMode::Semidirect).unwrap().is_some());
}

#[test]
fn extraction_with_other_base_points_and_frame_change() {
    let g = prime_sub(9);
    let e = construct_additive(&g).unwrap();
    // another base point: the group is recovered unchanged
    let ex = extract_group(&e, Some(1), Some(5)).unwrap();
    assert!(group_equivalence(&ex.group, &g, EquivalenceMode::Additive).unwrap().is_some());
    // [x,y,z] ↦ [x·w, y, z] keeps the frame and changes G to G·w
    let field = &e.field;
    let w = field.element(3).unwrap();
    let m = vec![
        vec![w.clone(), field.zero(), field.zero()],
        vec![field.zero(), field.one(), field.zero()],
        vec![field.zero(), field.zero(), field.one()],
    ];
    let moved = apply_collineation(&e, &m).unwrap();
    assert_eq!(moved.frame(), Some(Frame::Concurrent));
    let ex = extract_group(&moved, None, None).unwrap();
    assert_ne!(ex.group.elements().iter().collect::<HashSet<_>>(), g.elements().iter().collect::<HashSet<_>>());
    assert!(ex.group.elements().contains(&GroupElement::Additive(vec![w])));
    assert!(group_equivalence(&ex.group, &g, EquivalenceMode::Additive).unwrap().is_some());
}

#[test]
fn non_standard_frame_is_rejected() {
    let e = construct_additive(&whole(5)).unwrap();
    let field = &e.field;
    let (o, z) = (field.one(), field.zero());
    let swap = vec![vec![z.clone(), o.clone(), z.clone()], vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]];
    let moved = apply_collineation(&e, &swap).unwrap();
    verify_embedding(&moved).unwrap();
    assert_eq!(moved.frame(), None);
    assert!(matches!(extract_group(&moved, None, None), Err(EmbeddingError::NonStandardFrame)));
    let singular = vec![vec![o.clone(), z.clone(), z.clone()]; 3];
    assert_eq!(apply_collineation(&e, &singular), Err(EmbeddingError::SingularMatrix));
}

#[test]
fn json_round_trip() {
    let e = attach_transversal_point(&construct_additive(&whole(5)).unwrap(), &HomPoint::from_ints(&f(5), &[0, 2, 1]).unwrap()).unwrap();
    let v = e.to_json();
    assert_eq!(v["frame"], json!("concurrent"));
    assert_eq!(v["points"][0], json!({"id": 0, "coords": [0, 0, 1]}));
    assert_eq!(EmbeddedTD::from_json(&v).unwrap(), e);
    let q8 = construct_multiplicative(&catalog("Q8").unwrap(), 2).unwrap();
    assert_eq!(EmbeddedTD::from_json(&q8.to_json()).unwrap(), q8);
    let mut bad = v.clone();
    bad["points"][0]["coords"] = json!([1, 2]);
    assert!(matches!(EmbeddedTD::from_json(&bad), Err(EmbeddingError::Decode(_))));
}

#[test]
fn concurrent_loops_are_elementary_abelian() {
    for g in [whole(4), whole(5), whole(8), prime_sub(9), whole(9)] {
        let e = construct_additive(&g).unwrap();
        let lp = loop_operation(&e.td, None, None).unwrap();
        assert!(lp.associative && lp.abelian);
        assert!(classify(&e).unwrap().loop_elementary_abelian);
    }
}

fn every_block_meets_every_part(e: &EmbeddedTD) {
    let index = e.point_index();
    let part_of = e.td.part_index().unwrap();
    for b in &e.td.blocks {
        let line = span_flat(&[e.points[b[0]].clone(), e.points[b[1]].clone()]).unwrap();
        for (p, h) in e.part_hyperplanes.iter().enumerate() {
            let x = third_intersection(&line, h).unwrap();
            let id = index[&x];
            assert_eq!(part_of[id], p);
            assert!(b.contains(&id));
        }
    }
}

#[test]
fn blocks_meet_parts_in_design_points() {
    every_block_meets_every_part(&construct_multiplicative(&catalog("Q8").unwrap(), 2).unwrap());
    every_block_meets_every_part(&extend_to_max_td(&construct_additive(&whole(7)).unwrap()).unwrap());
    let k = Field::cyclotomic(5).unwrap();
    let g = semidirect_cyclic(&k.zeta_pow(1), &[k.one()], DEFAULT_BOUND).unwrap();
    every_block_meets_every_part(&construct_semidirect(&g, 3).unwrap());
}

fn additive_strategy() -> impl Strategy<Value = GeneratedGroup> {
    (prop::sample::select(vec![(2u64, 2usize), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (7, 1), (8, 1), (9, 1)]), any::<u64>())
        .prop_filter_map("order at least 3", |((q, m), seed)| {
            let field = f(q);
            let mut s = seed;
            let mut gens = Vec::new();
            for _ in 0..2 {
                let v: Vec<Scalar> = (0..m)
                    .map(|_| {
                        let x = field.element(s % q).unwrap();
                        s /= q;
                        x
                    })
                    .collect();
                gens.push(v);
            }
            let g = additive_group(&field, m, &gens).ok()?;
            (g.order() >= 3).then_some(g)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additive_constructions_verify_and_round_trip(g in additive_strategy()) {
        let e = construct_additive(&g).unwrap();
        let r = verify_embedding(&e).unwrap();
        prop_assert_eq!(r.flat_dim, e.d as isize - 2);
        every_block_meets_every_part(&e);
        let ex = extract_group(&e, None, None).unwrap();
        prop_assert_eq!(ex.group.elements(), g.elements());
        let dg = compute_dg(&g).unwrap();
        prop_assert!(dg.size() <= g.order());
        prop_assert_eq!(transversal_points(&e).unwrap().len(), g.order() * (dg.size() - 2));
    }

    #[test]
    fn dicyclic_constructions_round_trip(n in 2u64..6) {
        let g = catalog(&format!("Dstar:{n}")).unwrap();
        let e = construct_multiplicative(&g, 2).unwrap();
        verify_embedding(&e).unwrap();
        let ex = extract_group(&e, None, None).unwrap();
        prop_assert!(cayley_isomorphism(ex.group.table(), g.table()).is_some());
    }
}
