//! The ten acceptance criteria, each under its time budget. Prints one
//! PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use tdembed::design::{
    check_orthogonal, find_transversals, latin_to_td, loop_operation, mols_to_td, td_to_latin, td_to_mols,
    validate_td, LatinSquare, MOLSSet, TdViolation, Transversal, TransversalDesign,
};
use tdembed::embedding::{
    add_part, check_improper_transversal, classify, compute_dg, construct_additive, construct_multiplicative,
    construct_semidirect, extend_to_max_td, extract_group, is_transversal_point, transversal_points, verify_embedding,
    EmbeddedTD, EmbeddingError, Frame, ImproperVerdict,
};
use tdembed::exactalg::{Field, Scalar};
use tdembed::groupcat::{
    additive_group, catalog, certify, field_has_element_of_order_p, group_equivalence, lemma_checks,
    semidirect_cyclic, EquivalenceMode, GeneratedGroup, GroupElement, GroupKind, DEFAULT_BOUND,
};
use tdembed::oracle::{brute_transversal_points, search_td_on_frame, PGSpace};
use tdembed::projgeom::{incident, HomPoint, Hyperplane};

/// Criteria that are known not to hold as stated. The runner still
/// requires them to fail, so a change in behaviour is noticed.
const EXPECTED_RED: &[usize] = &[7];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fq(q: u64) -> Field {
    Field::finite(q, None).unwrap()
}

fn whole(q: u64) -> GeneratedGroup {
    let field = fq(q);
    let gens: Vec<Vec<Scalar>> = field.elements().unwrap().into_iter().map(|x| vec![x]).collect();
    additive_group(&field, 1, &gens).unwrap()
}

fn prime_sub(q: u64) -> GeneratedGroup {
    let field = fq(q);
    additive_group(&field, 1, &[vec![field.one()]]).unwrap()
}

fn pairwise_orthogonal(squares: &[LatinSquare]) -> bool {
    squares.iter().enumerate().all(|(i, a)| {
        squares[..i].iter().all(|b| check_orthogonal(a, b).unwrap().is_orthogonal())
    })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn c1_catalog() -> Outcome {
    let mut expected: Vec<(String, usize)> = vec![("Q8".into(), 8)];
    expected.extend((2..=6).map(|n| (format!("Dstar:{n}"), 4 * n)));
    expected.extend([("Tstar".into(), 24), ("Ostar".into(), 48), ("Istar".into(), 120), ("G792".into(), 63)]);
    for (name, order) in &expected {
        let g = catalog(name).map_err(err)?;
        // re-certify from the bare element list
        let again = certify(g.elements().to_vec(), name.clone()).map_err(err)?;
        ensure!(g.order() == *order && again.order() == *order, "{name}: order {} != {order}", g.order());
    }
    Ok(format!("{} groups", expected.len()))
}

fn c2_lemmas() -> Outcome {
    let mut names: Vec<String> = (3..=8).map(|n| format!("cyclic:{n}")).collect();
    names.push("Q8".into());
    names.extend((2..=6).map(|n| format!("Dstar:{n}")));
    names.extend(["Tstar", "Ostar", "Istar", "G792"].map(String::from));
    for name in &names {
        let g = catalog(name).map_err(err)?;
        let r = lemma_checks(&g).map_err(err)?;
        ensure!(r.sum.is_zero(), "{name}: sum of elements is {}", r.sum);
        ensure!(r.all_pass(), "{name}: {r:?}");
    }
    let mut fields = 0;
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
        let Ok(field) = Field::finite(q, None) else { continue };
        ensure!(field_has_element_of_order_p(&field) == Some(false), "F_{q} has an element of order p");
        fields += 1;
    }
    ensure!(fields >= 7, "only {fields} finite fields available");
    Ok(format!("{} groups, {fields} fields", names.len()))
}

fn c3_q8() -> Outcome {
    let e = construct_multiplicative(&catalog("Q8").map_err(err)?, 2).map_err(err)?;
    ensure!(e.points.len() == 24, "{} points", e.points.len());
    ensure!(e.td.k == 3 && e.td.n == 8, "TD({}, {})", e.td.k, e.td.n);
    verify_embedding(&e).map_err(err)?;
    validate_td(&e.td).map_err(err)?;
    let lp = loop_operation(&e.td, None, None).map_err(err)?;
    ensure!(lp.associative && !lp.abelian, "loop associative={} abelian={}", lp.associative, lp.abelian);
    Ok("24 points, associative nonabelian loop".into())
}

fn c4_transversal_points() -> Outcome {
    let cases = [(5, whole(5), 15), (4, whole(4), 8), (9, prime_sub(9), 3), (9, whole(9), 63), (8, whole(8), 48)];
    let mut counts = Vec::new();
    for (q, g, expected) in cases {
        let e = construct_additive(&g).map_err(err)?;
        let formula: HashSet<HomPoint> = transversal_points(&e).map_err(err)?.into_iter().collect();
        let space = PGSpace::enumerate(q, 2).map_err(err)?;
        let brute: HashSet<HomPoint> = brute_transversal_points(&space, &e).map_err(err)?.into_iter().collect();
        let dg = compute_dg(&g).map_err(err)?;
        ensure!(formula == brute, "q={q} |G|={}: formula and brute force differ", g.order());
        ensure!(formula.len() == g.order() * (dg.size() - 2), "q={q}: count {} != |G|(|D_G|-2)", formula.len());
        ensure!(formula.len() == expected, "q={q}: {} != {expected}", formula.len());
        counts.push(formula.len());
    }
    Ok(format!("counts {counts:?}"))
}

fn c5_extension() -> Outcome {
    for (q, k) in [(5, 6), (9, 10)] {
        let e = extend_to_max_td(&construct_additive(&whole(q)).map_err(err)?).map_err(err)?;
        ensure!(e.td.k == k && e.td.n as u64 == q, "F_{q}: TD({}, {})", e.td.k, e.td.n);
        verify_embedding(&e).map_err(err)?;
        let squares = td_to_mols(&e.td).map_err(err)?;
        ensure!(squares.len() == k - 2, "F_{q}: {} squares", squares.len());
        ensure!(pairwise_orthogonal(&squares), "F_{q}: squares not pairwise orthogonal");
    }
    let e = construct_additive(&prime_sub(9)).map_err(err)?;
    let dg: HashSet<Scalar> = compute_dg(&prime_sub(9)).map_err(err)?.elements.into_iter().collect();
    let mut rejected = 0;
    for a in fq(9).elements().unwrap().into_iter().filter(|a| !dg.contains(a)) {
        match add_part(&e, &a) {
            Err(EmbeddingError::PairCoverage(TdViolation::PairUncovered(_, _))) => rejected += 1,
            other => return Err(format!("a = {a}: {other:?}")),
        }
    }
    ensure!(rejected == 6, "{rejected} rejections");
    Ok("TD(6,5), TD(10,9), 6 rejections with witnesses".into())
}

fn c6_char_zero() -> Outcome {
    for name in ["Q", "Q(sqrt2)", "Q(sqrt5)", "Q(zeta:21)", "H:Q", "H:Q(sqrt2)", "Lam36"] {
        let field = Field::parse(name).map_err(err)?;
        let g = certify(vec![GroupElement::Additive(vec![field.zero()])], "trivial").map_err(err)?;
        ensure!(
            construct_additive(&g) == Err(EmbeddingError::CharZeroConcurrentImpossible),
            "{name}: construction was not refused"
        );
    }
    let mut groups = vec![whole(2), whole(3), whole(4), whole(5), whole(7), whole(8), whole(9), prime_sub(4), prime_sub(8), prime_sub(9)];
    let f3 = fq(3);
    groups.push(additive_group(&f3, 2, &[vec![f3.one(), f3.zero()], vec![f3.zero(), f3.one()]]).unwrap());
    let mut built = 0;
    for g in &groups {
        match construct_additive(g) {
            Ok(e) => {
                let p = e.field.characteristic() as usize;
                ensure!(is_power_of(e.td.n, p), "n = {} is not a power of {p}", e.td.n);
                let c = classify(&e).map_err(err)?;
                ensure!(c.loop_elementary_abelian, "n = {}: loop not elementary abelian", e.td.n);
                built += 1;
            }
            Err(EmbeddingError::GroupTooSmall(n)) if n < 3 => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("7 descriptors refused, {built} constructions with n = p^k"))
}

fn c7_improper() -> Outcome {
    let f9 = fq(9);
    let g = semidirect_cyclic(&f9.one(), &[f9.one()], DEFAULT_BOUND).map_err(err)?;
    let e = construct_semidirect(&g, 3).map_err(err)?;
    let r = verify_embedding(&e).map_err(err)?;
    ensure!(!r.proper, "pure translations gave a proper embedding");
    let special = Hyperplane::from_ints(&f9, &[1, 1, -1, 0]).unwrap();
    let inf = HomPoint::from_ints(&f9, &[1, 1, 2, 0]).unwrap();
    match check_improper_transversal(&e, &inf).map_err(err)? {
        ImproperVerdict::Containment { hyperplane, points_on, infinity_on, is_transversal } => {
            ensure!(hyperplane == special, "hyperplane {hyperplane}");
            ensure!(points_on && infinity_on && is_transversal == Some(true), "containment failed");
        }
        v => return Err(format!("{v:?}")),
    }

    let k = Field::cyclotomic(5).map_err(err)?;
    let g = semidirect_cyclic(&k.zeta_pow(1), &[k.one()], DEFAULT_BOUND).map_err(err)?;
    let e = construct_semidirect(&g, 3).map_err(err)?;
    let r = verify_embedding(&e).map_err(err)?;
    let mut values: Vec<Scalar> = vec![k.zero(), k.one(), -k.one(), k.from_int(2)];
    values.extend((1..5).map(|i| k.zeta_pow(i)));
    values.extend((1..5).map(|i| -k.zeta_pow(i)));
    let mut sampled = 0;
    for a in &values {
        for b in &values {
            for c in &values {
                let p = HomPoint::new(vec![k.one(), a.clone(), b.clone(), c.clone()]).unwrap();
                if e.part_hyperplanes.iter().any(|h| incident(&p, h).unwrap()) {
                    continue;
                }
                sampled += 1;
                ensure!(!is_transversal_point(&e, &p).map_err(err)?, "{p} is a transversal point");
            }
        }
    }
    // every point lies on x_4 = c (x_1 + x_2 - x_3) with c = (ζ - 1)^{-1}
    let c = (&k.zeta_pow(1) - &k.one()).inv().unwrap();
    let h = Hyperplane::new(vec![c.clone(), c.clone(), -&c, -k.one()]).unwrap();
    let on_h = e.points.iter().all(|p| incident(p, &h).unwrap());
    ensure!(
        r.proper,
        "F_9 part holds; the <(zeta5,1)> embedding verifies and {sampled} sampled points are not transversal, \
         but it is not proper (every point on x4 = c(x1 + x2 - x3), c = 1/(zeta5 - 1): {on_h})"
    );
    Ok(format!("containment holds, {sampled} sampled points rejected"))
}

fn c8_oracle() -> Outcome {
    let r = search_td_on_frame(&PGSpace::enumerate(3, 2).map_err(err)?, Frame::Concurrent, 3).map_err(err)?;
    ensure!(!r.configurations.is_empty(), "PG(2,3): nothing found");
    ensure!(r.configurations.iter().all(|c| c.elementary_abelian), "PG(2,3): non elementary-abelian loop");
    let a = r.configurations.len();
    let r = search_td_on_frame(&PGSpace::enumerate(5, 2).map_err(err)?, Frame::Triangle, 5).map_err(err)?;
    ensure!(r.configurations.is_empty(), "PG(2,5) triangle n=5: {} found", r.configurations.len());
    let r = search_td_on_frame(&PGSpace::enumerate(4, 2).map_err(err)?, Frame::Triangle, 3).map_err(err)?;
    ensure!(!r.configurations.is_empty(), "PG(2,4) triangle n=3: nothing found");
    let f4_star: BTreeSet<Scalar> = fq(4).elements().unwrap().into_iter().filter(|x| !x.is_zero()).collect();
    for c in &r.configurations {
        ensure!(c.cyclic && c.group.order() == 3, "PG(2,4): non-cyclic pattern");
        ensure!(c.group.kind() == GroupKind::Multiplicative, "PG(2,4): {:?} group", c.group.kind());
        let m: BTreeSet<Scalar> = c.group.multipliers().into_iter().collect();
        ensure!(m == f4_star, "PG(2,4): group is not F_4^*");
    }
    Ok(format!("{a} concurrent configurations in PG(2,3), {} triangle ones in PG(2,4)", r.configurations.len()))
}

/// Transversals by trying every permutation.
fn brute_transversals(ls: &LatinSquare) -> usize {
    fn go(ls: &LatinSquare, row: usize, cols: &mut Vec<bool>, syms: &mut Vec<bool>) -> usize {
        let n = ls.n();
        if row == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let s = ls.get(row, c);
            if !cols[c] && !syms[s] {
                cols[c] = true;
                syms[s] = true;
                total += go(ls, row + 1, cols, syms);
                cols[c] = false;
                syms[s] = false;
            }
        }
        total
    }
    go(ls, 0, &mut vec![false; ls.n()], &mut vec![false; ls.n()])
}

fn c9_transversals() -> Outcome {
    for (n, expected) in [(4, 0), (3, 3), (5, 15)] {
        let ls = LatinSquare::cyclic(n).map_err(err)?;
        let ts = find_transversals(&ls, None);
        ensure!(ts.len() == expected && brute_transversals(&ls) == expected, "Z_{n}: {} transversals", ts.len());
        for t in &ts {
            Transversal::new(&ls, t.sigma.clone()).map_err(err)?;
            validate_td(&latin_to_td(&ls, Some(t)).map_err(err)?).map_err(err)?;
        }
    }
    Ok("0, 3, 15".into())
}

fn c10_round_trips() -> Outcome {
    for n in [3, 5, 7] {
        let ls = LatinSquare::cyclic(n).map_err(err)?;
        let t = find_transversals(&ls, Some(1)).pop();
        let td = latin_to_td(&ls, t.as_ref()).map_err(err)?;
        let back: TransversalDesign = serde_json::from_str(&serde_json::to_string(&td).unwrap()).map_err(err)?;
        ensure!(back == td && td_to_latin(&back).map_err(err)? == ls, "Z_{n}: latin/TD/JSON round trip");
    }
    let mols = MOLSSet::prime_slopes(5).map_err(err)?;
    let td = mols_to_td(mols.squares()).map_err(err)?;
    ensure!(td_to_mols(&td).map_err(err)? == mols.squares(), "MOLS/TD round trip");

    for g in [whole(5), whole(9), prime_sub(9)] {
        let e = construct_additive(&g).map_err(err)?;
        ensure!(EmbeddedTD::from_json(&e.to_json()).map_err(err)? == e, "embedding JSON round trip");
        let ex = extract_group(&e, None, None).map_err(err)?;
        ensure!(ex.group.elements() == g.elements(), "additive group not recovered");
        ensure!(group_equivalence(&ex.group, &g, EquivalenceMode::Additive).map_err(err)?.is_some(), "no witness");
    }
    let f9 = fq(9);
    let sd = semidirect_cyclic(&f9.one(), &[f9.one()], DEFAULT_BOUND).map_err(err)?;
    let ex = extract_group(&construct_semidirect(&sd, 3).map_err(err)?, None, None).map_err(err)?;
    ensure!(group_equivalence(&ex.group, &sd, EquivalenceMode::Semidirect).map_err(err)?.is_some(), "semidirect");
    for name in ["Q8", "cyclic:5"] {
        let g = catalog(name).map_err(err)?;
        let e = construct_multiplicative(&g, 2).map_err(err)?;
        ensure!(EmbeddedTD::from_json(&e.to_json()).map_err(err)? == e, "{name}: JSON round trip");
        let ex = extract_group(&e, None, None).map_err(err)?;
        let a: HashSet<&GroupElement> = ex.group.elements().iter().collect();
        ensure!(a == g.elements().iter().collect(), "{name}: group not recovered");
    }
    Ok("identities hold".into())
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("catalog certification", 10, c1_catalog),
        ("lemma suite", 5, c2_lemmas),
        ("Q8 embedding", 5, c3_q8),
        ("transversal points vs brute force", 30, c4_transversal_points),
        ("MOLS extension", 60, c5_extension),
        ("characteristic 0 refusal", 1, c6_char_zero),
        ("improper embeddings", 10, c7_improper),
        ("oracle frame search", 120, c8_oracle),
        ("design-layer transversals", 5, c9_transversals),
        ("round trips", 5, c10_round_trips),
    ];
    let mut red = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let line = match (&outcome, in_time) {
            (Ok(detail), true) => format!("PASS {:>2} {name} ({elapsed:.2?} / {budget}s): {detail}", i + 1),
            (Ok(_), false) => format!("FAIL {:>2} {name}: over budget ({elapsed:.2?} / {budget}s)", i + 1),
            (Err(why), _) => format!("FAIL {:>2} {name} ({elapsed:.2?} / {budget}s): {why}", i + 1),
        };
        println!("{line}");
        if !(outcome.is_ok() && in_time) {
            red.push(i + 1);
        }
    }
    assert_eq!(red, EXPECTED_RED, "failing criteria differ from the known set");
}
