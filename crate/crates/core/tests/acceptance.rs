//! Acceptance criteria, one pass/fail line each. Plain binary target so the lines are never captured.

use std::time::{Duration, Instant};

use engelcov::bundles::{CircleBundle, ContactLabel};
use engelcov::engel::{act_engel, eng_nonempty, eng_oriented_nonempty, enumerate_trivial_bundle, is_orientable_class, make_oriented_engel_class, standard_labels, twist};
use engelcov::engel_numeric::{contact_defect, sample_points, twist_numeric_estimate, Point4};
use engelcov::{
    act, coordinate_loops, development_winding, distance_on_loop, exists_covering, homotopic, horizontal_distance,
    isomorphic, torus_model_covering, verify_engel, Cochain, CohomologyClass, SimplicialComplex, TorusEngelParams,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {:.2?}, limit {:?}", t, limit))
}

fn alpha(rng: &mut ChaCha8Rng, r: i64) -> [i64; 3] {
    [rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)]
}

/// `Σ c_i g_i` over all generators of H^k (torsion coordinates not reduced).
fn combination(x: &SimplicialComplex, k: usize, c: &[i64]) -> Cochain {
    let mut z = Cochain::zero(x, k).unwrap();
    for (g, &ci) in x.cohomology(k).unwrap().generators().iter().zip(c) {
        z = &z + &g.scale_i64(ci);
    }
    z
}

fn random_exact(x: &SimplicialComplex, k: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let u: Vec<i64> = (0..x.count(k - 1)).map(|_| rng.gen_range(-3..=3)).collect();
    Cochain::from_i64(x, k - 1, &u).unwrap().coboundary().unwrap()
}

fn random_cocycle(x: &SimplicialComplex, k: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
    &combination(x, k, &coeffs) + &random_exact(x, k, rng)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expected = [("T^3", SimplicialComplex::torus3(), ["Z^3", "Z^3", "Z"]), ("RP^3", SimplicialComplex::projective3(), ["0", "Z_2", "Z"])];
    let mut found = Vec::new();
    for (name, builtin, want) in expected {
        // fresh complex so nothing is served from a cache
        let x = SimplicialComplex::from_top_simplices(3, builtin.simplices(3)).unwrap();
        for (k, w) in (1..=3).zip(want) {
            let got = x.cohomology(k).unwrap().signature(" + ");
            check(got == w, || format!("{name} H^{k} = {got}, expected {w}"))?;
            found.push(format!("{name} H^{k}={got}"));
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(found.join(", "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let loops = coordinate_loops();
    let phi0 = torus_model_covering(1, [0, 0, 0]).unwrap();
    for _ in 0..50 {
        let a = alpha(&mut rng, 5);
        let phi = torus_model_covering(1, a).unwrap();
        for i in 0..3 {
            let d = distance_on_loop(&phi, &phi0, &loops[i]).unwrap();
            check(d == BigInt::from(a[i]), || format!("alpha {a:?}: d on gamma_{} = {d}", i + 1))?;
            let w = development_winding(a, [0, 0, 0], i + 1).unwrap();
            check(w == a[i], || format!("alpha {a:?}: winding {w} on gamma_{}", i + 1))?;
        }
        let coords = horizontal_distance(&phi, &phi0).unwrap().free_i64();
        check(coords == a, || format!("alpha {a:?}: class {coords:?}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("50 random alpha in [-5,5]^3".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    for x in [SimplicialComplex::torus3(), SimplicialComplex::projective3()] {
        let h2 = x.cohomology(2).unwrap();
        for _ in 0..50 {
            let n = rng.gen_range(1..=4i64);
            let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
            let q = CircleBundle::new(&combination(&x, 2, &coeffs) + &random_exact(&x, 2, &mut rng)).unwrap();
            let e = q.euler_class().scale_i64(n);
            let p = CircleBundle::new(&h2.representative(&e).unwrap() + &random_exact(&x, 2, &mut rng)).unwrap();
            let base = exists_covering(&q, &p, n).unwrap().ok_or("covering should exist")?;
            let phi1 = act(&random_cocycle(&x, 1, &mut rng), &base).unwrap();
            let phi2 = act(&random_cocycle(&x, 1, &mut rng), &base).unwrap();
            let phi3 = act(&random_cocycle(&x, 1, &mut rng), &base).unwrap();
            let d = |a, b| horizontal_distance(a, b).unwrap();
            check(d(&phi1, &phi2).checked_add(&d(&phi2, &phi3)).unwrap() == d(&phi1, &phi3), || "additivity".into())?;
            check(d(&phi1, &phi2) == d(&phi2, &phi1).neg(), || "antisymmetry".into())?;
            let alpha = random_cocycle(&x, 1, &mut rng);
            let moved = act(&alpha, &phi1).unwrap();
            let a = x.coordinates(&alpha).unwrap();
            check(d(&phi1, &moved) == a, || "d(phi, alpha.phi) = [alpha]".into())?;
            check(homotopic(&phi1, &moved).unwrap() == a.is_zero(), || "freeness".into())?;
            let rep = d(&phi1, &phi2).representative();
            check(homotopic(&act(&rep, &phi1).unwrap(), &phi2).unwrap(), || "transitivity".into())?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} covering pairs over T^3 and RP^3"))
}

fn classes_in_box(x: &SimplicialComplex) -> Vec<Vec<i64>> {
    let h2 = x.cohomology(2).unwrap();
    let dims = h2.free_rank() + h2.torsion_orders().len();
    let mut out = vec![vec![]];
    for _ in 0..dims {
        out = out.into_iter().flat_map(|v| (-2..=2).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn class_of(x: &SimplicialComplex, c: &[i64]) -> CohomologyClass {
    let h2 = x.cohomology(2).unwrap();
    let r = h2.free_rank();
    h2.class_i64(&c[..r], &c[r..]).unwrap()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    let mut positives = 0;
    for x in [SimplicialComplex::torus3(), SimplicialComplex::projective3()] {
        let coords = classes_in_box(&x);
        let bundles: Vec<CircleBundle> = coords.iter().map(|c| CircleBundle::new(combination(&x, 2, c)).unwrap()).collect();
        let classes: Vec<CohomologyClass> = coords.iter().map(|c| class_of(&x, c)).collect();
        for n in 1..=6 {
            for (q, eq) in bundles.iter().zip(&classes) {
                let target = eq.scale_i64(n);
                for (p, ep) in bundles.iter().zip(&classes) {
                    let found = exists_covering(q, p, n).unwrap();
                    check(found.is_some() == (&target == ep), || format!("n={n} e(Q)={eq} e(P)={ep}"))?;
                    if found.is_some() {
                        positives += 1;
                    }
                    checks += 1;
                }
            }
        }
    }
    let rp3 = SimplicialComplex::projective3();
    let tau = CircleBundle::new(rp3.cohomology(2).unwrap().torsion_generators()[0].clone()).unwrap();
    check(exists_covering(&tau, &tau, 2).unwrap().is_none(), || "RP^3 tau: degree 2 should be impossible".into())?;
    check(exists_covering(&tau, &tau, 3).unwrap().is_some(), || "RP^3 tau: degree 3 should be possible".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checks} existence checks ({positives} coverings), RP^3 tau: n=2 none, n=3 some"))
}

fn criterion_5() -> Outcome {
    let t3 = SimplicialComplex::torus3();
    let g = t3.cohomology(1).unwrap().generators();
    let mut checks = 0;
    for n in 1..=4i64 {
        let phi0 = torus_model_covering(n, [0, 0, 0]).unwrap();
        for a in -6..=6i64 {
            for b in -6..=6i64 {
                for c in -6..=6i64 {
                    let d = [a, b, c];
                    let z = &(&g[0].scale_i64(a) + &g[1].scale_i64(b)) + &g[2].scale_i64(c);
                    let phi = act(&z, &phi0).unwrap();
                    let iso = isomorphic(&phi0, &phi).unwrap();
                    let divisible = d.iter().all(|x| x % n == 0);
                    // brute force: a cocycle psi with coefficients in [-6,6] and z - n·psi exact
                    let mut witness = None;
                    'search: for y0 in -6..=6i64 {
                        for y1 in -6..=6i64 {
                            for y2 in -6..=6i64 {
                                if n * y0 == a && n * y1 == b && n * y2 == c {
                                    witness = Some([y0, y1, y2]);
                                    break 'search;
                                }
                            }
                        }
                    }
                    if let Some(y) = witness {
                        let psi = &(&g[0].scale_i64(y[0]) + &g[1].scale_i64(y[1])) + &g[2].scale_i64(y[2]);
                        let rest = z.checked_sub(&psi.scale_i64(n)).unwrap();
                        check(t3.is_coboundary(&rest).unwrap().is_some(), || format!("oracle witness {y:?} for {d:?} not exact"))?;
                    }
                    check(iso == divisible && iso == witness.is_some(), || format!("n={n} d={d:?}: isomorphic={iso}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} isomorphism checks against brute force"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for x in [SimplicialComplex::torus3(), SimplicialComplex::projective3()] {
        let coords = classes_in_box(&x);
        let bundles: Vec<CircleBundle> = coords.iter().map(|c| CircleBundle::new(combination(&x, 2, c)).unwrap()).collect();
        let labels: Vec<ContactLabel> = coords.iter().enumerate().map(|(i, c)| ContactLabel::new(format!("xi{i}"), combination(&x, 2, c)).unwrap()).collect();
        let classes: Vec<CohomologyClass> = coords.iter().map(|c| class_of(&x, c)).collect();
        for n in 1..=6i64 {
            for (q, eq) in bundles.iter().zip(&classes) {
                let lhs = eq.scale_i64(n);
                let half = eq.scale_i64(n / 2);
                for (xi, ex) in labels.iter().zip(&classes) {
                    let i = lhs == ex.scale_i64(2);
                    let ii = n % 2 == 0 && &half == ex;
                    check(eng_nonempty(q, xi, n).unwrap() == i, || format!("(i) n={n} e(Q)={eq} e(xi)={ex}"))?;
                    check(eng_oriented_nonempty(q, xi, n).unwrap() == ii, || format!("(ii) n={n} e(Q)={eq} e(xi)={ex}"))?;
                    checks += 1;
                }
            }
        }
    }
    let rp3 = SimplicialComplex::projective3();
    let q = CircleBundle::trivial(&rp3).unwrap();
    let tau = ContactLabel::new("tau", rp3.cohomology(2).unwrap().torsion_generators()[0].clone()).unwrap();
    for n in -6..=6i64 {
        if n != 0 {
            check(eng_nonempty(&q, &tau, n).unwrap(), || format!("RP^3 tau n={n} should be nonempty"))?;
            check(!eng_oriented_nonempty(&q, &tau, n).unwrap(), || format!("RP^3 tau n={n} oriented should be empty"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checks} label/bundle/n triples; RP^3 tau nonempty for all n, oriented empty"))
}

fn criterion_7() -> Outcome {
    let t3 = SimplicialComplex::torus3();
    let g = t3.cohomology(1).unwrap().generators();
    let q = CircleBundle::trivial(&t3).unwrap();
    let xi = ContactLabel::from_class("xi", &t3.cohomology(2).unwrap().zero()).unwrap();
    let mut summary = Vec::new();
    for n in [2i64, 4, -2] {
        let base = make_oriented_engel_class(&q, &xi, n).unwrap().ok_or("no oriented class")?;
        let mut reps = Vec::new();
        for e in 0..8 {
            let mut z = Cochain::zero(&t3, 1).unwrap();
            for (i, gi) in g.iter().enumerate() {
                if e >> i & 1 == 1 {
                    z = &z + gi;
                }
            }
            reps.push(act_engel(&z, &base).unwrap());
        }
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let t = twist(a, b).unwrap();
                let same = t.group().contains_multiple(&t, &BigInt::from(2)).unwrap();
                check(same == (i == j), || format!("cosets {i} and {j} not separated"))?;
            }
        }
        let oriented = reps.iter().filter(|d| is_orientable_class(d, &base).unwrap()).count();
        check(oriented == 1, || format!("{oriented} oriented cosets"))?;
        let order = t3.cohomology(1).unwrap().quotient_order(2);
        check(order == BigInt::from(8), || format!("|H^1/2H^1| = {order}"))?;
        let flipped = act_engel(&g[0], &base).unwrap();
        check(!is_orientable_class(&flipped, &base).unwrap(), || "g1 should flip".into())?;
        check(is_orientable_class(&act_engel(&g[0].scale_i64(2), &base).unwrap(), &base).unwrap(), || "2 g1 should preserve".into())?;
        check(!is_orientable_class(&act_engel(&g[0].scale_i64(2), &flipped).unwrap(), &base).unwrap(), || "2 g1 should preserve non-orientable".into())?;
        summary.push(format!("n={n}: 8 cosets, 1 oriented"));
    }
    Ok(summary.join("; "))
}

fn criterion_8() -> Outcome {
    let mut lines = 0;
    for (x, name) in [(SimplicialComplex::torus3(), "T^3"), (SimplicialComplex::projective3(), "RP^3")] {
        let q = CircleBundle::trivial(&x).unwrap();
        let labels = standard_labels(&x).unwrap();
        let tws: Vec<i64> = (-4..=4).filter(|&n| n != 0).collect();
        let report = enumerate_trivial_bundle(&q, &tws, &labels).unwrap();
        for row in &report.rows {
            let label = labels.iter().find(|l| l.name() == row.xi).unwrap();
            let e = label.euler_class();
            let two_torsion = e.scale_i64(2).is_zero();
            check(row.admissible == two_torsion, || format!("{name}: {row}"))?;
            if row.admissible {
                check(row.oriented == Some(row.n % 2 == 0 && e.is_zero()), || format!("{name}: {row}"))?;
                let want = if name == "T^3" { "Z^3" } else { "0" };
                check(row.torsor.as_deref() == Some(want), || format!("{name}: {row}"))?;
            }
            lines += 1;
        }
        let admissible: Vec<&str> = labels.iter().filter(|l| l.euler_class().scale_i64(2).is_zero()).map(|l| l.name()).collect();
        let want: &[&str] = if name == "T^3" { &["[0,0,0]"] } else { &["[|0]", "[|1]"] };
        check(admissible == want, || format!("{name}: admissible {admissible:?}"))?;
    }
    Ok(format!("{lines} report rows; T^3 admissible {{0}} torsor Z^3; RP^3 admissible {{0, tau}}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    for n in 1..=3 {
        for a in [[0, 0, 0], [1, 0, 0], [2, -1, 3]] {
            let report = verify_engel(&TorusEngelParams::new(n, a), 1000, 9).unwrap();
            check(report.pass, || format!("n={n} alpha={a:?} rank profile failed"))?;
            check(report.min_sv_ratio > 1e-4, || format!("n={n} alpha={a:?} ratio {:e}", report.min_sv_ratio))?;
            worst = worst.min(report.min_sv_ratio);
        }
    }
    let degenerate = verify_engel(&TorusEngelParams::new(0, [1, 0, 0]), 1000, 9).unwrap();
    check(!degenerate.pass && degenerate.samples.iter().all(|s| s.ranks == [2, 2, 2]), || "n=0 should stall at stage 2".into())?;
    let mut defect = 0.0f64;
    for p in sample_points::<f64>(1000, 9) {
        defect = defect.max((contact_defect(&p) - std::f64::consts::TAU).abs());
    }
    for i in 0..17 {
        for j in 0..17 {
            for k in 0..17 {
                let p = Point4::new(i as f64 / 17.0, j as f64 / 17.0, k as f64 / 17.0, 0.5);
                defect = defect.max((contact_defect(&p) - std::f64::consts::TAU).abs());
            }
        }
    }
    check(defect < 1e-9, || format!("contact defect off by {defect:e}"))?;
    let mut residual = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for _ in 0..30 {
        let (a, b) = (alpha(&mut rng, 5), alpha(&mut rng, 5));
        let n = rng.gen_range(1..=3);
        for i in 1..=3 {
            let est = twist_numeric_estimate::<f64>(&TorusEngelParams::new(n, a), &TorusEngelParams::new(n, b), i, 64).unwrap();
            check(est.value == a[i - 1] - b[i - 1], || format!("twist {a:?} vs {b:?} on loop {i}: {}", est.value))?;
            residual = residual.max(est.residual);
        }
    }
    check(residual < 1e-6, || format!("unwrap residual {residual:e}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("ranks (2,3,4), min sv ratio {worst:.3e}; n=0 FAIL; defect {defect:.1e}; max residual {residual:.1e}"))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let loops = coordinate_loops();
    for _ in 0..50 {
        let (a, b) = (alpha(&mut rng, 5), alpha(&mut rng, 5));
        let n = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
        let phi_a = torus_model_covering(n.abs(), a).unwrap();
        let phi_b = torus_model_covering(n.abs(), b).unwrap();
        for i in 1..=3 {
            let comb = distance_on_loop(&phi_a, &phi_b, &loops[i - 1]).unwrap();
            let dev = development_winding(a, b, i).unwrap();
            let num = engelcov::twist_numeric(&TorusEngelParams::new(n, a), &TorusEngelParams::new(n, b), i, 64).unwrap();
            check(comb == BigInt::from(dev) && dev == num, || format!("{a:?} vs {b:?} loop {i}: {comb} / {dev} / {num}"))?;
        }
    }
    Ok("50 pairs x 3 loops: combinatorial = analytic = numeric".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cohomology of the built-in complexes", criterion_1),
        ("torus distance on generator loops", criterion_2),
        ("H^1 torsor on covering pairs", criterion_3),
        ("existence iff n e(Q) = e(P)", criterion_4),
        ("isomorphism iff distance in n H^1", criterion_5),
        ("Engel existence, plain and oriented", criterion_6),
        ("orientability cosets on T^3", criterion_7),
        ("trivial bundle enumeration", criterion_8),
        ("numeric Engel verification", criterion_9),
        ("cross-model coherence", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("acceptance {:>2} PASS {name} [{t:.2}s]: {detail}", i + 1),
            Err(why) => {
                println!("acceptance {:>2} FAIL {name} [{t:.2}s]: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
