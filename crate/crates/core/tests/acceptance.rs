//! One PASS/FAIL line per acceptance criterion; exits nonzero on any
//! failure.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use common::*;
use novikov_core::alexander::{
    monic_verdict, tau_product_check, twisted_alexander_default, twisted_alexander_from_complex,
    MonicVerdict, TwistedAlexander,
};
use novikov_core::bounds::{connected_sum_scale, mn_lower_bound, Rational};
use novikov_core::novikov::{build_complex, compute_profile, Certificate, NovikovProfile, TwistedComplex};
use novikov_core::presentation::connected_sum;
use novikov_core::reps::{
    perm_to_matrix, product_rep, search_permutation_reps, verify_permutation_rep, Convention,
    CycleType, MatrixRep,
};
use novikov_core::{fixtures, Presentation};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Conway {
    complex: TwistedComplex,
    profile: NovikovProfile,
}

fn conway() -> Conway {
    let p = fixtures::conway();
    let r = perm_to_matrix(&fixtures::conway_rep(), Convention::AsGiven).unwrap();
    let complex = build_complex(&p, &r).unwrap();
    let profile = compute_profile(&complex);
    Conway { complex, profile }
}

fn determinant(c: &Conway) -> Outcome {
    let start = Instant::now();
    // omit the last generator's rows and the last relator's columns
    let keep: Vec<usize> = (0..10).collect();
    let det = c.complex.minor(10, &keep).det().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(det.coeffs().len() == 19, format!("{} coefficients", det.coeffs().len()))?;
    ensure(matches_up_to_conventions(&det, &CONWAY_DET), format!("got {det}"))?;
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("19 coefficients match, {elapsed:.2?}"))
}

fn rank(c: &Conway) -> Outcome {
    let r = c.complex.d2.rank_over_function_field();
    ensure(r == 50, format!("rank {r}"))?;
    ensure(c.profile.b1() == 0, format!("b1 = {}", c.profile.b1()))?;
    Ok("rank 50, b1 = 0".into())
}

fn verdicts(c: &Conway) -> Outcome {
    let p = &c.profile;
    ensure(p.q1_lower() >= 1, format!("q1 lower bound {}", p.q1_lower()))?;
    let det = p
        .certificates
        .iter()
        .find_map(|cert| match cert {
            Certificate::TorsionNonUnit { determinant, .. } => Some(determinant.clone()),
            _ => None,
        })
        .ok_or("no torsion-non-unit certificate")?;
    let low = det.lowest_coeff().cloned().unwrap_or_default();
    ensure(low.magnitude() == &5u32.into(), format!("lowest coefficient {low}"))?;
    let b = mn_lower_bound(p);
    ensure(b.raw == Rational::new(2, 5), format!("raw bound {}", b.raw))?;
    ensure(b.m1_lb == b.m2_lb && b.m1_lb >= 1, format!("m1 {} m2 {}", b.m1_lb, b.m2_lb))?;
    Ok(format!("q1 >= {}, lowest coefficient {low}, raw {}, m1 = m2 = {}", p.q1_lower(), b.raw, b.m1_lb))
}

fn search() -> Outcome {
    let p = fixtures::conway();
    let class = CycleType::parse("3cycle", 5).unwrap();
    let start = Instant::now();
    let found = search_permutation_reps(&p, 5, Some(&class), 10);
    let elapsed = start.elapsed();
    let h = fixtures::conway_rep();
    ensure(found.iter().any(|r| r.is_conjugate_to(&h)), "no representation conjugate to h")?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{} found in {elapsed:.2?}, one conjugate to h", found.len()))
}

fn kinoshita_terasaka() -> Outcome {
    let p = fixtures::kinoshita_terasaka();
    let found = search_permutation_reps(&p, 5, None, 100);
    let hit = found.par_iter().find_first(|r| {
        verify_permutation_rep(&p, r)
            && compute_profile(&build_complex(&p, &perm_to_matrix(r, Convention::AsGiven).unwrap()).unwrap())
                .q1_lower()
                >= 1
    });
    let r = hit.ok_or_else(|| format!("none of {} representations certifies q1 >= 1", found.len()))?;
    let images: Vec<String> = r.images.iter().map(ToString::to_string).collect();
    Ok(format!("{} candidates; q1 >= 1 for {}", found.len(), images.join(" ")))
}

fn scaling(c: &Conway) -> Outcome {
    let scaled = connected_sum_scale(&c.profile, 10).map_err(|e| e.to_string())?;
    ensure(scaled.q1_lower() >= 10, format!("scaled q1 {}", scaled.q1_lower()))?;
    let b = mn_lower_bound(&scaled);
    ensure(b.raw == Rational::new(4, 1), format!("raw bound {}", b.raw))?;

    let p = fixtures::conway();
    let h = perm_to_matrix(&fixtures::conway_rep(), Convention::AsGiven).unwrap();
    let pp = connected_sum(&p, &p).map_err(|e| e.to_string())?;
    let hh = product_rep(&h, &p, &h, &p, &pp).map_err(|e| e.to_string())?;
    let direct = compute_profile(&build_complex(&pp, &hh).map_err(|e| e.to_string())?);
    ensure(direct.b1() == 0, format!("direct b1 {}", direct.b1()))?;
    let a = twisted_alexander_default(&p, &h).map_err(|e| e.to_string())?;
    let a2 = twisted_alexander_default(&pp, &hh).map_err(|e| e.to_string())?;
    ensure(tau_product_check(&a, &a, &a2), "tau_product_check fails")?;
    Ok(format!(
        "scaled q1 >= {}, raw {}; direct b1 = 0, q1 in [{}, {}], torsion multiplies",
        scaled.q1_lower(),
        b.raw,
        direct.q1_lower(),
        direct.q1_upper().map_or("?".into(), |u| u.to_string())
    ))
}

fn fibred_controls() -> Outcome {
    for (name, p) in [("trefoil", fixtures::trefoil()), ("figure-eight", fixtures::figure_eight())] {
        let r = MatrixRep::trivial(p.generator_count(), 1);
        let prof = compute_profile(&build_complex(&p, &r).map_err(|e| e.to_string())?);
        ensure(prof.is_acyclic(), format!("{name} not acyclic"))?;
        ensure(
            prof.certificates.iter().any(|c| c.kind() == "acyclic"),
            format!("{name} lacks an acyclic certificate"),
        )?;
        let a = twisted_alexander_default(&p, &r).map_err(|e| e.to_string())?;
        ensure(monic_verdict(&a).ok() == Some(MonicVerdict::Monic), format!("{name} not monic"))?;
    }
    let u = fixtures::unknot();
    let prof = compute_profile(&build_complex(&u, &MatrixRep::trivial(1, 1)).map_err(|e| e.to_string())?);
    ensure(prof.b1() == 0 && prof.q1_lower() == 0 && prof.q1_exact() == Some(0), "unknot profile nonzero")?;
    Ok("trefoil and figure-eight acyclic and monic; unknot all zero".into())
}

fn drop_independence(p: &Presentation, r: &MatrixRep) -> Result<usize, String> {
    let c = build_complex(p, r).map_err(|e| e.to_string())?;
    let pairs: Vec<(usize, usize)> = (0..c.generators)
        .flat_map(|g| (0..c.relators).map(move |i| (g, i)))
        .collect();
    let found: Vec<TwistedAlexander> = pairs
        .par_iter()
        .filter_map(|&(g, i)| twisted_alexander_from_complex(&c, g, &[i]).ok())
        .collect();
    ensure(!found.is_empty(), "no legal drop pair")?;
    ensure(found.iter().all(|a| a.equivalent(&found[0])), "drop choices disagree")?;
    Ok(found.len())
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut fails = 0;
    for _ in 0..10_000 {
        let w = random_reduced_word(&mut rng, 6, 30);
        fails += usize::from(!fox_fundamental_holds(&w, 6));
    }
    ensure(fails == 0, format!("Fox formula: {fails} failures"))?;

    let mut complexes = 0;
    for p in [
        fixtures::unknot(),
        fixtures::trefoil(),
        fixtures::figure_eight(),
        fixtures::kinoshita_terasaka(),
        fixtures::conway(),
    ] {
        let mut reps = vec![MatrixRep::trivial(p.generator_count(), 1)];
        for k in 2..=5 {
            for r in search_permutation_reps(&p, k, None, 100) {
                reps.push(perm_to_matrix(&r, Convention::AsGiven).unwrap());
            }
        }
        for r in &reps {
            let c = build_complex(&p, r).map_err(|e| format!("chain law: {e}"))?;
            ensure(c.chain_law_holds(), "chain law fails")?;
            complexes += 1;
        }
    }

    for _ in 0..1_000 {
        let m = random_poly_matrix(&mut rng, 8, 3);
        ensure(det_routes_agree(&m), "determinant routes disagree")?;
    }

    let t = fixtures::trefoil();
    let pairs_t = drop_independence(&t, &MatrixRep::trivial(3, 1))?;
    let c = fixtures::conway();
    let h = perm_to_matrix(&fixtures::conway_rep(), Convention::AsGiven).unwrap();
    let pairs_c = drop_independence(&c, &h)?;

    let xi = c.xi().to_vec();
    for _ in 0..1_000 {
        let u = random_reduced_word(&mut rng, 11, 20);
        let v = random_reduced_word(&mut rng, 11, 20);
        ensure(anti_homomorphism_holds(&h, &xi, &u, &v), "anti-homomorphism law fails")?;
    }
    Ok(format!(
        "10000 Fox words, {complexes} complexes, 1000 determinants, {pairs_t}+{pairs_c} drop pairs, 1000 word pairs"
    ))
}

fn main() {
    let c = conway();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Conway determinant", Box::new(|| determinant(&c))),
        ("Conway rank", Box::new(|| rank(&c))),
        ("Conway verdicts", Box::new(|| verdicts(&c))),
        ("representation search", Box::new(search)),
        ("Kinoshita-Terasaka existence", Box::new(kinoshita_terasaka)),
        ("connected-sum scaling", Box::new(|| scaling(&c))),
        ("fibred controls", Box::new(fibred_controls)),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
