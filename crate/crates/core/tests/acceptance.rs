//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dsb::criteria::{apply_rules, close_chain, validate, Notion, Status, VerdictSet};
use dsb::dsb::{
    cohomological_verdict, elementary_modification_check, general_points, split_slope_verdict, splitting_type, CohomologicalVerdict,
    SlopeVerdict, SplittingType,
};
use dsb::linear::{analyze_singularities, base_divisor_search, plane_criterion, LinStatus, PlaneMap};
use dsb::repro::{fixture, section8_counterexample, slope3_family, FixtureInput, DEFAULT_SEED};
use dsb::scalar::rational;
use dsb::{Form, LinearSeriesP1};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn fixture_series(name: &str) -> LinearSeriesP1 {
    match fixture(name).expect("stored fixture").input {
        FixtureInput::Series(v) => v,
        FixtureInput::Invariants(_) => panic!("{name} is not a series fixture"),
    }
}

fn random_series<R: Rng>(d: usize, r: usize, rng: &mut R) -> LinearSeriesP1 {
    loop {
        let basis = (0..=r)
            .map(|_| Form::from_i64s(&(0..=d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>()))
            .collect();
        if let Ok(v) = LinearSeriesP1::new(d, basis) {
            return v;
        }
    }
}

/// Split bundles met along the way, for the equivalence check.
#[derive(Default)]
struct Seen(Vec<SplittingType>);

fn criterion_1(seen: &mut Seen) -> Outcome {
    let mut worst = Duration::ZERO;
    for d in 1..=8 {
        let v = LinearSeriesP1::complete(d).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let st = splitting_type(&v).map_err(|e| e.to_string())?;
        worst = worst.max(t.elapsed());
        check(st.twists() == vec![1; d].as_slice(), || format!("d = {d}: twists {:?}", st.twists()))?;
        seen.0.push(st);
    }
    within(worst, Duration::from_secs(1))?;
    Ok(format!("d = 1..8 give d ones; slowest {worst:.2?}"))
}

fn criterion_2(seen: &mut Seen) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut divisible, mut balanced) = (0usize, 0usize);
    let mut samples = 0;
    for r in 2..=4 {
        for d in r..=10 {
            for _ in 0..50 {
                let v = random_series(d, r, &mut rng);
                let st = splitting_type(&v).map_err(|e| e.to_string())?;
                check(st.degree() == d && st.rank() == r, || format!("d = {d}, r = {r}: twists {:?}", st.twists()))?;
                if d % r != 0 {
                    check(split_slope_verdict(&st) == SlopeVerdict::Unstable, || {
                        format!("d = {d}, r = {r}: twists {:?} not unstable", st.twists())
                    })?;
                } else {
                    divisible += 1;
                    balanced += usize::from(st.is_balanced());
                }
                samples += 1;
                seen.0.push(st);
            }
        }
    }
    let rate = balanced as f64 / divisible as f64;
    check(rate >= 0.9, || format!("balanced rate {rate:.3} below 0.9"))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{samples} series; r ∤ d all unstable; r | d balanced {balanced}/{divisible} ({:.1}%); {:.2?}",
        100.0 * rate,
        start.elapsed()
    ))
}

fn criterion_3(seen: &mut Seen) -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for d in [5, 7, 9] {
        let rep = section8_counterexample(d, DEFAULT_SEED).map_err(|e| format!("d = {d}: {e}"))?;
        check(rep.linear.status == LinStatus::Stable, || format!("d = {d}: linear {}", rep.linear.status))?;
        check(rep.slope == SlopeVerdict::Unstable, || format!("d = {d}: slope {:?}", rep.slope))?;
        parts.push(format!("d = {d} twists {:?} after {} draw(s)", rep.splitting.twists.twists(), rep.attempts));
        if d == 5 {
            let monomial = splitting_type(&fixture_series("monomial_quintic")).map_err(|e| e.to_string())?;
            check(rep.splitting.twists.twists() == [2, 3], || format!("twists {:?}", rep.splitting.twists.twists()))?;
            check(monomial.twists() == rep.splitting.twists.twists(), || format!("monomial fixture twists {:?}", monomial.twists()))?;
            check(rep.multiplicity.max_multiplicity == 2, || format!("max multiplicity {}", rep.multiplicity.max_multiplicity))?;
        }
        seen.0.push(rep.splitting.twists.clone());
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{}; {:.2?}", parts.join(", "), start.elapsed()))
}

fn criterion_4() -> Outcome {
    let cases = [
        ("conic", LinStatus::StrictlySemistable),
        ("nodal_cubic", LinStatus::Unstable),
        ("generic_quintic_1", LinStatus::Stable),
        ("generic_quintic_2", LinStatus::Stable),
        ("generic_quintic_3", LinStatus::Stable),
    ];
    for (name, expected) in cases {
        let v = fixture_series(name);
        let phi = PlaneMap::from_series(&v).map_err(|e| e.to_string())?;
        let p = plane_criterion(&phi).map_err(|e| format!("{name}: {e}"))?;
        let s = base_divisor_search(&v, v.d() - 1).map_err(|e| format!("{name}: {e}"))?;
        check(p.status == expected, || format!("{name}: plane criterion {}", p.status))?;
        check(s.status == p.status, || format!("{name}: search {} vs plane {}", s.status, p.status))?;
        check(s.ratio == p.ratio, || format!("{name}: ratios {:?} vs {:?}", s.ratio, p.ratio))?;
    }
    Ok("conic strictly semistable, nodal cubic unstable, three quintics stable; both methods agree".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for k in 2..=10 {
        let r = slope3_family(k).map_err(|e| format!("k = {k}: {e}"))?;
        validate(&r.curve, &r.series).map_err(|e| format!("k = {k}: {e}"))?;
        check(*r.slope() == rational(-3, 1), || format!("k = {k}: slope {}", r.slope()))?;
        check(r.engine.fired("R5"), || format!("k = {k}: R5 did not fire"))?;
        check(r.engine.status(Notion::Slope) == Status::Stable, || format!("k = {k}: {}", r.engine.status(Notion::Slope)))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("k = 2..10 slope −3, R5 stable; {:.2?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let FixtureInput::Invariants(inv) = fixture("genus10_projection").map_err(|e| e.to_string())?.input else {
        return Err("genus10_projection is not an invariants fixture".into());
    };
    let rep = apply_rules(&inv.curve, &inv.series).map_err(|e| e.to_string())?;
    check(rep.slope == rational(-3, 1), || format!("slope {}", rep.slope))?;
    check(!rep.fired("R6"), || "R6 fired".into())?;
    let d = rep
        .discrepancies
        .iter()
        .find(|d| d.rule == "R6" && d.case == 3)
        .ok_or("no R6 case 3 discrepancy")?;
    check(d.literal.contains("3 < 1 + 10/5 = 3 fails"), || format!("literal {:?}", d.literal))?;
    Ok(format!("slope −3; literal \"{}\"; alternative \"{}\"", d.literal, d.alternative))
}

fn criterion_7(seen: &Seen) -> Outcome {
    let mut balanced_higher_rank = 0;
    for st in &seen.0 {
        let slope = split_slope_verdict(st);
        let coh = cohomological_verdict(st);
        check(slope.is_semistable() == coh.is_semistable(), || format!("twists {:?}: {slope:?} vs {coh:?}", st.twists()))?;
        if st.rank() >= 2 && st.is_balanced() {
            balanced_higher_rank += 1;
            check(coh != CohomologicalVerdict::CohomologicallyStable, || format!("twists {:?} cohomologically stable", st.twists()))?;
        }
    }
    Ok(format!("{} split bundles agree; {balanced_higher_rank} balanced of rank ≥ 2, none cohomologically stable", seen.0.len()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = 0;
    for i in 0..20 {
        let d = rng.gen_range(3..=8);
        let r = rng.gen_range(2..=d.min(5));
        let v = random_series(d, r, &mut rng);
        for k in 1..r {
            let pts = general_points(&v, k, &mut rng, 200).map_err(|e| format!("series {i}: {e}"))?;
            let rep = elementary_modification_check(&v, &pts).map_err(|e| format!("series {i}: {e}"))?;
            let st = rep.sub_splitting.as_ref().ok_or("no sub-splitting")?;
            check(st.rank() == r - k, || format!("series {i}, k = {k}: rank {}", st.rank()))?;
            check(st.degree() == d - k, || format!("series {i}, k = {k}: degree {}", st.degree()))?;
            if k == r - 1 {
                check(st.twists() == [d - r + 1], || format!("series {i}: last step {:?}", st.twists()))?;
            }
            check(rep.all_ok(), || format!("series {i}, k = {k}: report flags"))?;
            checks += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("20 series, {checks} modifications; {:.2?}", start.elapsed()))
}

fn random_status<R: Rng>(rng: &mut R) -> Status {
    Status::ALL[rng.gen_range(0..Status::ALL.len())]
}

fn opposite(s: Status) -> Option<Status> {
    match s {
        Status::Stable | Status::StrictlySemistable | Status::Semistable => Some(Status::Unstable),
        Status::Unstable => Some(Status::Semistable),
        Status::Unknown => None,
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut consistent, mut rejected, mut injected) = (0, 0, 0);
    for i in 0..1000 {
        let mut v = VerdictSet::default();
        let mut input_ok = true;
        for n in Notion::ALL {
            if rng.gen_bool(0.6) {
                input_ok &= v.assert_status(n, random_status(&mut rng), &format!("input {i}")).is_ok();
            }
        }
        if rng.gen_bool(0.2) {
            v.linear_slope_equivalence.push(format!("equivalence {i}"));
        }
        if !input_ok {
            rejected += 1;
            continue;
        }
        let closed = match close_chain(&v) {
            Ok(c) => c,
            Err(dsb::Error::ContradictoryVerdicts { .. }) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(format!("set {i}: {e}")),
        };
        consistent += 1;
        let again = close_chain(&closed).map_err(|e| format!("set {i}: {e}"))?;
        check(again == closed, || format!("set {i}: closure not idempotent"))?;
        for n in Notion::ALL {
            let k = closed.get(n);
            let bad = k.stable.as_ref().is_some_and(|f| f.value) && k.semistable.as_ref().is_some_and(|f| !f.value);
            check(!bad, || format!("set {i}: {n} stable and not semistable"))?;
        }
        let n = Notion::ALL[rng.gen_range(0..3)];
        if let Some(bad) = opposite(closed.status(n)) {
            let mut broken = closed.clone();
            let detected = broken.assert_status(n, bad, "injected").is_err() || close_chain(&broken).is_err();
            check(detected, || format!("set {i}: injected {bad} for {n} went unnoticed"))?;
            injected += 1;
        }
    }
    check(consistent > 0 && injected > 0, || "degenerate sample".into())?;
    Ok(format!("{consistent} consistent sets idempotent, {rejected} contradictory inputs rejected, {injected} injections detected"))
}

fn criterion_10() -> Outcome {
    let names = ["conic", "nodal_cubic", "generic_quintic_1", "generic_quintic_2", "generic_quintic_3", "monomial_quintic"];
    let mut count = 0;
    for name in names {
        let v = fixture_series(name);
        let phi = PlaneMap::from_series(&v).map_err(|e| e.to_string())?;
        let base = plane_criterion(&phi).map_err(|e| format!("{name}: {e}"))?;
        let twists = splitting_type(&v).map_err(|e| e.to_string())?;
        let m = analyze_singularities(&phi).map_err(|e| e.to_string())?.report.max_multiplicity;
        for b in [2usize, 3] {
            let mut pc = vec![0i64; b + 1];
            pc[0] = 1;
            pc[b] = 1;
            let mut qc = vec![0i64; b + 1];
            qc[b - 1] = 1;
            let up = v
                .pullback(&Form::from_i64s(&pc), &Form::from_i64s(&qc))
                .map_err(|e| format!("{name}, b = {b}: {e}"))?;
            check(up.d() == b * v.d(), || format!("{name}, b = {b}: degree {}", up.d()))?;
            let st = splitting_type(&up).map_err(|e| e.to_string())?;
            let scaled: Vec<usize> = twists.twists().iter().map(|t| b * t).collect();
            check(st.twists() == scaled.as_slice(), || format!("{name}, b = {b}: twists {:?}", st.twists()))?;
            let s = base_divisor_search(&up, up.d() - 1).map_err(|e| format!("{name}, b = {b}: {e}"))?;
            check(s.status == base.status, || format!("{name}, b = {b}: {} vs {}", s.status, base.status))?;
            let lower = rational((b * (v.d() - m)) as i64, 1);
            check(s.ratio.as_ref() == Some(&lower), || format!("{name}, b = {b}: ratio {:?}, expected {lower}", s.ratio))?;
            count += 1;
        }
    }
    Ok(format!("{count} pullbacks keep their linear verdict; degrees, twists and ratios scale by b"))
}

fn main() -> ExitCode {
    let mut seen = Seen::default();
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "complete-series splitting", criterion_1(&mut seen)));
    results.push((2, "random series splitting", criterion_2(&mut seen)));
    results.push((3, "odd-degree counterexamples", criterion_3(&mut seen)));
    results.push((4, "plane criterion vs base-divisor search", criterion_4()));
    results.push((5, "slope −3 family", criterion_5()));
    results.push((6, "genus-10 projection", criterion_6()));
    results.push((7, "cohomological vs slope semistability", criterion_7(&seen)));
    results.push((8, "elementary modifications", criterion_8()));
    results.push((9, "chain closure soundness", criterion_9()));
    results.push((10, "pullback invariance", criterion_10()));
    let mut failed = 0;
    for (n, title, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
