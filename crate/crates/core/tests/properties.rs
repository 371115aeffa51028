use proptest::prelude::*;

use dsb::criteria::{
    apply_rules, close_chain, pullback_invariants, validate, CurveInvariants, Notion, SeriesFlags, SeriesInvariants, Status,
    VerdictSet,
};
use dsb::dsb::{graded_kernel_profile, splitting_type, GradedProfile};
use dsb::linear::{
    analyze_singularities, base_divisor_search, decompose, multiplicity_at_point, replay_witness, Witness, PlaneMap,
};
use dsb::repro::slope3_family;
use dsb::scalar::{int, rational};
use dsb::{Error, Form, LinearSeriesP1, QMatrix};

fn form_strategy(d: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec(-5i64..=5, d + 1).prop_map(|c| Form::from_i64s(&c))
}

/// Random base-point-free series with `2 ≤ d ≤ dmax`, `1 ≤ r ≤ min(d, 4)`.
fn series_strategy(dmax: usize) -> impl Strategy<Value = LinearSeriesP1> {
    (2..=dmax)
        .prop_flat_map(|d| (Just(d), 1..=d.min(4)))
        .prop_flat_map(|(d, r)| (Just(d), prop::collection::vec(form_strategy(d), r + 1)))
        .prop_filter_map("dependent or not generating", |(d, basis)| LinearSeriesP1::new(d, basis).ok())
}

fn net_strategy(dmin: usize, dmax: usize) -> impl Strategy<Value = PlaneMap> {
    (dmin..=dmax)
        .prop_flat_map(|d| prop::collection::vec(form_strategy(d), 3))
        .prop_filter_map("not a net", |f| PlaneMap::new([f[0].clone(), f[1].clone(), f[2].clone()]).ok())
        .prop_filter("not birational", |phi| decompose(phi).map(|d| d.is_birational()).unwrap_or(false))
}

fn status_strategy() -> impl Strategy<Value = Status> {
    prop::sample::select(Status::ALL.to_vec())
}

fn invariants_strategy() -> impl Strategy<Value = (CurveInvariants, SeriesInvariants)> {
    let curve = (1i64..=12, 1i64..=8, -1i64..=6, any::<bool>()).prop_map(|(g, gamma, cliff, hyperelliptic)| CurveInvariants {
        g,
        gamma,
        cliff,
        hyperelliptic,
    });
    let flags = prop::array::uniform6(any::<bool>()).prop_map(|b| SeriesFlags {
        complete: b[0],
        globally_generated: b[1],
        birational: b[2],
        computes_clifford: b[3],
        is_canonical_twist_deg2: b[4],
        general_subspace: b[5],
    });
    let series = (0i64..=24, 0i64..=12, 0i64..=6, 1i64..=12, flags).prop_map(|(d, h0, h1, dim_v, flags)| SeriesInvariants {
        d,
        h0,
        h1,
        dim_v,
        flags,
    });
    (curve, series)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_regenerates_from_twists(v in series_strategy(7)) {
        let st = splitting_type(&v).unwrap();
        prop_assert_eq!(st.rank(), v.r());
        prop_assert_eq!(st.degree(), v.d());
        prop_assert_eq!(graded_kernel_profile(&v), GradedProfile::of_twists(st.twists(), v.d()));
    }

    #[test]
    fn splitting_invariant_under_basis_change(v in series_strategy(6), seed in prop::collection::vec(-3i64..=3, 25)) {
        let n = v.dim();
        let mut rows: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| int(seed[(i * n + j) % seed.len()])).collect()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = &row[i] + int(20);
        }
        let a = QMatrix::from_rows(rows);
        prop_assume!(a.rank() == n);
        let w = v.change_basis(&a).unwrap();
        prop_assert_eq!(splitting_type(&w).unwrap(), splitting_type(&v).unwrap());
    }

    #[test]
    fn pullback_multiplies_twists(v in series_strategy(4), b in 2usize..=3, c in 1i64..=4) {
        let mut p = vec![0i64; b + 1];
        p[0] = 1;
        p[b] = c;
        let mut q = vec![0i64; b + 1];
        q[b] = 1;
        let up = v.pullback(&Form::from_i64s(&p), &Form::from_i64s(&q)).unwrap();
        let scaled: Vec<usize> = splitting_type(&v).unwrap().twists().iter().map(|t| t * b).collect();
        prop_assert_eq!(splitting_type(&up).unwrap().twists().to_vec(), scaled);
    }

    #[test]
    fn closure_idempotent_and_consistent(l in status_strategy(), s in status_strategy(), c in status_strategy()) {
        match VerdictSet::from_statuses(l, s, c, "input").and_then(|v| close_chain(&v)) {
            Ok(closed) => {
                prop_assert_eq!(close_chain(&closed).unwrap(), closed.clone());
                for n in Notion::ALL {
                    let before = VerdictSet::from_statuses(l, s, c, "input").unwrap().status(n);
                    if before != Status::Unknown && before != Status::Semistable {
                        prop_assert_eq!(closed.status(n), before);
                    }
                }
                if closed.status(Notion::Cohomological) == Status::Stable {
                    prop_assert_eq!(closed.status(Notion::Slope), Status::Stable);
                }
                if closed.status(Notion::Slope).eq(&Status::Stable) {
                    let semistable = matches!(closed.status(Notion::Cohomological), Status::Stable | Status::StrictlySemistable | Status::Semistable);
                    prop_assert!(semistable);
                }
            }
            Err(e) => {
                let contradiction = matches!(e, Error::ContradictoryVerdicts { .. });
                prop_assert!(contradiction);
            }
        }
    }

    #[test]
    fn pullback_keeps_linear_status(l in status_strategy(), s in status_strategy(), c in status_strategy(), b in 2i64..=4) {
        let Ok(v) = VerdictSet::from_statuses(l, s, c, "input").and_then(|v| close_chain(&v)) else {
            return Ok(());
        };
        let series = SeriesInvariants { d: 5, h0: 3, h1: 0, dim_v: 3, flags: SeriesFlags::default() };
        let (p, up) = pullback_invariants(b, &series, &v).unwrap();
        prop_assert_eq!(p.d, b * 5);
        prop_assert_eq!(up.status(Notion::Linear), v.status(Notion::Linear));
        if v.status(Notion::Slope) == Status::Unstable {
            prop_assert_eq!(up.status(Notion::Slope), Status::Unstable);
        }
    }

    #[test]
    fn validation_gates_engine((c, s) in invariants_strategy()) {
        match (validate(&c, &s), apply_rules(&c, &s)) {
            (Err(v), Err(Error::Validation(w))) => prop_assert_eq!(v, w),
            (Ok(()), Ok(rep)) => {
                prop_assert_eq!(rep.slope.clone(), rational(-s.d, s.dim_v - 1));
                for cert in &rep.verdicts.certificates {
                    prop_assert!(cert.rule == "R9" || cert.all_hold(), "{} fired with a failing check", &cert.rule);
                }
            }
            (Ok(()), Err(e)) => {
                let contradiction = matches!(e, Error::ContradictoryVerdicts { .. });
                prop_assert!(contradiction, "unexpected {}", e);
            }
            (Err(v), other) => prop_assert!(false, "validation {v} not enforced: {:?}", other.map(|r| r.slope)),
        }
    }

    #[test]
    fn slope3_family_exact(k in 2i64..=40) {
        let r = slope3_family(k).unwrap();
        prop_assert_eq!(r.slope().clone(), rational(-3, 1));
        prop_assert_eq!(r.engine.status(Notion::Slope), Status::Stable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generic_points_have_multiplicity_one(phi in net_strategy(3, 5), a in 50i64..500) {
        let sa = analyze_singularities(&phi).unwrap();
        let t = int(a);
        let on_singular = sa.parameter_form.as_ref().is_some_and(|f| f.eval(&t, &int(1)) == int(0));
        prop_assume!(!on_singular);
        let p = phi.image(&t, &int(1));
        prop_assert_eq!(multiplicity_at_point(&phi, &p).unwrap(), 1);
    }

    #[test]
    fn witnesses_replay(v in series_strategy(5)) {
        let verdict = base_divisor_search(&v, v.d() - 1).unwrap();
        if let Some(w) = &verdict.witness {
            if matches!(w, Witness::BaseDivisor { .. } | Witness::Fiber { .. }) {
                prop_assert_eq!(replay_witness(&v, w).unwrap(), verdict.ratio.clone());
            }
            prop_assert_eq!(Some(w.ratio()), verdict.ratio.clone());
        }
    }
}
