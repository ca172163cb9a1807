use proptest::prelude::*;
use qpsurf_core::*;

fn constructor_models() -> Vec<SurfaceModel> {
    let mut models = vec![abelian_surface()];
    for (gf, gc) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 5)] {
        models.push(product_surface(gf, gc).unwrap());
    }
    models
}

#[test]
fn parity_exhaustive_on_box() {
    for x in constructor_models() {
        for a in -5..=5 {
            for b in -5..=5 {
                let d = DivisorClass::new(vec![a, b]);
                let d2 = x.self_intersection(&d).unwrap();
                let kd = x.pairing(x.canonical(), &d).unwrap();
                assert_eq!((d2 + kd).rem_euclid(2), 0, "parity at ({a},{b})");
            }
        }
    }
}

#[test]
fn hodge_exhaustive_on_box() {
    for x in constructor_models() {
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let d = DivisorClass::new(vec![a, b]);
                // L = f + c is ample-like on every constructor model
                let l = DivisorClass::new(vec![1, 1]);
                assert!(x.hodge_index_check(&d, &l).unwrap());
            }
        }
    }
}

#[test]
fn validators_accept_constructors_and_reject_corruption() {
    for x in constructor_models() {
        assert!(validate_surface(&x).is_empty());
    }
    // a positive-definite 2x2 gram breaks the signature check
    let bad = SurfaceData {
        gram: vec![vec![2, 0], vec![0, 2]],
        canonical: DivisorClass::new(vec![0, 0]),
        irregularity: 2,
        kodaira: KodairaDim::Zero,
        minimal: true,
        geom_genus: None,
        is_curve_product: false,
        curves: vec![],
        h0: vec![],
    };
    let x = SurfaceModel::new(bad).unwrap();
    assert!(validate_surface(&x)
        .iter()
        .any(|v| matches!(v, Violation::SignatureExcess { .. })));
}

proptest! {
    #[test]
    fn pairing_symmetric_and_bilinear(
        a in -6i64..=6, b in -6i64..=6,
        c in -6i64..=6, d in -6i64..=6,
        e in -6i64..=6, f in -6i64..=6,
        k in -4i64..=4,
    ) {
        for x in constructor_models() {
            let u = DivisorClass::new(vec![a, b]);
            let v = DivisorClass::new(vec![c, d]);
            let w = DivisorClass::new(vec![e, f]);
            prop_assert_eq!(x.pairing(&u, &v).unwrap(), x.pairing(&v, &u).unwrap());
            prop_assert_eq!(
                x.pairing(&(&u + &v), &w).unwrap(),
                x.pairing(&u, &w).unwrap() + x.pairing(&v, &w).unwrap()
            );
            prop_assert_eq!(
                x.pairing(&u.scaled(k), &w).unwrap(),
                k * x.pairing(&u, &w).unwrap()
            );
        }
    }

    #[test]
    fn genus_addition_rule(
        a in -5i64..=5, b in -5i64..=5,
        c in -5i64..=5, d in -5i64..=5,
    ) {
        // g(A+B) = g(A) + g(B) + A.B - 1
        for x in constructor_models() {
            let u = DivisorClass::new(vec![a, b]);
            let v = DivisorClass::new(vec![c, d]);
            let lhs = x.sectional_genus(&(&u + &v)).unwrap();
            let rhs = x.sectional_genus(&u).unwrap()
                + x.sectional_genus(&v).unwrap()
                + x.pairing(&u, &v).unwrap()
                - 1;
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn semidefiniteness_matches_oracle(
        entries in proptest::collection::vec(-4i64..=4, 10),
        n in 1usize..=4,
    ) {
        let mut m = vec![vec![0i64; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = entries[k];
                m[j][i] = entries[k];
                k += 1;
            }
        }
        let fast = is_negative_semidefinite_matrix(&m);
        let slow = oracle_semidef(&m, 4).unwrap();
        prop_assert_eq!(fast, slow, "gram {:?}", m);
    }

    #[test]
    fn conjecture_forms_agree(a in -5i64..=5, b in -5i64..=5) {
        for x in constructor_models() {
            let l = DivisorClass::new(vec![a, b]);
            let r = check_conjecture(&x, &l).unwrap();
            prop_assert!(r.agree);
            prop_assert_eq!(r.canonical_form.margin, r.square_form.margin);
        }
    }

    #[test]
    fn canonical_degree_monotone_under_effective_sums(
        r1 in 0i64..=4, r2 in 0i64..=4,
    ) {
        // on a minimal surface with kodaira >= 1 every effective sum of
        // registered curves has K.D >= K.C for each summand with r >= 1
        let x = product_surface(2, 3).unwrap();
        let f = &x.curve(&CurveId::new("f")).unwrap().class;
        let c = &x.curve(&CurveId::new("c")).unwrap().class;
        let d = &f.scaled(r1) + &c.scaled(r2);
        let kd = x.pairing(x.canonical(), &d).unwrap();
        prop_assert!(kd >= 0);
        if r1 >= 1 {
            prop_assert!(kd >= x.pairing(x.canonical(), f).unwrap());
        }
        if r2 >= 1 {
            prop_assert!(kd >= x.pairing(x.canonical(), c).unwrap());
        }
    }

    #[test]
    fn corpus_blowup_invariants(seed in 0u64..400) {
        let plan = random_plan(seed, &CorpusParams::default());
        let state = apply_plan(&plan).unwrap();
        let base = plan.base.surface();
        let up = &state.surface;
        let n = plan.events.len();

        // the canonical square drops by one per blow-up
        let k2_base = base.self_intersection(base.canonical()).unwrap();
        let k2_up = up.self_intersection(up.canonical()).unwrap();
        prop_assert_eq!(k2_up, k2_base - n as i64);

        for id in plan.base.components().iter().map(|(c, _)| &c.id) {
            let down = &plan.base.component(id).unwrap().0.class;
            let pulled = down.padded(up.rank());
            // pullback preserves squares, pairings with exceptionals vanish
            prop_assert_eq!(
                up.self_intersection(&pulled).unwrap(),
                base.self_intersection(down).unwrap()
            );
            prop_assert_eq!(
                up.sectional_genus(&pulled).unwrap(),
                base.sectional_genus(down).unwrap()
            );
            for e in state.event_ids() {
                prop_assert_eq!(
                    up.pairing(&pulled, state.exc_class(&e).unwrap()).unwrap(),
                    0
                );
            }

            // the strict transform genus drops by m(m-1)/2 per event
            let mut g = base.sectional_genus(down).unwrap();
            for ev in &plan.events {
                if let Some((_, m)) = ev.passing.iter().find(|(c, _)| c == id) {
                    g = genus_drop(g, *m);
                }
            }
            prop_assert_eq!(
                up.sectional_genus(state.strict_class(id).unwrap()).unwrap(),
                g
            );
        }
    }

    #[test]
    fn river_u_reconstruction(seed in 0u64..400) {
        let plan = random_plan(seed, &CorpusParams::default());
        let state = apply_plan(&plan).unwrap();
        for p in state.base_points() {
            let river = build_river(&state, &p).unwrap();
            for (i, v) in river.vertices.iter().enumerate() {
                // the path sum of u recovers the raw multiplicity
                prop_assert_eq!(river.path_sum(i), v.e_mult);
                prop_assert_eq!(v.theta, if v.w >= 1 { v.w - 1 } else { 0 });
            }
        }
    }

    #[test]
    fn river_identity_on_corpus(seed in 0u64..1000) {
        let report = verify_seed(seed, &CorpusParams::default(), 0).unwrap();
        prop_assert!(report.agree, "seed {} disagreed: {:?}", seed, report);
    }

    #[test]
    fn dual_graph_counts_consistent(seed in 0u64..300) {
        let plan = random_plan(seed, &CorpusParams::default());
        let cfg = &plan.base;
        let g = build_dual_graph(cfg);
        let (o, e, cycle_rank) = counts(&g);
        prop_assert_eq!(o, g.vertices.len() as i64);
        prop_assert_eq!(e, g.edges.len() as i64);
        prop_assert_eq!(cycle_rank, e - o + g.connected_components() as i64);
        // n_of_d is the component-wise sum of C^2 + 2
        let mut n = 0;
        for (c, _) in cfg.components() {
            n += cfg.surface().self_intersection(&c.class).unwrap() + 2;
        }
        prop_assert_eq!(n_of_d(cfg).unwrap(), n);
    }

    #[test]
    fn separation_data_sums_to_pairing(seed in 0u64..400) {
        let plan = random_plan(seed, &CorpusParams::default());
        let cfg = &plan.base;
        let ids: Vec<CurveId> = cfg.components().iter().map(|(c, _)| c.id.clone()).collect();
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                let c1 = &cfg.component(&ids[i]).unwrap().0.class;
                let c2 = &cfg.component(&ids[j]).unwrap().0.class;
                let total = cfg.surface().pairing(c1, c2).unwrap();
                match separation_data(&plan, &ids[i], &ids[j]) {
                    Ok(data) => {
                        // separated means every intersection was consumed
                        let consumed: i64 = data.iter().map(|&(b, d)| b * d).sum();
                        prop_assert_eq!(consumed, total);
                    }
                    Err(Error::NotSeparated(_, _)) => {}
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                }
            }
        }
    }
}
