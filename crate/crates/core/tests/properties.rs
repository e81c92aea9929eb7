use proptest::prelude::*;

use srg_core::ensemble::{derive_seed, fit_power_law, Summary};
use srg_core::oracle::enumerate_exact;
use srg_core::theory::{solve_s, total_tree_density, tree_densities};
use srg_core::{ComponentKind, GraphState, Model, ProcessParams, Sampler, StopCondition};

fn simple_params() -> impl Strategy<Value = ProcessParams> {
    (1usize..400, 0.0f64..=1.0, any::<u64>(), any::<bool>(), any::<bool>()).prop_map(
        |(n, p, seed, naive, cycles)| {
            let sampler = if naive && p > 0.05 { Sampler::Naive } else { Sampler::EventDriven };
            ProcessParams::simple(n, p)
                .with_sampler(sampler)
                .with_seed(seed)
                .with_cycles(cycles)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_runs_keep_structure(params in simple_params()) {
        let mut st = GraphState::new(params.clone()).unwrap();
        let n = params.n_vertices;
        let mut last_trees = st.forest().n_trees();
        let mut last_unis = 0;
        while !st.is_jammed() {
            let e = st.step().unwrap();
            let f = st.forest();
            prop_assert_eq!(f.tree_mass() + f.uni_mass(), n);
            prop_assert!(f.n_trees() <= last_trees);
            prop_assert!(f.n_unicycles() >= last_unis);
            prop_assert_eq!(f.total_edges() as usize, n - f.n_trees());
            prop_assert!(!(params.sampler == Sampler::EventDriven && e.kind.is_rejection()));
            last_trees = f.n_trees();
            last_unis = f.n_unicycles();
        }
        st.forest().verify(true).map_err(TestCaseError::fail)?;
        if params.track_cycles {
            st.verify_cycles().map_err(TestCaseError::fail)?;
        }
        let jam = st.run_to_jam().unwrap();
        prop_assert_eq!(jam.size_multiset().iter().map(|&k| k as usize).sum::<usize>(), n);
        prop_assert_eq!(jam.u_jam, jam.uni_hist.values().map(|&c| c as usize).sum::<usize>());
        for r in (0..n as u32).filter(|&r| st.forest().is_root(r)) {
            prop_assert_eq!(st.forest().kind(r), ComponentKind::Unicycle);
            prop_assert_eq!(st.forest().chi(r), 0);
        }
    }

    #[test]
    fn same_seed_same_trajectory(params in simple_params(), t in 0.0f64..4.0) {
        let params = params.with_stop(StopCondition::AtTime(t));
        let a = GraphState::new(params.clone()).unwrap().run_to_time(t).unwrap();
        let b = GraphState::new(params).unwrap().run_to_time(t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn snapshots_do_not_perturb_the_path(params in simple_params(), cuts in prop::collection::vec(0.0f64..3.0, 1..6)) {
        let mut cuts = cuts;
        cuts.sort_by(f64::total_cmp);
        let end = 3.0;
        let params = params.with_stop(StopCondition::AtTime(end));
        let mut stepped = GraphState::new(params.clone()).unwrap();
        for &c in &cuts {
            stepped.run_to_time(c).unwrap();
        }
        let direct = GraphState::new(params).unwrap().run_to_time(end).unwrap();
        prop_assert_eq!(stepped.run_to_time(end).unwrap(), direct);
    }

    #[test]
    fn classical_edges_grow_one_per_event(n in 1usize..300, seed: u64, t in 0.0f64..3.0) {
        let mut st = GraphState::new(ProcessParams::classical(n, t).with_seed(seed)).unwrap();
        let snap = st.run_to_time(t).unwrap();
        prop_assert_eq!(snap.tree_mass + snap.uni_mass + snap.complex_mass, n);
        prop_assert_eq!(snap.total_edges, st.attempts());
        let comps = (snap.n_trees + snap.n_unicycles + snap.n_complex) as i64;
        // χ summed over components equals V - E.
        prop_assert!(n as i64 - snap.total_edges as i64 <= comps);
        st.forest().verify(false).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn derived_seeds_are_distinct(master: u64, i in 0u64..1_000_000) {
        prop_assert_ne!(derive_seed(master, i), derive_seed(master, i + 1));
        prop_assert_eq!(derive_seed(master, i), derive_seed(master, i));
    }

    #[test]
    fn summary_mean_is_bounded(xs in prop::collection::vec(-1e6f64..1e6, 1..200)) {
        let s = Summary::of(&xs);
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(s.mean >= lo - 1e-9 && s.mean <= hi + 1e-9);
        prop_assert!(s.variance >= 0.0);
    }

    #[test]
    fn exact_law_is_normalized(n in 1usize..=5, p in 0.0f64..=1.0) {
        let d = enumerate_exact(n, p).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.states.keys().all(|s| s.iter().sum::<u32>() as usize == n));
    }

    #[test]
    fn tree_mass_balances_order_parameter(
        (t, p) in prop_oneof![(0.05f64..0.9, 0.0f64..=1.0), (1.5f64..3.0, 0.5f64..=1.0)]
    ) {
        let dens = tree_densities(4000, t, p, Model::Simple).unwrap();
        let mass: f64 = dens.iter().enumerate().map(|(i, c)| (i + 1) as f64 * c).sum();
        let s = solve_s(t, p).unwrap();
        prop_assert!((mass - (1.0 - s)).abs() < 1e-8, "mass {} s {}", mass, s);
        let total = total_tree_density(t, p, Model::Simple).unwrap();
        prop_assert!(total <= mass + 1e-12);
    }

    #[test]
    fn power_law_fit_recovers_exponent(b in -1.0f64..2.0, a in 0.1f64..10.0) {
        let ns = [1e2, 1e3, 1e4, 1e5];
        let ys: Vec<f64> = ns.iter().map(|n: &f64| a * n.powf(b)).collect();
        let fit = fit_power_law(&ns, &ys).unwrap();
        prop_assert!((fit.exponent - b).abs() < 1e-9);
        prop_assert!((fit.amplitude / a - 1.0).abs() < 1e-8);
    }
}
