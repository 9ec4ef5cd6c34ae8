use gtcond::analysis::{is_disjunct, max_pairwise_intersection};
use gtcond::condense::{
    codeword_graph_matrix, induced_code, kautz_singleton_matrix, plan_extractor_style,
    random_function, PlannedScheme,
};
use gtcond::decode::{
    decode_with_doubling, decode_with_params, in_upward_closure, oracle_decode_exhaustive,
    threshold_count, threshold_decode, DoublingRound,
};
use gtcond::mixtures::{agreement_list, mixture_from_observation};
use gtcond::noise::{corrupt_adversarial_greedy, corrupt_random};
use gtcond::rng::{derive_seed, stream_rng};
use gtcond::{encode, Frac, NoiseBudget, SupportSet};

fn noisy_scheme() -> PlannedScheme {
    let params = plan_extractor_style(4, 256, Frac::new(1, 8), Frac::new(1, 64)).unwrap();
    PlannedScheme::realize(params, 41).unwrap()
}

#[test]
fn greedy_adversary_within_budget_cannot_drop_items() {
    let s = noisy_scheme();
    let p = &s.params;
    let budget = NoiseBudget::new(p.fp_budget(), p.fn_budget());
    for trial in 0..50 {
        let x = SupportSet::random(256, 4, &mut stream_rng(3, trial)).unwrap();
        let c = corrupt_adversarial_greedy(&s.matrix, &x, budget, p).unwrap();
        assert_eq!(c.applied, budget);
        let r = decode_with_params(&s.matrix, &c.output, p).unwrap();
        assert!(x.is_subset_of(&r.support), "trial {trial}");
        assert!((r.support.weight() as u64) < p.list_cap());
    }
}

#[test]
fn greedy_adversary_one_past_margin_drops_an_item() {
    let s = noisy_scheme();
    let p = &s.params;
    let margin = p.block_length() - threshold_count(p.block_length(), p.nu_over_gamma());
    assert_eq!(margin as usize, p.fn_budget());
    let x = SupportSet::random(256, 4, &mut stream_rng(4, 0)).unwrap();
    let c = corrupt_adversarial_greedy(&s.matrix, &x, NoiseBudget::new(0, margin as usize + 1), p)
        .unwrap();
    let r = decode_with_params(&s.matrix, &c.output, p).unwrap();
    assert_eq!(x.difference_count(&r.support), 1);
}

#[test]
fn random_noise_stays_within_guarantee() {
    let s = noisy_scheme();
    let p = &s.params;
    let budget = NoiseBudget::new(p.fp_budget(), p.fn_budget());
    let mut good = 0;
    for trial in 0..200 {
        let x = SupportSet::random(256, 4, &mut stream_rng(5, trial)).unwrap();
        let y = corrupt_random(
            &encode(&s.matrix, &x).unwrap(),
            budget,
            derive_seed(5, trial),
        )
        .output;
        let r = decode_with_params(&s.matrix, &y, p).unwrap();
        if x.is_subset_of(&r.support) && (r.support.weight() as u64) < p.list_cap() {
            good += 1;
        }
    }
    assert!(good >= 198, "{good}/200");
}

#[test]
fn decoder_matches_agreement_list() {
    let s = noisy_scheme();
    let p = &s.params;
    for trial in 0..20 {
        let x = SupportSet::random(256, 4, &mut stream_rng(6, trial)).unwrap();
        let budget = NoiseBudget::new(p.fp_budget(), p.fn_budget());
        let y = corrupt_random(&encode(&s.matrix, &x).unwrap(), budget, trial).output;
        let r = decode_with_params(&s.matrix, &y, p).unwrap();
        let mix =
            mixture_from_observation(&y, p.block_length() as usize, p.alphabet() as usize).unwrap();
        let list =
            agreement_list(&s.code, &mix, Frac::new(1, 1) - p.nu_over_gamma(), false).unwrap();
        assert_eq!(r.support, list);
    }
}

#[test]
fn doubling_search_with_planned_rounds() {
    let universe = 256u64;
    let x = SupportSet::random(universe as usize, 5, &mut stream_rng(8, 0)).unwrap();
    let out = decode_with_doubling(universe, |guess| {
        let params = plan_extractor_style(guess, universe, Frac::new(0, 1), Frac::new(0, 1))?;
        let scheme = PlannedScheme::realize(params.clone(), derive_seed(8, guess))?;
        let observation = encode(&scheme.matrix, &x)?;
        Ok(DoublingRound {
            observation,
            block_length: params.block_length(),
            nu_over_gamma: params.nu_over_gamma(),
            cap: params.list_cap(),
            params: Some(params),
            matrix: scheme.matrix,
        })
    })
    .unwrap();
    assert!(out.rounds.len() <= 4, "{:?}", out.rounds);
    assert!(x.is_subset_of(&out.result.support));
    let last = out.rounds.last().unwrap().measurements;
    assert!(out.total_measurements <= 2 * last, "{:?}", out.rounds);
}

#[test]
fn doubling_terminates_immediately_for_single_item() {
    let x = SupportSet::new(256, vec![77]).unwrap();
    let out = decode_with_doubling(256, |guess| {
        let params = plan_extractor_style(guess, 256, Frac::new(0, 1), Frac::new(0, 1))?;
        let scheme = PlannedScheme::realize(params.clone(), guess)?;
        Ok(DoublingRound {
            observation: encode(&scheme.matrix, &x)?,
            block_length: params.block_length(),
            nu_over_gamma: params.nu_over_gamma(),
            cap: params.list_cap(),
            params: Some(params),
            matrix: scheme.matrix,
        })
    })
    .unwrap();
    assert_eq!(out.guess, 1);
    assert_eq!(out.rounds.len(), 1);
}

#[test]
fn decoder_output_is_upward_closed_over_oracle() {
    let f = random_function(4, 2, 2, 17).unwrap();
    let a = codeword_graph_matrix(&induced_code(&f));
    let nog = Frac::new(1, 4);
    let budget = NoiseBudget::new(1, 1);
    for trial in 0..50 {
        let mut rng = stream_rng(9, trial);
        let x = SupportSet::random(16, 1 + (trial as usize % 2), &mut rng).unwrap();
        let y = corrupt_random(&encode(&a, &x).unwrap(), budget, trial).output;
        let r = threshold_decode(&a, &y, 4, nog).unwrap();
        let set = oracle_decode_exhaustive(&a, &y, 2, budget, 1 << 20).unwrap();
        assert!(set.contains(&x));
        assert!(in_upward_closure(&r.support, &set), "trial {trial}");
    }
}

#[test]
fn kautz_singleton_invariants() {
    for q in [2u32, 3, 4, 5, 7] {
        for w in 1..=3u32.min(q) {
            let a = kautz_singleton_matrix(q, w).unwrap();
            let n = (q as usize).pow(w);
            assert_eq!(a.rows(), (q * q) as usize);
            assert_eq!(a.cols(), n);
            assert_eq!(a.uniform_column_weight(), Some(q as usize));
            if w >= 2 {
                assert!(max_pairwise_intersection(&a) < w as usize);
            }
            if w >= 2 && n <= 125 {
                let d = (q as usize - 1) / (w as usize - 1);
                assert!(is_disjunct(&a, d), "q={q} w={w} d={d}");
            }
        }
    }
}
