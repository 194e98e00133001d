mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qbecc::channel::{
    build_decoder, entanglement_fidelity, error_prob, sweep, sweep_from_csv, sweep_to_csv, ChannelModel,
    CompensatedSum, DecoderMode, Strategy, SweepCode,
};
use qbecc::registry::{lookup, table1};
use qbecc::search::build_entry;
use qbecc::stabilizer::{additive_code, StabilizerCode, SymplecticVector};

fn registry_code(id: &str) -> StabilizerCode {
    build_entry(lookup(&table1(), id).unwrap()).unwrap()
}

fn five_qubit() -> StabilizerCode {
    let rows: Vec<_> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        .iter()
        .map(|s| SymplecticVector::from_pauli_str(s).unwrap())
        .collect();
    additive_code(5, &rows).unwrap()
}

#[test]
fn probabilities_are_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..24 {
        let n = 1 + trial % 8;
        let ch = ChannelModel::new(rng.gen(), rng.gen()).unwrap();
        let mut total = CompensatedSum::default();
        for e in common::all_vectors(n) {
            total.add(error_prob(&e, &ch));
        }
        assert!((total.value() - 1.0).abs() < 1e-12, "n={n} {ch:?}: {}", total.value());
    }
}

#[test]
fn uncorrelated_channel_factorizes() {
    let ch = ChannelModel::new(0.17, 0.0).unwrap();
    for n in 1..=6 {
        for e in common::all_vectors(n) {
            let product: f64 = (0..n).map(|i| ch.marginal(e.symbol(i).code() as usize)).product();
            assert!((error_prob(&e, &ch) - product).abs() <= 1e-15 * product.max(1e-300));
        }
    }
}

#[test]
fn conditional_rows_sum_to_one() {
    let ch = ChannelModel::new(0.3, 0.6).unwrap();
    for k in 0..4 {
        let s: f64 = (0..4).map(|l| ch.cond_prob(l, k)).sum();
        assert!((s - 1.0).abs() < 1e-15);
    }
}

#[test]
fn recoveries_have_their_syndromes() {
    let code = registry_code("13_1");
    for mode in [DecoderMode::Random { t: 2 }, DecoderMode::Burst { l: 3 }, DecoderMode::Combined { t: 2, l: 3 }] {
        let table = build_decoder(&code, mode).unwrap();
        let kt = table.keys();
        assert_eq!(table.recovery(0).map(|v| v.is_zero()), Some(true));
        for (s, v) in table.iter() {
            assert_eq!(kt.syndrome_of(kt.key(v)) as u64, s);
        }
    }
}

#[test]
fn random_table_counts_and_weight_one_uniqueness() {
    let code = registry_code("13_1");
    let table = build_decoder(&code, DecoderMode::Random { t: 2 }).unwrap();
    assert!(table.len() >= 1 + 39 + 78 * 9);
    let kt = table.keys();
    let mut seen = std::collections::HashSet::new();
    for i in 0..13 {
        for s in 1..4 {
            assert!(seen.insert(kt.col(i, s) >> kt.logical_bits()));
        }
    }
}

#[test]
fn combined_table_extends_random_table() {
    let code = registry_code("13_1");
    let random = build_decoder(&code, DecoderMode::Random { t: 2 }).unwrap();
    let combined = build_decoder(&code, DecoderMode::Combined { t: 2, l: 3 }).unwrap();
    for (s, v) in random.iter() {
        assert_eq!(combined.recovery(s), Some(v));
    }
    assert!(combined.len() > random.len());
}

#[test]
fn syndrome_limit_is_enforced() {
    let code = registry_code("13_1");
    assert!(qbecc::channel::build_decoder_with(&code, DecoderMode::Random { t: 1 }, 1 << 11).is_err());
}

/// Fidelity by direct membership: for every error, multiply by the table's
/// recovery and test the product against the stabilizer span.
fn brute_force_ef(code: &StabilizerCode, mode: DecoderMode, ch: &ChannelModel) -> f64 {
    let table = build_decoder(code, mode).unwrap();
    let by_syndrome: std::collections::HashMap<Vec<u8>, SymplecticVector> =
        table.iter().map(|(_, v)| (code.syndrome_bits(v), v.clone())).collect();
    let mut ok = CompensatedSum::default();
    for e in common::all_vectors(code.n()) {
        if let Some(rec) = by_syndrome.get(&code.syndrome_bits(&e)) {
            if code.contains(&e.add(rec)) {
                ok.add(error_prob(&e, ch));
            }
        }
    }
    ok.value()
}

#[test]
fn exact_fidelity_matches_membership_oracle() {
    let code = five_qubit();
    for (p, mu) in [(0.05, 0.0), (0.1, 0.4), (0.02, 0.9)] {
        let ch = ChannelModel::new(p, mu).unwrap();
        for mode in [DecoderMode::Random { t: 1 }, DecoderMode::Combined { t: 1, l: 2 }] {
            let table = build_decoder(&code, mode).unwrap();
            let exact = entanglement_fidelity(&table, &ch, Strategy::Exact).unwrap();
            let oracle = brute_force_ef(&code, mode, &ch);
            assert!((exact.ef_lower - oracle).abs() < 1e-13, "{mode:?} {ch:?}");
            assert!(exact.exact && exact.residual < 1e-9);
        }
    }
}

#[test]
fn uncorrelated_five_qubit_fidelity_closed_form() {
    // identity plus the 15 single-qubit errors, each with its own syndrome
    let code = five_qubit();
    let p = 0.07;
    let ch = ChannelModel::new(p, 0.0).unwrap();
    let table = build_decoder(&code, DecoderMode::Random { t: 1 }).unwrap();
    let ef = entanglement_fidelity(&table, &ch, Strategy::Exact).unwrap().ef_lower;
    let mut stab_extra = 0.0;
    for e in common::all_vectors(5).filter(|e| e.weight() > 1) {
        let rec = table.recovery(table.keys().syndrome_of(table.keys().key(&e)) as u64).unwrap();
        if code.contains(&e.add(rec)) {
            stab_extra += error_prob(&e, &ch);
        }
    }
    let want = (1.0 - p).powi(5) + 5.0 * p * (1.0 - p).powi(4) + stab_extra;
    assert!((ef - want).abs() < 1e-14);
}

#[test]
fn noiseless_channel_is_perfect() {
    let code = registry_code("13_1");
    let table = build_decoder(&code, DecoderMode::Combined { t: 2, l: 3 }).unwrap();
    let ch = ChannelModel::new(0.0, 0.3).unwrap();
    for s in [Strategy::Exact, Strategy::Transfer, Strategy::Truncated { w_max: 2 }] {
        assert_eq!(entanglement_fidelity(&table, &ch, s).unwrap().ef_lower, 1.0);
    }
}

#[test]
fn strategies_agree_and_brackets_hold() {
    let code = registry_code("13_1");
    for mode in [DecoderMode::Random { t: 2 }, DecoderMode::Combined { t: 2, l: 3 }] {
        let table = build_decoder(&code, mode).unwrap();
        for (p, mu) in [(0.03, 0.0), (0.03, 0.7), (1e-3, 0.5), (0.1, 1.0)] {
            let ch = ChannelModel::new(p, mu).unwrap();
            let exact = entanglement_fidelity(&table, &ch, Strategy::Exact).unwrap();
            let transfer = entanglement_fidelity(&table, &ch, Strategy::Transfer).unwrap();
            assert!((exact.ef_lower - transfer.ef_lower).abs() < 1e-12);
            for w in [2, 4] {
                let t = entanglement_fidelity(&table, &ch, Strategy::Truncated { w_max: w }).unwrap();
                assert!(t.ef_lower <= exact.ef_lower + 1e-12);
                assert!(exact.ef_lower <= t.upper() + 1e-12);
            }
        }
    }
}

#[test]
fn exact_strategy_respects_its_limit() {
    let code = registry_code("17_1a");
    let table = build_decoder(&code, DecoderMode::Random { t: 3 }).unwrap();
    let ch = ChannelModel::new(0.01, 0.5).unwrap();
    assert!(entanglement_fidelity(&table, &ch, Strategy::Exact).is_err());
    assert!(entanglement_fidelity(&table, &ch, Strategy::Transfer).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn combined_never_loses_to_random(p in 0.0f64..0.3, mu in 0.0f64..=1.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = common::random_code(7, 5, &mut rng);
        let ch = ChannelModel::new(p, mu).unwrap();
        let r = build_decoder(&code, DecoderMode::Random { t: 1 }).unwrap();
        let c = build_decoder(&code, DecoderMode::Combined { t: 1, l: 2 }).unwrap();
        let er = entanglement_fidelity(&r, &ch, Strategy::Exact).unwrap().ef_lower;
        let ec = entanglement_fidelity(&c, &ch, Strategy::Exact).unwrap().ef_lower;
        prop_assert!(ec >= er - 1e-15);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&er));
    }
}

#[test]
fn sweep_csv_round_trips_in_order() {
    let codes = vec![SweepCode {
        id: "5_1".into(),
        code: five_qubit(),
        decoders: vec![DecoderMode::Random { t: 1 }, DecoderMode::Burst { l: 2 }],
        strategy: Strategy::Exact,
    }];
    let rows = sweep(&codes, &[0.01, 0.1], &[0.0, 0.5, 1.0]).unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0].decoder, "random-t1");
    assert_eq!((rows[1].p, rows[1].mu), (0.01, 0.5));
    let text = sweep_to_csv(&rows);
    let back = sweep_from_csv(&text).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in back.iter().zip(&rows) {
        assert!((a.ef_lower - b.ef_lower).abs() <= 1e-11 * b.ef_lower.abs().max(1e-300));
        assert_eq!((a.p, a.mu, a.exact), (b.p, b.mu, b.exact));
    }
    assert_eq!(sweep_to_csv(&back), text);
}
