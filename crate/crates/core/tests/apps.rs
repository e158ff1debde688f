use bdmp::apps::{
    fold_with, led_search_oracle, led_solver, nussinov_oracle, ops_with, osg_search_oracle, osg_solver, rna_solver,
    EditModel, RnaAlphabet,
};
use bdmp::bundled;
use bdmp::grammar::{bd_width_exhaustive, to_cnf, ScoredGrammar};
use bdmp::parser::{parse_score, Engine, ParserConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dyck() -> ScoredGrammar {
    to_cnf(&bundled::grammar("dyck").unwrap()).unwrap()
}

fn random_string(rng: &mut ChaCha8Rng, k: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

#[test]
fn led_is_zero_exactly_on_members() {
    for name in ["dyck", "anbn", "palindrome", "ambiguous"] {
        let g = to_cnf(&bundled::grammar(name).unwrap()).unwrap();
        let solver = led_solver(&g, EditModel::INDEL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let sigma = random_string(&mut rng, g.terminal_count(), 8);
            let member = parse_score(&g, &sigma, Engine::Cyk, &ParserConfig::with_w(0)).unwrap().is_finite();
            let d = solver.score(&sigma, Engine::Valiant).unwrap();
            assert_eq!(d.value() == Some(0), member, "{name} {sigma:?}");
        }
    }
}

#[test]
fn led_matches_edit_search() {
    let g = dyck();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for model in [EditModel::INDEL, EditModel::FULL] {
        let solver = led_solver(&g, model).unwrap();
        for _ in 0..40 {
            let sigma = random_string(&mut rng, 2, 6);
            let d = solver.score(&sigma, Engine::Valiant).unwrap().value().map(|v| v as u64);
            assert_eq!(d, led_search_oracle(&g, &sigma, model, 6).unwrap(), "{sigma:?} {model:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Turning σ′ into σ costs at most the length difference plus the
    /// mismatches of the common prefix, so distances compose.
    #[test]
    fn led_edits_compose(seed: u64) {
        let g = dyck();
        let solver = led_solver(&g, EditModel::FULL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = random_string(&mut rng, 2, 10);
        let s2 = random_string(&mut rng, 2, 10);
        let common = s1.len().min(s2.len());
        let edit = (s1.len().max(s2.len()) - common) + (0..common).filter(|&i| s1[i] != s2[i]).count();
        let d1 = solver.score(&s1, Engine::Valiant).unwrap().value().unwrap();
        let d2 = solver.score(&s2, Engine::Valiant).unwrap().value().unwrap();
        prop_assert!(d1 <= d2 + edit as i64);
    }

    #[test]
    fn rna_distance_is_length_minus_twice_the_pairs(seed: u64) {
        let alpha = RnaAlphabet::new(&["a", "b"]).unwrap();
        let solver = rna_solver(&alpha).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_string(&mut rng, 4, 12);
        let (d, pairs) = fold_with(&solver, &sigma, &alpha, Engine::Valiant).unwrap();
        let want = nussinov_oracle(&sigma, &alpha);
        prop_assert_eq!(pairs, want);
        prop_assert_eq!(d, sigma.len() as u64 - 2 * want);
    }
}

#[test]
fn osg_matches_search_up_to_length_four() {
    for k in 1..=3usize {
        let names: Vec<String> = (0..k).map(|c| ((b'A' + c as u8) as char).to_string()).collect();
        let solver = osg_solver(&names).unwrap();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=4 {
            for sigma in &layer {
                let want = osg_search_oracle(sigma, k, None).unwrap();
                assert_eq!(ops_with(&solver, sigma, Engine::Valiant).unwrap(), want, "{sigma:?}");
            }
            layer = layer
                .iter()
                .flat_map(|s| (0..k).map(move |c| [s.clone(), vec![c]].concat()))
                .collect();
        }
    }
}

#[test]
fn osg_bccab() {
    let solver = osg_solver(&["A", "B", "C"]).unwrap();
    let sigma = solver.grammar.tokenize("BCCAB").unwrap();
    let oracle = osg_search_oracle(&[1, 2, 2, 0, 1], 3, None).unwrap();
    assert_eq!(oracle, 11);
    for engine in [Engine::Cyk, Engine::Valiant] {
        assert_eq!(ops_with(&solver, &sigma, engine).unwrap(), 11);
    }
}

#[test]
fn converted_application_grammars_have_small_width() {
    let led = led_solver(&dyck(), EditModel::FULL).unwrap();
    assert!(bd_width_exhaustive(&led.grammar, 4).unwrap() <= 1);
    let osg = osg_solver(&["A", "B"]).unwrap();
    assert!(bd_width_exhaustive(&osg.grammar, 4).unwrap() <= 5);
}

#[test]
fn led_and_osg_parses_never_fall_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let led = led_solver(&dyck(), EditModel::FULL).unwrap();
    let osg = osg_solver(&["A", "B", "C"]).unwrap();
    for _ in 0..20 {
        let sigma = random_string(&mut rng, 2, 16);
        if sigma.is_empty() {
            continue;
        }
        let (_, stats) = led.score_with(&sigma, Engine::Valiant, &ParserConfig::with_w(led.w)).unwrap();
        assert_eq!(stats.fallbacks, 0, "led {sigma:?}");
        let sigma: Vec<usize> = sigma.iter().map(|_| rng.gen_range(0..3)).collect();
        let (_, stats) = osg.score_with(&sigma, Engine::Valiant, &ParserConfig::with_w(osg.w)).unwrap();
        assert_eq!(stats.fallbacks, 0, "osg {sigma:?}");
        assert!(stats.bd_products > 0 || sigma.len() < 2);
    }
}
