use lnc_eval::{TermOutcome, Value};
use lnc_languages::{make_std, Tag};
use lnc_strategies::brute::{denotation, enumerate_max, synth_brute_force_term, LENGTH_CONSTANT};

#[test]
fn phi_length_is_linear() {
    let nt = make_std(&Tag::Nt).unwrap();
    let mut worst: f64 = 0.0;
    for n in [4, 8, 16, 32, 64] {
        let phi = synth_brute_force_term(&nt, n).unwrap();
        let ratio = phi.length() as f64 / n as f64;
        println!("n={n} length={} ratio={ratio:.2}", phi.length());
        worst = worst.max(ratio);
    }
    println!("fitted C = {worst:.2}");
    assert!(worst <= LENGTH_CONSTANT);
}

#[test]
fn denotation_matches_oracle_on_finite_micro_instances() {
    // FIN(3) at n = 3 needs 3^6 prefix assignments per `sat` check; out of desk budget.
    for (k, max_n) in [(2, 3), (3, 2)] {
        let fin = make_std(&Tag::Fin(k)).unwrap();
        for n in 0..=max_n {
            let oracle = enumerate_max(&fin, n, 10_000);
            let phi = synth_brute_force_term(&fin, n).unwrap();
            let got = denotation(&fin, &phi, 20_000_000);
            println!("fin{k} n={n}: oracle {:?} via {:?}, denotation {got:?}", oracle.value, oracle.witness.as_ref().map(lnc_syntax::print));
            assert_eq!(got, TermOutcome::Value(oracle.score()), "fin{k} n={n}");
        }
    }
}

#[test]
fn short_bound_gives_vacuous_zero() {
    let fin = make_std(&Tag::Fin(3)).unwrap();
    let oracle = enumerate_max(&fin, 0, 1000);
    assert_eq!(oracle.value, None);
    assert_eq!(oracle.score(), Value::Nat(0));
}

#[test]
fn oracle_is_monotone() {
    let g = make_std(&Tag::Gnt).unwrap();
    let scores: Vec<Value> = (1..=5).map(|n| enumerate_max(&g, n, 10_000).score()).collect();
    println!("{scores:?}");
    assert!(scores.windows(2).all(|w| lnc_eval::value::compare(&w[0], &w[1]) != Some(std::cmp::Ordering::Greater)));
}
