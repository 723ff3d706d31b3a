use num_bigint::BigInt;
use num_rational::BigRational;
use tandem_walks::classify::{family, search_triples, FamilySpec};
use tandem_walks::enumerate::{
    count_ballot_3d, count_excursions, empirical_period, EnumerateOptions, Mode,
};
use tandem_walks::exponent::{exponent_report, Rationality};
use tandem_walks::fit::{estimate_alpha, FitOptions};
use tandem_walks::guess::{guess_recurrence, verify_recurrence};
use tandem_walks::model::{BallotModel, TandemModel};

fn rationals(e: &[num_bigint::BigUint]) -> Vec<BigRational> {
    e.iter()
        .map(|v| BigRational::from_integer(BigInt::from(v.clone())))
        .collect()
}

#[test]
fn ballot_rounds_equal_tandem_excursions() {
    for [a, b, c] in [[1, 1, 1], [2, 1, 1], [1, 2, 3], [3, 2, 1]] {
        let ballot = BallotModel::new(a, b, c).unwrap();
        let tandem = ballot.to_tandem();
        let p = tandem.period() as usize;
        let rounds = 4;
        let direct = count_ballot_3d(&ballot, rounds, &EnumerateOptions::default()).unwrap();
        let e = count_excursions(&tandem.step_set(), p * rounds, Mode::Exact).unwrap();
        let e = e.as_exact().unwrap();
        let by_round: Vec<_> = (0..=rounds).map(|n| e[n * p].clone()).collect();
        assert_eq!(
            direct.as_exact().unwrap(),
            by_round.as_slice(),
            "{ballot:?}"
        );
        assert_eq!(
            empirical_period(
                &count_excursions(&tandem.step_set(), p * rounds, Mode::Exact).unwrap()
            ),
            Ok(p as u64)
        );
    }
}

#[test]
fn excursions_of_111_satisfy_a_guessed_recurrence() {
    let m = TandemModel::new(1, 1, 1).unwrap();
    let e = count_excursions(&m.step_set(), 3 * 40, Mode::Exact).unwrap();
    let e = e.as_exact().unwrap();
    let by_round: Vec<_> = (0..=40).map(|n| e[3 * n].clone()).collect();
    let terms = rationals(&by_round);
    let outcome = guess_recurrence(&terms, 2, 3).unwrap();
    let rec = outcome.recurrence.expect("a recurrence is found");
    assert_eq!(rec.order(), 1);
    assert!(verify_recurrence(&rec, &terms));
}

#[test]
fn fitted_exponent_matches_closed_form_on_a_family_member() {
    let spec = FamilySpec::ALL[0];
    let m = family(spec, 3).unwrap();
    assert!(search_triples(&spec.target_rational(), 10).contains(&m));
    let report = exponent_report(&m).unwrap();
    assert_eq!(report.rationality, Rationality::Rational(spec.alpha()));

    let small = TandemModel::new(1, 1, 1).unwrap();
    let e = count_excursions(&small.step_set(), 3 * 200, Mode::LogFloat).unwrap();
    let fit = estimate_alpha(&e, 3, &FitOptions::default()).unwrap();
    assert!((fit.alpha_final + 4.0).abs() < 1e-2, "{}", fit.alpha_final);
    assert!((fit.mu_final - exponent_report(&small).unwrap().mu).abs() < 1e-3);
}
