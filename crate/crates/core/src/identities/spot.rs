use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::catalog::{inv_q_pochhammer, params_x, rogers_szego_spec};
use super::theorems::sides;
use super::{IdentityError, IdentityId};
use crate::arith::{ParamPoly, Rational};
use crate::engine::{compute_a, compute_h, solve_recurrence, Summation};
use crate::qtoolkit::rogers_szego;
use crate::series::QSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotFailure {
    pub assignment: String,
    pub q_exp: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Result of evaluating both sides of an identity at random rational
/// values of its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheckReport {
    pub id: IdentityId,
    pub n: usize,
    pub qorder: usize,
    pub samples: usize,
    pub pass: bool,
    pub failure: Option<SpotFailure>,
}

/// A rational with denominator at most 7 and absolute value at most 3.
fn random_rational(rng: &mut impl Rng) -> Rational {
    let denom: i64 = rng.gen_range(1..=7);
    let numer: i64 = rng.gen_range(-3 * denom..=3 * denom);
    Rational::new(numer, denom).expect("nonzero denominator")
}

/// Evaluates every `q`-coefficient of both sides of `T3` (in `a`) or `T4`
/// (in `x`, generating-function kernel) at `samples` random rationals.
pub fn spot_check(
    id: IdentityId,
    n: usize,
    qorder: usize,
    seed: u64,
    samples: usize,
) -> Result<SpotCheckReport, IdentityError> {
    let (lhs, rhs) = sides(id, n, qorder)?;
    let name = lhs.params().names()[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    'samples: for _ in 0..samples {
        let value = random_rational(&mut rng);
        let assignment: BTreeMap<String, Rational> = [(name.clone(), value.clone())].into();
        for (k, (l, r)) in lhs.coeffs().iter().zip(rhs.coeffs()).enumerate() {
            let lv = l.eval(&assignment).expect("single parameter assigned");
            let rv = r.eval(&assignment).expect("single parameter assigned");
            if lv != rv {
                failure = Some(SpotFailure {
                    assignment: format!("{name} = {value}"),
                    q_exp: k,
                    lhs: lv.to_string(),
                    rhs: rv.to_string(),
                });
                break 'samples;
            }
        }
    }
    Ok(SpotCheckReport {
        id,
        n,
        qorder,
        samples,
        pass: failure.is_none(),
        failure,
    })
}

/// Which `h(m)` reproduces `H_n(x)/(q)_n`: the one the engine derives from
/// `1/((t)_inf (xt)_inf)`, or the printed `2/(1-q^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RogersSzegoAnalysis {
    pub n_max: usize,
    pub qorder: usize,
    /// `compute_h` equals `(1+x^m)/(1-q^m)` for every `m <= n_max`.
    pub engine_h_is_one_plus_x_power: bool,
    /// The recurrence on the catalog spec gives `H_n(x)/(q)_n`, `n <= n_max`.
    pub engine_reproduces_closed_form: bool,
    /// The recurrence driven by `2/(1-q^m)` gives `H_n(x)/(q)_n` for symbolic `x`.
    pub printed_h_reproduces_symbolic: bool,
    /// First `n` where the printed kernel goes wrong for symbolic `x`.
    pub printed_h_first_failure: Option<usize>,
    /// The printed kernel reproduces `H_n(1)/(q)_n`.
    pub printed_h_reproduces_at_x_one: bool,
}

impl RogersSzegoAnalysis {
    pub fn summary(&self) -> String {
        let engine = if self.engine_reproduces_closed_form && self.engine_h_is_one_plus_x_power {
            "engine h(m) = (1+x^m)/(1-q^m) reproduces H_n(x)/(q)_n"
        } else {
            "engine h(m) does NOT reproduce H_n(x)/(q)_n"
        };
        let printed = match (
            self.printed_h_reproduces_symbolic,
            self.printed_h_first_failure,
        ) {
            (true, _) => "printed h(m) = 2/(1-q^m) agrees for symbolic x".to_string(),
            (false, Some(n)) => {
                format!("printed h(m) = 2/(1-q^m) disagrees for symbolic x from n = {n}")
            }
            (false, None) => "printed h(m) = 2/(1-q^m) disagrees for symbolic x".to_string(),
        };
        let at_one = if self.printed_h_reproduces_at_x_one {
            "agrees at x = 1"
        } else {
            "disagrees at x = 1"
        };
        format!("{engine}; {printed}; {at_one}")
    }
}

pub fn rogers_szego_analysis(
    n_max: usize,
    qorder: usize,
) -> Result<RogersSzegoAnalysis, IdentityError> {
    let p = params_x();
    let x = ParamPoly::var(&p, "x").expect("declared");
    let spec = rogers_szego_spec();
    let geometric = |m: usize| {
        QSeries::one_minus(ParamPoly::one(&p), m, qorder)
            .invert()
            .expect("constant term 1")
    };

    let closed: Vec<QSeries> = (0..=n_max)
        .map(|n| Ok(&rogers_szego(&p, n, qorder)? * &inv_q_pochhammer(&p, n, qorder)))
        .collect::<Result<_, IdentityError>>()?;

    let mut engine_h_is_one_plus_x_power = true;
    for m in 1..=n_max {
        let expected = geometric(m)
            .scale_poly(&(&ParamPoly::one(&p) + &x.pow(m as u32)))
            .expect("same parameters");
        engine_h_is_one_plus_x_power &= compute_h(&spec, m, qorder)? == expected;
    }
    let engine_reproduces_closed_form = compute_a(&spec, n_max, qorder)? == closed;

    let printed_h: Vec<QSeries> = (1..=n_max)
        .map(|m| geometric(m).scale(&Rational::from(2)))
        .collect();
    let printed = solve_recurrence(&p, qorder, &printed_h, Summation::Ascending)?;
    let printed_h_first_failure = (0..=n_max).find(|&n| printed[n] != closed[n]);

    let at_one: BTreeMap<String, Rational> = [("x".to_string(), Rational::one())].into();
    let specialize = |s: &QSeries| {
        s.try_map_coeffs(|c| c.specialize(&at_one))
            .expect("x declared")
    };
    let printed_h_reproduces_at_x_one = printed
        .iter()
        .zip(&closed)
        .all(|(a, b)| specialize(a) == specialize(b));

    Ok(RogersSzegoAnalysis {
        n_max,
        qorder,
        engine_h_is_one_plus_x_power,
        engine_reproduces_closed_form,
        printed_h_reproduces_symbolic: printed_h_first_failure.is_none(),
        printed_h_first_failure,
        printed_h_reproduces_at_x_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_rationals_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let r = random_rational(&mut rng);
            assert!(r.abs() <= Rational::from(3));
            assert!(r.denom() <= &7.into());
        }
    }

    #[test]
    fn spot_checks_are_deterministic() {
        let a = spot_check(IdentityId::T3, 3, 12, 42, 5).unwrap();
        let b = spot_check(IdentityId::T3, 3, 12, 42, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.pass);
        assert!(matches!(
            spot_check(IdentityId::T1a, 3, 12, 42, 5),
            Err(IdentityError::NoParameter(IdentityId::T1a))
        ));
    }

    #[test]
    fn analysis_small() {
        let r = rogers_szego_analysis(3, 12).unwrap();
        assert!(r.engine_h_is_one_plus_x_power);
        assert!(r.engine_reproduces_closed_form);
        assert!(!r.printed_h_reproduces_symbolic);
        assert_eq!(r.printed_h_first_failure, Some(1));
        assert!(r.printed_h_reproduces_at_x_one);
    }
}
