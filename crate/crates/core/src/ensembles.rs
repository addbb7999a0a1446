//! Monte Carlo experiments over random networks.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{is_generic, CanonicalComplex};
use crate::error::{Error, Result};
use crate::geometry::{strict_feasible, Affine};
use crate::network::{random_network_with, Activation, Network, Scheme};
use crate::rational::{format_rational, to_f64, Rational};

/// Env var capping the number of worker threads.
pub const THREADS_VAR: &str = "PLMORSE_THREADS";

/// Tolerance in binomial standard deviations.
pub const SIGMAS: f64 = 4.0;

/// How the reference rate is compared with the empirical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    /// The rate should equal the closed form.
    Exact,
    /// The rate should be at least the reference value.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub experiment: String,
    pub architecture: Vec<usize>,
    pub scheme: Scheme,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    pub reference: Rational,
    pub reference_kind: Reference,
}

impl TrialSummary {
    pub fn empirical_rate(&self) -> Rational {
        Rational::new(BigInt::from(self.successes), BigInt::from(self.trials))
    }

    /// Binomial standard deviation of the rate under the reference probability.
    pub fn sigma(&self) -> f64 {
        let p = to_f64(&self.reference);
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Wilson score interval at [`SIGMAS`] standard deviations.
    pub fn wilson_bounds(&self) -> (f64, f64) {
        let n = self.trials as f64;
        let p = self.successes as f64 / n;
        let z2 = SIGMAS * SIGMAS;
        let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
        let half = SIGMAS / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        ((center - half).max(0.0), (center + half).min(1.0))
    }

    /// Whether the rate is within [`SIGMAS`] standard deviations of the
    /// reference (one-sided for lower bounds). A degenerate reference of 0 or 1
    /// demands exact agreement.
    pub fn within_tolerance(&self) -> bool {
        let rate = to_f64(&self.empirical_rate());
        let p = to_f64(&self.reference);
        let slack = SIGMAS * self.sigma();
        match self.reference_kind {
            Reference::Exact => {
                if self.reference.is_zero() || self.reference.is_one() {
                    self.empirical_rate() == self.reference
                } else {
                    (rate - p).abs() <= slack
                }
            }
            Reference::LowerBound => rate >= p - slack,
        }
    }

    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.wilson_bounds();
        json!({
            "experiment": self.experiment,
            "architecture": self.architecture,
            "scheme": match self.scheme { Scheme::Gaussian => "gaussian", Scheme::Uniform => "uniform" },
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
            "empirical_rate": format_rational(&self.empirical_rate()),
            "empirical_rate_f64": to_f64(&self.empirical_rate()),
            match self.reference_kind { Reference::Exact => "closed_form", Reference::LowerBound => "lower_bound" }:
                format_rational(&self.reference),
            "sigma": self.sigma(),
            "confidence": { "sigmas": SIGMAS, "lower": lo, "upper": hi },
            "within_tolerance": self.within_tolerance(),
        })
    }
}

/// Probability that a random network with one hidden layer of width `n1` on
/// `R^n` is PL Morse: `sum_{k=n+1}^{n1} C(n1, k) / 2^n1`.
pub fn plmorse_probability_formula(n: usize, n1: usize) -> Rational {
    let num: BigInt = (n + 1..=n1).map(|k| binomial(BigInt::from(n1), BigInt::from(k))).sum();
    Rational::new(num, BigInt::one() << n1)
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| Error::Precondition(e.to_string()))
}

/// Trial `index` draws from its own ChaCha stream, so results do not depend on
/// scheduling.
fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn count<F>(trials: usize, f: F) -> Result<usize>
where
    F: Fn(usize) -> Result<bool> + Sync,
{
    pool()?.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| f(i).map(usize::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    Ok(())
}

/// Draws networks until a generic one appears. Non-generic draws have
/// probability zero up to the dyadic snapping.
fn generic_network(arch: &[usize], rng: &mut ChaCha8Rng, scheme: Scheme) -> Result<Network> {
    loop {
        let net = random_network_with(arch, rng, scheme)?;
        if is_generic(&net) {
            return Ok(net);
        }
    }
}

/// Whether a network with one hidden layer has an empty all-negative region.
fn all_minus_empty(net: &Network) -> bool {
    let layer = &net.layers()[0];
    let forms: Vec<Affine> = (0..layer.output_dim()).map(|i| layer.neuron(i)).collect();
    !strict_feasible(&forms)
}

pub fn montecarlo_plmorse(n: usize, n1: usize, trials: usize, seed: u64) -> Result<TrialSummary> {
    montecarlo_plmorse_with(n, n1, trials, seed, Scheme::Gaussian)
}

/// Fraction of random generic `(n, n1, 1)` networks that are PL Morse.
pub fn montecarlo_plmorse_with(n: usize, n1: usize, trials: usize, seed: u64, scheme: Scheme) -> Result<TrialSummary> {
    check_trials(trials)?;
    if n == 0 || n1 == 0 {
        return Err(Error::Precondition("input and hidden widths must be positive".into()));
    }
    let arch = vec![n, n1, 1];
    let successes = count(trials, |i| {
        let mut rng = trial_rng(seed, i);
        Ok(all_minus_empty(&generic_network(&arch, &mut rng, scheme)?))
    })?;
    Ok(TrialSummary {
        experiment: "plmorse".into(),
        architecture: arch,
        scheme,
        trials,
        seed,
        successes,
        reference: plmorse_probability_formula(n, n1),
        reference_kind: Reference::Exact,
    })
}

/// `F` restricted to the open region with the given activation pattern.
fn region_map(net: &Network, pattern: &[Vec<bool>]) -> Affine {
    let n = net.input_dim();
    let mut current: Vec<Affine> = (0..n).map(|i| Affine::coordinate(n, i)).collect();
    for (li, layer) in net.layers().iter().enumerate() {
        current = (0..layer.output_dim())
            .map(|j| {
                if layer.activation == Activation::Relu && !pattern[li][j] {
                    return Affine::zero(n);
                }
                let mut form = Affine::constant(n, layer.bias[j].clone());
                for (w, f) in layer.weights[j].iter().zip(&current) {
                    if !w.is_zero() {
                        form = form.add(&f.scaled(w));
                    }
                }
                form
            })
            .collect();
    }
    current.pop().expect("output layer has one neuron")
}

/// Whether `F` is constant on the smallest cell of the canonical complex
/// containing `x`.
pub fn is_flat_at(net: &Network, x: &[Rational]) -> Result<bool> {
    let eval = net.evaluate(x)?;
    if eval.preactivations.iter().flatten().any(|z| z.is_zero()) {
        let cx = CanonicalComplex::build(net);
        return Ok(cx.cell(cx.locate(x)?).flat);
    }
    let pattern: Vec<Vec<bool>> = eval.preactivations.iter().map(|l| l.iter().map(|z| z > &Rational::zero()).collect()).collect();
    Ok(region_map(net, &pattern).is_constant())
}

pub fn montecarlo_flat_cell(arch: &[usize], trials: usize, seed: u64) -> Result<TrialSummary> {
    montecarlo_flat_cell_with(arch, trials, seed, Scheme::Gaussian)
}

/// Fraction of trials in which a random point lies in a flat cell of a random
/// network. The point is drawn from the same scheme as the weights.
pub fn montecarlo_flat_cell_with(arch: &[usize], trials: usize, seed: u64, scheme: Scheme) -> Result<TrialSummary> {
    check_trials(trials)?;
    if arch.len() < 3 {
        return Err(Error::Precondition("architecture needs at least one hidden layer".into()));
    }
    let successes = count(trials, |i| {
        let mut rng = trial_rng(seed, i);
        let net = random_network_with(arch, &mut rng, scheme)?;
        let x: Vec<Rational> = (0..arch[0]).map(|_| scheme.sample(&mut rng)).collect();
        is_flat_at(&net, &x)
    })?;
    let last_hidden = arch[arch.len() - 2];
    Ok(TrialSummary {
        experiment: "flat_cell".into(),
        architecture: arch.to_vec(),
        scheme,
        trials,
        seed,
        successes,
        reference: Rational::new(BigInt::one(), BigInt::one() << last_hidden),
        reference_kind: Reference::LowerBound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vec_of};

    #[test]
    fn formula() {
        assert_eq!(plmorse_probability_formula(1, 3), frac(1, 2));
        assert_eq!(plmorse_probability_formula(2, 3), frac(1, 8));
        assert_eq!(plmorse_probability_formula(2, 5), frac(1, 2));
        assert_eq!(plmorse_probability_formula(3, 2), int(0));
        assert_eq!(plmorse_probability_formula(1, 1), int(0));
    }

    #[test]
    fn deterministic() {
        let a = montecarlo_plmorse(2, 3, 50, 1).unwrap();
        let b = montecarlo_plmorse(2, 3, 50, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        let c = montecarlo_flat_cell(&[2, 3, 1], 50, 9).unwrap();
        assert_eq!(c, montecarlo_flat_cell(&[2, 3, 1], 50, 9).unwrap());
    }

    #[test]
    fn too_few_hidden_units() {
        let s = montecarlo_plmorse(3, 2, 200, 5).unwrap();
        assert_eq!(s.successes, 0);
        assert!(s.within_tolerance());
    }

    #[test]
    fn region_map_matches_evaluation() {
        let net = crate::network::random_network(&[2, 3, 2, 1], 4, Scheme::Gaussian).unwrap();
        for p in [[1, 2], [-3, 1], [0, -2], [5, 5]] {
            let x = vec_of(&p);
            let eval = net.evaluate(&x).unwrap();
            let pattern: Vec<Vec<bool>> =
                eval.preactivations.iter().map(|l| l.iter().map(|z| z > &Rational::zero()).collect()).collect();
            assert_eq!(region_map(&net, &pattern).eval(&x), eval.value);
        }
    }

    #[test]
    fn flat_point_on_n1() {
        let first = crate::network::AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        let net = Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap();
        assert!(is_flat_at(&net, &vec_of(&[-1, -2])).unwrap());
        assert!(!is_flat_at(&net, &vec_of(&[1, -2])).unwrap());
        assert!(is_flat_at(&net, &vec_of(&[0, -2])).unwrap());
        assert!(is_flat_at(&net, &vec_of(&[0, 0])).unwrap());
    }

    #[test]
    fn wilson_contains_rate() {
        let s = montecarlo_flat_cell(&[2, 1, 1], 400, 3).unwrap();
        let (lo, hi) = s.wilson_bounds();
        let r = to_f64(&s.empirical_rate());
        assert!(lo <= r && r <= hi);
    }
}
