use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Approximant;
use crate::algebra::{ser_rat, ser_rat_vec};
use crate::cell::bfs;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ReturnProbs {
    /// `p^(n)(o, o)` for `n = 0..=n_max`.
    #[serde(serialize_with = "ser_rat_vec")]
    pub probs: Vec<BigRational>,
    /// Some `n` exceeds the safe horizon, so the values describe the
    /// approximant and not necessarily the infinite graph.
    pub approximant_only: bool,
}

/// Exact return probabilities by propagating integer walk weights over a
/// common denominator `L^t`, `L` the lcm of the degrees involved. Only the
/// ball of radius `n_max / 2` around the origin can carry a returning walk.
pub fn exact_return_probs(a: &Approximant, n_max: usize) -> ReturnProbs {
    let radius = n_max / 2;
    let dist = bfs(&a.adjacency, a.origin, |_| true);
    let ball: Vec<usize> = (0..a.n()).filter(|&v| dist[v] <= radius).collect();
    let mut index = vec![usize::MAX; a.n()];
    for (i, &v) in ball.iter().enumerate() {
        index[v] = i;
    }
    let l = ball.iter().fold(1usize, |acc, &v| acc.lcm(&a.degree(v).max(1)));
    let shares: Vec<BigInt> = ball.iter().map(|&v| BigInt::from(l / a.degree(v).max(1))).collect();
    let big_l = BigInt::from(l);

    let mut weights = vec![BigInt::zero(); ball.len()];
    weights[index[a.origin]] = BigInt::one();
    let mut denom = BigInt::one();
    let mut probs = vec![BigRational::one()];
    for t in 1..=n_max {
        let mut next = vec![BigInt::zero(); ball.len()];
        for (i, &v) in ball.iter().enumerate() {
            if weights[i].is_zero() {
                continue;
            }
            let w = &weights[i] * &shares[i];
            for &u in &a.adjacency[v] {
                // u must be able to get back within the remaining steps
                if dist[u] <= n_max - t {
                    next[index[u]] += &w;
                }
            }
        }
        weights = next;
        denom *= &big_l;
        probs.push(BigRational::new(weights[index[a.origin]].clone(), denom.clone()));
    }
    ReturnProbs { probs, approximant_only: n_max > a.safe_horizon }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkStats {
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
    #[serde(serialize_with = "ser_rat")]
    pub estimate: BigRational,
    pub std_err: f64,
    pub seed: u64,
    pub workers: usize,
    pub approximant_only: bool,
}

/// Estimates `p^(n)(o, o)` from `trials` independent walks. Worker `i` draws
/// from the ChaCha8 stream `i` of `seed`, so results depend only on
/// `(seed, trials, workers)`.
pub fn monte_carlo(a: &Approximant, n: usize, trials: u64, seed: u64, workers: usize) -> Result<WalkStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let workers = workers.max(1);
    let share = |w: usize| trials / workers as u64 + u64::from((w as u64) < trials % workers as u64);
    let hits: u64 = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(w as u64);
                    (0..share(w)).filter(|_| walk_returns(a, n, &mut rng)).count() as u64
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("walker thread panicked")).sum()
    });
    let p = hits as f64 / trials as f64;
    Ok(WalkStats {
        n,
        trials,
        hits,
        estimate: BigRational::new(BigInt::from(hits), BigInt::from(trials)),
        std_err: (p * (1.0 - p) / trials as f64).sqrt(),
        seed,
        workers,
        approximant_only: n > a.safe_horizon,
    })
}

fn walk_returns(a: &Approximant, n: usize, rng: &mut ChaCha8Rng) -> bool {
    let mut v = a.origin;
    for _ in 0..n {
        let nb = &a.adjacency[v];
        v = nb[rng.gen_range(0..nb.len())];
    }
    v == a.origin
}
