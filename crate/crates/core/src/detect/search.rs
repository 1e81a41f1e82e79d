//! Multi-start maximization of the concurrence of a rank-2 2x4 state over
//! the seven real parameters of [`CartanParams`].

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::concurrence::ReducedConcurrenceData;
use crate::error::{Error, Result};
use crate::matops::{C64, ZERO};
use crate::registry::Registry;
use crate::rng;
use crate::states::RankTwoState;
use crate::symmetries::CartanParams;
use crate::tol;

pub const PARAMS: usize = 7;
pub type Point = [f64; PARAMS];

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    pub optimizer: String,
    /// Objective evaluations allowed per start.
    pub max_evals: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0xC0FFEE,
            optimizer: "nelder-mead".into(),
            max_evals: 1200,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: f64,
    pub params: CartanParams,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct LocalOptimum {
    pub x: Point,
    pub value: f64,
    pub evaluations: usize,
}

/// Local maximizer of a function of [`PARAMS`] reals.
pub trait Optimizer: Send + Sync {
    fn maximize(
        &self,
        f: &(dyn Fn(&Point) -> f64 + Sync),
        start: Point,
        seed: u64,
        max_evals: usize,
    ) -> LocalOptimum;
}

pub fn optimizer_registry() -> Registry<dyn Optimizer> {
    Registry::<dyn Optimizer>::new("optimizer")
        .with("nelder-mead", Box::new(NelderMead::default()))
        .with("random", Box::new(RandomAscent))
}

/// Concurrence of a fixed rank-2 state as a function of `(A, b, t)`.
pub struct ConcurrenceObjective {
    lambda: f64,
    /// `(u, v)` halves of `psi1` and `psi2`: `psi = e1 (x) u + e2 (x) v`.
    halves: [([C64; 4], [C64; 4]); 2],
}

impl ConcurrenceObjective {
    pub fn new(s: &RankTwoState) -> Result<Self> {
        if s.dims() != (2, 4) {
            return Err(Error::UnsupportedShape {
                n_a: s.dims().0,
                n_b: s.dims().1,
            });
        }
        let split = |psi: &crate::matops::CVector| {
            let mut u = [ZERO; 4];
            let mut v = [ZERO; 4];
            for k in 0..4 {
                u[k] = psi[k];
                v[k] = psi[4 + k];
            }
            (u, v)
        };
        Ok(Self {
            lambda: s.lambda(),
            halves: [split(s.psi1()), split(s.psi2())],
        })
    }

    pub fn data(&self, x: &Point) -> ReducedConcurrenceData {
        let w = skew_factor(x);
        let pair = |i: usize, j: usize| {
            let (ui, vi) = &self.halves[i];
            let (uj, vj) = &self.halves[j];
            // <psi_i| (J2 (x) W) |psi_j-bar> = u_i^dag W v_j-bar - v_i^dag W u_j-bar
            let mut acc = ZERO;
            for r in 0..4 {
                let mut wv = ZERO;
                let mut wu = ZERO;
                for c in 0..4 {
                    wv += w[r][c] * vj[c].conj();
                    wu += w[r][c] * uj[c].conj();
                }
                acc += ui[r].conj() * wv - vi[r].conj() * wu;
            }
            acc
        };
        ReducedConcurrenceData::new(pair(0, 0), pair(0, 1), pair(1, 1), self.lambda)
    }

    pub fn value(&self, x: &Point) -> f64 {
        self.data(x).concurrence()
    }
}

/// `W` with `M = J2 (x) W`, from the parameter vector layout of
/// [`CartanParams::from_vector`]. Uses `G J4 = [[-b J2, A0], [-A0^T, b-bar J2]]`
/// and `eta = |G|_F`.
pub(crate) fn skew_factor(x: &Point) -> [[C64; 4]; 4] {
    let a = [
        [C64::new(0.0, x[0]), C64::new(x[1], x[2])],
        [C64::new(-x[1], x[2]), C64::new(0.0, x[3])],
    ];
    let half_trace = (a[0][0] + a[1][1]) * 0.5;
    let a0 = [
        [a[0][0] - half_trace, a[0][1]],
        [a[1][0], a[1][1] - half_trace],
    ];
    let b = C64::new(x[4], x[5]);
    let t = x[6];
    let norm_a0: f64 = a0.iter().flatten().map(|z| z.norm_sqr()).sum();
    let eta = (2.0 * norm_a0 + 4.0 * b.norm_sqr()).sqrt();
    let (c, s) = if eta <= tol::ETA_ZERO {
        (1.0, 0.0)
    } else {
        ((eta * t).cos(), (eta * t).sin() / eta)
    };
    let phase = (half_trace * 2.0 * t).exp();

    let mut w = [[ZERO; 4]; 4];
    let sb = b * (2.0 * s);
    let sbc = b.conj() * (2.0 * s);
    // -2 s b J2 and 2 s b-bar J2 on the diagonal blocks
    w[0][1] = -sb;
    w[1][0] = sb;
    w[2][3] = sbc;
    w[3][2] = -sbc;
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { C64::from(c) } else { ZERO };
            w[i][2 + j] = id + a0[i][j] * (2.0 * s);
            w[2 + i][j] = -(id + a0[j][i] * (2.0 * s));
        }
    }
    for row in w.iter_mut() {
        for z in row.iter_mut() {
            *z *= phase;
        }
    }
    w
}

/// Adaptive Nelder-Mead simplex search (parameters scaled with dimension).
#[derive(Clone, Debug)]
pub struct NelderMead {
    pub initial_step: f64,
    pub f_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            f_tol: 1e-12,
        }
    }
}

impl Optimizer for NelderMead {
    fn maximize(
        &self,
        f: &(dyn Fn(&Point) -> f64 + Sync),
        start: Point,
        _seed: u64,
        max_evals: usize,
    ) -> LocalOptimum {
        let n = PARAMS as f64;
        let (reflect, expand) = (1.0, 1.0 + 2.0 / n);
        let (contract, shrink) = (0.75 - 0.5 / n, 1.0 - 1.0 / n);
        // minimize g = -f; NaN counts as worst
        let g = |x: &Point| {
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                -v
            }
        };
        let evals = std::cell::Cell::new(0usize);
        let eval = |x: &Point| {
            evals.set(evals.get() + 1);
            g(x)
        };

        let mut simplex: Vec<(Point, f64)> = Vec::with_capacity(PARAMS + 1);
        simplex.push((start, eval(&start)));
        for k in 0..PARAMS {
            let mut x = start;
            x[k] += self.initial_step;
            simplex.push((x, eval(&x)));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[PARAMS].1;
            if evals.get() >= max_evals || (worst - best).abs() <= self.f_tol * (1.0 + best.abs()) {
                break;
            }
            let mut centroid = [0.0; PARAMS];
            for (x, _) in &simplex[..PARAMS] {
                for k in 0..PARAMS {
                    centroid[k] += x[k] / n;
                }
            }
            let toward = |coef: f64| {
                let mut y = [0.0; PARAMS];
                for k in 0..PARAMS {
                    y[k] = centroid[k] + coef * (centroid[k] - simplex[PARAMS].0[k]);
                }
                y
            };
            let xr = toward(reflect);
            let fr = eval(&xr);
            let second_worst = simplex[PARAMS - 1].1;
            if fr < best {
                let xe = toward(expand);
                let fe = eval(&xe);
                simplex[PARAMS] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_worst {
                simplex[PARAMS] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst {
                let xc = toward(contract * reflect);
                (xc, eval(&xc))
            } else {
                let xc = toward(-contract);
                (xc, eval(&xc))
            };
            if fc < fr.min(worst) {
                simplex[PARAMS] = (xc, fc);
                continue;
            }
            let anchor = simplex[0].0;
            for (x, fx) in simplex.iter_mut().skip(1) {
                for k in 0..PARAMS {
                    x[k] = anchor[k] + shrink * (x[k] - anchor[k]);
                }
                *fx = eval(x);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        LocalOptimum {
            x: simplex[0].0,
            value: -simplex[0].1,
            evaluations: evals.get(),
        }
    }
}

/// Gaussian-step hill climbing with a success-driven step size.
#[derive(Clone, Copy, Debug)]
pub struct RandomAscent;

impl Optimizer for RandomAscent {
    fn maximize(
        &self,
        f: &(dyn Fn(&Point) -> f64 + Sync),
        start: Point,
        seed: u64,
        max_evals: usize,
    ) -> LocalOptimum {
        let mut r = rng::seeded(seed);
        let mut x = start;
        let mut fx = f(&x);
        let mut sigma = 0.5;
        let mut evals = 1;
        while evals < max_evals && sigma > 1e-9 {
            let mut y = x;
            for v in y.iter_mut() {
                let step: f64 = r.sample(StandardNormal);
                *v += sigma * step;
            }
            let fy = f(&y);
            evals += 1;
            if fy > fx {
                x = y;
                fx = fy;
                sigma *= 1.5;
            } else {
                sigma *= 0.9;
            }
        }
        LocalOptimum {
            x,
            value: fx,
            evaluations: evals,
        }
    }
}

/// `A = 0`, `b = 1` (so `eta = 2`) and `t = pi / (2 eta)`.
pub fn deterministic_start() -> Point {
    [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, std::f64::consts::FRAC_PI_4]
}

/// Best of one deterministic and `restarts` seeded local searches; see
/// [`max_concurrence_search_with`].
pub fn max_concurrence_search(s: &RankTwoState, restarts: usize, seed: u64) -> Result<SearchResult> {
    max_concurrence_search_with(
        s,
        &SearchConfig {
            restarts,
            seed,
            ..SearchConfig::default()
        },
    )
}

/// Starts are searched in parallel and merged by value, ties going to the
/// lexicographically smaller parameter vector, so the result depends only
/// on the configuration.
pub fn max_concurrence_search_with(s: &RankTwoState, cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let registry = optimizer_registry();
    let optimizer = registry.get(&cfg.optimizer)?;
    let objective = ConcurrenceObjective::new(s)?;
    let f = |x: &Point| objective.value(x);

    let results: Vec<LocalOptimum> = (0..=cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let sub_seed = rng::derive_seed(cfg.seed, k as u64);
            let start = if k == 0 {
                deterministic_start()
            } else {
                CartanParams::random(&mut rng::seeded(sub_seed)).to_vector()
            };
            let local = optimizer.maximize(&f, start, sub_seed, cfg.max_evals);
            log::debug!("start {k}: concurrence {:e} after {} evaluations", local.value, local.evaluations);
            local
        })
        .collect();

    let evaluations = results.iter().map(|r| r.evaluations).sum();
    let best = results
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .expect("at least one start");
    log::info!(
        "concurrence search: best {:e} over {} starts ({evaluations} evaluations)",
        best.value,
        cfg.restarts + 1
    );
    Ok(SearchResult {
        value: best.value,
        params: CartanParams::from_vector(&best.x),
        evaluations,
    })
}

fn better(a: &LocalOptimum, b: &LocalOptimum) -> bool {
    match a.value.total_cmp(&b.value) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            for (x, y) in a.x.iter().zip(&b.x) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            false
        }
    }
}
