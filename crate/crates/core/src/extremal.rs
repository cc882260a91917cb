//! The alternating-trail function and its perturbation analysis.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hierarchy::PartitionChain;
use crate::lipschitz::{add_lipschitz_rows, norm, Affine, LipFn};
use crate::lp::{LinearProgram, LpOutcome, Solver};
use crate::rational::Rational;
use crate::space::{FiniteUltraSpace, BASE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeCandidate {
    pub f: LipFn,
    pub q: Rational,
    pub chain: PartitionChain,
}

/// `f(x) = Σ_k (-1)^k d(x_k, x)` along the trail of each point.
pub fn build_extreme(chain: &PartitionChain) -> Result<ExtremeCandidate> {
    let s = chain.space();
    if s.len() < 2 {
        return Err(Error::SinglePoint);
    }
    let values: Vec<Rational> = (0..s.len())
        .map(|x| {
            let t = chain.trail(x);
            let mut v = Rational::zero();
            for (k, d) in t.distances(s).into_iter().enumerate() {
                if k % 2 == 0 {
                    v += d;
                } else {
                    v -= d;
                }
            }
            v
        })
        .collect();
    let f = LipFn::new(values)?;
    let cand = ExtremeCandidate { f, q: chain.q().clone(), chain: chain.clone() };
    if let Some(e) = check_candidate(&cand) {
        return Err(Error::StandingAssumption(e));
    }
    Ok(cand)
}

/// Range, norm and tight-trail checks on a candidate.
pub fn check_candidate(c: &ExtremeCandidate) -> Option<String> {
    let s = c.chain.space();
    for x in 0..s.len() {
        let v = c.f.value(x);
        if v.is_negative() || v > s.d(BASE, x) {
            return Some(format!("f({x}) outside [0, d(0,{x})]"));
        }
        let t = c.chain.trail(x);
        for w in t.points.windows(2) {
            if (c.f.value(w[1]) - c.f.value(w[0])).abs() != *s.d(w[0], w[1]) {
                return Some(format!("trail step ({},{}) is not tight", w[0], w[1]));
            }
        }
    }
    if norm(s, &c.f) != Rational::one() {
        return Some("norm is not one".into());
    }
    None
}

/// The program `{g : g(base) = 0, ‖f + g‖ <= 1 + eps, ‖f - g‖ <= 1 + eps}`
/// over the values of `g` off the base.
pub fn perturbation_program(space: &FiniteUltraSpace, f: &LipFn, eps: &Rational) -> LinearProgram {
    let n = space.len();
    let mut lp = LinearProgram::free(n - 1);
    let var = |x: usize, sign: i64| -> Affine {
        let mut a = Affine::constant(f.value(x).clone());
        if x != BASE {
            a.terms.push((x - 1, Rational::from_integer(sign.into())));
        }
        a
    };
    let all: Vec<usize> = (0..n).collect();
    let bound = Rational::one() + eps;
    for sign in [1, -1] {
        let exprs: Vec<Affine> = (0..n).map(|x| var(x, sign)).collect();
        add_lipschitz_rows(&mut lp, space, &exprs, &all, None, &bound);
    }
    lp
}

/// Largest `|g(x) - g(y)| / d(x,y)` over the program, for every pair,
/// reusing one tableau. Returns the pair maxima and a maximizer per pair.
pub fn pair_maxima(space: &FiniteUltraSpace, f: &LipFn, eps: &Rational) -> Result<Vec<((usize, usize), Rational, LipFn)>> {
    let lp = perturbation_program(space, f, eps);
    let mut solver = Solver::new(&lp).ok_or_else(|| Error::Lp("g = 0 should be feasible".into()))?;
    let mut out = Vec::new();
    for (x, y) in space.pairs() {
        let mut obj = Vec::new();
        if x != BASE {
            obj.push((x - 1, Rational::one()));
        }
        obj.push((y - 1, -Rational::one()));
        let sol = match solver.maximize(&obj) {
            LpOutcome::Optimal(s) => s,
            other => return Err(Error::Lp(format!("pair program ended as {other:?}"))),
        };
        let mut values = vec![Rational::zero()];
        values.extend(sol.x);
        // The feasible set is symmetric under g -> -g, so this is |·|.
        out.push(((x, y), sol.value / space.d(x, y), LipFn::new(values)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationReport {
    pub eps: Rational,
    pub max_g_norm: Rational,
    pub argmax: Option<(usize, usize)>,
    pub bound: Rational,
    pub holds: bool,
    /// Whether `eps <= q²(1-q)/4`.
    pub in_window: bool,
}

/// `2 eps / (q²(1-q))`.
pub fn theoretical_bound(q: &Rational, eps: &Rational) -> Rational {
    Rational::from_integer(2.into()) * eps / (q * q * (Rational::one() - q))
}

pub fn assertion_window(q: &Rational) -> Rational {
    q * q * (Rational::one() - q) / Rational::from_integer(4.into())
}

pub fn perturbation_bound(c: &ExtremeCandidate, eps: &Rational) -> Result<PerturbationReport> {
    if eps.is_negative() {
        return Err(Error::InvalidArgument("eps must be nonnegative".into()));
    }
    let s = c.chain.space();
    let maxima = pair_maxima(s, &c.f, eps)?;
    let mut best = Rational::zero();
    let mut argmax = None;
    for (p, v, _) in maxima {
        if argmax.is_none() || v > best {
            best = v;
            argmax = Some(p);
        }
    }
    let bound = theoretical_bound(&c.q, eps);
    Ok(PerturbationReport {
        eps: eps.clone(),
        holds: best <= bound,
        in_window: *eps <= assertion_window(&c.q),
        max_g_norm: best,
        argmax,
        bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LasqProbe {
    /// `‖g‖ = 1` and `‖f ± g‖ <= 1 + eps`.
    Witness(LipFn),
    /// Every feasible `g` has `‖g‖ <= max_norm < 1`, certified by the
    /// per-pair maxima.
    Infeasible { max_norm: Rational, pair_maxima: Vec<((usize, usize), Rational)> },
}

pub fn lasq_probe(space: &FiniteUltraSpace, f: &LipFn, eps: &Rational) -> Result<LasqProbe> {
    if space.len() < 2 {
        return Err(Error::SinglePoint);
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if norm(space, f) != Rational::one() {
        return Err(Error::NotUnitNorm);
    }
    let maxima = pair_maxima(space, f, eps)?;
    let (mut best, mut best_g) = (Rational::zero(), None);
    for (_, v, g) in &maxima {
        if best_g.is_none() || *v > best {
            best = v.clone();
            best_g = Some(g.clone());
        }
    }
    if best >= Rational::one() {
        // ‖g‖ equals the largest pair maximum; shrinking stays feasible.
        let g = best_g.expect("at least one pair");
        let scaled = g.scaled(&best.recip());
        return Ok(LasqProbe::Witness(scaled));
    }
    Ok(LasqProbe::Infeasible {
        max_norm: best,
        pair_maxima: maxima.into_iter().map(|(p, v, _)| (p, v)).collect(),
    })
}
