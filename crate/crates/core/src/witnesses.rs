//! Depth-bounded evidence on presented spaces: pseudo-Cauchy sequences,
//! nested ball chains, the non-duality bookkeeping and the failure of
//! M-embedding on non-proper spaces.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::dendrogram::Dendrogram;
use crate::lipschitz::{add_lipschitz_rows, free_norm_on_dendrogram, norm, pair, sup_combine, Affine, FreeElement, LipFn};
use crate::lp::{LinearProgram, LpOutcome};
use crate::presented::PresentedSpace;
use crate::rational::Rational;
use crate::retraction::{norming_lift, Enumeration, RetractionFamily};
use crate::space::{FiniteUltraSpace, BASE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoCauchyReport {
    /// Enumeration positions of the sequence.
    pub indices: Vec<usize>,
    /// `d(x_k, x_{k+1})`, strictly decreasing.
    pub gaps: Vec<Rational>,
    /// Positions outside the sequence whose distances to it strictly decrease.
    pub pseudo_limits: Vec<usize>,
    /// Points examined.
    pub depth: usize,
    /// The space has no more points than the depth.
    pub exhausted: bool,
}

fn greedy_from(p: &PresentedSpace, start: usize, depth: usize) -> Vec<usize> {
    let mut seq = vec![start];
    let mut prev: Option<Rational> = None;
    loop {
        let last = *seq.last().expect("nonempty");
        let mut best: Option<(usize, Rational)> = None;
        for j in last + 1..depth {
            let d = p.d(last, j);
            if prev.as_ref().is_some_and(|g| d >= *g) {
                continue;
            }
            if best.as_ref().map_or(true, |(_, b)| d < *b) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) => {
                seq.push(j);
                prev = Some(d);
            }
            None => return seq,
        }
    }
}

/// Whether `x` is a pseudo-limit of `seq`.
pub fn is_pseudo_limit(p: &PresentedSpace, seq: &[usize], x: usize) -> bool {
    let mut prev: Option<Rational> = None;
    for &s in seq {
        let d = p.d(s, x);
        if prev.as_ref().is_some_and(|g| d >= *g) {
            return false;
        }
        prev = Some(d);
    }
    true
}

/// Longest greedy pseudo-Cauchy sequence among the non-base points of the
/// first `depth` points, then a scan of those points for pseudo-limits.
pub fn pseudo_cauchy_search(p: &PresentedSpace, depth: usize) -> Result<PseudoCauchyReport> {
    if depth < 3 {
        return Err(Error::InvalidArgument("depth must be at least 3".into()));
    }
    let depth_used = p.available(depth);
    let mut best: Vec<usize> = Vec::new();
    for start in 1..depth_used {
        if best.len() >= depth_used - start {
            break;
        }
        let seq = greedy_from(p, start, depth_used);
        if seq.len() > best.len() {
            best = seq;
        }
    }
    let gaps = best.windows(2).map(|w| p.d(w[0], w[1])).collect();
    let members: BTreeSet<usize> = best.iter().copied().collect();
    let pseudo_limits = if best.len() >= 2 {
        (0..depth_used).filter(|x| !members.contains(x) && is_pseudo_limit(p, &best, *x)).collect()
    } else {
        Vec::new()
    };
    Ok(PseudoCauchyReport {
        indices: best,
        gaps,
        pseudo_limits,
        depth: depth_used,
        exhausted: p.len().is_some_and(|n| n <= depth),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub gaps: Vec<Rational>,
    /// Extrapolated limit of the gaps from the last three terms.
    pub limit_estimate: Rational,
    /// Gaps stay above a positive rational on the sample, evidence
    /// against the Cauchy property.
    pub bounded_below: bool,
}

/// Consecutive gaps of a subsequence with an exact Δ² limit estimate.
pub fn cauchy_gap_check(p: &PresentedSpace, subsequence: &[usize]) -> Result<GapReport> {
    if subsequence.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let distinct: BTreeSet<usize> = subsequence.iter().copied().collect();
    if distinct.len() != subsequence.len() {
        return Err(Error::InvalidArgument("subsequence repeats a point".into()));
    }
    let gaps: Vec<Rational> = subsequence.windows(2).map(|w| p.d(w[0], w[1])).collect();
    let min = gaps.iter().min().expect("nonempty").clone();
    let n = gaps.len();
    let limit_estimate = if n >= 3 {
        let (a, b, c) = (&gaps[n - 3], &gaps[n - 2], &gaps[n - 1]);
        let den = c - b - b + a;
        if den.is_zero() {
            c.clone()
        } else {
            let diff = c - b;
            c - &diff * &diff / den
        }
    } else {
        min.clone()
    };
    let bounded_below = limit_estimate.is_positive() && min.is_positive();
    Ok(GapReport { gaps, limit_estimate, bounded_below })
}

/// Strictly nested open balls `B(x_1,r_1) ⊋ ... ⊋ B(x_L,r_L)` on a
/// truncation, with `r_L` as the estimate of the limit radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallChain {
    pub centers: Vec<usize>,
    pub radii: Vec<Rational>,
}

impl BallChain {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn alpha(&self) -> &Rational {
        self.radii.last().expect("nonempty chain")
    }

    pub fn ball(&self, space: &FiniteUltraSpace, k: usize) -> Vec<usize> {
        space.open_ball(self.centers[k], &self.radii[k])
    }

    /// Strict nesting, strictly decreasing radii, base outside the first ball.
    pub fn validate(&self, space: &FiniteUltraSpace) -> Result<()> {
        let n = space.len();
        if self.centers.is_empty() || self.centers.len() != self.radii.len() {
            return Err(Error::InvalidChain("centers and radii must be nonempty and match".into()));
        }
        if let Some(&c) = self.centers.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidChain(format!("center {c} outside the truncation")));
        }
        if self.radii.iter().any(|r| !r.is_positive()) {
            return Err(Error::InvalidChain("radii must be positive".into()));
        }
        if self.radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidChain("radii must strictly decrease".into()));
        }
        if *space.d(BASE, self.centers[0]) < self.radii[0] {
            return Err(Error::InvalidChain("first ball contains the base point".into()));
        }
        for k in 1..self.len() {
            let outer: BTreeSet<usize> = self.ball(space, k - 1).into_iter().collect();
            let inner: BTreeSet<usize> = self.ball(space, k).into_iter().collect();
            if !(inner.is_subset(&outer) && inner.len() < outer.len()) {
                return Err(Error::InvalidChain(format!("ball {} is not strictly inside ball {k}", k + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallChainReport {
    pub chain: BallChain,
    /// Truncation points in the final ball.
    pub final_members: Vec<usize>,
    /// Truncation points in every ball of the chain, per prefix length.
    pub shrinking: Vec<usize>,
}

/// Greedy search for a strictly nested chain of open balls with realized
/// radii at least `min_alpha`, starting outside the base point.
pub fn ball_chain_search(p: &PresentedSpace, depth: usize, min_alpha: &Rational) -> Result<Option<BallChainReport>> {
    if !min_alpha.is_positive() {
        return Err(Error::InvalidArgument("min_alpha must be positive".into()));
    }
    let n = p.available(depth);
    let space = p.truncate(n)?;
    let mut balls: Vec<(usize, Rational, BTreeSet<usize>)> = Vec::new();
    for c in 0..n {
        for r in space.realized_from(c) {
            if r < *min_alpha {
                continue;
            }
            let set: BTreeSet<usize> = space.open_ball(c, &r).into_iter().collect();
            balls.push((c, r, set));
        }
    }
    let first = balls
        .iter()
        .filter(|(_, _, s)| !s.contains(&BASE))
        .max_by(|a, b| a.2.len().cmp(&b.2.len()).then(b.0.cmp(&a.0)).then(a.1.cmp(&b.1)));
    let Some(first) = first.cloned() else {
        return Ok(None);
    };
    let mut chain = vec![first];
    loop {
        let (_, r, set) = chain.last().expect("nonempty");
        let next = balls
            .iter()
            .filter(|(_, r2, s2)| r2 < r && s2.len() < set.len() && s2.is_subset(set))
            .max_by(|a, b| a.2.len().cmp(&b.2.len()).then(b.0.cmp(&a.0)).then(a.1.cmp(&b.1)));
        match next {
            Some(b) => chain.push(b.clone()),
            None => break,
        }
    }
    if chain.len() < 2 {
        return Ok(None);
    }
    let shrinking = chain.iter().map(|(_, _, s)| s.len()).collect();
    let final_members = chain.last().expect("nonempty").2.iter().copied().collect();
    let chain = BallChain {
        centers: chain.iter().map(|b| b.0).collect(),
        radii: chain.iter().map(|b| b.1.clone()).collect(),
    };
    chain.validate(&space)?;
    Ok(Some(BallChainReport { chain, final_members, shrinking }))
}

/// `φ = Σ λ_i m_{p_i,q_i}` with `λ_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Molecular {
    pub terms: Vec<(Rational, usize, usize)>,
}

impl Molecular {
    /// Writes `Σ c_x δ_x` as `Σ |c_x| d(x,0) m_{x,0}` with orientation by sign.
    pub fn from_element(space: &FiniteUltraSpace, mu: &FreeElement) -> Self {
        let terms = mu
            .terms()
            .map(|(x, c)| {
                let lambda = c.abs() * space.d(x, BASE);
                if c.is_positive() {
                    (lambda, x, BASE)
                } else {
                    (lambda, BASE, x)
                }
            })
            .collect();
        Self { terms }
    }

    pub fn element(&self, space: &FiniteUltraSpace) -> Result<FreeElement> {
        let n = space.len();
        let mut e = FreeElement::zero(n);
        for (l, p, q) in &self.terms {
            if *p >= n || *q >= n {
                return Err(Error::SupportOutsideTruncation);
            }
            if p == q || !l.is_positive() {
                return Err(Error::InvalidArgument("molecule terms need p != q and λ > 0".into()));
            }
            let w = l / space.d(*p, *q);
            e = e.plus(&FreeElement::from_coeffs(n, [(*p, w.clone()), (*q, -w)])?);
        }
        Ok(e)
    }

    pub fn lambda_sum(&self) -> Rational {
        self.terms.iter().map(|t| &t.0).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditLevel {
    pub n: usize,
    pub radius: Rational,
    /// `A_n`.
    pub annulus: Vec<usize>,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub beta: Rational,
    pub in_k: bool,
    /// `‖δ_{x_n} − φ‖`.
    pub distance: Rational,
    /// The hypothesis `‖δ_{x_n} − φ‖ < r_n`.
    pub hypothesis: bool,
    /// `f_n(δ_{x_n} − φ)`.
    pub f_pairing: Rational,
    /// `r_1 − Σ_{K_n} (r_1 − r_{k+1}) β_k − Σ_{k∉K_n} r_1 β_k`.
    pub f_formula: Rational,
    /// `g_n(φ − δ_{x_n})`.
    pub g_pairing: Rational,
    /// `Σ_{K_n} r_{k+1} β_k`.
    pub g_formula: Rational,
    pub f_norm: Rational,
    pub g_norm: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondualityAudit {
    pub chain: BallChain,
    pub phi: Molecular,
    pub levels: Vec<AuditLevel>,
    pub alpha: Rational,
    /// Every cross-set pair `x ∈ A_n, y ∉ A_n` has `d(x,y) >= r_{n+1}`.
    pub claim_one: bool,
    pub beta_abs_sum: Rational,
    /// `(2/α) Σ λ_i`.
    pub claim_two_bound: Rational,
    pub claim_two: bool,
    pub functions_ok: bool,
    pub formulas_ok: bool,
    pub all_hypotheses: bool,
    /// `Σ_{k∈K} β_k`.
    pub beta_k_sum: Rational,
    /// `Σ_{k∈K} r_{k+1} β_k`.
    pub weighted_k_sum: Rational,
}

impl NondualityAudit {
    /// The inequality ledger holds: Claim-type bounds, Lipschitz bounds and
    /// both pairing identities.
    pub fn sound(&self) -> bool {
        self.claim_one && self.claim_two && self.functions_ok && self.formulas_ok
    }

    pub fn verdict(&self) -> &'static str {
        if self.all_hypotheses {
            "hypotheses hold on the truncation"
        } else {
            "no contradiction forced"
        }
    }
}

/// Exact bookkeeping of the nested-ball argument for one `φ` and chain.
pub fn nonduality_audit(space: &FiniteUltraSpace, chain: &BallChain, phi: &Molecular) -> Result<NondualityAudit> {
    chain.validate(space)?;
    let dend = Dendrogram::from_space(space)?;
    let mu = phi.element(space)?;
    let n_pts = space.len();
    let l = chain.len();
    let balls: Vec<BTreeSet<usize>> = (0..l).map(|k| chain.ball(space, k).into_iter().collect()).collect();
    // A_k for k = 1..L, with A_L the final ball; stored 0-based.
    let annuli: Vec<BTreeSet<usize>> = (0..l)
        .map(|k| if k + 1 < l { balls[k].difference(&balls[k + 1]).copied().collect() } else { balls[k].clone() })
        .collect();
    let radius = |k: usize| chain.radii[k.min(l - 1)].clone();
    let r1 = chain.radii[0].clone();
    let alpha = chain.alpha().clone();

    let mut claim_one = true;
    for (k, a) in annuli.iter().enumerate() {
        let bound = radius(k + 1);
        for &x in a {
            for y in (0..n_pts).filter(|y| !a.contains(y)) {
                if *space.d(x, y) < bound {
                    claim_one = false;
                }
            }
        }
    }

    let mut betas = Vec::with_capacity(l);
    let mut ij = Vec::with_capacity(l);
    for a in &annuli {
        let mut beta = Rational::zero();
        let (mut is, mut js) = (Vec::new(), Vec::new());
        for (i, (lam, p, q)) in phi.terms.iter().enumerate() {
            let w = lam / space.d(*p, *q);
            if a.contains(p) {
                is.push(i);
                beta += &w;
            }
            if a.contains(q) {
                js.push(i);
                beta -= &w;
            }
        }
        betas.push(beta);
        ij.push((is, js));
    }
    let in_k: Vec<bool> = betas.iter().map(Signed::is_positive).collect();
    let beta_abs_sum: Rational = betas.iter().map(Signed::abs).sum();
    let lambda_sum = phi.lambda_sum();
    let claim_two_bound = Rational::from_integer(2.into()) / &alpha * &lambda_sum;
    let claim_two = beta_abs_sum <= claim_two_bound;

    let mut levels = Vec::with_capacity(l);
    let mut functions_ok = true;
    let mut formulas_ok = true;
    let mut all_hypotheses = true;
    for n in 1..=l {
        let kn: Vec<usize> = (0..n - 1).filter(|&k| in_k[k]).collect();
        let mut f = vec![Rational::zero(); n_pts];
        let mut g = vec![Rational::zero(); n_pts];
        for &x in &balls[0] {
            f[x] = r1.clone();
        }
        for &k in &kn {
            for &x in &annuli[k] {
                f[x] = &r1 - radius(k + 1);
                g[x] = radius(k + 1);
            }
        }
        let f = LipFn::new(f)?;
        let g = LipFn::new(g)?;
        let f_norm = norm(space, &f);
        let g_norm = norm(space, &g);
        functions_ok &= f_norm <= Rational::one() && g_norm <= Rational::one();

        let xn = chain.centers[n - 1];
        let dx_minus_phi = FreeElement::delta(n_pts, xn).minus(&mu);
        let distance = free_norm_on_dendrogram(&dend, &dx_minus_phi);
        let hypothesis = distance < chain.radii[n - 1];
        all_hypotheses &= hypothesis;
        let f_pairing = pair(&f, &dx_minus_phi)?;
        let g_pairing = -pair(&g, &dx_minus_phi)?;
        let mut f_formula = r1.clone();
        let mut g_formula = Rational::zero();
        for k in 0..l {
            if kn.contains(&k) {
                f_formula -= (&r1 - radius(k + 1)) * &betas[k];
                g_formula += radius(k + 1) * &betas[k];
            } else {
                f_formula -= &r1 * &betas[k];
            }
        }
        formulas_ok &= f_pairing == f_formula && g_pairing == g_formula;
        formulas_ok &= f_pairing <= distance && g_pairing <= distance;
        levels.push(AuditLevel {
            n,
            radius: chain.radii[n - 1].clone(),
            annulus: annuli[n - 1].iter().copied().collect(),
            i_set: ij[n - 1].0.clone(),
            j_set: ij[n - 1].1.clone(),
            beta: betas[n - 1].clone(),
            in_k: in_k[n - 1],
            distance,
            hypothesis,
            f_pairing,
            f_formula,
            g_pairing,
            g_formula,
            f_norm,
            g_norm,
        });
    }
    let beta_k_sum = betas.iter().filter(|b| b.is_positive()).sum();
    let weighted_k_sum = (0..l).filter(|&k| in_k[k]).map(|k| radius(k + 1) * &betas[k]).sum();
    Ok(NondualityAudit {
        chain: chain.clone(),
        phi: phi.clone(),
        levels,
        alpha,
        claim_one,
        beta_abs_sum,
        claim_two_bound,
        claim_two,
        functions_ok,
        formulas_ok,
        all_hypotheses,
        beta_k_sum,
        weighted_k_sum,
    })
}

/// Parameters `(δ, R, N, (n_i))` with `n_i > N`, `δ <= d(s_{n_i}, s_N) <= R`
/// and `r_{n_i − 1}(s_{n_i}) = s_N`; indices are 1-based enumeration indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotProperWitness {
    pub delta: Rational,
    pub r: Rational,
    pub n: usize,
    pub subsequence: Vec<usize>,
}

/// Checks the conditions of a witness on a family.
pub fn check_not_proper(family: &RetractionFamily, w: &NotProperWitness) -> Result<()> {
    let e = family.enumeration();
    let s = family.space();
    let total = family.n_max();
    if w.n == 0 || w.n > total {
        return Err(Error::WitnessConditionsFail(format!("N = {} out of range", w.n)));
    }
    let sn = e.s(w.n);
    for &ni in &w.subsequence {
        if ni <= w.n || ni > total {
            return Err(Error::WitnessConditionsFail(format!("index {ni} not in (N, {total}]")));
        }
        let d = s.d(e.s(ni), sn);
        if *d < w.delta || *d > w.r {
            return Err(Error::WitnessConditionsFail(format!("d(s_{ni}, s_N) = {d} outside [δ, R]")));
        }
        if family.map(ni - 1)[e.s(ni)] != sn {
            return Err(Error::WitnessConditionsFail(format!("r_{}(s_{ni}) is not s_N", ni - 1)));
        }
    }
    if w.subsequence.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::WitnessConditionsFail("subsequence must increase".into()));
    }
    Ok(())
}

/// First `N` (in increasing order) whose qualifying indices number at least
/// `min_len`; `δ` and `R` are the tight extremes of the distances.
pub fn not_proper_sequence(p: &PresentedSpace, depth: usize, min_len: usize) -> Result<Option<NotProperWitness>> {
    if depth < 3 {
        return Err(Error::InvalidArgument("depth must be at least 3".into()));
    }
    let space = p.truncate(p.available(depth))?;
    let family = RetractionFamily::new(Enumeration::natural(&space));
    let total = family.n_max();
    for n in 1..=total {
        let sub: Vec<usize> = (n + 1..=total).filter(|&ni| family.map(ni - 1)[ni - 1] == n - 1).collect();
        if sub.len() < min_len.max(1) {
            continue;
        }
        let ds: Vec<&Rational> = sub.iter().map(|&ni| space.d(ni - 1, n - 1)).collect();
        let w = NotProperWitness {
            delta: (*ds.iter().min().expect("nonempty")).clone(),
            r: (*ds.iter().max().expect("nonempty")).clone(),
            n,
            subsequence: sub,
        };
        return Ok(Some(w));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MEmbedReport {
    pub witness: NotProperWitness,
    pub yscale: usize,
    pub fs: Vec<LipFn>,
    pub f_norms: Vec<Rational>,
    pub big_f: LipFn,
    pub big_f_norm: Rational,
    /// `F(s_{n_i}) = d(s_{n_i}, s_N)` and `F(s_N) = 0`.
    pub big_f_values_ok: bool,
    /// `min_g max(‖f_1 + F − g‖, ‖−f_1 + F − g‖)`.
    pub optimum: Rational,
    pub g: LipFn,
    /// `δ / (3R)`.
    pub bound: Rational,
    pub pass: bool,
}

/// Builds the witness functions `f_i`, their supremum `F`, and solves the
/// min–max over `g` constant on the fibers of `r_K` (with `g(base) = 0`).
pub fn m_embed_witness(family: &RetractionFamily, w: &NotProperWitness, yscale: usize) -> Result<MEmbedReport> {
    check_not_proper(family, w)?;
    if w.subsequence.is_empty() {
        return Err(Error::WitnessConditionsFail("empty subsequence".into()));
    }
    if yscale < 1 || yscale > family.n_max() {
        return Err(Error::InvalidArgument(format!("Y-scale {yscale} out of range")));
    }
    if !w.subsequence.iter().any(|&ni| ni > yscale) {
        return Err(Error::WitnessConditionsFail("no subsequence index beyond the Y-scale".into()));
    }
    let s = family.space();
    let e = family.enumeration();
    let n_pts = s.len();
    let sn = e.s(w.n);
    let fs: Vec<LipFn> = w
        .subsequence
        .iter()
        .map(|&ni| {
            let target = e.s(ni);
            let height = s.d(target, sn).clone();
            let r = family.map(ni);
            LipFn::normalized((0..n_pts).map(|x| if r[x] == target { height.clone() } else { Rational::zero() }).collect())
        })
        .collect();
    let f_norms: Vec<Rational> = fs.iter().map(|f| norm(s, f)).collect();
    let big_f = sup_combine(&fs)?;
    let big_f_norm = norm(s, &big_f);
    let big_f_values_ok =
        big_f.value(sn).is_zero() && w.subsequence.iter().all(|&ni| big_f.value(e.s(ni)) == s.d(e.s(ni), sn));

    // Basis: lifts of the indicators of s_2..s_K through r_K.
    let prefix = e.prefix(yscale).to_vec();
    let mut basis = Vec::new();
    for &target in &prefix[1..] {
        let data: Vec<(usize, Rational)> = prefix
            .iter()
            .map(|&x| (x, if x == target { Rational::one() } else { Rational::zero() }))
            .collect();
        basis.push(norming_lift(family, &data)?.g);
    }
    let k = basis.len();
    let t = k;
    let mut lp = LinearProgram::free(k + 1);
    let all: Vec<usize> = (0..n_pts).collect();
    for sign in [1i64, -1] {
        let h = fs[0].scaled(&Rational::from_integer(sign.into())).plus(&big_f);
        let exprs: Vec<Affine> = (0..n_pts)
            .map(|x| Affine {
                constant: h.value(x).clone(),
                terms: basis
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.value(x).is_zero())
                    .map(|(j, b)| (j, -b.value(x)))
                    .collect(),
            })
            .collect();
        add_lipschitz_rows(&mut lp, s, &exprs, &all, Some(t), &Rational::zero());
    }
    let sol = match lp.minimize(&[(t, Rational::one())]) {
        LpOutcome::Optimal(sol) => sol,
        other => return Err(Error::Lp(format!("min–max program ended as {other:?}"))),
    };
    let mut g = LipFn::zero(n_pts);
    for (j, b) in basis.iter().enumerate() {
        g = g.plus(&b.scaled(&sol.x[j]));
    }
    let bound = &w.delta / (Rational::from_integer(3.into()) * &w.r);
    let pass = &sol.value - Rational::one() >= bound;
    Ok(MEmbedReport {
        witness: w.clone(),
        yscale,
        fs,
        f_norms,
        big_f,
        big_f_norm,
        big_f_values_ok,
        optimum: sol.value,
        g,
        bound,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::builtin;
    use crate::rational::{dyadic, int, rat};

    #[test]
    fn pseudo_cauchy_examples() {
        let e1 = builtin("e1_not_sc").unwrap();
        let r = pseudo_cauchy_search(&e1, 50).unwrap();
        assert_eq!(r.indices, (1..50).collect::<Vec<_>>());
        assert_eq!(r.gaps[..3], [rat(3, 2), rat(5, 4), rat(9, 8)]);
        assert!(r.pseudo_limits.is_empty());

        let e2 = builtin("e2_omega_sc").unwrap();
        let r = pseudo_cauchy_search(&e2, 50).unwrap();
        assert_eq!(r.indices, (2..50).collect::<Vec<_>>());
        assert_eq!(r.pseudo_limits, vec![1]);
        assert_eq!(e2.label(1), "ω");

        let fin = PresentedSpace::from_finite(&crate::fixtures::u4());
        let r = pseudo_cauchy_search(&fin, 10).unwrap();
        assert!(r.exhausted);
        assert!(pseudo_cauchy_search(&fin, 2).is_err());
    }

    #[test]
    fn gap_checks() {
        let e1 = builtin("e1_not_sc").unwrap();
        let seq: Vec<usize> = (1..=20).collect();
        let g = cauchy_gap_check(&e1, &seq).unwrap();
        assert_eq!(g.limit_estimate, int(1));
        assert!(g.bounded_below);
        assert!(g.gaps.iter().all(|x| *x >= int(1)));
        let e3 = builtin("e3_compact").unwrap();
        let g = cauchy_gap_check(&e3, &seq).unwrap();
        assert_eq!(g.limit_estimate, int(0));
        assert!(!g.bounded_below);
        assert_eq!(g.gaps[0], dyadic(1));
        assert!(cauchy_gap_check(&e3, &[1, 2, 1]).is_err());
    }

    #[test]
    fn ball_chains() {
        let e1 = builtin("e1_not_sc").unwrap();
        let r = ball_chain_search(&e1, 30, &int(1)).unwrap().unwrap();
        assert_eq!(r.chain.centers[..28], (1..29).collect::<Vec<_>>());
        assert_eq!(r.chain.len(), 29);
        for (k, rad) in r.chain.radii.iter().enumerate() {
            assert_eq!(*rad, int(1) + dyadic(k as u64));
        }
        assert_eq!(r.final_members, vec![28]);
        let dn = builtin("discrete_n").unwrap();
        assert_eq!(ball_chain_search(&dn, 20, &rat(1, 2)).unwrap(), None);
        let fin = PresentedSpace::from_finite(&crate::fixtures::u4());
        assert_eq!(ball_chain_search(&fin, 4, &int(5)).unwrap(), None);
    }

    fn e1_setup(depth: usize, len: usize) -> (FiniteUltraSpace, BallChain) {
        let e1 = builtin("e1_not_sc").unwrap();
        let s = e1.truncate(depth).unwrap();
        let c = ball_chain_search(&e1, depth, &int(1)).unwrap().unwrap().chain;
        let chain = BallChain { centers: c.centers[..len].to_vec(), radii: c.radii[..len].to_vec() };
        (s, chain)
    }

    #[test]
    fn audit_single_delta() {
        let (s, chain) = e1_setup(12, 2);
        let phi = Molecular::from_element(&s, &FreeElement::delta(s.len(), chain.centers[0]));
        let a = nonduality_audit(&s, &chain, &phi).unwrap();
        assert!(a.sound());
        assert!(!a.levels[1].hypothesis);
        assert_eq!(a.verdict(), "no contradiction forced");
    }

    #[test]
    fn audit_zero_and_series() {
        let (s, chain) = e1_setup(12, 6);
        let zero = Molecular { terms: vec![] };
        let a = nonduality_audit(&s, &chain, &zero).unwrap();
        assert!(a.sound());
        assert!(a.levels.iter().all(|l| l.beta.is_zero() && l.distance == *s.d(l.n, BASE)));

        let terms = (0..5).map(|i| (dyadic(i as u64 + 1), chain.centers[i], chain.centers[i + 1])).collect();
        let phi = Molecular { terms };
        let a = nonduality_audit(&s, &chain, &phi).unwrap();
        assert!(a.sound());
        assert!(a.beta_abs_sum <= a.claim_two_bound);
    }

    #[test]
    fn audit_rejects_bad_input() {
        let (s, chain) = e1_setup(8, 3);
        let out = Molecular { terms: vec![(int(1), 9, 1)] };
        assert_eq!(nonduality_audit(&s, &chain, &out), Err(Error::SupportOutsideTruncation));
        let bad = BallChain { centers: vec![1, 2], radii: vec![int(3), int(2)] };
        assert!(matches!(nonduality_audit(&s, &bad, &Molecular { terms: vec![] }), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn not_proper_searches() {
        let dn = builtin("discrete_n").unwrap();
        let w = not_proper_sequence(&dn, 10, 3).unwrap().unwrap();
        assert_eq!((w.n, w.delta.clone(), w.r.clone()), (1, int(1), int(1)));
        assert_eq!(w.subsequence, (2..=10).collect::<Vec<_>>());

        let e2 = builtin("e2_omega_sc").unwrap();
        let w = not_proper_sequence(&e2, 20, 3).unwrap().unwrap();
        assert_eq!(w.n, 2);
        assert!(w.delta >= int(1) && w.r <= int(2));

        let e3 = builtin("e3_compact").unwrap();
        assert_eq!(not_proper_sequence(&e3, 20, 3).unwrap(), None);
    }

    #[test]
    fn m_embedding_failure() {
        let dn = builtin("discrete_n").unwrap();
        let s = dn.truncate(12).unwrap();
        let fam = RetractionFamily::new(Enumeration::natural(&s));
        let w = NotProperWitness { delta: int(1), r: int(1), n: 1, subsequence: (2..=12).collect() };
        let rep = m_embed_witness(&fam, &w, 4).unwrap();
        assert!(rep.f_norms.iter().all(|n| *n == int(1)));
        assert!(rep.big_f_norm <= int(1));
        assert!(rep.big_f_values_ok);
        assert_eq!(rep.optimum, rat(3, 2));
        assert_eq!(rep.bound, rat(1, 3));
        assert!(rep.pass);

        let bad = NotProperWitness { delta: int(1), r: int(1), n: 2, subsequence: vec![3] };
        assert!(matches!(m_embed_witness(&fam, &bad, 2), Err(Error::WitnessConditionsFail(_))));
    }
}
