//! Three-ball checks, projection criteria, and the recentering function
//! for ultrametric spaces.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::fixtures::werner_grid;
use crate::hierarchy::PartitionChain;
use crate::lipschitz::{add_lipschitz_rows, norm, slope, Affine, LipFn};
use crate::lp::{LinearProgram, LpOutcome};
use crate::random::{random_unit_fn, rng};
use crate::rational::{fmt_rational, pow, Rational};
use crate::retraction::flatness_profile;
use crate::space::{FiniteUltraSpace, BASE};

/// A linear map on value vectors, `(Qf)(x) = Σ_{y≠base} m[x][y] f(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    matrix: Vec<Vec<Rational>>,
}

impl Projection {
    /// Validates idempotence and `(Qf)(base) = 0` on base-zero vectors.
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if let Some((row, r)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NotSquare { row, len: r.len(), expected: n });
        }
        if n > 0 && matrix[BASE][1..].iter().any(|v| !v.is_zero()) {
            return Err(Error::InvalidArgument("projection must preserve the base value".into()));
        }
        for x in 0..n {
            for y in 1..n {
                let sq: Rational = (1..n).map(|k| &matrix[x][k] * &matrix[k][y]).sum();
                if sq != matrix[x][y] {
                    return Err(Error::NotIdempotent);
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|x| (0..n).map(|y| if x == y && x != BASE { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { matrix }
    }

    pub fn zero(n: usize) -> Self {
        Self { matrix: vec![vec![Rational::zero(); n]; n] }
    }

    /// `Qf = f(p) χ_p`.
    pub fn evaluation_at(n: usize, p: usize) -> Self {
        let mut q = Self::zero(n);
        if p != BASE {
            q.matrix[p][p] = Rational::one();
        }
        q
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn apply(&self, f: &LipFn) -> LipFn {
        let n = self.len();
        let values = (0..n).map(|x| (1..n).map(|y| &self.matrix[x][y] * f.value(y)).sum()).collect();
        LipFn::normalized(values)
    }

    /// A basis of the range.
    pub fn range_basis(&self) -> Vec<LipFn> {
        let n = self.len();
        let cols: Vec<LipFn> =
            (1..n).map(|y| LipFn::normalized((0..n).map(|x| self.matrix[x][y].clone()).collect())).collect();
        independent_subset(&cols)
    }
}

fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let k = &row[c] / &pivot;
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &k * pv;
            }
        }
        r += 1;
    }
    r
}

fn independent_subset(fs: &[LipFn]) -> Vec<LipFn> {
    let mut kept: Vec<LipFn> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for f in fs {
        rows.push(f.values().to_vec());
        if rank(&rows) == rows.len() {
            kept.push(f.clone());
        } else {
            rows.pop();
        }
    }
    kept
}

/// A subspace `Z` of `Lip_0` on a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceSpec {
    space: FiniteUltraSpace,
    basis: Vec<LipFn>,
    projection: Option<Projection>,
}

impl SubspaceSpec {
    pub fn from_basis(space: &FiniteUltraSpace, basis: Vec<LipFn>) -> Result<Self> {
        if basis.iter().any(|b| b.len() != space.len()) {
            return Err(Error::SpaceMismatch);
        }
        let rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.values().to_vec()).collect();
        if rank(&rows) != rows.len() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Self { space: space.clone(), basis, projection: None })
    }

    pub fn from_projection(space: &FiniteUltraSpace, q: Projection) -> Result<Self> {
        if q.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space: space.clone(), basis: q.range_basis(), projection: Some(q) })
    }

    /// All of `Lip_0`.
    pub fn whole(space: &FiniteUltraSpace) -> Self {
        let n = space.len();
        let basis = (1..n)
            .map(|x| LipFn::normalized((0..n).map(|y| if x == y { Rational::one() } else { Rational::zero() }).collect()))
            .collect();
        Self { space: space.clone(), basis, projection: None }
    }

    pub fn space(&self) -> &FiniteUltraSpace {
        &self.space
    }

    pub fn basis(&self) -> &[LipFn] {
        &self.basis
    }

    pub fn projection(&self) -> Option<&Projection> {
        self.projection.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeBallInstance {
    pub zs: [LipFn; 3],
    pub x: LipFn,
    pub eps: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeBallResult {
    pub z: LipFn,
    pub coefficients: Vec<Rational>,
    /// `min_z max_i ‖z_i + x − z‖`.
    pub achieved: Rational,
    pub pass: bool,
}

/// Exact `min_{z∈Z} max_i ‖z_i + x − z‖` as one epigraph program.
pub fn three_ball_check(spec: &SubspaceSpec, inst: &ThreeBallInstance) -> Result<ThreeBallResult> {
    let s = &spec.space;
    let n = s.len();
    if n < 2 {
        return Err(Error::SinglePoint);
    }
    if inst.zs.iter().chain([&inst.x]).any(|f| f.len() != n) {
        return Err(Error::SpaceMismatch);
    }
    if !inst.eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if inst.zs.iter().chain([&inst.x]).any(|f| norm(s, f) > Rational::one()) {
        return Err(Error::InvalidArgument("inputs must lie in the unit ball".into()));
    }
    let rows: Vec<Vec<Rational>> = spec.basis.iter().map(|b| b.values().to_vec()).collect();
    if rank(&rows) != rows.len() {
        return Err(Error::DegenerateBasis);
    }
    let k = spec.dim();
    let t = k;
    let mut lp = LinearProgram::free(k + 1);
    let all: Vec<usize> = (0..n).collect();
    for zi in &inst.zs {
        let h = zi.plus(&inst.x);
        let exprs: Vec<Affine> = (0..n)
            .map(|x| Affine {
                constant: h.value(x).clone(),
                terms: spec
                    .basis
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
        other => return Err(Error::Lp(format!("three-ball program ended as {other:?}"))),
    };
    let mut z = LipFn::zero(n);
    for (j, b) in spec.basis.iter().enumerate() {
        z = z.plus(&b.scaled(&sol.x[j]));
    }
    let achieved = sol.value;
    Ok(ThreeBallResult {
        z,
        coefficients: sol.x[..k].to_vec(),
        pass: achieved <= Rational::one() + &inst.eps,
        achieved,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violator {
    pub f: LipFn,
    pub norm: Rational,
    pub q_norm: Rational,
    pub residual_norm: Rational,
    /// Pair attaining `‖f − Qf‖`.
    pub residual_pair: (usize, usize),
    /// Which sweep stage produced it.
    pub stage: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCheckReport {
    pub tested: usize,
    pub violator: Option<Violator>,
}

/// Largest number of points for which the unit-ball vertices are swept.
pub const VERTEX_SWEEP_LIMIT: usize = 6;

fn distance_functions(s: &FiniteUltraSpace) -> Vec<LipFn> {
    (0..s.len()).map(|y| LipFn::normalized((0..s.len()).map(|x| s.d(x, y).clone()).collect())).collect()
}

fn indicator_functions(s: &FiniteUltraSpace) -> Vec<LipFn> {
    let n = s.len();
    let mut out = Vec::new();
    for x in 1..n {
        out.push(LipFn::normalized((0..n).map(|y| if x == y { Rational::one() } else { Rational::zero() }).collect()));
    }
    for x in 1..n {
        for r in s.realized_from(x).into_iter().skip(1) {
            let ball = s.open_ball(x, &r);
            if ball.contains(&BASE) || ball.len() < 2 {
                continue;
            }
            let mut v = vec![Rational::zero(); n];
            for y in ball {
                v[y] = Rational::one();
            }
            out.push(LipFn::normalized(v));
        }
    }
    out
}

fn prufer_to_edges(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Functions with a spanning tree of tight edges and norm one: the
/// vertices of the unit ball.
pub fn unit_ball_vertices(s: &FiniteUltraSpace) -> Vec<LipFn> {
    let n = s.len();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let trees = n.pow(n as u32 - 2);
    let mut seen = std::collections::BTreeSet::new();
    for t in 0..trees {
        let mut code = Vec::with_capacity(n - 2);
        let mut c = t;
        for _ in 0..n - 2 {
            code.push(c % n);
            c /= n;
        }
        let edges = prufer_to_edges(&code, n);
        let mut adj = vec![Vec::new(); n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        for signs in 0u32..(1 << (n - 1)) {
            let mut v: Vec<Option<Rational>> = vec![None; n];
            v[BASE] = Some(Rational::zero());
            let mut stack = vec![BASE];
            while let Some(u) = stack.pop() {
                for &(w, k) in &adj[u] {
                    if v[w].is_none() {
                        let d = s.d(u, w);
                        let base = v[u].clone().expect("visited");
                        v[w] = Some(if signs >> k & 1 == 1 { base + d } else { base - d });
                        stack.push(w);
                    }
                }
            }
            let f = LipFn::normalized(v.into_iter().map(|x| x.expect("spanning")).collect());
            if norm(s, &f) == Rational::one() && seen.insert(f.values().to_vec()) {
                out.push(f);
            }
        }
    }
    out
}

fn residual(s: &FiniteUltraSpace, q: &Projection, f: &LipFn, stage: &'static str) -> Option<Violator> {
    let nf = norm(s, f);
    let qf = q.apply(f);
    let r = f.minus(&qf);
    let q_norm = norm(s, &qf);
    let residual_norm = norm(s, &r);
    let m = if q_norm > residual_norm { q_norm.clone() } else { residual_norm.clone() };
    if m == nf {
        return None;
    }
    let residual_pair = s
        .pairs()
        .find(|&(x, y)| slope(s, &r, x, y) == residual_norm)
        .unwrap_or((BASE, BASE));
    Some(Violator { f: f.clone(), norm: nf, q_norm, residual_norm, residual_pair, stage })
}

/// Searches for `f` with `‖f‖ ≠ max{‖Qf‖, ‖f − Qf‖}`: distance functions,
/// indicators, unit-ball vertices on small spaces, then `random` seeded
/// trials.
pub fn projection_mcheck(spec: &SubspaceSpec, seed: u64, random: usize) -> Result<MCheckReport> {
    let q = spec.projection.as_ref().ok_or_else(|| Error::InvalidArgument("subspace has no projection".into()))?;
    let s = &spec.space;
    let mut tested = 0;
    let stages: [(&'static str, Vec<LipFn>); 2] =
        [("distance", distance_functions(s)), ("indicator", indicator_functions(s))];
    for (stage, fs) in stages {
        for f in fs {
            tested += 1;
            if let Some(v) = residual(s, q, &f, stage) {
                return Ok(MCheckReport { tested, violator: Some(v) });
            }
        }
    }
    if s.len() <= VERTEX_SWEEP_LIMIT {
        for f in unit_ball_vertices(s) {
            tested += 1;
            if let Some(v) = residual(s, q, &f, "vertex") {
                return Ok(MCheckReport { tested, violator: Some(v) });
            }
        }
    }
    if s.len() >= 2 {
        let mut r = rng(seed);
        for _ in 0..random {
            tested += 1;
            let f = random_unit_fn(&mut r, s);
            if let Some(v) = residual(s, q, &f, "random") {
                return Ok(MCheckReport { tested, violator: Some(v) });
            }
        }
    }
    Ok(MCheckReport { tested, violator: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WernerAudit {
    pub grid: u32,
    pub space: FiniteUltraSpace,
    pub f: LipFn,
    pub norm: Rational,
    pub q_norm: Rational,
    pub residual_norm: Rational,
    pub residual_pair: (usize, usize),
    /// First violator of the sweep, which should be `F` itself.
    pub sweep: MCheckReport,
    pub reproduced: bool,
}

/// `F(x) = x` on the grid, `F(p) = 1/2`, against the evaluation-at-`p`
/// projection.
pub fn werner_audit(grid: u32) -> Result<WernerAudit> {
    if grid < 1 {
        return Err(Error::InvalidArgument("grid must be at least 1".into()));
    }
    let s = werner_grid(grid);
    let p = s.len() - 1;
    let q = Projection::evaluation_at(s.len(), p);
    let f = LipFn::distance_to_base(&s);
    let v = residual(&s, &q, &f, "distance").ok_or_else(|| Error::OracleViolation("F is not a violator".into()))?;
    let spec = SubspaceSpec::from_projection(&s, q)?;
    let sweep = projection_mcheck(&spec, 0, 0)?;
    let reproduced = v.norm == Rational::one() && v.residual_norm == Rational::from_integer(2.into());
    Ok(WernerAudit {
        grid,
        f,
        norm: v.norm,
        q_norm: v.q_norm,
        residual_norm: v.residual_norm,
        residual_pair: v.residual_pair,
        sweep,
        reproduced,
        space: s,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBuild {
    /// Midpoint on each level-`2N` ball inside `B[base,R]`, zero outside.
    pub raw: Vec<Rational>,
    /// `raw` shifted to vanish at the base; same differences.
    pub h: LipFn,
    /// `q^{2N}`.
    pub fine: Rational,
    /// `max_{y∈B[base,R]} |F(y) − h(y)|`.
    pub max_deviation: Rational,
}

/// The recentering function for `F` at scale `q^{2N}` inside `B[base,R]`.
/// Levels beyond the chain range are clamped.
pub fn h_build(chain: &PartitionChain, f: &LipFn, n: i64, r: &Rational) -> Result<HBuild> {
    let s = chain.space();
    if f.len() != s.len() {
        return Err(Error::SpaceMismatch);
    }
    if norm(s, f) > Rational::one() {
        return Err(Error::InvalidArgument("F must lie in the unit ball".into()));
    }
    let fine = pow(chain.q(), 2 * n);
    let mut raw = vec![Rational::zero(); s.len()];
    let mut max_deviation = Rational::zero();
    for y in 0..s.len() {
        if s.d(y, BASE) > r {
            continue;
        }
        let c = chain.phi(2 * n, y);
        let ball = s.open_ball(c, &fine);
        let hi = ball.iter().map(|&z| f.value(z)).max().expect("center in ball");
        let lo = ball.iter().map(|&z| f.value(z)).min().expect("center in ball");
        raw[y] = (hi + lo) / Rational::from_integer(2.into());
        let dev = (f.value(y) - &raw[y]).abs();
        if dev > max_deviation {
            max_deviation = dev;
        }
    }
    Ok(HBuild { h: LipFn::normalized(raw.clone()), raw, fine, max_deviation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairCase {
    /// Common fine ball, or both outside `B[base,R]`.
    Same,
    /// One point inside `B[base,R]`, one outside.
    Straddle,
    /// Both inside with `q^{2N} <= d < q^N`.
    Middle,
    /// Both inside with `d >= q^N`.
    Far,
}

impl PairCase {
    pub const ALL: [PairCase; 4] = [PairCase::Same, PairCase::Straddle, PairCase::Middle, PairCase::Far];

    pub fn name(self) -> &'static str {
        match self {
            PairCase::Same => "I",
            PairCase::Straddle => "II",
            PairCase::Middle => "III",
            PairCase::Far => "IV",
        }
    }

    /// `1 + 2ε` for straddling pairs, `1 + ε` otherwise.
    pub fn bound(self, eps: &Rational) -> Rational {
        match self {
            PairCase::Straddle => Rational::one() + eps + eps,
            _ => Rational::one() + eps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseStat {
    pub case: PairCase,
    pub pairs: usize,
    pub worst: Rational,
    pub argmax: Option<(usize, usize)>,
    pub bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub eps: Rational,
    pub delta: Rational,
    pub r: Rational,
    pub n: i64,
    pub hb: HBuild,
    pub profiles: Vec<Rational>,
    /// `‖f_i + F − h‖`.
    pub norms: Vec<Rational>,
    pub cases: Vec<CaseStat>,
    pub worst: Rational,
    pub bound: Rational,
    /// Every pair is within its case bound.
    pub cases_ok: bool,
    /// `|F − h| <= q^{2N}/2` on `B[base,R]`.
    pub deviation_ok: bool,
    pub pass: bool,
}

pub fn classify(s: &FiniteUltraSpace, x: usize, y: usize, fine: &Rational, delta: &Rational, r: &Rational) -> PairCase {
    let (ix, iy) = (s.d(x, BASE) <= r, s.d(y, BASE) <= r);
    let d = s.d(x, y);
    match (ix, iy) {
        (false, false) => PairCase::Same,
        (true, false) | (false, true) => PairCase::Straddle,
        _ if d < fine => PairCase::Same,
        _ if d < delta => PairCase::Middle,
        _ => PairCase::Far,
    }
}

/// Builds `h` for `F` and checks `‖f_i + F − h‖ <= 1 + 2ε` pair by pair.
pub fn three_ball_ultrametric_demo(
    chain: &PartitionChain,
    f: &LipFn,
    flats: &[LipFn; 3],
    n: i64,
    r: &Rational,
    eps: &Rational,
) -> Result<DemoReport> {
    let s = chain.space();
    s.require_ultrametric()?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let delta = pow(chain.q(), n);
    if delta > *eps || *r < delta {
        return Err(Error::StandingAssumption(format!(
            "need q^N <= eps and R >= q^N (q^N = {}, eps = {}, R = {})",
            fmt_rational(&delta),
            fmt_rational(eps),
            fmt_rational(r)
        )));
    }
    if flats.iter().any(|g| g.len() != s.len()) {
        return Err(Error::SpaceMismatch);
    }
    let mut profiles = Vec::with_capacity(3);
    for (i, g) in flats.iter().enumerate() {
        if norm(s, g) > Rational::one() {
            return Err(Error::InvalidArgument(format!("f_{} is outside the unit ball", i + 1)));
        }
        let p = flatness_profile(s, g, &delta, r);
        if p > *eps {
            return Err(Error::FlatnessViolation { index: i + 1, profile: fmt_rational(&p), eps: fmt_rational(eps) });
        }
        profiles.push(p);
    }
    let hb = h_build(chain, f, n, r)?;
    let half_fine = &hb.fine / Rational::from_integer(2.into());
    let deviation_ok = hb.max_deviation <= half_fine;
    let sums: Vec<LipFn> = flats.iter().map(|g| g.plus(f).minus(&hb.h)).collect();
    let mut cases: Vec<CaseStat> = PairCase::ALL
        .iter()
        .map(|&c| CaseStat { case: c, pairs: 0, worst: Rational::zero(), argmax: None, bound: c.bound(eps) })
        .collect();
    let mut cases_ok = true;
    for (x, y) in s.pairs() {
        let c = classify(s, x, y, &hb.fine, &delta, r);
        let stat = &mut cases[c as usize];
        stat.pairs += 1;
        for sum in &sums {
            let v = slope(s, sum, x, y);
            if v > stat.bound {
                cases_ok = false;
            }
            if stat.argmax.is_none() || v > stat.worst {
                stat.worst = v;
                stat.argmax = Some((x, y));
            }
        }
    }
    let norms: Vec<Rational> = sums.iter().map(|g| norm(s, g)).collect();
    let worst = norms.iter().max().cloned().unwrap_or_else(Rational::zero);
    let bound = Rational::one() + eps + eps;
    Ok(DemoReport {
        eps: eps.clone(),
        r: r.clone(),
        n,
        profiles,
        norms,
        cases,
        pass: worst <= bound && cases_ok && deviation_ok,
        worst,
        bound,
        cases_ok,
        deviation_ok,
        hb,
        delta,
    })
}

/// A random function in the unit ball that is `(eps, delta, r)`-flat:
/// either a scaled random function or a scaled function constant on
/// `delta`-balls.
pub fn random_flat(
    rng: &mut crate::random::Rng64,
    s: &FiniteUltraSpace,
    delta: &Rational,
    r: &Rational,
    eps: &Rational,
) -> LipFn {
    let u = random_unit_fn(rng, s);
    let u = if rng.gen_bool(0.5) {
        let mut v = u.values().to_vec();
        for y in 0..s.len() {
            let rep = s.open_ball(y, delta).into_iter().min().expect("y in its ball");
            v[y] = u.value(rep).clone();
        }
        LipFn::normalized(v)
    } else {
        u
    };
    let nu = norm(s, &u);
    if nu.is_zero() {
        return u;
    }
    let p = flatness_profile(s, &u, delta, r);
    let mut scale = nu.recip();
    if p.is_positive() && eps / &p < scale {
        scale = eps / &p;
    }
    u.scaled(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::u4;
    use crate::random::{random_ball_fn, random_space};
    use crate::rational::{int, rat};

    #[test]
    fn projections() {
        assert_eq!(Projection::new(vec![vec![int(0), int(0)], vec![int(0), int(2)]]), Err(Error::NotIdempotent));
        let s = u4();
        for q in [Projection::identity(4), Projection::zero(4)] {
            let spec = SubspaceSpec::from_projection(&s, q).unwrap();
            let r = projection_mcheck(&spec, 7, 50).unwrap();
            assert_eq!(r.violator, None);
            assert!(r.tested > 50);
        }
        let j = Projection::evaluation_at(4, 3);
        assert_eq!(j.range_basis().len(), 1);
    }

    #[test]
    fn vertices_of_the_pair() {
        let s = crate::fixtures::pair(rat(1, 2));
        let v = unit_ball_vertices(&s);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|f| f.value(1).abs() == rat(1, 2)));
    }

    #[test]
    fn werner() {
        for grid in [2, 4, 8, 16] {
            let a = werner_audit(grid).unwrap();
            assert_eq!((a.norm.clone(), a.residual_norm.clone()), (int(1), int(2)));
            assert!(a.reproduced);
            assert_eq!(a.q_norm, int(1));
            let v = a.sweep.violator.unwrap();
            assert_eq!(v.f, a.f);
        }
    }

    #[test]
    fn three_ball_examples() {
        let s = crate::fixtures::werner_grid(4);
        let p = s.len() - 1;
        let spec = SubspaceSpec::from_projection(&s, Projection::evaluation_at(s.len(), p)).unwrap();
        let f = LipFn::distance_to_base(&s);
        let z = LipFn::zero(s.len());
        let inst = ThreeBallInstance { zs: [z.clone(), z.clone(), z.clone()], x: f.clone(), eps: rat(1, 10) };
        let r = three_ball_check(&spec, &inst).unwrap();
        assert_eq!(r.achieved, int(1));
        assert!(r.pass);

        let u = u4();
        let mut g = rng(5);
        let whole = SubspaceSpec::whole(&u);
        for _ in 0..10 {
            let zs = [random_ball_fn(&mut g, &u), random_ball_fn(&mut g, &u), random_ball_fn(&mut g, &u)];
            let inst = ThreeBallInstance { zs, x: random_ball_fn(&mut g, &u), eps: rat(1, 100) };
            let r = three_ball_check(&whole, &inst).unwrap();
            assert!(r.pass && r.achieved <= int(1));
        }
        let dup = vec![LipFn::distance_to_base(&u), LipFn::distance_to_base(&u)];
        assert_eq!(SubspaceSpec::from_basis(&u, dup), Err(Error::DegenerateBasis));
    }

    #[test]
    fn h_on_u4() {
        let s = u4();
        let chain = PartitionChain::build(&s, &rat(2, 3)).unwrap();
        let f = LipFn::distance_to_base(&s);
        let hb = h_build(&chain, &f, 1, &int(2)).unwrap();
        assert_eq!(hb.fine, rat(4, 9));
        assert_eq!(hb.raw[1], (f.value(1) + f.value(2)) / int(2));
        assert_eq!(hb.raw[1], hb.raw[2]);
        assert_eq!(hb.raw[3], int(1));
        assert!(hb.max_deviation <= &hb.fine / int(2));

        let half = PartitionChain::build(&s, &rat(1, 2)).unwrap();
        let hb = h_build(&half, &f, 1, &int(2)).unwrap();
        assert_eq!(hb.raw, f.values());
    }

    #[test]
    fn demo_examples() {
        let s = u4();
        let chain = PartitionChain::build(&s, &rat(1, 2)).unwrap();
        let f = LipFn::distance_to_base(&s);
        let z = LipFn::zero(4);
        let r = three_ball_ultrametric_demo(&chain, &f, &[z.clone(), z.clone(), z.clone()], 2, &int(2), &rat(1, 4)).unwrap();
        assert!(r.pass);
        let steep = LipFn::distance_to_base(&s);
        assert!(matches!(
            three_ball_ultrametric_demo(&chain, &f, &[steep, z.clone(), z.clone()], 2, &rat(1, 2), &rat(1, 4)),
            Err(Error::FlatnessViolation { index: 1, .. })
        ));
        let tiny = three_ball_ultrametric_demo(&chain, &f, &[z.clone(), z.clone(), z], 2, &rat(1, 4), &rat(1, 4)).unwrap();
        assert!(tiny.pass);
        assert_eq!(tiny.cases[PairCase::Straddle as usize].pairs, 3);
    }

    #[test]
    fn demo_random() {
        let mut g = rng(11);
        for seed in 0..20 {
            let s = random_space(seed, 7);
            let chain = PartitionChain::build(&s, &rat(1, 2)).unwrap();
            let eps = rat(1, 4);
            let (n, r) = (2, int(1));
            let delta = pow(chain.q(), n);
            let f = random_ball_fn(&mut g, &s);
            let flats = [0, 1, 2].map(|_| random_flat(&mut g, &s, &delta, &r, &eps));
            let rep = three_ball_ultrametric_demo(&chain, &f, &flats, n, &r, &eps).unwrap();
            assert!(rep.pass, "seed {seed}: {rep:?}");
        }
    }
}
