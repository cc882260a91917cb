//! Seeded batteries behind the `suite` command and the acceptance target.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extremal::{assertion_window, build_extreme, perturbation_bound};
use crate::hierarchy::{check_all, PartitionChain};
use crate::lipschitz::{free_norm_lp, free_norm_on_dendrogram, free_norm_tree, molecule, norm, FreeElement};
use crate::mideal::{random_flat, three_ball_ultrametric_demo, werner_audit};
use crate::presented::builtin;
use crate::random::{gen_space, random_ball_fn, random_element, random_space, rng, small_rational, RandomSpaceSpec};
use crate::rational::{dyadic, fmt_rational, int, pow, rat, Rational};
use crate::retraction::{check_retraction_laws, norming_lift, Enumeration, RetractionFamily};
use crate::space::{ultrametric_ball_facts, FiniteUltraSpace, BASE};
use crate::witnesses::{
    ball_chain_search, cauchy_gap_check, m_embed_witness, nonduality_audit, not_proper_sequence, pseudo_cauchy_search,
    BallChain, Molecular,
};

pub const SUITES: [&str; 7] = ["lemmas", "freenorm", "mideal", "extreme", "spherical", "membed", "all"];

/// One verdict line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), detail: detail.into(), pass }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), params: Vec::new(), checks: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    fn header(&self) -> String {
        let mut h = format!("# {}", self.command);
        for (k, v) in &self.params {
            let _ = write!(h, " {k}={v}");
        }
        h
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header();
        out.push_str("\ncheck\tverdict\tdetail\n");
        for c in &self.checks {
            let _ = writeln!(out, "{}\t{}\t{}", c.name, verdict(c.pass), c.detail);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = self.header();
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "{:<width$}  {}  {}", c.name, verdict(c.pass), c.detail);
        }
        let _ = writeln!(out, "{}", if self.pass() { "all checks passed" } else { "some checks failed" });
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Thread cap from `ULTRALIP_THREADS`, if set.
pub fn thread_cap() -> Option<usize> {
    std::env::var("ULTRALIP_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

/// Order-preserving parallel map over independent trials.
pub fn par_trials<R: Send>(count: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    let run = || (0..count).into_par_iter().map(&f).collect();
    match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => (0..count).map(&f).collect(),
        },
        None => run(),
    }
}

fn summarize(name: &str, results: Vec<Option<String>>, what: &str) -> Check {
    let total = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    match failures.first() {
        None => Check::new(name, true, format!("{total} {what}, 0 violations")),
        Some(first) => Check::new(name, false, format!("{} of {total} {what} failed; first: {first}", failures.len())),
    }
}

fn errstr(e: Error) -> Option<String> {
    Some(e.to_string())
}

/// `‖F‖ = 1` and `‖F − QF‖ = 2` on each grid.
pub fn werner_battery(grids: &[u32]) -> Vec<Check> {
    grids
        .iter()
        .map(|&g| match werner_audit(g) {
            Ok(a) => Check::new(
                format!("werner/grid={g}"),
                a.reproduced,
                format!(
                    "|F|={} |QF|={} |F-QF|={} at ({},{})",
                    fmt_rational(&a.norm),
                    fmt_rational(&a.q_norm),
                    fmt_rational(&a.residual_norm),
                    a.space.label(a.residual_pair.0),
                    a.space.label(a.residual_pair.1)
                ),
            ),
            Err(e) => Check::new(format!("werner/grid={g}"), false, e.to_string()),
        })
        .collect()
}

/// Tree formula against the linear program on random dendrograms.
pub fn freenorm_battery(seed: u64, spaces: usize, elements: usize) -> Vec<Check> {
    let results = par_trials(spaces, |i| freenorm_trial(seed.wrapping_add(i as u64), 2 + i % 7, elements).err());
    vec![summarize("freenorm/lp=tree", results, "spaces")]
}

fn freenorm_trial(sseed: u64, points: usize, elements: usize) -> std::result::Result<(), String> {
    let dend = gen_space(&RandomSpaceSpec::new(sseed, points));
    let s = dend.to_space().map_err(|e| e.to_string())?;
    let n = s.len();
    let both = |mu: &FreeElement| -> std::result::Result<(Rational, Rational), String> {
        let (lp, cert) = free_norm_lp(&s, mu).map_err(|e| e.to_string())?;
        if !cert.verify(&s, mu) {
            return Err(format!("seed {sseed}: certificate rejected"));
        }
        let tree = free_norm_tree(&s, mu).map_err(|e| e.to_string())?;
        if free_norm_on_dendrogram(&dend, mu) != tree {
            return Err(format!("seed {sseed}: dendrogram and matrix tree routes differ"));
        }
        Ok((lp, tree))
    };
    let mut r = rng(sseed ^ 0x5eed);
    for k in 0..elements {
        let mu = random_element(&mut r, n, n);
        let (lp, tree) = both(&mu)?;
        if lp != tree {
            return Err(format!("seed {sseed}: element {k} lp={} tree={}", fmt_rational(&lp), fmt_rational(&tree)));
        }
    }
    for (x, y) in s.pairs() {
        let m = molecule(&s, x, y).map_err(|e| e.to_string())?;
        let (lp, tree) = both(&m)?;
        if lp != Rational::one() || tree != Rational::one() {
            return Err(format!("seed {sseed}: molecule ({x},{y}) norm {}", fmt_rational(&lp)));
        }
    }
    for x in 0..n {
        let (lp, tree) = both(&FreeElement::delta(n, x))?;
        if lp != *s.d(x, BASE) || tree != *s.d(x, BASE) {
            return Err(format!("seed {sseed}: delta {x} norm {}", fmt_rational(&lp)));
        }
    }
    Ok(())
}

fn test_radii(s: &FiniteUltraSpace) -> Vec<Rational> {
    let mut radii: Vec<Rational> = s.pairs().map(|(x, y)| s.d(x, y).clone()).collect();
    radii.push(s.diameter() + Rational::one());
    radii.sort();
    radii.dedup();
    radii
}

fn lemma_trial(seed: u64, max_points: usize) -> Vec<Option<String>> {
    let s = random_space(seed, 1 + (seed as usize) % max_points);
    let n = s.len();
    let mut out = Vec::with_capacity(3);
    // Ball facts on every triple and every test radius.
    let radii = test_radii(&s);
    let mut balls = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for r in &radii {
                    match ultrametric_ball_facts(&s, x, y, z, r) {
                        Ok(f) if f.all_ok() => {}
                        Ok(f) => {
                            balls = Some(format!("seed {seed}: ({x},{y},{z},{}) {f:?}", fmt_rational(r)));
                            break 'outer;
                        }
                        Err(e) => {
                            balls = errstr(e);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out.push(balls);
    let mut chains = None;
    for q in [rat(1, 3), rat(1, 2), rat(3, 4)] {
        let res = PartitionChain::build(&s, &q).and_then(|c| check_all(&c));
        match res {
            Ok(None) => {}
            Ok(Some(e)) => {
                chains = Some(format!("seed {seed}, q={}: {e}", fmt_rational(&q)));
                break;
            }
            Err(e) => {
                chains = errstr(e);
                break;
            }
        }
    }
    out.push(chains);
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(&mut rng(seed ^ 0xe1));
    order.insert(0, BASE);
    let retractions = [Enumeration::natural(&s), Enumeration::new(&s, order).expect("base-first permutation")]
        .into_iter()
        .find_map(|e| check_retraction_laws(&RetractionFamily::new(e)))
        .map(|e| format!("seed {seed}: {e}"));
    out.push(retractions);
    out
}

/// Ball facts, partition chains, trail and meet laws, and retraction laws on
/// random spaces.
pub fn lemma_battery(seed: u64, spaces: usize, max_points: usize) -> Vec<Check> {
    let per = par_trials(spaces, |i| lemma_trial(seed.wrapping_add(i as u64), max_points));
    let names = ["lemmas/ball-facts", "lemmas/chains-trails-meets", "lemmas/retractions"];
    names
        .iter()
        .enumerate()
        .map(|(k, name)| summarize(name, per.iter().map(|v| v[k].clone()).collect(), "spaces"))
        .collect()
}

fn norming_trial(seed: u64) -> Option<String> {
    let mut r = rng(seed);
    let s = random_space(seed, r.gen_range(2..=10));
    let n = s.len();
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(&mut r);
    order.insert(0, BASE);
    let fam = match Enumeration::new(&s, order) {
        Ok(e) => RetractionFamily::new(e),
        Err(e) => return errstr(e),
    };
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(&mut r);
    let k = r.gen_range(1..=n);
    let known: Vec<(usize, Rational)> = pts[..k]
        .iter()
        .map(|&x| (x, if x == BASE { Rational::zero() } else { small_rational(&mut r) }))
        .collect();
    let lift = match norming_lift(&fam, &known) {
        Ok(l) => l,
        Err(e) => return errstr(e),
    };
    if norm(&s, &lift.g) != lift.data_norm {
        return Some(format!("seed {seed}: ‖g‖ = {} but data norm {}", fmt_rational(&norm(&s, &lift.g)), fmt_rational(&lift.data_norm)));
    }
    if known.iter().any(|(x, v)| lift.g.value(*x) != v) {
        return Some(format!("seed {seed}: g does not extend the data"));
    }
    let rn = fam.map(lift.n);
    for (x, y) in s.pairs() {
        if rn[x] == rn[y] && lift.g.value(x) != lift.g.value(y) {
            return Some(format!("seed {seed}: g separates ({x},{y}) in one fiber of r_{}", lift.n));
        }
    }
    None
}

/// `‖g‖ = ‖f_A‖` and fiber constancy of norming lifts.
pub fn norming_battery(seed: u64, trials: usize) -> Vec<Check> {
    let results = par_trials(trials, |i| norming_trial(seed.wrapping_add(i as u64)));
    vec![summarize("lemmas/norming-lift", results, "instances")]
}

/// `ε ∈ {10^-1, 10^-2, 10^-3}`.
pub fn extreme_epsilons() -> Vec<Rational> {
    vec![rat(1, 10), rat(1, 100), rat(1, 1000)]
}

fn extreme_trial(seed: u64, max_points: usize) -> Option<String> {
    let qs = [rat(1, 2), rat(1, 3), rat(3, 4)];
    let q = &qs[(seed % 3) as usize];
    let s = random_space(seed, 2 + (seed as usize) % (max_points - 1));
    let chain = match PartitionChain::build(&s, q) {
        Ok(c) => c,
        Err(e) => return errstr(e),
    };
    let c = match build_extreme(&chain) {
        Ok(c) => c,
        Err(e) => return Some(format!("seed {seed}: {e}")),
    };
    if norm(&s, &c.f) != Rational::one() {
        return Some(format!("seed {seed}: ‖f‖ ≠ 1"));
    }
    match perturbation_bound(&c, &Rational::zero()) {
        Ok(r) if r.max_g_norm.is_zero() => {}
        Ok(r) => return Some(format!("seed {seed}: max‖g‖ at ε=0 is {}", fmt_rational(&r.max_g_norm))),
        Err(e) => return errstr(e),
    }
    let window = assertion_window(q);
    for eps in extreme_epsilons().into_iter().filter(|e| *e <= window) {
        match perturbation_bound(&c, &eps) {
            Ok(r) if r.holds => {}
            Ok(r) => {
                return Some(format!(
                    "seed {seed}, q={}, ε={}: max‖g‖={} > {}",
                    fmt_rational(q),
                    fmt_rational(&eps),
                    fmt_rational(&r.max_g_norm),
                    fmt_rational(&r.bound)
                ))
            }
            Err(e) => return errstr(e),
        }
    }
    None
}

/// Norm, zero-perturbation and perturbation bounds for the trail function.
pub fn extreme_battery(seed: u64, spaces: usize, max_points: usize) -> Vec<Check> {
    let results = par_trials(spaces, |i| extreme_trial(seed.wrapping_add(i as u64), max_points));
    vec![summarize("extreme/perturbation", results, "spaces")]
}

fn demo_trial(seed: u64, max_points: usize) -> Option<String> {
    let mut r = rng(seed);
    let s = random_space(seed, r.gen_range(2..=max_points));
    let qs = [rat(1, 2), rat(1, 3), rat(3, 4)];
    let q = qs[r.gen_range(0..qs.len())].clone();
    let epss = [rat(1, 4), rat(1, 8), rat(1, 10)];
    let eps = epss[r.gen_range(0..epss.len())].clone();
    let mut n = 1;
    while pow(&q, n) > eps {
        n += 1;
    }
    let delta = pow(&q, n);
    let rs = [rat(1, 3), rat(1, 2), int(1), int(2)];
    let big_r = rs.iter().filter(|x| **x >= delta).nth(r.gen_range(0..3)).cloned().unwrap_or_else(|| int(2));
    let chain = match PartitionChain::build(&s, &q) {
        Ok(c) => c,
        Err(e) => return errstr(e),
    };
    let f = random_ball_fn(&mut r, &s);
    let flats = [0, 1, 2].map(|_| random_flat(&mut r, &s, &delta, &big_r, &eps));
    match three_ball_ultrametric_demo(&chain, &f, &flats, n, &big_r, &eps) {
        Ok(rep) if rep.pass => None,
        Ok(rep) => Some(format!(
            "seed {seed}: worst {} > {} (cases ok {}, deviation ok {})",
            fmt_rational(&rep.worst),
            fmt_rational(&rep.bound),
            rep.cases_ok,
            rep.deviation_ok
        )),
        Err(e) => Some(format!("seed {seed}: {e}")),
    }
}

/// Recentering demo on random ultrametric spaces.
pub fn demo_battery(seed: u64, spaces: usize, max_points: usize) -> Vec<Check> {
    let results = par_trials(spaces, |i| demo_trial(seed.wrapping_add(i as u64), max_points));
    vec![summarize("mideal/demo", results, "spaces")]
}

/// Pseudo-Cauchy searches and gap closed forms on the example spaces.
pub fn spherical_battery(depth: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let e1 = builtin("e1_not_sc").expect("builtin");
    match pseudo_cauchy_search(&e1, depth) {
        Ok(r) => {
            let closed = r.indices.windows(2).zip(&r.gaps).all(|(w, g)| *g == Rational::one() + dyadic(w[0].min(w[1]) as u64));
            out.push(Check::new(
                "spherical/e1",
                r.indices.len() >= 100 && r.pseudo_limits.is_empty() && closed,
                format!("prefix length {}, pseudo-limits {} among {} points", r.indices.len(), r.pseudo_limits.len(), r.depth),
            ));
        }
        Err(e) => out.push(Check::new("spherical/e1", false, e.to_string())),
    }
    let e2 = builtin("e2_omega_sc").expect("builtin");
    let d2 = depth.min(200);
    match pseudo_cauchy_search(&e2, d2) {
        Ok(r) => {
            let omega = e2.position("ω", d2);
            let closed = r.indices.windows(2).zip(&r.gaps).all(|(w, g)| {
                let m = e2.label(w[0]).parse::<u64>().unwrap_or(0).min(e2.label(w[1]).parse().unwrap_or(0));
                *g == Rational::one() + dyadic(m)
            });
            let labels: Vec<String> = r.pseudo_limits.iter().map(|&x| e2.label(x)).collect();
            out.push(Check::new(
                "spherical/e2",
                omega.is_some_and(|w| r.pseudo_limits == [w]) && closed,
                format!("prefix length {}, pseudo-limits {:?}", r.indices.len(), labels),
            ));
        }
        Err(e) => out.push(Check::new("spherical/e2", false, e.to_string())),
    }
    let e3 = builtin("e3_compact").expect("builtin");
    let seq: Vec<usize> = (1..depth.min(200)).collect();
    match cauchy_gap_check(&e3, &seq) {
        Ok(g) => {
            let closed = seq.windows(2).zip(&g.gaps).all(|(w, x)| *x == dyadic(w[0].min(w[1]) as u64));
            out.push(Check::new(
                "spherical/e3-gaps",
                closed && g.limit_estimate.is_zero(),
                format!("{} gaps, limit estimate {}", g.gaps.len(), fmt_rational(&g.limit_estimate)),
            ));
        }
        Err(e) => out.push(Check::new("spherical/e3-gaps", false, e.to_string())),
    }
    out
}

fn audit_phis(s: &FiniteUltraSpace, chain: &BallChain, seed: u64, random: usize) -> Vec<Molecular> {
    let n = s.len();
    let mut phis = vec![Molecular { terms: Vec::new() }];
    for &c in &chain.centers {
        phis.push(Molecular::from_element(s, &FreeElement::delta(n, c)));
    }
    let mut r = rng(seed);
    for _ in 0..random {
        let k = r.gen_range(1..=4);
        let terms = (0..k)
            .map(|_| {
                let p = r.gen_range(0..n);
                let mut q = r.gen_range(0..n);
                if q == p {
                    q = (p + 1) % n;
                }
                (rat(r.gen_range(1..=8), [1, 2, 4, 8][r.gen_range(0..4)]), p, q)
            })
            .collect();
        phis.push(Molecular { terms });
    }
    phis
}

/// Claim-type bounds and certificates of the non-duality argument on
/// truncations of `e1_not_sc`.
pub fn nonduality_battery(seed: u64, depth: usize, random: usize) -> Vec<Check> {
    let e1 = builtin("e1_not_sc").expect("builtin");
    let s = match e1.truncate(depth) {
        Ok(s) => s,
        Err(e) => return vec![Check::new("spherical/audit", false, e.to_string())],
    };
    let full = match ball_chain_search(&e1, depth, &Rational::one()) {
        Ok(Some(r)) => r.chain,
        Ok(None) => return vec![Check::new("spherical/audit", false, "no ball chain found")],
        Err(e) => return vec![Check::new("spherical/audit", false, e.to_string())],
    };
    let mut chains = Vec::new();
    for len in 2..=full.len() {
        chains.push(BallChain { centers: full.centers[..len].to_vec(), radii: full.radii[..len].to_vec() });
    }
    for start in 1..full.len().saturating_sub(1) {
        chains.push(BallChain { centers: full.centers[start..].to_vec(), radii: full.radii[start..].to_vec() });
    }
    let results = par_trials(chains.len(), |i| -> Option<String> {
        let chain = &chains[i];
        for (k, phi) in audit_phis(&s, chain, seed.wrapping_add(i as u64), random).into_iter().enumerate() {
            let a = match nonduality_audit(&s, chain, &phi) {
                Ok(a) => a,
                Err(e) => return errstr(e),
            };
            if !a.sound() {
                return Some(format!(
                    "chain {i}, φ {k}: claim1 {} claim2 {} functions {} pairings {}",
                    a.claim_one, a.claim_two, a.functions_ok, a.formulas_ok
                ));
            }
        }
        None
    });
    vec![summarize("spherical/audit", results, "chains")]
}

/// Min–max gap for the not-proper witness on `discrete_n`.
pub fn membed_battery(depth: usize, yscale: usize) -> Vec<Check> {
    let dn = builtin("discrete_n").expect("builtin");
    let run = || -> Result<Check> {
        let w = not_proper_sequence(&dn, depth, 3)?
            .ok_or_else(|| Error::WitnessConditionsFail("no witness on the truncation".into()))?;
        let s = dn.truncate(dn.available(depth))?;
        let fam = RetractionFamily::new(Enumeration::natural(&s));
        let rep = m_embed_witness(&fam, &w, yscale)?;
        let gap = &rep.optimum - Rational::one();
        Ok(Check::new(
            format!("membed/depth={depth},K={yscale}"),
            rep.pass && rep.big_f_values_ok && rep.big_f_norm <= Rational::one(),
            format!(
                "optimum {} , optimum-1 = {} >= δ/(3R) = {} (δ={}, R={}, N={})",
                fmt_rational(&rep.optimum),
                fmt_rational(&gap),
                fmt_rational(&rep.bound),
                fmt_rational(&w.delta),
                fmt_rational(&w.r),
                w.n
            ),
        ))
    };
    vec![run().unwrap_or_else(|e| Check::new(format!("membed/depth={depth},K={yscale}"), false, e.to_string()))]
}

/// Runs a named suite.
pub fn run_suite(name: &str, seed: u64) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let mut report = Report::new(format!("suite {name}")).param("seed", seed);
    if let Some(t) = thread_cap() {
        report = report.param("threads", t);
    }
    let want = |s: &str| name == "all" || name == s;
    if want("lemmas") {
        report.checks.extend(lemma_battery(seed, 200, 10));
        report.checks.extend(norming_battery(seed, 100));
    }
    if want("freenorm") {
        report.checks.extend(freenorm_battery(seed, 50, 100));
    }
    if want("mideal") {
        report.checks.extend(werner_battery(&[2, 4, 8, 16]));
        report.checks.extend(demo_battery(seed, 200, 32));
    }
    if want("extreme") {
        report.checks.extend(extreme_battery(seed, 200, 10));
    }
    if want("spherical") {
        report.checks.extend(spherical_battery(1000));
        report.checks.extend(nonduality_battery(seed, 30, 8));
    }
    if want("membed") {
        report.checks.extend(membed_battery(12, 4));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", 0).unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn small_batteries() {
        assert!(werner_battery(&[2, 3]).iter().all(|c| c.pass));
        assert!(freenorm_battery(1, 4, 5).iter().all(|c| c.pass));
        assert!(lemma_battery(1, 6, 6).iter().all(|c| c.pass));
        assert!(norming_battery(1, 10).iter().all(|c| c.pass));
        assert!(extreme_battery(1, 6, 6).iter().all(|c| c.pass));
        assert!(demo_battery(1, 6, 10).iter().all(|c| c.pass));
        assert!(membed_battery(12, 4).iter().all(|c| c.pass));
    }

    #[test]
    fn report_formats() {
        let mut r = Report::new("suite demo").param("seed", 3);
        r.checks.push(Check::new("a", true, "x"));
        assert_eq!(r.to_tsv(), "# suite demo seed=3\ncheck\tverdict\tdetail\na\tPASS\tx\n");
        assert!(r.to_text().ends_with("all checks passed\n"));
        r.checks.push(Check::new("b", false, "y"));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap().len(), 1);
    }
}
