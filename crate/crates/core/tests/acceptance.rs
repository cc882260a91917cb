//! Acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use ultralip::suite::{
    demo_battery, extreme_battery, freenorm_battery, lemma_battery, membed_battery, nonduality_battery,
    norming_battery, spherical_battery, werner_battery, Check,
};

const SEED: u64 = 0;

fn criterion(id: u32, title: &str, budget: Duration, run: impl FnOnce() -> Vec<Check>) {
    let start = Instant::now();
    let checks = run();
    let elapsed = start.elapsed();
    let ok = !checks.is_empty() && checks.iter().all(|c| c.pass);
    let in_time = elapsed <= budget;
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    println!("criterion {id} {verdict}: {title} ({:.2}s, budget {}s)", elapsed.as_secs_f64(), budget.as_secs());
    for c in &checks {
        println!("    {} {} {}", c.name, if c.pass { "ok" } else { "FAILED" }, c.detail);
    }
    assert!(ok, "criterion {id} failed");
    assert!(in_time, "criterion {id} exceeded its budget: {elapsed:?}");
}

#[test]
fn c1_werner_counterexample() {
    criterion(1, "Werner grid audit", Duration::from_secs(1), || werner_battery(&[2, 4, 8, 16]));
}

#[test]
fn c2_free_norm_oracles() {
    criterion(2, "free norm tree = LP", Duration::from_secs(60), || freenorm_battery(SEED, 50, 100));
}

#[test]
fn c3_lemma_battery() {
    criterion(3, "ball, chain, trail, meet and retraction laws", Duration::from_secs(120), || {
        lemma_battery(SEED, 200, 10)
    });
}

#[test]
fn c4_strongly_extreme() {
    criterion(4, "trail function perturbation bound", Duration::from_secs(300), || extreme_battery(SEED, 200, 10));
}

#[test]
fn c5_mideal_demo() {
    criterion(5, "recentering demo", Duration::from_secs(300), || demo_battery(SEED, 200, 32));
}

#[test]
fn c6_pseudo_cauchy_examples() {
    criterion(6, "pseudo-Cauchy examples", Duration::from_secs(10), || spherical_battery(1000));
}

#[test]
fn c7_nonduality_audit() {
    criterion(7, "non-duality audit on e1 depth 30", Duration::from_secs(30), || nonduality_battery(SEED, 30, 8));
}

#[test]
fn c8_m_embedding_failure() {
    criterion(8, "M-embedding failure on discrete_n", Duration::from_secs(60), || membed_battery(12, 4));
}

#[test]
fn c9_norming_lift() {
    criterion(9, "norming lift", Duration::from_secs(30), || norming_battery(SEED, 100));
}
