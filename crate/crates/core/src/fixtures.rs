//! Small named spaces used throughout the tests and examples.

use crate::rational::{int, rat, Rational};
use crate::space::FiniteUltraSpace;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Four points `0, a, b, c`: `d(a,b) = 1/4`, every other distinct pair at
/// distance 1.
pub fn u4() -> FiniteUltraSpace {
    let one = int(1);
    let q = rat(1, 4);
    let z = int(0);
    let m = vec![
        vec![z.clone(), one.clone(), one.clone(), one.clone()],
        vec![one.clone(), z.clone(), q.clone(), one.clone()],
        vec![one.clone(), q, z.clone(), one.clone()],
        vec![one.clone(), one.clone(), one, z],
    ];
    FiniteUltraSpace::validate(m, labels(&["0", "a", "b", "c"])).expect("u4 is valid")
}

/// Two points at distance `d`.
pub fn pair(d: Rational) -> FiniteUltraSpace {
    let z = int(0);
    FiniteUltraSpace::validate(vec![vec![z.clone(), d.clone()], vec![d, z]], labels(&["0", "x"]))
        .expect("positive distance")
}

/// Two clusters `{0, a}` and `{b, c}` with inner distance `1/8` and distance 1
/// across.
pub fn two_clusters() -> FiniteUltraSpace {
    let one = int(1);
    let e = rat(1, 8);
    let z = int(0);
    let m = vec![
        vec![z.clone(), e.clone(), one.clone(), one.clone()],
        vec![e.clone(), z.clone(), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), z.clone(), e.clone()],
        vec![one.clone(), one, e, z],
    ];
    FiniteUltraSpace::validate(m, labels(&["0", "a", "b", "c"])).expect("valid")
}

/// The grid `{0, 1/n, …, 1}` of the unit interval together with an extra
/// point `p` at distance `1/2` from every grid point. Not ultrametric.
pub fn werner_grid(n: u32) -> FiniteUltraSpace {
    assert!(n >= 1);
    let n = n as i64;
    let grid: Vec<Rational> = (0..=n).map(|k| rat(k, n)).collect();
    let size = grid.len() + 1;
    let half = rat(1, 2);
    let mut m = vec![vec![int(0); size]; size];
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            m[i][j] = num_traits::Signed::abs(&(&grid[i] - &grid[j]));
        }
        m[i][size - 1] = half.clone();
        m[size - 1][i] = half.clone();
    }
    let mut names: Vec<String> = grid.iter().map(|g| g.to_string()).collect();
    names.push("p".into());
    FiniteUltraSpace::validate(m, names).expect("werner grid is a metric space")
}
