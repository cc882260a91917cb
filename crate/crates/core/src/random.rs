//! Seeded generators for dendrograms, functions and free elements.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dendrogram::{DendNode, Dendrogram};
use crate::lipschitz::{norm, FreeElement, LipFn};
use crate::rational::{int, rat, Rational};
use crate::space::FiniteUltraSpace;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpaceSpec {
    pub seed: u64,
    pub points: usize,
    /// Candidate node heights, ascending.
    pub heights: Vec<Rational>,
    /// Maximum number of children per node (at least 2).
    pub branching: usize,
}

impl RandomSpaceSpec {
    pub fn new(seed: u64, points: usize) -> Self {
        Self { seed, points, heights: default_heights(), branching: 3 }
    }
}

pub fn default_heights() -> Vec<Rational> {
    vec![rat(1, 8), rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), int(1), rat(3, 2), int(2)]
}

fn split(rng: &mut Rng64, k: usize, top: usize, spec: &RandomSpaceSpec) -> DendNode {
    if k == 1 {
        return DendNode::Leaf(0);
    }
    let h = rng.gen_range(0..top);
    let height = spec.heights[h].clone();
    let children = if h == 0 {
        (0..k).map(|_| DendNode::Leaf(0)).collect()
    } else {
        let parts = rng.gen_range(2..=spec.branching.max(2).min(k));
        let mut cuts: Vec<usize> = (1..k).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
        cuts.sort_unstable();
        let mut sizes = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(k)) {
            sizes.push(c - prev);
            prev = c;
        }
        sizes.into_iter().map(|s| split(rng, s, h, spec)).collect()
    };
    DendNode::Internal { height, children }
}

fn number_leaves(node: &mut DendNode, ids: &mut impl Iterator<Item = usize>) {
    match node {
        DendNode::Leaf(i) => *i = ids.next().expect("enough ids"),
        DendNode::Internal { children, .. } => children.iter_mut().for_each(|c| number_leaves(c, ids)),
    }
}

/// A random dendrogram; identical specs give identical trees.
pub fn gen_space(spec: &RandomSpaceSpec) -> Dendrogram {
    assert!(spec.points >= 1, "at least one point");
    assert!(!spec.heights.is_empty(), "need at least one height");
    let mut rng = rng(spec.seed);
    let top = rng.gen_range(0..spec.heights.len()) + 1;
    let mut root = split(&mut rng, spec.points, top, spec);
    let mut ids: Vec<usize> = (0..spec.points).collect();
    ids.shuffle(&mut rng);
    number_leaves(&mut root, &mut ids.into_iter());
    let labels = (0..spec.points).map(|i| if i == 0 { "0".to_string() } else { format!("x{i}") }).collect();
    Dendrogram::new(root, labels).expect("generator produces valid trees")
}

/// `gen_space` with default heights and branching, as a matrix space.
pub fn random_space(seed: u64, points: usize) -> FiniteUltraSpace {
    gen_space(&RandomSpaceSpec::new(seed, points)).to_space().expect("dendrograms are ultrametric")
}

/// A small random rational `p/q` with `|p| <= 8`, `q ∈ {1,2,3,4,8}`.
pub fn small_rational(rng: &mut Rng64) -> Rational {
    let dens = [1, 2, 3, 4, 8];
    rat(rng.gen_range(-8..=8), dens[rng.gen_range(0..dens.len())])
}

/// A random element with up to `max_support` nonzero coefficients.
pub fn random_element(rng: &mut Rng64, n: usize, max_support: usize) -> FreeElement {
    let mut pts: Vec<usize> = (1..n).collect();
    pts.shuffle(rng);
    let k = if pts.is_empty() { 0 } else { rng.gen_range(0..=max_support.min(pts.len())) };
    FreeElement::from_coeffs(n, pts[..k].iter().map(|&x| (x, small_rational(rng)))).expect("indices in range")
}

/// A random function of norm exactly one, or zero on a single point.
pub fn random_unit_fn(rng: &mut Rng64, space: &FiniteUltraSpace) -> LipFn {
    let n = space.len();
    loop {
        let mut values = vec![Rational::zero()];
        values.extend((1..n).map(|_| small_rational(rng)));
        let f = LipFn::normalized(values);
        let l = norm(space, &f);
        if n < 2 {
            return f;
        }
        if !l.is_zero() {
            return f.scaled(&l.recip());
        }
    }
}

/// A random function with norm at most one.
pub fn random_ball_fn(rng: &mut Rng64, space: &FiniteUltraSpace) -> LipFn {
    let f = random_unit_fn(rng, space);
    let t = rat(rng.gen_range(0..=4), 4);
    f.scaled(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_dendrogram;

    #[test]
    fn deterministic_and_valid() {
        let one = gen_space(&RandomSpaceSpec::new(0, 1));
        assert_eq!(one.root(), &DendNode::Leaf(0));
        let a = gen_space(&RandomSpaceSpec::new(42, 8));
        let b = gen_space(&RandomSpaceSpec::new(42, 8));
        assert_eq!(write_dendrogram(&a), write_dendrogram(&b));
        let s = a.to_space().unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.is_ultrametric());
        for seed in 0..50 {
            for n in 1..12 {
                assert_eq!(random_space(seed, n).len(), n);
            }
        }
    }

    #[test]
    fn unit_functions() {
        let s = random_space(3, 6);
        let mut r = rng(1);
        for _ in 0..20 {
            assert_eq!(norm(&s, &random_unit_fn(&mut r, &s)), int(1));
            assert!(norm(&s, &random_ball_fn(&mut r, &s)) <= int(1));
        }
    }
}
