//! Nested center sets `C_n`, nearest-center maps `φ_n` and change trails.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};
use crate::space::{FiniteUltraSpace, BASE};

/// Center sets `C_n` for `n_lo <= n <= n_hi`, built greedily in index order.
///
/// Levels below `n_lo` behave like `n_lo` (only the base) and levels above
/// `n_hi` like `n_hi` (every point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionChain {
    space: FiniteUltraSpace,
    q: Rational,
    n_lo: i64,
    n_hi: i64,
    centers: Vec<Vec<usize>>,
    /// `phi[n - n_lo][x]`.
    phi: Vec<Vec<usize>>,
}

/// Largest `n` with `q^n > m` (for `m > 0`).
fn largest_above(q: &Rational, m: &Rational) -> i64 {
    let mut n = 0i64;
    if Rational::one() > *m {
        while pow(q, n + 1) > *m {
            n += 1;
        }
    } else {
        while pow(q, n) <= *m {
            n -= 1;
        }
    }
    n
}

/// Smallest `n` with `q^n <= m` (for `m > 0`).
fn smallest_at_most(q: &Rational, m: &Rational) -> i64 {
    largest_above(q, m) + 1
}

impl PartitionChain {
    pub fn build(space: &FiniteUltraSpace, q: &Rational) -> Result<Self> {
        space.require_ultrametric()?;
        if !q.is_positive() || *q >= Rational::one() {
            return Err(Error::QOutOfRange);
        }
        let (n_lo, n_hi) = match space.min_positive_distance() {
            None => (0, 0),
            Some(min) => (largest_above(q, &space.max_distance_to_base()), smallest_at_most(q, &min)),
        };
        let mut centers = Vec::new();
        let mut phi = Vec::new();
        for n in n_lo..=n_hi {
            let r = pow(q, n);
            let mut c: Vec<usize> = Vec::new();
            for x in 0..space.len() {
                if c.iter().all(|&y| *space.d(x, y) >= r) {
                    c.push(x);
                }
            }
            let map = (0..space.len())
                .map(|x| *c.iter().find(|&&y| *space.d(x, y) < r).expect("levels cover the space"))
                .collect();
            centers.push(c);
            phi.push(map);
        }
        Ok(Self { space: space.clone(), q: q.clone(), n_lo, n_hi, centers, phi })
    }

    pub fn space(&self) -> &FiniteUltraSpace {
        &self.space
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn n_lo(&self) -> i64 {
        self.n_lo
    }

    pub fn n_hi(&self) -> i64 {
        self.n_hi
    }

    /// `q^n`.
    pub fn radius(&self, n: i64) -> Rational {
        pow(&self.q, n)
    }

    fn slot(&self, n: i64) -> usize {
        (n.clamp(self.n_lo, self.n_hi) - self.n_lo) as usize
    }

    /// `C_n`, clamped to the stored range.
    pub fn centers(&self, n: i64) -> &[usize] {
        &self.centers[self.slot(n)]
    }

    /// The unique center of `C_n` within `q^n` of `x`.
    pub fn phi(&self, n: i64, x: usize) -> usize {
        self.phi[self.slot(n)][x]
    }

    pub fn trail(&self, x: usize) -> PhiTrail {
        let mut levels = Vec::new();
        let mut points = vec![BASE];
        for n in self.n_lo + 1..=self.n_hi {
            let p = self.phi(n, x);
            if p != self.phi(n - 1, x) {
                levels.push(n);
                points.push(p);
            }
        }
        PhiTrail { point: x, levels, points }
    }
}

/// The change levels `I_x = {n_1 < n_2 < ...}` and the trail
/// `𝔰(x) = (x_0 = base, x_1, ..., x_m)` with `x_k = φ_{n_k}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTrail {
    pub point: usize,
    pub levels: Vec<i64>,
    pub points: Vec<usize>,
}

impl PhiTrail {
    /// `m_x = |I_x|`.
    pub fn m(&self) -> usize {
        self.levels.len()
    }

    /// `i_x(k)`; `i_x(0) = n_1 - 1`, or 0 for the base point.
    pub fn level(&self, k: usize) -> i64 {
        if k == 0 {
            self.levels.first().map_or(0, |n1| n1 - 1)
        } else {
            self.levels[k - 1]
        }
    }

    pub fn distances(&self, space: &FiniteUltraSpace) -> Vec<Rational> {
        self.points.iter().map(|&p| space.d(p, self.point).clone()).collect()
    }
}

/// Tail sum `Σ_{l>=K} d(x_l, x)` against `d(x_K, x) / (q(1-q))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricBound {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

pub fn geometric_bound(chain: &PartitionChain, trail: &PhiTrail, k: usize) -> Result<GeometricBound> {
    if k >= trail.m() {
        return Err(Error::IndexOutOfRange { index: k, limit: trail.m() });
    }
    let d = trail.distances(chain.space());
    let lhs: Rational = d[k..].iter().sum();
    let q = chain.q();
    let rhs = &d[k] / (q * (Rational::one() - q));
    let holds = lhs <= rhs;
    Ok(GeometricBound { lhs, rhs, holds })
}

/// An index `K` such that the trails of `x` and `y` agree, with equal
/// distances, strictly before `K` and `max(d(x_K,x), d(y_K,y)) <= d(x,y)`.
pub fn meet_first(chain: &PartitionChain, x: usize, y: usize) -> Result<usize> {
    if x == y {
        return Err(Error::SamePoint);
    }
    let s = chain.space();
    let dxy = s.d(x, y);
    if s.d(BASE, x) <= dxy {
        return Ok(0);
    }
    let n = (chain.n_lo..=chain.n_hi)
        .find(|&n| s.d(chain.phi(n, x), x) <= dxy)
        .expect("the top level is the identity");
    let tx = chain.trail(x);
    let k = tx.levels.iter().position(|&l| l == n).expect("first good level is a change level");
    Ok(k + 1)
}

/// An index `K` such that the trails agree up to and including `K` and
/// `max(d(x_K,x), d(y_K,y)) <= d(x,y)/q`.
pub fn meet_second(chain: &PartitionChain, x: usize, y: usize) -> Result<usize> {
    if x == y {
        return Err(Error::SamePoint);
    }
    let n = (chain.n_lo..=chain.n_hi)
        .find(|&n| chain.phi(n, x) != chain.phi(n, y))
        .expect("the top level separates points");
    let p = if chain.phi(n, x) != chain.phi(n - 1, x) { x } else { y };
    let t = chain.trail(p);
    let k = t.levels.iter().position(|&l| l == n).expect("split level is a change level");
    Ok(k)
}

/// Checks the covering, separation, nesting and base conditions of the
/// chain at every level. Returns the first failure.
pub fn check_chain(chain: &PartitionChain) -> Option<String> {
    let s = chain.space();
    for n in chain.n_lo..=chain.n_hi {
        let c = chain.centers(n);
        let r = chain.radius(n);
        if !c.contains(&BASE) {
            return Some(format!("base missing from C_{n}"));
        }
        if n < chain.n_hi && !c.iter().all(|x| chain.centers(n + 1).contains(x)) {
            return Some(format!("C_{n} not contained in C_{}", n + 1));
        }
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                if *s.d(a, b) < r {
                    return Some(format!("centers {a},{b} of C_{n} closer than q^n"));
                }
            }
        }
        for x in 0..s.len() {
            let within = c.iter().filter(|&&y| *s.d(x, y) < r).count();
            if within != 1 {
                return Some(format!("point {x} has {within} centers of C_{n} within q^n"));
            }
        }
    }
    if chain.centers(chain.n_lo) != [BASE] {
        return Some("lowest level is not the base alone".into());
    }
    if chain.centers(chain.n_hi).len() != s.len() {
        return Some("highest level is not the whole space".into());
    }
    None
}

/// Checks the five structural laws of the maps `φ_n` on a level/pair.
pub fn check_phi_laws(chain: &PartitionChain, n: i64, x: usize, y: usize) -> Option<String> {
    let s = chain.space();
    let (px, py) = (chain.phi(n, x), chain.phi(n, y));
    let (dx, dy) = (s.d(px, x), s.d(py, y));
    let dxy = s.d(x, y);
    let mx = if dx >= dy { dx } else { dy };
    let fail = |what: &str| Some(format!("{what} fails at n={n}, x={x}, y={y}"));
    if chain.phi(n, chain.phi(n + 1, x)) != px {
        return fail("φ_n∘φ_{n+1} = φ_n");
    }
    if (px == py) != (dxy <= mx) {
        return fail("equal images iff d(x,y) <= max offset");
    }
    if (dx <= dxy || dy <= dxy) && mx > dxy {
        return fail("offset domination");
    }
    if px != py && !(s.d(px, y) == dxy && s.d(py, x) == dxy && *dxy >= chain.radius(n)) {
        return fail("distinct images are isosceles at scale q^n");
    }
    if dxy < mx && dx != dy {
        return fail("equal offsets when close");
    }
    None
}

/// Checks the change-set characterization, the monotone trail distances,
/// finiteness and the prefix compatibility of trails for one point.
pub fn check_trail_laws(chain: &PartitionChain, x: usize) -> Option<String> {
    let s = chain.space();
    let t = chain.trail(x);
    let fail = |what: &str| Some(format!("{what} fails at x={x}"));
    if t.levels.is_empty() != (x == BASE) {
        return fail("empty change set iff base");
    }
    for n in chain.n_lo + 1..=chain.n_hi {
        let changed = chain.phi(n, x) != chain.phi(n - 1, x);
        let d = s.d(chain.phi(n - 1, x), x);
        let window = chain.radius(n) <= *d && *d < chain.radius(n - 1);
        if changed != window {
            return fail("change level window");
        }
    }
    if let Some(&n1) = t.levels.first() {
        let d0 = s.d(BASE, x);
        if !(chain.radius(n1) <= *d0 && *d0 < chain.radius(n1 - 1)) {
            return fail("first change level brackets d(x,0)");
        }
    }
    if *t.points.last().expect("trail is nonempty") != x {
        return fail("finite trail ends at x");
    }
    let d = t.distances(s);
    if d.windows(2).any(|w| w[1] >= w[0]) {
        return fail("trail distances strictly decrease");
    }
    for k in 1..=t.m() {
        let dk = &d[k - 1];
        let nk = t.levels[k - 1];
        if !(chain.radius(nk) <= *dk && *dk < chain.radius(nk - 1)) {
            return fail("trail scale bracket");
        }
    }
    for k in 0..t.m() {
        let sub = chain.trail(t.points[k]);
        if sub.points != t.points[..=k] {
            return fail("prefix compatibility");
        }
    }
    None
}

/// Checks the tail-sum bound for every admissible `K` and both meet
/// indices against every other point.
pub fn check_meet_laws(chain: &PartitionChain, x: usize) -> Result<Option<String>> {
    let s = chain.space();
    let tx = chain.trail(x);
    for k in 0..tx.m() {
        let g = geometric_bound(chain, &tx, k)?;
        if !g.holds {
            return Ok(Some(format!("tail bound fails at x={x}, K={k}")));
        }
    }
    let dx = tx.distances(s);
    for y in 0..s.len() {
        if y == x {
            continue;
        }
        let ty = chain.trail(y);
        let dy = ty.distances(s);
        let dxy = s.d(x, y);
        let k = meet_first(chain, x, y)?;
        let ok = k <= tx.m()
            && k <= ty.m()
            && (0..k).all(|i| tx.points[i] == ty.points[i] && dx[i] == dy[i])
            && dx[k] <= *dxy
            && dy[k] <= *dxy;
        if !ok {
            return Ok(Some(format!("first meet index fails at x={x}, y={y}")));
        }
        let k = meet_second(chain, x, y)?;
        let bound = dxy / chain.q();
        let ok = k <= tx.m()
            && k <= ty.m()
            && (0..=k).all(|i| tx.points[i] == ty.points[i])
            && dx[k] <= bound
            && dy[k] <= bound;
        if !ok {
            return Ok(Some(format!("second meet index fails at x={x}, y={y}")));
        }
    }
    Ok(None)
}

/// Runs every chain, `φ`, trail and meet check on one chain.
pub fn check_all(chain: &PartitionChain) -> Result<Option<String>> {
    if let Some(e) = check_chain(chain) {
        return Ok(Some(e));
    }
    let n = chain.space().len();
    for x in 0..n {
        for lvl in chain.n_lo - 1..=chain.n_hi {
            for y in 0..n {
                if let Some(e) = check_phi_laws(chain, lvl, x, y) {
                    return Ok(Some(e));
                }
            }
        }
        if let Some(e) = check_trail_laws(chain, x) {
            return Ok(Some(e));
        }
        if let Some(e) = check_meet_laws(chain, x)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{pair, u4};
    use crate::rational::{int, rat};

    fn u4_chain() -> PartitionChain {
        PartitionChain::build(&u4(), &rat(1, 2)).unwrap()
    }

    #[test]
    fn u4_levels() {
        let c = u4_chain();
        assert_eq!((c.n_lo(), c.n_hi()), (-1, 2));
        assert_eq!(c.centers(-1), [0]);
        assert_eq!(c.centers(0), [0, 1, 3]);
        assert_eq!(c.centers(1), [0, 1, 3]);
        assert_eq!(c.centers(2), [0, 1, 2, 3]);
        assert_eq!(c.centers(-5), [0]);
        assert_eq!(c.centers(9).len(), 4);
        assert_eq!(check_all(&c).unwrap(), None);
    }

    #[test]
    fn degenerate_chains() {
        let one = FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap();
        let c = PartitionChain::build(&one, &rat(1, 3)).unwrap();
        assert_eq!(c.centers(0), [0]);
        assert_eq!(c.centers(7), [0]);

        let c = PartitionChain::build(&pair(int(1)), &rat(1, 2)).unwrap();
        assert_eq!(c.centers(-1), [0]);
        assert_eq!(c.centers(0), [0, 1]);

        assert_eq!(PartitionChain::build(&u4(), &int(1)), Err(Error::QOutOfRange));
        assert_eq!(PartitionChain::build(&u4(), &int(0)), Err(Error::QOutOfRange));
    }

    #[test]
    fn phi_values() {
        let c = u4_chain();
        assert_eq!(c.phi(0, 2), 1);
        assert_eq!(c.phi(-1, 2), 0);
        assert_eq!(c.phi(0, 3), 3);
        assert_eq!(c.phi(2, 2), 2);
    }

    #[test]
    fn trails() {
        let c = u4_chain();
        let tb = c.trail(2);
        assert_eq!(tb.levels, vec![0, 2]);
        assert_eq!(tb.points, vec![0, 1, 2]);
        assert_eq!(tb.distances(c.space()), vec![int(1), rat(1, 4), int(0)]);
        assert_eq!(tb.level(0), -1);
        let t0 = c.trail(0);
        assert!(t0.levels.is_empty());
        assert_eq!(t0.points, vec![0]);
        assert_eq!(t0.level(0), 0);
        let tc = c.trail(3);
        assert_eq!(tc.levels, vec![0]);
        assert_eq!(tc.points, vec![0, 3]);
    }

    #[test]
    fn geometric_bounds() {
        let c = u4_chain();
        let tb = c.trail(2);
        let g = geometric_bound(&c, &tb, 0).unwrap();
        assert_eq!((g.lhs, g.rhs, g.holds), (rat(5, 4), int(4), true));
        let g = geometric_bound(&c, &tb, 1).unwrap();
        assert_eq!((g.lhs, g.rhs), (rat(1, 4), int(1)));
        assert!(geometric_bound(&c, &tb, 2).is_err());
        let g = geometric_bound(&c, &c.trail(3), 0).unwrap();
        assert!(g.holds);
        assert_eq!(g.lhs, int(1));
    }

    #[test]
    fn meet_indices() {
        let c = u4_chain();
        assert_eq!(meet_first(&c, 1, 2).unwrap(), 1);
        assert_eq!(meet_first(&c, 1, 3).unwrap(), 0);
        assert_eq!(meet_second(&c, 1, 3).unwrap(), 0);
        assert_eq!(meet_first(&c, 1, 1), Err(Error::SamePoint));
        assert_eq!(meet_second(&c, 2, 2), Err(Error::SamePoint));
    }
}
