//! Retractions onto enumeration prefixes and the quantities built on them.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lipschitz::{lip_norm_on, mcshane_extend, slope, LipFn};
use crate::rational::Rational;
use crate::space::{FiniteUltraSpace, BASE};

/// A one-to-one listing `s_1 = base, s_2, ...` of the points of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    space: FiniteUltraSpace,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Enumeration {
    pub fn new(space: &FiniteUltraSpace, order: Vec<usize>) -> Result<Self> {
        let n = space.len();
        if order.len() != n {
            return Err(Error::InvalidArgument(format!("order lists {} of {n} points", order.len())));
        }
        if order.first() != Some(&BASE) {
            return Err(Error::InvalidArgument("enumeration must start at the base point".into()));
        }
        let mut pos = vec![usize::MAX; n];
        for (k, &x) in order.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return Err(Error::InvalidArgument("order is not a permutation".into()));
            }
            pos[x] = k;
        }
        Ok(Self { space: space.clone(), order, pos })
    }

    /// Index order.
    pub fn natural(space: &FiniteUltraSpace) -> Self {
        Self::new(space, (0..space.len()).collect()).expect("identity order is valid")
    }

    pub fn from_labels(space: &FiniteUltraSpace, labels: &[&str]) -> Result<Self> {
        let order = labels.iter().map(|l| space.lookup(l)).collect::<Result<Vec<_>>>()?;
        Self::new(space, order)
    }

    pub fn space(&self) -> &FiniteUltraSpace {
        &self.space
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `s_k` for `1 <= k <= len`.
    pub fn s(&self, k: usize) -> usize {
        self.order[k - 1]
    }

    /// The `k` with `s_k = x`.
    pub fn index_of(&self, x: usize) -> usize {
        self.pos[x] + 1
    }

    /// `S_n`.
    pub fn prefix(&self, n: usize) -> &[usize] {
        &self.order[..n]
    }
}

/// The maps `r_n` for `1 <= n <= N_max`, where `N_max` is the point count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionFamily {
    enumeration: Enumeration,
    maps: Vec<Vec<usize>>,
}

impl RetractionFamily {
    pub fn new(enumeration: Enumeration) -> Self {
        let s = &enumeration.space;
        let n = s.len();
        let mut maps = Vec::with_capacity(n);
        for m in 1..=n {
            let prefix = enumeration.prefix(m);
            let map = (0..n)
                .map(|x| {
                    // First minimizer in enumeration order is s_{min I_m(x)}.
                    let mut best = prefix[0];
                    for &p in &prefix[1..] {
                        if s.d(x, p) < s.d(x, best) {
                            best = p;
                        }
                    }
                    best
                })
                .collect();
            maps.push(map);
        }
        Self { enumeration, maps }
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn space(&self) -> &FiniteUltraSpace {
        &self.enumeration.space
    }

    pub fn n_max(&self) -> usize {
        self.maps.len()
    }

    /// `r_n` as a point map.
    pub fn map(&self, n: usize) -> &[usize] {
        &self.maps[n - 1]
    }

    pub fn retract(&self, n: usize, x: usize) -> Result<usize> {
        if n == 0 || n > self.n_max() {
            return Err(Error::IndexOutOfRange { index: n, limit: self.n_max() });
        }
        if x >= self.space().len() {
            return Err(Error::IndexOutOfRange { index: x, limit: self.space().len() });
        }
        Ok(self.maps[n - 1][x])
    }
}

/// Checks that each `r_n` fixes `S_n`, is 1-Lipschitz, and that
/// `r_n ∘ r_m = r_{min(n,m)}`. Returns the first violation.
pub fn check_retraction_laws(family: &RetractionFamily) -> Option<String> {
    let s = family.space();
    let e = family.enumeration();
    let nmax = family.n_max();
    for n in 1..=nmax {
        let r = family.map(n);
        if let Some(&x) = e.prefix(n).iter().find(|&&x| r[x] != x) {
            return Some(format!("r_{n} moves {x} in S_{n}"));
        }
        for (x, y) in s.pairs() {
            if s.d(r[x], r[y]) > s.d(x, y) {
                return Some(format!("r_{n} expands the pair ({x},{y})"));
            }
        }
        for m in 1..=nmax {
            let rm = family.map(m);
            let rk = family.map(n.min(m));
            if let Some(x) = (0..s.len()).find(|&x| r[rm[x]] != rk[x]) {
                return Some(format!("r_{n}∘r_{m} differs from r_{} at {x}", n.min(m)));
            }
        }
    }
    None
}

/// Smallest `N` such that `r_N(x) = r_N(y)` forces
/// `|f(x) - f(y)| <= eps d(x,y)`, with a pair that rules out `N - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YWitness {
    pub n: usize,
    pub blocking: Option<(usize, usize)>,
}

fn first_violation(family: &RetractionFamily, f: &LipFn, eps: &Rational, n: usize) -> Option<(usize, usize)> {
    let s = family.space();
    let r = family.map(n);
    s.pairs().find(|&(x, y)| r[x] == r[y] && (f.value(x) - f.value(y)).abs() > eps * s.d(x, y))
}

pub fn y_witness(family: &RetractionFamily, f: &LipFn, eps: &Rational) -> Result<YWitness> {
    if eps.is_negative() {
        return Err(Error::InvalidArgument("eps must be nonnegative".into()));
    }
    if f.len() != family.space().len() {
        return Err(Error::SpaceMismatch);
    }
    let mut blocking = None;
    for n in 1..=family.n_max() {
        match first_violation(family, f, eps, n) {
            None => return Ok(YWitness { n, blocking }),
            Some(p) => blocking = Some(p),
        }
    }
    unreachable!("r_N_max is the identity");
}

/// `g = f̂ ∘ r_N` for the least `N` with `A ⊆ S_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormingLift {
    pub n: usize,
    pub g: LipFn,
    /// Lipschitz constant of the data on `A ∪ {base}`.
    pub data_norm: Rational,
}

pub fn norming_lift(family: &RetractionFamily, known: &[(usize, Rational)]) -> Result<NormingLift> {
    let s = family.space();
    let e = family.enumeration();
    let mut n = 1;
    for (x, v) in known {
        if *x >= s.len() {
            return Err(Error::IndexOutOfRange { index: *x, limit: s.len() });
        }
        if *x == BASE && !v.is_zero() {
            return Err(Error::BaseValueNonzero);
        }
        n = n.max(e.index_of(*x));
    }
    let hat = mcshane_extend(s, known)?;
    let g = hat.compose(family.map(n));
    let mut pts: Vec<usize> = std::iter::once(BASE).chain(known.iter().map(|(x, _)| *x)).collect();
    pts.sort_unstable();
    pts.dedup();
    let (data_norm, _) = lip_norm_on(s, &hat, &pts);
    Ok(NormingLift { n, g, data_norm })
}

/// Ratio bound over the pairs that are either closer than `delta` or leave
/// the closed ball `B[base, r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessProfile {
    pub eps: Rational,
    pub delta: Rational,
    pub r: Rational,
}

/// Smallest `eps` for which `f` is `(eps, delta, r)`-flat.
pub fn flatness_profile(space: &FiniteUltraSpace, f: &LipFn, delta: &Rational, r: &Rational) -> Rational {
    let mut eps = Rational::zero();
    for (x, y) in space.pairs() {
        let outside = space.d(x, BASE) > r || space.d(y, BASE) > r;
        if space.d(x, y) < delta || outside {
            let s = slope(space, f, x, y);
            if s > eps {
                eps = s;
            }
        }
    }
    eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::u4;
    use crate::lipschitz::norm;
    use crate::presented::builtin;
    use crate::rational::{int, rat};

    fn u4_family() -> RetractionFamily {
        RetractionFamily::new(Enumeration::from_labels(&u4(), &["0", "a", "b", "c"]).unwrap())
    }

    #[test]
    fn e1_retraction() {
        let s = builtin("e1_not_sc").unwrap().truncate(6).unwrap();
        let fam = RetractionFamily::new(Enumeration::natural(&s));
        assert_eq!(fam.retract(2, 5).unwrap(), 1);
        for k in 1..=6 {
            for n in k..=6 {
                assert_eq!(fam.retract(n, k - 1).unwrap(), k - 1);
            }
        }
        assert!((0..6).all(|x| fam.retract(1, x).unwrap() == 0));
        assert!(fam.retract(0, 1).is_err());
        assert!(fam.retract(7, 1).is_err());
    }

    #[test]
    fn laws() {
        assert_eq!(check_retraction_laws(&u4_family()), None);
        let one = FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap();
        assert_eq!(check_retraction_laws(&RetractionFamily::new(Enumeration::natural(&one))), None);
        let e1 = builtin("e1_not_sc").unwrap().truncate(10).unwrap();
        assert_eq!(check_retraction_laws(&RetractionFamily::new(Enumeration::natural(&e1))), None);
    }

    #[test]
    fn enumeration_validation() {
        let s = u4();
        assert!(Enumeration::new(&s, vec![1, 0, 2, 3]).is_err());
        assert!(Enumeration::new(&s, vec![0, 1, 1, 3]).is_err());
        assert!(Enumeration::new(&s, vec![0, 1, 2]).is_err());
        assert!(Enumeration::from_labels(&s, &["0", "a", "b", "z"]).is_err());
    }

    #[test]
    fn witnesses() {
        let fam = u4_family();
        assert_eq!(y_witness(&fam, &LipFn::zero(4), &rat(1, 2)).unwrap().n, 1);
        let f = LipFn::new(vec![int(0), int(1), int(1), int(1)]).unwrap();
        // r_3 still sends c to the base, so only the identity map works.
        let w = y_witness(&fam, &f, &rat(1, 2)).unwrap();
        assert_eq!(w.n, 4);
        assert_eq!(w.blocking, Some((0, 3)));
        assert_eq!(y_witness(&fam, &f, &int(1)).unwrap().n, 1);

        let e1 = builtin("e1_not_sc").unwrap().truncate(12).unwrap();
        let fam = RetractionFamily::new(Enumeration::natural(&e1));
        let w = y_witness(&fam, &LipFn::distance_to_base(&e1), &rat(1, 10)).unwrap();
        assert!(w.n <= 12);
    }

    #[test]
    fn lifts() {
        let fam = u4_family();
        let l = norming_lift(&fam, &[]).unwrap();
        assert_eq!((l.n, l.g.is_zero()), (1, true));
        let l = norming_lift(&fam, &[(1, int(1))]).unwrap();
        assert_eq!(l.n, 2);
        assert_eq!(l.g.values(), [int(0), int(1), int(1), int(0)]);
        assert_eq!(norm(fam.space(), &l.g), int(1));
        assert_eq!(l.data_norm, int(1));
        assert_eq!(norming_lift(&fam, &[(0, int(1))]), Err(Error::BaseValueNonzero));

        let dn = builtin("discrete_n").unwrap().truncate(6).unwrap();
        let fam = RetractionFamily::new(Enumeration::natural(&dn));
        let l = norming_lift(&fam, &[(1, int(1))]).unwrap();
        assert_eq!(l.g.values(), [int(0), int(1), int(0), int(0), int(0), int(0)]);
        assert_eq!(norm(&dn, &l.g), int(1));
    }

    #[test]
    fn flatness() {
        let s = u4();
        let f = LipFn::new(vec![int(0), int(1), rat(3, 4), int(1)]).unwrap();
        assert_eq!(flatness_profile(&s, &LipFn::zero(4), &rat(1, 2), &int(2)), int(0));
        assert_eq!(flatness_profile(&s, &f, &rat(1, 2), &int(2)), int(1));
        assert_eq!(flatness_profile(&s, &f, &rat(1, 8), &int(2)), int(0));
    }
}
