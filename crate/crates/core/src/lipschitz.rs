//! Lipschitz functions, free-space elements and free norms.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::dendrogram::{DendNode, Dendrogram};
use crate::error::{Error, Result};
use crate::lp::{Cmp, LinearProgram, LpOutcome};
use crate::rational::Rational;
use crate::space::{FiniteUltraSpace, BASE};

/// A function on the points of a space vanishing at the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LipFn {
    values: Vec<Rational>,
}

impl LipFn {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        match values.first() {
            None => Err(Error::EmptySpace),
            Some(v) if !v.is_zero() => Err(Error::BaseValueNonzero),
            _ => Ok(Self { values }),
        }
    }

    /// Subtracts the base value from every entry.
    pub fn normalized(mut values: Vec<Rational>) -> Self {
        let b = values[BASE].clone();
        if !b.is_zero() {
            for v in values.iter_mut() {
                *v -= &b;
            }
        }
        Self { values }
    }

    pub fn zero(n: usize) -> Self {
        Self { values: vec![Rational::zero(); n] }
    }

    /// `d(·, p) - d(base, p)`.
    pub fn distance_to(space: &FiniteUltraSpace, p: usize) -> Self {
        Self::normalized((0..space.len()).map(|x| space.d(x, p).clone()).collect())
    }

    /// `d(·, base)`.
    pub fn distance_to_base(space: &FiniteUltraSpace) -> Self {
        Self { values: (0..space.len()).map(|x| space.d(x, BASE).clone()).collect() }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.len(), other.len(), "functions on different spaces");
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { values: self.values.iter().map(|v| -v).collect() }
    }

    /// Composition `self ∘ map`.
    pub fn compose(&self, map: &[usize]) -> Self {
        Self { values: map.iter().map(|&i| self.values[i].clone()).collect() }
    }

    fn check(&self, space: &FiniteUltraSpace) -> Result<()> {
        if self.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

/// `|f(x) - f(y)| / d(x,y)`.
pub fn slope(space: &FiniteUltraSpace, f: &LipFn, x: usize, y: usize) -> Rational {
    (f.value(x) - f.value(y)).abs() / space.d(x, y)
}

/// Lipschitz constant over the pairs of `points`, with the first
/// lexicographic pair attaining it.
pub fn lip_norm_on(space: &FiniteUltraSpace, f: &LipFn, points: &[usize]) -> (Rational, Option<(usize, usize)>) {
    let mut best = Rational::zero();
    let mut arg = None;
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            if arg.is_some() && f.value(x) == f.value(y) {
                continue;
            }
            let s = slope(space, f, x, y);
            if arg.is_none() || s > best {
                best = s;
                arg = Some((x.min(y), x.max(y)));
            }
        }
    }
    (best, arg)
}

/// Exact Lipschitz norm and the first lexicographic pair attaining it.
pub fn lip_norm(space: &FiniteUltraSpace, f: &LipFn) -> Result<(Rational, (usize, usize))> {
    f.check(space)?;
    if space.len() < 2 {
        return Err(Error::SinglePoint);
    }
    let all: Vec<usize> = (0..space.len()).collect();
    let (n, arg) = lip_norm_on(space, f, &all);
    Ok((n, arg.expect("at least one pair")))
}

/// Lipschitz norm, zero on a single-point space.
pub fn norm(space: &FiniteUltraSpace, f: &LipFn) -> Rational {
    let all: Vec<usize> = (0..space.len()).collect();
    lip_norm_on(space, f, &all).0
}

/// An ordered pair `(x, y)` with `f(x) - f(y) = ‖f‖ d(x,y)`.
pub fn norm_attainment(space: &FiniteUltraSpace, f: &LipFn) -> Result<(usize, usize)> {
    f.check(space)?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (_, (x, y)) = lip_norm(space, f)?;
    Ok(if f.value(x) >= f.value(y) { (x, y) } else { (y, x) })
}

/// McShane–Whitney extension `min_a f(a) + L d(·, a)` of the values given
/// on `A`, where `L` is the Lipschitz constant on `A ∪ {base}`.
pub fn mcshane_extend(space: &FiniteUltraSpace, known: &[(usize, Rational)]) -> Result<LipFn> {
    let mut vals: BTreeMap<usize, Rational> = BTreeMap::new();
    vals.insert(BASE, Rational::zero());
    for (x, v) in known {
        if *x >= space.len() {
            return Err(Error::IndexOutOfRange { index: *x, limit: space.len() });
        }
        if *x == BASE && !v.is_zero() {
            return Err(Error::BaseValueNonzero);
        }
        vals.insert(*x, v.clone());
    }
    let pts: Vec<usize> = vals.keys().copied().collect();
    let mut l = Rational::zero();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            let s = (&vals[&x] - &vals[&y]).abs() / space.d(x, y);
            if s > l {
                l = s;
            }
        }
    }
    Ok(mcshane_with_constant(space, &vals, &l))
}

/// McShane–Whitney extension with a prescribed constant `l` no smaller than
/// the Lipschitz constant of the data.
pub fn mcshane_with_constant(space: &FiniteUltraSpace, known: &BTreeMap<usize, Rational>, l: &Rational) -> LipFn {
    let values = (0..space.len())
        .map(|x| match known.get(&x) {
            Some(v) => v.clone(),
            None => known
                .iter()
                .map(|(a, v)| v + l * space.d(x, *a))
                .min()
                .expect("base is known"),
        })
        .collect();
    LipFn::normalized(values)
}

/// Pointwise maximum of functions on a common space.
pub fn sup_combine(fs: &[LipFn]) -> Result<LipFn> {
    let first = fs.first().ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
    if fs.iter().any(|f| f.len() != first.len()) {
        return Err(Error::SpaceMismatch);
    }
    let values = (0..first.len())
        .map(|x| fs.iter().map(|f| f.value(x).clone()).max().expect("nonempty"))
        .collect();
    Ok(LipFn::normalized(values))
}

/// A finitely supported combination of point evaluations, base dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    n: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl FreeElement {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(n: usize, coeffs: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut e = Self::zero(n);
        for (x, c) in coeffs {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, limit: n });
            }
            e.add_term(x, c);
        }
        Ok(e)
    }

    /// `δ_x`.
    pub fn delta(n: usize, x: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term(x, Rational::from_integer(1.into()));
        e
    }

    fn add_term(&mut self, x: usize, c: Rational) {
        if x == BASE {
            return;
        }
        let v = self.coeffs.entry(x).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, x: usize) -> Rational {
        self.coeffs.get(&x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "elements on different spaces");
        let mut e = self.clone();
        for (x, c) in other.terms() {
            e.add_term(x, c.clone());
        }
        e
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut e = Self::zero(self.n);
        for (x, v) in self.terms() {
            e.add_term(x, v * c);
        }
        e
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&Rational::from_integer((-1).into())))
    }

    /// Sum of coefficients (the mass carried away from the base).
    pub fn mass(&self) -> Rational {
        self.coeffs.values().sum()
    }
}

/// `(δ_x - δ_y) / d(x,y)`.
pub fn molecule(space: &FiniteUltraSpace, x: usize, y: usize) -> Result<FreeElement> {
    if x == y {
        return Err(Error::SamePoint);
    }
    let n = space.len();
    if x >= n || y >= n {
        return Err(Error::IndexOutOfRange { index: x.max(y), limit: n });
    }
    let inv = space.d(x, y).recip();
    FreeElement::from_coeffs(n, [(x, inv.clone()), (y, -inv)])
}

/// `Σ μ(x) f(x)`.
pub fn pair(f: &LipFn, mu: &FreeElement) -> Result<Rational> {
    if f.len() != mu.dim() {
        return Err(Error::SpaceMismatch);
    }
    Ok(mu.terms().map(|(x, c)| c * f.value(x)).sum())
}

/// A norming functional for a free element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub f: LipFn,
    pub value: Rational,
}

impl DualCertificate {
    /// Exact check: `‖f‖ <= 1` and `⟨f, μ⟩ = value`.
    pub fn verify(&self, space: &FiniteUltraSpace, mu: &FreeElement) -> bool {
        self.f.len() == space.len()
            && self.f.value(BASE).is_zero()
            && norm(space, &self.f) <= Rational::from_integer(1.into())
            && pair(&self.f, mu).as_ref() == Ok(&self.value)
    }
}

/// Adds `|e(x) - e(y)| <= (bound + t) d(x,y)` for every pair of `points`,
/// where each `e(x)` is affine in the program's variables.
pub fn add_lipschitz_rows(
    lp: &mut LinearProgram,
    space: &FiniteUltraSpace,
    exprs: &[Affine],
    points: &[usize],
    t: Option<usize>,
    bound: &Rational,
) {
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            let d = space.d(x, y);
            let diff = exprs[x].minus(&exprs[y]);
            let cap = bound * d - &diff.constant;
            let neg_cap = bound * d + &diff.constant;
            let mut up = diff.terms.clone();
            let mut down: Vec<(usize, Rational)> = diff.terms.iter().map(|(j, a)| (*j, -a)).collect();
            if let Some(t) = t {
                up.push((t, -d));
                down.push((t, -d));
            }
            lp.add(up, Cmp::Le, cap);
            lp.add(down, Cmp::Le, neg_cap);
        }
    }
}

/// `constant + Σ coeff · x_var`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Affine {
    pub constant: Rational,
    pub terms: Vec<(usize, Rational)>,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Self { constant: c, terms: Vec::new() }
    }

    pub fn var(j: usize) -> Self {
        Self { constant: Rational::zero(), terms: vec![(j, Rational::from_integer(1.into()))] }
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in &self.terms {
            *acc.entry(*j).or_insert_with(Rational::zero) += a;
        }
        for (j, a) in &other.terms {
            *acc.entry(*j).or_insert_with(Rational::zero) -= a;
        }
        Self {
            constant: &self.constant - &other.constant,
            terms: acc.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.constant + self.terms.iter().map(|(j, a)| a * &x[*j]).sum::<Rational>()
    }
}

/// Free norm by exact linear programming over the 1-Lipschitz functions on
/// the support and the base; the optimal functional is extended to the whole
/// space by McShane–Whitney.
pub fn free_norm_lp(space: &FiniteUltraSpace, mu: &FreeElement) -> Result<(Rational, DualCertificate)> {
    if mu.dim() != space.len() {
        return Err(Error::SpaceMismatch);
    }
    let support = mu.support();
    if support.is_empty() {
        let f = LipFn::zero(space.len());
        return Ok((Rational::zero(), DualCertificate { f, value: Rational::zero() }));
    }
    let mut pts = vec![BASE];
    pts.extend(&support);
    let mut var_of = vec![None; space.len()];
    for (k, &x) in support.iter().enumerate() {
        var_of[x] = Some(k);
    }
    let exprs: Vec<Affine> = (0..space.len())
        .map(|x| match var_of[x] {
            Some(k) => Affine::var(k),
            None => Affine::default(),
        })
        .collect();
    let mut lp = LinearProgram::free(support.len());
    add_lipschitz_rows(&mut lp, space, &exprs, &pts, None, &Rational::from_integer(1.into()));
    let obj: Vec<(usize, Rational)> = support.iter().enumerate().map(|(k, &x)| (k, mu.coeff(x))).collect();
    let sol = match lp.maximize(&obj) {
        LpOutcome::Optimal(s) => s,
        other => return Err(Error::Lp(format!("free-norm program ended as {other:?}"))),
    };
    let known: BTreeMap<usize, Rational> = std::iter::once((BASE, Rational::zero()))
        .chain(support.iter().enumerate().map(|(k, &x)| (x, sol.x[k].clone())))
        .collect();
    let f = mcshane_with_constant(space, &known, &Rational::from_integer(1.into()));
    let cert = DualCertificate { f, value: sol.value.clone() };
    if !cert.verify(space, mu) {
        return Err(Error::Lp("certificate failed verification".into()));
    }
    Ok((sol.value, cert))
}

/// Free norm of an element on an ultrametric space via transport along the
/// dendrogram realized as a weighted tree.
pub fn free_norm_tree(space: &FiniteUltraSpace, mu: &FreeElement) -> Result<Rational> {
    if mu.dim() != space.len() {
        return Err(Error::SpaceMismatch);
    }
    let dend = Dendrogram::from_space(space)?;
    Ok(free_norm_on_dendrogram(&dend, mu))
}

/// Tree-flow norm on a dendrogram whose leaf indices match `mu`.
///
/// Leaf edges have length `h(parent)/2` and internal edges
/// `(h(parent) - h(v))/2`; each edge carries the mass on its side away
/// from the base leaf.
pub fn free_norm_on_dendrogram(dend: &Dendrogram, mu: &FreeElement) -> Rational {
    let total = mu.mass();
    // Returns (mass in subtree, contains base).
    fn walk(node: &DendNode, parent_h: Option<&Rational>, mu: &FreeElement, total: &Rational, acc: &mut Rational) -> (Rational, bool) {
        let (mass, has_base) = match node {
            DendNode::Leaf(x) => (mu.coeff(*x), *x == BASE),
            DendNode::Internal { height, children } => {
                let mut m = Rational::zero();
                let mut b = false;
                for c in children {
                    let (cm, cb) = walk(c, Some(height), mu, total, acc);
                    m += cm;
                    b |= cb;
                }
                (m, b)
            }
        };
        if let Some(ph) = parent_h {
            let len = (ph - node.height()) / Rational::from_integer(2.into());
            let flow = if has_base { total - &mass } else { mass.clone() };
            *acc += len * flow.abs();
        }
        (mass, has_base)
    }
    let mut acc = Rational::zero();
    walk(dend.root(), None, mu, &total, &mut acc);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{pair as pair_space, u4, werner_grid};
    use crate::rational::{int, rat};

    fn fixture() -> LipFn {
        LipFn::new(vec![int(0), int(1), rat(3, 4), int(1)]).unwrap()
    }

    #[test]
    fn norms() {
        let s = u4();
        assert_eq!(lip_norm(&s, &LipFn::zero(4)).unwrap().0, int(0));
        assert_eq!(lip_norm(&s, &fixture()).unwrap(), (int(1), (0, 1)));
        let w = werner_grid(4);
        let mut vals: Vec<Rational> = (0..=4).map(|k| rat(k, 4)).collect();
        vals.push(rat(1, 2));
        assert_eq!(lip_norm(&w, &LipFn::new(vals).unwrap()).unwrap().0, int(1));
        let one = FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap();
        assert_eq!(lip_norm(&one, &LipFn::zero(1)), Err(Error::SinglePoint));
        assert_eq!(LipFn::new(vec![int(1)]), Err(Error::BaseValueNonzero));
    }

    #[test]
    fn extension() {
        let s = u4();
        let g = mcshane_extend(&s, &[(1, int(1))]).unwrap();
        assert_eq!(g.values(), [int(0), int(1), int(1), int(1)]);
        let all: Vec<(usize, Rational)> = fixture().values().iter().cloned().enumerate().collect();
        assert_eq!(mcshane_extend(&s, &all).unwrap(), fixture());
        let p = pair_space(int(2));
        assert_eq!(mcshane_extend(&p, &[]).unwrap(), LipFn::zero(2));
    }

    #[test]
    fn pairing_and_molecules() {
        let s = u4();
        let f = fixture();
        let m = molecule(&s, 1, 2).unwrap();
        assert_eq!(m.coeff(1), int(4));
        assert_eq!(m.coeff(2), int(-4));
        assert_eq!(pair(&f, &m).unwrap(), int(1));
        assert_eq!(pair(&f, &FreeElement::zero(4)).unwrap(), int(0));
        assert_eq!(molecule(&s, 2, 1).unwrap(), m.scaled(&int(-1)));
        assert_eq!(molecule(&s, 1, 1), Err(Error::SamePoint));
        assert_eq!(pair(&LipFn::zero(3), &m), Err(Error::SpaceMismatch));
        let e = FreeElement::from_coeffs(4, [(0, int(5)), (1, int(2))]).unwrap();
        assert_eq!(e.support(), vec![1]);
    }

    #[test]
    fn free_norms() {
        let s = u4();
        let n = 4;
        let d = |x| FreeElement::delta(n, x);
        for (mu, want) in [
            (d(1), int(1)),
            (d(1).minus(&d(2)), rat(1, 4)),
            (d(1).plus(&d(2)), int(2)),
            (FreeElement::zero(n), int(0)),
        ] {
            let (v, cert) = free_norm_lp(&s, &mu).unwrap();
            assert_eq!(v, want);
            assert!(cert.verify(&s, &mu));
            assert_eq!(free_norm_tree(&s, &mu).unwrap(), want);
        }
        let ab = d(1).plus(&d(2));
        let (_, cert) = free_norm_lp(&s, &ab).unwrap();
        assert_eq!(cert.f.value(1), &int(1));
        assert_eq!(cert.f.value(2), &int(1));
    }

    #[test]
    fn tree_norm_needs_ultrametric() {
        let w = werner_grid(2);
        assert_eq!(free_norm_tree(&w, &FreeElement::delta(w.len(), 1)), Err(Error::NotUltrametric));
        assert_eq!(free_norm_lp(&w, &FreeElement::delta(w.len(), 2)).unwrap().0, int(1));
    }

    #[test]
    fn attainment_and_sup() {
        let s = u4();
        assert_eq!(norm_attainment(&s, &fixture()).unwrap(), (1, 0));
        assert_eq!(norm_attainment(&s, &LipFn::distance_to_base(&s)).unwrap(), (1, 0));
        assert_eq!(norm_attainment(&s, &LipFn::zero(4)), Err(Error::ZeroFunction));
        let f = fixture();
        assert_eq!(sup_combine(std::slice::from_ref(&f)).unwrap(), f);
        let abs = sup_combine(&[f.clone(), f.neg()]).unwrap();
        assert_eq!(abs, f);
        assert!(norm(&s, &abs) <= norm(&s, &f));
        assert_eq!(sup_combine(&[f, LipFn::zero(3)]), Err(Error::SpaceMismatch));
    }
}
