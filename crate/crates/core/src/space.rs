//! Validated pointed finite metric spaces.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{max_of, Rational};

/// Index of the distinguished base point.
pub const BASE: usize = 0;

/// A pointed finite metric space with exact distances.
///
/// Point `0` is the base point. The ultrametric flag is decided once, by an
/// exhaustive triple check, when the space is validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteUltraSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
    strong_violation: Option<(usize, usize, usize)>,
}

/// Open `B(x, r)` or closed `B[x, r]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallKind {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSpec {
    pub center: usize,
    pub radius: Rational,
    pub kind: BallKind,
}

impl FiniteUltraSpace {
    /// Checks the metric axioms and decides whether the strong triangle
    /// inequality holds.
    pub fn validate(matrix: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if labels.len() != n {
            return Err(Error::LabelMismatch { labels: labels.len(), rows: n });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
            }
        }
        for i in 0..n {
            if !matrix[i][i].is_zero() {
                return Err(Error::DiagonalNonzero(i));
            }
            for j in 0..n {
                if matrix[i][j].is_negative() {
                    return Err(Error::NegativeDistance(i, j));
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::AsymmetricMatrix(i.min(j), i.max(j)));
                }
                if i != j && matrix[i][j].is_zero() {
                    return Err(Error::ZeroOffDiagonal(i.min(j), i.max(j)));
                }
            }
        }
        let mut strong_violation = None;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (dik, dij, djk) = (&matrix[i][k], &matrix[i][j], &matrix[j][k]);
                    if *dik > dij + djk {
                        return Err(Error::TriangleViolation(i, j, k));
                    }
                    if strong_violation.is_none() && dik > dij && dik > djk {
                        strong_violation = Some((i, j, k));
                    }
                }
            }
        }
        Ok(Self { labels, dist: matrix, strong_violation })
    }

    /// Builds a space whose labels are `0, 1, …, n-1`.
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (0..matrix.len()).map(|i| i.to_string()).collect();
        Self::validate(matrix, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Like [`index_of`](Self::index_of) but with a typed error.
    pub fn lookup(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn is_ultrametric(&self) -> bool {
        self.strong_violation.is_none()
    }

    /// First triple `(x, z, y)` with `d(x,y) > max{d(x,z), d(z,y)}`.
    pub fn ultrametric_witness(&self) -> Option<(usize, usize, usize)> {
        self.strong_violation
    }

    pub fn require_ultrametric(&self) -> Result<()> {
        if self.is_ultrametric() {
            Ok(())
        } else {
            Err(Error::NotUltrametric)
        }
    }

    /// Unordered pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn in_ball(&self, y: usize, ball: &BallSpec) -> bool {
        let d = self.d(ball.center, y);
        match ball.kind {
            BallKind::Open => *d < ball.radius,
            BallKind::Closed => *d <= ball.radius,
        }
    }

    pub fn ball(&self, ball: &BallSpec) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.in_ball(y, ball)).collect()
    }

    /// `B(x, r)`.
    pub fn open_ball(&self, x: usize, r: &Rational) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.d(x, y) < r).collect()
    }

    /// `B[x, r]`.
    pub fn closed_ball(&self, x: usize, r: &Rational) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.d(x, y) <= r).collect()
    }

    pub fn diameter(&self) -> Rational {
        self.pairs().map(|(i, j)| self.d(i, j).clone()).max().unwrap_or_else(Rational::zero)
    }

    pub fn max_distance_to_base(&self) -> Rational {
        self.dist[BASE].iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_positive_distance(&self) -> Option<Rational> {
        self.pairs().map(|(i, j)| self.d(i, j).clone()).min()
    }

    /// Sorted distinct distances realized from `x` (including 0).
    pub fn realized_from(&self, x: usize) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.dist[x].clone();
        v.sort();
        v.dedup();
        v
    }

    /// Restriction to the listed points, keeping their relative order. The
    /// first listed point becomes the base.
    pub fn restrict(&self, points: &[usize]) -> Result<Self> {
        let matrix = points
            .iter()
            .map(|&i| points.iter().map(|&j| self.d(i, j).clone()).collect())
            .collect();
        let labels = points.iter().map(|&i| self.labels[i].clone()).collect();
        Self::validate(matrix, labels)
    }
}

/// Outcome of a single ball fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    Holds,
    /// The hypothesis of the implication is false for this tuple.
    Vacuous,
    Violated(String),
}

impl Fact {
    pub fn ok(&self) -> bool {
        !matches!(self, Fact::Violated(_))
    }
}

/// The four elementary facts about balls in an ultrametric space, evaluated on
/// one tuple `(x, y, z, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallFacts {
    /// `d(x,z) != d(y,z)` implies `d(x,y) = max{d(x,z), d(y,z)}`.
    pub isosceles: Fact,
    /// `y ∈ B(x,r)`, `z ∉ B(x,r)` implies `d(y,z) >= r`.
    pub separation: Fact,
    /// `d(x,y) < r` implies `B(x,r) = B(y,r)`.
    pub recentering: Fact,
    /// `B(x,r)` is clopen: it equals a closed ball `B[x,r']` and every point
    /// outside it is at distance at least `r` from every point inside.
    pub clopen: Fact,
}

impl BallFacts {
    pub fn all_ok(&self) -> bool {
        [&self.isosceles, &self.separation, &self.recentering, &self.clopen]
            .iter()
            .all(|f| f.ok())
    }
}

pub fn ultrametric_ball_facts(
    space: &FiniteUltraSpace,
    x: usize,
    y: usize,
    z: usize,
    r: &Rational,
) -> Result<BallFacts> {
    space.require_ultrametric()?;
    let n = space.len();
    for p in [x, y, z] {
        if p >= n {
            return Err(Error::IndexOutOfRange { index: p, limit: n });
        }
    }
    if !r.is_positive() {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let d = |a: usize, b: usize| space.d(a, b);

    let isosceles = if d(x, z) == d(y, z) {
        Fact::Vacuous
    } else if *d(x, y) == max_of(d(x, z), d(y, z)) {
        Fact::Holds
    } else {
        Fact::Violated(format!("d(x,y) = {} is not the max", d(x, y)))
    };

    let separation = if d(x, y) < r && d(x, z) >= r {
        if d(y, z) >= r {
            Fact::Holds
        } else {
            Fact::Violated(format!("d(y,z) = {} < r", d(y, z)))
        }
    } else {
        Fact::Vacuous
    };

    let recentering = if d(x, y) < r {
        if space.open_ball(x, r) == space.open_ball(y, r) {
            Fact::Holds
        } else {
            Fact::Violated("B(x,r) != B(y,r)".into())
        }
    } else {
        Fact::Vacuous
    };

    let ball = space.open_ball(x, r);
    let inner_radius = ball.iter().map(|&p| d(x, p).clone()).max().unwrap_or_else(Rational::zero);
    let clopen = if space.closed_ball(x, &inner_radius) != ball {
        Fact::Violated(format!("B(x,r) differs from B[x,{inner_radius}]"))
    } else {
        let inside: HashSet<usize> = ball.iter().copied().collect();
        let gap = ball
            .iter()
            .flat_map(|&p| (0..n).filter(|q| !inside.contains(q)).map(move |q| (p, q)))
            .find(|&(p, q)| d(p, q) < r);
        match gap {
            Some((p, q)) => Fact::Violated(format!("boundary pair ({p},{q}) closer than r")),
            None => Fact::Holds,
        }
    };

    Ok(BallFacts { isosceles, separation, recentering, clopen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::u4;
    use crate::rational::{int, rat};

    #[test]
    fn single_point_is_ultrametric() {
        let s = FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap();
        assert!(s.is_ultrametric());
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn u4_is_ultrametric() {
        let s = u4();
        assert!(s.is_ultrametric());
        assert_eq!(s.labels(), ["0", "a", "b", "c"]);
    }

    #[test]
    fn euclidean_line_is_not_ultrametric() {
        let m = vec![
            vec![int(0), int(1), int(2)],
            vec![int(1), int(0), int(1)],
            vec![int(2), int(1), int(0)],
        ];
        let s = FiniteUltraSpace::from_matrix(m).unwrap();
        assert!(!s.is_ultrametric());
        assert_eq!(s.ultrametric_witness(), Some((0, 1, 2)));
        assert_eq!(ultrametric_ball_facts(&s, 0, 1, 2, &int(1)), Err(Error::NotUltrametric));
    }

    #[test]
    fn validation_errors() {
        let z = int(0);
        let asym = vec![vec![z.clone(), int(1)], vec![int(2), z.clone()]];
        assert_eq!(FiniteUltraSpace::from_matrix(asym), Err(Error::AsymmetricMatrix(0, 1)));
        let neg = vec![vec![z.clone(), int(-1)], vec![int(-1), z.clone()]];
        assert_eq!(FiniteUltraSpace::from_matrix(neg), Err(Error::NegativeDistance(0, 1)));
        let zero = vec![vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]];
        assert_eq!(FiniteUltraSpace::from_matrix(zero), Err(Error::ZeroOffDiagonal(0, 1)));
        let tri = vec![
            vec![int(0), int(1), int(3)],
            vec![int(1), int(0), int(1)],
            vec![int(3), int(1), int(0)],
        ];
        assert_eq!(FiniteUltraSpace::from_matrix(tri), Err(Error::TriangleViolation(0, 1, 2)));
        assert_eq!(FiniteUltraSpace::from_matrix(vec![]), Err(Error::EmptySpace));
        let ragged = vec![vec![z.clone(), int(1)], vec![int(1)]];
        assert!(matches!(FiniteUltraSpace::from_matrix(ragged), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn u4_ball_facts() {
        let s = u4();
        let (o, a, b, c) = (0, 1, 2, 3);
        assert_eq!(s.open_ball(a, &rat(1, 2)), vec![a, b]);
        assert_eq!(s.open_ball(b, &rat(1, 2)), vec![a, b]);
        let f = ultrametric_ball_facts(&s, a, b, c, &rat(1, 2)).unwrap();
        assert_eq!(f.recentering, Fact::Holds);
        assert_eq!(f.separation, Fact::Holds);
        assert!(f.all_ok());
        // d(a,b) = 1/4 differs from d(0,b) = 1, forcing d(a,0) = 1.
        let f = ultrametric_ball_facts(&s, a, o, b, &int(1)).unwrap();
        assert_eq!(f.isosceles, Fact::Holds);
        let f = ultrametric_ball_facts(&s, c, c, c, &rat(1, 3)).unwrap();
        assert!(f.all_ok());
    }
}
