//! Countable pointed spaces given by an enumeration and a distance oracle.
//!
//! Points are addressed by their 0-based enumeration position, so position
//! `i` is `s_{i+1}` and position 0 is the base point.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{dyadic, Rational};
use crate::space::FiniteUltraSpace;

type Oracle = Box<dyn Fn(usize, usize) -> Rational + Send + Sync>;
type Labeler = Box<dyn Fn(usize) -> String + Send + Sync>;

/// Known answers for built-in spaces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GroundTruth {
    pub spherically_complete: Option<bool>,
    pub proper: Option<bool>,
    pub totally_bounded: Option<bool>,
}

pub struct PresentedSpace {
    name: String,
    label: Labeler,
    oracle: Oracle,
    len: Option<usize>,
    truth: GroundTruth,
}

impl fmt::Debug for PresentedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedSpace")
            .field("name", &self.name)
            .field("len", &self.len)
            .field("truth", &self.truth)
            .finish()
    }
}

pub const BUILTINS: [&str; 4] = ["e1_not_sc", "e2_omega_sc", "e3_compact", "discrete_n"];

impl PresentedSpace {
    /// A presented space from closures. `len = None` means infinite.
    pub fn new(
        name: impl Into<String>,
        len: Option<usize>,
        label: impl Fn(usize) -> String + Send + Sync + 'static,
        oracle: impl Fn(usize, usize) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            label: Box::new(label),
            oracle: Box::new(oracle),
            len,
            truth: GroundTruth::default(),
        }
    }

    /// Enumerates a finite space in index order.
    pub fn from_finite(space: &FiniteUltraSpace) -> Self {
        let s1 = space.clone();
        let s2 = space.clone();
        Self::new("finite", Some(space.len()), move |i| s1.label(i).to_string(), move |i, j| {
            s2.d(i, j).clone()
        })
    }

    pub fn with_truth(mut self, truth: GroundTruth) -> Self {
        self.truth = truth;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn truth(&self) -> GroundTruth {
        self.truth
    }

    /// Number of points, if finite.
    pub fn len(&self) -> Option<usize> {
        self.len
    }

    /// Number of points available up to `depth`.
    pub fn available(&self, depth: usize) -> usize {
        self.len.map_or(depth, |n| n.min(depth))
    }

    pub fn label(&self, i: usize) -> String {
        (self.label)(i)
    }

    /// Distance between enumeration positions, zero on the diagonal.
    pub fn d(&self, i: usize, j: usize) -> Rational {
        if i == j {
            num_traits::Zero::zero()
        } else {
            (self.oracle)(i, j)
        }
    }

    /// Position of a label among the first `depth` points.
    pub fn position(&self, label: &str, depth: usize) -> Option<usize> {
        (0..self.available(depth)).find(|&i| self.label(i) == label)
    }

    /// The finite space `S_n = {s_1, ..., s_n}`.
    pub fn truncate(&self, n: usize) -> Result<FiniteUltraSpace> {
        if n == 0 {
            return Err(Error::InvalidArgument("truncation needs at least one point".into()));
        }
        if let Some(len) = self.len {
            if n > len {
                return Err(Error::IndexOutOfRange { index: n, limit: len });
            }
        }
        let matrix = (0..n).map(|i| (0..n).map(|j| self.d(i, j)).collect()).collect();
        let labels = (0..n).map(|i| self.label(i)).collect();
        FiniteUltraSpace::validate(matrix, labels).map_err(|e| Error::OracleViolation(e.to_string()))
    }
}

fn seq_label(i: usize) -> String {
    i.to_string()
}

/// The four named example spaces.
pub fn builtin(name: &str) -> Result<PresentedSpace> {
    let sc = |sc, proper, tb| GroundTruth {
        spherically_complete: Some(sc),
        proper: Some(proper),
        totally_bounded: Some(tb),
    };
    let space = match name {
        // d(m,n) = 1 + 2^-min(m,n) on the naturals.
        "e1_not_sc" => PresentedSpace::new(name, None, seq_label, |i, j| {
            Rational::one() + dyadic(i.min(j) as u64)
        })
        .with_truth(sc(false, false, false)),
        // Naturals plus a point ω at position 1 with d(ω, n) = 1 + 2^-n.
        "e2_omega_sc" => {
            let point = |i: usize| if i == 0 { Some(0) } else if i == 1 { None } else { Some(i - 1) };
            PresentedSpace::new(
                name,
                None,
                move |i| point(i).map_or("ω".to_string(), |n| n.to_string()),
                move |i, j| match (point(i), point(j)) {
                    (Some(m), Some(n)) => Rational::one() + dyadic(m.min(n) as u64),
                    (Some(n), None) | (None, Some(n)) => Rational::one() + dyadic(n as u64),
                    (None, None) => num_traits::Zero::zero(),
                },
            )
            .with_truth(sc(true, false, false))
        }
        // d(m,n) = 2^-min(m,n): totally bounded, not complete.
        "e3_compact" => PresentedSpace::new(name, None, seq_label, |i, j| dyadic(i.min(j) as u64))
            .with_truth(sc(false, false, true)),
        "discrete_n" => PresentedSpace::new(name, None, seq_label, |_, _| Rational::one())
            .with_truth(sc(true, false, false)),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn e1_truncation() {
        let s = builtin("e1_not_sc").unwrap().truncate(3).unwrap();
        assert_eq!(s.labels(), ["0", "1", "2"]);
        assert_eq!(s.d(0, 1), &int(2));
        assert_eq!(s.d(0, 2), &int(2));
        assert_eq!(s.d(1, 2), &rat(3, 2));
        assert!(s.is_ultrametric());
    }

    #[test]
    fn e3_truncation() {
        let s = builtin("e3_compact").unwrap().truncate(3).unwrap();
        assert_eq!(s.d(0, 1), &int(1));
        assert_eq!(s.d(0, 2), &int(1));
        assert_eq!(s.d(1, 2), &rat(1, 2));
    }

    #[test]
    fn single_point_truncations() {
        for name in BUILTINS {
            let s = builtin(name).unwrap().truncate(1).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s.label(0), "0");
        }
    }

    #[test]
    fn closed_form_distances() {
        let e1 = builtin("e1_not_sc").unwrap();
        assert_eq!(e1.d(3, 5), rat(9, 8));
        let e2 = builtin("e2_omega_sc").unwrap();
        let omega = e2.position("ω", 10).unwrap();
        let four = e2.position("4", 10).unwrap();
        assert_eq!(omega, 1);
        assert_eq!(e2.d(omega, four), rat(17, 16));
        assert_eq!(e2.d(omega, 0), int(2));
        let dn = builtin("discrete_n").unwrap();
        assert_eq!(dn.d(2, 7), int(1));
        assert!(matches!(builtin("e4"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn bad_oracle_detected() {
        let p = PresentedSpace::new("bad", None, |i| i.to_string(), |i, j| int((i + j) as i64 % 3));
        assert!(matches!(p.truncate(4), Err(Error::OracleViolation(_))));
    }

    #[test]
    fn finite_length_enforced() {
        let p = PresentedSpace::from_finite(&crate::fixtures::u4());
        assert_eq!(p.truncate(4).unwrap(), crate::fixtures::u4());
        assert!(p.truncate(5).is_err());
        assert_eq!(p.available(100), 4);
    }
}
