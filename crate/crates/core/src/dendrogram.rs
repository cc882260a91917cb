//! Rooted height-labelled trees realizing finite ultrametrics.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{FiniteUltraSpace, BASE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DendNode {
    /// A point index into [`Dendrogram::labels`].
    Leaf(usize),
    Internal { height: Rational, children: Vec<DendNode> },
}

impl DendNode {
    pub fn height(&self) -> Rational {
        match self {
            DendNode::Leaf(_) => Rational::zero(),
            DendNode::Internal { height, .. } => height.clone(),
        }
    }

    /// Leaf indices in depth-first order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DendNode::Leaf(i) => out.push(*i),
            DendNode::Internal { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    fn min_leaf(&self) -> usize {
        match self {
            DendNode::Leaf(i) => *i,
            DendNode::Internal { children, .. } => {
                children.iter().map(DendNode::min_leaf).min().unwrap_or(usize::MAX)
            }
        }
    }

    /// Recursively orders children by their smallest leaf index.
    fn canonicalize(&mut self) {
        if let DendNode::Internal { children, .. } = self {
            for c in children.iter_mut() {
                c.canonicalize();
            }
            children.sort_by_key(DendNode::min_leaf);
        }
    }
}

/// A dendrogram over labelled points; the leaf with index 0 is the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dendrogram {
    root: DendNode,
    labels: Vec<String>,
}

impl Dendrogram {
    /// Validates the tree: leaves are exactly `0..labels.len()`, internal
    /// nodes have at least two children and positive heights that strictly
    /// decrease towards the leaves.
    pub fn new(root: DendNode, labels: Vec<String>) -> Result<Self> {
        fn check(node: &DendNode, parent: Option<&Rational>) -> Result<()> {
            if let DendNode::Internal { height, children } = node {
                if !height.is_positive() {
                    return Err(Error::InvalidArgument(format!("non-positive height {height}")));
                }
                if let Some(p) = parent {
                    if height >= p {
                        return Err(Error::InvalidArgument(format!(
                            "height {height} does not decrease below parent height {p}"
                        )));
                    }
                }
                if children.len() < 2 {
                    return Err(Error::InvalidArgument("internal node with fewer than two children".into()));
                }
                for c in children {
                    check(c, Some(height))?;
                }
            }
            Ok(())
        }
        check(&root, None)?;
        let mut leaves = root.leaves();
        leaves.sort_unstable();
        if leaves != (0..labels.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("leaves must be exactly the point indices".into()));
        }
        Ok(Self { root, labels })
    }

    /// Canonical dendrogram of an ultrametric space: each internal node at
    /// height `h` splits its points into the classes of `d < h`.
    pub fn from_space(space: &FiniteUltraSpace) -> Result<Self> {
        space.require_ultrametric()?;
        let all: Vec<usize> = (0..space.len()).collect();
        let root = build(space, &all);
        Ok(Self { root, labels: space.labels().to_vec() })
    }

    pub fn root(&self) -> &DendNode {
        &self.root
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Induced metric: distance is the height of the lowest common ancestor.
    pub fn to_space(&self) -> Result<FiniteUltraSpace> {
        let n = self.labels.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        fill(&self.root, &mut m);
        FiniteUltraSpace::validate(m, self.labels.clone())
    }

    /// Copy with children ordered by smallest leaf index, so the base leaf
    /// comes first in depth-first order.
    pub fn canonical(&self) -> Self {
        let mut root = self.root.clone();
        root.canonicalize();
        Self { root, labels: self.labels.clone() }
    }

    /// Relabels points so that index order equals depth-first leaf order.
    /// Requires the base leaf to come first.
    pub fn reindexed_by_leaf_order(&self) -> Result<Self> {
        let order = self.root.leaves();
        if order.first() != Some(&BASE) {
            return Err(Error::InvalidArgument("base leaf must come first".into()));
        }
        let mut new_index = vec![0; order.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos;
        }
        fn remap(n: &DendNode, map: &[usize]) -> DendNode {
            match n {
                DendNode::Leaf(i) => DendNode::Leaf(map[*i]),
                DendNode::Internal { height, children } => DendNode::Internal {
                    height: height.clone(),
                    children: children.iter().map(|c| remap(c, map)).collect(),
                },
            }
        }
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(Self { root: remap(&self.root, &new_index), labels })
    }
}

fn build(space: &FiniteUltraSpace, pts: &[usize]) -> DendNode {
    if pts.len() == 1 {
        return DendNode::Leaf(pts[0]);
    }
    let mut height = Rational::zero();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            if *space.d(p, q) > height {
                height = space.d(p, q).clone();
            }
        }
    }
    // `d < height` is an equivalence relation in an ultrametric space.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &p in pts {
        match classes.iter_mut().find(|c| *space.d(c[0], p) < height) {
            Some(c) => c.push(p),
            None => classes.push(vec![p]),
        }
    }
    let children = classes.iter().map(|c| build(space, c)).collect();
    DendNode::Internal { height, children }
}

fn fill(node: &DendNode, m: &mut [Vec<Rational>]) {
    if let DendNode::Internal { height, children } = node {
        let groups: Vec<Vec<usize>> = children.iter().map(DendNode::leaves).collect();
        for (a, ga) in groups.iter().enumerate() {
            for gb in &groups[a + 1..] {
                for &x in ga {
                    for &y in gb {
                        m[x][y] = height.clone();
                        m[y][x] = height.clone();
                    }
                }
            }
        }
        for c in children {
            fill(c, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{pair, u4};
    use crate::rational::{int, rat};

    #[test]
    fn u4_dendrogram_shape() {
        let d = Dendrogram::from_space(&u4()).unwrap();
        let expected = DendNode::Internal {
            height: int(1),
            children: vec![
                DendNode::Leaf(0),
                DendNode::Internal { height: rat(1, 4), children: vec![DendNode::Leaf(1), DendNode::Leaf(2)] },
                DendNode::Leaf(3),
            ],
        };
        assert_eq!(d.root(), &expected);
        assert_eq!(d.to_space().unwrap(), u4());
    }

    #[test]
    fn degenerate_shapes() {
        let one = FiniteUltraSpace::from_matrix(vec![vec![int(0)]]).unwrap();
        let d = Dendrogram::from_space(&one).unwrap();
        assert_eq!(d.root(), &DendNode::Leaf(0));
        assert_eq!(d.to_space().unwrap(), one);

        let d = Dendrogram::from_space(&pair(rat(3, 7))).unwrap();
        assert_eq!(d.root().height(), rat(3, 7));
        assert_eq!(d.root().leaves(), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_trees() {
        let labels = vec!["0".to_string(), "x".to_string()];
        let flat = DendNode::Internal {
            height: int(1),
            children: vec![DendNode::Internal { height: int(1), children: vec![DendNode::Leaf(0), DendNode::Leaf(1)] }],
        };
        assert!(Dendrogram::new(flat, labels.clone()).is_err());
        let missing = DendNode::Internal { height: int(1), children: vec![DendNode::Leaf(0), DendNode::Leaf(0)] };
        assert!(Dendrogram::new(missing, labels).is_err());
    }

    #[test]
    fn non_ultrametric_rejected() {
        let m = vec![
            vec![int(0), int(1), int(2)],
            vec![int(1), int(0), int(1)],
            vec![int(2), int(1), int(0)],
        ];
        let s = FiniteUltraSpace::from_matrix(m).unwrap();
        assert_eq!(Dendrogram::from_space(&s), Err(Error::NotUltrametric));
    }
}
