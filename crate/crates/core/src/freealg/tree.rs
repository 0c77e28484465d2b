use crate::error::{Error, Result};

use super::Poly;

/// A bracket expression whose leaves are arbitrary elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutatorTree {
    Leaf(Poly),
    Node(Box<CommutatorTree>, Box<CommutatorTree>),
}

impl CommutatorTree {
    /// `[a_1, ..., a_m]` as `Node(a_1, Node(a_2, ...))`.
    pub fn right_normed(args: Vec<Poly>) -> Result<Self> {
        let mut it = args.into_iter().rev();
        let last = it.next().ok_or(Error::EmptyNested)?;
        Ok(it.fold(CommutatorTree::Leaf(last), |acc, a| {
            CommutatorTree::Node(Box::new(CommutatorTree::Leaf(a)), Box::new(acc))
        }))
    }

    pub fn node(left: CommutatorTree, right: CommutatorTree) -> Self {
        CommutatorTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn length(&self) -> usize {
        match self {
            CommutatorTree::Leaf(_) => 1,
            CommutatorTree::Node(l, r) => l.length() + r.length(),
        }
    }

    pub fn leaves(&self) -> Vec<&Poly> {
        match self {
            CommutatorTree::Leaf(p) => vec![p],
            CommutatorTree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn evaluate(&self) -> Result<Poly> {
        match self {
            CommutatorTree::Leaf(p) => Ok(p.clone()),
            CommutatorTree::Node(l, r) => l.evaluate()?.bracket(&r.evaluate()?),
        }
    }
}
