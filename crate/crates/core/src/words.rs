//! Periodic words of positive integers and the Markov tree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surd::QuadSurd;

/// Deepest Markov tree [`markov_tree`] will build unless told otherwise.
pub const DEFAULT_TREE_DEPTH_CAP: usize = 16;

/// A non-empty cyclic word `(a1, ..., al)` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PeriodicWord(Vec<u64>);

impl TryFrom<Vec<u64>> for PeriodicWord {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PeriodicWord::new(v)
    }
}

impl From<PeriodicWord> for Vec<u64> {
    fn from(w: PeriodicWord) -> Vec<u64> {
        w.0
    }
}

impl PeriodicWord {
    pub fn new(letters: Vec<u64>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if letters.contains(&0) {
            return Err(Error::NonPositiveLetter);
        }
        Ok(PeriodicWord(letters))
    }

    pub fn letters(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter `i`, 1-based and read cyclically.
    pub fn letter(&self, i: isize) -> u64 {
        let n = self.0.len() as isize;
        self.0[((i - 1).rem_euclid(n)) as usize]
    }

    /// The reversed word `(al, ..., a1)`.
    pub fn opposite(&self) -> Self {
        PeriodicWord(self.0.iter().rev().copied().collect())
    }

    /// `(ai, ..., al, a1, ..., a(i-1))` for `1 <= i <= l`.
    pub fn rotation(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::RotationIndex {
                index: i,
                len: self.len(),
            });
        }
        let mut v = self.0[i - 1..].to_vec();
        v.extend_from_slice(&self.0[..i - 1]);
        Ok(PeriodicWord(v))
    }

    /// Concatenation `self` then `other`.
    pub fn conjunction(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PeriodicWord(v)
    }

    /// The word doubled when its length is odd; unchanged otherwise.
    pub fn even_form(&self) -> Self {
        if self.len() % 2 == 0 {
            self.clone()
        } else {
            self.conjunction(self)
        }
    }

    /// Whether every letter is 1 or 2.
    pub fn is_markov_alphabet(&self) -> bool {
        self.0.iter().all(|&a| a == 1 || a == 2)
    }

    /// Runs `(letter, count)` of the word read linearly.
    pub fn run_length(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &a in &self.0 {
            match out.last_mut() {
                Some((b, n)) if *b == a => *n += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    /// Smallest primitive word whose repetition gives this one.
    pub fn primitive_root(&self) -> Self {
        let n = self.len();
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return PeriodicWord(self.0[..p].to_vec());
            }
        }
        self.clone()
    }
}

/// `[a1,a2,...]`.
impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// A node of the Markov tree together with its two neighbours.
///
/// `left` and `right` are the words the node was formed from: the node is
/// `right` followed by `left`.
#[derive(Clone, Debug)]
pub struct MarkovNode {
    pub word: PeriodicWord,
    pub depth: usize,
    pub left: PeriodicWord,
    pub right: PeriodicWord,
    pub parent: Option<usize>,
    pub children: Option<(usize, usize)>,
}

/// Breadth-first Markov tree; index 0 is the root `[2,2,1,1]`.
#[derive(Clone, Debug)]
pub struct MarkovTree {
    nodes: Vec<MarkovNode>,
    depth: usize,
}

/// The two boundary words `[1,1]` and `[2,2]` that seed the tree.
pub fn markov_boundary() -> (PeriodicWord, PeriodicWord) {
    (PeriodicWord(vec![1, 1]), PeriodicWord(vec![2, 2]))
}

/// Markov tree down to `depth`, the root being at depth 0; it has
/// `2^(depth+1) - 1` nodes.
pub fn markov_tree(depth: usize) -> Result<MarkovTree> {
    markov_tree_with_cap(depth, DEFAULT_TREE_DEPTH_CAP)
}

pub fn markov_tree_with_cap(depth: usize, cap: usize) -> Result<MarkovTree> {
    if depth > cap {
        return Err(Error::ResourceLimit(format!(
            "tree depth {depth} exceeds cap {cap}"
        )));
    }
    let (left, right) = markov_boundary();
    let mut nodes = Vec::with_capacity((1usize << (depth + 1)) - 1);
    nodes.push(MarkovNode {
        word: right.conjunction(&left),
        depth: 0,
        left,
        right,
        parent: None,
        children: None,
    });
    let mut level_start = 0;
    for level in 1..=depth {
        let level_end = nodes.len();
        for idx in level_start..level_end {
            let (w, l, r) = {
                let n = &nodes[idx];
                (n.word.clone(), n.left.clone(), n.right.clone())
            };
            let lchild = MarkovNode {
                word: w.conjunction(&l),
                depth: level,
                left: l,
                right: w.clone(),
                parent: Some(idx),
                children: None,
            };
            let rchild = MarkovNode {
                word: r.conjunction(&w),
                depth: level,
                left: w,
                right: r,
                parent: Some(idx),
                children: None,
            };
            let li = nodes.len();
            nodes.push(lchild);
            nodes.push(rchild);
            nodes[idx].children = Some((li, li + 1));
        }
        level_start = level_end;
    }
    Ok(MarkovTree { nodes, depth })
}

/// Serializable view of a subtree.
#[derive(Clone, Debug, Serialize)]
pub struct TreeDump {
    pub word: PeriodicWord,
    pub depth: usize,
    pub value: QuadSurd,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_val: Option<f64>,
    pub children: Vec<TreeDump>,
}

impl MarkovTree {
    pub fn nodes(&self) -> &[MarkovNode] {
        &self.nodes
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes at one level, left to right.
    pub fn level(&self, depth: usize) -> &[MarkovNode] {
        if depth > self.depth {
            return &[];
        }
        let start = (1usize << depth) - 1;
        &self.nodes[start..start + (1usize << depth)]
    }

    /// Nested dump with exact values; `annotate` may attach a value per word.
    pub fn dump_with<F>(&self, annotate: F) -> Result<Option<TreeDump>>
    where
        F: Fn(&PeriodicWord) -> Result<Option<f64>>,
    {
        if self.nodes.is_empty() {
            return Ok(None);
        }
        self.dump_node(0, &annotate).map(Some)
    }

    fn dump_node<F>(&self, idx: usize, annotate: &F) -> Result<TreeDump>
    where
        F: Fn(&PeriodicWord) -> Result<Option<f64>>,
    {
        let n = &self.nodes[idx];
        let children = match n.children {
            Some((a, b)) => vec![self.dump_node(a, annotate)?, self.dump_node(b, annotate)?],
            None => Vec::new(),
        };
        Ok(TreeDump {
            word: n.word.clone(),
            depth: n.depth,
            value: QuadSurd::value_of_period(&n.word)?,
            re_val: annotate(&n.word)?,
            children,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> PeriodicWord {
        PeriodicWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basic_operations() {
        assert_eq!(w(&[2, 2, 1, 1]).opposite(), w(&[1, 1, 2, 2]));
        assert_eq!(w(&[1, 2, 3]).rotation(2).unwrap(), w(&[2, 3, 1]));
        assert_eq!(w(&[1, 2, 3]).even_form(), w(&[1, 2, 3, 1, 2, 3]));
        assert_eq!(w(&[2, 2]).conjunction(&w(&[1, 1])), w(&[2, 2, 1, 1]));
        assert!(matches!(w(&[1]).rotation(2), Err(Error::RotationIndex { .. })));
        assert_eq!(PeriodicWord::new(vec![]), Err(Error::EmptyWord));
        assert_eq!(PeriodicWord::new(vec![1, 0]), Err(Error::NonPositiveLetter));
        assert_eq!(w(&[2, 2, 1, 1, 1, 1]).run_length(), vec![(2, 2), (1, 4)]);
        assert_eq!(w(&[1, 2, 1, 2]).primitive_root(), w(&[1, 2]));
        assert_eq!(w(&[1, 2]).letter(0), 2);
        assert_eq!(w(&[1, 2]).letter(3), 1);
    }

    #[test]
    fn rotation_and_opposite_laws() {
        let x = w(&[3, 1, 4, 1, 5, 9]);
        for i in 1..=x.len() {
            for j in 1..=x.len() {
                let lhs = x.rotation(i).unwrap().rotation(j).unwrap();
                let k = (i + j - 2) % x.len() + 1;
                assert_eq!(lhs, x.rotation(k).unwrap());
            }
        }
        assert_eq!(x.opposite().opposite(), x);
    }

    #[test]
    fn tree_shape() {
        let t = markov_tree(2).unwrap();
        assert_eq!(t.nodes().len(), 7);
        assert_eq!(markov_tree(8).unwrap().nodes().len(), 511);
        assert_eq!(t.level(0)[0].word, w(&[2, 2, 1, 1]));
        let lvl2: Vec<_> = t.level(1).iter().map(|n| n.word.clone()).collect();
        assert_eq!(lvl2, vec![w(&[2, 2, 1, 1, 1, 1]), w(&[2, 2, 2, 2, 1, 1])]);
        let lvl3: Vec<_> = t.level(2).iter().map(|n| n.word.to_string()).collect();
        assert_eq!(
            lvl3,
            vec![
                "[2,2,1,1,1,1,1,1]",
                "[2,2,1,1,2,2,1,1,1,1]",
                "[2,2,2,2,1,1,2,2,1,1]",
                "[2,2,2,2,2,2,1,1]"
            ]
        );
        assert!(matches!(markov_tree(17), Err(Error::ResourceLimit(_))));
    }
}
