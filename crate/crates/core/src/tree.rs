//! Ordered trees as preorder level sequences.
//!
//! Entry `j` of a level sequence is the level of the `j`-th vertex in
//! preorder, with the root at level 1. A sequence is a valid tree iff it
//! starts with 1 and every later entry lies in `2..=prev + 1`; the
//! sequence is a canonical form, so equality and hashing are structural.
//!
//! In this representation the last entry is the rightmost leaf, so the
//! family-tree parent is "drop the last entry" and the `i`-th child is
//! "append `i + 1`".

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    levels: Vec<u32>,
}

impl OrderedTree {
    /// Checks the level-step rule and wraps the sequence.
    pub fn from_levels(levels: Vec<u32>) -> Result<Self> {
        check_levels(&levels)?;
        metrics::record_writes(levels.len());
        Ok(OrderedTree { levels })
    }

    /// Callers guarantee `levels` is valid.
    pub(crate) fn from_levels_unchecked(levels: Vec<u32>) -> Self {
        debug_assert!(check_levels(&levels).is_ok(), "invalid levels {levels:?}");
        metrics::record_writes(levels.len());
        OrderedTree { levels }
    }

    /// The one-vertex tree.
    pub fn trivial() -> Self {
        Self::from_levels_unchecked(vec![1])
    }

    /// Root with `k - 1` leaf children. Panics if `k == 0`.
    pub fn star(k: usize) -> Self {
        assert!(k >= 1, "a tree has at least one vertex");
        let mut levels = vec![2; k];
        levels[0] = 1;
        Self::from_levels_unchecked(levels)
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    /// Always false; a tree has a root.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of edges on the rightmost path.
    pub fn rpl(&self) -> u32 {
        self.levels[self.levels.len() - 1] - 1
    }

    /// The tree minus its rightmost leaf.
    pub fn parent(&self) -> Result<OrderedTree> {
        if self.levels.len() < 2 {
            return Err(Error::NoParent);
        }
        Ok(Self::from_levels_unchecked(
            self.levels[..self.levels.len() - 1].to_vec(),
        ))
    }

    /// Appends a new rightmost leaf below the rightmost-path vertex at
    /// level `i`, for `1 <= i <= rpl + 1`. The result has `rpl == i`.
    pub fn child(&self, i: u32) -> Result<OrderedTree> {
        let max = self.rpl() + 1;
        if i == 0 || i > max {
            return Err(Error::ChildOutOfRange { index: i, max });
        }
        let mut levels = Vec::with_capacity(self.levels.len() + 1);
        levels.extend_from_slice(&self.levels);
        levels.push(i + 1);
        Ok(Self::from_levels_unchecked(levels))
    }

    /// All `rpl + 1` children in increasing `rpl` order.
    pub fn children(&self) -> Vec<OrderedTree> {
        (1..=self.rpl() + 1)
            .map(|i| self.child(i).expect("index in range"))
            .collect()
    }

    /// Whether the vertex at 0-based preorder position `idx` is a leaf.
    pub fn is_leaf(&self, idx: usize) -> bool {
        idx + 1 == self.levels.len() || self.levels[idx + 1] <= self.levels[idx]
    }

    /// 0-based positions of the leaves whose removal leaves a non-empty
    /// tree (every leaf except a lone root).
    pub fn removable_leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.levels.len()).filter(move |&j| self.is_leaf(j))
    }

    /// Balanced-parenthesis encoding: each vertex is `(` followed by its
    /// children's encodings and `)`.
    pub fn to_parens(&self) -> String {
        let mut out = String::with_capacity(2 * self.levels.len());
        let mut open = 0u32;
        for &level in &self.levels {
            while open >= level {
                out.push(')');
                open -= 1;
            }
            out.push('(');
            open += 1;
        }
        for _ in 0..open {
            out.push(')');
        }
        out
    }

    pub fn from_parens(text: &str) -> Result<OrderedTree> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty parenthesis string".into()));
        }
        let mut levels = Vec::with_capacity(text.len() / 2);
        let mut depth = 0u32;
        for (pos, c) in text.chars().enumerate() {
            match c {
                '(' => {
                    if depth == 0 && !levels.is_empty() {
                        return Err(Error::Parse(format!(
                            "second root at position {}",
                            pos + 1
                        )));
                    }
                    depth += 1;
                    levels.push(depth);
                }
                ')' => {
                    if depth == 0 {
                        return Err(Error::Parse(format!(
                            "unbalanced ')' at position {}",
                            pos + 1
                        )));
                    }
                    depth -= 1;
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} at position {}",
                        pos + 1
                    )))
                }
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("{depth} unclosed '('")));
        }
        Self::from_levels(levels)
    }

    /// Comma-separated level sequence, e.g. `1,2,2,3`.
    pub fn to_level_string(&self) -> String {
        self.to_string()
    }
}

/// Validates a raw level sequence. Reported indices are 1-based.
pub fn validate(levels: &[u32]) -> Result<OrderedTree> {
    OrderedTree::from_levels(levels.to_vec())
}

fn check_levels(levels: &[u32]) -> Result<()> {
    let (&root, rest) = levels.split_first().ok_or(Error::EmptySequence)?;
    if root != 1 {
        return Err(Error::BadRoot(root));
    }
    let mut prev = root;
    for (j, &level) in rest.iter().enumerate() {
        if level < 2 || level > prev + 1 {
            return Err(Error::BadStep {
                index: j + 2,
                level,
                prev,
            });
        }
        prev = level;
    }
    Ok(())
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, level) in self.levels.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{level}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Accepts either a comma-separated level sequence or a parenthesis string.
impl FromStr for OrderedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('(') {
            return Self::from_parens(s);
        }
        if s.is_empty() {
            return Err(Error::EmptySequence);
        }
        let levels = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_levels(levels)
    }
}

/// A duplicate-free set of trees that all have `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    k: usize,
    trees: Vec<OrderedTree>,
}

impl LevelSet {
    pub fn new(k: usize, trees: Vec<OrderedTree>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(trees.len());
        for t in &trees {
            if t.len() != k {
                return Err(Error::SizeMismatch {
                    left: k,
                    right: t.len(),
                });
            }
            if !seen.insert(t) {
                return Err(Error::Parse(format!("duplicate tree {t}")));
            }
        }
        Ok(LevelSet { k, trees })
    }

    pub(crate) fn new_unchecked(k: usize, trees: Vec<OrderedTree>) -> Self {
        LevelSet { k, trees }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn trees(&self) -> &[OrderedTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn into_trees(self) -> Vec<OrderedTree> {
        self.trees
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(levels: &[u32]) -> OrderedTree {
        validate(levels).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(t(&[1]).len(), 1);
        assert_eq!(t(&[1, 2, 2, 3]).len(), 4);
        assert_eq!(
            validate(&[1, 3]),
            Err(Error::BadStep {
                index: 2,
                level: 3,
                prev: 1
            })
        );
        assert_eq!(validate(&[]), Err(Error::EmptySequence));
        assert_eq!(validate(&[2, 3]), Err(Error::BadRoot(2)));
        // a second root
        assert!(matches!(
            validate(&[1, 2, 1]),
            Err(Error::BadStep { index: 3, .. })
        ));
    }

    #[test]
    fn rpl_examples() {
        assert_eq!(t(&[1]).rpl(), 0);
        assert_eq!(t(&[1, 2, 2]).rpl(), 1);
        assert_eq!(t(&[1, 2, 3]).rpl(), 2);
    }

    #[test]
    fn parent_examples() {
        assert_eq!(t(&[1, 2]).parent().unwrap(), t(&[1]));
        assert_eq!(t(&[1, 2, 2, 3]).parent().unwrap(), t(&[1, 2, 2]));
        assert_eq!(t(&[1, 2, 3, 2]).parent().unwrap(), t(&[1, 2, 3]));
        assert_eq!(t(&[1]).parent(), Err(Error::NoParent));
    }

    #[test]
    fn child_examples() {
        assert_eq!(t(&[1]).child(1).unwrap(), t(&[1, 2]));
        assert_eq!(t(&[1, 2, 2]).child(2).unwrap(), t(&[1, 2, 2, 3]));
        assert_eq!(t(&[1, 2, 3]).child(3).unwrap(), t(&[1, 2, 3, 4]));
        assert_eq!(
            t(&[1, 2, 2]).child(3),
            Err(Error::ChildOutOfRange { index: 3, max: 2 })
        );
        assert!(t(&[1]).child(0).is_err());
    }

    #[test]
    fn parens_examples() {
        assert_eq!(t(&[1]).to_parens(), "()");
        assert_eq!(t(&[1, 2, 2]).to_parens(), "(()())");
        assert_eq!(t(&[1, 2, 3]).to_parens(), "((()))");
        assert_eq!(OrderedTree::from_parens("(()())").unwrap(), t(&[1, 2, 2]));
    }

    #[test]
    fn parens_rejects_malformed() {
        for bad in ["", "(", ")", "(()", "())", "()()", "(x)"] {
            assert!(OrderedTree::from_parens(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn from_str_accepts_both_encodings() {
        assert_eq!("1,2,2,3".parse::<OrderedTree>().unwrap(), t(&[1, 2, 2, 3]));
        assert_eq!(
            " 1, 2 ,3 ".parse::<OrderedTree>().unwrap(),
            t(&[1, 2, 3])
        );
        assert_eq!("((()))".parse::<OrderedTree>().unwrap(), t(&[1, 2, 3]));
        assert!("1,x".parse::<OrderedTree>().is_err());
        assert_eq!("".parse::<OrderedTree>(), Err(Error::EmptySequence));
        assert_eq!(t(&[1, 2, 2, 3]).to_string(), "1,2,2,3");
    }

    #[test]
    fn star_and_leaves() {
        assert_eq!(OrderedTree::star(4), t(&[1, 2, 2, 2]));
        assert_eq!(OrderedTree::star(1), OrderedTree::trivial());
        let tree = t(&[1, 2, 3, 3, 2]);
        assert_eq!(tree.removable_leaves().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(t(&[1]).removable_leaves().count(), 0);
    }

    #[test]
    fn level_set_rejects_duplicates_and_mixed_sizes() {
        assert!(LevelSet::new(2, vec![t(&[1, 2]), t(&[1, 2])]).is_err());
        assert!(LevelSet::new(2, vec![t(&[1])]).is_err());
        let set = LevelSet::new(3, vec![t(&[1, 2, 2]), t(&[1, 2, 3])]).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.k(), 3);
    }
}
