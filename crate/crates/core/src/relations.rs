//! Binary relations between trees of equal size, and the explicit
//! delete-and-append edit between adjacent trees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::OrderedTree;

/// One delete-and-append move, 1-based: remove the leaf at preorder
/// position `remove_at`, then insert a leaf of level `insert_level` so it
/// lands at position `insert_at` of the shortened sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Delta {
    pub remove_at: usize,
    pub insert_at: usize,
    pub insert_level: u32,
}

impl Delta {
    pub fn new(remove_at: usize, insert_at: usize, insert_level: u32) -> Self {
        Delta {
            remove_at,
            insert_at,
            insert_level,
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.remove_at, self.insert_at, self.insert_level)
    }
}

impl FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected three integers, got {s:?}"
            )));
        }
        let num = |p: &str| {
            p.parse::<usize>()
                .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
        };
        Ok(Delta {
            remove_at: num(parts[0])?,
            insert_at: num(parts[1])?,
            insert_level: num(parts[2])? as u32,
        })
    }
}

/// The root's rightmost child has exactly one child, and that child is a
/// leaf. In preorder this is the same as the sequence ending in `2, 3`.
pub fn has_pony_tail(t: &OrderedTree) -> bool {
    let l = t.levels();
    l.len() >= 3 && l[l.len() - 2..] == [2, 3]
}

/// `t` is copying `u`: appending a rightmost leaf to `t` at level
/// `rpl(u)` and then deleting some other leaf yields `u`.
pub fn is_copying(t: &OrderedTree, u: &OrderedTree) -> Result<bool> {
    same_size(t, u)?;
    if t == u {
        return Err(Error::IdenticalTrees);
    }
    let level = u.rpl();
    if level == 0 || level > t.rpl() + 1 {
        return Ok(false);
    }
    let grown = t.child(level)?;
    let last = grown.len() - 1;
    let found = grown
        .removable_leaves()
        .filter(|&j| j != last)
        .any(|j| equals_without(grown.levels(), j, u.levels()));
    Ok(found)
}

/// Whether `u` is reachable from `t` by one delete-and-append move.
/// Identical trees are not adjacent.
pub fn is_adjacent(t: &OrderedTree, u: &OrderedTree) -> Result<bool> {
    same_size(t, u)?;
    if t == u {
        return Ok(false);
    }
    Ok(t
        .removable_leaves()
        .any(|r| leaf_insertions(t.levels(), r, u).next().is_some()))
}

/// The canonical witness of an adjacent pair: the largest `remove_at`
/// that works, then the smallest `insert_at` for it.
pub fn delta(t: &OrderedTree, u: &OrderedTree) -> Result<Delta> {
    same_size(t, u)?;
    if t == u {
        return Err(Error::NotAdjacent);
    }
    let removable: Vec<usize> = t.removable_leaves().collect();
    for &r in removable.iter().rev() {
        if let Some(p) = leaf_insertions(t.levels(), r, u).next() {
            return Ok(Delta {
                remove_at: r + 1,
                insert_at: p + 1,
                insert_level: u.levels()[p],
            });
        }
    }
    Err(Error::NotAdjacent)
}

pub fn apply_delta(t: &OrderedTree, d: Delta) -> Result<OrderedTree> {
    let n = t.len();
    if d.remove_at < 2 || d.remove_at > n || !t.is_leaf(d.remove_at - 1) {
        return Err(Error::InvalidDelta(format!(
            "position {} of {t} is not a removable leaf",
            d.remove_at
        )));
    }
    if d.insert_at < 1 || d.insert_at > n {
        return Err(Error::InvalidDelta(format!(
            "insert position {} outside 1..={n}",
            d.insert_at
        )));
    }
    let mut levels = t.levels().to_vec();
    levels.remove(d.remove_at - 1);
    levels.insert(d.insert_at - 1, d.insert_level);
    let out = OrderedTree::from_levels(levels)
        .map_err(|e| Error::InvalidDelta(format!("result is not a tree: {e}")))?;
    if !out.is_leaf(d.insert_at - 1) {
        return Err(Error::InvalidDelta(format!(
            "inserted vertex at {} is not a leaf",
            d.insert_at
        )));
    }
    Ok(out)
}

fn same_size(t: &OrderedTree, u: &OrderedTree) -> Result<()> {
    if t.len() != u.len() {
        return Err(Error::SizeMismatch {
            left: t.len(),
            right: u.len(),
        });
    }
    Ok(())
}

/// `seq` with position `skip` removed equals `target`.
fn equals_without(seq: &[u32], skip: usize, target: &[u32]) -> bool {
    seq.len() == target.len() + 1
        && seq[..skip] == target[..skip]
        && seq[skip + 1..] == target[skip..]
}

/// 0-based positions `p` of leaves of `u` such that deleting `p` from `u`
/// gives `t` with position `removed` deleted, in increasing order.
///
/// The valid deletion positions form a contiguous range bounded by the
/// common prefix and the common suffix, so this is linear in the size.
fn leaf_insertions<'a>(
    t: &'a [u32],
    removed: usize,
    u: &'a OrderedTree,
) -> impl Iterator<Item = usize> + 'a {
    let ul = u.levels();
    let n = ul.len();
    let short = |j: usize| if j < removed { t[j] } else { t[j + 1] };

    let prefix = (0..n - 1).take_while(|&j| ul[j] == short(j)).count();
    let suffix = (0..n - 1)
        .take_while(|&m| ul[n - 1 - m] == short(n - 2 - m))
        .count();
    let lo = n - 1 - suffix;
    (lo..=prefix).filter(move |&p| u.is_leaf(p))
}
