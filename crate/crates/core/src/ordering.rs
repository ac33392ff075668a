//! The step machine that orders the children of each tree of level `k`.
//!
//! Given consecutive trees `T_i`, `T_{i+1}` of the level-`k` Gray code and
//! the already chosen leftmost child of `T_i`, one step fixes the rest of
//! `T_i`'s child order and the leftmost child of `T_{i+1}`, such that the
//! rightmost child of `T_i` and the leftmost child of `T_{i+1}` differ by
//! one delete-and-append move. Siblings always do, so concatenating the
//! child lists yields a Gray code for level `k + 1`.
//!
//! Children are identified by their index `j` in `C(T, j)`, which is also
//! their `rpl`. A child of `T` is therefore fully described by `T` and a
//! small integer, which is what the streaming generator stores.

use std::fmt;

use crate::error::{Error, Result};
use crate::relations::{has_pony_tail, is_adjacent, is_copying};
use crate::tree::OrderedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C1a,
    C1b,
    C2a1,
    C2a2,
    C2b1,
    C2b2,
    C2c1,
    C2c2,
    C3a1,
    C3a2,
    C3b1,
    C3b2,
    C3c1,
    C3c1Other,
    C3c2,
    C4a1,
    C4a2,
    C4b1Lt,
    C4b1EqRplT,
    C4b1EqOther,
    C4b2,
    C4b3,
    Last,
}

impl CaseId {
    pub const ALL: [CaseId; 23] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C2a1,
        CaseId::C2a2,
        CaseId::C2b1,
        CaseId::C2b2,
        CaseId::C2c1,
        CaseId::C2c2,
        CaseId::C3a1,
        CaseId::C3a2,
        CaseId::C3b1,
        CaseId::C3b2,
        CaseId::C3c1,
        CaseId::C3c1Other,
        CaseId::C3c2,
        CaseId::C4a1,
        CaseId::C4a2,
        CaseId::C4b1Lt,
        CaseId::C4b1EqRplT,
        CaseId::C4b1EqOther,
        CaseId::C4b2,
        CaseId::C4b3,
        CaseId::Last,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C1a => "1a",
            CaseId::C1b => "1b",
            CaseId::C2a1 => "2a1",
            CaseId::C2a2 => "2a2",
            CaseId::C2b1 => "2b1",
            CaseId::C2b2 => "2b2",
            CaseId::C2c1 => "2c1",
            CaseId::C2c2 => "2c2",
            CaseId::C3a1 => "3a1",
            CaseId::C3a2 => "3a2",
            CaseId::C3b1 => "3b1",
            CaseId::C3b2 => "3b2",
            CaseId::C3c1 => "3c1",
            CaseId::C3c1Other => "3c1_other",
            CaseId::C3c2 => "3c2",
            CaseId::C4a1 => "4a1",
            CaseId::C4a2 => "4a2",
            CaseId::C4b1Lt => "4b1_lt",
            CaseId::C4b1EqRplT => "4b1_eq_rplT",
            CaseId::C4b1EqOther => "4b1_eq_other",
            CaseId::C4b2 => "4b2",
            CaseId::C4b3 => "4b3",
            CaseId::Last => "LAST",
        }
    }

    /// Cases that can be classified but must never be selected.
    pub fn is_forbidden(self) -> bool {
        matches!(self, CaseId::C3a1 | CaseId::C3c1Other | CaseId::C4b3)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Hit counts per case.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseHistogram {
    counts: [u64; CaseId::ALL.len()],
}

impl CaseHistogram {
    pub fn record(&mut self, case: CaseId) {
        self.counts[case.index()] += 1;
    }

    pub fn get(&self, case: CaseId) -> u64 {
        self.counts[case.index()]
    }

    pub fn merge(&mut self, other: &CaseHistogram) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    pub fn forbidden_hits(&self) -> u64 {
        CaseId::ALL
            .iter()
            .filter(|c| c.is_forbidden())
            .map(|&c| self.get(c))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CaseId, u64)> + '_ {
        CaseId::ALL.iter().map(|&c| (c, self.get(c)))
    }
}

/// One line per case: `<label> <count>`.
impl fmt::Display for CaseHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (case, count) in self.iter() {
            writeln!(f, "{case} {count}")?;
        }
        Ok(())
    }
}

/// Child order of `T_i` as child indices, plus the leftmost child index of
/// `T_{i+1}` (zero after the last tree of a level).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildPlan {
    pub case: CaseId,
    pub order: Vec<u32>,
    pub next_leftmost: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDecision {
    pub case: CaseId,
    pub children_of_current: Vec<OrderedTree>,
    /// `None` after the last tree of a level.
    pub leftmost_of_next: Option<OrderedTree>,
}

/// Which case applies, forbidden ones included.
///
/// Fails only with case exhaustion: when `T_i` or `T_{i+1}` has the
/// pony-tail but neither copying relation holds between them.
pub fn classify_index(current: &OrderedTree, next: &OrderedTree, leftmost: u32) -> Result<CaseId> {
    let r = current.rpl();
    let s = next.rpl();
    let first = leftmost == 1;
    let exhausted = || Error::CaseExhaustion {
        current: current.to_string(),
        next: next.to_string(),
    };
    let case = match (r == 1, s == 1) {
        (true, true) => {
            if first {
                CaseId::C1a
            } else {
                CaseId::C1b
            }
        }
        (true, false) => {
            if !has_pony_tail(next) {
                pick(first, CaseId::C2a1, CaseId::C2a2)
            } else if is_copying(current, next)? {
                pick(first, CaseId::C2b1, CaseId::C2b2)
            } else if is_copying(next, current)? {
                pick(first, CaseId::C2c1, CaseId::C2c2)
            } else {
                return Err(exhausted());
            }
        }
        (false, true) => {
            if !has_pony_tail(current) {
                pick(first, CaseId::C3a1, CaseId::C3a2)
            } else if is_copying(next, current)? {
                pick(first, CaseId::C3b1, CaseId::C3b2)
            } else if is_copying(current, next)? {
                if !first {
                    CaseId::C3c2
                } else if is_copying(next, current)? {
                    CaseId::C3c1
                } else {
                    CaseId::C3c1Other
                }
            } else {
                return Err(exhausted());
            }
        }
        (false, false) => {
            if first {
                pick(r <= s, CaseId::C4a1, CaseId::C4a2)
            } else if r < s {
                CaseId::C4b1Lt
            } else if r == s {
                pick(leftmost == r, CaseId::C4b1EqRplT, CaseId::C4b1EqOther)
            } else if leftmost != s {
                CaseId::C4b2
            } else {
                CaseId::C4b3
            }
        }
    };
    Ok(case)
}

fn pick(cond: bool, yes: CaseId, no: CaseId) -> CaseId {
    if cond {
        yes
    } else {
        no
    }
}

/// Middle children sit between the leftmost and the rightmost child.
#[derive(Clone, Copy)]
enum Middle {
    Increasing,
    Decreasing,
}

/// Runs one step on child indices. Forbidden cases are errors.
pub fn plan(current: &OrderedTree, next: &OrderedTree, leftmost: u32) -> Result<ChildPlan> {
    let r = current.rpl();
    let s = next.rpl();
    let case = classify_index(current, next, leftmost)?;
    use CaseId::*;
    let (rightmost, next_leftmost, middle) = match case {
        C1a | C2b1 | C3b1 | C3c1 => (2, 2, Middle::Decreasing),
        C2a1 | C2c1 => (2, 1, Middle::Decreasing),
        C1b | C2a2 | C2b2 | C2c2 | C3a2 | C3b2 | C3c2 => (1, 1, Middle::Decreasing),
        C4a1 => (r, r, Middle::Increasing),
        C4a2 => (s, s, Middle::Increasing),
        C4b1Lt => (1, r, Middle::Decreasing),
        C4b1EqRplT => (r + 1, r + 1, Middle::Decreasing),
        C4b1EqOther => (r, r, Middle::Decreasing),
        C4b2 => (s, s, Middle::Decreasing),
        C3a1 | C3c1Other | C4b3 => {
            return Err(Error::ForbiddenCase {
                case,
                current: current.to_string(),
                next: next.to_string(),
            })
        }
        Last => unreachable!("classify never yields LAST"),
    };
    debug_assert_ne!(rightmost, leftmost, "case {case} at {current}");
    let mut order = Vec::with_capacity(r as usize + 1);
    order.push(leftmost);
    let rest = (1..=r + 1).filter(|&j| j != leftmost && j != rightmost);
    match middle {
        Middle::Increasing => order.extend(rest),
        Middle::Decreasing => order.extend(rest.rev()),
    }
    order.push(rightmost);
    Ok(ChildPlan {
        case,
        order,
        next_leftmost,
    })
}

/// Child order of the last tree of a level: the given leftmost child, then
/// the rest in decreasing `rpl`.
pub fn plan_last(last: &OrderedTree, leftmost: u32) -> ChildPlan {
    let mut order = Vec::with_capacity(last.rpl() as usize + 1);
    order.push(leftmost);
    order.extend((1..=last.rpl() + 1).rev().filter(|&j| j != leftmost));
    ChildPlan {
        case: CaseId::Last,
        order,
        next_leftmost: 0,
    }
}

/// Checks that the boundary pair of a plan is one move apart.
pub fn check_boundary(current: &OrderedTree, next: &OrderedTree, plan: &ChildPlan) -> Result<()> {
    let right = current.child(*plan.order.last().expect("non-empty order"))?;
    let left = next.child(plan.next_leftmost)?;
    if is_adjacent(&right, &left)? {
        Ok(())
    } else {
        Err(Error::AdjacencyViolation {
            case: plan.case,
            left: right.to_string(),
            right: left.to_string(),
        })
    }
}

fn leftmost_index(current: &OrderedTree, leftmost: &OrderedTree) -> Result<u32> {
    if leftmost.len() != current.len() + 1 || leftmost.levels()[..current.len()] != *current.levels() {
        return Err(Error::NotAChild {
            tree: leftmost.to_string(),
            parent: current.to_string(),
        });
    }
    Ok(leftmost.rpl())
}

/// Case selected for step `(current, next)` with the given leftmost child
/// of `current`. Forbidden cases are reported as errors.
pub fn classify(current: &OrderedTree, next: &OrderedTree, leftmost: &OrderedTree) -> Result<CaseId> {
    let case = classify_index(current, next, leftmost_index(current, leftmost)?)?;
    if case.is_forbidden() {
        return Err(Error::ForbiddenCase {
            case,
            current: current.to_string(),
            next: next.to_string(),
        });
    }
    Ok(case)
}

/// One full step, with the boundary adjacency checked.
pub fn step(current: &OrderedTree, next: &OrderedTree, leftmost: &OrderedTree) -> Result<StepDecision> {
    if current.len() != next.len() {
        return Err(Error::SizeMismatch {
            left: current.len(),
            right: next.len(),
        });
    }
    let plan = plan(current, next, leftmost_index(current, leftmost)?)?;
    check_boundary(current, next, &plan)?;
    Ok(StepDecision {
        case: plan.case,
        children_of_current: materialize(current, &plan.order),
        leftmost_of_next: Some(next.child(plan.next_leftmost)?),
    })
}

pub fn finalize_last(last: &OrderedTree, leftmost: &OrderedTree) -> Result<Vec<OrderedTree>> {
    let plan = plan_last(last, leftmost_index(last, leftmost)?);
    Ok(materialize(last, &plan.order))
}

fn materialize(parent: &OrderedTree, order: &[u32]) -> Vec<OrderedTree> {
    order
        .iter()
        .map(|&j| parent.child(j).expect("planned index in range"))
        .collect()
}

/// Loop-invariant check on three consecutive trees of one level:
///
/// * outer `rpl`s both 1 and middle `rpl > 1` require the middle tree to
///   have the pony-tail and the third to be copying the middle one;
/// * equal outer `rpl`s of at least 2 require the middle `rpl` to be
///   strictly smaller.
pub fn check_co1(a: &OrderedTree, b: &OrderedTree, c: &OrderedTree) -> Result<bool> {
    for other in [b, c] {
        if other.len() != a.len() {
            return Err(Error::SizeMismatch {
                left: a.len(),
                right: other.len(),
            });
        }
    }
    let (ra, rb, rc) = (a.rpl(), b.rpl(), c.rpl());
    if ra == 1 && rc == 1 && rb > 1 && !(has_pony_tail(b) && c != b && is_copying(c, b)?) {
        return Ok(false);
    }
    if ra == rc && ra >= 2 && ra <= rb {
        return Ok(false);
    }
    Ok(true)
}

/// The same invariant applied to a window of the child level.
pub fn check_co2(window: [&OrderedTree; 3]) -> Result<bool> {
    check_co1(window[0], window[1], window[2])
}
