//! Brute-force ground truth and the verification report.
//!
//! Nothing here uses the step machine: enumeration walks the level-step
//! rule directly, and adjacency is re-derived by comparing every pair of
//! leaf deletions. The generator is only run as the thing under test.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::generator::GrayCode;
use crate::ordering::{check_co1, check_co2, CaseHistogram, CaseId};
use crate::relations::{has_pony_tail, is_copying};
use crate::tree::{LevelSet, OrderedTree};

pub const DEFAULT_CAP: usize = 14;

/// All trees with `n` vertices in lexicographic order of level sequence.
pub fn enumerate_all(n: usize) -> Result<LevelSet> {
    enumerate_all_capped(n, DEFAULT_CAP)
}

pub fn enumerate_all_capped(n: usize, cap: usize) -> Result<LevelSet> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut levels = Vec::with_capacity(n);
    levels.push(1u32);
    extend(&mut levels, n, &mut out);
    Ok(LevelSet::new_unchecked(n, out))
}

fn extend(levels: &mut Vec<u32>, n: usize, out: &mut Vec<OrderedTree>) {
    if levels.len() == n {
        out.push(OrderedTree::from_levels(levels.clone()).expect("built by the step rule"));
        return;
    }
    let prev = *levels.last().expect("root present");
    for level in 2..=prev + 1 {
        levels.push(level);
        extend(levels, n, out);
        levels.pop();
    }
}

/// `binom(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> BigUint {
    let mut binom = BigUint::from(1u32);
    for i in 0..m {
        binom *= 2 * m - i;
        binom /= i + 1;
    }
    binom / (m + 1)
}

/// Leaf test on a raw level sequence; the root counts only when alone.
fn leaves(levels: &[u32]) -> impl Iterator<Item = usize> + '_ {
    (1..levels.len()).filter(move |&j| j + 1 == levels.len() || levels[j + 1] <= levels[j])
}

/// Delete-and-append check by trying every leaf of `a` against every leaf
/// of `b`: the move exists iff some pair of deletions gives equal
/// sequences.
pub fn adjacent_brute(a: &OrderedTree, b: &OrderedTree) -> bool {
    let (x, y) = (a.levels(), b.levels());
    if x.len() != y.len() || x == y {
        return false;
    }
    leaves(x).any(|r| {
        leaves(y).any(|p| {
            let xs = x.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, v)| v);
            let ys = y.iter().enumerate().filter(|&(j, _)| j != p).map(|(_, v)| v);
            xs.eq(ys)
        })
    })
}

/// Which checks [`verify_with`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub gray: bool,
    pub unique: bool,
    pub complete: bool,
    pub co1: bool,
    pub co2: bool,
    pub cases: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            gray: true,
            unique: true,
            complete: true,
            co1: true,
            co2: true,
            cases: true,
        }
    }

    pub fn none() -> Self {
        Checks {
            gray: false,
            unique: false,
            complete: false,
            co1: false,
            co2: false,
            cases: false,
        }
    }
}

impl Default for Checks {
    fn default() -> Self {
        Self::all()
    }
}

/// Comma-separated subset of `gray,unique,complete,co1,co2,cases`.
impl FromStr for Checks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Checks::none();
        for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match name {
                "gray" => c.gray = true,
                "unique" => c.unique = true,
                "complete" => c.complete = true,
                "co1" => c.co1 = true,
                "co2" => c.co2 = true,
                "cases" => c.cases = true,
                "all" => c = Checks::all(),
                other => return Err(Error::Parse(format!("unknown check {other:?}"))),
            }
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Co1,
    Co2,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Co1 => "co1",
            Invariant::Co2 => "co2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFailure {
    /// Vertex count of the trees in the window.
    pub level: usize,
    /// 0-based position of the window's first tree in its level's code.
    pub window: usize,
    pub which: Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub total: u64,
    pub expected: BigUint,
    pub duplicates: Vec<OrderedTree>,
    pub missing: Vec<OrderedTree>,
    /// 0-based index pairs of consecutive trees that are not one move apart.
    pub adjacency_failures: Vec<(u64, u64)>,
    pub invariant_failures: Vec<InvariantFailure>,
    pub case_histogram: CaseHistogram,
    pub forbidden_case_hits: u64,
    /// Error that stopped generation early, if any.
    pub generation_error: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.duplicates.is_empty()
            && self.missing.is_empty()
            && self.adjacency_failures.is_empty()
            && self.invariant_failures.is_empty()
            && self.forbidden_case_hits == 0
            && self.generation_error.is_none()
            && BigUint::from(self.total) == self.expected
    }

    /// `PASS n=.. total=.. expected=.. ...` on one line.
    pub fn summary_line(&self) -> String {
        format!(
            "{} n={} total={} expected={} duplicates={} missing={} adjacency_failures={} invariant_failures={} forbidden_case_hits={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.n,
            self.total,
            self.expected,
            self.duplicates.len(),
            self.missing.len(),
            self.adjacency_failures.len(),
            self.invariant_failures.len(),
            self.forbidden_case_hits,
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 10;
        writeln!(f, "{}", self.summary_line())?;
        if let Some(err) = &self.generation_error {
            writeln!(f, "generation stopped: {err}")?;
        }
        for (label, trees) in [("duplicate", &self.duplicates), ("missing", &self.missing)] {
            for t in trees.iter().take(SHOWN) {
                writeln!(f, "{label}: {t}")?;
            }
        }
        for (i, j) in self.adjacency_failures.iter().take(SHOWN) {
            writeln!(f, "not adjacent: #{i} -> #{j}")?;
        }
        for fail in self.invariant_failures.iter().take(SHOWN) {
            writeln!(
                f,
                "{} violated: size {} window {}",
                fail.which, fail.level, fail.window
            )?;
        }
        writeln!(f, "cases:")?;
        for (case, count) in self.case_histogram.iter() {
            writeln!(f, "  {case} {count}")?;
        }
        Ok(())
    }
}

pub fn verify(n: usize) -> Result<VerificationReport> {
    verify_with(n, Checks::all(), DEFAULT_CAP)
}

/// Runs the checked generator for `n` and compares it with brute force.
/// Findings are reported, never thrown; only a bad `n` is an error.
pub fn verify_with(n: usize, checks: Checks, cap: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }

    let windows = Rc::new(RefCell::new(WindowChecker::new(n, checks)));
    let sink = Rc::clone(&windows);
    let mut gen = GrayCode::new(n)?.with_observer(move |size, tree| sink.borrow_mut().push(size, tree));

    let keep = checks.unique || checks.complete;
    let mut emitted = Vec::new();
    let mut prev: Option<OrderedTree> = None;
    let mut total = 0u64;
    let mut adjacency_failures = Vec::new();
    let mut generation_error = None;
    let mut forbidden_case_hits = 0;

    for item in gen.by_ref() {
        let tree = match item {
            Ok(t) => t,
            Err(e) => {
                if let Error::ForbiddenCase { .. } = e {
                    forbidden_case_hits += 1;
                }
                generation_error = Some(e.to_string());
                break;
            }
        };
        if checks.gray {
            if let Some(p) = &prev {
                if !adjacent_brute(p, &tree) {
                    adjacency_failures.push((total - 1, total));
                }
            }
        }
        if keep {
            emitted.push(tree.clone());
        }
        prev = Some(tree);
        total += 1;
    }

    let (duplicates, missing) = if keep {
        compare_sets(emitted, &enumerate_all_capped(n, cap)?.into_trees())
    } else {
        (Vec::new(), Vec::new())
    };
    let case_histogram = if checks.cases {
        gen.case_histogram().clone()
    } else {
        CaseHistogram::default()
    };
    forbidden_case_hits += gen.case_histogram().forbidden_hits();
    drop(gen);

    let invariant_failures = Rc::try_unwrap(windows)
        .map(|w| w.into_inner().failures)
        .unwrap_or_default();

    Ok(VerificationReport {
        n,
        total,
        expected: catalan(n as u64 - 1),
        duplicates: if checks.unique { duplicates } else { Vec::new() },
        missing: if checks.complete { missing } else { Vec::new() },
        adjacency_failures,
        invariant_failures,
        case_histogram,
        forbidden_case_hits,
        generation_error,
    })
}

/// Sorted merge: trees seen more than once, and expected trees never seen.
fn compare_sets(mut got: Vec<OrderedTree>, expected: &[OrderedTree]) -> (Vec<OrderedTree>, Vec<OrderedTree>) {
    got.sort_unstable();
    let mut duplicates = Vec::new();
    for pair in got.windows(2) {
        if pair[0] == pair[1] && duplicates.last() != Some(&pair[0]) {
            duplicates.push(pair[0].clone());
        }
    }
    got.dedup();
    let mut missing = Vec::new();
    let mut it = got.iter().peekable();
    for e in expected {
        while it.peek().is_some_and(|g| *g < e) {
            it.next();
        }
        if it.peek() != Some(&e) {
            missing.push(e.clone());
        }
    }
    (duplicates, missing)
}

/// Sliding three-tree windows per level. Level `k` is the parent level for
/// `k + 1` and the child level for `k - 1`, so its windows are checked as
/// co1 when `k < n` and as co2 when `k >= 2`.
struct WindowChecker {
    n: usize,
    checks: Checks,
    recent: Vec<VecDeque<OrderedTree>>,
    counts: Vec<usize>,
    failures: Vec<InvariantFailure>,
}

impl WindowChecker {
    fn new(n: usize, checks: Checks) -> Self {
        WindowChecker {
            n,
            checks,
            recent: vec![VecDeque::with_capacity(3); n],
            counts: vec![0; n],
            failures: Vec::new(),
        }
    }

    fn push(&mut self, size: usize, tree: &OrderedTree) {
        if !(self.checks.co1 || self.checks.co2) {
            return;
        }
        let k = size - 1;
        let q = &mut self.recent[k];
        if q.len() == 3 {
            q.pop_front();
        }
        q.push_back(tree.clone());
        self.counts[k] += 1;
        if q.len() < 3 {
            return;
        }
        let window = self.counts[k] - 3;
        if self.checks.co1 && size < self.n && !check_co1(&q[0], &q[1], &q[2]).unwrap_or(false) {
            self.failures.push(InvariantFailure {
                level: size,
                window,
                which: Invariant::Co1,
            });
        }
        if self.checks.co2 && size >= 2 && !check_co2([&q[0], &q[1], &q[2]]).unwrap_or(false) {
            self.failures.push(InvariantFailure {
                level: size,
                window,
                which: Invariant::Co2,
            });
        }
    }
}

/// Exhaustive check that, whenever `rpl(t) = 1` and `t2` is copying `t`,
/// `C(t2, 1)` is copying `C(t, 2)`. Returns how many hypothesis pairs were
/// checked (split by whether `t2` has the pony-tail) and the
/// counterexamples.
pub fn copying_lifts_to_children(max_size: usize) -> Result<CopyLiftReport> {
    let mut report = CopyLiftReport::default();
    for n in 2..=max_size {
        let trees = enumerate_all_capped(n, max_size)?.into_trees();
        for t in trees.iter().filter(|t| t.rpl() == 1) {
            for t2 in &trees {
                if t2 == t || !is_copying(t2, t)? {
                    continue;
                }
                if has_pony_tail(t2) {
                    report.with_pony_tail += 1;
                } else {
                    report.without_pony_tail += 1;
                }
                if !is_copying(&t2.child(1)?, &t.child(2)?)? {
                    report.counterexamples.push((t.clone(), t2.clone()));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CopyLiftReport {
    pub without_pony_tail: u64,
    pub with_pony_tail: u64,
    pub counterexamples: Vec<(OrderedTree, OrderedTree)>,
}

/// Cases that a full run is expected to reach at least once.
pub fn reachable_cases() -> impl Iterator<Item = CaseId> {
    CaseId::ALL.into_iter().filter(|c| !c.is_forbidden())
}
