//! Streaming Gray code generation and the eager family tree.
//!
//! [`GrayCode`] keeps one small state per level. The state for size `k`
//! pulls trees of size `k - 1` from the state below with one tree of
//! lookahead, runs one ordering step per parent, and emits that parent's
//! children one at a time. Only the parent, its lookahead and an index
//! list are stored, so the stack holds `O(n)` trees in total.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ordering::{self, CaseHistogram, ChildPlan};
use crate::relations::{self, Delta};
use crate::tree::OrderedTree;

pub const DEFAULT_FAMILY_CAP: usize = 12;

type Observer = Box<dyn FnMut(usize, &OrderedTree)>;

#[derive(Default)]
struct LevelState {
    /// Parent whose children are being emitted.
    current: Option<OrderedTree>,
    lookahead: Option<OrderedTree>,
    order: Vec<u32>,
    pos: usize,
    next_leftmost: u32,
    started: bool,
    done: bool,
}

impl LevelState {
    fn held(&self) -> usize {
        self.current.is_some() as usize + self.lookahead.is_some() as usize
    }
}

/// Gray code for the trees with `k` vertices; see the module docs.
///
/// Items are `Err` only if the ordering machine hits a case it must never
/// reach, which would be a bug rather than bad input. The stream ends after
/// the first error.
pub struct GrayCode {
    k: usize,
    checked: bool,
    root_emitted: bool,
    /// `levels[d]` emits trees with `d + 2` vertices.
    levels: Vec<LevelState>,
    histogram: CaseHistogram,
    max_held: Vec<usize>,
    observer: Option<Observer>,
    failed: bool,
}

impl GrayCode {
    /// Generator with boundary adjacency checks on every step.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::SizeTooSmall { n: 0, min: 1 });
        }
        let depth = k - 1;
        Ok(GrayCode {
            k,
            checked: true,
            root_emitted: false,
            levels: (0..depth).map(|_| LevelState::default()).collect(),
            histogram: CaseHistogram::default(),
            max_held: vec![0; depth],
            observer: None,
            failed: false,
        })
    }

    /// Generator without the per-step adjacency check.
    pub fn unchecked(k: usize) -> Result<Self> {
        let mut g = Self::new(k)?;
        g.checked = false;
        Ok(g)
    }

    /// Calls `f(size, tree)` for every tree produced at every level, in
    /// production order, including the intermediate levels below `k`.
    pub fn with_observer(mut self, f: impl FnMut(usize, &OrderedTree) + 'static) -> Self {
        self.observer = Some(Box::new(f));
        self
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Cases taken by every step so far, `LAST` included.
    pub fn case_histogram(&self) -> &CaseHistogram {
        &self.histogram
    }

    /// Largest number of trees any single level state has held at once.
    pub fn max_live_per_level(&self) -> usize {
        self.max_held.iter().copied().max().unwrap_or(0)
    }

    /// Sum over levels of the per-level maxima.
    pub fn max_live_total(&self) -> usize {
        self.max_held.iter().sum()
    }

    fn observe(&mut self, size: usize, tree: &OrderedTree) {
        if let Some(f) = self.observer.as_mut() {
            f(size, tree);
        }
    }

    fn pull(&mut self, size: usize) -> Option<Result<OrderedTree>> {
        if size == 1 {
            if self.root_emitted {
                return None;
            }
            self.root_emitted = true;
            let root = OrderedTree::trivial();
            self.observe(1, &root);
            return Some(Ok(root));
        }
        let d = size - 2;
        loop {
            let state = &mut self.levels[d];
            if state.pos < state.order.len() {
                let j = state.order[state.pos];
                state.pos += 1;
                let parent = state.current.as_ref().expect("parent while emitting");
                let tree = match parent.child(j) {
                    Ok(t) => t,
                    Err(e) => return Some(Err(e)),
                };
                self.observe(size, &tree);
                return Some(Ok(tree));
            }
            if state.done {
                return None;
            }
            let leftmost = if state.started {
                state.current = state.lookahead.take();
                state.next_leftmost
            } else {
                state.started = true;
                let first = match self.pull(size - 1) {
                    Some(Ok(t)) => Some(t),
                    Some(Err(e)) => return Some(Err(e)),
                    None => None,
                };
                self.levels[d].current = first;
                1
            };
            if self.levels[d].current.is_none() {
                self.levels[d].done = true;
                return None;
            }
            let lookahead = match self.pull(size - 1) {
                Some(Ok(t)) => Some(t),
                Some(Err(e)) => return Some(Err(e)),
                None => None,
            };
            let state = &mut self.levels[d];
            state.lookahead = lookahead;
            let current = state.current.as_ref().expect("checked above");
            let plan = match state.lookahead.as_ref() {
                Some(next) => match plan_step(current, next, leftmost, self.checked) {
                    Ok(p) => p,
                    Err(e) => return Some(Err(e)),
                },
                None => ordering::plan_last(current, leftmost),
            };
            self.histogram.record(plan.case);
            state.order = plan.order;
            state.pos = 0;
            state.next_leftmost = plan.next_leftmost;
            self.max_held[d] = self.max_held[d].max(state.held());
        }
    }
}

fn plan_step(current: &OrderedTree, next: &OrderedTree, leftmost: u32, checked: bool) -> Result<ChildPlan> {
    let plan = ordering::plan(current, next, leftmost)?;
    if checked {
        ordering::check_boundary(current, next, &plan)?;
    }
    Ok(plan)
}

impl Iterator for GrayCode {
    type Item = Result<OrderedTree>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.pull(self.k);
        if matches!(item, Some(Err(_))) {
            self.failed = true;
        }
        item
    }
}

/// Checked Gray code stream for size `k >= 1`.
pub fn gray_code(k: usize) -> Result<GrayCode> {
    GrayCode::new(k)
}

/// Collects [`gray_code`] into a vector.
pub fn gray_code_vec(k: usize) -> Result<Vec<OrderedTree>> {
    gray_code(k)?.collect()
}

/// The Gray code as edits: the first tree, then one [`Delta`] per step.
pub struct DeltaStream {
    inner: GrayCode,
    prev: Option<OrderedTree>,
    first: Option<OrderedTree>,
}

impl DeltaStream {
    pub fn new(inner: GrayCode) -> Result<Self> {
        let mut inner = inner;
        let first = inner.next().transpose()?;
        Ok(DeltaStream {
            inner,
            prev: first.clone(),
            first,
        })
    }

    /// The tree the deltas start from.
    pub fn first(&self) -> Option<&OrderedTree> {
        self.first.as_ref()
    }

    pub fn generator(&self) -> &GrayCode {
        &self.inner
    }
}

impl Iterator for DeltaStream {
    type Item = Result<Delta>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match self.inner.next()? {
            Ok(t) => t,
            Err(e) => return Some(Err(e)),
        };
        let prev = self.prev.replace(next);
        let prev = prev.expect("first tree precedes deltas");
        Some(relations::delta(&prev, self.prev.as_ref().expect("just set")))
    }
}

/// `|S_k| - 1` deltas for `k >= 2`.
pub fn delta_stream(k: usize) -> Result<DeltaStream> {
    if k < 2 {
        return Err(Error::SizeTooSmall { n: k, min: 2 });
    }
    DeltaStream::new(gray_code(k)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyNode {
    pub tree: OrderedTree,
    /// Indices into [`FamilyTree::nodes`], left to right.
    pub children: Vec<usize>,
}

/// Every tree of size `1..=n`, each linked to its children in Gray code
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTree {
    n: usize,
    nodes: Vec<FamilyNode>,
    /// `levels[k - 1]` lists the size-`k` nodes left to right.
    levels: Vec<Vec<usize>>,
}

impl FamilyTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[FamilyNode] {
        &self.nodes
    }

    pub fn root(&self) -> &FamilyNode {
        &self.nodes[0]
    }

    /// Trees with `k` vertices, left to right.
    pub fn level(&self, k: usize) -> impl Iterator<Item = &OrderedTree> + '_ {
        self.levels[k - 1].iter().map(|&id| &self.nodes[id].tree)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

pub fn build_family_tree(n: usize) -> Result<FamilyTree> {
    build_family_tree_capped(n, DEFAULT_FAMILY_CAP)
}

/// Materializes the ordered family tree level by level with the same
/// step machine the streaming generator uses.
pub fn build_family_tree_capped(n: usize, cap: usize) -> Result<FamilyTree> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut nodes = vec![FamilyNode {
        tree: OrderedTree::trivial(),
        children: Vec::new(),
    }];
    let mut levels = vec![vec![0usize]];
    for _ in 1..n {
        let parents = levels.last().expect("root level").clone();
        let mut next_level = Vec::new();
        let mut leftmost = 1;
        for (idx, &pid) in parents.iter().enumerate() {
            let plan = match parents.get(idx + 1) {
                Some(&nid) => {
                    plan_step(&nodes[pid].tree, &nodes[nid].tree, leftmost, true)?
                }
                None => ordering::plan_last(&nodes[pid].tree, leftmost),
            };
            for &j in &plan.order {
                let tree = nodes[pid].tree.child(j)?;
                let id = nodes.len();
                nodes.push(FamilyNode {
                    tree,
                    children: Vec::new(),
                });
                nodes[pid].children.push(id);
                next_level.push(id);
            }
            leftmost = plan.next_leftmost;
        }
        levels.push(next_level);
    }
    Ok(FamilyTree { n, nodes, levels })
}

/// Graphviz rendering. Node ids are parenthesis encodings; `ordering=out`
/// keeps each node's children in list order, and one `rank=same`
/// subgraph per level fixes the left-to-right order of every level.
pub fn export_dot(ft: &FamilyTree) -> String {
    let mut out = String::new();
    let name = |id: usize| ft.nodes[id].tree.to_parens();
    out.push_str("digraph family_tree {\n");
    out.push_str("  graph [ordering=out];\n");
    out.push_str("  node [shape=plaintext, fontname=\"monospace\"];\n");
    for (k, ids) in ft.levels.iter().enumerate() {
        let _ = writeln!(out, "  subgraph level_{} {{", k + 1);
        out.push_str("    rank=same;\n");
        for &id in ids {
            let _ = writeln!(out, "    \"{}\";", name(id));
        }
        if ids.len() > 1 {
            let chain: Vec<String> = ids.iter().map(|&id| format!("\"{}\"", name(id))).collect();
            let _ = writeln!(out, "    {} [style=invis];", chain.join(" -> "));
        }
        out.push_str("  }\n");
    }
    for ids in &ft.levels {
        for &id in ids {
            for &c in &ft.nodes[id].children {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", name(id), name(c));
            }
        }
    }
    out.push_str("}\n");
    out
}
