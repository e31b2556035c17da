//! Reverse Prüfer (RP) codes and the rooted Prüfer codec.
//!
//! The RP-code of a rooted tree on `1..=n` records, for every non-root
//! vertex, the parent of that vertex. Vertices are visited in increasing
//! order of their smallest descendant, with ties going to the vertex closer
//! to the root. Decoding grows the tree one labeled vertex at a time while
//! keeping exactly one unlabeled leaf around.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Label, LabeledTree};

/// `σ_1 .. σ_{n-1}`; empty for the single-vertex tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RpCode {
    n: usize,
    entries: Vec<Label>,
}

impl RpCode {
    pub fn new(n: usize, entries: Vec<Label>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() + 1 != n {
            return Err(Error::CodeLength {
                len: entries.len(),
                n,
            });
        }
        check_entries(&entries, n)?;
        Ok(RpCode { n, entries })
    }

    /// The vertex count is implied by the length.
    pub fn from_entries(entries: Vec<Label>) -> Result<Self> {
        Self::new(entries.len() + 1, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Label] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Label> {
        self.entries
    }
}

/// Which leaf the Prüfer construction deletes at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeafOrder {
    /// The textbook code: delete the smallest leaf of the unrooted tree.
    #[default]
    Smallest,
    /// Keep vertex 1 as the root and delete the largest non-root leaf. The
    /// `n - 1` recorded parents then always end in 1, and read backwards they
    /// are the RP-code.
    Largest,
}

/// Prüfer code `a_1 .. a_{n-2}` of a tree on `1..=n`. The extended form
/// appends a final 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PruferCode {
    n: usize,
    order: LeafOrder,
    entries: Vec<Label>,
}

impl PruferCode {
    pub fn new(n: usize, entries: Vec<Label>) -> Result<Self> {
        Self::with_order(n, entries, LeafOrder::Smallest)
    }

    pub fn with_order(n: usize, entries: Vec<Label>, order: LeafOrder) -> Result<Self> {
        if n < 2 {
            return Err(Error::DomainError(format!(
                "Prüfer codes need n >= 2, got {n}"
            )));
        }
        if entries.len() + 2 != n {
            return Err(Error::CodeLength {
                len: entries.len(),
                n,
            });
        }
        check_entries(&entries, n)?;
        Ok(PruferCode { n, order, entries })
    }

    pub fn from_entries(entries: Vec<Label>) -> Result<Self> {
        Self::new(entries.len() + 2, entries)
    }

    /// Accepts `a_1 .. a_{n-2}, 1`.
    pub fn from_extended(mut entries: Vec<Label>, order: LeafOrder) -> Result<Self> {
        match entries.pop() {
            Some(1) => Self::with_order(entries.len() + 2, entries, order),
            Some(last) => Err(Error::DomainError(format!(
                "extended Prüfer code must end in 1, got {last}"
            ))),
            None => Err(Error::CodeLength { len: 0, n: 1 }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> LeafOrder {
        self.order
    }

    pub fn entries(&self) -> &[Label] {
        &self.entries
    }

    pub fn extended(&self) -> Vec<Label> {
        let mut out = self.entries.clone();
        out.push(1);
        out
    }
}

fn check_entries(entries: &[Label], n: usize) -> Result<()> {
    match entries.iter().position(|&e| e == 0 || e > n) {
        Some(i) => Err(Error::EntryOutOfRange {
            entry: entries[i],
            position: i + 1,
            n,
        }),
        None => Ok(()),
    }
}

/// Which case of the decode step produced a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepCase {
    /// `σ_i` was already a label; the leaf gets the smallest unused label.
    AlreadyPresent,
    /// `σ_i` was unused and is the smallest unused label.
    NewEqualsMin,
    /// `σ_i` was unused but a smaller label is still unused.
    NewNotMin,
    /// The last unlabeled vertex takes the one remaining label.
    FinalLabel,
}

impl StepCase {
    /// The labeled vertex ends up a leader in every completion of the code.
    pub fn predicts_leader(self) -> bool {
        !matches!(self, StepCase::NewNotMin)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepAnnotation {
    /// 1-based code position; `n` for the final labeling.
    pub step: usize,
    pub case: StepCase,
    pub predicted_leader: bool,
    pub assigned_label: Label,
}

/// Incremental RP decoder holding `T_{i-1}` with its unlabeled leaf.
pub(crate) struct RpDecoder {
    n: usize,
    step: usize,
    used: Vec<bool>,
    min_unused: Label,
    root: Label,
    parent: Vec<Label>,
    // label of the vertex the unlabeled leaf hangs from; 0 while the
    // unlabeled vertex is the root
    pending_parent: Label,
}

impl RpDecoder {
    pub(crate) fn new(n: usize) -> Self {
        RpDecoder {
            n,
            step: 0,
            used: vec![false; n + 2],
            min_unused: 1,
            root: 0,
            parent: vec![0; n + 1],
            pending_parent: 0,
        }
    }

    fn place(&mut self, label: Label) {
        if self.pending_parent == 0 {
            self.root = label;
        } else {
            self.parent[label] = self.pending_parent;
        }
        self.used[label] = true;
        while self.used[self.min_unused] {
            self.min_unused += 1;
        }
    }

    /// Reads one code entry, which must lie in `1..=n`.
    pub(crate) fn push(&mut self, entry: Label) -> StepAnnotation {
        debug_assert!(self.step + 1 < self.n);
        self.step += 1;
        let min_unused = self.min_unused;
        let (case, label) = if self.used[entry] {
            (StepCase::AlreadyPresent, min_unused)
        } else if entry == min_unused {
            (StepCase::NewEqualsMin, entry)
        } else {
            (StepCase::NewNotMin, entry)
        };
        self.place(label);
        self.pending_parent = entry;
        StepAnnotation {
            step: self.step,
            case,
            predicted_leader: case.predicts_leader(),
            assigned_label: label,
        }
    }

    /// The step case `entry` would produce next, without consuming it.
    pub(crate) fn peek(&self, entry: Label) -> StepCase {
        if self.used[entry] {
            StepCase::AlreadyPresent
        } else if entry == self.min_unused {
            StepCase::NewEqualsMin
        } else {
            StepCase::NewNotMin
        }
    }

    pub(crate) fn finish(mut self) -> (LabeledTree, StepAnnotation) {
        debug_assert_eq!(self.step + 1, self.n);
        let label = self.min_unused;
        self.place(label);
        let annotation = StepAnnotation {
            step: self.n,
            case: StepCase::FinalLabel,
            predicted_leader: true,
            assigned_label: label,
        };
        let tree = LabeledTree::new(
            self.n,
            self.root,
            (1..=self.n)
                .filter(|&v| v != self.root)
                .map(|v| (v, self.parent[v])),
        )
        .expect("decoder always yields a tree");
        (tree, annotation)
    }
}

/// RP-encodes a rooted tree. The first entry is the root label.
pub fn rp_encode(tree: &LabeledTree) -> RpCode {
    let stats = tree.stats();
    let mut order: Vec<Label> = (1..=tree.n()).filter(|&v| v != tree.root()).collect();
    order.sort_unstable_by_key(|&v| (stats.min_descendant[v], stats.depth[v]));
    let entries = order
        .into_iter()
        .map(|v| tree.parent(v).unwrap().expect("non-root vertex"))
        .collect();
    RpCode {
        n: tree.n(),
        entries,
    }
}

pub fn rp_decode(code: &RpCode) -> LabeledTree {
    let mut decoder = RpDecoder::new(code.n);
    for &e in &code.entries {
        decoder.push(e);
    }
    decoder.finish().0
}

/// Decodes and reports, for every labeled vertex, which case labeled it and
/// whether it is predicted to be a leader. Entry `i - 1` describes code
/// position `i`; the last entry is the final labeling.
pub fn rp_decode_annotated(code: &RpCode) -> (LabeledTree, Vec<StepAnnotation>) {
    let mut decoder = RpDecoder::new(code.n);
    let mut notes: Vec<StepAnnotation> = code.entries.iter().map(|&e| decoder.push(e)).collect();
    let (tree, last) = decoder.finish();
    notes.push(last);
    (tree, notes)
}

/// Labels whose decode annotation predicts a leader, ascending.
pub fn predicted_leaders(annotations: &[StepAnnotation]) -> Vec<Label> {
    let mut out: Vec<Label> = annotations
        .iter()
        .filter(|a| a.predicted_leader)
        .map(|a| a.assigned_label)
        .collect();
    out.sort_unstable();
    out
}

/// Number of values in `1..=n` that, appended to `prefix`, label a vertex
/// predicted to be a leader. Requires `prefix.len() + 1 < n`.
pub fn leader_choice_count(n: usize, prefix: &[Label]) -> Result<usize> {
    if prefix.len() + 1 >= n {
        return Err(Error::CodeLength {
            len: prefix.len() + 1,
            n,
        });
    }
    check_entries(prefix, n)?;
    let mut decoder = RpDecoder::new(n);
    for &e in prefix {
        decoder.push(e);
    }
    Ok((1..=n)
        .filter(|&e| decoder.peek(e).predicts_leader())
        .count())
}

/// Leaf queue ordered by [`LeafOrder`].
struct Leaves {
    order: LeafOrder,
    heap: BinaryHeap<Reverse<Label>>,
    max_heap: BinaryHeap<Label>,
}

impl Leaves {
    fn new(order: LeafOrder) -> Self {
        Leaves {
            order,
            heap: BinaryHeap::new(),
            max_heap: BinaryHeap::new(),
        }
    }

    fn push(&mut self, v: Label) {
        match self.order {
            LeafOrder::Smallest => self.heap.push(Reverse(v)),
            LeafOrder::Largest => self.max_heap.push(v),
        }
    }

    fn pop(&mut self) -> Option<Label> {
        match self.order {
            LeafOrder::Smallest => self.heap.pop().map(|Reverse(v)| v),
            LeafOrder::Largest => self.max_heap.pop(),
        }
    }
}

/// Classic Prüfer encoding of a tree on `1..=n` (rooted at 1).
pub fn prufer_encode(tree: &LabeledTree) -> Result<PruferCode> {
    prufer_encode_with(tree, LeafOrder::Smallest)
}

pub fn prufer_encode_with(tree: &LabeledTree, order: LeafOrder) -> Result<PruferCode> {
    if tree.root() != 1 {
        return Err(Error::RootNotOne(tree.root()));
    }
    let n = tree.n();
    if n < 2 {
        return Err(Error::DomainError(format!(
            "Prüfer codes need n >= 2, got {n}"
        )));
    }
    let mut neighbors = vec![Vec::new(); n + 1];
    for (p, v) in tree.edges() {
        neighbors[p].push(v);
        neighbors[v].push(p);
    }
    let mut degree: Vec<usize> = neighbors.iter().map(Vec::len).collect();
    let mut removed = vec![false; n + 1];
    // the largest-first variant never deletes the root 1
    let deletable = |v: Label| order == LeafOrder::Smallest || v != 1;
    let mut leaves = Leaves::new(order);
    for v in (1..=n).filter(|&v| degree[v] == 1 && deletable(v)) {
        leaves.push(v);
    }
    let mut entries = Vec::with_capacity(n - 2);
    while entries.len() < n - 2 {
        let leaf = leaves.pop().expect("a tree with >= 3 vertices has a leaf");
        removed[leaf] = true;
        let next = *neighbors[leaf]
            .iter()
            .find(|&&w| !removed[w])
            .expect("a leaf has one remaining neighbor");
        entries.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && deletable(next) {
            leaves.push(next);
        }
    }
    Ok(PruferCode { n, order, entries })
}

/// Inverse of [`prufer_encode_with`] for the code's leaf order; the result
/// is rooted at 1.
pub fn prufer_decode(code: &PruferCode) -> LabeledTree {
    let n = code.n;
    let mut pending = vec![0usize; n + 1];
    for &a in &code.entries {
        pending[a] += 1;
    }
    let mut leaves = Leaves::new(code.order);
    let mut edges = Vec::with_capacity(n - 1);
    match code.order {
        LeafOrder::Smallest => {
            for v in (1..=n).filter(|&v| pending[v] == 0) {
                leaves.push(v);
            }
            for &a in &code.entries {
                let leaf = leaves.pop().expect("a leaf always exists");
                edges.push((leaf, a));
                pending[a] -= 1;
                if pending[a] == 0 {
                    leaves.push(a);
                }
            }
            let u = leaves.pop().expect("two vertices remain");
            let v = leaves.pop().expect("two vertices remain");
            edges.push((u, v));
        }
        LeafOrder::Largest => {
            // the trailing 1 keeps the root off the leaf queue until the end
            pending[1] += 1;
            for v in (1..=n).filter(|&v| pending[v] == 0) {
                leaves.push(v);
            }
            for &a in code.entries.iter().chain(std::iter::once(&1)) {
                let leaf = leaves.pop().expect("a leaf always exists");
                edges.push((leaf, a));
                pending[a] -= 1;
                if pending[a] == 0 {
                    leaves.push(a);
                }
            }
        }
    }
    LabeledTree::from_edges(1, &edges).expect("Prüfer decode always yields a tree")
}

/// Whether the extended largest-leaf Prüfer code read backwards is the
/// RP-code.
pub fn reversal_check(tree: &LabeledTree) -> Result<bool> {
    if tree.root() != 1 {
        return Err(Error::RootNotOne(tree.root()));
    }
    let mut extended = prufer_encode_with(tree, LeafOrder::Largest)?.extended();
    extended.reverse();
    Ok(extended == rp_encode(tree).entries)
}
