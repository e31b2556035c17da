//! Labeled rooted trees on `1..=n` stored as a parent map.
//!
//! The tree statistics every identity is stated over (descendants, leaders,
//! degrees, indegrees, depths) are computed from one breadth-first pass and
//! cached in [`TreeStats`], so callers that ask many questions about the same
//! tree should hold on to a `TreeStats` rather than calling the per-vertex
//! helpers on [`LabeledTree`] repeatedly.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex labels are 1-based; 0 is the root sentinel in parent arrays.
pub type Label = usize;

/// A rooted tree on the vertex set `1..=n`.
///
/// Always valid: acyclic, connected, exactly one root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree {
    root: Label,
    // parent[0] is unused, parent[root] == 0
    parent: Vec<Label>,
}

impl LabeledTree {
    /// The tree with the single vertex 1.
    pub fn singleton() -> Self {
        LabeledTree {
            root: 1,
            parent: vec![0, 0],
        }
    }

    /// Builds a tree from an explicit root and `(child, parent)` pairs, which
    /// must cover every non-root label exactly once.
    pub fn new<I>(n: usize, root: Label, parents: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        if n == 0 {
            return Err(Error::Empty);
        }
        check_label(root, n)?;
        let mut parent = vec![usize::MAX; n + 1];
        parent[0] = 0;
        parent[root] = 0;
        for (child, p) in parents {
            check_label(child, n)?;
            check_label(p, n)?;
            if child == root {
                return Err(Error::DuplicateRoot(root, child));
            }
            if parent[child] != usize::MAX {
                return Err(Error::DuplicateParent(child));
            }
            parent[child] = p;
        }
        if let Some(v) = (1..=n).find(|&v| parent[v] == usize::MAX) {
            return Err(Error::DisconnectedInput(v));
        }
        Self::validated(root, parent)
    }

    /// Builds a tree from `p_1 .. p_n`, where `p_v` is the parent of `v` and
    /// the root has `p_root = 0`.
    pub fn from_parent_array(parents: &[Label]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut root = None;
        let mut parent = Vec::with_capacity(n + 1);
        parent.push(0);
        for (i, &p) in parents.iter().enumerate() {
            let v = i + 1;
            if p == 0 {
                if let Some(r) = root {
                    return Err(Error::DuplicateRoot(r, v));
                }
                root = Some(v);
            } else {
                check_label(p, n)?;
            }
            parent.push(p);
        }
        let root = match root {
            Some(r) => r,
            // with no root every walk must loop
            None => return Err(Error::CycleDetected(find_cycle_vertex(&parent))),
        };
        Self::validated(root, parent)
    }

    /// Builds a tree from an undirected edge list and a root. The vertex
    /// count is `edges.len() + 1`.
    pub fn from_edges(root: Label, edges: &[(Label, Label)]) -> Result<Self> {
        let n = edges.len() + 1;
        check_label(root, n)?;
        let mut adj = vec![Vec::new(); n + 1];
        let mut component: Vec<usize> = (0..=n).collect();
        fn find(component: &mut [usize], mut v: usize) -> usize {
            while component[v] != v {
                component[v] = component[component[v]];
                v = component[v];
            }
            v
        }
        for &(a, b) in edges {
            check_label(a, n)?;
            check_label(b, n)?;
            let (ra, rb) = (find(&mut component, a), find(&mut component, b));
            if ra == rb {
                return Err(Error::CycleDetected(b));
            }
            component[ra] = rb;
            adj[a].push(b);
            adj[b].push(a);
        }
        // acyclic with n - 1 edges, hence connected
        let mut parent = vec![usize::MAX; n + 1];
        parent[0] = 0;
        parent[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if w != parent[v] {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = (1..=n).find(|&v| parent[v] == usize::MAX) {
            return Err(Error::DisconnectedInput(v));
        }
        Ok(LabeledTree { root, parent })
    }

    // `parent` has every entry set to a label or the root sentinel.
    fn validated(root: Label, parent: Vec<Label>) -> Result<Self> {
        let n = parent.len() - 1;
        // 0 = unknown, 1 = on the current walk, 2 = reaches the root
        let mut state = vec![0u8; n + 1];
        state[root] = 2;
        let mut walk = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parent[v];
            }
            if state[v] == 1 {
                return Err(Error::CycleDetected(v));
            }
            for w in walk.drain(..) {
                state[w] = 2;
            }
        }
        Ok(LabeledTree { root, parent })
    }

    pub fn n(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> Label {
        self.root
    }

    /// Parent of `v`, `None` for the root.
    pub fn parent(&self, v: Label) -> Result<Option<Label>> {
        check_label(v, self.n())?;
        Ok(match self.parent[v] {
            0 => None,
            p => Some(p),
        })
    }

    /// `p_1 .. p_n` with 0 at the root.
    pub fn parent_array(&self) -> &[Label] {
        &self.parent[1..]
    }

    /// `(parent, child)` for every non-root vertex, ordered by child.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        (1..=self.n())
            .filter(|&v| v != self.root)
            .map(|v| (self.parent[v], v))
            .collect()
    }

    /// The same undirected tree with a different root.
    pub fn reroot(&self, root: Label) -> Result<Self> {
        check_label(root, self.n())?;
        let mut parent = self.parent.clone();
        let mut prev = 0;
        let mut v = root;
        while v != 0 {
            let next = self.parent[v];
            parent[v] = prev;
            prev = v;
            v = next;
        }
        Ok(LabeledTree { root, parent })
    }

    /// Children lists, depths and minimal descendants in one pass.
    pub fn stats(&self) -> TreeStats {
        TreeStats::new(self)
    }

    pub fn descendants(&self, v: Label) -> Result<Vec<Label>> {
        check_label(v, self.n())?;
        Ok(self.stats().descendants(v))
    }

    pub fn min_descendant(&self, v: Label) -> Result<Label> {
        check_label(v, self.n())?;
        Ok(self.stats().min_descendant[v])
    }

    pub fn depth(&self, v: Label) -> Result<usize> {
        check_label(v, self.n())?;
        Ok(self.stats().depth[v])
    }

    /// Undirected degree of `v`.
    pub fn degree(&self, v: Label) -> Result<usize> {
        check_label(v, self.n())?;
        let children = self.parent[1..].iter().filter(|&&p| p == v).count();
        Ok(children + usize::from(v != self.root))
    }

    /// `indegree[i - 1]` is the number of children of `i`.
    pub fn indegree_vector(&self) -> Vec<usize> {
        let mut indegree = vec![0; self.n()];
        for &p in &self.parent[1..] {
            if p != 0 {
                indegree[p - 1] += 1;
            }
        }
        indegree
    }

    /// Vertices that are minimal among their descendants, ascending.
    pub fn leaders(&self) -> Vec<Label> {
        self.stats().leaders()
    }

    pub fn stat_record(&self) -> StatRecord {
        let leaders = self.stats().leader_count();
        StatRecord {
            lead: leaders,
            deg1: self.degree(1).expect("1 is always a vertex"),
            indegree: self.indegree_vector(),
        }
    }
}

/// Per-tree cache of the derived structure.
#[derive(Clone, Debug)]
pub struct TreeStats {
    /// Children of each label, ascending.
    pub children: Vec<Vec<Label>>,
    pub depth: Vec<usize>,
    pub min_descendant: Vec<Label>,
    /// Breadth-first order from the root.
    pub order: Vec<Label>,
}

impl TreeStats {
    fn new(tree: &LabeledTree) -> Self {
        let n = tree.n();
        let mut children = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let p = tree.parent[v];
            if p != 0 {
                children[p].push(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut depth = vec![0; n + 1];
        order.push(tree.root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                order.push(c);
            }
        }
        let mut min_descendant: Vec<Label> = (0..=n).collect();
        for &v in order.iter().rev() {
            let p = tree.parent[v];
            if p != 0 && min_descendant[v] < min_descendant[p] {
                min_descendant[p] = min_descendant[v];
            }
        }
        TreeStats {
            children,
            depth,
            min_descendant,
            order,
        }
    }

    pub fn descendants(&self, v: Label) -> Vec<Label> {
        let mut out = vec![v];
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            head += 1;
            out.extend_from_slice(&self.children[w]);
        }
        out.sort_unstable();
        out
    }

    pub fn leaders(&self) -> Vec<Label> {
        (1..self.min_descendant.len())
            .filter(|&v| self.min_descendant[v] == v)
            .collect()
    }

    pub fn leader_count(&self) -> usize {
        (1..self.min_descendant.len())
            .filter(|&v| self.min_descendant[v] == v)
            .count()
    }
}

/// The statistics the enumeration identities are stated over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatRecord {
    /// Number of leaders.
    pub lead: usize,
    /// Undirected degree of vertex 1.
    pub deg1: usize,
    /// Children count of each label, edges directed toward the root.
    pub indegree: Vec<usize>,
}

pub(crate) fn check_label(label: Label, n: usize) -> Result<()> {
    if label == 0 || label > n {
        Err(Error::LabelOutOfRange { label, n })
    } else {
        Ok(())
    }
}

fn find_cycle_vertex(parent: &[Label]) -> Label {
    // Floyd from vertex 1; only called when no vertex has the sentinel.
    let (mut slow, mut fast) = (1, 1);
    loop {
        slow = parent[slow];
        fast = parent[parent[fast]];
        if slow == fast {
            return slow;
        }
    }
}
