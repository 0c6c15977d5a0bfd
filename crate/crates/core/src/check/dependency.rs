use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::expansion::{ExpansionSequent, ExpansionTree};
use crate::logic::{SequentPos, Term};

/// Location of a weak-instance term: the tree it sits in and the child
/// indices leading to it, the last index being the instance index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath {
    pub tree: SequentPos,
    pub path: Vec<usize>,
}

impl NodePath {
    /// Whether the edge at `self` lies above the node at `other`.
    pub fn dominates(&self, tree: SequentPos, path: &[usize]) -> bool {
        self.tree == tree && path.starts_with(&self.path)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)?;
        for i in &self.path {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

impl Serialize for NodePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub at: NodePath,
    pub term: Term,
}

/// Dependency relation between weak-instance term occurrences. Edge
/// `(i, j)` means occurrence `j` mentions the eigenvariable of a strong node
/// below occurrence `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DependencyGraph {
    pub nodes: Vec<Occurrence>,
    pub edges: BTreeSet<(usize, usize)>,
}

struct Strong {
    tree: SequentPos,
    path: Vec<usize>,
    eigenvariable: String,
}

fn walk(
    tree: SequentPos,
    t: &ExpansionTree,
    path: &mut Vec<usize>,
    nodes: &mut Vec<Occurrence>,
    strongs: &mut Vec<Strong>,
) {
    match t {
        ExpansionTree::Weak { instances, .. } => {
            for (i, inst) in instances.iter().enumerate() {
                path.push(i);
                nodes.push(Occurrence {
                    at: NodePath {
                        tree,
                        path: path.clone(),
                    },
                    term: inst.term.clone(),
                });
                walk(tree, &inst.child, path, nodes, strongs);
                path.pop();
            }
        }
        _ => {
            if let ExpansionTree::Strong { eigenvariable, .. } = t {
                strongs.push(Strong {
                    tree,
                    path: path.clone(),
                    eigenvariable: eigenvariable.clone(),
                });
            }
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                walk(tree, c, path, nodes, strongs);
                path.pop();
            }
        }
    }
}

pub fn dependency_relation(es: &ExpansionSequent) -> DependencyGraph {
    let mut nodes = Vec::new();
    let mut strongs = Vec::new();
    for (pos, t) in es.iter() {
        walk(pos, t, &mut Vec::new(), &mut nodes, &mut strongs);
    }
    let mut by_eigen: BTreeMap<&str, Vec<&Strong>> = BTreeMap::new();
    for s in &strongs {
        by_eigen.entry(&s.eigenvariable).or_default().push(s);
    }
    let mut edges = BTreeSet::new();
    for (j, s) in nodes.iter().enumerate() {
        for v in s.term.vars() {
            for strong in by_eigen.get(v.as_str()).into_iter().flatten() {
                for (i, t) in nodes.iter().enumerate() {
                    if t.at.dominates(strong.tree, &strong.path) {
                        edges.insert((i, j));
                    }
                }
            }
        }
    }
    DependencyGraph { nodes, edges }
}

impl DependencyGraph {
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in &self.edges {
            out[i].push(j);
        }
        out
    }

    /// Transitive closure of the edge set.
    pub fn closure(&self) -> BTreeSet<(usize, usize)> {
        let succ = self.successors();
        let mut out = BTreeSet::new();
        for start in 0..self.nodes.len() {
            let mut seen = vec![false; self.nodes.len()];
            let mut stack = succ[start].clone();
            while let Some(n) = stack.pop() {
                if !std::mem::replace(&mut seen[n], true) {
                    out.insert((start, n));
                    stack.extend(&succ[n]);
                }
            }
        }
        out
    }

    /// Shortest cycle through node `start`, as node indices beginning with
    /// `start`.
    fn shortest_cycle_from(&self, start: usize, succ: &[Vec<usize>]) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; self.nodes.len()];
        while let Some(n) = queue.pop_front() {
            for &m in &succ[n] {
                if m == start {
                    let mut cycle = vec![n];
                    let mut cur = n;
                    while cur != start {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
                if !seen[m] {
                    seen[m] = true;
                    parent[m] = n;
                    queue.push_back(m);
                }
            }
        }
        None
    }

    /// Whether the relation is acyclic; otherwise a shortest cycle as node
    /// indices, ties going to the lowest starting node.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let succ = self.successors();
        let mut indegree = vec![0usize; n];
        for &(_, j) in &self.edges {
            indegree[j] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = ready.pop() {
            removed += 1;
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(j);
                }
            }
        }
        if removed == n {
            return None;
        }
        let mut best: Option<Vec<usize>> = None;
        for start in 0..n {
            if let Some(c) = self.shortest_cycle_from(start, &succ) {
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
        best
    }
}

/// Acyclicity of the base relation, with a witness cycle of occurrence
/// paths when there is one.
pub fn is_acyclic(g: &DependencyGraph) -> (bool, Option<Vec<NodePath>>) {
    match g.find_cycle() {
        None => (true, None),
        Some(c) => (
            false,
            Some(c.into_iter().map(|i| g.nodes[i].at.clone()).collect()),
        ),
    }
}
