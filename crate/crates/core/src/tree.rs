//! Binary trees, the compactification `Φ`, the register function and r-branches.
//!
//! A tree is stored as its preorder node sequence. The canonical text encoding is
//! `tree := "." | "(" tree tree ")"`, so the preorder sequence is the encoding with the
//! closing parentheses dropped. Ordering trees by their node sequence (internal before
//! leaf) is the same as ordering them lexicographically by their encoding.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default upper bound on the size accepted by [`enumerate_trees`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// One entry of the preorder sequence. `Internal` sorts before `Leaf`, matching `(` < `.`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Internal,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryTree {
    nodes: Vec<Node>,
}

/// Register value of every node, aligned with the preorder sequence of the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLabeling {
    labels: Vec<u32>,
}

impl RegisterLabeling {
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn root(&self) -> u32 {
        self.labels[0]
    }

    /// Number of nodes carrying each label, indexed by label.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.root() as usize + 1];
        for &l in &self.labels {
            hist[l as usize] += 1;
        }
        hist
    }
}

/// Per-register counts of r-branches (maximal chains of equally labelled nodes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchProfile {
    /// `counts[r]` is the number of r-branches.
    pub counts: Vec<u64>,
    /// `node_counts[r]` is the number of nodes labelled `r`.
    pub node_counts: Vec<u64>,
}

impl BranchProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, r: usize) -> u64 {
        self.counts.get(r).copied().unwrap_or(0)
    }
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree { nodes: vec![Node::Leaf] }
    }

    pub fn join(left: &BinaryTree, right: &BinaryTree) -> Self {
        let mut nodes = Vec::with_capacity(1 + left.nodes.len() + right.nodes.len());
        nodes.push(Node::Internal);
        nodes.extend_from_slice(&left.nodes);
        nodes.extend_from_slice(&right.nodes);
        BinaryTree { nodes }
    }

    /// Builds a tree from a preorder node sequence, validating it.
    pub fn from_preorder(nodes: Vec<Node>) -> Result<Self> {
        let mut need = 1usize;
        for (i, node) in nodes.iter().enumerate() {
            if need == 0 {
                return Err(Error::TreeSyntax { position: i, reason: "trailing nodes after a complete tree" });
            }
            match node {
                Node::Internal => need += 1,
                Node::Leaf => need -= 1,
            }
        }
        if need != 0 {
            return Err(Error::TreeSyntax { position: nodes.len(), reason: "unexpected end of input" });
        }
        Ok(BinaryTree { nodes })
    }

    pub fn preorder(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_leaf(&self) -> bool {
        self.nodes.len() == 1
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        self.nodes.len() / 2
    }

    pub fn leaf_count(&self) -> usize {
        self.size() + 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Left and right subtrees, or `None` for a leaf.
    pub fn split(&self) -> Option<(BinaryTree, BinaryTree)> {
        if self.is_leaf() {
            return None;
        }
        let right = self.right_children()[0] as usize;
        Some((BinaryTree { nodes: self.nodes[1..right].to_vec() }, BinaryTree { nodes: self.nodes[right..].to_vec() }))
    }

    /// For every internal node (by preorder index) the index of its right child.
    /// The left child of an internal node at `i` is always `i + 1`. Entries for leaves are 0.
    fn right_children(&self) -> Vec<u32> {
        let mut right = vec![0u32; self.nodes.len()];
        let mut stack: Vec<u32> = Vec::new();
        for (i, node) in self.nodes.iter().enumerate().rev() {
            if *node == Node::Internal {
                let _left = stack.pop();
                right[i] = stack.pop().expect("validated preorder");
            }
            stack.push(i as u32);
        }
        right
    }

    /// Register function (Horton–Strahler number).
    pub fn register(&self) -> u32 {
        let mut stack: Vec<u32> = Vec::new();
        for node in self.nodes.iter().rev() {
            let label = match node {
                Node::Leaf => 0,
                Node::Internal => {
                    let l = stack.pop().expect("validated preorder");
                    let r = stack.pop().expect("validated preorder");
                    combine(l, r)
                }
            };
            stack.push(label);
        }
        stack[0]
    }

    pub fn label_registers(&self) -> RegisterLabeling {
        let mut labels = vec![0u32; self.nodes.len()];
        let mut stack: Vec<u32> = Vec::new();
        for (i, node) in self.nodes.iter().enumerate().rev() {
            if *node == Node::Internal {
                let l = stack.pop().expect("validated preorder");
                let r = stack.pop().expect("validated preorder");
                labels[i] = combine(l, r);
            }
            stack.push(labels[i]);
        }
        RegisterLabeling { labels }
    }

    /// Counts r-branches in one post-order sweep: a node heads a chain exactly when it is the
    /// root or its parent carries a different label.
    pub fn branch_profile(&self) -> BranchProfile {
        let labels = self.label_registers();
        let top = labels.root() as usize;
        let mut counts = vec![0u64; top + 1];
        let node_counts = labels.histogram();
        counts[top] += 1;
        let right = self.right_children();
        for (i, node) in self.nodes.iter().enumerate() {
            if *node == Node::Internal {
                let parent = labels.labels[i];
                for child in [i + 1, right[i] as usize] {
                    let label = labels.labels[child];
                    if label != parent {
                        counts[label as usize] += 1;
                    }
                }
            }
        }
        BranchProfile { counts, node_counts }
    }

    pub fn count_r_branches(&self, r: usize) -> u64 {
        self.branch_profile().count(r)
    }

    pub fn total_branches(&self) -> u64 {
        self.branch_profile().total()
    }

    /// The compactification `Φ`: erase all leaves, contract every node left with a single child
    /// into that child, and declare childless nodes leaves.
    ///
    /// After erasing leaves an internal node keeps one child per internal child it had, so
    /// nodes with two internal children stay internal, nodes with none become leaves and
    /// nodes with exactly one are contracted away. Contraction keeps the relative preorder
    /// of the surviving nodes, so `Φ(t)` is a filter over the preorder sequence of `t`.
    pub fn reduce(&self) -> Result<BinaryTree> {
        if self.is_leaf() {
            return Err(Error::LeafNotReducible);
        }
        let right = self.right_children();
        let mut nodes = Vec::with_capacity(self.nodes.len() / 2);
        for (i, node) in self.nodes.iter().enumerate() {
            if *node == Node::Leaf {
                continue;
            }
            let internal_children =
                [i + 1, right[i] as usize].iter().filter(|&&c| self.nodes[c] == Node::Internal).count();
            match internal_children {
                2 => nodes.push(Node::Internal),
                0 => nodes.push(Node::Leaf),
                _ => {}
            }
        }
        Ok(BinaryTree { nodes })
    }

    /// `Φ^r(t)`, or `None` when the tree cannot be reduced `r` times.
    pub fn reduce_times(&self, r: usize) -> Option<BinaryTree> {
        let mut tree = self.clone();
        for _ in 0..r {
            tree = tree.reduce().ok()?;
        }
        Some(tree)
    }

    /// All trees `t, Φ(t), Φ²(t), …` down to the single leaf.
    pub fn reduction_chain(&self) -> Vec<BinaryTree> {
        let mut chain = vec![self.clone()];
        while let Ok(next) = chain.last().expect("nonempty").reduce() {
            chain.push(next);
        }
        chain
    }
}

fn combine(l: u32, r: u32) -> u32 {
    if l == r {
        l + 1
    } else {
        l.max(r)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::with_capacity(self.nodes.len() + self.size());
        // pending children of each open internal node
        let mut open: Vec<u8> = Vec::new();
        for node in &self.nodes {
            match node {
                Node::Internal => {
                    out.push('(');
                    open.push(2);
                }
                Node::Leaf => {
                    out.push('.');
                    while let Some(top) = open.last_mut() {
                        *top -= 1;
                        if *top > 0 {
                            break;
                        }
                        open.pop();
                        out.push(')');
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut nodes = Vec::with_capacity(s.len());
        // completed subtrees under each open '('
        let mut open: Vec<u8> = Vec::new();
        let mut done = false;
        for (position, c) in s.char_indices() {
            if done {
                return Err(Error::TreeSyntax { position, reason: "trailing characters after a complete tree" });
            }
            match c {
                '(' => {
                    nodes.push(Node::Internal);
                    open.push(0);
                }
                '.' | ')' => {
                    if c == '.' {
                        nodes.push(Node::Leaf);
                    } else {
                        match open.pop() {
                            Some(2) => {}
                            Some(_) => {
                                return Err(Error::TreeSyntax {
                                    position,
                                    reason: "internal node closed with fewer than two subtrees",
                                })
                            }
                            None => return Err(Error::TreeSyntax { position, reason: "unbalanced ')'" }),
                        }
                    }
                    match open.last_mut() {
                        Some(count) if *count >= 2 => {
                            return Err(Error::TreeSyntax {
                                position,
                                reason: "internal node with more than two subtrees",
                            })
                        }
                        Some(count) => *count += 1,
                        None => done = true,
                    }
                }
                _ => return Err(Error::TreeSyntax { position, reason: "expected '(', '.' or ')'" }),
            }
        }
        if !done {
            return Err(Error::TreeSyntax { position: s.len(), reason: "unexpected end of input" });
        }
        Ok(BinaryTree { nodes })
    }
}

/// Streams every tree with `n` internal nodes in lexicographic order of the encoding.
#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    size: usize,
    next: Option<Vec<Node>>,
}

pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    enumerate_trees_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_trees_bounded(n: usize, bound: usize) -> Result<TreeEnumerator> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "tree size", value: n, bound });
    }
    let mut first = vec![Node::Internal; n];
    first.extend(std::iter::repeat_n(Node::Leaf, n + 1));
    Ok(TreeEnumerator { size: n, next: Some(first) })
}

impl TreeEnumerator {
    /// Lexicographic successor: turn the rightmost feasible `Internal` into a `Leaf` and fill
    /// the suffix with the smallest completion (all remaining internal nodes first).
    fn successor(&self, word: &[Node]) -> Option<Vec<Node>> {
        let len = word.len();
        // need[i]: leaves still required before position i
        let mut need = Vec::with_capacity(len);
        let mut internal_before = Vec::with_capacity(len);
        let (mut d, mut a) = (1usize, 0usize);
        for node in word {
            need.push(d);
            internal_before.push(a);
            match node {
                Node::Internal => {
                    d += 1;
                    a += 1;
                }
                Node::Leaf => d -= 1,
            }
        }
        let i = (0..len).rev().find(|&i| word[i] == Node::Internal && need[i] >= 2)?;
        let mut next = word[..i].to_vec();
        next.push(Node::Leaf);
        let remaining = self.size - internal_before[i];
        next.extend(std::iter::repeat_n(Node::Internal, remaining));
        next.resize(len, Node::Leaf);
        Some(next)
    }
}

impl Iterator for TreeEnumerator {
    type Item = BinaryTree;

    fn next(&mut self) -> Option<BinaryTree> {
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(BinaryTree { nodes: current })
    }
}

/// Uniform random tree with `n` internal nodes, deterministic for a fixed seed.
pub fn random_tree(n: usize, seed: u64) -> BinaryTree {
    random_tree_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Rémy's growth procedure: pick one of the `2k+1` nodes and a side uniformly, and graft a new
/// internal node with a fresh leaf above it. Every tree of size `n` is produced by exactly
/// `2^n n!` choice sequences, which makes the result uniform.
pub fn random_tree_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BinaryTree {
    const NONE: u32 = u32::MAX;
    let total = 2 * n + 1;
    let mut left = vec![NONE; total];
    let mut right = vec![NONE; total];
    let mut parent = vec![NONE; total];
    let mut root = 0u32;
    let mut count = 1u32;
    for _ in 0..n {
        let x = rng.gen_range(0..u64::from(count)) as u32;
        let put_left = rng.gen::<bool>();
        let (y, z) = (count, count + 1);
        count += 2;
        let p = parent[x as usize];
        parent[y as usize] = p;
        if p == NONE {
            root = y;
        } else if left[p as usize] == x {
            left[p as usize] = y;
        } else {
            right[p as usize] = y;
        }
        let (l, r) = if put_left { (x, z) } else { (z, x) };
        left[y as usize] = l;
        right[y as usize] = r;
        parent[x as usize] = y;
        parent[z as usize] = y;
    }
    let mut nodes = Vec::with_capacity(total);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        if left[v as usize] == NONE {
            nodes.push(Node::Leaf);
        } else {
            nodes.push(Node::Internal);
            stack.push(right[v as usize]);
            stack.push(left[v as usize]);
        }
    }
    BinaryTree { nodes }
}
