use std::collections::VecDeque;

use serde::Serialize;

use crate::netmodel::{EntrySpec, MMatrix, RowKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    U,
    W,
    Z,
}

/// Directed graph of `M`: an edge `a -> b` whenever the entry of `M` in the
/// row of `b` and the column of `a` is not structurally zero. Node
/// self-loops are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowGraph {
    pub names: Vec<String>,
    pub kinds: Vec<VertexKind>,
    pub edges: Vec<(usize, usize)>,
}

impl FlowGraph {
    pub fn from_m(m: &MMatrix) -> Self {
        let n = m.n;
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for j in n..m.cols() {
            names.push(m.col_vertex(j));
            kinds.push(VertexKind::U);
        }
        let nu = names.len();
        for i in 0..n {
            names.push(m.row_vertex(i));
            kinds.push(VertexKind::W);
        }
        for i in n..m.rows() {
            names.push(m.row_vertex(i));
            kinds.push(VertexKind::Z);
        }
        // Column j of M is vertex W_j (j < n) or U_{j-n}; row i is W_i or Z.
        let col_v = |j: usize| if j < n { nu + j } else { j - n };
        let row_v = |i: usize| nu + i;
        let mut edges = Vec::new();
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                if i == j && j < n {
                    continue;
                }
                if !m.grid[i][j].is_zero() {
                    edges.push((col_v(j), row_v(i)));
                }
            }
        }
        Self { names, kinds, edges }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Whether `paths` are pairwise vertex-disjoint `U -> Z` paths along
    /// edges of the graph.
    pub fn is_valid_witness(&self, paths: &[Vec<String>]) -> bool {
        let mut used = vec![false; self.len()];
        for p in paths {
            let Some(ids) = p.iter().map(|v| self.index(v)).collect::<Option<Vec<_>>>() else {
                return false;
            };
            if ids.is_empty()
                || self.kinds[ids[0]] != VertexKind::U
                || self.kinds[*ids.last().unwrap()] != VertexKind::Z
            {
                return false;
            }
            for &v in &ids {
                if used[v] {
                    return false;
                }
                used[v] = true;
            }
            if ids.windows(2).any(|w| !self.edges.contains(&(w[0], w[1]))) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointPaths {
    pub count: usize,
    pub paths: Vec<Vec<String>>,
    pub caveats: Vec<String>,
}

pub const CAVEAT_NOT_ALL_FREE: &str =
    "graph count assumes every non-zero entry of M is an independent free variable; constant or shared entries can make it differ from the generic rank";

/// Maximum number of vertex-disjoint `U -> Z` paths, with one maximum
/// family as witness.
pub fn max_disjoint_paths(m: &MMatrix) -> DisjointPaths {
    let g = FlowGraph::from_m(m);
    let nv = g.len();
    // Vertex v splits into in = 2v and out = 2v + 1.
    let (src, sink) = (2 * nv, 2 * nv + 1);
    let mut net = Dinic::new(2 * nv + 2);
    for v in 0..nv {
        net.add_edge(2 * v, 2 * v + 1);
        match g.kinds[v] {
            VertexKind::U => net.add_edge(src, 2 * v),
            VertexKind::Z => net.add_edge(2 * v + 1, sink),
            VertexKind::W => {}
        }
    }
    for &(a, b) in &g.edges {
        net.add_edge(2 * a + 1, 2 * b);
    }
    let count = net.max_flow(src, sink);

    let mut paths = Vec::new();
    for &e in &net.adj[src] {
        if net.flow(e) == 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut at = net.to[e];
        loop {
            let v = at / 2;
            path.push(g.names[v].clone());
            let out = 2 * v + 1;
            let next = net.adj[out].iter().copied().find(|&f| net.flow(f) > 0 && net.to[f] != 2 * v);
            match next {
                Some(f) if net.to[f] == sink => break,
                Some(f) => at = net.to[f],
                None => break,
            }
        }
        paths.push(path);
    }

    let mut caveats = Vec::new();
    if !all_free_and_distinct(m) {
        caveats.push(CAVEAT_NOT_ALL_FREE.to_string());
    }
    DisjointPaths {
        count: count as usize,
        paths,
        caveats,
    }
}

/// True when every non-zero entry is a free name used exactly once. The
/// identity rows passing `r` through are exempt: a lone unit in its row
/// behaves like a free entry.
pub fn all_free_and_distinct(m: &MMatrix) -> bool {
    let mut seen = std::collections::HashSet::new();
    let rows = m.grid.iter().zip(&m.row_kinds).filter(|(_, k)| !matches!(k, RowKind::Passthrough(_)));
    for e in rows.flat_map(|(r, _)| r) {
        match e {
            EntrySpec::Zero => {}
            EntrySpec::Free { name, .. } => {
                if !seen.insert(name) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Unit-capacity Dinic; edges are stored in pairs (forward, reverse).
struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    level: Vec<i32>,
    it: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; n],
            it: vec![0; n],
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Flow on a forward edge.
    fn flow(&self, e: usize) -> i32 {
        if e.is_multiple_of(2) {
            self.cap[e ^ 1]
        } else {
            0
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    q.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize) -> bool {
        if v == t {
            return true;
        }
        while self.it[v] < self.adj[v].len() {
            let e = self.adj[v][self.it[v]];
            let w = self.to[e];
            if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 && self.dfs(w, t) {
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                return true;
            }
            self.it[v] += 1;
        }
        false
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i32 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.it.iter_mut().for_each(|i| *i = 0);
            while self.dfs(s, t) {
                total += 1;
            }
        }
        total
    }
}
