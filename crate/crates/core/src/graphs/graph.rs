use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

/// A simple undirected graph with sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    /// Component sizes, in order of each component's smallest vertex.
    pub sizes: Vec<usize>,
    #[serde(skip)]
    pub labels: Vec<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeFormat {
    /// One `u v` line per edge.
    Text,
    /// `{"n": .., "edges": [[u, v], ..]}`
    Json,
}

impl Graph {
    /// Builds from an edge list; loops are dropped and parallel edges merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Self::from_adjacency(adj)
    }

    /// Builds from raw neighbour lists, which are sorted and deduplicated.
    /// The lists must already be symmetric.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            list.retain(|&u| u != v);
        }
        let g = Graph { adj };
        debug_assert!(g.is_symmetric());
        g
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_symmetric(&self) -> bool {
        self.adj
            .iter()
            .enumerate()
            .all(|(v, l)| l.iter().all(|&u| self.has_edge(u, v)))
    }

    /// Edges with u < v, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Breadth-first component decomposition.
    pub fn components(&self) -> Components {
        let n = self.n();
        let mut labels = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if labels[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            labels[s] = id;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &u in &self.adj[v] {
                    if labels[u] == usize::MAX {
                        labels[u] = id;
                        queue.push_back(u);
                    }
                }
            }
            sizes.push(size);
        }
        Components {
            count: sizes.len(),
            sizes,
            labels,
        }
    }

    /// Induced subgraph on `vertices`, relabelled 0.. in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Deterministic edge-list export.
    pub fn export_edges(&self, format: EdgeFormat) -> Vec<u8> {
        match format {
            EdgeFormat::Text => {
                let mut s = String::new();
                for (u, v) in self.edges() {
                    writeln!(s, "{u} {v}").unwrap();
                }
                s.into_bytes()
            }
            EdgeFormat::Json => {
                let edges: Vec<[usize; 2]> = self.edges().map(|(u, v)| [u, v]).collect();
                let mut out =
                    serde_json::to_vec(&serde_json::json!({ "n": self.n(), "edges": edges }))
                        .expect("edge list serializes");
                out.push(b'\n');
                out
            }
        }
    }
}
