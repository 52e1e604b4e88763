use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use rand::Rng;
use serde::Serialize;

use crate::MarketError;

/// Undirected simple graph; nodes indexed in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<u64>,
    index: HashMap<u64, usize>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Self-loops and duplicate edges are dropped.
    pub fn from_edges<I: IntoIterator<Item = (u64, u64)>>(edges: I) -> Self {
        let set: BTreeSet<(u64, u64)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let ids: Vec<u64> = set
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in set {
            let (i, j) = (index[&u], index[&v]);
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { ids, index, adj }
    }

    /// SNAP-style edge list: one `u v` pair per line, `#` lines skipped.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, MarketError> {
        let mut edges = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let s = line.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let bad = || MarketError::Parse {
                line: i + 1,
                msg: format!("expected two integers, got {s:?}"),
            };
            let mut it = s.split_whitespace();
            let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad());
            };
            edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
        }
        Ok(Graph::from_edges(edges))
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn mean_degree(&self) -> f64 {
        if self.ids.is_empty() {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn id(&self, i: usize) -> u64 {
        self.ids[i]
    }

    pub fn index_of(&self, id: u64) -> Result<usize, MarketError> {
        self.index
            .get(&id)
            .copied()
            .ok_or(MarketError::UnknownNode(id))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Edge list with each edge once, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, nb) in self.adj.iter().enumerate() {
            for &j in nb.iter().filter(|&&j| j > i) {
                out.push_str(&format!("{} {}\n", self.ids[i], self.ids[j]));
            }
        }
        out
    }
}

/// One read: `reader` forwarded to `forwards` new users; `a`, `c` after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphEvent {
    pub epoch: u64,
    pub reader: u64,
    pub forwards: u64,
    pub a: u64,
    pub c: u64,
}

/// Propagate from `seeds` until no unread copy is left. Each reader forwards
/// to every neighbour independently with probability `rho`; neighbours that
/// already hold the post are ignored.
pub fn propagate_on_graph<R: Rng + ?Sized>(
    graph: &Graph,
    seeds: &[u64],
    rho: f64,
    rng: &mut R,
) -> Result<Vec<GraphEvent>, MarketError> {
    if seeds.is_empty() {
        return Err(MarketError::Invalid("no seed users".into()));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(MarketError::Invalid(format!("rho = {rho} outside [0, 1]")));
    }
    let mut holds = vec![false; graph.node_count()];
    let mut unread = Vec::with_capacity(seeds.len());
    for &s in seeds {
        let i = graph.index_of(s)?;
        if holds[i] {
            return Err(MarketError::Invalid(format!("duplicate seed {s}")));
        }
        holds[i] = true;
        unread.push(i);
    }
    let mut a = unread.len() as u64;
    let mut events = Vec::new();
    while !unread.is_empty() {
        let reader = unread.swap_remove(rng.random_range(0..unread.len()));
        let mut forwards = 0;
        for &j in graph.neighbors(reader) {
            if rng.random::<f64>() < rho && !holds[j] {
                holds[j] = true;
                unread.push(j);
                forwards += 1;
            }
        }
        a += forwards;
        events.push(GraphEvent {
            epoch: events.len() as u64 + 1,
            reader: graph.id(reader),
            forwards,
            a,
            c: unread.len() as u64,
        });
    }
    Ok(events)
}
