//! Queries on a reconstructed cluster graph: reachability, exhaustive path
//! listing, arcs no decomposition can avoid, and the standard-monomial
//! bound on the number of clusters per degree.

use std::collections::VecDeque;

use crate::algebra::{GroebnerBasis, State};
use crate::cluster::ClusterGraph;
use crate::error::{Error, Result};
use crate::grading::{enumerate_fiber, Grading};

/// Answer to a reachability query. Paths are arc-index sequences into the
/// graph's arc list; the empty sequence is the trivial path from a node to
/// itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub shortest_path: Option<Vec<usize>>,
}

/// Result of exhaustive path enumeration. `truncated` is set when the cap
/// stopped the search; enumeration is restricted to simple paths (no
/// cluster revisited), since cycles would make the listing infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathQueryResult {
    pub connected: bool,
    pub shortest_path: Option<Vec<usize>>,
    pub paths: Vec<Vec<usize>>,
    pub truncated: bool,
}

fn adjacency(graph: &ClusterGraph) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); graph.nodes().len()];
    for (idx, arc) in graph.arcs().iter().enumerate() {
        adj[arc.from].push(idx);
    }
    adj
}

/// Map a query state to its node, failing loudly when the graph was built
/// from different initial states.
fn source_node(graph: &ClusterGraph, s: &State, basis: &GroebnerBasis) -> Result<usize> {
    let rep = basis.normal_form(s)?;
    graph
        .node_index(&rep)
        .ok_or_else(|| Error::StateNotInGraph(rep.to_string()))
}

/// Is the cluster of `t` reachable from the cluster of `s`? Moves preserve
/// degree, so states of a different degree are never reachable and simply
/// miss the node set. Returns a shortest arc sequence when connected.
pub fn connected(
    graph: &ClusterGraph,
    s: &State,
    t: &State,
    basis: &GroebnerBasis,
) -> Result<Connectivity> {
    let from = source_node(graph, s, basis)?;
    let to = match graph.node_index(&basis.normal_form(t)?) {
        Some(i) => i,
        None => {
            return Ok(Connectivity {
                connected: false,
                shortest_path: None,
            })
        }
    };
    if from == to {
        return Ok(Connectivity {
            connected: true,
            shortest_path: Some(Vec::new()),
        });
    }
    let adj = adjacency(graph);
    let mut parent: Vec<Option<usize>> = vec![None; graph.nodes().len()];
    let mut seen = vec![false; graph.nodes().len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &arc_idx in &adj[u] {
            let v = graph.arcs()[arc_idx].to;
            if seen[v] {
                continue;
            }
            seen[v] = true;
            parent[v] = Some(arc_idx);
            if v == to {
                let mut path = Vec::new();
                let mut cur = to;
                while let Some(a) = parent[cur] {
                    path.push(a);
                    cur = graph.arcs()[a].from;
                }
                path.reverse();
                return Ok(Connectivity {
                    connected: true,
                    shortest_path: Some(path),
                });
            }
            queue.push_back(v);
        }
    }
    Ok(Connectivity {
        connected: false,
        shortest_path: None,
    })
}

/// Shortest path under nonnegative per-arc weights (one weight per arc
/// index), for cost models richer than hop count. Returns total weight and
/// the arc sequence.
pub fn shortest_path_weighted(
    graph: &ClusterGraph,
    s: &State,
    t: &State,
    basis: &GroebnerBasis,
    weights: &[f64],
) -> Result<Option<(f64, Vec<usize>)>> {
    if weights.len() != graph.arcs().len() {
        return Err(Error::DimensionMismatch {
            expected: graph.arcs().len(),
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Contract("arc weights must be finite and nonnegative"));
    }
    let from = source_node(graph, s, basis)?;
    let to = match graph.node_index(&basis.normal_form(t)?) {
        Some(i) => i,
        None => return Ok(None),
    };
    let adj = adjacency(graph);
    let n = graph.nodes().len();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    dist[from] = 0.0;
    loop {
        // dense Dijkstra; cluster graphs are small
        let mut u = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() {
                u = match u {
                    None => Some(v),
                    Some(best) if dist[v] < dist[best] => Some(v),
                    keep => keep,
                };
            }
        }
        let Some(u) = u else { break };
        done[u] = true;
        for &arc_idx in &adj[u] {
            let v = graph.arcs()[arc_idx].to;
            let cand = dist[u] + weights[arc_idx];
            if cand < dist[v] {
                dist[v] = cand;
                parent[v] = Some(arc_idx);
            }
        }
    }
    if !dist[to].is_finite() {
        return Ok(None);
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some(a) = parent[cur] {
        path.push(a);
        cur = graph.arcs()[a].from;
    }
    path.reverse();
    Ok(Some((dist[to], path)))
}

/// List every simple labeled path between the clusters of `s` and `t` by
/// depth-first search; arcs with distinct labels count as distinct paths.
/// Enumeration order is fixed by the graph's sorted arc list. `max_paths`
/// of zero means unlimited; hitting the cap flags `truncated` instead of
/// erroring.
pub fn enumerate_paths(
    graph: &ClusterGraph,
    s: &State,
    t: &State,
    basis: &GroebnerBasis,
    max_paths: usize,
) -> Result<PathQueryResult> {
    let conn = connected(graph, s, t, basis)?;
    let from = source_node(graph, s, basis)?;
    let to = match graph.node_index(&basis.normal_form(t)?) {
        Some(i) => i,
        None => {
            return Ok(PathQueryResult {
                connected: false,
                shortest_path: None,
                paths: Vec::new(),
                truncated: false,
            })
        }
    };
    let mut search = PathSearch {
        graph,
        adj: adjacency(graph),
        to,
        cap: if max_paths == 0 { usize::MAX } else { max_paths },
        stack: Vec::new(),
        on_path: vec![false; graph.nodes().len()],
        paths: Vec::new(),
        truncated: false,
    };
    search.dfs(from);

    Ok(PathQueryResult {
        connected: conn.connected,
        shortest_path: conn.shortest_path,
        paths: search.paths,
        truncated: search.truncated,
    })
}

struct PathSearch<'a> {
    graph: &'a ClusterGraph,
    adj: Vec<Vec<usize>>,
    to: usize,
    cap: usize,
    stack: Vec<usize>,
    on_path: Vec<bool>,
    paths: Vec<Vec<usize>>,
    truncated: bool,
}

impl PathSearch<'_> {
    fn dfs(&mut self, u: usize) {
        if self.truncated {
            return;
        }
        if u == self.to {
            if self.paths.len() >= self.cap {
                self.truncated = true;
            } else {
                self.paths.push(self.stack.clone());
            }
            return;
        }
        self.on_path[u] = true;
        for i in 0..self.adj[u].len() {
            let arc_idx = self.adj[u][i];
            let v = self.graph.arcs()[arc_idx].to;
            if self.on_path[v] {
                continue;
            }
            self.stack.push(arc_idx);
            self.dfs(v);
            self.stack.pop();
            if self.truncated {
                break;
            }
        }
        self.on_path[u] = false;
    }
}

/// Arcs that lie on every path between the clusters of `s` and `t`
/// (removal-and-retest), each flagged with whether it is the only label
/// between its endpoints. A unique-label essential arc names a move no
/// decomposition can avoid. Errors when `s` and `t` are not connected.
pub fn essential_arcs(
    graph: &ClusterGraph,
    s: &State,
    t: &State,
    basis: &GroebnerBasis,
) -> Result<Vec<(usize, bool)>> {
    let conn = connected(graph, s, t, basis)?;
    if !conn.connected {
        return Err(Error::NotConnected);
    }
    let from = source_node(graph, s, basis)?;
    let to = graph
        .node_index(&basis.normal_form(t)?)
        .expect("connected implies the target node exists");
    let adj = adjacency(graph);
    let reachable_without = |skip: usize| -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; graph.nodes().len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &arc_idx in &adj[u] {
                if arc_idx == skip {
                    continue;
                }
                let v = graph.arcs()[arc_idx].to;
                if !seen[v] {
                    if v == to {
                        return true;
                    }
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        false
    };
    let mut out = Vec::new();
    for idx in 0..graph.arcs().len() {
        if reachable_without(idx) {
            continue;
        }
        let arc = &graph.arcs()[idx];
        let label_count = graph
            .arcs()
            .iter()
            .filter(|a| a.from == arc.from && a.to == arc.to)
            .count();
        out.push((idx, label_count == 1));
    }
    Ok(out)
}

/// Number of standard monomials (no basis head divides them) in the fiber
/// of `deg(s)`: the coefficient of that degree in the Hilbert series of
/// the ideal, counted pointwise, and an upper bound on the clusters any
/// walk from `s` can reach.
pub fn cluster_count_bound(
    basis: &GroebnerBasis,
    g: &Grading,
    s: &State,
    cap: usize,
) -> Result<usize> {
    let degree = g.degree(s)?;
    let fiber = enumerate_fiber(g, &degree, cap)?;
    Ok(fiber.iter().filter(|m| basis.is_standard(m)).count())
}
