//! Brute-force reference: explicit state-graph exploration, exact cluster
//! partitions and the definitional cluster graph.
//!
//! Everything here is deliberately simple and single-threaded; it is the
//! ground truth the algebraic path is tested against, never the default
//! execution path.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::algebra::{Binomial, GroebnerBasis, State};
use crate::cluster::ClusterGraph;
use crate::error::{Error, Result};

/// A move in explicit form. Reversible moves apply in both directions;
/// directed moves only consume the tail side. General binomials (shared
/// support allowed) are legal: a side applies wherever the state dominates
/// it, which subsumes the disjoint-support transition case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMove {
    pub binomial: Binomial,
    pub reversible: bool,
}

impl OracleMove {
    pub fn reversible_from(d: &[i64]) -> Result<Self> {
        Ok(OracleMove {
            binomial: Binomial::from_transition(d).ok_or(Error::ZeroTransition)?,
            reversible: true,
        })
    }

    pub fn directed_from(d: &[i64]) -> Result<Self> {
        Ok(OracleMove {
            binomial: Binomial::from_transition(d).ok_or(Error::ZeroTransition)?,
            reversible: false,
        })
    }

    pub fn from_binomial(b: Binomial, reversible: bool) -> Self {
        OracleMove {
            binomial: b,
            reversible,
        }
    }

    /// Signed vector of the forward application (tail consumed, head made).
    pub fn label(&self) -> Vec<i64> {
        self.binomial.signed()
    }
}

/// Explicitly explored part of the state graph.
#[derive(Debug, Clone)]
pub struct StateGraph {
    states: Vec<State>,
    index: BTreeMap<State, usize>,
    arcs: Vec<StateArc>,
    origin: Vec<State>,
}

/// One directed application of a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateArc {
    pub from: usize,
    pub to: usize,
    pub mv: usize,
}

impl StateGraph {
    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn arcs(&self) -> &[StateArc] {
        &self.arcs
    }

    pub fn origin(&self) -> &[State] {
        &self.origin
    }

    pub fn position(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// BFS closure of the initial states under all applicable moves, recording
/// one arc per legal application. Deterministic given input order; exceeds
/// `cap` with an error carrying the partial count.
pub fn explore(moves: &[OracleMove], initial: &[State], cap: usize) -> Result<StateGraph> {
    let mut states: Vec<State> = Vec::new();
    let mut index: BTreeMap<State, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut origin: Vec<State> = Vec::new();

    let intern = |s: State,
                      states: &mut Vec<State>,
                      index: &mut BTreeMap<State, usize>,
                      queue: &mut VecDeque<usize>|
     -> Result<usize> {
        if let Some(&i) = index.get(&s) {
            return Ok(i);
        }
        if states.len() >= cap {
            return Err(Error::CapExceeded {
                what: "states",
                cap,
                partial: states.len(),
            });
        }
        let i = states.len();
        states.push(s.clone());
        index.insert(s, i);
        queue.push_back(i);
        Ok(i)
    };

    for s in initial {
        intern(s.clone(), &mut states, &mut index, &mut queue)?;
        if !origin.contains(s) {
            origin.push(s.clone());
        }
    }

    let mut arcs: Vec<StateArc> = Vec::new();
    while let Some(i) = queue.pop_front() {
        for (mi, mv) in moves.iter().enumerate() {
            let here = states[i].clone();
            // forward: consume the tail, produce the head
            if let Some(stripped) = here.checked_sub(mv.binomial.tail()) {
                let to_state = stripped.checked_add(mv.binomial.head())?;
                let j = intern(to_state, &mut states, &mut index, &mut queue)?;
                arcs.push(StateArc { from: i, to: j, mv: mi });
            }
            if mv.reversible {
                if let Some(stripped) = here.checked_sub(mv.binomial.head()) {
                    let to_state = stripped.checked_add(mv.binomial.tail())?;
                    let j = intern(to_state, &mut states, &mut index, &mut queue)?;
                    arcs.push(StateArc { from: i, to: j, mv: mi });
                }
            }
        }
    }

    Ok(StateGraph {
        states,
        index,
        arcs,
        origin,
    })
}

/// Connected components of the explored states under reversible arcs only:
/// the exact clusters. Components are sorted by smallest member index and
/// internally ascending.
pub fn clusters(graph: &StateGraph, moves: &[OracleMove]) -> Vec<Vec<usize>> {
    let n = graph.states.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for arc in &graph.arcs {
        if moves[arc.mv].reversible {
            let (ra, rb) = (find(&mut parent, arc.from), find(&mut parent, arc.to));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// The definitional cluster graph of the explored region: nodes are the
/// normal-form representatives of every explored cluster; an arc appears
/// whenever *any* member of one cluster maps into another by a directed
/// move. Exhaustive over witnesses, hence the completeness standard.
pub fn cluster_graph(
    graph: &StateGraph,
    moves: &[OracleMove],
    basis: &GroebnerBasis,
) -> Result<ClusterGraph> {
    let comps = clusters(graph, moves);
    let mut comp_of = vec![0usize; graph.states.len()];
    let mut rep_of_comp: Vec<State> = Vec::with_capacity(comps.len());
    for (ci, members) in comps.iter().enumerate() {
        for &m in members {
            comp_of[m] = ci;
        }
        rep_of_comp.push(basis.normal_form(&graph.states[members[0]])?);
    }

    let mut nodes: BTreeSet<State> = rep_of_comp.iter().cloned().collect();
    let mut arcs: BTreeMap<(State, State, Vec<i64>), State> = BTreeMap::new();
    for arc in &graph.arcs {
        if moves[arc.mv].reversible {
            continue;
        }
        let (ca, cb) = (comp_of[arc.from], comp_of[arc.to]);
        let (ra, rb) = (&rep_of_comp[ca], &rep_of_comp[cb]);
        if ra == rb {
            continue;
        }
        let witness = graph.states[arc.from].clone();
        arcs.entry((ra.clone(), rb.clone(), moves[arc.mv].label()))
            .and_modify(|w| {
                if witness < *w {
                    *w = witness.clone();
                }
            })
            .or_insert_with(|| graph.states[arc.from].clone());
        nodes.insert(ra.clone());
        nodes.insert(rb.clone());
    }

    let mut initial: BTreeSet<State> = BTreeSet::new();
    for s in &graph.origin {
        initial.insert(basis.normal_form(s)?);
    }
    Ok(ClusterGraph::from_parts(nodes, arcs, initial))
}
