use std::collections::VecDeque;

use serde::Serialize;

use super::rungraph::RunGraph;
use crate::graph::{component_sizes, on_cycle, scc};

/// Certificate of acceptance: `reach` marks reachable vertices and `count`
/// bounds the number of rejecting vertices still to be visited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub reach: Vec<bool>,
    pub count: Vec<u32>,
}

/// A reachable lasso through a rejecting vertex: `stem` leads from an
/// initial vertex to `cycle[0]`, which is rejecting; `cycle` returns to it.
/// `*_letters[i]` is the input read on the edge leaving the `i`-th vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLasso {
    pub stem: Vec<u32>,
    pub stem_letters: Vec<u32>,
    pub cycle: Vec<u32>,
    pub cycle_letters: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    Accepting(Annotation),
    Rejecting(RunLasso),
}

fn reachable(g: &RunGraph) -> Vec<bool> {
    let mut seen = vec![false; g.num_vertices()];
    let mut stack: Vec<u32> = g.initial.clone();
    for &v in &g.initial {
        seen[v as usize] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in g.graph.succ(v as usize) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Decides whether every reachable cycle avoids rejecting vertices.
///
/// On success the annotation assigns to each reachable vertex the largest
/// number of rejecting vertices on a path leaving it. Otherwise the witness
/// goes through the least-numbered rejecting vertex on a reachable cycle,
/// with a shortest stem and a shortest cycle.
pub fn check_accepting(g: &RunGraph) -> Acceptance {
    let n = g.num_vertices();
    let reach = reachable(g);
    let (comp, ncomp) = scc(&g.graph);
    let sizes = component_sizes(&comp, ncomp);
    if let Some(r) = (0..n).find(|&v| reach[v] && g.rejecting[v] && on_cycle(&g.graph, &comp, &sizes, v)) {
        return Acceptance::Rejecting(witness(g, r as u32));
    }
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); ncomp];
    for v in 0..n {
        if reach[v] {
            members[comp[v] as usize].push(v as u32);
        }
    }
    let mut count = vec![0u32; n];
    // Components are numbered sinks first.
    for c in 0..ncomp {
        let mut best = 0u32;
        for &v in &members[c] {
            for &w in g.graph.succ(v as usize) {
                if comp[w as usize] as usize != c {
                    best = best.max(count[w as usize] + g.rejecting[w as usize] as u32);
                }
            }
        }
        for &v in &members[c] {
            count[v as usize] = best;
        }
    }
    Acceptance::Accepting(Annotation { reach, count })
}

/// Breadth-first search from `sources`; returns the edge (index into
/// `graph.targets`) by which each vertex was first reached, and the source
/// vertex for each edge is recovered through `from`.
fn bfs_path(g: &RunGraph, sources: &[u32], goal: impl Fn(u32, u32) -> bool) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.num_vertices();
    let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s as usize] {
            seen[s as usize] = true;
            queue.push_back(s);
        }
    }
    let path_to = |parent: &[Option<(u32, u32)>], mut v: u32| -> (Vec<u32>, Vec<u32>) {
        let (mut vs, mut ls) = (vec![], vec![]);
        while let Some((p, letter)) = parent[v as usize] {
            vs.push(p);
            ls.push(letter);
            v = p;
        }
        vs.reverse();
        ls.reverse();
        (vs, ls)
    };
    while let Some(v) = queue.pop_front() {
        let start = g.graph.offsets[v as usize] as usize;
        for (i, &w) in g.graph.succ(v as usize).iter().enumerate() {
            let letter = g.letters[start + i];
            if goal(v, w) {
                let (mut vs, mut ls) = path_to(&parent, v);
                vs.push(v);
                ls.push(letter);
                return Some((vs, ls));
            }
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = Some((v, letter));
                queue.push_back(w);
            }
        }
    }
    None
}

fn witness(g: &RunGraph, r: u32) -> RunLasso {
    let (stem, stem_letters) = if g.initial.contains(&r) {
        (vec![], vec![])
    } else {
        bfs_path(g, &g.initial, |_, w| w == r).expect("rejecting vertex is reachable")
    };
    let (cycle, cycle_letters) =
        bfs_path(g, &[r], |_, w| w == r).expect("rejecting vertex lies on a cycle");
    RunLasso {
        stem,
        stem_letters,
        cycle,
        cycle_letters,
    }
}

/// Independent check of the annotation conditions: the initial vertices
/// are marked reachable, and every edge leaving a reachable vertex leads to
/// a reachable vertex whose count is not larger, and strictly smaller if it
/// is rejecting. Counts must not exceed the number of vertices.
pub fn validate_annotation(g: &RunGraph, a: &Annotation) -> Result<(), String> {
    let n = g.num_vertices();
    if a.reach.len() != n || a.count.len() != n {
        return Err("annotation has the wrong size".into());
    }
    for &v in &g.initial {
        if !a.reach[v as usize] {
            return Err(format!("initial vertex {v} not marked reachable"));
        }
    }
    for v in 0..n {
        if a.count[v] as usize > n {
            return Err(format!("count of vertex {v} exceeds the vertex count"));
        }
        if !a.reach[v] {
            continue;
        }
        let lo = g.graph.offsets[v] as usize;
        let hi = g.graph.offsets[v + 1] as usize;
        for &w in &g.graph.targets[lo..hi] {
            let w = w as usize;
            if !a.reach[w] {
                return Err(format!("edge {v} -> {w} leaves the reachable set"));
            }
            let need = a.count[w] as u64 + g.rejecting[w] as u64;
            if (a.count[v] as u64) < need {
                return Err(format!("edge {v} -> {w} violates the count condition"));
            }
        }
    }
    Ok(())
}
