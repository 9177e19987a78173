use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Disconnected => s.serialize_str("disconnected"),
            Diameter::Empty => s.serialize_str("empty"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Acyclic => s.serialize_str("acyclic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub vertices: usize,
    pub edges: usize,
    pub diameter: Diameter,
    pub girth: Girth,
    pub bipartite: bool,
    pub tree: bool,
    pub star: bool,
    /// Part sizes, smaller first.
    pub complete_bipartite: Option<[usize; 2]>,
    /// Common degree when every vertex has the same degree.
    pub regular: Option<usize>,
    pub max_degree: usize,
    pub clique_number: usize,
    pub chromatic_number: usize,
}

/// The parts of [`GraphMetrics`] that need no exact solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub diameter: Diameter,
    pub girth: Girth,
    pub bipartite: bool,
    pub tree: bool,
    pub star: bool,
    pub complete_bipartite: Option<[usize; 2]>,
    pub regular: Option<usize>,
    pub max_degree: usize,
}

pub fn shape(g: &Graph) -> Shape {
    let diameter = diameter(g);
    let connected = matches!(diameter, Diameter::Finite(_));
    let parts = bipartition(g);
    let edges = g.edge_count();
    let complete_bipartite = match parts {
        Some([a, b]) if connected && a >= 1 && b >= 1 && edges == a * b => {
            Some([a.min(b), a.max(b)])
        }
        _ => None,
    };
    let degrees: Vec<usize> = (0..g.len()).map(|v| g.degree(v)).collect();
    let regular = match degrees.first() {
        Some(&d) if degrees.iter().all(|&x| x == d) => Some(d),
        _ => None,
    };
    Shape {
        diameter,
        girth: girth(g),
        bipartite: parts.is_some(),
        tree: connected && edges + 1 == g.len(),
        star: matches!(complete_bipartite, Some([1, _])),
        complete_bipartite,
        regular,
        max_degree: degrees.iter().copied().max().unwrap_or(0),
    }
}

pub fn metrics(g: &Graph, max_chi_vertices: usize) -> Result<GraphMetrics> {
    let chromatic_number = chromatic_number(g, max_chi_vertices)?;
    let s = shape(g);
    Ok(GraphMetrics {
        vertices: g.len(),
        edges: g.edge_count(),
        diameter: s.diameter,
        girth: s.girth,
        bipartite: s.bipartite,
        tree: s.tree,
        star: s.star,
        complete_bipartite: s.complete_bipartite,
        regular: s.regular,
        max_degree: s.max_degree,
        clique_number: clique_number(g),
        chromatic_number,
    })
}

fn bfs(g: &Graph, root: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.len()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for w in g.neighbors(u).ones() {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn diameter(g: &Graph) -> Diameter {
    if g.is_empty() {
        return Diameter::Empty;
    }
    let mut best = 0;
    for root in 0..g.len() {
        for d in bfs(g, root) {
            match d {
                Some(d) => best = best.max(d),
                None => return Diameter::Disconnected,
            }
        }
    }
    Diameter::Finite(best)
}

/// Shortest cycle: from every root, each non-tree edge closes a walk of
/// length `d(u) + d(w) + 1`; the minimum over all roots is exact.
pub fn girth(g: &Graph) -> Girth {
    let mut best = usize::MAX;
    for root in 0..g.len() {
        let mut dist = vec![usize::MAX; g.len()];
        let mut parent = vec![usize::MAX; g.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u).ones() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

/// Colour-class sizes of a proper 2-colouring, if one exists.
fn bipartition(g: &Graph) -> Option<[usize; 2]> {
    let mut side = vec![None; g.len()];
    let mut count = [0, 0];
    for root in 0..g.len() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        count[0] += 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su: usize = side[u].expect("coloured");
            for w in g.neighbors(u).ones() {
                match side[w] {
                    None => {
                        side[w] = Some(1 - su);
                        count[1 - su] += 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    _ => {}
                }
            }
        }
    }
    Some(count)
}

/// Bron–Kerbosch with pivoting.
pub fn clique_number(g: &Graph) -> usize {
    let mut p = FixedBitSet::with_capacity(g.len());
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(g.len());
    let mut best = 0;
    expand(g, 0, p, x, &mut best);
    best
}

fn expand(g: &Graph, size: usize, mut p: FixedBitSet, mut x: FixedBitSet, best: &mut usize) {
    let remaining = p.count_ones(..);
    if remaining == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + remaining <= *best {
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(g.neighbors(u)).count())
        .expect("P is non-empty");
    let candidates: Vec<usize> = p.difference(g.neighbors(pivot)).collect();
    for v in candidates {
        let mut np = p.clone();
        np.intersect_with(g.neighbors(v));
        let mut nx = x.clone();
        nx.intersect_with(g.neighbors(v));
        expand(g, size + 1, np, nx, best);
        p.set(v, false);
        x.insert(v);
    }
}

/// Drops all but one vertex of each class of equal open neighbourhoods.
/// Such twins are never adjacent and can always share a colour, so the
/// chromatic number is unchanged.
fn twin_reduce(g: &Graph) -> Graph {
    let mut current = g.clone();
    loop {
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        let keep: Vec<usize> = (0..current.len())
            .filter(|&v| seen.insert(current.neighbors(v).clone(), v).is_none())
            .collect();
        if keep.len() == current.len() {
            return current;
        }
        current = current.induced(&keep);
    }
}

/// Exact chromatic number: between ω and a greedy bound, each `k`
/// decided by backtracking. The vertex cap applies after twin reduction.
pub fn chromatic_number(g: &Graph, max_vertices: usize) -> Result<usize> {
    if g.is_empty() {
        return Ok(0);
    }
    let r = twin_reduce(g);
    if r.len() > max_vertices {
        return Err(Error::CapExceeded {
            what: "chromatic solver vertex",
            count: r.len(),
            cap: max_vertices,
        });
    }
    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(r.degree(v)));
    let upper = greedy_colours(&r, &order);
    let lower = clique_number(&r).max(1);
    for k in lower..upper {
        let mut colour = vec![usize::MAX; r.len()];
        if colour_from(&r, &order, 0, k, 0, &mut colour) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_colours(g: &Graph, order: &[usize]) -> usize {
    let mut colour = vec![usize::MAX; g.len()];
    let mut used = 0;
    for &v in order {
        let c = (0..)
            .find(|&c| !g.neighbors(v).ones().any(|w| colour[w] == c))
            .expect("some colour is free");
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn colour_from(
    g: &Graph,
    order: &[usize],
    at: usize,
    k: usize,
    used: usize,
    colour: &mut [usize],
) -> bool {
    let Some(&v) = order.get(at) else {
        return true;
    };
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).ones().any(|w| colour[w] == c) {
            continue;
        }
        colour[v] = c;
        if colour_from(g, order, at + 1, k, used.max(c + 1), colour) {
            return true;
        }
        colour[v] = usize::MAX;
    }
    false
}
