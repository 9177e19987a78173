//! The Zariski topology-graph `G(τ_T)`, the annihilating-submodule graphs
//! `AG(M)` and `AG(M)*`, and exact analytics on them.

mod export;
mod metrics;

use fixedbitset::FixedBitSet;

use crate::spectra::{PrimeSet, ZariskiSpace};

pub use export::{to_dot, to_json, Format};
pub use metrics::{
    chromatic_number, clique_number, diameter, girth, metrics, shape, Diameter, Girth,
    GraphMetrics, Shape,
};

/// A finite simple graph whose vertices are submodules, kept in lattice order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<usize>,
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// `ids` are lattice indices in increasing order; `edge` is queried once per pair.
    pub fn from_fn(
        ids: Vec<usize>,
        labels: Vec<String>,
        mut edge: impl FnMut(usize, usize) -> bool,
    ) -> Graph {
        let n = ids.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if edge(ids[a], ids[b]) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        Graph { ids, labels, adj }
    }

    /// Adjacency decided by class: `class_of[v]` for each vertex and a
    /// symmetric `k x k` table; a vertex is never adjacent to itself.
    fn from_classes(
        ids: Vec<usize>,
        labels: Vec<String>,
        class_of: &[usize],
        k: usize,
        table: &[bool],
    ) -> Graph {
        let n = ids.len();
        let mut members = vec![FixedBitSet::with_capacity(n); k];
        for (v, &c) in class_of.iter().enumerate() {
            members[c].insert(v);
        }
        let rows: Vec<FixedBitSet> = (0..k)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in (0..k).filter(|&b| table[a * k + b]) {
                    row.union_with(&members[b]);
                }
                row
            })
            .collect();
        let adj = class_of
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                let mut row = rows[c].clone();
                row.set(v, false);
                row
            })
            .collect();
        Graph { ids, labels, adj }
    }

    /// An unlabeled graph on `0..n`; used by tests and oracles.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        Graph {
            ids: (0..n).collect(),
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, a: usize) -> &FixedBitSet {
        &self.adj[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.adj[a].ones() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The subgraph induced on the positions in `keep` (kept in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let n = keep.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.adj[x].contains(y) {
                    adj[a].insert(b);
                }
            }
        }
        Graph {
            ids: keep.iter().map(|&x| self.ids[x]).collect(),
            labels: keep.iter().map(|&x| self.labels[x].clone()).collect(),
            adj,
        }
    }

    /// Same vertex ids and the same edges between them.
    pub fn same_as(&self, other: &Graph) -> bool {
        self.ids == other.ids && self.adj == other.adj
    }
}

/// `G(τ_T)`: proper `N` with `V(N) ≠ T` that have a partner `K` with
/// `V(N) ∪ V(K) = T`; edges are exactly such pairs.
pub fn build_g_tau(space: &ZariskiSpace, t: &PrimeSet) -> Graph {
    let lattice = space.lattice();
    let whole = lattice.whole_index();
    let k = space.class_count();
    // V(N) only depends on the colon class of N
    let inside: Vec<bool> = (0..k)
        .map(|c| space.class_v(c) != t && space.class_v(c).is_subset(t))
        .collect();
    let mut covers = vec![false; k * k];
    for a in (0..k).filter(|&a| inside[a]) {
        for b in (0..k).filter(|&b| inside[b]) {
            covers[a * k + b] = space.class_v(a).union(space.class_v(b)) == *t;
        }
    }
    let candidates: Vec<usize> = (0..lattice.len())
        .filter(|&i| i != whole && inside[space.colon_class(i)])
        .collect();
    let mut present = vec![false; k];
    for &i in &candidates {
        present[space.colon_class(i)] = true;
    }
    let has_partner: Vec<bool> = (0..k)
        .map(|a| (0..k).any(|b| present[b] && covers[a * k + b]))
        .collect();
    let ids: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| has_partner[space.colon_class(i)])
        .collect();
    let labels = ids.iter().map(|&i| space.label_at(i).to_string()).collect();
    let class_of: Vec<usize> = ids.iter().map(|&i| space.colon_class(i)).collect();
    Graph::from_classes(ids, labels, &class_of, k, &covers)
}

/// `NK = (N:M)(K:M)M` vanishes exactly when `(N:M)(K:M) ⊆ Ann(M)`; the
/// answer only depends on the two colon classes.
struct Annihilates<'a> {
    space: &'a ZariskiSpace,
    k: usize,
    table: Vec<bool>,
}

impl<'a> Annihilates<'a> {
    fn new(space: &'a ZariskiSpace) -> Self {
        let m = space.module();
        let ann = m.annihilator();
        let k = space.class_count();
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                let prod = m
                    .ring()
                    .ideal_product(space.class_ideal(a), space.class_ideal(b));
                table.push(ann.contains(&prod));
            }
        }
        Annihilates { space, k, table }
    }

    fn classes(&self, a: usize, b: usize) -> bool {
        self.table[a * self.k + b]
    }

    fn graph(&self, ids: Vec<usize>) -> Graph {
        let labels = ids
            .iter()
            .map(|&i| self.space.label_at(i).to_string())
            .collect();
        let class_of: Vec<usize> = ids.iter().map(|&i| self.space.colon_class(i)).collect();
        Graph::from_classes(ids, labels, &class_of, self.k, &self.table)
    }

    /// Per class: whether it annihilates the class of some member of `partners`.
    fn with_partner(&self, partners: &[usize]) -> Vec<bool> {
        let mut present = vec![false; self.k];
        for &p in partners {
            present[self.space.colon_class(p)] = true;
        }
        (0..self.k)
            .map(|a| (0..self.k).any(|b| present[b] && self.classes(a, b)))
            .collect()
    }
}

/// `AG(M)`: non-zero `N` with a non-zero proper `K` such that `NK = 0`.
pub fn build_ag(space: &ZariskiSpace) -> Graph {
    let lattice = space.lattice();
    let zero = lattice.zero_index();
    let whole = lattice.whole_index();
    let ann = Annihilates::new(space);
    let partners: Vec<usize> = (0..lattice.len())
        .filter(|&k| k != zero && k != whole)
        .collect();
    let ok = ann.with_partner(&partners);
    let ids: Vec<usize> = (0..lattice.len())
        .filter(|&n| n != zero && ok[space.colon_class(n)])
        .collect();
    ann.graph(ids)
}

/// `AG(M)*`: proper `N` with `(N:M) ≠ Ann(M)` and a proper partner `K`,
/// `(K:M) ≠ Ann(M)`, with `NK = 0`.
pub fn build_ag_star(space: &ZariskiSpace) -> Graph {
    let m = space.module();
    let lattice = space.lattice();
    let whole = lattice.whole_index();
    let annihilator = m.annihilator();
    let ann = Annihilates::new(space);
    let eligible: Vec<usize> = (0..lattice.len())
        .filter(|&k| k != whole && *space.class_ideal(space.colon_class(k)) != annihilator)
        .collect();
    let ok = ann.with_partner(&eligible);
    let ids: Vec<usize> = eligible
        .iter()
        .copied()
        .filter(|&n| ok[space.colon_class(n)])
        .collect();
    ann.graph(ids)
}

/// Every edge of `g` is sent to an edge of `h`.
pub fn is_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.len()
        && map.iter().all(|&x| x < h.len())
        && g.edges().iter().all(|&(a, b)| {
            let (x, y) = (map[a], map[b]);
            x != y && h.has_edge(x, y)
        })
}

/// `section` identifies `h` with a subgraph of `g`; `retraction` must be a
/// homomorphism `g → h` that fixes that copy of `h` pointwise.
pub fn is_retract(g: &Graph, h: &Graph, retraction: &[usize], section: &[usize]) -> bool {
    if section.len() != h.len() || section.iter().any(|&x| x >= g.len()) {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(g.len());
    for &x in section {
        if seen.put(x) {
            return false;
        }
    }
    let subgraph = h
        .edges()
        .iter()
        .all(|&(a, b)| g.has_edge(section[a], section[b]));
    subgraph
        && is_homomorphism(g, h, retraction)
        && (0..h.len()).all(|v| retraction[section[v]] == v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{Caps, FiniteModule};
    use crate::ring::Ring;

    fn space(moduli: Vec<u64>, blocks: Vec<Vec<u64>>) -> ZariskiSpace {
        let m =
            FiniteModule::direct_sum(Ring::new(moduli).unwrap(), blocks, &Caps::default()).unwrap();
        ZariskiSpace::new(m, &Caps::default()).unwrap()
    }

    fn edge_labels(g: &Graph) -> Vec<(String, String)> {
        g.edges()
            .into_iter()
            .map(|(a, b)| (g.labels()[a].clone(), g.labels()[b].clone()))
            .collect()
    }

    #[test]
    fn g_tau_examples() {
        let s = space(vec![12], vec![vec![12]]);
        let g = build_g_tau(&s, &s.whole_spec());
        assert_eq!(g.labels(), ["<2>", "<3>", "<4>"]);
        assert_eq!(
            edge_labels(&g),
            [("<2>".into(), "<3>".into()), ("<3>".into(), "<4>".into())]
        );
        let s = space(vec![6], vec![vec![2, 3]]);
        let g = build_g_tau(&s, &s.whole_spec());
        assert_eq!((g.len(), g.edge_count()), (2, 1));
        let s = space(vec![4], vec![vec![4]]);
        assert!(build_g_tau(&s, &s.whole_spec()).is_empty());
    }

    #[test]
    fn ag_star_examples() {
        let s = space(vec![12], vec![vec![12]]);
        let g = build_ag_star(&s);
        assert_eq!(g.labels(), ["<2>", "<3>", "<4>", "<6>"]);
        let mut e = edge_labels(&g);
        e.sort();
        assert_eq!(
            e,
            [
                ("<2>".into(), "<6>".into()),
                ("<3>".into(), "<4>".into()),
                ("<4>".into(), "<6>".into())
            ]
        );
        let s = space(vec![6], vec![vec![6]]);
        let g = build_ag_star(&s);
        assert_eq!(g.labels(), ["<2>", "<3>"]);
        assert_eq!(g.edge_count(), 1);
        let s = space(vec![7], vec![vec![7]]);
        assert!(build_ag(&s).is_empty());
        assert!(build_ag_star(&s).is_empty());
    }

    #[test]
    fn ag_excludes_zero_and_admits_m_only_with_partner() {
        let s = space(vec![12], vec![vec![12]]);
        let g = build_ag(&s);
        assert!(g.labels().iter().all(|l| l != "0"));
        assert!(!g.labels().contains(&"<1>".to_string()));
        // Z_2 over Z_4 is simple: no non-zero proper partner exists
        let s = space(vec![4], vec![vec![2]]);
        assert!(build_ag(&s).is_empty());
    }

    #[test]
    fn homomorphism_and_retract() {
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert!(is_homomorphism(&k2, &k2, &[0, 1]));
        assert!(!is_homomorphism(&k2, &k2, &[0, 0]));
        assert!(is_retract(&k2, &k2, &[0, 1], &[0, 1]));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(is_retract(&p3, &k2, &[0, 1, 0], &[0, 1]));
        assert!(!is_retract(&p3, &k2, &[1, 0, 1], &[0, 1]));
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(is_retract(&g, &g, &[0, 1, 2, 3], &[0, 1, 2, 3]));
    }
}
