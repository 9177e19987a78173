//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library beyond reading its results.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// `Z_{d_1} ⊕ … ⊕ Z_{d_k}` over `Z_n`, every `d_i | n`.
pub struct OracleModule {
    pub n: u64,
    pub blocks: Vec<u64>,
    pub elements: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
}

pub type Set = BTreeSet<usize>;
pub type Ideal = BTreeSet<u64>;

impl OracleModule {
    pub fn new(n: u64, blocks: &[u64]) -> OracleModule {
        let mut elements = vec![vec![]];
        for &d in blocks {
            elements = elements
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        OracleModule {
            n,
            blocks: blocks.to_vec(),
            elements,
            index,
        }
    }

    pub fn act(&self, r: u64, x: usize) -> usize {
        let e: Vec<u64> = self.elements[x]
            .iter()
            .zip(&self.blocks)
            .map(|(&c, &d)| r * c % d)
            .collect();
        self.index[&e]
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let e: Vec<u64> = self.elements[x]
            .iter()
            .zip(&self.elements[y])
            .zip(&self.blocks)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        self.index[&e]
    }

    pub fn whole(&self) -> Set {
        (0..self.elements.len()).collect()
    }

    /// `Rx + Ry`.
    fn span2(&self, x: usize, y: usize) -> Set {
        let mut out = Set::new();
        for a in 0..self.n {
            for b in 0..self.n {
                out.insert(self.add(self.act(a, x), self.act(b, y)));
            }
        }
        out
    }

    /// Every submodule generated by at most two elements, which is every
    /// submodule when `M` has at most two cyclic blocks.
    pub fn submodules(&self) -> Vec<Set> {
        assert!(self.blocks.len() <= 2);
        let mut all = BTreeSet::new();
        let len = self.elements.len();
        for x in 0..len {
            for y in x..len {
                all.insert(self.span2(x, y));
            }
        }
        all.into_iter().collect()
    }

    /// `(N:M) = {r : rM ⊆ N}`.
    pub fn colon(&self, n: &Set) -> Ideal {
        (0..self.n)
            .filter(|&r| (0..self.elements.len()).all(|x| n.contains(&self.act(r, x))))
            .collect()
    }

    pub fn is_prime(&self, p: &Set) -> bool {
        if p.len() == self.elements.len() {
            return false;
        }
        let c = self.colon(p);
        (0..self.n).all(|r| {
            (0..self.elements.len())
                .all(|x| !p.contains(&self.act(r, x)) || c.contains(&r) || p.contains(&x))
        })
    }

    /// `NK = (N:M)(K:M)M` is zero.
    pub fn product_is_zero(&self, n: &Set, k: &Set) -> bool {
        let (a, b) = (self.colon(n), self.colon(k));
        let zero = self.index[&vec![0; self.blocks.len()]];
        a.iter().all(|&x| {
            b.iter()
                .all(|&y| (0..self.elements.len()).all(|m| self.act(x * y % self.n, m) == zero))
        })
    }

    /// Elements as coordinate tuples, comparable with library submodules.
    pub fn coords(&self, s: &Set) -> BTreeSet<Vec<u64>> {
        s.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

pub type Elements = BTreeSet<Vec<u64>>;

/// Vertices as element sets and edges as pairs of them.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleGraph {
    pub vertices: BTreeSet<Elements>,
    pub edges: BTreeSet<(Elements, Elements)>,
}

impl OracleGraph {
    fn from_pairs(
        m: &OracleModule,
        vertices: &[Set],
        adjacent: impl Fn(&Set, &Set) -> bool,
    ) -> OracleGraph {
        let mut edges = BTreeSet::new();
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                if adjacent(a, b) {
                    let (x, y) = (m.coords(a), m.coords(b));
                    edges.insert((x.clone().min(y.clone()), x.max(y)));
                }
            }
        }
        OracleGraph {
            vertices: vertices.iter().map(|v| m.coords(v)).collect(),
            edges,
        }
    }

    pub fn adjacency(&self) -> (usize, Vec<Vec<bool>>) {
        let vs: Vec<_> = self.vertices.iter().collect();
        let pos = |v: &BTreeSet<Vec<u64>>| vs.iter().position(|w| *w == v).unwrap();
        let mut adj = vec![vec![false; vs.len()]; vs.len()];
        for (a, b) in &self.edges {
            let (i, j) = (pos(a), pos(b));
            adj[i][j] = true;
            adj[j][i] = true;
        }
        (vs.len(), adj)
    }
}

pub struct OracleSpace<'a> {
    pub m: &'a OracleModule,
    pub subs: Vec<Set>,
    pub primes: Vec<Set>,
}

impl<'a> OracleSpace<'a> {
    pub fn new(m: &'a OracleModule) -> OracleSpace<'a> {
        let subs = m.submodules();
        let primes = subs.iter().filter(|p| m.is_prime(p)).cloned().collect();
        OracleSpace { m, subs, primes }
    }

    /// `V(N)` as positions into `primes`.
    pub fn v(&self, n: &Set) -> BTreeSet<usize> {
        let c = self.m.colon(n);
        (0..self.primes.len())
            .filter(|&i| self.m.colon(&self.primes[i]).is_superset(&c))
            .collect()
    }

    fn proper(&self) -> Vec<&Set> {
        let whole = self.m.elements.len();
        self.subs.iter().filter(|s| s.len() != whole).collect()
    }

    /// `G(τ_T)` with `T = Spec(M)`.
    pub fn g_tau_spec(&self) -> OracleGraph {
        let t: BTreeSet<usize> = (0..self.primes.len()).collect();
        let candidates: Vec<&Set> = self
            .proper()
            .into_iter()
            .filter(|n| self.v(n) != t)
            .collect();
        let covers = |a: &Set, b: &Set| {
            self.v(a)
                .union(&self.v(b))
                .copied()
                .collect::<BTreeSet<_>>()
                == t
        };
        let vertices: Vec<Set> = candidates
            .iter()
            .filter(|a| candidates.iter().any(|b| covers(a, b)))
            .map(|s| (*s).clone())
            .collect();
        OracleGraph::from_pairs(self.m, &vertices, covers)
    }

    /// `AG(M)*`.
    pub fn ag_star(&self) -> OracleGraph {
        let ann = self.m.colon(
            &[self.m.index[&vec![0; self.m.blocks.len()]]]
                .into_iter()
                .collect(),
        );
        let eligible: Vec<&Set> = self
            .proper()
            .into_iter()
            .filter(|n| self.m.colon(n) != ann)
            .collect();
        let vertices: Vec<Set> = eligible
            .iter()
            .filter(|a| eligible.iter().any(|b| self.m.product_is_zero(a, b)))
            .map(|s| (*s).clone())
            .collect();
        OracleGraph::from_pairs(self.m, &vertices, |a, b| self.m.product_is_zero(a, b))
    }
}

/// Minimal prime ideals of `Z_n` by scanning every ideal `{x : d | x}`.
pub fn minimal_primes_zn(n: u64) -> usize {
    let ideals: Vec<Ideal> = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (0..n).filter(|x| x % d == 0).collect())
        .collect();
    let prime = |i: &Ideal| {
        i.len() < n as usize
            && (0..n).all(|a| {
                (0..n).all(|b| !i.contains(&(a * b % n)) || i.contains(&a) || i.contains(&b))
            })
    };
    let primes: Vec<&Ideal> = ideals.iter().filter(|i| prime(i)).collect();
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
        .count()
}

/// Clique number by scanning every vertex subset.
pub fn brute_omega(n: usize, adj: &[Vec<bool>]) -> usize {
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|i| s & (1 << i) == 0 || (i + 1..n).all(|j| s & (1 << j) == 0 || adj[i][j]))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Chromatic number as the fewest independent sets covering the vertices,
/// by dynamic programming over subsets.
pub fn brute_chi(n: usize, adj: &[Vec<bool>]) -> usize {
    let full = (1usize << n) - 1;
    let independent: Vec<bool> = (0..=full)
        .map(|s| {
            (0..n).all(|i| s & (1 << i) == 0 || (i + 1..n).all(|j| s & (1 << j) == 0 || !adj[i][j]))
        })
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let mut sub = s;
        while sub > 0 {
            if sub & low != 0 && independent[sub] && best[s ^ sub] != usize::MAX {
                best[s] = best[s].min(best[s ^ sub] + 1);
            }
            sub = (sub - 1) & s;
        }
    }
    best[full]
}

/// Does the graph contain a triangle?
pub fn has_triangle(n: usize, adj: &[Vec<bool>]) -> bool {
    (0..n).any(|a| (a + 1..n).any(|b| adj[a][b] && (b + 1..n).any(|c| adj[a][c] && adj[b][c])))
}
