mod common;

use std::collections::BTreeSet;

use common::{OracleModule, OracleSpace};
use proptest::prelude::*;
use zariski::graph::{build_ag, build_ag_star, build_g_tau, Graph};
use zariski::module::{Caps, FiniteModule, Submodule};
use zariski::ring::Ring;
use zariski::spectra::{PrimeSet, ZariskiSpace};
use zariski::verifier::{Instance, ModuleData};

fn divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Z_n` with one or two cyclic blocks `Z_d`, `d | n`.
fn cyclic_instance() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..=24).prop_flat_map(|n| {
        let ds = divisors(n);
        (
            Just(n),
            prop::collection::vec(prop::sample::select(ds), 1..=2),
        )
    })
}

/// Product rings with up to two factors and up to two blocks per factor.
fn product_instance() -> impl Strategy<Value = Instance> {
    prop::collection::vec(2u64..=12, 1..=2)
        .prop_flat_map(|ring| {
            let blocks: Vec<_> = ring
                .iter()
                .map(|&n| prop::collection::vec(prop::sample::select(divisors(n)), 0..=2))
                .collect();
            (Just(ring), blocks)
        })
        .prop_filter("non-zero and small", |(ring, blocks)| {
            let order: u64 = blocks.iter().flatten().product();
            (2..=96).contains(&order) && ring.len() == blocks.len()
        })
        .prop_map(|(ring, blocks)| Instance {
            blocks,
            ..Instance::regular(ring)
        })
}

fn coords(space: &ZariskiSpace, n: &Submodule) -> BTreeSet<Vec<u64>> {
    n.elements()
        .iter()
        .map(|&x| space.module().coords(x).to_vec())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_and_spectrum_match_the_oracle((n, blocks) in cyclic_instance()) {
        let oracle_m = OracleModule::new(n, &blocks);
        let oracle = OracleSpace::new(&oracle_m);
        let caps = Caps::default();
        let m = FiniteModule::direct_sum(Ring::cyclic(n).unwrap(), vec![blocks.clone()], &caps).unwrap();
        let space = ZariskiSpace::new(m, &caps).unwrap();

        let lib: BTreeSet<_> = space.lattice().iter().map(|s| coords(&space, s)).collect();
        let orc: BTreeSet<_> = oracle.subs.iter().map(|s| oracle_m.coords(s)).collect();
        prop_assert_eq!(lib, orc);

        let lib_primes: BTreeSet<_> = space.spec().iter().map(|&i| coords(&space, space.lattice().get(i))).collect();
        let orc_primes: BTreeSet<_> = oracle.primes.iter().map(|s| oracle_m.coords(s)).collect();
        prop_assert_eq!(lib_primes, orc_primes);

        for s in &oracle.subs {
            let lib_n = space.lattice().iter().find(|x| coords(&space, x) == oracle_m.coords(s)).unwrap();
            let colon = space.module().colon(lib_n);
            let lib_colon: BTreeSet<u64> = (0..n).filter(|&r| space.module().ring().ideal_contains(&colon, &space.module().ring().elem(&[r]).unwrap())).collect();
            prop_assert_eq!(lib_colon, oracle_m.colon(s));
        }

        let g = build_g_tau(&space, &space.whole_spec());
        prop_assert_eq!(vertex_sets(&space, &g), oracle.g_tau_spec().vertices);
        prop_assert_eq!(g.edge_count(), oracle.g_tau_spec().edges.len());
        let ag = build_ag_star(&space);
        prop_assert_eq!(vertex_sets(&space, &ag), oracle.ag_star().vertices);
        prop_assert_eq!(ag.edge_count(), oracle.ag_star().edges.len());
    }

    #[test]
    fn lattice_is_closed_and_v_identities_hold(inst in product_instance()) {
        let data = ModuleData::new(&inst).unwrap();
        let space = data.space();
        let m = space.module();
        let l = space.lattice();
        for a in l.iter() {
            for b in l.iter() {
                prop_assert!(l.index_of(&m.sum(a, b)).is_some());
                prop_assert!(l.index_of(&m.intersection(a, b)).is_some());
                // NK ⊆ N ∩ K
                prop_assert!(m.product(a, b).is_subset(&m.intersection(a, b)));
            }
            let r = space.radical(a);
            prop_assert!(a.is_subset(&r));
            prop_assert_eq!(space.radical(&r), r);
        }
        prop_assert!(data.v_chain_violation().is_none(), "{:?}", data.v_chain_violation());
        // finite unions of closed sets are closed
        let closed = space.closed_sets();
        for s in &closed {
            for t in &closed {
                prop_assert!(space.is_closed(&s.union(t)));
            }
        }
    }

    #[test]
    fn class_based_graphs_match_pairwise_definitions(inst in product_instance()) {
        let space = ModuleData::new(&inst).unwrap().space().clone();
        for t in space.closed_sets().into_iter().filter(|t| !t.is_empty()) {
            let g = build_g_tau(&space, &t);
            let naive = naive_g_tau(&space, &t);
            prop_assert_eq!(edge_ids(&g), naive.1);
            prop_assert_eq!(g.ids().to_vec(), naive.0);
        }
        let (ag_ids, ag_edges) = naive_ag(&space, false);
        let ag = build_ag(&space);
        prop_assert_eq!(ag.ids().to_vec(), ag_ids);
        prop_assert_eq!(edge_ids(&ag), ag_edges);
        let (st_ids, st_edges) = naive_ag(&space, true);
        let st = build_ag_star(&space);
        prop_assert_eq!(st.ids().to_vec(), st_ids);
        prop_assert_eq!(edge_ids(&st), st_edges);
    }
}

fn vertex_sets(space: &ZariskiSpace, g: &Graph) -> BTreeSet<BTreeSet<Vec<u64>>> {
    g.ids()
        .iter()
        .map(|&i| coords(space, space.lattice().get(i)))
        .collect()
}

fn edge_ids(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges()
        .iter()
        .map(|&(a, b)| (g.ids()[a], g.ids()[b]))
        .collect()
}

/// `V(N)` straight from colon ideals, without the space's class tables.
fn v_naive(space: &ZariskiSpace, n: &Submodule) -> PrimeSet {
    let m = space.module();
    let c = m.colon(n);
    let pos: Vec<usize> = (0..space.spec_len())
        .filter(|&p| m.colon(space.prime(p)).contains(&c))
        .collect();
    PrimeSet::from_positions(space.spec_len(), &pos).unwrap()
}

fn naive_g_tau(space: &ZariskiSpace, t: &PrimeSet) -> (Vec<usize>, BTreeSet<(usize, usize)>) {
    let l = space.lattice();
    let v: Vec<PrimeSet> = l.iter().map(|n| v_naive(space, n)).collect();
    let cand: Vec<usize> = (0..l.len())
        .filter(|&i| i != l.whole_index() && v[i] != *t)
        .collect();
    let covers = |a: usize, b: usize| v[a].union(&v[b]) == *t;
    let ids: Vec<usize> = cand
        .iter()
        .copied()
        .filter(|&a| cand.iter().any(|&b| covers(a, b)))
        .collect();
    let mut edges = BTreeSet::new();
    for (x, &a) in ids.iter().enumerate() {
        for &b in &ids[x + 1..] {
            if covers(a, b) {
                edges.insert((a, b));
            }
        }
    }
    (ids, edges)
}

fn naive_ag(space: &ZariskiSpace, star: bool) -> (Vec<usize>, BTreeSet<(usize, usize)>) {
    let m = space.module();
    let l = space.lattice();
    let ann = m.annihilator();
    let (zero, whole) = (l.zero_index(), l.whole_index());
    let eligible = |i: usize| {
        if star {
            i != whole && m.colon(l.get(i)) != ann
        } else {
            i != zero
        }
    };
    let partner = |k: usize| {
        if star {
            eligible(k)
        } else {
            k != zero && k != whole
        }
    };
    let kills = |a: usize, b: usize| m.product(l.get(a), l.get(b)).is_zero();
    let ids: Vec<usize> = (0..l.len())
        .filter(|&a| eligible(a) && (0..l.len()).any(|b| partner(b) && kills(a, b)))
        .collect();
    let mut edges = BTreeSet::new();
    for (x, &a) in ids.iter().enumerate() {
        for &b in &ids[x + 1..] {
            if kills(a, b) {
                edges.insert((a, b));
            }
        }
    }
    (ids, edges)
}
