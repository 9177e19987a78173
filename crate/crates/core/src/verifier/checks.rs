use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::eval::{Evaluation, Localized};
use super::{Hypothesis, TheoremId};
use crate::error::Result;
use crate::graph::{
    build_ag, build_ag_star, build_g_tau, is_homomorphism, is_retract, Diameter, Girth, Graph,
};
use crate::module::{composition_length, Submodule};
use crate::ring::RingElem;
use crate::spectra::{Decomposition, PrimeSet, ZariskiSpace};

#[derive(Default)]
pub(super) struct Outcome {
    pub hypotheses: Vec<Hypothesis>,
    pub witness: Option<Value>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn hyp(&mut self, name: &str, holds: bool) {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            holds,
        });
    }

    fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Records `w` when `ok` is false and passes `ok` through.
    fn expect(&mut self, ok: bool, w: impl FnOnce() -> Value) -> bool {
        if !ok && self.witness.is_none() {
            self.witness = Some(w());
        }
        ok
    }
}

const ARTINIAN: &str = "finite modules are Artinian and Noetherian";

pub(super) fn run(id: TheoremId, ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    use TheoremId::*;
    match id {
        R2_1 => r2_1(ev, out),
        P2_6a => p2_6(ev, out, false),
        P2_6b => p2_6(ev, out, true),
        L2_7 => l2_7(ev, out),
        L2_8 => l2_8(ev, out),
        L2_9 => l2_9(ev, out),
        P3_1a => p3_1a(ev, out),
        P3_1b => p3_1b(ev, out),
        C3_2 => c3_2(ev, out),
        L3_3 => l3_3(ev, out),
        C3_9 => c3_9(ev, out),
        T3_4 => t3_4(ev, out),
        T3_5 => t3_5(ev, out),
        P3_6 => p3_6(ev, out),
        T3_7 => t3_7(ev, out),
        T4_1 => t4_1(ev, out),
        T4_2 => t4_2(ev, out),
        L4_3 => l4_3(ev, out),
        T4_4 => t4_4(ev, out),
        C4_4 => c4_4(ev, out),
        T4_6 => t4_6(ev, out),
        C4_7 => c4_7(ev, out),
        C4_10 => c4_10(ev, out),
        P4_8 => p4_8(ev, out),
        L4_12 => l4_12(ev, out),
        C4_13 => c4_13(ev, out),
        P4_14 => p4_14(ev, out),
        P4_16 => p4_16(ev, out),
        Diam3 => diam3(ev, out),
    }
}

// ---- shared pieces ----

fn h0(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<()> {
    let v = ev.h0_violation()?;
    out.hyp("no N̄ ≠ 0, N̄ ≠ ∩T/Q with V(N) = T", v.is_none());
    if let Some(i) = v {
        out.note(format!("V({}) = T", ev.label(i)));
    }
    Ok(())
}

fn non_empty(ev: &Evaluation<'_>, out: &mut Outcome) {
    out.hyp("G(τ_T) non-empty", !ev.graph().is_empty());
}

fn t_is_spec(ev: &Evaluation<'_>, out: &mut Outcome) {
    out.hyp("T = Spec(M)", ev.is_spec());
}

fn is_k2(g: &Graph) -> bool {
    g.len() == 2 && g.edge_count() == 1
}

fn dominating_vertex(g: &Graph) -> Option<usize> {
    (0..g.len()).find(|&v| g.degree(v) + 1 == g.len())
}

fn triangle_free(ev: &Evaluation<'_>) -> bool {
    ev.omega() <= 2
}

fn acyclic(ev: &Evaluation<'_>) -> bool {
    ev.shape().girth == Girth::Acyclic
}

fn mbar_parts(d: &Decomposition) -> [&crate::module::FiniteModule; 2] {
    [&d.parts[0].quotient, &d.parts[1].quotient]
}

/// Positions of decompositions with `M̄_1` simple and `M̄_2` prime.
fn simple_prime(ds: &[Decomposition]) -> Option<usize> {
    ds.iter().position(|d| {
        let [a, b] = mbar_parts(d);
        a.is_simple() && b.is_prime_module()
    })
}

fn both_prime(ds: &[Decomposition]) -> Option<usize> {
    ds.iter().position(|d| {
        let [a, b] = mbar_parts(d);
        a.is_prime_module() && b.is_prime_module()
    })
}

fn idempotent_json(ds: &[Decomposition], i: Option<usize>) -> Value {
    match i {
        Some(i) => json!(ds[i].e.to_string()),
        None => Value::Null,
    }
}

/// `f(N) = min{n : P_n ∉ V(N)}` over the primes of `primes`, in
/// canonical order; checks it is defined and proper on `g`.
fn colouring_from_primes(
    space: &ZariskiSpace,
    g: &Graph,
    primes: &PrimeSet,
    out: &mut Outcome,
) -> bool {
    let order = primes.positions();
    let mut colour = Vec::with_capacity(g.len());
    for (v, &id) in g.ids().iter().enumerate() {
        match order.iter().position(|&p| !space.v(id).contains(p)) {
            Some(c) => colour.push(c),
            None => {
                return out.expect(false, || {
                    json!({ "undefined_at": g.labels()[v], "primes": space.prime_set_label(primes) })
                })
            }
        }
    }
    for (a, b) in g.edges() {
        if colour[a] == colour[b] {
            return out.expect(false, || {
                json!({
                    "clash": [g.labels()[a], g.labels()[b]],
                    "colour": colour[a],
                    "primes": space.prime_set_label(primes),
                })
            });
        }
    }
    let used = colour.iter().copied().max().map_or(0, |c| c + 1);
    out.expect(
        used <= order.len(),
        || json!({ "colours": used, "primes": order.len() }),
    )
}

// ---- ids x2.y ----

fn r2_1(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let space = ev.space();
    let t = ev.t();
    let closed = space.is_closed(t);
    out.hyp("T closed", closed);
    let irreducible = space.is_irreducible(t)?;
    let g = ev.graph();
    let mut ok = out.expect(
        (!g.is_empty()) == (closed && !irreducible),
        || json!({ "graph_empty": g.is_empty(), "irreducible": irreducible }),
    );
    if let Some(w) = ev.data().v_chain_violation() {
        ok = out.expect(false, || w.clone());
    }
    let m = ev.module();
    let meet = &ev.ctx()?.meet;
    let l = space.lattice();
    // NK = (N:M)(K:M)M, so its radical is a function of the colon classes
    let mut seen = HashMap::new();
    for (a, b) in g.edges() {
        let (ia, ib) = (g.ids()[a], g.ids()[b]);
        let key = {
            let (x, y) = (space.colon_class(ia), space.colon_class(ib));
            (x.min(y), x.max(y))
        };
        let r = seen
            .entry(key)
            .or_insert_with(|| space.radical(&m.product(l.get(ia), l.get(ib))))
            .clone();
        ok &= out.expect(r == *meet, || {
            json!({
                "edge": [g.labels()[a], g.labels()[b]],
                "radical_NK": ev.label_of(&r),
                "meet_T": ev.label_of(meet),
            })
        });
        if !ok {
            break;
        }
    }
    Ok(Some(ok))
}

fn p2_6(ev: &Evaluation<'_>, out: &mut Outcome, primeful_version: bool) -> Result<Option<bool>> {
    out.hyp("T closed", ev.space().is_closed(ev.t()));
    if primeful_version {
        out.hyp("M primeful", ev.data().is_primeful());
    }
    if !out.applicable() {
        return Ok(None);
    }
    let space = ev.space();
    let m = ev.module();
    let l = space.lattice();
    let meet = &ev.ctx()?.meet;
    let g = ev.graph();
    if g.edge_count() == 0 {
        return Ok(Some(true));
    }
    let target = ev.meet_space()?;
    let ag = build_ag(target);
    let mut radicals: Vec<Option<Submodule>> = vec![None; g.len()];
    let mut radical_of = |v: usize| {
        radicals[v]
            .get_or_insert_with(|| {
                let n = l.get(g.ids()[v]);
                if primeful_version {
                    space.radical(n)
                } else {
                    space.radical(&m.colon_closure(n))
                }
            })
            .clone()
    };
    let mut images: Vec<Option<usize>> = vec![None; g.len()];
    let mut image_of = |v: usize, r: &Submodule| -> Result<usize> {
        if let Some(i) = images[v] {
            return Ok(i);
        }
        let i = target.index_of(&target.module().image_from_parent(r)?);
        images[v] = Some(i);
        Ok(i)
    };
    let mut degenerate = 0;
    for (a, b) in g.edges() {
        let [ra, rb] = [radical_of(a), radical_of(b)];
        let edge = || json!([g.labels()[a], g.labels()[b]]);
        if !out.expect(meet.is_subset(&ra) && meet.is_subset(&rb), || {
            json!({ "edge": edge(), "radicals": [ev.label_of(&ra), ev.label_of(&rb)], "meet_T": ev.label_of(meet) })
        }) {
            return Ok(Some(false));
        }
        if ra == rb {
            degenerate += 1;
            continue;
        }
        let [ia, ib] = [image_of(a, &ra)?, image_of(b, &rb)?];
        let adjacent = match (ag.position(ia), ag.position(ib)) {
            (Some(x), Some(y)) => ag.has_edge(x, y),
            _ => false,
        };
        if !out.expect(adjacent, || {
            json!({
                "edge": edge(),
                "radicals": [ev.label_of(&ra), ev.label_of(&rb)],
                "images": [target.label(target.lattice().get(ia)), target.label(target.lattice().get(ib))],
            })
        }) {
            return Ok(Some(false));
        }
    }
    if degenerate > 0 {
        out.note(format!(
            "{degenerate} edge(s) with equal radicals (degenerate, not checked for adjacency)"
        ));
    }
    Ok(Some(true))
}

/// Embeds `AG(X)*` into `G(τ_T)` through full preimages in `M`.
fn embeds(
    ev: &Evaluation<'_>,
    x: &ZariskiSpace,
    induced: bool,
    what: &str,
    out: &mut Outcome,
) -> Result<bool> {
    let h = build_ag_star(x);
    let g = ev.graph();
    let order = ev.module().order();
    let mut map = Vec::with_capacity(h.len());
    for (v, &id) in h.ids().iter().enumerate() {
        let pre = x.module().lift_to_parent(x.lattice().get(id), order)?;
        let idx = ev.space().index_of(&pre);
        match g.position(idx) {
            Some(p) => map.push(p),
            None => {
                return Ok(out.expect(false, || {
                    json!({ "graph": what, "vertex": h.labels()[v], "preimage": ev.label(idx), "reason": "preimage is not a vertex" })
                }))
            }
        }
    }
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            let (x_edge, g_edge) = (h.has_edge(a, b), g.has_edge(map[a], map[b]));
            let bad = (x_edge && !g_edge) || (induced && g_edge && !x_edge);
            if bad {
                return Ok(out.expect(false, || {
                    json!({
                        "graph": what,
                        "pair": [h.labels()[a], h.labels()[b]],
                        "edge_in_source": x_edge,
                        "edge_in_G": g_edge,
                    })
                }));
            }
        }
    }
    Ok(true)
}

fn l2_7(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    out.hyp("T closed", ev.space().is_closed(ev.t()));
    let mbar = ev.mbar_space()?;
    let a = embeds(ev, mbar, false, "AG(M/Q)*", out)?;
    let meet = ev.meet_space()?;
    let b = a && embeds(ev, meet, true, "AG(M/∩T)*", out)?;
    Ok(Some(a && b))
}

fn l2_8(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("M̄ faithful", ev.mbar_faithful()?);
    if !out.applicable() {
        return Ok(None);
    }
    let g = ev.graph();
    let ag = ev.data().ag_star();
    let same = g.same_as(ag);
    Ok(Some(out.expect(same, || {
        json!({ "G": ev.graph_json(), "AG*": { "vertices": ag.labels(), "edges": ag.edges().len() } })
    })))
}

fn l2_9(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let l = ev.space().lattice();
    let g = ev.graph();
    let missing = (0..l.len())
        .find(|&i| i != l.zero_index() && i != l.whole_index() && g.position(i).is_none());
    out.hyp("every nontrivial submodule is a vertex", missing.is_none());
    out.hyp("Δ finite", true);
    if !out.applicable() {
        return Ok(None);
    }
    let len = composition_length(l);
    let delta = ev.shape().max_degree;
    Ok(Some(out.expect(
        len <= delta + 1,
        || json!({ "length": len, "max_degree": delta }),
    )))
}

// ---- ids x3.y ----

fn p3_1a(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    h0(ev, out)?;
    let g = ev.graph();
    out.hyp(
        "some vertex adjacent to all others",
        dominating_vertex(g).is_some(),
    );
    if !out.applicable() {
        return Ok(None);
    }
    let ds = ev.decompositions()?;
    let found = simple_prime(ds);
    Ok(Some(out.expect(
        found.is_some(),
        || json!({ "reason": "no idempotent gives M̄1 simple and M̄2 prime", "G": ev.graph_json() }),
    )))
}

fn p3_1b(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    h0(ev, out)?;
    let ds = ev.decompositions()?;
    let witness = both_prime(ds);
    out.hyp("M̄1 and M̄2 prime for some idempotent", witness.is_some());
    if !out.applicable() {
        return Ok(None);
    }
    let space = ev.space();
    let m = ev.module();
    let splits = ev.data().splittings()?;
    let g = ev.graph();
    for (k, d) in ds.iter().enumerate() {
        let [a, b] = mbar_parts(d);
        if !(a.is_prime_module() && b.is_prime_module()) {
            continue;
        }
        let split = &splits[k];
        let q = [
            split.spaces[0]
                .module()
                .lift_to_parent(&d.parts[0].q, m.order())?,
            split.spaces[1]
                .module()
                .lift_to_parent(&d.parts[1].q, m.order())?,
        ];
        let u_gen = m.sum(&split.halves[0], &q[1]);
        let v_gen = m.sum(&q[0], &split.halves[1]);
        let (vu, vv) = (space.v_of(&u_gen), space.v_of(&v_gen));
        let side: Vec<Option<usize>> = g
            .ids()
            .iter()
            .map(|&id| {
                if space.v(id) == vu {
                    Some(0)
                } else if space.v(id) == vv {
                    Some(1)
                } else {
                    None
                }
            })
            .collect();
        let counts = [0, 1].map(|s| side.iter().filter(|&&x| x == Some(s)).count());
        let mut ok = side.iter().all(Option::is_some) && counts[0] > 0 && counts[1] > 0 && vu != vv;
        if ok {
            ok = (0..g.len())
                .all(|x| (x + 1..g.len()).all(|y| g.has_edge(x, y) == (side[x] != side[y])));
        }
        if !out.expect(ok, || {
            json!({
                "e": d.e.to_string(),
                "U": ev.label_of(&u_gen),
                "V": ev.label_of(&v_gen),
                "G": ev.graph_json(),
            })
        }) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn c3_2(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("M̄ faithful", ev.mbar_faithful()?);
    h0(ev, out)?;
    if !out.applicable() {
        return Ok(None);
    }
    let g = ev.graph();
    let a = dominating_vertex(g).is_some();
    let b = ev.shape().star;
    let m = ev.module();
    let l = ev.space().lattice();
    let mut split = None;
    'outer: for (i, f) in l.iter().enumerate() {
        if f.len() == 1 || f.len() == m.order() || !m.order().is_multiple_of(f.len()) {
            continue;
        }
        for (j, d) in l.iter().enumerate() {
            if f.len() * d.len() == m.order() && m.intersection(f, d).is_zero() {
                let (fm, dm) = (m.submodule_as_module(f), m.submodule_as_module(d));
                if fm.is_simple() && dm.is_prime_module() {
                    split = Some((i, j));
                    break 'outer;
                }
            }
        }
    }
    let c = split.is_some();
    if let Some((i, j)) = split {
        out.note(format!("M = {} ⊕ {}", ev.label(i), ev.label(j)));
    }
    Ok(Some(out.expect(a == b && b == c, || {
        json!({ "dominating_vertex": a, "star": b, "simple_plus_prime": c, "G": ev.graph_json() })
    })))
}

fn l3_3(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    h0(ev, out)?;
    non_empty(ev, out);
    if !out.applicable() {
        return Ok(None);
    }
    let ds = ev.decompositions()?;
    let tf = triangle_free(ev);
    let ac = acyclic(ev);
    let bp = both_prime(ds);
    let sp = simple_prime(ds);
    let ok = (!tf || bp.is_some()) && (!ac || sp.is_some());
    Ok(Some(out.expect(ok, || {
        json!({ "triangle_free": tf, "acyclic": ac, "both_prime_e": idempotent_json(ds, bp), "simple_prime_e": idempotent_json(ds, sp), "G": ev.graph_json() })
    })))
}

fn c3_9(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let d = ev.data();
    out.hyp(
        "M multiplication or primeful",
        d.is_multiplication() || d.is_primeful(),
    );
    h0(ev, out)?;
    if !out.applicable() {
        return Ok(None);
    }
    let ds = ev.decompositions()?;
    let star = ev.shape().star;
    let sp = simple_prime(ds);
    Ok(Some(out.expect(
        star == sp.is_some(),
        || json!({ "star": star, "simple_prime_e": idempotent_json(ds, sp), "G": ev.graph_json() }),
    )))
}

fn t3_4(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let s = ev.shape();
    out.hyp("G(τ_T) is a tree", s.tree);
    if !out.applicable() {
        return Ok(None);
    }
    Ok(Some(out.expect(s.star, || ev.graph_json())))
}

fn t3_5(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let d = ev.data();
    out.hyp("R Artinian", true);
    out.hyp(
        "M multiplication or primeful",
        d.is_multiplication() || d.is_primeful(),
    );
    out.hyp("G(τ_T) bipartite", ev.shape().bipartite);
    non_empty(ev, out);
    out.note(ARTINIAN);
    if !out.applicable() {
        return Ok(None);
    }
    let ok = ev.t().len() == 2 && is_k2(ev.graph());
    Ok(Some(out.expect(
        ok,
        || json!({ "T": ev.t().len(), "G": ev.graph_json() }),
    )))
}

fn p3_6(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    out.hyp("M multiplication", ev.data().is_multiplication());
    out.hyp("Ann(M̄) nil", ev.ann_mbar_nil()?);
    non_empty(ev, out);
    if !out.applicable() {
        return Ok(None);
    }
    let s = ev.shape();
    let k2 = ev.t().len() == 2 && is_k2(ev.graph());
    let ok = (!s.bipartite || k2) && (s.regular.is_none() || k2);
    Ok(Some(out.expect(ok, || {
        json!({ "bipartite": s.bipartite, "regular": s.regular, "T": ev.t().len(), "G": ev.graph_json() })
    })))
}

fn t3_7(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    h0(ev, out)?;
    out.hyp("Ann(M̄) nil", ev.ann_mbar_nil()?);
    let space = ev.space();
    let q = &ev.ctx()?.q;
    let min = space.min_members(&space.v_star(q));
    out.hyp("|Min(M̄)| ≥ 3", min.len() >= 3);
    if !out.applicable() {
        return Ok(None);
    }
    Ok(Some(out.expect(!acyclic(ev), || ev.graph_json())))
}

// ---- ids x4.y ----

fn t4_1(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let ctx = ev.ctx()?;
    let l = ev.space().lattice();
    let g = ev.graph();
    let m = ev.module();
    // a minimal N ⊋ Q is Q + Rx for any x ∈ N \ Q
    let mut above: Vec<usize> = (0..m.order() as u32)
        .filter(|&x| !ctx.q.contains(x))
        .map(|x| ev.space().index_of(&m.sum(&ctx.q, &m.span(&[x]))))
        .collect();
    above.sort_unstable();
    above.dedup();
    let minimal: Vec<usize> = above
        .iter()
        .copied()
        .filter(|&i| {
            !above
                .iter()
                .any(|&j| j != i && l.get(j).is_subset(l.get(i)))
        })
        .collect();
    let missing = minimal.iter().find(|&&i| g.position(i).is_none());
    out.hyp("M̄ Artinian", true);
    out.hyp("every minimal N̄ has N a vertex", missing.is_none());
    out.note(ARTINIAN);
    if let Some(&i) = missing {
        out.note(format!("{} is not a vertex", ev.label(i)));
    }
    if !out.applicable() {
        return Ok(None);
    }
    let (omega, chi) = (ev.omega(), ev.chi()?);
    Ok(Some(out.expect(
        omega == chi,
        || json!({ "omega": omega, "chi": chi, "G": ev.graph_json() }),
    )))
}

fn t4_2(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("M̄ faithful", ev.mbar_faithful()?);
    if !out.applicable() {
        return Ok(None);
    }
    let g = ev.graph();
    let s = ev.shape();
    let ring = ev.module().ring();
    let a = ev.chi()? == 2;
    let b = s.bipartite && g.edge_count() > 0;
    let c = s.complete_bipartite.is_some();
    let d = (ring.is_reduced() && ring.minimal_primes().len() == 2) || (s.star && g.len() > 1);
    Ok(Some(out.expect(a == b && b == c && c == d, || {
        json!({ "chi_2": a, "bipartite": b, "complete_bipartite": c, "reduced_two_min_or_star": d, "G": ev.graph_json() })
    })))
}

fn l4_3(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    out.hyp("T finite", true);
    let ok = colouring_from_primes(ev.space(), ev.graph(), ev.t(), out);
    Ok(Some(ok))
}

fn t4_4(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let g = ev.graph();
    let s = ev.shape();
    let omega = ev.omega();
    // χ = 2 exactly when the graph is 2-colourable and has an edge.
    let chi2 = s.bipartite && g.edge_count() > 0;
    let ok = (omega == 2) == chi2 && s.bipartite == (omega <= 2);
    Ok(Some(out.expect(
        ok,
        || json!({ "omega": omega, "bipartite": s.bipartite, "G": ev.graph_json() }),
    )))
}

fn c4_4(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    h0(ev, out)?;
    if !out.applicable() {
        return Ok(None);
    }
    let ds = ev.decompositions()?;
    let cb = ev.shape().complete_bipartite.is_some();
    let bp = both_prime(ds);
    Ok(Some(out.expect(cb == bp.is_some(), || {
        json!({ "complete_bipartite": cb, "both_prime_e": idempotent_json(ds, bp), "G": ev.graph_json() })
    })))
}

/// The admissible multiplicative sets to test: the instance's own `S`, or
/// every cyclic `{1, s, s², …}` avoiding `∪_{P∈T}(P:M)`, one per idempotent.
fn s_family(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Vec<Vec<RingElem>>> {
    let ring = ev.module().ring();
    let space = ev.space();
    let colons: Vec<_> = ev
        .t()
        .positions()
        .iter()
        .map(|&p| ev.module().colon(space.prime(p)))
        .collect();
    let admissible = |s: &[RingElem]| {
        s.iter()
            .all(|x| !colons.iter().any(|c| ring.ideal_contains(c, x)))
    };
    out.hyp("M finitely generated", true);
    if let Some(s) = ev.instance().s_elements(ring)? {
        out.hyp("S ∩ ∪(P:M) = ∅", admissible(&s));
        return Ok(vec![s]);
    }
    let mut seen: BTreeMap<Vec<u64>, Vec<RingElem>> = BTreeMap::new();
    for x in ring.elements() {
        let mut s = vec![ring.one()];
        let mut p = x.clone();
        while !s.contains(&p) {
            s.push(p.clone());
            p = ring.mul(&p, &x);
        }
        s.sort();
        if s.contains(&ring.zero()) || !admissible(&s) {
            continue;
        }
        let prod = s.iter().fold(ring.one(), |acc, y| ring.mul(&acc, y));
        let mut e = prod.clone();
        while !ring.is_idempotent(&e) {
            e = ring.mul(&e, &prod);
        }
        seen.entry(e.residues().to_vec()).or_insert(s);
    }
    out.hyp("some admissible S", !seen.is_empty());
    out.note(format!(
        "{} admissible cyclic S up to idempotent",
        seen.len()
    ));
    Ok(seen.into_values().collect())
}

fn s_json(s: &[RingElem]) -> Value {
    json!(s.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn t4_6(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let family = s_family(ev, out)?;
    if !out.applicable() {
        return Ok(None);
    }
    let mut failed_sets = 0;
    for s in &family {
        let local = ev.data().localized(s);
        let local = local.as_ref().as_ref().map_err(Clone::clone)?;
        let failures = retract_failures(ev, local)?;
        if !failures.is_empty() {
            failed_sets += 1;
            out.expect(false, || {
                let parts: Vec<Value> = failures
                    .iter()
                    .map(|(what, detail)| json!({ "failure": what, "detail": detail }))
                    .collect();
                json!({ "S": s_json(s), "e": local.loc.e.to_string(), "failures": parts })
            });
        }
    }
    if failed_sets > 0 {
        out.note(format!("{failed_sets} of {} S fail", family.len()));
    }
    Ok(Some(failed_sets == 0))
}

/// Every part of the localization statement that fails for one `S`:
/// the correspondence `V(N) = T ⇔ V(S⁻¹N) = T_S`, then `φ: N ↦ S⁻¹N`
/// being a surjective homomorphism onto `G(τ_{T_S})` with a section that
/// makes it a retraction, and equal clique numbers.
fn retract_failures(ev: &Evaluation<'_>, local: &Localized) -> Result<Vec<(&'static str, Value)>> {
    let space = ev.space();
    let m = ev.module();
    let l = space.lattice();
    let g = ev.graph();
    let ls = &local.space;
    let mut failures = Vec::new();
    let mut ts = Vec::new();
    for p in ev.t().positions() {
        let sp = local.loc.map_submodule(m, space.prime(p));
        match ls.spec_position(&sp) {
            Some(pos) => ts.push(pos),
            None => failures.push(("S⁻¹P is not prime", json!(ls.label(&sp)))),
        }
    }
    if !failures.is_empty() {
        return Ok(failures);
    }
    let ts = PrimeSet::from_positions(ls.spec_len(), &ts)?;
    let image: Vec<usize> = (0..l.len())
        .map(|i| ls.index_of(&local.loc.map_submodule(m, l.get(i))))
        .collect();
    let mismatched: Vec<usize> = (0..l.len())
        .filter(|&i| (space.v(i) == ev.t()) != (*ls.v(image[i]) == ts))
        .collect();
    if let Some(&i) = mismatched.first() {
        let meet = &ev.ctx()?.meet;
        let above = mismatched
            .iter()
            .filter(|&&j| meet.is_subset(l.get(j)))
            .count();
        failures.push((
            "V(N) = T differs from V(S⁻¹N) = T_S",
            json!({ "N": ev.label(i), "count": mismatched.len(), "count_above_meet": above }),
        ));
    }
    let h = build_g_tau(ls, &ts);
    let phi: Vec<Option<usize>> = g.ids().iter().map(|&id| h.position(image[id])).collect();
    if let Some(v) = phi.iter().position(Option::is_none) {
        failures.push(("S⁻¹N is not a vertex", json!(g.labels()[v])));
        return Ok(failures);
    }
    let phi: Vec<usize> = phi.into_iter().flatten().collect();
    if !is_homomorphism(g, &h, &phi) {
        failures.push(("φ is not a homomorphism", ev.graph_json()));
    }
    let mut sigma = vec![usize::MAX; h.len()];
    for (v, &p) in phi.iter().enumerate() {
        if sigma[p] == usize::MAX {
            sigma[p] = v;
        }
    }
    if let Some(p) = sigma.iter().position(|&x| x == usize::MAX) {
        failures.push(("φ is not surjective", json!(h.labels()[p])));
    } else if !is_retract(g, &h, &phi, &sigma) {
        failures.push(("not a retract", ev.graph_json()));
    }
    let (wg, wh) = (ev.omega(), crate::graph::clique_number(&h));
    if wg != wh {
        failures.push(("ω differs", json!({ "omega_G": wg, "omega_H": wh })));
    }
    Ok(failures)
}

fn c4_7(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    let family = s_family(ev, out)?;
    if !out.applicable() {
        return Ok(None);
    }
    let cap = ev.space().caps().max_chi_vertices;
    let chi_m = crate::graph::chromatic_number(ev.data().ag(), cap)?;
    for s in &family {
        let local = ev.data().localized(s);
        let local = local.as_ref().as_ref().map_err(Clone::clone)?;
        let chi_s = crate::graph::chromatic_number(&build_ag(&local.space), cap)?;
        if !out.expect(chi_s == chi_m, || {
            json!({ "S": s_json(s), "e": local.loc.e.to_string(), "chi_AG_M": chi_m, "chi_AG_MS": chi_s })
        }) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn c4_10(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    out.hyp("M semiprime", ev.data().is_semiprime());
    out.hyp("AG(M)* has no infinite clique", true);
    if !out.applicable() {
        return Ok(None);
    }
    let space = ev.space();
    let m = ev.module();
    let faithful = m.is_faithful();
    let all = space.whole_spec();
    let colon = m.colon(&space.meet(&all));
    let zero = colon == m.ring().zero_ideal();
    if zero {
        out.note(format!(
            "(∩P : M) = 0 over {}",
            space.prime_set_label(&space.min_members(&all))
        ));
    }
    Ok(Some(out.expect(faithful && zero, || {
        json!({ "faithful": faithful, "Ann(M)": m.annihilator().to_string(), "colon_of_meet": colon.to_string() })
    })))
}

fn p4_8(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    out.hyp("M̄ cyclic", ev.ctx()?.quotient.is_cyclic());
    out.hyp("T closed", ev.space().is_closed(ev.t()));
    non_empty(ev, out);
    if !out.applicable() {
        return Ok(None);
    }
    let k = ev.min_t().len();
    let omega = ev.omega();
    let girth = ev.shape().girth;
    let mut ok = out.expect(omega >= k, || json!({ "omega": omega, "min_T": k }));
    if k >= 3 {
        ok &= out.expect(
            girth == Girth::Finite(3),
            || json!({ "girth": girth, "min_T": k }),
        );
    }
    if ev.is_spec() && ev.mbar_reduced()? {
        let chi = ev.chi()?;
        ok &= out.expect(
            chi == omega && omega == k,
            || json!({ "chi": chi, "omega": omega, "min_T": k }),
        );
    } else {
        out.note("reduced clause not evaluated (needs T = Spec(M) and √0̄ = 0̄)");
    }
    Ok(Some(ok))
}

fn l4_12(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    let semiprime = {
        let s = ev.mbar_space()?;
        s.module().is_semiprime(s.lattice())
    };
    out.hyp("M̄ semiprime", semiprime);
    if !out.applicable() {
        return Ok(None);
    }
    Ok(Some(colouring_from_primes(
        ev.space(),
        ev.graph(),
        &ev.min_t(),
        out,
    )))
}

fn c4_13(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("AG(M/∩T)* has no infinite clique", true);
    if !out.applicable() {
        return Ok(None);
    }
    Ok(Some(colouring_from_primes(
        ev.space(),
        ev.graph(),
        &ev.min_t(),
        out,
    )))
}

fn p4_14(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("√0̄ = 0̄", ev.mbar_reduced()?);
    let space = ev.space();
    let ring = ev.module().ring();
    let min = ev.min_t();
    let minimal = min.positions().iter().all(|&p| {
        let c = ev.module().colon(space.prime(p));
        ring.minimal_primes().contains(&c)
    });
    out.hyp("(P:M) minimal prime for P ∈ Min(T)", minimal);
    out.hyp("M̄ X-injective", ev.mbar_space()?.is_x_injective());
    if !out.applicable() {
        return Ok(None);
    }
    Ok(Some(colouring_from_primes(space, ev.graph(), &min, out)))
}

fn p4_16(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    t_is_spec(ev, out);
    out.hyp("√0̄ = 0̄", ev.mbar_reduced()?);
    out.hyp("M̄ faithful", ev.mbar_faithful()?);
    non_empty(ev, out);
    if !out.applicable() {
        return Ok(None);
    }
    let k = ev.module().ring().minimal_primes().len();
    let (omega, chi) = (ev.omega(), ev.chi()?);
    Ok(Some(out.expect(
        chi == omega && omega == k,
        || json!({ "chi": chi, "omega": omega, "min_R": k }),
    )))
}

fn diam3(ev: &Evaluation<'_>, out: &mut Outcome) -> Result<Option<bool>> {
    non_empty(ev, out);
    if !out.applicable() {
        return Ok(None);
    }
    let d = ev.shape().diameter;
    let ok = matches!(d, Diameter::Finite(x) if x <= 3);
    Ok(Some(out.expect(
        ok,
        || json!({ "diameter": d, "G": ev.graph_json() }),
    )))
}
