//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach the output.
//!
//! Two criteria fail on their own terms: criterion 4 through T3.5, whose
//! counterexamples are all complete bipartite `K_{a,b} ≠ K_2`, and
//! criterion 6 through the `V(N) = T ⇔ V(S⁻¹N) = T_S` clause. Both are
//! reported as FAIL; the run only aborts if a failure differs from the
//! documented counterexample pattern or a documented failure disappears.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use common::{
    brute_chi, brute_omega, has_triangle, minimal_primes_zn, OracleGraph, OracleModule, OracleSpace,
};
use zariski::graph::{
    build_ag_star, build_g_tau, chromatic_number, clique_number, metrics, Diameter, Girth, Graph,
};
use zariski::module::Caps;
use zariski::spectra::ZariskiSpace;
use zariski::verifier::{
    check, sweep, Evaluation, Family, Instance, ModuleData, SweepOptions, TSpec, TheoremId,
};

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const SOLVER_ORACLE_VERTICES: usize = 12;
/// `Z_2^6` gives a 62-vertex `G(τ_Spec)`, over the default cap of 40.
const SWEEP_CHI_CAP: usize = 64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn library_graph(space: &ZariskiSpace, g: &Graph) -> OracleGraph {
    let m = space.module();
    let set = |id: usize| -> BTreeSet<Vec<u64>> {
        space
            .lattice()
            .get(id)
            .elements()
            .iter()
            .map(|&x| m.coords(x).to_vec())
            .collect()
    };
    OracleGraph {
        vertices: g.ids().iter().map(|&id| set(id)).collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (set(g.ids()[a]), set(g.ids()[b]));
                (x.clone().min(y.clone()), x.max(y))
            })
            .collect(),
    }
}

fn space_of(inst: &Instance) -> ZariskiSpace {
    ZariskiSpace::new(inst.build_module().unwrap(), &inst.caps).unwrap()
}

fn report_passes(th: TheoremId, inst: &Instance) -> bool {
    let data = ModuleData::new(inst).unwrap();
    let ev = Evaluation::new(&data, inst.clone()).unwrap();
    let r = check(th, &ev, false);
    r.applicable && r.conclusion_holds == Some(true)
}

fn criterion_1() -> Outcome {
    let oracle_m = OracleModule::new(12, &[12]);
    let oracle = OracleSpace::new(&oracle_m);
    let og = oracle.g_tau_spec();
    let oag = oracle.ag_star();

    let inst = Instance::regular(vec![12]);
    let space = space_of(&inst);
    let g = build_g_tau(&space, &space.whole_spec());
    let ag = build_ag_star(&space);
    let gm = metrics(&g, 40).unwrap();
    let am = metrics(&ag, 40).unwrap();
    let three: BTreeSet<Vec<u64>> = (0..12).filter(|x| x % 3 == 0).map(|x| vec![x]).collect();
    let centre = (0..g.len())
        .find(|&v| g.degree(v) == 2)
        .map(|v| library_graph(&space, &g).vertices.iter().nth(v).cloned());
    let checks = [
        (
            "|Spec| = 2",
            space.spec_len() == 2 && oracle.primes.len() == 2,
        ),
        (
            "G star K_{1,2}",
            gm.star && gm.vertices == 3 && gm.complete_bipartite == Some([1, 2]),
        ),
        ("centre 3Z_12", centre == Some(Some(three))),
        (
            "AG* path P4",
            am.vertices == 4 && am.edges == 3 && am.tree && am.max_degree == 2,
        ),
        ("AG* diameter 3", am.diameter == Diameter::Finite(3)),
        ("G = oracle", library_graph(&space, &g) == og),
        ("AG* = oracle", library_graph(&space, &ag) == oag),
    ];
    summarize(&checks)
}

fn criterion_2() -> Outcome {
    let oracle_m = OracleModule::new(30, &[30]);
    let oracle = OracleSpace::new(&oracle_m);
    let (n, adj) = oracle.g_tau_spec().adjacency();
    let (ow, oc) = (brute_omega(n, &adj), brute_chi(n, &adj));
    let min_r = minimal_primes_zn(30);

    let inst = Instance::regular(vec![30]);
    let space = space_of(&inst);
    let g = build_g_tau(&space, &space.whole_spec());
    let m = metrics(&g, 40).unwrap();
    let checks = [
        ("ω = 3", m.clique_number == 3 && ow == 3),
        ("χ = 3", m.chromatic_number == 3 && oc == 3),
        (
            "|Min(R)| = 3",
            min_r == 3 && space.module().ring().minimal_primes().len() == 3,
        ),
        (
            "girth 3",
            m.girth == Girth::Finite(3) && has_triangle(n, &adj),
        ),
        ("P4.16 holds", report_passes(TheoremId::P4_16, &inst)),
        ("P4.8 holds", report_passes(TheoremId::P4_8, &inst)),
    ];
    summarize(&checks)
}

fn criterion_3() -> Outcome {
    let oracle_m = OracleModule::new(6, &[2, 3]);
    let oracle = OracleSpace::new(&oracle_m);
    let inst = Instance {
        blocks: vec![vec![2, 3]],
        ..Instance::regular(vec![6])
    };
    let space = space_of(&inst);
    let g = build_g_tau(&space, &space.whole_spec());
    let ag = build_ag_star(&space);
    let checks = [
        ("G ≅ K_2", g.len() == 2 && g.edge_count() == 1),
        ("|T| = 2", space.spec_len() == 2),
        ("G = AG* vertex for vertex", g.same_as(&ag)),
        (
            "G = oracle",
            library_graph(&space, &g) == oracle.g_tau_spec(),
        ),
        (
            "AG* = oracle",
            library_graph(&space, &ag) == oracle.ag_star(),
        ),
        ("L2.8 holds", report_passes(TheoremId::L2_8, &inst)),
        ("T3.5 holds", report_passes(TheoremId::T3_5, &inst)),
    ];
    summarize(&checks)
}

fn summarize(checks: &[(&str, bool)]) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        let names: Vec<&str> = checks.iter().map(|c| c.0).collect();
        outcome(true, names.join("; "))
    } else {
        outcome(false, format!("failed: {}", failed.join("; ")))
    }
}

#[derive(Default)]
struct SolverTally {
    graphs: usize,
    disagreements: Vec<String>,
}

fn solver_agrees(g: &Graph, what: &str, ev: &Evaluation<'_>, tally: &Mutex<SolverTally>) {
    if g.is_empty() || g.len() > SOLVER_ORACLE_VERTICES {
        return;
    }
    let n = g.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
        .collect();
    let (bw, bc) = (brute_omega(n, &adj), brute_chi(n, &adj));
    let w = clique_number(g);
    let c = chromatic_number(g, ev.space().caps().max_chi_vertices).unwrap();
    let mut t = tally.lock().unwrap();
    t.graphs += 1;
    if (w, c) != (bw, bc) {
        t.disagreements.push(format!(
            "{what} of {}: solver ω={w} χ={c}, oracle ω={bw} χ={bc}",
            ev.describe()
        ));
    }
}

struct SweepResult {
    failures_by_theorem: Vec<(TheoremId, usize)>,
    skipped: usize,
    applicable: usize,
    t3_5_shapes: BTreeMap<String, usize>,
    elapsed: Duration,
    solver: SolverTally,
}

/// Criteria 4 and 5 share one pass over the family.
fn sweep_families() -> SweepResult {
    let theorems: Vec<TheoremId> = [
        "R2.1", "P2.6a", "L2.7", "L2.8", "T3.4", "T3.5", "T4.1", "T4.4", "P4.8", "P4.16", "DIAM3",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    let opts = SweepOptions {
        theorems: theorems.clone(),
        caps: Caps {
            max_chi_vertices: SWEEP_CHI_CAP,
            ..Caps::default()
        },
        ..SweepOptions::default()
    };
    let tally = Mutex::new(SolverTally::default());
    let inspect = |ev: &Evaluation<'_>| {
        solver_agrees(ev.graph(), "G(τ_T)", ev, &tally);
        if ev.is_spec() {
            solver_agrees(ev.data().ag(), "AG(M)", ev, &tally);
            solver_agrees(ev.data().ag_star(), "AG(M)*", ev, &tally);
        }
    };
    let mut counts = vec![0usize; theorems.len()];
    let mut t3_5_shapes = BTreeMap::new();
    let (mut skipped, mut applicable) = (0, 0);
    let start = Instant::now();
    for family in ["zn:2..60", "products:max=64"] {
        let family: Family = family.parse().unwrap();
        let summary = sweep(
            &family,
            &opts,
            &mut |r| {
                if r.is_counterexample() {
                    counts[theorems.iter().position(|&t| t == r.theorem).unwrap()] += 1;
                    if r.theorem == TheoremId::T3_5 {
                        *t3_5_shapes
                            .entry(witness_shape(r.witness.as_ref().unwrap()))
                            .or_insert(0) += 1;
                    }
                }
            },
            Some(&inspect),
        )
        .unwrap();
        skipped += summary.skipped;
        applicable += summary.applicable;
    }
    SweepResult {
        failures_by_theorem: theorems.into_iter().zip(counts).collect(),
        skipped,
        applicable,
        t3_5_shapes,
        elapsed: start.elapsed(),
        solver: tally.into_inner().unwrap(),
    }
}

/// Shape of a T3.5 witness graph: `K_{a,b}` when complete bipartite,
/// otherwise `bipartite` or `not bipartite` with its order.
fn witness_shape(w: &serde_json::Value) -> String {
    let names: Vec<&str> = w["G"]["vertices"]
        .as_array()
        .map(|v| v.iter().filter_map(|x| x.as_str()).collect())
        .unwrap_or_default();
    let n = names.len();
    let mut adj = vec![Vec::new(); n];
    for e in w["G"]["edges"].as_array().into_iter().flatten() {
        let pos = |i: usize| {
            names
                .iter()
                .position(|v| Some(*v) == e[i].as_str())
                .unwrap()
        };
        let (a, b) = (pos(0), pos(1));
        adj[a].push(b);
        adj[b].push(a);
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                match side[u] {
                    None => {
                        side[u] = Some(!side[v].unwrap());
                        stack.push(u);
                    }
                    Some(x) if x == side[v].unwrap() => return format!("not bipartite on {n}"),
                    _ => {}
                }
            }
        }
    }
    let a = side.iter().filter(|x| **x == Some(false)).count();
    let (a, b) = (a.min(n - a), a.max(n - a));
    if a > 0 && edges == a * b {
        format!("K_{{{a},{b}}}")
    } else {
        format!("bipartite on {n}")
    }
}

fn criterion_4(r: &SweepResult) -> Outcome {
    let failing: Vec<String> = r
        .failures_by_theorem
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|(t, n)| format!("{t}: {n}"))
        .collect();
    let detail = format!(
        "{} applicable, {} skipped, counterexamples [{}], {:.1} s (limit {} s)",
        r.applicable,
        r.skipped,
        failing.join(", "),
        r.elapsed.as_secs_f64(),
        SWEEP_LIMIT.as_secs()
    );
    outcome(
        failing.is_empty() && r.skipped == 0 && r.elapsed < SWEEP_LIMIT,
        detail,
    )
}

fn criterion_5(r: &SweepResult) -> Outcome {
    let s = &r.solver;
    let mut detail = format!(
        "{} graphs with 1..={SOLVER_ORACLE_VERTICES} vertices, {} disagreements",
        s.graphs,
        s.disagreements.len()
    );
    if let Some(first) = s.disagreements.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    outcome(s.graphs > 0 && s.disagreements.is_empty(), detail)
}

struct Localization {
    retract: bool,
    omega: bool,
    /// Submodules where `V(N) = T` and `V(S⁻¹N) = T_S` disagree, and
    /// whether each contains `∩T`.
    mismatches: Vec<(String, bool)>,
}

fn localization_fixture() -> Localization {
    let inst = Instance::regular(vec![30])
        .with_t(TSpec::ClosedOf(vec![vec![6]]))
        .with_s(vec![vec![1], vec![5], vec![25]]);
    let data = ModuleData::new(&inst).unwrap();
    let ev = Evaluation::new(&data, inst.clone()).unwrap();
    let space = ev.space();
    let m = ev.module();
    let ring = m.ring();
    let s: Vec<_> = [1, 5, 25]
        .iter()
        .map(|&x| ring.elem(&[x]).unwrap())
        .collect();
    let local = data.localized(&s);
    let local = local.as_ref().as_ref().unwrap();
    let ls = &local.space;
    let t = ev.t();
    let ts_positions: Vec<usize> = t
        .positions()
        .iter()
        .map(|&p| {
            ls.spec_position(&local.loc.map_submodule(m, space.prime(p)))
                .unwrap()
        })
        .collect();
    let ts = zariski::spectra::PrimeSet::from_positions(ls.spec_len(), &ts_positions).unwrap();
    let g = ev.graph();
    let h = build_g_tau(ls, &ts);
    // N ↦ 25N, read off the elements directly
    let e = ring.elem(&[25]).unwrap();
    let phi: Vec<usize> = g
        .ids()
        .iter()
        .map(|&id| {
            let image = m.scale(&e, space.lattice().get(id));
            let in_local = local.loc.map_submodule(m, space.lattice().get(id));
            assert_eq!(local.loc.image_in_parent(m, &in_local), image);
            h.position(ls.index_of(&in_local)).unwrap()
        })
        .collect();
    let mut sigma = vec![usize::MAX; h.len()];
    for (v, &w) in phi.iter().enumerate().rev() {
        sigma[w] = v;
    }
    let retract = g.len() == 2
        && h.len() == 2
        && g.edge_count() == 1
        && h.edge_count() == 1
        && zariski::graph::is_homomorphism(g, &h, &phi)
        && zariski::graph::is_retract(g, &h, &phi, &sigma);
    let omega = clique_number(g) == clique_number(&h);
    let meet = &ev.ctx().unwrap().meet;
    let l = space.lattice();
    let mismatches = (0..l.len())
        .filter(|&i| {
            let local_n = ls.index_of(&local.loc.map_submodule(m, l.get(i)));
            (space.v(i) == t) != (*ls.v(local_n) == ts)
        })
        .map(|i| (space.label(l.get(i)), meet.is_subset(l.get(i))))
        .collect();
    Localization {
        retract,
        omega,
        mismatches,
    }
}

fn criterion_6(loc: &Localization) -> Outcome {
    let shown: Vec<String> = loc
        .mismatches
        .iter()
        .map(|(n, above)| format!("{n}{}", if *above { "" } else { " (not ⊇ ∩T)" }))
        .collect();
    outcome(
        loc.retract && loc.omega && loc.mismatches.is_empty(),
        format!(
            "N ↦ 25N retract {}, ω preserved {}, V(N)=T ⇔ V(S⁻¹N)=T_S fails at [{}]",
            loc.retract,
            loc.omega,
            shown.join(", ")
        ),
    )
}

fn criterion_7() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_zariski");
    let fixtures: [&[&str]; 4] = [
        &["--ring", "12"],
        &["--ring", "30"],
        &["--ring", "6", "--module", "2,3"],
        &["--ring", "30", "--T", "closed:6", "--S", "1;5;25"],
    ];
    let mut commands = Vec::new();
    for f in fixtures {
        for which in ["g-tau", "ag", "ag-star"] {
            for format in ["dot", "json"] {
                let mut args = vec!["graph", which, "--format", format];
                args.extend_from_slice(f);
                commands.push(args);
            }
            let mut args = vec!["metrics", which];
            args.extend_from_slice(f);
            commands.push(args);
        }
    }
    let mut differing = Vec::new();
    for args in &commands {
        let runs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                let out = Command::new(exe).args(args).output().unwrap();
                assert!(
                    out.status.success(),
                    "{args:?}: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                out.stdout
            })
            .collect();
        if runs[0].is_empty() || runs.iter().any(|r| *r != runs[0]) {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} commands x 3 runs, {} differing",
            commands.len(),
            differing.len()
        ),
    )
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        o.detail.push_str(&format!(
            " ({:.3} s, limit {:.0} s)",
            took.as_secs_f64(),
            limit.as_secs_f64()
        ));
        o.pass &= took < limit;
    }
    o
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "Z_12 fixture", timed(Some(FIXTURE_LIMIT), criterion_1)));
    results.push((2, "Z_30 fixture", timed(Some(FIXTURE_LIMIT), criterion_2)));
    results.push((
        3,
        "Z_2+Z_3 over Z_6 fixture",
        timed(Some(FIXTURE_LIMIT), criterion_3),
    ));
    let sweep = sweep_families();
    results.push((4, "sweep zn:2..60 + products:max=64", criterion_4(&sweep)));
    results.push((5, "ω/χ solvers vs exhaustive oracle", criterion_5(&sweep)));
    let mut loc = None;
    let o6 = timed(Some(FIXTURE_LIMIT), || {
        let l = localization_fixture();
        let o = criterion_6(&l);
        loc = Some(l);
        o
    });
    results.push((6, "localization retract Z_30, T=V(6), S={1,5,25}", o6));
    results.push((7, "determinism of graph/metrics", timed(None, criterion_7)));

    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{tag}] {name}: {}", o.detail);
    }

    // The documented failures must keep their documented shape.
    let mut unexpected = Vec::new();
    for (id, _, o) in &results {
        match id {
            4 => {
                let only_t3_5 = sweep
                    .failures_by_theorem
                    .iter()
                    .all(|(t, n)| *n == 0 || *t == TheoremId::T3_5);
                let t3_5 = sweep
                    .failures_by_theorem
                    .iter()
                    .any(|(t, n)| *t == TheoremId::T3_5 && *n > 0);
                if !(only_t3_5
                    && t3_5
                    && sweep
                        .t3_5_shapes
                        .keys()
                        .all(|k| k.starts_with("K_") && k != "K_{1,1}")
                    && sweep.skipped == 0
                    && sweep.elapsed < SWEEP_LIMIT)
                {
                    unexpected.push(format!(
                        "criterion 4 left its documented shape: {}",
                        o.detail
                    ));
                }
            }
            6 => {
                let l = loc.as_ref().unwrap();
                let documented = l.retract && l.omega && l.mismatches == [("0".to_string(), false)];
                if !documented || o.pass {
                    unexpected.push(format!(
                        "criterion 6 left its documented shape: {}",
                        o.detail
                    ));
                }
            }
            _ if !o.pass => unexpected.push(format!("criterion {id} failed")),
            _ => {}
        }
    }
    let stars: usize = sweep
        .t3_5_shapes
        .iter()
        .filter(|(k, _)| k.starts_with("K_{1,"))
        .map(|(_, n)| n)
        .sum();
    let total: usize = sweep.t3_5_shapes.values().sum();
    println!(
        "T3.5 counterexamples: {total} complete bipartite, {stars} of them stars K_{{1,n}}, {} distinct shapes",
        sweep.t3_5_shapes.len()
    );
    assert!(unexpected.is_empty(), "{unexpected:#?}");
    println!("documented failures unchanged: criterion 4 (T3.5 on complete bipartite G ≠ K_2), criterion 6 (N = 0)");
}
