use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use super::{Instance, TSpec, TheoremId};
use crate::error::Result;
use crate::graph::{self, build_ag, build_ag_star, build_g_tau, Graph, Shape};
use crate::module::{localize, FiniteModule, Localization, Submodule};
use crate::ring::RingElem;
use crate::spectra::{Decomposition, PrimeSet, Splitting, TContext, ZariskiSpace};

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// A localization `S⁻¹M = eM` together with its own Zariski space.
pub struct Localized {
    pub loc: Localization,
    pub space: ZariskiSpace,
}

/// Everything about a module that does not depend on `T`.
pub struct ModuleData {
    instance: Instance,
    space: ZariskiSpace,
    ag: OnceLock<Graph>,
    ag_star: OnceLock<Graph>,
    multiplication: OnceLock<bool>,
    primeful: OnceLock<bool>,
    semiprime: OnceLock<bool>,
    splittings: OnceLock<Result<Vec<Splitting>>>,
    v_chain: OnceLock<Option<Value>>,
    localized: Mutex<HashMap<Vec<u64>, Arc<Result<Localized>>>>,
}

impl ModuleData {
    /// `instance.t` and `instance.s` are ignored here.
    pub fn new(instance: &Instance) -> Result<ModuleData> {
        let m = instance.build_module()?;
        let space = ZariskiSpace::new(m, &instance.caps)?;
        Ok(ModuleData {
            instance: Instance {
                t: TSpec::Spec,
                s: None,
                ..instance.clone()
            },
            space,
            ag: OnceLock::new(),
            ag_star: OnceLock::new(),
            multiplication: OnceLock::new(),
            primeful: OnceLock::new(),
            semiprime: OnceLock::new(),
            splittings: OnceLock::new(),
            v_chain: OnceLock::new(),
            localized: Mutex::new(HashMap::new()),
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn space(&self) -> &ZariskiSpace {
        &self.space
    }

    pub fn module(&self) -> &FiniteModule {
        self.space.module()
    }

    pub fn ag(&self) -> &Graph {
        self.ag.get_or_init(|| build_ag(&self.space))
    }

    pub fn ag_star(&self) -> &Graph {
        self.ag_star.get_or_init(|| build_ag_star(&self.space))
    }

    pub fn is_multiplication(&self) -> bool {
        *self
            .multiplication
            .get_or_init(|| self.module().is_multiplication(self.space.lattice()))
    }

    pub fn is_primeful(&self) -> bool {
        *self.primeful.get_or_init(|| self.space.is_primeful())
    }

    pub fn is_semiprime(&self) -> bool {
        *self
            .semiprime
            .get_or_init(|| self.module().is_semiprime(self.space.lattice()))
    }

    /// `M = eM ⊕ (1-e)M` for every nontrivial idempotent `e` of `R`.
    pub fn splittings(&self) -> Result<&[Splitting]> {
        cached(&self.splittings, || {
            self.module()
                .ring()
                .nontrivial_idempotents()
                .iter()
                .map(|e| self.space.split(e))
                .collect()
        })
        .map(Vec::as_slice)
    }

    /// First pair `(N, K)` violating `V(N) ∪ V(K) = V(N∩K) = V(NK) = V*(NK)`.
    pub fn v_chain_violation(&self) -> Option<&Value> {
        self.v_chain.get_or_init(|| v_chain(&self.space)).as_ref()
    }

    /// `S⁻¹M` and its spectrum, shared by every `S` with the same idempotent.
    pub fn localized(&self, s: &[RingElem]) -> Arc<Result<Localized>> {
        let loc = match localize(self.module(), s) {
            Ok(l) => l,
            Err(e) => return Arc::new(Err(e)),
        };
        let key = loc.e.residues().to_vec();
        let mut map = self.localized.lock().expect("localization cache");
        map.entry(key)
            .or_insert_with(|| {
                Arc::new(
                    ZariskiSpace::new(loc.module.clone(), self.space.caps())
                        .map(|space| Localized { loc, space }),
                )
            })
            .clone()
    }
}

/// Every term of the chain is a function of `(N:M)` and `(K:M)`, since
/// `(N∩K : M) = (N:M) ∩ (K:M)`; one representative pair per pair of colon
/// classes covers the whole lattice.
fn v_chain(space: &ZariskiSpace) -> Option<Value> {
    let m = space.module();
    let l = space.lattice();
    let ring = m.ring();
    let k = space.class_count();
    let reps: Vec<usize> = (0..k).map(|c| space.class_representative(c)).collect();
    for a in 0..k {
        for b in a..k {
            let (i, j) = (reps[a], reps[b]);
            let union = space.class_v(a).union(space.class_v(b));
            let cap = space.index_of(&m.intersection(l.get(i), l.get(j)));
            let prod = ring.ideal_product(space.class_ideal(a), space.class_ideal(b));
            let nk = m.ideal_times(&prod, &m.whole());
            let v_nk = space.v_of(&nk);
            let v_star = space.v_star(&nk);
            if *space.v(cap) != union || *v_nk != union || v_star != union {
                return Some(json!({
                    "N": space.label(l.get(i)),
                    "K": space.label(l.get(j)),
                    "union": space.prime_set_label(&union),
                    "V(N∩K)": space.prime_set_label(space.v(cap)),
                    "V(NK)": space.prime_set_label(v_nk),
                    "V*(NK)": space.prime_set_label(&v_star),
                }));
            }
        }
    }
    None
}

/// One instance: a module with a fixed `T` (and optionally `S`).
pub struct Evaluation<'a> {
    data: &'a ModuleData,
    instance: Instance,
    t: PrimeSet,
    ctx: OnceLock<Result<TContext>>,
    g: OnceLock<Graph>,
    shape: OnceLock<Shape>,
    omega: OnceLock<usize>,
    chi: OnceLock<Result<usize>>,
    mbar_space: OnceLock<Result<ZariskiSpace>>,
    meet_space: OnceLock<Result<ZariskiSpace>>,
    decompositions: OnceLock<Result<Vec<Decomposition>>>,
    h0: OnceLock<Result<Option<usize>>>,
}

impl<'a> Evaluation<'a> {
    pub fn new(data: &'a ModuleData, instance: Instance) -> Result<Evaluation<'a>> {
        let t = instance.resolve_t(&data.space)?;
        Ok(Evaluation {
            data,
            instance,
            t,
            ctx: OnceLock::new(),
            g: OnceLock::new(),
            shape: OnceLock::new(),
            omega: OnceLock::new(),
            chi: OnceLock::new(),
            mbar_space: OnceLock::new(),
            meet_space: OnceLock::new(),
            decompositions: OnceLock::new(),
            h0: OnceLock::new(),
        })
    }

    pub fn data(&self) -> &ModuleData {
        self.data
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn describe(&self) -> String {
        self.instance.describe()
    }

    pub fn repro(&self, theorem: TheoremId) -> String {
        format!(
            "zariski verify --theorem {theorem} {}",
            self.instance.cli_args()
        )
    }

    pub fn space(&self) -> &ZariskiSpace {
        &self.data.space
    }

    pub fn module(&self) -> &FiniteModule {
        self.data.module()
    }

    pub fn t(&self) -> &PrimeSet {
        &self.t
    }

    pub fn is_spec(&self) -> bool {
        self.t.len() == self.space().spec_len()
    }

    pub fn ctx(&self) -> Result<&TContext> {
        cached(&self.ctx, || self.space().t_context(&self.t))
    }

    /// `G(τ_T)`.
    pub fn graph(&self) -> &Graph {
        self.g.get_or_init(|| build_g_tau(self.space(), &self.t))
    }

    pub fn shape(&self) -> &Shape {
        self.shape.get_or_init(|| graph::shape(self.graph()))
    }

    pub fn omega(&self) -> usize {
        *self
            .omega
            .get_or_init(|| graph::clique_number(self.graph()))
    }

    pub fn chi(&self) -> Result<usize> {
        cached(&self.chi, || {
            graph::chromatic_number(self.graph(), self.space().caps().max_chi_vertices)
        })
        .copied()
    }

    /// The space of `M̄ = M/Q`.
    pub fn mbar_space(&self) -> Result<&ZariskiSpace> {
        cached(&self.mbar_space, || {
            ZariskiSpace::new(self.ctx()?.quotient.clone(), self.space().caps())
        })
    }

    /// The space of `M/∩T`.
    pub fn meet_space(&self) -> Result<&ZariskiSpace> {
        cached(&self.meet_space, || {
            let meet = &self.ctx()?.meet;
            ZariskiSpace::new(self.module().quotient(meet), self.space().caps())
        })
    }

    /// One decomposition per entry of [`ModuleData::splittings`].
    pub fn decompositions(&self) -> Result<&[Decomposition]> {
        cached(&self.decompositions, || {
            self.data
                .splittings()?
                .iter()
                .map(|s| self.space().decompose(s, &self.t))
                .collect()
        })
        .map(Vec::as_slice)
    }

    /// A lattice index `N ⊋ Q`, `N ≠ ∩T`, with `V(N) = T`, if one exists.
    pub fn h0_violation(&self) -> Result<Option<usize>> {
        cached(&self.h0, || {
            let ctx = self.ctx()?;
            let l = self.space().lattice();
            Ok((0..l.len()).find(|&i| {
                let n = l.get(i);
                ctx.q.is_subset(n) && *n != ctx.q && *n != ctx.meet && *self.space().v(i) == self.t
            }))
        })
        .copied()
    }

    pub fn mbar_faithful(&self) -> Result<bool> {
        Ok(self.ctx()?.quotient.is_faithful())
    }

    pub fn ann_mbar_nil(&self) -> Result<bool> {
        let q = &self.ctx()?.quotient;
        Ok(q.ring().is_nil(&q.annihilator()))
    }

    /// `√0̄ = 0̄` in `M̄`, i.e. `√Q = Q` in `M`.
    pub fn mbar_reduced(&self) -> Result<bool> {
        let q = &self.ctx()?.q;
        Ok(self.space().radical(q) == *q)
    }

    pub fn min_t(&self) -> PrimeSet {
        self.space().min_members(&self.t)
    }

    pub fn label(&self, idx: usize) -> String {
        self.space().label(self.space().lattice().get(idx))
    }

    pub fn label_of(&self, n: &Submodule) -> String {
        self.space().label(n)
    }

    pub fn graph_json(&self) -> Value {
        let g = self.graph();
        json!({
            "vertices": g.labels(),
            "edges": g.edges().iter().map(|&(a, b)| [&g.labels()[a], &g.labels()[b]]).collect::<Vec<_>>(),
        })
    }
}
