//! Prime spectrum of a module and its Zariski topology.
//!
//! Closed sets are `V(N) = {P ∈ Spec(M) : (P:M) ⊇ (N:M)}`. Sets of primes
//! are [`PrimeSet`] bitsets over the canonical `Spec(M)` order (primes
//! sorted by element list), and `V(N)` is precomputed for every submodule.

use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::module::{enumerate_submodules, Caps, FiniteModule, Submodule, SubmoduleLattice};
use crate::ring::{Ideal, RingElem};

/// A set of primes, indexed by position in the canonical `Spec(M)` order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeSet(FixedBitSet);

impl PrimeSet {
    pub fn empty(spec_len: usize) -> PrimeSet {
        PrimeSet(FixedBitSet::with_capacity(spec_len))
    }

    pub fn full(spec_len: usize) -> PrimeSet {
        let mut b = FixedBitSet::with_capacity(spec_len);
        b.insert_range(..);
        PrimeSet(b)
    }

    pub fn from_positions(spec_len: usize, positions: &[usize]) -> Result<PrimeSet> {
        let mut b = FixedBitSet::with_capacity(spec_len);
        for &p in positions {
            if p >= spec_len {
                return Err(Error::PrimeIndex(p));
            }
            b.insert(p);
        }
        Ok(PrimeSet(b))
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.contains(pos)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        PrimeSet(b)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

/// `Spec(M)` with its full submodule lattice and V-table.
#[derive(Clone, Debug)]
pub struct ZariskiSpace {
    module: FiniteModule,
    lattice: Arc<SubmoduleLattice>,
    primes: Arc<Vec<usize>>,
    /// Submodules grouped by colon ideal; `V(N)` only depends on `(N:M)`.
    class: Arc<Vec<u32>>,
    class_ideals: Arc<Vec<Ideal>>,
    class_v: Arc<Vec<PrimeSet>>,
    labels: OnceLock<Vec<String>>,
    caps: Caps,
}

const RECENT_SPACES: usize = 6;

thread_local! {
    // Quotients by zero, split halves equal to M and similar copies
    // rebuild a module with identical tables; they share one lattice.
    static RECENT: RefCell<VecDeque<ZariskiSpace>> = const { RefCell::new(VecDeque::new()) };
}

/// A non-empty closed `T` together with `Q = (∩T : M)M` and `M̄ = M/Q`.
#[derive(Clone, Debug)]
pub struct TContext {
    pub t: PrimeSet,
    pub meet: Submodule,
    pub q: Submodule,
    pub quotient: FiniteModule,
}

/// `M = eM ⊕ (1-e)M` for a nontrivial idempotent `e`; independent of `T`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub e: RingElem,
    /// `eM` and `(1-e)M` as submodules of `M`.
    pub halves: [Submodule; 2],
    /// The same two pieces as modules in their own right.
    pub spaces: [ZariskiSpace; 2],
}

/// The objects `T_i`, `Q_i` and `M̄_i = M_i/Q_i` of a splitting relative to `T`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub e: RingElem,
    pub parts: [DecompositionPart; 2],
}

#[derive(Clone, Debug)]
pub struct DecompositionPart {
    /// Primes `P_i` of the piece with `P_i ⊕ (other piece)` in `T`.
    pub t: PrimeSet,
    pub q: Submodule,
    pub quotient: FiniteModule,
}

/// `rm ∈ P ⇒ r ∈ (P:M)` or `m ∈ P`, scanned over all pairs.
pub fn is_prime_submodule(m: &FiniteModule, p: &Submodule) -> bool {
    if p.len() == m.order() {
        return false;
    }
    let colon = m.colon(p);
    let ring = m.ring();
    // r and r + Ann(M) act alike and Ann(M) ⊆ (P:M)
    m.acting_elements()
        .into_iter()
        .filter(|r| !ring.ideal_contains(&colon, r))
        .all(|r| (0..m.order() as u32).all(|x| p.contains(x) || !p.contains(m.act(&r, x))))
}

impl ZariskiSpace {
    pub fn new(module: FiniteModule, caps: &Caps) -> Result<ZariskiSpace> {
        let hit = RECENT.with(|r| {
            r.borrow()
                .iter()
                .find(|s| s.module.same_action(&module))
                .map(|s| {
                    (
                        s.lattice.clone(),
                        s.primes.clone(),
                        s.class.clone(),
                        s.class_ideals.clone(),
                        s.class_v.clone(),
                    )
                })
        });
        if let Some((lattice, primes, class, class_ideals, class_v)) = hit {
            if module.order() <= caps.max_elements && lattice.len() <= caps.max_submodules {
                return Ok(ZariskiSpace {
                    module,
                    lattice,
                    primes,
                    class,
                    class_ideals,
                    class_v,
                    labels: OnceLock::new(),
                    caps: *caps,
                });
            }
        }
        let space = Self::build(module, caps)?;
        RECENT.with(|r| {
            let mut r = r.borrow_mut();
            if r.len() == RECENT_SPACES {
                r.pop_back();
            }
            r.push_front(space.clone());
        });
        Ok(space)
    }

    fn build(module: FiniteModule, caps: &Caps) -> Result<ZariskiSpace> {
        let lattice = enumerate_submodules(&module, caps)?;
        let primes: Vec<usize> = (0..lattice.len())
            .filter(|&i| is_prime_submodule(&module, lattice.get(i)))
            .collect();
        let prime_colons: Vec<Ideal> = primes
            .iter()
            .map(|&i| module.colon(lattice.get(i)))
            .collect();
        let mut by_colon: HashMap<Ideal, u32> = HashMap::new();
        let mut class_ideals = Vec::new();
        let class = lattice
            .iter()
            .map(|n| {
                let c = module.colon(n);
                *by_colon.entry(c.clone()).or_insert_with(|| {
                    class_ideals.push(c);
                    class_ideals.len() as u32 - 1
                })
            })
            .collect();
        let class_v = class_ideals
            .iter()
            .map(|c| {
                let mut b = FixedBitSet::with_capacity(primes.len());
                for (pos, pc) in prime_colons.iter().enumerate() {
                    if pc.contains(c) {
                        b.insert(pos);
                    }
                }
                PrimeSet(b)
            })
            .collect();
        Ok(ZariskiSpace {
            module,
            lattice: Arc::new(lattice),
            primes: Arc::new(primes),
            class: Arc::new(class),
            class_ideals: Arc::new(class_ideals),
            class_v: Arc::new(class_v),
            labels: OnceLock::new(),
            caps: *caps,
        })
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn lattice(&self) -> &SubmoduleLattice {
        &self.lattice
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn spec_len(&self) -> usize {
        self.primes.len()
    }

    /// Lattice indices of the primes, in canonical order.
    pub fn spec(&self) -> &[usize] {
        &self.primes
    }

    /// Position of `n` in `Spec(M)`, if it is prime.
    pub fn spec_position(&self, n: &Submodule) -> Option<usize> {
        self.primes.binary_search(&self.lattice.index_of(n)?).ok()
    }

    pub fn prime(&self, pos: usize) -> &Submodule {
        self.lattice.get(self.primes[pos])
    }

    pub fn whole_spec(&self) -> PrimeSet {
        PrimeSet::full(self.spec_len())
    }

    pub fn index_of(&self, n: &Submodule) -> usize {
        self.lattice
            .index_of(n)
            .expect("every submodule of M is in its lattice")
    }

    /// `V(N)` for the submodule at lattice index `idx`.
    pub fn v(&self, idx: usize) -> &PrimeSet {
        &self.class_v[self.class[idx] as usize]
    }

    /// Number of distinct colon ideals `(N:M)` over the lattice.
    pub fn class_count(&self) -> usize {
        self.class_ideals.len()
    }

    /// Colon class of the submodule at lattice index `idx`.
    pub fn colon_class(&self, idx: usize) -> usize {
        self.class[idx] as usize
    }

    pub fn class_ideal(&self, c: usize) -> &Ideal {
        &self.class_ideals[c]
    }

    /// `V` of any submodule in colon class `c`.
    pub fn class_v(&self, c: usize) -> &PrimeSet {
        &self.class_v[c]
    }

    /// First lattice index in colon class `c`.
    pub fn class_representative(&self, c: usize) -> usize {
        self.class
            .iter()
            .position(|&x| x as usize == c)
            .expect("classes are non-empty")
    }

    pub fn v_of(&self, n: &Submodule) -> &PrimeSet {
        self.v(self.index_of(n))
    }

    pub fn v_star(&self, n: &Submodule) -> PrimeSet {
        let mut b = FixedBitSet::with_capacity(self.spec_len());
        for pos in 0..self.spec_len() {
            if n.is_subset(self.prime(pos)) {
                b.insert(pos);
            }
        }
        PrimeSet(b)
    }

    /// Intersection of the primes in `t`; `M` when `t` is empty.
    pub fn meet(&self, t: &PrimeSet) -> Submodule {
        t.0.ones().fold(self.module.whole(), |acc, pos| {
            self.module.intersection(&acc, self.prime(pos))
        })
    }

    pub fn radical(&self, n: &Submodule) -> Submodule {
        self.meet(&self.v_star(n))
    }

    /// The distinct closed sets `V(N)`, sorted by their position lists.
    pub fn closed_sets(&self) -> Vec<PrimeSet> {
        let mut out: Vec<PrimeSet> = self.class_v.to_vec();
        out.sort_by_key(|s| s.positions());
        out.dedup();
        out
    }

    pub fn is_closed(&self, t: &PrimeSet) -> bool {
        *self.v_of(&self.meet(t)) == *t
    }

    /// No two closed proper subsets of `t` cover it.
    pub fn is_irreducible(&self, t: &PrimeSet) -> Result<bool> {
        if !self.is_closed(t) {
            return Err(Error::NotClosed);
        }
        if t.is_empty() {
            return Ok(false);
        }
        let inside: Vec<PrimeSet> = self
            .closed_sets()
            .into_iter()
            .filter(|c| c.is_subset(t) && c != t)
            .collect();
        for (i, a) in inside.iter().enumerate() {
            for b in &inside[i..] {
                if a.union(b) == *t {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Inclusion-minimal members of `t`.
    pub fn min_members(&self, t: &PrimeSet) -> PrimeSet {
        let mut b = FixedBitSet::with_capacity(self.spec_len());
        for p in t.0.ones() {
            let minimal =
                !t.0.ones()
                    .any(|q| q != p && self.prime(q).is_subset(self.prime(p)));
            if minimal {
                b.insert(p);
            }
        }
        PrimeSet(b)
    }

    /// `ψ(P) = (P:M)/Ann(M)` as an ideal of `R/Ann(M)`, for each prime.
    pub fn natural_map(&self) -> Vec<(usize, Ideal)> {
        let q = self.module.ring().quotient(&self.module.annihilator());
        (0..self.spec_len())
            .map(|pos| {
                let c = self.module.colon(self.prime(pos));
                let image = q
                    .project_ideal(&c)
                    .expect("Ann(M) is proper when Spec is non-empty");
                (pos, image)
            })
            .collect()
    }

    /// Every prime ideal of `R/Ann(M)` is some `(P:M)/Ann(M)`.
    pub fn is_primeful(&self) -> bool {
        if self.module.is_zero() {
            return true;
        }
        let ann = self.module.annihilator();
        let colons: Vec<Ideal> = (0..self.spec_len())
            .map(|pos| self.module.colon(self.prime(pos)))
            .collect();
        self.module
            .ring()
            .prime_ideals()
            .iter()
            .filter(|p| p.contains(&ann))
            .all(|p| colons.contains(p))
    }

    /// Distinct primes have distinct colon ideals.
    pub fn is_x_injective(&self) -> bool {
        let mut colons: Vec<Ideal> = (0..self.spec_len())
            .map(|pos| self.module.colon(self.prime(pos)))
            .collect();
        colons.sort();
        colons.windows(2).all(|w| w[0] != w[1])
    }

    pub fn t_context(&self, t: &PrimeSet) -> Result<TContext> {
        if self.spec_len() == 0 {
            return Err(Error::EmptySpectrum);
        }
        if t.is_empty() {
            return Err(Error::EmptyT);
        }
        if !self.is_closed(t) {
            return Err(Error::NotClosed);
        }
        let meet = self.meet(t);
        let q = self.module.colon_closure(&meet);
        if !q.is_subset(&meet) {
            return Err(Error::Invariant(
                "Q is not contained in the meet of T".into(),
            ));
        }
        let quotient = self.module.quotient(&q);
        Ok(TContext {
            t: t.clone(),
            meet,
            q,
            quotient,
        })
    }

    pub fn label(&self, n: &Submodule) -> String {
        match (self.labels.get(), self.lattice.index_of(n)) {
            (Some(all), Some(i)) => all[i].clone(),
            _ => self.module.submodule_label(n),
        }
    }

    /// Label of the submodule at lattice index `idx`.
    pub fn label_at(&self, idx: usize) -> &str {
        &self.labels.get_or_init(|| {
            self.lattice
                .iter()
                .map(|n| self.module.submodule_label(n))
                .collect()
        })[idx]
    }

    pub fn prime_set_label(&self, t: &PrimeSet) -> String {
        let parts: Vec<String> = t.0.ones().map(|p| self.label(self.prime(p))).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn split(&self, e: &RingElem) -> Result<Splitting> {
        let ring = self.module.ring();
        if !ring.is_idempotent(e) {
            return Err(Error::InvalidElement(format!("{e} is not idempotent")));
        }
        if *e == ring.zero() || *e == ring.one() {
            return Err(Error::TrivialIdempotent(e.to_string()));
        }
        let f = ring.sub(&ring.one(), e);
        let whole = self.module.whole();
        let halves = [self.module.scale(e, &whole), self.module.scale(&f, &whole)];
        let first = ZariskiSpace::new(self.module.submodule_as_module(&halves[0]), &self.caps)?;
        let second = ZariskiSpace::new(self.module.submodule_as_module(&halves[1]), &self.caps)?;
        Ok(Splitting {
            e: e.clone(),
            halves,
            spaces: [first, second],
        })
    }

    /// `T_i`, `Q_i`, `M̄_i` for a splitting; checks that every prime of `M`
    /// has the form `P_1 ⊕ M_2` or `M_1 ⊕ P_2` and that `Q = Q_1 ⊕ Q_2`.
    pub fn decompose(&self, split: &Splitting, t: &PrimeSet) -> Result<Decomposition> {
        let spaces = &split.spaces;
        let halves = &split.halves;
        let mut t_parts = [
            FixedBitSet::with_capacity(spaces[0].spec_len()),
            FixedBitSet::with_capacity(spaces[1].spec_len()),
        ];
        for pos in 0..self.spec_len() {
            let p = self.prime(pos);
            let mut placed = false;
            for side in 0..2 {
                if !halves[1 - side].is_subset(p) {
                    continue;
                }
                let piece = self.module.intersection(p, &halves[side]);
                let local = spaces[side].module.image_from_parent(&piece)?;
                let lpos = spaces[side]
                    .spec_position(&local)
                    .ok_or_else(|| Error::Invariant("prime of M does not split".into()))?;
                if t.contains(pos) {
                    t_parts[side].insert(lpos);
                }
                placed = true;
            }
            if !placed {
                return Err(Error::Invariant(
                    "prime of M contains neither summand".into(),
                ));
            }
        }
        let mut q_sum = self.module.zero_submodule();
        let mut parts = Vec::with_capacity(2);
        for (side, space) in spaces.iter().enumerate() {
            let ti = PrimeSet(t_parts[side].clone());
            let q = space.module.colon_closure(&space.meet(&ti));
            let lifted = space.module.lift_to_parent(&q, self.module.order())?;
            q_sum = self.module.sum(&q_sum, &lifted);
            let quotient = space.module.quotient(&q);
            parts.push(DecompositionPart { t: ti, q, quotient });
        }
        let q = self.module.colon_closure(&self.meet(t));
        if q != q_sum {
            return Err(Error::Invariant("Q differs from Q_1 ⊕ Q_2".into()));
        }
        let [a, b]: [DecompositionPart; 2] = parts.try_into().expect("two parts");
        Ok(Decomposition {
            e: split.e.clone(),
            parts: [a, b],
        })
    }

    /// `M_1 = eM`, `M_2 = (1-e)M` with the induced `T_i`, `Q_i` and `M̄_i`.
    pub fn decompose_by_idempotent(
        &self,
        t: &PrimeSet,
        e: &RingElem,
    ) -> Result<(Splitting, Decomposition)> {
        let split = self.split(e)?;
        let d = self.decompose(&split, t)?;
        Ok((split, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn space(moduli: Vec<u64>, blocks: Vec<Vec<u64>>) -> ZariskiSpace {
        let m =
            FiniteModule::direct_sum(Ring::new(moduli).unwrap(), blocks, &Caps::default()).unwrap();
        ZariskiSpace::new(m, &Caps::default()).unwrap()
    }

    fn cyclic_sub(s: &ZariskiSpace, g: u32) -> Submodule {
        s.module().span(&[g])
    }

    fn labels(s: &ZariskiSpace, t: &PrimeSet) -> Vec<String> {
        t.positions().iter().map(|&p| s.label(s.prime(p))).collect()
    }

    #[test]
    fn prime_test_examples() {
        let s = space(vec![12], vec![vec![12]]);
        assert!(is_prime_submodule(s.module(), &cyclic_sub(&s, 2)));
        assert!(!is_prime_submodule(s.module(), &cyclic_sub(&s, 4)));
        let v = space(vec![2], vec![vec![2, 2]]);
        assert!(is_prime_submodule(v.module(), &v.module().zero_submodule()));
    }

    #[test]
    fn spectrum_examples() {
        let s = space(vec![12], vec![vec![12]]);
        assert_eq!(labels(&s, &s.whole_spec()), ["<2>", "<3>"]);
        let s = space(vec![6], vec![vec![2, 3]]);
        assert_eq!(s.spec_len(), 2);
        let s = space(vec![4], vec![vec![4]]);
        assert_eq!(labels(&s, &s.whole_spec()), ["<2>"]);
        let s = space(vec![2], vec![vec![2, 2]]);
        assert_eq!(s.spec_len(), 4);
    }

    #[test]
    fn v_examples() {
        let s = space(vec![12], vec![vec![12]]);
        assert_eq!(labels(&s, s.v_of(&cyclic_sub(&s, 2))), ["<2>"]);
        assert_eq!(*s.v_of(&cyclic_sub(&s, 6)), s.whole_spec());
        assert!(s.v_of(&s.module().whole()).is_empty());
        assert_eq!(*s.v_of(&s.module().zero_submodule()), s.whole_spec());
        let v = space(vec![2], vec![vec![2, 2]]);
        let line = v.module().span(&[1]);
        assert_eq!(*v.v_of(&line), v.whole_spec());
    }

    #[test]
    fn radical_examples() {
        let s = space(vec![12], vec![vec![12]]);
        assert_eq!(s.radical(&s.module().zero_submodule()), cyclic_sub(&s, 6));
        assert_eq!(s.radical(&cyclic_sub(&s, 4)), cyclic_sub(&s, 2));
        let p = cyclic_sub(&s, 3);
        assert_eq!(s.radical(&p), p);
        assert_eq!(s.radical(&s.module().whole()), s.module().whole());
    }

    #[test]
    fn closedness_and_irreducibility() {
        let s = space(vec![12], vec![vec![12]]);
        let t = s.whole_spec();
        assert!(s.is_closed(&t));
        assert!(!s.is_irreducible(&t).unwrap());
        let s = space(vec![4], vec![vec![4]]);
        assert!(s.is_irreducible(&s.whole_spec()).unwrap());
        let v = space(vec![2], vec![vec![2, 2]]);
        assert!(v.is_irreducible(&v.whole_spec()).unwrap());
        assert_eq!(v.closed_sets().len(), 2);
        let one = PrimeSet::from_positions(4, &[1]).unwrap();
        assert!(!v.is_closed(&one));
        assert_eq!(v.is_irreducible(&one), Err(Error::NotClosed));
    }

    #[test]
    fn context_examples() {
        let s = space(vec![12], vec![vec![12]]);
        let ctx = s.t_context(&s.whole_spec()).unwrap();
        assert_eq!(ctx.q, cyclic_sub(&s, 6));
        assert_eq!(ctx.quotient.order(), 6);
        let s = space(vec![30], vec![vec![30]]);
        let t = s.whole_spec();
        let ctx = s.t_context(&t).unwrap();
        assert!(ctx.q.is_zero());
        assert_eq!(ctx.quotient.order(), 30);
        assert_eq!(s.min_members(&t), t);
        assert_eq!(s.min_members(&t).len(), 3);
        let single = PrimeSet::from_positions(3, &[1]).unwrap();
        assert_eq!(s.min_members(&single), single);
        assert_eq!(s.t_context(&PrimeSet::empty(3)).unwrap_err(), Error::EmptyT);
    }

    #[test]
    fn natural_map_properties() {
        let s = space(vec![12], vec![vec![12]]);
        assert!(s.is_primeful());
        assert!(s.is_x_injective());
        let v = space(vec![2], vec![vec![2, 2]]);
        assert!(v.is_primeful());
        assert!(!v.is_x_injective());
        let z2_over_z4 = space(vec![4], vec![vec![2]]);
        assert_eq!(z2_over_z4.natural_map().len(), 1);
    }

    #[test]
    fn decomposition_examples() {
        let s = space(vec![12], vec![vec![12]]);
        let r = s.module().ring().clone();
        let (sp, d) = s
            .decompose_by_idempotent(&s.whole_spec(), &r.from_int(4))
            .unwrap();
        assert_eq!(sp.spaces[0].module().order(), 3);
        assert_eq!(sp.spaces[1].module().order(), 4);
        assert_eq!(d.parts[0].t.len() + d.parts[1].t.len(), 2);
        let s6 = space(vec![6], vec![vec![6]]);
        let r6 = s6.module().ring().clone();
        let (sp, _) = s6
            .decompose_by_idempotent(&s6.whole_spec(), &r6.from_int(3))
            .unwrap();
        assert_eq!(sp.spaces[0].module().order(), 2);
        assert_eq!(sp.spaces[1].module().order(), 3);
        assert!(matches!(
            s.decompose_by_idempotent(&s.whole_spec(), &r.one()),
            Err(Error::TrivialIdempotent(_))
        ));
    }
}
