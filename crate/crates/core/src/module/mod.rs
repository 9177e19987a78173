//! Finite unital modules over [`Ring`]s.
//!
//! A [`FiniteModule`] is an abstract finite abelian group (elements are
//! indices `0..order`, `0` is the zero) together with the projections onto
//! the ring factors. Since `r = sum_i r_i e_i` for the component idempotents
//! `e_i`, the scalar action is `r.m = sum_i r_i * (e_i m)` with `r_i` acting
//! as an integer multiple. Direct sums, quotients and submodules all expose
//! this same carrier interface.

mod lattice;
mod localize;
mod predicates;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{Ideal, Ring, RingElem};

pub use lattice::{enumerate_submodules, SubmoduleLattice};
pub use localize::{localize, Localization};
pub use predicates::composition_length;

/// Resource limits shared by every enumeration and exact solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub max_elements: usize,
    pub max_submodules: usize,
    pub max_chi_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 1024,
            max_submodules: 20000,
            max_chi_vertices: 40,
        }
    }
}

/// How the carrier of a module was obtained.
#[derive(Clone, Debug)]
pub enum Realization {
    /// Block `i` lists the cyclic orders `d_ij | n_i` of ring factor `i`.
    DirectSum { blocks: Vec<Vec<u64>> },
    /// Elements are cosets; `representatives[c]` is the least parent element
    /// of coset `c` and `projection[m]` the coset of parent element `m`.
    Quotient {
        projection: Vec<u32>,
        representatives: Vec<u32>,
    },
    /// Elements are the parent elements `embedding[i]`, in increasing order.
    Sub { embedding: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: Ring,
    add: Vec<u32>,
    neg: Vec<u32>,
    orders: Vec<u32>,
    proj: Vec<Vec<u32>>,
    coords: Vec<Vec<u64>>,
    realization: Realization,
    ann: OnceLock<Ideal>,
}

/// A submodule in canonical form: the sorted list of its elements.
#[derive(Clone)]
pub struct Submodule {
    elements: Vec<u32>,
    mask: FixedBitSet,
    colon: OnceLock<Ideal>,
}

impl FiniteModule {
    /// `⊕_i ⊕_j Z_{d_ij}` with block `i` living over ring factor `i`.
    pub fn direct_sum(ring: Ring, blocks: Vec<Vec<u64>>, caps: &Caps) -> Result<FiniteModule> {
        if blocks.len() != ring.components() {
            return Err(Error::InvalidModule(format!(
                "ring has {} factors but module lists {} blocks",
                ring.components(),
                blocks.len()
            )));
        }
        let mut orders = Vec::new();
        let mut owner = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            let n = ring.moduli()[i];
            for &d in block {
                if d < 2 || !n.is_multiple_of(d) {
                    return Err(Error::InvalidModule(format!(
                        "cyclic order {d} must be at least 2 and divide {n}"
                    )));
                }
                orders.push(d);
                owner.push(i);
            }
        }
        let mut size: usize = 1;
        for &d in &orders {
            size = size.saturating_mul(d as usize);
        }
        if size > caps.max_elements {
            return Err(Error::CapExceeded {
                what: "module element",
                count: size,
                cap: caps.max_elements,
            });
        }
        let coords: Vec<Vec<u64>> = (0..size).map(|idx| decode(idx, &orders)).collect();
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                let c: Vec<u64> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&orders)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                add[a * size + b] = encode(&c, &orders) as u32;
            }
        }
        let proj = (0..ring.components())
            .map(|i| {
                (0..size)
                    .map(|m| {
                        let c: Vec<u64> = coords[m]
                            .iter()
                            .zip(&owner)
                            .map(|(&x, &o)| if o == i { x } else { 0 })
                            .collect();
                        encode(&c, &orders) as u32
                    })
                    .collect()
            })
            .collect();
        FiniteModule::from_tables(ring, add, proj, coords, Realization::DirectSum { blocks })
    }

    /// `R` as a module over itself.
    pub fn regular(ring: Ring, caps: &Caps) -> Result<FiniteModule> {
        let blocks = ring.moduli().iter().map(|&n| vec![n]).collect();
        FiniteModule::direct_sum(ring, blocks, caps)
    }

    fn from_tables(
        ring: Ring,
        add: Vec<u32>,
        proj: Vec<Vec<u32>>,
        coords: Vec<Vec<u64>>,
        realization: Realization,
    ) -> Result<FiniteModule> {
        let n = coords.len();
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[a * n + b] == 0)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::InvalidModule("element without a negative".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let orders = (0..n)
            .map(|a| {
                let mut k = 1u32;
                let mut x = a as u32;
                while x != 0 {
                    x = add[x as usize * n + a];
                    k += 1;
                }
                k
            })
            .collect();
        let module = FiniteModule {
            ring,
            add,
            neg,
            orders,
            proj,
            coords,
            realization,
            ann: OnceLock::new(),
        };
        module.check_action()?;
        Ok(module)
    }

    /// Verifies that the factor projections form a complete family of
    /// orthogonal additive idempotents compatible with the factor moduli;
    /// this is equivalent to the action being a unital module structure.
    fn check_action(&self) -> Result<()> {
        let n = self.order();
        let k = self.proj.len();
        if n.saturating_mul(n).saturating_mul(k) > 1 << 26 {
            return Ok(());
        }
        for m in 0..n as u32 {
            let total = (0..k).fold(0, |acc, i| self.add(acc, self.proj[i][m as usize]));
            if total != m {
                return Err(Error::InvalidModule("1.m != m".into()));
            }
            for i in 0..k {
                let pm = self.proj[i][m as usize];
                for j in 0..k {
                    let pp = self.proj[j][pm as usize];
                    if (i == j && pp != pm) || (i != j && pp != 0) {
                        return Err(Error::InvalidModule(
                            "factor projections not orthogonal".into(),
                        ));
                    }
                }
                if self.int_mul(self.ring.moduli()[i], pm) != 0 {
                    return Err(Error::InvalidModule("n_i does not kill factor i".into()));
                }
            }
        }
        for i in 0..k {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    let lhs = self.proj[i][self.add(a, b) as usize];
                    let rhs = self.add(self.proj[i][a as usize], self.proj[i][b as usize]);
                    if lhs != rhs {
                        return Err(Error::InvalidModule("action is not additive".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.neg.len()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn additive_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn int_mul(&self, k: u64, a: u32) -> u32 {
        let mut k = k % self.orders[a as usize] as u64;
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn act(&self, r: &RingElem, m: u32) -> u32 {
        r.residues()
            .iter()
            .zip(&self.proj)
            .fold(0, |acc, (&ri, p)| {
                self.add(acc, self.int_mul(ri, p[m as usize]))
            })
    }

    /// `e_i m` for the `i`-th component idempotent.
    pub fn component(&self, i: usize, m: u32) -> u32 {
        self.proj[i][m as usize]
    }

    pub fn coords(&self, m: u32) -> &[u64] {
        &self.coords[m as usize]
    }

    pub fn element_label(&self, m: u32) -> String {
        label_of(&self.coords[m as usize])
    }

    pub fn element_by_coords(&self, c: &[u64]) -> Option<u32> {
        if let Realization::DirectSum { blocks } = &self.realization {
            let orders: Vec<u64> = blocks.iter().flatten().copied().collect();
            if c.len() != orders.len() || c.iter().zip(&orders).any(|(x, d)| x >= d) {
                return None;
            }
            return Some(encode(c, &orders) as u32);
        }
        self.coords.iter().position(|x| x == c).map(|i| i as u32)
    }

    // ---- submodule construction ----

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::from_sorted(vec![0], self.order())
    }

    pub fn whole(&self) -> Submodule {
        Submodule::from_sorted((0..self.order() as u32).collect(), self.order())
    }

    /// `H + <x>` for a subgroup `H`.
    pub(crate) fn extend_subgroup(&self, h: &FixedBitSet, x: u32) -> FixedBitSet {
        let mut out = h.clone();
        let mut frontier: Vec<u32> = h.ones().map(|i| i as u32).collect();
        let mut multiple = x;
        while !h.contains(multiple as usize) {
            for &a in &frontier {
                out.insert(self.add(a, multiple) as usize);
            }
            multiple = self.add(multiple, x);
        }
        frontier.clear();
        out
    }

    /// The submodule generated by `gens`.
    pub fn span(&self, gens: &[u32]) -> Submodule {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        for &g in gens {
            for p in &self.proj {
                let x = p[g as usize];
                if !mask.contains(x as usize) {
                    mask = self.extend_subgroup(&mask, x);
                }
            }
        }
        Submodule::from_mask(mask)
    }

    /// Accepts `elements` only if they already form a submodule.
    pub fn submodule(&self, elements: &[u32]) -> Result<Submodule> {
        let n = self.order();
        let mut mask = FixedBitSet::with_capacity(n);
        for &e in elements {
            if e as usize >= n {
                return Err(Error::NotASubmodule);
            }
            mask.insert(e as usize);
        }
        if !mask.contains(0) {
            return Err(Error::NotASubmodule);
        }
        for a in mask.ones() {
            for b in mask.ones() {
                if !mask.contains(self.add(a as u32, b as u32) as usize) {
                    return Err(Error::NotASubmodule);
                }
            }
            for p in &self.proj {
                if !mask.contains(p[a] as usize) {
                    return Err(Error::NotASubmodule);
                }
            }
        }
        Ok(Submodule::from_mask(mask))
    }

    pub fn intersection(&self, a: &Submodule, b: &Submodule) -> Submodule {
        let mut m = a.mask.clone();
        m.intersect_with(&b.mask);
        Submodule::from_mask(m)
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        let mut out = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            for y in b.elements() {
                out.insert(self.add(*x, *y) as usize);
            }
        }
        Submodule::from_mask(out)
    }

    /// `rN`.
    pub fn scale(&self, r: &RingElem, n: &Submodule) -> Submodule {
        let mut out = FixedBitSet::with_capacity(self.order());
        for &m in n.elements() {
            out.insert(self.act(r, m) as usize);
        }
        Submodule::from_mask(out)
    }

    /// `IN`; ideals are principal, so this is `gN` for the canonical generator.
    pub fn ideal_times(&self, ideal: &Ideal, n: &Submodule) -> Submodule {
        self.scale(&self.ring.generator(ideal), n)
    }

    /// `(N:M) = {r : rM ⊆ N}`, found factor by factor as the least divisor
    /// `d | n_i` with `d e_i M ⊆ N`.
    pub fn colon(&self, n: &Submodule) -> Ideal {
        n.colon
            .get_or_init(|| {
                let divs: Vec<u64> = self
                    .ring
                    .moduli()
                    .iter()
                    .enumerate()
                    .map(|(i, &ni)| {
                        crate::ring::divisors(ni)
                            .into_iter()
                            .find(|&d| {
                                (0..self.order()).all(|m| {
                                    let x = self.int_mul(d, self.proj[i][m]);
                                    n.contains(x)
                                })
                            })
                            .unwrap_or(ni)
                    })
                    .collect();
                self.ring
                    .ideal(&divs)
                    .expect("least divisors form a valid ideal")
            })
            .clone()
    }

    pub fn annihilator(&self) -> Ideal {
        self.ann
            .get_or_init(|| self.colon(&self.zero_submodule()))
            .clone()
    }

    /// Same ring, element numbering, addition and scalar action.
    pub fn same_action(&self, other: &FiniteModule) -> bool {
        self.ring == other.ring && self.add == other.add && self.proj == other.proj
    }

    /// One representative of each class of `R/Ann(M)`.
    pub fn acting_elements(&self) -> Vec<RingElem> {
        let ann = self.annihilator();
        let d = ann.divisors();
        let total: u64 = d.iter().product();
        (0..total)
            .map(|mut idx| {
                let mut res = vec![0; d.len()];
                for (slot, &di) in res.iter_mut().zip(d).rev() {
                    *slot = idx % di;
                    idx /= di;
                }
                self.ring
                    .elem(&res)
                    .expect("residues below a divisor are in range")
            })
            .collect()
    }

    /// `NK = (N:M)(K:M)M`, always relative to `self` as the ambient module.
    pub fn product(&self, n: &Submodule, k: &Submodule) -> Submodule {
        let ideal = self.ring.ideal_product(&self.colon(n), &self.colon(k));
        self.ideal_times(&ideal, &self.whole())
    }

    /// `(N:M)M`.
    pub fn colon_closure(&self, n: &Submodule) -> Submodule {
        self.ideal_times(&self.colon(n), &self.whole())
    }

    /// Canonical generators: scan elements in order, keeping each one that
    /// is not yet in the span of those kept so far.
    pub fn canonical_generators(&self, n: &Submodule) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.zero_submodule();
        for &m in n.elements() {
            if !span.contains(m) {
                gens.push(m);
                span = self.span(&gens);
            }
        }
        gens
    }

    pub fn submodule_label(&self, n: &Submodule) -> String {
        let gens = self.canonical_generators(n);
        if gens.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = gens.iter().map(|&g| self.element_label(g)).collect();
        format!("<{}>", parts.join(","))
    }

    // ---- derived modules ----

    /// `M/Q` with the least element of each coset as representative.
    pub fn quotient(&self, q: &Submodule) -> FiniteModule {
        let n = self.order();
        let mut projection = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        for m in 0..n as u32 {
            if projection[m as usize] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(m);
            for &x in q.elements() {
                projection[self.add(m, x) as usize] = c;
            }
        }
        let size = representatives.len();
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] =
                    projection[self.add(representatives[a], representatives[b]) as usize];
            }
        }
        let proj = self
            .proj
            .iter()
            .map(|p| {
                representatives
                    .iter()
                    .map(|&r| projection[p[r as usize] as usize])
                    .collect()
            })
            .collect();
        let coords = representatives
            .iter()
            .map(|&r| self.coords[r as usize].clone())
            .collect();
        FiniteModule::from_tables(
            self.ring.clone(),
            add,
            proj,
            coords,
            Realization::Quotient {
                projection,
                representatives,
            },
        )
        .expect("quotient of a valid module is a valid module")
    }

    /// `N` as a module in its own right.
    pub fn submodule_as_module(&self, n: &Submodule) -> FiniteModule {
        let embedding = n.elements.clone();
        let size = embedding.len();
        let mut index = vec![u32::MAX; self.order()];
        for (i, &m) in embedding.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = index[self.add(embedding[a], embedding[b]) as usize];
            }
        }
        let proj = self
            .proj
            .iter()
            .map(|p| {
                embedding
                    .iter()
                    .map(|&m| index[p[m as usize] as usize])
                    .collect()
            })
            .collect();
        let coords = embedding
            .iter()
            .map(|&m| self.coords[m as usize].clone())
            .collect();
        FiniteModule::from_tables(
            self.ring.clone(),
            add,
            proj,
            coords,
            Realization::Sub { embedding },
        )
        .expect("submodule of a valid module is a valid module")
    }

    /// Same carrier, scalars from `ring` acting through `lifts[j]`, the image
    /// in the old ring of the `j`-th component idempotent of `ring`.
    pub fn with_scalars(&self, ring: Ring, lifts: &[RingElem]) -> Result<FiniteModule> {
        if lifts.len() != ring.components() {
            return Err(Error::InvalidModule(
                "one lift per factor is required".into(),
            ));
        }
        let proj = lifts
            .iter()
            .map(|l| (0..self.order() as u32).map(|m| self.act(l, m)).collect())
            .collect();
        FiniteModule::from_tables(
            ring,
            self.add.clone(),
            proj,
            self.coords.clone(),
            self.realization.clone(),
        )
    }

    /// Image in `self = M/Q` of a submodule of the parent `M`.
    pub fn image_from_parent(&self, parent_sub: &Submodule) -> Result<Submodule> {
        match &self.realization {
            Realization::Quotient { projection, .. } => {
                let mut mask = FixedBitSet::with_capacity(self.order());
                for &m in parent_sub.elements() {
                    mask.insert(projection[m as usize] as usize);
                }
                Ok(Submodule::from_mask(mask))
            }
            Realization::Sub { embedding } => {
                let mut out = Vec::new();
                for (i, &m) in embedding.iter().enumerate() {
                    if parent_sub.contains(m) {
                        out.push(i as u32);
                    }
                }
                Ok(Submodule::from_sorted(out, self.order()))
            }
            Realization::DirectSum { .. } => Err(Error::InvalidModule(
                "a direct sum has no parent module".into(),
            )),
        }
    }

    /// Full preimage (quotient) or embedded copy (submodule) in the parent.
    pub fn lift_to_parent(&self, sub: &Submodule, parent_order: usize) -> Result<Submodule> {
        match &self.realization {
            Realization::Quotient { projection, .. } => {
                let els: Vec<u32> = (0..projection.len() as u32)
                    .filter(|&m| sub.contains(projection[m as usize]))
                    .collect();
                Ok(Submodule::from_sorted(els, parent_order))
            }
            Realization::Sub { embedding } => {
                let mut els: Vec<u32> = sub
                    .elements()
                    .iter()
                    .map(|&i| embedding[i as usize])
                    .collect();
                els.sort_unstable();
                Ok(Submodule::from_sorted(els, parent_order))
            }
            Realization::DirectSum { .. } => Err(Error::InvalidModule(
                "a direct sum has no parent module".into(),
            )),
        }
    }
}

impl Submodule {
    pub(crate) fn from_mask(mask: FixedBitSet) -> Submodule {
        let elements = mask.ones().map(|i| i as u32).collect();
        Submodule {
            elements,
            mask,
            colon: OnceLock::new(),
        }
    }

    pub(crate) fn from_sorted(elements: Vec<u32>, universe: usize) -> Submodule {
        let mut mask = FixedBitSet::with_capacity(universe);
        for &e in &elements {
            mask.insert(e as usize);
        }
        Submodule {
            elements,
            mask,
            colon: OnceLock::new(),
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    /// Number of elements; never zero since `0 ∈ N`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, m: u32) -> bool {
        self.mask.contains(m as usize)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.mask.is_subset(&other.mask)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

fn decode(mut idx: usize, orders: &[u64]) -> Vec<u64> {
    let mut c = vec![0; orders.len()];
    for (slot, &d) in c.iter_mut().zip(orders).rev() {
        *slot = idx as u64 % d;
        idx /= d as usize;
    }
    c
}

fn encode(c: &[u64], orders: &[u64]) -> usize {
    c.iter()
        .zip(orders)
        .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
}

pub(crate) fn label_of(c: &[u64]) -> String {
    if c.len() == 1 {
        return c[0].to_string();
    }
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
