use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::{Caps, FiniteModule, Submodule};
use crate::error::{Error, Result};

/// Every submodule of a module, sorted by element list, with a lookup index.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    subs: Vec<Submodule>,
    index: HashMap<FixedBitSet, usize>,
    whole: usize,
}

/// Submodules of `M = ⊕ e_i M` are exactly the sums of subgroups of the
/// factor blocks `e_i M`, since `Z_{n_i}` acts on `e_i M` through integers.
pub fn enumerate_submodules(m: &FiniteModule, caps: &Caps) -> Result<SubmoduleLattice> {
    if m.order() > caps.max_elements {
        return Err(Error::CapExceeded {
            what: "module element",
            count: m.order(),
            cap: caps.max_elements,
        });
    }
    let n = m.order();
    let mut per_block: Vec<Vec<FixedBitSet>> = Vec::new();
    for i in 0..m.ring().components() {
        let block: Vec<u32> = (0..n as u32).filter(|&x| m.component(i, x) == x).collect();
        per_block.push(block_subgroups(m, &block, caps)?);
    }
    let total = per_block
        .iter()
        .fold(1usize, |acc, b| acc.saturating_mul(b.len()));
    if total > caps.max_submodules {
        return Err(Error::CapExceeded {
            what: "submodule",
            count: total,
            cap: caps.max_submodules,
        });
    }
    let mut masks: Vec<FixedBitSet> = {
        let mut zero = FixedBitSet::with_capacity(n);
        zero.insert(0);
        vec![zero]
    };
    for block in &per_block {
        let mut next = Vec::with_capacity(masks.len() * block.len());
        for acc in &masks {
            for h in block {
                let mut out = FixedBitSet::with_capacity(n);
                for a in acc.ones() {
                    for b in h.ones() {
                        out.insert(m.add(a as u32, b as u32) as usize);
                    }
                }
                next.push(out);
            }
        }
        masks = next;
    }
    let mut subs: Vec<Submodule> = masks.into_iter().map(Submodule::from_mask).collect();
    subs.sort();
    let index = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.mask().clone(), i))
        .collect();
    let whole = subs
        .iter()
        .position(|s| s.len() == n)
        .expect("M is a submodule");
    Ok(SubmoduleLattice { subs, index, whole })
}

fn block_subgroups(m: &FiniteModule, block: &[u32], caps: &Caps) -> Result<Vec<FixedBitSet>> {
    let mut zero = FixedBitSet::with_capacity(m.order());
    zero.insert(0);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = vec![zero];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        // H + <x> only depends on the coset x + H
        let mut tried = h.clone();
        for &x in block {
            if tried.contains(x as usize) {
                continue;
            }
            for a in h.ones() {
                tried.insert(m.add(x, a as u32) as usize);
            }
            let bigger = m.extend_subgroup(&h, x);
            if seen.insert(bigger.clone()) {
                if seen.len() > caps.max_submodules {
                    return Err(Error::CapExceeded {
                        what: "submodule",
                        count: seen.len(),
                        cap: caps.max_submodules,
                    });
                }
                queue.push(bigger);
            }
        }
    }
    Ok(queue)
}

impl SubmoduleLattice {
    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, i: usize) -> &Submodule {
        &self.subs[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Submodule> {
        self.subs.iter()
    }

    pub fn index_of(&self, n: &Submodule) -> Option<usize> {
        self.index.get(n.mask()).copied()
    }

    pub fn index_of_mask(&self, mask: &FixedBitSet) -> Option<usize> {
        self.index.get(mask).copied()
    }

    /// The zero submodule sorts first.
    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn whole_index(&self) -> usize {
        self.whole
    }

    pub fn as_slice(&self) -> &[Submodule] {
        &self.subs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn count(moduli: Vec<u64>, blocks: Vec<Vec<u64>>) -> usize {
        let m =
            FiniteModule::direct_sum(Ring::new(moduli).unwrap(), blocks, &Caps::default()).unwrap();
        enumerate_submodules(&m, &Caps::default()).unwrap().len()
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(count(vec![12], vec![vec![12]]), 6);
        assert_eq!(count(vec![2], vec![vec![2, 2]]), 5);
        assert_eq!(count(vec![6], vec![vec![2, 3]]), 4);
        assert_eq!(count(vec![30], vec![vec![30]]), 8);
        // Z_4 ⊕ Z_2 has 8 subgroups
        assert_eq!(count(vec![4], vec![vec![4, 2]]), 8);
        // over Z_2 x Z_2 the two factors cannot mix
        assert_eq!(count(vec![2, 2], vec![vec![2], vec![2]]), 4);
    }

    #[test]
    fn lattice_is_sorted_and_indexed() {
        let m = FiniteModule::regular(Ring::cyclic(12).unwrap(), &Caps::default()).unwrap();
        let l = enumerate_submodules(&m, &Caps::default()).unwrap();
        for w in l.as_slice().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, s) in l.iter().enumerate() {
            assert_eq!(l.index_of(s), Some(i));
        }
        assert!(l.get(l.zero_index()).is_zero());
        assert_eq!(l.get(l.whole_index()).len(), 12);
    }

    #[test]
    fn submodule_cap_is_reported() {
        let m =
            FiniteModule::direct_sum(Ring::cyclic(2).unwrap(), vec![vec![2; 6]], &Caps::default())
                .unwrap();
        let caps = Caps {
            max_submodules: 100,
            ..Caps::default()
        };
        assert!(enumerate_submodules(&m, &caps).unwrap_err().is_cap());
    }
}
