use super::{FiniteModule, SubmoduleLattice};

impl FiniteModule {
    pub fn is_faithful(&self) -> bool {
        self.annihilator() == self.ring().zero_ideal()
    }

    /// Exactly two submodules: every non-zero element generates `M`.
    pub fn is_simple(&self) -> bool {
        !self.is_zero() && (1..self.order() as u32).all(|m| self.span(&[m]).len() == self.order())
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order() as u32).any(|m| self.span(&[m]).len() == self.order())
    }

    /// `M ≠ 0` and `rm = 0` forces `r ∈ Ann(M)` or `m = 0`.
    pub fn is_prime_module(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let ann = self.annihilator();
        self.ring()
            .elements()
            .filter(|r| !self.ring().ideal_contains(&ann, r))
            .all(|r| (1..self.order() as u32).all(|m| self.act(&r, m) != 0))
    }

    /// For every ideal `I = (g)` and submodule `K`: `g²K = 0` implies `gK = 0`.
    pub fn is_semiprime(&self, lattice: &SubmoduleLattice) -> bool {
        let ring = self.ring();
        ring.all_ideals().iter().all(|i| {
            let g = ring.generator(i);
            let g2 = ring.mul(&g, &g);
            lattice.iter().all(|k| {
                let kills_sq = k.elements().iter().all(|&m| self.act(&g2, m) == 0);
                !kills_sq || k.elements().iter().all(|&m| self.act(&g, m) == 0)
            })
        })
    }

    /// `N = (N:M)M` for every submodule `N`.
    pub fn is_multiplication(&self, lattice: &SubmoduleLattice) -> bool {
        lattice.iter().all(|n| self.colon_closure(n) == *n)
    }
}

/// Length of a composition series, read off the lattice by climbing
/// through covers (the smallest strict over-submodule is always a cover).
pub fn composition_length(lattice: &SubmoduleLattice) -> usize {
    let mut current = lattice.get(lattice.zero_index());
    let mut length = 0;
    loop {
        let next = lattice
            .iter()
            .filter(|s| s.len() > current.len() && current.is_subset(s))
            .min_by_key(|s| s.len());
        match next {
            Some(s) => {
                current = s;
                length += 1;
            }
            None => return length,
        }
    }
}
