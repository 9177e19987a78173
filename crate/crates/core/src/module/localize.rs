use super::{FiniteModule, Submodule};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

/// `S⁻¹M` realized as `eM` over `eR`, where `e` is the idempotent of the
/// multiplicative closure of `S`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub e: RingElem,
    pub ring: Ring,
    /// `eM` over `eR`; its realization embeds it into the original module.
    pub module: FiniteModule,
}

pub fn localize(m: &FiniteModule, s: &[RingElem]) -> Result<Localization> {
    let ring = m.ring();
    let one = ring.one();
    let zero = ring.zero();
    if !s.contains(&one) {
        return Err(Error::InvalidMultiplicativeSet("S must contain 1".into()));
    }
    if s.contains(&zero) {
        return Err(Error::InvalidMultiplicativeSet(
            "S must not contain 0".into(),
        ));
    }
    for a in s {
        if a.residues().len() != ring.components() {
            return Err(Error::InvalidMultiplicativeSet(format!(
                "{a} is not an element of {ring}"
            )));
        }
        for b in s {
            if !s.contains(&ring.mul(a, b)) {
                return Err(Error::InvalidMultiplicativeSet(format!(
                    "{a}*{b} is missing from S"
                )));
            }
        }
    }
    let p = s.iter().fold(one, |acc, x| ring.mul(&acc, x));
    let mut e = p.clone();
    while !ring.is_idempotent(&e) {
        e = ring.mul(&e, &p);
    }
    let (corner, origin) = ring
        .corner_ring(&e)
        .ok_or_else(|| Error::Invariant("idempotent of S is zero".into()))?;
    let lifts: Vec<RingElem> = origin
        .iter()
        .map(|&(i, x)| {
            let mut r = vec![0; ring.components()];
            r[i] = x;
            ring.elem(&r).expect("component of an idempotent")
        })
        .collect();
    let em = m.scale(&e, &m.whole());
    let module = m
        .submodule_as_module(&em)
        .with_scalars(corner.clone(), &lifts)?;
    Ok(Localization {
        e,
        ring: corner,
        module,
    })
}

impl Localization {
    /// `N ↦ S⁻¹N = eN`, as a submodule of the localized module.
    pub fn map_submodule(&self, m: &FiniteModule, n: &Submodule) -> Submodule {
        let en = m.scale(&self.e, n);
        self.module
            .image_from_parent(&en)
            .expect("localized module is a submodule realization")
    }

    /// The localization as a map of carriers: `m ↦ em`.
    pub fn map_element(&self, m: &FiniteModule, x: u32) -> u32 {
        let ex = m.act(&self.e, x);
        match self.module.realization() {
            super::Realization::Sub { embedding } => {
                embedding.binary_search(&ex).expect("em lies in eM") as u32
            }
            _ => unreachable!("localized module is a submodule realization"),
        }
    }

    /// `eN` viewed back inside `M`.
    pub fn image_in_parent(&self, m: &FiniteModule, n: &Submodule) -> Submodule {
        m.scale(&self.e, n)
    }
}
