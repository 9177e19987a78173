use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::module::{Caps, FiniteModule};
use crate::ring::{Ring, RingElem};
use crate::spectra::{PrimeSet, ZariskiSpace};

/// How `T ⊆ Spec(M)` is selected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TSpec {
    Spec,
    /// `T = V(N)` for `N` generated by the elements with these coordinates.
    ClosedOf(Vec<Vec<u64>>),
    /// Positions in the canonical `Spec(M)` order; must form a closed set.
    Primes(Vec<usize>),
}

/// A ring, a module over it, a choice of `T` and optionally a
/// multiplicative set `S` for the localization checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub ring: Vec<u64>,
    pub blocks: Vec<Vec<u64>>,
    pub t: TSpec,
    pub s: Option<Vec<Vec<u64>>>,
    pub caps: Caps,
}

impl Instance {
    /// `R` as a module over itself with `T = Spec(R)`.
    pub fn regular(ring: Vec<u64>) -> Instance {
        let blocks = ring.iter().map(|&n| vec![n]).collect();
        Instance {
            ring,
            blocks,
            t: TSpec::Spec,
            s: None,
            caps: Caps::default(),
        }
    }

    pub fn with_t(mut self, t: TSpec) -> Instance {
        self.t = t;
        self
    }

    pub fn with_s(mut self, s: Vec<Vec<u64>>) -> Instance {
        self.s = Some(s);
        self
    }

    pub fn build_module(&self) -> Result<FiniteModule> {
        let ring = Ring::new(self.ring.clone())?;
        FiniteModule::direct_sum(ring, self.blocks.clone(), &self.caps)
    }

    pub fn resolve_t(&self, space: &ZariskiSpace) -> Result<PrimeSet> {
        match &self.t {
            TSpec::Spec => Ok(space.whole_spec()),
            TSpec::ClosedOf(gens) => {
                let m = space.module();
                let ids = gens
                    .iter()
                    .map(|c| {
                        m.element_by_coords(c)
                            .ok_or_else(|| Error::Schema(format!("{c:?} is not an element of M")))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok(space.v_of(&m.span(&ids)).clone())
            }
            TSpec::Primes(pos) => {
                let t = PrimeSet::from_positions(space.spec_len(), pos)?;
                if t.is_empty() {
                    return Err(Error::EmptyT);
                }
                if !space.is_closed(&t) {
                    return Err(Error::NotClosed);
                }
                Ok(t)
            }
        }
    }

    pub fn s_elements(&self, ring: &Ring) -> Result<Option<Vec<RingElem>>> {
        match &self.s {
            None => Ok(None),
            Some(s) => s
                .iter()
                .map(|r| ring.elem(r))
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }

    /// `M=Z_2+Z_3 over Z_6, T=spec`.
    pub fn describe(&self) -> String {
        let mut out = format!(
            "M={} over {}, T={}",
            module_name(&self.blocks),
            ring_name(&self.ring),
            self.t
        );
        if let Some(s) = &self.s {
            out.push_str(&format!(", S={}", join_elements(s)));
        }
        out
    }

    /// Inline flags that rebuild this instance on the command line.
    pub fn cli_args(&self) -> String {
        let mut out = format!(
            "--ring {} --module \"{}\" --T \"{}\"",
            join(&self.ring),
            join_blocks(&self.blocks),
            self.t
        );
        if let Some(s) = &self.s {
            out.push_str(&format!(" --S \"{}\"", join_elements(s)));
        }
        let d = Caps::default();
        if self.caps.max_elements != d.max_elements {
            out.push_str(&format!(" --max-elements {}", self.caps.max_elements));
        }
        if self.caps.max_submodules != d.max_submodules {
            out.push_str(&format!(" --max-submodules {}", self.caps.max_submodules));
        }
        if self.caps.max_chi_vertices != d.max_chi_vertices {
            out.push_str(&format!(
                " --max-chi-vertices {}",
                self.caps.max_chi_vertices
            ));
        }
        out
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn join_blocks(blocks: &[Vec<u64>]) -> String {
    blocks.iter().map(|b| join(b)).collect::<Vec<_>>().join(";")
}

fn join_elements(es: &[Vec<u64>]) -> String {
    es.iter().map(|e| join(e)).collect::<Vec<_>>().join(";")
}

fn ring_name(moduli: &[u64]) -> String {
    moduli
        .iter()
        .map(|n| format!("Z_{n}"))
        .collect::<Vec<_>>()
        .join("x")
}

fn module_name(blocks: &[Vec<u64>]) -> String {
    let parts: Vec<String> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.iter().map(move |d| {
                if blocks.len() > 1 {
                    format!("Z_{d}[{i}]")
                } else {
                    format!("Z_{d}")
                }
            })
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Spec => f.write_str("spec"),
            TSpec::ClosedOf(gens) => write!(f, "closed:{}", join_elements(gens)),
            TSpec::Primes(p) => {
                let p: Vec<String> = p.iter().map(usize::to_string).collect();
                write!(f, "primes:{}", p.join(","))
            }
        }
    }
}

impl FromStr for TSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<TSpec> {
        let s = s.trim();
        if s == "spec" {
            return Ok(TSpec::Spec);
        }
        if let Some(rest) = s.strip_prefix("primes:") {
            let pos = rest
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Schema(format!("bad prime index `{x}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(TSpec::Primes(pos));
        }
        if let Some(rest) = s.strip_prefix("closed:") {
            return Ok(TSpec::ClosedOf(parse_elements(rest)?));
        }
        Err(Error::Schema(format!(
            "T must be `spec`, `primes:i,j,..` or `closed:c,..;c,..`, got `{s}`"
        )))
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<u64>()
                .map_err(|_| Error::Schema(format!("bad integer `{x}`")))
        })
        .collect()
}

/// `"6,2"` → `[6, 2]`.
pub fn parse_ring(s: &str) -> Result<Vec<u64>> {
    let r = parse_list(s)?;
    if r.is_empty() {
        return Err(Error::Schema("ring needs at least one modulus".into()));
    }
    Ok(r)
}

/// `"2,4;3"` → one block per ring factor; a block may be empty.
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split(';').map(parse_list).collect()
}

/// `"1;5;25"` → elements given by their residues, separated by `;`.
pub fn parse_elements(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split(';')
        .map(|e| {
            let v = parse_list(e)?;
            if v.is_empty() {
                Err(Error::Schema("empty element".into()))
            } else {
                Ok(v)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_syntax() {
        assert_eq!(parse_ring("6, 2").unwrap(), [6, 2]);
        assert_eq!(parse_blocks("2,4;3").unwrap(), [vec![2, 4], vec![3]]);
        assert_eq!(parse_blocks("2;").unwrap(), [vec![2], vec![]]);
        assert_eq!(parse_elements("1;5;25").unwrap(), [[1], [5], [25]]);
        assert_eq!("spec".parse::<TSpec>().unwrap(), TSpec::Spec);
        assert_eq!(
            "primes:0,2".parse::<TSpec>().unwrap(),
            TSpec::Primes(vec![0, 2])
        );
        assert_eq!(
            "closed:1,0;0,2".parse::<TSpec>().unwrap(),
            TSpec::ClosedOf(vec![vec![1, 0], vec![0, 2]])
        );
        assert!("everything".parse::<TSpec>().is_err());
        assert!(parse_ring("x").is_err());
    }

    #[test]
    fn resolve_t_and_describe() {
        let inst = Instance::regular(vec![30]).with_t(TSpec::ClosedOf(vec![vec![6]]));
        let space = ZariskiSpace::new(inst.build_module().unwrap(), &inst.caps).unwrap();
        assert_eq!(inst.resolve_t(&space).unwrap().len(), 2);
        assert_eq!(inst.describe(), "M=Z_30 over Z_30, T=closed:6");
        assert_eq!(
            inst.cli_args(),
            "--ring 30 --module \"30\" --T \"closed:6\""
        );
        let bad = Instance::regular(vec![2]).with_t(TSpec::Primes(vec![]));
        let s2 = ZariskiSpace::new(bad.build_module().unwrap(), &bad.caps).unwrap();
        assert_eq!(bad.resolve_t(&s2), Err(Error::EmptyT));
        let v = Instance {
            blocks: vec![vec![2, 2]],
            ..Instance::regular(vec![2])
        }
        .with_t(TSpec::Primes(vec![1]));
        let sv = ZariskiSpace::new(v.build_module().unwrap(), &v.caps).unwrap();
        assert_eq!(v.resolve_t(&sv), Err(Error::NotClosed));
    }
}
