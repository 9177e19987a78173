use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{check, Evaluation, Instance, ModuleData, TSpec, TheoremId, TheoremReport};
use crate::error::{Error, Result};
use crate::module::Caps;
use crate::ring::divisors;

/// A generated family of modules; every closed `T` of each is visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `M = Z_n` over `Z_n` for `from ≤ n ≤ to`.
    Zn { from: u64, to: u64 },
    /// Every `R = Z_{n_1} x … x Z_{n_k}` (moduli non-increasing) with
    /// `|R| ≤ max`, and every direct sum of cyclic `Z_d`, `d | n_i`, placed
    /// over factor `i`, with `2 ≤ |M| ≤ max`.
    Products { max: u64 },
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let bad = || {
            Error::Schema(format!(
                "family must be `zn:A..B` or `products:max=N`, got `{s}`"
            ))
        };
        if let Some(rest) = s.strip_prefix("zn:") {
            let (a, b) = rest.split_once("..").ok_or_else(bad)?;
            let from: u64 = a.trim().parse().map_err(|_| bad())?;
            let to: u64 = b.trim().parse().map_err(|_| bad())?;
            if from < 2 || to < from {
                return Err(bad());
            }
            return Ok(Family::Zn { from, to });
        }
        if let Some(rest) = s.strip_prefix("products:max=") {
            let max: u64 = rest.trim().parse().map_err(|_| bad())?;
            if max < 2 {
                return Err(bad());
            }
            return Ok(Family::Products { max });
        }
        Err(bad())
    }
}

/// The modules of a family in enumeration order, each with `T = Spec(M)`.
pub fn family_modules(family: &Family, caps: &Caps) -> Vec<Instance> {
    let with_caps = |i: Instance| Instance { caps: *caps, ..i };
    match *family {
        Family::Zn { from, to } => (from..=to)
            .map(|n| with_caps(Instance::regular(vec![n])))
            .collect(),
        Family::Products { max } => {
            let mut out = Vec::new();
            for ring in rings(max, max, &[]) {
                let mut shapes = Vec::new();
                module_shapes(&ring, 0, 1, max, &mut Vec::new(), &mut shapes);
                for blocks in shapes {
                    out.push(with_caps(Instance {
                        ring: ring.clone(),
                        blocks,
                        t: TSpec::Spec,
                        s: None,
                        caps: *caps,
                    }));
                }
            }
            out
        }
    }
}

fn rings(budget: u64, largest: u64, prefix: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in (2..=largest.min(budget)).rev() {
        let mut r = prefix.to_vec();
        r.push(n);
        out.push(r.clone());
        out.extend(rings(budget / n, n, &r));
    }
    out
}

fn module_shapes(
    ring: &[u64],
    factor: usize,
    size: u64,
    max: u64,
    acc: &mut Vec<Vec<u64>>,
    out: &mut Vec<Vec<Vec<u64>>>,
) {
    if factor == ring.len() {
        if size >= 2 {
            out.push(acc.clone());
        }
        return;
    }
    let divs: Vec<u64> = divisors(ring[factor])
        .into_iter()
        .filter(|&d| d >= 2)
        .rev()
        .collect();
    let mut blocks = Vec::new();
    block_multisets(&divs, 0, max / size, &mut Vec::new(), &mut blocks);
    for (block, order) in blocks {
        acc.push(block);
        module_shapes(ring, factor + 1, size * order, max, acc, out);
        acc.pop();
    }
}

/// Non-increasing sequences over `divs[start..]` with product at most `budget`.
fn block_multisets(
    divs: &[u64],
    start: usize,
    budget: u64,
    acc: &mut Vec<u64>,
    out: &mut Vec<(Vec<u64>, u64)>,
) {
    out.push((acc.clone(), acc.iter().product()));
    for i in start..divs.len() {
        if divs[i] <= budget {
            acc.push(divs[i]);
            block_multisets(divs, i, budget / divs[i], acc, out);
            acc.pop();
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub theorems: Vec<TheoremId>,
    pub caps: Caps,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            theorems: TheoremId::ALL.to_vec(),
            caps: Caps::default(),
            jobs: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub modules: usize,
    pub instances: usize,
    pub reports: usize,
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SweepSummary {
    pub fn add(&mut self, r: &TheoremReport) {
        self.reports += 1;
        if r.skipped.is_some() {
            self.skipped += 1;
        } else if r.applicable {
            self.applicable += 1;
            if r.conclusion_holds == Some(true) {
                self.passed += 1;
            } else {
                self.failed += 1;
            }
        }
    }
}

/// Every theorem of `opts` on every closed `T` of every module in the
/// family. Reports reach `sink` in enumeration order regardless of `jobs`;
/// `inspect` sees each evaluation after its checks ran.
pub fn sweep(
    family: &Family,
    opts: &SweepOptions,
    sink: &mut dyn FnMut(&TheoremReport),
    inspect: Option<&(dyn Fn(&Evaluation<'_>) + Sync)>,
) -> Result<SweepSummary> {
    let modules = family_modules(family, &opts.caps);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Schema(format!("cannot start {} workers: {e}", opts.jobs)))?;
    let mut summary = SweepSummary {
        modules: modules.len(),
        ..SweepSummary::default()
    };
    let chunk = pool.current_num_threads().max(1) * 4;
    for batch in modules.chunks(chunk) {
        let results: Vec<(usize, Vec<TheoremReport>)> = pool.install(|| {
            batch
                .par_iter()
                .map(|inst| run_module(inst, opts, inspect))
                .collect()
        });
        for (instances, reports) in results {
            summary.instances += instances;
            for r in &reports {
                summary.add(r);
                sink(r);
            }
        }
    }
    Ok(summary)
}

fn run_module(
    inst: &Instance,
    opts: &SweepOptions,
    inspect: Option<&(dyn Fn(&Evaluation<'_>) + Sync)>,
) -> (usize, Vec<TheoremReport>) {
    let data = match ModuleData::new(inst) {
        Ok(d) => d,
        Err(e) => return (1, whole_module_failure(inst, opts, e)),
    };
    let space = data.space();
    let full = space.whole_spec();
    let mut ts = vec![TSpec::Spec];
    for t in space.closed_sets() {
        if !t.is_empty() && t != full {
            ts.push(TSpec::Primes(t.positions()));
        }
    }
    let mut reports = Vec::new();
    let count = ts.len();
    for t in ts {
        let is_spec = t == TSpec::Spec;
        let instance = inst.clone().with_t(t);
        let ev = match Evaluation::new(&data, instance.clone()) {
            Ok(ev) => ev,
            Err(e) => {
                reports.extend(failure_reports(&instance, opts, &e));
                continue;
            }
        };
        for &th in &opts.theorems {
            if th.is_module_level() && !is_spec {
                continue;
            }
            reports.push(check(th, &ev, opts.timing));
        }
        if let Some(f) = inspect {
            f(&ev);
        }
    }
    (count, reports)
}

fn whole_module_failure(inst: &Instance, opts: &SweepOptions, e: Error) -> Vec<TheoremReport> {
    failure_reports(inst, opts, &e)
}

/// Cap errors skip; anything else is a defect and counts as a failure.
fn failure_reports(inst: &Instance, opts: &SweepOptions, e: &Error) -> Vec<TheoremReport> {
    opts.theorems
        .iter()
        .map(|&th| {
            let mut r = TheoremReport::skipped(th, inst.describe(), e.to_string());
            if !e.is_cap() {
                r.skipped = None;
                r.applicable = true;
                r.conclusion_holds = Some(false);
                r.witness = Some(json!({ "error": e.to_string() }));
                r.repro = Some(format!("zariski verify --theorem {th} {}", inst.cli_args()));
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_syntax() {
        assert_eq!(
            "zn:2..60".parse::<Family>().unwrap(),
            Family::Zn { from: 2, to: 60 }
        );
        assert_eq!(
            "products:max=64".parse::<Family>().unwrap(),
            Family::Products { max: 64 }
        );
        assert!("zn:5..2".parse::<Family>().is_err());
        assert!("cubes".parse::<Family>().is_err());
    }

    #[test]
    fn products_family_is_small_and_ordered() {
        let caps = Caps::default();
        let f = family_modules(&Family::Products { max: 4 }, &caps);
        let shown: Vec<String> = f.iter().map(|i| i.describe()).collect();
        assert_eq!(
            shown,
            [
                "M=Z_4 over Z_4, T=spec",
                "M=Z_2 over Z_4, T=spec",
                "M=Z_2+Z_2 over Z_4, T=spec",
                "M=Z_3 over Z_3, T=spec",
                "M=Z_2 over Z_2, T=spec",
                "M=Z_2+Z_2 over Z_2, T=spec",
                "M=Z_2[1] over Z_2xZ_2, T=spec",
                "M=Z_2[1]+Z_2[1] over Z_2xZ_2, T=spec",
                "M=Z_2[0] over Z_2xZ_2, T=spec",
                "M=Z_2[0]+Z_2[1] over Z_2xZ_2, T=spec",
                "M=Z_2[0]+Z_2[0] over Z_2xZ_2, T=spec",
            ]
        );
    }

    #[test]
    fn cap_hits_are_skipped_not_dropped() {
        let opts = SweepOptions {
            caps: Caps {
                max_elements: 10,
                ..Caps::default()
            },
            theorems: vec![TheoremId::T4_4],
            ..SweepOptions::default()
        };
        let summary = sweep(&Family::Zn { from: 2, to: 14 }, &opts, &mut |_| {}, None).unwrap();
        assert_eq!(summary.skipped, 4);
        assert_eq!(summary.failed, 0);
        assert_eq!(summary.reports, summary.applicable + summary.skipped);
    }
}
