//! Invariant suites run by `khoma verify`. Each suite yields a list of named
//! checks in a fixed order; randomised inputs come from a seeded generator.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{bracket_reduced, bracket_skein_oracle, bracket_unreduced};
use crate::diagram::{braid_closure, torus_2n, unknot_framed, Diagram, KinkSign, KinkSite};
use crate::error::{Error, Result};
use crate::homology::{homology_table, verify_r1_shift};
use crate::khovanov::KhovanovComplex;
use crate::torus::{closed_form_t2n, closed_form_unknot_framed, les_triple, LesTables};

pub const DEFAULT_SEED: u64 = 0x6b_686f_6d61;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    D2,
    Euler,
    R1,
    Les,
    ClosedForm,
    Skein,
    Order,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::D2, Suite::Euler, Suite::R1, Suite::Les, Suite::ClosedForm, Suite::Skein, Suite::Order];

    pub fn name(self) -> &'static str {
        match self {
            Suite::D2 => "d2",
            Suite::Euler => "euler",
            Suite::R1 => "r1",
            Suite::Les => "les",
            Suite::ClosedForm => "closedform",
            Suite::Skein => "skein",
            Suite::Order => "order",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One-line machine-readable summary.
    pub fn summary_json(&self) -> String {
        let failed = self.failures().count();
        serde_json::json!({
            "suite": self.suite.name(),
            "checks": self.checks.len(),
            "passed": self.checks.len() - failed,
            "failed": failed,
            "ok": failed == 0,
        })
        .to_string()
    }
}

/// Named diagrams used by several suites: small knots and links, and pairs
/// of different diagrams of the same framed link.
pub fn corpus() -> Vec<(String, Diagram)> {
    let braid = |s, w: &[i32]| braid_closure(s, w).expect("valid braid word");
    let mut out = vec![
        ("unknot".to_string(), Diagram::unknot()),
        ("unlink-2".to_string(), Diagram::unlink(2)),
        ("trefoil".to_string(), Diagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").expect("valid")),
        ("figure-eight".to_string(), braid(3, &[1, -2, 1, -2])),
        ("framed-unknot+2".to_string(), unknot_framed(2)),
        ("framed-unknot-2".to_string(), unknot_framed(-2)),
        ("T(3,3)".to_string(), braid(3, &[1, 2, 1, 2, 1, 2])),
        ("T(3,4)".to_string(), braid(3, &[1, 2, 1, 2, 1, 2, 1, 2])),
        ("three-chain".to_string(), braid(3, &[1, 1, -2, -2])),
    ];
    out.extend((1..=6).map(|n| (format!("T(2,{n})"), torus_2n(n).expect("n > 0"))));
    for (name, a, b) in equivalent_pairs() {
        out.push((format!("{name} (a)"), a));
        out.push((format!("{name} (b)"), b));
    }
    out
}

/// Pairs of diagrams related by Reidemeister II/III moves, which must have
/// identical homology.
pub fn equivalent_pairs() -> Vec<(String, Diagram, Diagram)> {
    let braid = |s, w: &[i32]| braid_closure(s, w).expect("valid braid word");
    vec![
        ("trefoil R2".into(), braid(2, &[1, 1, 1]), braid(2, &[1, 1, 1, 1, -1])),
        ("trefoil R2'".into(), braid(2, &[1, 1, 1]), braid(2, &[1, -1, 1, 1, 1])),
        ("hopf R2".into(), braid(2, &[1, 1]), braid(2, &[1, 1, -1, 1])),
        ("R3".into(), braid(3, &[1, 2, 1, 2]), braid(3, &[2, 1, 2, 2])),
        ("figure-eight R3".into(), braid(3, &[1, -2, 1, -2]), braid(3, &[-2, 1, -2, 1])),
    ]
}

/// A random planar diagram with at most `max_crossings` crossings: the
/// closure of a random braid, possibly with kinks, crossings shuffled.
pub fn random_diagram(rng: &mut impl Rng, max_crossings: usize) -> Diagram {
    let strands = rng.gen_range(2..=4usize);
    let kinks = if max_crossings > 1 { rng.gen_range(0..=1usize) } else { 0 };
    let letters = rng.gen_range(1..=max_crossings - kinks);
    let word: Vec<i32> = (0..letters)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    let mut d = braid_closure(strands, &word).expect("generators are in range");
    for _ in 0..kinks {
        let sites = KinkSite::all(&d);
        let site = *sites.choose(rng).expect("a braid closure has sites");
        let sign = if rng.gen_bool(0.5) { KinkSign::Positive } else { KinkSign::Negative };
        d = d.add_r1_kink(site, sign).expect("site exists");
    }
    let mut order: Vec<usize> = (0..d.crossing_count()).collect();
    order.shuffle(rng);
    d.permute_crossings(&order).expect("a permutation")
}

fn random_diagrams(seed: u64, count: usize, max_crossings: usize) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_diagram(&mut rng, max_crossings)).collect()
}

pub fn run_suite(suite: Suite, max_n: u32, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::D2 => d2_suite(max_n, seed),
        Suite::Euler => euler_suite(max_n, seed),
        Suite::R1 => r1_suite(),
        Suite::Les => les_suite(max_n),
        Suite::ClosedForm => closed_form_suite(max_n),
        Suite::Skein => skein_suite(max_n, seed),
        Suite::Order => order_suite(seed),
    };
    Ok(SuiteReport { suite, checks })
}

fn torus_family(from: u32, max_n: u32) -> Vec<(String, Diagram)> {
    (from.max(1)..=max_n).map(|n| (format!("T(2,{n})"), torus_2n(n).expect("n > 0"))).collect()
}

fn labelled_random(seed: u64, count: usize, max_crossings: usize) -> Vec<(String, Diagram)> {
    random_diagrams(seed, count, max_crossings)
        .into_iter()
        .enumerate()
        .map(|(i, d)| (format!("random #{i} {d}"), d))
        .collect()
}

/// `∂∘∂ = 0` along every fixed-`b` complex.
pub fn d_squared_zero(d: &Diagram) -> Result<(bool, String)> {
    let complex = KhovanovComplex::new(d)?;
    let mut products = 0;
    for b in complex.b_values() {
        let chain = complex.chain(b)?;
        for w in chain.windows(2) {
            products += 1;
            if !w[1].matrix.mul(&w[0].matrix)?.is_zero() {
                return Ok((false, format!("nonzero at source {}", w[0].source)));
            }
        }
    }
    Ok((true, format!("{products} compositions")))
}

fn d2_suite(max_n: u32, seed: u64) -> Vec<Check> {
    let mut inputs = torus_family(1, max_n);
    inputs.extend(labelled_random(seed, 100, 7));
    inputs.into_par_iter().map(|(name, d)| Check::from_result(name, d_squared_zero(&d))).collect()
}

fn euler_suite(max_n: u32, seed: u64) -> Vec<Check> {
    let mut inputs = torus_family(1, max_n);
    inputs.extend(corpus().into_iter().filter(|(_, d)| d.crossing_count() <= 8));
    inputs.extend(labelled_random(seed ^ 1, 50, 7));
    inputs
        .into_par_iter()
        .map(|(name, d)| {
            let r = (|| {
                let chi = homology_table(&d)?.euler_characteristic();
                let bracket = bracket_unreduced(&d)?;
                Ok((chi == bracket, format!("{chi}")))
            })();
            Check::from_result(name, r)
        })
        .collect()
}

fn r1_suite() -> Vec<Check> {
    let bases = [
        ("unknot", Diagram::unknot()),
        ("hopf", torus_2n(2).expect("n > 0")),
        ("trefoil", Diagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").expect("valid")),
    ];
    let inputs: Vec<_> = bases
        .iter()
        .flat_map(|(name, d)| [KinkSign::Positive, KinkSign::Negative].map(|s| (*name, d, s)))
        .collect();
    inputs
        .into_par_iter()
        .map(|(name, d, sign)| {
            let r = verify_r1_shift(d, sign).map(|rep| {
                let detail = if rep.passed() {
                    format!("{} sites", rep.sites_checked)
                } else {
                    let sites: Vec<String> = rep.mismatches.iter().map(ToString::to_string).collect();
                    format!("mismatch at {}", sites.join(", "))
                };
                (rep.passed(), detail)
            });
            Check::from_result(format!("{name} kink {sign}"), r)
        })
        .collect()
}

fn les_suite(max_n: u32) -> Vec<Check> {
    let inputs: Vec<(u32, usize)> = (2..=max_n).flat_map(|n| (0..n as usize).map(move |v| (n, v))).collect();
    inputs
        .into_par_iter()
        .map(|(n, v)| {
            let r = (|| {
                let tables = LesTables::compute(&les_triple(&torus_2n(n)?, v)?)?;
                let sums = tables.rank_sums();
                let (checked, bad) = tables.corollary_mismatches();
                let passed = sums.is_empty() && bad.is_empty();
                let detail = if passed {
                    format!("rank sums zero, {checked} corollary bigrades")
                } else {
                    format!("rank sums {sums:?}, corollary mismatches {bad:?}")
                };
                Ok((passed, detail))
            })();
            Check::from_result(format!("T(2,{n}) crossing {v}"), r)
        })
        .collect()
}

fn closed_form_suite(max_n: u32) -> Vec<Check> {
    let mut checks: Vec<Check> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let r = (|| {
                let computed = homology_table(&torus_2n(n)?)?;
                Ok((computed == closed_form_t2n(n)?, format!("{} entries", computed.len())))
            })();
            Check::from_result(format!("T(2,{n})"), r)
        })
        .collect();
    checks.extend((-6..=6i64).into_par_iter().map(|f| {
        let r = homology_table(&unknot_framed(f)).map(|t| (t == closed_form_unknot_framed(f), String::new()));
        Check::from_result(format!("framed unknot {f}"), r)
    }).collect::<Vec<_>>());
    checks
}

fn skein_suite(max_n: u32, seed: u64) -> Vec<Check> {
    let mut inputs = torus_family(1, max_n.min(8));
    inputs.extend(corpus().into_iter().filter(|(_, d)| d.crossing_count() <= 8 && !d.is_empty()));
    let need = 200usize.saturating_sub(inputs.len());
    inputs.extend(labelled_random(seed ^ 2, need, 8));
    inputs
        .into_par_iter()
        .map(|(name, d)| {
            let r = (|| {
                let oracle = bracket_skein_oracle(&d)?;
                Ok((oracle == bracket_reduced(&d)?, format!("{oracle}")))
            })();
            Check::from_result(name, r)
        })
        .collect()
}

fn order_suite(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
    let mut jobs: Vec<(String, Diagram, Vec<Vec<usize>>)> = Vec::new();
    for (name, d) in corpus().into_iter().filter(|(_, d)| d.crossing_count() <= 6) {
        let perms = (0..5)
            .map(|_| {
                let mut p: Vec<usize> = (0..d.crossing_count()).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        jobs.push((name, d, perms));
    }
    let mut checks: Vec<Check> = jobs
        .into_par_iter()
        .map(|(name, d, perms)| {
            let r = (|| {
                let base = homology_table(&d)?;
                for p in &perms {
                    if homology_table(&d.permute_crossings(p)?)? != base {
                        return Ok((false, format!("differs under order {p:?}")));
                    }
                }
                Ok((true, format!("{} permutations", perms.len())))
            })();
            Check::from_result(format!("{name} reordered"), r)
        })
        .collect();
    checks.extend(equivalent_pairs().into_par_iter().map(|(name, a, b)| {
        let r = (|| Ok((homology_table(&a)? == homology_table(&b)?, String::new())))();
        Check::from_result(name, r)
    }).collect::<Vec<_>>());
    checks
}
