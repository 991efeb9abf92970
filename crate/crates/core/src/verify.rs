//! Cross-checks of the main algorithms against [`crate::oracle`] over the
//! builtin catalog and a seeded corpus of random posets.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{
    catalog::{self, CatalogName},
    is_p_subnormal, p_residual, prime_divisors, Caps,
};
use crate::loci::{inflation_locus, n_free_locus, EqSpectrum};
use crate::oracle;
use crate::space::{finite_localization_locus, is_clopen, FinitePoset, PosetSubset};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest catalog group order to include.
    pub max_order: usize,
    pub poset_count: usize,
    pub max_poset_points: usize,
    pub closed_sets_per_poset: usize,
    pub seed: u64,
    /// Flips one expected value so that the suite must fail.
    pub corrupt_fixture: bool,
    pub threads: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_order: 60,
            poset_count: 200,
            max_poset_points: 10,
            closed_sets_per_poset: 50,
            seed: 0x5eed,
            corrupt_fixture: false,
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: CheckResult) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub groups: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// One line per check, in a fixed order.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<4}  {:<28}  {:>7} cases  {:>4} failures",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                c.failures.len()
            );
            for f in c.failures.iter().take(5) {
                let _ = writeln!(out, "      {f}");
            }
        }
        out
    }
}

pub const RESIDUAL_ORACLE: &str = "p-residual vs intersection";
pub const SUBNORMAL_ORACLE: &str = "p-subnormal vs chain search";
pub const LOCALIZATION_ORACLE: &str = "localization vs closed sets";
pub const CLOPEN_CONSISTENCY: &str = "clopen consistency";
pub const INFLATION_WHOLE: &str = "inflation whole iff N = 1";
pub const N_FREE_INSIDE: &str = "N-free inside inflation";

pub fn run(config: &VerifyConfig) -> Result<Report> {
    let names = catalog::builtin_names(config.max_order);
    let per_group = run_groups(&names, config)?;
    let mut checks = vec![
        CheckResult::new(RESIDUAL_ORACLE),
        CheckResult::new(SUBNORMAL_ORACLE),
    ];
    let mut whole = CheckResult::new(INFLATION_WHOLE);
    let mut inside = CheckResult::new(N_FREE_INSIDE);
    for [a, b, c, d] in per_group {
        checks[0].merge(a);
        checks[1].merge(b);
        whole.merge(c);
        inside.merge(d);
    }
    if config.max_order >= 10 {
        inside.merge(d10_strictness()?);
    }
    let (loc, clopen) = run_posets(config);
    checks.extend([loc, clopen, whole, inside]);
    Ok(Report {
        checks,
        groups: names.len(),
    })
}

fn run_groups(names: &[String], config: &VerifyConfig) -> Result<Vec<[CheckResult; 4]>> {
    let threads = config.threads.max(1);
    let mut slots: Vec<Option<Result<[CheckResult; 4]>>> = vec![None; names.len()];
    let chunk = names.len().div_ceil(threads).max(1);
    thread::scope(|s| {
        for (names, out) in names.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            s.spawn(move || {
                for (name, slot) in names.iter().zip(out.iter_mut()) {
                    *slot = Some(check_group(name, config.corrupt_fixture));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot is filled"))
        .collect()
}

fn check_group(name: &str, corrupt: bool) -> Result<[CheckResult; 4]> {
    let group = CatalogName::parse(name)
        .expect("catalog names parse")
        .build(Caps::default())?;
    let spectrum = EqSpectrum::from_group(group, Caps::default())?;
    let lattice = spectrum.lattice();
    let g = lattice.group();
    let primes = prime_divisors(g.order());

    let mut residual = CheckResult::new(RESIDUAL_ORACLE);
    let mut subnormal = CheckResult::new(SUBNORMAL_ORACLE);
    for (i, class) in lattice.classes().iter().enumerate() {
        let h = class.representative();
        for &p in &primes {
            let fast = p_residual(g, h, p);
            let mut slow = oracle::p_residual_by_intersection(g, h, p);
            if corrupt && name == "D10" && i == lattice.whole_class() && p.get() == 2 {
                slow = h.elements().clone();
            }
            residual.record(fast.elements() == &slow, || {
                format!("{name}: class {i} at p={p}")
            });
            let fast = is_p_subnormal(g, h.elements(), p)?;
            let slow = oracle::p_subnormal_by_chain(g, h.elements(), p);
            subnormal.record(fast == slow, || {
                format!("{name}: class {i} at p={p}: containment {fast}, chain {slow}")
            });
        }
    }

    let mut whole = CheckResult::new(INFLATION_WHOLE);
    let mut inside = CheckResult::new(N_FREE_INSIDE);
    for n in lattice.normal_classes() {
        let infl = inflation_locus(&spectrum, n)?;
        let is_trivial = lattice.class(n).order() == 1;
        whole.record(infl.is_whole() == is_trivial, || {
            format!(
                "{name}: normal class {n} (order {})",
                lattice.class(n).order()
            )
        });
        let free = n_free_locus(&spectrum, n)?;
        inside.record(infl.contains_locus(&free)?, || {
            format!("{name}: normal class {n}")
        });
    }
    Ok([residual, subnormal, whole, inside])
}

// Strict inclusion for D10 at N = C5 and N = D10, and the exact N-free
// classes for N = C5.
fn d10_strictness() -> Result<CheckResult> {
    let mut out = CheckResult::new(N_FREE_INSIDE);
    let spectrum = EqSpectrum::from_group(catalog::group("D10")?, Caps::default())?;
    let lattice = spectrum.lattice();
    for order in [5, 10] {
        let n = lattice
            .normal_classes()
            .find(|&i| lattice.class(i).order() == order)
            .expect("D10 has normal subgroups of orders 5 and 10");
        let infl = inflation_locus(&spectrum, n)?;
        let free = n_free_locus(&spectrum, n)?;
        out.record(!free.contains_locus(&infl)?, || {
            format!("D10: N-free locus equals inflation locus for |N| = {order}")
        });
        if order == 5 {
            let orders: Vec<usize> = free
                .touched_classes()
                .into_iter()
                .map(|c| lattice.class(c).order())
                .collect();
            out.record(orders == [1, 2], || {
                format!("D10: N-free classes for C5 have orders {orders:?}")
            });
        }
    }
    Ok(out)
}

/// The seeded corpus of random posets used by the poset checks.
pub fn poset_corpus(config: &VerifyConfig) -> Vec<(FinitePoset, Vec<BTreeSet<usize>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.poset_count)
        .map(|_| {
            let n = rng.gen_range(1..=config.max_poset_points);
            let density = rng.gen_range(0.05..0.6);
            let poset = oracle::random_poset(&mut rng, n, density);
            let ys = oracle::sample_closed_subsets(&poset, &mut rng, config.closed_sets_per_poset);
            (poset, ys)
        })
        .collect()
}

fn run_posets(config: &VerifyConfig) -> (CheckResult, CheckResult) {
    let mut loc = CheckResult::new(LOCALIZATION_ORACLE);
    let mut clopen = CheckResult::new(CLOPEN_CONSISTENCY);
    for (k, (poset, ys)) in poset_corpus(config).iter().enumerate() {
        for y in ys {
            let subset =
                PosetSubset::closed(poset, y.iter().copied()).expect("sampled sets are closed");
            let v: BTreeSet<usize> = subset.complement(poset);
            let z = finite_localization_locus(poset, &subset).expect("closed input");
            let expected = oracle::union_of_closed_subsets_inside(poset, &v);
            loc.record(*z.members() == expected, || format!("poset {k}: Y = {y:?}"));
            let a = is_clopen(poset, &subset);
            let b = *z.members() == v;
            let c = oracle::is_union_of_components(poset, y);
            clopen.record(a == b && b == c, || {
                format!("poset {k}: Y = {y:?}: clopen {a}, locus = V {b}, components {c}")
            });
        }
    }
    (loc, clopen)
}
