//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the lines appear in
//! `cargo test` output. Set `UPDATE_GOLDENS=1` to rewrite the figure files
//! under `tests/golden`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use locus_core::group::{
    catalog, p_residual, prime_divisors, Caps, PermGroup, Prime, SubgroupLattice,
};
use locus_core::loci::{
    geometric_fixed_criterion, geometric_fixed_locus, inflation_criterion, inflation_locus,
    n_free_locus, orbit_support, EqLocus, EqSpectrum, LocusDocument, LocusKind, PrimeTag,
};
use locus_core::render::{render_eq_locus, render_poset, Format};
use locus_core::space::{
    finite_localization_locus, sh_localization_locus, ChromaticPoint, ChromaticSpace,
    ChromaticSubset, FinitePoset, Flavor, Height, PosetSubset,
};
use locus_core::verify::{self, VerifyConfig};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn spectrum(name: &str) -> Arc<EqSpectrum> {
    EqSpectrum::from_group(catalog::group(name).unwrap(), Caps::default()).unwrap()
}

fn spectrum_with(name: &str, extra: &[u64]) -> Arc<EqSpectrum> {
    let lattice =
        SubgroupLattice::new(Arc::new(catalog::group(name).unwrap()), Caps::default()).unwrap();
    Arc::new(EqSpectrum::with_extra_primes(
        Arc::new(lattice),
        extra.iter().map(|&q| p(q)),
    ))
}

fn class_of_order(s: &EqSpectrum, order: usize) -> usize {
    s.lattice()
        .normal_classes()
        .find(|&i| s.lattice().class(i).order() == order)
        .expect("normal class of that order")
}

// 1. Inflation for G = N = C_p.
fn inflation_of_cyclic_primes() -> Outcome {
    for q in [2, 3, 5, 7] {
        let s = spectrum_with(&format!("C{q}"), &[2, 3, 5, 7]);
        let z = inflation_locus(&s, s.lattice().whole_class()).map_err(|e| e.to_string())?;
        ensure(z.includes_height_one(0), || format!("C{q}: P(1,1) missing"))?;
        ensure(!z.includes_height_one(1), || {
            format!("C{q}: P(C{q},1) present")
        })?;
        for tag in s.tags() {
            ensure(z.column(0, *tag), || {
                format!("C{q}: H = 1 column {tag} missing")
            })?;
            let expected = *tag != PrimeTag::Prime(p(q));
            ensure(z.column(1, *tag) == expected, || {
                format!("C{q}: H = C{q} column {tag} should be {expected}")
            })?;
        }
    }
    Ok("C2, C3, C5, C7 against columns 2, 3, 5, 7, generic".into())
}

// 2. p-localization of SH.
fn example_p_localization() -> Outcome {
    let space = ChromaticSpace::new([p(2), p(3), p(5)]);
    for q in [2, 3, 5] {
        let y = ChromaticSubset::away_from(p(q));
        let z = sh_localization_locus(&space, &y).map_err(|e| e.to_string())?;
        ensure(!z.contains(ChromaticPoint::Generic), || {
            format!("p = {q}: generic point included")
        })?;
        for r in [2, 3, 5, 7, 11, 13] {
            for n in (2..=40).map(Height::Finite).chain([Height::Infinite]) {
                let inside = z.contains(ChromaticPoint::At(p(r), n));
                ensure(inside == (r == q), || {
                    format!("p = {q}: C_({r},{n}) membership {inside}")
                })?;
            }
        }
    }
    Ok("p in {2, 3, 5}".into())
}

// 3. Inflation is everything exactly for the trivial normal subgroup.
fn inflation_whole() -> Outcome {
    let names = catalog::builtin_names(60);
    let mut pairs = 0;
    for name in &names {
        let s = spectrum(name);
        for n in s.lattice().normal_classes() {
            let z = inflation_locus(&s, n).map_err(|e| e.to_string())?;
            let trivial = s.lattice().class(n).order() == 1;
            ensure(z.is_whole() == trivial, || {
                format!(
                    "{name}: normal class {n} of order {}",
                    s.lattice().class(n).order()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} groups, {pairs} normal subgroups", names.len()))
}

// 4. N-free loci for D10.
fn d10_n_free() -> Outcome {
    let s = spectrum("D10");
    for order in [5, 10] {
        let n = class_of_order(&s, order);
        let infl = inflation_locus(&s, n).map_err(|e| e.to_string())?;
        let free = n_free_locus(&s, n).map_err(|e| e.to_string())?;
        ensure(infl.contains_locus(&free).unwrap(), || {
            format!("|N| = {order}: not contained")
        })?;
        ensure(!free.contains_locus(&infl).unwrap(), || {
            format!("|N| = {order}: not strict")
        })?;
        if order == 5 {
            let expected = orbit_support(&s, 0).union(&orbit_support(&s, 1)).unwrap();
            ensure(free == expected, || {
                "N = C5: locus is not supp(G_+) ∪ supp(G/C2_+)".into()
            })?;
            let orders: Vec<usize> = free
                .touched_classes()
                .into_iter()
                .map(|c| s.lattice().class(c).order())
                .collect();
            ensure(orders == [1, 2], || {
                format!("N = C5: classes of orders {orders:?}")
            })?;
        }
    }
    Ok("N = C5 gives classes {1, C2}".into())
}

fn verify_checks(config: &VerifyConfig, names: &[&str]) -> Outcome {
    let report = verify::run(config).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for name in names {
        let c = report
            .checks
            .iter()
            .find(|c| c.name == *name)
            .ok_or_else(|| format!("no check named {name}"))?;
        ensure(c.passed(), || format!("{name}: {}", c.failures.join("; ")))?;
        ensure(c.cases > 0, || format!("{name}: no cases"))?;
        parts.push(format!("{name}: {} cases", c.cases));
    }
    Ok(format!("{} groups; {}", report.groups, parts.join(", ")))
}

// 5. O^p and p-subnormality against brute force.
fn group_oracles() -> Outcome {
    let config = VerifyConfig {
        max_order: 60,
        poset_count: 0,
        ..Default::default()
    };
    verify_checks(
        &config,
        &[verify::RESIDUAL_ORACLE, verify::SUBNORMAL_ORACLE],
    )
}

fn poset_config() -> VerifyConfig {
    VerifyConfig {
        max_order: 0,
        poset_count: 200,
        max_poset_points: 10,
        closed_sets_per_poset: 50,
        ..Default::default()
    }
}

// 6. Finite localization against the union of closed subsets inside V.
fn poset_oracle() -> Outcome {
    verify_checks(&poset_config(), &[verify::LOCALIZATION_ORACLE])
}

// 7. Clopen consistency on the same corpus.
fn clopen_consistency() -> Outcome {
    verify_checks(&poset_config(), &[verify::CLOPEN_CONSISTENCY])
}

// 8. Property tests over the catalog.

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn all_loci(s: &Arc<EqSpectrum>, n: usize) -> Vec<EqLocus> {
    let mut out = vec![
        inflation_locus(s, n).unwrap(),
        geometric_fixed_locus(s, n).unwrap(),
        n_free_locus(s, n).unwrap(),
    ];
    out.extend((0..s.num_classes()).map(|h| orbit_support(s, h)));
    out
}

fn rows_consistent(z: &EqLocus) -> bool {
    let tags = z.spectrum().tags().len();
    (0..z.spectrum().num_classes())
        .all(|c| !z.includes_height_one(c) || (0..tags).all(|t| z.tall_column(c, t)))
}

fn invariants() -> Outcome {
    let spectra: Vec<(String, Arc<EqSpectrum>)> = catalog::builtin_names(24)
        .into_iter()
        .map(|n| {
            let s = spectrum(&n);
            (n, s)
        })
        .collect();
    let spectra = &spectra;
    let count = spectra.len();
    let pick = (0..count, any::<u64>());
    let mut summary = Vec::new();
    let mut run = |label: &str, cases: u32, f: &dyn Fn(usize, u64) -> Result<(), TestCaseError>| {
        runner(cases)
            .run(&pick, |(i, seed)| f(i, seed))
            .map_err(|e| format!("{label}: {e}"))?;
        summary.push(format!("{label} x{cases}"));
        Ok::<(), String>(())
    };
    let normals = |s: &EqSpectrum| s.lattice().normal_classes().collect::<Vec<_>>();

    run("height-one implication", 64, &|i, seed| {
        let (name, s) = &spectra[i];
        let ns = normals(s);
        let n = ns[seed as usize % ns.len()];
        for z in all_loci(s, n) {
            prop_assert!(rows_consistent(&z), "{name}, N = class {n}");
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let zs = all_loci(s, n);
            prop_assert!(rows_consistent(&zs[a].union(&zs[b]).unwrap()));
            prop_assert!(rows_consistent(&zs[a].intersect(&zs[b]).unwrap()));
        }
        Ok(())
    })?;

    run("inflation anti-monotone in N", 64, &|i, _| {
        let (name, s) = &spectra[i];
        let ns = normals(s);
        let lattice = s.lattice();
        for &a in &ns {
            for &b in &ns {
                let (na, nb) = (
                    lattice.class(a).representative(),
                    lattice.class(b).representative(),
                );
                if na.is_subgroup_of(nb) {
                    let za = inflation_locus(s, a).unwrap();
                    let zb = inflation_locus(s, b).unwrap();
                    prop_assert!(za.contains_locus(&zb).unwrap(), "{name}: classes {a} ⊆ {b}");
                }
            }
        }
        Ok(())
    })?;

    run("representative independence", 64, &|i, seed| {
        let (name, s) = &spectra[i];
        let lattice = s.lattice();
        let g = lattice.group();
        let ns = normals(s);
        let n = ns[seed as usize % ns.len()];
        let nrep = lattice.class(n).representative();
        let infl = inflation_locus(s, n).unwrap();
        let fix = geometric_fixed_locus(s, n).unwrap();
        let mut x = seed;
        for (c, class) in lattice.classes().iter().enumerate() {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let conj = class
                .representative()
                .conjugate(g, (x >> 33) as usize % g.order());
            for (t, &tag) in s.tags().iter().enumerate() {
                prop_assert_eq!(
                    infl.tall_column(c, t),
                    inflation_criterion(g, nrep, &conj, tag),
                    "{} class {}",
                    name,
                    c
                );
                prop_assert_eq!(
                    fix.tall_column(c, t),
                    geometric_fixed_criterion(g, nrep, &conj, tag),
                    "{} class {}",
                    name,
                    c
                );
            }
        }
        Ok(())
    })?;

    run("O^p idempotent", 64, &|i, seed| {
        let (name, s) = &spectra[i];
        let lattice = s.lattice();
        let g = lattice.group();
        let c = seed as usize % lattice.len();
        let h = lattice.class(c).representative();
        for q in prime_divisors(g.order()) {
            let once = p_residual(g, h, q);
            let twice = p_residual(g, &once, q);
            prop_assert_eq!(
                once.elements(),
                twice.elements(),
                "{} class {} p = {}",
                name,
                c,
                q
            );
            prop_assert!(once.is_normal_in(g, h));
        }
        Ok(())
    })?;

    run("classes independent of generators", 32, &|i, seed| {
        let (name, s) = &spectra[i];
        let g = s.lattice().group();
        let mut gens: Vec<_> = g.generators().to_vec();
        // Rotate the generators and append a redundant product.
        let k = seed as usize % gens.len().max(1);
        gens.rotate_left(k);
        gens.push(g.element((seed >> 8) as usize % g.order()).clone());
        let h = PermGroup::from_generators(g.degree(), gens).unwrap();
        prop_assert!(h == **g, "{name}: regenerated group differs");
        let other = SubgroupLattice::new(Arc::new(h), Caps::default()).unwrap();
        prop_assert_eq!(other.len(), s.lattice().len());
        for (a, b) in other.classes().iter().zip(s.lattice().classes()) {
            prop_assert_eq!(
                a.representative().elements(),
                b.representative().elements(),
                "{}",
                name
            );
            prop_assert_eq!(a.class_size(), b.class_size());
        }
        Ok(())
    })?;

    run(
        "inflation and geometric fixed points agree over N",
        64,
        &|i, seed| {
            let (name, s) = &spectra[i];
            let lattice = s.lattice();
            let ns = normals(s);
            let n = ns[seed as usize % ns.len()];
            let nrep = lattice.class(n).representative();
            let infl = inflation_locus(s, n).unwrap();
            let fix = geometric_fixed_locus(s, n).unwrap();
            for (c, class) in lattice.classes().iter().enumerate() {
                if nrep.is_subgroup_of(class.representative()) {
                    for t in 0..s.tags().len() {
                        prop_assert_eq!(
                            infl.tall_column(c, t),
                            fix.tall_column(c, t),
                            "{} class {}",
                            name,
                            c
                        );
                    }
                }
            }
            Ok(())
        },
    )?;

    Ok(format!("{count} groups; {}", summary.join(", ")))
}

// 9. Figure goldens.
fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn locus_figure(group: &str, normal_order: usize, label: &str) -> LocusDocument {
    let s = spectrum(group);
    let n = class_of_order(&s, normal_order);
    let z = inflation_locus(&s, n).unwrap();
    LocusDocument::from_locus(&z, group, LocusKind::Inflation).with_normal(label)
}

// Returns the poset with `Z` and `V = X∖Y` for a closed `Y`.
fn poset_figure(text: &str, y: &[&str]) -> (FinitePoset, PosetSubset, PosetSubset) {
    let x = FinitePoset::parse(text).unwrap();
    let y = PosetSubset::by_names(&x, y.iter().copied(), Flavor::Closed).unwrap();
    let z = finite_localization_locus(&x, &y).unwrap();
    let v = PosetSubset::arbitrary(&x, y.complement(&x)).unwrap();
    (x, z, v)
}

fn figures() -> Outcome {
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    let docs = [
        ("inflation_c5", locus_figure("C5", 5, "C5")),
        ("inflation_d10", locus_figure("D10", 10, "D10")),
        ("inflation_d10_c5", locus_figure("D10", 5, "C5")),
    ];
    let posets = [
        (
            "chain",
            poset_figure("point a\npoint b\npoint c\nspec a b\nspec b c\n", &["c"]),
        ),
        (
            "two_chains",
            poset_figure(
                "point a\npoint b\npoint c\npoint d\nspec a b\nspec c d\n",
                &["d"],
            ),
        ),
    ];
    let mut checked = 0;
    for (fmt, ext) in [
        (Format::Svg, "svg"),
        (Format::Dot, "dot"),
        (Format::Ascii, "txt"),
    ] {
        let mut outputs: Vec<(String, Vec<u8>, Vec<u8>)> = docs
            .iter()
            .map(|(stem, doc)| {
                (
                    format!("{stem}.{ext}"),
                    render_eq_locus(doc, fmt).unwrap(),
                    render_eq_locus(doc, fmt).unwrap(),
                )
            })
            .collect();
        for (stem, (x, z, v)) in &posets {
            outputs.push((
                format!("{stem}.{ext}"),
                render_poset(x, &[z, v], fmt).unwrap(),
                render_poset(x, &[z, v], fmt).unwrap(),
            ));
        }
        for (file, first, second) in outputs {
            ensure(first == second, || format!("{file}: two runs differ"))?;
            let path = golden_dir().join(&file);
            if update {
                fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
                fs::write(&path, &first).map_err(|e| e.to_string())?;
            }
            let golden = fs::read(&path).map_err(|e| format!("{file}: {e}"))?;
            ensure(golden == first, || format!("{file}: differs from golden"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} golden files"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        (
            "1 inflation for G = N = C_p",
            Duration::from_secs(1),
            inflation_of_cyclic_primes,
        ),
        (
            "2 p-localization of SH",
            Duration::from_secs(1),
            example_p_localization,
        ),
        (
            "3 inflation whole iff N = 1",
            Duration::from_secs(60),
            inflation_whole,
        ),
        ("4 N-free loci for D10", Duration::from_secs(1), d10_n_free),
        ("5 group oracles", Duration::from_secs(300), group_oracles),
        (
            "6 localization oracle on 200 posets",
            Duration::from_secs(30),
            poset_oracle,
        ),
        (
            "7 clopen consistency",
            Duration::from_secs(30),
            clopen_consistency,
        ),
        (
            "8 invariant properties",
            Duration::from_secs(300),
            invariants,
        ),
        (
            "9 figure determinism and goldens",
            Duration::from_secs(30),
            figures,
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, limit, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|pat| name.contains(pat.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > limit {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{elapsed:.2?}]  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{elapsed:.2?}]  {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
