//! Acceptance run: one pass/fail line per criterion, with the thresholds
//! fixed below. Exits non-zero when any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitmerge::correspond::*;
use splitmerge::domain::{
    bottom_alternatives, first_rank_distribution, is_aspd, is_bspd, richness_direct,
};
use splitmerge::enumerate::canonical::canonical_form;
use splitmerge::enumerate::catalog::{build_catalog, render_jsonl, render_report};
use splitmerge::enumerate::count::{automorphism_split, formula_table, recursive_table, unlabeled_count};
use splitmerge::enumerate::{class_representatives, classify_labeled, count_vines, for_each_vine_nodes, generate_vines};
use splitmerge::lattice::{
    automorphism_group_order, doubling, find_b3_direct, has_no_triangles, is_extremal_lattice,
    is_extremal_matrix, lattice_chains, lattice_to_matrix, lattice_to_vine, undouble, undouble_at, vine_to_lattice,
};
use splitmerge::matgraph::relabel_graph;
use splitmerge::domain::relabel_domain;
use splitmerge::samples::*;
use splitmerge::species::{merge, split, transport};
use splitmerge::vine::{chain_counts_from_atoms, is_d_vine, relabel_vine, richness_via_vine};
use splitmerge::{
    BoundedLattice, DomainSpecies, GroundSet, MatGraphSpecies, RegularVine, Species, VineSpecies,
};

const LABELED: [u64; 6] = [1, 1, 3, 24, 480, 23040];
const LABELED_7: u64 = 2_580_480;
const LABELED_LIMIT: Duration = Duration::from_secs(30);
const LABELED_7_LIMIT: Duration = Duration::from_secs(600);
const CLASSES: [usize; 6] = [1, 1, 1, 2, 6, 40];
const CLASSES_LIMIT: Duration = Duration::from_secs(300);
const COUNT_RANGE: usize = 12;
const UNLABELED_12: &str = "17626824704000";
const COUNT_LIMIT: Duration = Duration::from_secs(1);
const EXHAUSTIVE_MAX: usize = 5;
const SAMPLES: usize = 1000;
const RELABELINGS: usize = 50;
const DOMAIN_MAX: usize = 7;
const ANALYTICS_MAX: usize = 6;
const BSPD_MAX: usize = 6;
const LATTICE_MAX: usize = 7;
const B3_CLASS_MAX: usize = 5;
const RANDOM_FAMILIES: usize = 100;
const DOUBLING_MAX: usize = 5;
const AUT_MAX: usize = 6;
const CATALOG_SIZES: std::ops::RangeInclusive<usize> = 3..=6;
const CATALOG_ENTRIES: usize = 49;
const CATALOG_LIMIT: Duration = Duration::from_secs(600);
const SEED: u64 = 0x5eed_0f_71e5;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: splitmerge::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn labeled_vines(n: usize) -> Result<Vec<RegularVine>, String> {
    lib(generate_vines(&GroundSet::standard(n)))
}

fn reps(n: usize) -> Result<Vec<RegularVine>, String> {
    Ok(lib(class_representatives(n))?.into_iter().map(|c| c.representative).collect())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=6 {
        let got = labeled_vines(n)?.len() as u64;
        let single = lib(count_vines(n, false))?;
        ensure(got == LABELED[n - 1] && single == got, || format!("n={n}: generated {got}, counted {single}"))?;
        ensure(got as u128 == common::labeled_count_oracle(n), || format!("n={n}: oracle disagrees"))?;
        let formula = lib(formula_table(n))?.labeled;
        ensure(formula == got.to_string(), || format!("n={n}: formula gives {formula}"))?;
    }
    let small = start.elapsed();
    ensure(small < LABELED_LIMIT, || format!("n<=6 took {small:?}"))?;
    let start = Instant::now();
    let seven = lib(count_vines(7, true))?;
    let big = start.elapsed();
    ensure(seven == LABELED_7, || format!("n=7 gives {seven}"))?;
    ensure(big < LABELED_7_LIMIT, || format!("n=7 took {big:?}"))?;
    Ok(format!("1,1,3,24,480,23040 in {small:.2?}; n=7 {seven} in {big:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 1..=6 {
        let got = lib(classify_labeled(n))?.len();
        ensure(got == CLASSES[n - 1], || format!("n={n}: {got} classes"))?;
    }
    let classify = start.elapsed();
    ensure(classify < CLASSES_LIMIT, || format!("classification took {classify:?}"))?;
    let start = Instant::now();
    for n in 1..=COUNT_RANGE {
        let f = lib(formula_table(n))?;
        let r = lib(recursive_table(n))?;
        ensure(f == r, || format!("n={n}: formula {} vs recursion {}", f.unlabeled, r.unlabeled))?;
    }
    let twelve = lib(unlabeled_count(12))?.to_string();
    let counting = start.elapsed();
    ensure(twelve == UNLABELED_12, || format!("n=12 gives {twelve}"))?;
    ensure(counting < COUNT_LIMIT, || format!("counting took {counting:?}"))?;
    Ok(format!("1,1,1,2,6,40 in {classify:.2?}; formula = recursion to n=12 in {counting:.2?}"))
}

fn criterion_3() -> Outcome {
    for (name, g, v, d) in [
        ("four-element", intro_graph(), intro_vine(), intro_domain()),
        ("five-element", five_graph(), five_vine(), five_domain()),
    ] {
        let checks = [
            ("graph->vine", lib(graph_to_vine(&g))? == v),
            ("vine->graph", lib(vine_to_graph(&v))? == g),
            ("graph->domain", lib(graph_to_domain(&g))? == d),
            ("domain->graph", lib(domain_to_graph(&d))? == g),
            ("vine->domain", lib(vine_to_domain(&v))? == d),
            ("domain->vine", lib(domain_to_vine(&d))? == v),
            ("transport graph->vine", lib(transport::<MatGraphSpecies, VineSpecies>(&g))? == v),
            ("transport vine->graph", lib(transport::<VineSpecies, MatGraphSpecies>(&v))? == g),
            ("transport graph->domain", lib(transport::<MatGraphSpecies, DomainSpecies>(&g))? == d),
            ("transport domain->graph", lib(transport::<DomainSpecies, MatGraphSpecies>(&d))? == g),
            ("transport vine->domain", lib(transport::<VineSpecies, DomainSpecies>(&v))? == d),
            ("transport domain->vine", lib(transport::<DomainSpecies, VineSpecies>(&d))? == v),
        ];
        for (what, ok) in checks {
            ensure(ok, || format!("{name} {what}"))?;
        }
    }
    Ok("both triples, six maps, direct and transport".into())
}

fn split_merge<S: Species>(s: &S::Structure) -> Result<(), String> {
    if S::ground(s).len() < 2 {
        return Ok(());
    }
    let p = lib(split::<S>(s))?;
    let m = lib(merge::<S>(&p.left, &p.right))?;
    ensure(m.as_ref() == Some(s), || format!("{} merge of split differs", S::KIND))
}

fn laws(v: &RegularVine, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = lib(vine_to_graph(v))?;
    let d = lib(vine_to_domain(v))?;
    let ctx = || common::show(v);
    ensure(lib(graph_to_vine(&g))? == *v, || format!("graph->vine on {}", ctx()))?;
    ensure(lib(domain_to_vine(&d))? == *v, || format!("domain->vine on {}", ctx()))?;
    ensure(lib(graph_to_domain(&g))? == d, || format!("graph->domain on {}", ctx()))?;
    ensure(lib(domain_to_graph(&d))? == g, || format!("domain->graph on {}", ctx()))?;
    ensure(lib(transport::<VineSpecies, MatGraphSpecies>(v))? == g, || format!("transport to graph on {}", ctx()))?;
    ensure(lib(transport::<VineSpecies, DomainSpecies>(v))? == d, || format!("transport to domain on {}", ctx()))?;
    ensure(lib(transport::<MatGraphSpecies, VineSpecies>(&g))? == *v, || format!("transport graph to vine on {}", ctx()))?;
    ensure(lib(transport::<MatGraphSpecies, DomainSpecies>(&g))? == d, || format!("transport graph to domain on {}", ctx()))?;
    ensure(lib(transport::<DomainSpecies, VineSpecies>(&d))? == *v, || format!("transport domain to vine on {}", ctx()))?;
    ensure(lib(transport::<DomainSpecies, MatGraphSpecies>(&d))? == g, || format!("transport domain to graph on {}", ctx()))?;
    split_merge::<VineSpecies>(v)?;
    split_merge::<MatGraphSpecies>(&g)?;
    split_merge::<DomainSpecies>(&d)?;
    for _ in 0..RELABELINGS {
        let h = common::random_relabeling(rng, v.ground());
        let hv = lib(relabel_vine(v, &h))?;
        let hg = lib(relabel_graph(&g, &h))?;
        let hd = lib(relabel_domain(&d, &h))?;
        let ok = lib(vine_to_graph(&hv))? == hg
            && lib(vine_to_domain(&hv))? == hd
            && lib(graph_to_vine(&hg))? == hv
            && lib(graph_to_domain(&hg))? == hd
            && lib(domain_to_vine(&hd))? == hv
            && lib(domain_to_graph(&hd))? == hg;
        ensure(ok, || format!("naturality fails on {} under {:?}", ctx(), h))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut exhaustive = 0;
    for n in 0..=EXHAUSTIVE_MAX {
        let vines = if n == 0 { vec![lib(VineSpecies::trivial(GroundSet::standard(0)))?] } else { labeled_vines(n)? };
        for v in &vines {
            laws(v, &mut rng)?;
        }
        exhaustive += vines.len();
    }
    for n in [6, 7] {
        let classes = reps(n)?;
        for _ in 0..SAMPLES {
            let r = &classes[rng.gen_range(0..classes.len())];
            let p = common::random_permutation(&mut rng, r.ground());
            let v = lib(relabel_vine(r, &p))?;
            laws(&v, &mut rng)?;
        }
    }
    Ok(format!(
        "{exhaustive} vines exhaustively for n<={EXHAUSTIVE_MAX}, {SAMPLES} samples at n=6 and n=7, {RELABELINGS} relabelings each"
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for n in 1..=DOMAIN_MAX {
        for v in reps(n)? {
            let d = lib(vine_to_domain(&v))?;
            let ctx = || common::show(&v);
            ensure(d.len() == 1 << (n - 1), || format!("size {} on {}", d.len(), ctx()))?;
            let bottoms = bottom_alternatives(&d).len();
            ensure(n < 2 || bottoms == 2, || format!("{bottoms} bottoms on {}", ctx()))?;
            ensure(is_aspd(&d) && common::never_bottom_oracle(&d), || format!("never-bottom fails on {}", ctx()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes for n<={DOMAIN_MAX}"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=ANALYTICS_MAX {
        let mut failure: Option<String> = None;
        lib(for_each_vine_nodes(n, &mut |nodes| {
            if failure.is_some() {
                return;
            }
            let v = RegularVine::new(GroundSet::standard(n), nodes.to_vec()).unwrap();
            let d = transport::<VineSpecies, DomainSpecies>(&v).unwrap();
            let first = first_rank_distribution(&d);
            let rich = richness_direct(&d);
            let ok = first == chain_counts_from_atoms(&v).unwrap()
                && first == common::first_rank_oracle(&d)
                && rich == richness_via_vine(&v).unwrap()
                && rich == common::richness_oracle(&d)
                && (n < 3 || (2..=n / 2 + 1).contains(&rich));
            if !ok {
                failure = Some(common::show(&v));
            }
            checked += 1;
        }))?;
        if let Some(f) = failure {
            return Err(format!("analytics disagree on {f}"));
        }
    }
    let values = |d: &splitmerge::PreferenceDomain| first_rank_distribution(d).values().copied().collect::<Vec<_>>();
    ensure(values(&d41()) == [1, 3, 3, 1], || format!("D-vine domain first ranks {:?}", values(&d41())))?;
    ensure(values(&d42()) == [4, 2, 1, 1], || format!("C-vine domain first ranks {:?}", values(&d42())))?;
    ensure(richness_direct(&d41()) == 3 && richness_direct(&d42()) == 2, || "richness of the four-element domains".into())?;
    Ok(format!("{checked} labeled vines for n<={ANALYTICS_MAX}; 1,3,3,1 / 4,2,1,1 and richness 3 / 2"))
}

fn criterion_7() -> Outcome {
    for n in 1..=BSPD_MAX {
        let mut single_peaked = 0;
        for v in reps(n)? {
            let d = lib(vine_to_domain(&v))?;
            let axis = is_bspd(&d);
            let dv = lib(is_d_vine(&v))?;
            ensure(axis.is_some() == dv, || format!("n={n}: single-peaked {} but D-vine {dv} on {}", axis.is_some(), common::show(&v)))?;
            if let Some(axis) = axis {
                single_peaked += 1;
                let path = common::path_order(&v).ok_or("D-vine without a path")?;
                let mut rev = path.clone();
                rev.reverse();
                ensure(axis == path || axis == rev, || format!("axis {axis:?} vs path {path:?}"))?;
            }
        }
        ensure(single_peaked == 1, || format!("n={n}: {single_peaked} single-peaked classes"))?;
    }
    Ok(format!("one single-peaked class, the D-vine, for each n<={BSPD_MAX}"))
}

fn criterion_8() -> Outcome {
    let mut lattices = 0;
    for n in 1..=LATTICE_MAX {
        for v in reps(n)? {
            let l = lib(vine_to_lattice(&v))?;
            let r = lib(is_extremal_lattice(&l, n))?;
            ensure(r.extremal && l.len() == 1 + n + n * (n - 1) / 2, || format!("not extremal: {}", common::show(&v)))?;
            ensure(is_extremal_matrix(&lattice_to_matrix(&l)), || format!("matrix not extremal: {}", common::show(&v)))?;
            ensure(lib(lattice_to_vine(&l))? == v, || "lattice round trip".into())?;
            if n <= B3_CLASS_MAX {
                let direct = find_b3_direct(&l).is_none();
                let tri = has_no_triangles(&lattice_to_matrix(&l));
                ensure(direct && tri && !common::induced_b3_oracle(l.elements()), || format!("B(3) checks on {}", common::show(&v)))?;
            }
            lattices += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xb3);
    let mut with_b3 = 0;
    for _ in 0..RANDOM_FAMILIES {
        let n = rng.gen_range(3..=6);
        let extra: Vec<u64> = (0..rng.gen_range(1..=2 * n)).map(|_| rng.gen_range(1..1u64 << n)).collect();
        let family = common::intersection_closure(n, &extra);
        let l = lib(BoundedLattice::new(GroundSet::standard(n), family.clone()))?;
        let oracle = common::induced_b3_oracle(&family);
        let direct = find_b3_direct(&l).is_some();
        let tri = !has_no_triangles(&lattice_to_matrix(&l));
        ensure(oracle == direct && oracle == tri, || format!("B(3) disagreement on {family:?}: oracle {oracle}, direct {direct}, triangle {tri}"))?;
        with_b3 += oracle as usize;
    }
    let mut doublings = 0;
    for n in 1..DOUBLING_MAX {
        for v in reps(n)? {
            let l = lib(vine_to_lattice(&v))?;
            for chain in lattice_chains(&l) {
                let dbl = lib(doubling(&l, &chain))?;
                ensure(lib(is_extremal_lattice(&dbl, n + 1))?.extremal, || "doubling is not extremal".into())?;
                let fresh = l.ground().fresh_label();
                let (base, c) = lib(undouble_at(&dbl, &fresh))?;
                ensure(base == l && c == chain, || format!("undoubling the new element of {}", common::show(&v)))?;
                let (base, c) = lib(undouble(&dbl))?;
                ensure(lib(is_extremal_lattice(&base, n))?.extremal, || "undouble is not extremal".into())?;
                let again = lib(lattice_to_vine(&lib(doubling(&base, &c))?))?;
                ensure(canonical_form(&again) == canonical_form(&lib(lattice_to_vine(&dbl))?), || "redoubling changes the class".into())?;
                doublings += 1;
            }
        }
    }
    for v in reps(DOUBLING_MAX)? {
        let l = lib(vine_to_lattice(&v))?;
        let (base, c) = lib(undouble(&l))?;
        let again = lib(lattice_to_vine(&lib(doubling(&base, &c))?))?;
        ensure(canonical_form(&again) == canonical_form(&v), || format!("undouble-double on {}", common::show(&v)))?;
    }
    Ok(format!(
        "{lattices} class lattices for n<={LATTICE_MAX}; {RANDOM_FAMILIES} random families ({with_b3} with B(3)); {doublings} doublings"
    ))
}

fn criterion_9() -> Outcome {
    let mut tallies = Vec::new();
    for n in 1..=AUT_MAX {
        let classes = lib(class_representatives(n))?;
        let (mut p, mut q) = (0u64, 0u64);
        for c in &classes {
            let other = lib(automorphism_group_order(&c.representative))?;
            ensure(c.automorphisms == other, || format!("|Aut| {} vs {other}", c.automorphisms))?;
            match c.automorphisms {
                1 => q += 1,
                2 => p += 1,
                k => return Err(format!("n={n}: |Aut| = {k}")),
            }
        }
        let (ep, eq) = lib(automorphism_split(n))?;
        ensure(ep.to_string() == p.to_string() && eq.to_string() == q.to_string(), || format!("n={n}: ({p},{q}) vs ({ep},{eq})"))?;
        tallies.push(format!("({p},{q})"));
    }
    Ok(tallies.join(" "))
}

fn catalog_bytes() -> Result<(usize, Vec<u8>), String> {
    let mut entries = 0;
    let mut bytes = Vec::new();
    for n in CATALOG_SIZES {
        let c = lib(build_catalog(n))?;
        entries += c.len();
        bytes.extend(render_jsonl(&c).into_bytes());
        bytes.extend(render_report(&c).into_bytes());
    }
    Ok((entries, bytes))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let (entries, first) = catalog_bytes()?;
    let (_, second) = catalog_bytes()?;
    let t = start.elapsed();
    ensure(entries == CATALOG_ENTRIES, || format!("{entries} entries"))?;
    ensure(first == second, || "catalog output differs between runs".into())?;
    ensure(t < CATALOG_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{entries} entries, {} bytes, identical across two runs, {t:.2?}", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("labeled counts", criterion_1),
        ("unlabeled counts", criterion_2),
        ("worked examples", criterion_3),
        ("structural laws", criterion_4),
        ("maximal domain facts", criterion_5),
        ("analytics", criterion_6),
        ("single-peaked classes", criterion_7),
        ("lattice and matrix layer", criterion_8),
        ("automorphism counts", criterion_9),
        ("catalog", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
