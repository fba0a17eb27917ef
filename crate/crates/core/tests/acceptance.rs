//! Exit criteria. Each `criterion_*` test prints one PASS/FAIL line.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use genus_range::ranges::{
    conjectures_from_table, realization_chart_from_table, theorem_construction, ChartStatus,
};
use genus_range::surface::FaceCounter;
use genus_range::words::{
    concat, family_g, family_r, family_u, family_x, power, restrict, NormalizedWords,
};
use genus_range::{
    connected_sum_law, enumerate_words, genus_profile, genus_range, gr_table, parse, witness,
    AttachmentConfig, Budget, ChordWord, GenusRange, RangeTable,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{random_config, random_word, side_segment_oracle};

fn report(criterion: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] criterion {criterion}: {title}");
    } else {
        println!("[FAIL] criterion {criterion}: {title}");
        for f in failures.iter().take(20) {
            println!("       {f}");
        }
        panic!(
            "criterion {criterion} failed with {} violation(s)",
            failures.len()
        );
    }
}

fn gr(a: u32, b: u32) -> GenusRange {
    GenusRange::new(a, b)
}

/// Tables for n = 1..=7 and how long each took, computed once per test binary.
fn tables() -> &'static [(RangeTable, Duration)] {
    static TABLES: OnceLock<Vec<(RangeTable, Duration)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (1..=7)
            .map(|n| {
                let start = Instant::now();
                let table = gr_table(n, &Budget::default()).unwrap();
                (table, start.elapsed())
            })
            .collect()
    })
}

fn published_sets() -> BTreeMap<usize, BTreeSet<GenusRange>> {
    let small = [gr(0, 1)];
    let three = [gr(0, 1), gr(0, 2), gr(1, 2)];
    let five = [gr(0, 1), gr(0, 2), gr(1, 2), gr(0, 3), gr(1, 3)];
    let seven = [
        gr(0, 1),
        gr(0, 2),
        gr(1, 2),
        gr(0, 3),
        gr(1, 3),
        gr(0, 4),
        gr(1, 4),
        gr(2, 4),
    ];
    BTreeMap::from([
        (1, small.into()),
        (2, small.into()),
        (3, three.into()),
        (4, three.into()),
        (5, five.into()),
        (6, five.into()),
        (7, seven.into()),
    ])
}

#[test]
fn criterion_1_table_reproduction() {
    let expected = published_sets();
    let mut failures = Vec::new();
    for (table, elapsed) in tables() {
        let n = table.n;
        if table.gr_set != expected[&n] {
            failures.push(format!("n = {n}: got {:?}", table.gr_set));
        }
        let limit = if n <= 6 {
            Duration::from_secs(60)
        } else {
            Duration::from_secs(30 * 60)
        };
        if *elapsed > limit {
            failures.push(format!("n = {n}: took {elapsed:?}, limit {limit:?}"));
        }
        println!(
            "       n = {n}: {} classes, {} ranges, {elapsed:.2?}",
            table.classes.len(),
            table.gr_set.len()
        );
    }
    report(1, "GR_n tables for n = 1..7", &failures);
}

#[test]
fn criterion_2_point_values() {
    let mut failures = Vec::new();
    for (word, want) in [
        ("123123", gr(1, 2)),
        ("12341342", gr(1, 2)),
        ("12312345674675", gr(2, 4)),
    ] {
        let got = genus_range(&parse(word).unwrap()).unwrap();
        if got != want {
            failures.push(format!("gr({word}) = {got}, expected {want}"));
        }
    }
    let nested = genus_range(&parse("123321").unwrap()).unwrap();
    if nested.size() < 3 {
        failures.push(format!("gr(123321) = {nested} has fewer than 3 elements"));
    }
    report(2, "point values", &failures);
}

fn check_family(failures: &mut Vec<String>, name: String, word: ChordWord, want: GenusRange) {
    assert!(word.n() <= 12, "{name} is beyond the exhaustive budget");
    let got = genus_range(&word).unwrap();
    if got != want {
        failures.push(format!("gr({name}) = {got}, expected {want}"));
    }
}

fn v_word(h: usize, k: usize, l: usize) -> ChordWord {
    let parts: Vec<ChordWord> = [
        (h > 0).then(|| family_u(h)),
        (k > 0).then(|| power(&family_x(), k)),
        (l > 0).then(|| family_g(l)),
    ]
    .into_iter()
    .flatten()
    .collect();
    parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, w| concat(&acc, w))
}

#[test]
fn criterion_3_family_laws() {
    let mut failures = Vec::new();
    let f = &mut failures;
    for n in 1..=10 {
        check_family(f, format!("U_{n}"), family_u(n), gr(0, 1));
    }
    for n in 3..=10 {
        check_family(
            f,
            format!("R_{n}"),
            family_r(n),
            gr(1, n.div_ceil(2) as u32),
        );
    }
    for m in 1..=5 {
        check_family(f, format!("G_{m}"), family_g(m), gr(0, m as u32));
    }
    for m in 1..=5 {
        for k in 1..=12 - 2 * m {
            let w = concat(&family_g(m), &family_u(k));
            check_family(f, format!("G_{m} U_{k}"), w, gr(0, m as u32 + 1));
        }
    }
    for k in 1..=3 {
        let k32 = k as u32;
        check_family(f, format!("X^{k}"), power(&family_x(), k), gr(k32, 2 * k32));
    }
    for k in 1..=2 {
        for h in 1..=12 - 4 * k {
            let k32 = k as u32;
            let w = concat(&family_u(h), &power(&family_x(), k));
            check_family(f, format!("U_{h} X^{k}"), w, gr(k32, 2 * k32 + 1));
        }
    }
    for k in 0..=3 {
        for l in 0..=6 {
            for h in 0..=12 {
                let n = 4 * k + 2 * l + h;
                if n == 0 || n > 12 || (h == 0 && k + l == 0) {
                    continue;
                }
                let top = 2 * k + l + usize::from(h > 0);
                let w = v_word(h, k, l);
                assert_eq!(w.n(), n);
                check_family(f, format!("V({h},{k},{l})"), w, gr(k as u32, top as u32));
            }
        }
    }
    report(3, "family laws", &failures);
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut failures = Vec::new();
    let compare = |w: &ChordWord, config: &AttachmentConfig, failures: &mut Vec<String>| {
        let oracle = side_segment_oracle(w, config);
        let (b, end) = FaceCounter::new(w).boundaries_with_end_edge(config.mask());
        let traced =
            genus_range::trace_faces(&genus_range::build_rotation_system(w, config).unwrap());
        if b as usize != oracle.components
            || traced.count() != oracle.components
            || end != oracle.end_edge
        {
            failures.push(format!(
                "{w} / {config}: counter b={b} {end:?}, tracer b={}, oracle b={} {:?}",
                traced.count(),
                oracle.components,
                oracle.end_edge
            ));
        }
    };
    let mut exhaustive = 0usize;
    for n in 1..=4 {
        for w in NormalizedWords::new(n) {
            for mask in 0..(1u64 << w.len()) {
                compare(
                    &w,
                    &AttachmentConfig::from_mask(w.len(), mask),
                    &mut failures,
                );
                exhaustive += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x6e6f_7465);
    let mut random = 0usize;
    for n in 5..=8 {
        for _ in 0..10_000 {
            let w = random_word(n, &mut rng);
            let config = random_config(w.len(), &mut rng);
            compare(&w, &config, &mut failures);
            random += 1;
        }
    }
    println!("       {exhaustive} exhaustive pairs (n <= 4), {random} random pairs (5 <= n <= 8)");
    report(4, "face tracer matches side-segment oracle", &failures);
}

#[test]
fn criterion_5_invariant_suite() {
    let mut failures = Vec::new();
    for n in 1..=5 {
        let mut class_profiles = BTreeMap::new();
        for w in NormalizedWords::new(n) {
            let counter = FaceCounter::new(&w);
            let full = (1u64 << w.len()) - 1;
            let removed: Vec<(Vec<usize>, FaceCounter)> = if n >= 2 {
                (1..=n as u32)
                    .map(|c| {
                        let keep: BTreeSet<u32> = (1..=n as u32).filter(|&l| l != c).collect();
                        let positions: Vec<usize> =
                            (0..w.len()).filter(|&i| w.letters()[i] != c).collect();
                        (positions, FaceCounter::new(&restrict(&w, &keep).unwrap()))
                    })
                    .collect()
            } else {
                Vec::new()
            };
            for mask in 0..=full {
                let b = counter.boundaries(mask) as usize;
                if b % 2 != n % 2 {
                    failures.push(format!("parity: {w} mask {mask:b} b = {b}"));
                }
                if !(1..=n + 2).contains(&b) {
                    failures.push(format!("bounds: {w} mask {mask:b} b = {b}"));
                }
                if counter.boundaries(!mask & full) as usize != b {
                    failures.push(format!("complement: {w} mask {mask:b}"));
                }
                for i in 0..w.len() {
                    let flipped = counter.boundaries(mask ^ (1 << i)) as usize;
                    if !matches!(b.abs_diff(flipped), 0 | 2) {
                        failures.push(format!("toggle: {w} mask {mask:b} endpoint {i}"));
                    }
                }
                for (positions, sub) in &removed {
                    let sub_mask = positions
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| mask >> p & 1 == 1)
                        .fold(0u64, |m, (i, _)| m | 1 << i);
                    if b.abs_diff(sub.boundaries(sub_mask) as usize) != 1 {
                        failures.push(format!("chord removal: {w} mask {mask:b}"));
                    }
                }
            }
            let profile = genus_profile(&w).unwrap();
            if !profile.is_gap_free() {
                failures.push(format!("gap: {w} {:?}", profile.counts));
            }
            if profile.min_genus() >= profile.max_genus() {
                failures.push(format!("singleton: {w}"));
            }
            let canonical = genus_range::canonical_form(&w);
            let entry = class_profiles
                .entry(canonical)
                .or_insert_with(|| profile.clone());
            if *entry != profile {
                failures.push(format!("equivalence: {w} profile differs from its class"));
            }
        }
    }
    report(5, "invariants, exhaustive n <= 5", &failures);
}

#[test]
fn criterion_6_conjectures() {
    let mut failures = Vec::new();
    for (table, _) in tables() {
        let n = table.n;
        let r = conjectures_from_table(table);
        if !r.two_element_ranges.holds {
            failures.push(format!(
                "n = {n}: two-element counterexamples {:?}",
                r.two_element_ranges.counterexamples
            ));
        }
        let zero_one: BTreeSet<String> = r
            .zero_one_unique
            .found
            .iter()
            .map(|w| w.to_string())
            .collect();
        let want: BTreeSet<String> = if n == 2 {
            ["1122".to_string(), "1212".to_string()].into()
        } else {
            [genus_range::canonical_form(&family_u(n)).to_string()].into()
        };
        if zero_one != want {
            failures.push(format!("n = {n}: [0,1] realized by {zero_one:?}"));
        }
        let one_two = &r.one_two_unique.found;
        match n {
            1 | 2 => {
                if !one_two.is_empty() {
                    failures.push(format!("n = {n}: [1,2] realized by {one_two:?}"));
                }
            }
            4 => {
                if one_two.len() <= 1 {
                    failures.push(format!("n = 4: [1,2] realized by only {one_two:?}"));
                }
            }
            _ => {
                let expected = genus_range::canonical_form(&if n == 3 {
                    family_r(3)
                } else {
                    concat(&family_r(3), &family_u(n - 3))
                });
                if one_two != &vec![expected.clone()] {
                    failures.push(format!(
                        "n = {n}: [1,2] realized by {one_two:?}, expected {expected}"
                    ));
                }
            }
        }
        println!(
            "       n = {n}: [0,1] by {zero_one:?}, [1,2] by {} class(es)",
            one_two.len()
        );
    }
    report(6, "conjectures for n <= 7", &failures);
}

#[test]
fn criterion_7_connected_sum_law() {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let words: Vec<ChordWord> = (1..=4).flat_map(|n| enumerate_words(n).unwrap()).collect();
    let mut pairs: Vec<(ChordWord, ChordWord)> = Vec::new();
    for a in &words {
        for b in &words {
            if a.n() + b.n() <= 8 {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let exhaustive = pairs.len();
    let mut rng = StdRng::seed_from_u64(0x5375_6d73);
    for _ in 0..100 {
        let total = rng.gen_range(2..=10);
        let left = rng.gen_range(1..total);
        pairs.push((
            random_word(left, &mut rng),
            random_word(total - left, &mut rng),
        ));
    }
    for (a, b) in &pairs {
        let law = connected_sum_law(a, b, &budget).unwrap();
        let in_range = |e: i64| e == 0 || e == 1;
        if !law.agree || !in_range(law.observed.0) || !in_range(law.observed.1) {
            failures.push(format!(
                "{a} + {b}: {} + {} -> {}, predicted {:?}, observed {:?}",
                law.left, law.right, law.combined, law.predicted, law.observed
            ));
        }
    }
    println!("       {exhaustive} enumerated pairs + 100 random pairs");
    report(7, "connected-sum law", &failures);
}

#[test]
fn criterion_8_theorem_witnesses_and_chart() {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=12usize {
        let m = n.div_ceil(2) as u32;
        for g in 0..=m {
            for g_max in g..=m {
                let case_one = g_max == 2 * g && g >= 1 && (g == 1 || g_max == m);
                let case_two = 2 * g < g_max;
                if !(case_one || case_two) {
                    assert!(theorem_construction(n, g, g_max).is_none());
                    continue;
                }
                checked += 1;
                match witness(n, g, g_max, &budget) {
                    Ok(w) => {
                        let direct = genus_range(&w.word).unwrap();
                        if direct != gr(g, g_max) || w.word.n() != n {
                            failures
                                .push(format!("({n},{g},{g_max}): {} has range {direct}", w.word));
                        }
                    }
                    Err(e) => failures.push(format!("({n},{g},{g_max}): {e}")),
                }
            }
        }
    }
    let table7 = &tables()[6].0;
    let chart = realization_chart_from_table(table7);
    for p in &chart.points {
        let realized = table7.gr_set.contains(&GenusRange { lo: p.a, hi: p.b });
        let want = if realized {
            ChartStatus::Realized
        } else {
            ChartStatus::Impossible
        };
        if p.status != want || (p.a == p.b && p.status != ChartStatus::Impossible) {
            failures.push(format!("chart 7: ({}, {}) marked {}", p.a, p.b, p.status));
        }
    }
    if chart.status(2, 4) != Some(ChartStatus::Realized)
        || chart.status(3, 4) != Some(ChartStatus::Impossible)
    {
        failures.push("chart 7: (2,4) / (3,4) statuses".to_string());
    }
    println!("       {checked} theorem cases with n <= 12 verified");
    report(8, "theorem witnesses and chart", &failures);
}
