//! The verification suite: eleven seeded, self-contained criteria, each
//! reported as one check.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{
    all_sticks, bonded_triples, example_6_8, fake_family, iota_action_check, mask_of,
    nielsen_adjacent, of3_standardness, overlap_report, potential_stick, snops,
    standard_basis_apartment, supersticks, PotentialStick, Verdict,
};
use crate::error::Result;
use crate::graphs::{fold, fold_by, iso, LabeledGraph};
use crate::oracle::{
    certificate_search, intersection_rank, lemma22_syntactic, nielsen_reduce, products,
    words_up_to, Certificate,
};
use crate::report::{Check, Report};
use crate::subgroups::{
    antipodal_af, antipodal_of_by_folding, injrad_growth, intersect, is_free_factor, Mode, Subgroup,
};
use crate::words::{Letter, Word};

pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CONFLUENCE_LIMIT: Duration = Duration::from_secs(60);
pub const FAKE_N5_LIMIT: Duration = Duration::from_secs(30);
pub const INJRAD_LIMIT: Duration = Duration::from_secs(10);

/// Length bound and element budget of the intersection oracle.
pub const INTERSECTION_RADIUS: usize = 10;
pub const INTERSECTION_BUDGET: usize = 2_000_000;

pub const CRITERIA: [&str; 11] = [
    "folding confluence",
    "membership oracle",
    "intersection oracle",
    "one-letter antipodality",
    "stick and snop counts",
    "fake family",
    "example 6.8",
    "iota action",
    "Nielsen overlap",
    "injectivity radius growth",
    "free factor certificates",
];

/// A random reduced word over `a_1..a_n` with length drawn from `lens`.
pub fn random_word(rng: &mut impl Rng, n: usize, lens: RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::new(rng.gen_range(1..=n), rng.gen_bool(0.5));
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::from_letters(out)
}

fn random_gens(
    rng: &mut impl Rng,
    n: usize,
    counts: RangeInclusive<usize>,
    max_len: usize,
) -> Vec<Word> {
    let count = rng.gen_range(counts);
    (0..count)
        .map(|_| random_word(rng, n, 1..=max_len))
        .collect()
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed()))
}

fn named(k: usize, passed: bool, detail: String) -> Check {
    Check::new(format!("{k:>2}. {}", CRITERIA[k - 1]), passed, detail)
}

pub fn c1_confluence(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let (sets, time) = timed(|| {
        for _ in 0..500 {
            let n = rng.gen_range(2..=4);
            let gens = random_gens(&mut rng, n, 1..=4, 8);
            let g = LabeledGraph::bouquet(n, &gens);
            let reference = fold(&g);
            for _ in 0..3 {
                let other = fold_by(&g, |m| rng.gen_range(0..m));
                if iso(&reference, &other, true).is_none() {
                    bad.push(format!(
                        "n={n} {}",
                        gens.iter()
                            .map(Word::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                }
            }
        }
        Ok(500)
    })?;
    let passed = bad.is_empty() && time < CONFLUENCE_LIMIT;
    Ok(named(
        1,
        passed,
        format!(
            "{sets} sets x 3 orders, {} disagreements, {:.2?}",
            bad.len(),
            time
        ),
    )
    .with_witnesses(bad))
}

pub fn c2_membership(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut bad = Vec::new();
    let (mut done, mut resampled, mut tested) = (0, 0, 0usize);
    while done < 200 {
        let n = rng.gen_range(2..=4);
        let gens = random_gens(&mut rng, n, 1..=3, 6);
        let Some(u) = nielsen_reduce(&gens, 10_000) else {
            resampled += 1;
            continue;
        };
        if u.is_empty() {
            resampled += 1;
            continue;
        }
        done += 1;
        let h = Subgroup::generated(n, &gens, true)?;
        // with a Nielsen-reduced basis, an element of length ≤ 4 is a product
        // of at most four basis elements
        let short = products(&u, 4);
        for w in words_up_to(n, 4) {
            tested += 1;
            if h.contains(&w)? != short.contains(&w) {
                bad.push(format!(
                    "{w} in <{}>",
                    gens.iter()
                        .map(Word::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ));
            }
        }
        for p in products(&gens, 4) {
            tested += 1;
            if !h.contains(&p)? {
                bad.push(format!("product {p} missed"));
            }
        }
    }
    Ok(named(
        2,
        bad.is_empty(),
        format!(
            "200 subgroups ({resampled} resampled), {tested} words, {} disagreements",
            bad.len()
        ),
    )
    .with_witnesses(bad))
}

pub fn c3_intersection(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut bad = Vec::new();
    let (mut done, mut nontrivial, mut skipped) = (0, 0, 0);
    while done < 100 {
        let n = rng.gen_range(2..=3);
        let g1 = random_gens(&mut rng, n, 1..=3, 5);
        let g2 = random_gens(&mut rng, n, 1..=3, 5);
        let h1 = Subgroup::generated(n, &g1, true)?;
        let h2 = Subgroup::generated(n, &g2, true)?;
        if h1.graph().edge_count() > 8 || h2.graph().edge_count() > 8 {
            continue;
        }
        let Some(brute) = intersection_rank(&g1, &g2, INTERSECTION_RADIUS, INTERSECTION_BUDGET)
        else {
            skipped += 1;
            continue;
        };
        done += 1;
        let graph_rank = intersect(&h1, &h2)?.based.map_or(0, |k| k.rank());
        if graph_rank > 0 {
            nontrivial += 1;
        }
        if graph_rank != brute {
            bad.push(format!(
                "{h1} ∩ {h2}: pullback {graph_rank}, brute force {brute}"
            ));
        }
    }
    Ok(named(
        3,
        bad.is_empty(),
        format!(
            "100 pairs ({nontrivial} nontrivial, {skipped} resampled), {} mismatches",
            bad.len()
        ),
    )
    .with_witnesses(bad))
}

pub fn c4_one_letter(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let mut bad = Vec::new();
    let mut positives = 0;
    for n in 3..=5 {
        let a = Subgroup::generated(n, &(1..n).map(Word::gen).collect::<Vec<_>>(), true)?;
        let mut count = 0;
        while count < 300 {
            let u = if count % 2 == 0 {
                let x = random_word(&mut rng, n - 1, 0..=5);
                let y = random_word(&mut rng, n - 1, 0..=5);
                let an = if rng.gen_bool(0.5) {
                    Word::gen(n)
                } else {
                    Word::gen_inv(n)
                };
                let mut u = &(&x * &an) * &y;
                if rng.gen_bool(0.3) {
                    u = &u * &random_word(&mut rng, n, 1..=4);
                }
                u
            } else {
                random_word(&mut rng, n, 1..=10)
            };
            if u.is_empty() {
                continue;
            }
            count += 1;
            let syntactic = lemma22_syntactic(&u, n);
            positives += usize::from(syntactic);
            if antipodal_af(&a, &u)? != syntactic {
                bad.push(format!("n={n} u={u}"));
            }
        }
    }
    Ok(named(
        4,
        bad.is_empty(),
        format!(
            "900 words ({positives} with one a_n), {} mismatches",
            bad.len()
        ),
    )
    .with_witnesses(bad))
}

pub fn c5_counts() -> Result<Check> {
    let mut wrong = Vec::new();
    let mut expect = |what: String, got: usize, want: usize| {
        if got != want {
            wrong.push(format!("{what}: got {got}, want {want}"));
        }
    };
    let af = standard_basis_apartment(3, Mode::Af)?;
    let of = af.in_mode(Mode::Of);
    expect("AF sticks n=3".into(), all_sticks(&af)?.len(), 12);
    expect("AF snops n=3".into(), snops(&af)?.snops.len(), 8);
    expect(
        "AF bonded triples n=3".into(),
        bonded_triples(&af, (1, 2, 3))?.len(),
        8,
    );
    expect("OF sticks n=3".into(), all_sticks(&of)?.len(), 6);
    expect(
        "OF bonded triples n=3".into(),
        bonded_triples(&of, (1, 2, 3))?.len(),
        4,
    );
    expect(
        "OF supersticks n=3".into(),
        supersticks(&of, (1, 2, 3))?.len(),
        8,
    );
    expect(
        "AF supersticks n=3".into(),
        supersticks(&af, (1, 2, 3))?.len(),
        24,
    );
    for n in 3..=5 {
        let pairs = n * (n - 1) / 2;
        let af = standard_basis_apartment(n, Mode::Af)?;
        expect(
            format!("AF sticks n={n}"),
            all_sticks(&af)?.len(),
            4 * pairs,
        );
        expect(
            format!("OF sticks n={n}"),
            all_sticks(&af.in_mode(Mode::Of))?.len(),
            2 * pairs,
        );
        expect(format!("AF snops n={n}"), snops(&af)?.snops.len(), 1 << n);
    }
    let passed = wrong.is_empty();
    Ok(named(5, passed, "n = 3..5".into()).with_witnesses(wrong))
}

pub fn c6_fake_family() -> Result<Check> {
    let mut notes = Vec::new();
    let mut passed = true;
    let mut n5 = Duration::ZERO;
    for n in 3..=5 {
        let (f, time) = timed(|| fake_family(n))?;
        if n == 5 {
            n5 = time;
        }
        if !f.passed() {
            passed = false;
            notes.extend(f.report.failures().map(|c| format!("n={n}: {}", c.name)));
        }
    }
    passed &= n5 < FAKE_N5_LIMIT;
    Ok(named(
        6,
        passed,
        format!("n = 3, 4, 5 pass and fake; n=5 in {n5:.2?}"),
    )
    .with_witnesses(notes))
}

pub fn c7_example_6_8(bound: usize) -> Result<Check> {
    let ap = example_6_8()?;
    let face = ap.vertex(mask_of(&[1, 2]))?;
    let antipodal = antipodal_of_by_folding(face.subgroup(), &Word::gen(3))?;
    let stick = potential_stick(&ap, mask_of(&[1, 2]), bound)?;
    let verdict = of3_standardness(&ap, bound)?.verdict;
    let passed = antipodal && matches!(stick, PotentialStick::Absent) && verdict == Verdict::Fake;
    Ok(named(
        7,
        passed,
        format!(
            "antipodal by folding: {antipodal}, potential stick: {stick:?}, verdict: {verdict:?}"
        ),
    ))
}

pub fn c8_iota() -> Result<Check> {
    let mut notes = Vec::new();
    for n in [3, 4] {
        let r = iota_action_check(&standard_basis_apartment(n, Mode::Of)?)?;
        notes.extend(r.failures().map(|c| format!("n={n}: {}", c.name)));
    }
    Ok(named(8, notes.is_empty(), "n = 3, 4".into()).with_witnesses(notes))
}

pub fn c9_overlap() -> Result<Check> {
    let mut notes = Vec::new();
    for n in [3, 4] {
        for mode in [Mode::Af, Mode::Of] {
            let d0 = standard_basis_apartment(n, mode)?;
            let d1 = nielsen_adjacent(&d0, 1, 2)?;
            let o = overlap_report(&d0, &d1)?;
            let r = o.report();
            notes.extend(r.failures().map(|c| format!("n={n} {mode}: {}", c.name)));
        }
    }
    Ok(named(9, notes.is_empty(), "n = 3, 4 in AF and OF".into()).with_witnesses(notes))
}

pub fn c10_injrad() -> Result<Check> {
    let a = Subgroup::generated(3, &[Word::gen(1)], true)?;
    let (girths, time) = timed(|| injrad_growth(3, &a, 12))?;
    let running: Vec<usize> = girths
        .iter()
        .scan(0, |m, &g| {
            *m = (*m).max(g);
            Some(*m)
        })
        .collect();
    let top = *running.last().unwrap_or(&0);
    let passed = top >= 3
        && running.windows(2).all(|w| w[0] <= w[1])
        && top > girths[0]
        && time < INJRAD_LIMIT;
    Ok(named(
        10,
        passed,
        format!("girths {girths:?} in {time:.2?}"),
    ))
}

/// The 50 subgroups of `F_3` used by the free factor comparison: sticks
/// and supersticks of the standard apartment, then a mixed list.
pub fn factor_corpus() -> Result<Vec<(Subgroup, Option<bool>)>> {
    let af = standard_basis_apartment(3, Mode::Af)?;
    let mut out: Vec<(Subgroup, Option<bool>)> = Vec::new();
    for s in all_sticks(&af)? {
        out.push((Subgroup::generated(3, &[s.word], true)?, Some(true)));
    }
    for s in supersticks(&af, (1, 2, 3))? {
        out.push((Subgroup::generated(3, &[s.word], true)?, Some(true)));
    }
    for text in [
        "abbc", "aabAc", "cab", "bcB", "a,b", "ab,c", "a,bcB", "ac,bc",
    ] {
        out.push((Subgroup::parse(3, text, true)?, None));
    }
    for text in ["aa", "abAB", "aabAB", "abab", "aa,b", "abAB,c"] {
        out.push((Subgroup::parse(3, text, true)?, Some(false)));
    }
    Ok(out)
}

pub fn c11_certificates() -> Result<Check> {
    let corpus = factor_corpus()?;
    let mut bad = Vec::new();
    let mut primitive = 0;
    for (h, required) in &corpus {
        let whitehead = is_free_factor(h)?.is_some();
        let cert = certificate_search(h, 2)?;
        let certified = matches!(cert, Certificate::Factor(_));
        primitive += usize::from(whitehead);
        if whitehead != certified || required.is_some_and(|r| r != whitehead) {
            bad.push(format!("{h}: whitehead {whitehead}, certificate {cert:?}"));
        }
    }
    Ok(named(
        11,
        bad.is_empty(),
        format!(
            "{} cases, {primitive} free factors, {} disagreements",
            corpus.len(),
            bad.len()
        ),
    )
    .with_witnesses(bad))
}

/// Runs criterion `k` (1-based).
pub fn criterion(k: usize, seed: u64, bound: usize) -> Result<Check> {
    match k {
        1 => c1_confluence(seed),
        2 => c2_membership(seed),
        3 => c3_intersection(seed),
        4 => c4_one_letter(seed),
        5 => c5_counts(),
        6 => c6_fake_family(),
        7 => c7_example_6_8(bound),
        8 => c8_iota(),
        9 => c9_overlap(),
        10 => c10_injrad(),
        11 => c11_certificates(),
        _ => Err(crate::error::Error::Precondition(format!(
            "no criterion {k}"
        ))),
    }
}

/// Every criterion, with errors reported as failures.
pub fn run_all(seed: u64, bound: usize) -> Report {
    let mut r = Report::new(format!("suite seed={seed} bound={bound}"));
    for k in 1..=CRITERIA.len() {
        let check =
            criterion(k, seed, bound).unwrap_or_else(|e| named(k, false, format!("error: {e}")));
        r.push(check);
    }
    r
}
