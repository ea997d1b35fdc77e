//! One line per acceptance criterion. Run with `cargo test --test acceptance`.
//!
//! C4 is expected to fail: the transcribed E7 trail list has 76 entries and
//! the enumeration finds 78. The process exits non-zero if the set of failing
//! criteria is anything other than that.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use krpoly::affine_kr::build_kr_with;
use krpoly::exec::Mode;
use krpoly::fixtures::{self, parse_sigma, parse_tprime};
use krpoly::path_statistic::delta_embedding;
use krpoly::pbw_crystal::{PbwCrystal, SignatureTemplate};
use krpoly::suites::{self, SuiteReport};
use krpoly::trail_oracle::build_minuscule;
use krpoly::Model;

const SEED: u64 = 20240611;
const EXPECTED_FAILURES: &[&str] = &["C4"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn summarize(reports: &[SuiteReport]) -> (bool, String) {
    let cases: u64 = reports.iter().map(|r| r.cases).sum();
    let fails: Vec<&String> = reports.iter().flat_map(|r| &r.failures).collect();
    let ok = fails.is_empty();
    let mut detail = format!("{cases} cases");
    for f in fails.iter().take(4) {
        detail.push_str(&format!("; {f}"));
    }
    if fails.len() > 4 {
        detail.push_str(&format!("; ... {} more", fails.len() - 4));
    }
    (ok, detail)
}

fn c1() -> (bool, String) {
    let t = Instant::now();
    let reps: Vec<SuiteReport> = Model::ALL.iter().map(|&m| suites::words(m)).collect();
    let elapsed = t.elapsed();
    let (ok, detail) = summarize(&reps);
    // the one second budget is for optimised builds; debug builds only report it
    let fast = elapsed.as_secs_f64() < 1.0 || cfg!(debug_assertions);
    (
        ok && fast,
        format!("{detail}, {:.2}s", elapsed.as_secs_f64()),
    )
}

fn c2() -> (bool, String) {
    summarize(&Model::ALL.map(suites::signatures))
}

fn c3() -> (bool, String) {
    let mut reps = vec![suites::formula(
        Model::E6R6,
        &suites::binary_cube(Model::E6R6),
        Mode::Parallel,
    )];
    for m in Model::ALL {
        let cs = suites::random_data(m, 100_000, 4, SEED ^ m as u64);
        reps.push(suites::formula(m, &cs, Mode::Parallel));
    }
    summarize(&reps)
}

fn c4() -> (bool, String) {
    summarize(&[suites::trails(Model::E6R6), suites::trails(Model::E7R7)])
}

fn c5() -> (bool, String) {
    let mut reps = Vec::new();
    for m in Model::ALL {
        reps.push(suites::arrangement(&delta_embedding(m)));
        reps.push(suites::fibers(
            m,
            &suites::random_data(m, 10_000, 4, SEED + 5),
            Mode::Parallel,
        ));
    }
    summarize(&reps)
}

fn c6() -> (bool, String) {
    let mut reps = Vec::new();
    for (m, s_max) in [(Model::E6R1, 3), (Model::E6R6, 3), (Model::E7R7, 2)] {
        for s in 1..=s_max {
            reps.push(suites::dims(m, s));
        }
    }
    let (mut ok, mut detail) = summarize(&reps);
    for (m, want) in [(Model::E6R6, 27usize), (Model::E7R7, 56)] {
        let orbit = build_minuscule(m).len();
        ok &= orbit == want;
        detail.push_str(&format!(", orbit {m} = {orbit}"));
    }
    (ok, detail)
}

fn c7() -> (bool, String) {
    let mut reps = Vec::new();
    for (m, s_max) in [(Model::E6R1, 3), (Model::E6R6, 3), (Model::E7R7, 2)] {
        for s in 1..=s_max {
            reps.push(suites::classical(m, s));
        }
    }
    summarize(&reps)
}

fn c8() -> (bool, String) {
    let reps: Vec<SuiteReport> = Model::ALL
        .iter()
        .flat_map(|&m| {
            (1..=2).map(move |s| suites::regular(m, s, Mode::Parallel, Default::default()))
        })
        .collect();
    summarize(&reps)
}

fn c9() -> (bool, String) {
    let reps: Vec<SuiteReport> = Model::ALL
        .iter()
        .flat_map(|&m| (1..=2).map(move |s| suites::dual(m, s)))
        .collect();
    summarize(&reps)
}

fn c10() -> (bool, String) {
    let reps: Vec<SuiteReport> = [Model::E6R1, Model::E6R6]
        .iter()
        .map(|&m| suites::polytope(m, &suites::binary_cube(m), 4, Mode::Parallel))
        .collect();
    summarize(&reps)
}

/// Every single-point corruption must trip at least one suite.
fn c11() -> (bool, String) {
    let mut tried = 0;
    let mut caught = 0;
    let mut escaped = Vec::new();

    // a signature pair: moved within its list, or pointed at another root
    for m in Model::ALL {
        let fx = fixtures::load_sigma(m).expect("sigma fixture");
        for t in &fx {
            for k in 0..t.pairs.len() {
                let mut variants = Vec::new();
                if t.pairs.len() > 1 {
                    let mut bad = t.clone();
                    bad.pairs.swap(k, (k + 1) % t.pairs.len());
                    variants.push(bad);
                }
                let mut bad = t.clone();
                bad.pairs[k].1 = (bad.pairs[k].1 + 1) % m.data().m;
                variants.push(bad);
                for bad in variants {
                    tried += 1;
                    let pbw = PbwCrystal::new(m).with_template(bad.clone());
                    let hit = !suites::signatures_against(&pbw, &fx).passed();
                    if hit {
                        caught += 1;
                    } else {
                        escaped.push(format!("{m} sigma i={} pair {k}", t.i));
                    }
                }
            }
        }
        // the altered operator also breaks the crystal itself
        let t: &SignatureTemplate = &fx[0];
        let mut bad = t.clone();
        bad.pairs.swap(0, t.pairs.len() - 1);
        tried += 1;
        let broken = (1..=2).any(|s| {
            match build_kr_with(
                PbwCrystal::new(m).with_template(bad.clone()),
                s,
                Default::default(),
            ) {
                Ok(kr) => !kr.verify_regular(Mode::Parallel).is_empty(),
                Err(_) => true,
            }
        });
        if broken {
            caught += 1;
        } else {
            escaped.push(format!("{m} sigma i={} regularity", t.i));
        }
    }

    // an arrangement coordinate: each dot swapped with the next one, or
    // pushed one step left
    for m in Model::ALL {
        let arr = delta_embedding(m);
        for k in 0..arr.dots.len() {
            let mut swapped = arr.clone();
            swapped.dots.swap(k, (k + 1) % arr.dots.len());
            let mut shifted = arr.clone();
            shifted.dots[k].1 += 1;
            for bad in [swapped, shifted] {
                tried += 1;
                if !suites::arrangement(&bad).passed() {
                    caught += 1;
                } else {
                    escaped.push(format!("{m} dot {k}"));
                }
            }
        }
    }

    // a fixture line: a bit flipped in a trail, a root changed in a
    // signature line
    for m in [Model::E6R6, Model::E7R7] {
        let name = fixtures::tprime_file(m).unwrap();
        let text =
            std::fs::read_to_string(fixtures::fixtures_dir().join(name)).expect("trail fixture");
        let lines: Vec<&str> = text.lines().collect();
        for (ln, line) in lines.iter().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let flip = ln % line.len();
            let mut bad_line: Vec<u8> = line.bytes().collect();
            bad_line[flip] = if bad_line[flip] == b'0' { b'1' } else { b'0' };
            let mut bad = lines.clone();
            let owned = String::from_utf8(bad_line).unwrap();
            bad[ln] = &owned;
            tried += 1;
            let hit = match parse_tprime(&bad.join("\n")) {
                Ok(fx) => !suites::trails_against(m, &fx)
                    .failures
                    .iter()
                    .all(|f| known_gap(m, f)),
                Err(_) => true,
            };
            if hit {
                caught += 1;
            } else {
                escaped.push(format!("{name}:{}", ln + 1));
            }
        }
    }
    for m in Model::ALL {
        let name = fixtures::sigma_file(m);
        let text =
            std::fs::read_to_string(fixtures::fixtures_dir().join(name)).expect("sigma fixture");
        let lines: Vec<&str> = text.lines().collect();
        for (ln, line) in lines.iter().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            // drop the last pair of the line
            let cut = line.rfind('|').unwrap();
            let mut bad = lines.clone();
            bad[ln] = &line[..cut];
            tried += 1;
            let hit = match parse_sigma(m, &bad.join("\n")) {
                Ok(fx) => !suites::signatures_against(&PbwCrystal::new(m), &fx).passed(),
                Err(_) => true,
            };
            if hit {
                caught += 1;
            } else {
                escaped.push(format!("{name}:{}", ln + 1));
            }
        }
    }
    let detail = format!(
        "{caught}/{tried} mutations caught{}",
        if escaped.is_empty() {
            String::new()
        } else {
            format!("; escaped: {:?}", &escaped[..escaped.len().min(5)])
        }
    );
    (caught == tried, detail)
}

// The two E7 trails absent from the reference list; a mutation is only caught
// if it causes some other complaint.
fn known_gap(m: Model, failure: &str) -> bool {
    m == Model::E7R7
        && (failure.contains("111110000000000000110000111")
            || failure.contains("110000010000100100110000111"))
}

type Check = (&'static str, &'static str, fn() -> (bool, String));

fn main() -> ExitCode {
    let checks: [Check; 11] = [
        ("C1", "root and word fidelity", c1),
        ("C2", "signature templates equal fixtures", c2),
        ("C3", "path formula equals trail oracle", c3),
        ("C4", "trail fixtures", c4),
        ("C5", "family image and fiber constancy", c5),
        ("C6", "dimension counts", c6),
        ("C7", "classical isomorphism", c7),
        ("C8", "affine regularity", c8),
        ("C9", "dual relabelling", c9),
        ("C10", "polytope description", c10),
        ("C11", "negative controls", c11),
    ];
    let mut outcomes = Vec::new();
    for (id, title, run) in checks {
        let t = Instant::now();
        let (ok, detail) = run();
        let o = Outcome {
            id,
            title,
            ok,
            detail,
        };
        println!(
            "{} {} {}: {} [{:.1}s]",
            if o.ok { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        outcomes.push(o);
    }
    let failed: BTreeSet<&str> = outcomes.iter().filter(|o| !o.ok).map(|o| o.id).collect();
    let expected: BTreeSet<&str> = EXPECTED_FAILURES.iter().copied().collect();
    println!(
        "{} passed, {} failed (expected failures: {:?})",
        outcomes.len() - failed.len(),
        failed.len(),
        EXPECTED_FAILURES
    );
    if failed == expected {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome set: {failed:?}");
        ExitCode::FAILURE
    }
}
