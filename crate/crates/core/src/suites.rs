//! Verification suites shared by the command line and the test targets.
//! Each returns a case count and a list of failure messages.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::affine_kr::{build_kr, build_kr_with, classical_check, dual_relabel_check, Membership};
use crate::exec::{self, Mode};
use crate::fixtures::{self, TprimeFixture};
use crate::model::Model;
use crate::path_statistic::{
    arrow_defects, delta_embedding, enumerate_families, eps_star_paths_batch, family_norm,
    Arrangement,
};
use crate::pbw_crystal::{sigma_template_on, PbwCrystal, SignatureTemplate};
use crate::root_system::RootSystem;
use crate::trail_oracle::{eps_star_trails, psi_on, tprime_arrays, TrailArray, TrailSystem};
use crate::word_engine::{builtin_i0, builtin_ij, is_reduced, k_star, simply_braided_script};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }
}

/// Pairs `(a, b)` with `beta_a + beta_b` a root sitting strictly between them.
pub fn convexity_defects(rs: &RootSystem, order: &[Vec<i32>]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let sum: Vec<i32> = order[a].iter().zip(&order[b]).map(|(x, y)| x + y).collect();
            if rs.is_positive_root(&sum) {
                match order.iter().position(|g| *g == sum) {
                    Some(c) if a < c && c < b => {}
                    _ => bad.push((a, b)),
                }
            }
        }
    }
    bad
}

/// Root counts, reducedness, convexity, and the letter-to-front scripts.
pub fn words(model: Model) -> SuiteReport {
    let mut rep = SuiteReport::new("words");
    let data = model.data();
    let (kind, r) = (model.kind(), model.node());
    let (n, m) = match model {
        Model::E7R7 => (63, 27),
        _ => (36, 16),
    };
    rep.check(data.rs.positive_roots().len() == n, || {
        format!("{model}: {} positive roots", data.rs.positive_roots().len())
    });
    rep.check(data.m == m, || {
        format!("{model}: nilradical has {} roots", data.m)
    });
    for (name, w) in [("i^J", builtin_ij(kind, r)), ("i_0", builtin_i0(kind, r))] {
        let ok = w.as_ref().is_ok_and(|w| is_reduced(&data.rs, &w.letters));
        rep.check(ok, || format!("{model}: {name} not reduced"));
    }
    let bad = convexity_defects(&data.rs, &data.roots);
    rep.check(bad.is_empty(), || {
        format!("{model}: convexity fails at {:?}", &bad[..bad.len().min(3)])
    });
    for &i in &data.levi {
        match simply_braided_script(kind, r, i) {
            Ok(sc) => {
                let replay = sc.replay(&data.rs);
                rep.check(replay.as_ref().is_ok_and(|w| *w == sc.result), || {
                    format!("{model} i={i}: replay differs")
                });
                rep.check(
                    sc.result.first() == Some(&i) && is_reduced(&data.rs, &sc.result),
                    || format!("{model} i={i}: result does not start with {i}"),
                );
                rep.check(
                    k_star(kind, r, sc.levi_letter).is_ok_and(|ks| ks == i),
                    || format!("{model} i={i}: k* mismatch"),
                );
                let alpha = data.rs.simple_root(i);
                let shaped = sc.triples.iter().all(|[g, g1, g2]| {
                    *g2 == alpha
                        && g.iter()
                            .zip(&alpha)
                            .map(|(x, y)| x + y)
                            .eq(g1.iter().copied())
                        && data.rs.is_positive_root(g)
                });
                rep.check(shaped, || {
                    format!("{model} i={i}: braid triple is not (gamma, gamma + alpha_i, alpha_i)")
                });
                let pairs: Vec<(Vec<i32>, Vec<i32>)> = sc
                    .triples
                    .iter()
                    .filter(|[g, _, _]| data.roots[..data.m].contains(g))
                    .map(|[g, g1, _]| (g1.clone(), g.clone()))
                    .collect();
                let tmpl = PbwCrystal::new(model).template(i).cloned();
                let from_template: Option<Vec<(Vec<i32>, Vec<i32>)>> = tmpl.map(|t| {
                    t.pairs
                        .iter()
                        .map(|&(a, b)| (data.roots[a].clone(), data.roots[b].clone()))
                        .collect()
                });
                rep.check(from_template.as_ref() == Some(&pairs), || {
                    format!("{model} i={i}: script triples disagree with the template")
                });
            }
            Err(e) => rep.check(false, || format!("{model} i={i}: {e}")),
        }
    }
    rep
}

/// Templates of `pbw` against the transcribed ones.
pub fn signatures_against(pbw: &PbwCrystal, fixture: &[SignatureTemplate]) -> SuiteReport {
    let mut rep = SuiteReport::new("signatures");
    let model = pbw.model;
    for &i in &model.data().levi {
        let want = fixture.iter().find(|t| t.i == i);
        let got = pbw.template(i);
        rep.check(want.is_some() && want == got, || {
            format!("{model} i={i}: template differs from fixture")
        });
    }
    rep
}

pub fn signatures(model: Model) -> SuiteReport {
    match fixtures::load_sigma(model) {
        Ok(fx) => signatures_against(&PbwCrystal::new(model), &fx),
        Err(e) => {
            let mut rep = SuiteReport::new("signatures");
            rep.check(false, || e.to_string());
            rep
        }
    }
}

/// Arrow consistency of a dot placement, templates read off it against the
/// fixtures, and the image of the families under it against the trails.
pub fn arrangement(arr: &Arrangement) -> SuiteReport {
    let mut rep = SuiteReport::new("arrangement");
    let model = arr.model;
    let defects = arrow_defects(arr);
    rep.check(defects.is_empty(), || {
        format!("{model}: {} arrow defects", defects.len())
    });
    match fixtures::load_sigma(model) {
        Ok(fx) => {
            for &i in &model.data().levi {
                let t = sigma_template_on(arr, i).ok();
                rep.check(
                    t.is_some() && t.as_ref() == fx.iter().find(|f| f.i == i),
                    || format!("{model} i={i}: template from the arrangement differs from fixture"),
                );
            }
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    let image: BTreeSet<TrailArray> = enumerate_families(model)
        .iter()
        .map(|f| psi_on(arr, f))
        .collect();
    let target: BTreeSet<TrailArray> = tprime_arrays(model).iter().cloned().collect();
    rep.check(image == target, || {
        format!(
            "{model}: family image has {} arrays, trail set {}",
            image.len(),
            target.len()
        )
    });
    rep
}

/// Enumerated trails against a transcribed list.
pub fn trails_against(model: Model, fixture: &TprimeFixture) -> SuiteReport {
    let mut rep = SuiteReport::new("trails");
    let ts = TrailSystem::get(model);
    let cut = ts.n() - ts.m();
    let found: BTreeSet<TrailArray> = tprime_arrays(model).iter().cloned().collect();
    match fixture.arrays(&ts.word[cut..]) {
        Ok(list) => {
            let printed: BTreeSet<TrailArray> = list.iter().cloned().collect();
            rep.check(printed.len() == list.len(), || {
                format!("{model}: fixture repeats a trail")
            });
            for a in found.difference(&printed) {
                rep.check(false, || {
                    format!("{model}: trail {} missing from fixture", suffix_string(a))
                });
            }
            for a in printed.difference(&found) {
                rep.check(false, || {
                    format!("{model}: fixture trail {} is not a trail", suffix_string(a))
                });
            }
            rep.check(true, String::new);
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    rep
}

fn suffix_string(a: &[u8]) -> String {
    a.iter().rev().map(|d| char::from(b'0' + d)).collect()
}

pub fn trails(model: Model) -> SuiteReport {
    let mut rep = SuiteReport::new("trails");
    let ts = TrailSystem::get(model);
    rep.check(ts.prefix_trail().is_ok(), || {
        format!("{model}: prefix trail is not unique")
    });
    match fixtures::load_tprime(model) {
        Ok(Some(fx)) => rep.merge(trails_against(model, &fx)),
        // node 1 of E6 has no reference list; the diagram flip must give the
        // same arrays as node 6
        Ok(None) => {
            let other = tprime_arrays(model.dual());
            rep.check(tprime_arrays(model) == other, || {
                format!("{model}: trails differ from the flipped node")
            });
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    rep
}

pub fn random_data(model: Model, count: usize, max: u32, seed: u64) -> Vec<Vec<u32>> {
    let m = model.data().m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..m).map(|_| rng.random_range(0..=max)).collect())
        .collect()
}

pub fn binary_cube(model: Model) -> Vec<Vec<u32>> {
    let m = model.data().m;
    assert!(m <= 20, "cube too large");
    (0u32..1 << m)
        .map(|bits| (0..m).map(|k| bits >> k & 1).collect())
        .collect()
}

/// Path formula against the trail program.
pub fn formula(model: Model, cs: &[Vec<u32>], mode: Mode) -> SuiteReport {
    let mut rep = SuiteReport::new("formula");
    let paths = eps_star_paths_batch(model, cs, mode);
    let trails = TrailSystem::get(model).eps_star_batch(cs, mode);
    rep.cases = cs.len() as u64;
    for ((c, a), b) in cs
        .iter()
        .zip(&paths)
        .zip(&trails)
        .filter(|((_, a), b)| a != b)
        .take(20)
    {
        rep.failures
            .push(format!("{model}: c={c:?} paths {a} trails {b}"));
    }
    rep
}

/// `{eps_star <= s}` (trail program) against "every family norm <= s".
pub fn polytope(model: Model, cs: &[Vec<u32>], s_max: u32, mode: Mode) -> SuiteReport {
    let mut rep = SuiteReport::new("polytope");
    let arr = delta_embedding(model);
    let fams = enumerate_families(model);
    let bad = exec::count(mode, cs, |c| {
        let e = eps_star_trails(model, c);
        let worst = fams
            .iter()
            .map(|f| family_norm(c, f, &arr))
            .max()
            .unwrap_or(0);
        (0..=s_max).any(|s| (e <= s) != (worst <= s))
    });
    rep.cases = cs.len() as u64;
    if bad > 0 {
        rep.failures.push(format!("{model}: {bad} data disagree"));
    }
    rep
}

/// Families with the same image have the same norm.
pub fn fibers(model: Model, cs: &[Vec<u32>], mode: Mode) -> SuiteReport {
    let mut rep = SuiteReport::new("fibers");
    let arr = delta_embedding(model);
    let fams = enumerate_families(model);
    let images: Vec<TrailArray> = fams.iter().map(|f| psi_on(&arr, f)).collect();
    let bad = exec::count(mode, cs, |c| {
        let mut seen = std::collections::HashMap::new();
        fams.iter().zip(&images).any(|(f, img)| {
            let v = family_norm(c, f, &arr);
            *seen.entry(img.clone()).or_insert(v) != v
        })
    });
    rep.cases = cs.len() as u64;
    if bad > 0 {
        rep.failures.push(format!(
            "{model}: norm not constant on a fiber for {bad} data"
        ));
    }
    rep
}

/// Sizes against the Weyl dimension formula, built once with each statistic.
pub fn dims(model: Model, s: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("dims");
    for membership in [Membership::Paths, Membership::Trails] {
        let built = build_kr_with(PbwCrystal::new(model), s, membership);
        rep.check(built.is_ok(), || {
            format!(
                "{model} s={s} {membership:?}: {}",
                built
                    .as_ref()
                    .err()
                    .map(|e| e.to_string())
                    .unwrap_or_default()
            )
        });
    }
    rep
}

pub fn classical(model: Model, s: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("classical");
    match build_kr(model, s) {
        Ok(kr) => {
            let res = classical_check(&kr);
            rep.check(res.is_ok(), || {
                format!("{model} s={s}: {}", res.err().unwrap_or_default())
            });
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    rep
}

pub fn regular(model: Model, s: u32, mode: Mode, membership: Membership) -> SuiteReport {
    let mut rep = SuiteReport::new("regular");
    match build_kr_with(PbwCrystal::new(model), s, membership) {
        Ok(kr) => {
            let v = kr.verify_regular(mode);
            rep.cases = (kr.len() * (kr.rank() + 1)) as u64;
            rep.failures.extend(v.iter().take(20).map(|x| {
                format!(
                    "{model} s={s}: element {} label {}: {}",
                    x.element, x.label, x.what
                )
            }));
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    rep
}

pub fn dual(model: Model, s: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("dual");
    match build_kr(model, s) {
        Ok(kr) => {
            let res = dual_relabel_check(&kr);
            rep.check(res.is_ok(), || {
                format!("{model} s={s}: {}", res.err().unwrap_or_default())
            });
        }
        Err(e) => rep.check(false, || e.to_string()),
    }
    rep
}
