use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use krpoly::affine_kr::{build_kr_with, KrCrystal, Membership};
use krpoly::exec::Mode;
use krpoly::export::{to_dot, to_json};
use krpoly::path_statistic::{delta_embedding, enumerate_families, render};
use krpoly::pbw_crystal::PbwCrystal;
use krpoly::root_system::{CartanType, RootSystem};
use krpoly::suites::{self, SuiteReport};
use krpoly::trail_oracle::j0;
use krpoly::word_engine::{
    builtin_i0, builtin_ij, builtin_ij_star, minuscule_nodes, simply_braided_script,
};
use krpoly::Model;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "krpoly",
    version,
    about = "Kirillov-Reshetikhin crystals of types E6 and E7 from Lusztig data"
)]
struct Cli {
    /// directory holding the reference data (overrides KRPOLY_FIXTURES)
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// run every sweep on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct Pick {
    /// Cartan type: E6 or E7 (A<n>, D<n> accepted by `words`/`roots`)
    #[arg(long = "type")]
    kind: Option<String>,
    /// minuscule node r
    #[arg(long)]
    node: Option<usize>,
}

impl Pick {
    fn kind(&self) -> Result<Option<CartanType>> {
        self.kind
            .as_deref()
            .map(CartanType::parse)
            .transpose()
            .map_err(Into::into)
    }

    /// The selected models; all three when nothing is given.
    fn models(&self) -> Result<Vec<Model>> {
        match (self.kind()?, self.node) {
            (None, None) => Ok(Model::ALL.to_vec()),
            (None, Some(_)) => bail!("--node needs --type"),
            (Some(k), Some(n)) => Ok(vec![Model::new(k, n)?]),
            (Some(k), None) => {
                let v: Vec<Model> = Model::ALL
                    .iter()
                    .copied()
                    .filter(|m| m.kind() == k)
                    .collect();
                if v.is_empty() {
                    bail!("no model of type {k}");
                }
                Ok(v)
            }
        }
    }

    fn model(&self) -> Result<Model> {
        match self.models()?.as_slice() {
            [m] => Ok(*m),
            _ => bail!("pick one model with --type and --node"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WordKind {
    /// minimal coset representative
    Ij,
    /// Levi tail
    IjStar,
    I0,
    J0,
    /// moves bringing --letter to the front
    Script,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Words,
    Signatures,
    Arrangement,
    Trails,
    Formula,
    Polytope,
    Fibers,
    Dims,
    Classical,
    Regular,
    Dual,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// print a built-in reduced word
    Words {
        #[command(flatten)]
        pick: Pick,
        #[arg(long = "word", value_enum, default_value = "ij")]
        which: WordKind,
        #[arg(long)]
        letter: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// list positive roots (in the convex order when a node is given)
    Roots {
        #[command(flatten)]
        pick: Pick,
    },
    /// build B^{r,s} and write it as JSON
    Build {
        #[command(flatten)]
        pick: Pick,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// decide membership with the trail program instead of the path formula
        #[arg(long)]
        audit: bool,
    },
    /// run verification suites; exits non-zero on any failure
    Verify {
        #[command(flatten)]
        pick: Pick,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// largest s for the crystal suites
        #[arg(long, default_value_t = 2)]
        s: u32,
        /// sweep every 0/1 datum (E6 only) in the formula and polytope suites
        #[arg(long)]
        exhaustive01: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_entry: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// use the trail program for membership in the regular suite
        #[arg(long)]
        audit: bool,
        /// report runtime_ms as 0 so reports compare byte for byte
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// write B^{r,s} as DOT or JSON
    Export {
        #[command(flatten)]
        pick: Pick,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// draw path families over the arrangement
    Families {
        #[command(flatten)]
        pick: Pick,
        /// draw only this family
        #[arg(long)]
        index: Option<usize>,
        /// print the number of families and distinct images only
        #[arg(long)]
        count: bool,
    },
}

#[derive(Serialize)]
struct Report {
    suite: String,
    cases: u64,
    failures: Vec<String>,
    seed: u64,
    runtime_ms: u128,
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(model: Model, s: u32, audit: bool) -> Result<KrCrystal> {
    let membership = if audit {
        Membership::Trails
    } else {
        Membership::Paths
    };
    Ok(build_kr_with(PbwCrystal::new(model), s, membership)?)
}

fn words(pick: &Pick, kind: WordKind, letter: Option<usize>, json: bool) -> Result<()> {
    let ct = pick.kind()?.context("--type is required")?;
    let nodes = match pick.node {
        Some(n) => vec![n],
        None => minuscule_nodes(ct),
    };
    for r in nodes {
        let letters = match kind {
            WordKind::Ij => builtin_ij(ct, r)?.letters,
            WordKind::IjStar => builtin_ij_star(ct, r)?.letters,
            WordKind::I0 => builtin_i0(ct, r)?.letters,
            WordKind::J0 => j0(Model::new(ct, r)?),
            WordKind::Script => {
                let i = letter.context("--letter is required for a script")?;
                let sc = simply_braided_script(ct, r, i)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&sc)?);
                } else {
                    let rs = RootSystem::new(ct)?;
                    println!(
                        "{ct} r={r} letter {i} (Levi letter {}): {} moves",
                        sc.levi_letter,
                        sc.moves.len()
                    );
                    for t in &sc.triples {
                        println!(
                            "  {} {} {}",
                            rs.format_root(&t[0]),
                            rs.format_root(&t[1]),
                            rs.format_root(&t[2])
                        );
                    }
                    println!("{}", join(&sc.result));
                }
                continue;
            }
        };
        if json {
            println!("{}", serde_json::to_string(&letters)?);
        } else {
            println!("{ct} r={r}: {}", join(&letters));
        }
    }
    Ok(())
}

fn join(w: &[usize]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn roots(pick: &Pick) -> Result<()> {
    let ct = pick.kind()?.context("--type is required")?;
    let (rs, list, m) = match pick.node {
        Some(n) => {
            let d = Model::new(ct, n)?.data();
            (RootSystem::new(ct)?, d.roots.clone(), Some(d.m))
        }
        None => {
            let rs = RootSystem::new(ct)?;
            let list = rs.positive_roots().to_vec();
            (rs, list, None)
        }
    };
    for (k, b) in list.iter().enumerate() {
        let mark = if m.is_some_and(|m| k < m) { " *" } else { "" };
        println!("{:>3} {}{mark}", k + 1, rs.format_root(b));
    }
    println!("{} positive roots", list.len());
    Ok(())
}

struct VerifyOpts {
    suite: Suite,
    s: u32,
    exhaustive01: bool,
    samples: usize,
    max_entry: u32,
    seed: u64,
    audit: bool,
    mode: Mode,
}

fn run_suite(model: Model, suite: Suite, o: &VerifyOpts) -> Result<SuiteReport> {
    let data = |salt: u64| -> Result<Vec<Vec<u32>>> {
        if o.exhaustive01 {
            if model.kind() != CartanType::E6 {
                bail!("--exhaustive01 is only available for E6");
            }
            Ok(suites::binary_cube(model))
        } else {
            Ok(suites::random_data(
                model,
                o.samples,
                o.max_entry,
                o.seed.wrapping_add(salt),
            ))
        }
    };
    let mut rep = match suite {
        Suite::Words => suites::words(model),
        Suite::Signatures => suites::signatures(model),
        Suite::Arrangement => suites::arrangement(&delta_embedding(model)),
        Suite::Trails => suites::trails(model),
        Suite::Formula => suites::formula(model, &data(0)?, o.mode),
        Suite::Polytope => suites::polytope(model, &data(1)?, o.s.max(1) + 1, o.mode),
        Suite::Fibers => suites::fibers(model, &data(2)?, o.mode),
        Suite::Dims | Suite::Classical | Suite::Regular | Suite::Dual => {
            let mut all = SuiteReport {
                suite: String::new(),
                cases: 0,
                failures: Vec::new(),
            };
            let membership = if o.audit {
                Membership::Trails
            } else {
                Membership::Paths
            };
            for s in 1..=o.s {
                all.merge(match suite {
                    Suite::Dims => suites::dims(model, s),
                    Suite::Classical => suites::classical(model, s),
                    Suite::Regular => suites::regular(model, s, o.mode, membership),
                    _ => suites::dual(model, s),
                });
            }
            all
        }
        Suite::All => unreachable!(),
    };
    rep.suite = name(suite).to_string();
    Ok(rep)
}

fn name(s: Suite) -> &'static str {
    match s {
        Suite::Words => "words",
        Suite::Signatures => "signatures",
        Suite::Arrangement => "arrangement",
        Suite::Trails => "trails",
        Suite::Formula => "formula",
        Suite::Polytope => "polytope",
        Suite::Fibers => "fibers",
        Suite::Dims => "dims",
        Suite::Classical => "classical",
        Suite::Regular => "regular",
        Suite::Dual => "dual",
        Suite::All => "all",
    }
}

fn verify(pick: &Pick, o: VerifyOpts, no_timing: bool, out: Option<&PathBuf>) -> Result<bool> {
    let start = Instant::now();
    let models = pick.models()?;
    let list: Vec<Suite> = if o.suite == Suite::All {
        let mut v = vec![
            Suite::Words,
            Suite::Signatures,
            Suite::Arrangement,
            Suite::Trails,
            Suite::Formula,
        ];
        v.extend([
            Suite::Fibers,
            Suite::Dims,
            Suite::Classical,
            Suite::Regular,
            Suite::Dual,
        ]);
        v
    } else {
        vec![o.suite]
    };
    let mut total = SuiteReport {
        suite: name(o.suite).to_string(),
        cases: 0,
        failures: Vec::new(),
    };
    for &m in &models {
        for &s in &list {
            let rep = run_suite(m, s, &o)?;
            eprintln!(
                "{} {m} {}: {} cases",
                if rep.passed() { "PASS" } else { "FAIL" },
                rep.suite,
                rep.cases
            );
            total.merge(rep);
        }
    }
    let report = Report {
        suite: total.suite,
        cases: total.cases,
        failures: total.failures,
        seed: o.seed,
        runtime_ms: if no_timing {
            0
        } else {
            start.elapsed().as_millis()
        },
    };
    let ok = report.failures.is_empty();
    write_out(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    eprintln!("{}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn families(pick: &Pick, index: Option<usize>, count: bool) -> Result<()> {
    let model = pick.model()?;
    let arr = delta_embedding(model);
    let fams = enumerate_families(model);
    if count {
        let images: std::collections::BTreeSet<_> = fams
            .iter()
            .map(|f| krpoly::trail_oracle::psi(model, f))
            .collect();
        println!(
            "{model}: {} families, {} distinct arrays",
            fams.len(),
            images.len()
        );
        return Ok(());
    }
    let chosen: Vec<usize> = match index {
        Some(k) if k < fams.len() => vec![k],
        Some(k) => bail!("{model} has {} families, no index {k}", fams.len()),
        None => (0..fams.len()).collect(),
    };
    for k in chosen {
        println!("#{k} {:?}", fams[k].kind);
        println!("{}", render(&arr, Some(&fams[k])));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(dir) = &cli.fixtures {
        std::env::set_var(krpoly::fixtures::ENV_VAR, dir);
    }
    let mode = if cli.sequential {
        Mode::Sequential
    } else {
        Mode::Parallel
    };
    match cli.cmd {
        Cmd::Words {
            pick,
            which,
            letter,
            json,
        } => words(&pick, which, letter, json)?,
        Cmd::Roots { pick } => roots(&pick)?,
        Cmd::Build {
            pick,
            s,
            out,
            audit,
        } => {
            let model = pick.model()?;
            let kr = build(model, s, audit)?;
            write_out(out.as_ref(), &(to_json(&kr)? + "\n"))?;
            eprintln!("{model} s={s}: {} elements", kr.len());
        }
        Cmd::Verify {
            pick,
            suite,
            s,
            exhaustive01,
            samples,
            max_entry,
            seed,
            audit,
            no_timing,
            out,
        } => {
            let o = VerifyOpts {
                suite,
                s,
                exhaustive01,
                samples,
                max_entry,
                seed,
                audit,
                mode,
            };
            return verify(&pick, o, no_timing, out.as_ref());
        }
        Cmd::Export {
            pick,
            s,
            format,
            out,
        } => {
            let kr = build(pick.model()?, s, false)?;
            let text = match format {
                Format::Dot => to_dot(&kr)?,
                Format::Json => to_json(&kr)? + "\n",
            };
            write_out(out.as_ref(), &text)?;
        }
        Cmd::Families { pick, index, count } => families(&pick, index, count)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
