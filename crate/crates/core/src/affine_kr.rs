//! `B^{r,s}` realised on `{c : eps_star(c) <= s}` with the extra 0-arrows
//! `e_0 c = c + 1_theta`, `f_0 c = c - 1_theta`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use crate::exec::{self, Mode};
use crate::hw_oracle::{crystal_isomorphic, tensor_component, CrystalGraph};
use crate::model::Model;
use crate::path_statistic::eps_star_paths;
use crate::pbw_crystal::{LusztigDatum, PbwCrystal};
use crate::root_system::Weight;
use crate::trail_oracle::eps_star_trails;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Membership {
    /// path formula
    #[default]
    Paths,
    /// trail dynamic program (audit)
    Trails,
}

impl Membership {
    pub fn eps_star(self, model: Model, c: &[u32]) -> u32 {
        match self {
            Membership::Paths => eps_star_paths(model, c),
            Membership::Trails => eps_star_trails(model, c),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KrCrystal {
    pub model: Model,
    pub s: u32,
    /// sorted lexicographically
    pub elements: Vec<LusztigDatum>,
    pub index: HashMap<LusztigDatum, usize>,
    /// `f[label][v]`, labels 0..=rank
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
    pbw: PbwCrystal,
}

/// Raw operator on data, before the membership cut.
fn raw(pbw: &PbwCrystal, c: &[u32], label: usize, lower: bool) -> Option<LusztigDatum> {
    let th = pbw.data().theta_pos();
    match (label, lower) {
        (0, true) => (c[th] > 0).then(|| {
            let mut d = c.to_vec();
            d[th] -= 1;
            d
        }),
        (0, false) => {
            let mut d = c.to_vec();
            d[th] += 1;
            Some(d)
        }
        (i, true) => pbw.f(c, i),
        (i, false) => pbw.e(c, i),
    }
}

pub fn build_kr(model: Model, s: u32) -> Result<KrCrystal, Error> {
    build_kr_with(PbwCrystal::new(model), s, Membership::Paths)
}

/// Breadth-first closure of `c = 0` under all `e_i, f_i` (`i` in `0..=rank`),
/// each result kept only if it stays in the set. The size is checked
/// against the Weyl dimension formula.
pub fn build_kr_with(pbw: PbwCrystal, s: u32, membership: Membership) -> Result<KrCrystal, Error> {
    let model = pbw.model;
    let data = model.data();
    let rank = data.rank();
    let zero = vec![0u32; data.m];
    let mut seen: HashMap<LusztigDatum, usize> = HashMap::from([(zero.clone(), 0)]);
    let mut found = vec![zero];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for label in 0..=rank {
            for lower in [true, false] {
                let Some(d) = raw(&pbw, &found[v], label, lower) else {
                    continue;
                };
                if seen.contains_key(&d) || membership.eps_star(model, &d) > s {
                    continue;
                }
                seen.insert(d.clone(), found.len());
                found.push(d);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort();
    let index: HashMap<LusztigDatum, usize> = found
        .iter()
        .enumerate()
        .map(|(k, c)| (c.clone(), k))
        .collect();
    let table = |lower: bool| -> Vec<Vec<Option<usize>>> {
        (0..=rank)
            .map(|label| {
                found
                    .iter()
                    .map(|c| raw(&pbw, c, label, lower).and_then(|d| index.get(&d).copied()))
                    .collect()
            })
            .collect()
    };
    let (f, e) = (table(true), table(false));
    let kr = KrCrystal {
        model,
        s,
        elements: found,
        index,
        f,
        e,
        pbw,
    };
    let expected = kr.expected_size();
    if BigUint::from(kr.len()) != expected {
        return Err(Error::Mismatch(format!(
            "{model} s={s}: {} elements, Weyl dimension {expected}",
            kr.len()
        )));
    }
    Ok(kr)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub element: usize,
    pub label: usize,
    pub what: String,
}

impl KrCrystal {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.model.data().rank()
    }

    pub fn expected_size(&self) -> BigUint {
        let data = self.model.data();
        let mut lambda = vec![0; data.rank()];
        lambda[data.node - 1] = self.s as i32;
        data.rs.weyl_dim(&lambda).expect("dominant")
    }

    pub fn f(&self, label: usize, v: usize) -> Option<usize> {
        self.f[label][v]
    }

    pub fn e(&self, label: usize, v: usize) -> Option<usize> {
        self.e[label][v]
    }

    /// Overwrite one `f`-edge (and leave `e` alone); used for negative controls.
    pub fn override_edge(&mut self, label: usize, v: usize, target: Option<usize>) {
        self.f[label][v] = target;
    }

    pub fn wt(&self, v: usize) -> Weight {
        self.pbw.wt(&self.elements[v], self.s)
    }

    /// `<wt, h_i>`, with `<lambda, h_0> = -<lambda, theta^vee>`.
    pub fn pairing(&self, v: usize, label: usize) -> i32 {
        let w = self.wt(v);
        if label == 0 {
            -self
                .model
                .data()
                .rs
                .pairing_coroot(&w, &self.model.data().theta)
        } else {
            w[label - 1]
        }
    }

    pub fn eps(&self, v: usize, label: usize) -> i32 {
        if label == 0 {
            self.phi(v, 0) - self.pairing(v, 0)
        } else {
            self.pbw.eps(&self.elements[v], label)
        }
    }

    pub fn phi(&self, v: usize, label: usize) -> i32 {
        if label == 0 {
            self.elements[v][self.model.data().theta_pos()] as i32
        } else {
            self.pbw.phi(&self.elements[v], label, self.s)
        }
    }

    fn run(&self, v: usize, label: usize, lower: bool) -> usize {
        let table = if lower { &self.f } else { &self.e };
        let mut k = 0;
        let mut cur = v;
        while let Some(w) = table[label][cur] {
            cur = w;
            k += 1;
            if k > self.len() {
                break;
            }
        }
        k
    }

    /// String lengths against `eps`/`phi`, `phi - eps = <wt, h_i>`, inverse
    /// edges, and weight shifts, for every element and every label.
    pub fn verify_regular(&self, mode: Mode) -> Vec<Violation> {
        let rank = self.rank();
        let data = self.model.data();
        let theta_w = data.rs.root_to_weight(&data.theta);
        exec::flat_map_range(mode, self.len(), |v| {
            let mut bad = Vec::new();
            let mut note = |label: usize, what: String| {
                bad.push(Violation {
                    element: v,
                    label,
                    what,
                })
            };
            for label in 0..=rank {
                let (eps, phi) = (self.eps(v, label), self.phi(v, label));
                let (es, fs) = (
                    self.run(v, label, false) as i32,
                    self.run(v, label, true) as i32,
                );
                if eps != es {
                    note(label, format!("eps {eps} but e-string {es}"));
                }
                if phi != fs {
                    note(label, format!("phi {phi} but f-string {fs}"));
                }
                if phi - eps != self.pairing(v, label) {
                    note(label, "phi - eps differs from the weight".into());
                }
                if let Some(w) = self.f[label][v] {
                    if self.e[label][w] != Some(v) {
                        note(label, "e does not undo f".into());
                    }
                    let (a, b) = (self.wt(v), self.wt(w));
                    let shift: Weight = if label == 0 {
                        theta_w.iter().map(|x| -x).collect()
                    } else {
                        data.rs.root_to_weight(&data.rs.simple_root(label))
                    };
                    if a.iter().zip(&b).zip(&shift).any(|((x, y), z)| x - y != *z) {
                        note(label, "f does not lower the weight by alpha".into());
                    }
                }
                if let Some(w) = self.e[label][v] {
                    if self.f[label][w] != Some(v) {
                        note(label, "f does not undo e".into());
                    }
                }
            }
            bad
        })
    }

    /// The labelled graph of `f`-arrows for the given labels.
    pub fn graph(&self, labels: &[usize]) -> CrystalGraph {
        let mut edges = Vec::new();
        for &l in labels {
            for v in 0..self.len() {
                if let Some(w) = self.f[l][v] {
                    edges.push((v, w, l));
                }
            }
        }
        CrystalGraph {
            labels: labels.to_vec(),
            weights: (0..self.len()).map(|v| self.wt(v)).collect(),
            names: self.elements.iter().map(|c| format!("{c:?}")).collect(),
            edges,
        }
    }

    pub fn classical_graph(&self) -> CrystalGraph {
        self.graph(&(1..=self.rank()).collect::<Vec<_>>())
    }
}

/// Node correspondence used to read the crystal without the node `r`,
/// arrows reversed, as a crystal of the finite type.
pub fn dual_relabel(model: Model) -> Vec<(usize, usize)> {
    match model {
        Model::E6R6 => vec![(0, 6), (5, 2)],
        Model::E6R1 => vec![(0, 1), (3, 2)],
        Model::E7R7 => vec![(0, 7), (1, 6), (3, 5)],
    }
}

fn relabel(pairs: &[(usize, usize)], l: usize) -> usize {
    for &(a, b) in pairs {
        if l == a {
            return b;
        }
        if l == b {
            return a;
        }
    }
    l
}

/// Drop the `r`-arrows and relabel. Read forwards the result should be
/// `B(s varpi_{r*})`; with every arrow reversed it should be `B(s varpi_r)`.
/// Both are checked (they agree for E7, where `r* = r`).
pub fn dual_relabel_check(kr: &KrCrystal) -> Result<(), String> {
    let r = kr.model.node();
    let rank = kr.rank();
    let labels: Vec<usize> = (0..=rank).filter(|&l| l != r).collect();
    let pairs = dual_relabel(kr.model);
    let g = kr.graph(&labels);
    let relabelled = |reverse: bool| -> Result<CrystalGraph, String> {
        let edges: Vec<(usize, usize, usize)> = g
            .edges
            .iter()
            .map(|&(a, b, l)| {
                let l = relabel(&pairs, l);
                if reverse {
                    (b, a, l)
                } else {
                    (a, b, l)
                }
            })
            .collect();
        if edges.iter().any(|&(_, _, l)| l == 0 || l > rank) {
            return Err("relabelling does not land on the finite labels".into());
        }
        let h = CrystalGraph {
            labels: (1..=rank).collect(),
            weights: Vec::new(),
            names: g.names.clone(),
            edges,
        };
        let w = h.string_weights();
        Ok(h.with_weights(w))
    };
    let forward = tensor_component(kr.model.dual(), kr.s as usize);
    crystal_isomorphic(&relabelled(false)?, &forward).map_err(|e| format!("forward: {e:?}"))?;
    let backward = tensor_component(kr.model, kr.s as usize);
    crystal_isomorphic(&relabelled(true)?, &backward).map_err(|e| format!("reversed: {e:?}"))?;
    Ok(())
}

/// Classical restriction against the tensor-power crystal of the same model.
pub fn classical_check(kr: &KrCrystal) -> Result<Vec<usize>, String> {
    let target = tensor_component(kr.model, kr.s as usize);
    crystal_isomorphic(&kr.classical_graph(), &target).map_err(|e| format!("{e:?}"))
}
