//! Highest-weight crystals `B(s varpi_r)` grown inside tensor powers of the
//! minuscule crystal, and an isomorphism test for connected crystal graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::model::Model;
use crate::root_system::Weight;
use crate::trail_oracle::{build_minuscule, MinusculeCrystal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub labels: Vec<usize>,
    pub weights: Vec<Weight>,
    pub names: Vec<String>,
    /// `(src, dst, label)` for `f_label(src) = dst`
    pub edges: Vec<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn out_edges(&self) -> Vec<BTreeMap<usize, usize>> {
        let mut out = vec![BTreeMap::new(); self.len()];
        for &(a, b, l) in &self.edges {
            out[a].insert(l, b);
        }
        out
    }

    pub fn in_edges(&self) -> Vec<BTreeMap<usize, usize>> {
        let mut inn = vec![BTreeMap::new(); self.len()];
        for &(a, b, l) in &self.edges {
            inn[b].insert(l, a);
        }
        inn
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.len()];
        for &(_, b, _) in &self.edges {
            has_in[b] = true;
        }
        (0..self.len()).filter(|&v| !has_in[v]).collect()
    }

    /// Every label has at most one outgoing and one incoming edge per node.
    pub fn is_deterministic(&self) -> bool {
        let mut seen_out = HashMap::new();
        let mut seen_in = HashMap::new();
        self.edges.iter().all(|&(a, b, l)| {
            seen_out.insert((a, l), b).is_none() && seen_in.insert((b, l), a).is_none()
        })
    }

    /// `phi_i - eps_i` read off string lengths, in label order.
    pub fn string_weights(&self) -> Vec<Weight> {
        let out = self.out_edges();
        let inn = self.in_edges();
        let run = |table: &[BTreeMap<usize, usize>], mut v: usize, l: usize| {
            let mut k = 0;
            while let Some(&w) = table[v].get(&l) {
                v = w;
                k += 1;
                if k > self.len() {
                    break;
                }
            }
            k as i32
        };
        (0..self.len())
            .map(|v| {
                self.labels
                    .iter()
                    .map(|&l| run(&out, v, l) - run(&inn, v, l))
                    .collect()
            })
            .collect()
    }

    pub fn with_weights(mut self, weights: Vec<Weight>) -> CrystalGraph {
        self.weights = weights;
        self
    }
}

/// Tensor-product signature on a tuple of minuscule nodes: each factor
/// writes `-^{eps} +^{phi}`, `(+, -)` pairs cancel, `f` acts on the factor of
/// the leftmost surviving `+` and `e` on that of the rightmost surviving `-`.
/// For two factors: `f` acts on the left one iff `phi(b1) > eps(b2)`.
fn tensor_act(b: &MinusculeCrystal, t: &[usize], i: usize, lower: bool) -> Option<Vec<usize>> {
    let mut open: Vec<usize> = Vec::new();
    let mut last_minus = None;
    for (k, &x) in t.iter().enumerate() {
        if b.eps(x, i) == 1 && open.pop().is_none() {
            last_minus = Some(k);
        }
        if b.phi(x, i) == 1 {
            open.push(k);
        }
    }
    let (k, next) = if lower {
        let k = *open.first()?;
        (k, b.f(t[k], i)?)
    } else {
        let k = last_minus?;
        (k, b.e(t[k], i)?)
    };
    let mut out = t.to_vec();
    out[k] = next;
    Some(out)
}

/// The component of `u^{(x) s}` in `B(varpi_r)^{(x) s}`, `u` the highest node.
pub fn tensor_component(model: Model, s: usize) -> CrystalGraph {
    let b = build_minuscule(model);
    tensor_component_of(&b, s)
}

pub fn tensor_component_of(b: &MinusculeCrystal, s: usize) -> CrystalGraph {
    let top = b.sources()[0];
    let start = vec![top; s];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start.clone()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for i in 1..=b.rank {
            if let Some(t) = tensor_act(b, &nodes[v], i, true) {
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    nodes.push(t);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                });
                edges.push((v, id, i));
            }
        }
    }
    let weights = nodes
        .iter()
        .map(|t| {
            let mut w = vec![0; b.rank];
            for &x in t {
                for (a, y) in w.iter_mut().zip(&b.weights[x]) {
                    *a += y;
                }
            }
            w
        })
        .collect();
    let names = nodes.iter().map(|t| format!("{t:?}")).collect();
    CrystalGraph {
        labels: (1..=b.rank).collect(),
        weights,
        names,
        edges,
    }
}

/// `e_i` on a tensor tuple, exposed for the round-trip tests.
pub fn tensor_e(b: &MinusculeCrystal, t: &[usize], i: usize) -> Option<Vec<usize>> {
    tensor_act(b, t, i, false)
}

pub fn tensor_f(b: &MinusculeCrystal, t: &[usize], i: usize) -> Option<Vec<usize>> {
    tensor_act(b, t, i, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoFailure {
    Size(usize, usize),
    Sources(usize, usize),
    HighestWeight(Weight, Weight),
    Edge { node: usize, label: usize },
    Collision { node: usize, label: usize },
    Weight { node: usize },
}

/// Match two connected crystals from their unique sources, label by label.
/// Returns `map[v]` = node of `g2` matched with node `v` of `g1`.
pub fn crystal_isomorphic(g1: &CrystalGraph, g2: &CrystalGraph) -> Result<Vec<usize>, IsoFailure> {
    if g1.len() != g2.len() {
        return Err(IsoFailure::Size(g1.len(), g2.len()));
    }
    let (s1, s2) = (g1.sources(), g2.sources());
    if s1.len() != 1 || s2.len() != 1 {
        return Err(IsoFailure::Sources(s1.len(), s2.len()));
    }
    let (a, b) = (s1[0], s2[0]);
    if g1.weights[a] != g2.weights[b] {
        return Err(IsoFailure::HighestWeight(
            g1.weights[a].clone(),
            g2.weights[b].clone(),
        ));
    }
    let (o1, o2) = (g1.out_edges(), g2.out_edges());
    let mut map = vec![usize::MAX; g1.len()];
    let mut used = vec![false; g2.len()];
    map[a] = b;
    used[b] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        let w = map[v];
        if o1[v].keys().ne(o2[w].keys()) {
            let label = o1[v]
                .keys()
                .chain(o2[w].keys())
                .find(|l| o1[v].contains_key(l) != o2[w].contains_key(l))
                .copied()
                .unwrap_or(0);
            return Err(IsoFailure::Edge { node: v, label });
        }
        for (&l, &x) in &o1[v] {
            let y = o2[w][&l];
            if map[x] == usize::MAX {
                if used[y] {
                    return Err(IsoFailure::Collision { node: x, label: l });
                }
                map[x] = y;
                used[y] = true;
                queue.push_back(x);
            } else if map[x] != y {
                return Err(IsoFailure::Collision { node: x, label: l });
            }
        }
    }
    if let Some(v) = map.iter().position(|&x| x == usize::MAX) {
        return Err(IsoFailure::Edge { node: v, label: 0 });
    }
    if let Some(v) = (0..g1.len()).find(|&v| g1.weights[v] != g2.weights[map[v]]) {
        return Err(IsoFailure::Weight { node: v });
    }
    Ok(map)
}
