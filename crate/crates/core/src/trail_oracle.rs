//! An independent route to `eps_star`: trails through the minuscule crystal
//! `B(varpi_r)` along the word `j_0`, where each letter either acts (`d = 1`)
//! or is skipped (`d = 0`).

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::exec::{self, Mode};
use crate::model::Model;
use crate::path_statistic::{delta_embedding, Arrangement, PathFamily};
use crate::root_system::{RootSystem, Weight};
use crate::Error;

/// 0/1 entries indexed by position in the convex order of the nilradical.
pub type TrailArray = Vec<u8>;

#[derive(Debug, Clone)]
pub struct MinusculeCrystal {
    pub rank: usize,
    pub weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    /// `f[b][i]`, labels 1..=rank (slot 0 unused)
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
}

impl MinusculeCrystal {
    /// Nodes are the Weyl orbit of `varpi_r`; `f_i` acts exactly when the
    /// weight pairs to 1 with `h_i`.
    pub fn new(rs: &RootSystem, r: usize) -> MinusculeCrystal {
        let weights = rs.orbit(&rs.fundamental_weight(r));
        let index: HashMap<Weight, usize> = weights
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        let n = weights.len();
        let mut f = vec![vec![None; rs.rank + 1]; n];
        let mut e = vec![vec![None; rs.rank + 1]; n];
        for (b, w) in weights.iter().enumerate() {
            for i in 1..=rs.rank {
                if w[i - 1] == 1 {
                    let t = index[&rs.reflect(i, w)];
                    f[b][i] = Some(t);
                    e[t][i] = Some(b);
                }
            }
        }
        MinusculeCrystal {
            rank: rs.rank,
            weights,
            index,
            f,
            e,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, w: &[i32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn f(&self, b: usize, i: usize) -> Option<usize> {
        self.f[b][i]
    }

    pub fn e(&self, b: usize, i: usize) -> Option<usize> {
        self.e[b][i]
    }

    pub fn eps(&self, b: usize, i: usize) -> i32 {
        self.e[b][i].is_some() as i32
    }

    pub fn phi(&self, b: usize, i: usize) -> i32 {
        self.f[b][i].is_some() as i32
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (1..=self.rank).all(|i| self.e[b][i].is_none()))
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (1..=self.rank).all(|i| self.f[b][i].is_none()))
            .collect()
    }
}

pub fn build_minuscule(model: Model) -> MinusculeCrystal {
    let data = model.data();
    MinusculeCrystal::new(&data.rs, data.node)
}

/// `j_0`: the reverse of `i_0` with every letter starred.
pub fn j0(model: Model) -> Vec<usize> {
    let data = model.data();
    data.i0.iter().rev().map(|&i| data.rs.star(i)).collect()
}

#[derive(Debug)]
pub struct TrailSystem {
    pub model: Model,
    pub crystal: MinusculeCrystal,
    pub word: Vec<usize>,
    /// node `s_r varpi_r`
    pub start: usize,
    /// node `w_0 varpi_r`
    pub sink: usize,
    /// node `varpi_r - theta`
    pub prefix_end: usize,
    /// nodes a trail can occupy after the first `N - M` letters
    reach: Vec<bool>,
}

impl TrailSystem {
    fn new(model: Model) -> TrailSystem {
        let data = model.data();
        let crystal = build_minuscule(model);
        let word = j0(model);
        let top = data.rs.fundamental_weight(data.node);
        let start = crystal
            .node(&data.rs.reflect(data.node, &top))
            .expect("s_r varpi_r");
        let sinks = crystal.sinks();
        let theta_w = data.rs.root_to_weight(&data.theta);
        let end_w: Weight = top.iter().zip(&theta_w).map(|(a, b)| a - b).collect();
        let prefix_end = crystal.node(&end_w).expect("varpi_r - theta");
        let cut = word.len() - data.m;
        let mut reach = vec![false; crystal.len()];
        reach[start] = true;
        for &j in &word[..cut] {
            let mut next = reach.clone();
            for (b, &on) in reach.iter().enumerate() {
                if on {
                    if let Some(t) = crystal.f(b, j) {
                        next[t] = true;
                    }
                }
            }
            reach = next;
        }
        TrailSystem {
            model,
            crystal,
            word,
            start,
            sink: sinks[0],
            prefix_end,
            reach,
        }
    }

    pub fn get(model: Model) -> &'static TrailSystem {
        static CELLS: [OnceLock<TrailSystem>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        CELLS[model as usize].get_or_init(|| TrailSystem::new(model))
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn m(&self) -> usize {
        self.model.data().m
    }

    /// Maximum of `sum (1 - d_{N-k+1}) c_{beta_k}` over all trails from
    /// `s_r varpi_r` to `w_0 varpi_r`, by value iteration over the last `M`
    /// letters.
    pub fn eps_star(&self, c: &[u32]) -> u32 {
        let (n, m) = (self.n(), self.m());
        const NONE: i64 = i64::MIN / 4;
        let mut val = vec![NONE; self.crystal.len()];
        val[self.sink] = 0;
        for pos in (n - m..n).rev() {
            let j = self.word[pos];
            let stay = c[n - 1 - pos] as i64;
            let next: Vec<i64> = (0..self.crystal.len())
                .map(|b| {
                    let skip = val[b] + stay;
                    let act = self.crystal.f(b, j).map_or(NONE, |t| val[t]);
                    skip.max(act)
                })
                .collect();
            val = next;
        }
        let best = (0..self.crystal.len())
            .filter(|&b| self.reach[b])
            .map(|b| val[b])
            .max()
            .unwrap_or(NONE);
        assert!(best >= 0, "no trail reaches the lowest weight");
        best as u32
    }

    /// All 0/1 choices along `letters` leading from `from` to `to`.
    fn walks(&self, letters: &[usize], from: usize, to: usize) -> Vec<Vec<u8>> {
        fn rec(
            ts: &TrailSystem,
            letters: &[usize],
            b: usize,
            to: usize,
            cur: &mut Vec<u8>,
            out: &mut Vec<Vec<u8>>,
        ) {
            if cur.len() == letters.len() {
                if b == to {
                    out.push(cur.clone());
                }
                return;
            }
            let j = letters[cur.len()];
            cur.push(0);
            rec(ts, letters, b, to, cur, out);
            cur.pop();
            if let Some(t) = ts.crystal.f(b, j) {
                cur.push(1);
                rec(ts, letters, t, to, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, letters, from, to, &mut Vec::new(), &mut out);
        out
    }

    /// The trail through the first `N - M` letters from `varpi_r - alpha_r`
    /// to `varpi_r - theta`; fails unless there is exactly one.
    pub fn prefix_trail(&self) -> Result<Vec<u8>, Error> {
        let cut = self.n() - self.m();
        let mut all = self.walks(&self.word[..cut], self.start, self.prefix_end);
        if all.len() != 1 {
            return Err(Error::Mismatch(format!(
                "{} prefix trails for {}",
                all.len(),
                self.model
            )));
        }
        Ok(all.remove(0))
    }

    /// Trails through the last `M` letters from `varpi_r - theta` to the
    /// lowest weight, as `d` over those letters in word order.
    pub fn tprime(&self) -> Vec<Vec<u8>> {
        let cut = self.n() - self.m();
        let mut v = self.walks(&self.word[cut..], self.prefix_end, self.sink);
        v.sort();
        v
    }

    /// Maximum of the trail norm over the restricted trail set only.
    pub fn eps_star_restricted(&self, c: &[u32]) -> u32 {
        tprime_arrays(self.model)
            .iter()
            .map(|a| array_norm(c, a))
            .max()
            .unwrap_or(0)
    }

    pub fn eps_star_batch(&self, cs: &[Vec<u32>], mode: Mode) -> Vec<u32> {
        exec::map(mode, cs, |c| self.eps_star(c))
    }
}

pub fn eps_star_trails(model: Model, c: &[u32]) -> u32 {
    TrailSystem::get(model).eps_star(c)
}

/// `d` over the last `M` letters (word order) to the array on the
/// nilradical: letter `N - k + 1` sits at root `k`.
pub fn trail_array(suffix: &[u8]) -> TrailArray {
    suffix.iter().rev().copied().collect()
}

pub fn tprime_arrays(model: Model) -> &'static [TrailArray] {
    static CELLS: [OnceLock<Vec<TrailArray>>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[model as usize].get_or_init(|| {
        let mut v: Vec<TrailArray> = TrailSystem::get(model)
            .tprime()
            .iter()
            .map(|d| trail_array(d))
            .collect();
        v.sort();
        v
    })
}

/// `d_k = 0` exactly on the nilradical dots the family passes.
pub fn psi(model: Model, family: &PathFamily) -> TrailArray {
    psi_on(&delta_embedding(model), family)
}

pub fn psi_on(arr: &Arrangement, family: &PathFamily) -> TrailArray {
    arr.dots
        .iter()
        .map(|&d| u8::from(!family.covers(d)))
        .collect()
}

pub fn array_norm(c: &[u32], a: &[u8]) -> u32 {
    c.iter()
        .zip(a)
        .filter(|(_, &d)| d == 0)
        .map(|(&x, _)| x)
        .sum()
}
