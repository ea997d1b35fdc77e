//! Root-system arithmetic for the simply-laced types A, D and E.
//!
//! Nodes are labelled 1..=rank in Bourbaki order. Roots are kept as
//! coefficient vectors over the simple roots, weights as coefficient vectors
//! over the fundamental weights, so `<lambda, h_i>` is just `lambda[i - 1]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Coefficients of a root in the basis of simple roots.
pub type Root = Vec<i32>;
/// Coefficients of a weight in the basis of fundamental weights.
pub type Weight = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A(usize),
    D(usize),
    E6,
    E7,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
        }
    }

    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            CartanType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            CartanType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            CartanType::E6 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
            CartanType::E7 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7)],
        }
    }

    pub fn parse(tag: &str) -> Result<Self, Error> {
        let t = tag.trim().to_ascii_uppercase();
        let bad = || Error::Unsupported(format!("type {tag}"));
        match t.as_str() {
            "E6" => Ok(CartanType::E6),
            "E7" => Ok(CartanType::E7),
            _ => {
                let (head, tail) = t.split_at(1);
                let n: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
                match head {
                    "A" => Ok(CartanType::A(n)),
                    "D" => Ok(CartanType::D(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(kind: CartanType) -> Result<Self, Error> {
        let ok = match kind {
            CartanType::A(n) => n >= 1,
            CartanType::D(n) => n >= 4,
            _ => true,
        };
        if !ok {
            return Err(Error::Unsupported(format!("rank of {kind}")));
        }
        let rank = kind.rank();
        let mut cartan = vec![vec![0; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in kind.edges() {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            positive: Vec::new(),
            index: HashMap::new(),
        };
        rs.positive = rs.generate_positive();
        rs.index = rs
            .positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        Ok(rs)
    }

    // Grow by height: for simply-laced types beta + alpha_i is a root
    // exactly when <beta, h_i> = -1 (beta != alpha_i).
    fn generate_positive(&self) -> Vec<Root> {
        let mut layer: Vec<Root> = (1..=self.rank).map(|i| self.simple_root(i)).collect();
        let mut all = layer.clone();
        let mut seen: HashSet<Root> = all.iter().cloned().collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for b in &layer {
                for i in 1..=self.rank {
                    if self.pairing_root(b, i) == -1 {
                        let mut c = b.clone();
                        c[i - 1] += 1;
                        if seen.insert(c.clone()) {
                            next.push(c);
                        }
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn is_positive_root(&self, beta: &[i32]) -> bool {
        self.index.contains_key(beta)
    }

    pub fn root_index(&self, beta: &[i32]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut a = vec![0; self.rank];
        a[i - 1] = 1;
        a
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[i - 1] = 1;
        w
    }

    /// `<beta, h_i>` for a root given in simple-root coordinates.
    pub fn pairing_root(&self, beta: &[i32], i: usize) -> i32 {
        self.cartan[i - 1]
            .iter()
            .zip(beta)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `<lambda, h_i>` for a weight in fundamental-weight coordinates.
    pub fn pairing(&self, lambda: &[i32], i: usize) -> i32 {
        lambda[i - 1]
    }

    /// `<lambda, beta^vee>`; simply laced, so `beta^vee = sum c_i h_i`.
    pub fn pairing_coroot(&self, lambda: &[i32], beta: &[i32]) -> i32 {
        lambda.iter().zip(beta).map(|(l, c)| l * c).sum()
    }

    pub fn root_to_weight(&self, beta: &[i32]) -> Weight {
        (1..=self.rank)
            .map(|i| self.pairing_root(beta, i))
            .collect()
    }

    pub fn reflect(&self, i: usize, lambda: &[i32]) -> Weight {
        let p = lambda[i - 1];
        lambda
            .iter()
            .zip(&self.cartan[i - 1])
            .map(|(l, a)| l - p * a)
            .collect()
    }

    pub fn reflect_root(&self, i: usize, beta: &[i32]) -> Root {
        let p = self.pairing_root(beta, i);
        let mut out = beta.to_vec();
        out[i - 1] -= p;
        out
    }

    /// `s_{w_1} ... s_{w_k}(beta)`.
    pub fn apply_word_to_root(&self, word: &[usize], beta: &[i32]) -> Root {
        word.iter()
            .rev()
            .fold(beta.to_vec(), |b, &i| self.reflect_root(i, &b))
    }

    pub fn highest_root(&self) -> Root {
        self.positive
            .iter()
            .max_by_key(|r| r.iter().sum::<i32>())
            .cloned()
            .expect("nonempty root system")
    }

    /// beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}).
    pub fn roots_from_word(&self, word: &[usize]) -> Result<Vec<Root>, Error> {
        let mut out = Vec::with_capacity(word.len());
        let mut seen = HashSet::new();
        for (k, &i) in word.iter().enumerate() {
            if i == 0 || i > self.rank {
                return Err(Error::BadLetter(i));
            }
            let beta = self.apply_word_to_root(&word[..k], &self.simple_root(i));
            if !self.is_positive_root(&beta) || !seen.insert(beta.clone()) {
                return Err(Error::NotReduced(word.to_vec()));
            }
            out.push(beta);
        }
        Ok(out)
    }

    /// Weyl orbit of a weight, in breadth-first order from the input.
    pub fn orbit(&self, lambda: &[i32]) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([lambda.to_vec()]);
        seen.insert(lambda.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                let v = self.reflect(i, &w);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            order.push(w);
        }
        order
    }

    /// The involution `i -> i*` with `w_0(alpha_i) = -alpha_{i*}`.
    pub fn star(&self, i: usize) -> usize {
        let low = self
            .orbit(&self.fundamental_weight(i))
            .into_iter()
            .find(|w| w.iter().all(|&x| x <= 0))
            .expect("orbit contains an antidominant weight");
        low.iter()
            .position(|&x| x == -1)
            .expect("minus a fundamental weight")
            + 1
    }

    /// Weyl dimension formula, exact.
    pub fn weyl_dim(&self, lambda: &[i32]) -> Result<BigUint, Error> {
        if lambda.len() != self.rank || lambda.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for beta in &self.positive {
            let height: i32 = beta.iter().sum();
            let shifted = self.pairing_coroot(lambda, beta) + height;
            num *= shifted as u32;
            den *= height as u32;
        }
        debug_assert!((&num % &den) == BigUint::from(0u32));
        Ok(num / den)
    }

    /// Stacked notation for type E roots ("b/acdef..."), plain list otherwise.
    pub fn format_root(&self, beta: &[i32]) -> String {
        match self.kind {
            CartanType::E6 | CartanType::E7 => {
                let mut s = format!("{}/{}", beta[1], beta[0]);
                for c in &beta[2..] {
                    s.push_str(&c.to_string());
                }
                s
            }
            _ => format!("{beta:?}"),
        }
    }

    pub fn parse_root(&self, text: &str) -> Result<Root, Error> {
        let bad = || Error::Parse(format!("root {text:?}"));
        let (b, rest) = text.trim().split_once('/').ok_or_else(bad)?;
        let digits: Vec<i32> = rest
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as i32))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if digits.len() + 1 != self.rank {
            return Err(bad());
        }
        let mut beta = vec![digits[0], b.parse().map_err(|_| bad())?];
        beta.extend_from_slice(&digits[1..]);
        if !self.is_positive_root(&beta) {
            return Err(bad());
        }
        Ok(beta)
    }
}
