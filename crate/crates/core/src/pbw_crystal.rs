//! The crystal `B^J`: Lusztig data on the nilradical roots with operators
//! given by the signature rule.

use crate::model::{Model, ModelData};
use crate::path_statistic::{delta_embedding, Arrangement};
use crate::root_system::Weight;
use crate::Error;

/// Exponents `c_beta`, indexed by position in the convex order.
pub type LusztigDatum = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Pairs `(minus, plus)` of convex-order indices. Pair `s` writes
/// `c[minus]` minus signs followed by `c[plus]` plus signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTemplate {
    pub i: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Cancel `(+, -)` pairs with the `+` on the left until none remain.
/// Cancelled positions come back as `None`.
pub fn reduce_signature(seq: &[Sign]) -> Vec<Option<Sign>> {
    let mut out: Vec<Option<Sign>> = seq.iter().map(|&s| Some(s)).collect();
    let mut open = Vec::new();
    for (k, s) in seq.iter().enumerate() {
        match s {
            Sign::Plus => open.push(k),
            Sign::Minus => {
                if let Some(p) = open.pop() {
                    out[p] = None;
                    out[k] = None;
                }
            }
        }
    }
    out
}

/// Template read off the arrangement: one pair per arrow `beta -> beta + alpha_i`
/// inside the nilradical, in reading order (rows top to bottom, each row
/// left to right) of the tail of the arrow.
pub fn sigma_template(model: Model, i: usize) -> Result<SignatureTemplate, Error> {
    sigma_template_on(&delta_embedding(model), i)
}

/// Same, read off a given placement of the dots.
pub fn sigma_template_on(arr: &Arrangement, i: usize) -> Result<SignatureTemplate, Error> {
    let model = arr.model;
    let data = model.data();
    if !data.levi.contains(&i) {
        return Err(Error::Unsupported(format!(
            "letter {i} is not a Levi node of {model}"
        )));
    }
    let mut pairs = Vec::new();
    for plus in 0..data.m {
        let mut target = data.roots[plus].clone();
        target[i - 1] += 1;
        if let Some(minus) = data.roots[..data.m].iter().position(|b| *b == target) {
            pairs.push((minus, plus));
        }
    }
    pairs.sort_by_key(|&(_, plus)| {
        let (row, col) = arr.dots[plus];
        (row, std::cmp::Reverse(col))
    });
    Ok(SignatureTemplate { i, pairs })
}

struct Scan {
    first_plus: Option<usize>,
    last_minus: Option<usize>,
    minus: u32,
    plus: u32,
}

fn scan(c: &[u32], t: &SignatureTemplate) -> Scan {
    let mut open: Vec<(usize, u32)> = Vec::new();
    let mut minus = 0;
    let mut last_minus = None;
    for (s, &(mi, pi)) in t.pairs.iter().enumerate() {
        let mut m = c[mi];
        while m > 0 {
            let Some(top) = open.last_mut() else { break };
            let take = top.1.min(m);
            top.1 -= take;
            m -= take;
            if top.1 == 0 {
                open.pop();
            }
        }
        if m > 0 {
            minus += m;
            last_minus = Some(s);
        }
        if c[pi] > 0 {
            open.push((s, c[pi]));
        }
    }
    Scan {
        first_plus: open.first().map(|&(s, _)| s),
        last_minus,
        minus,
        plus: open.iter().map(|&(_, n)| n).sum(),
    }
}

/// Operators on `B^J` for one model. Templates are stored so that tests can
/// swap in altered ones.
#[derive(Debug, Clone)]
pub struct PbwCrystal {
    pub model: Model,
    templates: Vec<Option<SignatureTemplate>>,
}

impl PbwCrystal {
    pub fn new(model: Model) -> PbwCrystal {
        let data = model.data();
        let templates = (0..=data.rank())
            .map(|i| {
                if data.levi.contains(&i) {
                    sigma_template(model, i).ok()
                } else {
                    None
                }
            })
            .collect();
        PbwCrystal { model, templates }
    }

    pub fn with_template(mut self, t: SignatureTemplate) -> PbwCrystal {
        let i = t.i;
        self.templates[i] = Some(t);
        self
    }

    pub fn data(&self) -> &'static ModelData {
        self.model.data()
    }

    pub fn template(&self, i: usize) -> Option<&SignatureTemplate> {
        self.templates.get(i).and_then(|t| t.as_ref())
    }

    pub fn signature(&self, c: &[u32], i: usize) -> Vec<Sign> {
        let mut out = Vec::new();
        if let Some(t) = self.template(i) {
            for &(mi, pi) in &t.pairs {
                out.extend(std::iter::repeat_n(Sign::Minus, c[mi] as usize));
                out.extend(std::iter::repeat_n(Sign::Plus, c[pi] as usize));
            }
        }
        out
    }

    /// `f_i`; `None` when the result would leave `B^J`.
    pub fn f(&self, c: &[u32], i: usize) -> Option<LusztigDatum> {
        if i == self.data().node {
            let mut out = c.to_vec();
            out[0] += 1;
            return Some(out);
        }
        let t = self.template(i)?;
        let s = scan(c, t).first_plus?;
        let (mi, pi) = t.pairs[s];
        let mut out = c.to_vec();
        out[pi] -= 1;
        out[mi] += 1;
        Some(out)
    }

    pub fn e(&self, c: &[u32], i: usize) -> Option<LusztigDatum> {
        if i == self.data().node {
            if c[0] == 0 {
                return None;
            }
            let mut out = c.to_vec();
            out[0] -= 1;
            return Some(out);
        }
        let t = self.template(i)?;
        let s = scan(c, t).last_minus?;
        let (mi, pi) = t.pairs[s];
        let mut out = c.to_vec();
        out[mi] -= 1;
        out[pi] += 1;
        Some(out)
    }

    pub fn eps(&self, c: &[u32], i: usize) -> i32 {
        if i == self.data().node {
            return c[0] as i32;
        }
        self.template(i).map_or(0, |t| scan(c, t).minus as i32)
    }

    /// Uncancelled `+` signs; for `i` in J this is how often `f_i` applies.
    pub fn plus_count(&self, c: &[u32], i: usize) -> i32 {
        self.template(i).map_or(0, |t| scan(c, t).plus as i32)
    }

    /// `s varpi_r - sum c_beta beta`.
    pub fn wt(&self, c: &[u32], s: u32) -> Weight {
        let data = self.data();
        let mut w = vec![0; data.rank()];
        w[data.node - 1] = s as i32;
        for (k, &ck) in c.iter().enumerate() {
            if ck > 0 {
                for (x, y) in w.iter_mut().zip(&data.root_weights[k]) {
                    *x -= ck as i32 * y;
                }
            }
        }
        w
    }

    pub fn phi(&self, c: &[u32], i: usize, s: u32) -> i32 {
        self.eps(c, i) + self.wt(c, s)[i - 1]
    }
}
