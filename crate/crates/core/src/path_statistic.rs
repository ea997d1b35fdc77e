//! The triangular arrangement, the embedded nilradical, families of lattice
//! paths on it, and the path formula for `eps_star`.
//!
//! Dots are `(row, col)` with rows counted from the top and columns from the
//! right; row `i` of the arrangement of size `n` holds columns `1..=n-i`.
//! A path moves down `(i+1, j)` or left `(i, j+1)` and stops on the
//! boundary `i + j = n`.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exec::{self, Mode};
use crate::model::Model;

pub type Dot = (usize, usize);
pub type Path = Vec<Dot>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub model: Model,
    pub n: usize,
    /// dot of the `k`-th nilradical root
    pub dots: Vec<Dot>,
}

impl Arrangement {
    pub fn contains(&self, d: Dot) -> bool {
        d.0 >= 1 && d.1 >= 1 && d.0 + d.1 <= self.n
    }

    pub fn index_of(&self, d: Dot) -> Option<usize> {
        self.dots.iter().position(|&x| x == d)
    }
}

/// Row-by-row transcription: each entry lists the columns, left to right, of
/// consecutive roots in the convex order.
fn rows_to_dots(rows: &[(usize, &[usize])]) -> Vec<Dot> {
    rows.iter()
        .flat_map(|&(r, cols)| cols.iter().map(move |&c| (r, c)))
        .collect()
}

/// Position of every nilradical root. Node 1 of E6 reuses the node 6
/// picture: the flip `1<->6, 3<->5` carries one convex order onto the other
/// index by index.
pub fn delta_embedding(model: Model) -> Arrangement {
    match model {
        Model::E6R1 | Model::E6R6 => Arrangement {
            model,
            n: 9,
            dots: rows_to_dots(&[
                (1, &[8, 7, 6, 5, 4]),
                (2, &[6, 5, 4]),
                (3, &[5, 4, 3]),
                (4, &[5, 4, 3, 2, 1]),
            ]),
        },
        Model::E7R7 => Arrangement {
            model,
            n: 10,
            dots: rows_to_dots(&[
                (1, &[9, 8, 7, 6, 5, 4]),
                (2, &[6, 5, 4]),
                (3, &[5, 4, 3]),
                (4, &[5, 4, 3, 2, 1]),
                (5, &[5, 4, 3, 2, 1]),
                (6, &[2, 1]),
                (7, &[1]),
                (8, &[1]),
                (9, &[1]),
            ]),
        },
    }
}

/// Arrows `beta -> beta + alpha_i` between nilradical roots must join a dot
/// to its right or lower neighbour, and every such neighbouring pair must
/// carry an arrow. Returns the offending index pairs.
pub fn arrow_defects(arr: &Arrangement) -> Vec<(usize, usize)> {
    let data = arr.model.data();
    let mut bad = Vec::new();
    for a in 0..data.m {
        for b in 0..data.m {
            let diff: Vec<i32> = data.roots[b]
                .iter()
                .zip(&data.roots[a])
                .map(|(x, y)| x - y)
                .collect();
            let simple = diff.iter().all(|&x| x == 0 || x == 1) && diff.iter().sum::<i32>() == 1;
            let (ra, ca) = arr.dots[a];
            let neighbour = arr.dots[b] == (ra, ca.wrapping_sub(1)) || arr.dots[b] == (ra + 1, ca);
            if simple != neighbour {
                bad.push((a, b));
            }
        }
    }
    bad
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Triple,
    Quadruple,
    DoubleTriple,
}

/// Paths listed from top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathFamily {
    pub kind: FamilyKind,
    pub paths: Vec<Path>,
}

impl PathFamily {
    pub fn covers(&self, d: Dot) -> bool {
        self.paths.iter().any(|p| p.contains(&d))
    }

    /// Bit `k` is set when the family passes the dot of root `k`.
    pub fn cover_mask(&self, arr: &Arrangement) -> u32 {
        arr.dots
            .iter()
            .enumerate()
            .filter(|(_, &d)| self.covers(d))
            .fold(0, |m, (k, _)| m | 1 << k)
    }
}

pub fn paths_from(start: Dot, n: usize) -> Vec<Path> {
    fn rec(p: &mut Path, n: usize, out: &mut Vec<Path>) {
        let (i, j) = *p.last().unwrap();
        if i + j == n {
            out.push(p.clone());
            return;
        }
        for nx in [(i + 1, j), (i, j + 1)] {
            p.push(nx);
            rec(p, n, out);
            p.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![start], n, &mut out);
    out
}

fn neighbours((i, j): Dot) -> [Dot; 2] {
    [(i, j + 1), (i + 1, j)]
}

/// Layering rule between the strands of a family, read on each
/// anti-diagonal `i + j = m`: consecutive strands present there must be
/// strictly ordered top to bottom (a strand may begin on the one above it),
/// and the dots strictly between them ("gap dots") are constrained.
struct Layering<'a> {
    max_gap_dots: Option<usize>,
    gap_ok: &'a dyn Fn(usize, usize, Dot) -> bool,
}

fn dot_on(p: &Path, m: usize) -> Option<Dot> {
    let first = p[0].0 + p[0].1;
    if m < first {
        return None;
    }
    p.get(m - first).copied()
}

fn layered(paths: &[&Path], n: usize, rule: &Layering) -> bool {
    for m in 2..=n {
        let mut above: Option<(usize, Dot)> = None;
        for (idx, p) in paths.iter().enumerate() {
            let Some(d) = dot_on(p, m) else { continue };
            if let Some((a, up)) = above {
                if d.0 < up.0 || (d.0 == up.0 && d != p[0]) {
                    return false;
                }
                if d.0 > up.0 + 1 {
                    if rule.max_gap_dots.is_some_and(|g| d.0 - up.0 - 1 > g) {
                        return false;
                    }
                    if !(up.0 + 1..d.0).all(|r| (rule.gap_ok)(a, idx, (r, m - r))) {
                        return false;
                    }
                }
            }
            above = Some((idx, d));
        }
    }
    true
}

fn consecutive_ends(paths: &[&Path]) -> bool {
    paths
        .windows(2)
        .all(|w| w[1].last().unwrap().0 == w[0].last().unwrap().0 + 1)
}

fn distinct_orders(starts: &[Dot]) -> BTreeSet<Vec<Dot>> {
    fn rec(rest: &mut Vec<Dot>, cur: &mut Vec<Dot>, out: &mut BTreeSet<Vec<Dot>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let d = rest.remove(k);
            cur.push(d);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(k, d);
        }
    }
    let mut out = BTreeSet::new();
    rec(&mut starts.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// All layered tuples of paths with the given starts (in every order).
fn layered_tuples(starts: &[Dot], n: usize, rule: &Layering) -> BTreeSet<Vec<Path>> {
    fn rec(
        order: &[Dot],
        n: usize,
        rule: &Layering,
        cur: &mut Vec<Path>,
        out: &mut BTreeSet<Vec<Path>>,
    ) {
        let k = cur.len();
        if k == order.len() {
            out.insert(cur.clone());
            return;
        }
        for p in paths_from(order[k], n) {
            cur.push(p);
            let refs: Vec<&Path> = cur.iter().collect();
            if layered(&refs, n, rule) {
                rec(order, n, rule, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    for order in distinct_orders(starts) {
        rec(&order, n, rule, &mut Vec::new(), &mut out);
    }
    out
}

/// Every strand not starting at `(1,1)` begins on a neighbouring strand.
fn starts_on_neighbour(paths: &[Path]) -> bool {
    paths.iter().enumerate().all(|(k, p)| {
        p[0] == (1, 1)
            || [k.wrapping_sub(1), k + 1]
                .iter()
                .filter_map(|&j| paths.get(j))
                .any(|q| q[1..].contains(&p[0]))
    })
}

fn covered(paths: &[Path]) -> HashSet<Dot> {
    paths.iter().flatten().copied().collect()
}

/// Labelled dots on which strands may not leave a gap: for E6 the two dots
/// holding roots with a 2 in the alpha_2 slot of the picture, for E7 the
/// three such dots.
fn two_dots(model: Model) -> &'static [Dot] {
    match model {
        Model::E7R7 => &[(2, 6), (3, 3), (6, 2)],
        _ => &[(2, 6), (3, 3)],
    }
}

fn triples_e6(arr: &Arrangement) -> Vec<PathFamily> {
    let inside: HashSet<Dot> = arr.dots.iter().copied().collect();
    let gap = |_: usize, _: usize, d: Dot| inside.contains(&d) && !two_dots(arr.model).contains(&d);
    let rule = Layering {
        max_gap_dots: Some(1),
        gap_ok: &gap,
    };
    let mut out = BTreeSet::new();
    for b2 in neighbours((1, 1)) {
        for paths in layered_tuples(&[(1, 1), (1, 1), b2], arr.n, &rule) {
            let refs: Vec<&Path> = paths.iter().collect();
            if consecutive_ends(&refs)
                && refs.iter().all(|p| p.last().unwrap().0 <= 4)
                && starts_on_neighbour(&paths)
            {
                out.insert(PathFamily {
                    kind: FamilyKind::Triple,
                    paths,
                });
            }
        }
    }
    out.into_iter().collect()
}

fn quadruples_e7(arr: &Arrangement) -> Vec<PathFamily> {
    let inside: HashSet<Dot> = arr.dots.iter().copied().collect();
    let must = [(1, 4), (4, 1)];
    let gap = |_: usize, _: usize, d: Dot| {
        inside.contains(&d) && !two_dots(arr.model).contains(&d) && !must.contains(&d)
    };
    let rule = Layering {
        max_gap_dots: Some(1),
        gap_ok: &gap,
    };
    let mut out = BTreeSet::new();
    for b2 in neighbours((1, 1)) {
        for b3 in neighbours(b2) {
            for paths in layered_tuples(&[(1, 1), (1, 1), b2, b3], arr.n, &rule) {
                let refs: Vec<&Path> = paths.iter().collect();
                let ends: Vec<usize> = refs.iter().map(|p| p.last().unwrap().0).collect();
                let side = ends.iter().all(|&e| e <= 5) || ends.iter().all(|&e| e >= 5);
                let cov = covered(&paths);
                if consecutive_ends(&refs)
                    && side
                    && must.iter().all(|d| cov.contains(d))
                    && starts_on_neighbour(&paths)
                {
                    out.insert(PathFamily {
                        kind: FamilyKind::Quadruple,
                        paths,
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Gap dots allowed for a double path starting at `(3,4)`; the one at
/// `(4,3)` uses the transpose.
const DOUBLE_AT_34_GAPS: [Dot; 8] = [
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 3),
    (3, 6),
    (4, 3),
    (5, 2),
    (5, 3),
];

fn pairs_e7(arr: &Arrangement) -> Vec<PathFamily> {
    let n = arr.n;
    let free = |_: usize, _: usize, _: Dot| true;
    let loose = Layering {
        max_gap_dots: None,
        gap_ok: &free,
    };
    let must = [(4, 1), (1, 4), (2, 6), (6, 2)];
    let mut triples = BTreeSet::new();
    for b2 in neighbours((1, 1)) {
        for t in layered_tuples(&[(1, 1), (1, 1), b2], n, &loose) {
            let cov = covered(&t);
            if must.iter().all(|d| cov.contains(d)) && !cov.contains(&(3, 3)) {
                triples.insert(t);
            }
        }
    }
    let mut out = BTreeSet::new();
    for start in [(3, 4), (4, 3)] {
        let allowed: HashSet<Dot> = DOUBLE_AT_34_GAPS
            .iter()
            .map(|&(r, c)| if start == (3, 4) { (r, c) } else { (c, r) })
            .collect();
        let doubles: Vec<Vec<Path>> = layered_tuples(&[start, start], n, &loose)
            .into_iter()
            .filter(|d| d.iter().any(|p| *p.last().unwrap() == (5, 5)))
            .collect();
        for t in &triples {
            let tcov = covered(t);
            for d in &doubles {
                if d.iter().flatten().any(|x| tcov.contains(x)) {
                    continue;
                }
                for pos in 1..=2 {
                    let mut order: Vec<Path> = t[..pos].to_vec();
                    order.extend(d.iter().cloned());
                    order.extend(t[pos..].iter().cloned());
                    let gap = |a: usize, b: usize, x: Dot| {
                        !(a == pos && b == pos + 1) && allowed.contains(&x)
                    };
                    let rule = Layering {
                        max_gap_dots: None,
                        gap_ok: &gap,
                    };
                    let refs: Vec<&Path> = order.iter().collect();
                    if consecutive_ends(&refs) && layered(&refs, n, &rule) {
                        out.insert(PathFamily {
                            kind: FamilyKind::DoubleTriple,
                            paths: order,
                        });
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn build_families(model: Model) -> Vec<PathFamily> {
    let arr = delta_embedding(model);
    match model {
        Model::E6R1 | Model::E6R6 => triples_e6(&arr),
        Model::E7R7 => {
            let mut v = quadruples_e7(&arr);
            v.extend(pairs_e7(&arr));
            v
        }
    }
}

struct FamilyCache {
    families: Vec<PathFamily>,
    masks: Vec<u32>,
}

fn cache(model: Model) -> &'static FamilyCache {
    static CELLS: [OnceLock<FamilyCache>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[model as usize].get_or_init(|| {
        let arr = delta_embedding(model);
        let families = build_families(model);
        let masks: BTreeSet<u32> = families.iter().map(|f| f.cover_mask(&arr)).collect();
        FamilyCache {
            families,
            masks: masks.into_iter().collect(),
        }
    })
}

/// The enumerated family set, cached per model.
pub fn enumerate_families(model: Model) -> &'static [PathFamily] {
    &cache(model).families
}

/// Distinct cover masks of the family set.
pub fn cover_masks(model: Model) -> &'static [u32] {
    &cache(model).masks
}

pub fn mask_norm(c: &[u32], mask: u32) -> u32 {
    c.iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &x)| x)
        .sum()
}

pub fn family_norm(c: &[u32], family: &PathFamily, arr: &Arrangement) -> u32 {
    mask_norm(c, family.cover_mask(arr))
}

pub fn eps_star_paths(model: Model, c: &[u32]) -> u32 {
    eps_star_masks(cover_masks(model), c)
}

pub fn eps_star_masks(masks: &[u32], c: &[u32]) -> u32 {
    masks.iter().map(|&m| mask_norm(c, m)).max().unwrap_or(0)
}

/// `eps_star_paths` over many data at once.
pub fn eps_star_paths_batch(model: Model, cs: &[Vec<u32>], mode: Mode) -> Vec<u32> {
    let masks = cover_masks(model);
    exec::map(mode, cs, |c| eps_star_masks(masks, c))
}

/// ASCII picture of a family: `*` nilradical dot, `.` other dot, letters
/// mark the strands (upper case on nilradical dots).
pub fn render(arr: &Arrangement, family: Option<&PathFamily>) -> String {
    let mut s = String::new();
    for row in 1..arr.n {
        for col in (1..arr.n).rev() {
            let d = (row, col);
            let ch = if !arr.contains(d) {
                ' '
            } else {
                let strand = family.and_then(|f| f.paths.iter().position(|p| p.contains(&d)));
                let inside = arr.index_of(d).is_some();
                match strand {
                    Some(k) if inside => (b'A' + k as u8) as char,
                    Some(k) => (b'a' + k as u8) as char,
                    None if inside => '*',
                    None => '.',
                }
            };
            s.push(ch);
            s.push(' ');
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let e6 = delta_embedding(Model::E6R6);
        assert_eq!(e6.dots.len(), 16);
        let e7 = delta_embedding(Model::E7R7);
        assert_eq!(e7.dots.len(), 27);
        let mut rows = [0; 10];
        for d in &e7.dots {
            rows[d.0] += 1;
        }
        assert_eq!(&rows[1..], &[6, 3, 3, 5, 5, 2, 1, 1, 1]);
    }

    #[test]
    fn path_counts() {
        assert_eq!(paths_from((1, 1), 9).len(), 128);
        assert_eq!(paths_from((3, 4), 10).len(), 8);
    }
}
