//! Reduced words: the built-in words for the minuscule parabolics, braid
//! moves, and scripts that bring a chosen letter to the front.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::root_system::{CartanType, Root, RootSystem};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedWord {
    pub kind: CartanType,
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// swap letters at k, k+1 (commuting nodes)
    Commute(usize),
    /// (a, b, a) -> (b, a, b) at k, k+1, k+2
    Braid(usize),
}

/// Node labels `r` for which `varpi_r` is minuscule.
pub fn minuscule_nodes(kind: CartanType) -> Vec<usize> {
    match kind {
        CartanType::A(n) => (1..=n).collect(),
        CartanType::D(n) => vec![1, n - 1, n],
        CartanType::E6 => vec![1, 6],
        CartanType::E7 => vec![7],
    }
}

fn check_minuscule(kind: CartanType, r: usize) -> Result<(), Error> {
    if minuscule_nodes(kind).contains(&r) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "node {r} of {kind} is not minuscule"
        )))
    }
}

const E6_IJ_R6: [usize; 16] = [6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1];
const E6_IJSTAR_R6: [usize; 20] = [3, 4, 5, 6, 2, 4, 5, 3, 4, 2, 3, 4, 5, 6, 3, 4, 5, 3, 4, 3];
const E6_IJ_R1: [usize; 16] = [1, 3, 4, 5, 6, 2, 4, 5, 3, 4, 2, 1, 3, 4, 5, 6];
const E6_IJSTAR_R1: [usize; 20] = [5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 5, 4, 3, 1, 5, 4, 3, 5, 4, 5];
const E7_IJ: [usize; 27] = [
    7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7,
];

/// The word for the minimal coset representative `w^J`.
pub fn builtin_ij(kind: CartanType, r: usize) -> Result<ReducedWord, Error> {
    check_minuscule(kind, r)?;
    let letters = match kind {
        CartanType::A(n) => (1..=n - r + 1)
            .flat_map(|s| (s..=r + s - 1).rev())
            .collect(),
        CartanType::D(n) if r == 1 => (1..=n).chain((1..=n - 2).rev()).collect(),
        CartanType::D(n) => {
            let mut w = Vec::new();
            for s in 1..n {
                let head = if s % 2 == 1 {
                    r
                } else if r == n {
                    n - 1
                } else {
                    n
                };
                w.push(head);
                w.extend((s..=n - 2).rev());
            }
            w
        }
        CartanType::E6 if r == 1 => E6_IJ_R1.to_vec(),
        CartanType::E6 => E6_IJ_R6.to_vec(),
        CartanType::E7 => E7_IJ.to_vec(),
    };
    Ok(ReducedWord { kind, letters })
}

/// Word for the longest element of the Levi factor, written after `w^J`.
/// For E7 the tail is the E6 word `i_0` built from node 6.
pub fn builtin_ij_star(kind: CartanType, r: usize) -> Result<ReducedWord, Error> {
    check_minuscule(kind, r)?;
    let letters = match kind {
        CartanType::E6 if r == 1 => E6_IJSTAR_R1.to_vec(),
        CartanType::E6 => E6_IJSTAR_R6.to_vec(),
        CartanType::E7 => builtin_i0(CartanType::E6, 6)?.letters,
        _ => return Err(Error::Unsupported(format!("Levi word for {kind}"))),
    };
    Ok(ReducedWord { kind, letters })
}

pub fn builtin_i0(kind: CartanType, r: usize) -> Result<ReducedWord, Error> {
    let mut letters = builtin_ij(kind, r)?.letters;
    letters.extend(builtin_ij_star(kind, r)?.letters);
    Ok(ReducedWord { kind, letters })
}

/// Length-function test: the number of positive roots sent negative by the
/// product equals the number of letters.
pub fn is_reduced(rs: &RootSystem, word: &[usize]) -> bool {
    if word.iter().any(|&i| i == 0 || i > rs.rank) {
        return false;
    }
    let inversions = rs
        .positive_roots()
        .iter()
        .filter(|b| rs.apply_word_to_root(word, b).iter().any(|&x| x < 0))
        .count();
    inversions == word.len()
}

/// Compare two words as Weyl group elements via their action on every
/// fundamental weight.
pub fn same_element(rs: &RootSystem, a: &[usize], b: &[usize]) -> bool {
    (1..=rs.rank).all(|j| {
        let w = rs.fundamental_weight(j);
        let act = |word: &[usize]| word.iter().rev().fold(w.clone(), |l, &i| rs.reflect(i, &l));
        act(a) == act(b)
    })
}

fn commutes(rs: &RootSystem, a: usize, b: usize) -> bool {
    a != b && rs.cartan[a - 1][b - 1] == 0
}

fn adjacent(rs: &RootSystem, a: usize, b: usize) -> bool {
    a != b && rs.cartan[a - 1][b - 1] == -1
}

pub fn apply_move(rs: &RootSystem, word: &[usize], mv: Move) -> Result<Vec<usize>, Error> {
    let mut out = word.to_vec();
    match mv {
        Move::Commute(k) => {
            if k + 1 >= word.len() || !commutes(rs, word[k], word[k + 1]) {
                return Err(Error::BadMove(format!("{mv:?} on {word:?}")));
            }
            out.swap(k, k + 1);
        }
        Move::Braid(k) => {
            if k + 2 >= word.len() || word[k] != word[k + 2] || !adjacent(rs, word[k], word[k + 1])
            {
                return Err(Error::BadMove(format!("{mv:?} on {word:?}")));
            }
            out[k] = word[k + 1];
            out[k + 1] = word[k];
            out[k + 2] = word[k + 1];
        }
    }
    Ok(out)
}

/// Commutation moves turning `from` into `to`, if the two words lie in the
/// same commutation class.
pub fn commutation_moves(
    rs: &RootSystem,
    from: &[usize],
    to: &[usize],
) -> Result<Vec<Move>, Error> {
    let fail = || {
        Error::BadMove(format!(
            "{from:?} and {to:?} are not commutation equivalent"
        ))
    };
    if from.len() != to.len() {
        return Err(fail());
    }
    let mut cur = from.to_vec();
    let mut moves = Vec::new();
    for (p, &want) in to.iter().enumerate() {
        let q = (p..cur.len()).find(|&q| cur[q] == want).ok_or_else(fail)?;
        for k in (p..q).rev() {
            cur = apply_move(rs, &cur, Move::Commute(k)).map_err(|_| fail())?;
            moves.push(Move::Commute(k));
        }
    }
    Ok(moves)
}

/// The words of the proof that `i_0` is simply braided, indexed by the Levi
/// letter `k`, together with the letter `k*` it produces at the front.
/// Only the E6 (node 6) and E7 tables are transcribed; node 1 of E6 is the
/// diagram flip `1<->6, 3<->5` of node 6.
fn overline_table(kind: CartanType, r: usize) -> Result<Vec<(usize, usize, Vec<usize>)>, Error> {
    check_minuscule(kind, r)?;
    let e6: Vec<(usize, usize, Vec<usize>)> = vec![
        (2, 5, vec![6, 5, 4, 3, 1, 2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1]),
        (3, 2, vec![6, 5, 4, 2, 3, 4, 1, 3, 5, 4, 2, 6, 5, 4, 3, 1]),
        (4, 4, vec![6, 5, 4, 3, 1, 2, 4, 5, 3, 4, 2, 6, 5, 4, 3, 1]),
        (5, 3, E6_IJ_R6.to_vec()),
        (6, 1, E6_IJ_R6.to_vec()),
    ];
    match (kind, r) {
        (CartanType::E6, 6) => Ok(e6),
        (CartanType::E6, 1) => {
            let flip = |x: usize| match x {
                1 => 6,
                6 => 1,
                3 => 5,
                5 => 3,
                y => y,
            };
            Ok(e6
                .into_iter()
                .map(|(k, ks, w)| (flip(k), flip(ks), w.into_iter().map(flip).collect()))
                .collect())
        }
        (CartanType::E7, 7) => Ok(vec![
            (
                1,
                6,
                vec![
                    7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 7, 5, 6, 4, 5, 3, 4, 1, 3, 2, 4, 5, 6, 7,
                ],
            ),
            (
                2,
                2,
                vec![
                    7, 6, 5, 4, 2, 3, 4, 1, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7,
                ],
            ),
            (
                3,
                5,
                vec![
                    7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7,
                ],
            ),
            (
                4,
                4,
                vec![
                    7, 6, 5, 4, 3, 1, 2, 4, 5, 3, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7,
                ],
            ),
            (5, 3, E7_IJ.to_vec()),
            (6, 1, E7_IJ.to_vec()),
        ]),
        _ => Err(Error::Unsupported(format!("scripts for {kind}"))),
    }
}

/// `k -> k*` for the Levi letters.
pub fn k_star(kind: CartanType, r: usize, k: usize) -> Result<usize, Error> {
    overline_table(kind, r)?
        .into_iter()
        .find(|(kk, _, _)| *kk == k)
        .map(|(_, ks, _)| ks)
        .ok_or_else(|| Error::Unsupported(format!("letter {k}")))
}

pub fn overline_word(kind: CartanType, r: usize, k: usize) -> Result<Vec<usize>, Error> {
    overline_table(kind, r)?
        .into_iter()
        .find(|(kk, _, _)| *kk == k)
        .map(|(_, _, w)| w)
        .ok_or_else(|| Error::Unsupported(format!("letter {k}")))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveScript {
    pub kind: CartanType,
    pub node: usize,
    pub target: usize,
    pub levi_letter: usize,
    pub source: Vec<usize>,
    /// the word after the commutation stage (its prefix is the overline word)
    pub staged: Vec<usize>,
    pub moves: Vec<Move>,
    /// (gamma, gamma + alpha_i, alpha_i) for each braid move, listed from the
    /// front of the word backwards (alpha_i travels right to left, so this
    /// is the reverse of the order the moves are made in)
    pub triples: Vec<[Root; 3]>,
    pub result: Vec<usize>,
}

impl MoveScript {
    pub fn replay(&self, rs: &RootSystem) -> Result<Vec<usize>, Error> {
        self.moves
            .iter()
            .try_fold(self.source.clone(), |w, &mv| apply_move(rs, &w, mv))
    }
}

/// Script taking `i_0` to a word starting with `i`.
///
/// First the prefix `i^J` is commuted into the overline word for the Levi
/// letter `k` with `k* = i`; then the root `alpha_i` is walked to the front,
/// using commutations and only those braid moves whose last root is
/// `alpha_i`.
pub fn simply_braided_script(kind: CartanType, r: usize, i: usize) -> Result<MoveScript, Error> {
    if i == r {
        return Err(Error::Unsupported(format!(
            "letter {i} is the parabolic node"
        )));
    }
    let rs = RootSystem::new(kind)?;
    let table = overline_table(kind, r)?;
    let (k, _, over) = table
        .into_iter()
        .find(|(_, ks, _)| *ks == i)
        .ok_or_else(|| Error::Unsupported(format!("letter {i}")))?;
    let source = builtin_i0(kind, r)?.letters;
    let m = builtin_ij(kind, r)?.len();
    let mut moves = commutation_moves(&rs, &source[..m], &over)?;
    let mut staged = over.clone();
    staged.extend_from_slice(&source[m..]);

    let alpha = rs.simple_root(i);
    let mut dead = HashSet::new();
    let tail = walk_to_front(&rs, &staged, &alpha, &mut dead)
        .ok_or_else(|| Error::BadMove(format!("no restricted script for letter {i}")))?;
    let mut word = staged.clone();
    let mut triples = Vec::new();
    for mv in tail {
        if let Move::Braid(p) = mv {
            let roots = rs.roots_from_word(&word)?;
            triples.push([roots[p].clone(), roots[p + 1].clone(), roots[p + 2].clone()]);
        }
        word = apply_move(&rs, &word, mv)?;
        moves.push(mv);
    }
    triples.reverse();
    Ok(MoveScript {
        kind,
        node: r,
        target: i,
        levi_letter: k,
        source,
        staged,
        moves,
        triples,
        result: word,
    })
}

// Depth-first search over the restricted moves. At every step alpha_i sits
// at position p; some letter of the prefix that can be slid to p-1 either
// commutes past it, or forms (x, y, x) with an earlier copy of x so that a
// braid sends alpha_i two places left.
fn walk_to_front(
    rs: &RootSystem,
    word: &[usize],
    alpha: &Root,
    dead: &mut HashSet<Vec<usize>>,
) -> Option<Vec<Move>> {
    let roots = rs.roots_from_word(word).ok()?;
    let p = roots.iter().position(|b| b == alpha)?;
    if p == 0 {
        return Some(Vec::new());
    }
    if dead.contains(word) {
        return None;
    }
    let x = word[p];
    for m in (0..p).rev() {
        let y = word[m];
        if !word[m + 1..p].iter().all(|&z| commutes(rs, y, z)) {
            continue;
        }
        let mut moves: Vec<Move> = (m..p - 1).map(Move::Commute).collect();
        let mut w = word.to_vec();
        let letter = w.remove(m);
        w.insert(p - 1, letter);
        if commutes(rs, y, x) {
            moves.push(Move::Commute(p - 1));
            w.swap(p - 1, p);
        } else if adjacent(rs, y, x) {
            let q = match (0..m).rev().find(|&q| w[q] == x) {
                Some(q) => q,
                None => continue,
            };
            if !w[q + 1..p - 1].iter().all(|&z| commutes(rs, x, z)) {
                continue;
            }
            moves.extend((q..p - 2).map(Move::Commute));
            let lx = w.remove(q);
            w.insert(p - 2, lx);
            moves.push(Move::Braid(p - 2));
            w[p - 2] = y;
            w[p - 1] = x;
            w[p] = y;
        } else {
            continue;
        }
        if let Some(rest) = walk_to_front(rs, &w, alpha, dead) {
            moves.extend(rest);
            return Some(moves);
        }
    }
    dead.insert(word.to_vec());
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commute_and_braid() {
        let e6 = RootSystem::new(CartanType::E6).unwrap();
        assert_eq!(
            apply_move(&e6, &[2, 3], Move::Commute(0)).unwrap(),
            vec![3, 2]
        );
        assert!(apply_move(&e6, &[2, 4], Move::Commute(0)).is_err());
        let a2 = RootSystem::new(CartanType::A(2)).unwrap();
        assert_eq!(
            apply_move(&a2, &[1, 2, 1], Move::Braid(0)).unwrap(),
            vec![2, 1, 2]
        );
        assert!(apply_move(&a2, &[1, 2, 2], Move::Braid(0)).is_err());
    }

    #[test]
    fn a_n_blocks() {
        assert_eq!(
            builtin_ij(CartanType::A(3), 2).unwrap().letters,
            vec![2, 1, 3, 2]
        );
        assert!(builtin_ij(CartanType::E6, 2).is_err());
    }
}
