//! Finite Coxeter groups as explicit multiplication tables.
//!
//! A group is realized either from a faithful permutation action of its
//! generators (used for the named families) or from a Coxeter matrix by
//! coset enumeration over the trivial subgroup. Both paths end in the same
//! data: a right-multiplication table indexed breadth-first from the
//! identity, which also yields lengths and reduced words.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::NONE;
use crate::perm::Perm;

/// Live-coset bound for enumeration; exceeding it reports the group as not
/// finite (or too large to handle).
pub const COSET_CAP: usize = 10_000;
const DEFINED_CAP: usize = 400_000;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    I2(usize),
}

impl CoxeterType {
    pub fn parse(s: &str) -> Result<CoxeterType> {
        let bad = || Error::InvalidCoxeterMatrix(format!("unknown Coxeter type {s:?}"));
        if let Some(rest) = s.strip_prefix("I2(") {
            let m: usize = rest.strip_suffix(')').and_then(|r| r.parse().ok()).ok_or_else(bad)?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(CoxeterType::I2(m));
        }
        let (family, rank) = s.split_at(1);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match family {
            "A" if rank >= 1 => Ok(CoxeterType::A(rank)),
            "B" if rank >= 2 => Ok(CoxeterType::B(rank)),
            _ => Err(bad()),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) => n,
            CoxeterType::B(n) => n,
            CoxeterType::I2(_) => 2,
        }
    }

    fn generators(&self) -> Vec<Perm> {
        match *self {
            CoxeterType::A(n) => (0..n).map(|i| Perm::transposition(n + 1, i, i + 1)).collect(),
            CoxeterType::B(n) => {
                let deg = 2 * n;
                let mut gens = vec![Perm::transposition(deg, 0, n)];
                for i in 1..n {
                    let g = Perm::transposition(deg, i - 1, i)
                        .compose(&Perm::transposition(deg, n + i - 1, n + i));
                    gens.push(g);
                }
                gens
            }
            CoxeterType::I2(2) => vec![
                Perm::transposition(4, 0, 1),
                Perm::transposition(4, 2, 3),
            ],
            CoxeterType::I2(m) => {
                let a = Perm::from_images((0..m).map(|x| ((m - x) % m) as u8).collect());
                let b = Perm::from_images((0..m).map(|x| ((1 + m - x) % m) as u8).collect());
                vec![a, b]
            }
        }
    }
}

impl std::fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

pub struct CoxGroup {
    matrix: Vec<Vec<u32>>,
    n_gens: usize,
    n_elts: usize,
    /// Flat `n_elts x n_gens` right-multiplication table.
    right: Vec<u32>,
    length: Vec<u32>,
    word: Vec<Vec<u8>>,
    gen_elt: Vec<u32>,
    longest: u32,
}

impl CoxGroup {
    /// Builds the group generated by involutive permutations.
    pub fn from_perms(gens: Vec<Perm>) -> Result<CoxGroup> {
        if gens.is_empty() {
            return Err(Error::InvalidCoxeterMatrix("no generators".into()));
        }
        let degree = gens[0].degree();
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != degree || g.is_identity() || !g.compose(g).is_identity() {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "generator {i} is not a non-trivial involution"
                )));
            }
        }
        let matrix = matrix_from_perms(&gens)?;

        let id = Perm::identity(degree);
        let mut index: HashMap<Perm, u32> = HashMap::from([(id.clone(), 0)]);
        let mut elts = vec![id];
        let mut right: Vec<u32> = Vec::new();
        let mut head = 0usize;
        while head < elts.len() {
            let cur = elts[head].clone();
            for g in &gens {
                let next = cur.compose(g);
                let idx = *index.entry(next.clone()).or_insert_with(|| {
                    elts.push(next);
                    (elts.len() - 1) as u32
                });
                right.push(idx);
            }
            head += 1;
            if elts.len() > COSET_CAP {
                return Err(Error::GroupNotFinite { cap: COSET_CAP });
            }
        }
        Self::finish(matrix, right, elts.len())
    }

    /// Builds the group presented by a Coxeter matrix, by coset enumeration.
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<CoxGroup> {
        let r = matrix.len();
        if r == 0 {
            return Err(Error::InvalidCoxeterMatrix("empty matrix".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidCoxeterMatrix("matrix is not square".into()));
            }
            if row[i] != 1 {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "diagonal entry at {i} must be 1"
                )));
            }
            for (j, &entry) in row.iter().enumerate() {
                if entry != matrix[j][i] {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
                if i != j && entry < 2 {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "off-diagonal entry at ({i}, {j}) must be at least 2"
                    )));
                }
            }
        }
        let mut relators: Vec<Vec<u8>> = (0..r).map(|i| vec![i as u8; 2]).collect();
        for (i, row) in matrix.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate().skip(i + 1) {
                let mut rel = Vec::with_capacity(2 * entry as usize);
                for _ in 0..entry {
                    rel.push(i as u8);
                    rel.push(j as u8);
                }
                relators.push(rel);
            }
        }
        let (table, n) = coset_enumeration(r, &relators, COSET_CAP)?;
        Self::finish(matrix, table, n)
    }

    pub fn for_type(t: &CoxeterType) -> Result<CoxGroup> {
        CoxGroup::from_perms(t.generators())
    }

    /// Renumbers elements breadth-first from the identity and derives
    /// lengths and reduced words along with the longest element.
    fn finish(matrix: Vec<Vec<u32>>, right: Vec<u32>, n: usize) -> Result<CoxGroup> {
        let n_gens = matrix.len();
        let mut order: Vec<u32> = Vec::with_capacity(n);
        let mut new_idx = vec![NONE; n];
        let mut length = vec![0u32; n];
        let mut via: Vec<(u32, u8)> = vec![(NONE, 0); n];
        order.push(0);
        new_idx[0] = 0;
        let mut head = 0usize;
        while head < order.len() {
            let old = order[head] as usize;
            for g in 0..n_gens {
                let t = right[old * n_gens + g] as usize;
                if new_idx[t] == NONE {
                    new_idx[t] = order.len() as u32;
                    length[order.len()] = length[head] + 1;
                    via[order.len()] = (head as u32, g as u8);
                    order.push(t as u32);
                }
            }
            head += 1;
        }
        if order.len() != n {
            return Err(Error::InvalidCoxeterMatrix(
                "generators do not reach every element".into(),
            ));
        }
        let mut table = vec![NONE; n * n_gens];
        for (new_i, &old) in order.iter().enumerate() {
            for g in 0..n_gens {
                table[new_i * n_gens + g] = new_idx[right[old as usize * n_gens + g] as usize];
            }
        }
        let mut word: Vec<Vec<u8>> = vec![Vec::new(); n];
        for i in 1..n {
            let (p, g) = via[i];
            let mut w = word[p as usize].clone();
            w.push(g);
            word[i] = w;
        }
        let gen_elt: Vec<u32> = (0..n_gens).map(|g| table[g]).collect();
        {
            let mut seen = vec![false; n];
            for &e in &gen_elt {
                if e == 0 || seen[e as usize] {
                    return Err(Error::InvalidCoxeterMatrix(
                        "generators are not pairwise distinct in the group".into(),
                    ));
                }
                seen[e as usize] = true;
            }
        }
        let max_len = *length.iter().max().unwrap();
        let longest: Vec<u32> = (0..n as u32).filter(|&i| length[i as usize] == max_len).collect();
        if longest.len() != 1 {
            return Err(Error::InvalidCoxeterMatrix(
                "no unique longest element".into(),
            ));
        }
        Ok(CoxGroup {
            matrix,
            n_gens,
            n_elts: n,
            right: table,
            length,
            word,
            gen_elt,
            longest: longest[0],
        })
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn n_elts(&self) -> usize {
        self.n_elts
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn gen_elt(&self, g: usize) -> usize {
        self.gen_elt[g] as usize
    }

    pub fn right_mult(&self, e: usize, g: usize) -> usize {
        self.right[e * self.n_gens + g] as usize
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.word[b]
            .iter()
            .fold(a, |x, &g| self.right_mult(x, g as usize))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.word[a]
            .iter()
            .rev()
            .fold(0, |x, &g| self.right_mult(x, g as usize))
    }

    pub fn length(&self, e: usize) -> usize {
        self.length[e] as usize
    }

    pub fn word(&self, e: usize) -> &[u8] {
        &self.word[e]
    }

    pub fn longest_element(&self) -> usize {
        self.longest as usize
    }

    /// Full multiplication table, built by extending each second factor one
    /// generator at a time along the breadth-first order.
    pub fn full_mult_table(&self) -> Vec<u32> {
        let n = self.n_elts;
        let mut t = vec![NONE; n * n];
        for a in 0..n {
            t[a * n] = a as u32;
        }
        for b in 1..n {
            let w = &self.word[b];
            let (g, rest) = (*w.last().unwrap() as usize, &w[..w.len() - 1]);
            let pref = rest
                .iter()
                .fold(0usize, |x, &h| self.right_mult(x, h as usize));
            for a in 0..n {
                let ap = t[a * n + pref] as usize;
                t[a * n + b] = self.right_mult(ap, g) as u32;
            }
        }
        t
    }
}

fn matrix_from_perms(gens: &[Perm]) -> Result<Vec<Vec<u32>>> {
    let r = gens.len();
    let mut matrix = vec![vec![0u32; r]; r];
    for i in 0..r {
        matrix[i][i] = 1;
        for j in 0..r {
            if i == j {
                continue;
            }
            let p = gens[i].compose(&gens[j]);
            let mut q = p.clone();
            let mut order = 1u32;
            while !q.is_identity() {
                q = q.compose(&p);
                order += 1;
                if order > 1_000 {
                    return Err(Error::InvalidCoxeterMatrix(
                        "product of two generators has huge order".into(),
                    ));
                }
            }
            matrix[i][j] = order;
            if order < 2 {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "generators {i} and {j} coincide"
                )));
            }
        }
    }
    Ok(matrix)
}

/// Enumerates cosets of the trivial subgroup for a presentation whose
/// generators are all involutions. Returns the right-multiplication table of
/// the group and its order.
fn coset_enumeration(
    n_gens: usize,
    relators: &[Vec<u8>],
    live_cap: usize,
) -> Result<(Vec<u32>, usize)> {
    struct Tc {
        n_gens: usize,
        table: Vec<u32>,
        parent: Vec<u32>,
        live: usize,
        queue: VecDeque<(u32, u32)>,
        dirty: bool,
    }

    impl Tc {
        fn find(&mut self, mut x: u32) -> u32 {
            while self.parent[x as usize] != x {
                let p = self.parent[x as usize];
                self.parent[x as usize] = self.parent[p as usize];
                x = self.parent[x as usize];
            }
            x
        }

        fn get(&mut self, c: u32, g: usize) -> u32 {
            let c = self.find(c);
            let t = self.table[c as usize * self.n_gens + g];
            if t == NONE {
                NONE
            } else {
                let t = self.find(t);
                self.table[c as usize * self.n_gens + g] = t;
                t
            }
        }

        /// Records `c · g = d` (and `d · g = c`), queueing a coincidence when
        /// a different value is already present.
        fn deduce(&mut self, c: u32, g: usize, d: u32) {
            let c = self.find(c);
            let d = self.find(d);
            for (x, y) in [(c, d), (d, c)] {
                let cell = x as usize * self.n_gens + g;
                let old = self.table[cell];
                if old == NONE {
                    self.table[cell] = y;
                    self.dirty = true;
                } else {
                    let old = self.find(old);
                    self.table[cell] = old;
                    if old != y {
                        self.queue.push_back((old, y));
                    }
                }
            }
        }

        fn define(&mut self, c: u32, g: usize) -> u32 {
            let n = self.parent.len() as u32;
            self.parent.push(n);
            self.table.extend(std::iter::repeat_n(NONE, self.n_gens));
            self.live += 1;
            self.deduce(c, g, n);
            n
        }

        fn process_coincidences(&mut self) {
            while let Some((a, b)) = self.queue.pop_front() {
                let a = self.find(a);
                let b = self.find(b);
                if a == b {
                    continue;
                }
                let (keep, drop) = if a < b { (a, b) } else { (b, a) };
                self.parent[drop as usize] = keep;
                self.live -= 1;
                self.dirty = true;
                for g in 0..self.n_gens {
                    let td = self.table[drop as usize * self.n_gens + g];
                    if td == NONE {
                        continue;
                    }
                    let cell = keep as usize * self.n_gens + g;
                    if self.table[cell] == NONE {
                        self.table[cell] = td;
                    } else {
                        let x = self.table[cell];
                        self.queue.push_back((x, td));
                    }
                }
            }
        }

        fn scan_and_fill(&mut self, c: u32, rel: &[u8], live_cap: usize) -> Result<()> {
            loop {
                let c = self.find(c);
                let mut f = c;
                let mut i = 0;
                while i < rel.len() {
                    let next = self.get(f, rel[i] as usize);
                    if next == NONE {
                        break;
                    }
                    f = next;
                    i += 1;
                }
                if i == rel.len() {
                    if f != c {
                        self.queue.push_back((f, c));
                        self.process_coincidences();
                    }
                    return Ok(());
                }
                let mut b = c;
                let mut j = rel.len();
                while j > i + 1 {
                    let prev = self.get(b, rel[j - 1] as usize);
                    if prev == NONE {
                        break;
                    }
                    b = prev;
                    j -= 1;
                }
                if j == i + 1 {
                    self.deduce(f, rel[i] as usize, b);
                    self.process_coincidences();
                    return Ok(());
                }
                if self.live >= live_cap || self.parent.len() >= DEFINED_CAP {
                    return Err(Error::GroupNotFinite { cap: live_cap });
                }
                self.define(f, rel[i] as usize);
                self.process_coincidences();
            }
        }
    }

    let mut tc = Tc {
        n_gens,
        table: vec![NONE; n_gens],
        parent: vec![0],
        live: 1,
        queue: VecDeque::new(),
        dirty: false,
    };

    loop {
        tc.dirty = false;
        for c in 0..tc.parent.len() as u32 {
            if tc.find(c) != c {
                continue;
            }
            for rel in relators {
                tc.scan_and_fill(c, rel, live_cap)?;
                if tc.find(c) != c {
                    break;
                }
            }
        }
        if !tc.dirty {
            break;
        }
    }

    let total = tc.parent.len() as u32;
    let mut reps: Vec<u32> = Vec::new();
    let mut new_idx = vec![NONE; total as usize];
    for c in 0..total {
        if tc.find(c) == c {
            new_idx[c as usize] = reps.len() as u32;
            reps.push(c);
        }
    }
    let n = reps.len();
    let mut out = vec![NONE; n * n_gens];
    for (i, &c) in reps.iter().enumerate() {
        for g in 0..n_gens {
            let t = tc.get(c, g);
            if t == NONE {
                return Err(Error::InvalidCoxeterMatrix(
                    "coset table is incomplete after closure".into(),
                ));
            }
            out[i * n_gens + g] = new_idx[t as usize];
        }
    }
    Ok((out, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_sizes_and_longest() {
        for (n, size, maxlen) in [(1, 2, 1), (2, 6, 3), (3, 24, 6), (4, 120, 10)] {
            let g = CoxGroup::for_type(&CoxeterType::A(n)).unwrap();
            assert_eq!(g.n_elts(), size);
            assert_eq!(g.length(g.longest_element()), maxlen);
        }
    }

    #[test]
    fn hyperoctahedral_and_dihedral_sizes() {
        let b2 = CoxGroup::for_type(&CoxeterType::B(2)).unwrap();
        assert_eq!(b2.n_elts(), 8);
        assert_eq!(b2.coxeter_matrix()[0][1], 4);
        let b3 = CoxGroup::for_type(&CoxeterType::B(3)).unwrap();
        assert_eq!(b3.n_elts(), 48);
        assert_eq!(b3.length(b3.longest_element()), 9);
        for m in [2usize, 3, 5, 7] {
            let g = CoxGroup::for_type(&CoxeterType::I2(m)).unwrap();
            assert_eq!(g.n_elts(), 2 * m);
            assert_eq!(g.coxeter_matrix()[0][1] as usize, m);
        }
    }

    #[test]
    fn coset_enumeration_matches_permutation_realization() {
        for t in [CoxeterType::A(3), CoxeterType::B(3), CoxeterType::I2(5)] {
            let by_perm = CoxGroup::for_type(&t).unwrap();
            let by_matrix = CoxGroup::from_matrix(by_perm.coxeter_matrix().to_vec()).unwrap();
            assert_eq!(by_matrix.n_elts(), by_perm.n_elts());
            let count_by_len = |g: &CoxGroup| {
                let mut c = std::collections::BTreeMap::new();
                for e in 0..g.n_elts() {
                    *c.entry(g.length(e)).or_insert(0usize) += 1;
                }
                c
            };
            assert_eq!(count_by_len(&by_matrix), count_by_len(&by_perm));
        }
    }

    #[test]
    fn group_axioms_spot_checks() {
        let g = CoxGroup::for_type(&CoxeterType::A(3)).unwrap();
        let n = g.n_elts();
        for a in 0..n {
            assert_eq!(g.mult(a, g.inverse(a)), 0);
            assert_eq!(g.mult(g.inverse(a), a), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mult(g.mult(a, b), c), g.mult(a, g.mult(b, c)));
                }
            }
        }
        let table = g.full_mult_table();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(table[a * n + b] as usize, g.mult(a, b));
            }
        }
    }

    #[test]
    fn infinite_group_hits_the_cap() {
        let affine = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        match CoxGroup::from_matrix(affine) {
            Err(Error::GroupNotFinite { cap }) => assert_eq!(cap, COSET_CAP),
            Err(other) => panic!("expected the cap to trip, got {other:?}"),
            Ok(_) => panic!("expected the cap to trip, got a finite group"),
        }
    }

    #[test]
    fn bad_matrices_are_rejected() {
        assert!(CoxGroup::from_matrix(vec![vec![1, 2], vec![3, 1]]).is_err());
        assert!(CoxGroup::from_matrix(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxGroup::from_matrix(vec![vec![2, 3], vec![3, 2]]).is_err());
        assert!(CoxeterType::parse("Z9").is_err());
        assert_eq!(CoxeterType::parse("I2(7)").unwrap(), CoxeterType::I2(7));
        assert_eq!(CoxeterType::parse("A4").unwrap(), CoxeterType::A(4));
    }
}
