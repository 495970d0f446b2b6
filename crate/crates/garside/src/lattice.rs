//! The finite lattice of simple elements underlying a Garside monoid.
//!
//! A monoid instance is handed to this module as a partial product table on its
//! simples (the divisors of the Garside element). Everything else is derived
//! here: divisibility on both sides, quotients, meets and joins, complements
//! with respect to the Garside element, and the conjugation permutation it
//! induces. `validate` re-checks the derived tables against the defining
//! axioms from scratch and reports the first violation with a witness.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) const NONE: u32 = u32::MAX;

/// Index of a simple element in the lattice. Index 0 is always the unit.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simple(pub u32);

impl Simple {
    pub const UNIT: Simple = Simple(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Index of an atom (a simple with no proper divisors).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct AtomInfo {
    pub simple: Simple,
    pub name: String,
}

/// The two divisibility orders. `Right` views the monoid with reversed
/// multiplication, so every left-sided algorithm doubles as its mirror.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub(crate) enum Side {
    Left,
    Right,
}

impl Side {
    pub(crate) fn idx(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

/// Square bit matrix with row access, used for divisibility relations.
#[derive(Clone)]
pub(crate) struct BitMat {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMat {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn and_rows(&self, i: usize, j: usize, out: &mut Vec<u64>) {
        out.clear();
        out.extend(
            self.row(i)
                .iter()
                .zip(self.row(j))
                .map(|(a, b)| a & b),
        );
    }

    pub(crate) fn transpose(&self) -> BitMat {
        let mut t = BitMat::new(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i);
                }
            }
        }
        t
    }
}

pub(crate) fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(a, b)| a & !b == 0)
}

pub(crate) fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            }
        })
    })
}

/// Divisibility data for one side of the monoid.
#[derive(Clone)]
pub(crate) struct SideTables {
    /// `divides[a][b]`: a divides b in this side's order.
    pub divides: BitMat,
    /// Transpose of `divides`: row `b` is the set of divisors of `b`.
    pub lower: BitMat,
    /// `quot[a*n+b] = c` iff `a · c = b` (in this side's multiplication).
    pub quot: Vec<u32>,
    /// `prod[a*n+b] = ab` when the product is again a simple.
    pub prod: Vec<u32>,
    /// Greatest common divisor of a pair, total.
    pub meet: Vec<u32>,
    /// Least common multiple of a pair, total.
    pub join: Vec<u32>,
    /// `delta_complement[a] = quot(a, delta)`.
    pub delta_complement: Vec<u32>,
}

/// Raw input consumed by [`SimpleLattice::build`].
pub struct LatticeInput {
    /// Number of simples. Simple 0 must be the unit.
    pub n: usize,
    /// Index of the Garside element.
    pub delta: usize,
    /// Row-major `n x n` partial product table, `u32::MAX` for undefined.
    pub prod: Vec<u32>,
    /// Indices of the simples expected to be atoms, in naming order.
    pub atom_indices: Vec<usize>,
    /// One name per entry of `atom_indices`.
    pub atom_names: Vec<String>,
}

impl LatticeInput {
    pub const UNDEFINED: u32 = NONE;
}

pub struct SimpleLattice {
    n: usize,
    delta: Simple,
    atoms: Vec<AtomInfo>,
    /// Atom id of a simple, or `NONE`.
    atom_of: Vec<u32>,
    canonical_word: Vec<Vec<AtomId>>,
    atom_len: Vec<u32>,
    by_len_asc: Vec<u32>,
    by_len_desc: Vec<u32>,
    sides: [SideTables; 2],
    delta_conj: Vec<u32>,
    delta_conj_inv: Vec<u32>,
    delta_conj_order: u32,
}

#[derive(Serialize, Clone, Debug)]
pub struct ValidationCheck {
    pub name: String,
    pub ok: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ValidationReport {
    pub ok: bool,
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn first_failure(&self) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| !c.ok)
    }
}

impl SimpleLattice {
    /// Derives the full lattice from a partial product table.
    ///
    /// Fails when the data cannot support a Garside structure at all
    /// (non-unique quotients, missing meets or joins, atoms that do not
    /// generate). Deeper axiom checking lives in [`SimpleLattice::validate`].
    pub fn build(input: LatticeInput) -> Result<SimpleLattice> {
        let n = input.n;
        let bad = |msg: String| Error::LatticeInconsistent(msg);
        if n == 0 || input.delta >= n || input.prod.len() != n * n {
            return Err(bad("malformed lattice input".into()));
        }

        let mut prod = input.prod;
        for a in 0..n {
            for (idx, want) in [(a, a as u32), (a * n, a as u32)] {
                if prod[idx] == NONE {
                    prod[idx] = want;
                } else if prod[idx] != want {
                    return Err(bad(format!("unit product wrong at simple {a}")));
                }
            }
        }

        let left = Self::side_tables_from_prod(n, input.delta, &prod, false)?;
        let mut prod_op = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                prod_op[a * n + b] = prod[b * n + a];
            }
        }
        let right = Self::side_tables_from_prod(n, input.delta, &prod_op, true)?;

        // Atoms: simples whose only divisors are the unit and themselves.
        let mut detected: Vec<usize> = Vec::new();
        for s in 1..n {
            let div_count = iter_ones(left.lower.row(s)).count();
            if div_count == 2 {
                detected.push(s);
            }
        }
        {
            let mut want = input.atom_indices.clone();
            want.sort_unstable();
            if detected != want {
                return Err(bad(format!(
                    "detected atoms {detected:?} do not match declared atoms"
                )));
            }
        }
        if input.atom_names.len() != input.atom_indices.len() {
            return Err(bad("atom name count mismatch".into()));
        }
        let atoms: Vec<AtomInfo> = input
            .atom_indices
            .iter()
            .zip(&input.atom_names)
            .map(|(&s, name)| AtomInfo {
                simple: Simple(s as u32),
                name: name.clone(),
            })
            .collect();
        let mut atom_of = vec![NONE; n];
        for (i, a) in atoms.iter().enumerate() {
            atom_of[a.simple.idx()] = i as u32;
        }

        // Canonical words by breadth-first search over atom right-multiplication.
        let mut canonical_word: Vec<Option<Vec<AtomId>>> = vec![None; n];
        canonical_word[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for (ai, a) in atoms.iter().enumerate() {
                let t = prod[s * n + a.simple.idx()];
                if t != NONE && canonical_word[t as usize].is_none() {
                    let mut w = canonical_word[s].clone().unwrap();
                    w.push(AtomId(ai as u32));
                    canonical_word[t as usize] = Some(w);
                    queue.push_back(t as usize);
                }
            }
        }
        let canonical_word: Vec<Vec<AtomId>> = canonical_word
            .into_iter()
            .enumerate()
            .map(|(s, w)| w.ok_or_else(|| bad(format!("atoms do not generate simple {s}"))))
            .collect::<Result<_>>()?;
        let atom_len: Vec<u32> = canonical_word.iter().map(|w| w.len() as u32).collect();

        let mut by_len_asc: Vec<u32> = (0..n as u32).collect();
        by_len_asc.sort_by_key(|&s| (atom_len[s as usize], s));
        let mut by_len_desc = by_len_asc.clone();
        by_len_desc.reverse();

        let mut lattice = SimpleLattice {
            n,
            delta: Simple(input.delta as u32),
            atoms,
            atom_of,
            canonical_word,
            atom_len,
            by_len_asc,
            by_len_desc,
            sides: [left, right],
            delta_conj: Vec::new(),
            delta_conj_inv: Vec::new(),
            delta_conj_order: 0,
        };
        lattice.fill_meets_joins()?;
        lattice.fill_delta_conj()?;
        Ok(lattice)
    }

    fn side_tables_from_prod(
        n: usize,
        delta: usize,
        prod: &[u32],
        mirror: bool,
    ) -> Result<SideTables> {
        let side = if mirror { "right" } else { "left" };
        let mut divides = BitMat::new(n);
        let mut quot = vec![NONE; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = prod[a * n + x];
                if b == NONE {
                    continue;
                }
                let b = b as usize;
                divides.set(a, b);
                if quot[a * n + b] != NONE && quot[a * n + b] != x as u32 {
                    return Err(Error::LatticeInconsistent(format!(
                        "{side} quotient of {b} by {a} is not unique"
                    )));
                }
                quot[a * n + b] = x as u32;
            }
        }
        let lower = divides.transpose();
        let mut delta_complement = vec![NONE; n];
        for a in 0..n {
            delta_complement[a] = quot[a * n + delta];
            if delta_complement[a] == NONE {
                return Err(Error::LatticeInconsistent(format!(
                    "simple {a} does not {side}-divide the Garside element"
                )));
            }
        }
        Ok(SideTables {
            divides,
            lower,
            quot,
            prod: prod.to_vec(),
            meet: Vec::new(),
            join: Vec::new(),
            delta_complement,
        })
    }

    fn fill_meets_joins(&mut self) -> Result<()> {
        let n = self.n;
        let asc = self.by_len_asc.clone();
        let desc = self.by_len_desc.clone();
        for side in 0..2 {
            let mut meet = vec![NONE; n * n];
            let mut join = vec![NONE; n * n];
            let mut buf = Vec::new();
            for a in 0..n {
                for b in a..n {
                    let t = &self.sides[side];
                    t.lower.and_rows(a, b, &mut buf);
                    let m = desc
                        .iter()
                        .find(|&&c| {
                            buf[c as usize / 64] >> (c % 64) & 1 == 1
                                && is_subset(&buf, t.lower.row(c as usize))
                        })
                        .copied();
                    let m = m.ok_or_else(|| {
                        Error::LatticeInconsistent(format!("no meet for simples {a}, {b}"))
                    })?;
                    meet[a * n + b] = m;
                    meet[b * n + a] = m;

                    t.divides.and_rows(a, b, &mut buf);
                    let j = asc
                        .iter()
                        .find(|&&c| {
                            buf[c as usize / 64] >> (c % 64) & 1 == 1
                                && is_subset(&buf, t.divides.row(c as usize))
                        })
                        .copied();
                    let j = j.ok_or_else(|| {
                        Error::LatticeInconsistent(format!("no join for simples {a}, {b}"))
                    })?;
                    join[a * n + b] = j;
                    join[b * n + a] = j;
                }
            }
            self.sides[side].meet = meet;
            self.sides[side].join = join;
        }
        Ok(())
    }

    fn fill_delta_conj(&mut self) -> Result<()> {
        let n = self.n;
        let dc = &self.sides[0].delta_complement;
        let mut conj = vec![NONE; n];
        let mut seen = vec![false; n];
        for a in 0..n {
            let c = dc[dc[a] as usize];
            if seen[c as usize] {
                return Err(Error::LatticeInconsistent(
                    "conjugation by the Garside element is not a bijection".into(),
                ));
            }
            seen[c as usize] = true;
            conj[a] = c;
        }
        let mut inv = vec![NONE; n];
        for a in 0..n {
            inv[conj[a] as usize] = a as u32;
        }
        // Order of the permutation, as the lcm of its cycle lengths.
        let mut order: u64 = 1;
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = conj[x] as usize;
                len += 1;
            }
            order = order / gcd_u64(order, len) * len;
            if order > 1_000_000 {
                return Err(Error::LatticeInconsistent(
                    "conjugation permutation order is implausibly large".into(),
                ));
            }
        }
        self.delta_conj = conj;
        self.delta_conj_inv = inv;
        self.delta_conj_order = order as u32;
        Ok(())
    }

    pub fn n_simples(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> Simple {
        self.delta
    }

    pub fn atoms(&self) -> &[AtomInfo] {
        &self.atoms
    }

    pub fn atom_info(&self, a: AtomId) -> &AtomInfo {
        &self.atoms[a.idx()]
    }

    /// The atom id of a simple, when the simple is an atom.
    pub fn atom_of(&self, s: Simple) -> Option<AtomId> {
        match self.atom_of[s.idx()] {
            NONE => None,
            i => Some(AtomId(i)),
        }
    }

    pub fn canonical_word(&self, s: Simple) -> &[AtomId] {
        &self.canonical_word[s.idx()]
    }

    pub fn atom_len(&self, s: Simple) -> usize {
        self.atom_len[s.idx()] as usize
    }

    /// Order of the automorphism induced by conjugation with the Garside element.
    pub fn delta_conj_order(&self) -> u32 {
        self.delta_conj_order
    }

    pub fn delta_conj_simple(&self, s: Simple, power: i64) -> Simple {
        let order = self.delta_conj_order as i64;
        let mut k = power.rem_euclid(order);
        let mut x = s.0;
        while k > 0 {
            x = self.delta_conj[x as usize];
            k -= 1;
        }
        Simple(x)
    }

    pub(crate) fn tables(&self, side: Side) -> &SideTables {
        &self.sides[side.idx()]
    }

    pub(crate) fn prod(&self, side: Side, a: u32, b: u32) -> u32 {
        self.sides[side.idx()].prod[a as usize * self.n + b as usize]
    }

    pub(crate) fn quot(&self, side: Side, a: u32, b: u32) -> u32 {
        self.sides[side.idx()].quot[a as usize * self.n + b as usize]
    }

    pub(crate) fn meet(&self, side: Side, a: u32, b: u32) -> u32 {
        self.sides[side.idx()].meet[a as usize * self.n + b as usize]
    }

    pub(crate) fn join(&self, side: Side, a: u32, b: u32) -> u32 {
        self.sides[side.idx()].join[a as usize * self.n + b as usize]
    }

    pub(crate) fn divides(&self, side: Side, a: u32, b: u32) -> bool {
        self.sides[side.idx()].divides.get(a as usize, b as usize)
    }

    pub(crate) fn delta_complement(&self, side: Side, a: u32) -> u32 {
        self.sides[side.idx()].delta_complement[a as usize]
    }

    /// Left-divisibility between simples, in the monoid's own order.
    pub fn left_divides_simple(&self, a: Simple, b: Simple) -> bool {
        self.divides(Side::Left, a.0, b.0)
    }

    pub fn right_divides_simple(&self, a: Simple, b: Simple) -> bool {
        self.divides(Side::Right, a.0, b.0)
    }

    /// Test hook: overwrite one join entry (both symmetric cells).
    #[doc(hidden)]
    pub fn corrupt_join_entry(&mut self, a: Simple, b: Simple, value: Simple) {
        let n = self.n;
        self.sides[0].join[a.idx() * n + b.idx()] = value.0;
        self.sides[0].join[b.idx() * n + a.idx()] = value.0;
    }

    /// Test hook: swap two entries of the Garside conjugation permutation.
    #[doc(hidden)]
    pub fn corrupt_delta_conj_swap(&mut self, a: Simple, b: Simple) {
        self.delta_conj.swap(a.idx(), b.idx());
        for (i, &c) in self.delta_conj.iter().enumerate() {
            self.delta_conj_inv[c as usize] = i as u32;
        }
    }

    /// Re-checks every table against the lattice and Garside axioms.
    ///
    /// Checks run in dependency order and the report keeps them all, so the
    /// first failing entry names the innermost broken axiom with a witness.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let n = self.n;
        let name = |s: Simple| format!("#{}", s.0);

        {
            let mut ok = true;
            let mut witness = None;
            for side in [Side::Left, Side::Right] {
                let t = self.tables(side);
                for a in 0..n {
                    if !t.divides.get(0, a) || !t.divides.get(a, self.delta.idx()) {
                        ok = false;
                        witness = Some(format!("simple {a}"));
                    }
                }
            }
            checks.push(check("unit_minimum_delta_maximum", ok, 2 * n as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let mut cases = 0u64;
            'outer: for side in [Side::Left, Side::Right] {
                let t = self.tables(side);
                for a in 0..n {
                    for b in 0..n {
                        cases += 1;
                        if t.divides.get(a, b) {
                            if a != b && t.divides.get(b, a) {
                                ok = false;
                                witness = Some(format!("antisymmetry fails at {a}, {b}"));
                                break 'outer;
                            }
                            if !is_subset(t.divides.row(b), t.divides.row(a)) {
                                ok = false;
                                witness = Some(format!("transitivity fails at {a}, {b}"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            checks.push(check("divisibility_partial_order", ok, cases, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let mut cases = 0u64;
            'outer: for side in [Side::Left, Side::Right] {
                let t = self.tables(side);
                for a in 0..n {
                    for b in 0..n {
                        cases += 1;
                        let p = t.prod[a * n + b];
                        if p != NONE
                            && (t.quot[a * n + p as usize] != b as u32
                                || !t.divides.get(a, p as usize))
                        {
                            ok = false;
                            witness = Some(format!("product {a}·{b} inconsistent"));
                            break 'outer;
                        }
                        let q = t.quot[a * n + b];
                        if (q != NONE) != t.divides.get(a, b) {
                            ok = false;
                            witness = Some(format!("quotient of {b} by {a} inconsistent"));
                            break 'outer;
                        }
                        if q != NONE && t.prod[a * n + q as usize] != b as u32 {
                            ok = false;
                            witness = Some(format!("quotient of {b} by {a} does not multiply back"));
                            break 'outer;
                        }
                    }
                }
            }
            checks.push(check("product_quotient_consistency", ok, cases, witness));
        }

        {
            // The product of simples a, b is a simple exactly when b divides
            // the complement of a in the Garside element.
            let mut ok = true;
            let mut witness = None;
            let t = self.tables(Side::Left);
            'outer: for a in 0..n {
                let comp = t.delta_complement[a] as usize;
                for b in 0..n {
                    let defined = t.prod[a * n + b] != NONE;
                    if defined != t.divides.get(b, comp) {
                        ok = false;
                        witness = Some(format!("simples {a}, {b}"));
                        break 'outer;
                    }
                }
            }
            checks.push(check("product_defined_iff_complement_divisible", ok, (n * n) as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let t = self.tables(Side::Left);
            'outer: for a in 0..n {
                let mut seen_row = vec![false; n];
                let mut seen_col = vec![false; n];
                for b in 0..n {
                    let p = t.prod[a * n + b];
                    if p != NONE {
                        if seen_row[p as usize] {
                            ok = false;
                            witness = Some(format!("left cancellation fails at {a}"));
                            break 'outer;
                        }
                        seen_row[p as usize] = true;
                    }
                    let p = t.prod[b * n + a];
                    if p != NONE {
                        if seen_col[p as usize] {
                            ok = false;
                            witness = Some(format!("right cancellation fails at {a}"));
                            break 'outer;
                        }
                        seen_col[p as usize] = true;
                    }
                }
            }
            checks.push(check("cancellativity", ok, 2 * (n * n) as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let mut cases = 0u64;
            let t = self.tables(Side::Left);
            let sampled = n > 300;
            let stride = if sampled { 7 } else { 1 };
            'outer: for a in (0..n).step_by(stride) {
                for b in 0..n {
                    let ab = t.prod[a * n + b];
                    if ab == NONE {
                        continue;
                    }
                    for c in 0..n {
                        cases += 1;
                        let bc = t.prod[b * n + c];
                        let ab_c = t.prod[ab as usize * n + c];
                        let a_bc = if bc == NONE { NONE } else { t.prod[a * n + bc as usize] };
                        if ab_c != a_bc {
                            ok = false;
                            witness = Some(format!("associativity fails at {a}, {b}, {c}"));
                            break 'outer;
                        }
                    }
                }
            }
            let label = if sampled { "associativity_sampled" } else { "associativity" };
            checks.push(check(label, ok, cases, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            for a in 0..n {
                let l = self.tables(Side::Left).divides.get(a, self.delta.idx());
                let r = self.tables(Side::Right).divides.get(a, self.delta.idx());
                if !(l && r) {
                    ok = false;
                    witness = Some(format!("simple {a}"));
                }
            }
            checks.push(check("delta_divisors_two_sided", ok, n as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let t = self.tables(Side::Left);
            'outer: for a in 0..n {
                for b in 0..n {
                    let p = t.prod[a * n + b];
                    if p != NONE
                        && self.atom_len[a] + self.atom_len[b] != self.atom_len[p as usize]
                    {
                        ok = false;
                        witness = Some(format!("simples {a}, {b}"));
                        break 'outer;
                    }
                }
            }
            checks.push(check("length_additivity", ok, (n * n) as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let mut cases = 0u64;
            let mut buf = Vec::new();
            'outer: for side in [Side::Left, Side::Right] {
                let t = self.tables(side);
                for a in 0..n {
                    for b in 0..n {
                        cases += 2;
                        let m = t.meet[a * n + b] as usize;
                        t.lower.and_rows(a, b, &mut buf);
                        if buf[m / 64] >> (m % 64) & 1 != 1 || !is_subset(&buf, t.lower.row(m)) {
                            ok = false;
                            witness = Some(format!(
                                "meet of {} and {} on the {side:?} side",
                                name(Simple(a as u32)),
                                name(Simple(b as u32))
                            ));
                            break 'outer;
                        }
                        let j = t.join[a * n + b] as usize;
                        t.divides.and_rows(a, b, &mut buf);
                        if buf[j / 64] >> (j % 64) & 1 != 1 || !is_subset(&buf, t.divides.row(j)) {
                            ok = false;
                            witness = Some(format!(
                                "join of {} and {} on the {side:?} side",
                                name(Simple(a as u32)),
                                name(Simple(b as u32))
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            checks.push(check("meet_join_are_lattice_operations", ok, cases, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = self.delta_conj[a] as usize;
                if c >= n || seen[c] {
                    ok = false;
                    witness = Some(format!("simple {a}"));
                    break;
                }
                seen[c] = true;
            }
            if ok {
                let t = self.tables(Side::Left);
                'outer: for a in 0..n {
                    for b in 0..n {
                        let p = t.prod[a * n + b];
                        let ca = self.delta_conj[a] as usize;
                        let cb = self.delta_conj[b] as usize;
                        let cp = t.prod[ca * n + cb];
                        let expect = if p == NONE { NONE } else { self.delta_conj[p as usize] };
                        if cp != expect {
                            ok = false;
                            witness = Some(format!("conjugation not multiplicative at {a}, {b}"));
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                // the claimed order is minimal and a genuine identity power
                let ord = self.delta_conj_order;
                let applies = |k: u32, mut x: u32| {
                    for _ in 0..k {
                        x = self.delta_conj[x as usize];
                    }
                    x
                };
                if (0..n as u32).any(|x| applies(ord, x) != x) {
                    ok = false;
                    witness = Some("order does not annihilate".into());
                } else {
                    for d in 1..ord {
                        if ord.is_multiple_of(d) && (0..n as u32).all(|x| applies(d, x) == x) {
                            ok = false;
                            witness = Some(format!("order {d} already acts trivially"));
                            break;
                        }
                    }
                }
            }
            checks.push(check("delta_conjugation_automorphism", ok, (n * n) as u64, witness));
        }

        {
            let mut ok = true;
            let mut witness = None;
            let t = self.tables(Side::Left);
            for (i, a) in self.atoms.iter().enumerate() {
                let s = a.simple.idx();
                if iter_ones(t.lower.row(s)).count() != 2 || self.atom_of[s] != i as u32 {
                    ok = false;
                    witness = Some(format!("atom {}", a.name));
                }
            }
            // every simple is reached by its canonical word
            for s in 0..n {
                let mut acc = 0u32;
                for a in &self.canonical_word[s] {
                    let g = self.atoms[a.idx()].simple.0;
                    acc = t.prod[acc as usize * n + g as usize];
                    if acc == NONE {
                        break;
                    }
                }
                if acc != s as u32 {
                    ok = false;
                    witness = Some(format!("canonical word of simple {s}"));
                }
            }
            checks.push(check("atoms_generate", ok, n as u64, witness));
        }

        let ok = checks.iter().all(|c| c.ok);
        ValidationReport { ok, checks }
    }
}

fn check(name: &str, ok: bool, cases: u64, witness: Option<String>) -> ValidationCheck {
    ValidationCheck {
        name: name.into(),
        ok,
        cases,
        witness,
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Hand-built six-simple lattice: the positive braids on three strands
    /// that divide the half twist. Simples: 1, a, b, ab, ba, aba.
    pub(crate) fn tiny_input() -> LatticeInput {
        let n = 6;
        let mut prod = vec![NONE; n * n];
        let mut set = |a: usize, b: usize, c: usize| prod[a * n + b] = c as u32;
        for x in 0..n {
            set(0, x, x);
            set(x, 0, x);
        }
        set(1, 2, 3); // a·b = ab
        set(1, 4, 5); // a·ba = aba
        set(2, 1, 4); // b·a = ba
        set(2, 3, 5); // b·ab = aba
        set(3, 1, 5); // ab·a = aba
        set(4, 2, 5); // ba·b = aba
        LatticeInput {
            n,
            delta: 5,
            prod,
            atom_indices: vec![1, 2],
            atom_names: vec!["a".into(), "b".into()],
        }
    }

    pub(crate) fn tiny() -> SimpleLattice {
        SimpleLattice::build(tiny_input()).unwrap()
    }

    #[test]
    fn builds_and_validates() {
        let l = tiny();
        assert_eq!(l.n_simples(), 6);
        assert_eq!(l.delta(), Simple(5));
        assert_eq!(l.atoms().len(), 2);
        let report = l.validate();
        assert!(report.ok, "{:?}", report.first_failure());
    }

    #[test]
    fn derived_tables() {
        let l = tiny();
        // ∂(a) = ba, ∂(ba) = b, so conjugation by the Garside element swaps a and b.
        assert_eq!(l.delta_complement(Side::Left, 1), 4);
        assert_eq!(l.delta_conj_simple(Simple(1), 1), Simple(2));
        assert_eq!(l.delta_conj_simple(Simple(2), 1), Simple(1));
        assert_eq!(l.delta_conj_order(), 2);
        // meets and joins
        assert_eq!(l.meet(Side::Left, 3, 4), 0); // ab ∧ ba = 1
        assert_eq!(l.join(Side::Left, 1, 2), 5); // a ∨ b = aba
        assert_eq!(l.meet(Side::Left, 3, 5), 3);
        // right divisibility: a divides ba on the right but not ab
        assert!(l.divides(Side::Right, 1, 4));
        assert!(!l.divides(Side::Right, 1, 3));
        // canonical words
        assert_eq!(l.canonical_word(Simple(5)).len(), 3);
        assert_eq!(l.atom_len(Simple(4)), 2);
    }

    #[test]
    fn validation_catches_corrupted_join() {
        let mut l = tiny();
        l.corrupt_join_entry(Simple(1), Simple(2), Simple(3));
        let report = l.validate();
        assert!(!report.ok);
        let first = report.first_failure().unwrap();
        assert_eq!(first.name, "meet_join_are_lattice_operations");
        assert!(first.witness.as_deref().unwrap().contains("#1"));
    }

    #[test]
    fn validation_catches_corrupted_conjugation() {
        let mut l = tiny();
        l.corrupt_delta_conj_swap(Simple(1), Simple(2));
        let report = l.validate();
        assert!(!report.ok);
        assert_eq!(
            report.first_failure().unwrap().name,
            "delta_conjugation_automorphism"
        );
    }

    #[test]
    fn rejects_non_generating_atoms() {
        let mut input = tiny_input();
        let cell = |row: usize, col: usize| row * 6 + col;
        input.prod[cell(1, 2)] = NONE; // remove a·b
        input.prod[cell(1, 4)] = NONE; // remove a·ba
        assert!(SimpleLattice::build(input).is_err());
    }
}
