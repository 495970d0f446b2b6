//! Monoid elements in left-greedy normal form and the operations on them.
//!
//! An element is stored as its normal form: the sequence of simples obtained
//! by repeatedly splitting off the largest simple left-divisor. A pair of
//! adjacent factors `(x, y)` is normal exactly when the only simple
//! left-dividing `y` that extends `x` inside the simple lattice is the unit,
//! which the code tests as `meet(complement(x), y) == unit`.
//!
//! Every algorithm is written once against a [`Side`]; the right-handed
//! operations run the same code on the mirrored tables and convert elements
//! by reversing their factor sequences.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::{AtomId, AtomInfo, Side, Simple, SimpleLattice, ValidationReport, NONE};

/// A monoid element, kept in left-greedy normal form (no unit factors).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonoidElement {
    factors: Vec<Simple>,
}

impl MonoidElement {
    pub fn unit() -> Self {
        MonoidElement { factors: Vec::new() }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Simple] {
        &self.factors
    }

    /// Number of factors in the normal form.
    pub fn garside_len(&self) -> usize {
        self.factors.len()
    }

    fn from_raw(word: Vec<u32>) -> Self {
        MonoidElement {
            factors: word.into_iter().map(Simple).collect(),
        }
    }

    fn raw(&self) -> Vec<u32> {
        self.factors.iter().map(|s| s.0).collect()
    }
}

pub struct Monoid {
    name: String,
    lattice: SimpleLattice,
    atom_by_name: BTreeMap<String, AtomId>,
    normal_succ: OnceLock<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for Monoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Monoid")
            .field("name", &self.name)
            .field("simples", &self.lattice.n_simples())
            .field("atoms", &self.lattice.atoms().len())
            .finish()
    }
}

impl Monoid {
    pub fn new(name: impl Into<String>, lattice: SimpleLattice) -> Result<Monoid> {
        let mut atom_by_name = BTreeMap::new();
        for (i, info) in lattice.atoms().iter().enumerate() {
            if info.name.is_empty()
                || info
                    .name
                    .chars()
                    .any(|c| c.is_whitespace() || c == '.' || c == ',' || c == '[' || c == ']')
            {
                return Err(Error::InvalidSpec(format!(
                    "atom name {:?} is not a plain identifier",
                    info.name
                )));
            }
            if atom_by_name.insert(info.name.clone(), AtomId(i as u32)).is_some() {
                return Err(Error::InvalidSpec(format!(
                    "duplicate atom name {:?}",
                    info.name
                )));
            }
        }
        Ok(Monoid {
            name: name.into(),
            lattice,
            atom_by_name,
            normal_succ: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &SimpleLattice {
        &self.lattice
    }

    pub fn n_simples(&self) -> usize {
        self.lattice.n_simples()
    }

    pub fn simples(&self) -> impl Iterator<Item = Simple> {
        (0..self.lattice.n_simples() as u32).map(Simple)
    }

    pub fn atoms(&self) -> &[AtomInfo] {
        self.lattice.atoms()
    }

    pub fn n_atoms(&self) -> usize {
        self.lattice.atoms().len()
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atom_by_name.get(name).copied()
    }

    pub fn atom_name(&self, a: AtomId) -> &str {
        &self.lattice.atom_info(a).name
    }

    pub fn atom_simple(&self, a: AtomId) -> Simple {
        self.lattice.atom_info(a).simple
    }

    pub fn delta_simple(&self) -> Simple {
        self.lattice.delta()
    }

    pub fn unit(&self) -> MonoidElement {
        MonoidElement::unit()
    }

    pub fn simple_elt(&self, s: Simple) -> MonoidElement {
        if s == Simple::UNIT {
            MonoidElement::unit()
        } else {
            MonoidElement { factors: vec![s] }
        }
    }

    pub fn atom_elt(&self, a: AtomId) -> MonoidElement {
        self.simple_elt(self.atom_simple(a))
    }

    pub fn delta(&self) -> MonoidElement {
        self.simple_elt(self.lattice.delta())
    }

    pub fn delta_pow(&self, k: usize) -> MonoidElement {
        let d = self.lattice.delta();
        if d == Simple::UNIT {
            return MonoidElement::unit();
        }
        MonoidElement { factors: vec![d; k] }
    }

    /// If the element is a single simple (possibly the unit), which one.
    pub fn as_simple(&self, g: &MonoidElement) -> Option<Simple> {
        match g.factors.len() {
            0 => Some(Simple::UNIT),
            1 => Some(g.factors[0]),
            _ => None,
        }
    }

    pub fn from_atoms(&self, atoms: &[AtomId]) -> MonoidElement {
        let mut word: Vec<u32> = atoms.iter().map(|a| self.atom_simple(*a).0).collect();
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    pub fn from_simples(&self, simples: &[Simple]) -> MonoidElement {
        let mut word: Vec<u32> = simples.iter().map(|s| s.0).collect();
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    /// The full atom word of an element: canonical words of its factors, concatenated.
    pub fn atom_word(&self, g: &MonoidElement) -> Vec<AtomId> {
        g.factors
            .iter()
            .flat_map(|&s| self.lattice.canonical_word(s).iter().copied())
            .collect()
    }

    /// Parses a word in the atoms, separated by `.` or whitespace. The tokens
    /// `1` (unit) and `Delta` are also understood.
    pub fn parse_word(&self, input: &str) -> Result<MonoidElement> {
        let mut word = Vec::new();
        for token in input.split(|c: char| c == '.' || c.is_whitespace()) {
            if token.is_empty() || token == "1" {
                continue;
            }
            if token == "Delta" {
                word.push(self.lattice.delta().0);
            } else if let Some(a) = self.atom_id(token) {
                word.push(self.atom_simple(a).0);
            } else {
                return Err(Error::UnknownAtom(token.to_string()));
            }
        }
        self.normalize(Side::Left, &mut word);
        Ok(MonoidElement::from_raw(word))
    }

    /// Canonical atom word of a simple, atoms joined by `.` (`1` for the unit).
    pub fn format_simple(&self, s: Simple) -> String {
        if s == Simple::UNIT {
            return "1".into();
        }
        self.lattice
            .canonical_word(s)
            .iter()
            .map(|a| self.atom_name(*a))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Normal form as text: factors separated by spaces, atoms in a factor by dots.
    pub fn format_element(&self, g: &MonoidElement) -> String {
        if g.is_unit() {
            return "1".into();
        }
        g.factors
            .iter()
            .map(|&s| self.format_simple(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn atom_len(&self, g: &MonoidElement) -> usize {
        g.factors.iter().map(|&s| self.lattice.atom_len(s)).sum()
    }

    pub fn multiply(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let mut word = g.raw();
        word.extend(h.raw());
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    pub fn multiply_all<'a>(&self, parts: impl IntoIterator<Item = &'a MonoidElement>) -> MonoidElement {
        let mut word = Vec::new();
        for p in parts {
            word.extend(p.raw());
        }
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    pub fn pow(&self, g: &MonoidElement, k: usize) -> MonoidElement {
        let mut word = Vec::with_capacity(g.factors.len() * k);
        for _ in 0..k {
            word.extend(g.raw());
        }
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    /// Largest simple left-dividing the element (its first normal factor).
    pub fn head(&self, g: &MonoidElement) -> Simple {
        g.factors.first().copied().unwrap_or(Simple::UNIT)
    }

    /// The element with its head removed.
    pub fn tail(&self, g: &MonoidElement) -> MonoidElement {
        MonoidElement {
            factors: g.factors.iter().skip(1).copied().collect(),
        }
    }

    /// Largest simple right-dividing the element.
    pub fn right_head(&self, g: &MonoidElement) -> Simple {
        let w = self.to_word(Side::Right, g);
        w.first().copied().map(Simple).unwrap_or(Simple::UNIT)
    }

    pub fn left_divides(&self, u: &MonoidElement, g: &MonoidElement) -> bool {
        self.left_divide_exact(u, g).is_some()
    }

    pub fn right_divides(&self, u: &MonoidElement, g: &MonoidElement) -> bool {
        self.right_divide_exact(g, u).is_some()
    }

    /// `u \ g`: the element `x` with `u x = g`, when `u` left-divides `g`.
    pub fn left_divide_exact(&self, u: &MonoidElement, g: &MonoidElement) -> Option<MonoidElement> {
        let rem = self.quotient_words(Side::Left, &u.raw(), g.raw())?;
        Some(MonoidElement::from_raw(rem))
    }

    /// `g / u`: the element `x` with `x u = g`, when `u` right-divides `g`.
    pub fn right_divide_exact(&self, g: &MonoidElement, u: &MonoidElement) -> Option<MonoidElement> {
        let g_op = self.to_word(Side::Right, g);
        let u_op = self.to_word(Side::Right, u);
        let rem = self.quotient_words(Side::Right, &u_op, g_op)?;
        Some(self.element_of_word(Side::Right, rem))
    }

    pub fn left_gcd(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let out = self.gcd_words(Side::Left, g.raw(), h.raw());
        MonoidElement::from_raw(out)
    }

    pub fn right_gcd(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let g_op = self.to_word(Side::Right, g);
        let h_op = self.to_word(Side::Right, h);
        let out = self.gcd_words(Side::Right, g_op, h_op);
        self.element_of_word(Side::Right, out)
    }

    pub fn right_lcm(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let comp = self.complement_word(Side::Left, &g.raw(), &h.raw());
        let mut word = g.raw();
        word.extend(comp);
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    pub fn left_lcm(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let g_op = self.to_word(Side::Right, g);
        let h_op = self.to_word(Side::Right, h);
        let comp = self.complement_word(Side::Right, &g_op, &h_op);
        let mut word = g_op;
        word.extend(comp);
        self.normalize(Side::Right, &mut word);
        self.element_of_word(Side::Right, word)
    }

    /// `right_lcm(g, h) = g · right_lcm_complement(g, h)`.
    pub fn right_lcm_complement(&self, g: &MonoidElement, h: &MonoidElement) -> MonoidElement {
        let mut comp = self.complement_word(Side::Left, &g.raw(), &h.raw());
        self.normalize(Side::Left, &mut comp);
        MonoidElement::from_raw(comp)
    }

    /// `Δ^{-k} g Δ^k`, defined for every integer `k` because conjugation by
    /// the Garside element permutes the simples.
    pub fn delta_conjugate(&self, g: &MonoidElement, k: i64) -> MonoidElement {
        MonoidElement {
            factors: g
                .factors
                .iter()
                .map(|&s| self.lattice.delta_conj_simple(s, k))
                .collect(),
        }
    }

    /// All elements with at most `max_len` normal factors, in breadth-first
    /// order by normal form length.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<MonoidElement> {
        let succ = self.normal_succ();
        let mut out = vec![MonoidElement::unit()];
        let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
        for depth in 0..max_len {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for w in &layer {
                let candidates: &[u32] = match w.last() {
                    None => &[],
                    Some(&x) => &succ[x as usize],
                };
                if depth == 0 {
                    for s in 1..self.lattice.n_simples() as u32 {
                        next.push(vec![s]);
                    }
                } else {
                    for &y in candidates {
                        let mut v = w.clone();
                        v.push(y);
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned().map(MonoidElement::from_raw));
            layer = next;
        }
        out
    }

    /// Whether a sequence of simples is a left-greedy normal form.
    pub fn is_left_normal(&self, factors: &[Simple]) -> bool {
        if factors.contains(&Simple::UNIT) {
            return false;
        }
        factors.windows(2).all(|p| {
            let comp = self.lattice.delta_complement(Side::Left, p[0].0);
            self.lattice.meet(Side::Left, comp, p[1].0) == 0
        })
    }

    pub fn validate(&self) -> ValidationReport {
        self.lattice.validate()
    }

    pub fn left_meet_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.lattice.meet(Side::Left, a.0, b.0))
    }

    pub fn left_join_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.lattice.join(Side::Left, a.0, b.0))
    }

    pub fn prod_simple(&self, a: Simple, b: Simple) -> Option<Simple> {
        match self.lattice.prod(Side::Left, a.0, b.0) {
            NONE => None,
            c => Some(Simple(c)),
        }
    }

    /// `a \ b` inside the simple lattice: the simple `c` with `a c = b`.
    pub fn left_quot_simple(&self, a: Simple, b: Simple) -> Option<Simple> {
        match self.lattice.quot(Side::Left, a.0, b.0) {
            NONE => None,
            c => Some(Simple(c)),
        }
    }

    pub fn delta_complement_simple(&self, a: Simple) -> Simple {
        Simple(self.lattice.delta_complement(Side::Left, a.0))
    }

    fn normal_succ(&self) -> &Vec<Vec<u32>> {
        self.normal_succ.get_or_init(|| {
            let n = self.lattice.n_simples();
            (0..n as u32)
                .map(|x| {
                    let comp = self.lattice.delta_complement(Side::Left, x);
                    (1..n as u32)
                        .filter(|&y| self.lattice.meet(Side::Left, comp, y) == 0)
                        .collect()
                })
                .collect()
        })
    }

    fn to_word(&self, side: Side, g: &MonoidElement) -> Vec<u32> {
        let mut word = g.raw();
        if side == Side::Right {
            word.reverse();
            self.normalize(Side::Right, &mut word);
        }
        word
    }

    fn element_of_word(&self, side: Side, mut word: Vec<u32>) -> MonoidElement {
        if side == Side::Right {
            word.reverse();
        }
        self.normalize(Side::Left, &mut word);
        MonoidElement::from_raw(word)
    }

    fn normalize(&self, side: Side, word: &mut Vec<u32>) {
        word.retain(|&s| s != 0);
        if word.len() < 2 {
            return;
        }
        loop {
            let mut changed = false;
            for i in 0..word.len() - 1 {
                let (x, y) = (word[i], word[i + 1]);
                if x == 0 || y == 0 {
                    continue;
                }
                let d = self
                    .lattice
                    .meet(side, self.lattice.delta_complement(side, x), y);
                if d != 0 {
                    word[i] = self.lattice.prod(side, x, d);
                    word[i + 1] = self.lattice.quot(side, d, y);
                    changed = true;
                }
            }
            word.retain(|&s| s != 0);
            if !changed || word.len() < 2 {
                return;
            }
        }
    }

    /// Removes the simple `s` from the front of a normal word, if it divides.
    fn quotient_by_simple(&self, side: Side, s: u32, word: &[u32]) -> Option<Vec<u32>> {
        if s == 0 {
            return Some(word.to_vec());
        }
        let head = *word.first()?;
        if !self.lattice.divides(side, s, head) {
            return None;
        }
        let mut out = Vec::with_capacity(word.len());
        out.push(self.lattice.quot(side, s, head));
        out.extend_from_slice(&word[1..]);
        self.normalize(side, &mut out);
        Some(out)
    }

    fn quotient_words(&self, side: Side, u: &[u32], mut word: Vec<u32>) -> Option<Vec<u32>> {
        for &s in u {
            word = self.quotient_by_simple(side, s, &word)?;
        }
        Some(word)
    }

    fn gcd_words(&self, side: Side, mut g: Vec<u32>, mut h: Vec<u32>) -> Vec<u32> {
        let mut acc = Vec::new();
        loop {
            let hg = g.first().copied().unwrap_or(0);
            let hh = h.first().copied().unwrap_or(0);
            let d = self.lattice.meet(side, hg, hh);
            if d == 0 {
                break;
            }
            acc.push(d);
            g = self.quotient_by_simple(side, d, &g).expect("meet divides head");
            h = self.quotient_by_simple(side, d, &h).expect("meet divides head");
        }
        self.normalize(side, &mut acc);
        acc
    }

    /// The word `c` with `u c = lcm(u, v)`, built square by square: each step
    /// replaces the pair `(cur, t)` by the two complements in their join.
    fn complement_word(&self, side: Side, u: &[u32], v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for &s in u {
            let mut cur = s;
            for t in v.iter_mut() {
                let j = self.lattice.join(side, cur, *t);
                let down = self.lattice.quot(side, cur, j);
                let right = self.lattice.quot(side, *t, j);
                *t = down;
                cur = right;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::tiny;

    fn monoid() -> Monoid {
        Monoid::new("tiny", tiny()).unwrap()
    }

    #[test]
    fn parse_format_roundtrip() {
        let m = monoid();
        assert_eq!(m.format_element(&m.parse_word("a.b.a").unwrap()), "a.b.a");
        assert_eq!(m.format_element(&m.parse_word("b.b").unwrap()), "b b");
        assert_eq!(m.format_element(&m.parse_word("1").unwrap()), "1");
        assert_eq!(m.parse_word("Delta").unwrap(), m.delta());
        assert!(m.parse_word("c").is_err());
        for g in m.elements_up_to(2) {
            assert_eq!(m.parse_word(&m.format_element(&g)).unwrap(), g);
        }
    }

    #[test]
    fn normal_form_slides_products_left() {
        let m = monoid();
        let ab = m.parse_word("a.b").unwrap();
        assert_eq!(ab.garside_len(), 1);
        let bb = m.parse_word("b.b").unwrap();
        assert_eq!(bb.garside_len(), 2);
        let abb = m.parse_word("a.b.b").unwrap();
        assert_eq!(abb.factors().len(), 2);
        assert_eq!(m.format_element(&abb), "a.b b");
        assert!(m.is_left_normal(abb.factors()));
        assert!(!m.is_left_normal(&[Simple(1), Simple(2)]));
    }

    #[test]
    fn multiplication_is_associative_here() {
        let m = monoid();
        let els = m.elements_up_to(2);
        for g in &els {
            for h in &els {
                for k in &els {
                    let l = m.multiply(&m.multiply(g, h), k);
                    let r = m.multiply(g, &m.multiply(h, k));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn heads_and_tails() {
        let m = monoid();
        let abb = m.parse_word("a.b.b").unwrap();
        assert_eq!(m.format_simple(m.head(&abb)), "a.b");
        assert_eq!(m.format_element(&m.tail(&abb)), "b");
        assert_eq!(m.format_simple(m.right_head(&abb)), "b");
        assert_eq!(m.head(&m.unit()), Simple::UNIT);
    }

    #[test]
    fn division_both_sides() {
        let m = monoid();
        let a = m.parse_word("a").unwrap();
        let b = m.parse_word("b").unwrap();
        let ab = m.parse_word("a.b").unwrap();
        let abb = m.parse_word("a.b.b").unwrap();
        assert!(m.left_divides(&a, &ab));
        assert!(!m.left_divides(&b, &ab));
        assert!(m.right_divides(&b, &ab));
        assert!(!m.right_divides(&a, &ab));
        assert_eq!(m.left_divide_exact(&a, &abb).unwrap(), m.parse_word("b.b").unwrap());
        assert_eq!(m.right_divide_exact(&abb, &b).unwrap(), ab);
        assert!(m.left_divide_exact(&b, &abb).is_none());
    }

    #[test]
    fn gcd_lcm_all_four() {
        let m = monoid();
        let a = m.parse_word("a").unwrap();
        let b = m.parse_word("b").unwrap();
        let ab = m.parse_word("a.b").unwrap();
        let aa = m.parse_word("a.a").unwrap();
        let bb = m.parse_word("b.b").unwrap();
        assert_eq!(m.left_gcd(&ab, &aa), a);
        assert_eq!(m.right_gcd(&ab, &bb), b);
        assert_eq!(m.right_lcm(&a, &b), m.delta());
        assert_eq!(m.left_lcm(&a, &b), m.delta());
        assert_eq!(m.right_lcm_complement(&a, &b), m.parse_word("b.a").unwrap());
        assert_eq!(m.left_gcd(&a, &b), m.unit());
    }

    #[test]
    fn delta_conjugation_swaps_the_atoms() {
        let m = monoid();
        let a = m.parse_word("a").unwrap();
        let b = m.parse_word("b").unwrap();
        assert_eq!(m.delta_conjugate(&a, 1), b);
        assert_eq!(m.delta_conjugate(&a, 2), a);
        assert_eq!(m.delta_conjugate(&a, -1), b);
        let g = m.parse_word("a.b.b").unwrap();
        let lhs = m.multiply(&g, &m.delta());
        let rhs = m.multiply(&m.delta(), &m.delta_conjugate(&g, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn enumeration_counts() {
        let m = monoid();
        assert_eq!(m.elements_up_to(0).len(), 1);
        assert_eq!(m.elements_up_to(1).len(), 6);
        assert_eq!(m.elements_up_to(2).len(), 19);
        for g in m.elements_up_to(3) {
            assert!(m.is_left_normal(g.factors()));
        }
    }

    #[test]
    fn powers_and_lengths() {
        let m = monoid();
        let d2 = m.delta_pow(2);
        assert_eq!(d2.garside_len(), 2);
        assert_eq!(m.atom_len(&d2), 6);
        let a = m.parse_word("a").unwrap();
        assert_eq!(m.pow(&a, 3), m.parse_word("a.a.a").unwrap());
        assert_eq!(m.pow(&a, 0), m.unit());
    }
}
