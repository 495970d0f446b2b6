//! Standard parabolic submonoids.
//!
//! A standard parabolic submonoid is determined by a closed set of atoms:
//! closed meaning that every atom dividing the right-lcm of the set already
//! belongs to it. The lcm is the submonoid's own Garside element `Δ_P`, the
//! maximal divisor of an element inside the submonoid is its `P`-head, and
//! conjugation by `Δ_P` permutes the submonoid's atoms; the order of that
//! permutation is the smallest power of `Δ_P` central in the submonoid.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::{AtomId, Simple};
use crate::monoid::{Monoid, MonoidElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardParabolic {
    atoms: BTreeSet<AtomId>,
    delta_p: Simple,
    central_exponent: u32,
}

impl StandardParabolic {
    pub fn atom_ids(&self) -> &BTreeSet<AtomId> {
        &self.atoms
    }

    pub fn rank(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains_atom(&self, a: AtomId) -> bool {
        self.atoms.contains(&a)
    }

    pub fn delta(&self) -> Simple {
        self.delta_p
    }

    pub fn delta_elt(&self, m: &Monoid) -> MonoidElement {
        m.simple_elt(self.delta_p)
    }

    /// Smallest `k ≥ 1` such that `Δ_P^k` is central in the submonoid.
    pub fn central_exponent(&self) -> u32 {
        self.central_exponent
    }

    pub fn label(&self, m: &Monoid) -> String {
        let names: Vec<&str> = self.atoms.iter().map(|&a| m.atom_name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub fn atoms_dividing_simple(m: &Monoid, s: Simple) -> BTreeSet<AtomId> {
    (0..m.n_atoms() as u32)
        .map(AtomId)
        .filter(|&a| m.lattice().left_divides_simple(m.atom_simple(a), s))
        .collect()
}

fn join_of_atoms(m: &Monoid, atoms: &BTreeSet<AtomId>) -> Simple {
    atoms
        .iter()
        .fold(Simple::UNIT, |j, &a| m.left_join_simple(j, m.atom_simple(a)))
}

fn make_parabolic(m: &Monoid, atoms: BTreeSet<AtomId>, delta_p: Simple) -> StandardParabolic {
    let dp = m.simple_elt(delta_p);
    let tau: BTreeMap<AtomId, AtomId> = atoms
        .iter()
        .map(|&a| {
            let moved = m.multiply(&m.atom_elt(a), &dp);
            let conj = m
                .left_divide_exact(&dp, &moved)
                .expect("conjugation by the parabolic Garside element stays in the submonoid");
            let s = m
                .as_simple(&conj)
                .expect("conjugate of an atom has one factor");
            let b = m
                .lattice()
                .atom_of(s)
                .expect("conjugate of an atom is an atom");
            (a, b)
        })
        .collect();
    let mut central_exponent = 1u64;
    let mut seen: BTreeSet<AtomId> = BTreeSet::new();
    for &start in atoms.iter() {
        if seen.contains(&start) {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        loop {
            seen.insert(x);
            x = tau[&x];
            len += 1;
            if x == start {
                break;
            }
        }
        central_exponent = central_exponent / gcd(central_exponent, len) * len;
    }
    StandardParabolic {
        atoms,
        delta_p,
        central_exponent: central_exponent as u32,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest closed atom set containing the given atoms: the fixpoint of
/// taking all atoms below the right-lcm.
pub fn parabolic_closure(m: &Monoid, atoms: &[AtomId]) -> StandardParabolic {
    let mut cur: BTreeSet<AtomId> = atoms.iter().copied().collect();
    loop {
        let j = join_of_atoms(m, &cur);
        let mut next = atoms_dividing_simple(m, j);
        next.extend(cur.iter().copied());
        if next == cur {
            return make_parabolic(m, cur, j);
        }
        cur = next;
    }
}

pub fn empty_parabolic(m: &Monoid) -> StandardParabolic {
    parabolic_closure(m, &[])
}

pub fn full_parabolic(m: &Monoid) -> StandardParabolic {
    let all: Vec<AtomId> = (0..m.n_atoms() as u32).map(AtomId).collect();
    parabolic_closure(m, &all)
}

/// Maximal left-divisor of `g` inside the submonoid, computed by peeling
/// off `left_gcd(remainder, Δ_P)` until it becomes trivial.
pub fn head_p(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> MonoidElement {
    let dp = p.delta_elt(m);
    let mut rem = g.clone();
    let mut acc = m.unit();
    loop {
        let d = m.left_gcd(&rem, &dp);
        if d.is_unit() {
            return acc;
        }
        rem = m.left_divide_exact(&d, &rem).expect("gcd divides");
        acc = m.multiply(&acc, &d);
    }
}

pub fn tail_p(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> MonoidElement {
    let h = head_p(m, p, g);
    m.left_divide_exact(&h, g).expect("head divides")
}

/// Maximal right-divisor of `g` inside the submonoid.
pub fn right_head_p(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> MonoidElement {
    let dp = p.delta_elt(m);
    let mut rem = g.clone();
    let mut acc = m.unit();
    loop {
        let d = m.right_gcd(&rem, &dp);
        if d.is_unit() {
            return acc;
        }
        rem = m.right_divide_exact(&rem, &d).expect("gcd divides");
        acc = m.multiply(&d, &acc);
    }
}

pub fn is_p_reduced(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> bool {
    m.left_gcd(g, &p.delta_elt(m)).is_unit()
}

/// Whether every normal factor of `g` divides `Δ_P`, which for a standard
/// parabolic submonoid is membership of `g` in it.
pub fn contains_element(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> bool {
    g.factors()
        .iter()
        .all(|&s| m.lattice().left_divides_simple(s, p.delta()))
}

/// Atom-set intersection of two parabolics. The intersection of closed sets
/// must itself be closed; a violation means the instance breaks the theory
/// the crate relies on, and is reported rather than repaired.
pub fn intersect(
    m: &Monoid,
    p: &StandardParabolic,
    q: &StandardParabolic,
) -> Result<StandardParabolic> {
    let both: BTreeSet<AtomId> = p.atoms.intersection(&q.atoms).copied().collect();
    let j = join_of_atoms(m, &both);
    if atoms_dividing_simple(m, j) != both {
        return Err(Error::LatticeInconsistent(format!(
            "intersection {} of closed atom sets is not closed",
            StandardParabolic { atoms: both, delta_p: j, central_exponent: 1 }.label(m)
        )));
    }
    Ok(make_parabolic(m, both, j))
}

/// Every atom that occurs as a factor of `b`: atoms left-dividing any
/// element reachable from `b` by repeatedly stripping one leading atom.
pub fn factor_atoms(m: &Monoid, b: &MonoidElement) -> BTreeSet<AtomId> {
    let mut atoms = BTreeSet::new();
    let mut seen: BTreeSet<MonoidElement> = BTreeSet::new();
    let mut stack = vec![b.clone()];
    while let Some(e) = stack.pop() {
        for a in (0..m.n_atoms() as u32).map(AtomId) {
            if let Some(rest) = m.left_divide_exact(&m.atom_elt(a), &e) {
                atoms.insert(a);
                if seen.insert(rest.clone()) {
                    stack.push(rest);
                }
            }
        }
    }
    atoms
}

/// Smallest standard parabolic submonoid containing `b`.
pub fn smallest_parabolic_containing(m: &Monoid, b: &MonoidElement) -> StandardParabolic {
    let atoms: Vec<AtomId> = factor_atoms(m, b).into_iter().collect();
    parabolic_closure(m, &atoms)
}

/// All standard parabolic submonoids, sorted by rank and then atom set.
/// Every closed atom set is the set of atoms below the join of its members,
/// so scanning the divisor atom sets of all simples enumerates them all.
pub fn all_parabolics(m: &Monoid) -> Vec<StandardParabolic> {
    let mut sets: BTreeSet<BTreeSet<AtomId>> = BTreeSet::new();
    for s in 0..m.lattice().n_simples() as u32 {
        sets.insert(atoms_dividing_simple(m, Simple(s)));
    }
    let mut out: Vec<StandardParabolic> = sets
        .into_iter()
        .map(|atoms| {
            let j = join_of_atoms(m, &atoms);
            make_parabolic(m, atoms, j)
        })
        .collect();
    out.sort_by(|a, b| {
        (a.rank(), &a.atoms).cmp(&(b.rank(), &b.atoms))
    });
    out
}
