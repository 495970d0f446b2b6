//! Ribbons: elements that conjugate one standard parabolic submonoid onto
//! another.
//!
//! A ribbon for a source submonoid is a reduced element whose conjugation is
//! defined on every atom of the source; conjugation then carries the source
//! isomorphically onto a target standard parabolic submonoid and transports
//! the Garside element. Ribbons with matching endpoints compose and are
//! closed under left-gcd and right-lcm; every ribbon factors into elementary
//! ribbons `v_{s,P}` defined by `Δ_{P∪{s}} = Δ_P · v_{s,P}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result, RibbonError};
use crate::lattice::AtomId;
use crate::monoid::{Monoid, MonoidElement};
use crate::parabolic::{self, StandardParabolic};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ribbon {
    source: StandardParabolic,
    word: MonoidElement,
    target: StandardParabolic,
    atom_map: BTreeMap<AtomId, AtomId>,
}

impl Ribbon {
    pub fn source(&self) -> &StandardParabolic {
        &self.source
    }

    pub fn word(&self) -> &MonoidElement {
        &self.word
    }

    pub fn target(&self) -> &StandardParabolic {
        &self.target
    }

    pub fn atom_map(&self) -> &BTreeMap<AtomId, AtomId> {
        &self.atom_map
    }

    pub fn map_atom(&self, a: AtomId) -> Option<AtomId> {
        self.atom_map.get(&a).copied()
    }
}

/// `g⁻¹ b g` as a monoid element when it exists, which is exactly when `g`
/// left-divides `b·g`.
pub fn conjugate_if_defined(
    m: &Monoid,
    b: &MonoidElement,
    g: &MonoidElement,
) -> Option<MonoidElement> {
    m.left_divide_exact(g, &m.multiply(b, g))
}

/// The standard parabolic submonoid generated by `p` and one extra atom.
pub fn enlarged_parabolic(m: &Monoid, p: &StandardParabolic, s: AtomId) -> StandardParabolic {
    let mut atoms: Vec<AtomId> = p.atom_ids().iter().copied().collect();
    atoms.push(s);
    parabolic::parabolic_closure(m, &atoms)
}

/// The elementary ribbon `v_{s,P}`, the cofactor of `Δ_P` inside the Garside
/// element of the submonoid enlarged by `s`.
pub fn v_s_p(m: &Monoid, p: &StandardParabolic, s: AtomId) -> Result<MonoidElement> {
    if p.contains_atom(s) {
        return Err(Error::AtomInParabolic(m.atom_name(s).to_string()));
    }
    let big = enlarged_parabolic(m, p, s);
    m.left_divide_exact(&p.delta_elt(m), &big.delta_elt(m))
        .ok_or_else(|| {
            Error::LatticeInconsistent(format!(
                "Garside element of {} does not divide that of {}",
                p.label(m),
                big.label(m)
            ))
        })
}

/// Certify `g` as a ribbon from `p`: `g` must be reduced for `p`, every atom
/// of `p` must conjugate into the monoid, and the conjugates must form the
/// atom set of a standard parabolic submonoid that also receives `Δ_P`.
pub fn is_ribbon(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> Result<Ribbon> {
    if !parabolic::is_p_reduced(m, p, g) {
        return Err(RibbonError::NotReduced.into());
    }
    let mut atom_map = BTreeMap::new();
    let mut images = BTreeSet::new();
    for &a in p.atom_ids() {
        let conj = conjugate_if_defined(m, &m.atom_elt(a), g)
            .ok_or(RibbonError::ConjugateUndefined(a))?;
        let image = m
            .as_simple(&conj)
            .and_then(|s| m.lattice().atom_of(s))
            .ok_or_else(|| {
                RibbonError::Inconsistent(format!(
                    "conjugate {} of atom {} is not an atom",
                    m.format_element(&conj),
                    m.atom_name(a)
                ))
            })?;
        atom_map.insert(a, image);
        images.insert(image);
    }
    if images.len() != atom_map.len() {
        return Err(RibbonError::Inconsistent("atom conjugation is not injective".into()).into());
    }
    let image_list: Vec<AtomId> = images.iter().copied().collect();
    let target = parabolic::parabolic_closure(m, &image_list);
    if target.atom_ids() != &images {
        return Err(RibbonError::Inconsistent(format!(
            "conjugated atom set {:?} is not closed",
            image_list
        ))
        .into());
    }
    let delta_moved = conjugate_if_defined(m, &p.delta_elt(m), g).ok_or_else(|| {
        RibbonError::Inconsistent("source Garside element does not conjugate".into())
    })?;
    if delta_moved != target.delta_elt(m) {
        return Err(RibbonError::Inconsistent(format!(
            "Garside element maps to {} instead of {}",
            m.format_element(&delta_moved),
            m.format_element(&target.delta_elt(m))
        ))
        .into());
    }
    Ok(Ribbon {
        source: p.clone(),
        word: g.clone(),
        target,
        atom_map,
    })
}

pub fn identity_ribbon(m: &Monoid, p: &StandardParabolic) -> Ribbon {
    Ribbon {
        source: p.clone(),
        word: m.unit(),
        target: p.clone(),
        atom_map: p.atom_ids().iter().map(|&a| (a, a)).collect(),
    }
}

pub fn ribbon_compose(m: &Monoid, r1: &Ribbon, r2: &Ribbon) -> Result<Ribbon> {
    if r1.target != r2.source {
        return Err(Error::SourceMismatch);
    }
    let word = m.multiply(&r1.word, &r2.word);
    let composed = is_ribbon(m, &r1.source, &word)?;
    for (&a, &b) in &r1.atom_map {
        let through = r2.map_atom(b);
        if through != composed.map_atom(a) {
            return Err(RibbonError::Inconsistent(
                "composed atom map disagrees with conjugation".into(),
            )
            .into());
        }
    }
    Ok(composed)
}

pub fn ribbon_gcd(
    m: &Monoid,
    p: &StandardParabolic,
    g: &MonoidElement,
    h: &MonoidElement,
) -> Result<MonoidElement> {
    is_ribbon(m, p, g)?;
    is_ribbon(m, p, h)?;
    let d = m.left_gcd(g, h);
    is_ribbon(m, p, &d)?;
    Ok(d)
}

pub fn ribbon_lcm(
    m: &Monoid,
    p: &StandardParabolic,
    g: &MonoidElement,
    h: &MonoidElement,
) -> Result<MonoidElement> {
    is_ribbon(m, p, g)?;
    is_ribbon(m, p, h)?;
    let l = m.right_lcm(g, h);
    is_ribbon(m, p, &l)?;
    Ok(l)
}

/// Split a ribbon along its normal form, one certified ribbon per factor.
pub fn normal_form_ribbon_split(m: &Monoid, r: &Ribbon) -> Result<Vec<Ribbon>> {
    let mut out = Vec::with_capacity(r.word.garside_len());
    let mut cur = r.source.clone();
    for &f in r.word.factors() {
        let piece = is_ribbon(m, &cur, &m.simple_elt(f))?;
        cur = piece.target.clone();
        out.push(piece);
    }
    Ok(out)
}

/// Maximal ribbon left-divisor of a `p`-reduced element, its cofactor, and
/// the transported submonoid.
///
/// Greedy scheme: take the right-lcm of every elementary ribbon dividing the
/// remainder, absorb it, transport the submonoid, and repeat. Every ribbon
/// divisor of the remainder divides that lcm step by step, so the fixpoint
/// is the maximal ribbon prefix.
pub fn ribbon_prefix(
    m: &Monoid,
    p: &StandardParabolic,
    g: &MonoidElement,
) -> Result<(MonoidElement, MonoidElement, StandardParabolic)> {
    if !parabolic::is_p_reduced(m, p, g) {
        return Err(RibbonError::NotReduced.into());
    }
    let mut prefix = m.unit();
    let mut rem = g.clone();
    let mut cur = p.clone();
    loop {
        let mut step = m.unit();
        for s in (0..m.n_atoms() as u32).map(AtomId) {
            if cur.contains_atom(s) {
                continue;
            }
            let v = v_s_p(m, &cur, s)?;
            if m.left_divides(&v, &rem) {
                step = m.right_lcm(&step, &v);
            }
        }
        if step.is_unit() {
            return Ok((prefix, rem, cur));
        }
        rem = m.left_divide_exact(&step, &rem).ok_or_else(|| {
            RibbonError::Inconsistent("lcm of divisors fails to divide".into())
        })?;
        cur = is_ribbon(m, &cur, &step)?.target;
        prefix = m.multiply(&prefix, &step);
    }
}

/// Whether every atom left-dividing `Δ_P · g` lies in `p`; equivalent to the
/// ribbon prefix of a `p`-reduced `g` being trivial.
pub fn atoms_of_delta_p_g_confined(m: &Monoid, p: &StandardParabolic, g: &MonoidElement) -> bool {
    let dpg = m.multiply(&p.delta_elt(m), g);
    (0..m.n_atoms() as u32)
        .map(AtomId)
        .all(|a| !m.left_divides(&m.atom_elt(a), &dpg) || p.contains_atom(a))
}

#[derive(Clone, Debug)]
pub struct RibbonEdge {
    pub from: usize,
    pub to: usize,
    pub atom: AtomId,
    pub word: MonoidElement,
}

/// The part of the ribbon category reachable from one submonoid: vertices
/// are standard parabolic submonoids, edges the elementary ribbons. With
/// `atoms_only`, an edge is dropped when another edge at the same source
/// properly left-divides it.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    pub vertices: Vec<StandardParabolic>,
    pub edges: Vec<RibbonEdge>,
}

impl RibbonGraph {
    pub fn vertex_index(&self, p: &StandardParabolic) -> Option<usize> {
        self.vertices.iter().position(|q| q == p)
    }

    pub fn to_dot(&self, m: &Monoid) -> String {
        let mut out = String::from("digraph ribbons {\n");
        for (i, p) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, p.label(m)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}: {}\"];\n",
                e.from,
                e.to,
                m.atom_name(e.atom),
                m.format_element(&e.word)
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn ribbon_category_graph(
    m: &Monoid,
    start: &StandardParabolic,
    atoms_only: bool,
) -> Result<RibbonGraph> {
    let mut vertices: Vec<StandardParabolic> = vec![start.clone()];
    let mut index: BTreeMap<BTreeSet<AtomId>, usize> = BTreeMap::new();
    index.insert(start.atom_ids().clone(), 0);
    let mut edges = Vec::new();
    let mut next = 0usize;
    while next < vertices.len() {
        let p = vertices[next].clone();
        let mut outgoing: Vec<(AtomId, MonoidElement, StandardParabolic)> = Vec::new();
        for s in (0..m.n_atoms() as u32).map(AtomId) {
            if p.contains_atom(s) {
                continue;
            }
            let v = v_s_p(m, &p, s)?;
            let rb = is_ribbon(m, &p, &v)?;
            outgoing.push((s, v, rb.target));
        }
        let kept: Vec<bool> = outgoing
            .iter()
            .map(|(_, v, _)| {
                !atoms_only
                    || !outgoing
                        .iter()
                        .any(|(_, w, _)| w != v && m.left_divides(w, v))
            })
            .collect();
        for ((s, v, target), keep) in outgoing.into_iter().zip(kept) {
            if !keep {
                continue;
            }
            let key = target.atom_ids().clone();
            let to = *index.entry(key).or_insert_with(|| {
                vertices.push(target.clone());
                vertices.len() - 1
            });
            edges.push(RibbonEdge {
                from: next,
                to,
                atom: s,
                word: v,
            });
        }
        next += 1;
    }
    Ok(RibbonGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::presentations::{artin_for_type, dual_for_rank};

    fn parab(m: &Monoid, names: &[&str]) -> StandardParabolic {
        let atoms: Vec<AtomId> = names.iter().map(|n| m.atom_id(n).unwrap()).collect();
        parabolic::parabolic_closure(m, &atoms)
    }

    #[test]
    fn conjugation_in_the_two_generator_braid_monoid() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let a = a2.parse_word("s1").unwrap();
        let b = a2.parse_word("s2").unwrap();
        let ba = a2.parse_word("s2.s1").unwrap();
        assert_eq!(conjugate_if_defined(&a2, &a, &ba), Some(b.clone()));
        assert_eq!(conjugate_if_defined(&a2, &a, &a), Some(a.clone()));
        assert_eq!(conjugate_if_defined(&a2, &a, &b), None);
    }

    #[test]
    fn elementary_ribbon_words() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p = parab(&a2, &["s1"]);
        let s2 = a2.atom_id("s2").unwrap();
        let v = v_s_p(&a2, &p, s2).unwrap();
        assert_eq!(a2.format_element(&v), "s2.s1");
        let s1 = a2.atom_id("s1").unwrap();
        assert_eq!(
            v_s_p(&a2, &p, s1),
            Err(Error::AtomInParabolic("s1".into()))
        );

        let d4 = dual_for_rank(4).unwrap();
        let p5 = parab(&d4, &["s5"]);
        let v6 = v_s_p(&d4, &p5, d4.atom_id("s6").unwrap()).unwrap();
        assert_eq!(d4.format_element(&v6), "s1.s3");
        let v1 = v_s_p(&d4, &p5, d4.atom_id("s1").unwrap()).unwrap();
        assert_eq!(d4.format_element(&v1), "s1");
        let s6 = d4.parse_word("s6").unwrap();
        assert!(!d4.left_divides(&s6, &v6));
    }

    #[test]
    fn ribbon_recognition() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p = parab(&a2, &["s1"]);
        let ba = a2.parse_word("s2.s1").unwrap();
        let r = is_ribbon(&a2, &p, &ba).unwrap();
        assert_eq!(r.target().label(&a2), "{s2}");
        assert_eq!(
            r.map_atom(a2.atom_id("s1").unwrap()),
            Some(a2.atom_id("s2").unwrap())
        );

        let ident = is_ribbon(&a2, &p, &a2.unit()).unwrap();
        assert_eq!(ident, identity_ribbon(&a2, &p));

        let ab = a2.parse_word("s1.s2").unwrap();
        assert_eq!(
            is_ribbon(&a2, &p, &ab),
            Err(Error::Ribbon(RibbonError::NotReduced))
        );

        let b = a2.parse_word("s2").unwrap();
        assert_eq!(
            is_ribbon(&a2, &p, &b),
            Err(Error::Ribbon(RibbonError::ConjugateUndefined(
                a2.atom_id("s1").unwrap()
            )))
        );
    }

    #[test]
    fn composition_and_closure() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p = parab(&a2, &["s1"]);
        let q = parab(&a2, &["s2"]);
        let ba = a2.parse_word("s2.s1").unwrap();
        let ab = a2.parse_word("s1.s2").unwrap();
        let r1 = is_ribbon(&a2, &p, &ba).unwrap();
        let r2 = is_ribbon(&a2, &q, &ab).unwrap();
        let both = ribbon_compose(&a2, &r1, &r2).unwrap();
        assert_eq!(both.target(), &p);
        assert_eq!(both.word(), &a2.multiply(&ba, &ab));
        assert_eq!(
            ribbon_compose(&a2, &r1, &r1),
            Err(Error::SourceMismatch)
        );
        let id = identity_ribbon(&a2, &q);
        assert_eq!(ribbon_compose(&a2, &r1, &id).unwrap(), r1);

        assert_eq!(ribbon_gcd(&a2, &p, &ba, &ba).unwrap(), ba);
        assert!(ribbon_gcd(&a2, &p, &ba, &a2.unit()).unwrap().is_unit());
        assert_eq!(ribbon_lcm(&a2, &p, &ba, &a2.unit()).unwrap(), ba);
    }

    #[test]
    fn normal_form_split_certifies_each_factor() {
        let d4 = dual_for_rank(4).unwrap();
        let p = parab(&d4, &["s5"]);
        let v = d4.parse_word("s1.s3").unwrap();
        let r = is_ribbon(&d4, &p, &v).unwrap();
        let parts = normal_form_ribbon_split(&d4, &r).unwrap();
        assert_eq!(parts.len(), v.garside_len());
        let words: Vec<MonoidElement> = parts.iter().map(|x| x.word().clone()).collect();
        assert_eq!(d4.multiply_all(words.iter()), v);
        for pair in parts.windows(2) {
            assert_eq!(pair[0].target(), pair[1].source());
        }

        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p1 = parab(&a2, &["s1"]);
        let id = identity_ribbon(&a2, &p1);
        assert!(normal_form_ribbon_split(&a2, &id).unwrap().is_empty());
    }

    #[test]
    fn ribbon_prefix_examples() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p = parab(&a2, &["s1"]);
        let ba = a2.parse_word("s2.s1").unwrap();
        let (r, rem, q) = ribbon_prefix(&a2, &p, &ba).unwrap();
        assert_eq!(r, ba);
        assert!(rem.is_unit());
        assert_eq!(q.label(&a2), "{s2}");

        let (r0, rem0, q0) = ribbon_prefix(&a2, &p, &a2.unit()).unwrap();
        assert!(r0.is_unit() && rem0.is_unit());
        assert_eq!(q0, p);

        let ab = a2.parse_word("s1.s2").unwrap();
        assert_eq!(
            ribbon_prefix(&a2, &p, &ab),
            Err(Error::Ribbon(RibbonError::NotReduced))
        );

        let d4 = dual_for_rank(4).unwrap();
        let p5 = parab(&d4, &["s5"]);
        let v = d4.parse_word("s1.s3").unwrap();
        let (rd, remd, _) = ribbon_prefix(&d4, &p5, &v).unwrap();
        assert_eq!(rd, v);
        assert!(remd.is_unit());
    }

    #[test]
    fn trivial_prefix_iff_atoms_confined() {
        let a3 = artin_for_type(&CoxeterType::A(3)).unwrap();
        let p = parab(&a3, &["s1"]);
        for g in a3.elements_up_to(2) {
            if !parabolic::is_p_reduced(&a3, &p, &g) {
                continue;
            }
            let (r, _, _) = ribbon_prefix(&a3, &p, &g).unwrap();
            assert_eq!(
                r.is_unit(),
                atoms_of_delta_p_g_confined(&a3, &p, &g),
                "at {}",
                a3.format_element(&g)
            );
        }
    }

    #[test]
    fn category_graph_two_generators() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        let p = parab(&a2, &["s1"]);
        let graph = ribbon_category_graph(&a2, &p, false).unwrap();
        let labels: Vec<String> = graph.vertices.iter().map(|v| v.label(&a2)).collect();
        assert_eq!(labels, vec!["{s1}", "{s2}"]);
        assert_eq!(graph.edges.len(), 2);

        let full = parab(&a2, &["s1", "s2"]);
        let g2 = ribbon_category_graph(&a2, &full, false).unwrap();
        assert_eq!(g2.vertices.len(), 1);
        assert!(g2.edges.is_empty());

        let dot = graph.to_dot(&a2);
        assert!(dot.contains("v0 [label=\"{s1}\"]"));
        assert!(dot.contains("v0 -> v1 [label=\"s2: s2.s1\"]"));
    }

    #[test]
    fn category_graph_pruning_keeps_minimal_edges() {
        let d4 = dual_for_rank(4).unwrap();
        let p = parab(&d4, &["s5"]);
        let all = ribbon_category_graph(&d4, &p, false).unwrap();
        let pruned = ribbon_category_graph(&d4, &p, true).unwrap();
        assert_eq!(all.vertices.len(), pruned.vertices.len());
        assert!(pruned.edges.len() < all.edges.len());
        for e in &pruned.edges {
            let peers = all
                .edges
                .iter()
                .filter(|f| f.from == e.from && f.word != e.word);
            for f in peers {
                assert!(
                    !d4.left_divides(&f.word, &e.word),
                    "edge {} should have been pruned",
                    d4.format_element(&e.word)
                );
            }
        }
    }
}
