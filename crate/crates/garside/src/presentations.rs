//! Concrete monoid instances and instance-level structure checks.
//!
//! Two families are built here: classical braid monoids of finite Coxeter
//! groups (simples = group elements with length-additive products, Garside
//! element = longest element) and dual braid monoids of symmetric groups
//! (simples = permutations below a fixed Coxeter cycle in the absolute
//! order, Garside element = the cycle, atoms = all transpositions).
//!
//! `check_lcm_parabolic_compatibility` and `check_square_free` gate each
//! instance: the rest of the crate relies on lcms of atom sets being the
//! Garside elements of the parabolic submonoids they generate.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxGroup, CoxeterType};
use crate::error::{Error, Result};
use crate::lattice::{is_subset, iter_ones, AtomId, LatticeInput, Side, SimpleLattice, NONE};
use crate::monoid::Monoid;
use crate::parabolic;
use crate::perm::Perm;

/// Largest simple lattice the kernel will materialize.
pub const SIMPLE_CAP: usize = 5_000;
/// Largest symmetric group for the dual construction.
pub const DUAL_POINT_CAP: usize = 8;
/// Atom-subset checks enumerate exhaustively up to this rank.
pub const EXHAUSTIVE_RANK: usize = 12;

/// Classical braid monoid on a finite Coxeter group.
pub fn build_artin(cox: &CoxGroup, name: impl Into<String>) -> Result<Monoid> {
    let n = cox.n_elts();
    if n > SIMPLE_CAP {
        return Err(Error::TooManySimples { count: n, cap: SIMPLE_CAP });
    }
    let table = cox.full_mult_table();
    let mut prod = vec![NONE; n * n];
    for u in 0..n {
        for v in 0..n {
            let w = table[u * n + v];
            if cox.length(u) + cox.length(v) == cox.length(w as usize) {
                prod[u * n + v] = w;
            }
        }
    }
    let input = LatticeInput {
        n,
        delta: cox.longest_element(),
        prod,
        atom_indices: (0..cox.n_gens()).map(|g| cox.gen_elt(g)).collect(),
        atom_names: (1..=cox.n_gens()).map(|i| format!("s{i}")).collect(),
    };
    Monoid::new(name, SimpleLattice::build(input)?)
}

pub fn artin_for_type(t: &CoxeterType) -> Result<Monoid> {
    build_artin(&CoxGroup::for_type(t)?, format!("artin:{t}"))
}

/// The transpositions of `S_n`, ordered by span and then by starting point.
/// This ordering fixes the atom names `s1, s2, ...` of the dual monoid.
fn transpositions_by_span(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for span in 1..n {
        for i in 0..n - span {
            out.push((i, i + span));
        }
    }
    out
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<u8>, rest: &mut Vec<u8>, out: &mut Vec<Perm>) {
        if rest.is_empty() {
            out.push(Perm::from_images(prefix.clone()));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n as u8).collect(), &mut out);
    out
}

fn reflection_length(n: usize, p: &Perm) -> usize {
    n - p.cycle_count()
}

/// Dual braid monoid of the symmetric group on `n` points, with respect to
/// the Coxeter element `coxeter` (default: the product of the adjacent
/// transpositions, so `n = 5` reproduces the atom numbering s1..s10 with
/// s1..s4 adjacent).
pub fn build_dual(n: usize, coxeter: Option<Perm>, name: impl Into<String>) -> Result<Monoid> {
    if !(2..=DUAL_POINT_CAP).contains(&n) {
        return Err(Error::InvalidSpec(format!(
            "dual monoid wants 2..={DUAL_POINT_CAP} points, got {n}"
        )));
    }
    let c = coxeter.unwrap_or_else(|| {
        (1..n).fold(Perm::identity(n), |acc, i| {
            acc.compose(&Perm::transposition(n, i - 1, i))
        })
    });
    if c.degree() != n || !c.is_full_cycle() {
        return Err(Error::InvalidCoxeterElement(format!(
            "the Coxeter element must be a single {n}-cycle"
        )));
    }
    let lr = |p: &Perm| reflection_length(n, p);
    let total = lr(&c);
    let mut simples: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|w| lr(w) + lr(&w.inverse().compose(&c)) == total)
        .collect();
    simples.sort_by_key(|w| (lr(w), (0..n).map(|x| w.apply(x)).collect::<Vec<_>>()));
    if simples.len() > SIMPLE_CAP {
        return Err(Error::TooManySimples { count: simples.len(), cap: SIMPLE_CAP });
    }
    let index: HashMap<&Perm, u32> = simples.iter().zip(0u32..).collect();
    let ns = simples.len();
    let mut prod = vec![NONE; ns * ns];
    for (u, pu) in simples.iter().enumerate() {
        for (v, pv) in simples.iter().enumerate() {
            let w = pu.compose(pv);
            if lr(pu) + lr(pv) == lr(&w) {
                if let Some(&wi) = index.get(&w) {
                    prod[u * ns + v] = wi;
                }
            }
        }
    }
    let mut atom_indices = Vec::new();
    for (i, j) in transpositions_by_span(n) {
        let t = Perm::transposition(n, i, j);
        let idx = *index
            .get(&t)
            .expect("every transposition divides a full cycle");
        atom_indices.push(idx as usize);
    }
    let input = LatticeInput {
        n: ns,
        delta: index[&c] as usize,
        prod,
        atom_indices,
        atom_names: (1..=n * (n - 1) / 2).map(|i| format!("s{i}")).collect(),
    };
    Monoid::new(name, SimpleLattice::build(input)?)
}

pub fn dual_for_rank(rank: usize) -> Result<Monoid> {
    build_dual(rank + 1, None, format!("dual:A{rank}"))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum ArtinKind {
    Named(String),
    Matrix { matrix: Vec<Vec<u32>> },
}

/// On-disk monoid description.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MonoidSpec {
    Artin {
        #[serde(rename = "type")]
        kind: ArtinKind,
    },
    Dual {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coxeter_word: Option<Vec<String>>,
    },
}

pub fn build_spec(spec: &MonoidSpec) -> Result<Monoid> {
    match spec {
        MonoidSpec::Artin { kind: ArtinKind::Named(name) } => {
            artin_for_type(&CoxeterType::parse(name)?)
        }
        MonoidSpec::Artin { kind: ArtinKind::Matrix { matrix } } => {
            let rank = matrix.len();
            build_artin(&CoxGroup::from_matrix(matrix.clone())?, format!("artin:matrix({rank})"))
        }
        MonoidSpec::Dual { n, coxeter_word } => {
            let c = match coxeter_word {
                None => None,
                Some(word) => Some(coxeter_from_word(*n, word)?),
            };
            build_dual(*n, c, format!("dual:A{}", n.saturating_sub(1)))
        }
    }
}

fn coxeter_from_word(n: usize, word: &[String]) -> Result<Perm> {
    if !(2..=DUAL_POINT_CAP).contains(&n) {
        return Err(Error::InvalidSpec(format!(
            "dual monoid wants 2..={DUAL_POINT_CAP} points, got {n}"
        )));
    }
    let table = transpositions_by_span(n);
    let mut c = Perm::identity(n);
    for name in word {
        let idx: usize = name
            .strip_prefix('s')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| 1 <= i && i <= table.len())
            .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
        let (i, j) = table[idx - 1];
        c = c.compose(&Perm::transposition(n, i, j));
    }
    Ok(c)
}

/// Builds a monoid from either a JSON spec or a shorthand name: a Coxeter
/// type such as `A3` or `I2(5)` for the classical monoid, or `dualA4` for
/// the dual monoid of that type.
pub fn build_named(text: &str) -> Result<Monoid> {
    let text = text.trim();
    if text.starts_with('{') {
        let spec: MonoidSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("bad monoid spec: {e}")))?;
        return build_spec(&spec);
    }
    if let Some(rest) = text.strip_prefix("dualA") {
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad dual type {text:?}")))?;
        return dual_for_rank(rank);
    }
    artin_for_type(&CoxeterType::parse(text)?)
}

/// Outcome of one instance-level structure check.
#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub cases: u64,
    pub exhaustive: bool,
    pub ok: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub(crate) fn finish(
        check: &str,
        instance: &str,
        cases: u64,
        exhaustive: bool,
        failures: Vec<String>,
    ) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            cases,
            exhaustive,
            ok: failures.is_empty(),
            failures,
        }
    }
}

fn atom_mask_name(m: &Monoid, mask: u64) -> String {
    let names: Vec<&str> = (0..m.n_atoms())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| m.atom_name(AtomId(i as u32)))
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Verifies, subset by subset, that the right-lcm of a set of atoms is the
/// Garside element of the smallest standard parabolic submonoid containing
/// the set. Each subset is put through checks that do not presuppose the
/// property: the lcm must agree with the left-handed one, its divisors must
/// form a two-sided, factor-closed set generated by the atoms below it, and
/// the atom set below it must be the intersection of all closed sets
/// containing the original atoms.
pub fn check_lcm_parabolic_compatibility(m: &Monoid) -> CheckReport {
    let r = m.n_atoms();
    let lat = m.lattice();
    let atom_simple: Vec<u32> = (0..r).map(|i| m.atom_simple(AtomId(i as u32)).0).collect();
    let exhaustive = r <= EXHAUSTIVE_RANK;
    let masks: Vec<u64> = if exhaustive {
        (0..1u64 << r).collect()
    } else {
        let mut v = vec![0u64, (1u64 << r) - 1];
        for i in 0..r {
            v.push(1 << i);
            for j in i + 1..r {
                v.push(1 << i | 1 << j);
            }
        }
        let mut x = 0x9e3779b97f4a7c15u64;
        for _ in 0..4096 {
            x = x.wrapping_mul(0xd1342543de82ef95).wrapping_add(0xb504f333f9de6484);
            v.push(x & ((1u64 << r) - 1));
        }
        v.sort_unstable();
        v.dedup();
        v
    };

    let join_of = |mask: u64, side: Side| -> u32 {
        (0..r)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0u32, |j, i| lat.join(side, j, atom_simple[i]))
    };
    let atoms_below = |s: u32| -> u64 {
        (0..r)
            .filter(|&i| lat.divides(Side::Left, atom_simple[i], s))
            .fold(0u64, |m, i| m | 1 << i)
    };
    let closure_of = |mask: u64| -> u64 {
        let mut cur = mask;
        loop {
            let next = atoms_below(join_of(cur, Side::Left));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };

    let mut failures: Vec<String> = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < 8 {
            failures.push(msg);
        }
    };

    let closed_masks: Vec<u64> = if exhaustive {
        masks.iter().copied().filter(|&s| closure_of(s) == s).collect()
    } else {
        Vec::new()
    };

    let words = lat.n_simples().div_ceil(64);
    for &mask in &masks {
        let name = || atom_mask_name(m, mask);
        let jl = join_of(mask, Side::Left);
        let jr = join_of(mask, Side::Right);
        if jl != jr {
            fail(format!("{}: right-lcm and left-lcm of the atoms differ", name()));
            continue;
        }
        let dl = lat.tables(Side::Left).lower.row(jl as usize);
        let dr = lat.tables(Side::Right).lower.row(jl as usize);
        if dl != dr {
            fail(format!("{}: divisors of the lcm are not two-sided", name()));
            continue;
        }

        let mut generated = vec![0u64; words];
        generated[0] |= 1;
        let mut work = vec![0u32];
        while let Some(u) = work.pop() {
            for (i, &s) in atom_simple.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let p = lat.prod(Side::Left, u, s);
                if p != NONE && generated[p as usize / 64] >> (p % 64) & 1 == 0 {
                    generated[p as usize / 64] |= 1 << (p % 64);
                    work.push(p);
                }
            }
        }
        if !is_subset(&generated, dl) {
            fail(format!(
                "{}: the atoms generate a simple outside the divisors of their lcm",
                name()
            ));
            continue;
        }

        let closure = closure_of(mask);
        let dl_gen: Vec<u64> = {
            // regenerate from the closed atom set; it must give every divisor
            let mut g = vec![0u64; words];
            g[0] |= 1;
            let mut work = vec![0u32];
            while let Some(u) = work.pop() {
                for (i, &s) in atom_simple.iter().enumerate() {
                    if closure >> i & 1 == 0 {
                        continue;
                    }
                    let p = lat.prod(Side::Left, u, s);
                    if p != NONE && g[p as usize / 64] >> (p % 64) & 1 == 0 {
                        g[p as usize / 64] |= 1 << (p % 64);
                        work.push(p);
                    }
                }
            }
            g
        };
        if dl_gen != *dl {
            fail(format!(
                "{}: divisors of the lcm are not generated by the atoms below it",
                name()
            ));
            continue;
        }
        if join_of(closure, Side::Left) != jl {
            fail(format!("{}: closing the atom set changes the lcm", name()));
            continue;
        }

        let p = parabolic::parabolic_closure(m, &mask_atoms(mask, r));
        if p.delta() != crate::lattice::Simple(jl) || atom_set_mask(&p) != closure {
            fail(format!(
                "{}: parabolic closure disagrees with the recomputed closure",
                name()
            ));
            continue;
        }

        if exhaustive {
            let minimal = closed_masks
                .iter()
                .copied()
                .filter(|&c| c & mask == mask)
                .fold((1u64 << r) - 1, |a, b| a & b);
            if minimal != closure {
                fail(format!(
                    "{}: a smaller closed atom set contains the subset",
                    name()
                ));
            }
        }
    }

    if exhaustive {
        for (i, &a) in closed_masks.iter().enumerate() {
            for &b in &closed_masks[..i] {
                if closure_of(a & b) != a & b {
                    fail(format!(
                        "closed sets {} and {} have a non-closed intersection",
                        atom_mask_name(m, a),
                        atom_mask_name(m, b)
                    ));
                }
            }
        }
    }

    CheckReport::finish(
        "lcm_parabolic_compatibility",
        m.name(),
        masks.len() as u64,
        exhaustive,
        failures,
    )
}

fn mask_atoms(mask: u64, r: usize) -> Vec<AtomId> {
    (0..r)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| AtomId(i as u32))
        .collect()
}

fn atom_set_mask(p: &parabolic::StandardParabolic) -> u64 {
    p.atom_ids().iter().fold(0u64, |m, a| m | 1 << a.0)
}

/// Verifies that no atom's square is a factor of the Garside element, which
/// for simples means exactly that no atom squares to a simple.
pub fn check_square_free(m: &Monoid) -> CheckReport {
    let mut failures = Vec::new();
    for a in 0..m.n_atoms() {
        let s = m.atom_simple(AtomId(a as u32));
        if m.prod_simple(s, s).is_some() {
            failures.push(format!(
                "the square of {} is a factor of the Garside element",
                m.atom_name(AtomId(a as u32))
            ));
        }
    }
    CheckReport::finish("square_free", m.name(), m.n_atoms() as u64, true, failures)
}

/// Verifies that every factor of a simple left-divides it (true in dual
/// monoids, where it forces lcms of atom sets to behave).
pub fn check_factors_left_divide(m: &Monoid) -> CheckReport {
    let lat = m.lattice();
    let n = lat.n_simples();
    let mut failures = Vec::new();
    let mut factors = Vec::new();
    for w in 0..n {
        factors.clear();
        factors.resize(n.div_ceil(64), 0u64);
        for v in iter_ones(lat.tables(Side::Right).lower.row(w)) {
            for (buf, row) in factors.iter_mut().zip(lat.tables(Side::Left).lower.row(v)) {
                *buf |= row;
            }
        }
        if !is_subset(&factors, lat.tables(Side::Left).lower.row(w)) && failures.len() < 8 {
            failures.push(format!("simple #{w} has a factor that does not left-divide it"));
        }
    }
    CheckReport::finish("factors_left_divide", m.name(), n as u64, true, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_instances_have_expected_sizes() {
        let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
        assert_eq!(a2.n_simples(), 6);
        assert_eq!(a2.n_atoms(), 2);
        assert_eq!(a2.lattice().atom_len(a2.delta_simple()), 3);
        assert!(a2.validate().ok);

        let a3 = artin_for_type(&CoxeterType::A(3)).unwrap();
        assert_eq!(a3.n_simples(), 24);
        assert_eq!(a3.n_atoms(), 3);
        assert!(a3.validate().ok);

        let b2 = artin_for_type(&CoxeterType::B(2)).unwrap();
        assert_eq!(b2.n_simples(), 8);
        assert_eq!(b2.lattice().atom_len(b2.delta_simple()), 4);
        assert!(b2.validate().ok);
    }

    #[test]
    fn dual_instances_have_expected_sizes() {
        let tiny = build_dual(2, None, "dual:A1").unwrap();
        assert_eq!(tiny.n_simples(), 2);
        assert_eq!(tiny.n_atoms(), 1);

        let d3 = dual_for_rank(3).unwrap();
        assert_eq!(d3.n_simples(), 14);
        assert_eq!(d3.n_atoms(), 6);
        assert!(d3.validate().ok);

        let d4 = dual_for_rank(4).unwrap();
        assert_eq!(d4.n_simples(), 42);
        assert_eq!(d4.n_atoms(), 10);
        assert_eq!(
            d4.atoms().iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
            (1..=10).map(|i| format!("s{i}")).collect::<Vec<_>>()
        );
        assert!(d4.validate().ok);
    }

    #[test]
    fn dual_reflection_lengths_are_graded() {
        let d4 = dual_for_rank(4).unwrap();
        let mut by_len = std::collections::BTreeMap::new();
        for s in d4.simples() {
            *by_len.entry(d4.lattice().atom_len(s)).or_insert(0usize) += 1;
        }
        // Narayana numbers for the 5-cycle: 1, 10, 20, 10, 1.
        assert_eq!(by_len.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 10), (2, 20), (3, 10), (4, 1)]);
    }

    #[test]
    fn structure_checks_pass_on_small_instances() {
        for m in [
            artin_for_type(&CoxeterType::A(2)).unwrap(),
            artin_for_type(&CoxeterType::B(2)).unwrap(),
            dual_for_rank(3).unwrap(),
        ] {
            let r = check_lcm_parabolic_compatibility(&m);
            assert!(r.ok, "{}: {:?}", m.name(), r.failures);
            assert!(r.exhaustive);
            assert_eq!(r.cases, 1 << m.n_atoms());
            let sq = check_square_free(&m);
            assert!(sq.ok, "{}: {:?}", m.name(), sq.failures);
        }
    }

    #[test]
    fn dual_factors_left_divide_exhaustively() {
        for rank in [2, 3, 4] {
            let m = dual_for_rank(rank).unwrap();
            let r = check_factors_left_divide(&m);
            assert!(r.ok, "{}: {:?}", m.name(), r.failures);
        }
    }

    #[test]
    fn spec_parsing_round_trips() {
        let a3 = build_named(r#"{"kind": "artin", "type": "A3"}"#).unwrap();
        assert_eq!(a3.n_simples(), 24);
        let b2 = build_named(r#"{"kind": "artin", "type": {"matrix": [[1,4],[4,1]]}}"#).unwrap();
        assert_eq!(b2.n_simples(), 8);
        let d4 = build_named(r#"{"kind": "dual", "n": 5}"#).unwrap();
        assert_eq!(d4.n_simples(), 42);
        let custom = build_named(
            r#"{"kind": "dual", "n": 5, "coxeter_word": ["s1","s2","s3","s4"]}"#,
        )
        .unwrap();
        assert_eq!(custom.n_simples(), 42);
        assert_eq!(build_named("dualA4").unwrap().n_simples(), 42);
        assert_eq!(build_named("I2(5)").unwrap().n_simples(), 10);
        assert!(build_named(r#"{"kind": "dual", "n": 5, "coxeter_word": ["s1"]}"#).is_err());
        assert!(build_named(r#"{"kind": "nope"}"#).is_err());
        assert!(build_named("dualA9").is_err());
    }

    #[test]
    fn custom_coxeter_word_must_be_a_cycle() {
        let err = build_named(r#"{"kind": "dual", "n": 4, "coxeter_word": ["s1","s1","s2","s3"]}"#);
        match err {
            Err(Error::InvalidCoxeterElement(_)) => {}
            other => panic!("expected InvalidCoxeterElement, got {:?}", other.map(|m| m.name().to_string())),
        }
    }
}
