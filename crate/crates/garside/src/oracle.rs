//! Brute-force reference implementations and exhaustive desk-scale replay of
//! the structural facts the optimized algorithms rely on.
//!
//! The `Oracle` computes divisor sets, gcds, lcms, heads, ribbon prefixes and
//! smallest parabolics by exhaustive search, avoiding the lattice-table
//! shortcuts, so that `oracle_agreement` can gate the optimized code path on
//! each instance. `lemma_suite` replays every invariant of the ribbon and
//! group-fractions layers over all elements up to a bound and reports one
//! [`CheckReport`] per invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use crate::error::{Error, Result, RibbonError};
use crate::fractions::{self, GroupFraction, ParabolicSubgroup};
use crate::lattice::AtomId;
use crate::monoid::{Monoid, MonoidElement};
use crate::parabolic::{self, StandardParabolic};
use crate::presentations::CheckReport;
use crate::ribbon::{self, Ribbon, RibbonGraph};

/// Default cap on the Garside length of inputs to divisor enumeration.
pub const DEFAULT_DIVISOR_BOUND: usize = 4;

const FAILURE_CAP: usize = 8;

/// All left-divisors of one element, deduplicated by normal form.
#[derive(Clone, Debug)]
pub struct DivisorSet {
    element: MonoidElement,
    all: Rc<BTreeSet<MonoidElement>>,
}

impl DivisorSet {
    pub fn element(&self) -> &MonoidElement {
        &self.element
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn contains(&self, g: &MonoidElement) -> bool {
        self.all.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MonoidElement> {
        self.all.iter()
    }
}

fn atom_mask(p: &StandardParabolic) -> u64 {
    p.atom_ids().iter().fold(0u64, |acc, a| acc | (1u64 << a.0))
}

/// Exhaustive-search counterparts of the optimized operations, memoized per
/// instance. Only inputs whose Garside length is within the configured bound
/// are accepted; everything below that bound is enumerated outright.
pub struct Oracle<'m> {
    m: &'m Monoid,
    bound: usize,
    divisors: BTreeMap<MonoidElement, Rc<BTreeSet<MonoidElement>>>,
    membership: BTreeMap<(u64, MonoidElement), bool>,
    elements: BTreeMap<usize, Rc<Vec<MonoidElement>>>,
    parabolics: Option<Rc<Vec<StandardParabolic>>>,
}

impl<'m> Oracle<'m> {
    pub fn new(m: &'m Monoid) -> Oracle<'m> {
        Oracle::with_bound(m, DEFAULT_DIVISOR_BOUND)
    }

    pub fn with_bound(m: &'m Monoid, bound: usize) -> Oracle<'m> {
        debug_assert!(m.n_atoms() <= 64);
        Oracle {
            m,
            bound,
            divisors: BTreeMap::new(),
            membership: BTreeMap::new(),
            elements: BTreeMap::new(),
            parabolics: None,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check_bound(&self, g: &MonoidElement) -> Result<()> {
        if g.garside_len() > self.bound {
            Err(Error::BoundExceeded { bound: self.bound })
        } else {
            Ok(())
        }
    }

    /// Every left-divisor of `g`, found by stripping one atom at a time.
    pub fn enumerate_left_divisors(&mut self, g: &MonoidElement) -> Result<DivisorSet> {
        self.check_bound(g)?;
        Ok(DivisorSet {
            element: g.clone(),
            all: self.divisors_of(g),
        })
    }

    fn divisors_of(&mut self, g: &MonoidElement) -> Rc<BTreeSet<MonoidElement>> {
        if let Some(d) = self.divisors.get(g) {
            return Rc::clone(d);
        }
        let mut set = BTreeSet::new();
        set.insert(MonoidElement::unit());
        for a in (0..self.m.n_atoms() as u32).map(AtomId) {
            let head = self.m.atom_elt(a);
            if let Some(rest) = self.m.left_divide_exact(&head, g) {
                let sub = self.divisors_of(&rest);
                for d in sub.iter() {
                    set.insert(self.m.multiply(&head, d));
                }
            }
        }
        let rc = Rc::new(set);
        self.divisors.insert(g.clone(), Rc::clone(&rc));
        rc
    }

    fn brute_left_divides(&mut self, u: &MonoidElement, g: &MonoidElement) -> bool {
        self.divisors_of(g).contains(u)
    }

    fn elements_up_to(&mut self, max_len: usize) -> Rc<Vec<MonoidElement>> {
        if let Some(v) = self.elements.get(&max_len) {
            return Rc::clone(v);
        }
        let rc = Rc::new(self.m.elements_up_to(max_len));
        self.elements.insert(max_len, Rc::clone(&rc));
        rc
    }

    fn all_parabolics(&mut self) -> Rc<Vec<StandardParabolic>> {
        if let Some(ps) = &self.parabolics {
            return Rc::clone(ps);
        }
        let rc = Rc::new(parabolic::all_parabolics(self.m));
        self.parabolics = Some(Rc::clone(&rc));
        rc
    }

    /// Maximum of the intersection of the two divisor sets, verified to be
    /// divided by every common divisor.
    pub fn brute_gcd(&mut self, g: &MonoidElement, h: &MonoidElement) -> Result<MonoidElement> {
        self.check_bound(g)?;
        self.check_bound(h)?;
        let dg = self.divisors_of(g);
        let dh = self.divisors_of(h);
        let common: Vec<MonoidElement> = dg.iter().filter(|d| dh.contains(d)).cloned().collect();
        let best = common
            .iter()
            .max_by_key(|d| self.m.atom_len(d))
            .cloned()
            .expect("the unit is a common divisor");
        let best_divs = self.divisors_of(&best);
        for d in &common {
            if !best_divs.contains(d) {
                return Err(Error::LatticeInconsistent(format!(
                    "common divisors of {} and {} have no maximum",
                    self.m.format_element(g),
                    self.m.format_element(h)
                )));
            }
        }
        Ok(best)
    }

    /// Minimal common right-multiple among `g·u` for all cofactors `u` up to
    /// the length cap, verified to divide every other candidate.
    pub fn brute_lcm(&mut self, g: &MonoidElement, h: &MonoidElement) -> Result<MonoidElement> {
        self.check_bound(g)?;
        self.check_bound(h)?;
        let cap = g.garside_len().max(h.garside_len());
        let cofactors = self.elements_up_to(cap);
        let mut candidates: BTreeSet<MonoidElement> = BTreeSet::new();
        for u in cofactors.iter() {
            let c = self.m.multiply(g, u);
            if self.brute_left_divides(h, &c) {
                candidates.insert(c);
            }
        }
        let best = candidates
            .iter()
            .min_by_key(|c| self.m.atom_len(c))
            .cloned()
            .ok_or_else(|| {
                Error::LatticeInconsistent(format!(
                    "no common right-multiple of {} and {} within the search cap",
                    self.m.format_element(g),
                    self.m.format_element(h)
                ))
            })?;
        for c in &candidates {
            if !self.brute_left_divides(&best, c) {
                return Err(Error::LatticeInconsistent(format!(
                    "common right-multiples of {} and {} have no minimum",
                    self.m.format_element(g),
                    self.m.format_element(h)
                )));
            }
        }
        Ok(best)
    }

    /// Whether `g` is a product of atoms from the mask, by stripping one
    /// leading atom at a time.
    fn in_closed(&mut self, mask: u64, g: &MonoidElement) -> bool {
        if g.is_unit() {
            return true;
        }
        let key = (mask, g.clone());
        if let Some(&v) = self.membership.get(&key) {
            return v;
        }
        let mut ok = false;
        for a in (0..self.m.n_atoms() as u32).map(AtomId) {
            if mask & (1u64 << a.0) == 0 {
                continue;
            }
            if let Some(rest) = self.m.left_divide_exact(&self.m.atom_elt(a), g) {
                if self.in_closed(mask, &rest) {
                    ok = true;
                    break;
                }
            }
        }
        self.membership.insert(key, ok);
        ok
    }

    /// Maximal left-divisor of `g` lying in the submonoid, by scanning the
    /// full divisor set.
    pub fn brute_head_p(
        &mut self,
        p: &StandardParabolic,
        g: &MonoidElement,
    ) -> Result<MonoidElement> {
        self.check_bound(g)?;
        let mask = atom_mask(p);
        let dg = self.divisors_of(g);
        let mut inside: Vec<MonoidElement> = Vec::new();
        for d in dg.iter() {
            if self.in_closed(mask, d) {
                inside.push(d.clone());
            }
        }
        let best = inside
            .iter()
            .max_by_key(|d| self.m.atom_len(d))
            .cloned()
            .expect("the unit lies in every submonoid");
        let best_divs = self.divisors_of(&best);
        for d in &inside {
            if !best_divs.contains(d) {
                return Err(Error::LatticeInconsistent(format!(
                    "divisors of {} inside {} have no maximum",
                    self.m.format_element(g),
                    p.label(self.m)
                )));
            }
        }
        Ok(best)
    }

    /// Maximal left-divisor of `g` that certifies as a ribbon from `p`, by
    /// scanning the full divisor set.
    pub fn brute_ribbon_prefix(
        &mut self,
        p: &StandardParabolic,
        g: &MonoidElement,
    ) -> Result<MonoidElement> {
        self.check_bound(g)?;
        if !parabolic::is_p_reduced(self.m, p, g) {
            return Err(RibbonError::NotReduced.into());
        }
        let dg = self.divisors_of(g);
        let ribbons: Vec<MonoidElement> = dg
            .iter()
            .filter(|d| ribbon::is_ribbon(self.m, p, d).is_ok())
            .cloned()
            .collect();
        let best = ribbons
            .iter()
            .max_by_key(|d| self.m.atom_len(d))
            .cloned()
            .expect("the unit is a ribbon");
        let best_divs = self.divisors_of(&best);
        for d in &ribbons {
            if !best_divs.contains(d) {
                return Err(Error::LatticeInconsistent(format!(
                    "ribbon divisors of {} from {} have no maximum",
                    self.m.format_element(g),
                    p.label(self.m)
                )));
            }
        }
        Ok(best)
    }

    /// Intersection of all closed atom sets whose submonoid contains `b`.
    pub fn brute_smallest_parabolic(&mut self, b: &MonoidElement) -> Result<StandardParabolic> {
        self.check_bound(b)?;
        let all = self.all_parabolics();
        let mut acc: u64 = (0..self.m.n_atoms() as u32).fold(0u64, |m, a| m | (1u64 << a));
        for p in all.iter() {
            let mask = atom_mask(p);
            if self.in_closed(mask, b) {
                acc &= mask;
            }
        }
        let found = all.iter().find(|p| atom_mask(p) == acc).cloned();
        let p = found.ok_or_else(|| {
            Error::LatticeInconsistent(
                "closed atom sets are not closed under intersection".into(),
            )
        })?;
        if !self.in_closed(acc, b) {
            return Err(Error::LatticeInconsistent(format!(
                "no closed atom set containing {} is minimal",
                self.m.format_element(b)
            )));
        }
        Ok(p)
    }
}

struct Rec {
    cases: u64,
    failures: Vec<String>,
    dropped: u64,
}

impl Rec {
    fn new() -> Rec {
        Rec {
            cases: 0,
            failures: Vec::new(),
            dropped: 0,
        }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(msg);
        } else {
            self.dropped += 1;
        }
    }

    fn report(mut self, check: &str, m: &Monoid, exhaustive: bool) -> CheckReport {
        if self.dropped > 0 {
            self.failures
                .push(format!("{} further failures suppressed", self.dropped));
        }
        CheckReport::finish(check, m.name(), self.cases, exhaustive, self.failures)
    }
}

/// Per-operation length caps for the oracle/optimized agreement run, scaled
/// down as instances get larger so the whole run stays within a desk budget.
#[derive(Clone, Copy, Debug)]
pub struct AgreementBounds {
    pub gcd_len: usize,
    pub lcm_len: usize,
    pub head_len: usize,
    pub prefix_len: usize,
    pub smallest_len: usize,
}

impl AgreementBounds {
    pub fn for_instance(m: &Monoid) -> AgreementBounds {
        let n = m.n_simples();
        if n <= 10 {
            AgreementBounds {
                gcd_len: 3,
                lcm_len: 3,
                head_len: 3,
                prefix_len: 3,
                smallest_len: 3,
            }
        } else if n <= 30 {
            AgreementBounds {
                gcd_len: 2,
                lcm_len: 2,
                head_len: 2,
                prefix_len: 2,
                smallest_len: 2,
            }
        } else {
            AgreementBounds {
                gcd_len: 2,
                lcm_len: 1,
                head_len: 2,
                prefix_len: 2,
                smallest_len: 2,
            }
        }
    }
}

/// Compare every optimized operation against its brute-force counterpart on
/// all inputs within the given caps.
pub fn oracle_agreement(m: &Monoid, bounds: &AgreementBounds) -> Vec<CheckReport> {
    let deep = [
        bounds.gcd_len,
        2 * bounds.lcm_len,
        bounds.head_len,
        bounds.prefix_len,
        bounds.smallest_len,
        DEFAULT_DIVISOR_BOUND,
    ];
    let mut oracle = Oracle::with_bound(m, deep.into_iter().max().unwrap());
    let parabolics = parabolic::all_parabolics(m);
    let mut out = Vec::new();

    let mut rec = Rec::new();
    let xs = m.elements_up_to(bounds.gcd_len);
    for (i, g) in xs.iter().enumerate() {
        for h in &xs[i..] {
            rec.case();
            match oracle.brute_gcd(g, h) {
                Ok(want) => {
                    let got = m.left_gcd(g, h);
                    if got != want {
                        rec.fail(format!(
                            "left_gcd({}, {}) = {} but the divisor scan gives {}",
                            m.format_element(g),
                            m.format_element(h),
                            m.format_element(&got),
                            m.format_element(&want)
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "gcd scan failed on ({}, {}): {}",
                    m.format_element(g),
                    m.format_element(h),
                    e
                )),
            }
        }
    }
    out.push(rec.report("agreement_left_gcd", m, true));

    let mut rec = Rec::new();
    let xs = m.elements_up_to(bounds.lcm_len);
    for (i, g) in xs.iter().enumerate() {
        for h in &xs[i..] {
            rec.case();
            match oracle.brute_lcm(g, h) {
                Ok(want) => {
                    let got = m.right_lcm(g, h);
                    let recombined = m.multiply(g, &m.right_lcm_complement(g, h));
                    if got != want || recombined != want {
                        rec.fail(format!(
                            "right_lcm({}, {}) = {} (complement route {}) but the multiple scan gives {}",
                            m.format_element(g),
                            m.format_element(h),
                            m.format_element(&got),
                            m.format_element(&recombined),
                            m.format_element(&want)
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "lcm scan failed on ({}, {}): {}",
                    m.format_element(g),
                    m.format_element(h),
                    e
                )),
            }
        }
    }
    out.push(rec.report("agreement_right_lcm", m, true));

    let mut rec = Rec::new();
    let xs = m.elements_up_to(bounds.head_len);
    for p in &parabolics {
        for g in &xs {
            rec.case();
            match oracle.brute_head_p(p, g) {
                Ok(want) => {
                    let got = parabolic::head_p(m, p, g);
                    let tail = parabolic::tail_p(m, p, g);
                    if got != want || m.multiply(&got, &tail) != *g {
                        rec.fail(format!(
                            "head of {} in {} is {} with tail {}, divisor scan gives {}",
                            m.format_element(g),
                            p.label(m),
                            m.format_element(&got),
                            m.format_element(&tail),
                            m.format_element(&want)
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "head scan failed on {} in {}: {}",
                    m.format_element(g),
                    p.label(m),
                    e
                )),
            }
        }
    }
    out.push(rec.report("agreement_head_p", m, true));

    let mut rec = Rec::new();
    let xs = m.elements_up_to(bounds.prefix_len);
    for p in &parabolics {
        for g in &xs {
            if !parabolic::is_p_reduced(m, p, g) {
                continue;
            }
            rec.case();
            let want = match oracle.brute_ribbon_prefix(p, g) {
                Ok(w) => w,
                Err(e) => {
                    rec.fail(format!(
                        "prefix scan failed on {} from {}: {}",
                        m.format_element(g),
                        p.label(m),
                        e
                    ));
                    continue;
                }
            };
            match ribbon::ribbon_prefix(m, p, g) {
                Ok((r, rem, _)) => {
                    if r != want || m.multiply(&r, &rem) != *g {
                        rec.fail(format!(
                            "ribbon prefix of {} from {} is {} (remainder {}), divisor scan gives {}",
                            m.format_element(g),
                            p.label(m),
                            m.format_element(&r),
                            m.format_element(&rem),
                            m.format_element(&want)
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "ribbon_prefix failed on {} from {}: {}",
                    m.format_element(g),
                    p.label(m),
                    e
                )),
            }
        }
    }
    out.push(rec.report("agreement_ribbon_prefix", m, true));

    let mut rec = Rec::new();
    let xs = m.elements_up_to(bounds.smallest_len);
    for b in &xs {
        rec.case();
        match oracle.brute_smallest_parabolic(b) {
            Ok(want) => {
                let got = parabolic::smallest_parabolic_containing(m, b);
                if got.atom_ids() != want.atom_ids() || got.delta() != want.delta() {
                    rec.fail(format!(
                        "smallest parabolic of {} is {}, intersection scan gives {}",
                        m.format_element(b),
                        got.label(m),
                        want.label(m)
                    ));
                }
            }
            Err(e) => rec.fail(format!(
                "smallest-parabolic scan failed on {}: {}",
                m.format_element(b),
                e
            )),
        }
    }
    out.push(rec.report("agreement_smallest_parabolic", m, true));

    out
}

/// Domain sizes for the lemma replay. `bound` caps the main element domain;
/// the secondary domains shrink on large instances to keep the run fast.
#[derive(Clone, Copy, Debug)]
pub struct LemmaSuiteConfig {
    pub bound: usize,
    pub pair_len: usize,
    pub closure_pair_len: usize,
    pub standardizer_b_len: usize,
    pub standardizer_u_len: usize,
    pub search_pair_cap: usize,
}

impl LemmaSuiteConfig {
    pub fn for_instance(m: &Monoid, bound: usize) -> LemmaSuiteConfig {
        let heavy = m.n_simples() > 30;
        LemmaSuiteConfig {
            bound,
            pair_len: bound.min(2),
            closure_pair_len: if heavy { 1 } else { bound.min(2) },
            standardizer_b_len: if heavy { 1 } else { bound.min(2) },
            standardizer_u_len: if heavy { 1 } else { bound.min(2) },
            search_pair_cap: 400,
        }
    }
}

struct LemmaContext<'m> {
    m: &'m Monoid,
    cfg: LemmaSuiteConfig,
    elements: Vec<MonoidElement>,
    short: Vec<MonoidElement>,
    parabolics: Vec<StandardParabolic>,
    ribbons: Vec<(usize, Ribbon)>,
    graphs: Vec<Result<RibbonGraph>>,
}

impl<'m> LemmaContext<'m> {
    fn build(m: &'m Monoid, cfg: LemmaSuiteConfig) -> LemmaContext<'m> {
        let elements = m.elements_up_to(cfg.bound);
        let short = m.elements_up_to(cfg.pair_len);
        let parabolics = parabolic::all_parabolics(m);
        let mut ribbons = Vec::new();
        for (i, p) in parabolics.iter().enumerate() {
            for g in &elements {
                if let Ok(r) = ribbon::is_ribbon(m, p, g) {
                    ribbons.push((i, r));
                }
            }
        }
        let graphs = parabolics
            .iter()
            .map(|p| ribbon::ribbon_category_graph(m, p, false))
            .collect();
        LemmaContext {
            m,
            cfg,
            elements,
            short,
            parabolics,
            ribbons,
            graphs,
        }
    }

    fn parabolic_index(&self, p: &StandardParabolic) -> Option<usize> {
        self.parabolics
            .iter()
            .position(|q| q.atom_ids() == p.atom_ids())
    }

    fn atom_elements(&self) -> Vec<(AtomId, MonoidElement)> {
        (0..self.m.n_atoms() as u32)
            .map(AtomId)
            .map(|a| (a, self.m.atom_elt(a)))
            .collect()
    }
}

/// Walk the edges of a BFS-built graph and assign each vertex the product of
/// the edge words on its discovery path.
fn graph_words(m: &Monoid, graph: &RibbonGraph) -> Vec<MonoidElement> {
    let mut words: Vec<Option<MonoidElement>> = vec![None; graph.vertices.len()];
    words[0] = Some(m.unit());
    for e in &graph.edges {
        if words[e.to].is_none() {
            let base = words[e.from]
                .clone()
                .expect("edges leave already-discovered vertices");
            words[e.to] = Some(m.multiply(&base, &e.word));
        }
    }
    words
        .into_iter()
        .map(|w| w.expect("every vertex is reachable from the root"))
        .collect()
}

fn check_elementary_divides(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, r) in &ctx.ribbons {
        let p = &ctx.parabolics[*pi];
        for (s, sv) in ctx.atom_elements() {
            if p.contains_atom(s) || !m.left_divides(&sv, r.word()) {
                continue;
            }
            rec.case();
            match ribbon::v_s_p(m, p, s) {
                Ok(v) => {
                    if !m.left_divides(&v, r.word()) {
                        rec.fail(format!(
                            "v({}, {}) = {} does not left-divide ribbon {}",
                            m.atom_name(s),
                            p.label(m),
                            m.format_element(&v),
                            m.format_element(r.word())
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "no elementary ribbon for atom {} at {}: {}",
                    m.atom_name(s),
                    p.label(m),
                    e
                )),
            }
        }
    }
    rec.report("elementary_ribbon_divides_ribbon_divisors", m, true)
}

fn check_atom_lcm_with_ribbon(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, r) in &ctx.ribbons {
        let p = &ctx.parabolics[*pi];
        for &s in p.atom_ids() {
            rec.case();
            let a = m.atom_elt(s);
            let lcm = m.right_lcm(&a, r.word());
            let prod = m.multiply(&a, r.word());
            if lcm != prod {
                rec.fail(format!(
                    "right_lcm({}, {}) = {} instead of the product {}",
                    m.atom_name(s),
                    m.format_element(r.word()),
                    m.format_element(&lcm),
                    m.format_element(&prod)
                ));
            }
        }
    }
    rec.report("atom_lcm_with_ribbon_is_product", m, true)
}

fn parabolic_products(m: &Monoid, p: &StandardParabolic) -> Vec<MonoidElement> {
    let atoms: Vec<MonoidElement> = p.atom_ids().iter().map(|&a| m.atom_elt(a)).collect();
    let mut out: Vec<MonoidElement> = Vec::new();
    out.extend(atoms.iter().cloned());
    for x in &atoms {
        for y in &atoms {
            out.push(m.multiply(x, y));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn check_divisibility_ignores_prefix(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let products: Vec<Vec<MonoidElement>> = ctx
        .parabolics
        .iter()
        .map(|p| parabolic_products(m, p))
        .collect();
    for (pi, r) in &ctx.ribbons {
        let g = r.word();
        for y in &ctx.short {
            let plain = m.left_divides(g, y);
            for x in &products[*pi] {
                rec.case();
                let shifted = m.left_divides(g, &m.multiply(x, y));
                if shifted != plain {
                    rec.fail(format!(
                        "ribbon {} from {}: divides {}·{} is {} but divides {} is {}",
                        m.format_element(g),
                        ctx.parabolics[*pi].label(m),
                        m.format_element(x),
                        m.format_element(y),
                        shifted,
                        m.format_element(y),
                        plain
                    ));
                }
            }
        }
    }
    rec.report("ribbon_divisibility_ignores_parabolic_prefix", m, true)
}

fn check_head_tail_transport(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, r) in &ctx.ribbons {
        let p = &ctx.parabolics[*pi];
        let g = r.word();
        let q = r.target();
        for h in &ctx.short {
            rec.case();
            let gh = m.multiply(g, h);
            let tail = parabolic::tail_p(m, p, &gh);
            let want_tail = m.multiply(g, &parabolic::tail_p(m, q, h));
            if tail != want_tail {
                rec.fail(format!(
                    "tail of {}·{} over {} is {} instead of {}",
                    m.format_element(g),
                    m.format_element(h),
                    p.label(m),
                    m.format_element(&tail),
                    m.format_element(&want_tail)
                ));
                continue;
            }
            let head = parabolic::head_p(m, p, &gh);
            let moved = ribbon::conjugate_if_defined(m, &head, g);
            let want_head = parabolic::head_p(m, q, h);
            if moved.as_ref() != Some(&want_head) {
                rec.fail(format!(
                    "head of {}·{} over {} conjugates to {:?} instead of {}",
                    m.format_element(g),
                    m.format_element(h),
                    p.label(m),
                    moved.map(|x| m.format_element(&x)),
                    m.format_element(&want_head)
                ));
            }
        }
    }
    rec.report("head_tail_transport_along_ribbons", m, true)
}

fn check_ribbons_compose(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let mut by_source: BTreeMap<&BTreeSet<AtomId>, Vec<&Ribbon>> = BTreeMap::new();
    for (pi, r) in &ctx.ribbons {
        by_source
            .entry(ctx.parabolics[*pi].atom_ids())
            .or_default()
            .push(r);
    }
    for (_, r1) in &ctx.ribbons {
        let Some(nexts) = by_source.get(r1.target().atom_ids()) else {
            continue;
        };
        for r2 in nexts {
            rec.case();
            match ribbon::ribbon_compose(m, r1, r2) {
                Ok(c) => {
                    let want = m.multiply(r1.word(), r2.word());
                    if *c.word() != want || c.target() != r2.target() {
                        rec.fail(format!(
                            "composite of {} and {} is {} to {}",
                            m.format_element(r1.word()),
                            m.format_element(r2.word()),
                            m.format_element(c.word()),
                            c.target().label(m)
                        ));
                    }
                }
                Err(e) => rec.fail(format!(
                    "ribbons {} then {} from {} do not compose: {}",
                    m.format_element(r1.word()),
                    m.format_element(r2.word()),
                    r1.source().label(m),
                    e
                )),
            }
        }
    }
    rec.report("ribbons_with_matching_ends_compose", m, true)
}

fn check_conjugation_gcd_lcm_closure(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let mut bs: Vec<MonoidElement> = ctx.atom_elements().into_iter().map(|(_, v)| v).collect();
    for p in &ctx.parabolics {
        if !p.is_empty() {
            bs.push(p.delta_elt(m));
        }
    }
    bs.sort();
    bs.dedup();
    let domain = m.elements_up_to(ctx.cfg.closure_pair_len);
    for b in &bs {
        let defined: Vec<bool> = domain
            .iter()
            .map(|g| ribbon::conjugate_if_defined(m, b, g).is_some())
            .collect();
        for (i, g) in domain.iter().enumerate() {
            if !defined[i] {
                continue;
            }
            for (j, g2) in domain.iter().enumerate().skip(i) {
                if !defined[j] {
                    continue;
                }
                rec.case();
                let d = m.left_gcd(g, g2);
                let l = m.right_lcm(g, g2);
                if ribbon::conjugate_if_defined(m, b, &d).is_none()
                    || ribbon::conjugate_if_defined(m, b, &l).is_none()
                {
                    rec.fail(format!(
                        "{} conjugates by {} and {} but not by their gcd {} and lcm {}",
                        m.format_element(b),
                        m.format_element(g),
                        m.format_element(g2),
                        m.format_element(&d),
                        m.format_element(&l)
                    ));
                }
            }
        }
    }
    rec.report("conjugation_domain_closed_under_gcd_lcm", m, true)
}

fn check_ribbons_factor_elementary(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, r) in &ctx.ribbons {
        rec.case();
        let mut cur = ctx.parabolics[*pi].clone();
        let mut rem = r.word().clone();
        let mut prod = m.unit();
        let mut stuck = false;
        while !rem.is_unit() {
            let step = ctx
                .atom_elements()
                .into_iter()
                .find(|(s, sv)| !cur.contains_atom(*s) && m.left_divides(sv, &rem))
                .and_then(|(s, _)| ribbon::v_s_p(m, &cur, s).ok())
                .filter(|v| m.left_divides(v, &rem));
            let Some(v) = step else {
                stuck = true;
                break;
            };
            rem = m.left_divide_exact(&v, &rem).expect("v divides the remainder");
            prod = m.multiply(&prod, &v);
            match ribbon::is_ribbon(m, &cur, &v) {
                Ok(rb) => cur = rb.target().clone(),
                Err(_) => {
                    stuck = true;
                    break;
                }
            }
        }
        if stuck || prod != *r.word() || cur.atom_ids() != r.target().atom_ids() {
            rec.fail(format!(
                "ribbon {} from {} does not factor into elementary ribbons",
                m.format_element(r.word()),
                ctx.parabolics[*pi].label(m)
            ));
        }
    }
    rec.report("ribbons_factor_into_elementary_ribbons", m, true)
}

fn positive_conjugacy_witnesses(m: &Monoid, p: &StandardParabolic) -> Vec<MonoidElement> {
    let dp = p.delta_elt(m);
    let mut bs = vec![dp.clone()];
    for &a in p.atom_ids() {
        bs.push(m.multiply(&dp, &m.atom_elt(a)));
    }
    bs.sort();
    bs.dedup();
    bs
}

fn check_positive_conjugacy_ribbon(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for p in &ctx.parabolics {
        let bs = positive_conjugacy_witnesses(m, p);
        for g in &ctx.elements {
            if !parabolic::is_p_reduced(m, p, g) {
                continue;
            }
            for b in &bs {
                if ribbon::conjugate_if_defined(m, b, g).is_none() {
                    continue;
                }
                rec.case();
                if let Err(e) = ribbon::is_ribbon(m, p, g) {
                    rec.fail(format!(
                        "{} conjugates {} of {} yet is not a ribbon: {}",
                        m.format_element(g),
                        m.format_element(b),
                        p.label(m),
                        e
                    ));
                }
            }
        }
    }
    rec.report("positive_conjugacy_forces_ribbon", m, true)
}

fn check_positive_conjugacy_tail(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for p in &ctx.parabolics {
        let bs = positive_conjugacy_witnesses(m, p);
        for g in &ctx.elements {
            for b in &bs {
                if ribbon::conjugate_if_defined(m, b, g).is_none() {
                    continue;
                }
                rec.case();
                let t = parabolic::tail_p(m, p, g);
                if let Err(e) = ribbon::is_ribbon(m, p, &t) {
                    rec.fail(format!(
                        "{} conjugates {} of {} yet its tail {} is not a ribbon: {}",
                        m.format_element(g),
                        m.format_element(b),
                        p.label(m),
                        m.format_element(&t),
                        e
                    ));
                }
            }
        }
    }
    rec.report("positive_conjugacy_tail_is_ribbon", m, true)
}

fn check_garside_power_transport(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for p in &ctx.parabolics {
        for k in 1..=2usize {
            let dpk = m.pow(&p.delta_elt(m), k);
            for g in &ctx.elements {
                let Some(u) = ribbon::conjugate_if_defined(m, &dpk, g) else {
                    continue;
                };
                let t = parabolic::tail_p(m, p, g);
                let rb = match ribbon::is_ribbon(m, p, &t) {
                    Ok(rb) => rb,
                    Err(e) => {
                        rec.case();
                        rec.fail(format!(
                            "{} moves the power of {} into the monoid but its tail is not a ribbon: {}",
                            m.format_element(g),
                            p.label(m),
                            e
                        ));
                        continue;
                    }
                };
                for q in &ctx.parabolics {
                    rec.case();
                    if parabolic::contains_element(m, q, &u)
                        && !rb.target().atom_ids().is_subset(q.atom_ids())
                    {
                        rec.fail(format!(
                            "power of {} lands in {} via {} but the tail ribbon targets {}",
                            p.label(m),
                            q.label(m),
                            m.format_element(g),
                            rb.target().label(m)
                        ));
                    }
                    if u == m.pow(&q.delta_elt(m), k) && rb.target().atom_ids() != q.atom_ids() {
                        rec.fail(format!(
                            "power of {} maps onto the power of {} via {} but the tail ribbon targets {}",
                            p.label(m),
                            q.label(m),
                            m.format_element(g),
                            rb.target().label(m)
                        ));
                    }
                }
            }
        }
    }
    rec.report("garside_power_transport_bounds_target", m, true)
}

fn check_ribbon_prefix_maximal(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let mut oracle = Oracle::with_bound(m, ctx.cfg.bound.max(DEFAULT_DIVISOR_BOUND));
    for p in &ctx.parabolics {
        for g in &ctx.elements {
            if !parabolic::is_p_reduced(m, p, g) {
                continue;
            }
            rec.case();
            let (r, rem, q) = match ribbon::ribbon_prefix(m, p, g) {
                Ok(t) => t,
                Err(e) => {
                    rec.fail(format!(
                        "ribbon_prefix failed on {} from {}: {}",
                        m.format_element(g),
                        p.label(m),
                        e
                    ));
                    continue;
                }
            };
            let certified = ribbon::is_ribbon(m, p, &r);
            let target_ok = certified
                .as_ref()
                .map(|rb| rb.target().atom_ids() == q.atom_ids())
                .unwrap_or(false);
            if !target_ok
                || m.multiply(&r, &rem) != *g
                || !parabolic::is_p_reduced(m, &q, &rem)
            {
                rec.fail(format!(
                    "ribbon prefix {} of {} from {} fails certification or leaves an unreduced remainder {}",
                    m.format_element(&r),
                    m.format_element(g),
                    p.label(m),
                    m.format_element(&rem)
                ));
                continue;
            }
            if r.is_unit() != ribbon::atoms_of_delta_p_g_confined(m, p, g) {
                rec.fail(format!(
                    "trivial-prefix criterion disagrees on {} from {}",
                    m.format_element(g),
                    p.label(m)
                ));
            }
            let divisors = oracle.enumerate_left_divisors(g);
            match divisors {
                Ok(set) => {
                    for d in set.iter() {
                        if ribbon::is_ribbon(m, p, d).is_ok() && !m.left_divides(d, &r) {
                            rec.fail(format!(
                                "ribbon divisor {} of {} from {} does not divide the prefix {}",
                                m.format_element(d),
                                m.format_element(g),
                                p.label(m),
                                m.format_element(&r)
                            ));
                        }
                    }
                }
                Err(e) => rec.fail(format!(
                    "divisor scan failed on {}: {}",
                    m.format_element(g),
                    e
                )),
            }
        }
    }
    rec.report("ribbon_prefix_is_maximal_ribbon_divisor", m, true)
}

fn parabolic_group_samples(m: &Monoid, p: &StandardParabolic) -> Vec<GroupFraction> {
    let mut parts: Vec<MonoidElement> = vec![m.unit()];
    for &a in p.atom_ids() {
        parts.push(m.atom_elt(a));
    }
    if !p.is_empty() {
        parts.push(p.delta_elt(m));
    }
    let mut out = Vec::new();
    for den in &parts {
        for num in &parts {
            out.push(GroupFraction::reduce(m, den, num));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn check_head_conjugate_in_submonoid(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for p in &ctx.parabolics {
        let bs = parabolic_group_samples(m, p);
        for g in &ctx.elements {
            let gfrac = GroupFraction::from_monoid(g);
            let hfrac = GroupFraction::from_monoid(&parabolic::head_p(m, p, g));
            for b in &bs {
                let moved = GroupFraction::conjugate(m, b, &gfrac);
                if !moved.is_positive() {
                    continue;
                }
                rec.case();
                let via_head = GroupFraction::conjugate(m, b, &hfrac);
                let ok = via_head
                    .as_monoid()
                    .map(|x| parabolic::contains_element(m, p, x))
                    .unwrap_or(false);
                if !ok {
                    rec.fail(format!(
                        "{} conjugated by {} is positive, but by the head of the conjugator it is {} (not in {})",
                        b.format(m),
                        m.format_element(g),
                        via_head.format(m),
                        p.label(m)
                    ));
                }
            }
        }
    }
    rec.report("head_conjugate_stays_in_submonoid", m, true)
}

const CENTRAL_POWER_SEARCH: usize = 3;

fn check_group_conjugacy_family(ctx: &LemmaContext) -> Vec<CheckReport> {
    let m = ctx.m;
    let mut onto_rec = Rec::new();
    let mut invariant_rec = Rec::new();
    let mut reduced_rec = Rec::new();

    let nps = ctx.parabolics.len();
    let ks: Vec<usize> = ctx
        .parabolics
        .iter()
        .map(|p| p.central_exponent() as usize)
        .collect();
    let mut delta_pows: Vec<BTreeMap<usize, GroupFraction>> = vec![BTreeMap::new(); nps];
    let mut needed: BTreeSet<usize> = BTreeSet::new();
    for &k in &ks {
        for j in 1..=CENTRAL_POWER_SEARCH {
            needed.insert(k * j);
        }
    }
    for (qi, q) in ctx.parabolics.iter().enumerate() {
        for &e in &needed {
            let val = GroupFraction::from_monoid(&m.pow(&q.delta_elt(m), e));
            delta_pows[qi].insert(e, val);
        }
    }
    let z_std: Vec<GroupFraction> = ctx
        .parabolics
        .iter()
        .enumerate()
        .map(|(qi, _)| delta_pows[qi][&ks[qi]].clone())
        .collect();
    let atoms = ctx.atom_elements();

    for x in &ctx.short {
        let xf = GroupFraction::from_monoid(x);
        let xinv = xf.inverse();
        let mut forward = vec![0u64; atoms.len()];
        let mut backward = vec![0u64; atoms.len()];
        for (ai, (_, av)) in atoms.iter().enumerate() {
            let af = GroupFraction::from_monoid(av);
            let fwd = GroupFraction::conjugate(m, &af, &xf);
            let bwd = GroupFraction::conjugate(m, &af, &xinv);
            for (qi, q) in ctx.parabolics.iter().enumerate() {
                if fractions::in_parabolic_group(m, q, &fwd) {
                    forward[ai] |= 1u64 << qi;
                }
                if fractions::in_parabolic_group(m, q, &bwd) {
                    backward[ai] |= 1u64 << qi;
                }
            }
        }
        let moved_pows: Vec<Vec<GroupFraction>> = ctx
            .parabolics
            .iter()
            .enumerate()
            .map(|(pi, _)| {
                (1..=CENTRAL_POWER_SEARCH)
                    .map(|j| GroupFraction::conjugate(m, &delta_pows[pi][&(ks[pi] * j)], &xf))
                    .collect()
            })
            .collect();
        let reduced_for: Vec<bool> = ctx
            .parabolics
            .iter()
            .map(|p| parabolic::is_p_reduced(m, p, x))
            .collect();
        let delta_moved: Vec<Option<MonoidElement>> = ctx
            .parabolics
            .iter()
            .map(|p| ribbon::conjugate_if_defined(m, &p.delta_elt(m), x))
            .collect();
        let ribbon_target: Vec<Option<BTreeSet<AtomId>>> = ctx
            .parabolics
            .iter()
            .enumerate()
            .map(|(pi, p)| {
                if !reduced_for[pi] {
                    return None;
                }
                ribbon::is_ribbon(m, p, x)
                    .ok()
                    .map(|rb| rb.target().atom_ids().clone())
            })
            .collect();

        for (pi, p) in ctx.parabolics.iter().enumerate() {
            for (qi, q) in ctx.parabolics.iter().enumerate() {
                let into = p.atom_ids().iter().all(|a| {
                    let ai = a.0 as usize;
                    forward[ai] & (1u64 << qi) != 0
                });
                let back = q.atom_ids().iter().all(|a| {
                    let ai = a.0 as usize;
                    backward[ai] & (1u64 << pi) != 0
                });
                let onto = into && back;

                onto_rec.case();
                let power_match = (1..=CENTRAL_POWER_SEARCH).any(|j| {
                    moved_pows[pi][j - 1] == delta_pows[qi][&(ks[pi] * j)]
                });
                if onto != power_match {
                    onto_rec.fail(format!(
                        "conjugator {}: subgroup of {} onto subgroup of {} is {}, central-power match within exponent factor {} is {}",
                        m.format_element(x),
                        p.label(m),
                        q.label(m),
                        onto,
                        CENTRAL_POWER_SEARCH,
                        power_match
                    ));
                }
                if onto && ks[pi] != ks[qi] {
                    onto_rec.fail(format!(
                        "conjugator {} carries {} onto {} but central exponents differ ({} vs {})",
                        m.format_element(x),
                        p.label(m),
                        q.label(m),
                        ks[pi],
                        ks[qi]
                    ));
                }

                invariant_rec.case();
                let z_eq = moved_pows[pi][0] == z_std[qi];
                if z_eq != onto {
                    invariant_rec.fail(format!(
                        "conjugator {}: invariant equality for {} and {} is {} but subgroup equality is {}",
                        m.format_element(x),
                        p.label(m),
                        q.label(m),
                        z_eq,
                        onto
                    ));
                }

                if reduced_for[pi] {
                    reduced_rec.case();
                    let carries_delta =
                        delta_moved[pi].as_ref() == Some(&q.delta_elt(m));
                    let carries_p = ribbon_target[pi]
                        .as_ref()
                        .map(|t| t == q.atom_ids())
                        .unwrap_or(false);
                    if carries_delta != carries_p {
                        reduced_rec.fail(format!(
                            "reduced conjugator {}: carries the Garside element of {} to that of {} is {}, carries the submonoid is {}",
                            m.format_element(x),
                            p.label(m),
                            q.label(m),
                            carries_delta,
                            carries_p
                        ));
                    }
                }
            }
        }
    }

    vec![
        onto_rec.report("group_conjugacy_matches_central_power", m, true),
        invariant_rec.report("subgroup_equality_matches_invariant", m, true),
        reduced_rec.report("reduced_conjugator_carries_garside_iff_submonoid", m, true),
    ]
}

fn check_invariant_presentation_independent(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, p) in ctx.parabolics.iter().enumerate() {
        let graph = match &ctx.graphs[pi] {
            Ok(g) => g,
            Err(e) => {
                rec.case();
                rec.fail(format!(
                    "ribbon graph from {} failed to build: {}",
                    p.label(m),
                    e
                ));
                continue;
            }
        };
        let words = graph_words(m, graph);
        for (vi, q) in graph.vertices.iter().enumerate() {
            rec.case();
            if p.central_exponent() != q.central_exponent() {
                rec.fail(format!(
                    "{} and conjugate {} have central exponents {} and {}",
                    p.label(m),
                    q.label(m),
                    p.central_exponent(),
                    q.central_exponent()
                ));
                continue;
            }
            let via_word = ParabolicSubgroup::new(
                m,
                p.clone(),
                GroupFraction::from_monoid(&words[vi]),
            );
            let direct = ParabolicSubgroup::standard(m, q.clone());
            if via_word != direct {
                rec.fail(format!(
                    "presentations ({}, {}) and ({}, 1) give invariants {} and {}",
                    p.label(m),
                    m.format_element(&words[vi]),
                    q.label(m),
                    via_word.z().format(m),
                    direct.z().format(m)
                ));
            }
        }
    }
    rec.report("subgroup_invariant_independent_of_presentation", m, true)
}

fn check_standardizer_reduced(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for p in &ctx.parabolics {
        for b in &ctx.elements {
            rec.case();
            let (b2, q) = fractions::minimal_standardizer(m, p, b);
            let head = parabolic::head_p(m, p, b);
            let tail = parabolic::tail_p(m, p, b);
            let prefix = match ribbon::ribbon_prefix(m, p, &tail) {
                Ok((r, rem, q2)) => {
                    if rem != b2 || q2.atom_ids() != q.atom_ids() {
                        rec.fail(format!(
                            "standardizer of {} over {} disagrees with the prefix factorization",
                            m.format_element(b),
                            p.label(m)
                        ));
                        continue;
                    }
                    r
                }
                Err(e) => {
                    rec.fail(format!(
                        "prefix of the tail of {} over {} failed: {}",
                        m.format_element(b),
                        p.label(m),
                        e
                    ));
                    continue;
                }
            };
            let reassembled = m.multiply_all([&head, &prefix, &b2]);
            if reassembled != *b {
                rec.fail(format!(
                    "head·prefix·remainder of {} over {} re-assembles to {}",
                    m.format_element(b),
                    p.label(m),
                    m.format_element(&reassembled)
                ));
                continue;
            }
            let k = q.central_exponent() as usize;
            let num = m.multiply(&m.pow(&q.delta_elt(m), k), &b2);
            let outside = (0..m.n_atoms() as u32)
                .map(AtomId)
                .find(|&a| m.left_divides(&m.atom_elt(a), &num) && !q.contains_atom(a));
            if let Some(a) = outside {
                rec.fail(format!(
                    "atom {} left-divides the invariant numerator for {} over {} but lies outside {}",
                    m.atom_name(a),
                    m.format_element(b),
                    p.label(m),
                    q.label(m)
                ));
                continue;
            }
            if !m.left_gcd(&b2, &num).is_unit() {
                rec.fail(format!(
                    "invariant fraction for {} over {} is not reduced",
                    m.format_element(b),
                    p.label(m)
                ));
                continue;
            }
            let via_fraction = GroupFraction::reduce(m, &b2, &num);
            let subgroup =
                ParabolicSubgroup::new(m, p.clone(), GroupFraction::from_monoid(b));
            if via_fraction != *subgroup.z() {
                rec.fail(format!(
                    "standardizer fraction of {} over {} is {} but the invariant is {}",
                    m.format_element(b),
                    p.label(m),
                    via_fraction.format(m),
                    subgroup.z().format(m)
                ));
            }
        }
    }
    rec.report("standardizer_yields_reduced_invariant", m, true)
}

fn check_standardizer_minimal(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let bs = m.elements_up_to(ctx.cfg.standardizer_b_len);
    let us = m.elements_up_to(ctx.cfg.standardizer_u_len);
    let u_inverses: Vec<GroupFraction> = us
        .iter()
        .map(|u| GroupFraction::from_monoid(u).inverse())
        .collect();
    for p in &ctx.parabolics {
        for b in &bs {
            let (b2, _) = fractions::minimal_standardizer(m, p, b);
            let subgroup =
                ParabolicSubgroup::new(m, p.clone(), GroupFraction::from_monoid(b));
            rec.case();
            let own = GroupFraction::conjugate(
                m,
                subgroup.z(),
                &GroupFraction::from_monoid(&b2).inverse(),
            );
            if !own.is_positive() {
                rec.fail(format!(
                    "the standardizer {} of {} over {} does not standardize",
                    m.format_element(&b2),
                    m.format_element(b),
                    p.label(m)
                ));
            }
            if subgroup.is_standard() != b2.is_unit() {
                rec.fail(format!(
                    "subgroup for {} over {} is standard = {}, standardizer = {}",
                    m.format_element(b),
                    p.label(m),
                    subgroup.is_standard(),
                    m.format_element(&b2)
                ));
            }
            for (u, uinv) in us.iter().zip(&u_inverses) {
                rec.case();
                let moved = GroupFraction::conjugate(m, subgroup.z(), uinv);
                if moved.is_positive() && !m.right_divides(&b2, u) {
                    rec.fail(format!(
                        "{} standardizes the subgroup of {} over {} but is not a left multiple of {}",
                        m.format_element(u),
                        m.format_element(b),
                        p.label(m),
                        m.format_element(&b2)
                    ));
                }
            }
        }
    }
    rec.report("standardizer_is_minimal", m, true)
}

fn check_conjugacy_search(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    let nps = ctx.parabolics.len();

    let mut with_ribbons: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (pi, r) in &ctx.ribbons {
        if let Some(qi) = ctx.parabolic_index(r.target()) {
            with_ribbons.insert((*pi, qi));
        }
    }
    let mut reachable: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (pi, graph) in ctx.graphs.iter().enumerate() {
        if let Ok(g) = graph {
            for v in &g.vertices {
                if let Some(qi) = ctx.parabolic_index(v) {
                    reachable.insert((pi, qi));
                }
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if nps * nps <= ctx.cfg.search_pair_cap {
        for pi in 0..nps {
            for qi in 0..nps {
                pairs.push((pi, qi));
            }
        }
    } else {
        for pi in 0..nps {
            for qi in 0..nps {
                let same_rank = ctx.parabolics[pi].rank() == ctx.parabolics[qi].rank();
                if same_rank || reachable.contains(&(pi, qi)) {
                    pairs.push((pi, qi));
                }
            }
        }
        if pairs.len() > ctx.cfg.search_pair_cap {
            let stride = pairs.len().div_ceil(ctx.cfg.search_pair_cap);
            pairs = pairs.into_iter().step_by(stride).collect();
        }
    }
    let exhaustive = pairs.len() == nps * nps;

    for &(pi, qi) in &pairs {
        let p = &ctx.parabolics[pi];
        let q = &ctx.parabolics[qi];
        rec.case();
        match fractions::conjugate_parabolics(m, p, q) {
            Ok(rb) => {
                let k = p.central_exponent() as usize;
                let moved =
                    ribbon::conjugate_if_defined(m, &m.pow(&p.delta_elt(m), k), rb.word());
                if moved != Some(m.pow(&q.delta_elt(m), k))
                    || rb.target().atom_ids() != q.atom_ids()
                {
                    rec.fail(format!(
                        "search witness {} from {} to {} does not carry the central power",
                        m.format_element(rb.word()),
                        p.label(m),
                        q.label(m)
                    ));
                }
                if !reachable.contains(&(pi, qi)) {
                    rec.fail(format!(
                        "search connects {} to {} but the ribbon graph does not",
                        p.label(m),
                        q.label(m)
                    ));
                }
            }
            Err(Error::NotConjugate) => {
                if with_ribbons.contains(&(pi, qi)) {
                    rec.fail(format!(
                        "a sampled ribbon carries {} to {} but the search reports not conjugate",
                        p.label(m),
                        q.label(m)
                    ));
                }
                if reachable.contains(&(pi, qi)) {
                    rec.fail(format!(
                        "the ribbon graph connects {} to {} but the search reports not conjugate",
                        p.label(m),
                        q.label(m)
                    ));
                }
            }
            Err(e) => rec.fail(format!(
                "search from {} to {} failed: {}",
                p.label(m),
                q.label(m),
                e
            )),
        }
    }
    rec.report("conjugacy_search_matches_criteria", m, exhaustive)
}

fn check_normal_factors_are_ribbons(ctx: &LemmaContext) -> CheckReport {
    let m = ctx.m;
    let mut rec = Rec::new();
    for (pi, r) in &ctx.ribbons {
        rec.case();
        match ribbon::normal_form_ribbon_split(m, r) {
            Ok(parts) => {
                let words: Vec<&MonoidElement> = parts.iter().map(|x| x.word()).collect();
                let product = m.multiply_all(words);
                let chain_ok = parts.windows(2).all(|w| {
                    w[0].target().atom_ids() == w[1].source().atom_ids()
                });
                let last_target = parts
                    .last()
                    .map(|x| x.target().atom_ids())
                    .unwrap_or_else(|| ctx.parabolics[*pi].atom_ids());
                if product != *r.word()
                    || !chain_ok
                    || last_target != r.target().atom_ids()
                {
                    rec.fail(format!(
                        "normal-form split of ribbon {} from {} does not re-compose",
                        m.format_element(r.word()),
                        ctx.parabolics[*pi].label(m)
                    ));
                }
            }
            Err(e) => rec.fail(format!(
                "normal-form split of ribbon {} from {} failed: {}",
                m.format_element(r.word()),
                ctx.parabolics[*pi].label(m),
                e
            )),
        }
    }
    rec.report("normal_factors_of_ribbons_are_ribbons", m, true)
}

/// Replay every structural invariant of the ribbon and group-fractions layers
/// over all elements up to `bound`, one report per invariant.
pub fn lemma_suite(m: &Monoid, bound: usize) -> Vec<CheckReport> {
    lemma_suite_with(m, LemmaSuiteConfig::for_instance(m, bound))
}

pub fn lemma_suite_with(m: &Monoid, cfg: LemmaSuiteConfig) -> Vec<CheckReport> {
    let ctx = LemmaContext::build(m, cfg);
    let mut out = vec![
        check_elementary_divides(&ctx),
        check_atom_lcm_with_ribbon(&ctx),
        check_divisibility_ignores_prefix(&ctx),
        check_head_tail_transport(&ctx),
        check_ribbons_compose(&ctx),
        check_conjugation_gcd_lcm_closure(&ctx),
        check_ribbons_factor_elementary(&ctx),
        check_positive_conjugacy_ribbon(&ctx),
        check_positive_conjugacy_tail(&ctx),
        check_garside_power_transport(&ctx),
        check_ribbon_prefix_maximal(&ctx),
        check_head_conjugate_in_submonoid(&ctx),
    ];
    out.extend(check_group_conjugacy_family(&ctx));
    out.push(check_invariant_presentation_independent(&ctx));
    out.push(check_standardizer_reduced(&ctx));
    out.push(check_standardizer_minimal(&ctx));
    out.push(check_conjugacy_search(&ctx));
    out.push(check_normal_factors_are_ribbons(&ctx));
    out
}

/// Search for counterexamples to the open claim that a reduced conjugator of
/// an element back into the monoid is a ribbon for the smallest submonoid
/// containing that element. Counterexamples are reported, never suppressed.
pub fn conjecture_scan(m: &Monoid, bound: usize) -> CheckReport {
    let mut rec = Rec::new();
    let elements = m.elements_up_to(bound);
    for b in &elements {
        if b.is_unit() {
            continue;
        }
        let p = parabolic::smallest_parabolic_containing(m, b);
        for g in &elements {
            if !parabolic::is_p_reduced(m, &p, g) {
                continue;
            }
            if ribbon::conjugate_if_defined(m, b, g).is_none() {
                continue;
            }
            rec.case();
            if let Err(e) = ribbon::is_ribbon(m, &p, g) {
                rec.fail(format!(
                    "b = {} with support {}, conjugator g = {}: {}",
                    m.format_element(b),
                    p.label(m),
                    m.format_element(g),
                    e
                ));
            }
        }
    }
    rec.report("reduced_conjugators_of_support_are_ribbons", m, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::lattice::{tests::tiny_input, Simple, SimpleLattice};
    use crate::presentations::artin_for_type;

    fn a2() -> Monoid {
        artin_for_type(&CoxeterType::A(2)).unwrap()
    }

    fn parab(m: &Monoid, names: &[&str]) -> StandardParabolic {
        let atoms: Vec<AtomId> = names.iter().map(|n| m.atom_id(n).unwrap()).collect();
        parabolic::parabolic_closure(m, &atoms)
    }

    #[test]
    fn divisor_sets_enumerate_exhaustively() {
        let m = a2();
        let mut oracle = Oracle::new(&m);
        let delta = oracle.enumerate_left_divisors(&m.delta()).unwrap();
        assert_eq!(delta.len(), m.n_simples());
        let unit = oracle.enumerate_left_divisors(&m.unit()).unwrap();
        assert_eq!(unit.len(), 1);
        assert!(unit.contains(&m.unit()));

        let g = m.parse_word("s1.s1.s2").unwrap();
        let set = oracle.enumerate_left_divisors(&g).unwrap();
        assert!(set.contains(&m.unit()));
        assert!(set.contains(&g));
        for d in set.iter() {
            assert!(m.left_divides(d, &g));
        }
        for candidate in m.elements_up_to(3) {
            assert_eq!(set.contains(&candidate), m.left_divides(&candidate, &g));
        }
        for d in set.iter() {
            for e in set.iter() {
                assert!(set.contains(&m.left_gcd(d, e)));
            }
        }
    }

    #[test]
    fn divisor_bound_is_enforced() {
        let m = a2();
        let mut oracle = Oracle::with_bound(&m, 2);
        let long = m.pow(&m.delta(), 3);
        assert!(matches!(
            oracle.enumerate_left_divisors(&long),
            Err(Error::BoundExceeded { bound: 2 })
        ));
        assert!(matches!(
            oracle.brute_gcd(&long, &m.unit()),
            Err(Error::BoundExceeded { bound: 2 })
        ));
    }

    #[test]
    fn brute_operations_match_known_values() {
        let m = a2();
        let mut oracle = Oracle::new(&m);
        let a = m.parse_word("s1").unwrap();
        let b = m.parse_word("s2").unwrap();
        let ab = m.parse_word("s1.s2").unwrap();
        let aa = m.parse_word("s1.s1").unwrap();
        let aba = m.parse_word("s1.s2.s1").unwrap();

        assert_eq!(oracle.brute_gcd(&ab, &aa).unwrap(), a);
        assert_eq!(oracle.brute_gcd(&aba, &aba).unwrap(), aba);
        assert_eq!(oracle.brute_lcm(&a, &b).unwrap(), m.delta());
        assert_eq!(oracle.brute_lcm(&a, &ab).unwrap(), ab);

        let pa = parab(&m, &["s1"]);
        assert_eq!(oracle.brute_head_p(&pa, &aba).unwrap(), a);
        assert_eq!(oracle.brute_head_p(&pa, &m.unit()).unwrap(), m.unit());

        let ba = m.parse_word("s2.s1").unwrap();
        assert_eq!(oracle.brute_ribbon_prefix(&pa, &ba).unwrap(), ba);
        assert_eq!(
            oracle.brute_ribbon_prefix(&pa, &m.unit()).unwrap(),
            m.unit()
        );
        assert!(matches!(
            oracle.brute_ribbon_prefix(&pa, &ab),
            Err(Error::Ribbon(RibbonError::NotReduced))
        ));

        assert_eq!(
            oracle.brute_smallest_parabolic(&a).unwrap().atom_ids(),
            pa.atom_ids()
        );
        let full = parabolic::full_parabolic(&m);
        assert_eq!(
            oracle.brute_smallest_parabolic(&ab).unwrap().atom_ids(),
            full.atom_ids()
        );
    }

    #[test]
    fn agreement_passes_on_the_two_generator_braid_monoid() {
        let m = a2();
        let reports = oracle_agreement(&m, &AgreementBounds::for_instance(&m));
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.ok, "{}: {:?}", r.check, r.failures);
            assert!(r.cases > 0, "{} ran no cases", r.check);
        }
    }

    #[test]
    fn lemma_suite_passes_on_the_two_generator_braid_monoid() {
        let m = a2();
        let reports = lemma_suite(&m, 2);
        assert_eq!(reports.len(), 20);
        for r in &reports {
            assert!(r.ok, "{}: {:?}", r.check, r.failures);
            assert!(r.cases > 0, "{} ran no cases", r.check);
        }
    }

    #[test]
    fn fault_injected_join_table_is_reported_not_panicking() {
        let mut lattice = SimpleLattice::build(tiny_input()).unwrap();
        let a = Simple(1);
        let ab = Simple(3);
        let delta = Simple(5);
        lattice.corrupt_join_entry(a, ab, delta);
        let m = Monoid::new("tiny-corrupted", lattice).unwrap();

        let bounds = AgreementBounds {
            gcd_len: 2,
            lcm_len: 2,
            head_len: 2,
            prefix_len: 2,
            smallest_len: 2,
        };
        let reports = oracle_agreement(&m, &bounds);
        let lcm = reports
            .iter()
            .find(|r| r.check == "agreement_right_lcm")
            .unwrap();
        assert!(!lcm.ok, "corrupted join table went unnoticed");
        assert!(!lcm.failures.is_empty());
        let gcd = reports
            .iter()
            .find(|r| r.check == "agreement_left_gcd")
            .unwrap();
        assert!(gcd.ok, "{:?}", gcd.failures);
    }

    #[test]
    fn conjecture_scan_reports_cases_and_no_counterexamples_here() {
        let m = a2();
        let report = conjecture_scan(&m, 2);
        assert!(report.ok, "{:?}", report.failures);
        assert!(report.cases > 0);
    }
}
