//! The group of fractions of the monoid: reduced left fractions, parabolic
//! subgroups and their `z` invariants, minimal standardizers, and conjugacy
//! decisions between parabolic submonoids.
//!
//! Every group element has a unique reduced left fraction `p⁻¹q` with
//! `left_gcd(p, q) = 1`, so equality of fractions is structural equality.
//! A parabolic subgroup is a conjugate of the fraction group of a standard
//! parabolic submonoid; it is determined by its invariant `z`, the conjugate
//! of the smallest central power of the submonoid's Garside element.

use crate::error::{Error, Result, RibbonError};
use crate::lattice::AtomId;
use crate::monoid::{Monoid, MonoidElement};
use crate::parabolic::{self, StandardParabolic};
use crate::ribbon::{self, Ribbon};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::VecDeque;

/// A reduced left fraction `den⁻¹ · num`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GroupFraction {
    den: MonoidElement,
    num: MonoidElement,
}

impl GroupFraction {
    pub fn reduce(m: &Monoid, den: &MonoidElement, num: &MonoidElement) -> GroupFraction {
        let d = m.left_gcd(den, num);
        GroupFraction {
            den: m.left_divide_exact(&d, den).expect("gcd divides"),
            num: m.left_divide_exact(&d, num).expect("gcd divides"),
        }
    }

    pub fn from_monoid(g: &MonoidElement) -> GroupFraction {
        GroupFraction {
            den: MonoidElement::unit(),
            num: g.clone(),
        }
    }

    pub fn one() -> GroupFraction {
        GroupFraction {
            den: MonoidElement::unit(),
            num: MonoidElement::unit(),
        }
    }

    pub fn den(&self) -> &MonoidElement {
        &self.den
    }

    pub fn num(&self) -> &MonoidElement {
        &self.num
    }

    pub fn is_one(&self) -> bool {
        self.den.is_unit() && self.num.is_unit()
    }

    /// Whether the fraction lies in the monoid.
    pub fn is_positive(&self) -> bool {
        self.den.is_unit()
    }

    pub fn as_monoid(&self) -> Option<&MonoidElement> {
        self.is_positive().then_some(&self.num)
    }

    pub fn inverse(&self) -> GroupFraction {
        GroupFraction {
            den: self.num.clone(),
            num: self.den.clone(),
        }
    }

    pub fn multiply(m: &Monoid, x: &GroupFraction, y: &GroupFraction) -> GroupFraction {
        let l = m.left_lcm(&x.num, &y.den);
        let r = m.right_divide_exact(&l, &x.num).expect("lcm is a left multiple");
        let q = m.right_divide_exact(&l, &y.den).expect("lcm is a left multiple");
        GroupFraction::reduce(
            m,
            &m.multiply(&r, &x.den),
            &m.multiply(&q, &y.num),
        )
    }

    pub fn conjugate(m: &Monoid, b: &GroupFraction, g: &GroupFraction) -> GroupFraction {
        GroupFraction::multiply(m, &GroupFraction::multiply(m, &g.inverse(), b), g)
    }

    pub fn pow(m: &Monoid, x: &GroupFraction, k: i64) -> GroupFraction {
        let base = if k < 0 { x.inverse() } else { x.clone() };
        let mut acc = GroupFraction::one();
        for _ in 0..k.unsigned_abs() {
            acc = GroupFraction::multiply(m, &acc, &base);
        }
        acc
    }

    /// Text form `inv(den).num`, or just the word when positive.
    pub fn format(&self, m: &Monoid) -> String {
        if self.is_positive() {
            m.format_element(&self.num)
        } else {
            format!(
                "inv({}).{}",
                m.format_element(&self.den),
                m.format_element(&self.num)
            )
        }
    }
}

/// True when both components of the reduced fraction lie in the submonoid.
pub fn in_parabolic_group(m: &Monoid, p: &StandardParabolic, x: &GroupFraction) -> bool {
    parabolic::contains_element(m, p, &x.den) && parabolic::contains_element(m, p, &x.num)
}

/// A conjugate `G_P^g` of a standard parabolic subgroup, carrying its
/// invariant `z = (Δ_P^k)^g` for `k` the central exponent of `P`.
/// Equality compares `z` values, which characterize the subgroup.
#[derive(Clone, Debug)]
pub struct ParabolicSubgroup {
    base: StandardParabolic,
    conjugator: GroupFraction,
    z: GroupFraction,
}

impl PartialEq for ParabolicSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.z == other.z
    }
}

impl Eq for ParabolicSubgroup {}

impl ParabolicSubgroup {
    pub fn new(m: &Monoid, base: StandardParabolic, conjugator: GroupFraction) -> ParabolicSubgroup {
        let k = base.central_exponent() as usize;
        let central = GroupFraction::from_monoid(&m.pow(&base.delta_elt(m), k));
        let z = GroupFraction::conjugate(m, &central, &conjugator);
        ParabolicSubgroup { base, conjugator, z }
    }

    pub fn standard(m: &Monoid, base: StandardParabolic) -> ParabolicSubgroup {
        ParabolicSubgroup::new(m, base, GroupFraction::one())
    }

    pub fn base(&self) -> &StandardParabolic {
        &self.base
    }

    pub fn conjugator(&self) -> &GroupFraction {
        &self.conjugator
    }

    pub fn z(&self) -> &GroupFraction {
        &self.z
    }

    pub fn conjugated_by(&self, m: &Monoid, x: &GroupFraction) -> ParabolicSubgroup {
        ParabolicSubgroup::new(
            m,
            self.base.clone(),
            GroupFraction::multiply(m, &self.conjugator, x),
        )
    }

    /// A parabolic subgroup is standard exactly when `z` is in the monoid.
    pub fn is_standard(&self) -> bool {
        self.z.is_positive()
    }
}

/// Factor `b = head · ribbon-prefix · b'` over `p` and return `(b', Q)` with
/// `Q` the transport of `p` along the ribbon prefix. The element `b'` is the
/// minimal one whose left-conjugate carries `G_P^b` to a standard subgroup,
/// and `b'⁻¹ · Δ_Q^k · b'` is the reduced fraction of the subgroup invariant.
pub fn minimal_standardizer(
    m: &Monoid,
    p: &StandardParabolic,
    b: &MonoidElement,
) -> (MonoidElement, StandardParabolic) {
    let t = parabolic::tail_p(m, p, b);
    let (_, rest, q) = ribbon::ribbon_prefix(m, p, &t).expect("tail is reduced");
    (rest, q)
}

/// Decide `G_P^g ⊆ G_Q` by conjugating every atom of `p` and testing
/// membership of the result in `G_Q`.
pub fn conjugates_into(
    m: &Monoid,
    p: &StandardParabolic,
    q: &StandardParabolic,
    g: &GroupFraction,
) -> bool {
    p.atom_ids().iter().all(|&a| {
        let moved = GroupFraction::conjugate(m, &GroupFraction::from_monoid(&m.atom_elt(a)), g);
        in_parabolic_group(m, q, &moved)
    })
}

/// Search the ribbon category for a ribbon carrying `p` onto `q`.
pub fn conjugate_parabolics(
    m: &Monoid,
    p: &StandardParabolic,
    q: &StandardParabolic,
) -> Result<Ribbon> {
    let mut words: BTreeMap<BTreeSet<AtomId>, MonoidElement> = BTreeMap::new();
    let mut queue: VecDeque<StandardParabolic> = VecDeque::new();
    words.insert(p.atom_ids().clone(), m.unit());
    queue.push_back(p.clone());
    while let Some(cur) = queue.pop_front() {
        let word_here = words[cur.atom_ids()].clone();
        if cur.atom_ids() == q.atom_ids() {
            let rb = ribbon::is_ribbon(m, p, &word_here)?;
            if rb.target() != q {
                return Err(RibbonError::Inconsistent(
                    "search reached a submonoid with mismatched data".into(),
                )
                .into());
            }
            return Ok(rb);
        }
        for s in (0..m.n_atoms() as u32).map(AtomId) {
            if cur.contains_atom(s) {
                continue;
            }
            let v = ribbon::v_s_p(m, &cur, s)?;
            let target = ribbon::is_ribbon(m, &cur, &v)?.target().clone();
            if !words.contains_key(target.atom_ids()) {
                words.insert(target.atom_ids().clone(), m.multiply(&word_here, &v));
                queue.push_back(target);
            }
        }
    }
    Err(Error::NotConjugate)
}
