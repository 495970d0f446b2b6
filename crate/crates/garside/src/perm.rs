//! Permutations of a small finite set.
//!
//! Composition is left-to-right everywhere in this crate: `(p * q)(x) = q(p(x))`,
//! so a word of permutations acts by applying its letters from left to right.

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Box<[u8]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its image list; panics if not a bijection.
    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(
                (x as usize) < images.len() && !seen[x as usize],
                "not a permutation"
            );
            seen[x as usize] = true;
        }
        Perm {
            images: images.into(),
        }
    }

    pub fn transposition(degree: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<u8> = (0..degree as u8).collect();
        v.swap(i, j);
        Perm { images: v.into() }
    }

    /// The cycle sending `points[k]` to `points[k + 1]` (and the last back to the first).
    pub fn from_cycle(degree: usize, points: &[usize]) -> Self {
        let mut v: Vec<u8> = (0..degree as u8).collect();
        for k in 0..points.len() {
            v[points[k]] = points[(k + 1) % points.len()] as u8;
        }
        Perm::from_images(v)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            v[y as usize] = x as u8;
        }
        Perm { images: v.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut count = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        count
    }

    /// True when the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        self.cycle_count() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let s1 = Perm::transposition(3, 0, 1);
        let s2 = Perm::transposition(3, 1, 2);
        let p = s1.compose(&s2);
        assert_eq!(p.apply(0), 2);
        assert_eq!(p.apply(2), 1);
        assert_eq!(p.apply(1), 0);
    }

    #[test]
    fn inverse_and_cycles() {
        let c = Perm::from_cycle(5, &[0, 1, 2, 3, 4]);
        assert!(c.is_full_cycle());
        assert_eq!(c.cycle_count(), 1);
        assert!(c.compose(&c.inverse()).is_identity());
        let t = Perm::transposition(5, 1, 3);
        assert_eq!(t.cycle_count(), 4);
    }
}
