//! The Kan group of a reduced simplicial set, exposed lazily.
//!
//! Degree n is the free group on generators `<y>` for `y` in degree
//! n+1 of the base, modulo `<s_0 x> = 1`. Elements are reduced words
//! with canonical encoding, so equality of encodings decides equality
//! of elements. Faces and degeneracies act on generators by
//!
//! ```text
//! d_0 <y> = <d_1 y> <d_0 y>^-1,   d_i <y> = <d_{i+1} y>  (i >= 1),
//! s_i <y> = <s_{i+1} y>,
//! ```
//!
//! extended homomorphically to words.

use crate::error::{Error, Result};
use crate::lazy::LazySSet;
use crate::sset::MaterializedSSet;

/// A reduced word: alternating generator powers, no zero exponents, no
/// adjacent repeats, no unit generators.
pub type Word = Vec<(usize, i64)>;

pub struct KanGroup {
    /// The base, reduced, truncated high enough for the probes at hand.
    pub base: MaterializedSSet,
}

impl KanGroup {
    pub fn new(base: MaterializedSSet) -> Result<Self> {
        if base.count(0) != 1 {
            return Err(Error::NotReduced {
                vertices: base.count(0),
            });
        }
        Ok(KanGroup { base })
    }

    /// Degree-n generators live in degree n+1 of the base.
    fn gen_degree(&self, n: usize) -> Result<usize> {
        let need = n + 1;
        if need > self.base.trunc() {
            return Err(Error::InsufficientTruncation {
                needed: need,
                have: self.base.trunc(),
            });
        }
        Ok(need)
    }

    /// The relation `<s_0 x> = 1`: a generator is trivial iff it is an
    /// s_0-degeneracy in the base.
    pub fn is_unit_generator(&self, n: usize, y: usize) -> Result<bool> {
        let d = self.gen_degree(n)?;
        Ok(self.base.degen(d - 1, 0, self.base.face(d, 1, y)) == y)
    }

    pub fn unit() -> Word {
        Vec::new()
    }

    pub fn generator(&self, n: usize, y: usize) -> Result<Word> {
        if self.is_unit_generator(n, y)? {
            Ok(Vec::new())
        } else {
            Ok(vec![(y, 1)])
        }
    }

    /// Canonical reduction: merge adjacent powers, drop zeros.
    fn reduce(word: Word) -> Word {
        let mut out: Word = Vec::with_capacity(word.len());
        for (g, e) in word {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        out
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Word {
        let mut w = a.clone();
        w.extend_from_slice(b);
        Self::reduce(w)
    }

    pub fn inv(&self, a: &Word) -> Word {
        a.iter().rev().map(|&(g, e)| (g, -e)).collect()
    }

    /// Applies a map defined on generators homomorphically.
    fn extend<F>(&self, word: &Word, mut on_gen: F) -> Result<Word>
    where
        F: FnMut(usize) -> Result<Word>,
    {
        let mut out: Word = Vec::new();
        for &(g, e) in word {
            let image = on_gen(g)?;
            let (image, reps) = if e < 0 {
                (self.inv(&image), (-e) as usize)
            } else {
                (image, e as usize)
            };
            for _ in 0..reps {
                out.extend_from_slice(&image);
            }
        }
        Ok(Self::reduce(out))
    }
}

impl LazySSet for KanGroup {
    type Elem = Word;

    fn face(&self, n: usize, i: usize, x: &Word) -> Result<Word> {
        if n == 0 {
            return Err(Error::Unsupported("no faces out of degree 0".into()));
        }
        let d = self.gen_degree(n)?;
        self.extend(x, |y| {
            if i == 0 {
                let a = self.generator(n - 1, self.base.face(d, 1, y))?;
                let b = self.generator(n - 1, self.base.face(d, 0, y))?;
                Ok(self.mul(&a, &self.inv(&b)))
            } else {
                self.generator(n - 1, self.base.face(d, i + 1, y))
            }
        })
    }

    fn degeneracy(&self, n: usize, i: usize, x: &Word) -> Result<Word> {
        let d = self.gen_degree(n)?;
        // Need headroom for degree n+2 generators in the base.
        self.gen_degree(n + 1)?;
        self.extend(x, |y| self.generator(n + 1, self.base.degen(d, i + 1, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazy::check_identities_on;
    use crate::sset::{circle, point};

    #[test]
    fn kan_group_of_point_is_trivial() {
        let k = KanGroup::new(point(4)).unwrap();
        for n in 0..=2 {
            for y in 0..k.base.count(n + 1) {
                assert!(k.generator(n, y).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn kan_group_of_circle_degree_zero_is_free_on_one_generator() {
        let k = KanGroup::new(circle(4)).unwrap();
        let gens: Vec<Word> = (0..k.base.count(1))
            .map(|y| k.generator(0, y).unwrap())
            .filter(|w| !w.is_empty())
            .collect();
        assert_eq!(gens.len(), 1);
        // Powers of the generator stay reduced and distinct.
        let g = &gens[0];
        let mut acc = KanGroup::unit();
        for p in 1..=5 {
            acc = k.mul(&acc, g);
            assert_eq!(acc, vec![(g[0].0, p as i64)]);
        }
        assert!(k.mul(&acc, &k.inv(&acc)).is_empty());
    }

    #[test]
    fn kan_identities_on_generators() {
        let k = KanGroup::new(circle(8)).unwrap();
        for n in 0..=3 {
            let probes: Vec<Word> = (0..k.base.count(n + 1))
                .map(|y| k.generator(n, y).unwrap())
                .collect();
            let report = check_identities_on(&k, n, &probes).unwrap();
            assert!(report.is_empty(), "{report:?}");
        }
    }

    #[test]
    fn kan_not_reduced_rejected() {
        let two = crate::sset::discrete(2, 2);
        assert!(matches!(KanGroup::new(two), Err(Error::NotReduced { .. })));
    }

    #[test]
    fn kan_face_is_homomorphic_with_cancellation() {
        let k = KanGroup::new(circle(6)).unwrap();
        let gens: Vec<Word> = (0..k.base.count(2))
            .map(|y| k.generator(1, y).unwrap())
            .filter(|w| !w.is_empty())
            .collect();
        assert!(!gens.is_empty());
        let u = k.mul(&gens[0], &k.inv(&gens[gens.len() - 1]));
        let v = k.mul(&gens[gens.len() - 1], &gens[0]);
        for i in 0..=1 {
            let lhs = k.face(1, i, &k.mul(&u, &v)).unwrap();
            let rhs = k.mul(&k.face(1, i, &u).unwrap(), &k.face(1, i, &v).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
