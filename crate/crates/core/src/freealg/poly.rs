use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rat;

use super::Word;

/// An element of the free associative algebra `A_n` over the rationals.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Word, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Poly::scalar(n, Rat::one())
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(Word::empty(), &c);
        p
    }

    /// The generator `x_i`, `1 <= i <= n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::LetterOutOfRange { letter: i, n });
        }
        Ok(Poly::monomial_unchecked(n, Word::letter(i as u8), Rat::one()))
    }

    pub fn monomial(n: usize, word: Word, c: Rat) -> Result<Self> {
        let w = Word::checked(word.letters(), n)?;
        Ok(Poly::monomial_unchecked(n, w, c))
    }

    pub(crate) fn monomial_unchecked(n: usize, word: Word, c: Rat) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(word, &c);
        p
    }

    /// Builds a polynomial from `(word, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rat)>,
    {
        let mut p = Poly::zero(n);
        for (w, c) in terms {
            let w = Word::checked(w.letters(), n)?;
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rat> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Highest degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn component(&self, d: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components, lowest degree first.
    pub fn components(&self) -> Vec<(usize, Poly)> {
        let mut out: Vec<(usize, Poly)> = Vec::new();
        for (w, c) in &self.terms {
            match out.last_mut() {
                Some((d, p)) if *d == w.degree() => {
                    p.terms.insert(w.clone(), c.clone());
                }
                _ => {
                    let mut p = Poly::zero(self.n);
                    p.terms.insert(w.clone(), c.clone());
                    out.push((w.degree(), p));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    fn check_n(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            Err(Error::GeneratorMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// Concatenation product extended bilinearly.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_n(other)?;
        let mut out = Poly::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `[p, q] = pq - qp`.
    pub fn bracket(&self, other: &Poly) -> Result<Poly> {
        self.check_n(other)?;
        let mut out = Poly::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a * b;
                out.add_term(u.concat(v), &c);
                out.add_term(v.concat(u), &-&c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    pub fn left_mul_word(&self, u: &Word) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (u.concat(w), c.clone())).collect(),
        }
    }

    pub fn right_mul_word(&self, v: &Word) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.concat(v), c.clone())).collect(),
        }
    }

    /// Reinterprets the element in `A_m` for `m >= n`.
    pub fn widen(&self, m: usize) -> Result<Poly> {
        if m < self.n {
            return Err(Error::GeneratorMismatch(self.n, m));
        }
        Ok(Poly { n: m, terms: self.terms.clone() })
    }

    /// Smallest `m` such that every letter lies in `1..=m`.
    pub fn max_letter(&self) -> usize {
        self.terms.keys().map(|w| w.max_letter() as usize).max().unwrap_or(0)
    }
}

/// Right-normed bracket `[a_1, [a_2, [..., a_m]]]`; a single argument is itself.
pub fn nested(args: &[Poly]) -> Result<Poly> {
    let (last, rest) = args.split_last().ok_or(Error::EmptyNested)?;
    rest.iter().rev().try_fold(last.clone(), |acc, a| a.bracket(&acc))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs).expect("generator count mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs).expect("generator count mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs).expect("generator count mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::from_int(-1))
    }
}

/// Prints in the element-expression grammar, terms in increasing word order.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", w)?;
            } else {
                write!(f, "{}*{}", mag, w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::generator(3, i).unwrap()
    }

    fn w(l: &[u8]) -> Word {
        Word::new(l)
    }

    #[test]
    fn product_of_generators_is_concatenation() {
        let p = &x(1) * &x(2);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&w(&[1, 2])), Rat::one());
    }

    #[test]
    fn unit_law() {
        let p = &(&x(1) * &x(2)) + &x(3).scale(&Rat::new(2, 3));
        assert_eq!(&Poly::one(3) * &p, p);
        assert_eq!(&p * &Poly::one(3), p);
    }

    #[test]
    fn bilinear_expansion() {
        let p = &(&x(1) + &x(2)) * &(&x(1) - &x(2));
        let expect = Poly::from_terms(
            3,
            [
                (w(&[1, 1]), Rat::one()),
                (w(&[1, 2]), Rat::from_int(-1)),
                (w(&[2, 1]), Rat::one()),
                (w(&[2, 2]), Rat::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn bracket_examples() {
        let b = x(1).bracket(&x(2)).unwrap();
        assert_eq!(b.to_string(), "x1*x2 - x2*x1");
        let p = &(&x(1) * &x(2)) + &x(3);
        assert!(p.bracket(&p).unwrap().is_zero());
        let a = &x(1) * &x(2);
        let c = &x(2) * &x(1);
        let got = a.bracket(&c).unwrap();
        assert_eq!(got.to_string(), "x1*x2*x2*x1 - x2*x1*x1*x2");
    }

    #[test]
    fn mismatched_generator_counts_are_rejected() {
        let a = Poly::generator(2, 1).unwrap();
        let b = Poly::generator(3, 1).unwrap();
        assert_eq!(a.mul(&b), Err(Error::GeneratorMismatch(2, 3)));
        assert!(a.bracket(&b).is_err());
        assert!(Poly::generator(2, 3).is_err());
    }

    #[test]
    fn nested_is_right_normed() {
        assert_eq!(nested(&[x(1)]).unwrap(), x(1));
        let lhs = nested(&[x(1), x(2), x(3)]).unwrap();
        let rhs = x(1).bracket(&x(2).bracket(&x(3)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(nested(&[]), Err(Error::EmptyNested));
    }

    #[test]
    fn nested_with_product_slot_expands_as_four_pure_products() {
        let n = 4;
        let g = |i| Poly::generator(n, i).unwrap();
        let b = |a: &Poly, c: &Poly| a.bracket(c).unwrap();
        let lhs = nested(&[g(1), g(2), &g(3) * &g(4)]).unwrap();
        let rhs = [
            &b(&g(1), &g(3)) * &b(&g(2), &g(4)),
            &g(3) * &nested(&[g(1), g(2), g(4)]).unwrap(),
            &b(&g(2), &g(3)) * &b(&g(1), &g(4)),
            &nested(&[g(1), g(2), g(3)]).unwrap() * &g(4),
        ]
        .iter()
        .fold(Poly::zero(n), |acc, t| &acc + t);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn components_split_by_degree() {
        let p = &(&Poly::one(3) + &x(1)) + &(&x(2) * &x(3));
        let comps = p.components();
        assert_eq!(comps.iter().map(|c| c.0).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(!p.is_homogeneous());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.component(1), x(1));
    }

    #[test]
    fn printer_shapes() {
        let p = &Poly::scalar(2, Rat::new(-1, 2)) + &Poly::generator(2, 1).unwrap().scale(&Rat::new(2, 3));
        assert_eq!(p.to_string(), "-1/2 + 2/3*x1");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }
}
