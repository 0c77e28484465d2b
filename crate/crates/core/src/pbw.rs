//! Straightening into the PBW basis of `A_n = U(free Lie algebra)`:
//! nondecreasing products of Lyndon standard bracketings.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::Poly;
use crate::lyndon::{bracket_in_basis, standard_bracketing, LyndonWord};
use crate::rational::Rat;

/// A product of standard bracketings with nondecreasing factors. The factor
/// count is the PBW filtration degree of the monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<LyndonWord>);

impl PbwMonomial {
    pub fn new(mut factors: Vec<LyndonWord>) -> Self {
        factors.sort();
        PbwMonomial(factors)
    }

    pub fn factors(&self) -> &[LyndonWord] {
        &self.0
    }

    pub fn factor_count(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(LyndonWord::degree).sum()
    }

    pub fn to_poly(&self, n: usize) -> Result<Poly> {
        self.0.iter().try_fold(Poly::one(n), |acc, f| Ok(&acc * &standard_bracketing(n, f)?))
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for w in &self.0 {
            write!(f, "({:?})", w)?;
        }
        Ok(())
    }
}

/// An element written in the PBW basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbwExpansion {
    n: usize,
    terms: BTreeMap<PbwMonomial, Rat>,
}

impl PbwExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<PbwMonomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest factor count among nonzero terms.
    pub fn max_factor_count(&self) -> Option<usize> {
        self.terms.keys().map(PbwMonomial::factor_count).max()
    }

    /// Multiplies out every monomial in the free algebra.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut acc = Poly::zero(self.n);
        for (m, c) in &self.terms {
            acc = &acc + &m.to_poly(self.n)?.scale(c);
        }
        Ok(acc)
    }

    pub fn add(&self, other: &PbwExpansion) -> Result<PbwExpansion> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(PbwExpansion { n: self.n, terms })
    }
}

fn add_term<K: Ord>(t: &mut BTreeMap<K, Rat>, k: K, c: &Rat) {
    use std::collections::btree_map::Entry;
    match t.entry(k) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c.clone());
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn inversions(s: &[LyndonWord]) -> usize {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

/// Work-queue key: more factors first, then more inversions. Every rewrite
/// produces keys strictly later in this order, so each sequence is rewritten
/// once after all its contributions have been merged.
type QueueKey = (Reverse<usize>, Reverse<usize>, Vec<LyndonWord>);

fn queue_key(s: Vec<LyndonWord>) -> QueueKey {
    (Reverse(s.len()), Reverse(inversions(&s)), s)
}

/// Rewrites `p` in the PBW basis.
///
/// Each word is read as a product of generators; an adjacent out-of-order
/// pair `b_u b_v` (`u > v`) becomes `b_v b_u + [b_u, b_v]` with the bracket
/// re-expanded in the Lyndon basis, until every product is nondecreasing.
pub fn straighten(p: &Poly) -> PbwExpansion {
    let mut queue: BTreeMap<QueueKey, Rat> = BTreeMap::new();
    for (w, c) in p.iter() {
        let seq: Vec<LyndonWord> = w.letters().iter().map(|&l| LyndonWord::letter(l)).collect();
        add_term(&mut queue, queue_key(seq), c);
    }
    let mut out = BTreeMap::new();
    while let Some(((_, _, seq), c)) = queue.pop_first() {
        let Some(i) = (0..seq.len().saturating_sub(1)).find(|&i| seq[i] > seq[i + 1]) else {
            add_term(&mut out, PbwMonomial(seq), &c);
            continue;
        };
        let mut swapped = seq.clone();
        swapped.swap(i, i + 1);
        add_term(&mut queue, queue_key(swapped), &c);
        for (w, k) in bracket_in_basis(&seq[i], &seq[i + 1]).iter() {
            let mut s = Vec::with_capacity(seq.len() - 1);
            s.extend_from_slice(&seq[..i]);
            s.push(w.clone());
            s.extend_from_slice(&seq[i + 2..]);
            add_term(&mut queue, queue_key(s), &(&c * k));
        }
    }
    PbwExpansion { n: p.n(), terms: out }
}

/// Maximal factor count in the PBW expansion; scalars have degree 0 and Lie
/// elements degree 1.
pub fn pbw_degree(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(straighten(p).max_factor_count().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::freealg::Word;

    fn lw(l: &[u8]) -> LyndonWord {
        LyndonWord::new(Word::new(l)).unwrap()
    }

    #[test]
    fn reversed_pair_straightens_with_bracket_error_term() {
        let p = parse_expr("x2*x1", 2).unwrap();
        let e = straighten(&p);
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.coeff(&PbwMonomial::new(vec![lw(&[1]), lw(&[2])])), Rat::one());
        assert_eq!(e.coeff(&PbwMonomial::new(vec![lw(&[1, 2])])), Rat::from_int(-1));
        assert_eq!(e.to_poly().unwrap(), p);
    }

    #[test]
    fn basis_elements_are_fixed() {
        let p = standard_bracketing(2, &lw(&[1, 1, 2])).unwrap();
        let e = straighten(&p);
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(&PbwMonomial::new(vec![lw(&[1, 1, 2])])), Rat::one());

        let m = PbwMonomial::new(vec![lw(&[1]), lw(&[1, 2]), lw(&[1, 2]), lw(&[2])]);
        let e = straighten(&m.to_poly(2).unwrap());
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(&m), Rat::one());
    }

    #[test]
    fn degrees() {
        let deg = |s: &str, n| pbw_degree(&parse_expr(s, n).unwrap()).unwrap();
        assert_eq!(deg("[x1,[x1,x2]]", 2), 1);
        assert_eq!(deg("[x1,x2]*[x1,x2]", 2), 2);
        assert_eq!(deg("[x1,x2,x3*x4]", 4), 2);
        assert_eq!(deg("7/2", 2), 0);
        assert_eq!(deg("x1*x1*x1", 2), 3);
        assert_eq!(pbw_degree(&Poly::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn straightening_is_linear() {
        let p = parse_expr("x2*x1*x2 + 3*x2*x2*x1", 2).unwrap();
        let q = parse_expr("x1*x2*x1 - x2*x1*x2", 2).unwrap();
        let lhs = straighten(&(&p + &q));
        let rhs = straighten(&p).add(&straighten(&q)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
