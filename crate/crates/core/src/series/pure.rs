//! Products of pure commutators `[x_{a_1}, ..., x_{a_m}]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{nested, CommutatorTree, Poly};
use crate::rational::Rat;

/// A right-normed commutator of generators, stored as its letters.
pub type PureCommutator = Vec<u8>;

/// An ordered product of pure commutators. The empty product, and an empty
/// commutator used as a factor, both stand for `1`.
pub type PureProduct = Vec<PureCommutator>;

/// A rational combination of products of pure commutators.
#[derive(Clone, PartialEq, Eq)]
pub struct PureCombination {
    n: usize,
    terms: BTreeMap<PureProduct, Rat>,
}

fn commutator_poly(n: usize, c: &[u8]) -> Result<Poly> {
    if c.is_empty() {
        return Ok(Poly::one(n));
    }
    let xs = c.iter().map(|&l| Poly::generator(n, l as usize)).collect::<Result<Vec<_>>>()?;
    nested(&xs)
}

/// A pure commutator ending in a repeated letter is zero.
fn vanishes(c: &[u8]) -> bool {
    c.len() >= 2 && c[c.len() - 1] == c[c.len() - 2]
}

pub fn product_poly(n: usize, p: &[PureCommutator]) -> Result<Poly> {
    p.iter().try_fold(Poly::one(n), |acc, c| acc.mul(&commutator_poly(n, c)?))
}

impl PureCombination {
    pub fn zero(n: usize) -> Self {
        PureCombination { n, terms: BTreeMap::new() }
    }

    pub fn single(n: usize, p: PureProduct, c: Rat) -> Self {
        let mut out = Self::zero(n);
        out.add_term(p, &c);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<PureProduct, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut p: PureProduct, c: &Rat) {
        if c.is_zero() || p.iter().any(|f| vanishes(f)) {
            return;
        }
        p.retain(|f| !f.is_empty());
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &PureCombination) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c);
        }
    }

    /// Largest number of factors in any term.
    pub fn max_factors(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_poly(&self) -> Result<Poly> {
        let mut acc = Poly::zero(self.n);
        for (p, c) in &self.terms {
            acc = acc.add(&product_poly(self.n, p)?.scale(c))?;
        }
        Ok(acc)
    }

    fn from_poly(p: &Poly) -> Self {
        let mut out = Self::zero(p.n());
        for (w, c) in p.iter() {
            out.add_term(w.letters().iter().map(|&l| vec![l]).collect(), c);
        }
        out
    }

    /// `[self, other]`, expanded by the Leibniz rule in both arguments.
    pub fn bracket(&self, other: &PureCombination) -> PureCombination {
        let mut out = Self::zero(self.n);
        for (p, cp) in &self.terms {
            for (q, cq) in &other.terms {
                let c = cp * cq;
                for i in 0..p.len() {
                    for j in 0..q.len() {
                        for (r, cr) in rbracket(&p[i], &q[j]) {
                            let mut t: PureProduct = Vec::with_capacity(p.len() + q.len() - 1);
                            t.extend_from_slice(&p[..i]);
                            t.extend_from_slice(&q[..j]);
                            t.push(r);
                            t.extend_from_slice(&q[j + 1..]);
                            t.extend_from_slice(&p[i + 1..]);
                            out.add_term(t, &(&c * &cr));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for PureCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for fac in p {
                let s: Vec<String> = fac.iter().map(|l| format!("x{}", l)).collect();
                if fac.len() == 1 {
                    write!(f, "*{}", s[0])?;
                } else {
                    write!(f, "*[{}]", s.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// `[u, v]` for pure commutators, as a combination of pure commutators.
///
/// With `u = [u_1, u']`, Jacobi gives `[u, v] = [u_1, [u', v]] - [u', [u_1, v]]`.
pub fn rbracket(u: &[u8], v: &[u8]) -> Vec<(PureCommutator, Rat)> {
    let mut acc: BTreeMap<PureCommutator, Rat> = BTreeMap::new();
    if u == v {
        return Vec::new();
    }
    rbracket_into(u, v, &Rat::one(), &mut acc);
    acc.into_iter().filter(|(c, k)| !k.is_zero() && !vanishes(c)).collect()
}

fn rbracket_into(u: &[u8], v: &[u8], c: &Rat, acc: &mut BTreeMap<PureCommutator, Rat>) {
    if u.is_empty() || v.is_empty() {
        return;
    }
    if u.len() == 1 {
        let mut w = Vec::with_capacity(v.len() + 1);
        w.push(u[0]);
        w.extend_from_slice(v);
        *acc.entry(w).or_insert_with(Rat::zero) += c;
        return;
    }
    for (w, k) in rbracket(&u[1..], v) {
        let mut t = Vec::with_capacity(w.len() + 1);
        t.push(u[0]);
        t.extend(w);
        *acc.entry(t).or_insert_with(Rat::zero) += &(c * &k);
    }
    let mut shifted = Vec::with_capacity(v.len() + 1);
    shifted.push(u[0]);
    shifted.extend_from_slice(v);
    rbracket_into(&u[1..], &shifted, &-c, acc);
}

/// Rewrites a commutator tree as a combination of products of pure
/// commutators. Leaves are expanded into their monomials, so any element
/// may sit in a slot.
pub fn decompose_pure(tree: &CommutatorTree) -> Result<PureCombination> {
    match tree {
        CommutatorTree::Leaf(p) => Ok(PureCombination::from_poly(p)),
        CommutatorTree::Node(l, r) => {
            let (a, b) = (decompose_pure(l)?, decompose_pure(r)?);
            if a.n != b.n {
                return Err(Error::GeneratorMismatch(a.n, b.n));
            }
            Ok(a.bracket(&b))
        }
    }
}

/// Result of exchanging two adjacent factors of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePermutation {
    pub swapped: PureProduct,
    /// `original - swapped`.
    pub error: PureCombination,
    /// The bracket `[c_i, c_j]` of the exchanged factors.
    pub error_bracket: PureCombination,
}

/// Exchanges factors `i` and `j = i + 1` (0-based). The difference is the
/// product with those two factors replaced by their bracket.
pub fn free_permute(n: usize, product: &[PureCommutator], i: usize, j: usize) -> Result<FreePermutation> {
    if j != i + 1 || j >= product.len() {
        return Err(Error::InvalidArgument(format!(
            "positions {} and {} are not adjacent factors of a {}-fold product",
            i,
            j,
            product.len()
        )));
    }
    for c in product {
        for &l in c {
            if l == 0 || l as usize > n {
                return Err(Error::LetterOutOfRange { letter: l as usize, n });
            }
        }
    }
    let mut swapped = product.to_vec();
    swapped.swap(i, j);
    let mut error = PureCombination::zero(n);
    let mut error_bracket = PureCombination::zero(n);
    for (r, c) in rbracket(&product[i], &product[j]) {
        let mut t = product[..i].to_vec();
        t.push(r.clone());
        t.extend_from_slice(&product[j + 1..]);
        error.add_term(t, &c);
        error_bracket.add_term(vec![r], &c);
    }
    Ok(FreePermutation { swapped, error, error_bracket })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn leaf(s: &str, n: usize) -> CommutatorTree {
        CommutatorTree::Leaf(parse_expr(s, n).unwrap())
    }

    #[test]
    fn four_term_expansion() {
        let t = CommutatorTree::right_normed(vec![
            parse_expr("x1", 4).unwrap(),
            parse_expr("x2*x3", 4).unwrap(),
            parse_expr("x4", 4).unwrap(),
        ])
        .unwrap();
        let d = decompose_pure(&t).unwrap();
        let one = Rat::one();
        let expect: BTreeMap<PureProduct, Rat> = [
            (vec![vec![1, 2], vec![3, 4]], one.clone()),
            (vec![vec![2], vec![1, 3, 4]], one.clone()),
            (vec![vec![1, 2, 4], vec![3]], one.clone()),
            (vec![vec![2, 4], vec![1, 3]], one),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.terms(), &expect);
        assert_eq!(d.to_poly().unwrap(), t.evaluate().unwrap());
    }

    #[test]
    fn pure_input_is_unchanged() {
        let t = CommutatorTree::right_normed((1..=3).map(|i| Poly::generator(3, i).unwrap()).collect()).unwrap();
        let d = decompose_pure(&t).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms().get(&vec![vec![1, 2, 3]]), Some(&Rat::one()));
    }

    #[test]
    fn left_nested_tree() {
        let t = CommutatorTree::node(
            CommutatorTree::node(leaf("x1", 3), leaf("x2", 3)),
            leaf("x3*x1 - 2*x2", 3),
        );
        let d = decompose_pure(&t).unwrap();
        assert_eq!(d.to_poly().unwrap(), t.evaluate().unwrap());
    }

    #[test]
    fn scalar_slot_gives_zero() {
        let t = CommutatorTree::node(leaf("3", 2), leaf("x1*x2", 2));
        assert!(decompose_pure(&t).unwrap().is_zero());
    }

    #[test]
    fn rbracket_matches_free_algebra() {
        for (u, v) in [(vec![1, 2], vec![3]), (vec![2, 1, 3], vec![1, 2]), (vec![1, 2], vec![1, 2])] {
            let lhs = commutator_poly(3, &u).unwrap().bracket(&commutator_poly(3, &v).unwrap()).unwrap();
            let rhs = rbracket(&u, &v)
                .into_iter()
                .fold(Poly::zero(3), |acc, (w, c)| &acc + &commutator_poly(3, &w).unwrap().scale(&c));
            assert_eq!(lhs, rhs, "{:?} {:?}", u, v);
        }
    }

    #[test]
    fn permutation_error_is_bracket() {
        let p: PureProduct = vec![vec![1], vec![1, 2], vec![2, 1], vec![3]];
        let f = free_permute(3, &p, 1, 2).unwrap();
        assert_eq!(f.swapped, vec![vec![1], vec![2, 1], vec![1, 2], vec![3]]);
        let orig = product_poly(3, &p).unwrap();
        let diff = orig.sub(&product_poly(3, &f.swapped).unwrap()).unwrap();
        assert_eq!(f.error.to_poly().unwrap(), diff);
        assert_eq!(f.error_bracket.max_factors(), 1);
        let br = commutator_poly(3, &p[1]).unwrap().bracket(&commutator_poly(3, &p[2]).unwrap()).unwrap();
        assert_eq!(f.error_bracket.to_poly().unwrap(), br);
        assert!(free_permute(3, &p, 1, 3).is_err());
        assert!(free_permute(3, &p, 3, 4).is_err());
        assert!(free_permute(2, &p, 0, 1).is_err());
    }

    #[test]
    fn permutation_examples() {
        let f = free_permute(4, &[vec![3, 4], vec![1, 2]], 0, 1).unwrap();
        assert_eq!(f.swapped, vec![vec![1, 2], vec![3, 4]]);
        let expect = parse_expr("-[[x1,x2],[x3,x4]]", 4).unwrap();
        assert_eq!(f.error.to_poly().unwrap(), expect);

        let f = free_permute(2, &[vec![], vec![1, 2]], 0, 1).unwrap();
        assert!(f.error.is_zero());
        let f = free_permute(2, &[vec![1, 2], vec![1, 2]], 0, 1).unwrap();
        assert!(f.error.is_zero());
    }
}
