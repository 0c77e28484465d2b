//! Exact echelonized subspaces of one homogeneous component of `A_n`.
//!
//! Words of a fixed degree are addressed by their base-`n` code (see
//! [`Word::code`]), so the degree-lex order on words is numeric order on
//! codes. Rows are kept in reduced row-echelon form with the pivot at the
//! largest word, which makes equal subspaces have equal row sets.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::{Poly, Word};
use crate::rational::Rat;

/// Sparse vector over word codes, sorted by code, without zero entries.
pub type SparseVec = Vec<(u64, Rat)>;

/// `n^d`, or an error when the component is too large to index.
pub fn component_size(n: usize, degree: usize) -> Result<u64> {
    (n as u64)
        .checked_pow(degree as u32)
        .ok_or(Error::IndexOverflow { n, degree })
}

/// Sums entries with equal codes and drops zeros. Input need not be sorted.
pub fn normalize(mut v: Vec<(u64, Rat)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, a) in v {
        match out.last_mut() {
            Some((lc, la)) if *lc == c => *la += &a,
            _ => {
                if let Some((_, la)) = out.last() {
                    if la.is_zero() {
                        out.pop();
                    }
                }
                out.push((c, a));
            }
        }
    }
    if matches!(out.last(), Some((_, a)) if a.is_zero()) {
        out.pop();
    }
    out
}

/// `u * v` for a monomial `u` of degree `du` and `v` of degree `dv`.
pub fn lmul(n: usize, u: u64, v: &[(u64, Rat)], dv: usize) -> SparseVec {
    let shift = (n as u64).pow(dv as u32);
    v.iter().map(|(c, a)| (u * shift + c, a.clone())).collect()
}

/// `v * w` for a monomial `w` of degree `dw`.
pub fn rmul(n: usize, v: &[(u64, Rat)], w: u64, dw: usize) -> SparseVec {
    let shift = (n as u64).pow(dw as u32);
    v.iter().map(|(c, a)| (c * shift + w, a.clone())).collect()
}

/// Product of `a` (any degree) and `b` of degree `db`.
pub fn vmul(n: usize, a: &[(u64, Rat)], b: &[(u64, Rat)], db: usize) -> SparseVec {
    let shift = (n as u64).pow(db as u32);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (ca, x) in a {
        for (cb, y) in b {
            out.push((ca * shift + cb, x * y));
        }
    }
    normalize(out)
}

/// `[m, v]` for a monomial `m` of degree `dm` and `v` of degree `dv`.
pub fn bracket_monomial(n: usize, m: u64, dm: usize, v: &[(u64, Rat)], dv: usize) -> SparseVec {
    let mut out = lmul(n, m, v, dv);
    out.extend(rmul(n, v, m, dm).into_iter().map(|(c, a)| (c, -a)));
    normalize(out)
}

/// Bracket of two homogeneous vectors of degrees `da` and `db`.
pub fn vbracket(n: usize, a: &[(u64, Rat)], da: usize, b: &[(u64, Rat)], db: usize) -> SparseVec {
    let mut out = vmul(n, a, b, db);
    out.extend(vmul(n, b, a, da).into_iter().map(|(c, x)| (c, -x)));
    normalize(out)
}

/// Letter counts of the word with the given code.
pub fn multidegree(n: usize, degree: usize, mut code: u64) -> Vec<u8> {
    let mut m = vec![0u8; n];
    for _ in 0..degree {
        m[(code % n as u64) as usize] += 1;
        code /= n as u64;
    }
    m
}

/// Scales so the leading (largest-code) coefficient is 1.
fn monic(v: SparseVec) -> SparseVec {
    match v.last() {
        Some((_, lead)) if !lead.is_one() => {
            let inv = lead.recip();
            v.into_iter().map(|(c, a)| (c, &a * &inv)).collect()
        }
        _ => v,
    }
}

/// A subspace of the degree-`d` component of `A_n` in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    n: usize,
    degree: usize,
    /// pivot code -> row; the pivot is the row's last entry, with coefficient 1
    rows: BTreeMap<u64, SparseVec>,
    /// non-pivot column -> pivots of rows that may hold an entry there
    col_rows: HashMap<u64, HashSet<u64>>,
}

impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.degree == other.degree && self.rows == other.rows
    }
}

impl Eq for GradedSubspace {}

impl GradedSubspace {
    pub fn new(n: usize, degree: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoGenerators);
        }
        component_size(n, degree)?;
        Ok(GradedSubspace { n, degree, rows: BTreeMap::new(), col_rows: HashMap::new() })
    }

    /// The whole degree-`d` component.
    pub fn full(n: usize, degree: usize) -> Result<Self> {
        let size = component_size(n, degree)?;
        let mut s = GradedSubspace::new(n, degree)?;
        for c in 0..size {
            s.rows.insert(c, vec![(c, Rat::one())]);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon rows as sparse vectors, in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivot_words(&self) -> Vec<Word> {
        self.rows.keys().map(|&c| Word::from_code(c, self.n, self.degree)).collect()
    }

    /// Echelon rows as elements of `A_n`, keyed by pivot word.
    pub fn pivots(&self) -> BTreeMap<Word, Poly> {
        self.rows
            .iter()
            .map(|(&p, r)| (Word::from_code(p, self.n, self.degree), self.to_poly(r)))
            .collect()
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.rows.values().map(|r| self.to_poly(r)).collect()
    }

    pub fn to_poly(&self, v: &[(u64, Rat)]) -> Poly {
        let mut p = Poly::zero(self.n);
        for (c, a) in v {
            p.add_term(Word::from_code(*c, self.n, self.degree), a);
        }
        p
    }

    /// Coordinates of a homogeneous element of this degree (zero allowed).
    pub fn to_sparse(&self, p: &Poly) -> Result<SparseVec> {
        if p.n() != self.n {
            return Err(Error::GeneratorMismatch(self.n, p.n()));
        }
        let mut v = Vec::with_capacity(p.len());
        for (w, a) in p.iter() {
            if w.degree() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree, found: w.degree() });
            }
            v.push((w.code(self.n), a.clone()));
        }
        Ok(v)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce_sparse(&self, v: &[(u64, Rat)]) -> SparseVec {
        let mut acc: Vec<(u64, Rat)> = v.to_vec();
        for (c, a) in v {
            if let Some(row) = self.rows.get(c) {
                acc.extend(row.iter().map(|(col, b)| (*col, -(a * b))));
            }
        }
        normalize(acc)
    }

    pub fn contains_sparse(&self, v: &[(u64, Rat)]) -> bool {
        // cheap exit: a vector touching no pivot is in the span only if zero
        if !v.iter().any(|(c, _)| self.rows.contains_key(c)) {
            return v.iter().all(|(_, a)| a.is_zero());
        }
        self.reduce_sparse(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert_sparse(&mut self, v: &[(u64, Rat)]) -> bool {
        let r = self.reduce_sparse(v);
        if r.is_empty() {
            return false;
        }
        self.install(monic(r));
        true
    }

    /// Installs a monic remainder (no pivot columns) as a new row.
    fn install(&mut self, r: SparseVec) {
        let pivot = r.last().expect("nonzero row").0;
        if let Some(holders) = self.col_rows.remove(&pivot) {
            for q in holders {
                let row = self.rows.get_mut(&q).expect("indexed row");
                let Ok(pos) = row.binary_search_by_key(&pivot, |e| e.0) else { continue };
                let b = row[pos].1.clone();
                let mut acc = std::mem::take(row);
                acc.extend(r.iter().map(|(c, a)| (*c, -(&b * a))));
                *row = normalize(acc);
                for (c, _) in r.iter().filter(|(c, _)| *c != pivot) {
                    self.col_rows.entry(*c).or_default().insert(q);
                }
            }
        }
        for (c, _) in r.iter().filter(|(c, _)| *c != pivot) {
            self.col_rows.entry(*c).or_default().insert(pivot);
        }
        self.rows.insert(pivot, r);
    }

    /// Span grows by `p`; idempotent for elements already in the span.
    pub fn insert(&mut self, p: &Poly) -> Result<bool> {
        let v = self.to_sparse(p)?;
        Ok(self.insert_sparse(&v))
    }

    /// Exact membership: the remainder against the pivots is zero.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        let v = self.to_sparse(p)?;
        Ok(self.contains_sparse(&v))
    }

    fn check_same_component(&self, other: &GradedSubspace) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::ComponentMismatch(format!(
                "n={}, degree={} vs n={}, degree={}",
                self.n, self.degree, other.n, other.degree
            )));
        }
        Ok(())
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_subspace(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_same_component(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.rows.values().all(|r| other.contains_sparse(r)))
    }

    /// Rows of `self` that do not lie in `other`, as elements.
    pub fn not_in(&self, other: &GradedSubspace) -> Result<Vec<Poly>> {
        self.check_same_component(other)?;
        Ok(self
            .rows
            .values()
            .filter(|r| !other.contains_sparse(r))
            .map(|r| self.to_poly(r))
            .collect())
    }

    /// Span of `self` and `other`.
    pub fn merge(&mut self, other: &GradedSubspace) -> Result<()> {
        self.check_same_component(other)?;
        for r in other.rows.values() {
            self.insert_sparse(r);
        }
        Ok(())
    }

    /// Echelonizes a spanning set.
    ///
    /// Vectors are made monic and deduplicated, grouped by the letter content
    /// of their leading word, echelonized per group on the rayon pool and
    /// merged. Groups of multihomogeneous vectors touch disjoint columns, so
    /// the merge is cheap; mixed vectors are still handled exactly.
    pub fn from_vectors(n: usize, degree: usize, vectors: Vec<SparseVec>) -> Result<Self> {
        let mut s = GradedSubspace::new(n, degree)?;
        let mut vs: Vec<SparseVec> = vectors
            .into_par_iter()
            .map(normalize)
            .filter(|v| !v.is_empty())
            .map(monic)
            .collect();
        vs.par_sort_unstable_by(cmp_sparse);
        vs.dedup();
        let mut groups: BTreeMap<Vec<u8>, Vec<SparseVec>> = BTreeMap::new();
        let mut mixed = Vec::new();
        for v in vs {
            let key = multidegree(n, degree, v.last().expect("nonzero").0);
            if v.iter().all(|(c, _)| multidegree(n, degree, *c) == key) {
                groups.entry(key).or_default().push(v);
            } else {
                mixed.push(v);
            }
        }
        let parts: Vec<GradedSubspace> = groups
            .into_par_iter()
            .map(|(_, vs)| {
                let mut part = GradedSubspace { n, degree, rows: BTreeMap::new(), col_rows: HashMap::new() };
                for v in &vs {
                    part.insert_sparse(v);
                }
                part
            })
            .collect();
        // distinct letter contents occupy disjoint columns
        for part in parts {
            s.rows.extend(part.rows);
            s.col_rows.extend(part.col_rows);
        }
        for v in &mixed {
            s.insert_sparse(v);
        }
        Ok(s)
    }

    /// Echelonizes elements of `A_n`.
    pub fn span(n: usize, degree: usize, elements: &[Poly]) -> Result<Self> {
        let probe = GradedSubspace::new(n, degree)?;
        let vs = elements.iter().map(|p| probe.to_sparse(p)).collect::<Result<Vec<_>>>()?;
        GradedSubspace::from_vectors(n, degree, vs)
    }
}

fn cmp_sparse(a: &SparseVec, b: &SparseVec) -> std::cmp::Ordering {
    let ka = a.iter().map(|e| e.0);
    let kb = b.iter().map(|e| e.0);
    ka.cmp(kb).then_with(|| {
        a.iter()
            .map(|e| &e.1)
            .cmp(b.iter().map(|e| &e.1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        parse_expr(s, 2).unwrap()
    }

    fn span_of(items: &[&str], d: usize) -> GradedSubspace {
        let mut s = GradedSubspace::new(2, d).unwrap();
        for i in items {
            s.insert(&p(i)).unwrap();
        }
        s
    }

    #[test]
    fn insert_examples() {
        let mut s = GradedSubspace::new(2, 2).unwrap();
        assert!(s.insert(&p("x1*x2 - x2*x1")).unwrap());
        assert_eq!(s.dim(), 1);
        assert!(!s.insert(&p("x1*x2 - x2*x1")).unwrap());
        assert_eq!(s.dim(), 1);
        let mut e = GradedSubspace::new(2, 2).unwrap();
        assert!(!e.insert(&Poly::zero(2)).unwrap());
        assert_eq!(e.dim(), 0);
    }

    #[test]
    fn contains_examples() {
        let s = span_of(&["[x1,x2]"], 2);
        assert!(s.contains(&p("2*[x1,x2]")).unwrap());
        assert!(!s.contains(&p("x1*x2")).unwrap());
        let t = span_of(&["x1*x2", "x2*x2 + x1*x1"], 2);
        assert!(t.contains(&p("x1*x2 + x2*x2 + x1*x1")).unwrap());
        assert!(t.contains(&Poly::zero(2)).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let s = span_of(&["x1*x2", "x2*x1"], 2);
        assert!(s.is_subspace(&s).unwrap());
        assert!(GradedSubspace::new(2, 2).unwrap().is_subspace(&s).unwrap());
        assert!(!span_of(&["x1*x2"], 2).is_subspace(&span_of(&["[x1,x2]"], 2)).unwrap());
        assert!(span_of(&["[x1,x2]"], 2).is_subspace(&s).unwrap());
    }

    #[test]
    fn degree_and_component_errors() {
        let mut s = GradedSubspace::new(2, 2).unwrap();
        assert_eq!(s.insert(&p("x1")), Err(Error::DegreeMismatch { expected: 2, found: 1 }));
        assert!(s.contains(&p("x1*x1*x2")).is_err());
        let t = GradedSubspace::new(2, 3).unwrap();
        assert!(s.is_subspace(&t).is_err());
        assert!(GradedSubspace::new(3, 41).is_err());
    }

    #[test]
    fn rows_are_reduced() {
        let s = span_of(&["x1*x2 + x2*x1", "x2*x1 + x2*x2", "x1*x1 + x2*x2"], 2);
        let pivots: HashSet<u64> = s.rows.keys().copied().collect();
        for (p, r) in &s.rows {
            assert_eq!(r.last().unwrap(), &(*p, Rat::one()));
            assert!(r.iter().all(|(c, _)| c == p || !pivots.contains(c)));
        }
    }

    #[test]
    fn batch_build_matches_sequential() {
        let items = ["[x1,x2]*x1", "x1*[x1,x2]", "x2*x2*x1 + x1*x1*x1", "[x2,x1,x1]", "x2*x1*x2"];
        let seq = span_of(&items, 3);
        let batch = GradedSubspace::span(2, 3, &items.iter().map(|s| p(s)).collect::<Vec<_>>()).unwrap();
        assert_eq!(seq, batch);
    }

    fn arb_vec(n: usize, d: usize) -> impl Strategy<Value = SparseVec> {
        let size = (n as u64).pow(d as u32);
        proptest::collection::vec((0..size, -3i64..=3), 0..5)
            .prop_map(|v| normalize(v.into_iter().map(|(c, a)| (c, Rat::from_int(a))).collect()))
    }

    proptest! {
        #[test]
        fn dimension_laws(
            base in proptest::collection::vec(arb_vec(2, 3), 0..6),
            other in proptest::collection::vec(arb_vec(2, 3), 0..6),
            v in arb_vec(2, 3),
        ) {
            let s = GradedSubspace::from_vectors(2, 3, base.clone()).unwrap();
            let mut grown = s.clone();
            let grew = grown.insert_sparse(&v);
            prop_assert!(grown.dim() == s.dim() || grown.dim() == s.dim() + 1);
            prop_assert_eq!(s.contains_sparse(&v), !grew);
            prop_assert_eq!(s.contains_sparse(&v), grown.dim() == s.dim());

            let t = GradedSubspace::from_vectors(2, 3, other).unwrap();
            let both = s.is_subspace(&t).unwrap() && t.is_subspace(&s).unwrap();
            prop_assert_eq!(both, s.dim() == t.dim() && s.is_subspace(&t).unwrap());
            prop_assert_eq!(both, s == t);

            let mut seq = GradedSubspace::new(2, 3).unwrap();
            for b in base.iter().rev() {
                seq.insert_sparse(b);
            }
            prop_assert_eq!(seq, s);
        }
    }
}
