//! Quotients `R_{i,j}(A_n) = A_n / (M_i M_j)` and their lower central series.
//!
//! The image of `L_r` (or `M_r`) in `R_{i,j}` at degree `d` has dimension
//! `dim (S + I) - dim I`, with `I` the degree-`d` component of `M_i M_j`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{Poly, Word};
use crate::linalg::GradedSubspace;
use crate::rational::Rat;
use crate::series::{l_span, m_span, product_span};

/// `R_{i,j}(A_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSpec {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl QuotientSpec {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoGenerators);
        }
        if i < 2 || j < 2 {
            return Err(Error::InvalidArgument(format!("quotient indices must be >= 2, got ({}, {})", i, j)));
        }
        Ok(QuotientSpec { n, i, j })
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{},{}(A{})", self.i, self.j, self.n)
    }
}

/// A series of `R_{i,j}`: `L_r`, `M_r`, or the successive quotients
/// `B_r = L_r / L_{r+1}` and `N_r = M_r / M_{r+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientSeries {
    L(usize),
    M(usize),
    B(usize),
    N(usize),
}

impl QuotientSeries {
    pub fn parse(series: &str, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("series index starts at 1".into()));
        }
        match series {
            "L" => Ok(QuotientSeries::L(r)),
            "M" => Ok(QuotientSeries::M(r)),
            "B" => Ok(QuotientSeries::B(r)),
            "N" => Ok(QuotientSeries::N(r)),
            other => Err(Error::InvalidArgument(format!("unknown series `{}`", other))),
        }
    }
}

impl fmt::Display for QuotientSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSeries::L(r) => write!(f, "L{}", r),
            QuotientSeries::M(r) => write!(f, "M{}", r),
            QuotientSeries::B(r) => write!(f, "B{}", r),
            QuotientSeries::N(r) => write!(f, "N{}", r),
        }
    }
}

fn image_dim(s: &GradedSubspace, ideal: &GradedSubspace) -> Result<usize> {
    if ideal.is_empty() {
        return Ok(s.dim());
    }
    let mut sum = ideal.clone();
    sum.merge(s)?;
    Ok(sum.dim() - ideal.dim())
}

/// Degree-`d` dimension of `series` inside `spec`.
pub fn quotient_dim(spec: &QuotientSpec, series: QuotientSeries, d: usize) -> Result<usize> {
    let ideal = product_span(spec.n, &[spec.i, spec.j], d)?;
    let l = |r| -> Result<usize> {
        let s = l_span(spec.n, r, d)?;
        image_dim(&s, &ideal)
    };
    let m = |r| -> Result<usize> {
        let s = m_span(spec.n, r, d)?;
        image_dim(&s, &ideal)
    };
    match series {
        QuotientSeries::L(r) => l(r),
        QuotientSeries::M(r) => m(r),
        QuotientSeries::B(r) => Ok(l(r)? - l(r + 1)?),
        QuotientSeries::N(r) => Ok(m(r)? - m(r + 1)?),
    }
}

/// Dimensions in degrees `0..=d_max`.
pub fn quotient_dims(spec: &QuotientSpec, series: QuotientSeries, d_max: usize) -> Result<Vec<usize>> {
    (0..=d_max).into_par_iter().map(|d| quotient_dim(spec, series, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoRow {
    pub i: usize,
    pub degree: usize,
    pub b_dim: usize,
    pub n_dim: usize,
    /// `i >= t`, where the isomorphism is asserted.
    pub in_range: bool,
}

impl IsoRow {
    pub fn equal(&self) -> bool {
        self.b_dim == self.n_dim
    }
}

/// `t = 2 ceil((j + 1) / 2)`.
pub fn iso_threshold(j: usize) -> usize {
    2 * (j + 2).div_euclid(2)
}

/// `dim B_i` against `dim N_i` in `R_{j,2}(A_2)` for `i` in `i_range` and
/// degrees `0..=d_max`.
pub fn iso_check(j: usize, i_range: std::ops::RangeInclusive<usize>, d_max: usize) -> Result<Vec<IsoRow>> {
    let spec = QuotientSpec::new(2, j, 2)?;
    let t = iso_threshold(j);
    let cells: Vec<(usize, usize)> = i_range.flat_map(|i| (0..=d_max).map(move |d| (i, d))).collect();
    cells
        .into_par_iter()
        .map(|(i, d)| {
            Ok(IsoRow {
                i,
                degree: d,
                b_dim: quotient_dim(&spec, QuotientSeries::B(i), d)?,
                n_dim: quotient_dim(&spec, QuotientSeries::N(i), d)?,
                in_range: i >= t,
            })
        })
        .collect()
}

/// The `GL_2` module of a partition with at most two rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoRowPartitionModule {
    pub a: usize,
    pub b: usize,
}

impl TwoRowPartitionModule {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a < b {
            return Err(Error::InvalidArgument(format!("partition ({}, {}) is not weakly decreasing", a, b)));
        }
        Ok(TwoRowPartitionModule { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a - self.b + 1
    }

    /// Total degree of the module.
    pub fn degree(&self) -> usize {
        self.a + self.b
    }
}

fn commutative_monomials(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    (0..=d).map(|a| commutative_monomials(n - 1, d - a)).sum()
}

/// Index sequences `(i_1, ..., i_r)` over `1..=n` with `i_1 > i_2` and
/// `i_2 <= i_3 <= ... <= i_r`.
pub fn sorted_commutator_indices(n: usize, r: usize) -> Vec<Vec<u8>> {
    if r < 2 {
        return vec![];
    }
    Word::all(n, r)
        .map(|w| w.letters().to_vec())
        .filter(|s| s[0] > s[1] && s[1..].windows(2).all(|p| p[0] <= p[1]))
        .collect()
}

/// Number of basis elements `x_1^{a_1} ... x_n^{a_n} [x_{i_1}, ..., x_{i_r}]`
/// of degree `d` with sorted indices. For `r = 1` the basis is taken to be
/// the commutative monomials.
pub fn structure_basis_r22(n: usize, r: usize, d: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    if r == 0 {
        return Err(Error::InvalidArgument("series index starts at 1".into()));
    }
    if r == 1 {
        return Ok(commutative_monomials(n, d));
    }
    if d < r {
        return Ok(0);
    }
    Ok(commutative_monomials(n, d - r) * sorted_commutator_indices(n, r).len())
}

/// Graded dimensions, degrees `0..=d_max`, of
/// `(sum_i Y(i)) ⊗ (Y(r-1,1) ⊕ Y(r-3,1) ⊗ Y(1,1))`, each `Y(a,b)` placed
/// in degree `a + b` and tensor products graded by total degree.
pub fn r23_structure_dims(r: usize, d_max: usize) -> Result<Vec<usize>> {
    if r < 5 {
        return Err(Error::InvalidArgument(format!("the formula covers r > 4, got {}", r)));
    }
    let mut right = vec![0usize; d_max + 1];
    let add = |v: &mut Vec<usize>, deg: usize, dim: usize| {
        if deg < v.len() {
            v[deg] += dim;
        }
    };
    let y1 = TwoRowPartitionModule::new(r - 1, 1)?;
    add(&mut right, y1.degree(), y1.dim());
    let (y2, y3) = (TwoRowPartitionModule::new(r - 3, 1)?, TwoRowPartitionModule::new(1, 1)?);
    add(&mut right, y2.degree() + y3.degree(), y2.dim() * y3.dim());
    let sym = |i: usize| TwoRowPartitionModule { a: i, b: 0 }.dim();
    Ok((0..=d_max).map(|d| (0..=d).map(|e| sym(d - e) * right[e]).sum()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetabelianReport {
    pub n: usize,
    pub max_degree: usize,
    pub products_checked: usize,
    pub products_in: usize,
    pub swaps_checked: usize,
    pub swaps_in: usize,
}

impl MetabelianReport {
    pub fn holds(&self) -> bool {
        self.products_in == self.products_checked && self.swaps_in == self.swaps_checked
    }
}

fn nonempty_words(n: usize, max: usize) -> Vec<(Word, Poly)> {
    (1..=max)
        .flat_map(|d| Word::all(n, d))
        .map(|w| {
            let p = Poly::monomial(n, w.clone(), Rat::one()).expect("letters in range");
            (w, p)
        })
        .collect()
}

/// Checks, for monomials `a, b, c, d` with total degree at most `d_max`,
/// that `[a,b][c,d]` and `[a,b,l] - [b,a,l]` with `l = [c,d]` lie in
/// `M_2 M_2`.
pub fn metabelian_check(n: usize, d_max: usize) -> Result<MetabelianReport> {
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    let words = nonempty_words(n, d_max.saturating_sub(3));
    let mut quads = Vec::new();
    for (wa, a) in &words {
        for (wb, b) in &words {
            for (wc, c) in &words {
                for (wd, d) in &words {
                    if wa.degree() + wb.degree() + wc.degree() + wd.degree() <= d_max {
                        quads.push((a, b, c, d));
                    }
                }
            }
        }
    }
    let results: Vec<(bool, bool)> = quads
        .par_iter()
        .map(|(a, b, c, d)| -> Result<(bool, bool)> {
            let ab = a.bracket(b)?;
            let cd = c.bracket(d)?;
            let product = ab.mul(&cd)?;
            let swap = a.bracket(&b.bracket(&cd)?)?.sub(&b.bracket(&a.bracket(&cd)?)?)?;
            let member = |p: &Poly| -> Result<bool> {
                match p.degree() {
                    None => Ok(true),
                    Some(e) => product_span(n, &[2, 2], e)?.contains(p),
                }
            };
            Ok((member(&product)?, member(&swap)?))
        })
        .collect::<Result<_>>()?;
    let count = |f: fn(&(bool, bool)) -> bool| results.iter().filter(|r| f(r)).count();
    Ok(MetabelianReport {
        n,
        max_degree: d_max,
        products_checked: results.len(),
        products_in: count(|r| r.0),
        swaps_checked: results.len(),
        swaps_in: count(|r| r.1),
    })
}
