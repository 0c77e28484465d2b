//! Graded components of `L_k`, `M_k`, products of the `M`-ideals, and the
//! generating sets `S_i` of `M_i(A_2)`.

mod pure;
mod spans;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{nested, Poly, Word};
use crate::linalg::{GradedSubspace, SparseVec};

pub use pure::{decompose_pure, free_permute, product_poly, rbracket, FreePermutation, PureCombination, PureCommutator, PureProduct};
pub use spans::{
    bracket_vectors, clear_cache, l_span, m_span, parse_ideal, product_span, IdealKind, IdealSpec,
};

/// One `(spec, degree, dim)` entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub spec: String,
    pub degree: usize,
    pub dim: usize,
}

/// Dimensions of graded components, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub rows: Vec<DimRow>,
}

impl DimTable {
    pub fn push(&mut self, spec: impl Into<String>, degree: usize, dim: usize) {
        self.rows.push(DimRow { spec: spec.into(), degree, dim });
    }

    pub fn get(&self, spec: &str, degree: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.spec == spec && r.degree == degree).map(|r| r.dim)
    }

    /// Dimensions of `spec` in degree order.
    pub fn column(&self, spec: &str) -> Vec<usize> {
        let mut rows: Vec<&DimRow> = self.rows.iter().filter(|r| r.spec == spec).collect();
        rows.sort_by_key(|r| r.degree);
        rows.into_iter().map(|r| r.dim).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("spec,degree,dim\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.spec, r.degree, r.dim);
        }
        s
    }
}

/// Dimensions of `ideal` in degrees `0..=d_max`.
pub fn dim_table(ideal: &IdealSpec, d_max: usize) -> Result<DimTable> {
    let mut t = DimTable::default();
    let name = ideal.to_string();
    for (d, c) in ideal.components(d_max)?.iter().enumerate() {
        t.push(name.clone(), d, c.dim());
    }
    Ok(t)
}

/// `dim N_k = dim M_k - dim M_{k+1}` in degrees `0..=d_max`.
pub fn n_dims(n: usize, k: usize, d_max: usize) -> Result<DimTable> {
    let mut t = DimTable::default();
    for d in 0..=d_max {
        let dim = m_span(n, k, d)?.dim() - m_span(n, k + 1, d)?.dim();
        t.push(format!("N{}", k), d, dim);
    }
    Ok(t)
}

/// `dim B_k = dim L_k - dim L_{k+1}` in degrees `0..=d_max`.
pub fn b_dims(n: usize, k: usize, d_max: usize) -> Result<DimTable> {
    let mut t = DimTable::default();
    for d in 0..=d_max {
        let dim = l_span(n, k, d)?.dim() - l_span(n, k + 1, d)?.dim();
        t.push(format!("B{}", k), d, dim);
    }
    Ok(t)
}

/// A right-normed commutator `[m_1, ..., m_r]` of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningElement {
    pub slots: Vec<Word>,
    pub value: Poly,
}

/// Every `[m_1, ..., m_r]` with nonempty monomial slots of total degree `d`.
/// These span the degree-`d` component of `L_r`.
pub fn l_spanning_elements(n: usize, r: usize, d: usize) -> Result<Vec<SpanningElement>> {
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    if r == 0 {
        return Err(Error::InvalidArgument("series index starts at 1".into()));
    }
    let mut out = Vec::new();
    for parts in compositions(d, r) {
        let mut slots: Vec<Vec<Word>> = vec![vec![]];
        for &p in &parts {
            let words: Vec<Word> = Word::all(n, p).collect();
            slots = slots
                .into_iter()
                .flat_map(|s| {
                    words.iter().map(move |w| {
                        let mut t = s.clone();
                        t.push(w.clone());
                        t
                    })
                })
                .collect();
        }
        for s in slots {
            let args = s
                .iter()
                .map(|w| Poly::monomial(n, w.clone(), crate::Rat::one()))
                .collect::<Result<Vec<_>>>()?;
            out.push(SpanningElement { value: nested(&args)?, slots: s });
        }
    }
    Ok(out)
}

/// Ordered compositions of `total` into `parts` positive integers.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if total < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Shapes `(i_1, ..., i_q)`, `i_p >= 2`, with `sum i_p - q + 1 = i`.
pub fn generator_shapes(i: usize) -> Vec<Vec<usize>> {
    if i < 2 {
        return vec![];
    }
    (1..i)
        .flat_map(|q| compositions(i - 1, q))
        .map(|c| c.into_iter().map(|p| p + 1).collect())
        .collect()
}

/// Products of pure commutators in `A_2` whose shapes satisfy
/// `sum i_p - q + 1 = i`, with every choice of generators, up to degree
/// `d_max`. Commutators ending in a repeated letter vanish and are skipped.
pub fn generators_s(i: usize, d_max: usize) -> Result<Vec<PureProduct>> {
    if i < 2 {
        return Err(Error::InvalidArgument(format!("generator sets start at i = 2, got {}", i)));
    }
    let mut out = Vec::new();
    for shape in generator_shapes(i) {
        if shape.iter().sum::<usize>() > d_max {
            continue;
        }
        let mut products: Vec<PureProduct> = vec![vec![]];
        for &len in &shape {
            let comms: Vec<PureCommutator> = Word::all(2, len)
                .map(|w| w.letters().to_vec())
                .filter(|c| c[len - 1] != c[len - 2])
                .collect();
            products = products
                .into_iter()
                .flat_map(|p| {
                    comms.iter().map(move |c| {
                        let mut t = p.clone();
                        t.push(c.clone());
                        t
                    })
                })
                .collect();
        }
        out.extend(products);
    }
    Ok(out)
}

/// Per-degree comparison of the ideal generated by `generators_s(i, d_max)`
/// with `M_i(A_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationCheck {
    pub degree: usize,
    pub generated_dim: usize,
    pub m_dim: usize,
    pub equal: bool,
}

pub fn check_generation(i: usize, d_max: usize) -> Result<Vec<GenerationCheck>> {
    let gens = generators_s(i, d_max)?
        .iter()
        .map(|p| product_poly(2, p))
        .collect::<Result<Vec<_>>>()?;
    let ideal = IdealSpec::span_set(2, gens, true)?;
    ideal
        .components(d_max)?
        .iter()
        .enumerate()
        .map(|(d, g)| {
            let m = m_span(2, i, d)?;
            Ok(GenerationCheck { degree: d, generated_dim: g.dim(), m_dim: m.dim(), equal: **g == *m })
        })
        .collect()
}

/// Degree-`d` component of `span [a, b]`, over all splits of the degree.
pub fn bracket_span(a: &IdealSpec, b: &IdealSpec, d: usize) -> Result<GradedSubspace> {
    if a.n != b.n {
        return Err(Error::GeneratorMismatch(a.n, b.n));
    }
    let mut vectors: Vec<SparseVec> = Vec::new();
    for e in 0..=d {
        let (x, y) = (a.component(e)?, b.component(d - e)?);
        if !x.is_empty() && !y.is_empty() {
            vectors.extend(bracket_vectors(&x, &y));
        }
    }
    GradedSubspace::from_vectors(a.n, d, vectors)
}

/// Whether `[a, b]` lies in `target` at degree `d`.
pub fn bracket_contained(a: &IdealSpec, b: &IdealSpec, target: &IdealSpec, d: usize) -> Result<bool> {
    let t = target.component(d)?;
    bracket_span(a, b, d)?.is_subspace(&t)
}

/// Dimensions of `[M_k, L_1]` and `L_{k+1}` at degree `d`.
pub fn bracket_conjecture_dims(n: usize, k: usize, d: usize) -> Result<(usize, usize)> {
    let lhs = bracket_span(&IdealSpec::m(n, k), &IdealSpec::l(n, 1), d)?;
    Ok((lhs.dim(), l_span(n, k + 1, d)?.dim()))
}
