use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::Poly;
use crate::linalg::{bracket_monomial, component_size, lmul, rmul, vbracket, vmul, GradedSubspace, SparseVec};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Key {
    L(usize, usize, usize),
    M(usize, usize, usize),
    Product(usize, Vec<usize>, usize),
}

type Table = RwLock<HashMap<Key, Arc<GradedSubspace>>>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Looks up `key`, building it outside the lock on a miss. Builders are
/// pure, so a racing duplicate build is discarded in favour of the first.
fn cached(key: Key, build: impl FnOnce() -> Result<GradedSubspace>) -> Result<Arc<GradedSubspace>> {
    if let Some(s) = table().read().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(build()?);
    Ok(table().write().unwrap().entry(key).or_insert(s).clone())
}

/// Drops every cached component.
pub fn clear_cache() {
    table().write().unwrap().clear();
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::NoGenerators)
    } else {
        Ok(())
    }
}

/// Degree-`d` component of `L_k(A_n)`, where `L_1 = A` and `L_k = [A, L_{k-1}]`.
///
/// Spanned by `[m, s]` for monomials `m` of degree `1..=d-k+1` and basis rows
/// `s` of `L_{k-1}` in the complementary degree. Empty when `d < k`.
pub fn l_span(n: usize, k: usize, d: usize) -> Result<Arc<GradedSubspace>> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::InvalidArgument("series index starts at 1".into()));
    }
    cached(Key::L(n, k, d), || {
        if k == 1 {
            return GradedSubspace::full(n, d);
        }
        if d < k {
            return GradedSubspace::new(n, d);
        }
        component_size(n, d)?;
        let mut vectors: Vec<SparseVec> = Vec::new();
        for e in 1..=d + 1 - k {
            let inner = l_span(n, k - 1, d - e)?;
            let rows: Vec<&SparseVec> = inner.rows().collect();
            let count = (n as u64).pow(e as u32);
            let part: Vec<SparseVec> = (0..count)
                .into_par_iter()
                .flat_map_iter(|m| rows.iter().map(move |s| bracket_monomial(n, m, e, s, d - e)))
                .collect();
            vectors.extend(part);
        }
        GradedSubspace::from_vectors(n, d, vectors)
    })
}

/// Degree-`d` component of the two-sided ideal `M_k = A L_k A`.
///
/// Built as `x_i M_k(d-1) + M_k(d-1) x_i + L_k(d)`, which spans the same
/// space as all `u s v` with monomials `u`, `v` and `s` in `L_k`.
pub fn m_span(n: usize, k: usize, d: usize) -> Result<Arc<GradedSubspace>> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::InvalidArgument("series index starts at 1".into()));
    }
    cached(Key::M(n, k, d), || {
        if k == 1 {
            return GradedSubspace::full(n, d);
        }
        if d < k {
            return GradedSubspace::new(n, d);
        }
        let lower = m_span(n, k, d - 1)?;
        let mut vectors = two_sided_step(n, d - 1, &lower);
        vectors.extend(l_span(n, k, d)?.rows().cloned());
        GradedSubspace::from_vectors(n, d, vectors)
    })
}

/// `x_i * row` and `row * x_i` for every row of a degree-`d` subspace.
fn two_sided_step(n: usize, d: usize, s: &GradedSubspace) -> Vec<SparseVec> {
    let rows: Vec<&SparseVec> = s.rows().collect();
    (0..n as u64)
        .into_par_iter()
        .flat_map_iter(|x| {
            rows.iter()
                .flat_map(move |r| [lmul(n, x, r, d), rmul(n, r, x, 1)])
        })
        .collect()
}

fn check_tuple(tuple: &[usize]) -> Result<()> {
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty tuple".into()));
    }
    if let Some(bad) = tuple.iter().find(|&&i| i < 2) {
        return Err(Error::InvalidArgument(format!("tuple entries must be >= 2, got {}", bad)));
    }
    Ok(())
}

/// Degree-`d` component of `M_{i_1} M_{i_2} ... M_{i_k}`.
///
/// Uses `M_{i_1} P = A L_{i_1} P` for the two-sided ideal `P` of the remaining
/// factors, so the component is `x_i * (previous degree) + sum_e L_{i_1}(e) P(d-e)`.
pub fn product_span(n: usize, tuple: &[usize], d: usize) -> Result<Arc<GradedSubspace>> {
    check_n(n)?;
    check_tuple(tuple)?;
    if tuple.len() == 1 {
        return m_span(n, tuple[0], d);
    }
    cached(Key::Product(n, tuple.to_vec(), d), || {
        let total: usize = tuple.iter().sum();
        if d < total {
            return GradedSubspace::new(n, d);
        }
        let (first, rest) = (tuple[0], &tuple[1..]);
        let rest_min: usize = rest.iter().sum();
        let mut vectors: Vec<SparseVec> = Vec::new();
        if d > total {
            let lower = product_span(n, tuple, d - 1)?;
            let rows: Vec<&SparseVec> = lower.rows().collect();
            vectors.extend(
                (0..n as u64)
                    .into_par_iter()
                    .flat_map_iter(|x| rows.iter().map(move |r| lmul(n, x, r, d - 1)))
                    .collect::<Vec<_>>(),
            );
        }
        for e in first..=d - rest_min {
            let left = l_span(n, first, e)?;
            let right = product_span(n, rest, d - e)?;
            let rrows: Vec<&SparseVec> = right.rows().collect();
            let lrows: Vec<&SparseVec> = left.rows().collect();
            vectors.extend(
                lrows
                    .par_iter()
                    .flat_map_iter(|a| rrows.iter().map(move |b| vmul(n, a, b, d - e)))
                    .collect::<Vec<_>>(),
            );
        }
        GradedSubspace::from_vectors(n, d, vectors)
    })
}

/// Span of `[u, v]` with `u` in `a` (degree `da`) and `v` in `b` (degree `db`).
pub fn bracket_vectors(a: &GradedSubspace, b: &GradedSubspace) -> Vec<SparseVec> {
    let (n, da, db) = (a.n(), a.degree(), b.degree());
    let brows: Vec<&SparseVec> = b.rows().collect();
    a.rows()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|u| brows.iter().map(move |v| vbracket(n, u, da, v, db)))
        .collect()
}

/// Which graded piece an ideal or subspace family denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealKind {
    L(usize),
    M(usize),
    ProductM(Vec<usize>),
    /// Homogeneous generators; with `two_sided` the ideal they generate,
    /// otherwise their plain linear span.
    SpanSet { generators: Vec<Poly>, two_sided: bool },
}

/// A graded subspace family of `A_n`, one component per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub n: usize,
    pub kind: IdealKind,
}

impl IdealSpec {
    pub fn l(n: usize, k: usize) -> Self {
        IdealSpec { n, kind: IdealKind::L(k) }
    }

    pub fn m(n: usize, k: usize) -> Self {
        IdealSpec { n, kind: IdealKind::M(k) }
    }

    pub fn product(n: usize, tuple: Vec<usize>) -> Self {
        IdealSpec { n, kind: IdealKind::ProductM(tuple) }
    }

    pub fn span_set(n: usize, generators: Vec<Poly>, two_sided: bool) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::GeneratorMismatch(n, g.n()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(IdealSpec { n, kind: IdealKind::SpanSet { generators, two_sided } })
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        match &self.kind {
            IdealKind::L(k) | IdealKind::M(k) if *k == 0 => {
                Err(Error::InvalidArgument("series index starts at 1".into()))
            }
            IdealKind::ProductM(t) => check_tuple(t),
            _ => Ok(()),
        }
    }

    /// The degree-`d` component.
    pub fn component(&self, d: usize) -> Result<Arc<GradedSubspace>> {
        self.validate()?;
        match &self.kind {
            IdealKind::L(k) => l_span(self.n, *k, d),
            IdealKind::M(k) => m_span(self.n, *k, d),
            IdealKind::ProductM(t) => product_span(self.n, t, d),
            IdealKind::SpanSet { two_sided: false, .. } => {
                Ok(Arc::new(GradedSubspace::from_vectors(self.n, d, self.generators_at(d)?)?))
            }
            IdealKind::SpanSet { two_sided: true, .. } => Ok(self.components(d)?.pop().expect("nonempty")),
        }
    }

    /// Components in degrees `0..=d_max`.
    pub fn components(&self, d_max: usize) -> Result<Vec<Arc<GradedSubspace>>> {
        self.validate()?;
        match &self.kind {
            IdealKind::SpanSet { two_sided: true, .. } => {
                let mut out: Vec<Arc<GradedSubspace>> = Vec::with_capacity(d_max + 1);
                for e in 0..=d_max {
                    let mut vectors = match out.last() {
                        Some(prev) => two_sided_step(self.n, e - 1, prev),
                        None => Vec::new(),
                    };
                    vectors.extend(self.generators_at(e)?);
                    out.push(Arc::new(GradedSubspace::from_vectors(self.n, e, vectors)?));
                }
                Ok(out)
            }
            _ => (0..=d_max).map(|d| self.component(d)).collect(),
        }
    }

    fn generators_at(&self, e: usize) -> Result<Vec<SparseVec>> {
        let IdealKind::SpanSet { generators, .. } = &self.kind else {
            return Ok(Vec::new());
        };
        let probe = GradedSubspace::new(self.n, e)?;
        generators.iter().filter(|g| g.degree() == Some(e)).map(|g| probe.to_sparse(g)).collect()
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            IdealKind::L(k) => write!(f, "L{}", k),
            IdealKind::M(k) => write!(f, "M{}", k),
            IdealKind::ProductM(t) => {
                let parts: Vec<String> = t.iter().map(|i| format!("M{}", i)).collect();
                write!(f, "{}", parts.join("*"))
            }
            IdealKind::SpanSet { generators, two_sided } => {
                write!(f, "{}<{} generators>", if *two_sided { "ideal" } else { "span" }, generators.len())
            }
        }
    }
}

/// Parses `L3`, `M3`, or a product such as `M2*M4`, against `n` generators.
pub fn parse_ideal(s: &str, n: usize) -> Result<IdealSpec> {
    let bad = || Error::InvalidArgument(format!("unrecognised ideal `{}`", s));
    let index = |t: &str| -> Result<usize> {
        t.trim().parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(bad)
    };
    let s = s.trim();
    let spec = if s.contains('*') {
        let tuple = s
            .split('*')
            .map(|p| p.trim().strip_prefix('M').ok_or_else(bad).and_then(index))
            .collect::<Result<Vec<_>>>()?;
        IdealSpec::product(n, tuple)
    } else if let Some(k) = s.strip_prefix('L') {
        IdealSpec::l(n, index(k)?)
    } else if let Some(k) = s.strip_prefix('M') {
        IdealSpec::m(n, index(k)?)
    } else {
        return Err(bad());
    };
    spec.validate()?;
    Ok(spec)
}

impl FromStr for IdealKind {
    type Err = Error;

    /// Parses the kind only; pair with a generator count via [`IdealSpec`].
    fn from_str(s: &str) -> Result<Self> {
        parse_ideal(s, 1).map(|spec| spec.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_dimensions() {
        assert_eq!(l_span(2, 2, 2).unwrap().dim(), 1);
        assert_eq!(l_span(2, 1, 3).unwrap().dim(), 8);
        assert_eq!(m_span(2, 2, 2).unwrap().dim(), 1);
        assert_eq!(m_span(2, 5, 4).unwrap().dim(), 0);
        assert_eq!(product_span(2, &[2, 2], 3).unwrap().dim(), 0);
    }

    #[test]
    fn single_factor_product_is_m() {
        for d in 0..6 {
            assert_eq!(product_span(2, &[3], d).unwrap(), m_span(2, 3, d).unwrap());
        }
    }

    #[test]
    fn ideal_parsing() {
        assert_eq!(parse_ideal("M5", 3).unwrap(), IdealSpec::m(3, 5));
        assert_eq!(parse_ideal("L2", 2).unwrap(), IdealSpec::l(2, 2));
        assert_eq!(parse_ideal("M2*M4", 3).unwrap(), IdealSpec::product(3, vec![2, 4]));
        assert_eq!(parse_ideal("M2*M4", 3).unwrap().to_string(), "M2*M4");
        assert!(parse_ideal("M1*M2", 3).is_err());
        assert!(parse_ideal("Q2", 3).is_err());
        assert!(parse_ideal("M0", 3).is_err());
        assert_eq!("L4".parse::<IdealKind>().unwrap(), IdealKind::L(4));
    }

    #[test]
    fn span_set_two_sided_closure() {
        let c = Poly::generator(2, 1).unwrap().bracket(&Poly::generator(2, 2).unwrap()).unwrap();
        let ideal = IdealSpec::span_set(2, vec![c.clone()], true).unwrap();
        for d in 0..6 {
            assert_eq!(*ideal.component(d).unwrap(), *m_span(2, 2, d).unwrap(), "degree {}", d);
        }
        let lin = IdealSpec::span_set(2, vec![c], false).unwrap();
        assert_eq!(lin.component(2).unwrap().dim(), 1);
        assert_eq!(lin.component(3).unwrap().dim(), 0);
        let inhomogeneous = Poly::one(2).add(&Poly::generator(2, 1).unwrap()).unwrap();
        assert_eq!(IdealSpec::span_set(2, vec![inhomogeneous], true), Err(Error::NotHomogeneous));
    }
}
