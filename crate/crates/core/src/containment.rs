//! The containment index `I(A_n, (i_1, ..., i_k))`: the largest `s` with
//! `M_{i_1} ... M_{i_k} ⊆ M_s`, computed degreewise up to a cutoff, with
//! certificates for the failing direction.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{nested, Poly, Word};
use crate::linalg::component_size;
use crate::lyndon::{is_lyndon, standard_bracketing, LyndonWord};
use crate::pbw::pbw_degree;
use crate::rational::Rat;
use crate::series::{m_span, product_span};

fn check_tuple(tuple: &[usize]) -> Result<()> {
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty tuple".into()));
    }
    if let Some(bad) = tuple.iter().find(|&&i| i < 2) {
        return Err(Error::InvalidArgument(format!("tuple entries must be >= 2, got {}", bad)));
    }
    Ok(())
}

/// `sum i_p - k + 1`, the bound every product respects.
pub fn upper_bound(tuple: &[usize]) -> usize {
    tuple.iter().sum::<usize>() + 1 - tuple.len()
}

/// Lower and upper bounds on the index from the classical pairwise
/// containments, the PBW bound, and the known exact values.
///
/// Combining two factors costs 2 when both indices are even and 1 otherwise,
/// and each cheap step uses up one odd index, so `k - 1` merges starting
/// from `p` odd entries reach `sum - 2(k - 1) + min(p, k - 1)`.
pub fn bound_report(n: usize, tuple: &[usize]) -> Result<(usize, usize)> {
    check_tuple(tuple)?;
    let k = tuple.len();
    let sum: usize = tuple.iter().sum();
    let p = tuple.iter().filter(|i| *i % 2 == 1).count();
    let upper = upper_bound(tuple);
    let mut lower = sum - 2 * (k - 1) + p.min(k - 1);
    if n == 2 || (n == 3 && tuple == [2, 2]) {
        lower = upper;
    }
    Ok((lower, upper))
}

/// A Lyndon word of length `len` drawn from consecutive generators starting
/// at `start` (wrapping at `n`); falls back to `1 2 ... 2`.
fn witness_word(n: usize, start: usize, len: usize) -> Word {
    if len == 1 {
        return Word::letter((start % n + 1) as u8);
    }
    let letters: Vec<u8> = (0..len).map(|t| ((start + t) % n + 1) as u8).collect();
    let w = Word::new(&letters);
    if let Some(r) = (0..len).map(|r| w.rotate(r)).find(|r| is_lyndon(r.letters())) {
        return r;
    }
    let mut fallback = vec![2u8; len];
    fallback[0] = 1;
    Word::new(&fallback)
}

/// `l_1 ... l_k`, a product of standard bracketings with `l_p` of length
/// `i_p`; its PBW degree is `k`, so it lies outside `M_{sum - k + 2}`.
pub fn pbw_witness(n: usize, tuple: &[usize]) -> Result<Poly> {
    if n < 2 {
        return Err(Error::TooFewGenerators { name: "pbw witness".into(), needed: 2, n });
    }
    check_tuple(tuple)?;
    let mut acc = Poly::one(n);
    let mut start = 0;
    for &len in tuple {
        let w = LyndonWord::new(witness_word(n, start, len))?;
        acc = acc.mul(&standard_bracketing(n, &w)?)?;
        start += len;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeContainment {
    pub degree: usize,
    /// Every `s` checked with the product's component inside `M_s`.
    pub contained_in: Vec<usize>,
}

/// An element of the product outside `M_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub expr: String,
    pub degree: usize,
    pub target: usize,
    #[serde(skip)]
    pub element: Poly,
}

/// Containment of `M_{i_1} ... M_{i_k}` in each `M_s`, degree by degree.
/// `index` holds up to `cutoff` only; the witness against `index + 1` is
/// definitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub n: usize,
    pub tuple: Vec<usize>,
    pub cutoff: usize,
    pub index: usize,
    pub upper: usize,
    pub lower: usize,
    pub witness: Option<Witness>,
    pub per_degree: Vec<DegreeContainment>,
}

impl ContainmentReport {
    pub fn bounds_hold(&self) -> bool {
        self.lower <= self.index && self.index <= self.upper
    }
}

pub fn default_cutoff(tuple: &[usize]) -> usize {
    tuple.iter().sum::<usize>() + 2
}

/// Computes the index observed through degree `cutoff` (default `sum + 2`).
pub fn containment_index(n: usize, tuple: &[usize], cutoff: Option<usize>) -> Result<ContainmentReport> {
    check_tuple(tuple)?;
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    let sum: usize = tuple.iter().sum();
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(tuple));
    if cutoff < sum + 1 {
        return Err(Error::InvalidArgument(format!(
            "cutoff {} is below {}, one past the lowest degree of the product",
            cutoff,
            sum + 1
        )));
    }
    component_size(n, cutoff)?;
    let (lower, upper) = bound_report(n, tuple)?;
    let per_degree: Vec<DegreeContainment> = (0..=cutoff)
        .into_par_iter()
        .map(|d| -> Result<DegreeContainment> {
            let p = product_span(n, tuple, d)?;
            let mut top = 1;
            while top <= upper {
                let m = m_span(n, top + 1, d)?;
                if !p.is_empty() && !p.is_subspace(&m)? {
                    break;
                }
                top += 1;
            }
            Ok(DegreeContainment { degree: d, contained_in: (1..=top).collect() })
        })
        .collect::<Result<_>>()?;
    let top = |r: &DegreeContainment| *r.contained_in.last().unwrap();
    let index = per_degree.iter().map(top).min().unwrap_or(upper + 1);
    let mut witness = None;
    if let Some(row) = per_degree.iter().find(|r| top(r) == index && index <= upper) {
        let target = index + 1;
        let pbw = pbw_witness(n, tuple).ok().filter(|w| w.degree() == Some(row.degree));
        let element = match pbw {
            Some(w) if !m_span(n, target, row.degree)?.contains(&w)? => w,
            _ => {
                let p = product_span(n, tuple, row.degree)?;
                let m = m_span(n, target, row.degree)?;
                p.not_in(&m)?.swap_remove(0)
            }
        };
        witness = Some(Witness { expr: element.to_string(), degree: row.degree, target, element });
    }
    Ok(ContainmentReport { n, tuple: tuple.to_vec(), cutoff, index, upper, lower, witness, per_degree })
}

/// A 2x2 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[Rat; 2]; 2]);

impl Mat2 {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2(m.map(|r| r.map(Rat::from_int)))
    }

    pub fn zero() -> Self {
        Self::from_ints([[0, 0], [0, 0]])
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn add_scaled(&self, o: &Mat2, c: &Rat) -> Mat2 {
        let e = |i: usize, j: usize| &self.0[i][j] + &(&o.0[i][j] * c);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn trace(&self) -> Rat {
        &self.0[0][0] + &self.0[1][1]
    }
}

/// Evaluates `p` under the homomorphism sending `x_i` to `images[i - 1]`.
pub fn evaluate_mat2(p: &Poly, images: &[Mat2]) -> Result<Mat2> {
    if images.len() < p.n() {
        return Err(Error::GeneratorMismatch(p.n(), images.len()));
    }
    let mut acc = Mat2::zero();
    for (w, c) in p.iter() {
        let m = w.letters().iter().fold(Mat2::identity(), |m, &l| m.mul(&images[l as usize - 1]));
        acc = acc.add_scaled(&m, c);
    }
    Ok(acc)
}

pub fn sl2_e() -> Mat2 {
    Mat2::from_ints([[0, 1], [0, 0]])
}

pub fn sl2_f() -> Mat2 {
    Mat2::from_ints([[0, 0], [-1, 0]])
}

pub fn sl2_h() -> Mat2 {
    Mat2::from_ints([[1, 0], [0, -1]])
}

/// `ad^k(a)(b) = [a, [a, ..., [a, b]]]`.
pub fn ad_power(a: &Poly, k: usize, b: &Poly) -> Result<Poly> {
    (0..k).try_fold(b.clone(), |acc, _| a.bracket(&acc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Witness {
    pub element: Poly,
    pub matrix: Mat2,
    pub trace: Rat,
}

/// Image in `sl(2)` of `ad^{i-1}(x_2)(x_1) * ad^{j-1}(x_2)(x_1)` under
/// `x_1 -> e + f`, `x_2 -> h` when `i` and `j` share parity, or of
/// `ad^{i-1}(x_2)(x_1) * ad^{j-1}(x_2)(x_3)` under `x_1 -> e`, `x_2 -> h`,
/// `x_3 -> f` otherwise. Elements of `L_{i+j}` have traceless images, so a
/// nonzero trace shows `L_i L_j ⊄ L_{i+j}`.
pub fn sl2_witness(i: usize, j: usize, n: usize) -> Result<Sl2Witness> {
    if i < 2 || j < 2 {
        return Err(Error::InvalidArgument(format!("indices must be >= 2, got ({}, {})", i, j)));
    }
    let same = i % 2 == j % 2;
    let needed = if same { 2 } else { 3 };
    if n < needed {
        return Err(Error::TooFewGenerators { name: "sl(2) witness".into(), needed, n });
    }
    let x = |t| Poly::generator(n, t);
    let (e, f, h) = (sl2_e(), sl2_f(), sl2_h());
    let left = ad_power(&x(2)?, i - 1, &x(1)?)?;
    let (right, images) = if same {
        (ad_power(&x(2)?, j - 1, &x(1)?)?, vec![e.add_scaled(&f, &Rat::one()), h])
    } else {
        (ad_power(&x(2)?, j - 1, &x(3)?)?, vec![e, h, f])
    };
    let element = left.mul(&right)?;
    let mut images = images;
    images.resize(n, Mat2::zero());
    let matrix = evaluate_mat2(&element, &images)?;
    let trace = matrix.trace();
    Ok(Sl2Witness { element, matrix, trace })
}

/// Degree-stamped membership of one element family in `M_5(A_3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenElementRow {
    pub name: String,
    pub degree: usize,
    pub instances: usize,
    pub members: usize,
}

impl OpenElementRow {
    pub fn all_members(&self) -> bool {
        self.members == self.instances
    }
}

/// The three families `[x,y][z,[x,[x,y]]]`, `[x,y][z,y,x,y]`,
/// `[x,y][z,z,z,x]` as functions of `(x, y, z)`.
pub fn open_element_families() -> Vec<(&'static str, Family)> {
    fn first(x: &Poly, y: &Poly, z: &Poly) -> Result<Poly> {
        x.bracket(y)?.mul(&nested(&[z.clone(), x.clone(), x.clone(), y.clone()])?)
    }
    fn second(x: &Poly, y: &Poly, z: &Poly) -> Result<Poly> {
        x.bracket(y)?.mul(&nested(&[z.clone(), y.clone(), x.clone(), y.clone()])?)
    }
    fn third(x: &Poly, y: &Poly, z: &Poly) -> Result<Poly> {
        x.bracket(y)?.mul(&nested(&[z.clone(), z.clone(), z.clone(), x.clone()])?)
    }
    vec![
        ("[x,y][z,[x,[x,y]]]", first),
        ("[x,y][z,y,x,y]", second),
        ("[x,y][z,z,z,x]", third),
    ]
}

type Family = fn(&Poly, &Poly, &Poly) -> Result<Poly>;

/// Number of occurrences of variable `v`, read off from the scaling
/// `f(.., 2 t, ..) = 2^m f(.., t, ..)`.
fn multiplicity(f: Family, gens: &[Poly], v: usize) -> Result<usize> {
    let base = f(&gens[0], &gens[1], &gens[2])?;
    let mut args = [gens[0].clone(), gens[1].clone(), gens[2].clone()];
    args[v] = args[v].scale(&Rat::from_int(2));
    let scaled = f(&args[0], &args[1], &args[2])?;
    let Some((w, c)) = base.iter().next() else { return Ok(0) };
    let mut ratio = &scaled.coeff(w) * &c.recip();
    let mut m = 0;
    while ratio != Rat::one() {
        ratio = &ratio * &Rat::new(1, 2);
        m += 1;
    }
    Ok(m)
}

/// Checks the three families in `M_5(A_3)` at degrees `6..=cutoff`.
///
/// At degree 6 the variables range over the generators. At a higher degree
/// `d`, one variable occurring `m` times with `m | d - 6` ranges over
/// monomials of degree `1 + (d - 6) / m` and the others over generators;
/// by multilinearity this covers the identity in that variable.
pub fn check_open_elements(cutoff: usize) -> Result<Vec<OpenElementRow>> {
    if cutoff < 6 {
        return Err(Error::InvalidArgument(format!("cutoff must be at least 6, got {}", cutoff)));
    }
    let n = 3;
    component_size(n, cutoff)?;
    let gens: Vec<Poly> = (1..=n).map(|i| Poly::generator(n, i)).collect::<Result<_>>()?;
    let monomials = |deg: usize| -> Result<Vec<Poly>> {
        Word::all(n, deg).map(|w| Poly::monomial(n, w, Rat::one())).collect()
    };
    let mut rows = Vec::new();
    for d in 6..=cutoff {
        let target = m_span(n, 5, d)?;
        for (name, family) in open_element_families() {
            let mut instances = Vec::new();
            for wide in 0..3usize {
                let long = if d == 6 {
                    if wide > 0 {
                        continue;
                    }
                    gens.clone()
                } else {
                    let m = multiplicity(family, &gens, wide)?;
                    if m == 0 || (d - 6) % m != 0 {
                        continue;
                    }
                    monomials(1 + (d - 6) / m)?
                };
                let pick = |slot: usize| if slot == wide { &long } else { &gens };
                for x in pick(0) {
                    for y in pick(1) {
                        for z in pick(2) {
                            instances.push(family(x, y, z)?);
                        }
                    }
                }
            }
            instances.sort_by_key(|p| p.to_string());
            instances.dedup();
            let members = instances
                .par_iter()
                .map(|p| target.contains(p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|&b| b)
                .count();
            rows.push(OpenElementRow { name: name.to_string(), degree: d, instances: instances.len(), members });
        }
    }
    Ok(rows)
}

/// Conjectured `I(A_n, (2, ..., 2))` for a `k`-tuple.
pub fn conjectured_twos_index(n: usize, k: usize) -> usize {
    let (k, n) = (k as i64, n as i64);
    let v = if n >= 4 && n % 2 == 0 {
        2 * Integer::div_ceil(&(2 * k - n), &4)
    } else if n >= 5 {
        2 * Integer::div_ceil(&(2 * k - n + 1), &4)
    } else {
        return (k + 1) as usize;
    };
    (v.max(0) + 2) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub conjectured: usize,
    /// `None` when the entry exceeds the size cap.
    pub observed: Option<usize>,
    pub cutoff: usize,
}

impl SweepRow {
    pub fn matches(&self) -> Option<bool> {
        self.observed.map(|o| o == self.conjectured)
    }
}

/// Observed against conjectured `I(A_n, (2, ..., 2))` for `2 <= n <= n_max`,
/// `1 <= k <= k_max`. Each entry uses cutoff `min(cutoff, 2k + 2)`; entries
/// whose cutoff falls below `2k + 1` or whose top component exceeds
/// `max_coords` coordinates are left unobserved.
pub fn conjecture_2k_sweep(n_max: usize, k_max: usize, cutoff: usize, max_coords: u64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for k in 1..=k_max {
            let c = cutoff.min(2 * k + 2);
            let feasible = c > 2 * k && component_size(n, c).map(|s| s <= max_coords).unwrap_or(false);
            let observed = if feasible {
                Some(containment_index(n, &vec![2; k], Some(c))?.index)
            } else {
                None
            };
            rows.push(SweepRow { n, k, conjectured: conjectured_twos_index(n, k), observed, cutoff: c });
        }
    }
    Ok(rows)
}

/// Whether `pbw_degree` of the witness equals the tuple length.
pub fn witness_pbw_degree(n: usize, tuple: &[usize]) -> Result<usize> {
    pbw_degree(&pbw_witness(n, tuple)?)
}
