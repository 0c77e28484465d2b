//! Lyndon words and their standard bracketings, the ordered basis of the
//! free Lie algebra inside `A_n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::freealg::{Poly, Word};
use crate::rational::Rat;

/// A word strictly smaller than each of its proper rotations.
///
/// Ordered lexicographically on letters (a proper prefix is smaller), which
/// is the order used for PBW monomials. This differs from the degree-first
/// order on [`Word`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(w: Word) -> Result<Self> {
        if is_lyndon(w.letters()) {
            Ok(LyndonWord(w))
        } else {
            Err(Error::NotLyndon(format!("{:?}", w)))
        }
    }

    pub fn letter(i: u8) -> Self {
        LyndonWord(Word::letter(i))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[u8] {
        self.0.letters()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    /// `w = uv` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let l = self.letters();
        if l.len() < 2 {
            return None;
        }
        (1..l.len())
            .find(|&i| is_lyndon(&l[i..]))
            .map(|i| (LyndonWord(Word::new(&l[..i])), LyndonWord(Word::new(&l[i..]))))
    }
}

impl Ord for LyndonWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters().cmp(other.letters())
    }
}

impl PartialOrd for LyndonWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let rot = w[k..].iter().chain(&w[..k]);
        w.iter().lt(rot)
    })
}

/// All Lyndon words over `1..=n` of degree at most `d`, in lexicographic order.
pub fn lyndon_words(n: usize, d: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let n = n as u8;
    let mut w: Vec<u8> = vec![1];
    loop {
        out.push(LyndonWord(Word::new(&w)));
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&n) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

type Terms = BTreeMap<Word, Rat>;
type Expansion = Vec<(LyndonWord, Rat)>;

#[derive(Default)]
struct LieCache {
    bracketings: HashMap<LyndonWord, Arc<Terms>>,
    brackets: HashMap<(LyndonWord, LyndonWord), Arc<Expansion>>,
}

/// Shared memo table: computed outside the lock, first publication wins.
fn cache() -> &'static RwLock<LieCache> {
    static CACHE: OnceLock<RwLock<LieCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn bracketing_terms(w: &LyndonWord) -> Arc<Terms> {
    if let Some(t) = cache().read().unwrap().bracketings.get(w) {
        return t.clone();
    }
    let terms = match w.standard_factorization() {
        None => {
            let mut t = Terms::new();
            t.insert(w.word().clone(), Rat::one());
            t
        }
        Some((u, v)) => {
            let (tu, tv) = (bracketing_terms(&u), bracketing_terms(&v));
            let mut t = Terms::new();
            for (a, ca) in tu.iter() {
                for (b, cb) in tv.iter() {
                    let c = ca * cb;
                    add_into(&mut t, a.concat(b), &c);
                    add_into(&mut t, b.concat(a), &-&c);
                }
            }
            t
        }
    };
    let t = Arc::new(terms);
    cache().write().unwrap().bracketings.entry(w.clone()).or_insert(t).clone()
}

fn add_into(t: &mut Terms, w: Word, c: &Rat) {
    use std::collections::btree_map::Entry;
    match t.entry(w) {
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

/// The Lie element of `A_n` indexed by `w`: a letter maps to its generator,
/// otherwise `[P(u), P(v)]` for the standard factorization `w = uv`.
pub fn standard_bracketing(n: usize, w: &LyndonWord) -> Result<Poly> {
    Word::checked(w.letters(), n)?;
    let terms = bracketing_terms(w);
    Poly::from_terms(n, terms.iter().map(|(w, c)| (w.clone(), c.clone())))
}

/// Checked variant taking a raw word.
pub fn standard_bracketing_of(n: usize, w: &Word) -> Result<Poly> {
    standard_bracketing(n, &LyndonWord::new(w.clone())?)
}

/// Expresses a homogeneous Lie element in the Lyndon basis by triangular
/// elimination: the lexicographically least word of `P(w)` is `w` itself.
pub(crate) fn lyndon_coordinates(mut t: Terms) -> Result<Expansion> {
    let mut out = Vec::new();
    loop {
        let least = t.keys().min_by(|a, b| a.letters().cmp(b.letters())).cloned();
        let Some(w) = least else { return Ok(out) };
        let lw = LyndonWord::new(w.clone())?;
        let c = t[&w].clone();
        for (v, cv) in bracketing_terms(&lw).iter() {
            add_into(&mut t, v.clone(), &-&(&c * cv));
        }
        out.push((lw, c));
    }
}

/// `[P(u), P(v)]` in Lyndon coordinates, cached.
pub(crate) fn bracket_in_basis(u: &LyndonWord, v: &LyndonWord) -> Arc<Expansion> {
    let key = (u.clone(), v.clone());
    if let Some(e) = cache().read().unwrap().brackets.get(&key) {
        return e.clone();
    }
    let (tu, tv) = (bracketing_terms(u), bracketing_terms(v));
    let mut t = Terms::new();
    for (a, ca) in tu.iter() {
        for (b, cb) in tv.iter() {
            let c = ca * cb;
            add_into(&mut t, a.concat(b), &c);
            add_into(&mut t, b.concat(a), &-&c);
        }
    }
    let coords = lyndon_coordinates(t).expect("bracket of Lie elements is a Lie element");
    let e = Arc::new(coords);
    cache().write().unwrap().brackets.entry(key).or_insert(e).clone()
}
