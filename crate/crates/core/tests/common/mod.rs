#![allow(dead_code)]

use lcs::freealg::{Poly, Word};
use lcs::Rat;
use proptest::prelude::*;

pub fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p, q))
}

pub fn word(n: usize, max_deg: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n as u8, 0..=max_deg).prop_map(|l| Word::new(&l))
}

pub fn poly(n: usize, max_deg: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((word(n, max_deg), rat()), 0..=max_terms)
        .prop_map(move |t| Poly::from_terms(n, t).expect("letters in range"))
}

pub fn homogeneous(n: usize, deg: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    let w = prop::collection::vec(1..=n as u8, deg).prop_map(|l| Word::new(&l));
    prop::collection::vec((w, rat()), 0..=max_terms)
        .prop_map(move |t| Poly::from_terms(n, t).expect("letters in range"))
}
