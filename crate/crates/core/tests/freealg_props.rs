mod common;

use common::{homogeneous, poly, rat};
use lcs::expr::parse_expr;
use lcs::freealg::{nested, Poly};
use proptest::prelude::*;

proptest! {
    #[test]
    fn multiplication_is_associative(a in poly(3, 3, 4), b in poly(3, 3, 4), c in poly(3, 3, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn bracket_is_bilinear(a in poly(3, 3, 4), b in poly(3, 3, 4), c in poly(3, 3, 4), s in rat()) {
        let lhs = (&a.scale(&s) + &b).bracket(&c).unwrap();
        let rhs = &a.bracket(&c).unwrap().scale(&s) + &b.bracket(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = c.bracket(&(&a + &b.scale(&s))).unwrap();
        let rhs = &c.bracket(&a).unwrap() + &c.bracket(&b).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(a in poly(3, 3, 4), b in poly(3, 3, 4)) {
        prop_assert_eq!(a.bracket(&b).unwrap(), -&b.bracket(&a).unwrap());
        prop_assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn jacobi(a in poly(3, 2, 3), b in poly(3, 2, 3), c in poly(3, 2, 3)) {
        let s = &(&nested(&[a.clone(), b.clone(), c.clone()]).unwrap()
            + &nested(&[c.clone(), a.clone(), b.clone()]).unwrap())
            + &nested(&[b, c, a]).unwrap();
        prop_assert!(s.is_zero());
    }

    #[test]
    fn leibniz(a in poly(3, 2, 3), b in poly(3, 2, 3), c in poly(3, 2, 3)) {
        let lhs = (&a * &b).bracket(&c).unwrap();
        let rhs = &(&a * &b.bracket(&c).unwrap()) + &(&a.bracket(&c).unwrap() * &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grading_is_additive(a in homogeneous(3, 2, 4), b in homogeneous(3, 3, 4)) {
        let p = &a * &b;
        prop_assert!(p.is_homogeneous());
        if !p.is_zero() {
            prop_assert_eq!(p.degree(), Some(5));
        }
        let br = a.bracket(&b).unwrap();
        prop_assert!(br.is_zero() || br.degree() == Some(5));
    }

    #[test]
    fn components_sum_back(p in poly(2, 4, 6)) {
        let sum = p.components().into_iter().fold(Poly::zero(2), |acc, (_, c)| &acc + &c);
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn printer_parses_back(p in poly(3, 4, 6)) {
        let text = p.to_string();
        prop_assert_eq!(parse_expr(&text, 3).unwrap(), p);
    }
}

#[test]
fn mismatched_generator_counts_are_rejected() {
    let a = Poly::generator(2, 1).unwrap();
    let b = Poly::generator(3, 1).unwrap();
    assert!(a.mul(&b).is_err());
    assert!(a.bracket(&b).is_err());
    assert!(a.add(&b).is_err());
    assert_eq!(a.widen(3).unwrap().mul(&b).unwrap(), parse_expr("x1*x1", 3).unwrap());
}
