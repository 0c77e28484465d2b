use lcs::containment::{
    bound_report, conjecture_2k_sweep, containment_index, pbw_witness, sl2_witness, witness_pbw_degree,
};
use lcs::expr::parse_expr;
use lcs::series::m_span;
use lcs::Rat;

#[test]
fn a3_square_of_m2() {
    let r = containment_index(3, &[2, 2], None).unwrap();
    assert_eq!(r.cutoff, 6);
    assert_eq!(r.index, 3);
    assert_eq!((r.lower, r.upper), (3, 3));
    let w = r.witness.unwrap();
    assert!(!m_span(3, 4, w.degree).unwrap().contains(&w.element).unwrap());
    assert_eq!(parse_expr(&w.expr, 3).unwrap(), w.element);
}

#[test]
fn reports_respect_bounds() {
    for (n, t) in [(3, vec![2, 3]), (3, vec![3, 3]), (3, vec![2, 2, 2]), (4, vec![2, 2])] {
        let r = containment_index(n, &t, None).unwrap();
        assert!(r.bounds_hold(), "{:?}", r);
        let w = r.witness.as_ref().expect("a failing degree exists below the cutoff");
        assert_eq!(w.target, r.index + 1);
        assert!(!m_span(n, w.target, w.degree).unwrap().contains(&w.element).unwrap());
        for row in &r.per_degree {
            assert!(row.contained_in.contains(&r.index) || row.degree > r.cutoff);
        }
    }
}

#[test]
fn four_generators_separate_squares() {
    let r = containment_index(4, &[2, 2], None).unwrap();
    assert_eq!(r.index, 2);
}

#[test]
fn witness_shapes() {
    for n in 2..=4 {
        for t in [vec![2], vec![3, 2], vec![2, 2, 2], vec![4, 3]] {
            let w = pbw_witness(n, &t).unwrap();
            assert!(w.is_homogeneous());
            assert_eq!(w.degree(), Some(t.iter().sum()));
            assert_eq!(witness_pbw_degree(n, &t).unwrap(), t.len());
        }
    }
}

#[test]
fn bound_examples() {
    for (m, l) in [(2, 2), (2, 4), (4, 4)] {
        assert_eq!(bound_report(5, &[m, l]).unwrap().0, m + l - 2);
    }
    for (m, l) in [(3, 2), (2, 5), (3, 3)] {
        assert_eq!(bound_report(5, &[m, l]).unwrap().0, m + l - 1);
    }
    let (lo, hi) = bound_report(5, &[3, 5, 7]).unwrap();
    assert_eq!((lo, hi), (13, 13));
    for t in [vec![2, 3], vec![2, 2, 4], vec![5, 2, 3, 2]] {
        let (lo, hi) = bound_report(2, &t).unwrap();
        assert_eq!(lo, hi);
    }
}

#[test]
fn sl2_traces_follow_powers_of_two() {
    for i in 2..=6usize {
        for j in 2..=6usize {
            let w = if i % 2 == j % 2 { sl2_witness(i, j, 2) } else { sl2_witness(i, j, 3) }.unwrap();
            let mag = 1i64 << (i + j - 2);
            let expect = match (i % 2, j % 2) {
                (1, 1) => -2 * mag,
                (0, 0) => 2 * mag,
                _ => -(mag * if (j - 1) % 2 == 1 { -1 } else { 1 }),
            };
            assert_eq!(w.trace, Rat::from_int(expect), "i={} j={}", i, j);
        }
    }
}

#[test]
fn sweep_agrees_where_computed() {
    let rows = conjecture_2k_sweep(3, 3, 8, 10_000).unwrap();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.matches(), Some(true), "{:?}", r);
    }
    let capped = conjecture_2k_sweep(4, 3, 8, 5_000).unwrap();
    assert!(capped.iter().any(|r| r.observed.is_none()));
}
