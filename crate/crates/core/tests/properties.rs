use arrmono::exactfield::ratio;
use arrmono::monodromy::superabundance;
use arrmono::polygeom::{evaluation_matrix, evaluation_matrix_raw, line_meet};
use arrmono::{FieldElement, HomogeneousPolynomial, Matrix, ProjectiveLine, ProjectivePoint};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational_parts() -> impl Strategy<Value = (i64, i64)> {
    (-30i64..=30, 1i64..=7)
}

fn fe() -> impl Strategy<Value = FieldElement> {
    (rational_parts(), rational_parts())
        .prop_map(|((p, d), (q, e))| FieldElement::new(ratio(p, d), ratio(q, e)))
}

/// Mostly small integers, with plenty of zeros, so that rank drops happen.
fn sparse_fe() -> impl Strategy<Value = FieldElement> {
    prop_oneof![
        2 => Just(FieldElement::zero()),
        3 => (-2i64..=2, -1i64..=1).prop_map(|(p, q)| FieldElement::ints(p, q)),
    ]
}

fn poly(k: u32) -> impl Strategy<Value = HomogeneousPolynomial> {
    let n = ((k + 1) * (k + 2) / 2) as usize;
    prop::collection::vec(fe(), n).prop_map(move |c| HomogeneousPolynomial::from_coefficients(k, &c))
}

fn coords() -> impl Strategy<Value = [FieldElement; 3]> {
    [fe(), fe(), fe()]
}

fn point() -> impl Strategy<Value = ProjectivePoint> {
    coords().prop_filter_map("zero vector", |c| ProjectivePoint::from_coords(c).ok())
}

fn line() -> impl Strategy<Value = ProjectiveLine> {
    coords().prop_filter_map("zero vector", |c| ProjectiveLine::from_coeffs(c).ok())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(sparse_fe(), cols), rows).prop_map(Matrix::from_rows)
}

/// Leibniz expansion; independent of any elimination code.
fn leibniz_det(m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    if n == 0 {
        return FieldElement::one();
    }
    let mut total = FieldElement::zero();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<FieldElement>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
        let term = entry * &leibniz_det(&minor);
        total = if c % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn rank_by_minors(m: &Matrix) -> usize {
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&r| {
            subsets(m.rows(), r).iter().any(|rows| {
                subsets(m.cols(), r).iter().any(|cols| {
                    let sub: Vec<Vec<FieldElement>> =
                        rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                    !leibniz_det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in fe(), b in fe(), c in fe()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, FieldElement::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), FieldElement::one());
        }
    }

    #[test]
    fn norm_and_conj_are_multiplicative(a in fe(), b in fe()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.norm(), a.norm() * b.norm());
        prop_assert_eq!(ab.conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.norm().is_zero(), a.is_zero());
        prop_assert!(a.norm() >= arrmono::Rational::zero());
    }

    #[test]
    fn print_parse_round_trip(a in fe()) {
        let text = a.to_string();
        prop_assert!(!text.contains(' '));
        prop_assert_eq!(text.parse::<FieldElement>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_multiplicative(f in poly(2), g in poly(3), p in coords()) {
        let fg = f.mul(&g);
        prop_assert_eq!(fg.degree(), 5);
        prop_assert_eq!(fg.evaluate_at(&p), &f.evaluate_at(&p) * &g.evaluate_at(&p));
    }

    #[test]
    fn tau_is_a_ring_morphism(f in poly(2), g in poly(2), h in poly(1)) {
        prop_assert_eq!(f.mul(&h).cyclic_tau(), f.cyclic_tau().mul(&h.cyclic_tau()));
        prop_assert_eq!(f.add(&g).cyclic_tau(), f.cyclic_tau().add(&g.cyclic_tau()));
        prop_assert_eq!(f.cyclic_tau().degree(), f.degree());
        prop_assert_eq!(f.cyclic_tau().cyclic_tau().cyclic_tau(), f);
    }

    #[test]
    fn tau_moves_zero_sets(f in poly(2), p in point()) {
        // (tau f)(tau p) = f(p) for the point action (x:y:z) -> (z:x:y)
        let [x, y, z] = p.coords().clone();
        let moved = [z, x, y];
        prop_assert_eq!(p.cyclic_tau(), ProjectivePoint::from_coords(moved.clone()).unwrap());
        prop_assert_eq!(f.cyclic_tau().evaluate_at(&moved), f.evaluate_at(p.coords()));
    }

    #[test]
    fn rank_matches_minors_3x4(m in matrix(3, 4)) {
        let r = m.rank();
        prop_assert_eq!(r, rank_by_minors(&m));
        prop_assert_eq!(r, m.transpose().rank());
    }

    #[test]
    fn rank_matches_minors_4x3(m in matrix(4, 3)) {
        prop_assert_eq!(m.rank(), rank_by_minors(&m));
    }

    #[test]
    fn fraction_free_rank_matches_elimination(m in matrix(7, 6)) {
        prop_assert_eq!(m.rank(), m.rank_by_elimination());
        prop_assert_eq!(m.rank(), m.rank_fraction_free());
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_ignores_representative_scaling(
        pts in prop::collection::vec(point(), 1..9),
        scales in prop::collection::vec(fe().prop_filter("nonzero", |s| !s.is_zero()), 9),
        k in 0i64..4,
    ) {
        let reps: Vec<[FieldElement; 3]> = pts
            .iter()
            .zip(&scales)
            .map(|(p, s)| p.coords().clone().map(|c| &c * s))
            .collect();
        let r = evaluation_matrix(&pts, k).rank();
        prop_assert_eq!(evaluation_matrix_raw(&reps, k).rank(), r);
        prop_assert_eq!(superabundance(&pts, k), pts.len() - r);
    }

    #[test]
    fn meet_lies_on_both_lines(l1 in line(), l2 in line()) {
        prop_assume!(l1 != l2);
        let p = line_meet(&l1, &l2).unwrap();
        prop_assert!(l1.contains(&p) && l2.contains(&p));
        prop_assert_eq!(line_meet(&l2, &l1).unwrap(), p);
    }
}

#[test]
fn w_is_a_primitive_sixth_root() {
    let w = FieldElement::w();
    for k in 1..6 {
        assert_ne!(w.pow(k), FieldElement::one(), "w^{k}");
    }
    assert_eq!(w.pow(6), FieldElement::one());
    assert_eq!(&w * &w, &w - &FieldElement::one());
}
