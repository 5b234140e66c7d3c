use super::*;
use crate::field::Field;
use crate::lie::GradedLieAlgebra;
use crate::presentation::free_lie;

fn q() -> Field {
    Field::Rational
}

fn abelian(degs: &[u32]) -> GradedLieAlgebra {
    let basis = degs.iter().enumerate().map(|(i, d)| (format!("e{i}"), *d)).collect();
    GradedLieAlgebra::new(q(), basis, None).unwrap()
}

/// `[a, b] = c` with `a`, `b` even of degree 2.
fn heisenberg() -> GradedLieAlgebra {
    let mut l = GradedLieAlgebra::new(
        q(),
        vec![("a".into(), 2), ("b".into(), 2), ("c".into(), 4)],
        None,
    )
    .unwrap();
    l.set_bracket_by_name("a", "b", &[("c", q().one())]).unwrap();
    l
}

fn by_q(l: &GradedLieAlgebra, m: &GradedModule, q_max: usize, d_max: i64) -> Vec<usize> {
    let cx = ce_chain_complex(l, m, q_max, d_max).unwrap();
    homology_by_q(&homology_dims(&cx), q_max)
}

#[test]
fn abelian_has_zero_boundary() {
    let l = abelian(&[2, 2]);
    let cx = ce_chain_complex(&l, &GradedModule::trivial(q()), 3, 20).unwrap();
    for d in cx.internal_degrees() {
        for qq in 1..=3 {
            assert!(cx.boundary(qq, d).iter().all(|v| v.is_zero()));
        }
    }
    assert_eq!(by_q(&l, &GradedModule::trivial(q()), 3, 20), vec![1, 2, 1, 0]);
}

#[test]
fn odd_abelian_has_divided_powers() {
    // one odd generator: Γ(sx) is a divided power algebra, one class per q
    let l = abelian(&[1]);
    assert_eq!(by_q(&l, &GradedModule::trivial(q()), 4, 10), vec![1, 1, 1, 1, 1]);
}

#[test]
fn free_on_one_odd_generator() {
    let (_, l) = free_lie(q(), &[("x".into(), 1)], 6).unwrap();
    assert_eq!(l.dim(), 2);
    assert_eq!(by_q(&l, &GradedModule::trivial(q()), 3, 6), vec![1, 1, 0, 0]);
}

#[test]
fn heisenberg_betti_numbers() {
    assert_eq!(by_q(&heisenberg(), &GradedModule::trivial(q()), 4, 20), vec![1, 2, 2, 1, 0]);
}

#[test]
fn q_max_zero_gives_coinvariants() {
    let l = heisenberg();
    let m = GradedModule::adjoint(&l).unwrap();
    // L / [L, L] = span{a, b}
    assert_eq!(by_q(&l, &m, 0, 20), vec![2]);
}

#[test]
fn resolution_squares_to_zero_on_modules() {
    let (_, f) = free_lie(q(), &[("x".into(), 1), ("y".into(), 1)], 5).unwrap();
    let l = f.restrict(3).unwrap();
    let l = if l.truncation().is_some() { l.truncation_ideal(3).unwrap().1 } else { l };
    let ad = GradedModule::adjoint(&heisenberg()).unwrap();
    Resolution::new(&heisenberg(), &ad, 4, Some(16)).unwrap();
    let reg = GradedModule::truncated_regular(&l, 3).unwrap();
    reg.validate(&l).unwrap();
    Resolution::new(&l, &reg, 4, Some(8)).unwrap();
    let fp = Field::Prime(5);
    let (_, f5) = free_lie(fp, &[("x".into(), 1), ("t".into(), 2)], 4).unwrap();
    let reg5 = GradedModule::truncated_regular(&f5, 2).unwrap();
    Resolution::new(&f5, &reg5, 4, Some(4)).unwrap();
}

#[test]
fn tensor_module_is_a_module() {
    let l1 = heisenberg();
    let (_, l2) = free_lie(q(), &[("x".into(), 1)], 6).unwrap();
    let (sum, m1, m2) = l1.direct_sum_with_maps(&l2).unwrap();
    let a = GradedModule::adjoint(&l1).unwrap();
    let b = GradedModule::truncated_regular(&l2, 3).unwrap();
    let t = GradedModule::tensor(&a, &b, &sum, &m1, &m2).unwrap();
    t.validate(&sum).unwrap();
}

#[test]
fn jacobi_failure_breaks_square_zero() {
    // [x,x] = y and [x,y] = z contradicts [x,[x,x]] = 0
    let mut l = GradedLieAlgebra::new(
        q(),
        vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 3)],
        None,
    )
    .unwrap();
    l.set_bracket_by_name("x", "x", &[("y", q().one())]).unwrap();
    l.set_bracket_by_name("x", "y", &[("z", q().one())]).unwrap();
    assert!(!l.validate().is_empty());
    let err = Resolution::new(&l, &GradedModule::trivial(q()), 4, Some(6)).unwrap_err();
    assert!(matches!(err, crate::error::HomologyError::BoundarySquaredNonzero { .. }));
}

fn trivial() -> ModuleSpec {
    ModuleSpec::trivial(q())
}

#[test]
fn ext_odd_degree_three_is_socle() {
    let l = abelian(&[3]);
    let t = ext_against_ul(&l, &trivial(), 3, 12).unwrap();
    assert_eq!(t.nonzero().collect::<Vec<_>>(), vec![((0, 3), 1)]);
}

#[test]
fn ext_even_degree_two_is_in_degree_one() {
    let l = abelian(&[2]);
    let t = ext_against_ul(&l, &trivial(), 3, 12).unwrap();
    assert_eq!(t.total(0), 0);
    assert_eq!(t.nonzero().collect::<Vec<_>>(), vec![((1, -2), 1)]);
}

#[test]
fn free_module_has_grade_zero() {
    let l = heisenberg();
    let c = grade(&l, &ModuleSpec::Free, None, None).unwrap();
    assert_eq!(c.grade, GradeValue::Exact(0));
    assert!(verify_witness(&l, &ModuleSpec::Free, c.witness.as_ref().unwrap()).unwrap());
    let t = ext_against_ul(&l, &ModuleSpec::Free, 2, 6).unwrap();
    assert!(t.total(0) > 0 && t.total(1) == 0 && t.total(2) == 0);
}

#[test]
fn depth_matches_even_dimension() {
    let zero = GradedLieAlgebra::zero(q());
    assert_eq!(depth(&zero, None, None).unwrap().grade, GradeValue::Exact(0));
    for l in [abelian(&[2, 2]), abelian(&[1, 2, 3]), heisenberg(), abelian(&[1, 3])] {
        let c = depth(&l, None, None).unwrap();
        assert_eq!(c.grade, GradeValue::Exact(l.even_dim()), "{:?}", l.basis());
        let w = c.witness.unwrap();
        assert!(verify_witness(&l, &trivial(), &w).unwrap());
    }
}

#[test]
fn free_algebra_truncated_gives_candidate() {
    let (_, l) = free_lie(q(), &[("x".into(), 1), ("y".into(), 1)], 6).unwrap();
    let c = depth(&l, Some(3), None).unwrap();
    assert_eq!(c.grade, GradeValue::UpperCandidate(1));
    assert!(c.caveat.is_some());
    assert!(matches!(
        ext_against_ul(&l, &trivial(), 2, 4),
        Err(crate::error::HomologyError::Truncated { .. })
    ));
}

#[test]
fn ext_entries_are_stable_in_d_bound() {
    let l = heisenberg();
    let small = ext_against_ul(&l, &trivial(), 3, 4).unwrap();
    let large = ext_against_ul(&l, &trivial(), 3, 10).unwrap();
    for (k, n) in &small.dims {
        assert_eq!(large.dims.get(k), Some(n));
    }
}

#[test]
fn tor_matches_ext() {
    let l = heisenberg();
    let m = GradedModule::adjoint(&l).unwrap();
    let ext = ext_against_ul(&l, &ModuleSpec::Finite(m.clone()), 3, 6).unwrap();
    let tor = tor_dual_dims(&l, &m, 3, 6).unwrap();
    assert_eq!(ext.dims, tor);
}

#[test]
fn kunneth_for_grade() {
    let l1 = abelian(&[2, 1]);
    let l2 = heisenberg();
    let (sum, m1, m2) = l1.direct_sum_with_maps(&l2).unwrap();
    let a = GradedModule::adjoint(&l1).unwrap();
    let b = GradedModule::adjoint(&l2).unwrap();
    let ga = grade(&l1, &ModuleSpec::Finite(a.clone()), None, None).unwrap().grade;
    let gb = grade(&l2, &ModuleSpec::Finite(b.clone()), None, None).unwrap().grade;
    let t = GradedModule::tensor(&a, &b, &sum, &m1, &m2).unwrap();
    let g = grade(&sum, &ModuleSpec::Finite(t), None, None).unwrap().grade;
    assert_eq!(g.exact().unwrap(), ga.exact().unwrap() + gb.exact().unwrap());
}

#[test]
fn polygrade_of_finite_algebra() {
    let l = heisenberg();
    let r = polygrade_report(&l, &trivial(), None, (1, 30)).unwrap();
    assert_eq!(r.polygrade(), Some(3));
    assert_eq!(r.polydepth.0, Some(3));
    assert!(r.exact);
}
