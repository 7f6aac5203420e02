mod common;

use proptest::prelude::*;
use scatpoly::scatter::{is_scattered, linear_set};
use scatpoly::symmetry::{are_equivalent, graph_stabilizer, Mat2};
use scatpoly::{FieldCtx, FieldElem, LinPoly};
use std::sync::OnceLock;

fn f81() -> &'static FieldCtx {
    static F: OnceLock<FieldCtx> = OnceLock::new();
    F.get_or_init(|| FieldCtx::new(3, 1, 4).unwrap())
}

fn f729() -> &'static FieldCtx {
    static F: OnceLock<FieldCtx> = OnceLock::new();
    F.get_or_init(|| FieldCtx::new(3, 1, 6).unwrap())
}

fn f9_cubed() -> &'static FieldCtx {
    static F: OnceLock<FieldCtx> = OnceLock::new();
    F.get_or_init(|| FieldCtx::new(3, 2, 3).unwrap())
}

fn elem(field: &'static FieldCtx) -> impl Strategy<Value = FieldElem> {
    (0..field.size()).prop_map(move |i| field.elem(i).unwrap())
}

fn nonzero(field: &'static FieldCtx) -> impl Strategy<Value = FieldElem> {
    (1..field.size()).prop_map(move |i| field.elem(i).unwrap())
}

fn poly(field: &'static FieldCtx) -> impl Strategy<Value = LinPoly<'static>> {
    proptest::collection::vec(0..field.size(), field.n() as usize)
        .prop_map(move |c| LinPoly::from_coeffs(field, c.into_iter().map(|i| field.elem(i).unwrap()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in elem(f729()), b in elem(f729()), c in elem(f729())) {
        let f = f729();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, 3));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn nonprime_base_field_axioms(a in elem(f9_cubed()), b in elem(f9_cubed())) {
        let f = f9_cubed();
        prop_assert_eq!(f.frob_q(f.mul(a, b), 1), f.mul(f.pow(a, 9), f.pow(b, 9)));
        prop_assert_eq!(f.frob_q(a, 3), a);
    }

    #[test]
    fn norm_is_multiplicative(a in nonzero(f729()), b in nonzero(f729())) {
        let f = f729();
        let n = |x| f.norm_to_fq(x, 6).unwrap();
        prop_assert_eq!(n(f.mul(a, b)), f.mul(n(a), n(b)));
        prop_assert_eq!(n(a), common::norm(f, 6, a));
    }

    #[test]
    fn composition_is_associative_and_evaluates(g in poly(f81()), h in poly(f81()), k in poly(f81()), x in elem(f81())) {
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert_eq!(g.compose(&h).eval(x), g.eval(h.eval(x)));
        prop_assert_eq!(g.add(&h).eval(x), f81().add(g.eval(x), h.eval(x)));
    }

    #[test]
    fn adjoint_is_dual_under_trace(g in poly(f729()), x in elem(f729()), y in elem(f729())) {
        let f = f729();
        let t = |z| f.trace_to_fq(z);
        prop_assert_eq!(t(f.mul(x, g.eval(y))), t(f.mul(y, g.adjoint().eval(x))));
        prop_assert_eq!(g.adjoint().adjoint(), g);
    }

    #[test]
    fn rank_is_invariant_under_scalars(g in poly(f729()), a in nonzero(f729()), c in nonzero(f729())) {
        let f = f729();
        let twisted = g.compose(&LinPoly::monomial(f, 0, a)).scale(c);
        prop_assert_eq!(twisted.image_dim(), g.image_dim());
        prop_assert_eq!(twisted.kernel_dim() + twisted.image_dim(), 6);
    }

    #[test]
    fn scatteredness_survives_equivalence(g in poly(f729()), a in nonzero(f729()), c in nonzero(f729()), k in 0usize..6) {
        prop_assume!(!g.is_zero());
        let f = f729();
        let s = is_scattered(&g).unwrap().holds;
        let h = g.compose(&LinPoly::monomial(f, 0, a)).scale(c).frobenius_twist(k);
        prop_assert_eq!(is_scattered(&h).unwrap().holds, s);
        prop_assert_eq!(is_scattered(&g.adjoint()).unwrap().holds, s);
        prop_assert_eq!(linear_set(&g).unwrap().size, linear_set(&g.adjoint()).unwrap().size);
    }

    #[test]
    fn equivalence_witness_verifies(g in poly(f81()), a in nonzero(f81()), c in nonzero(f81()), k in 0usize..4) {
        prop_assume!(!g.is_zero());
        let f = f81();
        let h = g.compose(&LinPoly::monomial(f, 0, a)).scale(c).frobenius_twist(k);
        let e = are_equivalent(&g, &h).unwrap();
        let w = *e.witness().expect("constructed as equivalent");
        prop_assert!(w.verify(&g, &h));
        prop_assert!(w.inverse(f).unwrap().verify(&h, &g));
    }

    #[test]
    fn stabilizer_is_closed(g in poly(f81())) {
        prop_assume!(!g.is_zero() && !g.is_scalar_multiple_of_identity());
        let f = f81();
        let s = graph_stabilizer(&g).unwrap();
        let members = s.members.unwrap();
        prop_assert_eq!(members.len() as u128, s.cardinality);
        let set: std::collections::BTreeSet<Mat2> = members.iter().copied().collect();
        for (i, m) in members.iter().enumerate().take(8) {
            for x in (0..4).map(|j| f.unit(j)) {
                let (y, w) = m.apply(f, x, g.eval(x));
                prop_assert_eq!(g.eval(y), w);
            }
            let other = members[(i * 7 + 3) % members.len()];
            prop_assert!(set.contains(&m.add(f, &other)));
            prop_assert!(set.contains(&m.scale(f, 2)));
        }
    }
}
