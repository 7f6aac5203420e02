//! Library results against brute-force counts on small fields.

mod common;

use std::collections::BTreeMap;

use common::*;
use scatpoly::families::fqt_nonzero;
use scatpoly::rankcode::{gabidulin, rank_spectrum, RankCode};
use scatpoly::scatter::{is_scattered, linear_set, linear_set_points, Witness};
use scatpoly::symmetry::{graph_stabilizer, naive_stabilizer};
use scatpoly::{FieldCtx, FieldElem, LinPoly};

/// Weight of `⟨(1, u)⟩` from the number of `x ≠ 0` with `f(x) = u x`.
fn brute_weights(f: &LinPoly<'_>) -> BTreeMap<u64, usize> {
    let field = f.field();
    let q = field.q() as usize;
    let mut hits: BTreeMap<u64, usize> = BTreeMap::new();
    for x in field.nonzero_elements() {
        *hits.entry(field.index(field.div(f.eval(x), x).unwrap())).or_default() += 1;
    }
    hits.into_iter()
        .map(|(u, c)| {
            let mut w = 0;
            let mut size = 1;
            while size < c + 1 {
                size *= q;
                w += 1;
            }
            assert_eq!(size, c + 1, "solutions of f(x) = ux plus zero form an F_q-space");
            (u, w)
        })
        .collect()
}

#[test]
fn linear_set_weights_match_brute_force() {
    let field = FieldCtx::new(3, 1, 4).unwrap();
    let mut r = rng(1);
    for terms in 1..=4 {
        for _ in 0..5 {
            let g = random_qpoly(&field, &mut r, terms);
            if g.is_zero() {
                continue;
            }
            let rep = linear_set(&g).unwrap();
            let brute = brute_weights(&g);
            let got: BTreeMap<u64, usize> = rep
                .points
                .iter()
                .map(|&u| {
                    let w = (g.sub(&LinPoly::identity(&field).scale(u))).kernel_dim();
                    (field.index(u), w)
                })
                .collect();
            assert_eq!(got, brute);
            let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
            for &w in brute.values() {
                *hist.entry(w).or_default() += 1;
            }
            assert_eq!(rep.weight_histogram, hist);
            let mut pts: Vec<FieldElem> = rep.points.clone();
            pts.sort_by_key(|u| u.raw());
            assert_eq!(linear_set_points(&g).unwrap(), pts);
        }
    }
}

#[test]
fn value_counting_matches_pairwise_on_larger_base() {
    let field = FieldCtx::new(5, 1, 4).unwrap();
    let mut r = rng(2);
    let mut seen = [0usize; 2];
    for i in 0..12 {
        let g = if i < 2 {
            LinPoly::monomial(&field, 1 + 2 * i, field.one())
        } else {
            random_qpoly(&field, &mut r, 2)
        };
        if g.is_zero() {
            continue;
        }
        let c = is_scattered(&g).unwrap();
        assert_eq!(c.holds, brute_scattered(&g));
        seen[c.holds as usize] += 1;
        if let Some(Witness::Pair { y, x }) = c.witness {
            let lhs = field.mul(g.eval(x), y);
            assert_eq!(lhs, field.mul(g.eval(y), x));
            let ratio = field.div(x, y).unwrap();
            assert_ne!(field.frob_q(ratio, 1), ratio);
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn spectrum_matches_rank_by_brute_force() {
    let field = FieldCtx::new(3, 1, 4).unwrap();
    let g = LinPoly::from_terms(&field, &[(1, field.one()), (3, field.elem(5).unwrap())]);
    let code = RankCode::new(g.clone()).unwrap();
    let spectrum = rank_spectrum(&code);
    let mut brute: BTreeMap<usize, u128> = BTreeMap::new();
    for a in field.elements() {
        for b in field.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let word = LinPoly::identity(&field).scale(a).add(&g.scale(b));
            *brute.entry(word.image_dim()).or_default() += 1;
        }
    }
    assert_eq!(spectrum.full, brute);

    let mut brute: BTreeMap<usize, u128> = BTreeMap::new();
    for a in field.elements() {
        for b in field.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let word = LinPoly::from_terms(&field, &[(0, a), (1, b)]);
            *brute.entry(word.image_dim()).or_default() += 1;
        }
    }
    assert_eq!(gabidulin(&field, 2).unwrap().full, brute);
}

#[test]
fn stabilizer_matches_naive_sweep() {
    let field = FieldCtx::new(3, 1, 4).unwrap();
    let mut r = rng(3);
    let mut done = 0;
    while done < 6 {
        let g = random_qpoly(&field, &mut r, 1 + done % 3);
        if g.is_zero() || g.is_scalar_multiple_of_identity() {
            continue;
        }
        let lin = graph_stabilizer(&g).unwrap();
        assert_eq!(lin.members.unwrap(), naive_stabilizer(&g, field.size()).unwrap());
        done += 1;
    }
}

#[test]
fn subfield_scan_matches_handle() {
    let field = FieldCtx::new(3, 1, 6).unwrap();
    for t in [2, 3] {
        let mut a: Vec<u64> = fqt_by_scan(&field, t).iter().map(|&x| field.index(x)).collect();
        let mut b: Vec<u64> = fqt_nonzero(&field, t).iter().map(|&x| field.index(x)).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}

/// `x ↦ a x` with `a^{q^t} = −a` carries the graph of `φ_(m,q)` onto that of
/// `φ_μ` for `μ = −a^{q − q^{t−1}} / m`, scattered or not.
#[test]
fn phi_is_equivalent_to_some_adjoint_forms() {
    use scatpoly::families::{phi, phi_adjoint_form, PhiParams};
    use scatpoly::symmetry::are_equivalent;
    let field = FieldCtx::new(3, 1, 10).unwrap();
    let t = 5;
    let fqt = fqt_nonzero(&field, t);
    let w = w_star(&field, t, &fqt);
    for &m in fqt.iter().step_by(40) {
        let g = phi(&field, &PhiParams::new(&field, t, 1, m).unwrap()).unwrap();
        let a = w[(field.index(m) % w.len() as u64) as usize];
        let ratio = field.div(field.frob_q(a, 1), field.frob_q(a, t - 1)).unwrap();
        let mu = field.neg(field.div(ratio, m).unwrap());
        let h = phi_adjoint_form(&field, t, mu).unwrap();
        let scaled = g.scale(field.div(field.frob_q(a, 1), m).unwrap());
        assert_eq!(h.compose(&LinPoly::monomial(&field, 0, a)), scaled);
        assert!(are_equivalent(&g, &h).unwrap().is_equivalent());
    }
}
