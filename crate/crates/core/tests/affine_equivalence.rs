use qdouble::cyclo::CycNum;
use qdouble::double::{format_permutation, QuantumDouble};
use qdouble::group::{GroupOps, ProductGroup};
use qdouble::trivalg::{
    affine_chargeon_fluxion, affine_u_and_phi, gamma_character, psi_character, theorem34_permutation, AlgebraCharacter,
};

fn commuting_pairs(prod: &ProductGroup<'_>) -> Vec<(usize, usize)> {
    let n = prod.order();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| prod.commute(x, y)).collect()
}

#[test]
fn algebra_character_is_psi_minus_gamma() {
    for q in [2, 3, 4, 5] {
        let data = affine_u_and_phi(q).unwrap();
        let qd = QuantumDouble::new(data.group.clone());
        let prod = data.product();
        let chi = AlgebraCharacter::new(&prod, &data.phi, qd.modulus()).unwrap();
        let (c, f) = affine_chargeon_fluxion(&qd, &data);
        for (x, y) in commuting_pairs(&prod) {
            let lhs = chi.eval(x, y);
            let rhs = psi_character(&qd, x, y) - gamma_character(&qd, c, f, x, y);
            assert_eq!(lhs, rhs, "q={q} at ({x}, {y})");
            assert_eq!(lhs, CycNum::from_int(data.closed_form(x, y)), "closed form, q={q} at ({x}, {y})");
        }
    }
}

#[test]
fn algebra_character_is_a_class_function() {
    let data = affine_u_and_phi(4).unwrap();
    let prod = data.product();
    let chi = AlgebraCharacter::new(&prod, &data.phi, 6).unwrap();
    for (i, (x, y)) in commuting_pairs(&prod).into_iter().enumerate().step_by(37) {
        let k = (i * 131) % prod.order();
        assert_eq!(chi.eval(x, y), chi.eval(prod.conj(k, x), prod.conj(k, y)));
    }
}

#[test]
fn theorem34_all_q() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let t = std::time::Instant::now();
        let r = theorem34_permutation(q).unwrap();
        eprintln!("q={q}: {} ({:?})", format_permutation(&r.names, &r.permutation), t.elapsed());
    }
}
