mod common;

use common::build;
use proptest::prelude::*;
use qdouble::chartab::{character_table, induce_character, inner_product, restrict_character};
use qdouble::cyclo::CycNum;
use qdouble::double::QuantumDouble;
use qdouble::group::{GroupOps, ProductGroup};
use qdouble::nearfield::{check_nearfield_axioms, nearfield_from_group};
use qdouble::trivalg::{affine_u_and_phi, AlgebraCharacter};

const SPECS: [&str; 8] = ["Z:4", "S:3", "D:4", "Q8", "A:4", "AGL1:5", "Z:6", "D:5"];

fn cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec(-5i128..5, 12), 1i128..7)
        .prop_map(|(m, raw, den)| CycNum::from_raw(m, &raw[..m as usize], den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        }
        let j = a.to_json();
        prop_assert_eq!(CycNum::from_json(&j).unwrap(), a);
    }

    #[test]
    fn galois_action_is_multiplicative(a in cyc(), b in cyc(), k in prop::sample::select(vec![1i64, 7, 11, 13, 49, -1])) {
        let m = 120;
        let (a, b) = (a.embed(m), b.embed(m));
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
    }

    #[test]
    fn anyon_character_is_conjugation_invariant(spec in prop::sample::select(SPECS.to_vec()), seed in 0usize..10_000) {
        let qd = QuantumDouble::new(build(spec));
        let g = qd.group();
        let n = g.order();
        let x = seed % qd.len();
        let h = qd.classes().classes[qd.anyons()[x].class].members[seed % qd.anyons()[x].class_size];
        let z = g.centralizer(h);
        let gg = z.members()[seed / 7 % z.order()];
        let k = seed / 3 % n;
        prop_assert_eq!(qd.anyon_character(x, gg, h), qd.anyon_character(x, g.conj(k, gg), g.conj(k, h)));
    }

    #[test]
    fn frobenius_reciprocity(spec in prop::sample::select(SPECS.to_vec()), s1 in 0usize..1000, s2 in 0usize..1000, i in 0usize..20, j in 0usize..20) {
        let g = build(spec);
        let k = g.subgroup_closure(&[s1 % g.order(), s2 % g.order()]);
        let tk = character_table(&g.subgroup_as_group(&k));
        let tg = character_table(&g);
        let psi = tk.character(i % tk.len());
        let chi = tg.character(j % tg.len());
        let ind = induce_character(&g, &k, &psi).unwrap();
        prop_assert_eq!(inner_product(&ind, &chi), inner_product(&psi, &restrict_character(&k, &chi)));
    }

    #[test]
    fn affine_character_closed_form(q in prop::sample::select(vec![2usize, 3, 4, 5]), x in 0usize..1_000_000, y in 0usize..1_000_000) {
        let data = affine_u_and_phi(q).unwrap();
        let prod = data.product();
        let n = prod.order();
        let chi = AlgebraCharacter::new(&prod, &data.phi, 60).unwrap();
        let (x, y) = (x % n, y % n);
        // bias towards U so the interesting branch is exercised
        let (x, y) = if x % 2 == 0 { (data.u.members()[x % data.u.order()], data.u.members()[y % data.u.order()]) } else { (x, y) };
        if prod.commute(x, y) {
            prop_assert_eq!(chi.eval(x, y), CycNum::from_int(data.closed_form(x, y)));
            let k = (x * 31 + y) % n;
            prop_assert_eq!(chi.eval(x, y), chi.eval(prod.conj(k, x), prod.conj(k, y)));
        }
    }
}

#[test]
fn algebra_characters_decompose_with_integer_multiplicities() {
    let g = build("S:3");
    let qd = QuantumDouble::new(g.clone());
    let prod = ProductGroup::new(&g, &g);
    for seeds in [vec![], vec![1], vec![7, 13], vec![7, 14]] {
        let k = qdouble::Subgroup::from_members(36, {
            let mut m = vec![0];
            let mut frontier = seeds.clone();
            while let Some(s) = frontier.pop() {
                if !m.contains(&s) {
                    m.push(s);
                    frontier.extend(m.clone().into_iter().map(|t| prod.mul(s, t)));
                }
            }
            m
        });
        let phi = qdouble::Cocycle2::trivial(&k);
        let chi = AlgebraCharacter::new(&prod, &phi, 6).unwrap();
        let rep = qdouble::trivalg::decompose_over_double(&qd, &qd, |x, y| chi.eval(x, y)).unwrap();
        assert!(rep.multiplicities.iter().all(|&m| m >= 0), "{seeds:?}");
        let total = rep.get(0, 0);
        assert!(total >= 1, "the unit appears");
    }
}

#[test]
fn extracted_near_fields_satisfy_axioms() {
    for spec in ["AGL1:4", "AGL1:7", "AGL1:8", "NF:J9"] {
        let g = build(spec);
        let a = (1..g.order()).find(|&a| nearfield_from_group(&g, a).is_ok()).unwrap();
        let h = nearfield_from_group(&g, a).unwrap().near_field;
        check_nearfield_axioms(h.size(), h.add_table(), h.mul_table()).unwrap();
    }
}
