//! Property-based invariants over seeded random fixtures.

mod common;

use bibucalc::bibundle::{check_pairing_axioms, check_principal, compute_pairing, validate_bibundle, Bibundle, Side};
use bibucalc::calculus::{
    associator_witness, compose_bb, find_iso, identity_bibundle, left_unit_witness, opposite, pentagon_paths,
    right_unit_witness, verify_iso,
};
use bibucalc::diagram::{parse, print, typecheck, DiagramEnv, Expr};
use bibucalc::fixtures::{random_bibundle, random_groupoid, random_hom, random_right_principal, rng, shuffle_points};
use bibucalc::groupoid::{check_hom, validate_category, validate_groupoid};
use bibucalc::io;
use bibucalc::linking::{linking_category, linking_groupoid};
use bibucalc::FinSet;
use proptest::prelude::*;
use rand::Rng;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop::sample::select(vec!["id", "tau", "delta", "eps", "ev", "cv", "mu", "e", "inv", "M", "f'"])
        .prop_map(Expr::gen);
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::tensor(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::seq(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_print(e in expr()) {
        let text = print(&e);
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr()) {
        let spaced = print(&e).replace('(', " ( ").replace(';', "\n;\t");
        prop_assert_eq!(parse(&spaced).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_pass_their_validators(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 10);
        let h = random_groupoid(&mut r, 10);
        prop_assert!(validate_groupoid(&g).is_valid());
        let b = random_bibundle(&mut r, &g, &h, 16);
        prop_assert!(validate_bibundle(&b).is_valid());
        let p = random_right_principal(&mut r, &g, &h);
        prop_assert!(validate_bibundle(&p).is_valid());
        prop_assert!(check_principal(&p, Side::Right).holds());
        prop_assert!(check_hom(&random_hom(&mut r, &g, &h)).is_valid());
    }

    #[test]
    fn files_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 8);
        let h = random_groupoid(&mut r, 8);
        let b = random_bibundle(&mut r, &g, &h, 12);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("b.json");
        io::save_bibundle(&p, &b).unwrap();
        let back = io::load_bibundle(&p).unwrap();
        prop_assert_eq!(&back, &b);
        let gp = dir.path().join("g.json");
        io::save_groupoid(&gp, &g).unwrap();
        prop_assert_eq!(io::load_groupoid(&gp).unwrap(), g);
    }

    #[test]
    fn pairing_satisfies_its_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 8);
        let h = random_groupoid(&mut r, 8);
        let b = random_right_principal(&mut r, &g, &h);
        let p = compute_pairing(&b).unwrap();
        prop_assert!(check_pairing_axioms(&b, &p).is_valid());
        for (m, m2, k) in p.entries() {
            prop_assert_eq!(b.rmul(m, k), m2);
        }
    }

    #[test]
    fn isomorphism_is_invariant_under_relabelling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 8);
        let h = random_groupoid(&mut r, 8);
        let b = random_bibundle(&mut r, &g, &h, 16);
        let s = shuffle_points(&mut r, &b);
        let w = find_iso(&b, &s);
        prop_assert!(w.is_some());
        prop_assert!(verify_iso(&b, &s, &w.unwrap()).is_valid());
    }

    #[test]
    fn composite_shape_matches_union_find(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 6);
        let h = random_groupoid(&mut r, 6);
        let k = random_groupoid(&mut r, 6);
        let m = random_bibundle(&mut r, &g, &h, 10);
        let n = random_bibundle(&mut r, &h, &k, 10);
        let c = compose_bb(&m, &n).unwrap();
        let mut shape: Vec<_> = c.points().map(|p| (c.lm(p), c.rm(p))).collect();
        shape.sort_unstable();
        prop_assert_eq!(shape, common::naive_composite_shape(&m, &n));
        prop_assert!(validate_bibundle(&c).is_valid());
    }

    #[test]
    fn structure_witnesses_are_isomorphisms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let gs: Vec<_> = (0..4).map(|_| random_groupoid(&mut r, 6)).collect();
        let m = random_right_principal(&mut r, &gs[0], &gs[1]);
        let n = random_right_principal(&mut r, &gs[1], &gs[2]);
        let l = random_right_principal(&mut r, &gs[2], &gs[3]);
        let (a, b, w) = associator_witness(&m, &n, &l).unwrap();
        prop_assert!(verify_iso(&a, &b, &w).is_valid());
        let (c, w) = left_unit_witness(&m).unwrap();
        prop_assert!(verify_iso(&c, &m, &w).is_valid());
        let (c, w) = right_unit_witness(&m).unwrap();
        prop_assert!(verify_iso(&c, &m, &w).is_valid());
    }

    #[test]
    fn pentagon_paths_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let gs: Vec<_> = (0..5).map(|_| random_groupoid(&mut r, 6)).collect();
        let ms: Vec<Bibundle> = (0..4)
            .map(|i| if r.gen_bool(0.7) {
                random_right_principal(&mut r, &gs[i], &gs[i + 1])
            } else {
                random_bibundle(&mut r, &gs[i], &gs[i + 1], 8)
            })
            .collect();
        let (top, bottom) = pentagon_paths(&ms[0], &ms[1], &ms[2], &ms[3]).unwrap();
        prop_assert_eq!(top, bottom);
    }

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 8);
        let h = random_groupoid(&mut r, 8);
        let b = random_bibundle(&mut r, &g, &h, 12);
        let oo = opposite(&opposite(&b));
        prop_assert!(find_iso(&oo, &b).is_some());
        prop_assert_eq!(
            check_principal(&b, Side::Right).flags(),
            check_principal(&opposite(&b), Side::Left).flags()
        );
    }

    #[test]
    fn biprincipal_pairs_invert_in_the_linking_groupoid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 8);
        let b = shuffle_points(&mut r, &identity_bibundle(&g));
        let lg = linking_groupoid(&b).unwrap();
        let n = g.num_arrows() as u32;
        let lgg = &lg.groupoid;
        for m in 0..b.len() as u32 {
            let (arrow, bar) = (n + m, lgg.inv(n + m));
            prop_assert_eq!(lgg.mul(bar, arrow), lgg.unit(lgg.r(arrow)));
            prop_assert_eq!(lgg.mul(arrow, bar), lgg.unit(lgg.l(arrow)));
        }
    }

    /// Corrupting one action entry breaks the bibundle axioms exactly when
    /// it breaks the category axioms of the linking category.
    #[test]
    fn linking_category_detects_corrupted_actions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 6);
        let h = random_groupoid(&mut r, 6);
        let b = random_bibundle(&mut r, &g, &h, 10);
        prop_assume!(!b.is_empty());
        let mut left = b.left_entries();
        let mut right = b.right_entries();
        let target = r.gen_range(0..b.len() as u32);
        if r.gen_bool(0.5) && !left.is_empty() {
            let i = r.gen_range(0..left.len());
            left[i].2 = target;
        } else if !right.is_empty() {
            let i = r.gen_range(0..right.len());
            right[i].2 = target;
        }
        if r.gen_bool(0.3) {
            left.pop();
        }
        let labels = FinSet::new(b.carrier().labels().to_vec()).unwrap();
        let lm = b.points().map(|m| b.lm(m)).collect();
        let rm = b.points().map(|m| b.rm(m)).collect();
        let c = Bibundle::from_entries(g, h, labels, lm, rm, &left, &right).unwrap();
        let as_bibundle = validate_bibundle(&c).is_valid();
        let as_category = validate_category(&linking_category(&c).category).is_valid();
        prop_assert_eq!(as_bibundle, as_category);
    }

    #[test]
    fn typecheck_agrees_with_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_groupoid(&mut r, 3);
        let env = DiagramEnv::new(g.clone());
        let pieces = ["id", "tau", "delta", "eps", "cv", "ev"];
        let text = (0..r.gen_range(1..4))
            .map(|_| pieces[r.gen_range(0..pieces.len())])
            .collect::<Vec<_>>()
            .join(" * ");
        let e = parse(&text).unwrap();
        let (m, n) = typecheck(&e, &env).unwrap();
        let b = bibucalc::diagram::evaluate(&e, &env).unwrap();
        prop_assert_eq!(b.left(), &g.power(m));
        prop_assert_eq!(b.right(), &g.power(n));
    }
}
