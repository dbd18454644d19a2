mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use quotcat_core::algebra::{all_injectives, all_projectives, simple};
use quotcat_core::exactla::QuotientReducer;
use quotcat_core::fpmod::{f_of, functor_on, presentation_exactness_check, GammaAlgebra};
use quotcat_core::onesided::iterated_quotient_check;
use quotcat_core::rep::{cokernel, cosyzygy_seq, direct_sum, ext1_dim, kernel, syzygy_seq};
use quotcat_core::rigidstar::{enlarged, stably_isomorphic, star_membership, SearchOptions, StarOutcome};
use quotcat_core::{BoundAlgebra, FieldPrime, HomSpace, Mat, Rep, RepMor, StableCategory, Subcat};

struct World {
    alg: Arc<BoundAlgebra>,
    reps: Vec<Rep>,
    tests: Vec<Rep>,
}

fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let alg = common::n3();
        let reps = common::enumerate(&common::n3_spec(), 4)
            .iter()
            .map(|r| common::to_rep(&alg, r))
            .collect();
        let mut tests: Vec<Rep> = (0..3).map(|i| simple(&alg, i).unwrap()).collect();
        tests.extend(all_projectives(&alg));
        World { alg, reps, tests }
    })
}

fn rep_index() -> impl Strategy<Value = usize> {
    0..world().reps.len()
}

fn morphism(x: &Rep, y: &Rep, seed: u64) -> RepMor {
    let space = HomSpace::new(x, y).unwrap();
    let coords: Vec<u32> = (0..space.dim()).map(|k| (seed >> (k % 64) & 1) as u32).collect();
    space.element(&coords)
}

fn field() -> impl Strategy<Value = FieldPrime> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)].prop_map(|p| FieldPrime::new(p).unwrap())
}

fn matrix() -> impl Strategy<Value = Mat> {
    (field(), 0usize..6, 0usize..6).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(0..f.p(), r * c).prop_map(move |d| Mat::from_vec(f, r, c, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity(a in matrix()) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_recovers_consistent_systems(a in matrix(), seed in any::<u64>()) {
        let f = a.field();
        let x: Vec<u32> = (0..a.cols()).map(|k| f.reduce((seed >> (3 * (k % 20))) as i64 & 7)).collect();
        let b = Mat::column_vector(f, &a.mul_vec(&x));
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn quotient_reducer_is_a_transversal(a in matrix(), seed in any::<u64>()) {
        let f = a.field();
        let red = QuotientReducer::new(f, a.rows(), &a);
        prop_assert_eq!(red.quotient_dim() + a.rank(), a.rows());
        let v: Vec<u32> = (0..a.rows()).map(|k| f.reduce((seed >> (4 * (k % 16))) as i64 & 15)).collect();
        for j in 0..a.cols() {
            let s = a.column(j);
            prop_assert!(red.contains(&s));
            let moved: Vec<u32> = v.iter().zip(&s).map(|(&x, &y)| f.add(x, y)).collect();
            prop_assert_eq!(red.reduce(&moved), red.reduce(&v));
        }
        let c = red.reduce(&v);
        prop_assert_eq!(red.reduce(&red.lift(&c)), c);
    }

    #[test]
    fn hom_bases_are_morphisms_and_compose(i in rep_index(), j in rep_index(), k in rep_index()) {
        let w = world();
        let (x, y, z) = (&w.reps[i], &w.reps[j], &w.reps[k]);
        let xy = HomSpace::new(x, y).unwrap();
        let yz = HomSpace::new(y, z).unwrap();
        let xz = HomSpace::new(x, z).unwrap();
        for f in xy.basis() {
            prop_assert!(f.validate().is_ok());
            for g in yz.basis() {
                prop_assert!(xz.try_coords(&g.compose(f)).is_some());
            }
        }
    }

    #[test]
    fn kernel_and_cokernel(i in rep_index(), j in rep_index(), seed in any::<u64>()) {
        let w = world();
        let f = morphism(&w.reps[i], &w.reps[j], seed);
        let (kobj, k) = kernel(&f);
        let (cobj, c) = cokernel(&f);
        prop_assert!(k.is_mono() && c.is_epi());
        prop_assert!(f.compose(&k).is_zero());
        prop_assert!(c.compose(&f).is_zero());
        let image = w.reps[i].total_dim() - kobj.total_dim();
        prop_assert_eq!(cobj.total_dim() + image, w.reps[j].total_dim());
    }

    #[test]
    fn hom_and_ext_are_additive(i in rep_index(), j in rep_index(), k in rep_index()) {
        let w = world();
        let (x, y, z) = (&w.reps[i], &w.reps[j], &w.reps[k]);
        let s = direct_sum(&w.alg, &[x.clone(), y.clone()]).object;
        let dim = |a: &Rep, b: &Rep| HomSpace::new(a, b).unwrap().dim();
        prop_assert_eq!(dim(&s, z), dim(x, z) + dim(y, z));
        prop_assert_eq!(dim(z, &s), dim(z, x) + dim(z, y));
        prop_assert_eq!(ext1_dim(&s, z).unwrap(), ext1_dim(x, z).unwrap() + ext1_dim(y, z).unwrap());
    }

    #[test]
    fn shift_sequences_are_short_exact(i in rep_index()) {
        let x = &world().reps[i];
        let s = syzygy_seq(x);
        prop_assert!(s.mono.is_mono() && s.epi.is_epi() && s.epi.compose(&s.mono).is_zero());
        prop_assert_eq!(s.cover.total_dim(), s.syzygy.total_dim() + x.total_dim());
        let c = cosyzygy_seq(x);
        prop_assert!(c.mono.is_mono() && c.proj.is_epi() && c.proj.compose(&c.mono).is_zero());
        prop_assert_eq!(c.envelope.total_dim(), c.cosyzygy.total_dim() + x.total_dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn shifts_are_mutually_inverse_on_a_selfinjective_algebra(i in rep_index()) {
        let w = world();
        let right = StableCategory::right(&w.alg);
        let left = StableCategory::left(&w.alg);
        let x = &w.reps[i];
        prop_assert!(stably_isomorphic(&right, &right.shift(&left.shift(x)), x, 4096).unwrap());
        prop_assert!(stably_isomorphic(&left, &left.shift(&right.shift(x)), x, 4096).unwrap());
    }

    #[test]
    fn shifts_are_functorial(i in rep_index(), j in rep_index(), k in rep_index(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let w = world();
        let f = morphism(&w.reps[i], &w.reps[j], s1);
        let g = morphism(&w.reps[j], &w.reps[k], s2);
        for cat in [StableCategory::right(&w.alg), StableCategory::left(&w.alg)] {
            let lhs = cat.shift_mor(&g.compose(&f)).unwrap();
            let rhs = cat.shift_mor(&g).unwrap().compose(&cat.shift_mor(&f).unwrap());
            prop_assert!(cat.same_class(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn cones_and_rotations_are_triangles(i in rep_index(), j in rep_index(), seed in any::<u64>()) {
        let w = world();
        let right = StableCategory::right(&w.alg);
        let u = morphism(&w.reps[i], &w.reps[j], seed);
        let t = right.cone(&u).unwrap();
        prop_assert!(right.validate_right(&t).unwrap().is_none());
        prop_assert!(right.pseudocokernel_check(&t, &w.tests).unwrap().passed());
        let r = right.rotate_right(&t).unwrap();
        prop_assert!(right.validate_right(&r).unwrap().is_none());
        prop_assert!(right.pseudocokernel_check(&r, &w.tests).unwrap().passed());
    }

    #[test]
    fn fibers_and_rotations_are_triangles(i in rep_index(), j in rep_index(), seed in any::<u64>()) {
        let w = world();
        let left = StableCategory::left(&w.alg);
        let z = morphism(&w.reps[i], &w.reps[j], seed);
        let t = left.fiber(&z).unwrap();
        prop_assert!(left.validate_left(&t).unwrap().is_none());
        prop_assert!(left.pseudokernel_check(&t, &w.tests).unwrap().passed());
        let r = left.rotate_left(&t).unwrap();
        prop_assert!(left.validate_left(&r).unwrap().is_none());
        prop_assert!(left.pseudokernel_check(&r, &w.tests).unwrap().passed());
    }

    #[test]
    fn functor_values_are_modules(i in rep_index(), j in rep_index(), k in rep_index(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let w = world();
        let right = StableCategory::right(&w.alg);
        let m = Subcat::new(vec![simple(&w.alg, 0).unwrap(), simple(&w.alg, 2).unwrap()]).unwrap();
        let gamma = GammaAlgebra::new(&right, &m).unwrap();
        let vals: Vec<_> = [i, j, k].iter().map(|&n| f_of(&gamma, &right, &w.reps[n]).unwrap()).collect();
        for v in &vals {
            prop_assert!(v.module.validate(&gamma).is_none());
        }
        let f = morphism(&w.reps[i], &w.reps[j], s1);
        let g = morphism(&w.reps[j], &w.reps[k], s2);
        let lhs = functor_on(&g.compose(&f), &vals[0], &vals[2]);
        let rhs = functor_on(&g, &vals[1], &vals[2]).compose(&functor_on(&f, &vals[0], &vals[1]));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn certificates_validate_and_present(i in rep_index()) {
        let w = world();
        let x = &w.reps[i];
        let mut gens = all_projectives(&w.alg);
        gens.push(simple(&w.alg, 0).unwrap());
        let m = Subcat::new(gens).unwrap();
        for cat in [StableCategory::right(&w.alg), StableCategory::left(&w.alg)] {
            let gamma = GammaAlgebra::new(&cat, &m).unwrap();
            if let StarOutcome::Member(c) = star_membership(&cat, &m, x, SearchOptions::default()).unwrap() {
                prop_assert!(c.validate(&cat, &enlarged(&cat, &m)).unwrap());
                prop_assert!(presentation_exactness_check(&cat, &gamma, &c).unwrap().passed());
            }
        }
    }

    #[test]
    fn iterated_quotients_match(picks in proptest::collection::vec(rep_index(), 1..5)) {
        let w = world();
        let universe: Vec<Rep> = picks.iter().map(|&k| w.reps[k].clone()).collect();
        let c = Subcat::new(all_injectives(&w.alg)).unwrap();
        let mut gens = all_injectives(&w.alg);
        gens.push(simple(&w.alg, 1).unwrap());
        let b = Subcat::new(gens).unwrap();
        prop_assert!(iterated_quotient_check(&universe, &b, &c).unwrap().passed());
    }
}
