mod common;

use common::{a2_spec, a3_zero_spec, brute_ext_dim, brute_hom_dim, build, enumerate, n3_spec, to_rep, Spec};
use quotcat_core::rep::{ext1_dim, HomSpace};

fn agree_on_all_pairs(spec: &Spec, max: usize) -> usize {
    let alg = build(spec);
    let small = enumerate(spec, max);
    let reps: Vec<_> = small.iter().map(|r| to_rep(&alg, r)).collect();
    let mut cases = 0;
    for (i, x) in small.iter().enumerate() {
        for (j, y) in small.iter().enumerate() {
            let hom = HomSpace::new(&reps[i], &reps[j]).unwrap().dim();
            assert_eq!(hom, brute_hom_dim(spec, x, y), "hom {:?} -> {:?}", x, y);
            let ext = ext1_dim(&reps[i], &reps[j]).unwrap();
            assert_eq!(ext, brute_ext_dim(spec, x, y), "ext {:?} -> {:?}", x, y);
            cases += 1;
        }
    }
    cases
}

#[test]
fn a2_hom_and_ext_match_enumeration() {
    assert!(agree_on_all_pairs(&a2_spec(), 4) > 100);
}

#[test]
fn a3_with_zero_relation_matches_enumeration() {
    assert!(agree_on_all_pairs(&a3_zero_spec(), 4) > 100);
}

#[test]
fn n3_hom_and_ext_match_enumeration() {
    assert_eq!(enumerate(&n3_spec(), 4).len(), 176);
    assert_eq!(agree_on_all_pairs(&n3_spec(), 4), 176 * 176);
}
