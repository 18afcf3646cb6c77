use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terminal_fano::terminality::{
    prop1_witness, simplex_invariants, simplex_invariants_with_bezout, wps_well_formed, Witness,
};
use terminal_fano::weights::{product_matrix, sample_valid};
use terminal_fano::{kernel_rays, oracle_terminal_fan, oracle_terminal_polytope, terminal_prop1, wps_terminal};

fn wps_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=7)).collect();
        if wps_well_formed(&v) {
            return v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bezout_choice_does_not_matter(seed in any::<u64>(), n in 4usize..=8, t in -20i64..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_valid(n, 7, &mut rng);
        for i in 0..n {
            let base = simplex_invariants(&w, i).unwrap();
            let (a, b) = base.bezout;
            let g = base.g;
            let shifted = (a + t * w.b()[i] / g, b - t * w.a()[i] / g);
            let other = simplex_invariants_with_bezout(&w, i, shifted).unwrap();
            prop_assert_eq!(&other.alpha, &base.alpha);
            prop_assert_eq!(
                prop1_witness(&other).unwrap().is_none(),
                prop1_witness(&base).unwrap().is_none()
            );
        }
    }

    #[test]
    fn invariant_identities(seed in any::<u64>(), n in 4usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_valid(n, 7, &mut rng);
        for i in 0..n {
            let inv = simplex_invariants(&w, i).unwrap();
            prop_assert_eq!(inv.alpha[i], 0);
            prop_assert_eq!(inv.beta[i], -inv.g);
            prop_assert!(inv.f > 0);
            prop_assert_eq!(inv.alpha_sum, inv.alpha.iter().sum::<i64>());
        }
    }

    #[test]
    fn product_rule(seed in any::<u64>(), lu in 2usize..=5, lv in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = wps_vector(&mut rng, lu);
        let v = wps_vector(&mut rng, lv);
        let w = product_matrix(&u, &v).unwrap();
        let expected = wps_terminal(&u).unwrap() && wps_terminal(&v).unwrap();
        prop_assert_eq!(terminal_prop1(&w).unwrap().terminal, expected);
        prop_assert_eq!(oracle_terminal_fan(&w).unwrap().terminal, expected);
    }

    #[test]
    fn oracles_agree(seed in any::<u64>(), n in 4usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_valid(n, 7, &mut rng);
        let p = terminal_prop1(&w).unwrap();
        let f = oracle_terminal_fan(&w).unwrap();
        prop_assert_eq!(p.terminal, f.terminal);
        prop_assert_eq!(p.witness.is_none(), p.terminal);
        prop_assert_eq!(f.witness.is_none(), f.terminal);
        if n <= 6 {
            prop_assert_eq!(oracle_terminal_polytope(&w).unwrap().terminal, p.terminal);
        }
    }
}

/// Fan-oracle witnesses are lattice points of `P` that are neither vertices nor the origin.
#[test]
fn fan_witnesses_are_genuine() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    for _ in 0..500 {
        let w = sample_valid(5, 7, &mut rng);
        let v = oracle_terminal_fan(&w).unwrap();
        let Some(Witness::LatticePoint { point, .. }) = v.witness else { continue };
        let rays = kernel_rays(&w).unwrap();
        assert!(point.iter().any(|&x| x != 0));
        assert!(!rays.rays.contains(&point));
        seen += 1;
    }
    assert!(seen > 100);
}
