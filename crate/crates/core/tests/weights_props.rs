use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terminal_fano::weights::{
    canonical_key, fano_index, is_standard, is_well_formed, sample_random, sample_valid, standardize, validate,
    WeightMatrix,
};

/// Random product of shears, optionally composed with the row swap.
fn random_unimodular(rng: &mut ChaCha8Rng, allow_reflection: bool) -> [[i64; 2]; 2] {
    let mut u = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..4) {
        let t = rng.gen_range(-3..=3);
        let e = if rng.gen_bool(0.5) { [[1, t], [0, 1]] } else { [[1, 0], [t, 1]] };
        u = [
            [u[0][0] * e[0][0] + u[0][1] * e[1][0], u[0][0] * e[0][1] + u[0][1] * e[1][1]],
            [u[1][0] * e[0][0] + u[1][1] * e[1][0], u[1][0] * e[0][1] + u[1][1] * e[1][1]],
        ];
    }
    if allow_reflection && rng.gen_bool(0.5) {
        u = [u[1], u[0]];
    }
    u
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        p.swap(k, rng.gen_range(0..=k));
    }
    p
}

#[test]
fn key_survives_ten_thousand_scrambles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..10_000 {
        let n = 4 + trial % 7;
        let w = sample_valid(n, 7, &mut rng);
        let key = canonical_key(&w).unwrap();
        let u = random_unimodular(&mut rng, true);
        let perm = random_permutation(&mut rng, n);
        let scrambled = w.transform(u).unwrap().permute(&perm);
        assert_eq!(canonical_key(&scrambled).unwrap(), key, "{w} vs {scrambled}");
    }
}

#[test]
fn validity_is_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let w = sample_random(6, 5, &mut rng);
        let r = validate(&w);
        let u = random_unimodular(&mut rng, true);
        let perm = random_permutation(&mut rng, 6);
        let moved = w.transform(u).unwrap().permute(&perm);
        let r2 = validate(&moved);
        assert_eq!(r.is_valid(), r2.is_valid());
        assert_eq!(r.well_formed, r2.well_formed);
        assert_eq!(r.q_factorial, r2.q_factorial);
        assert_eq!(fano_index(&w), fano_index(&moved));
    }
}

proptest! {
    #[test]
    fn standardize_is_idempotent(seed in any::<u64>(), n in 4usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_valid(n, 7, &mut rng);
        let once = standardize(&w).unwrap();
        prop_assert_eq!(once.as_matrix(), w.as_matrix());
        prop_assert_eq!(standardize(&once).unwrap(), once.clone());
        prop_assert_eq!(canonical_key(&once).unwrap(), canonical_key(&w).unwrap());
    }

    #[test]
    fn flags_ignore_column_order(seed in any::<u64>(), n in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_random(n, 7, &mut rng);
        let perm = random_permutation(&mut rng, n);
        let p = w.permute(&perm);
        let (r, rp) = (validate(&w), validate(&p));
        prop_assert_eq!(
            (r.columns_nonzero, r.q_factorial, r.picard_rank_two, r.well_formed, r.strictly_convex),
            (rp.columns_nonzero, rp.q_factorial, rp.picard_rank_two, rp.well_formed, rp.strictly_convex)
        );
        prop_assert_eq!(r.s_plus.len(), rp.s_plus.len());
    }

    #[test]
    fn sign_sets_partition_iff_q_factorial(seed in any::<u64>(), n in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_random(n, 4, &mut rng);
        let r = validate(&w);
        let mut all: Vec<usize> = r.s_plus.iter().chain(&r.s_minus).copied().collect();
        all.sort();
        prop_assert_eq!(all == (0..n).collect::<Vec<_>>(), r.q_factorial);
    }

    #[test]
    fn common_factor_breaks_well_formedness(seed in any::<u64>(), k in 2i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_valid(5, 7, &mut rng);
        let scaled = WeightMatrix::new(
            w.a().iter().map(|x| x * k).collect(),
            w.b().iter().map(|x| x * k).collect(),
        ).unwrap();
        prop_assert!(!is_well_formed(&scaled));
        prop_assert!(!is_standard(&scaled));
    }

    #[test]
    fn samples_respect_ranges(seed in any::<u64>(), n in 4usize..=10, bound in 1i64..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_random(n, bound, &mut rng);
        prop_assert!(w.a()[0] >= 1 && w.b()[0] == 0);
        prop_assert!(w.a()[n - 1] < w.b()[n - 1]);
        prop_assert!(w.a().iter().chain(w.b()).all(|&x| (0..=bound).contains(&x)));
        let mut again = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(sample_random(n, bound, &mut again), w);
    }
}
