//! Property tests over random functions and states.

mod common;

use nlfsc::boolfn::BooleanFunction;
use nlfsc::cipher::KeystreamGenerator;
use nlfsc::lfsr::{next_state, prev_state, ConnectionPoly, LfsrState};
use nlfsc::BitVec;
use proptest::prelude::*;

fn random_function(n: usize, seed: u64) -> BooleanFunction {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    BooleanFunction::from_evaluator(n, |_| rng.gen()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn anf_transform_is_involutive(n in 2usize..=12, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assert_eq!(f.anf().truth_table(), f);
    }

    #[test]
    fn parseval_holds(n in 2usize..=10, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assert_eq!(f.walsh().parseval_sum(), 1u64 << (2 * n));
    }

    #[test]
    fn walsh_values_bounded_and_same_parity(n in 2usize..=10, seed in any::<u64>()) {
        let f = random_function(n, seed);
        let w = f.walsh();
        let parity = w.values()[0].rem_euclid(4);
        for &v in w.values() {
            prop_assert!(v.unsigned_abs() <= 1 << n);
            // all values are congruent mod 4 (they differ by multiples of 4)
            prop_assert_eq!(v.rem_euclid(4), parity);
        }
    }

    #[test]
    fn immunity_bounds(n in 2usize..=8, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assume!(f.weight() != 0 && f.weight() != 1 << n);
        let ai = f.algebraic_immunity().unwrap();
        let fai = f.fast_algebraic_immunity().unwrap();
        prop_assert!(ai <= n.div_ceil(2) as u32);
        prop_assert!(fai > ai, "ai={} fai={}", ai, fai);
        prop_assert!(fai <= 2 * ai, "ai={} fai={}", ai, fai);
    }

    #[test]
    fn ai_bound_larger_n(n in 9usize..=10, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assume!(f.weight() != 0 && f.weight() != 1 << n);
        prop_assert!(f.algebraic_immunity().unwrap() <= n.div_ceil(2) as u32);
    }

    // the rank-based solvers against exponential enumeration
    #[test]
    fn ai_matches_brute_force(n in 2usize..=4, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assert_eq!(f.algebraic_immunity().unwrap(), common::ai_brute_force(&f));
    }

    #[test]
    fn fai_matches_brute_force(n in 2usize..=5, seed in any::<u64>()) {
        let f = random_function(n, seed);
        let ai = f.algebraic_immunity().unwrap();
        prop_assert_eq!(
            f.fast_algebraic_immunity().unwrap(),
            common::fai_brute_force(&f, ai)
        );
    }

    #[test]
    fn nonlinearity_matches_affine_distance_oracle(n in 2usize..=8, seed in any::<u64>()) {
        let f = random_function(n, seed);
        // exhaustive distance to all 2^{n+1} affine functions
        let size = 1u32 << n;
        let mut best = u32::MAX;
        for alpha in 0..size {
            for c in 0..2u32 {
                let mut dist = 0;
                for x in 0..size {
                    let aff = ((alpha & x).count_ones() & 1) ^ c == 1;
                    dist += (f.value(x) != aff) as u32;
                }
                best = best.min(dist);
            }
        }
        prop_assert_eq!(f.nonlinearity(), best);
    }

    #[test]
    fn truth_table_hex_round_trips(n in 2usize..=10, seed in any::<u64>()) {
        let f = random_function(n, seed);
        prop_assert_eq!(BooleanFunction::from_hex(&f.to_hex()).unwrap(), f);
    }

    #[test]
    fn lfsr_step_round_trips(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let p = ConnectionPoly::from_exponents("257,7,5,4,3,2,0").unwrap();
        let mut bits = BitVec::zeros(257);
        for j in 0..257 {
            bits.set(j, rng.gen());
        }
        let u = LfsrState::new(bits);
        prop_assert_eq!(prev_state(&p, &next_state(&p, &u).unwrap()).unwrap(), u.clone());
        prop_assert_eq!(next_state(&p, &prev_state(&p, &u).unwrap()).unwrap(), u);
    }

    #[test]
    fn keystream_is_a_pure_function_of_position(skip in 0u64..600, take in 1u64..200) {
        let key = "5a5a5a5a5a5a5a5a5a5a";
        let iv = "a5a5a5a5a5a5a5a5a5a5";
        let mut g1 = KeystreamGenerator::for_level(80, key, iv).unwrap();
        let mut g2 = KeystreamGenerator::for_level(80, key, iv).unwrap();
        let all = g1.bits(skip + take).unwrap();
        g2.bits(skip).unwrap();
        let tail = g2.bits(take).unwrap();
        prop_assert_eq!(tail.as_slice(), &all[skip as usize..]);
    }
}
