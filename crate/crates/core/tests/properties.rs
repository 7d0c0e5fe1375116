//! Seeded property sweeps over the public API. Every expected value comes
//! from an oracle or an algebraic law, never from the code under test.

use condense_core::bench::{run_bench_with, BenchConfig, Method};
use condense_core::corpus::CorpusRng;
use condense_core::{
    condense_at, condense_at_11, det_bareiss, det_cofactor, det_condensation, det_gauss_rational,
    Execution, Float, Integer, Matrix, PivotSpec, PivotStrategy, Rational, Scalar, ScalarKind,
    TraceEntry,
};

fn random_rational(rng: &mut CorpusRng) -> Rational {
    Rational::new(rng.integer(9), rng.nonzero(9)).unwrap()
}

fn pow<S: Scalar>(base: &S, exponent: usize) -> S {
    (0..exponent).fold(S::one(), |acc, _| acc.mul(base))
}

#[test]
fn rational_field_laws_on_1000_triples() {
    let mut rng = CorpusRng::new(0xa11);
    for _ in 0..1000 {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}

#[test]
fn integer_exact_division_inverts_multiplication() {
    let mut rng = CorpusRng::new(0xd1f);
    for _ in 0..1000 {
        let a = Integer::from_i64(rng.integer(1 << 40));
        let b = Integer::from_i64(rng.nonzero(1 << 20));
        assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
    }
}

#[test]
fn text_round_trips_for_every_kind() {
    let mut rng = CorpusRng::new(0x7e7);
    for _ in 0..500 {
        let r = random_rational(&mut rng);
        assert_eq!(Rational::parse(&r.to_text()).unwrap(), r);
        let i = Integer::from_i64(rng.integer(u32::MAX as u64));
        assert_eq!(Integer::parse(&i.to_text()).unwrap(), i);
        let f = Float(f64::from_bits(rng.next_u64() >> 2));
        assert_eq!(
            Float::parse(&f.to_text()).unwrap().0.to_bits(),
            f.0.to_bits()
        );
        assert_eq!(
            condense_core::parse_scalar(&r.to_text(), ScalarKind::Rational).unwrap(),
            r.to_text()
        );
    }
}

#[test]
fn removal_keeps_surviving_entries_in_order() {
    let mut rng = CorpusRng::new(0x5e1);
    for _ in 0..100 {
        let n = 3 + (rng.next_u64() % 5) as usize;
        let m: Matrix<Integer> = rng.integer_matrix(n, 50);
        let pick = |rng: &mut CorpusRng| -> Vec<usize> {
            (1..=n)
                .filter(|_| rng.next_u64().is_multiple_of(3))
                .collect()
        };
        let (rows, cols) = (pick(&mut rng), pick(&mut rng));
        let sub = m.remove_rows_cols(&rows, &cols).unwrap();
        let kept_rows: Vec<usize> = (1..=n).filter(|i| !rows.contains(i)).collect();
        let kept_cols: Vec<usize> = (1..=n).filter(|j| !cols.contains(j)).collect();
        assert_eq!((sub.rows(), sub.cols()), (kept_rows.len(), kept_cols.len()));
        for (si, &i) in kept_rows.iter().enumerate() {
            for (sj, &j) in kept_cols.iter().enumerate() {
                assert_eq!(sub.get(si + 1, sj + 1).unwrap(), m.get(i, j).unwrap());
            }
        }
    }
}

#[test]
fn rotation_is_a_permutation_with_the_sign_law() {
    let mut rng = CorpusRng::new(0x4a4);
    for _ in 0..25 {
        let m = rng.rational_matrix(4, 9);
        let det = det_cofactor(&m).unwrap();
        for k in 1..=4 {
            for l in 1..=4 {
                let p = PivotSpec { k, l };
                let (b, sign) = m.rotate_pivot_to_front(p).unwrap();
                assert_eq!(b.get(1, 1).unwrap(), m.get(k, l).unwrap());
                let mut before = m.entries().to_vec();
                let mut after = b.entries().to_vec();
                before.sort();
                after.sort();
                assert_eq!(before, after);
                let expected_sign = if (k + l) % 2 == 0 { 1 } else { -1 };
                assert_eq!(sign, expected_sign);
                let signed = if sign == 1 {
                    det_cofactor(&b).unwrap()
                } else {
                    det_cofactor(&b).unwrap().neg()
                };
                assert_eq!(signed, det, "pivot ({k},{l})");
            }
        }
    }
}

#[test]
fn general_step_at_11_equals_specialized_step() {
    let mut rng = CorpusRng::new(0x111);
    for n in 2..=9 {
        for _ in 0..10 {
            let m = rng.rational_matrix(n, 9);
            let general = condense_at(&m, PivotSpec { k: 1, l: 1 }).unwrap();
            let special = condense_at_11(&m).unwrap();
            assert_eq!(general.condensed, special.condensed);
            assert_eq!(general.pivot_value, special.pivot_value);
        }
    }
}

#[test]
fn condensation_is_quadratic_under_scaling() {
    let mut rng = CorpusRng::new(0x5ca);
    for n in 3..=7 {
        for _ in 0..10 {
            let m = rng.rational_matrix(n, 9);
            let c = random_rational(&mut rng);
            if c.is_zero() {
                continue;
            }
            let scaled = condense_at_11(&m.scale(&c)).unwrap().condensed;
            let base = condense_at_11(&m).unwrap().condensed;
            assert_eq!(scaled, base.scale(&c.mul(&c)));

            // Both sides of a11^(n-2) det(A) = det(condensed) pick up c^(2(n-1)).
            let factor = pow(&c, 2 * (n - 1));
            let a11 = m.get(1, 1).unwrap();
            let lhs = pow(&a11.mul(&c), n - 2).mul(&det_bareiss(&m.scale(&c)).unwrap());
            assert_eq!(
                lhs,
                pow(a11, n - 2).mul(&det_bareiss(&m).unwrap()).mul(&factor)
            );
            assert_eq!(
                det_bareiss(&scaled).unwrap(),
                det_bareiss(&base).unwrap().mul(&factor)
            );
        }
    }
}

#[test]
fn gauss_determinant_is_multiplicative() {
    let mut rng = CorpusRng::new(0x3a7);
    for _ in 0..50 {
        let a = rng.rational_matrix(5, 9);
        let b = rng.rational_matrix(5, 9);
        let product = a.matmul(&b).unwrap();
        assert_eq!(
            det_gauss_rational(&product).unwrap(),
            det_gauss_rational(&a)
                .unwrap()
                .mul(&det_gauss_rational(&b).unwrap())
        );
    }
}

#[test]
fn max_magnitude_strategy_agrees_with_oracles() {
    let mut rng = CorpusRng::new(0x3a9);
    for n in 2..=9 {
        for _ in 0..10 {
            let m: Matrix<Integer> = rng.integer_matrix(n, 9);
            let first = det_condensation(&m, PivotStrategy::FirstNonzero).unwrap();
            let largest = det_condensation(&m, PivotStrategy::MaxMagnitude).unwrap();
            let oracle = det_bareiss(&m).unwrap();
            assert_eq!(first.value, oracle);
            assert_eq!(largest.value, oracle);
            let mut current = m.clone();
            for step in largest.steps() {
                assert_eq!(step.pivot.k, 1);
                let row = current.row(1).unwrap();
                assert!(row
                    .iter()
                    .all(|x| x.magnitude_cmp(&step.pivot_value).is_le()));
                current = step.condensed.clone();
            }
        }
    }
}

#[test]
fn sparse_integer_inputs_match_cofactor() {
    // Many zeros exercise pivot skipping and the zero-first-row exit.
    let mut rng = CorpusRng::new(0x5a5);
    for n in 1..=8 {
        for _ in 0..25 {
            let m: Matrix<Integer> = Matrix::from_fn(n, n, |_, _| {
                if rng.next_u64().is_multiple_of(3) {
                    Integer::from_i64(rng.integer(5))
                } else {
                    Integer::zero()
                }
            });
            let result = det_condensation(&m, PivotStrategy::FirstNonzero).unwrap();
            assert_eq!(result.value, det_cofactor(&m).unwrap(), "{m:?}");
            if let Some(TraceEntry::ZeroFirstRow { .. }) = result.trace.last() {
                assert!(result.value.is_zero());
            }
        }
    }
}

#[test]
fn float_condensation_tracks_bareiss() {
    let mut rng = CorpusRng::new(0xf10);
    for n in 3..=8 {
        for _ in 0..10 {
            let m: Matrix<Float> = rng.integer_matrix(n, 9);
            let c = det_condensation(&m, PivotStrategy::FirstNonzero)
                .unwrap()
                .value
                .0;
            let b = det_bareiss(&m).unwrap().0;
            assert!(
                (c - b).abs() / 1f64.max(c.abs()).max(b.abs()) < 1e-9,
                "n={n}: {c} vs {b}"
            );
        }
    }
}

#[test]
fn bench_runs_are_reproducible_across_execution_modes() {
    let cfg = BenchConfig {
        sizes: vec![3, 5, 7],
        trials_per_size: 4,
        entry_bound: 9,
        seed: 99,
        methods: vec![Method::Condensation, Method::Bareiss, Method::GaussRational],
    };
    let strip = |records: Vec<condense_core::bench::BenchRecord>| {
        records
            .into_iter()
            .map(|r| {
                (
                    r.method,
                    r.n,
                    r.trial,
                    r.multiplications,
                    r.subtractions,
                    r.divisions,
                    r.max_bit_length_per_level,
                    r.result_digest,
                )
            })
            .collect::<Vec<_>>()
    };
    let first = strip(run_bench_with(&cfg, Execution::Parallel).unwrap());
    let second = strip(run_bench_with(&cfg, Execution::Parallel).unwrap());
    let sequential = strip(run_bench_with(&cfg, Execution::Sequential).unwrap());
    assert_eq!(first, second);
    assert_eq!(first, sequential);
    assert_eq!(first.len(), 3 * 4 * 3);
}
