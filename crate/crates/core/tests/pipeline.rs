use num_bigint::BigInt;
use trigal_core::harness::{
    analyze_sample, certify_galois, run_chebotarev, ChebotarevPlan, SampleSettings, Verdict,
};
use trigal_core::model::{ModelConfig, Table};
use trigal_core::poly::{char_poly, chebyshev_u};
use trigal_core::wreath::{brute_orbits, orbit_count_formula, WreathSubgroup};
use trigal_core::{IntPoly, TridiagMatrix};

fn dyson(shift: i64, n: usize) -> ModelConfig {
    ModelConfig::dyson(Table::uniform(&[1, 2]).unwrap(), shift, n).unwrap()
}

#[test]
fn dyson_shift_is_invisible_to_the_analysis() {
    let settings = SampleSettings { chebotarev: Some((2_000, 3)), budget: 2_000 };
    for n in [12, 13] {
        for index in 0..4 {
            let centred = analyze_sample(&dyson(0, n), 9, index, &settings).unwrap();
            let shifted = analyze_sample(&dyson(3, n), 9, index, &settings).unwrap();
            assert_eq!(centred, shifted, "n = {n}, sample {index}");
        }
    }
}

#[test]
fn odd_dyson_samples_lose_their_zero_root() {
    let settings = SampleSettings { chebotarev: None, budget: 500 };
    for index in 0..6 {
        let r = analyze_sample(&dyson(-2, 15), 4, index, &settings).unwrap();
        assert!(r.zero_root && r.zero_root_removed);
        assert_eq!(r.certificate.degree, 14);
    }
}

/// `x^n - x - 1` is irreducible for every `n`.
fn selmer(n: usize) -> IntPoly {
    let mut c = vec![0i64; n + 1];
    c[0] = -1;
    c[1] = -1;
    c[n] = 1;
    IntPoly::from_i64s(&c)
}

#[test]
fn products_are_never_certified_as_full_groups() {
    let factors: Vec<IntPoly> = (2..=9).map(selmer).collect();
    for f in &factors {
        assert!(certify_galois(f, 2_000).unwrap().irreducible());
    }
    for (i, f) in factors.iter().enumerate() {
        for g in &factors[i..] {
            let c = certify_galois(&(f * g), 2_000).unwrap();
            assert!(!c.irreducible(), "{f} * {g}");
            assert!(matches!(c.verdict, Verdict::Undetermined | Verdict::Reducible), "{f} * {g}: {:?}", c.verdict);
        }
    }
}

#[test]
fn chebotarev_goldens() {
    let cases: [(&[i64], u32, f64, f64); 3] = [
        (&[-3, 1], 1, 0.95, 1.05),
        (&[1, 0, 1], 1, 0.9, 1.1),
        (&[1, 1, 1, 1, 1], 2, 2.7, 3.3),
    ];
    for (coeffs, k, lo, hi) in cases {
        let f = IntPoly::from_i64s(coeffs);
        let run = run_chebotarev(&f, &ChebotarevPlan::new(10_000, k, false)).unwrap();
        let a = run.estimates[k as usize - 1].value;
        assert!((lo..=hi).contains(&a), "{f}: A_{k} = {a}");
    }
}

#[test]
fn path_graph_is_chebyshev() {
    for n in [1, 7, 40] {
        let p = char_poly(&TridiagMatrix::with_unit_offdiag(vec![0; n]));
        let u = chebyshev_u(n);
        for i in 0..=n {
            assert_eq!(p.coeff(i) * BigInt::from(2).pow(i as u32), u.coeff(i));
        }
    }
}

#[test]
fn seventy_six_orbits() {
    assert_eq!(orbit_count_formula(6), 76);
    assert_eq!(brute_orbits(6, 6, WreathSubgroup::Full).unwrap(), 76);
}
