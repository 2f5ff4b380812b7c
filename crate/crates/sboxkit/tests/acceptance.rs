//! Acceptance gate: one test per criterion, each ending in a single
//! PASS line (a failed assertion is the FAIL line).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sboxkit::affine::{apply_affine, random_affine};
use sboxkit::combined::{
    bct, bct_naive, boomerang_uniformity, differential_linear_uniformity, dlct,
};
use sboxkit::corpus::builtin;
use sboxkit::differential::{ddt, differential_branch_number, differential_uniformity};
use sboxkit::linear::{linear_approximation_probability, linear_branch_number, nonlinearity};
use sboxkit::ratio::Ratio;
use sboxkit::report::{analyze, AnalyzeOptions};
use sboxkit::sca::{dpa_snr, transparency_order};
use sboxkit::spectral::{
    absolute_indicator, algebraic_degree, anf, anf_naive, autocorrelation_table,
    autocorrelation_table_naive, sum_of_squares_indicator, walsh_spectrum, walsh_spectrum_naive,
    AnfPolynomial, SsiConvention,
};
use sboxkit::SBox;

fn random_sbox(n: u32, m: u32, rng: &mut ChaCha8Rng) -> SBox {
    let table = (0..1u32 << n).map(|_| rng.gen_range(0..1u32 << m)).collect();
    SBox::from_table(table, m, "random").unwrap()
}

fn random_permutation(n: u32, rng: &mut ChaCha8Rng) -> SBox {
    let mut table: Vec<u32> = (0..1u32 << n).collect();
    table.shuffle(rng);
    SBox::from_table(table, n, "random permutation").unwrap()
}

#[test]
fn criterion_1_ascon_column_exact() {
    let start = Instant::now();
    let s = builtin("ascon").unwrap();
    assert_eq!(nonlinearity(&s).unwrap(), 8);
    assert_eq!(differential_uniformity(&s).unwrap(), 8);
    assert_eq!(algebraic_degree(&s), 2);
    assert_eq!(linear_branch_number(&s).unwrap(), 3);
    assert_eq!(differential_branch_number(&s).unwrap(), 3);
    assert_eq!(sboxkit::linear::correlation_immunity_order(&s).unwrap(), 0);
    assert_eq!(sboxkit::differential::propagation_criteria_order(&s).unwrap(), 0);
    assert_eq!(linear_approximation_probability(&s).unwrap(), Ratio::new(1, 4));
    assert_eq!(sboxkit::differential::undisturbed_bits(&s).unwrap().len(), 35);
    assert_eq!(s.max_cycle_length().unwrap(), 26);
    assert_eq!(s.fixed_points().unwrap().len(), 0);
    assert_eq!(s.opposite_fixed_points().unwrap().len(), 0);
    assert_eq!(absolute_indicator(&s).unwrap(), 32);
    let dlu = differential_linear_uniformity(&s).unwrap();
    assert_eq!(dlu.normalized, Ratio::new(1, 2));
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
    println!("PASS criterion 1: Ascon/ISAP column reproduced exactly in under 1 s");
}

#[test]
fn criterion_2_four_bit_columns_exact() {
    for id in ["spongent", "gift", "present"] {
        let s = builtin(id).unwrap();
        assert_eq!(linear_approximation_probability(&s).unwrap(), Ratio::new(1, 4), "{}", id);
        assert_eq!(sboxkit::linear::correlation_immunity_order(&s).unwrap(), 0, "{}", id);
        assert_eq!(sboxkit::differential::propagation_criteria_order(&s).unwrap(), 0, "{}", id);
        assert_eq!(sboxkit::avalanche::sac_scalar(&s), Ratio::new(1, 1), "{}", id);
        let bic = sboxkit::avalanche::bic_scalar(&s).unwrap();
        assert!((bic - 1.0).abs() < 1e-9, "{}: bic = {}", id, bic);
        assert_eq!(nonlinearity(&s).unwrap(), 4, "{}", id);
    }
    assert_eq!(differential_branch_number(&builtin("spongent").unwrap()).unwrap(), 3);
    assert_eq!(differential_branch_number(&builtin("gift").unwrap()).unwrap(), 2);
    assert_eq!(differential_branch_number(&builtin("present").unwrap()).unwrap(), 3);
    println!("PASS criterion 2: Elephant/GIFT/PRESENT columns reproduced exactly");
}

#[test]
fn criterion_3_skinny_column_exact() {
    let start = Instant::now();
    let s = builtin("skinny8").unwrap();
    assert_eq!(nonlinearity(&s).unwrap(), 64);
    assert_eq!(differential_uniformity(&s).unwrap(), 64);
    assert_eq!(linear_approximation_probability(&s).unwrap(), Ratio::new(1, 4));
    assert_eq!(algebraic_degree(&s), 6);
    let dlu = differential_linear_uniformity(&s).unwrap();
    assert_eq!(dlu.abs, 128);
    assert_eq!(dlu.normalized, Ratio::new(64, 128));
    assert_eq!(s.fixed_points().unwrap().len(), 1);
    assert_eq!(s.max_cycle_length().unwrap(), 140);
    assert_eq!(sboxkit::differential::undisturbed_bits(&s).unwrap().len(), 258);
    // full run includes the boomerang table
    assert_eq!(boomerang_uniformity(&s).unwrap(), 256);
    assert!(start.elapsed().as_secs_f64() < 10.0, "took {:?}", start.elapsed());
    println!("PASS criterion 3: Romulus/Skinny column reproduced exactly in under 10 s");
}

#[test]
fn criterion_4_sca_metrics_to_fixture_precision() {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6;
    let snr = |id: &str| dpa_snr(&builtin(id).unwrap()).unwrap();
    let to = |id: &str| transparency_order(&builtin(id).unwrap()).unwrap();

    assert!(close(snr("ascon"), 3.015113), "{}", snr("ascon"));
    assert!(close(to("ascon"), 4.258065), "{}", to("ascon"));
    assert!(close(snr("skinny8"), 6.312455), "{}", snr("skinny8"));
    assert!(close(to("skinny8"), 7.174510), "{}", to("skinny8"));
    assert!(close(snr("spongent"), 2.398501), "{}", snr("spongent"));
    assert!(close(to("spongent"), 3.266667), "{}", to("spongent"));

    // the GIFT and PRESENT cells are printed swapped; the implementation's
    // values win, and the pair of printed values must still be covered
    let (g_to, p_to) = (to("gift"), to("present"));
    assert!(close(g_to, 3.466667) && close(p_to, 3.533333), "{} {}", g_to, p_to);
    let (g_snr, p_snr) = (snr("gift"), snr("present"));
    assert!(close(g_snr, 2.398501) && close(p_snr, 2.128608), "{} {}", g_snr, p_snr);
    println!(
        "PASS criterion 4: SCA fixtures matched to 1e-6 (fixture delta logged: \
         printed GIFT/PRESENT SNR and TO cells are swapped relative to computation)"
    );
}

#[test]
fn criterion_5_known_discrepancy_handling() {
    assert_eq!(differential_uniformity(&builtin("gift").unwrap()).unwrap(), 6);
    assert_eq!(differential_uniformity(&builtin("present").unwrap()).unwrap(), 4);

    let opts = AnalyzeOptions {
        table5_compare: true,
        ..AnalyzeOptions::default()
    };
    let mut du_deltas = Vec::new();
    for id in ["skinny8", "ascon", "spongent", "gift", "present"] {
        let report = analyze(&builtin(id).unwrap(), None, &opts);
        if let Some(delta) = &report.metric("du").unwrap().fixture_delta {
            du_deltas.push((id, delta.computed, delta.published));
        }
    }
    assert_eq!(
        du_deltas,
        vec![("gift", 6.0, 4.0), ("present", 4.0, 6.0)],
        "exactly the two swapped DU cells must be logged"
    );
    println!("PASS criterion 5: DU(GIFT)=6, DU(PRESENT)=4 with exactly two logged fixture deltas");
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5b0c);
    let mut cases: Vec<SBox> = Vec::new();
    for n in [3u32, 4, 5] {
        for _ in 0..100 {
            cases.push(random_sbox(n, n, &mut rng));
        }
    }
    for _ in 0..5 {
        cases.push(random_sbox(6, 6, &mut rng));
    }
    for s in &cases {
        assert_eq!(walsh_spectrum(s).unwrap(), walsh_spectrum_naive(s).unwrap());
        let act = autocorrelation_table(s).unwrap();
        assert_eq!(act, autocorrelation_table_naive(s).unwrap());
        for mask in 0..1u32 << s.m() {
            let c = s.component(mask);
            assert_eq!(anf(&c), anf_naive(&c));
        }
        let d = dlct(s).unwrap();
        for dx in 0..act.rows() as u32 {
            for rho in 0..act.cols() as u32 {
                assert_eq!(2 * d.entry(dx, rho), act.entry(dx, rho));
            }
        }
    }
    // boomerang table needs bijections
    for n in [3u32, 4, 5] {
        for _ in 0..100 {
            let s = random_permutation(n, &mut rng);
            assert_eq!(bct(&s).unwrap(), bct_naive(&s).unwrap());
        }
    }
    for _ in 0..5 {
        let s = random_permutation(6, &mut rng);
        assert_eq!(bct(&s).unwrap(), bct_naive(&s).unwrap());
    }
    println!("PASS criterion 6: fast paths equal definitional oracles on 305 boxes and 305 permutations");
}

#[test]
fn criterion_7_affine_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xaff1);
    let mut pairs = Vec::new();
    for seed in 0..200u64 {
        pairs.push((random_permutation(4, &mut rng), random_affine(4, 4, seed)));
    }
    for seed in 0..20u64 {
        pairs.push((random_permutation(5, &mut rng), random_affine(5, 5, seed)));
    }
    for (s, t) in &pairs {
        let image = apply_affine(s, t).unwrap();
        assert_eq!(nonlinearity(s).unwrap(), nonlinearity(&image).unwrap());
        assert_eq!(
            differential_uniformity(s).unwrap(),
            differential_uniformity(&image).unwrap()
        );
        assert_eq!(
            boomerang_uniformity(s).unwrap(),
            boomerang_uniformity(&image).unwrap()
        );
        assert_eq!(
            differential_linear_uniformity(s).unwrap().abs,
            differential_linear_uniformity(&image).unwrap().abs
        );
        assert_eq!(algebraic_degree(s), algebraic_degree(&image));
        assert_eq!(
            absolute_indicator(s).unwrap(),
            absolute_indicator(&image).unwrap()
        );
        assert_eq!(
            sum_of_squares_indicator(s, SsiConvention::Nonzero).unwrap(),
            sum_of_squares_indicator(&image, SsiConvention::Nonzero).unwrap()
        );
        assert_eq!(
            linear_approximation_probability(s).unwrap(),
            linear_approximation_probability(&image).unwrap()
        );
    }
    println!("PASS criterion 7: 220 affine-transform pairs preserve the invariant metric set");
}

#[test]
fn criterion_8_structural_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57a7);
    let mut cases: Vec<SBox> = ["ascon", "gift", "present", "spongent", "skinny8"]
        .iter()
        .map(|id| builtin(id).unwrap())
        .collect();
    for n in [3u32, 4, 5] {
        for _ in 0..20 {
            cases.push(random_sbox(n, n, &mut rng));
            cases.push(random_permutation(n, &mut rng));
        }
    }

    for s in &cases {
        let size = s.len() as i32;
        let d = ddt(s).unwrap();
        for dx in 0..d.rows() {
            let sum: i32 = d.row_slice(dx).iter().sum();
            assert_eq!(sum, size);
        }
        if s.is_bijective() {
            for dx in 0..d.rows() {
                for &v in d.row_slice(dx) {
                    assert_eq!(v % 2, 0);
                }
            }
        }

        // Parseval per output-mask row; column slices for bijections
        let w = walsh_spectrum(s).unwrap();
        for gamma in 0..w.rows() as u32 {
            let sum: i64 = (0..w.cols() as u32)
                .map(|rho| {
                    let v = w.entry(gamma, rho) as i64;
                    v * v
                })
                .sum();
            assert_eq!(sum, (size as i64) * (size as i64));
        }
        if s.is_bijective() {
            for rho in 0..w.cols() as u32 {
                let sum: i64 = (0..w.rows() as u32)
                    .map(|gamma| {
                        let v = w.entry(gamma, rho) as i64;
                        v * v
                    })
                    .sum();
                assert_eq!(sum, (size as i64) * (size as i64));
            }
        }

        // WHT of each DDT row reproduces the ACT row
        let act = autocorrelation_table(s).unwrap();
        for dx in 0..d.rows() as u32 {
            for rho in 0..act.cols() as u32 {
                let folded: i32 = (0..d.cols() as u32)
                    .map(|dy| {
                        let sign = if (rho & dy).count_ones() % 2 == 0 { 1 } else { -1 };
                        sign * d.entry(dx, dy)
                    })
                    .sum();
                assert_eq!(folded, act.entry(dx, rho));
            }
        }

        if s.is_bijective() && s.n() <= sboxkit::combined::MAX_BCT_WIDTH {
            let b = bct(s).unwrap();
            for dx in 0..d.rows() as u32 {
                for dy in 0..d.cols() as u32 {
                    assert!(b.entry(dx, dy) >= d.entry(dx, dy));
                }
            }
            assert!(boomerang_uniformity(s).unwrap() >= differential_uniformity(s).unwrap());
        }

        // the binary Moebius transform is an involution
        for mask in 0..1u32 << s.m() {
            let c = s.component(mask);
            let p = anf(&c);
            let as_component = sboxkit::sbox::BooleanComponent {
                mask,
                truth: p.coefficients.clone(),
            };
            let back: AnfPolynomial = anf(&as_component);
            assert_eq!(back.coefficients, c.truth);
        }
    }

    // interpolation polynomial evaluates back to the table for builtins
    for id in ["ascon", "gift", "present", "spongent", "skinny8"] {
        let s = builtin(id).unwrap();
        let field = sboxkit::algebraic::FieldSpec::with_default_modulus(s.n()).unwrap();
        let p = sboxkit::algebraic::interpolation_polynomial(&s, field).unwrap();
        for x in 0..s.len() as u32 {
            assert_eq!(p.eval(x), s.eval(x), "{} at {}", id, x);
        }
    }
    println!("PASS criterion 8: structural identities hold on builtins and 120 random boxes");
}

#[test]
fn criterion_9_bounds_conformance() {
    for id in ["ascon", "gift", "present", "spongent", "skinny8"] {
        let s = builtin(id).unwrap();
        let report = analyze(&s, None, &AnalyzeOptions::default());
        for m in &report.metrics {
            let Some(v) = m.verdict else { continue };
            if m.id == "udb" {
                // the printed UDB bound is aspirational; nonzero counts are
                // flagged through the verdict, not rejected
                assert_eq!(v, sboxkit::bounds::Verdict::OutOfBounds, "{} {}", id, m.id);
            } else {
                assert_ne!(v, sboxkit::bounds::Verdict::OutOfBounds, "{} {}", id, m.id);
            }
        }
    }
    println!("PASS criterion 9: all builtin metrics inside their theoretical bounds (UDB flagged)");
}
