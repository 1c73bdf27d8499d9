mod common;

use common::*;
use firsweep_core::dataset::{fit_codec, split, GroundTruth, SyntheticConfig, Target};
use firsweep_core::models::{
    fit_linear, grnn_fit, grnn_predict, mlfn_forward, mlfn_gradient, mlfn_init, GrnnModel,
    LinearConfig, LinearModel, MlfnModel,
};
use firsweep_core::training::{evaluate, gradient_check, rmse, train_linear};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn fit_linear_matches_normal_equations() {
    for seed in 0..20 {
        let (x, y) = random_design(50, 12, seed);
        let m = fit_linear(&x, &y, LinearConfig::strict()).unwrap();
        let (w, b) = normal_equations(&x, &y);
        for (a, e) in m.weights.iter().zip(&w) {
            assert!(rel_err(*a, *e) < 1e-8, "seed {seed}: {a} vs {e}");
        }
        assert!(rel_err(m.bias, b) < 1e-8);
    }
}

#[test]
fn noisy_synthetic_linear_fit_matches_oracle_rmse() {
    // Growth surface, n = 500, noise 0.5. The encoded design carries an
    // exact one-hot/intercept collinearity, so the oracle drops the last
    // direction column to get a full-rank parametrization of the same span.
    let d = SyntheticConfig::new(500, 0.5, 21).generate();
    let codec = fit_codec(&d).unwrap();
    let x_full: Vec<Vec<f64>> = codec.encode_all(&d).iter().map(|r| r.to_vec()).collect();
    let y = d.targets(Target::Height).unwrap();

    let m = fit_linear(&x_full, &y, LinearConfig::default()).unwrap();
    let fitted: Vec<f64> = x_full.iter().map(|r| m.predict(r).unwrap()).collect();

    let x_red: Vec<Vec<f64>> = x_full.iter().map(|r| r[..11].to_vec()).collect();
    let (w, b) = normal_equations(&x_red, &y);
    let oracle: Vec<f64> = x_red
        .iter()
        .map(|r| r.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>() + b)
        .collect();

    let ours = brute_rmse(&fitted, &y);
    let theirs = brute_rmse(&oracle, &y);
    assert!(rel_err(ours, theirs) < 1e-6, "{ours} vs {theirs}");
    // The growth surface is nonlinear, so OLS cannot reach the noise floor.
    assert!(ours > 0.5);
}

#[test]
fn evaluate_matches_oracle_pipeline() {
    let d = SyntheticConfig::new(300, 0.3, 4)
        .with_truth(GroundTruth::linear())
        .generate();
    let (train, test) = split(&d, 0.8, 2).unwrap();
    let model = train_linear(&train, Target::Height, LinearConfig::default()).unwrap();

    let codec = fit_codec(&train).unwrap();
    let enc = |ds: &firsweep_core::Dataset| -> Vec<Vec<f64>> {
        codec
            .encode_all(ds)
            .iter()
            .map(|r| r[..11].to_vec())
            .collect()
    };
    let (w, b) = normal_equations(&enc(&train), &train.targets(Target::Height).unwrap());
    let preds: Vec<f64> = enc(&test)
        .iter()
        .map(|r| r.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>() + b)
        .collect();
    let oracle = brute_rmse(&preds, &test.targets(Target::Height).unwrap());
    let ours = evaluate(&model, &test, Target::Height).unwrap();
    assert!(rel_err(ours, oracle) < 1e-6, "{ours} vs {oracle}");
}

#[test]
fn predict_linear_is_dot_plus_bias() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let w: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..2.0)).collect();
        let b = rng.random_range(-2.0..2.0);
        let x: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..2.0)).collect();
        let mut expected = b;
        for i in 0..12 {
            expected += w[i] * x[i];
        }
        let m = LinearModel {
            weights: w,
            bias: b,
        };
        assert!((m.predict(&x).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn mlfn_forward_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..10 {
        let m = mlfn_init(1 + seed as usize, seed).unwrap();
        let x: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..2.0)).collect();
        let expected = mlfn_reference(
            &m.input_weights,
            &m.hidden_biases,
            &m.output_weights,
            m.output_bias,
            &x,
        );
        assert!((mlfn_forward(&m, &x).unwrap() - expected).abs() < 1e-12);
    }
}

fn random_mlfn(hidden: usize, rng: &mut ChaCha8Rng) -> MlfnModel {
    let mut m = MlfnModel::zeros(hidden, 12);
    let params: Vec<f64> = (0..m.param_count())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    m.set_flat(&params).unwrap();
    m
}

#[test]
fn mlfn_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for hidden in [2, 4, 9, 16] {
        for _ in 0..20 {
            let m = random_mlfn(hidden, &mut rng);
            let x: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..2.0)).collect();
            let y = rng.random_range(-3.0..3.0);
            let analytic = mlfn_gradient(&m, &x, y).unwrap().flatten();
            let numeric = fd_gradient(&m.flatten(), hidden, &x, y, 1e-5);
            for (a, n) in analytic.iter().zip(&numeric) {
                let e = (a - n).abs() / (a.abs() + n.abs()).max(1e-8);
                assert!(e < 1e-4, "H={hidden}: {a} vs {n}");
            }
        }
    }
}

#[test]
fn gradient_check_instrument() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let xs: Vec<Vec<f64>> = (0..6)
        .map(|_| (0..12).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let ys: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();

    let m = random_mlfn(4, &mut rng);
    assert!(gradient_check(&m, &xs, &ys, 1e-5).unwrap().max_rel_error < 1e-4);

    // Tiny input weights and hidden biases keep every unit in the sigmoid's
    // linear region; the output layer stays O(1).
    let mut tiny = m.clone();
    tiny.input_weights.iter_mut().for_each(|v| *v *= 1e-3);
    tiny.hidden_biases.iter_mut().for_each(|v| *v *= 1e-3);
    let r = gradient_check(&tiny, &xs, &ys, 1e-5).unwrap();
    assert!(r.max_rel_error < 1e-6, "{r:?}");

    // Zero network at zero targets: both gradients are exactly zero.
    let zero = MlfnModel::zeros(3, 12);
    let r = gradient_check(&zero, &xs, &[0.0; 6], 1e-5).unwrap();
    assert_eq!(r.max_rel_error, 0.0);
}

#[test]
fn grnn_bandwidth_matches_brute_force_loo() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let xs: Vec<Vec<f64>> = (0..60)
        .map(|_| (0..3).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    let ys: Vec<f64> = xs
        .iter()
        .map(|x| (x[0]).sin() + 0.5 * x[1] * x[2])
        .collect();
    let grid = [0.01, 1.0, 100.0];
    let expected = grid
        .iter()
        .copied()
        .map(|s| (s, loo_rmse(&xs, &ys, s)))
        .fold((f64::NAN, f64::INFINITY), |best, (s, e)| {
            if e < best.1 {
                (s, e)
            } else {
                best
            }
        });
    let m = grnn_fit(&xs, &ys, &grid).unwrap();
    assert_eq!(m.sigma, expected.0);
}

#[test]
fn grnn_predict_matches_plain_kernel_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let xs: Vec<Vec<f64>> = (0..30)
        .map(|_| (0..12).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let ys: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..10.0)).collect();
    let m = GrnnModel::new(xs.clone(), ys.clone(), 0.8).unwrap();
    for _ in 0..10 {
        let q: Vec<f64> = (0..12).map(|_| rng.random_range(-1.0..1.0)).collect();
        let expected = kernel_average(&xs, &ys, &q, 0.8, None);
        assert!((grnn_predict(&m, &q).unwrap() - expected).abs() < 1e-10);
    }
}

#[test]
fn grnn_wide_bandwidth_gives_global_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xs: Vec<Vec<f64>> = (0..100)
        .map(|_| (0..12).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let ys: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..30.0)).collect();
    let mean = ys.iter().sum::<f64>() / 100.0;
    let m = GrnnModel::new(xs, ys, 1e6).unwrap();
    let q = [0.3; 12];
    assert!((m.predict(&q).unwrap() - mean).abs() < 1e-6);
}

#[test]
fn rmse_matches_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let p: Vec<f64> = (0..100).map(|_| rng.random_range(-5.0..5.0)).collect();
    let a: Vec<f64> = (0..100).map(|_| rng.random_range(-5.0..5.0)).collect();
    assert_eq!(rmse(&p, &a).unwrap(), brute_rmse(&p, &a));
}

#[test]
fn constant_prediction_rmse_is_population_sd() {
    let d = SyntheticConfig::new(50, 1.0, 3).generate();
    let y = d.targets(Target::Height).unwrap();
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let codec = fit_codec(&d).unwrap();
    let model = firsweep_core::Model {
        family: firsweep_core::Family::Linear(LinearModel {
            weights: vec![0.0; 12],
            bias: mean,
        }),
        codec,
        target: Target::Height,
        target_scale: firsweep_core::models::TargetScale::IDENTITY,
    };
    let r = evaluate(&model, &d, Target::Height).unwrap();
    assert!((r - population_sd(&y)).abs() < 1e-12);
}
