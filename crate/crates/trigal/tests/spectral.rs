use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use trigal_core::mixing::{build_chain, exact_matrix, second_eigenvalue, ChainId};
use trigal_core::model::ModelConfig;

/// Eigenvalues of the dense operator, largest first.
fn dense_spectrum(p: u64, lambda: u64) -> Vec<f64> {
    let spec = build_chain(&ModelConfig::bernoulli(1), ChainId::Four, &[p], &[lambda]).unwrap();
    let m = exact_matrix(&spec).unwrap();
    let n = m.len();
    let mut dense = DMatrix::<f64>::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        for (&j, w) in row {
            dense[(i, j as usize)] = w.to_f64().unwrap();
        }
    }
    assert!((&dense - dense.transpose()).amax() < 1e-15);
    let mut eig: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig
}

#[test]
fn power_iteration_matches_dense_eigensolver() {
    for (p, lambda) in [(5, 0), (7, 0), (7, 3)] {
        let eig = dense_spectrum(p, lambda);
        assert!((eig[0] - 1.0).abs() < 1e-12);
        let spec = build_chain(&ModelConfig::bernoulli(1), ChainId::Four, &[p], &[lambda]).unwrap();
        let s = second_eigenvalue(&spec).unwrap();
        assert!(s.converged);
        let l2 = s.lambda2.unwrap();
        let lmin = s.lambda_min.unwrap();
        assert!((l2 - eig[1]).abs() < 1e-6, "p = {p}: {l2} vs {}", eig[1]);
        assert!((lmin - eig[eig.len() - 1]).abs() < 1e-6, "p = {p}: {lmin} vs {}", eig[eig.len() - 1]);
    }
}
