//! Small dense least-squares utilities: slope regressions and Householder-QR
//! fits for the main-term models.

/// Least-squares slope of y against x.
pub fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Solve min ||A x - b|| by Householder QR with column scaling. `a` is
/// row-major, `rows` x `cols`, rows >= cols. Near-degenerate columns get a
/// minimum-norm-style treatment (tiny pivots give zero contribution).
pub fn least_squares(a: &[f64], rows: usize, cols: usize, b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), rows * cols);
    assert_eq!(b.len(), rows);
    // scale columns to unit norm for conditioning
    let mut scale = vec![0.0f64; cols];
    for j in 0..cols {
        let mut s = 0.0;
        for i in 0..rows {
            s += a[i * cols + j] * a[i * cols + j];
        }
        scale[j] = if s > 0.0 { s.sqrt() } else { 1.0 };
    }
    let mut m: Vec<f64> = (0..rows * cols)
        .map(|k| a[k] / scale[k % cols])
        .collect();
    let mut rhs = b.to_vec();

    // Householder QR
    let mut betas = vec![0.0f64; cols];
    for j in 0..cols {
        let mut norm = 0.0;
        for i in j..rows {
            norm += m[i * cols + j] * m[i * cols + j];
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            betas[j] = 0.0;
            continue;
        }
        let alpha = if m[j * cols + j] > 0.0 { -norm } else { norm };
        let v0 = m[j * cols + j] - alpha;
        m[j * cols + j] = alpha;
        // v = (v0, m[j+1..rows][j]); apply H = I - 2 v v^T / (v^T v)
        let mut vtv = v0 * v0;
        for i in j + 1..rows {
            vtv += m[i * cols + j] * m[i * cols + j];
        }
        betas[j] = alpha;
        if vtv == 0.0 {
            continue;
        }
        for k in j + 1..cols {
            let mut dot = v0 * m[j * cols + k];
            for i in j + 1..rows {
                dot += m[i * cols + j] * m[i * cols + k];
            }
            let f = 2.0 * dot / vtv;
            m[j * cols + k] -= f * v0;
            for i in j + 1..rows {
                m[i * cols + k] -= f * m[i * cols + j];
            }
        }
        let mut dot = v0 * rhs[j];
        for i in j + 1..rows {
            dot += m[i * cols + j] * rhs[i];
        }
        let f = 2.0 * dot / vtv;
        rhs[j] -= f * v0;
        for i in j + 1..rows {
            rhs[i] -= f * m[i * cols + j];
        }
    }

    // back-substitution on R (diag in betas)
    let mut x = vec![0.0f64; cols];
    let rmax = betas.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    for j in (0..cols).rev() {
        let mut s = rhs[j];
        for k in j + 1..cols {
            s -= m[j * cols + k] * x[k];
        }
        x[j] = if betas[j].abs() > 1e-13 * rmax {
            s / betas[j]
        } else {
            0.0
        };
    }
    for j in 0..cols {
        x[j] /= scale[j];
    }
    x
}

/// Evaluate a fitted model: dot product of coefficient vector with a row.
pub fn model_value(coefs: &[f64], row: &[f64]) -> f64 {
    coefs.iter().zip(row).map(|(c, v)| c * v).sum()
}

/// Coefficient of variation (std / mean) of a sample; the "relative
/// variation" used by the stabilization checks.
pub fn coefficient_of_variation(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    var.sqrt() / mean.abs()
}
