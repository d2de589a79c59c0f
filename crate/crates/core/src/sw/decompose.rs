use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::SwError;
use crate::algebra::{OperatorMatrix, C64};

/// Dense restriction of an operator to the listed basis states.
pub fn restrict(op: &OperatorMatrix, states: &[usize]) -> DMatrix<C64> {
    op.submatrix(states)
}

fn inner(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Coefficients `Tr(G_k^dag H) / Tr(G_k^dag G_k)` of `h` on an orthogonal
/// operator basis. Generators must be mutually orthogonal under the trace
/// inner product; otherwise the Gram matrix is returned in the error.
pub fn majorana_decompose(
    h: &DMatrix<C64>,
    generators: &[(String, DMatrix<C64>)],
) -> Result<BTreeMap<String, C64>, SwError> {
    for (name, g) in generators {
        if g.shape() != h.shape() {
            return Err(SwError::ShapeMismatch(name.clone()));
        }
    }
    let n = generators.len();
    let gram = DMatrix::from_fn(n, n, |i, j| inner(&generators[i].1, &generators[j].1));
    for i in 0..n {
        if gram[(i, i)].norm() == 0.0 {
            return Err(SwError::NonOrthogonal(format!("generator {} vanishes", generators[i].0)));
        }
        for j in 0..i {
            let scale = (gram[(i, i)].norm() * gram[(j, j)].norm()).sqrt();
            if gram[(i, j)].norm() > 1e-10 * scale {
                return Err(SwError::NonOrthogonal(format!(
                    "<{}, {}> = {:.3e}; Gram matrix {:.3}",
                    generators[j].0,
                    generators[i].0,
                    gram[(i, j)],
                    gram.map(|z| z.re)
                )));
            }
        }
    }
    Ok(generators
        .iter()
        .enumerate()
        .map(|(k, (name, g))| (name.clone(), inner(g, h) / gram[(k, k)]))
        .collect())
}
