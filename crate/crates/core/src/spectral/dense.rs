use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Largest graph the dense eigensolver accepts.
pub const DENSE_CAP: usize = 4096;

/// All adjacency eigenvalues, descending, from a dense symmetric eigensolve.
pub fn spectrum_dense(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n > DENSE_CAP {
        return Err(Error::SizeExceeded {
            what: "dense eigensolve order",
            value: n as u128,
            cap: DENSE_CAP as u128,
        });
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut values: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn hexagon() {
        assert!(close(
            &spectrum_dense(&Graph::cycle(6)).unwrap(),
            &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0]
        ));
    }

    #[test]
    fn complete_graph() {
        assert!(close(
            &spectrum_dense(&Graph::complete(4)).unwrap(),
            &[3.0, -1.0, -1.0, -1.0]
        ));
    }

    #[test]
    fn cap() {
        let g = Graph::from_edges(DENSE_CAP + 1, []);
        assert!(matches!(
            spectrum_dense(&g),
            Err(Error::SizeExceeded { .. })
        ));
    }
}
