//! Characteristic polynomial of `J(ξ)`.
//!
//! Convention: `det(λI − J) = a₀λ⁴ − a₁λ³ + a₂λ² − a₃λ + a₄` with `a₀ = 1`.

use nalgebra::Matrix4;

/// Closed-form `(a₀, …, a₄)` at `s = |ξ|²`.
pub fn characteristic_coefficients(xi_mag: f64) -> [f64; 5] {
    let s = xi_mag * xi_mag;
    let s2 = s * s;
    [
        1.0,
        5.0 * s + 5.0,
        7.0 * s2 + 22.0 * s,
        3.0 * s2 * s + 18.0 * s2 + 10.0 * s,
        s2 * s + 5.0 * s2,
    ]
}

/// Integer coefficients for integer `s = |ξ|²`.
pub fn characteristic_coefficients_exact(s: i64) -> [i128; 5] {
    let s = s as i128;
    [
        1,
        5 * s + 5,
        7 * s * s + 22 * s,
        3 * s * s * s + 18 * s * s + 10 * s,
        s * s * s + 5 * s * s,
    ]
}

/// Polynomial in `λ`, coefficient of `λᵏ` at index `k`.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn mul(&self, o: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn add_scaled(&mut self, o: &Poly, c: f64) {
        if o.0.len() > self.0.len() {
            self.0.resize(o.0.len(), 0.0);
        }
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += c * b;
        }
    }
}

/// Cofactor expansion along the first row, over polynomial entries.
fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Poly(vec![0.0]);
    for col in 0..n {
        if m[0][col].0.iter().all(|c| *c == 0.0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        out.add_scaled(&m[0][col].mul(&det_poly(&minor)), sign);
    }
    out
}

/// Coefficients of `det(λI − M)` by Laplace expansion of the polynomial
/// matrix, returned in the alternating-sign convention above.
pub fn coefficients_by_expansion(m: &Matrix4<f64>) -> [f64; 5] {
    let entries: Vec<Vec<Poly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let lead = if i == j { 1.0 } else { 0.0 };
                    Poly(vec![-m[(i, j)], lead])
                })
                .collect()
        })
        .collect();
    let p = det_poly(&entries);
    let c = |k: usize| p.0.get(k).copied().unwrap_or(0.0);
    [c(4), -c(3), c(2), -c(1), c(0)]
}

/// Faddeev–LeVerrier recursion; a second independent route to the same
/// coefficients.
pub fn coefficients_by_leverrier(m: &Matrix4<f64>) -> [f64; 5] {
    let mut c = [1.0, 0.0, 0.0, 0.0, 0.0];
    let mut mk = Matrix4::<f64>::zeros();
    for k in 1..=4 {
        mk = m * mk + Matrix4::identity() * c[k - 1];
        c[k] = -(m * mk).trace() / k as f64;
    }
    // det(λI − M) = λ⁴ + c₁λ³ + c₂λ² + c₃λ + c₄
    [1.0, -c[1], c[2], -c[3], c[4]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::CompressibleSymbol;

    #[test]
    fn paper_values() {
        assert_eq!(characteristic_coefficients(0.0), [1.0, 5.0, 0.0, 0.0, 0.0]);
        assert_eq!(characteristic_coefficients(1.0), [1.0, 10.0, 29.0, 31.0, 6.0]);
        assert_eq!(characteristic_coefficients(2.0), [1.0, 25.0, 200.0, 520.0, 144.0]);
        assert_eq!(characteristic_coefficients_exact(4), [1, 25, 200, 520, 144]);
    }

    #[test]
    fn expansion_matches_closed_form() {
        for &x in &[0.0, 0.1, 1.0, 2.0, 3.7] {
            let j = CompressibleSymbol::new(x).matrix;
            let want = characteristic_coefficients(x);
            for got in [coefficients_by_expansion(&j), coefficients_by_leverrier(&j)] {
                for (a, b) in got.iter().zip(want) {
                    assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{got:?} vs {want:?}");
                }
            }
        }
    }
}
