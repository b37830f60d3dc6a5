use nalgebra::{Matrix4, Matrix6};
use num_complex::Complex64;

use super::symbol::{CompressibleSymbol, FullSymbol};

fn sort_by_re(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues of `J(ξ)` from the matrix itself, sorted by real part.
pub fn eigenvalues(xi_mag: f64) -> [Complex64; 4] {
    let ev = CompressibleSymbol::new(xi_mag).matrix.complex_eigenvalues();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    out.copy_from_slice(ev.as_slice());
    sort_by_re(&mut out);
    out
}

/// Roots of `a₀λ⁴ − a₁λ³ + a₂λ² − a₃λ + a₄` through the companion matrix.
pub fn companion_roots(a: [f64; 5]) -> [Complex64; 4] {
    assert!(a[0] != 0.0, "leading coefficient must be nonzero");
    // monic form λ⁴ + p₃λ³ + p₂λ² + p₁λ + p₀
    let p = [a[4] / a[0], -a[3] / a[0], a[2] / a[0], -a[1] / a[0]];
    let mut c = Matrix4::<f64>::zeros();
    for i in 1..4 {
        c[(i, i - 1)] = 1.0;
    }
    for (i, pi) in p.iter().enumerate() {
        c[(i, 3)] = -pi;
    }
    let ev = c.complex_eigenvalues();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    out.copy_from_slice(ev.as_slice());
    sort_by_re(&mut out);
    out
}

/// Eigenvalues of `A_ξ` via the complex Schur form, sorted by real part.
pub fn full_eigenvalues(xi: [f64; 3]) -> [Complex64; 6] {
    let m: Matrix6<Complex64> = FullSymbol::new(xi).matrix;
    let t = m.schur().unpack().1;
    let mut out = [Complex64::new(0.0, 0.0); 6];
    for (i, o) in out.iter_mut().enumerate() {
        *o = t[(i, i)];
    }
    sort_by_re(&mut out);
    out
}

pub fn min_real_part(ev: &[Complex64]) -> f64 {
    ev.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
}

/// Smallest achievable max-distance when pairing `a` with `b` one-to-one.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn go(a: &[Complex64], b: &mut Vec<Complex64>, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        let Some((head, rest)) = a.split_first() else {
            *best = worst;
            return;
        };
        for k in 0..b.len() {
            let z = b.swap_remove(k);
            go(rest, b, worst.max((head - z).norm()), best);
            b.push(z);
            let last = b.len() - 1;
            b.swap(k, last);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0.0, &mut best);
    best
}
