//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants (Higham 2005), specialised to small fixed-size matrices.

use nalgebra::{ComplexField, DMatrix, SMatrix};

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

pub fn norm1<T, const N: usize>(a: &SMatrix<T, N, N>) -> f64
where
    T: ComplexField<RealField = f64> + Copy,
{
    a.column_iter()
        .map(|c| c.iter().map(|x| x.modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn real<T: ComplexField<RealField = f64>>(v: f64) -> T {
    T::from_real(v)
}

/// `(U, V)` of the `[m/m]` Padé approximant for odd/even parts.
fn pade_low<T, const N: usize>(a: &SMatrix<T, N, N>, b: &[f64]) -> (SMatrix<T, N, N>, SMatrix<T, N, N>)
where
    T: ComplexField<RealField = f64> + Copy,
{
    let id = SMatrix::<T, N, N>::identity();
    let a2 = a * a;
    let mut pow = id;
    let mut u_even = id * real::<T>(b[1]);
    let mut v = id * real::<T>(b[0]);
    let m = b.len() - 1;
    for k in 1..=m / 2 {
        pow *= a2;
        u_even += pow * real::<T>(b[2 * k + 1]);
        v += pow * real::<T>(b[2 * k]);
    }
    (a * u_even, v)
}

fn pade13<T, const N: usize>(a: &SMatrix<T, N, N>) -> (SMatrix<T, N, N>, SMatrix<T, N, N>)
where
    T: ComplexField<RealField = f64> + Copy,
{
    let b = |k: usize| real::<T>(B13[k]);
    let id = SMatrix::<T, N, N>::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let inner_u = a6 * b(13) + a4 * b(11) + a2 * b(9);
    let u = a * (a6 * inner_u + a6 * b(7) + a4 * b(5) + a2 * b(3) + id * b(1));
    let inner_v = a6 * b(12) + a4 * b(10) + a2 * b(8);
    let v = a6 * inner_v + a6 * b(6) + a4 * b(4) + a2 * b(2) + id * b(0);
    (u, v)
}

/// `e^A` for a small dense matrix.
pub fn expm<T, const N: usize>(a: &SMatrix<T, N, N>) -> SMatrix<T, N, N>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let norm = norm1(a);
    if norm == 0.0 {
        return SMatrix::identity();
    }
    for (m, theta) in THETA {
        if norm <= theta {
            let b: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let (u, v) = pade_low(a, b);
            return solve_pade(u, v);
        }
    }
    let squarings = ((norm / THETA_13).log2().ceil()).max(0.0) as i32;
    let scaled = a * real::<T>(0.5f64.powi(squarings));
    let (u, v) = pade13(&scaled);
    let mut r = solve_pade(u, v);
    for _ in 0..squarings {
        r = r * r;
    }
    r
}

fn solve_pade<T, const N: usize>(u: SMatrix<T, N, N>, v: SMatrix<T, N, N>) -> SMatrix<T, N, N>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let den = DMatrix::from_column_slice(N, N, (v - u).as_slice());
    let num = DMatrix::from_column_slice(N, N, (v + u).as_slice());
    let sol = den
        .lu()
        .solve(&num)
        .expect("Pade denominator is nonsingular for the selected degree");
    SMatrix::from_column_slice(sol.as_slice())
}
