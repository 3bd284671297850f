//! Eigenvalues of a real 3×3 matrix from its characteristic cubic.

use std::f64::consts::PI;

use num_complex::Complex64;

pub type Matrix3 = [[f64; 3]; 3];

pub fn trace(m: &Matrix3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn determinant(m: &Matrix3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sum of the three principal 2×2 minors.
fn principal_minors(m: &Matrix3) -> f64 {
    (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
}

/// Largest absolute entry.
pub fn max_norm(m: &Matrix3) -> f64 {
    m.iter().flatten().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `det(M − λI)` evaluated in complex arithmetic by cofactor expansion.
pub fn char_det(m: &Matrix3, lambda: Complex64) -> Complex64 {
    let a = |r: usize, c: usize| {
        let v = Complex64::new(m[r][c], 0.0);
        if r == c {
            v - lambda
        } else {
            v
        }
    };
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
        - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn is_triangular(m: &Matrix3) -> bool {
    let upper = m[1][0] == 0.0 && m[2][0] == 0.0 && m[2][1] == 0.0;
    let lower = m[0][1] == 0.0 && m[0][2] == 0.0 && m[1][2] == 0.0;
    upper || lower
}

/// Orders eigenvalues by ascending real part, then ascending imaginary part.
pub fn sort_eigenvalues(eigs: &mut [Complex64; 3]) {
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// The three eigenvalues of `m`, sorted with [`sort_eigenvalues`].
///
/// Triangular matrices (including diagonal ones) return their diagonal
/// exactly. Otherwise the monic characteristic cubic is solved in closed form
/// and each real root is refined by Newton's method.
pub fn general_eigenvalues(m: &Matrix3) -> [Complex64; 3] {
    let mut out = if is_triangular(m) {
        [m[0][0], m[1][1], m[2][2]].map(|v| Complex64::new(v, 0.0))
    } else {
        // λ³ + aλ² + bλ + c
        let a = -trace(m);
        let b = principal_minors(m);
        let c = -determinant(m);
        cubic_roots(a, b, c)
    };
    sort_eigenvalues(&mut out);
    out
}

fn polish(a: f64, b: f64, c: f64, mut r: f64) -> f64 {
    let eval = |t: f64| ((t + a) * t + b) * t + c;
    let mut fr = eval(r);
    for _ in 0..8 {
        let d = (3.0 * r + 2.0 * a) * r + b;
        if d == 0.0 || fr == 0.0 {
            break;
        }
        let next = r - fr / d;
        let fnext = eval(next);
        if fnext.abs() >= fr.abs() {
            break;
        }
        r = next;
        fr = fnext;
    }
    r
}

/// Roots of the monic cubic `λ³ + aλ² + bλ + c`.
pub fn cubic_roots(a: f64, b: f64, c: f64) -> [Complex64; 3] {
    let shift = a / 3.0;
    // depressed form t³ + pt + q with λ = t − a/3
    let p = b - a * shift;
    let q = 2.0 * shift * shift * shift - shift * b + c;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if disc > 0.0 {
        // one real root and a conjugate pair
        let sq = disc.sqrt();
        // pick the sign that avoids cancellation
        let big = if half_q >= 0.0 {
            -half_q - sq
        } else {
            -half_q + sq
        };
        let u = big.cbrt();
        let v = if u == 0.0 { 0.0 } else { -third_p / u };
        let real = polish(a, b, c, u + v - shift);
        // deflate: λ² + (a + r)λ + (b + (a + r)r)
        let lin = a + real;
        let cst = b + lin * real;
        let rad = Complex64::new(lin * lin - 4.0 * cst, 0.0).sqrt();
        let r1 = (Complex64::new(-lin, 0.0) + rad) / 2.0;
        let r2 = (Complex64::new(-lin, 0.0) - rad) / 2.0;
        [Complex64::new(real, 0.0), r1, r2]
    } else if third_p == 0.0 {
        // disc <= 0 and p = 0 forces q = 0: triple root
        let r = polish(a, b, c, -shift);
        [Complex64::new(r, 0.0); 3]
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        [0.0, 1.0, 2.0].map(|k: f64| {
            let t = m * (theta - 2.0 * PI * k / 3.0).cos();
            Complex64::new(polish(a, b, c, t - shift), 0.0)
        })
    }
}
