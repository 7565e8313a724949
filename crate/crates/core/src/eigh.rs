//! Dense Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix, implicit-shift QL with eigenvector accumulation, then
//! back-transformation.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const MAX_SWEEPS: usize = 50;

/// Row-major square complex matrix, Hermitian by convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, Complex64::new(x, 0.0));
        }
        m
    }

    /// Fill from the upper triangle; the lower triangle is the conjugate.
    pub fn from_upper<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = if i == j {
                    Complex64::new(f(i, j).re, 0.0)
                } else {
                    f(i, j)
                };
                m.data[i * n + j] = v;
                m.data[j * n + i] = v.conj();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |A_ij − conj A_ji|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> Self {
        HermitianMatrix {
            n: self.n,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }

    /// `Σ |A_ij|²` = Tr A² for Hermitian A.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Eigenvectors stored one after another: vector m occupies
/// `[m·n, (m+1)·n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvectors {
    n: usize,
    data: Vec<Complex64>,
}

impl Eigenvectors {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vector(&self, m: usize) -> &[Complex64] {
        &self.data[m * self.n..(m + 1) * self.n]
    }

    /// `⟨v_a|u⟩` for every eigenvector a.
    pub fn project(&self, u: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|a| {
                self.vector(a)
                    .iter()
                    .zip(u)
                    .map(|(v, x)| v.conj() * x)
                    .sum()
            })
            .collect()
    }
}

/// Eigenvalues ascending with matching eigenvectors.
pub fn eigh(h: &HermitianMatrix) -> Result<(Vec<f64>, Eigenvectors)> {
    let n = h.n;
    if n == 0 {
        return Ok((vec![], Eigenvectors { n: 0, data: vec![] }));
    }
    let (d, e, reflectors) = tridiagonalize(h);

    // make the off-diagonal real: T = D T_r D*, δ_{i+1} = δ_i e_i/|e_i|
    let mut delta = vec![Complex64::new(1.0, 0.0); n];
    let mut off = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let r = e[i].norm();
        off[i] = r;
        delta[i + 1] = if r > 0.0 {
            delta[i] * (e[i] / r)
        } else {
            delta[i]
        };
    }
    let mut d = d;
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut off, &mut zt, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&j| d[j]).collect();

    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (m, &j) in order.iter().enumerate() {
        let col = &mut data[m * n..(m + 1) * n];
        for k in 0..n {
            col[k] = delta[k] * zt[j * n + k];
        }
        for (k, v) in reflectors.iter().enumerate().rev() {
            let x = &mut col[k + 1..];
            let s: Complex64 = v.iter().zip(x.iter()).map(|(a, b)| a.conj() * b).sum();
            let s2 = s * 2.0;
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi -= vi * s2;
            }
        }
    }
    Ok((values, Eigenvectors { n, data }))
}

/// Diagonal, complex subdiagonal (`e[i]` couples i and i+1) and the unit
/// Householder vectors (`reflectors[k]` acts on components `k+1..`).
fn tridiagonalize(h: &HermitianMatrix) -> (Vec<f64>, Vec<Complex64>, Vec<Vec<Complex64>>) {
    let n = h.n;
    let mut a = h.data.clone();
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<Complex64> = (0..m).map(|i| a[(k + 1 + i) * n + k]).collect();
        let tail: f64 = v[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            e[k] = v[0];
            reflectors.push(vec![zero; m]);
            continue;
        }
        let xnorm = (tail + v[0].norm_sqr()).sqrt();
        let ph = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -ph * xnorm;
        v[0] -= alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vn;
        }
        e[k] = alpha;

        // p = 2 B v on the trailing block
        let off = k + 1;
        let mut p = vec![zero; m];
        for i in 0..m {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            let s: Complex64 = row.iter().zip(&v).map(|(b, x)| b * x).sum();
            p[i] = s * 2.0;
        }
        let kk: f64 = v.iter().zip(&p).map(|(x, y)| (x.conj() * y).re).sum();
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kk).collect();
        for i in 0..m {
            let vi = v[i];
            let wi = w[i];
            let row = &mut a[(off + i) * n + off..(off + i) * n + n];
            for ((b, vj), wj) in row.iter_mut().zip(&v).zip(&w) {
                *b -= vi * wj.conj() + wi * vj.conj();
            }
        }
        reflectors.push(v);
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    (d, e, reflectors)
}

/// Implicit QL on a real symmetric tridiagonal matrix. `zt` holds the
/// eigenvectors as rows.
fn tql2(d: &mut [f64], e: &mut [f64], zt: &mut [f64], n: usize) -> Result<()> {
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::ConvergenceFailure(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (lo, hi) = zt.split_at_mut((i + 1) * n);
                let zi = &mut lo[i * n..];
                let zi1 = &mut hi[..n];
                for k in 0..n {
                    let f = zi1[k];
                    zi1[k] = s * zi[k] + c * f;
                    zi[k] = c * zi[k] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// `max_m ‖H v_m − λ_m v_m‖₂` over the listed levels.
pub fn residual(
    h: &HermitianMatrix,
    values: &[f64],
    vectors: &Eigenvectors,
    levels: &[usize],
) -> f64 {
    let mut worst = 0.0f64;
    for &m in levels {
        let v = vectors.vector(m);
        let hv = h.mul_vec(v);
        let r: f64 = hv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b * values[m]).norm_sqr())
            .sum();
        worst = worst.max(r.sqrt());
    }
    worst
}

/// `max |V*V − I|`.
pub fn orthonormality_defect(vectors: &Eigenvectors) -> f64 {
    let n = vectors.n;
    let mut worst = 0.0f64;
    for a in 0..n {
        let pa = vectors.project(vectors.vector(a));
        for (b, z) in pa.iter().enumerate() {
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((z - target).norm());
        }
    }
    worst
}
