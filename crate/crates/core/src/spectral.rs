//! Exact signless-Laplacian characteristic polynomials.
//!
//! `det(kI - Q)` is evaluated at `k = 0..=n` with fraction-free (Bareiss)
//! elimination, then the monic degree-`n` polynomial through those points is
//! recovered exactly from its forward differences. Nothing on the exact path
//! touches floating point; [`q_spectrum`] is for display and cross-checks.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Coefficients `p_0..p_n` of `det(λI - Q(G)) = Σ p_j λ^{n-j}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    /// Wraps a coefficient vector, highest power first.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a polynomial has at least one coefficient"
        );
        QPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Degree, which equals the vertex count of the source graph.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `p_j`, the coefficient of `λ^{n-j}`.
    pub fn coeff(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "QPolynomial({})", parts.join(", "))
    }
}

impl fmt::Display for QPolynomial {
    /// Renders as `λ^4 - 6λ^3 + 9λ^2 - 4λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - j;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || power == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "λ")?,
                p => write!(f, "λ^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    coeffs: Vec<String>,
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            n: self.degree(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        if raw.coeffs.len() != raw.n + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                raw.n + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPolynomial { coeffs })
    }
}

/// `Q(G) = D(G) + A(G)` as a dense integer matrix.
pub fn signless_laplacian(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut q = vec![vec![0i64; n]; n];
    for (u, v) in g.edges() {
        q[u][v] = 1;
        q[v][u] = 1;
        q[u][u] += 1;
        q[v][v] += 1;
    }
    q
}

/// Exact characteristic polynomial `det(λI - Q(G))`.
pub fn q_polynomial(g: &Graph) -> QPolynomial {
    let poly = char_polynomial(&signless_laplacian(g));
    debug_assert!(poly.is_monic(), "characteristic polynomial must be monic");
    poly
}

/// `det(λI - Q(G))` with the row and column of `v` deleted. Two vertices
/// with equal minors are Q-cospectral vertices: rooting the same graph at
/// either gives Q-cospectral results.
pub fn vertex_deleted_polynomial(g: &Graph, v: usize) -> QPolynomial {
    let q = signless_laplacian(g);
    let minor: Vec<Vec<i64>> = q
        .iter()
        .enumerate()
        .filter(|&(r, _)| r != v)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != v)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    char_polynomial(&minor)
}

/// `det(λI - M)` for a square integer matrix, from exact values at
/// `λ = 0..=n`.
fn char_polynomial(m: &[Vec<i64>]) -> QPolynomial {
    let n = m.len();
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|k| {
            let shifted: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, &x)| if r == c { k - x } else { -x })
                        .collect()
                })
                .collect();
            determinant(&shifted)
        })
        .collect();
    interpolate_unit_points(&values)
}

/// Determinant by Bareiss elimination; runs in `i128` and restarts in big
/// integers if any intermediate would overflow.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let wide: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(wide) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                // exact by Sylvester's identity
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Recovers the integer polynomial of degree `values.len() - 1` with
/// `p(k) = values[k]`, returned highest power first.
///
/// The k-th forward difference at 0 divided by `k!` is the coefficient of the
/// falling factorial `x(x-1)…(x-k+1)`; both steps are exact for integer
/// polynomials.
fn interpolate_unit_points(values: &[BigInt]) -> QPolynomial {
    let n = values.len() - 1;
    let mut diffs = values.to_vec();
    let mut falling = Vec::with_capacity(n + 1);
    let mut factorial = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            factorial *= k;
        }
        debug_assert!((&diffs[0] % &factorial).is_zero());
        falling.push(&diffs[0] / &factorial);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    // ascending-power accumulator; basis holds x(x-1)…(x-k+1)
    let mut acc = vec![BigInt::zero(); n + 1];
    let mut basis = vec![BigInt::one()];
    for (k, a) in falling.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            acc[i] += a * b;
        }
        // basis *= (x - k)
        let mut next = vec![BigInt::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * k;
        }
        basis = next;
    }
    acc.reverse();
    QPolynomial { coeffs: acc }
}

/// Exact equality of Q-polynomials; never a floating comparison.
pub fn are_q_cospectral(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let sq = |x: &Graph| x.degrees().iter().map(|d| d * d).sum::<usize>();
    // trace(Q²) = Σ d² + Σ d
    if sq(g) != sq(h) {
        return false;
    }
    q_polynomial(g) == q_polynomial(h)
}

/// Approximate eigenvalues of `Q(G)`, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumApprox {
    pub eigenvalues: Vec<f64>,
}

impl SpectrumApprox {
    /// Eigenvalues rounded to four decimals for display.
    pub fn rounded(&self) -> Vec<String> {
        self.eigenvalues
            .iter()
            .map(|x| {
                let s = format!("{:.4}", x);
                if s == "-0.0000" {
                    "0.0000".to_string()
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }
}

pub fn q_spectrum(g: &Graph) -> SpectrumApprox {
    let n = g.order();
    let q = signless_laplacian(g);
    let m = DMatrix::from_fn(n, n, |r, c| q[r][c] as f64);
    let mut eigenvalues: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    SpectrumApprox { eigenvalues }
}

/// Product of two polynomials (exact convolution).
pub fn poly_multiply(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    QPolynomial { coeffs: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Graph {
        Graph::from_edges(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn laplacian_of_k() {
        let q = signless_laplacian(&k());
        assert_eq!(
            q,
            vec![
                vec![1, 0, 1, 0],
                vec![0, 1, 1, 0],
                vec![1, 1, 3, 1],
                vec![0, 0, 1, 1],
            ]
        );
        assert_eq!(signless_laplacian(&Graph::empty(2)), vec![vec![0, 0]; 2]);
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(signless_laplacian(&e), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn polynomial_of_k() {
        let p = q_polynomial(&k());
        assert_eq!(p, QPolynomial::from_i64(&[1, -6, 9, -4, 0]));
        assert_eq!(p.to_string(), "λ^4 - 6λ^3 + 9λ^2 - 4λ");
        let kt = Graph::from_edges(4, &[(0, 2), (0, 3), (2, 3)]).unwrap();
        assert_eq!(q_polynomial(&kt), p);
        assert!(are_q_cospectral(&k(), &kt));
    }

    #[test]
    fn polynomial_of_empty() {
        for n in 0..5 {
            let p = q_polynomial(&Graph::empty(n));
            let mut want = vec![0i64; n + 1];
            want[0] = 1;
            assert_eq!(p, QPolynomial::from_i64(&want));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(k, _)| k != c)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * cofactor(&minor)
                })
                .sum()
        }
        let cases = vec![
            vec![vec![0, 1, 2], vec![3, 0, 5], vec![6, 7, 0]],
            vec![vec![0, 0], vec![0, 0]],
            vec![
                vec![2, -1, 0, 4],
                vec![-1, 0, 3, 1],
                vec![0, 3, 0, 2],
                vec![4, 1, 2, 0],
            ],
        ];
        for m in cases {
            assert_eq!(determinant(&m), BigInt::from(cofactor(&m)));
        }
    }

    #[test]
    fn big_path_agrees_with_i128() {
        let m = vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        let big = bareiss_big(
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        assert_eq!(big, determinant(&m));
    }

    #[test]
    fn multiply() {
        let x = QPolynomial::from_i64(&[1, 0]);
        assert_eq!(poly_multiply(&x, &x), QPolynomial::from_i64(&[1, 0, 0]));
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let both = k().disjoint_union(&e);
        assert_eq!(
            poly_multiply(&q_polynomial(&k()), &q_polynomial(&e)),
            q_polynomial(&both)
        );
        assert!(poly_multiply(&q_polynomial(&k()), &q_polynomial(&e)).is_monic());
    }

    #[test]
    fn spectrum_of_edge() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = q_spectrum(&e);
        assert!((s.eigenvalues[0] - 0.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 2.0).abs() < 1e-12);
        assert_eq!(s.rounded(), vec!["0.0000", "2.0000"]);
    }

    #[test]
    fn json_shape() {
        let p = q_polynomial(&k());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":4,"coeffs":["1","-6","9","-4","0"]}"#);
        let back: QPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<QPolynomial>(r#"{"n":2,"coeffs":["1"]}"#).is_err());
    }
}
