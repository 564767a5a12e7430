//! Exact characteristic polynomials and spectral tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Graph;

/// Characteristic polynomial `det(xI - A)` with exact integer coefficients.
///
/// Coefficients are stored in ascending order: `coefficients()[k]` multiplies
/// `x^k`. The polynomial is monic of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the polynomial at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Number of distinct complex roots, i.e. the degree of the square-free
    /// part `p / gcd(p, p')`.
    pub fn distinct_roots(&self) -> usize {
        let p = to_rational(&self.coeffs);
        let dp = derivative(&p);
        self.degree() - degree_of(&poly_gcd(p, dp))
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Faddeev–LeVerrier recursion over big integers. Every division by `k` is
/// exact because the coefficients are integers.
pub fn char_poly(g: &Graph) -> CharPoly {
    let n = g.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    // A * M for a 0/1 symmetric A: row v of the product sums rows of M.
    let a_times = |m: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        nbrs.iter()
            .map(|nb| {
                let mut row = vec![BigInt::zero(); n];
                for &w in nb {
                    for (r, x) in row.iter_mut().zip(&m[w]) {
                        *r += x;
                    }
                }
                row
            })
            .collect()
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a_times(&m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = a_times(&m);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    CharPoly { coeffs }
}

pub fn is_isospectral(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && char_poly(g) == char_poly(h)
}

/// True iff the characteristic polynomial is square-free.
pub fn spectrum_is_simple(g: &Graph) -> bool {
    let p = char_poly(g);
    p.distinct_roots() == p.degree()
}

type QPoly = Vec<BigRational>;

fn to_rational(c: &[BigInt]) -> QPoly {
    c.iter().cloned().map(BigRational::from_integer).collect()
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree with the zero polynomial reported as 0; only used on non-zero gcds.
fn degree_of(p: &QPoly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &QPoly) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn poly_rem(mut a: QPoly, b: &QPoly) -> QPoly {
    let lead = b.last().expect("non-zero divisor").clone();
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn poly_gcd(mut a: QPoly, mut b: QPoly) -> QPoly {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a
}
