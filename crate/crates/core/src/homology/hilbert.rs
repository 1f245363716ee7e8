//! Hilbert series, Hilbert polynomials and Krull dimension.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

use super::module::PresentedModule;
use super::resolution::betti_table;

/// `numerator(q) / (1 - q)^denominator_exponent`, numerator stored from `q^low` upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    pub low: i64,
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
}

fn trim(low: &mut i64, c: &mut Vec<i64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
    let lead_zeros = c.iter().take_while(|&&x| x == 0).count();
    c.drain(..lead_zeros);
    *low += lead_zeros as i64;
    if c.is_empty() {
        *low = 0;
    }
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Cancel every `(1 - q)` factor shared by numerator and denominator.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut e = self.denominator_exponent;
        while e > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // divide by (1 - q): quotient coefficients are partial sums
            let mut acc = 0;
            let mut q = Vec::with_capacity(num.len() - 1);
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = q;
            e -= 1;
        }
        let mut low = self.low;
        trim(&mut low, &mut num);
        HilbertSeries { low, numerator: num, denominator_exponent: e }
    }

    /// Coefficient of `q^d` in the power series expansion.
    pub fn coefficient(&self, d: i64) -> i64 {
        let e = self.denominator_exponent as i64;
        let mut total: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            let j = self.low + k as i64;
            if d < j {
                break;
            }
            let m = d - j;
            let ways = if e == 0 { i128::from(m == 0) } else { binom(m + e - 1, e - 1) };
            total += c as i128 * ways;
        }
        total as i64
    }

    /// Numerator as a display string in `q`.
    pub fn numerator_string(&self) -> String {
        poly_string(self.low, &self.numerator, "q")
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denominator_exponent {
            0 => write!(f, "{}", self.numerator_string()),
            1 => write!(f, "({})/(1-q)", self.numerator_string()),
            e => write!(f, "({})/(1-q)^{e}", self.numerator_string()),
        }
    }
}

fn poly_string(low: i64, c: &[i64], var: &str) -> String {
    let mut s = String::new();
    for (k, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let e = low + k as i64;
        let mag = a.abs();
        if s.is_empty() {
            if a < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if a < 0 { " - " } else { " + " });
        }
        match e {
            0 => s.push_str(&mag.to_string()),
            _ => {
                if mag != 1 {
                    s.push_str(&format!("{mag}*"));
                }
                if e == 1 {
                    s.push_str(var);
                } else {
                    s.push_str(&format!("{var}^{e}"));
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Generalised binomial `C(x, k)` for any integer `x` and `k >= 0`.
pub(crate) fn binom(x: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
        let g = gcd(num.abs(), den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// A polynomial `Σ a_i C(t, i)`, integer valued on the integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NumericalPolynomial {
    pub coeffs: Vec<i64>,
}

impl NumericalPolynomial {
    /// Binomial-basis coefficients from values `P(0), ..., P(deg)` by forward differences.
    pub fn from_values(values: &[i128]) -> Self {
        let mut row: Vec<i128> = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        while !row.is_empty() {
            coeffs.push(row[0] as i64);
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let mut p = NumericalPolynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().enumerate().map(|(i, &a)| a as i128 * binom(t, i as i64)).sum::<i128>() as i64
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients in the monomial basis `1, t, t^2, ...`.
    pub fn monomial_coefficients(&self) -> Vec<BigRational> {
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            // C(t, i) = t (t-1) ... (t-i+1) / i!
            let mut poly = vec![BigRational::one()];
            for k in 0..i {
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c.clone();
                    next[d] -= c.clone() * BigRational::from_integer(BigInt::from(k));
                }
                poly = next;
            }
            let fact: BigInt = (1..=i).map(BigInt::from).product();
            for (d, c) in poly.into_iter().enumerate() {
                out[d] += c * BigRational::from_integer(BigInt::from(a)) / BigRational::from_integer(fact.clone());
            }
        }
        out
    }
}

impl fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.monomial_coefficients();
        let mut s = String::new();
        for (d, c) in cs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            match d {
                0 => s.push_str(&coef),
                _ => {
                    if !mag.is_one() {
                        s.push_str(&coef);
                        s.push('*');
                    }
                    s.push('t');
                    if d > 1 {
                        s.push_str(&format!("^{d}"));
                    }
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// The Hilbert series from the Betti numbers: `Σ_i (-1)^i Σ_j b_ij q^j / (1-q)^n`.
pub fn hilbert_series(m: &PresentedModule) -> Result<HilbertSeries> {
    if !m.ring().is_standard_graded() {
        return Err(Error::NonStandardGrading);
    }
    let b = betti_table(m);
    let n = m.ring().nvars();
    let Some(low) = b.min_degree() else {
        return Ok(HilbertSeries { low: 0, numerator: Vec::new(), denominator_exponent: n });
    };
    let high = b.entries.keys().map(|(_, j)| *j).max().unwrap();
    let mut num = vec![0i64; (high - low + 1) as usize];
    for (&(i, j), &v) in &b.entries {
        let s = if i % 2 == 0 { 1 } else { -1 };
        num[(j - low) as usize] += s * v as i64;
    }
    let mut low = low;
    trim(&mut low, &mut num);
    Ok(HilbertSeries { low, numerator: num, denominator_exponent: n })
}

/// The polynomial agreeing with `dim M_l` for all large `l`.
pub fn hilbert_polynomial(m: &PresentedModule) -> Result<NumericalPolynomial> {
    Ok(hilbert_polynomial_of_series(&hilbert_series(m)?))
}

pub(crate) fn hilbert_polynomial_of_series(s: &HilbertSeries) -> NumericalPolynomial {
    let r = s.reduced();
    let e = r.denominator_exponent as i64;
    if e == 0 || r.is_zero() {
        return NumericalPolynomial::default();
    }
    // P(t) = Σ_j h_j C(t - j + e - 1, e - 1) as a polynomial identity
    let values: Vec<i128> = (0..e)
        .map(|t| {
            r.numerator
                .iter()
                .enumerate()
                .map(|(k, &c)| c as i128 * binom(t - (r.low + k as i64) + e - 1, e - 1))
                .sum()
        })
        .collect();
    NumericalPolynomial::from_values(&values)
}

/// Dimension of the support of `M` in affine space; `-1` for the zero module.
pub fn krull_dimension(m: &PresentedModule) -> Result<i64> {
    if m.ring().is_standard_graded() {
        let s = hilbert_series(m)?.reduced();
        return Ok(if s.is_zero() { -1 } else { s.denominator_exponent as i64 });
    }
    Ok(krull_from_leads(m))
}

/// Dimension read off the lead terms: the largest set of variables free of every lead monomial
/// of some component.
pub(crate) fn krull_from_leads(m: &PresentedModule) -> i64 {
    let n = m.ring().nvars();
    let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); m.num_generators()];
    for g in m.gb() {
        leads[g.terms[0].comp].push(g.terms[0].mono.clone());
    }
    let mut best = -1i64;
    for ls in &leads {
        if ls.iter().any(|l| l.is_one()) {
            continue;
        }
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as i64;
            if size <= best {
                continue;
            }
            let avoids = ls.iter().all(|l| l.exponents().iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
            if avoids {
                best = size;
            }
        }
    }
    best
}
