//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` knows the coefficients of `x^0 .. x^(N-1)`
//! exactly and nothing beyond. Binary operations return the smaller of the two
//! operand orders; nothing is ever zero-padded on the way out.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient, always kept in lowest terms with a positive denominator.
pub type Coefficient = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("divisor has a zero constant term")]
    ZeroConstantDivisor,
    #[error("inner series of a composition must have a zero constant term")]
    NonzeroInnerConstant,
    #[error("reversion needs a zero constant term and a nonzero linear coefficient")]
    NotRevertible,
    #[error("square root needs constant term 1, found {0}")]
    SqrtConstant(String),
    #[error("index {index} is beyond the truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },
    #[error("coefficient of x^{index} is not an integer: {value}")]
    NonIntegral { index: usize, value: String },
    #[error("cannot divide by x^{shift}: coefficient of x^{index} is {value}")]
    NonZeroLowTerm {
        shift: usize,
        index: usize,
        value: String,
    },
    #[error("order {requested} requested but only {available} coefficients are known")]
    InsufficientOrder { requested: usize, available: usize },
    #[error("unknown series name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(v))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Coefficient>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            values
                .into_iter()
                .map(|v| Coefficient::from_integer(v.into()))
                .collect(),
        )
    }

    /// A polynomial given by its low coefficients, known exactly to `order`.
    ///
    /// Coefficients past the given ones are genuinely zero, so filling them in is exact.
    pub fn polynomial(low: &[i64], order: usize) -> Self {
        assert!(order >= 1, "order must be at least 1");
        let coeffs = (0..order)
            .map(|i| low.get(i).map_or_else(Coefficient::zero, |&v| int(v)))
            .collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::polynomial(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Self::polynomial(&[1], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::polynomial(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Coefficient> {
        self.coeffs.get(n).ok_or(SeriesError::IndexBeyondOrder {
            index: n,
            order: self.order(),
        })
    }

    pub fn constant(&self) -> &Coefficient {
        &self.coeffs[0]
    }

    /// Every retained coefficient as an integer, or the first one that is not.
    pub fn assert_integral(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegral {
                        index,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(SeriesError::Empty);
        }
        if order > self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    pub fn scale(&self, factor: &Coefficient) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `x^k * self`; the product is known to `order + k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![Coefficient::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `self / x^k`, valid only when the low `k` coefficients are exactly zero.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k >= self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: k + 1,
                available: self.order(),
            });
        }
        if let Some((index, value)) = self.coeffs[..k]
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
        {
            return Err(SeriesError::NonZeroLowTerm {
                shift: k,
                index,
                value: value.to_string(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `self(x^k)`. All indices below `k * order` are determined.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let mut coeffs = vec![Coefficient::zero(); k * self.order()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[k * i] = c.clone();
        }
        Self { coeffs }
    }

    /// Formal derivative; loses one order of precision.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(SeriesError::InsufficientOrder {
                requested: 2,
                available: self.order(),
            });
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        })
    }

    fn integer_coeffs(&self, order: usize) -> Option<Vec<BigInt>> {
        self.coeffs[..order]
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn from_integer_vec(values: Vec<BigInt>) -> Self {
        Self {
            coeffs: values.into_iter().map(Coefficient::from_integer).collect(),
        }
    }

    fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, Coefficient::zero());
        Self { coeffs }
    }

    fn checked_truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Quotient `self / divisor`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.constant();
        if b0.is_zero() {
            return Err(SeriesError::ZeroConstantDivisor);
        }
        let order = self.order().min(divisor.order());
        if b0.abs().is_one() {
            if let (Some(a), Some(b)) = (self.integer_coeffs(order), divisor.integer_coeffs(order))
            {
                return Ok(Self::from_integer_vec(integer_div(&a, &b)));
            }
        }
        let inv_b0 = b0.recip();
        let mut q: Vec<Coefficient> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                let bk = &divisor.coeffs[k];
                if !bk.is_zero() {
                    acc -= bk * &q[n - k];
                }
            }
            q.push(acc * &inv_b0);
        }
        Ok(Self { coeffs: q })
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// `self(inner(x))`, evaluated by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.constant().is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.checked_truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse, by Newton iteration on `f(g) = x`.
    pub fn revert(&self) -> Result<Self> {
        let order = self.order();
        if order < 2 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotRevertible);
        }
        let mut g = Self {
            coeffs: vec![Coefficient::zero(), self.coeffs[1].recip()],
        };
        let mut prec = 2;
        while prec < order {
            prec = (2 * prec).min(order);
            let g_p = g.padded(prec);
            let f_p = self.checked_truncate(prec);
            // f' is known to one order less than f; the top slot of f'(g) never
            // meets a nonzero coefficient of the residual, so a zero there is exact.
            let df = f_p.derivative()?.padded(prec);
            let residual = &f_p.compose(&g_p)? - &Self::x(prec);
            let slope = df.compose(&g_p)?;
            g = &g_p - &residual.div(&slope)?;
        }
        g.truncate(order)
    }

    /// Square root with constant term 1, by Newton iteration `s <- (s + a/s) / 2`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.constant().is_one() {
            return Err(SeriesError::SqrtConstant(self.constant().to_string()));
        }
        let order = self.order();
        let half = Coefficient::new(BigInt::one(), BigInt::from(2));
        let mut s = Self::one(1);
        let mut prec = 1;
        while prec < order {
            prec = (2 * prec).min(order);
            let s_p = s.padded(prec);
            let q = self.checked_truncate(prec).div(&s_p)?;
            s = (&s_p + &q).scale(&half);
        }
        Ok(s)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

// Integer fast paths: gcd normalisation dominates rational arithmetic, and
// every generating function of interest has integer coefficients.

fn integer_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let order = a.len();
    let mut out = vec![BigInt::zero(); order];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..order - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Long division by an integer series whose constant term is +1 or -1.
fn integer_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let negate = b[0].is_negative();
    let mut q: Vec<BigInt> = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let mut acc = a[n].clone();
        for k in 1..=n {
            if !b[k].is_zero() {
                acc -= &b[k] * &q[n - k];
            }
        }
        q.push(if negate { -acc } else { acc });
    }
    q
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        if let (Some(a), Some(b)) = (self.integer_coeffs(order), rhs.integer_coeffs(order)) {
            return TruncatedSeries::from_integer_vec(integer_mul(&a, &b));
        }
        let mut coeffs = vec![Coefficient::zero(); order];
        for (i, a) in self.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order())
    }
}

/// The generating functions that recur throughout the symmetric-path identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSeries {
    /// `C(x)`, Dyck paths (Catalan numbers).
    Catalan,
    /// `M(x)`, Motzkin paths.
    Motzkin,
    /// `R(x)`, Schröder paths.
    Schroeder,
    /// `B(x) = 1/sqrt(1-4x)`, central binomial coefficients.
    CentralBinomial,
    /// `d(x)`, symmetric Dyck paths.
    SymmetricDyck,
    /// `m(x)`, symmetric Motzkin paths.
    SymmetricMotzkin,
    /// `s(x)`, symmetric Schröder paths.
    SymmetricSchroeder,
}

impl NamedSeries {
    pub const ALL: [NamedSeries; 7] = [
        Self::Catalan,
        Self::Motzkin,
        Self::Schroeder,
        Self::CentralBinomial,
        Self::SymmetricDyck,
        Self::SymmetricMotzkin,
        Self::SymmetricSchroeder,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Catalan => "C",
            Self::Motzkin => "M",
            Self::Schroeder => "R",
            Self::CentralBinomial => "B",
            Self::SymmetricDyck => "d",
            Self::SymmetricMotzkin => "m",
            Self::SymmetricSchroeder => "s",
        }
    }
}

impl FromStr for NamedSeries {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.symbol() == s)
            .ok_or_else(|| SeriesError::UnknownName(s.to_string()))
    }
}

/// `(1 - sqrt(radicand)) / (2 x^shift)`, computed at `order + shift` and shifted down.
fn half_shifted(numerator: &TruncatedSeries, shift: usize) -> Result<TruncatedSeries> {
    let half = Coefficient::new(BigInt::one(), BigInt::from(2));
    Ok(numerator.shift_down(shift)?.scale(&half))
}

/// `(sqrt(p/q) - 1) / (2x)` for polynomials `p`, `q` with `p(0) = q(0)`.
fn symmetric_form(p: &[i64], q: &[i64], order: usize) -> Result<TruncatedSeries> {
    let work = order + 1;
    let ratio = TruncatedSeries::polynomial(p, work).div(&TruncatedSeries::polynomial(q, work))?;
    let root = ratio.sqrt()?;
    half_shifted(&(&root - &TruncatedSeries::one(work)), 1)
}

/// Closed-form expansion of one of the named generating functions to `order` terms.
///
/// Fails with [`SeriesError::NonIntegral`] if any coefficient comes out fractional.
pub fn named_series(name: NamedSeries, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(SeriesError::Empty);
    }
    let series = match name {
        NamedSeries::Catalan => {
            let work = order + 1;
            let root = TruncatedSeries::polynomial(&[1, -4], work).sqrt()?;
            half_shifted(&(&TruncatedSeries::one(work) - &root), 1)?
        }
        NamedSeries::Motzkin => {
            let work = order + 2;
            let root = TruncatedSeries::polynomial(&[1, -2, -3], work).sqrt()?;
            half_shifted(&(&TruncatedSeries::polynomial(&[1, -1], work) - &root), 2)?
        }
        NamedSeries::Schroeder => {
            let work = order + 1;
            let root = TruncatedSeries::polynomial(&[1, -6, 1], work).sqrt()?;
            half_shifted(&(&TruncatedSeries::polynomial(&[1, -1], work) - &root), 1)?
        }
        NamedSeries::CentralBinomial => TruncatedSeries::polynomial(&[1, -4], order)
            .sqrt()?
            .recip()?,
        NamedSeries::SymmetricDyck => symmetric_form(&[1, 2], &[1, -2], order)?,
        NamedSeries::SymmetricMotzkin => symmetric_form(&[1, 1], &[1, -3], order)?,
        // (x^2 - 2x - 1) / (x^2 + 2x - 1), both numerator and denominator negated.
        NamedSeries::SymmetricSchroeder => symmetric_form(&[1, 2, -1], &[1, -2, -1], order)?,
    };
    series.assert_integral()?;
    Ok(series)
}
