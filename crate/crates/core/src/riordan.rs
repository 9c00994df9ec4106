//! Riordan arrays `(g, f)` and the Riordan group.
//!
//! An array is stored as its generating pair; entries `[x^n] g(x) f(x)^k` are
//! extracted on demand from the column series `g f^k`, which are built once per
//! array and shared between readers.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{named_series, NamedSeries, SeriesError, TruncatedSeries};

/// Truncation order used for every array unless a caller asks for more.
pub const DEFAULT_ORDER: usize = 41;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("not a Riordan group element: {0}")]
    NotGroupMember(&'static str),
    #[error("entry ({n}, {k}) is beyond truncation order {order}")]
    IndexOutOfRange { n: usize, k: usize, order: usize },
    #[error("entry ({n}, {k}) is not an integer: {value}")]
    NonIntegral { n: usize, k: usize, value: String },
    #[error("{count} rows requested but the array is only known to order {order}")]
    TooManyRows { count: usize, order: usize },
    #[error("unknown array `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, RiordanError>;

pub struct RiordanArray {
    g: TruncatedSeries,
    f: TruncatedSeries,
    label: Option<String>,
    columns: OnceLock<Vec<TruncatedSeries>>,
}

impl RiordanArray {
    /// Builds a group element; both series are cut to their common order.
    pub fn new(g: TruncatedSeries, f: TruncatedSeries) -> Result<Self> {
        let order = g.order().min(f.order());
        if order < 2 {
            return Err(RiordanError::NotGroupMember(
                "need at least two coefficients",
            ));
        }
        let g = g.truncate(order)?;
        let f = f.truncate(order)?;
        if !g.constant().is_one() {
            return Err(RiordanError::NotGroupMember("g(0) must be 1"));
        }
        if !f.constant().is_zero() {
            return Err(RiordanError::NotGroupMember("f(0) must be 0"));
        }
        if f.coeffs()[1].is_zero() {
            return Err(RiordanError::NotGroupMember("f'(0) must be nonzero"));
        }
        Ok(Self {
            g,
            f,
            label: None,
            columns: OnceLock::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The group identity `(1, x)`.
    pub fn identity(order: usize) -> Self {
        Self::new(TruncatedSeries::one(order), TruncatedSeries::x(order))
            .expect("(1, x) is a group element")
            .with_label("I")
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Generating function `g f^k` of column `k`.
    pub fn column(&self, k: usize) -> Result<&TruncatedSeries> {
        self.columns().get(k).ok_or(RiordanError::IndexOutOfRange {
            n: k,
            k,
            order: self.order(),
        })
    }

    fn columns(&self) -> &[TruncatedSeries] {
        self.columns.get_or_init(|| {
            let mut cols = Vec::with_capacity(self.order());
            let mut current = self.g.clone();
            for _ in 0..self.order() {
                let next = &current * &self.f;
                cols.push(current);
                current = next;
            }
            cols
        })
    }

    fn check_index(&self, n: usize, k: usize) -> Result<()> {
        if n >= self.order() || k >= self.order() {
            return Err(RiordanError::IndexOutOfRange {
                n,
                k,
                order: self.order(),
            });
        }
        Ok(())
    }

    pub fn rational_entry(&self, n: usize, k: usize) -> Result<BigRational> {
        self.check_index(n, k)?;
        if k > n {
            return Ok(BigRational::zero());
        }
        Ok(self.columns()[k].coeffs()[n].clone())
    }

    /// `[x^n] g f^k`; a fractional entry is an error.
    pub fn entry(&self, n: usize, k: usize) -> Result<BigInt> {
        let value = self.rational_entry(n, k)?;
        if !value.is_integer() {
            return Err(RiordanError::NonIntegral {
                n,
                k,
                value: value.to_string(),
            });
        }
        Ok(value.to_integer())
    }

    /// Rows `0 .. count`, row `n` holding entries `0 ..= n`.
    pub fn rows(&self, count: usize) -> Result<Vec<Vec<BigInt>>> {
        if count > self.order() {
            return Err(RiordanError::TooManyRows {
                count,
                order: self.order(),
            });
        }
        (0..count)
            .map(|n| (0..=n).map(|k| self.entry(n, k)).collect())
            .collect()
    }

    pub fn rational_rows(&self, count: usize) -> Result<Vec<Vec<BigRational>>> {
        if count > self.order() {
            return Err(RiordanError::TooManyRows {
                count,
                order: self.order(),
            });
        }
        (0..count)
            .map(|n| (0..=n).map(|k| self.rational_entry(n, k)).collect())
            .collect()
    }

    /// Group product `(g1, f1) * (g2, f2) = (g1 g2(f1), f2(f1))`.
    pub fn multiply(&self, rhs: &RiordanArray) -> Result<RiordanArray> {
        let g = &self.g * &rhs.g.compose(&self.f)?;
        let f = rhs.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// `(g, f)^-1 = (1 / g(fbar), fbar)` with `fbar` the compositional inverse of `f`.
    pub fn inverse(&self) -> Result<RiordanArray> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        Self::new(g, fbar)
    }

    /// Matrix-vector product in generating-function form: `g(x) A(f(x))`.
    pub fn apply(&self, a: &TruncatedSeries) -> Result<TruncatedSeries> {
        Ok(&self.g * &a.compose(&self.f)?)
    }

    /// Same pair, same order.
    pub fn same_as(&self, other: &RiordanArray) -> bool {
        self.g == other.g && self.f == other.f
    }
}

impl Clone for RiordanArray {
    fn clone(&self) -> Self {
        Self {
            g: self.g.clone(),
            f: self.f.clone(),
            label: self.label.clone(),
            columns: self.columns.clone(),
        }
    }
}

impl PartialEq for RiordanArray {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for RiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiordanArray")
            .field("label", &self.label)
            .field("g", &self.g)
            .field("f", &self.f)
            .finish()
    }
}

/// The arrays that appear in the symmetric-path identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedArray {
    /// Pascal matrix `(1/(1-x), x/(1-x))`.
    Pascal,
    PascalInverse,
    /// `(1/(1-x^2), x/(1-x^2))`.
    D,
    DInverse,
    /// `(C(x^2), x C(x^2))`, mid-heights of symmetric Dyck paths.
    DStar,
    /// `(1/(1+x-x^2), x/(1+x-x^2))`.
    E,
    /// `(1/(1-x-x^2), x/(1-x-x^2))`, up-step counts of free symmetric Schröder paths.
    EStar,
    EInverse,
}

impl NamedArray {
    pub const ALL: [NamedArray; 8] = [
        Self::Pascal,
        Self::PascalInverse,
        Self::D,
        Self::DInverse,
        Self::DStar,
        Self::E,
        Self::EStar,
        Self::EInverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Pascal => "P",
            Self::PascalInverse => "P_inv",
            Self::D => "D",
            Self::DInverse => "D_inv",
            Self::DStar => "D_star",
            Self::E => "E",
            Self::EStar => "E_star",
            Self::EInverse => "E_inv",
        }
    }
}

impl FromStr for NamedArray {
    type Err = RiordanError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| RiordanError::UnknownName(s.to_string()))
    }
}

/// `(1/q, x/q)` for a polynomial `q` with `q(0) = 1`.
fn bell_type(q: &[i64], order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let g = TruncatedSeries::polynomial(q, order).recip()?;
    let f = g.mul_x_pow(1).truncate(order)?;
    Ok((g, f))
}

/// `((sqrt(p) + b(x)) / (2x^2), (sqrt(p) + b(x)) / (2x))` where the numerator
/// vanishes to second order.
fn radical_pair(
    radicand: &[i64],
    offset: &[i64],
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let work = order + 2;
    let root = TruncatedSeries::polynomial(radicand, work).sqrt()?;
    let numerator = &root + &TruncatedSeries::polynomial(offset, work);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let g = numerator.shift_down(2)?.scale(&half);
    let f = numerator.shift_down(1)?.scale(&half).truncate(order)?;
    Ok((g, f))
}

/// A named array built from its closed-form generating pair, at `order`.
pub fn named_array_with_order(name: NamedArray, order: usize) -> Result<RiordanArray> {
    let (g, f) = match name {
        NamedArray::Pascal => bell_type(&[1, -1], order)?,
        NamedArray::PascalInverse => bell_type(&[1, 1], order)?,
        NamedArray::D => bell_type(&[1, 0, -1], order)?,
        NamedArray::DInverse => radical_pair(&[1, 0, 4], &[-1], order)?,
        NamedArray::DStar => {
            let c2 = named_series(NamedSeries::Catalan, order.div_ceil(2))?
                .dilate(2)
                .truncate(order)?;
            let f = c2.mul_x_pow(1).truncate(order)?;
            (c2, f)
        }
        NamedArray::E => bell_type(&[1, 1, -1], order)?,
        NamedArray::EStar => bell_type(&[1, -1, -1], order)?,
        NamedArray::EInverse => radical_pair(&[1, -2, 5], &[-1, 1], order)?,
    };
    Ok(RiordanArray::new(g, f)?.with_label(name.name()))
}

pub fn named_array(name: NamedArray) -> Result<RiordanArray> {
    named_array_with_order(name, DEFAULT_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn rows_i64(a: &RiordanArray, count: usize) -> Vec<Vec<i64>> {
        a.rows(count)
            .unwrap()
            .into_iter()
            .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    fn named(name: NamedArray) -> RiordanArray {
        named_array(name).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Lower-triangular finite matrix product, straight from the rows.
    fn matrix_product(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        (0..a.len())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|j| &a[n][j] * &b[j][k]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn displayed_matrices() {
        assert_eq!(
            rows_i64(&named(NamedArray::Pascal), 5),
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 2, 1],
                vec![1, 3, 3, 1],
                vec![1, 4, 6, 4, 1]
            ]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::PascalInverse), 5),
            vec![
                vec![1],
                vec![-1, 1],
                vec![1, -2, 1],
                vec![-1, 3, -3, 1],
                vec![1, -4, 6, -4, 1]
            ]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::D), 6),
            vec![
                vec![1],
                vec![0, 1],
                vec![1, 0, 1],
                vec![0, 2, 0, 1],
                vec![1, 0, 3, 0, 1],
                vec![0, 3, 0, 4, 0, 1]
            ]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::DStar), 6),
            vec![
                vec![1],
                vec![0, 1],
                vec![1, 0, 1],
                vec![0, 2, 0, 1],
                vec![2, 0, 3, 0, 1],
                vec![0, 5, 0, 4, 0, 1]
            ]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::EStar), 6),
            vec![
                vec![1],
                vec![1, 1],
                vec![2, 2, 1],
                vec![3, 5, 3, 1],
                vec![5, 10, 9, 4, 1],
                vec![8, 20, 22, 14, 5, 1]
            ]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::E), 4),
            vec![vec![1], vec![-1, 1], vec![2, -2, 1], vec![-3, 5, -3, 1]]
        );
        assert_eq!(
            rows_i64(&named(NamedArray::EInverse), 3),
            vec![vec![1], vec![1, 1], vec![0, 2, 1]]
        );
    }

    #[test]
    fn entries() {
        assert_eq!(named(NamedArray::DStar).entry(5, 1).unwrap(), big(5));
        assert_eq!(named(NamedArray::EStar).entry(5, 2).unwrap(), big(22));
        for a in NamedArray::ALL {
            assert_eq!(named(a).entry(0, 0).unwrap(), big(1));
            assert_eq!(named(a).entry(3, 7).unwrap(), big(0));
        }
        assert!(matches!(
            named(NamedArray::Pascal).entry(41, 0),
            Err(RiordanError::IndexOutOfRange { .. })
        ));
        let half = BigRational::new(big(1), big(2));
        let fractional = RiordanArray::new(
            TruncatedSeries::new(vec![BigRational::one(), half]).unwrap(),
            TruncatedSeries::x(2),
        )
        .unwrap();
        assert!(matches!(
            fractional.entry(1, 0),
            Err(RiordanError::NonIntegral { n: 1, k: 0, .. })
        ));
        assert!(matches!(
            named(NamedArray::Pascal).rows(42),
            Err(RiordanError::TooManyRows { .. })
        ));
    }

    #[test]
    fn construction_rejects_non_members() {
        let order = 4;
        assert!(RiordanArray::new(
            TruncatedSeries::polynomial(&[2], order),
            TruncatedSeries::x(order)
        )
        .is_err());
        assert!(
            RiordanArray::new(TruncatedSeries::one(order), TruncatedSeries::one(order)).is_err()
        );
        assert!(RiordanArray::new(
            TruncatedSeries::one(order),
            TruncatedSeries::polynomial(&[0, 0, 1], order)
        )
        .is_err());
        assert!("Q".parse::<NamedArray>().is_err());
    }

    #[test]
    fn closed_form_entries() {
        let p = named(NamedArray::Pascal);
        let d = named(NamedArray::D);
        let ds = named(NamedArray::DStar);
        let dinv = named(NamedArray::DInverse);
        let es = named(NamedArray::EStar);
        for n in 0..=20u64 {
            for k in 0..=n {
                let (nu, ku) = (n as usize, k as usize);
                if n <= 12 {
                    assert_eq!(
                        p.entry(nu, ku).unwrap(),
                        binomial(big(n as i64), big(k as i64))
                    );
                }
                let even = (n - k) % 2 == 0;
                let d_expected = if even {
                    binomial(big(((n + k) / 2) as i64), big(((n - k) / 2) as i64))
                } else {
                    big(0)
                };
                assert_eq!(d.entry(nu, ku).unwrap(), d_expected);
                let ds_expected = if even {
                    big((k + 1) as i64) * binomial(big((n + 1) as i64), big(((n - k) / 2) as i64))
                        / big((n + 1) as i64)
                } else {
                    big(0)
                };
                assert_eq!(ds.entry(nu, ku).unwrap(), ds_expected);
                let sign = if ((n - k) / 2) % 2 == 0 {
                    big(1)
                } else {
                    big(-1)
                };
                assert_eq!(
                    dinv.entry(nu, ku).unwrap(),
                    if even { sign * &ds_expected } else { big(0) }
                );
                let es_expected: BigInt = (0..=n - k)
                    .map(|j| {
                        let lower = n as i64 - j as i64 - k as i64;
                        if lower < 0 || lower > j as i64 {
                            big(0)
                        } else {
                            binomial(big((k + j) as i64), big(k as i64))
                                * binomial(big(j as i64), big(lower))
                        }
                    })
                    .sum();
                assert_eq!(es.entry(nu, ku).unwrap(), es_expected);
            }
        }
    }

    #[test]
    fn multiplication_matches_matrix_product() {
        let d = named(NamedArray::D);
        let p = named(NamedArray::Pascal);
        let pinv = named(NamedArray::PascalInverse);
        let rows = 12;
        for (lhs, rhs) in [(&d, &p), (&d, &pinv), (&p, &named(NamedArray::DStar))] {
            let product = lhs.multiply(rhs).unwrap();
            assert_eq!(
                product.rows(rows).unwrap(),
                matrix_product(&lhs.rows(rows).unwrap(), &rhs.rows(rows).unwrap())
            );
        }
        // the Fibonacci matrices factor through D and the Pascal matrix
        assert!(d.multiply(&pinv).unwrap().same_as(&named(NamedArray::E)));
        assert!(d.multiply(&p).unwrap().same_as(&named(NamedArray::EStar)));
    }

    #[test]
    fn inverses_agree_with_closed_forms() {
        let order = DEFAULT_ORDER;
        let id = RiordanArray::identity(order);
        assert!(id.inverse().unwrap().same_as(&id));
        for (a, b) in [
            (NamedArray::Pascal, NamedArray::PascalInverse),
            (NamedArray::D, NamedArray::DInverse),
            (NamedArray::E, NamedArray::EInverse),
        ] {
            let (a, b) = (named(a), named(b));
            assert!(a.inverse().unwrap().same_as(&b), "{:?}", a.label());
            assert!(b.inverse().unwrap().same_as(&a), "{:?}", b.label());
            assert!(a.multiply(&b).unwrap().same_as(&id));
        }
    }

    #[test]
    fn product_rule() {
        let order = DEFAULT_ORDER;
        let d = named_series(NamedSeries::SymmetricDyck, order).unwrap();
        let m = named_series(NamedSeries::SymmetricMotzkin, order).unwrap();
        assert_eq!(named(NamedArray::Pascal).apply(&d).unwrap(), m);

        let a = TruncatedSeries::polynomial(&[3, 1, 4, 1, 5], order);
        assert_eq!(RiordanArray::identity(order).apply(&a).unwrap(), a);

        let ones = TruncatedSeries::polynomial(&[1, -1], order)
            .recip()
            .unwrap();
        let pell = named(NamedArray::EStar)
            .apply(&ones)
            .unwrap()
            .assert_integral()
            .unwrap();
        assert_eq!(pell[..5], [big(1), big(2), big(5), big(12), big(29)]);

        // coefficient n is the row-n dot product with the input sequence
        let es = named(NamedArray::EStar);
        let out = es.apply(&a).unwrap();
        for n in 0..order {
            let dot: BigRational = (0..=n)
                .map(|k| BigRational::from_integer(es.entry(n, k).unwrap()) * &a.coeffs()[k])
                .sum();
            assert_eq!(out.coeffs()[n], dot);
        }
    }

    #[test]
    fn column_generating_function_of_e_inverse() {
        // (1/x) ((sqrt(1-2x+5x^2) + x - 1) / (2x))^(k+1), expanded independently of the pair
        let order = 20;
        let e_inv = named_array_with_order(NamedArray::EInverse, order).unwrap();
        let work = order + 2;
        let root = TruncatedSeries::polynomial(&[1, -2, 5], work)
            .sqrt()
            .unwrap();
        let inner = (&root + &TruncatedSeries::polynomial(&[-1, 1], work))
            .shift_down(1)
            .unwrap()
            .scale(&BigRational::new(big(1), big(2)));
        for k in 0..6u32 {
            let column = inner
                .pow(k + 1)
                .shift_down(1)
                .unwrap()
                .truncate(order)
                .unwrap();
            assert_eq!(e_inv.column(k as usize).unwrap(), &column);
        }
    }
}
