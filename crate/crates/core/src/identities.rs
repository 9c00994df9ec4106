//! Registry of identities and statistics, each checked by up to three routes.
//!
//! - `closed_form`: explicit binomial and sign formulas over big integers.
//! - `riordan`: generating functions, Riordan-array entries and the
//!   `g(x) A(f(x))` product rule.
//! - `oracle`: explicit path enumeration and the bijections.
//!
//! Every route yields, for each index `n`, a left-hand side and the value it is
//! claimed to equal. A case passes when every route balances at every `n` and
//! all routes produce the same left-hand side. Comparisons are exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bijections::{self, BijectionError};
use crate::paths::{self, Enumerator, FamilySpec, PathError, Step};
use crate::riordan::{named_array_with_order, NamedArray, RiordanArray, RiordanError};
use crate::series::{named_series, NamedSeries, SeriesError, TruncatedSeries};

/// Default largest `n` for the series-based routes.
pub const DEFAULT_SERIES_MAX_N: usize = 40;
/// Default largest `n` for enumeration-based routes.
pub const DEFAULT_ORACLE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownId(String),
    #[error("unknown mode `{0}`; expected closed_form, riordan or oracle")]
    UnknownMode(String),
    #[error("{id}: {mode} route is capped at n = {cap}, {max_n} requested")]
    CapExceeded {
        id: String,
        mode: Mode,
        max_n: usize,
        cap: usize,
    },
    #[error("{mode} route is not available for this identity")]
    ModeUnavailable { mode: Mode },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
}

pub type Result<T> = std::result::Result<T, IdentityError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ClosedForm,
    Riordan,
    Oracle,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::ClosedForm, Mode::Riordan, Mode::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Mode::ClosedForm => "closed_form",
            Mode::Riordan => "riordan",
            Mode::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| IdentityError::UnknownMode(s.to_string()))
    }
}

/// A scalar or a row of integers; rationals travel as `[numerator, denominator]`.
pub type Value = Vec<BigInt>;

pub fn render_value(v: &[BigInt]) -> String {
    match v {
        [single] => single.to_string(),
        _ => {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub lhs: Value,
    pub rhs: Value,
}

pub type Rows = Vec<(usize, Evaluation)>;
pub type Evaluator = fn(&Context, Mode, usize) -> Result<Rows>;

/// Shared knobs for one verification run.
#[derive(Debug, Clone, Copy, Default)]
pub struct Context {
    pub enumerator: Enumerator,
}

impl Context {
    fn series(&self, name: NamedSeries, order: usize) -> Result<TruncatedSeries> {
        Ok(named_series(name, order)?)
    }

    /// `name(x^2)` to `order` terms.
    fn series_of_square(&self, name: NamedSeries, order: usize) -> Result<TruncatedSeries> {
        Ok(named_series(name, order.div_ceil(2))?
            .dilate(2)
            .truncate(order)?)
    }

    fn array(&self, name: NamedArray, order: usize) -> Result<RiordanArray> {
        Ok(named_array_with_order(name, order.max(2))?)
    }

    /// Enumerated family sizes for half-lengths `0..=limit`.
    fn counts(&self, spec: &FamilySpec, limit: usize) -> Result<Vec<BigInt>> {
        (0..=limit)
            .map(|n| Ok(BigInt::from(self.enumerator.count(spec, n)?)))
            .collect()
    }

    /// Histogram of `key` over the enumerated members of half-length `n`, as a row `0..=n`.
    fn histogram(&self, spec: &FamilySpec, n: usize, key: fn(&[Step]) -> i64) -> Result<Value> {
        let mut row = vec![0u64; n + 1];
        self.enumerator.for_each(spec, n, |steps| {
            let k = key(steps);
            row[usize::try_from(k).expect("histogram key is a valid column")] += 1;
        })?;
        Ok(row.into_iter().map(BigInt::from).collect())
    }
}

fn end_height(steps: &[Step]) -> i64 {
    steps.iter().map(|s| s.rise()).sum()
}

fn up_steps(steps: &[Step]) -> i64 {
    steps.iter().filter(|&&s| s == Step::Up).count() as i64
}

pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `binom(n, floor(n/2))`: the number of symmetric Dyck paths of length `2n`.
pub fn central(n: usize) -> BigInt {
    binom(n, n / 2)
}

pub fn catalan(n: usize) -> BigInt {
    binom(2 * n, n) / BigInt::from(n + 1)
}

/// `d(n, k) = (k+1)/(n+1) binom(n+1, (n-k)/2)` for `n - k` even, else 0.
pub fn midheight_formula(n: usize, k: usize) -> BigInt {
    if k > n || (n - k) % 2 == 1 {
        return BigInt::zero();
    }
    BigInt::from(k + 1) * binom(n + 1, (n - k) / 2) / BigInt::from(n + 1)
}

/// `s(n, k) = sum_j binom(k+j, k) binom(j, n-j-k)`.
pub fn upstep_formula(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..=n - k)
        .filter(|&j| n >= j + k)
        .map(|j| binom(k + j, k) * binom(j, n - j - k))
        .sum()
}

/// Terms `0..=limit` of `a(n) = p a(n-1) + a(n-2)` with `a(0) = 1`, `a(1) = p`.
fn two_term(p: i64, limit: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = vec![BigInt::one(), BigInt::from(p)];
    while out.len() <= limit {
        let next = &out[out.len() - 1] * p + &out[out.len() - 2];
        out.push(next);
    }
    out.truncate(limit + 1);
    out
}

/// `p(n+1)` for `n = 0..=limit`, Pell numbers shifted to start at 1.
pub fn pell_shifted(limit: usize) -> Vec<BigInt> {
    two_term(2, limit)
}

/// `h(n+1)` for `n = 0..=limit`, coefficients of `1/(1-3x-x^2)`.
pub fn ms_shifted(limit: usize) -> Vec<BigInt> {
    two_term(3, limit)
}

/// `b_n = sum_k binom(n,k) a_k`.
pub fn binomial_transform(a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|n| (0..=n).map(|k| binom(n, k) * &a[k]).sum())
        .collect()
}

/// `a_n = sum_k (-1)^(n-k) binom(n,k) b_k`.
pub fn inverse_binomial_transform(b: &[BigInt]) -> Vec<BigInt> {
    (0..b.len())
        .map(|n| (0..=n).map(|k| sign(n - k) * binom(n, k) * &b[k]).sum())
        .collect()
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn at(s: &TruncatedSeries, n: usize) -> Result<BigInt> {
    let c = s.coeff(n)?;
    if !c.is_integer() {
        return Err(SeriesError::NonIntegral {
            index: n,
            value: c.to_string(),
        }
        .into());
    }
    Ok(c.to_integer())
}

fn ratio(num: BigInt, den: BigInt) -> Value {
    let r = BigRational::new(num, den);
    vec![r.numer().clone(), r.denom().clone()]
}

fn scalar_rows<F>(limit: usize, mut f: F) -> Result<Rows>
where
    F: FnMut(usize) -> Result<(BigInt, BigInt)>,
{
    (0..=limit)
        .map(|n| {
            let (lhs, rhs) = f(n)?;
            Ok((
                n,
                Evaluation {
                    lhs: vec![lhs],
                    rhs: vec![rhs],
                },
            ))
        })
        .collect()
}

fn vector_rows<F>(indices: impl Iterator<Item = usize>, mut f: F) -> Result<Rows>
where
    F: FnMut(usize) -> Result<(Value, Value)>,
{
    indices
        .map(|n| {
            let (lhs, rhs) = f(n)?;
            Ok((n, Evaluation { lhs, rhs }))
        })
        .collect()
}

fn unavailable(mode: Mode) -> IdentityError {
    IdentityError::ModeUnavailable { mode }
}

fn geometric(ratio: i64, order: usize) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::polynomial(&[1, -ratio], order).recip()?)
}

// ---------------------------------------------------------------------------
// Identities between d, m and s.

fn motzkin_from_dyck(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    match mode {
        Mode::ClosedForm => {
            let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
            scalar_rows(limit, |n| {
                Ok(((0..=n).map(|k| binom(n, k) * central(k)).sum(), at(&m, n)?))
            })
        }
        Mode::Riordan => {
            let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
            let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
            let lhs = ctx.array(NamedArray::Pascal, order)?.apply(&d)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&m, n)?)))
        }
        Mode::Oracle => {
            let d = ctx.counts(&FamilySpec::dyck(), limit)?;
            let m = ctx.counts(&FamilySpec::motzkin(), limit)?;
            scalar_rows(limit, |n| {
                Ok(((0..=n).map(|k| binom(n, k) * &d[k]).sum(), m[n].clone()))
            })
        }
    }
}

fn dyck_from_motzkin(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let signed_sum = |n: usize, m: &dyn Fn(usize) -> Result<BigInt>| -> Result<BigInt> {
        (0..=n).try_fold(BigInt::zero(), |acc, k| {
            Ok(acc + sign(n - k) * binom(n, k) * m(k)?)
        })
    };
    match mode {
        Mode::ClosedForm => {
            let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
            scalar_rows(limit, |n| Ok((signed_sum(n, &|k| at(&m, k))?, central(n))))
        }
        Mode::Riordan => {
            let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
            let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
            let lhs = ctx.array(NamedArray::PascalInverse, order)?.apply(&m)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&d, n)?)))
        }
        Mode::Oracle => {
            let d = ctx.counts(&FamilySpec::dyck(), limit)?;
            let m = ctx.counts(&FamilySpec::motzkin(), limit)?;
            scalar_rows(limit, |n| {
                Ok((signed_sum(n, &|k| Ok(m[k].clone()))?, d[n].clone()))
            })
        }
    }
}

fn schroeder_from_dyck(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let sum = |n: usize, d: &dyn Fn(usize) -> BigInt| -> BigInt {
        (0..=n / 2)
            .map(|k| binom(n - k, n - 2 * k) * d(n - 2 * k))
            .sum()
    };
    match mode {
        Mode::ClosedForm => {
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            scalar_rows(limit, |n| Ok((sum(n, &central), at(&s, n)?)))
        }
        Mode::Riordan => {
            let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            let lhs = ctx.array(NamedArray::D, order)?.apply(&d)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&s, n)?)))
        }
        Mode::Oracle => {
            let d = ctx.counts(&FamilySpec::dyck(), limit)?;
            let s = ctx.counts(&FamilySpec::schroeder(), limit)?;
            scalar_rows(limit, |n| Ok((sum(n, &|k| d[k].clone()), s[n].clone())))
        }
    }
}

fn dyck_from_schroeder(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    // sum over n-k even of (-1)^((n-k)/2) d(n,k) s_k
    let sum =
        |n: usize, dnk: &dyn Fn(usize, usize) -> BigInt, s: &dyn Fn(usize) -> BigInt| -> BigInt {
            (0..=n)
                .filter(|k| (n - k).is_multiple_of(2))
                .map(|k| sign((n - k) / 2) * dnk(n, k) * s(k))
                .sum()
        };
    match mode {
        Mode::ClosedForm => {
            let s = ctx
                .series(NamedSeries::SymmetricSchroeder, order)?
                .assert_integral()?;
            scalar_rows(limit, |n| {
                Ok((sum(n, &midheight_formula, &|k| s[k].clone()), central(n)))
            })
        }
        Mode::Riordan => {
            let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            let lhs = ctx.array(NamedArray::DInverse, order)?.apply(&s)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&d, n)?)))
        }
        Mode::Oracle => {
            let s = ctx.counts(&FamilySpec::schroeder(), limit)?;
            let d = ctx.counts(&FamilySpec::dyck(), limit)?;
            let rows = (0..=limit)
                .map(|n| ctx.histogram(&FamilySpec::dyck(), n, end_height))
                .collect::<Result<Vec<_>>>()?;
            scalar_rows(limit, |n| {
                Ok((
                    sum(n, &|n, k| rows[n][k].clone(), &|k| s[k].clone()),
                    d[n].clone(),
                ))
            })
        }
    }
}

fn schroeder_from_motzkin(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let sum = |n: usize,
               snk: &dyn Fn(usize, usize) -> BigInt,
               m: &dyn Fn(usize) -> BigInt|
     -> BigInt { (0..=n).map(|k| sign(n - k) * snk(n, k) * m(k)).sum() };
    match mode {
        Mode::ClosedForm => {
            let m = ctx
                .series(NamedSeries::SymmetricMotzkin, order)?
                .assert_integral()?;
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            scalar_rows(limit, |n| {
                Ok((sum(n, &upstep_formula, &|k| m[k].clone()), at(&s, n)?))
            })
        }
        Mode::Riordan => {
            let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            let lhs = ctx.array(NamedArray::E, order)?.apply(&m)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&s, n)?)))
        }
        Mode::Oracle => {
            let m = ctx.counts(&FamilySpec::motzkin(), limit)?;
            let s = ctx.counts(&FamilySpec::schroeder(), limit)?;
            let rows = (0..=limit)
                .map(|n| ctx.histogram(&FamilySpec::schroeder().free(), n, up_steps))
                .collect::<Result<Vec<_>>>()?;
            scalar_rows(limit, |n| {
                Ok((
                    sum(n, &|n, k| rows[n][k].clone(), &|k| m[k].clone()),
                    s[n].clone(),
                ))
            })
        }
    }
}

fn motzkin_from_schroeder(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let m = ctx.series(NamedSeries::SymmetricMotzkin, order)?;
    let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
    match mode {
        Mode::ClosedForm => {
            // t(n,k) read off the column generating functions (1/x) u^(k+1),
            // u = (sqrt(1-2x+5x^2) + x - 1) / (2x)
            let work = order + 2;
            let root = TruncatedSeries::polynomial(&[1, -2, 5], work).sqrt()?;
            let u = (&root + &TruncatedSeries::polynomial(&[-1, 1], work))
                .shift_down(1)?
                .scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
            let s_int = s.assert_integral()?;
            let mut lhs = vec![BigInt::zero(); order];
            let mut power = u.clone();
            for s_k in s_int.iter() {
                let column = power.shift_down(1)?;
                for (n, slot) in lhs.iter_mut().enumerate() {
                    *slot += at(&column, n)? * s_k;
                }
                power = &power * &u;
            }
            scalar_rows(limit, |n| Ok((lhs[n].clone(), at(&m, n)?)))
        }
        Mode::Riordan => {
            let lhs = ctx.array(NamedArray::EInverse, order)?.apply(&s)?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&m, n)?)))
        }
        Mode::Oracle => Err(unavailable(mode)),
    }
}

// ---------------------------------------------------------------------------
// Recurrences and combinatorial meaning of the generic elements.

fn entry(rows: &[Value], n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 {
        return BigInt::zero();
    }
    rows.get(n as usize)
        .and_then(|r| r.get(k as usize))
        .cloned()
        .unwrap_or_default()
}

fn midheight_rows(ctx: &Context, mode: Mode, limit: usize) -> Result<Vec<Value>> {
    match mode {
        Mode::ClosedForm => Ok((0..=limit)
            .map(|n| (0..=n).map(|k| midheight_formula(n, k)).collect())
            .collect()),
        Mode::Riordan => Ok(ctx.array(NamedArray::DStar, limit + 1)?.rows(limit + 1)?),
        Mode::Oracle => (0..=limit)
            .map(|n| ctx.histogram(&FamilySpec::dyck(), n, end_height))
            .collect(),
    }
}

fn upstep_rows(ctx: &Context, mode: Mode, limit: usize) -> Result<Vec<Value>> {
    match mode {
        Mode::ClosedForm => Ok((0..=limit)
            .map(|n| (0..=n).map(|k| upstep_formula(n, k)).collect())
            .collect()),
        Mode::Riordan => Ok(ctx.array(NamedArray::EStar, limit + 1)?.rows(limit + 1)?),
        Mode::Oracle => (0..=limit)
            .map(|n| ctx.histogram(&FamilySpec::schroeder().free(), n, up_steps))
            .collect(),
    }
}

fn midheight_recurrence(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let rows = midheight_rows(ctx, mode, limit)?;
    vector_rows(0..=limit, |n| {
        let rhs = if n == 0 {
            vec![BigInt::one()]
        } else {
            let p = n as i64 - 1;
            (0..=n as i64)
                .map(|k| entry(&rows, p, k - 1) + entry(&rows, p, k + 1))
                .collect()
        };
        Ok((rows[n].clone(), rhs))
    })
}

fn upstep_recurrence(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let rows = upstep_rows(ctx, mode, limit)?;
    vector_rows(0..=limit, |n| {
        let rhs = if n == 0 {
            vec![BigInt::one()]
        } else {
            let n = n as i64;
            (0..=n)
                .map(|k| {
                    entry(&rows, n - 1, k - 1) + entry(&rows, n - 1, k) + entry(&rows, n - 2, k)
                })
                .collect()
        };
        Ok((rows[n].clone(), rhs))
    })
}

fn midheight_meaning(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let rows = midheight_rows(ctx, mode, limit)?;
    vector_rows(0..=limit, |n| {
        let rhs = match mode {
            Mode::Oracle => (0..=n).map(|k| midheight_formula(n, k)).collect(),
            _ => paths::midheight_row(n),
        };
        Ok((rows[n].clone(), rhs))
    })
}

fn upstep_meaning(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let rows = upstep_rows(ctx, mode, limit)?;
    vector_rows(0..=limit, |n| {
        let rhs = match mode {
            Mode::Oracle => (0..=n).map(|k| upstep_formula(n, k)).collect(),
            _ => paths::free_schroeder_upstep_row(n),
        };
        Ok((rows[n].clone(), rhs))
    })
}

/// `sum_k weight(k) row[k]` over rows from the chosen route, against `target(n)`,
/// with the Riordan route going through `g(x) A(f(x))` instead.
fn weighted_row_sum(
    ctx: &Context,
    mode: Mode,
    limit: usize,
    array: NamedArray,
    weights: &TruncatedSeries,
    target: &dyn Fn(usize) -> BigInt,
) -> Result<Rows> {
    let order = limit + 1;
    if mode == Mode::Riordan {
        let lhs = ctx.array(array, order)?.apply(weights)?;
        return scalar_rows(limit, |n| Ok((at(&lhs, n)?, target(n))));
    }
    let rows = match array {
        NamedArray::DStar => midheight_rows(ctx, mode, limit)?,
        _ => upstep_rows(ctx, mode, limit)?,
    };
    let w = weights.assert_integral()?;
    scalar_rows(limit, |n| {
        Ok((rows[n].iter().zip(&w).map(|(a, b)| a * b).sum(), target(n)))
    })
}

fn midheight_row_sum(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let weights = geometric(1, limit + 1)?;
    weighted_row_sum(ctx, mode, limit, NamedArray::DStar, &weights, &central)
}

fn midheight_weighted_sum(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    if mode == Mode::Oracle {
        let census = (0..=limit)
            .map(|n| bijections::phi_census(n, &ctx.enumerator))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return scalar_rows(limit, |n| {
            let c = &census[n];
            // images only count once their preimage is recovered and none collide
            let reached = if c.round_trips && c.images == c.distinct {
                c.distinct
            } else {
                0
            };
            Ok((BigInt::from(reached), BigInt::one() << n))
        });
    }
    let ones = geometric(1, order)?;
    let weights = &ones * &ones;
    weighted_row_sum(ctx, mode, limit, NamedArray::DStar, &weights, &|n| {
        BigInt::one() << n
    })
}

fn upstep_row_sum(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let pell = pell_shifted(limit);
    if mode == Mode::Oracle {
        let free = ctx.counts(&FamilySpec::schroeder().free(), limit)?;
        return scalar_rows(limit, |n| Ok((free[n].clone(), pell[n].clone())));
    }
    if mode == Mode::Riordan {
        let order = limit + 1;
        let lhs = ctx
            .array(NamedArray::EStar, order)?
            .apply(&geometric(1, order)?)?;
        let target = TruncatedSeries::polynomial(&[1, -2, -1], order).recip()?;
        return scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&target, n)?)));
    }
    let weights = geometric(1, limit + 1)?;
    weighted_row_sum(ctx, mode, limit, NamedArray::EStar, &weights, &|n| {
        pell[n].clone()
    })
}

fn upstep_power_sum(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let h = ms_shifted(limit);
    let order = limit + 1;
    match mode {
        Mode::Oracle => {
            let census = (0..=limit)
                .map(|n| bijections::psi_census(n, &ctx.enumerator))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            scalar_rows(limit, |n| {
                let c = &census[n];
                let reached = if c.round_trips && c.images == c.distinct && c.distinct == c.target {
                    c.distinct
                } else {
                    0
                };
                Ok((BigInt::from(reached), h[n].clone()))
            })
        }
        Mode::Riordan => {
            let lhs = ctx
                .array(NamedArray::EStar, order)?
                .apply(&geometric(2, order)?)?;
            let target = TruncatedSeries::polynomial(&[1, -3, -1], order).recip()?;
            scalar_rows(limit, |n| Ok((at(&lhs, n)?, at(&target, n)?)))
        }
        Mode::ClosedForm => weighted_row_sum(
            ctx,
            mode,
            limit,
            NamedArray::EStar,
            &geometric(2, order)?,
            &|n| h[n].clone(),
        ),
    }
}

// ---------------------------------------------------------------------------
// Statistics.

fn average_mid_height_rows(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let closed = |n: usize| {
        let c = central(n);
        ratio((BigInt::one() << n) - &c, c)
    };
    match mode {
        Mode::ClosedForm => vector_rows(0..=limit, |n| {
            Ok((
                closed(n),
                ratio(
                    paths::mid_height_total(n),
                    paths::count(&FamilySpec::dyck(), n),
                ),
            ))
        }),
        Mode::Riordan | Mode::Oracle => {
            let rows = midheight_rows(ctx, mode, limit)?;
            vector_rows(0..=limit, |n| {
                let total: BigInt = rows[n].iter().enumerate().map(|(k, c)| c * k).sum();
                let paths: BigInt = rows[n].iter().sum();
                Ok((ratio(total, paths), closed(n)))
            })
        }
    }
}

/// `(4m+1) C_m` for `n = 2m`, `2 binom(2m+2, m)` for `n = 2m+1`.
pub fn axis_points_closed_form(n: usize) -> BigInt {
    let m = n / 2;
    if n.is_multiple_of(2) {
        BigInt::from(4 * m + 1) * catalan(m)
    } else {
        binom(2 * m + 2, m) * 2
    }
}

struct AxisSeries {
    total: TruncatedSeries,
    even: TruncatedSeries,
    odd: TruncatedSeries,
}

fn axis_series(ctx: &Context, order: usize) -> Result<AxisSeries> {
    let c2 = ctx.series_of_square(NamedSeries::Catalan, order)?;
    let b2 = ctx.series_of_square(NamedSeries::CentralBinomial, order)?;
    let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
    let one = TruncatedSeries::one(order);
    let two = BigRational::from_integer(BigInt::from(2));
    let total = &(&c2 * &d).scale(&two) - &c2;
    let even = &c2 * &(&b2.scale(&two) - &one);
    let odd = (&b2 * &(&c2 * &c2))
        .scale(&two)
        .mul_x_pow(1)
        .truncate(order)?;
    Ok(AxisSeries { total, even, odd })
}

fn axis_points_rows(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    match mode {
        Mode::ClosedForm => scalar_rows(limit, |n| {
            Ok((axis_points_closed_form(n), paths::axis_points_total(n)))
        }),
        Mode::Riordan => {
            let gf = axis_series(ctx, limit + 1)?;
            scalar_rows(limit, |n| {
                Ok((at(&gf.total, n)?, paths::axis_points_total(n)))
            })
        }
        Mode::Oracle => scalar_rows(limit, |n| {
            Ok((
                paths::axis_points_total_enumerated(n, &ctx.enumerator)?,
                axis_points_closed_form(n),
            ))
        }),
    }
}

fn axis_points_split(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let gf = axis_series(ctx, limit + 1)?;
    match mode {
        Mode::ClosedForm => scalar_rows(limit, |n| {
            let part = if n % 2 == 0 { &gf.even } else { &gf.odd };
            Ok((axis_points_closed_form(n), at(part, n)?))
        }),
        Mode::Riordan => {
            let split = &gf.even + &gf.odd;
            scalar_rows(limit, |n| Ok((at(&split, n)?, at(&gf.total, n)?)))
        }
        Mode::Oracle => Err(unavailable(mode)),
    }
}

fn axis_points_even(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let even_total = |n: usize| BigInt::from(2 * n + 1) * catalan(n / 2);
    let evens = (0..=limit).step_by(2);
    match mode {
        Mode::ClosedForm => vector_rows(evens, |n| {
            Ok((vec![even_total(n)], vec![paths::axis_points_total(n)]))
        }),
        Mode::Riordan => {
            let gf = axis_series(ctx, limit + 1)?;
            vector_rows(evens, |n| Ok((vec![at(&gf.even, n)?], vec![even_total(n)])))
        }
        Mode::Oracle => vector_rows(evens, |n| {
            Ok((
                vec![paths::axis_points_total_enumerated(n, &ctx.enumerator)?],
                vec![even_total(n)],
            ))
        }),
    }
}

fn dershowitz_zaks(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    match mode {
        Mode::ClosedForm => scalar_rows(limit, |n| {
            Ok((catalan(n + 1), paths::dyck_axis_points_total_dp(n)))
        }),
        Mode::Riordan => {
            let c = ctx.series(NamedSeries::Catalan, limit + 2)?;
            let shifted = (&c - &TruncatedSeries::one(limit + 2)).shift_down(1)?;
            scalar_rows(limit, |n| {
                Ok((at(&shifted, n)?, paths::dyck_axis_points_total_dp(n)))
            })
        }
        Mode::Oracle => scalar_rows(limit, |n| {
            Ok((
                paths::dyck_axis_points_total(n, &ctx.enumerator)?,
                catalan(n + 1),
            ))
        }),
    }
}

// ---------------------------------------------------------------------------
// Generating-function identities.

fn b_of_square(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let closed = |n: usize| {
        if n.is_multiple_of(2) {
            binom(n, n / 2)
        } else {
            BigInt::zero()
        }
    };
    let forms = || -> Result<(TruncatedSeries, TruncatedSeries)> {
        let c2 = ctx.series_of_square(NamedSeries::Catalan, order)?;
        let one = TruncatedSeries::one(order);
        let two = BigRational::from_integer(BigInt::from(2));
        let x2c2 = c2.mul_x_pow(2).truncate(order)?;
        let first = (&one - &x2c2.scale(&two)).recip()?;
        let second = c2.div(&(&one - &(&x2c2 * &c2)))?;
        Ok((first, second))
    };
    match mode {
        Mode::ClosedForm => {
            let (first, second) = forms()?;
            vector_rows(0..=limit, |n| {
                Ok((vec![closed(n); 2], vec![at(&first, n)?, at(&second, n)?]))
            })
        }
        Mode::Riordan => {
            let (first, second) = forms()?;
            let b2 = ctx.series_of_square(NamedSeries::CentralBinomial, order)?;
            vector_rows(0..=limit, |n| {
                Ok((vec![at(&first, n)?, at(&second, n)?], vec![at(&b2, n)?; 2]))
            })
        }
        Mode::Oracle => {
            // up/down walks of length n that end on the axis
            let walks = FamilySpec::dyck().free().plain();
            vector_rows(0..=limit, |n| {
                let count = if n % 2 == 0 {
                    BigInt::from(ctx.enumerator.count(&walks, n / 2)?)
                } else {
                    BigInt::zero()
                };
                Ok((vec![count; 2], vec![closed(n); 2]))
            })
        }
    }
}

fn power_of_two(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let form = || -> Result<TruncatedSeries> {
        let c2 = ctx.series_of_square(NamedSeries::Catalan, order)?;
        let denom = &TruncatedSeries::one(order) - &c2.mul_x_pow(1).truncate(order)?;
        Ok(c2.div(&(&denom * &denom))?)
    };
    match mode {
        Mode::ClosedForm => {
            let f = form()?;
            scalar_rows(limit, |n| Ok((BigInt::one() << n, at(&f, n)?)))
        }
        Mode::Riordan => {
            let f = form()?;
            let g = geometric(2, order)?;
            scalar_rows(limit, |n| Ok((at(&f, n)?, at(&g, n)?)))
        }
        Mode::Oracle => {
            let free = ctx.counts(&FamilySpec::dyck().free(), limit)?;
            scalar_rows(limit, |n| Ok((free[n].clone(), BigInt::one() << n)))
        }
    }
}

/// `1 + x s + x^2 s + x^2 s R(x^2)` evaluated on the given `s` and `R`.
fn first_return(s: &TruncatedSeries, r: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let r2 = r.dilate(2).truncate(order)?;
    let xs = s.mul_x_pow(1).truncate(order)?;
    let x2s = s.mul_x_pow(2).truncate(order)?;
    let sum = &(&TruncatedSeries::one(order) + &xs) + &x2s;
    Ok(&sum + &(&x2s * &r2))
}

fn schroeder_first_return(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    match mode {
        Mode::Riordan => {
            let s = ctx.series(NamedSeries::SymmetricSchroeder, order)?;
            let r = ctx.series(NamedSeries::Schroeder, order.div_ceil(2))?;
            let rhs = first_return(&s, &r, order)?;
            scalar_rows(limit, |n| Ok((at(&rhs, n)?, at(&s, n)?)))
        }
        Mode::Oracle => {
            let s_counts = ctx.counts(&FamilySpec::schroeder(), limit)?;
            let r_counts = ctx.counts(&FamilySpec::schroeder().plain(), order.div_ceil(2) - 1)?;
            let s = TruncatedSeries::from_integers(s_counts.iter().cloned())?;
            let r = TruncatedSeries::from_integers(r_counts)?;
            let rhs = first_return(&s, &r, order)?;
            scalar_rows(limit, |n| Ok((at(&rhs, n)?, s_counts[n].clone())))
        }
        Mode::ClosedForm => Err(unavailable(mode)),
    }
}

fn dyck_forms(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
    let order = limit + 1;
    let forms = || -> Result<[TruncatedSeries; 3]> {
        let d = ctx.series(NamedSeries::SymmetricDyck, order)?;
        let b2 = ctx.series_of_square(NamedSeries::CentralBinomial, order)?;
        let c2 = ctx.series_of_square(NamedSeries::Catalan, order)?;
        let second = &b2 + &(&b2 * &c2).mul_x_pow(1).truncate(order)?;
        let third = c2.div(&(&TruncatedSeries::one(order) - &c2.mul_x_pow(1).truncate(order)?))?;
        Ok([d, second, third])
    };
    match mode {
        Mode::ClosedForm => {
            let f = forms()?;
            vector_rows(0..=limit, |n| {
                Ok((
                    vec![central(n); 3],
                    f.iter().map(|s| at(s, n)).collect::<Result<_>>()?,
                ))
            })
        }
        Mode::Riordan => {
            let f = forms()?;
            vector_rows(0..=limit, |n| {
                Ok((
                    f.iter().map(|s| at(s, n)).collect::<Result<_>>()?,
                    vec![at(&f[0], n)?; 3],
                ))
            })
        }
        Mode::Oracle => {
            let d = ctx.counts(&FamilySpec::dyck(), limit)?;
            vector_rows(0..=limit, |n| {
                Ok((vec![d[n].clone(); 3], vec![central(n); 3]))
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Registry.

#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    pub description: &'static str,
    /// Available routes with the largest `n` each one accepts.
    pub modes: Vec<(Mode, usize)>,
    pub eval: Evaluator,
}

impl IdentityCase {
    pub fn cap(&self, mode: Mode) -> Option<usize> {
        self.modes
            .iter()
            .find(|(m, _)| *m == mode)
            .map(|&(_, cap)| cap)
    }
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("modes", &self.modes)
            .finish()
    }
}

const SERIES_CAP: usize = usize::MAX;

fn case(
    id: &'static str,
    description: &'static str,
    oracle_cap: Option<usize>,
    closed: bool,
    eval: Evaluator,
) -> IdentityCase {
    let mut modes = Vec::with_capacity(3);
    if closed {
        modes.push((Mode::ClosedForm, SERIES_CAP));
    }
    modes.push((Mode::Riordan, SERIES_CAP));
    if let Some(cap) = oracle_cap {
        modes.push((Mode::Oracle, cap));
    }
    IdentityCase {
        id,
        description,
        modes,
        eval,
    }
}

/// Requested routes for a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeSelection {
    /// Every route the case offers, each clamped to its own cap.
    Available,
    /// Exactly these routes; asking past a route's cap is an error.
    Only(Vec<Mode>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unavailable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unavailable => "mode unavailable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeOutcome {
    pub mode: Mode,
    pub status: Status,
    /// Largest `n` this route was evaluated at.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: usize,
    /// The agreed left-hand side (from the first route that reached `n`).
    pub value: String,
    pub modes: Vec<Mode>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: usize,
    pub expected: String,
    pub got: String,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub max_n: usize,
    pub modes: Vec<ModeOutcome>,
    pub status: Status,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    cases: Vec<IdentityCase>,
    pub context: Context,
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

impl Registry {
    pub fn with_cases(cases: Vec<IdentityCase>) -> Self {
        Self {
            cases,
            context: Context::default(),
        }
    }

    pub fn standard() -> Self {
        let o = Some(DEFAULT_ORACLE_MAX_N);
        Self::with_cases(vec![
            case(
                "T3.1",
                "m_n = sum_k binom(n,k) d_k",
                o,
                true,
                motzkin_from_dyck,
            ),
            case(
                "T3.2",
                "d_n = sum_k (-1)^(n-k) binom(n,k) m_k",
                o,
                true,
                dyck_from_motzkin,
            ),
            case(
                "T3.3",
                "s_n = sum_k binom(n-k, n-2k) d_(n-2k)",
                o,
                true,
                schroeder_from_dyck,
            ),
            case(
                "T3.4",
                "d_n = sum_k (-1)^((n-k)/2) d(n,k) s_k",
                o,
                true,
                dyck_from_schroeder,
            ),
            case(
                "T3.5",
                "s_n = sum_k (-1)^(n-k) s(n,k) m_k",
                o,
                true,
                schroeder_from_motzkin,
            ),
            case(
                "T3.6",
                "m_n = sum_k t(n,k) s_k with t(n,k) the entries of E^-1",
                None,
                true,
                motzkin_from_schroeder,
            ),
            case(
                "R7",
                "d(n,k) = d(n-1,k-1) + d(n-1,k+1)",
                o,
                true,
                midheight_recurrence,
            ),
            case(
                "R8",
                "s(n,k) = s(n-1,k-1) + s(n-1,k) + s(n-2,k)",
                o,
                true,
                upstep_recurrence,
            ),
            case(
                "T4.1",
                "d(n,k) counts symmetric Dyck paths of length 2n with mid-height k",
                o,
                true,
                midheight_meaning,
            ),
            case(
                "T4.2",
                "sum_k d(n,k) = binom(n, floor(n/2))",
                o,
                true,
                midheight_row_sum,
            ),
            case(
                "T4.3",
                "sum_k (k+1) d(n,k) = 2^n",
                o,
                true,
                midheight_weighted_sum,
            ),
            case(
                "C4.4",
                "average mid-height = (2^n - binom(n, floor(n/2))) / binom(n, floor(n/2))",
                o,
                true,
                average_mid_height_rows,
            ),
            case(
                "T4.5",
                "total axis points: 2 C(x^2) d(x) - C(x^2)",
                o,
                true,
                axis_points_rows,
            ),
            case(
                "T4.5s",
                "axis-point series = C(x^2)(2B(x^2)-1) + 2x B(x^2) C(x^2)^2",
                None,
                true,
                axis_points_split,
            ),
            case(
                "R4.5a",
                "axis points for n = 2m total (4m+1) C_m",
                o,
                true,
                axis_points_even,
            ),
            case(
                "R4.5b",
                "axis points over all Dyck paths of length 2n total C_(n+1)",
                o,
                true,
                dershowitz_zaks,
            ),
            case(
                "T4.6",
                "s(n,k) counts free symmetric Schroeder paths with k up steps in the left half",
                o,
                true,
                upstep_meaning,
            ),
            case("T4.7", "sum_k s(n,k) = p_(n+1)", o, true, upstep_row_sum),
            case(
                "T4.8",
                "sum_k 2^k s(n,k) = h_(n+1)",
                Some(9),
                true,
                upstep_power_sum,
            ),
            case(
                "GF1",
                "B(x^2) = 1/(1-2x^2 C(x^2)) = C(x^2)/(1-x^2 C(x^2)^2)",
                o,
                true,
                b_of_square,
            ),
            case(
                "GF2",
                "1/(1-2x) = C(x^2)/(1-x C(x^2))^2",
                o,
                true,
                power_of_two,
            ),
            case(
                "GFs",
                "s(x) = 1 + x s(x) + x^2 s(x) + x^2 s(x) R(x^2)",
                o,
                false,
                schroeder_first_return,
            ),
            case(
                "GFd",
                "d(x) = B(x^2) + x B(x^2) C(x^2) = C(x^2)/(1 - x C(x^2))",
                o,
                true,
                dyck_forms,
            ),
        ])
    }

    pub fn cases(&self) -> &[IdentityCase] {
        &self.cases
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.cases.iter().map(|c| c.id).collect()
    }

    pub fn get(&self, id: &str) -> Result<&IdentityCase> {
        self.cases
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| IdentityError::UnknownId(id.to_string()))
    }

    pub fn check(&self, id: &str, max_n: usize, modes: &ModeSelection) -> Result<IdentityReport> {
        let case = self.get(id)?;
        let mut plan: Vec<(Mode, Option<usize>)> = Vec::new();
        match modes {
            ModeSelection::Available => {
                plan.extend(case.modes.iter().map(|&(m, cap)| (m, Some(max_n.min(cap)))));
            }
            ModeSelection::Only(requested) => {
                for &mode in requested {
                    match case.cap(mode) {
                        Some(cap) if max_n > cap => {
                            return Err(IdentityError::CapExceeded {
                                id: id.to_string(),
                                mode,
                                max_n,
                                cap,
                            })
                        }
                        Some(_) => plan.push((mode, Some(max_n))),
                        None => plan.push((mode, None)),
                    }
                }
            }
        }

        let mut outcomes = Vec::new();
        let mut evaluated: Vec<(Mode, Rows)> = Vec::new();
        for (mode, limit) in plan {
            match limit {
                Some(limit) => {
                    evaluated.push((mode, (case.eval)(&self.context, mode, limit)?));
                    outcomes.push(ModeOutcome {
                        mode,
                        status: Status::Pass,
                        max_n: Some(limit),
                    });
                }
                None => outcomes.push(ModeOutcome {
                    mode,
                    status: Status::Unavailable,
                    max_n: None,
                }),
            }
        }

        let mut indices: Vec<usize> = evaluated
            .iter()
            .flat_map(|(_, rows)| rows.iter().map(|(n, _)| *n))
            .collect();
        indices.sort_unstable();
        indices.dedup();

        let mut verdicts = Vec::with_capacity(indices.len());
        let mut first_failure: Option<Failure> = None;
        for n in indices {
            let mut agreed: Option<&Value> = None;
            let mut modes_here = Vec::new();
            let mut pass = true;
            for (mode, rows) in &evaluated {
                let Some((_, ev)) = rows.iter().find(|(i, _)| *i == n) else {
                    continue;
                };
                modes_here.push(*mode);
                let mut fail = |expected: &Value, got: &Value| {
                    pass = false;
                    if let Some(o) = outcomes.iter_mut().find(|o| o.mode == *mode) {
                        o.status = Status::Fail;
                    }
                    if first_failure.is_none() {
                        first_failure = Some(Failure {
                            n,
                            expected: render_value(expected),
                            got: render_value(got),
                            mode: *mode,
                        });
                    }
                };
                if ev.lhs != ev.rhs {
                    fail(&ev.rhs, &ev.lhs);
                }
                match agreed {
                    None => agreed = Some(&ev.lhs),
                    Some(first) if *first != ev.lhs => fail(first, &ev.lhs),
                    Some(_) => {}
                }
            }
            verdicts.push(Verdict {
                n,
                value: agreed.map(|v| render_value(v)).unwrap_or_default(),
                modes: modes_here,
                pass,
            });
        }

        let status = if first_failure.is_some() {
            Status::Fail
        } else if evaluated.is_empty() {
            Status::Unavailable
        } else {
            Status::Pass
        };
        Ok(IdentityReport {
            id: id.to_string(),
            max_n,
            modes: outcomes,
            status,
            verdicts,
            first_failure,
        })
    }

    /// Checks every case concurrently; reports come back in registry order.
    pub fn check_all(&self, max_n: usize, modes: &ModeSelection) -> Vec<Result<IdentityReport>> {
        std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .cases
                .iter()
                .map(|c| {
                    let modes = match modes {
                        ModeSelection::Available => ModeSelection::Available,
                        // routes a case lacks are reported as unavailable; caps clamp
                        ModeSelection::Only(list) => ModeSelection::Only(
                            list.iter()
                                .copied()
                                .filter(|m| c.cap(*m).is_none_or(|cap| max_n <= cap))
                                .collect(),
                        ),
                    };
                    scope.spawn(move || self.check(c.id, max_n, &modes))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("identity check panicked"))
                .collect()
        })
    }
}

/// Runs the standard registry with every route at its default range.
pub fn check_all(max_n: usize) -> Vec<Result<IdentityReport>> {
    Registry::standard().check_all(max_n, &ModeSelection::Available)
}

// ---------------------------------------------------------------------------
// Averages.

/// Tolerance for the single asymptotic comparison, `10^-2`.
pub fn asymptotic_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(100))
}

/// pi to 50 decimal places, truncated (so `PI_50 <= pi < PI_50 + 10^-50`).
const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";
const PI_SCALE: u32 = 50;
/// Decimal digits carried by the square-root bracket.
const SQRT_SCALE: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticRecord {
    pub m: usize,
    /// `sqrt(pi m) - 1`, rounded to 12 places.
    pub reference: String,
    /// Upper bound on `|average - (sqrt(pi m) - 1)|`, rounded up to 12 places.
    pub difference: String,
    pub tolerance: String,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidHeightAverage {
    pub n: usize,
    pub average: BigRational,
    pub asymptotic: AsymptoticRecord,
}

/// Rational bracket `[lo, hi]` around `sqrt(pi m)`.
pub fn sqrt_pi_m_bracket(m: usize) -> (BigRational, BigRational) {
    let pi_lo = BigInt::parse_bytes(PI_DIGITS.as_bytes(), 10).expect("valid digits");
    let pi_hi = &pi_lo + 1;
    let pi_den = BigInt::from(10).pow(PI_SCALE);
    let out_den = BigInt::from(10).pow(SQRT_SCALE);
    // sqrt(pi m) * 10^S = sqrt(pi_num * m * 10^(2S) / 10^P)
    let scaled = |pi_num: &BigInt| pi_num * BigInt::from(m) * &out_den * &out_den;
    let lo = (scaled(&pi_lo) / &pi_den).sqrt();
    let hi_sq = scaled(&pi_hi).div_ceil(&pi_den);
    let mut hi = hi_sq.sqrt();
    if &hi * &hi < hi_sq {
        hi += 1;
    }
    (
        BigRational::new(lo, out_den.clone()),
        BigRational::new(hi, out_den),
    )
}

/// Exact average mid-height over symmetric Dyck paths of length `2n`, with the
/// comparison against `sqrt(pi m) - 1`, `m = floor(n/2)`.
pub fn average_mid_height(n: usize) -> MidHeightAverage {
    let c = central(n);
    let average = BigRational::new((BigInt::one() << n) - &c, c);
    let m = n / 2;
    let (lo, hi) = sqrt_pi_m_bracket(m);
    let one = BigRational::one();
    let (ref_lo, ref_hi) = (&lo - &one, &hi - &one);
    let difference = (&average - &ref_lo).abs().max((&average - &ref_hi).abs());
    let tolerance = asymptotic_tolerance();
    let midpoint = (&ref_lo + &ref_hi) / BigRational::from_integer(BigInt::from(2));
    MidHeightAverage {
        n,
        asymptotic: AsymptoticRecord {
            m,
            reference: to_decimal(&midpoint, 12),
            difference: to_decimal_ceil(&difference, 12),
            tolerance: to_decimal(&tolerance, 2),
            within_tolerance: difference <= tolerance,
        },
        average,
    }
}

/// Exact average number of axis vertices over symmetric Dyck paths of length
/// `2n`: `(4m+1)/(m+1)` for `n = 2m` and `4(m+1)/(m+2)` for `n = 2m+1`.
pub fn average_axis_points(n: usize) -> BigRational {
    let m = n / 2;
    if n.is_multiple_of(2) {
        BigRational::new(BigInt::from(4 * m + 1), BigInt::from(m + 1))
    } else {
        BigRational::new(BigInt::from(4 * (m + 1)), BigInt::from(m + 2))
    }
}

/// Decimal expansion rounded half away from zero.
pub fn to_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * BigRational::from_integer(scale);
    format_scaled(scaled.round().to_integer(), digits)
}

fn to_decimal_ceil(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = r * BigRational::from_integer(scale);
    format_scaled(scaled.ceil().to_integer(), digits)
}

fn format_scaled(v: BigInt, digits: u32) -> String {
    let negative = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int_part, frac) = padded.split_at(padded.len() - d);
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Lossy `f64` view for display.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn registry() -> Registry {
        Registry::standard()
    }

    #[test]
    fn formulas() {
        assert_eq!(midheight_formula(4, 0), big(2));
        assert_eq!(midheight_formula(5, 1), big(5));
        assert_eq!(midheight_formula(5, 2), big(0));
        assert_eq!(upstep_formula(5, 2), big(22));
        assert_eq!(catalan(4), big(14));
        assert_eq!(pell_shifted(5), [1, 2, 5, 12, 29, 70].map(big).to_vec());
        assert_eq!(ms_shifted(4), [1, 3, 10, 33, 109].map(big).to_vec());
        assert_eq!(
            (0..8).map(axis_points_closed_form).collect::<Vec<_>>(),
            [1, 2, 5, 8, 18, 30, 65, 112].map(big).to_vec()
        );
    }

    #[test]
    fn seven_instance_of_the_binomial_transform() {
        let report = registry()
            .check("T3.1", 7, &ModeSelection::Available)
            .unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.verdicts[7].value, "750");
    }

    #[test]
    fn small_instances() {
        // d_2 = -d(2,0) s_0 + d(2,2) s_2 = -1 + 3
        let report = registry()
            .check("T3.4", 2, &ModeSelection::Only(vec![Mode::ClosedForm]))
            .unwrap();
        assert!(report.passed());
        assert_eq!(report.verdicts[2].value, "2");
        // t(2,.) = (0, 2, 1): 0 + 2 + 3 = 5 = m_2
        let report = registry()
            .check("T3.6", 2, &ModeSelection::Only(vec![Mode::Riordan]))
            .unwrap();
        assert!(report.passed());
        assert_eq!(report.verdicts[2].value, "5");
        let report = registry()
            .check(
                "T3.5",
                30,
                &ModeSelection::Only(vec![Mode::ClosedForm, Mode::Riordan]),
            )
            .unwrap();
        assert!(report.passed());
        assert_eq!(report.verdicts[2].value, "3");
    }

    #[test]
    fn unavailable_and_capped_modes() {
        let report = registry()
            .check(
                "T3.6",
                5,
                &ModeSelection::Only(vec![Mode::Riordan, Mode::Oracle]),
            )
            .unwrap();
        assert!(report.passed());
        assert_eq!(report.modes[1].status, Status::Unavailable);
        assert!(matches!(
            registry().check("T3.1", 13, &ModeSelection::Only(vec![Mode::Oracle])),
            Err(IdentityError::CapExceeded { cap: 12, .. })
        ));
        assert!(matches!(
            registry().check("T9.9", 3, &ModeSelection::Available),
            Err(IdentityError::UnknownId(_))
        ));
        assert!("fast".parse::<Mode>().is_err());
    }

    #[test]
    fn everything_passes_at_zero() {
        for report in check_all(0) {
            let report = report.unwrap();
            assert!(report.passed(), "{}", report.id);
        }
    }

    #[test]
    fn corrupted_case_reports_first_failure() {
        fn off_by_one(ctx: &Context, mode: Mode, limit: usize) -> Result<Rows> {
            let mut rows = motzkin_from_dyck(ctx, mode, limit)?;
            if mode == Mode::Riordan {
                rows[3].1.lhs[0] += 1;
            }
            Ok(rows)
        }
        let mut cases = Registry::standard().cases().to_vec();
        cases[0].eval = off_by_one;
        let report = Registry::with_cases(cases)
            .check("T3.1", 6, &ModeSelection::Available)
            .unwrap();
        assert_eq!(report.status, Status::Fail);
        let failure = report.first_failure.unwrap();
        assert_eq!((failure.n, failure.mode), (3, Mode::Riordan));
        assert_eq!(
            (failure.expected.as_str(), failure.got.as_str()),
            ("13", "14")
        );
        assert!(!report.verdicts[3].pass && report.verdicts[2].pass);
    }

    #[test]
    fn averages() {
        assert_eq!(
            average_mid_height(4).average,
            BigRational::new(big(5), big(3))
        );
        assert_eq!(average_mid_height(0).average, BigRational::zero());
        assert_eq!(average_axis_points(4), BigRational::from_integer(big(3)));
        assert_eq!(average_axis_points(0), BigRational::one());
        assert_eq!(average_axis_points(5), BigRational::from_integer(big(3)));
        for n in 0..=20 {
            assert_eq!(
                average_axis_points(n),
                BigRational::new(paths::axis_points_total(n), central(n)),
                "n={n}"
            );
        }
    }

    #[test]
    fn mid_height_tracks_square_root() {
        let record = average_mid_height(4000).asymptotic;
        assert_eq!(record.m, 2000);
        assert!(record.within_tolerance, "{record:?}");
        assert!(
            record.difference.starts_with("0.004"),
            "{}",
            record.difference
        );
    }

    #[test]
    fn pi_bracket_is_tight() {
        let (lo, hi) = sqrt_pi_m_bracket(1);
        assert!(hi > lo);
        assert!(&hi - &lo < BigRational::new(big(1), BigInt::from(10).pow(25u32)));
        assert_eq!(to_decimal(&lo, 10), "1.7724538509");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&BigRational::new(big(5), big(3)), 4), "1.6667");
        assert_eq!(to_decimal(&BigRational::new(big(-1), big(8)), 2), "-0.13");
        assert_eq!(to_decimal(&BigRational::new(big(3), big(1)), 0), "3");
        assert_eq!(to_decimal(&BigRational::new(big(1), big(200)), 1), "0.0");
    }

    proptest! {
        #[test]
        fn binomial_transform_round_trips(values in prop::collection::vec(-1000i64..1000, 1..=21)) {
            let a: Vec<BigInt> = values.into_iter().map(BigInt::from).collect();
            prop_assert_eq!(inverse_binomial_transform(&binomial_transform(&a)), a.clone());
            prop_assert_eq!(binomial_transform(&inverse_binomial_transform(&a)), a);
        }
    }
}
