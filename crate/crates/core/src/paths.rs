//! Lattice paths over `U = (1,1)`, `D = (1,-1)`, `h = (1,0)` and `H = (2,0)`.
//!
//! Symmetric paths of length `2n` are handled as their left halves of x-length
//! `n`: the right half is the reversed left half with `U` and `D` swapped, and a
//! half made of whole steps always leaves a vertex at the midpoint.
//!
//! Counting comes in two independent flavours: dynamic programming over
//! `(x, height)` with big integers, and explicit depth-first enumeration in
//! lexicographic order `U < D < h < H` under a configurable size cap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest half-length the enumerators accept by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("half-length {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("`{0}` is not a step; expected one of U, D, h, H")]
    InvalidStep(char),
}

pub type Result<T> = std::result::Result<T, PathError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
    /// Level step of width 1 (`h`).
    Level,
    /// Level step of width 2 (`H`).
    WideLevel,
}

impl Step {
    pub fn width(self) -> usize {
        match self {
            Step::WideLevel => 2,
            _ => 1,
        }
    }

    pub fn rise(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
            Step::Level | Step::WideLevel => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Level => 'h',
            Step::WideLevel => 'H',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            'U' => Ok(Step::Up),
            'D' => Ok(Step::Down),
            'h' => Ok(Step::Level),
            'H' => Ok(Step::WideLevel),
            other => Err(PathError::InvalidStep(other)),
        }
    }

    /// The step seen when the path is read right to left.
    pub fn mirrored(self) -> Self {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            level => level,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    /// x-length: the sum of the step widths.
    pub fn length(&self) -> usize {
        self.steps.iter().map(|s| s.width()).sum()
    }

    /// Height after each step.
    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.rise();
                Some(*h)
            })
            .collect()
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.rise()).sum()
    }

    pub fn min_height(&self) -> i64 {
        self.heights().into_iter().min().unwrap_or(0).min(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.min_height() >= 0
    }

    pub fn count_of(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// `(x, y)` of every vertex, starting with the origin.
    pub fn vertices(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0usize, 0i64);
        out.push((x, y));
        for s in &self.steps {
            x += s.width();
            y += s.rise();
            out.push((x, y));
        }
        out
    }

    /// The full symmetric path whose left half is `self`.
    pub fn mirror_full(&self) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.extend(self.steps.iter().rev().map(|s| s.mirrored()));
        LatticePath { steps }
    }

    /// Steps separated by single spaces, as in figure captions.
    pub fn spaced(&self) -> String {
        let mut out = String::with_capacity(2 * self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push(s.symbol());
        }
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    /// Accepts compact (`UDhH`) or whitespace-separated (`U D h H`) strings.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(Step::from_symbol)
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

/// A path family: which level steps are allowed, whether the path must stay
/// weakly above the axis, and whether it is symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub narrow_levels: bool,
    pub wide_levels: bool,
    pub nonnegative: bool,
    pub symmetric: bool,
}

impl FamilySpec {
    const fn symmetric_with(narrow_levels: bool, wide_levels: bool) -> Self {
        Self {
            narrow_levels,
            wide_levels,
            nonnegative: true,
            symmetric: true,
        }
    }

    pub const fn dyck() -> Self {
        Self::symmetric_with(false, false)
    }

    pub const fn motzkin() -> Self {
        Self::symmetric_with(true, false)
    }

    pub const fn schroeder() -> Self {
        Self::symmetric_with(false, true)
    }

    pub const fn ms() -> Self {
        Self::symmetric_with(true, true)
    }

    /// Drops the nonnegativity constraint.
    pub const fn free(self) -> Self {
        Self {
            nonnegative: false,
            ..self
        }
    }

    /// Drops the symmetry constraint: full paths of length `2n` back to the axis.
    pub const fn plain(self) -> Self {
        Self {
            symmetric: false,
            ..self
        }
    }

    /// Allowed steps in enumeration order.
    pub fn alphabet(&self) -> Vec<Step> {
        let mut steps = vec![Step::Up, Step::Down];
        if self.narrow_levels {
            steps.push(Step::Level);
        }
        if self.wide_levels {
            steps.push(Step::WideLevel);
        }
        steps
    }

    pub fn admits(&self, path: &LatticePath) -> bool {
        let alphabet = self.alphabet();
        path.steps().iter().all(|s| alphabet.contains(s))
            && (!self.nonnegative || path.is_nonnegative())
    }

    pub fn name(&self) -> String {
        let base = match (self.narrow_levels, self.wide_levels) {
            (false, false) => "Dyck",
            (true, false) => "Motzkin",
            (false, true) => "Schroeder",
            (true, true) => "MS",
        };
        format!(
            "{} {} {}",
            if self.nonnegative {
                "nonnegative"
            } else {
                "free"
            },
            if self.symmetric { "symmetric" } else { "plain" },
            base
        )
    }

    /// Every combination of level alphabet, sign constraint and symmetry.
    pub fn all() -> Vec<FamilySpec> {
        let mut out = Vec::with_capacity(16);
        for symmetric in [true, false] {
            for base in [Self::dyck(), Self::motzkin(), Self::schroeder(), Self::ms()] {
                for nonnegative in [true, false] {
                    out.push(FamilySpec {
                        nonnegative,
                        symmetric,
                        ..base
                    });
                }
            }
        }
        out
    }

    /// x-length walked by a member of half-length `n`.
    fn walk_length(&self, n: usize) -> usize {
        if self.symmetric {
            n
        } else {
            2 * n
        }
    }
}

/// Explicit path enumeration with a size guard.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(PathError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Calls `visit` with the steps of every member of half-length `n`, in
    /// lexicographic order. Symmetric families yield left halves.
    pub fn for_each<F: FnMut(&[Step])>(
        &self,
        spec: &FamilySpec,
        n: usize,
        mut visit: F,
    ) -> Result<()> {
        self.check(n)?;
        let walker = Walker {
            alphabet: spec.alphabet(),
            length: spec.walk_length(n),
            nonnegative: spec.nonnegative,
            return_to_axis: !spec.symmetric,
        };
        let mut buf = Vec::with_capacity(walker.length);
        walker.walk(&mut buf, 0, 0, &mut visit);
        Ok(())
    }

    pub fn enumerate(&self, spec: &FamilySpec, n: usize) -> Result<Vec<LatticePath>> {
        let mut out = Vec::new();
        self.for_each(spec, n, |steps| out.push(LatticePath::new(steps.to_vec())))?;
        Ok(out)
    }

    pub fn count(&self, spec: &FamilySpec, n: usize) -> Result<u64> {
        let mut total = 0u64;
        self.for_each(spec, n, |_| total += 1)?;
        Ok(total)
    }
}

struct Walker {
    alphabet: Vec<Step>,
    length: usize,
    nonnegative: bool,
    return_to_axis: bool,
}

impl Walker {
    fn walk<F: FnMut(&[Step])>(&self, buf: &mut Vec<Step>, x: usize, h: i64, visit: &mut F) {
        if x == self.length {
            if !self.return_to_axis || h == 0 {
                visit(buf);
            }
            return;
        }
        for &step in &self.alphabet {
            let nx = x + step.width();
            let nh = h + step.rise();
            if nx > self.length || (self.nonnegative && nh < 0) {
                continue;
            }
            if self.return_to_axis && nh.unsigned_abs() as usize > self.length - nx {
                continue;
            }
            buf.push(step);
            self.walk(buf, nx, nh, visit);
            buf.pop();
        }
    }
}

/// Convenience wrapper over [`Enumerator::enumerate`] with the default cap.
pub fn enumerate(spec: &FamilySpec, n: usize) -> Result<Vec<LatticePath>> {
    Enumerator::default().enumerate(spec, n)
}

/// Dense table of big-integer counts indexed by height in `[-span, span]`.
#[derive(Clone)]
struct HeightRow {
    span: i64,
    cells: Vec<BigInt>,
}

impl HeightRow {
    fn new(span: usize) -> Self {
        Self {
            span: span as i64,
            cells: vec![BigInt::zero(); 2 * span + 1],
        }
    }

    fn slot(&self, h: i64) -> Option<usize> {
        (h.abs() <= self.span).then(|| (h + self.span) as usize)
    }

    fn get(&self, h: i64) -> BigInt {
        self.slot(h)
            .map_or_else(BigInt::zero, |i| self.cells[i].clone())
    }

    fn add(&mut self, h: i64, v: &BigInt) {
        if let Some(i) = self.slot(h) {
            self.cells[i] += v;
        }
    }

    fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, v)| (i as i64 - self.span, v))
            .filter(|(_, v)| !v.is_zero())
    }
}

/// Counts and axis-vertex sums over all prefixes, per end height.
struct AxisTable {
    counts: Vec<HeightRow>,
    /// Sum over prefixes ending at `(x, h)` of the number of axis vertices at `x' < x`.
    axis: Vec<HeightRow>,
}

fn prefix_table(spec: &FamilySpec, length: usize) -> AxisTable {
    let alphabet = spec.alphabet();
    let mut counts = vec![HeightRow::new(length); length + 1];
    let mut axis = vec![HeightRow::new(length); length + 1];
    counts[0].add(0, &BigInt::one());
    for x in 0..length {
        let here: Vec<(i64, BigInt, BigInt)> = counts[x]
            .iter()
            .map(|(h, c)| (h, c.clone(), axis[x].get(h)))
            .collect();
        for (h, c, a) in here {
            let carried = if h == 0 { &a + &c } else { a };
            for &step in &alphabet {
                let nx = x + step.width();
                let nh = h + step.rise();
                if nx > length || (spec.nonnegative && nh < 0) {
                    continue;
                }
                counts[nx].add(nh, &c);
                axis[nx].add(nh, &carried);
            }
        }
    }
    AxisTable { counts, axis }
}

/// Number of members of half-length `n`, by dynamic programming.
pub fn count(spec: &FamilySpec, n: usize) -> BigInt {
    let table = prefix_table(spec, spec.walk_length(n));
    let last = &table.counts[spec.walk_length(n)];
    if spec.symmetric {
        last.iter().map(|(_, c)| c).sum()
    } else {
        last.get(0)
    }
}

/// End-height distribution of the left halves of a symmetric family, as `(height, count)`.
pub fn half_height_distribution(spec: &FamilySpec, n: usize) -> Vec<(i64, BigInt)> {
    let table = prefix_table(
        &FamilySpec {
            symmetric: true,
            ..*spec
        },
        n,
    );
    table.counts[n]
        .iter()
        .map(|(h, c)| (h, c.clone()))
        .collect()
}

/// `d(n, k)`: symmetric Dyck paths of length `2n` with mid-height `k`.
pub fn count_midheight(n: usize, k: i64) -> BigInt {
    if k < 0 || k > n as i64 || (n as i64 - k) % 2 != 0 {
        return BigInt::zero();
    }
    prefix_table(&FamilySpec::dyck(), n).counts[n].get(k)
}

/// Row `n` of `d(n, k)` for `k = 0..=n`.
pub fn midheight_row(n: usize) -> Vec<BigInt> {
    let table = prefix_table(&FamilySpec::dyck(), n);
    (0..=n as i64).map(|k| table.counts[n].get(k)).collect()
}

/// Row `n` of `s(n, k)`: free symmetric Schröder halves of x-length `n` with `k` up steps.
pub fn free_schroeder_upstep_row(n: usize) -> Vec<BigInt> {
    // by_ups[x][k]: prefixes of x-length x holding k up steps
    let mut by_ups = vec![vec![BigInt::zero(); n + 1]; n + 1];
    by_ups[0][0] = BigInt::one();
    for x in 0..n {
        for k in 0..=x {
            let c = by_ups[x][k].clone();
            if c.is_zero() {
                continue;
            }
            by_ups[x + 1][k + 1] += &c;
            by_ups[x + 1][k] += &c;
            if x + 2 <= n {
                by_ups[x + 2][k] += &c;
            }
        }
    }
    by_ups.swap_remove(n)
}

pub fn count_free_schroeder_by_upsteps(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    free_schroeder_upstep_row(n)[k].clone()
}

/// Total number of axis vertices, endpoints included, over all symmetric Dyck
/// paths of length `2n`.
pub fn axis_points_total(n: usize) -> BigInt {
    let table = prefix_table(&FamilySpec::dyck(), n);
    // left-half axis vertices at x < n appear twice in the full path; the midpoint once
    table.counts[n]
        .iter()
        .map(|(h, c)| {
            let doubled = table.axis[n].get(h) * 2;
            if h == 0 {
                doubled + c
            } else {
                doubled
            }
        })
        .sum()
}

fn axis_vertices(path: &LatticePath) -> usize {
    path.vertices().iter().filter(|(_, y)| *y == 0).count()
}

/// [`axis_points_total`] by enumerating and mirroring every path.
pub fn axis_points_total_enumerated(n: usize, enumerator: &Enumerator) -> Result<BigInt> {
    let mut total = 0usize;
    enumerator.for_each(&FamilySpec::dyck(), n, |half| {
        total += axis_vertices(&LatticePath::new(half.to_vec()).mirror_full());
    })?;
    Ok(BigInt::from(total))
}

/// `sum_k k d(n, k)`.
pub fn mid_height_total(n: usize) -> BigInt {
    midheight_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| c * k)
        .sum()
}

/// Total axis vertices over all (not necessarily symmetric) Dyck paths of
/// length `2n`, by enumeration.
pub fn dyck_axis_points_total(n: usize, enumerator: &Enumerator) -> Result<BigInt> {
    let mut total = 0usize;
    enumerator.for_each(&FamilySpec::dyck().plain(), n, |steps| {
        total += axis_vertices(&LatticePath::new(steps.to_vec()));
    })?;
    Ok(BigInt::from(total))
}

/// [`dyck_axis_points_total`] by dynamic programming.
pub fn dyck_axis_points_total_dp(n: usize) -> BigInt {
    let table = prefix_table(&FamilySpec::dyck().plain(), 2 * n);
    // axis[2n] counts vertices before the endpoint; add the endpoint for every path
    table.axis[2 * n].get(0) + table.counts[2 * n].get(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn strings(paths: &[LatticePath]) -> Vec<String> {
        paths.iter().map(|p| p.to_string()).collect()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn path_basics() {
        let path = p("U D h H U");
        assert_eq!(path.length(), 6);
        assert_eq!(path.heights(), vec![1, 0, 0, 0, 1]);
        assert_eq!(path.to_string(), "UDhHU");
        assert_eq!(path.spaced(), "U D h H U");
        assert_eq!(p("UUD").mirror_full().to_string(), "UUDUDD");
        assert_eq!(p("DU").min_height(), -1);
        assert_eq!(
            "UX".parse::<LatticePath>(),
            Err(PathError::InvalidStep('X'))
        );
        assert_eq!(p("UDU").vertices(), vec![(0, 0), (1, 1), (2, 0), (3, 1)]);
    }

    #[test]
    fn enumeration_examples() {
        let dyck = enumerate(&FamilySpec::dyck(), 3).unwrap();
        assert_eq!(strings(&dyck), vec!["UUU", "UUD", "UDU"]);
        assert_eq!(
            strings(&enumerate(&FamilySpec::dyck().free(), 1).unwrap()),
            vec!["U", "D"]
        );
        assert_eq!(
            strings(&enumerate(&FamilySpec::schroeder().free(), 2).unwrap()),
            vec!["UU", "UD", "DU", "DD", "H"]
        );
        assert_eq!(
            enumerate(&FamilySpec::dyck(), 15),
            Err(PathError::CapExceeded { n: 15, cap: 14 })
        );
        assert_eq!(
            Enumerator::with_cap(20)
                .count(&FamilySpec::dyck(), 15)
                .unwrap(),
            6435
        );
        assert_eq!(
            strings(&enumerate(&FamilySpec::dyck().plain(), 2).unwrap()),
            vec!["UUDD", "UDUD"]
        );
    }

    #[test]
    fn enumeration_is_sorted_and_admissible() {
        for spec in FamilySpec::all() {
            let paths = enumerate(&spec, 5).unwrap();
            assert!(paths.windows(2).all(|w| w[0] < w[1]), "{}", spec.name());
            for path in &paths {
                assert!(spec.admits(path));
                let expected_len = if spec.symmetric { 5 } else { 10 };
                assert_eq!(path.length(), expected_len);
                if !spec.symmetric {
                    assert_eq!(path.end_height(), 0);
                }
            }
        }
    }

    #[test]
    fn dp_counts() {
        let d: Vec<BigInt> = (0..8).map(|n| count(&FamilySpec::dyck(), n)).collect();
        assert_eq!(ints(&d), vec![1, 1, 2, 3, 6, 10, 20, 35]);
        assert_eq!(count(&FamilySpec::dyck().free(), 10), BigInt::from(1024));
        assert_eq!(count(&FamilySpec::ms().free(), 4), BigInt::from(109));
        assert_eq!(count(&FamilySpec::dyck().plain(), 5), BigInt::from(42));
    }

    #[test]
    fn dp_matches_enumeration_small() {
        for spec in FamilySpec::all() {
            for n in 0..=6 {
                assert_eq!(
                    count(&spec, n),
                    BigInt::from(Enumerator::default().count(&spec, n).unwrap()),
                    "{} n={n}",
                    spec.name()
                );
            }
        }
    }

    #[test]
    fn midheights() {
        assert_eq!(ints(&midheight_row(4)), vec![2, 0, 3, 0, 1]);
        assert_eq!(count_midheight(5, 1), BigInt::from(5));
        for n in 0..10 {
            assert_eq!(count_midheight(n, n as i64), BigInt::one());
        }
        assert!(count_midheight(4, -2).is_zero());
        assert!(count_midheight(4, 1).is_zero());
    }

    #[test]
    fn upstep_rows() {
        assert_eq!(ints(&free_schroeder_upstep_row(4)), vec![5, 10, 9, 4, 1]);
        assert_eq!(ints(&free_schroeder_upstep_row(3)), vec![3, 5, 3, 1]);
        assert_eq!(ints(&free_schroeder_upstep_row(0)), vec![1]);
        assert_eq!(count_free_schroeder_by_upsteps(5, 2), BigInt::from(22));
    }

    #[test]
    fn recurrences() {
        // d(n,k) = d(n-1,k-1) + d(n-1,k+1);  s(n,k) = s(n-1,k-1) + s(n-1,k) + s(n-2,k)
        let at = |row: &Vec<BigInt>, k: i64| -> BigInt {
            usize::try_from(k)
                .ok()
                .and_then(|k| row.get(k).cloned())
                .unwrap_or_default()
        };
        let d_rows: Vec<_> = (0..16).map(midheight_row).collect();
        let s_rows: Vec<_> = (0..16).map(free_schroeder_upstep_row).collect();
        for n in 1..16 {
            for k in 0..=n as i64 {
                assert_eq!(
                    at(&d_rows[n], k),
                    at(&d_rows[n - 1], k - 1) + at(&d_rows[n - 1], k + 1)
                );
                let two_back = if n >= 2 {
                    at(&s_rows[n - 2], k)
                } else {
                    BigInt::zero()
                };
                assert_eq!(
                    at(&s_rows[n], k),
                    at(&s_rows[n - 1], k - 1) + at(&s_rows[n - 1], k) + two_back
                );
            }
        }
    }

    #[test]
    fn axis_points() {
        let expected = [1, 2, 5, 8, 18, 30, 65, 112];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(axis_points_total(n), BigInt::from(e), "n={n}");
            assert_eq!(
                axis_points_total_enumerated(n, &Enumerator::default()).unwrap(),
                BigInt::from(e)
            );
        }
        // UUDD has two axis vertices, UDUD three
        assert_eq!(axis_vertices(&p("UU").mirror_full()), 2);
        assert_eq!(axis_vertices(&p("UD").mirror_full()), 3);
    }

    #[test]
    fn mid_height_totals() {
        assert_eq!(mid_height_total(0), BigInt::zero());
        assert_eq!(mid_height_total(4), BigInt::from(10));
    }

    #[test]
    fn dershowitz_zaks() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=7 {
            let e = BigInt::from(catalan[n + 1]);
            assert_eq!(
                dyck_axis_points_total(n, &Enumerator::default()).unwrap(),
                e
            );
            assert_eq!(dyck_axis_points_total_dp(n), e);
        }
    }
}
