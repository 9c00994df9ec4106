//! Executable versions of the combinatorial maps between path families.
//!
//! Everything here works on left halves of symmetric paths:
//!
//! - [`remove_levels`] / [`insert_levels`]: symmetric Motzkin halves versus
//!   symmetric Dyck halves plus a multiset of insertion vertices.
//! - [`remove_wide_levels`] / [`insert_wide_levels`]: the same for `H` steps
//!   and symmetric Schröder halves.
//! - [`phi`] / [`phi_inverse`]: nonnegative Dyck halves with a choice of
//!   `0 <= i <= k` (`k` the mid-height) versus free Dyck halves.
//! - [`psi`] / [`psi_inverse`]: free Schröder halves with an up-step mask versus
//!   free MS halves.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::paths::{Enumerator, FamilySpec, LatticePath, PathError, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("path {path} is not a {family} half")]
    NotInFamily { path: String, family: String },
    #[error("cannot lower {i} last ascents of a path with mid-height {k}")]
    TooManyAscents { i: usize, k: usize },
    #[error("mask has {got} bits but the path has {expected} up steps")]
    MaskLength { expected: usize, got: usize },
    #[error("insertion vertex {vertex} lies beyond the last vertex {last}")]
    VertexOutOfRange { vertex: usize, last: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

pub type Result<T> = std::result::Result<T, BijectionError>;

fn require(spec: FamilySpec, path: &LatticePath) -> Result<()> {
    if spec.admits(path) {
        Ok(())
    } else {
        Err(BijectionError::NotInFamily {
            path: path.to_string(),
            family: spec.name(),
        })
    }
}

/// Strips every `level` step, recording for each the vertex of the remaining
/// path it sat on. Vertices are indexed by the number of kept steps before them.
fn strip(path: &LatticePath, level: Step) -> (LatticePath, Vec<usize>) {
    let mut kept = Vec::with_capacity(path.steps().len());
    let mut positions = Vec::new();
    for &s in path.steps() {
        if s == level {
            positions.push(kept.len());
        } else {
            kept.push(s);
        }
    }
    (LatticePath::new(kept), positions)
}

fn insert(base: &LatticePath, positions: &[usize], level: Step) -> Result<LatticePath> {
    let last = base.steps().len();
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    if let Some(&vertex) = sorted.last().filter(|&&v| v > last) {
        return Err(BijectionError::VertexOutOfRange { vertex, last });
    }
    let mut steps = Vec::with_capacity(last + sorted.len());
    let mut pending = sorted.into_iter().peekable();
    for v in 0..=last {
        while pending.next_if_eq(&v).is_some() {
            steps.push(level);
        }
        if let Some(&s) = base.steps().get(v) {
            steps.push(s);
        }
    }
    Ok(LatticePath::new(steps))
}

/// Symmetric Motzkin half to (symmetric Dyck half, insertion vertices).
pub fn remove_levels(path: &LatticePath) -> Result<(LatticePath, Vec<usize>)> {
    require(FamilySpec::motzkin(), path)?;
    Ok(strip(path, Step::Level))
}

/// Inverse of [`remove_levels`]: drops an `h` at each listed vertex (a multiset).
pub fn insert_levels(dyck: &LatticePath, positions: &[usize]) -> Result<LatticePath> {
    require(FamilySpec::dyck(), dyck)?;
    insert(dyck, positions, Step::Level)
}

/// Symmetric Schröder half to (symmetric Dyck half, insertion vertices).
pub fn remove_wide_levels(path: &LatticePath) -> Result<(LatticePath, Vec<usize>)> {
    require(FamilySpec::schroeder(), path)?;
    Ok(strip(path, Step::WideLevel))
}

pub fn insert_wide_levels(dyck: &LatticePath, positions: &[usize]) -> Result<LatticePath> {
    require(FamilySpec::dyck(), dyck)?;
    insert(dyck, positions, Step::WideLevel)
}

/// All multisets of size `k` drawn from `0..=last`, in nondecreasing order.
pub fn vertex_multisets(last: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, last: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=last {
            cur.push(v);
            go(v, last, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, last, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// A nonnegative Dyck half with the last ascent to each height `1..=k` marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscentMarking {
    pub path: LatticePath,
    /// `last_ascents[i - 1]` is the step index of the last up step ending at height `i`.
    pub last_ascents: Vec<usize>,
}

impl AscentMarking {
    pub fn new(path: &LatticePath) -> Result<Self> {
        require(FamilySpec::dyck(), path)?;
        let k = path.end_height() as usize;
        let mut last_ascents = vec![usize::MAX; k];
        let mut h = 0i64;
        for (idx, &s) in path.steps().iter().enumerate() {
            h += s.rise();
            if s == Step::Up && (h as usize) <= k {
                last_ascents[h as usize - 1] = idx;
            }
        }
        Ok(Self {
            path: path.clone(),
            last_ascents,
        })
    }

    pub fn mid_height(&self) -> usize {
        self.last_ascents.len()
    }
}

/// Turns the last ascents to heights `1..=i` into down steps.
pub fn phi(q: &LatticePath, i: usize) -> Result<LatticePath> {
    let marking = AscentMarking::new(q)?;
    let k = marking.mid_height();
    if i > k {
        return Err(BijectionError::TooManyAscents { i, k });
    }
    let mut steps = q.steps().to_vec();
    for &idx in &marking.last_ascents[..i] {
        steps[idx] = Step::Down;
    }
    Ok(LatticePath::new(steps))
}

/// Step indices of the premier descents: scanning left to right, the first
/// step down from each height `0, -1, -2, ...`.
pub fn premier_steps(p: &LatticePath) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut h, mut floor) = (0i64, 0i64);
    for (idx, &s) in p.steps().iter().enumerate() {
        if s == Step::Down && h == floor {
            out.push(idx);
            floor -= 1;
        }
        h += s.rise();
    }
    out
}

/// Recovers `(Q, i)` with `phi(Q, i) = p` by raising every premier descent.
pub fn phi_inverse(p: &LatticePath) -> Result<(LatticePath, usize)> {
    require(FamilySpec::dyck().free(), p)?;
    let premier = premier_steps(p);
    let mut steps = p.steps().to_vec();
    for &idx in &premier {
        steps[idx] = Step::Up;
    }
    Ok((LatticePath::new(steps), premier.len()))
}

/// One bit per up step of a free Schröder half, in left-to-right order;
/// a set bit turns that up step into an `h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpStepMask(pub Vec<bool>);

impl UpStepMask {
    pub fn from_bits(bits: &[u8]) -> Self {
        Self(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^len` masks, in binary counting order.
    pub fn all(len: usize) -> impl Iterator<Item = UpStepMask> {
        (0u64..1 << len).map(move |word| UpStepMask((0..len).map(|b| word >> b & 1 == 1).collect()))
    }
}

impl fmt::Display for UpStepMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

/// Free Schröder half plus mask to a free MS half.
pub fn psi(q: &LatticePath, mask: &UpStepMask) -> Result<LatticePath> {
    require(FamilySpec::schroeder().free(), q)?;
    let ups = q.count_of(Step::Up);
    if mask.len() != ups {
        return Err(BijectionError::MaskLength {
            expected: ups,
            got: mask.len(),
        });
    }
    let mut bits = mask.0.iter();
    let steps = q
        .steps()
        .iter()
        .map(|&s| match s {
            Step::Up if *bits.next().expect("mask length checked") => Step::Level,
            other => other,
        })
        .collect();
    Ok(LatticePath::new(steps))
}

/// Raises every `h` back to `U`, remembering which up steps it produced.
pub fn psi_inverse(p: &LatticePath) -> Result<(LatticePath, UpStepMask)> {
    require(FamilySpec::ms().free(), p)?;
    let mut bits = Vec::new();
    let steps = p
        .steps()
        .iter()
        .map(|&s| match s {
            Step::Up => {
                bits.push(false);
                Step::Up
            }
            Step::Level => {
                bits.push(true);
                Step::Up
            }
            other => other,
        })
        .collect();
    Ok((LatticePath::new(steps), UpStepMask(bits)))
}

/// Outcome of pushing every admissible input through a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    /// Number of (input, choice) pairs mapped.
    pub images: u64,
    /// Number of distinct outputs.
    pub distinct: u64,
    /// Size of the target family, by enumeration.
    pub target: u64,
    /// Every output lies in the target family and the inverse recovers the input.
    pub round_trips: bool,
}

impl Census {
    /// Injective and onto the target family.
    pub fn is_bijection(&self) -> bool {
        self.round_trips && self.images == self.distinct && self.distinct == self.target
    }
}

/// Runs [`phi`] over every nonnegative Dyck half of length `n` and every `i`.
pub fn phi_census(n: usize, enumerator: &Enumerator) -> Result<Census> {
    let free = FamilySpec::dyck().free();
    let mut seen = HashSet::new();
    let mut images = 0u64;
    let mut round_trips = true;
    let mut failure = None;
    enumerator.for_each(&FamilySpec::dyck(), n, |half| {
        let q = LatticePath::new(half.to_vec());
        let k = q.end_height() as usize;
        for i in 0..=k {
            match phi(&q, i) {
                Ok(image) => {
                    images += 1;
                    round_trips &= free.admits(&image)
                        && image.end_height() == k as i64 - 2 * i as i64
                        && (i == 0 || image.min_height() < 0)
                        && phi_inverse(&image).ok() == Some((q.clone(), i));
                    seen.insert(image);
                }
                Err(e) => failure = Some(e),
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Census {
        images,
        distinct: seen.len() as u64,
        target: enumerator.count(&free, n)?,
        round_trips,
    })
}

/// Runs [`psi`] over every free Schröder half of length `n` and every mask.
pub fn psi_census(n: usize, enumerator: &Enumerator) -> Result<Census> {
    let ms = FamilySpec::ms().free();
    let mut seen = HashSet::new();
    let mut images = 0u64;
    let mut round_trips = true;
    let mut failure = None;
    enumerator.for_each(&FamilySpec::schroeder().free(), n, |half| {
        let q = LatticePath::new(half.to_vec());
        for mask in UpStepMask::all(q.count_of(Step::Up)) {
            match psi(&q, &mask) {
                Ok(image) => {
                    images += 1;
                    round_trips &= ms.admits(&image)
                        && image.length() == n
                        && psi_inverse(&image).ok() == Some((q.clone(), mask));
                    seen.insert(image);
                }
                Err(e) => failure = Some(e),
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    // and the other direction: every MS half comes back to itself
    let mut backwards = true;
    enumerator.for_each(&ms, n, |half| {
        let p = LatticePath::new(half.to_vec());
        backwards &= psi_inverse(&p)
            .and_then(|(q, mask)| psi(&q, &mask))
            .is_ok_and(|again| again == p);
    })?;
    Ok(Census {
        images,
        distinct: seen.len() as u64,
        target: enumerator.count(&ms, n)?,
        round_trips: round_trips && backwards,
    })
}
