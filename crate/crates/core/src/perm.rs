//! Permutations of `{0, .., k-1}`, integer partitions and cycle statistics.
//!
//! Products are read right to left: `compose(a, b)` applies `b` first.
//! The textual cycle notation is 1-based and prints fixed points, e.g.
//! `(1 6 8 9)(2 5)(3)(4)(7)(10)(11)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection of `{0, .., k-1}` stored in one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self {
            images: (0..k).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "images {images:?} do not form a bijection of 0..{k}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation of degree `k` from disjoint 0-based cycles.
    /// Points not mentioned are fixed.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut seen = vec![false; k];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= k || seen[x] {
                    return Err(Error::InvalidArgument(format!(
                        "cycle {cycle:?} repeats a point or leaves 0..{k}"
                    )));
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses 1-based cycle notation for a permutation of degree `k`.
    /// Fixed points may be omitted.
    pub fn parse_with_degree(s: &str, k: usize) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        Self::from_cycles(k, &cycles)
    }

    /// The full cycle `(1 2 ... k)`.
    pub fn full_cycle(k: usize) -> Self {
        Self {
            images: (0..k).map(|i| (i + 1) % k.max(1)).collect(),
        }
    }

    /// Canonical representative of the class `mu`: cycles of lengths
    /// `mu_1, mu_2, ..` on consecutive blocks starting at the first point.
    pub fn canonical_class_rep(mu: &Partition) -> Self {
        let mut images = Vec::with_capacity(mu.size());
        let mut start = 0;
        for &part in mu.parts() {
            for i in 0..part {
                images.push(start + (i + 1) % part);
            }
            start += part;
        }
        Self { images }
    }

    /// Degree `k` of the permutation.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles, each starting at its minimum, sorted by minimum. Fixed points
    /// are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.images.len();
        let mut seen = vec![false; k];
        let mut cycles = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// For every point, the index of its cycle in [`Permutation::cycles`] order.
    pub fn cycle_index(&self) -> (Vec<usize>, usize) {
        let k = self.images.len();
        let mut index = vec![usize::MAX; k];
        let mut count = 0;
        for start in 0..k {
            if index[start] != usize::MAX {
                continue;
            }
            let mut x = start;
            while index[x] == usize::MAX {
                index[x] = count;
                x = self.images[x];
            }
            count += 1;
        }
        (index, count)
    }

    /// Number of cycles, fixed points included.
    pub fn kappa(&self) -> usize {
        self.cycle_index().1
    }

    pub fn cycle_type(&self) -> Partition {
        let parts = self.cycles().iter().map(Vec::len).collect();
        Partition::from_unsorted(parts)
    }
}

/// `a ∘ b`, the permutation `x ↦ a(b(x))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::SizeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(Permutation {
        images: b.images.iter().map(|&x| a.images[x]).collect(),
    })
}

/// Number of cycles of `a`.
pub fn kappa(a: &Permutation) -> usize {
    a.kappa()
}

/// Canonical cycle decomposition of `a` (0-based points).
pub fn cycle_decomposition(a: &Permutation) -> Vec<Vec<usize>> {
    a.cycles()
}

pub fn full_cycle(k: usize) -> Permutation {
    Permutation::full_cycle(k)
}

pub fn canonical_class_rep(mu: &Partition) -> Permutation {
    Permutation::canonical_class_rep(mu)
}

/// All permutations of degree `k` in lexicographic order of one-line form.
pub fn enumerate_permutations(k: usize) -> impl Iterator<Item = Permutation> {
    (0..k).permutations(k).map(|images| Permutation { images })
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let cycle = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad symbol {t:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if cycle.is_empty() {
            return Err(Error::Parse(format!("empty cycle in {s:?}")));
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses 1-based cycle notation; the degree is the largest symbol present.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let k = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Self::from_cycles(k, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "({})", cycle.iter().map(|x| x + 1).join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `1^n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// The size `|λ|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self(
            (0..width)
                .map(|c| self.0.iter().filter(|&&p| p > c).count())
                .collect(),
        )
    }

    /// `λ` followed by `extra` parts equal to 1.
    pub fn pad_ones(&self, extra: usize) -> Self {
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, extra));
        Self(parts)
    }

    /// Multiplicity of each part size `1..=max`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let max = self.0.first().copied().unwrap_or(0);
        let mut mult = vec![0; max + 1];
        for &p in &self.0 {
            mult[p] += 1;
        }
        mult
    }

    /// The sign of any permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Accepts `3,2,1`, `(3,2,1)` or `()`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Partitions of `d` in decreasing lexicographic order, starting at `(d)`.
pub fn partitions_of(d: usize) -> impl Iterator<Item = Partition> {
    let mut next = Some(if d == 0 { Vec::new() } else { vec![d] });
    std::iter::from_fn(move || {
        let current = next.take()?;
        next = successor(&current);
        Some(Partition(current))
    })
}

// Next partition in decreasing lexicographic order.
fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pos = parts.iter().rposition(|&p| p > 1)?;
    let mut next = parts[..pos].to_vec();
    let reduced = parts[pos] - 1;
    let mut remaining = parts[pos..].iter().sum::<usize>();
    while remaining > 0 {
        let take = reduced.min(remaining);
        next.push(take);
        remaining -= take;
    }
    Some(next)
}
