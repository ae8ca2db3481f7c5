//! The coloured symmetric group: permutations whose cycles carry colours in
//! `1..=m`, and the product `(α, ψ) ∘ β` that colours each cycle of `αβ` by
//! the largest colour of an `α`-cycle it meets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{compose, Permutation};
use crate::polyring::{Context, Monomial};

/// A permutation with a colour in `1..=m` on each cycle.
///
/// Colours are stored keyed by the minimum point of each cycle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredPermutation {
    perm: Permutation,
    colours: Vec<(usize, usize)>,
    m: usize,
}

/// Number of cycles of each colour; entry `i` counts colour `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColourVector {
    counts: Vec<usize>,
}

/// Which variable family a weight monomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    P,
    Q,
}

impl ColourVector {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `∏ v_i^{counts[i]}` with `v` the chosen family.
    pub fn monomial(&self, ctx: &Context, family: Family) -> Monomial {
        let mut exps = vec![0u32; ctx.len()];
        for (i, &c) in self.counts.iter().enumerate() {
            let var = match family {
                Family::P => ctx.p(i + 1),
                Family::Q => ctx.q(i + 1),
            };
            exps[var] += c as u32;
        }
        Monomial::from_exponents(&exps)
    }
}

impl ColouredPermutation {
    /// Colours are listed in canonical cycle order (cycles sorted by minimum).
    pub fn new(perm: Permutation, colours: Vec<usize>, m: usize) -> Result<Self> {
        let cycles = perm.cycles();
        if colours.len() != cycles.len() {
            return Err(Error::InvalidArgument(format!(
                "{} colours given for {} cycles",
                colours.len(),
                cycles.len()
            )));
        }
        if let Some(&c) = colours.iter().find(|&&c| c == 0 || c > m) {
            return Err(Error::InvalidArgument(format!(
                "colour {c} outside 1..={m}"
            )));
        }
        let colours = cycles.iter().map(|c| c[0]).zip(colours).collect();
        Ok(Self { perm, colours, m })
    }

    /// Every cycle coloured `c`.
    pub fn uniform(perm: Permutation, c: usize, m: usize) -> Result<Self> {
        let n = perm.kappa();
        Self::new(perm, vec![c; n], m)
    }

    /// Colours each cycle by looking up the colour of its minimum point.
    pub fn from_point_colours(perm: Permutation, point_colour: &[usize], m: usize) -> Result<Self> {
        let colours = perm.cycles().iter().map(|c| point_colour[c[0]]).collect();
        Self::new(perm, colours, m)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(cycle minimum, colour)` pairs sorted by minimum.
    pub fn colour_map(&self) -> &[(usize, usize)] {
        &self.colours
    }

    /// Colours in canonical cycle order.
    pub fn colours(&self) -> Vec<usize> {
        self.colours.iter().map(|&(_, c)| c).collect()
    }

    /// Colour of the cycle whose minimum is `min`.
    pub fn colour_of_cycle(&self, min: usize) -> Option<usize> {
        self.colours
            .binary_search_by_key(&min, |&(x, _)| x)
            .ok()
            .map(|i| self.colours[i].1)
    }

    /// Point-to-colour table.
    pub fn point_colours(&self) -> Vec<usize> {
        let (index, _) = self.perm.cycle_index();
        index.iter().map(|&i| self.colours[i].1).collect()
    }

    pub fn kappa_m(&self) -> ColourVector {
        let mut counts = vec![0; self.m];
        for &(_, c) in &self.colours {
            counts[c - 1] += 1;
        }
        ColourVector::new(counts)
    }

    pub fn weight_monomial(&self, ctx: &Context, family: Family) -> Monomial {
        self.kappa_m().monomial(ctx, family)
    }
}

/// `(α, ψ) ∘ β = (αβ, ν)`, where `ν(u)` is the largest `ψ`-colour of an
/// `α`-cycle sharing a point with `u`.
pub fn coloured_compose(ap: &ColouredPermutation, b: &Permutation) -> Result<ColouredPermutation> {
    let product = compose(&ap.perm, b)?;
    let table = ap.point_colours();
    let colours = max_colours(&product, &table);
    ColouredPermutation::new(product, colours, ap.m)
}

/// For each cycle of `perm` in canonical order, the largest entry of
/// `point_colour` over its points.
pub fn max_colours(perm: &Permutation, point_colour: &[usize]) -> Vec<usize> {
    let (index, n) = perm.cycle_index();
    let mut out = vec![0; n];
    for (x, &i) in index.iter().enumerate() {
        out[i] = out[i].max(point_colour[x]);
    }
    out
}

pub fn kappa_m(ap: &ColouredPermutation) -> ColourVector {
    ap.kappa_m()
}

pub fn weight_monomial(ap: &ColouredPermutation, ctx: &Context, family: Family) -> Monomial {
    ap.weight_monomial(ctx, family)
}

/// All of `S_k^(m)`: permutations in lexicographic order, each followed by
/// its colourings in odometer order.
pub fn enumerate_coloured(k: usize, m: usize) -> impl Iterator<Item = ColouredPermutation> {
    crate::perm::enumerate_permutations(k).flat_map(move |perm| colourings(perm, m))
}

/// All colourings of the cycles of `perm` by `1..=m`.
pub fn colourings(perm: Permutation, m: usize) -> impl Iterator<Item = ColouredPermutation> {
    let n = perm.kappa();
    let mins: Vec<usize> = perm.cycles().iter().map(|c| c[0]).collect();
    let mut next = (m > 0).then(|| vec![1usize; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (0..n).rev().find(|&i| succ[i] < m) {
            succ[i] += 1;
            succ[i + 1..].fill(1);
            next = Some(succ);
        }
        Some(ColouredPermutation {
            perm: perm.clone(),
            colours: mins.iter().copied().zip(current).collect(),
            m,
        })
    })
}

impl fmt::Display for ColouredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cycle) in self.perm.cycles().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(")?;
            for (j, x) in cycle.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "):{}", self.colours[i].1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColouredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [m={}]", self.m)
    }
}

impl ColouredPermutation {
    /// Parses `"(1 6 8 9):2 (2 5):1 .."` with every cycle listed, fixed
    /// points included.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut colour_of_min = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let bad = || Error::Parse(format!("malformed coloured cycle in {s:?}"));
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let cycle = body[..close]
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::Parse(format!("bad symbol {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let after = body[close + 1..].strip_prefix(':').ok_or_else(bad)?;
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            let colour: usize = after[..end]
                .parse()
                .map_err(|_| Error::Parse(format!("bad colour {:?}", &after[..end])))?;
            if cycle.is_empty() {
                return Err(bad());
            }
            colour_of_min.push((*cycle.iter().min().unwrap(), colour));
            cycles.push(cycle);
            rest = after[end..].trim_start();
        }
        let k = cycles.iter().map(Vec::len).sum();
        let perm = Permutation::from_cycles(k, &cycles)?;
        if perm.kappa() != cycles.len() {
            return Err(Error::Parse(format!("{s:?} must list every cycle")));
        }
        colour_of_min.sort_unstable();
        let colours = colour_of_min.into_iter().map(|(_, c)| c).collect();
        Self::new(perm, colours, m)
    }
}

impl FromStr for ColouredPermutation {
    type Err = Error;

    /// Parses with `m` set to the largest colour present.
    fn from_str(s: &str) -> Result<Self> {
        let probe = Self::parse(s, usize::MAX)?;
        let colours = probe.colours();
        let m = colours.iter().copied().max().unwrap_or(1);
        Self::new(probe.perm, colours, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_permutations;

    fn perm(s: &str, k: usize) -> Permutation {
        Permutation::parse_with_degree(s, k).unwrap()
    }

    fn sample_alpha() -> ColouredPermutation {
        "(1 6 8 9):2 (2 5):1 (3):1 (4):3 (7):1 (10):1 (11):1"
            .parse()
            .unwrap()
    }

    #[test]
    fn sample_colouring_propagates() {
        let alpha = sample_alpha();
        assert_eq!(alpha.m(), 3);
        let beta = perm("(1 5)(2 3 4)(6 7)(8)(9 10 11)", 11);
        let beta_col = ColouredPermutation::uniform(beta.clone(), 1, 3).unwrap();
        // Colours induced on the cycles of β, read through the pointwise
        // max over α-cycles meeting them.
        let induced = max_colours(&beta, &alpha.point_colours());
        assert_eq!(induced, vec![2, 3, 2, 2, 2]);
        assert_eq!(beta_col.perm().kappa(), 5);
        assert_eq!(alpha.kappa_m().counts(), &[5, 1, 1]);
        let ctx = Context::pq(3);
        let p = alpha.weight_monomial(&ctx, Family::P);
        assert_eq!(p.exponents(6), vec![5, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn product_with_full_cycle_matches_inverse_route() {
        // (α^{-1}, ψ) ∘ ω_k = (β, φ) whenever αβ = ω_k: α^{-1} ω_k = β.
        let alpha = sample_alpha();
        let beta = perm("(1 5)(2 3 4)(6 7)(8)(9 10 11)", 11);
        let inv = ColouredPermutation::from_point_colours(
            alpha.perm().inverse(),
            &alpha.point_colours(),
            3,
        )
        .unwrap();
        let prod = coloured_compose(&inv, &Permutation::full_cycle(11)).unwrap();
        assert_eq!(prod.perm(), &beta);
        assert_eq!(
            prod.to_string(),
            "(1 5):2 (2 3 4):3 (6 7):2 (8):2 (9 10 11):2"
        );
        assert_eq!(prod.kappa_m().counts(), &[0, 4, 1]);
    }

    #[test]
    fn single_colour_degenerates() {
        for a in enumerate_permutations(4) {
            let ap = ColouredPermutation::uniform(a.clone(), 1, 1).unwrap();
            for b in enumerate_permutations(4).step_by(5) {
                let r = coloured_compose(&ap, &b).unwrap();
                assert_eq!(r.perm(), &compose(&a, &b).unwrap());
                assert!(r.colours().iter().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn identity_keeps_colours() {
        let id = Permutation::identity(4);
        let ap = ColouredPermutation::new(id.clone(), vec![3, 1, 2, 2], 3).unwrap();
        assert_eq!(coloured_compose(&ap, &id).unwrap(), ap);
    }

    #[test]
    fn exhaustive_against_cycle_scan() {
        for k in 1..=5 {
            for m in 1..=3 {
                let targets: Vec<Permutation> = if k <= 3 {
                    enumerate_permutations(k).collect()
                } else {
                    crate::perm::partitions_of(k)
                        .map(|mu| Permutation::canonical_class_rep(&mu))
                        .collect()
                };
                for ap in enumerate_coloured(k, m) {
                    let acycles = ap.perm().cycles();
                    for b in &targets {
                        let r = coloured_compose(&ap, b).unwrap();
                        assert_eq!(r.perm(), &compose(ap.perm(), b).unwrap());
                        for (u, &nu) in r.perm().cycles().iter().zip(r.colours().iter()) {
                            let meeting: Vec<usize> = acycles
                                .iter()
                                .filter(|c| c.iter().any(|x| u.contains(x)))
                                .map(|c| ap.colour_of_cycle(c[0]).unwrap())
                                .collect();
                            assert_eq!(nu, *meeting.iter().max().unwrap());
                            assert!(nu >= *meeting.iter().min().unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_coloured(1, 2).count(), 2);
        assert_eq!(enumerate_coloured(2, 1).count(), 2);
        assert_eq!(enumerate_coloured(3, 2).count(), 24);
        for k in 1..=5 {
            for m in 1..=3usize {
                let expected: usize = enumerate_permutations(k)
                    .map(|a| m.pow(a.kappa() as u32))
                    .sum();
                let all: Vec<_> = enumerate_coloured(k, m).collect();
                assert_eq!(all.len(), expected);
                let distinct: std::collections::HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), expected);
            }
        }
    }

    #[test]
    fn colour_vectors() {
        let ctx = Context::pq(2);
        let v = ColourVector::new(vec![2, 1]);
        assert_eq!(v.monomial(&ctx, Family::P).exponents(4), vec![2, 1, 0, 0]);
        assert_eq!(v.monomial(&ctx, Family::Q).exponents(4), vec![0, 0, 2, 1]);
        assert!(ColourVector::new(vec![0, 0])
            .monomial(&ctx, Family::P)
            .is_one());
        let empty = ColouredPermutation::new(Permutation::identity(0), vec![], 2).unwrap();
        assert_eq!(empty.kappa_m().counts(), &[0, 0]);
        let all_one = ColouredPermutation::uniform(perm("(1 2)", 4), 1, 2).unwrap();
        assert_eq!(all_one.kappa_m().counts(), &[3, 0]);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let a = sample_alpha();
        assert_eq!(a.to_string().parse::<ColouredPermutation>().unwrap(), a);
        assert!("(1 2):0".parse::<ColouredPermutation>().is_err());
        assert!("(1 2)".parse::<ColouredPermutation>().is_err());
        assert!("(1 3):1".parse::<ColouredPermutation>().is_err());
        assert!(ColouredPermutation::new(Permutation::identity(2), vec![1], 2).is_err());
        assert!(ColouredPermutation::new(Permutation::identity(1), vec![3], 2).is_err());
    }
}
