//! Top factorizations and their coloured generating polynomials.
//!
//! A product `αβ = γ` in `S_k` is top when `κ(α) + κ(β) = k + κ(γ)`. The
//! sums here run over coloured permutations `(α, ψ)` and weight each by
//! `p^{κ^(m)(α, ψ)} q^{κ^(m)((α, ψ) ∘ ω)}`.

use rayon::prelude::*;

use crate::colours::{max_colours, ColourVector, ColouredPermutation, Family};
use crate::error::{Error, Result};
use crate::perm::{compose, enumerate_permutations, Partition, Permutation};
use crate::polyring::{Context, Monomial, MultiPoly, PowerSeries, Scalar, MAX_VARS};

/// `κ(a) + κ(b) ≤ k + κ(ab)`.
pub fn check_subadditivity(a: &Permutation, b: &Permutation) -> Result<bool> {
    let ab = compose(a, b)?;
    Ok(a.kappa() + b.kappa() <= a.degree() + ab.kappa())
}

/// Whether `κ(α) + κ(α ω) = k + κ(ω)`.
pub fn is_top(alpha: &Permutation, target: &Permutation) -> Result<bool> {
    let product = compose(alpha, target)?;
    Ok(alpha.kappa() + product.kappa() == alpha.degree() + target.kappa())
}

/// One coloured product `(α, ψ) ∘ ω` with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationRecord {
    pub alpha: ColouredPermutation,
    pub target: Permutation,
    pub product: ColouredPermutation,
    pub p_weight: Monomial,
    pub q_weight: Monomial,
    pub top: bool,
}

impl FactorizationRecord {
    pub fn new(alpha: ColouredPermutation, target: &Permutation, ctx: &Context) -> Result<Self> {
        let product = crate::colours::coloured_compose(&alpha, target)?;
        let top = alpha.perm().kappa() + product.perm().kappa() == target.degree() + target.kappa();
        Ok(Self {
            p_weight: alpha.weight_monomial(ctx, Family::P),
            q_weight: product.weight_monomial(ctx, Family::Q),
            alpha,
            target: target.clone(),
            product,
            top,
        })
    }
}

fn check_colours(m: usize) -> Result<()> {
    if m == 0 || 2 * m > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "number of colours must be in 1..={}, got {m}",
            MAX_VARS / 2
        )));
    }
    Ok(())
}

/// Bipartite graph joining each cycle of `alpha` to each cycle of
/// `gamma` it shares a point with, one edge per shared point.
struct Incidence {
    /// `adj[v]`: neighbours of vertex `v`; alpha cycles are `0..na`,
    /// gamma cycles `na..na+ng`.
    adj: Vec<Vec<usize>>,
    na: usize,
}

impl Incidence {
    fn new(alpha: &Permutation, gamma: &Permutation) -> Self {
        let (ai, na) = alpha.cycle_index();
        let (gi, ng) = gamma.cycle_index();
        let mut adj = vec![Vec::new(); na + ng];
        for x in 0..alpha.degree() {
            adj[ai[x]].push(na + gi[x]);
            adj[na + gi[x]].push(ai[x]);
        }
        Self { adj, na }
    }

    /// Roots of the components in preorder, with parents, if the graph is
    /// a forest.
    fn forest(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..self.na {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                order.push(v);
                let mut to_parent = 0;
                for &w in &self.adj[v] {
                    if w == parent[v] {
                        to_parent += 1;
                        continue;
                    }
                    if seen[w] {
                        return None;
                    }
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
                if to_parent > 1 {
                    return None;
                }
            }
        }
        Some((order, parent))
    }
}

/// `Σ_ψ p^{κ^(m)(α, ψ)} q^{κ^(m)((α, ψ) ∘ target)}` over all colourings
/// `ψ` of the cycles of `alpha`.
///
/// When the cycles of `alpha` and of `alpha ∘ target` form a forest under
/// incidence (always the case for top products) the sum is computed by
/// dynamic programming over the forest; otherwise by listing colourings.
pub fn weight_sum<C: Scalar>(
    alpha: &Permutation,
    target: &Permutation,
    m: usize,
) -> Result<MultiPoly<C>> {
    check_colours(m)?;
    let gamma = compose(alpha, target)?;
    let g = Incidence::new(alpha, &gamma);
    match g.forest() {
        Some((order, parent)) => Ok(forest_sum(&g, &order, &parent, m)),
        None => weight_sum_direct(alpha, target, m),
    }
}

fn forest_sum<C: Scalar>(
    g: &Incidence,
    order: &[usize],
    parent: &[usize],
    m: usize,
) -> MultiPoly<C> {
    let ctx = Context::pq(m);
    let p: Vec<MultiPoly<C>> = (1..=m).map(|i| MultiPoly::var(&ctx, ctx.p(i))).collect();
    let q: Vec<MultiPoly<C>> = (1..=m).map(|i| MultiPoly::var(&ctx, ctx.q(i))).collect();
    // For an alpha cycle: weight of its subtree with its colour fixed to c,
    // indexed by c - 1. For a gamma cycle: the same with the parent's
    // colour fixed to c.
    let mut val: Vec<Vec<MultiPoly<C>>> = vec![Vec::new(); g.adj.len()];
    let children = |v: usize| g.adj[v].iter().copied().filter(move |&w| parent[w] == v);
    for &v in order.iter().rev() {
        if v < g.na {
            val[v] = (0..m)
                .map(|c| children(v).fold(p[c].clone(), |acc, u| &acc * &val[u][c]))
                .collect();
        } else {
            // r[t]: subtree weight with every alpha child coloured ≤ t + 1.
            let mut r = vec![MultiPoly::one(&ctx); m];
            for a in children(v) {
                let mut prefix = MultiPoly::zero(&ctx);
                for t in 0..m {
                    prefix = &prefix + &val[a][t];
                    r[t] = &r[t] * &prefix;
                }
            }
            let exact: Vec<MultiPoly<C>> = (0..m)
                .map(|t| {
                    if t == 0 {
                        r[0].clone()
                    } else {
                        &r[t] - &r[t - 1]
                    }
                })
                .collect();
            val[v] = (0..m)
                .map(|c| {
                    let mut s = &q[c] * &r[c];
                    for t in c + 1..m {
                        s = &s + &(&q[t] * &exact[t]);
                    }
                    s
                })
                .collect();
        }
    }
    order
        .iter()
        .filter(|&&v| parent[v] == usize::MAX)
        .fold(MultiPoly::one(&ctx), |acc, &root| {
            let total = val[root].iter().fold(MultiPoly::zero(&ctx), |s, x| &s + x);
            &acc * &total
        })
}

/// [`weight_sum`] by listing all `m^{κ(α)}` colourings.
pub fn weight_sum_direct<C: Scalar>(
    alpha: &Permutation,
    target: &Permutation,
    m: usize,
) -> Result<MultiPoly<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let gamma = compose(alpha, target)?;
    let (ai, _) = alpha.cycle_index();
    let mut terms = Vec::new();
    for ap in crate::colours::colourings(alpha.clone(), m) {
        let colours = ap.colours();
        let point: Vec<usize> = ai.iter().map(|&i| colours[i]).collect();
        let mut counts = vec![0; m];
        for c in max_colours(&gamma, &point) {
            counts[c - 1] += 1;
        }
        let mono = ap.weight_monomial(&ctx, Family::P)
            * ColourVector::new(counts).monomial(&ctx, Family::Q);
        terms.push((mono, C::one()));
    }
    Ok(MultiPoly::from_terms(&ctx, terms))
}

/// Sum of `weight_sum(α, target)` over the `α ∈ S_k` accepted by `keep`,
/// split across worker threads.
fn sum_over<C: Scalar>(
    target: &Permutation,
    m: usize,
    keep: impl Fn(&Permutation) -> bool + Sync,
) -> Result<MultiPoly<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let perms: Vec<Permutation> = enumerate_permutations(target.degree()).collect();
    perms
        .par_iter()
        .filter(|a| keep(a))
        .map(|a| weight_sum::<C>(a, target, m))
        .try_fold(|| MultiPoly::zero(&ctx), |acc, w| w.map(|w| &acc + &w))
        .try_reduce(|| MultiPoly::zero(&ctx), |a, b| Ok(&a + &b))
}

/// Coloured top products with `ω_μ`: the sum over `(α, ψ)` with
/// `κ(α) + κ(α ω_μ) = k + ℓ(μ)`.
pub fn topfact_mu<C: Scalar>(mu: &Partition, m: usize) -> Result<MultiPoly<C>> {
    let target = Permutation::canonical_class_rep(mu);
    let bound = mu.size() + mu.len();
    sum_over(&target, m, |a| {
        a.kappa() + compose(a, &target).expect("same degree").kappa() == bound
    })
}

/// The full sum over `S_k^(m)` for target `ω_μ`.
pub fn conjecture_sum<C: Scalar>(mu: &Partition, m: usize) -> Result<MultiPoly<C>> {
    conjecture_sum_for(&Permutation::canonical_class_rep(mu), m)
}

/// [`conjecture_sum`] for an arbitrary target permutation.
pub fn conjecture_sum_for<C: Scalar>(target: &Permutation, m: usize) -> Result<MultiPoly<C>> {
    sum_over(target, m, |_| true)
}

/// `TopFact(x) = Σ_k x^{k+1} [coloured top factorizations of ω_k]` for
/// `k ≤ kmax`; the series has order `kmax + 1`.
pub fn topfact_series<C: Scalar>(m: usize, kmax: usize) -> Result<PowerSeries<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let mut coeffs = vec![MultiPoly::zero(&ctx); kmax + 2];
    for k in 1..=kmax {
        let mu = Partition::new(vec![k])?;
        coeffs[k + 1] = topfact_mu(&mu, m)?;
    }
    PowerSeries::from_coeffs(&ctx, coeffs)
}

/// Number of `α ∈ S_k` with `αβ = ω_k` top for some `β`, i.e. with
/// `κ(α) + κ(α^{-1} ω_k) = k + 1`.
pub fn count_top_factorizations(k: usize) -> usize {
    let target = Permutation::full_cycle(k);
    enumerate_permutations(k)
        .filter(|a| is_top(a, &target).expect("same degree"))
        .count()
}

/// One block of a top product `ab = γ`: the cycle `gamma` of `γ` and the
/// cycles of `a` and `b` meeting it, restricted to `points`.
///
/// `alpha`, `beta` and `gamma` act on `0..points.len()`, position `i`
/// standing for `points[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub points: Vec<usize>,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

/// Splits a top product `ab = γ` into one top product per cycle of `γ`.
/// A fixed point `h` of `γ` gives the block on `{h}`.
pub fn decompose_product(a: &Permutation, b: &Permutation) -> Result<Vec<Component>> {
    let gamma = compose(a, b)?;
    let k = a.degree();
    if a.kappa() + b.kappa() != k + gamma.kappa() {
        return Err(Error::NotTopFactorization(format!(
            "κ({a}) + κ({b}) = {} differs from k + κ(ab) = {}",
            a.kappa() + b.kappa(),
            k + gamma.kappa()
        )));
    }
    let (ai, _) = a.cycle_index();
    let (bi, _) = b.cycle_index();
    let mut owner = vec![usize::MAX; k];
    let mut out = Vec::new();
    for (idx, cycle) in gamma.cycles().iter().enumerate() {
        let ca: Vec<usize> = cycle.iter().map(|&x| ai[x]).collect();
        let cb: Vec<usize> = cycle.iter().map(|&x| bi[x]).collect();
        let mut points: Vec<usize> = (0..k)
            .filter(|&x| ca.contains(&ai[x]) || cb.contains(&bi[x]))
            .collect();
        points.sort_unstable();
        for &x in &points {
            if owner[x] != usize::MAX {
                return Err(Error::Inconsistency(format!(
                    "point {} lies in the blocks of two cycles of {gamma}",
                    x + 1
                )));
            }
            owner[x] = idx;
        }
        let restrict = |p: &Permutation| -> Result<Permutation> {
            let images = points
                .iter()
                .map(|&x| {
                    points.binary_search(&p.apply(x)).map_err(|_| {
                        Error::Inconsistency(format!(
                            "{p} maps {} outside the block {:?}",
                            x + 1,
                            points.iter().map(|y| y + 1).collect::<Vec<_>>()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_images(images)
        };
        let (alpha, beta, gamma_i) = (restrict(a)?, restrict(b)?, restrict(&gamma)?);
        if compose(&alpha, &beta)? != gamma_i || gamma_i.kappa() != 1 + points.len() - cycle.len() {
            return Err(Error::Inconsistency(format!(
                "block {:?} does not reproduce its cycle",
                points
            )));
        }
        if alpha.kappa() + beta.kappa() != points.len() + 1 {
            return Err(Error::Inconsistency(format!(
                "block {:?} is not a top product",
                points
            )));
        }
        out.push(Component {
            points,
            alpha,
            beta,
            gamma: gamma_i,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::partitions_of;
    use crate::{Integer, Rational, ZPoly};

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn pq(ctx: &Context, i: usize) -> (ZPoly, ZPoly) {
        (ZPoly::var(ctx, ctx.p(i)), ZPoly::var(ctx, ctx.q(i)))
    }

    #[test]
    fn subadditivity_in_s4() {
        let all: Vec<_> = enumerate_permutations(4).collect();
        let mut pairs = 0;
        for a in &all {
            for b in &all {
                assert!(check_subadditivity(a, b).unwrap());
                pairs += 1;
            }
            assert!(check_subadditivity(a, &a.inverse()).unwrap());
            let id = Permutation::identity(4);
            let ab = compose(&id, a).unwrap();
            assert_eq!(id.kappa() + a.kappa(), 4 + ab.kappa());
        }
        assert_eq!(pairs, 576);
        assert!(check_subadditivity(&Permutation::identity(2), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn small_topfact_coefficients() {
        let c1 = Context::pq(1);
        let (p, q) = pq(&c1, 1);
        let t = topfact_series::<Integer>(1, 2).unwrap();
        assert!(t.coeff(0).is_zero() && t.coeff(1).is_zero());
        assert_eq!(*t.coeff(2), &p * &q);
        assert_eq!(*t.coeff(3), &(&(&p * &p) * &q) + &(&p * &(&q * &q)));
        let c2 = Context::pq(2);
        let (p1, q1) = pq(&c2, 1);
        let (p2, q2) = pq(&c2, 2);
        let t2 = topfact_series::<Integer>(2, 1).unwrap();
        assert_eq!(*t2.coeff(2), &(&p1 * &q1) + &(&p2 * &q2));
    }

    #[test]
    fn small_mu_sums() {
        let c1 = Context::pq(1);
        let (p, q) = pq(&c1, 1);
        assert_eq!(topfact_mu::<Integer>(&part(&[1]), 1).unwrap(), &p * &q);
        let pq2 = &(&p * &p) * &(&q * &q);
        assert_eq!(topfact_mu::<Integer>(&part(&[1, 1]), 1).unwrap(), pq2);
        assert_eq!(conjecture_sum::<Integer>(&part(&[1]), 1).unwrap(), &p * &q);
        assert_eq!(
            conjecture_sum::<Integer>(&part(&[2]), 1).unwrap(),
            &(&(&p * &p) * &q) + &(&p * &(&q * &q))
        );
        // α = (1 2) against the identity is not top and contributes p q.
        assert_eq!(
            conjecture_sum::<Integer>(&part(&[1, 1]), 1).unwrap(),
            &pq2 + &(&p * &q)
        );
    }

    #[test]
    fn forest_sum_matches_listing() {
        for k in 1..=4 {
            let targets: Vec<Permutation> = partitions_of(k)
                .map(|mu| Permutation::canonical_class_rep(&mu))
                .collect();
            for m in 1..=3 {
                for t in &targets {
                    for a in enumerate_permutations(k) {
                        assert_eq!(
                            weight_sum::<Integer>(&a, t, m).unwrap(),
                            weight_sum_direct::<Integer>(&a, t, m).unwrap(),
                            "α = {a}, target {t}, m = {m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn records() {
        let ctx = Context::pq(2);
        let alpha = ColouredPermutation::new(Permutation::identity(2), vec![2, 1], 2).unwrap();
        let r = FactorizationRecord::new(alpha, &Permutation::full_cycle(2), &ctx).unwrap();
        assert!(r.top);
        assert_eq!(r.product.colours(), vec![2]);
        assert_eq!(r.p_weight.exponents(4), vec![1, 1, 0, 0]);
        assert_eq!(r.q_weight.exponents(4), vec![0, 0, 0, 1]);
    }

    #[test]
    fn catalan_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for k in 1..=6 {
            assert_eq!(count_top_factorizations(k), catalan[k]);
            let t = topfact_series::<Integer>(1, k).unwrap();
            assert_eq!(t.coeff(k + 1).coefficient_sum(), Integer::from(catalan[k]));
        }
    }

    #[test]
    fn target_conjugation_invariance() {
        for k in 1..=4 {
            for mu in partitions_of(k) {
                let rep = Permutation::canonical_class_rep(&mu);
                for m in 1..=2 {
                    let base = conjecture_sum::<Integer>(&mu, m).unwrap();
                    for g in enumerate_permutations(k).step_by(3) {
                        let conj = compose(&g, &compose(&rep, &g.inverse()).unwrap()).unwrap();
                        assert_eq!(conjecture_sum_for::<Integer>(&conj, m).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn top_part_of_full_sum() {
        for k in 1..=4 {
            for mu in partitions_of(k) {
                for m in 1..=2 {
                    let full = conjecture_sum::<Rational>(&mu, m).unwrap();
                    let top = topfact_mu::<Rational>(&mu, m).unwrap();
                    assert_eq!(full.top_degree_part((k + mu.len()) as u32), top);
                }
            }
        }
    }

    #[test]
    fn decompositions() {
        let full = Permutation::full_cycle(4);
        let a = Permutation::identity(4);
        let one = decompose_product(&a, &full).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].points, vec![0, 1, 2, 3]);

        let b = Permutation::parse_with_degree("(1 2)(3 4)", 4).unwrap();
        let two = decompose_product(&a, &b).unwrap();
        assert_eq!(
            two.iter().map(|c| c.points.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![2, 3]]
        );

        assert!(matches!(
            decompose_product(&full, &full),
            Err(Error::NotTopFactorization(_))
        ));

        let mut checked = 0;
        let all: Vec<_> = enumerate_permutations(5).collect();
        for a in &all {
            for b in &all {
                let g = compose(a, b).unwrap();
                if g.cycle_type() != part(&[3, 2]) || a.kappa() + b.kappa() != 5 + 2 {
                    continue;
                }
                let blocks = decompose_product(a, b).unwrap();
                assert_eq!(blocks.len(), 2);
                let mut sizes: Vec<_> = blocks.iter().map(|c| c.points.len()).collect();
                sizes.sort_unstable();
                assert_eq!(sizes, vec![2, 3]);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
