//! Stanley's character polynomials.
//!
//! For a multi-rectangular shape `p × q` (with `p_i` rows of length `q_i`)
//! and `μ ⊢ k`, `F_μ(p; q)` is the polynomial whose value at every shape is
//! the normalized character `χ̂_{p×q}(μ 1^{n-k})`. `F_k` is the case
//! `μ = (k)`, `G_k` its top-degree part and `G(x)` the series
//! `1 + Σ G_{i-1} x^i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::charlib::CharacterCache;
use crate::error::{Error, Result};
use crate::perm::Partition;
use crate::polyring::{
    compositional_inverse, expand_at_infinity, Context, MultiPoly, PowerSeries, Scalar, MAX_VARS,
};
use crate::QPoly;

/// The partition with `p_i` parts equal to `q_i`, `q_1 ≥ .. ≥ q_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    p: Vec<usize>,
    q: Vec<usize>,
}

impl Shape {
    pub fn new(p: Vec<usize>, q: Vec<usize>) -> Result<Self> {
        if p.is_empty() || p.len() != q.len() {
            return Err(Error::InvalidArgument(format!(
                "shape needs equally many p and q values, got {p:?} and {q:?}"
            )));
        }
        if p.iter().chain(&q).any(|&v| v == 0) {
            return Err(Error::InvalidArgument(format!(
                "shape {p:?} x {q:?} has a zero entry"
            )));
        }
        if q.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "q = {q:?} is not weakly decreasing"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    pub fn n(&self) -> usize {
        self.p.iter().zip(&self.q).map(|(a, b)| a * b).sum()
    }

    pub fn partition(&self) -> Partition {
        let parts = self
            .p
            .iter()
            .zip(&self.q)
            .flat_map(|(&a, &b)| std::iter::repeat_n(b, a))
            .collect();
        Partition::from_unsorted(parts)
    }

    /// Evaluation point in `Context::pq(m)` order.
    pub fn point<C: Scalar>(&self) -> Vec<C> {
        self.p
            .iter()
            .chain(&self.q)
            .map(|&v| C::from_i64(v as i64))
            .collect()
    }

    /// Value of `f` at this shape.
    pub fn eval<C: Scalar>(&self, f: &MultiPoly<C>) -> Result<C> {
        if f.ctx().colours() != Some(self.m()) {
            return Err(Error::ContextMismatch {
                left: f.ctx().names().join(","),
                right: Context::pq(self.m()).names().join(","),
            });
        }
        f.eval(&self.point())
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

/// `p_j + .. + p_m` for `j = 1..=m+1` (the last one is zero).
fn tail_sums<C: Scalar>(ctx: &Context, m: usize) -> Vec<MultiPoly<C>> {
    let mut tails = vec![MultiPoly::zero(ctx); m + 1];
    for j in (0..m).rev() {
        tails[j] = &tails[j + 1] + &MultiPoly::var(ctx, ctx.p(j + 1));
    }
    tails
}

/// `(A_j, B_j)` with `A_j = q_j + p_j + .. + p_m` and `B_j = q_j + p_{j+1} + .. + p_m`.
fn block_roots<C: Scalar>(ctx: &Context, m: usize) -> (Vec<MultiPoly<C>>, Vec<MultiPoly<C>>) {
    let tails = tail_sums(ctx, m);
    (1..=m)
        .map(|j| {
            let q = MultiPoly::var(ctx, ctx.q(j));
            (&q + &tails[j - 1], &q + &tails[j])
        })
        .unzip()
}

/// `F_k` from the residue at infinity
/// `-(1/k) [x^{-1}] (x)_k ∏_j (x - A_j)_k / (x - B_j)_k`.
pub fn f_k_residue<C: Scalar>(k: usize, m: usize) -> Result<MultiPoly<C>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    check_colours(m)?;
    let ctx = Context::pq(m);
    let (a, b) = block_roots::<C>(&ctx, m);
    let shift = |r: &MultiPoly<C>, i: usize| r + &MultiPoly::from_i64(&ctx, i as i64);
    let mut numer: Vec<MultiPoly<C>> = (1..k)
        .map(|i| MultiPoly::from_i64(&ctx, i as i64))
        .collect();
    let mut denom = Vec::new();
    for j in 0..m {
        for i in 0..k {
            numer.push(shift(&a[j], i));
            denom.push(shift(&b[j], i));
        }
    }
    // The expression is x^k times a series in t = 1/x.
    let h = expand_at_infinity(&ctx, &numer, &denom, k + 1)?;
    (-h.coeff(k + 1)).div_exact(k as i64)
}

/// `G_k`, the degree-`(k+1)` part of `F_k`.
pub fn g_top<C: Scalar>(k: usize, m: usize) -> Result<MultiPoly<C>> {
    Ok(f_k_residue::<C>(k, m)?.top_degree_part(k as u32 + 1))
}

/// `G(x) = x / (x ∏_j (1 - B_j x)/(1 - A_j x))^{<-1>}` to order `order`.
pub fn g_series<C: Scalar>(m: usize, order: usize) -> Result<PowerSeries<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let (a, b) = block_roots::<C>(&ctx, m);
    let arg = expand_at_infinity(&ctx, &b, &a, order)?
        .extend_order(order + 1)
        .mul_x_pow(1);
    compositional_inverse(&arg)?.div_x()?.reciprocal()
}

/// `-G_{p;-q}(-x)`.
pub fn transformed<C: Scalar>(g: &PowerSeries<C>) -> PowerSeries<C> {
    -g.substitute_neg_q().compose_scale(&C::from_i64(-1))
}

/// Residual of the functional equation for `H = -G_{p;-q}(-x)`:
/// `H ∏_j (H - (p_j+..+p_m)x + q_j x)/(H - (p_{j+1}+..+p_m)x + q_j x) + 1`.
pub fn check_functional_equation<C: Scalar>(
    g: &PowerSeries<C>,
    m: usize,
    order: usize,
) -> Result<PowerSeries<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    ctx.check_same(g.ctx())?;
    if *g.coeff(0) != MultiPoly::one(&ctx) {
        return Err(Error::Precondition(
            "candidate G must have constant term 1".into(),
        ));
    }
    let h = transformed(&g.truncate(order));
    residual_equation(&h, m)
}

/// `S ∏_j (S - (p_j+..+p_m)x + q_j x)/(S - (p_{j+1}+..+p_m)x + q_j x) + 1`
/// for a series `S` with constant term `-1`.
pub(crate) fn residual_equation<C: Scalar>(s: &PowerSeries<C>, m: usize) -> Result<PowerSeries<C>> {
    let ctx = s.ctx().clone();
    let n = s.order();
    let tails = tail_sums::<C>(&ctx, m);
    let mut lhs = s.clone();
    for j in 1..=m {
        let q = MultiPoly::var(&ctx, ctx.q(j));
        let lin = |t: &MultiPoly<C>| PowerSeries::monomial(&q - t, 1, n);
        let num = s + &lin(&tails[j - 1]);
        let den = s + &lin(&tails[j]);
        lhs = &lhs * &num.try_div(&den)?;
    }
    Ok(&lhs + &PowerSeries::one(&ctx, n))
}

/// `∏_i (-1)^{μ_i} G_{μ_i}(p; -q)`, the top-degree part of `(-1)^k F_μ(p; -q)`.
pub fn corollary_product<C: Scalar>(mu: &Partition, m: usize) -> Result<MultiPoly<C>> {
    check_colours(m)?;
    let ctx = Context::pq(m);
    let mut out = MultiPoly::one(&ctx);
    let mut cache: HashMap<usize, MultiPoly<C>> = HashMap::new();
    for &part in mu.parts() {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(part) {
            let g = g_top::<C>(part, m)?.substitute_neg_q();
            let g = if part % 2 == 1 { -g } else { g };
            e.insert(g);
        }
        out = &out * &cache[&part];
    }
    Ok(out)
}

/// Interpolation lattice for `F_μ` with `m` colours: offsets `x ∈ ℕ^{2m}`
/// with `|x| ≤ d`, placed at `p_i = 1 + x_i` and `q_j = b_j + x_{m+j}`.
/// The bases `b_j` are spaced `d` apart so every node is a valid shape with
/// at least `k` boxes.
struct Lattice {
    m: usize,
    d: usize,
    base: Vec<usize>,
    nodes: Vec<Vec<usize>>,
}

impl Lattice {
    fn new(m: usize, d: usize, k: usize) -> Self {
        let spread: usize = (0..m).map(|j| (m - 1 - j) * d).sum();
        let lowest = k.saturating_sub(spread).div_ceil(m).max(1);
        let mut base = vec![1; m];
        base.extend((0..m).map(|j| lowest + (m - 1 - j) * d));
        let mut nodes = Vec::new();
        let mut current = vec![0; 2 * m];
        simplex(&mut current, 0, d, &mut nodes);
        Self { m, d, base, nodes }
    }

    fn shape(&self, offset: &[usize]) -> Shape {
        let v: Vec<usize> = offset.iter().zip(&self.base).map(|(x, b)| x + b).collect();
        Shape::new(v[..self.m].to_vec(), v[self.m..].to_vec()).expect("lattice shapes are valid")
    }

    /// Shapes beyond the lattice, used to validate the interpolant.
    fn held_out(&self, count: usize) -> Vec<Shape> {
        (0..count)
            .map(|t| {
                let offset: Vec<usize> = (0..2 * self.m)
                    .map(|i| {
                        if i < self.m {
                            self.d + 1 + i + t
                        } else {
                            self.d + 1 + 2 * t
                        }
                    })
                    .collect();
                self.shape(&offset)
            })
            .collect()
    }
}

fn simplex(current: &mut Vec<usize>, i: usize, budget: usize, out: &mut Vec<Vec<usize>>) {
    if i == current.len() {
        out.push(current.clone());
        return;
    }
    for v in 0..=budget {
        current[i] = v;
        simplex(current, i + 1, budget - v, out);
    }
    current[i] = 0;
}

/// The shapes whose characters [`f_mu_interpolate`] fits.
pub fn interpolation_nodes(mu: &Partition, m: usize) -> Result<Vec<Shape>> {
    check_colours(m)?;
    let lattice = Lattice::new(m, mu.size() + mu.len(), mu.size());
    Ok(lattice.nodes.iter().map(|x| lattice.shape(x)).collect())
}

/// Number of held-out shapes checked by [`f_mu_interpolate`].
pub const HELD_OUT: usize = 3;

/// `F_μ` by exact interpolation of normalized characters.
///
/// Uses Newton forward differences on a simplex lattice of shapes, which is
/// unisolvent for total degree `k + ℓ(μ)`, then validates on
/// [`HELD_OUT`] further shapes.
pub fn f_mu_interpolate(mu: &Partition, m: usize) -> Result<QPoly> {
    check_colours(m)?;
    if mu.is_empty() {
        return Err(Error::InvalidArgument(
            "μ must be a nonempty partition".into(),
        ));
    }
    let ctx = Context::pq(m);
    let nv = 2 * m;
    let d = mu.size() + mu.len();
    let lattice = Lattice::new(m, d, mu.size());

    let mut values: Vec<BigRational> = lattice
        .nodes
        .par_iter()
        .map_init(CharacterCache::new, |cache, x| {
            let shape = lattice.shape(x);
            cache
                .normalized_character(&shape.partition(), mu)
                .map(|v| v.value)
        })
        .collect::<Result<_>>()?;

    let index: HashMap<&[usize], usize> = lattice
        .nodes
        .iter()
        .enumerate()
        .map(|(i, x)| (x.as_slice(), i))
        .collect();
    for dim in 0..nv {
        // Process each line in dimension `dim` from the top down so every
        // update reads a value not yet differenced at this level.
        for t in 1..=d {
            let mut order: Vec<usize> = (0..lattice.nodes.len())
                .filter(|&i| lattice.nodes[i][dim] >= t)
                .collect();
            order.sort_by(|&a, &b| lattice.nodes[b][dim].cmp(&lattice.nodes[a][dim]));
            for i in order {
                let mut prev = lattice.nodes[i].clone();
                prev[dim] -= 1;
                let j = index[prev.as_slice()];
                let delta = values[j].clone();
                values[i] -= delta;
            }
        }
    }

    // binom(v - a, e) as a polynomial in v.
    let binomials: Vec<Vec<QPoly>> = (0..nv)
        .map(|i| {
            let v = QPoly::var(&ctx, i);
            let mut row = vec![QPoly::one(&ctx)];
            for e in 1..=d {
                let factor = &v - &QPoly::from_i64(&ctx, (lattice.base[i] + e - 1) as i64);
                let next = (&row[e - 1] * &factor).div_exact(e as i64)?;
                row.push(next);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut result = QPoly::zero(&ctx);
    for (x, c) in lattice.nodes.iter().zip(&values) {
        if c.is_zero() {
            continue;
        }
        let mut term = QPoly::constant(&ctx, c.clone());
        for (i, &e) in x.iter().enumerate() {
            if e > 0 {
                term = &term * &binomials[i][e];
            }
        }
        result = &result + &term;
    }

    let mut cache = CharacterCache::new();
    for shape in lattice.held_out(HELD_OUT) {
        let expected = cache.normalized_character(&shape.partition(), mu)?.value;
        let got = shape.eval(&result)?;
        if got != expected {
            return Err(Error::Interpolation(format!(
                "F_{mu} with m = {m} gives {got} at shape p = {:?}, q = {:?}, character is {expected}",
                shape.p(),
                shape.q()
            )));
        }
    }
    Ok(result)
}

/// `(n)_k`, the value of `(-1)^k F_k(1,..,1; -1,..,-1)` with `n = k + m - 1`.
pub fn stanley_evaluation(k: usize, m: usize) -> BigInt {
    crate::charlib::falling_factorial(k + m - 1, k)
}

/// `(-1)^k f(1,..,1; -1,..,-1)`.
pub fn evaluate_at_signed_ones<C: Scalar>(f: &MultiPoly<C>, k: usize) -> Result<BigRational> {
    let m = f
        .ctx()
        .colours()
        .ok_or_else(|| Error::InvalidArgument("not a p/q polynomial".into()))?;
    let point: Vec<C> = (0..2 * m)
        .map(|i| C::from_i64(if i < m { 1 } else { -1 }))
        .collect();
    let v = f.eval(&point)?.to_rational();
    Ok(if k.is_multiple_of(2) { v } else { -v })
}

/// `f` with every coefficient nonnegative.
pub fn is_nonnegative<C: Scalar>(f: &MultiPoly<C>) -> bool {
    f.terms()
        .iter()
        .all(|(_, c)| c.to_rational() >= BigRational::zero())
}

/// `f` with every coefficient an integer.
pub fn is_integral<C: Scalar>(f: &MultiPoly<C>) -> bool {
    f.terms().iter().all(|(_, c)| c.to_rational().is_integer())
}
