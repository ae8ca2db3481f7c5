use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use super::poly::Accumulator;
use super::{Context, MultiPoly, Scalar};
use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 x + .. + c_N x^N + O(x^{N+1})` with
/// polynomial coefficients. `N` is the truncation order; binary operations
/// return the smaller order of their operands.
#[derive(Clone, PartialEq)]
pub struct PowerSeries<C> {
    ctx: Context,
    coeffs: Vec<MultiPoly<C>>,
}

impl<C: Scalar> PowerSeries<C> {
    pub fn zero(ctx: &Context, order: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            coeffs: vec![MultiPoly::zero(ctx); order + 1],
        }
    }

    pub fn one(ctx: &Context, order: usize) -> Self {
        Self::constant(MultiPoly::one(ctx), order)
    }

    pub fn constant(c: MultiPoly<C>, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c x^power`, truncated at `order`.
    pub fn monomial(c: MultiPoly<C>, power: usize, order: usize) -> Self {
        let mut s = Self::zero(c.ctx(), order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The series `x`.
    pub fn x(ctx: &Context, order: usize) -> Self {
        Self::monomial(MultiPoly::one(ctx), 1, order)
    }

    /// Coefficients `c_0..c_N`; the truncation order is `coeffs.len() - 1`.
    pub fn from_coeffs(ctx: &Context, coeffs: Vec<MultiPoly<C>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        for c in &coeffs {
            ctx.check_same(c.ctx())?;
        }
        Ok(Self {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i`. Panics beyond the truncation order.
    pub fn coeff(&self, i: usize) -> &MultiPoly<C> {
        assert!(
            i <= self.order(),
            "coefficient x^{i} unknown at truncation order {}",
            self.order()
        );
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[MultiPoly<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Raises the truncation order, padding with zero coefficients. The new
    /// coefficients are not implied by the old series; callers use this to
    /// seed iterations.
    pub fn extend_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, MultiPoly::zero(&self.ctx));
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly<C>) -> MultiPoly<C>) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn substitute_neg_q(&self) -> Self {
        self.map_coeffs(MultiPoly::substitute_neg_q)
    }

    pub fn scale_poly(&self, c: &MultiPoly<C>) -> Self {
        self.map_coeffs(|a| a * c)
    }

    /// `x ↦ c x`.
    pub fn compose_scale(&self, c: &C) -> Self {
        let mut power = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.scale(&power));
            power = power * c.clone();
        }
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Multiplies by `x^j`, keeping the truncation order.
    pub fn mul_x_pow(&self, j: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![MultiPoly::zero(&self.ctx); n + 1];
        for i in 0..=n.saturating_sub(j) {
            if i + j <= n {
                coeffs[i + j] = self.coeffs[i].clone();
            }
        }
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Divides by `x`, lowering the order by one. Requires a zero constant term.
    pub fn div_x(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "division by x needs a zero constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Err(Error::Precondition(
                "division by x of an order-0 series".into(),
            ));
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&MultiPoly<C>, &MultiPoly<C>) -> MultiPoly<C>,
    ) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let n = self.order().min(other.order());
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs: (0..=n)
                .map(|i| f(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        })
    }

    /// Cauchy product. Output coefficients are computed in parallel.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .into_par_iter()
            .map(|k| {
                let mut acc = Accumulator::new();
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b);
                    }
                }
                acc.finish(&self.ctx)
            })
            .collect();
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ctx, self.order()), |acc, _| &acc * self)
    }

    fn constant_inverse(&self) -> Result<C> {
        let c0 = &self.coeffs[0];
        if !c0.is_constant() {
            return Err(Error::NotInvertible(format!(
                "constant term {c0} is not a scalar"
            )));
        }
        c0.constant_term()
            .unit_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {c0} is not a unit")))
    }

    pub fn reciprocal(&self) -> Result<Self> {
        self.ctx.check_same(&self.ctx)?;
        Self::one(&self.ctx, self.order()).try_div(self)
    }

    /// `self / other`; the constant term of `other` must be a unit scalar.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let inv = other.constant_inverse()?;
        let n = self.order().min(other.order());
        let mut out: Vec<MultiPoly<C>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = Accumulator::new();
            acc.add_poly(&self.coeffs[k]);
            let minus_one = MultiPoly::from_i64(&self.ctx, -1);
            for i in 1..=k {
                let b = &other.coeffs[i];
                if !b.is_zero() && !out[k - i].is_zero() {
                    acc.add_product(&(b * &minus_one), &out[k - i]);
                }
            }
            out.push(acc.finish(&self.ctx).scale(&inv));
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.ctx.check_same(&inner.ctx)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "inner series of a composition needs zero constant term".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: s_0 + inner (s_1 + inner (s_2 + ...)). The partial sum
        // starting at s_i is multiplied by inner^i, so order n - i suffices.
        let mut acc = Self::constant(self.coeffs[n].clone(), 0);
        for i in (0..n).rev() {
            let ord = n - i;
            acc = &(&acc.extend_order(ord) * &inner.truncate(ord))
                + &Self::constant(self.coeffs[i].clone(), ord);
        }
        Ok(acc)
    }

    pub fn convert<D: Scalar>(&self) -> Result<PowerSeries<D>> {
        Ok(PowerSeries {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(MultiPoly::convert)
                .collect::<Result<_>>()?,
        })
    }
}

/// Expansion of `∏(x - a_i) / ∏(x - b_j)` at infinity. With `t = 1/x` this
/// returns `∏(1 - a_i t) / ∏(1 - b_j t)` as a series in `t` to `order`;
/// the caller accounts for the leading power `x^(#a - #b)`.
pub fn expand_at_infinity<C: Scalar>(
    ctx: &Context,
    numer_roots: &[MultiPoly<C>],
    denom_roots: &[MultiPoly<C>],
    order: usize,
) -> Result<PowerSeries<C>> {
    let mut coeffs = vec![MultiPoly::zero(ctx); order + 1];
    coeffs[0] = MultiPoly::one(ctx);
    for a in numer_roots {
        ctx.check_same(a.ctx())?;
        // s ← s (1 - a t)
        for n in (1..=order).rev() {
            if !coeffs[n - 1].is_zero() {
                coeffs[n] = &coeffs[n] - &(&coeffs[n - 1] * a);
            }
        }
    }
    for b in denom_roots {
        ctx.check_same(b.ctx())?;
        // s ← s / (1 - b t):  c_n = s_n + b c_{n-1}
        for n in 1..=order {
            coeffs[n] = &coeffs[n] + &(&coeffs[n - 1] * b);
        }
    }
    PowerSeries::from_coeffs(ctx, coeffs)
}

/// Compositional inverse of `s = x + s_2 x^2 + ..` by Lagrange inversion:
/// `[x^n] s^{<-1>} = (1/n) [z^{n-1}] (z / s(z))^n`.
pub fn compositional_inverse<C: Scalar>(s: &PowerSeries<C>) -> Result<PowerSeries<C>> {
    let ctx = s.ctx();
    let n = s.order();
    if n < 1 || !s.coeff(0).is_zero() || *s.coeff(1) != MultiPoly::one(ctx) {
        return Err(Error::Precondition(
            "compositional inverse needs s(0) = 0 and s'(0) = 1".into(),
        ));
    }
    let phi = s.div_x()?.reciprocal()?;
    let mut coeffs = vec![MultiPoly::zero(ctx); n + 1];
    let mut power = phi.clone();
    for k in 1..=n {
        coeffs[k] = power.coeff(k - 1).div_exact(k as i64)?;
        if k < n {
            power = &power * &phi;
        }
    }
    PowerSeries::from_coeffs(ctx, coeffs)
}

impl<C: Scalar> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl<C: Scalar> fmt::Debug for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Scalar> $trait<&PowerSeries<C>> for &PowerSeries<C> {
            type Output = PowerSeries<C>;

            fn $method(self, rhs: &PowerSeries<C>) -> PowerSeries<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Scalar> $trait for PowerSeries<C> {
            type Output = PowerSeries<C>;

            fn $method(self, rhs: PowerSeries<C>) -> PowerSeries<C> {
                (&self).$method(&rhs)
            }
        }

        impl<C: Scalar> $trait<&PowerSeries<C>> for PowerSeries<C> {
            type Output = PowerSeries<C>;

            fn $method(self, rhs: &PowerSeries<C>) -> PowerSeries<C> {
                (&self).$method(rhs)
            }
        }

        impl<C: Scalar> $trait<PowerSeries<C>> for &PowerSeries<C> {
            type Output = PowerSeries<C>;

            fn $method(self, rhs: PowerSeries<C>) -> PowerSeries<C> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Scalar> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;

    fn neg(self) -> PowerSeries<C> {
        self.map_coeffs(|c| -c)
    }
}

impl<C: Scalar> Neg for PowerSeries<C> {
    type Output = PowerSeries<C>;

    fn neg(self) -> PowerSeries<C> {
        -&self
    }
}
