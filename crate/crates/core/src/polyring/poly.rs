use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Most variables a [`Context`] may hold.
pub const MAX_VARS: usize = 15;

/// Ordered list of variable names shared by polynomials that can be combined.
#[derive(Clone)]
pub struct Context {
    names: Arc<[String]>,
    colours: Option<usize>,
}

impl Context {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_VARS} variables are supported, got {}",
                names.len()
            )));
        }
        Ok(Self {
            names: names.into(),
            colours: None,
        })
    }

    /// Variables `p1..pm, q1..qm`.
    pub fn pq(m: usize) -> Self {
        assert!(
            (1..=MAX_VARS / 2).contains(&m),
            "colour count {m} outside 1..={}",
            MAX_VARS / 2
        );
        let names: Vec<String> = (1..=m)
            .map(|i| format!("p{i}"))
            .chain((1..=m).map(|i| format!("q{i}")))
            .collect();
        Self {
            names: names.into(),
            colours: Some(m),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The colour count `m` when this is a `p/q` context.
    pub fn colours(&self) -> Option<usize> {
        self.colours
    }

    /// Index of `p_i` (colours are 1-based).
    pub fn p(&self, i: usize) -> usize {
        let m = self.colours.expect("not a p/q context");
        assert!((1..=m).contains(&i));
        i - 1
    }

    /// Index of `q_i` (colours are 1-based).
    pub fn q(&self, i: usize) -> usize {
        let m = self.colours.expect("not a p/q context");
        assert!((1..=m).contains(&i));
        m + i - 1
    }

    pub fn check_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.names.join(","),
                right: other.names.join(","),
            })
        }
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context[{}]", self.names.join(","))
    }
}

/// Exponent vector packed into a `u128`: the top byte holds the total degree
/// and byte `i + 1` (from the top) the exponent of variable `i`. Numeric
/// order of the packed word is therefore graded-lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

impl Monomial {
    const MAX_EXP: u32 = u8::MAX as u32;

    fn shift(var: usize) -> u32 {
        8 * (14 - var as u32)
    }

    pub fn one() -> Self {
        Self(0)
    }

    pub fn var(i: usize) -> Self {
        Self::from_exponents(&{
            let mut e = vec![0; i + 1];
            e[i] = 1;
            e
        })
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let degree: u32 = exps.iter().sum();
        assert!(
            degree <= Self::MAX_EXP,
            "monomial degree {degree} exceeds 255"
        );
        let mut word = (degree as u128) << 120;
        for (i, &e) in exps.iter().enumerate() {
            word |= (e as u128) << Self::shift(i);
        }
        Self(word)
    }

    pub fn degree(self) -> u32 {
        (self.0 >> 120) as u32
    }

    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self)
    }
}

/// Product of monomials. Panics when the degree would exceed 255.
impl std::ops::Mul for Monomial {
    type Output = Self;

    #[inline]
    fn mul(self, other: Self) -> Self {
        assert!(
            self.degree() + other.degree() <= Self::MAX_EXP,
            "monomial degree overflow"
        );
        Self(self.0 + other.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exponents(MAX_VARS))
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept sorted in decreasing graded-lexicographic order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    ctx: Context,
    terms: Vec<(Monomial, C)>,
}

/// Sums products of terms before normalising once.
pub(crate) struct Accumulator<C> {
    map: FxHashMap<Monomial, C>,
}

impl<C: Scalar> Accumulator<C> {
    pub(crate) fn new() -> Self {
        Self {
            map: FxHashMap::default(),
        }
    }

    pub(crate) fn add_product(&mut self, a: &MultiPoly<C>, b: &MultiPoly<C>) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.map
                    .entry(*ma * *mb)
                    .or_insert_with(C::zero)
                    .add_product(ca, cb);
            }
        }
    }

    pub(crate) fn add_poly(&mut self, a: &MultiPoly<C>) {
        for (m, c) in &a.terms {
            self.map.entry(*m).or_insert_with(C::zero).add_assign_ref(c);
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        self.map.entry(m).or_insert_with(C::zero).add_assign_ref(&c);
    }

    pub(crate) fn finish(self, ctx: &Context) -> MultiPoly<C> {
        let mut terms: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        MultiPoly {
            ctx: ctx.clone(),
            terms,
        }
    }
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(ctx: &Context) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Context, c: C) -> Self {
        Self::monomial(ctx, Monomial::one(), c)
    }

    pub fn from_i64(ctx: &Context, c: i64) -> Self {
        Self::constant(ctx, C::from_i64(c))
    }

    pub fn var(ctx: &Context, i: usize) -> Self {
        assert!(i < ctx.len(), "variable index {i} out of range");
        Self::monomial(ctx, Monomial::var(i), C::one())
    }

    pub fn monomial(ctx: &Context, m: Monomial, c: C) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Self {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc = Accumulator::new();
        for (m, c) in terms {
            acc.add_term(m, c);
        }
        acc.finish(ctx)
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    /// Terms in decreasing graded-lexicographic order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(Monomial::one())
    }

    /// Whether this is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// The terms of total degree exactly `d`.
    pub fn top_degree_part(&self, d: u32) -> Self {
        self.filter_terms(|m| m.degree() == d)
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(Monomial) -> bool) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(*m))
                .cloned()
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return Ok(other.scale(&self.terms[0].1));
        }
        if other.terms.len() == 1 && other.terms[0].0.is_one() {
            return Ok(self.scale(&other.terms[0].1));
        }
        let mut acc = Accumulator::new();
        acc.add_product(self, other);
        Ok(acc.finish(&self.ctx))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let signed = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((b[j].0, signed(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        a[i].1.clone() - b[j].1.clone()
                    } else {
                        a[i].1.clone() + b[j].1.clone()
                    };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().map(|(m, c)| (*m, signed(c))));
        Self {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, t)| (*m, t.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by a monomial with coefficient.
    pub fn mul_term(&self, m: Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        // Multiplying by a monomial preserves the order of terms.
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (*t * m, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// Divides every coefficient by `d`, failing if any quotient leaves the ring.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                c.div_exact(d)
                    .map(|q| (*m, q))
                    .ok_or_else(|| Error::NotInvertible(format!("coefficient {c:?} / {d}")))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Multiplies each term by `(-1)^(sum of exponents of the listed variables)`.
    pub fn negate_vars(&self, vars: &[usize]) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| {
                let odd = vars.iter().map(|&v| m.exponent(v)).sum::<u32>() % 2 == 1;
                (*m, if odd { -c.clone() } else { c.clone() })
            }),
        )
    }

    /// `q_i ↦ -q_i` for every `q` variable of a `p/q` context.
    pub fn substitute_neg_q(&self) -> Self {
        let m = self
            .ctx
            .colours()
            .expect("substitute_neg_q needs a p/q context");
        let qs: Vec<usize> = (m..2 * m).collect();
        self.negate_vars(&qs)
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.ctx.len() {
            return Err(Error::SizeMismatch {
                left: point.len(),
                right: self.ctx.len(),
            });
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    value = value * x.clone();
                }
            }
            total.add_assign_ref(&value);
        }
        Ok(total)
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> C {
        self.terms
            .iter()
            .fold(C::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn convert<D: Scalar>(&self) -> Result<MultiPoly<D>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                D::from_rational(&c.to_rational())
                    .map(|d| (*m, d))
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!("coefficient {c:?} not representable"))
                    })
            })
            .collect::<Result<_>>()?;
        Ok(MultiPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn to_rational(&self) -> MultiPoly<BigRational> {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.to_rational()))
                .collect(),
        }
    }

    /// Canonical JSON: `{"vars": [..], "terms": [{"exps": [..], "num": "..", "den": ".."}]}`
    /// with terms in decreasing graded-lexicographic order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("polynomial serialization")
    }

    pub fn to_repr(&self) -> PolyRepr {
        PolyRepr {
            vars: self.ctx.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let r = c.to_rational();
                    TermRepr {
                        exps: m.exponents(self.ctx.len()),
                        num: r.numer().to_string(),
                        den: r.denom().to_string(),
                    }
                })
                .collect(),
        }
    }

    /// Parses the canonical JSON form. A `p1..pm, q1..qm` variable list
    /// yields the corresponding `p/q` context.
    pub fn from_json(s: &str) -> Result<Self> {
        let repr: PolyRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))?;
        Self::from_repr(&repr)
    }

    pub fn from_repr(repr: &PolyRepr) -> Result<Self> {
        let ctx = context_for(&repr.vars)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in &repr.terms {
            if t.exps.len() != ctx.len() {
                return Err(Error::Parse(format!(
                    "term has {} exponents for {} variables",
                    t.exps.len(),
                    ctx.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
            };
            let (num, den) = (parse(&t.num)?, parse(&t.den)?);
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let value = BigRational::new(num, den);
            let c = C::from_rational(&value)
                .ok_or_else(|| Error::Parse(format!("coefficient {value} not representable")))?;
            terms.push((Monomial::from_exponents(&t.exps), c));
        }
        Ok(Self::from_terms(&ctx, terms))
    }
}

fn context_for(vars: &[String]) -> Result<Context> {
    let m = vars.len() / 2;
    if m >= 1 && vars.len().is_multiple_of(2) && m <= MAX_VARS / 2 {
        let pq = Context::pq(m);
        if pq.names() == vars {
            return Ok(pq);
        }
    }
    Context::new(vars.iter().cloned())
}

/// Serialized polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRepr {
    pub vars: Vec<String>,
    pub terms: Vec<TermRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let r = c.to_rational();
            let negative = r.is_negative();
            let abs = r.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, name) in self.ctx.names().iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Scalar> $trait<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;

            /// Panics on mismatched contexts; use the `try_` form to recover.
            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Scalar> $trait for MultiPoly<C> {
            type Output = MultiPoly<C>;

            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }

        impl<C: Scalar> $trait<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;

            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(rhs)
            }
        }

        impl<C: Scalar> $trait<MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;

            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QPoly, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn monomial_packing_orders_graded_lex() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[0, 3, 0]);
        let c = Monomial::from_exponents(&[1, 1, 0]);
        assert_eq!(a.degree(), 3);
        assert!(a > b, "x0^2 x2 precedes x1^3 in graded lex");
        assert!(b > c, "degree dominates");
        assert_eq!((a * c).exponents(3), vec![3, 1, 1]);
        assert_eq!((a * c).degree(), 5);
    }

    #[test]
    fn substitute_neg_q_flips_linear_q_terms() {
        // a*b + p*q with a = p1, p = p2, b = q1, q = q2.
        let ctx = Context::pq(2);
        let v = |i| QPoly::var(&ctx, i);
        let f = &(&v(0) * &v(2)) + &(&v(1) * &v(3));
        assert_eq!(f.substitute_neg_q(), -&f);
        let g = &v(2) * &v(3);
        assert_eq!(g.substitute_neg_q(), g);
    }

    #[test]
    fn top_degree_part_of_homogeneous_is_identity() {
        let ctx = Context::pq(2);
        let v = |i| QPoly::var(&ctx, i);
        let f = &(&v(0) * &v(2)) - &(&v(1) * &v(1));
        assert_eq!(f.top_degree_part(2), f);
        let g = &f + &QPoly::from_i64(&ctx, 5);
        assert_eq!(g.top_degree_part(2), f);
        assert_eq!(g.top_degree_part(0), QPoly::from_i64(&ctx, 5));
        assert_eq!(g.total_degree(), Some(2));
        assert_eq!(QPoly::zero(&ctx).total_degree(), None);
    }

    #[test]
    fn printed_f2_evaluates_to_six() {
        // F_2 = -a^2 b + a b^2 - 2apq - p^2 q + p q^2 at (a,p,b,q) = (1,1,-1,-1).
        let ctx = Context::pq(2);
        let (a, p, b, qq) = (
            QPoly::var(&ctx, 0),
            QPoly::var(&ctx, 1),
            QPoly::var(&ctx, 2),
            QPoly::var(&ctx, 3),
        );
        let f2 = -&(&(&a * &a) * &b) + &(&a * &(&b * &b))
            - (&(&a * &p) * &qq).scale(&q(2))
            - &(&p * &p) * &qq
            + &p * &(&qq * &qq);
        assert_eq!(f2.eval(&[q(1), q(1), q(-1), q(-1)]).unwrap(), q(6));
        assert_eq!(
            f2.to_string(),
            "-p1^2*q1 - 2*p1*p2*q2 + p1*q1^2 - p2^2*q2 + p2*q2^2"
        );
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let f = QPoly::var(&Context::pq(1), 0);
        let g = QPoly::var(&Context::pq(2), 0);
        assert!(matches!(f.try_add(&g), Err(Error::ContextMismatch { .. })));
        assert!(f.try_mul(&g).is_err());
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let ctx = Context::pq(2);
        let f = QPoly::from_terms(
            &ctx,
            [
                (Monomial::from_exponents(&[1, 0, 1, 0]), q(3)),
                (
                    Monomial::from_exponents(&[0, 0, 0, 0]),
                    Rational::new(1.into(), 2.into()),
                ),
                (Monomial::from_exponents(&[0, 2, 0, 0]), q(-1)),
            ],
        );
        let json = f.to_json();
        assert_eq!(
            json,
            r#"{"vars":["p1","p2","q1","q2"],"terms":[{"exps":[1,0,1,0],"num":"3","den":"1"},{"exps":[0,2,0,0],"num":"-1","den":"1"},{"exps":[0,0,0,0],"num":"1","den":"2"}]}"#
        );
        let back = QPoly::from_json(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), json);
        assert!(MultiPoly::<BigInt>::from_json(&json).is_err());
    }

    #[test]
    fn integer_and_machine_coefficients_agree() {
        let ctx = Context::pq(2);
        let v = |i| QPoly::var(&ctx, i);
        let f = (&v(0) + &v(3)) - QPoly::from_i64(&ctx, 2);
        let g = f.pow(4);
        let gi: MultiPoly<i128> = f.convert::<i128>().unwrap().pow(4);
        assert_eq!(gi.to_rational(), g);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(ctx: Context) -> impl Strategy<Value = QPoly> {
            proptest::collection::vec((proptest::collection::vec(0u32..3, 4), -5i64..=5), 0..6)
                .prop_map(move |terms| {
                    QPoly::from_terms(
                        &ctx,
                        terms
                            .into_iter()
                            .map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_i64(c))),
                    )
                })
        }

        proptest! {
            #[test]
            fn distributive(
                f in poly(Context::pq(2)),
                g in poly(Context::pq(2)),
                h in poly(Context::pq(2)),
            ) {
                prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
                prop_assert_eq!(&(&f - &f), &QPoly::zero(f.ctx()));
                prop_assert_eq!(&f * &g, &g * &f);
            }

            #[test]
            fn json_round_trip(f in poly(Context::pq(2))) {
                let json = f.to_json();
                let back = QPoly::from_json(&json).unwrap();
                prop_assert_eq!(back.to_json(), json);
                prop_assert_eq!(back, f);
            }
        }
    }
}
