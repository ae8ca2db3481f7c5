//! The checks behind `charpoly verify`.

use std::time::Instant;

use charpoly::charlib::CharacterCache;
use charpoly::factor::{conjecture_sum, topfact_mu, topfact_series};
use charpoly::perm::{partitions_of, Partition};
use charpoly::stanley::{
    corollary_product, evaluate_at_signed_ones, f_k_residue, f_mu_interpolate, g_series,
    interpolation_nodes, stanley_evaluation, transformed, Shape,
};
use charpoly::trees::lemma_residuals;
use charpoly::{Context, FastSeries, Integer, PowerSeries, QPoly, QSeries, Rational};
use itertools::Itertools;

use crate::report::{Params, VerificationReport};
use crate::{Cache, CliError};

type Reports = Result<Vec<VerificationReport>, CliError>;

fn timed(
    f: impl FnOnce() -> Result<VerificationReport, CliError>,
) -> Result<VerificationReport, CliError> {
    let start = Instant::now();
    let r = f()?;
    Ok(r.with_time(start.elapsed().as_secs_f64() * 1e3))
}

/// `F_k` by the residue formula, through the cache.
pub fn fk(k: usize, m: usize, cache: &Cache) -> Result<QPoly, CliError> {
    cache.get_or_compute(&Cache::fk_key(k, m), || f_k_residue::<Rational>(k, m))
}

/// `F_μ` by interpolation, through the cache.
pub fn fmu(mu: &Partition, m: usize, cache: &Cache) -> Result<QPoly, CliError> {
    cache.get_or_compute(&Cache::fmu_key(mu, m), || f_mu_interpolate(mu, m))
}

/// `(-1)^k f(p; -q)`.
pub fn signed(f: &QPoly, k: usize) -> QPoly {
    let g = f.substitute_neg_q();
    if k.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

fn single(k: usize) -> Result<Partition, CliError> {
    Ok(Partition::new(vec![k])?)
}

/// The top-degree part of `(-1)^k F_k(p; -q)` against the coefficient of
/// `x^{k+1}` in TopFact for each `k ≤ kmax`, then the series identity
/// `-G_{p;-q}(-x) = -1 + (p_1+..+p_m)x + TopFact(x)` to order `kmax + 1`.
pub fn theorem1(kmax: usize, m: usize, cache: &Cache) -> Reports {
    let mut out = Vec::new();
    for k in 1..=kmax {
        out.push(timed(|| {
            let lhs = signed(&fk(k, m, cache)?, k).top_degree_part(k as u32 + 1);
            let rhs = topfact_mu::<Integer>(&single(k)?, m)?.to_rational();
            Ok(VerificationReport::compare(
                "theorem1-top-degree",
                Params::km(k, m),
                false,
                &lhs,
                &rhs,
            ))
        })?);
    }
    out.push(timed(|| {
        let order = kmax + 1;
        let lhs: QSeries = transformed(&g_series::<i128>(m, order)?).convert()?;
        let ctx = Context::pq(m);
        let sum_p = (1..=m).fold(QPoly::zero(&ctx), |a, i| &a + &QPoly::var(&ctx, ctx.p(i)));
        let rhs = &(&topfact_series::<Integer>(m, kmax)?.convert()?
            + &PowerSeries::monomial(sum_p, 1, order))
            - &PowerSeries::one(&ctx, order);
        let params = Params {
            m: Some(m),
            order: Some(order),
            ..Params::default()
        };
        Ok(VerificationReport::compare_series(
            "theorem1-series",
            params,
            &lhs,
            &rhs,
        ))
    })?);
    Ok(out)
}

/// For each `μ ⊢ k`: TopFact over `ω_μ`, the product of `G`s, and the top
/// part of the full sum agree.
pub fn corollary(k: usize, m: usize) -> Reports {
    partitions_of(k)
        .map(|mu| {
            timed(|| {
                let top = topfact_mu::<Integer>(&mu, m)?.to_rational();
                let product = corollary_product::<Rational>(&mu, m)?;
                let full = conjecture_sum::<Integer>(&mu, m)?
                    .to_rational()
                    .top_degree_part((k + mu.len()) as u32);
                let params = Params {
                    mu: Some(mu.to_string()),
                    ..Params::km(k, m)
                };
                Ok(VerificationReport::from_differences(
                    "corollary",
                    params,
                    false,
                    [
                        ("topfact - product".to_string(), &top - &product),
                        ("topfact - top part of full sum".to_string(), &top - &full),
                    ],
                ))
            })
        })
        .collect()
}

/// Residuals of both planted-tree lemmas for every index.
pub fn lemmas(m: usize, order: usize) -> Reports {
    let start = Instant::now();
    let (l1, l2) = lemma_residuals::<i128>(m, order)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let params = |i| Params {
        m: Some(m),
        order: Some(order),
        index: Some(i),
        ..Params::default()
    };
    let mut out = Vec::new();
    for (i, r) in l1.iter().enumerate() {
        let r: QSeries = r.convert()?;
        out.push(VerificationReport::residual("lemma1", params(i + 1), &r).with_time(ms));
    }
    for (i, r) in l2.iter().enumerate() {
        let r: QSeries = r.convert()?;
        out.push(VerificationReport::residual("lemma2", params(i), &r).with_time(ms));
    }
    Ok(out)
}

/// The full coloured sum over `S_k^(m)` against `(-1)^k F_μ(p; -q)` for
/// each `μ ⊢ k`, plus nonnegativity of the latter. Proved for `m = 1`;
/// reported as open otherwise.
pub fn conjecture(k: usize, m: usize, cache: &Cache) -> Reports {
    let open = m > 1;
    let mut out = Vec::new();
    for mu in partitions_of(k) {
        let params = Params {
            mu: Some(mu.to_string()),
            ..Params::km(k, m)
        };
        let start = Instant::now();
        let f = signed(&fmu(&mu, m, cache)?, k);
        let sum = conjecture_sum::<Integer>(&mu, m)?.to_rational();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        out.push(
            VerificationReport::compare("conjecture", params.clone(), open, &sum, &f).with_time(ms),
        );
        let zero = Rational::from_integer(0.into());
        let negative = f.filter_terms(|mono| f.coefficient(mono) < zero);
        out.push(
            VerificationReport::from_differences(
                "positivity",
                params,
                open,
                [("negative terms".to_string(), negative)],
            )
            .with_time(ms),
        );
    }
    Ok(out)
}

/// Shapes with `p_i ∈ 1..=grid` and weakly decreasing `q_j ∈ 1..=grid+m`.
pub fn grid_shapes(m: usize, grid: usize) -> Vec<Shape> {
    let ps = (0..m)
        .map(|_| 1..=grid)
        .multi_cartesian_product()
        .collect::<Vec<_>>();
    let qs = (1..=grid + m)
        .rev()
        .combinations_with_replacement(m)
        .collect::<Vec<_>>();
    ps.iter()
        .cartesian_product(&qs)
        .map(|(p, q)| Shape::new(p.clone(), q.clone()).expect("grid shapes are valid"))
        .collect()
}

/// Residue and interpolation agree as polynomials, both give `(k+m-1)_k`
/// at `p = 1, q = -1`, and both evaluate to the normalized character on
/// every grid shape with at least `k` boxes that is not an interpolation
/// node.
pub fn characters(k: usize, m: usize, grid: usize, cache: &Cache) -> Reports {
    let residue = fk(k, m, cache)?;
    let mu = single(k)?;
    let interp = fmu(&mu, m, cache)?;
    let mut out = vec![VerificationReport::compare(
        "residue-vs-interpolation",
        Params::km(k, m),
        false,
        &residue,
        &interp,
    )];

    let target = Rational::from_integer(stanley_evaluation(k, m));
    let ctx = residue.ctx().clone();
    let mut diffs = Vec::new();
    for (name, f) in [("residue", &residue), ("interpolation", &interp)] {
        let v = evaluate_at_signed_ones(f, k)?;
        diffs.push((
            format!("{name} at p = 1, q = -1 minus (k+m-1)_k"),
            QPoly::constant(&ctx, v - &target),
        ));
    }
    out.push(VerificationReport::from_differences(
        "stanley-evaluation",
        Params::km(k, m),
        false,
        diffs,
    ));

    let nodes = interpolation_nodes(&mu, m)?;
    let mut chars = CharacterCache::new();
    let mut checked = 0;
    let mut diffs = Vec::new();
    for shape in grid_shapes(m, grid) {
        if shape.n() < k || nodes.contains(&shape) {
            continue;
        }
        checked += 1;
        let expected = chars.normalized_character(&shape.partition(), &mu)?.value;
        for (name, f) in [("residue", &residue), ("interpolation", &interp)] {
            let got = shape.eval(f)?;
            diffs.push((
                format!(
                    "{name} at p = {:?}, q = {:?} minus character",
                    shape.p(),
                    shape.q()
                ),
                QPoly::constant(&ctx, got - &expected),
            ));
        }
    }
    let params = Params {
        shapes: Some(checked),
        ..Params::km(k, m)
    };
    out.push(VerificationReport::from_differences(
        "held-out-characters",
        params,
        false,
        diffs,
    ));
    Ok(out)
}

/// `T(x)` by tree enumeration or by the planted-tree recursions.
pub fn tree_series(m: usize, order: usize, recursion: bool) -> Result<QSeries, CliError> {
    let s: FastSeries = if recursion {
        let planted = charpoly::trees::planted_series::<i128>(m, order)?;
        let ctx = Context::pq(m);
        let sum_p = (1..=m).fold(charpoly::FastPoly::zero(&ctx), |a, i| {
            &a + &charpoly::FastPoly::var(&ctx, ctx.p(i))
        });
        &planted.total() - &PowerSeries::monomial(sum_p, 1, order)
    } else {
        charpoly::trees::t_series_enumerated::<i128>(m, order)?
    };
    Ok(s.convert()?)
}
