//! The action of `S_n` on the solution space of `d_1 = … = d_{n-1} = 0`:
//! `s_i` acts on a weighted element of weight `μ` by `η_i^{μ_i}`.

use crate::error::{Error, Result};
use crate::pbw::GammaIndex;
use crate::polyseries::{eta_pow_tracked, weight_decompose, Monomial, SeriesElement};
use crate::rootdata::{pairing, Root, SimpleWord, Weight};
use crate::scalar::{falling_factorial, Affine, LambdaPoly, Rational};

/// A series together with whether truncation dropped any terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub series: SeriesElement,
    pub complete: bool,
}

/// `s_i f`, cut off at off-degree `cutoff` when given.
pub fn simple_reflection(
    i: usize,
    f: &SeriesElement,
    lambda: &Weight,
    cutoff: Option<u32>,
) -> Result<Expansion> {
    let mut series = SeriesElement::zero(f.n());
    let mut complete = true;
    for (mu, part) in weight_decompose(f, lambda)? {
        let (image, whole) = eta_pow_tracked(i, mu.coord(i), &part, cutoff)?;
        series = series.add(&image);
        complete &= whole;
    }
    Ok(Expansion { series, complete })
}

/// `σ(1)` for the element named by `word`, the rightmost letter applied first.
pub fn sigma_of_one(word: &SimpleWord, lambda: &Weight, cutoff: Option<u32>) -> Result<Expansion> {
    let mut current = Expansion {
        series: SeriesElement::one(lambda.n()),
        complete: true,
    };
    for &i in word.letters().iter().rev() {
        let next = simple_reflection(i, &current.series, lambda, cutoff)?;
        current = Expansion {
            series: next.series,
            complete: current.complete && next.complete,
        };
    }
    Ok(current)
}

/// Positions `(q, j)` with `k ≤ j`, `j + 2 ≤ q ≤ l`.
fn band_positions(k: usize, l: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in k + 2..=l {
        for j in k..q - 1 {
            out.push((q, j));
        }
    }
    out.sort();
    out
}

fn enumerate_boxes(positions: &[(usize, usize)], budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<GammaIndex>) {
    if prefix.len() == positions.len() {
        out.push(GammaIndex::from_entries(positions.iter().copied().zip(prefix.iter().copied())));
        return;
    }
    for e in 0..=budget {
        prefix.push(e);
        enumerate_boxes(positions, budget - e, prefix, out);
        prefix.pop();
    }
}

/// `Γ_{k,l}` up to degree `bound`: zero on the subdiagonal and supported in
/// rows `≤ l`, columns `≥ k`. Sorted by degree, then index.
pub fn enumerate_gamma_kl(k: usize, l: usize, bound: u32) -> Vec<GammaIndex> {
    assert!(k >= 1 && k < l, "need 1 <= k < l");
    let mut out = Vec::new();
    enumerate_boxes(&band_positions(k, l), bound, &mut Vec::new(), &mut out);
    out.sort_by_key(GammaIndex::display_key);
    out
}

/// Partial sums `u_i = λ_k + … + λ_i` for `i = k..l-1`.
pub(crate) fn partial_sums(alpha: &Root, lambda: &Weight) -> Vec<Affine> {
    let mut acc = Affine::zero();
    (alpha.k()..alpha.l())
        .map(|i| {
            acc += lambda.coord(i);
            acc.clone()
        })
        .collect()
}

/// `r_i = Σ a_{q,j}` over `j ≤ i`, `q ≥ i + 2`.
pub(crate) fn r_stat(a: &GammaIndex, i: usize) -> u32 {
    a.entries()
        .filter(|&((q, j), _)| j <= i && q >= i + 2)
        .map(|(_, e)| e)
        .sum()
}

/// `t_i = r_i + Σ_{j<i} a_{i+1,j}`.
fn t_stat(a: &GammaIndex, i: usize) -> u32 {
    r_stat(a, i) + a.entries().filter(|&((q, j), _)| q == i + 1 && j < i).map(|(_, e)| e).sum::<u32>()
}

/// `s_α(1)` from its closed form, summed over `a ∈ Γ_{k,l}` with `|a| ≤ bound`.
///
/// When `⟨λ+ρ, α^∨⟩ ∈ ℕ` the sum is finite and the bound is ignored.
pub fn s_alpha_closed_form(alpha: &Root, lambda: &Weight, bound: Option<u32>) -> Result<Expansion> {
    let n = lambda.n();
    let (k, l) = (alpha.k(), alpha.l());
    Root::new(k, l, n)?;
    let sums = partial_sums(alpha, lambda);
    let top = sums.last().expect("nonempty band").clone();
    let finite = top.as_natural().map(|u| (l - k) as u32 * u);
    let (limit, complete) = match (finite, bound) {
        _ if l == k + 1 => (0, true),
        (Some(b), _) => (b, true),
        (None, Some(b)) => (b, false),
        (None, None) => return Err(Error::BoundRequired { root: *alpha }),
    };
    let top_poly = top.to_poly();
    let mut series = SeriesElement::zero(n);
    for a in enumerate_gamma_kl(k, l, limit) {
        let mut coeff = LambdaPoly::one();
        let mut monomial = Monomial::from_exponents(a.entries());
        for (offset, i) in (k..l).enumerate() {
            let (r, t) = (r_stat(&a, i), t_stat(&a, i));
            coeff = &coeff * &falling_factorial(&sums[offset].to_poly(), r);
            coeff = &coeff * &falling_factorial(&(&top_poly - &LambdaPoly::integer(r as i64)), t - r);
            monomial = monomial.times_sub_power(i, &top.shift(-(t as i64)));
        }
        if coeff.is_zero() {
            continue;
        }
        let denom = Rational::from_integer(a.factorial_product());
        series.add_term(monomial, coeff.scale(&denom.recip()));
    }
    Ok(Expansion { series, complete })
}

/// Whether `s_α(1)` is a polynomial, i.e. `⟨λ+ρ, α^∨⟩ ∈ ℕ`.
pub fn polynomiality_check(alpha: &Root, lambda: &Weight) -> Result<bool> {
    if !lambda.is_numeric() {
        return Err(Error::SymbolicWeight("polynomiality check"));
    }
    Ok(pairing(lambda, alpha)?.as_natural().is_some())
}

/// Whether every subdiagonal exponent of every term is a natural number.
pub fn subdiagonal_exponents_natural(f: &SeriesElement) -> bool {
    f.terms()
        .all(|(m, _)| m.sub_exponents().values().all(|e| e.as_natural().is_some()))
}
