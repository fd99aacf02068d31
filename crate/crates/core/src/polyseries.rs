//! The polynomial algebra `A = ℚ[x_{i,j} | j < i]` and its extension `A_1`
//! of truncated-up series, where the subdiagonal variables `x_{i+1,i}` may
//! carry affine exponents in the weight symbols.
//!
//! Operators:
//! * [`eta`]: `η_i = x_{i+1,i} + Σ_{j<i} x_{i+1,j} ∂_{i,j}` (left action of `E_{i+1,i}`)
//! * [`eta_pow`]: `η_i^c = Σ_p ⟨c⟩_p/p! x_{i+1,i}^{c-p} (Σ_{j<i} x_{i+1,j} ∂_{i,j})^p`
//! * [`d_op`]: the action of `E_{i,i+1}`
//! * [`zeta`]: the action of `H_i`
//!
//! Infinite expansions are cut off by the total degree in the off-subdiagonal
//! variables ("off-degree"). `η_i^c` never lowers the off-degree, so a cutoff
//! applied after each step is exact on every degree up to the cutoff. `d_i`
//! lowers it by at most one.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rootdata::Weight;
use crate::scalar::{factorial, rat, Affine, LambdaPoly, Rational};

/// A monomial `Π x_{i,j}^{e_{i,j}}` with natural exponents off the subdiagonal
/// and affine exponents on `x_{i+1,i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    off: BTreeMap<(usize, usize), u32>,
    sub: BTreeMap<usize, Affine>,
}

fn is_sub(i: usize, j: usize) -> bool {
    i == j + 1
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `x_{i,j}` with `j < i`.
    pub fn var(i: usize, j: usize) -> Self {
        Self::one().times_var(i, j)
    }

    /// `x_{i+1,i}^e`.
    pub fn sub_power(i: usize, e: Affine) -> Self {
        Self::one().times_sub_power(i, &e)
    }

    /// Monomial with the given natural exponents on arbitrary `x_{i,j}`.
    pub fn from_exponents(exps: impl IntoIterator<Item = ((usize, usize), u32)>) -> Self {
        let mut m = Self::one();
        for ((i, j), e) in exps {
            assert!(j < i, "x_{{{i},{j}}} is not a lower variable");
            if e == 0 {
                continue;
            }
            if is_sub(i, j) {
                m = m.times_sub_power(j, &Affine::integer(e as i64));
            } else {
                *m.off.entry((i, j)).or_insert(0) += e;
            }
        }
        m
    }

    pub fn off_exponents(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.off
    }

    pub fn sub_exponents(&self) -> &BTreeMap<usize, Affine> {
        &self.sub
    }

    pub fn sub_exponent(&self, i: usize) -> Affine {
        self.sub.get(&i).cloned().unwrap_or_default()
    }

    /// Exponent of `x_{i,j}` as an affine form.
    pub fn exponent(&self, i: usize, j: usize) -> Affine {
        if is_sub(i, j) {
            self.sub_exponent(j)
        } else {
            Affine::integer(self.off.get(&(i, j)).copied().unwrap_or(0) as i64)
        }
    }

    /// Total degree in the off-subdiagonal variables.
    pub fn off_degree(&self) -> u32 {
        self.off.values().sum()
    }

    /// Largest row index of any variable present.
    pub fn max_row(&self) -> usize {
        let off = self.off.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let sub = self.sub.keys().map(|&i| i + 1).max().unwrap_or(0);
        off.max(sub)
    }

    pub fn times_var(&self, i: usize, j: usize) -> Self {
        assert!(j < i, "x_{{{i},{j}}} is not a lower variable");
        if is_sub(i, j) {
            self.times_sub_power(j, &Affine::integer(1))
        } else {
            let mut m = self.clone();
            *m.off.entry((i, j)).or_insert(0) += 1;
            m
        }
    }

    pub fn times_sub_power(&self, i: usize, e: &Affine) -> Self {
        let mut m = self.clone();
        let slot = m.sub.entry(i).or_default();
        *slot += e;
        if slot.is_zero() {
            m.sub.remove(&i);
        }
        m
    }

    /// `∂_{i,j}` of this monomial: the exponent as a coefficient and the lowered monomial.
    pub fn diff(&self, i: usize, j: usize) -> Option<(LambdaPoly, Monomial)> {
        if is_sub(i, j) {
            let e = self.sub.get(&j)?;
            let coeff = e.to_poly();
            Some((coeff, self.times_sub_power(j, &Affine::integer(-1))))
        } else {
            let &e = self.off.get(&(i, j))?;
            let mut m = self.clone();
            if e == 1 {
                m.off.remove(&(i, j));
            } else {
                m.off.insert((i, j), e - 1);
            }
            Some((LambdaPoly::integer(e as i64), m))
        }
    }

    /// True when every subdiagonal exponent is a natural number.
    pub fn is_polynomial(&self) -> bool {
        self.sub.values().all(|e| e.as_natural().is_some())
    }

    /// All exponents as naturals, keyed by `(i, j)`, when the monomial is a polynomial.
    pub fn natural_exponents(&self) -> Option<BTreeMap<(usize, usize), u32>> {
        let mut out = self.off.clone();
        for (&i, e) in &self.sub {
            out.insert((i + 1, i), e.as_natural()?);
        }
        Some(out)
    }

    /// The `h`-weight of `τ^{-1}(x^e) ∈ M(λ)`, in shifted coordinates.
    pub fn weight(&self, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        for (&(i, j), &e) in &self.off {
            w = w.add_epsilon_difference(i, j, &Affine::integer(e as i64));
        }
        for (&i, e) in &self.sub {
            w = w.add_epsilon_difference(i + 1, i, e);
        }
        w
    }
}

/// An element of `A_1` over `sl(n)`: finitely many monomials with coefficients
/// in `ℚ[λ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesElement {
    n: usize,
    terms: BTreeMap<Monomial, LambdaPoly>,
}

impl SeriesElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::one(), LambdaPoly::one())
    }

    pub fn monomial(n: usize, m: Monomial, coeff: LambdaPoly) -> Self {
        let mut s = Self::zero(n);
        s.add_term(m, coeff);
        s
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, LambdaPoly)>) -> Self {
        let mut s = Self::zero(n);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: Monomial, coeff: LambdaPoly) {
        assert!(m.max_row() <= self.n, "monomial outside sl({})", self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> LambdaPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn max_off_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::off_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &LambdaPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), -a);
        }
        out
    }

    /// Keeps the terms of off-degree at most `bound`; reports whether any were dropped.
    pub fn truncated(&self, bound: Option<u32>) -> (Self, bool) {
        let Some(bound) = bound else {
            return (self.clone(), false);
        };
        let mut dropped = false;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| {
                let keep = m.off_degree() <= bound;
                dropped |= !keep;
                keep
            })
            .map(|(m, a)| (m.clone(), a.clone()))
            .collect();
        (Self { n: self.n, terms }, dropped)
    }

    pub fn up_to_degree(&self, bound: u32) -> Self {
        self.truncated(Some(bound)).0
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&LambdaPoly) -> LambdaPoly) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, a)| (m.clone(), f(a))))
    }

    fn map_terms(&self, mut f: impl FnMut(&Monomial, &LambdaPoly, &mut SeriesElement)) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            f(m, a, &mut out);
        }
        out
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n - 1 });
    }
    Ok(())
}

/// `Σ_{j<i} x_{i+1,j} ∂_{i,j}`, the derivation part of `η_i`.
fn eta_derivation(i: usize, f: &SeriesElement) -> SeriesElement {
    f.map_terms(|m, a, out| {
        for j in 1..i {
            if let Some((c, lowered)) = m.diff(i, j) {
                out.add_term(lowered.times_var(i + 1, j), &c * a);
            }
        }
    })
}

/// `η_i f`.
pub fn eta(i: usize, f: &SeriesElement) -> Result<SeriesElement> {
    check_index(i, f.n)?;
    let shifted = f.map_terms(|m, a, out| out.add_term(m.times_var(i + 1, i), a.clone()));
    Ok(shifted.add(&eta_derivation(i, f)))
}

/// Whether `η_i^c f` is a finite sum without a cutoff.
fn eta_pow_terminates(i: usize, c: &Affine, f: &SeriesElement) -> bool {
    i == 1
        || c.as_natural().is_some()
        || f.terms.keys().all(|m| m.sub_exponent(i - 1).as_natural().is_some())
}

/// `η_i^c f` up to off-degree `cutoff`, with a flag telling whether the
/// result is the complete expansion.
pub fn eta_pow_tracked(
    i: usize,
    c: &Affine,
    f: &SeriesElement,
    cutoff: Option<u32>,
) -> Result<(SeriesElement, bool)> {
    check_index(i, f.n)?;
    if cutoff.is_none() && !eta_pow_terminates(i, c, f) {
        return Err(Error::UnboundedSeries { generator: i });
    }
    let c_poly = c.to_poly();
    let (mut current, dropped) = f.truncated(cutoff);
    let mut complete = !dropped;
    let mut result = SeriesElement::zero(f.n);
    let mut falling = LambdaPoly::one();
    let mut p: u32 = 0;
    while !current.is_zero() {
        let weight = falling.scale(&Rational::new(BigInt::from(1), factorial(p)));
        let exponent = c.shift(-(p as i64));
        for (m, a) in &current.terms {
            result.add_term(m.times_sub_power(i, &exponent), a * &weight);
        }
        falling = &falling * &(&c_poly - &LambdaPoly::integer(p as i64));
        if falling.is_zero() {
            break;
        }
        let (next, dropped) = eta_derivation(i, &current).truncated(cutoff);
        complete &= !dropped;
        current = next;
        p += 1;
    }
    Ok((result, complete))
}

/// `η_i^c f`, cut off at off-degree `cutoff` when given. Without a cutoff the
/// expansion must be finite, otherwise [`Error::UnboundedSeries`] is returned.
pub fn eta_pow(i: usize, c: &Affine, f: &SeriesElement, cutoff: Option<u32>) -> Result<SeriesElement> {
    eta_pow_tracked(i, c, f, cutoff).map(|(s, _)| s)
}

/// `d_i f`, the action of `E_{i,i+1}`:
/// `(λ_i - 1 - Σ_{j>i} x_{j,i}∂_{j,i} + Σ_{j>i+1} x_{j,i+1}∂_{j,i+1}) ∂_{i+1,i}
///  + Σ_{j<i} x_{i,j}∂_{i+1,j} - Σ_{j>i+1} x_{j,i+1}∂_{j,i}`.
pub fn d_op(i: usize, f: &SeriesElement, lambda: &Weight) -> Result<SeriesElement> {
    let n = f.n;
    check_index(i, n)?;
    lambda.check_rank(n)?;
    let base = lambda.coord(i).shift(-1);
    Ok(f.map_terms(|m, a, out| {
        if let Some((c, lowered)) = m.diff(i + 1, i) {
            let mut factor = base.clone();
            for j in i + 1..=n {
                factor -= &lowered.exponent(j, i);
            }
            for j in i + 2..=n {
                factor += &lowered.exponent(j, i + 1);
            }
            out.add_term(lowered, &(&c * a) * &factor.to_poly());
        }
        for j in 1..i {
            if let Some((c, lowered)) = m.diff(i + 1, j) {
                out.add_term(lowered.times_var(i, j), &c * a);
            }
        }
        for j in i + 2..=n {
            if let Some((c, lowered)) = m.diff(j, i) {
                out.add_term(lowered.times_var(j, i + 1), -&(&c * a));
            }
        }
    }))
}

/// Eigenvalue of `ζ_i = H_i` on a single monomial.
fn zeta_eigenvalue(i: usize, n: usize, m: &Monomial, lambda: &Weight) -> Affine {
    let mut v = lambda.coord(i).shift(-1);
    for j in 1..i {
        v += &m.exponent(i, j);
        v -= &m.exponent(i + 1, j);
    }
    for j in i + 2..=n {
        v += &m.exponent(j, i + 1);
        v -= &m.exponent(j, i);
    }
    v -= &m.exponent(i + 1, i).scale(&rat(2));
    v
}

/// `ζ_i f`, the action of `H_i`.
pub fn zeta(i: usize, f: &SeriesElement, lambda: &Weight) -> Result<SeriesElement> {
    let n = f.n;
    check_index(i, n)?;
    lambda.check_rank(n)?;
    Ok(f.map_terms(|m, a, out| {
        let ev = zeta_eigenvalue(i, n, m, lambda).to_poly();
        out.add_term(m.clone(), a * &ev);
    }))
}

/// Splits `f` into simultaneous `ζ`-eigencomponents, ordered by weight.
pub fn weight_decompose(f: &SeriesElement, lambda: &Weight) -> Result<Vec<(Weight, SeriesElement)>> {
    lambda.check_rank(f.n)?;
    let mut parts: BTreeMap<Weight, SeriesElement> = BTreeMap::new();
    for (m, a) in &f.terms {
        parts
            .entry(m.weight(lambda))
            .or_insert_with(|| SeriesElement::zero(f.n))
            .add_term(m.clone(), a.clone());
    }
    Ok(parts.into_iter().collect())
}

/// `⟨c⟩_p / p!` as a polynomial, a convenience for closed forms.
pub fn binomial_weight(c: &LambdaPoly, p: u32) -> LambdaPoly {
    crate::scalar::falling_factorial(c, p).scale(&Rational::new(BigInt::from(1), factorial(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn x(i: usize, j: usize) -> Monomial {
        Monomial::var(i, j)
    }

    #[test]
    fn eta_examples() {
        let one = SeriesElement::one(3);
        assert_eq!(
            eta(1, &one).unwrap(),
            SeriesElement::monomial(3, x(2, 1), LambdaPoly::one())
        );
        // η_2 x_{2,1}^c = x_{3,2} x_{2,1}^c + c x_{3,1} x_{2,1}^{c-1}
        let c = Affine::symbol(1);
        let f = SeriesElement::monomial(3, Monomial::sub_power(1, c.clone()), LambdaPoly::one());
        let expected = SeriesElement::from_terms(
            3,
            [
                (Monomial::sub_power(1, c.clone()).times_var(3, 2), LambdaPoly::one()),
                (Monomial::sub_power(1, c.shift(-1)).times_var(3, 1), c.to_poly()),
            ],
        );
        assert_eq!(eta(2, &f).unwrap(), expected);
        assert!(eta(3, &f).is_err());
    }

    #[test]
    fn eta_pow_of_one() {
        let c = Affine::new(ratio(1, 3), [(2, rat(1))]);
        for i in 1..4 {
            let got = eta_pow(i, &c, &SeriesElement::one(4), None).unwrap();
            assert_eq!(got, SeriesElement::monomial(4, Monomial::sub_power(i, c.clone()), LambdaPoly::one()));
        }
    }

    #[test]
    fn eta_pow_series_example() {
        // η_2^{λ1+λ2} x_{2,1}^{λ1} = Σ_p ⟨λ1+λ2⟩_p ⟨λ1⟩_p / p! x_{3,2}^{λ1+λ2-p} x_{2,1}^{λ1-p} x_{3,1}^p
        let l1 = Affine::symbol(1);
        let u = &l1 + &Affine::symbol(2);
        let f = SeriesElement::monomial(3, Monomial::sub_power(1, l1.clone()), LambdaPoly::one());
        let bound = 5;
        let (got, complete) = eta_pow_tracked(2, &u, &f, Some(bound)).unwrap();
        assert!(!complete);
        let mut expected = SeriesElement::zero(3);
        for p in 0..=bound {
            let m = Monomial::sub_power(2, u.shift(-(p as i64)))
                .times_sub_power(1, &l1.shift(-(p as i64)));
            let m = (0..p).fold(m, |m, _| m.times_var(3, 1));
            let coeff = &binomial_weight(&u.to_poly(), p) * &crate::scalar::falling_factorial(&l1.to_poly(), p);
            expected.add_term(m, coeff);
        }
        assert_eq!(got, expected);
        assert!(matches!(eta_pow(2, &u, &f, None), Err(Error::UnboundedSeries { generator: 2 })));
    }

    #[test]
    fn eta_pow_terminates_for_natural_exponent() {
        // η_2^2 x_{2,1}^{-1/2}: ⟨2⟩_p vanishes for p > 2
        let f = SeriesElement::monomial(3, Monomial::sub_power(1, Affine::constant(ratio(-1, 2))), LambdaPoly::one());
        let (got, complete) = eta_pow_tracked(2, &Affine::integer(2), &f, None).unwrap();
        assert!(complete);
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn d_op_examples() {
        let lambda = Weight::symbolic(4);
        for i in 1..4 {
            assert!(d_op(i, &SeriesElement::one(4), &lambda).unwrap().is_zero());
        }
        // n = 2: d_1 x^c = c(λ1 - c) x^{c-1}
        let lambda = Weight::symbolic(2);
        let c = Affine::new(ratio(2, 3), [(1, ratio(1, 2))]);
        let f = SeriesElement::monomial(2, Monomial::sub_power(1, c.clone()), LambdaPoly::one());
        let coeff = &c.to_poly() * &(&LambdaPoly::symbol(1) - &c.to_poly());
        let expected = SeriesElement::monomial(2, Monomial::sub_power(1, c.shift(-1)), coeff);
        assert_eq!(d_op(1, &f, &lambda).unwrap(), expected);
    }

    #[test]
    fn zeta_examples() {
        let lambda = Weight::symbolic(4);
        for i in 1..4 {
            let got = zeta(i, &SeriesElement::one(4), &lambda).unwrap();
            let expected = SeriesElement::monomial(4, Monomial::one(), lambda.unshifted(i).to_poly());
            assert_eq!(got, expected);
        }
        let f = SeriesElement::monomial(4, x(2, 1), LambdaPoly::one());
        let got = zeta(1, &f, &lambda).unwrap();
        let expected = SeriesElement::monomial(4, x(2, 1), lambda.coord(1).shift(-3).to_poly());
        assert_eq!(got, expected);
    }

    #[test]
    fn zeta_agrees_with_weights() {
        let lambda = Weight::symbolic(4);
        let monos = [
            x(2, 1),
            x(3, 1),
            x(4, 2).times_var(3, 2),
            Monomial::sub_power(3, Affine::symbol(1)).times_var(4, 1),
            Monomial::from_exponents([((4, 1), 2), ((3, 1), 1), ((2, 1), 3)]),
        ];
        for m in monos {
            let f = SeriesElement::monomial(4, m.clone(), LambdaPoly::one());
            let w = m.weight(&lambda);
            for i in 1..4 {
                let expected = f.scale(&w.unshifted(i).to_poly());
                assert_eq!(zeta(i, &f, &lambda).unwrap(), expected, "{m:?} H_{i}");
            }
        }
    }

    #[test]
    fn weight_decomposition() {
        let lambda = Weight::symbolic(3);
        let one = SeriesElement::one(3);
        let parts = weight_decompose(&one, &lambda).unwrap();
        assert_eq!(parts, vec![(lambda.clone(), one)]);
        let f = SeriesElement::from_terms(3, [(x(2, 1), LambdaPoly::one()), (x(3, 2), LambdaPoly::one())]);
        assert_eq!(weight_decompose(&f, &lambda).unwrap().len(), 2);
        // x_{3,1} and x_{2,1} x_{3,2} share a weight
        let g = SeriesElement::from_terms(
            3,
            [(x(3, 1), LambdaPoly::one()), (x(2, 1).times_var(3, 2), LambdaPoly::one())],
        );
        assert_eq!(weight_decompose(&g, &lambda).unwrap().len(), 1);
    }

    #[test]
    fn truncation_reports_drops() {
        let f = SeriesElement::from_terms(4, [(x(3, 1), LambdaPoly::one()), (x(4, 1).times_var(4, 2), LambdaPoly::one())]);
        let (t, dropped) = f.truncated(Some(1));
        assert!(dropped);
        assert_eq!(t.len(), 1);
        assert!(!f.truncated(Some(2)).1);
    }
}
