//! The Verma module `M(λ) = U(n̄) v_λ` in the PBW basis
//! `E^a = E_{2,1}^{a_{2,1}} E_{3,1}^{a_{3,1}} E_{3,2}^{a_{3,2}} E_{4,1}^{a_{4,1}} ⋯`.
//!
//! Products of lowering generators are rewritten into this order with
//! `[E_{i,j}, E_{p,q}] = δ_{j,p} E_{i,q} - δ_{q,i} E_{p,j}`. Raising generators
//! are commuted through to `v_λ`, which they annihilate, while Cartan elements
//! act on it by the unshifted eigenvalue `λ(H_i) = λ_i - 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyseries::{d_op, Monomial, SeriesElement};
use crate::rootdata::Weight;
use crate::scalar::{Affine, LambdaPoly, Rational};

/// A root-vector label `(i, j)` for `E_{i,j}`; lowering when `i > j`.
pub type Generator = (usize, usize);

/// An exponent vector `a ∈ Γ`, indexing `E^a`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaIndex {
    entries: BTreeMap<Generator, u32>,
}

impl GammaIndex {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut a = Self::zero();
        for ((i, j), e) in entries {
            assert!(j < i, "E_{{{i},{j}}} is not a lowering generator");
            a.add(i, j, e);
        }
        a
    }

    /// `ε_{i,j}`.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::from_entries([((i, j), 1)])
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.entries.iter().map(|(&g, &e)| (g, e))
    }

    pub fn add(&mut self, i: usize, j: usize, e: u32) {
        if e > 0 {
            *self.entries.entry((i, j)).or_insert(0) += e;
        }
    }

    pub fn with(&self, g: Generator) -> Self {
        let mut a = self.clone();
        a.add(g.0, g.1, 1);
        a
    }

    fn without_one(&self, g: Generator) -> Self {
        let mut a = self.clone();
        match a.entries.get_mut(&g) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                a.entries.remove(&g);
            }
            None => panic!("generator {g:?} not present"),
        }
        a
    }

    /// `|a| = Σ a_{i,j}`.
    pub fn degree(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_row(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// The leftmost generator of `E^a`.
    pub fn first_generator(&self) -> Option<Generator> {
        self.entries.keys().next().copied()
    }

    /// The generators of `E^a` from left to right, with repetition.
    pub fn word(&self) -> Vec<Generator> {
        self.entries
            .iter()
            .flat_map(|(&g, &e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }

    /// `Π a_{i,j}!`.
    pub fn factorial_product(&self) -> BigInt {
        self.entries
            .values()
            .map(|&e| crate::scalar::factorial(e))
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Sort key: degree, then the entries in PBW order.
    pub fn display_key(&self) -> (u32, Vec<(Generator, u32)>) {
        (self.degree(), self.entries().collect())
    }
}

/// `Σ c_a E^a v_λ` with coefficients in `ℚ[λ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PBWVector {
    n: usize,
    terms: BTreeMap<GammaIndex, LambdaPoly>,
}

impl PBWVector {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        Self { n, terms: BTreeMap::new() }
    }

    /// The highest-weight vector `v_λ`.
    pub fn highest(n: usize) -> Self {
        Self::term(n, GammaIndex::zero(), LambdaPoly::one())
    }

    pub fn term(n: usize, a: GammaIndex, coeff: LambdaPoly) -> Self {
        let mut v = Self::zero(n);
        v.add_term(a, coeff);
        v
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (GammaIndex, LambdaPoly)>) -> Self {
        let mut v = Self::zero(n);
        for (a, c) in terms {
            v.add_term(a, c);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, a: GammaIndex, coeff: LambdaPoly) {
        assert!(a.max_row() <= self.n, "index outside sl({})", self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(a) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&GammaIndex, &LambdaPoly)> {
        self.terms.iter()
    }

    /// Terms sorted by degree, then by index.
    pub fn sorted_terms(&self) -> Vec<(&GammaIndex, &LambdaPoly)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(a, _)| a.display_key());
        t
    }

    pub fn coefficient(&self, a: &GammaIndex) -> LambdaPoly {
        self.terms.get(a).cloned().unwrap_or_default()
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

    pub fn scale(&self, c: &LambdaPoly) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(a, x)| (a.clone(), x * c)))
    }

    pub fn map_coefficients(&self, f: impl Fn(&LambdaPoly) -> LambdaPoly) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(a, x)| (a.clone(), f(x))))
    }

    /// Evaluates coefficient symbols at the coordinates of a numeric weight.
    pub fn evaluate_at(&self, lambda: &Weight) -> Self {
        self.map_coefficients(|c| c.substitute(|i| lambda.coord(i).to_poly()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c);
        }
        out
    }

    /// The unique index of maximal degree, if there is exactly one.
    pub fn leading_index(&self) -> Option<&GammaIndex> {
        let top = self.terms.keys().map(GammaIndex::degree).max()?;
        let mut it = self.terms.keys().filter(|a| a.degree() == top);
        let first = it.next();
        if it.next().is_some() {
            None
        } else {
            first
        }
    }

    /// The product `self · other` in `U(n̄)`, both read as elements `Σ c_a E^a`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let mut st = Straightener::default();
        let mut out = Self::zero(self.n);
        for (b, cb) in &self.terms {
            let word = b.word();
            for (a, ca) in &other.terms {
                let mut acc: IntCombination = BTreeMap::from([(a.clone(), BigInt::one())]);
                for &g in word.iter().rev() {
                    acc = st.left_mul_combination(g, &acc);
                }
                let c = cb * ca;
                for (idx, k) in acc {
                    out.add_term(idx, c.scale(&Rational::from_integer(k)));
                }
            }
        }
        out
    }
}

type IntCombination = BTreeMap<GammaIndex, BigInt>;

fn add_int(out: &mut IntCombination, a: GammaIndex, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(a.clone()).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&a);
    }
}

/// `[E_{i,j}, E_{p,q}]` for two lowering generators, as signed generators.
fn bracket_lowering(g: Generator, h: Generator) -> Vec<(Generator, i64)> {
    let ((i, j), (p, q)) = (g, h);
    let mut out = Vec::new();
    if j == p {
        out.push(((i, q), 1));
    }
    if q == i {
        out.push(((p, j), -1));
    }
    out
}

/// Memoized left multiplication of PBW monomials by lowering generators.
#[derive(Default)]
pub struct Straightener {
    memo: HashMap<(Generator, GammaIndex), IntCombination>,
}

impl Straightener {
    /// `E_g · E^a` rewritten in the PBW basis.
    pub fn left_mul(&mut self, g: Generator, a: &GammaIndex) -> IntCombination {
        if let Some(hit) = self.memo.get(&(g, a.clone())) {
            return hit.clone();
        }
        let result = match a.first_generator() {
            Some(h) if h < g => {
                // E_g E_h E^rest = E_h (E_g E^rest) + [E_g, E_h] E^rest
                let rest = a.without_one(h);
                let mut out = IntCombination::new();
                let inner = self.left_mul(g, &rest);
                for (b, c) in inner {
                    for (b2, c2) in self.left_mul(h, &b) {
                        add_int(&mut out, b2, &c * c2);
                    }
                }
                for (gen, sign) in bracket_lowering(g, h) {
                    for (b, c) in self.left_mul(gen, &rest) {
                        add_int(&mut out, b, c * sign);
                    }
                }
                out
            }
            _ => BTreeMap::from([(a.with(g), BigInt::one())]),
        };
        self.memo.insert((g, a.clone()), result.clone());
        result
    }

    fn left_mul_combination(&mut self, g: Generator, v: &IntCombination) -> IntCombination {
        let mut out = IntCombination::new();
        for (a, c) in v {
            for (b, k) in self.left_mul(g, a) {
                add_int(&mut out, b, c * k);
            }
        }
        out
    }
}

fn check_lowering(n: usize, g: Generator) -> Result<()> {
    let (i, j) = g;
    if j == 0 || i <= j || i > n {
        return Err(Error::NotLowering { i, j });
    }
    Ok(())
}

/// Normal-orders a product of lowering generators `E_{i_1,j_1} ⋯ E_{i_r,j_r}`.
pub fn straighten_lowering(n: usize, word: &[Generator]) -> Result<PBWVector> {
    for &g in word {
        check_lowering(n, g)?;
    }
    let mut st = Straightener::default();
    let mut acc: IntCombination = BTreeMap::from([(GammaIndex::zero(), BigInt::one())]);
    for &g in word.iter().rev() {
        acc = st.left_mul_combination(g, &acc);
    }
    Ok(PBWVector::from_terms(
        n,
        acc.into_iter()
            .map(|(a, k)| (a, LambdaPoly::constant(Rational::from_integer(k)))),
    ))
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n - 1 });
    }
    Ok(())
}

/// `E_{i+1,i} · v`.
pub fn lower_action(i: usize, v: &PBWVector) -> Result<PBWVector> {
    check_index(i, v.n)?;
    let mut st = Straightener::default();
    let mut out = PBWVector::zero(v.n);
    for (a, c) in &v.terms {
        for (b, k) in st.left_mul((i + 1, i), a) {
            out.add_term(b, c.scale(&Rational::from_integer(k)));
        }
    }
    Ok(out)
}

/// Weight of `E^a v_λ`, in shifted coordinates.
pub fn pbw_weight(a: &GammaIndex, lambda: &Weight) -> Weight {
    let mut w = lambda.clone();
    for ((i, j), e) in a.entries() {
        w = w.add_epsilon_difference(i, j, &Affine::integer(e as i64));
    }
    w
}

/// Action of raising root vectors on `M(λ)`, memoized per `(generator, index)`.
struct RaisingAction<'a> {
    lambda: &'a Weight,
    straightener: Straightener,
    memo: HashMap<(Generator, GammaIndex), PBWVector>,
}

impl<'a> RaisingAction<'a> {
    fn new(lambda: &'a Weight) -> Self {
        Self {
            lambda,
            straightener: Straightener::default(),
            memo: HashMap::new(),
        }
    }

    fn n(&self) -> usize {
        self.lambda.n()
    }

    fn lowering(&mut self, g: Generator, a: &GammaIndex) -> PBWVector {
        let mut out = PBWVector::zero(self.n());
        for (b, k) in self.straightener.left_mul(g, a) {
            out.add_term(b, LambdaPoly::constant(Rational::from_integer(k)));
        }
        out
    }

    /// `E_{p,q} E^a v_λ` for any off-diagonal `(p, q)`.
    fn root_vector(&mut self, g: Generator, a: &GammaIndex) -> PBWVector {
        if g.0 > g.1 {
            self.lowering(g, a)
        } else {
            self.raising(g, a)
        }
    }

    /// `E_{p,q} E^a v_λ` with `p < q`.
    fn raising(&mut self, x: Generator, a: &GammaIndex) -> PBWVector {
        if let Some(hit) = self.memo.get(&(x, a.clone())) {
            return hit.clone();
        }
        let n = self.n();
        let mut out = PBWVector::zero(n);
        if let Some(h) = a.first_generator() {
            let rest = a.without_one(h);
            // E_h (X E^rest v)
            let inner = self.raising(x, &rest);
            for (b, c) in &inner.terms {
                for (b2, k) in self.straightener.left_mul(h, b) {
                    out.add_term(b2, c.scale(&Rational::from_integer(k)));
                }
            }
            // [X, E_h] E^rest v with [E_{p,q}, E_{i,j}] = δ_{q,i} E_{p,j} - δ_{j,p} E_{i,q}
            let ((p, q), (i, j)) = (x, h);
            if q == i && p == j {
                // E_{pp} - E_{qq} = H_p + … + H_{q-1}
                let mu = pbw_weight(&rest, self.lambda);
                let mut scalar = Affine::zero();
                for s in p..q {
                    scalar += &mu.unshifted(s);
                }
                out.add_term(rest, scalar.to_poly());
            } else if q == i {
                let term = self.root_vector((p, j), &rest);
                out = out.add(&term);
            } else if p == j {
                let term = self.root_vector((i, q), &rest);
                out = out.sub(&term);
            }
        }
        self.memo.insert((x, a.clone()), out.clone());
        out
    }

    fn apply(&mut self, g: Generator, v: &PBWVector) -> PBWVector {
        let mut out = PBWVector::zero(v.n);
        for (a, c) in &v.terms {
            out = out.add(&self.root_vector(g, a).scale(c));
        }
        out
    }
}

/// `E_{p,q} · v` in `M(λ)` for any off-diagonal root vector.
pub fn root_vector_action(p: usize, q: usize, v: &PBWVector, lambda: &Weight) -> Result<PBWVector> {
    lambda.check_rank(v.n)?;
    if p == q || p == 0 || q == 0 || p > v.n || q > v.n {
        return Err(Error::IndexOutOfRange { index: p.max(q), max: v.n });
    }
    Ok(RaisingAction::new(lambda).apply((p, q), v))
}

/// `E_{i,i+1} · v` in `M(λ)`.
pub fn raise_action(i: usize, v: &PBWVector, lambda: &Weight) -> Result<PBWVector> {
    check_index(i, v.n)?;
    root_vector_action(i, i + 1, v, lambda)
}

/// The weight shared by every term, or [`Error::NotWeightVector`].
pub fn common_weight(v: &PBWVector, lambda: &Weight) -> Result<Weight> {
    lambda.check_rank(v.n)?;
    let mut weights = v.terms.keys().map(|a| pbw_weight(a, lambda));
    let first = weights.next().ok_or(Error::ZeroVector)?;
    if weights.any(|w| w != first) {
        return Err(Error::NotWeightVector);
    }
    Ok(first)
}

/// `E_{i,i+1} v` for every `i`, computed in `U(g)`.
pub fn raise_residuals(v: &PBWVector, lambda: &Weight) -> Result<Vec<PBWVector>> {
    lambda.check_rank(v.n)?;
    let mut action = RaisingAction::new(lambda);
    Ok((1..v.n).map(|i| action.apply((i, i + 1), v)).collect())
}

/// `d_i(τ(v))` for every `i`, computed with the differential operators.
pub fn diff_residuals(v: &PBWVector, lambda: &Weight) -> Result<Vec<SeriesElement>> {
    let f = tau(v);
    (1..v.n).map(|i| d_op(i, &f, lambda)).collect()
}

/// Whether `v` is a singular vector: a weight vector killed by every `E_{i,i+1}`.
pub fn is_singular(v: &PBWVector, lambda: &Weight) -> Result<bool> {
    common_weight(v, lambda)?;
    Ok(raise_residuals(v, lambda)?.iter().all(PBWVector::is_zero))
}

/// `τ(E^a v_λ) = x^a`.
pub fn tau(v: &PBWVector) -> SeriesElement {
    SeriesElement::from_terms(
        v.n,
        v.terms
            .iter()
            .map(|(a, c)| (Monomial::from_exponents(a.entries()), c.clone())),
    )
}

/// Inverse of [`tau`] on polynomials.
pub fn tau_inverse(f: &SeriesElement) -> Result<PBWVector> {
    let mut v = PBWVector::zero(f.n());
    for (m, c) in f.terms() {
        let exps = m
            .natural_exponents()
            .ok_or_else(|| Error::NonPolynomial(format!("{m:?}")))?;
        v.add_term(GammaIndex::from_entries(exps), c.clone());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyseries::eta;
    use crate::scalar::rat;

    fn e(entries: &[((usize, usize), u32)]) -> GammaIndex {
        GammaIndex::from_entries(entries.iter().copied())
    }

    fn int(c: i64) -> LambdaPoly {
        LambdaPoly::integer(c)
    }

    #[test]
    fn straightening_examples() {
        let got = straighten_lowering(3, &[(3, 2), (2, 1)]).unwrap();
        let expected = PBWVector::from_terms(3, [(e(&[((2, 1), 1), ((3, 2), 1)]), int(1)), (e(&[((3, 1), 1)]), int(1))]);
        assert_eq!(got, expected);
        let got = straighten_lowering(2, &[(2, 1), (2, 1)]).unwrap();
        assert_eq!(got, PBWVector::term(2, e(&[((2, 1), 2)]), int(1)));
        let got = straighten_lowering(4, &[(4, 3), (2, 1)]).unwrap();
        assert_eq!(got, PBWVector::term(4, e(&[((2, 1), 1), ((4, 3), 1)]), int(1)));
        assert!(matches!(straighten_lowering(3, &[(1, 2)]), Err(Error::NotLowering { i: 1, j: 2 })));
    }

    #[test]
    fn lower_action_examples() {
        let v = PBWVector::highest(4);
        for i in 1..4 {
            assert_eq!(lower_action(i, &v).unwrap(), PBWVector::term(4, GammaIndex::unit(i + 1, i), int(1)));
        }
        // E_{2,1} precedes E_{3,2} in the PBW order, so no reordering happens.
        let v = PBWVector::term(3, GammaIndex::unit(3, 2), int(1));
        assert_eq!(lower_action(1, &v).unwrap(), PBWVector::term(3, e(&[((2, 1), 1), ((3, 2), 1)]), int(1)));
        // E_{3,2} E_{2,1} v = E_{2,1} E_{3,2} v + E_{3,1} v
        let v = PBWVector::term(3, GammaIndex::unit(2, 1), int(1));
        let expected = PBWVector::from_terms(3, [(e(&[((2, 1), 1), ((3, 2), 1)]), int(1)), (GammaIndex::unit(3, 1), int(1))]);
        assert_eq!(lower_action(2, &v).unwrap(), expected);
    }

    #[test]
    fn raise_action_sl2() {
        let lambda = Weight::symbolic(2);
        assert!(raise_action(1, &PBWVector::highest(2), &lambda).unwrap().is_zero());
        for m in 1..6u32 {
            let v = PBWVector::term(2, e(&[((2, 1), m)]), int(1));
            let coeff = &int(m as i64) * &(&LambdaPoly::symbol(1) - &int(m as i64));
            let expected = PBWVector::term(2, e(&[((2, 1), m - 1)]), coeff);
            assert_eq!(raise_action(1, &v, &lambda).unwrap(), expected);
        }
    }

    #[test]
    fn singular_in_sl2_iff_pairing() {
        let v = PBWVector::term(3, GammaIndex::unit(2, 1), int(1));
        assert!(is_singular(&v, &Weight::integral(&[1, 5])).unwrap());
        assert!(!is_singular(&v, &Weight::integral(&[2, 5])).unwrap());
        let residual = raise_residuals(&v, &Weight::integral(&[2, 5])).unwrap();
        assert_eq!(residual[0], PBWVector::highest(3));
        assert!(is_singular(&PBWVector::highest(3), &Weight::symbolic(3)).unwrap());
    }

    #[test]
    fn non_weight_vectors_are_reported() {
        let v = PBWVector::from_terms(3, [(GammaIndex::unit(2, 1), int(1)), (GammaIndex::unit(3, 2), int(1))]);
        assert_eq!(is_singular(&v, &Weight::symbolic(3)), Err(Error::NotWeightVector));
        assert_eq!(is_singular(&PBWVector::zero(3), &Weight::symbolic(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn pbw_weights() {
        let lambda = Weight::symbolic(3);
        assert_eq!(pbw_weight(&GammaIndex::zero(), &lambda), lambda);
        let w = pbw_weight(&GammaIndex::unit(2, 1), &Weight::symbolic(2));
        assert_eq!(w.coord(1), &Affine::symbol(1).shift(-2));
    }

    #[test]
    fn tau_relabels() {
        let v = PBWVector::from_terms(
            4,
            [(GammaIndex::zero(), int(2)), (e(&[((2, 1), 1), ((4, 2), 1)]), LambdaPoly::symbol(1))],
        );
        let f = tau(&v);
        assert_eq!(f.coefficient(&Monomial::one()), int(2));
        assert_eq!(f.coefficient(&Monomial::var(2, 1).times_var(4, 2)), LambdaPoly::symbol(1));
        assert_eq!(tau_inverse(&f).unwrap(), v);
        let g = SeriesElement::monomial(3, Monomial::sub_power(1, Affine::constant(rat(-1))), int(1));
        assert!(tau_inverse(&g).is_err());
    }

    #[test]
    fn lower_action_matches_eta() {
        let v = PBWVector::from_terms(
            4,
            [
                (e(&[((2, 1), 2), ((3, 2), 1)]), int(1)),
                (e(&[((3, 1), 1), ((4, 3), 2)]), int(3)),
                (e(&[((2, 1), 1), ((4, 2), 1), ((4, 1), 1)]), LambdaPoly::symbol(2)),
            ],
        );
        for i in 1..4 {
            assert_eq!(tau(&lower_action(i, &v).unwrap()), eta(i, &tau(&v)).unwrap());
        }
    }

    #[test]
    fn product_in_enveloping_algebra() {
        // (E_{3,2}) · (E_{2,1}) = E_{2,1}E_{3,2} + E_{3,1}
        let a = PBWVector::term(3, GammaIndex::unit(3, 2), int(1));
        let b = PBWVector::term(3, GammaIndex::unit(2, 1), int(1));
        assert_eq!(a.mul(&b), straighten_lowering(3, &[(3, 2), (2, 1)]).unwrap());
        assert_eq!(PBWVector::highest(3).mul(&b), b);
    }
}
