//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use verma::pbw::{GammaIndex, PBWVector};
use verma::polyseries::{Monomial, SeriesElement};
use verma::rootdata::Weight;
use verma::scalar::{ratio, Affine, LambdaPoly, Rational};

pub type Word = Vec<(usize, usize)>;

/// `E_g E_h - E_h E_g` from products of matrix units, `E_{ab} E_{cd} = [b = c] E_{ad}`.
fn matrix_commutator(g: (usize, usize), h: (usize, usize)) -> Vec<((usize, usize), i64)> {
    let product = |x: (usize, usize), y: (usize, usize)| (x.1 == y.0).then_some((x.0, y.1));
    let mut terms: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    if let Some(e) = product(g, h) {
        *terms.entry(e).or_insert(0) += 1;
    }
    if let Some(e) = product(h, g) {
        *terms.entry(e).or_insert(0) -= 1;
    }
    terms.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Normal ordering by repeated adjacent swaps with no memoization:
/// `E_g E_h = E_h E_g + [E_g, E_h]` whenever `g > h`.
pub fn naive_straighten(n: usize, word: &[(usize, usize)]) -> PBWVector {
    let mut pending: Vec<(Word, i64)> = vec![(word.to_vec(), 1)];
    let mut sorted: BTreeMap<Word, i64> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        match (0..w.len().saturating_sub(1)).find(|&t| w[t] > w[t + 1]) {
            None => *sorted.entry(w).or_insert(0) += c,
            Some(t) => {
                let (g, h) = (w[t], w[t + 1]);
                let mut swapped = w.clone();
                swapped.swap(t, t + 1);
                pending.push((swapped, c));
                for (gen, sign) in matrix_commutator(g, h) {
                    let mut replaced = w[..t].to_vec();
                    replaced.push(gen);
                    replaced.extend_from_slice(&w[t + 2..]);
                    pending.push((replaced, c * sign));
                }
            }
        }
    }
    let mut v = PBWVector::zero(n);
    for (w, c) in sorted {
        if c != 0 {
            let a = GammaIndex::from_entries(w.into_iter().map(|g| (g, 1)));
            v.add_term(a, LambdaPoly::integer(c));
        }
    }
    v
}

/// `Σ a_{i,j}(e_i - e_j)` as an integer vector of length `n`.
pub fn root_sum(a: &GammaIndex, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for ((i, j), e) in a.entries() {
        v[i - 1] += e as i64;
        v[j - 1] -= e as i64;
    }
    v
}

/// All `a` over every lowering position of `sl(n)` with entries `≤ cap`
/// whose root sum is `m(e_l - e_k)`.
pub fn brute_gamma_klm(n: usize, k: usize, l: usize, m: u32, cap: u32) -> Vec<GammaIndex> {
    let positions: Vec<(usize, usize)> = (2..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
    let mut target = vec![0i64; n];
    target[l - 1] += m as i64;
    target[k - 1] -= m as i64;
    let mut out = Vec::new();
    let total = (cap as usize + 1).pow(positions.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut a = GammaIndex::zero();
        for &(i, j) in &positions {
            a.add(i, j, (rest % (cap as usize + 1)) as u32);
            rest /= cap as usize + 1;
        }
        if root_sum(&a, n) == target {
            out.push(a);
        }
    }
    out
}

/// `x(x-1)⋯(x-p+1)` by repeated multiplication.
pub fn falling(x: &LambdaPoly, p: u32) -> LambdaPoly {
    (0..p).fold(LambdaPoly::one(), |acc, t| &acc * &(x - &LambdaPoly::integer(t as i64)))
}

pub fn factorial(p: u32) -> BigInt {
    (1..=p).map(BigInt::from).product()
}

pub fn random_rational(rng: &mut StdRng, span: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

/// A random affine form in `λ_1..λ_{n-1}`, numeric with probability one half.
pub fn random_affine(rng: &mut StdRng, n: usize) -> Affine {
    let constant = random_rational(rng, 4, 3);
    if rng.gen_bool(0.5) {
        return Affine::constant(constant);
    }
    let symbol = rng.gen_range(1..n);
    Affine::new(constant, [(symbol, Rational::from_integer(rng.gen_range(1..=2).into()))])
}

pub fn random_monomial(rng: &mut StdRng, n: usize, max_off: u32) -> Monomial {
    let mut m = Monomial::one();
    for i in 1..n {
        if rng.gen_bool(0.6) {
            m = m.times_sub_power(i, &random_affine(rng, n));
        }
    }
    let off: Vec<(usize, usize)> = (3..=n).flat_map(|i| (1..i - 1).map(move |j| (i, j))).collect();
    if !off.is_empty() {
        for _ in 0..rng.gen_range(0..=max_off) {
            let (i, j) = off[rng.gen_range(0..off.len())];
            m = m.times_var(i, j);
        }
    }
    m
}

/// A random element with up to `terms` terms and off-degree at most `max_off`.
pub fn random_series(rng: &mut StdRng, n: usize, terms: usize, max_off: u32) -> SeriesElement {
    let mut f = SeriesElement::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let c = LambdaPoly::constant(random_rational(rng, 5, 4));
        let c = if rng.gen_bool(0.3) { &c * &LambdaPoly::symbol(rng.gen_range(1..n)) } else { c };
        f.add_term(random_monomial(rng, n, max_off), c);
    }
    f
}

/// Random numeric `λ` whose pairing with `e_k - e_l` equals `m`.
pub fn random_constrained_weight(rng: &mut StdRng, n: usize, k: usize, l: usize, m: u32) -> Weight {
    let mut coords: Vec<Rational> = (1..n).map(|_| random_rational(rng, 6, 5)).collect();
    let partial: Rational = coords[k - 1..l - 2].iter().fold(Rational::zero(), |acc, c| acc + c);
    coords[l - 2] = Rational::from_integer(m.into()) - partial;
    Weight::numeric(coords)
}

/// Whether `u = c v` for some nonzero scalar `c` (coefficients numeric).
pub fn proportional(u: &PBWVector, v: &PBWVector) -> bool {
    let mut ratio_seen: Option<Rational> = None;
    let support: std::collections::BTreeSet<&GammaIndex> = u.terms().map(|(a, _)| a).chain(v.terms().map(|(a, _)| a)).collect();
    for a in support {
        let (x, y) = (u.coefficient(a).as_constant(), v.coefficient(a).as_constant());
        match (x, y) {
            (Some(x), Some(y)) if !x.is_zero() && !y.is_zero() => {
                let r = x / y;
                if ratio_seen.get_or_insert_with(|| r.clone()) != &r {
                    return false;
                }
            }
            _ => return false,
        }
    }
    ratio_seen.is_some()
}
