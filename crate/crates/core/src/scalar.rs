//! Exact scalars over `ℚ`: polynomials in the weight symbols `λ_1, …, λ_{n-1}`
//! and the affine forms used as exponents and weight coordinates.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`. Floats are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if s.is_empty() || s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(bad());
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

/// Returns `Some(k)` when `r` is a nonnegative integer that fits in `u32`.
pub fn as_natural(r: &Rational) -> Option<u32> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u32()
    } else {
        None
    }
}

/// Exponent vector over the symbols; index 0 is `λ_1`. Trailing zeros are trimmed.
pub type SymbolMonomial = Vec<u32>;

/// A polynomial in `λ_1, …, λ_{n-1}` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaPoly {
    terms: BTreeMap<SymbolMonomial, Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// The symbol `λ_i` (1-based).
    pub fn symbol(i: usize) -> Self {
        assert!(i >= 1, "symbols are 1-based");
        let mut e = vec![0; i];
        e[i - 1] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SymbolMonomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, mut exps: SymbolMonomial, c: Rational) {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial has no symbolic part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Replaces each symbol `λ_i` with `value(i)`.
    pub fn substitute(&self, value: impl Fn(usize) -> LambdaPoly) -> Self {
        let mut out = Self::zero();
        let max = self.terms.keys().map(Vec::len).max().unwrap_or(0);
        let values: Vec<LambdaPoly> = (1..=max).map(&value).collect();
        for (exps, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (idx, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &values[idx];
                }
            }
            out += &term;
        }
        out
    }

    /// Affine view, when the degree is at most one.
    pub fn to_affine(&self) -> Option<Affine> {
        let mut a = Affine::zero();
        for (exps, c) in &self.terms {
            match exps.iter().sum::<u32>() {
                0 => a.constant = c.clone(),
                1 => {
                    let i = exps.iter().position(|&e| e == 1).expect("degree one") + 1;
                    a.linear.insert(i, c.clone());
                }
                _ => return None,
            }
        }
        Some(a)
    }
}

impl From<Rational> for LambdaPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<&Affine> for LambdaPoly {
    fn from(a: &Affine) -> Self {
        let mut p = Self::constant(a.constant.clone());
        for (&i, c) in &a.linear {
            let mut e = vec![0; i];
            e[i - 1] = 1;
            p.add_term(e, c.clone());
        }
        p
    }
}

impl AddAssign<&LambdaPoly> for LambdaPoly {
    fn add_assign(&mut self, rhs: &LambdaPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LambdaPoly> for LambdaPoly {
    fn sub_assign(&mut self, rhs: &LambdaPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn monomial_product(e1: &[u32], e2: &[u32]) -> SymbolMonomial {
    let len = e1.len().max(e2.len());
    (0..len).map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0)).collect()
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(monomial_product(e1, e2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(LambdaPoly, Add::add, Sub::sub, Mul::mul);

/// `q_0 + Σ q_i λ_i`, an exponent or weight coordinate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    constant: Rational,
    linear: BTreeMap<usize, Rational>,
}

impl Affine {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            constant: c,
            linear: BTreeMap::new(),
        }
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn symbol(i: usize) -> Self {
        assert!(i >= 1, "symbols are 1-based");
        let mut linear = BTreeMap::new();
        linear.insert(i, Rational::one());
        Self {
            constant: Rational::zero(),
            linear,
        }
    }

    pub fn new(constant: Rational, linear: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut a = Self::constant(constant);
        for (i, c) in linear {
            a.add_linear(i, c);
        }
        a
    }

    fn add_linear(&mut self, i: usize, c: Rational) {
        let slot = self.linear.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.linear.remove(&i);
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn linear_part(&self) -> &BTreeMap<usize, Rational> {
        &self.linear
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }

    pub fn is_numeric(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_numeric().then_some(&self.constant)
    }

    /// Decidable integrality: no symbolic part and an integral constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_constant()
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    pub fn as_natural(&self) -> Option<u32> {
        self.as_constant().and_then(as_natural)
    }

    pub fn shift(&self, by: i64) -> Self {
        let mut a = self.clone();
        a.constant += rat(by);
        a
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            constant: &self.constant * c,
            linear: self.linear.iter().map(|(&i, v)| (i, v * c)).collect(),
        }
    }

    pub fn to_poly(&self) -> LambdaPoly {
        LambdaPoly::from(self)
    }

    /// Evaluates at numeric symbol values `values[i-1] = λ_i`.
    pub fn substitute(&self, values: &[Affine]) -> Affine {
        let mut out = Affine::constant(self.constant.clone());
        for (&i, c) in &self.linear {
            out += &values[i - 1].scale(c);
        }
        out
    }
}

impl From<Rational> for Affine {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&Affine> for Affine {
    fn add_assign(&mut self, rhs: &Affine) {
        self.constant += &rhs.constant;
        for (&i, c) in &rhs.linear {
            self.add_linear(i, c.clone());
        }
    }
}

impl SubAssign<&Affine> for Affine {
    fn sub_assign(&mut self, rhs: &Affine) {
        self.constant -= &rhs.constant;
        for (&i, c) in &rhs.linear {
            self.add_linear(i, -c.clone());
        }
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(&-Rational::one())
    }
}

forward_owned!(Affine, Add::add, Sub::sub);

/// `⟨γ⟩_k = γ(γ-1)…(γ-k+1)`, with `⟨γ⟩_0 = 1`.
pub fn falling_factorial(gamma: &LambdaPoly, k: u32) -> LambdaPoly {
    let mut out = LambdaPoly::one();
    for step in 0..k {
        let factor = gamma - &LambdaPoly::integer(step as i64);
        out = &out * &factor;
        if out.is_zero() {
            break;
        }
    }
    out
}

fn write_rational_factor(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool, bare: bool) -> fmt::Result {
    // Writes the sign and magnitude; `bare` suppresses a unit magnitude.
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    let mag = c.abs();
    if !(bare && mag.is_one()) {
        write!(f, "{mag}")?;
    }
    Ok(())
}

/// Plain-text rendering with symbols written `l1, l2, …`.
impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (idx, (exps, c)) in terms.into_iter().enumerate() {
            let has_symbols = exps.iter().any(|&e| e > 0);
            write_rational_factor(f, c, idx == 0, has_symbols)?;
            let needs_star = has_symbols && !c.abs().is_one();
            let mut first_sym = !needs_star;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_sym {
                    write!(f, "*")?;
                }
                first_sym = false;
                write!(f, "l{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

pub(crate) fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

impl LambdaPoly {
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (idx, (exps, c)) in terms.into_iter().enumerate() {
            let has_symbols = exps.iter().any(|&e| e > 0);
            if idx == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if !(has_symbols && mag.is_one()) {
                s.push_str(&latex_rational(&mag));
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                s.push_str(&format!("\\lambda_{}", i + 1));
                if e > 1 {
                    s.push_str(&format!("^{{{e}}}"));
                }
            }
        }
        s
    }
}
