//! Root data of `sl(n)`: positive roots, the Cartan matrix, shifted weights,
//! the dot action and strong linkage.
//!
//! Weights are stored in shifted coordinates `λ_i = (λ+ρ)(H_i)`, so `ρ` itself
//! has every coordinate equal to one and `-ρ` is the zero vector.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{rat, Affine, Rational};

/// The Cartan matrix entry `A_{i,j}` of `sl(n)`.
pub fn cartan_entry(n: usize, i: usize, j: usize) -> Result<i64> {
    for idx in [i, j] {
        if idx == 0 || idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, max: n - 1 });
        }
    }
    Ok(match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    })
}

/// The positive root `e_k - e_l`, `k < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    k: usize,
    l: usize,
}

impl Root {
    pub fn new(k: usize, l: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= l || l > n {
            return Err(Error::InvalidRoot { k, l, n });
        }
        Ok(Self { k, l })
    }

    pub fn simple(i: usize, n: usize) -> Result<Self> {
        Self::new(i, i + 1, n)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_simple(&self) -> bool {
        self.l == self.k + 1
    }

    pub fn height(&self) -> usize {
        self.l - self.k
    }

    /// All positive roots of `sl(n)`, lexicographic in `(k, l)`.
    pub fn all(n: usize) -> Vec<Root> {
        (1..=n)
            .flat_map(|k| (k + 1..=n).map(move |l| Root { k, l }))
            .collect()
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if self.l > n {
            return Err(Error::InvalidRoot { k: self.k, l: self.l, n });
        }
        Ok(())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.k, self.l)
    }
}

/// A weight in shifted coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Affine>,
}

impl Weight {
    pub fn new(coords: Vec<Affine>) -> Self {
        assert!(!coords.is_empty(), "sl(n) needs n >= 2");
        Self { coords }
    }

    pub fn numeric(coords: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coords.into_iter().map(Affine::constant).collect())
    }

    pub fn integral(coords: &[i64]) -> Self {
        Self::numeric(coords.iter().map(|&c| rat(c)))
    }

    /// The generic weight whose coordinates are the symbols `λ_1, …, λ_{n-1}`.
    pub fn symbolic(n: usize) -> Self {
        Self::new((1..n).map(Affine::symbol).collect())
    }

    pub fn rho(n: usize) -> Self {
        Self::new(vec![Affine::integer(1); n - 1])
    }

    /// From unshifted values `λ(H_i)`.
    pub fn from_unshifted(values: impl IntoIterator<Item = Affine>) -> Self {
        Self::new(values.into_iter().map(|v| v.shift(1)).collect())
    }

    /// Rank parameter `n` of `sl(n)`.
    pub fn n(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[Affine] {
        &self.coords
    }

    /// `λ_i`, 1-based.
    pub fn coord(&self, i: usize) -> &Affine {
        &self.coords[i - 1]
    }

    /// `λ(H_i) = λ_i - 1`, 1-based.
    pub fn unshifted(&self, i: usize) -> Affine {
        self.coords[i - 1].shift(-1)
    }

    pub fn is_numeric(&self) -> bool {
        self.coords.iter().all(Affine::is_numeric)
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::RankMismatch { expected: n, found: self.n() });
        }
        Ok(())
    }

    /// Evaluates every symbol `λ_i` at `values[i-1]`.
    pub fn substitute(&self, values: &[Affine]) -> Weight {
        Weight::new(self.coords.iter().map(|c| c.substitute(values)).collect())
    }

    /// `λ + ρ` in `ε`-coordinates normalized so the last entry is zero.
    fn epsilon(&self) -> Vec<Affine> {
        let n = self.n();
        let mut v = vec![Affine::zero(); n];
        for i in (0..n - 1).rev() {
            v[i] = &v[i + 1] + &self.coords[i];
        }
        v
    }

    fn from_epsilon(v: &[Affine]) -> Weight {
        Weight::new(v.windows(2).map(|w| &w[0] - &w[1]).collect())
    }

    /// Adds `Σ coeff·(e_p - e_q)` for the given (unshifted) root-lattice element.
    pub fn add_epsilon_difference(&self, p: usize, q: usize, times: &Affine) -> Weight {
        let mut coords = self.coords.clone();
        // (e_p - e_q)(H_i) = [p=i] - [p=i+1] - [q=i] + [q=i+1]
        for (idx, c) in coords.iter_mut().enumerate() {
            let i = idx + 1;
            let mut shift = 0i64;
            if p == i {
                shift += 1;
            }
            if p == i + 1 {
                shift -= 1;
            }
            if q == i {
                shift -= 1;
            }
            if q == i + 1 {
                shift += 1;
            }
            if shift != 0 {
                *c += &times.scale(&rat(shift));
            }
        }
        Weight::new(coords)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `⟨λ+ρ, e_k - e_l⟩ = λ_k + … + λ_{l-1}`.
pub fn pairing(lambda: &Weight, alpha: &Root) -> Result<Affine> {
    alpha.check_rank(lambda.n())?;
    let mut u = Affine::zero();
    for j in alpha.k..alpha.l {
        u += lambda.coord(j);
    }
    Ok(u)
}

/// `s_α·λ = s_α(λ+ρ) - ρ`.
pub fn dot_reflect(alpha: &Root, lambda: &Weight) -> Result<Weight> {
    alpha.check_rank(lambda.n())?;
    let mut v = lambda.epsilon();
    v.swap(alpha.k - 1, alpha.l - 1);
    Ok(Weight::from_epsilon(&v))
}

/// Coefficients `a_i` with `λ - μ = Σ a_i (e_i - e_{i+1})`.
pub fn simple_root_coordinates(lambda: &Weight, mu: &Weight) -> Result<Vec<Affine>> {
    mu.check_rank(lambda.n())?;
    let n = lambda.n();
    let (a, b) = (lambda.epsilon(), mu.epsilon());
    let d: Vec<Affine> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let mut mean = Affine::zero();
    for x in &d {
        mean += x;
    }
    let mean = mean.scale(&Rational::new(1.into(), (n as i64).into()));
    let mut acc = Affine::zero();
    let mut out = Vec::with_capacity(n - 1);
    for x in &d[..n - 1] {
        acc += &(x - &mean);
        out.push(acc.clone());
    }
    Ok(out)
}

/// A word `s_{w_1} s_{w_2} … s_{w_r}` in the simple reflections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleWord {
    letters: Vec<usize>,
}

impl SimpleWord {
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, max: n - 1 });
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The permutation `w_1 ∘ … ∘ w_r` as images of `1..=n` (0-based array).
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (1..=n).collect();
        for &i in &self.letters {
            p.swap(i - 1, i);
        }
        p
    }

    /// `σ·λ` for the element this word names; the rightmost letter acts first.
    pub fn dot_act(&self, lambda: &Weight) -> Result<Weight> {
        let n = lambda.n();
        let mut w = lambda.clone();
        for &i in self.letters.iter().rev() {
            w = dot_reflect(&Root::simple(i, n)?, &w)?;
        }
        Ok(w)
    }
}

impl fmt::Display for SimpleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// The palindromic word `[k, k+1, …, l-1, …, k+1, k]` for `s_{e_k-e_l}`.
pub fn reduced_word(alpha: &Root) -> SimpleWord {
    let up = alpha.k..alpha.l;
    let down = (alpha.k..alpha.l - 1).rev();
    SimpleWord {
        letters: up.chain(down).collect(),
    }
}

/// Every reduced word of the permutation `perm` (images of `1..=n`).
pub fn reduced_words(perm: &[usize]) -> Vec<SimpleWord> {
    let n = perm.len();
    let descents: Vec<usize> = (1..n).filter(|&i| perm[i - 1] > perm[i]).collect();
    if descents.is_empty() {
        return vec![SimpleWord::default()];
    }
    let mut out = Vec::new();
    for i in descents {
        let mut shorter = perm.to_vec();
        shorter.swap(i - 1, i);
        for mut w in reduced_words(&shorter) {
            w.letters.push(i);
            out.push(w);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn positive_integer(a: &Affine) -> bool {
    a.as_integer().is_some_and(|m| m.is_positive())
}

fn require_numeric(w: &Weight, what: &'static str) -> Result<()> {
    if w.is_numeric() {
        Ok(())
    } else {
        Err(Error::SymbolicWeight(what))
    }
}

/// One step of the `↑` relation: the roots `β` with `⟨ν+ρ, β^∨⟩ ∈ ℤ_{>0}`,
/// with the weights `s_β·ν` they lead to, in lexicographic root order.
pub fn linkage_steps(nu: &Weight) -> Vec<(Root, Weight)> {
    Root::all(nu.n())
        .into_iter()
        .filter(|beta| positive_integer(&pairing(nu, beta).expect("rank")))
        .map(|beta| {
            let next = dot_reflect(&beta, nu).expect("rank");
            (beta, next)
        })
        .collect()
}

fn reachable(lambda: &Weight) -> BTreeMap<Weight, Vec<(Root, Weight)>> {
    let mut graph = BTreeMap::new();
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(nu) = queue.pop_front() {
        if graph.contains_key(&nu) {
            continue;
        }
        let steps = linkage_steps(&nu);
        for (_, next) in &steps {
            if !graph.contains_key(next) {
                queue.push_back(next.clone());
            }
        }
        graph.insert(nu, steps);
    }
    graph
}

fn shortest_chain(
    graph: &BTreeMap<Weight, Vec<(Root, Weight)>>,
    lambda: &Weight,
    mu: &Weight,
) -> Option<Vec<Root>> {
    if !graph.contains_key(mu) {
        return None;
    }
    // distance to mu over reversed edges
    let mut reverse: BTreeMap<&Weight, Vec<&Weight>> = BTreeMap::new();
    for (from, steps) in graph {
        for (_, to) in steps {
            reverse.entry(to).or_default().push(from);
        }
    }
    let mut dist: BTreeMap<&Weight, usize> = BTreeMap::from([(mu, 0)]);
    let mut queue = VecDeque::from([mu]);
    while let Some(w) = queue.pop_front() {
        let d = dist[w];
        for &prev in reverse.get(w).into_iter().flatten() {
            if !dist.contains_key(prev) {
                dist.insert(prev, d + 1);
                queue.push_back(prev);
            }
        }
    }
    let mut chain = Vec::new();
    let mut at = lambda;
    while at != mu {
        let d = dist[at];
        let (beta, next) = graph[at]
            .iter()
            .find(|(_, next)| dist.get(next) == Some(&(d - 1)))
            .expect("distance decreases along some edge");
        chain.push(*beta);
        at = graph.get_key_value(next).expect("node").0;
    }
    Some(chain)
}

/// A shortest chain of reflections from `λ` down to `μ` along `↑`, listed in
/// the order they are applied (so `μ = s_{β_r} ⋯ s_{β_1}·λ`). Among shortest
/// chains the lexicographically smallest root sequence is returned.
pub fn strongly_linked_chain(mu: &Weight, lambda: &Weight) -> Result<Option<Vec<Root>>> {
    mu.check_rank(lambda.n())?;
    require_numeric(lambda, "strong linkage search")?;
    require_numeric(mu, "strong linkage search")?;
    if mu == lambda {
        return Ok(Some(Vec::new()));
    }
    let graph = reachable(lambda);
    Ok(shortest_chain(&graph, lambda, mu))
}

/// Every weight strongly linked to `λ` (including `λ`), each with a witnessing
/// chain, ordered by chain length and then by weight.
pub fn linkage_orbit(lambda: &Weight) -> Result<Vec<(Weight, Vec<Root>)>> {
    require_numeric(lambda, "strong linkage search")?;
    let graph = reachable(lambda);
    let mut orbit: Vec<_> = graph
        .keys()
        .map(|mu| {
            let chain = shortest_chain(&graph, lambda, mu).expect("reachable");
            (mu.clone(), chain)
        })
        .collect();
    orbit.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(orbit)
}

/// All chains from `λ` that cannot be extended by a further `↑` step.
pub fn maximal_chains(lambda: &Weight) -> Result<Vec<Vec<Root>>> {
    require_numeric(lambda, "strong linkage search")?;
    fn walk(nu: &Weight, prefix: &mut Vec<Root>, out: &mut Vec<Vec<Root>>) {
        let steps = linkage_steps(nu);
        if steps.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for (beta, next) in steps {
            prefix.push(beta);
            walk(&next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(lambda, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Replays a chain from `λ`, checking each pairing is a positive integer.
/// Returns the pairings and the final weight.
pub fn replay_chain(chain: &[Root], lambda: &Weight) -> Result<(Vec<u32>, Weight)> {
    let mut nu = lambda.clone();
    let mut pairings = Vec::with_capacity(chain.len());
    for (step, beta) in chain.iter().enumerate() {
        let p = pairing(&nu, beta)?;
        match p.as_natural().filter(|&m| m > 0) {
            Some(m) => pairings.push(m),
            None => {
                return Err(Error::InvalidChainStep { step: step + 1, root: *beta, pairing: p })
            }
        }
        nu = dot_reflect(beta, &nu)?;
    }
    Ok((pairings, nu))
}

/// The set of dot-orbit weights `{w·λ}` (all of `S_n`).
pub fn dot_orbit(lambda: &Weight) -> BTreeSet<Weight> {
    let n = lambda.n();
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..n {
            let next = dot_reflect(&Root { k: i, l: i + 1 }, &w).expect("rank");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// True when every coordinate is a positive integer.
pub fn is_regular_dominant_integral(lambda: &Weight) -> bool {
    lambda
        .coords()
        .iter()
        .all(|c| c.as_integer().is_some_and(|m| m.is_positive()))
}
