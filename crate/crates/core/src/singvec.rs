//! Singular vectors `Σ_{a∈Γ_{k,l}^m} c_a E^a v_λ` for `⟨λ+ρ, (e_k-e_l)^∨⟩ = m`,
//! and their products along strong-linkage chains.

use crate::error::{Error, Result};
use crate::pbw::{GammaIndex, PBWVector};
use crate::rootdata::{dot_reflect, pairing, simple_root_coordinates, Root, Weight};
use crate::scalar::{factorial, falling_factorial, Affine, LambdaPoly, Rational};
use crate::weylaction::{partial_sums, r_stat};

/// How to scale the emitted vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// The coefficients exactly as the formula produces them.
    #[default]
    Raw,
    /// Divided so that the leading coefficient is 1.
    MonicLeading,
}

/// Column sums `Σ_{j ≤ i < q} a_{q,j}` for `i = k..l-1`.
fn column_sums(a: &[(usize, usize, u32)], k: usize, l: usize) -> Vec<u32> {
    (k..l)
        .map(|i| a.iter().filter(|&&(q, j, _)| j <= i && i < q).map(|&(_, _, e)| e).sum())
        .collect()
}

fn search(
    positions: &[(usize, usize)],
    k: usize,
    l: usize,
    m: u32,
    chosen: &mut Vec<(usize, usize, u32)>,
    out: &mut Vec<GammaIndex>,
) {
    let sums = column_sums(chosen, k, l);
    if sums.iter().any(|&s| s > m) {
        return;
    }
    let Some((&(q, j), rest)) = positions.split_first() else {
        if sums.iter().all(|&s| s == m) {
            out.push(GammaIndex::from_entries(chosen.iter().map(|&(q, j, e)| ((q, j), e))));
        }
        return;
    };
    // Positions come sorted by column start, so columns left of `j` are final.
    if sums[..j - k].iter().any(|&s| s != m) {
        return;
    }
    for e in 0..=m {
        chosen.push((q, j, e));
        search(rest, k, l, m, chosen, out);
        chosen.pop();
    }
}

/// `Γ_{k,l}^m`: the indices of total weight `m(e_l - e_k)`, sorted by degree, then index.
pub fn enumerate_gamma_klm(k: usize, l: usize, m: u32) -> Vec<GammaIndex> {
    assert!(k >= 1 && k < l, "need 1 <= k < l");
    let mut positions: Vec<(usize, usize)> = (k..l)
        .flat_map(|j| (j + 1..=l).map(move |q| (q, j)))
        .collect();
    positions.sort_by_key(|&(q, j)| (j, q));
    let mut out = Vec::new();
    search(&positions, k, l, m, &mut Vec::new(), &mut out);
    out.sort_by_key(GammaIndex::display_key);
    out
}

/// The symbolic weight with `λ_{l-1} = m - (λ_k + … + λ_{l-2})`, so that
/// `⟨λ+ρ, (e_k-e_l)^∨⟩ = m`.
pub fn constrained_symbolic_weight(alpha: &Root, m: u32, n: usize) -> Result<Weight> {
    Root::new(alpha.k(), alpha.l(), n)?;
    let mut coords: Vec<Affine> = (1..n).map(Affine::symbol).collect();
    let mut last = Affine::integer(m as i64);
    for j in alpha.k()..alpha.l() - 1 {
        last -= &Affine::symbol(j);
    }
    coords[alpha.l() - 2] = last;
    Ok(Weight::new(coords))
}

/// The singular vector of weight `s_α·λ` in `M(λ)`, where `⟨λ+ρ, α^∨⟩ = m`.
pub fn singular_vector(alpha: &Root, m: u32, lambda: &Weight, normalization: Normalization) -> Result<PBWVector> {
    let n = lambda.n();
    let (k, l) = (alpha.k(), alpha.l());
    let found = pairing(lambda, alpha)?;
    if found != Affine::integer(m as i64) {
        return Err(Error::PairingMismatch { pairing: found, expected: m });
    }
    let sums: Vec<LambdaPoly> = partial_sums(alpha, lambda).iter().map(Affine::to_poly).collect();
    let mut v = PBWVector::zero(n);
    for a in enumerate_gamma_klm(k, l, m) {
        let mut coeff = LambdaPoly::one();
        let mut scalar = Rational::new(1.into(), a.factorial_product());
        for (offset, i) in (k..l).enumerate() {
            let r = r_stat(&a, i);
            coeff = &coeff * &falling_factorial(&sums[offset], r);
            scalar *= Rational::from_integer(factorial(m - r));
        }
        v.add_term(a, coeff.scale(&scalar));
    }
    if normalization == Normalization::MonicLeading {
        let lead = leading_power(alpha, m);
        let c = v.coefficient(&lead).as_constant().expect("leading coefficient is a number");
        v = v.scale(&LambdaPoly::constant(c.recip()));
    }
    Ok(v)
}

/// `Π_{i=k}^{l-1} ε_{i+1,i}·m`, the index of the leading term.
pub fn leading_power(alpha: &Root, m: u32) -> GammaIndex {
    GammaIndex::from_entries((alpha.k()..alpha.l()).map(|i| ((i + 1, i), m)))
}

/// The index `Σ a_i ε_{i+1,i}` where `λ - μ = Σ a_i (e_i - e_{i+1})`, or
/// `None` when some `a_i` is not a natural number.
pub fn expected_leading_index(lambda: &Weight, mu: &Weight) -> Result<Option<GammaIndex>> {
    let mut a = GammaIndex::zero();
    for (offset, c) in simple_root_coordinates(lambda, mu)?.iter().enumerate() {
        match c.as_natural() {
            Some(e) => a.add(offset + 2, offset + 1, e),
            None => return Ok(None),
        }
    }
    Ok(Some(a))
}

/// Composes the embeddings along `chain` (applied first to last) into one
/// singular vector of `M(λ)`, returned with its weight.
pub fn compose_chain(chain: &[Root], lambda: &Weight) -> Result<(PBWVector, Weight)> {
    if !lambda.is_numeric() {
        return Err(Error::SymbolicWeight("chain composition"));
    }
    let n = lambda.n();
    let mut mu = lambda.clone();
    let mut product = PBWVector::highest(n);
    for (step, root) in chain.iter().enumerate() {
        Root::new(root.k(), root.l(), n)?;
        let p = pairing(&mu, root)?;
        let m = p
            .as_natural()
            .filter(|&m| m > 0)
            .ok_or(Error::InvalidChainStep { step: step + 1, root: *root, pairing: p.clone() })?;
        let factor = singular_vector(root, m, &mu, Normalization::Raw)?;
        product = factor.mul(&product);
        mu = dot_reflect(root, &mu)?;
    }
    Ok((product, mu))
}
