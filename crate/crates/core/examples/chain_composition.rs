//! Products of root singular vectors along strong-linkage chains.
use verma::format::pbw_to_text;
use verma::pbw::is_singular;
use verma::rootdata::{maximal_chains, Weight};
use verma::singvec::{compose_chain, expected_leading_index};

fn main() -> Result<(), verma::error::Error> {
    let lambda = Weight::integral(&[2, 3]);
    for chain in maximal_chains(&lambda)? {
        let (v, mu) = compose_chain(&chain, &lambda)?;
        let steps: Vec<String> = chain.iter().map(|r| r.to_string()).collect();
        println!("[{}] -> μ = {mu}", steps.join(", "));
        println!("  {} terms, singular: {}", v.len(), is_singular(&v, &lambda)?);
        let leading = expected_leading_index(&lambda, &mu)?;
        println!("  leading index matches: {}", leading.as_ref() == v.leading_index());
    }
    let (v, _) = compose_chain(&maximal_chains(&lambda)?[0], &lambda)?;
    println!("{}", pbw_to_text(&v));
    Ok(())
}
