//! Strong linkage below a dominant integral weight of sl(3).
use verma::rootdata::{dot_reflect, linkage_orbit, maximal_chains, strongly_linked_chain, Root, Weight};

fn main() -> Result<(), verma::error::Error> {
    let lambda = Weight::integral(&[2, 3]);
    println!("λ = {lambda}");

    let alpha = Root::new(1, 3, 3)?;
    let mu = dot_reflect(&alpha, &lambda)?;
    println!("s_{alpha}·λ = {mu}");

    for (w, chain) in linkage_orbit(&lambda)? {
        let steps: Vec<String> = chain.iter().map(Root::to_string).collect();
        println!("  {w:<12} via [{}]", steps.join(", "));
    }

    let bottom = Weight::integral(&[-3, -2]);
    println!("chain to {bottom}: {:?}", strongly_linked_chain(&bottom, &lambda)?.map(|c| c.len()));
    println!("maximal chains: {}", maximal_chains(&lambda)?.len());
    Ok(())
}
