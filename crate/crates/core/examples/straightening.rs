//! PBW normal ordering in U(n⁻) and the action of lowering and raising operators.
use verma::format::pbw_to_text;
use verma::pbw::{lower_action, pbw_weight, raise_action, root_vector_action, straighten_lowering, GammaIndex, PBWVector};
use verma::rootdata::Weight;

fn main() -> Result<(), verma::error::Error> {
    let v = straighten_lowering(3, &[(3, 2), (2, 1)])?;
    println!("E32 E21 v        = {}", pbw_to_text(&v));
    let v = straighten_lowering(4, &[(4, 3), (3, 2), (2, 1), (3, 1)])?;
    println!("E43 E32 E21 E31 v = {}", pbw_to_text(&v));

    let lambda = Weight::symbolic(3);
    let w = PBWVector::term(3, GammaIndex::from_entries([((2, 1), 2), ((3, 2), 1)]), verma::scalar::LambdaPoly::one());
    println!("w = {}  of weight {}", pbw_to_text(&w), pbw_weight(w.leading_index().unwrap(), &lambda));
    println!("E21 w = {}", pbw_to_text(&lower_action(1, &w)?));
    for i in 1..=2 {
        println!("E{}{} w = {}", i, i + 1, pbw_to_text(&raise_action(i, &w, &lambda)?));
    }
    println!("E13 w = {}", pbw_to_text(&root_vector_action(1, 3, &w, &lambda)?));
    Ok(())
}
