//! Singular vectors attached to a positive root, in each output format.
use verma::format::{render_pbw, Format};
use verma::pbw::{is_singular, tau};
use verma::rootdata::{Root, Weight};
use verma::singvec::{constrained_symbolic_weight, enumerate_gamma_klm, singular_vector, Normalization};

fn main() -> Result<(), verma::error::Error> {
    let alpha = Root::new(1, 4, 4)?;
    let lambda = constrained_symbolic_weight(&alpha, 1, 4)?;
    let v = singular_vector(&alpha, 1, &lambda, Normalization::Raw)?;
    for format in [Format::Text, Format::Latex, Format::Json] {
        println!("{}\n", render_pbw(&v, format));
    }

    let alpha = Root::new(1, 3, 3)?;
    println!("|Γ(1,3,2)| = {}", enumerate_gamma_klm(1, 3, 2).len());
    let lambda = Weight::numeric([verma::scalar::ratio(1, 2), verma::scalar::ratio(3, 2)]);
    let v = singular_vector(&alpha, 2, &lambda, Normalization::Raw)?;
    println!("m = 2 at λ = {lambda}: {}", render_pbw(&v, Format::Text));
    println!("singular: {}", is_singular(&v, &lambda)?);
    println!("τ(v) = {}", verma::format::series_to_text(&tau(&v)));
    Ok(())
}
