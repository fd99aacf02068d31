//! Differential operators acting on series with symbolic exponents.
use verma::polyseries::{d_op, eta, eta_pow, zeta, Monomial, SeriesElement};
use verma::rootdata::Weight;
use verma::scalar::{Affine, LambdaPoly};

fn main() -> Result<(), verma::error::Error> {
    let lambda = Weight::symbolic(3);
    let f = SeriesElement::monomial(3, Monomial::sub_power(1, Affine::symbol(1)), LambdaPoly::one());
    println!("f        = {}", verma::format::series_to_text(&f));
    println!("η_2 f    = {}", verma::format::series_to_text(&eta(2, &f)?));
    println!("ζ_1 f    = {}", verma::format::series_to_text(&zeta(1, &f, &lambda)?));
    println!("d_1 f    = {}", verma::format::series_to_text(&d_op(1, &f, &lambda)?));

    // A natural exponent makes η_2^c terminate; a symbolic one needs a cutoff.
    println!("η_2^2 f  = {}", verma::format::series_to_text(&eta_pow(2, &Affine::integer(2), &f, None)?));
    let c = Affine::symbol(2);
    match eta_pow(2, &c, &f, None) {
        Ok(_) => println!("η_2^λ2 f terminated"),
        Err(e) => println!("η_2^λ2 f without cutoff: {e}"),
    }
    println!("η_2^λ2 f ≈ {}", verma::format::series_to_text(&eta_pow(2, &c, &f, Some(2))?));
    Ok(())
}
