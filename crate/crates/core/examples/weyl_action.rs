//! σ(1) through a word of simple reflections, against the closed form for s_α(1).
use verma::format::series_to_text;
use verma::rootdata::{reduced_word, Root, SimpleWord, Weight};
use verma::weylaction::{polynomiality_check, s_alpha_closed_form, sigma_of_one};

fn main() -> Result<(), verma::error::Error> {
    let symbolic = Weight::symbolic(3);
    let alpha = Root::new(1, 3, 3)?;
    let word = reduced_word(&alpha);
    let chain = sigma_of_one(&word, &symbolic, Some(2))?;
    let closed = s_alpha_closed_form(&alpha, &symbolic, Some(2))?;
    println!("σ_{word}(1) up to degree 2:\n  {}", series_to_text(&chain.series));
    println!("closed form agrees: {}", chain.series == closed.series);

    for coords in [[1, 2], [2, 3]] {
        let lambda = Weight::integral(&coords);
        let e = s_alpha_closed_form(&alpha, &lambda, None)?;
        println!(
            "λ = {lambda}: polynomial = {}, {} terms, complete = {}",
            polynomiality_check(&alpha, &lambda)?,
            e.series.len(),
            e.complete
        );
    }

    let lambda = Weight::integral(&[1, 1]);
    for letters in [vec![1], vec![2, 1], vec![1, 2, 1]] {
        let w = SimpleWord::new(letters, 3)?;
        let e = sigma_of_one(&w, &lambda, None)?;
        println!("σ_{w}(1) = {}", series_to_text(&e.series));
    }
    Ok(())
}
