//! Two independent singularity checks: raising operators and differential operators.
use verma::format::{pbw_from_json, pbw_to_json, pbw_to_text, series_to_text};
use verma::pbw::{common_weight, diff_residuals, raise_residuals};
use verma::rootdata::Weight;
use verma::scalar::ratio;

const CANDIDATE: &str = r#"[
  {"index":[[3,1,1]],"coeff":[{"lambda":[],"value":"1/2"}]},
  {"index":[[2,1,1],[3,2,1]],"coeff":[{"lambda":[],"value":"1"}]}
]"#;

fn report(v: &verma::pbw::PBWVector, lambda: &Weight) -> Result<(), verma::error::Error> {
    println!("v = {}  (weight {})", pbw_to_text(v), common_weight(v, lambda)?);
    for (i, (ug, diff)) in raise_residuals(v, lambda)?.iter().zip(diff_residuals(v, lambda)?).enumerate() {
        println!("  i={}: E v = {}   d f = {}", i + 1, pbw_to_text(ug), series_to_text(&diff));
    }
    Ok(())
}

fn main() -> Result<(), verma::error::Error> {
    let v = pbw_from_json(CANDIDATE, 3)?;
    println!("round trip exact: {}", pbw_to_json(&v) == pbw_to_json(&pbw_from_json(&pbw_to_json(&v), 3)?));
    report(&v, &Weight::numeric([ratio(1, 2), ratio(1, 2)]))?;
    report(&v, &Weight::numeric([ratio(1, 3), ratio(1, 2)]))?;
    Ok(())
}
