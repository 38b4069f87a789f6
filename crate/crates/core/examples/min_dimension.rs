//! Minimal dimension of a c-generating system: the sum formula, the closed
//! form, the exhaustive oracle and the explicit system W0 that attains it.

use hirzebruch_verify::linalg::format_rational_short;
use hirzebruch_verify::linear_systems::{brute_min_dim, closed_form_me, is_c_generating, w0_basis};

fn main() {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (a, b, c) = match args[..] {
        [a, b, c] => (a, b, c),
        _ => (2, 4, 1),
    };
    let rec = closed_form_me(a, b, c).expect("b >= 1");
    println!("(a,b,c) = ({a},{b},{c})");
    println!("sum formula: {}", rec.sum_formula);
    println!(
        "closed form: {} (M = {}, E = {})",
        format_rational_short(&rec.closed_form),
        rec.m,
        rec.e
    );
    match brute_min_dim(a, b, c) {
        Ok(v) => println!("exhaustive minimum: {v}"),
        Err(e) => println!("exhaustive minimum: {e}"),
    }
    let w0 = w0_basis(a, b, c).expect("b >= 1");
    let gen = is_c_generating(&w0, c).expect("same surface");
    println!(
        "W0 has dimension {} and is {c}-generating: {}",
        w0.dim(),
        gen.generating
    );
}
