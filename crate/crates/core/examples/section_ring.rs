//! Lists the monomial basis of a bidegree piece of the Cox ring of the first
//! Hirzebruch surface in descending graded-lex order.

use hirzebruch_verify::poly::{bidegree_of, section_basis, BiDegree, Surface};

fn main() {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (a, b) = (
        args.first().copied().unwrap_or(2),
        args.get(1).copied().unwrap_or(1),
    );
    let ring = Surface::F1.ring();
    let basis = section_basis(Surface::F1, BiDegree::new(a, b)).expect("nef bidegree");
    println!("S({a},{b}) has dimension {}", basis.len());
    for m in &basis {
        let d = bidegree_of(m).expect("Cox ring monomial");
        println!("  {}  bidegree ({},{})", m.render(&ring), d.a, d.b);
    }
}
