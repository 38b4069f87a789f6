//! Builds the hypersurface through the quadric surface and checks that its
//! partial derivatives span all sections of bidegree (d-1, d-1).

use hirzebruch_verify::constructions::{build_quadric, derivative_system};
use hirzebruch_verify::poly::{section_count, BiDegree, Surface};

fn main() {
    let d: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let sc = build_quadric(d, d * d - 1).expect("feasible parameters");
    println!("F = {}", sc.f);
    let w = derivative_system(&sc.f, &sc.emb).expect("homogeneous partials");
    let full = section_count(Surface::F0, BiDegree::new(d as i64 - 1, d as i64 - 1)).expect("nef");
    println!("image of dF has dimension {} of {full}", w.dim());
}
