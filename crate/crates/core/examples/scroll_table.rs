//! Recomputes the partial-derivative table for the scroll hypersurface and
//! prints every claim with its status.

use hirzebruch_verify::constructions::verify_scroll;

fn main() {
    let d = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let reports = verify_scroll(d, None, None).expect("feasible parameters");
    for r in &reports {
        println!("[{}] {}", r.status, r.claim_id);
        println!("    computed: {}", r.computed_value);
        println!("    printed:  {}", r.paper_value);
        if let Some(w) = &r.witness {
            println!("    witness:  {w}");
        }
    }
}
