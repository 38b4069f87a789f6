//! Iterates the degree rules from the scroll family and applies each
//! elementary modification to a sample of deformation dimensions.

use hirzebruch_verify::ledger::{ext_dimension_step, run_schedule, DefDims, FamilyDegrees, Move};

fn main() {
    let base = FamilyDegrees::new(1, 5, 9);
    let rows = match run_schedule((base.clone(), base), &[1, 1, 1], 4) {
        Ok(rows) => rows,
        Err(f) => {
            println!("stopped: {}", f.error);
            f.rows
        }
    };
    for r in rows {
        println!(
            "e = {}: L = {}, H = {}, s = {}, s-bar = {}",
            r.e, r.zeta_bar.deg_l, r.zeta_bar.deg_h, r.s, r.s_bar
        );
    }
    let dims = DefDims::new(3, 10, 0);
    for mv in Move::ALL {
        let (next, b) = ext_dimension_step(dims, mv).expect("aut stays nonnegative");
        println!(
            "{mv}: ({},{},{}) -> ({},{},{}); aut ker/coker {}/{}",
            dims.aut,
            dims.def,
            dims.obs,
            next.aut,
            next.def,
            next.obs,
            b.aut.kernel,
            b.aut.cokernel
        );
    }
}
