//! Cohomology, global generation and deformation ampleness of line bundles
//! on a chain of three lines.

use hirzebruch_verify::nodal::{
    global_sections, is_deformation_ample, is_globally_generated, line_bundle_da_criterion,
    twist_canonical, BundleData, TreeCurve,
};

fn main() {
    let curve = TreeCurve::chain(3);
    for degrees in [[1, 0, 0], [0, 0, 0], [2, -1, 1], [1, 1, 1]] {
        let e = BundleData::line_bundle(&curve, &degrees).expect("valid bundle");
        let h = global_sections(&curve, &e).expect("valid bundle");
        let hk = global_sections(&curve, &twist_canonical(&curve, &e)).expect("valid bundle");
        println!(
            "{degrees:?}: h0 = {}, h1 = {}, h1(E(K)) = {}, generated = {}, deformation ample = {} (criterion {})",
            h.h0,
            h.h1,
            hk.h1,
            is_globally_generated(&curve, &e).expect("valid bundle"),
            is_deformation_ample(&curve, &e).expect("valid bundle"),
            line_bundle_da_criterion(&degrees),
        );
    }
}
