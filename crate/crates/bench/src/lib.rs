//! Shared fixtures for the pipeline benchmarks.

use logflex::families;
use logflex::{dual_curve, PatchworkFamily, TropicalCurve};

/// Honeycomb families of degree `1..=max_degree` with their curves.
pub fn honeycombs(max_degree: i64) -> Vec<(i64, PatchworkFamily, TropicalCurve)> {
    (1..=max_degree)
        .map(|d| {
            let fam = families::honeycomb(d);
            let curve = dual_curve(&fam.tropicalization()).expect("honeycomb lifting is valid");
            (d, fam, curve)
        })
        .collect()
}
