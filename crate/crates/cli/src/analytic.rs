//! The analytic constants and bounds as one JSON table.

use chroma_mst_core::analytics::{
    boundary_bounds, cl_bounds, expected_moment, lower_bound_pipeline, AnalyticsError, MomentFormula,
};
use chroma_mst_core::sixpack::{norm_constants, ordering_check};
use serde_json::{json, Value};

/// Estimates of `c` and `cL` used for the sample constant table.
pub const C_ESTIMATE: f64 = 0.647;
pub const CL_ESTIMATE: f64 = 0.351;

pub fn table() -> Result<Value, AnalyticsError> {
    let p = lower_bound_pipeline();
    let (cl_lo, cl_hi) = cl_bounds(p.lower_bound, std::f64::consts::FRAC_1_SQRT_2)?;
    let inf = f64::INFINITY;
    let m = |f: MomentFormula| expected_moment(f, inf);
    let b = boundary_bounds(1.0)?;
    let t = norm_constants(C_ESTIMATE, CL_ESTIMATE);
    Ok(json!({
        "lower_bound_pipeline": {
            "envelope_x": p.envelope_x,
            "envelope_count_coeff": p.envelope_count_coeff,
            "envelope_length_coeff": p.envelope_length_coeff,
            "x": p.x,
            "surplus_count_coeff": p.surplus_count_coeff,
            "surplus_length_coeff": p.surplus_length_coeff,
            "lower_bound": p.lower_bound,
        },
        "c_bounds": [p.lower_bound, std::f64::consts::FRAC_1_SQRT_2],
        "c_l_bounds": [cl_lo, cl_hi],
        "moments_per_unit_intensity": {
            "n1": m(MomentFormula::edges(0, 1.0))?,
            "f1": m(MomentFormula::edges(1, 1.0))?,
            "s1": m(MomentFormula::edges(2, 1.0))?,
            "n2": m(MomentFormula::triangles(0, 1.0))?,
            "f2": m(MomentFormula::triangles(1, 1.0))?,
            "s2": m(MomentFormula::triangles(2, 1.0))?,
        },
        "boundary_bounds_unit_intensity": {
            "n1": b.n1, "f1": b.f1, "n2": b.n2, "f2": b.f2,
            "n1_half": b.n1_half, "f1_half": b.f1_half, "n2_half": b.n2_half, "f2_half": b.f2_half,
        },
        "norm_constants": {
            "c": C_ESTIMATE,
            "c_l": CL_ESTIMATE,
            "dom0": t.dom0, "dom1": t.dom1, "cod0": t.cod0, "cod1": t.cod1,
            "rel1": t.rel1, "rel2": t.rel2, "ker0": t.ker0, "ker1": t.ker1,
            "im0": t.im0, "im1": t.im1, "cok1": t.cok1,
            "ordering_holds": ordering_check(C_ESTIMATE).unwrap_or(false),
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_finite() {
        let v = table().unwrap();
        let lb = v["lower_bound_pipeline"]["lower_bound"].as_f64().unwrap();
        assert!((lb - 0.6289).abs() < 2e-4);
        assert!((v["moments_per_unit_intensity"]["n1"].as_f64().unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(v["norm_constants"]["ordering_holds"], true);
        assert!(!v.to_string().contains("null"));
    }
}
