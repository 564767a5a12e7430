//! One-shot reproductions of the named results, each returning a JSON
//! payload with the computed evidence.

use serde_json::{json, Value};

use crate::bcs::{
    graph_of_system, iso_witness_from_bcs, is_classically_solvable, magic_square_instance,
    magic_square_witness, sync_bcs_game, LinearSystemZ2, Solvability,
};
use crate::certificates::{biguint_json, classical_qaut_certificate, niso_pipeline};
use crate::game::{is_perfect_strategy, strategy_from_witness, verify_magic_unitary_witness};
use crate::game_algebra::equivalence_maps;
use crate::graph::{automorphism_order, frucht, is_isomorphic, is_isospectral};
use crate::ncalg::CompletionOptions;
use crate::Error;

/// Simple spectrum, supports and trivial automorphism group of the Frucht
/// graph.
pub fn frucht_report() -> Result<Value, Error> {
    let g = frucht();
    let cert = classical_qaut_certificate(&g)?;
    let aut = automorphism_order(&g)?;
    Ok(json!({
        "simple_spectrum": cert.spectral.simple_spectrum,
        "distinct_eigenvalues": cert.spectral.distinct_eigenvalues,
        "char_poly": cert.spectral.char_poly,
        "aut_order": biguint_json(&aut),
        "supports_ok": cert.spectral.supports_ok,
        "support_margin": cert.spectral.support_margin,
        "min_eigen_gap": cert.spectral.min_eigen_gap,
        "verdict": cert.verdict.label(),
    }))
}

/// The isospectral, non-isomorphic, rigid pair built from the Frucht graph.
pub fn niso_report(subset: Option<&[usize]>) -> Result<Value, Error> {
    Ok(niso_pipeline(subset)?.to_json())
}

/// Classical unsolvability of the magic square, the 24-vertex graphs, the
/// `d = 4` witness and its push-forward to a quantum isomorphism.
pub fn magic_square_report(tol: f64) -> Result<Value, Error> {
    let sys = magic_square_instance();
    let solv = is_classically_solvable(&sys);
    let (gb, _) = graph_of_system(&sys)?;
    let (g0, _) = graph_of_system(&sys.homogeneous())?;
    let isomorphic = is_isomorphic(&gb, &g0)?.is_some();
    let wit = magic_square_witness();
    let check = wit.check();
    let game = sync_bcs_game(&sys)?;
    let strat = strategy_from_witness(&wit, &game)?;
    let perfect = is_perfect_strategy(&strat, &game)?;
    let iso_wit = iso_witness_from_bcs(&sys, &wit)?;
    let mu = verify_magic_unitary_witness(&iso_wit, &gb, &g0, tol)?;
    let certified = !isomorphic && mu.pass();
    Ok(json!({
        "classically_solvable": matches!(solv, Solvability::Solution(_)),
        "inconsistent_rows": match &solv {
            Solvability::Inconsistent(rows) => json!(rows),
            Solvability::Solution(_) => Value::Null,
        },
        "vertices": [gb.n(), g0.n()],
        "regular_degree": gb.regular_degree(),
        "isospectral": is_isospectral(&gb, &g0),
        "isomorphic": isomorphic,
        "witness": {
            "d": wit.dim(),
            "projection": check.projection,
            "row_sums": check.row_sums,
            "pass": check.max_residual() < tol,
        },
        "strategy_perfect": perfect,
        "iso_witness": mu,
        "iso_witness_pass": mu.pass(),
        "quantum_isomorphic_not_isomorphic": certified,
    }))
}

/// The three generator maps between the syncBCS, isomorphism and
/// homomorphism algebras of `sys`.
pub fn equivalence_maps_report(sys: &LinearSystemZ2, opts: &CompletionOptions) -> Result<Value, Error> {
    let rep = equivalence_maps(sys, opts)?;
    let mut v = rep.to_json();
    v["degree_bound"] = json!(opts.degree_bound);
    v["pi3_without_closure_failures"] = json!(rep.bcs_to_hom_unclosed.report.failures());
    Ok(v)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frucht_payload() {
        let v = frucht_report().unwrap();
        assert_eq!(v["simple_spectrum"], json!(true));
        assert_eq!(v["aut_order"], json!(1));
        assert_eq!(v["supports_ok"], json!(true));
        assert_eq!(v["distinct_eigenvalues"], json!(12));
    }

    #[test]
    fn magic_square_payload() {
        let v = magic_square_report(1e-10).unwrap();
        assert_eq!(v["classically_solvable"], json!(false));
        assert_eq!(v["vertices"], json!([24, 24]));
        assert_eq!(v["isomorphic"], json!(false));
        assert_eq!(v["strategy_perfect"], json!(true));
        assert_eq!(v["iso_witness_pass"], json!(true), "{v}");
        assert_eq!(v["quantum_isomorphic_not_isomorphic"], json!(true));
    }
}
