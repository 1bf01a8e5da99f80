//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every criterion is checked with exact (zero-tolerance) equality; there is
//! no floating point anywhere.  The grid is fixed: the default parameter
//! point q = 2, Q_c = c-th odd prime at each (r, p, n).

use hecke_core::gprn::{grpn_basis, twisted_center_basis};
use hecke_core::seminormal::Context;
use hecke_core::verify::{brute_force_center_dims, mutation_outcomes, run_suite};
use hecke_core::HeckeParams;

/// The full grid used by the relation and identity criteria.
const GRID: &[(usize, usize, usize)] =
    &[(1, 1, 3), (2, 2, 2), (2, 2, 3), (2, 1, 3), (3, 3, 2), (4, 2, 2), (4, 4, 2)];

fn ctx(r: usize, p: usize, n: usize) -> Context {
    Context::new(HeckeParams::default_point(r, p, n).expect("default point exists"))
        .expect("context builds at a semisimple point")
}

fn run_scope(c: &Context, scope: &[&str]) -> Result<(), String> {
    let names: Vec<String> = scope.iter().map(|s| s.to_string()).collect();
    let report = run_suite(c, Some(&names)).map_err(|e| e.to_string())?;
    for check in &report.checks {
        if !check.passed {
            return Err(format!(
                "check {} failed: {}",
                check.id,
                check
                    .counterexample
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "no counterexample".into())
            ));
        }
    }
    Ok(())
}

fn criterion(label: &str, grid: &[(usize, usize, usize)], scope: &[&str]) {
    for &(r, p, n) in grid {
        let c = ctx(r, p, n);
        if let Err(msg) = run_scope(&c, scope) {
            println!("criterion {label}: FAIL at (r,p,n)=({r},{p},{n}): {msg}");
            panic!("criterion {label} failed at ({r},{p},{n}): {msg}");
        }
    }
    println!("criterion {label}: PASS");
}

/// 1. All defining relations hold exactly in every block, on the full grid.
#[test]
fn acceptance_1_relation_suite() {
    criterion("1 (relation suite)", GRID, &["relations", "tiact"]);
}

/// 2. Seminormal structure: multiplication law, idempotent completeness and
/// projector form, and the twist action on idempotents; exhaustive for
/// n <= 3, sampled (fixed 200-tuple prefix) at n = 4.
#[test]
fn acceptance_2_seminormal_structure() {
    let mut grid = GRID.to_vec();
    grid.push((2, 2, 4));
    criterion(
        "2 (seminormal structure)",
        &grid,
        &["GammaCoeffi", "gammacoeff", "Ft", "sigmaFt"],
    );
}

/// 3. Coefficient identities: the shift symmetry of the r-coefficients, the
/// three twist-coefficient laws, the straightening square identities, the
/// transition-element identities and the symmetric anchor ratio.
#[test]
fn acceptance_3_coefficient_identities() {
    criterion(
        "3 (coefficient identities)",
        GRID,
        &["mainthm1", "propRstk1", "propRstk2", "propRstk3", "gtsft", "snphit", "claim1"],
    );
}

/// 4. Square roots: h_lambda and the tableau families square to the shift
/// ratios, the normalization h_{lambda,0,p_lambda} = 1, periodicity, and all
/// cocycle laws.  The even branch of h_lambda is exercised at (2,2,n) and
/// (4,2,2); the odd branch at (3,3,2).
#[test]
fn acceptance_4_square_roots() {
    criterion(
        "4 (square roots)",
        GRID,
        &[
            "squareProp",
            "prophlam",
            "sqhlam",
            "congruence",
            "hlaml1l2",
            "hlamQuo",
            "plamht",
            "squareht",
            "SquareRoots2",
            "htkl",
            "htklx",
            "CompatibleEnsure",
        ],
    );
    // the parity branches are both represented on the grid: the even branch
    // needs a class with even p_lambda > 1, the odd branch a grid point
    // where every class period is odd
    for (r, p, n) in [(2, 2, 2), (4, 2, 2)] {
        let c = ctx(r, p, n);
        assert!(
            c.classes.iter().any(|cl| cl.p_lam > 1 && cl.p_lam % 2 == 0),
            "expected an even-period class at ({r},{p},{n})"
        );
    }
    let c = ctx(3, 3, 2);
    assert!(c.classes.iter().all(|cl| cl.p_lam % 2 == 1));
}

/// 5. The basis of the fixed-point subalgebra: twist invariance of every
/// element, pairwise orthogonality, cardinality r^n n! / p, and the central
/// primitive idempotent suite.
#[test]
fn acceptance_5_subalgebra_basis() {
    let grid = [(2, 2, 2), (3, 3, 2), (2, 2, 3)];
    criterion("5 (subalgebra basis)", &grid, &["orth", "mainthm3", "mainthm4", "Astij"]);
    for (point, expected) in grid.iter().zip([4usize, 6, 24]) {
        let c = ctx(point.0, point.1, point.2);
        assert_eq!(grpn_basis(&c).unwrap().elements.len(), expected);
    }
}

/// 6. Twisted centers: the explicit elements satisfy the twisted-centralizer
/// equations, their count matches the independently computed nullspace
/// dimension for every twist power, and the eigenspace slice decomposition
/// holds at (2,2,2).
#[test]
fn acceptance_6_twisted_centers() {
    criterion(
        "6 (twisted centers)",
        &[(2, 2, 2), (3, 3, 2), (4, 2, 2)],
        &["mainthm5", "dimcor"],
    );
    criterion("6 (slice decomposition)", &[(2, 2, 2)], &["weightdecomp"]);
    // frozen expected dimensions
    assert_eq!(brute_force_center_dims(&ctx(2, 2, 2)), vec![5, 1]);
    assert_eq!(brute_force_center_dims(&ctx(3, 3, 2)), vec![9, 0, 0]);
    assert_eq!(twisted_center_basis(&ctx(2, 2, 2), 1).unwrap().len(), 1);
}

/// 7. Mutation sensitivity: each seeded corruption is caught by the suite.
#[test]
fn acceptance_7_mutation_sensitivity() {
    let outcomes = mutation_outcomes(2, 2, 2).expect("harness runs");
    for outcome in &outcomes {
        assert!(
            outcome.detected,
            "corruption {} passed silently ({})",
            outcome.fault, outcome.how
        );
    }
    assert_eq!(outcomes.len(), 5);
    println!("criterion 7 (mutation sensitivity): PASS");
}

/// 8. Oracle round trip: word-basis expansion followed by recombination is
/// the identity on 50 random elements, and the twist has exact order p.
#[test]
fn acceptance_8_oracle_round_trip() {
    criterion("8 (oracle round trip)", &[(2, 2, 2), (3, 3, 2)], &["roundtrip"]);
}
