use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::{lc, strings, Case, IdentityCase, StepRole};
use crate::dense::DenseMatrix;
use crate::pauli::{to_dense, ExactOperator, Operator, PauliString, Rational, Scalar};

/// Entrywise tolerance of the dense comparison.
pub const CNOT_TOLERANCE: f64 = 1e-12;

fn identity2() -> ExactOperator {
    Operator::from_string(PauliString::identity(2).expect("two qubits"), Rational::one())
}

fn generator() -> ExactOperator {
    let zx = strings(2, ["Z1*X2".to_string()]).expect("fixed string");
    let ix = strings(2, ["X2".to_string()]).expect("fixed string");
    let zi = strings(2, ["Z1".to_string()]).expect("fixed string");
    let one = Rational::one();
    lc(2, &[(one.clone(), &identity2()), (one.neg(), &ix), (one.neg(), &zi), (one, &zx)]).expect("two qubits")
}

fn cnot() -> DenseMatrix {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    DenseMatrix::from_rows(&[
        vec![l, o, o, o],
        vec![o, l, o, o],
        vec![o, o, o, l],
        vec![o, o, l, o],
    ])
}

/// Smallest entrywise distance between `u` and `e^{iφ}·v` over global phases.
fn phase_distance(u: &DenseMatrix, v: &DenseMatrix) -> f64 {
    let overlap = v.adjoint().matmul(u).trace();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    u.max_abs_diff(&v.scale(phase))
}

fn exponentiate(theta: f64) -> DenseMatrix {
    let m = to_dense(&generator(), 2).expect("two qubits");
    m.scale(Complex64::new(0.0, theta)).expm()
}

fn dense_steps(case: &mut Case, role: StepRole, theta: f64, label: &str) {
    let u = exponentiate(theta);
    let target = cnot();
    let d = phase_distance(&u, &target);
    case.fact(
        role,
        &format!("exp(i {label} M) = CNOT up to global phase"),
        d <= CNOT_TOLERANCE,
        Some(format!("max entrywise distance {d:e}")),
    );
    let overlap = u.adjoint().matmul(&target).trace().norm() / 4.0;
    case.fact(
        role,
        &format!("|tr(U^dagger CNOT)|/4 = 1 at {label}"),
        (overlap - 1.0).abs() <= CNOT_TOLERANCE,
        Some(format!("overlap {overlap}")),
    );
}

/// `exp(iπ/4 (I - Z⊗I)(I - I⊗X)) = CNOT`, densely and algebraically.
pub fn verify_cnot_identity() -> IdentityCase {
    let mut case = Case::new("cnot").param("n", 2);
    let m = generator();
    let zi = strings(2, ["Z1".to_string()]).expect("fixed string");
    let ix = strings(2, ["X2".to_string()]).expect("fixed string");
    let i = identity2();
    let left = i.sub(&zi).expect("two qubits");
    let right = i.sub(&ix).expect("two qubits");
    let product = to_dense(&left, 2).expect("two qubits").matmul(&to_dense(&right, 2).expect("two qubits"));
    let d = product.max_abs_diff(&to_dense(&m, 2).expect("two qubits"));
    case.fact(StepRole::Claim, "(I - Z1)(I - X2) = II - IX - ZI + ZX", d == 0.0, Some(format!("distance {d:e}")));

    // M² = 4M, so exp(iθM) = I + (e^{4iθ} − 1)/4 · M.
    let mm = to_dense(&m, 2).expect("two qubits");
    let d = mm.matmul(&mm).max_abs_diff(&mm.scale(Complex64::new(4.0, 0.0)));
    case.fact(StepRole::Claim, "M^2 = 4 M", d == 0.0, Some(format!("distance {d:e}")));
    let closed = DenseMatrix::identity(4).add(&mm.scale((Complex64::new(0.0, 4.0 * FRAC_PI_4).exp() - 1.0) / 4.0));
    let d = closed.max_abs_diff(&exponentiate(FRAC_PI_4));
    case.fact(
        StepRole::Claim,
        "series exponential matches I + (e^{i pi} - 1)/4 M",
        d <= CNOT_TOLERANCE,
        Some(format!("distance {d:e}")),
    );

    dense_steps(&mut case, StepRole::Claim, FRAC_PI_4, "pi/4");
    let half = Rational::new(1, 2);
    let zx = strings(2, ["Z1*X2".to_string()]).expect("fixed string");
    let expansion = lc(
        2,
        &[(half.clone(), &i), (half.clone(), &zi), (half.clone(), &ix), (half.neg(), &zx)],
    )
    .expect("two qubits");
    let d = to_dense(&expansion, 2).expect("two qubits").max_abs_diff(&cnot());
    case.fact(
        StepRole::Claim,
        "CNOT = (II + ZI + IX - ZX)/2",
        d == 0.0,
        Some(format!("distance {d:e}")),
    );
    dense_steps(&mut case, StepRole::Control, FRAC_PI_4 + 0.01, "pi/4 + 0.01");
    case.finish()
}

/// The dense check alone at angle `theta`.
pub fn verify_cnot_at_angle(theta: f64) -> IdentityCase {
    let mut case = Case::new("cnot").param("n", 2).param("theta", theta);
    dense_steps(&mut case, StepRole::Claim, theta, &format!("{theta}"));
    case.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::CaseStatus;

    #[test]
    fn identity_passes() {
        let c = verify_cnot_identity();
        assert_eq!(c.status, CaseStatus::Pass, "{c:#?}");
        assert_eq!(c.controls().count(), 2);
    }

    #[test]
    fn perturbed_angle_fails() {
        assert_eq!(verify_cnot_at_angle(FRAC_PI_4).status, CaseStatus::Pass);
        assert_eq!(verify_cnot_at_angle(FRAC_PI_4 + 0.01).status, CaseStatus::Fail);
    }

    #[test]
    fn entrywise_distance_oracle() {
        // At π/4 the closed form is I − M/2, which is CNOT with no phase.
        let u = exponentiate(FRAC_PI_4);
        assert!(u.max_abs_diff(&cnot()) <= CNOT_TOLERANCE);
    }
}
