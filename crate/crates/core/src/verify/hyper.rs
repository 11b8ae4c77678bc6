use std::collections::BTreeSet;

use super::{lc, need_n, strings, Case, IdentityCase, StepRole};
use crate::error::Result;
use crate::forcing::hyper_forcing_run;
use crate::hamlib::{build_hyperchain, hyperchain_graph, x, z, zz, zzz, CoefficientAssignment, HYPERCHAIN_SYMBOLS};
use crate::pauli::{ExactOperator, Rational, Scalar};

fn op(n: usize, s: String) -> Result<ExactOperator> {
    strings(n, [s])
}

/// Walks the hyperchain, producing each `X_k` and `Z_kZ_{k+1}` from the previous pair.
pub fn verify_hyper_step(n: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    need_n(n, 3, "hyper_step")?;
    let h = build_hyperchain(n, c)?;
    let mut case = Case::new("hyper_step").param("n", n);

    let z12 = zz(n, 1, 2);
    let z1 = z(n, 1);
    let pieces: Vec<(Rational, &ExactOperator)> = vec![
        (c.get(HYPERCHAIN_SYMBOLS[0])?.clone(), &h.h_delta),
        (c.get(HYPERCHAIN_SYMBOLS[1])?.clone(), &z12),
        (c.get(HYPERCHAIN_SYMBOLS[2])?.clone(), &z1),
        (c.get(HYPERCHAIN_SYMBOLS[3])?.clone(), &h.h_v),
    ];
    case.claim("H_Z reassembles from its commuting groups", &lc(n, &pieces)?, &h.h_z)?;

    let lhs = op(n, "Z1*Y2".into())?.bracket(&zzz(n, 1, 2, 3))?;
    case.display("[Z_1Y_2, Z_1Z_2Z_3] = X_2Z_3", &lhs, &op(n, "X2*Z3".into())?)?;
    case.control("[Z_1Y_2, Z_1Z_2Z_3] = Z_2X_3", &lhs, &op(n, "Z2*X3".into())?)?;
    if n >= 4 {
        let lhs = op(n, "Z1*Y2".into())?.bracket(&zzz(n, 2, 3, 4))?;
        case.control("[Z_1Y_2, Z_2Z_3Z_4] = X_2Z_3", &lhs, &op(n, "X2*Z3".into())?)?;
    }

    let x1 = z1.bracket(&h.h_x)?.bracket(&z1)?;
    case.claim("[[Z_1, H_X], Z_1] = X_1", &x1, &x(n, 1))?;
    let x2 = z12.bracket(&h.h_x)?.bracket(&z12)?.sub(&x1)?;
    case.claim("[[Z_1Z_2, H_X], Z_1Z_2] - X_1 = X_2", &x2, &x(n, 2))?;

    let mut xs = vec![x1, x2];
    let mut pair = z12;
    let delta = c.get(HYPERCHAIN_SYMBOLS[0])?.clone();
    let mut rest = h.h_delta.scale(&delta);
    let mut reached = 2;
    for k in 1..=n - 2 {
        let xk = &xs[k - 1];
        let raw = xk.bracket(&xk.bracket(&rest)?)?.neg();
        if raw.is_zero() {
            case.fact(
                StepRole::Claim,
                &format!("k={k}: cubic term on {k} vanishes, walk halts"),
                delta.is_zero(),
                Some("a cubic term vanished with nonzero delta".into()),
            );
            break;
        }
        let ck = raw.scale(&delta.recip());
        case.claim(
            &format!("k={k}: -[X_{k}, [X_{k}, R_{k}]] / delta = Z_{k}Z_{}Z_{}", k + 1, k + 2),
            &ck,
            &zzz(n, k, k + 1, k + 2),
        )?;
        let zy = pair.bracket(&xs[k])?;
        case.claim(&format!("k={k}: [Z_{k}Z_{}, X_{}] = Z_{k}Y_{}", k + 1, k + 1, k + 1), &zy, &op(n, format!("Z{k}*Y{}", k + 1))?)?;
        let xz = zy.bracket(&ck)?;
        case.claim(
            &format!("k={k}: [Z_{k}Y_{}, Z_{k}Z_{}Z_{}] = X_{}Z_{}", k + 1, k + 1, k + 2, k + 1, k + 2),
            &xz,
            &op(n, format!("X{}*Z{}", k + 1, k + 2))?,
        )?;
        let mut tail = h.h_x.clone();
        for xd in &xs {
            tail = tail.sub(xd)?;
        }
        let xy = xz.bracket(&tail)?;
        case.claim(&format!("k={k}: [X_{}Z_{}, sum X_j] = X_{}Y_{}", k + 1, k + 2, k + 1, k + 2), &xy, &op(n, format!("X{}*Y{}", k + 1, k + 2))?)?;
        let xnext = xy.bracket(&xz)?;
        case.claim(&format!("k={k}: [X_{}Y_{}, X_{}Z_{}] = X_{}", k + 1, k + 2, k + 1, k + 2, k + 2), &xnext, &x(n, k + 2))?;
        let yz = h.h_v.bracket(&xz)?;
        case.claim(&format!("k={k}: [H_V, X_{}Z_{}] = Y_{}Z_{}", k + 1, k + 2, k + 1, k + 2), &yz, &op(n, format!("Y{}*Z{}", k + 1, k + 2))?)?;
        pair = xs[k].bracket(&yz)?;
        case.claim(&format!("k={k}: [X_{}, Y_{}Z_{}] = Z_{}Z_{}", k + 1, k + 1, k + 2, k + 1, k + 2), &pair, &zz(n, k + 1, k + 2))?;
        rest = rest.sub(&raw)?;
        xs.push(xnext);
        reached = k + 2;
    }
    let halted = if reached == n { "none".to_string() } else { (reached - 2).to_string() };
    let mut case = case.param("reached", reached).param("halted_at", halted);
    let s1: BTreeSet<_> = [1, 2].into_iter().collect();
    let s2: BTreeSet<_> = [(1, 2)].into_iter().collect();
    let graph = hyperchain_graph(n);
    let state = hyper_forcing_run(&graph, &s1, &s2)?;
    let role = if reached == n { StepRole::Claim } else { StepRole::Display };
    case.fact(
        role,
        "hyper forcing from {1, 2} with 2-edge {1, 2} covers the chain",
        state.covers(&graph),
        Some(format!("{} of {n} vertices infected", state.infected_vertices.len())),
    );
    Ok(case.finish())
}
