use std::collections::BTreeSet;

use super::{strings, Case, IdentityCase, StepRole};
use crate::error::{Error, Result};
use crate::forcing::zero_forcing_run;
use crate::hamlib::{grid_graph, grid_hamiltonians, x, z, CoefficientAssignment, Vertex, GRID_SYMBOLS};
use crate::pauli::{ExactOperator, PauliString, Rational, Scalar};

/// Grid sides replayed by default.
pub const GRID_SIDES: [usize; 2] = [2, 3];

const MAX_SIDE: usize = 3;

fn bit(q: usize) -> u64 {
    1u64 << (q - 1)
}

/// Qubits of grid columns `from..=side`.
fn columns(side: usize, from: usize) -> u64 {
    (from..=side)
        .flat_map(|c| (0..side).map(move |r| c + r * side))
        .fold(0, |m, q| m | bit(q))
}

/// First-row qubits `from..=side`.
fn row_tail(side: usize, from: usize) -> u64 {
    (from..=side).fold(0, |m, q| m | bit(q))
}

fn neighbours(side: usize, k: usize) -> u64 {
    let (r, c) = ((k - 1) / side, (k - 1) % side);
    let mut m = 0;
    if c > 0 {
        m |= bit(k - 1);
    }
    if c + 1 < side {
        m |= bit(k + 1);
    }
    if r > 0 {
        m |= bit(k - side);
    }
    if r + 1 < side {
        m |= bit(k + side);
    }
    m
}

fn touching(op: &ExactOperator, mask: u64) -> ExactOperator {
    op.filter(|p: &PauliString| p.support_mask() & mask != 0)
}

fn avoids(op: &ExactOperator, mask: u64) -> bool {
    op.support_mask() & mask == 0
}

fn op(n: usize, s: String) -> Result<ExactOperator> {
    strings(n, [s])
}

/// Replays the grid induction and the first-row extraction.
pub fn verify_grid_recursion(side: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    if !(2..=MAX_SIDE).contains(&side) {
        return Err(Error::InvalidArgument(format!(
            "grid replay supports 2 <= side <= {MAX_SIDE}, got {side}"
        )));
    }
    replay(side, c)
}

pub(crate) fn replay(side: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    let g = grid_hamiltonians(side, c)?;
    let big = g.grid_size;
    let n = big + 2;
    let (pb, pc) = (big + 1, big + 2);
    let mut case = Case::new("grid_recursion").param("side", side);

    let pieces = [
        (c.get(GRID_SYMBOLS[0])?.clone(), g.h_a1.clone()),
        (c.get(GRID_SYMBOLS[1])?.clone(), z(n, pb)),
        (c.get(GRID_SYMBOLS[2])?.clone(), z(n, pc)),
        (c.get(GRID_SYMBOLS[3])?.clone(), g.h_a2.clone()),
        (c.get(GRID_SYMBOLS[4])?.clone(), g.pendant_b.clone()),
        (c.get(GRID_SYMBOLS[5])?.clone(), g.pendant_c.clone()),
    ];
    let refs: Vec<(Rational, &ExactOperator)> = pieces.iter().map(|(k, o)| (k.clone(), o)).collect();
    case.claim("H_Z reassembles from its commuting groups", &super::lc(n, &refs)?, &g.h_z)?;
    let x_sum = g.h_x.sub(&x(n, pb))?.sub(&x(n, pc))?;
    case.claim("X_Grid = H_X - X_{N+1} - X_{N+2}", &x_sum, &g.x_grid)?;

    // Base step from the pendant on v_1.
    let y1b = g.pendant_b.bracket(&g.x_grid)?;
    case.claim("[Z_1 Z_{N+1}, X_Grid] = Y_1 Z_{N+1}", &y1b, &op(n, format!("Y1*Z{pb}"))?)?;
    let x1 = y1b.bracket(&g.pendant_b)?;
    case.claim("[Y_1 Z_{N+1}, Z_1 Z_{N+1}] = X_1", &x1, &x(n, 1))?;
    let y1 = g.h_a1.bracket(&x1)?;
    case.claim("[H_A1, X_1] = Y_1", &y1, &op(n, "Y1".into())?)?;
    case.claim("[X_1, Y_1] = Z_1", &x1.bracket(&y1)?, &z(n, 1))?;
    let s4 = y1b.bracket(&g.h_a2)?;
    let want = strings(n, [format!("Z{pb}*X1*Z{}", side + 1), format!("Z{pb}*X1*Z2")])?;
    case.claim("[Y_1 Z_{N+1}, H_A2] = Z_{N+1}X_1Z_{n+1} + Z_{N+1}X_1Z_2", &s4, &want)?;
    let s5 = y1.bracket(&s4)?.neg();
    let want = strings(n, [format!("Z{pb}*Z1*Z{}", side + 1), format!("Z{pb}*Z1*Z2")])?;
    case.claim("-[Y_1, step] = Z_{N+1}Z_1Z_{n+1} + Z_{N+1}Z_1Z_2", &s5, &want)?;
    let s6 = y1b.bracket(&s5)?;
    let want = strings(n, [format!("X1*Z{}", side + 1), "X1*Z2".into()])?;
    case.claim("[Z_{N+1}Y_1, Z_{N+1}Z_1Z_{n+1} + Z_{N+1}Z_1Z_2] = X_1Z_{n+1} + X_1Z_2", &s6, &want)?;
    let mut h = y1.bracket(&s6)?.neg();
    let h2 = strings(n, [format!("Z1*Z{}", side + 1), "Z1*Z2".into()])?;
    case.claim("H^(2) = Z_1Z_{n+1} + Z_1Z_2", &h, &h2)?;
    case.control("H^(2) = Z_1Z_2 (R^(2) vanishes)", &h, &op(n, "Z1*Z2".into())?)?;

    // Induction.
    let mut a1 = g.x_grid.sub(&x1)?;
    let mut a2 = g.h_a2.sub(&h)?;
    let mut hs = vec![ExactOperator::zero(n), ExactOperator::zero(n), h.clone()];
    for k in 2..=side {
        let zz = op(n, format!("Z{}*Z{k}", k - 1))?;
        let r = h.sub(&zz)?;
        case.fact(
            StepRole::Claim,
            &format!("k={k}: R^(k) = H^(k) - Z_{{k-1}}Z_k has no support on columns k..n"),
            avoids(&r, columns(side, k)),
            Some(format!("R^(k) = {r}")),
        );
        if k == side {
            break;
        }
        let row = (k..=side).map(|j| x(n, j)).try_fold(ExactOperator::zero(n), |a, o| a.add(&o))?;
        let xr = a1.sub(&row)?;
        case.fact(
            StepRole::Claim,
            &format!("k={k}: H_A1^(k) restricted to the first row k..n is X_k + ... + X_n"),
            touching(&a1, row_tail(side, k)) == row,
            Some(format!("H_A1^(k) = {a1}")),
        );
        case.fact(
            StepRole::Display,
            &format!("k={k}: X_R^(k) has no support on columns k..n"),
            avoids(&xr, columns(side, k)),
            Some(format!("X_R^(k) = {xr}")),
        );
        let t1 = h.bracket(&a1)?;
        let rx = r.bracket(&xr)?;
        case.claim(
            &format!("k={k}: [H^(k), H_A1^(k)] = Z_{{k-1}}Y_k + [R, X_R]"),
            &t1,
            &op(n, format!("Z{}*Y{k}", k - 1))?.add(&rx)?,
        )?;
        let t2 = t1.bracket(&h)?;
        let rxr = rx.bracket(&r)?;
        case.claim(&format!("k={k}: [[H^(k), H_A1^(k)], H^(k)] = X_k + [[R, X_R], R]"), &t2, &x(n, k).add(&rxr)?)?;
        case.fact(
            StepRole::Claim,
            &format!("k={k}: [[R, X_R], R] has no support on columns k..n"),
            avoids(&rxr, columns(side, k)),
            Some(format!("[[R, X_R], R] = {rxr}")),
        );
        let around = bit(k) | neighbours(side, k);
        let at_k = touching(&a2, bit(k));
        let want = strings(n, [format!("Z{k}*Z{}", k + 1), format!("Z{k}*Z{}", k + side)])?;
        case.claim(&format!("k={k}: H_A2^(k) terms on vertex k are Z_kZ_{{k+1}} + Z_kZ_{{k+n}}"), &at_k, &want)?;
        let rest = a2.sub(&at_k)?;
        case.fact(
            StepRole::Display,
            &format!("k={k}: other H_A2^(k) terms avoid k and its neighbours"),
            avoids(&rest, around),
            Some(format!("H_A2^(k) - Z_k(...) = {rest}")),
        );
        let t3 = t1.bracket(&a2)?;
        let want = strings(n, [format!("Z{}*X{k}*Z{}", k - 1, k + 1), format!("Z{}*X{k}*Z{}", k - 1, k + side)])?
            .add(&rx.bracket(&a2)?)?;
        case.claim(
            &format!("k={k}: [[H^(k), H_A1^(k)], H_A2^(k)] = Z_{{k-1}}X_kZ_{{k+1}} + Z_{{k-1}}X_kZ_{{k+n}} + [[R, X_R], H_A2^(k)]"),
            &t3,
            &want,
        )?;
        let raw = t1.bracket(&t3)?;
        let lead = raw.coeff(&PauliString::from_factors(n, &[(k, crate::pauli::Axis::Z), (k + 1, crate::pauli::Axis::Z)])?);
        case.fact(
            StepRole::Display,
            &format!("k={k}: [T1, T3] = H^(k+1) with sign as printed"),
            lead == Some(&Rational::one()),
            Some(format!("coefficient of Z_kZ_{{k+1}} is {}", lead.map_or("0".into(), |c| c.to_string()))),
        );
        let next = raw.neg();
        a1 = a1.sub(&t2)?;
        a2 = a2.sub(&next)?;
        h = next;
        hs.push(h.clone());
    }

    // Finish from the pendant on v_n, then walk the first row backwards.
    let ync = g.pendant_c.bracket(&g.x_grid)?;
    case.claim("[Z_n Z_{N+2}, X_Grid] = Y_n Z_{N+2}", &ync, &op(n, format!("Y{side}*Z{pc}"))?)?;
    let mut xk = ync.bracket(&g.pendant_c)?;
    case.claim("[Y_n Z_{N+2}, Z_n Z_{N+2}] = X_n", &xk, &x(n, side))?;
    let s = ync.bracket(&hs[side])?;
    case.claim(
        "[Y_n Z_{N+2}, H^(n)] = Z_{n-1}X_nZ_{N+2}",
        &s,
        &op(n, format!("Z{}*X{side}*Z{pc}", side - 1))?,
    )?;
    let mut zz = s.bracket(&ync)?;
    case.claim("[Z_{n-1}X_nZ_{N+2}, Y_n Z_{N+2}] = Z_{n-1}Z_n", &zz, &op(n, format!("Z{}*Z{side}", side - 1))?)?;

    let mut xs = vec![ExactOperator::zero(n); side + 1];
    xs[side] = xk.clone();
    for k in (1..side).rev() {
        let zy = zz.bracket(&xk)?;
        case.claim(&format!("[Z_{k}Z_{}, X_{}] = Z_{k}Y_{}", k + 1, k + 1, k + 1), &zy, &op(n, format!("Z{k}*Y{}", k + 1))?)?;
        let yy = zy.bracket(&g.x_grid)?.add(&zz)?;
        case.claim(&format!("[Z_{k}Y_{}, X_Grid] + Z_{k}Z_{} = Y_{k}Y_{}", k + 1, k + 1, k + 1), &yy, &op(n, format!("Y{k}*Y{}", k + 1))?)?;
        xk = yy.bracket(&zy)?;
        case.claim(&format!("[Y_{k}Y_{}, Z_{k}Y_{}] = X_{k}", k + 1, k + 1), &xk, &x(n, k))?;
        xs[k] = xk.clone();
        if k >= 2 {
            let yk = g.h_a1.bracket(&xk)?;
            let zx = yk.bracket(&hs[k])?;
            case.claim(&format!("[Y_{k}, H^({k})] = Z_{}X_{k}", k - 1), &zx, &op(n, format!("Z{}*X{k}", k - 1))?)?;
            zz = zx.bracket(&yk)?;
            case.claim(&format!("[Z_{}X_{k}, Y_{k}] = Z_{}Z_{k}", k - 1, k - 1), &zz, &op(n, format!("Z{}*Z{k}", k - 1))?)?;
        }
    }
    case.claim("walked-back X_1 equals the pendant-derived X_1", &xs[1], &x1)?;
    for (j, xj) in xs.iter().enumerate().skip(1) {
        let yj = g.h_a1.bracket(xj)?;
        case.claim(&format!("[X_{j}, [H_A1, X_{j}]] = Z_{j}"), &xj.bracket(&yj)?, &z(n, j))?;
    }

    let graph = grid_graph(side);
    let s: BTreeSet<Vertex> = (1..=side as Vertex).chain([pb as Vertex, pc as Vertex]).collect();
    let state = zero_forcing_run(&graph, &s)?;
    case.fact(
        StepRole::Claim,
        "first row plus pendants is a zero forcing set of the grid",
        state.covers(&graph),
        Some(format!("{} of {} vertices infected", state.infected_vertices.len(), graph.vertices.len())),
    );
    let row_only: BTreeSet<Vertex> = (1..side as Vertex).collect();
    case.fact(
        StepRole::Control,
        "first row minus v_n forces the grid",
        zero_forcing_run(&graph, &row_only)?.covers(&graph),
        None,
    );
    Ok(case.finish())
}
