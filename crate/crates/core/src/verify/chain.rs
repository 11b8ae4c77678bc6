use super::{lc, need_n, strings, Case, IdentityCase};
use crate::error::{Error, Result};
use crate::hamlib::{build_chain, x, CoefficientAssignment};
use crate::pauli::{ExactOperator, Rational, Scalar};

fn evens(n: usize) -> impl Iterator<Item = usize> {
    (2..=n).step_by(2)
}

fn odds(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).step_by(2)
}

/// `(2j, 2j+1)` pairs, `j ≥ 1`.
fn ab(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..n).step_by(2).map(|i| (i, i + 1))
}

/// `(2j+1, 2j+2)` pairs, `j ≥ 0`.
fn ba(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).step_by(2).map(|i| (i, i + 1))
}

fn pairs_op(n: usize, pairs: impl Iterator<Item = (usize, usize)>, a: char, b: char) -> Result<ExactOperator> {
    strings(n, pairs.map(|(i, j)| format!("{a}{i}*{b}{j}")))
}

fn singles(n: usize, sites: impl Iterator<Item = usize>, a: char) -> Result<ExactOperator> {
    strings(n, sites.map(|i| format!("{a}{i}")))
}

struct Coeffs {
    wa: Rational,
    wb: Rational,
    gab: Rational,
    gba: Rational,
}

fn coeffs(c: &CoefficientAssignment) -> Result<Coeffs> {
    Ok(Coeffs {
        wa: c.get("wA")?.clone(),
        wb: c.get("wB")?.clone(),
        gab: c.get("gAB")?.clone(),
        gba: c.get("gBA")?.clone(),
    })
}

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

/// Separating the field part `H_Z1` and coupling part `H_Z2` of the chain.
pub fn verify_lemma_decouple(n: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    need_n(n, 3, "lemma_decouple")?;
    let h = build_chain(n, c)?;
    let k = coeffs(c)?;
    let hz1 = h.h_z1(c)?;
    let hz2 = h.h_z2(c)?;
    let mut case = Case::new("lemma_decouple").param("n", n);

    let y_even = singles(n, evens(n), 'Y')?;
    let y_odd = singles(n, odds(n), 'Y')?;
    let y_odd_from3 = singles(n, odds(n).skip(1), 'Y')?;
    let z_odd_from3 = singles(n, odds(n).skip(1), 'Z')?;
    let yz_ab = pairs_op(n, ab(n), 'Y', 'Z')?.add(&pairs_op(n, ab(n), 'Z', 'Y')?)?;
    let yz_ba = pairs_op(n, ba(n), 'Y', 'Z')?.add(&pairs_op(n, ba(n), 'Z', 'Y')?)?;
    let yy_ab = pairs_op(n, ab(n), 'Y', 'Y')?;
    let yy_ba = pairs_op(n, ba(n), 'Y', 'Y')?;

    let hyz = h.h_z.bracket(&h.h_x)?;
    let printed = lc(n, &[(k.wa.clone(), &y_even), (k.wb.clone(), &y_odd_from3), (k.gab.clone(), &yz_ab), (k.gba.clone(), &yz_ba)])?;
    case.display("H_YZ = [H_Z, H_X], odd-field sum from j=1 as printed", &hyz, &printed)?;
    let full = lc(n, &[(k.wa.clone(), &y_even), (k.wb.clone(), &y_odd), (k.gab.clone(), &yz_ab), (k.gba.clone(), &yz_ba)])?;
    case.claim("H_YZ = [H_Z, H_X]", &hyz, &full)?;

    let b = hyz.bracket(&h.h_x)?;
    let yy_zz_ab = yy_ab.sub(&h.h_ab)?;
    let yy_zz_ba = yy_ba.sub(&h.h_ba)?;
    let printed = lc(
        n,
        &[
            (k.wa.neg(), &h.h_a),
            (k.wb.neg(), &z_odd_from3),
            (k.gab.mul(&r(2)), &yy_zz_ab),
            (k.gba.mul(&r(2)), &yy_zz_ba),
        ],
    )?;
    case.display("[H_YZ, H_X], odd-field sum from j=1 as printed", &b, &printed)?;
    let full = lc(
        n,
        &[
            (k.wa.neg(), &h.h_a),
            (k.wb.neg(), &h.h_b),
            (k.gab.mul(&r(2)), &yy_zz_ab),
            (k.gba.mul(&r(2)), &yy_zz_ba),
        ],
    )?;
    case.claim("[H_YZ, H_X]", &b, &full)?;

    let h1 = b.add(&h.h_z)?;
    let want = lc(
        n,
        &[
            (k.gab.mul(&r(2)), &yy_ab),
            (k.gba.mul(&r(2)), &yy_ba),
            (k.gab.neg(), &h.h_ab),
            (k.gba.neg(), &h.h_ba),
        ],
    )?;
    case.claim("H_(1) = [H_YZ, H_X] + H_Z", &h1, &want)?;

    let h2 = h1.bracket(&h.h_x)?;
    let want = lc(n, &[(k.gab.mul(&r(-3)), &yz_ab), (k.gba.mul(&r(-3)), &yz_ba)])?;
    case.claim("H_(2) = [H_(1), H_X]", &h2, &want)?;

    let third = Rational::new(1, 3);
    let lhs = hyz.add(&h2.scale(&third))?.bracket(&h.h_x)?;
    case.display("[H_YZ + H_(2)/3, H_X] = H_Z2 as printed", &lhs, &hz2)?;
    case.claim("[H_YZ + H_(2)/3, H_X] = -H_Z1", &lhs, &hz1.neg())?;
    case.claim("H_Z + [H_YZ + H_(2)/3, H_X] = H_Z2", &h.h_z.add(&lhs)?, &hz2)?;
    case.control("[H_YZ + H_(2)/3, H_X] = +H_Z1", &lhs, &hz1)?;
    Ok(case.finish())
}

/// Separating the even and odd mixer halves.
pub fn verify_even_odd(n: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    need_n(n, 2, "even_odd")?;
    let h = build_chain(n, c)?;
    let k = coeffs(c)?;
    let case = Case::new("even_odd").param("n", n);
    let (a2, b2) = (k.wa.square(), k.wb.square());
    if a2 == b2 {
        return Ok(case.skip("hypothesis wA^2 != wB^2 fails"));
    }
    let mut case = case;
    let hz1 = h.h_z1(c)?;
    let hy1 = hz1.bracket(&h.h_x)?;
    let y_even = singles(n, evens(n), 'Y')?;
    let y_odd = singles(n, odds(n), 'Y')?;
    case.claim(
        "H_Y1 = [H_Z1, H_X]",
        &hy1,
        &lc(n, &[(k.wa.clone(), &y_even), (k.wb.clone(), &y_odd)])?,
    )?;
    let weighted = lc(n, &[(a2.clone(), &h.x_even), (b2.clone(), &h.x_odd)])?;
    let b = hz1.bracket(&hy1)?;
    case.display("[H_Z1, H_Y1] = wA^2 X_even + wB^2 X_odd as printed", &b, &weighted)?;
    let b = hy1.bracket(&hz1)?;
    case.claim("[H_Y1, H_Z1] = wA^2 X_even + wB^2 X_odd", &b, &weighted)?;
    let printed_lhs = lc(n, &[(a2.clone(), &h.h_x), (a2.neg(), &h.x_even), (b2.neg(), &h.x_odd)])?;
    let diff = a2.sub(&b2);
    case.claim("wA^2 H_X - wA^2 X_even - wB^2 X_odd = (wA^2 - wB^2) X_odd", &printed_lhs, &h.x_odd.scale(&diff))?;
    let derived = lc(n, &[(a2.clone(), &h.h_x), (Rational::one().neg(), &b)])?.scale(&diff.recip());
    case.claim("X_odd = (wA^2 H_X - [H_Y1, H_Z1]) / (wA^2 - wB^2)", &derived, &h.x_odd)?;
    case.claim("X_even = H_X - X_odd", &h.h_x.sub(&derived)?, &h.x_even)?;
    let wrong = lc(n, &[(b2.clone(), &h.h_x), (Rational::one().neg(), &b)])?.scale(&diff.recip());
    case.control("X_odd = (wB^2 H_X - [H_Y1, H_Z1]) / (wA^2 - wB^2)", &wrong, &h.x_odd)?;
    Ok(case.finish())
}

fn separation_gate(k: &Coeffs) -> Option<&'static str> {
    let (a2, b2) = (k.gab.square(), k.gba.square());
    if k.gab.is_zero() {
        Some("hypothesis gAB != 0 fails")
    } else if k.gba.is_zero() {
        Some("hypothesis gBA != 0 fails")
    } else if a2 == b2 {
        Some("hypothesis gAB^2 != gBA^2 fails")
    } else if a2 == b2.mul(&r(4)) {
        Some("hypothesis gamma = gAB^2 - 4 gBA^2 != 0 fails")
    } else {
        None
    }
}

/// Separating `H_AB` and `H_BA` from `H_Z2` and the mixer halves.
pub fn verify_sep_generators(n: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    need_n(n, 3, "sep_generators")?;
    let k = coeffs(c)?;
    let branch = if n % 2 == 1 { "odd" } else { "even" };
    let case = Case::new("sep_generators").param("n", n).param("branch", branch);
    if let Some(why) = separation_gate(&k) {
        return Ok(case.skip(why));
    }
    if n % 2 == 1 {
        sep_odd(n, c, &k, case)
    } else {
        sep_even(n, c, &k, case)
    }
}

fn sep_odd(n: usize, c: &CoefficientAssignment, k: &Coeffs, mut case: Case) -> Result<IdentityCase> {
    let h = build_chain(n, c)?;
    let hz2 = h.h_z2(c)?;
    let (gab, gba) = (&k.gab, &k.gba);
    let m = (n - 1) / 2;

    let e = hz2.bracket(&h.x_even)?;
    let want = lc(
        n,
        &[
            (gab.clone(), &strings(n, (1..=m).map(|j| format!("Y{}*Z{}", 2 * j, 2 * j + 1)))?),
            (gba.clone(), &strings(n, (0..m).map(|j| format!("Z{}*Y{}", 2 * j + 1, 2 * j + 2)))?),
        ],
    )?;
    case.claim("H_YZ^e = [H_Z2, X_even]", &e, &want)?;

    let b = e.bracket(&hz2)?;
    let zxz = strings(n, (1..=m).map(|j| format!("Z{}*X{}*Z{}", 2 * j - 1, 2 * j, 2 * j + 1)))?;
    let x_shift = strings(n, (0..m).map(|j| format!("X{}", 2 * j + 2)))?;
    let want = lc(
        n,
        &[
            (gab.square(), &h.x_even),
            (gab.mul(gba).mul(&r(2)), &zxz),
            (gba.square(), &x_shift),
        ],
    )?;
    case.claim("[H_YZ^e, H_Z2]", &b, &want)?;

    let h_zxz = b
        .sub(&h.x_even.scale(&gab.square().add(&gba.square())))?
        .scale(&gab.mul(gba).mul(&r(2)).recip());
    case.claim("H_ZXZ from [H_YZ^e, H_Z2] minus the X_even terms", &h_zxz, &zxz)?;

    let b = e.bracket(&h_zxz)?;
    let printed = lc(
        n,
        &[
            (gab.clone(), &strings(n, (1..=m).map(|j| format!("Z{}*X{}", 2 * j - 1, 2 * j)))?),
            (gba.clone(), &strings(n, (1..=m).map(|j| format!("X{}*Z{}", 2 * j, 2 * j + 1)))?),
        ],
    )?;
    case.display("[H_YZ^e, H_ZXZ] = gAB sum Z X + gBA sum X Z as printed", &b, &printed)?;
    let corrected = lc(n, &[(gab.neg(), &h.h_ba), (gba.neg(), &h.h_ab)])?;
    case.claim("[H_YZ^e, H_ZXZ] = -(gAB H_BA + gBA H_AB)", &b, &corrected)?;
    let hzp = b.neg();

    let gap = gab.square().sub(&gba.square());
    let lhs_printed = lc(n, &[(gab.clone(), &printed), (gba.neg(), &hz2)])?;
    case.display(
        "gAB H'_Z2 - gBA H_Z2 = (gAB^2 - gBA^2) sum Z_{2j+1}Z_{2j+2} with H'_Z2 as printed",
        &lhs_printed,
        &h.h_ba.scale(&gap),
    )?;
    let lhs = lc(n, &[(gab.clone(), &hzp), (gba.neg(), &hz2)])?;
    case.claim("gAB H'_Z2 - gBA H_Z2 = (gAB^2 - gBA^2) H_BA", &lhs, &h.h_ba.scale(&gap))?;
    let hba = lhs.scale(&gap.recip());
    let hab = hz2.sub(&hba.scale(gba))?.scale(&gab.recip());
    case.claim("H_BA reproduced", &hba, &h.h_ba)?;
    case.claim("H_AB reproduced", &hab, &h.h_ab)?;
    let wrong = lc(n, &[(gba.clone(), &hzp), (gab.neg(), &hz2)])?;
    case.control("gBA H'_Z2 - gAB H_Z2 = (gAB^2 - gBA^2) H_BA", &wrong, &h.h_ba.scale(&gap))?;
    Ok(case.finish())
}

fn sep_even(n: usize, c: &CoefficientAssignment, k: &Coeffs, mut case: Case) -> Result<IdentityCase> {
    let h = build_chain(n, c)?;
    let hz2 = h.h_z2(c)?;
    let (gab, gba) = (&k.gab, &k.gba);
    let half = n / 2;
    let two_gg = gab.mul(gba).mul(&r(2));
    let sq_sum = gab.square().add(&gba.square());

    // Odd-site sweep.
    let oo = hz2.bracket(&h.x_odd)?;
    let want = lc(
        n,
        &[
            (gab.clone(), &strings(n, (1..half).map(|j| format!("Z{}*Y{}", 2 * j, 2 * j + 1)))?),
            (gba.clone(), &strings(n, (0..half).map(|j| format!("Y{}*Z{}", 2 * j + 1, 2 * j + 2)))?),
        ],
    )?;
    case.claim("H_YZ^oo = [H_Z2, X_odd]", &oo, &want)?;
    let b = oo.bracket(&hz2)?;
    let zxz_odd = strings(n, (1..half).map(|j| format!("Z{}*X{}*Z{}", 2 * j, 2 * j + 1, 2 * j + 2)))?;
    let want = lc(
        n,
        &[
            (gab.square(), &strings(n, (1..half).map(|j| format!("X{}", 2 * j + 1)))?),
            (two_gg.clone(), &zxz_odd),
            (gba.square(), &h.x_odd),
        ],
    )?;
    case.claim("[H_YZ^oo, H_Z2]", &b, &want)?;
    let k1 = b.sub(&h.x_odd.scale(&sq_sum))?.scale(&gab.recip());
    let k1_want = lc(n, &[(gab.neg(), &x(n, 1)), (gba.mul(&r(2)), &zxz_odd)])?;
    case.claim("H_ZZZ1 = -gAB X_1 + 2 gBA sum Z X Z from [H_YZ^oo, H_Z2]", &k1, &k1_want)?;
    let zzz_odd = strings(n, (1..half).map(|j| format!("Z{}*Z{}*Z{}", 2 * j, 2 * j + 1, 2 * j + 2)))?;
    let z1 = strings(n, ["Z1".to_string()])?;
    let printed_zzz1 = lc(n, &[(gab.neg(), &z1), (gba.mul(&r(2)), &zzz_odd)])?;
    case.display("H_ZZZ1 = -gAB Z_1 + 2 gBA sum Z Z Z as printed", &k1, &printed_zzz1)?;

    let ba_tail = strings(n, (1..half).map(|j| format!("Z{}*Z{}", 2 * j + 1, 2 * j + 2)))?;
    let z1z2 = strings(n, ["Z1*Z2".to_string()])?;
    let h12 = lc(n, &[(gab.mul(&r(2)), &ba_tail), (gab.neg(), &z1z2), (gba.mul(&r(2)), &h.h_ab)])?;
    let b = oo.bracket(&k1)?;
    case.display("[H_YZ^oo, H_ZZZ1] = H_12 as printed", &b, &h12)?;
    case.claim("[H_YZ^oo, H_ZZZ1] = -gBA H_12", &b, &h12.scale(&gba.neg()))?;
    let h12_derived = b.scale(&gba.neg().recip());

    // Even-site sweep.
    let ee = hz2.bracket(&h.x_even)?;
    let want = lc(
        n,
        &[
            (gab.clone(), &strings(n, (1..half).map(|j| format!("Y{}*Z{}", 2 * j, 2 * j + 1)))?),
            (gba.clone(), &strings(n, (0..half).map(|j| format!("Z{}*Y{}", 2 * j + 1, 2 * j + 2)))?),
        ],
    )?;
    case.claim("H_YZ^ee = [H_Z2, X_even]", &ee, &want)?;
    let b = ee.bracket(&hz2)?;
    let zxz_even = strings(n, (1..half).map(|j| format!("Z{}*X{}*Z{}", 2 * j - 1, 2 * j, 2 * j + 1)))?;
    let want = lc(
        n,
        &[
            (gab.square(), &strings(n, (1..half).map(|j| format!("X{}", 2 * j)))?),
            (two_gg.clone(), &zxz_even),
            (gba.square(), &h.x_even),
        ],
    )?;
    case.claim("[H_YZ^ee, H_Z2]", &b, &want)?;
    let kn = b.sub(&h.x_even.scale(&sq_sum))?.scale(&gab.recip());
    let kn_want = lc(n, &[(gab.neg(), &x(n, n)), (gba.mul(&r(2)), &zxz_even)])?;
    case.claim("H_ZZZn = -gAB X_n + 2 gBA sum Z X Z from [H_YZ^ee, H_Z2]", &kn, &kn_want)?;
    let zn = strings(n, [format!("Z{n}")])?;
    let printed_zzzn = lc(n, &[(gab.neg(), &zn), (gba.mul(&r(2)), &zxz_even)])?;
    case.display("H_ZZZn = -gAB Z_n + 2 gBA sum Z X Z as printed", &kn, &printed_zzzn)?;

    let b = ee.bracket(&kn)?;
    let printed = lc(
        n,
        &[
            (two_gg.clone(), &strings(n, (1..half).map(|j| format!("Z{}*X{}", 2 * j - 1, 2 * j)))?),
            (gab.mul(gba).neg(), &strings(n, [format!("Z{}*X{}", n - 1, n)])?),
            (gba.square().mul(&r(2)), &strings(n, (1..half).map(|j| format!("X{}*Z{}", 2 * j, 2 * j + 1)))?),
        ],
    )?;
    case.display("[H_YZ, H_ZZZn] as printed", &b, &printed)?;
    let ba_head = strings(n, (1..half).map(|j| format!("Z{}*Z{}", 2 * j - 1, 2 * j)))?;
    let zz_last = strings(n, [format!("Z{}*Z{}", n - 1, n)])?;
    let hn = lc(n, &[(gab.mul(&r(2)), &ba_head), (gab.neg(), &zz_last), (gba.mul(&r(2)), &h.h_ab)])?;
    case.claim("[H_YZ^ee, H_ZZZn] = -gBA H_{n-1,n}", &b, &hn.scale(&gba.neg()))?;
    let zx_last = strings(n, [format!("Z{}*X{}", n - 1, n)])?;
    let printed_hn = lc(n, &[(gab.mul(&r(2)), &ba_head), (gab.neg(), &zx_last), (gba.mul(&r(2)), &h.h_ab)])?;
    case.display("H_{n-1,n} as printed (Z_{n-1} X_n term)", &hn, &printed_hn)?;
    let hn_derived = b.scale(&gba.neg().recip());

    // Linear elimination.
    let mid = strings(n, (1..half.saturating_sub(1)).map(|j| format!("Z{}*Z{}", 2 * j + 1, 2 * j + 2)))?;
    let h2 = h12_derived.add(&hn_derived)?;
    let ends = z1z2.add(&zz_last)?;
    let want = lc(n, &[(gab.clone(), &ends), (gab.mul(&r(4)), &mid), (gba.mul(&r(4)), &h.h_ab)])?;
    case.claim("H_(2) = H_12 + H_{n-1,n}", &h2, &want)?;

    let gamma = gab.square().sub(&gba.square().mul(&r(4)));
    let lhs = lc(n, &[(gab.clone(), &h2), (gba.mul(&r(-4)), &hz2)])?;
    let want = lc(n, &[(gamma.clone(), &h.h_ba), (gab.square().mul(&r(3)), &mid)])?;
    case.claim("gAB H_(2) - 4 gBA H_Z2 = gamma H_BA + 3 gAB^2 sum_mid", &lhs, &want)?;
    let h3 = lhs.scale(&gamma.recip());
    let c_mid = gab.square().mul(&r(3)).div(&gamma);
    case.claim(
        "H_(3) = H_BA + 3 gAB^2/gamma sum_mid",
        &h3,
        &lc(n, &[(Rational::one(), &h.h_ba), (c_mid.clone(), &mid)])?,
    )?;

    let t2 = gab.mul(gba).mul(&r(3)).div(&gamma);
    let printed_lhs = hz2.sub(&h3.scale(gab))?;
    let rhs = lc(n, &[(gab.clone(), &h.h_ab), (gab.mul(&t2).neg(), &mid)])?;
    case.display("H_Z2 - gAB H_(3) as printed", &printed_lhs, &rhs)?;
    let lhs = hz2.sub(&h3.scale(gba))?;
    case.claim("H_Z2 - gBA H_(3) = gAB H_AB - 3 gAB^2 gBA/gamma sum_mid", &lhs, &rhs)?;
    let h_star = lhs.scale(&gab.recip());
    case.claim(
        "H_* = H_AB - g2 sum_mid",
        &h_star,
        &lc(n, &[(Rational::one(), &h.h_ab), (t2.neg(), &mid)])?,
    )?;

    let lhs = h2.sub(&h3.scale(gab))?;
    let c_box = gab.mul(&r(3)).sub(&gab.square().mul(gab).mul(&r(3)).div(&gamma));
    case.claim(
        "H_(2) - gAB H_(3) = 4 gBA H_AB + (3 gAB - 3 gAB^3/gamma) sum_mid",
        &lhs,
        &lc(n, &[(gba.mul(&r(4)), &h.h_ab), (c_box.clone(), &mid)])?,
    )?;
    let t1 = c_box.div(&gba.mul(&r(4)));
    let h_box = lhs.scale(&gba.mul(&r(4)).recip());
    case.claim(
        "H_box = H_AB + g1 sum_mid",
        &h_box,
        &lc(n, &[(Rational::one(), &h.h_ab), (t1.clone(), &mid)])?,
    )?;

    let h_circ = h_box.sub(&h_star)?;
    let tail = strings(n, (1..half).map(|j| format!("Z{}*Z{}", 2 * j + 1, 2 * j + 2)))?;
    case.display("H_circ = (g1 - g2) sum_{j=1}^{n/2-1} Z_{2j+1}Z_{2j+2} as printed", &h_circ, &tail.scale(&t1.sub(&t2)))?;
    case.claim("H_circ = (g1 + g2) sum_mid", &h_circ, &mid.scale(&t1.add(&t2)))?;
    let degenerate = t1.add(&t2).is_zero();
    case.fact(
        super::StepRole::Display,
        "g1 + g2 = 0 identically, so H_circ vanishes",
        degenerate,
        Some(format!("g1 + g2 = {}", t1.add(&t2))),
    );
    let final_ab = if t1 == t2 {
        h_box.clone()
    } else {
        h_box.sub(&h_circ.scale(&t1.div(&t1.sub(&t2))))?
    };
    case.display(
        "H_box - g1/(g1 - g2) H_circ = H_AB / gAB as printed",
        &final_ab,
        &h.h_ab.scale(&gab.recip()),
    )?;
    case.claim("H_box - g1/(g1 - g2) H_circ reproduces H_AB", &final_ab, &h.h_ab)?;
    let hba = hz2.sub(&final_ab.scale(gab))?.scale(&gba.recip());
    case.claim("H_BA = (H_Z2 - gAB H_AB) / gBA reproduced", &hba, &h.h_ba)?;
    let wrong = lc(n, &[(gab.clone(), &h2), (gba.mul(&r(-2)), &hz2)])?;
    case.control(
        "gAB H_(2) - 2 gBA H_Z2 = gamma H_BA + 3 gAB^2 sum_mid",
        &wrong,
        &lc(n, &[(gamma, &h.h_ba), (gab.square().mul(&r(3)), &mid)])?,
    )?;
    Ok(case.finish())
}

/// The commutator ladder producing every single-site `X_j` on an odd chain.
pub fn verify_separation_x(n: usize, k: usize, c: &CoefficientAssignment) -> Result<IdentityCase> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "separation_X assumes n is odd, got n = {n}"
        )));
    }
    need_n(n, 3, "separation_X")?;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    let h = build_chain(n, c)?;
    let mut case = Case::new("separation_X").param("n", n).param("k", k);
    let yz = pairs_op(n, ab(n), 'Z', 'Y')?.add(&pairs_op(n, ab(n), 'Y', 'Z')?)?;
    let b = h.h_ab.bracket(&h.h_x)?;
    case.claim("[H_AB, H_X] = (2i) H_YZ|AB", &b, &yz)?;
    let b = yz.bracket(&h.h_ab)?;
    let rest = singles(n, 2..=n, 'X')?;
    case.claim("[H_YZ|AB, H_AB] = (2i)(sum X_{2j+1} + sum X_{2j})", &b, &rest)?;
    let mut prev = h.h_x.sub(&b)?;
    case.claim("H_X - sum X_{2j+1} - sum X_{2j} = X_1", &prev, &x(n, 1))?;

    for j in 2..=k {
        let (pair_op, mixer, label, mlabel) = if j % 2 == 0 {
            (&h.h_ba, &h.x_even, "H_BA", "H_XA")
        } else {
            (&h.h_ab, &h.x_odd, "H_AB", "H_XB")
        };
        let yz = strings(n, [format!("Y{}*Z{}", j - 1, j)])?;
        let zz = strings(n, [format!("Z{}*Z{}", j - 1, j)])?;
        let zy = strings(n, [format!("Z{}*Y{}", j - 1, j)])?;
        let xj = x(n, j);
        let xp = x(n, j - 1);
        case.claim(&format!("j={j}: [{label}, X_{}] = (2i) Y_{}Z_{j}", j - 1, j - 1), &pair_op.bracket(&xp)?, &yz)?;
        case.claim(&format!("j={j}: [Y_{}Z_{j}, X_{}] = (-2i) Z_{}Z_{j}", j - 1, j - 1, j - 1), &yz.bracket(&xp)?, &zz.neg())?;
        case.claim(&format!("j={j}: [{mlabel}, Z_{}Z_{j}] = (-2i) Z_{}Y_{j}", j - 1, j - 1), &mixer.bracket(&zz)?, &zy.neg())?;
        case.claim(&format!("j={j}: [{label}, Z_{}Y_{j}] = (-2i) X_{j}", j - 1), &pair_op.bracket(&zy)?, &xj.neg())?;
        // Chain the derived operators, signs included.
        let s1 = pair_op.bracket(&prev)?;
        let s2 = s1.bracket(&prev)?.neg();
        let s3 = mixer.bracket(&s2)?.neg();
        let next = pair_op.bracket(&s3)?.neg();
        case.claim(&format!("j={j}: ladder from derived X_{} yields X_{j}", j - 1), &next, &xj)?;
        prev = next;
    }
    if k >= 2 {
        let (wrong_op, label) = if k.is_multiple_of(2) { (&h.h_ab, "H_AB") } else { (&h.h_ba, "H_BA") };
        let yz = strings(n, [format!("Y{}*Z{}", k - 1, k)])?;
        case.control(&format!("[{label}, X_{}] = Y_{}Z_{k} (wrong parity)", k - 1, k - 1), &wrong_op.bracket(&x(n, k - 1))?, &yz)?;
    } else {
        case.control("X_1 = H_X", &prev, &h.h_x)?;
    }
    Ok(case.finish())
}
