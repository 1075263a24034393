use crate::arith::{Rat, RatFun};
use crate::degree::Degree;
use crate::error::{invalid, Error, Result};
use crate::series::DeformedSeries;

/// The unique `w = b₀ + b₋₁T⁻¹ + ⋯` commuting with `z`, for `deg z = 0`
/// and `δ_{i₀}(a₀) ≠ 0`, where `a₀` is the constant term of `z` and `i₀`
/// the top nonzero δ-index.
///
/// Each `b_s` solves `−s·δ_{i₀}(a₀)·b_s + d_s = 0`, with `d_s` the
/// coefficient of `T^{s+i₀−1}` in `[z, b₀ + ⋯ + b_{s+1}T^{s+1}]`. The result
/// is exact above `max(floor, floor(z) − i₀ + 1)`.
pub fn centralizer_solve(z: &DeformedSeries, b0: &RatFun, floor: i64) -> Result<DeformedSeries> {
    let spec = z.spec();
    let a0 = match (z.deg(), z.leading()) {
        (Degree::Finite(0), Some((0, a0))) => a0.clone(),
        (deg, _) => return Err(Error::NotSolvable(format!("deg z = {deg}, expected 0"))),
    };
    let z_floor = z.floor().expect("nonzero series has a floor");
    let i0 = spec.top_delta().ok_or_else(|| Error::NotSolvable("every δ_i vanishes".into()))?;
    let delta_a0 = spec.delta_apply(i0, &a0);
    if delta_a0.is_zero() {
        return Err(Error::NotSolvable(format!("δ_{i0}(a₀) = 0 for a₀ = {}", a0.render("alpha"))));
    }
    // the commutator must be exact down to degree floor + i₀ for the last
    // coefficient to be determined
    let floor = floor.max(z_floor - i0 + 1);
    if floor >= 0 {
        return Ok(DeformedSeries::constant(spec, b0.clone(), floor));
    }
    let work = floor + i0 - 1;
    let mut w = DeformedSeries::constant(spec, b0.clone(), work);
    let mut comm = z.commutator(&w)?;
    for s in (floor + 1..0).rev() {
        let d_s = comm.coeff(s + i0 - 1);
        if d_s.is_zero() {
            continue;
        }
        let b_s = d_s.checked_div(&delta_a0.scale(&Rat::from_integer(s.into())))?;
        let term = DeformedSeries::monomial(spec, b_s, s, work);
        comm = comm.add(&z.commutator(&term)?)?;
        w = w.add(&term)?;
    }
    debug_assert!(comm.coeffs().range(floor + i0..).next().is_none());
    Ok(w.truncate(floor))
}

/// The leading-term condition `n·a_n·δ_{i₀}(b_m) − m·b_m·δ_{i₀}(a_n) = 0`
/// necessary for `[z, w] = 0`, where `a_n T^n` and `b_m T^m` are the leading
/// terms.
pub fn case2_leading_constraint(z: &DeformedSeries, w: &DeformedSeries) -> Result<bool> {
    let (Some((n, a_n)), Some((m, b_m))) = (z.leading(), w.leading()) else {
        return invalid("both series need a resolved leading term");
    };
    if n == 0 {
        return invalid("deg z must be nonzero");
    }
    let spec = z.spec();
    let Some(i0) = spec.top_delta() else {
        return Ok(true);
    };
    let lhs = (a_n * &spec.delta_apply(i0, b_m)).scale(&Rat::from_integer(n.into()));
    let rhs = (b_m * &spec.delta_apply(i0, a_n)).scale(&Rat::from_integer(m.into()));
    Ok((&lhs - &rhs).is_zero())
}
