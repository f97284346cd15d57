//! Closed-form intersection numbers for each construction, as printed in the
//! literature. Nothing here is measured; `verify` compares against these.

use super::ExpectedValue;
use crate::error::{Error, Result};
use crate::srg::{Family, GraphSpec};
use crate::verify::SetType;

pub const SINGULAR_PERP: &str = "singular-perp";
pub const SINGULAR_PERP_COMPLEMENT: &str = "singular-perp-complement";
pub const FLAG_DIFFERENCE: &str = "flag-difference";
pub const GROUP_ORBIT: &str = "group-orbit";
pub const NONSINGULAR_POINT: &str = "nonsingular-point";
pub const DISJOINT_UNION: &str = "disjoint-union";
/// `M_k` value from the theorem statement.
pub const MK_THEOREM: &str = "group-orbit (theorem statement)";
/// `M_k` value from the summary row.
pub const MK_SUMMARY: &str = "group-orbit (summary row)";

fn pw(b: i64, e: i64) -> Result<i64> {
    if e < 0 {
        return Err(Error::UnsupportedParameters(format!("exponent {e} is negative")));
    }
    Ok(b.pow(e as u32))
}

fn value(label: &str, h1: i64, h2: i64, set_type: SetType) -> ExpectedValue {
    ExpectedValue {
        label: label.into(),
        h1,
        h2,
        set_type,
    }
}

fn sign_type(positive: bool) -> SetType {
    if positive {
        SetType::Positive
    } else {
        SetType::Negative
    }
}

/// Type of the perp sets: the orthogonality families on one class are
/// negative for eps = +1; the other two families are positive for eps = +1.
fn perp_type(spec: &GraphSpec) -> SetType {
    let e = spec.eps_value();
    match spec.family {
        Family::NoPerp | Family::NoEven3 => sign_type(e == -1),
        _ => sign_type(e == 1),
    }
}

fn no_quadratic(spec: &GraphSpec) -> Error {
    Error::WrongFamily(format!("{spec} has no totally singular subspace construction"))
}

/// `W_t^perp ∩ X`.
pub fn singular_perp(spec: &GraphSpec, t: usize) -> Result<ExpectedValue> {
    let (q, r, e, t) = params(spec, t);
    let (h1, h2) = match spec.family {
        Family::NoPerp => (
            pw(q, r - 1)? * (pw(q, r - t)? - e) / 2,
            pw(q, r - 1)? * (pw(q, r - t)? + e) / 2,
        ),
        Family::NoEven3 => (
            pw(3, r - 1)? * (pw(3, r - t - 1)? - e) / 2,
            pw(3, r - 2)? * (pw(3, r - t)? - e) / 2,
        ),
        Family::NoEven2 => (pw(2, 2 * r - t - 2)? - 1, pw(2, 2 * r - t - 2)? - e * pw(2, r - 2)?),
        Family::NoOdd => (
            pw(q, r - 1)? * (pw(q, r - t)? + e * q - e) - 1,
            pw(q, r - 1)? * (pw(q, r - t)? + e),
        ),
        Family::Nu => return Err(no_quadratic(spec)),
    };
    Ok(value(SINGULAR_PERP, h1, h2, perp_type(spec)))
}

/// `X \ (W_t^perp ∩ X)`.
pub fn singular_perp_complement(spec: &GraphSpec, t: usize) -> Result<ExpectedValue> {
    let (q, r, e, t) = params(spec, t);
    let (h1, h2) = match spec.family {
        Family::NoPerp => (
            pw(q, r - 1)? * (pw(q, r)? - pw(q, r - t)? - 2 * e) / 2,
            pw(q, 2 * r - t - 1)? * (pw(q, t)? - 1) / 2,
        ),
        Family::NoEven3 => (
            pw(3, r - 2)? * (pw(3, r)? - pw(3, r - t)? - 2 * e) / 2,
            pw(3, 2 * r - t - 2)? * (pw(3, t)? - 1) / 2,
        ),
        Family::NoEven2 => (
            pw(2, 2 * r - t - 2)? * (pw(2, t)? - 1) + e * pw(2, r - 2)? - 1,
            pw(2, 2 * r - t - 2)? * (pw(2, t)? - 1),
        ),
        Family::NoOdd => (
            pw(q, 2 * r - t - 1)? * (pw(q, t)? - 1) + e * pw(q, r - 1)? * (q - 2) - 1,
            pw(q, 2 * r - t - 1)? * (pw(q, t)? - 1),
        ),
        Family::Nu => return Err(no_quadratic(spec)),
    };
    Ok(value(SINGULAR_PERP_COMPLEMENT, h1, h2, perp_type(spec)))
}

/// `(W_t^perp ∩ X) \ (W_{t+1}^perp ∩ X)`.
pub fn flag_difference(spec: &GraphSpec, t: usize) -> Result<ExpectedValue> {
    let (q, r, e, t) = params(spec, t);
    let (h1, h2) = match spec.family {
        Family::NoPerp => (
            pw(q, r - 1)? * (pw(q, r - t)? - pw(q, r - t - 1)? - 2 * e) / 2,
            2 * pw(q, 2 * r - t - 2)?,
        ),
        Family::NoEven3 => (
            pw(3, r - 2)? * (pw(3, r - t)? - pw(3, r - t - 1)? - 2 * e) / 2,
            pw(3, 2 * r - t - 2)?,
        ),
        Family::NoEven2 => (pw(2, 2 * r - t - 3)? + e * pw(2, r - 2)? - 1, pw(2, 2 * r - t - 3)?),
        Family::NoOdd => (
            pw(q, 2 * r - t - 2)? * (q - 1) + e * pw(q, r - 1)? * (q - 2) - 1,
            pw(q, 2 * r - t - 2)? * (q - 1),
        ),
        Family::Nu => return Err(no_quadratic(spec)),
    };
    Ok(value(FLAG_DIFFERENCE, h1, h2, perp_type(spec)))
}

/// A single K-orbit in the orthogonality graph on one class, odd dimension.
pub fn k_orbit(spec: &GraphSpec) -> Result<ExpectedValue> {
    let (q, r, e, _) = params(spec, 0);
    match spec.family {
        Family::NoPerp => Ok(value(
            GROUP_ORBIT,
            (1 - e) * pw(q, r - 1)?,
            pw(q, r - 1)?,
            sign_type(e == -1),
        )),
        _ => Err(Error::WrongFamily(format!("no K-orbit value for {spec}"))),
    }
}

/// The K-orbit of `<(0, 0, 1)>` in the tangency graph, eps = +1.
pub fn k_orbit_of_z(spec: &GraphSpec) -> Result<ExpectedValue> {
    let (q, r, e, _) = params(spec, 0);
    if spec.family != Family::NoOdd || e != 1 {
        return Err(Error::WrongFamily(format!("no <(0,0,1)> orbit value for {spec}")));
    }
    Ok(value(GROUP_ORBIT, pw(q, r)? - 1, 2 * pw(q, r - 1)?, SetType::Positive))
}

/// Union of the K-orbits sharing one `x`, in the tangency graph.
pub fn k_orbit_union(spec: &GraphSpec) -> Result<ExpectedValue> {
    let (q, r, e, _) = params(spec, 0);
    if spec.family != Family::NoOdd {
        return Err(Error::WrongFamily(format!("no K-orbit union value for {spec}")));
    }
    if e == 1 {
        Ok(value(
            GROUP_ORBIT,
            (2 * q - 3) * pw(q, r - 1)? - 1,
            (q - 1) * pw(q, r - 1)?,
            SetType::Positive,
        ))
    } else {
        Ok(value(
            GROUP_ORBIT,
            pw(q, r - 1)? - 1,
            (q - 1) * pw(q, r - 1)?,
            SetType::Negative,
        ))
    }
}

/// A single L-orbit in the even-dimensional orthogonality graphs, eps = +1.
pub fn l_orbit(spec: &GraphSpec) -> Result<ExpectedValue> {
    let (_, r, e, _) = params(spec, 0);
    match (spec.family, e) {
        (Family::NoEven3, 1) => Ok(value(GROUP_ORBIT, 0, pw(3, r - 2)?, SetType::Negative)),
        (Family::NoEven2, 1) => Ok(value(
            GROUP_ORBIT,
            pw(2, r - 1)? - 1,
            pw(2, r - 2)?,
            SetType::Positive,
        )),
        _ => Err(Error::WrongFamily(format!("no L-orbit value for {spec}"))),
    }
}

/// `M_k` in the hermitian graph. The theorem statement and the summary row
/// print different `h1`; both are returned, theorem statement first.
pub fn mk(spec: &GraphSpec) -> Result<Vec<ExpectedValue>> {
    let (q, r, _, _) = params(spec, 0);
    if spec.family != Family::Nu {
        return Err(Error::WrongFamily(format!("M_k lives in nu graphs, not {spec}")));
    }
    let h2 = pw(q, 2 * r - 3)? * (q * q - 1);
    Ok(vec![
        value(MK_THEOREM, pw(q, 2 * (r - 1))? - 1, h2, SetType::Negative),
        value(MK_SUMMARY, pw(q, 2 * (r - 2))? - 1, h2, SetType::Negative),
    ])
}

/// `M ∩ X` for a nonsingular point `y` of the opposite class.
pub fn nonsingular_point(spec: &GraphSpec) -> Result<ExpectedValue> {
    let (q, r, e, _) = params(spec, 0);
    let half = (q - 1) / 2;
    match (spec.family, e) {
        (Family::NoPerp, 1) => Ok(value(
            NONSINGULAR_POINT,
            half * pw(q, r - 1)? * (pw(q, r - 1)? + 1) / 2,
            half * pw(q, r - 1)? * (pw(q, r - 1)? - 1) / 2,
            SetType::Positive,
        )),
        (Family::NoPerp, -1) => Ok(value(
            NONSINGULAR_POINT,
            half * pw(q, r - 1)? * (pw(q, r - 1)? - 1) / 2,
            half * pw(q, r - 1)? * (pw(q, r - 1)? + 1) / 2,
            SetType::Negative,
        )),
        (Family::NoEven3, 1) => Ok(value(
            NONSINGULAR_POINT,
            pw(3, r - 2)? * (pw(3, r - 1)? - 1) / 2,
            pw(3, r - 2)? * (pw(3, r - 1)? + 1) / 2,
            SetType::Negative,
        )),
        _ => Err(Error::WrongFamily(format!(
            "no nonsingular-point construction for {spec}"
        ))),
    }
}

fn params(spec: &GraphSpec, t: usize) -> (i64, i64, i64, i64) {
    (
        i64::from(spec.q),
        i64::from(spec.r),
        spec.eps_value(),
        t as i64,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, q: u32, r: u32, eps: Option<i8>) -> GraphSpec {
        GraphSpec::new(f, q, r, eps).unwrap()
    }

    #[test]
    fn perp_values() {
        let v = singular_perp(&spec(Family::NoEven2, 2, 2, Some(-1)), 1).unwrap();
        assert_eq!((v.h1, v.h2, v.set_type), (1, 3, SetType::Negative));
        let v = singular_perp(&spec(Family::NoPerp, 5, 2, Some(1)), 1).unwrap();
        assert_eq!((v.h1, v.h2, v.set_type), (10, 15, SetType::Negative));
        let v = singular_perp(&spec(Family::NoOdd, 5, 2, Some(1)), 1).unwrap();
        assert_eq!((v.h1, v.h2, v.set_type), (44, 30, SetType::Positive));
    }

    #[test]
    fn complement_values() {
        let v = singular_perp_complement(&spec(Family::NoEven2, 2, 2, Some(-1)), 1).unwrap();
        assert_eq!((v.h1, v.h2), (0, 2));
    }

    #[test]
    fn complement_rows_follow_from_perp_rows() {
        // h1' = k - h2 and h2' = k - h1
        for (s, t) in [
            (spec(Family::NoPerp, 5, 3, Some(-1)), 2),
            (spec(Family::NoEven3, 3, 3, Some(1)), 1),
            (spec(Family::NoEven2, 2, 4, Some(1)), 3),
            (spec(Family::NoOdd, 7, 2, Some(-1)), 1),
        ] {
            let k = crate::srg::expected_params(&s).unwrap().k as i64;
            let a = singular_perp(&s, t).unwrap();
            let c = singular_perp_complement(&s, t).unwrap();
            assert_eq!((c.h1, c.h2), (k - a.h2, k - a.h1), "{s} t={t}");
        }
    }

    #[test]
    fn group_orbit_values() {
        let v = k_orbit_union(&spec(Family::NoOdd, 5, 2, Some(1))).unwrap();
        assert_eq!((v.h1, v.h2), (34, 20));
        let v = k_orbit_union(&spec(Family::NoOdd, 7, 2, Some(1))).unwrap();
        assert_eq!((v.h1, v.h2), (76, 42));
        let v = k_orbit_union(&spec(Family::NoOdd, 5, 2, Some(-1))).unwrap();
        assert_eq!((v.h1, v.h2), (4, 20));
        let v = mk(&spec(Family::Nu, 2, 3, None)).unwrap();
        assert_eq!((v[0].h1, v[0].h2, v[1].h1), (15, 24, 3));
        let v = l_orbit(&spec(Family::NoEven2, 2, 3, Some(1))).unwrap();
        assert_eq!((v.h1, v.h2), (3, 2));
    }

    #[test]
    fn nonsingular_values() {
        let v = nonsingular_point(&spec(Family::NoPerp, 5, 2, Some(1))).unwrap();
        assert_eq!((v.h1, v.h2), (30, 20));
        let v = nonsingular_point(&spec(Family::NoPerp, 5, 2, Some(-1))).unwrap();
        assert_eq!((v.h1, v.h2), (20, 30));
        let v = nonsingular_point(&spec(Family::NoEven3, 3, 3, Some(1))).unwrap();
        assert_eq!((v.h1, v.h2), (12, 15));
        assert!(nonsingular_point(&spec(Family::NoOdd, 5, 2, Some(1))).is_err());
    }
}
