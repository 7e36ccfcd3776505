//! Néron data rederived from Weierstrass models. Base change of ramification
//! index d multiplies v(Δ) by d; each rescaling (x, y) -> (u^2 x, u^3 y)
//! removes 12 from v(Δ) and adds 1 to the order of the Néron differential.
//! The reduction type after base change is read off v(Δ) mod 12.

use mzeta::grothendieck::GrothElem;
use mzeta::kodaira::{in_neron, instar_neron, DataSource, KodairaType};
use mzeta::neron::NeronData;

const D_MAX: u64 = 60;

/// (type, v(Δ)) of the minimal model, for the potentially good types.
fn discriminant_valuation(t: KodairaType) -> Option<u64> {
    Some(match t {
        KodairaType::I0 => 0,
        KodairaType::II => 2,
        KodairaType::III => 3,
        KodairaType::IV => 4,
        KodairaType::I0star => 6,
        KodairaType::IVstar => 8,
        KodairaType::IIIstar => 9,
        KodairaType::IIstar => 10,
        _ => return None,
    })
}

/// Component group order of the additive type with v(Δ) = v < 12.
fn additive_phi(v: u64) -> Option<i64> {
    match v {
        2 | 10 => Some(1),
        3 | 9 => Some(2),
        4 | 8 => Some(3),
        6 => Some(4),
        _ => None,
    }
}

/// phi L^{u + ord} (L - 1)^t [B]
fn term(phi: i64, u: i64, ord: i64, toric: bool, good: bool) -> GrothElem {
    let mut x = if good { GrothElem::sym("b") } else { GrothElem::one() };
    if toric {
        x = &x * &GrothElem::gm();
    }
    x.shift_l(u + ord).scale(&phi.into())
}

fn potentially_good(v: u64, d: u64) -> GrothElem {
    let total = v * d;
    let ord = (total / 12) as i64;
    match total % 12 {
        0 => term(1, 0, ord, false, true),
        r => term(additive_phi(r).expect("v(Δ) mod 12 is an additive type"), 1, ord, false, false),
    }
}

/// I_n: base change gives I_{nd}, no rescaling.
fn multiplicative(n: u64, d: u64) -> GrothElem {
    term((n * d) as i64, 0, 0, true, false)
}

/// I_n^*: v(Δ) = n + 6. Even d untwists to I_{nd} after d/2 rescalings; odd d
/// stays I_{nd}^* after (d - 1)/2.
fn multiplicative_star(n: u64, d: u64) -> GrothElem {
    let total = (n + 6) * d;
    if d.is_multiple_of(2) {
        assert_eq!((total - n * d) % 12, 0);
        term((n * d) as i64, 0, ((total - n * d) / 12) as i64, true, false)
    } else {
        assert_eq!((total - n * d - 6) % 12, 0);
        term(4, 1, ((total - n * d - 6) / 12) as i64, false, false)
    }
}

fn check(label: &str, nd: &NeronData, oracle: impl Fn(u64) -> GrothElem) {
    let series = nd.assemble_zeta().expect("assembles").series_expand(D_MAX as usize);
    for d in 1..=D_MAX {
        let want = oracle(d);
        assert_eq!(nd.coefficient(d), want, "{label}: coefficient at d = {d}");
        assert_eq!(series[(d - 1) as usize], want, "{label}: closed form at d = {d}");
    }
}

#[test]
fn potentially_good_types_match_weierstrass_scaling() {
    let src = DataSource::Bundled;
    for t in KodairaType::bundled() {
        if let Some(v) = discriminant_valuation(t) {
            let nd = t.neron_data(&src).unwrap();
            check(&t.to_string(), &nd, |d| potentially_good(v, d));
        }
    }
}

#[test]
fn bundled_multiplicative_types_match() {
    let src = DataSource::Bundled;
    let nd = KodairaType::In(3).neron_data(&src).unwrap();
    check("I3", &nd, |d| multiplicative(3, d));
    let nd = KodairaType::Instar(2).neron_data(&src).unwrap();
    check("I2*", &nd, |d| multiplicative_star(2, d));
}

#[test]
fn generated_multiplicative_types_match() {
    for n in 1..=8u32 {
        check(&format!("I{n}"), &in_neron(n), |d| multiplicative(n.into(), d));
        check(&format!("I{n}*"), &instar_neron(n), |d| multiplicative_star(n.into(), d));
    }
}

#[test]
fn slope_is_discriminant_over_twelve() {
    let src = DataSource::Bundled;
    for t in KodairaType::bundled() {
        if let Some(v) = discriminant_valuation(t) {
            let nd = t.neron_data(&src).unwrap();
            let c = nd.c();
            assert_eq!(c * num_bigint::BigInt::from(12), num_rational::BigRational::from_integer(v.into()), "{t}");
        }
    }
}
