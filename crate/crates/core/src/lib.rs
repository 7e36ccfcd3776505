//! Motivic zeta functions of degenerating Calabi-Yau and abelian varieties,
//! computed exactly from combinatorial model data, plus brute-force checks of
//! the p-adic Poincaré series side.

pub mod cli;
pub mod grothendieck;
pub mod igusa;
pub mod kodaira;
pub mod neron;
pub mod poly;
pub mod sncd;
pub mod verify;
pub mod zeta;

use num_rational::BigRational;

pub(crate) fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}
