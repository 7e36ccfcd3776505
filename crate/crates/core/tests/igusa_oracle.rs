//! Solution counts against exhaustive enumeration written out by hand, and the
//! monomial zeta function against the valuation measure of Z_p.

use mzeta::igusa::{self, IntPoly, DEFAULT_BUDGET};
use num_bigint::BigInt;
use num_rational::BigRational;

fn brute(n_vars: usize, f: impl Fn(&[i128]) -> i128, p: i128, m: u32) -> u64 {
    let q = p.pow(m + 1);
    let mut x = vec![0i128; n_vars];
    let mut count = 0;
    loop {
        if f(&x).rem_euclid(q) == 0 {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n_vars {
                return count;
            }
            x[i] += 1;
            if x[i] < q {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn counts(text: &str, p: u64, max_m: u32) -> Vec<BigInt> {
    let f: IntPoly = text.parse().unwrap();
    igusa::poincare_truncated(&f, p, max_m, DEFAULT_BUDGET).unwrap().values
}

#[test]
fn counts_match_enumeration() {
    let cases: Vec<(&str, usize, Box<dyn Fn(&[i128]) -> i128>, u64, u32)> = vec![
        ("x^2 - y^3", 2, Box::new(|v| v[0] * v[0] - v[1].pow(3)), 2, 4),
        ("x^2 - y^3", 2, Box::new(|v| v[0] * v[0] - v[1].pow(3)), 3, 3),
        ("x*y", 2, Box::new(|v| v[0] * v[1]), 5, 2),
        ("x^2 + y^2 + z^2", 3, Box::new(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2]), 2, 2),
        ("x^3 - 7", 1, Box::new(|v| v[0].pow(3) - 7), 3, 5),
        ("x^2*y + 2*y^3", 2, Box::new(|v| v[0] * v[0] * v[1] + 2 * v[1].pow(3)), 3, 2),
    ];
    for (text, n, f, p, max_m) in cases {
        let got = counts(text, p, max_m);
        for m in 0..=max_m {
            let want = brute(n, &f, p as i128, m);
            assert_eq!(got[m as usize], BigInt::from(want), "{text} p = {p} m = {m}");
        }
    }
}

#[test]
fn monomial_counts_follow_valuation() {
    // #{x mod p^n : n <= k v(x)} = p^{n - ceil(n/k)}
    for p in [2u64, 3, 5, 7] {
        for k in 1..=4u32 {
            let got = counts(&format!("x^{k}"), p, 8);
            for m in 0..=8u32 {
                let n = m + 1;
                let want = BigInt::from(p).pow(n - n.div_ceil(k));
                assert_eq!(got[m as usize], want, "x^{k} p = {p} m = {m}");
            }
        }
    }
}

#[test]
fn monomial_zeta_is_valuation_measure() {
    // mu(v(x) = j) = (1 - 1/p) p^{-j}, contributing to u^{kj}
    for p in [2u64, 3, 5] {
        for k in 1..=4u32 {
            let z = igusa::zeta_monomial(k, p).unwrap();
            let series = z.series(24);
            for (i, c) in series.iter().enumerate() {
                let want = if (i as u32).is_multiple_of(k) {
                    let j = i as u32 / k;
                    BigRational::new(BigInt::from(p - 1), BigInt::from(p).pow(j + 1))
                } else {
                    BigRational::from_integer(0.into())
                };
                assert_eq!(c, &want, "k = {k} p = {p} u^{i}");
            }
        }
    }
}

#[test]
fn frozen_values() {
    let x2: Vec<BigInt> = [1, 3, 3, 9, 9, 27, 27, 81, 81, 243, 243].iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(counts("x^2", 3, 10), x2);
    let fit = igusa::fit_rational(&x2).unwrap().unwrap();
    assert_eq!(fit.to_string(), "(1 + 3*T)/(1 - 3*T^2)");

    let smooth = counts("x + y^2", 5, 8);
    let want: Vec<BigInt> = (1..=9u32).map(|e| BigInt::from(5).pow(e)).collect();
    assert_eq!(smooth, want);
    assert_eq!(igusa::fit_rational(&smooth).unwrap().unwrap().to_string(), "5/(1 - 5*T)");
}
