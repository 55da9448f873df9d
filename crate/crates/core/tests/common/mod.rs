//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex64;

/// Poincaré polynomial of a partial flag variety by counting inversions of
/// words with `parts[j]` copies of letter `j`: coefficient list in powers of `S`.
pub fn flag_poincare_by_inversions(parts: &[u32]) -> Vec<i64> {
    let mut counts = parts.to_vec();
    let n: u32 = parts.iter().sum();
    let mut coeffs = vec![0i64; (n * n + 2) as usize];
    let mut word = Vec::with_capacity(n as usize);
    fn go(counts: &mut [u32], word: &mut Vec<usize>, coeffs: &mut [i64]) {
        if counts.iter().all(|c| *c == 0) {
            let inv: usize = (0..word.len())
                .map(|i| (i + 1..word.len()).filter(|&j| word[i] > word[j]).count())
                .sum();
            coeffs[2 * inv] += 1;
            return;
        }
        for letter in 0..counts.len() {
            if counts[letter] > 0 {
                counts[letter] -= 1;
                word.push(letter);
                go(counts, word, coeffs);
                word.pop();
                counts[letter] += 1;
            }
        }
    }
    go(&mut counts, &mut word, &mut coeffs);
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    coeffs
}

pub fn factorial_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    let fact = |m: u64| (1..=m).fold(BigUint::from(1u8), |acc, i| acc * i);
    fact(n) / (fact(k) * fact(n - k))
}

/// Largest power of `p` dividing `n` (1 for `p = 0`).
pub fn prime_power(n: u64, p: u64) -> u64 {
    if p == 0 {
        return 1;
    }
    let mut m = n;
    let mut out = 1;
    while m.is_multiple_of(p) {
        m /= p;
        out *= p;
    }
    out
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    p > 1 && prime_power(n, p) == n
}

/// `sum c_e z^e` at a complex point.
pub fn eval_complex(terms: &[(i64, f64)], z: Complex64) -> Complex64 {
    terms.iter().map(|(e, c)| z.powi(*e as i32) * c).sum()
}

pub fn root_of_unity(d: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hilbert series coefficients up to `max` of a weighted polynomial ring
/// modulo a regular sequence: `prod (1 - t^r) / prod (1 - t^v)`.
pub fn complete_intersection_series(var_degrees: &[u32], rel_degrees: &[u32], max: u32) -> BTreeMap<u32, i64> {
    let len = max as usize + 1;
    let mut series = vec![0i64; len];
    series[0] = 1;
    for &v in var_degrees {
        for i in v as usize..len {
            series[i] += series[i - v as usize];
        }
    }
    for &r in rel_degrees {
        for i in (r as usize..len).rev() {
            series[i] -= series[i - r as usize];
        }
    }
    (0..=max).step_by(2).map(|m| (m, series[m as usize])).collect()
}

/// Disc classes written as in the geometry, parsed into coordinates.
pub fn parse_class(basis: &[&str], text: &str) -> Vec<i64> {
    let mut out = vec![0; basis.len()];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut sign = 1;
    let mut coeff = String::new();
    let mut name = String::new();
    let mut flush = |sign: i64, coeff: &mut String, name: &mut String| {
        if !name.is_empty() {
            let c: i64 = if coeff.is_empty() { 1 } else { coeff.parse().unwrap() };
            let i = basis.iter().position(|b| b == name).unwrap_or_else(|| panic!("unknown class {name}"));
            out[i] += sign * c;
        }
        coeff.clear();
        name.clear();
    };
    for ch in compact.chars() {
        match ch {
            '+' | '-' => {
                flush(sign, &mut coeff, &mut name);
                sign = if ch == '-' { -1 } else { 1 };
            }
            d if d.is_ascii_digit() && name.is_empty() => coeff.push(d),
            other => name.push(other),
        }
    }
    flush(sign, &mut coeff, &mut name);
    out
}

/// Signed count and boundary of five discs with reference sign `reference`,
/// `delta` given on the whole basis.
pub fn quilt_brute(classes: &[Vec<i64>], delta: &[i64], reference: i64, disc_offset: usize) -> (i64, i64, i64) {
    let mut w = 0;
    let mut b1 = 0;
    let mut b2 = 0;
    for c in classes {
        let pairing: i64 = c.iter().zip(delta).map(|(a, b)| a * b).sum();
        let sign = if pairing.rem_euclid(2) == 0 { reference } else { -reference };
        w += sign;
        b1 += sign * c[disc_offset];
        b2 += sign * c[disc_offset + 1];
    }
    (w, b1, b2)
}

pub fn so3_quilt_classes() -> Vec<Vec<i64>> {
    let basis = ["S1", "S2", "D1", "D2"];
    ["D1", "S1 - D1 - D2", "S1 - D1", "S2 - D1", "S2 - D1 + D2"]
        .iter()
        .map(|t| parse_class(&basis, t))
        .collect()
}

pub fn lens_quilt_classes() -> Vec<Vec<i64>> {
    let basis = ["S", "D1", "D2"];
    ["D1", "S - 2D1 - D2", "S - 2D1", "S - 2D1", "S - 2D1 + D2"]
        .iter()
        .map(|t| parse_class(&basis, t))
        .collect()
}

/// Multiply `a + b H` by `c + d H` in `Z[T][H]/(H^2 - s T^2)`, tracking only
/// integer coefficients of the fixed `T`-powers that occur for `ê = e H + ν T`.
pub fn gysin_det_oracle(e: i64, s: i64, nu: i64) -> i64 {
    // ê·1 = νT + eH, ê·H = e H^2 + νT H = e s T^2 + νT H.
    // Columns in the basis {1, H}, with T-powers stripped:
    let col1 = (nu, e); // T^1 * 1, T^0 * H
    let col2 = (e * s, nu); // T^2 * 1, T^1 * H
    // det = (νT)(νT) - (e s T^2)(e): both products carry T^2.
    col1.0 * col2.1 - col2.0 * col1.1
}
