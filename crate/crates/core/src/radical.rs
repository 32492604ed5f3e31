//! Direct evaluation of the radical closed form for R(l) through the Binet
//! expressions, in binary fixed point.
//!
//! The form B_{2l} − √D·B_l²·(1−φ̄^N)/(1+φ̄^N) subtracts two numbers of size
//! roughly φ^{2l} to leave something of size 1/N, so plain doubles lose
//! every digit once l grows. The working precision here is sized from the
//! magnitude of φ^{2l} before any of the terms are formed.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::exact::Rational;

/// Fixed-point number `mant · 2^{−frac_bits}` with a shared scale.
#[derive(Clone, Copy)]
struct Scale {
    frac_bits: u64,
}

impl Scale {
    fn int(&self, v: i64) -> BigInt {
        BigInt::from(v) << self.frac_bits
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.frac_bits
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.frac_bits) / b
    }

    fn pow(&self, base: &BigInt, mut k: u64) -> BigInt {
        let mut acc = BigInt::one() << self.frac_bits;
        let mut b = base.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn to_f64(self, v: &BigInt) -> f64 {
        Rational::new(v.clone(), BigInt::one() << self.frac_bits)
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// R(l) for 1 ≤ l, evaluated from the radical form with enough guard bits
/// that the cancellation leaves about 64 correct bits.
pub(crate) fn radical_resistance_extended(n: u64, l: u64) -> f64 {
    let magnitude_bits = (2 * l + 2) * (64 - n.leading_zeros() as u64);
    let scale = Scale {
        frac_bits: magnitude_bits + 128,
    };
    let d = BigInt::from(n * (n - 4));
    let root = (d << (2 * scale.frac_bits)).sqrt();
    let trace = scale.int(n as i64 - 2);
    let phi: BigInt = (&trace + &root) >> 1;
    let conj: BigInt = (&trace - &root) >> 1;

    let bejaia = |m: u64| scale.div(&(scale.pow(&phi, m) - scale.pow(&conj, m)), &root);
    let one = scale.int(1);
    let conj_n = scale.pow(&conj, n);
    let ratio = scale.div(&(&one - &conj_n), &(&one + &conj_n));

    let b_l = bejaia(l);
    let b_2l = bejaia(2 * l);
    let tail = scale.mul(&scale.mul(&root, &scale.mul(&b_l, &b_l)), &ratio);
    scale.to_f64(&(b_2l - tail))
}

/// The same radical form evaluated literally in double precision.
pub(crate) fn radical_resistance_double(n: u64, l: u64) -> f64 {
    let nf = n as f64;
    let root = (nf * (nf - 4.0)).sqrt();
    let phi = (nf - 2.0 + root) / 2.0;
    let conj = (nf - 2.0 - root) / 2.0;
    let bejaia = |m: u64| (phi.powi(m as i32) - conj.powi(m as i32)) / root;
    let conj_n = conj.powi(n as i32);
    let b_l = bejaia(l);
    bejaia(2 * l) - root * b_l * b_l * (1.0 - conj_n) / (1.0 + conj_n)
}
