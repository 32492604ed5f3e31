use bejaia_core::exact::rational_to_f64;
use bejaia_core::walk::exact_hitting_times;
use bejaia_core::{
    hitting_time, two_point_resistance, wu_resistance, CirculantGraph, Rational, SequenceContext,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn odd_order(max: u64) -> impl Strategy<Value = u64> {
    (2..=(max - 1) / 2).prop_map(|h| 2 * h + 1)
}

fn canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

proptest! {
    #[test]
    fn recursion_matches_unit_powers(n in odd_order(99), l in 0u64..=200) {
        let ctx = SequenceContext::new(n).unwrap();
        let (b, p) = ctx.binet_pair(l);
        prop_assert_eq!(&b, &ctx.bejaia(l));
        prop_assert_eq!(&p, &ctx.pisa(l));
        prop_assert_eq!(&p * &p - ctx.radicand() * &b * &b, BigInt::from(4));
    }

    #[test]
    fn resistance_is_symmetric_canonical_and_bounded(n in odd_order(61), l_seed in 1u64..1000) {
        let l = 1 + l_seed % (n - 1);
        let r = two_point_resistance(n, l).unwrap();
        prop_assert!(canonical(&r));
        prop_assert_eq!(&r, &two_point_resistance(n, n - l).unwrap());
        let cycle = Rational::new(BigInt::from(l * (n - l)), BigInt::from(n));
        prop_assert!(r.is_positive() && r <= cycle);
    }

    #[test]
    fn exact_matches_spectral(n in odd_order(101), l_seed in 1u64..1000) {
        let l = 1 + l_seed % (n - 1);
        let exact = rational_to_f64(&two_point_resistance(n, l).unwrap());
        let g = CirculantGraph::complete_minus_diameters(n as usize).unwrap();
        let wu = wu_resistance(&g, l as usize).unwrap();
        prop_assert!(((exact - wu) / exact).abs() <= 1e-9);
    }

    #[test]
    fn commute_time_law_on_random_circulants(
        n in 5usize..30,
        jumps in proptest::collection::vec(1usize..15, 1..4),
        l_seed in 1usize..100,
    ) {
        let jumps: Vec<usize> = jumps.into_iter().map(|j| 1 + (j - 1) % (n / 2)).collect();
        let Ok(g) = CirculantGraph::new(n, jumps) else { return Ok(()) };
        let l = 1 + l_seed % (n - 1);
        // h(0→l) + h(l→0) = h(0→l) + h(0→n−l) by rotation.
        let h = exact_hitting_times(&g, 0).unwrap();
        let commute = rational_to_f64(&(&h[l] + &h[n - l]));
        let wu = wu_resistance(&g, l).unwrap();
        let want = 2.0 * g.edge_count() as f64 * wu;
        prop_assert!(((commute - want) / want).abs() <= 1e-8, "{} vs {}", commute, want);
    }
}

#[test]
fn bisected_fibonacci_and_lucas() {
    let ctx = SequenceContext::new(5).unwrap();
    let mut fib = vec![BigInt::from(0), BigInt::from(1)];
    for i in 2..=62 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    for l in 0..=30usize {
        assert_eq!(ctx.bejaia(l as u64), fib[2 * l]);
        let lucas = if l == 0 {
            BigInt::from(2)
        } else {
            &fib[2 * l - 1] + &fib[2 * l + 1]
        };
        assert_eq!(ctx.pisa(l as u64), lucas);
    }
}

#[test]
fn markov_solver_reproduces_hitting_times() {
    for n in [5u64, 7, 11] {
        let g = CirculantGraph::complete_minus_diameters(n as usize).unwrap();
        let h = exact_hitting_times(&g, 0).unwrap();
        for l in 1..n {
            assert_eq!(h[l as usize], hitting_time(n, l).unwrap());
        }
    }
}
