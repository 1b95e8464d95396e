use num_bigint::BigInt;
use num_traits::ToPrimitive;

use forge_core::family::{build, validate_params, ValidationLevel};
use forge_core::{Field, Fp, PrimeField, Rational, UPoly};

fn reduce(k: &PrimeField, q: &Rational) -> Fp {
    let m = BigInt::from(k.p());
    let r = |n: &BigInt| k.from_i64((((n % &m) + &m) % &m).to_i64().unwrap());
    r(q.numer()) * r(q.denom()).inv().unwrap()
}

fn reduce_poly(k: &PrimeField, f: &UPoly<Rational>) -> UPoly<Fp> {
    UPoly::from_coeffs(k, f.coeffs().iter().map(|c| reduce(k, c)).collect())
}

/// Building over ℚ and reducing agrees with building over 𝔽_p, for every
/// prime where the reduction is nondegenerate.
#[test]
fn rational_pairs_reduce_to_prime_field_pairs() {
    for (g, v, a) in [(2usize, 3i64, vec![2i64, 5]), (3, 2, vec![3, 5, 7]), (1, 2, vec![3])] {
        let q = |n: i64| Rational::integer(n);
        let pq =
            build(&validate_params(g, q(v), a.iter().map(|&x| q(x)).collect(), &(), ValidationLevel::Pair).unwrap())
                .unwrap();
        let mut checked = 0;
        for p in [29u64, 31, 101, 103, 1009] {
            let k = PrimeField::new(p).unwrap();
            let Ok(ps) = validate_params(
                g,
                k.from_i64(v),
                a.iter().map(|&x| k.from_i64(x)).collect(),
                &k,
                ValidationLevel::Pair,
            ) else {
                continue;
            };
            let pf = build(&ps).unwrap();
            assert_eq!(reduce_poly(&k, &pq.c.f), pf.c.f, "g={g} p={p}");
            assert_eq!(reduce_poly(&k, &pq.c_prime.f), pf.c_prime.f, "g={g} p={p}");
            assert_eq!(reduce(&k, &pq.a_const), pf.a_const);
            checked += 1;
        }
        assert!(checked >= 3);
    }
}
