//! Integer helpers: primality, factorization, divisors, modular square roots.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `n` must be composite and odd.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing
/// order. Zero and units factor as the empty product.
///
/// Small primes are removed by trial division; a remaining cofactor must fit
/// in a `u64` so that Pollard rho can finish the job.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if rest.is_zero() {
        return Ok(out);
    }
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let Some(cofactor) = rest.to_u64() else {
        return Err(Error::FactorizationLimit(n.to_string()));
    };
    let mut primes = Vec::new();
    factor_u64_into(cofactor, &mut primes);
    primes.sort_unstable();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// All positive divisors of `|n|`, ascending. `n` must be nonzero.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("divisors of zero".into()));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n)? {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    factor(&BigInt::from(n))
        .map(|f| f.iter().all(|&(_, e)| e == 1))
        .unwrap_or(false)
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Smallest integer `k >= 0` with `k^n >= x`, for `x >= 0`.
pub fn ceil_root(x: &BigInt, n: u32) -> BigInt {
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) >= *x {
        r
    } else {
        r + 1
    }
}

/// Multiplicity of the prime `p` in the nonzero integer `n`.
pub fn ord(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), or `None`
/// when `a` is a non-residue. Returns the smaller of the two roots.
pub fn sqrt_mod(a: i64, p: u64) -> Option<u64> {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Some(0);
    }
    if legendre(a as i64, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z as i64, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_647 * 3));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn factor_and_divisors() {
        let n = BigInt::from(2u64.pow(23) * 3u64.pow(12));
        assert_eq!(factor(&n).unwrap(), vec![(2, 23), (3, 12)]);
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert_eq!(factor(&big).unwrap(), vec![(1_000_003, 1), (1_000_033, 1)]);
        let d = divisors(&BigInt::from(-12)).unwrap();
        assert_eq!(d, [1, 2, 3, 4, 6, 12].map(BigInt::from));
        assert!(divisors(&BigInt::zero()).is_err());
    }

    #[test]
    fn modular_square_roots() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 1_000_003] {
            for a in 0..40i64 {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), (a as u64) % p),
                    None => assert_eq!(legendre(a, p), -1),
                }
            }
        }
    }

    #[test]
    fn roots_and_squares() {
        assert_eq!(ceil_root(&BigInt::from(1024), 3), BigInt::from(11));
        assert_eq!(ceil_root(&BigInt::from(1000), 3), BigInt::from(10));
        assert_eq!(ceil_root(&BigInt::from(1), 5), BigInt::from(1));
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
        assert!(is_squarefree(30) && !is_squarefree(12) && !is_squarefree(0));
    }
}
