//! Primality testing and integer factorization with bounded effort.
//!
//! Factorization degrades gracefully: trial division up to a bound, then
//! Brent-cycle Pollard rho with an iteration cap. Callers that hit the cap
//! get the factored part plus an unfactored cofactor instead of an error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division bound used by [`factor`].
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Default Pollard-rho iteration budget per composite.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact below 3.3 * 10^24, which covers u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-size integers: deterministic below 2^64,
/// Miller-Rabin with 40 fixed-sequence witnesses above.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() || n < &BigInt::from(2) {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let two = BigInt::from(2);
    if n.is_even() {
        return false;
    }
    let nm1: BigInt = n - 1;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    // fixed witness sequence keeps the test deterministic run-to-run
    let mut a = two.clone();
    'witness: for k in 0..40u32 {
        a = &a * BigInt::from(2 * k + 3) % n;
        if a < two {
            a = two.clone();
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes, in order.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Result of a bounded factorization attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Prime factors with multiplicity, ascending.
    pub factors: Vec<(BigInt, u32)>,
    /// Cofactor left unfactored when the rho budget ran out (1 if complete).
    pub cofactor: BigInt,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Primes whose square divides the factored part.
    pub fn squared_primes(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|(_, e)| *e >= 2)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

fn rho_brent(n: &BigInt, budget: u64, seed: u64) -> Option<BigInt> {
    // Brent's cycle-finding variant of Pollard rho.
    let one = BigInt::one();
    let c = BigInt::from(seed * 2 + 1);
    let mut y = BigInt::from(seed + 2);
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut used = 0u64;
    while g.is_one() && used < budget {
        x = y.clone();
        for _ in 0..r {
            y = (&y * &y + &c) % n;
        }
        let mut k = 0u64;
        while k < r && g.is_one() && used < budget {
            ys = y.clone();
            let m = 128.min(r - k);
            for _ in 0..m {
                y = (&y * &y + &c) % n;
                let diff = (&x - &y).abs();
                if !diff.is_zero() {
                    q = &q * diff % n;
                }
            }
            used += m;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n || used >= budget {
        // backtrack to recover a proper factor from the batched gcd
        g = one;
        for _ in 0..256 {
            ys = (&ys * &ys + &c) % n;
            let diff = (&x - &ys).abs();
            if diff.is_zero() {
                break;
            }
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || g == *n {
        None
    } else {
        Some(g)
    }
}

/// Factor `|n|` with trial division then Pollard rho under `rho_budget`.
pub fn factor(n: &BigInt, rho_budget: u64) -> Factorization {
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |factors: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32| {
        if let Some(slot) = factors.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            factors.push((p, e));
        }
    };
    if m.is_zero() {
        return Factorization {
            factors,
            cofactor: BigInt::zero(),
        };
    }
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && BigInt::from(d).pow(2) <= m {
        let bd = BigInt::from(d);
        let mut e = 0u32;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            push(&mut factors, bd, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        factors.sort();
        return Factorization {
            factors,
            cofactor: BigInt::one(),
        };
    }
    // rho phase on the remaining cofactor
    let mut stack = vec![m];
    let mut cofactor = BigInt::one();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            push(&mut factors, c, 1);
            continue;
        }
        // perfect powers split for free
        if let Some((root, k)) = perfect_power(&c) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        let mut split = None;
        for seed in 0..6u64 {
            if let Some(g) = rho_brent(&c, rho_budget / 6, seed) {
                split = Some(g);
                break;
            }
        }
        match split {
            Some(g) => {
                stack.push(&c / &g);
                stack.push(g);
            }
            None => cofactor *= c,
        }
    }
    factors.sort();
    Factorization { factors, cofactor }
}

/// `n = r^k` with k >= 2 maximal, if such r exists.
pub fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n < &BigInt::from(4) {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = nth_root_floor(n, k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Floor of the k-th root of a nonnegative integer.
pub fn nth_root_floor(n: &BigInt, k: u32) -> BigInt {
    debug_assert!(!n.is_negative() && k >= 1);
    if n.is_zero() || n.is_one() || k == 1 {
        return n.clone();
    }
    let bits = n.bits();
    let mut hi = BigInt::one() << (bits / k as u64 + 1);
    let mut lo = BigInt::zero();
    while &lo < &(&hi - 1) {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.pow(k) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let known = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
        assert_eq!(&first_primes(10), &known);
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn thousandth_prime() {
        let ps = first_primes(1000);
        assert_eq!(ps[999], 7919);
        assert_eq!(ps[199], 1223);
    }

    #[test]
    fn big_prime() {
        // 2^89 - 1 is a Mersenne prime
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89));
        assert!(!is_prime(&((BigInt::one() << 67) - 1)));
    }

    #[test]
    fn factor_complete() {
        let n = BigInt::from(9472); // 2^8 * 37
        let f = factor(&n, DEFAULT_RHO_BUDGET);
        assert!(f.is_complete());
        assert_eq!(f.factors, vec![(BigInt::from(2), 8), (BigInt::from(37), 1)]);
        assert_eq!(f.squared_primes(), vec![BigInt::from(2)]);
    }

    #[test]
    fn factor_semiprime_via_rho() {
        // both factors above the trial-division bound
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factor(&(&p * &q), DEFAULT_RHO_BUDGET);
        assert!(f.is_complete());
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(
            perfect_power(&BigInt::from(1024)),
            Some((BigInt::from(2), 10))
        );
        assert_eq!(
            perfect_power(&BigInt::from(49)),
            Some((BigInt::from(7), 2))
        );
        assert_eq!(perfect_power(&BigInt::from(48)), None);
        assert_eq!(nth_root_floor(&BigInt::from(26), 3), BigInt::from(2));
        assert_eq!(nth_root_floor(&BigInt::from(27), 3), BigInt::from(3));
    }
}
