use num_bigint::BigInt;
use num_integer::Integer;
use num_integer::Roots as _;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{BigRational, ExactAlgError, Result};

/// Sign and prime-power decomposition of a nonzero integer.
///
/// Primes are distinct and ascending; `unit · Π p^e` reconstructs the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    pub unit: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl FactoredInt {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// Squarefree part: unit · Π_{e odd} p.
    pub fn squarefree_part(&self) -> BigInt {
        let mut v = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v *= p;
            }
        }
        v
    }

    /// p-adic valuation of the factored value.
    pub fn valuation(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn odd_primes_outside(&self, excluded: &[u64]) -> Vec<(BigInt, u32)> {
        self.factors
            .iter()
            .filter(|(p, _)| {
                *p != BigInt::from(2)
                    && !excluded.iter().any(|&q| *p == BigInt::from(q))
            })
            .cloned()
            .collect()
    }
}

impl Serialize for FactoredInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FactoredInt", 2)?;
        st.serialize_field("unit", &self.unit)?;
        let fs: Vec<(String, u32)> = self
            .factors
            .iter()
            .map(|(p, e)| (p.to_string(), *e))
            .collect();
        st.serialize_field("factors", &fs)?;
        st.end()
    }
}

/// Iteration budget for Pollard rho; trial division is not metered.
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 5_000_000,
        }
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Deterministic Miller–Rabin witnesses; this set is exact below 3.317·10²⁴.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality below 3.317·10²⁴ (fixed Miller–Rabin base set);
/// above that, Miller–Rabin with the same bases plus a strong Lucas test
/// (Baillie–PSW), which has no known counterexamples.
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == s {
            return true;
        }
        if (&n % &s).is_zero() {
            return false;
        }
    }
    if !miller_rabin(&n) {
        return false;
    }
    let deterministic_bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < deterministic_bound {
        return true;
    }
    strong_lucas(&n)
}

fn miller_rabin(n: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for a in MR_BASES {
        let a = BigInt::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r: BigInt = &n % 8;
            let r = r.to_string().parse::<u8>().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4) == BigInt::from(3) && (&n % 4) == BigInt::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    // find D with jacobi(D, n) = -1 from 5, -7, 9, -11, ...
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == 0 {
            return d.abs() == *n;
        }
        if j == -1 {
            break;
        }
        d = if d.is_positive() {
            -(&d + BigInt::from(2))
        } else {
            -(&d - BigInt::from(2))
        };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    // n + 1 = 2^s * t
    let np1 = n + BigInt::one();
    let s = np1.trailing_zeros().unwrap_or(0);
    let t = &np1 >> s;
    // Lucas sequences U_t, V_t mod n by binary expansion
    let (mut u, mut v, mut qk) = (BigInt::one(), p.clone(), q.mod_floor(n));
    let bits = t.bits();
    for i in (0..bits - 1).rev() {
        // double: U_{2k} = U V, V_{2k} = V^2 - 2 Q^k
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if t.bit(i) {
            // increment: U_{k+1} = (P U + V)/2, V_{k+1} = (D U + P V)/2
            let mut u2 = &p * &u + &v;
            if u2.is_odd() {
                u2 += n;
            }
            let mut v2 = &d * &u + &p * &v;
            if v2.is_odd() {
                v2 += n;
            }
            u = (u2 >> 1u32).mod_floor(n);
            v = (v2 >> 1u32).mod_floor(n);
            qk = (&qk * q.mod_floor(n)).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}

/// Factor a nonzero integer: deterministic trial division to 10⁶, then
/// Brent-cycle Pollard rho with a fixed seed sequence under the given budget.
pub fn factor_integer(n: &BigInt, budget: FactorBudget) -> Result<FactoredInt> {
    assert!(!n.is_zero(), "factor_integer: zero input");
    let unit = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = vec![];
    let push = |factors: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32| {
        if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += e;
        } else {
            factors.push((p, e));
        }
    };

    // trial division
    let trial = |factors: &mut Vec<(BigInt, u32)>, m: &mut BigInt, p: u64| {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&*m % &bp).is_zero() {
            *m /= &bp;
            e += 1;
        }
        if e > 0 {
            push(factors, bp, e);
        }
    };
    trial(&mut factors, &mut m, 2);
    trial(&mut factors, &mut m, 3);
    let mut p = 5u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= m {
        trial(&mut factors, &mut m, p);
        trial(&mut factors, &mut m, p + 2);
        p += 6;
    }
    if m > BigInt::one() && BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) > m {
        // remaining cofactor below the trial bound squared is prime
        push(&mut factors, m.clone(), 1);
        m = BigInt::one();
    }

    // rho phase on remaining composite cofactors
    let mut iterations_left = budget.rho_iterations;
    let mut stack = vec![];
    if m > BigInt::one() {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if is_prime(&c) {
            push(&mut factors, c, 1);
            continue;
        }
        match brent_rho(&c, &mut iterations_left) {
            Some(d) => {
                stack.push(&c / &d);
                stack.push(d);
            }
            None => {
                factors.sort_by(|a, b| a.0.cmp(&b.0));
                return Err(ExactAlgError::BudgetExceeded {
                    partial: FactoredInt { unit, factors },
                    cofactor: c,
                });
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FactoredInt { unit, factors })
}

/// Brent's variant of Pollard rho; the polynomial offsets c = 1, 2, 3, …
/// form the fixed seed sequence.
fn brent_rho(n: &BigInt, iterations_left: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1u64..64 {
        let c = BigInt::from(c);
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let (mut g, mut x, mut ys) = (BigInt::one(), BigInt::zero(), BigInt::zero());
        'outer: while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = (&y * &y + &c) % n;
                    let diff = (&x - &y).abs();
                    q = (&q * &diff) % n;
                }
                if *iterations_left < batch {
                    *iterations_left = 0;
                    return None;
                }
                *iterations_left -= batch;
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
            if r > (1 << 24) {
                break 'outer;
            }
        }
        if g == *n {
            // backtrack
            loop {
                ys = (&ys * &ys + &c) % n;
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Some(g);
        }
        // cycle degenerated; try next offset
    }
    None
}

/// True iff n is the square of an integer.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if n.is_zero() {
        return true;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True iff q is the square of a rational.
pub fn is_square_rational(q: &BigRational) -> bool {
    !q.is_negative() && is_perfect_square(q.numer()) && is_perfect_square(q.denom())
}

/// The unique squarefree d with n/d a positive rational square.
pub fn square_class(n: &BigInt, budget: FactorBudget) -> Result<BigInt> {
    assert!(!n.is_zero(), "square_class of zero");
    Ok(factor_integer(n, budget)?.squarefree_part())
}

/// Squarefree part of a rational: square_class(num·den).
pub fn square_class_rational(q: &BigRational, budget: FactorBudget) -> Result<BigInt> {
    square_class(&(q.numer() * q.denom()), budget)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0u32;
    let mut m = n.abs();
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: i64) -> FactoredInt {
        factor_integer(&BigInt::from(n), FactorBudget::default()).unwrap()
    }

    #[test]
    fn small_factorizations() {
        let f = fi(12);
        assert_eq!(f.unit, 1);
        assert_eq!(f.factors, vec![(BigInt::from(2), 2), (BigInt::from(3), 1)]);
        let g = fi(-27);
        assert_eq!(g.unit, -1);
        assert_eq!(g.factors, vec![(BigInt::from(3), 3)]);
        assert_eq!(g.value(), BigInt::from(-27));
    }

    #[test]
    fn factorization_of_108_plus_7_pow_10() {
        // trial-division oracle: 282475357 = 1693 · 166849, both prime
        let n: i64 = 108 + 7i64.pow(10);
        assert_eq!(n, 282475357);
        let mut m = n;
        let mut oracle = vec![];
        let mut d = 2i64;
        while d * d <= m {
            while m % d == 0 {
                oracle.push(d);
                m /= d;
            }
            d += 1;
        }
        if m > 1 {
            oracle.push(m);
        }
        assert_eq!(oracle, vec![1693, 166849]);
        let f = fi(n);
        assert_eq!(
            f.factors,
            vec![(BigInt::from(1693), 1), (BigInt::from(166849), 1)]
        );
        assert_eq!(f.value(), BigInt::from(n));
        assert!(f.factors.iter().all(|(p, _)| is_prime(p)));
    }

    #[test]
    fn square_classes() {
        let b = FactorBudget::default();
        assert_eq!(square_class(&BigInt::from(49), b).unwrap(), BigInt::one());
        assert_eq!(square_class(&BigInt::from(-27), b).unwrap(), BigInt::from(-3));
        assert_eq!(square_class(&BigInt::from(12), b).unwrap(), BigInt::from(3));
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::zero()));
        assert!(is_perfect_square(&BigInt::from(49)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(!is_perfect_square(&BigInt::from(282475357)));
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(&BigInt::from(1693)));
        assert!(is_prime(&BigInt::from(166849)));
        assert!(!is_prime(&BigInt::from(282475357)));
        // Carmichael number
        assert!(!is_prime(&BigInt::from(561)));
        // large prime: 2^89 - 1 (Mersenne)
        let m89: BigInt = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89));
        // large composite: 2^87 - 1
        let m87: BigInt = (BigInt::one() << 87) - 1;
        assert!(!is_prime(&m87));
    }

    #[test]
    fn rho_factors_semiprime_beyond_trial_range() {
        // 1000003 * 1000033 with both primes above the trial bound
        let n = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let f = factor_integer(&n, FactorBudget::default()).unwrap();
        assert_eq!(
            f.factors,
            vec![(BigInt::from(1000003), 1), (BigInt::from(1000033), 1)]
        );
    }

    #[test]
    fn budget_exhaustion_reports_cofactor() {
        let n = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let err = factor_integer(&n, FactorBudget { rho_iterations: 1 }).unwrap_err();
        match err {
            ExactAlgError::BudgetExceeded { cofactor, .. } => assert_eq!(cofactor, n),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn jacobi_symbol_matches_legendre_small() {
        for a in 1..7 {
            let j = jacobi(&BigInt::from(a), &BigInt::from(7));
            let is_qr = (1..7).any(|x| (x * x) % 7 == a);
            assert_eq!(j, if is_qr { 1 } else { -1 }, "a={a}");
        }
    }
}
