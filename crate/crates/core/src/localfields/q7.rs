use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LocalFieldError;

/// Element a + b·√7 of Z₇[√7], with exact integer components.
///
/// The valuation is normalized to half-powers of 7: v(√7) = 1, v(7) = 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamQuadElt {
    pub a: BigInt,
    pub b: BigInt,
}

const P: i64 = 7;

impl RamQuadElt {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        RamQuadElt { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        RamQuadElt::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn zero() -> Self {
        RamQuadElt::new(BigInt::zero(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &RamQuadElt) -> RamQuadElt {
        RamQuadElt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub fn sub(&self, rhs: &RamQuadElt) -> RamQuadElt {
        RamQuadElt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }

    pub fn mul(&self, rhs: &RamQuadElt) -> RamQuadElt {
        RamQuadElt::new(
            &self.a * &rhs.a + BigInt::from(P) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }

    /// Valuation in half-powers of 7; None for zero.
    pub fn val(&self) -> Option<u32> {
        let va = int_val(&self.a).map(|v| 2 * v);
        let vb = int_val(&self.b).map(|v| 2 * v + 1);
        match (va, vb) {
            (None, None) => None,
            (Some(v), None) | (None, Some(v)) => Some(v),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    /// Multiply by √7: (a + b√7)·√7 = 7b + a√7.
    pub fn mul_sqrt7(&self) -> RamQuadElt {
        RamQuadElt::new(BigInt::from(P) * &self.b, self.a.clone())
    }

    /// Exact division by √7^k.
    pub fn div_pi(&self, k: u32) -> RamQuadElt {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        for _ in 0..k {
            // (a + b√7)/√7 = b + (a/7)√7
            let (q, r) = a.div_rem(&BigInt::from(P));
            assert!(r.is_zero(), "inexact division by sqrt(7)");
            let na = std::mem::replace(&mut b, q);
            a = na;
        }
        RamQuadElt::new(a, b)
    }

    /// Residue in F₇ (valid when v ≥ 0): a mod 7.
    pub fn residue(&self) -> u64 {
        self.a.mod_floor(&BigInt::from(P)).to_string().parse().unwrap()
    }

    /// Inverse modulo 7^k (component-bounded) for a unit element.
    pub fn inv_mod(&self, k: u32) -> RamQuadElt {
        let norm = &self.a * &self.a - BigInt::from(P) * &self.b * &self.b;
        let modulus = BigInt::from(P).pow(k);
        let ninv = mod_inverse(&norm, &modulus).expect("unit norm");
        // 1/(a+b√7) = (a − b√7)/norm
        RamQuadElt::new(
            (&self.a * &ninv).mod_floor(&modulus),
            (-&self.b * &ninv).mod_floor(&modulus),
        )
    }

    pub fn reduce_mod(&self, k: u32) -> RamQuadElt {
        let m = BigInt::from(P).pow(k);
        RamQuadElt::new(self.a.mod_floor(&m), self.b.mod_floor(&m))
    }
}

fn int_val(n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(P);
    let mut v = 0;
    let mut m = n.abs();
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    Some(v)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Polynomial over Z₇[√7], constant term first.
#[derive(Clone, Debug)]
pub struct RamQuadPoly {
    pub coeffs: Vec<RamQuadElt>,
}

impl RamQuadPoly {
    pub fn new(mut coeffs: Vec<RamQuadElt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RamQuadPoly { coeffs }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &RamQuadElt) -> RamQuadElt {
        let mut acc = RamQuadElt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> RamQuadPoly {
        if self.coeffs.len() <= 1 {
            return RamQuadPoly { coeffs: vec![] };
        }
        RamQuadPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let k = RamQuadElt::new(BigInt::from(i as i64), BigInt::zero());
                    c.mul(&k)
                })
                .collect(),
        )
    }

    /// Minimal coefficient valuation; None for the zero polynomial.
    pub fn min_val(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| c.val()).min()
    }

    /// Divide all coefficients by √7^k.
    pub fn div_pi(&self, k: u32) -> RamQuadPoly {
        RamQuadPoly::new(self.coeffs.iter().map(|c| c.div_pi(k)).collect())
    }

    /// Substitute X ↦ c + √7·Y.
    pub fn shift_scale(&self, c: &RamQuadElt) -> RamQuadPoly {
        let mut acc: Vec<RamQuadElt> = vec![];
        for a in self.coeffs.iter().rev() {
            // acc = acc·(c + √7 Y) + a
            let mut next = vec![RamQuadElt::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].add(&v.mul_sqrt7());
                next[k] = next[k].add(&v.mul(c));
            }
            if next.is_empty() {
                next.push(RamQuadElt::zero());
            }
            next[0] = next[0].add(a);
            acc = next;
        }
        RamQuadPoly::new(acc)
    }

    /// Reduction mod √7 as a polynomial over F₇ (assumes min_val = 0).
    fn residue_poly(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.residue()).collect()
    }
}

/// Count the distinct roots of g in Z₇[√7] by residue clustering; simple
/// residue roots are Hensel-refined and verified, multiple ones recursed
/// after the substitution X ↦ r + √7·Y. `budget` is the remaining half-power
/// depth.
fn count_roots(g: &RamQuadPoly, budget: u32, verify_to: u32) -> Result<usize, LocalFieldError> {
    let minv = match g.min_val() {
        Some(v) => v,
        None => return Err(LocalFieldError::Internal("zero polynomial".into())),
    };
    let g = g.div_pi(minv);
    let budget = budget
        .checked_sub(minv)
        .ok_or(LocalFieldError::PrecisionExhausted)?;
    let res = g.residue_poly();
    let dres = g.derivative();
    let mut count = 0usize;
    for r in 0..(P as u64) {
        let fr = eval_mod_p(&res, r);
        if fr != 0 {
            continue;
        }
        let x = RamQuadElt::from_ints(r as i64, 0);
        let dr = dres.eval(&x);
        let simple = dr.val() == Some(0);
        if simple {
            // Hensel: refine and verify the witness
            let root = hensel_refine(&g, &x, verify_to)?;
            let v = g.eval(&root).val();
            if v.map_or(false, |v| v < verify_to) {
                return Err(LocalFieldError::Internal(
                    "refined root fails verification".into(),
                ));
            }
            count += 1;
        } else {
            if budget == 0 {
                return Err(LocalFieldError::PrecisionExhausted);
            }
            let shifted = g.shift_scale(&x);
            count += count_roots(&shifted, budget - 1, verify_to)?;
        }
    }
    Ok(count)
}

fn eval_mod_p(coeffs: &[u64], x: u64) -> u64 {
    let p = P as u64;
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Newton iteration x ← x − g(x)/g′(x) until v(g(x)) ≥ target.
fn hensel_refine(
    g: &RamQuadPoly,
    start: &RamQuadElt,
    target: u32,
) -> Result<RamQuadElt, LocalFieldError> {
    let d = g.derivative();
    let mut x = start.clone();
    let int_target = target / 2 + 2;
    for _ in 0..64 {
        let fx = g.eval(&x);
        match fx.val() {
            None => return Ok(x),
            Some(v) if v >= target => return Ok(x.reduce_mod(int_target)),
            _ => {}
        }
        let dx = d.eval(&x);
        if dx.val() != Some(0) {
            return Err(LocalFieldError::Internal("derivative not a unit".into()));
        }
        let dinv = dx.inv_mod(int_target);
        let delta = fx.mul(&dinv);
        x = x.sub(&delta).reduce_mod(int_target);
    }
    Err(LocalFieldError::PrecisionExhausted)
}

/// Whether 7u²·F(u, X/(√7·u)) = X⁷(X + 7√7·u) − (X² + √7·u·X + 49u²) splits
/// into distinct linear factors over Q₇(√7). True certifies that the
/// decomposition group at 7 in the degree-8 splitting field is generated by
/// an element of order at most 2.
///
/// `precision` counts half-powers of √7 available to the cluster recursion;
/// exhausting it errors rather than answering.
pub fn q7_sqrt7_split_check(u0: &BigInt, precision: u32) -> Result<bool, LocalFieldError> {
    assert!(u0.is_odd(), "only odd specializations are considered");
    let u = u0.clone();
    let z = BigInt::zero;
    // X⁸ + 7u√7·X⁷ − X² − u√7·X − 49u²
    let g = RamQuadPoly::new(vec![
        RamQuadElt::new(BigInt::from(-49) * &u * &u, z()),
        RamQuadElt::new(z(), -&u),
        RamQuadElt::new(BigInt::from(-1), z()),
        RamQuadElt::zero(),
        RamQuadElt::zero(),
        RamQuadElt::zero(),
        RamQuadElt::zero(),
        RamQuadElt::new(z(), BigInt::from(7) * &u),
        RamQuadElt::new(BigInt::one(), z()),
    ]);
    let verify_to = precision.max(8);
    let n = count_roots(&g, precision, verify_to)?;
    Ok(n == g.deg())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(RamQuadElt::from_ints(49, 0).val(), Some(4));
        assert_eq!(RamQuadElt::from_ints(0, 1).val(), Some(1));
        assert_eq!(RamQuadElt::from_ints(0, 7).val(), Some(3));
        assert_eq!(RamQuadElt::from_ints(14, 21).val(), Some(2));
        assert_eq!(RamQuadElt::zero().val(), None);
    }

    #[test]
    fn arithmetic_and_inverse() {
        let x = RamQuadElt::from_ints(3, 2);
        let y = x.inv_mod(6);
        let prod = x.mul(&y).reduce_mod(6);
        assert_eq!(prod, RamQuadElt::new(BigInt::one(), BigInt::zero()));
    }

    #[test]
    fn split_check_for_small_odd_values() {
        for u in [1i64, 3, 5, -1, 9] {
            let ok = q7_sqrt7_split_check(&BigInt::from(u), 64).unwrap();
            assert!(ok, "u = {u} should split");
        }
    }

    #[test]
    fn tight_precision_errors_rather_than_lies() {
        // the deep root needs 3 half-powers; precision 2 must not answer false
        match q7_sqrt7_split_check(&BigInt::one(), 2) {
            Ok(v) => assert!(v),
            Err(LocalFieldError::PrecisionExhausted) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn polynomial_with_root_counted_once() {
        // X² − 7: root ±√7: 2 distinct roots
        let g = RamQuadPoly::new(vec![
            RamQuadElt::from_ints(-7, 0),
            RamQuadElt::zero(),
            RamQuadElt::from_ints(1, 0),
        ]);
        assert_eq!(count_roots(&g, 32, 16).unwrap(), 2);
        // X² − 3: 3 is not a square in F₇ (squares are 1,2,4): no roots
        let g = RamQuadPoly::new(vec![
            RamQuadElt::from_ints(-3, 0),
            RamQuadElt::zero(),
            RamQuadElt::from_ints(1, 0),
        ]);
        assert_eq!(count_roots(&g, 32, 16).unwrap(), 0);
        // X² − 2: 2 = 3² − 7 = 9 − 7: square in Z₇ (2 ≡ 9 ≡ 3² mod 7): two roots
        let g = RamQuadPoly::new(vec![
            RamQuadElt::from_ints(-2, 0),
            RamQuadElt::zero(),
            RamQuadElt::from_ints(1, 0),
        ]);
        assert_eq!(count_roots(&g, 32, 16).unwrap(), 2);
    }
}
