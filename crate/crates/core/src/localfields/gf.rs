use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::IntPoly;

/// Dense univariate polynomial over F_p for a machine-word prime p.
///
/// Coefficients lie in [0, p); the leading coefficient is nonzero unless the
/// polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyModP {
    pub p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let bp = num_bigint::BigInt::from(p);
        PolyModP::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = num_integer::Integer::mod_floor(c, &bp);
                    r.to_u64().expect("residue fits u64")
                })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyModP::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyModP::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        PolyModP::new(p, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = addm(mulm(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn add(&self, rhs: &PolyModP) -> PolyModP {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyModP::new(
            self.p,
            (0..n)
                .map(|i| addm(self.coeff(i), rhs.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &PolyModP) -> PolyModP {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyModP::new(
            self.p,
            (0..n)
                .map(|i| subm(self.coeff(i), rhs.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &PolyModP) -> PolyModP {
        if self.is_zero() || rhs.is_zero() {
            return PolyModP::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        PolyModP::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> PolyModP {
        PolyModP::new(
            self.p,
            self.coeffs.iter().map(|&a| mulm(a, c, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> PolyModP {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.leading(), self.p))
    }

    pub fn divrem(&self, d: &PolyModP) -> (PolyModP, PolyModP) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (PolyModP::zero(self.p), self.clone());
        }
        let p = self.p;
        let dd = d.deg();
        let inv_lc = invm(d.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = mulm(rem[i], inv_lc, p);
            if q == 0 {
                continue;
            }
            quot[i - dd] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = subm(rem[i - dd + j], mulm(q, dc, p), p);
            }
        }
        rem.truncate(dd);
        (PolyModP::new(p, quot), PolyModP::new(p, rem))
    }

    pub fn rem(&self, d: &PolyModP) -> PolyModP {
        self.divrem(d).1
    }

    pub fn gcd(&self, other: &PolyModP) -> PolyModP {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyModP {
        if self.coeffs.len() <= 1 {
            return PolyModP::zero(self.p);
        }
        PolyModP::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, (i as u64) % self.p, self.p))
                .collect(),
        )
    }

    /// self^e mod m, with an arbitrary-precision exponent.
    pub fn powmod_big(&self, e: &BigUint, m: &PolyModP) -> PolyModP {
        let mut base = self.rem(m);
        let mut acc = PolyModP::one(self.p);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn powmod(&self, e: u64, m: &PolyModP) -> PolyModP {
        self.powmod_big(&BigUint::from(e), m)
    }

    /// X^{p^k} mod m via iterated Frobenius.
    fn x_frobenius_power(m: &PolyModP, k: usize) -> PolyModP {
        let mut x = PolyModP::x(m.p).rem(m);
        for _ in 0..k {
            x = x.powmod(m.p, m);
        }
        x
    }

    /// True iff self is irreducible over F_p.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic();
        // X^{p^n} ≡ X mod f
        let xq = PolyModP::x_frobenius_power(&f, n);
        if xq.sub(&PolyModP::x(self.p)).rem(&f) != PolyModP::zero(self.p) {
            return false;
        }
        // gcd(X^{p^{n/q}} − X, f) = 1 for every prime q | n
        let mut primes = vec![];
        let mut m = n;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                primes.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for q in primes {
            let xq = PolyModP::x_frobenius_power(&f, n / q);
            let g = xq.sub(&PolyModP::x(self.p)).gcd(&f);
            if g.deg() > 0 {
                return false;
            }
        }
        true
    }
}

/// Full factorization over F_p into monic irreducibles with multiplicity;
/// squarefree split, distinct-degree, then equal-degree splitting.
pub fn factor_mod_p(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let mut out: Vec<(PolyModP, usize)> = vec![];
    for (g, mult) in squarefree_parts(f) {
        for h in factor_squarefree(&g) {
            merge(&mut out, h, mult);
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    out
}

fn merge(out: &mut Vec<(PolyModP, usize)>, h: PolyModP, mult: usize) {
    if let Some(e) = out.iter_mut().find(|(g, _)| *g == h) {
        e.1 += mult;
    } else {
        out.push((h, mult));
    }
}

/// Squarefree decomposition over F_p, handling p-th powers.
pub fn squarefree_parts(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let f = f.monic();
    if f.deg() == 0 {
        return vec![];
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(X^p) = (g~(X))^p over F_p
        let mut coeffs = vec![];
        for (i, &c) in f.coeffs().iter().enumerate() {
            if i % (p as usize) == 0 {
                coeffs.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        let root = PolyModP::new(p, coeffs);
        return squarefree_parts(&root)
            .into_iter()
            .map(|(g, m)| (g, m * p as usize))
            .collect();
    }
    let mut out: Vec<(PolyModP, usize)> = vec![];
    let mut g = f.gcd(&d);
    let mut w = f.divrem(&g).0;
    let mut i = 1usize;
    while w.deg() > 0 {
        let y = w.gcd(&g);
        let z = w.divrem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        g = g.divrem(&y).0;
        w = y;
    }
    if g.deg() > 0 {
        // remaining p-th power part
        for (h, m) in squarefree_parts(&g) {
            let mut found = false;
            for e in out.iter_mut() {
                if e.0 == h {
                    e.1 += m;
                    found = true;
                }
            }
            if !found {
                out.push((h, m));
            }
        }
    }
    out
}

/// Factor a squarefree monic polynomial into monic irreducibles.
fn factor_squarefree(f: &PolyModP) -> Vec<PolyModP> {
    let f = f.monic();
    let mut out = vec![];
    // distinct-degree
    let p = f.p;
    let mut rest = f;
    let mut x_power = PolyModP::x(p); // X^{p^d} mod rest, updated as rest shrinks
    let mut d = 0usize;
    while rest.deg() > 0 {
        d += 1;
        if rest.deg() < 2 * d {
            out.push(rest.monic());
            break;
        }
        x_power = x_power.powmod(p, &rest);
        let g = x_power.sub(&PolyModP::x(p)).gcd(&rest);
        if g.deg() > 0 {
            for h in equal_degree_split(&g, d) {
                out.push(h);
            }
            rest = rest.divrem(&g).0;
            x_power = x_power.rem(&rest);
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting of a product of irreducibles of
/// degree d; fixed-seed randomness keeps runs reproducible.
fn equal_degree_split(f: &PolyModP, d: usize) -> Vec<PolyModP> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe ^ f.deg() as u64);
    loop {
        let degree = f.deg() - 1;
        let a = PolyModP::new(
            p,
            (0..=degree).map(|_| rng.gen_range(0..p)).collect(),
        );
        if a.deg() == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map over F_{2^d}: T(a) = Σ a^{2^i}, i < d
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            // a^{(p^d−1)/2} ± 1 splits
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.powmod_big(&e, f);
            b.sub(&PolyModP::one(p)).gcd(f)
        };
        if g.deg() > 0 && g.deg() < f.deg() {
            let mut out = equal_degree_split(&g, d);
            out.extend(equal_degree_split(&f.divrem(&g).0, d));
            return out;
        }
    }
}

/// Roots of f in F_p with multiplicity.
pub fn roots_mod_p(f: &PolyModP) -> Vec<(u64, usize)> {
    factor_mod_p(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| (subm(0, mulm(g.coeff(0), invm(g.coeff(1), f.p), f.p), f.p), m))
        .collect()
}

impl std::fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}X"),
                _ => format!("{c}X^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let p = 5;
        let f = PolyModP::new(p, vec![4, 0, 1]); // X² − 1
        let g = PolyModP::new(p, vec![4, 1]); // X − 1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, PolyModP::new(p, vec![1, 1]));
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn factor_x2_minus_1_mod_5() {
        let f = PolyModP::new(5, vec![4, 0, 1]);
        let fac = factor_mod_p(&f);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(_, m)| *m == 1));
        let mut product = PolyModP::one(5);
        for (g, m) in &fac {
            for _ in 0..*m {
                product = product.mul(g);
            }
        }
        assert_eq!(product, f.monic());
        // roots 1 and 4 = -1
        let mut roots: Vec<u64> = roots_mod_p(&f).into_iter().map(|(r, _)| r).collect();
        roots.sort();
        assert_eq!(roots, vec![1, 4]);
    }

    #[test]
    fn repeated_factors_detected() {
        let p = 3;
        // (X − 1)² (X + 1) mod 3
        let a = PolyModP::new(p, vec![2, 1]);
        let b = PolyModP::new(p, vec![1, 1]);
        let f = a.mul(&a).mul(&b);
        let fac = factor_mod_p(&f);
        assert!(fac.contains(&(a.monic(), 2)));
        assert!(fac.contains(&(b.monic(), 1)));
    }

    #[test]
    fn p_th_power_squarefree_part() {
        let p = 3;
        // (X + 2)^3 = X^3 + 2^3 = X^3 + 8 = X^3 + 2 mod 3
        let f = PolyModP::new(p, vec![2, 0, 0, 1]);
        let fac = factor_mod_p(&f);
        assert_eq!(fac, vec![(PolyModP::new(p, vec![2, 1]), 3)]);
    }

    #[test]
    fn irreducibility_by_gcd_with_frobenius() {
        // X² + 1 irreducible mod 3 (−1 non-residue)
        let f = PolyModP::new(3, vec![1, 0, 1]);
        assert!(f.is_irreducible());
        // X² − 1 not irreducible
        let g = PolyModP::new(3, vec![2, 0, 1]);
        assert!(!g.is_irreducible());
    }

    #[test]
    fn factor_mod_2_degree8() {
        // F(1,X) mod 2 = X⁸ + X⁷ + X² + X + 1 is irreducible
        let f = PolyModP::new(2, vec![1, 1, 1, 0, 0, 0, 0, 1, 1]);
        let fac = factor_mod_p(&f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.deg(), 8);
        assert_eq!(fac[0].1, 1);
        assert!(f.is_irreducible());
    }

    #[test]
    fn equal_degree_split_mod_2() {
        // (X² + X + 1)(X³ + X + 1) mod 2: degrees 2 and 3
        let a = PolyModP::new(2, vec![1, 1, 1]);
        let b = PolyModP::new(2, vec![1, 1, 0, 1]);
        let f = a.mul(&b);
        let fac = factor_mod_p(&f);
        assert!(fac.contains(&(a, 1)));
        assert!(fac.contains(&(b, 1)));
    }
}
