use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gf::{factor_mod_p, PolyModP};

/// The finite field F_{p^d} realized as F_p[z]/(modulus), with elements
/// represented by residue polynomials of degree < d.
#[derive(Clone, Debug)]
pub struct ExtField {
    pub p: u64,
    pub modulus: PolyModP,
}

pub type ExtElem = PolyModP;

impl ExtField {
    pub fn new(modulus: PolyModP) -> Self {
        debug_assert!(modulus.deg() >= 1);
        debug_assert!(modulus.is_irreducible() || modulus.deg() == 1);
        ExtField {
            p: modulus.p,
            modulus: modulus.monic(),
        }
    }

    /// Prime field F_p as the degree-1 case, modulus z.
    pub fn prime(p: u64) -> Self {
        ExtField {
            p,
            modulus: PolyModP::x(p),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> ExtElem {
        PolyModP::zero(self.p)
    }

    pub fn one(&self) -> ExtElem {
        PolyModP::one(self.p)
    }

    pub fn generator_residue(&self) -> ExtElem {
        // the class of z
        PolyModP::x(self.p).rem(&self.modulus)
    }

    pub fn reduce(&self, a: &PolyModP) -> ExtElem {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.add(b)
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.sub(b)
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.mul(b).rem(&self.modulus)
    }

    pub fn pow(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        a.powmod_big(e, &self.modulus)
    }

    pub fn inv(&self, a: &ExtElem) -> ExtElem {
        assert!(!a.is_zero(), "inverse of zero");
        let e = self.order() - BigUint::from(2u32);
        self.pow(a, &e)
    }

    /// p-th root via the inverse Frobenius c ↦ c^{p^{d−1}}.
    pub fn pth_root(&self, a: &ExtElem) -> ExtElem {
        let e = BigUint::from(self.p).pow((self.degree() - 1) as u32);
        self.pow(a, &e)
    }
}

/// Polynomial over F_{p^d}, constant term first.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtPoly {
    pub coeffs: Vec<ExtElem>,
}

impl ExtPoly {
    pub fn new(field: &ExtField, mut coeffs: Vec<ExtElem>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(c);
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ExtPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExtPoly { coeffs: vec![] }
    }

    pub fn one(field: &ExtField) -> Self {
        ExtPoly {
            coeffs: vec![field.one()],
        }
    }

    pub fn x(field: &ExtField) -> Self {
        ExtPoly {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, field: &ExtField, i: usize) -> ExtElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn leading(&self, field: &ExtField) -> ExtElem {
        self.coeffs.last().cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add(&self, field: &ExtField, rhs: &ExtPoly) -> ExtPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExtPoly::new(
            field,
            (0..n)
                .map(|i| field.add(&self.coeff(field, i), &rhs.coeff(field, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &ExtField, rhs: &ExtPoly) -> ExtPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExtPoly::new(
            field,
            (0..n)
                .map(|i| field.sub(&self.coeff(field, i), &rhs.coeff(field, i)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &ExtField, rhs: &ExtPoly) -> ExtPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExtPoly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = field.mul(a, b);
                out[i + j] = field.add(&out[i + j], &t);
            }
        }
        ExtPoly::new(field, out)
    }

    pub fn scale(&self, field: &ExtField, c: &ExtElem) -> ExtPoly {
        ExtPoly::new(
            field,
            self.coeffs.iter().map(|a| field.mul(a, c)).collect(),
        )
    }

    pub fn monic(&self, field: &ExtField) -> ExtPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = field.inv(&self.leading(field));
        self.scale(field, &inv)
    }

    pub fn divrem(&self, field: &ExtField, d: &ExtPoly) -> (ExtPoly, ExtPoly) {
        assert!(!d.is_zero());
        if self.is_zero() || self.deg() < d.deg() {
            return (ExtPoly::zero(), self.clone());
        }
        let dd = d.deg();
        let inv_lc = field.inv(&d.leading(field));
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = field.mul(&rem[i], &inv_lc);
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = field.mul(&q, dc);
                rem[i - dd + j] = field.sub(&rem[i - dd + j], &t);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (ExtPoly::new(field, quot), ExtPoly::new(field, rem))
    }

    pub fn rem(&self, field: &ExtField, d: &ExtPoly) -> ExtPoly {
        self.divrem(field, d).1
    }

    pub fn gcd(&self, field: &ExtField, other: &ExtPoly) -> ExtPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(field)
        }
    }

    pub fn derivative(&self, field: &ExtField) -> ExtPoly {
        if self.coeffs.len() <= 1 {
            return ExtPoly::zero();
        }
        ExtPoly::new(
            field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let k = PolyModP::constant(field.p, (i as u64) % field.p);
                    field.mul(c, &k)
                })
                .collect(),
        )
    }

    pub fn powmod_big(&self, field: &ExtField, e: &BigUint, m: &ExtPoly) -> ExtPoly {
        let mut base = self.rem(field, m);
        let mut acc = ExtPoly::one(field);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(field, &base).rem(field, m);
            }
            if i + 1 < bits {
                base = base.mul(field, &base).rem(field, m);
            }
        }
        acc
    }

    pub fn eval(&self, field: &ExtField, x: &ExtElem) -> ExtElem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }
}

/// Factor a nonzero polynomial over F_{p^d} into monic irreducibles with
/// multiplicities.
pub fn factor_ext(field: &ExtField, f: &ExtPoly) -> Vec<(ExtPoly, usize)> {
    assert!(!f.is_zero());
    // fast path: prime field, reuse the F_p machinery
    if field.degree() == 1 {
        let g = PolyModP::new(
            field.p,
            f.coeffs.iter().map(|c| c.coeff(0)).collect(),
        );
        return factor_mod_p(&g)
            .into_iter()
            .map(|(h, m)| {
                (
                    ExtPoly::new(
                        field,
                        h.coeffs()
                            .iter()
                            .map(|&c| PolyModP::constant(field.p, c))
                            .collect(),
                    ),
                    m,
                )
            })
            .collect();
    }
    let mut out: Vec<(ExtPoly, usize)> = vec![];
    for (g, mult) in squarefree_parts_ext(field, f) {
        for h in factor_squarefree_ext(field, &g) {
            if let Some(e) = out.iter_mut().find(|(k, _)| *k == h) {
                e.1 += mult;
            } else {
                out.push((h, mult));
            }
        }
    }
    out.sort_by_key(|(g, _)| g.deg());
    out
}

fn squarefree_parts_ext(field: &ExtField, f: &ExtPoly) -> Vec<(ExtPoly, usize)> {
    let f = f.monic(field);
    if f.deg() == 0 {
        return vec![];
    }
    let d = f.derivative(field);
    let p = field.p as usize;
    if d.is_zero() {
        // f = g(X^p); take p-th roots of coefficients
        let mut coeffs = vec![];
        for (i, c) in f.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(field.pth_root(c));
            } else {
                debug_assert!(c.is_zero());
            }
        }
        let root = ExtPoly::new(field, coeffs);
        return squarefree_parts_ext(field, &root)
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out: Vec<(ExtPoly, usize)> = vec![];
    let mut g = f.gcd(field, &d);
    let mut w = f.divrem(field, &g).0;
    let mut i = 1usize;
    while w.deg() > 0 {
        let y = w.gcd(field, &g);
        let z = w.divrem(field, &y).0;
        if z.deg() > 0 {
            out.push((z.monic(field), i));
        }
        i += 1;
        g = g.divrem(field, &y).0;
        w = y;
    }
    if g.deg() > 0 {
        for (h, m) in squarefree_parts_ext(field, &g) {
            if let Some(e) = out.iter_mut().find(|(k, _)| *k == h) {
                e.1 += m;
            } else {
                out.push((h, m));
            }
        }
    }
    out
}

fn factor_squarefree_ext(field: &ExtField, f: &ExtPoly) -> Vec<ExtPoly> {
    let f = f.monic(field);
    let q = field.order();
    let mut out = vec![];
    let mut rest = f;
    let mut x_power = ExtPoly::x(field);
    let mut d = 0usize;
    while rest.deg() > 0 {
        d += 1;
        if rest.deg() < 2 * d {
            out.push(rest.monic(field));
            break;
        }
        x_power = x_power.powmod_big(field, &q, &rest);
        let diff = x_power.sub(field, &ExtPoly::x(field));
        let g = diff.gcd(field, &rest);
        if g.deg() > 0 {
            for h in equal_degree_ext(field, &g, d) {
                out.push(h);
            }
            rest = rest.divrem(field, &g).0;
            x_power = x_power.rem(field, &rest);
        }
    }
    out
}

fn equal_degree_ext(field: &ExtField, f: &ExtPoly, d: usize) -> Vec<ExtPoly> {
    if f.deg() == d {
        return vec![f.monic(field)];
    }
    let p = field.p;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddba11 ^ ((f.deg() as u64) << 8) ^ d as u64);
    loop {
        let a = ExtPoly::new(
            field,
            (0..f.deg())
                .map(|_| {
                    PolyModP::new(
                        p,
                        (0..field.degree()).map(|_| rng.gen_range(0..p)).collect(),
                    )
                })
                .collect(),
        );
        if a.is_zero() || a.deg() == 0 && field.degree() == 1 {
            continue;
        }
        let g = if p == 2 {
            // trace over F_2 of F_{q^d}: Σ a^{2^i}, i < d·[field:F_2]
            let total = d * field.degree();
            let mut t = a.rem(field, f);
            let mut acc = t.clone();
            for _ in 1..total {
                t = t.mul(field, &t).rem(field, f);
                acc = acc.add(field, &t);
            }
            acc.gcd(field, f)
        } else {
            let e = (field.order().pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.powmod_big(field, &e, f);
            let b1 = b.sub(field, &ExtPoly::one(field));
            b1.gcd(field, f)
        };
        if g.deg() > 0 && g.deg() < f.deg() {
            let mut out = equal_degree_ext(field, &g, d);
            out.extend(equal_degree_ext(field, &f.divrem(field, &g).0, d));
            return out;
        }
    }
}

/// Roots (with multiplicity) of f in F_{p^d}, returned as residue elements.
pub fn roots_ext(field: &ExtField, f: &ExtPoly) -> Vec<(ExtElem, usize)> {
    factor_ext(field, f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| {
            let c0 = g.coeff(field, 0);
            let c1 = g.coeff(field, 1);
            let root = field.sub(&field.zero(), &field.mul(&c0, &field.inv(&c1)));
            (root, m)
        })
        .collect()
}

impl std::fmt::Debug for ExtPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExtPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", c.coeffs())?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> ExtField {
        // F_9 = F_3[z]/(z² + 1)
        ExtField::new(PolyModP::new(3, vec![1, 0, 1]))
    }

    #[test]
    fn field_arithmetic_f9() {
        let k = f9();
        let z = k.generator_residue();
        // z² = −1 = 2
        let z2 = k.mul(&z, &z);
        assert_eq!(z2, PolyModP::constant(3, 2));
        let inv = k.inv(&z);
        assert_eq!(k.mul(&z, &inv), k.one());
        // multiplicative order of z divides 8
        let e = BigUint::from(8u32);
        assert_eq!(k.pow(&z, &e), k.one());
    }

    #[test]
    fn factor_splits_frobenius_conjugates() {
        // X² + 1 = (X − z)(X + z) over F_9
        let k = f9();
        let f = ExtPoly::new(&k, vec![k.one(), k.zero(), k.one()]);
        let fac = factor_ext(&k, &f);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
        let roots = roots_ext(&k, &f);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn repeated_factor_over_extension() {
        let k = f9();
        let z = k.generator_residue();
        // (X − z)²
        let lin = ExtPoly::new(&k, vec![k.sub(&k.zero(), &z), k.one()]);
        let f = lin.mul(&k, &lin);
        let fac = factor_ext(&k, &f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 2);
        assert_eq!(fac[0].0.deg(), 1);
    }

    #[test]
    fn prime_field_fast_path() {
        let k = ExtField::prime(5);
        // X² − 1 over F_5
        let f = ExtPoly::new(
            &k,
            vec![PolyModP::constant(5, 4), k.zero(), k.one()],
        );
        let fac = factor_ext(&k, &f);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn factorization_over_f8_char2() {
        // F_8 = F_2[z]/(z³ + z + 1); factor X² + X + 1 (irreducible over F_2,
        // stays irreducible over F_8 since gcd(2,3)=1)
        let k = ExtField::new(PolyModP::new(2, vec![1, 1, 0, 1]));
        let f = ExtPoly::new(&k, vec![k.one(), k.one(), k.one()]);
        let fac = factor_ext(&k, &f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.deg(), 2);
        // X² + z X: factors X(X + z)
        let z = k.generator_residue();
        let g = ExtPoly::new(&k, vec![k.zero(), z.clone(), k.one()]);
        let fac = factor_ext(&k, &g);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(h, _)| h.deg() == 1));
    }
}
