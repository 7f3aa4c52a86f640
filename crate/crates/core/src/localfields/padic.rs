use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::IntPoly;

use super::gf::PolyModP;
use super::gfext::{ExtElem, ExtField, ExtPoly};
use super::LocalFieldError;

/// A p-adic integer approximated to an explicit precision: value mod p^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicElt {
    pub p: u64,
    pub value: BigInt,
    pub precision: u32,
}

impl PadicElt {
    pub fn new(p: u64, value: BigInt, precision: u32) -> Self {
        let modulus = BigInt::from(p).pow(precision);
        PadicElt {
            p,
            value: value.mod_floor(&modulus),
            precision,
        }
    }

    pub fn valuation(&self) -> Option<u32> {
        if self.value.is_zero() {
            return None; // zero to working precision
        }
        let bp = BigInt::from(self.p);
        let mut v = 0u32;
        let mut m = self.value.clone();
        while (&m % &bp).is_zero() {
            m /= &bp;
            v += 1;
        }
        Some(v)
    }
}

/// The unramified coefficient ring W = Z[z]/(modulus) with residue field
/// F_p[z]/(modulus mod p); degree 1 (modulus = z) is Z itself.
///
/// Elements are integer polynomials in z of degree < d with exact
/// coefficients; reduction mod p^N is applied only where noted.
pub struct UnramRing {
    pub p: u64,
    pub modulus: IntPoly,
    pub residue: ExtField,
}

pub type WElt = IntPoly;

impl UnramRing {
    /// W = Z, as the degree-1 ring Z[z]/(z).
    pub fn base(p: u64) -> Self {
        UnramRing {
            p,
            modulus: IntPoly::x(),
            residue: ExtField::prime(p),
        }
    }

    /// W = Z[z]/(u) for u monic, irreducible mod p.
    pub fn extension(p: u64, modulus: IntPoly) -> Self {
        let residue = ExtField::new(PolyModP::from_int_poly(&modulus, p));
        UnramRing {
            p,
            modulus,
            residue,
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn welt_from_int(&self, n: BigInt) -> WElt {
        IntPoly::constant(n)
    }

    /// Multiply in W (reduce mod the monic modulus; exact over Z).
    pub fn welt_mul(&self, a: &WElt, b: &WElt) -> WElt {
        self.welt_rem(&(a * b))
    }

    fn welt_rem(&self, a: &WElt) -> WElt {
        if a.deg() < self.degree() || a.is_zero() {
            return a.clone();
        }
        divrem_monic(a, &self.modulus).1
    }

    /// v_p of a W-element: min coefficient valuation; None for exact zero.
    pub fn welt_val(&self, a: &WElt) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let bp = BigInt::from(self.p);
        let mut best: Option<u32> = None;
        for c in a.coeffs() {
            if c.is_zero() {
                continue;
            }
            let mut v = 0u32;
            let mut m = c.abs();
            while (&m % &bp).is_zero() && best.map_or(true, |b| v < b) {
                m /= &bp;
                v += 1;
            }
            best = Some(best.map_or(v, |b| b.min(v)));
            if best == Some(0) {
                break;
            }
        }
        best
    }

    pub fn welt_reduce(&self, a: &WElt) -> ExtElem {
        self.residue.reduce(&PolyModP::from_int_poly(a, self.p))
    }

    /// Lift a residue-field element to W with coefficients in [0, p).
    pub fn welt_lift(&self, a: &ExtElem) -> WElt {
        IntPoly::new(a.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn welt_mod_pow(&self, a: &WElt, n: u32) -> WElt {
        let m = BigInt::from(self.p).pow(n);
        IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(&m)).collect())
    }

    /// Divide by p^k; panics if not exactly divisible.
    pub fn welt_div_pow(&self, a: &WElt, k: u32) -> WElt {
        if a.is_zero() {
            return a.clone();
        }
        let m = BigInt::from(self.p).pow(k);
        IntPoly::new(
            a.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&m);
                    assert!(r.is_zero(), "inexact division by p^{k}");
                    q
                })
                .collect(),
        )
    }
}

/// Integer-exact division by a monic polynomial.
pub fn divrem_monic(f: &IntPoly, m: &IntPoly) -> (IntPoly, IntPoly) {
    debug_assert!(m.leading().is_one(), "divisor must be monic");
    let dm = m.deg();
    if f.is_zero() || f.deg() < dm {
        return (IntPoly::zero(), f.clone());
    }
    let mut rem: Vec<BigInt> = f.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - dm];
    for i in (dm..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        for (j, mc) in m.coeffs().iter().enumerate() {
            let t = &q * mc;
            rem[i - dm + j] -= t;
        }
        quot[i - dm] = q;
    }
    rem.truncate(dm);
    (IntPoly::new(quot), IntPoly::new(rem))
}

/// Precision marker for working polynomials: exact integers, or correct to
/// p^N with Hensel noise beyond.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prec {
    Exact,
    Approx(u32),
}

impl Prec {
    pub fn bound(&self) -> u32 {
        match self {
            Prec::Exact => u32::MAX,
            Prec::Approx(n) => *n,
        }
    }

    pub fn lower(&self, by: u32) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::Approx(n) => Prec::Approx(n.saturating_sub(by)),
        }
    }

    pub fn min_with(&self, n: u32) -> Prec {
        match self {
            Prec::Exact => Prec::Approx(n),
            Prec::Approx(m) => Prec::Approx((*m).min(n)),
        }
    }
}

/// Polynomial over W with an attached precision marker, constant term first.
#[derive(Clone, Debug)]
pub struct WPoly {
    pub coeffs: Vec<WElt>,
    pub prec: Prec,
}

impl WPoly {
    pub fn new(mut coeffs: Vec<WElt>, prec: Prec) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        WPoly { coeffs, prec }
    }

    pub fn from_int_poly(f: &IntPoly) -> Self {
        WPoly {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| IntPoly::constant(c.clone()))
                .collect(),
            prec: Prec::Exact,
        }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> WElt {
        self.coeffs.get(i).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn is_monic(&self, _ring: &UnramRing) -> bool {
        self.coeffs.last().map_or(false, |c| {
            c.degree() == Some(0) && c.leading().is_one()
        })
    }

    pub fn reduce(&self, ring: &UnramRing) -> ExtPoly {
        ExtPoly::new(
            &ring.residue,
            self.coeffs.iter().map(|c| ring.welt_reduce(c)).collect(),
        )
    }

    pub fn add(&self, ring: &UnramRing, rhs: &WPoly) -> WPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let prec = match (self.prec, rhs.prec) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::Approx(a), Prec::Approx(b)) => Prec::Approx(a.min(b)),
        };
        let _ = ring;
        WPoly::new(
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
            prec,
        )
    }

    pub fn mul(&self, ring: &UnramRing, rhs: &WPoly) -> WPoly {
        if self.is_zero() || rhs.is_zero() {
            return WPoly::new(vec![], self.prec);
        }
        let prec = match (self.prec, rhs.prec) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::Approx(a), Prec::Approx(b)) => Prec::Approx(a.min(b)),
        };
        let mut out = vec![IntPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = ring.welt_mul(a, b);
                out[i + j] = &out[i + j] + &t;
            }
        }
        WPoly::new(out, prec)
    }

    /// Substitute X ↦ X + c for c ∈ W; exactness preserved.
    pub fn shift(&self, ring: &UnramRing, c: &WElt) -> WPoly {
        let mut acc: Vec<WElt> = vec![];
        for a in self.coeffs.iter().rev() {
            let mut next = vec![IntPoly::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k + 1] = &next[k + 1] + v;
                let t = ring.welt_mul(v, c);
                next[k] = &next[k] + &t;
            }
            if next.is_empty() {
                next.push(IntPoly::zero());
            }
            next[0] = &next[0] + a;
            acc = next;
        }
        WPoly::new(acc, self.prec)
    }

    /// For monic self with all root valuations ≥ λ: g(p^λ·Y)/p^{λ·deg},
    /// again monic; precision drops by λ·deg.
    pub fn scale_down_monic(&self, ring: &UnramRing, lambda: u32) -> Result<WPoly, LocalFieldError> {
        let d = self.deg() as u32;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            // a_i · p^{λ i − λ d} — requires v(a_i) ≥ λ(d − i)
            let need = lambda * (d - i as u32);
            if !a.is_zero() {
                let v = ring.welt_val(a).unwrap_or(u32::MAX);
                if v < need {
                    return Err(LocalFieldError::PrecisionExhausted);
                }
            }
            out.push(if a.is_zero() {
                a.clone()
            } else {
                ring.welt_div_pow(a, need)
            });
        }
        Ok(WPoly::new(out, self.prec.lower(lambda * d)))
    }

    /// g(p^μ·Y) divided by the minimal coefficient valuation (p-primitive).
    pub fn scale_primitive(&self, ring: &UnramRing, mu: u32) -> WPoly {
        let mut vals = vec![];
        let mut minv = u32::MAX;
        for (i, a) in self.coeffs.iter().enumerate() {
            let v = if a.is_zero() {
                u32::MAX
            } else {
                ring.welt_val(a).unwrap_or(u32::MAX).saturating_add(mu * i as u32)
            };
            vals.push(v);
            minv = minv.min(v);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if a.is_zero() {
                    a.clone()
                } else {
                    let scaled = a.scale(&BigInt::from(ring.p).pow(mu * i as u32));
                    ring.welt_div_pow(&scaled, minv)
                }
            })
            .collect();
        WPoly::new(out, self.prec.lower(minv))
    }

    /// Reduce coefficients mod p^n (working representatives).
    pub fn truncate_mod(&self, ring: &UnramRing, n: u32) -> WPoly {
        WPoly::new(
            self.coeffs.iter().map(|c| ring.welt_mod_pow(c, n)).collect(),
            self.prec.min_with(n),
        )
    }
}

/// Lift an ExtPoly to a WPoly with small non-negative representatives.
pub fn lift_ext_poly(ring: &UnramRing, f: &ExtPoly, prec: Prec) -> WPoly {
    WPoly::new(
        f.coeffs.iter().map(|c| ring.welt_lift(c)).collect(),
        prec,
    )
}

/// Extended gcd over the residue field: returns (g, s, t) with s·a + t·b = g,
/// g monic (or zero).
pub fn ext_gcd(field: &ExtField, a: &ExtPoly, b: &ExtPoly) -> (ExtPoly, ExtPoly, ExtPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = ExtPoly::one(field);
    let mut s1 = ExtPoly::zero();
    let mut t0 = ExtPoly::zero();
    let mut t1 = ExtPoly::one(field);
    while !r1.is_zero() {
        let (q, r) = r0.divrem(field, &r1);
        let s = s0.sub(field, &q.mul(field, &s1));
        let t = t0.sub(field, &q.mul(field, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let lc_inv = field.inv(&r0.leading(field));
    (
        r0.scale(field, &lc_inv),
        s0.scale(field, &lc_inv),
        t0.scale(field, &lc_inv),
    )
}

/// Hensel: split the monic factor with reduction `target` off `f`.
///
/// Requires f̄ = target·cofactor with gcd(target, cofactor) = 1 over the
/// residue field and target monic. Returns (M, T) with M monic, M̄ = target,
/// f ≡ M·T mod p^N.
pub fn split_monic_part(
    ring: &UnramRing,
    f: &WPoly,
    target: &ExtPoly,
    n: u32,
) -> Result<(WPoly, WPoly), LocalFieldError> {
    let k = &ring.residue;
    let fbar = f.reduce(ring);
    let (cof, rem) = fbar.divrem(k, target);
    if !rem.is_zero() {
        return Err(LocalFieldError::Internal(
            "hensel target does not divide reduction".into(),
        ));
    }
    let (g, s, t) = ext_gcd(k, target, &cof);
    if g.deg() != 0 {
        return Err(LocalFieldError::Internal(
            "hensel factors not coprime".into(),
        ));
    }
    // normalize Bezout: s·target + t·cof = 1
    let ginv = k.inv(&g.leading(k));
    let s = s.scale(k, &ginv);
    let t = t.scale(k, &ginv);

    // working values mod p^e, quadratically lifted
    let mut e = 1u32;
    let mut m = lift_ext_poly(ring, target, Prec::Approx(n));
    let mut c = lift_ext_poly(ring, &cof, Prec::Approx(n));
    let mut sv = lift_ext_poly(ring, &s, Prec::Approx(n));
    let mut tv = lift_ext_poly(ring, &t, Prec::Approx(n));
    let fw = f.truncate_mod(ring, n);
    while e < n {
        let e2 = (2 * e).min(n);
        // err = f − m·c mod p^{e2}
        let prod = m.mul(ring, &c);
        let err = sub_mod(ring, &fw, &prod, e2);
        // (q, r) = divrem(sv·err, m); m monic
        let se = sv.mul(ring, &err).truncate_mod(ring, e2);
        let (q, r) = wpoly_divrem_monic(ring, &se, &m, e2);
        // m* = m + r ; c* = c + tv·err + q·c
        m = add_mod(ring, &m, &r, e2);
        let te = tv.mul(ring, &err);
        let qc = q.mul(ring, &c);
        c = add_mod(ring, &add_mod(ring, &c, &te, e2), &qc, e2);
        // refresh Bezout to the new precision
        let sm = sv.mul(ring, &m);
        let tc = tv.mul(ring, &c);
        let one = WPoly::new(vec![IntPoly::one()], Prec::Approx(n));
        let b = sub_mod(ring, &add_mod(ring, &sm, &tc, e2), &one, e2);
        let sb = sv.mul(ring, &b).truncate_mod(ring, e2);
        let (cq, d) = wpoly_divrem_monic(ring, &sb, &m, e2);
        sv = sub_mod(ring, &sv, &d, e2);
        let tb = tv.mul(ring, &b);
        let cqc = cq.mul(ring, &c);
        tv = sub_mod(ring, &sub_mod(ring, &tv, &tb, e2), &cqc, e2);
        e = e2;
    }
    let m = WPoly {
        prec: Prec::Approx(n),
        ..m
    };
    let c = WPoly {
        prec: Prec::Approx(n),
        ..c
    };
    Ok((m, c))
}

fn add_mod(ring: &UnramRing, a: &WPoly, b: &WPoly, e: u32) -> WPoly {
    a.add(ring, b).truncate_mod(ring, e)
}

fn sub_mod(ring: &UnramRing, a: &WPoly, b: &WPoly, e: u32) -> WPoly {
    let neg = WPoly::new(b.coeffs.iter().map(|c| -c).collect(), b.prec);
    a.add(ring, &neg).truncate_mod(ring, e)
}

/// Division with remainder by a monic WPoly, coefficients mod p^e.
fn wpoly_divrem_monic(ring: &UnramRing, f: &WPoly, m: &WPoly, e: u32) -> (WPoly, WPoly) {
    debug_assert!(m.is_monic(ring));
    let dm = m.deg();
    if f.is_zero() || f.deg() < dm {
        return (WPoly::new(vec![], f.prec), f.clone());
    }
    let mut rem: Vec<WElt> = f.coeffs.clone();
    let mut quot = vec![IntPoly::zero(); rem.len() - dm];
    for i in (dm..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        for (j, mc) in m.coeffs.iter().enumerate() {
            let t = ring.welt_mul(&q, mc);
            rem[i - dm + j] = ring.welt_mod_pow(&(&rem[i - dm + j] - &t), e);
        }
        quot[i - dm] = q;
    }
    rem.truncate(dm);
    (
        WPoly::new(quot, f.prec),
        WPoly::new(rem, f.prec),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_monic_exact() {
        let f = IntPoly::from_i64(&[2, 3, 1]); // (X+1)(X+2)
        let m = IntPoly::from_i64(&[1, 1]);
        let (q, r) = divrem_monic(&f, &m);
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn hensel_split_lifts_factorization() {
        // f = (X − 1)(X − 2)(X² + 1) over Z, p = 7, split off (X − 1)
        let ring = UnramRing::base(7);
        let f = {
            let a = IntPoly::from_i64(&[-1, 1]);
            let b = IntPoly::from_i64(&[-2, 1]);
            let c = IntPoly::from_i64(&[1, 0, 1]);
            &(&a * &b) * &c
        };
        let fw = WPoly::from_int_poly(&f);
        let k = &ring.residue;
        let target = ExtPoly::new(k, vec![PolyModP::constant(7, 6), PolyModP::constant(7, 1)]);
        let (m, t) = split_monic_part(&ring, &fw, &target, 8).unwrap();
        assert_eq!(m.deg(), 1);
        assert_eq!(t.deg(), 3);
        // product reconstructs f mod 7^8
        let prod = m.mul(&ring, &t).truncate_mod(&ring, 8);
        let fexp = fw.truncate_mod(&ring, 8);
        for i in 0..=3 {
            assert_eq!(prod.coeff(i), fexp.coeff(i), "coefficient {i}");
        }
        // the lifted root is ≡ 1 mod 7^8 (the true factor X − 1)
        let root = m.coeff(0);
        let modulus = BigInt::from(7u64).pow(8);
        assert_eq!(
            root.coeff(0).mod_floor(&modulus),
            (-BigInt::one()).mod_floor(&modulus)
        );
    }

    #[test]
    fn hensel_split_over_extension_ring() {
        // W = Z[z]/(z² + 1), p = 3; f = X² + 1 splits as (X − z)(X + z)
        let ring = UnramRing::extension(3, IntPoly::from_i64(&[1, 0, 1]));
        let f = WPoly::from_int_poly(&IntPoly::from_i64(&[1, 0, 1]));
        let k = &ring.residue;
        // target X − z̄
        let zbar = k.generator_residue();
        let neg_z = k.sub(&k.zero(), &zbar);
        let target = ExtPoly::new(k, vec![neg_z, k.one()]);
        let (m, t) = split_monic_part(&ring, &f, &target, 6).unwrap();
        assert_eq!(m.deg(), 1);
        assert_eq!(t.deg(), 1);
        let prod = m.mul(&ring, &t).truncate_mod(&ring, 6);
        let fexp = f.truncate_mod(&ring, 6);
        for i in 0..=2 {
            assert_eq!(prod.coeff(i), fexp.coeff(i));
        }
    }

    #[test]
    fn scale_down_monic_tracks_valuations() {
        let ring = UnramRing::base(5);
        // g = X² − 25: roots ±5, valuation 1
        let g = WPoly::from_int_poly(&IntPoly::from_i64(&[-25, 0, 1]));
        let h = g.scale_down_monic(&ring, 1).unwrap();
        // h = Y² − 1
        assert_eq!(h.coeff(0), IntPoly::from_i64(&[-1]));
        assert_eq!(h.coeff(2), IntPoly::from_i64(&[1]));
    }
}
