use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BigRational;

/// Dense univariate polynomial over the integers, constant term first.
///
/// The zero polynomial is the empty coefficient list; otherwise the last
/// entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial a·X^k.
    pub fn monomial(a: BigInt, k: usize) -> Self {
        if a.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = a;
        IntPoly { coeffs }
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention deg 0 = 0, for size arithmetic on nonzero input.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Homogenized evaluation: with d = deg f, computes Σ c_i a^i b^{d−i}.
    pub fn eval_homogenized(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let d = match self.degree() {
            Some(d) => d,
            None => return BigInt::zero(),
        };
        let mut bpows = vec![BigInt::one()];
        for _ in 0..d {
            bpows.push(bpows.last().unwrap() * b);
        }
        let mut acc = BigInt::zero();
        let mut apow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &apow * &bpows[d - i];
            apow *= a;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitution X ↦ X + c.
    pub fn shift(&self, c: &BigInt) -> IntPoly {
        let mut acc: Vec<BigInt> = vec![];
        for a in self.coeffs.iter().rev() {
            // acc = acc·(X + c) + a
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k + 1] += v;
                next[k] += v * c;
            }
            next[0] += a;
            acc = next;
        }
        IntPoly::new(acc)
    }

    /// Substitution X ↦ cX.
    pub fn stretch(&self, c: &BigInt) -> IntPoly {
        let mut pow = BigInt::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &pow;
                pow = &pow * c;
                v
            })
            .collect();
        IntPoly::new(coeffs)
    }

    /// Coefficient reversal X^d·f(1/X).
    pub fn reversal(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// Exact division over Z; panics if not exactly divisible.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        self.divides_exactly(d).expect("div_exact: not divisible")
    }

    /// Some(quotient) if d divides self with integer coefficients.
    pub fn divides_exactly(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (q, r) = RatPoly::from_int(self).divrem(&RatPoly::from_int(d));
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    /// Pseudo-remainder: prem(f, g) with lc(g)^{deg f − deg g + 1}·f = q·g + prem.
    pub fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        assert!(!g.is_zero());
        let dg = g.deg();
        let lcg = g.leading();
        let mut r = self.clone();
        let mut e: i64 = if !r.is_zero() && r.deg() >= dg {
            (r.deg() - dg + 1) as i64
        } else {
            0
        };
        while !r.is_zero() && r.deg() >= dg {
            let shift = r.deg() - dg;
            let lr = r.leading();
            let mut t = vec![BigInt::zero(); shift];
            t.extend(g.coeffs.iter().map(|c| c * &lr));
            r = &IntPoly::new(r.coeffs.iter().map(|c| c * &lcg).collect())
                - &IntPoly::new(t);
            e -= 1;
        }
        for _ in 0..e {
            r = r.scale(&lcg);
        }
        r
    }

    /// Polynomial gcd over Z, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        RatPoly::from_int(self)
            .gcd(&RatPoly::from_int(other))
            .to_int_primitive()
    }

    /// Resultant via the subresultant polynomial remainder sequence.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        subresultant_resultant(self, other)
    }

    /// disc(f) = (−1)^{d(d−1)/2}·res(f, f′)/lc(f).
    pub fn discriminant(&self) -> BigInt {
        let d = self.deg();
        assert!(d >= 1, "discriminant of a constant polynomial");
        let r = self.resultant(&self.derivative());
        let lc = self.leading();
        let signed = if (d * (d - 1) / 2) % 2 == 1 { -r } else { r };
        let (q, rem) = signed.div_rem(&lc);
        assert!(rem.is_zero(), "resultant not divisible by leading coefficient");
        q
    }

    /// Squarefree decomposition over Q: pairs (g, m) with g primitive squarefree,
    /// pairwise coprime, and f ~ Π g^m up to a rational constant.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = RatPoly::from_int(self);
        if f.deg() == 0 {
            return vec![];
        }
        let mut out = vec![];
        let mut g = f.gcd(&f.derivative());
        let mut w = f.divrem(&g).0;
        let mut i = 1usize;
        while w.deg() > 0 {
            let y = w.gcd(&g);
            let z = w.divrem(&y).0;
            if z.deg() > 0 {
                out.push((z.to_int_primitive(), i));
            }
            i += 1;
            g = g.divrem(&y).0;
            w = y;
        }
        out
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        self.is_zero() || self.gcd(&self.derivative()).deg() == 0
    }

    /// f(num(u)/den(u)) · den(u)^{deg f}, exact in Z[u].
    pub fn compose_rational(&self, num: &IntPoly, den: &IntPoly) -> IntPoly {
        let d = match self.degree() {
            Some(d) => d,
            None => return IntPoly::zero(),
        };
        let mut denpows = vec![IntPoly::one()];
        for _ in 0..d {
            let next = denpows.last().unwrap() * den;
            denpows.push(next);
        }
        let mut acc = IntPoly::zero();
        let mut numpow = IntPoly::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = &numpow * &denpows[d - i];
            acc = &acc + &term.scale(c);
            numpow = &numpow * num;
        }
        acc
    }
}

/// Internal rational-coefficient helper for field-exact division and gcd.
#[derive(Clone)]
pub(crate) struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub(crate) fn from_int(f: &IntPoly) -> Self {
        RatPoly {
            coeffs: f
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub(crate) fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly { coeffs: vec![] };
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub(crate) fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (RatPoly { coeffs: vec![] }, self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        let lc = d.coeffs.last().unwrap().clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub(crate) fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub(crate) fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.coeffs.last().unwrap().clone();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub(crate) fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    /// Clear denominators and return the primitive integer polynomial.
    pub(crate) fn to_int_primitive(&self) -> IntPoly {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let denr = BigRational::from_integer(den);
        IntPoly::new(self.coeffs.iter().map(|c| (c * &denr).to_integer()).collect()).primitive()
    }
}

/// Resultant via the subresultant PRS (Cohen, Alg. 3.3.7).
fn subresultant_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    if f.deg() == 0 {
        return f.leading().pow(g.deg() as u32);
    }
    if g.deg() == 0 {
        return g.leading().pow(f.deg() as u32);
    }
    let mut s = BigInt::one();
    let (mut a, mut b) = (f.clone(), g.clone());
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let ca = a.content();
    let cb = b.content();
    let t = ca.pow(b.deg() as u32) * cb.pow(a.deg() as u32);
    a = IntPoly::new(a.coeffs.iter().map(|c| c / &ca).collect());
    b = IntPoly::new(b.coeffs.iter().map(|c| c / &cb).collect());
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = &gg * h.pow(delta);
        b = IntPoly::new(r.coeffs.iter().map(|c| c / &denom).collect());
        gg = a.leading();
        h = if delta == 0 {
            h
        } else {
            let num = gg.pow(delta);
            let den = h.pow(delta - 1);
            &num / &den
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let num = b.leading().pow(da);
            let den = h.pow(da.saturating_sub(1));
            let hh = &num / &den;
            return s * t * hh;
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 => {
                    if a.is_one() {
                        write!(f, "X")?
                    } else {
                        write!(f, "{}X", a)?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "X^{}", i)?
                    } else {
                        write!(f, "{}X^{}", a, i)?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in strings {
            coeffs.push(s.parse::<BigInt>().map_err(D::Error::custom)?);
        }
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    /// Resultant oracle: Bareiss fraction-free elimination of the Sylvester matrix.
    fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (m, n) = (f.deg(), g.deg());
        if f.is_zero() || g.is_zero() {
            return BigInt::zero();
        }
        if m == 0 {
            return f.leading().pow(n as u32);
        }
        if n == 0 {
            return g.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                mat[i][i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                mat[n + i][i + j] = g.coeff(n - j);
            }
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    let (q, r) = num.div_rem(&prev);
                    assert!(r.is_zero());
                    mat[i][j] = q;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        let det = mat[size - 1][size - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    #[test]
    fn trims_trailing_zeros() {
        let f = p(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn disc_of_quadratics() {
        // b^2 - 4ac oracle
        let f = p(&[7, 1, 1]); // X^2 + X + 7
        assert_eq!(f.discriminant(), BigInt::from(1 - 4 * 7));
        let g = p(&[-1, 0, 1]); // X^2 - 1
        assert_eq!(g.discriminant(), BigInt::from(4));
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let cases = [
            (p(&[7, 1, 1]), p(&[1, 2])),
            (p(&[-1, 0, 0, 2, 5]), p(&[3, -1, 4])),
            (p(&[2, 0, 1, 1]), p(&[-3, 1, 0, 0, 1])),
            (p(&[-7, 0, -1, -1, 0, 0, 0, 2401, 343]), p(&[1, 5, -2, 1])),
        ];
        for (f, g) in cases {
            assert_eq!(f.resultant(&g), sylvester_resultant(&f, &g), "f={f} g={g}");
            assert_eq!(g.resultant(&f), sylvester_resultant(&g, &f), "swapped f={f} g={g}");
        }
    }

    #[test]
    fn resultant_sign_and_common_roots() {
        let f = p(&[-1, 1]); // X - 1
        let g = p(&[-2, 1]); // X - 2
        assert_eq!(f.resultant(&g), BigInt::from(-1));
        assert_eq!(g.resultant(&f), BigInt::from(1));
        let h = &f * &g;
        assert_eq!(h.resultant(&f), BigInt::zero());
    }

    #[test]
    fn gcd_detects_common_factor() {
        let f = &p(&[-1, 1]) * &p(&[3, 1, 1]);
        let g = &p(&[-1, 1]) * &p(&[5, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
    }

    #[test]
    fn shift_and_stretch() {
        let f = p(&[0, 0, 1]); // X^2
        assert_eq!(f.shift(&BigInt::from(1)), p(&[1, 2, 1]));
        assert_eq!(f.stretch(&BigInt::from(3)), p(&[0, 0, 9]));
    }

    #[test]
    fn squarefree_split() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 1]); // (X-1)^2 (X+1)
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&(p(&[1, 1]), 1)));
        assert!(parts.contains(&(p(&[-1, 1]), 2)));
    }

    #[test]
    fn homogenized_eval_matches() {
        let f = p(&[7, 0, 1]); // X^2 + 7; f~(a,b) = a^2 + 7 b^2
        assert_eq!(
            f.eval_homogenized(&BigInt::from(3), &BigInt::from(2)),
            BigInt::from(9 + 28)
        );
    }

    #[test]
    fn compose_rational_clears_denominator() {
        // (X^2 - 1) at X = u/2, cleared by 2^2: u^2 - 4
        let g = p(&[-1, 0, 1]);
        let composed = g.compose_rational(&IntPoly::x(), &IntPoly::constant(BigInt::from(2)));
        assert_eq!(composed, p(&[-4, 0, 1]));
        // substitution with trivial denominator
        let cubed = g.compose_rational(&p(&[0, 0, 0, 1]), &IntPoly::one());
        assert_eq!(cubed, p(&[-1, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn json_round_trip() {
        let f = p(&[-7, 0, 343]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["-7","0","343"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
