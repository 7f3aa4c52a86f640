use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{BigRational, IntPoly};

/// Dense bivariate polynomial over the integers, indexed by (t-degree, X-degree).
///
/// Row i is the X-coefficient polynomial of t^i; the outermost rows are trimmed.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPoly {
    rows: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<IntPoly>) -> Self {
        while rows.last().map_or(false, |r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly { rows: vec![] }
    }

    /// A(X) − t·B(X), the shape of both families in use.
    pub fn linear_in_t(a: IntPoly, b: IntPoly) -> Self {
        BiPoly::new(vec![a, -&b])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[IntPoly] {
        &self.rows
    }

    pub fn deg_t(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    /// Coefficient of t^i as a polynomial in X.
    pub fn row(&self, i: usize) -> IntPoly {
        self.rows.get(i).cloned().unwrap_or_else(IntPoly::zero)
    }

    /// Leading X-coefficient as a polynomial in t.
    pub fn leading_x_in_t(&self) -> IntPoly {
        let dx = self.deg_x();
        IntPoly::new(self.rows.iter().map(|r| r.coeff(dx)).collect())
    }

    /// gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for r in &self.rows {
            g = g.gcd(&r.content());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content removed, sign fixed so the (highest t, highest X) coefficient is positive.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut c = self.content();
        if self.rows.last().unwrap().leading().is_negative() {
            c = -c;
        }
        BiPoly::new(
            self.rows
                .iter()
                .map(|r| IntPoly::new(r.coeffs().iter().map(|a| a / &c).collect()))
                .collect(),
        )
    }

    /// Specialize t ↦ k with integer k.
    pub fn eval_t(&self, k: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(k) + r;
        }
        acc
    }

    /// Specialize t ↦ a/b in lowest terms and clear denominators:
    /// returns b^{deg_t}·f(a/b, X) ∈ Z[X].
    pub fn eval_t_rational(&self, t0: &BigRational) -> IntPoly {
        let a = t0.numer();
        let b = t0.denom();
        let d = self.deg_t();
        let mut acc = IntPoly::zero();
        let mut apow = BigInt::one();
        let mut bpows = vec![BigInt::one()];
        for _ in 0..d {
            bpows.push(bpows.last().unwrap() * b);
        }
        for (i, r) in self.rows.iter().enumerate() {
            let c = &apow * &bpows[d - i];
            acc = &acc + &r.scale(&c);
            apow *= a;
        }
        acc
    }

    /// Substitute t = num(u)/den(u) and clear denominators:
    /// den(u)^{deg_t}·f(num/den, X), content removed and sign-normalized.
    pub fn substitute_t(&self, num: &IntPoly, den: &IntPoly) -> BiPoly {
        assert!(!den.is_zero(), "zero denominator substitution");
        let d = self.deg_t();
        let mut denpows = vec![IntPoly::one()];
        for _ in 0..d {
            let next = denpows.last().unwrap() * den;
            denpows.push(next);
        }
        // accumulate rows over u
        let mut rows: Vec<IntPoly> = vec![];
        let mut numpow = IntPoly::one();
        for (i, xpoly) in self.rows.iter().enumerate() {
            let upoly = &numpow * &denpows[d - i]; // coefficient in u
            for (k, uc) in upoly.coeffs().iter().enumerate() {
                if uc.is_zero() {
                    continue;
                }
                while rows.len() <= k {
                    rows.push(IntPoly::zero());
                }
                rows[k] = &rows[k] + &xpoly.scale(uc);
            }
            numpow = &numpow * num;
        }
        BiPoly::new(rows).normalized()
    }

    /// Partial derivative with respect to X.
    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(self.rows.iter().map(|r| r.derivative()).collect())
    }

    /// Resultant with respect to X as a polynomial in t, by evaluation and
    /// exact Lagrange interpolation at integer nodes avoiding leading-term zeros.
    pub fn resultant_x(&self, other: &BiPoly) -> IntPoly {
        assert!(!self.is_zero() && !other.is_zero());
        let bound = self.deg_x() * other.deg_t() + other.deg_x() * self.deg_t();
        let npoints = bound + 1;
        let lc_f = self.leading_x_in_t();
        let lc_g = other.leading_x_in_t();
        let mut xs: Vec<BigInt> = vec![];
        let mut ys: Vec<BigInt> = vec![];
        let mut k = 0i64;
        while xs.len() < npoints {
            let t = BigInt::from(k);
            // alternate 0, 1, -1, 2, -2, ...
            k = if k > 0 { -k } else { -k + 1 };
            if lc_f.eval(&t).is_zero() || lc_g.eval(&t).is_zero() {
                continue;
            }
            let fv = self.eval_t(&t);
            let gv = other.eval_t(&t);
            ys.push(fv.resultant(&gv));
            xs.push(t);
        }
        lagrange_interpolate(&xs, &ys)
    }

    /// Discriminant with respect to X as a polynomial in t:
    /// (−1)^{D(D−1)/2}·res_X(f, ∂f/∂X)/lc_X(f), exact in Z[t].
    pub fn discriminant_x(&self) -> IntPoly {
        let d = self.deg_x();
        assert!(d >= 1);
        let r = self.resultant_x(&self.derivative_x());
        let signed = if (d * (d - 1) / 2) % 2 == 1 { -&r } else { r };
        signed
            .divides_exactly(&self.leading_x_in_t())
            .expect("res(f, f') divisible by lc_X(f)")
    }
}

fn lagrange_interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial Π_{j≠i} (X - x_j) / (x_i - x_j)
        let mut numer = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); numer.len() + 1];
            let xj = BigRational::from_integer(xs[j].clone());
            for (k, c) in numer.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            numer = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, c) in numer.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let coeffs: Vec<BigInt> = acc
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolation produced non-integer coefficient");
            c.to_integer()
        })
        .collect();
    IntPoly::new(coeffs)
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, r) in self.rows.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "({})", r)?,
                1 => write!(f, "t·({})", r)?,
                _ => write!(f, "t^{}·({})", i, r)?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    /// f(t, X) = 7³X⁷(X+7) − t(X²+X+7)
    fn sl27_base() -> BiPoly {
        let a = &IntPoly::monomial(BigInt::from(343), 7) * &p(&[7, 1]);
        let b = p(&[7, 1, 1]);
        BiPoly::linear_in_t(a, b)
    }

    #[test]
    fn substitute_simple() {
        // X² − t at t = u³ → X² − u³
        let f = BiPoly::linear_in_t(p(&[0, 0, 1]), IntPoly::one());
        let g = f.substitute_t(&p(&[0, 0, 0, 1]), &IntPoly::one());
        assert_eq!(g.row(0), p(&[0, 0, 1]));
        assert_eq!(g.row(3), p(&[-1]));
        assert_eq!(g.deg_t(), 3);
    }

    #[test]
    fn substitute_with_scalar() {
        // X⁷ − 7t(X−1) at t = 3s² → X⁷ − 21s²(X−1)
        let f = BiPoly::linear_in_t(IntPoly::monomial(BigInt::one(), 7), p(&[-7, 7]));
        let g = f.substitute_t(&p(&[0, 0, 3]), &IntPoly::one());
        assert_eq!(g.row(0), IntPoly::monomial(BigInt::one(), 7));
        assert_eq!(g.row(2), p(&[21, -21]));
    }

    #[test]
    fn chain_substitution_gives_seventh_power_family() {
        // t = 1/s², then s = u³, cleared: (7u²)³X⁷(X+7) − (X²+X+7)
        let f = sl27_base();
        let in_s = f.substitute_t(&IntPoly::one(), &p(&[0, 0, 1]));
        let in_u = in_s.substitute_t(&p(&[0, 0, 0, 1]), &IntPoly::one());
        let mut expect_rows = vec![IntPoly::zero(); 7];
        expect_rows[0] = -&p(&[7, 1, 1]);
        expect_rows[6] = &IntPoly::monomial(BigInt::from(343), 7) * &p(&[7, 1]);
        let expected = BiPoly::new(expect_rows).normalized();
        assert_eq!(in_u, expected);
    }

    #[test]
    fn discriminant_in_t_of_base_family() {
        // disc_X(f)(t) has roots exactly t = 0 and t = −7¹⁰/108
        let f = sl27_base();
        let d = f.discriminant_x();
        // d(t) = c · t^7 · (108 t + 7^10)  up to checking by evaluation
        let t0_num = BigInt::from(-(7i64.pow(10)));
        let at_zero = d.eval(&BigInt::zero());
        assert!(at_zero.is_zero());
        // root at -7^10/108: evaluate 108^deg * d(-7^10/108) via homogenized form
        let hom = d.eval_homogenized(&t0_num, &BigInt::from(108));
        assert!(hom.is_zero());
        // nonzero somewhere else
        assert!(!d.eval(&BigInt::from(1)).is_zero());
    }

    #[test]
    fn eval_t_rational_clears_denominator() {
        let f = sl27_base();
        let t0 = BigRational::new(BigInt::from(-(7i64.pow(10))), BigInt::from(108));
        let fiber = f.eval_t_rational(&t0);
        // 108·f(t0, X): leading coefficient 108·343
        assert_eq!(fiber.leading(), BigInt::from(108 * 343));
        assert_eq!(fiber.deg(), 8);
    }
}
