use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::localfields::gf::{factor_mod_p, PolyModP};
use crate::localfields::padic::{split_monic_part, UnramRing, WPoly};

use super::{ExactAlgError, IntPoly, Result};

const DEGREE_CAP: usize = 10;

/// Factorization over Q into primitive irreducible integer polynomials with
/// positive leading coefficient: squarefree split, factorization modulo a
/// good prime, Hensel lift, subset recombination.
///
/// Monomial factors X^k are split off before the degree cap (of 10) applies.
pub fn factor_over_q(f: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if f.is_zero() || f.deg() == 0 {
        return Ok(vec![]);
    }
    let mut f = f.primitive();
    let mut out: Vec<(IntPoly, usize)> = vec![];
    // strip X^k
    let k = f
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    if k > 0 {
        out.push((IntPoly::x(), k));
        f = IntPoly::new(f.coeffs()[k..].to_vec());
    }
    if f.deg() > DEGREE_CAP {
        return Err(ExactAlgError::DegreeCapExceeded(f.deg(), DEGREE_CAP));
    }
    for (g, mult) in f.squarefree_decomposition() {
        for h in factor_squarefree_primitive(&g) {
            push(&mut out, h, mult);
        }
    }
    out.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs().to_vec()).cmp(&(b.0.deg(), b.0.coeffs().to_vec()))
    });
    Ok(out)
}

fn push(out: &mut Vec<(IntPoly, usize)>, g: IntPoly, mult: usize) {
    if let Some(e) = out.iter_mut().find(|(h, _)| *h == g) {
        e.1 += mult;
    } else {
        out.push((g, mult));
    }
}

/// Zassenhaus factorization of a primitive squarefree polynomial.
fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f.primitive()];
    }
    let lc = f.leading();
    // good prime: odd, lc a unit, reduction squarefree
    let mut p = 3u64;
    let (p, modp_factors) = loop {
        if !(&lc % BigInt::from(p)).is_zero() {
            let fp = PolyModP::from_int_poly(f, p);
            if fp.deg() == n && fp.gcd(&fp.derivative()).deg() == 0 {
                let factors: Vec<PolyModP> = factor_mod_p(&fp)
                    .into_iter()
                    .map(|(g, m)| {
                        debug_assert_eq!(m, 1);
                        g
                    })
                    .collect();
                break (p, factors);
            }
        }
        p = next_prime(p);
    };
    if modp_factors.len() == 1 {
        return vec![f.primitive()];
    }
    // Landau–Mignotte style bound on coefficients of lc·(any factor)
    let norm2: BigInt = {
        let s: BigInt = f.coeffs().iter().map(|c| c * c).sum();
        s.sqrt() + 1
    };
    let bound: BigInt = (BigInt::one() << (n + 1)) * &norm2 * lc.abs();
    let mut prec = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= BigInt::from(2) * &bound {
        pk *= BigInt::from(p);
        prec += 1;
    }
    // lift the monic mod-p factors to mod p^prec
    let ring = UnramRing::base(p);
    let lifted = lift_all(&ring, f, &modp_factors, prec);
    recombine(f, &lifted, p, prec)
}

fn lift_all(
    ring: &UnramRing,
    f: &IntPoly,
    factors: &[PolyModP],
    prec: u32,
) -> Vec<IntPoly> {
    let k = &ring.residue;
    let mut rest = WPoly::from_int_poly(f);
    let mut out = vec![];
    for (idx, g) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            // last cofactor: divide the lifted product out of f mod p^prec
            // by taking the remaining monic part directly
            let target = crate::localfields::gfext::ExtPoly::new(
                k,
                g.coeffs()
                    .iter()
                    .map(|&c| PolyModP::constant(ring.p, c))
                    .collect(),
            );
            let (m, _) = split_monic_part(ring, &rest, &target, prec)
                .expect("coprime lift of final factor");
            out.push(wpoly_to_int(&m));
            break;
        }
        let target = crate::localfields::gfext::ExtPoly::new(
            k,
            g.coeffs()
                .iter()
                .map(|&c| PolyModP::constant(ring.p, c))
                .collect(),
        );
        let (m, t) = split_monic_part(ring, &rest, &target, prec).expect("coprime lift");
        out.push(wpoly_to_int(&m));
        rest = t;
    }
    out
}

fn wpoly_to_int(w: &WPoly) -> IntPoly {
    IntPoly::new(w.coeffs.iter().map(|c| c.coeff(0)).collect())
}

/// Try subsets of the lifted factors; symmetric remainder against p^prec.
fn recombine(f: &IntPoly, lifted: &[IntPoly], p: u64, prec: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(prec);
    let half = &pk / BigInt::from(2);
    let symmetric = |c: &BigInt| -> BigInt {
        let r = num_integer::Integer::mod_floor(c, &pk);
        if r > half {
            r - &pk
        } else {
            r
        }
    };
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.primitive();
    let mut out = vec![];
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut found = None;
        'subsets: for subset in subsets_of(&remaining, size) {
            // candidate = lc·Π g_i mod p^prec, symmetric, primitive
            let mut prod = IntPoly::constant(current.leading());
            for &i in &subset {
                prod = &prod * &lifted[i];
                prod = IntPoly::new(
                    prod.coeffs()
                        .iter()
                        .map(|c| num_integer::Integer::mod_floor(c, &pk))
                        .collect(),
                );
            }
            let cand = IntPoly::new(prod.coeffs().iter().map(symmetric).collect()).primitive();
            if cand.deg() == 0 {
                continue;
            }
            if let Some(q) = current.divides_exactly(&cand) {
                out.push(cand);
                current = q.primitive();
                found = Some(subset);
                break 'subsets;
            }
        }
        match found {
            Some(subset) => {
                remaining.retain(|i| !subset.contains(i));
            }
            None => {
                size += 1;
            }
        }
    }
    if current.deg() > 0 {
        out.push(current.primitive());
    }
    out
}

fn subsets_of(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let n = items.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn next_prime(p: u64) -> u64 {
    let mut candidate = p + 2;
    'outer: loop {
        let mut d = 3u64;
        while d * d <= candidate {
            if candidate % d == 0 {
                candidate += 2;
                continue 'outer;
            }
            d += 2;
        }
        return candidate;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn factor_difference_of_squares() {
        let f = p(&[-1, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = p(&[7, 1, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac, vec![(p(&[7, 1, 1]), 1)]);
    }

    #[test]
    fn multiplicities_and_content() {
        // 6·(X−1)²·(X²+X+1)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[6, 6, 6]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac, vec![(p(&[-1, 1]), 2), (p(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn monomial_stripping_before_cap() {
        // X¹²·(X² − 2): degree 14 total but factorable after stripping
        let f = &IntPoly::monomial(BigInt::one(), 12) * &p(&[-2, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac, vec![(IntPoly::x(), 12), (p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn cap_rejects_large_degrees() {
        let f = IntPoly::new(
            (0..=11)
                .map(|i| BigInt::from(if i == 0 || i == 11 { 1 } else { 0 }))
                .collect(),
        );
        assert!(matches!(
            factor_over_q(&f),
            Err(ExactAlgError::DegreeCapExceeded(11, 10))
        ));
    }

    #[test]
    fn fiber_at_branch_point_factors_as_quadratic_times_cubic_squared() {
        // 108·f(−7¹⁰/108, X) = 343·(3X²−21X+49)·(6X³+42X²+98X+343)²
        let a = &IntPoly::monomial(BigInt::from(343), 7) * &p(&[7, 1]);
        let b = p(&[7, 1, 1]);
        let t0_num = BigInt::from(-(7i64.pow(10)));
        // 108·a + 7¹⁰·b
        let fiber = &a.scale(&BigInt::from(108)) + &b.scale(&-&t0_num);
        let fac = factor_over_q(&fiber).unwrap();
        let degrees: Vec<(usize, usize)> = fac.iter().map(|(g, m)| (g.deg(), *m)).collect();
        assert_eq!(degrees, vec![(2, 1), (3, 2)]);
        assert_eq!(fac[0].0, p(&[49, -21, 3]));
        assert_eq!(fac[1].0, p(&[343, 98, 42, 6]));
        // cubic discriminant square class is −3 (oracle: −2²·3·7⁸)
        let disc = fac[1].0.discriminant();
        assert_eq!(disc, BigInt::from(-69177612i64));
    }

    #[test]
    fn seventh_power_family_fiber_at_t3() {
        // 6⁶·(X⁷ − 7·(7⁶/6⁶)(X−1)) = 46656X⁷ − 823543X + 823543
        let fiber = IntPoly::new(vec![
            BigInt::from(823543),
            BigInt::from(-823543),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::from(46656),
        ]);
        let fac = factor_over_q(&fiber).unwrap();
        let degrees: Vec<(usize, usize)> = fac.iter().map(|(g, m)| (g.deg(), *m)).collect();
        assert_eq!(degrees, vec![(1, 2), (5, 1)]);
        // the double root is 7/6: factor 6X − 7
        assert_eq!(fac[0].0, p(&[-7, 6]));
        // quintic: 1296X⁵+3024X⁴+5292X³+8232X²+12005X+16807
        assert_eq!(fac[1].0, p(&[16807, 12005, 8232, 5292, 3024, 1296]));
    }

    #[test]
    fn random_style_product_round_trip() {
        let f = &p(&[3, 0, -2, 1]) * &p(&[-5, 2, 0, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        let mut back = IntPoly::one();
        for (g, m) in &fac {
            for _ in 0..*m {
                back = &back * g;
            }
        }
        assert_eq!(back.primitive(), f.primitive());
    }
}
