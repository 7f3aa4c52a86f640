use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::exactalg::IntPoly;

use super::gf::{factor_mod_p, PolyModP};
use super::gfext::{factor_ext, ExtPoly};
use super::padic::{split_monic_part, Prec, UnramRing, WPoly};
use super::{CycleType, LocalFieldError};

/// Multiset of (ramification index e, residue degree f) pairs for the
/// irreducible factors of a polynomial over Q_p.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalData {
    pub p: BigInt,
    pub entries: Vec<(u32, u32)>,
}

impl LocalData {
    pub fn new(p: BigInt, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort();
        LocalData { p, entries }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|(e, f)| e * f).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.entries.iter().all(|(e, _)| *e == 1)
    }

    pub fn residue_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.entries.iter().map(|(_, f)| *f).collect();
        v.sort();
        v
    }
}

impl Serialize for LocalData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LocalData", 2)?;
        st.serialize_field("prime", &self.p.to_string())?;
        st.serialize_field("ef_pairs", &self.entries)?;
        st.end()
    }
}

impl std::fmt::Debug for LocalData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LocalData(p={}, {:?})", self.p, self.entries)
    }
}

/// Cycle type of Frobenius acting on the roots of f mod p: the multiset of
/// irreducible-factor degrees. Errors with NotSquarefree when f mod p is
/// degenerate (a ramification signal).
pub fn frobenius_cycle_type(f: &IntPoly, p: u64) -> Result<CycleType, LocalFieldError> {
    let fp = PolyModP::from_int_poly(f, p);
    if fp.deg() != f.deg() {
        return Err(LocalFieldError::NotSquarefree { p });
    }
    let factors = factor_mod_p(&fp);
    if factors.iter().any(|(_, m)| *m > 1) {
        return Err(LocalFieldError::NotSquarefree { p });
    }
    Ok(CycleType::new(
        factors.iter().map(|(g, _)| g.deg() as u32).collect(),
    ))
}

/// (e, f)-invariants of the irreducible factors of f over Q_p.
///
/// Squarefree-mod-p parts factor unramified by Hensel; degenerate parts go
/// through Newton-polygon cluster analysis with residual factorization over
/// F_p or F_{p^d}. Precision starts at `precision` and doubles on demand up
/// to 512.
pub fn local_invariants(
    f: &IntPoly,
    p: u64,
    precision: u32,
) -> Result<LocalData, LocalFieldError> {
    assert!(!f.is_zero());
    assert!(
        f.is_squarefree(),
        "local_invariants requires squarefree input"
    );
    let mut n = precision.max(8);
    loop {
        match invariants_at_precision(f, p, n) {
            Err(LocalFieldError::PrecisionExhausted) if n < 512 => {
                n = (2 * n).min(512);
            }
            other => return other,
        }
    }
}

fn invariants_at_precision(f: &IntPoly, p: u64, n: u32) -> Result<LocalData, LocalFieldError> {
    // monicize: g(X) = lc^{d−1} f(X/lc) has integral roots and the same
    // invariants; every root of the monic integral g is integral.
    let f = f.primitive();
    let d = f.deg();
    let lc = f.leading();
    let g = if lc.is_one() {
        f.clone()
    } else {
        let coeffs = (0..=d)
            .map(|i| f.coeff(i) * lc.pow((d - 1 - i.min(d - 1)) as u32))
            .collect::<Vec<_>>();
        // a_i · lc^{d−1−i}, with a_d · lc^{−1} = 1
        let mut c = coeffs;
        c[d] = BigInt::one();
        IntPoly::new(c)
    };
    let ring = UnramRing::base(p);
    let w = WPoly::from_int_poly(&g);
    let entries = analyze_monic(&ring, &w, n, 0)?;
    let data = LocalData::new(BigInt::from(p), entries);
    debug_assert_eq!(data.degree() as usize, d);
    Ok(data)
}

const MAX_DEPTH: u32 = 64;

/// Invariants of all roots of a monic integral polynomial over W.
fn analyze_monic(
    ring: &UnramRing,
    h: &WPoly,
    n: u32,
    depth: u32,
) -> Result<Vec<(u32, u32)>, LocalFieldError> {
    if depth > MAX_DEPTH {
        return Err(LocalFieldError::PrecisionExhausted);
    }
    if h.deg() == 0 {
        return Ok(vec![]);
    }
    let k = &ring.residue;
    let hbar = h.reduce(ring);
    debug_assert_eq!(hbar.deg(), h.deg(), "monic polynomial must not drop degree");
    let groups = factor_ext(k, &hbar);
    let mut out = vec![];
    for (gbar, mult) in &groups {
        if *mult == 1 {
            out.push((1u32, gbar.deg() as u32));
            continue;
        }
        // repeated group: isolate the cluster factor
        let mut target = ExtPoly::one(k);
        for _ in 0..*mult {
            target = target.mul(k, gbar);
        }
        let cluster_factor = if groups.len() == 1 {
            h.clone()
        } else {
            split_monic_part(ring, h, &target, n)?.0
        };
        if gbar.deg() == 1 {
            // shift to center the cluster at 0
            let c0 = gbar.coeff(k, 0);
            let c = ring.welt_lift(&k.sub(&k.zero(), &c0));
            let centered = cluster_factor.shift(ring, &c);
            out.extend(analyze_cluster(ring, &centered, n, depth + 1)?);
        } else {
            // residue field grows: restart over the unramified extension ring
            if ring.degree() != 1 {
                return Err(LocalFieldError::ResidueTower);
            }
            let dd = gbar.deg() as u32;
            let modulus = IntPoly::new(
                gbar.coeffs
                    .iter()
                    .map(|c| BigInt::from(c.coeff(0)))
                    .collect(),
            );
            let ext = UnramRing::extension(ring.p, modulus);
            let ke = &ext.residue;
            // over the extension, the cluster reduction gains the root z̄;
            // split off the (X − z̄)^mult part and analyze one conjugate cluster
            let hw = WPoly::new(cluster_factor.coeffs.clone(), cluster_factor.prec);
            let zbar = ke.generator_residue();
            let mut tgt = ExtPoly::one(ke);
            let lin = ExtPoly::new(ke, vec![ke.sub(&ke.zero(), &zbar), ke.one()]);
            for _ in 0..*mult {
                tgt = tgt.mul(ke, &lin);
            }
            let (conj_cluster, _) = split_monic_part(&ext, &hw, &tgt, n)?;
            let z = ext.welt_lift(&zbar);
            let centered = conj_cluster.shift(&ext, &z);
            let sub = analyze_cluster(&ext, &centered, n, depth + 1)?;
            out.extend(sub.into_iter().map(|(e, fr)| (e, dd * fr)));
        }
    }
    Ok(out)
}

/// Invariants of a monic polynomial all of whose roots have valuation > 0.
fn analyze_cluster(
    ring: &UnramRing,
    g: &WPoly,
    n: u32,
    depth: u32,
) -> Result<Vec<(u32, u32)>, LocalFieldError> {
    if depth > MAX_DEPTH {
        return Err(LocalFieldError::PrecisionExhausted);
    }
    let m = g.deg();
    if m == 0 {
        return Ok(vec![]);
    }
    if m == 1 {
        return Ok(vec![(1, 1)]);
    }
    // exact root at the center
    if g.coeffs[0].is_zero() {
        if g.prec != Prec::Exact {
            return Err(LocalFieldError::PrecisionExhausted);
        }
        let mut rest = g.coeffs.clone();
        rest.remove(0);
        let tail = WPoly::new(rest, g.prec);
        let mut out = vec![(1u32, 1u32)];
        out.extend(analyze_cluster(ring, &tail, n, depth + 1)?);
        return Ok(out);
    }
    let polygon = newton_polygon(ring, g)?;
    // shallowest segment is last (slopes decrease in steepness left to right)
    let (h1, e1) = polygon.last().unwrap().slope;
    if e1 == 1 {
        // integer shallowest slope: rescale so those roots become units
        let scaled = g.scale_down_monic(ring, h1)?;
        return analyze_monic(ring, &scaled, n, depth + 1);
    }
    // fractional shallowest slope: handle all segments with slope < ceil(λ1)
    // by residual factorization, then recurse on the deeper monic part.
    let mu = h1 / e1 + 1; // ceil of a non-integer h1/e1
    let mut out = vec![];
    let mut shallow_len = 0usize;
    for seg in &polygon {
        let (hh, ee) = seg.slope;
        if (hh as u64) < (mu as u64) * (ee as u64) {
            // slope < μ: resolve via the residual polynomial
            if ee % ring.p as u32 == 0 {
                return Err(LocalFieldError::WildUnsupported { p: ring.p, e: ee });
            }
            let res = residual_poly(ring, g, seg)?;
            let k = &ring.residue;
            for (rho, rmult) in factor_ext(k, &res) {
                if rmult > 1 {
                    return Err(LocalFieldError::IrregularUnsupported);
                }
                out.push((ee, rho.deg() as u32));
            }
            shallow_len += seg.length;
        }
    }
    if shallow_len == m {
        return Ok(out);
    }
    // deeper part: scale by μ; shallow roots become non-integral and drop out
    // of the reduction; split off the monic complement and recurse.
    let scaled = g.scale_primitive(ring, mu);
    let k = &ring.residue;
    let sbar = scaled.reduce(ring);
    let deep_deg = m - shallow_len;
    if sbar.deg() != deep_deg {
        return Err(LocalFieldError::PrecisionExhausted);
    }
    let target = sbar.monic(k);
    let (deep, _) = split_monic_part(ring, &scaled, &target, n)?;
    out.extend(analyze_monic(ring, &deep, n, depth + 1)?);
    Ok(out)
}

struct Segment {
    /// slope as a positive rational h/e in lowest terms (root valuation)
    slope: (u32, u32),
    /// horizontal extent (number of roots on this segment)
    length: usize,
    /// left endpoint (index, valuation)
    left: (usize, u32),
}

/// Lower Newton polygon of a monic cluster polynomial; all slopes positive
/// as root valuations. Points with unknown valuation (beyond precision) are
/// treated as absent; the constant term must be known.
fn newton_polygon(ring: &UnramRing, g: &WPoly) -> Result<Vec<Segment>, LocalFieldError> {
    let m = g.deg();
    let bound = g.prec.bound();
    let mut pts: Vec<(usize, u32)> = vec![];
    for (i, c) in g.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = ring.welt_val(c).unwrap();
        if (v as u64) < bound as u64 {
            pts.push((i, v));
        } else if i == 0 {
            return Err(LocalFieldError::PrecisionExhausted);
        }
    }
    if pts.first().map(|&(i, _)| i) != Some(0) {
        return Err(LocalFieldError::PrecisionExhausted);
    }
    // lower convex hull from (0, v0) to (m, 0)
    let mut hull: Vec<(usize, u32)> = vec![];
    for &(x, y) in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // remove if (x2,y2) is above or on the line (x1,y1)-(x,y)
            let lhs = (y as i64 - y1 as i64) * (x2 as i64 - x1 as i64);
            let rhs = (y2 as i64 - y1 as i64) * (x as i64 - x1 as i64);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    debug_assert_eq!(hull.last(), Some(&(m, 0)));
    let mut segments = vec![];
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let rise = y1 - y2; // decreasing
        let run = (x2 - x1) as u32;
        let gcd = num_integer::gcd(rise, run);
        if rise == 0 {
            // slope 0 segment cannot occur for a cluster (all roots v > 0)
            return Err(LocalFieldError::Internal("flat cluster segment".into()));
        }
        segments.push(Segment {
            slope: (rise / gcd, run / gcd),
            length: x2 - x1,
            left: (x1, y1),
        });
    }
    Ok(segments)
}

/// Residual polynomial of a polygon segment over the residue field.
fn residual_poly(
    ring: &UnramRing,
    g: &WPoly,
    seg: &Segment,
) -> Result<ExtPoly, LocalFieldError> {
    let k = &ring.residue;
    let (h, e) = seg.slope;
    let (i0, v0) = seg.left;
    let deg = seg.length / e as usize;
    let mut coeffs = vec![k.zero(); deg + 1];
    for j in 0..=deg {
        let idx = i0 + j * e as usize;
        let c = g.coeff(idx);
        if c.is_zero() {
            continue;
        }
        let v = ring.welt_val(&c).unwrap();
        let online = v0 as i64 - (j as i64) * h as i64;
        debug_assert!(online >= 0);
        if (v as i64) == online {
            let divided = ring.welt_div_pow(&c, v);
            coeffs[j] = ring.welt_reduce(&divided);
        }
    }
    Ok(ExtPoly::new(k, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    fn ld(f: &IntPoly, q: u64) -> LocalData {
        local_invariants(f, q, 32).unwrap()
    }

    #[test]
    fn ramified_quadratic() {
        for q in [2u64, 3, 5, 7, 13] {
            let f = IntPoly::new(vec![BigInt::from(-(q as i64)), BigInt::from(0), BigInt::one()]);
            assert_eq!(ld(&f, q).entries(), &[(2, 1)], "X² − {q}");
        }
    }

    #[test]
    fn unramified_inert_quadratic() {
        // X² − 2 at p = 5: 2 is a non-residue → inert
        assert_eq!(ld(&p(&[-2, 0, 1]), 5).entries(), &[(1, 2)]);
        // X² − 1 at p = 5: split
        assert_eq!(ld(&p(&[-1, 0, 1]), 5).entries(), &[(1, 1), (1, 1)]);
    }

    #[test]
    fn split_pair_congruent_mod_2() {
        // X² − 1 = (X−1)(X+1) over Q_2: roots collide mod 2, exact split
        assert_eq!(ld(&p(&[-1, 0, 1]), 2).entries(), &[(1, 1), (1, 1)]);
        // X² − 17 over Q_2: 17 ≡ 1 mod 8 is a square
        assert_eq!(ld(&p(&[-17, 0, 1]), 2).entries(), &[(1, 1), (1, 1)]);
        // X² + 7 over Q_2: −7 ≡ 1 mod 8 is a square
        assert_eq!(ld(&p(&[7, 0, 1]), 2).entries(), &[(1, 1), (1, 1)]);
    }

    #[test]
    fn eisenstein_cubics_and_tame_quartics() {
        // X³ − 5 at 5: totally ramified, tame
        assert_eq!(ld(&p(&[-5, 0, 0, 1]), 5).entries(), &[(3, 1)]);
        // X⁴ − 5 at 5: totally ramified
        assert_eq!(ld(&p(&[-5, 0, 0, 0, 1]), 5).entries(), &[(4, 1)]);
        // X⁴ − 25 at 5 = (X²−5)(X²+5): two ramified quadratics
        assert_eq!(ld(&p(&[-25, 0, 0, 0, 1]), 5).entries(), &[(2, 1), (2, 1)]);
    }

    #[test]
    fn mixed_slopes_with_unramified_part() {
        // (X² − 5)(X − 1)(X − 2) at 5
        let f = &(&p(&[-5, 0, 1]) * &p(&[-1, 1])) * &p(&[-2, 1]);
        assert_eq!(ld(&f, 5).entries(), &[(1, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn inert_cluster_over_extension() {
        // (X² + X + 1)² + 5³·X: mod 5, reduction is (X²+X+1)², cluster over F_25
        let sq = &p(&[1, 1, 1]) * &p(&[1, 1, 1]);
        let f = &sq + &p(&[0, 125]);
        // v(disc) odd on the cluster → two conjugate ramified pieces, f = 2
        let data = ld(&f, 5);
        assert_eq!(data.degree(), 4);
        assert_eq!(data.entries(), &[(2, 2)]);
    }

    #[test]
    fn wild_case_detected() {
        // X² − 2 over Q_2 is wildly ramified: e = 2 = p
        let err = local_invariants(&p(&[-2, 0, 1]), 2, 32).unwrap_err();
        match err {
            LocalFieldError::WildUnsupported { p: 2, e: 2 } => {}
            other => panic!("expected wild error, got {other:?}"),
        }
    }

    #[test]
    fn degree_drop_from_nonunit_leading_coefficient() {
        // 5X² − 1 at p = 5: one unit root escapes to valuation −1... both roots
        // have valuation −1/2 in fact: e = 2 ramified (X = 1/√5)
        let data = ld(&p(&[-1, 0, 5]), 5);
        assert_eq!(data.entries(), &[(2, 1)]);
        // 5X² − X − 1... roots: one unit, one of valuation −1
        let data = ld(&p(&[-1, -1, 5]), 5);
        assert_eq!(data.entries(), &[(1, 1), (1, 1)]);
    }

    #[test]
    fn frobenius_cycle_types() {
        // X² − 1 mod 5 → {1,1}
        let t = frobenius_cycle_type(&p(&[-1, 0, 1]), 5).unwrap();
        assert_eq!(t.parts(), &[1, 1]);
        let err = frobenius_cycle_type(&p(&[-5, 0, 1]), 5);
        assert!(matches!(err, Err(LocalFieldError::NotSquarefree { p: 5 })));
    }

    #[test]
    fn sum_ef_equals_degree_on_samples() {
        let samples = [
            p(&[6, 11, 6, 1]),
            p(&[-4, 0, 0, 0, 1]),
            p(&[9, 0, 1]),
            p(&[12, 4, -3, 1, 1]),
            p(&[-50, 0, 0, 1]),
        ];
        for f in &samples {
            if !f.is_squarefree() {
                continue;
            }
            for q in [3u64, 5, 7, 11, 13] {
                match local_invariants(f, q, 32) {
                    Ok(d) => assert_eq!(d.degree() as usize, f.deg(), "f={f} q={q}"),
                    Err(LocalFieldError::WildUnsupported { .. }) => {}
                    Err(e) => panic!("unexpected error {e:?} for f={f} q={q}"),
                }
            }
        }
    }
}
