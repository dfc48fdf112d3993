//! Truncated bigraded dimension series.
//!
//! A [`GradedSeries`] is a Laurent series in `q` and `l` (lambda) with
//! coefficients in `Z_pi`. The lambda direction is always carried exactly
//! (finitely many rows); the `q` direction is truncated from above at `qmax`.
//! Every coefficient with `q <= qmax` is exact, and absent keys are genuine
//! zeros - coefficients above `qmax` are unknown, never assumed zero.
//! Arithmetic narrows `qmax` conservatively using the hard lower support
//! bounds of the operands.

use crate::poly::{Parity, RingRef};
use crate::scalar::PiScalar;
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const QMAX_INF: i64 = i64::MAX / 4;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Window {
    pub qmin: i64,
    pub qmax: i64,
    pub lmin: i64,
    pub lmax: i64,
}

impl Window {
    pub fn new(qmin: i64, qmax: i64, lmin: i64, lmax: i64) -> Self {
        assert!(qmin <= qmax && lmin <= lmax);
        Window { qmin, qmax, lmin, lmax }
    }

    /// The default battery window.
    pub fn standard() -> Self {
        Window::new(-12, 12, 0, 6)
    }

    pub fn contains(&self, q: i64, l: i64) -> bool {
        self.qmin <= q && q <= self.qmax && self.lmin <= l && l <= self.lmax
    }

    pub fn cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for q in self.qmin..=self.qmax {
            for l in self.lmin..=self.lmax {
                out.push((q, l));
            }
        }
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}..{}] l[{}..{}]", self.qmin, self.qmax, self.lmin, self.lmax)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct GradedSeries {
    qmax: i64,
    coeffs: BTreeMap<(i64, i64), PiScalar>,
}

impl GradedSeries {
    pub fn zero(qmax: i64) -> Self {
        GradedSeries { qmax, coeffs: BTreeMap::new() }
    }

    pub fn one(qmax: i64) -> Self {
        let mut s = Self::zero(qmax);
        s.set(0, 0, PiScalar::one());
        s
    }

    /// A single monomial `c * q^dq * l^dl`, exact everywhere.
    pub fn monomial(dq: i64, dl: i64, c: PiScalar) -> Self {
        let mut s = Self::zero(QMAX_INF);
        s.set(dq, dl, c);
        s
    }

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn set(&mut self, q: i64, l: i64, c: PiScalar) {
        if c.is_zero() {
            self.coeffs.remove(&(q, l));
        } else {
            self.coeffs.insert((q, l), c);
        }
    }

    pub fn add_to(&mut self, q: i64, l: i64, c: PiScalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.coeffs.remove(&(q, l)).unwrap_or_else(PiScalar::zero);
        self.set(q, l, cur + c);
    }

    pub fn coeff(&self, q: i64, l: i64) -> PiScalar {
        assert!(q <= self.qmax, "coefficient outside the trusted range");
        self.coeffs.get(&(q, l)).cloned().unwrap_or_else(PiScalar::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(i64, i64), &PiScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero_on(&self, w: &Window) -> bool {
        assert!(w.qmax <= self.qmax);
        self.coeffs
            .iter()
            .all(|(&(q, l), c)| !w.contains(q, l) || c.is_zero())
    }

    /// Smallest q with a nonzero coefficient; `None` for the zero series.
    pub fn support_qmin(&self) -> Option<i64> {
        self.coeffs.keys().map(|&(q, _)| q).min()
    }

    pub fn support_lrange(&self) -> Option<(i64, i64)> {
        let mut it = self.coeffs.keys().map(|&(_, l)| l);
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for l in it {
            lo = lo.min(l);
            hi = hi.max(l);
        }
        Some((lo, hi))
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let mut out = GradedSeries::zero(self.qmax.min(other.qmax));
        for (&(q, l), c) in &self.coeffs {
            if q <= out.qmax {
                out.add_to(q, l, c.clone());
            }
        }
        for (&(q, l), c) in &other.coeffs {
            if q <= out.qmax {
                out.add_to(q, l, c.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        self.add(&other.scale(&PiScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &PiScalar) -> GradedSeries {
        let mut out = GradedSeries::zero(self.qmax);
        for (&(q, l), k) in &self.coeffs {
            out.add_to(q, l, k * c);
        }
        out
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        // result is trusted up to min over the cross bounds
        let qa = self.support_qmin();
        let qb = other.support_qmin();
        let qmax = match (qa, qb) {
            (None, _) | (_, None) => QMAX_INF,
            (Some(sa), Some(sb)) => {
                let ca = self.qmax.saturating_add(sb);
                let cb = other.qmax.saturating_add(sa);
                ca.min(cb)
            }
        };
        let mut out = GradedSeries::zero(qmax.min(QMAX_INF));
        for (&(q1, l1), c1) in &self.coeffs {
            for (&(q2, l2), c2) in &other.coeffs {
                let q = q1 + q2;
                if q <= out.qmax {
                    out.add_to(q, l1 + l2, c1 * c2);
                }
            }
        }
        out
    }

    /// Multiplies by `c * q^dq * l^dl`; realizes the grading shift `<dq, dl>`.
    pub fn shift(&self, dq: i64, dl: i64, c: PiScalar) -> GradedSeries {
        let mut out = GradedSeries::zero(self.qmax.saturating_add(dq).min(QMAX_INF));
        for (&(q, l), k) in &self.coeffs {
            out.add_to(q + dq, l + dl, k * &c);
        }
        out
    }

    pub fn mul_pi(&self) -> GradedSeries {
        self.scale(&PiScalar::pi())
    }

    /// Truncates the trusted range down to `qmax` (dropping higher keys).
    pub fn truncate(&self, qmax: i64) -> GradedSeries {
        let mut out = GradedSeries::zero(self.qmax.min(qmax));
        for (&(q, l), c) in &self.coeffs {
            if q <= out.qmax {
                out.set(q, l, c.clone());
            }
        }
        out
    }

    /// `pi := sign`; the result has rational coefficients stored in the even part.
    pub fn specialize_pi(&self, sign: i64) -> GradedSeries {
        let mut out = GradedSeries::zero(self.qmax);
        for (&(q, l), c) in &self.coeffs {
            out.add_to(q, l, PiScalar::from_rational(c.specialize_pi(sign)));
        }
        out
    }

    /// `l := q^m`: folds the lambda grading into the q grading.
    pub fn eval_lambda_qpow(&self, m: i64) -> GradedSeries {
        let qmax = match self.support_lrange() {
            None => QMAX_INF,
            Some((lo, hi)) => {
                // coefficient at folded degree q' draws on rows l with
                // q = q' - m*l <= qmax, so the binding row is the extreme one
                let shift = if m >= 0 { m * lo } else { m * hi };
                self.qmax.saturating_add(shift)
            }
        };
        let mut out = GradedSeries::zero(qmax.min(QMAX_INF));
        for (&(q, l), c) in &self.coeffs {
            let qq = q + m * l;
            if qq <= out.qmax {
                out.add_to(qq, 0, c.clone());
            }
        }
        out
    }

    /// `l := 1`: forgets the lambda grading.
    pub fn collapse_lambda(&self) -> GradedSeries {
        self.eval_lambda_qpow(0)
    }

    pub fn eq_on(&self, other: &GradedSeries, w: &Window) -> bool {
        assert!(
            w.qmax <= self.qmax && w.qmax <= other.qmax,
            "comparison window exceeds trusted range ({} vs {}, {})",
            self.qmax,
            other.qmax,
            w
        );
        for q in w.qmin..=w.qmax {
            for l in w.lmin..=w.lmax {
                if self.coeff(q, l) != other.coeff(q, l) {
                    return false;
                }
            }
        }
        true
    }

    /// First window cell where the two series differ.
    pub fn first_difference(&self, other: &GradedSeries, w: &Window) -> Option<(i64, i64)> {
        for q in w.qmin..=w.qmax {
            for l in w.lmin..=w.lmax {
                if self.coeff(q, l) != other.coeff(q, l) {
                    return Some((q, l));
                }
            }
        }
        None
    }

    /// Geometric series `1 + q^step + q^{2 step} + ...` for `step > 0`.
    pub fn geometric(step: i64, qmax: i64) -> GradedSeries {
        assert!(step > 0);
        let mut out = GradedSeries::zero(qmax);
        let mut q = 0;
        while q <= qmax {
            out.set(q, 0, PiScalar::one());
            q += step;
        }
        out
    }

    /// `1 + q^2 + ... + q^{2(n-1)}` (n terms), the unnormalized brace factor.
    pub fn brace_poly(n: i64) -> GradedSeries {
        let mut out = GradedSeries::zero(QMAX_INF);
        for i in 0..n {
            out.set(2 * i, 0, PiScalar::one());
        }
        out
    }

    /// Quantum integer `[n]` as a Laurent polynomial in q (exact, any sign).
    pub fn qint(n: i64) -> GradedSeries {
        let mut out = GradedSeries::zero(QMAX_INF);
        let a = n.abs();
        for i in 0..a {
            out.set(-(a - 1) + 2 * i, 0, PiScalar::from_int(n.signum()));
        }
        out
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(q, l), c) in &self.coeffs {
            let mut factors = Vec::new();
            let composite = !c.even.is_zero() && !c.odd.is_zero();
            let is_unit_coeff = *c == PiScalar::one();
            let is_pi_coeff = *c == PiScalar::pi();
            if composite {
                factors.push(format!("({c})"));
            } else if is_pi_coeff {
                factors.push("pi".into());
            } else if !is_unit_coeff {
                factors.push(c.to_string());
            }
            if l != 0 {
                factors.push(if l == 1 { "l".into() } else { format!("l^{l}") });
            }
            if q != 0 {
                factors.push(if q == 1 { "q".into() } else { format!("q^{q}") });
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            let body = factors.join("*");
            if first {
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Coefficient of the series at (q, l): the number of ring monomials of that
/// bidegree, odd monomials contributing `pi`.
///
/// Enumerates all monomials with qdeg at most `window.qmax` (lambda rows are
/// always complete). Errors when an even generator has `qdeg <= 0`, since the
/// enumeration would not terminate.
pub fn series_from_ring(ring: &RingRef, window: &Window) -> Result<GradedSeries> {
    for g in ring.gens() {
        if g.parity == Parity::Even && g.qdeg <= 0 {
            return Err(Error::Enumeration(g.name.clone()));
        }
    }
    let mut out = GradedSeries::zero(window.qmax);
    let odd_n = ring.num_odd();
    // odd subsets first, then fill with even monomials
    for mask in 0u64..(1 << odd_n) {
        let mut q0 = 0i64;
        let mut l0 = 0i64;
        let mut odd_count = 0u32;
        for j in 0..odd_n {
            if mask & (1 << j) != 0 {
                let g = &ring.gens()[ring.odd_gen(j)];
                q0 += g.qdeg;
                l0 += g.ldeg;
                odd_count += 1;
            }
        }
        let even_degs: Vec<i64> =
            (0..ring.num_even()).map(|j| ring.gens()[ring.even_gen(j)].qdeg).collect();
        // recursively enumerate even exponent vectors with bounded qdeg
        fn rec(
            degs: &[i64],
            budget: i64,
            q_acc: i64,
            l0: i64,
            odd: bool,
            out: &mut GradedSeries,
        ) {
            match degs.split_first() {
                None => {
                    if q_acc <= budget {
                        out.add_to(q_acc, l0, PiScalar::graded_count(1, odd));
                    }
                }
                Some((&d, rest)) => {
                    let mut q = q_acc;
                    while q <= budget {
                        rec(rest, budget, q, l0, odd, out);
                        q += d;
                    }
                }
            }
        }
        rec(&even_degs, window.qmax, q0, l0, odd_count % 2 == 1, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{GenSpec, Ring};

    #[test]
    fn geometric_ring() {
        // Q[xi] with deg xi = 2
        let r = Ring::new(vec![GenSpec::even("xi", 2)]);
        let w = Window::new(-2, 6, 0, 2);
        let s = series_from_ring(&r, &w).unwrap();
        assert_eq!(s.coeff(0, 0), PiScalar::one());
        assert_eq!(s.coeff(2, 0), PiScalar::one());
        assert_eq!(s.coeff(4, 0), PiScalar::one());
        assert_eq!(s.coeff(-2, 0), PiScalar::zero());
        assert_eq!(s.coeff(3, 0), PiScalar::zero());
    }

    #[test]
    fn empty_ring_is_one() {
        let r = Ring::new(vec![]);
        let w = Window::new(-4, 4, 0, 4);
        let s = series_from_ring(&r, &w).unwrap();
        assert!(s.eq_on(&GradedSeries::one(w.qmax), &w));
    }

    #[test]
    fn omega_one_expansion() {
        // Q[x1] ⊗ Λ(s1): 1 + q^2 + q^4 + pi l^2 q^-2 + pi l^2 + pi l^2 q^2 on the window
        let r = Ring::new(vec![GenSpec::even("x1", 2), GenSpec::odd("s1", -2, 2)]);
        let w = Window::new(-2, 4, 0, 2);
        let s = series_from_ring(&r, &w).unwrap();
        for q in [0, 2, 4] {
            assert_eq!(s.coeff(q, 0), PiScalar::one(), "q={q}");
        }
        for q in [-2, 0, 2] {
            assert_eq!(s.coeff(q, 2), PiScalar::pi(), "q={q}");
        }
        assert_eq!(s.coeff(-2, 0), PiScalar::zero());
    }

    #[test]
    fn nonterminating_enumeration_rejected() {
        let r = Ring::new(vec![GenSpec::even("y", -2)]);
        assert!(series_from_ring(&r, &Window::standard()).is_err());
    }

    #[test]
    fn product_truncation_is_sound() {
        // (1 + q^2 + ...) * (1 - q^2) = 1 within the trusted range
        let geo = GradedSeries::geometric(2, 10);
        let mut one_minus = GradedSeries::zero(QMAX_INF);
        one_minus.set(0, 0, PiScalar::one());
        one_minus.set(2, 0, PiScalar::from_int(-1));
        let prod = geo.mul(&one_minus);
        assert!(prod.qmax() >= 9);
        let w = Window::new(-4, 9, 0, 0);
        assert!(prod.eq_on(&GradedSeries::one(QMAX_INF), &w));
    }

    #[test]
    fn pi_involution_on_series() {
        let s = GradedSeries::monomial(2, 0, PiScalar::pi());
        assert_eq!(s.mul_pi().mul_pi(), s);
    }

    #[test]
    fn qint_values() {
        let two = GradedSeries::qint(2);
        assert_eq!(two.coeff(1, 0), PiScalar::one());
        assert_eq!(two.coeff(-1, 0), PiScalar::one());
        assert_eq!(two.coeff(0, 0), PiScalar::zero());
        let neg = GradedSeries::qint(-2);
        assert_eq!(neg.coeff(1, 0), PiScalar::from_int(-1));
        assert!(GradedSeries::qint(0).is_zero_on(&Window::standard()));
    }

    #[test]
    fn display_series() {
        let mut s = GradedSeries::zero(10);
        s.set(0, 0, PiScalar::one());
        s.set(2, 0, PiScalar::one());
        s.set(-2, 2, PiScalar::pi());
        assert_eq!(s.to_string(), "pi*l^2*q^-2 + 1 + q^2");
    }
}
