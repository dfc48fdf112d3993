//! Sparse supercommutative polynomials over Q.
//!
//! A ring is an ordered list of generators, each carrying a quantum degree, a
//! lambda degree and a parity. Monomials store an exponent vector for the even
//! generators and a bitmask for the odd ones; odd generators square to zero
//! and anticommute, with the Koszul sign absorbed into the coefficient by
//! counting transpositions against the ring's canonical generator order.

use crate::scalar::{fmt_rational, rat, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub const MAX_EVEN: usize = 12;
pub const MAX_ODD: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GenSpec {
    pub name: String,
    pub qdeg: i64,
    pub ldeg: i64,
    pub parity: Parity,
}

impl GenSpec {
    pub fn even(name: impl Into<String>, qdeg: i64) -> Self {
        GenSpec { name: name.into(), qdeg, ldeg: 0, parity: Parity::Even }
    }
    pub fn odd(name: impl Into<String>, qdeg: i64, ldeg: i64) -> Self {
        GenSpec { name: name.into(), qdeg, ldeg, parity: Parity::Odd }
    }
}

/// Where a generator lives in the monomial representation.
#[derive(Clone, Copy, Debug)]
enum Slot {
    Even(usize),
    Odd(usize),
}

#[derive(Debug)]
pub struct Ring {
    gens: Vec<GenSpec>,
    slots: Vec<Slot>,
    even_gens: Vec<usize>,
    odd_gens: Vec<usize>,
}

pub type RingRef = Arc<Ring>;

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Ring {
    pub fn new(gens: Vec<GenSpec>) -> RingRef {
        let mut slots = Vec::with_capacity(gens.len());
        let mut even_gens = Vec::new();
        let mut odd_gens = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            assert!(g.ldeg % 2 == 0, "lambda degree must be even: {}", g.name);
            match g.parity {
                Parity::Even => {
                    slots.push(Slot::Even(even_gens.len()));
                    even_gens.push(i);
                }
                Parity::Odd => {
                    slots.push(Slot::Odd(odd_gens.len()));
                    odd_gens.push(i);
                }
            }
        }
        assert!(even_gens.len() <= MAX_EVEN, "too many even generators");
        assert!(odd_gens.len() <= MAX_ODD, "too many odd generators");
        Arc::new(Ring { gens, slots, even_gens, odd_gens })
    }

    pub fn gens(&self) -> &[GenSpec] {
        &self.gens
    }

    pub fn num_even(&self) -> usize {
        self.even_gens.len()
    }

    pub fn num_odd(&self) -> usize {
        self.odd_gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Generator index of the j-th even generator.
    pub fn even_gen(&self, j: usize) -> usize {
        self.even_gens[j]
    }

    /// Generator index of the j-th odd generator.
    pub fn odd_gen(&self, j: usize) -> usize {
        self.odd_gens[j]
    }

    fn even_slot(&self, gen: usize) -> Option<usize> {
        match self.slots[gen] {
            Slot::Even(j) => Some(j),
            Slot::Odd(_) => None,
        }
    }

    fn odd_slot(&self, gen: usize) -> Option<usize> {
        match self.slots[gen] {
            Slot::Odd(j) => Some(j),
            Slot::Even(_) => None,
        }
    }

    pub fn mono_bidegree(&self, m: &Mono) -> (i64, i64, Parity) {
        let mut q = 0;
        let mut l = 0;
        for (j, &e) in m.even[..self.num_even()].iter().enumerate() {
            let g = &self.gens[self.even_gens[j]];
            q += g.qdeg * e as i64;
            l += g.ldeg * e as i64;
        }
        let mut par = 0u32;
        for j in 0..self.num_odd() {
            if m.odd & (1 << j) != 0 {
                let g = &self.gens[self.odd_gens[j]];
                q += g.qdeg;
                l += g.ldeg;
                par += 1;
            }
        }
        (q, l, if par % 2 == 0 { Parity::Even } else { Parity::Odd })
    }

    fn fmt_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            match self.slots[i] {
                Slot::Even(j) => {
                    let e = m.even[j];
                    if e == 1 {
                        parts.push(g.name.clone());
                    } else if e > 1 {
                        parts.push(format!("{}^{}", g.name, e));
                    }
                }
                Slot::Odd(j) => {
                    if m.odd & (1 << j) != 0 {
                        parts.push(g.name.clone());
                    }
                }
            }
        }
        parts.join("*")
    }
}

/// Monomial: even exponents (fixed-width array) plus an odd-subset bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono {
    pub even: [u16; MAX_EVEN],
    pub odd: u64,
}

impl Mono {
    pub fn unit() -> Mono {
        Mono { even: [0; MAX_EVEN], odd: 0 }
    }

    fn total_even(&self) -> u32 {
        self.even.iter().map(|&e| e as u32).sum()
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }
}

// Graded-lexicographic on even exponents, then odd bitmask.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_even()
            .cmp(&other.total_even())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign for merging two odd-subset masks: counts inversions between them.
/// Returns None when the masks intersect (odd square = 0).
fn merge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // every bit of b must jump over the bits of a that are above it
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = if j + 1 >= 64 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
        bb &= bb - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

#[derive(Clone, Debug)]
pub struct SuperPoly {
    ring: RingRef,
    terms: BTreeMap<Mono, Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DegreeInfo {
    Zero,
    Homogeneous { qdeg: i64, ldeg: i64, parity: Parity },
    Inhomogeneous,
}

impl PartialEq for SuperPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl SuperPoly {
    pub fn zero(ring: &RingRef) -> Self {
        SuperPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(), c);
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, rat(n))
    }

    /// The generator with the given index.
    pub fn gen(ring: &RingRef, gen: usize) -> Self {
        let mut m = Mono::unit();
        match ring.slots[gen] {
            Slot::Even(j) => m.even[j] = 1,
            Slot::Odd(j) => m.odd = 1 << j,
        }
        let mut p = Self::zero(ring);
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn gen_by_name(ring: &RingRef, name: &str) -> Option<Self> {
        ring.gen_index(name).map(|i| Self::gen(ring, i))
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SuperPoly) -> SuperPoly {
        assert!(self.ring == other.ring, "ring mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperPoly) -> SuperPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperPoly {
        SuperPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SuperPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        SuperPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        assert!(self.ring == other.ring, "ring mismatch in mul");
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(sign) = merge_sign(ma.odd, mb.odd) {
                    let mut m = *ma;
                    for j in 0..self.ring.num_even() {
                        m.even[j] += mb.even[j];
                    }
                    m.odd |= mb.odd;
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperPoly {
        let mut out = Self::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn bidegree(&self) -> DegreeInfo {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return DegreeInfo::Zero,
            Some(m) => self.ring.mono_bidegree(m),
        };
        for m in it {
            if self.ring.mono_bidegree(m) != first {
                return DegreeInfo::Inhomogeneous;
            }
        }
        DegreeInfo::Homogeneous { qdeg: first.0, ldeg: first.1, parity: first.2 }
    }

    pub fn coefficient(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest exponent of the given even generator across all terms.
    pub fn max_even_exp(&self, gen: usize) -> u16 {
        let j = self.ring.even_slot(gen).expect("even generator");
        self.terms.keys().map(|m| m.even[j]).max().unwrap_or(0)
    }

    /// Splits `self` as a polynomial in the even generator `gen`:
    /// returns the coefficients of `gen^e` for e = 0..=max.
    pub fn coeffs_in_even_gen(&self, gen: usize) -> Vec<SuperPoly> {
        let j = self.ring.even_slot(gen).expect("even generator");
        let max = self.max_even_exp(gen) as usize;
        let mut out = vec![Self::zero(&self.ring); max + 1];
        for (m, c) in &self.terms {
            let e = m.even[j] as usize;
            let mut m2 = *m;
            m2.even[j] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    /// Exact division by `g_a - g_b` (both even generators). Errors when the
    /// remainder is nonzero.
    pub fn exact_div_diff(&self, gen_a: usize, gen_b: usize) -> Result<SuperPoly> {
        let ja = self.ring.even_slot(gen_a).expect("even generator");
        let jb = self.ring.even_slot(gen_b).expect("even generator");
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.ring);
        // eliminate the highest power of gen_a first
        loop {
            let lead = rem
                .terms
                .keys()
                .filter(|m| m.even[ja] > 0)
                .max_by_key(|m| (m.even[ja], **m))
                .copied();
            let m = match lead {
                Some(m) => m,
                None => break,
            };
            let c = rem.terms[&m].clone();
            let mut q = m;
            q.even[ja] -= 1;
            quo.add_term(q, c.clone());
            // rem -= (g_a - g_b) * c * q
            rem.add_term(m, -c.clone());
            let mut mb = q;
            mb.even[jb] += 1;
            rem.add_term(mb, c);
        }
        if rem.is_zero() {
            Ok(quo)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Swaps the two (even) generators in every monomial.
    pub fn swap_even_gens(&self, gen_a: usize, gen_b: usize) -> SuperPoly {
        let ja = self.ring.even_slot(gen_a).expect("even generator");
        let jb = self.ring.even_slot(gen_b).expect("even generator");
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2.even.swap(ja, jb);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Divided difference `(f - swap(f)) / (g_a - g_b)` in two even generators.
    pub fn divided_difference(&self, gen_a: usize, gen_b: usize) -> SuperPoly {
        let num = self.sub(&self.swap_even_gens(gen_a, gen_b));
        num.exact_div_diff(gen_a, gen_b)
            .expect("f - s(f) is always divisible by the root difference")
    }

    /// Splits each monomial `m = m_low * m_high` along an odd-generator cutoff:
    /// odd slots `< odd_cutoff` and even slots `< even_cutoff` go into `m_low`.
    /// Returns the (low, high) pairs with the coefficient attached to the pair.
    /// No signs arise: the canonical order already lists low slots first.
    pub fn split_monomials(
        &self,
        even_cutoff: usize,
        odd_cutoff: usize,
    ) -> Vec<(Mono, Mono, Rational)> {
        let mut out = Vec::with_capacity(self.terms.len());
        let low_mask = if odd_cutoff >= 64 { !0u64 } else { (1u64 << odd_cutoff) - 1 };
        for (m, c) in &self.terms {
            let mut lo = Mono::unit();
            let mut hi = Mono::unit();
            for j in 0..self.ring.num_even() {
                if j < even_cutoff {
                    lo.even[j] = m.even[j];
                } else {
                    hi.even[j] = m.even[j];
                }
            }
            lo.odd = m.odd & low_mask;
            hi.odd = m.odd & !low_mask;
            out.push((lo, hi, c.clone()));
        }
        out
    }
}

/// All monomials of the ring with the exact bidegree `(q, l)`.
///
/// Requires every even generator to have positive qdeg, which holds for all
/// rings in this crate; each bidegree component is then finite.
pub fn monomials_at(ring: &RingRef, q: i64, l: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    let nodd = ring.num_odd();
    for mask in 0u64..(1 << nodd) {
        let mut q0 = 0i64;
        let mut l0 = 0i64;
        for j in 0..nodd {
            if mask & (1 << j) != 0 {
                let g = &ring.gens()[ring.odd_gen(j)];
                q0 += g.qdeg;
                l0 += g.ldeg;
            }
        }
        if l0 != l {
            continue;
        }
        let rest = q - q0;
        if rest < 0 {
            continue;
        }
        let degs: Vec<i64> =
            (0..ring.num_even()).map(|j| ring.gens()[ring.even_gen(j)].qdeg).collect();
        debug_assert!(degs.iter().all(|&d| d > 0));
        fn rec(degs: &[i64], slot: usize, rest: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
            if slot == degs.len() {
                if rest == 0 {
                    out.push(*cur);
                }
                return;
            }
            if slot == degs.len() - 1 {
                if rest % degs[slot] == 0 {
                    cur.even[slot] = (rest / degs[slot]) as u16;
                    out.push(*cur);
                    cur.even[slot] = 0;
                }
                return;
            }
            let mut e = 0i64;
            while e * degs[slot] <= rest {
                cur.even[slot] = e as u16;
                rec(degs, slot + 1, rest - e * degs[slot], cur, out);
                e += 1;
            }
            cur.even[slot] = 0;
        }
        let mut cur = Mono::unit();
        cur.odd = mask;
        if degs.is_empty() {
            if rest == 0 {
                out.push(cur);
            }
        } else {
            rec(&degs, 0, rest, &mut cur, &mut out);
        }
    }
    out.sort();
    out
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let ms = self.ring.fmt_mono(m);
            let abs = c.abs();
            let coeff = if abs.is_one() && !ms.is_empty() {
                String::new()
            } else {
                fmt_rational(&abs)
            };
            let body = match (coeff.is_empty(), ms.is_empty()) {
                (true, false) => ms,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{ms}"),
                (true, true) => unreachable!(),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// A homomorphism of superrings determined by generator images.
///
/// Every image must be homogeneous of the same bidegree and parity as its
/// source generator (zero images are allowed).
#[derive(Clone, Debug)]
pub struct RingHom {
    source: RingRef,
    target: RingRef,
    images: Vec<SuperPoly>,
}

impl RingHom {
    pub fn new(source: RingRef, target: RingRef, images: Vec<SuperPoly>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::MissingImage(format!(
                "{} images for {} generators",
                images.len(),
                source.gens().len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.ring() != &target {
                return Err(Error::RingMismatch(format!(
                    "image of `{}` lives in the wrong ring",
                    source.gens()[i].name
                )));
            }
            let g = &source.gens()[i];
            match img.bidegree() {
                DegreeInfo::Zero => {}
                DegreeInfo::Homogeneous { qdeg, ldeg, parity } => {
                    if qdeg != g.qdeg || ldeg != g.ldeg || parity != g.parity {
                        return Err(Error::RingMismatch(format!(
                            "image of `{}` has bidegree ({qdeg},{ldeg}) parity {parity:?}, \
                             expected ({},{}) {:?}",
                            g.name, g.qdeg, g.ldeg, g.parity
                        )));
                    }
                }
                DegreeInfo::Inhomogeneous => {
                    return Err(Error::RingMismatch(format!(
                        "image of `{}` is inhomogeneous",
                        g.name
                    )));
                }
            }
        }
        Ok(RingHom { source, target, images })
    }

    /// Identity on `ring`.
    pub fn identity(ring: &RingRef) -> Self {
        let images = (0..ring.gens().len()).map(|i| SuperPoly::gen(ring, i)).collect();
        RingHom { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn image_of(&self, gen: usize) -> &SuperPoly {
        &self.images[gen]
    }

    pub fn apply(&self, p: &SuperPoly) -> Result<SuperPoly> {
        if p.ring() != &self.source {
            return Err(Error::RingMismatch("apply_hom: argument ring".into()));
        }
        let mut out = SuperPoly::zero(&self.target);
        for (m, c) in p.terms() {
            let mut acc = SuperPoly::constant(&self.target, c.clone());
            for j in 0..self.source.num_even() {
                let e = m.even[j];
                if e > 0 {
                    acc = acc.mul(&self.images[self.source.even_gen(j)].pow(e as u32));
                }
            }
            // odd factors in ascending canonical order; Koszul signs are
            // produced by the target-ring multiplication
            for j in 0..self.source.num_odd() {
                if m.odd & (1 << j) != 0 {
                    acc = acc.mul(&self.images[self.source.odd_gen(j)]);
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose_after(&self, other: &RingHom) -> Result<RingHom> {
        if other.target != self.source {
            return Err(Error::RingMismatch("compose".into()));
        }
        let images = other
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(other.source.clone(), self.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_ring() -> RingRef {
        Ring::new(vec![
            GenSpec::even("x1", 2),
            GenSpec::even("x2", 4),
            GenSpec::odd("s1", -2, 2),
            GenSpec::odd("s2", -4, 2),
        ])
    }

    #[test]
    fn odd_anticommute_and_square() {
        let r = sample_ring();
        let s1 = SuperPoly::gen_by_name(&r, "s1").unwrap();
        let s2 = SuperPoly::gen_by_name(&r, "s2").unwrap();
        assert_eq!(s1.mul(&s2), s2.mul(&s1).neg());
        assert!(s1.mul(&s1).is_zero());
    }

    #[test]
    fn distributive_expansion() {
        // (x1 + s1)(x1 - s1) = x1^2
        let r = sample_ring();
        let x1 = SuperPoly::gen_by_name(&r, "x1").unwrap();
        let s1 = SuperPoly::gen_by_name(&r, "s1").unwrap();
        let lhs = x1.add(&s1).mul(&x1.sub(&s1));
        assert_eq!(lhs, x1.mul(&x1));
    }

    #[test]
    fn bidegrees() {
        let r = sample_ring();
        let x2 = SuperPoly::gen_by_name(&r, "x2").unwrap();
        assert_eq!(
            x2.bidegree(),
            DegreeInfo::Homogeneous { qdeg: 4, ldeg: 0, parity: Parity::Even }
        );
        let s1 = SuperPoly::gen_by_name(&r, "s1").unwrap();
        assert_eq!(
            s1.bidegree(),
            DegreeInfo::Homogeneous { qdeg: -2, ldeg: 2, parity: Parity::Odd }
        );
        let x1 = SuperPoly::gen_by_name(&r, "x1").unwrap();
        assert_eq!(x1.add(&s1).bidegree(), DegreeInfo::Inhomogeneous);
    }

    #[test]
    fn display_matches_canonical_form() {
        let r = sample_ring();
        let x1 = SuperPoly::gen_by_name(&r, "x1").unwrap();
        let s1 = SuperPoly::gen_by_name(&r, "s1").unwrap();
        let s2 = SuperPoly::gen_by_name(&r, "s2").unwrap();
        let p = x1.pow(2).mul(&s2).scale(&rat(3)).sub(&s1.mul(&s2).scale(&crate::scalar::ratio(1, 2)));
        assert_eq!(p.to_string(), "-1/2*s1*s2 + 3*x1^2*s2");
    }

    #[test]
    fn divided_difference_basics() {
        let r = Ring::new(vec![GenSpec::even("a", 2), GenSpec::even("b", 2)]);
        let a = SuperPoly::gen_by_name(&r, "a").unwrap();
        let b = SuperPoly::gen_by_name(&r, "b").unwrap();
        // d(a^2 b) with respect to (a, b) = ab
        let f = a.pow(2).mul(&b);
        assert_eq!(f.divided_difference(0, 1), a.mul(&b));
        // symmetric polynomials die
        let sym = a.mul(&b);
        assert!(sym.divided_difference(0, 1).is_zero());
    }

    #[test]
    fn hom_identity_and_validation() {
        let r = sample_ring();
        let id = RingHom::identity(&r);
        let x1 = SuperPoly::gen_by_name(&r, "x1").unwrap();
        let s1 = SuperPoly::gen_by_name(&r, "s1").unwrap();
        let p = x1.mul(&s1).add(&SuperPoly::one(&r));
        assert_eq!(id.apply(&p).unwrap(), p);
        // degree-violating image is rejected
        let bad = RingHom::new(
            r.clone(),
            r.clone(),
            vec![
                SuperPoly::gen_by_name(&r, "x2").unwrap(),
                SuperPoly::gen_by_name(&r, "x2").unwrap(),
                SuperPoly::gen_by_name(&r, "s1").unwrap(),
                SuperPoly::gen_by_name(&r, "s2").unwrap(),
            ],
        );
        assert!(bad.is_err());
    }
}
