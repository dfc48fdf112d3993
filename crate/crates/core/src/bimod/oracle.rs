//! An independent model of the tensor squares, used to cross-check the
//! normal-form reduction.
//!
//! The model realizes `Omega_{k,k+1} ⊗_{k+1} Omega_{k+1,k}` inside a single
//! polynomial superring with two flag lines `xi`, `xip`: the balanced
//! relations identify the middle Chern classes computed from either side.
//! For the Up square the identification is triangular in the primed Chern
//! classes and leaves exactly one relation, monic in `xip^{k+1}`; division by
//! it gives a canonical form. For the Down square the identification
//! eliminates the primed generators entirely and the model ring is free.
//!
//! Nothing here touches the reduction pipeline: the two sides share only the
//! polynomial engine.

use super::{Label, Reducer, Side, TensorElement};
use crate::linalg::Echelon;
use crate::poly::{monomials_at, GenSpec, Mono, Parity, Ring, RingHom, RingRef, SuperPoly};
use crate::scalar::Rational;
use crate::series::Window;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub struct SquareModel {
    pub side: Side,
    pub k: usize,
    pub ring: RingRef,
    left_leg: RingHom,
    right_leg: RingHom,
    /// `xip^{k+1} -> rhs` for the Up square; the Down square has no relation.
    cap: Option<(usize, u16, SuperPoly)>,
    phi: RingHom,
    psi_down: Option<RingHom>,
}

impl SquareModel {
    pub fn up(k: usize) -> Self {
        let fl = crate::omega::flag(k);
        let mut gens = Vec::new();
        for i in 1..=k {
            gens.push(GenSpec::even(format!("w{i}"), 2 * i as i64));
        }
        gens.push(GenSpec::even("xi", 2));
        gens.push(GenSpec::even("xip", 2));
        for i in 1..=k + 1 {
            gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
        }
        let ring = Ring::new(gens);
        let w = |i: usize| -> SuperPoly {
            if i == 0 {
                SuperPoly::one(&ring)
            } else if i <= k {
                SuperPoly::gen(&ring, i - 1)
            } else {
                SuperPoly::zero(&ring)
            }
        };
        let xi = SuperPoly::gen(&ring, k);
        let xip = SuperPoly::gen(&ring, k + 1);
        // primed Chern classes from the triangular balanced relations:
        // w'_i = w_i + xi w_{i-1} - xip w'_{i-1}
        let mut wp: Vec<SuperPoly> = vec![SuperPoly::one(&ring)];
        for i in 1..=k {
            let v = w(i).add(&xi.mul(&w(i - 1))).sub(&xip.mul(&wp[i - 1]));
            wp.push(v);
        }
        // last relation: xi w_k = xip w'_k, monic in xip^{k+1}
        let full = xi.mul(&w(k)).sub(&xip.mul(&wp[k]));
        let mut cap_mono = Mono::unit();
        cap_mono.even[k + 1] = (k + 1) as u16;
        let lead = full.coefficient(&cap_mono);
        assert!(!lead.is_zero(), "relation must be monic in xip^{{k+1}}");
        let mut rest = full.clone();
        rest.add_term(cap_mono, -lead.clone());
        let rhs = rest.scale(&(-Rational::one() / lead));
        // legs
        let mut images = Vec::new();
        for i in 1..=k {
            images.push(w(i));
        }
        images.push(xi.clone());
        for i in 1..=k + 1 {
            images.push(SuperPoly::gen(&ring, k + 2 + i - 1));
        }
        let left_leg = RingHom::new(fl.ring.clone(), ring.clone(), images).expect("graded");
        let mut images = Vec::new();
        for i in 1..=k {
            images.push(wp[i].clone());
        }
        images.push(xip.clone());
        for i in 1..=k + 1 {
            images.push(SuperPoly::gen(&ring, k + 2 + i - 1));
        }
        let right_leg = RingHom::new(fl.ring.clone(), ring.clone(), images).expect("graded");
        let phi = crate::omega::phi_star(k);
        SquareModel {
            side: Side::Up,
            k,
            ring,
            left_leg,
            right_leg,
            cap: Some((k + 1, (k + 1) as u16, rhs)),
            phi,
            psi_down: None,
        }
    }

    pub fn down(k: usize) -> Self {
        assert!(k >= 1);
        let km = k - 1;
        let dfl = crate::omega::flag(km);
        let mut gens = Vec::new();
        for i in 1..=km {
            gens.push(GenSpec::even(format!("w{i}"), 2 * i as i64));
        }
        gens.push(GenSpec::even("xi", 2));
        gens.push(GenSpec::even("xip", 2));
        for i in 1..=k {
            gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
        }
        gens.push(GenSpec::odd("sp", -2 * k as i64, 2));
        let ring = Ring::new(gens);
        let xi = SuperPoly::gen(&ring, km);
        let xip = SuperPoly::gen(&ring, km + 1);
        let s = |j: usize| SuperPoly::gen(&ring, km + 2 + j - 1);
        let spk = SuperPoly::gen(&ring, km + 2 + k);
        // primed odd generators, descending: s'_k = sp,
        // s'_i = s_i + xi s_{i+1} - xip s'_{i+1}
        let mut sp: Vec<SuperPoly> = vec![SuperPoly::zero(&ring); k + 1];
        sp[k] = spk;
        for i in (1..k).rev() {
            sp[i] = s(i).add(&xi.mul(&s(i + 1))).sub(&xip.mul(&sp[i + 1]));
        }
        let w = |i: usize| -> SuperPoly {
            if i == 0 {
                SuperPoly::one(&ring)
            } else if i <= km {
                SuperPoly::gen(&ring, i - 1)
            } else {
                SuperPoly::zero(&ring)
            }
        };
        let mut images = Vec::new();
        for i in 1..=km {
            images.push(w(i));
        }
        images.push(xi.clone());
        for j in 1..=k {
            images.push(s(j));
        }
        let left_leg = RingHom::new(dfl.ring.clone(), ring.clone(), images).expect("graded");
        let mut images = Vec::new();
        for i in 1..=km {
            images.push(w(i));
        }
        images.push(xip.clone());
        for j in 1..=k {
            images.push(sp[j].clone());
        }
        let right_leg = RingHom::new(dfl.ring.clone(), ring.clone(), images).expect("graded");
        let phi = crate::omega::phi_star(k);
        let psi_down = crate::omega::psi_star(km);
        SquareModel {
            side: Side::Down,
            k,
            ring,
            left_leg,
            right_leg,
            cap: None,
            phi,
            psi_down: Some(psi_down),
        }
    }

    /// Canonical form in the model: reduce high `xip` powers by the single
    /// monic relation (Up) or return as-is (Down; free).
    pub fn normalize(&self, p: &SuperPoly) -> SuperPoly {
        match &self.cap {
            None => p.clone(),
            Some((gen, cappow, rhs)) => super::cap_even_power(p, *gen, *cappow, rhs),
        }
    }

    /// Image of a pure tensor `u ⊗ v`.
    pub fn embed_pair(&self, u: &SuperPoly, v: &SuperPoly) -> Result<SuperPoly> {
        let lu = self.left_leg.apply(u)?;
        let rv = self.right_leg.apply(v)?;
        Ok(self.normalize(&lu.mul(&rv)))
    }

    /// Image of a normal-form element.
    pub fn embed_element(&self, t: &TensorElement) -> Result<SuperPoly> {
        assert!(t.side == self.side && t.k == self.k);
        let mut out = SuperPoly::zero(&self.ring);
        let k = self.k;
        for (&(a, b, d), c) in &t.coeffs {
            match self.side {
                Side::Up => {
                    // (xi^a ⊗ xi^b s^d) * phi(c) through the right leg
                    let fl_ring = self.left_leg.source();
                    let mut right = SuperPoly::gen_by_name(fl_ring, "xi").unwrap().pow(b as u32);
                    if d {
                        right =
                            right.mul(&SuperPoly::gen_by_name(fl_ring, &format!("s{}", k + 1)).unwrap());
                    }
                    right = right.mul(&self.phi.apply(c)?);
                    let left = SuperPoly::gen_by_name(fl_ring, "xi").unwrap().pow(a as u32);
                    out = out.add(&self.embed_pair(&left, &right)?);
                }
                Side::Down => {
                    // psi(c) * (xi^a ⊗ xi^b s^d) through the left leg
                    let fl_ring = self.left_leg.source();
                    let mut left = SuperPoly::gen_by_name(fl_ring, "xi").unwrap().pow(a as u32);
                    left = self.psi_down.as_ref().unwrap().apply(c)?.mul(&left);
                    let mut right = SuperPoly::gen_by_name(fl_ring, "xi").unwrap().pow(b as u32);
                    if d {
                        right =
                            right.mul(&SuperPoly::gen_by_name(fl_ring, &format!("s{}", k)).unwrap());
                    }
                    out = out.add(&self.embed_pair(&left, &right)?);
                }
            }
        }
        Ok(self.normalize(&out))
    }

    /// Dimension of the model at a bidegree: canonical monomials are those
    /// with `xip`-exponent at most k (Up) or everything (Down).
    pub fn dim(&self, q: i64, l: i64, parity: Parity) -> usize {
        monomials_at(&self.ring, q, l)
            .into_iter()
            .filter(|m| {
                let ok_parity = (m.odd_count() % 2 == 0) == (parity == Parity::Even);
                let ok_cap = match &self.cap {
                    None => true,
                    Some((gen, cappow, _)) => {
                        // xip is an even generator; find its slot via a probe
                        let g = SuperPoly::gen(&self.ring, *gen);
                        let (gm, _) = g.terms().next().unwrap();
                        let slot = gm.even.iter().position(|&e| e == 1).unwrap();
                        m.even[slot] < *cappow
                    }
                };
                ok_parity && ok_cap
            })
            .count()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleReport {
    pub side: String,
    pub k: usize,
    pub window: Window,
    pub status: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_bidegree: Option<(i64, i64, u8)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Per-bidegree agreement of the reduction with the model:
/// dimensions match, the normal-form basis embeds injectively, and reduction
/// agrees with the direct embedding on an enumerated sample of pure tensors.
pub fn check_oracle(
    side: Side,
    k: usize,
    window: &Window,
    pairs_per_cell: usize,
) -> Result<OracleReport> {
    let red = Reducer::new(k);
    let model = match side {
        Side::Up => SquareModel::up(k),
        Side::Down => SquareModel::down(k),
    };
    let side_name = match side {
        Side::Up => "up",
        Side::Down => "down",
    };
    let mut cells = Vec::new();
    for q in window.qmin..=window.qmax {
        for l in window.lmin..=window.lmax {
            if q % 2 == 0 && l % 2 == 0 {
                for p in [Parity::Even, Parity::Odd] {
                    cells.push((q, l, p));
                }
            }
        }
    }
    let results = crate::parallel_map(cells, |&(q, l, p)| -> Result<Option<(i64, i64, u8, String)>> {
        let nf = super::tensor_basis(&red, side, q, l, p);
        let md = model.dim(q, l, p);
        if nf.len() != md {
            return Ok(Some((q, l, p.as_u8(), format!(
                "dimension mismatch: normal form {} vs model {md}",
                nf.len()
            ))));
        }
        // injectivity of the normal-form basis in the model
        let mono_index: BTreeMap<Mono, usize> = monomials_at(&model.ring, q, l)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let to_row = |p: &SuperPoly| -> crate::linalg::SparseRow {
            let mut row = BTreeMap::new();
            for (m, c) in p.terms() {
                *row.entry(mono_index[m]).or_insert_with(Rational::zero) += c.clone();
            }
            crate::linalg::row_from_map(row)
        };
        let mut ech = Echelon::new();
        let mut rank = 0usize;
        for (lbl, m) in &nf {
            let t = super::basis_element(&red, side, *lbl, *m);
            let img = model.embed_element(&t)?;
            if ech.insert(to_row(&img)) {
                rank += 1;
            }
        }
        if rank != nf.len() {
            return Ok(Some((q, l, p.as_u8(), format!(
                "normal-form basis not independent in the model: rank {rank} of {}",
                nf.len()
            ))));
        }
        // sampled pure tensors: reduce, embed, compare with the direct image
        let factor = match side {
            Side::Up => &red.up_factor,
            Side::Down => red.down_factor.as_ref().unwrap(),
        };
        let fr = &factor.ring;
        let mut pairs = Vec::new();
        // factor bidegrees are bounded below; enumerate complementary splits
        let (qlo, llo) = factor_min_bidegree(fr);
        let mut qa = qlo;
        while qa <= q - qlo {
            let mut la = llo;
            while la <= l - llo {
                for ma in monomials_at(fr, qa, la) {
                    for mb in monomials_at(fr, q - qa, l - la) {
                        let pa = (ma.odd_count() + mb.odd_count()) % 2 == 0;
                        if pa == (p == Parity::Even) {
                            pairs.push((ma, mb));
                        }
                    }
                }
                la += 2;
            }
            qa += 2;
        }
        let stride = (pairs.len() / pairs_per_cell.max(1)).max(1);
        for (ma, mb) in pairs.into_iter().step_by(stride) {
            let u = SuperPoly::from_terms(fr, [(ma, Rational::one())]);
            let v = SuperPoly::from_terms(fr, [(mb, Rational::one())]);
            let t = red.reduce(side, &u, &v)?;
            let via_nf = model.embed_element(&t)?;
            let direct = model.embed_pair(&u, &v)?;
            if via_nf != direct {
                return Ok(Some((q, l, p.as_u8(), format!(
                    "reduction disagrees with the model on {u} ⊗ {v}"
                ))));
            }
        }
        Ok(None)
    });
    for r in results {
        if let Some((q, l, p, msg)) = r? {
            return Ok(OracleReport {
                side: side_name.to_string(),
                k,
                window: *window,
                status: false,
                failing_bidegree: Some((q, l, p)),
                detail: Some(msg),
            });
        }
    }
    Ok(OracleReport {
        side: side_name.to_string(),
        k,
        window: *window,
        status: true,
        failing_bidegree: None,
        detail: None,
    })
}

fn factor_min_bidegree(ring: &RingRef) -> (i64, i64) {
    let mut q = 0;
    for g in ring.gens() {
        if g.parity == Parity::Odd {
            q += g.qdeg;
        }
    }
    (q, 0)
}

const _: () = {
    fn _assert_send_sync<T: Send + Sync>() {}
    fn _check() {
        _assert_send_sync::<SquareModel>();
    }
};

#[allow(unused_imports)]
use Error as _ErrorAlias;
