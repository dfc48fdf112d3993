//! Normal forms in the tensor-square superbimodules and the morphisms
//! between them.
//!
//! For the upward square `Omega_{k,k+1} ⊗_{k+1} Omega_{k+1,k}` every element
//! decomposes uniquely as a sum of `(xi^a ⊗ xi^b s_{k+1}^d) * c` with
//! `0 <= a <= k`, `b >= 0`, `d in {0,1}` and `c in Omega_k` acting through the
//! right factor. For the downward square `Omega_{k,k-1} ⊗_{k-1} Omega_{k-1,k}`
//! the decomposition is `c * (xi^a ⊗ xi^b s_k^d)` with `a <= k-1` and the
//! coefficient acting through the left factor.
//!
//! Reduction to the normal form uses three moves: sliding middle-ring images
//! across the tensor, capping the left power of `xi` with the top Chern
//! relation, and expanding the right factor's odd generators over the outer
//! ring. Koszul signs never appear across the tensor sign (the balanced
//! relations are sign free); all signs happen inside a single factor ring and
//! are handled by the polynomial engine.

pub mod oracle;

use crate::omega::{
    chern_y, flag, grassmann, grassmann_xi, phi_star, psi_star, y_xi, OmegaRing,
};
use crate::poly::{
    monomials_at, GenSpec, Mono, Parity, Ring, RingHom, RingRef, SuperPoly,
};
use crate::scalar::Rational;
use crate::series::{GradedSeries, Window};
use crate::{Error, Result};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `Omega_{k,k+1} ⊗_{k+1} Omega_{k+1,k}`
    Up,
    /// `Omega_{k,k-1} ⊗_{k-1} Omega_{k-1,k}`
    Down,
}

/// Basis label: left xi-power, right xi-power, right s-flag.
pub type Label = (u16, u16, bool);

#[derive(Clone)]
pub struct TensorElement {
    pub side: Side,
    pub k: usize,
    /// label -> coefficient in `Omega_k`. Up: right coefficients; Down: left.
    pub coeffs: BTreeMap<Label, SuperPoly>,
}

impl TensorElement {
    pub fn zero(side: Side, k: usize) -> Self {
        TensorElement { side, k, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        assert!(self.side == other.side && self.k == other.k);
        for (lbl, c) in &other.coeffs {
            self.add_term(*lbl, c.clone());
        }
    }

    pub fn add_term(&mut self, lbl: Label, c: SuperPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(lbl) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            side: self.side,
            k: self.k,
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_assign(&other.neg());
        out
    }

    pub fn scale(&self, r: &Rational) -> TensorElement {
        TensorElement {
            side: self.side,
            k: self.k,
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, c.scale(r))).collect(),
        }
    }

    /// Bidegree of the label part alone.
    pub fn label_bidegree(side: Side, k: usize, lbl: Label) -> (i64, i64, Parity) {
        let (a, b, d) = lbl;
        let sdeg = match side {
            Side::Up => -2 * (k as i64 + 1),
            Side::Down => -2 * (k as i64),
        };
        let q = 2 * (a as i64 + b as i64) + if d { sdeg } else { 0 };
        let l = if d { 2 } else { 0 };
        (q, l, if d { Parity::Odd } else { Parity::Even })
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.k == other.k && self.sub(other).is_zero()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sname = match self.side {
            Side::Up => format!("s{}", self.k + 1),
            Side::Down => format!("s{}", self.k),
        };
        let mut first = true;
        for ((a, b, d), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let lhs = match a {
                0 => "1".to_string(),
                1 => "xi".to_string(),
                _ => format!("xi^{a}"),
            };
            let mut rhs = match b {
                0 => String::new(),
                1 => "xi".to_string(),
                _ => format!("xi^{b}"),
            };
            if *d {
                if !rhs.is_empty() {
                    rhs.push('*');
                }
                rhs.push_str(&sname);
            }
            if rhs.is_empty() {
                rhs.push('1');
            }
            match self.side {
                Side::Up => write!(f, "({lhs} (x) {rhs})*({c})")?,
                Side::Down => write!(f, "({c})*({lhs} (x) {rhs})")?,
            }
        }
        Ok(())
    }
}

/// Shared data for reductions at a fixed level.
pub struct Reducer {
    pub k: usize,
    pub omega: OmegaRing,
    pub omega_xi: OmegaRing,
    pub up_factor: OmegaRing,
    pub down_factor: Option<OmegaRing>,
    phi: RingHom,
    psi: RingHom,
    // step A (up): flag(k) -> [X_1..X_{k+1}, xi | s_1..s_{k+1}]
    up_mid: RingRef,
    up_mid_sub: RingHom,
    up_mid_cap: SuperPoly,
    up_mid_out: RingHom,
    // step B (up): flag(k) -> [xi, x_1..x_k | t, S_1..S_k]
    up_right: RingRef,
    up_right_sub: RingHom,
    up_right_out: RingHom,
    // step A' (down): flag(k-1) -> [x_1..x_{k-1}, xi | T_1..T_{k-1}, t]
    dn_mid: Option<RingRef>,
    dn_mid_sub: Option<RingHom>,
    dn_mid_out: Option<RingHom>,
    // step B' (down): flag(k-1) -> [X_1..X_k, xi | s_1..s_k]
    dn_left: Option<RingRef>,
    dn_left_sub: Option<RingHom>,
    dn_left_cap: Option<SuperPoly>,
    dn_left_out: Option<RingHom>,
    embed_xi: RingHom,
    // memo tables; written once per key, read-mostly afterwards
    lcache: std::sync::Mutex<std::collections::HashMap<(usize, Label), TensorElement>>,
    iota_cache: std::sync::Mutex<std::collections::HashMap<u16, TensorElement>>,
    muinv_cache: std::sync::Mutex<std::collections::HashMap<u16, TensorElement>>,
}

/// Rewrites every power `gen^e` with `e >= cap` using `gen^cap = rhs`.
pub(crate) fn cap_even_power(p: &SuperPoly, gen: usize, cap: u16, rhs: &SuperPoly) -> SuperPoly {
    let ring = p.ring().clone();
    let slot = {
        // locate even slot by probing the generator polynomial
        let g = SuperPoly::gen(&ring, gen);
        let (m, _) = g.terms().next().unwrap();
        m.even.iter().position(|&e| e == 1).unwrap()
    };
    let mut cur = p.clone();
    loop {
        let mut ok = SuperPoly::zero(&ring);
        let mut pending: Vec<(Mono, Rational)> = Vec::new();
        for (m, c) in cur.terms() {
            if m.even[slot] >= cap {
                pending.push((*m, c.clone()));
            } else {
                ok.add_term(*m, c.clone());
            }
        }
        if pending.is_empty() {
            return ok;
        }
        let mut next = ok;
        for (m, c) in pending {
            let mut m2 = m;
            m2.even[slot] -= cap;
            let stub = SuperPoly::from_terms(&ring, [(m2, c)]);
            next = next.add(&stub.mul(rhs));
        }
        cur = next;
    }
}

impl Reducer {
    pub fn new(k: usize) -> Self {
        let omega = grassmann(k);
        let omega_xi = grassmann_xi(k);
        let up_factor = flag(k);
        let down_factor = if k >= 1 { Some(flag(k - 1)) } else { None };
        let phi = phi_star(k);
        let psi = psi_star(k);
        let fl = &up_factor;

        // --- Up, step A: expand the left factor over psi*(Omega_{k+1}) ---
        let mut gens = Vec::new();
        for i in 1..=k + 1 {
            gens.push(GenSpec::even(format!("X{i}"), 2 * i as i64));
        }
        gens.push(GenSpec::even("xi", 2));
        for i in 1..=k + 1 {
            gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
        }
        let up_mid = Ring::new(gens);
        let xcap = |ring: &RingRef, idx: usize| SuperPoly::gen(ring, idx);
        let big_x = |i: usize| -> SuperPoly {
            if i == 0 {
                SuperPoly::one(&up_mid)
            } else if i <= k + 1 {
                xcap(&up_mid, i - 1)
            } else {
                SuperPoly::zero(&up_mid)
            }
        };
        let xi_mid = SuperPoly::gen(&up_mid, k + 1);
        // x_i = sum_p (-1)^p X_{i-p} xi^p
        let mut images = Vec::new();
        for i in 1..=k {
            let mut acc = SuperPoly::zero(&up_mid);
            for p in 0..=i {
                let t = big_x(i - p).mul(&xi_mid.pow(p as u32));
                acc = if p % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            images.push(acc);
        }
        images.push(xi_mid.clone());
        for i in 1..=k + 1 {
            images.push(SuperPoly::gen(&up_mid, k + 2 + i - 1));
        }
        let up_mid_sub =
            RingHom::new(fl.ring.clone(), up_mid.clone(), images).expect("graded");
        // xi^{k+1} = (-1)^k sum_{p=0}^{k} (-1)^p X_{k+1-p} xi^p
        let mut cap = SuperPoly::zero(&up_mid);
        for p in 0..=k {
            let t = big_x(k + 1 - p).mul(&xi_mid.pow(p as u32));
            cap = if (k + p) % 2 == 0 { cap.add(&t) } else { cap.sub(&t) };
        }
        let up_mid_cap = cap;
        // X_j -> psi*(x_{j,k+1}) inside the right factor; s_j -> s_j
        let mut images = Vec::new();
        for j in 1..=k + 1 {
            images.push(fl.x(j).add(&fl.xi(0).mul(&fl.x(j - 1))));
        }
        images.push(fl.xi(0));
        for j in 1..=k + 1 {
            images.push(fl.s(j));
        }
        let up_mid_out =
            RingHom::new(up_mid.clone(), fl.ring.clone(), images).expect("graded");

        // --- Up, step B: expand the right factor over phi*(Omega_k) ---
        let mut gens = Vec::new();
        gens.push(GenSpec::even("xi", 2));
        for i in 1..=k {
            gens.push(GenSpec::even(format!("x{i}"), 2 * i as i64));
        }
        gens.push(GenSpec::odd("t", -2 * (k as i64 + 1), 2));
        for i in 1..=k {
            gens.push(GenSpec::odd(format!("S{i}"), -2 * i as i64, 2));
        }
        let up_right = Ring::new(gens);
        let xi_b = SuperPoly::gen(&up_right, 0);
        let t_b = SuperPoly::gen(&up_right, k + 1);
        let cap_s = |i: usize| SuperPoly::gen(&up_right, k + 1 + 1 + i - 1);
        let mut images = Vec::new();
        for i in 1..=k {
            images.push(SuperPoly::gen(&up_right, i));
        }
        images.push(xi_b.clone());
        for i in 1..=k {
            // s_i = sum_{p=0}^{k-i} (-xi)^p S_{i+p} + (-xi)^{k+1-i} t
            let mut acc = SuperPoly::zero(&up_right);
            for p in 0..=(k - i) {
                acc = acc.add(&xi_b.neg().pow(p as u32).mul(&cap_s(i + p)));
            }
            acc = acc.add(&xi_b.neg().pow((k + 1 - i) as u32).mul(&t_b));
            images.push(acc);
        }
        images.push(t_b.clone());
        let up_right_sub =
            RingHom::new(fl.ring.clone(), up_right.clone(), images).expect("graded");
        // coefficient part back into Omega_k: x_i -> x_i, S_i -> s_i (xi, t unused)
        let mut images = Vec::new();
        images.push(SuperPoly::zero(&omega.ring));
        for i in 1..=k {
            images.push(omega.x(i));
        }
        images.push(SuperPoly::zero(&omega.ring));
        for i in 1..=k {
            images.push(omega.s(i));
        }
        let up_right_out =
            RingHom::new(up_right.clone(), omega.ring.clone(), images).expect("graded");

        // --- Down, steps A'/B' ---
        let (dn_mid, dn_mid_sub, dn_mid_out, dn_left, dn_left_sub, dn_left_cap, dn_left_out) =
            if let Some(dfl) = &down_factor {
                let km = k - 1;
                // A': flag(k-1) -> [x_1..x_{k-1}, xi | T_1..T_{k-1}, t]
                let mut gens = Vec::new();
                for i in 1..=km {
                    gens.push(GenSpec::even(format!("x{i}"), 2 * i as i64));
                }
                gens.push(GenSpec::even("xi", 2));
                for i in 1..=km {
                    gens.push(GenSpec::odd(format!("T{i}"), -2 * i as i64, 2));
                }
                gens.push(GenSpec::odd("t", -2 * k as i64, 2));
                let mid = Ring::new(gens);
                let xi_c = SuperPoly::gen(&mid, km);
                let t_c = SuperPoly::gen(&mid, 2 * km + 1);
                let cap_t = |i: usize| SuperPoly::gen(&mid, km + 1 + i - 1);
                let mut images = Vec::new();
                for i in 1..=km {
                    images.push(SuperPoly::gen(&mid, i - 1));
                }
                images.push(xi_c.clone());
                for i in 1..=km {
                    let mut acc = SuperPoly::zero(&mid);
                    for p in 0..=(km - i) {
                        acc = acc.add(&xi_c.neg().pow(p as u32).mul(&cap_t(i + p)));
                    }
                    acc = acc.add(&xi_c.neg().pow((k - i) as u32).mul(&t_c));
                    images.push(acc);
                }
                images.push(t_c.clone());
                let mid_sub =
                    RingHom::new(dfl.ring.clone(), mid.clone(), images).expect("graded");
                // T_j -> phi*(s_{j,k-1}) = s_j + xi s_{j+1} in flag(k-1)
                let mut images = Vec::new();
                for i in 1..=km {
                    images.push(dfl.x(i));
                }
                images.push(SuperPoly::zero(&dfl.ring));
                for j in 1..=km {
                    images.push(dfl.s(j).add(&dfl.xi(0).mul(&dfl.s(j + 1))));
                }
                images.push(SuperPoly::zero(&dfl.ring));
                let mid_out =
                    RingHom::new(mid.clone(), dfl.ring.clone(), images).expect("graded");

                // B': flag(k-1) -> [X_1..X_k, xi | s_1..s_k]
                let mut gens = Vec::new();
                for i in 1..=k {
                    gens.push(GenSpec::even(format!("X{i}"), 2 * i as i64));
                }
                gens.push(GenSpec::even("xi", 2));
                for i in 1..=k {
                    gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
                }
                let left = Ring::new(gens);
                let xi_d = SuperPoly::gen(&left, k);
                let big_xd = |i: usize| -> SuperPoly {
                    if i == 0 {
                        SuperPoly::one(&left)
                    } else if i <= k {
                        SuperPoly::gen(&left, i - 1)
                    } else {
                        SuperPoly::zero(&left)
                    }
                };
                let mut images = Vec::new();
                for i in 1..=km {
                    let mut acc = SuperPoly::zero(&left);
                    for p in 0..=i {
                        let t = big_xd(i - p).mul(&xi_d.pow(p as u32));
                        acc = if p % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                    }
                    images.push(acc);
                }
                images.push(xi_d.clone());
                for i in 1..=k {
                    images.push(SuperPoly::gen(&left, k + 1 + i - 1));
                }
                let left_sub =
                    RingHom::new(dfl.ring.clone(), left.clone(), images).expect("graded");
                // xi^k = (-1)^{k-1} sum_{p=0}^{k-1} (-1)^p X_{k-p} xi^p
                let mut cap = SuperPoly::zero(&left);
                for p in 0..k {
                    let t = big_xd(k - p).mul(&xi_d.pow(p as u32));
                    cap = if (k - 1 + p) % 2 == 0 { cap.add(&t) } else { cap.sub(&t) };
                }
                // X_j -> x_j, s_j -> s_j in Omega_k
                let mut images = Vec::new();
                for j in 1..=k {
                    images.push(omega.x(j));
                }
                images.push(SuperPoly::zero(&omega.ring));
                for j in 1..=k {
                    images.push(omega.s(j));
                }
                let left_out =
                    RingHom::new(left.clone(), omega.ring.clone(), images).expect("graded");
                (
                    Some(mid),
                    Some(mid_sub),
                    Some(mid_out),
                    Some(left),
                    Some(left_sub),
                    Some(cap),
                    Some(left_out),
                )
            } else {
                (None, None, None, None, None, None, None)
            };

        // Omega_k -> Omega_k[xi]
        let mut images = Vec::new();
        for i in 1..=k {
            images.push(omega_xi.x(i));
        }
        for i in 1..=k {
            images.push(omega_xi.s(i));
        }
        let embed_xi =
            RingHom::new(omega.ring.clone(), omega_xi.ring.clone(), images).expect("graded");

        Reducer {
            k,
            omega,
            omega_xi,
            up_factor,
            down_factor,
            phi,
            psi,
            up_mid,
            up_mid_sub,
            up_mid_cap,
            up_mid_out,
            up_right,
            up_right_sub,
            up_right_out,
            dn_mid,
            dn_mid_sub,
            dn_mid_out,
            dn_left,
            dn_left_sub,
            dn_left_cap,
            dn_left_out,
            embed_xi,
            lcache: std::sync::Mutex::new(std::collections::HashMap::new()),
            iota_cache: std::sync::Mutex::new(std::collections::HashMap::new()),
            muinv_cache: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }

    pub fn phi(&self) -> &RingHom {
        &self.phi
    }

    pub fn psi(&self) -> &RingHom {
        &self.psi
    }

    pub fn embed_xi(&self) -> &RingHom {
        &self.embed_xi
    }

    /// Reduces a pure tensor `u ⊗ v` of elements of the factor ring.
    pub fn reduce(&self, side: Side, u: &SuperPoly, v: &SuperPoly) -> Result<TensorElement> {
        match side {
            Side::Up => self.reduce_up(u, v),
            Side::Down => self.reduce_down(u, v),
        }
    }

    pub fn reduce_up(&self, u: &SuperPoly, v: &SuperPoly) -> Result<TensorElement> {
        let fl = &self.up_factor;
        if u.ring() != &fl.ring || v.ring() != &fl.ring {
            return Err(Error::RingMismatch("reduce_up factors".into()));
        }
        let k = self.k;
        let mut out = TensorElement::zero(Side::Up, k);
        // step A: u = sum_a psi*(H_a) xi^a with a <= k
        let xi_gen = self.up_mid.gen_index("xi").unwrap();
        let expanded = self.up_mid_sub.apply(u)?;
        let capped = cap_even_power(&expanded, xi_gen, (k + 1) as u16, &self.up_mid_cap);
        // split: low = X's and all odd; high = xi power
        for (lo, hi, c) in capped.split_monomials(k + 1, k + 1) {
            let a = hi.even[k + 1];
            debug_assert!(a as usize <= k);
            let h = SuperPoly::from_terms(&self.up_mid, [(lo, c)]);
            let slid = self.up_mid_out.apply(&h)?;
            let vprime = slid.mul(v);
            // step B: expand over phi*(Omega_k)
            let w = self.up_right_sub.apply(&vprime)?;
            for (lo2, hi2, c2) in w.split_monomials(1, 1) {
                let b = lo2.even[0];
                let d = lo2.odd & 1 != 0;
                let mut m = hi2;
                m.odd >>= 1;
                // shift the even part left: slot 0 of up_right is xi
                let mut me = Mono::unit();
                for j in 0..self.k {
                    me.even[j] = m.even[j + 1];
                }
                me.odd = m.odd;
                let coeff = SuperPoly::from_terms(&self.omega.ring, [(me, c2)]);
                out.add_term((a, b, d), coeff);
            }
        }
        Ok(out)
    }

    pub fn reduce_down(&self, u: &SuperPoly, v: &SuperPoly) -> Result<TensorElement> {
        let k = self.k;
        let dfl = self
            .down_factor
            .as_ref()
            .ok_or_else(|| Error::InvalidArg("down square needs k >= 1".into()))?;
        if u.ring() != &dfl.ring || v.ring() != &dfl.ring {
            return Err(Error::RingMismatch("reduce_down factors".into()));
        }
        let km = k - 1;
        let mut out = TensorElement::zero(Side::Down, k);
        // step A': v = sum phi*(G) xi^b t^d
        let w = self.dn_mid_sub.as_ref().unwrap().apply(v)?;
        for (lo, hi, c) in w.split_monomials(km, km) {
            let b = hi.even[km];
            let d = hi.odd >> km & 1 != 0;
            let g = SuperPoly::from_terms(self.dn_mid.as_ref().unwrap(), [(lo, c)]);
            let slid = self.dn_mid_out.as_ref().unwrap().apply(&g)?;
            let uprime = u.mul(&slid);
            // step B': u' = sum_a psi*(c_a) xi^a, a <= k-1
            let xi_gen = self.dn_left.as_ref().unwrap().gen_index("xi").unwrap();
            let expanded = self.dn_left_sub.as_ref().unwrap().apply(&uprime)?;
            let capped = cap_even_power(
                &expanded,
                xi_gen,
                k as u16,
                self.dn_left_cap.as_ref().unwrap(),
            );
            for (lo2, hi2, c2) in capped.split_monomials(k, k) {
                let a = hi2.even[k];
                debug_assert!((a as usize) < k);
                let coeff_src = SuperPoly::from_terms(self.dn_left.as_ref().unwrap(), [(lo2, c2)]);
                let coeff = self.dn_left_out.as_ref().unwrap().apply(&coeff_src)?;
                out.add_term((a, b, d), coeff);
            }
        }
        Ok(out)
    }

    /// Pure power `xi^e` (optionally with the top s-generator) in the factor ring.
    pub fn up_monomial(&self, e: u16, with_s: bool) -> SuperPoly {
        let fl = &self.up_factor;
        let mut p = fl.xi(0).pow(e as u32);
        if with_s {
            p = p.mul(&fl.s(self.k + 1));
        }
        p
    }

    pub fn down_monomial(&self, e: u16, with_s: bool) -> SuperPoly {
        let dfl = self.down_factor.as_ref().expect("k >= 1");
        let mut p = dfl.xi(0).pow(e as u32);
        if with_s {
            p = p.mul(&dfl.s(self.k));
        }
        p
    }

    /// Left multiplication by a single `Omega_k` generator on a basis label,
    /// memoized: `g . B = reduce(phi(g) xi^a ⊗ xi^b s^d)`.
    fn left_gen_basis(&self, gen: usize, lbl: Label) -> Result<TensorElement> {
        if let Some(t) = self.lcache.lock().unwrap().get(&(gen, lbl)) {
            return Ok(t.clone());
        }
        let g = SuperPoly::gen(&self.omega.ring, gen);
        let u = self.phi.apply(&g)?.mul(&self.up_factor.xi(0).pow(lbl.0 as u32));
        let v = self.up_monomial(lbl.1, lbl.2);
        let t = self.reduce_up(&u, &v)?;
        self.lcache.lock().unwrap().insert((gen, lbl), t.clone());
        Ok(t)
    }

    fn left_gen_up(&self, gen: usize, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(Side::Up, self.k);
        for (&lbl, e) in &t.coeffs {
            let base = self.left_gen_basis(gen, lbl)?;
            for (lbl2, c2) in &base.coeffs {
                out.add_term(*lbl2, c2.mul(e));
            }
        }
        Ok(out)
    }

    /// Left action of `c in Omega_k` on an Up element (through `phi*` into the
    /// left factor). Factors the monomials into generators and applies the
    /// memoized single-generator moves right to left.
    pub fn left_mul_up(&self, c: &SuperPoly, t: &TensorElement) -> Result<TensorElement> {
        assert!(t.side == Side::Up && t.k == self.k);
        if c.ring() != &self.omega.ring {
            return Err(Error::RingMismatch("left_mul_up coefficient".into()));
        }
        let mut out = TensorElement::zero(Side::Up, self.k);
        for (m, coeff) in c.terms() {
            // canonical factor list of the monomial
            let mut factors = Vec::new();
            for j in 0..self.omega.ring.num_even() {
                for _ in 0..m.even[j] {
                    factors.push(self.omega.ring.even_gen(j));
                }
            }
            for j in 0..self.omega.ring.num_odd() {
                if m.odd & (1 << j) != 0 {
                    factors.push(self.omega.ring.odd_gen(j));
                }
            }
            let mut acc = t.clone();
            for &g in factors.iter().rev() {
                acc = self.left_gen_up(g, &acc)?;
            }
            out.add_assign(&acc.scale(coeff));
        }
        Ok(out)
    }

    /// `iota(xi^i)` as an Up element, memoized.
    pub fn iota_basis(&self, i: u16) -> Result<TensorElement> {
        if let Some(t) = self.iota_cache.lock().unwrap().get(&i) {
            return Ok(t.clone());
        }
        let k = self.k;
        let mut out = TensorElement::zero(Side::Up, k);
        for l in 0..=k {
            let u = self.up_factor.xi(0).pow(i as u32).mul(&self.up_factor.x(l));
            let v = self.up_monomial((k - l) as u16, false);
            let mut term = self.reduce_up(&u, &v)?;
            if l % 2 == 1 {
                term = term.neg();
            }
            out.add_assign(&term);
        }
        self.iota_cache.lock().unwrap().insert(i, out.clone());
        Ok(out)
    }

    /// `mu^{-1}(xi^i)` as an Up element, memoized.
    pub fn muinv_basis(&self, i: u16) -> Result<TensorElement> {
        if let Some(t) = self.muinv_cache.lock().unwrap().get(&i) {
            return Ok(t.clone());
        }
        let k = self.k;
        let mut out = TensorElement::zero(Side::Up, k);
        for l in 0..=k.min(i as usize) {
            let u = self.up_factor.x(l);
            let v = self.up_monomial(i - l as u16, true);
            let mut term = self.reduce_up(&u, &v)?;
            if l % 2 == 1 {
                term = term.neg();
            }
            out.add_assign(&term);
        }
        self.muinv_cache.lock().unwrap().insert(i, out.clone());
        Ok(out)
    }

    /// Right action of `c` on an Up element (plain coefficient product).
    pub fn right_mul_up(&self, t: &TensorElement, c: &SuperPoly) -> TensorElement {
        let mut out = TensorElement::zero(Side::Up, self.k);
        for (lbl, e) in &t.coeffs {
            out.add_term(*lbl, e.mul(c));
        }
        out
    }

    /// Left action of `c` on a Down element (plain coefficient product).
    pub fn left_mul_down(&self, c: &SuperPoly, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(Side::Down, self.k);
        for (lbl, e) in &t.coeffs {
            out.add_term(*lbl, c.mul(e));
        }
        out
    }

    /// Right action of `c` on a Down element (through `psi*` into the right
    /// factor, then re-reduction). The coefficient stays on the left, so the
    /// Koszul sign of moving `c` across the basis label is produced by the
    /// reduction itself.
    pub fn right_mul_down(&self, t: &TensorElement, c: &SuperPoly) -> Result<TensorElement> {
        assert!(t.side == Side::Down && t.k == self.k);
        let psi_km = if self.k >= 1 { psi_star(self.k - 1) } else { unreachable!() };
        let cimg = psi_km.apply(c)?;
        let mut out = TensorElement::zero(Side::Down, self.k);
        for (&(a, b, d), e) in &t.coeffs {
            let u = self.down_monomial(a, false);
            let v = self.down_monomial(b, d).mul(&cimg);
            let red = self.reduce_down(&u, &v)?;
            for (lbl, c2) in red.coeffs {
                out.add_term(lbl, e.mul(&c2));
            }
        }
        Ok(out)
    }
}

/// `eta(1) = sum_l (-1)^l x_l ⊗ xi^{k-l}`, the unit of the adjunction,
/// of bidegree `(2k, 0)`.
pub fn map_eta(red: &Reducer) -> TensorElement {
    let k = red.k;
    let mut out = TensorElement::zero(Side::Up, k);
    for l in 0..=k {
        let u = red.up_factor.x(l);
        let v = red.up_monomial((k - l) as u16, false);
        let mut term = red.reduce_up(&u, &v).expect("eta reduces");
        if l % 2 == 1 {
            term = term.neg();
        }
        out.add_assign(&term);
    }
    out
}

/// `eta(p) = p . eta(1)` for `p in Omega_k`.
pub fn map_eta_apply(red: &Reducer, p: &SuperPoly) -> Result<TensorElement> {
    red.left_mul_up(p, &map_eta(red))
}

/// `iota: Omega_k[xi] -> Up`, `xi^i -> xi^i . eta(1)` with the power in the
/// left factor.
pub fn map_iota(red: &Reducer, f: &SuperPoly) -> Result<TensorElement> {
    if f.ring() != &red.omega_xi.ring {
        return Err(Error::RingMismatch("iota argument".into()));
    }
    let k = red.k;
    let xi_slot = k; // even slot of xi in grassmann_xi
    let mut out = TensorElement::zero(Side::Up, k);
    for (m, c) in f.terms() {
        let i = m.even[xi_slot];
        let mut me = Mono::unit();
        me.even[..k].copy_from_slice(&m.even[..k]);
        me.odd = m.odd;
        let coeff = SuperPoly::from_terms(&red.omega.ring, [(me, c.clone())]);
        let base = red.iota_basis(i)?;
        out.add_assign(&red.left_mul_up(&coeff, &base)?);
    }
    Ok(out)
}

/// `pi: Up -> Omega_k[xi]`: `xi^a ⊗ xi^b -> (-1)^{a+b-k} Y^xi_{a+b-k}`, kills
/// the s-flag. Degree `(-2k, 0)`.
pub fn map_pi(red: &Reducer, t: &TensorElement) -> Result<SuperPoly> {
    if t.side != Side::Up || t.k != red.k {
        return Err(Error::InvalidArg("pi expects an Up element".into()));
    }
    let k = red.k as i64;
    let mut out = SuperPoly::zero(&red.omega_xi.ring);
    for (&(a, b, d), c) in &t.coeffs {
        if d {
            continue;
        }
        let i = a as i64 + b as i64 - k;
        let mut y = y_xi(&red.omega_xi, i);
        if i.rem_euclid(2) == 1 {
            y = y.neg();
        }
        out = out.add(&y.mul(&red.embed_xi.apply(c)?));
    }
    Ok(out)
}

/// `epsilon: Down -> Omega_k`: `xi^a ⊗ xi^b -> (-1)^{a+b-k+1} Y_{a+b-k+1,k}`,
/// with the s-flag passing through as the outer `s_k`. Degree `(-2k+2, 0)`.
pub fn map_epsilon(red: &Reducer, t: &TensorElement) -> Result<SuperPoly> {
    if t.side != Side::Down || t.k != red.k {
        return Err(Error::InvalidArg("epsilon expects a Down element".into()));
    }
    let k = red.k as i64;
    let mut out = SuperPoly::zero(&red.omega.ring);
    for (&(a, b, d), c) in &t.coeffs {
        let i = a as i64 + b as i64 - k + 1;
        let mut y = chern_y(&red.omega, i);
        if i.rem_euclid(2) == 1 {
            y = y.neg();
        }
        let mut v = c.mul(&y);
        if d {
            v = v.mul(&red.omega.s(red.k));
        }
        out = out.add(&v);
    }
    Ok(out)
}

/// `mu: Up -> Pi Omega_k[xi]` (odd): kills flagless labels, sends
/// `xi^a ⊗ xi^b s -> (-1)^{a+b} Y^xi_{a+b}`. Degree `(2k+2, -2)`.
pub fn map_mu(red: &Reducer, t: &TensorElement) -> Result<SuperPoly> {
    if t.side != Side::Up || t.k != red.k {
        return Err(Error::InvalidArg("mu expects an Up element".into()));
    }
    let mut out = SuperPoly::zero(&red.omega_xi.ring);
    for (&(a, b, d), c) in &t.coeffs {
        if !d {
            continue;
        }
        let i = a as i64 + b as i64;
        let mut y = y_xi(&red.omega_xi, i);
        if i % 2 == 1 {
            y = y.neg();
        }
        out = out.add(&y.mul(&red.embed_xi.apply(c)?));
    }
    Ok(out)
}

/// `mu^{-1}: Pi Omega_k[xi] -> Up` (odd):
/// `xi^i -> sum_l (-1)^l x_l ⊗ xi^{i-l} s_{k+1}`.
pub fn map_mu_inv(red: &Reducer, f: &SuperPoly) -> Result<TensorElement> {
    if f.ring() != &red.omega_xi.ring {
        return Err(Error::RingMismatch("mu_inv argument".into()));
    }
    let k = red.k;
    let xi_slot = k;
    let mut out = TensorElement::zero(Side::Up, k);
    for (m, c) in f.terms() {
        let i = m.even[xi_slot];
        let mut me = Mono::unit();
        me.even[..k].copy_from_slice(&m.even[..k]);
        me.odd = m.odd;
        // odd map through a left coefficient: Koszul sign (-1)^{p(c)}
        let sign = if me.odd.count_ones() % 2 == 1 { -Rational::one() } else { Rational::one() };
        let coeff = SuperPoly::from_terms(&red.omega.ring, [(me, c * &sign)]);
        let base = red.muinv_basis(i)?;
        out.add_assign(&red.left_mul_up(&coeff, &base)?);
    }
    Ok(out)
}

/// `X^-` on the ascending chain ring: the divided difference in the two flag
/// lines, everything else passing through. `X^+` is its negative on the
/// descending chain. Both have degree `(-2, 0)` and parity 0.
pub fn x_minus_chain(p: &SuperPoly, xi1: usize, xi2: usize) -> SuperPoly {
    p.divided_difference(xi1, xi2)
}

/// Data for the zigzag composites `u : Down -> Up`.
struct UPipeline {
    red_k: Reducer,
    // chain ring for Omega_{k-1,k} ⊗_k Omega_{k,k+1}: x_1..x_{k-1}, xi1, xi2, s_1..s_{k+1}
    chain: crate::omega::OmegaRing,
    leg_left: RingHom,
    leg_right: RingHom,
    // split of the chain back into xi1-powers ⊗ flag(k): [RX_1..RX_k, xi2, xi1 | s_1..s_{k+1}]
    split_ring: RingRef,
    split_sub: RingHom,
    split_cap: SuperPoly,
    split_out: RingHom,
}

impl UPipeline {
    fn new(k: usize) -> Self {
        assert!(k >= 1);
        let red_k = Reducer::new(k);
        let chain = crate::omega::chain(k - 1, 2);
        let dfl = red_k.down_factor.as_ref().unwrap(); // flag(k-1)
        let ufl = &red_k.up_factor; // flag(k)
        let km = k - 1;
        // left leg: Omega_{k-1,k} -> chain: xi -> xi1, s_j -> s_j + xi2 s_{j+1}
        let mut images = Vec::new();
        for i in 1..=km {
            images.push(chain.x(i));
        }
        images.push(chain.xi(0));
        for j in 1..=k {
            images.push(chain.s(j).add(&chain.xi(1).mul(&chain.s(j + 1))));
        }
        let leg_left =
            RingHom::new(dfl.ring.clone(), chain.ring.clone(), images).expect("graded");
        // right leg: Omega_{k,k+1} -> chain: x_i -> x_i + xi1 x_{i-1}, xi -> xi2, s -> s
        let mut images = Vec::new();
        for i in 1..=k {
            images.push(chain.x(i).add(&chain.xi(0).mul(&chain.x(i - 1))));
        }
        images.push(chain.xi(1));
        for j in 1..=k + 1 {
            images.push(chain.s(j));
        }
        let leg_right =
            RingHom::new(ufl.ring.clone(), chain.ring.clone(), images).expect("graded");
        // split ring
        let mut gens = Vec::new();
        for i in 1..=k {
            gens.push(GenSpec::even(format!("RX{i}"), 2 * i as i64));
        }
        gens.push(GenSpec::even("xi2", 2));
        gens.push(GenSpec::even("xi1", 2));
        for i in 1..=k + 1 {
            gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
        }
        let split_ring = Ring::new(gens);
        let rx = |i: usize| -> SuperPoly {
            if i == 0 {
                SuperPoly::one(&split_ring)
            } else if i <= k {
                SuperPoly::gen(&split_ring, i - 1)
            } else {
                SuperPoly::zero(&split_ring)
            }
        };
        let xi1 = SuperPoly::gen(&split_ring, k + 1);
        let xi2 = SuperPoly::gen(&split_ring, k);
        let mut images = Vec::new();
        for i in 1..=km {
            // x_{i,k-1} = sum_p (-1)^p RX_{i-p} xi1^p
            let mut acc = SuperPoly::zero(&split_ring);
            for p in 0..=i {
                let t = rx(i - p).mul(&xi1.pow(p as u32));
                acc = if p % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            images.push(acc);
        }
        images.push(xi1.clone());
        images.push(xi2.clone());
        for j in 1..=k + 1 {
            images.push(SuperPoly::gen(&split_ring, k + 2 + j - 1));
        }
        let split_sub =
            RingHom::new(chain.ring.clone(), split_ring.clone(), images).expect("graded");
        // xi1^k = (-1)^{k-1} sum_{p<k} (-1)^p RX_{k-p} xi1^p
        let mut cap = SuperPoly::zero(&split_ring);
        for p in 0..k {
            let t = rx(k - p).mul(&xi1.pow(p as u32));
            cap = if (k - 1 + p) % 2 == 0 { cap.add(&t) } else { cap.sub(&t) };
        }
        let split_cap = cap;
        // coefficient slot -> flag(k): RX_j -> x_j, xi2 -> xi, s -> s
        let mut images = Vec::new();
        for j in 1..=k {
            images.push(ufl.x(j));
        }
        images.push(ufl.xi(0));
        images.push(SuperPoly::zero(&ufl.ring));
        for j in 1..=k + 1 {
            images.push(ufl.s(j));
        }
        let split_out =
            RingHom::new(split_ring.clone(), ufl.ring.clone(), images).expect("graded");
        UPipeline { red_k, chain, leg_left, leg_right, split_ring, split_sub, split_cap, split_out }
    }

    /// `u` on a pure Down basis monomial `xi^a ⊗ xi^b s^d`.
    fn u_basis(&self, a: u16, b: u16, d: bool) -> Result<TensorElement> {
        let k = self.red_k.k;
        let ufl = &self.red_k.up_factor;
        let mut out = TensorElement::zero(Side::Up, k);
        let w2 = self.red_k.down_monomial(b, d);
        let xi1_gen = self.split_ring.gen_index("xi1").unwrap();
        for l in 0..=k {
            // slots: [xi^a | w2 | x_l | xi^{k-l}], X^- on the middle pair
            let val = self.leg_left.apply(&w2)?.mul(&self.leg_right.apply(&ufl.x(l))?);
            let dd = x_minus_chain(&val, self.chain.xis[0], self.chain.xis[1]);
            // split into xi1-powers with a flag(k) element on the right
            let expanded = self.split_sub.apply(&dd)?;
            let capped = cap_even_power(&expanded, xi1_gen, k as u16, &self.split_cap);
            for (lo, hi, c) in capped.split_monomials(k + 1, k + 2) {
                let cpow = hi.even[k + 1];
                let h = self
                    .split_out
                    .apply(&SuperPoly::from_terms(&self.split_ring, [(lo, c)]))?;
                // epsilon_k on (xi^a ⊗ xi^cpow)
                let i = a as i64 + cpow as i64 - k as i64 + 1;
                let mut y = chern_y(&self.red_k.omega, i);
                if i.rem_euclid(2) == 1 {
                    y = y.neg();
                }
                if y.is_zero() {
                    continue;
                }
                let left = self.red_k.phi().apply(&y)?.mul(&h);
                let right = self.red_k.up_monomial((k - l) as u16, false);
                let mut term = self.red_k.reduce_up(&left, &right)?;
                if l % 2 == 1 {
                    term = term.neg();
                }
                out.add_assign(&term);
            }
        }
        Ok(out)
    }
}

/// `u : Down -> Up`, computed as
/// `(epsilon ⊗ id) ∘ (id ⊗ X^- ⊗ id) ∘ (id ⊗ eta)`.
/// Degree preserving; on low powers it is `xi^a ⊗ xi^b -> -xi^b ⊗ xi^a`.
pub struct UMap {
    pipe: UPipeline,
    cache: std::sync::Mutex<BTreeMap<Label, TensorElement>>,
}

impl UMap {
    pub fn new(k: usize) -> Self {
        UMap { pipe: UPipeline::new(k), cache: std::sync::Mutex::new(BTreeMap::new()) }
    }

    pub fn reducer(&self) -> &Reducer {
        &self.pipe.red_k
    }

    pub fn apply_basis(&self, lbl: Label) -> Result<TensorElement> {
        if let Some(t) = self.cache.lock().unwrap().get(&lbl) {
            return Ok(t.clone());
        }
        let t = self.pipe.u_basis(lbl.0, lbl.1, lbl.2)?;
        self.cache.lock().unwrap().insert(lbl, t.clone());
        Ok(t)
    }

    pub fn apply(&self, t: &TensorElement) -> Result<TensorElement> {
        assert!(t.side == Side::Down && t.k == self.pipe.red_k.k);
        let mut out = TensorElement::zero(Side::Up, t.k);
        for (&lbl, c) in &t.coeffs {
            let base = self.apply_basis(lbl)?;
            out.add_assign(&self.pipe.red_k.left_mul_up(c, &base)?);
        }
        Ok(out)
    }
}

/// The mirror composite `(id ⊗ epsilon) ∘ (id ⊗ X^+ ⊗ id) ∘ (eta ⊗ id)`,
/// used to confirm that both descriptions of `u` agree.
pub fn u_alt_basis(k: usize, a: u16, b: u16, d: bool) -> Result<TensorElement> {
    assert!(k >= 1);
    let red = Reducer::new(k);
    let dfl = red.down_factor.as_ref().unwrap();
    let ufl = &red.up_factor;
    let km = k - 1;
    // descending chain Omega_{k+1,k} ⊗_k Omega_{k,k-1}: lines eta1 (upper), eta2 (lower)
    let mut gens = Vec::new();
    for i in 1..=km {
        gens.push(GenSpec::even(format!("x{i}"), 2 * i as i64));
    }
    gens.push(GenSpec::even("eta1", 2));
    gens.push(GenSpec::even("eta2", 2));
    for i in 1..=k + 1 {
        gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
    }
    let chain = Ring::new(gens);
    let cx = |i: usize| -> SuperPoly {
        if i == 0 {
            SuperPoly::one(&chain)
        } else if i <= km {
            SuperPoly::gen(&chain, i - 1)
        } else {
            SuperPoly::zero(&chain)
        }
    };
    let eta1 = SuperPoly::gen(&chain, km);
    let eta2 = SuperPoly::gen(&chain, km + 1);
    let cs = |j: usize| SuperPoly::gen(&chain, km + 2 + j - 1);
    // upper leg: flag(k) -> chain: x_i -> x_i + eta2 x_{i-1}, xi -> eta1, s_j -> s_j
    let mut images = Vec::new();
    for i in 1..=k {
        images.push(cx(i).add(&eta2.mul(&cx(i - 1))));
    }
    images.push(eta1.clone());
    for j in 1..=k + 1 {
        images.push(cs(j));
    }
    let leg_upper = RingHom::new(ufl.ring.clone(), chain.clone(), images).expect("graded");
    // lower leg: flag(k-1) -> chain: x_i -> x_i, xi -> eta2, s_j -> s_j + eta1 s_{j+1}
    let mut images = Vec::new();
    for i in 1..=km {
        images.push(cx(i));
    }
    images.push(eta2.clone());
    for j in 1..=k {
        images.push(cs(j).add(&eta1.mul(&cs(j + 1))));
    }
    let leg_lower = RingHom::new(dfl.ring.clone(), chain.clone(), images).expect("graded");
    // split ring over upper-leg images: [BX_1..BX_k, Bxi, eta2 | s_1..s_{k+1}]
    let mut gens = Vec::new();
    for i in 1..=k {
        gens.push(GenSpec::even(format!("BX{i}"), 2 * i as i64));
    }
    gens.push(GenSpec::even("Bxi", 2));
    gens.push(GenSpec::even("eta2", 2));
    for i in 1..=k + 1 {
        gens.push(GenSpec::odd(format!("s{i}"), -2 * i as i64, 2));
    }
    let split_ring = Ring::new(gens);
    let bx = |i: usize| -> SuperPoly {
        if i == 0 {
            SuperPoly::one(&split_ring)
        } else if i <= k {
            SuperPoly::gen(&split_ring, i - 1)
        } else {
            SuperPoly::zero(&split_ring)
        }
    };
    let e2 = SuperPoly::gen(&split_ring, k + 1);
    let bxi = SuperPoly::gen(&split_ring, k);
    let mut images = Vec::new();
    for i in 1..=km {
        let mut acc = SuperPoly::zero(&split_ring);
        for p in 0..=i {
            let t = bx(i - p).mul(&e2.pow(p as u32));
            acc = if p % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        images.push(acc);
    }
    images.push(bxi.clone());
    images.push(e2.clone());
    for j in 1..=k + 1 {
        images.push(SuperPoly::gen(&split_ring, k + 2 + j - 1));
    }
    let split_sub = RingHom::new(chain.clone(), split_ring.clone(), images).expect("graded");
    let mut cap = SuperPoly::zero(&split_ring);
    for p in 0..k {
        let t = bx(k - p).mul(&e2.pow(p as u32));
        cap = if (k - 1 + p) % 2 == 0 { cap.add(&t) } else { cap.sub(&t) };
    }
    let mut images = Vec::new();
    for j in 1..=k {
        images.push(ufl.x(j));
    }
    images.push(ufl.xi(0));
    images.push(SuperPoly::zero(&ufl.ring));
    for j in 1..=k + 1 {
        images.push(ufl.s(j));
    }
    let split_out = RingHom::new(split_ring.clone(), ufl.ring.clone(), images).expect("graded");

    let mut out = TensorElement::zero(Side::Up, k);
    for l in 0..=k {
        // slots: [x_l | xi^{k-l} | xi^a | xi^b s^d]; X^+ on the middle pair
        let bval = leg_upper.apply(&ufl.xi(0).pow((k - l) as u32))?;
        let cval = leg_lower.apply(&dfl.xi(0).pow(a as u32))?;
        // X^+ = -(divided difference in the two lines)
        let dd = x_minus_chain(
            &bval.mul(&cval),
            chain.gen_index("eta1").unwrap(),
            chain.gen_index("eta2").unwrap(),
        )
        .neg();
        let expanded = split_sub.apply(&dd)?;
        let capped =
            cap_even_power(&expanded, split_ring.gen_index("eta2").unwrap(), k as u16, &cap);
        for (lo, hi, c) in capped.split_monomials(k + 1, k + 2) {
            let cpow = hi.even[k + 1];
            let g = split_out.apply(&SuperPoly::from_terms(&split_ring, [(lo, c)]))?;
            // epsilon_k on (xi^cpow ⊗ xi^b s^d)
            let i = cpow as i64 + b as i64 - k as i64 + 1;
            let mut y = chern_y(&red.omega, i);
            if i.rem_euclid(2) == 1 {
                y = y.neg();
            }
            if d {
                y = y.mul(&red.omega.s(k));
            }
            if y.is_zero() {
                continue;
            }
            let mut term = red.reduce_up(&ufl.x(l), &g)?;
            term = red.right_mul_up(&term, &y);
            if l % 2 == 1 {
                term = term.neg();
            }
            out.add_assign(&term);
        }
    }
    Ok(out)
}

/// Per-bidegree basis of the normal form: labels with an `Omega_k` monomial.
pub fn tensor_basis(
    red: &Reducer,
    side: Side,
    q: i64,
    l: i64,
    parity: Parity,
) -> Vec<(Label, Mono)> {
    let k = red.k;
    if side == Side::Down && k == 0 {
        return Vec::new();
    }
    let amax = match side {
        Side::Up => k as i64,
        Side::Down => k as i64 - 1,
    };
    let mut out = Vec::new();
    // Omega_k monomials have qdeg >= -k(k+1)
    let qfloor = -(k as i64) * (k as i64 + 1);
    for d in [false, true] {
        let (dq, dl) = match (side, d) {
            (_, false) => (0, 0),
            (Side::Up, true) => (-2 * (k as i64 + 1), 2),
            (Side::Down, true) => (-2 * k as i64, 2),
        };
        let lc = l - dl;
        if lc < 0 {
            continue;
        }
        for a in 0..=amax {
            let mut b = 0i64;
            loop {
                let qc = q - 2 * a - 2 * b - dq;
                if qc < qfloor {
                    break;
                }
                for m in monomials_at(&red.omega.ring, qc, lc) {
                    let mpar = if (m.odd_count() + d as u32) % 2 == 0 {
                        Parity::Even
                    } else {
                        Parity::Odd
                    };
                    if mpar == parity {
                        out.push(((a as u16, b as u16, d), m));
                    }
                }
                b += 1;
            }
        }
    }
    out
}

/// Dimension of the bidegree component.
pub fn tensor_dim(red: &Reducer, side: Side, q: i64, l: i64, parity: Parity) -> usize {
    tensor_basis(red, side, q, l, parity).len()
}

pub fn basis_element(red: &Reducer, side: Side, lbl: Label, m: Mono) -> TensorElement {
    let c = SuperPoly::from_terms(&red.omega.ring, [(m, Rational::one())]);
    let mut t = TensorElement::zero(side, red.k);
    t.add_term(lbl, c);
    t
}

/// Graded dimension of the tensor square, by direct basis enumeration.
pub fn gdim_square(red: &Reducer, side: Side, window: &Window) -> GradedSeries {
    let mut s = GradedSeries::zero(window.qmax);
    for q in window.qmin..=window.qmax {
        for l in window.lmin..=window.lmax {
            for p in [Parity::Even, Parity::Odd] {
                let d = tensor_dim(red, side, q, l, p) as i64;
                if d != 0 {
                    s.add_to(q, l, crate::scalar::PiScalar::graded_count(d, p == Parity::Odd));
                }
            }
        }
    }
    s
}

mod verify;
pub use verify::{verify, MorphismReport, Relation};

#[cfg(test)]
mod tests;
