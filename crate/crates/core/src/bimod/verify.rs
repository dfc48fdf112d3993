//! The relation battery: each identity is checked on every basis element of
//! every bidegree inside the window, with exact arithmetic. Failures carry
//! the first failing bidegree and a printed counterexample.

use super::*;
use crate::linalg::Echelon;
use crate::omega::gdim_omega;
use crate::scalar::PiScalar;
use serde::Serialize;
use std::collections::HashMap;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    ZigzagLeft,
    ZigzagRight,
    PiIotaId,
    MuMuinvId,
    MuIotaZero,
    PiMuinvZero,
    XiSlides,
    QuotientIso,
    SesGdim,
    SweetDecompLeft,
    SweetDecompRight,
}

impl Relation {
    pub const ALL: [Relation; 11] = [
        Relation::ZigzagLeft,
        Relation::ZigzagRight,
        Relation::PiIotaId,
        Relation::MuMuinvId,
        Relation::MuIotaZero,
        Relation::PiMuinvZero,
        Relation::XiSlides,
        Relation::QuotientIso,
        Relation::SesGdim,
        Relation::SweetDecompLeft,
        Relation::SweetDecompRight,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::ZigzagLeft => "zigzag_left",
            Relation::ZigzagRight => "zigzag_right",
            Relation::PiIotaId => "pi_iota_id",
            Relation::MuMuinvId => "mu_muinv_id",
            Relation::MuIotaZero => "mu_iota_zero",
            Relation::PiMuinvZero => "pi_muinv_zero",
            Relation::XiSlides => "xi_slides",
            Relation::QuotientIso => "quotient_iso",
            Relation::SesGdim => "ses_gdim",
            Relation::SweetDecompLeft => "sweet_decomp_left",
            Relation::SweetDecompRight => "sweet_decomp_right",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Relation> {
        Relation::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub relation: String,
    pub k: usize,
    pub window: Window,
    pub status: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_bidegree: Option<(i64, i64, u8)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl MorphismReport {
    fn pass(relation: Relation, k: usize, window: Window) -> Self {
        MorphismReport {
            relation: relation.name().to_string(),
            k,
            window,
            status: true,
            failing_bidegree: None,
            counterexample: None,
        }
    }

    fn fail(
        relation: Relation,
        k: usize,
        window: Window,
        cell: (i64, i64, u8),
        witness: String,
    ) -> Self {
        MorphismReport {
            relation: relation.name().to_string(),
            k,
            window,
            status: false,
            failing_bidegree: Some(cell),
            counterexample: Some(witness),
        }
    }
}

fn even_cells(w: &Window) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut q = if w.qmin % 2 == 0 { w.qmin } else { w.qmin + 1 };
    while q <= w.qmax {
        let mut l = if w.lmin % 2 == 0 { w.lmin } else { w.lmin + 1 };
        while l <= w.lmax {
            out.push((q, l));
            l += 2;
        }
        q += 2;
    }
    out
}

/// Checks the named identity at level `k` over the window.
pub fn verify(relation: Relation, k: usize, window: &Window) -> Result<MorphismReport> {
    match relation {
        Relation::ZigzagLeft => zigzag(relation, k, window, true),
        Relation::ZigzagRight => zigzag(relation, k, window, false),
        Relation::PiIotaId => xi_module_identity(relation, k, window),
        Relation::MuMuinvId => xi_module_identity(relation, k, window),
        Relation::MuIotaZero => xi_module_identity(relation, k, window),
        Relation::PiMuinvZero => xi_module_identity(relation, k, window),
        Relation::XiSlides => xi_slides(k, window),
        Relation::QuotientIso => quotient_iso(k, window),
        Relation::SesGdim => ses_gdim(k, window),
        Relation::SweetDecompLeft => sweet_decomp(relation, k, window),
        Relation::SweetDecompRight => sweet_decomp(relation, k, window),
    }
}

/// Both unit-counit composites are the identity on the one-step bimodule.
fn zigzag(relation: Relation, k: usize, window: &Window, left: bool) -> Result<MorphismReport> {
    let red_up = Reducer::new(k + 1); // its Down square has factor ring flag(k)
    let fl = flag(k);
    let psi = psi_star(k);
    let cells = even_cells(window);
    let failures = crate::parallel_map(cells, |&(q, l)| -> Result<Option<(i64, i64, String)>> {
        for m in monomials_at(&fl.ring, q, l) {
            let w = SuperPoly::from_terms(&fl.ring, [(m, Rational::one())]);
            let mut got = SuperPoly::zero(&fl.ring);
            for lam in 0..=k {
                let (a, b) = if left {
                    // (epsilon ⊗ id) ∘ (id ⊗ eta): pair (w, x_l), tail xi^{k-l}
                    (w.clone(), fl.x(lam))
                } else {
                    // (id ⊗ epsilon) ∘ (eta ⊗ id): pair (xi^{k-l}, w), head x_l
                    (fl.xi(0).pow((k - lam) as u32), w.clone())
                };
                let d = red_up.reduce_down(&a, &b)?;
                let val = map_epsilon(&red_up, &d)?;
                let img = psi.apply(&val)?;
                let term = if left {
                    img.mul(&fl.xi(0).pow((k - lam) as u32))
                } else {
                    fl.x(lam).mul(&img)
                };
                got = if lam % 2 == 0 { got.add(&term) } else { got.sub(&term) };
            }
            if got != w {
                return Ok(Some((q, l, format!("element {w}: got {got}"))));
            }
        }
        Ok(None)
    });
    for f in failures {
        if let Some((q, l, msg)) = f? {
            return Ok(MorphismReport::fail(relation, k, *window, (q, l, 0), msg));
        }
    }
    Ok(MorphismReport::pass(relation, k, *window))
}

/// Identities of maps through `Omega_k[xi]`: pi∘iota = id, mu∘mu^{-1} = id,
/// mu∘iota = 0, pi∘mu^{-1} = 0, tested on every monomial in the window.
fn xi_module_identity(relation: Relation, k: usize, window: &Window) -> Result<MorphismReport> {
    let red = Reducer::new(k);
    let cells = even_cells(window);
    let failures = crate::parallel_map(cells, |&(q, l)| -> Result<Option<(i64, i64, String)>> {
        for m in monomials_at(&red.omega_xi.ring, q, l) {
            let f = SuperPoly::from_terms(&red.omega_xi.ring, [(m, Rational::one())]);
            let (got, expect) = match relation {
                Relation::PiIotaId => (map_pi(&red, &map_iota(&red, &f)?)?, f.clone()),
                Relation::MuMuinvId => (map_mu(&red, &map_mu_inv(&red, &f)?)?, f.clone()),
                Relation::MuIotaZero => {
                    (map_mu(&red, &map_iota(&red, &f)?)?, SuperPoly::zero(&red.omega_xi.ring))
                }
                Relation::PiMuinvZero => {
                    (map_pi(&red, &map_mu_inv(&red, &f)?)?, SuperPoly::zero(&red.omega_xi.ring))
                }
                _ => unreachable!(),
            };
            if got != expect {
                return Ok(Some((q, l, format!("element {f}: got {got}"))));
            }
        }
        Ok(None)
    });
    for f in failures {
        if let Some((q, l, msg)) = f? {
            return Ok(MorphismReport::fail(relation, k, *window, (q, l, 0), msg));
        }
    }
    Ok(MorphismReport::pass(relation, k, *window))
}

/// The alternating Chern sum is symmetric across the tensor and `xi` slides
/// over it.
fn xi_slides(k: usize, window: &Window) -> Result<MorphismReport> {
    let red = Reducer::new(k);
    let fl = &red.up_factor;
    let mut lhs = TensorElement::zero(Side::Up, k);
    let mut rhs = TensorElement::zero(Side::Up, k);
    let mut slid_l = TensorElement::zero(Side::Up, k);
    let mut slid_r = TensorElement::zero(Side::Up, k);
    for l in 0..=k {
        let sign = |t: TensorElement| if l % 2 == 0 { t } else { t.neg() };
        lhs.add_assign(&sign(red.reduce_up(&fl.x(l), &fl.xi(0).pow((k - l) as u32))?));
        rhs.add_assign(&sign(red.reduce_up(&fl.xi(0).pow((k - l) as u32), &fl.x(l))?));
        slid_l.add_assign(&sign(
            red.reduce_up(&fl.xi(0).mul(&fl.x(l)), &fl.xi(0).pow((k - l) as u32))?,
        ));
        slid_r.add_assign(&sign(
            red.reduce_up(&fl.x(l), &fl.xi(0).pow((k - l) as u32 + 1))?,
        ));
    }
    if lhs != rhs {
        return Ok(MorphismReport::fail(
            Relation::XiSlides,
            k,
            *window,
            (2 * k as i64, 0, 0),
            format!("sum symmetry: {lhs} vs {rhs}"),
        ));
    }
    if slid_l != slid_r {
        return Ok(MorphismReport::fail(
            Relation::XiSlides,
            k,
            *window,
            (2 * k as i64 + 2, 0, 0),
            format!("xi slide: {slid_l} vs {slid_r}"),
        ));
    }
    Ok(MorphismReport::pass(Relation::XiSlides, k, *window))
}

struct CellIndex {
    basis: Vec<(Label, Mono)>,
    pos: HashMap<(Label, Mono), usize>,
}

impl CellIndex {
    fn new(red: &Reducer, side: Side, q: i64, l: i64, p: Parity) -> Self {
        let basis = tensor_basis(red, side, q, l, p);
        let pos = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        CellIndex { basis, pos }
    }

    fn vector(&self, t: &TensorElement) -> Result<crate::linalg::SparseRow> {
        let mut row = std::collections::BTreeMap::new();
        for (lbl, c) in &t.coeffs {
            for (m, r) in c.terms() {
                let idx = self
                    .pos
                    .get(&(*lbl, *m))
                    .ok_or_else(|| Error::InvalidArg("element outside the cell".into()))?;
                *row.entry(*idx).or_insert_with(Rational::zero) += r.clone();
            }
        }
        Ok(crate::linalg::row_from_map(row))
    }
}

use num_traits::Zero;

/// The commutator decomposition: per bidegree, `u` is injective, the images
/// of `u` and `iota` intersect trivially, the two composites of
/// `(mu, pi)` and `(mu^{-1}, iota)` are mutually inverse on the quotient by
/// the image of `u`, and the dimensions of the short exact sequence add up.
fn quotient_iso(k: usize, window: &Window) -> Result<MorphismReport> {
    let umap = UMap::new(k);
    let red = umap.reducer();
    let mut cells = Vec::new();
    for (q, l) in even_cells(window) {
        for p in [Parity::Even, Parity::Odd] {
            cells.push((q, l, p));
        }
    }
    let results = crate::parallel_map(cells, |&(q, l, p)| -> Result<Option<(i64, i64, u8, String)>> {
        let idx = CellIndex::new(red, Side::Up, q, l, p);
        let up_dim = idx.basis.len();
        let down_basis = tensor_basis(red, Side::Down, q, l, p);
        // image of u, spanned by the down basis
        let mut ech = Echelon::new();
        let mut u_rank = 0usize;
        for (lbl, m) in &down_basis {
            let t = basis_element(red, Side::Down, *lbl, *m);
            let ut = umap.apply(&t)?;
            if ech.insert(idx.vector(&ut)?) {
                u_rank += 1;
            }
        }
        if u_rank != down_basis.len() {
            return Ok(Some((q, l, p.as_u8(), format!(
                "u not injective: rank {u_rank} of {}",
                down_basis.len()
            ))));
        }
        // Im u ∩ Im iota = 0: iota lands here from (q-2k, l)
        let mut both = Echelon::new();
        for (lbl, m) in &down_basis {
            let t = basis_element(red, Side::Down, *lbl, *m);
            both.insert(idx.vector(&umap.apply(&t)?)?);
        }
        let mut iota_rank = 0usize;
        let mut joint = u_rank;
        for m in monomials_at(&red.omega_xi.ring, q - 2 * k as i64, l) {
            if (m.odd_count() % 2 == 0) != (p == Parity::Even) {
                continue;
            }
            let f = SuperPoly::from_terms(&red.omega_xi.ring, [(m, Rational::one())]);
            let it = map_iota(red, &f)?;
            let mut solo = Echelon::new();
            solo.insert(idx.vector(&it)?);
            if solo.rank() > 0 {
                iota_rank += 1;
            }
            if both.insert(idx.vector(&it)?) {
                joint += 1;
            }
        }
        if joint != u_rank + iota_rank {
            return Ok(Some((q, l, p.as_u8(), "Im u meets Im iota".to_string())));
        }
        // SES dimension count: dim Up = dim Down + dim target(pi) + dim target(mu)
        let pi_dim = monomials_at(&red.omega_xi.ring, q - 2 * k as i64, l)
            .into_iter()
            .filter(|m| (m.odd_count() % 2 == 0) == (p == Parity::Even))
            .count();
        let mu_dim = monomials_at(&red.omega_xi.ring, q + 2 * k as i64 + 2, l - 2)
            .into_iter()
            .filter(|m| (m.odd_count() % 2 == 0) == (p == Parity::Odd))
            .count();
        if up_dim != down_basis.len() + pi_dim + mu_dim {
            return Ok(Some((q, l, p.as_u8(), format!(
                "exactness dims: {up_dim} != {} + {pi_dim} + {mu_dim}",
                down_basis.len()
            ))));
        }
        // reverse composite is the identity on the quotient
        for (lbl, m) in &idx.basis {
            let t = basis_element(red, Side::Up, *lbl, *m);
            let backward = map_mu_inv(red, &map_mu(red, &t)?)?;
            let forward = map_iota(red, &map_pi(red, &t)?)?;
            let r = t.sub(&backward).sub(&forward);
            if !ech.contains(idx.vector(&r)?) {
                return Ok(Some((q, l, p.as_u8(), format!(
                    "t - mu_inv(mu(t)) - iota(pi(t)) not in Im u for t = {t}"
                ))));
            }
        }
        Ok(None)
    });
    for r in results {
        if let Some((q, l, p, msg)) = r? {
            return Ok(MorphismReport::fail(Relation::QuotientIso, k, *window, (q, l, p), msg));
        }
    }
    Ok(MorphismReport::pass(Relation::QuotientIso, k, *window))
}

/// `gdim Up - gdim Down = (q^{2k} + pi l^2 q^{-2k-2}) gdim Omega_k[xi]`.
fn ses_gdim(k: usize, window: &Window) -> Result<MorphismReport> {
    let red = Reducer::new(k);
    // enumerate with enough headroom for the shifted right-hand side
    let pad = 2 * k as i64 + 2;
    let wide = Window::new(window.qmin - pad, window.qmax + pad, 0, window.lmax + 2);
    let up = gdim_square(&red, Side::Up, &wide);
    let down = gdim_square(&red, Side::Down, &wide);
    let lhs = up.sub(&down);
    let xi_ring = gdim_omega(&red.omega_xi, &wide)?;
    let rhs = xi_ring
        .shift(2 * k as i64, 0, PiScalar::one())
        .add(&xi_ring.shift(-2 * k as i64 - 2, 2, PiScalar::pi()));
    if let Some((q, l)) = lhs.first_difference(&rhs, window) {
        return Ok(MorphismReport::fail(
            Relation::SesGdim,
            k,
            *window,
            (q, l, 0),
            format!("{} vs {}", lhs.coeff(q, l), rhs.coeff(q, l)),
        ));
    }
    Ok(MorphismReport::pass(Relation::SesGdim, k, *window))
}

/// The tensor squares are sweet: as left and as right `Omega_k`-supermodules
/// they decompose into shifted copies of `Omega_k ⊗ Q[xi]`, so their graded
/// dimensions factor accordingly:
/// `gdim Up = [k+1] (q^k + pi l^2 q^{-k-2}) gdim Omega_k[xi]` and the same
/// with `[k]` and `(q^{k-1} + pi l^2 q^{-k-1})` for the Down square.
fn sweet_decomp(relation: Relation, k: usize, window: &Window) -> Result<MorphismReport> {
    let red = Reducer::new(k);
    let pad = 2 * k as i64 + 4;
    let wide = Window::new(window.qmin - pad, window.qmax + pad, 0, window.lmax + 2);
    let xi_ring = gdim_omega(&red.omega_xi, &wide)?;
    let (square, mult, qa, qb) = match relation {
        Relation::SweetDecompLeft => (
            gdim_square(&red, Side::Up, &wide),
            GradedSeries::qint(k as i64 + 1),
            k as i64,
            -(k as i64) - 2,
        ),
        Relation::SweetDecompRight => (
            gdim_square(&red, Side::Down, &wide),
            GradedSeries::qint(k as i64),
            k as i64 - 1,
            -(k as i64) - 1,
        ),
        _ => unreachable!(),
    };
    let pieces = GradedSeries::monomial(qa, 0, PiScalar::one())
        .add(&GradedSeries::monomial(qb, 2, PiScalar::pi()));
    let rhs = mult.mul(&pieces).mul(&xi_ring);
    if let Some((q, l)) = square.first_difference(&rhs, window) {
        return Ok(MorphismReport::fail(
            relation,
            k,
            *window,
            (q, l, 0),
            format!("{} vs {}", square.coeff(q, l), rhs.coeff(q, l)),
        ));
    }
    Ok(MorphismReport::pass(relation, k, *window))
}
