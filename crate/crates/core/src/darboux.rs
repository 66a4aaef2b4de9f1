//! Darboux transformations of the Jacobi operator: kernel bases, the operators
//! P, L, Q, the reflection-symmetric gauge P̄, and contiguous lifts.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, solve};
use crate::exact::rat::{fmt_rat, parse_rat, rint, sign_pow, Rat};
use crate::exact::{Poly, RatFunc};
use crate::jacobi::{self, contiguous_d, kernel_fn, Contiguous, Family, KernelKind};
use crate::ndiff::{integer_zeros, signed_det, DiffOp, SignedRatFunc};
use crate::params::ParamSet;

/// The data selecting one element of the set of (k, l) Darboux transformations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct DarbouxSpec {
    pub params: ParamSet,
    pub k: usize,
    pub l: usize,
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
    pub d: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    alpha: String,
    beta: String,
    eps: String,
    k: usize,
    l: usize,
    #[serde(rename = "A", default)]
    a: Vec<String>,
    #[serde(rename = "B", default)]
    b: Vec<String>,
    #[serde(rename = "C", default)]
    c: Vec<String>,
    #[serde(rename = "D", default)]
    d: Vec<String>,
}

impl TryFrom<SpecJson> for DarbouxSpec {
    type Error = Error;
    fn try_from(j: SpecJson) -> Result<Self> {
        let list = |v: &[String]| v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>();
        Ok(DarbouxSpec {
            params: ParamSet::unchecked(parse_rat(&j.alpha)?, parse_rat(&j.beta)?, parse_rat(&j.eps)?),
            k: j.k,
            l: j.l,
            a: list(&j.a)?,
            b: list(&j.b)?,
            c: list(&j.c)?,
            d: list(&j.d)?,
        })
    }
}

impl From<DarbouxSpec> for SpecJson {
    fn from(s: DarbouxSpec) -> Self {
        let list = |v: &[Rat]| v.iter().map(fmt_rat).collect();
        SpecJson {
            alpha: fmt_rat(&s.params.alpha),
            beta: fmt_rat(&s.params.beta),
            eps: fmt_rat(&s.params.eps),
            k: s.k,
            l: s.l,
            a: list(&s.a),
            b: list(&s.b),
            c: list(&s.c),
            d: list(&s.d),
        }
    }
}

impl DarbouxSpec {
    pub fn new(
        params: ParamSet,
        k: usize,
        l: usize,
        a: Vec<Rat>,
        b: Vec<Rat>,
        c: Vec<Rat>,
        d: Vec<Rat>,
    ) -> Result<Self> {
        let s = DarbouxSpec { params, k, l, a, b, c, d };
        s.validate()?;
        Ok(s)
    }

    /// The trivial transformation (P = 1).
    pub fn trivial(params: ParamSet) -> Self {
        DarbouxSpec { params, k: 0, l: 0, a: vec![], b: vec![], c: vec![], d: vec![] }
    }

    pub fn order(&self) -> usize {
        self.k + self.l
    }

    /// Parameter conditions, list lengths, and the integrality scope: k > 0 needs
    /// integer α with k ≤ |α|, l > 0 needs integer β with l ≤ |β|.
    pub fn validate(&self) -> Result<()> {
        self.params.check_conditions()?;
        if self.a.len() != self.k || self.b.len() != self.k {
            return Err(Error::Parse(format!("A and B must have length k = {}", self.k)));
        }
        if self.c.len() != self.l || self.d.len() != self.l {
            return Err(Error::Parse(format!("C and D must have length l = {}", self.l)));
        }
        if self.k > 0 {
            let a = self.params.alpha_int().ok_or_else(|| {
                Error::Scope("k > 0 requires an integer alpha".into())
            })?;
            if self.k as i64 > a.abs() {
                return Err(Error::Scope(format!(
                    "k = {} exceeds |alpha| = {}: L0 on Ker P would have two Jordan blocks for the \
                     eigenvalue 1 and the kernel functions are no longer rational",
                    self.k,
                    a.abs()
                )));
            }
        }
        if self.l > 0 {
            let b = self.params.beta_int().ok_or_else(|| {
                Error::Scope("l > 0 requires an integer beta".into())
            })?;
            if self.l as i64 > b.abs() {
                return Err(Error::Scope(format!(
                    "l = {} exceeds |beta| = {}: L0 on Ker P would have two Jordan blocks for the \
                     eigenvalue -1 and the kernel functions are no longer rational",
                    self.l,
                    b.abs()
                )));
            }
        }
        Ok(())
    }

    /// `q(x) = (x − 1)^k (x + 1)^l`.
    pub fn eigen_poly(&self) -> Poly {
        &Poly::linear(-Rat::one()).pow(self.k) * &Poly::linear(Rat::one()).pow(self.l)
    }
}

/// The kernel basis `f^{(0)}, …, f^{(k+l−1)}`.
pub fn build_f_basis(spec: &DarbouxSpec) -> Result<Vec<SignedRatFunc>> {
    spec.validate()?;
    let p = &spec.params;
    let kf = |fam, i| kernel_fn(KernelKind::new(fam, i), p);
    let mut out = Vec::with_capacity(spec.order());
    for i in 0..spec.k {
        let mut f = SignedRatFunc::zero();
        for r in 0..=i {
            let (x, y) = (&spec.a[r], &spec.b[r]);
            if !x.is_zero() {
                f = &f + &kf(Family::PhiPlus, i - r)?.scale(x);
            }
            if !y.is_zero() {
                f = &f + &kf(Family::PsiPlus, i - r)?.scale(y);
            }
        }
        out.push(f);
    }
    for i in 0..spec.l {
        let mut f = SignedRatFunc::zero();
        for r in 0..=i {
            let (x, y) = (&spec.c[r], &spec.d[r]);
            if !x.is_zero() {
                f = &f + &kf(Family::PhiMinus, i - r)?.scale(x);
            }
            if !y.is_zero() {
                f = &f + &kf(Family::PsiMinus, i - r)?.scale(y);
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// `det(f^{(i)}(n + j))` over columns `i` and the given row offsets `j`.
pub fn casoratian(basis: &[SignedRatFunc], offsets: &[i64]) -> SignedRatFunc {
    let m: Vec<Vec<SignedRatFunc>> = offsets
        .iter()
        .map(|&j| basis.iter().map(|f| f.shift(j)).collect())
        .collect();
    signed_det(&m)
}

/// `det_{−r}(n)` for `r = 0..=m`: rows `j ∈ {−m, …, 0} \ {−r}`.
pub fn det_family(basis: &[SignedRatFunc]) -> Vec<SignedRatFunc> {
    let m = basis.len() as i64;
    (0..=m)
        .map(|r| {
            let offs: Vec<i64> = (-m..=0).filter(|&j| j != -r).collect();
            casoratian(basis, &offs)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Admissibility {
    pub det: SignedRatFunc,
    /// An integer where `det` vanishes, if any.
    pub witness: Option<i64>,
    pub identically_zero: bool,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        !self.identically_zero && self.witness.is_none()
    }
}

/// Tests that the Casoratian `det(n)` of the kernel basis has no integer zeros.
pub fn check_admissible(spec: &DarbouxSpec) -> Result<Admissibility> {
    let basis = build_f_basis(spec)?;
    let m = basis.len() as i64;
    let det = casoratian(&basis, &(-m..0).collect::<Vec<_>>());
    let identically_zero = det.plus().is_zero() || det.minus().is_zero();
    let witness = if identically_zero { None } else { integer_zeros(&det).first().copied() };
    Ok(Admissibility { det, witness, identically_zero })
}

fn require_admissible(spec: &DarbouxSpec) -> Result<Admissibility> {
    let adm = check_admissible(spec)?;
    if adm.identically_zero {
        return Err(Error::Inadmissible("the Casoratian det(n) vanishes identically".into()));
    }
    if let Some(n) = adm.witness {
        return Err(Error::Inadmissible(format!("the Casoratian det(n) vanishes at n = {n}")));
    }
    Ok(adm)
}

/// `P = Σ_r (−1)^r det_{−r}(n)/det(n) T^{−r}` together with the `det_{−r}`.
pub fn build_p(spec: &DarbouxSpec) -> Result<(DiffOp, Vec<SignedRatFunc>)> {
    require_admissible(spec)?;
    let basis = build_f_basis(spec)?;
    let dets = det_family(&basis);
    let inv = dets[0]
        .inverse()
        .ok_or_else(|| Error::Inadmissible("det(n) is not invertible".into()))?;
    let p = DiffOp::from_coeffs(
        dets.iter()
            .enumerate()
            .map(|(r, d)| (-(r as i64), (d * &inv).scale(&sign_pow(r as i64)))),
    );
    for (i, f) in basis.iter().enumerate() {
        if !p.apply(f).is_zero() {
            return Err(Error::Verification(format!("P does not annihilate f^({i})")));
        }
    }
    Ok((p, dets))
}

/// Coefficients of `L = a T + b + c T⁻¹` from the Casoratians.
pub fn l_from_formulas(spec: &DarbouxSpec, dets: &[SignedRatFunc]) -> Result<DiffOp> {
    let l0 = jacobi::jacobi_l(&spec.params);
    let m = spec.order() as i64;
    let (a0, b0, c0) = (l0.coeff(1), l0.coeff(0), l0.coeff(-1));
    if m == 0 {
        return Ok(l0);
    }
    let det = &dets[0];
    let inv = |x: &SignedRatFunc| {
        x.inverse().ok_or_else(|| Error::Inadmissible("det(n) is not invertible".into()))
    };
    let ratio = &dets[1] * &inv(det)?;
    let b = &(&b0 + &(&a0 * &ratio.shift(1))) - &(&a0.shift(-1) * &ratio);
    let dd = inv(&(det * det))?;
    let c = &(&c0.shift(-m) * &(&det.shift(-1) * &det.shift(1))) * &dd;
    Ok(DiffOp::from_coeffs([(1, a0), (0, b), (-1, c)]))
}

#[derive(Clone, Debug)]
pub struct DarbouxBundle {
    pub spec: DarbouxSpec,
    pub basis: Vec<SignedRatFunc>,
    pub p: DiffOp,
    pub l: DiffOp,
    pub q: DiffOp,
    pub dets: Vec<SignedRatFunc>,
    pub eigen_poly: Poly,
}

/// `L` with `L∘P = P∘L0`, by exact division; the closed-form coefficients are
/// compared against it.
pub fn build_l(spec: &DarbouxSpec) -> Result<DiffOp> {
    let (p, dets) = build_p(spec)?;
    build_l_from(spec, &p, &dets)
}

fn build_l_from(spec: &DarbouxSpec, p: &DiffOp, dets: &[SignedRatFunc]) -> Result<DiffOp> {
    let l0 = jacobi::jacobi_l(&spec.params);
    let l = DiffOp::darboux_solve(p, &l0)?;
    let lf = l_from_formulas(spec, dets)?;
    if lf != l {
        return Err(Error::Verification(format!(
            "closed-form coefficients disagree with division: formula {lf:?}, division {l:?}"
        )));
    }
    if l.support() != l0.support() {
        return Err(Error::Verification("L does not have support [-1, 1]".into()));
    }
    Ok(l)
}

/// `Q` with `Q∘P = q(L0)`; also checks `P∘Q = q(L)`.
pub fn build_q(spec: &DarbouxSpec) -> Result<DiffOp> {
    Ok(build_bundle(spec)?.q)
}

pub fn build_bundle(spec: &DarbouxSpec) -> Result<DarbouxBundle> {
    let basis = build_f_basis(spec)?;
    let (p, dets) = build_p(spec)?;
    let l = build_l_from(spec, &p, &dets)?;
    let l0 = jacobi::jacobi_l(&spec.params);
    let qp = spec.eigen_poly();
    let q = DiffOp::right_divide(&l0.poly_eval(&qp), &p)
        .map_err(|e| Error::Verification(format!("q(L0) is not right-divisible by P: {e}")))?;
    if p.compose(&q) != l.poly_eval(&qp) {
        return Err(Error::Verification("P∘Q differs from q(L)".into()));
    }
    Ok(DarbouxBundle { spec: spec.clone(), basis, p, l, q, dets, eigen_poly: qp })
}

impl DarbouxBundle {
    pub fn new(spec: &DarbouxSpec) -> Result<Self> {
        build_bundle(spec)
    }

    pub fn params(&self) -> &ParamSet {
        &self.spec.params
    }

    pub fn l0(&self) -> DiffOp {
        jacobi::jacobi_l(self.params())
    }
}

/// The matrix of L0 acting on Ker P in the f-basis: column j holds the coordinates
/// of L0 f^{(j)}.
pub fn jordan_matrix(spec: &DarbouxSpec) -> Result<Vec<Vec<Rat>>> {
    let basis = build_f_basis(spec)?;
    let m = basis.len();
    if m == 0 {
        return Ok(vec![]);
    }
    let l0 = jacobi::jacobi_l(&spec.params);
    let images: Vec<SignedRatFunc> = basis.iter().map(|f| l0.apply(f)).collect();
    // pick m integer points where the evaluation matrix is invertible
    let mut start = 0i64;
    let coords = loop {
        let pts: Vec<i64> = (start..start + m as i64).collect();
        let ev: Option<Vec<Vec<Rat>>> =
            pts.iter().map(|&n| basis.iter().map(|f| f.eval(n)).collect()).collect();
        if let Some(ev) = ev {
            let sols: Option<Vec<Vec<Rat>>> = images
                .iter()
                .map(|g| {
                    let rhs: Option<Vec<Rat>> = pts.iter().map(|&n| g.eval(n)).collect();
                    solve(&ev, &rhs?)
                })
                .collect();
            if let Some(s) = sols {
                break s;
            }
        }
        start += 1;
        if start > 200 {
            return Err(Error::Domain("kernel basis is degenerate at every sample".into()));
        }
    };
    for (j, c) in coords.iter().enumerate() {
        let combo = basis
            .iter()
            .zip(c)
            .fold(SignedRatFunc::zero(), |acc, (f, x)| &acc + &f.scale(x));
        if combo != images[j] {
            return Err(Error::Verification("L0 does not preserve Ker P".into()));
        }
    }
    Ok((0..m).map(|i| (0..m).map(|j| coords[j][i].clone()).collect()).collect())
}

/// The reflection-symmetric form of P.
#[derive(Clone, Debug)]
pub struct PBar {
    /// `P̃`, the σ-free Casoratian operator over rows `−s..=s`.
    pub ptilde: DiffOp,
    /// `P̄ = q(n) P̃`.
    pub pbar: DiffOp,
    /// The parity factor `q(n)`.
    pub parity_factor: RatFunc,
    /// `P = ρ(n) T^{−s} ∘ φ P̄ φ⁻¹`.
    pub rho: RatFunc,
    pub s: i64,
    /// `(−1)^{s + (α+β) l}`: `I(P̃) = sign · P̃`.
    pub sign: i64,
}

/// Builds `P̃`, `P̄` and the prefactor `ρ`; needs `k + l` even and integer α.
pub fn build_p_bar(spec: &DarbouxSpec) -> Result<PBar> {
    let (p, _) = build_p(spec)?;
    build_p_bar_from(spec, &p)
}

pub fn build_p_bar_from(spec: &DarbouxSpec, p_op: &DiffOp) -> Result<PBar> {
    let m = spec.order();
    if m % 2 == 1 {
        return Err(Error::Domain("the symmetric gauge needs k + l even; lift first".into()));
    }
    let params = &spec.params;
    let phi = SignedRatFunc::from(jacobi::phi_fn(params)?);
    let phi_inv = phi.inverse().unwrap();
    let basis = build_f_basis(spec)?;
    let big_f: Vec<SignedRatFunc> = basis.iter().map(|f| f * &phi_inv).collect();
    let s = (m / 2) as i64;
    let rows: Vec<i64> = (-s..=s).collect();
    let sigma_l = if spec.l % 2 == 1 { SignedRatFunc::sigma() } else { SignedRatFunc::one() };
    let mut ptilde = DiffOp::zero();
    for (r, &j) in rows.iter().enumerate() {
        let others: Vec<i64> = rows.iter().copied().filter(|&x| x != j).collect();
        let minor = casoratian(&big_f, &others);
        let sign = sign_pow((r + m) as i64);
        ptilde = &ptilde + &DiffOp::monomial((&sigma_l * &minor).scale(&sign), j);
    }
    if !ptilde.is_sigma_free() {
        return Err(Error::Verification("sign factors did not cancel in P̃".into()));
    }
    let ab = params.alpha_int().unwrap_or(0) + params.beta_int().unwrap_or(0);
    let exponent = s + ab * spec.l as i64;
    let odd = exponent.rem_euclid(2) == 1;
    let parity_factor = if odd {
        RatFunc::from_poly(Poly::linear(params.center()))
    } else {
        RatFunc::one()
    };
    let pbar = ptilde.left_mul(&parity_factor.clone().into());
    let x = DiffOp::t(-s).compose(&pbar.conjugate(&phi)?);
    let x0 = x.coeff(0);
    let rho = x0
        .inverse()
        .and_then(|r| r.as_plain().cloned())
        .ok_or_else(|| Error::Verification("prefactor relating P and P̄ is not rational".into()))?;
    if x.left_mul(&rho.clone().into()) != *p_op {
        return Err(Error::Verification("P ≠ ρ T^{-s} φ P̄ φ⁻¹".into()));
    }
    Ok(PBar {
        ptilde,
        pbar,
        parity_factor,
        rho,
        s,
        sign: if odd { -1 } else { 1 },
    })
}

/// Which contiguous map a lift composes with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftDirection {
    /// (α, k) → (α+1, k+1) through `D_−^{α+1}`.
    AlphaUp,
    /// (α, k) → (α−1, k+1) through `D_+^{α−1}`, picking up a factor `z − 1`.
    AlphaDown,
    /// (β, l) → (β+1, l+1) through `D_−^{β+1}`.
    BetaUp,
    /// (β, l) → (β−1, l+1) through `D_+^{β−1}`, picking up a factor `z + 1`.
    BetaDown,
}

impl LiftDirection {
    /// The direction that keeps the lifted spec inside the integrality scope.
    pub fn preferred(spec: &DarbouxSpec) -> LiftDirection {
        if spec.k > 0 || spec.l == 0 {
            if spec.params.alpha_int().unwrap_or(0) >= 0 {
                LiftDirection::AlphaUp
            } else {
                LiftDirection::AlphaDown
            }
        } else if spec.params.beta_int().unwrap_or(0) >= 0 {
            LiftDirection::BetaUp
        } else {
            LiftDirection::BetaDown
        }
    }

    /// Shift of T applied before normalisation (−1 for the raising maps).
    pub fn shift(self) -> i64 {
        match self {
            LiftDirection::AlphaUp | LiftDirection::BetaUp => 0,
            LiftDirection::AlphaDown | LiftDirection::BetaDown => -1,
        }
    }

    /// The linear factor `z − 1` or `z + 1` acquired by the eigenfunction, if any.
    pub fn z_factor(self) -> Option<Poly> {
        match self {
            LiftDirection::AlphaDown => Some(Poly::linear(-Rat::one())),
            LiftDirection::BetaDown => Some(Poly::linear(Rat::one())),
            _ => None,
        }
    }
}

/// A bundle obtained by composing P with a contiguous map:
/// `P' = c(n) T^{shift} ∘ P ∘ D`, so `Ψ'(n) = c(n) g(z) Ψ(n + shift)` where `g` is
/// 1, `z − 1` or `z + 1`.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub bundle: DarbouxBundle,
    pub direction: LiftDirection,
    pub scale: SignedRatFunc,
}

pub fn lift_via_contiguous(bundle: &DarbouxBundle, dir: LiftDirection) -> Result<Lifted> {
    let spec = &bundle.spec;
    let p = &spec.params;
    let (new_params, d_op) = match dir {
        LiftDirection::AlphaUp => {
            let np = p.shifted(1, 0);
            let d = contiguous_d(Contiguous::AlphaDown, &np)?;
            (np, d)
        }
        LiftDirection::AlphaDown => {
            let np = p.shifted(-1, 0);
            let d = contiguous_d(Contiguous::AlphaUp, &np)?;
            (np, d)
        }
        LiftDirection::BetaUp => {
            let np = p.shifted(0, 1);
            let d = contiguous_d(Contiguous::BetaDown, &np)?;
            (np, d)
        }
        LiftDirection::BetaDown => {
            let np = p.shifted(0, -1);
            let d = contiguous_d(Contiguous::BetaUp, &np)?;
            (np, d)
        }
    };
    new_params.check_conditions()?;
    let raw = DiffOp::t(dir.shift()).compose(&bundle.p.compose(&d_op));
    let top = raw.coeff(0);
    let scale = top
        .inverse()
        .ok_or_else(|| Error::Domain("lifted operator has a vanishing leading coefficient".into()))?;
    let p_new = raw.left_mul(&scale);
    let (k, l) = match dir {
        LiftDirection::AlphaUp | LiftDirection::AlphaDown => (spec.k + 1, spec.l),
        _ => (spec.k, spec.l + 1),
    };
    let new_spec = recover_spec(&new_params, k, l, &p_new)?;
    let new_bundle = build_bundle(&new_spec)?;
    if new_bundle.p != p_new {
        return Err(Error::Verification("lifted P differs from the P of the recovered spec".into()));
    }
    Ok(Lifted { bundle: new_bundle, direction: dir, scale })
}

/// Finds A, B, C, D such that the spec's P has the same kernel as `p_op`.
fn recover_spec(params: &ParamSet, k: usize, l: usize, p_op: &DiffOp) -> Result<DarbouxSpec> {
    let chain = |fam_phi: Family, fam_psi: Family, len: usize, sh: i64| -> Result<(Vec<Rat>, Vec<Rat>)> {
        if len == 0 {
            return Ok((vec![], vec![]));
        }
        // candidates φ^{(i)}, ψ^{(i)} for i < len
        let mut cands = Vec::new();
        for i in 0..len {
            cands.push(kernel_fn(KernelKind::new(fam_phi, i), params)?);
            cands.push(kernel_fn(KernelKind::new(fam_psi, i), params)?);
        }
        let images: Vec<SignedRatFunc> = cands.iter().map(|f| p_op.apply(f)).collect();
        let ns = function_nullspace(&images)?;
        // a kernel element of maximal height in the Jordan chain
        let l0 = jacobi::jacobi_l(params);
        let op = &l0 + &DiffOp::constant(rint(sh));
        let op_top = op.pow(len - 1);
        for v in &ns {
            let g = cands
                .iter()
                .zip(v)
                .fold(SignedRatFunc::zero(), |acc, (f, x)| &acc + &f.scale(x));
            if !op_top.apply(&g).is_zero() {
                // g = Σ_i a_i φ^{(i)} + b_i ψ^{(i)}; the top index is len − 1
                let a: Vec<Rat> = (0..len).map(|r| v[2 * (len - 1 - r)].clone()).collect();
                let b: Vec<Rat> = (0..len).map(|r| v[2 * (len - 1 - r) + 1].clone()).collect();
                return Ok((a, b));
            }
        }
        Err(Error::Verification("no Jordan chain of full length in the lifted kernel".into()))
    };
    let (a, b) = chain(Family::PhiPlus, Family::PsiPlus, k, -1)?;
    let (c, d) = chain(Family::PhiMinus, Family::PsiMinus, l, 1)?;
    DarbouxSpec::new(params.clone(), k, l, a, b, c, d)
}

/// Rational linear relations among signed rational functions.
fn function_nullspace(fs: &[SignedRatFunc]) -> Result<Vec<Vec<Rat>>> {
    let cols = fs.len();
    let mut rows = Vec::new();
    let mut n = -17i64;
    while rows.len() < 3 * cols + 8 {
        if let Some(r) = fs.iter().map(|f| f.eval(n)).collect::<Option<Vec<Rat>>>() {
            rows.push(r);
        }
        n += 1;
    }
    let ns = nullspace(&rows, cols);
    for v in &ns {
        let s = fs
            .iter()
            .zip(v)
            .fold(SignedRatFunc::zero(), |acc, (f, x)| &acc + &f.scale(x));
        if !s.is_zero() {
            return Err(Error::Verification("sampled linear relation does not hold exactly".into()));
        }
    }
    Ok(ns)
}

/// A convenience: the worked-example spec with α = 2, β = 0, k = 2, l = 0,
/// normalised to A = (1, 0).
pub fn worked_example_spec(eps: Rat, b0: Rat, b1: Rat) -> Result<DarbouxSpec> {
    DarbouxSpec::new(
        ParamSet::new(rint(2), rint(0), eps)?,
        2,
        0,
        vec![rint(1), rint(0)],
        vec![b0, b1],
        vec![],
        vec![],
    )
}

