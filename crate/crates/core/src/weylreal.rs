//! Weyl-algebra realizations: differential-operator actions on polynomials,
//! the noncommutative coordinates induced by the twist family, and the
//! kappa-Minkowski commutator checks.
//!
//! The commutator convention is `[x_mu, p_nu] = +i delta_{mu,nu}`, the sign
//! forced by realizing `p_mu` as `-i d/dx_mu` on functions; with it the
//! dilatation `D = i x.p` satisfies `[D, p_mu] = -p_mu`, matching the
//! enveloping-algebra relations exactly.

use crate::error::{Error, Result};
use crate::exactmath::{scalar, GaussianRational, Scalar};
use crate::pbw::AlgElem;
use crate::report::{params, Report};
use crate::tensorcalc::TensorElem;
use crate::twists::UMode;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

/// Spatial configuration: the dimension and the exact rational vector `v`
/// contracting the momenta into `P = v.p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceConfig {
    v: Vec<BigRational>,
}

impl SpaceConfig {
    pub fn new(v: Vec<BigRational>) -> Self {
        assert!(!v.is_empty(), "dimension must be at least 1");
        SpaceConfig { v }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    /// The default test configuration `n = 2`, `v = (1, 0)`.
    pub fn standard2() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[BigRational] {
        &self.v
    }

    /// `v.v` with the plain Euclidean contraction.
    pub fn v_squared(&self) -> BigRational {
        self.v.iter().map(|c| c * c).sum()
    }

    /// Whether `v.v` lies in `{-1, 0, 1}` (recorded, not enforced).
    pub fn v_squared_compliant(&self) -> bool {
        let s = self.v_squared();
        s.is_zero() || s.is_one() || (-&s).is_one()
    }

    pub fn describe_v(&self) -> String {
        self.v
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A normal-ordered Weyl monomial `x^xe p^pe` (all `x` powers left).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylMono {
    pub xe: Vec<u16>,
    pub pe: Vec<u16>,
}

impl WeylMono {
    fn identity(dim: usize) -> Self {
        WeylMono {
            xe: vec![0; dim],
            pe: vec![0; dim],
        }
    }

    fn is_identity(&self) -> bool {
        self.xe.iter().all(|&e| e == 0) && self.pe.iter().all(|&e| e == 0)
    }

    fn fmt_parts(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.xe.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{i}"));
            } else if e > 1 {
                parts.push(format!("x{i}^{e}"));
            }
        }
        for (i, &e) in self.pe.iter().enumerate() {
            if e == 1 {
                parts.push(format!("p{i}"));
            } else if e > 1 {
                parts.push(format!("p{i}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// A normal-ordered element of the Weyl algebra with coefficients polynomial
/// in `u` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElem {
    dim: usize,
    terms: BTreeMap<WeylMono, Scalar>,
}

impl WeylElem {
    pub fn zero(dim: usize) -> Self {
        WeylElem {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::from_mono(dim, WeylMono::identity(dim), scalar::one())
    }

    pub fn from_mono(dim: usize, m: WeylMono, s: Scalar) -> Self {
        let mut e = Self::zero(dim);
        e.insert_term(m, s);
        e
    }

    pub fn coordinate(dim: usize, mu: usize) -> Result<Self> {
        if mu >= dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        let mut m = WeylMono::identity(dim);
        m.xe[mu] = 1;
        Ok(Self::from_mono(dim, m, scalar::one()))
    }

    pub fn momentum(dim: usize, mu: usize) -> Result<Self> {
        if mu >= dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        let mut m = WeylMono::identity(dim);
        m.pe[mu] = 1;
        Ok(Self::from_mono(dim, m, scalar::one()))
    }

    /// The dilatation realization `D = i x.p`.
    pub fn dilatation(dim: usize) -> Self {
        let mut acc = Self::zero(dim);
        for mu in 0..dim {
            let mut m = WeylMono::identity(dim);
            m.xe[mu] = 1;
            m.pe[mu] = 1;
            acc.insert_term(m, scalar::i());
        }
        acc
    }

    /// The contracted momentum `P = v.p`.
    pub fn contracted_momentum(config: &SpaceConfig) -> Self {
        let dim = config.dim();
        let mut acc = Self::zero(dim);
        for mu in 0..dim {
            if config.v()[mu].is_zero() {
                continue;
            }
            let mut m = WeylMono::identity(dim);
            m.pe[mu] = 1;
            acc.insert_term(
                m,
                scalar::gauss(GaussianRational::from_rational(config.v()[mu].clone())),
            );
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(&mut self, m: WeylMono, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &WeylElem) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn add_ref(&self, rhs: &WeylElem) -> WeylElem {
        let mut out = self.clone();
        for (m, s) in &rhs.terms {
            out.insert_term(m.clone(), s.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &WeylElem) -> WeylElem {
        let mut out = self.clone();
        for (m, s) in &rhs.terms {
            out.insert_term(m.clone(), -s);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> WeylElem {
        let mut out = Self::zero(self.dim);
        if s.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.insert_term(m.clone(), v * s);
        }
        out
    }

    /// Normal-ordered product with `[x_mu, p_nu] = i delta_{mu,nu}`:
    /// per index, `p^a x^c = sum_j j! C(a,j) C(c,j) (-i)^j x^(c-j) p^(a-j)`.
    pub fn weyl_mul(a: &WeylElem, b: &WeylElem) -> Result<WeylElem> {
        a.check_dim(b)?;
        let dim = a.dim;
        let mut out = WeylElem::zero(dim);
        for (ma, sa) in &a.terms {
            for (mb, sb) in &b.terms {
                let s = sa * sb;
                if s.is_zero() {
                    continue;
                }
                // reorder p^(ma.pe) past x^(mb.xe), one index at a time
                let mut partial: Vec<(WeylMono, GaussianRational)> = vec![(
                    WeylMono {
                        xe: ma.xe.iter().zip(&mb.xe).map(|(x, y)| x + y).collect(),
                        pe: ma.pe.iter().zip(&mb.pe).map(|(x, y)| x + y).collect(),
                    },
                    GaussianRational::one(),
                )];
                for mu in 0..dim {
                    let amu = ma.pe[mu];
                    let cmu = mb.xe[mu];
                    let jmax = amu.min(cmu);
                    if jmax == 0 {
                        continue;
                    }
                    let mut next = Vec::with_capacity(partial.len() * (jmax as usize + 1));
                    for (m, c) in &partial {
                        for j in 0..=jmax {
                            let mut coeff = BigRational::from_integer(
                                binomial(BigInt::from(amu), BigInt::from(j))
                                    * binomial(BigInt::from(cmu), BigInt::from(j)),
                            );
                            // j!
                            for f in 1..=j {
                                coeff *= BigRational::from_integer(BigInt::from(f));
                            }
                            let phase = (-GaussianRational::i()).pow(j as u32);
                            let mut mono = m.clone();
                            mono.xe[mu] -= j;
                            mono.pe[mu] -= j;
                            next.push((
                                mono,
                                c * &(&GaussianRational::from_rational(coeff) * &phase),
                            ));
                        }
                    }
                    partial = next;
                }
                for (m, c) in partial {
                    out.insert_term(m, s.scale(&c));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(a: &WeylElem, b: &WeylElem) -> Result<WeylElem> {
        Ok(Self::weyl_mul(a, b)?.sub_ref(&Self::weyl_mul(b, a)?))
    }

    pub fn pow(&self, n: u32) -> Result<WeylElem> {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = Self::weyl_mul(&acc, self)?;
        }
        Ok(acc)
    }

    /// Coefficientwise substitution of a concrete rational for `u`.
    pub fn substitute_u(&self, value: &BigRational) -> WeylElem {
        let c = GaussianRational::from_rational(value.clone());
        let mut out = Self::zero(self.dim);
        for (m, s) in &self.terms {
            out.insert_term(m.clone(), s.substitute("u", &c).expect("u in context"));
        }
        out
    }

    /// Coefficient of `t^k` with the `t`-exponent zeroed.
    pub fn coeff_t(&self, k: u32) -> WeylElem {
        let mut out = Self::zero(self.dim);
        for (m, s) in &self.terms {
            out.insert_term(m.clone(), s.coeff_var("t", k).expect("t in context"));
        }
        out
    }

    pub fn render_terms(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(m, s)| format!("({s}) {}", m.fmt_parts()))
            .collect()
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = m.fmt_parts();
            if s.is_one() {
                write!(f, "{mono}")?;
            } else if s.num_terms() > 1 {
                write!(f, "({s})·{mono}")?;
            } else if m.is_identity() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}·{mono}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial function of the coordinates, with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunction {
    dim: usize,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl PolyFunction {
    pub fn zero(dim: usize) -> Self {
        PolyFunction {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, s: Scalar) -> Self {
        let mut f = Self::zero(dim);
        f.insert_term(vec![0; dim], s);
        f
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, scalar::one())
    }

    pub fn coordinate(dim: usize, mu: usize) -> Result<Self> {
        if mu >= dim {
            return Err(Error::IndexOutOfRange { index: mu, dim });
        }
        let mut e = vec![0; dim];
        e[mu] = 1;
        let mut f = Self::zero(dim);
        f.insert_term(e, scalar::one());
        Ok(f)
    }

    pub fn monomial(dim: usize, exps: Vec<u16>, s: Scalar) -> Self {
        assert_eq!(exps.len(), dim);
        let mut f = Self::zero(dim);
        f.insert_term(exps, s);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u16 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u16>())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, e: Vec<u16>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_ref(&self, rhs: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for (e, s) in &rhs.terms {
            out.insert_term(e.clone(), s.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for (e, s) in &rhs.terms {
            out.insert_term(e.clone(), -s);
        }
        out
    }

    pub fn mul_ref(&self, rhs: &PolyFunction) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        for (ea, sa) in &self.terms {
            for (eb, sb) in &rhs.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(e, sa * sb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        if s.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.insert_term(e.clone(), v * s);
        }
        out
    }

    pub fn diff(&self, mu: usize) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        for (e, s) in &self.terms {
            if e[mu] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[mu] -= 1;
            out.insert_term(exps, s.scale(&GaussianRational::from_int(e[mu] as i64)));
        }
        out
    }

    /// Promote to a Weyl element made of coordinates only (multiplication
    /// operator).
    pub fn as_weyl(&self) -> WeylElem {
        let mut out = WeylElem::zero(self.dim);
        for (e, s) in &self.terms {
            out.insert_term(
                WeylMono {
                    xe: e.clone(),
                    pe: vec![0; self.dim],
                },
                s.clone(),
            );
        }
        out
    }

    /// Coefficientwise substitution of an exact constant for a scalar
    /// variable (`u` or `t`).
    pub fn substitute_var(&self, var: &str, value: &GaussianRational) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        for (e, s) in &self.terms {
            out.insert_term(e.clone(), s.substitute(var, value).expect("var in context"));
        }
        out
    }

    /// Drop every coefficient monomial of `t`-degree above `max`.
    pub fn truncate_t(&self, max: u32) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        for (e, s) in &self.terms {
            out.insert_term(e.clone(), s.truncate_var("t", max).expect("t in context"));
        }
        out
    }

    /// Drop every term of total `x`-degree above `max`.
    pub fn truncate_degree(&self, max: u16) -> PolyFunction {
        let mut out = Self::zero(self.dim);
        for (e, s) in &self.terms {
            if e.iter().sum::<u16>() <= max {
                out.insert_term(e.clone(), s.clone());
            }
        }
        out
    }

    pub fn render_terms(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(e, s)| {
                let mono = WeylMono {
                    xe: e.clone(),
                    pe: vec![0; self.dim],
                }
                .fmt_parts();
                format!("({s}) {mono}")
            })
            .collect()
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render_terms().join(" + "))
    }
}

/// Differential-operator action of a Weyl element on a polynomial:
/// `x^b p^a |> f = x^b (-i)^(|a|) d^a f`.
pub fn act_weyl(w: &WeylElem, f: &PolyFunction) -> Result<PolyFunction> {
    if w.dim() != f.dim() {
        return Err(Error::DimensionMismatch(w.dim(), f.dim()));
    }
    let mut out = PolyFunction::zero(f.dim());
    for (m, s) in w.terms() {
        let mut g = f.clone();
        let mut phase = GaussianRational::one();
        for (mu, &e) in m.pe.iter().enumerate() {
            for _ in 0..e {
                g = g.diff(mu);
                phase = &phase * &(-GaussianRational::i());
            }
        }
        if g.is_zero() {
            continue;
        }
        let xpart = PolyFunction::monomial(f.dim(), m.xe.clone(), scalar::one());
        out = out.add_ref(&xpart.mul_ref(&g).scale(&s.scale(&phase)));
    }
    Ok(out)
}

/// Realize an enveloping-algebra element as a Weyl element via
/// `P -> v.p`, `D -> i x.p`. The probe momentum has no realization here.
pub fn alg_to_weyl(a: &AlgElem, config: &SpaceConfig) -> Result<WeylElem> {
    let ctx = a.ctx();
    let p_idx = ctx.index_of("P");
    let dim = config.dim();
    let p_weyl = WeylElem::contracted_momentum(config);
    let d_weyl = WeylElem::dilatation(dim);
    let mut out = WeylElem::zero(dim);
    for (m, s) in a.terms() {
        for (i, &e) in m.mom.iter().enumerate() {
            if e > 0 && Some(i) != p_idx {
                return Err(Error::ProbeNotRealizable);
            }
        }
        let ppow = m.mom[p_idx.expect("P present")];
        let factor = WeylElem::weyl_mul(&p_weyl.pow(ppow as u32)?, &d_weyl.pow(m.d as u32)?)?;
        out = out.add_ref(&factor.scale(s));
    }
    Ok(out)
}

/// Action of an enveloping-algebra element on a polynomial function,
/// composing the generator actions `P |> f = -i v.df`, `D |> f = x.df`.
pub fn act(a: &AlgElem, config: &SpaceConfig, f: &PolyFunction) -> Result<PolyFunction> {
    act_weyl(&alg_to_weyl(a, config)?, f)
}

/// Closed-form noncommutative coordinate:
/// `xhat_mu = (x_mu + (1-u) i t v_mu D)(1 + u t P) + u(1-u) t^2 i v_mu P`.
pub fn xhat(config: &SpaceConfig, mu: usize, u: &UMode) -> Result<WeylElem> {
    let dim = config.dim();
    if mu >= dim {
        return Err(Error::IndexOutOfRange { index: mu, dim });
    }
    let us = u.as_scalar();
    let one_minus_u = &scalar::one() - &us;
    let iv = GaussianRational::from_rational(config.v()[mu].clone());
    let iv = &GaussianRational::i() * &iv;

    let x = WeylElem::coordinate(dim, mu)?;
    let d = WeylElem::dilatation(dim);
    let p = WeylElem::contracted_momentum(config);
    let one = WeylElem::one(dim);

    let left = x.add_ref(&d.scale(&(&one_minus_u * &scalar::t()).scale(&iv)));
    let right = one.add_ref(&p.scale(&(&us * &scalar::t())));
    let tail = p.scale(&(&(&us * &one_minus_u) * &scalar::t_pow(2)).scale(&iv));
    Ok(WeylElem::weyl_mul(&left, &right)?.add_ref(&tail))
}

/// The same coordinate extracted from a twist inverse:
/// `xhat_mu = m(F^-1 (act (x) 1)(x_mu (x) 1))`. Truncation order 2 suffices
/// exactly: the left-leg action on a degree-1 function kills every term with
/// momentum power >= 2 or dilatation binomial of order >= 2.
pub fn xhat_from_twist(f_inv: &TensorElem, config: &SpaceConfig, mu: usize) -> Result<WeylElem> {
    if f_inv.order() < 2 {
        return Err(Error::TruncationTooLow(f_inv.order()));
    }
    let dim = config.dim();
    if mu >= dim {
        return Err(Error::IndexOutOfRange { index: mu, dim });
    }
    let xmu = PolyFunction::coordinate(dim, mu)?;
    let ctx = f_inv.ctx();
    let mut out = WeylElem::zero(dim);
    for (key, s) in f_inv.terms() {
        let left = AlgElem::from_mono(ctx, key[0].clone(), scalar::one());
        let acted = act(&left, config, &xmu)?;
        if acted.is_zero() {
            continue;
        }
        let right = alg_to_weyl(&AlgElem::from_mono(ctx, key[1].clone(), scalar::one()), config)?;
        let term = WeylElem::weyl_mul(&acted.as_weyl(), &right)?;
        out = out.add_ref(&term.scale(s));
    }
    Ok(out)
}

/// Residuals of the kappa-Minkowski commutators
/// `[xhat_mu, xhat_nu] - i t (v_mu xhat_nu - v_nu xhat_mu)` for all pairs.
pub fn minkowski_residuals(
    config: &SpaceConfig,
    xhats: &[WeylElem],
) -> Result<Vec<((usize, usize), WeylElem)>> {
    let mut out = Vec::new();
    for mu in 0..config.dim() {
        for nu in (mu + 1)..config.dim() {
            let comm = WeylElem::commutator(&xhats[mu], &xhats[nu])?;
            let ivmu = &GaussianRational::i()
                * &GaussianRational::from_rational(config.v()[mu].clone());
            let ivnu = &GaussianRational::i()
                * &GaussianRational::from_rational(config.v()[nu].clone());
            let closed = xhats[nu]
                .scale(&scalar::t().scale(&ivmu))
                .sub_ref(&xhats[mu].scale(&scalar::t().scale(&ivnu)));
            out.push(((mu, nu), comm.sub_ref(&closed)));
        }
    }
    Ok(out)
}

pub fn check_kappa_minkowski(config: &SpaceConfig, u: &UMode) -> Result<Report> {
    let start = Instant::now();
    let xhats: Vec<WeylElem> = (0..config.dim())
        .map(|mu| xhat(config, mu, u))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for ((mu, nu), r) in minkowski_residuals(config, &xhats)? {
        for t in r.render_terms() {
            failures.push(format!("[xhat_{mu}, xhat_{nu}]: {t}"));
        }
    }
    Ok(Report::from_failures(
        "minkowski",
        params([
            ("u", u.to_string()),
            ("v", config.describe_v()),
            ("dim", config.dim().to_string()),
            ("v_squared_in_{-1,0,1}", config.v_squared_compliant().to_string()),
        ]),
        failures,
        start,
    ))
}

/// Residuals of `[p_mu, xhat_nu] - (-i delta + i t v_nu (1-u) p_mu)(1 + u t P)`.
pub fn p_xhat_residuals(
    config: &SpaceConfig,
    u: &UMode,
    xhats: &[WeylElem],
) -> Result<Vec<((usize, usize), WeylElem)>> {
    let dim = config.dim();
    let us = u.as_scalar();
    let one_minus_u = &scalar::one() - &us;
    let p_contracted = WeylElem::contracted_momentum(config);
    let right = WeylElem::one(dim).add_ref(&p_contracted.scale(&(&us * &scalar::t())));
    let mut out = Vec::new();
    for mu in 0..dim {
        let pmu = WeylElem::momentum(dim, mu)?;
        for (nu, xh) in xhats.iter().enumerate() {
            let comm = WeylElem::commutator(&pmu, xh)?;
            let mut head = WeylElem::zero(dim);
            if mu == nu {
                head = head.sub_ref(&WeylElem::one(dim).scale(&scalar::i()));
            }
            let ivnu = &GaussianRational::i()
                * &GaussianRational::from_rational(config.v()[nu].clone());
            head = head.add_ref(&pmu.scale(&(&one_minus_u * &scalar::t()).scale(&ivnu)));
            let closed = WeylElem::weyl_mul(&head, &right)?;
            out.push(((mu, nu), comm.sub_ref(&closed)));
        }
    }
    Ok(out)
}

pub fn check_p_xhat(config: &SpaceConfig, u: &UMode) -> Result<Report> {
    let start = Instant::now();
    let xhats: Vec<WeylElem> = (0..config.dim())
        .map(|mu| xhat(config, mu, u))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for ((mu, nu), r) in p_xhat_residuals(config, u, &xhats)? {
        for t in r.render_terms() {
            failures.push(format!("[p_{mu}, xhat_{nu}]: {t}"));
        }
    }
    Ok(Report::from_failures(
        "p_xhat",
        params([
            ("u", u.to_string()),
            ("v", config.describe_v()),
            ("dim", config.dim().to_string()),
        ]),
        failures,
        start,
    ))
}

/// A corrupted realization (shifted by `t x_mu`) for negative controls.
/// Dropping a term proportional to `v_mu P` would cancel out of the
/// antisymmetrized commutator checks, so the corruption is a coordinate
/// shift instead, which fails the Minkowski relation at order `t^3`.
pub fn corrupted_xhat(config: &SpaceConfig, mu: usize, u: &UMode) -> Result<WeylElem> {
    let shift = WeylElem::coordinate(config.dim(), mu)?.scale(&scalar::t());
    Ok(xhat(config, mu, u)?.add_ref(&shift))
}
