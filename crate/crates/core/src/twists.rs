//! Constructors for the Jordanian twist family and its R-matrices, as
//! truncated tensor series with coefficients polynomial in the gauge
//! parameter `u` and the deformation scale `t`.
//!
//! The family interpolates between the two simple Jordanian twists: at `u=0`
//! it reduces to `sum (-t)^m P^m (x) binom(D,m)` and at `u=1` to
//! `sum t^m binom(D,m) (x) P^m`.

use crate::error::Result;
use crate::exactmath::{scalar, GaussianRational, Scalar};
use crate::pbw::AlgElem;
use crate::pbw::GeneratorContext;
use crate::tensorcalc::{coproduct0, log_onebody, TensorElem, TruncationOrder};
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

/// The gauge parameter: a formal symbol or an exact rational. Floating-point
/// values are not representable by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UMode {
    Symbolic,
    Rational(BigRational),
}

impl UMode {
    pub fn rational(num: i64, den: i64) -> Self {
        UMode::Rational(BigRational::new(num.into(), den.into()))
    }

    /// The parameter as a scalar coefficient.
    pub fn as_scalar(&self) -> Scalar {
        match self {
            UMode::Symbolic => scalar::u(),
            UMode::Rational(r) => scalar::gauss(GaussianRational::from_rational(r.clone())),
        }
    }
}

impl fmt::Display for UMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UMode::Symbolic => write!(f, "symbolic"),
            UMode::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for UMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "symbolic" {
            return Ok(UMode::Symbolic);
        }
        BigRational::from_str(s)
            .map(UMode::Rational)
            .map_err(|_| format!("expected `symbolic` or an exact rational `a/b`, got `{s}`"))
    }
}

/// Which of the two equal constructions of the family to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistFamily {
    /// Explicit double-series expansion.
    Gz,
    /// Product of three exponential factors (dilatation on the right).
    R,
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistFamily::Gz => write!(f, "GZ"),
            TwistFamily::R => write!(f, "R"),
        }
    }
}

fn p_gen(ctx: &GeneratorContext) -> AlgElem {
    AlgElem::momentum(ctx, "P").expect("P generator present")
}

/// `binom(-D, n)` expanded in the power basis of `D`.
fn binom_minus_d(ctx: &GeneratorContext, n: u16) -> AlgElem {
    let md = -&AlgElem::dilatation(ctx);
    let mut acc = AlgElem::one(ctx);
    let mut factorial = num_bigint::BigInt::from(1);
    for j in 0..n {
        acc = &acc * &(&md - &AlgElem::one(ctx).scale(&scalar::int(j as i64)));
        factorial *= num_bigint::BigInt::from(j + 1);
    }
    let inv = BigRational::new(num_bigint::BigInt::from(1), factorial);
    acc.scale(&scalar::gauss(GaussianRational::from_rational(inv)))
}

/// Simple Jordanian twist inverse with the momentum on the left leg:
/// `sum_m (-t)^m P^m (x) binom(D, m)`, truncated at `order`.
pub fn f0_inv(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
    let p = p_gen(ctx);
    let mut acc = TensorElem::zero(ctx, 2, order);
    for m in 0..=order {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let s = &scalar::int(sign) * &scalar::t_pow(m);
        let term = TensorElem::tensor2(&p.pow(m), &AlgElem::binom_d(ctx, m as u16), order)
            .expect("same context")
            .scale(&s);
        acc = acc.add_ref(&term);
    }
    acc
}

/// Simple Jordanian twist inverse with the momentum on the right leg:
/// `sum_m t^m binom(D, m) (x) P^m`.
pub fn f1_inv(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
    let p = p_gen(ctx);
    let mut acc = TensorElem::zero(ctx, 2, order);
    for m in 0..=order {
        let term = TensorElem::tensor2(&AlgElem::binom_d(ctx, m as u16), &p.pow(m), order)
            .expect("same context")
            .scale(&scalar::t_pow(m));
        acc = acc.add_ref(&term);
    }
    acc
}

/// The interpolating twist inverse via its explicit expansion:
/// `sum_{k,l} t^(k+l) ((u-1) P)^k binom(D,l) (x) (u P)^l binom(D,k)`.
///
/// ```
/// use jtwist_core::{twists, GeneratorContext, UMode};
///
/// let ctx = GeneratorContext::standard();
/// let f = twists::fgz_inv(&ctx, &UMode::Symbolic, 1);
/// assert_eq!(f.to_string(), "1 ⊗ 1 + u*t·D ⊗ P + (u*t - t)·P ⊗ D");
/// ```
pub fn fgz_inv(ctx: &GeneratorContext, u: &UMode, order: TruncationOrder) -> TensorElem {
    let p = p_gen(ctx);
    let us = u.as_scalar();
    let um1 = &us - &scalar::one();
    let mut acc = TensorElem::zero(ctx, 2, order);
    for k in 0..=order {
        for l in 0..=(order - k) {
            let left = &p.pow(k) * &AlgElem::binom_d(ctx, l as u16);
            let right = &p.pow(l) * &AlgElem::binom_d(ctx, k as u16);
            let s = &(&um1.pow(k) * &us.pow(l)) * &scalar::t_pow(k + l);
            if s.is_zero() {
                continue;
            }
            let term = TensorElem::tensor2(&left, &right, order)
                .expect("same context")
                .scale(&s);
            acc = acc.add_ref(&term);
        }
    }
    acc
}

/// The same twist inverse built from three exponential factors:
/// `exp(coproduct0(u t P D)) exp(ln(1 - tP) (x) D) exp(-u t (PD(x)1 + 1(x)PD))`.
pub fn fru_inv(ctx: &GeneratorContext, u: &UMode, order: TruncationOrder) -> Result<TensorElem> {
    let ut = &u.as_scalar() * &scalar::t();
    let pd = &p_gen(ctx) * &AlgElem::dilatation(ctx);

    let exp1 = TensorElem::exp_series(&coproduct0(&pd.scale(&ut), order))?;
    let exp2 = TensorElem::exp_series(&TensorElem::tensor2(
        &log_onebody(ctx, -1, order),
        &AlgElem::dilatation(ctx),
        order,
    )?)?;
    let one = AlgElem::one(ctx);
    let sym = TensorElem::tensor2(&pd, &one, order)?
        .add_ref(&TensorElem::tensor2(&one, &pd, order)?);
    let exp3 = TensorElem::exp_series(&sym.scale(&-&ut))?;

    let prod = TensorElem::tensor_mul(&exp1, &exp2)?;
    TensorElem::tensor_mul(&prod, &exp3)
}

/// Construct either family member by name.
pub fn family_inv(
    ctx: &GeneratorContext,
    family: TwistFamily,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    match family {
        TwistFamily::Gz => Ok(fgz_inv(ctx, u, order)),
        TwistFamily::R => fru_inv(ctx, u, order),
    }
}

/// Gauge transform of the simple twist by the 1-cochain `w = exp(-u t P D)`:
/// builds `(w^-1 (x) w^-1) F_0 coproduct0(w)` directly and returns the twist
/// itself (not its inverse). Cross-checks the three-exponential route.
pub fn cochain_transform(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let ut = &u.as_scalar() * &scalar::t();
    let pd = &p_gen(ctx) * &AlgElem::dilatation(ctx);

    let omega_inv = TensorElem::exp_series(&TensorElem::from_algelem(&pd.scale(&ut), order))?
        .as_algelem()?;
    let pair = TensorElem::tensor2(&omega_inv, &omega_inv, order)?;
    let f0 = TensorElem::inverse_series(&f0_inv(ctx, order))?;
    let coprod_omega = TensorElem::exp_series(&coproduct0(&pd.scale(&-&ut), order))?;

    let prod = TensorElem::tensor_mul(&pair, &f0)?;
    TensorElem::tensor_mul(&prod, &coprod_omega)
}

/// Quantum R-matrix of a twist given its inverse: `flip(F) * F^-1`.
pub fn r_matrix(f_inv: &TensorElem) -> Result<TensorElem> {
    let f = TensorElem::inverse_series(f_inv)?;
    TensorElem::tensor_mul(&f.flip()?, f_inv)
}

/// Closed double series for the R-matrix of the `u=0` twist:
/// `sum_{k,l} binom(-D,l) (-tP)^k (x) (-tP)^l binom(D,k)`.
pub fn r0_series(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
    let p = p_gen(ctx);
    let mut acc = TensorElem::zero(ctx, 2, order);
    for k in 0..=order {
        for l in 0..=(order - k) {
            let sign = if (k + l) % 2 == 0 { 1 } else { -1 };
            let left = &binom_minus_d(ctx, l as u16) * &p.pow(k);
            let right = &p.pow(l) * &AlgElem::binom_d(ctx, k as u16);
            let s = &scalar::int(sign) * &scalar::t_pow(k + l);
            let term = TensorElem::tensor2(&left, &right, order)
                .expect("same context")
                .scale(&s);
            acc = acc.add_ref(&term);
        }
    }
    acc
}

/// The same R-matrix as a product of two exponentials:
/// `exp(-D (x) ln(1 - tP)) exp(ln(1 - tP) (x) D)`.
pub fn r0_two_exp(ctx: &GeneratorContext, order: TruncationOrder) -> Result<TensorElem> {
    let log = log_onebody(ctx, -1, order);
    let d = AlgElem::dilatation(ctx);
    let left = TensorElem::exp_series(&TensorElem::tensor2(&-&d, &log, order)?)?;
    let right = TensorElem::exp_series(&TensorElem::tensor2(&log, &d, order)?)?;
    TensorElem::tensor_mul(&left, &right)
}

/// Classical r-matrix: the antisymmetrized first-order coefficient of a twist
/// inverse, `c1 - flip(c1)` where `c1` is the `t^1` coefficient.
pub fn classical_r(f_inv: &TensorElem) -> Result<TensorElem> {
    let c1 = f_inv.coeff_t(1);
    Ok(c1.sub_ref(&c1.flip()?))
}
