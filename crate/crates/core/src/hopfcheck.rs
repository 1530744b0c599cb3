//! Executable verification of the Hopf-structural identities: 2-cocycle and
//! counitality conditions, equality of the two twist constructions, the
//! defining ODE in the gauge parameter, twisted coproducts and antipodes,
//! coassociativity, and the quantum Yang-Baxter equation.
//!
//! Every residual here is an exact tensor series expected to vanish
//! identically up to the truncation order.

use crate::error::Result;
use crate::exactmath::{scalar, Scalar};
use crate::pbw::{AlgElem, GeneratorContext, PbwMono};
use crate::report::{params, Report};
use crate::tensorcalc::{coproduct0, LegMap, TensorElem, TruncationOrder};
use crate::twists::{self, TwistFamily, UMode};
use num_rational::BigRational;
use std::time::Instant;

/// Generator whose twisted Hopf data is checked: the probe momentum `p`
/// (standing for a fixed component `p_mu`) or the dilatation `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfGen {
    P,
    D,
}

impl std::fmt::Display for HopfGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HopfGen::P => write!(f, "p"),
            HopfGen::D => write!(f, "D"),
        }
    }
}

impl HopfGen {
    fn element(&self, ctx: &GeneratorContext) -> AlgElem {
        match self {
            HopfGen::P => AlgElem::momentum(ctx, "p").expect("probe momentum present"),
            HopfGen::D => AlgElem::dilatation(ctx),
        }
    }
}

/// `((coproduct0 (x) 1) F^-1)(F^-1 (x) 1) - ((1 (x) coproduct0) F^-1)(1 (x) F^-1)`
/// as a triple tensor.
pub fn cocycle_residual(f_inv: &TensorElem) -> Result<TensorElem> {
    let left = TensorElem::tensor_mul(
        &f_inv.apply_leg(0, LegMap::Coproduct0)?,
        &f_inv.embed_into_three((0, 1))?,
    )?;
    let right = TensorElem::tensor_mul(
        &f_inv.apply_leg(1, LegMap::Coproduct0)?,
        &f_inv.embed_into_three((1, 2))?,
    )?;
    Ok(left.sub_ref(&right))
}

pub fn check_cocycle(f_inv: &TensorElem, label: &str) -> Result<Report> {
    let start = Instant::now();
    let residual = cocycle_residual(f_inv)?;
    Ok(Report::from_residual(
        "cocycle",
        params([
            ("twist", label.to_string()),
            ("N", f_inv.order().to_string()),
        ]),
        &residual,
        start,
    ))
}

/// Counitality residuals: both one-leg counit reductions minus the identity.
pub fn counital_residuals(f_inv: &TensorElem) -> Result<(TensorElem, TensorElem)> {
    let one = TensorElem::identity(f_inv.ctx(), 1, f_inv.order());
    let left = f_inv.apply_leg(0, LegMap::Counit)?.sub_ref(&one);
    let right = f_inv.apply_leg(1, LegMap::Counit)?.sub_ref(&one);
    Ok((left, right))
}

pub fn check_counital(f_inv: &TensorElem, label: &str) -> Result<Report> {
    let start = Instant::now();
    let (left, right) = counital_residuals(f_inv)?;
    let mut failures = Vec::new();
    for t in crate::report::render_tensor_terms(&left) {
        failures.push(format!("counit on leg 0: {t}"));
    }
    for t in crate::report::render_tensor_terms(&right) {
        failures.push(format!("counit on leg 1: {t}"));
    }
    Ok(Report::from_failures(
        "counital",
        params([
            ("twist", label.to_string()),
            ("N", f_inv.order().to_string()),
        ]),
        failures,
        start,
    ))
}

/// Difference of the two constructions of the twist inverse.
pub fn equality_residual(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let gz = twists::fgz_inv(ctx, u, order);
    let r = twists::fru_inv(ctx, u, order)?;
    Ok(gz.sub_ref(&r))
}

pub fn check_equality_gz_r(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<Report> {
    let start = Instant::now();
    let residual = equality_residual(ctx, u, order)?;
    Ok(Report::from_residual(
        "equality",
        params([("u", u.to_string()), ("N", order.to_string())]),
        &residual,
        start,
    ))
}

/// Difference between the 1-cochain gauge transform of the simple twist and
/// the inverse of the three-exponential construction.
pub fn cochain_residual(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let via_cochain = twists::cochain_transform(ctx, u, order)?;
    let via_inverse = TensorElem::inverse_series(&twists::fru_inv(ctx, u, order)?)?;
    Ok(via_cochain.sub_ref(&via_inverse))
}

pub fn check_cochain(ctx: &GeneratorContext, u: &UMode, order: TruncationOrder) -> Result<Report> {
    let start = Instant::now();
    let residual = cochain_residual(ctx, u, order)?;
    Ok(Report::from_residual(
        "cochain",
        params([("u", u.to_string()), ("N", order.to_string())]),
        &residual,
        start,
    ))
}

/// ODE residual for a symbolic-u twist inverse `F`:
/// `dF/du - t ((P(x)D + D(x)P) F + [PD(x)1 + 1(x)PD, F])`.
pub fn ode_residual(f_inv: &TensorElem) -> Result<TensorElem> {
    let ctx = f_inv.ctx();
    let order = f_inv.order();
    let p = AlgElem::momentum(ctx, "P").expect("P present");
    let d = AlgElem::dilatation(ctx);
    let pd = &p * &d;
    let one = AlgElem::one(ctx);

    let sym = TensorElem::tensor2(&pd, &one, order)?
        .add_ref(&TensorElem::tensor2(&one, &pd, order)?);
    let mixed = TensorElem::tensor2(&p, &d, order)?
        .add_ref(&TensorElem::tensor2(&d, &p, order)?);

    let lhs = f_inv.diff_u();
    let inner = TensorElem::tensor_mul(&mixed, f_inv)?
        .add_ref(&TensorElem::tensor_mul(&sym, f_inv)?)
        .sub_ref(&TensorElem::tensor_mul(f_inv, &sym)?);
    let rhs = inner.scale(&scalar::t());
    Ok(lhs.sub_ref(&rhs))
}

/// Checks the ODE for one family together with its initial value at `u = 0`.
pub fn check_ode(
    ctx: &GeneratorContext,
    family: TwistFamily,
    order: TruncationOrder,
) -> Result<Report> {
    let start = Instant::now();
    let f_inv = twists::family_inv(ctx, family, &UMode::Symbolic, order)?;
    let residual = ode_residual(&f_inv)?;
    let init = f_inv
        .substitute_u(&BigRational::from_integer(0.into()))
        .sub_ref(&twists::f0_inv(ctx, order));
    let mut failures = Vec::new();
    for t in crate::report::render_tensor_terms(&residual) {
        failures.push(format!("ode: {t}"));
    }
    for t in crate::report::render_tensor_terms(&init) {
        failures.push(format!("initial value at u=0: {t}"));
    }
    Ok(Report::from_failures(
        "ode",
        params([
            ("family", family.to_string()),
            ("N", order.to_string()),
            ("u", "symbolic".to_string()),
        ]),
        failures,
        start,
    ))
}

/// Conjugated coproduct `F coproduct0(a) F^-1`.
pub fn twisted_coproduct(f_inv: &TensorElem, a: &AlgElem) -> Result<TensorElem> {
    let f = TensorElem::inverse_series(f_inv)?;
    let middle = coproduct0(a, f_inv.order());
    let tmp = TensorElem::tensor_mul(&f, &middle)?;
    TensorElem::tensor_mul(&tmp, f_inv)
}

/// Geometric one-leg series `sum_m (a t P)^m` for `(1 - a t P)^-1`.
fn geometric_p(ctx: &GeneratorContext, a: &Scalar, order: TruncationOrder) -> AlgElem {
    let p = AlgElem::momentum(ctx, "P").expect("P present");
    let mut acc = AlgElem::zero(ctx);
    for m in 0..=order {
        acc = acc.add_ref(&p.pow(m).scale(&(&a.pow(m) * &scalar::t_pow(m))));
    }
    acc
}

/// Closed form of the twisted coproduct of the probe momentum:
/// `(p (x) (1 + u t P) + (1 + (u-1) t P) (x) p) / (1 (x) 1 - u(u-1) t^2 P (x) P)`
/// with the denominator expanded as a geometric series.
pub fn closed_coproduct_p(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let us = u.as_scalar();
    let p = AlgElem::momentum(ctx, "p").expect("probe momentum present");
    let cap_p = AlgElem::momentum(ctx, "P").expect("P present");
    let one = AlgElem::one(ctx);

    let numerator = TensorElem::tensor2(&p, &one, order)?
        .add_ref(&TensorElem::tensor2(&one, &p, order)?)
        .add_ref(
            &TensorElem::tensor2(&p, &cap_p, order)?.scale(&(&us * &scalar::t())),
        )
        .add_ref(
            &TensorElem::tensor2(&cap_p, &p, order)?
                .scale(&(&(&us - &scalar::one()) * &scalar::t())),
        );
    let x = TensorElem::tensor2(&cap_p, &cap_p, order)?
        .scale(&(&(&us * &(&us - &scalar::one())) * &scalar::t_pow(2)));
    let denom_inv =
        TensorElem::inverse_series(&TensorElem::identity(ctx, 2, order).sub_ref(&x))?;
    TensorElem::tensor_mul(&numerator, &denom_inv)
}

/// Closed form of the twisted coproduct of the dilatation:
/// `(1(x)1 + u(1-u) t^2 P(x)P)(D (x) 1/(1 + u t P) + 1/(1 - (1-u) t P) (x) D)`.
pub fn closed_coproduct_d(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let us = u.as_scalar();
    let one_minus_u = &scalar::one() - &us;
    let d = AlgElem::dilatation(ctx);
    let cap_p = AlgElem::momentum(ctx, "P").expect("P present");

    let prefactor = TensorElem::identity(ctx, 2, order).add_ref(
        &TensorElem::tensor2(&cap_p, &cap_p, order)?
            .scale(&(&(&us * &one_minus_u) * &scalar::t_pow(2))),
    );
    let recip_right = geometric_p(ctx, &-&us, order); // (1 + u t P)^-1
    let recip_left = geometric_p(ctx, &one_minus_u, order); // (1 - (1-u) t P)^-1
    let inner = TensorElem::tensor2(&d, &recip_right, order)?
        .add_ref(&TensorElem::tensor2(&recip_left, &d, order)?);
    TensorElem::tensor_mul(&prefactor, &inner)
}

/// Closed twisted antipode of `p` or `D` as a truncated one-leg series.
///
/// `S(p) = -p / (1 - (1-2u) t P)` and
/// `S(D) = -(1 - (1-u) t P) D (1 - (1-2u) t P) / (1 - (1-u) t P)`.
pub fn closed_antipode(
    ctx: &GeneratorContext,
    gen: HopfGen,
    u: &UMode,
    order: TruncationOrder,
) -> TensorElem {
    let us = u.as_scalar();
    let one_minus_2u = &scalar::one() - &us.scale(&crate::exactmath::GaussianRational::from_int(2));
    let one_minus_u = &scalar::one() - &us;
    let cap_p = AlgElem::momentum(ctx, "P").expect("P present");
    let one = AlgElem::one(ctx);

    let elem = match gen {
        HopfGen::P => {
            let p = AlgElem::momentum(ctx, "p").expect("probe momentum present");
            let series = geometric_p(ctx, &one_minus_2u, order);
            (&(-&p) * &series).truncate_t(order)
        }
        HopfGen::D => {
            let d = AlgElem::dilatation(ctx);
            let left = one.sub_ref(&cap_p.scale(&(&one_minus_u * &scalar::t())));
            let mid = one.sub_ref(&cap_p.scale(&(&one_minus_2u * &scalar::t())));
            let recip = geometric_p(ctx, &one_minus_u, order); // (1 - (1-u) t P)^-1
            let prod = &(&(&(-&left) * &d) * &mid) * &recip;
            prod.truncate_t(order)
        }
    };
    TensorElem::from_algelem(&elem, order)
}

/// Anti-homomorphic extension of the closed antipode to a PBW monomial:
/// `S(g^a D^d) = S(D)^d prod_i S(g_i)^(a_i)` (momentum antipodes commute).
fn twisted_antipode_mono(
    ctx: &GeneratorContext,
    m: &PbwMono,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let us = u.as_scalar();
    let one_minus_2u = &scalar::one() - &us.scale(&crate::exactmath::GaussianRational::from_int(2));
    let geo = geometric_p(ctx, &one_minus_2u, order);
    let s_d = closed_antipode(ctx, HopfGen::D, u, order);

    let mut acc = TensorElem::identity(ctx, 1, order);
    for _ in 0..m.d {
        acc = TensorElem::tensor_mul(&acc, &s_d)?;
    }
    for (i, &e) in m.mom.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let g = AlgElem::momentum(ctx, ctx.name(i)).expect("generator present");
        let s_g = TensorElem::from_algelem(&(&(-&g) * &geo).truncate_t(order), order);
        for _ in 0..e {
            acc = TensorElem::tensor_mul(&acc, &s_g)?;
        }
    }
    Ok(acc)
}

/// Hopf antipode axiom residual using the closed twisted structure:
/// `m((S (x) id) coproduct(gen)) - counit(gen) 1`, expected zero.
pub fn antipode_axiom_residual(
    ctx: &GeneratorContext,
    gen: HopfGen,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let delta = match gen {
        HopfGen::P => closed_coproduct_p(ctx, u, order)?,
        HopfGen::D => closed_coproduct_d(ctx, u, order)?,
    };
    antipode_axiom_residual_for(ctx, gen, &delta, u, order)
}

/// Same axiom against an explicitly supplied coproduct (used by the
/// negative-control fixtures).
pub fn antipode_axiom_residual_for(
    ctx: &GeneratorContext,
    gen: HopfGen,
    delta: &TensorElem,
    u: &UMode,
    order: TruncationOrder,
) -> Result<TensorElem> {
    let mut acc = TensorElem::zero(ctx, 1, order);
    for (key, s) in delta.terms() {
        let s_left = twisted_antipode_mono(ctx, &key[0], u, order)?;
        let right = TensorElem::from_algelem(
            &AlgElem::from_mono(ctx, key[1].clone(), scalar::one()),
            order,
        );
        acc = acc.add_ref(&TensorElem::tensor_mul(&s_left, &right)?.scale(s));
    }
    // counit of p and of D both vanish
    let expect = TensorElem::identity(ctx, 1, order).scale(&gen.element(ctx).counit());
    Ok(acc.sub_ref(&expect))
}

pub fn check_antipode_axiom(
    ctx: &GeneratorContext,
    gen: HopfGen,
    u: &UMode,
    order: TruncationOrder,
) -> Result<Report> {
    let start = Instant::now();
    let residual = antipode_axiom_residual(ctx, gen, u, order)?;
    Ok(Report::from_residual(
        "antipode",
        params([
            ("gen", gen.to_string()),
            ("u", u.to_string()),
            ("N", order.to_string()),
        ]),
        &residual,
        start,
    ))
}

/// Residuals of the twisted coproducts against their closed forms.
pub fn coproduct_residuals(
    ctx: &GeneratorContext,
    u: &UMode,
    order: TruncationOrder,
) -> Result<(TensorElem, TensorElem)> {
    let f_inv = twists::fgz_inv(ctx, u, order);
    let p = AlgElem::momentum(ctx, "p").expect("probe momentum present");
    let d = AlgElem::dilatation(ctx);
    let rp = twisted_coproduct(&f_inv, &p)?.sub_ref(&closed_coproduct_p(ctx, u, order)?);
    let rd = twisted_coproduct(&f_inv, &d)?.sub_ref(&closed_coproduct_d(ctx, u, order)?);
    Ok((rp, rd))
}

pub fn check_coproduct(ctx: &GeneratorContext, u: &UMode, order: TruncationOrder) -> Result<Report> {
    let start = Instant::now();
    let (rp, rd) = coproduct_residuals(ctx, u, order)?;
    let mut failures = Vec::new();
    for t in crate::report::render_tensor_terms(&rp) {
        failures.push(format!("coproduct of p: {t}"));
    }
    for t in crate::report::render_tensor_terms(&rd) {
        failures.push(format!("coproduct of D: {t}"));
    }
    Ok(Report::from_failures(
        "coproduct",
        params([("u", u.to_string()), ("N", order.to_string())]),
        failures,
        start,
    ))
}

/// Coassociativity residual of a supplied coproduct of the probe momentum,
/// with the twisted coproduct applied legwise by conjugation:
/// `(F (x) 1)((coproduct0 on leg 0) X)(F^-1 (x) 1) - (1 (x) F)((coproduct0 on leg 1) X)(1 (x) F^-1)`.
pub fn coassoc_residual_for(f_inv: &TensorElem, delta_p: &TensorElem) -> Result<TensorElem> {
    let f = TensorElem::inverse_series(f_inv)?;
    let f12 = f.embed_into_three((0, 1))?;
    let finv12 = f_inv.embed_into_three((0, 1))?;
    let f23 = f.embed_into_three((1, 2))?;
    let finv23 = f_inv.embed_into_three((1, 2))?;

    let left = TensorElem::tensor_mul(
        &TensorElem::tensor_mul(&f12, &delta_p.apply_leg(0, LegMap::Coproduct0)?)?,
        &finv12,
    )?;
    let right = TensorElem::tensor_mul(
        &TensorElem::tensor_mul(&f23, &delta_p.apply_leg(1, LegMap::Coproduct0)?)?,
        &finv23,
    )?;
    Ok(left.sub_ref(&right))
}

pub fn check_coassoc(ctx: &GeneratorContext, u: &UMode, order: TruncationOrder) -> Result<Report> {
    let start = Instant::now();
    let f_inv = twists::fgz_inv(ctx, u, order);
    let delta_p = closed_coproduct_p(ctx, u, order)?;
    let residual = coassoc_residual_for(&f_inv, &delta_p)?;
    Ok(Report::from_residual(
        "coassoc",
        params([("u", u.to_string()), ("N", order.to_string())]),
        &residual,
        start,
    ))
}

/// Quantum Yang-Baxter residual `R12 R13 R23 - R23 R13 R12`.
pub fn qybe_residual(r: &TensorElem) -> Result<TensorElem> {
    let r12 = r.embed_into_three((0, 1))?;
    let r13 = r.embed_into_three((0, 2))?;
    let r23 = r.embed_into_three((1, 2))?;
    let lhs = TensorElem::tensor_mul(&TensorElem::tensor_mul(&r12, &r13)?, &r23)?;
    let rhs = TensorElem::tensor_mul(&TensorElem::tensor_mul(&r23, &r13)?, &r12)?;
    Ok(lhs.sub_ref(&rhs))
}

pub fn check_qybe(r: &TensorElem, label: &str) -> Result<Report> {
    let start = Instant::now();
    let residual = qybe_residual(r)?;
    Ok(Report::from_residual(
        "qybe",
        params([
            ("r_matrix", label.to_string()),
            ("N", r.order().to_string()),
        ]),
        &residual,
        start,
    ))
}

/// Deliberately corrupted inputs proving the comparators are not vacuous.
pub mod fixtures {
    use super::*;

    /// `1(x)1 + t D(x)D`: fails the cocycle condition at order 2.
    pub fn corrupted_twist(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
        let d = AlgElem::dilatation(ctx);
        TensorElem::identity(ctx, 2, order).add_ref(
            &TensorElem::tensor2(&d, &d, order)
                .expect("same context")
                .scale(&scalar::t()),
        )
    }

    /// `1(x)1 + t 1(x)D`: fails counitality on the left-leg reduction.
    pub fn corrupted_counital(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
        let d = AlgElem::dilatation(ctx);
        let one = AlgElem::one(ctx);
        TensorElem::identity(ctx, 2, order).add_ref(
            &TensorElem::tensor2(&one, &d, order)
                .expect("same context")
                .scale(&scalar::t()),
        )
    }

    /// `1(x)1 + t D(x)P`: fails the Yang-Baxter equation at order 2.
    pub fn corrupted_qybe_r(ctx: &GeneratorContext, order: TruncationOrder) -> TensorElem {
        let d = AlgElem::dilatation(ctx);
        let p = AlgElem::momentum(ctx, "P").expect("P present");
        TensorElem::identity(ctx, 2, order).add_ref(
            &TensorElem::tensor2(&d, &p, order)
                .expect("same context")
                .scale(&scalar::t()),
        )
    }

    /// The closed coproduct of `p` with a corrupted first-order term.
    pub fn corrupted_coproduct_p(
        ctx: &GeneratorContext,
        u: &UMode,
        order: TruncationOrder,
    ) -> Result<TensorElem> {
        let p = AlgElem::momentum(ctx, "p").expect("probe momentum present");
        let cap_p = AlgElem::momentum(ctx, "P").expect("P present");
        Ok(closed_coproduct_p(ctx, u, order)?.add_ref(
            &TensorElem::tensor2(&p, &cap_p, order)?.scale(&scalar::t()),
        ))
    }

    /// A sign-corrupted twist inverse for the equality and jet checks.
    pub fn corrupted_fru_inv(
        ctx: &GeneratorContext,
        u: &UMode,
        order: TruncationOrder,
    ) -> Result<TensorElem> {
        let p = AlgElem::momentum(ctx, "P").expect("P present");
        Ok(twists::fru_inv(ctx, u, order)?.add_ref(
            &TensorElem::tensor2(&p, &p, order)?.scale(&scalar::t_pow(2)),
        ))
    }

    /// Antipode axiom run against a coproduct with a flipped-sign first-order
    /// part, which violates the axiom for generic `u`.
    pub fn corrupted_antipode_residual(
        ctx: &GeneratorContext,
        u: &UMode,
        order: TruncationOrder,
    ) -> Result<TensorElem> {
        let delta = corrupted_coproduct_p(ctx, u, order)?;
        antipode_axiom_residual_for(ctx, HopfGen::P, &delta, u, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twists::{f0_inv, fgz_inv, fru_inv, r_matrix};

    fn ctx() -> GeneratorContext {
        GeneratorContext::standard()
    }

    fn sym() -> UMode {
        UMode::Symbolic
    }

    fn p_probe() -> AlgElem {
        AlgElem::momentum(&ctx(), "p").unwrap()
    }

    fn cap_p() -> AlgElem {
        AlgElem::momentum(&ctx(), "P").unwrap()
    }

    fn d() -> AlgElem {
        AlgElem::dilatation(&ctx())
    }

    #[test]
    fn cocycle_holds_for_the_simple_twist() {
        for n in 0..=4 {
            let r = cocycle_residual(&f0_inv(&ctx(), n)).unwrap();
            assert!(r.is_zero(), "nonzero cocycle residual at order {n}");
        }
    }

    #[test]
    fn cocycle_holds_for_the_interpolating_twist() {
        let r = cocycle_residual(&fgz_inv(&ctx(), &sym(), 3)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn cocycle_rejects_the_corrupted_twist() {
        // Oracle (hand expansion): the order-2 residual of 1 + t D(x)D is
        // t^2 (D^2 (x) D (x) D - D (x) D (x) D^2).
        let bad = fixtures::corrupted_twist(&ctx(), 3);
        let r = cocycle_residual(&bad).unwrap();
        assert!(!r.is_zero());
        assert!(r.coeff_t(1).is_zero());
        let expect = TensorElem::from_terms(
            &ctx(),
            3,
            3,
            vec![
                (
                    vec![
                        PbwMono { mom: vec![0, 0], d: 2 },
                        PbwMono { mom: vec![0, 0], d: 1 },
                        PbwMono { mom: vec![0, 0], d: 1 },
                    ],
                    scalar::one(),
                ),
                (
                    vec![
                        PbwMono { mom: vec![0, 0], d: 1 },
                        PbwMono { mom: vec![0, 0], d: 1 },
                        PbwMono { mom: vec![0, 0], d: 2 },
                    ],
                    scalar::int(-1),
                ),
            ],
        );
        assert_eq!(r.coeff_t(2), expect);
    }

    #[test]
    fn counital_pass_and_fail() {
        let good = check_counital(&fgz_inv(&ctx(), &sym(), 3), "fgz_inv").unwrap();
        assert!(good.pass);
        let bad = check_counital(&fixtures::corrupted_counital(&ctx(), 3), "corrupted").unwrap();
        assert!(!bad.pass);
        // the left-leg reduction of 1(x)1 + t 1(x)D leaves t D behind
        assert!(bad.residual_terms.iter().any(|s| s.contains("leg 0")));
    }

    #[test]
    fn twist_equality_small_orders() {
        for n in 0..=3 {
            assert!(equality_residual(&ctx(), &sym(), n).unwrap().is_zero());
        }
        assert!(equality_residual(&ctx(), &UMode::rational(1, 3), 5)
            .unwrap()
            .is_zero());
        assert!(cochain_residual(&ctx(), &sym(), 3).unwrap().is_zero());
    }

    #[test]
    fn ode_holds_for_both_families() {
        for family in [TwistFamily::Gz, TwistFamily::R] {
            let report = check_ode(&ctx(), family, 3).unwrap();
            assert!(report.pass, "{:?}: {:?}", family, report.residual_terms);
        }
    }

    #[test]
    fn ode_rejects_a_corrupted_twist() {
        let bad = fixtures::corrupted_fru_inv(&ctx(), &sym(), 3).unwrap();
        assert!(!ode_residual(&bad).unwrap().is_zero());
    }

    #[test]
    fn twisted_coproduct_of_identity_twist_is_primitive() {
        let one = TensorElem::identity(&ctx(), 2, 3);
        let got = twisted_coproduct(&one, &p_probe()).unwrap();
        let expect = TensorElem::tensor2(&p_probe(), &AlgElem::one(&ctx()), 3)
            .unwrap()
            .add_ref(&TensorElem::tensor2(&AlgElem::one(&ctx()), &p_probe(), 3).unwrap());
        assert_eq!(got, expect);
    }

    #[test]
    fn closed_coproduct_p_low_orders() {
        let n = 3;
        let dp = closed_coproduct_p(&ctx(), &sym(), n).unwrap();
        // order 0: p (x) 1 + 1 (x) p
        let one = AlgElem::one(&ctx());
        let order0 = TensorElem::tensor2(&p_probe(), &one, n)
            .unwrap()
            .add_ref(&TensorElem::tensor2(&one, &p_probe(), n).unwrap());
        assert_eq!(dp.coeff_t(0), order0.coeff_t(0));
        // order 1: u p (x) P + (u-1) P (x) p
        let order1 = TensorElem::tensor2(&p_probe(), &cap_p(), n)
            .unwrap()
            .scale(&scalar::u())
            .add_ref(
                &TensorElem::tensor2(&cap_p(), &p_probe(), n)
                    .unwrap()
                    .scale(&scalar::u_minus_one()),
            );
        assert_eq!(dp.coeff_t(1), order1.coeff_t(0));
        // order 2: u(u-1) (pP (x) P + P (x) pP)
        let pp = &p_probe() * &cap_p();
        let order2 = TensorElem::tensor2(&pp, &cap_p(), n)
            .unwrap()
            .add_ref(&TensorElem::tensor2(&cap_p(), &pp, n).unwrap())
            .scale(&(&scalar::u() * &scalar::u_minus_one()));
        assert_eq!(dp.coeff_t(2), order2.coeff_t(0));
    }

    #[test]
    fn closed_coproduct_d_low_orders() {
        let n = 2;
        let dd = closed_coproduct_d(&ctx(), &sym(), n).unwrap();
        let one = AlgElem::one(&ctx());
        let order0 = TensorElem::tensor2(&d(), &one, n)
            .unwrap()
            .add_ref(&TensorElem::tensor2(&one, &d(), n).unwrap());
        assert_eq!(dd.coeff_t(0), order0.coeff_t(0));
        // order 1: -u D (x) P + (1-u) P (x) D
        let order1 = TensorElem::tensor2(&d(), &cap_p(), n)
            .unwrap()
            .scale(&-&scalar::u())
            .add_ref(
                &TensorElem::tensor2(&cap_p(), &d(), n)
                    .unwrap()
                    .scale(&(&scalar::one() - &scalar::u())),
            );
        assert_eq!(dd.coeff_t(1), order1.coeff_t(0));
    }

    #[test]
    fn twisted_coproducts_match_closed_forms() {
        let report = check_coproduct(&ctx(), &sym(), 3).unwrap();
        assert!(report.pass, "{:?}", report.residual_terms);
    }

    #[test]
    fn coproduct_of_d_agrees_between_families() {
        let n = 3;
        let via_gz = twisted_coproduct(&fgz_inv(&ctx(), &sym(), n), &d()).unwrap();
        let via_r = twisted_coproduct(&fru_inv(&ctx(), &sym(), n).unwrap(), &d()).unwrap();
        assert_eq!(via_gz, via_r);
    }

    #[test]
    fn closed_antipode_values() {
        let n = 3;
        // at u = 1/2 the denominator disappears: S(p) = -p
        let s = closed_antipode(&ctx(), HopfGen::P, &UMode::rational(1, 2), n);
        assert_eq!(s, TensorElem::from_algelem(&-&p_probe(), n));
        // first order for symbolic u: -(1-2u) pP
        let s = closed_antipode(&ctx(), HopfGen::P, &sym(), n);
        let expect = (&p_probe() * &cap_p())
            .scale(&-&(&scalar::one() - &scalar::u().scale(&crate::exactmath::GaussianRational::from_int(2))));
        assert_eq!(s.coeff_t(1), TensorElem::from_algelem(&expect, n).coeff_t(0));
        // at u = 1: S(D) = -D (1 + t P) = -D - t P D + t P
        let s = closed_antipode(&ctx(), HopfGen::D, &UMode::rational(1, 1), n);
        let pd = &cap_p() * &d();
        let expect = (&(-&d()) - &pd.scale(&scalar::t()))
            .add_ref(&cap_p().scale(&scalar::t()));
        assert_eq!(s, TensorElem::from_algelem(&expect, n));
    }

    #[test]
    fn antipode_axiom_holds() {
        for gen in [HopfGen::P, HopfGen::D] {
            let r = antipode_axiom_residual(&ctx(), gen, &sym(), 3).unwrap();
            assert!(r.is_zero(), "antipode axiom failed for {gen}: {r}");
        }
    }

    #[test]
    fn antipode_axiom_rejects_corrupted_coproduct() {
        let r = fixtures::corrupted_antipode_residual(&ctx(), &sym(), 3).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn coassociativity_holds_and_detects_corruption() {
        let n = 2;
        let f_inv = fgz_inv(&ctx(), &sym(), n);
        let good = closed_coproduct_p(&ctx(), &sym(), n).unwrap();
        assert!(coassoc_residual_for(&f_inv, &good).unwrap().is_zero());
        let bad = fixtures::corrupted_coproduct_p(&ctx(), &sym(), n).unwrap();
        assert!(!coassoc_residual_for(&f_inv, &bad).unwrap().is_zero());
        // order 0 is the undeformed coassociativity of a primitive element
        assert!(check_coassoc(&ctx(), &sym(), 0).unwrap().pass);
    }

    #[test]
    fn qybe_holds_for_twist_r_matrices() {
        let n = 2;
        let one = TensorElem::identity(&ctx(), 2, n);
        assert!(qybe_residual(&one).unwrap().is_zero());
        let r = r_matrix(&fgz_inv(&ctx(), &sym(), n)).unwrap();
        assert!(qybe_residual(&r).unwrap().is_zero());
    }

    #[test]
    fn qybe_rejects_the_corrupted_r() {
        // Oracle (hand expansion): residual of 1 + t D(x)P is t^2 D(x)P(x)P.
        let bad = fixtures::corrupted_qybe_r(&ctx(), 2);
        let r = qybe_residual(&bad).unwrap();
        assert!(r.coeff_t(1).is_zero());
        let expect = TensorElem::from_terms(
            &ctx(),
            3,
            2,
            vec![(
                vec![
                    PbwMono { mom: vec![0, 0], d: 1 },
                    PbwMono { mom: vec![1, 0], d: 0 },
                    PbwMono { mom: vec![1, 0], d: 0 },
                ],
                scalar::one(),
            )],
        );
        assert_eq!(r.coeff_t(2), expect);
    }
}
