//! Star products induced by the twist family: the exact twist action on
//! polynomial functions and the closed-form plane-wave product, with
//! associativity, cross-form, and jet-consistency checks.
//!
//! Plane waves are first-class values (momentum vector plus exact prefactor)
//! rather than symbolic exponentials: the closed composition law keeps them
//! closed under the star product with no transcendental functions anywhere.

use crate::error::{Error, Result};
use crate::exactmath::{scalar, GaussianRational, Scalar};
use crate::pbw::{AlgElem, GeneratorContext};
use crate::report::{params, Report};
use crate::tensorcalc::TensorElem;
use crate::twists::{self, TwistFamily, UMode};
use crate::weylreal::{act, PolyFunction, SpaceConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::time::Instant;

/// `prefactor * e^(i k.x)` with exact rational momentum components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWave {
    pub momentum: Vec<BigRational>,
    pub prefactor: GaussianRational,
}

impl PlaneWave {
    pub fn unit(momentum: Vec<BigRational>) -> Self {
        PlaneWave {
            momentum,
            prefactor: GaussianRational::one(),
        }
    }

    pub fn from_ints(momentum: &[i64]) -> Self {
        Self::unit(
            momentum
                .iter()
                .map(|&n| BigRational::from_integer(n.into()))
                .collect(),
        )
    }
}

impl fmt::Display for PlaneWave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mom = self
            .momentum
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({}) * exp(i({}).x)", self.prefactor, mom)
    }
}

fn dot(v: &[BigRational], w: &[BigRational]) -> BigRational {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Star product of polynomial functions with a symbolic deformation scale:
/// `f * g = m(F^-1 (act (x) act)(f (x) g))`, exact because the twist series
/// terminates on polynomials. The twist inverse must be truncated at order
/// >= deg f + deg g.
pub fn star_poly_symbolic_t(
    f_inv: &TensorElem,
    config: &SpaceConfig,
    f: &PolyFunction,
    g: &PolyFunction,
) -> Result<PolyFunction> {
    let ctx = f_inv.ctx();
    let mut out = PolyFunction::zero(config.dim());
    for (key, s) in f_inv.terms() {
        let left = AlgElem::from_mono(ctx, key[0].clone(), scalar::one());
        let fa = act(&left, config, f)?;
        if fa.is_zero() {
            continue;
        }
        let right = AlgElem::from_mono(ctx, key[1].clone(), scalar::one());
        let gb = act(&right, config, g)?;
        if gb.is_zero() {
            continue;
        }
        out = out.add_ref(&fa.mul_ref(&gb).scale(s));
    }
    Ok(out)
}

/// Exact star product of polynomials at concrete `u` and `kappa`.
pub fn star_poly(
    family: TwistFamily,
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    f: &PolyFunction,
    g: &PolyFunction,
) -> Result<PolyFunction> {
    if kappa.is_zero() {
        return Err(Error::ZeroKappa);
    }
    let order = (f.total_degree() + g.total_degree()) as u32;
    let ctx = GeneratorContext::standard();
    let f_inv = twists::family_inv(&ctx, family, &UMode::Rational(u.clone()), order)?;
    let result = star_poly_symbolic_t(&f_inv, config, f, g)?;
    let t_value = GaussianRational::from_rational(kappa.recip());
    Ok(result.substitute_var("t", &t_value))
}

/// The denominator `1 - u(u-1)/kappa^2 (v.k)(v.q)` of the composition law.
fn composition_denominator(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    k: &[BigRational],
    q: &[BigRational],
) -> BigRational {
    let correction = u * &(u - BigRational::one()) * dot(config.v(), k) * dot(config.v(), q)
        / (kappa * kappa);
    BigRational::one() - correction
}

/// Closed-form star product of plane waves. The output momentum is
/// `D_mu(k,q) = [k_mu (1 + u(v.q)/kappa) + q_mu (1 + (u-1)(v.k)/kappa)] / den`
/// and the prefactors multiply and divide by the same denominator.
pub fn star_planewave(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    a: &PlaneWave,
    b: &PlaneWave,
) -> Result<PlaneWave> {
    if kappa.is_zero() {
        return Err(Error::ZeroKappa);
    }
    let den = composition_denominator(u, kappa, config, &a.momentum, &b.momentum);
    if den.is_zero() {
        return Err(Error::SingularDenominator(format!(
            "1 - u(u-1)/kappa^2 (v.k)(v.q) = 0 at k=({}) q=({})",
            a.momentum
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            b.momentum
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )));
    }
    let vk = dot(config.v(), &a.momentum);
    let vq = dot(config.v(), &b.momentum);
    let ck = BigRational::one() + u * &vq / kappa;
    let cq = BigRational::one() + (u - BigRational::one()) * &vk / kappa;
    let momentum = a
        .momentum
        .iter()
        .zip(&b.momentum)
        .map(|(kmu, qmu)| (kmu * &ck + qmu * &cq) / &den)
        .collect();
    let prefactor = &a.prefactor * &b.prefactor;
    let den_inv = GaussianRational::from_rational(den.recip());
    Ok(PlaneWave {
        momentum,
        prefactor: &prefactor * &den_inv,
    })
}

/// The same composition law written with the opposite sign bookkeeping
/// (`1 + u(1-u)/kappa^2 ...` and `1 - (1-u)/kappa (v.k)`), used to cross-check
/// that the two published forms are identical.
pub fn star_planewave_alt(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    a: &PlaneWave,
    b: &PlaneWave,
) -> Result<PlaneWave> {
    if kappa.is_zero() {
        return Err(Error::ZeroKappa);
    }
    let vk = dot(config.v(), &a.momentum);
    let vq = dot(config.v(), &b.momentum);
    let one = BigRational::one();
    let den = &one + &(u * &(&one - u) * &vk * &vq / (kappa * kappa));
    if den.is_zero() {
        return Err(Error::SingularDenominator(
            "1 + u(1-u)/kappa^2 (v.k)(v.q) = 0".to_string(),
        ));
    }
    let ck = &one + &(u * &vq / kappa);
    let cq = &one - &(&(&one - u) * &vk / kappa);
    let momentum = a
        .momentum
        .iter()
        .zip(&b.momentum)
        .map(|(kmu, qmu)| (kmu * &ck + qmu * &cq) / &den)
        .collect();
    let den_inv = GaussianRational::from_rational(den.recip());
    Ok(PlaneWave {
        momentum,
        prefactor: &(&a.prefactor * &b.prefactor) * &den_inv,
    })
}

/// Negative-control composition: the momentum law without its normalizing
/// denominator. The prefactor bookkeeping then fails the associativity check.
pub fn star_planewave_corrupted(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    a: &PlaneWave,
    b: &PlaneWave,
) -> Result<PlaneWave> {
    let good = star_planewave(u, kappa, config, a, b)?;
    let den = composition_denominator(u, kappa, config, &a.momentum, &b.momentum);
    Ok(PlaneWave {
        momentum: good.momentum.iter().map(|c| c * &den).collect(),
        prefactor: good.prefactor,
    })
}

fn sample_momentum(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    (0..dim)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.random_range(-9i64..=9)),
                BigInt::from(rng.random_range(1i64..=9)),
            )
        })
        .collect()
}

type Composer =
    fn(&BigRational, &BigRational, &SpaceConfig, &PlaneWave, &PlaneWave) -> Result<PlaneWave>;

/// Exact associativity of the plane-wave star product on seeded random
/// rational triples; singular momentum triples are resampled and counted.
pub fn check_assoc_planewave_with(
    compose: Composer,
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    samples: usize,
    seed: u64,
) -> Report {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut resamples = 0usize;
    for index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
        let outcome = loop {
            let k = PlaneWave::unit(sample_momentum(&mut rng, config.dim()));
            let q = PlaneWave::unit(sample_momentum(&mut rng, config.dim()));
            let r = PlaneWave::unit(sample_momentum(&mut rng, config.dim()));
            let left = compose(u, kappa, config, &k, &q)
                .and_then(|kq| compose(u, kappa, config, &kq, &r));
            let right = compose(u, kappa, config, &q, &r)
                .and_then(|qr| compose(u, kappa, config, &k, &qr));
            match (left, right) {
                (Ok(l), Ok(r2)) => break Some((k, q, r, l, r2)),
                (Err(Error::SingularDenominator(_)), _)
                | (_, Err(Error::SingularDenominator(_))) => {
                    resamples += 1;
                    if resamples > 64 * samples {
                        break None;
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    failures.push(format!("sample {index}: error {e}"));
                    break None;
                }
            }
        };
        if let Some((k, q, r, l, r2)) = outcome {
            if l != r2 {
                failures.push(format!(
                    "sample {index}: (k*q)*r = {l} but k*(q*r) = {r2} for k={k}, q={q}, r={r}"
                ));
            }
        }
    }
    Report::from_failures(
        "star-assoc",
        params([
            ("u", u.to_string()),
            ("kappa", kappa.to_string()),
            ("v", config.describe_v()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("resamples", resamples.to_string()),
        ]),
        failures,
        start,
    )
}

pub fn check_assoc_planewave(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    samples: usize,
    seed: u64,
) -> Report {
    check_assoc_planewave_with(star_planewave, u, kappa, config, samples, seed)
}

/// The two published closed forms of the composition law agree identically:
/// sign identity `-u(u-1) = u(1-u)` as polynomials, equal momenta and
/// prefactors on seeded samples, and prefactor = 1/(1 + u(1-u)/kappa^2 ...).
pub fn check_star_forms_agree(
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    samples: usize,
    seed: u64,
) -> Report {
    check_star_forms_agree_with(star_planewave_alt, u, kappa, config, samples, seed)
}

pub fn check_star_forms_agree_with(
    alt: Composer,
    u: &BigRational,
    kappa: &BigRational,
    config: &SpaceConfig,
    samples: usize,
    seed: u64,
) -> Report {
    let start = Instant::now();
    let mut failures = Vec::new();

    // -u(u-1) = u(1-u) as exact polynomials in u
    let us = scalar::u();
    let lhs = -&(&us * &(&us - &scalar::one()));
    let rhs = &us * &(&scalar::one() - &us);
    if lhs != rhs {
        failures.push(format!("sign identity failed: {lhs} vs {rhs}"));
    }

    for index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
        let k = PlaneWave::unit(sample_momentum(&mut rng, config.dim()));
        let q = PlaneWave::unit(sample_momentum(&mut rng, config.dim()));
        let main = star_planewave(u, kappa, config, &k, &q);
        let other = alt(u, kappa, config, &k, &q);
        match (main, other) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    failures.push(format!("sample {index}: {a} vs {b}"));
                }
                // prefactor equals the reciprocal of the plus-sign denominator,
                // the content of writing the prefactor as exp(i G) with
                // G = i ln(1 + u(1-u)/kappa^2 (v.k)(v.q)).
                let one = BigRational::one();
                let a_plus = &one
                    + &(u * &(&one - u) * dot(config.v(), &k.momentum)
                        * dot(config.v(), &q.momentum)
                        / (kappa * kappa));
                let expect = GaussianRational::from_rational(a_plus.recip());
                if a.prefactor != expect {
                    failures.push(format!(
                        "sample {index}: prefactor {} != 1/(1 + u(1-u)(vk)(vq)/kappa^2) = {}",
                        a.prefactor, expect
                    ));
                }
            }
            (Err(Error::SingularDenominator(_)), Err(Error::SingularDenominator(_))) => {}
            (a, b) => failures.push(format!("sample {index}: {a:?} vs {b:?}")),
        }
    }
    Report::from_failures(
        "star-agree",
        params([
            ("u", u.to_string()),
            ("kappa", kappa.to_string()),
            ("v", config.describe_v()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ]),
        failures,
        start,
    )
}

/// Truncated plane-wave polynomial `sum_{m<=degree} (i k.x)^m / m!`.
pub fn exp_ikx(config: &SpaceConfig, k: &[BigRational], degree: u16) -> PolyFunction {
    let dim = config.dim();
    let mut linear = PolyFunction::zero(dim);
    for (mu, kmu) in k.iter().enumerate() {
        if kmu.is_zero() {
            continue;
        }
        let c = &GaussianRational::i() * &GaussianRational::from_rational(kmu.clone());
        linear = linear.add_ref(
            &PolyFunction::coordinate(dim, mu)
                .expect("index in range")
                .scale(&scalar::gauss(c)),
        );
    }
    let mut acc = PolyFunction::one(dim);
    let mut power = PolyFunction::one(dim);
    let mut factorial = BigRational::one();
    for m in 1..=degree {
        power = power.mul_ref(&linear);
        factorial *= BigRational::from_integer(BigInt::from(m));
        acc = acc.add_ref(&power.scale(&scalar::gauss(GaussianRational::from_rational(
            factorial.recip(),
        ))));
    }
    acc
}

/// The `t`-expanded jet of the closed-form plane-wave product: coefficients
/// of `x^beta` for `|beta| <= max_degree`, with every rational function of
/// `t` expanded as a geometric series up to `t_order`.
fn planewave_jet(
    u: &BigRational,
    config: &SpaceConfig,
    k: &[BigRational],
    q: &[BigRational],
    max_degree: u16,
    t_order: u32,
) -> PolyFunction {
    let dim = config.dim();
    let vk = dot(config.v(), k);
    let vq = dot(config.v(), q);
    let lambda = u * &(u - BigRational::one()) * &vk * &vq;

    // 1/(1 - lambda t^2) = sum lambda^m t^(2m)
    let mut den_inv = scalar::zero();
    let mut lam_pow = BigRational::one();
    let mut m = 0u32;
    while 2 * m <= t_order {
        den_inv = &den_inv
            + &(&scalar::gauss(GaussianRational::from_rational(lam_pow.clone()))
                * &scalar::t_pow(2 * m));
        lam_pow *= &lambda;
        m += 1;
    }

    // D_mu(t) = (k_mu + q_mu + t (k_mu u (v.q) + q_mu (u-1)(v.k))) * den_inv
    let mut d_series: Vec<Scalar> = Vec::with_capacity(dim);
    for mu in 0..dim {
        let c0 = &k[mu] + &q[mu];
        let c1 = &k[mu] * u * &vq + &q[mu] * &(u - BigRational::one()) * &vk;
        let num = &scalar::gauss(GaussianRational::from_rational(c0))
            + &(&scalar::gauss(GaussianRational::from_rational(c1)) * &scalar::t());
        d_series.push((&num * &den_inv).truncate_var("t", t_order).expect("t"));
    }

    // jet of e^(i D(t).x) * prefactor(t)
    let mut jet = PolyFunction::zero(dim);
    let mut exps = vec![0u16; dim];
    loop {
        let total: u16 = exps.iter().sum();
        if total <= max_degree {
            let mut coeff = den_inv.clone();
            for mu in 0..dim {
                let id = (&scalar::i() * &d_series[mu])
                    .truncate_var("t", t_order)
                    .expect("t");
                for _ in 0..exps[mu] {
                    coeff = (&coeff * &id).truncate_var("t", t_order).expect("t");
                }
                let mut fact = BigRational::one();
                for f in 1..=exps[mu] {
                    fact *= BigRational::from_integer(BigInt::from(f));
                }
                coeff = coeff.scale(&GaussianRational::from_rational(fact.recip()));
            }
            jet = jet.add_ref(&PolyFunction::monomial(dim, exps.clone(), coeff));
        }
        // advance the multi-index within the degree bound
        let mut mu = 0;
        loop {
            if mu == dim {
                return jet;
            }
            exps[mu] += 1;
            if exps[mu] as u16 <= max_degree {
                break;
            }
            exps[mu] = 0;
            mu += 1;
        }
    }
}

/// Jet consistency and family agreement for polynomial star products.
///
/// Part 1: the two twist constructions induce identical star products on all
/// monomial pairs up to `monomial_degree` (symbolic `t`, so this holds for
/// every `kappa` at once). Part 2: the Taylor jet of the closed plane-wave
/// product to degree `jet_degree` matches the polynomial star product of
/// truncated exponentials coefficient by coefficient up to `t_order`, with
/// inputs truncated at degree `jet_degree + t_order` so that no contribution
/// in range is lost.
pub fn check_star_jets(
    u: &BigRational,
    config: &SpaceConfig,
    monomial_degree: u16,
    jet_degree: u16,
    t_order: u32,
    seed: u64,
) -> Result<Report> {
    let gz = twists::fgz_inv(
        &GeneratorContext::standard(),
        &UMode::Rational(u.clone()),
        2 * monomial_degree as u32,
    );
    let r = twists::fru_inv(
        &GeneratorContext::standard(),
        &UMode::Rational(u.clone()),
        2 * monomial_degree as u32,
    )?;
    check_star_jets_with(&gz, &r, u, config, monomial_degree, jet_degree, t_order, seed)
}

#[allow(clippy::too_many_arguments)]
pub fn check_star_jets_with(
    gz_inv: &TensorElem,
    r_inv: &TensorElem,
    u: &BigRational,
    config: &SpaceConfig,
    monomial_degree: u16,
    jet_degree: u16,
    t_order: u32,
    seed: u64,
) -> Result<Report> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dim = config.dim();

    // Part 1: all monomial pairs up to monomial_degree, both families.
    let monomials = {
        let mut out = Vec::new();
        let mut exps = vec![0u16; dim];
        'outer: loop {
            if exps.iter().sum::<u16>() <= monomial_degree {
                out.push(PolyFunction::monomial(dim, exps.clone(), scalar::one()));
            }
            let mut mu = 0;
            loop {
                if mu == dim {
                    break 'outer;
                }
                exps[mu] += 1;
                if exps[mu] <= monomial_degree {
                    break;
                }
                exps[mu] = 0;
                mu += 1;
            }
        }
        out
    };
    for f in &monomials {
        for g in &monomials {
            let via_gz = star_poly_symbolic_t(gz_inv, config, f, g)?;
            let via_r = star_poly_symbolic_t(r_inv, config, f, g)?;
            if via_gz != via_r {
                failures.push(format!(
                    "family mismatch on {f} * {g}: {via_gz} vs {via_r}"
                ));
            }
        }
    }

    // Part 2: jets of the plane-wave closed form vs truncated exponentials.
    let input_degree = jet_degree + t_order as u16;
    let f_inv = {
        // twist truncated at t_order is all that can contribute there
        let ctx = GeneratorContext::standard();
        twists::fgz_inv(&ctx, &UMode::Rational(u.clone()), t_order)
    };
    for index in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
        let k = sample_momentum(&mut rng, dim);
        let q = sample_momentum(&mut rng, dim);
        let fk = exp_ikx(config, &k, input_degree);
        let fq = exp_ikx(config, &q, input_degree);
        let star = star_poly_symbolic_t(&f_inv, config, &fk, &fq)?
            .truncate_degree(jet_degree)
            .truncate_t(t_order);
        let jet = planewave_jet(u, config, &k, &q, jet_degree, t_order);
        if star != jet {
            failures.push(format!(
                "jet mismatch at sample {index}: k=({}) q=({})",
                k.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                q.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
    }

    Ok(Report::from_failures(
        "jets",
        params([
            ("u", u.to_string()),
            ("v", config.describe_v()),
            ("monomial_degree", monomial_degree.to_string()),
            ("jet_degree", jet_degree.to_string()),
            ("t_order", t_order.to_string()),
            ("seed", seed.to_string()),
        ]),
        failures,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg1() -> SpaceConfig {
        SpaceConfig::from_ints(&[1])
    }

    fn cfg2() -> SpaceConfig {
        SpaceConfig::standard2()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn planewave_hand_values() {
        // u=1/2, kappa=1, v=(1), k=q=(1): denominator 5/4, momentum 8/5,
        // prefactor 4/5.
        let a = PlaneWave::from_ints(&[1]);
        let out = star_planewave(&rat(1, 2), &rat(1, 1), &cfg1(), &a, &a).unwrap();
        assert_eq!(out.momentum, vec![rat(8, 5)]);
        assert_eq!(out.prefactor, GaussianRational::from_ratio(4, 5));

        // u=0: D = k + q(1 - (v.k)/kappa); prefactor stays 1.
        let out = star_planewave(&rat(0, 1), &rat(1, 1), &cfg1(), &a, &a).unwrap();
        assert_eq!(out.momentum, vec![rat(1, 1)]);
        assert_eq!(out.prefactor, GaussianRational::one());

        // u=1: no denominator correction either.
        let out = star_planewave(&rat(1, 1), &rat(1, 1), &cfg1(), &a, &a).unwrap();
        assert_eq!(out.momentum, vec![rat(3, 1)]);
        assert_eq!(out.prefactor, GaussianRational::one());
    }

    #[test]
    fn singular_momenta_are_an_error() {
        // u=1/2, kappa=1, v=1: denominator 1 + (v.k)(v.q)/4 vanishes at
        // k=(2), q=(-2).
        let a = PlaneWave::from_ints(&[2]);
        let b = PlaneWave::from_ints(&[-2]);
        assert!(matches!(
            star_planewave(&rat(1, 2), &rat(1, 1), &cfg1(), &a, &b),
            Err(Error::SingularDenominator(_))
        ));
        assert!(matches!(
            star_planewave(&rat(1, 2), &rat(0, 1), &cfg1(), &a, &b),
            Err(Error::ZeroKappa)
        ));
    }

    #[test]
    fn assoc_holds_and_corrupted_fails() {
        for u in [rat(0, 1), rat(1, 3), rat(1, 2), rat(1, 1)] {
            let report = check_assoc_planewave(&u, &rat(1, 1), &cfg2(), 32, 0);
            assert!(report.pass, "u={u}: {:?}", report.residual_terms);
        }
        // v = 0 is the undeformed law
        let flat = SpaceConfig::from_ints(&[0, 0]);
        let report = check_assoc_planewave(&rat(1, 2), &rat(1, 1), &flat, 8, 0);
        assert!(report.pass);

        let report = check_assoc_planewave_with(
            star_planewave_corrupted,
            &rat(1, 2),
            &rat(1, 1),
            &cfg2(),
            32,
            0,
        );
        assert!(!report.pass);
    }

    #[test]
    fn forms_agree_and_sign_flip_fails() {
        let report = check_star_forms_agree(&rat(2, 3), &rat(1, 1), &cfg2(), 50, 0);
        assert!(report.pass, "{:?}", report.residual_terms);

        // flipping the alternate form's denominator sign breaks agreement
        fn flipped(
            u: &BigRational,
            kappa: &BigRational,
            config: &SpaceConfig,
            a: &PlaneWave,
            b: &PlaneWave,
        ) -> Result<PlaneWave> {
            let minus_u = -u.clone();
            star_planewave_alt(&minus_u, kappa, config, a, b)
        }
        let report =
            check_star_forms_agree_with(flipped, &rat(2, 3), &rat(1, 1), &cfg2(), 16, 0);
        assert!(!report.pass);
    }

    #[test]
    fn star_poly_unit_laws_and_classical_limit() {
        let cfg = cfg2();
        let one = PolyFunction::one(2);
        let x0 = PolyFunction::coordinate(2, 0).unwrap();
        let x1 = PolyFunction::coordinate(2, 1).unwrap();
        let g = x0.mul_ref(&x1).add_ref(&x1.scale(&scalar::int(3)));

        let u = rat(1, 2);
        let kappa = rat(2, 1);
        for family in [TwistFamily::Gz, TwistFamily::R] {
            let prod = star_poly(family, &u, &kappa, &cfg, &one, &g).unwrap();
            assert_eq!(prod, g);
            let prod = star_poly(family, &u, &kappa, &cfg, &g, &one).unwrap();
            assert_eq!(prod, g);
        }

        // t^0 part of the symbolic product is the pointwise product
        let ctx = GeneratorContext::standard();
        let f_inv = twists::fgz_inv(&ctx, &UMode::Symbolic, 4);
        let sym = star_poly_symbolic_t(&f_inv, &cfg, &g, &g).unwrap();
        assert_eq!(sym.truncate_t(0), g.mul_ref(&g));
    }

    #[test]
    fn x0_star_x0_matches_brute_force() {
        // n=1, v=(1), u=0, kappa=1: the twist terminates at order 2 on
        // degree-1 inputs; brute-force oracle gives x^2 + i x.
        let cfg = cfg1();
        let x = PolyFunction::coordinate(1, 0).unwrap();
        let got = star_poly(TwistFamily::Gz, &rat(0, 1), &rat(1, 1), &cfg, &x, &x).unwrap();
        let expect = x
            .mul_ref(&x)
            .add_ref(&x.scale(&scalar::i()));
        assert_eq!(got, expect);
    }

    #[test]
    fn star_of_coordinate_reproduces_xhat_action() {
        // x_mu * g = xhat_mu |> g with everything symbolic.
        let cfg = cfg2();
        let ctx = GeneratorContext::standard();
        let f_inv = twists::fgz_inv(&ctx, &UMode::Symbolic, 5);
        let g = {
            let x0 = PolyFunction::coordinate(2, 0).unwrap();
            let x1 = PolyFunction::coordinate(2, 1).unwrap();
            x0.mul_ref(&x0).add_ref(&x0.mul_ref(&x1).scale(&scalar::int(-2)))
        };
        for mu in 0..2 {
            let xmu = PolyFunction::coordinate(2, mu).unwrap();
            let lhs = star_poly_symbolic_t(&f_inv, &cfg, &xmu, &g).unwrap();
            let xh = crate::weylreal::xhat(&cfg, mu, &UMode::Symbolic).unwrap();
            let rhs = crate::weylreal::act_weyl(&xh, &g).unwrap();
            assert_eq!(lhs, rhs, "mismatch at mu={mu}");
        }
    }

    #[test]
    fn jets_are_consistent() {
        let report = check_star_jets(&rat(1, 2), &cfg2(), 2, 2, 3, 7).unwrap();
        assert!(report.pass, "{:?}", report.residual_terms);
    }

    #[test]
    fn jets_reject_a_corrupted_family() {
        let ctx = GeneratorContext::standard();
        let u = rat(1, 2);
        let gz = twists::fgz_inv(&ctx, &UMode::Rational(u.clone()), 4);
        let bad = crate::hopfcheck::fixtures::corrupted_fru_inv(
            &ctx,
            &UMode::Rational(u.clone()),
            4,
        )
        .unwrap();
        let report = check_star_jets_with(&gz, &bad, &u, &cfg2(), 2, 2, 2, 0).unwrap();
        assert!(!report.pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn star_poly_is_associative(
            fe in proptest::collection::vec(((0u16..=2, 0u16..=1), -2i64..=2), 0..3),
            ge in proptest::collection::vec(((0u16..=1, 0u16..=2), -2i64..=2), 0..3),
            he in proptest::collection::vec(((0u16..=2, 0u16..=2), -2i64..=2), 0..3),
        ) {
            let build = |terms: &[((u16, u16), i64)]| {
                let mut f = PolyFunction::zero(2);
                for ((e0, e1), c) in terms {
                    f = f.add_ref(&PolyFunction::monomial(2, vec![*e0, *e1], scalar::int(*c)));
                }
                f
            };
            let f = build(&fe);
            let g = build(&ge);
            let h = build(&he);
            let cfg = cfg2();
            let u = rat(1, 2);
            let kappa = rat(1, 1);
            let fam = TwistFamily::Gz;
            let left = star_poly(fam, &u, &kappa, &cfg,
                &star_poly(fam, &u, &kappa, &cfg, &f, &g).unwrap(), &h).unwrap();
            let right = star_poly(fam, &u, &kappa, &cfg, &f,
                &star_poly(fam, &u, &kappa, &cfg, &g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
