//! Exact prover for the binomial-coefficient identity that underlies the
//! cocycle condition, together with its reduction chain: the `C = 0`
//! special case, the product-swap identity, the two Vandermonde expansions,
//! and the termwise factor comparison.
//!
//! Every instance is proved as an exact polynomial identity in commuting
//! variables (per integer parameter tuple); a seeded integer-substitution
//! prefilter fails fast before the full expansion runs.

use crate::exactmath::{GaussianRational, Poly, VarContext};
use crate::report::{params, Report};
use num_bigint::BigInt;
use num_integer::binomial as int_binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::OnceLock;
use std::time::Instant;

fn xyz_ctx() -> &'static VarContext {
    static CTX: OnceLock<VarContext> = OnceLock::new();
    CTX.get_or_init(|| VarContext::new(["x", "y", "z"]))
}

fn w_ctx() -> &'static VarContext {
    static CTX: OnceLock<VarContext> = OnceLock::new();
    CTX.get_or_init(|| VarContext::new(["w"]))
}

fn var(ctx: &VarContext, name: &str) -> Poly {
    Poly::var(ctx, name).expect("variable in context")
}

/// Integer binomial with the usual vanishing conventions.
fn ibinom(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    int_binomial(BigInt::from(a), BigInt::from(b))
}

/// Generalized binomial of a shifted polynomial argument `base + shift`.
fn binom_shifted(base: &Poly, shift: i64, n: i64) -> Poly {
    assert!(n >= 0);
    let ctx = base.ctx().clone();
    let arg = base + &Poly::int(&ctx, shift);
    Poly::binom(&arg, n as u32)
}

/// `binom(q, n)` for an exact rational argument.
fn rational_binom(q: &BigRational, n: i64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..n {
        acc *= q - BigRational::from_integer(BigInt::from(j));
        acc /= BigRational::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// One parameter instance of the main identity, as (lhs, rhs) polynomial
/// builders plus matching numeric evaluators for the prefilter.
struct LemmaInstance {
    k: i64,
    l: i64,
    a: i64,
    c: i64,
}

impl LemmaInstance {
    fn lhs_poly(&self) -> Poly {
        let ctx = xyz_ctx();
        let (x, y, z) = (var(ctx, "x"), var(ctx, "y"), var(ctx, "z"));
        let (k, l, a, c) = (self.k, self.l, self.a, self.c);
        let mut sum = Poly::zero(ctx);
        for k1 in (k - a)..=k {
            let coeff = ibinom(k1, k - a);
            if coeff.is_zero() {
                continue;
            }
            let xy = &x + &y;
            let term = &(&binom_shifted(&z, 0, k1) * &binom_shifted(&xy, -k - l + k1 + c, c))
                * &binom_shifted(&y, 0, k - k1);
            sum = &sum + &term.scale(&GaussianRational::from_bigint(coeff));
        }
        &binom_shifted(&x, 0, l - c) * &sum
    }

    fn rhs_poly(&self) -> Poly {
        let ctx = xyz_ctx();
        let (x, y, z) = (var(ctx, "x"), var(ctx, "y"), var(ctx, "z"));
        let (k, l, a, c) = (self.k, self.l, self.a, self.c);
        let mut sum = Poly::zero(ctx);
        for l1 in (l - c)..=l {
            let coeff = ibinom(l1, l - c);
            if coeff.is_zero() {
                continue;
            }
            let yz = &y + &z;
            let term = &(&binom_shifted(&x, 0, l1) * &binom_shifted(&yz, -k - l + l1 + a, a))
                * &binom_shifted(&y, 0, l - l1);
            sum = &sum + &term.scale(&GaussianRational::from_bigint(coeff));
        }
        &binom_shifted(&z, 0, k - a) * &sum
    }

    fn lhs_value(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let (k, l, a, c) = (self.k, self.l, self.a, self.c);
        let mut sum = BigRational::zero();
        for k1 in (k - a)..=k {
            let coeff = ibinom(k1, k - a);
            if coeff.is_zero() {
                continue;
            }
            let arg = x + y + BigRational::from_integer(BigInt::from(-k - l + k1 + c));
            sum += BigRational::from_integer(coeff)
                * rational_binom(z, k1)
                * rational_binom(&arg, c)
                * rational_binom(y, k - k1);
        }
        rational_binom(x, l - c) * sum
    }

    fn rhs_value(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let (k, l, a, c) = (self.k, self.l, self.a, self.c);
        let mut sum = BigRational::zero();
        for l1 in (l - c)..=l {
            let coeff = ibinom(l1, l - c);
            if coeff.is_zero() {
                continue;
            }
            let arg = y + z + BigRational::from_integer(BigInt::from(-k - l + l1 + a));
            sum += BigRational::from_integer(coeff)
                * rational_binom(x, l1)
                * rational_binom(&arg, a)
                * rational_binom(y, l - l1);
        }
        rational_binom(z, k - a) * sum
    }

    /// Seeded integer points from the prefilter cube `{-3..7}^3`.
    fn prefilter(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(
            (self.k as u64) << 24 | (self.l as u64) << 16 | (self.a as u64) << 8 | self.c as u64,
        );
        for _ in 0..6 {
            let pt: Vec<BigRational> = (0..3)
                .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-3i64..=7))))
                .collect();
            if self.lhs_value(&pt[0], &pt[1], &pt[2]) != self.rhs_value(&pt[0], &pt[1], &pt[2]) {
                return false;
            }
        }
        true
    }
}

/// The main identity for every `k, l <= max_kl`, `A <= k`, `C <= l`.
pub fn check_lemma(max_kl: i64) -> Report {
    let start = Instant::now();
    let mut tuples = Vec::new();
    for k in 0..=max_kl {
        for l in 0..=max_kl {
            for a in 0..=k {
                for c in 0..=l {
                    tuples.push(LemmaInstance { k, l, a, c });
                }
            }
        }
    }
    let total = tuples.len();
    let mut failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|inst| {
            let label = format!("(k={}, l={}, A={}, C={})", inst.k, inst.l, inst.a, inst.c);
            if !inst.prefilter() {
                return Some(format!("{label}: integer prefilter mismatch"));
            }
            let residual = &inst.lhs_poly() - &inst.rhs_poly();
            if residual.is_zero() {
                None
            } else {
                Some(format!("{label}: residual {residual}"))
            }
        })
        .collect();
    failures.sort();
    let mut p = params([("max_kl", max_kl.to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma", p, failures, start)
}

/// The `C = 0` reduction:
/// `sum_{k1} C(k1, k-A) binom(y, k-k1) binom(z, k1) = binom(z, k-A) binom(y+z-k+A, A)`.
pub fn check_reduced_c0(max_k: i64) -> Report {
    let start = Instant::now();
    let ctx = xyz_ctx();
    let (y, z) = (var(ctx, "y"), var(ctx, "z"));
    let mut failures = Vec::new();
    let mut total = 0usize;
    for k in 0..=max_k {
        for a in 0..=k {
            total += 1;
            let mut lhs = Poly::zero(ctx);
            for k1 in (k - a)..=k {
                let coeff = ibinom(k1, k - a);
                if coeff.is_zero() {
                    continue;
                }
                let term = &binom_shifted(&y, 0, k - k1) * &binom_shifted(&z, 0, k1);
                lhs = &lhs + &term.scale(&GaussianRational::from_bigint(coeff));
            }
            let yz = &y + &z;
            let rhs = &binom_shifted(&z, 0, k - a) * &binom_shifted(&yz, -k + a, a);
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                failures.push(format!("(k={k}, A={a}): residual {residual}"));
            }
        }
    }
    let mut p = params([("max_k", max_k.to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma-c0", p, failures, start)
}

/// The product-swap identity `C(r,s) binom(w,r) = binom(w,s) binom(w-s, r-s)`
/// for all `0 <= s <= r <= max_r`.
pub fn check_simple_identity(max_r: i64) -> Report {
    let start = Instant::now();
    let ctx = w_ctx();
    let w = var(ctx, "w");
    let mut failures = Vec::new();
    let mut total = 0usize;
    for r in 0..=max_r {
        for s in 0..=r {
            total += 1;
            let lhs = binom_shifted(&w, 0, r)
                .scale(&GaussianRational::from_bigint(ibinom(r, s)));
            let rhs = &binom_shifted(&w, 0, s) * &binom_shifted(&w, -s, r - s);
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                failures.push(format!("(r={r}, s={s}): residual {residual}"));
            }
        }
    }
    let mut p = params([("max_r", max_r.to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma-swap", p, failures, start)
}

/// The two Vandermonde-type expansions used inside the proof:
/// `binom(x+y-l+i-A+C, C) = sum_j binom(x-l+C, j) binom(y+i-A, C-j)` and
/// `binom(y+z-k+j-C+A, A) = sum_i binom(z-k+A, i) binom(y+j-C, A-i)`.
pub fn check_vandermonde_steps(max_param: i64) -> Report {
    let start = Instant::now();
    let ctx = xyz_ctx();
    let (x, y, z) = (var(ctx, "x"), var(ctx, "y"), var(ctx, "z"));
    let mut failures = Vec::new();
    let mut total = 0usize;
    for l in 0..=max_param {
        for a in 0..=max_param {
            for i in 0..=a {
                for c in 0..=max_param {
                    total += 1;
                    let xy = &x + &y;
                    let lhs = binom_shifted(&xy, -l + i - a + c, c);
                    let mut rhs = Poly::zero(ctx);
                    for j in 0..=c {
                        rhs = &rhs
                            + &(&binom_shifted(&x, -l + c, j) * &binom_shifted(&y, i - a, c - j));
                    }
                    let residual = &lhs - &rhs;
                    if !residual.is_zero() {
                        failures.push(format!(
                            "first expansion (l={l}, A={a}, i={i}, C={c}): residual {residual}"
                        ));
                    }
                }
            }
        }
    }
    for k in 0..=max_param {
        for c in 0..=max_param {
            for j in 0..=c {
                for a in 0..=max_param {
                    total += 1;
                    let yz = &y + &z;
                    let lhs = binom_shifted(&yz, -k + j - c + a, a);
                    let mut rhs = Poly::zero(ctx);
                    for i in 0..=a {
                        rhs = &rhs
                            + &(&binom_shifted(&z, -k + a, i) * &binom_shifted(&y, j - c, a - i));
                    }
                    let residual = &lhs - &rhs;
                    if !residual.is_zero() {
                        failures.push(format!(
                            "second expansion (k={k}, C={c}, j={j}, A={a}): residual {residual}"
                        ));
                    }
                }
            }
        }
    }
    let mut p = params([("max_param", max_param.to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma-vandermonde", p, failures, start)
}

/// The final termwise comparison:
/// `binom(y+i-A, C-j) binom(y, A-i) = binom(y+j-C, A-i) binom(y, C-j)`.
pub fn check_termwise_y_factor(max_param: i64) -> Report {
    let start = Instant::now();
    let ctx = xyz_ctx();
    let y = var(ctx, "y");
    let mut failures = Vec::new();
    let mut total = 0usize;
    for a in 0..=max_param {
        for i in 0..=a {
            for c in 0..=max_param {
                for j in 0..=c {
                    total += 1;
                    let lhs = &binom_shifted(&y, i - a, c - j) * &binom_shifted(&y, 0, a - i);
                    let rhs = &binom_shifted(&y, j - c, a - i) * &binom_shifted(&y, 0, c - j);
                    let residual = &lhs - &rhs;
                    if !residual.is_zero() {
                        failures.push(format!(
                            "(A={a}, i={i}, C={c}, j={j}): residual {residual}"
                        ));
                    }
                }
            }
        }
    }
    let mut p = params([("max_param", max_param.to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma-termwise", p, failures, start)
}

/// Negative control: the main identity with a deliberately shifted binomial
/// argument on the left-hand side. Fails for tuples with `C >= 1`.
pub fn check_lemma_corrupted(max_kl: i64) -> Report {
    let start = Instant::now();
    let ctx = xyz_ctx();
    let mut failures = Vec::new();
    let mut total = 0usize;
    for k in 0..=max_kl {
        for l in 0..=max_kl {
            for a in 0..=k {
                for c in 0..=l {
                    total += 1;
                    let inst = LemmaInstance { k, l, a, c };
                    // corrupt: shift the x+y binomial argument by +1
                    let corrupted_lhs = {
                        let (x, y, z) = (var(ctx, "x"), var(ctx, "y"), var(ctx, "z"));
                        let mut sum = Poly::zero(ctx);
                        for k1 in (k - a)..=k {
                            let coeff = ibinom(k1, k - a);
                            if coeff.is_zero() {
                                continue;
                            }
                            let xy = &x + &y;
                            let term = &(&binom_shifted(&z, 0, k1)
                                * &binom_shifted(&xy, -k - l + k1 + c + 1, c))
                                * &binom_shifted(&y, 0, k - k1);
                            sum = &sum + &term.scale(&GaussianRational::from_bigint(coeff));
                        }
                        &binom_shifted(&x, 0, l - c) * &sum
                    };
                    let residual = &corrupted_lhs - &inst.rhs_poly();
                    if !residual.is_zero() {
                        failures.push(format!("(k={k}, l={l}, A={a}, C={c})"));
                    }
                }
            }
        }
    }
    let mut p = params([("max_kl", max_kl.to_string()), ("corrupted", "true".to_string())]);
    p.insert("tuples_checked".to_string(), total.to_string());
    Report::from_failures("lemma", p, failures, start)
}

/// Numeric spot evaluation of both sides, used by tests as an oracle.
pub fn lemma_sides_at(
    k: i64,
    l: i64,
    a: i64,
    c: i64,
    point: (i64, i64, i64),
) -> (BigRational, BigRational) {
    let inst = LemmaInstance { k, l, a, c };
    let (x, y, z) = (
        BigRational::from_integer(point.0.into()),
        BigRational::from_integer(point.1.into()),
        BigRational::from_integer(point.2.into()),
    );
    (inst.lhs_value(&x, &y, &z), inst.rhs_value(&x, &y, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn trivial_parameter_corners() {
        // A = C = 0: both sides reduce to binom(x,l) binom(z,k).
        let inst = LemmaInstance { k: 3, l: 2, a: 0, c: 0 };
        let ctx = xyz_ctx();
        let expect = &binom_shifted(&var(ctx, "x"), 0, 2) * &binom_shifted(&var(ctx, "z"), 0, 3);
        assert_eq!(inst.lhs_poly(), expect);
        assert_eq!(inst.rhs_poly(), expect);
    }

    #[test]
    fn unit_cube_case_expands_by_hand() {
        // k = l = A = C = 1: both sides equal xy + y^2 - y + xz + yz.
        let inst = LemmaInstance { k: 1, l: 1, a: 1, c: 1 };
        let ctx = xyz_ctx();
        let (x, y, z) = (var(ctx, "x"), var(ctx, "y"), var(ctx, "z"));
        let expect = &(&(&(&(&x * &y) + &(&y * &y)) - &y) + &(&x * &z)) + &(&y * &z);
        assert_eq!(inst.lhs_poly(), expect);
        assert_eq!(inst.rhs_poly(), expect);
    }

    #[test]
    fn lemma_sweep_small() {
        let report = check_lemma(3);
        assert!(report.pass, "{:?}", report.residual_terms);
        assert_eq!(report.params["tuples_checked"], "100");
    }

    #[test]
    fn corrupted_lemma_fails() {
        let report = check_lemma_corrupted(2);
        assert!(!report.pass);
    }

    #[test]
    fn reduced_c0_cases() {
        // k = 1, A = 1: y + z on both sides.
        let report = check_reduced_c0(4);
        assert!(report.pass, "{:?}", report.residual_terms);
    }

    #[test]
    fn simple_identity_cases() {
        // r = 2, s = 1: 2 binom(w,2) = w(w-1) = binom(w,1) binom(w-1,1).
        let ctx = w_ctx();
        let w = var(ctx, "w");
        let lhs = binom_shifted(&w, 0, 2).scale(&GaussianRational::from_int(2));
        let rhs = &w * &(&w - &Poly::one(ctx));
        assert_eq!(lhs, rhs);
        let report = check_simple_identity(5);
        assert!(report.pass, "{:?}", report.residual_terms);
    }

    #[test]
    fn vandermonde_and_termwise() {
        let report = check_vandermonde_steps(3);
        assert!(report.pass, "{:?}", report.residual_terms);
        let report = check_termwise_y_factor(3);
        assert!(report.pass, "{:?}", report.residual_terms);
    }

    #[test]
    fn numeric_and_polynomial_routes_agree() {
        // evaluate the polynomial residual at integer points and compare with
        // the direct numeric evaluation
        let inst = LemmaInstance { k: 2, l: 3, a: 1, c: 2 };
        let lhs = inst.lhs_poly();
        let ctx = xyz_ctx();
        for (px, py, pz) in [(0i64, 0, 0), (1, 2, 3), (-2, 5, 7), (4, -1, 3)] {
            let assignment: BTreeMap<String, GaussianRational> = [
                ("x".to_string(), GaussianRational::from_int(px)),
                ("y".to_string(), GaussianRational::from_int(py)),
                ("z".to_string(), GaussianRational::from_int(pz)),
            ]
            .into();
            let via_poly = lhs.eval(&assignment).unwrap();
            let (via_value, _) = lemma_sides_at(2, 3, 1, 2, (px, py, pz));
            assert_eq!(via_poly, GaussianRational::from_rational(via_value));
            let _ = ctx;
        }
    }
}
