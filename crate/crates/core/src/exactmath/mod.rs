//! Exact arithmetic kernel: Gaussian rationals and sparse multivariate
//! polynomials. Everything downstream stores its coefficients here, so all
//! verification residuals are exact — there is no floating-point mode.

mod gaussian;
mod poly;

pub use gaussian::GaussianRational;
pub use poly::{Poly, PolyOp, VarContext};

use std::sync::OnceLock;

/// Coefficient type used throughout the series and operator modules:
/// a polynomial in the gauge parameter `u` and the deformation scale `t`
/// (`t` plays the role of `1/kappa`).
pub type Scalar = Poly;

/// The shared `(u, t)` variable context for [`Scalar`] values.
pub fn scalar_ctx() -> &'static VarContext {
    static CTX: OnceLock<VarContext> = OnceLock::new();
    CTX.get_or_init(|| VarContext::new(["u", "t"]))
}

/// Convenience constructors for [`Scalar`] values in the `(u, t)` context.
pub mod scalar {
    use super::*;

    pub fn zero() -> Scalar {
        Poly::zero(scalar_ctx())
    }

    pub fn one() -> Scalar {
        Poly::one(scalar_ctx())
    }

    pub fn int(n: i64) -> Scalar {
        Poly::int(scalar_ctx(), n)
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Poly::ratio(scalar_ctx(), num, den)
    }

    pub fn gauss(c: GaussianRational) -> Scalar {
        Poly::constant(scalar_ctx(), c)
    }

    pub fn i() -> Scalar {
        gauss(GaussianRational::i())
    }

    pub fn u() -> Scalar {
        Poly::var(scalar_ctx(), "u").expect("u in scalar context")
    }

    pub fn t() -> Scalar {
        Poly::var(scalar_ctx(), "t").expect("t in scalar context")
    }

    pub fn t_pow(k: u32) -> Scalar {
        t().pow(k)
    }

    /// `u - 1`, the left-leg weight of the interpolating twist.
    pub fn u_minus_one() -> Scalar {
        &u() - &one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn small_gauss() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(rn, rd, in_, id)| {
            GaussianRational::new(
                num_rational::BigRational::new(rn.into(), rd.into()),
                num_rational::BigRational::new(in_.into(), id.into()),
            )
        })
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..=3, 3),
                small_gauss(),
            ),
            0..6,
        )
        .prop_map(|terms| {
            let ctx = VarContext::new(["x", "y", "z"]);
            let mut p = Poly::zero(&ctx);
            for (exps, c) in terms {
                let m = Poly::constant(&ctx, c);
                let mut mono = Poly::one(&ctx);
                for (i, &e) in exps.iter().enumerate() {
                    let v = Poly::var(&ctx, ctx.name(i)).unwrap();
                    mono = &mono * &v.pow(e);
                }
                p = &p + &(&m * &mono);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn eval_is_ring_homomorphism(a in small_poly(), b in small_poly(),
                                     x in small_gauss(), y in small_gauss(), z in small_gauss()) {
            let assignment: BTreeMap<String, GaussianRational> =
                [("x".to_string(), x), ("y".to_string(), y), ("z".to_string(), z)].into();
            let lhs = (&a * &b).eval(&assignment).unwrap();
            let rhs = &a.eval(&assignment).unwrap() * &b.eval(&assignment).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&a + &b).eval(&assignment).unwrap();
            let rhs = &a.eval(&assignment).unwrap() + &b.eval(&assignment).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn binom_times_factorial_is_falling_factorial(q in small_poly(), n in 0u32..=12) {
            // Independent oracle: expand q(q-1)...(q-n+1) by repeated products.
            let ctx = q.ctx().clone();
            let mut falling = Poly::one(&ctx);
            for j in 0..n {
                falling = &falling * &(&q - &Poly::int(&ctx, j as i64));
            }
            let mut fact = GaussianRational::one();
            for j in 1..=n {
                fact = &fact * &GaussianRational::from_int(j as i64);
            }
            prop_assert_eq!(Poly::binom(&q, n).scale(&fact), falling);
        }
    }
}
