//! Sparse multivariate polynomials over Gaussian rationals.
//!
//! Variable contexts are explicit: two polynomials combine only when they
//! were built over the same ordered variable list. No zero coefficients are
//! ever stored, so equality of term maps is exact polynomial equality.

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// An ordered list of named formal symbols shared by a family of polynomials.
#[derive(Clone, Debug, Eq)]
pub struct VarContext(Arc<Vec<String>>);

impl VarContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name `{n}` in context"
            );
        }
        VarContext(Arc::new(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.0.join(", ")
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Arithmetic selector for [`Poly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A sparse multivariate polynomial with [`GaussianRational`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ctx: VarContext,
    terms: BTreeMap<Vec<u32>, GaussianRational>,
}

impl Poly {
    pub fn zero(ctx: &VarContext) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &VarContext, c: GaussianRational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(vec![0; ctx.len()], c);
        }
        p
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, GaussianRational::one())
    }

    pub fn int(ctx: &VarContext, n: i64) -> Self {
        Self::constant(ctx, GaussianRational::from_int(n))
    }

    pub fn ratio(ctx: &VarContext, num: i64, den: i64) -> Self {
        Self::constant(ctx, GaussianRational::from_ratio(num, den))
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; ctx.len()];
        exps[idx] = 1;
        let mut p = Self::zero(ctx);
        p.terms.insert(exps, GaussianRational::one());
        Ok(p)
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// The value as a constant, if no variable occurs.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                self.ctx.describe(),
                other.ctx.describe(),
            ))
        }
    }

    fn insert_term(&mut self, exps: Vec<u32>, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Exact `add`/`sub`/`mul` with an explicit context check.
    pub fn arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
        a.check_ctx(b)?;
        Ok(match op {
            PolyOp::Add => a.add_ref(b),
            PolyOp::Sub => a.sub_ref(b),
            PolyOp::Mul => a.mul_ref(b),
        })
    }

    fn add_ref(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c);
        }
        out
    }

    fn mul_ref(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.insert_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Generalized binomial coefficient `binom(q, n) = q(q-1)...(q-n+1)/n!`
    /// for a polynomial argument; `n = 0` gives `1`.
    pub fn binom(q: &Poly, n: u32) -> Poly {
        let mut acc = Poly::one(&q.ctx);
        let mut factorial = BigRational::one();
        for j in 0..n {
            acc = acc.mul_ref(&q.sub_ref(&Poly::int(&q.ctx, j as i64)));
            factorial *= BigRational::from_integer(BigInt::from(j + 1));
        }
        acc.scale(&GaussianRational::from_rational(factorial.recip()))
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, GaussianRational>) -> Result<GaussianRational> {
        let values: Vec<&GaussianRational> = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                assignment
                    .get(n)
                    .ok_or_else(|| Error::MissingAssignment(n.clone()))
            })
            .collect::<Result<_>>()?;
        let mut total = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &values[i].pow(exp);
                }
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// Partial evaluation: substitute one variable by an exact constant.
    pub fn substitute(&self, var: &str, value: &GaussianRational) -> Result<Poly> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            let k = exps[idx];
            exps[idx] = 0;
            out.insert_term(exps, c * &value.pow(k));
        }
        Ok(out)
    }

    /// Substitute `var -> c * var` (rescaling of one variable).
    pub fn scale_var(&self, var: &str, c: &GaussianRational) -> Result<Poly> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly::zero(&self.ctx);
        for (e, v) in &self.terms {
            out.insert_term(e.clone(), v * &c.pow(e[idx]));
        }
        Ok(out)
    }

    /// Formal partial derivative.
    pub fn diff(&self, var: &str) -> Result<Poly> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[idx] -= 1;
            out.insert_term(exps, c * &GaussianRational::from_int(e[idx] as i64));
        }
        Ok(out)
    }

    /// Highest exponent of `var`; 0 for the zero polynomial.
    pub fn deg_in(&self, var: &str) -> Result<u32> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    /// Lowest exponent of `var` over all stored terms; `None` for zero.
    pub fn min_deg_in(&self, var: &str) -> Result<Option<u32>> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.terms.keys().map(|e| e[idx]).min())
    }

    /// Drop every monomial whose exponent of `var` exceeds `max`.
    pub fn truncate_var(&self, var: &str, max: u32) -> Result<Poly> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[idx] <= max {
                out.insert_term(e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of `var^k`, as a polynomial with the `var` exponent zeroed.
    pub fn coeff_var(&self, var: &str, k: u32) -> Result<Poly> {
        let idx = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut exps = e.clone();
                exps[idx] = 0;
                out.insert_term(exps, c.clone());
            }
        }
        Ok(out)
    }

    /// Terms sorted for display: graded lexicographic, highest first.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(ea, _), (eb, _)| {
            let ta: u32 = ea.iter().sum();
            let tb: u32 = eb.iter().sum();
            (tb, *eb).cmp(&(ta, *ea))
        });
        v
    }

    fn fmt_mono(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 1 {
                parts.push(self.ctx.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.ctx.name(i), e));
            }
        }
        parts.join("*")
    }

    fn latex_mono(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 1 {
                parts.push(self.ctx.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{{{}}}", self.ctx.name(i), e));
            }
        }
        parts.join(" ")
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, coeff)) in self.sorted_terms().iter().enumerate() {
            let mono = self.latex_mono(exps);
            let (neg, body) = coeff_body(coeff, mono.is_empty(), true);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if body.is_empty() {
                out.push_str(&mono);
            } else if mono.is_empty() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{body} {mono}"));
            }
        }
        out
    }
}

/// Splits a coefficient into a display sign and magnitude body.
/// `body` is empty when the coefficient is exactly (+/-)1 and a monomial follows.
fn coeff_body(c: &GaussianRational, constant_term: bool, latex: bool) -> (bool, String) {
    use num_traits::{Signed, Zero};
    if c.is_real() {
        let neg = c.re().is_negative();
        let mag = if neg { -c.re().clone() } else { c.re().clone() };
        if mag.is_one() && !constant_term {
            return (neg, String::new());
        }
        if latex && !mag.denom().is_one() {
            return (neg, format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()));
        }
        return (neg, mag.to_string());
    }
    if c.re().is_zero() {
        let neg = c.im().is_negative();
        let mag = if neg { -c.im().clone() } else { c.im().clone() };
        if mag.is_one() {
            return (neg, "i".to_string());
        }
        if latex && !mag.denom().is_one() {
            return (
                neg,
                format!("\\frac{{{}}}{{{}}} i", mag.numer(), mag.denom()),
            );
        }
        return (neg, format!("{mag}*i"));
    }
    (false, format!("({c})"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.sorted_terms().iter().enumerate() {
            let mono = self.fmt_mono(exps);
            let (neg, body) = coeff_body(coeff, mono.is_empty(), false);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if body.is_empty() {
                write!(f, "{mono}")?;
            } else if mono.is_empty() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs).expect("polynomial context mismatch");
        self.add_ref(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs).expect("polynomial context mismatch");
        self.sub_ref(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs).expect("polynomial context mismatch");
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(&self.ctx).sub_ref(self)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VarContext {
        VarContext::new(["x", "y", "z"])
    }

    fn assign(pairs: &[(&str, GaussianRational)]) -> BTreeMap<String, GaussianRational> {
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn arith_basics() {
        let ctx = VarContext::new(["u", "t"]);
        let u = Poly::var(&ctx, "u").unwrap();
        let t = Poly::var(&ctx, "t").unwrap();
        let ut = Poly::arith(&u, &t, PolyOp::Mul).unwrap();
        assert_eq!(ut.to_string(), "u*t");

        let up1 = &u + &Poly::one(&ctx);
        assert!(Poly::arith(&up1, &up1, PolyOp::Sub).unwrap().is_zero());

        let ctx3 = xyz();
        let x = Poly::var(&ctx3, "x").unwrap();
        let y = Poly::var(&ctx3, "y").unwrap();
        let prod = &(&x + &y) * &(&x - &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Poly::one(&VarContext::new(["u", "t"]));
        let b = Poly::one(&xyz());
        assert!(matches!(
            Poly::arith(&a, &b, PolyOp::Add),
            Err(Error::ContextMismatch(_, _))
        ));
    }

    #[test]
    fn binom_small_cases() {
        let ctx = xyz();
        let x = Poly::var(&ctx, "x").unwrap();
        assert!(Poly::binom(&x, 0).is_one());
        // binom(x, 2) = (x^2 - x)/2
        let expect = (&(&x * &x) - &x).scale(&GaussianRational::from_ratio(1, 2));
        assert_eq!(Poly::binom(&x, 2), expect);
        // binom(5, 2) = 10
        let five = Poly::int(&ctx, 5);
        assert_eq!(
            Poly::binom(&five, 2).constant_value().unwrap(),
            GaussianRational::from_int(10)
        );
    }

    #[test]
    fn eval_examples() {
        let ctx = VarContext::new(["u", "t"]);
        let u = Poly::var(&ctx, "u").unwrap();
        let t = Poly::var(&ctx, "t").unwrap();
        let ut = &u * &t;
        let v = ut
            .eval(&assign(&[
                ("u", GaussianRational::from_ratio(1, 2)),
                ("t", GaussianRational::from_int(1)),
            ]))
            .unwrap();
        assert_eq!(v, GaussianRational::from_ratio(1, 2));

        let ctx3 = xyz();
        let x = Poly::var(&ctx3, "x").unwrap();
        let y = Poly::var(&ctx3, "y").unwrap();
        let p = &(&x * &x) - &(&y * &y);
        let v = p
            .eval(&assign(&[
                ("x", GaussianRational::from_int(3)),
                ("y", GaussianRational::from_int(2)),
                ("z", GaussianRational::from_int(0)),
            ]))
            .unwrap();
        assert_eq!(v, GaussianRational::from_int(5));

        // eval(binom(x,2), x = -1) = (-1)(-2)/2 = 1
        let b = Poly::binom(&x, 2);
        let v = b
            .eval(&assign(&[
                ("x", GaussianRational::from_int(-1)),
                ("y", GaussianRational::zero()),
                ("z", GaussianRational::zero()),
            ]))
            .unwrap();
        assert_eq!(v, GaussianRational::from_int(1));

        assert!(matches!(
            b.eval(&assign(&[("x", GaussianRational::zero())])),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn diff_examples() {
        let ctx = VarContext::new(["u", "t"]);
        let u = Poly::var(&ctx, "u").unwrap();
        let t = Poly::var(&ctx, "t").unwrap();
        // d/du (u^2 t) = 2 u t
        let p = &(&u * &u) * &t;
        assert_eq!(p.diff("u").unwrap(), (&u * &t).scale(&GaussianRational::from_int(2)));
        // d/du t = 0
        assert!(t.diff("u").unwrap().is_zero());
        // d/du u(u-1) = 2u - 1
        let q = &u * &(&u - &Poly::one(&ctx));
        let expect = &u.scale(&GaussianRational::from_int(2)) - &Poly::one(&ctx);
        assert_eq!(q.diff("u").unwrap(), expect);
    }

    #[test]
    fn display_is_graded_lex() {
        let ctx = VarContext::new(["u", "t"]);
        let u = Poly::var(&ctx, "u").unwrap();
        let t = Poly::var(&ctx, "t").unwrap();
        let p = &(&(&u * &u) + &(&u * &t)) + &(&t + &Poly::int(&ctx, 3));
        assert_eq!(p.to_string(), "u^2 + u*t + t + 3");
        let q = &Poly::zero(&ctx) - &u;
        assert_eq!(q.to_string(), "-u");
    }

    #[test]
    fn substitution_and_truncation() {
        let ctx = VarContext::new(["u", "t"]);
        let u = Poly::var(&ctx, "u").unwrap();
        let t = Poly::var(&ctx, "t").unwrap();
        let p = &(&u * &t) + &(&t * &t); // u t + t^2
        let at_u1 = p.substitute("u", &GaussianRational::from_int(1)).unwrap();
        assert_eq!(at_u1, &t + &(&t * &t));
        assert_eq!(p.truncate_var("t", 1).unwrap(), &u * &t);
        assert_eq!(p.coeff_var("t", 1).unwrap(), u);
        assert_eq!(p.coeff_var("t", 2).unwrap(), Poly::one(&ctx));
        assert_eq!(p.deg_in("t").unwrap(), 2);
        assert_eq!(p.min_deg_in("t").unwrap(), Some(1));
    }
}
