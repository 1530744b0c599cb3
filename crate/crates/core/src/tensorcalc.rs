//! Truncated formal-series calculus on tensor powers of the enveloping
//! algebra.
//!
//! A [`TensorElem`] is a finite sum of scalar-weighted tuples of PBW
//! monomials. The truncation order `N` bounds the `t`-degree of every stored
//! coefficient and is a property of the value: combining elements of
//! different orders is an error, never a silent coercion.

use crate::error::{Error, Result};
use crate::exactmath::{scalar, GaussianRational, Scalar};
use crate::pbw::{self, AlgElem, GeneratorContext, PbwMono};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Maximum retained total degree in `t`.
pub type TruncationOrder = u32;

/// Structure map applied to a single tensor leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegMap {
    /// Undeformed coproduct; splits one leg in two (arity grows by one).
    Coproduct0,
    /// Counit; removes one leg (arity shrinks by one).
    Counit,
    /// Undeformed antipode; arity unchanged.
    Antipode0,
}

/// A truncated element of the `arity`-fold tensor power of the enveloping
/// algebra, with coefficients polynomial in `u` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem {
    arity: usize,
    order: TruncationOrder,
    ctx: GeneratorContext,
    terms: BTreeMap<Vec<PbwMono>, Scalar>,
}

impl TensorElem {
    pub fn zero(ctx: &GeneratorContext, arity: usize, order: TruncationOrder) -> Self {
        assert!((1..=3).contains(&arity), "arity {arity} out of range");
        TensorElem {
            arity,
            order,
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The identity `1 (x) ... (x) 1`.
    pub fn identity(ctx: &GeneratorContext, arity: usize, order: TruncationOrder) -> Self {
        let mut e = Self::zero(ctx, arity, order);
        e.insert_term(vec![PbwMono::identity(ctx); arity], scalar::one());
        e
    }

    pub fn from_terms(
        ctx: &GeneratorContext,
        arity: usize,
        order: TruncationOrder,
        terms: impl IntoIterator<Item = (Vec<PbwMono>, Scalar)>,
    ) -> Self {
        let mut e = Self::zero(ctx, arity, order);
        for (key, s) in terms {
            assert_eq!(key.len(), arity, "tensor key length != arity");
            e.insert_term(key, s);
        }
        e
    }

    /// A one-leg series wrapping an [`AlgElem`], truncated at `order`.
    pub fn from_algelem(a: &AlgElem, order: TruncationOrder) -> Self {
        let mut e = Self::zero(a.ctx(), 1, order);
        for (m, s) in a.terms() {
            e.insert_term(vec![m.clone()], s.clone());
        }
        e
    }

    /// The pure tensor `a (x) b`, truncated at `order`.
    pub fn tensor2(a: &AlgElem, b: &AlgElem, order: TruncationOrder) -> Result<Self> {
        if a.ctx() != b.ctx() {
            return Err(Error::GeneratorMismatch);
        }
        let mut e = Self::zero(a.ctx(), 2, order);
        for (ma, sa) in a.terms() {
            for (mb, sb) in b.terms() {
                e.insert_term(vec![ma.clone(), mb.clone()], sa * sb);
            }
        }
        Ok(e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> TruncationOrder {
        self.order
    }

    pub fn ctx(&self) -> &GeneratorContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMono>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(&self.ctx, self.arity, self.order)
    }

    /// View an arity-1 element as a plain algebra element.
    pub fn as_algelem(&self) -> Result<AlgElem> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch(self.arity, 1));
        }
        let mut out = AlgElem::zero(&self.ctx);
        for (key, s) in &self.terms {
            out = out.add_ref(&AlgElem::from_mono(&self.ctx, key[0].clone(), s.clone()));
        }
        Ok(out)
    }

    fn insert_term(&mut self, key: Vec<PbwMono>, s: Scalar) {
        let s = s.truncate_var("t", self.order).expect("t in scalar context");
        if s.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    fn check_compatible(&self, other: &TensorElem) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::GeneratorMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add_ref(&self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (k, s) in &rhs.terms {
            out.insert_term(k.clone(), s.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (k, s) in &rhs.terms {
            out.insert_term(k.clone(), -s);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TensorElem {
        let mut out = Self::zero(&self.ctx, self.arity, self.order);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.insert_term(k.clone(), v * s);
        }
        out
    }

    /// Legwise normal-ordered product; coefficient terms above the truncation
    /// order are discarded.
    pub fn tensor_mul(a: &TensorElem, b: &TensorElem) -> Result<TensorElem> {
        a.check_compatible(b)?;
        let mut out = Self::zero(&a.ctx, a.arity, a.order);
        for (ka, sa) in &a.terms {
            for (kb, sb) in &b.terms {
                let s = (sa * sb).truncate_var("t", a.order).expect("t in context");
                if s.is_zero() {
                    continue;
                }
                let leg_products: Vec<Vec<(PbwMono, BigInt)>> = ka
                    .iter()
                    .zip(kb)
                    .map(|(ma, mb)| pbw::mul_mono(ma, mb))
                    .collect();
                for (key, c) in combine_legs(&leg_products) {
                    out.insert_term(key, s.scale(&GaussianRational::from_bigint(c)));
                }
            }
        }
        Ok(out)
    }

    /// Apply a structure map to one leg.
    pub fn apply_leg(&self, leg: usize, map: LegMap) -> Result<TensorElem> {
        if leg >= self.arity {
            return Err(Error::LegOutOfRange {
                leg,
                arity: self.arity,
            });
        }
        match map {
            LegMap::Coproduct0 => {
                let new_arity = self.arity + 1;
                if new_arity > 3 {
                    return Err(Error::ArityRange(new_arity));
                }
                let mut out = Self::zero(&self.ctx, new_arity, self.order);
                for (key, s) in &self.terms {
                    for (l, r, c) in pbw::coproduct0_mono(&key[leg]) {
                        let mut k = Vec::with_capacity(new_arity);
                        k.extend_from_slice(&key[..leg]);
                        k.push(l);
                        k.push(r);
                        k.extend_from_slice(&key[leg + 1..]);
                        out.insert_term(k, s.scale(&GaussianRational::from_bigint(c)));
                    }
                }
                Ok(out)
            }
            LegMap::Counit => {
                if self.arity == 1 {
                    return Err(Error::ArityRange(0));
                }
                let mut out = Self::zero(&self.ctx, self.arity - 1, self.order);
                for (key, s) in &self.terms {
                    if !key[leg].is_identity() {
                        continue;
                    }
                    let mut k = key.clone();
                    k.remove(leg);
                    out.insert_term(k, s.clone());
                }
                Ok(out)
            }
            LegMap::Antipode0 => {
                let mut out = Self::zero(&self.ctx, self.arity, self.order);
                for (key, s) in &self.terms {
                    for (m, c) in pbw::antipode0_mono(&key[leg]) {
                        let mut k = key.clone();
                        k[leg] = m;
                        out.insert_term(k, s.scale(&GaussianRational::from_bigint(c)));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Truncated exponential `sum x^m / m!`. Requires every term of `x` to
    /// carry a strictly positive `t`-degree and a non-identity tensor key, so
    /// the sum provably terminates at `m = N` with constant term exactly 1.
    pub fn exp_series(x: &TensorElem) -> Result<TensorElem> {
        let id_key = vec![PbwMono::identity(&x.ctx); x.arity];
        for (key, s) in &x.terms {
            let min_t = s.min_deg_in("t").expect("t in context").unwrap_or(0);
            if min_t == 0 || *key == id_key {
                return Err(Error::ExpDegreeZero);
            }
        }
        let mut acc = Self::identity(&x.ctx, x.arity, x.order);
        let mut power = Self::identity(&x.ctx, x.arity, x.order);
        let mut factorial = BigRational::one();
        for m in 1..=x.order {
            power = Self::tensor_mul(&power, x)?;
            if power.is_zero() {
                break;
            }
            factorial *= BigRational::from_integer(BigInt::from(m));
            acc = acc.add_ref(&power.scale(&scalar::gauss(GaussianRational::from_rational(
                factorial.recip(),
            ))));
        }
        Ok(acc)
    }

    /// Geometric inverse of `1 + X` with `X` of strictly positive `t`-degree:
    /// `sum (-X)^m`, truncated. Two-sided inverse up to the truncation order.
    pub fn inverse_series(f: &TensorElem) -> Result<TensorElem> {
        let one = Self::identity(&f.ctx, f.arity, f.order);
        let x = f.sub_ref(&one);
        for s in x.terms.values() {
            if s.min_deg_in("t").expect("t in context").unwrap_or(0) == 0 {
                return Err(Error::ConstantTermNotOne);
            }
        }
        let minus_x = one.sub_ref(f);
        let mut acc = one.clone();
        let mut power = one;
        for _ in 1..=f.order {
            power = Self::tensor_mul(&power, &minus_x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add_ref(&power);
        }
        Ok(acc)
    }

    /// Exchange the two legs of an arity-2 element.
    pub fn flip(&self) -> Result<TensorElem> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch(self.arity, 2));
        }
        let mut out = Self::zero(&self.ctx, 2, self.order);
        for (key, s) in &self.terms {
            out.insert_term(vec![key[1].clone(), key[0].clone()], s.clone());
        }
        Ok(out)
    }

    /// Termwise formal derivative of the coefficients with respect to `u`.
    pub fn diff_u(&self) -> TensorElem {
        let mut out = Self::zero(&self.ctx, self.arity, self.order);
        for (key, s) in &self.terms {
            out.insert_term(key.clone(), s.diff("u").expect("u in context"));
        }
        out
    }

    /// Substitute a concrete rational for the gauge parameter `u`.
    pub fn substitute_u(&self, value: &BigRational) -> TensorElem {
        let c = GaussianRational::from_rational(value.clone());
        let mut out = Self::zero(&self.ctx, self.arity, self.order);
        for (key, s) in &self.terms {
            out.insert_term(key.clone(), s.substitute("u", &c).expect("u in context"));
        }
        out
    }

    /// Coefficient of `t^k`: the extracted terms with the `t`-exponent zeroed.
    pub fn coeff_t(&self, k: u32) -> TensorElem {
        let mut out = Self::zero(&self.ctx, self.arity, self.order);
        for (key, s) in &self.terms {
            out.insert_term(key.clone(), s.coeff_var("t", k).expect("t in context"));
        }
        out
    }

    /// Embed an arity-2 element into arity 3 by placing its legs at the given
    /// slots (ascending) and the identity in the remaining slot.
    pub fn embed_into_three(&self, slots: (usize, usize)) -> Result<TensorElem> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch(self.arity, 2));
        }
        assert!(slots.0 < slots.1 && slots.1 < 3, "slots must be ascending pairs in 0..3");
        let mut out = Self::zero(&self.ctx, 3, self.order);
        for (key, s) in &self.terms {
            let mut k = vec![PbwMono::identity(&self.ctx); 3];
            k[slots.0] = key[0].clone();
            k[slots.1] = key[1].clone();
            out.insert_term(k, s.clone());
        }
        Ok(out)
    }

    /// Multiply all legs together (left to right), producing a one-leg
    /// element: the multiplication map of the algebra.
    pub fn multiply_legs(&self) -> TensorElem {
        let mut out = Self::zero(&self.ctx, 1, self.order);
        for (key, s) in &self.terms {
            let mut partial: Vec<(PbwMono, BigInt)> =
                vec![(PbwMono::identity(&self.ctx), BigInt::one())];
            for leg in key {
                let mut next = Vec::new();
                for (m, c) in &partial {
                    for (m2, c2) in pbw::mul_mono(m, leg) {
                        next.push((m2, c * &c2));
                    }
                }
                partial = next;
            }
            for (m, c) in partial {
                out.insert_term(vec![m], s.scale(&GaussianRational::from_bigint(c)));
            }
        }
        out
    }

    pub fn latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (key, s) in &self.terms {
            let legs = key
                .iter()
                .map(|m| m.fmt_with(&self.ctx))
                .collect::<Vec<_>>()
                .join(" \\otimes ");
            if s.is_one() {
                parts.push(legs);
            } else {
                parts.push(format!("\\left({}\\right) {legs}", s.latex()));
            }
        }
        parts.join(" + ")
    }
}

/// Cartesian combination of per-leg expansion products.
fn combine_legs(leg_products: &[Vec<(PbwMono, BigInt)>]) -> Vec<(Vec<PbwMono>, BigInt)> {
    let mut acc: Vec<(Vec<PbwMono>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for lp in leg_products {
        let mut next = Vec::with_capacity(acc.len() * lp.len());
        for (key, c) in &acc {
            for (m, cm) in lp {
                let mut k = key.clone();
                k.push(m.clone());
                next.push((k, c * cm));
            }
        }
        acc = next;
    }
    acc
}

/// Undeformed coproduct of an algebra element as an arity-2 tensor series.
pub fn coproduct0(a: &AlgElem, order: TruncationOrder) -> TensorElem {
    let mut out = TensorElem::zero(a.ctx(), 2, order);
    for (m, s) in a.terms() {
        for (l, r, c) in pbw::coproduct0_mono(m) {
            out.insert_term(vec![l, r], s.scale(&GaussianRational::from_bigint(c)));
        }
    }
    out
}

/// The one-leg logarithm `ln(1 + sign * t P)` truncated at `order`:
/// `sum_{m=1..N} (-1)^(m+1) (sign t)^m P^m / m`.
pub fn log_onebody(ctx: &GeneratorContext, sign: i8, order: TruncationOrder) -> AlgElem {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let p = AlgElem::momentum(ctx, "P").expect("P generator");
    let mut out = AlgElem::zero(ctx);
    for m in 1..=order {
        let mut coeff = BigRational::new(BigInt::one(), BigInt::from(m));
        if m % 2 == 0 {
            coeff = -coeff;
        }
        if sign == -1 && m % 2 == 1 {
            coeff = -coeff;
        }
        let c = scalar::gauss(GaussianRational::from_rational(coeff));
        out = out.add_ref(&p.pow(m).scale(&(&c * &scalar::t_pow(m))));
    }
    out
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let legs = key
                .iter()
                .map(|m| m.fmt_with(&self.ctx))
                .collect::<Vec<_>>()
                .join(" ⊗ ");
            if s.is_one() {
                write!(f, "{legs}")?;
            } else {
                let rendered = s.to_string();
                if s.num_terms() > 1 {
                    write!(f, "({rendered})·{legs}")?;
                } else {
                    write!(f, "{rendered}·{legs}")?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        self.check_compatible(rhs).expect("incompatible tensor elements");
        self.add_ref(rhs)
    }
}

impl std::ops::Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        self.check_compatible(rhs).expect("incompatible tensor elements");
        self.sub_ref(rhs)
    }
}

impl std::ops::Mul for &TensorElem {
    type Output = TensorElem;
    fn mul(self, rhs: &TensorElem) -> TensorElem {
        TensorElem::tensor_mul(self, rhs).expect("incompatible tensor elements")
    }
}

impl std::ops::Neg for &TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        TensorElem::zero(&self.ctx, self.arity, self.order).sub_ref(self)
    }
}
