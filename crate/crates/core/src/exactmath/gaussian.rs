//! Exact Gaussian rationals `re + im*i` over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Q(i): `re + im*i`, both parts arbitrary-precision rationals
/// kept in canonical reduced form. Equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the square of the absolute value.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl std::str::FromStr for GaussianRational {
    type Err = String;

    /// Parses the same forms [`Display`] produces: `3`, `-3/2`, `i`, `-i`,
    /// `3/2*i`, `1/2+3*i`, `1/2-3/4*i`. No floating point.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty value".to_string());
        }
        let parse_real = |txt: &str| -> std::result::Result<BigRational, String> {
            txt.parse::<BigRational>()
                .map_err(|_| format!("invalid exact rational `{txt}`"))
        };
        let parse_imag = |txt: &str| -> std::result::Result<BigRational, String> {
            match txt {
                "i" => Ok(BigRational::one()),
                "-i" => Ok(-BigRational::one()),
                _ => {
                    let body = txt
                        .strip_suffix("*i")
                        .or_else(|| txt.strip_suffix("i"))
                        .ok_or_else(|| format!("invalid imaginary part `{txt}`"))?;
                    parse_real(body)
                }
            }
        };
        if !s.contains('i') {
            return Ok(Self::from_rational(parse_real(s)?));
        }
        // split at the sign separating real and imaginary parts, if any
        for (idx, ch) in s.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !s[..idx].ends_with(['+', '-', '*', '/']) {
                let (re, im) = s.split_at(idx);
                if im[1..].contains('i') {
                    let re = parse_real(re)?;
                    let im_mag = parse_imag(im[1..].trim())?;
                    let im = if ch == '-' { -im_mag } else { im_mag };
                    return Ok(Self::new(re, im));
                }
            }
        }
        Ok(Self::new(BigRational::zero(), parse_imag(s)?))
    }
}

fn fmt_imag(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else {
        format!("{im}*i")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}", fmt_imag(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}", self.re, fmt_imag(&-self.im.clone()))
        } else {
            write!(f, "{}+{}", self.re, fmt_imag(&self.im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
        );
        let inv = z.inverse().unwrap();
        assert!((&z * &inv).is_one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn parse_roundtrips_display() {
        for s in ["0", "3", "-3/2", "i", "-i", "3/2*i", "-5*i", "1/2+3*i", "1/2-3/4*i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s, "roundtrip failed for {s}");
        }
        assert!("1.5".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        assert_eq!(z.to_string(), "1/2-3/4*i");
    }
}
