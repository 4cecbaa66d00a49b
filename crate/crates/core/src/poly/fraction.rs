use std::fmt;

use super::{gcd, PolyError, Polynomial};

/// A quotient of polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.arity());
        RationalFunction { num: p, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

/// Cancels `gcd(num, den)` and makes the denominator monic.
pub fn reduce_fraction(num: &Polynomial, den: &Polynomial) -> Result<RationalFunction, PolyError> {
    if den.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if num.arity() != den.arity() {
        return Err(PolyError::ArityMismatch {
            left: num.arity(),
            right: den.arity(),
        });
    }
    if num.is_zero() {
        return Ok(RationalFunction {
            num: Polynomial::zero(num.arity()),
            den: Polynomial::one(num.arity()),
        });
    }
    let g = gcd(num, den)?;
    let mut n = num.divide_exact(&g)?;
    let mut d = den.divide_exact(&g)?;
    let lc = d.leading_coefficient().unwrap().clone();
    n = n.scale(&lc.recip());
    d = d.scale(&lc.recip());
    Ok(RationalFunction { num: n, den: d })
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(2, 1);
        let r = reduce_fraction(&(&a.pow(2) * &b), &(&a * &b)).unwrap();
        assert_eq!(r.num(), &a);
        assert!(r.den().is_one());

        let r = reduce_fraction(&(&a.pow(2) - &b.pow(2)), &(&a - &b)).unwrap();
        assert_eq!(r.num(), &(&a + &b));

        // (x2 x1) / x1^2 -> x2 / x1
        let r = reduce_fraction(&(&b * &a), &a.pow(2)).unwrap();
        assert_eq!(r.num(), &b);
        assert_eq!(r.den(), &a);
        // cross-multiplication check
        assert_eq!(&(&b * &a) * r.den(), r.num() * &a.pow(2));
    }

    #[test]
    fn denominator_is_monic() {
        let a = Polynomial::var(1, 0);
        let r = reduce_fraction(&Polynomial::one(1), &a.scale(&crate::poly::scalar(-4))).unwrap();
        assert_eq!(r.den(), &a);
        assert_eq!(r.num().constant_value().unwrap(), crate::poly::ratio(-1, 4));
    }

    #[test]
    fn zero_denominator() {
        let a = Polynomial::var(1, 0);
        assert_eq!(
            reduce_fraction(&a, &Polynomial::zero(1)),
            Err(PolyError::DivisionByZero)
        );
    }
}
