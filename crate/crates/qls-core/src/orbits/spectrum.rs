//! Exact roots of characteristic polynomials.
//!
//! Polynomials are coefficient vectors, lowest degree first. Over the
//! rationals roots come from the rational root test; over the Gaussian
//! rationals candidates are located numerically and then confirmed by exact
//! evaluation, so a reported root is always an exact root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QlsError, Result};
use crate::scalar::{Field, Scalar};

pub type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

fn derivative(p: &[Scalar]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * &Scalar::from_int(k as i64)).collect()
}

/// Quotient and remainder of `a` by nonzero `b`.
fn divmod(a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let lead_inv = b.last().and_then(Scalar::inv).expect("nonzero divisor");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] -= &(&c * bk);
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (quot, rem)
}

fn monic(p: Poly) -> Poly {
    let p = trim(p);
    match p.last().and_then(Scalar::inv) {
        Some(inv) => p.iter().map(|c| c * &inv).collect(),
        None => p,
    }
}

fn gcd(a: &[Scalar], b: &[Scalar]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Removes every repeated factor.
fn square_free(p: &[Scalar]) -> Poly {
    let g = gcd(p, &derivative(p));
    monic(divmod(p, &g).0)
}

/// Integer-coefficient multiple of a rational polynomial: (real parts, imaginary parts).
fn integer_multiple(p: &[Scalar]) -> (Vec<BigInt>, Vec<BigInt>) {
    let lcm = p
        .iter()
        .flat_map(|c| [c.re().denom().clone(), c.im().denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scale = |r: &num_rational::BigRational| (r * num_rational::BigRational::from_integer(lcm.clone())).to_integer();
    (p.iter().map(|c| scale(c.re())).collect(), p.iter().map(|c| scale(c.im())).collect())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn rational_roots(p: &[Scalar]) -> Vec<Scalar> {
    let (re, im) = integer_multiple(p);
    if im.iter().any(|c| !c.is_zero()) {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut body = re;
    if body.first().is_some_and(Zero::is_zero) {
        roots.push(Scalar::zero());
        while body.first().is_some_and(Zero::is_zero) {
            body.remove(0);
        }
    }
    let (Some(a0), Some(an)) = (body.first().cloned(), body.last().cloned()) else {
        return roots;
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sign in [1, -1] {
                let r = num_rational::BigRational::new(&num * BigInt::from(sign), den.clone());
                let candidate = Scalar::real(r);
                if !roots.contains(&candidate) && eval(p, &candidate).is_zero() {
                    roots.push(candidate);
                }
            }
        }
    }
    roots
}

fn to_complex(s: &Scalar) -> Complex64 {
    let (re, im) = s.to_f64_pair();
    Complex64::new(re, im)
}

/// Numerical root approximations of a monic polynomial (Durand–Kerner iteration).
fn approximate_roots(p: &[Scalar]) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = p.iter().map(to_complex).collect();
    let deg = coeffs.len() - 1;
    let eval_c = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let bound = 1.0 + coeffs.iter().take(deg).map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound.min(4.0)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for k in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval_c(z[k]) / denom;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

fn gaussian_roots(p: &[Scalar]) -> Vec<Scalar> {
    let (re, im) = integer_multiple(p);
    let lead = Complex64::new(
        re.last().and_then(ToPrimitive::to_f64).unwrap_or(1.0),
        im.last().and_then(ToPrimitive::to_f64).unwrap_or(0.0),
    );
    let lead_scaled = {
        let (r, i) = (re.last().cloned().unwrap_or_default(), im.last().cloned().unwrap_or_default());
        Scalar::gaussian(r.into(), i.into())
    };
    let mut roots: Vec<Scalar> = Vec::new();
    for z in approximate_roots(p) {
        let w = z * lead;
        let rounded = Scalar::gaussian(BigInt::from(w.re.round() as i64).into(), BigInt::from(w.im.round() as i64).into());
        let Ok(candidate) = rounded.checked_div(&lead_scaled) else { continue };
        if !roots.contains(&candidate) && eval(p, &candidate).is_zero() {
            roots.push(candidate);
        }
    }
    roots
}

/// Distinct roots of `p` in `field`, or the unsplit factor when some root lies outside it.
pub fn split_roots(p: &[Scalar], field: Field) -> Result<Vec<Scalar>> {
    let p = monic(p.to_vec());
    if p.len() <= 1 {
        return Ok(Vec::new());
    }
    let sf = square_free(&p);
    let mut roots = match field {
        Field::Rational => rational_roots(&sf),
        Field::Gaussian => gaussian_roots(&sf),
    };
    roots.sort();
    if roots.len() + 1 != sf.len() {
        let mut rest = p.clone();
        for r in &roots {
            loop {
                let (q, rem) = divmod(&rest, &[-r.clone(), Scalar::one()]);
                if !rem.is_empty() {
                    break;
                }
                rest = q;
            }
        }
        return Err(QlsError::NonSplitSpectrum { factor: format_poly(&rest) });
    }
    Ok(roots)
}

/// Human-readable polynomial in `x`, highest degree first.
pub fn format_poly(p: &[Scalar]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})x"),
            _ => format!("({c})x^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly {
        c.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rational_split() {
        // (x − 1)²(x + 1)(2x − 3)
        let p = poly(&[-3, 5, 1, -5, 2]);
        let roots = split_roots(&p, Field::Rational).unwrap();
        assert_eq!(roots, vec![Scalar::from_int(-1), Scalar::one(), Scalar::ratio(3, 2).unwrap()]);
    }

    #[test]
    fn non_split_reports_factor() {
        let err = split_roots(&poly(&[-2, 0, 1]), Field::Rational).unwrap_err();
        assert!(matches!(err, QlsError::NonSplitSpectrum { ref factor } if factor.contains("x^2")));
        let err = split_roots(&poly(&[1, 0, 1]), Field::Rational).unwrap_err();
        assert!(matches!(err, QlsError::NonSplitSpectrum { .. }));
    }

    #[test]
    fn gaussian_split() {
        let roots = split_roots(&poly(&[1, 0, 1]), Field::Gaussian).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Scalar::i()));
        // (x² + 1/4)(x − 2)² = x⁴ − 4x³ + (17/4)x² − x + 1
        let p: Poly = vec![Scalar::one(), Scalar::from_int(-1), Scalar::ratio(17, 4).unwrap(), Scalar::from_int(-4), Scalar::one()];
        let roots = split_roots(&p, Field::Gaussian).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&(&Scalar::i() * &Scalar::ratio(1, 2).unwrap())));
        assert!(split_roots(&poly(&[-2, 0, 1]), Field::Gaussian).is_err());
    }
}
