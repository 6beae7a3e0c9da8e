//! Exact scalars: arbitrary-precision rationals, plus a prime-field shadow
//! used only as a rank pre-filter.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// The exact coefficient field. `BigRational` keeps values in lowest terms
/// with a positive denominator.
pub type Scalar = BigRational;

/// Default bound for random numerators and denominators.
pub const RANDOM_BITS: u32 = 31;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Uniform random rational with numerator in `[-2^31, 2^31]` and
/// denominator in `[1, 2^31]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let bound = 1i64 << RANDOM_BITS;
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    frac(num, den)
}

/// Random rational that is guaranteed nonzero.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let q = random_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Random strictly positive integer weight in `[1, 2^31]`.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R) -> BigInt {
    BigInt::from(rng.gen_range(1..=(1i64 << RANDOM_BITS)))
}

/// Random point in the interior of the probability simplex with `n`
/// rational coordinates.
pub fn random_simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Scalar> {
    let weights: Vec<BigInt> = (0..n).map(|_| random_weight(rng)).collect();
    let total: BigInt = weights.iter().sum();
    weights
        .into_iter()
        .map(|w| BigRational::new(w, total.clone()))
        .collect()
}

/// Parse `a`, `-a`, or `a/b`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// `a` for integers and `a/b` otherwise.
pub fn format_scalar(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Mersenne prime 2^31 - 1.
pub const SHADOW_PRIME: u64 = 2_147_483_647;

/// Element of F_p for `p = SHADOW_PRIME`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);

    pub fn add(self, o: Fp) -> Fp {
        Fp((self.0 + o.0) % SHADOW_PRIME)
    }

    pub fn sub(self, o: Fp) -> Fp {
        Fp((self.0 + SHADOW_PRIME - o.0) % SHADOW_PRIME)
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp(self.0 * o.0 % SHADOW_PRIME)
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(SHADOW_PRIME - 2))
        }
    }

    fn from_bigint(n: &BigInt) -> Fp {
        let p = BigInt::from(SHADOW_PRIME);
        let r = n.mod_floor(&p);
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    /// Reduce a rational modulo p; `None` when p divides the denominator.
    pub fn from_rational(q: &Scalar) -> Option<Fp> {
        let den = Fp::from_bigint(q.denom());
        let inv = den.inv()?;
        Some(Fp::from_bigint(q.numer()).mul(inv))
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &Scalar) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn is_positive(q: &Scalar) -> bool {
    q.is_positive()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let q = frac(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
        assert_eq!(format_scalar(&parse_scalar("4/2").unwrap()), "2");
    }

    #[test]
    fn simplex_points_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_simplex_point(&mut rng, 5);
        assert!(p.iter().all(is_positive));
        assert_eq!(p.iter().cloned().sum::<Scalar>(), one());
    }

    #[test]
    fn fp_inverse_and_reduction() {
        let a = Fp(123_456_789);
        assert_eq!(a.mul(a.inv().unwrap()), Fp(1));
        let q = frac(1, 3);
        let r = Fp::from_rational(&q).unwrap();
        assert_eq!(r.mul(Fp(3)), Fp(1));
        let bad = BigRational::new(BigInt::one(), BigInt::from(SHADOW_PRIME));
        assert!(Fp::from_rational(&bad).is_none());
        assert_eq!(Fp::from_rational(&int(-1)).unwrap(), Fp(SHADOW_PRIME - 1));
    }
}
