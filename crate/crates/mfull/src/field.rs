//! Coefficient fields: the rationals (exact, arbitrary precision) and prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt::Debug;
use std::hash::Hash;

/// A field given by a context object; elements are plain values.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    /// True for coefficient fields whose results are only probabilistically
    /// representative of characteristic zero.
    fn heuristic(&self) -> bool {
        self.characteristic() != 0
    }
}

/// Rational number with an `i64` fast path.
///
/// Normal form: denominator positive, fraction reduced, and the small variant
/// is used whenever both parts fit in `i64` (excluding `i64::MIN`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    S(i64, i64),
    B(Box<BigRational>),
}

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

impl Rat {
    pub fn int(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rat::S(n, 1)
        }
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Rat::S(n as i64, d as i64)
        } else {
            Rat::B(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rat::S(n, d);
            }
        }
        Rat::B(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::S(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::B(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::S(0, _))
    }

    pub fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rat::from_i128(*a as i128 + *c as i128, 1);
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                let m = *b as i128 * *d as i128;
                Rat::from_i128(n, m)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::S(a, b) => Rat::S(-a, *b),
            Rat::B(r) => Rat::from_big(-(**r).clone()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn inv(&self) -> Rat {
        match self {
            Rat::S(0, _) => panic!("inverse of zero"),
            Rat::S(a, b) => {
                if *a < 0 {
                    Rat::S(-b, -a)
                } else {
                    Rat::S(*b, *a)
                }
            }
            Rat::B(r) => Rat::from_big(r.recip()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Rat::S(a, 1) => a.to_string(),
            Rat::S(a, b) => format!("{a}/{b}"),
            Rat::B(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::S(a, _) => *a < 0,
            Rat::B(r) => r.is_negative(),
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Q;

impl Field for Q {
    type Elem = Rat;
    fn zero(&self) -> Rat {
        Rat::S(0, 1)
    }
    fn one(&self) -> Rat {
        Rat::S(1, 1)
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::int(n)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rat) -> bool {
        matches!(a, Rat::S(1, 1))
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a.sub(b)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }
    fn neg(&self, a: &Rat) -> Rat {
        a.neg()
    }
    fn inv(&self, a: &Rat) -> Rat {
        a.inv()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &Rat) -> String {
        a.render()
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}

/// The prime field Z/p with p an odd prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

pub const DEFAULT_PRIME: u32 = 32003;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Returns `None` unless `p` is an odd prime below 2^31.
    pub fn new(p: u32) -> Option<Fp> {
        if p > 2 && p < (1 << 31) && is_prime(p as u64) {
            Some(Fp { p })
        } else {
            None
        }
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

impl Field for Fp {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let (mut t, mut nt) = (0i64, 1i64);
        let (mut r, mut nr) = (self.p as i64, *a as i64);
        while nr != 0 {
            let q = r / nr;
            (t, nt) = (nt, t - q * nt);
            (r, nr) = (nr, r - q * nr);
        }
        t.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("ZZ/{}", self.p)
    }
}

/// Shorthand for the element type of a field.
pub type El<F> = <F as Field>::Elem;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_big_agree() {
        let q = Q;
        let a = Rat::int(i64::MAX);
        let b = q.add(&a, &a);
        assert!(matches!(b, Rat::B(_)));
        let c = q.sub(&b, &a);
        assert_eq!(c, a);
        let h = q.div(&q.one(), &q.from_i64(2));
        assert_eq!(q.add(&h, &h), q.one());
        assert_eq!(q.mul(&q.from_i64(-3), &q.inv(&q.from_i64(-6))), h);
    }

    #[test]
    fn prime_field_inverse() {
        let f = Fp::default();
        for a in 1..200u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert!(Fp::new(2).is_none());
        assert!(Fp::new(15).is_none());
        assert_eq!(f.from_i64(-1), DEFAULT_PRIME - 1);
    }

    #[test]
    fn min_int_is_handled() {
        let q = Q;
        let m = Rat::int(i64::MIN);
        assert_eq!(q.neg(&q.neg(&m)), m);
        assert_eq!(q.add(&m, &q.neg(&m)), q.zero());
    }
}
