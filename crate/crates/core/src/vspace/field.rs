use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::VspaceError;

/// One of the exact fields supported: ℚ, GF(p) for primes `p ≤ 97`, GF(4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Gf4,
}

/// A field element tagged with its field.
///
/// GF(4) elements are bit pairs `a + b·x` with `x² = x + 1`, so `2` is the
/// generator `ω` and `3 = ω²`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
    F4(u8),
}

/// Field automorphism. Only GF(4) has a nontrivial one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sigma {
    #[default]
    Identity,
    Frobenius,
}

const F4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const F4_INV: [u8; 4] = [0, 1, 3, 2];

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, VspaceError> {
        if is_prime(p) && p <= 97 {
            Ok(Field::Prime(p))
        } else {
            Err(VspaceError::UnsupportedField(format!("GF({p})")))
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p),
            Field::Gf4 => Some(4),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, k: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(k.into())),
            Field::Prime(p) => Scalar::Mod {
                value: k.rem_euclid(p as i64) as u64,
                p,
            },
            Field::Gf4 => Scalar::F4((k.rem_euclid(2)) as u8),
        }
    }

    pub fn rational(self, num: i64, den: i64) -> Result<Scalar, VspaceError> {
        if den == 0 {
            return Err(VspaceError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num.into(), den.into()))),
            _ => self.from_i64(num).div(&self.from_i64(den)),
        }
    }

    /// GF(4) element from its bit code `0..4`.
    pub fn gf4(code: u8) -> Scalar {
        Scalar::F4(code & 3)
    }

    /// All elements of a finite field in code order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|value| Scalar::Mod { value, p }).collect()),
            Field::Gf4 => Some((0..4).map(Scalar::F4).collect()),
        }
    }

    pub fn automorphisms(self) -> Vec<Sigma> {
        match self {
            Field::Gf4 => vec![Sigma::Identity, Sigma::Frobenius],
            _ => vec![Sigma::Identity],
        }
    }

    /// The fixed enumeration `α_0, α_1, …` of the field.
    ///
    /// Finite fields cycle through their elements in code order. ℚ is listed
    /// by height `max(|a|, b)` of `a/b` in lowest terms, and within a height
    /// by decreasing absolute value, positive before negative:
    /// `0, 1, −1, 2, −2, 1/2, −1/2, 3, −3, 3/2, …`.
    pub fn enumeration(self) -> Box<dyn Iterator<Item = Scalar>> {
        match self.elements() {
            Some(els) => Box::new(els.into_iter().cycle()),
            None => Box::new(std::iter::once(self.zero()).chain((1i64..).flat_map(|h| {
                let mut level: Vec<BigRational> = Vec::new();
                for b in 1..=h {
                    for a in 1..=h {
                        if a.max(b) == h && num_integer::gcd(a, b) == 1 {
                            level.push(BigRational::new(a.into(), b.into()));
                        }
                    }
                }
                level.sort_by(|x, y| y.cmp(x));
                level
                    .into_iter()
                    .flat_map(|q| [Scalar::Rat(q.clone()), Scalar::Rat(-q)])
            }))),
        }
    }

    pub fn alpha(self, j: usize) -> Scalar {
        self.enumeration().nth(j).unwrap()
    }

    /// Uniform element of a finite field; for ℚ a fraction with numerator
    /// in `-9..=9` and denominator in `1..=5`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::new(
                rng.gen_range(-9i64..=9).into(),
                rng.gen_range(1i64..=5).into(),
            )),
            Field::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..p),
                p,
            },
            Field::Gf4 => Scalar::F4(rng.gen_range(0..4)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Parses an element written the way [`Scalar`]'s `Display` prints it.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, VspaceError> {
        let bad = || VspaceError::BadScalar(s.to_string());
        match self {
            Field::Rationals => {
                let (n, d) = s.split_once('/').unwrap_or((s, "1"));
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(_) => {
                let (n, d) = s.split_once('/').unwrap_or((s, "1"));
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                self.rational(n, d).map_err(|_| bad())
            }
            Field::Gf4 => match s.trim() {
                "0" => Ok(Scalar::F4(0)),
                "1" => Ok(Scalar::F4(1)),
                "w" => Ok(Scalar::F4(2)),
                "w2" => Ok(Scalar::F4(3)),
                _ => Err(bad()),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF{p}"),
            Field::Gf4 => write!(f, "GF4"),
        }
    }
}

impl FromStr for Field {
    type Err = VspaceError;

    /// Accepts `Q`, `GF5`, `GF(5)`, `GF4` and lowercase variants.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("gf")
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| VspaceError::UnsupportedField(s.to_string()))?;
        match digits.parse::<u64>() {
            Ok(4) => Ok(Field::Gf4),
            Ok(p) => Field::prime(p),
            Err(_) => Err(VspaceError::UnsupportedField(s.to_string())),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::F4(_) => Field::Gf4,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::F4(c) => *c == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::F4(c) => *c == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            (Scalar::F4(a), Scalar::F4(b)) => Scalar::F4(a ^ b),
            _ => mismatch(self, o),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
            Scalar::F4(a) => Scalar::F4(*a),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: a * b % p,
                p: *p,
            },
            (Scalar::F4(a), Scalar::F4(b)) => Scalar::F4(F4_MUL[*a as usize][*b as usize]),
            _ => mismatch(self, o),
        }
    }

    pub fn inv(&self) -> Result<Scalar, VspaceError> {
        if self.is_zero() {
            return Err(VspaceError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
            Scalar::F4(a) => Scalar::F4(F4_INV[*a as usize]),
        })
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, VspaceError> {
        Ok(self.mul(&o.inv()?))
    }
}

#[track_caller]
fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars from different fields: {} and {}", a.field(), b.field())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::F4(c) => f.write_str(["0", "1", "w", "w2"][*c as usize]),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Sigma {
    pub fn apply(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Sigma::Frobenius, Scalar::F4(_)) => a.mul(a),
            _ => a.clone(),
        }
    }

    pub fn inverse(self) -> Sigma {
        self
    }

    /// `self` first, then `other`.
    pub fn then(self, other: Sigma) -> Sigma {
        if self == other {
            Sigma::Identity
        } else {
            Sigma::Frobenius
        }
    }

    pub fn check_field(self, field: Field) -> Result<(), VspaceError> {
        match (self, field) {
            (Sigma::Frobenius, f) if f != Field::Gf4 => Err(VspaceError::NoSuchAutomorphism(field)),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::Gf4,
            Field::prime(2).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
        ]
    }

    #[test]
    fn finite_field_axioms_exhaustive() {
        for f in fields() {
            let els = f.elements().unwrap();
            for a in &els {
                assert_eq!(a.add(&f.zero()), *a);
                assert_eq!(a.mul(&f.one()), *a);
                assert!(a.add(&a.neg()).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                for b in &els {
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &els {
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                        assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism_of_gf4() {
        let els = Field::Gf4.elements().unwrap();
        let s = Sigma::Frobenius;
        let mut images: Vec<_> = els.iter().map(|a| s.apply(a)).collect();
        images.sort_by_key(|a| a.to_string());
        let mut sorted = els.clone();
        sorted.sort_by_key(|a| a.to_string());
        assert_eq!(images, sorted);
        for a in &els {
            assert_eq!(s.apply(&s.apply(a)), *a);
            for b in &els {
                assert_eq!(s.apply(&a.add(b)), s.apply(a).add(&s.apply(b)));
                assert_eq!(s.apply(&a.mul(b)), s.apply(a).mul(&s.apply(b)));
            }
        }
        assert_eq!(s.apply(&Field::gf4(2)), Field::gf4(3));
        assert!(Sigma::Frobenius.check_field(Field::Rationals).is_err());
    }

    #[test]
    fn rational_enumeration_by_height() {
        let got: Vec<String> = Field::Rationals.enumeration().take(15).map(|a| a.to_string()).collect();
        assert_eq!(
            got,
            ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3", "3/2", "-3/2", "2/3", "-2/3", "1/3", "-1/3"]
        );
        let g5: Vec<String> = Field::prime(5)
            .unwrap()
            .enumeration()
            .take(7)
            .map(|a| a.to_string())
            .collect();
        assert_eq!(g5, ["0", "1", "2", "3", "4", "0", "1"]);
    }

    #[test]
    fn parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("GF(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("gf4".parse::<Field>().unwrap(), Field::Gf4);
        assert!("GF6".parse::<Field>().is_err());
        assert!("GF101".parse::<Field>().is_err());
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        let f5 = Field::Prime(5);
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert_eq!(Field::Gf4.parse_scalar("w2").unwrap(), Field::gf4(3));
    }
}
