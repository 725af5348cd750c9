//! Exact arithmetic in small finite fields F_{p^m}.
//!
//! Elements are stored as the base-p packing of the coefficient vector of
//! the residue polynomial, an integer in `[0, q)`. The modulus is the
//! lexicographically smallest monic irreducible polynomial of degree m over
//! F_p (smallest packed encoding), so element encodings are reproducible
//! across runs and machines. Prime fields use plain residues and carry no
//! modulus.
//!
//! Multiplication, inversion and exponentiation go through exp/log tables
//! built from the canonical primitive element at construction time;
//! addition works digit by digit in base p.

use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// An element of a finite field, identified by its integer rep in `[0, q)`.
///
/// The rep is only meaningful relative to the `FiniteField` that produced
/// it; operations that combine structures from different fields check field
/// equality at the structure level (codes, group algebras).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn rep(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Ascending coefficients of the monic modulus, length m+1; empty for m = 1.
    modulus: Vec<u32>,
    /// exp[i] = rep of xi^i for i in 0..q-1, xi the canonical primitive element.
    exp: Vec<u32>,
    /// log[rep] for rep != 0; log[0] is unused.
    log: Vec<u32>,
    primitive: u32,
}

/// A finite field F_{p^m}. Cheap to clone; equality compares (p, modulus).
#[derive(Clone)]
pub struct FiniteField {
    data: Arc<FieldData>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.data.p == other.data.p
            && self.data.m == other.data.m
            && self.data.modulus == other.data.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.label())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over F_p as ascending coefficient vectors, used only while
/// building a field.
mod poly {
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % p;
            if c != 0 {
                for i in 0..=db {
                    let idx = dr - db + i;
                    let sub = (c * b[i]) % p;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime and small; Fermat by repeated squaring.
        let mut result = 1u64;
        let mut base = (a % p) as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }
}

fn unpack(mut rep: u32, p: u32, m: u32) -> Vec<u32> {
    let mut v = vec![0u32; m as usize];
    for digit in v.iter_mut() {
        *digit = rep % p;
        rep /= p;
    }
    v
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    let mut rep = 0u32;
    for &c in coeffs.iter().rev() {
        rep = rep * p + c;
    }
    rep
}

/// Irreducibility by trial division against all monic polynomials of degree
/// up to m/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d, by packed code
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = unpack(code as u32, p, d as u32);
            g.push(1);
            if poly::rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds F_{p^m} with the canonical modulus, under the default bound.
    pub fn new(p: u32, m: u32) -> Result<FiniteField> {
        Self::with_caps(p, m, &Caps::default())
    }

    pub fn with_caps(p: u32, m: u32, caps: &Caps) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidParameter("extension degree m must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= caps.field_order);
        let q = match q {
            Some(q) => q as u32,
            None => {
                return Err(Error::FieldTooLarge {
                    q: (p as u64).saturating_pow(m),
                    bound: caps.field_order,
                })
            }
        };

        let modulus = if m == 1 {
            Vec::new()
        } else {
            // smallest packed encoding of a monic irreducible of degree m
            let mut found = None;
            for code in 0..(p as u64).pow(m) {
                let mut f = unpack(code as u32, p, m);
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        let mut data = FieldData {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: 1,
        };
        data.build_tables();
        Ok(FiniteField { data: Arc::new(data) })
    }

    /// Parses a field label, "p" or "p^m".
    pub fn parse_label(s: &str) -> Result<FiniteField> {
        let bad = || Error::InvalidSpec(format!("bad field label '{s}'"));
        let (p, m) = match s.split_once('^') {
            Some((ps, ms)) => (
                ps.trim().parse::<u32>().map_err(|_| bad())?,
                ms.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        FiniteField::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn m(&self) -> u32 {
        self.data.m
    }

    pub fn q(&self) -> u32 {
        self.data.q
    }

    /// Ascending coefficients of the modulus; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    /// "p" for prime fields, "p^m" otherwise.
    pub fn label(&self) -> String {
        if self.data.m == 1 {
            format!("{}", self.data.p)
        } else {
            format!("{}^{}", self.data.p, self.data.m)
        }
    }

    /// Label plus the modulus coefficient list, e.g. "2^3 [1,1,0,1]".
    pub fn describe(&self) -> String {
        if self.data.m == 1 {
            self.label()
        } else {
            let coeffs: Vec<String> = self.data.modulus.iter().map(|c| c.to_string()).collect();
            format!("{} [{}]", self.label(), coeffs.join(","))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Range-checked element from an integer rep.
    pub fn element(&self, rep: u32) -> Result<FieldElement> {
        if rep < self.data.q {
            Ok(FieldElement(rep))
        } else {
            Err(Error::ElementOutOfRange { rep, q: self.data.q })
        }
    }

    /// Element from a (possibly negative) integer, reduced into the prime
    /// subfield. For prime fields this is reduction mod p.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.data.p as i64;
        FieldElement(v.rem_euclid(p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.data.q).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.data.q).map(FieldElement)
    }

    fn check(&self, a: FieldElement) {
        debug_assert!(a.0 < self.data.q, "element {} out of range for {}", a.0, self.label());
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.data.p;
        if self.data.m == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let mut rep_a = a.0;
        let mut rep_b = b.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.data.m {
            out += (rep_a % p + rep_b % p) % p * scale;
            rep_a /= p;
            rep_b /= p;
            scale *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let p = self.data.p;
        if self.data.m == 1 {
            return FieldElement((p - a.0) % p);
        }
        let mut rep = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.data.m {
            out += (p - rep % p) % p * scale;
            rep /= p;
            scale *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.data.q - 1;
        let i = (self.data.log[a.0 as usize] + self.data.log[b.0 as usize]) % n;
        FieldElement(self.data.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.data.q - 1;
        let i = (n - self.data.log[a.0 as usize]) % n;
        Ok(FieldElement(self.data.exp[i as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for any integer e; negative exponents require a != 0.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a);
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(FieldElement(0)),
                std::cmp::Ordering::Equal => Ok(FieldElement(1)),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let n = (self.data.q - 1) as i64;
        let i = (self.data.log[a.0 as usize] as i64 * (e % n)).rem_euclid(n);
        Ok(FieldElement(self.data.exp[i as usize]))
    }

    /// The canonical primitive element: smallest rep of multiplicative
    /// order q-1.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.data.primitive)
    }

    /// xi^e for the canonical primitive element xi.
    pub fn xi_pow(&self, e: i64) -> FieldElement {
        let n = (self.data.q - 1) as i64;
        FieldElement(self.data.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete log base the canonical primitive element.
    pub fn dlog(&self, a: FieldElement) -> Result<u32> {
        self.check(a);
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.data.log[a.0 as usize])
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        self.check(a);
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.data.q - 1;
        let l = self.data.log[a.0 as usize];
        Ok(n / gcd(n, l))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FieldData {
    /// Polynomial-basis multiplication, used only to bootstrap the tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.m == 1 {
            return (a as u64 * b as u64 % p as u64) as u32;
        }
        let m = self.m as usize;
        let va = unpack(a, p, self.m);
        let vb = unpack(b, p, self.m);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &ca) in va.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % p;
            }
        }
        // reduce by the monic modulus
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..m {
                    let sub = (c * self.modulus[i]) % p;
                    prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
                }
            }
        }
        prod.truncate(m);
        pack(&prod, p)
    }

    fn order_slow(&self, a: u32) -> u32 {
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul_slow(x, a);
            ord += 1;
        }
        ord
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.primitive = 1;
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let mut primitive = 0;
        for g in 2..q {
            if self.order_slow(g) == q - 1 {
                primitive = g;
                break;
            }
        }
        assert!(primitive != 0, "F_q* is cyclic, a generator exists");
        self.primitive = primitive;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, primitive);
        }
        assert_eq!(x, 1);
        self.exp = exp;
        self.log = log;
    }
}
