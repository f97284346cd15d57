//! Arithmetic in GF(p^n) with elements stored in the polynomial basis.
//!
//! An element is identified with its coefficient vector `(c_0, .., c_{n-1})`
//! over GF(p), packed as the integer `c_0 + c_1 p + .. + c_{n-1} p^{n-1}`.
//! That integer is the element's [`Elem`] index, and the little-endian
//! counter order it induces is the canonical order used everywhere else in
//! the crate (vertex ordering, representative choice, "first element such
//! that ..." searches).
//!
//! Multiplication runs through log/exp tables built from the primitive
//! element, so every supported field is capped at order 2^16.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order this module will build tables for.
pub const MAX_ORDER: u32 = 1 << 16;

/// Default moduli, coefficients low-to-high, for the fields the graph
/// families need. Each entry equals the first monic irreducible polynomial
/// in counter order, see [`smallest_irreducible`].
pub const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
];

/// A field element, identified by its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The canonical index `sum c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Square class of an element of a field of odd order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareClass {
    Zero,
    Square,
    Nonsquare,
}

impl SquareClass {
    /// The other nonzero class; `Zero` maps to itself.
    pub fn opposite(self) -> SquareClass {
        match self {
            SquareClass::Zero => SquareClass::Zero,
            SquareClass::Square => SquareClass::Nonsquare,
            SquareClass::Nonsquare => SquareClass::Square,
        }
    }
}

/// GF(p^n) together with its arithmetic tables.
pub struct Field {
    p: u32,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
    primitive: Elem,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomial helpers over GF(p), coefficients low-to-high -------

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    poly_trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small; Fermat is plenty.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
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

/// Remainder of `a` modulo `m` (m nonzero).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    poly_trim(&mut f);
    let deg = match f.len() {
        0 => return false,
        l => l - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `n` over GF(p) in counter
/// order on its lower coefficients.
pub fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for idx in 0..count {
        let mut g = Vec::with_capacity(n as usize + 1);
        let mut x = idx;
        for _ in 0..n {
            g.push((x % p as u64) as u32);
            x /= p as u64;
        }
        g.push(1);
        if is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// The built-in modulus for GF(p^n), falling back to the counter-order search.
pub fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    DEFAULT_MODULI
        .iter()
        .find(|(pp, nn, _)| *pp == p && *nn == n)
        .map(|(_, _, m)| m.to_vec())
        .unwrap_or_else(|| smallest_irreducible(p, n))
}

impl Field {
    /// Builds GF(p^n). With `modulus = None` the default table is used.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if n == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(n).filter(|&o| o <= MAX_ORDER as u64).ok_or(
            Error::FieldTooLarge {
                p,
                n,
                max: MAX_ORDER,
            },
        )? as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 || m[n as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {n}, got {m:?}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(p, n),
        };

        let mut field = Field {
            p,
            n,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
            neg: Vec::new(),
            primitive: Elem::ONE,
        };
        field.neg = (0..order)
            .map(|x| {
                let c = field.decode(x);
                field.encode(c.iter().map(|&ci| (p - ci) % p))
            })
            .collect();
        if n > 1 && p != 2 && order <= 256 {
            let mut table = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        field.primitive = field.search_primitive();
        field.build_log_tables();
        Ok(field)
    }

    /// Shorthand for [`Field::new`] with the default modulus, wrapped in an `Arc`.
    pub fn shared(p: u32, n: u32) -> Result<Arc<Field>> {
        Ok(Arc::new(Field::new(p, n, None)?))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Arc<Field>> {
        let (p, n) = prime_power(q).ok_or(Error::NonPrimeCharacteristic(q))?;
        Field::shared(p, n)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem)
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order).map(Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.order
    }

    /// The element with canonical index `index`.
    pub fn element(&self, index: u32) -> Option<Elem> {
        (index < self.order).then_some(Elem(index))
    }

    fn decode(&self, mut x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: impl IntoIterator<Item = u32>) -> u32 {
        let mut acc = 0u32;
        let mut scale = 1u32;
        for c in coeffs {
            acc += c * scale;
            scale = scale.wrapping_mul(self.p);
        }
        acc
    }

    /// Coefficient vector (low-to-high, length n) of `x`.
    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        self.decode(x.0)
    }

    /// Element with the given coefficients; shorter inputs are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidCoefficients(coeffs.to_vec()));
        }
        Ok(Elem(self.encode(coeffs.iter().copied())))
    }

    /// The image of the integer `k` in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    /// The integer value of an element of the prime subfield.
    pub fn to_int(&self, x: Elem) -> Option<u32> {
        (x.0 < self.p).then_some(x.0)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut acc = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.n {
            acc += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.n == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => Elem(t[(a.0 * self.order + b.0) as usize]),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.n == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[s as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let m = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(Elem(self.exp[((m - l) % m) as usize]))
    }

    /// `a / b`; `None` when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (e % m)) % m) as usize])
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let m = (self.order - 1) as u64;
        let mut e = 1u64;
        for _ in 0..k {
            e = e * self.p as u64 % m.max(1);
        }
        if a.0 == 0 {
            return a;
        }
        self.pow(a, if m == 1 { 1 } else { e })
    }

    /// `g^k` for the primitive element `g`.
    pub fn exp(&self, k: u64) -> Elem {
        let m = (self.order - 1) as u64;
        Elem(self.exp[(k % m) as usize])
    }

    /// Discrete logarithm to the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let m = (self.order - 1) as u64;
        Some(m / gcd(l, m))
    }

    /// The first element in canonical order with multiplicative order p^n - 1.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Square class in a field of odd order: square iff `x^((q-1)/2) = 1`.
    pub fn square_class(&self, x: Elem) -> Result<SquareClass> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if x.is_zero() {
            return Ok(SquareClass::Zero);
        }
        let t = self.pow(x, ((self.order - 1) / 2) as u64);
        if t == Elem::ONE {
            Ok(SquareClass::Square)
        } else {
            debug_assert_eq!(t, self.neg(Elem::ONE));
            Ok(SquareClass::Nonsquare)
        }
    }

    /// `Tr_{p^n / p^d}(x) = sum_i x^(p^(d i))`, returned as an element of
    /// this field (it is fixed by `x -> x^(p^d)`).
    pub fn trace_to(&self, x: Elem, target_degree: u32) -> Result<Elem> {
        if target_degree == 0 || self.n % target_degree != 0 {
            return Err(Error::NotASubfield {
                sub: target_degree,
                sup: self.n,
            });
        }
        let mut acc = Elem::ZERO;
        let mut term = x;
        for _ in 0..self.n / target_degree {
            acc = self.add(acc, term);
            term = self.frobenius(term, target_degree);
        }
        Ok(acc)
    }

    /// Evaluates a polynomial with prime-field coefficients at `x`.
    pub fn eval_prime_poly(&self, poly: &[u32], x: Elem) -> Elem {
        poly.iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }

    // Slow multiplication straight from the modulus; only used while the
    // log tables are being built.
    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&self.decode(a), &self.decode(b), self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        self.encode(rem)
    }

    fn pow_poly(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_poly(result, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        result
    }

    fn search_primitive(&self) -> Elem {
        let m = (self.order - 1) as u64;
        if m == 1 {
            return Elem::ONE;
        }
        let factors = prime_factors(m);
        (1..self.order)
            .find(|&x| factors.iter().all(|&f| self.pow_poly(x, m / f) != 1))
            .map(Elem)
            .expect("the multiplicative group is cyclic")
    }

    fn build_log_tables(&mut self) {
        let m = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * m.max(1)];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = 1u32;
        for i in 0..m.max(1) {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_poly(cur, self.primitive.0);
        }
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }
        self.exp = exp;
        self.log = log;
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Splits a prime power `q = p^n`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        n += 1;
    }
    (x == 1).then_some((p, n))
}

/// A fixed embedding of GF(p^m) into GF(p^n), m | n.
///
/// The polynomial generator of the subfield (the class of `x` modulo its
/// modulus) is sent to the first root of that modulus in the superfield.
pub struct SubfieldEmbedding {
    sub: Arc<Field>,
    sup: Arc<Field>,
    generator_image: Elem,
    forward: Vec<Elem>,
    backward: Vec<Option<Elem>>,
}

impl fmt::Debug for SubfieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubfieldEmbedding")
            .field("sub", &self.sub)
            .field("sup", &self.sup)
            .field("generator_image", &self.generator_image)
            .finish()
    }
}

impl SubfieldEmbedding {
    pub fn new(sub: Arc<Field>, sup: Arc<Field>) -> Result<Self> {
        if sub.p != sup.p || sup.n % sub.n != 0 {
            return Err(Error::NotASubfield {
                sub: sub.n,
                sup: sup.n,
            });
        }
        let generator_image = if sub.n == 1 {
            Elem::ZERO
        } else {
            sup.elements()
                .find(|&b| sup.eval_prime_poly(&sub.modulus, b).is_zero())
                .ok_or(Error::NotASubfield {
                    sub: sub.n,
                    sup: sup.n,
                })?
        };
        let mut forward = Vec::with_capacity(sub.order as usize);
        let mut backward = vec![None; sup.order as usize];
        for x in sub.elements() {
            let coeffs = sub.coeffs(x);
            let image = if sub.n == 1 {
                sup.from_int(coeffs[0] as i64)
            } else {
                sup.eval_prime_poly(&coeffs, generator_image)
            };
            if backward[image.0 as usize].is_some() {
                return Err(Error::Invariant("subfield embedding is not injective".into()));
            }
            backward[image.0 as usize] = Some(x);
            forward.push(image);
        }
        Ok(SubfieldEmbedding {
            sub,
            sup,
            generator_image,
            forward,
            backward,
        })
    }

    pub fn sub(&self) -> &Arc<Field> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<Field> {
        &self.sup
    }

    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    pub fn embed(&self, x: Elem) -> Result<Elem> {
        self.forward.get(x.0 as usize).copied().ok_or(Error::WrongField)
    }

    /// Preimage of a superfield element lying in the image.
    pub fn pull_back(&self, y: Elem) -> Option<Elem> {
        self.backward.get(y.0 as usize).copied().flatten()
    }

    pub fn in_image(&self, y: Elem) -> bool {
        self.pull_back(y).is_some()
    }

    /// `Tr_{sup/sub}(y)` as an element of the subfield.
    pub fn trace(&self, y: Elem) -> Result<Elem> {
        if !self.sup.contains(y) {
            return Err(Error::WrongField);
        }
        let t = self.sup.trace_to(y, self.sub.n)?;
        self.pull_back(t)
            .ok_or_else(|| Error::Invariant("trace left the subfield".into()))
    }

    /// Trace values of every superfield element, indexed by element index.
    pub fn trace_table(&self) -> Vec<Elem> {
        self.sup
            .elements()
            .map(|y| self.trace(y).expect("superfield element"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    #[test]
    fn gf9_with_x2_plus_1() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 9);
    }

    #[test]
    fn gf4_multiplication_follows_modulus() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let w = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.coeffs(f.mul(w, w)), vec![1, 1]);
    }

    #[test]
    fn reducible_and_bad_inputs_rejected() {
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(Field::new(4, 1, None), Err(Error::NonPrimeCharacteristic(4))));
        assert!(matches!(Field::new(2, 17, None), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn default_table_matches_search() {
        for &(p, n, m) in DEFAULT_MODULI {
            assert_eq!(smallest_irreducible(p, n), m.to_vec(), "GF({p}^{n})");
        }
    }

    #[test]
    fn trace_examples() {
        let f4 = gf(2, 2);
        let w = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.trace_to(w, 1).unwrap(), Elem::ONE);
        let f64 = gf(2, 6);
        assert_eq!(f64.trace_to(Elem::ONE, 1).unwrap(), Elem::ZERO);
        assert!(matches!(f64.trace_to(w, 4), Err(Error::NotASubfield { .. })));
    }

    #[test]
    fn trace_is_transitive_on_gf64() {
        let f2 = Field::shared(2, 1).unwrap();
        let f4 = Field::shared(2, 2).unwrap();
        let f64 = Field::shared(2, 6).unwrap();
        let to4 = SubfieldEmbedding::new(f4.clone(), f64.clone()).unwrap();
        let to2 = SubfieldEmbedding::new(f2.clone(), f64.clone()).unwrap();
        let inner = SubfieldEmbedding::new(f2, f4).unwrap();
        for x in f64.elements() {
            let direct = to2.trace(x).unwrap();
            let tower = inner.trace(to4.trace(x).unwrap()).unwrap();
            assert_eq!(direct, tower);
        }
    }

    #[test]
    fn square_classes_gf5() {
        let f = gf(5, 1);
        let classes: Vec<_> = (1..5).map(|i| f.square_class(Elem(i)).unwrap()).collect();
        use SquareClass::*;
        assert_eq!(classes, vec![Square, Nonsquare, Nonsquare, Square]);
        assert_eq!(f.square_class(Elem::ZERO).unwrap(), Zero);
        assert!(matches!(gf(2, 3).square_class(Elem::ONE), Err(Error::EvenCharacteristic)));
    }

    #[test]
    fn gf9_has_four_nonzero_squares() {
        let f = gf(3, 2);
        let squares: std::collections::BTreeSet<_> =
            f.nonzero().map(|x| f.mul(x, x)).collect();
        assert_eq!(squares.len(), 4);
        for x in f.nonzero() {
            let class = f.square_class(x).unwrap();
            assert_eq!(squares.contains(&x), class == SquareClass::Square);
        }
    }

    #[test]
    fn square_class_is_multiplicative() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let f = gf(p, n);
            for a in f.nonzero() {
                for b in f.nonzero() {
                    let ca = f.square_class(a).unwrap();
                    let cb = f.square_class(b).unwrap();
                    let expect = if ca == cb {
                        SquareClass::Square
                    } else {
                        SquareClass::Nonsquare
                    };
                    assert_eq!(f.square_class(f.mul(a, b)).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(gf(5, 1).primitive_element(), Elem(2));
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.coeffs(f4.primitive_element()), vec![0, 1]);

        let f64 = Field::shared(2, 6).unwrap();
        let f4 = Field::shared(2, 2).unwrap();
        let emb = SubfieldEmbedding::new(f4, f64.clone()).unwrap();
        let w = f64.primitive_element();
        let mut seen = std::collections::HashSet::new();
        let mut x = Elem::ONE;
        for _ in 0..63 {
            assert!(seen.insert(x));
            x = f64.mul(x, w);
        }
        assert_eq!(x, Elem::ONE);
        let w21 = f64.pow(w, 21);
        assert!(emb.in_image(w21));
        assert_ne!(w21, Elem::ONE);
        assert_ne!(w21, Elem::ZERO);
        // deterministic
        assert_eq!(Field::new(2, 6, None).unwrap().primitive_element(), w);
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f4 = Field::shared(2, 2).unwrap();
        let f64 = Field::shared(2, 6).unwrap();
        let emb = SubfieldEmbedding::new(f4.clone(), f64.clone()).unwrap();
        assert_eq!(emb.embed(Elem::ZERO).unwrap(), Elem::ZERO);
        assert_eq!(emb.embed(Elem::ONE).unwrap(), Elem::ONE);
        for a in f4.elements() {
            for b in f4.elements() {
                let (ea, eb) = (emb.embed(a).unwrap(), emb.embed(b).unwrap());
                assert_eq!(emb.embed(f4.mul(a, b)).unwrap(), f64.mul(ea, eb));
                assert_eq!(emb.embed(f4.add(a, b)).unwrap(), f64.add(ea, eb));
            }
        }
        // image of GF(4) is the fixed field of x -> x^4
        for y in f64.elements() {
            assert_eq!(emb.in_image(y), f64.frobenius(y, 2) == y);
        }
        assert!(matches!(emb.embed(Elem(4)), Err(Error::WrongField)));
        let f2 = Field::shared(2, 1).unwrap();
        let one = SubfieldEmbedding::new(f2, f64).unwrap();
        assert_eq!(one.embed(Elem::ONE).unwrap(), Elem::ONE);
    }

    #[test]
    fn embedding_rejects_non_divisor() {
        let f8 = Field::shared(2, 3).unwrap();
        let f16 = Field::shared(2, 4).unwrap();
        assert!(matches!(
            SubfieldEmbedding::new(f8, f16),
            Err(Error::NotASubfield { .. })
        ));
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, n) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = gf(p, n);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.pow(a, f.order() as u64), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b).0, f.mul_poly(a.0, b.0));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f64 = Field::shared(2, 6).unwrap();
        for d in [1, 2, 3] {
            let sub = Field::shared(2, d).unwrap();
            let emb = SubfieldEmbedding::new(sub.clone(), f64.clone()).unwrap();
            let image: std::collections::HashSet<_> =
                f64.elements().map(|x| emb.trace(x).unwrap()).collect();
            assert_eq!(image.len() as u32, sub.order());
            for a in f64.elements().step_by(5) {
                for b in f64.elements() {
                    let lhs = emb.trace(f64.add(a, b)).unwrap();
                    let rhs = sub.add(emb.trace(a).unwrap(), emb.trace(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
