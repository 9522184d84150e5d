//! Operation tables for the finite fields GF(q), q <= 32.
//!
//! Element `x` of GF(p^e) is labelled by the base-`p` digits of its
//! coefficient vector over the fixed modulus, lowest degree first, so 0 and 1
//! are the additive and multiplicative identities. Every table is checked
//! against the field axioms when it is built.

use crate::error::{Error, Result};

/// Monic irreducible moduli for the non-prime orders, coefficients lowest
/// degree first.
const MODULI: &[(usize, &[usize])] = &[
    (4, &[1, 1, 1]),           // x^2 + x + 1
    (8, &[1, 1, 0, 1]),        // x^3 + x + 1
    (9, &[1, 0, 1]),           // x^2 + 1
    (16, &[1, 1, 0, 0, 1]),    // x^4 + x + 1
    (25, &[2, 0, 1]),          // x^2 + 2
    (27, &[1, 2, 0, 1]),       // x^3 + 2x + 1
    (32, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
];

pub const MAX_FIELD_ORDER: usize = 32;

/// Returns `(p, e)` with `q = p^e`, `p` prime, or `None`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime(n: usize) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    p: usize,
    e: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldTable {
    pub fn new(q: usize) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (add, mul) = if e == 1 {
            prime_tables(p)
        } else {
            let modulus = MODULI
                .iter()
                .find(|(order, _)| *order == q)
                .map(|(_, m)| *m)
                .expect("every prime power up to 32 has a modulus");
            extension_tables(p, e, modulus)
        };
        let mut table = FieldTable { q, p, e, add, mul, neg: vec![0; q], inv: vec![0; q] };
        table.verify_and_fill_inverses()?;
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn pow(&self, a: usize, mut exp: usize) -> usize {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn verify_and_fill_inverses(&mut self) -> Result<()> {
        let q = self.q;
        let fail = |axiom| Err(Error::FieldAxiom { q, axiom });
        for a in 0..q {
            if self.add(a, 0) != a {
                return fail("additive identity");
            }
            if self.mul(a, 1) != a {
                return fail("multiplicative identity");
            }
            match (0..q).find(|&b| self.add(a, b) == 0) {
                Some(b) => self.neg[a] = b as u8,
                None => return fail("additive inverse"),
            }
            if a != 0 {
                match (1..q).find(|&b| self.mul(a, b) == 1) {
                    Some(b) => self.inv[a] = b as u8,
                    None => return fail("multiplicative inverse"),
                }
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity");
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn field_table(q: usize) -> Result<FieldTable> {
    FieldTable::new(q)
}

fn prime_tables(p: usize) -> (Vec<u8>, Vec<u8>) {
    let mut add = Vec::with_capacity(p * p);
    let mut mul = Vec::with_capacity(p * p);
    for a in 0..p {
        for b in 0..p {
            add.push(((a + b) % p) as u8);
            mul.push(((a * b) % p) as u8);
        }
    }
    (add, mul)
}

fn digits(mut x: usize, p: usize, e: usize) -> Vec<usize> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn label(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn extension_tables(p: usize, e: usize, modulus: &[usize]) -> (Vec<u8>, Vec<u8>) {
    let q = p.pow(e as u32);
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add.push(label(&sum, p) as u8);

            let mut prod = vec![0usize; 2 * e - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // Reduce modulo the monic modulus from the top degree down.
            for deg in (e..prod.len()).rev() {
                let lead = prod[deg];
                if lead == 0 {
                    continue;
                }
                for (i, &m) in modulus.iter().enumerate() {
                    let idx = deg - e + i;
                    prod[idx] = (prod[idx] + (p - lead) * m) % p;
                }
            }
            mul.push(label(&prod[..e], p) as u8);
        }
    }
    (add, mul)
}
