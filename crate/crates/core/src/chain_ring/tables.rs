//! Operation tables for small rings, used by the enumeration engine.

use super::Ring;

/// Rings up to this order get full addition/subtraction/multiplication tables.
pub(crate) const TABLE_LIMIT: u64 = 1024;

pub(crate) struct Tables {
    n: usize,
    add: Vec<u32>,
    sub: Vec<u32>,
    mul: Vec<u32>,
}

impl Tables {
    pub(crate) fn build(ring: &Ring) -> Option<Tables> {
        let n = ring.order();
        if n > TABLE_LIMIT {
            return None;
        }
        let n = n as usize;
        let mut add = Vec::with_capacity(n * n);
        let mut sub = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n as u64 {
            for b in 0..n as u64 {
                add.push(ring.add_code(a, b) as u32);
                sub.push(ring.sub_code(a, b) as u32);
                mul.push(ring.mul_code(a, b) as u32);
            }
        }
        Some(Tables { n, add, sub, mul })
    }
}

/// Code-level arithmetic that goes through the tables when they exist.
#[derive(Clone, Copy)]
pub(crate) struct Arith<'a> {
    ring: &'a Ring,
    tables: Option<&'a Tables>,
}

impl<'a> Arith<'a> {
    pub(crate) fn new(ring: &'a Ring, tables: Option<&'a Tables>) -> Self {
        Arith { ring, tables }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match self.tables {
            Some(t) => t.add[a as usize * t.n + b as usize] as u64,
            None => self.ring.add_code(a, b),
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        match self.tables {
            Some(t) => t.sub[a as usize * t.n + b as usize] as u64,
            None => self.ring.sub_code(a, b),
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match self.tables {
            Some(t) => t.mul[a as usize * t.n + b as usize] as u64,
            None => self.ring.mul_code(a, b),
        }
    }

    #[inline]
    pub(crate) fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }
}
