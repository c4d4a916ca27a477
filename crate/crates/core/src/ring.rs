//! The ring of double numbers GF(q) x GF(q).
//!
//! Elements are pairs `[a,b]` with componentwise addition and
//! multiplication. The idempotent is fixed as `e = [0,1]`, so the two
//! maximal ideals are `<e> = {[0,b]}` and `<e-1> = {[a,0]}`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElem {
    pub a: Elem,
    pub b: Elem,
}

impl RingElem {
    pub const fn new(a: Elem, b: Elem) -> Self {
        RingElem { a, b }
    }

    /// Swaps the components; this is the ring automorphism exchanging `e`
    /// and `1 - e`.
    pub const fn swapped(self) -> Self {
        RingElem { a: self.b, b: self.a }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Unit,
    /// A nonzero zero-divisor. Exactly one of the flags is set.
    ZeroDivisor {
        in_e: bool,
        in_e_minus_one: bool,
    },
    Zero,
}

impl Classification {
    pub fn is_unit(self) -> bool {
        self == Classification::Unit
    }

    /// Zero counts as a zero-divisor here.
    pub fn is_zero_divisor(self) -> bool {
        !self.is_unit()
    }
}

/// One of the two maximal ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    /// `<e> = {[0,b]}`
    E,
    /// `<e-1> = {[a,0]}`
    EMinusOne,
}

impl Ideal {
    pub const ALL: [Ideal; 2] = [Ideal::E, Ideal::EMinusOne];

    pub fn contains(self, x: RingElem) -> bool {
        match self {
            Ideal::E => x.a == 0,
            Ideal::EMinusOne => x.b == 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub total: u64,
    pub zero_divisors: u64,
    pub units: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRing {
    field: Arc<FieldCtx>,
}

impl DoubleRing {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        DoubleRing { field }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn zero(&self) -> RingElem {
        RingElem::new(0, 0)
    }

    pub fn one(&self) -> RingElem {
        RingElem::new(1, 1)
    }

    pub fn e(&self) -> RingElem {
        RingElem::new(0, 1)
    }

    pub fn e_minus_one(&self) -> RingElem {
        self.sub(self.e(), self.one())
    }

    /// Embeds a field element diagonally as `c * 1`.
    pub fn scalar(&self, c: Elem) -> RingElem {
        RingElem::new(c, c)
    }

    pub fn check(&self, x: RingElem) -> Result<RingElem> {
        self.field.check(x.a)?;
        self.field.check(x.b)?;
        Ok(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let q = self.order();
        (0..q).flat_map(move |a| (0..q).map(move |b| RingElem::new(a, b)))
    }

    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        RingElem::new(self.field.add(x.a, y.a), self.field.add(x.b, y.b))
    }

    pub fn neg(&self, x: RingElem) -> RingElem {
        RingElem::new(self.field.neg(x.a), self.field.neg(x.b))
    }

    pub fn sub(&self, x: RingElem, y: RingElem) -> RingElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        RingElem::new(self.field.mul(x.a, y.a), self.field.mul(x.b, y.b))
    }

    pub fn inv(&self, x: RingElem) -> Result<RingElem> {
        self.check(x)?;
        if !self.classify(x).is_unit() {
            return Err(Error::domain(format!("{x} is not a unit")));
        }
        Ok(RingElem::new(self.field.inv(x.a)?, self.field.inv(x.b)?))
    }

    pub fn classify(&self, x: RingElem) -> Classification {
        match (x.a == 0, x.b == 0) {
            (false, false) => Classification::Unit,
            (true, true) => Classification::Zero,
            (in_e, in_e_minus_one) => Classification::ZeroDivisor { in_e, in_e_minus_one },
        }
    }

    pub fn is_unit(&self, x: RingElem) -> bool {
        x.a != 0 && x.b != 0
    }

    pub fn units(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.elements().filter(|&x| self.is_unit(x))
    }

    pub fn ideal_members(&self, ideal: Ideal) -> Vec<RingElem> {
        self.elements().filter(|&x| ideal.contains(x)).collect()
    }

    /// Counts by classifying every element.
    pub fn census(&self) -> Census {
        let mut c = Census { total: 0, zero_divisors: 0, units: 0 };
        for x in self.elements() {
            c.total += 1;
            if self.classify(x).is_unit() {
                c.units += 1;
            } else {
                c.zero_divisors += 1;
            }
        }
        c
    }
}
