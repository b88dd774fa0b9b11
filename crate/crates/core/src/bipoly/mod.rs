//! Sparse bivariate integer polynomials and the Tutte-type polynomials of a
//! graph.

mod tutte;

pub use tutte::{
    chromatic_state_sum, dc_identities_hat, recover_tutte, tutte_deletion_contraction,
    tutte_hat, tutte_state_sum, DcIdentity, DcReport,
};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial in `x` and `y` with integer coefficients. The term map never
/// stores a zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, 1)
    }

    pub fn monomial(i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
        C: Into<BigInt>,
    {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c.into());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut out = BiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `p(-x, -y)`.
    pub fn negate_vars(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), if (i + j) % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiply every monomial by `x^dp y^dq`.
    pub fn shift(&self, dp: u32, dq: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + dp, j + dq), c.clone()))
                .collect(),
        }
    }

    /// `p(x_sub, y_sub)`.
    pub fn substitute(&self, x_sub: &BiPoly, y_sub: &BiPoly) -> BiPoly {
        let mut x_pows: Vec<BiPoly> = vec![BiPoly::one()];
        let mut y_pows: Vec<BiPoly> = vec![BiPoly::one()];
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            while x_pows.len() <= i as usize {
                let next = x_pows.last().unwrap() * x_sub;
                x_pows.push(next);
            }
            while y_pows.len() <= j as usize {
                let next = y_pows.last().unwrap() * y_sub;
                y_pows.push(next);
            }
            let term = &(&x_pows[i as usize] * &y_pows[j as usize]) * &BiPoly::constant(c.clone());
            out = &out + &term;
        }
        out
    }

    /// Set `y = 0`.
    pub fn at_y_zero(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, j), _)| j == 0)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    /// Quotient `self / divisor`, failing unless the division is exact.
    pub fn exact_divide(&self, divisor: &BiPoly) -> Result<BiPoly> {
        let ((di, dj), dc) = divisor.leading().ok_or(Error::InexactDivision)?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quotient = BiPoly::zero();
        while let Some(((ri, rj), rc)) = rem.leading() {
            if ri < di || rj < dj {
                return Err(Error::InexactDivision);
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let t = BiPoly::monomial(ri - di, rj - dj, q);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Ok(quotient)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

fn monomial_str(i: u32, j: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var("x", i), var("y", j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for BiPoly {
    /// Terms in increasing `(i, j)` order, e.g. `-y - x*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let mono = monomial_str(i, j);
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Serialize an integer as a JSON number when it fits in 64 bits, otherwise
/// as a decimal string.
pub(crate) fn serialize_bigint<S: Serializer>(
    c: &BigInt,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c.to_i64() {
        Some(v) => serializer.serialize_i64(v),
        None => serializer.serialize_str(&c.to_string()),
    }
}

struct JsonTerm<'a>(u32, u32, &'a BigInt);

impl Serialize for JsonTerm<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct C<'a>(&'a BigInt);
        impl Serialize for C<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, serializer)
            }
        }
        let mut st = serializer.serialize_struct("Term", 3)?;
        st.serialize_field("i", &self.0)?;
        st.serialize_field("j", &self.1)?;
        st.serialize_field("c", &C(self.2))?;
        st.end()
    }
}

impl Serialize for BiPoly {
    /// A list of `{"i", "j", "c"}` objects sorted by `(i, j)`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            seq.serialize_element(&JsonTerm(i, j, c))?;
        }
        seq.end()
    }
}
