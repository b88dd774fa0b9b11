//! Bigraded coefficient data: the algebra `A` that colors components, the
//! module `B` that is tensored once per independent cycle, and the degree
//! `(0,0)` element `b₀` appended whenever an edge closes a cycle.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A commutative bigraded algebra over the integers given by a basis and a
/// table of structure constants: `mult[a][b]` is the coordinate vector of
/// `e_a · e_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedAlgebra {
    pub basis: Vec<String>,
    pub degrees: Vec<Bidegree>,
    pub mult: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

/// A bigraded module with a distinguished element `b₀`. No multiplication is
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedModule {
    pub basis: Vec<String>,
    pub degrees: Vec<Bidegree>,
    pub b0: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    pub name: String,
    pub algebra: BigradedAlgebra,
    pub module: BigradedModule,
}

/// Outcome of [`CoefficientSystem::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn qdim_of(degrees: &[Bidegree]) -> BiPoly {
    let mut out = BiPoly::zero();
    for d in degrees {
        if d.p >= 0 && d.q >= 0 {
            out = &out + &BiPoly::monomial(d.p as u32, d.q as u32, 1);
        }
    }
    out
}

impl BigradedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self, a: usize, b: usize) -> &[i64] {
        &self.mult[a][b]
    }

    pub fn qdim(&self) -> BiPoly {
        qdim_of(&self.degrees)
    }

    /// Basis index of the unit when the unit is itself a basis vector.
    pub fn unit_basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.unit.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Basis indices spanning `A'` in `A = Z·1 ⊕ A'`, when the unit is a
    /// basis vector.
    pub fn augmentation_complement(&self) -> Option<Vec<usize>> {
        let u = self.unit_basis_index()?;
        Some((0..self.dim()).filter(|&i| i != u).collect())
    }

    fn mul_vec(&self, lhs: &[i64], rhs: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0i64; n];
        for (a, &ca) in lhs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in rhs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                for (k, &m) in self.mult[a][b].iter().enumerate() {
                    out[k] += ca * cb * m;
                }
            }
        }
        out
    }

    fn check(&self, out: &mut Vec<String>) {
        let n = self.dim();
        if n == 0 {
            out.push("A has an empty basis".into());
            return;
        }
        if self.degrees.len() != n {
            out.push(format!("A has {} degrees for {n} basis elements", self.degrees.len()));
            return;
        }
        if self.unit.len() != n {
            out.push(format!("A unit has length {}, expected {n}", self.unit.len()));
            return;
        }
        if self.mult.len() != n
            || self
                .mult
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            out.push(format!("A multiplication table is not {n}x{n}x{n}"));
            return;
        }
        for (i, d) in self.degrees.iter().enumerate() {
            if d.p < 0 || d.q < 0 {
                out.push(format!("A basis element `{}` has negative degree {d}", self.basis[i]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for (k, &m) in self.mult[a][b].iter().enumerate() {
                    if m != 0 && self.degrees[k] != self.degrees[a] + self.degrees[b] {
                        out.push(format!(
                            "A product {}*{} has a component on {} of the wrong degree",
                            self.basis[a], self.basis[b], self.basis[k]
                        ));
                    }
                }
                if self.mult[a][b] != self.mult[b][a] {
                    out.push(format!(
                        "A is not commutative: {}*{} != {}*{}",
                        self.basis[a], self.basis[b], self.basis[b], self.basis[a]
                    ));
                }
            }
        }
        for (k, &c) in self.unit.iter().enumerate() {
            if c != 0 && self.degrees[k] != Bidegree::ZERO {
                out.push("A unit is not homogeneous of degree (0,0)".into());
                break;
            }
        }
        let e = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        for b in 0..n {
            if self.mul_vec(&self.unit, &e(b)) != e(b) {
                out.push(format!("unit does not act as identity on {}", self.basis[b]));
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul_vec(&self.mult[a][b], &e(c));
                    let right = self.mul_vec(&e(a), &self.mult[b][c]);
                    if left != right {
                        out.push(format!(
                            "A is not associative: witness ({}, {}, {})",
                            self.basis[a], self.basis[b], self.basis[c]
                        ));
                        break 'assoc;
                    }
                }
            }
        }
    }
}

impl BigradedModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn qdim(&self) -> BiPoly {
        qdim_of(&self.degrees)
    }

    fn check(&self, out: &mut Vec<String>) {
        let n = self.dim();
        if n == 0 {
            out.push("B has an empty basis".into());
            return;
        }
        if self.degrees.len() != n {
            out.push(format!("B has {} degrees for {n} basis elements", self.degrees.len()));
            return;
        }
        if self.b0.len() != n {
            out.push(format!("b0 has length {}, expected {n}", self.b0.len()));
            return;
        }
        for (i, d) in self.degrees.iter().enumerate() {
            if d.p < 0 || d.q < 0 {
                out.push(format!("B basis element `{}` has negative degree {d}", self.basis[i]));
            }
        }
        for (k, &c) in self.b0.iter().enumerate() {
            if c != 0 && self.degrees[k] != Bidegree::ZERO {
                out.push(format!(
                    "b0 has a component on `{}` of degree {}; the append map is not degree preserving",
                    self.basis[k], self.degrees[k]
                ));
            }
        }
    }
}

fn truncated_polynomial_algebra(var: &str, deg: Bidegree) -> BigradedAlgebra {
    BigradedAlgebra {
        basis: vec!["1".into(), var.into()],
        degrees: vec![Bidegree::ZERO, deg],
        mult: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        unit: vec![1, 0],
    }
}

impl CoefficientSystem {
    /// `A = Z[x]/(x²)`, `B = Z[y]/(y²)` with `deg x = (1,0)`, `deg y = (0,1)`
    /// and `b₀ = 1`.
    pub fn default_system() -> Self {
        CoefficientSystem {
            name: "default".into(),
            algebra: truncated_polynomial_algebra("x", Bidegree::new(1, 0)),
            module: BigradedModule {
                basis: vec!["1".into(), "y".into()],
                degrees: vec![Bidegree::ZERO, Bidegree::new(0, 1)],
                b0: vec![1, 0],
            },
        }
    }

    /// Same `A`, `B = Z` in degree `(0,0)`, `b₀ = 1`.
    pub fn chromatic_system() -> Self {
        CoefficientSystem {
            name: "chromatic".into(),
            algebra: truncated_polynomial_algebra("x", Bidegree::new(1, 0)),
            module: BigradedModule {
                basis: vec!["1".into()],
                degrees: vec![Bidegree::ZERO],
                b0: vec![1],
            },
        }
    }

    /// Default `A` and `B` with `b₀ = 0`.
    pub fn zero_b0_system() -> Self {
        let mut s = CoefficientSystem::default_system();
        s.name = "zero-b0".into();
        s.module.b0 = vec![0, 0];
        s
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default_system()),
            "chromatic" => Some(Self::chromatic_system()),
            "zero-b0" => Some(Self::zero_b0_system()),
            _ => None,
        }
    }

    pub fn builtins() -> Vec<Self> {
        vec![
            Self::default_system(),
            Self::chromatic_system(),
            Self::zero_b0_system(),
        ]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        self.algebra.check(&mut violations);
        self.module.check(&mut violations);
        ValidationReport { violations }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSystem(report.violations.join("; ")))
        }
    }

    /// `qdim(A^{⊗m} ⊗ B^{⊗n}) = qdim(A)^m qdim(B)^n`.
    pub fn qdim_tensor(&self, a_factors: u32, b_factors: u32) -> BiPoly {
        &self.algebra.qdim().pow(a_factors) * &self.module.qdim().pow(b_factors)
    }

    /// Parse the JSON description of a custom system and validate it.
    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let raw: RawSystem = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let deg = |v: Vec<[i32; 2]>| v.into_iter().map(|[p, q]| Bidegree::new(p, q)).collect();
        let system = CoefficientSystem {
            name: name.to_string(),
            algebra: BigradedAlgebra {
                basis: raw.a.basis,
                degrees: deg(raw.a.deg),
                mult: raw.a.mult,
                unit: raw.a.unit,
            },
            module: BigradedModule {
                basis: raw.b.basis,
                degrees: deg(raw.b.deg),
                b0: raw.b.b0,
            },
        };
        system.ensure_valid()?;
        Ok(system)
    }

    pub fn to_json(&self) -> String {
        let deg = |v: &[Bidegree]| v.iter().map(|d| [d.p, d.q]).collect();
        let raw = RawSystem {
            a: RawAlgebra {
                basis: self.algebra.basis.clone(),
                deg: deg(&self.algebra.degrees),
                mult: self.algebra.mult.clone(),
                unit: self.algebra.unit.clone(),
            },
            b: RawModule {
                basis: self.module.basis.clone(),
                deg: deg(&self.module.degrees),
                b0: self.module.b0.clone(),
            },
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    #[serde(rename = "A")]
    a: RawAlgebra,
    #[serde(rename = "B")]
    b: RawModule,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis: Vec<String>,
    deg: Vec<[i32; 2]>,
    mult: Vec<Vec<Vec<i64>>>,
    unit: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    basis: Vec<String>,
    deg: Vec<[i32; 2]>,
    b0: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_plus(p: BiPoly) -> BiPoly {
        &BiPoly::one() + &p
    }

    #[test]
    fn default_system_data() {
        let s = CoefficientSystem::default_system();
        assert!(s.validate().is_valid());
        assert_eq!(s.algebra.qdim(), one_plus(BiPoly::x()));
        assert_eq!(s.module.qdim(), one_plus(BiPoly::y()));
        assert_eq!(s.algebra.product(1, 1), &[0, 0]);
        assert_eq!(s.algebra.unit_basis_index(), Some(0));
        assert_eq!(s.algebra.augmentation_complement(), Some(vec![1]));
    }

    #[test]
    fn chromatic_and_zero_b0() {
        let c = CoefficientSystem::chromatic_system();
        assert!(c.validate().is_valid());
        assert_eq!(c.module.qdim(), BiPoly::one());
        for k in 0..5 {
            assert_eq!(c.qdim_tensor(0, k), BiPoly::one());
        }
        let z = CoefficientSystem::zero_b0_system();
        assert!(z.validate().is_valid());
        assert!(z.module.b0.iter().all(|&c| c == 0));
    }

    #[test]
    fn qdim_is_multiplicative() {
        let s = CoefficientSystem::default_system();
        assert_eq!(s.qdim_tensor(2, 0), one_plus(BiPoly::x()).pow(2));
        assert_eq!(
            s.qdim_tensor(1, 1),
            &one_plus(BiPoly::x()) * &one_plus(BiPoly::y())
        );
        assert_eq!(s.qdim_tensor(0, 0), BiPoly::one());
        for m in 0..3 {
            for n in 0..3 {
                assert_eq!(
                    s.qdim_tensor(m + 1, n),
                    &s.qdim_tensor(m, n) * &s.algebra.qdim()
                );
            }
        }
    }

    #[test]
    fn b0_of_wrong_degree_is_rejected() {
        let mut s = CoefficientSystem::default_system();
        s.module.b0 = vec![0, 1];
        let r = s.validate();
        assert!(!r.is_valid());
        assert!(r.violations[0].contains("not degree preserving"));
    }

    #[test]
    fn non_associative_table_has_witness() {
        // basis {1, a, b} all in degree 0, a*a = b, a*b = 0, b*b = a:
        // (a a) b = b b = a but a (a b) = 0.
        let mut s = CoefficientSystem::default_system();
        s.algebra = BigradedAlgebra {
            basis: vec!["1".into(), "a".into(), "b".into()],
            degrees: vec![Bidegree::ZERO; 3],
            mult: vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 1, 0]],
            ],
            unit: vec![1, 0, 0],
        };
        let r = s.validate();
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].contains("not associative"));
        assert!(r.violations[0].contains("witness (a, a, b)"));
    }

    #[test]
    fn other_violations() {
        let mut s = CoefficientSystem::default_system();
        s.algebra.mult[0][1] = vec![1, 0];
        let r = s.validate();
        assert!(r.violations.iter().any(|v| v.contains("wrong degree")));
        assert!(r.violations.iter().any(|v| v.contains("not commutative")));

        let mut s = CoefficientSystem::default_system();
        s.algebra.unit = vec![0, 1];
        assert!(!s.validate().is_valid());

        let mut s = CoefficientSystem::default_system();
        s.algebra.mult.pop();
        assert!(s.validate().violations[0].contains("multiplication table"));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let s = CoefficientSystem::default_system();
        let back = CoefficientSystem::from_json("default", &s.to_json()).unwrap();
        assert_eq!(back, s);

        // Z[x]/(x^3) with deg x = (1,0)
        let cubic = r#"{
            "A": {"basis": ["1","x","x2"], "deg": [[0,0],[1,0],[2,0]],
                  "mult": [[[1,0,0],[0,1,0],[0,0,1]],
                           [[0,1,0],[0,0,1],[0,0,0]],
                           [[0,0,1],[0,0,0],[0,0,0]]],
                  "unit": [1,0,0]},
            "B": {"basis": ["1","y"], "deg": [[0,0],[0,1]], "b0": [1,0]}
        }"#;
        let c = CoefficientSystem::from_json("cubic", cubic).unwrap();
        assert_eq!(c.algebra.dim(), 3);

        let bad = cubic.replace("\"b0\": [1,0]", "\"b0\": [0,1]");
        assert!(matches!(
            CoefficientSystem::from_json("bad", &bad),
            Err(Error::InvalidSystem(_))
        ));
        assert!(matches!(
            CoefficientSystem::from_json("x", "{"),
            Err(Error::Json(_))
        ));
    }
}
