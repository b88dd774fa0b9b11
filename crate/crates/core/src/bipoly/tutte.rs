use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::BiPoly;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, EdgeSubset, Graph};

fn one_plus(var: BiPoly) -> BiPoly {
    &BiPoly::one() + &var
}

fn sign(n: usize) -> BiPoly {
    BiPoly::constant(if n % 2 == 0 { 1 } else { -1 })
}

/// Cached powers `base^0, base^1, …`.
struct Powers {
    base: BiPoly,
    cache: Vec<BiPoly>,
}

impl Powers {
    fn new(base: BiPoly) -> Self {
        Powers {
            base,
            cache: vec![BiPoly::one()],
        }
    }

    fn get(&mut self, n: usize) -> &BiPoly {
        while self.cache.len() <= n {
            let next = self.cache.last().unwrap() * &self.base;
            self.cache.push(next);
        }
        &self.cache[n]
    }
}

fn for_each_state(g: &Graph, mut f: impl FnMut(usize, usize, usize)) {
    let n = g.num_edges();
    assert!(n <= 30, "state sums are limited to 30 edges");
    for bits in 0u64..1 << n {
        let s = EdgeSubset::from_bits(bits, n);
        let summary = g.summary_unchecked(&s);
        f(s.height(), summary.b0, summary.b1);
    }
}

/// `T(G; x, y)` from the deletion–contraction axioms, always expanding the
/// lowest-index edge.
pub fn tutte_deletion_contraction(g: &Graph) -> BiPoly {
    if g.num_edges() == 0 {
        return BiPoly::one();
    }
    let deleted = g.delete_edge(0).expect("edge 0 exists");
    match g.classify_edge(0).expect("edge 0 exists") {
        EdgeKind::Loop => &BiPoly::y() * &tutte_deletion_contraction(&deleted),
        EdgeKind::Isthmus => &BiPoly::x() * &tutte_deletion_contraction(&deleted),
        EdgeKind::Ordinary => {
            let contracted = g.contract_edge(0).expect("edge 0 exists");
            &tutte_deletion_contraction(&deleted) + &tutte_deletion_contraction(&contracted)
        }
    }
}

/// `T(G; x, y) = Σ_s (x-1)^{r(E)-r(s)} (y-1)^{|s|-r(s)}`.
pub fn tutte_state_sum(g: &Graph) -> BiPoly {
    let v = g.num_vertices();
    let rank_e = v - g.num_components();
    let mut xs = Powers::new(&BiPoly::x() - &BiPoly::one());
    let mut ys = Powers::new(&BiPoly::y() - &BiPoly::one());
    let mut out = BiPoly::zero();
    for_each_state(g, |height, b0, _| {
        let rank_s = v - b0;
        let term = xs.get(rank_e - rank_s) * ys.get(height - rank_s);
        out = &out + &term;
    });
    out
}

/// `T̂(G; x, y) = Σ_s (-1)^{|s|} (1+x)^{b0(s)} (1+y)^{b1(s)}`.
pub fn tutte_hat(g: &Graph) -> BiPoly {
    let mut xs = Powers::new(one_plus(BiPoly::x()));
    let mut ys = Powers::new(one_plus(BiPoly::y()));
    let mut out = BiPoly::zero();
    for_each_state(g, |height, b0, b1| {
        let term = xs.get(b0) * ys.get(b1);
        out = if height % 2 == 0 {
            &out + &term
        } else {
            &out - &term
        };
    });
    out
}

/// `Σ_s (-1)^{|s|} (1+x)^{b0(s)}`: the chromatic polynomial at `λ = 1 + x`.
pub fn chromatic_state_sum(g: &Graph) -> BiPoly {
    let mut xs = Powers::new(one_plus(BiPoly::x()));
    let mut out = BiPoly::zero();
    for_each_state(g, |height, b0, _| {
        let term = xs.get(b0).clone();
        out = if height % 2 == 0 {
            &out + &term
        } else {
            &out - &term
        };
    });
    out
}

/// Recover `T(G)` from `T̂(G)`.
///
/// After `u = 1 + x`, `v = 1 + y` every state contributes `±u^{b0} v^{b1}`.
/// Adding an edge strictly raises `(-b0, b1)` in dictionary order, so the
/// empty state gives the unique least monomial `u^{|V|}` and the full edge set
/// the unique greatest one `±u^{b0(E)} v^{b1(E)}`. These fix `|V|` and
/// `b0(E)`, and then `T(x, y) = (-1)^{r(E)} T̂(-x, -y) / (1 - x)^{b0(E)}`.
pub fn recover_tutte(that: &BiPoly) -> Result<BiPoly> {
    let fail = |m: &str| Error::NotTutteHat(m.to_string());
    // T̃(u, v) = T̂(u - 1, v - 1)
    let tilde = that.substitute(
        &(&BiPoly::x() - &BiPoly::one()),
        &(&BiPoly::y() - &BiPoly::one()),
    );
    let complexity = |&(i, j, _): &(u32, u32, &BigInt)| (-(i as i64), j as i64);
    let least = tilde
        .terms()
        .min_by_key(complexity)
        .ok_or_else(|| fail("zero polynomial"))?;
    let greatest = tilde.terms().max_by_key(complexity).unwrap();
    let (vertices, j_min, c_min) = least;
    if j_min != 0 || !c_min.is_one() {
        return Err(fail("least term is not u^|V|"));
    }
    let (b0_full, _, c_max) = greatest;
    if !c_max.abs().is_one() {
        return Err(fail("greatest term does not have coefficient ±1"));
    }
    let rank = vertices
        .checked_sub(b0_full)
        .ok_or_else(|| fail("more components than vertices"))?;
    let divisor = (&BiPoly::one() - &BiPoly::x()).pow(b0_full);
    let quotient = that
        .negate_vars()
        .exact_divide(&divisor)
        .map_err(|_| fail("(1 - x)^b0 does not divide"))?;
    Ok(&sign(rank as usize) * &quotient)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DcIdentity {
    pub name: &'static str,
    pub holds: bool,
}

/// Which deletion–contraction identities for `T̂` were checked at an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DcReport {
    pub edge: usize,
    pub kind: EdgeKind,
    pub identities: Vec<DcIdentity>,
}

impl DcReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

/// Check the deletion–contraction identities of `T̂` at edge `e`:
/// non-loop `T̂(G) = T̂(G-e) - T̂(G/e)`; loop `T̂(G) = T̂(G-e) - (1+y)T̂(G/e)
/// = -y T̂(G/e)`; isthmus additionally `T̂(G-e) = (1+x) T̂(G/e)` and
/// `T̂(G) = x T̂(G/e)`.
pub fn dc_identities_hat(g: &Graph, e: usize) -> Result<DcReport> {
    let kind = g.classify_edge(e)?;
    let whole = tutte_hat(g);
    let del = tutte_hat(&g.delete_edge(e)?);
    let con = tutte_hat(&g.contract_edge(e)?);
    let mut identities = Vec::new();
    let mut push = |name, holds| identities.push(DcIdentity { name, holds });
    match kind {
        EdgeKind::Loop => {
            let one_y = one_plus(BiPoly::y());
            push("T(G) = T(G-e) - (1+y) T(G/e)", whole == &del - &(&one_y * &con));
            push("T(G) = -y T(G/e)", whole == -&(&BiPoly::y() * &con));
        }
        EdgeKind::Isthmus | EdgeKind::Ordinary => {
            push("T(G) = T(G-e) - T(G/e)", whole == &del - &con);
            if kind == EdgeKind::Isthmus {
                push("T(G) = x T(G/e)", whole == &BiPoly::x() * &con);
                push("T(G-e) = (1+x) T(G/e)", del == &one_plus(BiPoly::x()) * &con);
            }
        }
    }
    Ok(DcReport {
        edge: e,
        kind,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn p(terms: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(k, c)| (k, c)))
    }

    fn k3() -> Graph {
        generate_family(Family::Complete, 3).unwrap()
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(tutte_deletion_contraction(&Graph::edgeless(4)), BiPoly::one());
        let l1 = generate_family(Family::Bouquet, 1).unwrap();
        assert_eq!(tutte_deletion_contraction(&l1), BiPoly::y());
        let k3_t = p(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(tutte_deletion_contraction(&k3()), k3_t);
        assert_eq!(tutte_state_sum(&k3()), k3_t);
        let p2 = generate_family(Family::Cycle, 2).unwrap();
        assert_eq!(tutte_state_sum(&p2), p(&[((1, 0), 1), ((0, 1), 1)]));
        let edge = generate_family(Family::TreePath, 1).unwrap();
        assert_eq!(tutte_state_sum(&edge), BiPoly::x());
    }

    #[test]
    fn tutte_hat_examples() {
        let l1 = generate_family(Family::Bouquet, 1).unwrap();
        assert_eq!(tutte_hat(&l1), p(&[((0, 1), -1), ((1, 1), -1)]));
        let p2 = generate_family(Family::Cycle, 2).unwrap();
        assert_eq!(
            tutte_hat(&p2),
            p(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)])
        );
        assert_eq!(
            tutte_hat(&k3()),
            p(&[((3, 0), 1), ((1, 0), -1), ((1, 1), -1), ((0, 1), -1)])
        );
    }

    #[test]
    fn recovery() {
        let l1 = generate_family(Family::Bouquet, 1).unwrap();
        assert_eq!(recover_tutte(&tutte_hat(&l1)).unwrap(), BiPoly::y());
        assert_eq!(
            recover_tutte(&tutte_hat(&k3())).unwrap(),
            tutte_deletion_contraction(&k3())
        );
        let edge = generate_family(Family::TreePath, 1).unwrap();
        assert_eq!(recover_tutte(&tutte_hat(&edge)).unwrap(), BiPoly::x());
        assert_eq!(recover_tutte(&BiPoly::one()).unwrap(), BiPoly::one());
    }

    #[test]
    fn recovery_rejects_garbage() {
        assert!(matches!(recover_tutte(&BiPoly::zero()), Err(Error::NotTutteHat(_))));
        assert!(matches!(
            recover_tutte(&BiPoly::constant(2)),
            Err(Error::NotTutteHat(_))
        ));
        // becomes u^2 - 2u - 2: greatest term has coefficient -2
        let bogus = &BiPoly::x().pow(2) - &BiPoly::constant(3);
        assert!(matches!(recover_tutte(&bogus), Err(Error::NotTutteHat(_))));
    }

    #[test]
    fn dc_identities() {
        for e in 0..3 {
            let r = dc_identities_hat(&k3(), e).unwrap();
            assert_eq!(r.kind, EdgeKind::Ordinary);
            assert!(r.all_hold());
        }
        let l1 = generate_family(Family::Bouquet, 1).unwrap();
        let r = dc_identities_hat(&l1, 0).unwrap();
        assert_eq!(r.kind, EdgeKind::Loop);
        assert_eq!(r.identities.len(), 2);
        assert!(r.all_hold());
        let edge = generate_family(Family::TreePath, 1).unwrap();
        let r = dc_identities_hat(&edge, 0).unwrap();
        assert_eq!(r.identities.len(), 3);
        assert!(r.all_hold());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_state_sum(&k3()), p(&[((3, 0), 1), ((1, 0), -1)]));
        assert_eq!(chromatic_state_sum(&Graph::edgeless(1)), p(&[((0, 0), 1), ((1, 0), 1)]));
        let edge = generate_family(Family::TreePath, 1).unwrap();
        assert_eq!(chromatic_state_sum(&edge), p(&[((1, 0), 1), ((2, 0), 1)]));
        assert_eq!(chromatic_state_sum(&k3()), tutte_hat(&k3()).at_y_zero());
    }

    /// Chromatic polynomial by counting proper colorings with λ colors,
    /// for λ = 1..=k, compared with the state sum evaluated at x = λ - 1.
    #[test]
    fn chromatic_matches_brute_force_colorings() {
        use num_traits::ToPrimitive;
        let graphs = [
            k3(),
            generate_family(Family::Cycle, 4).unwrap(),
            generate_family(Family::Theta, 4).unwrap(),
            Graph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap(),
        ];
        for g in &graphs {
            let poly = chromatic_state_sum(g);
            for lambda in 1usize..=4 {
                let n = g.num_vertices() as u32;
                let mut count = 0i64;
                for code in 0..lambda.pow(n) {
                    let color = |v: usize| code / lambda.pow(v as u32) % lambda;
                    if g.edges().iter().all(|&(u, v)| color(u) != color(v)) {
                        count += 1;
                    }
                }
                let x = lambda as i64 - 1;
                let value: i64 = poly
                    .terms()
                    .map(|(i, _, c)| c.to_i64().unwrap() * x.pow(i))
                    .sum();
                assert_eq!(value, count, "{g} at λ={lambda}");
            }
        }
    }
}
