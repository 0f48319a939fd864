use std::collections::BTreeMap;
use std::ops::Mul;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{LaurentPoly, RationalExpr};
use crate::error::{check_cap, Error, Result};
use crate::ribbon::SignedRibbonGraph;

/// A polynomial in `x, y, z, w` with integer coefficients, keyed by the
/// exponent vector `[i, j, l, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BrPoly {
    terms: BTreeMap<[u32; 4], i64>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

impl BrPoly {
    pub fn add_term(&mut self, exps: [u32; 4], c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 4], i64)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 4], i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, exps: [u32; 4]) -> i64 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    /// Substitutes `z = w = 1`, leaving a polynomial in `x, y`.
    pub fn at_z_w_one(&self) -> BTreeMap<(u32, u32), i64> {
        let mut out: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for ([i, j, _, _], c) in self.terms() {
            *out.entry((i, j)).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Evaluates at `x = -A^4`, `y = A^-2 d`, `z = d^-1`, `w = 1`.
    pub fn evaluate_bracket_point(&self) -> Result<RationalExpr> {
        let d = LaurentPoly::d();
        let top = self.terms.keys().map(|e| e[2]).max().unwrap_or(0);
        let x = LaurentPoly::monomial(-1, 4);
        let y = d.shift(-2);
        let mut num = LaurentPoly::zero();
        for ([i, j, l, _], c) in self.terms() {
            let t = &(&x.pow(i) * &y.pow(j)) * &d.pow(top - l);
            num = &num + &(&t * &LaurentPoly::monomial(c, 0));
        }
        RationalExpr::new(num, d.pow(top))
    }

    /// `{"terms": [{"x": i, "y": j, "z": l, "w": m, "c": coefficient}, ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|([x, y, z, w], c)| json!({"x": x, "y": y, "z": z, "w": w, "c": c}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected {\"terms\": [...]}".into()))?;
        let mut p = Self::default();
        for t in terms {
            let get = |k: &str| {
                t.get(k)
                    .and_then(Value::as_u64)
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent {k}")))
            };
            let c = t
                .get("c")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("bad coefficient".into()))?;
            p.add_term([get("x")?, get("y")?, get("z")?, get("w")?], c);
        }
        Ok(p)
    }
}

impl Mul for &BrPoly {
    type Output = BrPoly;
    fn mul(self, rhs: &BrPoly) -> BrPoly {
        let mut out = BrPoly::default();
        for (a, c) in self.terms() {
            for (b, d) in rhs.terms() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], c * d);
            }
        }
        out
    }
}

/// `R(G) = sum over A of (x-1)^(r(E)-r(A)) y^n(A) z^(k(A)-bc(A)+n(A)) w^t(A)`.
pub fn br_polynomial(g: &SignedRibbonGraph, max_edges: usize) -> Result<BrPoly> {
    check_cap("edge", g.edge_count(), max_edges.min(40))?;
    let r_full = g.subset_stats(g.full_mask()).r as u32;
    let tallies: BTreeMap<[u32; 4], i64> = (0..=g.full_mask())
        .into_par_iter()
        .map(|mask| {
            let s = g.subset_stats(mask);
            let genus = (s.k + s.n - s.bc) as u32;
            [r_full - s.r as u32, s.n as u32, genus, s.t as u32]
        })
        .fold(BTreeMap::new, |mut m, key| {
            *m.entry(key).or_insert(0) += 1;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = BrPoly::default();
    for ([p, j, l, m], count) in tallies {
        // (x - 1)^p
        for i in 0..=p {
            let sign = if (p - i) % 2 == 0 { 1 } else { -1 };
            out.add_term([i, j, l, m], count * sign * binomial(p, i));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> SignedRibbonGraph {
        SignedRibbonGraph::parse_notation(s).unwrap()
    }

    #[test]
    fn edgeless_graph() {
        assert_eq!(br_polynomial(&g(""), 16).unwrap(), BrPoly::from_terms([([0, 0, 0, 0], 1)]));
    }

    #[test]
    fn single_bridge_is_x() {
        assert_eq!(br_polynomial(&g("e>; e>"), 16).unwrap(), BrPoly::from_terms([([1, 0, 0, 0], 1)]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(6, 6), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = br_polynomial(&g("a> b> a> b<"), 16).unwrap();
        assert_eq!(BrPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn cap() {
        assert!(matches!(br_polynomial(&g("a> a> b> b>"), 1), Err(Error::CapExceeded { .. })));
    }
}
