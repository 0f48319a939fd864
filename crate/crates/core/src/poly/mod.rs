//! Exact polynomial engines: Laurent polynomials in `A`, the
//! Bollobás–Riordan polynomial, and the Kauffman bracket.

mod br;
mod laurent;
mod rational;

use std::collections::BTreeMap;

pub use br::{br_polynomial, BrPoly};
pub use laurent::LaurentPoly;
pub use rational::RationalExpr;

use crate::error::{check_cap, Result};
use crate::skeleton::{Skeleton, Splice};

/// Anything with a crossing skeleton.
pub trait HasSkeleton {
    fn skeleton(&self) -> Skeleton;
    /// Checks the diagram is well-formed before polynomial work.
    fn check(&self) -> Result<()> {
        Ok(())
    }
}

impl HasSkeleton for crate::proj::ProjDiagram {
    fn skeleton(&self) -> Skeleton {
        crate::proj::ProjDiagram::skeleton(self)
    }
    fn check(&self) -> Result<()> {
        self.validate()
    }
}

impl HasSkeleton for crate::virtual_diagram::GaussDiagram {
    fn skeleton(&self) -> Skeleton {
        crate::virtual_diagram::GaussDiagram::skeleton(self)
    }
}

/// `<D> = sum over states of A^(#A - #B) d^(curves - 1)`.
pub fn kauffman_bracket<D: HasSkeleton>(diagram: &D, max_crossings: usize) -> Result<LaurentPoly> {
    diagram.check()?;
    let k = diagram.skeleton();
    check_cap("crossing", k.crossing_count(), max_crossings.min(40))?;
    let n = k.crossing_count() as i32;
    let tallies: BTreeMap<(i32, usize), i64> = k
        .par_states(|s| {
            let b = s.iter().filter(|&&x| x == Splice::B).count() as i32;
            (n - 2 * b, k.state_curve_count(&s))
        })
        .into_iter()
        .fold(BTreeMap::new(), |mut m, key| {
            *m.entry(key).or_insert(0) += 1;
            m
        });
    let d = LaurentPoly::d();
    let mut out = LaurentPoly::zero();
    for ((a_power, curves), count) in tallies {
        let term = &d.pow(curves as u32 - 1) * &LaurentPoly::monomial(count, a_power);
        out = &out + &term;
    }
    Ok(out)
}

/// The bracket through the all-A ribbon graph:
/// `d^(k - 1) A^(n - r) R(-A^4, A^-2 d, d^-1, 1)`.
pub fn bracket_via_br<D: HasSkeleton>(diagram: &D, max_crossings: usize) -> Result<LaurentPoly> {
    diagram.check()?;
    let k = diagram.skeleton();
    check_cap("crossing", k.crossing_count(), max_crossings.min(40))?;
    let labels: Vec<String> = (0..k.crossing_count()).map(|i| i.to_string()).collect();
    let all_a = k.state_graph(&labels, &vec![Splice::A; k.crossing_count()]);
    let full = all_a.subset_stats(all_a.full_mask());
    let r = br_polynomial(&all_a, usize::MAX)?.evaluate_bracket_point()?;
    let prefactor = &LaurentPoly::d().pow(full.k as u32 - 1) * &LaurentPoly::monomial(1, full.n as i32 - full.r as i32);
    (&RationalExpr::from(prefactor) * &r).to_laurent()
}
