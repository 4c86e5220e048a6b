//! Irreducibility of diagram pairs: the local test, the closed-form
//! classification for pairs meeting `{d-1, ...}^2`, and digraph sources.

use serde::Serialize;

use crate::diagram::{enumerate_order, families, nu_min_cols, DiagramPair, FerrersDiagram, Point, StandardForm};
use crate::exec::{self, RunOptions};
use crate::young_digraph::{self, YoungDigraph};
use crate::{Error, Result};

/// Largest `max_order` accepted by [`enumerate_irreducible`] without force.
pub const MAX_ENUMERATION_ORDER: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Local,
    Classified,
    Digraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Addible,
    Removable,
}

/// A single-point modification showing that a pair is reducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub point: Point,
    pub kind: PointKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    pub nu_profile: Vec<usize>,
    pub standard_form: Option<StandardForm>,
}

/// Outcome of the classification theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classified {
    /// `(d-1, d-1)` is not in the diagram; the theorem says nothing.
    PremiseNotMet,
    Verdict(IrreducibilityVerdict),
}

impl Classified {
    pub fn verdict(&self) -> Option<&IrreducibilityVerdict> {
        match self {
            Classified::PremiseNotMet => None,
            Classified::Verdict(v) => Some(v),
        }
    }
}

/// Local characterization: every addible point keeps `nu_min` and every
/// removable point lowers it by one. Witnesses scan addible points in
/// row-major order, then removable ones.
pub fn is_irreducible_local(pair: &DiagramPair) -> IrreducibilityVerdict {
    let witness = local_witness(&pair.diagram, pair.d, None);
    IrreducibilityVerdict {
        irreducible: witness.is_none(),
        method: Method::Local,
        witness,
        nu_profile: pair.nu_profile(),
        standard_form: pair.standard_form().ok().flatten(),
    }
}

/// The local test inside `[n] x [n]`: addible points leaving the square are
/// ignored. This decides whether the pair is a source of the order-`n`
/// digraph.
pub fn is_n_irreducible_local(pair: &DiagramPair, n: usize) -> Result<IrreducibilityVerdict> {
    if pair.diagram.proper_order() > n {
        return Err(Error::domain(format!("({}) does not fit in order {n}", pair.diagram)));
    }
    let witness = local_witness(&pair.diagram, pair.d, Some(n));
    Ok(IrreducibilityVerdict {
        irreducible: witness.is_none(),
        method: Method::Local,
        witness,
        nu_profile: pair.nu_profile(),
        standard_form: pair.standard_form().ok().flatten(),
    })
}

fn local_witness(diagram: &FerrersDiagram, d: usize, order: Option<usize>) -> Option<Witness> {
    let base = nu_min_cols(diagram.columns(), d);
    let fits = |(i, j): Point| order.is_none_or(|n| i <= n && j <= n);
    for p in diagram.addible_points().into_iter().filter(|&p| fits(p)) {
        let bigger = diagram.with_point(p).expect("addible point");
        if nu_min_cols(bigger.columns(), d) != base {
            return Some(Witness { point: p, kind: PointKind::Addible });
        }
    }
    for p in diagram.removable_points() {
        let smaller = diagram.without_point(p).expect("removable point");
        if nu_min_cols(smaller.columns(), d) + 1 != base {
            return Some(Witness { point: p, kind: PointKind::Removable });
        }
    }
    None
}

/// Closed-form classification for pairs with `(d-1, d-1)` in the diagram.
///
/// Both the `nu`-profile statement and the equivalent `X`/`Y` inequality
/// statement are evaluated; disagreement is reported as an invariant error.
pub fn is_irreducible_classified(pair: &DiagramPair) -> Result<Classified> {
    let d = pair.d;
    if d < 2 {
        return Err(Error::domain(format!("classification needs d >= 2, got {d}")));
    }
    if !pair.diagram.contains((d - 1, d - 1)) {
        return Ok(Classified::PremiseNotMet);
    }
    let nu = pair.nu_profile();
    let sf = pair.standard_form()?;
    let irreducible = match &sf {
        None => false,
        Some(sf) => {
            let by_nu = profile_statement(sf, &nu);
            let by_xy = xy_statement(sf);
            if by_nu != by_xy {
                return Err(Error::invariant(format!(
                    "nu-profile and X/Y statements disagree on ({}, {d})",
                    pair.diagram
                )));
            }
            by_nu
        }
    };
    Ok(Classified::Verdict(IrreducibilityVerdict {
        irreducible,
        method: Method::Classified,
        witness: None,
        nu_profile: nu,
        standard_form: sf,
    }))
}

fn profile_statement(sf: &StandardForm, nu: &[usize]) -> bool {
    let d = sf.d;
    let inner = &nu[1..d - 1];
    nu[0] == nu[d - 1]
        && inner.iter().all(|&v| v >= nu[0])
        && (!(sf.a == d - 1 && sf.b == d - 1) || inner.contains(&nu[0]))
}

/// `j(b-a+d-1-j) + sum_{i<=j} c_{d-i}(X) - sum_{i<=j} c_i(Y)` for `j` in `[d-2]`.
pub(crate) fn xy_slacks(sf: &StandardForm) -> Vec<i64> {
    let d = sf.d as i64;
    let delta = sf.b as i64 - sf.a as i64;
    let mut sx = 0i64;
    let mut sy = 0i64;
    (1..sf.d - 1)
        .map(|j| {
            sx += sf.x(sf.d - j) as i64;
            sy += sf.y(j) as i64;
            let j = j as i64;
            j * (delta + d - 1 - j) + sx - sy
        })
        .collect()
}

fn xy_statement(sf: &StandardForm) -> bool {
    let d = sf.d;
    let size_x: i64 = sf.x_cols.iter().sum::<usize>() as i64;
    let size_y: i64 = sf.y_cols.iter().sum::<usize>() as i64;
    let delta = sf.b as i64 - sf.a as i64;
    let slacks = xy_slacks(sf);
    size_y - size_x == delta * (d as i64 - 1)
        && slacks.iter().all(|&s| s >= 0)
        && (!(sf.a == d - 1 && sf.b == d - 1) || slacks.contains(&0))
}

/// Verdict read off a built digraph: irreducible iff the diagram is a source.
pub fn digraph_verdict(g: &YoungDigraph, diagram: &FerrersDiagram) -> Result<IrreducibilityVerdict> {
    let i = g
        .index_of(diagram)
        .ok_or_else(|| Error::domain(format!("({diagram}) is not a vertex of the digraph")))?;
    Ok(IrreducibilityVerdict {
        irreducible: g.predecessors(i).is_empty(),
        method: Method::Digraph,
        witness: None,
        nu_profile: diagram.nu_profile(g.d()),
        standard_form: if g.d() >= 2 { diagram.standard_form(g.d())? } else { None },
    })
}

/// Nonempty diagrams of proper order `p <= max_order` that are sources of
/// the order-`p` digraph, in colexicographic order.
///
/// Candidates are drawn from diagrams containing `T_d` only. For `d >= 2`
/// the result is exactly the set of irreducible pairs.
pub fn enumerate_irreducible(d: usize, max_order: usize) -> Result<Vec<FerrersDiagram>> {
    enumerate_irreducible_with(d, max_order, RunOptions::default())
}

pub fn enumerate_irreducible_with(d: usize, max_order: usize, opts: RunOptions) -> Result<Vec<FerrersDiagram>> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    if max_order > MAX_ENUMERATION_ORDER && !opts.force {
        return Err(Error::resource(format!(
            "max_order {max_order} exceeds the guard {MAX_ENUMERATION_ORDER}; lower it or force"
        )));
    }
    let candidates = enumerate_order(max_order, &families::triangle(d));
    let keep = exec::map(opts.exec, &candidates, |c| {
        !c.is_empty() && local_witness(c, d, Some(c.proper_order())).is_none()
    });
    Ok(candidates.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect())
}

/// The `d = 3` family `{A_n, G_n : n >= 3} + {E_n, F_n : n >= 4}` cut at
/// proper order `max_n`.
pub fn d3_family(max_n: usize) -> Vec<FerrersDiagram> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        out.push(families::square(n));
        out.push(families::g(n).expect("n >= 3"));
        if n >= 4 {
            out.push(families::e(n).expect("n >= 4"));
            out.push(families::f(n).expect("n >= 4"));
        }
    }
    out.sort();
    out
}

/// True iff the enumerated `d = 3` irreducibles match [`d3_family`].
pub fn d3_families_check(max_n: usize) -> Result<bool> {
    let mut found = enumerate_irreducible(3, max_n)?;
    found.sort();
    Ok(found == d3_family(max_n))
}

/// Sources of the order-`n` digraph, via an explicit build.
pub fn digraph_sources(n: usize, d: usize, restricted: bool) -> Result<Vec<FerrersDiagram>> {
    Ok(young_digraph::build(n, d, restricted)?.sources())
}
