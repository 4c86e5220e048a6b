//! Facets, face lattices and f-vectors from a vertex list.
//!
//! A facet is the vertex set on which some inequality is tight, provided that
//! set spans an affine space of dimension `dim - 1`. Every nonempty face is
//! an intersection of facets, so the lattice is the closure of the facet
//! sets under intersection, plus the polytope itself.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use petgraph::graph::UnGraph;
use serde::Serialize;

use super::{linalg, vertices_closed_form, build_pd, q, Rational, RationalPolytope};
use crate::exec::{self, RunOptions};
use crate::{Error, Result};

/// Largest `d` whose face lattice is enumerated without `force`.
pub const MAX_FACE_LATTICE_D: usize = 7;

const MAX_FACES: usize = 5_000_000;

/// Vertex-facet incidence: `facets[f]` lists the vertex indices on facet `f`,
/// ascending. Facets are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

fn affine_dim_of(vertices: &[Vec<Rational>], members: impl Iterator<Item = usize>) -> Option<usize> {
    let members: Vec<usize> = members.collect();
    let (&first, rest) = members.split_first()?;
    let base = &vertices[first];
    let rows = rest.iter().map(|&i| {
        let diff: Vec<Rational> = vertices[i].iter().zip(base).map(|(a, b)| a - b).collect();
        let lcm = diff.iter().fold(1i128, |l, c| l.lcm(c.denom()));
        diff.iter().map(|c| (c.numer() * (lcm / c.denom())) as i64).collect()
    });
    Some(linalg::int_rank(rows))
}

pub fn vertex_facet_incidence(p: &RationalPolytope, vertices: &[Vec<Rational>]) -> Result<Incidence> {
    let n = vertices.len();
    if vertices.iter().any(|v| v.len() != p.dim) {
        return Err(Error::domain("vertex length differs from the polytope dimension"));
    }
    let Some(dim) = affine_dim_of(vertices, 0..n) else {
        return Ok(Incidence { n_vertices: 0, facets: Vec::new() });
    };
    let mut facets: Vec<Vec<usize>> = p
        .inequalities
        .iter()
        .map(|c| (0..n).filter(|&i| c.lhs(&vertices[i]) == c.rhs).collect::<Vec<_>>())
        .filter(|tight| dim > 0 && affine_dim_of(vertices, tight.iter().copied()) == Some(dim - 1))
        .collect();
    facets.sort();
    facets.dedup();
    Ok(Incidence { n_vertices: n, facets })
}

/// Face counts by dimension `0..=dim`; the last entry is the polytope itself.
pub fn f_vector(p: &RationalPolytope, vertices: &[Vec<Rational>]) -> Result<Vec<u64>> {
    f_vector_with(p, vertices, RunOptions::default())
}

pub fn f_vector_with(p: &RationalPolytope, vertices: &[Vec<Rational>], opts: RunOptions) -> Result<Vec<u64>> {
    let inc = vertex_facet_incidence(p, vertices)?;
    let n = inc.n_vertices;
    let Some(dim) = affine_dim_of(vertices, 0..n) else {
        return Ok(Vec::new());
    };
    let facet_sets: Vec<FixedBitSet> = inc
        .facets
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(n);
            f.iter().for_each(|&i| s.insert(i));
            s
        })
        .collect();
    let mut seen: HashSet<FixedBitSet> = facet_sets.iter().cloned().collect();
    let mut queue: Vec<FixedBitSet> = seen.iter().cloned().collect();
    while let Some(face) = queue.pop() {
        for facet in &facet_sets {
            let mut meet = face.clone();
            meet.intersect_with(facet);
            if !meet.is_clear() && !seen.contains(&meet) {
                if !opts.force && seen.len() >= MAX_FACES {
                    return Err(Error::resource(format!("face lattice exceeds {MAX_FACES} faces")));
                }
                seen.insert(meet.clone());
                queue.push(meet);
            }
        }
    }
    let mut whole = FixedBitSet::with_capacity(n);
    whole.insert_range(..);
    seen.insert(whole);
    let faces: Vec<FixedBitSet> = seen.into_iter().collect();
    let dims = exec::map(opts.exec, &faces, |f| affine_dim_of(vertices, f.ones()));
    let mut fv = vec![0u64; dim + 1];
    for d in dims.into_iter().flatten() {
        fv[d] += 1;
    }
    Ok(fv)
}

/// f-vector of `P_d` from its closed-form vertices.
pub fn pd_f_vector(d: usize, opts: RunOptions) -> Result<Vec<u64>> {
    if !opts.force && d > MAX_FACE_LATTICE_D {
        return Err(Error::resource(format!("face lattice of P_{d} is guarded at d <= {MAX_FACE_LATTICE_D}")));
    }
    let p = build_pd(d)?;
    let vertices: Vec<Vec<Rational>> =
        vertices_closed_form(d)?.into_iter().map(|v| v.into_iter().map(q).collect()).collect();
    f_vector_with(&p, &vertices, opts)
}

/// Coefficients of `(3 + 3t + t^2)^{d-2}`, the f-vector of a product of
/// `d - 2` triangles (constant term first).
pub fn product_of_triangles_fvector(d: usize) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(Error::domain(format!("need d >= 2, got {d}")));
    }
    let mut poly = vec![1u64];
    for _ in 0..d - 2 {
        let mut next = vec![0u64; poly.len() + 2];
        for (i, &c) in poly.iter().enumerate() {
            next[i] += 3 * c;
            next[i + 1] += 3 * c;
            next[i + 2] += c;
        }
        poly = next;
    }
    Ok(poly)
}

/// Incidence of `Δ_2^k`: vertices are words in `{0,1,2}^k` (index
/// `sum v_i 3^i`); facet `(i, j)` holds the words with `v_i != j`.
pub fn triangle_product_incidence(k: usize) -> Incidence {
    let n = 3usize.pow(k as u32);
    let digit = |v: usize, i: usize| (v / 3usize.pow(i as u32)) % 3;
    let mut facets: Vec<Vec<usize>> =
        (0..k).flat_map(|i| (0..3).map(move |j| (0..n).filter(|&v| digit(v, i) != j).collect())).collect();
    facets.sort();
    Incidence { n_vertices: n, facets }
}

fn bipartite(inc: &Incidence) -> UnGraph<bool, ()> {
    // Facets first: the matcher extends in node order, and the few dense
    // facet nodes prune far better than the isolated-looking vertices.
    let mut g = UnGraph::new_undirected();
    let fs: Vec<_> = inc.facets.iter().map(|_| g.add_node(true)).collect();
    let vs: Vec<_> = (0..inc.n_vertices).map(|_| g.add_node(false)).collect();
    for (facet, &f) in inc.facets.iter().zip(&fs) {
        for &v in facet {
            g.add_edge(f, vs[v], ());
        }
    }
    g
}

/// Whether the two vertex-facet incidences agree up to relabeling, which
/// determines the face lattice.
pub fn incidence_isomorphic(a: &Incidence, b: &Incidence) -> bool {
    if a.n_vertices != b.n_vertices || a.facets.len() != b.facets.len() {
        return false;
    }
    let mut sa: Vec<usize> = a.facets.iter().map(Vec::len).collect();
    let mut sb: Vec<usize> = b.facets.iter().map(Vec::len).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    petgraph::algo::is_isomorphic_matching(&bipartite(a), &bipartite(b), |x, y| x == y, |_, _| true)
}
