//! Structural operations: projectives and injectives, tops and radicals,
//! minimal projective covers, syzygies, vector-space duality, the transpose,
//! and the translates tau and tau-inverse.

use super::rep::{cokernel_rep, kernel_rep, ModMorphism, ModuleRep};
use super::{opposite_algebra, AlgebraInstance};
use crate::fp::{col_vec, FpMat};
use std::collections::HashMap;
use std::sync::Arc;

/// Simple module concentrated at one vertex.
pub fn simple_module(alg: &Arc<AlgebraInstance>, v: usize) -> ModuleRep {
    let p = alg.field_char();
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|w| usize::from(w == v)).collect();
    let action = alg
        .presentation
        .arrows
        .iter()
        .map(|a| FpMat::zeros(p, dims[a.target], dims[a.source]))
        .collect();
    ModuleRep { alg: alg.clone(), dims, action }
}

/// Direct sum of indecomposable projectives P_{vertices[0]} + ..., together
/// with its basis layout: layout[w] lists, in column order, which
/// (copy, global path index) spans each coordinate of the vertex-w component.
pub fn proj_sum(
    alg: &Arc<AlgebraInstance>,
    vertices: &[usize],
) -> (ModuleRep, Vec<Vec<(usize, usize)>>) {
    let p = alg.field_char();
    let nv = alg.num_vertices();
    let mut layout: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (c, &v) in vertices.iter().enumerate() {
        for pi in alg.paths_from(v) {
            layout[alg.path_basis[pi].target].push((c, pi));
        }
    }
    // per-vertex position lookup
    let pos: Vec<HashMap<(usize, usize), usize>> = layout
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &k)| (k, i)).collect())
        .collect();
    let dims: Vec<usize> = layout.iter().map(|l| l.len()).collect();
    let action: Vec<FpMat> = alg
        .presentation
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = FpMat::zeros(p, dims[a.target], dims[a.source]);
            for (j, &(c, pi)) in layout[a.source].iter().enumerate() {
                let mut ext = alg.path_basis[pi].arrows.clone();
                ext.push(ai);
                if let Some(r) = alg.path_index(vertices[c], &ext) {
                    m.set(pos[a.target][&(c, r)], j, 1);
                }
            }
            m
        })
        .collect();
    (ModuleRep { alg: alg.clone(), dims, action }, layout)
}

/// Indecomposable projective at a vertex.
pub fn projective_module(alg: &Arc<AlgebraInstance>, v: usize) -> ModuleRep {
    proj_sum(alg, &[v]).0
}

/// The regular module, i.e. the sum of all indecomposable projectives.
pub fn regular_module(alg: &Arc<AlgebraInstance>) -> ModuleRep {
    proj_sum(alg, &(0..alg.num_vertices()).collect::<Vec<_>>()).0
}

/// The semisimple module with one copy of each simple.
pub fn semisimple_quotient_module(alg: &Arc<AlgebraInstance>) -> ModuleRep {
    let simples: Vec<ModuleRep> = (0..alg.num_vertices()).map(|v| simple_module(alg, v)).collect();
    ModuleRep::direct_sum(&simples.iter().collect::<Vec<_>>())
}

/// Columns spanning the radical component at each vertex: the sum of the
/// images of all arrows landing there.
fn radical_columns(m: &ModuleRep) -> Vec<FpMat> {
    let p = m.p();
    (0..m.dims.len())
        .map(|v| {
            let mut acc = FpMat::zeros(p, m.dims[v], 0);
            for (ai, a) in m.alg.presentation.arrows.iter().enumerate() {
                if a.target == v {
                    acc = acc.hstack(&m.action[ai]);
                }
            }
            let pivots = acc.clone().rref();
            acc.select_columns(&pivots)
        })
        .collect()
}

/// Radical submodule with its inclusion.
pub fn radical_submodule(m: &ModuleRep) -> (ModuleRep, ModMorphism) {
    super::rep::sub_rep(m, &radical_columns(m))
}

/// Dimension vector of top(m) = m / rad m.
pub fn top_dims(m: &ModuleRep) -> Vec<usize> {
    radical_columns(m)
        .iter()
        .enumerate()
        .map(|(v, r)| m.dims[v] - r.cols())
        .collect()
}

pub struct ProjCover {
    pub proj: ModuleRep,
    /// (vertex, lifted top basis vector in m_vertex), one entry per copy.
    pub copies: Vec<(usize, Vec<u64>)>,
    pub layout: Vec<Vec<(usize, usize)>>,
    pub cover: ModMorphism,
    pub kernel: ModuleRep,
    pub incl: ModMorphism,
}

/// Minimal projective cover P(m) -> m, built by lifting a basis of top(m).
pub fn projective_cover(m: &ModuleRep) -> ProjCover {
    let p = m.p();
    let alg = m.alg.clone();
    let rad = radical_columns(m);
    let mut copies: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in 0..m.dims.len() {
        // standard basis vectors extending the radical to all of m_v
        let ext = rad[v].hstack(&FpMat::identity(p, m.dims[v]));
        let pivots = ext.clone().rref();
        for &c in pivots.iter().filter(|&&c| c >= rad[v].cols()) {
            let mut e = vec![0u64; m.dims[v]];
            e[c - rad[v].cols()] = 1;
            copies.push((v, e));
        }
    }
    let (proj, layout) = proj_sum(&alg, &copies.iter().map(|&(v, _)| v).collect::<Vec<_>>());
    let blocks: Vec<FpMat> = (0..m.dims.len())
        .map(|w| {
            let mut b = FpMat::zeros(p, m.dims[w], layout[w].len());
            for (j, &(c, pi)) in layout[w].iter().enumerate() {
                let (v, ref lift) = copies[c];
                let col = m
                    .arrows_action(v, &alg.path_basis[pi].arrows)
                    .mul(&col_vec(p, lift));
                b.set_column(j, &col.column(0));
            }
            b
        })
        .collect();
    let cover = ModMorphism::new(proj.clone(), m.clone(), blocks);
    debug_assert!(cover.is_vertexwise_surjective(), "cover is not surjective");
    let (kernel, incl) = kernel_rep(&cover);
    ProjCover { proj, copies, layout, cover, kernel, incl }
}

/// First syzygy: the kernel of the minimal projective cover.
pub fn syzygy(m: &ModuleRep) -> ModuleRep {
    projective_cover(m).kernel
}

pub fn is_projective(m: &ModuleRep) -> bool {
    syzygy(m).is_zero()
}

/// Vector-space dual as a module over the opposite algebra instance `op`
/// (which must present the opposite of m's algebra).
pub fn dual(m: &ModuleRep, op: &Arc<AlgebraInstance>) -> ModuleRep {
    assert_eq!(
        op.presentation,
        m.alg.presentation.opposite(),
        "dual requires the opposite algebra instance"
    );
    let action = m.action.iter().map(|a| a.transpose()).collect();
    ModuleRep { alg: op.clone(), dims: m.dims.clone(), action }
}

pub fn is_injective(m: &ModuleRep) -> bool {
    let op = opposite_algebra(&m.alg);
    is_projective(&dual(m, &op))
}

/// Indecomposable injective at a vertex: dual of the opposite projective.
pub fn injective_module(alg: &Arc<AlgebraInstance>, v: usize) -> ModuleRep {
    let op = opposite_algebra(alg);
    let pv = projective_module(&op, v);
    dual(&pv, alg)
}

/// Transpose of m over the opposite algebra: apply Hom(-, the algebra) to a
/// minimal projective presentation P1 -> P0 -> m and take the cokernel.
/// `op` must present the opposite of m's algebra.
pub fn transpose(m: &ModuleRep, op: &Arc<AlgebraInstance>) -> ModuleRep {
    assert_eq!(op.presentation, m.alg.presentation.opposite());
    let alg = &m.alg;
    let p = m.p();
    let c0 = projective_cover(m);
    let c1 = projective_cover(&c0.kernel);
    // phi: P1 -> P0 in the module category
    let phi = c0.incl.compose(&c1.cover);
    let v0: Vec<usize> = c0.copies.iter().map(|&(v, _)| v).collect();
    let v1: Vec<usize> = c1.copies.iter().map(|&(v, _)| v).collect();

    // Image of each generator of P1 under phi, recorded as path-coordinate
    // terms (target copy of P0, reversed arrow list, coefficient).
    let mut gen_images: Vec<Vec<(usize, Vec<usize>, u64)>> = Vec::new();
    for (j, &u) in v1.iter().enumerate() {
        // the generator of copy j is the trivial path at u
        let col = c1
            .layout[u]
            .iter()
            .position(|&(c, pi)| c == j && alg.path_basis[pi].arrows.is_empty())
            .expect("generator column present");
        let img = phi.blocks[u].column(col);
        let mut terms = Vec::new();
        for (r, &(i, pi)) in c0.layout[u].iter().enumerate() {
            if img[r] != 0 {
                let rev: Vec<usize> = alg.path_basis[pi].arrows.iter().rev().copied().collect();
                terms.push((i, rev, img[r]));
            }
        }
        gen_images.push(terms);
    }

    // Hom(phi, algebra): a map of opposite projective sums, from the copies
    // of P0 to the copies of P1, sending the i-th generator to the sum of the
    // reversed paths landing in each copy j.
    let (pop0, lay0) = proj_sum(op, &v0);
    let (pop1, lay1) = proj_sum(op, &v1);
    let pos1: Vec<HashMap<(usize, usize), usize>> = lay1
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &k)| (k, i)).collect())
        .collect();
    let blocks: Vec<FpMat> = (0..op.num_vertices())
        .map(|w| {
            let mut b = FpMat::zeros(p, pop1.dims[w], pop0.dims[w]);
            for (colidx, &(i, qi)) in lay0[w].iter().enumerate() {
                // basis element: op-path q from v0[i] to w in copy i
                let q = &op.path_basis[qi];
                for (jj, rev, coeff) in gen_images.iter().enumerate().flat_map(|(jj, terms)| {
                    terms.iter().filter(move |t| t.0 == i).map(move |t| (jj, &t.1, t.2))
                }) {
                    let mut ext = rev.clone();
                    ext.extend_from_slice(&q.arrows);
                    if let Some(r) = op.path_index(v1[jj], &ext) {
                        let row = pos1[w][&(jj, r)];
                        let val = (b.get(row, colidx) + coeff) % p;
                        b.set(row, colidx, val);
                    }
                }
            }
            b
        })
        .collect();
    let psi = ModMorphism::new(pop0, pop1, blocks);
    cokernel_rep(&psi).0
}

/// Auslander-Reiten translate: the dual of the transpose. Projective
/// summands are annihilated.
pub fn tau(m: &ModuleRep) -> ModuleRep {
    let op = opposite_algebra(&m.alg);
    let tr = transpose(m, &op);
    dual(&tr, &m.alg)
}

/// Inverse translate: the transpose of the dual. Injective summands are
/// annihilated.
pub fn tau_inverse(m: &ModuleRep) -> ModuleRep {
    let op = opposite_algebra(&m.alg);
    let dm = dual(m, &op);
    transpose(&dm, &m.alg)
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::*;

    #[test]
    fn projectives_of_ka3() {
        let alg = ka_n(3, 2);
        assert_eq!(projective_module(&alg, 0).dims, vec![1, 1, 1]);
        assert_eq!(projective_module(&alg, 1).dims, vec![0, 1, 1]);
        assert_eq!(projective_module(&alg, 2).dims, vec![0, 0, 1]);
        assert_eq!(regular_module(&alg).total_dim(), 6);
    }

    #[test]
    fn injectives_of_ka3() {
        let alg = ka_n(3, 2);
        assert_eq!(injective_module(&alg, 0).dims, vec![1, 0, 0]);
        assert_eq!(injective_module(&alg, 2).dims, vec![1, 1, 1]);
        assert!(is_injective(&injective_module(&alg, 1)));
        assert!(!is_projective(&injective_module(&alg, 0)));
        assert!(is_projective(&injective_module(&alg, 2)));
    }

    #[test]
    fn cover_and_syzygy_of_simple() {
        let alg = ka_n(2, 2);
        let s1 = simple_module(&alg, 0);
        let c = projective_cover(&s1);
        assert_eq!(c.proj.dims, vec![1, 1]);
        assert_eq!(c.kernel.dims, vec![0, 1]);
        assert!(is_projective(&c.kernel));
        assert!(is_projective(&projective_module(&alg, 1)));
        assert!(!is_projective(&s1));
    }

    #[test]
    fn syzygy_over_truncated_poly() {
        // over k[x]/x^3 the simple has syzygy of dimension 2
        let alg = truncated_poly(3, 2);
        let s = simple_module(&alg, 0);
        let o = syzygy(&s);
        assert_eq!(o.total_dim(), 2);
        let oo = syzygy(&o);
        assert_eq!(oo.total_dim(), 1);
    }

    #[test]
    fn tau_on_ka2() {
        let alg = ka_n(2, 2);
        let s1 = simple_module(&alg, 0);
        let p2 = projective_module(&alg, 1);
        let t = tau(&s1);
        assert_eq!(t.dims, p2.dims);
        // tau of a projective vanishes
        assert!(tau(&projective_module(&alg, 0)).is_zero());
        // tau-inverse of an injective vanishes
        assert!(tau_inverse(&injective_module(&alg, 0)).is_zero());
        // tau-inverse returns from P2 to S1
        assert_eq!(tau_inverse(&p2).dims, s1.dims);
    }

    #[test]
    fn tau_on_truncated_poly() {
        // k[x]/x^2 is self-injective: tau is the identity on the simple
        let alg = truncated_poly(2, 2);
        let s = simple_module(&alg, 0);
        assert_eq!(tau(&s).dims, s.dims);
        assert!(tau(&regular_module(&alg)).is_zero());
    }

    #[test]
    fn top_of_regular_module() {
        let alg = ka_n(3, 2);
        let reg = regular_module(&alg);
        assert_eq!(top_dims(&reg), vec![1, 1, 1]);
        let (rad, incl) = radical_submodule(&reg);
        assert_eq!(rad.total_dim(), 3);
        assert!(incl.is_vertexwise_injective());
    }
}
