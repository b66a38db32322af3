//! Finite-dimensional representations of a bound quiver and their morphisms.
//!
//! Elements of a representation are column vectors over F_p graded by
//! vertex; arrow matrices act by left multiplication, and a path acts as
//! the product of its arrow matrices applied left to right.

use super::{AlgebraInstance, Path};
use crate::fp::FpMat;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub alg: Arc<AlgebraInstance>,
    pub dims: Vec<usize>,
    /// One matrix per arrow; arrow a: s -> t gets shape dims[t] x dims[s].
    pub action: Vec<FpMat>,
}

impl ModuleRep {
    pub fn new(alg: Arc<AlgebraInstance>, dims: Vec<usize>, action: Vec<FpMat>) -> ModuleRep {
        let p = alg.field_char();
        assert_eq!(dims.len(), alg.num_vertices());
        assert_eq!(action.len(), alg.presentation.arrows.len());
        for (i, a) in alg.presentation.arrows.iter().enumerate() {
            assert_eq!(
                (action[i].rows(), action[i].cols()),
                (dims[a.target], dims[a.source]),
                "arrow {} has wrong matrix shape",
                a.name
            );
            assert_eq!(action[i].p(), p);
        }
        let m = ModuleRep { alg, dims, action };
        for rel in &m.alg.presentation.relations {
            let src = m.alg.presentation.arrows[rel[0]].source;
            let mat = m.arrows_action(src, rel);
            assert!(mat.is_zero(), "relation does not annihilate the representation");
        }
        m
    }

    pub fn zero(alg: Arc<AlgebraInstance>) -> ModuleRep {
        let p = alg.field_char();
        let dims = vec![0; alg.num_vertices()];
        let action = alg
            .presentation
            .arrows
            .iter()
            .map(|_| FpMat::zeros(p, 0, 0))
            .collect();
        ModuleRep { alg, dims, action }
    }

    pub fn p(&self) -> u64 {
        self.alg.field_char()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_algebra(&self, other: &ModuleRep) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    /// Product of the arrow matrices of a composable sequence, acting on the
    /// vertex component at `source`.
    pub fn arrows_action(&self, source: usize, arrows: &[usize]) -> FpMat {
        let mut m = FpMat::identity(self.p(), self.dims[source]);
        for &a in arrows {
            m = self.action[a].mul(&m);
        }
        m
    }

    pub fn path_action(&self, path: &Path) -> FpMat {
        self.arrows_action(path.source, &path.arrows)
    }

    pub fn direct_sum(parts: &[&ModuleRep]) -> ModuleRep {
        assert!(!parts.is_empty());
        let alg = parts[0].alg.clone();
        let p = alg.field_char();
        for m in parts {
            assert!(parts[0].same_algebra(m));
        }
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = (0..alg.presentation.arrows.len())
            .map(|a| {
                let blocks: Vec<&FpMat> = parts.iter().map(|m| &m.action[a]).collect();
                FpMat::block_diag(&blocks, p)
            })
            .collect();
        ModuleRep { alg, dims, action }
    }

    /// Offsets of each summand's component inside the direct sum, per vertex.
    pub fn sum_offsets(parts: &[&ModuleRep], vertex: usize) -> Vec<usize> {
        let mut off = vec![0];
        for m in parts {
            off.push(off.last().unwrap() + m.dims[vertex]);
        }
        off
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMorphism {
    pub source: ModuleRep,
    pub target: ModuleRep,
    /// One block per vertex, shape target.dims[v] x source.dims[v].
    pub blocks: Vec<FpMat>,
}

impl ModMorphism {
    pub fn new(source: ModuleRep, target: ModuleRep, blocks: Vec<FpMat>) -> ModMorphism {
        assert!(source.same_algebra(&target));
        assert_eq!(blocks.len(), source.dims.len());
        for (v, b) in blocks.iter().enumerate() {
            assert_eq!((b.rows(), b.cols()), (target.dims[v], source.dims[v]));
        }
        let f = ModMorphism { source, target, blocks };
        debug_assert!(f.commutes(), "blocks do not commute with the arrow actions");
        f
    }

    /// Check the intertwining condition N_a f_s = f_t M_a for every arrow.
    pub fn commutes(&self) -> bool {
        self.source.alg.presentation.arrows.iter().enumerate().all(|(i, a)| {
            self.target.action[i].mul(&self.blocks[a.source])
                == self.blocks[a.target].mul(&self.source.action[i])
        })
    }

    pub fn identity(m: &ModuleRep) -> ModMorphism {
        let blocks = m.dims.iter().map(|&d| FpMat::identity(m.p(), d)).collect();
        ModMorphism { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn zero(source: &ModuleRep, target: &ModuleRep) -> ModMorphism {
        let p = source.p();
        let blocks = (0..source.dims.len())
            .map(|v| FpMat::zeros(p, target.dims[v], source.dims[v]))
            .collect();
        ModMorphism { source: source.clone(), target: target.clone(), blocks }
    }

    /// Composition self after g (so source of self must be target of g).
    pub fn compose(&self, g: &ModMorphism) -> ModMorphism {
        assert_eq!(self.source.dims, g.target.dims);
        let blocks = self
            .blocks
            .iter()
            .zip(&g.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModMorphism { source: g.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: u64) -> ModMorphism {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn neg(&self) -> ModMorphism {
        let blocks = self.blocks.iter().map(|b| b.neg()).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_vertexwise_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_vertexwise_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    /// Vectorize all blocks (row-major, vertex order) into one coordinate
    /// vector; two morphisms are equal iff their flat vectors agree.
    pub fn flat(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(b.flatten());
        }
        out
    }

    pub fn from_flat(source: &ModuleRep, target: &ModuleRep, flat: &[u64]) -> ModMorphism {
        let p = source.p();
        let mut blocks = Vec::new();
        let mut off = 0;
        for v in 0..source.dims.len() {
            let (r, c) = (target.dims[v], source.dims[v]);
            let mut b = FpMat::zeros(p, r, c);
            for i in 0..r {
                for j in 0..c {
                    b.set(i, j, flat[off + i * c + j]);
                }
            }
            off += r * c;
            blocks.push(b);
        }
        assert_eq!(off, flat.len());
        ModMorphism { source: source.clone(), target: target.clone(), blocks }
    }

    /// Canonical injection of the i-th summand into a direct sum.
    pub fn sum_injection(parts: &[&ModuleRep], i: usize) -> ModMorphism {
        let sum = ModuleRep::direct_sum(parts);
        let p = sum.p();
        let blocks = (0..sum.dims.len())
            .map(|v| {
                let off = ModuleRep::sum_offsets(parts, v);
                let mut b = FpMat::zeros(p, sum.dims[v], parts[i].dims[v]);
                for k in 0..parts[i].dims[v] {
                    b.set(off[i] + k, k, 1);
                }
                b
            })
            .collect();
        ModMorphism { source: parts[i].clone(), target: sum, blocks }
    }

    /// Canonical projection of a direct sum onto its i-th summand.
    pub fn sum_projection(parts: &[&ModuleRep], i: usize) -> ModMorphism {
        let sum = ModuleRep::direct_sum(parts);
        let p = sum.p();
        let blocks = (0..sum.dims.len())
            .map(|v| {
                let off = ModuleRep::sum_offsets(parts, v);
                let mut b = FpMat::zeros(p, parts[i].dims[v], sum.dims[v]);
                for k in 0..parts[i].dims[v] {
                    b.set(k, off[i] + k, 1);
                }
                b
            })
            .collect();
        ModMorphism { source: sum, target: parts[i].clone(), blocks }
    }

    /// Block-diagonal direct sum of morphisms.
    pub fn direct_sum(fs: &[&ModMorphism]) -> ModMorphism {
        let sources: Vec<&ModuleRep> = fs.iter().map(|f| &f.source).collect();
        let targets: Vec<&ModuleRep> = fs.iter().map(|f| &f.target).collect();
        let source = ModuleRep::direct_sum(&sources);
        let target = ModuleRep::direct_sum(&targets);
        let p = source.p();
        let blocks = (0..source.dims.len())
            .map(|v| {
                let vb: Vec<&FpMat> = fs.iter().map(|f| &f.blocks[v]).collect();
                FpMat::block_diag(&vb, p)
            })
            .collect();
        ModMorphism { source, target, blocks }
    }
}

/// Basis of Hom(m, n): solve the intertwining equations
/// N_a B_{s(a)} - B_{t(a)} M_a = 0 in the vectorized block variables.
pub fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Vec<ModMorphism> {
    assert!(m.same_algebra(n));
    let p = m.p();
    let nv = m.dims.len();
    // variable layout: flat() order (blocks row-major, vertex order)
    let block_size: Vec<usize> = (0..nv).map(|v| n.dims[v] * m.dims[v]).collect();
    let offsets: Vec<usize> = {
        let mut o = vec![0];
        for s in &block_size {
            o.push(o.last().unwrap() + s);
        }
        o
    };
    let nvars = offsets[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (ai, a) in m.alg.presentation.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        // equation for entry (i, j): sum_k N_a[i,k] B_s[k,j] - sum_k B_t[i,k] M_a[k,j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u64; nvars];
                for k in 0..n.dims[s] {
                    let c = n.action[ai].get(i, k);
                    if c != 0 {
                        let idx = var(s, k, j);
                        row[idx] = (row[idx] + c) % p;
                    }
                }
                for k in 0..m.dims[t] {
                    let c = m.action[ai].get(k, j);
                    if c != 0 {
                        let idx = var(t, i, k);
                        row[idx] = (row[idx] + p - c) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let eq = FpMat::from_rows(p, &rows);
    let ker = if rows.is_empty() { FpMat::identity(p, nvars) } else { eq.right_kernel() };
    (0..ker.cols())
        .map(|c| ModMorphism::from_flat(m, n, &ker.column(c)))
        .collect()
}

/// Coordinates of f in the span of `basis` (as flat vectors); None if f is
/// outside the span.
pub fn morphism_coords(basis: &[ModMorphism], f: &ModMorphism) -> Option<Vec<u64>> {
    let p = f.source.p();
    let flat = f.flat();
    if basis.is_empty() {
        return if flat.iter().all(|&x| x == 0) { Some(Vec::new()) } else { None };
    }
    let mut mat = FpMat::zeros(p, flat.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        mat.set_column(j, &b.flat());
    }
    mat.solve(&crate::fp::col_vec(p, &flat)).map(|x| x.column(0))
}

/// Find X with post . X = h (a lift of h through post), or None. X ranges
/// over Hom(h.source, post.source); the equation is solved in coordinates
/// on that hom space.
pub fn factor_left(post: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    assert_eq!(post.target.dims, h.target.dims);
    let basis = hom_basis(&h.source, &post.source);
    let composed: Vec<ModMorphism> = basis.iter().map(|b| post.compose(b)).collect();
    let coords = morphism_coords_raw(&composed, &h.flat(), h.source.p())?;
    let mut x = ModMorphism::zero(&h.source, &post.source);
    for (b, &c) in basis.iter().zip(&coords) {
        if c != 0 {
            x = x.add(&b.scale(c));
        }
    }
    Some(x)
}

/// Find X with X . pre = h (an extension of h along pre), or None.
pub fn factor_right(pre: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    assert_eq!(pre.source.dims, h.source.dims);
    let basis = hom_basis(&pre.target, &h.target);
    let composed: Vec<ModMorphism> = basis.iter().map(|b| b.compose(pre)).collect();
    let coords = morphism_coords_raw(&composed, &h.flat(), h.source.p())?;
    let mut x = ModMorphism::zero(&pre.target, &h.target);
    for (b, &c) in basis.iter().zip(&coords) {
        if c != 0 {
            x = x.add(&b.scale(c));
        }
    }
    Some(x)
}

fn morphism_coords_raw(fs: &[ModMorphism], flat: &[u64], p: u64) -> Option<Vec<u64>> {
    if fs.is_empty() {
        return if flat.iter().all(|&x| x == 0) { Some(Vec::new()) } else { None };
    }
    let mut mat = FpMat::zeros(p, flat.len(), fs.len());
    for (j, f) in fs.iter().enumerate() {
        mat.set_column(j, &f.flat());
    }
    mat.solve(&crate::fp::col_vec(p, flat)).map(|x| x.column(0))
}

/// Kernel of f as a subrepresentation, with its inclusion into f.source.
pub fn kernel_rep(f: &ModMorphism) -> (ModuleRep, ModMorphism) {
    sub_rep(&f.source, &f.blocks.iter().map(|b| b.right_kernel()).collect::<Vec<_>>())
}

/// Image of f as a subrepresentation of f.target, with its inclusion.
pub fn image_rep(f: &ModMorphism) -> (ModuleRep, ModMorphism) {
    let cols: Vec<FpMat> = f
        .blocks
        .iter()
        .map(|b| {
            let mut r = b.clone();
            let pivots = r.rref();
            b.select_columns(&pivots)
        })
        .collect();
    sub_rep(&f.target, &cols)
}

/// Subrepresentation spanned by the given independent columns per vertex.
/// The span must be invariant under the arrow actions.
pub fn sub_rep(m: &ModuleRep, cols: &[FpMat]) -> (ModuleRep, ModMorphism) {
    let dims: Vec<usize> = cols.iter().map(|c| c.cols()).collect();
    let action: Vec<FpMat> = m
        .alg
        .presentation
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // solve cols[t] * X = M_a * cols[s]
            cols[a.target]
                .solve(&m.action[ai].mul(&cols[a.source]))
                .expect("column span is not invariant under the arrow action")
        })
        .collect();
    let sub = ModuleRep { alg: m.alg.clone(), dims, action };
    let incl = ModMorphism { source: sub.clone(), target: m.clone(), blocks: cols.to_vec() };
    debug_assert!(incl.commutes());
    (sub, incl)
}

/// Cokernel of f as a quotient representation, with the projection from
/// f.target.
pub fn cokernel_rep(f: &ModMorphism) -> (ModuleRep, ModMorphism) {
    let n = &f.target;
    let q: Vec<FpMat> = f.blocks.iter().map(|b| b.left_kernel()).collect();
    let action: Vec<FpMat> = n
        .alg
        .presentation
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // solve X * q[s] = q[t] * N_a
            q[a.source]
                .solve_left(&q[a.target].mul(&n.action[ai]))
                .expect("cokernel projection rows are not compatible with the action")
        })
        .collect();
    let dims: Vec<usize> = q.iter().map(|b| b.rows()).collect();
    let coker = ModuleRep { alg: n.alg.clone(), dims, action };
    let proj = ModMorphism { source: n.clone(), target: coker.clone(), blocks: q };
    debug_assert!(proj.commutes());
    (coker, proj)
}
