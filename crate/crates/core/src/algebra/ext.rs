//! Conflations (short exact sequences), the extension group Ext^1 realized
//! on cocycles against a syzygy, and base change by pullback and pushout.

use super::ops::{projective_cover, ProjCover};
use super::rep::{
    cokernel_rep, hom_basis, kernel_rep, morphism_coords, ModMorphism, ModuleRep,
};
use crate::fp::FpMat;

/// A short exact sequence 0 -> X -> Y -> Z -> 0 of representations.
#[derive(Clone, Debug)]
pub struct Conflation {
    pub f: ModMorphism,
    pub g: ModMorphism,
}

impl Conflation {
    pub fn x(&self) -> &ModuleRep {
        &self.f.source
    }
    pub fn y(&self) -> &ModuleRep {
        &self.f.target
    }
    pub fn z(&self) -> &ModuleRep {
        &self.g.target
    }

    /// Exactness: f injective, g surjective, g.f = 0, and the dimensions of
    /// the middle term account for both ends at every vertex.
    pub fn verify(&self) -> bool {
        self.f.target.dims == self.g.source.dims
            && self.f.is_vertexwise_injective()
            && self.g.is_vertexwise_surjective()
            && self.g.compose(&self.f).is_zero()
            && self
                .y()
                .dims
                .iter()
                .zip(self.x().dims.iter().zip(&self.z().dims))
                .all(|(&y, (&x, &z))| y == x + z)
    }

    /// Does the sequence split, i.e. does g admit a section?
    pub fn is_split(&self) -> bool {
        let id = ModMorphism::identity(self.z());
        super::rep::factor_left(&self.g, &id).is_some()
    }
}

/// The split conflation 0 -> x -> x + z -> z -> 0.
pub fn split_conflation(x: &ModuleRep, z: &ModuleRep) -> Conflation {
    let parts = [x, z];
    Conflation {
        f: ModMorphism::sum_injection(&parts, 0),
        g: ModMorphism::sum_projection(&parts, 1),
    }
}

/// Direct sum of two conflations, term by term.
pub fn sum_conflations(a: &Conflation, b: &Conflation) -> Conflation {
    Conflation {
        f: ModMorphism::direct_sum(&[&a.f, &b.f]),
        g: ModMorphism::direct_sum(&[&a.g, &b.g]),
    }
}

/// Pushout of the conflation along alpha: x -> w. Returns the conflation
/// 0 -> w -> E -> z -> 0 together with the comparison map y -> E.
pub fn pushout(c: &Conflation, alpha: &ModMorphism) -> (Conflation, ModMorphism) {
    assert_eq!(alpha.source.dims, c.x().dims);
    let w = &alpha.target;
    let y = c.y();
    let parts = [w, y];
    let p = w.p();
    let sum = ModuleRep::direct_sum(&parts);
    let h = ModMorphism::new(
        c.x().clone(),
        sum.clone(),
        (0..sum.dims.len())
            .map(|v| alpha.blocks[v].neg().vstack(&c.f.blocks[v]))
            .collect(),
    );
    let (e, q) = cokernel_rep(&h);
    let f2 = q.compose(&ModMorphism::sum_injection(&parts, 0));
    let g2_blocks: Vec<FpMat> = (0..sum.dims.len())
        .map(|v| {
            let zero = FpMat::zeros(p, c.z().dims[v], w.dims[v]);
            let rhs = zero.hstack(&c.g.blocks[v]);
            q.blocks[v].solve_left(&rhs).expect("deflation descends to the pushout")
        })
        .collect();
    let g2 = ModMorphism::new(e, c.z().clone(), g2_blocks);
    let cmp = q.compose(&ModMorphism::sum_injection(&parts, 1));
    let out = Conflation { f: f2, g: g2 };
    debug_assert!(out.verify());
    (out, cmp)
}

/// Pullback of the conflation along phi: w -> z. Returns the conflation
/// 0 -> x -> PB -> w -> 0 together with the comparison map PB -> y.
pub fn pullback(c: &Conflation, phi: &ModMorphism) -> (Conflation, ModMorphism) {
    assert_eq!(phi.target.dims, c.z().dims);
    let w = &phi.source;
    let y = c.y();
    let parts = [y, w];
    let sum = ModuleRep::direct_sum(&parts);
    let h = ModMorphism::new(
        sum.clone(),
        c.z().clone(),
        (0..sum.dims.len())
            .map(|v| c.g.blocks[v].hstack(&phi.blocks[v].neg()))
            .collect(),
    );
    let (pb, incl) = kernel_rep(&h);
    let g2 = ModMorphism::sum_projection(&parts, 1).compose(&incl);
    let f2_blocks: Vec<FpMat> = (0..sum.dims.len())
        .map(|v| {
            let rhs = c.f.blocks[v].vstack(&FpMat::zeros(w.p(), w.dims[v], c.x().dims[v]));
            incl.blocks[v].solve(&rhs).expect("inflation lifts to the pullback")
        })
        .collect();
    let f2 = ModMorphism::new(c.x().clone(), pb, f2_blocks);
    let cmp = ModMorphism::sum_projection(&parts, 0).compose(&incl);
    let out = Conflation { f: f2, g: g2 };
    debug_assert!(out.verify());
    (out, cmp)
}

/// Ext^1(z, x) presented on cocycles: the quotient of Hom(syzygy z, x) by
/// maps extending to the projective cover.
pub struct Ext1Space {
    pub cover: ProjCover,
    pub x: ModuleRep,
    /// Basis of Hom(syzygy z, x).
    pub hom: Vec<ModMorphism>,
    /// Independent columns spanning the coboundary subspace, in `hom`
    /// coordinates.
    image: FpMat,
    /// Indices into `hom` whose classes form a basis of Ext^1.
    pub rep_indices: Vec<usize>,
}

impl Ext1Space {
    pub fn new(z: &ModuleRep, x: &ModuleRep) -> Ext1Space {
        let p = z.p();
        let cover = projective_cover(z);
        let hom = hom_basis(&cover.kernel, x);
        let hom_p = hom_basis(&cover.proj, x);
        let mut image = FpMat::zeros(p, hom.len(), hom_p.len());
        for (j, f) in hom_p.iter().enumerate() {
            let restricted = f.compose(&cover.incl);
            let coords = morphism_coords(&hom, &restricted)
                .expect("restriction lies in the cocycle space");
            image.set_column(j, &coords);
        }
        let pivots = image.clone().rref();
        let image = image.select_columns(&pivots);
        // extend the coboundaries to the whole space by unit vectors
        let ext = image.hstack(&FpMat::identity(p, hom.len()));
        let pivots = ext.clone().rref();
        let rep_indices: Vec<usize> = pivots
            .iter()
            .filter(|&&c| c >= image.cols())
            .map(|&c| c - image.cols())
            .collect();
        Ext1Space { cover, x: x.clone(), hom, image, rep_indices }
    }

    pub fn dim(&self) -> usize {
        self.rep_indices.len()
    }

    /// Class of a cocycle (a map syzygy z -> x) in the chosen Ext basis.
    pub fn class_coords(&self, cocycle: &ModMorphism) -> Vec<u64> {
        let p = self.x.p();
        let coords = morphism_coords(&self.hom, cocycle).expect("cocycle in the hom space");
        if self.hom.is_empty() {
            return Vec::new();
        }
        let mut basis = self.image.clone();
        for &i in &self.rep_indices {
            let mut unit = vec![0u64; self.hom.len()];
            unit[i] = 1;
            basis = basis.hstack(&FpMat::from_rows(p, &[unit]).transpose());
        }
        let sol = basis
            .solve(&crate::fp::col_vec(p, &coords))
            .expect("coboundaries and representatives span the cocycle space")
            .column(0);
        sol[self.image.cols()..].to_vec()
    }

    /// Materialize a cocycle as a conflation 0 -> x -> E -> z -> 0 by pushing
    /// out the cover sequence along it.
    pub fn materialize(&self, cocycle: &ModMorphism) -> Conflation {
        let base = Conflation { f: self.cover.incl.clone(), g: self.cover.cover.clone() };
        pushout(&base, cocycle).0
    }

    pub fn representative_cocycle(&self, k: usize) -> &ModMorphism {
        &self.hom[self.rep_indices[k]]
    }
}

/// Basis of Ext^1(z, x) materialized as conflations.
pub fn ext1_basis(z: &ModuleRep, x: &ModuleRep) -> Vec<Conflation> {
    let space = Ext1Space::new(z, x);
    (0..space.dim())
        .map(|k| space.materialize(space.representative_cocycle(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::super::{projective_module, regular_module, simple_module};
    use super::*;

    #[test]
    fn ext_of_simples_on_ka2() {
        let alg = ka_n(2, 2);
        let s1 = simple_module(&alg, 0);
        let s2 = simple_module(&alg, 1);
        let p2 = projective_module(&alg, 1);
        // Ext^1(S1, S2) is one-dimensional; the nonsplit extension is P1
        let exts = ext1_basis(&s1, &s2);
        assert_eq!(exts.len(), 1);
        let c = &exts[0];
        assert!(c.verify());
        assert_eq!(c.y().dims, vec![1, 1]);
        assert!(!c.is_split());
        // no extensions the other way, and none against a projective target z
        assert_eq!(ext1_basis(&s2, &s1).len(), 0);
        assert_eq!(ext1_basis(&p2, &s1).len(), 0);
    }

    #[test]
    fn ext_on_truncated_poly() {
        let alg = truncated_poly(2, 2);
        let s = simple_module(&alg, 0);
        let exts = ext1_basis(&s, &s);
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].y().dims, regular_module(&alg).dims);
        assert!(!exts[0].is_split());
        assert!(split_conflation(&s, &s).is_split());
    }

    #[test]
    fn class_coords_of_split_is_zero() {
        let alg = truncated_poly(3, 2);
        let s = simple_module(&alg, 0);
        let space = Ext1Space::new(&s, &s);
        assert_eq!(space.dim(), 1);
        let zero = ModMorphism::zero(&space.cover.kernel, &s);
        assert_eq!(space.class_coords(&zero), vec![0]);
        let rep = space.representative_cocycle(0).clone();
        assert_eq!(space.class_coords(&rep), vec![1]);
    }

    #[test]
    fn pullback_and_pushout_preserve_exactness() {
        let alg = ka_n(3, 2);
        let s1 = simple_module(&alg, 0);
        let s2 = simple_module(&alg, 1);
        let c = &ext1_basis(&s1, &s2)[0];
        // pushout along the zero map splits the sequence
        let zero = ModMorphism::zero(&s2, &simple_module(&alg, 2));
        let (po, _) = pushout(c, &zero);
        assert!(po.verify());
        assert!(po.is_split());
        // pullback along the identity is the same class
        let (pb, cmp) = pullback(c, &ModMorphism::identity(&s1));
        assert!(pb.verify());
        assert!(cmp.is_isomorphism());
    }

    #[test]
    fn sum_of_conflations_is_exact() {
        let alg = ka_n(2, 2);
        let s1 = simple_module(&alg, 0);
        let s2 = simple_module(&alg, 1);
        let c = &ext1_basis(&s1, &s2)[0];
        let d = split_conflation(&s2, &s1);
        let s = sum_conflations(c, &d);
        assert!(s.verify());
        assert!(!s.is_split());
    }
}
