//! Effaceable functors presented by conflations: pointwise evaluation of
//! M = coker Hom(-, g) on the registry, supports and composition
//! multiplicities, decomposition of conflation classes into AR classes,
//! effacement witnesses, and the kernel/image/cokernel constructions that
//! make the category of effaceable functors abelian.

use crate::algebra::{
    factor_left, hom_basis, morphism_coords, pullback, pushout, Conflation, ModMorphism,
    ModuleRep,
};
use crate::arquiver::{ar_sequence, ArError, IndecRegistry};
use crate::fp::{col_vec, FpMat};
use crate::groth::{class_of, GrothError, K0Vector};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EffError {
    #[error("value dimension at index {0} is not divisible by its division degree")]
    NonIntegralMultiplicity(usize),
    #[error("class of the conflation differs from the AR-class combination")]
    IdentityViolated,
    #[error("the morphism triple does not commute with the conflations")]
    NonCommuting,
    #[error("the two conflations have different K0 classes")]
    ClassMismatch,
    #[error(transparent)]
    Groth(#[from] GrothError),
    #[error(transparent)]
    Ar(#[from] ArError),
}

/// Pointwise value of M = coker Hom(-, g) at one registry index: classes of
/// maps W -> Z modulo those lifting through g.
pub struct EffValue {
    /// k-dimension of M(W).
    pub dim: usize,
    /// Basis of Hom(W, Z).
    pub hom: Vec<ModMorphism>,
    /// Cokernel projection (dim rows) on Hom(W, Z) coordinates.
    pub proj: FpMat,
}

/// An effaceable functor, presented by a conflation and evaluated eagerly on
/// the whole registry. The values are immutable after construction, so a
/// shared presentation is safe to read concurrently.
pub struct EffPresentation {
    pub presenting: Conflation,
    pub values: Vec<EffValue>,
}

impl EffPresentation {
    pub fn new(reg: &IndecRegistry, presenting: Conflation) -> EffPresentation {
        let p = presenting.z().p();
        let values = reg
            .indecs
            .iter()
            .map(|w| {
                let hom = hom_basis(w, presenting.z());
                let hom_y = hom_basis(w, presenting.y());
                let mut image = FpMat::zeros(p, hom.len(), hom_y.len());
                for (j, f) in hom_y.iter().enumerate() {
                    let coords = morphism_coords(&hom, &presenting.g.compose(f))
                        .expect("composite lies in Hom(W, Z)");
                    image.set_column(j, &coords);
                }
                let proj = image.left_kernel();
                EffValue { dim: proj.rows(), hom, proj }
            })
            .collect();
        EffPresentation { presenting, values }
    }

    /// Class in M(W) of a map phi: W -> Z.
    pub fn value_coords(&self, w: usize, phi: &ModMorphism) -> Vec<u64> {
        let v = &self.values[w];
        let coords = morphism_coords(&v.hom, phi).expect("phi lies in Hom(W, Z)");
        if v.dim == 0 {
            return Vec::new();
        }
        let p = phi.source.p();
        v.proj.mul(&col_vec(p, &coords)).column(0)
    }

    /// A map W -> Z representing the given class of M(W).
    pub fn lift_class(&self, w: usize, class: &[u64]) -> ModMorphism {
        let v = &self.values[w];
        let p = self.presenting.z().p();
        let coords = v
            .proj
            .solve(&col_vec(p, class))
            .expect("projection is surjective")
            .column(0);
        let mut phi = ModMorphism::zero(
            &self.values[w].hom[0].source.clone(),
            self.presenting.z(),
        );
        for (b, &c) in v.hom.iter().zip(&coords) {
            if c != 0 {
                phi = phi.add(&b.scale(c));
            }
        }
        phi
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].dim > 0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    pub mults: Vec<usize>,
}

impl MultiplicityVector {
    pub fn length(&self) -> usize {
        self.mults.iter().sum()
    }
}

/// Composition multiplicities of the simple functors: at each index,
/// dim M(W) divided by the division degree of W.
pub fn multiplicities(
    reg: &IndecRegistry,
    m: &EffPresentation,
) -> Result<MultiplicityVector, EffError> {
    let mults = m
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d = reg.division_degree[i];
            if v.dim % d != 0 {
                Err(EffError::NonIntegralMultiplicity(i))
            } else {
                Ok(v.dim / d)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiplicityVector { mults })
}

/// Decompose the class of a conflation into AR classes: compute the
/// multiplicity vector of its cokernel functor and assert the identity
/// class_of(c) = sum of m_W times the class of the AR conflation at W.
pub fn decompose_into_ar(
    reg: &IndecRegistry,
    c: &Conflation,
) -> Result<MultiplicityVector, EffError> {
    let m = EffPresentation::new(reg, c.clone());
    let mv = multiplicities(reg, &m)?;
    let mut combo = K0Vector::zero(reg.len());
    for (w, &mult) in mv.mults.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let ar = ar_sequence(reg, w)?;
        let cls = class_of(reg, &ar)?;
        for (a, b) in combo.coords.iter_mut().zip(&cls.coords) {
            *a += b * BigInt::from(mult);
        }
    }
    if combo != class_of(reg, c)? {
        return Err(EffError::IdentityViolated);
    }
    Ok(mv)
}

pub struct EffacementWitness {
    /// The deflation psi: E -> W along which the class dies.
    pub deflation: ModMorphism,
    pub conflation: Conflation,
    pub verified: bool,
}

/// For a nonzero class v in M(W): lift it to phi: W -> Z, pull the
/// presenting conflation back along phi, and return the pullback deflation;
/// the pulled-back class vanishes because phi composed with the deflation
/// factors through g.
pub fn effacement_witness(
    reg: &IndecRegistry,
    m: &EffPresentation,
    w: usize,
    class: &[u64],
) -> EffacementWitness {
    let _ = reg;
    let phi = m.lift_class(w, class);
    let (conf, _) = pullback(&m.presenting, &phi);
    let psi = conf.g.clone();
    // (M psi)(v) = class of phi . psi, zero iff it lifts through g
    let verified = factor_left(&m.presenting.g, &phi.compose(&psi)).is_some();
    EffacementWitness { deflation: psi, conflation: conf, verified }
}

/// A morphism of conflations: the three components of a commuting ladder
/// from c1 to c2.
pub struct ConflationMap {
    pub a: ModMorphism,
    pub b: ModMorphism,
    pub c: ModMorphism,
}

impl ConflationMap {
    pub fn commutes(&self, c1: &Conflation, c2: &Conflation) -> bool {
        c2.f.compose(&self.a) == self.b.compose(&c1.f)
            && c2.g.compose(&self.b) == self.c.compose(&c1.g)
    }
}

/// Kernel, image, and cokernel of the induced map M1 -> M2 of effaceable
/// functors, each returned as an effaceable presentation. Built from the
/// pushout E of c1 along a, following the five-row diagram: the kernel is
/// presented by X2 + Y1 -> E, the image by E -> Z1, and the cokernel by
/// Y2 + Z1 -> Z2.
pub fn ker_im_coker(
    reg: &IndecRegistry,
    c1: &Conflation,
    c2: &Conflation,
    map: &ConflationMap,
) -> Result<(EffPresentation, EffPresentation, EffPresentation), EffError> {
    if !map.commutes(c1, c2) {
        return Err(EffError::NonCommuting);
    }
    let (e_conf, cmp) = pushout(c1, &map.a);
    let e = e_conf.y().clone();

    // kernel row: X1 -> X2 + Y1 -> E
    let parts = [map.a.target.clone(), c1.y().clone()];
    let parts_ref: Vec<&ModuleRep> = parts.iter().collect();
    let sum_x2y1 = ModuleRep::direct_sum(&parts_ref);
    let fk = ModMorphism::new(
        c1.x().clone(),
        sum_x2y1.clone(),
        (0..sum_x2y1.dims.len())
            .map(|v| map.a.blocks[v].neg().vstack(&c1.f.blocks[v]))
            .collect(),
    );
    let gk = ModMorphism::new(
        sum_x2y1,
        e.clone(),
        (0..e.dims.len())
            .map(|v| e_conf.f.blocks[v].hstack(&cmp.blocks[v]))
            .collect(),
    );
    let k_conf = Conflation { f: fk, g: gk };
    debug_assert!(k_conf.verify());

    // cokernel row: E -> Y2 + Z1 -> Z2, with b2: E -> Y2 induced on the
    // pushout by (f2, b)
    let b2_blocks: Vec<FpMat> = (0..e.dims.len())
        .map(|v| {
            let q = e_conf.f.blocks[v].hstack(&cmp.blocks[v]);
            let rhs = c2.f.blocks[v].hstack(&map.b.blocks[v]);
            // unknown B with B . q = rhs, where q is the surjection onto E
            q.solve_left(&rhs).expect("pushout universal map exists")
        })
        .collect();
    let b2 = ModMorphism::new(e.clone(), c2.y().clone(), b2_blocks);
    let parts_c = [c2.y().clone(), c1.z().clone()];
    let parts_c_ref: Vec<&ModuleRep> = parts_c.iter().collect();
    let sum_y2z1 = ModuleRep::direct_sum(&parts_c_ref);
    let fc = ModMorphism::new(
        e.clone(),
        sum_y2z1.clone(),
        (0..e.dims.len())
            .map(|v| b2.blocks[v].vstack(&e_conf.g.blocks[v]))
            .collect(),
    );
    let gc = ModMorphism::new(
        sum_y2z1,
        c2.z().clone(),
        (0..e.dims.len())
            .map(|v| c2.g.blocks[v].hstack(&map.c.blocks[v].neg()))
            .collect(),
    );
    let c_conf = Conflation { f: fc, g: gc };
    debug_assert!(c_conf.verify());

    Ok((
        EffPresentation::new(reg, k_conf),
        EffPresentation::new(reg, e_conf),
        EffPresentation::new(reg, c_conf),
    ))
}

/// Matrix of the induced map M1(W) -> M2(W) given the bottom component
/// c: Z1 -> Z2 of a conflation morphism.
pub fn induced_value_map(
    m1: &EffPresentation,
    m2: &EffPresentation,
    cmap: &ModMorphism,
    w: usize,
) -> FpMat {
    let p = cmap.source.p();
    let (d1, d2) = (m1.values[w].dim, m2.values[w].dim);
    let mut out = FpMat::zeros(p, d2, d1);
    for j in 0..d1 {
        let mut unit = vec![0u64; d1];
        unit[j] = 1;
        let phi = m1.lift_class(w, &unit);
        out.set_column(j, &m2.value_coords(w, &cmap.compose(&phi)));
    }
    out
}

/// Admissibility check: every Ext generator conflation has a well-defined
/// finite-length multiplicity vector. Returns the maximum observed length.
pub fn check_admissible(reg: &IndecRegistry) -> Result<usize, EffError> {
    let mut max_len = 0;
    for z in &reg.indecs {
        for x in &reg.indecs {
            for c in crate::algebra::ext1_basis(z, x) {
                let m = EffPresentation::new(reg, c);
                let mv = multiplicities(reg, &m)?;
                max_len = max_len.max(mv.length());
            }
        }
    }
    Ok(max_len)
}

#[derive(Debug)]
pub struct CfVerdict {
    pub class: K0Vector,
    pub mults1: MultiplicityVector,
    pub mults2: MultiplicityVector,
    pub supports_equal: bool,
    pub lengths_equal: bool,
}

/// The (CF) condition on a pair of conflations with equal K0 classes: their
/// cokernel functors have equal support and equal length.
pub fn check_cf_pair(
    reg: &IndecRegistry,
    c1: &Conflation,
    c2: &Conflation,
) -> Result<CfVerdict, EffError> {
    let cls1 = class_of(reg, c1)?;
    let cls2 = class_of(reg, c2)?;
    if cls1 != cls2 {
        return Err(EffError::ClassMismatch);
    }
    let m1 = EffPresentation::new(reg, c1.clone());
    let m2 = EffPresentation::new(reg, c2.clone());
    let mv1 = multiplicities(reg, &m1)?;
    let mv2 = multiplicities(reg, &m2)?;
    let supports_equal = m1.support() == m2.support();
    let lengths_equal = mv1.length() == mv2.length();
    Ok(CfVerdict { class: cls1, mults1: mv1, mults2: mv2, supports_equal, lengths_equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::algebra::{ext1_basis, split_conflation, sum_conflations, ModMorphism};
    use crate::arquiver::enumerate_indecomposables;

    #[test]
    fn ka2_ar_presentation_is_the_simple_at_s1() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = ar_sequence(&reg, 1).unwrap();
        let m = EffPresentation::new(&reg, c);
        // order (P2, S1, P1): value is k at S1 only
        assert_eq!(m.values[0].dim, 0);
        assert_eq!(m.values[1].dim, 1);
        assert_eq!(m.values[2].dim, 0);
        assert_eq!(m.support(), vec![1]);
        let mv = multiplicities(&reg, &m).unwrap();
        assert_eq!(mv.mults, vec![0, 1, 0]);
        assert_eq!(mv.length(), 1);
    }

    #[test]
    fn split_presentation_vanishes() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = split_conflation(&reg.indecs[0], &reg.indecs[1]);
        let m = EffPresentation::new(&reg, c.clone());
        assert!(m.support().is_empty());
        let mv = decompose_into_ar(&reg, &c).unwrap();
        assert_eq!(mv.length(), 0);
    }

    #[test]
    fn ka3_non_ar_conflation_has_length_two() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let z12 = reg.indecs.iter().find(|m| m.dims == vec![1, 1, 0]).unwrap();
        let s3 = reg.indecs.iter().find(|m| m.dims == vec![0, 0, 1]).unwrap();
        let c = ext1_basis(z12, s3).remove(0);
        let m = EffPresentation::new(&reg, c.clone());
        let supp = m.support();
        let supp_dims: Vec<Vec<usize>> =
            supp.iter().map(|&i| reg.indecs[i].dims.clone()).collect();
        assert!(supp_dims.contains(&vec![1, 1, 0]));
        assert!(supp_dims.contains(&vec![0, 1, 0]));
        assert_eq!(supp.len(), 2);
        let mv = decompose_into_ar(&reg, &c).unwrap();
        assert_eq!(mv.length(), 2);
    }

    #[test]
    fn decompose_ar_sequence_is_unit_vector() {
        let alg = truncated_poly(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        for z in 0..reg.len() {
            if reg.projective_flags[z] {
                continue;
            }
            let c = ar_sequence(&reg, z).unwrap();
            let mv = decompose_into_ar(&reg, &c).unwrap();
            let mut expected = vec![0usize; reg.len()];
            expected[z] = 1;
            assert_eq!(mv.mults, expected);
        }
    }

    #[test]
    fn effacement_witnesses() {
        // k[x]/x^2: M from the AR sequence, class in M(k)
        let alg = truncated_poly(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = ar_sequence(&reg, 0).unwrap();
        let m = EffPresentation::new(&reg, c);
        assert_eq!(m.values[0].dim, 1);
        let w = effacement_witness(&reg, &m, 0, &[1]);
        assert!(w.verified);
        assert!(w.conflation.verify());
        // the witness deflation is the algebra onto k
        assert_eq!(w.deflation.source.total_dim(), 2);
    }

    #[test]
    fn ker_im_coker_identity_and_zero_triples() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = ar_sequence(&reg, 1).unwrap();
        let m = EffPresentation::new(&reg, c.clone());
        let id = ConflationMap {
            a: ModMorphism::identity(c.x()),
            b: ModMorphism::identity(c.y()),
            c: ModMorphism::identity(c.z()),
        };
        let (k, mid, cok) = ker_im_coker(&reg, &c, &c, &id).unwrap();
        for w in 0..reg.len() {
            assert_eq!(k.values[w].dim, 0);
            assert_eq!(mid.values[w].dim, m.values[w].dim);
            assert_eq!(cok.values[w].dim, 0);
        }
        let zero = ConflationMap {
            a: ModMorphism::zero(c.x(), c.x()),
            b: ModMorphism::zero(c.y(), c.y()),
            c: ModMorphism::zero(c.z(), c.z()),
        };
        let (k, mid, cok) = ker_im_coker(&reg, &c, &c, &zero).unwrap();
        for w in 0..reg.len() {
            assert_eq!(k.values[w].dim, m.values[w].dim);
            assert_eq!(mid.values[w].dim, 0);
            assert_eq!(cok.values[w].dim, m.values[w].dim);
        }
    }

    #[test]
    fn non_commuting_triple_is_rejected() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = ar_sequence(&reg, 1).unwrap();
        let bad = ConflationMap {
            a: ModMorphism::zero(c.x(), c.x()),
            b: ModMorphism::identity(c.y()),
            c: ModMorphism::identity(c.z()),
        };
        assert!(matches!(
            ker_im_coker(&reg, &c, &c, &bad),
            Err(EffError::NonCommuting)
        ));
    }

    #[test]
    fn admissibility_and_lengths() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let max_len = check_admissible(&reg).unwrap();
        assert!(max_len >= 2);
        let alg2 = truncated_poly(2, 2);
        let reg2 = enumerate_indecomposables(&alg2, 10).unwrap();
        assert_eq!(check_admissible(&reg2).unwrap(), 1);
    }

    #[test]
    fn cf_pair_on_padded_conflations() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c1 = ar_sequence(&reg, 1).unwrap();
        let pad = split_conflation(&reg.indecs[2], &reg.indecs[0]);
        let c2 = sum_conflations(&c1, &pad);
        let v = check_cf_pair(&reg, &c1, &c2).unwrap();
        assert!(v.supports_equal);
        assert!(v.lengths_equal);
        // mismatch error on different classes
        let split = split_conflation(&reg.indecs[0], &reg.indecs[1]);
        assert!(matches!(
            check_cf_pair(&reg, &c1, &split),
            Err(EffError::ClassMismatch)
        ));
    }

    #[test]
    fn length_additivity() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let z12 = reg.indecs.iter().find(|m| m.dims == vec![1, 1, 0]).unwrap();
        let s3 = reg.indecs.iter().find(|m| m.dims == vec![0, 0, 1]).unwrap();
        let c1 = ext1_basis(z12, s3).remove(0);
        let c2 = ar_sequence(&reg, reg.find(z12).unwrap()).unwrap();
        let sum = sum_conflations(&c1, &c2);
        let l1 = multiplicities(&reg, &EffPresentation::new(&reg, c1)).unwrap().length();
        let l2 = multiplicities(&reg, &EffPresentation::new(&reg, c2)).unwrap().length();
        let ls = multiplicities(&reg, &EffPresentation::new(&reg, sum)).unwrap().length();
        assert_eq!(ls, l1 + l2);
    }
}
