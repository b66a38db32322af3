//! Enumeration of indecomposables by knitting, construction of
//! Auslander-Reiten conflations, almost-split verification against a
//! complete registry, and the AR quiver graph.

use crate::algebra::{
    decompose, division_degree, factor_left, factor_right, is_injective,
    is_projective, is_iso, injective_module, projective_module, rad_hom_basis, radical_submodule,
    tau, tau_inverse, AlgebraError, AlgebraInstance, Conflation, Ext1Space, ModMorphism,
    ModuleRep,
};
use crate::fp::FpMat;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArError {
    #[error("enumeration exceeded the bound of {0} indecomposables")]
    BoundExceeded(usize),
    #[error("module is projective; it ends no AR conflation")]
    IsProjective,
    #[error("no socle representative produced a verified almost split conflation")]
    VerificationFailed,
    #[error("summand not found in the registry")]
    UnknownSummand,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The complete list of indecomposables of a finite-type algebra, with
/// per-index structure flags. Indices are sorted by (total dimension,
/// dimension vector lex, discovery order).
pub struct IndecRegistry {
    pub alg: Arc<AlgebraInstance>,
    pub indecs: Vec<ModuleRep>,
    pub division_degree: Vec<usize>,
    pub projective_flags: Vec<bool>,
    pub injective_flags: Vec<bool>,
}

impl IndecRegistry {
    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    /// Index of the registry member isomorphic to m.
    pub fn find(&self, m: &ModuleRep) -> Option<usize> {
        self.indecs.iter().position(|x| is_iso(x, m))
    }

    /// Human-readable node labels: the dimension vector, with a #k suffix
    /// when several non-isomorphic indecomposables share one.
    pub fn labels(&self) -> Vec<String> {
        let base: Vec<String> = self
            .indecs
            .iter()
            .map(|m| m.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let mut out = Vec::with_capacity(base.len());
        for (i, b) in base.iter().enumerate() {
            if base.iter().filter(|x| *x == b).count() > 1 {
                let k = base[..i].iter().filter(|x| *x == b).count() + 1;
                out.push(format!("{b}#{k}"));
            } else {
                out.push(b.clone());
            }
        }
        out
    }
}

/// Knit the registry: seed with the indecomposable projectives and
/// injectives, then close under tau, tau-inverse, and the middle terms of
/// AR conflations. Aborts with BoundExceeded past `bound` iso-classes.
pub fn enumerate_indecomposables(
    alg: &Arc<AlgebraInstance>,
    bound: usize,
) -> Result<IndecRegistry, ArError> {
    let mut found: Vec<ModuleRep> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let add = |found: &mut Vec<ModuleRep>, queue: &mut Vec<usize>, m: ModuleRep| {
        if m.is_zero() || found.iter().any(|x| is_iso(x, &m)) {
            return Ok(());
        }
        if found.len() + 1 > bound {
            return Err(ArError::BoundExceeded(bound));
        }
        queue.push(found.len());
        found.push(m);
        Ok(())
    };
    for v in 0..alg.num_vertices() {
        add(&mut found, &mut queue, projective_module(alg, v))?;
        add(&mut found, &mut queue, injective_module(alg, v))?;
    }
    while let Some(i) = queue.pop() {
        let m = found[i].clone();
        if !is_projective(&m) {
            for (s, _) in decompose(&tau(&m)) {
                add(&mut found, &mut queue, s)?;
            }
            let c = ar_candidate(&m)?;
            for (s, _) in decompose(c.y()) {
                add(&mut found, &mut queue, s)?;
            }
        } else {
            // irreducible maps into a projective come from its radical
            let (rad, _) = radical_submodule(&m);
            for (s, _) in decompose(&rad) {
                add(&mut found, &mut queue, s)?;
            }
        }
        if !is_injective(&m) {
            for (s, _) in decompose(&tau_inverse(&m)) {
                add(&mut found, &mut queue, s)?;
            }
        }
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| (found[i].total_dim(), found[i].dims.clone(), i));
    let indecs: Vec<ModuleRep> = order.into_iter().map(|i| found[i].clone()).collect();
    let division_degree = indecs
        .iter()
        .map(|m| division_degree(m))
        .collect::<Result<Vec<_>, _>>()?;
    let projective_flags = indecs.iter().map(is_projective).collect();
    let injective_flags = indecs.iter().map(|m| is_injective(m)).collect();
    Ok(IndecRegistry {
        alg: alg.clone(),
        indecs,
        division_degree,
        projective_flags,
        injective_flags,
    })
}

/// Lift an endomorphism u of z to the syzygy along the minimal cover
/// recorded in the Ext space: incl . u_hat = u0 . incl with cover . u0 =
/// u . cover.
fn lift_to_syzygy(space: &Ext1Space, u: &ModMorphism) -> ModMorphism {
    let cover = &space.cover;
    let u0 = factor_left(&cover.cover, &u.compose(&cover.cover))
        .expect("endomorphism lifts to the projective cover");
    let blocks: Vec<FpMat> = (0..cover.kernel.dims.len())
        .map(|v| {
            cover.incl.blocks[v]
                .solve(&u0.blocks[v].mul(&cover.incl.blocks[v]))
                .expect("lift preserves the syzygy")
        })
        .collect();
    ModMorphism::new(cover.kernel.clone(), cover.kernel.clone(), blocks)
}

/// A candidate AR conflation ending at indecomposable non-projective z:
/// materialize a nonzero class in the socle of Ext^1(z, tau z) as a right
/// End(z)-module.
fn ar_candidate(z: &ModuleRep) -> Result<Conflation, ArError> {
    ar_candidates(z)?
        .into_iter()
        .next()
        .ok_or(ArError::VerificationFailed)
}

/// All nonzero socle classes of Ext^1(z, tau z), materialized, non-split
/// ones only.
fn ar_candidates(z: &ModuleRep) -> Result<Vec<Conflation>, ArError> {
    let p = z.p();
    let tz = tau(z);
    let space = Ext1Space::new(z, &tz);
    let d = space.dim();
    if d == 0 {
        return Err(ArError::VerificationFailed);
    }
    let rad = rad_hom_basis(z, z)?;
    // action matrices of the radical generators on Ext coordinates
    let mut stacked = FpMat::zeros(p, 0, d);
    for u in &rad {
        let uhat = lift_to_syzygy(&space, u);
        let mut a = FpMat::zeros(p, d, d);
        for k in 0..d {
            let composed = space.representative_cocycle(k).compose(&uhat);
            a.set_column(k, &space.class_coords(&composed));
        }
        stacked = stacked.vstack(&a);
    }
    let socle = if stacked.rows() == 0 { FpMat::identity(p, d) } else { stacked.right_kernel() };
    let sd = socle.cols();
    let mut out = Vec::new();
    let total = (p as u128).saturating_pow(sd as u32);
    for idx in 1..total {
        let mut k = idx;
        let mut coeffs = vec![0u64; sd];
        for c in coeffs.iter_mut() {
            *c = (k % p as u128) as u64;
            k /= p as u128;
        }
        // class vector in Ext coordinates
        let mut class = vec![0u64; d];
        for (j, &cj) in coeffs.iter().enumerate() {
            for i in 0..d {
                class[i] = (class[i] + cj * socle.get(i, j)) % p;
            }
        }
        let mut cocycle = ModMorphism::zero(&space.cover.kernel, &tz);
        for (i, &ci) in class.iter().enumerate() {
            if ci != 0 {
                cocycle = cocycle.add(&space.representative_cocycle(i).scale(ci));
            }
        }
        let conf = space.materialize(&cocycle);
        if conf.verify() && !conf.is_split() {
            out.push(conf);
        }
    }
    Ok(out)
}

/// The AR conflation 0 -> tau z -> Y -> z -> 0 ending at registry index z,
/// verified almost split against the registry.
pub fn ar_sequence(reg: &IndecRegistry, z: usize) -> Result<Conflation, ArError> {
    if reg.projective_flags[z] {
        return Err(ArError::IsProjective);
    }
    for conf in ar_candidates(&reg.indecs[z])? {
        if verify_almost_split(reg, &conf) {
            return Ok(conf);
        }
    }
    Err(ArError::VerificationFailed)
}

/// Is the conflation almost split? Checks exactness, non-splitness, and
/// that every radical map from a registry member into z factors through g,
/// and dually every radical map out of x factors through f.
pub fn verify_almost_split(reg: &IndecRegistry, c: &Conflation) -> bool {
    if !c.verify() || c.is_split() {
        return false;
    }
    for w in &reg.indecs {
        let into_z = rad_hom_basis(w, c.z()).expect("registry hom spaces are small");
        if into_z.iter().any(|h| factor_left(&c.g, h).is_none()) {
            return false;
        }
        let out_of_x = rad_hom_basis(c.x(), w).expect("registry hom spaces are small");
        if out_of_x.iter().any(|h| factor_right(&c.f, h).is_none()) {
            return false;
        }
    }
    true
}

/// The AR quiver: one node per registry index, edges weighted by
/// irreducible-map multiplicities, and the translation tau on
/// non-projective nodes.
pub struct ARQuiverGraph {
    pub labels: Vec<String>,
    /// (source, target, multiplicity)
    pub edges: Vec<(usize, usize, usize)>,
    /// translation[z] = index of tau z for non-projective z
    pub translation: Vec<Option<usize>>,
}

pub fn build_ar_quiver(reg: &IndecRegistry) -> Result<ARQuiverGraph, ArError> {
    let mut edges = Vec::new();
    let mut translation = vec![None; reg.len()];
    for z in 0..reg.len() {
        if reg.projective_flags[z] {
            let (rad, _) = radical_submodule(&reg.indecs[z]);
            for (s, mult) in decompose(&rad) {
                let i = reg.find(&s).ok_or(ArError::UnknownSummand)?;
                edges.push((i, z, mult));
            }
        } else {
            let c = ar_sequence(reg, z)?;
            translation[z] = Some(reg.find(c.x()).ok_or(ArError::UnknownSummand)?);
            for (s, mult) in decompose(c.y()) {
                let i = reg.find(&s).ok_or(ArError::UnknownSummand)?;
                edges.push((i, z, mult));
            }
        }
    }
    edges.sort();
    Ok(ARQuiverGraph { labels: reg.labels(), edges, translation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::algebra::{split_conflation, ModuleRep};

    #[test]
    fn ka2_registry_has_three_members() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        assert_eq!(reg.len(), 3);
        // sorted order: (0,1) = P2, (1,0) = S1, (1,1) = P1
        assert_eq!(reg.indecs[0].dims, vec![0, 1]);
        assert_eq!(reg.indecs[1].dims, vec![1, 0]);
        assert_eq!(reg.indecs[2].dims, vec![1, 1]);
        assert_eq!(reg.division_degree, vec![1, 1, 1]);
        assert_eq!(reg.projective_flags, vec![true, false, true]);
        assert_eq!(reg.injective_flags, vec![false, true, true]);
    }

    #[test]
    fn ka3_registry_has_six_members() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        assert_eq!(reg.len(), 6);
    }

    #[test]
    fn truncated_poly_registries() {
        for (m, count) in [(2usize, 2usize), (3, 3)] {
            let alg = truncated_poly(m, 2);
            let reg = enumerate_indecomposables(&alg, 10).unwrap();
            assert_eq!(reg.len(), count);
        }
    }

    #[test]
    fn bound_exceeded() {
        let alg = ka_n(4, 2);
        assert!(matches!(enumerate_indecomposables(&alg, 5), Err(ArError::BoundExceeded(5))));
    }

    #[test]
    fn ar_sequence_on_ka2() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        // S1 is the only non-projective, at index 1
        let c = ar_sequence(&reg, 1).unwrap();
        assert_eq!(c.x().dims, vec![0, 1]); // P2
        assert_eq!(c.y().dims, vec![1, 1]); // P1
        assert!(verify_almost_split(&reg, &c));
        assert!(matches!(ar_sequence(&reg, 0), Err(ArError::IsProjective)));
    }

    #[test]
    fn split_conflation_is_not_almost_split() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let s1 = &reg.indecs[1];
        let p2 = &reg.indecs[0];
        let c = split_conflation(p2, s1);
        assert!(!verify_almost_split(&reg, &c));
    }

    #[test]
    fn wrong_middle_is_rejected_on_ka3() {
        // 0 -> [3,3] -> [1,3] -> [1,2] -> 0 is exact but not almost split
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let s3 = ModuleRep::new(
            alg.clone(),
            vec![0, 0, 1],
            vec![
                crate::fp::FpMat::zeros(2, 0, 0),
                crate::fp::FpMat::zeros(2, 1, 0),
            ],
        );
        let z12 = reg
            .indecs
            .iter()
            .find(|m| m.dims == vec![1, 1, 0])
            .unwrap()
            .clone();
        let exts = crate::algebra::ext1_basis(&z12, &s3);
        assert_eq!(exts.len(), 1);
        assert!(exts[0].verify());
        assert!(!verify_almost_split(&reg, &exts[0]));
    }

    #[test]
    fn ar_quiver_of_ka2_is_a_path() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let q = build_ar_quiver(&reg).unwrap();
        // edges P2 -> P1 -> S1, translation tau(S1) = P2
        assert_eq!(q.edges, vec![(0, 2, 1), (2, 1, 1)]);
        assert_eq!(q.translation, vec![None, Some(0), None]);
        assert_eq!(q.labels, vec!["0,1", "1,0", "1,1"]);
    }

    #[test]
    fn ar_quiver_of_truncated_poly_square() {
        let alg = truncated_poly(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let q = build_ar_quiver(&reg).unwrap();
        // nodes k (dim 1), the algebra (dim 2); edges k -> L -> k, tau(k) = k
        assert_eq!(q.edges, vec![(0, 1, 1), (1, 0, 1)]);
        assert_eq!(q.translation, vec![Some(0), None]);
    }

    #[test]
    fn ka3_mesh_has_three_translations() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let q = build_ar_quiver(&reg).unwrap();
        assert_eq!(q.translation.iter().filter(|t| t.is_some()).count(), 3);
        // middle of the AR sequence ending at [1,2] is [2,2] + [1,3]
        let z = reg.indecs.iter().position(|m| m.dims == vec![1, 1, 0]).unwrap();
        let c = ar_sequence(&reg, z).unwrap();
        assert_eq!(c.x().dims, vec![0, 1, 1]);
        let mids = decompose(c.y());
        let mut dims: Vec<Vec<usize>> = mids.iter().map(|(m, _)| m.dims.clone()).collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 1, 0], vec![1, 1, 1]]);
    }
}
