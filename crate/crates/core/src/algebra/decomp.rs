//! Krull-Schmidt decomposition via Fitting's lemma, isomorphism testing,
//! and radical hom spaces.
//!
//! For any endomorphism f of m, the power f^N with N = dim m splits
//! m = ker(f^N) + im(f^N); the split is nontrivial unless f is nilpotent
//! or invertible. The search over End(m) is exhaustive whenever p^dim End
//! is small, which makes indecomposability a decided question on every
//! module this crate is meant for; larger endomorphism algebras fall back
//! to seeded random sampling.

use super::rep::{hom_basis, image_rep, kernel_rep, ModMorphism, ModuleRep};
use super::AlgebraError;
use crate::fp::FpMat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaust the span of a hom basis when p^dim does not exceed this bound.
pub const DEFAULT_TRIAL_BOUND: usize = 65536;
const RANDOM_TRIALS: usize = 4000;
const RAD_EXHAUST_BOUND: u128 = 1 << 20;

fn combo(basis: &[ModMorphism], coeffs: &[u64]) -> ModMorphism {
    let mut f = ModMorphism::zero(&basis[0].source, &basis[0].target);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            f = f.add(&b.scale(c));
        }
    }
    f
}

/// Visit nonzero coefficient vectors: first the unit vectors (the basis
/// elements themselves), then either the full span (when small enough) or
/// seeded random samples. Stops early when the callback returns true.
fn search_span(p: u64, d: usize, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    if d == 0 {
        return false;
    }
    let span_size = (p as u128).checked_pow(d as u32);
    match span_size {
        Some(n) if n <= DEFAULT_TRIAL_BOUND as u128 => {
            let mut coeffs = vec![0u64; d];
            for idx in 1..n {
                let mut k = idx;
                for c in coeffs.iter_mut() {
                    *c = (k % p as u128) as u64;
                    k /= p as u128;
                }
                if visit(&coeffs) {
                    return true;
                }
            }
            false
        }
        _ => {
            for i in 0..d {
                let mut coeffs = vec![0u64; d];
                coeffs[i] = 1;
                if visit(&coeffs) {
                    return true;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_F177);
            for _ in 0..RANDOM_TRIALS {
                let coeffs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                if visit(&coeffs) {
                    return true;
                }
            }
            false
        }
    }
}

/// Are m and n isomorphic? Decided by searching Hom(m, n) for an invertible
/// element (complete when the hom space is small; see module docs).
pub fn is_iso(m: &ModuleRep, n: &ModuleRep) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        return false;
    }
    let p = m.p();
    search_span(p, basis.len(), |coeffs| combo(&basis, coeffs).is_isomorphism())
}

/// One Fitting split m = im(f^N) + ker(f^N) with both parts nonzero, if any
/// endomorphism yields one.
fn fitting_split(m: &ModuleRep) -> Option<(ModuleRep, ModuleRep)> {
    if m.total_dim() <= 1 {
        return None;
    }
    let basis = hom_basis(m, m);
    let p = m.p();
    let n = m.total_dim();
    let mut found: Option<ModMorphism> = None;
    search_span(p, basis.len(), |coeffs| {
        let f = combo(&basis, coeffs);
        let fpow = ModMorphism {
            source: f.source.clone(),
            target: f.target.clone(),
            blocks: f.blocks.iter().map(|b| b.pow(n)).collect(),
        };
        let r = fpow.total_rank();
        if r > 0 && r < m.total_dim() {
            found = Some(fpow);
            true
        } else {
            false
        }
    });
    let fpow = found?;
    let (im, _) = image_rep(&fpow);
    let (ker, _) = kernel_rep(&fpow);
    debug_assert_eq!(im.total_dim() + ker.total_dim(), m.total_dim());
    Some((im, ker))
}

pub fn is_indecomposable(m: &ModuleRep) -> bool {
    !m.is_zero() && fitting_split(m).is_none()
}

/// Full Krull-Schmidt decomposition: pairwise non-isomorphic indecomposable
/// summands with multiplicities, ordered by (total dim, dims, discovery).
pub fn decompose(m: &ModuleRep) -> Vec<(ModuleRep, usize)> {
    let mut work = vec![m.clone()];
    let mut indecs: Vec<ModuleRep> = Vec::new();
    while let Some(x) = work.pop() {
        if x.is_zero() {
            continue;
        }
        match fitting_split(&x) {
            Some((a, b)) => {
                work.push(a);
                work.push(b);
            }
            None => indecs.push(x),
        }
    }
    let mut grouped: Vec<(ModuleRep, usize)> = Vec::new();
    for x in indecs {
        match grouped.iter_mut().find(|(g, _)| is_iso(g, &x)) {
            Some((_, c)) => *c += 1,
            None => grouped.push((x, 1)),
        }
    }
    grouped.sort_by_key(|(g, _)| (g.total_dim(), g.dims.clone()));
    grouped
}

/// Span basis of a set of morphisms given by flat vectors.
fn span_basis(
    source: &ModuleRep,
    target: &ModuleRep,
    flats: &[Vec<u64>],
) -> Vec<ModMorphism> {
    if flats.is_empty() {
        return Vec::new();
    }
    let p = source.p();
    let mut mat = FpMat::from_rows(p, flats);
    mat.rref();
    (0..mat.rows())
        .map(|i| mat.row(i))
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| ModMorphism::from_flat(source, target, &r))
        .collect()
}

/// Basis of the radical rad(m, n) of the hom space between indecomposables:
/// everything if m and n are non-isomorphic, else the subspace of
/// non-invertible maps, found by exhausting the (small) hom space.
pub fn rad_hom_basis(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<ModMorphism>, AlgebraError> {
    let basis = hom_basis(m, n);
    if !is_iso(m, n) {
        return Ok(basis);
    }
    let p = m.p();
    let d = basis.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if (p as u128).checked_pow(d as u32).map_or(true, |s| s > RAD_EXHAUST_BOUND) {
        return Err(AlgebraError::RadTooLarge);
    }
    let total = (p as u128).pow(d as u32);
    let mut non_invertible: Vec<Vec<u64>> = Vec::new();
    let mut coeffs = vec![0u64; d];
    for idx in 1..total {
        let mut k = idx;
        for c in coeffs.iter_mut() {
            *c = (k % p as u128) as u64;
            k /= p as u128;
        }
        let f = combo(&basis, &coeffs);
        if !f.is_isomorphism() {
            non_invertible.push(f.flat());
        }
    }
    Ok(span_basis(m, n, &non_invertible))
}

/// Dimension of the division algebra End(m)/rad End(m) over the base field,
/// for indecomposable m.
pub fn division_degree(m: &ModuleRep) -> Result<usize, AlgebraError> {
    let end = hom_basis(m, m).len();
    let rad = rad_hom_basis(m, m)?.len();
    Ok(end - rad)
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::super::{projective_module, regular_module, simple_module};
    use super::*;

    #[test]
    fn regular_ka2_decomposes_into_two_projectives() {
        let alg = ka_n(2, 2);
        let reg = regular_module(&alg);
        let parts = decompose(&reg);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|(_, c)| *c == 1));
        assert!(parts.iter().any(|(m, _)| m.dims == vec![0, 1]));
        assert!(parts.iter().any(|(m, _)| m.dims == vec![1, 1]));
    }

    #[test]
    fn square_of_simple_has_multiplicity_two() {
        let alg = truncated_poly(2, 3);
        let s = simple_module(&alg, 0);
        let sum = ModuleRep::direct_sum(&[&s, &s]);
        let parts = decompose(&sum);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 2);
        assert_eq!(parts[0].0.total_dim(), 1);
    }

    #[test]
    fn regular_truncated_poly_is_indecomposable() {
        let alg = truncated_poly(3, 2);
        let reg = regular_module(&alg);
        assert!(is_indecomposable(&reg));
        // but dimension 2 quotient module is a different indecomposable
        let o = super::super::syzygy(&simple_module(&alg, 0));
        assert!(is_indecomposable(&o));
        assert!(!is_iso(&reg, &o));
        assert!(is_iso(&reg, &reg));
    }

    #[test]
    fn radical_hom_of_local_algebra() {
        let alg = truncated_poly(3, 2);
        let reg = regular_module(&alg);
        // End(reg) is 3-dimensional with 2-dimensional radical
        assert_eq!(hom_basis(&reg, &reg).len(), 3);
        assert_eq!(rad_hom_basis(&reg, &reg).unwrap().len(), 2);
        assert_eq!(division_degree(&reg).unwrap(), 1);
    }

    #[test]
    fn radical_between_non_isomorphic_is_everything() {
        let alg = ka_n(2, 2);
        let p1 = projective_module(&alg, 0);
        let s1 = simple_module(&alg, 0);
        assert_eq!(rad_hom_basis(&p1, &s1).unwrap().len(), 1);
        assert_eq!(rad_hom_basis(&p1, &p1).unwrap().len(), 0);
    }
}
