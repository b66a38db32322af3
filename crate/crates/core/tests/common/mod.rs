//! Shared helpers for the acceptance suite: seeded random conflations and a
//! brute-force composition-length oracle for effaceable functors.

use arex_core::algebra::{hom_basis, rad_hom_basis, Conflation, Ext1Space, ModMorphism, ModuleRep};
use arex_core::arquiver::IndecRegistry;
use arex_core::efffun::EffPresentation;
use arex_core::fp::FpMat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5EED_ACCE;

/// Random direct sum of one or two registry indecomposables.
pub fn random_sum(reg: &IndecRegistry, rng: &mut ChaCha8Rng) -> ModuleRep {
    let n = reg.len();
    let a = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        reg.indecs[a].clone()
    } else {
        let b = rng.gen_range(0..n);
        ModuleRep::direct_sum(&[&reg.indecs[a], &reg.indecs[b]])
    }
}

/// A certified conflation materialized from a random Ext class (possibly
/// split when the class is zero).
pub fn random_conflation(reg: &IndecRegistry, rng: &mut ChaCha8Rng) -> Conflation {
    let p = reg.alg.field_char();
    let z = random_sum(reg, rng);
    let x = random_sum(reg, rng);
    let space = Ext1Space::new(&z, &x);
    let mut cocycle = ModMorphism::zero(&space.cover.kernel, &x);
    for k in 0..space.dim() {
        let c = rng.gen_range(0..p);
        if c != 0 {
            cocycle = cocycle.add(&space.representative_cocycle(k).scale(c));
        }
    }
    let conf = space.materialize(&cocycle);
    assert!(conf.verify());
    conf
}

fn rows_restricted(m: &FpMat, lo: usize, hi: usize) -> FpMat {
    let mut out = FpMat::zeros(m.p(), hi - lo, m.cols());
    for i in lo..hi {
        for j in 0..m.cols() {
            out.set(i - lo, j, m.get(i, j));
        }
    }
    out
}

/// Composition length of the functor M over the category algebra of the
/// registry, computed from the radical filtration of the evaluation space
/// X = sum of M(V): each semisimple layer contributes its V-component
/// dimension divided by the division degree of V.
pub fn functor_length_oracle(reg: &IndecRegistry, m: &EffPresentation) -> usize {
    let p = reg.alg.field_char();
    let dims: Vec<usize> = m.values.iter().map(|v| v.dim).collect();
    let total: usize = dims.iter().sum();
    if total == 0 {
        return 0;
    }
    let mut offsets = vec![0usize];
    for d in &dims {
        offsets.push(offsets.last().unwrap() + d);
    }

    // radical action matrices on X: for psi: V' -> V in rad, the block
    // M(V) -> M(V') by precomposition of lifted classes
    let mut actions: Vec<FpMat> = Vec::new();
    for v in 0..reg.len() {
        if dims[v] == 0 {
            continue;
        }
        for w in 0..reg.len() {
            if dims[w] == 0 {
                continue;
            }
            let rad: Vec<ModMorphism> = if v == w {
                rad_hom_basis(&reg.indecs[w], &reg.indecs[v]).expect("small end ring")
            } else {
                hom_basis(&reg.indecs[w], &reg.indecs[v])
            };
            for psi in rad {
                let mut a = FpMat::zeros(p, total, total);
                for j in 0..dims[v] {
                    let mut unit = vec![0u64; dims[v]];
                    unit[j] = 1;
                    let phi = m.lift_class(v, &unit);
                    let val = m.value_coords(w, &phi.compose(&psi));
                    for (i, &e) in val.iter().enumerate() {
                        a.set(offsets[w] + i, offsets[v] + j, e);
                    }
                }
                actions.push(a);
            }
        }
    }

    let component_dims = |basis: &FpMat| -> Vec<usize> {
        (0..reg.len())
            .map(|v| rows_restricted(basis, offsets[v], offsets[v + 1]).rank())
            .collect()
    };

    let mut basis = FpMat::identity(p, total);
    let mut length = 0usize;
    loop {
        let here = component_dims(&basis);
        if here.iter().all(|&d| d == 0) {
            break;
        }
        // next radical layer: images of all radical generators
        let mut next = FpMat::zeros(p, total, 0);
        for a in &actions {
            next = next.hstack(&a.mul(&basis));
        }
        // column basis via row reduction of the transpose
        let mut red = next.transpose();
        let pivots = red.rref();
        let mut col_basis = FpMat::zeros(p, total, pivots.len());
        for k in 0..pivots.len() {
            for j in 0..total {
                col_basis.set(j, k, red.get(k, j));
            }
        }
        let below = component_dims(&col_basis);
        for v in 0..reg.len() {
            let layer = here[v] - below[v];
            let d = reg.division_degree[v];
            assert_eq!(layer % d, 0, "layer dimension divisible by division degree");
            length += layer / d;
        }
        basis = col_basis;
    }
    length
}
