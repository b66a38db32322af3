//! The split Grothendieck group of a finite-type module category: classes
//! of conflations, the lattices generated by all conflations (Ex) and by
//! the AR conflations (AR), and the decision AR = Ex, exactly and
//! rationally.

use crate::algebra::{decompose, ext1_basis, Conflation, ModuleRep};
use crate::arquiver::{ar_sequence, ArError, IndecRegistry};
use crate::intlat::{
    contains, equal, lattice_from_generators, quotient_invariants, saturation, GenLattice,
};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GrothError {
    #[error("decompose produced a module not in the registry; registry incomplete")]
    UnknownSummand,
    #[error(transparent)]
    Ar(#[from] ArError),
}

/// An element of K0(E, 0), written in registry coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Vector {
    pub coords: Vec<BigInt>,
}

impl K0Vector {
    pub fn zero(n: usize) -> K0Vector {
        K0Vector { coords: vec![BigInt::from(0); n] }
    }

    pub fn add(&self, other: &K0Vector) -> K0Vector {
        K0Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c == &BigInt::from(0))
    }
}

/// Class of a single module: the multiplicity vector of its indecomposable
/// summands.
pub fn class_of_module(reg: &IndecRegistry, m: &ModuleRep) -> Result<K0Vector, GrothError> {
    let mut v = K0Vector::zero(reg.len());
    for (s, mult) in decompose(m) {
        let i = reg.find(&s).ok_or(GrothError::UnknownSummand)?;
        v.coords[i] += BigInt::from(mult);
    }
    Ok(v)
}

/// Class [X] - [Y] + [Z] of a conflation 0 -> X -> Y -> Z -> 0.
pub fn class_of(reg: &IndecRegistry, c: &Conflation) -> Result<K0Vector, GrothError> {
    let x = class_of_module(reg, c.x())?;
    let y = class_of_module(reg, c.y())?;
    let z = class_of_module(reg, c.z())?;
    let coords = x
        .coords
        .iter()
        .zip(y.coords.iter().zip(&z.coords))
        .map(|(x, (y, z))| x - y + z)
        .collect();
    Ok(K0Vector { coords })
}

/// The lattice Ex generated by the classes of all conflations. Generation
/// is reduced to conflations with indecomposable outer terms: pulling back
/// along the split monos into Z and pushing out along the split epis from X
/// splits any class into such summand classes.
pub fn ex_lattice(reg: &IndecRegistry) -> Result<GenLattice, GrothError> {
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for z in &reg.indecs {
        for x in &reg.indecs {
            for c in ext1_basis(z, x) {
                gens.push(class_of(reg, &c)?.coords);
            }
        }
    }
    Ok(lattice_from_generators(reg.len(), &gens).expect("coordinate lengths match"))
}

/// The lattice AR generated by the classes of the AR conflations ending at
/// each non-projective index.
pub fn ar_lattice(reg: &IndecRegistry) -> Result<GenLattice, GrothError> {
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for z in 0..reg.len() {
        if !reg.projective_flags[z] {
            let c = ar_sequence(reg, z)?;
            gens.push(class_of(reg, &c)?.coords);
        }
    }
    Ok(lattice_from_generators(reg.len(), &gens).expect("coordinate lengths match"))
}

#[derive(Debug)]
pub struct ExArVerdict {
    pub ar: GenLattice,
    pub ex: GenLattice,
    pub equal_exact: bool,
    pub equal_rational: bool,
    pub k0_free_rank: usize,
    pub k0_torsion: Vec<BigInt>,
}

/// Decide AR = Ex exactly (lattice equality) and rationally (saturation
/// equality), and report the structure of K0(E) = K0(E, 0)/Ex.
pub fn check_ar_eq_ex(reg: &IndecRegistry) -> Result<ExArVerdict, GrothError> {
    let ar = ar_lattice(reg)?;
    let ex = ex_lattice(reg)?;
    let equal_exact = equal(&ar, &ex).expect("same ambient rank");
    let equal_rational =
        equal(&saturation(&ar), &saturation(&ex)).expect("same ambient rank");
    debug_assert!(!equal_exact || equal_rational);
    let (k0_free_rank, k0_torsion) = quotient_invariants(reg.len(), &ex);
    Ok(ExArVerdict { ar, ex, equal_exact, equal_rational, k0_free_rank, k0_torsion })
}

/// AR is always contained in Ex: every AR generator is an Ex member.
pub fn ar_contained_in_ex(reg: &IndecRegistry) -> Result<bool, GrothError> {
    let ex = ex_lattice(reg)?;
    for z in 0..reg.len() {
        if !reg.projective_flags[z] {
            let c = ar_sequence(reg, z)?;
            let v = class_of(reg, &c)?;
            if !contains(&ex, &v.coords).expect("same ambient rank") {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::algebra::split_conflation;
    use crate::arquiver::enumerate_indecomposables;
    use crate::intlat::lattice_from_generators_i64;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn split_class_is_zero() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = split_conflation(&reg.indecs[0], &reg.indecs[1]);
        assert!(class_of(&reg, &c).unwrap().is_zero());
    }

    #[test]
    fn ka2_ar_class_in_registry_order() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c = ar_sequence(&reg, 1).unwrap();
        // order (P2, S1, P1): [P2] - [P1] + [S1] = (1, 1, -1)
        assert_eq!(class_of(&reg, &c).unwrap().coords, big(&[1, 1, -1]));
    }

    #[test]
    fn ka2_lattices_agree() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let v = check_ar_eq_ex(&reg).unwrap();
        assert!(v.equal_exact);
        assert!(v.equal_rational);
        assert_eq!(v.k0_free_rank, 2);
        assert!(v.k0_torsion.is_empty());
        let expected = lattice_from_generators_i64(3, &[vec![1, 1, -1]]).unwrap();
        assert!(equal(&v.ar, &expected).unwrap());
    }

    #[test]
    fn truncated_poly_square_lattice() {
        let alg = truncated_poly(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let v = check_ar_eq_ex(&reg).unwrap();
        assert!(v.equal_exact);
        assert_eq!(v.k0_free_rank, 1);
        assert!(v.k0_torsion.is_empty());
        // order (k, Lambda): AR class is 2[k] - [Lambda]
        let expected = lattice_from_generators_i64(2, &[vec![2, -1]]).unwrap();
        assert!(equal(&v.ex, &expected).unwrap());
    }

    #[test]
    fn ka3_rank_three_equality() {
        let alg = ka_n(3, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let v = check_ar_eq_ex(&reg).unwrap();
        assert!(v.equal_exact);
        assert_eq!(v.ar.rank(), 3);
        assert_eq!(v.k0_free_rank, 3);
        assert!(v.k0_torsion.is_empty());
        assert!(ar_contained_in_ex(&reg).unwrap());
    }

    #[test]
    fn class_additivity() {
        let alg = ka_n(2, 2);
        let reg = enumerate_indecomposables(&alg, 10).unwrap();
        let c1 = ar_sequence(&reg, 1).unwrap();
        let c2 = split_conflation(&reg.indecs[0], &reg.indecs[2]);
        let sum = crate::algebra::sum_conflations(&c1, &c2);
        let lhs = class_of(&reg, &sum).unwrap();
        let rhs = class_of(&reg, &c1).unwrap().add(&class_of(&reg, &c2).unwrap());
        assert_eq!(lhs, rhs);
    }
}
