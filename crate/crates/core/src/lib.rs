//! Computational laboratory for Auslander-Reiten theory and Grothendieck
//! group relations of module categories of bound quiver algebras over prime
//! fields: indecomposable enumeration, AR conflations, the lattices Ex and AR
//! inside the split Grothendieck group, the effaceable-functor calculus, and
//! subcategory machinery (resolving, torsion, relative structures, syzygies).

pub mod algebra;
pub mod arquiver;
pub mod efffun;
pub mod fp;
pub mod groth;
pub mod intlat;
pub mod subcat;
