//! Bound quiver algebras over prime fields and the linear algebra of their
//! finite-dimensional modules.
//!
//! Only monomial (zero-relation) presentations are accepted: the path basis
//! is then exactly the set of paths containing no relation as a factor, and
//! admissibility is decidable by a finite automaton on arrow windows.

mod decomp;
mod ext;
mod ops;
mod rep;

pub use decomp::{
    decompose, division_degree, is_indecomposable, is_iso, rad_hom_basis, DEFAULT_TRIAL_BOUND,
};
pub use ext::{
    ext1_basis, pullback, pushout, split_conflation, sum_conflations, Conflation, Ext1Space,
};
pub use ops::{
    dual, injective_module, is_injective, is_projective, proj_sum, projective_cover,
    projective_module, radical_submodule, regular_module, semisimple_quotient_module,
    simple_module, syzygy, tau, tau_inverse, top_dims, transpose, ProjCover,
};
pub use rep::{
    cokernel_rep, factor_left, factor_right, hom_basis, image_rep, kernel_rep, morphism_coords,
    sub_rep, ModMorphism, ModuleRep,
};

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow name {0:?} in relation")]
    UnknownArrow(String),
    #[error("relation {0:?} is not composable")]
    NonComposableRelation(String),
    #[error("relation {0:?} has length < 2")]
    ShortRelation(String),
    #[error("field characteristic {0} is not prime")]
    NonPrimeChar(u64),
    #[error("relation ideal is not admissible: a cycle carries no relation bound")]
    NonAdmissible,
    #[error("path count exceeds cap {0}")]
    CapExceeded(usize),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("module is projective")]
    IsProjective,
    #[error("module is injective")]
    IsInjective,
    #[error("endomorphism algebra too large for exhaustive radical computation")]
    RadTooLarge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Relation paths as arrow indices, composable left-to-right.
    pub relations: Vec<Vec<usize>>,
    pub field_char: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl QuiverPresentation {
    /// Build a presentation from labels. Arrows are (name, source, target);
    /// relations are sequences of arrow names composable left-to-right.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<String>>,
        field_char: u64,
    ) -> Result<Self, AlgebraError> {
        if !is_prime(field_char) {
            return Err(AlgebraError::NonPrimeChar(field_char));
        }
        let mut vidx = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vidx.insert(v.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVertex(v.clone()));
            }
        }
        let mut aidx = HashMap::new();
        let mut arr = Vec::new();
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            let source = *vidx.get(&s).ok_or_else(|| AlgebraError::UnknownVertex(s.clone()))?;
            let target = *vidx.get(&t).ok_or_else(|| AlgebraError::UnknownVertex(t.clone()))?;
            if aidx.insert(name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateArrow(name));
            }
            arr.push(Arrow { name, source, target });
        }
        let mut rels = Vec::new();
        for r in relations {
            let label = r.join("*");
            if r.len() < 2 {
                return Err(AlgebraError::ShortRelation(label));
            }
            let mut path = Vec::new();
            for name in &r {
                let a = *aidx.get(name).ok_or_else(|| AlgebraError::UnknownArrow(name.clone()))?;
                path.push(a);
            }
            for w in path.windows(2) {
                if arr[w[0]].target != arr[w[1]].source {
                    return Err(AlgebraError::NonComposableRelation(label.clone()));
                }
            }
            rels.push(path);
        }
        Ok(QuiverPresentation { vertices, arrows: arr, relations: rels, field_char })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Opposite presentation: arrows and relation paths reversed. Applying
    /// it twice gives back the original presentation.
    pub fn opposite(&self) -> QuiverPresentation {
        QuiverPresentation {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            field_char: self.field_char,
        }
    }
}

/// A path in the quiver: trivial paths have an empty arrow list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

#[derive(Debug)]
pub struct AlgebraInstance {
    pub presentation: QuiverPresentation,
    /// Nonzero residue paths, ordered by (length, discovery order).
    pub path_basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl PartialEq for AlgebraInstance {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}
impl Eq for AlgebraInstance {}

impl AlgebraInstance {
    pub fn dimension(&self) -> usize {
        self.path_basis.len()
    }

    pub fn field_char(&self) -> u64 {
        self.presentation.field_char
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.num_vertices()
    }

    /// Index of a nonzero path with the given source and arrow sequence.
    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Indices of basis paths with the given source vertex.
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.path_basis.len()).filter(|&i| self.path_basis[i].source == v).collect()
    }
}

/// Does any relation occur as a suffix of the arrow sequence?
fn relation_suffix(pres: &QuiverPresentation, arrows: &[usize]) -> bool {
    pres.relations.iter().any(|r| arrows.len() >= r.len() && arrows[arrows.len() - r.len()..] == r[..])
}

pub const DEFAULT_PATH_CAP: usize = 10_000;

/// Enumerate the path basis of a monomial bound quiver algebra by
/// breadth-first path extension, pruning relation factors. Fails with
/// `NonAdmissible` if the nonzero-path automaton has a reachable cycle.
pub fn build_algebra(
    pres: QuiverPresentation,
    cap: usize,
) -> Result<Arc<AlgebraInstance>, AlgebraError> {
    let max_rel = pres.relations.iter().map(|r| r.len()).max().unwrap_or(1);
    let window = max_rel.saturating_sub(1);

    // State automaton: (endpoint vertex, last `window` arrows). Extension by
    // an arrow is allowed when no relation becomes a suffix. A reachable
    // cycle means arbitrarily long nonzero paths, i.e. non-admissibility.
    type State = (usize, Vec<usize>);
    let succ = |st: &State| -> Vec<State> {
        let (v, win) = st;
        let mut out = Vec::new();
        for (ai, a) in pres.arrows.iter().enumerate() {
            if a.source != *v {
                continue;
            }
            let mut ext = win.clone();
            ext.push(ai);
            if relation_suffix(&pres, &ext) {
                continue;
            }
            if ext.len() > window {
                ext.remove(0);
            }
            out.push((a.target, ext));
        }
        out
    };

    // cycle detection on reachable states (iterative three-color DFS)
    let mut color: HashMap<State, u8> = HashMap::new();
    for v in 0..pres.num_vertices() {
        let start: State = (v, Vec::new());
        if color.contains_key(&start) {
            continue;
        }
        let mut stack: Vec<(State, usize)> = vec![(start.clone(), 0)];
        color.insert(start, 1);
        while let Some((st, next)) = stack.last().cloned() {
            let succs = succ(&st);
            if next < succs.len() {
                stack.last_mut().unwrap().1 += 1;
                let child = succs[next].clone();
                match color.get(&child) {
                    Some(1) => return Err(AlgebraError::NonAdmissible),
                    Some(2) => {}
                    _ => {
                        color.insert(child.clone(), 1);
                        stack.push((child, 0));
                    }
                }
            } else {
                color.insert(st, 2);
                stack.pop();
            }
        }
    }

    // BFS path enumeration
    let mut basis: Vec<Path> = Vec::new();
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut queue: VecDeque<Path> = VecDeque::new();
    for v in 0..pres.num_vertices() {
        let p = Path { source: v, target: v, arrows: Vec::new() };
        seen.insert((v, Vec::new()));
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        if basis.len() >= cap {
            return Err(AlgebraError::CapExceeded(cap));
        }
        basis.push(p.clone());
        for (ai, a) in pres.arrows.iter().enumerate() {
            if a.source != p.target {
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.push(ai);
            if relation_suffix(&pres, &arrows) {
                continue;
            }
            if seen.insert((p.source, arrows.clone())) {
                queue.push_back(Path { source: p.source, target: a.target, arrows });
            }
        }
    }
    // order by (length, discovery); BFS already yields that
    basis.sort_by_key(|p| p.arrows.len());
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.source, p.arrows.clone()), i))
        .collect();
    Ok(Arc::new(AlgebraInstance { presentation: pres, path_basis: basis, index }))
}

/// Opposite algebra instance, rebuilt from the reversed presentation.
pub fn opposite_algebra(alg: &AlgebraInstance) -> Arc<AlgebraInstance> {
    build_algebra(alg.presentation.opposite(), DEFAULT_PATH_CAP)
        .expect("opposite of an admissible algebra is admissible")
}

/// Small named algebras used throughout the test suites and docs.
pub mod test_fixtures {
    use super::*;

    /// Linear A_n quiver 1 -> 2 -> ... -> n, no relations.
    pub fn ka_n(n: usize, p: u64) -> Arc<AlgebraInstance> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        let pres = QuiverPresentation::new(vertices, arrows, vec![], p).unwrap();
        build_algebra(pres, DEFAULT_PATH_CAP).unwrap()
    }

    /// k[x]/(x^m): one vertex, one loop, relation x^m.
    pub fn truncated_poly(m: usize, p: u64) -> Arc<AlgebraInstance> {
        let pres = QuiverPresentation::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
            vec![vec!["x".to_string(); m]],
            p,
        )
        .unwrap();
        build_algebra(pres, DEFAULT_PATH_CAP).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ka2_has_dimension_three() {
        let alg = test_fixtures::ka_n(2, 2);
        // e1, e2, a
        assert_eq!(alg.dimension(), 3);
    }

    #[test]
    fn truncated_poly_square_has_dimension_two() {
        let alg = test_fixtures::truncated_poly(2, 2);
        assert_eq!(alg.dimension(), 2);
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let pres = QuiverPresentation::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
            vec![],
            2,
        )
        .unwrap();
        assert!(matches!(build_algebra(pres, 100), Err(AlgebraError::NonAdmissible)));
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let pres = QuiverPresentation::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
            vec![],
            2,
        )
        .unwrap();
        assert!(matches!(build_algebra(pres, 3), Err(AlgebraError::CapExceeded(3))));
    }

    #[test]
    fn relation_validation() {
        let bad = QuiverPresentation::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
            vec![vec!["x".into()]],
            2,
        );
        assert!(matches!(bad, Err(AlgebraError::ShortRelation(_))));
        let bad = QuiverPresentation::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
            vec![vec!["y".into(), "x".into()]],
            2,
        );
        assert!(matches!(bad, Err(AlgebraError::UnknownArrow(_))));
    }

    #[test]
    fn opposite_is_involutive() {
        let alg = test_fixtures::ka_n(3, 2);
        let opop = alg.presentation.opposite().opposite();
        assert_eq!(opop, alg.presentation);
    }
}
