//! Bound quiver algebras `kQ/I` with an explicit nilpotency bound.
//!
//! Vertices are 0-based. Paths are written source to target: the path
//! `[a, b]` traverses `a` first and then `b`, which in composition notation is
//! the product `ba`. Paths of length at least the bound are zero.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactla::{FieldPrime, Mat};
use crate::rep::Rep;

pub const DEFAULT_BASIS_CAP: usize = 512;
const PATH_ENUMERATION_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has an endpoint outside 0..{}",
                    a.name, vertices
                )));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow name {}",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path in the quiver; the trivial path `e_v` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    /// Nonempty arrow sequence, checked for composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver("empty arrow sequence".into()));
        };
        if arrows.iter().any(|&a| a >= q.arrows.len()) {
            return Err(Error::InvalidQuiver("arrow index out of range".into()));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidQuiver(format!(
                    "arrows {} and {} are not composable",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        Ok(Path {
            start: q.arrow(first).source,
            end: q.arrow(*arrows.last().unwrap()).target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }
    pub fn end(&self) -> usize {
        self.end
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`, when the endpoints match.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.end != next.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            start: self.start,
            end: next.end,
            arrows,
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrow(a).name.as_str()).collect();
        names.join(";")
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), self.start, &self.arrows).cmp(&(
            other.arrows.len(),
            other.start,
            &other.arrows,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Path)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(path: Path) -> Self {
        Relation {
            terms: vec![(1, path)],
        }
    }

    fn validate(&self, field: FieldPrime, q: &Quiver) -> Result<()> {
        let describe = || {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(c, p)| format!("{}*{}", c, p.display(q)))
                .collect();
            parts.join(" + ")
        };
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::NonAdmissibleRelation("empty relation".into()));
        };
        for (_, p) in &self.terms {
            if p.start != first.start || p.end != first.end {
                return Err(Error::NonAdmissibleRelation(format!(
                    "paths in {} are not parallel",
                    describe()
                )));
            }
            if p.len() < 2 {
                return Err(Error::NonAdmissibleRelation(format!(
                    "{} contains a path of length < 2",
                    describe()
                )));
            }
        }
        if self.terms.iter().all(|(c, _)| field.reduce(*c) == 0) {
            return Err(Error::NonAdmissibleRelation(format!(
                "{} has no nonzero coefficient mod {}",
                describe(),
                field.p()
            )));
        }
        Ok(())
    }
}

/// `kQ / (I + J^L)` with a normal-form path basis and structure constants.
#[derive(Debug, PartialEq, Eq)]
pub struct BoundAlgebra {
    field: FieldPrime,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
    /// All paths of length < bound, ascending.
    paths: Vec<Path>,
    path_index: BTreeMap<Path, usize>,
    /// Indices into `paths` of the normal-form basis, ascending.
    basis: Vec<usize>,
    /// Normal form of every path in `paths`, as sparse basis coordinates.
    normal: Vec<Vec<(usize, u32)>>,
    /// Paths of length exactly `bound`; they must act as zero on modules.
    boundary_paths: Vec<Path>,
    /// `mult[i * dim + j]` is the product `b_i` followed by `b_j`.
    mult: Vec<Vec<(usize, u32)>>,
}

/// Builds `kQ/I` truncated at path length `bound`.
pub fn build_algebra(
    field: FieldPrime,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
    basis_cap: usize,
) -> Result<Arc<BoundAlgebra>> {
    if bound < 2 {
        return Err(Error::NonAdmissibleRelation(format!(
            "nilpotency bound {} must be at least 2",
            bound
        )));
    }
    for r in &relations {
        r.validate(field, &quiver)?;
        for (_, p) in &r.terms {
            if p.arrows.iter().any(|&a| a >= quiver.arrows.len()) {
                return Err(Error::InvalidQuiver("relation uses unknown arrow".into()));
            }
        }
    }

    let (paths, boundary_paths) = enumerate_paths(&quiver, bound)?;
    let n = paths.len();
    let path_index: BTreeMap<Path, usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    // Generators of the two-sided ideal inside span(paths of length < bound).
    // Columns are laid out in descending path order so that elimination
    // pivots on the largest paths and the smallest ones survive as basis.
    let col_of = |i: usize| n - 1 - i;
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for r in &relations {
        let (s, t) = (r.terms[0].1.start, r.terms[0].1.end);
        for u in paths.iter().filter(|p| p.end == s) {
            for v in paths.iter().filter(|p| p.start == t) {
                let mut row = vec![0u32; n];
                let mut nonzero = false;
                for (c, p) in &r.terms {
                    let full = u.then(p).and_then(|x| x.then(v)).expect("composable");
                    if full.len() >= bound {
                        continue;
                    }
                    let idx = path_index[&full];
                    let col = col_of(idx);
                    row[col] = field.add(row[col], field.reduce(*c));
                    nonzero |= row[col] != 0;
                }
                if nonzero && !gens.contains(&row) {
                    gens.push(row);
                }
            }
        }
    }
    let ideal = if gens.is_empty() {
        Mat::zeros(field, 0, n)
    } else {
        let flat: Vec<u32> = gens.iter().flatten().copied().collect();
        Mat::from_vec(field, gens.len(), n, flat)
    };
    let (ech, pivots) = ideal.rref();
    let pivot_paths: Vec<usize> = pivots.iter().map(|&c| col_of(c)).collect();
    let basis: Vec<usize> = (0..n).filter(|i| !pivot_paths.contains(i)).collect();
    if basis.len() > basis_cap {
        return Err(Error::BasisTooLarge {
            size: basis.len(),
            cap: basis_cap,
        });
    }
    let mut basis_pos = vec![usize::MAX; n];
    for (k, &i) in basis.iter().enumerate() {
        basis_pos[i] = k;
    }
    let mut normal: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &i in &basis {
        normal[i] = vec![(basis_pos[i], 1 % field.p())];
    }
    for (r, &pc) in pivots.iter().enumerate() {
        let pi = col_of(pc);
        let mut nf = Vec::new();
        for &bi in &basis {
            let e = ech.get(r, col_of(bi));
            if e != 0 {
                nf.push((basis_pos[bi], field.neg(e)));
            }
        }
        nf.sort_unstable();
        normal[pi] = nf;
    }

    let dim = basis.len();
    let mut alg = BoundAlgebra {
        field,
        quiver,
        relations,
        bound,
        paths,
        path_index,
        basis,
        normal,
        boundary_paths,
        mult: Vec::new(),
    };
    let mut mult = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let bi = &alg.paths[alg.basis[i]];
            let bj = &alg.paths[alg.basis[j]];
            mult.push(match bi.then(bj) {
                Some(p) => alg.normal_form(&p),
                None => Vec::new(),
            });
        }
    }
    alg.mult = mult;
    #[cfg(debug_assertions)]
    if dim <= 24 {
        alg.check_associative()?;
    }
    Ok(Arc::new(alg))
}

fn enumerate_paths(q: &Quiver, bound: usize) -> Result<(Vec<Path>, Vec<Path>)> {
    let mut all: Vec<Path> = (0..q.vertices).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for len in 1..=bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        start: p.start,
                        end: a.target,
                        arrows,
                    });
                }
            }
        }
        if all.len() + next.len() > PATH_ENUMERATION_CAP {
            return Err(Error::BasisTooLarge {
                size: all.len() + next.len(),
                cap: PATH_ENUMERATION_CAP,
            });
        }
        if len == bound {
            next.sort();
            all.sort();
            return Ok((all, next));
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    unreachable!("loop returns at len == bound")
}

impl BoundAlgebra {
    pub fn field(&self) -> FieldPrime {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn vertices(&self) -> usize {
        self.quiver.vertices
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_path(&self, k: usize) -> &Path {
        &self.paths[self.basis[k]]
    }

    pub fn basis_paths(&self) -> impl Iterator<Item = &Path> + '_ {
        self.basis.iter().map(move |&i| &self.paths[i])
    }

    pub fn boundary_paths(&self) -> &[Path] {
        &self.boundary_paths
    }

    /// Sparse normal-form coordinates; empty for zero (including every path
    /// of length at least the bound).
    pub fn normal_form(&self, p: &Path) -> Vec<(usize, u32)> {
        if p.len() >= self.bound {
            return Vec::new();
        }
        match self.path_index.get(p) {
            Some(&i) => self.normal[i].clone(),
            None => Vec::new(),
        }
    }

    /// Product of basis elements `i` then `j` (composition `b_j b_i`).
    pub fn multiply(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mult[i * self.dim() + j]
    }

    /// Basis indices of normal-form paths from `from` to `to`, ascending.
    pub fn basis_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| {
                let p = self.basis_path(k);
                p.start == from && p.end == to
            })
            .collect()
    }

    /// Structure constants are associative on all basis triples.
    pub fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        let mul_vec = |x: &[(usize, u32)], j: usize| -> Vec<u32> {
            let mut out = vec![0u32; d];
            for &(i, c) in x {
                for &(k, e) in self.multiply(i, j) {
                    out[k] = f.add(out[k], f.mul(c, e));
                }
            }
            out
        };
        for a in 0..d {
            for b in 0..d {
                let ab = self.multiply(a, b).to_vec();
                for c in 0..d {
                    let left = mul_vec(&ab, c);
                    let bc = self.multiply(b, c);
                    let mut right = vec![0u32; d];
                    for &(k, e) in bc {
                        for &(l, g) in self.multiply(a, k) {
                            right[l] = f.add(right[l], f.mul(e, g));
                        }
                    }
                    if left != right {
                        return Err(Error::Internal(format!(
                            "structure constants not associative on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.vertices() {
            Err(Error::VertexOutOfRange(i))
        } else {
            Ok(())
        }
    }
}

/// Indecomposable projective `e_i A` with top `S_i`: spanned by normal-form
/// paths starting at `i`, arrows acting by path extension.
pub fn proj(alg: &Arc<BoundAlgebra>, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    let f = alg.field;
    let n = alg.vertices();
    let fibers: Vec<Vec<usize>> = (0..n).map(|v| alg.basis_between(i, v)).collect();
    let dims: Vec<usize> = fibers.iter().map(Vec::len).collect();
    let arrows = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let src = &fibers[a.source];
            let tgt = &fibers[a.target];
            let step = Path::from_arrows(&alg.quiver, &[ai]).expect("single arrow");
            let mut m = Mat::zeros(f, tgt.len(), src.len());
            for (c, &k) in src.iter().enumerate() {
                let ext = alg.basis_path(k).then(&step).expect("composable");
                for (b, coeff) in alg.normal_form(&ext) {
                    let r = tgt.iter().position(|&t| t == b).expect("parallel normal form");
                    m.set(r, c, coeff);
                }
            }
            m
        })
        .collect();
    Rep::new(alg.clone(), dims, arrows)
}

/// Indecomposable injective `D(A e_i)` with socle `S_i`: the fiber at `v` is
/// the dual of the paths from `v` to `i`, arrows acting by the transpose of
/// path prepending.
pub fn inj(alg: &Arc<BoundAlgebra>, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    let f = alg.field;
    let n = alg.vertices();
    let fibers: Vec<Vec<usize>> = (0..n).map(|v| alg.basis_between(v, i)).collect();
    let dims: Vec<usize> = fibers.iter().map(Vec::len).collect();
    let arrows = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // paths from target to i, prepended by the arrow, land in paths
            // from source to i; the module map is the transpose.
            let src = &fibers[a.source];
            let tgt = &fibers[a.target];
            let step = Path::from_arrows(&alg.quiver, &[ai]).expect("single arrow");
            let mut m = Mat::zeros(f, tgt.len(), src.len());
            for (r, &k) in tgt.iter().enumerate() {
                let ext = step.then(alg.basis_path(k)).expect("composable");
                for (b, coeff) in alg.normal_form(&ext) {
                    let c = src.iter().position(|&s| s == b).expect("parallel normal form");
                    m.set(r, c, coeff);
                }
            }
            m
        })
        .collect();
    Rep::new(alg.clone(), dims, arrows)
}

pub fn simple(alg: &Arc<BoundAlgebra>, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    let mut dims = vec![0; alg.vertices()];
    dims[i] = 1;
    let arrows = alg
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(alg.field, dims[a.target], dims[a.source]))
        .collect();
    Rep::new(alg.clone(), dims, arrows)
}

/// The regular module `A_A = ⊕ proj(i)`.
pub fn regular(alg: &Arc<BoundAlgebra>) -> Result<Rep> {
    let ps: Result<Vec<Rep>> = (0..alg.vertices()).map(|i| proj(alg, i)).collect();
    Ok(crate::rep::direct_sum(alg, &ps?).object)
}

pub fn all_projectives(alg: &Arc<BoundAlgebra>) -> Vec<Rep> {
    (0..alg.vertices())
        .map(|i| proj(alg, i).expect("vertex in range"))
        .collect()
}

pub fn all_injectives(alg: &Arc<BoundAlgebra>) -> Vec<Rep> {
    (0..alg.vertices())
        .map(|i| inj(alg, i).expect("vertex in range"))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn dimensions_of_small_algebras() {
        let pt = point();
        assert_eq!(pt.dim(), 1);
        assert!(pt.basis_path(0).is_trivial());

        let a = a2();
        assert_eq!(a.dim(), 3);
        let names: Vec<String> = a.basis_paths().map(|p| p.display(a.quiver())).collect();
        assert_eq!(names, vec!["e1", "e2", "a"]);

        assert_eq!(n3().dim(), 6);
    }

    #[test]
    fn commutativity_relation_identifies_parallel_paths() {
        // square 1->2->4, 1->3->4 with ab = cd, bound 3
        let q = Quiver::new(
            4,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 3 },
                Arrow { name: "c".into(), source: 0, target: 2 },
                Arrow { name: "d".into(), source: 2, target: 3 },
            ],
        )
        .unwrap();
        let ab = Path::from_arrows(&q, &[0, 1]).unwrap();
        let cd = Path::from_arrows(&q, &[2, 3]).unwrap();
        let rel = Relation::new(vec![(1, ab.clone()), (-1, cd.clone())]);
        let f3 = FieldPrime::new(3).unwrap();
        let alg = build_algebra(f3, q, vec![rel], 3, DEFAULT_BASIS_CAP).unwrap();
        // 4 trivial + 4 arrows + one surviving length-2 path
        assert_eq!(alg.dim(), 9);
        let nab = alg.normal_form(&ab);
        let ncd = alg.normal_form(&cd);
        assert_eq!(nab, ncd);
        assert_eq!(nab.len(), 1);
        alg.check_associative().unwrap();
    }

    #[test]
    fn rejects_bad_relations() {
        let q = Quiver::new(2, vec![Arrow { name: "a".into(), source: 0, target: 1 }]).unwrap();
        let a = Path::from_arrows(&q, &[0]).unwrap();
        let err = build_algebra(FieldPrime::two(), q.clone(), vec![Relation::monomial(a)], 2, 16);
        assert!(matches!(err, Err(Error::NonAdmissibleRelation(_))));
        let err = build_algebra(FieldPrime::two(), q.clone(), vec![], 1, 16);
        assert!(matches!(err, Err(Error::NonAdmissibleRelation(_))));
        assert!(Quiver::new(1, vec![Arrow { name: "x".into(), source: 0, target: 3 }]).is_err());
    }

    #[test]
    fn basis_cap_is_enforced() {
        let q = Quiver::new(1, vec![Arrow { name: "x".into(), source: 0, target: 0 }]).unwrap();
        let err = build_algebra(FieldPrime::two(), q, vec![], 10, 5);
        assert!(matches!(err, Err(Error::BasisTooLarge { size: 10, cap: 5 })));
    }

    #[test]
    fn projectives_injectives_simples() {
        let n = n3();
        assert_eq!(proj(&n, 0).unwrap().dims(), &[1, 1, 0]);
        let a = a2();
        assert_eq!(proj(&a, 1).unwrap(), simple(&a, 1).unwrap());
        assert_eq!(proj(&point(), 0).unwrap().total_dim(), 1);
        assert_eq!(proj(&point(), 0).unwrap(), simple(&point(), 0).unwrap());

        assert_eq!(inj(&a, 0).unwrap(), simple(&a, 0).unwrap());
        assert_eq!(inj(&a, 1).unwrap(), proj(&a, 0).unwrap());
        for i in 0..3 {
            assert_eq!(inj(&n, i).unwrap(), proj(&n, (i + 2) % 3).unwrap());
        }
        assert_eq!(simple(&n, 0).unwrap().dims(), &[1, 0, 0]);
        assert!(proj(&n, 3).is_err());
    }

    #[test]
    fn algebra_dimension_is_sum_of_projectives() {
        for alg in [point(), a2(), n3()] {
            let total: usize = all_projectives(&alg).iter().map(Rep::total_dim).sum();
            assert_eq!(total, alg.dim());
            let total: usize = all_injectives(&alg).iter().map(Rep::total_dim).sum();
            assert_eq!(total, alg.dim());
        }
    }
}
