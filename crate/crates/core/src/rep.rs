//! Finite-dimensional modules over a bound quiver algebra, as quiver
//! representations, and the exact-category machinery on them.
//!
//! A morphism `f: X -> Y` is a tuple of vertex matrices `f_v: X_v -> Y_v`
//! with `Y_a f_s = f_t X_a` for every arrow `a: s -> t`. Composition follows
//! the usual convention: `g.compose(&f)` is `gf`, first `f` then `g`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{inj, proj, BoundAlgebra, Path};
use crate::error::{Error, Result};
use crate::exactla::{FieldPrime, Mat, QuotientReducer, VectorEnumerator};

/// Default bound on `p^(dim Hom)` for exhaustive searches.
pub const DEFAULT_SEARCH_CAP: u64 = 4096;

struct RepInner {
    alg: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    arrows: Vec<Mat>,
}

/// A representation of the bound quiver; cheap to clone.
#[derive(Clone)]
pub struct Rep {
    inner: Arc<RepInner>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.same_algebra(other)
                && self.inner.dims == other.inner.dims
                && self.inner.arrows == other.inner.arrows)
    }
}
impl Eq for Rep {}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.inner.dims)?;
        f.debug_list().entries(self.inner.arrows.iter()).finish()
    }
}

impl Rep {
    /// Validates matrix shapes, relations, and vanishing of paths at the
    /// nilpotency bound.
    pub fn new(alg: Arc<BoundAlgebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Self> {
        let rep = Rep {
            inner: Arc::new(RepInner { alg, dims, arrows }),
        };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<BoundAlgebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Self {
        let rep = Rep {
            inner: Arc::new(RepInner { alg, dims, arrows }),
        };
        debug_assert!(rep.validate().is_ok(), "constructed representation is invalid");
        rep
    }

    pub fn zero(alg: &Arc<BoundAlgebra>) -> Self {
        let n = alg.vertices();
        let arrows = alg
            .quiver()
            .arrows()
            .iter()
            .map(|_| Mat::zeros(alg.field(), 0, 0))
            .collect();
        Rep::new_unchecked(alg.clone(), vec![0; n], arrows)
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.inner.alg;
        let q = alg.quiver();
        if self.inner.dims.len() != q.vertices() {
            return Err(Error::InvalidRep(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                self.inner.dims.len(),
                q.vertices()
            )));
        }
        if self.inner.arrows.len() != q.arrows().len() {
            return Err(Error::InvalidRep("one matrix per arrow required".into()));
        }
        for (a, m) in q.arrows().iter().zip(&self.inner.arrows) {
            if m.rows() != self.inner.dims[a.target] || m.cols() != self.inner.dims[a.source] {
                return Err(Error::InvalidRep(format!(
                    "matrix for arrow {} is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    self.inner.dims[a.target],
                    self.inner.dims[a.source]
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::InvalidRep("matrix over the wrong field".into()));
            }
        }
        for r in alg.relations() {
            let (s, t) = (r.terms[0].1.start(), r.terms[0].1.end());
            let mut acc = Mat::zeros(alg.field(), self.inner.dims[t], self.inner.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_action(p).scale(alg.field().reduce(*c)));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRep("a relation does not act as zero".into()));
            }
        }
        for p in alg.boundary_paths() {
            if !self.path_action(p).is_zero() {
                return Err(Error::InvalidRep(format!(
                    "path {} of length {} does not act as zero",
                    p.display(q),
                    alg.bound()
                )));
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &Arc<BoundAlgebra> {
        &self.inner.alg
    }
    pub fn field(&self) -> FieldPrime {
        self.inner.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.inner.dims[v]
    }
    pub fn arrow(&self, a: usize) -> &Mat {
        &self.inner.arrows[a]
    }
    pub fn arrows(&self) -> &[Mat] {
        &self.inner.arrows
    }
    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_algebra(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.inner.alg, &other.inner.alg) || *self.inner.alg == *other.inner.alg
    }

    /// Matrix by which a path acts, `X_{a_k} ... X_{a_1}`.
    pub fn path_action(&self, p: &Path) -> Mat {
        let mut m = Mat::identity(self.field(), self.inner.dims[p.start()]);
        for &a in p.arrows() {
            m = self.inner.arrows[a].mul(&m);
        }
        m
    }

    /// Offsets of the vertex blocks in the flattened coordinates of
    /// `Hom(self, y)`.
    fn hom_layout(&self, y: &Rep) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.inner.dims.len());
        let mut total = 0;
        for v in 0..self.inner.dims.len() {
            offs.push(total);
            total += y.inner.dims[v] * self.inner.dims[v];
        }
        (offs, total)
    }

    pub fn dims_string(&self) -> String {
        let parts: Vec<String> = self.inner.dims.iter().map(|d| format!("{}", d)).collect();
        format!("({})", parts.join(","))
    }
}

/// A module homomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMor {
    src: Rep,
    tgt: Rep,
    maps: Vec<Mat>,
}

impl fmt::Debug for RepMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RepMor{}->{}{:?}",
            self.src.dims_string(),
            self.tgt.dims_string(),
            self.maps
        )
    }
}

impl RepMor {
    /// Validates shapes and the intertwining squares.
    pub fn new(src: Rep, tgt: Rep, maps: Vec<Mat>) -> Result<Self> {
        if !src.same_algebra(&tgt) {
            return Err(Error::AlgebraMismatch);
        }
        let f = RepMor { src, tgt, maps };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: Rep, tgt: Rep, maps: Vec<Mat>) -> Self {
        let f = RepMor { src, tgt, maps };
        debug_assert!(f.validate().is_ok(), "constructed morphism is invalid: {:?}", f);
        f
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.src.dims().len();
        if self.maps.len() != n {
            return Err(Error::InvalidMorphism("one matrix per vertex required".into()));
        }
        for v in 0..n {
            let m = &self.maps[v];
            if m.rows() != self.tgt.dim_at(v) || m.cols() != self.src.dim_at(v) {
                return Err(Error::InvalidMorphism(format!("bad shape at vertex {}", v + 1)));
            }
        }
        for (ai, a) in self.src.alg().quiver().arrows().iter().enumerate() {
            let lhs = self.tgt.arrow(ai).mul(&self.maps[a.source]);
            let rhs = self.maps[a.target].mul(self.src.arrow(ai));
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "square for arrow {} does not commute",
                    a.name
                )));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Rep) -> Self {
        let maps = x.dims().iter().map(|&d| Mat::identity(x.field(), d)).collect();
        RepMor::new_unchecked(x.clone(), x.clone(), maps)
    }

    pub fn zero(x: &Rep, y: &Rep) -> Self {
        let maps = x
            .dims()
            .iter()
            .zip(y.dims())
            .map(|(&dx, &dy)| Mat::zeros(x.field(), dy, dx))
            .collect();
        RepMor::new_unchecked(x.clone(), y.clone(), maps)
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn tgt(&self) -> &Rep {
        &self.tgt
    }
    pub fn map_at(&self, v: usize) -> &Mat {
        &self.maps[v]
    }
    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }
    pub fn field(&self) -> FieldPrime {
        self.src.field()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &RepMor) -> RepMor {
        assert!(
            first.tgt == self.src,
            "composition of non-composable morphisms"
        );
        let maps = self
            .maps
            .iter()
            .zip(&first.maps)
            .map(|(g, f)| g.mul(f))
            .collect();
        RepMor {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            maps,
        }
    }

    fn parallel(&self, other: &RepMor) {
        assert!(
            self.src == other.src && self.tgt == other.tgt,
            "morphisms are not parallel"
        );
    }

    pub fn add(&self, other: &RepMor) -> RepMor {
        self.parallel(other);
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        RepMor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps,
        }
    }

    pub fn sub(&self, other: &RepMor) -> RepMor {
        self.parallel(other);
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect();
        RepMor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps,
        }
    }

    pub fn neg(&self) -> RepMor {
        RepMor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps: self.maps.iter().map(Mat::neg).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> RepMor {
        RepMor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.rank() == m.rows())
    }

    /// Vertex blocks concatenated in row-major order.
    pub fn flatten(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for m in &self.maps {
            out.extend_from_slice(m.data());
        }
        out
    }

    /// Inverse of [`RepMor::flatten`]; the result is not checked to be a
    /// module map.
    pub fn from_flat(src: &Rep, tgt: &Rep, flat: &[u32]) -> RepMor {
        let f = src.field();
        let mut maps = Vec::with_capacity(src.dims().len());
        let mut off = 0;
        for v in 0..src.dims().len() {
            let (r, c) = (tgt.dim_at(v), src.dim_at(v));
            maps.push(Mat::from_vec(f, r, c, flat[off..off + r * c].to_vec()));
            off += r * c;
        }
        RepMor {
            src: src.clone(),
            tgt: tgt.clone(),
            maps,
        }
    }

    /// Vertexwise inverse of an isomorphism.
    pub fn inverse(&self) -> Option<RepMor> {
        let maps: Option<Vec<Mat>> = self.maps.iter().map(Mat::inverse).collect();
        Some(RepMor::new_unchecked(self.tgt.clone(), self.src.clone(), maps?))
    }
}

/// A basis of `Hom(X, Y)` together with a fast coordinate map.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: Rep,
    tgt: Rep,
    basis: Vec<RepMor>,
    /// Position of the unit coordinate of each basis vector in the
    /// flattened layout.
    free: Vec<usize>,
}

impl HomSpace {
    pub fn new(x: &Rep, y: &Rep) -> Result<Self> {
        if !x.same_algebra(y) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = x.alg();
        let f = x.field();
        let (offs, total) = x.hom_layout(y);
        let var = |v: usize, r: usize, c: usize| offs[v] + r * x.dim_at(v) + c;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let ya = y.arrow(ai);
            let xa = x.arrow(ai);
            // (Y_a f_s - f_t X_a)[r][c] = 0
            for r in 0..y.dim_at(t) {
                for c in 0..x.dim_at(s) {
                    let mut eq = vec![0u32; total];
                    for k in 0..y.dim_at(s) {
                        let coef = ya.get(r, k);
                        if coef != 0 {
                            let idx = var(s, k, c);
                            eq[idx] = f.add(eq[idx], coef);
                        }
                    }
                    for k in 0..x.dim_at(t) {
                        let coef = xa.get(k, c);
                        if coef != 0 {
                            let idx = var(t, r, k);
                            eq[idx] = f.sub(eq[idx], coef);
                        }
                    }
                    if eq.iter().any(|&e| e != 0) {
                        rows.push(eq);
                    }
                }
            }
        }
        let system = Mat::from_vec(f, rows.len(), total, rows.concat());
        let (_, pivots) = system.rref();
        let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
        let k = system.kernel_basis();
        let basis = (0..k.cols())
            .map(|j| RepMor::new_unchecked_from_flat(x, y, &k.column(j)))
            .collect();
        Ok(HomSpace {
            src: x.clone(),
            tgt: y.clone(),
            basis,
            free,
        })
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn tgt(&self) -> &Rep {
        &self.tgt
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[RepMor] {
        &self.basis
    }

    /// Coordinates of a morphism that is known to lie in this space.
    pub fn coords(&self, f: &RepMor) -> Vec<u32> {
        debug_assert!(f.src == self.src && f.tgt == self.tgt, "coords of a foreign morphism");
        let flat = f.flatten();
        self.free.iter().map(|&i| flat[i]).collect()
    }

    pub fn element(&self, coords: &[u32]) -> RepMor {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let mut acc = RepMor::zero(&self.src, &self.tgt);
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Flattened basis vectors as columns.
    pub fn matrix(&self) -> Mat {
        let (_, total) = self.src.hom_layout(&self.tgt);
        let cols: Vec<Vec<u32>> = self.basis.iter().map(RepMor::flatten).collect();
        Mat::from_columns(self.src.field(), total, &cols)
    }

    /// Coordinates of an arbitrary morphism `X -> Y`, or `None` if it is not
    /// a module map. Slower than [`HomSpace::coords`].
    pub fn try_coords(&self, f: &RepMor) -> Option<Vec<u32>> {
        let c = self.coords(f);
        (self.element(&c) == *f).then_some(c)
    }
}

impl RepMor {
    fn new_unchecked_from_flat(x: &Rep, y: &Rep, flat: &[u32]) -> RepMor {
        let f = RepMor::from_flat(x, y, flat);
        debug_assert!(f.validate().is_ok());
        f
    }
}

pub fn hom_basis(x: &Rep, y: &Rep) -> Result<Vec<RepMor>> {
    Ok(HomSpace::new(x, y)?.basis)
}

/// Solves `op(h) = target` for `h` in a hom-space, where `op` is linear.
/// Returns a particular solution and a basis of the homogeneous solutions.
pub fn solve_in_hom(
    space: &HomSpace,
    op: impl Fn(&RepMor) -> RepMor,
    target: &RepMor,
) -> Result<Option<(RepMor, Vec<RepMor>)>> {
    let f = space.src().field();
    let rhs = target.flatten();
    let cols: Vec<Vec<u32>> = space.basis().iter().map(|b| op(b).flatten()).collect();
    let a = Mat::from_columns(f, rhs.len(), &cols);
    let b = Mat::column_vector(f, &rhs);
    let Some(x) = a.solve(&b)? else {
        return Ok(None);
    };
    let part = space.element(&x.column(0));
    let k = a.kernel_basis();
    let homog = (0..k.cols()).map(|j| space.element(&k.column(j))).collect();
    Ok(Some((part, homog)))
}

/// The unique `h: X -> K` with `mono ∘ h = m`, when the image of `m` lies in
/// the image of `mono`.
pub fn lift_through_mono(mono: &RepMor, m: &RepMor) -> Result<RepMor> {
    let mut maps = Vec::with_capacity(m.maps().len());
    for (k, mv) in mono.maps().iter().zip(m.maps()) {
        let l = k
            .left_inverse()
            .ok_or_else(|| Error::Precondition("map is not a monomorphism".into()))?;
        let h = l.mul(mv);
        if k.mul(&h) != *mv {
            return Err(Error::Precondition("morphism does not factor through the monomorphism".into()));
        }
        maps.push(h);
    }
    RepMor::new(m.src().clone(), mono.src().clone(), maps)
}

/// The unique `h: C -> D` with `h ∘ epi = m`, when `m` vanishes on the kernel
/// of `epi`.
pub fn descend_through_epi(epi: &RepMor, m: &RepMor) -> Result<RepMor> {
    let mut maps = Vec::with_capacity(m.maps().len());
    for (q, mv) in epi.maps().iter().zip(m.maps()) {
        let r = q
            .right_inverse()
            .ok_or_else(|| Error::Precondition("map is not an epimorphism".into()))?;
        let h = mv.mul(&r);
        if h.mul(q) != *mv {
            return Err(Error::Precondition("morphism does not factor through the epimorphism".into()));
        }
        maps.push(h);
    }
    RepMor::new(epi.tgt().clone(), m.tgt().clone(), maps)
}

/// Kernel object and its inclusion into the source.
pub fn kernel(f: &RepMor) -> (Rep, RepMor) {
    let x = f.src();
    let field = x.field();
    let incl: Vec<Mat> = f.maps().iter().map(Mat::kernel_basis).collect();
    let lefts: Vec<Mat> = incl
        .iter()
        .map(|k| k.left_inverse().expect("kernel basis has full column rank"))
        .collect();
    let arrows = x
        .alg()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| lefts[a.target].mul(&x.arrow(ai).mul(&incl[a.source])))
        .collect();
    let dims = incl.iter().map(Mat::cols).collect();
    let k = Rep::new_unchecked(x.alg().clone(), dims, arrows);
    let _ = field;
    let mono = RepMor::new_unchecked(k.clone(), x.clone(), incl);
    (k, mono)
}

/// Cokernel object and the projection from the target.
pub fn cokernel(f: &RepMor) -> (Rep, RepMor) {
    let y = f.tgt();
    let proj: Vec<Mat> = f.maps().iter().map(Mat::cokernel_projection).collect();
    quotient_by_projections(y, proj)
}

/// Quotient module given a full-row-rank projection per vertex whose kernels
/// form a submodule.
fn quotient_by_projections(y: &Rep, proj: Vec<Mat>) -> (Rep, RepMor) {
    let rights: Vec<Mat> = proj
        .iter()
        .map(|q| q.right_inverse().expect("projection has full row rank"))
        .collect();
    let arrows = y
        .alg()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| proj[a.target].mul(&y.arrow(ai).mul(&rights[a.source])))
        .collect();
    let dims = proj.iter().map(Mat::rows).collect();
    let c = Rep::new_unchecked(y.alg().clone(), dims, arrows);
    let epi = RepMor::new_unchecked(y.clone(), c.clone(), proj);
    (c, epi)
}

/// Image object with its inclusion into the target and the corestriction.
pub fn image(f: &RepMor) -> (Rep, RepMor, RepMor) {
    let y = f.tgt();
    let incl: Vec<Mat> = f.maps().iter().map(Mat::column_space).collect();
    let lefts: Vec<Mat> = incl
        .iter()
        .map(|b| b.left_inverse().expect("column basis has full column rank"))
        .collect();
    let arrows = y
        .alg()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| lefts[a.target].mul(&y.arrow(ai).mul(&incl[a.source])))
        .collect();
    let dims = incl.iter().map(Mat::cols).collect();
    let im = Rep::new_unchecked(y.alg().clone(), dims, arrows);
    let corestriction = lefts.iter().zip(f.maps()).map(|(l, m)| l.mul(m)).collect();
    let mono = RepMor::new_unchecked(im.clone(), y.clone(), incl);
    let epi = RepMor::new_unchecked(f.src().clone(), im.clone(), corestriction);
    (im, mono, epi)
}

/// A biproduct with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: Rep,
    pub summands: Vec<Rep>,
    pub injections: Vec<RepMor>,
    pub projections: Vec<RepMor>,
}

pub fn direct_sum(alg: &Arc<BoundAlgebra>, xs: &[Rep]) -> DirectSum {
    let f = alg.field();
    let n = alg.vertices();
    let dims: Vec<usize> = (0..n).map(|v| xs.iter().map(|x| x.dim_at(v)).sum()).collect();
    let arrows = (0..alg.quiver().arrows().len())
        .map(|ai| {
            let blocks: Vec<&Mat> = xs.iter().map(|x| x.arrow(ai)).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let object = Rep::new_unchecked(alg.clone(), dims.clone(), arrows);
    let mut offs = vec![0usize; n];
    let mut injections = Vec::with_capacity(xs.len());
    let mut projections = Vec::with_capacity(xs.len());
    for x in xs {
        let mut inj_maps = Vec::with_capacity(n);
        let mut proj_maps = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Mat::zeros(f, dims[v], x.dim_at(v));
            let mut p = Mat::zeros(f, x.dim_at(v), dims[v]);
            for k in 0..x.dim_at(v) {
                i.set(offs[v] + k, k, 1);
                p.set(k, offs[v] + k, 1);
            }
            inj_maps.push(i);
            proj_maps.push(p);
            offs[v] += x.dim_at(v);
        }
        injections.push(RepMor::new_unchecked(x.clone(), object.clone(), inj_maps));
        projections.push(RepMor::new_unchecked(object.clone(), x.clone(), proj_maps));
    }
    DirectSum {
        object,
        summands: xs.to_vec(),
        injections,
        projections,
    }
}

impl DirectSum {
    /// The map `X -> ⊕ Y_k` with components `fs[k]: X -> Y_k`.
    pub fn tuple(&self, x: &Rep, fs: &[RepMor]) -> RepMor {
        assert_eq!(fs.len(), self.summands.len());
        let mut acc = RepMor::zero(x, &self.object);
        for (f, i) in fs.iter().zip(&self.injections) {
            acc = acc.add(&i.compose(f));
        }
        acc
    }

    /// The map `⊕ X_k -> Y` with components `fs[k]: X_k -> Y`.
    pub fn cotuple(&self, y: &Rep, fs: &[RepMor]) -> RepMor {
        assert_eq!(fs.len(), self.summands.len());
        let mut acc = RepMor::zero(&self.object, y);
        for (f, p) in fs.iter().zip(&self.projections) {
            acc = acc.add(&f.compose(p));
        }
        acc
    }
}

/// Largest semisimple submodule: at each vertex, the common kernel of all
/// outgoing arrows.
pub fn socle(x: &Rep) -> (Rep, RepMor) {
    let alg = x.alg();
    let f = x.field();
    let n = alg.vertices();
    let mut incl = Vec::with_capacity(n);
    for v in 0..n {
        let outs: Vec<&Mat> = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == v)
            .map(|(ai, _)| x.arrow(ai))
            .collect();
        let stacked = Mat::vstack(f, x.dim_at(v), &outs);
        incl.push(stacked.kernel_basis());
    }
    let dims: Vec<usize> = incl.iter().map(Mat::cols).collect();
    let arrows = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
        .collect();
    let s = Rep::new_unchecked(alg.clone(), dims, arrows);
    let mono = RepMor::new_unchecked(s.clone(), x.clone(), incl);
    (s, mono)
}

/// `X / rad X`, where the radical is the sum of the arrow images.
pub fn top(x: &Rep) -> (Rep, RepMor) {
    let alg = x.alg();
    let f = x.field();
    let proj: Vec<Mat> = (0..alg.vertices())
        .map(|v| {
            let ins: Vec<&Mat> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .map(|(ai, _)| x.arrow(ai))
                .collect();
            Mat::hstack(f, x.dim_at(v), &ins).cokernel_projection()
        })
        .collect();
    quotient_by_projections(x, proj)
}

/// `0 -> X -> I_X -> ΣX -> 0` with `I_X` an injective envelope.
#[derive(Clone, Debug)]
pub struct CosyzygySeq {
    pub envelope: Rep,
    pub mono: RepMor,
    pub cosyzygy: Rep,
    pub proj: RepMor,
}

/// `0 -> ΩX -> P_X -> X -> 0` with `P_X` a projective cover.
#[derive(Clone, Debug)]
pub struct SyzygySeq {
    pub syzygy: Rep,
    pub mono: RepMor,
    pub cover: Rep,
    pub epi: RepMor,
}

/// Injective envelope: one copy of `inj(i)` per socle dimension at `i`. The
/// map into `inj(i)` attached to a functional `λ` on `X_i` sends `x` at
/// vertex `v` to `q ↦ λ(q x)` over paths `q: v -> i`; choosing the `λ` dual
/// to a socle basis makes the map injective on the socle, hence injective.
pub fn injective_envelope(x: &Rep) -> (Rep, RepMor) {
    let alg = x.alg();
    let n = alg.vertices();
    let (_, soc) = socle(x);
    let mut summands = Vec::new();
    let mut comps = Vec::new();
    for i in 0..n {
        let s = soc.map_at(i);
        if s.cols() == 0 {
            continue;
        }
        let lambda = s.left_inverse().expect("socle basis has full column rank");
        let inj_i = inj(alg, i).expect("vertex in range");
        for k in 0..s.cols() {
            let row = lambda.select_rows(&[k]);
            let maps = (0..n)
                .map(|v| {
                    let paths = alg.basis_between(v, i);
                    let rows: Vec<Mat> = paths
                        .iter()
                        .map(|&b| row.mul(&x.path_action(alg.basis_path(b))))
                        .collect();
                    let refs: Vec<&Mat> = rows.iter().collect();
                    Mat::vstack(x.field(), x.dim_at(v), &refs)
                })
                .collect();
            comps.push(RepMor::new_unchecked(x.clone(), inj_i.clone(), maps));
            summands.push(inj_i.clone());
        }
    }
    let sum = direct_sum(alg, &summands);
    let mono = sum.tuple(x, &comps);
    debug_assert!(mono.is_mono());
    (sum.object, mono)
}

/// Projective cover: one copy of `proj(i)` per top dimension at `i`, the
/// generator `e_i` mapped to a lift of a top basis vector.
pub fn projective_cover(x: &Rep) -> (Rep, RepMor) {
    let alg = x.alg();
    let n = alg.vertices();
    let (_, t) = top(x);
    let mut summands = Vec::new();
    let mut comps = Vec::new();
    for i in 0..n {
        let q = t.map_at(i);
        if q.rows() == 0 {
            continue;
        }
        let lifts = q.right_inverse().expect("top projection has full row rank");
        let proj_i = proj(alg, i).expect("vertex in range");
        for k in 0..q.rows() {
            let gen = lifts.select_columns(&[k]);
            let maps = (0..n)
                .map(|v| {
                    let paths = alg.basis_between(i, v);
                    let cols: Vec<Mat> = paths
                        .iter()
                        .map(|&b| x.path_action(alg.basis_path(b)).mul(&gen))
                        .collect();
                    let refs: Vec<&Mat> = cols.iter().collect();
                    Mat::hstack(x.field(), x.dim_at(v), &refs)
                })
                .collect();
            comps.push(RepMor::new_unchecked(proj_i.clone(), x.clone(), maps));
            summands.push(proj_i.clone());
        }
    }
    let sum = direct_sum(alg, &summands);
    let epi = sum.cotuple(x, &comps);
    debug_assert!(epi.is_epi());
    (sum.object, epi)
}

pub fn cosyzygy_seq(x: &Rep) -> CosyzygySeq {
    let (envelope, mono) = injective_envelope(x);
    let (cosyzygy, proj) = cokernel(&mono);
    CosyzygySeq {
        envelope,
        mono,
        cosyzygy,
        proj,
    }
}

pub fn syzygy_seq(x: &Rep) -> SyzygySeq {
    let (cover, epi) = projective_cover(x);
    let (syzygy, mono) = kernel(&epi);
    SyzygySeq {
        syzygy,
        mono,
        cover,
        epi,
    }
}

/// `ΣX = coker(X -> I_X)`.
pub fn cosyzygy(x: &Rep) -> Rep {
    cosyzygy_seq(x).cosyzygy
}

/// `ΩX = ker(P_X -> X)`.
pub fn syzygy(x: &Rep) -> Rep {
    syzygy_seq(x).syzygy
}

/// `Ext^1(X, Y)` as the cokernel of restriction `Hom(P_X, Y) -> Hom(ΩX, Y)`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Representatives `ΩX -> Y` of a basis of the extension space.
    pub cocycles: Vec<RepMor>,
}

pub fn ext1(x: &Rep, y: &Rep) -> Result<Ext1> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let seq = syzygy_seq(x);
    let target = HomSpace::new(&seq.syzygy, y)?;
    let source = HomSpace::new(&seq.cover, y)?;
    let cols: Vec<Vec<u32>> = source
        .basis()
        .iter()
        .map(|g| target.coords(&g.compose(&seq.mono)))
        .collect();
    let sub = Mat::from_columns(x.field(), target.dim(), &cols);
    let red = QuotientReducer::new(x.field(), target.dim(), &sub);
    let cocycles = red
        .transversal()
        .iter()
        .map(|&t| target.basis()[t].clone())
        .collect();
    Ok(Ext1 {
        dim: red.quotient_dim(),
        cocycles,
    })
}

pub fn ext1_dim(x: &Rep, y: &Rep) -> Result<usize> {
    Ok(ext1(x, y)?.dim)
}

/// Visits nonzero coefficient vectors: unit vectors first, then every vector
/// in lexicographic order, stopping after `cap` candidates. Returns whether
/// the enumeration was exhaustive together with the first hit.
pub(crate) fn search_combinations<T>(
    field: FieldPrime,
    dim: usize,
    cap: u64,
    mut visit: impl FnMut(&[u32]) -> Option<T>,
) -> (bool, Option<T>) {
    let exhaustive = field.count_vectors(dim, cap).is_some();
    let mut budget = cap;
    let mut unit = vec![0u32; dim];
    for k in 0..dim {
        if budget == 0 {
            return (false, None);
        }
        budget -= 1;
        unit[k] = 1;
        if let Some(t) = visit(&unit) {
            return (true, Some(t));
        }
        unit[k] = 0;
    }
    let is_unit = |c: &[u32]| c.iter().filter(|&&x| x != 0).count() == 1 && c.iter().all(|&x| x <= 1);
    for c in VectorEnumerator::new(field, dim) {
        if c.iter().all(|&x| x == 0) || is_unit(&c) {
            continue;
        }
        if budget == 0 {
            return (false, None);
        }
        budget -= 1;
        if let Some(t) = visit(&c) {
            return (true, Some(t));
        }
    }
    (exhaustive || dim == 0, None)
}

/// An isomorphism witness, `Ok(None)` when provably non-isomorphic, or
/// `Err(Undecided)` when the search space exceeds `cap` without a witness.
pub fn is_iso(x: &Rep, y: &Rep, cap: u64) -> Result<Option<RepMor>> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    if x.dims() != y.dims() {
        return Ok(None);
    }
    if x == y {
        return Ok(Some(RepMor::identity(x)));
    }
    let hxy = HomSpace::new(x, y)?;
    let hxx = HomSpace::new(x, x)?;
    let hyy = HomSpace::new(y, y)?;
    if hxy.dim() != hxx.dim() || hyy.dim() != hxx.dim() {
        return Ok(None);
    }
    if top(x).0.dims() != top(y).0.dims() || socle(x).0.dims() != socle(y).0.dims() {
        return Ok(None);
    }
    let (exhaustive, hit) = search_combinations(x.field(), hxy.dim(), cap, |c| {
        let f = hxy.element(c);
        f.is_iso().then_some(f)
    });
    match hit {
        Some(f) => Ok(Some(f)),
        None if exhaustive => Ok(None),
        None => Err(Error::Undecided {
            what: "isomorphism test",
            needed: format!("{}^{} enumeration steps", x.field().p(), hxy.dim()),
            cap,
        }),
    }
}

/// `e^n` for `n >= total dimension`, by repeated squaring.
fn stable_power(e: &RepMor) -> RepMor {
    let n = e.src().total_dim().max(1);
    let mut acc = e.clone();
    let mut k = 1;
    while k < n {
        acc = acc.compose(&acc);
        k *= 2;
    }
    acc
}

/// Fitting splitting `X = ker(e^N) ⊕ im(e^N)` by some endomorphism, if one
/// exists. `Ok(None)` means every endomorphism is invertible or nilpotent,
/// so `X` is indecomposable.
fn fitting_split(x: &Rep, cap: u64) -> Result<Option<(Rep, Rep)>> {
    let end = HomSpace::new(x, x)?;
    let (exhaustive, hit) = search_combinations(x.field(), end.dim(), cap, |c| {
        let e = end.element(c);
        if e.is_iso() {
            return None;
        }
        let en = stable_power(&e);
        if en.is_zero() {
            return None;
        }
        let (k, _) = kernel(&en);
        let (i, _, _) = image(&en);
        (!k.is_zero() && !i.is_zero()).then_some((k, i))
    });
    match hit {
        Some(parts) => Ok(Some(parts)),
        None if exhaustive => Ok(None),
        None => Err(Error::Undecided {
            what: "indecomposable decomposition",
            needed: format!("{}^{} enumeration steps", x.field().p(), end.dim()),
            cap,
        }),
    }
}

/// Krull-Schmidt decomposition into indecomposables with multiplicities, in
/// order of first appearance.
pub fn decompose(x: &Rep, cap: u64) -> Result<Vec<(Rep, usize)>> {
    let mut stack = vec![x.clone()];
    let mut parts: Vec<Rep> = Vec::new();
    while let Some(y) = stack.pop() {
        if y.is_zero() {
            continue;
        }
        match fitting_split(&y, cap)? {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => parts.push(y),
        }
    }
    let mut classes: Vec<(Rep, usize)> = Vec::new();
    'outer: for p in parts {
        for (rep, mult) in classes.iter_mut() {
            if is_iso(rep, &p, cap)?.is_some() {
                *mult += 1;
                continue 'outer;
            }
        }
        classes.push((p, 1));
    }
    Ok(classes)
}

/// A short exact sequence `0 -> X -> Y -> Z -> 0`.
#[derive(Clone, Debug)]
pub struct Ses {
    pub mono: RepMor,
    pub epi: RepMor,
}

impl Ses {
    pub fn new(mono: RepMor, epi: RepMor) -> Result<Self> {
        let s = Ses { mono, epi };
        s.validate()?;
        Ok(s)
    }

    pub fn left(&self) -> &Rep {
        self.mono.src()
    }
    pub fn middle(&self) -> &Rep {
        self.mono.tgt()
    }
    pub fn right(&self) -> &Rep {
        self.epi.tgt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.mono.tgt() != self.epi.src() {
            return Err(Error::InvalidMorphism("sequence maps are not composable".into()));
        }
        if !self.epi.compose(&self.mono).is_zero() {
            return Err(Error::InvalidMorphism("composite of sequence maps is nonzero".into()));
        }
        if !self.mono.is_mono() {
            return Err(Error::InvalidMorphism("left map is not injective".into()));
        }
        if !self.epi.is_epi() {
            return Err(Error::InvalidMorphism("right map is not surjective".into()));
        }
        let ok = (0..self.middle().dims().len()).all(|v| {
            self.middle().dim_at(v) == self.left().dim_at(v) + self.right().dim_at(v)
        });
        if !ok {
            return Err(Error::InvalidMorphism("sequence is not exact in the middle".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, n3, point};
    use crate::algebra::{proj, simple};

    fn s(alg: &Arc<BoundAlgebra>, i: usize) -> Rep {
        simple(alg, i).unwrap()
    }
    fn p(alg: &Arc<BoundAlgebra>, i: usize) -> Rep {
        proj(alg, i).unwrap()
    }
    fn i_(alg: &Arc<BoundAlgebra>, i: usize) -> Rep {
        inj(alg, i).unwrap()
    }

    #[test]
    fn hom_examples_over_n3() {
        let n = n3();
        assert_eq!(hom_basis(&s(&n, 0), &s(&n, 0)).unwrap().len(), 1);
        assert!(hom_basis(&s(&n, 0), &s(&n, 1)).unwrap().is_empty());
        // Hom(P1, P2) = (P2)_1 = 0.
        assert_eq!(hom_basis(&p(&n, 0), &p(&n, 1)).unwrap().len(), 0);
        // Hom(P2, P1) = (P1)_2, one-dimensional: top of P2 onto socle of P1.
        assert_eq!(hom_basis(&p(&n, 1), &p(&n, 0)).unwrap().len(), 1);
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        let n = n3();
        let xs = [s(&n, 0), p(&n, 2), direct_sum(&n, &[s(&n, 1), p(&n, 0)]).object];
        for x in &xs {
            for i in 0..3 {
                assert_eq!(HomSpace::new(&p(&n, i), x).unwrap().dim(), x.dim_at(i));
                assert_eq!(HomSpace::new(x, &i_(&n, i)).unwrap().dim(), x.dim_at(i));
            }
        }
    }

    #[test]
    fn kernel_cokernel_image() {
        let n = n3();
        let x = p(&n, 0);
        let (k, _) = kernel(&RepMor::identity(&x));
        assert!(k.is_zero());
        let z = RepMor::zero(&s(&n, 0), &x);
        let (c, q) = cokernel(&z);
        assert_eq!(c, x);
        assert!(q.is_iso());

        let (_, cover) = projective_cover(&s(&n, 0));
        let (k, mono) = kernel(&cover);
        assert_eq!(k.dims(), &[0, 1, 0]);
        assert!(is_iso(&k, &s(&n, 1), DEFAULT_SEARCH_CAP).unwrap().is_some());
        assert!(mono.is_mono());

        let f = &HomSpace::new(&p(&n, 1), &p(&n, 0)).unwrap().basis()[0].clone();
        let (im, m, e) = image(f);
        assert_eq!(im.dims(), &[0, 1, 0]);
        assert_eq!(m.compose(&e), *f);
    }

    #[test]
    fn rank_nullity_per_vertex() {
        let n = n3();
        let big = direct_sum(&n, &[p(&n, 0), p(&n, 1), s(&n, 2)]).object;
        for f in hom_basis(&big, &big).unwrap() {
            let (k, _) = kernel(&f);
            let (im, _, _) = image(&f);
            for v in 0..3 {
                assert_eq!(big.dim_at(v), k.dim_at(v) + im.dim_at(v));
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let n = n3();
        assert!(direct_sum(&n, &[]).object.is_zero());
        assert_eq!(direct_sum(&n, &[s(&n, 0)]).object, s(&n, 0));
        let ds = direct_sum(&n, &[s(&n, 0), p(&n, 0)]);
        assert_eq!(ds.object.dims(), &[2, 1, 0]);
        for (k, (i, pr)) in ds.injections.iter().zip(&ds.projections).enumerate() {
            assert!(pr.compose(i).is_iso());
            for (l, i2) in ds.injections.iter().enumerate() {
                if l != k {
                    assert!(pr.compose(i2).is_zero());
                }
            }
        }
        let mut sum = RepMor::zero(&ds.object, &ds.object);
        for (i, pr) in ds.injections.iter().zip(&ds.projections) {
            sum = sum.add(&i.compose(pr));
        }
        assert_eq!(sum, RepMor::identity(&ds.object));
    }

    #[test]
    fn iso_examples() {
        let n = n3();
        let x = p(&n, 0);
        assert_eq!(is_iso(&x, &x, 16).unwrap().unwrap(), RepMor::identity(&x));
        assert!(is_iso(&s(&n, 0), &s(&n, 1), 16).unwrap().is_none());
        let w = is_iso(&i_(&n, 0), &p(&n, 2), 16).unwrap().unwrap();
        assert!(w.is_iso());
    }

    #[test]
    fn iso_undecided_beyond_cap() {
        let a = a2();
        let f = a.field();
        let x = direct_sum(&a, &[p(&a, 0), p(&a, 0)]).object;
        let twisted = Rep::new(
            a.clone(),
            vec![2, 2],
            vec![Mat::from_rows(f, &[&[1, 1], &[0, 1]])],
        )
        .unwrap();
        assert!(matches!(is_iso(&x, &twisted, 0), Err(Error::Undecided { .. })));
        let w = is_iso(&x, &twisted, 16).unwrap().unwrap();
        assert!(w.is_iso());
    }

    #[test]
    fn decompose_examples() {
        let n = n3();
        let d = decompose(&s(&n, 0), DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 1);
        let ss = direct_sum(&n, &[s(&n, 0), s(&n, 0)]).object;
        let d = decompose(&ss, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        let mix = direct_sum(&n, &[p(&n, 0), s(&n, 2)]).object;
        let d = decompose(&mix, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|(_, m)| *m == 1));
        let summed: Vec<Rep> = d.iter().map(|(r, _)| r.clone()).collect();
        let back = direct_sum(&n, &summed).object;
        assert!(is_iso(&back, &mix, DEFAULT_SEARCH_CAP).unwrap().is_some());
        assert!(decompose(&Rep::zero(&n), 16).unwrap().is_empty());
    }

    #[test]
    fn socle_and_top() {
        let n = n3();
        for i in 0..3 {
            assert_eq!(socle(&s(&n, i)).0, s(&n, i));
        }
        let (soc, _) = socle(&p(&n, 0));
        assert_eq!(soc.dims(), &[0, 1, 0]);
        let (t, _) = top(&p(&n, 0));
        assert_eq!(t.dims(), &[1, 0, 0]);
    }

    #[test]
    fn envelopes_and_covers() {
        let n = n3();
        let (e, m) = injective_envelope(&i_(&n, 1));
        assert_eq!(e, i_(&n, 1));
        assert!(m.is_iso());
        let (e, m) = injective_envelope(&s(&n, 0));
        assert_eq!(e, p(&n, 2));
        assert!(m.is_mono());
        let (e, m) = injective_envelope(&Rep::zero(&n));
        assert!(e.is_zero() && m.is_zero());

        let (c, q) = projective_cover(&p(&n, 1));
        assert_eq!(c, p(&n, 1));
        assert!(q.is_iso());
        let (c, q) = projective_cover(&s(&n, 0));
        assert_eq!(c, p(&n, 0));
        assert!(q.is_epi());
        assert!(projective_cover(&Rep::zero(&n)).0.is_zero());
    }

    #[test]
    fn shifts() {
        let n = n3();
        for i in 0..3 {
            assert!(cosyzygy(&i_(&n, i)).is_zero());
            assert!(syzygy(&p(&n, i)).is_zero());
        }
        let sig = cosyzygy(&s(&n, 0));
        assert_eq!(sig.dims(), &[0, 0, 1]);
        let om = syzygy(&s(&n, 0));
        assert_eq!(om.dims(), &[0, 1, 0]);
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        for i in 0..2 {
            for y in [s(&a, 0), s(&a, 1), p(&a, 0)] {
                assert_eq!(ext1_dim(&p(&a, i), &y).unwrap(), 0);
            }
        }
        let e = ext1(&s(&a, 0), &s(&a, 1)).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(e.cocycles.len(), 1);
        let n = n3();
        assert_eq!(ext1_dim(&s(&n, 0), &s(&n, 0)).unwrap(), 0);
        assert_eq!(ext1_dim(&s(&n, 0), &s(&n, 1)).unwrap(), 1);
        assert_eq!(ext1_dim(&point_simple(), &point_simple()).unwrap(), 0);
    }

    fn point_simple() -> Rep {
        simple(&point(), 0).unwrap()
    }

    #[test]
    fn ses_validation() {
        let n = n3();
        let seq = syzygy_seq(&s(&n, 0));
        assert!(Ses::new(seq.mono.clone(), seq.epi.clone()).is_ok());
        let bad = Ses::new(seq.mono.clone(), RepMor::zero(&seq.cover, &s(&n, 0)));
        assert!(bad.is_err());
    }

    #[test]
    fn morphism_validation_rejects_non_intertwiners() {
        let n = n3();
        let x = p(&n, 0);
        let y = s(&n, 1);
        // a map X_2 -> Y_2 alone does not commute with arrow a
        let f = n.field();
        let maps = vec![Mat::zeros(f, 0, 1), Mat::identity(f, 1), Mat::zeros(f, 0, 0)];
        assert!(RepMor::new(x, y, maps).is_err());
    }
}
