//! Quotient categories by factorization ideals and the one-sided
//! triangulated structures on the stable categories `B/I` and `B/P`.
//!
//! Morphisms of a quotient category are handled through representatives:
//! a [`RepMor`] stands for its class, and [`QuotHom`] reduces
//! representatives to coset coordinates over a deterministic transversal.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{all_injectives, all_projectives, BoundAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{span_equal, subspace_sum, Mat, QuotientReducer};
use crate::rep::{
    cokernel, cosyzygy_seq, descend_through_epi, direct_sum, kernel, lift_through_mono,
    solve_in_hom, syzygy_seq, HomSpace, Rep, RepMor, Ses,
};

/// The additive closure `add` of finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcat {
    generators: Vec<Rep>,
}

/// One summand of a factorization `id_X = Σ out_k ∘ into_k` through
/// generators.
#[derive(Clone, Debug)]
pub struct AddTerm {
    pub generator: usize,
    pub into: RepMor,
    pub out: RepMor,
}

/// Witness that `X` is a direct summand of a finite sum of generators: the
/// identity of `X` factors through that sum.
#[derive(Clone, Debug)]
pub struct AddWitness {
    pub terms: Vec<AddTerm>,
}

impl AddWitness {
    pub fn validate(&self, x: &Rep, m: &Subcat) -> bool {
        let mut acc = RepMor::zero(x, x);
        for t in &self.terms {
            let Some(g) = m.generators.get(t.generator) else {
                return false;
            };
            if t.into.src() != x || t.into.tgt() != g || t.out.src() != g || t.out.tgt() != x {
                return false;
            }
            if t.into.validate().is_err() || t.out.validate().is_err() {
                return false;
            }
            acc = acc.add(&t.out.compose(&t.into));
        }
        acc == RepMor::identity(x)
    }
}

impl Subcat {
    pub fn new(generators: Vec<Rep>) -> Result<Self> {
        if let Some(first) = generators.first() {
            if generators.iter().any(|g| !g.same_algebra(first)) {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(Subcat { generators })
    }

    pub fn zero() -> Self {
        Subcat { generators: Vec::new() }
    }

    pub fn injectives(alg: &Arc<BoundAlgebra>) -> Self {
        Subcat {
            generators: all_injectives(alg),
        }
    }

    pub fn projectives(alg: &Arc<BoundAlgebra>) -> Self {
        Subcat {
            generators: all_projectives(alg),
        }
    }

    pub fn generators(&self) -> &[Rep] {
        &self.generators
    }

    pub fn union(&self, other: &Subcat) -> Subcat {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Subcat { generators }
    }

    /// Images of generators under an object map, e.g. the shift.
    pub fn map(&self, f: impl Fn(&Rep) -> Rep) -> Subcat {
        Subcat {
            generators: self.generators.iter().map(f).collect(),
        }
    }

    /// Basis, in the coordinates of `hom`, of the morphisms that factor
    /// through some generator. Factoring through a finite sum of generators
    /// is a sum of such composites, so the span is exactly the ideal.
    pub fn factor_subspace(&self, hom: &HomSpace) -> Result<Mat> {
        let (x, y) = (hom.src(), hom.tgt());
        let field = x.field();
        let mut cols: Vec<Vec<u32>> = Vec::new();
        if hom.dim() > 0 {
            for g in &self.generators {
                if g.is_zero() {
                    continue;
                }
                let into = HomSpace::new(x, g)?;
                if into.dim() == 0 {
                    continue;
                }
                let out = HomSpace::new(g, y)?;
                for b in out.basis() {
                    for a in into.basis() {
                        cols.push(hom.coords(&b.compose(a)));
                    }
                }
            }
        }
        let spanning = Mat::from_columns(field, hom.dim(), &cols);
        subspace_sum(field, hom.dim(), &[spanning])
    }

    /// An [`AddWitness`] if `x` lies in the additive closure, else `None`.
    pub fn membership(&self, x: &Rep) -> Result<Option<AddWitness>> {
        if x.is_zero() {
            return Ok(Some(AddWitness { terms: Vec::new() }));
        }
        let end = HomSpace::new(x, x)?;
        let field = x.field();
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let mut pieces: Vec<(usize, RepMor, RepMor)> = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let into = HomSpace::new(x, g)?;
            if into.dim() == 0 {
                continue;
            }
            let out = HomSpace::new(g, x)?;
            for b in out.basis() {
                for a in into.basis() {
                    cols.push(end.coords(&b.compose(a)));
                    pieces.push((gi, a.clone(), b.clone()));
                }
            }
        }
        let a = Mat::from_columns(field, end.dim(), &cols);
        let id = Mat::column_vector(field, &end.coords(&RepMor::identity(x)));
        let Some(sol) = a.solve(&id)? else {
            return Ok(None);
        };
        let coeffs = sol.column(0);
        let terms = pieces
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| *c != 0)
            .map(|((generator, into, out), c)| AddTerm {
                generator,
                into,
                out: out.scale(c),
            })
            .collect();
        let w = AddWitness { terms };
        debug_assert!(w.validate(x, self));
        Ok(Some(w))
    }

    pub fn contains(&self, x: &Rep) -> Result<bool> {
        Ok(self.membership(x)?.is_some())
    }
}

/// `Hom(X, Y)` modulo the morphisms factoring through an ideal subcategory.
#[derive(Clone, Debug)]
pub struct QuotHom {
    hom: HomSpace,
    ideal: Mat,
    reducer: QuotientReducer,
}

impl QuotHom {
    pub fn new(x: &Rep, y: &Rep, ideal: &Subcat) -> Result<Self> {
        let hom = HomSpace::new(x, y)?;
        let basis = ideal.factor_subspace(&hom)?;
        let reducer = QuotientReducer::new(x.field(), hom.dim(), &basis);
        Ok(QuotHom {
            hom,
            ideal: basis,
            reducer,
        })
    }

    pub fn dim(&self) -> usize {
        self.reducer.quotient_dim()
    }
    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }
    pub fn src(&self) -> &Rep {
        self.hom.src()
    }
    pub fn tgt(&self) -> &Rep {
        self.hom.tgt()
    }
    /// Basis of the ideal in the coordinates of the full hom-space.
    pub fn ideal_basis(&self) -> &Mat {
        &self.ideal
    }
    pub fn ideal_dim(&self) -> usize {
        self.reducer.sub_dim()
    }

    /// Coset coordinates of a representative.
    pub fn reduce(&self, f: &RepMor) -> Vec<u32> {
        self.reducer.reduce(&self.hom.coords(f))
    }

    pub fn is_zero(&self, f: &RepMor) -> bool {
        self.reducer.contains(&self.hom.coords(f))
    }

    pub fn same(&self, f: &RepMor, g: &RepMor) -> bool {
        self.is_zero(&f.sub(g))
    }

    /// Transversal representative of a coset.
    pub fn lift(&self, coset: &[u32]) -> RepMor {
        self.hom.element(&self.reducer.lift(coset))
    }

    /// Representatives of the unit cosets, a basis of the quotient.
    pub fn representatives(&self) -> Vec<RepMor> {
        (0..self.dim())
            .map(|k| {
                let mut e = vec![0; self.dim()];
                e[k] = 1;
                self.lift(&e)
            })
            .collect()
    }
}

/// Matrix, in coset coordinates, of a linear operation between quotient
/// hom-spaces that preserves the ideals (pre- or post-composition).
pub fn induced_matrix(src: &QuotHom, tgt: &QuotHom, op: impl Fn(&RepMor) -> RepMor) -> Mat {
    let cols: Vec<Vec<u32>> = src.representatives().iter().map(|r| tgt.reduce(&op(r))).collect();
    Mat::from_columns(src.src().field(), tgt.dim(), &cols)
}

/// A finite universe of objects with hom-spaces modulo an ideal, computed
/// eagerly for every ordered pair.
#[derive(Clone, Debug)]
pub struct QuotCategory {
    universe: Vec<Rep>,
    ideal: Subcat,
    table: Vec<Vec<QuotHom>>,
}

impl QuotCategory {
    pub fn new(universe: Vec<Rep>, ideal: Subcat) -> Result<Self> {
        let mut table = Vec::with_capacity(universe.len());
        for x in &universe {
            let mut row = Vec::with_capacity(universe.len());
            for y in &universe {
                row.push(QuotHom::new(x, y, &ideal)?);
            }
            table.push(row);
        }
        Ok(QuotCategory {
            universe,
            ideal,
            table,
        })
    }

    pub fn universe(&self) -> &[Rep] {
        &self.universe
    }
    pub fn ideal(&self) -> &Subcat {
        &self.ideal
    }

    pub fn index_of(&self, x: &Rep) -> Option<usize> {
        self.universe.iter().position(|u| u == x)
    }

    pub fn quot_hom(&self, i: usize, j: usize) -> Result<&QuotHom> {
        let n = self.universe.len();
        if i >= n {
            return Err(Error::NotInUniverse(i));
        }
        if j >= n {
            return Err(Error::NotInUniverse(j));
        }
        Ok(&self.table[i][j])
    }

    pub fn factor_subspace(&self, i: usize, j: usize) -> Result<&Mat> {
        Ok(self.quot_hom(i, j)?.ideal_basis())
    }

    pub fn dims_table(&self) -> Vec<Vec<usize>> {
        self.table
            .iter()
            .map(|row| row.iter().map(QuotHom::dim).collect())
            .collect()
    }

    /// Ideal absorption on hom bases: composites of ideal elements with
    /// arbitrary basis morphisms stay in the ideal. Returns the first
    /// violating triple of universe indices.
    pub fn check_absorption(&self) -> Option<(usize, usize, usize)> {
        let n = self.universe.len();
        for a in 0..n {
            for b in 0..n {
                let ab = &self.table[a][b];
                let ideal: Vec<RepMor> = (0..ab.ideal.cols())
                    .map(|k| ab.hom.element(&ab.ideal.column(k)))
                    .collect();
                if ideal.is_empty() {
                    continue;
                }
                for c in 0..n {
                    let bc = &self.table[b][c];
                    let ac = &self.table[a][c];
                    for g in bc.hom.basis() {
                        if ideal.iter().any(|f| !ac.is_zero(&g.compose(f))) {
                            return Some((a, b, c));
                        }
                    }
                    let ca = &self.table[c][a];
                    let cb = &self.table[c][b];
                    for h in ca.hom.basis() {
                        if ideal.iter().any(|f| !cb.is_zero(&f.compose(h))) {
                            return Some((c, a, b));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Which stable category: modulo injectives with shift `Σ` (right), or
/// modulo projectives with shift `Ω` (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// `U -u-> V -v-> W -w-> ΣU` in `B/I`, stored as representatives.
#[derive(Clone, Debug)]
pub struct RightTriangle {
    pub u: RepMor,
    pub v: RepMor,
    pub w: RepMor,
}

/// `ΩZ -x-> X -y-> Y -z-> Z` in `B/P`, stored as representatives.
#[derive(Clone, Debug)]
pub struct LeftTriangle {
    pub x: RepMor,
    pub y: RepMor,
    pub z: RepMor,
}

/// A failed exactness instance: an element of the kernel at `position`
/// outside the image, tested against universe object `object`.
#[derive(Clone, Debug)]
pub struct ExactnessFailure {
    pub position: &'static str,
    pub object: usize,
    pub witness: RepMor,
}

#[derive(Clone, Debug, Default)]
pub struct ExactnessReport {
    pub cases: usize,
    pub failures: Vec<ExactnessFailure>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
    fn merge(&mut self, other: ExactnessReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }
}

/// Checks `ker(second) = im(first)` for linear maps given in coset
/// coordinates; returns a lifted kernel element outside the image.
fn exact_at(first: &Mat, second: &Mat, middle: &QuotHom) -> Option<RepMor> {
    let ker = second.kernel_basis();
    if span_equal(&ker, first) {
        return None;
    }
    let image = first.column_space();
    for k in 0..ker.cols() {
        let v = ker.column(k);
        let both = Mat::hstack(first.field(), image.rows(), &[&image, &Mat::column_vector(first.field(), &v)]);
        if both.rank() > image.rank() {
            return Some(middle.lift(&v));
        }
    }
    // image not contained in the kernel: a composite is nonzero
    let bad = (0..first.cols()).find(|&c| second.mul(&first.select_columns(&[c])).rank() > 0)?;
    Some(middle.lift(&first.column(bad)))
}

/// One linear condition `op(h) ≡ target` modulo the ideal of `quot`.
pub struct Condition<'a> {
    pub quot: &'a QuotHom,
    pub op: Box<dyn Fn(&RepMor) -> RepMor + 'a>,
    pub target: RepMor,
}

/// Finds `h` in `space` satisfying all conditions, if any exists.
pub fn solve_modulo(space: &HomSpace, conds: &[Condition<'_>]) -> Result<Option<RepMor>> {
    let field = space.src().field();
    let rows: usize = conds.iter().map(|c| c.quot.dim()).sum();
    let cols: Vec<Vec<u32>> = space
        .basis()
        .iter()
        .map(|b| conds.iter().flat_map(|c| c.quot.reduce(&(c.op)(b))).collect())
        .collect();
    let a = Mat::from_columns(field, rows, &cols);
    let rhs: Vec<u32> = conds.iter().flat_map(|c| c.quot.reduce(&c.target)).collect();
    Ok(a
        .solve(&Mat::column_vector(field, &rhs))?
        .map(|x| space.element(&x.column(0))))
}

/// The stable category `B/I` or `B/P` of modules over a bound algebra.
#[derive(Clone, Debug)]
pub struct StableCategory {
    alg: Arc<BoundAlgebra>,
    side: Side,
    ideal: Subcat,
}

impl StableCategory {
    pub fn new(alg: &Arc<BoundAlgebra>, side: Side) -> Self {
        let ideal = match side {
            Side::Right => Subcat::injectives(alg),
            Side::Left => Subcat::projectives(alg),
        };
        StableCategory {
            alg: alg.clone(),
            side,
            ideal,
        }
    }

    pub fn right(alg: &Arc<BoundAlgebra>) -> Self {
        Self::new(alg, Side::Right)
    }

    pub fn left(alg: &Arc<BoundAlgebra>) -> Self {
        Self::new(alg, Side::Left)
    }

    pub fn alg(&self) -> &Arc<BoundAlgebra> {
        &self.alg
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn ideal(&self) -> &Subcat {
        &self.ideal
    }

    fn require(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::Precondition(format!(
                "operation needs the {} stable category",
                side.name()
            )));
        }
        Ok(())
    }

    pub fn quot_hom(&self, x: &Rep, y: &Rep) -> Result<QuotHom> {
        QuotHom::new(x, y, &self.ideal)
    }

    pub fn quot_category(&self, universe: Vec<Rep>) -> Result<QuotCategory> {
        QuotCategory::new(universe, self.ideal.clone())
    }

    pub fn is_zero_object(&self, x: &Rep) -> Result<bool> {
        self.ideal.contains(x)
    }

    pub fn is_zero_class(&self, f: &RepMor) -> Result<bool> {
        Ok(self.quot_hom(f.src(), f.tgt())?.is_zero(f))
    }

    pub fn same_class(&self, f: &RepMor, g: &RepMor) -> Result<bool> {
        self.is_zero_class(&f.sub(g))
    }

    /// `ΣX` on the right, `ΩX` on the left.
    pub fn shift(&self, x: &Rep) -> Rep {
        match self.side {
            Side::Right => cosyzygy_seq(x).cosyzygy,
            Side::Left => syzygy_seq(x).syzygy,
        }
    }

    /// Representative of `Σf` or `Ωf`. Every independent choice of the
    /// lift is checked to give the same class.
    pub fn shift_mor(&self, f: &RepMor) -> Result<RepMor> {
        match self.side {
            Side::Right => self.sigma_mor(f),
            Side::Left => self.omega_mor(f),
        }
    }

    fn sigma_mor(&self, f: &RepMor) -> Result<RepMor> {
        let sx = cosyzygy_seq(f.src());
        let sy = cosyzygy_seq(f.tgt());
        let space = HomSpace::new(&sx.envelope, &sy.envelope)?;
        let (lift, others) = solve_in_hom(&space, |b| b.compose(&sx.mono), &sy.mono.compose(f))?
            .ok_or_else(|| Error::Internal("no lift of a morphism to injective envelopes".into()))?;
        let induced = |i_f: &RepMor| descend_through_epi(&sx.proj, &sy.proj.compose(i_f));
        let c = induced(&lift)?;
        let q = self.quot_hom(&sx.cosyzygy, &sy.cosyzygy)?;
        for k in &others {
            if !q.same(&induced(&lift.add(k))?, &c) {
                return Err(Error::Internal("shift of a morphism depends on the lift".into()));
            }
        }
        Ok(c)
    }

    fn omega_mor(&self, f: &RepMor) -> Result<RepMor> {
        let sx = syzygy_seq(f.src());
        let sy = syzygy_seq(f.tgt());
        let space = HomSpace::new(&sx.cover, &sy.cover)?;
        let (lift, others) = solve_in_hom(&space, |b| sy.epi.compose(b), &f.compose(&sx.epi))?
            .ok_or_else(|| Error::Internal("no lift of a morphism to projective covers".into()))?;
        let induced = |p_f: &RepMor| lift_through_mono(&sy.mono, &p_f.compose(&sx.mono));
        let c = induced(&lift)?;
        let q = self.quot_hom(&sx.syzygy, &sy.syzygy)?;
        for k in &others {
            if !q.same(&induced(&lift.add(k))?, &c) {
                return Err(Error::Internal("shift of a morphism depends on the lift".into()));
            }
        }
        Ok(c)
    }

    /// The right triangle `X -f-> Y -g-> Z -(-h)-> ΣX` of a short exact
    /// sequence, `h` the comparison map into the cosyzygy sequence of `X`.
    pub fn right_triangle_from_ses(&self, s: &Ses) -> Result<RightTriangle> {
        self.require(Side::Right)?;
        let x = s.left();
        let sx = cosyzygy_seq(x);
        let space = HomSpace::new(s.middle(), &sx.envelope)?;
        let (j, _) = solve_in_hom(&space, |b| b.compose(&s.mono), &sx.mono)?
            .ok_or_else(|| Error::Internal("injective envelope does not extend".into()))?;
        let h = descend_through_epi(&s.epi, &sx.proj.compose(&j))?;
        Ok(RightTriangle {
            u: s.mono.clone(),
            v: s.epi.clone(),
            w: h.neg(),
        })
    }

    /// The left triangle `ΩZ -(-ω)-> X -f-> Y -g-> Z` of a short exact
    /// sequence, `ω` the comparison map from the syzygy sequence of `Z`.
    pub fn left_triangle_from_ses(&self, s: &Ses) -> Result<LeftTriangle> {
        self.require(Side::Left)?;
        let z = s.right();
        let sz = syzygy_seq(z);
        let space = HomSpace::new(&sz.cover, s.middle())?;
        let (j, _) = solve_in_hom(&space, |b| s.epi.compose(b), &sz.epi)?
            .ok_or_else(|| Error::Internal("projective cover does not lift".into()))?;
        let omega = lift_through_mono(&s.mono, &j.compose(&sz.mono))?;
        Ok(LeftTriangle {
            x: omega.neg(),
            y: s.mono.clone(),
            z: s.epi.clone(),
        })
    }

    /// `0 -> U -(u, i_U)-> V ⊕ I_U -> Z -> 0`, the pushout of `u` along the
    /// injective envelope.
    pub fn pushout_ses(&self, u: &RepMor) -> Result<Ses> {
        self.require(Side::Right)?;
        let su = cosyzygy_seq(u.src());
        let ds = direct_sum(&self.alg, &[u.tgt().clone(), su.envelope.clone()]);
        let phi = ds.tuple(u.src(), &[u.clone(), su.mono.clone()]);
        let (_, e) = cokernel(&phi);
        Ses::new(phi, e)
    }

    /// The short exact sequence realizing a right triangle's first map.
    pub fn ses_from_triangle(&self, t: &RightTriangle) -> Result<Ses> {
        self.pushout_ses(&t.u)
    }

    /// `0 -> K -> Y ⊕ P_Z -(z, p_Z)-> Z -> 0`, the pullback of `z` along the
    /// projective cover.
    pub fn pullback_ses(&self, z: &RepMor) -> Result<Ses> {
        self.require(Side::Left)?;
        let sz = syzygy_seq(z.tgt());
        let ds = direct_sum(&self.alg, &[z.src().clone(), sz.cover.clone()]);
        let psi = ds.cotuple(z.tgt(), &[z.clone(), sz.epi.clone()]);
        let (_, k) = kernel(&psi);
        Ses::new(k, psi)
    }

    /// A right triangle on `u`, built from the pushout sequence.
    pub fn cone(&self, u: &RepMor) -> Result<RightTriangle> {
        let s = self.pushout_ses(u)?;
        let su = cosyzygy_seq(u.src());
        let ds = direct_sum(&self.alg, &[u.tgt().clone(), su.envelope.clone()]);
        let v = s.epi.compose(&ds.injections[0]);
        let to_shift = ds.cotuple(
            &su.cosyzygy,
            &[RepMor::zero(u.tgt(), &su.cosyzygy), su.proj.neg()],
        );
        let w = descend_through_epi(&s.epi, &to_shift)?;
        Ok(RightTriangle { u: u.clone(), v, w })
    }

    /// A left triangle on `z`, built from the pullback sequence.
    pub fn fiber(&self, z: &RepMor) -> Result<LeftTriangle> {
        let s = self.pullback_ses(z)?;
        let sz = syzygy_seq(z.tgt());
        let ds = direct_sum(&self.alg, &[z.src().clone(), sz.cover.clone()]);
        let y = ds.projections[0].compose(&s.mono);
        let from_shift = ds.tuple(
            &sz.syzygy,
            &[RepMor::zero(&sz.syzygy, z.src()), sz.mono.neg()],
        );
        let x = lift_through_mono(&s.mono, &from_shift)?;
        Ok(LeftTriangle { x, y, z: z.clone() })
    }

    /// `V -v-> W -w-> ΣU -(-Σu)-> ΣV`.
    pub fn rotate_right(&self, t: &RightTriangle) -> Result<RightTriangle> {
        self.require(Side::Right)?;
        Ok(RightTriangle {
            u: t.v.clone(),
            v: t.w.clone(),
            w: self.shift_mor(&t.u)?.neg(),
        })
    }

    /// `ΩY -Ωz-> ΩZ -x-> X -(-y)-> Y`.
    pub fn rotate_left(&self, t: &LeftTriangle) -> Result<LeftTriangle> {
        self.require(Side::Left)?;
        Ok(LeftTriangle {
            x: self.shift_mor(&t.z)?,
            y: t.x.clone(),
            z: t.y.neg(),
        })
    }

    fn zero_composite(&self, g: &RepMor, f: &RepMor) -> Result<bool> {
        if f.tgt() != g.src() {
            return Ok(false);
        }
        self.is_zero_class(&g.compose(f))
    }

    /// Shapes match the shift and consecutive composites vanish stably.
    pub fn validate_right(&self, t: &RightTriangle) -> Result<Option<String>> {
        self.require(Side::Right)?;
        if t.w.tgt() != &self.shift(t.u.src()) {
            return Ok(Some("third map does not end at the shift of the first object".into()));
        }
        if !self.zero_composite(&t.v, &t.u)? {
            return Ok(Some("vu is not stably zero".into()));
        }
        if !self.zero_composite(&t.w, &t.v)? {
            return Ok(Some("wv is not stably zero".into()));
        }
        let su = self.shift_mor(&t.u)?;
        if !self.zero_composite(&su, &t.w)? {
            return Ok(Some("(Σu)w is not stably zero".into()));
        }
        Ok(None)
    }

    pub fn validate_left(&self, t: &LeftTriangle) -> Result<Option<String>> {
        self.require(Side::Left)?;
        if t.x.src() != &self.shift(t.z.tgt()) {
            return Ok(Some("first map does not start at the shift of the last object".into()));
        }
        if !self.zero_composite(&t.y, &t.x)? {
            return Ok(Some("yx is not stably zero".into()));
        }
        if !self.zero_composite(&t.z, &t.y)? {
            return Ok(Some("zy is not stably zero".into()));
        }
        let oz = self.shift_mor(&t.z)?;
        if !self.zero_composite(&t.x, &oz)? {
            return Ok(Some("x(Ωz) is not stably zero".into()));
        }
        Ok(None)
    }

    /// `h: W -> W'` with `hv = v'g` and `w'h = (Σf)w` stably, given
    /// `gu = u'f` stably. `None` means the axiom instance fails.
    pub fn fill_right(
        &self,
        t: &RightTriangle,
        t2: &RightTriangle,
        f: &RepMor,
        g: &RepMor,
    ) -> Result<Option<RepMor>> {
        self.require(Side::Right)?;
        if !self.same_class(&g.compose(&t.u), &t2.u.compose(f))? {
            return Err(Error::Precondition("square gu = u'f does not commute".into()));
        }
        let (w_obj, w2_obj) = (t.v.tgt(), t2.v.tgt());
        let space = HomSpace::new(w_obj, w2_obj)?;
        let q1 = self.quot_hom(t.v.src(), w2_obj)?;
        let q2 = self.quot_hom(w_obj, t2.w.tgt())?;
        let sf = self.shift_mor(f)?;
        let conds = [
            Condition {
                quot: &q1,
                op: Box::new(|h: &RepMor| h.compose(&t.v)),
                target: t2.v.compose(g),
            },
            Condition {
                quot: &q2,
                op: Box::new(|h: &RepMor| t2.w.compose(h)),
                target: sf.compose(&t.w),
            },
        ];
        solve_modulo(&space, &conds)
    }

    /// `f: X -> X'` with `fx = x'(Ωh)` and `y'f = gy` stably, given
    /// `hz = z'g` stably.
    pub fn fill_left(
        &self,
        t: &LeftTriangle,
        t2: &LeftTriangle,
        g: &RepMor,
        h: &RepMor,
    ) -> Result<Option<RepMor>> {
        self.require(Side::Left)?;
        if !self.same_class(&h.compose(&t.z), &t2.z.compose(g))? {
            return Err(Error::Precondition("square hz = z'g does not commute".into()));
        }
        let (x_obj, x2_obj) = (t.y.src(), t2.y.src());
        let space = HomSpace::new(x_obj, x2_obj)?;
        let q1 = self.quot_hom(t.x.src(), x2_obj)?;
        let q2 = self.quot_hom(x_obj, t2.y.tgt())?;
        let oh = self.shift_mor(h)?;
        let conds = [
            Condition {
                quot: &q1,
                op: Box::new(|f: &RepMor| f.compose(&t.x)),
                target: t2.x.compose(&oh),
            },
            Condition {
                quot: &q2,
                op: Box::new(|f: &RepMor| t2.y.compose(f)),
                target: g.compose(&t.y),
            },
        ];
        solve_modulo(&space, &conds)
    }

    /// `Hom(W,T) -(∘v)-> Hom(V,T) -(∘u)-> Hom(U,T)` and the same one step
    /// further, exact in the middle for every test object `T`.
    pub fn pseudocokernel_check(&self, t: &RightTriangle, universe: &[Rep]) -> Result<ExactnessReport> {
        self.require(Side::Right)?;
        let mut report = ExactnessReport::default();
        let su = self.shift(t.u.src());
        let (u_obj, v_obj, w_obj) = (t.u.src(), t.v.src(), t.w.src());
        for (ti, target) in universe.iter().enumerate() {
            let q_u = self.quot_hom(u_obj, target)?;
            let q_v = self.quot_hom(v_obj, target)?;
            let q_w = self.quot_hom(w_obj, target)?;
            let q_s = self.quot_hom(&su, target)?;
            let by_v = induced_matrix(&q_w, &q_v, |g| g.compose(&t.v));
            let by_u = induced_matrix(&q_v, &q_u, |g| g.compose(&t.u));
            let by_w = induced_matrix(&q_s, &q_w, |g| g.compose(&t.w));
            let mut sub = ExactnessReport::default();
            sub.cases += 2;
            if let Some(witness) = exact_at(&by_v, &by_u, &q_v) {
                sub.failures.push(ExactnessFailure {
                    position: "v is a pseudocokernel of u",
                    object: ti,
                    witness,
                });
            }
            if let Some(witness) = exact_at(&by_w, &by_v, &q_w) {
                sub.failures.push(ExactnessFailure {
                    position: "w is a pseudocokernel of v",
                    object: ti,
                    witness,
                });
            }
            report.merge(sub);
        }
        Ok(report)
    }

    /// `Hom(U,ΩZ) -x∘-> Hom(U,X) -y∘-> Hom(U,Y) -z∘-> Hom(U,Z)` exact at
    /// `X` and `Y` for every test object `U`.
    pub fn pseudokernel_check(&self, t: &LeftTriangle, universe: &[Rep]) -> Result<ExactnessReport> {
        self.require(Side::Left)?;
        let mut report = ExactnessReport::default();
        let (oz, x_obj, y_obj, z_obj) = (t.x.src(), t.y.src(), t.z.src(), t.z.tgt());
        for (ui, test) in universe.iter().enumerate() {
            let q_oz = self.quot_hom(test, oz)?;
            let q_x = self.quot_hom(test, x_obj)?;
            let q_y = self.quot_hom(test, y_obj)?;
            let q_z = self.quot_hom(test, z_obj)?;
            let by_x = induced_matrix(&q_oz, &q_x, |g| t.x.compose(g));
            let by_y = induced_matrix(&q_x, &q_y, |g| t.y.compose(g));
            let by_z = induced_matrix(&q_y, &q_z, |g| t.z.compose(g));
            report.cases += 2;
            if let Some(witness) = exact_at(&by_x, &by_y, &q_x) {
                report.failures.push(ExactnessFailure {
                    position: "exact at X",
                    object: ui,
                    witness,
                });
            }
            if let Some(witness) = exact_at(&by_y, &by_z, &q_y) {
                report.failures.push(ExactnessFailure {
                    position: "exact at Y",
                    object: ui,
                    witness,
                });
            }
        }
        Ok(report)
    }

    /// Coset-level functoriality of the shift on all composable pairs of
    /// hom-basis elements between universe objects. Returns the first
    /// failing triple of indices.
    pub fn functoriality_check(&self, universe: &[Rep]) -> Result<(usize, Option<(usize, usize, usize)>)> {
        let n = universe.len();
        let shifted: Vec<Rep> = universe.iter().map(|x| self.shift(x)).collect();
        let mut cases = 0;
        let mut bases: Vec<Vec<Vec<RepMor>>> = Vec::with_capacity(n);
        let mut shifts: Vec<Vec<Vec<RepMor>>> = Vec::with_capacity(n);
        for a in universe {
            let mut row = Vec::with_capacity(n);
            let mut srow = Vec::with_capacity(n);
            for b in universe {
                let basis = HomSpace::new(a, b)?.basis().to_vec();
                let sb = basis.iter().map(|f| self.shift_mor(f)).collect::<Result<Vec<_>>>()?;
                row.push(basis);
                srow.push(sb);
            }
            bases.push(row);
            shifts.push(srow);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if bases[a][b].is_empty() || bases[b][c].is_empty() {
                        continue;
                    }
                    let q = self.quot_hom(&shifted[a], &shifted[c])?;
                    for (f, sf) in bases[a][b].iter().zip(&shifts[a][b]) {
                        for (g, sg) in bases[b][c].iter().zip(&shifts[b][c]) {
                            cases += 1;
                            let direct = self.shift_mor(&g.compose(f))?;
                            if !q.same(&direct, &sg.compose(sf)) {
                                return Ok((cases, Some((a, b, c))));
                            }
                        }
                    }
                }
            }
        }
        Ok((cases, None))
    }
}

/// Dimension comparison `(A/C)/(B/C)` against `A/B` for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedQuotientEntry {
    pub src: usize,
    pub tgt: usize,
    pub iterated: usize,
    pub direct: usize,
    pub canonical_bijective: bool,
}

#[derive(Clone, Debug)]
pub struct IteratedQuotientReport {
    pub entries: Vec<IteratedQuotientEntry>,
}

impl IteratedQuotientReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.iterated == e.direct && e.canonical_bijective)
    }
}

/// For `C ⊆ add B`, compares hom dimensions of `(A/C)/(B/C)` and `A/B` on
/// all universe pairs and checks that the canonical map `A/C -> A/B`
/// induces a bijection.
pub fn iterated_quotient_check(universe: &[Rep], b: &Subcat, c: &Subcat) -> Result<IteratedQuotientReport> {
    for (i, g) in c.generators().iter().enumerate() {
        if !b.contains(g)? {
            return Err(Error::Precondition(format!(
                "generator {} of the inner ideal is not in the outer subcategory",
                i + 1
            )));
        }
    }
    let mut entries = Vec::new();
    for (i, x) in universe.iter().enumerate() {
        for (j, y) in universe.iter().enumerate() {
            let hom = HomSpace::new(x, y)?;
            let field = x.field();
            let fb = b.factor_subspace(&hom)?;
            let fc = c.factor_subspace(&hom)?;
            let rc = QuotientReducer::new(field, hom.dim(), &fc);
            let rb = QuotientReducer::new(field, hom.dim(), &fb);
            // image of B/C inside A/C
            let cols: Vec<Vec<u32>> = (0..fb.cols()).map(|k| rc.reduce(&fb.column(k))).collect();
            let image_rank = Mat::from_columns(field, rc.quotient_dim(), &cols).rank();
            let iterated = rc.quotient_dim() - image_rank;
            let direct = rb.quotient_dim();
            // canonical map A/C -> A/B on transversal coordinates
            let canon_cols: Vec<Vec<u32>> = rc
                .transversal()
                .iter()
                .map(|&t| {
                    let mut e = vec![0; hom.dim()];
                    e[t] = 1;
                    rb.reduce(&e)
                })
                .collect();
            let canon = Mat::from_columns(field, direct, &canon_cols);
            let contained = (0..fc.cols()).all(|k| rb.contains(&fc.column(k)));
            let canonical_bijective =
                contained && canon.rank() == direct && rc.quotient_dim() - canon.rank() == image_rank;
            entries.push(IteratedQuotientEntry {
                src: i,
                tgt: j,
                iterated,
                direct,
                canonical_bijective,
            });
        }
    }
    Ok(IteratedQuotientReport { entries })
}
