//! Finitely presented functors on a subcategory `M`, realized as modules
//! over the stable endomorphism algebra `Γ` of the generators, the
//! functors `F = Hom(-, X)|M` and `H = Hom(Ω-, X)|M`, and the verifiers of
//! the equivalences `M*ΣM/ΣM ≅ mod Γ` and `ΩM*M/M ≅ mod Γ`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactla::{span_equal, span_included, FieldPrime, Mat, QuotientReducer};
use crate::onesided::{induced_matrix, iterated_quotient_check, QuotHom, Side, StableCategory, Subcat};
use crate::rep::{search_combinations, HomSpace, Rep, RepMor};
use crate::rigidstar::{
    check_factorization, check_shift_fully_faithful, check_cone_approximation, is_rigid_exact, is_rigid_stable,
    presentation_family, stable_star_membership, star_membership, FullyFaithfulReport, FactorizationReport, ConeApproxReport,
    RigidityReport, Route, SearchOptions, StarCertificate, StarOutcome,
};

/// One basis element of `Γ`: the `k`-th coset of stable `Hom(M_src, M_tgt)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBasis {
    pub src: usize,
    pub tgt: usize,
    pub k: usize,
}

/// `Γ = End(⊕ M_i)` in the stable category, with basis the coset
/// transversals of all pairs `(i, j)` in row-major order.
#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    side: Side,
    field: FieldPrime,
    generators: Vec<Rep>,
    shifted: Vec<Rep>,
    pairs: Vec<Vec<QuotHom>>,
    offsets: Vec<Vec<usize>>,
    basis: Vec<GammaBasis>,
    reps: Vec<RepMor>,
    shifted_reps: Vec<RepMor>,
    products: Vec<Vec<Vec<u32>>>,
}

impl GammaAlgebra {
    pub fn new(cat: &StableCategory, m: &Subcat) -> Result<Self> {
        let generators = m.generators().to_vec();
        let field = cat.alg().field();
        let n = generators.len();
        let shifted: Vec<Rep> = generators.iter().map(|g| cat.shift(g)).collect();
        let mut pairs = Vec::with_capacity(n);
        let mut offsets = vec![vec![0; n]; n];
        let mut basis = Vec::new();
        let mut reps = Vec::new();
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let q = cat.quot_hom(&generators[i], &generators[j])?;
                offsets[i][j] = basis.len();
                for (k, r) in q.representatives().into_iter().enumerate() {
                    basis.push(GammaBasis { src: i, tgt: j, k });
                    reps.push(r);
                }
                row.push(q);
            }
            pairs.push(row);
        }
        let mut shifted_reps = Vec::with_capacity(reps.len());
        for r in &reps {
            shifted_reps.push(cat.shift_mor(r)?);
        }
        let mut g = GammaAlgebra {
            side: cat.side(),
            field,
            generators,
            shifted,
            pairs,
            offsets,
            basis,
            reps,
            shifted_reps,
            products: Vec::new(),
        };
        let d = g.dim();
        let mut products = vec![vec![vec![0; d]; d]; d];
        for b in 0..d {
            for a in 0..d {
                let (ea, eb) = (&g.basis[a], &g.basis[b]);
                if ea.tgt == eb.src {
                    products[b][a] = g.coords(ea.src, eb.tgt, &g.reps[b].compose(&g.reps[a]));
                }
            }
        }
        g.products = products;
        if let Some((a, b, c)) = g.check_associative() {
            return Err(Error::Internal(alloc::format!(
                "endomorphism algebra is not associative on basis triple ({a}, {b}, {c})"
            )));
        }
        Ok(g)
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn field(&self) -> FieldPrime {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn generators(&self) -> &[Rep] {
        &self.generators
    }
    /// `ΣM_i` or `ΩM_i`.
    pub fn shifted(&self) -> &[Rep] {
        &self.shifted
    }
    pub fn basis(&self) -> &[GammaBasis] {
        &self.basis
    }
    /// Representative morphism of a basis element.
    pub fn representative(&self, b: usize) -> &RepMor {
        &self.reps[b]
    }
    /// Shift of the representative of a basis element.
    pub fn shifted_representative(&self, b: usize) -> &RepMor {
        &self.shifted_reps[b]
    }
    pub fn pair(&self, i: usize, j: usize) -> &QuotHom {
        &self.pairs[i][j]
    }

    /// Global coordinates of a morphism `M_i -> M_j`.
    pub fn coords(&self, i: usize, j: usize, f: &RepMor) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        let local = self.pairs[i][j].reduce(f);
        let o = self.offsets[i][j];
        v[o..o + local.len()].copy_from_slice(&local);
        v
    }

    /// Coordinates of `b ∘ a`; zero when not composable.
    pub fn product(&self, b: usize, a: usize) -> &[u32] {
        &self.products[b][a]
    }

    /// Coordinates of the identity of `⊕ M_i`.
    pub fn identity(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (i, g) in self.generators.iter().enumerate() {
            let c = self.coords(i, i, &RepMor::identity(g));
            for (x, y) in v.iter_mut().zip(c) {
                *x = self.field.add(*x, y);
            }
        }
        v
    }

    fn mul_coords(&self, b: &[u32], a: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (bi, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            for (ai, &ca) in a.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                let s = f.mul(cb, ca);
                for (o, &p) in out.iter_mut().zip(&self.products[bi][ai]) {
                    *o = f.add(*o, f.mul(s, p));
                }
            }
        }
        out
    }

    fn unit(&self, b: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[b] = 1;
        v
    }

    /// First basis triple with `(c b) a != c (b a)`.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ba = self.products[b][a].clone();
                for c in 0..d {
                    let left = self.mul_coords(&self.products[c][b], &self.unit(a));
                    let right = self.mul_coords(&self.unit(c), &ba);
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn check_identity(&self) -> bool {
        let e = self.identity();
        (0..self.dim()).all(|b| {
            let u = self.unit(b);
            self.mul_coords(&e, &u) == u && self.mul_coords(&u, &e) == u
        })
    }
}

/// A right `Γ`-module, i.e. a contravariant functor on the generators:
/// a space per generator and, for each basis element `M_i -> M_j`, a map
/// `N(j) -> N(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    pub blocks: Vec<usize>,
    pub actions: Vec<Mat>,
}

impl GammaModule {
    pub fn zero(gamma: &GammaAlgebra) -> Self {
        let blocks = vec![0; gamma.generators.len()];
        let actions = gamma
            .basis
            .iter()
            .map(|_| Mat::zeros(gamma.field, 0, 0))
            .collect();
        GammaModule { blocks, actions }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().sum()
    }

    /// The action of a basis element on the whole space.
    pub fn full_action(&self, gamma: &GammaAlgebra, b: usize) -> Mat {
        let e = &gamma.basis[b];
        let mut m = Mat::zeros(gamma.field, self.dim(), self.dim());
        m.put_block(self.offset(e.src), self.offset(e.tgt), &self.actions[b]);
        m
    }

    /// Action of a general element given by coordinates.
    pub fn element_action(&self, gamma: &GammaAlgebra, coords: &[u32]) -> Mat {
        let mut m = Mat::zeros(gamma.field, self.dim(), self.dim());
        for (b, &c) in coords.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.full_action(gamma, b).scale(c));
            }
        }
        m
    }

    /// `N(b a) = N(a) N(b)` on basis pairs and the identity acts trivially.
    pub fn validate(&self, gamma: &GammaAlgebra) -> Option<String> {
        if self.blocks.len() != gamma.generators.len() || self.actions.len() != gamma.dim() {
            return Some("block or action count does not match the algebra".into());
        }
        for (b, e) in gamma.basis.iter().enumerate() {
            let a = &self.actions[b];
            if a.rows() != self.blocks[e.src] || a.cols() != self.blocks[e.tgt] {
                return Some(alloc::format!("action of basis element {b} has the wrong shape"));
            }
        }
        let full: Vec<Mat> = (0..gamma.dim()).map(|b| self.full_action(gamma, b)).collect();
        for a in 0..gamma.dim() {
            for b in 0..gamma.dim() {
                let lhs = self.element_action(gamma, gamma.product(b, a));
                if lhs != full[a].mul(&full[b]) {
                    return Some(alloc::format!("action fails on the product of {b} and {a}"));
                }
            }
        }
        if self.element_action(gamma, &gamma.identity()) != Mat::identity(gamma.field, self.dim()) {
            return Some("identity does not act as the identity".into());
        }
        None
    }
}

/// A `Γ`-linear map, one block per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    pub blocks: Vec<Mat>,
}

impl GammaMap {
    pub fn compose(&self, first: &GammaMap) -> GammaMap {
        GammaMap {
            blocks: self.blocks.iter().zip(&first.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    fn from_flat(field: FieldPrime, a: &GammaModule, b: &GammaModule, v: &[u32]) -> GammaMap {
        let mut pos = 0;
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(&c, &r)| {
                let m = Mat::from_vec(field, r, c, v[pos..pos + r * c].to_vec());
                pos += r * c;
                m
            })
            .collect();
        GammaMap { blocks }
    }
}

pub fn is_intertwiner(gamma: &GammaAlgebra, a: &GammaModule, b: &GammaModule, t: &GammaMap) -> bool {
    gamma.basis.iter().enumerate().all(|(k, e)| {
        t.blocks[e.src].mul(&a.actions[k]) == b.actions[k].mul(&t.blocks[e.tgt])
    })
}

/// Basis of the `Γ`-linear maps `a -> b`.
pub fn gamma_hom(gamma: &GammaAlgebra, a: &GammaModule, b: &GammaModule) -> Result<Vec<GammaMap>> {
    let n = gamma.generators.len();
    if a.blocks.len() != n || b.blocks.len() != n {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    let f = gamma.field;
    let unknowns: usize = a.blocks.iter().zip(&b.blocks).map(|(x, y)| x * y).sum();
    let mut cols = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut v = vec![0; unknowns];
        v[u] = 1;
        let t = GammaMap::from_flat(f, a, b, &v);
        let mut col = Vec::new();
        for (k, e) in gamma.basis.iter().enumerate() {
            let d = t.blocks[e.src].mul(&a.actions[k]).sub(&b.actions[k].mul(&t.blocks[e.tgt]));
            col.extend_from_slice(d.data());
        }
        cols.push(col);
    }
    let rows = cols.first().map_or(0, Vec::len);
    let sys = Mat::from_columns(f, rows, &cols);
    let k = if unknowns == 0 { Mat::zeros(f, 0, 0) } else { sys.kernel_basis() };
    Ok((0..k.cols()).map(|j| GammaMap::from_flat(f, a, b, &k.column(j))).collect())
}

/// An isomorphism `a -> b`, `None` when none exists, or `Undecided` once
/// the search passes `cap`.
pub fn is_iso_gamma(
    gamma: &GammaAlgebra,
    a: &GammaModule,
    b: &GammaModule,
    cap: u64,
) -> Result<Option<GammaMap>> {
    if a.blocks != b.blocks {
        return Ok(None);
    }
    if a.is_zero() {
        return Ok(Some(GammaMap {
            blocks: a.blocks.iter().map(|_| Mat::zeros(gamma.field, 0, 0)).collect(),
        }));
    }
    let basis = gamma_hom(gamma, a, b)?;
    let f = gamma.field;
    let combine = |c: &[u32]| {
        let mut v = vec![0; basis[0].flatten().len()];
        for (t, &x) in basis.iter().zip(c) {
            for (o, y) in v.iter_mut().zip(t.flatten()) {
                *o = f.add(*o, f.mul(x, y));
            }
        }
        GammaMap::from_flat(f, a, b, &v)
    };
    if basis.is_empty() {
        return Ok(None);
    }
    let (exhaustive, hit) = search_combinations(f, basis.len(), cap, |c| {
        let t = combine(c);
        t.is_iso().then_some(t)
    });
    match (hit, exhaustive) {
        (Some(t), _) => Ok(Some(t)),
        (None, true) => Ok(None),
        (None, false) => Err(Error::Undecided {
            what: "module isomorphism test",
            needed: alloc::format!("{}^{} enumeration steps", f.p(), basis.len()),
            cap,
        }),
    }
}

/// Cokernel of `t: a -> b` with the induced action and the projection.
pub fn gamma_cokernel(gamma: &GammaAlgebra, b: &GammaModule, t: &GammaMap) -> (GammaModule, GammaMap, Vec<QuotientReducer>) {
    let f = gamma.field;
    let reducers: Vec<QuotientReducer> = b
        .blocks
        .iter()
        .zip(&t.blocks)
        .map(|(&n, m)| QuotientReducer::new(f, n, m))
        .collect();
    let blocks: Vec<usize> = reducers.iter().map(QuotientReducer::quotient_dim).collect();
    let mut actions = Vec::with_capacity(gamma.dim());
    for (k, e) in gamma.basis.iter().enumerate() {
        let (ri, rj) = (&reducers[e.src], &reducers[e.tgt]);
        let cols: Vec<Vec<u32>> = (0..rj.quotient_dim())
            .map(|c| {
                let mut u = vec![0; rj.quotient_dim()];
                u[c] = 1;
                ri.reduce(&b.actions[k].mul_vec(&rj.lift(&u)))
            })
            .collect();
        actions.push(Mat::from_columns(f, ri.quotient_dim(), &cols));
    }
    let proj = GammaMap {
        blocks: reducers
            .iter()
            .zip(&b.blocks)
            .map(|(r, &n)| {
                let cols: Vec<Vec<u32>> = (0..n)
                    .map(|c| {
                        let mut u = vec![0; n];
                        u[c] = 1;
                        r.reduce(&u)
                    })
                    .collect();
                Mat::from_columns(f, r.quotient_dim(), &cols)
            })
            .collect(),
    };
    (GammaModule { blocks, actions }, proj, reducers)
}

/// The value of `F` or `H` at an object, together with the stable
/// hom-spaces making up its blocks.
#[derive(Clone, Debug)]
pub struct FunctorValue {
    pub object: Rep,
    pub spaces: Vec<QuotHom>,
    pub module: GammaModule,
}

/// `Hom(-, X)` restricted to the generators, acting by precomposition.
pub fn representable(gamma: &GammaAlgebra, cat: &StableCategory, x: &Rep) -> Result<FunctorValue> {
    evaluate(gamma, cat, x, false)
}

/// `F(X) = Hom(-, X)|M` in the right stable category.
pub fn f_of(gamma: &GammaAlgebra, cat: &StableCategory, x: &Rep) -> Result<FunctorValue> {
    if cat.side() != Side::Right || gamma.side != Side::Right {
        return Err(Error::Precondition("F is defined on the right stable category".into()));
    }
    evaluate(gamma, cat, x, false)
}

/// `H(X) = Hom(Ω-, X)|M` in the left stable category; a basis element `a`
/// acts by precomposition with `Ωa`.
pub fn h_of(gamma: &GammaAlgebra, cat: &StableCategory, x: &Rep) -> Result<FunctorValue> {
    if cat.side() != Side::Left || gamma.side != Side::Left {
        return Err(Error::Precondition("H is defined on the left stable category".into()));
    }
    evaluate(gamma, cat, x, true)
}

fn evaluate(gamma: &GammaAlgebra, cat: &StableCategory, x: &Rep, shifted: bool) -> Result<FunctorValue> {
    let srcs = if shifted { &gamma.shifted } else { &gamma.generators };
    let mut spaces = Vec::with_capacity(srcs.len());
    for s in srcs {
        spaces.push(cat.quot_hom(s, x)?);
    }
    let actions = gamma
        .basis
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let a = if shifted { &gamma.shifted_reps[k] } else { &gamma.reps[k] };
            induced_matrix(&spaces[e.tgt], &spaces[e.src], |t| t.compose(a))
        })
        .collect();
    let module = GammaModule {
        blocks: spaces.iter().map(QuotHom::dim).collect(),
        actions,
    };
    Ok(FunctorValue {
        object: x.clone(),
        spaces,
        module,
    })
}

/// The `Γ`-map induced by `t: X -> Y` through postcomposition.
pub fn functor_on(t: &RepMor, from: &FunctorValue, to: &FunctorValue) -> GammaMap {
    GammaMap {
        blocks: from
            .spaces
            .iter()
            .zip(&to.spaces)
            .map(|(a, b)| induced_matrix(a, b, |s| t.compose(s)))
            .collect(),
    }
}

/// A failed exactness condition at one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFailure {
    pub generator: usize,
    pub stage: &'static str,
}

#[derive(Clone, Debug, Default)]
pub struct PresentationReport {
    pub generators: usize,
    pub failures: Vec<PresentationFailure>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn exact_three(first: &Mat, second: &Mat) -> bool {
    second.mul(first).is_zero() && span_equal(&second.kernel_basis(), &first.column_space())
}

/// Exactness of `Hom(M, M0) -> Hom(M, M1) -> F(X)(M) -> 0` (right) or
/// `Hom(M, M0) -> Hom(M, M1) -> H(X)(M) -> 0` (left) at each generator,
/// and on the left the bijections `Hom(M, M_k) -> Hom(ΩM, ΩM_k)`.
pub fn presentation_exactness_check(
    cat: &StableCategory,
    gamma: &GammaAlgebra,
    cert: &StarCertificate,
) -> Result<PresentationReport> {
    let mut report = PresentationReport {
        generators: gamma.generators.len(),
        failures: Vec::new(),
    };
    match cat.side() {
        Side::Right => {
            let t = cert
                .right
                .as_ref()
                .ok_or_else(|| Error::Precondition("right certificate expected".into()))?;
            for (i, g) in gamma.generators.iter().enumerate() {
                let q0 = cat.quot_hom(g, t.u.src())?;
                let q1 = cat.quot_hom(g, t.v.src())?;
                let qx = cat.quot_hom(g, t.v.tgt())?;
                let by_f = induced_matrix(&q0, &q1, |s| t.u.compose(s));
                let by_g = induced_matrix(&q1, &qx, |s| t.v.compose(s));
                push_exactness(&mut report, i, &by_f, &by_g, qx.dim());
            }
        }
        Side::Left => {
            let t = cert
                .left
                .as_ref()
                .ok_or_else(|| Error::Precondition("left certificate expected".into()))?;
            let (m0, m1) = (t.z.src(), t.z.tgt());
            let om1 = t.x.src();
            for (i, g) in gamma.generators.iter().enumerate() {
                let og = &gamma.shifted[i];
                let q0 = cat.quot_hom(g, m0)?;
                let q1 = cat.quot_hom(g, m1)?;
                let qx = cat.quot_hom(og, t.x.tgt())?;
                let by_h = induced_matrix(&q0, &q1, |s| t.z.compose(s));
                let mut cols = Vec::with_capacity(q1.dim());
                for r in q1.representatives() {
                    let os = cat.shift_mor(&r)?;
                    if os.tgt() != om1 {
                        return Err(Error::Internal("shift of the middle term does not match the triangle".into()));
                    }
                    cols.push(qx.reduce(&t.x.compose(&os)));
                }
                let to_h = Mat::from_columns(gamma.field, qx.dim(), &cols);
                push_exactness(&mut report, i, &by_h, &to_h, qx.dim());
                for target in [m0, m1] {
                    let q = cat.quot_hom(g, target)?;
                    let qs = cat.quot_hom(og, &cat.shift(target))?;
                    let mut cols = Vec::with_capacity(q.dim());
                    for r in q.representatives() {
                        cols.push(qs.reduce(&cat.shift_mor(&r)?));
                    }
                    let tr = Mat::from_columns(gamma.field, qs.dim(), &cols);
                    if tr.rank() != q.dim() || tr.rank() != qs.dim() {
                        report.failures.push(PresentationFailure {
                            generator: i,
                            stage: "transport",
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn push_exactness(report: &mut PresentationReport, i: usize, first: &Mat, second: &Mat, target_dim: usize) {
    if !second.mul(first).is_zero() {
        report.failures.push(PresentationFailure {
            generator: i,
            stage: "composite",
        });
    } else if !exact_three(first, second) {
        report.failures.push(PresentationFailure {
            generator: i,
            stage: "middle",
        });
    }
    if second.rank() != target_dim {
        report.failures.push(PresentationFailure {
            generator: i,
            stage: "surjective",
        });
    }
}

/// Verdict of membership for one universe object.
#[derive(Clone, Debug)]
pub struct MembershipEntry {
    pub object: usize,
    /// `Some(true)` member, `Some(false)` non-member, `None` undecided.
    pub member: Option<bool>,
    pub route: Option<Route>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct DenseReport {
    pub presentations: usize,
    pub sampled: bool,
    /// Object pairs of the presentation family where the representables
    /// fail to be fully faithful.
    pub yoneda_failures: Vec<(usize, usize)>,
    /// Presentations whose cokernel is not carried onto the value at the
    /// cone (right) or fiber (left).
    pub failures: Vec<usize>,
}

impl DenseReport {
    pub fn passed(&self) -> bool {
        self.yoneda_failures.is_empty() && self.failures.is_empty()
    }
}

/// Dimensions of one hom-space on both sides of the equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimPair {
    pub quotient: usize,
    pub modules: usize,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub side: Side,
    pub gamma_dim: usize,
    pub exact_rigidity: RigidityReport,
    pub stable_rigidity: RigidityReport,
    pub shift_fully_faithful: FullyFaithfulReport,
    pub cone_approx: Option<ConeApproxReport>,
    pub factorization: Option<FactorizationReport>,
    pub membership: Vec<MembershipEntry>,
    pub certificates: Vec<StarCertificate>,
    /// Universe indices of the star objects, parallel to `certificates`.
    pub star: Vec<usize>,
    pub exactness: Vec<PresentationReport>,
    pub dense: DenseReport,
    pub pairs: usize,
    pub full_failures: Vec<(usize, usize)>,
    pub kernel_failures: Vec<(usize, usize)>,
    /// Universe indices of star objects that are nonzero in the quotient.
    pub nonzero: Vec<usize>,
    /// `table[a][b]` for `nonzero[a]`, `nonzero[b]`.
    pub table: Vec<Vec<DimPair>>,
}

impl EquivalenceReport {
    pub fn hypotheses_passed(&self) -> bool {
        self.shift_fully_faithful.passed()
            && self.cone_approx.as_ref().is_none_or(ConeApproxReport::passed)
            && self.factorization.as_ref().is_none_or(FactorizationReport::passed)
    }

    pub fn undecided(&self) -> bool {
        self.membership.iter().any(|m| m.member.is_none())
    }

    pub fn full_passed(&self) -> bool {
        self.full_failures.is_empty()
    }

    pub fn kernel_passed(&self) -> bool {
        self.kernel_failures.is_empty()
    }

    pub fn confirmed(&self) -> bool {
        self.hypotheses_passed()
            && !self.undecided()
            && self.exactness.iter().all(PresentationReport::passed)
            && self.dense.passed()
            && self.full_passed()
            && self.kernel_passed()
    }
}

#[derive(Clone, Debug)]
pub enum EquivalenceOutcome {
    /// The subcategory is not rigid; no claim is made.
    Refused {
        exact: RigidityReport,
        stable: RigidityReport,
    },
    Checked(EquivalenceReport),
}

impl EquivalenceOutcome {
    pub fn report(&self) -> Option<&EquivalenceReport> {
        match self {
            EquivalenceOutcome::Checked(r) => Some(r),
            EquivalenceOutcome::Refused { .. } => None,
        }
    }
}

/// `M*ΣM/ΣM ≅ mod Γ` checked on a finite universe through `F`.
pub fn verify_equivalence_right(
    cat: &StableCategory,
    m: &Subcat,
    universe: &[Rep],
    opts: SearchOptions,
) -> Result<EquivalenceOutcome> {
    if cat.side() != Side::Right {
        return Err(Error::Precondition("right verification needs the right stable category".into()));
    }
    verify(cat, m, universe, opts)
}

/// `ΩM*M/M ≅ mod Γ` checked on a finite universe through `H`.
pub fn verify_equivalence_left(
    cat: &StableCategory,
    m: &Subcat,
    universe: &[Rep],
    opts: SearchOptions,
) -> Result<EquivalenceOutcome> {
    if cat.side() != Side::Left {
        return Err(Error::Precondition("left verification needs the left stable category".into()));
    }
    verify(cat, m, universe, opts)
}

/// The ideal killed by the equivalence: `ΣM` and injectives on the right,
/// `M` and projectives on the left.
pub fn kernel_ideal(cat: &StableCategory, m: &Subcat) -> Subcat {
    match cat.side() {
        Side::Right => m.map(|g| cat.shift(g)).union(cat.ideal()),
        Side::Left => m.union(cat.ideal()),
    }
}

fn value(gamma: &GammaAlgebra, cat: &StableCategory, x: &Rep) -> Result<FunctorValue> {
    match cat.side() {
        Side::Right => f_of(gamma, cat, x),
        Side::Left => h_of(gamma, cat, x),
    }
}

fn verify(cat: &StableCategory, m: &Subcat, universe: &[Rep], opts: SearchOptions) -> Result<EquivalenceOutcome> {
    let exact = is_rigid_exact(m)?;
    let stable = is_rigid_stable(cat, m)?;
    if !exact.rigid() || !stable.rigid() {
        return Ok(EquivalenceOutcome::Refused { exact, stable });
    }
    let gamma = GammaAlgebra::new(cat, m)?;
    let shift_ff = check_shift_fully_faithful(cat, m)?;

    let mut membership = Vec::new();
    let mut certificates = Vec::new();
    let mut star = Vec::new();
    for (k, x) in universe.iter().enumerate() {
        match star_membership(cat, m, x, opts) {
            Ok(StarOutcome::Member(c)) => {
                membership.push(MembershipEntry {
                    object: k,
                    member: Some(true),
                    route: Some(c.route),
                    reason: None,
                });
                certificates.push(c);
                star.push(k);
            }
            Ok(StarOutcome::NonMember { route, reason }) => membership.push(MembershipEntry {
                object: k,
                member: Some(false),
                route: Some(route),
                reason: Some(reason),
            }),
            Err(Error::Undecided { .. }) => membership.push(MembershipEntry {
                object: k,
                member: None,
                route: Some(Route::Exhaustive),
                reason: Some("search bound reached".into()),
            }),
            Err(e) => return Err(e),
        }
    }
    let star_objs: Vec<Rep> = star.iter().map(|&k| universe[k].clone()).collect();
    let (cone_approx, factorization) = match cat.side() {
        Side::Right => (Some(check_cone_approximation(cat, m, opts.cap)?), None),
        Side::Left => (None, Some(check_factorization(cat, &certificates, &star_objs)?)),
    };
    let mut exactness = Vec::with_capacity(certificates.len());
    for c in &certificates {
        exactness.push(presentation_exactness_check(cat, &gamma, c)?);
    }
    let dense = dense_check(cat, &gamma, m, opts.cap)?;

    let ideal = kernel_ideal(cat, m);
    let values: Vec<FunctorValue> = star_objs.iter().map(|x| value(&gamma, cat, x)).collect::<Result<_>>()?;
    let n = star_objs.len();
    let mut full_failures = Vec::new();
    let mut kernel_failures = Vec::new();
    let mut dims = vec![vec![DimPair { quotient: 0, modules: 0 }; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&star_objs[a], &star_objs[b]);
            let q = cat.quot_hom(x, y)?;
            let f = gamma.field;
            let images: Vec<GammaMap> = q
                .representatives()
                .iter()
                .map(|t| functor_on(t, &values[a], &values[b]))
                .collect();
            let hom = gamma_hom(&gamma, &values[a].module, &values[b].module)?;
            let flat_len = values[a].module.blocks.iter().zip(&values[b].module.blocks).map(|(c, r)| c * r).sum();
            let img = Mat::from_columns(f, flat_len, &images.iter().map(GammaMap::flatten).collect::<Vec<_>>());
            let homm = Mat::from_columns(f, flat_len, &hom.iter().map(GammaMap::flatten).collect::<Vec<_>>());
            if !span_included(&img, &homm) || img.rank() != hom.len() {
                full_failures.push((star[a], star[b]));
            }
            let killed = img.kernel_basis();
            let through = ideal.factor_subspace(q.hom())?;
            let through_q: Vec<Vec<u32>> = (0..through.cols())
                .map(|c| q.reduce(&q.hom().element(&through.column(c))))
                .collect();
            let through_q = Mat::from_columns(f, q.dim(), &through_q);
            if !span_equal(&killed, &through_q) {
                kernel_failures.push((star[a], star[b]));
            }
            dims[a][b] = DimPair {
                quotient: q.dim() - through_q.rank(),
                modules: hom.len(),
            };
        }
    }
    let mut nonzero_local = Vec::new();
    for (a, x) in star_objs.iter().enumerate() {
        if !ideal.contains(x)? {
            nonzero_local.push(a);
        }
    }
    let table = nonzero_local
        .iter()
        .map(|&a| nonzero_local.iter().map(|&b| dims[a][b]).collect())
        .collect();
    Ok(EquivalenceOutcome::Checked(EquivalenceReport {
        side: cat.side(),
        gamma_dim: gamma.dim(),
        exact_rigidity: exact,
        stable_rigidity: stable,
        shift_fully_faithful: shift_ff,
        cone_approx,
        factorization,
        membership,
        certificates,
        pairs: n * n,
        nonzero: nonzero_local.iter().map(|&a| star[a]).collect(),
        star,
        exactness,
        dense,
        full_failures,
        kernel_failures,
        table,
    }))
}

/// Every presentation `M0 -> M1` between sums of generators: the
/// representables see exactly the stable morphisms, and the cokernel of the
/// induced map is carried isomorphically onto the value at the cone (right)
/// or fiber (left) by the canonical comparison map.
pub fn dense_check(cat: &StableCategory, gamma: &GammaAlgebra, m: &Subcat, cap: u64) -> Result<DenseReport> {
    let (objs, family, sampled) = presentation_family(cat, m, cap)?;
    let reps: Vec<FunctorValue> = objs.iter().map(|o| representable(gamma, cat, o)).collect::<Result<_>>()?;
    let mut report = DenseReport {
        presentations: family.len(),
        sampled,
        ..DenseReport::default()
    };
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            let q = cat.quot_hom(&objs[a], &objs[b])?;
            let hom = gamma_hom(gamma, &reps[a].module, &reps[b].module)?;
            let f = gamma.field;
            let flat_len = reps[a].module.blocks.iter().zip(&reps[b].module.blocks).map(|(c, r)| c * r).sum();
            let img: Vec<Vec<u32>> = q.representatives().iter().map(|t| functor_on(t, &reps[a], &reps[b]).flatten()).collect();
            let img = Mat::from_columns(f, flat_len, &img);
            if img.rank() != q.dim() || hom.len() != q.dim() {
                report.yoneda_failures.push((a, b));
            }
        }
    }
    for (k, p) in family.iter().enumerate() {
        let (from, to) = (&reps[p.src], &reps[p.tgt]);
        let fp = functor_on(&p.map, from, to);
        let (coker, _, reducers) = gamma_cokernel(gamma, &to.module, &fp);
        let (target, comparison) = match cat.side() {
            Side::Right => {
                let t = cat.cone(&p.map)?;
                let fx = f_of(gamma, cat, t.v.tgt())?;
                let g = functor_on(&t.v, to, &fx);
                (fx, g)
            }
            Side::Left => {
                let t = cat.fiber(&p.map)?;
                let hx = h_of(gamma, cat, t.y.src())?;
                let mut blocks = Vec::with_capacity(gamma.generators.len());
                for (i, sp) in to.spaces.iter().enumerate() {
                    let mut cols = Vec::with_capacity(sp.dim());
                    for r in sp.representatives() {
                        cols.push(hx.spaces[i].reduce(&t.x.compose(&cat.shift_mor(&r)?)));
                    }
                    blocks.push(Mat::from_columns(gamma.field, hx.spaces[i].dim(), &cols));
                }
                (hx, GammaMap { blocks })
            }
        };
        let induced = GammaMap {
            blocks: comparison
                .blocks
                .iter()
                .zip(&reducers)
                .map(|(g, r)| {
                    let cols: Vec<Vec<u32>> = (0..r.quotient_dim())
                        .map(|c| {
                            let mut u = vec![0; r.quotient_dim()];
                            u[c] = 1;
                            g.mul_vec(&r.lift(&u))
                        })
                        .collect();
                    Mat::from_columns(gamma.field, g.rows(), &cols)
                })
                .collect(),
        };
        let well_defined = comparison.compose(&fp).is_zero();
        if !well_defined
            || !is_intertwiner(gamma, &to.module, &target.module, &comparison)
            || !is_intertwiner(gamma, &coker, &target.module, &induced)
            || !induced.is_iso()
        {
            report.failures.push(k);
        }
    }
    Ok(report)
}

/// One named step of the exact-category specialization.
#[derive(Clone, Debug)]
pub struct StepCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Whether every generator of the stable ideal lies in `add M`.
pub fn contains_ideal(cat: &StableCategory, m: &Subcat) -> Result<bool> {
    for g in cat.ideal().generators() {
        if !m.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// When `M` contains the injectives (right) or projectives (left), the
/// checks that reduce the exact-category statement to the stable one:
/// rigidity in the quotient, exact and stable membership agree on the
/// universe, the iterated quotient matches the direct one, the shift is
/// fully faithful on `M`, and the approximation condition (right) or the
/// factorization condition (left). `None` when `M` misses part of the
/// ideal.
pub fn exact_setting_steps(
    cat: &StableCategory,
    m: &Subcat,
    universe: &[Rep],
    opts: SearchOptions,
) -> Result<Option<Vec<StepCheck>>> {
    if !contains_ideal(cat, m)? {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let rig = is_rigid_stable(cat, m)?;
    steps.push(StepCheck {
        name: "rigid-in-quotient",
        passed: rig.rigid(),
        detail: match &rig.witness {
            None => "all stable hom-spaces into the shifted generators vanish".into(),
            Some(w) => alloc::format!("generators {} and {} give dimension {}", w.pair.0, w.pair.1, w.dim),
        },
    });

    let mut certs = Vec::new();
    let mut star = Vec::new();
    let mut disagree = Vec::new();
    let mut undecided = 0;
    for (k, x) in universe.iter().enumerate() {
        let exact = match star_membership(cat, m, x, opts) {
            Ok(StarOutcome::Member(c)) => {
                certs.push(c);
                star.push(x.clone());
                true
            }
            Ok(StarOutcome::NonMember { .. }) => false,
            Err(Error::Undecided { .. }) => {
                undecided += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let stable = stable_star_membership(cat, m, x, opts)?.is_some();
        if exact != stable {
            disagree.push(k);
        }
    }
    let name = match cat.side() {
        Side::Right => "star-equals-M_R",
        Side::Left => "star-equals-M_L",
    };
    steps.push(StepCheck {
        name,
        passed: disagree.is_empty() && undecided == 0,
        detail: alloc::format!(
            "{} of {} universe objects admit the exact sequence; disagreements at {:?}; undecided {}",
            star.len(),
            universe.len(),
            disagree,
            undecided
        ),
    });

    let iq = iterated_quotient_check(&star, &kernel_ideal(cat, m), cat.ideal())?;
    steps.push(StepCheck {
        name: "iterated-quotient-dims",
        passed: iq.passed(),
        detail: alloc::format!("{} object pairs compared", iq.entries.len()),
    });

    let ff = check_shift_fully_faithful(cat, m)?;
    steps.push(StepCheck {
        name: "shift-fully-faithful",
        passed: ff.passed(),
        detail: match ff.first_failure() {
            None => alloc::format!("{} generator pairs bijective", ff.entries.len()),
            Some(e) => alloc::format!("pair {:?} has rank {} between dimensions {} and {}", e.pair, e.rank, e.src_dim, e.tgt_dim),
        },
    });

    match cat.side() {
        Side::Right => {
            let cone_approx = check_cone_approximation(cat, m, opts.cap)?;
            let mut exact_fail = Vec::new();
            for (k, c) in certs.iter().enumerate() {
                for g in m.generators() {
                    let src = HomSpace::new(g, c.ses.middle())?;
                    let tgt = HomSpace::new(g, c.ses.right())?;
                    let cols: Vec<Vec<u32>> = src.basis().iter().map(|h| tgt.coords(&c.ses.epi.compose(h))).collect();
                    if Mat::from_columns(cat.alg().field(), tgt.dim(), &cols).rank() != tgt.dim() {
                        exact_fail.push(k);
                        break;
                    }
                }
            }
            steps.push(StepCheck {
                name: "approximation-property",
                passed: cone_approx.passed() && exact_fail.is_empty(),
                detail: alloc::format!(
                    "{} presentations{}; {} certificates surject on generator homs; failures at {:?}",
                    cone_approx.presentations,
                    if cone_approx.sampled { " (sampled)" } else { "" },
                    certs.len(),
                    exact_fail
                ),
            });
        }
        Side::Left => {
            let factorization = check_factorization(cat, &certs, &star)?;
            steps.push(StepCheck {
                name: "factorization-condition",
                passed: factorization.passed(),
                detail: alloc::format!("{} certificate and target pairs, {} failures", factorization.cases, factorization.failures.len()),
            });
        }
    }
    Ok(Some(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, n3};
    use crate::algebra::{all_projectives, inj, proj, simple, BoundAlgebra};
    use alloc::sync::Arc;

    fn s(alg: &Arc<BoundAlgebra>, i: usize) -> Rep {
        simple(alg, i).unwrap()
    }

    fn n3_universe(n: &Arc<BoundAlgebra>) -> Vec<Rep> {
        (0..3).map(|i| s(n, i)).chain((0..3).map(|i| proj(n, i).unwrap())).collect()
    }

    fn n3_exact_m(n: &Arc<BoundAlgebra>) -> Subcat {
        let mut g = all_projectives(n);
        g.push(s(n, 0));
        Subcat::new(g).unwrap()
    }

    #[test]
    fn gamma_of_one_simple() {
        let n = n3();
        let right = StableCategory::right(&n);
        let g = GammaAlgebra::new(&right, &Subcat::new(vec![s(&n, 0)]).unwrap()).unwrap();
        assert_eq!(g.dim(), 1);
        assert!(g.check_identity());
        assert_eq!(g.identity(), vec![1]);
        let z = GammaAlgebra::new(&right, &Subcat::injectives(&n)).unwrap();
        assert_eq!(z.dim(), 0);
        let exact = GammaAlgebra::new(&right, &n3_exact_m(&n)).unwrap();
        assert_eq!(exact.dim(), 1);
    }

    #[test]
    fn functor_values() {
        let n = n3();
        let right = StableCategory::right(&n);
        let m = Subcat::new(vec![s(&n, 0)]).unwrap();
        let g = GammaAlgebra::new(&right, &m).unwrap();
        let f1 = f_of(&g, &right, &s(&n, 0)).unwrap();
        assert_eq!(f1.module.dim(), 1);
        assert!(f1.module.validate(&g).is_none());
        assert!(f_of(&g, &right, &proj(&n, 1).unwrap()).unwrap().module.is_zero());
        assert!(f_of(&g, &right, &Rep::zero(&n)).unwrap().module.is_zero());
        assert_eq!(gamma_hom(&g, &f1.module, &f1.module).unwrap().len(), 1);
        assert!(h_of(&g, &right, &s(&n, 0)).is_err());
    }

    #[test]
    fn h_values_on_the_left() {
        let n = n3();
        let left = StableCategory::left(&n);
        let g = GammaAlgebra::new(&left, &n3_exact_m(&n)).unwrap();
        let h2 = h_of(&g, &left, &s(&n, 1)).unwrap();
        assert!(h2.module.validate(&g).is_none());
        let s1 = g.generators().iter().position(|x| *x == s(&n, 0)).unwrap();
        assert_eq!(h2.module.blocks[s1], 1);
        assert_eq!(g.shifted()[s1], s(&n, 1));
        for p in all_projectives(&n) {
            assert!(h_of(&g, &left, &p).unwrap().module.is_zero());
        }
    }

    #[test]
    fn yoneda_dimension() {
        let n = n3();
        let right = StableCategory::right(&n);
        let g = GammaAlgebra::new(&right, &Subcat::new(vec![s(&n, 0), s(&n, 2)]).unwrap()).unwrap();
        for x in n3_universe(&n) {
            let fx = f_of(&g, &right, &x).unwrap();
            for (i, gen) in g.generators().iter().enumerate() {
                let rep = representable(&g, &right, gen).unwrap();
                assert_eq!(gamma_hom(&g, &rep.module, &fx.module).unwrap().len(), fx.module.blocks[i]);
            }
        }
    }

    #[test]
    fn cokernel_and_iso() {
        let n = n3();
        let right = StableCategory::right(&n);
        let g = GammaAlgebra::new(&right, &Subcat::new(vec![s(&n, 0)]).unwrap()).unwrap();
        let f1 = f_of(&g, &right, &s(&n, 0)).unwrap();
        let id = gamma_hom(&g, &f1.module, &f1.module).unwrap().remove(0);
        assert!(is_iso_gamma(&g, &f1.module, &f1.module, 16).unwrap().is_some());
        let (c, proj, _) = gamma_cokernel(&g, &f1.module, &id);
        assert!(c.is_zero());
        assert!(proj.compose(&id).is_zero());
        let zero = GammaMap { blocks: vec![Mat::zeros(g.field(), 1, 1)] };
        let (c, _, _) = gamma_cokernel(&g, &f1.module, &zero);
        assert_eq!(c, f1.module);
        assert!(is_iso_gamma(&g, &f1.module, &GammaModule::zero(&g), 16).unwrap().is_none());
    }

    #[test]
    fn right_stable_instance_confirms() {
        let n = n3();
        let right = StableCategory::right(&n);
        let m = Subcat::new(vec![s(&n, 0)]).unwrap();
        let out = verify_equivalence_right(&right, &m, &n3_universe(&n), SearchOptions::default()).unwrap();
        let r = out.report().unwrap();
        assert!(r.confirmed(), "{r:?}");
        assert_eq!(r.gamma_dim, 1);
        let members: Vec<usize> = r.star.iter().copied().filter(|&k| k < 3).collect();
        assert_eq!(members, vec![0, 2]);
        assert_eq!(r.nonzero, vec![0]);
        assert_eq!(r.table, vec![vec![DimPair { quotient: 1, modules: 1 }]]);
    }

    #[test]
    fn exact_instances_confirm() {
        let n = n3();
        let m = n3_exact_m(&n);
        let u = n3_universe(&n);
        let right = StableCategory::right(&n);
        let r = verify_equivalence_right(&right, &m, &u, SearchOptions::default()).unwrap();
        let r = r.report().unwrap();
        assert!(r.confirmed());
        assert_eq!(r.nonzero, vec![0]);
        let left = StableCategory::left(&n);
        let l = verify_equivalence_left(&left, &m, &u, SearchOptions::default()).unwrap();
        let l = l.report().unwrap();
        assert!(l.confirmed(), "{l:?}");
        assert_eq!(l.nonzero, vec![1]);
        assert_eq!(l.table, vec![vec![DimPair { quotient: 1, modules: 1 }]]);
        for cat in [right, left] {
            let steps = exact_setting_steps(&cat, &m, &u, SearchOptions::default()).unwrap().unwrap();
            assert_eq!(steps.len(), 5);
            assert!(steps.iter().all(|s| s.passed), "{steps:?}");
        }
        let s1 = Subcat::new(vec![s(&n, 0)]).unwrap();
        assert!(exact_setting_steps(&StableCategory::right(&n), &s1, &u, SearchOptions::default()).unwrap().is_none());
    }

    #[test]
    fn degenerate_controls() {
        let n = n3();
        let u = n3_universe(&n);
        let right = StableCategory::right(&n);
        let r = verify_equivalence_right(&right, &Subcat::injectives(&n), &u, SearchOptions::default()).unwrap();
        let r = r.report().unwrap();
        assert!(r.confirmed());
        assert_eq!(r.gamma_dim, 0);
        assert!(r.table.is_empty());
        let left = StableCategory::left(&n);
        let l = verify_equivalence_left(&left, &Subcat::projectives(&n), &u, SearchOptions::default()).unwrap();
        assert!(l.report().unwrap().confirmed());
        assert!(l.report().unwrap().table.is_empty());

        let a = a2();
        let au: Vec<Rep> = vec![s(&a, 0), s(&a, 1), proj(&a, 0).unwrap(), inj(&a, 1).unwrap()];
        let m = Subcat::new(vec![s(&a, 0), s(&a, 1)]).unwrap();
        match verify_equivalence_right(&StableCategory::right(&a), &m, &au, SearchOptions::default()).unwrap() {
            EquivalenceOutcome::Refused { exact, .. } => assert_eq!(exact.witness.unwrap().dim, 1),
            EquivalenceOutcome::Checked(_) => panic!("non-rigid input must be refused"),
        }
    }

    #[test]
    fn corrupted_certificate_fails_surjectivity() {
        let n = n3();
        let right = StableCategory::right(&n);
        let m = n3_exact_m(&n);
        let g = GammaAlgebra::new(&right, &m).unwrap();
        let c1 = star_membership(&right, &m, &s(&n, 0), SearchOptions::default()).unwrap();
        let mut c1 = c1.certificate().unwrap().clone();
        assert!(presentation_exactness_check(&right, &g, &c1).unwrap().passed());
        let t = c1.right.as_mut().unwrap();
        t.v = RepMor::zero(t.v.src(), t.v.tgt());
        let rep = presentation_exactness_check(&right, &g, &c1).unwrap();
        assert!(rep.failures.iter().any(|f| f.stage == "surjective"));
    }
}
