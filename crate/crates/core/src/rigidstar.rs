//! Rigidity, approximations, the hypotheses of the subquotient
//! equivalences, and membership in `M*ΣM` and `ΩM*M` with certificates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactla::{span_included, Mat, VectorEnumerator};
use crate::onesided::{
    induced_matrix, AddWitness, LeftTriangle, QuotHom, RightTriangle, Side, StableCategory, Subcat,
};
use crate::rep::{
    cokernel, decompose, direct_sum, ext1, is_iso, kernel, search_combinations, DirectSum,
    HomSpace, Rep, RepMor, Ses,
};

/// Bounds for the exhaustive searches of this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of coefficient vectors visited per hom-space.
    pub cap: u64,
    /// Maximum number of generator summands in fallback middle terms.
    pub summand_bound: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: crate::rep::DEFAULT_SEARCH_CAP,
            summand_bound: 2,
        }
    }
}

/// A nonzero entry of a rigidity table.
#[derive(Clone, Debug)]
pub struct RigidityWitness {
    pub pair: (usize, usize),
    pub dim: usize,
    /// A nonzero class: an `Ext^1` cocycle `ΩM_i -> M_j`, or a stably
    /// nonzero morphism.
    pub morphism: RepMor,
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub table: Vec<Vec<usize>>,
    pub witness: Option<RigidityWitness>,
}

impl RigidityReport {
    pub fn rigid(&self) -> bool {
        self.witness.is_none()
    }
}

/// `Ext^1(M_i, M_j)` for all generator pairs.
pub fn is_rigid_exact(m: &Subcat) -> Result<RigidityReport> {
    let g = m.generators();
    let mut table = vec![vec![0; g.len()]; g.len()];
    let mut witness = None;
    for (i, a) in g.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            let e = ext1(a, b)?;
            table[i][j] = e.dim;
            if e.dim > 0 && witness.is_none() {
                witness = Some(RigidityWitness {
                    pair: (i, j),
                    dim: e.dim,
                    morphism: e.cocycles[0].clone(),
                });
            }
        }
    }
    Ok(RigidityReport { table, witness })
}

/// Stable `Hom(M_i, ΣM_j)` on the right, `Hom(ΩM_i, M_j)` on the left.
pub fn is_rigid_stable(cat: &StableCategory, m: &Subcat) -> Result<RigidityReport> {
    let g = m.generators();
    let shifted: Vec<Rep> = g.iter().map(|x| cat.shift(x)).collect();
    let mut table = vec![vec![0; g.len()]; g.len()];
    let mut witness = None;
    for i in 0..g.len() {
        for j in 0..g.len() {
            let q = match cat.side() {
                Side::Right => cat.quot_hom(&g[i], &shifted[j])?,
                Side::Left => cat.quot_hom(&shifted[i], &g[j])?,
            };
            table[i][j] = q.dim();
            if q.dim() > 0 && witness.is_none() {
                witness = Some(RigidityWitness {
                    pair: (i, j),
                    dim: q.dim(),
                    morphism: q.representatives()[0].clone(),
                });
            }
        }
    }
    Ok(RigidityReport { table, witness })
}

pub fn is_rigid_right(cat: &StableCategory, m: &Subcat) -> Result<RigidityReport> {
    if cat.side() != Side::Right {
        return Err(Error::Precondition("right rigidity needs the right stable category".into()));
    }
    is_rigid_stable(cat, m)
}

pub fn is_rigid_left(cat: &StableCategory, m: &Subcat) -> Result<RigidityReport> {
    if cat.side() != Side::Left {
        return Err(Error::Precondition("left rigidity needs the left stable category".into()));
    }
    is_rigid_stable(cat, m)
}

/// An approximation `⊕ M_i^{n_i} -> X` (right) or `X -> ⊕ M_i^{n_i}`
/// (left), one summand per chosen basis morphism.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub sum: DirectSum,
    pub map: RepMor,
    /// Generator index and morphism for each summand, in order.
    pub components: Vec<(usize, RepMor)>,
}

impl Approximation {
    pub fn object(&self) -> &Rep {
        &self.sum.object
    }
}

fn assemble_right(x: &Rep, m: &Subcat, comps: Vec<(usize, RepMor)>) -> Approximation {
    let summands: Vec<Rep> = comps.iter().map(|(g, _)| m.generators()[*g].clone()).collect();
    let sum = direct_sum(x.alg(), &summands);
    let maps: Vec<RepMor> = comps.iter().map(|(_, f)| f.clone()).collect();
    let map = sum.cotuple(x, &maps);
    Approximation {
        sum,
        map,
        components: comps,
    }
}

fn assemble_left(x: &Rep, m: &Subcat, comps: Vec<(usize, RepMor)>) -> Approximation {
    let summands: Vec<Rep> = comps.iter().map(|(g, _)| m.generators()[*g].clone()).collect();
    let sum = direct_sum(x.alg(), &summands);
    let maps: Vec<RepMor> = comps.iter().map(|(_, f)| f.clone()).collect();
    let map = sum.tuple(x, &maps);
    Approximation {
        sum,
        map,
        components: comps,
    }
}

/// `⊕_i M_i^{dim Hom(M_i, X)} -> X` assembled from full hom bases.
pub fn right_approx(m: &Subcat, x: &Rep) -> Result<Approximation> {
    let mut comps = Vec::new();
    for (i, g) in m.generators().iter().enumerate() {
        for f in HomSpace::new(g, x)?.basis() {
            comps.push((i, f.clone()));
        }
    }
    Ok(assemble_right(x, m, comps))
}

/// `X -> ⊕_i M_i^{dim Hom(X, M_i)}` assembled from full hom bases.
pub fn left_approx(m: &Subcat, x: &Rep) -> Result<Approximation> {
    let mut comps = Vec::new();
    for (i, g) in m.generators().iter().enumerate() {
        for f in HomSpace::new(x, g)?.basis() {
            comps.push((i, f.clone()));
        }
    }
    Ok(assemble_left(x, m, comps))
}

/// Whether `f` lies in the span of the composites of the kept components
/// with all morphisms between generators.
fn redundant(m: &Subcat, comps: &[(usize, RepMor)], k: usize, right: bool) -> Result<bool> {
    let (gk, fk) = &comps[k];
    let space = HomSpace::new(fk.src(), fk.tgt())?;
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for (l, (gl, fl)) in comps.iter().enumerate() {
        if l == k {
            continue;
        }
        if right {
            for a in HomSpace::new(&m.generators()[*gk], &m.generators()[*gl])?.basis() {
                cols.push(space.coords(&fl.compose(a)));
            }
        } else {
            for a in HomSpace::new(&m.generators()[*gl], &m.generators()[*gk])?.basis() {
                cols.push(space.coords(&a.compose(fl)));
            }
        }
    }
    let field = fk.field();
    let span = Mat::from_columns(field, space.dim(), &cols);
    let v = Mat::column_vector(field, &space.coords(fk));
    Ok(span_included(&v, &span))
}

fn prune(m: &Subcat, mut comps: Vec<(usize, RepMor)>, right: bool) -> Result<Vec<(usize, RepMor)>> {
    let mut k = 0;
    while k < comps.len() {
        if redundant(m, &comps, k, right)? {
            comps.remove(k);
        } else {
            k += 1;
        }
    }
    Ok(comps)
}

/// [`right_approx`] with summands removed while the rest still generate.
pub fn minimal_right_approx(m: &Subcat, x: &Rep) -> Result<Approximation> {
    let full = right_approx(m, x)?;
    Ok(assemble_right(x, m, prune(m, full.components, true)?))
}

pub fn minimal_left_approx(m: &Subcat, x: &Rep) -> Result<Approximation> {
    let full = left_approx(m, x)?;
    Ok(assemble_left(x, m, prune(m, full.components, false)?))
}

/// Every morphism from a generator into `X` factors through the right
/// approximation.
pub fn right_approx_universal(m: &Subcat, a: &Approximation) -> Result<bool> {
    let x = a.map.tgt();
    for g in m.generators() {
        let space = HomSpace::new(g, a.object())?;
        for phi in HomSpace::new(g, x)?.basis() {
            if crate::rep::solve_in_hom(&space, |b| a.map.compose(b), phi)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn left_approx_universal(m: &Subcat, a: &Approximation) -> Result<bool> {
    let x = a.map.src();
    for g in m.generators() {
        let space = HomSpace::new(a.object(), g)?;
        for phi in HomSpace::new(x, g)?.basis() {
            if crate::rep::solve_in_hom(&space, |b| b.compose(&a.map), phi)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The shift on stable hom-spaces between one generator pair.
#[derive(Clone, Debug)]
pub struct ShiftMapEntry {
    pub pair: (usize, usize),
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub rank: usize,
    pub matrix: Mat,
}

impl ShiftMapEntry {
    pub fn bijective(&self) -> bool {
        self.rank == self.src_dim && self.rank == self.tgt_dim
    }
}

#[derive(Clone, Debug)]
pub struct FullyFaithfulReport {
    pub entries: Vec<ShiftMapEntry>,
}

impl FullyFaithfulReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(ShiftMapEntry::bijective)
    }
    pub fn first_failure(&self) -> Option<&ShiftMapEntry> {
        self.entries.iter().find(|e| !e.bijective())
    }
}

/// The shift restricted to the subcategory is fully faithful: the induced
/// map on stable hom-spaces is bijective for every generator pair.
pub fn check_shift_fully_faithful(cat: &StableCategory, m: &Subcat) -> Result<FullyFaithfulReport> {
    let g = m.generators();
    let shifted: Vec<Rep> = g.iter().map(|x| cat.shift(x)).collect();
    let mut entries = Vec::new();
    for i in 0..g.len() {
        for j in 0..g.len() {
            let src = cat.quot_hom(&g[i], &g[j])?;
            let tgt = cat.quot_hom(&shifted[i], &shifted[j])?;
            let mut cols = Vec::with_capacity(src.dim());
            for r in src.representatives() {
                cols.push(tgt.reduce(&cat.shift_mor(&r)?));
            }
            let matrix = Mat::from_columns(g[0].field(), tgt.dim(), &cols);
            entries.push(ShiftMapEntry {
                pair: (i, j),
                src_dim: src.dim(),
                tgt_dim: tgt.dim(),
                rank: matrix.rank(),
                matrix,
            });
        }
    }
    Ok(FullyFaithfulReport { entries })
}

pub fn check_shift_fully_faithful_right(cat: &StableCategory, m: &Subcat) -> Result<FullyFaithfulReport> {
    if cat.side() != Side::Right {
        return Err(Error::Precondition("the right shift check needs the right stable category".into()));
    }
    check_shift_fully_faithful(cat, m)
}

pub fn check_shift_fully_faithful_left(cat: &StableCategory, m: &Subcat) -> Result<FullyFaithfulReport> {
    if cat.side() != Side::Left {
        return Err(Error::Precondition("the left shift check needs the left stable category".into()));
    }
    check_shift_fully_faithful(cat, m)
}

/// Objects whose morphisms make up the presentation family: zero, each
/// generator, and the sum of all generators.
pub fn presentation_objects(m: &Subcat) -> Vec<Rep> {
    let g = m.generators();
    let Some(first) = g.first() else {
        return Vec::new();
    };
    let mut objs = vec![Rep::zero(first.alg())];
    objs.extend(g.iter().cloned());
    if g.len() > 1 {
        objs.push(direct_sum(first.alg(), g).object);
    }
    objs
}

/// A stable morphism between presentation objects.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub src: usize,
    pub tgt: usize,
    pub coset: Vec<u32>,
    pub map: RepMor,
}

/// All stable morphisms between presentation objects, or only the coset
/// basis where `p^dim` exceeds `cap` (then `sampled` is set).
pub fn presentation_family(
    cat: &StableCategory,
    m: &Subcat,
    cap: u64,
) -> Result<(Vec<Rep>, Vec<Presentation>, bool)> {
    let objs = presentation_objects(m);
    let mut family = Vec::new();
    let mut sampled = false;
    for (a, oa) in objs.iter().enumerate() {
        for (b, ob) in objs.iter().enumerate() {
            let q = cat.quot_hom(oa, ob)?;
            let field = oa.field();
            let vectors: Vec<Vec<u32>> = if field.count_vectors(q.dim(), cap).is_some() {
                VectorEnumerator::new(field, q.dim()).collect()
            } else {
                sampled = true;
                let mut vs = vec![vec![0; q.dim()]];
                for k in 0..q.dim() {
                    let mut e = vec![0; q.dim()];
                    e[k] = 1;
                    vs.push(e);
                }
                vs
            };
            for coset in vectors {
                let map = q.lift(&coset);
                family.push(Presentation {
                    src: a,
                    tgt: b,
                    coset,
                    map,
                });
            }
        }
    }
    Ok((objs, family, sampled))
}

#[derive(Clone, Debug)]
pub struct ConeApproxFailure {
    pub presentation: usize,
    pub generator: usize,
    pub witness: RepMor,
}

#[derive(Clone, Debug)]
pub struct ConeApproxReport {
    pub presentations: usize,
    pub sampled: bool,
    pub failures: Vec<ConeApproxFailure>,
}

impl ConeApproxReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every presentation `f: M0 -> M1` and its cone `M0 -> M1 -g-> X`,
/// composition with `g` maps stable `Hom(M, M1)` onto `Hom(M, X)` for
/// every generator `M`.
pub fn check_cone_approximation(cat: &StableCategory, m: &Subcat, cap: u64) -> Result<ConeApproxReport> {
    if cat.side() != Side::Right {
        return Err(Error::Precondition("the cone approximation check needs the right stable category".into()));
    }
    let (_, family, sampled) = presentation_family(cat, m, cap)?;
    let mut failures = Vec::new();
    for (pi, p) in family.iter().enumerate() {
        let t = cat.cone(&p.map)?;
        for (gi, g) in m.generators().iter().enumerate() {
            let q1 = cat.quot_hom(g, t.v.src())?;
            let qx = cat.quot_hom(g, t.v.tgt())?;
            let a = induced_matrix(&q1, &qx, |h| t.v.compose(h));
            if a.rank() < qx.dim() {
                failures.push(ConeApproxFailure {
                    presentation: pi,
                    generator: gi,
                    witness: outside_image(&a, &qx),
                });
            }
        }
    }
    Ok(ConeApproxReport {
        presentations: family.len(),
        sampled,
        failures,
    })
}

/// A representative of a unit coset outside the column span of `a`.
fn outside_image(a: &Mat, q: &QuotHom) -> RepMor {
    let field = a.field();
    for k in 0..q.dim() {
        let mut e = vec![0; q.dim()];
        e[k] = 1;
        let v = Mat::column_vector(field, &e);
        if !span_included(&v, a) {
            return q.lift(&e);
        }
    }
    RepMor::zero(q.src(), q.tgt())
}

/// Which argument produced a membership verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The object itself lies in the enlarged subcategory.
    Direct,
    /// From the universal approximation and its kernel or cokernel.
    Approximation,
    /// Bounded search over sequences with generator sums as middle terms.
    Exhaustive,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Approximation => "approximation",
            Route::Exhaustive => "exhaustive",
        }
    }
}

/// Membership in `M*ΣM` (right, from `0 -> M0 -> M1 -> X -> 0`) or in
/// `ΩM*M` (left, from `0 -> X -> M0 -> M1 -> 0`). The outer terms are
/// witnessed in `add` of the subcategory enlarged by the injectives
/// (right) or projectives (left), which are zero in the stable category.
#[derive(Clone, Debug)]
pub struct StarCertificate {
    pub side: Side,
    pub ses: Ses,
    pub right: Option<RightTriangle>,
    pub left: Option<LeftTriangle>,
    /// Witnesses for the two subcategory terms, in sequence order.
    pub outer: [AddWitness; 2],
    pub route: Route,
}

impl StarCertificate {
    /// The object certified.
    pub fn object(&self) -> &Rep {
        match self.side {
            Side::Right => self.ses.right(),
            Side::Left => self.ses.left(),
        }
    }

    /// `M0` and `M1` as in the defining triangle.
    pub fn m0(&self) -> &Rep {
        match self.side {
            Side::Right => self.ses.left(),
            Side::Left => self.ses.middle(),
        }
    }

    pub fn m1(&self) -> &Rep {
        match self.side {
            Side::Right => self.ses.middle(),
            Side::Left => self.ses.right(),
        }
    }

    /// Re-checks every part from scratch against the enlarged subcategory.
    pub fn validate(&self, cat: &StableCategory, enlarged: &Subcat) -> Result<bool> {
        if cat.side() != self.side || self.ses.validate().is_err() {
            return Ok(false);
        }
        let (a, b) = match self.side {
            Side::Right => (self.ses.left(), self.ses.middle()),
            Side::Left => (self.ses.middle(), self.ses.right()),
        };
        if !self.outer[0].validate(a, enlarged) || !self.outer[1].validate(b, enlarged) {
            return Ok(false);
        }
        match (self.side, &self.right, &self.left) {
            (Side::Right, Some(t), None) => {
                Ok(t.u == self.ses.mono && t.v == self.ses.epi && cat.validate_right(t)?.is_none())
            }
            (Side::Left, None, Some(t)) => {
                Ok(t.y == self.ses.mono && t.z == self.ses.epi && cat.validate_left(t)?.is_none())
            }
            _ => Ok(false),
        }
    }
}

#[derive(Clone, Debug)]
pub enum StarOutcome {
    Member(StarCertificate),
    NonMember { route: Route, reason: String },
}

impl StarOutcome {
    pub fn certificate(&self) -> Option<&StarCertificate> {
        match self {
            StarOutcome::Member(c) => Some(c),
            StarOutcome::NonMember { .. } => None,
        }
    }
}

/// `m` together with the injectives (right) or projectives (left).
pub fn enlarged(cat: &StableCategory, m: &Subcat) -> Subcat {
    m.union(cat.ideal())
}

fn certify(cat: &StableCategory, big: &Subcat, ses: Ses, route: Route) -> Result<Option<StarCertificate>> {
    let (a, b) = match cat.side() {
        Side::Right => (ses.left().clone(), ses.middle().clone()),
        Side::Left => (ses.middle().clone(), ses.right().clone()),
    };
    let (Some(wa), Some(wb)) = (big.membership(&a)?, big.membership(&b)?) else {
        return Ok(None);
    };
    let (right, left) = match cat.side() {
        Side::Right => (Some(cat.right_triangle_from_ses(&ses)?), None),
        Side::Left => (None, Some(cat.left_triangle_from_ses(&ses)?)),
    };
    Ok(Some(StarCertificate {
        side: cat.side(),
        ses,
        right,
        left,
        outer: [wa, wb],
        route,
    }))
}

/// Approximation first: the universal approximation is an epimorphism
/// (right) or monomorphism (left) exactly when some sequence exists. Its
/// kernel (cokernel) in the enlarged subcategory gives a certificate;
/// when the enlarged subcategory has no self-extensions, a pullback
/// (pushout) comparison shows any other sequence would force the same, so
/// the object is not a member. Otherwise a bounded search decides, and an
/// exhausted bound is reported as undecided.
pub fn star_membership(
    cat: &StableCategory,
    m: &Subcat,
    x: &Rep,
    opts: SearchOptions,
) -> Result<StarOutcome> {
    let big = enlarged(cat, m);
    let alg = x.alg();
    if big.contains(x)? {
        let zero = Rep::zero(alg);
        let ses = match cat.side() {
            Side::Right => Ses::new(RepMor::zero(&zero, x), RepMor::identity(x))?,
            Side::Left => Ses::new(RepMor::identity(x), RepMor::zero(x, &zero))?,
        };
        if let Some(c) = certify(cat, &big, ses, Route::Direct)? {
            return Ok(StarOutcome::Member(c));
        }
    }
    let ses = match cat.side() {
        Side::Right => {
            let a = right_approx(&big, x)?;
            if !a.map.is_epi() {
                return Ok(StarOutcome::NonMember {
                    route: Route::Approximation,
                    reason: "the universal approximation is not surjective".into(),
                });
            }
            let (_, k) = kernel(&a.map);
            Ses::new(k, a.map)?
        }
        Side::Left => {
            let a = left_approx(&big, x)?;
            if !a.map.is_mono() {
                return Ok(StarOutcome::NonMember {
                    route: Route::Approximation,
                    reason: "the universal approximation is not injective".into(),
                });
            }
            let (_, c) = cokernel(&a.map);
            Ses::new(a.map, c)?
        }
    };
    if let Some(c) = certify(cat, &big, ses, Route::Approximation)? {
        return Ok(StarOutcome::Member(c));
    }
    if is_rigid_exact(&big)?.rigid() {
        return Ok(StarOutcome::NonMember {
            route: Route::Approximation,
            reason: match cat.side() {
                Side::Right => "the kernel of the universal approximation is not in the subcategory".into(),
                Side::Left => "the cokernel of the universal approximation is not in the subcategory".into(),
            },
        });
    }
    exhaustive_membership(cat, &big, x, opts)
}

fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, n, max, &mut cur, &mut out);
    out
}

fn exhaustive_membership(
    cat: &StableCategory,
    big: &Subcat,
    x: &Rep,
    opts: SearchOptions,
) -> Result<StarOutcome> {
    let alg = x.alg();
    let mut complete = true;
    for ms in multisets(big.generators().len(), opts.summand_bound) {
        let parts: Vec<Rep> = ms.iter().map(|&i| big.generators()[i].clone()).collect();
        let mid = direct_sum(alg, &parts).object;
        let space = match cat.side() {
            Side::Right => HomSpace::new(&mid, x)?,
            Side::Left => HomSpace::new(x, &mid)?,
        };
        let mut err = None;
        let (exhaustive, hit) = search_combinations(x.field(), space.dim(), opts.cap, |c| {
            let f = space.element(c);
            let ses = match cat.side() {
                Side::Right if f.is_epi() => Ses::new(kernel(&f).1, f),
                Side::Left if f.is_mono() => Ses::new(f.clone(), cokernel(&f).1),
                _ => return None,
            };
            match ses.and_then(|s| certify(cat, big, s, Route::Exhaustive)) {
                Ok(c) => c,
                Err(e) => {
                    err = Some(e);
                    None
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(c) = hit {
            return Ok(StarOutcome::Member(c));
        }
        complete &= exhaustive;
    }
    Err(Error::Undecided {
        what: "star membership",
        needed: if complete {
            format!("middle terms with more than {} summands", opts.summand_bound)
        } else {
            "more candidate maps".into()
        },
        cap: opts.cap,
    })
}

#[derive(Clone, Debug)]
pub struct FactorizationFailure {
    pub certificate: usize,
    pub target: usize,
    pub witness: RepMor,
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub cases: usize,
    pub failures: Vec<FactorizationFailure>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each left certificate `ΩM1 -f-> X -g-> M0 -> M1` and each `Y` of
/// the star universe, every stable `t: X -> Y` with `tf = 0` factors
/// through `g`. A complete linear check.
pub fn check_factorization(
    cat: &StableCategory,
    certs: &[StarCertificate],
    star_universe: &[Rep],
) -> Result<FactorizationReport> {
    if cat.side() != Side::Left {
        return Err(Error::Precondition("the factorization check needs the left stable category".into()));
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for (ci, c) in certs.iter().enumerate() {
        let t = c
            .left
            .as_ref()
            .ok_or_else(|| Error::Precondition("the factorization check needs left certificates".into()))?;
        let (f, g) = (&t.x, &t.y);
        for (yi, y) in star_universe.iter().enumerate() {
            cases += 1;
            let qx = cat.quot_hom(f.tgt(), y)?;
            let qo = cat.quot_hom(f.src(), y)?;
            let qm = cat.quot_hom(g.tgt(), y)?;
            let by_f = induced_matrix(&qx, &qo, |s| s.compose(f));
            let by_g = induced_matrix(&qm, &qx, |s| s.compose(g));
            let ker = by_f.kernel_basis();
            if !span_included(&ker, &by_g) {
                let field = y.field();
                let bad = (0..ker.cols())
                    .find(|&k| !span_included(&Mat::column_vector(field, &ker.column(k)), &by_g))
                    .unwrap_or(0);
                failures.push(FactorizationFailure {
                    certificate: ci,
                    target: yi,
                    witness: qx.lift(&ker.column(bad)),
                });
            }
        }
    }
    Ok(FactorizationReport { cases, failures })
}

/// Isomorphism in the stable category: decompose both sides, drop the
/// indecomposables that are zero in the quotient, and match the rest.
pub fn stably_isomorphic(cat: &StableCategory, x: &Rep, y: &Rep, cap: u64) -> Result<bool> {
    let keep = |r: &Rep| -> Result<Vec<(Rep, usize)>> {
        let mut out = Vec::new();
        for (ind, mult) in decompose(r, cap)? {
            if !cat.ideal().contains(&ind)? {
                out.push((ind, mult));
            }
        }
        Ok(out)
    };
    let (a, b) = (keep(x)?, keep(y)?);
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    'outer: for (ra, ma) in &a {
        for (k, (rb, mb)) in b.iter().enumerate() {
            if !used[k] && ma == mb && is_iso(ra, rb, cap)?.is_some() {
                used[k] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Index of a presentation whose cone (right) or fiber (left) has an
/// object stably isomorphic to `x` in the certified slot.
pub fn stable_star_membership(
    cat: &StableCategory,
    m: &Subcat,
    x: &Rep,
    opts: SearchOptions,
) -> Result<Option<usize>> {
    let (_, family, _) = presentation_family(cat, m, opts.cap)?;
    for (k, p) in family.iter().enumerate() {
        let obj = match cat.side() {
            Side::Right => cat.cone(&p.map)?.v.tgt().clone(),
            Side::Left => cat.fiber(&p.map)?.y.src().clone(),
        };
        if stably_isomorphic(cat, &obj, x, opts.cap)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, n3};
    use crate::algebra::{all_projectives, proj, simple, BoundAlgebra};
    use alloc::sync::Arc;

    fn s(alg: &Arc<BoundAlgebra>, i: usize) -> Rep {
        simple(alg, i).unwrap()
    }

    fn n3_exact_m(n: &Arc<BoundAlgebra>) -> Subcat {
        let mut g = all_projectives(n);
        g.push(s(n, 0));
        Subcat::new(g).unwrap()
    }

    #[test]
    fn rigidity_examples() {
        let n = n3();
        assert!(is_rigid_exact(&Subcat::projectives(&n)).unwrap().rigid());
        assert!(is_rigid_exact(&n3_exact_m(&n)).unwrap().rigid());
        let a = a2();
        let bad = is_rigid_exact(&Subcat::new(vec![s(&a, 0), s(&a, 1)]).unwrap()).unwrap();
        let w = bad.witness.unwrap();
        assert_eq!(w.pair, (0, 1));
        assert_eq!(w.dim, 1);

        let right = StableCategory::right(&n);
        assert!(is_rigid_right(&right, &Subcat::injectives(&n)).unwrap().rigid());
        assert!(is_rigid_right(&right, &Subcat::new(vec![s(&n, 0)]).unwrap()).unwrap().rigid());
        let two = is_rigid_right(&right, &Subcat::new(vec![s(&n, 0), s(&n, 1)]).unwrap()).unwrap();
        assert_eq!(two.table.len(), 2);
        assert!(!two.rigid());
    }

    #[test]
    fn approximations() {
        let n = n3();
        let m = n3_exact_m(&n);
        let a = right_approx(&m, &s(&n, 2)).unwrap();
        assert!(a.map.is_epi());
        assert!(right_approx_universal(&m, &a).unwrap());
        let min = minimal_right_approx(&m, &s(&n, 2)).unwrap();
        assert!(right_approx_universal(&m, &min).unwrap());
        assert!(min.object().total_dim() <= a.object().total_dim());

        let only_s1 = Subcat::new(vec![s(&n, 0)]).unwrap();
        let z = right_approx(&only_s1, &s(&n, 1)).unwrap();
        assert!(z.object().is_zero());

        let l = left_approx(&m, &s(&n, 1)).unwrap();
        assert!(l.map.is_mono());
        assert!(left_approx_universal(&m, &l).unwrap());

        let x = s(&n, 0);
        let split = right_approx(&m, &x).unwrap();
        let space = HomSpace::new(&x, split.object()).unwrap();
        assert!(crate::rep::solve_in_hom(&space, |b| split.map.compose(b), &RepMor::identity(&x))
            .unwrap()
            .is_some());
    }

    #[test]
    fn shift_fully_faithful_both_sides() {
        let n = n3();
        let right = StableCategory::right(&n);
        let left = StableCategory::left(&n);
        for m in [n3_exact_m(&n), Subcat::new(vec![s(&n, 0), s(&n, 1)]).unwrap()] {
            assert!(check_shift_fully_faithful_right(&right, &m).unwrap().passed());
            assert!(check_shift_fully_faithful_left(&left, &m).unwrap().passed());
        }
        assert!(check_shift_fully_faithful_right(&right, &Subcat::injectives(&n)).unwrap().passed());
    }

    #[test]
    fn cone_approximation_on_n3() {
        let n = n3();
        let right = StableCategory::right(&n);
        let r = check_cone_approximation(&right, &Subcat::new(vec![s(&n, 0)]).unwrap(), 4096).unwrap();
        assert!(r.passed());
        assert!(!r.sampled);
        assert!(r.presentations >= 4);
    }

    #[test]
    fn star_membership_right_exact() {
        let n = n3();
        let right = StableCategory::right(&n);
        let m = n3_exact_m(&n);
        let big = enlarged(&right, &m);
        let opts = SearchOptions::default();
        let s3 = star_membership(&right, &m, &s(&n, 2), opts).unwrap();
        let c = s3.certificate().expect("S3 is a member");
        assert!(c.validate(&right, &big).unwrap());
        assert_eq!(c.route, Route::Approximation);
        let s2 = star_membership(&right, &m, &s(&n, 1), opts).unwrap();
        assert!(s2.certificate().is_none());
        let s1 = star_membership(&right, &m, &s(&n, 0), opts).unwrap();
        assert_eq!(s1.certificate().unwrap().route, Route::Direct);
        assert!(s1.certificate().unwrap().m0().is_zero());
    }

    #[test]
    fn star_membership_left_exact() {
        let n = n3();
        let left = StableCategory::left(&n);
        let m = n3_exact_m(&n);
        let big = enlarged(&left, &m);
        let opts = SearchOptions::default();
        let c = star_membership(&left, &m, &s(&n, 1), opts).unwrap();
        assert!(c.certificate().unwrap().validate(&left, &big).unwrap());
        assert!(star_membership(&left, &m, &s(&n, 2), opts).unwrap().certificate().is_none());
    }

    #[test]
    fn stable_and_exact_membership_agree() {
        let n = n3();
        let opts = SearchOptions::default();
        let m = Subcat::new(vec![s(&n, 0)]).unwrap();
        for st in [StableCategory::right(&n), StableCategory::left(&n)] {
            for i in 0..3 {
                let x = s(&n, i);
                let exact = star_membership(&st, &m, &x, opts).unwrap().certificate().is_some();
                let stable = stable_star_membership(&st, &m, &x, opts).unwrap().is_some();
                assert_eq!(exact, stable, "side {:?} vertex {}", st.side(), i);
            }
        }
    }

    #[test]
    fn factorization_on_n3() {
        let n = n3();
        let left = StableCategory::left(&n);
        let m = n3_exact_m(&n);
        let opts = SearchOptions::default();
        let universe: Vec<Rep> = (0..3).map(|i| s(&n, i)).chain((0..3).map(|i| proj(&n, i).unwrap())).collect();
        let mut certs = Vec::new();
        let mut star = Vec::new();
        for x in &universe {
            if let StarOutcome::Member(c) = star_membership(&left, &m, x, opts).unwrap() {
                certs.push(c);
                star.push(x.clone());
            }
        }
        assert!(check_factorization(&left, &certs, &star).unwrap().passed());
    }

    #[test]
    fn monotone_in_the_subcategory() {
        let n = n3();
        let right = StableCategory::right(&n);
        let opts = SearchOptions::default();
        let small = Subcat::new(vec![s(&n, 0)]).unwrap();
        let large = n3_exact_m(&n);
        for i in 0..3 {
            let x = s(&n, i);
            let a = star_membership(&right, &small, &x, opts).unwrap().certificate().is_some();
            let b = star_membership(&right, &large, &x, opts).unwrap().certificate().is_some();
            assert!(!a || b);
        }
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(2, 2), vec![vec![0], vec![0, 0], vec![0, 1], vec![1], vec![1, 1]]);
        assert!(multisets(0, 2).is_empty());
    }
}
