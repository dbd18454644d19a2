//! Runs the tasks of a scenario and collects their results into a report.

use quotcat_core::fpmod::{
    exact_setting_steps, kernel_ideal, presentation_exactness_check, verify_equivalence_left,
    verify_equivalence_right, EquivalenceOutcome, EquivalenceReport, GammaAlgebra,
};
use quotcat_core::onesided::iterated_quotient_check;
use quotcat_core::rep::hom_basis;
use quotcat_core::rigidstar::{
    enlarged, is_rigid_exact, is_rigid_stable, stably_isomorphic, star_membership, RigidityReport, SearchOptions,
    StarOutcome,
};
use quotcat_core::{Error as CoreError, Rep, Side, StableCategory, Subcat};

use crate::build::{build_world, World};
use crate::dsl::{Scenario, SideSpec, Task};
use crate::error::{CliError, Result};
use crate::report::{DimTable, ModuleSummary, Report, ScenarioSummary, Stage, Verdict};

/// Default number of morphisms whose triangles are checked per side.
pub const DEFAULT_TRIANGLE_CAP: usize = 48;

#[derive(Clone, Debug)]
pub struct Options {
    /// Overrides the tasks listed in the scenario when nonempty.
    pub tasks: Vec<Task>,
    pub search: SearchOptions,
    pub triangle_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tasks: Vec::new(),
            search: SearchOptions::default(),
            triangle_cap: DEFAULT_TRIANGLE_CAP,
        }
    }
}

/// Undecided core results become `Ok(Err(message))`; other errors propagate.
fn soft<T>(stage: &'static str, r: quotcat_core::Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ CoreError::Undecided { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(CliError::Core { stage, source: e }),
    }
}

fn sides(s: SideSpec) -> Vec<Side> {
    match s {
        SideSpec::Right => vec![Side::Right],
        SideSpec::Left => vec![Side::Left],
        SideSpec::Both => vec![Side::Right, Side::Left],
    }
}

fn needs_subcat(t: Task) -> bool {
    matches!(t, Task::Rigid | Task::Star | Task::VerifyRight | Task::VerifyLeft)
}

/// The tasks to run, in dependency order.
pub fn planned_tasks(s: &Scenario, opts: &Options) -> Result<Vec<Task>> {
    let explicit = if opts.tasks.is_empty() { &s.tasks } else { &opts.tasks };
    let chosen: Vec<Task> = if explicit.is_empty() {
        Task::ALL
            .into_iter()
            .filter(|&t| !needs_subcat(t) || s.subcat.is_some())
            .filter(|&t| match t {
                Task::VerifyRight => s.side != SideSpec::Left,
                Task::VerifyLeft => s.side != SideSpec::Right,
                _ => true,
            })
            .collect()
    } else {
        explicit.clone()
    };
    if s.subcat.is_none() {
        if let Some(t) = chosen.iter().find(|&&t| needs_subcat(t)) {
            return Err(CliError::Scenario(format!(
                "task `{}` needs a `subcat` declaration",
                t.name()
            )));
        }
    }
    Ok(Task::ALL.into_iter().filter(|t| chosen.contains(t)).collect())
}

struct Ctx<'a> {
    world: &'a World,
    opts: &'a Options,
    universe: Vec<Rep>,
    names: Vec<String>,
    provenance: Vec<String>,
}

impl Ctx<'_> {
    fn m(&self) -> &Subcat {
        &self.world.subcat.as_ref().expect("checked by planned_tasks").2
    }

    fn m_names(&self) -> &[String] {
        &self.world.subcat.as_ref().expect("checked by planned_tasks").1
    }

    fn names_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.names[i].clone()).collect()
    }
}

fn table(rows: Vec<String>, cols: Vec<String>, values: Vec<Vec<usize>>) -> DimTable {
    DimTable { rows, cols, values }
}

fn shift_name(side: Side) -> &'static str {
    match side {
        Side::Right => "Σ",
        Side::Left => "Ω",
    }
}

fn stable_pair_text(side: Side, a: &str, b: &str) -> String {
    match side {
        Side::Right => format!("stable Hom({a}, Σ{b})"),
        Side::Left => format!("stable Hom(Ω{a}, {b})"),
    }
}

fn rigidity_witnesses(st: &mut Stage, names: &[String], exact: &RigidityReport, stable: Option<(Side, &RigidityReport)>) {
    if let Some(w) = &exact.witness {
        let (i, j) = w.pair;
        st.witness(
            "ext1",
            format!("Ext^1({}, {}) has dimension {}", names[i], names[j], w.dim),
        );
    }
    if let Some((side, r)) = stable {
        if let Some(w) = &r.witness {
            let (i, j) = w.pair;
            st.witness(
                format!("stable-{}", side.name()),
                format!("{} has dimension {}", stable_pair_text(side, &names[i], &names[j]), w.dim),
            );
        }
    }
}

fn rigid_stage(ctx: &Ctx, sides: &[Side]) -> Result<Stage> {
    let m = ctx.m();
    let names = ctx.m_names().to_vec();
    let mut st = Stage::new("rigid");
    let exact = is_rigid_exact(m).map_err(CliError::core("rigid"))?;
    st.check(
        "exact",
        Verdict::of(exact.rigid()),
        names.len() * names.len(),
        "Ext^1 vanishes between all generators",
    );
    st.dims.insert("ext1".into(), table(names.clone(), names.clone(), exact.table.clone()));
    rigidity_witnesses(&mut st, &names, &exact, None);
    let alg = ctx.world.alg.clone();
    for &side in sides {
        let cat = StableCategory::new(&alg, side);
        let r = is_rigid_stable(&cat, m).map_err(CliError::core("rigid"))?;
        st.check(
            format!("stable-{}", side.name()),
            Verdict::of(r.rigid()),
            names.len() * names.len(),
            format!("{} vanishes between all generators", stable_pair_text(side, "M_i", "M_j")),
        );
        st.dims.insert(format!("stable-{}", side.name()), table(names.clone(), names.clone(), r.table.clone()));
        rigidity_witnesses(&mut st, &names, &RigidityReport { table: Vec::new(), witness: None }, Some((side, &r)));
    }
    st.summary = if st.verdict == Verdict::Pass {
        format!("add({}) is rigid", names.join(", "))
    } else {
        format!("add({}) is not rigid", names.join(", "))
    };
    Ok(st)
}

fn axioms_stage(ctx: &Ctx, side: Side) -> Result<Stage> {
    let cat = StableCategory::new(&ctx.world.alg, side);
    let mut st = Stage::new(format!("axioms:{}", side.name()));
    let u = &ctx.universe;

    let (cases, fail) = cat.functoriality_check(u).map_err(CliError::core("axioms"))?;
    st.check(
        "functoriality",
        Verdict::of(fail.is_none()),
        cases,
        match fail {
            Some((i, j, k)) => format!("composition fails on {} -> {} -> {}", ctx.names[i], ctx.names[j], ctx.names[k]),
            None => "composition respects stable classes".into(),
        },
    );
    let qc = cat.quot_category(u.to_vec()).map_err(CliError::core("axioms"))?;
    let absorb = qc.check_absorption();
    st.check(
        "absorption",
        Verdict::of(absorb.is_none()),
        u.len().pow(3),
        match absorb {
            Some((i, j, k)) => format!("ideal not absorbed on {} -> {} -> {}", ctx.names[i], ctx.names[j], ctx.names[k]),
            None => "the ideal is closed under composition".into(),
        },
    );

    let (build, exact_name) = match side {
        Side::Right => ("cone", "pseudocokernel"),
        Side::Left => ("fiber", "pseudokernel"),
    };
    let mut valid = (0usize, Vec::new());
    let mut exact = (0usize, Vec::new());
    let mut rot = (0usize, Vec::new());
    let mut checked = 0usize;
    'outer: for (i, x) in u.iter().enumerate() {
        for (j, y) in u.iter().enumerate() {
            for (k, f) in hom_basis(x, y).map_err(CliError::core("axioms"))?.iter().enumerate() {
                if checked == ctx.opts.triangle_cap {
                    break 'outer;
                }
                checked += 1;
                let label = format!("basis map {k} of Hom({}, {})", ctx.names[i], ctx.names[j]);
                let e = CliError::core("axioms");
                let (bad, ex, rbad, rex) = match side {
                    Side::Right => {
                        let t = cat.cone(f).map_err(e)?;
                        let bad = cat.validate_right(&t).map_err(CliError::core("axioms"))?;
                        let ex = cat.pseudocokernel_check(&t, u).map_err(CliError::core("axioms"))?;
                        let r = cat.rotate_right(&t).map_err(CliError::core("axioms"))?;
                        let rbad = cat.validate_right(&r).map_err(CliError::core("axioms"))?;
                        let rex = cat.pseudocokernel_check(&r, u).map_err(CliError::core("axioms"))?;
                        (bad, ex, rbad, rex)
                    }
                    Side::Left => {
                        let t = cat.fiber(f).map_err(e)?;
                        let bad = cat.validate_left(&t).map_err(CliError::core("axioms"))?;
                        let ex = cat.pseudokernel_check(&t, u).map_err(CliError::core("axioms"))?;
                        let r = cat.rotate_left(&t).map_err(CliError::core("axioms"))?;
                        let rbad = cat.validate_left(&r).map_err(CliError::core("axioms"))?;
                        let rex = cat.pseudokernel_check(&r, u).map_err(CliError::core("axioms"))?;
                        (bad, ex, rbad, rex)
                    }
                };
                valid.0 += 1;
                if let Some(msg) = bad {
                    valid.1.push(format!("{label}: {msg}"));
                }
                exact.0 += ex.cases;
                if let Some(fl) = ex.failures.first() {
                    exact.1.push(format!("{label}: fails at {} on {}", fl.position, ctx.names[fl.object]));
                }
                rot.0 += 1 + rex.cases;
                if let Some(msg) = rbad {
                    rot.1.push(format!("{label}: rotation {msg}"));
                }
                if let Some(fl) = rex.failures.first() {
                    rot.1.push(format!("{label}: rotation fails at {} on {}", fl.position, ctx.names[fl.object]));
                }
            }
        }
    }
    for (name, (cases, fails)) in [
        (format!("{build}-triangles"), valid),
        (exact_name.to_string(), exact),
        ("rotation".to_string(), rot),
    ] {
        let detail = match fails.first() {
            Some(f) => f.clone(),
            None => format!("{checked} morphisms"),
        };
        for f in &fails {
            st.witness(name.clone(), f.clone());
        }
        st.check(name, Verdict::of(fails.is_empty()), cases, detail);
    }
    st.summary = format!(
        "{} {} triangles over {} objects",
        checked,
        side.name(),
        u.len()
    );
    Ok(st)
}

fn star_stage(ctx: &Ctx, side: Side) -> Result<Stage> {
    let cat = StableCategory::new(&ctx.world.alg, side);
    let m = ctx.m();
    let big = enlarged(&cat, m);
    let gamma = GammaAlgebra::new(&cat, m).map_err(CliError::core("star"))?;
    let mut st = Stage::new(format!("star:{}", side.name()));
    let (mut members, mut non, mut undecided) = (Vec::new(), Vec::new(), Vec::new());
    let (mut cert_bad, mut pres_bad, mut tri_bad) = (Vec::new(), Vec::new(), Vec::new());
    let mut tri_cases = 0;
    for (i, x) in ctx.universe.iter().enumerate() {
        let name = &ctx.names[i];
        match soft("star", star_membership(&cat, m, x, ctx.opts.search))? {
            Ok(StarOutcome::Member(c)) => {
                members.push(name.clone());
                let seq = match side {
                    Side::Right => format!(
                        "0 -> {} -> {} -> {name} -> 0",
                        c.ses.left().dims_string(),
                        c.ses.middle().dims_string()
                    ),
                    Side::Left => format!(
                        "0 -> {name} -> {} -> {} -> 0",
                        c.ses.middle().dims_string(),
                        c.ses.right().dims_string()
                    ),
                };
                st.witness("member", format!("{name}: {seq} ({} route)", c.route.name()));
                if !c.validate(&cat, &big).map_err(CliError::core("star"))? {
                    cert_bad.push(name.clone());
                }
                let p = presentation_exactness_check(&cat, &gamma, &c).map_err(CliError::core("star"))?;
                if let Some(f) = p.failures.first() {
                    pres_bad.push(format!("{name}: {} at generator {}", f.stage, ctx.m_names()[f.generator]));
                }
                let rep = match side {
                    Side::Right => cat.pseudocokernel_check(c.right.as_ref().expect("right certificate"), &ctx.universe),
                    Side::Left => cat.pseudokernel_check(c.left.as_ref().expect("left certificate"), &ctx.universe),
                }
                .map_err(CliError::core("star"))?;
                tri_cases += rep.cases;
                if let Some(f) = rep.failures.first() {
                    tri_bad.push(format!("{name}: fails at {} on {}", f.position, ctx.names[f.object]));
                }
            }
            Ok(StarOutcome::NonMember { route, reason }) => {
                st.witness("non-member", format!("{name}: {reason} ({} route)", route.name()));
                non.push(name.clone());
            }
            Err(msg) => {
                st.witness("undecided", format!("{name}: {msg}"));
                undecided.push(name.clone());
            }
        }
    }
    let total = ctx.universe.len();
    st.check(
        "membership",
        if undecided.is_empty() { Verdict::Pass } else { Verdict::Undecided },
        total,
        format!("{} members, {} non-members, {} undecided", members.len(), non.len(), undecided.len()),
    );
    for (name, cases, bad) in [
        ("certificates", members.len(), cert_bad),
        ("presentation-exactness", members.len(), pres_bad),
        ("triangle-exactness", tri_cases, tri_bad),
    ] {
        let detail = bad.first().cloned().unwrap_or_else(|| "all certificates".into());
        st.check(name, Verdict::of(bad.is_empty()), cases, detail);
    }
    let star = match side {
        Side::Right => format!("M*{}M", shift_name(side)),
        Side::Left => format!("{}M*M", shift_name(side)),
    };
    st.summary = format!(
        "{star} on the universe: members [{}]; non-members [{}]",
        members.join(", "),
        non.join(", ")
    );
    if !undecided.is_empty() {
        st.summary.push_str(&format!("; undecided [{}]", undecided.join(", ")));
    }
    Ok(st)
}

/// What a verify stage concluded, used for the overall line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Claim {
    Refused,
    Confirmed { zero: bool },
    NotConfirmed,
    Undecided,
}

fn verify_stage(ctx: &Ctx, side: Side) -> Result<(Stage, Claim)> {
    let cat = StableCategory::new(&ctx.world.alg, side);
    let m = ctx.m();
    let task = match side {
        Side::Right => Task::VerifyRight,
        Side::Left => Task::VerifyLeft,
    };
    let mut st = Stage::new(task.name());
    let outcome = match side {
        Side::Right => verify_equivalence_right(&cat, m, &ctx.universe, ctx.opts.search),
        Side::Left => verify_equivalence_left(&cat, m, &ctx.universe, ctx.opts.search),
    };
    let outcome = match soft("verify", outcome)? {
        Ok(o) => o,
        Err(msg) => {
            st.check("verification", Verdict::Undecided, 0, msg.clone());
            st.summary = "UNDECIDED".into();
            return Ok((st, Claim::Undecided));
        }
    };
    let r = match outcome {
        EquivalenceOutcome::Refused { exact, stable } => {
            let names = ctx.m_names().to_vec();
            st.check("exact-rigidity", Verdict::of(exact.rigid()), names.len().pow(2), "Ext^1 between generators");
            st.check(
                "stable-rigidity",
                Verdict::of(stable.rigid()),
                names.len().pow(2),
                stable_pair_text(side, "M_i", "M_j"),
            );
            rigidity_witnesses(&mut st, &names, &exact, Some((side, &stable)));
            st.summary = "REFUSED(rigidity): the subcategory is not rigid, so no equivalence is claimed".into();
            return Ok((st, Claim::Refused));
        }
        EquivalenceOutcome::Checked(r) => r,
    };
    fill_verify(ctx, &cat, &mut st, &r)?;
    match soft("verify", exact_setting_steps(&cat, m, &ctx.universe, ctx.opts.search))? {
        Ok(Some(steps)) => {
            for s in steps {
                st.check(format!("exact:{}", s.name), Verdict::of(s.passed), 1, s.detail);
            }
        }
        Ok(None) => {}
        Err(msg) => st.check("exact-setting", Verdict::Undecided, 0, msg),
    }
    let zero = r.gamma_dim == 0 && r.nonzero.is_empty();
    let claim = if r.undecided() {
        Claim::Undecided
    } else if r.confirmed() && st.verdict == Verdict::Pass {
        Claim::Confirmed { zero }
    } else {
        Claim::NotConfirmed
    };
    st.summary = match claim {
        Claim::Confirmed { zero: true } => "CONFIRMED(zero categories)".into(),
        Claim::Confirmed { zero: false } => format!("CONFIRMED: dim Γ = {}", r.gamma_dim),
        Claim::Undecided => "UNDECIDED".into(),
        _ => "NOT CONFIRMED".into(),
    };
    if claim == Claim::Undecided && st.verdict == Verdict::Pass {
        st.verdict = Verdict::Undecided;
    }
    Ok((st, claim))
}

fn fill_verify(ctx: &Ctx, cat: &StableCategory, st: &mut Stage, r: &EquivalenceReport) -> Result<()> {
    let side = cat.side();
    let ff = &r.shift_fully_faithful;
    let gens = ctx.m_names();
    st.check(
        "shift-fully-faithful",
        Verdict::of(ff.passed()),
        ff.entries.len(),
        match ff.first_failure() {
            Some(e) => format!(
                "{} on ({}, {}): rank {} between dimensions {} and {}",
                shift_name(side),
                gens[e.pair.0],
                gens[e.pair.1],
                e.rank,
                e.src_dim,
                e.tgt_dim
            ),
            None => format!("{} is bijective on stable Hom between generators", shift_name(side)),
        },
    );
    if let Some(c) = &r.cone_approx {
        st.check(
            "cone-approximation",
            Verdict::of(c.passed()),
            c.presentations,
            match c.failures.first() {
                Some(f) => format!("presentation {} fails against {}", f.presentation, gens[f.generator]),
                None if c.sampled => format!("{} presentations (sampled)", c.presentations),
                None => format!("{} presentations", c.presentations),
            },
        );
    }
    if let Some(f) = &r.factorization {
        st.check(
            "factorization",
            Verdict::of(f.passed()),
            f.cases,
            match f.failures.first() {
                Some(x) => format!("certificate {} against target {}", x.certificate, x.target),
                None => "every map from a kernel term factors".into(),
            },
        );
    }
    let undecided: Vec<usize> = r.membership.iter().filter(|e| e.member.is_none()).map(|e| e.object).collect();
    st.check(
        "star-membership",
        if undecided.is_empty() { Verdict::Pass } else { Verdict::Undecided },
        r.membership.len(),
        if undecided.is_empty() {
            format!("members [{}]", ctx.names_of(&r.star).join(", "))
        } else {
            format!("undecided [{}]", ctx.names_of(&undecided).join(", "))
        },
    );
    let bad_pres = r.exactness.iter().filter(|p| !p.passed()).count();
    st.check(
        "presentation-exactness",
        Verdict::of(bad_pres == 0),
        r.exactness.len(),
        format!("{bad_pres} failing certificates"),
    );
    st.check(
        "dense",
        Verdict::of(r.dense.passed()),
        r.dense.presentations,
        format!(
            "{} presentations{}, {} failures, {} Yoneda failures",
            r.dense.presentations,
            if r.dense.sampled { " (sampled)" } else { "" },
            r.dense.failures.len(),
            r.dense.yoneda_failures.len()
        ),
    );
    let pair_text = |v: &[(usize, usize)]| match v.first() {
        Some(&(i, j)) => format!("fails on ({}, {})", ctx.names[i], ctx.names[j]),
        None => format!("{} pairs", r.pairs),
    };
    st.check("full", Verdict::of(r.full_passed()), r.pairs, pair_text(&r.full_failures));
    st.check("kernel", Verdict::of(r.kernel_passed()), r.pairs, pair_text(&r.kernel_failures));

    let nz = ctx.names_of(&r.nonzero);
    let quot: Vec<Vec<usize>> = r.table.iter().map(|row| row.iter().map(|p| p.quotient).collect()).collect();
    let mods: Vec<Vec<usize>> = r.table.iter().map(|row| row.iter().map(|p| p.modules).collect()).collect();
    st.dims.insert("quotient".into(), table(nz.clone(), nz.clone(), quot));
    st.dims.insert("modules".into(), table(nz.clone(), nz.clone(), mods));
    st.witness("gamma", format!("dim Γ = {}", r.gamma_dim));
    st.witness("star", format!("[{}]", ctx.names_of(&r.star).join(", ")));
    st.witness("nonzero", format!("[{}]", nz.join(", ")));
    if side == Side::Left {
        for &x in &r.nonzero {
            for (g, gen) in ctx.m().generators().iter().enumerate() {
                let shifted = cat.shift(gen);
                if let Ok(Ok(true)) = soft("verify", stably_isomorphic(cat, &shifted, &ctx.universe[x], ctx.opts.search.cap)) {
                    st.witness("shift", format!("{} ≅ Ω{} stably", ctx.names[x], gens[g]));
                }
            }
        }
    }
    Ok(())
}

fn quotient_dims_stage(ctx: &Ctx, side: Side) -> Result<Stage> {
    let cat = StableCategory::new(&ctx.world.alg, side);
    let mut st = Stage::new(format!("quotient-dims:{}", side.name()));
    let qc = cat.quot_category(ctx.universe.clone()).map_err(CliError::core("quotient-dims"))?;
    st.dims.insert("stable".into(), table(ctx.names.clone(), ctx.names.clone(), qc.dims_table()));
    if let Some((_, _, m)) = &ctx.world.subcat {
        let b = kernel_ideal(&cat, m);
        let rep = iterated_quotient_check(&ctx.universe, &b, cat.ideal()).map_err(CliError::core("quotient-dims"))?;
        let n = ctx.universe.len();
        let mut it = vec![vec![0; n]; n];
        let mut direct = vec![vec![0; n]; n];
        for e in &rep.entries {
            it[e.src][e.tgt] = e.iterated;
            direct[e.src][e.tgt] = e.direct;
        }
        let bad = rep.entries.iter().find(|e| e.iterated != e.direct || !e.canonical_bijective);
        st.check(
            "iterated-quotient",
            Verdict::of(rep.passed()),
            rep.entries.len(),
            match bad {
                Some(e) => format!("({}, {}): iterated {} vs direct {}", ctx.names[e.src], ctx.names[e.tgt], e.iterated, e.direct),
                None => "quotienting in two steps agrees with the direct quotient".into(),
            },
        );
        st.dims.insert("iterated".into(), table(ctx.names.clone(), ctx.names.clone(), it));
        st.dims.insert("direct".into(), table(ctx.names.clone(), ctx.names.clone(), direct));
    }
    st.summary = format!("stable Hom dimensions over {} objects", ctx.universe.len());
    Ok(st)
}

fn summary(s: &Scenario, w: &World, tasks: &[Task]) -> ScenarioSummary {
    let q = w.alg.quiver();
    let ms = |v: &[(String, Rep)]| {
        v.iter()
            .map(|(n, r)| ModuleSummary {
                name: n.clone(),
                dims: r.dims().to_vec(),
            })
            .collect()
    };
    ScenarioSummary {
        field: s.field,
        vertices: s.vertices,
        arrows: q
            .arrows()
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, a.source + 1, a.target + 1))
            .collect(),
        relations: s.relations.iter().map(crate::dsl::format_relation).collect(),
        bound: w.alg.bound(),
        algebra_dim: w.alg.dim(),
        modules: ms(&w.modules),
        subcat: w.subcat.as_ref().map(|(_, n, _)| n.clone()),
        universe: ms(&w.universe),
        side: s.side.name().into(),
        tasks: tasks.iter().map(|t| t.name().to_string()).collect(),
    }
}

pub fn run(s: &Scenario, opts: &Options) -> Result<Report> {
    let world = build_world(s)?;
    run_world(s, &world, opts)
}

pub fn run_world(s: &Scenario, world: &World, opts: &Options) -> Result<Report> {
    let tasks = planned_tasks(s, opts)?;
    let mut ctx = Ctx {
        world,
        opts,
        universe: world.universe_objects(),
        names: world.universe_names(),
        provenance: Vec::new(),
    };
    ctx.provenance.push(format!(
        "exact arithmetic over F_{}; search cap {} unit visits; at most {} summands in exhaustive middle terms",
        s.field, opts.search.cap, opts.search.summand_bound
    ));
    ctx.provenance.push("candidate morphisms enumerated in lexicographic order of their F_p coordinates".into());
    ctx.provenance.push(format!("at most {} morphisms per side in the triangle checks", opts.triangle_cap));
    ctx.provenance.extend(world.notes.iter().cloned());

    let sides = sides(s.side);
    let mut stages = Vec::new();
    let mut claims = Vec::new();
    for &t in &tasks {
        match t {
            Task::Rigid => stages.push(rigid_stage(&ctx, &sides)?),
            Task::Axioms => {
                for &side in &sides {
                    stages.push(axioms_stage(&ctx, side)?);
                }
            }
            Task::Star => {
                for &side in &sides {
                    stages.push(star_stage(&ctx, side)?);
                }
            }
            Task::VerifyRight | Task::VerifyLeft => {
                let side = if t == Task::VerifyRight { Side::Right } else { Side::Left };
                let (st, c) = verify_stage(&ctx, side)?;
                stages.push(st);
                claims.push(c);
            }
            Task::QuotientDims => {
                for &side in &sides {
                    stages.push(quotient_dims_stage(&ctx, side)?);
                }
            }
        }
    }
    let worst = stages.iter().fold(Verdict::Pass, |a, st| a.and(st.verdict));
    let overall = if stages.is_empty() {
        "no-op".to_string()
    } else if claims.contains(&Claim::Refused) {
        "REFUSED(rigidity)".into()
    } else if worst == Verdict::Fail {
        "FAILED".into()
    } else if worst == Verdict::Undecided {
        "UNDECIDED".into()
    } else if !claims.is_empty() && claims.iter().all(|c| *c == Claim::Confirmed { zero: true }) {
        "CONFIRMED(zero categories)".into()
    } else if !claims.is_empty() {
        "CONFIRMED".into()
    } else {
        "PASSED".into()
    };
    Ok(Report {
        tool: "quotcat".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario: summary(s, world, &tasks),
        stages,
        overall,
        provenance: ctx.provenance,
    })
}
