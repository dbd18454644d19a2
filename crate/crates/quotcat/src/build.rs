//! Turns a parsed scenario into an algebra, named modules, the subcategory
//! and the universe.

use std::sync::Arc;

use quotcat_core::algebra::{build_algebra, inj, proj, simple, DEFAULT_BASIS_CAP};
use quotcat_core::rep::{cokernel, cosyzygy_seq, direct_sum, is_iso, kernel, syzygy_seq};
use quotcat_core::rigidstar::{minimal_left_approx, minimal_right_approx};
use quotcat_core::{Arrow, BoundAlgebra, FieldPrime, Mat, Path, Quiver, Relation, Rep, Subcat};

use crate::dsl::{ModuleCtor, Scenario, UniverseDecl};
use crate::error::{CliError, Result};

/// Search cap used when comparing closure objects up to isomorphism.
pub const CLOSURE_ISO_CAP: u64 = 4096;

#[derive(Clone, Debug)]
pub struct World {
    pub alg: Arc<BoundAlgebra>,
    pub modules: Vec<(String, Rep)>,
    pub subcat: Option<(String, Vec<String>, Subcat)>,
    pub universe: Vec<(String, Rep)>,
    /// Provenance of the universe, e.g. a truncated closure.
    pub notes: Vec<String>,
}

impl World {
    pub fn module(&self, name: &str) -> Option<&Rep> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn universe_objects(&self) -> Vec<Rep> {
        self.universe.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn universe_names(&self) -> Vec<String> {
        self.universe.iter().map(|(n, _)| n.clone()).collect()
    }
}

fn has_cycle(s: &Scenario) -> bool {
    let n = s.vertices;
    let mut reach = vec![vec![false; n]; n];
    for a in &s.arrows {
        reach[a.source - 1][a.target - 1] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).any(|i| reach[i][i])
}

pub fn build_world(s: &Scenario) -> Result<World> {
    let field = FieldPrime::new(s.field).map_err(CliError::core("build"))?;
    let arrows = s
        .arrows
        .iter()
        .map(|a| Arrow {
            name: a.name.clone(),
            source: a.source - 1,
            target: a.target - 1,
        })
        .collect();
    let quiver = Quiver::new(s.vertices, arrows).map_err(CliError::core("build"))?;
    let mut relations = Vec::with_capacity(s.relations.len());
    for r in &s.relations {
        let mut terms = Vec::with_capacity(r.terms.len());
        for (c, names) in &r.terms {
            let idx: Vec<usize> = names
                .iter()
                .map(|n| quiver.arrow_index(n).expect("arrow names are checked by the parser"))
                .collect();
            terms.push((*c, Path::from_arrows(&quiver, &idx).map_err(CliError::core("build"))?));
        }
        relations.push(Relation::new(terms));
    }
    let bound = match s.bound {
        Some(b) => b,
        None if has_cycle(s) => {
            return Err(CliError::Scenario(
                "the quiver has an oriented cycle; add `bound <n>` to make the algebra finite-dimensional".into(),
            ))
        }
        None => s.vertices.max(2),
    };
    let alg = build_algebra(field, quiver, relations, bound, DEFAULT_BASIS_CAP).map_err(CliError::core("build"))?;

    let mut modules: Vec<(String, Rep)> = Vec::with_capacity(s.modules.len());
    for m in &s.modules {
        let rep = match &m.ctor {
            ModuleCtor::Simple(i) => simple(&alg, i - 1),
            ModuleCtor::Proj(i) => proj(&alg, i - 1),
            ModuleCtor::Inj(i) => inj(&alg, i - 1),
            ModuleCtor::Sum(names) => {
                let parts: Vec<Rep> = names
                    .iter()
                    .map(|n| modules.iter().find(|(k, _)| k == n).expect("names are checked by the parser").1.clone())
                    .collect();
                Ok(direct_sum(&alg, &parts).object)
            }
            ModuleCtor::Matrices { dims, maps } => matrices(&alg, dims, maps),
        }
        .map_err(|e| CliError::Scenario(format!("module `{}`: {e}", m.name)))?;
        modules.push((m.name.clone(), rep));
    }
    let lookup = |n: &String| modules.iter().find(|(k, _)| k == n).expect("names are checked by the parser").1.clone();

    let subcat = match &s.subcat {
        Some(sc) => {
            let gens: Vec<Rep> = sc.members.iter().map(lookup).collect();
            let sub = Subcat::new(gens).map_err(CliError::core("build"))?;
            Some((sc.name.clone(), sc.members.clone(), sub))
        }
        None => None,
    };

    let mut notes = Vec::new();
    let universe = match &s.universe {
        None => modules.clone(),
        Some(UniverseDecl::List(names)) => names.iter().map(|n| (n.clone(), lookup(n))).collect(),
        Some(UniverseDecl::Closure { seeds, cap }) => {
            let seeds: Vec<(String, Rep)> = seeds.iter().map(|n| (n.clone(), lookup(n))).collect();
            let sub = subcat.as_ref().map(|(_, _, m)| m);
            closure(&seeds, sub, *cap, &mut notes)?
        }
    };
    if let Some((_, members, _)) = &subcat {
        let names: Vec<&String> = universe.iter().map(|(n, _)| n).collect();
        if let Some(missing) = members.iter().find(|m| !names.contains(m)) {
            return Err(CliError::Scenario(format!("subcategory member `{missing}` is not in the universe")));
        }
    }
    Ok(World {
        alg,
        modules,
        subcat,
        universe,
        notes,
    })
}

fn matrices(alg: &Arc<BoundAlgebra>, dims: &[usize], maps: &[(String, Vec<Vec<i64>>)]) -> quotcat_core::Result<Rep> {
    let q = alg.quiver();
    let f = alg.field();
    let mut arrows: Vec<Mat> = q
        .arrows()
        .iter()
        .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
        .collect();
    for (name, rows) in maps {
        let k = q.arrow_index(name).expect("arrow names are checked by the parser");
        let a = q.arrow(k);
        let (r, c) = (dims[a.target], dims[a.source]);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(quotcat_core::Error::InvalidRep(format!(
                "arrow `{name}` needs a {r}x{c} matrix"
            )));
        }
        let data = rows.iter().flatten().map(|&v| f.reduce(v)).collect();
        arrows[k] = Mat::from_vec(f, r, c, data);
    }
    Rep::new(alg.clone(), dims.to_vec(), arrows)
}

/// Closes the seeds under cosyzygy, syzygy, and (when a subcategory is
/// given) the kernel of the minimal right approximation and the cokernel of
/// the minimal left approximation. Zero objects and objects isomorphic to
/// earlier ones are skipped; at most `cap` objects are kept.
pub fn closure(seeds: &[(String, Rep)], m: Option<&Subcat>, cap: usize, notes: &mut Vec<String>) -> Result<Vec<(String, Rep)>> {
    let mut out: Vec<(String, Rep)> = Vec::new();
    let mut queue: std::collections::VecDeque<(String, Rep)> = seeds.iter().cloned().collect();
    let mut truncated = false;
    let mut undecided = 0;
    while let Some((name, x)) = queue.pop_front() {
        if x.is_zero() {
            continue;
        }
        let mut dup = false;
        for (_, y) in &out {
            match is_iso(&x, y, CLOSURE_ISO_CAP) {
                Ok(Some(_)) => {
                    dup = true;
                    break;
                }
                Ok(None) => {}
                Err(quotcat_core::Error::Undecided { .. }) => undecided += 1,
                Err(e) => return Err(CliError::Core { stage: "closure", source: e }),
            }
        }
        if dup {
            continue;
        }
        if out.len() == cap {
            truncated = true;
            break;
        }
        queue.push_back((format!("sigma({name})"), cosyzygy_seq(&x).cosyzygy));
        queue.push_back((format!("omega({name})"), syzygy_seq(&x).syzygy));
        if let Some(m) = m {
            let r = minimal_right_approx(m, &x).map_err(CliError::core("closure"))?;
            queue.push_back((format!("kerapx({name})"), kernel(&r.map).0));
            let l = minimal_left_approx(m, &x).map_err(CliError::core("closure"))?;
            queue.push_back((format!("cokapx({name})"), cokernel(&l.map).0));
        }
        out.push((name, x));
    }
    if truncated {
        notes.push(format!("closure truncated at {cap} objects"));
    }
    if undecided > 0 {
        notes.push(format!("{undecided} isomorphism comparisons in the closure were undecided and kept apart"));
    }
    Ok(out)
}
