#![allow(dead_code)]

//! Brute-force F_2 oracle: every map is enumerated as bitmask matrices.

use std::collections::BTreeSet;
use std::sync::Arc;

use quotcat_core::algebra::{build_algebra, DEFAULT_BASIS_CAP};
use quotcat_core::{Arrow, BoundAlgebra, FieldPrime, Mat, Quiver, Rep};

/// A quiver with radical square zero or no composable arrows.
pub struct Spec {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

pub fn a2() -> Spec {
    Spec {
        vertices: 2,
        arrows: vec![(0, 1)],
    }
}

pub fn n3() -> Spec {
    Spec {
        vertices: 3,
        arrows: vec![(0, 1), (1, 2), (2, 0)],
    }
}

pub fn build(spec: &Spec) -> Arc<BoundAlgebra> {
    let arrows = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Arrow {
            name: ["a", "b", "c"][k].into(),
            source: s,
            target: t,
        })
        .collect();
    let q = Quiver::new(spec.vertices, arrows).unwrap();
    build_algebra(FieldPrime::two(), q, Vec::new(), 2, DEFAULT_BASIS_CAP).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Bits {
    pub fn from_index(rows: usize, cols: usize, index: u64) -> Bits {
        let mask = if cols == 0 { 0 } else { (1u64 << cols) - 1 };
        Bits {
            rows,
            cols,
            data: (0..rows).map(|r| ((index >> (r * cols)) & mask) as u8).collect(),
        }
    }

    pub fn after(&self, first: &Bits) -> Bits {
        let data = self
            .data
            .iter()
            .map(|&row| (0..self.cols).filter(|k| row >> k & 1 == 1).fold(0u8, |acc, k| acc ^ first.data[k]))
            .collect();
        Bits {
            rows: self.rows,
            cols: first.cols,
            data,
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        Bits {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn rank(&self) -> usize {
        rank_u64(self.data.iter().map(|&r| r as u64).collect())
    }

    pub fn to_mat(&self) -> Mat {
        let v = (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| (self.data[r] >> c & 1) as u32)
            .collect();
        Mat::from_vec(FieldPrime::two(), self.rows, self.cols, v)
    }

    pub fn from_mat(m: &Mat) -> Bits {
        let data = (0..m.rows())
            .map(|r| (0..m.cols()).fold(0u8, |acc, c| acc | ((m.get(r, c) as u8) << c)))
            .collect();
        Bits {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }
}

fn rank_u64(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

#[derive(Clone, Debug)]
pub struct SmallRep {
    pub dims: Vec<usize>,
    pub arrows: Vec<Bits>,
}

impl SmallRep {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

pub fn from_rep(r: &Rep) -> SmallRep {
    SmallRep {
        dims: r.dims().to_vec(),
        arrows: r.arrows().iter().map(Bits::from_mat).collect(),
    }
}

pub fn to_rep(alg: &Arc<BoundAlgebra>, r: &SmallRep) -> Rep {
    Rep::new(alg.clone(), r.dims.clone(), r.arrows.iter().map(Bits::to_mat).collect()).unwrap()
}

/// Indecomposables of the radical-square-zero algebras above: a simple, or
/// the two-dimensional module along one arrow.
pub fn simple(spec: &Spec, v: usize) -> SmallRep {
    let mut dims = vec![0; spec.vertices];
    dims[v] = 1;
    shaped(spec, dims, None)
}

pub fn uniserial(spec: &Spec, arrow: usize) -> SmallRep {
    let (s, t) = spec.arrows[arrow];
    let mut dims = vec![0; spec.vertices];
    dims[s] = 1;
    dims[t] = 1;
    shaped(spec, dims, Some(arrow))
}

fn shaped(spec: &Spec, dims: Vec<usize>, on: Option<usize>) -> SmallRep {
    let arrows = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Bits::from_index(dims[t], dims[s], u64::from(Some(k) == on)))
        .collect();
    SmallRep { dims, arrows }
}

fn composable_zero(spec: &Spec, arrows: &[Bits]) -> bool {
    spec.arrows.iter().enumerate().all(|(a, &(_, t))| {
        spec.arrows
            .iter()
            .enumerate()
            .filter(|(_, &(s, _))| s == t)
            .all(|(b, _)| arrows[b].after(&arrows[a]).is_zero())
    })
}

/// Every representation with total dimension at most `max`, as raw matrices.
pub fn enumerate(spec: &Spec, max: usize) -> Vec<SmallRep> {
    let mut out = Vec::new();
    let mut dims = vec![0; spec.vertices];
    loop {
        if dims.iter().sum::<usize>() <= max {
            let shapes: Vec<(usize, usize)> = spec.arrows.iter().map(|&(s, t)| (dims[t], dims[s])).collect();
            let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
            for index in 0..1u64 << bits {
                let mut pos = 0;
                let arrows: Vec<Bits> = shapes
                    .iter()
                    .map(|&(r, c)| {
                        let b = Bits::from_index(r, c, index >> pos);
                        pos += r * c;
                        b
                    })
                    .collect();
                if composable_zero(spec, &arrows) {
                    out.push(SmallRep {
                        dims: dims.clone(),
                        arrows,
                    });
                }
            }
        }
        let mut k = 0;
        loop {
            if k == dims.len() {
                return out;
            }
            dims[k] += 1;
            if dims[k] <= max {
                break;
            }
            dims[k] = 0;
            k += 1;
        }
    }
}

fn vertex_maps(x: &SmallRep, y: &SmallRep, index: u64) -> Vec<Bits> {
    let mut pos = 0;
    x.dims
        .iter()
        .zip(&y.dims)
        .map(|(&c, &r)| {
            let b = Bits::from_index(r, c, index >> pos);
            pos += r * c;
            b
        })
        .collect()
}

/// Every module map `X -> Y`.
pub fn homs(spec: &Spec, x: &SmallRep, y: &SmallRep) -> Vec<Vec<Bits>> {
    let bits: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
    (0..1u64 << bits)
        .map(|i| vertex_maps(x, y, i))
        .filter(|f| {
            spec.arrows
                .iter()
                .enumerate()
                .all(|(a, &(s, t))| y.arrows[a].after(&f[s]) == f[t].after(&x.arrows[a]))
        })
        .collect()
}

fn flatten(f: &[Bits]) -> u64 {
    let mut out = 0u64;
    let mut pos = 0;
    for b in f {
        for &row in &b.data {
            out |= (row as u64) << pos;
            pos += b.cols;
        }
    }
    out
}

fn log2_exact(n: usize) -> usize {
    assert!(n.is_power_of_two());
    n.trailing_zeros() as usize
}

pub fn hom_dim(spec: &Spec, x: &SmallRep, y: &SmallRep) -> usize {
    log2_exact(homs(spec, x, y).len())
}

/// `dim Hom(X, Y)` modulo the maps factoring through a direct sum of
/// objects in `through`.
pub fn stable_dim(spec: &Spec, x: &SmallRep, y: &SmallRep, through: &[SmallRep]) -> usize {
    let all = homs(spec, x, y);
    let mut span = Vec::new();
    for z in through {
        let into = homs(spec, x, z);
        let out = homs(spec, z, y);
        for f in &into {
            for g in &out {
                let comp: Vec<Bits> = g.iter().zip(f).map(|(gv, fv)| gv.after(fv)).collect();
                span.push(flatten(&comp));
            }
        }
    }
    log2_exact(all.len()) - rank_u64(span)
}

/// `dim Ext^1(X, Y)`: cocycles `Z_a: X_s -> Y_t` making the block triangular
/// middle term satisfy the relations, modulo coboundaries.
pub fn ext_dim(spec: &Spec, x: &SmallRep, y: &SmallRep) -> usize {
    let shapes: Vec<(usize, usize)> = spec.arrows.iter().map(|&(s, t)| (y.dims[t], x.dims[s])).collect();
    let zbits: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let pairs: Vec<(usize, usize)> = spec
        .arrows
        .iter()
        .enumerate()
        .flat_map(|(a, &(_, t))| {
            spec.arrows
                .iter()
                .enumerate()
                .filter(move |(_, &(s, _))| s == t)
                .map(move |(b, _)| (a, b))
        })
        .collect();
    let mut cocycles = 0usize;
    for index in 0..1u64 << zbits {
        let mut pos = 0;
        let z: Vec<Bits> = shapes
            .iter()
            .map(|&(r, c)| {
                let b = Bits::from_index(r, c, index >> pos);
                pos += r * c;
                b
            })
            .collect();
        if pairs
            .iter()
            .all(|&(a, b)| y.arrows[b].after(&z[a]).xor(&z[b].after(&x.arrows[a])).is_zero())
        {
            cocycles += 1;
        }
    }
    let fbits: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
    let mut seen = BTreeSet::new();
    for index in 0..1u64 << fbits {
        let f = vertex_maps(x, y, index);
        let image: Vec<Vec<u8>> = spec
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| y.arrows[a].after(&f[s]).xor(&f[t].after(&x.arrows[a])).data)
            .collect();
        seen.insert(image);
    }
    log2_exact(cocycles) - log2_exact(seen.len())
}

/// Multiplicities of the simples and of the two-dimensional uniserials in
/// an N3 module: uniserials along arrow `i` are counted by its rank, and
/// the simples by what the arrows at each vertex leave over.
pub fn n3_summands(x: &SmallRep) -> ([usize; 3], [usize; 3]) {
    let ranks: Vec<usize> = x.arrows.iter().map(Bits::rank).collect();
    let uni = [ranks[0], ranks[1], ranks[2]];
    let simples = [0, 1, 2].map(|v| x.dims[v] - ranks[v] - ranks[(v + 2) % 3]);
    (simples, uni)
}
