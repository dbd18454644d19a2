#![allow(dead_code)]

use std::sync::Arc;

use quotcat_core::algebra::{build_algebra, DEFAULT_BASIS_CAP};
use quotcat_core::{Arrow, BoundAlgebra, FieldPrime, Mat, Path, Quiver, Relation, Rep};

pub struct Spec {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    /// Zero relations `a;b` as arrow index pairs.
    pub zero: Vec<(usize, usize)>,
    pub bound: usize,
}

pub fn build(spec: &Spec) -> Arc<BoundAlgebra> {
    let names = ["a", "b", "c", "d"];
    let arrows = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Arrow {
            name: names[k].into(),
            source: s,
            target: t,
        })
        .collect();
    let q = Quiver::new(spec.vertices, arrows).unwrap();
    let rels = spec
        .zero
        .iter()
        .map(|&(a, b)| Relation::monomial(Path::from_arrows(&q, &[a, b]).unwrap()))
        .collect();
    build_algebra(FieldPrime::two(), q, rels, spec.bound, DEFAULT_BASIS_CAP).unwrap()
}

pub fn a2_spec() -> Spec {
    Spec {
        vertices: 2,
        arrows: vec![(0, 1)],
        zero: vec![],
        bound: 2,
    }
}

pub fn a3_zero_spec() -> Spec {
    Spec {
        vertices: 3,
        arrows: vec![(0, 1), (1, 2)],
        zero: vec![(0, 1)],
        bound: 3,
    }
}

pub fn n3_spec() -> Spec {
    Spec {
        vertices: 3,
        arrows: vec![(0, 1), (1, 2), (2, 0)],
        zero: vec![(0, 1), (1, 2), (2, 0)],
        bound: 2,
    }
}

pub fn n3() -> Arc<BoundAlgebra> {
    build(&n3_spec())
}

/// An F_2 matrix with at most 8 columns: one bitmask per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Bits {
    pub fn from_index(rows: usize, cols: usize, index: u64) -> Bits {
        let mask = if cols == 0 { 0 } else { (1u64 << cols) - 1 };
        let data = (0..rows).map(|r| ((index >> (r * cols)) & mask) as u8).collect();
        Bits { rows, cols, data }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Bits) -> Bits {
        let data = self
            .data
            .iter()
            .map(|&row| {
                let mut acc = 0u8;
                for k in 0..self.cols {
                    if row >> k & 1 == 1 {
                        acc ^= first.data[k];
                    }
                }
                acc
            })
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

    pub fn to_mat(&self) -> Mat {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                v.push((self.data[r] >> c & 1) as u32);
            }
        }
        Mat::from_vec(FieldPrime::two(), self.rows, self.cols, v)
    }
}

#[derive(Clone, Debug)]
pub struct SmallRep {
    pub dims: Vec<usize>,
    pub arrows: Vec<Bits>,
}

fn satisfies(spec: &Spec, arrows: &[Bits]) -> bool {
    let mut zero: Vec<(usize, usize)> = spec.zero.clone();
    if spec.bound == 2 {
        for (a, &(_, t)) in spec.arrows.iter().enumerate() {
            for (b, &(s, _)) in spec.arrows.iter().enumerate() {
                if t == s {
                    zero.push((a, b));
                }
            }
        }
    }
    zero.iter().all(|&(a, b)| arrows[b].after(&arrows[a]).is_zero())
}

/// Every representation with total dimension at most `max` satisfying the
/// relations, as raw matrices (not up to isomorphism).
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
                if satisfies(spec, &arrows) {
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

pub fn to_rep(alg: &Arc<BoundAlgebra>, r: &SmallRep) -> Rep {
    Rep::new(alg.clone(), r.dims.clone(), r.arrows.iter().map(Bits::to_mat).collect()).unwrap()
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

fn log2_exact(n: u64) -> usize {
    assert!(n.is_power_of_two());
    n.trailing_zeros() as usize
}

/// `dim Hom(X, Y)` by counting every tuple of vertex maps that commutes
/// with all arrows.
pub fn brute_hom_dim(spec: &Spec, x: &SmallRep, y: &SmallRep) -> usize {
    let bits: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
    let mut count = 0u64;
    for index in 0..1u64 << bits {
        let f = vertex_maps(x, y, index);
        let ok = spec
            .arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| y.arrows[a].after(&f[s]) == f[t].after(&x.arrows[a]));
        if ok {
            count += 1;
        }
    }
    log2_exact(count)
}

/// `dim Ext^1(X, Y)` as block upper triangular middle terms
/// `[[Y_a, Z_a], [0, X_a]]` satisfying the relations, modulo those split by
/// a change of basis `Z_a = Y_a F_s - F_t X_a`.
pub fn brute_ext_dim(spec: &Spec, x: &SmallRep, y: &SmallRep) -> usize {
    let shapes: Vec<(usize, usize)> = spec.arrows.iter().map(|&(s, t)| (y.dims[t], x.dims[s])).collect();
    let zbits: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut zero: Vec<(usize, usize)> = spec.zero.clone();
    if spec.bound == 2 {
        for (a, &(_, t)) in spec.arrows.iter().enumerate() {
            for (b, &(s, _)) in spec.arrows.iter().enumerate() {
                if t == s && !zero.contains(&(a, b)) {
                    zero.push((a, b));
                }
            }
        }
    }
    let mut cocycles = 0u64;
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
        let ok = zero
            .iter()
            .all(|&(a, b)| y.arrows[b].after(&z[a]).xor(&z[b].after(&x.arrows[a])).is_zero());
        if ok {
            cocycles += 1;
        }
    }
    let fbits: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
    let mut seen = std::collections::BTreeSet::new();
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
    log2_exact(cocycles) - log2_exact(seen.len() as u64)
}
