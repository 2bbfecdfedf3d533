//! The golden corpus: canonical delta-complex models of spheres, disks,
//! surfaces and polygonal circles, with the standard covers, wrap maps and
//! the four-point poset circle.
//!
//! Every builder returns a fully validated structure; the simplex counts are
//! part of the public contract and pinned by tests.

use std::collections::HashMap;

use itertools::Itertools;

use crate::delta::{DeltaComplex, ExcisiveSquare, SimplexImage, SimplicialMap, SubcomplexPair};
use crate::error::SpaceError;
use crate::poset::FinitePoset;

/// The full simplex on `n + 1` vertices: every nonempty vertex subset, in
/// lexicographic order within each dimension.
pub fn simplex_delta(n: usize) -> DeltaComplex {
    subset_complex(n + 1, n)
}

/// `S^n` modeled as the boundary of the `(n+1)`-simplex.
pub fn sphere_delta(n: usize) -> DeltaComplex {
    subset_complex(n + 2, n)
}

/// All subsets of `{0..vertices}` of size up to `top_dim + 1`, assembled
/// into a delta complex; face `i` deletes the `i`-th smallest vertex.
fn subset_complex(vertices: usize, top_dim: usize) -> DeltaComplex {
    let mut counts = Vec::with_capacity(top_dim + 1);
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top_dim + 1);
    let mut index_prev: HashMap<Vec<usize>, usize> = HashMap::new();
    for dim in 0..=top_dim {
        let subsets: Vec<Vec<usize>> = (0..vertices).combinations(dim + 1).collect();
        counts.push(subsets.len());
        let mut table = Vec::with_capacity(subsets.len());
        if dim >= 1 {
            for subset in &subsets {
                let mut fs = Vec::with_capacity(dim + 1);
                for omit in 0..=dim {
                    let mut face = subset.clone();
                    face.remove(omit);
                    fs.push(index_prev[&face]);
                }
                table.push(fs);
            }
        }
        faces.push(table);
        index_prev = subsets
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
    }
    DeltaComplex::new(counts, faces).expect("subset complexes are delta complexes")
}

/// `(D^n, S^{n-1})`: the full `n`-simplex with every proper face flagged.
pub fn disk_pair(n: usize) -> SubcomplexPair {
    let disk = simplex_delta(n);
    let mut flags = disk.full_flags();
    if let Some(top) = flags.last_mut() {
        for f in top.iter_mut() {
            *f = false;
        }
    }
    SubcomplexPair::new(disk, flags).expect("boundary of a simplex is closed")
}

/// The torus from the standard square identification: one vertex, edges
/// `a, b` and the diagonal `c`, two triangles with boundary `a + b - c`.
pub fn torus_delta() -> DeltaComplex {
    DeltaComplex::new(
        vec![1, 3, 2],
        vec![
            Vec::new(),
            vec![vec![0, 0], vec![0, 0], vec![0, 0]],
            vec![vec![1, 2, 0], vec![0, 2, 1]],
        ],
    )
    .expect("torus identification is a delta complex")
}

/// The projective plane: two vertices, edges `a, b` from `v` to `w` and a
/// loop `c` at `v`, triangles with boundaries `b - a + c` and `a - b + c`.
pub fn rp2_delta() -> DeltaComplex {
    DeltaComplex::new(
        vec![2, 3, 2],
        vec![
            Vec::new(),
            vec![vec![1, 0], vec![1, 0], vec![0, 0]],
            vec![vec![1, 0, 2], vec![0, 1, 2]],
        ],
    )
    .expect("projective plane identification is a delta complex")
}

/// The Klein bottle: one vertex, three loops, triangle boundaries
/// `a - c + b` and `a - b + c`.
pub fn klein_delta() -> DeltaComplex {
    DeltaComplex::new(
        vec![1, 3, 2],
        vec![
            Vec::new(),
            vec![vec![0, 0], vec![0, 0], vec![0, 0]],
            vec![vec![0, 2, 1], vec![0, 1, 2]],
        ],
    )
    .expect("klein bottle identification is a delta complex")
}

/// The circle as an `m`-gon: `m` vertices, `m` edges, edge `i` running from
/// vertex `i` to vertex `i + 1 (mod m)`. `m = 1` is the one-vertex loop.
pub fn circle_mgon(m: usize) -> Result<DeltaComplex, SpaceError> {
    if m == 0 {
        return Err(SpaceError::EmptyUnion);
    }
    let faces1 = (0..m).map(|i| vec![(i + 1) % m, i]).collect();
    DeltaComplex::new(vec![m, m], vec![Vec::new(), faces1])
}

/// The degree-`m` wrap `circle_mgon(k * m) -> circle_mgon(k)` reducing
/// indices mod `k`. For `m = 0` this is the constant collapse to vertex 0.
pub fn wrap_map(k: usize, m: usize) -> Result<SimplicialMap, SpaceError> {
    let target = circle_mgon(k)?;
    if m == 0 {
        let source = circle_mgon(k)?;
        return SimplicialMap::constant(&source, &target, 0);
    }
    let source = circle_mgon(k * m)?;
    let images = vec![
        (0..k * m).map(|i| SimplexImage::Simplex(i % k)).collect(),
        (0..k * m).map(|i| SimplexImage::Simplex(i % k)).collect(),
    ];
    SimplicialMap::new(source, target, images)
}

/// The two-arc cover of the circle: on the 2-gon, `U` is one edge with its
/// endpoints, `V` the other; `U n V` is the two-point sphere `S^0`.
pub fn circle_arc_cover() -> ExcisiveSquare {
    let circle = circle_mgon(2).expect("2-gon");
    let mut u = circle.blank_flags();
    u[1][0] = true;
    let u = circle.close_flags(u);
    let mut v = circle.blank_flags();
    v[1][1] = true;
    let v = circle.close_flags(v);
    ExcisiveSquare::new(circle, u, v).expect("two arcs cover the circle")
}

/// The two-disk cover of `S^2` (boundary of the tetrahedron): `V` is one
/// triangle with its faces, `U` the closure of the other three; they meet
/// in the triangle's boundary circle.
pub fn sphere_disk_cover() -> ExcisiveSquare {
    let sphere = sphere_delta(2);
    let top = sphere.count(2);
    let mut u = sphere.blank_flags();
    for t in 0..top - 1 {
        u[2][t] = true;
    }
    let u = sphere.close_flags(u);
    let mut v = sphere.blank_flags();
    v[2][top - 1] = true;
    let v = sphere.close_flags(v);
    ExcisiveSquare::new(sphere, u, v).expect("two disks cover the sphere")
}

/// The two-patch cover of the torus by the closures of its two triangles;
/// they meet in the full one-skeleton.
pub fn torus_patch_cover() -> ExcisiveSquare {
    let torus = torus_delta();
    let mut u = torus.blank_flags();
    u[2][0] = true;
    let u = torus.close_flags(u);
    let mut v = torus.blank_flags();
    v[2][1] = true;
    let v = torus.close_flags(v);
    ExcisiveSquare::new(torus, u, v).expect("two patches cover the torus")
}

/// Alternating-edge cover of an even polygon: `U` is the closure of the
/// even-indexed edges, `V` of the odd-indexed ones.
pub fn mgon_alternating_cover(half: usize) -> Result<ExcisiveSquare, SpaceError> {
    let m = 2 * half;
    let circle = circle_mgon(m)?;
    let mut u = circle.blank_flags();
    let mut v = circle.blank_flags();
    for e in 0..m {
        if e % 2 == 0 {
            u[1][e] = true;
        } else {
            v[1][e] = true;
        }
    }
    let u = circle.close_flags(u);
    let v = circle.close_flags(v);
    ExcisiveSquare::new(circle, u, v)
}

/// The four-point pseudo-circle: two minimal points under two maximal
/// points. Its order complex is the boundary of a square.
pub fn pseudocircle_poset() -> FinitePoset {
    FinitePoset::new(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        &[
            ("a".into(), "c".into()),
            ("a".into(), "d".into()),
            ("b".into(), "c".into()),
            ("b".into(), "d".into()),
        ],
    )
    .expect("pseudo-circle relations are antisymmetric")
}
