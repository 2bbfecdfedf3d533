//! The cylinder of a delta complex: the prism triangulation of `X x [0,1]`,
//! with the two end inclusions and the projection back to `X`.
//!
//! Over a `j`-simplex of the base (vertex order `v_0 < ... < v_j`) the
//! cylinder carries
//!
//! * `j + 2` simplices of dimension `j` ("flats"): the bottom copy, the top
//!   copy, and the diagonals `[v_0^0 .. v_c^0, v_{c+1}^1 .. v_j^1]`, encoded
//!   by the last bottom column `c` running from `-1` (all top) to `j` (all
//!   bottom);
//! * `j + 1` simplices of dimension `j + 1` ("prisms")
//!   `[v_0^0 .. v_a^0, v_a^1 .. v_j^1]`, encoded by the doubled column `a`.
//!
//! The projection sends flats to their base simplex and collapses prisms,
//! which is exactly the normalized chain-level projection. The vertex order
//! of the base fixes the whole triangulation, so the construction is
//! deterministic.

use crate::delta::{DeltaComplex, SimplexImage, SimplicialMap, SubcomplexPair};
use crate::error::SpaceError;

/// Cylinder with its structure maps: `p . i0 = p . i1 = id`.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub space: DeltaComplex,
    pub bottom: SimplicialMap,
    pub top: SimplicialMap,
    pub projection: SimplicialMap,
}

/// Index of a flat simplex: over the `t`-th `k`-simplex with last bottom
/// column `c` in `-1 ..= k` (as `c_plus_1` in `0 ..= k+1`).
fn flat_index(k: usize, t: usize, c_plus_1: usize) -> usize {
    t * (k + 2) + c_plus_1
}

/// Index of a prism simplex of dimension `k` (over a `(k-1)`-simplex `t`
/// with doubled column `a` in `0 ..= k-1`), placed after all the flats.
fn prism_index(base: &DeltaComplex, k: usize, t: usize, a: usize) -> usize {
    base.count(k) * (k + 2) + t * k + a
}

/// Builds the cylinder of `x`.
pub fn cylinder(x: &DeltaComplex) -> Cylinder {
    let base_dims = x.counts().len();
    let dims = base_dims + 1;
    let mut counts = vec![0usize; dims];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dims];

    for k in 0..dims {
        counts[k] = x.count(k) * (k + 2) + if k >= 1 { x.count(k - 1) * k } else { 0 };
    }

    for k in 1..dims {
        let mut table = Vec::with_capacity(counts[k]);
        // flats over k-simplices, ordered by base simplex then c
        for t in 0..x.count(k) {
            for c_plus_1 in 0..=k + 1 {
                let c = c_plus_1 as isize - 1;
                let mut fs = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    let base_face = x.face(k, t, i);
                    let new_c_plus_1 = if (i as isize) <= c {
                        c_plus_1 - 1
                    } else {
                        c_plus_1
                    };
                    fs.push(flat_index(k - 1, base_face, new_c_plus_1));
                }
                table.push(fs);
            }
        }
        // prisms over (k-1)-simplices
        let j = k - 1;
        for t in 0..x.count(j) {
            for a in 0..=j {
                let mut fs = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    if i < a {
                        // prism_{a-1} over face_i of the base
                        fs.push(prism_index(x, k - 1, x.face(j, t, i), a - 1));
                    } else if i == a {
                        // flat(a-1) over the base itself
                        fs.push(flat_index(j, t, a));
                    } else if i == a + 1 {
                        fs.push(flat_index(j, t, a + 1));
                    } else {
                        // prism_a over face_{i-1} of the base
                        fs.push(prism_index(x, k - 1, x.face(j, t, i - 1), a));
                    }
                }
                table.push(fs);
            }
        }
        faces[k] = table;
    }

    let space = DeltaComplex::new(counts, faces).expect("prism triangulation is a delta complex");

    let bottom_images: Vec<Vec<SimplexImage>> = (0..base_dims)
        .map(|k| {
            (0..x.count(k))
                .map(|t| SimplexImage::Simplex(flat_index(k, t, k + 1)))
                .collect()
        })
        .collect();
    let top_images: Vec<Vec<SimplexImage>> = (0..base_dims)
        .map(|k| {
            (0..x.count(k))
                .map(|t| SimplexImage::Simplex(flat_index(k, t, 0)))
                .collect()
        })
        .collect();
    let projection_images: Vec<Vec<SimplexImage>> = (0..dims)
        .map(|k| {
            let mut row = Vec::with_capacity(space.count(k));
            for t in 0..x.count(k) {
                for _c in 0..=k + 1 {
                    row.push(SimplexImage::Simplex(t));
                }
            }
            if k >= 1 {
                for _ in 0..x.count(k - 1) * k {
                    row.push(SimplexImage::Collapsed);
                }
            }
            row
        })
        .collect();

    let bottom = SimplicialMap::new(x.clone(), space.clone(), bottom_images)
        .expect("bottom inclusion is simplicial");
    let top = SimplicialMap::new(x.clone(), space.clone(), top_images)
        .expect("top inclusion is simplicial");
    let projection = SimplicialMap::new(space.clone(), x.clone(), projection_images)
        .expect("prism projection commutes at chain level");

    Cylinder {
        space,
        bottom,
        top,
        projection,
    }
}

/// Cylinder of a pair: the cylinder of the total complex with the cylinder
/// of the subcomplex flagged. The structure maps restrict to maps of pairs.
pub fn cylinder_pair(pair: &SubcomplexPair) -> Result<(Cylinder, SubcomplexPair), SpaceError> {
    let cyl = cylinder(pair.total());
    let x = pair.total();
    let dims = x.counts().len() + 1;
    let mut flags: Vec<Vec<bool>> = Vec::with_capacity(dims);
    for k in 0..dims {
        let mut row = Vec::with_capacity(cyl.space.count(k));
        for t in 0..x.count(k) {
            for _ in 0..=k + 1 {
                row.push(pair.is_flagged(k, t));
            }
        }
        if k >= 1 {
            for t in 0..x.count(k - 1) {
                for _ in 0..k {
                    row.push(pair.is_flagged(k - 1, t));
                }
            }
        }
        flags.push(row);
    }
    let cyl_pair = SubcomplexPair::new(cyl.space.clone(), flags)?;
    Ok((cyl, cyl_pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, induced_map};
    use crate::module::{FgModule, ModuleMap};
    use crate::ring::RingSpec;

    fn circle() -> DeltaComplex {
        DeltaComplex::new(vec![1, 1], vec![Vec::new(), vec![vec![0, 0]]]).unwrap()
    }

    fn edge() -> DeltaComplex {
        DeltaComplex::new(vec![2, 1], vec![Vec::new(), vec![vec![1, 0]]]).unwrap()
    }

    #[test]
    fn cylinder_of_point_is_interval() {
        let cyl = cylinder(&DeltaComplex::point());
        assert_eq!(cyl.space.counts(), &[2, 1]);
        let h = homology(&cyl.space.chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(1).is_zero());
    }

    #[test]
    fn cylinder_of_edge_is_square() {
        let cyl = cylinder(&edge());
        // 4 vertices, 5 edges (bottom, top, two verticals, one diagonal),
        // 2 triangles
        assert_eq!(cyl.space.counts(), &[4, 5, 2]);
        let h = homology(&cyl.space.chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(1).is_zero());
        assert!(h.module(2).is_zero());
    }

    #[test]
    fn cylinder_of_circle_is_annulus() {
        let cyl = cylinder(&circle());
        assert_eq!(cyl.space.counts(), &[2, 4, 2]);
        let h = homology(&cyl.space.chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert_eq!(h.module(1), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(2).is_zero());
    }

    #[test]
    fn projection_retracts_both_ends() {
        for x in [DeltaComplex::point(), edge(), circle()] {
            let cyl = cylinder(&x);
            let p_i0 = cyl.projection.compose(&cyl.bottom).unwrap();
            let p_i1 = cyl.projection.compose(&cyl.top).unwrap();
            assert_eq!(p_i0, SimplicialMap::identity(&x));
            assert_eq!(p_i1, SimplicialMap::identity(&x));
        }
    }

    #[test]
    fn projection_induces_isomorphisms() {
        let ring = RingSpec::Integers;
        let x = circle();
        let cyl = cylinder(&x);
        let p = cyl.projection.chain_map(ring);
        let h_cyl = homology(p.source());
        let h_x = homology(p.target());
        for n in 0..=2 {
            let map = induced_map(&p, &h_cyl, &h_x, n).unwrap();
            assert!(map.is_isomorphism(), "H_{n}(p) not iso");
        }
        // the two end inclusions agree on homology
        let i0 = cyl.bottom.chain_map(ring);
        let i1 = cyl.top.chain_map(ring);
        for n in 0..=2 {
            let m0 = induced_map(&i0, &h_x, &h_cyl, n).unwrap();
            let m1 = induced_map(&i1, &h_x, &h_cyl, n).unwrap();
            assert_eq!(m0, m1, "H_{n}(i0) != H_{n}(i1)");
        }
    }

    #[test]
    fn cylinder_pair_flags_are_closed() {
        let x = edge();
        let mut flags = x.blank_flags();
        flags[0][0] = true;
        let pair = SubcomplexPair::new(x, flags).unwrap();
        let (cyl, cyl_pair) = cylinder_pair(&pair).unwrap();
        // the flagged part is the vertical interval over the chosen vertex
        let (sub, _) = cyl_pair.subcomplex();
        assert_eq!(sub.counts(), &[2, 1]);
        assert!(cyl.space.count(2) > 0);
        // structure maps restrict to the pair
        let restricted = cyl
            .projection
            .restrict(cyl_pair.flags(), pair.flags())
            .unwrap();
        let h_sub = homology(&restricted.source().chain_complex(RingSpec::Integers));
        assert_eq!(h_sub.module(0), FgModule::free(RingSpec::Integers, 1));
    }

    #[test]
    fn ends_agree_even_when_chain_maps_differ() {
        // on the circle the bottom and top chain maps differ as matrices
        let x = circle();
        let cyl = cylinder(&x);
        let i0 = cyl.bottom.chain_map(RingSpec::Integers);
        let i1 = cyl.top.chain_map(RingSpec::Integers);
        assert_ne!(i0.component(1), i1.component(1));
        let h_x = homology(i0.source());
        let h_cyl = homology(i0.target());
        let m0 = induced_map(&i0, &h_x, &h_cyl, 1).unwrap();
        let m1 = induced_map(&i1, &h_x, &h_cyl, 1).unwrap();
        assert_eq!(m0, m1);
        assert!(!matches!(m0, ref m if m.is_zero_map()));
        let _: &ModuleMap = &m0;
    }
}
