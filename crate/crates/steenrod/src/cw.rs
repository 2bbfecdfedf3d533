//! CW complexes presented by cell counts and incidence matrices.
//!
//! The incidence matrix `D_n` records the signed attaching degrees of the
//! `n`-cells on the `(n-1)`-cells. `D . D = 0` is asserted exactly on
//! construction; the matrices then *are* the cellular differentials.

use crate::complex::ChainComplex;
use crate::error::SpaceError;
use crate::matrix::IntMatrix;
use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwComplex {
    cell_counts: Vec<usize>,
    /// `incidence[n-1]` is `D_n : cells_n -> cells_{n-1}`.
    incidence: Vec<IntMatrix>,
}

impl CwComplex {
    pub fn new(cell_counts: Vec<usize>, incidence: Vec<IntMatrix>) -> Result<Self, SpaceError> {
        let expected = cell_counts.len().saturating_sub(1);
        if incidence.len() != expected {
            return Err(SpaceError::IncidenceShape {
                degree: incidence.len(),
                rows: 0,
                cols: 0,
                expected_rows: expected,
                expected_cols: expected,
            });
        }
        for (i, d) in incidence.iter().enumerate() {
            if d.rows() != cell_counts[i] || d.cols() != cell_counts[i + 1] {
                return Err(SpaceError::IncidenceShape {
                    degree: i + 1,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows: cell_counts[i],
                    expected_cols: cell_counts[i + 1],
                });
            }
        }
        for i in 0..incidence.len().saturating_sub(1) {
            let square = incidence[i].mul(&incidence[i + 1]).expect("shapes checked");
            if !square.is_zero() {
                return Err(SpaceError::IncidenceSquareNonzero {
                    lower: i + 1,
                    upper: i + 2,
                });
            }
        }
        Ok(CwComplex {
            cell_counts,
            incidence,
        })
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    pub fn dimension(&self) -> usize {
        self.cell_counts.len().saturating_sub(1)
    }

    /// The cellular chain complex: ranks are the cell counts, differentials
    /// the incidence matrices.
    pub fn chain_complex(&self, ring: RingSpec) -> ChainComplex {
        ChainComplex::new(ring, self.cell_counts.clone(), self.incidence.clone())
            .expect("validated incidence matrices form a complex")
    }

    /// `S^n` with one vertex and one `n`-cell.
    pub fn sphere(n: usize) -> Self {
        if n == 0 {
            return CwComplex::new(vec![2], Vec::new()).expect("two points");
        }
        let mut counts = vec![0; n + 1];
        counts[0] = 1;
        counts[n] = 1;
        let incidence = (1..=n)
            .map(|k| IntMatrix::zeros(counts[k - 1], counts[k]))
            .collect();
        CwComplex::new(counts, incidence).expect("sphere incidence is zero")
    }

    /// The torus: one vertex, two loops, one 2-cell attached along the
    /// commutator.
    pub fn torus() -> Self {
        CwComplex::new(
            vec![1, 2, 1],
            vec![IntMatrix::zeros(1, 2), IntMatrix::zeros(2, 1)],
        )
        .expect("torus incidence")
    }

    /// The real projective plane: the 2-cell attaches with degree 2.
    pub fn projective_plane() -> Self {
        CwComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[vec![2]])],
        )
        .expect("projective plane incidence")
    }

    /// The Klein bottle: attaching word `a b a b^{-1}`, total degrees (2, 0).
    pub fn klein_bottle() -> Self {
        CwComplex::new(
            vec![1, 2, 1],
            vec![
                IntMatrix::zeros(1, 2),
                IntMatrix::from_rows(&[vec![2], vec![0]]),
            ],
        )
        .expect("klein bottle incidence")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::module::FgModule;
    use num_bigint::BigInt;

    #[test]
    fn square_nonzero_rejected() {
        let err = CwComplex::new(
            vec![1, 1, 1],
            vec![
                IntMatrix::from_rows(&[vec![1]]),
                IntMatrix::from_rows(&[vec![1]]),
            ],
        );
        assert!(matches!(
            err,
            Err(SpaceError::IncidenceSquareNonzero { .. })
        ));
    }

    #[test]
    fn minimal_sphere_homology() {
        let h = homology(&CwComplex::sphere(2).chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert!(h.module(1).is_zero());
        assert_eq!(h.module(2), FgModule::free(RingSpec::Integers, 1));
    }

    #[test]
    fn torus_homology() {
        let h = homology(&CwComplex::torus().chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert_eq!(h.module(1), FgModule::free(RingSpec::Integers, 2));
        assert_eq!(h.module(2), FgModule::free(RingSpec::Integers, 1));
    }

    #[test]
    fn projective_plane_torsion() {
        let h = homology(&CwComplex::projective_plane().chain_complex(RingSpec::Integers));
        assert_eq!(h.module(0), FgModule::free(RingSpec::Integers, 1));
        assert_eq!(
            h.module(1),
            FgModule::new(RingSpec::Integers, 0, vec![BigInt::from(2)]).unwrap()
        );
        assert!(h.module(2).is_zero());
    }

    #[test]
    fn klein_bottle_mixed_homology() {
        let h = homology(&CwComplex::klein_bottle().chain_complex(RingSpec::Integers));
        assert_eq!(
            h.module(1),
            FgModule::new(RingSpec::Integers, 1, vec![BigInt::from(2)]).unwrap()
        );
        assert!(h.module(2).is_zero());
    }
}
