//! Increasing filtrations of a delta complex by closed subcomplexes.
//!
//! Stage extraction is always by ascending global simplex index, so the
//! chain bases of the stages are compatible: the inclusion of one stage
//! into the next (or into the total complex) is an honest simplicial map
//! between the extracted complexes.

use crate::delta::{DeltaComplex, SimplicialMap, SubcomplexPair};
use crate::error::SpaceError;

/// `X_0 <= X_1 <= ... <= X_d = X`, each stage a closed subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    total: DeltaComplex,
    stages: Vec<Vec<Vec<bool>>>,
}

impl Filtration {
    pub fn new(total: DeltaComplex, stages: Vec<Vec<Vec<bool>>>) -> Result<Self, SpaceError> {
        if stages.is_empty() {
            return Err(SpaceError::EmptyFiltration);
        }
        for flags in &stages {
            // closure and shape are exactly the pair invariants
            SubcomplexPair::new(total.clone(), flags.clone())?;
        }
        for p in 1..stages.len() {
            for n in 0..total.counts().len() {
                for s in 0..total.count(n) {
                    if stages[p - 1][n][s] && !stages[p][n][s] {
                        return Err(SpaceError::NotMonotone { stage: p });
                    }
                }
            }
        }
        let last = stages.last().expect("nonempty");
        for (n, row) in last.iter().enumerate() {
            if row.iter().any(|&f| !f) {
                let s = row.iter().position(|&f| !f).unwrap_or(0);
                let _ = (n, s);
                return Err(SpaceError::LastStageNotTotal);
            }
        }
        Ok(Filtration { total, stages })
    }

    /// The skeletal filtration: stage `p` is the `p`-skeleton.
    pub fn skeletal(total: &DeltaComplex) -> Self {
        let stages = (0..=total.dimension())
            .map(|p| total.skeleton_flags(p))
            .collect();
        Filtration {
            total: total.clone(),
            stages,
        }
    }

    pub fn total(&self) -> &DeltaComplex {
        &self.total
    }

    /// Number of stages (`d + 1` for a filtration ending at `X_d`).
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage_flags(&self, p: usize) -> &[Vec<bool>] {
        &self.stages[p]
    }

    /// The extracted stage complex `X_p`.
    pub fn stage(&self, p: usize) -> DeltaComplex {
        let pair = SubcomplexPair::new(self.total.clone(), self.stages[p].clone())
            .expect("validated stage");
        pair.subcomplex().0
    }

    /// The pair `(X_p, X_{p-1})` as a subcomplex pair on the extracted
    /// `X_p`; for `p = 0` the subspace is empty.
    pub fn stage_pair(&self, p: usize) -> SubcomplexPair {
        let outer = SubcomplexPair::new(self.total.clone(), self.stages[p].clone())
            .expect("validated stage");
        let (stage_complex, to_total) = outer.subcomplex();
        let flags: Vec<Vec<bool>> = (0..stage_complex.counts().len())
            .map(|n| {
                to_total[n]
                    .iter()
                    .map(|&global| p > 0 && self.stages[p - 1][n][global])
                    .collect()
            })
            .collect();
        SubcomplexPair::new(stage_complex, flags)
            .expect("earlier stage is closed inside a later one")
    }

    /// The inclusion `X_p -> X_q` (`p <= q`) between extracted stages.
    pub fn stage_inclusion(&self, p: usize, q: usize) -> SimplicialMap {
        assert!(p <= q, "inclusion runs upward");
        let lower = self.stage_pair_flags_inside(q, p);
        let (upper_complex, _) = SubcomplexPair::new(self.total.clone(), self.stages[q].clone())
            .expect("validated stage")
            .subcomplex();
        let pair = SubcomplexPair::new(upper_complex.clone(), lower).expect("closed");
        pair.inclusion_simplicial_map()
    }

    /// The inclusion `X_p -> X` into the total complex.
    pub fn stage_to_total(&self, p: usize) -> SimplicialMap {
        let pair = SubcomplexPair::new(self.total.clone(), self.stages[p].clone())
            .expect("validated stage");
        pair.inclusion_simplicial_map()
    }

    /// Flags of stage `p` inside the extracted stage `q` (`p <= q`).
    fn stage_pair_flags_inside(&self, q: usize, p: usize) -> Vec<Vec<bool>> {
        let outer = SubcomplexPair::new(self.total.clone(), self.stages[q].clone())
            .expect("validated stage");
        let (stage_complex, to_total) = outer.subcomplex();
        (0..stage_complex.counts().len())
            .map(|n| {
                to_total[n]
                    .iter()
                    .map(|&global| self.stages[p][n][global])
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{sphere_delta, torus_delta};
    use crate::homology::homology;
    use crate::module::FgModule;
    use crate::ring::RingSpec;

    #[test]
    fn skeletal_stage_counts() {
        let f = Filtration::skeletal(&torus_delta());
        assert_eq!(f.len(), 3);
        assert_eq!(f.stage(0).counts(), &[1]);
        assert_eq!(f.stage(1).counts(), &[1, 3]);
        assert_eq!(f.stage(2).counts(), &[1, 3, 2]);
        let point = Filtration::skeletal(&DeltaComplex::point());
        assert_eq!(point.len(), 1);
    }

    #[test]
    fn stage_pair_relative_homology_is_concentrated() {
        let f = Filtration::skeletal(&sphere_delta(2));
        for p in 1..f.len() {
            let pair = f.stage_pair(p);
            let h = homology(&pair.quotient_chain_complex(RingSpec::Integers));
            for n in 0..=2 {
                if n == p {
                    assert!(!h.module(n).is_zero());
                } else {
                    assert!(h.module(n).is_zero(), "stage {p}, degree {n}");
                }
            }
        }
    }

    #[test]
    fn monotonicity_enforced() {
        let x = sphere_delta(1);
        let stages = vec![x.skeleton_flags(1), x.skeleton_flags(0)];
        assert!(matches!(
            Filtration::new(x, stages),
            Err(SpaceError::NotMonotone { stage: 1 })
        ));
    }

    #[test]
    fn last_stage_must_be_total() {
        let x = sphere_delta(1);
        let stages = vec![x.skeleton_flags(0)];
        assert!(matches!(
            Filtration::new(x, stages),
            Err(SpaceError::LastStageNotTotal)
        ));
    }

    #[test]
    fn stage_inclusions_compose() {
        let f = Filtration::skeletal(&torus_delta());
        let i01 = f.stage_inclusion(0, 1);
        let i12 = f.stage_inclusion(1, 2);
        let i02 = f.stage_inclusion(0, 2);
        assert_eq!(i12.compose(&i01).unwrap(), i02);
        // inclusion into the total equals the top-stage inclusion
        let top = f.stage_to_total(2);
        let h_src = homology(&top.source().chain_complex(RingSpec::Integers));
        assert_eq!(h_src.module(1), FgModule::free(RingSpec::Integers, 2));
    }
}
