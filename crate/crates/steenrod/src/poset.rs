//! Finite posets and their order complexes.
//!
//! A finite T0 topological space is the same thing as a finite poset; its
//! weak homotopy type is computed by the order complex, whose `n`-simplices
//! are the strictly increasing chains of length `n + 1`.

use std::collections::HashMap;

use crate::delta::DeltaComplex;
use crate::error::SpaceError;

/// A finite partial order. The relation matrix is reflexive, antisymmetric
/// and transitive by construction: arbitrary input pairs are closed
/// reflexively and transitively, then antisymmetry is asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    /// `leq[a][b]` means `a <= b`.
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds from named elements and a list of `a <= b` pairs.
    pub fn new(names: Vec<String>, relations: &[(String, String)]) -> Result<Self, SpaceError> {
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| SpaceError::UnknownElement(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| SpaceError::UnknownElement(b.clone()))?;
            leq[ia][ib] = true;
        }
        // transitive closure (Warshall)
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(SpaceError::NotAntisymmetric {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// The discrete poset on `k` points.
    pub fn antichain(k: usize) -> Self {
        let names = (0..k).map(|i| format!("p{i}")).collect();
        FinitePoset::new(names, &[]).expect("no relations to violate")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn strictly_less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn has_minimum(&self) -> bool {
        (0..self.len()).any(|m| (0..self.len()).all(|x| self.leq[m][x]))
    }

    pub fn has_maximum(&self) -> bool {
        (0..self.len()).any(|m| (0..self.len()).all(|x| self.leq[x][m]))
    }

    /// The order complex: `n`-simplices are chains `x_0 < x_1 < ... < x_n`,
    /// face `i` deletes `x_i`. Chains are enumerated in lexicographic order
    /// of their element indices, so the complex is deterministic.
    pub fn order_complex(&self) -> DeltaComplex {
        let n = self.len();
        let mut chains_by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut current: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while !current.is_empty() {
            chains_by_dim.push(current.clone());
            let mut next = Vec::new();
            for chain in &current {
                let last = *chain.last().expect("chains are nonempty");
                for b in 0..n {
                    if self.strictly_less(last, b) {
                        let mut extended = chain.clone();
                        extended.push(b);
                        next.push(extended);
                    }
                }
            }
            current = next;
        }
        if chains_by_dim.is_empty() {
            // empty poset: the empty complex
            return DeltaComplex::new(Vec::new(), Vec::new()).expect("empty complex");
        }
        let index_by_dim: Vec<HashMap<&[usize], usize>> = chains_by_dim
            .iter()
            .map(|chains| {
                chains
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.as_slice(), i))
                    .collect()
            })
            .collect();
        let counts: Vec<usize> = chains_by_dim.iter().map(Vec::len).collect();
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); counts.len()];
        for d in 1..counts.len() {
            for chain in &chains_by_dim[d] {
                let mut fs = Vec::with_capacity(d + 1);
                for omit in 0..=d {
                    let mut sub = chain.clone();
                    sub.remove(omit);
                    fs.push(index_by_dim[d - 1][sub.as_slice()]);
                }
                faces[d].push(fs);
            }
        }
        DeltaComplex::new(counts, faces).expect("chains of a poset form a delta complex")
    }
}
