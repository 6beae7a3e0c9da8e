//! Matroids on `[n]` given by a matrix realization or an explicit circuit
//! family.
//!
//! Elements are 1-based labels in the public API. Circuit machinery works on
//! `u32` bitmasks and is capped at `CIRCUIT_CAP` elements.

mod algebraic;
mod arrangement;
mod grid;

pub use algebraic::{algebraic_matroid, PolyMap};
pub use arrangement::{arrangement_signature, four_line_arrangements, ArrangementSignature};
pub use grid::{grid_circuit_family, grid_label_support, realize_grid_matroid, sparse_lowrank_ideal, zero_diagonal_component};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::k_subsets;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::Matrix;

/// Largest ground set for circuit enumeration and axiom checks.
pub const CIRCUIT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
enum Repr {
    Linear(Matrix),
    Circuits(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matroid {
    n: usize,
    repr: Repr,
}

fn mask_of(set0: &[usize]) -> u32 {
    set0.iter().fold(0, |m, &i| m | (1 << i))
}

fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn labels(mask: u32) -> Vec<usize> {
    elements(mask).into_iter().map(|i| i + 1).collect()
}

fn size_then_lex(a: &u32, b: &u32) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| labels(*a).cmp(&labels(*b)))
}

fn check_cap(n: usize) -> Result<()> {
    if n > CIRCUIT_CAP {
        return Err(Error::TooLarge(format!("{n} elements, circuit machinery is capped at {CIRCUIT_CAP}")));
    }
    Ok(())
}

impl Matroid {
    /// Column matroid of `x`.
    pub fn from_matrix(x: Matrix) -> Self {
        Self {
            n: x.cols(),
            repr: Repr::Linear(x),
        }
    }

    /// Matroid given by its circuits; the family must satisfy the circuit
    /// axioms.
    pub fn from_circuits(n: usize, circuits: &[Vec<usize>]) -> Result<Self> {
        if !is_circuit_family(n, circuits)? {
            return invalid("family violates the circuit axioms");
        }
        let mut masks: Vec<u32> = circuits
            .iter()
            .map(|c| mask_of(&c.iter().map(|v| v - 1).collect::<Vec<_>>()))
            .collect();
        masks.sort_by(size_then_lex);
        masks.dedup();
        Ok(Self {
            n,
            repr: Repr::Circuits(masks),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.repr {
            Repr::Linear(x) => Some(x),
            Repr::Circuits(_) => None,
        }
    }

    fn check_labels(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(set.len());
        for &v in set {
            if v == 0 || v > self.n {
                return invalid(format!("element {v} outside [1, {}]", self.n));
            }
            if out.contains(&(v - 1)) {
                return invalid(format!("element {v} repeated"));
            }
            out.push(v - 1);
        }
        Ok(out)
    }

    fn rank0(&self, set0: &[usize]) -> usize {
        match &self.repr {
            Repr::Linear(x) => x.column_rank(set0),
            Repr::Circuits(cs) => {
                let mut indep = 0u32;
                for &e in set0 {
                    let trial = indep | (1 << e);
                    if !cs.iter().any(|&c| c & (1 << e) != 0 && c & !trial == 0) {
                        indep = trial;
                    }
                }
                indep.count_ones() as usize
            }
        }
    }

    /// Rank of a set of 1-based elements.
    pub fn rank_of(&self, set: &[usize]) -> Result<usize> {
        Ok(self.rank0(&self.check_labels(set)?))
    }

    pub fn rank(&self) -> usize {
        self.rank0(&(0..self.n).collect::<Vec<_>>())
    }

    pub fn is_dependent(&self, set: &[usize]) -> Result<bool> {
        Ok(self.rank_of(set)? < set.len())
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        Ok(!self.is_dependent(set)?)
    }

    fn circuit_masks(&self) -> Result<Vec<u32>> {
        check_cap(self.n)?;
        if let Repr::Circuits(cs) = &self.repr {
            return Ok(cs.clone());
        }
        let r = self.rank();
        let mut found: Vec<u32> = Vec::new();
        for size in 1..=(r + 1).min(self.n) {
            let candidates: Vec<u32> = k_subsets(self.n, size)
                .iter()
                .map(|s| mask_of(s))
                .filter(|&m| !found.iter().any(|&c| c & !m == 0))
                .collect();
            let circuits: Vec<u32> = candidates
                .into_par_iter()
                .filter(|&m| self.rank0(&elements(m)) < size)
                .collect();
            found.extend(circuits);
        }
        Ok(found)
    }

    /// Circuits as sorted 1-based sets, ordered by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.circuit_masks()?.into_iter().map(labels).collect())
    }

    pub fn circuit_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.n, self.circuits()?)
    }

    /// Elements forming single-element circuits.
    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.rank0(&[v - 1]) == 0).collect()
    }

    /// The matroid on `set`, relabeled `1..=|set|` in the given order.
    pub fn restriction(&self, set: &[usize]) -> Result<Matroid> {
        let idx = self.check_labels(set)?;
        match &self.repr {
            Repr::Linear(x) => Ok(Matroid::from_matrix(x.select_columns(&idx))),
            Repr::Circuits(cs) => {
                let inside = mask_of(&idx);
                let mut masks: Vec<u32> = cs
                    .iter()
                    .filter(|&&c| c & !inside == 0)
                    .map(|&c| {
                        idx.iter()
                            .enumerate()
                            .filter(|(_, &e)| c & (1 << e) != 0)
                            .fold(0u32, |m, (pos, _)| m | (1 << pos))
                    })
                    .collect();
                masks.sort_by(size_then_lex);
                Ok(Matroid {
                    n: idx.len(),
                    repr: Repr::Circuits(masks),
                })
            }
        }
    }

    /// `n` on the first line, then one circuit per line.
    pub fn to_text(&self) -> Result<String> {
        Ok(self.circuit_hypergraph()?.to_string())
    }

    pub fn from_text(s: &str) -> Result<Matroid> {
        let h: Hypergraph = s.parse()?;
        Matroid::from_circuits(h.n(), h.edges())
    }
}

/// Antichain plus circuit elimination, checked exhaustively: for distinct
/// circuits `C1, C2` and `e ∈ C1 ∩ C2` some circuit lies in `(C1 ∪ C2) - e`.
pub fn is_circuit_family(n: usize, family: &[Vec<usize>]) -> Result<bool> {
    check_cap(n)?;
    let mut masks = Vec::with_capacity(family.len());
    for c in family {
        if c.is_empty() {
            return Ok(false);
        }
        if c.iter().any(|&v| v == 0 || v > n) {
            return invalid(format!("circuit {c:?} outside [1, {n}]"));
        }
        let m = mask_of(&c.iter().map(|v| v - 1).collect::<Vec<_>>());
        if m.count_ones() as usize != c.len() {
            return invalid(format!("repeated element in {c:?}"));
        }
        masks.push(m);
    }
    masks.sort_unstable();
    masks.dedup();
    for (i, &a) in masks.iter().enumerate() {
        if masks.iter().enumerate().any(|(j, &b)| i != j && b & !a == 0) {
            return Ok(false);
        }
    }
    let ok = masks.par_iter().enumerate().all(|(i, &a)| {
        masks[i + 1..].iter().all(|&b| {
            let union = a | b;
            elements(a & b).into_iter().all(|e| {
                let without = union & !(1 << e);
                masks.iter().any(|&c| c & !without == 0)
            })
        })
    });
    Ok(ok)
}

/// Every edge of `h` is dependent in `m`.
pub fn dependent_contains(m: &Matroid, h: &Hypergraph) -> Result<bool> {
    if m.n() != h.n() {
        return invalid(format!("matroid on {} elements, hypergraph on {}", m.n(), h.n()));
    }
    for e in h.edges() {
        if !m.is_dependent(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{int, random_rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Minimal dependent sets by brute force over all subsets.
    fn brute_circuits(x: &Matrix) -> Vec<Vec<usize>> {
        let n = x.cols();
        let dep = |m: u32| x.select_columns(&elements(m)).rank() < m.count_ones() as usize;
        let mut out: Vec<u32> = (1u32..(1 << n))
            .filter(|&m| dep(m) && elements(m).iter().all(|&e| !dep(m & !(1 << e))))
            .collect();
        out.sort_by(size_then_lex);
        out.into_iter().map(labels).collect()
    }

    #[test]
    fn identity_has_no_circuits() {
        let m = Matroid::from_matrix(Matrix::identity(3));
        assert_eq!(m.rank(), 3);
        assert!(m.circuits().unwrap().is_empty());
    }

    #[test]
    fn parallel_elements() {
        let x = Matrix::from_i64(&[&[1, 2, 0], &[1, 2, 1]]);
        let m = Matroid::from_matrix(x);
        assert_eq!(m.circuits().unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn loops_are_dependent() {
        let x = Matrix::from_i64(&[&[0, 1], &[0, 3]]);
        let m = Matroid::from_matrix(x);
        assert_eq!(m.loops(), vec![1]);
        let h = Hypergraph::new(2, vec![vec![1]]).unwrap();
        assert!(dependent_contains(&m, &h).unwrap());
        let free = Matroid::from_matrix(Matrix::identity(2));
        assert!(!dependent_contains(&free, &Hypergraph::new(2, vec![vec![1, 2]]).unwrap()).unwrap());
    }

    #[test]
    fn circuits_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..6 {
            // small integer entries so that dependencies actually occur
            let rows: Vec<Vec<_>> = (0..3)
                .map(|_| (0..7).map(|_| int(rand::Rng::gen_range(&mut rng, -1..=1))).collect())
                .collect();
            let x = Matrix::from_rows(rows).unwrap();
            let m = Matroid::from_matrix(x.clone());
            assert_eq!(m.circuits().unwrap(), brute_circuits(&x), "trial {trial}");
        }
    }

    #[test]
    fn rank_agrees_with_elimination_on_every_subset() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = Matrix::from_rows((0..3).map(|_| (0..2).map(|_| random_rational(&mut rng)).collect()).collect()).unwrap();
        let b = Matrix::from_rows((0..2).map(|_| (0..8).map(|_| random_rational(&mut rng)).collect()).collect()).unwrap();
        let x = a.mul(&b).unwrap();
        let m = Matroid::from_matrix(x.clone());
        for mask in 0u32..(1 << 8) {
            let set = labels(mask);
            assert_eq!(m.rank_of(&set).unwrap(), x.select_columns(&elements(mask)).rank());
        }
    }

    #[test]
    fn circuit_family_axioms() {
        assert!(is_circuit_family(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap());
        assert!(!is_circuit_family(3, &[vec![1, 2], vec![1, 2, 3]]).unwrap());
        // elimination fails: {1,2} and {2,3} need a circuit inside {1,3}
        assert!(!is_circuit_family(3, &[vec![1, 2], vec![2, 3]]).unwrap());
        assert!(is_circuit_family(4, &[]).unwrap());
        assert!(is_circuit_family(17, &[]).is_err());
    }

    #[test]
    fn circuit_representation_agrees_with_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rows: Vec<Vec<_>> = (0..3)
            .map(|_| (0..6).map(|_| int(rand::Rng::gen_range(&mut rng, -1..=1))).collect())
            .collect();
        let lin = Matroid::from_matrix(Matrix::from_rows(rows).unwrap());
        let circ = Matroid::from_circuits(6, &lin.circuits().unwrap()).unwrap();
        for mask in 0u32..(1 << 6) {
            assert_eq!(lin.rank_of(&labels(mask)).unwrap(), circ.rank_of(&labels(mask)).unwrap());
        }
        let text = circ.to_text().unwrap();
        assert_eq!(Matroid::from_text(&text).unwrap(), circ);
    }

    #[test]
    fn restrictions() {
        let x = Matrix::from_i64(&[&[1, 0, 1, 2], &[0, 1, 1, 0]]);
        let m = Matroid::from_matrix(x);
        let empty = m.restriction(&[]).unwrap();
        assert_eq!((empty.n(), empty.rank()), (0, 0));
        let r = m.restriction(&[4, 1]).unwrap();
        assert_eq!(r.circuits().unwrap(), vec![vec![1, 2]]);
        let c = Matroid::from_circuits(4, &m.circuits().unwrap()).unwrap();
        assert_eq!(c.restriction(&[4, 1]).unwrap().circuits().unwrap(), vec![vec![1, 2]]);
        assert!(m.restriction(&[5]).is_err());
    }

    #[test]
    fn enumeration_cap() {
        let m = Matroid::from_matrix(Matrix::identity(17));
        assert!(matches!(m.circuits(), Err(Error::TooLarge(_))));
        assert_eq!(m.rank(), 17);
    }
}
