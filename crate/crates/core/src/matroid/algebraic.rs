//! Algebraic matroids of parametrized varieties, read off the Jacobian at
//! random rational points.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Matroid, CIRCUIT_CAP};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::polycore::poly::{Assignment, Polynomial, Var};
use crate::polycore::scalar::{random_rational, Scalar};

const GUARD_ATTEMPTS: usize = 3;

/// A polynomial map `θ ↦ (φ_1(θ), ..., φ_m(θ))` with named components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMap {
    params: Vec<Var>,
    components: Vec<Polynomial>,
    labels: Vec<String>,
}

impl PolyMap {
    pub fn new(params: Vec<Var>, components: Vec<Polynomial>) -> Result<Self> {
        let declared: BTreeSet<&Var> = params.iter().collect();
        if declared.len() != params.len() {
            return invalid("duplicate parameter");
        }
        for (i, c) in components.iter().enumerate() {
            if let Some(v) = c.vars().into_iter().find(|v| !declared.contains(v)) {
                return invalid(format!("component {} uses undeclared parameter {v}", i + 1));
            }
        }
        let labels = (1..=components.len()).map(|i| i.to_string()).collect();
        Ok(Self {
            params,
            components,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.components.len() {
            return invalid("one label per component required");
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `θ ↦ θ` on `n` coordinates.
    pub fn identity(n: usize) -> Self {
        let params: Vec<Var> = (1..=n as u32).map(|i| Var::new("t", &[i])).collect();
        let comps = params.iter().cloned().map(Polynomial::var).collect();
        Self::new(params, comps).expect("well formed")
    }

    /// `θ ↦ (x_1·θ, ..., x_n·θ)` for the columns `x_j` of `x`.
    pub fn linear(x: &Matrix) -> Self {
        let params: Vec<Var> = (1..=x.rows() as u32).map(|i| Var::new("t", &[i])).collect();
        let comps = (0..x.cols())
            .map(|j| {
                params.iter().enumerate().fold(Polynomial::zero(), |acc, (i, v)| {
                    acc + Polynomial::var(v.clone()).scale(x.get(i, j))
                })
            })
            .collect();
        Self::new(params, comps).expect("well formed")
    }

    /// `(A, B) ↦ AB` for `A` of size `m × r` and `B` of size `r × n`.
    /// Components are the entries in column-major order, labeled `ij`.
    pub fn matrix_product(m: usize, n: usize, r: usize) -> Self {
        let a = |i: usize, c: usize| Var::new("a", &[i as u32, c as u32]);
        let b = |c: usize, j: usize| Var::new("b", &[c as u32, j as u32]);
        let mut params: Vec<Var> = (1..=m).flat_map(|i| (1..=r).map(move |c| a(i, c))).collect();
        params.extend((1..=r).flat_map(|c| (1..=n).map(move |j| b(c, j))));
        let mut comps = Vec::new();
        let mut labels = Vec::new();
        for j in 1..=n {
            for i in 1..=m {
                let entry = (1..=r).fold(Polynomial::zero(), |acc, c| {
                    acc + &Polynomial::var(a(i, c)) * &Polynomial::var(b(c, j))
                });
                comps.push(entry);
                labels.push(if m < 10 && n < 10 { format!("{i}{j}") } else { format!("{i}_{j}") });
            }
        }
        Self::new(params, comps)
            .and_then(|p| p.with_labels(labels))
            .expect("well formed")
    }

    /// Rank-one `m × n` matrices `u v^T`.
    pub fn segre(m: usize, n: usize) -> Self {
        Self::matrix_product(m, n, 1)
    }

    /// `{l1,l2,...}` for a set of 1-based component indices.
    pub fn label_set(&self, set: &[usize]) -> String {
        let names: Vec<&str> = set.iter().map(|&i| self.labels[i - 1].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        self.params.iter().map(|v| (v.clone(), random_rational(rng))).collect()
    }

    pub fn evaluate(&self, point: &Assignment) -> Result<Vec<Scalar>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    fn derivatives(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|c| self.params.iter().map(|v| c.derivative(v)).collect())
            .collect()
    }

    /// `m × r` Jacobian `∂φ_i/∂θ_j` at `point`.
    pub fn jacobian_at(&self, point: &Assignment) -> Result<Matrix> {
        jacobian(&self.derivatives(), point)
    }
}

fn jacobian(derivs: &[Vec<Polynomial>], point: &Assignment) -> Result<Matrix> {
    let rows = derivs
        .iter()
        .map(|row| row.iter().map(|d| d.evaluate(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

impl fmt::Display for PolyMap {
    /// `params ...` line, then `label: component` per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|v| v.to_string()).collect();
        writeln!(f, "params {}", ps.join(" "))?;
        for (l, c) in self.labels.iter().zip(&self.components) {
            writeln!(f, "{l}: {c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PolyMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut params = None;
        let mut comps = Vec::new();
        let mut labels = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |e: Error| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            };
            if let Some(rest) = line.strip_prefix("params") {
                params = Some(
                    rest.split_whitespace()
                        .map(|t| t.parse::<Var>().map_err(perr))
                        .collect::<Result<Vec<_>>>()?,
                );
                continue;
            }
            let (label, body) = match line.split_once(':') {
                Some((l, b)) => (l.trim().to_string(), b),
                None => ((comps.len() + 1).to_string(), line),
            };
            comps.push(body.parse::<Polynomial>().map_err(perr)?);
            labels.push(label);
        }
        let params = params.ok_or(Error::Parse {
            line: 1,
            msg: "missing `params` line".into(),
        })?;
        PolyMap::new(params, comps)?.with_labels(labels)
    }
}

fn fingerprint(m: &Matroid) -> Result<(usize, Option<Vec<Vec<usize>>>)> {
    let circuits = if m.n() <= CIRCUIT_CAP {
        Some(m.circuits()?)
    } else {
        None
    };
    Ok((m.rank(), circuits))
}

/// Column matroid of the transposed Jacobian at a random rational point:
/// a set of components is independent iff their gradients are. The same
/// matroid must come out at a second independent point; otherwise the pair
/// is redrawn, and persistent disagreement is an error.
pub fn algebraic_matroid<R: Rng + ?Sized>(phi: &PolyMap, rng: &mut R) -> Result<Matroid> {
    let derivs = phi.derivatives();
    let draw = |rng: &mut R| -> Result<Matroid> {
        let j = jacobian(&derivs, &phi.random_point(rng))?;
        Ok(Matroid::from_matrix(if phi.components.is_empty() {
            Matrix::zeros(phi.params.len(), 0)
        } else {
            j.transpose()
        }))
    };
    for _ in 0..GUARD_ATTEMPTS {
        let first = draw(rng)?;
        let second = draw(rng)?;
        if fingerprint(&first)? == fingerprint(&second)? {
            return Ok(first);
        }
    }
    Err(Error::GenericityGuard(format!(
        "Jacobian matroids disagreed at {GUARD_ATTEMPTS} pairs of random points"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segre_two_by_two() {
        let phi = PolyMap::segre(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let m = algebraic_matroid(&phi, &mut rng).unwrap();
        assert_eq!(m.rank(), 3);
        let circuits = m.circuits().unwrap();
        assert_eq!(circuits, vec![vec![1, 2, 3, 4]]);
        let mut names: Vec<String> = phi.labels().to_vec();
        names.sort();
        assert_eq!(names, vec!["11", "12", "21", "22"]);
    }

    #[test]
    fn rank_two_three_by_three() {
        let phi = PolyMap::matrix_product(3, 3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let m = algebraic_matroid(&phi, &mut rng).unwrap();
        assert_eq!(m.rank(), 8);
        assert_eq!(m.circuits().unwrap(), vec![(1..=9).collect::<Vec<_>>()]);
    }

    #[test]
    fn identity_is_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let m = algebraic_matroid(&PolyMap::identity(4), &mut rng).unwrap();
        assert_eq!(m.rank(), 4);
        assert!(m.circuits().unwrap().is_empty());
    }

    #[test]
    fn linear_map_gives_the_column_matroid() {
        let x = Matrix::from_i64(&[&[1, 0, 1, 2, 0], &[0, 1, 1, 0, 0], &[0, 0, 0, 0, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let alg = algebraic_matroid(&PolyMap::linear(&x), &mut rng).unwrap();
        assert_eq!(alg.circuits().unwrap(), Matroid::from_matrix(x).circuits().unwrap());
    }

    #[test]
    fn text_roundtrip() {
        let phi = PolyMap::segre(2, 2);
        let parsed: PolyMap = phi.to_string().parse().unwrap();
        assert_eq!(parsed, phi);
        let p: PolyMap = "params u v\nu^2\nuv: u * v\n".parse().unwrap();
        assert_eq!(p.labels(), &["1".to_string(), "uv".to_string()]);
        assert!("params u\nu * w\n".parse::<PolyMap>().is_err());
        let pt: Assignment = [(Var::named("u"), int(2)), (Var::named("v"), int(3))].into_iter().collect();
        assert_eq!(p.evaluate(&pt).unwrap(), vec![int(4), int(6)]);
        assert_eq!(phi.label_set(&[1, 2]), "{11,21}");
    }
}
