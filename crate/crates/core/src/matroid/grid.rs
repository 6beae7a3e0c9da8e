//! Grid matroids: the circuit family `min(Δ^{s,t} ∪ ([kl] choose d+1))`,
//! random realizations by row and column subspaces, and the sparse low-rank
//! ideal on a `k × l` matrix `y_{i,j}`.

use std::collections::HashSet;

use rand::Rng;

use super::{dependent_contains, Matroid, PolyMap};
use crate::combinatorics::k_subsets;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{grid_hypergraph, GridSpec, Hypergraph};
use crate::linalg::Matrix;
use crate::polycore::poly::{Monomial, MonomialOrder, Polynomial, Var};
use crate::polycore::scalar::{random_nonzero, random_rational, Scalar};
use crate::polycore::{Ideal, PolyMatrix};

const REALIZE_ATTEMPTS: usize = 16;

pub fn grid_circuit_family(spec: &GridSpec) -> Result<Hypergraph> {
    let n = spec.ground_size();
    grid_hypergraph(spec)?.union(&Hypergraph::uniform(n, spec.d + 1)?)
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| random_rational(rng)).collect()).collect())
        .expect("rectangular")
}

fn draw<R: Rng + ?Sized>(spec: &GridSpec, rng: &mut R) -> Option<Matrix> {
    let GridSpec { s, t, k, l, d } = *spec;
    let expected = (s + t - 2 - d) as usize;
    let rows: Vec<Matrix> = (0..k).map(|_| random_matrix(rng, d, t - 1)).collect();
    let cols: Vec<Matrix> = (0..l).map(|_| random_matrix(rng, d, s - 1)).collect();
    let mut x = Matrix::zeros(d, k * l);
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            // U_i ∩ W_j = { a z : [a | -b] (z, w) = 0 }
            let mut stacked = Matrix::zeros(d, s + t - 2);
            for r in 0..d {
                for c in 0..t - 1 {
                    stacked.set(r, c, a.get(r, c).clone());
                }
                for c in 0..s - 1 {
                    stacked.set(r, t - 1 + c, -b.get(r, c).clone());
                }
            }
            let null = stacked.nullspace();
            if null.len() != expected {
                return None;
            }
            let mut z = vec![Scalar::from_integer(0.into()); t - 1];
            for v in &null {
                let c = random_nonzero(rng);
                for (zi, vi) in z.iter_mut().zip(v) {
                    *zi += &c * vi;
                }
            }
            let point = a.mul_vec(&z).ok()?;
            if point.iter().all(|p| p == &Scalar::from_integer(0.into())) {
                return None;
            }
            let col = j * k + i;
            for (r, p) in point.into_iter().enumerate() {
                x.set(r, col, p);
            }
        }
    }
    Some(x)
}

/// A `d × kl` rational matrix whose column `(j-1)k + i` lies in `U_i ∩ W_j`
/// for random subspaces `U_i` of dimension `t-1` and `W_j` of dimension
/// `s-1`. The result has rank `d` and every grid edge is dependent.
pub fn realize_grid_matroid<R: Rng + ?Sized>(spec: &GridSpec, rng: &mut R) -> Result<Matrix> {
    spec.validate()?;
    if !spec.in_realization_regime() {
        return invalid(format!(
            "{spec} is outside 3 <= s <= t <= l, s <= k, t <= d <= s+t-3"
        ));
    }
    let h = grid_hypergraph(spec)?;
    for _ in 0..REALIZE_ATTEMPTS {
        let Some(x) = draw(spec, rng) else { continue };
        let m = Matroid::from_matrix(x.clone());
        if m.rank() == spec.d && dependent_contains(&m, &h)? {
            return Ok(x);
        }
    }
    Err(Error::Degenerate {
        what: format!("grid realization for {spec}"),
        attempts: REALIZE_ATTEMPTS,
    })
}

fn y(i: usize, j: usize) -> Var {
    Var::new("y", &[i as u32, j as u32])
}

/// The `d`-minors of `Y`, the products over `s`-subsets of each column, and
/// the products over `t`-subsets of each row, in that order.
pub fn sparse_lowrank_ideal(spec: &GridSpec) -> Result<Ideal> {
    spec.validate()?;
    let GridSpec { s, t, k, l, d } = *spec;
    if d > k.min(l) {
        return invalid(format!("need d <= min(k, l), got d={d}"));
    }
    let ord = MonomialOrder::DegRevLex;
    let ymat = PolyMatrix::generic("y", k, l);
    let mut gens = Vec::new();
    for rows in k_subsets(k, d) {
        for cols in k_subsets(l, d) {
            gens.push(ymat.minor(&rows, &cols)?.sign_normalized(&ord));
        }
    }
    for j in 1..=l {
        for rows in k_subsets(k, s) {
            gens.push(Polynomial::term(
                Scalar::from_integer(1.into()),
                Monomial::from_powers(rows.iter().map(|&i| (y(i + 1, j), 1))),
            ));
        }
    }
    for i in 1..=k {
        for cols in k_subsets(l, t) {
            gens.push(Polynomial::term(
                Scalar::from_integer(1.into()),
                Monomial::from_powers(cols.iter().map(|&j| (y(i, j + 1), 1))),
            ));
        }
    }
    let mut seen = HashSet::new();
    gens.retain(|g| !g.is_zero() && seen.insert(g.clone()));
    let vars: Vec<Var> = (1..=k).flat_map(|i| (1..=l).map(move |j| y(i, j))).collect();
    Ideal::new(vars, gens)
}

/// Grid labels `(j-1)k + i` of the variables `y_{i,j}` occurring in `f`.
pub fn grid_label_support(f: &Polynomial, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = f
        .vars()
        .into_iter()
        .filter_map(|v| match (v.base(), v.index()) {
            ("y", &[i, j]) => Some((j as usize - 1) * k + i as usize),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out
}

/// A component of the square sparse low-rank variety with `d = s = t = n`:
/// `y_{i,j} = λ_j (a_{i,2} a_{j,1} - a_{i,1} a_{j,2})`, a column-scaled
/// skew matrix of rank at most 2 with zero diagonal. Components are listed
/// in grid order, so element `(j-1)n + i` is `y_{i,j}`.
pub fn zero_diagonal_component(n: usize) -> Result<PolyMap> {
    let a = |i: usize, c: u32| Polynomial::var(Var::new("a", &[i as u32, c]));
    let lam = |j: usize| Polynomial::var(Var::new("lambda", &[j as u32]));
    let mut params: Vec<Var> = (1..=n).flat_map(|i| [Var::new("a", &[i as u32, 1]), Var::new("a", &[i as u32, 2])]).collect();
    params.extend((1..=n).map(|j| Var::new("lambda", &[j as u32])));
    let mut comps = Vec::new();
    let mut names = Vec::new();
    for j in 1..=n {
        for i in 1..=n {
            let skew = &(&a(i, 2) * &a(j, 1)) - &(&a(i, 1) * &a(j, 2));
            comps.push(&lam(j) * &skew);
            names.push(format!("y_{i}_{j}"));
        }
    }
    PolyMap::new(params, comps)?.with_labels(names)
}
