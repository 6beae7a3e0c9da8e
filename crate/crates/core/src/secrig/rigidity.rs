use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, k_subsets};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::matroid::Matroid;
use crate::polycore::scalar::{format_scalar, one, parse_scalar, random_rational, zero, Scalar};

const GUARD_ATTEMPTS: usize = 3;
/// Largest vertex count for which every `K_{d+2}` is tested.
pub const CIRCUIT_VERTEX_CAP: usize = 8;

/// A graph on vertices `1..=n` with a point of `Q^d` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framework {
    d: usize,
    coords: Vec<Vec<Scalar>>,
    edges: Vec<(usize, usize)>,
}

impl Framework {
    pub fn new(d: usize, coords: Vec<Vec<Scalar>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if d == 0 {
            return invalid("configuration dimension must be at least 1");
        }
        if let Some(p) = coords.iter().position(|c| c.len() != d) {
            return invalid(format!("vertex {} has {} coordinates, expected {d}", p + 1, coords[p].len()));
        }
        let n = coords.len();
        for &(u, v) in &edges {
            if u == v {
                return invalid(format!("loop edge at vertex {u}"));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return invalid(format!("edge ({u}, {v}) outside [1, {n}]"));
            }
        }
        Ok(Self { d, coords, edges })
    }

    /// `K_n` at the given configuration, edges in lexicographic order.
    pub fn complete(d: usize, coords: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = coords.len();
        let edges = complete_edges(n);
        Self::new(d, coords, edges)
    }

    pub fn random_configuration<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<Vec<Scalar>> {
        (0..n).map(|_| (0..d).map(|_| random_rational(rng)).collect()).collect()
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn coords(&self) -> &[Vec<Scalar>] {
        &self.coords
    }
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

impl fmt::Display for Framework {
    /// `n d`, one coordinate line per vertex, then one `u v` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.d)?;
        for c in &self.coords {
            let s: Vec<String> = c.iter().map(format_scalar).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Framework {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let (hl, header) = *lines.first().ok_or_else(|| perr(1, "missing `n d` header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(hl, format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        let [n, d] = dims[..] else {
            return Err(perr(hl, "header must be `n d`".into()));
        };
        if lines.len() < 1 + n {
            return Err(perr(hl, format!("expected {n} coordinate lines")));
        }
        let mut coords = Vec::with_capacity(n);
        for &(ln, l) in &lines[1..=n] {
            coords.push(
                l.split_whitespace()
                    .map(|t| parse_scalar(t).ok_or_else(|| perr(ln, format!("bad rational `{t}`"))))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut edges = Vec::new();
        for &(ln, l) in &lines[1 + n..] {
            let e: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(ln, format!("bad vertex `{t}`"))))
                .collect::<Result<_>>()?;
            let [u, v] = e[..] else {
                return Err(perr(ln, "edge must be `u v`".into()));
            };
            edges.push((u, v));
        }
        Framework::new(d, coords, edges)
    }
}

/// `|E| × dn` matrix; the row of edge `{u, v}` holds `p_u - p_v` in the
/// columns of `u` and `p_v - p_u` in those of `v`.
pub fn rigidity_matrix(fw: &Framework) -> Result<Matrix> {
    let d = fw.d;
    let mut r = Matrix::zeros(fw.edges.len(), d * fw.n());
    for (row, &(u, v)) in fw.edges.iter().enumerate() {
        let (pu, pv) = (&fw.coords[u - 1], &fw.coords[v - 1]);
        if pu == pv {
            return invalid(format!("vertices {u} and {v} coincide"));
        }
        for c in 0..d {
            let diff = &pu[c] - &pv[c];
            r.set(row, (u - 1) * d + c, diff.clone());
            r.set(row, (v - 1) * d + c, -diff);
        }
    }
    Ok(r)
}

/// `dn - C(d+1, 2)`.
pub fn expected_rigidity_rank(n: usize, d: usize) -> usize {
    (d * n).saturating_sub(binomial(d + 1, 2))
}

/// The `d` infinitesimal translations.
pub fn translation_vectors(n: usize, d: usize) -> Vec<Vec<Scalar>> {
    (0..d)
        .map(|c| {
            let mut v = vec![zero(); d * n];
            for u in 0..n {
                v[u * d + c] = one();
            }
            v
        })
        .collect()
}

/// The `C(d, 2)` infinitesimal rotations at the configuration, one per
/// coordinate plane.
pub fn rotation_vectors(fw: &Framework) -> Vec<Vec<Scalar>> {
    let (n, d) = (fw.n(), fw.d);
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let mut v = vec![zero(); d * n];
            for u in 0..n {
                v[u * d + a] = -fw.coords[u][b].clone();
                v[u * d + b] = fw.coords[u][a].clone();
            }
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub n: usize,
    pub d: usize,
    pub rank: usize,
    pub expected_rank: usize,
    /// `K_{d+2}` vertex subsets tested, and how many gave circuits.
    pub circuits_checked: usize,
    pub circuits_ok: usize,
    /// Every row has exactly `2d` nonzero entries.
    pub row_support_ok: bool,
    /// Translations, and rotations when `d <= 3`, lie in the kernel.
    pub kernel_ok: bool,
    pub rotations_checked: bool,
    pub guard_attempts: usize,
}

impl RigidityReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank && self.circuits_ok == self.circuits_checked && self.row_support_ok && self.kernel_ok
    }
}

fn kernel_holds(r: &Matrix, vectors: &[Vec<Scalar>]) -> Result<bool> {
    for v in vectors {
        if r.mul_vec(v)?.iter().any(|x| x != &zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the rigidity matrix of `K_n` at a random configuration against
/// `dn - C(d+1, 2)`, and, for `n <= 8`, that every `K_{d+2}` edge set is a
/// circuit of the row matroid. A second configuration must give the same
/// rank.
pub fn generic_rigidity_check<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<RigidityReport> {
    if d == 0 || n < d + 1 {
        return invalid(format!("need d >= 1 and n >= d + 1, got n={n} d={d}"));
    }
    for attempt in 1..=GUARD_ATTEMPTS {
        let fw = Framework::complete(d, Framework::random_configuration(n, d, rng))?;
        let other = Framework::complete(d, Framework::random_configuration(n, d, rng))?;
        let (r, r2) = match (rigidity_matrix(&fw), rigidity_matrix(&other)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let rank = r.rank();
        if rank != r2.rank() {
            continue;
        }
        let rows = Matroid::from_matrix(r.transpose());
        let edges = complete_edges(n);
        let mut checked = 0;
        let mut ok = 0;
        if n >= d + 2 && n <= CIRCUIT_VERTEX_CAP {
            for verts in k_subsets(n, d + 2) {
                let inside: Vec<usize> = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, (u, v))| verts.contains(&(u - 1)) && verts.contains(&(v - 1)))
                    .map(|(i, _)| i + 1)
                    .collect();
                checked += 1;
                let dependent = rows.rank_of(&inside)? + 1 == inside.len();
                let minimal = (0..inside.len()).all(|skip| {
                    let rest: Vec<usize> = inside.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &e)| e).collect();
                    rows.rank_of(&rest).map(|r| r == rest.len()).unwrap_or(false)
                });
                if dependent && minimal {
                    ok += 1;
                }
            }
        }
        let row_support_ok = (0..r.rows()).all(|i| r.row(i).iter().filter(|x| *x != &zero()).count() == 2 * d);
        let mut kernel = translation_vectors(n, d);
        let rotations_checked = d <= 3;
        if rotations_checked {
            kernel.extend(rotation_vectors(&fw));
        }
        return Ok(RigidityReport {
            n,
            d,
            rank,
            expected_rank: expected_rigidity_rank(n, d),
            circuits_checked: checked,
            circuits_ok: ok,
            row_support_ok,
            kernel_ok: kernel_holds(&r, &kernel)?,
            rotations_checked,
            guard_attempts: attempt,
        });
    }
    Err(Error::GenericityGuard(format!(
        "rigidity ranks disagreed at {GUARD_ATTEMPTS} pairs of configurations"
    )))
}
