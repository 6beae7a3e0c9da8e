//! Hypergraphs on `[n]`, their determinantal ideals and varieties, and the
//! grid family.
//!
//! Vertices are 1-based labels. The ideal of `Δ` with `d` rows lives in the
//! ring of a generic `d × n` matrix `x_{i,j}`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cimodel::{CiStatement, DiscreteModel, Variable};
use crate::combinatorics::{choose, k_subsets};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::polycore::poly::{MonomialOrder, Polynomial, Var};
use crate::polycore::{Ideal, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds the inclusion-minimal family of the given edges. Edges are
    /// stored sorted, ordered by size and then lexicographically.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut e in edges {
            if e.is_empty() {
                return invalid("empty edge");
            }
            if let Some(v) = e.iter().find(|&&v| v == 0 || v > n) {
                return invalid(format!("vertex {v} outside [1, {n}]"));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("repeated vertex in edge {e:?}"));
            }
            set.insert(e);
        }
        let all: Vec<Vec<usize>> = set.into_iter().collect();
        let mut edges: Vec<Vec<usize>> = all
            .iter()
            .filter(|e| !all.iter().any(|f| f.len() < e.len() && is_subset(f, e)))
            .cloned()
            .collect();
        edges.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Union with another family on the same vertex set, re-minimized.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n {
            return invalid("hypergraphs on different vertex sets");
        }
        Hypergraph::new(self.n, self.edges.iter().chain(&other.edges).cloned())
    }

    /// All `k`-subsets of `[n]`.
    pub fn uniform(n: usize, k: usize) -> Result<Hypergraph> {
        Hypergraph::new(n, k_subsets(n, k).into_iter().map(|s| s.into_iter().map(|v| v + 1).collect()))
    }

    /// Image under a relabeling `v -> map[v - 1]`.
    pub fn relabel(&self, map: &[usize]) -> Result<Hypergraph> {
        if map.len() != self.n {
            return invalid("relabeling must cover every vertex");
        }
        Hypergraph::new(self.n, self.edges.iter().map(|e| e.iter().map(|&v| map[v - 1]).collect()))
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for e in &self.edges {
            let s: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: hl,
            msg: format!("bad vertex count `{header}`"),
        })?;
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let e = l
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: ln,
                        msg: format!("bad vertex `{t}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            edges.push(e);
        }
        Hypergraph::new(n, edges)
    }
}

/// Grid parameters: a `k × l` index grid, column edges of size `s`, row
/// edges of size `t`, and `d` matrix rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub s: usize,
    pub t: usize,
    pub k: usize,
    pub l: usize,
    pub d: usize,
}

impl GridSpec {
    pub fn new(s: usize, t: usize, k: usize, l: usize, d: usize) -> Result<Self> {
        let spec = Self { s, t, k, l, d };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.s > self.k {
            return invalid(format!("need 1 <= s <= k, got s={} k={}", self.s, self.k));
        }
        if self.t == 0 || self.t > self.l {
            return invalid(format!("need 1 <= t <= l, got t={} l={}", self.t, self.l));
        }
        if self.d == 0 {
            return invalid("need d >= 1");
        }
        Ok(())
    }

    /// `3 <= s <= t <= l`, `s <= k`, `t <= d <= s + t - 3`.
    pub fn in_realization_regime(&self) -> bool {
        let GridSpec { s, t, k, l, d } = *self;
        3 <= s && s <= t && t <= l && s <= k && t <= d && d + 3 <= s + t
    }

    /// `(s-1) + (t-1) - d`, the expected dimension of a row space meeting a
    /// column space.
    pub fn intersection_dimension(&self) -> isize {
        self.s as isize + self.t as isize - 2 - self.d as isize
    }

    pub fn ground_size(&self) -> usize {
        self.k * self.l
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} t={} k={} l={} d={}", self.s, self.t, self.k, self.l, self.d)
    }
}

/// The `k × l` label grid with entry `(j-1)k + i` at row `i`, column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridMatrix {
    pub k: usize,
    pub l: usize,
}

impl GridMatrix {
    pub fn label(&self, i: usize, j: usize) -> usize {
        (j - 1) * self.k + i
    }

    pub fn entries(&self) -> Vec<Vec<usize>> {
        (1..=self.k)
            .map(|i| (1..=self.l).map(|j| self.label(i, j)).collect())
            .collect()
    }

    /// `R_i`, 1-based.
    pub fn row_set(&self, i: usize) -> Vec<usize> {
        (1..=self.l).map(|j| self.label(i, j)).collect()
    }

    /// `C_j`, 1-based.
    pub fn column_set(&self, j: usize) -> Vec<usize> {
        (1..=self.k).map(|i| self.label(i, j)).collect()
    }

    pub fn row_sets(&self) -> Vec<Vec<usize>> {
        (1..=self.k).map(|i| self.row_set(i)).collect()
    }

    pub fn column_sets(&self) -> Vec<Vec<usize>> {
        (1..=self.l).map(|j| self.column_set(j)).collect()
    }
}

impl fmt::Display for GridMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries() {
            let s: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

pub fn grid_matrix(k: usize, l: usize) -> Result<GridMatrix> {
    if k == 0 || l == 0 {
        return invalid("grid needs k, l >= 1");
    }
    Ok(GridMatrix { k, l })
}

pub fn grid_hypergraph(spec: &GridSpec) -> Result<Hypergraph> {
    spec.validate()?;
    let g = grid_matrix(spec.k, spec.l)?;
    let rows = g.row_sets().into_iter().flat_map(|r| choose(&r, spec.t));
    let cols = g.column_sets().into_iter().flat_map(|c| choose(&c, spec.s));
    Hypergraph::new(spec.ground_size(), rows.chain(cols))
}

/// The generic `d × n` matrix `x_{i,j}`.
pub fn generic_matrix(d: usize, n: usize) -> PolyMatrix {
    PolyMatrix::generic("x", d, n)
}

pub fn matrix_coordinates(d: usize, n: usize) -> Vec<Var> {
    (1..=d as u32)
        .flat_map(|i| (1..=n as u32).map(move |j| Var::new("x", &[i, j])))
        .collect()
}

/// Sign-normalized minors `[A|B]_X` for every edge `B` with `|B| <= d`.
pub fn hypergraph_generators(h: &Hypergraph, d: usize) -> Result<Vec<Polynomial>> {
    let x = generic_matrix(d, h.n());
    let ord = MonomialOrder::DegRevLex;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in h.edges().iter().filter(|e| e.len() <= d) {
        let cols: Vec<usize> = e.iter().map(|v| v - 1).collect();
        for rows in k_subsets(d, e.len()) {
            let g = x.minor(&rows, &cols)?.sign_normalized(&ord);
            if !g.is_zero() && seen.insert(g.clone()) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

pub fn hypergraph_ideal(h: &Hypergraph, d: usize) -> Result<Ideal> {
    if d == 0 {
        return invalid("need d >= 1");
    }
    Ideal::new(matrix_coordinates(d, h.n()), hypergraph_generators(h, d)?)
}

/// `X ∈ V_Δ`: every edge `F` has `rank X_F < |F|`. Edges larger than the row
/// count hold automatically.
pub fn in_variety(h: &Hypergraph, x: &Matrix) -> Result<bool> {
    if x.cols() != h.n() {
        return invalid(format!("matrix has {} columns, hypergraph has {} vertices", x.cols(), h.n()));
    }
    Ok(h.edges().iter().all(|e| {
        let cols: Vec<usize> = e.iter().map(|v| v - 1).collect();
        x.column_rank(&cols) < e.len()
    }))
}

/// Assignment of `x_{i,j}` to the entries of a numeric matrix.
pub fn matrix_assignment(x: &Matrix) -> crate::polycore::Assignment {
    let mut a = crate::polycore::Assignment::new();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            a.insert(Var::new("x", &[i as u32 + 1, j as u32 + 1]), x.get(i, j).clone());
        }
    }
    a
}

/// The CI model whose ideal is the grid hypergraph ideal: observed `X, Y1,
/// Y2` of cardinalities `d, k, l`, hidden `H1, H2` of cardinalities `s-1,
/// t-1`, and the statements `X _||_ Y1 | Y2 H1*`, `X _||_ Y2 | Y1 H2*`.
pub fn grid_ci_correspondence(spec: &GridSpec) -> Result<(DiscreteModel, Vec<CiStatement>)> {
    spec.validate()?;
    if spec.s < 2 || spec.t < 2 {
        return invalid("the correspondence needs s, t >= 2");
    }
    let model = DiscreteModel::new(vec![
        Variable::observed("X", spec.d),
        Variable::observed("Y1", spec.k),
        Variable::observed("Y2", spec.l),
        Variable::hidden("H1", spec.s - 1),
        Variable::hidden("H2", spec.t - 1),
    ])?;
    let stmts = vec![
        CiStatement::new(&["X"], &["Y1"], &["Y2", "H1"]),
        CiStatement::new(&["X"], &["Y2"], &["Y1", "H2"]),
    ];
    Ok((model, stmts))
}

/// `p_{x,y1,y2} -> x_{x,(y2-1)k+y1}`; other variables are kept.
pub fn ci_to_grid_var(v: &Var, k: usize) -> Var {
    match (v.base(), v.index()) {
        ("p", &[x, y1, y2]) => Var::new("x", &[x, (y2 - 1) * k as u32 + y1]),
        _ => v.clone(),
    }
}

/// Rewrites CI generators in grid coordinates and re-normalizes signs.
pub fn ci_generators_as_grid(gens: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let ord = MonomialOrder::DegRevLex;
    gens.iter()
        .map(|g| g.rename(|v| ci_to_grid_var(v, k)).sign_normalized(&ord))
        .collect()
}

/// Sign-normalized generator sets compared as sets.
pub fn same_generator_set(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ord = MonomialOrder::DegRevLex;
    let norm = |v: &[Polynomial]| -> HashSet<Polynomial> { v.iter().map(|g| g.sign_normalized(&ord)).collect() };
    norm(a) == norm(b)
}

/// Small hypergraphs used by the verifications.
pub mod fixtures {
    use super::Hypergraph;

    /// Three triples through vertex 1 on seven points.
    pub fn concurrent_triples() -> Hypergraph {
        Hypergraph::new(7, vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7]]).expect("valid fixture")
    }

    /// Sixteen triples on twelve points: three parallel lines `123, 456,
    /// 789`, the line `10 11 12`, and all triples of `{10,1,4,7}`,
    /// `{11,2,5,8}`, `{12,3,6,9}` that meet the grid lines. Barred labels
    /// `1̄, 2̄, 3̄` are `10, 11, 12`.
    pub fn twelve_points() -> Hypergraph {
        let edges = [
            [1, 2, 3],
            [4, 5, 6],
            [7, 8, 9],
            [10, 11, 12],
            [1, 4, 7],
            [10, 1, 4],
            [10, 4, 7],
            [10, 1, 7],
            [2, 5, 8],
            [11, 5, 8],
            [11, 2, 8],
            [11, 2, 5],
            [3, 6, 9],
            [12, 6, 9],
            [12, 3, 9],
            [12, 3, 6],
        ];
        Hypergraph::new(12, edges.iter().map(|e| e.to_vec())).expect("valid fixture")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cimodel::ci_ideal;
    use crate::polycore::scalar::random_rational;
    use crate::polycore::Assignment;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        Matrix::from_rows((0..r).map(|_| (0..c).map(|_| random_rational(rng)).collect()).collect()).unwrap()
    }

    #[test]
    fn grid_matrix_labels() {
        let g = grid_matrix(4, 7).unwrap();
        let e = g.entries();
        assert_eq!(e[0], vec![1, 5, 9, 13, 17, 21, 25]);
        assert_eq!(e[3], vec![4, 8, 12, 16, 20, 24, 28]);
        assert_eq!(grid_matrix(1, 1).unwrap().to_string(), "1\n");
        let g = grid_matrix(3, 4).unwrap();
        assert_eq!(g.column_set(1), vec![1, 2, 3]);
        assert_eq!(g.column_set(4), vec![10, 11, 12]);
        assert_eq!(g.row_set(2), vec![2, 5, 8, 11]);
        assert!(grid_matrix(0, 3).is_err());
    }

    #[test]
    fn grid_rows_and_columns_partition() {
        for (k, l) in [(1, 1), (2, 3), (3, 4), (4, 7)] {
            let g = grid_matrix(k, l).unwrap();
            let all: BTreeSet<usize> = (1..=k * l).collect();
            let rows: BTreeSet<usize> = g.row_sets().concat().into_iter().collect();
            let cols: BTreeSet<usize> = g.column_sets().concat().into_iter().collect();
            assert_eq!(rows, all);
            assert_eq!(cols, all);
            for r in g.row_sets() {
                for c in g.column_sets() {
                    assert_eq!(r.iter().filter(|v| c.contains(v)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn grid_hypergraph_sizes() {
        let h = grid_hypergraph(&GridSpec::new(3, 3, 3, 4, 3).unwrap()).unwrap();
        assert_eq!(h.edges().len(), 4 + 12);
        let h = grid_hypergraph(&GridSpec::new(2, 3, 4, 7, 3).unwrap()).unwrap();
        // 4 rows of C(7,3) plus 7 columns of C(4,2)
        assert_eq!(h.edges().len(), 4 * 35 + 7 * 6);
        assert!(h.edges().contains(&vec![1, 5, 9]));
        assert!(h.edges().contains(&vec![27, 28]));
        let h = grid_hypergraph(&GridSpec::new(1, 1, 2, 3, 2).unwrap()).unwrap();
        assert_eq!(h.edges(), (1..=6).map(|v| vec![v]).collect::<Vec<_>>());
    }

    #[test]
    fn normalization_is_minimal_and_idempotent() {
        let h = Hypergraph::new(4, vec![vec![1, 2], vec![2, 1, 3], vec![3, 4], vec![1, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![1, 2], vec![3, 4]]);
        let again = Hypergraph::new(4, h.edges().to_vec()).unwrap();
        assert_eq!(again, h);
        assert!(Hypergraph::new(3, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let h = fixtures::concurrent_triples();
        let s = h.to_string();
        assert_eq!(s, "7\n1 2 3\n1 4 5\n1 6 7\n");
        assert_eq!(s.parse::<Hypergraph>().unwrap(), h);
        let empty: Hypergraph = "5\n".parse().unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn concurrent_triples_ideal() {
        let ideal = hypergraph_ideal(&fixtures::concurrent_triples(), 3).unwrap();
        let x = generic_matrix(3, 7);
        let expect: Vec<Polynomial> = [[0, 1, 2], [0, 3, 4], [0, 5, 6]]
            .iter()
            .map(|c| x.minor(&[0, 1, 2], c).unwrap())
            .collect();
        assert_eq!(ideal.generators().len(), 3);
        assert!(same_generator_set(ideal.generators(), &expect));
    }

    #[test]
    fn singleton_edge_gives_column_entries() {
        let h = Hypergraph::new(3, vec![vec![2]]).unwrap();
        let g = hypergraph_generators(&h, 2).unwrap();
        assert_eq!(g, vec![Polynomial::var(Var::new("x", &[1, 2])), Polynomial::var(Var::new("x", &[2, 2]))]);
    }

    #[test]
    fn oversized_edges_give_no_generators_but_hold_in_variety() {
        let h = Hypergraph::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert!(hypergraph_generators(&h, 3).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(in_variety(&h, &random_matrix(&mut rng, 3, 4)).unwrap());
    }

    #[test]
    fn variety_membership_matches_generator_vanishing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = fixtures::twelve_points();
        let gens = hypergraph_generators(&h, 3).unwrap();
        assert_eq!(gens.len(), 16);
        let vanish = |x: &Matrix| -> bool {
            let a: Assignment = matrix_assignment(x);
            gens.iter().all(|g| g.evaluate(&a).unwrap().is_zero())
        };
        // rank <= 2 points are inside, generic points are not
        for _ in 0..5 {
            let x = random_matrix(&mut rng, 3, 2).mul(&random_matrix(&mut rng, 2, 12)).unwrap();
            assert!(in_variety(&h, &x).unwrap());
            assert!(vanish(&x));
            let y = random_matrix(&mut rng, 3, 12);
            assert!(!in_variety(&h, &y).unwrap());
            assert!(!vanish(&y));
        }
        assert!(in_variety(&h, &Matrix::zeros(3, 12)).unwrap());
        assert!(in_variety(&h, &Matrix::zeros(3, 11)).is_err());
    }

    #[test]
    fn twelve_point_fixture_is_the_three_by_four_grid() {
        let grid = grid_hypergraph(&GridSpec::new(3, 3, 3, 4, 3).unwrap()).unwrap();
        assert_eq!(fixtures::twelve_points(), grid);
    }

    #[test]
    fn correspondence_matches_on_the_three_by_four_grid() {
        let spec = GridSpec::new(3, 3, 3, 4, 3).unwrap();
        let (model, stmts) = grid_ci_correspondence(&spec).unwrap();
        let cards: Vec<usize> = model.vars().iter().map(|v| v.card).collect();
        assert_eq!(cards, vec![3, 3, 4, 2, 2]);
        let ci = ci_ideal(&stmts, &model).unwrap();
        let hg = hypergraph_ideal(&grid_hypergraph(&spec).unwrap(), 3).unwrap();
        assert_eq!(ci.generators().len(), 16);
        assert!(same_generator_set(&ci_generators_as_grid(ci.generators(), spec.k), hg.generators()));
    }

    #[test]
    fn correspondence_with_trivial_hidden_variables() {
        let spec = GridSpec::new(2, 2, 2, 3, 2).unwrap();
        let (model, stmts) = grid_ci_correspondence(&spec).unwrap();
        let ci = ci_ideal(&stmts, &model).unwrap();
        assert!(ci.generators().iter().all(|g| g.total_degree() == Some(2)));
        let hg = hypergraph_ideal(&grid_hypergraph(&spec).unwrap(), 2).unwrap();
        assert!(same_generator_set(&ci_generators_as_grid(ci.generators(), 2), hg.generators()));
        assert!(grid_ci_correspondence(&GridSpec::new(1, 2, 2, 3, 2).unwrap()).is_err());
    }

    #[test]
    fn regime_flag() {
        assert!(GridSpec::new(3, 3, 3, 3, 3).unwrap().in_realization_regime());
        assert_eq!(GridSpec::new(3, 3, 3, 3, 3).unwrap().intersection_dimension(), 1);
        assert!(!GridSpec::new(3, 3, 3, 3, 4).unwrap().in_realization_regime());
        assert!(!GridSpec::new(2, 3, 4, 7, 3).unwrap().in_realization_regime());
        assert!(GridSpec::new(4, 3, 3, 3, 3).is_err());
    }
}
