//! Discrete models, joint probability tensors, flattenings, and CI ideals
//! with hidden variables.
//!
//! Coordinates of the ring are `p_{i1,...,in}` over the observed variables in
//! declared order, states 1-based. A statement `A _||_ B | C` with hidden
//! part of total cardinality `h` contributes all `(h+1)`-minors of the
//! `A`-states by `B`-states block for every joint state of the observed part
//! of `C`; observed variables outside `A ∪ B ∪ C` are summed out.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{joint_states, k_subsets};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::polycore::poly::{Assignment, MonomialOrder, Polynomial, Var};
use crate::polycore::scalar::{format_scalar, parse_scalar, random_simplex_point, Scalar};
use crate::polycore::{Ideal, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub card: usize,
    pub hidden: bool,
}

impl Variable {
    pub fn observed(name: &str, card: usize) -> Self {
        Self {
            name: name.into(),
            card,
            hidden: false,
        }
    }

    pub fn hidden(name: &str, card: usize) -> Self {
        Self {
            name: name.into(),
            card,
            hidden: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteModel {
    vars: Vec<Variable>,
}

impl DiscreteModel {
    pub fn new(vars: Vec<Variable>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if v.name.is_empty() || v.name.contains(['*', ',', '{', '}', '|', ' ']) {
                return invalid(format!("bad variable name `{}`", v.name));
            }
            if !seen.insert(v.name.as_str()) {
                return invalid(format!("duplicate variable `{}`", v.name));
            }
            if v.card == 0 {
                return invalid(format!("variable `{}` has cardinality 0", v.name));
            }
        }
        if vars.iter().all(|v| v.hidden) {
            return invalid("model needs at least one observed variable");
        }
        Ok(Self { vars })
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var(&self, name: &str) -> Option<&Variable> {
        self.vars.iter().find(|v| v.name == name)
    }

    fn position(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable `{name}`")))
    }

    pub fn observed(&self) -> Vec<&Variable> {
        self.vars.iter().filter(|v| !v.hidden).collect()
    }

    pub fn observed_cards(&self) -> Vec<usize> {
        self.observed().iter().map(|v| v.card).collect()
    }

    /// The ring coordinate for a 0-based joint observed state.
    pub fn coordinate(state: &[usize]) -> Var {
        let idx: Vec<u32> = state.iter().map(|&s| s as u32 + 1).collect();
        Var::new("p", &idx)
    }

    /// All coordinates `p_{...}` of the ring, lexicographic.
    pub fn coordinates(&self) -> Vec<Var> {
        joint_states(&self.observed_cards())
            .iter()
            .map(|s| Self::coordinate(s))
            .collect()
    }
}

/// `A _||_ B | C` by variable name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CiStatement {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl CiStatement {
    pub fn new(a: &[&str], b: &[&str], c: &[&str]) -> Self {
        let own = |s: &[&str]| s.iter().map(|x| x.to_string()).collect();
        Self {
            a: own(a),
            b: own(b),
            c: own(c),
        }
    }

    pub fn validate(&self, model: &DiscreteModel) -> Result<()> {
        if self.a.is_empty() || self.b.is_empty() {
            return invalid("both sides of a CI statement must be nonempty");
        }
        let mut seen = BTreeSet::new();
        for n in self.a.iter().chain(&self.b).chain(&self.c) {
            model.position(n)?;
            if !seen.insert(n) {
                return invalid(format!("variable `{n}` appears twice in statement"));
            }
        }
        for n in self.a.iter().chain(&self.b) {
            if model.var(n).unwrap().hidden {
                return invalid(format!("hidden variable `{n}` may only appear in the conditioning set"));
            }
        }
        Ok(())
    }

    /// Product of cardinalities of hidden conditioning variables.
    pub fn hidden_rank(&self, model: &DiscreteModel) -> usize {
        self.c
            .iter()
            .filter_map(|n| model.var(n))
            .filter(|v| v.hidden)
            .map(|v| v.card)
            .product()
    }

    pub fn to_text(&self, model: &DiscreteModel) -> String {
        let side = |names: &[String]| -> String {
            names
                .iter()
                .map(|n| match model.var(n) {
                    Some(v) if v.hidden => format!("{n}*"),
                    _ => n.clone(),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.c.is_empty() {
            format!("{} _||_ {}", side(&self.a), side(&self.b))
        } else {
            format!("{} _||_ {} | {}", side(&self.a), side(&self.b), side(&self.c))
        }
    }

    /// Parse `A _||_ B | C`. Names are separated by whitespace or commas and
    /// may be wrapped in braces; a trailing `*` marks a hidden variable and
    /// must agree with the model.
    pub fn parse(s: &str, model: &DiscreteModel) -> Result<Self> {
        let (a, rest) = s
            .split_once("_||_")
            .ok_or_else(|| Error::InvalidInput(format!("missing `_||_` in `{s}`")))?;
        let (b, c) = match rest.split_once('|') {
            Some((b, c)) => (b, c),
            None => (rest, ""),
        };
        let names = |part: &str| -> Result<Vec<String>> {
            part.split(|ch: char| ch.is_whitespace() || matches!(ch, ',' | '{' | '}'))
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let (name, marked) = match t.strip_suffix('*') {
                        Some(n) => (n, true),
                        None => (t, false),
                    };
                    let v = model
                        .var(name)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown variable `{name}`")))?;
                    if v.hidden != marked {
                        return invalid(format!(
                            "variable `{name}` is {} but marked {}",
                            if v.hidden { "hidden" } else { "observed" },
                            if marked { "hidden" } else { "observed" }
                        ));
                    }
                    Ok(name.to_string())
                })
                .collect()
        };
        let stmt = Self {
            a: names(a)?,
            b: names(b)?,
            c: names(c)?,
        };
        stmt.validate(model)?;
        Ok(stmt)
    }
}

/// Parse a CI file: `var NAME CARD` lines (hidden names end in `*`) followed
/// by statement lines. `#` starts a comment.
pub fn parse_ci_file(text: &str) -> Result<(DiscreteModel, Vec<CiStatement>)> {
    let mut vars = Vec::new();
    let mut stmt_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: i + 1, msg };
        if let Some(decl) = line.strip_prefix("var ") {
            let mut it = decl.split_whitespace();
            let (Some(name), Some(card), None) = (it.next(), it.next(), it.next()) else {
                return Err(perr("expected `var NAME CARD`".into()));
            };
            let card: usize = card.parse().map_err(|_| perr(format!("bad cardinality `{card}`")))?;
            vars.push(match name.strip_suffix('*') {
                Some(n) => Variable::hidden(n, card),
                None => Variable::observed(name, card),
            });
        } else {
            stmt_lines.push((i + 1, line.to_string()));
        }
    }
    let model = DiscreteModel::new(vars)?;
    let stmts = stmt_lines
        .into_iter()
        .map(|(ln, l)| {
            CiStatement::parse(&l, &model).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Ok((model, stmts))
}

/// Variable names of `sel` sorted by their position in `order`.
fn in_declared_order(order: &[String], sel: &[String]) -> Vec<usize> {
    let mut idx: Vec<usize> = sel
        .iter()
        .filter_map(|n| order.iter().position(|o| o == n))
        .collect();
    idx.sort_unstable();
    idx
}

/// The `(h+1)`-minor generators of one statement, sign-normalized and
/// deduplicated.
pub fn ci_minor_generators(stmt: &CiStatement, model: &DiscreteModel) -> Result<Vec<Polynomial>> {
    stmt.validate(model)?;
    let h = stmt.hidden_rank(model);
    let observed: Vec<String> = model.observed().iter().map(|v| v.name.clone()).collect();
    let cards = model.observed_cards();
    let a_idx = in_declared_order(&observed, &stmt.a);
    let b_idx = in_declared_order(&observed, &stmt.b);
    let c_obs: Vec<String> = stmt
        .c
        .iter()
        .filter(|n| !model.var(n).unwrap().hidden)
        .cloned()
        .collect();
    let c_idx = in_declared_order(&observed, &c_obs);
    let used: BTreeSet<usize> = a_idx.iter().chain(&b_idx).chain(&c_idx).copied().collect();
    let m_idx: Vec<usize> = (0..observed.len()).filter(|i| !used.contains(i)).collect();

    let sub_cards = |idx: &[usize]| -> Vec<usize> { idx.iter().map(|&i| cards[i]).collect() };
    let a_states = joint_states(&sub_cards(&a_idx));
    let b_states = joint_states(&sub_cards(&b_idx));
    let m_states = joint_states(&sub_cards(&m_idx));
    let size = h + 1;

    let ord = MonomialOrder::DegRevLex;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for c_state in joint_states(&sub_cards(&c_idx)) {
        let mut entries = Vec::with_capacity(a_states.len() * b_states.len());
        for a in &a_states {
            for b in &b_states {
                let mut full = vec![0usize; observed.len()];
                for (k, &i) in a_idx.iter().enumerate() {
                    full[i] = a[k];
                }
                for (k, &i) in b_idx.iter().enumerate() {
                    full[i] = b[k];
                }
                for (k, &i) in c_idx.iter().enumerate() {
                    full[i] = c_state[k];
                }
                let mut entry = Polynomial::zero();
                for m in &m_states {
                    for (k, &i) in m_idx.iter().enumerate() {
                        full[i] = m[k];
                    }
                    entry = entry + Polynomial::var(DiscreteModel::coordinate(&full));
                }
                entries.push(entry);
            }
        }
        let block = PolyMatrix::from_entries(a_states.len(), b_states.len(), entries)?;
        for rs in k_subsets(block.rows(), size) {
            for cs in k_subsets(block.cols(), size) {
                let g = block.minor(&rs, &cs)?.sign_normalized(&ord);
                if !g.is_zero() && seen.insert(g.clone()) {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

/// The CI ideal of a collection of statements over the ring of all observed
/// joint-state coordinates.
pub fn ci_ideal(stmts: &[CiStatement], model: &DiscreteModel) -> Result<Ideal> {
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for s in stmts {
        for g in ci_minor_generators(s, model)? {
            if seen.insert(g.clone()) {
                gens.push(g);
            }
        }
    }
    Ideal::new(model.coordinates(), gens)
}

/// Dense tensor of exact entries over named variables, row-major with the
/// last variable varying fastest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbTensor {
    vars: Vec<String>,
    shape: Vec<usize>,
    entries: Vec<Scalar>,
}

impl ProbTensor {
    pub fn new(vars: Vec<String>, shape: Vec<usize>, entries: Vec<Scalar>) -> Result<Self> {
        if vars.len() != shape.len() {
            return invalid("one cardinality per variable required");
        }
        let n: usize = shape.iter().product();
        if entries.len() != n {
            return invalid(format!("{} entries for shape {shape:?}", entries.len()));
        }
        if vars.iter().collect::<BTreeSet<_>>().len() != vars.len() {
            return invalid("duplicate tensor variable");
        }
        Ok(Self {
            vars,
            shape,
            entries,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    fn offset(&self, state: &[usize]) -> usize {
        state
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&s, &c)| acc * c + s)
    }

    pub fn get(&self, state: &[usize]) -> &Scalar {
        &self.entries[self.offset(state)]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| *e >= Scalar::from_integer(0.into()))
    }

    pub fn is_normalized(&self) -> bool {
        self.entries.iter().cloned().sum::<Scalar>() == Scalar::from_integer(1.into())
    }

    pub fn is_distribution(&self) -> bool {
        self.is_nonnegative() && self.is_normalized()
    }

    /// Entrywise sum with a tensor of the same variables and shape.
    pub fn add(&self, other: &ProbTensor) -> Result<ProbTensor> {
        if self.vars != other.vars || self.shape != other.shape {
            return invalid("tensor shapes differ");
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ProbTensor::new(self.vars.clone(), self.shape.clone(), entries)
    }

    /// The flattening with row states over `rows`, column states over `cols`,
    /// summing out `summed`. States are ordered lexicographically in the
    /// tensor's variable order.
    pub fn flatten(&self, rows: &[&str], cols: &[&str], summed: &[&str]) -> Result<Matrix> {
        let pos = |n: &str| -> Result<usize> {
            self.vars
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown tensor variable `{n}`")))
        };
        let collect = |names: &[&str]| -> Result<Vec<usize>> {
            let mut v = names.iter().map(|n| pos(n)).collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            Ok(v)
        };
        let (r, c, s) = (collect(rows)?, collect(cols)?, collect(summed)?);
        let mut all: Vec<usize> = r.iter().chain(&c).chain(&s).copied().collect();
        all.sort_unstable();
        if all != (0..self.vars.len()).collect::<Vec<_>>() {
            return invalid("rows, columns and summed variables must partition the tensor variables");
        }
        let cards = |idx: &[usize]| -> Vec<usize> { idx.iter().map(|&i| self.shape[i]).collect() };
        let (rs, cs, ss) = (joint_states(&cards(&r)), joint_states(&cards(&c)), joint_states(&cards(&s)));
        let mut m = Matrix::zeros(rs.len(), cs.len());
        let mut full = vec![0; self.vars.len()];
        for (i, rst) in rs.iter().enumerate() {
            for (j, cst) in cs.iter().enumerate() {
                let mut acc = Scalar::from_integer(0.into());
                for sst in &ss {
                    for (k, &p) in r.iter().enumerate() {
                        full[p] = rst[k];
                    }
                    for (k, &p) in c.iter().enumerate() {
                        full[p] = cst[k];
                    }
                    for (k, &p) in s.iter().enumerate() {
                        full[p] = sst[k];
                    }
                    acc += self.get(&full);
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    /// Values of the ring coordinates `p_{...}` at this tensor.
    pub fn assignment(&self) -> Assignment {
        joint_states(&self.shape)
            .into_iter()
            .map(|s| {
                let v = self.get(&s).clone();
                (DiscreteModel::coordinate(&s), v)
            })
            .collect()
    }
}

impl fmt::Display for ProbTensor {
    /// `vars`, `shape` header lines, then the entries row-major, one line per
    /// fastest-varying fiber.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.vars.join(" "))?;
        let shape: Vec<String> = self.shape.iter().map(|c| c.to_string()).collect();
        writeln!(f, "shape {}", shape.join(" "))?;
        let width = self.shape.last().copied().unwrap_or(1).max(1);
        for chunk in self.entries.chunks(width) {
            let line: Vec<String> = chunk.iter().map(format_scalar).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ProbTensor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut vars = None;
        let mut shape = None;
        let mut entries = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: i + 1, msg };
            if let Some(rest) = line.strip_prefix("vars ") {
                vars = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
            } else if let Some(rest) = line.strip_prefix("shape ") {
                shape = Some(
                    rest.split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad cardinality `{t}`"))))
                        .collect::<Result<Vec<_>>>()?,
                );
            } else {
                for t in line.split_whitespace() {
                    entries.push(parse_scalar(t).ok_or_else(|| perr(format!("bad rational `{t}`")))?);
                }
            }
        }
        let shape = shape.ok_or(Error::Parse {
            line: 1,
            msg: "missing `shape` line".into(),
        })?;
        let vars = vars.unwrap_or_else(|| (1..=shape.len()).map(|i| format!("V{i}")).collect());
        ProbTensor::new(vars, shape, entries)
    }
}

/// A rational, fully supported distribution on the observed variables of the
/// form `sum_i lambda_i a_i b_i^T`, where the sum runs over the joint states
/// of the hidden conditioning variables of `conclusion`. The `A x B`
/// flattening has rank at most that hidden cardinality.
pub fn mixture_parametrization_sample<R: Rng + ?Sized>(
    model: &DiscreteModel,
    conclusion: &CiStatement,
    rng: &mut R,
) -> Result<ProbTensor> {
    conclusion.validate(model)?;
    if conclusion.c.iter().any(|n| !model.var(n).unwrap().hidden) {
        return invalid("conclusion must condition on hidden variables only");
    }
    let observed: Vec<String> = model.observed().iter().map(|v| v.name.clone()).collect();
    let covered: BTreeSet<&String> = conclusion.a.iter().chain(&conclusion.b).collect();
    if observed.iter().any(|n| !covered.contains(n)) {
        return invalid("conclusion must cover every observed variable");
    }
    let h = conclusion.hidden_rank(model);
    let cards = model.observed_cards();
    let a_idx = in_declared_order(&observed, &conclusion.a);
    let b_idx = in_declared_order(&observed, &conclusion.b);
    let na: usize = a_idx.iter().map(|&i| cards[i]).product();
    let nb: usize = b_idx.iter().map(|&i| cards[i]).product();
    let lambda = random_simplex_point(rng, h);
    let a: Vec<Vec<Scalar>> = (0..h).map(|_| random_simplex_point(rng, na)).collect();
    let b: Vec<Vec<Scalar>> = (0..h).map(|_| random_simplex_point(rng, nb)).collect();

    // offsets of A-states and B-states within the joint state, row-major
    let flat = |idx: &[usize], state: &[usize]| -> usize {
        idx.iter().fold(0, |acc, &i| acc * cards[i] + state[i])
    };
    let states = joint_states(&cards);
    let mut cache: HashMap<(usize, usize), Scalar> = HashMap::new();
    let entries = states
        .iter()
        .map(|s| {
            let (ia, ib) = (flat(&a_idx, s), flat(&b_idx, s));
            cache
                .entry((ia, ib))
                .or_insert_with(|| (0..h).map(|k| &lambda[k] * &a[k][ia] * &b[k][ib]).sum())
                .clone()
        })
        .collect();
    ProbTensor::new(observed, cards, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::polycore::scalar::{frac, int, random_rational};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn example_21() -> DiscreteModel {
        DiscreteModel::new(vec![
            Variable::observed("X", 3),
            Variable::observed("Y1", 3),
            Variable::observed("Y2", 4),
            Variable::hidden("H1", 2),
            Variable::hidden("H2", 2),
        ])
        .unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(DiscreteModel::new(vec![Variable::hidden("H", 2)]).is_err());
        assert!(DiscreteModel::new(vec![Variable::observed("X", 2), Variable::observed("X", 3)]).is_err());
        assert!(DiscreteModel::new(vec![Variable::observed("X", 0)]).is_err());
    }

    #[test]
    fn marginal_independence_is_one_two_minor() {
        let m = DiscreteModel::new(vec![Variable::observed("X", 2), Variable::observed("Y", 2)]).unwrap();
        let g = ci_minor_generators(&CiStatement::new(&["X"], &["Y"], &[]), &m).unwrap();
        assert_eq!(g, vec!["p_1_2 * p_2_1 - p_1_1 * p_2_2".parse().unwrap()]);
    }

    #[test]
    fn example_21_generator_counts() {
        let m = example_21();
        let s1 = CiStatement::new(&["X"], &["Y1"], &["Y2", "H1"]);
        let s2 = CiStatement::new(&["X"], &["Y2"], &["Y1", "H2"]);
        let g1 = ci_minor_generators(&s1, &m).unwrap();
        let g2 = ci_minor_generators(&s2, &m).unwrap();
        assert_eq!(g1.len(), 4);
        // enumeration oracle: 3 observed-C states, one row triple, C(4,3) column triples
        let oracle: usize = (0..3).map(|_| binomial(3, 3) * binomial(4, 3)).sum();
        assert_eq!(g2.len(), oracle);
        assert_eq!(oracle, 12);
        assert!(g1.iter().chain(&g2).all(|g| g.total_degree() == Some(3) && g.num_terms() == 6));
        let ideal = ci_ideal(&[s1.clone(), s2, s1], &m).unwrap();
        assert_eq!(ideal.generators().len(), 16);
        assert_eq!(ideal.vars().len(), 36);
    }

    #[test]
    fn empty_collection_and_duplicates() {
        let m = example_21();
        assert!(ci_ideal(&[], &m).unwrap().is_zero_ideal());
        let s = CiStatement::new(&["X"], &["Y1"], &["Y2", "H1"]);
        assert_eq!(
            ci_ideal(&[s.clone(), s.clone()], &m).unwrap().generators(),
            ci_ideal(&[s], &m).unwrap().generators()
        );
    }

    #[test]
    fn hidden_variables_outside_conditioning_are_rejected() {
        let m = example_21();
        let bad = CiStatement::new(&["H1"], &["Y1"], &[]);
        assert!(ci_minor_generators(&bad, &m).is_err());
        assert!(CiStatement::parse("X _||_ Y1 | Y2 H1", &m).is_err());
    }

    #[test]
    fn statement_syntax() {
        let m = example_21();
        let s = CiStatement::parse("X _||_ Y1 | {Y2, H1*}", &m).unwrap();
        assert_eq!(s, CiStatement::new(&["X"], &["Y1"], &["Y2", "H1"]));
        assert_eq!(s.to_text(&m), "X _||_ Y1 | Y2 H1*");
        assert_eq!(CiStatement::parse(&s.to_text(&m), &m).unwrap(), s);
        assert!(CiStatement::parse("X _||_ X", &m).is_err());
    }

    #[test]
    fn generator_count_formula_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let (ca, cb, cc, ch) = (
                rng.gen_range(1..4),
                rng.gen_range(1..5),
                rng.gen_range(1..3),
                rng.gen_range(1..3),
            );
            let m = DiscreteModel::new(vec![
                Variable::observed("A", ca),
                Variable::observed("B", cb),
                Variable::observed("C", cc),
                Variable::hidden("H", ch),
            ])
            .unwrap();
            let g = ci_minor_generators(&CiStatement::new(&["A"], &["B"], &["C", "H"]), &m).unwrap();
            assert_eq!(g.len(), cc * binomial(ca, ch + 1) * binomial(cb, ch + 1));
        }
    }

    #[test]
    fn flatten_sums_slices() {
        let h = frac(1, 2);
        let z = int(0);
        // p[x][y][z]: P_0 = [[1,0],[0,0]]/2, P_1 = [[0,0],[0,1]]/2
        let t = ProbTensor::new(
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![2, 2, 2],
            vec![h.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), h.clone()],
        )
        .unwrap();
        let f = t.flatten(&["X"], &["Y"], &["Z"]).unwrap();
        assert_eq!(f.to_rows(), vec![vec![h.clone(), z.clone()], vec![z.clone(), h.clone()]]);
        assert!(t.is_distribution());
        let reshaped = t.flatten(&["X", "Z"], &["Y"], &[]).unwrap();
        assert_eq!((reshaped.rows(), reshaped.cols()), (4, 2));
        let mut flat: Vec<Scalar> = reshaped.to_rows().concat();
        let mut orig = t.entries().to_vec();
        flat.sort();
        orig.sort();
        assert_eq!(flat, orig);
        assert!(t.flatten(&["X"], &["Y"], &[]).is_err());
    }

    #[test]
    fn rank_one_slices_give_bounded_flattening_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (nx, ny, nz) = (4, 3, 2);
        let mut entries = vec![int(0); nx * ny * nz];
        for z in 0..nz {
            let a: Vec<Scalar> = (0..nx).map(|_| random_rational(&mut rng)).collect();
            let b: Vec<Scalar> = (0..ny).map(|_| random_rational(&mut rng)).collect();
            for x in 0..nx {
                for y in 0..ny {
                    entries[(x * ny + y) * nz + z] = &a[x] * &b[y];
                }
            }
        }
        let t = ProbTensor::new(vec!["X".into(), "Y".into(), "Z".into()], vec![nx, ny, nz], entries).unwrap();
        let f = t.flatten(&["X"], &["Y"], &["Z"]).unwrap();
        assert_eq!(f.rank(), 2);
    }

    #[test]
    fn flatten_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let vars: Vec<String> = vec!["A".into(), "B".into(), "C".into()];
        let mk = |rng: &mut ChaCha8Rng| {
            ProbTensor::new(vars.clone(), vec![2, 3, 2], (0..12).map(|_| random_rational(rng)).collect()).unwrap()
        };
        let (p, q) = (mk(&mut rng), mk(&mut rng));
        let lhs = p.add(&q).unwrap().flatten(&["B"], &["A"], &["C"]).unwrap();
        let fp = p.flatten(&["B"], &["A"], &["C"]).unwrap();
        let fq = q.flatten(&["B"], &["A"], &["C"]).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(lhs.get(i, j), &(fp.get(i, j) + fq.get(i, j)));
            }
        }
    }

    #[test]
    fn mixture_samples_satisfy_conclusion() {
        let m = example_21();
        let conclusion = CiStatement::new(&["X"], &["Y1", "Y2"], &["H2"]);
        let ideal = ci_ideal(
            &[
                CiStatement::new(&["X"], &["Y1"], &["Y2", "H1"]),
                CiStatement::new(&["X"], &["Y2"], &["Y1", "H2"]),
            ],
            &m,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let p = mixture_parametrization_sample(&m, &conclusion, &mut rng).unwrap();
            assert!(p.entries().iter().all(|e| *e > int(0)));
            assert!(p.is_normalized());
            let f = p.flatten(&["X"], &["Y1", "Y2"], &[]).unwrap();
            assert!(f.rank() <= 2);
            let pt = p.assignment();
            for g in ideal.generators() {
                assert!(g.evaluate(&pt).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn product_distributions_satisfy_independence() {
        let m = DiscreteModel::new(vec![
            Variable::observed("X", 3),
            Variable::observed("Y", 4),
            Variable::hidden("H", 1),
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = mixture_parametrization_sample(&m, &CiStatement::new(&["X"], &["Y"], &["H"]), &mut rng).unwrap();
        let gens = ci_minor_generators(&CiStatement::new(&["X"], &["Y"], &[]), &m).unwrap();
        assert_eq!(gens.len(), binomial(3, 2) * binomial(4, 2));
        let pt = p.assignment();
        assert!(gens.iter().all(|g| g.evaluate(&pt).unwrap().is_zero()));
    }

    #[test]
    fn tensor_text_roundtrip() {
        let t = ProbTensor::new(vec!["X".into(), "Y".into()], vec![2, 2], vec![frac(1, 4); 4]).unwrap();
        let s = t.to_string();
        assert_eq!(s, "vars X Y\nshape 2 2\n1/4 1/4\n1/4 1/4\n");
        assert_eq!(s.parse::<ProbTensor>().unwrap(), t);
    }

    #[test]
    fn ci_file_parsing() {
        let text = "var X 3\nvar Y1 3\nvar Y2 4\nvar H1* 2\nvar H2* 2\nX _||_ Y1 | Y2 H1*\nX _||_ Y2 | Y1 H2*\n";
        let (m, s) = parse_ci_file(text).unwrap();
        assert_eq!(m, example_21());
        assert_eq!(s.len(), 2);
        assert!(parse_ci_file("var X 3\nX _||_ Z\n").is_err());
    }
}
