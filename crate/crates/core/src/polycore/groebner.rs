//! Ideals and a budgeted Buchberger engine.
//!
//! Work happens on a dense representation indexed by the ideal's variable
//! list. Each term carries its order key `W * e`, where `W` is the weight
//! matrix of the monomial order, so comparisons are plain lexicographic
//! slice comparisons and shifting by a monomial adds keys.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::polycore::poly::{Monomial, MonomialOrder, Polynomial, Var};
use crate::polycore::scalar::Scalar;

/// Limits on a Gröbner computation. Exceeding either is reported as
/// `Error::BudgetExhausted`, never as a partial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of S-pairs that may be reduced.
    pub max_pairs: usize,
    /// Maximum total degree of an S-pair lcm.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_pairs: 5_000,
            max_degree: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub polys: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    vars: Vec<Var>,
    generators: Vec<Polynomial>,
    basis: Option<GroebnerBasis>,
}

impl Ideal {
    /// Ideal over an explicit variable set. Every generator variable must be
    /// declared.
    pub fn new(vars: impl IntoIterator<Item = Var>, generators: Vec<Polynomial>) -> Result<Self> {
        let vars: BTreeSet<Var> = vars.into_iter().collect();
        for g in &generators {
            if let Some(v) = g.vars().into_iter().find(|v| !vars.contains(v)) {
                return invalid(format!("generator uses undeclared variable {v}"));
            }
        }
        Ok(Self {
            vars: vars.into_iter().collect(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: None,
        })
    }

    /// Ideal whose variable set is exactly the variables of its generators.
    pub fn from_generators(generators: Vec<Polynomial>) -> Self {
        let vars: BTreeSet<Var> = generators.iter().flat_map(Polynomial::vars).collect();
        Self::new(vars, generators).expect("variables collected from generators")
    }

    pub fn zero(vars: impl IntoIterator<Item = Var>) -> Self {
        Self::new(vars, Vec::new()).expect("no generators")
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_ref()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// `true` iff `f` is in the ideal. Requires a cached basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Serialize one generator per line, terms in `ord`.
    pub fn to_text(&self, ord: &MonomialOrder) -> String {
        self.generators
            .iter()
            .map(|g| g.to_text(ord) + "\n")
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Term {
    key: Vec<i64>,
    exps: Vec<u32>,
    coeff: Scalar,
}

/// Terms sorted ascending by key; the leading term is last.
type DPoly = Vec<Term>;

struct Ctx {
    vars: Vec<Var>,
    index: BTreeMap<Var, usize>,
    weights: Vec<Vec<i64>>,
}

impl Ctx {
    fn new(vars: Vec<Var>, order: &MonomialOrder) -> Self {
        let n = vars.len();
        let index: BTreeMap<Var, usize> =
            vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let grevlex_rows = |block: &[usize]| -> Vec<Vec<i64>> {
            let mut rows = Vec::with_capacity(block.len() + 1);
            let mut deg = vec![0; n];
            for &i in block {
                deg[i] = 1;
            }
            rows.push(deg);
            for &i in block.iter().rev() {
                let mut r = vec![0; n];
                r[i] = -1;
                rows.push(r);
            }
            rows
        };
        let weights = match order {
            MonomialOrder::Lex => (0..n)
                .map(|i| {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r
                })
                .collect(),
            MonomialOrder::DegRevLex => grevlex_rows(&(0..n).collect::<Vec<_>>()),
            MonomialOrder::Block(blocks) => {
                let mut rows = Vec::new();
                let mut used = vec![false; n];
                for block in blocks {
                    let mut idx: Vec<usize> = block
                        .iter()
                        .filter_map(|v| index.get(v).copied())
                        .filter(|&i| !used[i])
                        .collect();
                    idx.sort_unstable();
                    idx.dedup();
                    for &i in &idx {
                        used[i] = true;
                    }
                    rows.extend(grevlex_rows(&idx));
                }
                let rest: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
                rows.extend(grevlex_rows(&rest));
                rows
            }
        };
        Self {
            vars,
            index,
            weights,
        }
    }

    fn key(&self, exps: &[u32]) -> Vec<i64> {
        self.weights
            .iter()
            .map(|w| w.iter().zip(exps).map(|(a, &e)| a * e as i64).sum())
            .collect()
    }

    fn to_dense(&self, p: &Polynomial) -> DPoly {
        let mut out: DPoly = p
            .terms()
            .map(|(m, c)| {
                let mut exps = vec![0u32; self.vars.len()];
                for (v, e) in m.powers() {
                    exps[self.index[v]] = *e;
                }
                Term {
                    key: self.key(&exps),
                    exps,
                    coeff: c.clone(),
                }
            })
            .collect();
        out.sort_by(|a, b| a.key.cmp(&b.key));
        out
    }

    fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.iter().map(|t| {
            let m = Monomial::from_powers(
                t.exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.vars[i].clone(), e)),
            );
            (m, t.coeff.clone())
        }))
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn make_monic(p: &mut DPoly) {
    if let Some(lead) = p.last() {
        if lead.coeff.is_one() {
            return;
        }
        let inv = lead.coeff.recip();
        for t in p.iter_mut() {
            t.coeff *= &inv;
        }
    }
}

/// `p - c * x^shift * g`, all ascending.
fn sub_shifted(p: &DPoly, c: &Scalar, shift: &[u32], shift_key: &[i64], g: &DPoly) -> DPoly {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let shifted = g.iter().map(|t| Term {
        key: t.key.iter().zip(shift_key).map(|(a, b)| a + b).collect(),
        exps: t.exps.iter().zip(shift).map(|(a, b)| a + b).collect(),
        coeff: -(c * &t.coeff),
    });
    let mut a = p.iter().cloned().peekable();
    let mut b = shifted.peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match x.key.cmp(&y.key) {
                std::cmp::Ordering::Less => out.push(a.next().unwrap()),
                std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
                std::cmp::Ordering::Equal => {
                    let mut t = a.next().unwrap();
                    t.coeff += b.next().unwrap().coeff;
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            },
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => out.push(b.next().unwrap()),
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `p` modulo monic `basis`.
fn reduce(ctx: &Ctx, mut p: DPoly, basis: &[DPoly]) -> DPoly {
    let mut rem: DPoly = Vec::new();
    while let Some(lead) = p.last() {
        let hit = basis
            .iter()
            .find(|g| g.last().is_some_and(|gl| divides(&gl.exps, &lead.exps)));
        match hit {
            Some(g) => {
                let gl = g.last().unwrap();
                let shift: Vec<u32> = lead.exps.iter().zip(&gl.exps).map(|(a, b)| a - b).collect();
                let key = ctx.key(&shift);
                let c = lead.coeff.clone();
                p = sub_shifted(&p, &c, &shift, &key, g);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    rem
}

fn s_polynomial(ctx: &Ctx, f: &DPoly, g: &DPoly) -> DPoly {
    let (fl, gl) = (f.last().unwrap(), g.last().unwrap());
    let lcm: Vec<u32> = fl.exps.iter().zip(&gl.exps).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = lcm.iter().zip(&fl.exps).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = lcm.iter().zip(&gl.exps).map(|(a, b)| a - b).collect();
    let minus_one = -Scalar::one();
    let left = sub_shifted(&Vec::new(), &minus_one, &sf, &ctx.key(&sf), f);
    sub_shifted(&left, &Scalar::one(), &sg, &ctx.key(&sg), g)
}

/// Buchberger with the product and chain criteria and the normal selection
/// strategy. Returns the reduced basis, sorted by descending leading monomial.
fn groebner_dense(ctx: &Ctx, gens: Vec<DPoly>, budget: Budget) -> Result<Vec<DPoly>> {
    let mut basis: Vec<DPoly> = Vec::new();
    let mut pending: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
    let mut live: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<DPoly>,
                pending: &mut BTreeSet<(Vec<i64>, usize, usize)>,
                live: &mut HashSet<(usize, usize)>,
                mut p: DPoly| {
        make_monic(&mut p);
        let n = basis.len();
        let pl = p.last().unwrap().exps.clone();
        for (i, g) in basis.iter().enumerate() {
            let gl = &g.last().unwrap().exps;
            let lcm: Vec<u32> = gl.iter().zip(&pl).map(|(a, b)| *a.max(b)).collect();
            pending.insert((ctx.key(&lcm), i, n));
            live.insert((i, n));
        }
        basis.push(p);
    };

    for g in gens {
        let r = reduce(ctx, g, &basis);
        if !r.is_empty() {
            push(&mut basis, &mut pending, &mut live, r);
        }
    }

    let mut processed = 0usize;
    while let Some(item) = pending.pop_first() {
        let (_, i, j) = item;
        live.remove(&(i, j));
        let li = basis[i].last().unwrap().exps.clone();
        let lj = basis[j].last().unwrap().exps.clone();
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let lcm: Vec<u32> = li.iter().zip(&lj).map(|(a, b)| *a.max(b)).collect();
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].last().unwrap().exps, &lcm)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let deg: u32 = lcm.iter().sum();
        if deg > budget.max_degree {
            return Err(Error::BudgetExhausted(format!(
                "S-pair of degree {deg} exceeds max degree {}",
                budget.max_degree
            )));
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExhausted(format!(
                "more than {} S-pairs required",
                budget.max_pairs
            )));
        }
        let s = s_polynomial(ctx, &basis[i], &basis[j]);
        let r = reduce(ctx, s, &basis);
        if !r.is_empty() {
            push(&mut basis, &mut pending, &mut live, r);
        }
    }

    // minimal basis: drop elements whose leading monomial is divisible by
    // another's; among equal leading monomials keep the first
    let mut keep: Vec<DPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gl = &g.last().unwrap().exps;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hl = &h.last().unwrap().exps;
            k != i && divides(hl, gl) && (hl != gl || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<DPoly> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut g = keep[i].clone();
        let lead = g.pop().unwrap();
        let mut tail = reduce(ctx, g, &others);
        tail.push(lead);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| b.last().unwrap().key.cmp(&a.last().unwrap().key));
    Ok(reduced)
}

/// Compute the reduced Gröbner basis of `ideal` under `order` and return the
/// ideal with the basis cached.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, budget: Budget) -> Result<Ideal> {
    let ctx = Ctx::new(ideal.vars.clone(), order);
    let gens: Vec<DPoly> = ideal.generators.iter().map(|g| ctx.to_dense(g)).collect();
    let basis = groebner_dense(&ctx, gens, budget)?;
    let polys = basis.iter().map(|g| ctx.to_sparse(g)).collect();
    Ok(Ideal {
        vars: ideal.vars.clone(),
        generators: ideal.generators.clone(),
        basis: Some(GroebnerBasis {
            order: order.clone(),
            polys,
        }),
    })
}

/// Fully reduced remainder of `f` modulo the cached basis; zero iff `f` is in
/// the ideal.
pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    let Some(gb) = &ideal.basis else {
        return invalid("ideal has no cached Gröbner basis");
    };
    let vars: BTreeSet<Var> = ideal.vars.iter().cloned().chain(f.vars()).collect();
    let ctx = Ctx::new(vars.into_iter().collect(), &gb.order);
    let basis: Vec<DPoly> = gb.polys.iter().map(|g| {
        let mut d = ctx.to_dense(g);
        make_monic(&mut d);
        d
    }).collect();
    Ok(ctx.to_sparse(&reduce(&ctx, ctx.to_dense(f), &basis)))
}

/// Generators (a Gröbner basis) of `ideal ∩ K[remaining variables]`.
pub fn eliminate(ideal: &Ideal, kill: &[Var], budget: Budget) -> Result<Ideal> {
    let order = MonomialOrder::elimination(kill);
    let gb = buchberger(ideal, &order, budget)?;
    let killed: BTreeSet<&Var> = kill.iter().collect();
    let kept: Vec<Polynomial> = gb
        .basis
        .as_ref()
        .unwrap()
        .polys
        .iter()
        .filter(|g| g.vars().iter().all(|v| !killed.contains(v)))
        .cloned()
        .collect();
    let vars: Vec<Var> = ideal
        .vars
        .iter()
        .filter(|v| !killed.contains(v))
        .cloned()
        .collect();
    let mut out = Ideal::new(vars, kept.clone())?;
    out.basis = Some(GroebnerBasis {
        order: MonomialOrder::DegRevLex,
        polys: kept,
    });
    Ok(out)
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect(i: &Ideal, j: &Ideal, budget: Budget) -> Result<Ideal> {
    let all: BTreeSet<Var> = i.vars.iter().chain(&j.vars).cloned().collect();
    let t = (0..)
        .map(|k| Var::new("t", &[k]))
        .find(|v| !all.contains(v))
        .expect("fresh variable");
    let tp = Polynomial::var(t.clone());
    let one_minus_t = &Polynomial::one() - &tp;
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|g| &tp * g).collect();
    gens.extend(j.generators.iter().map(|g| &one_minus_t * g));
    let mut vars: Vec<Var> = all.into_iter().collect();
    vars.push(t.clone());
    let joint = Ideal::new(vars, gens)?;
    eliminate(&joint, &[t], budget)
}

/// Ideal equality by comparing reduced Gröbner bases under degrevlex.
pub fn same_ideal(a: &Ideal, b: &Ideal, budget: Budget) -> Result<bool> {
    let ord = MonomialOrder::DegRevLex;
    let ga = buchberger(a, &ord, budget)?;
    let gb = buchberger(b, &ord, budget)?;
    Ok(ga.basis.unwrap().polys == gb.basis.unwrap().polys)
}
