use num_traits::Zero;

use super::report::{Builder, SymbolicStatus, TrialResult, WitnessReport};
use super::samplers::{concurrent_lines_sampler, loop_sampler, low_rank_sampler};
use crate::cimodel::{ci_ideal, ci_minor_generators, mixture_parametrization_sample, CiStatement, DiscreteModel, Variable};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{
    ci_generators_as_grid, fixtures, generic_matrix, grid_ci_correspondence, hypergraph_generators, in_variety,
    matrix_assignment, GridSpec,
};
use crate::linalg::Matrix;
use crate::matroid::{grid_circuit_family, is_circuit_family, realize_grid_matroid, Matroid};
use crate::polycore::{buchberger, intersect, normal_form, Budget, Ideal, MonomialOrder, Polynomial, Var};
use crate::rng::stream;
use crate::secrig::{generic_rigidity_check, secant_dimension, SegreModel};

/// `(d, n)` pairs checked by default.
pub const RIGIDITY_CASES: [(usize, usize); 5] = [(2, 3), (2, 4), (2, 5), (3, 5), (3, 6)];
/// `(m, n, k)` triples checked by default.
pub const TERRACINI_CASES: [(usize, usize, usize); 4] = [(3, 3, 1), (3, 3, 2), (3, 4, 2), (4, 4, 3)];

fn all_vanish(gens: &[Polynomial], x: &Matrix) -> Result<bool> {
    let point = matrix_assignment(x);
    for g in gens {
        if !g.evaluate(&point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[234][567] - [235][467]` on the generic `3 × 7` matrix.
fn sextic() -> Result<Polynomial> {
    let x = generic_matrix(3, 7);
    let r = [0, 1, 2];
    let a = &x.minor(&r, &[1, 2, 3])? * &x.minor(&r, &[4, 5, 6])?;
    let b = &x.minor(&r, &[1, 2, 4])? * &x.minor(&r, &[3, 5, 6])?;
    Ok(&a - &b)
}

fn first_column() -> Vec<Polynomial> {
    (1..=3).map(|i| Polynomial::var(Var::new("x", &[i, 1]))).collect()
}

/// Seven points in the plane with the triples `123, 145, 167` collinear.
/// The hypergraph ideal is the intersection of the ideal of a loop at 1 and
/// the ideal of three concurrent lines, which adds the sextic
/// `[234][567] - [235][467]`.
pub fn verify_concurrent_lines(trials: usize, seed: u64, budget: Budget) -> Result<WitnessReport> {
    let mut b = Builder::new("concurrent-lines", seed, trials);
    b.param("d", 3);
    b.param("n", 7);
    b.param("max_pairs", budget.max_pairs);
    b.param("max_degree", budget.max_degree);
    let delta = hypergraph_generators(&fixtures::concurrent_triples(), 3)?;
    let sextic = sextic()?;
    let i1 = Ideal::from_generators(first_column());
    let mut i2_gens = delta.clone();
    i2_gens.push(sextic.clone());
    let i2 = Ideal::from_generators(i2_gens.clone());

    let i1_gb = buchberger(&i1, &MonomialOrder::DegRevLex, budget)?;
    let mut leftovers = 0;
    for g in &delta {
        if !normal_form(g, &i1_gb)?.is_zero() {
            leftovers += 1;
        }
    }
    b.symbolic(
        "delta-in-loop",
        if leftovers == 0 { SymbolicStatus::Verified } else { SymbolicStatus::Failed },
        format!("{} of {} generators reduce to 0 modulo the loop ideal", delta.len() - leftovers, delta.len()),
    );
    let identity = delta.iter().all(|g| i2_gens.contains(g));
    b.symbolic(
        "delta-in-lines",
        if identity { SymbolicStatus::Verified } else { SymbolicStatus::Failed },
        "every generator is a generator of the concurrent-lines ideal",
    );
    reverse_containment(&mut b, &i1, &i2, &delta, budget);

    let lines = concurrent_lines_sampler();
    let i1_gens = first_column();
    let lines_checks: Vec<String> = ["[123]", "[145]", "[167]", "sextic"].map(String::from).to_vec();
    b.campaign(lines.name(), &lines_checks, &["loop-generators".to_string()], |rng| {
        let (x, _) = lines.sample_counted(rng);
        let point = matrix_assignment(&x);
        let vanish = i2_gens
            .iter()
            .map(|g| g.evaluate(&point).map(|v| v.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        let sep = !all_vanish(&i1_gens, &x)?;
        Ok(TrialResult {
            vanish,
            separations: vec![(sep, 0)],
            sample: x.to_string(),
        })
    })?;

    let lp = loop_sampler();
    let mut loop_checks: Vec<String> = ["x_1_1", "x_2_1", "x_3_1"].map(String::from).to_vec();
    loop_checks.extend(["[123]", "[145]", "[167]"].map(String::from));
    let mut loop_gens = first_column();
    loop_gens.extend(delta.iter().cloned());
    b.campaign(lp.name(), &loop_checks, &["sextic".to_string()], |rng| {
        let mut resampled = 0;
        loop {
            let x = lp.sample(rng);
            let point = matrix_assignment(&x);
            let value = sextic.evaluate(&point)?;
            if value.is_zero() && resampled < 16 {
                resampled += 1;
                continue;
            }
            let vanish = loop_gens
                .iter()
                .map(|g| g.evaluate(&point).map(|v| v.is_zero()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(TrialResult {
                vanish,
                separations: vec![(!value.is_zero(), resampled)],
                sample: x.to_string(),
            });
        }
    })?;
    Ok(b.finish())
}

/// `I_1 ∩ I_2 ⊆ I_Δ`, attempted under the budget.
fn reverse_containment(b: &mut Builder, i1: &Ideal, i2: &Ideal, delta: &[Polynomial], budget: Budget) {
    let name = "intersection-in-delta";
    let attempt = || -> Result<(usize, usize)> {
        let meet = intersect(i1, i2, budget)?;
        let d = buchberger(&Ideal::from_generators(delta.to_vec()), &MonomialOrder::DegRevLex, budget)?;
        let mut outside = 0;
        for g in meet.generators() {
            if !normal_form(g, &d)?.is_zero() {
                outside += 1;
            }
        }
        Ok((outside, meet.generators().len()))
    };
    match attempt() {
        Ok((0, n)) => b.symbolic(name, SymbolicStatus::Verified, format!("all {n} generators of the intersection reduce to 0")),
        Ok((k, n)) => b.symbolic(name, SymbolicStatus::Failed, format!("{k} of {n} generators of the intersection do not reduce to 0")),
        Err(Error::BudgetExhausted(msg)) => b.symbolic(name, SymbolicStatus::Inconclusive, format!("budget exhausted: {msg}")),
        Err(e) => b.symbolic(name, SymbolicStatus::Inconclusive, format!("not completed: {e}")),
    }
}

/// Random rank `<= 2` matrices on twelve points lie in the variety of the
/// sixteen-triple hypergraph.
pub fn verify_rank_two_component(trials: usize, seed: u64) -> Result<WitnessReport> {
    let mut b = Builder::new("rank-two-component", seed, trials);
    let h = fixtures::twelve_points();
    b.param("d", 3);
    b.param("n", h.n());
    b.param("edges", h.edges().len());
    let gens = hypergraph_generators(&h, 3)?;
    let sampler = low_rank_sampler(3, 12, 2);
    let checks = vec!["in-variety".to_string(), "generators".to_string()];
    b.campaign(sampler.name(), &checks, &[], |rng| {
        let x = sampler.sample(rng);
        Ok(TrialResult {
            vanish: vec![in_variety(&h, &x)?, all_vanish(&gens, &x)?],
            separations: Vec::new(),
            sample: x.to_string(),
        })
    })?;
    let mut rng = stream(seed, "rank-1", 0);
    let x = low_rank_sampler(3, 12, 1).sample(&mut rng);
    b.fact("rank-one-member", true, in_variety(&h, &x)? && all_vanish(&gens, &x)?);
    let mut rng = stream(seed, "rank-3", 0);
    let x = low_rank_sampler(3, 12, 3).sample(&mut rng);
    b.fact("rank-three-separated", true, !all_vanish(&gens, &x)?);
    Ok(b.finish())
}

fn intersection_axiom_regime(spec: &GridSpec) -> Result<()> {
    spec.validate()?;
    if spec.s != spec.t || spec.t < 2 || spec.t > spec.d {
        return invalid(format!(
            "the minor comparison needs s = t and 2 <= t <= d, got s={} t={} d={}",
            spec.s, spec.t, spec.d
        ));
    }
    Ok(())
}

/// With `s = t`, both grid statements are implied by
/// `X _||_ {Y1,Y2} | H2`: every generator is a `t`-minor of the full
/// `d × kl` flattening. Mixtures over `H2` are fully supported rational
/// distributions on which every generator vanishes.
pub fn verify_intersection_axiom(spec: &GridSpec, trials: usize, seed: u64) -> Result<WitnessReport> {
    intersection_axiom_regime(spec)?;
    let mut b = Builder::new("intersection-axiom", seed, trials);
    b.param("spec", spec);
    let (model, stmts) = grid_ci_correspondence(spec)?;
    let jc = ci_ideal(&stmts, &model)?;
    let conclusion = CiStatement::new(&["X"], &["Y1", "Y2"], &["H2"]);
    let target = ci_minor_generators(&conclusion, &model)?;
    b.param("generators", jc.generators().len());
    b.param("conclusion", conclusion.to_text(&model));
    b.param("hidden_rank", conclusion.hidden_rank(&model));

    let as_grid = ci_generators_as_grid(jc.generators(), spec.k);
    let target_grid: std::collections::HashSet<Polynomial> = ci_generators_as_grid(&target, spec.k).into_iter().collect();
    let missing = as_grid.iter().filter(|g| !target_grid.contains(*g)).count();
    b.symbolic(
        "generators-are-conclusion-minors",
        if missing == 0 { SymbolicStatus::Verified } else { SymbolicStatus::Failed },
        format!(
            "{} of {} generators are {}-minors of the {} x {} matrix",
            as_grid.len() - missing,
            as_grid.len(),
            spec.t,
            spec.d,
            spec.k * spec.l
        ),
    );

    let gens = jc.generators().to_vec();
    let checks = vec!["generators".to_string(), "positive".to_string(), "sum-one".to_string()];
    b.campaign("mixture", &checks, &[], |rng| {
        let p = mixture_parametrization_sample(&model, &conclusion, rng)?;
        let point = p.assignment();
        let vanish = gens.iter().map(|g| g.evaluate(&point).map(|v| v.is_zero())).collect::<Result<Vec<_>>>()?;
        let positive = p.entries().iter().all(|e| e > &Zero::zero());
        Ok(TrialResult {
            vanish: vec![vanish.iter().all(|&z| z), positive, p.is_normalized()],
            separations: Vec::new(),
            sample: p.to_string(),
        })
    })?;

    let plain = DiscreteModel::new(vec![
        Variable::observed("X", spec.d),
        Variable::observed("Y1", spec.k),
        Variable::observed("Y2", spec.l),
    ])?;
    let marginal = CiStatement::new(&["X"], &["Y1", "Y2"], &[]);
    let product = mixture_parametrization_sample(&plain, &marginal, &mut stream(seed, "product", 0))?;
    let two_minors = ci_minor_generators(&marginal, &plain)?;
    let point = product.assignment();
    let vanish = two_minors.iter().map(|g| g.evaluate(&point).map(|v| v.is_zero())).collect::<Result<Vec<_>>>()?;
    b.fact("product-distribution-2-minors", true, vanish.iter().all(|&z| z));
    Ok(b.finish())
}

/// Realizations of the grid matroid: rank `d` and circuits equal to the
/// minimal sets of the grid hypergraph together with all `(d+1)`-subsets.
pub fn verify_grid_realization(spec: &GridSpec, trials: usize, seed: u64) -> Result<WitnessReport> {
    spec.validate()?;
    if !spec.in_realization_regime() {
        return invalid(format!("{spec} is outside the realization regime"));
    }
    let mut b = Builder::new("grid-realization", seed, trials);
    b.param("spec", spec);
    let family = grid_circuit_family(spec)?;
    b.param("circuits", family.edges().len());
    b.fact("circuit-axioms", true, is_circuit_family(family.n(), family.edges())?);
    let checks = vec!["rank".to_string(), "circuits".to_string()];
    b.campaign("realization", &checks, &[], |rng| {
        let x = realize_grid_matroid(spec, rng)?;
        let m = Matroid::from_matrix(x.clone());
        Ok(TrialResult {
            vanish: vec![m.rank() == spec.d, m.circuits()? == family.edges()],
            separations: Vec::new(),
            sample: x.to_string(),
        })
    })?;
    Ok(b.finish())
}

/// Generic rigidity ranks and `K_{d+2}` circuits for complete graphs.
pub fn verify_rigidity(cases: &[(usize, usize)], seed: u64) -> Result<WitnessReport> {
    let mut b = Builder::new("rigidity", seed, cases.len());
    for (i, &(d, n)) in cases.iter().enumerate() {
        b.param(&format!("case{}", i + 1), format!("d={d},n={n}"));
        let r = generic_rigidity_check(n, d, &mut stream(seed, "rigidity", i as u64))?;
        let tag = format!("d{d}n{n}");
        b.trial_fact(i, &format!("{tag}-rank"), r.expected_rank, r.rank, None);
        if r.circuits_checked > 0 {
            b.trial_fact(i, &format!("{tag}-circuits"), r.circuits_checked, r.circuits_ok, None);
        }
        b.trial_fact(i, &format!("{tag}-row-support"), true, r.row_support_ok, None);
        b.trial_fact(i, &format!("{tag}-kernel"), true, r.kernel_ok, None);
    }
    Ok(b.finish())
}

/// Affine-cone dimensions of secants of rank-one matrices against
/// `min(mn, k(m+n-k))`.
pub fn verify_terracini(cases: &[(usize, usize, usize)], seed: u64) -> Result<WitnessReport> {
    let mut b = Builder::new("terracini", seed, cases.len());
    for (i, &(m, n, k)) in cases.iter().enumerate() {
        b.param(&format!("case{}", i + 1), format!("m={m},n={n},k={k}"));
        let got = secant_dimension(&SegreModel { m, n }, k, &mut stream(seed, "terracini", i as u64))?;
        let expected = (m * n).min(k * (m + n).saturating_sub(k));
        b.trial_fact(i, &format!("m{m}n{n}k{k}-cone"), expected, got.cone, None);
    }
    Ok(b.finish())
}
