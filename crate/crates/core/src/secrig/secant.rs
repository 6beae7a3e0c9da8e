use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::matroid::PolyMap;
use crate::polycore::scalar::{one, random_nonzero, random_rational, random_simplex_point, Scalar, RANDOM_BITS};

const GUARD_ATTEMPTS: usize = 3;

/// A variety in `Q^N` that can produce a random point together with a basis
/// of its tangent space there (rows of the returned matrix).
pub trait TangentModel: Sync {
    fn ambient_dim(&self) -> usize;
    fn sample_tangent(&self, rng: &mut dyn RngCore) -> Result<(Vec<Scalar>, Matrix)>;
}

fn basis_rows(spanning: Matrix) -> Matrix {
    let keep = spanning.independent_rows();
    spanning.select_rows(&keep)
}

/// Rank-one `m × n` matrices, flattened row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegreModel {
    pub m: usize,
    pub n: usize,
}

impl TangentModel for SegreModel {
    fn ambient_dim(&self) -> usize {
        self.m * self.n
    }

    /// At `u v^T` the tangent space is spanned by `u e_j^T` and `e_i v^T`.
    fn sample_tangent(&self, rng: &mut dyn RngCore) -> Result<(Vec<Scalar>, Matrix)> {
        let (m, n) = (self.m, self.n);
        let u: Vec<Scalar> = (0..m).map(|_| random_nonzero(rng)).collect();
        let v: Vec<Scalar> = (0..n).map(|_| random_nonzero(rng)).collect();
        let point = u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect();
        let mut span = Matrix::zeros(m + n, m * n);
        for j in 0..n {
            for i in 0..m {
                span.set(j, i * n + j, u[i].clone());
            }
        }
        for i in 0..m {
            for j in 0..n {
                span.set(n + i, i * n + j, v[j].clone());
            }
        }
        Ok((point, basis_rows(span)))
    }
}

/// Image of a polynomial map; the tangent space at `φ(θ)` is the column
/// space of the Jacobian.
#[derive(Debug, Clone)]
pub struct ParametrizedModel {
    pub map: PolyMap,
}

impl TangentModel for ParametrizedModel {
    fn ambient_dim(&self) -> usize {
        self.map.components().len()
    }

    fn sample_tangent(&self, rng: &mut dyn RngCore) -> Result<(Vec<Scalar>, Matrix)> {
        let theta = self.map.random_point(rng);
        let point = self.map.evaluate(&theta)?;
        let jac = self.map.jacobian_at(&theta)?;
        Ok((point, basis_rows(jac.transpose())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantDimension {
    pub k: usize,
    pub ambient: usize,
    /// Dimension of the affine cone.
    pub cone: usize,
    /// `cone - 1`.
    pub projective: isize,
}

fn stacked_rank(model: &dyn TangentModel, k: usize, rng: &mut dyn RngCore) -> Result<usize> {
    let mut stack: Option<Matrix> = None;
    for _ in 0..k {
        let (_, basis) = model.sample_tangent(rng)?;
        stack = Some(match stack {
            None => basis,
            Some(s) => s.vstack(&basis)?,
        });
    }
    Ok(stack.map(|s| s.rank()).unwrap_or(0))
}

/// Rank of the span of tangent spaces at `k` random points, agreed on by two
/// independent draws.
pub fn secant_dimension<M: TangentModel + ?Sized, R: Rng>(model: &M, k: usize, rng: &mut R) -> Result<SecantDimension> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let model: &dyn TangentModel = &Wrapper(model);
    for _ in 0..GUARD_ATTEMPTS {
        let a = stacked_rank(model, k, rng)?;
        let b = stacked_rank(model, k, rng)?;
        if a == b {
            return Ok(SecantDimension {
                k,
                ambient: model.ambient_dim(),
                cone: a,
                projective: a as isize - 1,
            });
        }
    }
    Err(Error::GenericityGuard(format!(
        "stacked tangent ranks disagreed at {GUARD_ATTEMPTS} pairs of draws"
    )))
}

struct Wrapper<'a, M: ?Sized>(&'a M);

impl<M: TangentModel + ?Sized> TangentModel for Wrapper<'_, M> {
    fn ambient_dim(&self) -> usize {
        self.0.ambient_dim()
    }

    fn sample_tangent(&self, rng: &mut dyn RngCore) -> Result<(Vec<Scalar>, Matrix)> {
        self.0.sample_tangent(rng)
    }
}

fn outer(a: &[Scalar], b: &[Scalar]) -> Matrix {
    Matrix::from_rows(a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect()).expect("rectangular")
}

/// A random rank-one matrix `u v^T` with nonzero rational entries.
pub fn rank_one_sample<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Matrix {
    let u: Vec<Scalar> = (0..m).map(|_| random_nonzero(rng)).collect();
    let v: Vec<Scalar> = (0..n).map(|_| random_nonzero(rng)).collect();
    outer(&u, &v)
}

/// `sum_i λ_i a_i b_i^T` with `λ` in the open simplex and positive
/// stochastic `a_i`, `b_i`: a positive probability matrix of nonnegative
/// rank at most `k`.
pub fn mixture_sample<R: Rng + ?Sized>(m: usize, n: usize, k: usize, rng: &mut R) -> Result<Matrix> {
    if k == 0 || m == 0 || n == 0 {
        return invalid("mixture needs m, n, k >= 1");
    }
    let lambda = random_simplex_point(rng, k);
    let mut acc = Matrix::zeros(m, n);
    for l in lambda {
        let a = random_simplex_point(rng, m);
        let b = random_simplex_point(rng, n);
        let a: Vec<Scalar> = a.iter().map(|x| x * &l).collect();
        let term = outer(&a, &b);
        for i in 0..m {
            for j in 0..n {
                acc.set(i, j, acc.get(i, j) + term.get(i, j));
            }
        }
    }
    Ok(acc)
}

/// `λ u + (1 - λ) v`.
pub fn join_point(u: &Matrix, v: &Matrix, lambda: &Scalar) -> Result<Matrix> {
    if (u.rows(), u.cols()) != (v.rows(), v.cols()) {
        return invalid("join of points in different ambient spaces");
    }
    let mu = one() - lambda;
    let rows = (0..u.rows())
        .map(|i| (0..u.cols()).map(|j| lambda * u.get(i, j) + &mu * v.get(i, j)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// A random point on the line through samples of `u_sampler` and
/// `v_sampler`. With `mixture` set, `λ` is drawn from `[0, 1]`; otherwise it
/// is an arbitrary rational.
pub fn join_sample<R, U, V>(u_sampler: U, v_sampler: V, mixture: bool, rng: &mut R) -> Result<(Scalar, Matrix)>
where
    R: Rng + ?Sized,
    U: FnOnce(&mut R) -> Matrix,
    V: FnOnce(&mut R) -> Matrix,
{
    let u = u_sampler(rng);
    let v = v_sampler(rng);
    let lambda = if mixture {
        let den = 1i64 << RANDOM_BITS;
        Scalar::new(rng.gen_range(0..=den).into(), den.into())
    } else {
        random_rational(rng)
    };
    let p = join_point(&u, &v, &lambda)?;
    Ok((lambda, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::int;
    use crate::polycore::PolyMatrix;
    use crate::hypergraph::matrix_assignment;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expected(m: usize, n: usize, k: usize) -> usize {
        (m * n).min(k * (m + n).saturating_sub(k))
    }

    #[test]
    fn segre_tangent_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let model = SegreModel { m: 3, n: 3 };
        let (p, basis) = model.sample_tangent(&mut rng).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(basis.rows(), 5);
        assert_eq!(basis.rank(), 5);
    }

    #[test]
    fn terracini_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for (m, n, k, want) in [(3, 3, 1, 5), (3, 3, 2, 8), (3, 3, 3, 9), (3, 4, 2, 10), (4, 4, 3, 15)] {
            let d = secant_dimension(&SegreModel { m, n }, k, &mut rng).unwrap();
            assert_eq!(d.cone, want);
            assert_eq!(d.cone, expected(m, n, k));
            assert_eq!(d.projective, want as isize - 1);
        }
    }

    #[test]
    fn parametrized_model_agrees_with_segre() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let param = ParametrizedModel { map: PolyMap::segre(3, 4) };
        for k in 1..=3 {
            let a = secant_dimension(&param, k, &mut rng).unwrap().cone;
            let b = secant_dimension(&SegreModel { m: 3, n: 4 }, k, &mut rng).unwrap().cone;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn mixtures_have_low_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let p = mixture_sample(3, 3, 1, &mut rng).unwrap();
        assert_eq!(p.rank(), 1);
        let q = mixture_sample(3, 3, 2, &mut rng).unwrap();
        assert!(q.rank() <= 2);
        let x = PolyMatrix::generic("x", 3, 3);
        assert!(x.minor(&[0, 1, 2], &[0, 1, 2]).unwrap().evaluate(&matrix_assignment(&q)).unwrap().is_zero());
        let total: Scalar = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| q.get(i, j).clone()).sum();
        assert_eq!(total, int(1));
        assert!((0..3).all(|i| (0..3).all(|j| q.get(i, j) > &int(0))));
    }

    #[test]
    fn joins() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let u = rank_one_sample(3, 3, &mut rng);
        let v = rank_one_sample(3, 3, &mut rng);
        assert_eq!(join_point(&u, &v, &int(1)).unwrap(), u);
        assert_eq!(join_point(&u, &v, &int(0)).unwrap(), v);
        for mixture in [false, true] {
            let (lambda, p) = join_sample(|r| rank_one_sample(3, 3, r), |r| rank_one_sample(3, 3, r), mixture, &mut rng).unwrap();
            assert!(p.rank() <= 2);
            if mixture {
                assert!(lambda >= int(0) && lambda <= int(1));
            }
        }
        assert!(join_point(&u, &Matrix::zeros(2, 2), &int(1)).is_err());
    }
}
