use std::fmt;

use rand::RngCore;

use crate::linalg::Matrix;
use crate::polycore::scalar::{random_nonzero, random_rational, zero, Scalar};

/// Draws exact rational points on a fixed component. `draw` returns the
/// point and the number of degenerate draws it discarded on the way.
pub struct ComponentSampler {
    name: String,
    draw: Box<dyn Fn(&mut dyn RngCore) -> (Matrix, usize) + Send + Sync>,
}

impl ComponentSampler {
    pub fn new(name: &str, draw: impl Fn(&mut dyn RngCore) -> (Matrix, usize) + Send + Sync + 'static) -> Self {
        Self {
            name: name.to_string(),
            draw: Box::new(draw),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> Matrix {
        (self.draw)(rng).0
    }

    pub fn sample_counted(&self, rng: &mut dyn RngCore) -> (Matrix, usize) {
        (self.draw)(rng)
    }
}

impl fmt::Debug for ComponentSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComponentSampler").field("name", &self.name).finish()
    }
}

fn random_vector(rng: &mut dyn RngCore, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| random_rational(rng)).collect()
}

/// `3 × 7` matrices whose first column is zero: vertex 1 is a loop.
pub fn loop_sampler() -> ComponentSampler {
    ComponentSampler::new("loop", |rng| {
        let mut cols = vec![vec![zero(); 3]];
        cols.extend((1..7).map(|_| random_vector(rng, 3)));
        (Matrix::from_columns(3, &cols).expect("3 x 7"), 0)
    })
}

/// `3 × 7` matrices with columns `2,3`, `4,5` and `6,7` on three distinct
/// lines through column 1 (in the projective plane). Draws with a zero apex
/// or two coinciding lines are discarded.
pub fn concurrent_lines_sampler() -> ComponentSampler {
    ComponentSampler::new("concurrent-lines", |rng| {
        let mut discarded = 0;
        loop {
            let apex = random_vector(rng, 3);
            let dirs: Vec<Vec<Scalar>> = (0..3).map(|_| random_vector(rng, 3)).collect();
            let mut basis = vec![apex.clone()];
            basis.extend(dirs.iter().cloned());
            let frame = Matrix::from_columns(3, &basis).expect("3 x 4");
            let distinct = (1..4).all(|a| (a + 1..4).all(|b| frame.column_rank(&[0, a, b]) == 3));
            if !distinct {
                discarded += 1;
                continue;
            }
            let mut cols = vec![apex.clone()];
            for dir in &dirs {
                for _ in 0..2 {
                    let (a, b) = (random_nonzero(rng), random_nonzero(rng));
                    cols.push(apex.iter().zip(dir).map(|(p, v)| &a * p + &b * v).collect());
                }
            }
            return (Matrix::from_columns(3, &cols).expect("3 x 7"), discarded);
        }
    })
}

/// `d × n` products of random `d × r` and `r × n` rational matrices.
pub fn low_rank_sampler(d: usize, n: usize, r: usize) -> ComponentSampler {
    ComponentSampler::new(&format!("rank-{r}"), move |rng| {
        let a = Matrix::from_rows((0..d).map(|_| random_vector(rng, r)).collect()).expect("rectangular");
        let b = Matrix::from_rows((0..r).map(|_| random_vector(rng, n)).collect()).expect("rectangular");
        (a.mul(&b).expect("conformable"), 0)
    })
}
