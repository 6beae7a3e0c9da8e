//! Point-line signatures of planar configurations (`d = 3`).

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::Matrix;
use crate::polycore::scalar::{random_nonzero, random_rational, Scalar};

/// Number of lines (rank-2 flats with at least three points), sorted line
/// sizes, and sorted numbers of lines through each point lying on two or
/// more lines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrangementSignature {
    pub lines: usize,
    pub sizes: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

impl fmt::Display for ArrangementSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}, [{}], [{}])", self.lines, list(&self.sizes), list(&self.multiplicities))
    }
}

pub fn arrangement_signature(x: &Matrix) -> Result<ArrangementSignature> {
    if x.rows() != 3 {
        return invalid(format!("arrangement signatures need 3 rows, got {}", x.rows()));
    }
    let points: Vec<usize> = (0..x.cols()).filter(|&j| x.column_rank(&[j]) == 1).collect();
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (ai, &a) in points.iter().enumerate() {
        for &b in &points[ai + 1..] {
            if x.column_rank(&[a, b]) < 2 {
                continue;
            }
            if lines.iter().any(|l| l.contains(&a) && l.contains(&b)) {
                continue;
            }
            let flat: Vec<usize> = points
                .iter()
                .copied()
                .filter(|&c| c == a || c == b || x.column_rank(&[a, b, c]) == 2)
                .collect();
            if flat.len() >= 3 {
                lines.insert(flat);
            }
        }
    }
    let mut sizes: Vec<usize> = lines.iter().map(|l| l.len()).collect();
    sizes.sort_unstable();
    let mut multiplicities: Vec<usize> = points
        .iter()
        .map(|p| lines.iter().filter(|l| l.contains(p)).count())
        .filter(|&c| c >= 2)
        .collect();
    multiplicities.sort_unstable();
    Ok(ArrangementSignature {
        lines: lines.len(),
        sizes,
        multiplicities,
    })
}

fn cross(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn random_vec<R: Rng + ?Sized>(rng: &mut R) -> Vec<Scalar> {
    (0..3).map(|_| random_rational(rng)).collect()
}

/// A random point on the line with normal `n`, as `n × r` for random `r`.
fn point_on<R: Rng + ?Sized>(rng: &mut R, n: &[Scalar]) -> Vec<Scalar> {
    cross(n, &random_vec(rng))
}

/// A random point on the line through `p` and `q`.
fn between<R: Rng + ?Sized>(rng: &mut R, p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let c = random_nonzero(rng);
    p.iter().zip(q).map(|(a, b)| a + &c * b).collect()
}

fn columns(pts: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_columns(3, pts).expect("three coordinates")
}

/// The three arrangements of four lines, each line carrying exactly three
/// points, with their expected signatures: four lines in general position,
/// three concurrent lines plus a transversal, and four concurrent lines.
pub fn four_line_arrangements<R: Rng + ?Sized>(rng: &mut R) -> Vec<(&'static str, Matrix, ArrangementSignature)> {
    let sig = |mult: Vec<usize>| ArrangementSignature {
        lines: 4,
        sizes: vec![3, 3, 3, 3],
        multiplicities: mult,
    };

    let general = {
        let l: Vec<Vec<Scalar>> = (0..4).map(|_| random_vec(rng)).collect();
        let mut pts = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                pts.push(cross(&l[i], &l[j]));
            }
        }
        columns(&pts)
    };

    let apex = random_vec(rng);
    let through_apex: Vec<Vec<Scalar>> = (0..4).map(|_| cross(&apex, &random_vec(rng))).collect();

    let transversal = {
        let t = random_vec(rng);
        let mut pts = vec![apex.clone()];
        for l in &through_apex[..3] {
            let q = cross(l, &t);
            pts.push(q);
        }
        for l in &through_apex[..3] {
            pts.push(between(rng, &apex, &cross(l, &t)));
        }
        columns(&pts)
    };

    let concurrent = {
        let mut pts = vec![apex.clone()];
        for l in &through_apex {
            pts.push(point_on(rng, l));
            let last = pts.last().unwrap().clone();
            pts.push(between(rng, &apex, &last));
        }
        columns(&pts)
    };

    vec![
        ("general", general, sig(vec![2, 2, 2, 2, 2, 2])),
        ("three-concurrent", transversal, sig(vec![2, 2, 2, 3])),
        ("four-concurrent", concurrent, sig(vec![4])),
    ]
}
