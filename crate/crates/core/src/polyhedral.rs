//! Exact facet descriptions of rational polyhedral cones given by generators.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::lattice::{
    dot_q, nullspace_q, primitive_integer_direction, rank_q, LatticeVector, Rational,
};

/// A facet of a cone: an inward normal and the generators it vanishes on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    /// Indices into the cone's generator list.
    pub members: Vec<usize>,
}

/// H-description of `cone(generators)`: `equations · x = 0` and
/// `facet.normal · x ≥ 0` for every facet.
#[derive(Clone, Debug)]
pub struct ConeGeometry {
    ambient_dim: usize,
    generators: Vec<Vec<Rational>>,
    span_dim: usize,
    equations: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, size, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn k_subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    subsets(k, size)
}

impl ConeGeometry {
    pub fn new(ambient_dim: usize, generators: &[LatticeVector]) -> Self {
        let gens: Vec<Vec<Rational>> = generators.iter().map(LatticeVector::to_rational).collect();
        Self::from_rational(ambient_dim, gens)
    }

    pub fn from_rational(ambient_dim: usize, generators: Vec<Vec<Rational>>) -> Self {
        let span_dim = rank_q(&generators);
        let equations = if generators.is_empty() {
            nullspace_q(&[], ambient_dim)
        } else {
            nullspace_q(&generators, ambient_dim)
        };
        let mut facets: Vec<Facet> = Vec::new();
        if span_dim >= 1 {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for subset in subsets(generators.len(), span_dim - 1) {
                let mut rows: Vec<Vec<Rational>> =
                    subset.iter().map(|&i| generators[i].clone()).collect();
                if rank_q(&rows) != span_dim - 1 {
                    continue;
                }
                rows.extend(equations.iter().cloned());
                let kernel = nullspace_q(&rows, ambient_dim);
                debug_assert_eq!(kernel.len(), 1);
                let normal = primitive_integer_direction(&kernel[0])
                    .expect("nonzero normal")
                    .to_rational();
                let values: Vec<Rational> =
                    generators.iter().map(|g| dot_q(&normal, g)).collect();
                let sign = if values.iter().all(|v| !v.is_negative()) {
                    1
                } else if values.iter().all(|v| !v.is_positive()) {
                    -1
                } else {
                    continue;
                };
                let members: Vec<usize> = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.is_zero())
                    .map(|(i, _)| i)
                    .collect();
                if !seen.insert(members.clone()) {
                    continue;
                }
                let normal = if sign > 0 {
                    normal
                } else {
                    normal.iter().map(|x| -x).collect()
                };
                facets.push(Facet { normal, members });
            }
        }
        ConeGeometry {
            ambient_dim,
            generators,
            span_dim,
            equations,
            facets,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn span_dim(&self) -> usize {
        self.span_dim
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot_q(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_q(&f.normal, v).is_negative())
    }

    pub fn contains_lattice(&self, v: &LatticeVector) -> bool {
        self.contains(&v.to_rational())
    }

    /// True when `v` lies in the span and strictly inside every facet.
    pub fn relative_interior_contains(&self, v: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot_q(e, v).is_zero())
            && self.facets.iter().all(|f| dot_q(&f.normal, v).is_positive())
    }

    /// Generators lying in the lineality space `C ∩ −C`.
    pub fn lineality_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| {
                self.facets
                    .iter()
                    .all(|f| dot_q(&f.normal, &self.generators[i]).is_zero())
            })
            .collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_generators()
            .iter()
            .all(|&i| self.generators[i].iter().all(Zero::is_zero))
    }

    /// Generators of the smallest face containing the given generators.
    pub fn minimal_face(&self, subset: &[usize]) -> Vec<usize> {
        let containing: Vec<&Facet> = self
            .facets
            .iter()
            .filter(|f| subset.iter().all(|i| f.members.contains(i)))
            .collect();
        (0..self.generators.len())
            .filter(|i| containing.iter().all(|f| f.members.contains(i)))
            .collect()
    }

    /// Whether `cone(subset)` is a face, with `subset` exactly its generators.
    pub fn is_face(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.minimal_face(&s) == s
    }

    /// A covector that is nonnegative on the cone and vanishes exactly on the
    /// smallest face containing `subset`.
    pub fn face_functional(&self, subset: &[usize]) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); self.ambient_dim];
        for f in &self.facets {
            if subset.iter().all(|i| f.members.contains(i)) {
                for (a, b) in m.iter_mut().zip(&f.normal) {
                    *a += b;
                }
            }
        }
        m
    }

    /// Generators spanning a one-dimensional face.
    pub fn extremal_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| {
                let face = self.minimal_face(&[i]);
                let rows: Vec<Vec<Rational>> =
                    face.iter().map(|&j| self.generators[j].clone()).collect();
                rank_q(&rows) == 1
            })
            .collect()
    }
}
