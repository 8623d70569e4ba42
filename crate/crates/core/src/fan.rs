//! Fans of strongly convex rational polyhedral cones.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::divisor::{q_cartier_basis, q_cartier_data, CartierData, ToricDivisor};
use crate::error::{Error, Result};
use crate::lattice::{
    determinant, inverse_q, pair, rank_vectors, rat, vectors_index, Integer, IntegerMatrix,
    LatticeVector, Rational,
};
use crate::mori::intersect_cartier;
use crate::polyhedral::ConeGeometry;
use crate::simplex::{LinearProgram, LpOutcome, Relation};

/// A cone of a fan, stored as the sorted indices of its rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_subset(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|r| other.contains(*r)).collect())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

/// A codimension-one cone together with its two adjacent maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wall {
    pub tau: Cone,
    pub left: usize,
    pub right: usize,
}

/// A failed fan axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongDimension { ray: usize },
    ZeroRay { ray: usize },
    RayNotPrimitive { ray: usize },
    DuplicateRay { first: usize, second: usize },
    UnusedRay { ray: usize },
    IndexOutOfRange { cone: usize, index: usize },
    EmptyCone { cone: usize },
    DuplicateCone { first: usize, second: usize },
    NotStronglyConvex { cone: usize },
    RayNotExtremal { cone: usize, ray: usize },
    IntersectionNotAFace { first: usize, second: usize },
    ConeIsFace { face: usize, of: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongDimension { ray } => write!(f, "ray {ray} has the wrong dimension"),
            Violation::ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            Violation::RayNotPrimitive { ray } => write!(f, "ray {ray} not primitive"),
            Violation::DuplicateRay { first, second } => {
                write!(f, "rays {first} and {second} coincide")
            }
            Violation::UnusedRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
            Violation::IndexOutOfRange { cone, index } => {
                write!(f, "cone {cone} references missing ray {index}")
            }
            Violation::EmptyCone { cone } => write!(f, "cone {cone} is empty"),
            Violation::DuplicateCone { first, second } => {
                write!(f, "cones {first} and {second} coincide")
            }
            Violation::NotStronglyConvex { cone } => {
                write!(f, "cone {cone} is not strongly convex")
            }
            Violation::RayNotExtremal { cone, ray } => {
                write!(f, "ray {ray} is not an extremal ray of cone {cone}")
            }
            Violation::IntersectionNotAFace { first, second } => {
                write!(f, "intersection not a face: cones {first} and {second}")
            }
            Violation::ConeIsFace { face, of } => {
                write!(f, "maximal cone {face} is a face of cone {of}")
            }
        }
    }
}

/// A fan in `N_R = R^dim`, given by primitive rays and maximal cones.
///
/// Ray order is significant and preserved. Fans built with [`Fan::new`] have
/// passed [`validate_fan`].
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Cone>,
    geometry: OnceLock<Vec<ConeGeometry>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    pub fn new(dim: usize, rays: Vec<LatticeVector>, cones: Vec<Cone>) -> Result<Self> {
        let violations = validate_fan(dim, &rays, &cones);
        if !violations.is_empty() {
            let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidFan(text.join("; ")));
        }
        Ok(Self::new_trusted(dim, rays, cones))
    }

    /// Builds a fan whose validity is guaranteed by construction.
    pub(crate) fn new_trusted(dim: usize, rays: Vec<LatticeVector>, cones: Vec<Cone>) -> Self {
        Fan {
            dim,
            rays,
            cones,
            geometry: OnceLock::new(),
        }
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            dim,
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
        )
    }

    /// The fan of a point: the zero lattice with its zero cone.
    pub fn point() -> Self {
        Self::new_trusted(0, Vec::new(), vec![Cone::zero()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn cone_vectors(&self, cone: &Cone) -> Vec<LatticeVector> {
        cone.rays().iter().map(|&r| self.rays[r].clone()).collect()
    }

    pub fn violations(&self) -> Vec<Violation> {
        validate_fan(self.dim, &self.rays, &self.cones)
    }

    pub(crate) fn geometries(&self) -> &[ConeGeometry] {
        self.geometry.get_or_init(|| {
            self.cones
                .iter()
                .map(|c| ConeGeometry::new(self.dim, &self.cone_vectors(c)))
                .collect()
        })
    }

    pub(crate) fn geometry(&self, cone: usize) -> &ConeGeometry {
        &self.geometries()[cone]
    }

    pub fn cone_dim(&self, cone: usize) -> usize {
        self.geometry(cone).span_dim()
    }

    /// Facets of a maximal cone as cones of global ray indices, sorted.
    pub fn facets_of(&self, cone: usize) -> Vec<Cone> {
        let c = &self.cones[cone];
        let mut out: Vec<Cone> = self
            .geometry(cone)
            .facets()
            .iter()
            .map(|f| Cone::new(f.members.iter().map(|&i| c.rays()[i]).collect()))
            .collect();
        out.sort();
        out
    }

    /// Index of the first maximal cone containing `v`.
    pub fn find_cone_containing(&self, v: &LatticeVector) -> Option<usize> {
        let q = v.to_rational();
        (0..self.cones.len()).find(|&i| self.geometry(i).contains(&q))
    }

    pub fn is_pure_full_dimensional(&self) -> bool {
        !self.cones.is_empty() && (0..self.cones.len()).all(|i| self.cone_dim(i) == self.dim)
    }

    /// Complete iff pure full-dimensional and every facet of every maximal
    /// cone is shared by exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return self.cones.len() == 1;
        }
        if !self.is_pure_full_dimensional() {
            return false;
        }
        let mut counts: HashMap<Cone, usize> = HashMap::new();
        for i in 0..self.cones.len() {
            for f in self.facets_of(i) {
                *counts.entry(f).or_default() += 1;
            }
        }
        counts.values().all(|&c| c == 2)
    }

    pub fn is_cone_simplicial(&self, cone: usize) -> bool {
        self.cones[cone].len() == self.cone_dim(cone)
    }

    pub fn is_simplicial(&self) -> bool {
        (0..self.cones.len()).all(|i| self.is_cone_simplicial(i))
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial()
            && self
                .cones
                .iter()
                .all(|c| self.multiplicity(c).is_ok_and(|m| m.is_one()))
    }

    /// Index of the lattice generated by the rays of a simplicial cone inside
    /// the saturated lattice of its span.
    pub fn multiplicity(&self, cone: &Cone) -> Result<Integer> {
        let vectors = self.cone_vectors(cone);
        if rank_vectors(&vectors) != vectors.len() {
            return Err(Error::NonSimplicialCone(cone.rays().to_vec()));
        }
        vectors_index(&vectors)
    }

    /// Every facet of every maximal cone, once, with its two neighbours.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let mut owner: BTreeMap<Cone, usize> = BTreeMap::new();
        let mut walls = Vec::new();
        for i in 0..self.cones.len() {
            for f in self.facets_of(i) {
                match owner.remove(&f) {
                    Some(j) => walls.push(Wall {
                        tau: f,
                        left: j,
                        right: i,
                    }),
                    None => {
                        owner.insert(f, i);
                    }
                }
            }
        }
        walls.sort_by(|a, b| (a.left, a.right, &a.tau).cmp(&(b.left, b.right, &b.tau)));
        Ok(walls)
    }

    /// True iff both fans have the same support and every maximal cone of
    /// `self` lies in some cone of `coarse`.
    pub fn refines(&self, coarse: &Fan) -> bool {
        if self.dim != coarse.dim {
            return false;
        }
        let mut inside: Vec<Vec<usize>> = vec![Vec::new(); coarse.cones.len()];
        for (i, c) in self.cones.iter().enumerate() {
            let vectors: Vec<Vec<Rational>> = self
                .cone_vectors(c)
                .iter()
                .map(LatticeVector::to_rational)
                .collect();
            let hosts: Vec<usize> = (0..coarse.cones.len())
                .filter(|&j| vectors.iter().all(|v| coarse.geometry(j).contains(v)))
                .collect();
            if hosts.is_empty() {
                return false;
            }
            for j in hosts {
                inside[j].push(i);
            }
        }
        // Each coarse cone must be covered by the fine cones inside it: fine
        // cones of full relative dimension whose facets either pair up or lie
        // on the coarse boundary.
        for (j, members) in inside.iter().enumerate() {
            let g = coarse.geometry(j);
            let d = g.span_dim();
            if d == 0 {
                continue;
            }
            let full: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&i| self.cone_dim(i) == d)
                .collect();
            if full.is_empty() {
                return false;
            }
            let mut counts: HashMap<Cone, usize> = HashMap::new();
            for &i in &full {
                for f in self.facets_of(i) {
                    *counts.entry(f).or_default() += 1;
                }
            }
            for (facet, count) in counts {
                if count == 2 {
                    continue;
                }
                if count > 2 {
                    return false;
                }
                let vectors: Vec<Vec<Rational>> = facet
                    .rays()
                    .iter()
                    .map(|&r| self.rays[r].to_rational())
                    .collect();
                let on_boundary = g.facets().iter().any(|cf| {
                    vectors
                        .iter()
                        .all(|v| crate::lattice::dot_q(&cf.normal, v).is_zero())
                });
                if !on_boundary {
                    return false;
                }
            }
        }
        true
    }

    /// A strictly convex support function, if the fan is projective.
    pub fn is_projective(&self) -> Result<Option<ProjectivityCertificate>> {
        let walls = self.walls()?;
        let basis = q_cartier_basis(self)?;
        let k = basis.len();
        // Variables: basis coordinates x_b (free, boxed in [-1, 1]) and the
        // margin t >= 0 as the last variable.
        let mut lp = LinearProgram::new(k + 1);
        for b in 0..k {
            lp.set_free(b);
            lp.add_sparse(&[(b, rat(1, 1))], Relation::Le, rat(1, 1));
            lp.add_sparse(&[(b, rat(1, 1))], Relation::Ge, rat(-1, 1));
        }
        let degrees: Vec<Vec<Rational>> = basis
            .iter()
            .map(|d| {
                let data = q_cartier_data(self, d)?.ok_or(Error::NotQCartier)?;
                Ok(walls
                    .iter()
                    .map(|w| crate::mori::intersect_with_data(self, &data, w))
                    .collect())
            })
            .collect::<Result<_>>()?;
        for w in 0..walls.len() {
            let mut terms: Vec<(usize, Rational)> = degrees
                .iter()
                .enumerate()
                .map(|(b, row)| (b, row[w].clone()))
                .collect();
            terms.push((k, rat(-1, 1)));
            lp.add_sparse(&terms, Relation::Ge, Rational::zero());
        }
        let mut objective = vec![Rational::zero(); k + 1];
        objective[k] = rat(1, 1);
        let LpOutcome::Optimal { value, point } = lp.maximize(&objective) else {
            return Ok(None);
        };
        if !value.is_positive() {
            return Ok(None);
        }
        let mut ample = ToricDivisor::zero(self.num_rays());
        for (b, x) in point.iter().take(k).enumerate() {
            ample = ample.add(&basis[b].scale(x));
        }
        let data = q_cartier_data(self, &ample.scale(&rat(-1, 1)))?.ok_or(Error::NotQCartier)?;
        debug_assert!(walls
            .iter()
            .all(|w| intersect_cartier(self, &ample, w).is_ok_and(|d| d.is_positive())));
        Ok(Some(ProjectivityCertificate {
            ample_divisor: ample,
            support_function: data,
        }))
    }

    /// Complete, simplicial, `n + 1` rays and every maximal cone smooth.
    pub fn is_projective_space(&self) -> bool {
        self.dim >= 1
            && self.rays.len() == self.dim + 1
            && self.is_complete()
            && self.is_simplicial()
            && self
                .cones
                .iter()
                .all(|c| self.multiplicity(c).is_ok_and(|m| m.is_one()))
    }
}

/// Per-cone linear functionals of a convex piecewise-linear function that is
/// strictly convex across every wall, plus the ample divisor it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityCertificate {
    pub ample_divisor: ToricDivisor,
    pub support_function: CartierData,
}

impl ProjectivityCertificate {
    /// Checks agreement on walls and strict convexity directly from the
    /// functionals.
    pub fn verify(&self, fan: &Fan) -> bool {
        let Ok(walls) = fan.walls() else {
            return false;
        };
        let m = self.support_function.functionals();
        if m.len() != fan.cones().len() {
            return false;
        }
        walls.iter().all(|w| {
            let (a, b) = (&m[w.left], &m[w.right]);
            let agree = w
                .tau
                .rays()
                .iter()
                .all(|&r| pair(a, fan.ray(r)) == pair(b, fan.ray(r)));
            let strict = |own: &[Rational], other: &[Rational], cone: usize| {
                fan.cone(cone)
                    .rays()
                    .iter()
                    .filter(|r| !w.tau.contains(**r))
                    .all(|&r| (pair(own, fan.ray(r)) - pair(other, fan.ray(r))).is_positive())
            };
            agree && strict(b, a, w.right) && strict(a, b, w.left)
        })
    }
}

/// Checks every fan axiom; the result is empty iff the data form a fan.
pub fn validate_fan(dim: usize, rays: &[LatticeVector], cones: &[Cone]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut shape_ok = true;
    for (i, r) in rays.iter().enumerate() {
        if r.dim() != dim {
            out.push(Violation::WrongDimension { ray: i });
            shape_ok = false;
        } else if r.is_zero() {
            out.push(Violation::ZeroRay { ray: i });
            shape_ok = false;
        } else if !r.is_primitive() {
            out.push(Violation::RayNotPrimitive { ray: i });
        }
    }
    let mut seen: HashMap<&LatticeVector, usize> = HashMap::new();
    for (i, r) in rays.iter().enumerate() {
        if let Some(&j) = seen.get(r) {
            out.push(Violation::DuplicateRay { first: j, second: i });
        } else {
            seen.insert(r, i);
        }
    }
    let mut used = vec![false; rays.len()];
    for (ci, c) in cones.iter().enumerate() {
        if c.is_empty() && !(dim == 0 || rays.is_empty()) {
            out.push(Violation::EmptyCone { cone: ci });
        }
        for &r in c.rays() {
            if r >= rays.len() {
                out.push(Violation::IndexOutOfRange { cone: ci, index: r });
                shape_ok = false;
            } else {
                used[r] = true;
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            out.push(Violation::UnusedRay { ray: i });
        }
    }
    let mut cone_seen: HashMap<&Cone, usize> = HashMap::new();
    for (i, c) in cones.iter().enumerate() {
        if let Some(&j) = cone_seen.get(c) {
            out.push(Violation::DuplicateCone { first: j, second: i });
        } else {
            cone_seen.insert(c, i);
        }
    }
    if !shape_ok {
        return out;
    }

    let vectors = |c: &Cone| -> Vec<LatticeVector> {
        c.rays().iter().map(|&r| rays[r].clone()).collect()
    };
    let geoms: Vec<ConeGeometry> = cones
        .iter()
        .map(|c| ConeGeometry::new(dim, &vectors(c)))
        .collect();
    let mut convex = vec![true; cones.len()];
    for (ci, g) in geoms.iter().enumerate() {
        if !g.is_pointed() {
            out.push(Violation::NotStronglyConvex { cone: ci });
            convex[ci] = false;
            continue;
        }
        let ext: BTreeSet<usize> = g.extremal_generators().into_iter().collect();
        for (local, &r) in cones[ci].rays().iter().enumerate() {
            if !ext.contains(&local) {
                out.push(Violation::RayNotExtremal { cone: ci, ray: r });
                convex[ci] = false;
            }
        }
    }

    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            if !convex[a] || !convex[b] || cones[a] == cones[b] {
                continue;
            }
            if let Some(v) = check_pair(rays, cones, &geoms, a, b) {
                out.push(v);
            }
        }
    }
    out
}

fn local_indices(cone: &Cone, subset: &Cone) -> Vec<usize> {
    subset
        .rays()
        .iter()
        .map(|r| cone.rays().binary_search(r).expect("subset"))
        .collect()
}

fn check_pair(
    rays: &[LatticeVector],
    cones: &[Cone],
    geoms: &[ConeGeometry],
    a: usize,
    b: usize,
) -> Option<Violation> {
    let common = cones[a].intersection(&cones[b]);
    let la = local_indices(&cones[a], &common);
    let lb = local_indices(&cones[b], &common);
    if !geoms[a].is_face(&la) || !geoms[b].is_face(&lb) {
        return Some(Violation::IntersectionNotAFace { first: a, second: b });
    }
    if common == cones[a] {
        return Some(Violation::ConeIsFace { face: a, of: b });
    }
    if common == cones[b] {
        return Some(Violation::ConeIsFace { face: b, of: a });
    }
    // Any point of the intersection outside cone(common) has a positive
    // value under the face functional of `common` in cone a.
    let functional = geoms[a].face_functional(&la);
    let na = cones[a].len();
    let nb = cones[b].len();
    let dim = rays[0].dim();
    let mut lp = LinearProgram::new(na + nb);
    for k in 0..dim {
        let mut terms = Vec::with_capacity(na + nb);
        for (i, &r) in cones[a].rays().iter().enumerate() {
            terms.push((i, crate::lattice::rat_int(&rays[r].coords()[k])));
        }
        for (j, &r) in cones[b].rays().iter().enumerate() {
            terms.push((na + j, -crate::lattice::rat_int(&rays[r].coords()[k])));
        }
        lp.add_sparse(&terms, Relation::Eq, Rational::zero());
    }
    let weights: Vec<(usize, Rational)> = cones[a]
        .rays()
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, pair(&functional, &rays[r])))
        .collect();
    lp.add_sparse(&weights, Relation::Eq, rat(1, 1));
    lp.feasible_point()
        .map(|_| Violation::IntersectionNotAFace { first: a, second: b })
}

/// Searches for `T ∈ GL_n(Z)` (acting on row vectors) mapping the rays of
/// `a` bijectively onto those of `b` and cones onto cones.
pub fn lattice_isomorphism(a: &Fan, b: &Fan) -> Option<IntegerMatrix> {
    let n = a.dim();
    if n != b.dim() || a.num_rays() != b.num_rays() || a.cones().len() != b.cones().len() {
        return None;
    }
    if n == 0 {
        return Some(IntegerMatrix::identity(0));
    }
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..a.num_rays() {
        let mut trial: Vec<LatticeVector> = basis.iter().map(|&j| a.ray(j).clone()).collect();
        trial.push(a.ray(i).clone());
        if rank_vectors(&trial) == trial.len() {
            basis.push(i);
        }
        if basis.len() == n {
            break;
        }
    }
    if basis.len() < n {
        return None;
    }
    let source: Vec<Vec<Rational>> = basis.iter().map(|&i| a.ray(i).to_rational()).collect();
    let source_inv = inverse_q(&source)?;
    let target_index: HashMap<&LatticeVector, usize> =
        b.rays().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let target_cones: BTreeSet<&Cone> = b.cones().iter().collect();

    let mut choice = vec![0usize; n];
    let m = b.num_rays();
    fn next(choice: &mut [usize], m: usize) -> bool {
        for i in (0..choice.len()).rev() {
            if choice[i] + 1 < m {
                choice[i] += 1;
                for c in choice.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                return true;
            }
        }
        false
    }
    loop {
        let distinct = choice.iter().collect::<BTreeSet<_>>().len() == n;
        if distinct {
            let images: Vec<Vec<Rational>> =
                choice.iter().map(|&j| b.ray(j).to_rational()).collect();
            // T = source^{-1} · images
            let t: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(Rational::zero(), |acc, k| {
                                acc + &source_inv[i][k] * &images[k][j]
                            })
                        })
                        .collect()
                })
                .collect();
            if t.iter().flatten().all(|x| x.is_integer()) {
                let tm = IntegerMatrix::new(
                    t.iter()
                        .map(|r| r.iter().map(|x| x.to_integer()).collect())
                        .collect(),
                )
                .expect("square");
                if determinant(&tm).is_ok_and(|d| d.abs().is_one()) {
                    let perm: Option<Vec<usize>> = a
                        .rays()
                        .iter()
                        .map(|r| target_index.get(&tm.apply_row(r)).copied())
                        .collect();
                    if let Some(perm) = perm {
                        let ok = a.cones().iter().all(|c| {
                            let mapped = Cone::new(c.rays().iter().map(|&r| perm[r]).collect());
                            target_cones.contains(&mapped)
                        });
                        if ok {
                            return Some(tm);
                        }
                    }
                }
            }
        }
        if !next(&mut choice, m) {
            return None;
        }
    }
}

pub fn is_lattice_isomorphic(a: &Fan, b: &Fan) -> bool {
    lattice_isomorphism(a, b).is_some()
}
