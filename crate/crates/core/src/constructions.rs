//! Builders for standard fans, random fixtures and Q-factorializations.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, Wall};
use crate::lattice::{
    int, nullspace_q, pair, primitive_integer_direction, primitivize, rank_vectors, rat_int,
    solve_q, Integer, IntegerMatrix, LatticeQuotient, LatticeVector, Rational,
};
use crate::mori::wall_relation;
use crate::polyhedral::{k_subsets, ConeGeometry};

/// Rays `e_1, …, e_n, −Σ e_i`; maximal cones are all `n`-subsets.
pub fn projective_space(n: usize) -> Fan {
    assert!(n >= 1, "projective space needs n >= 1");
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector::new(vec![int(-1); n]));
    let cones = all_but_one(n + 1);
    Fan::new_trusted(n, rays, cones)
}

fn all_but_one(k: usize) -> Vec<Cone> {
    k_subsets(k, k - 1).into_iter().map(Cone::new).collect()
}

/// A weighted projective space together with its well-formed weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProjective {
    pub fan: Fan,
    pub input: Vec<u64>,
    /// `c_i`, aligned with the rays: `Σ c_i f_i = 0` and `gcd(c) = 1`.
    pub weights: Vec<u64>,
}

fn check_weights(w: &[u64]) -> Result<()> {
    if w.len() < 2 {
        return Err(Error::InvalidWeights("need at least two weights".into()));
    }
    if w.contains(&0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    Ok(())
}

/// Realizes `N = Z^{n+1} / Z·d` and takes the primitive images of the
/// standard basis as rays.
pub fn weighted_projective(w: &[u64]) -> Result<WeightedProjective> {
    check_weights(w)?;
    let g = w.iter().fold(0u64, |a, &b| a.gcd(&b));
    let reduced: Vec<i64> = w.iter().map(|&x| (x / g) as i64).collect();
    let m = w.len();
    let n = m - 1;
    let quotient = LatticeQuotient::new(m, &[LatticeVector::from_i64(&reduced)])?;
    let mut rays = Vec::with_capacity(m);
    let mut scaled = Vec::with_capacity(m);
    for (i, &d) in reduced.iter().enumerate() {
        let image = quotient.project(&LatticeVector::unit(m, i));
        let u = image.content();
        rays.push(primitivize(&image)?);
        scaled.push(u * int(d));
    }
    let common = scaled.iter().fold(Integer::zero(), |a, b| a.gcd(b));
    let weights = scaled
        .iter()
        .map(|c| u64::try_from(c / &common).expect("weights fit in u64"))
        .collect();
    Ok(WeightedProjective {
        fan: Fan::new_trusted(n, rays, all_but_one(m)),
        input: w.to_vec(),
        weights,
    })
}

/// The well-formed weights of `P(w)`, ascending.
pub fn normalize_weights(w: &[u64]) -> Result<Vec<u64>> {
    let mut c = weighted_projective(w)?.weights;
    c.sort_unstable();
    Ok(c)
}

/// The wall spanned by all rays except the two with the largest weights
/// (ties broken by position).
pub fn distinguished_wall(wps: &WeightedProjective) -> Result<Wall> {
    let mut order: Vec<usize> = (0..wps.weights.len()).collect();
    order.sort_by_key(|&i| (wps.weights[i], i));
    let tau = Cone::new(order[..order.len() - 2].to_vec());
    wps.fan
        .walls()?
        .into_iter()
        .find(|w| w.tau == tau)
        .ok_or_else(|| Error::BadConfiguration("distinguished wall missing".into()))
}

/// A complete simplicial fan on `n + 1` rays, with its positive relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoRhoOne {
    pub fan: Fan,
    /// `Σ a_i v_i = 0` with `gcd(a) = 1` and every `a_i > 0`.
    pub relation: Vec<Integer>,
}

pub fn fano_rho_one(vectors: &[LatticeVector]) -> Result<FanoRhoOne> {
    let Some(first) = vectors.first() else {
        return Err(Error::BadConfiguration("no vectors".into()));
    };
    let n = first.dim();
    if n == 0 || vectors.len() != n + 1 {
        return Err(Error::BadConfiguration(format!(
            "need {} vectors in dimension {n}, got {}",
            n + 1,
            vectors.len()
        )));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.dim() != n || !v.is_primitive() {
            return Err(Error::BadConfiguration(format!("vector {i} is not primitive")));
        }
    }
    for s in k_subsets(n + 1, n) {
        let sub: Vec<LatticeVector> = s.iter().map(|&i| vectors[i].clone()).collect();
        if rank_vectors(&sub) != n {
            return Err(Error::BadConfiguration(format!("vectors {s:?} are dependent")));
        }
    }
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|k| vectors.iter().map(|v| rat_int(&v.coords()[k])).collect())
        .collect();
    let kernel = nullspace_q(&columns, n + 1);
    let mut relation = primitive_integer_direction(&kernel[0])?;
    if relation.coords()[0].is_negative() {
        relation = relation.neg();
    }
    if relation.coords().iter().any(|a| !a.is_positive()) {
        return Err(Error::BadConfiguration(
            "vectors do not positively span".into(),
        ));
    }
    Ok(FanoRhoOne {
        fan: Fan::new(n, vectors.to_vec(), all_but_one(n + 1))?,
        relation: relation.into_coords(),
    })
}

/// Rays `(1,0), (0,1), (−1,a), (0,−1)` with the four adjacent cones.
pub fn hirzebruch(a: u32) -> Fan {
    let a = a as i64;
    Fan::new_trusted(
        2,
        [[1, 0], [0, 1], [-1, a], [0, -1]]
            .iter()
            .map(|r| LatticeVector::from_i64(r))
            .collect(),
        [[0, 1], [1, 2], [2, 3], [3, 0]]
            .iter()
            .map(|c| Cone::new(c.to_vec()))
            .collect(),
    )
}

pub fn product(f: &Fan, g: &Fan) -> Fan {
    let (m, n) = (f.dim(), g.dim());
    let mut rays: Vec<LatticeVector> = f
        .rays()
        .iter()
        .map(|u| {
            let mut c = u.coords().to_vec();
            c.extend(std::iter::repeat_n(Integer::zero(), n));
            LatticeVector::new(c)
        })
        .collect();
    rays.extend(g.rays().iter().map(|v| {
        let mut c = vec![Integer::zero(); m];
        c.extend(v.coords().iter().cloned());
        LatticeVector::new(c)
    }));
    let shift = f.num_rays();
    let mut cones = Vec::new();
    for a in f.cones() {
        for b in g.cones() {
            let mut r = a.rays().to_vec();
            r.extend(b.rays().iter().map(|x| x + shift));
            cones.push(Cone::new(r));
        }
    }
    Fan::new_trusted(m + n, rays, cones)
}

/// Face fan of the cube `[−1, 1]^3`.
pub fn cube_fan() -> Fan {
    let mut rays = Vec::new();
    for x in [1, -1] {
        for y in [1, -1] {
            for z in [1, -1] {
                rays.push(LatticeVector::from_i64(&[x, y, z]));
            }
        }
    }
    let mut cones = Vec::new();
    for k in 0..3 {
        for s in [1, -1] {
            cones.push(Cone::new(
                (0..8)
                    .filter(|&i| rays[i].coords()[k] == int(s))
                    .collect(),
            ));
        }
    }
    Fan::new_trusted(3, rays, cones)
}

/// A complete simplicial fan in dimension 3 that is not projective: the cone
/// over a twisted triangulation of two nested triangles, closed off by a
/// ray pointing down.
pub fn non_projective_fan() -> Fan {
    let rays: Vec<LatticeVector> = [
        [6, -3, 1],
        [-3, 6, 1],
        [-3, -3, 1],
        [2, -1, 1],
        [-1, 2, 1],
        [-1, -1, 1],
        [0, 0, -1],
    ]
    .iter()
    .map(|r| LatticeVector::from_i64(r))
    .collect();
    let mut cones = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        cones.push(Cone::new(vec![i, j, 3 + i]));
        cones.push(Cone::new(vec![j, 3 + j, 3 + i]));
        cones.push(Cone::new(vec![i, j, 6]));
    }
    cones.push(Cone::new(vec![3, 4, 5]));
    Fan::new_trusted(3, rays, cones)
}

fn positively_spans(dim: usize, rays: &[LatticeVector]) -> bool {
    let g = ConeGeometry::new(dim, rays);
    g.span_dim() == dim && g.facets().is_empty()
}

fn random_primitive(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> LatticeVector {
    loop {
        let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        let v = LatticeVector::from_i64(&c);
        if !v.is_zero() && v.is_primitive() {
            return v;
        }
    }
}

/// Face fan of the convex hull of the rays pushed to a slightly perturbed
/// unit sphere; `None` when the hull has a non-simplicial facet.
fn sphere_face_fan(dim: usize, rays: &[LatticeVector], rng: &mut ChaCha8Rng) -> Option<Fan> {
    let one = Integer::one();
    let fine: Integer = &one << 20u32;
    let points: Vec<Vec<Rational>> = rays
        .iter()
        .map(|u| {
            let norm2: Integer = u.coords().iter().map(|c| c * c).sum();
            let root = (norm2 * &fine * &fine).sqrt();
            let jitter = Rational::new(int(rng.gen_range(0..4096)), &fine * &fine);
            let h = Rational::new(root, fine.clone()) + jitter;
            u.to_rational().iter().map(|x| x / &h).collect()
        })
        .collect();
    let mut cones = Vec::new();
    for s in k_subsets(rays.len(), dim) {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| points[i].clone()).collect();
        let ones = vec![Rational::one(); dim];
        let sol = solve_q(&rows, dim, &ones);
        let Some(a) = sol.solution() else { continue };
        if let crate::lattice::RationalSolution::Solved { null_basis, .. } = &sol {
            if !null_basis.is_empty() {
                continue;
            }
        }
        let mut facet = true;
        for (r, p) in points.iter().enumerate() {
            if s.contains(&r) {
                continue;
            }
            let v = crate::lattice::dot_q(a, p);
            if v == Rational::one() {
                return None;
            }
            if v > Rational::one() {
                facet = false;
                break;
            }
        }
        if facet {
            cones.push(s);
        }
    }
    let mut used = vec![false; rays.len()];
    for c in &cones {
        for &r in c {
            used[r] = true;
        }
    }
    let index: Vec<Option<usize>> = {
        let mut next = 0;
        used.iter()
            .map(|&u| {
                u.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let kept: Vec<LatticeVector> = rays
        .iter()
        .zip(&used)
        .filter(|(_, &u)| u)
        .map(|(r, _)| r.clone())
        .collect();
    let cones: Vec<Cone> = cones
        .into_iter()
        .map(|c| Cone::new(c.into_iter().map(|r| index[r].expect("used")).collect()))
        .collect();
    Fan::new(dim, kept, cones).ok()
}

/// A complete simplicial projective fan with about `ray_budget` rays,
/// deterministic in `seed`.
pub fn random_complete_fan(dim: usize, ray_budget: usize, seed: u64) -> Result<Fan> {
    if dim == 0 || ray_budget < dim + 1 {
        return Err(Error::InvalidArgument(format!(
            "need dim >= 1 and at least {} rays",
            dim + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut rays: Vec<LatticeVector> = Vec::new();
        let mut tries = 0;
        while rays.len() < ray_budget && tries < 10_000 {
            tries += 1;
            let v = random_primitive(&mut rng, dim, 3);
            if !rays.contains(&v) {
                rays.push(v);
            }
        }
        if !positively_spans(dim, &rays) {
            for r in projective_space(dim).rays() {
                if !rays.contains(r) {
                    rays.push(r.clone());
                }
            }
        }
        if let Some(fan) = sphere_face_fan(dim, &rays, &mut rng) {
            return Ok(fan);
        }
    }
    Err(Error::GenericityFailure(64))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntegerMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n >= 2 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k = if rng.gen_bool(0.5) { 1 } else { -1 };
            let src = m[j].clone();
            for (a, b) in m[i].iter_mut().zip(src) {
                *a += k * b;
            }
        }
    }
    if rng.gen_bool(0.5) {
        for x in &mut m[0] {
            *x = -*x;
        }
    }
    IntegerMatrix::from_i64(&m).expect("square")
}

/// A random Q-factorial Fano fan of Picard number one. Roughly a quarter of
/// the outputs are unimodular images of `P^n`.
pub fn random_fano_rho_one(dim: usize, seed: u64) -> Result<FanoRhoOne> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_range(0..4) == 0 {
        let t = random_unimodular(&mut rng, dim);
        let rays: Vec<LatticeVector> =
            projective_space(dim).rays().iter().map(|r| t.apply_row(r)).collect();
        return fano_rho_one(&rays);
    }
    for _ in 0..1000 {
        let mut rays: Vec<LatticeVector> =
            (0..dim).map(|_| random_primitive(&mut rng, dim, 3)).collect();
        let mut sum = LatticeVector::zero(dim);
        for r in &rays {
            let a = int(rng.gen_range(1..=5));
            sum = sum.add(&r.scale(&a));
        }
        if sum.is_zero() {
            continue;
        }
        rays.push(primitivize(&sum.neg())?);
        if let Ok(f) = fano_rho_one(&rays) {
            return Ok(f);
        }
    }
    Err(Error::GenericityFailure(1000))
}

/// Regular subdivision data for one non-simplicial maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedCone {
    /// Index of the cone in the input fan.
    pub cone: usize,
    /// `(ray, height)` for the rays of the cone.
    pub heights: Vec<(usize, Integer)>,
    /// Cells with their linear functional `m`: `⟨m, u⟩ = h_u` on the cell's
    /// rays and `⟨m, u⟩ < h_u` on the others.
    pub cells: Vec<(Cone, Vec<Rational>)>,
}

/// Relative projectivity certificate of a small Q-factorialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactorialization {
    pub subdivided: Vec<SubdividedCone>,
    pub attempts: usize,
}

impl QFactorialization {
    /// Checks the lifted-height inequalities and that the cones of `fine`
    /// are exactly the untouched cones of `coarse` plus the cells.
    pub fn validate(&self, coarse: &Fan, fine: &Fan) -> bool {
        if coarse.rays() != fine.rays() {
            return false;
        }
        let mut expected: Vec<Cone> = Vec::new();
        let mut cursor = self.subdivided.iter().peekable();
        for (i, c) in coarse.cones().iter().enumerate() {
            match cursor.peek() {
                Some(s) if s.cone == i => {
                    let s = cursor.next().expect("peeked");
                    let height = |r: usize| {
                        s.heights
                            .iter()
                            .find(|(x, _)| *x == r)
                            .map(|(_, h)| rat_int(h))
                    };
                    for (cell, m) in &s.cells {
                        if !cell.is_subset(c) {
                            return false;
                        }
                        for &r in c.rays() {
                            let Some(h) = height(r) else { return false };
                            let v = pair(m, fine.ray(r));
                            let ok = if cell.contains(r) { v == h } else { v < h };
                            if !ok {
                                return false;
                            }
                        }
                        expected.push(cell.clone());
                    }
                }
                _ => expected.push(c.clone()),
            }
        }
        cursor.next().is_none() && expected == fine.cones()
    }
}

fn subdivide(
    fan: &Fan,
    cone: usize,
    heights: &[Integer],
) -> std::result::Result<SubdividedCone, ()> {
    let n = fan.dim();
    let c = fan.cone(cone);
    let geometry = fan.geometry(cone);
    let d = geometry.span_dim();
    let equations = geometry.equations().to_vec();
    let mut cells = Vec::new();
    for s in k_subsets(c.len(), d) {
        let subset: Vec<usize> = s.iter().map(|&i| c.rays()[i]).collect();
        let mut rows: Vec<Vec<Rational>> =
            subset.iter().map(|&r| fan.ray(r).to_rational()).collect();
        let mut rhs: Vec<Rational> = subset.iter().map(|&r| rat_int(&heights[r])).collect();
        rows.extend(equations.iter().cloned());
        rhs.extend(std::iter::repeat_n(Rational::zero(), equations.len()));
        let crate::lattice::RationalSolution::Solved {
            solution,
            null_basis,
        } = solve_q(&rows, n, &rhs)
        else {
            continue;
        };
        if !null_basis.is_empty() {
            continue;
        }
        let mut lower = true;
        for &r in c.rays() {
            if subset.contains(&r) {
                continue;
            }
            let v = pair(&solution, fan.ray(r));
            let h = rat_int(&heights[r]);
            if v == h {
                return Err(());
            }
            if v > h {
                lower = false;
                break;
            }
        }
        if lower {
            cells.push((Cone::new(subset), solution));
        }
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SubdividedCone {
        cone,
        heights: c.rays().iter().map(|&r| (r, heights[r].clone())).collect(),
        cells,
    })
}

/// Small Q-factorialization: every non-simplicial cone is replaced by the
/// regular subdivision induced by random integer heights on its rays.
pub fn qfactorialize(fan: &Fan, seed: u64) -> Result<(Fan, QFactorialization)> {
    const MAX_ATTEMPTS: usize = 32;
    let targets: Vec<usize> = (0..fan.cones().len())
        .filter(|&i| !fan.is_cone_simplicial(i))
        .collect();
    if targets.is_empty() {
        return Ok((
            fan.clone(),
            QFactorialization {
                subdivided: Vec::new(),
                attempts: 0,
            },
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for attempt in 1..=MAX_ATTEMPTS {
        let heights: Vec<Integer> = (0..fan.num_rays())
            .map(|_| int(rng.gen_range(1..=1 << 16)))
            .collect();
        let mut subdivided = Vec::new();
        for &i in &targets {
            match subdivide(fan, i, &heights) {
                Ok(s) => subdivided.push(s),
                Err(()) => continue 'attempt,
            }
        }
        let mut cones = Vec::new();
        let mut cursor = subdivided.iter().peekable();
        for (i, c) in fan.cones().iter().enumerate() {
            match cursor.peek() {
                Some(s) if s.cone == i => {
                    cones.extend(cursor.next().expect("peeked").cells.iter().map(|x| x.0.clone()))
                }
                _ => cones.push(c.clone()),
            }
        }
        let fine = Fan::new(fan.dim(), fan.rays().to_vec(), cones)?;
        return Ok((
            fine,
            QFactorialization {
                subdivided,
                attempts: attempt,
            },
        ));
    }
    Err(Error::GenericityFailure(MAX_ATTEMPTS))
}

/// A complete non-simplicial fan obtained from a random simplicial one by
/// merging disjoint pairs of adjacent cones whose union is a cone with the
/// same rays.
pub fn random_coarsening(dim: usize, seed: u64) -> Result<Fan> {
    if !(3..=4).contains(&dim) {
        return Err(Error::InvalidArgument("coarsenings need dim 3 or 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let budget = rng.gen_range(dim + 3..=dim + 5);
        let base = random_complete_fan(dim, budget, rng.gen())?;
        let mut taken = vec![false; base.cones().len()];
        let mut merged: Vec<Cone> = Vec::new();
        for w in base.walls()? {
            if taken[w.left] || taken[w.right] {
                continue;
            }
            let rel = wall_relation(&base, &w)?;
            if !w.tau.rays().iter().all(|&t| rel.coefficients[t].is_negative()) {
                continue;
            }
            if rng.gen_bool(0.3) {
                continue;
            }
            taken[w.left] = true;
            taken[w.right] = true;
            let mut rays = base.cone(w.left).rays().to_vec();
            rays.extend(base.cone(w.right).rays());
            merged.push(Cone::new(rays));
        }
        if merged.is_empty() {
            continue;
        }
        let mut cones: Vec<Cone> = base
            .cones()
            .iter()
            .enumerate()
            .filter(|(i, _)| !taken[*i])
            .map(|(_, c)| c.clone())
            .collect();
        cones.extend(merged);
        if let Ok(f) = Fan::new(dim, base.rays().to_vec(), cones) {
            return Ok(f);
        }
    }
    Err(Error::GenericityFailure(64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::is_lattice_isomorphic;

    #[test]
    fn projective_space_examples() {
        let p1 = projective_space(1);
        assert_eq!(p1.rays(), &[LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])]);
        assert!(p1.is_complete());
        let p3 = projective_space(3);
        assert_eq!((p3.num_rays(), p3.cones().len()), (4, 4));
        assert!(p3.is_smooth());
        assert!(p3.violations().is_empty());
    }

    #[test]
    fn weighted_examples() {
        let p = weighted_projective(&[1, 1, 1]).unwrap();
        assert!(is_lattice_isomorphic(&p.fan, &projective_space(2)));
        let p = weighted_projective(&[1, 1, 2]).unwrap();
        let target =
            Fan::from_i64(2, &[&[1, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert!(is_lattice_isomorphic(&p.fan, &target));
        assert!(p.fan.violations().is_empty());
    }

    #[test]
    fn relation_matches_weights() {
        for w in [vec![1, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![2, 2, 3, 3], vec![1, 4, 6]] {
            let p = weighted_projective(&w).unwrap();
            let mut sum = LatticeVector::zero(p.fan.dim());
            for (r, c) in p.fan.rays().iter().zip(&p.weights) {
                sum = sum.add(&r.scale(&int(*c as i64)));
            }
            assert!(sum.is_zero(), "{w:?}");
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_weights(&[2, 2, 2]).unwrap(), vec![1, 1, 1]);
        assert_eq!(normalize_weights(&[1, 1, 2]).unwrap(), vec![1, 1, 2]);
        assert_eq!(normalize_weights(&[2, 3, 4]).unwrap(), vec![1, 2, 3]);
        assert!(matches!(weighted_projective(&[1]), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn fano_examples() {
        let v = |r: &[[i64; 2]]| -> Vec<LatticeVector> {
            r.iter().map(|x| LatticeVector::from_i64(x)).collect()
        };
        let f = fano_rho_one(&v(&[[1, 0], [0, 1], [-1, -1]])).unwrap();
        assert_eq!(f.relation, vec![int(1), int(1), int(1)]);
        assert!(f.fan.is_projective_space());
        let f = fano_rho_one(&v(&[[1, 1], [-1, 1], [0, -1]])).unwrap();
        assert_eq!(f.relation, vec![int(1), int(1), int(2)]);
        let f = fano_rho_one(&v(&[[1, 0], [1, 3], [-2, -3]])).unwrap();
        assert_eq!(f.relation, vec![int(1), int(1), int(1)]);
        assert!(f
            .fan
            .cones()
            .iter()
            .all(|c| f.fan.multiplicity(c).unwrap() == int(3)));
        assert!(matches!(
            fano_rho_one(&v(&[[1, 0], [0, 1], [1, 1]])),
            Err(Error::BadConfiguration(_))
        ));
        assert!(matches!(
            fano_rho_one(&v(&[[1, 0], [-1, 0], [0, 1]])),
            Err(Error::BadConfiguration(_))
        ));
    }

    #[test]
    fn fixture_builders() {
        let f1 = Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
            &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
        )
        .unwrap();
        assert!(is_lattice_isomorphic(&hirzebruch(1), &f1));
        for a in 0..4 {
            assert!(hirzebruch(a).violations().is_empty());
        }
        let p1 = projective_space(1);
        let q = product(&p1, &p1);
        assert_eq!((q.num_rays(), q.cones().len()), (4, 4));
        assert!(q.violations().is_empty() && q.is_complete());
        let cube = cube_fan();
        assert!(cube.violations().is_empty());
        assert!(cube.is_complete() && !cube.is_simplicial());
    }

    #[test]
    fn non_projective_fixture() {
        let f = non_projective_fan();
        assert!(f.violations().is_empty());
        assert!(f.is_complete() && f.is_simplicial());
        assert_eq!(f.is_projective().unwrap(), None);
    }

    #[test]
    fn random_fans_are_complete_and_projective() {
        for (dim, budget, seed) in [(2, 3, 0), (2, 6, 7), (3, 8, 1), (4, 7, 3)] {
            let f = random_complete_fan(dim, budget, seed).unwrap();
            assert!(f.is_complete() && f.is_simplicial(), "{dim} {seed}");
            assert!(f.is_projective().unwrap().is_some());
            assert_eq!(f, random_complete_fan(dim, budget, seed).unwrap());
        }
        assert_eq!(random_complete_fan(2, 3, 5).unwrap().num_rays(), 3);
    }

    #[test]
    fn random_fano_fans() {
        for seed in 0..20 {
            let f = random_fano_rho_one(2 + (seed as usize % 3), seed).unwrap();
            assert!(f.fan.is_complete() && f.fan.is_simplicial());
        }
    }

    #[test]
    fn qfactorialize_examples() {
        let p2 = projective_space(2);
        let (same, cert) = qfactorialize(&p2, 3).unwrap();
        assert_eq!(same, p2);
        assert!(cert.subdivided.is_empty());

        let cube = cube_fan();
        let (fine, cert) = qfactorialize(&cube, 11).unwrap();
        assert_eq!(fine.cones().len(), 12);
        assert_eq!(fine.rays(), cube.rays());
        assert!(fine.is_simplicial() && fine.refines(&cube));
        assert!(cert.validate(&cube, &fine));
        assert_eq!(cert.subdivided.len(), 6);

        let single = Fan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]],
            &[&[0, 1, 2, 3]],
        )
        .unwrap();
        assert!(!single.is_simplicial());
        let (fine, cert) = qfactorialize(&single, 5).unwrap();
        assert_eq!(fine.cones().len(), 2);
        assert!(fine.refines(&single) && cert.validate(&single, &fine));
    }

    #[test]
    fn coarsenings_are_non_simplicial() {
        for seed in 0..3 {
            let f = random_coarsening(3, seed).unwrap();
            assert!(f.is_complete() && !f.is_simplicial());
        }
    }
}
