//! Intersection numbers with invariant curves, the Mori cone and the
//! verifiers built on it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use crate::divisor::{
    canonical_divisor, is_ample, is_nef, q_cartier_basis, q_cartier_data, CartierData,
    ToricDivisor,
};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, Wall};
use crate::lattice::{
    pair, primitivize, rank_q, rank_vectors, rat, rat_int, solve_q, vectors_index, LatticeQuotient,
    LatticeVector, Rational,
};
use crate::polyhedral::ConeGeometry;
use crate::simplex::{LinearProgram, Relation};

/// The linear relation among the rays of the two cones adjacent to a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Wall,
    /// Indexed by ray; zero away from the two adjacent cones.
    pub coefficients: Vec<Rational>,
    pub opposite_left: usize,
    pub opposite_right: usize,
}

/// Degrees `D_ρ · V(τ)` of the prime divisors on a wall curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub degrees: Vec<Rational>,
}

impl CurveClass {
    pub fn pair(&self, d: &ToricDivisor) -> Rational {
        self.degrees
            .iter()
            .zip(d.coeffs())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

fn opposite(cone: &Cone, tau: &Cone) -> Vec<usize> {
    cone.rays()
        .iter()
        .copied()
        .filter(|r| !tau.contains(*r))
        .collect()
}

fn require_simplicial_wall(fan: &Fan, wall: &Wall) -> Result<()> {
    for c in [wall.left, wall.right] {
        if !fan.is_cone_simplicial(c) {
            return Err(Error::NonSimplicialWall(c));
        }
    }
    Ok(())
}

pub fn wall_relation(fan: &Fan, wall: &Wall) -> Result<WallRelation> {
    require_simplicial_wall(fan, wall)?;
    let n = fan.dim();
    let u = opposite(fan.cone(wall.left), &wall.tau)[0];
    let u_prime = opposite(fan.cone(wall.right), &wall.tau)[0];
    // α u + Σ β_t t = −u′
    let mut columns: Vec<usize> = vec![u];
    columns.extend(wall.tau.rays());
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            columns
                .iter()
                .map(|&r| rat_int(&fan.ray(r).coords()[k]))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = fan
        .ray(u_prime)
        .coords()
        .iter()
        .map(|c| -rat_int(c))
        .collect();
    let solution = solve_q(&rows, n, &rhs)
        .solution()
        .expect("adjacent simplicial cones span N_R")
        .to_vec();
    let mut coefficients = vec![Rational::zero(); fan.num_rays()];
    for (&r, x) in columns.iter().zip(solution) {
        coefficients[r] = x;
    }
    coefficients[u_prime] = Rational::one();
    let mult_tau = rat_int(&vectors_index(&fan.cone_vectors(&wall.tau))?);
    let mult_right = rat_int(&fan.multiplicity(fan.cone(wall.right))?);
    let scale = mult_right / mult_tau;
    for c in &mut coefficients {
        *c *= &scale;
    }
    Ok(WallRelation {
        wall: wall.clone(),
        coefficients,
        opposite_left: u,
        opposite_right: u_prime,
    })
}

pub fn curve_class(fan: &Fan, wall: &Wall) -> Result<CurveClass> {
    let rel = wall_relation(fan, wall)?;
    let mult_tau = rat_int(&vectors_index(&fan.cone_vectors(&wall.tau))?);
    let mult_right = rat_int(&fan.multiplicity(fan.cone(wall.right))?);
    let denom = &rel.coefficients[rel.opposite_right] * mult_right;
    Ok(CurveClass {
        degrees: rel
            .coefficients
            .iter()
            .map(|a| a * &mult_tau / &denom)
            .collect(),
    })
}

/// `D · V(τ) = ⟨m_σ − m_σ′, v⟩` where `v` maps to `−1` in `N/N_τ`, oriented
/// so that `σ` lies on the nonnegative side.
pub fn intersect_with_data(fan: &Fan, data: &CartierData, wall: &Wall) -> Rational {
    let n = fan.dim();
    let quotient =
        LatticeQuotient::new(n, &fan.cone_vectors(&wall.tau)).expect("rays have the fan dimension");
    debug_assert_eq!(quotient.quotient_dim(), 1);
    let u = opposite(fan.cone(wall.left), &wall.tau)[0];
    let side = quotient.project(fan.ray(u)).coords()[0].clone();
    let lift = &quotient.section()[0];
    let v = if side.is_positive() { lift.neg() } else { lift.clone() };
    let m = &data.functionals();
    let diff: Vec<Rational> = m[wall.left]
        .iter()
        .zip(&m[wall.right])
        .map(|(a, b)| a - b)
        .collect();
    pair(&diff, &v)
}

pub fn intersect_cartier(fan: &Fan, d: &ToricDivisor, wall: &Wall) -> Result<Rational> {
    d.check_len(fan)?;
    let data = q_cartier_data(fan, d)?.ok_or(Error::NotQCartier)?;
    Ok(intersect_with_data(fan, &data, wall))
}

/// `D · V(τ)`, through the wall relation when both adjacent cones are
/// simplicial and through the support function otherwise.
pub fn intersect(fan: &Fan, d: &ToricDivisor, wall: &Wall) -> Result<Rational> {
    d.check_len(fan)?;
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if fan.is_cone_simplicial(wall.left) && fan.is_cone_simplicial(wall.right) {
        Ok(curve_class(fan, wall)?.pair(d))
    } else {
        intersect_cartier(fan, d, wall)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRay {
    /// Wall index of the representative class.
    pub representative: usize,
    pub class: Vec<Rational>,
    /// Every wall whose class lies on this ray, ascending.
    pub walls: Vec<usize>,
    /// Minimum and maximum of `−K · V(τ)` over the member walls.
    pub anticanonical_min: Rational,
    pub anticanonical_max: Rational,
}

/// Wall classes as linear functionals on a basis of the Q-Cartier divisors
/// (the prime divisors when the fan is simplicial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoriConeReport {
    pub walls: Vec<Wall>,
    pub basis: Vec<ToricDivisor>,
    pub classes: Vec<Vec<Rational>>,
    pub extremal: Vec<ExtremalRay>,
    pub picard_rank: usize,
}

impl MoriConeReport {
    /// Degree vectors, available when the basis is the prime divisors.
    pub fn curve_classes(&self) -> Option<Vec<CurveClass>> {
        let n = self.basis.len();
        let standard = self
            .basis
            .iter()
            .enumerate()
            .all(|(i, b)| *b == ToricDivisor::prime(n, i));
        standard.then(|| {
            self.classes
                .iter()
                .map(|c| CurveClass { degrees: c.clone() })
                .collect()
        })
    }
}

/// Positive proportionality of two nonzero vectors.
pub fn positively_proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() || a[i].is_positive() != b[i].is_positive() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x * &b[i] == y * &a[i])
}

/// Whether `target` is a nonnegative combination of `generators`.
pub fn in_cone(target: &[Rational], generators: &[&Vec<Rational>]) -> bool {
    let mut lp = LinearProgram::new(generators.len());
    for k in 0..target.len() {
        let terms: Vec<(usize, Rational)> = generators
            .iter()
            .enumerate()
            .map(|(j, g)| (j, g[k].clone()))
            .collect();
        lp.add_sparse(&terms, Relation::Eq, target[k].clone());
    }
    lp.feasible_point().is_some()
}

pub fn mori_cone(fan: &Fan) -> Result<MoriConeReport> {
    let walls = fan.walls()?;
    let basis = if fan.is_simplicial() {
        (0..fan.num_rays())
            .map(|i| ToricDivisor::prime(fan.num_rays(), i))
            .collect()
    } else {
        q_cartier_basis(fan)?
    };
    let classes: Vec<Vec<Rational>> = if fan.is_simplicial() {
        walls
            .iter()
            .map(|w| curve_class(fan, w).map(|c| c.degrees))
            .collect::<Result<_>>()?
    } else {
        let data: Vec<CartierData> = basis
            .iter()
            .map(|b| q_cartier_data(fan, b)?.ok_or(Error::NotQCartier))
            .collect::<Result<_>>()?;
        walls
            .iter()
            .map(|w| data.iter().map(|d| intersect_with_data(fan, d, w)).collect())
            .collect()
    };
    let picard_rank = rank_q(&classes);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (w, c) in classes.iter().enumerate() {
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        match groups
            .iter_mut()
            .find(|g| positively_proportional(&classes[g[0]], c))
        {
            Some(g) => g.push(w),
            None => groups.push(vec![w]),
        }
    }
    let anti = canonical_divisor(fan).scale(&rat(-1, 1));
    let anti_data = q_cartier_data(fan, &anti)?;
    let anti_degree = |w: usize| -> Rational {
        match &anti_data {
            Some(d) => intersect_with_data(fan, d, &walls[w]),
            // −K need not be Q-Cartier on a non-simplicial fan.
            None => Rational::zero(),
        }
    };
    let mut extremal = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let others: Vec<&Vec<Rational>> = groups
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != gi)
            .map(|(_, h)| &classes[h[0]])
            .collect();
        if in_cone(&classes[g[0]], &others) {
            continue;
        }
        let degrees: Vec<Rational> = g.iter().map(|&w| anti_degree(w)).collect();
        extremal.push(ExtremalRay {
            representative: g[0],
            class: classes[g[0]].clone(),
            walls: g.clone(),
            anticanonical_min: degrees.iter().min().cloned().unwrap_or_default(),
            anticanonical_max: degrees.iter().max().cloned().unwrap_or_default(),
        });
    }
    Ok(MoriConeReport {
        walls,
        basis,
        classes,
        extremal,
        picard_rank,
    })
}

/// One `(K + D)`-negative extremal ray and its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeRay {
    pub extremal_index: usize,
    pub witness: Wall,
    pub witness_index: usize,
    /// `min −(K + D) · V(τ)` over the member walls.
    pub length: Rational,
    pub max_length: Rational,
    pub within_n_plus_one: bool,
    pub within_n: bool,
    pub exception: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTheoremReport {
    pub dim: usize,
    pub rays: Vec<NegativeRay>,
    /// The fan is `P^n` and `Σ d_ρ < 1`.
    pub exception: bool,
    pub holds: bool,
}

pub fn cone_theorem_check(fan: &Fan, d: &ToricDivisor) -> Result<ConeTheoremReport> {
    d.check_len(fan)?;
    d.check_boundary()?;
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let log_canonical = canonical_divisor(fan).add(d);
    let data = q_cartier_data(fan, &log_canonical)?.ok_or(Error::NotQCartier)?;
    let report = mori_cone(fan)?;
    let n = fan.dim();
    let exception = fan.is_projective_space() && d.sum() < Rational::one();
    let bound_n = rat(n as i64, 1);
    let bound_n1 = rat(n as i64 + 1, 1);
    let mut rays = Vec::new();
    for (i, ray) in report.extremal.iter().enumerate() {
        let lengths: Vec<(usize, Rational)> = ray
            .walls
            .iter()
            .map(|&w| (w, -intersect_with_data(fan, &data, &report.walls[w])))
            .collect();
        if !lengths[0].1.is_positive() {
            continue;
        }
        let (witness_index, length) = lengths
            .iter()
            .min_by(|a, b| a.1.cmp(&b.1))
            .cloned()
            .expect("nonempty");
        let max_length = lengths.iter().map(|x| x.1.clone()).max().expect("nonempty");
        rays.push(NegativeRay {
            extremal_index: i,
            witness: report.walls[witness_index].clone(),
            witness_index,
            within_n_plus_one: length <= bound_n1,
            within_n: length <= bound_n,
            length,
            max_length,
            exception,
        });
    }
    let holds = rays
        .iter()
        .all(|r| r.within_n_plus_one && (r.within_n || exception));
    Ok(ConeTheoremReport {
        dim: n,
        rays,
        exception,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortWall {
    pub wall: Wall,
    /// `−K · V(τ)`.
    pub length: Rational,
}

/// On a Q-factorial Fano fan of Picard number one, a wall with
/// `−K · V(τ) ≤ n`; `None` on `P^n`.
pub fn find_short_wall(fan: &Fan) -> Result<Option<ShortWall>> {
    let n = fan.dim();
    if n == 0 || fan.num_rays() != n + 1 || !fan.is_complete() || !fan.is_simplicial() {
        return Err(Error::NotFanoRhoOne);
    }
    if fan.is_projective_space() {
        return Ok(None);
    }
    let anti = canonical_divisor(fan).scale(&rat(-1, 1));
    let mut best: Option<ShortWall> = None;
    for w in fan.walls()? {
        let length = curve_class(fan, &w)?.pair(&anti);
        let better = match &best {
            None => true,
            Some(b) => (&length, &w.tau) < (&b.length, &b.wall.tau),
        };
        if better {
            best = Some(ShortWall { wall: w, length });
        }
    }
    Ok(best.filter(|b| b.length <= rat(n as i64, 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FujitaMode {
    Nef,
    Ample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FujitaReport {
    pub mode: FujitaMode,
    /// `min L · V(τ)` over all walls.
    pub min_degree: Rational,
    pub threshold: Rational,
    pub hypothesis_met: bool,
    /// Whether `K + D + L` is nef (resp. ample); only computed when the
    /// hypothesis holds.
    pub positive: Option<bool>,
    pub exception: bool,
    pub holds: bool,
}

pub fn fujita_check(
    fan: &Fan,
    d: &ToricDivisor,
    l: &ToricDivisor,
    mode: FujitaMode,
) -> Result<FujitaReport> {
    d.check_len(fan)?;
    l.check_len(fan)?;
    d.check_boundary()?;
    let walls = fan.walls()?;
    let l_data = q_cartier_data(fan, l)?.ok_or(Error::NotCartier)?;
    if !l_data.is_integral() {
        return Err(Error::NotCartier);
    }
    let log_canonical = canonical_divisor(fan).add(d);
    if q_cartier_data(fan, &log_canonical)?.is_none() {
        return Err(Error::NotQCartier);
    }
    let n = fan.dim() as i64;
    let min_degree = walls
        .iter()
        .map(|w| intersect_with_data(fan, &l_data, w))
        .min()
        .unwrap_or_default();
    let threshold = match mode {
        FujitaMode::Nef => rat(n, 1),
        FujitaMode::Ample => rat(n + 1, 1),
    };
    let hypothesis_met = min_degree >= threshold;
    let (positive, exception) = if hypothesis_met {
        let adjoint = log_canonical.add(l);
        let positive = match mode {
            FujitaMode::Nef => is_nef(fan, &adjoint)?,
            FujitaMode::Ample => is_ample(fan, &adjoint)?,
        };
        let exception = fan.is_projective_space()
            && min_degree == threshold
            && match mode {
                FujitaMode::Nef => d.sum() < Rational::one(),
                FujitaMode::Ample => d.is_zero(),
            };
        (Some(positive), exception)
    } else {
        (None, false)
    };
    let holds = !hypothesis_met || positive == Some(true) || exception;
    Ok(FujitaReport {
        mode,
        min_degree,
        threshold,
        hypothesis_met,
        positive,
        exception,
        holds,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Whether the full-dimensional cones `members` of `fan` cover `hull`.
fn covers(fan: &Fan, members: &[usize], hull: &ConeGeometry) -> bool {
    let mut counts: HashMap<Cone, usize> = HashMap::new();
    for &i in members {
        for f in fan.facets_of(i) {
            *counts.entry(f).or_default() += 1;
        }
    }
    counts.into_iter().all(|(facet, count)| {
        count == 2
            || (count == 1
                && hull.facets().iter().any(|h| {
                    facet
                        .rays()
                        .iter()
                        .all(|&r| pair(&h.normal, fan.ray(r)).is_zero())
                }))
    })
}

fn not_extremal(ray: usize, reason: &str) -> Error {
    Error::NotExtremal {
        ray,
        reason: reason.to_string(),
    }
}

/// Contracts the `ray_index`-th extremal ray of [`mori_cone`].
pub fn contract(fan: &Fan, ray_index: usize) -> Result<Fan> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if let Some(c) = (0..fan.cones().len()).find(|&c| !fan.is_cone_simplicial(c)) {
        return Err(Error::NonSimplicialCone(fan.cone(c).rays().to_vec()));
    }
    let report = mori_cone(fan)?;
    let ray = report.extremal.get(ray_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "extremal ray {ray_index} out of range ({} rays)",
            report.extremal.len()
        ))
    })?;
    let n = fan.dim();
    let mut uf = UnionFind((0..fan.cones().len()).collect());
    for &w in &ray.walls {
        uf.union(report.walls[w].left, report.walls[w].right);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..fan.cones().len() {
        groups.entry(uf.find(c)).or_default().push(c);
    }

    struct Group {
        rays: Vec<usize>,
        geometry: ConeGeometry,
    }
    let mut merged = Vec::new();
    for members in groups.values() {
        let rays: Vec<usize> = members
            .iter()
            .flat_map(|&c| fan.cone(c).rays().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vectors: Vec<LatticeVector> = rays.iter().map(|&r| fan.ray(r).clone()).collect();
        let geometry = ConeGeometry::new(n, &vectors);
        if members.len() > 1 && !covers(fan, members, &geometry) {
            return Err(not_extremal(ray_index, "merged cones do not form a convex cone"));
        }
        merged.push(Group { rays, geometry });
    }

    let pointed = merged.iter().filter(|g| g.geometry.is_pointed()).count();
    if pointed == merged.len() {
        // Birational: keep the extremal rays of each merged cone.
        let cones: Vec<Vec<usize>> = merged
            .iter()
            .map(|g| {
                g.geometry
                    .extremal_generators()
                    .into_iter()
                    .map(|i| g.rays[i])
                    .collect()
            })
            .collect();
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        let index: HashMap<usize, usize> =
            used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let rays = used.iter().map(|&r| fan.ray(r).clone()).collect();
        let cones = cones
            .into_iter()
            .map(|c| Cone::new(c.into_iter().map(|r| index[&r]).collect()))
            .collect();
        return Fan::new(n, rays, cones);
    }
    if pointed != 0 {
        return Err(not_extremal(ray_index, "mixed fiber and birational cones"));
    }

    // Fiber type: quotient by the common lineality space.
    let lineality = |g: &Group| -> Vec<LatticeVector> {
        g.geometry
            .lineality_generators()
            .into_iter()
            .map(|i| fan.ray(g.rays[i]).clone())
            .collect()
    };
    let base = lineality(&merged[0]);
    let base_rank = rank_vectors(&base);
    for g in &merged[1..] {
        let mut both = base.clone();
        let other = lineality(g);
        let other_rank = rank_vectors(&other);
        both.extend(other);
        if other_rank != base_rank || rank_vectors(&both) != base_rank {
            return Err(not_extremal(ray_index, "merged cones have different lineality"));
        }
    }
    let quotient = LatticeQuotient::new(n, &base)?;
    let k = quotient.quotient_dim();
    if k == 0 {
        return Ok(Fan::point());
    }
    let mut new_rays: Vec<LatticeVector> = Vec::new();
    let mut image: HashMap<usize, usize> = HashMap::new();
    for (r, u) in fan.rays().iter().enumerate() {
        let p = quotient.project(u);
        if p.is_zero() {
            continue;
        }
        let p = primitivize(&p)?;
        let idx = match new_rays.iter().position(|x| *x == p) {
            Some(i) => i,
            None => {
                new_rays.push(p);
                new_rays.len() - 1
            }
        };
        image.insert(r, idx);
    }
    let mut cones: Vec<Cone> = Vec::new();
    for g in &merged {
        let ids: Vec<usize> = g
            .rays
            .iter()
            .filter_map(|r| image.get(r).copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vectors: Vec<LatticeVector> = ids.iter().map(|&i| new_rays[i].clone()).collect();
        let geometry = ConeGeometry::new(k, &vectors);
        let cone = Cone::new(
            geometry
                .extremal_generators()
                .into_iter()
                .map(|i| ids[i])
                .collect(),
        );
        if !cones.contains(&cone) {
            cones.push(cone);
        }
    }
    Fan::new(k, new_rays, cones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        distinguished_wall, hirzebruch, product, projective_space, weighted_projective,
    };
    use crate::fan::is_lattice_isomorphic;

    fn f1() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
            &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
        )
        .unwrap()
    }

    fn p112() -> Fan {
        Fan::from_i64(2, &[&[1, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
    }

    fn fake_p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[1, 3], &[-2, -3]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
    }

    fn wall_with_tau(fan: &Fan, tau: &[usize]) -> Wall {
        fan.walls()
            .unwrap()
            .into_iter()
            .find(|w| w.tau.rays() == tau)
            .unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn proportional_to(a: &[Rational], b: &[Rational]) -> bool {
        positively_proportional(a, b)
    }

    #[test]
    fn wall_relation_examples() {
        let p2 = projective_space(2);
        let rel = wall_relation(&p2, &wall_with_tau(&p2, &[0])).unwrap();
        assert!(proportional_to(&rel.coefficients, &q(&[1, 1, 1])));

        let f = f1();
        let rel = wall_relation(&f, &wall_with_tau(&f, &[3])).unwrap();
        assert!(proportional_to(&rel.coefficients, &q(&[1, 1, 0, -1])));
        let rel = wall_relation(&f, &wall_with_tau(&f, &[0])).unwrap();
        assert!(proportional_to(&rel.coefficients, &q(&[0, 0, 1, 1])));
        assert!(rel.coefficients[rel.opposite_left].is_positive());
        assert!(rel.coefficients[rel.opposite_right].is_positive());
    }

    #[test]
    fn curve_class_examples() {
        let p = p112();
        let c1 = curve_class(&p, &wall_with_tau(&p, &[0])).unwrap();
        assert_eq!(c1.degrees, vec![rat(1, 2), rat(1, 2), rat(1, 1)]);
        let c3 = curve_class(&p, &wall_with_tau(&p, &[2])).unwrap();
        assert_eq!(c3.degrees, q(&[1, 1, 2]));
        let p2 = projective_space(2);
        for w in p2.walls().unwrap() {
            assert_eq!(curve_class(&p2, &w).unwrap().degrees, q(&[1, 1, 1]));
        }
    }

    #[test]
    fn intersect_examples() {
        let p = p112();
        let anti = ToricDivisor::from_i64(&[1, 1, 1]);
        let w = wall_with_tau(&p, &[0]);
        assert_eq!(intersect(&p, &anti, &w).unwrap(), rat(2, 1));
        assert_eq!(intersect_cartier(&p, &anti, &w).unwrap(), rat(2, 1));

        let wps = weighted_projective(&[2, 2, 3, 3]).unwrap();
        let anti = ToricDivisor::from_i64(&[1; 4]);
        let w = distinguished_wall(&wps).unwrap();
        assert_eq!(intersect(&wps.fan, &anti, &w).unwrap(), rat(10, 3));

        let wps = weighted_projective(&[1, 2, 3]).unwrap();
        let w = distinguished_wall(&wps).unwrap();
        assert_eq!(intersect(&wps.fan, &ToricDivisor::from_i64(&[1; 3]), &w).unwrap(), rat(1, 1));
    }

    #[test]
    fn mori_cone_examples() {
        let r = mori_cone(&projective_space(2)).unwrap();
        assert_eq!((r.extremal.len(), r.picard_rank), (1, 1));

        let r = mori_cone(&f1()).unwrap();
        assert_eq!(r.extremal.len(), 2);
        assert_eq!(r.picard_rank, 2);
        assert!(r.extremal.iter().any(|e| proportional_to(&e.class, &q(&[1, 1, 0, -1]))));
        assert!(r.extremal.iter().any(|e| proportional_to(&e.class, &q(&[0, 0, 1, 1]))));
        assert!(r.classes.iter().any(|c| proportional_to(c, &q(&[1, 1, 1, 0]))));

        let p1 = projective_space(1);
        let r = mori_cone(&product(&p1, &p1)).unwrap();
        assert_eq!(r.extremal.len(), 2);
        assert!(r.extremal.iter().all(|e| e.walls.len() == 2));
    }

    #[test]
    fn cone_theorem_examples() {
        let p2 = projective_space(2);
        let r = cone_theorem_check(&p2, &ToricDivisor::zero(3)).unwrap();
        assert_eq!(r.rays.len(), 1);
        assert_eq!(r.rays[0].length, rat(3, 1));
        assert!(r.exception && r.holds);

        let r = cone_theorem_check(&p2, &ToricDivisor::from_i64(&[1, 0, 0])).unwrap();
        assert_eq!(r.rays[0].length, rat(2, 1));
        assert!(!r.exception && r.holds && r.rays[0].within_n);

        let r = cone_theorem_check(&p112(), &ToricDivisor::zero(3)).unwrap();
        assert_eq!(r.rays[0].length, rat(2, 1));
        assert!(r.holds);

        assert!(matches!(
            cone_theorem_check(&p2, &ToricDivisor::from_i64(&[0, 2, 0])),
            Err(Error::BadBoundary { ray: 1, .. })
        ));
    }

    #[test]
    fn short_wall_examples() {
        assert_eq!(find_short_wall(&projective_space(2)).unwrap(), None);
        let fake = fake_p2();
        let s = find_short_wall(&fake).unwrap().unwrap();
        assert_eq!(s.wall.tau.rays(), &[0]);
        assert_eq!(s.length, rat(1, 1));
        let s = find_short_wall(&p112()).unwrap().unwrap();
        assert_eq!(s.wall.tau.rays(), &[0]);
        assert_eq!(s.length, rat(2, 1));
        assert_eq!(find_short_wall(&f1()), Err(Error::NotFanoRhoOne));
    }

    #[test]
    fn fujita_examples() {
        let p2 = projective_space(2);
        let zero = ToricDivisor::zero(3);
        let r = fujita_check(&p2, &zero, &ToricDivisor::from_i64(&[2, 0, 0]), FujitaMode::Nef)
            .unwrap();
        assert!(r.hypothesis_met && r.exception && r.holds);
        assert_eq!(r.positive, Some(false));

        let f = f1();
        let l = ToricDivisor::from_i64(&[2, 2, 2, 2]);
        let r = fujita_check(&f, &ToricDivisor::zero(4), &l, FujitaMode::Nef).unwrap();
        assert_eq!(r.min_degree, rat(2, 1));
        assert!(r.hypothesis_met && r.positive == Some(true) && !r.exception);

        let r = fujita_check(&p2, &zero, &ToricDivisor::from_i64(&[3, 0, 0]), FujitaMode::Ample)
            .unwrap();
        assert!(r.hypothesis_met && r.exception && r.holds);
        assert_eq!(r.positive, Some(false));

        let p112 = p112();
        assert_eq!(
            fujita_check(&p112, &zero, &ToricDivisor::from_i64(&[1, 0, 0]), FujitaMode::Nef),
            Err(Error::NotCartier)
        );
    }

    #[test]
    fn contraction_examples() {
        let f = f1();
        let report = mori_cone(&f).unwrap();
        let e = report
            .extremal
            .iter()
            .position(|e| proportional_to(&e.class, &q(&[1, 1, 0, -1])))
            .unwrap();
        let fiber = 1 - e;
        let down = contract(&f, e).unwrap();
        assert!(is_lattice_isomorphic(&down, &projective_space(2)));
        let base = contract(&f, fiber).unwrap();
        assert_eq!(base.dim(), 1);
        assert!(is_lattice_isomorphic(&base, &projective_space(1)));
        assert_eq!(contract(&projective_space(2), 0).unwrap(), Fan::point());
    }

    #[test]
    fn hirzebruch_contractions() {
        // F_a for a ≥ 2 still contracts the negative section to a weighted
        // projective plane.
        let f = hirzebruch(2);
        let report = mori_cone(&f).unwrap();
        assert_eq!(report.extremal.len(), 2);
        let results: Vec<Fan> = (0..2).map(|i| contract(&f, i).unwrap()).collect();
        assert!(results.iter().any(|g| g.dim() == 1));
        let surface = results.iter().find(|g| g.dim() == 2).unwrap();
        let p112 = weighted_projective(&[1, 1, 2]).unwrap().fan;
        assert!(is_lattice_isomorphic(surface, &p112));
    }
}
