//! Torus-invariant Q-divisors and their support functions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{nullspace_q, pair, rat_int, solve_q, LatticeVector, Rational};

/// `D = Σ d_ρ D_ρ`, coefficients aligned with the fan's rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricDivisor {
    coeffs: Vec<Rational>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ToricDivisor { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![Rational::zero(); len])
    }

    /// The prime divisor of one ray.
    pub fn prime(len: usize, ray: usize) -> Self {
        let mut d = Self::zero(len);
        d.coeffs[ray] = Rational::one();
        d
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Index of the first coefficient outside `[0, 1]`.
    pub fn first_outside_unit_interval(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| c.is_negative() || *c > Rational::one())
    }

    pub(crate) fn check_len(&self, fan: &Fan) -> Result<()> {
        if self.len() != fan.num_rays() {
            return Err(Error::DivisorLength {
                expected: fan.num_rays(),
                found: self.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_boundary(&self) -> Result<()> {
        match self.first_outside_unit_interval() {
            Some(ray) => Err(Error::BadBoundary {
                ray,
                value: self.coeffs[ray].to_string(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ToricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// One covector `m_σ` per maximal cone with `⟨m_σ, u_ρ⟩ = −d_ρ` on its rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierData {
    functionals: Vec<Vec<Rational>>,
}

impl CartierData {
    pub fn functionals(&self) -> &[Vec<Rational>] {
        &self.functionals
    }

    pub fn is_integral(&self) -> bool {
        self.functionals.iter().flatten().all(|x| x.is_integer())
    }

    /// `ψ(v) = ⟨m_σ, v⟩` for the first maximal cone containing `v`.
    pub fn evaluate(&self, fan: &Fan, v: &LatticeVector) -> Option<Rational> {
        fan.find_cone_containing(v)
            .map(|i| pair(&self.functionals[i], v))
    }
}

/// `K = −Σ D_ρ`.
pub fn canonical_divisor(fan: &Fan) -> ToricDivisor {
    ToricDivisor::new(vec![-Rational::one(); fan.num_rays()])
}

/// The divisor of the character `m`: `d_ρ = ⟨m, u_ρ⟩`.
pub fn principal_divisor(fan: &Fan, m: &LatticeVector) -> ToricDivisor {
    let mq = m.to_rational();
    ToricDivisor::new(fan.rays().iter().map(|u| pair(&mq, u)).collect())
}

fn require_full_dimensional(fan: &Fan) -> Result<()> {
    match (0..fan.cones().len()).find(|&i| fan.cone_dim(i) != fan.dim()) {
        Some(i) => Err(Error::NotFullDimensional(i)),
        None => Ok(()),
    }
}

/// Solves for the support function of `d`; `None` if `d` is not Q-Cartier.
pub fn q_cartier_data(fan: &Fan, d: &ToricDivisor) -> Result<Option<CartierData>> {
    d.check_len(fan)?;
    require_full_dimensional(fan)?;
    let n = fan.dim();
    let mut functionals = Vec::with_capacity(fan.cones().len());
    for cone in fan.cones() {
        let rows: Vec<Vec<Rational>> = cone
            .rays()
            .iter()
            .map(|&r| fan.ray(r).to_rational())
            .collect();
        let rhs: Vec<Rational> = cone.rays().iter().map(|&r| -d.coeffs()[r].clone()).collect();
        match solve_q(&rows, n, &rhs).solution() {
            Some(m) => functionals.push(m.to_vec()),
            None => return Ok(None),
        }
    }
    Ok(Some(CartierData { functionals }))
}

pub fn is_q_cartier(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    Ok(q_cartier_data(fan, d)?.is_some())
}

pub fn is_cartier(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    q_cartier_data(fan, d)?
        .map(|data| data.is_integral())
        .ok_or(Error::NotQCartier)
}

/// A basis of the subspace of Q-Cartier coefficient vectors.
pub fn q_cartier_basis(fan: &Fan) -> Result<Vec<ToricDivisor>> {
    require_full_dimensional(fan)?;
    let k = fan.num_rays();
    // d is Q-Cartier iff it annihilates every linear relation among the rays
    // of each maximal cone.
    let mut conditions: Vec<Vec<Rational>> = Vec::new();
    for cone in fan.cones() {
        let columns: Vec<Vec<Rational>> = (0..fan.dim())
            .map(|j| {
                cone.rays()
                    .iter()
                    .map(|&r| rat_int(&fan.ray(r).coords()[j]))
                    .collect()
            })
            .collect();
        for relation in nullspace_q(&columns, cone.len()) {
            let mut row = vec![Rational::zero(); k];
            for (local, &r) in cone.rays().iter().enumerate() {
                row[r] = relation[local].clone();
            }
            conditions.push(row);
        }
    }
    Ok(nullspace_q(&conditions, k)
        .into_iter()
        .map(ToricDivisor::new)
        .collect())
}

fn require_refinement(coarse: &Fan, fine: &Fan) -> Result<()> {
    if fine.refines(coarse) {
        Ok(())
    } else {
        Err(Error::NotARefinement)
    }
}

fn pullback_with(coarse: &Fan, fine: &Fan, data: &CartierData) -> Result<ToricDivisor> {
    fine.rays()
        .iter()
        .map(|v| {
            data.evaluate(coarse, v)
                .map(|psi| -psi)
                .ok_or(Error::NotARefinement)
        })
        .collect::<Result<Vec<_>>>()
        .map(ToricDivisor::new)
}

/// `f*D` along a refinement: the coefficient at a fine ray `v` is `−ψ_D(v)`.
pub fn pullback(coarse: &Fan, fine: &Fan, d: &ToricDivisor) -> Result<ToricDivisor> {
    d.check_len(coarse)?;
    require_refinement(coarse, fine)?;
    let data = q_cartier_data(coarse, d)?.ok_or(Error::NotQCartier)?;
    pullback_with(coarse, fine, &data)
}

/// The boundary `D̃` on a refinement with `K + D̃ = f*(K + D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrepantBoundary {
    pub divisor: ToricDivisor,
    /// Fine rays whose coefficient falls outside `[0, 1]`.
    pub out_of_range: Vec<usize>,
}

impl CrepantBoundary {
    pub fn in_range(&self) -> bool {
        self.out_of_range.is_empty()
    }
}

pub fn crepant_boundary(coarse: &Fan, fine: &Fan, d: &ToricDivisor) -> Result<CrepantBoundary> {
    d.check_len(coarse)?;
    d.check_boundary()?;
    require_refinement(coarse, fine)?;
    let log_canonical = d.add(&canonical_divisor(coarse));
    let data = q_cartier_data(coarse, &log_canonical)?.ok_or(Error::NotQCartier)?;
    let pulled = pullback_with(coarse, fine, &data)?;
    // K_fine + D̃ = f*(K + D), and K_fine has every coefficient −1.
    let divisor = ToricDivisor::new(pulled.coeffs().iter().map(|c| c + Rational::one()).collect());
    let out_of_range = (0..divisor.len())
        .filter(|&i| divisor.coeffs()[i].is_negative() || divisor.coeffs()[i] > Rational::one())
        .collect();
    Ok(CrepantBoundary {
        divisor,
        out_of_range,
    })
}

fn wall_degrees(fan: &Fan, d: &ToricDivisor) -> Result<Vec<Rational>> {
    d.check_len(fan)?;
    let walls = fan.walls()?;
    let data = q_cartier_data(fan, d)?.ok_or(Error::NotQCartier)?;
    Ok(walls
        .iter()
        .map(|w| crate::mori::intersect_with_data(fan, &data, w))
        .collect())
}

pub fn is_nef(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    Ok(wall_degrees(fan, d)?.iter().all(|x| !x.is_negative()))
}

pub fn is_ample(fan: &Fan, d: &ToricDivisor) -> Result<bool> {
    Ok(wall_degrees(fan, d)?.iter().all(|x| x.is_positive()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube_fan, hirzebruch, projective_space, weighted_projective};
    use crate::fan::Fan;
    use crate::lattice::rat;

    fn f1() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
            &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
        )
        .unwrap()
    }

    fn p2_blowup() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
            &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn canonical_is_minus_one() {
        assert_eq!(canonical_divisor(&projective_space(2)), ToricDivisor::from_i64(&[-1, -1, -1]));
        assert_eq!(canonical_divisor(&f1()).len(), 4);
        assert_eq!(canonical_divisor(&cube_fan()), ToricDivisor::from_i64(&[-1; 8]));
    }

    #[test]
    fn cube_cartier_data() {
        let cube = cube_fan();
        let anti = canonical_divisor(&cube).scale(&rat(-1, 1));
        let data = q_cartier_data(&cube, &anti).unwrap().expect("-K is Q-Cartier");
        let face = cube
            .cones()
            .iter()
            .position(|c| c.rays().iter().all(|&r| cube.ray(r).coords()[0] == 1.into()))
            .unwrap();
        assert_eq!(data.functionals()[face], vec![rat(-1, 1), rat(0, 1), rat(0, 1)]);
        assert!(is_cartier(&cube, &anti).unwrap());

        let corner = cube
            .rays()
            .iter()
            .position(|r| *r == LatticeVector::from_i64(&[1, 1, 1]))
            .unwrap();
        let single = ToricDivisor::prime(8, corner);
        assert_eq!(q_cartier_data(&cube, &single).unwrap(), None);
        assert_eq!(is_cartier(&cube, &single), Err(Error::NotQCartier));
    }

    #[test]
    fn cartier_examples() {
        let p2 = projective_space(2);
        assert!(is_cartier(&p2, &ToricDivisor::from_i64(&[1, 0, 0])).unwrap());
        let p112 = Fan::from_i64(2, &[&[1, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
            .unwrap();
        assert!(!is_cartier(&p112, &ToricDivisor::from_i64(&[1, 0, 0])).unwrap());
        assert!(is_cartier(&p112, &ToricDivisor::from_i64(&[2, 0, 0])).unwrap());
        // Simplicial fans: everything is Q-Cartier.
        let wps = weighted_projective(&[1, 2, 3]).unwrap().fan;
        assert!(is_q_cartier(&wps, &ToricDivisor::from_i64(&[3, -1, 7])).unwrap());
    }

    #[test]
    fn pullback_examples() {
        let p2 = projective_space(2);
        let anti = ToricDivisor::from_i64(&[1, 1, 1]);
        assert_eq!(pullback(&p2, &p2, &anti).unwrap(), anti);
        let blown = p2_blowup();
        assert_eq!(
            pullback(&p2, &blown, &anti).unwrap(),
            ToricDivisor::from_i64(&[1, 1, 1, 2])
        );
        assert_eq!(pullback(&blown, &p2, &ToricDivisor::zero(4)), Err(Error::NotARefinement));
    }

    #[test]
    fn crepant_examples() {
        let p2 = projective_space(2);
        let blown = p2_blowup();
        let all = crepant_boundary(&p2, &blown, &ToricDivisor::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(all.divisor, ToricDivisor::from_i64(&[1, 1, 1, 1]));
        assert!(all.in_range());

        let zero = crepant_boundary(&p2, &blown, &ToricDivisor::zero(3)).unwrap();
        assert_eq!(zero.divisor, ToricDivisor::from_i64(&[0, 0, 0, -1]));
        assert_eq!(zero.out_of_range, vec![3]);

        let d = ToricDivisor::new(vec![rat(1, 2), rat(0, 1), rat(1, 3)]);
        assert_eq!(crepant_boundary(&p2, &p2, &d).unwrap().divisor, d);

        assert!(matches!(
            crepant_boundary(&p2, &blown, &ToricDivisor::from_i64(&[2, 0, 0])),
            Err(Error::BadBoundary { ray: 0, .. })
        ));
    }

    #[test]
    fn nef_and_ample_examples() {
        let p2 = projective_space(2);
        let h = ToricDivisor::from_i64(&[1, 0, 0]);
        assert!(is_nef(&p2, &h).unwrap() && is_ample(&p2, &h).unwrap());
        let anti = ToricDivisor::from_i64(&[1, 1, 1, 1]);
        assert!(is_nef(&f1(), &anti).unwrap() && is_ample(&f1(), &anti).unwrap());
        let f2 = hirzebruch(2);
        assert!(is_nef(&f2, &anti).unwrap());
        assert!(!is_ample(&f2, &anti).unwrap());
    }

    #[test]
    fn principal_divisors_are_cartier_and_numerically_trivial() {
        for fan in [projective_space(3), f1(), cube_fan(), hirzebruch(3)] {
            for j in 0..fan.dim() {
                let d = principal_divisor(&fan, &LatticeVector::unit(fan.dim(), j));
                assert!(is_cartier(&fan, &d).unwrap());
                assert!(is_nef(&fan, &d).unwrap());
                assert!(is_nef(&fan, &d.scale(&rat(-1, 1))).unwrap());
            }
        }
    }

    #[test]
    fn q_cartier_basis_dimension() {
        // Simplicial: every divisor.
        assert_eq!(q_cartier_basis(&f1()).unwrap().len(), 4);
        // Cube fan: Pic has rank 1 plus the 3 principal directions.
        let cube = cube_fan();
        let basis = q_cartier_basis(&cube).unwrap();
        assert_eq!(basis.len(), 4);
        for b in &basis {
            assert!(is_q_cartier(&cube, b).unwrap());
        }
    }
}
