#![allow(dead_code)]

use moritoric::lattice::{determinant, int, nullspace_q, primitive_integer_direction, rat, rat_int};
use moritoric::{
    cube_fan, hirzebruch, is_cartier, product, projective_space, q_cartier_data, qfactorialize,
    weighted_projective, Fan, IntegerMatrix, LatticeVector, Rational, ToricDivisor,
};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

pub fn f1_fixture() -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
        &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
    )
    .unwrap()
}

pub fn fake_p2() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[1, 3], &[-2, -3]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

pub fn p112() -> Fan {
    Fan::from_i64(2, &[&[1, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

pub fn cube_qfactorialization() -> Fan {
    qfactorialize(&cube_fan(), 1).unwrap().0
}

/// Complete simplicial fixtures used across the suites.
pub fn simplicial_fixtures() -> Vec<(String, Fan)> {
    let mut out: Vec<(String, Fan)> = Vec::new();
    for n in 1..=4 {
        out.push((format!("P^{n}"), projective_space(n)));
    }
    for w in [
        vec![1u64, 1, 2],
        vec![1, 2, 3],
        vec![2, 3, 4],
        vec![1, 1, 1, 2],
        vec![2, 2, 3, 3],
        vec![1, 2, 3, 5],
        vec![1, 1, 2, 3, 3],
    ] {
        out.push((format!("P{w:?}"), weighted_projective(&w).unwrap().fan));
    }
    for a in 0..=3 {
        out.push((format!("F_{a}"), hirzebruch(a)));
    }
    out.push(("F_1 (blowup)".into(), f1_fixture()));
    let p1 = projective_space(1);
    out.push(("P^1 x P^1".into(), product(&p1, &p1)));
    out.push(("P^1 x P^2".into(), product(&p1, &projective_space(2))));
    out.push(("F_2 x P^1".into(), product(&hirzebruch(2), &p1)));
    out.push(("fake P^2".into(), fake_p2()));
    out.push(("cube fan Q-factorialization".into(), cube_qfactorialization()));
    out
}

/// `P^n` test without multiplicities: the positive relation is all ones and
/// the first `n` rays form a lattice basis.
pub fn is_pn_oracle(fan: &Fan) -> bool {
    let n = fan.dim();
    if n == 0 || fan.num_rays() != n + 1 || !fan.is_complete() {
        return false;
    }
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|k| fan.rays().iter().map(|v| rat_int(&v.coords()[k])).collect())
        .collect();
    let kernel = nullspace_q(&columns, n + 1);
    if kernel.len() != 1 {
        return false;
    }
    let rel = primitive_integer_direction(&kernel[0]).unwrap();
    if !rel.coords().iter().all(|a| a.abs().is_one()) || rel.coords().iter().any(|a| a != &rel.coords()[0]) {
        return false;
    }
    let m = IntegerMatrix::from_vectors(&fan.rays()[..n], n).unwrap();
    determinant(&m).unwrap().abs().is_one()
}

/// An ample Cartier divisor built from the projectivity certificate.
pub fn ample_cartier(fan: &Fan) -> ToricDivisor {
    let cert = fan.is_projective().unwrap().expect("projective fixture");
    let a = cert.ample_divisor;
    let data = q_cartier_data(fan, &a).unwrap().unwrap();
    let mut l = Rational::one().numer().clone();
    for x in data.functionals().iter().flatten().chain(a.coeffs()) {
        l = l.lcm(x.denom());
    }
    let out = a.scale(&Rational::from_integer(l));
    assert!(is_cartier(fan, &out).unwrap());
    out
}

/// Small deterministic generator independent of the library's RNG use.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// A rational in `[0, 1]` with denominator at most 6.
    pub fn unit_rational(&mut self) -> Rational {
        let q = 1 + self.below(6) as i64;
        let p = self.below(q as u64 + 1) as i64;
        rat(p, q)
    }
}

pub fn random_boundary(rng: &mut SplitMix, len: usize) -> ToricDivisor {
    ToricDivisor::new((0..len).map(|_| rng.unit_rational()).collect())
}

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(c)
}

pub fn zero_sum(fan: &Fan, degrees: &[Rational]) -> bool {
    (0..fan.dim()).all(|k| {
        fan.rays()
            .iter()
            .zip(degrees)
            .fold(Rational::zero(), |acc, (u, d)| acc + d * rat_int(&u.coords()[k]))
            .is_zero()
    })
}

pub fn positive(x: &Rational) -> bool {
    x.is_positive()
}

pub fn integer(v: i64) -> moritoric::Integer {
    int(v)
}
