//! Class-group side: forms and composition, the restricted Heegner set of
//! forms `[a, b, c]` with `6 | a` and `b ≡ 1 mod 12`, genus characters, the
//! class of a prime above 2 and its orbits on the Heegner set.

mod forms;
mod group;

pub use forms::{compose, reduce_form, Form};
pub use group::{class_group, class_order, is_negative_fundamental, reduced_forms, ClassGroup};

use crate::arith::{legendre, prime_divisors};
use crate::InvalidDiscriminant;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeegnerError {
    #[error(transparent)]
    InvalidDiscriminant(#[from] InvalidDiscriminant),
    #[error("−{0} is not a negative fundamental discriminant")]
    NotFundamental(u64),
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(Form),
    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: i64, right: i64 },
    #[error("{ell} is not a prime divisor of {d}")]
    NotADivisor { ell: u64, d: u64 },
    #[error("Heegner search for D={d} found {found} of {h} classes with a ≤ {ceiling}")]
    WindowExhausted { d: u64, found: usize, h: usize, ceiling: u64 },
    #[error("ε is not constant on the Frobenius orbit {orbit:?} for D={d}")]
    EpsilonNotConstant { d: u64, orbit: Vec<usize> },
}

/// Initial and maximal `a`-window for the Heegner enumeration, in units of `D`.
pub const HEEGNER_WINDOW_START: u64 = 6;
pub const HEEGNER_WINDOW_CEILING: u64 = 600;

/// One form `[a, b, c]`, `6 | a`, `b ≡ 1 mod 12`, per class of discriminant `−D`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeegnerSet {
    pub d: u64,
    pub reps: Vec<Form>,
    /// Class index in the [`ClassGroup`] of each representative.
    pub class_of: Vec<usize>,
}

impl HeegnerSet {
    /// Representative index of class `c`.
    pub fn rep_of_class(&self, c: usize) -> Option<usize> {
        self.class_of.iter().position(|&k| k == c)
    }
}

/// Enumerates `a = 6, 12, …` and `b ≡ 1 mod 12` in `[1, 2a)`, keeping the
/// first form met in each class. The `a`-window starts at `6D` and doubles
/// until every class is hit, up to `600D`.
pub fn heegner_set(d: u64, group: &ClassGroup) -> Result<HeegnerSet, HeegnerError> {
    crate::check_discriminant(d)?;
    let h = group.h();
    let di = d as i64;
    let mut seen = vec![false; h];
    let mut reps = Vec::with_capacity(h);
    let mut class_of = Vec::with_capacity(h);
    let mut a = 6i64;
    let mut window = HEEGNER_WINDOW_START * d;
    loop {
        while a as u64 <= window && reps.len() < h {
            for b in (1..2 * a).step_by(12) {
                let num = b * b + di;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = Form::new(a, b, num / (4 * a));
                let k = group.index_of(f)?;
                if !seen[k] {
                    seen[k] = true;
                    reps.push(f);
                    class_of.push(k);
                }
            }
            a += 6;
        }
        if reps.len() == h {
            return Ok(HeegnerSet { d, reps, class_of });
        }
        if window >= HEEGNER_WINDOW_CEILING * d {
            return Err(HeegnerError::WindowExhausted { d, found: reps.len(), h, ceiling: window });
        }
        window = (window * 2).min(HEEGNER_WINDOW_CEILING * d);
    }
}

/// `[2, 1, (D+1)/8]`, a prime form above 2.
pub fn frobenius_form(d: u64) -> Result<Form, HeegnerError> {
    crate::check_discriminant(d)?;
    Ok(Form::new(2, 1, ((d + 1) / 8) as i64))
}

/// `χ_ℓ(f) = (r/ℓ)` for a value `r ∈ {a, c}` of `f` prime to `ℓ`.
pub fn genus_character(d: u64, ell: u64, f: Form) -> Result<i8, HeegnerError> {
    if ell < 3 || d % ell != 0 || !crate::arith::is_prime(ell) {
        return Err(HeegnerError::NotADivisor { ell, d });
    }
    if f.discriminant() != -(d as i64) {
        return Err(HeegnerError::DiscriminantMismatch { left: f.discriminant(), right: -(d as i64) });
    }
    let r = if f.a % ell as i64 != 0 { f.a } else { f.c };
    Ok(legendre(r, ell))
}

/// `ε(f) = ∏_{ℓ | D} χ_ℓ(f)`.
pub fn epsilon(d: u64, f: Form) -> Result<i8, HeegnerError> {
    prime_divisors(d).into_iter().try_fold(1i8, |acc, ell| Ok(acc * genus_character(d, ell, f)?))
}

/// The Heegner set cut into orbits under translation by the class of
/// [`frobenius_form`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub d: u64,
    pub h: usize,
    pub frob_form: Form,
    pub frob_class: usize,
    pub frob_order: usize,
    pub heegner: HeegnerSet,
    /// Each orbit as indices into `heegner.reps`, in translation order.
    pub orbits: Vec<Vec<usize>>,
    /// `ε` of each representative.
    pub eps: Vec<i8>,
    /// `(|orbit| · ε) mod 2` per orbit.
    pub residue_parity: Vec<u8>,
}

impl OrbitReport {
    pub fn orbit_sizes_uniform(&self) -> bool {
        self.orbits.iter().all(|o| o.len() == self.frob_order)
    }

    pub fn has_odd_residue(&self) -> bool {
        self.residue_parity.contains(&1)
    }

    /// `ε` on each orbit (constant by construction of the report).
    pub fn eps_profile(&self) -> Vec<i8> {
        self.orbits.iter().map(|o| self.eps[o[0]]).collect()
    }
}

pub fn orbit_report(d: u64) -> Result<OrbitReport, HeegnerError> {
    let group = class_group(d)?;
    let heegner = heegner_set(d, &group)?;
    let frob_form = frobenius_form(d)?;
    let frob_class = group.index_of(frob_form)?;
    let frob_order = group.order(frob_class);
    let eps = heegner.reps.iter().map(|&f| epsilon(d, f)).collect::<Result<Vec<_>, _>>()?;

    let mut visited = vec![false; heegner.reps.len()];
    let mut orbits = Vec::new();
    for start in 0..heegner.reps.len() {
        if visited[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            orbit.push(i);
            let next = group.mul(heegner.class_of[i], frob_class);
            i = heegner.rep_of_class(next).expect("Heegner set covers every class");
        }
        if orbit.iter().any(|&i| eps[i] != eps[orbit[0]]) {
            return Err(HeegnerError::EpsilonNotConstant { d, orbit });
        }
        orbits.push(orbit);
    }
    let residue_parity =
        orbits.iter().map(|o| ((o.len() as i64 * eps[o[0]] as i64).rem_euclid(2)) as u8).collect();
    Ok(OrbitReport { d, h: group.h(), frob_form, frob_class, frob_order, heegner, orbits, eps, residue_parity })
}

/// Four conditions on the class of a prime above 2, each evaluated on its own:
/// (1) odd order, (2) a square in the class group, (3) trivial on every
/// genus character, (4) every `ℓ | D` is `≡ 1, 7 mod 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddOrderConditions {
    pub frob_order: usize,
    pub odd_order: bool,
    pub is_square: bool,
    pub genus_trivial: bool,
    pub primes_1_7_mod_8: bool,
}

impl OddOrderConditions {
    pub fn all_agree(&self) -> bool {
        let c = [self.odd_order, self.is_square, self.genus_trivial, self.primes_1_7_mod_8];
        c.iter().all(|&x| x == c[0])
    }

    /// (3) ⇔ (4)
    pub fn genus_matches_primes(&self) -> bool {
        self.genus_trivial == self.primes_1_7_mod_8
    }

    /// (1) ⇒ (2)
    pub fn odd_implies_square(&self) -> bool {
        !self.odd_order || self.is_square
    }

    /// (2), (3) and (4) hold while the order is even.
    pub fn anomaly(&self) -> bool {
        self.is_square && self.genus_trivial && self.primes_1_7_mod_8 && !self.odd_order
    }
}

pub fn odd_order_conditions(d: u64) -> Result<OddOrderConditions, HeegnerError> {
    crate::check_discriminant(d)?;
    let group = class_group(d)?;
    let p = frobenius_form(d)?;
    let k = group.index_of(p)?;
    let frob_order = group.order(k);
    let mut genus_trivial = true;
    for ell in prime_divisors(d) {
        genus_trivial &= genus_character(d, ell, p)? == 1;
    }
    Ok(OddOrderConditions {
        frob_order,
        odd_order: frob_order % 2 == 1,
        is_square: group.is_square(k),
        genus_trivial,
        primes_1_7_mod_8: prime_divisors(d).iter().all(|&l| l % 8 == 1 || l % 8 == 7),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::isqrt;

    #[test]
    fn heegner_set_d23() {
        let g = class_group(23).unwrap();
        let s = heegner_set(23, &g).unwrap();
        assert_eq!(s.reps, vec![Form::new(6, 1, 1), Form::new(12, 13, 4), Form::new(18, 25, 9)]);
        assert_eq!(s.class_of, vec![0, 1, 2]);
        assert!(heegner_set(24, &g).is_err());
    }

    #[test]
    fn heegner_sets_are_torsors() {
        for d in crate::discriminants_up_to(1000) {
            let g = class_group(d).unwrap();
            let s = heegner_set(d, &g).unwrap();
            assert_eq!(s.reps.len(), g.h(), "D={d}");
            let mut cls = s.class_of.clone();
            cls.sort_unstable();
            assert_eq!(cls, (0..g.h()).collect::<Vec<_>>());
            for f in &s.reps {
                assert_eq!(f.a % 6, 0);
                assert_eq!(f.b % 12, 1);
                assert_eq!(f.discriminant(), -(d as i64));
            }
        }
    }

    #[test]
    fn frobenius_and_characters() {
        assert_eq!(frobenius_form(23).unwrap(), Form::new(2, 1, 3));
        assert_eq!(frobenius_form(47).unwrap(), Form::new(2, 1, 6));
        assert_eq!(frobenius_form(1007).unwrap().discriminant(), -1007);
        assert!(frobenius_form(25).is_err());

        assert_eq!(genus_character(23, 23, Form::new(1, 1, 6)).unwrap(), 1);
        assert_eq!(genus_character(23, 23, Form::new(2, 1, 3)).unwrap(), 1);
        assert!(genus_character(23, 5, Form::new(1, 1, 6)).is_err());
        assert_eq!(epsilon(23, Form::new(2, -1, 3)).unwrap(), 1);
    }

    #[test]
    fn genus_characters_are_homomorphisms() {
        for d in [95u64, 119, 455, 791, 935] {
            let g = class_group(d).unwrap();
            for ell in prime_divisors(d) {
                for &f in g.classes() {
                    for &h in g.classes() {
                        let fh = compose(f, h).unwrap();
                        assert_eq!(
                            genus_character(d, ell, fh).unwrap(),
                            genus_character(d, ell, f).unwrap() * genus_character(d, ell, h).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_is_trivial_and_frobenius_sign() {
        // the product of all genus characters is the trivial character
        for d in crate::discriminants_up_to(1000) {
            let g = class_group(d).unwrap();
            assert!(g.classes().iter().all(|&f| epsilon(d, f).unwrap() == 1), "D={d}");
            assert_eq!(epsilon(d, frobenius_form(d).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn orbit_report_d23() {
        let r = orbit_report(23).unwrap();
        assert_eq!(r.frob_order, 3);
        assert_eq!(r.orbits, vec![vec![0, 1, 2]]);
        assert_eq!(r.eps, vec![1, 1, 1]);
        assert_eq!(r.residue_parity, vec![1]);
        assert!(r.orbit_sizes_uniform());
    }

    #[test]
    fn orbit_reports_are_uniform() {
        for d in crate::discriminants_up_to(1000) {
            let r = orbit_report(d).unwrap();
            assert!(r.orbit_sizes_uniform(), "D={d}");
            assert_eq!(r.orbits.len() * r.frob_order, r.h);
            assert_eq!(r.has_odd_residue(), r.frob_order % 2 == 1);
        }
    }

    /// `[𝔭]^k` is principal iff `𝔭^k = (α)` with `α = (u + v√−D)/2`
    /// not divisible by 2, i.e. `u² + D v² = 2^{k+2}` with `v` odd.
    fn order_by_norm_equation(d: u64) -> u32 {
        (1u32..64)
            .find(|&k| {
                let n = 1u128 << (k + 2);
                (1..).step_by(2).map(|v: u128| v).take_while(|&v| d as u128 * v * v <= n).any(|v| {
                    let r = n - d as u128 * v * v;
                    let u = isqrt(r as u64) as u128;
                    u * u == r
                })
            })
            .unwrap()
    }

    #[test]
    fn frobenius_order_matches_norm_equation() {
        for d in crate::discriminants_up_to(1000) {
            let c = odd_order_conditions(d).unwrap();
            assert_eq!(c.frob_order as u32, order_by_norm_equation(d), "D={d}");
        }
    }

    #[test]
    fn condition_profiles() {
        let c = odd_order_conditions(23).unwrap();
        assert!(c.odd_order && c.is_square && c.genus_trivial && c.primes_1_7_mod_8);
        let c = odd_order_conditions(95).unwrap();
        assert!(!c.primes_1_7_mod_8);
        for d in crate::discriminants_up_to(1000) {
            let c = odd_order_conditions(d).unwrap();
            assert!(c.genus_matches_primes(), "D={d}");
            assert!(c.odd_implies_square(), "D={d}");
        }
    }

    #[test]
    fn square_frobenius_of_even_order_at_791() {
        // 791 = 7·113: every prime factor is 1 or 7 mod 8, the Frobenius class
        // is a square, yet its order is 16 (2^18 = 505² + 791·3²).
        let c = odd_order_conditions(791).unwrap();
        assert_eq!(c.frob_order, 16);
        assert!(c.is_square && c.genus_trivial && c.primes_1_7_mod_8);
        assert!(!c.odd_order);
        assert!(c.anomaly());
        assert_eq!(505u64 * 505 + 791 * 9, 1 << 18);
        let r = orbit_report(791).unwrap();
        assert_eq!(r.h, 32);
        assert!(!r.has_odd_residue());
    }
}
