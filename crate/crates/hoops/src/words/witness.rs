//! Randomized falsification of candidate identities: sample group
//! elements for the generators and look for a substitution that moves
//! the word's value away from the unit.
//!
//! A found witness is a proof that the word is not an identity of the
//! sampled group. Exhausting the trial budget proves nothing.

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Quaternion, UnitQuaternion};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Word, WordsError};

/// Default distance threshold below which a sampled value is not
/// accepted as a witness.
pub const DEFAULT_WITNESS_TOL: f64 = 1e-9;

/// Group structure on an element type, enough to evaluate words.
pub trait WordGroup {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// A [`WordGroup`] that can draw random elements and measure how far an
/// element sits from the unit.
pub trait WitnessSampler: WordGroup {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    fn distance_to_identity(&self, e: &Self::Elem) -> f64;
}

/// Evaluates `word` under an assignment of group elements to generator
/// indices. Every index occurring in the word must be assigned.
pub fn evaluate_word<G: WordGroup>(
    group: &G,
    word: &Word,
    assignment: &BTreeMap<u32, G::Elem>,
) -> Result<G::Elem, WordsError> {
    let mut acc = group.identity();
    for s in word.symbols() {
        let elem = assignment
            .get(&s.index())
            .ok_or(WordsError::UnassignedGenerator { index: s.index() })?;
        let factor = if s.is_positive() {
            elem.clone()
        } else {
            group.inv(elem)
        };
        acc = group.mul(&acc, &factor);
    }
    Ok(acc)
}

/// Outcome of a witness search. `Falsified` carries the substitution and
/// the observed distance; `Inconclusive` only says the budget ran out.
#[derive(Clone, Debug)]
pub enum WitnessOutcome<E> {
    Falsified {
        assignment: BTreeMap<u32, E>,
        distance: f64,
        trial: u32,
    },
    Inconclusive {
        trials: u32,
    },
}

impl<E> WitnessOutcome<E> {
    pub fn is_falsified(&self) -> bool {
        matches!(self, WitnessOutcome::Falsified { .. })
    }
}

/// Tries up to `trials` random substitutions, reporting the first whose
/// word value is farther than `tol` from the unit. Deterministic in
/// `seed`. Rejects words whose reduction is empty, since those evaluate
/// to the unit in every group.
pub fn witness_search<S: WitnessSampler>(
    sampler: &S,
    word: &Word,
    trials: u32,
    tol: f64,
    seed: u64,
) -> Result<WitnessOutcome<S::Elem>, WordsError> {
    let reduced = word.reduce();
    if reduced.is_empty() {
        return Err(WordsError::TrivialWord);
    }
    let indices: Vec<u32> = reduced.generator_indices().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let assignment: BTreeMap<u32, S::Elem> = indices
            .iter()
            .map(|&i| (i, sampler.sample(&mut rng)))
            .collect();
        let value = evaluate_word(sampler, &reduced, &assignment)?;
        let distance = sampler.distance_to_identity(&value);
        if distance > tol {
            return Ok(WitnessOutcome::Falsified {
                assignment,
                distance,
                trial,
            });
        }
    }
    Ok(WitnessOutcome::Inconclusive { trials })
}

/// Rotation group of 3-space with near-uniform sampling.
#[derive(Clone, Copy, Debug, Default)]
pub struct So3Sampler;

impl WordGroup for So3Sampler {
    type Elem = Matrix3<f64>;

    fn identity(&self) -> Matrix3<f64> {
        Matrix3::identity()
    }

    fn mul(&self, a: &Matrix3<f64>, b: &Matrix3<f64>) -> Matrix3<f64> {
        a * b
    }

    fn inv(&self, a: &Matrix3<f64>) -> Matrix3<f64> {
        a.transpose()
    }
}

impl WitnessSampler for So3Sampler {
    /// Uniform rotations via uniform unit quaternions (the subgroup
    /// algorithm): three uniforms map to a point of the 3-sphere.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Matrix3<f64> {
        use std::f64::consts::TAU;
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        let u3: f64 = rng.gen();
        let a = (1.0 - u1).sqrt();
        let b = u1.sqrt();
        let q = Quaternion::new(
            a * (TAU * u2).sin(),
            a * (TAU * u2).cos(),
            b * (TAU * u3).sin(),
            b * (TAU * u3).cos(),
        );
        UnitQuaternion::from_quaternion(q)
            .to_rotation_matrix()
            .into_inner()
    }

    fn distance_to_identity(&self, e: &Matrix3<f64>) -> f64 {
        operator_norm3(&(e - Matrix3::identity()))
    }
}

/// Largest singular value of a real 3x3 matrix.
pub fn operator_norm3(m: &Matrix3<f64>) -> f64 {
    let gram = m.transpose() * m;
    let eigen = gram.symmetric_eigenvalues();
    eigen.iter().fold(0.0f64, |acc, &l| acc.max(l)).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GenSymbol;

    fn w(values: &[i64]) -> Word {
        Word::from_signed(values).unwrap()
    }

    #[test]
    fn commutator_word_is_falsified_over_rotations() {
        let comm = w(&[1]).commutator(&w(&[2]));
        let outcome = witness_search(&So3Sampler, &comm, 200, DEFAULT_WITNESS_TOL, 7).unwrap();
        match outcome {
            WitnessOutcome::Falsified { distance, .. } => assert!(distance > 1e-6),
            WitnessOutcome::Inconclusive { .. } => panic!("rotations are not abelian"),
        }
    }

    #[test]
    fn trivial_word_is_rejected() {
        assert!(matches!(
            witness_search(&So3Sampler, &w(&[1, -1]), 10, DEFAULT_WITNESS_TOL, 0),
            Err(WordsError::TrivialWord)
        ));
        assert!(matches!(
            witness_search(&So3Sampler, &Word::empty(), 10, DEFAULT_WITNESS_TOL, 0),
            Err(WordsError::TrivialWord)
        ));
    }

    #[test]
    fn search_is_deterministic_in_the_seed() {
        let word = w(&[1, 2, -1, 2, 2]);
        let a = witness_search(&So3Sampler, &word, 50, DEFAULT_WITNESS_TOL, 42).unwrap();
        let b = witness_search(&So3Sampler, &word, 50, DEFAULT_WITNESS_TOL, 42).unwrap();
        match (a, b) {
            (
                WitnessOutcome::Falsified {
                    distance: da,
                    trial: ta,
                    assignment: aa,
                },
                WitnessOutcome::Falsified {
                    distance: db,
                    trial: tb,
                    assignment: ab,
                },
            ) => {
                assert_eq!(da.to_bits(), db.to_bits());
                assert_eq!(ta, tb);
                let ma = &aa[&1];
                let mb = &ab[&1];
                assert_eq!(ma, mb);
            }
            _ => panic!("expected identical falsifications"),
        }
    }

    #[test]
    fn unreachable_tolerance_reports_inconclusive() {
        let word = w(&[1, 2]);
        let outcome = witness_search(&So3Sampler, &word, 25, 1e12, 3).unwrap();
        match outcome {
            WitnessOutcome::Inconclusive { trials } => assert_eq!(trials, 25),
            _ => panic!("no rotation can be 1e12 from the unit"),
        }
    }

    #[test]
    fn sampled_rotations_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let r = So3Sampler.sample(&mut rng);
            let defect = (r.transpose() * r - Matrix3::identity()).norm();
            assert!(defect < 1e-12);
            assert!((r.determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn evaluate_word_multiplies_in_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g1 = So3Sampler.sample(&mut rng);
        let g2 = So3Sampler.sample(&mut rng);
        let mut assignment = BTreeMap::new();
        assignment.insert(1, g1);
        assignment.insert(2, g2);
        let word = Word::from_symbols(vec![
            GenSymbol::positive(1).unwrap(),
            GenSymbol::negative(2).unwrap(),
        ]);
        let value = evaluate_word(&So3Sampler, &word, &assignment).unwrap();
        assert!((value - g1 * g2.transpose()).norm() < 1e-14);

        let missing = Word::from_symbols(vec![GenSymbol::positive(9).unwrap()]);
        assert!(matches!(
            evaluate_word(&So3Sampler, &missing, &assignment),
            Err(WordsError::UnassignedGenerator { index: 9 })
        ));
    }
}
