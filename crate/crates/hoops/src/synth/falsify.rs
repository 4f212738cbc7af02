//! Decides loop triviality the hard way: if the word survives the
//! group-theoretic identity test the loop is trivial, and otherwise a
//! connection is synthesized whose holonomy moves, certifying the
//! loop nontrivial with a concrete field.

use crate::gauge::{
    transport, Connection, GroupElement, GroupSampler, Holonomy, LieGroupSpec, PlTransport,
    DEFAULT_TRANSPORT_STEPS,
};
use crate::geom::{decompose, PolyLoop};
use crate::words::witness::{witness_search, WitnessOutcome};
use crate::words::{is_identity, GroupClass, Word};

use super::build::synthesize;
use super::SynthError;

/// Holonomy must clear the identity by this much to count as a
/// certificate.
pub const FALSIFY_MARGIN: f64 = 1e-6;

/// Trials given to the random witness search before giving up.
const WITNESS_TRIALS: u32 = 200;

/// Distance from the identity a sampled word value must exceed.
const WITNESS_TOL: f64 = 1e-3;

/// Certificate that a loop is not null-homotopic: a connection whose
/// holonomy around the loop visibly leaves the identity.
#[derive(Clone, Debug)]
pub struct Nontriviality {
    /// Reduced word of the loop in the decomposition's generators.
    pub word: Word,
    /// The synthesized connection.
    pub connection: Connection,
    /// Transport of the whole loop through that connection.
    pub holonomy: Holonomy,
    /// Distance of the holonomy from the identity.
    pub distance: f64,
}

/// Verdict of `falsify_hoop_triviality`.
#[derive(Clone, Debug)]
pub enum FalsifyOutcome {
    /// The loop's word is the identity in the free group quotient, so
    /// every connection holonomy is trivial.
    Trivial,
    /// A connection separating the loop from the identity.
    Nontrivial(Box<Nontriviality>),
}

impl FalsifyOutcome {
    pub fn is_trivial(&self) -> bool {
        matches!(self, FalsifyOutcome::Trivial)
    }
}

/// Decides whether `lp` is trivial as a hoop, producing a holonomy
/// certificate when it is not.
pub fn falsify_hoop_triviality(
    lp: &PolyLoop,
    spec: LieGroupSpec,
    seed: u64,
) -> Result<FalsifyOutcome, SynthError> {
    let dec = decompose(lp);
    let word = dec.word().clone();
    let class = if spec == LieGroupSpec::U1 {
        GroupClass::AbelianConnectedLie
    } else {
        GroupClass::NonsolvableConnectedLie
    };
    if is_identity(&word, &class)? {
        return Ok(FalsifyOutcome::Trivial);
    }

    let n = dec.generator_count();
    let mut targets = vec![GroupElement::identity(spec); n];
    if spec == LieGroupSpec::U1 {
        // One generator with nonzero net exponent is enough: send it
        // to a unit phase and the loop's holonomy picks up that phase
        // raised to the exponent. Zero entries are never stored, so
        // the first entry qualifies.
        let vector = word.exponent_vector();
        let (index, _) = vector
            .iter()
            .next()
            .expect("nonidentity abelian word has a nonzero exponent");
        targets[(index - 1) as usize] = crate::gauge::AlgebraElement::u1(1.0).exp();
    } else {
        let sampler = GroupSampler::new(spec);
        match witness_search(&sampler, &word, WITNESS_TRIALS, WITNESS_TOL, seed)? {
            WitnessOutcome::Falsified { assignment, .. } => {
                for (symbol, g) in assignment {
                    targets[(symbol - 1) as usize] = g;
                }
            }
            WitnessOutcome::Inconclusive { trials } => {
                return Err(SynthError::WitnessNotFound { trials });
            }
        }
    }

    let connection = synthesize(&dec, &targets, spec)?;
    let holonomy = transport(
        &connection,
        &PlTransport::from_loop(lp),
        DEFAULT_TRANSPORT_STEPS,
    )?;
    let distance = holonomy.matrix.distance_to_identity();
    if distance <= FALSIFY_MARGIN {
        return Err(SynthError::VerificationFailed { distance });
    }
    Ok(FalsifyOutcome::Nontrivial(Box::new(Nontriviality {
        word,
        connection,
        holonomy,
        distance,
    })))
}
