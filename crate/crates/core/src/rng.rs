//! Deterministic random-stream derivation.
//!
//! Every random quantity in the crate is drawn from a stream derived from a
//! master seed, a replication index and a purpose label. Streams are
//! independent of the order in which they are created, so replications can
//! run concurrently and still reproduce bit-identically.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Master seed of a study or a single inference call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed {
    pub master: u64,
}

impl Seed {
    pub fn new(master: u64) -> Self {
        Seed { master }
    }

    /// Derive the stream for `(replication, purpose)`.
    ///
    /// The stream is a pure function of `(master, rep, purpose)`: the ChaCha
    /// key is the SHA-256 digest of the three components, so distinct labels
    /// give statistically independent streams.
    pub fn stream(&self, rep: u64, purpose: &str) -> ChaCha12Rng {
        let mut hasher = Sha256::new();
        hasher.update(self.master.to_le_bytes());
        hasher.update(rep.to_le_bytes());
        hasher.update(purpose.as_bytes());
        let digest = hasher.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest);
        ChaCha12Rng::from_seed(key)
    }

    /// Derive a sub-seed, e.g. the seed handed to `infer` by the study loop.
    pub fn subseed(&self, rep: u64, purpose: &str) -> Seed {
        use rand::RngCore;
        Seed::new(self.stream(rep, purpose).next_u64())
    }
}
