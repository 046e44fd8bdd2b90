use std::collections::HashMap;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of fermionic modes (Fock dimension `2^14`).
pub const MAX_FERMION_MODES: usize = 14;
/// Largest bosonic basis size.
pub const MAX_BOSON_DIM: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Particle {
    Fermion,
    Boson,
}

/// Occupation-number basis of a fermionic Fock space over `modes` modes, or
/// of a bosonic one truncated to at most `cutoff` particles in total.
///
/// Basis states are packed into a `u64`: one bit per mode for fermions,
/// `bits` bits per mode for bosons. The vacuum is always basis vector 0.
#[derive(Clone, Debug)]
pub struct FockSpace {
    particle: Particle,
    modes: usize,
    cutoff: u32,
    bits: u32,
    basis: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl FockSpace {
    pub fn fermion(modes: usize) -> Result<Self> {
        if modes > MAX_FERMION_MODES {
            return Err(Error::Guard(format!(
                "fermionic Fock space with {modes} modes exceeds {MAX_FERMION_MODES}"
            )));
        }
        Ok(FockSpace {
            particle: Particle::Fermion,
            modes,
            cutoff: modes as u32,
            bits: 1,
            basis: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn boson(modes: usize, cutoff: u32) -> Result<Self> {
        let bits = (32 - cutoff.leading_zeros()).max(1);
        if modes as u64 * u64::from(bits) > 64 {
            return Err(Error::Guard(format!(
                "{modes} bosonic modes with cutoff {cutoff} do not fit a 64-bit state"
            )));
        }
        // C(modes + cutoff, modes)
        let mut count = 1.0_f64;
        for i in 1..=modes {
            count *= (cutoff as f64 + i as f64) / i as f64;
        }
        if count.round() > MAX_BOSON_DIM as f64 {
            return Err(Error::Guard(format!(
                "bosonic Fock space of dimension {} exceeds {MAX_BOSON_DIM}",
                count.round()
            )));
        }
        let mut space = FockSpace {
            particle: Particle::Boson,
            modes,
            cutoff,
            bits,
            basis: Vec::with_capacity(count.round() as usize),
            index: HashMap::new(),
        };
        let mut occ = vec![0u32; modes];
        for total in 0..=cutoff {
            space.push_compositions(&mut occ, 0, total);
        }
        space.index = space.basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(space)
    }

    fn push_compositions(&mut self, occ: &mut [u32], mode: usize, remaining: u32) {
        if mode == self.modes {
            if remaining == 0 {
                let state = self.pack(occ);
                self.basis.push(state);
            }
            return;
        }
        if mode + 1 == self.modes {
            occ[mode] = remaining;
            self.push_compositions(occ, mode + 1, 0);
            occ[mode] = 0;
            return;
        }
        for k in (0..=remaining).rev() {
            occ[mode] = k;
            self.push_compositions(occ, mode + 1, remaining - k);
        }
        occ[mode] = 0;
    }

    fn pack(&self, occ: &[u32]) -> u64 {
        occ.iter()
            .enumerate()
            .fold(0u64, |s, (m, &n)| s | (u64::from(n) << (m as u32 * self.bits)))
    }

    pub fn particle(&self) -> Particle {
        self.particle
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Total-occupation cutoff (the number of modes for fermions).
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        match self.particle {
            Particle::Fermion => 1usize << self.modes,
            Particle::Boson => self.basis.len(),
        }
    }

    pub fn state(&self, i: usize) -> u64 {
        match self.particle {
            Particle::Fermion => i as u64,
            Particle::Boson => self.basis[i],
        }
    }

    pub fn index(&self, state: u64) -> Option<usize> {
        match self.particle {
            Particle::Fermion => Some(state as usize),
            Particle::Boson => self.index.get(&state).copied(),
        }
    }

    pub fn occupation(&self, state: u64, mode: usize) -> u32 {
        let mask = (1u64 << self.bits) - 1;
        ((state >> (mode as u32 * self.bits)) & mask) as u32
    }

    pub fn occupations(&self, state: u64) -> Vec<u32> {
        (0..self.modes).map(|m| self.occupation(state, m)).collect()
    }

    pub fn particle_count(&self, state: u64) -> u32 {
        match self.particle {
            Particle::Fermion => state.count_ones(),
            Particle::Boson => (0..self.modes).map(|m| self.occupation(state, m)).sum(),
        }
    }

    pub fn vacuum(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[0] = 1.0;
        v
    }

    /// `a†_mode |state⟩ = factor |new⟩`, or `None` when the result is 0 or
    /// leaves the truncated space.
    pub fn create(&self, state: u64, mode: usize) -> Option<(f64, u64)> {
        match self.particle {
            Particle::Fermion => {
                let bit = 1u64 << mode;
                if state & bit != 0 {
                    return None;
                }
                Some((fermion_sign(state, mode), state | bit))
            }
            Particle::Boson => {
                if self.particle_count(state) >= self.cutoff {
                    return None;
                }
                let n = self.occupation(state, mode);
                Some((f64::from(n + 1).sqrt(), state + (1u64 << (mode as u32 * self.bits))))
            }
        }
    }

    /// `a_mode |state⟩ = factor |new⟩`, or `None` when the result is 0.
    pub fn annihilate(&self, state: u64, mode: usize) -> Option<(f64, u64)> {
        match self.particle {
            Particle::Fermion => {
                let bit = 1u64 << mode;
                if state & bit == 0 {
                    return None;
                }
                Some((fermion_sign(state, mode), state & !bit))
            }
            Particle::Boson => {
                let n = self.occupation(state, mode);
                if n == 0 {
                    return None;
                }
                Some((f64::from(n).sqrt(), state - (1u64 << (mode as u32 * self.bits))))
            }
        }
    }
}

/// `(−1)^{number of occupied modes below mode}`.
fn fermion_sign(state: u64, mode: usize) -> f64 {
    let below = state & ((1u64 << mode) - 1);
    if below.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
