use std::collections::BTreeMap;

use nalgebra::DVector;
use rayon::prelude::*;

use super::space::FockSpace;
use super::sparse::SparseMatrix;

/// A single creation or annihilation operator on a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

impl Ladder {
    pub fn adjoint(self) -> Ladder {
        match self {
            Ladder::Create(m) => Ladder::Annihilate(m),
            Ladder::Annihilate(m) => Ladder::Create(m),
        }
    }
}

/// Finite linear combination of words in ladder operators. A word
/// `[L1, L2, …, Lk]` stands for the product `L1 L2 ⋯ Lk`, so `Lk` acts
/// first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockOperator {
    terms: Vec<(f64, Vec<Ladder>)>,
}

impl FockOperator {
    pub fn zero() -> Self {
        FockOperator { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(1.0)
    }

    pub fn scalar(c: f64) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn monomial(c: f64, word: Vec<Ladder>) -> Self {
        let mut op = Self::zero();
        op.push(c, word);
        op
    }

    pub fn push(&mut self, c: f64, word: Vec<Ladder>) {
        if c != 0.0 {
            self.terms.push((c, word));
        }
    }

    pub fn terms(&self) -> &[(f64, Vec<Ladder>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FockOperator) -> FockOperator {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FockOperator { terms }
    }

    pub fn scale(&self, c: f64) -> FockOperator {
        let mut out = FockOperator::zero();
        for (a, w) in &self.terms {
            out.push(a * c, w.clone());
        }
        out
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &FockOperator) -> FockOperator {
        let mut out = FockOperator::zero();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.push(a * b, w);
            }
        }
        out
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (*c, w.iter().rev().map(|l| l.adjoint()).collect()))
                .collect(),
        }
    }

    /// Merge identical words and drop cancelled terms.
    pub fn simplify(&self) -> FockOperator {
        let mut merged: BTreeMap<Vec<Ladder>, f64> = BTreeMap::new();
        for (c, w) in &self.terms {
            *merged.entry(w.clone()).or_insert(0.0) += c;
        }
        FockOperator { terms: merged.into_iter().filter(|(_, c)| *c != 0.0).map(|(w, c)| (c, w)).collect() }
    }

    /// Image of a basis state as `(basis index, amplitude)` pairs.
    pub fn apply_state(&self, space: &FockSpace, state: u64) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        'terms: for (c, word) in &self.terms {
            let mut amp = *c;
            let mut s = state;
            for l in word.iter().rev() {
                let step = match *l {
                    Ladder::Create(m) => space.create(s, m),
                    Ladder::Annihilate(m) => space.annihilate(s, m),
                };
                match step {
                    Some((f, next)) => {
                        amp *= f;
                        s = next;
                    }
                    None => continue 'terms,
                }
            }
            if let Some(i) = space.index(s) {
                out.push((i, amp));
            }
        }
        out
    }

    pub fn apply(&self, space: &FockSpace, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(space.dim());
        for (j, &x) in v.iter().enumerate() {
            if x != 0.0 {
                for (i, a) in self.apply_state(space, space.state(j)) {
                    out[i] += a * x;
                }
            }
        }
        out
    }

    pub fn to_matrix(&self, space: &FockSpace) -> SparseMatrix {
        let columns: Vec<Vec<(usize, f64)>> = (0..space.dim())
            .into_par_iter()
            .map(|j| self.apply_state(space, space.state(j)))
            .collect();
        SparseMatrix::from_columns(space.dim(), columns)
    }
}
