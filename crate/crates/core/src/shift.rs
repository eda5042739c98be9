//! Declarative descriptions of shift spaces.

use crate::bfree::{bfree_graph, hereditary_orbit_graph, BSet};
use crate::error::Result;
use crate::sgap::{sgap_graph, SGapSet};
use crate::sofic::{build_sft_graph, LabeledGraph, SftSpec};
use crate::word::{Alphabet, PeriodicPoint};

/// Longest period of `eta_B` turned into a presentation.
pub const BFREE_PERIOD_CAP: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShiftSpec {
    /// shift of finite type from forbidden words
    Sft(SftSpec),
    /// explicit labelled graph
    Graph(LabeledGraph),
    /// hereditary closure of the orbit of `eta_B`, finite `B`
    BFree(BSet),
    /// S-gap shift of a finite gap set
    SGap(SGapSet),
    /// hereditary closure of the orbit of a purely periodic 0/1 point
    HereditaryOrbit(PeriodicPoint),
}

impl ShiftSpec {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            ShiftSpec::Sft(s) => s.alphabet().clone(),
            ShiftSpec::Graph(g) => g.alphabet().clone(),
            _ => Alphabet::binary(),
        }
    }

    /// A trimmed presentation of the shift.
    pub fn presentation(&self) -> Result<LabeledGraph> {
        match self {
            ShiftSpec::Sft(s) => build_sft_graph(s),
            ShiftSpec::Graph(g) => g.trim(),
            ShiftSpec::BFree(b) => bfree_graph(b, BFREE_PERIOD_CAP)?.trim(),
            ShiftSpec::SGap(s) => sgap_graph(s),
            ShiftSpec::HereditaryOrbit(x) => hereditary_orbit_graph(x)?.trim(),
        }
    }
}
