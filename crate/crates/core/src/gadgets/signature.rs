//! Signatures of four-terminal matchgates.

use std::fmt;

use num_traits::Zero;

use crate::count::count_pm_exact;
use crate::format::format_rational;
use crate::graph::{rat, Rational, WeightedGraph};

/// The four external edges of a crossing gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stub {
    E1,
    E2,
    F1,
    F2,
}

impl Stub {
    pub const ALL: [Stub; 4] = [Stub::E1, Stub::E2, Stub::F1, Stub::F2];
    /// Cyclic order of the attachment points around a crossing.
    pub const CYCLIC: [Stub; 4] = [Stub::E1, Stub::F1, Stub::E2, Stub::F2];

    pub fn bit(self) -> usize {
        1 << self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Stub::E1 => "e1",
            Stub::E2 => "e2",
            Stub::F1 => "f1",
            Stub::F2 => "f2",
        }
    }

    pub fn from_name(s: &str) -> Option<Stub> {
        Stub::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// A subset of stubs is consistent when it contains none or both of `e1, e2` and none or both
/// of `f1, f2`.
pub fn is_consistent(mask: usize) -> bool {
    let e = mask & 0b0011;
    let f = mask & 0b1100;
    (e == 0 || e == 0b0011) && (f == 0 || f == 0b1100)
}

/// Values `f(T)` for all sixteen subsets `T` of `{e1, e2, f1, f2}`, indexed by bitmask
/// (bit order `e1, e2, f1, f2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSignature {
    values: Vec<Rational>,
}

impl GadgetSignature {
    pub fn from_values(values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), 16);
        GadgetSignature { values }
    }

    pub fn get(&self, mask: usize) -> &Rational {
        &self.values[mask]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `f(∅) = f({e1,e2}) = f({f1,f2}) = 1`, `f(all) = -1`, zero elsewhere.
    pub fn sign_crossing() -> Self {
        Self::consistent_pattern([1, 1, 1, -1])
    }

    /// The signature of a plain crossing: every consistent set has value 1.
    pub fn plain_crossing() -> Self {
        Self::consistent_pattern([1, 1, 1, 1])
    }

    /// Values on `∅, {e1,e2}, {f1,f2}`, all four; zero elsewhere.
    pub fn consistent_pattern(v: [i64; 4]) -> Self {
        let mut values = vec![Rational::zero(); 16];
        values[0] = rat(v[0]);
        values[0b0011] = rat(v[1]);
        values[0b1100] = rat(v[2]);
        values[0b1111] = rat(v[3]);
        GadgetSignature { values }
    }

    pub fn vanishes_on_odd_and_inconsistent(&self) -> bool {
        (0..16).all(|m| is_consistent(m) || self.values[m].is_zero())
    }
}

impl fmt::Display for GadgetSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for mask in 0..16 {
            let names: Vec<&str> = Stub::ALL
                .iter()
                .filter(|s| mask & s.bit() != 0)
                .map(|s| s.name())
                .collect();
            writeln!(
                f,
                "{{{}}} {}",
                names.join(","),
                format_rational(&self.values[mask])
            )?;
        }
        Ok(())
    }
}

/// `f(T) = #PerfMatch(S - V(T))` where `V(T)` are the attachment points of the stubs in `T`.
///
/// `attachments` lists the attachment vertices in the order `e1, e2, f1, f2`.
pub fn compute_signature(gadget: &WeightedGraph, attachments: [usize; 4]) -> GadgetSignature {
    let values = (0..16usize)
        .map(|mask| {
            let removed: Vec<usize> = (0..4)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| attachments[i])
                .collect();
            let (rest, _) = gadget
                .delete_vertices(&removed)
                .expect("attachments are vertices of the gadget");
            count_pm_exact(&rest)
        })
        .collect();
    GadgetSignature { values }
}
