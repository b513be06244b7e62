//! Membership classification and Wecken certification.
//!
//! An endomorphism with remnant is certified Wecken in two cases: no tail
//! equalities at all beyond the built-in trivial pair, or equalities of
//! length 0 only. Everything else with remnant stays undetermined; we never
//! assert that a map is not Wecken.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::wagner::{equality_lengths, remnant, wagner_tails, Endomorphism, TailPair};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeckenStatus {
    CertifiedV,
    CertifiedB,
    Undetermined,
    NoRemnant,
}

impl WeckenStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            WeckenStatus::CertifiedV => "certified_v",
            WeckenStatus::CertifiedB => "certified_b",
            WeckenStatus::Undetermined => "undetermined",
            WeckenStatus::NoRemnant => "no_remnant",
        }
    }
}

/// Full membership record for one endomorphism.
///
/// `equality_lengths` is computed whether or not the map has remnant, so the
/// remnant-free variant `in_vprime` stays decidable on its own. All
/// remnant-gated memberships (`in_v`, `in_a0`, `ak`, `in_b`) are false or
/// empty without remnant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub has_remnant: bool,
    pub equality_lengths: BTreeSet<usize>,
    pub in_vprime: bool,
    pub in_v: bool,
    pub in_a0: bool,
    /// Lengths `k >= 1` with a tail equality, gated on remnant.
    pub ak: Vec<usize>,
    pub in_b: bool,
    pub wecken: WeckenStatus,
}

pub fn classify(phi: &Endomorphism) -> Classification {
    let tails = wagner_tails(phi);
    classify_from_tails(phi, &tails)
}

pub(crate) fn classify_from_tails(phi: &Endomorphism, tails: &[TailPair]) -> Classification {
    let equality_lengths = equality_lengths(tails);
    let has_remnant = remnant(phi).has_remnant;
    let in_vprime = equality_lengths.is_empty();
    let in_v = in_vprime && has_remnant;
    let in_a0 = has_remnant && equality_lengths.contains(&0);
    let ak: Vec<usize> = if has_remnant {
        equality_lengths
            .iter()
            .copied()
            .filter(|&k| k >= 1)
            .collect()
    } else {
        Vec::new()
    };
    let in_b = in_a0 && ak.is_empty();
    let wecken = if !has_remnant {
        WeckenStatus::NoRemnant
    } else if in_v {
        WeckenStatus::CertifiedV
    } else if in_b {
        WeckenStatus::CertifiedB
    } else {
        WeckenStatus::Undetermined
    };
    Classification {
        has_remnant,
        equality_lengths,
        in_vprime,
        in_v,
        in_a0,
        ak,
        in_b,
        wecken,
    }
}

/// Independent check for a length-0 tail equality: some image begins or ends
/// with its own generator. Kept as a redundant cross-check against the tail
/// scan.
pub fn is_a0_by_boundary(phi: &Endomorphism) -> bool {
    phi.images().iter().enumerate().any(|(i, image)| {
        let own = i as u32 + 1;
        let starts = image
            .first()
            .is_some_and(|l| l.is_positive() && l.index() == own);
        let ends = image
            .last()
            .is_some_and(|l| l.is_positive() && l.index() == own);
        starts || ends
    })
}

/// One merged class of fixed-point slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointPart {
    pub slots: Vec<usize>,
    pub index_sum: i64,
}

/// Partition of the tail slots into merge classes: two slots share a part
/// when their tail-value sets intersect, closed transitively. The slot index
/// model is +1 for slot 0 and -1 for every other slot.
///
/// The merge rule is the contrapositive of the disjointness fact (disjoint
/// tail sets cannot be combined), so parts may be coarser than the true
/// fixed-point classes; counts derived from it are lower bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointPartition {
    pub parts: Vec<FixedPointPart>,
}

impl FixedPointPartition {
    pub fn slot_index(slot: usize) -> i64 {
        if slot == 0 {
            1
        } else {
            -1
        }
    }

    /// Parts with nonzero index sum.
    pub fn essential_parts(&self) -> usize {
        self.parts.iter().filter(|p| p.index_sum != 0).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.parts.iter().all(|p| p.slots.len() == 1)
    }
}

pub fn fixed_point_partition(tails: &[TailPair]) -> FixedPointPartition {
    let m = tails.len();
    let mut uf = UnionFind::new(m);
    let mut seen: std::collections::HashMap<&crate::freegroup::Word, usize> =
        std::collections::HashMap::new();
    for tail in tails {
        for value in [&tail.w, &tail.w_bar] {
            match seen.entry(value) {
                std::collections::hash_map::Entry::Occupied(e) => uf.union(*e.get(), tail.slot),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(tail.slot);
                }
            }
        }
    }
    let mut grouped: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for slot in 0..m {
        grouped.entry(uf.find(slot)).or_default().push(slot);
    }
    let parts = grouped
        .into_values()
        .map(|slots| {
            let index_sum = slots
                .iter()
                .map(|&s| FixedPointPartition::slot_index(s))
                .sum();
            FixedPointPart { slots, index_sum }
        })
        .collect();
    FixedPointPartition { parts }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Root at the smaller representative so part grouping is stable.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Lower bound for the Nielsen number under the slot index model: the number
/// of merge classes with nonzero index sum. Exact for maps certified via the
/// no-equality or length-0-only routes; a heuristic lower bound elsewhere.
/// Without remnant the bound is not justified and reports 0, unjustified.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NielsenBound {
    pub value: usize,
    pub justified: bool,
}

pub fn nielsen_lower_bound(phi: &Endomorphism) -> NielsenBound {
    if !remnant(phi).has_remnant {
        return NielsenBound {
            value: 0,
            justified: false,
        };
    }
    let tails = wagner_tails(phi);
    let partition = fixed_point_partition(&tails);
    NielsenBound {
        value: partition.essential_parts(),
        justified: true,
    }
}

#[derive(Serialize)]
struct ClassificationDto {
    remnant: bool,
    equality_lengths: Vec<usize>,
    #[serde(rename = "V")]
    v: bool,
    #[serde(rename = "Vprime")]
    vprime: bool,
    #[serde(rename = "A0")]
    a0: bool,
    #[serde(rename = "Ak")]
    ak: Vec<usize>,
    #[serde(rename = "B")]
    b: bool,
    wecken: &'static str,
    nielsen_lower_bound: usize,
}

/// JSON report for one endomorphism, combining the classification with the
/// Nielsen lower bound.
pub fn classification_json(phi: &Endomorphism) -> String {
    let c = classify(phi);
    let bound = nielsen_lower_bound(phi);
    let dto = ClassificationDto {
        remnant: c.has_remnant,
        equality_lengths: c.equality_lengths.iter().copied().collect(),
        v: c.in_v,
        vprime: c.in_vprime,
        a0: c.in_a0,
        ak: c.ak.clone(),
        b: c.in_b,
        wecken: c.wecken.as_str(),
        nielsen_lower_bound: bound.value,
    };
    serde_json::to_string(&dto).expect("classification serialization cannot fail")
}
