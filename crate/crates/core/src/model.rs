//! Domain types: cache budgets, region classification, and the 57 feasible
//! cache states of the 3x3 network.

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, int, rat, Rat};
use num_traits::Zero;

/// Normalized cache-size pair (mu_r at each receiver, mu_t at each
/// transmitter), both in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheBudget {
    mu_r: Rat,
    mu_t: Rat,
}

impl CacheBudget {
    pub fn new(mu_r: Rat, mu_t: Rat) -> Result<Self> {
        let zero = int(0);
        let one = int(1);
        if mu_r < zero || mu_r > one || mu_t < zero || mu_t > one {
            return Err(Error::InfeasibleBudget {
                mu_r: fmt_rat(&mu_r),
                mu_t: fmt_rat(&mu_t),
            });
        }
        Ok(Self { mu_r, mu_t })
    }

    pub fn mu_r(&self) -> &Rat {
        &self.mu_r
    }

    pub fn mu_t(&self) -> &Rat {
        &self.mu_t
    }

    pub fn infeasible_error(&self) -> Error {
        Error::InfeasibleBudget {
            mu_r: fmt_rat(&self.mu_r),
            mu_t: fmt_rat(&self.mu_t),
        }
    }
}

/// True iff the whole library fits in the network's combined caches:
/// mu_r + 3*mu_t >= 1.
pub fn check_feasible(budget: &CacheBudget) -> bool {
    budget.mu_r() + int(3) * budget.mu_t() >= int(1)
}

/// The five linear pieces of the achievable tradeoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::R1, Region::R2, Region::R3, Region::R4, Region::R5];

    pub fn name(&self) -> &'static str {
        match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
            Region::R4 => "R4",
            Region::R5 => "R5",
        }
    }

    /// Membership predicate for this region alone. The five predicates
    /// partition the feasible domain: every feasible budget matches exactly
    /// one of them. R5 additionally requires mu_r + mu_t < 1, which differs
    /// from its raw inequality list only at the single corner (1, 0), kept
    /// in R1 so the regions stay disjoint.
    pub fn contains(&self, b: &CacheBudget) -> bool {
        let mu_r = b.mu_r();
        let mu_t = b.mu_t();
        let one = int(1);
        let two_thirds = rat(2, 3);
        let third = rat(1, 3);
        match self {
            Region::R1 => mu_r + mu_t >= one,
            Region::R2 => {
                mu_r + mu_t < one
                    && int(2) * mu_r + mu_t >= one
                    && mu_r + int(2) * mu_t > one
            }
            Region::R3 => {
                mu_r + mu_t >= two_thirds
                    && int(2) * mu_r + mu_t < one
                    && mu_r >= &Rat::zero()
            }
            Region::R4 => {
                mu_r + mu_t < two_thirds && mu_r >= &Rat::zero() && mu_t > &third
            }
            Region::R5 => {
                mu_t <= &third
                    && mu_r + int(2) * mu_t <= one
                    && mu_r + int(3) * mu_t >= one
                    && mu_r + mu_t < int(1)
            }
        }
    }
}

/// Maps a feasible budget to its unique region.
pub fn classify_region(budget: &CacheBudget) -> Result<Region> {
    if !check_feasible(budget) {
        return Err(budget.infeasible_error());
    }
    for region in Region::ALL {
        if region.contains(budget) {
            return Ok(region);
        }
    }
    unreachable!("feasible budget matched no region: {budget:?}")
}

/// Node subsets are bitmasks over {1,2,3}: bit j-1 set means node j.
pub type NodeSet = u8;

pub const ALL_NODES: NodeSet = 0b111;

pub fn node_set_members(set: NodeSet) -> impl Iterator<Item = usize> {
    (1..=3).filter(move |j| set & (1 << (j - 1)) != 0)
}

pub fn node_set_from(members: &[usize]) -> NodeSet {
    members.iter().fold(0, |acc, j| acc | (1 << (j - 1)))
}

/// Where one bit is replicated: the receivers and transmitters caching it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheState {
    pub rx_set: NodeSet,
    pub tx_set: NodeSet,
}

impl CacheState {
    /// Valid iff the bit is reachable: cached in some transmitter, or
    /// already at all three receivers.
    pub fn is_valid(&self) -> bool {
        self.rx_set <= ALL_NODES
            && self.tx_set <= ALL_NODES
            && (self.tx_set != 0 || self.rx_set == ALL_NODES)
    }

    pub fn size_class(&self) -> (u32, u32) {
        (self.rx_set.count_ones(), self.tx_set.count_ones())
    }

    pub fn has_rx(&self, j: usize) -> bool {
        self.rx_set & (1 << (j - 1)) != 0
    }

    pub fn has_tx(&self, p: usize) -> bool {
        self.tx_set & (1 << (p - 1)) != 0
    }
}

/// The 57 feasible states in canonical order:
/// sorted by (|rx_set|, rx bitmask, |tx_set|, tx bitmask).
pub fn enumerate_cache_states() -> Vec<CacheState> {
    let mut states: Vec<CacheState> = (0..=ALL_NODES)
        .flat_map(|rx_set| (0..=ALL_NODES).map(move |tx_set| CacheState { rx_set, tx_set }))
        .filter(CacheState::is_valid)
        .collect();
    states.sort_by_key(|s| {
        (
            s.rx_set.count_ones(),
            s.rx_set,
            s.tx_set.count_ones(),
            s.tx_set,
        )
    });
    states
}

/// (|rx_set|, |tx_set|) — picks which splitting ratio governs the state.
pub fn state_size_class(state: &CacheState) -> (u32, u32) {
    state.size_class()
}

/// The 13 file-splitting ratios a_mn, indexed by
/// (receiver copies m, transmitter copies n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRatios {
    pub a30: Rat,
    pub a31: Rat,
    pub a32: Rat,
    pub a33: Rat,
    pub a21: Rat,
    pub a22: Rat,
    pub a23: Rat,
    pub a11: Rat,
    pub a12: Rat,
    pub a13: Rat,
    pub a01: Rat,
    pub a02: Rat,
    pub a03: Rat,
}

/// Fixed variable order used by the LP and all vector views.
pub const RATIO_CLASSES: [(u32, u32); 13] = [
    (3, 0),
    (3, 1),
    (3, 2),
    (3, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (0, 1),
    (0, 2),
    (0, 3),
];

pub const RATIO_NAMES: [&str; 13] = [
    "a30", "a31", "a32", "a33", "a21", "a22", "a23", "a11", "a12", "a13", "a01", "a02", "a03",
];

fn binom3(k: u32) -> i64 {
    match k {
        0 | 3 => 1,
        1 | 2 => 3,
        _ => 0,
    }
}

/// Number of cache states sharing size class (m, n): C(3,m)*C(3,n).
pub fn class_multiplicity(m: u32, n: u32) -> i64 {
    binom3(m) * binom3(n)
}

impl SplitRatios {
    pub fn zero() -> Self {
        Self::from_vec(std::array::from_fn(|_| Rat::zero()))
    }

    pub fn from_vec(v: [Rat; 13]) -> Self {
        let [a30, a31, a32, a33, a21, a22, a23, a11, a12, a13, a01, a02, a03] = v;
        Self {
            a30,
            a31,
            a32,
            a33,
            a21,
            a22,
            a23,
            a11,
            a12,
            a13,
            a01,
            a02,
            a03,
        }
    }

    pub fn to_vec(&self) -> [Rat; 13] {
        [
            self.a30.clone(),
            self.a31.clone(),
            self.a32.clone(),
            self.a33.clone(),
            self.a21.clone(),
            self.a22.clone(),
            self.a23.clone(),
            self.a11.clone(),
            self.a12.clone(),
            self.a13.clone(),
            self.a01.clone(),
            self.a02.clone(),
            self.a03.clone(),
        ]
    }

    pub fn get(&self, m: u32, n: u32) -> &Rat {
        match (m, n) {
            (3, 0) => &self.a30,
            (3, 1) => &self.a31,
            (3, 2) => &self.a32,
            (3, 3) => &self.a33,
            (2, 1) => &self.a21,
            (2, 2) => &self.a22,
            (2, 3) => &self.a23,
            (1, 1) => &self.a11,
            (1, 2) => &self.a12,
            (1, 3) => &self.a13,
            (0, 1) => &self.a01,
            (0, 2) => &self.a02,
            (0, 3) => &self.a03,
            _ => panic!("no splitting ratio for size class ({m}, {n})"),
        }
    }

    /// Left side of the file-size identity:
    /// sum over classes of multiplicity * a_mn. Must equal 1.
    pub fn total_size(&self) -> Rat {
        RATIO_CLASSES
            .iter()
            .zip(self.to_vec())
            .map(|(&(m, n), a)| int(class_multiplicity(m, n)) * a)
            .sum()
    }

    /// Per-receiver cache load: sum of C(2,m-1)*C(3,n)... expressed via
    /// state membership: each class (m,n) contributes to one receiver in
    /// C(2,m-1)*C(3,n) of its states.
    pub fn rx_load(&self) -> Rat {
        let coeffs: [i64; 13] = [1, 3, 3, 1, 6, 6, 2, 3, 3, 1, 0, 0, 0];
        coeffs
            .iter()
            .zip(self.to_vec())
            .map(|(&c, a)| int(c) * a)
            .sum()
    }

    /// Per-transmitter cache load, the left side of the transmitter budget
    /// constraint.
    pub fn tx_load(&self) -> Rat {
        let coeffs: [i64; 13] = [0, 1, 2, 1, 3, 6, 3, 3, 6, 3, 1, 2, 1];
        coeffs
            .iter()
            .zip(self.to_vec())
            .map(|(&c, a)| int(c) * a)
            .sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.to_vec().iter().all(|a| *a >= Rat::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(nr: i64, dr: i64, nt: i64, dt: i64) -> CacheBudget {
        CacheBudget::new(rat(nr, dr), rat(nt, dt)).unwrap()
    }

    #[test]
    fn feasibility_boundary() {
        assert!(check_feasible(&budget(1, 1, 0, 1)));
        assert!(check_feasible(&budget(0, 1, 1, 3)));
        assert!(!check_feasible(&budget(0, 1, 1, 4)));
    }

    #[test]
    fn budget_rejects_outside_unit_square() {
        assert!(CacheBudget::new(rat(3, 2), int(0)).is_err());
        assert!(CacheBudget::new(int(0), rat(-1, 2)).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_region(&budget(1, 2, 1, 2)).unwrap(), Region::R1);
        assert_eq!(classify_region(&budget(2, 5, 2, 5)).unwrap(), Region::R2);
        assert_eq!(classify_region(&budget(1, 3, 1, 3)).unwrap(), Region::R5);
        assert_eq!(classify_region(&budget(1, 5, 1, 2)).unwrap(), Region::R3);
        assert_eq!(classify_region(&budget(1, 10, 1, 2)).unwrap(), Region::R4);
        // The R2/R3 boundary 2*mu_r + mu_t = 1 belongs to R2 as printed.
        assert_eq!(classify_region(&budget(1, 4, 1, 2)).unwrap(), Region::R2);
    }

    #[test]
    fn classify_rejects_infeasible() {
        assert!(classify_region(&budget(0, 1, 1, 4)).is_err());
    }

    #[test]
    fn corner_mu_r_one_mu_t_zero_is_r1_only() {
        let b = budget(1, 1, 0, 1);
        let matches: Vec<_> = Region::ALL.iter().filter(|r| r.contains(&b)).collect();
        assert_eq!(matches, vec![&Region::R1]);
    }

    #[test]
    fn exactly_57_states() {
        let states = enumerate_cache_states();
        assert_eq!(states.len(), 57);
        let mut dedup = states.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 57);
        assert!(states.iter().all(CacheState::is_valid));
        assert!(states.contains(&CacheState {
            rx_set: ALL_NODES,
            tx_set: 0
        }));
        assert!(!states.contains(&CacheState {
            rx_set: 0b001,
            tx_set: 0
        }));
    }

    #[test]
    fn size_class_examples() {
        let s = CacheState {
            rx_set: node_set_from(&[2, 3]),
            tx_set: node_set_from(&[1]),
        };
        assert_eq!(state_size_class(&s), (2, 1));
        let s = CacheState {
            rx_set: 0,
            tx_set: ALL_NODES,
        };
        assert_eq!(state_size_class(&s), (0, 3));
    }

    #[test]
    fn multiplicities_match_state_counts() {
        let states = enumerate_cache_states();
        for &(m, n) in &RATIO_CLASSES {
            let count = states.iter().filter(|s| s.size_class() == (m, n)).count() as i64;
            assert_eq!(count, class_multiplicity(m, n), "class ({m},{n})");
        }
    }
}
