//! Delivery phase: XOR coded-message construction, scheduling over the six
//! abstract channel types at their DoF rates, and bit-level execution with
//! side-information decoding at each receiver.

use crate::error::{Error, Result};
use crate::model::{node_set_from, CacheState, NodeSet, ALL_NODES};
use crate::placement::{CacheContents, Library, SplitLayout};
use crate::rat::{int, rat, Rat};
use crate::theorem::FdtValue;
use std::ops::Range;

/// Abstract channel topologies used in the delivery phase, each with the
/// sum DoF its transmission scheme achieves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// Broadcast with common information only.
    Multicast,
    /// Each transmitter sends a distinct message to each receiver pair;
    /// interference alignment.
    HybridXMulticast,
    /// The same with cooperating transmitter subsets; interference
    /// neutralization.
    CoopHybridXMulticast,
    MisoBroadcast,
    PartialCoopX,
    XChannel,
}

impl ChannelKind {
    pub fn dof(&self) -> Rat {
        match self {
            ChannelKind::Multicast => int(1),
            ChannelKind::HybridXMulticast => rat(9, 7),
            ChannelKind::CoopHybridXMulticast => rat(3, 2),
            ChannelKind::MisoBroadcast => int(3),
            ChannelKind::PartialCoopX => rat(18, 7),
            ChannelKind::XChannel => rat(9, 5),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelKind::Multicast => "multicast",
            ChannelKind::HybridXMulticast => "hybrid-x-multicast",
            ChannelKind::CoopHybridXMulticast => "coop-hybrid-x-multicast",
            ChannelKind::MisoBroadcast => "miso-broadcast",
            ChannelKind::PartialCoopX => "partial-coop-x",
            ChannelKind::XChannel => "x-channel",
        }
    }
}

/// One transmission: the XOR of equal-length subfiles, each identified by
/// (file index, cache state).
#[derive(Debug, Clone)]
pub struct CodedMessage {
    pub constituents: Vec<(usize, CacheState)>,
    pub payload: Vec<u8>,
    pub intended_receivers: NodeSet,
    pub serving_transmitters: NodeSet,
}

#[derive(Debug, Clone)]
pub struct DeliveryPhase {
    pub kind: ChannelKind,
    pub messages: Vec<CodedMessage>,
    pub total_bits: usize,
    /// total_bits / dof, in units of time * log P.
    pub normalized_duration: Rat,
}

impl DeliveryPhase {
    fn new(kind: ChannelKind, messages: Vec<CodedMessage>) -> Self {
        let total_bits: usize = messages.iter().map(|m| m.payload.len()).sum();
        let normalized_duration = int(total_bits as i64) / kind.dof();
        Self {
            kind,
            messages,
            total_bits,
            normalized_duration,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhaseSummary {
    pub kind: ChannelKind,
    pub num_messages: usize,
    pub total_bits: usize,
    pub normalized_duration: Rat,
}

#[derive(Debug, Clone)]
pub struct SimReport {
    pub phases: Vec<PhaseSummary>,
    pub measured_fdt: Rat,
    pub decode_ok: [bool; 3],
    pub tx_occupancy: [usize; 3],
    pub rx_occupancy: [usize; 3],
}

fn subsets_of_size(k: u32) -> impl Iterator<Item = NodeSet> {
    (1..=ALL_NODES).filter(move |s| s.count_ones() == k)
}

fn xor_bits(dst: &mut [u8], src: &[u8]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn rx_complement(j: usize) -> NodeSet {
    ALL_NODES & !(1u8 << (j - 1))
}

/// Builds the full delivery schedule for a distinct demand triple:
/// receiver j wants file demand[j-1].
///
/// Subfiles cached at two receivers ride triple-XOR multicast messages, one
/// TDMA phase per transmitter subset. Subfiles cached at one receiver ride
/// pairwise-XOR messages over the (cooperative) hybrid X-multicast channel.
/// Receiver-uncached subfiles go uncoded over the MISO broadcast, partially
/// cooperative X, and X channels. Phases with zero bits are omitted.
pub fn plan_delivery(
    layout: &SplitLayout,
    library: &Library,
    demand: &[usize; 3],
) -> Result<Vec<DeliveryPhase>> {
    if demand[0] == demand[1] || demand[0] == demand[2] || demand[1] == demand[2] {
        return Err(Error::NonDistinctDemand);
    }
    let subfile = |file: usize, rx_set: NodeSet, tx_set: NodeSet| -> (CacheState, &[u8]) {
        let state = CacheState { rx_set, tx_set };
        let range = layout.range(&state);
        (state, &library.file(file)[range.clone()])
    };
    let mut phases = Vec::new();

    // Group 1: classes (2, n). One multicast phase per cooperation set.
    for n in 1..=3 {
        for psi in subsets_of_size(n) {
            let mut constituents = Vec::with_capacity(3);
            let mut payload: Option<Vec<u8>> = None;
            for j in 1..=3 {
                let (state, bits) = subfile(demand[j - 1], rx_complement(j), psi);
                constituents.push((demand[j - 1], state));
                match &mut payload {
                    None => payload = Some(bits.to_vec()),
                    Some(p) => xor_bits(p, bits),
                }
            }
            let payload = payload.unwrap();
            if payload.is_empty() {
                continue;
            }
            phases.push(DeliveryPhase::new(
                ChannelKind::Multicast,
                vec![CodedMessage {
                    constituents,
                    payload,
                    intended_receivers: ALL_NODES,
                    serving_transmitters: psi,
                }],
            ));
        }
    }

    // Group 2: classes (1, n). Pairwise XOR messages, one phase per |psi|.
    for n in 1..=3 {
        let kind = if n == 1 {
            ChannelKind::HybridXMulticast
        } else {
            ChannelKind::CoopHybridXMulticast
        };
        let mut messages = Vec::new();
        for (j, k) in [(1usize, 2usize), (1, 3), (2, 3)] {
            for psi in subsets_of_size(n) {
                let (state_j, bits_j) = subfile(demand[j - 1], node_set_from(&[k]), psi);
                let (state_k, bits_k) = subfile(demand[k - 1], node_set_from(&[j]), psi);
                if bits_j.is_empty() {
                    continue;
                }
                let mut payload = bits_j.to_vec();
                xor_bits(&mut payload, bits_k);
                messages.push(CodedMessage {
                    constituents: vec![(demand[j - 1], state_j), (demand[k - 1], state_k)],
                    payload,
                    intended_receivers: node_set_from(&[j, k]),
                    serving_transmitters: psi,
                });
            }
        }
        if !messages.is_empty() {
            phases.push(DeliveryPhase::new(kind, messages));
        }
    }

    // Group 3: classes (0, n). Uncoded subfiles, one phase per topology.
    for (n, kind) in [
        (3, ChannelKind::MisoBroadcast),
        (2, ChannelKind::PartialCoopX),
        (1, ChannelKind::XChannel),
    ] {
        let mut messages = Vec::new();
        for j in 1..=3 {
            for psi in subsets_of_size(n) {
                let (state, bits) = subfile(demand[j - 1], 0, psi);
                if bits.is_empty() {
                    continue;
                }
                messages.push(CodedMessage {
                    constituents: vec![(demand[j - 1], state)],
                    payload: bits.to_vec(),
                    intended_receivers: 1 << (j - 1),
                    serving_transmitters: psi,
                });
            }
        }
        if !messages.is_empty() {
            phases.push(DeliveryPhase::new(kind, messages));
        }
    }

    Ok(phases)
}

/// Total normalized delivery time over the requested 3F bits.
pub fn measured_fdt(plan: &[DeliveryPhase], file_size: usize) -> FdtValue {
    let total: Rat = plan.iter().map(|p| p.normalized_duration.clone()).sum();
    FdtValue::new(total / int(3 * file_size as i64))
}

/// Runs the plan against the caches: each intended receiver strips the XOR
/// components it holds as side information and credits the remaining
/// subfile. Verifies every receiver ends up with its full demanded file.
pub fn execute(
    plan: &[DeliveryPhase],
    caches: &CacheContents,
    layout: &SplitLayout,
    library: &Library,
    demand: &[usize; 3],
) -> Result<SimReport> {
    let file_size = library.file_size;
    // Per-receiver view of the demanded file: cached bits first.
    let mut recovered: Vec<Vec<Option<u8>>> = (0..3).map(|_| vec![None; file_size]).collect();
    for j in 1..=3 {
        for (state, range) in layout.states() {
            if !state.has_rx(j) || range.is_empty() {
                continue;
            }
            let bits = caches
                .rx_subfile(j, demand[j - 1], range)
                .expect("placement must cover every rx-cached state");
            for (pos, &bit) in range.clone().zip(bits) {
                recovered[j - 1][pos] = Some(bit);
            }
        }
    }

    for phase in plan {
        for msg in &phase.messages {
            // Serving transmitters must hold every constituent.
            for (file, state) in &msg.constituents {
                let range = layout.range(state);
                for p in 1..=3 {
                    if msg.serving_transmitters & (1 << (p - 1)) != 0 {
                        assert!(
                            caches.tx_subfile(p, *file, range).is_some(),
                            "transmitter {p} cannot form message: missing subfile"
                        );
                    }
                }
            }
            for j in 1..=3 {
                if msg.intended_receivers & (1 << (j - 1)) == 0 {
                    continue;
                }
                let mut bits = msg.payload.clone();
                let mut own_range: Option<Range<usize>> = None;
                for (file, state) in &msg.constituents {
                    let range = layout.range(state);
                    if *file == demand[j - 1] && !state.has_rx(j) {
                        own_range = Some(range.clone());
                    } else {
                        let side = caches.rx_subfile(j, *file, range).ok_or(
                            Error::DecodeFailure {
                                receiver: j,
                                start: range.start,
                                end: range.end,
                            },
                        )?;
                        xor_bits(&mut bits, side);
                    }
                }
                let range = own_range.expect("message has no component for an intended receiver");
                for (pos, bit) in range.zip(bits) {
                    recovered[j - 1][pos] = Some(bit);
                }
            }
        }
    }

    let mut decode_ok = [false; 3];
    for j in 1..=3 {
        let want = library.file(demand[j - 1]);
        if let Some(start) = recovered[j - 1].iter().position(Option::is_none) {
            let end = recovered[j - 1][start..]
                .iter()
                .position(Option::is_some)
                .map_or(file_size, |off| start + off);
            return Err(Error::DecodeFailure {
                receiver: j,
                start,
                end,
            });
        }
        decode_ok[j - 1] = recovered[j - 1]
            .iter()
            .zip(want)
            .all(|(got, want)| got.as_ref() == Some(want));
    }

    Ok(SimReport {
        phases: plan
            .iter()
            .map(|p| PhaseSummary {
                kind: p.kind,
                num_messages: p.messages.len(),
                total_bits: p.total_bits,
                normalized_duration: p.normalized_duration.clone(),
            })
            .collect(),
        measured_fdt: measured_fdt(plan, file_size).into_inner(),
        decode_ok,
        tx_occupancy: [1, 2, 3].map(|p| caches.tx_occupancy(p)),
        rx_occupancy: [1, 2, 3].map(|j| caches.rx_occupancy(j)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CacheBudget, SplitRatios};
    use crate::placement::{minimal_file_size, place_caches, split_files};
    use crate::theorem::closed_form_ratios;

    fn simulate(ratios: &SplitRatios, file_size: usize) -> SimReport {
        let lib = Library::random(3, file_size, 7);
        let layout = split_files(ratios, &lib).unwrap();
        let caches = place_caches(&layout, &lib);
        let demand = [0usize, 1, 2];
        let plan = plan_delivery(&layout, &lib, &demand).unwrap();
        execute(&plan, &caches, &layout, &lib, &demand).unwrap()
    }

    #[test]
    fn miso_broadcast_only() {
        let mut r = SplitRatios::zero();
        r.a03 = int(1);
        let report = simulate(&r, 8);
        assert_eq!(report.phases.len(), 1);
        assert_eq!(report.phases[0].kind, ChannelKind::MisoBroadcast);
        assert_eq!(report.phases[0].total_bits, 24);
        assert_eq!(report.measured_fdt, rat(1, 3));
        assert_eq!(report.decode_ok, [true; 3]);
    }

    #[test]
    fn fully_receiver_cached_needs_no_delivery() {
        let mut r = SplitRatios::zero();
        r.a30 = int(1);
        let report = simulate(&r, 4);
        assert!(report.phases.is_empty());
        assert_eq!(report.measured_fdt, int(0));
    }

    #[test]
    fn hybrid_x_multicast_at_r5_corner() {
        let b = CacheBudget::new(rat(1, 3), rat(1, 3)).unwrap();
        let r = closed_form_ratios(&b).unwrap();
        assert_eq!(minimal_file_size(&r), 9);
        let report = simulate(&r, 9);
        assert_eq!(report.phases.len(), 1);
        assert_eq!(report.phases[0].kind, ChannelKind::HybridXMulticast);
        assert_eq!(report.phases[0].num_messages, 9);
        assert_eq!(report.phases[0].total_bits, 9);
        assert_eq!(report.phases[0].normalized_duration, int(7));
        assert_eq!(report.measured_fdt, rat(7, 27));
        assert_eq!(report.decode_ok, [true; 3]);
    }

    #[test]
    fn group1_tdma_accounting() {
        let mut r = SplitRatios::zero();
        r.a22 = rat(1, 9);
        let lib = Library::random(3, 9, 3);
        let layout = split_files(&r, &lib).unwrap();
        let demand = [0usize, 1, 2];
        let plan = plan_delivery(&layout, &lib, &demand).unwrap();
        // Three TDMA slots at DoF 1, one per two-transmitter set.
        assert_eq!(plan.len(), 3);
        for phase in &plan {
            assert_eq!(phase.kind, ChannelKind::Multicast);
            assert_eq!(phase.messages.len(), 1);
            assert_eq!(phase.total_bits, 1);
        }
        assert_eq!(*measured_fdt(&plan, 9).value(), rat(1, 9));
    }

    #[test]
    fn rejects_repeated_demand() {
        let mut r = SplitRatios::zero();
        r.a03 = int(1);
        let lib = Library::random(3, 2, 1);
        let layout = split_files(&r, &lib).unwrap();
        assert!(matches!(
            plan_delivery(&layout, &lib, &[0, 0, 1]),
            Err(Error::NonDistinctDemand)
        ));
    }

    #[test]
    fn demand_permutation_symmetry() {
        let b = CacheBudget::new(rat(2, 5), rat(2, 5)).unwrap();
        let r = closed_form_ratios(&b).unwrap();
        let lib = Library::random(4, 15, 11);
        let layout = split_files(&r, &lib).unwrap();
        let caches = place_caches(&layout, &lib);
        let demands = [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [3, 1, 0],
        ];
        for demand in demands {
            let plan = plan_delivery(&layout, &lib, &demand).unwrap();
            let report = execute(&plan, &caches, &layout, &lib, &demand).unwrap();
            assert_eq!(report.decode_ok, [true; 3], "demand {demand:?}");
            assert_eq!(report.measured_fdt, rat(2, 9), "demand {demand:?}");
        }
    }
}
