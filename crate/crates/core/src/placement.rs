//! Cache placement: splitting every file into the 57 subfiles dictated by
//! the splitting ratios and loading transmitter/receiver caches bit by bit.

use crate::error::{Error, Result};
use crate::model::{enumerate_cache_states, CacheState, SplitRatios};
use crate::rat::Rat;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::ops::Range;

/// A content library of `num_files` equal-length bit-strings.
#[derive(Debug, Clone)]
pub struct Library {
    pub file_size: usize,
    files: Vec<Vec<u8>>,
}

impl Library {
    /// Seeded pseudorandom contents; one byte per bit (0 or 1).
    pub fn random(num_files: usize, file_size: usize, seed: u64) -> Self {
        assert!(num_files >= 3, "three distinct demands must be possible");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let files = (0..num_files)
            .map(|_| (0..file_size).map(|_| rng.gen_range(0..2u8)).collect())
            .collect();
        Self { file_size, files }
    }

    pub fn num_files(&self) -> usize {
        self.files.len()
    }

    pub fn file(&self, i: usize) -> &[u8] {
        &self.files[i]
    }
}

/// Bit-range assignment of the 57 cache states within a file. Every file
/// uses the identical layout.
#[derive(Debug, Clone)]
pub struct SplitLayout {
    pub file_size: usize,
    ranges: Vec<(CacheState, Range<usize>)>,
}

impl SplitLayout {
    pub fn states(&self) -> &[(CacheState, Range<usize>)] {
        &self.ranges
    }

    pub fn range(&self, state: &CacheState) -> &Range<usize> {
        self.ranges
            .iter()
            .find(|(s, _)| s == state)
            .map(|(_, r)| r)
            .expect("unknown cache state")
    }
}

/// Least F > 0 making every nonzero a_mn * F integral: the lcm of the
/// reduced denominators.
pub fn minimal_file_size(ratios: &SplitRatios) -> usize {
    let mut lcm = num_bigint::BigInt::from(1);
    for a in ratios.to_vec() {
        if !a.is_zero() {
            lcm = lcm.lcm(a.denom());
        }
    }
    lcm.to_usize().expect("minimal file size overflows usize")
}

fn subfile_len(a: &Rat, file_size: usize) -> usize {
    let bits = a * Rat::from_integer(file_size.into());
    assert!(bits.is_integer(), "file size not divisible by ratio denominators");
    bits.to_integer().to_usize().unwrap()
}

/// Assigns consecutive bit-ranges to the states in canonical order. Ranges
/// partition [0, F) exactly; no rounding is ever performed.
pub fn split_files(ratios: &SplitRatios, library: &Library) -> Result<SplitLayout> {
    let file_size = library.file_size;
    let required = minimal_file_size(ratios);
    if file_size == 0 || !file_size.is_multiple_of(required) {
        return Err(Error::IndivisibleFileSize {
            file_size,
            required,
        });
    }
    let mut ranges = Vec::with_capacity(57);
    let mut start = 0usize;
    for state in enumerate_cache_states() {
        let (m, n) = state.size_class();
        let len = subfile_len(ratios.get(m, n), file_size);
        ranges.push((state, start..start + len));
        start += len;
    }
    assert_eq!(start, file_size, "splitting ratios must sum to one");
    Ok(SplitLayout { file_size, ranges })
}

/// One cached subfile: (file index, bit-range within the file, bits).
type CacheEntry = (usize, Range<usize>, Vec<u8>);

/// The actual cached bits at every node.
#[derive(Debug, Clone)]
pub struct CacheContents {
    tx: [Vec<CacheEntry>; 3],
    rx: [Vec<CacheEntry>; 3],
}

impl CacheContents {
    /// Bits held by transmitter p (1-based).
    pub fn tx_occupancy(&self, p: usize) -> usize {
        self.tx[p - 1].iter().map(|(_, r, _)| r.len()).sum()
    }

    pub fn rx_occupancy(&self, j: usize) -> usize {
        self.rx[j - 1].iter().map(|(_, r, _)| r.len()).sum()
    }

    pub fn tx_subfile(&self, p: usize, file: usize, range: &Range<usize>) -> Option<&[u8]> {
        self.tx[p - 1]
            .iter()
            .find(|(f, r, _)| *f == file && r == range)
            .map(|(_, _, bits)| bits.as_slice())
    }

    pub fn rx_subfile(&self, j: usize, file: usize, range: &Range<usize>) -> Option<&[u8]> {
        self.rx[j - 1]
            .iter()
            .find(|(f, r, _)| *f == file && r == range)
            .map(|(_, _, bits)| bits.as_slice())
    }
}

/// Copies every subfile into the caches of the nodes named by its state.
pub fn place_caches(layout: &SplitLayout, library: &Library) -> CacheContents {
    let mut contents = CacheContents {
        tx: [vec![], vec![], vec![]],
        rx: [vec![], vec![], vec![]],
    };
    for file in 0..library.num_files() {
        for (state, range) in layout.states() {
            if range.is_empty() {
                continue;
            }
            let bits = library.file(file)[range.clone()].to_vec();
            for p in 1..=3 {
                if state.has_tx(p) {
                    contents.tx[p - 1].push((file, range.clone(), bits.clone()));
                }
            }
            for j in 1..=3 {
                if state.has_rx(j) {
                    contents.rx[j - 1].push((file, range.clone(), bits.clone()));
                }
            }
        }
    }
    contents
}
