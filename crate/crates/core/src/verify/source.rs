//! Strategies that produce CC-subsets as unions of power classes.
//!
//! A CC-subset is exactly a non-empty union of power classes, so a subset is
//! named by a bitmask over the classes of [`power_classes`].

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{power_classes, ClassPartition};
use crate::group::{GroupTable, Subset};

/// Masks wider than this are never enumerated exhaustively.
pub const MAX_EXHAUSTIVE_CLASSES: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassMask {
    words: Vec<u64>,
}

impl ClassMask {
    pub fn empty(classes: usize) -> Self {
        ClassMask { words: vec![0; classes.div_ceil(64).max(1)] }
    }

    pub fn from_bits(bits: u64) -> Self {
        ClassMask { words: vec![bits] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Lowercase hex, most significant word first, without leading zeros.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for &w in self.words.iter().rev() {
            if s.is_empty() {
                if w != 0 {
                    s = format!("{w:x}");
                }
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        let hex = hex.trim_start_matches("0x");
        if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return None;
        }
        let chars: Vec<char> = hex.chars().collect();
        let words = chars
            .rchunks(16)
            .map(|chunk| u64::from_str_radix(&chunk.iter().collect::<String>(), 16).ok())
            .collect::<Option<Vec<u64>>>()?;
        Some(ClassMask { words })
    }

    pub fn to_subset(&self, partition: &ClassPartition) -> Subset {
        partition.union_of(|i| self.contains(i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CcMode {
    Exhaustive,
    Sampled,
}

impl CcMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CcMode::Exhaustive => "exhaustive",
            CcMode::Sampled => "sampled",
        }
    }
}

/// A way of choosing which unions of power classes to test.
pub trait CcSubsetSource: Send + Sync {
    fn mode(&self) -> CcMode;
    /// Masks over `classes` power classes; never yields the empty mask.
    fn masks(&self, classes: usize) -> Box<dyn Iterator<Item = ClassMask>>;
}

/// Every non-empty union, once each, in Gray-code order.
pub struct Exhaustive;

impl CcSubsetSource for Exhaustive {
    fn mode(&self) -> CcMode {
        CcMode::Exhaustive
    }

    fn masks(&self, classes: usize) -> Box<dyn Iterator<Item = ClassMask>> {
        assert!(classes <= MAX_EXHAUSTIVE_CLASSES, "{classes} classes is too many to enumerate");
        Box::new((1u64..1 << classes).map(|i| ClassMask::from_bits(i ^ (i >> 1))))
    }
}

/// Independent fair coin per class, seeded; empty draws are redrawn.
pub struct Sampled {
    pub count: usize,
    pub seed: u64,
}

impl CcSubsetSource for Sampled {
    fn mode(&self) -> CcMode {
        CcMode::Sampled
    }

    fn masks(&self, classes: usize) -> Box<dyn Iterator<Item = ClassMask>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let count = self.count;
        let tail = classes % 64;
        Box::new((0..count).map(move |_| loop {
            let mut m = ClassMask::empty(classes);
            let last = m.words.len() - 1;
            for (i, w) in m.words.iter_mut().enumerate() {
                *w = rng.next_u64();
                if i == last && tail != 0 {
                    *w &= (1 << tail) - 1;
                }
            }
            if classes == 0 || !m.is_empty() {
                break m;
            }
        }))
    }
}

/// Exhaustive when `classes <= class_limit` (and small enough to enumerate), else sampled.
pub fn select_source(classes: usize, class_limit: usize, samples: usize, seed: u64) -> Box<dyn CcSubsetSource> {
    if classes <= class_limit.min(MAX_EXHAUSTIVE_CLASSES) {
        Box::new(Exhaustive)
    } else {
        Box::new(Sampled { count: samples, seed })
    }
}

/// Stream of CC-subsets as element sets.
pub struct CcSubsets {
    partition: ClassPartition,
    masks: Box<dyn Iterator<Item = ClassMask>>,
}

impl Iterator for CcSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        self.masks.next().map(|m| m.to_subset(&self.partition))
    }
}

/// All `2^c - 1` CC-subsets, or `None` when `c > class_limit` (sampled mode).
pub fn enumerate_cc_subsets(g: &GroupTable, class_limit: usize) -> Option<CcSubsets> {
    let partition = power_classes(g);
    let c = partition.len();
    if c > class_limit.min(MAX_EXHAUSTIVE_CLASSES) {
        return None;
    }
    Some(CcSubsets { partition, masks: Exhaustive.masks(c) })
}

pub fn sample_cc_subsets(g: &GroupTable, count: usize, seed: u64) -> CcSubsets {
    let partition = power_classes(g);
    let c = partition.len();
    CcSubsets { partition, masks: Sampled { count, seed }.masks(c) }
}
