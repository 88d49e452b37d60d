//! Subsets of the ground set `X = {x0, .., x(m-1)}` encoded as bit-vectors.
//!
//! Bit `i` of a [`LabelVec`] is set iff `x_i` belongs to the subset, so the
//! symmetric difference of two subsets is a single XOR and the empty set is
//! the value `0`.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported ground size. Search keeps `2^m`-bit occupancy tables.
pub const MAX_GROUND_SIZE: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("ground size {0} exceeds the supported maximum of {MAX_GROUND_SIZE}")]
    GroundSizeTooLarge(u32),
    #[error("cannot parse label {0:?}")]
    Parse(String),
    #[error("label {value} is out of range for ground size m={m} (must be < {})", 1u64 << m)]
    OutOfRange { value: u64, m: u32 },
    #[error("unknown label style {0:?} (expected int, binary or set)")]
    UnknownStyle(String),
}

/// Number of elements `m` of the ground set; the label universe has `2^m` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GroundSize(u32);

impl GroundSize {
    pub fn new(m: u32) -> Result<Self, LabelError> {
        if m > MAX_GROUND_SIZE {
            return Err(LabelError::GroundSizeTooLarge(m));
        }
        Ok(GroundSize(m))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `|𝒳| = 2^m`.
    #[inline]
    pub fn universe(self) -> usize {
        1usize << self.0
    }

    /// Number of nonempty labels, `2^m - 1`.
    #[inline]
    pub fn nonempty(self) -> usize {
        self.universe() - 1
    }

    #[inline]
    pub fn contains(self, v: LabelVec) -> bool {
        (v.0 as u64) < (1u64 << self.0)
    }

    /// Iterates over every label of the universe in ascending order.
    pub fn labels(self) -> impl Iterator<Item = LabelVec> + Clone {
        (0..self.universe() as u32).map(LabelVec)
    }

    pub fn check(self, v: LabelVec) -> Result<LabelVec, LabelError> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(LabelError::OutOfRange { value: v.0 as u64, m: self.0 })
        }
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic vector of a subset of the ground set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelVec(pub u32);

impl LabelVec {
    pub const EMPTY: LabelVec = LabelVec(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Ground-set elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }
}

impl BitXor for LabelVec {
    type Output = LabelVec;

    #[inline]
    fn bitxor(self, rhs: LabelVec) -> LabelVec {
        LabelVec(self.0 ^ rhs.0)
    }
}

impl Serialize for LabelVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

/// Symmetric difference `a Δ b`.
#[inline]
pub fn sym_diff(a: LabelVec, b: LabelVec) -> LabelVec {
    a ^ b
}

/// Parses a decimal or `0b`-prefixed binary literal and checks it against `m`.
pub fn parse_label(text: &str, m: GroundSize) -> Result<LabelVec, LabelError> {
    let text = text.trim();
    let parsed = match text.strip_prefix("0b").or_else(|| text.strip_prefix("0B")) {
        Some(digits) => u64::from_str_radix(digits, 2),
        None => text.parse::<u64>(),
    };
    let value = parsed.map_err(|_| LabelError::Parse(text.to_string()))?;
    if value >= 1u64 << m.get() {
        return Err(LabelError::OutOfRange { value, m: m.get() });
    }
    Ok(LabelVec(value as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelStyle {
    #[default]
    Int,
    Binary,
    Set,
}

impl FromStr for LabelStyle {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(LabelStyle::Int),
            "binary" => Ok(LabelStyle::Binary),
            "set" | "set-notation" => Ok(LabelStyle::Set),
            other => Err(LabelError::UnknownStyle(other.to_string())),
        }
    }
}

pub fn format_label(v: LabelVec, m: GroundSize, style: LabelStyle) -> String {
    match style {
        LabelStyle::Int => v.0.to_string(),
        // m = 0 still renders one digit so the text stays a valid literal.
        LabelStyle::Binary => format!("{:0width$b}", v.0, width = m.get().max(1) as usize),
        LabelStyle::Set => {
            let items: Vec<String> = v.elements().map(|i| format!("x{i}")).collect();
            format!("{{{}}}", items.join(","))
        }
    }
}

/// Fixed-size bitset with one slot per label of a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    words: Vec<u64>,
    len: usize,
}

impl LabelSet {
    pub fn new(m: GroundSize) -> Self {
        let slots = m.universe();
        LabelSet { words: vec![0; slots.div_ceil(64)], len: 0 }
    }

    #[inline]
    pub fn contains(&self, v: LabelVec) -> bool {
        let i = v.index();
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Inserts `v`, returning `false` if it was already present.
    #[inline]
    pub fn insert(&mut self, v: LabelVec) -> bool {
        let i = v.index();
        let mask = 1u64 << (i & 63);
        let word = &mut self.words[i >> 6];
        if *word & mask != 0 {
            return false;
        }
        *word |= mask;
        self.len += 1;
        true
    }

    #[inline]
    pub fn remove(&mut self, v: LabelVec) {
        let i = v.index();
        let mask = 1u64 << (i & 63);
        let word = &mut self.words[i >> 6];
        if *word & mask != 0 {
            *word &= !mask;
            self.len -= 1;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gs(m: u32) -> GroundSize {
        GroundSize::new(m).unwrap()
    }

    #[test]
    fn sym_diff_examples() {
        assert_eq!(sym_diff(LabelVec(0b011), LabelVec(0b110)), LabelVec(0b101));
        assert_eq!(sym_diff(LabelVec(9), LabelVec(9)), LabelVec::EMPTY);
        assert_eq!(sym_diff(LabelVec(9), LabelVec::EMPTY), LabelVec(9));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_label("0b101", gs(3)), Ok(LabelVec(5)));
        assert_eq!(parse_label("3", gs(2)), Ok(LabelVec(3)));
        assert_eq!(parse_label("4", gs(2)), Err(LabelError::OutOfRange { value: 4, m: 2 }));
        assert!(parse_label("4", gs(2)).unwrap_err().to_string().contains("m=2"));
        assert!(matches!(parse_label("x", gs(2)), Err(LabelError::Parse(_))));
        assert!(matches!(parse_label("-1", gs(2)), Err(LabelError::Parse(_))));
        assert!(matches!(parse_label("0b", gs(2)), Err(LabelError::Parse(_))));
        assert_eq!(parse_label("0", gs(0)), Ok(LabelVec(0)));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_label(LabelVec(5), gs(3), LabelStyle::Binary), "101");
        assert_eq!(format_label(LabelVec(1), gs(4), LabelStyle::Binary), "0001");
        assert_eq!(format_label(LabelVec(0), gs(2), LabelStyle::Set), "{}");
        assert_eq!(format_label(LabelVec(5), gs(3), LabelStyle::Set), "{x0,x2}");
        assert_eq!(format_label(LabelVec(5), gs(3), LabelStyle::Int), "5");
    }

    #[test]
    fn ground_size_cap() {
        assert!(GroundSize::new(30).is_ok());
        assert_eq!(GroundSize::new(31), Err(LabelError::GroundSizeTooLarge(31)));
        assert_eq!(gs(4).universe(), 16);
        assert_eq!(gs(0).universe(), 1);
    }

    #[test]
    fn label_set_tracks_membership() {
        let mut s = LabelSet::new(gs(7));
        assert!(s.insert(LabelVec(100)));
        assert!(!s.insert(LabelVec(100)));
        assert!(s.contains(LabelVec(100)));
        assert_eq!(s.len(), 1);
        s.remove(LabelVec(100));
        assert!(!s.contains(LabelVec(100)));
        assert!(s.is_empty());
    }

    proptest! {
        #[test]
        fn xor_group_laws(a in 0u32..1 << 30, b in 0u32..1 << 30, c in 0u32..1 << 30) {
            let (a, b, c) = (LabelVec(a), LabelVec(b), LabelVec(c));
            prop_assert_eq!(sym_diff(a, b), sym_diff(b, a));
            prop_assert_eq!(sym_diff(sym_diff(a, b), c), sym_diff(a, sym_diff(b, c)));
            prop_assert_eq!(sym_diff(a, b).is_empty(), a == b);
        }

        #[test]
        fn parse_inverts_format(m in 0u32..=30, raw in any::<u32>(), binary in any::<bool>()) {
            let m = gs(m);
            let v = LabelVec(raw & (m.universe() as u32).wrapping_sub(1));
            let text = if binary {
                format!("0b{}", format_label(v, m, LabelStyle::Binary))
            } else {
                format_label(v, m, LabelStyle::Int)
            };
            prop_assert_eq!(parse_label(&text, m), Ok(v));
        }
    }
}
