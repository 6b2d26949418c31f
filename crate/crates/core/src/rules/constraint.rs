use std::fmt;
use std::str::FromStr;

use crate::cgt::OutcomeClass;

/// A nonempty set of outcome classes a board may still have.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeConstraint(u8);

const fn bit(c: OutcomeClass) -> u8 {
    match c {
        OutcomeClass::V => 1,
        OutcomeClass::H => 2,
        OutcomeClass::First => 4,
        OutcomeClass::Second => 8,
    }
}

impl OutcomeConstraint {
    /// Nothing known.
    pub const FULL: Self = Self(15);
    pub const V: Self = Self(bit(OutcomeClass::V));
    pub const H: Self = Self(bit(OutcomeClass::H));
    pub const FIRST: Self = Self(bit(OutcomeClass::First));
    pub const SECOND: Self = Self(bit(OutcomeClass::Second));

    pub fn only(c: OutcomeClass) -> Self {
        Self(bit(c))
    }

    /// The set of the given classes, or `None` if there are none.
    pub fn of(classes: &[OutcomeClass]) -> Option<Self> {
        let bits = classes.iter().fold(0, |acc, &c| acc | bit(c));
        (bits != 0).then_some(Self(bits))
    }

    pub fn contains(self, c: OutcomeClass) -> bool {
        self.0 & bit(c) != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_full(self) -> bool {
        self == Self::FULL
    }

    /// Intersection, or `None` when nothing is left.
    pub fn meet(self, other: Self) -> Option<Self> {
        let bits = self.0 & other.0;
        (bits != 0).then_some(Self(bits))
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    /// The single class, if the constraint pins one down.
    pub fn exact(self) -> Option<OutcomeClass> {
        let mut it = self.classes();
        match (it.next(), it.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn classes(self) -> impl Iterator<Item = OutcomeClass> {
        OutcomeClass::ALL.into_iter().filter(move |&c| self.contains(c))
    }

    /// The constraint on the transposed board.
    pub fn swap_players(self) -> Self {
        Self(self.classes().fold(0, |acc, c| acc | bit(c.swap_players())))
    }

    /// Table code: `H`, `1H`, `-V`, ...; empty for the full set.
    pub fn code(self) -> String {
        const ORDER: [OutcomeClass; 4] = [
            OutcomeClass::First,
            OutcomeClass::Second,
            OutcomeClass::H,
            OutcomeClass::V,
        ];
        match self.len() {
            4 => String::new(),
            3 => {
                let missing = ORDER.into_iter().find(|&c| !self.contains(c)).unwrap();
                format!("-{}", missing.symbol())
            }
            _ => ORDER
                .into_iter()
                .filter(|&c| self.contains(c))
                .map(|c| c.symbol())
                .collect(),
        }
    }

    /// The codes a facts file may use.
    pub const FILE_CODES: [&'static str; 10] = ["V", "H", "1", "2", "1H", "1V", "12", "2H", "-V", "-H"];
}

impl Default for OutcomeConstraint {
    fn default() -> Self {
        Self::FULL
    }
}

impl fmt::Debug for OutcomeConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.code();
        if code.is_empty() {
            f.write_str("{any}")
        } else {
            write!(f, "{{{code}}}")
        }
    }
}

impl fmt::Display for OutcomeConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad outcome code {0:?}")]
pub struct BadCode(pub String);

impl FromStr for OutcomeConstraint {
    type Err = BadCode;

    /// Accepts single classes, sets written as concatenated symbols
    /// (`1H`, `2V`), and complements (`-V`).
    fn from_str(s: &str) -> Result<Self, BadCode> {
        let bad = || BadCode(s.to_string());
        let t = s.trim();
        let (negated, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if body.is_empty() || (negated && body.chars().count() != 1) {
            return Err(bad());
        }
        let mut bits = 0u8;
        for ch in body.chars() {
            let c: OutcomeClass = ch.to_string().parse().map_err(|_| bad())?;
            if bits & bit(c) != 0 {
                return Err(bad());
            }
            bits |= bit(c);
        }
        if negated {
            bits = 15 & !bits;
        }
        Ok(Self(bits))
    }
}
