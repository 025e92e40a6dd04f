//! The eight edge labels of two-step puzzles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An edge label. Labels `0`, `1`, `2` are simple; `3` through `7` are
/// composed and stand for parenthesized strings of simple labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Label(u8);

impl Label {
    pub const ZERO: Label = Label(0);
    pub const ONE: Label = Label(1);
    pub const TWO: Label = Label(2);

    /// All eight labels in increasing order.
    pub const ALL: [Label; 8] = [
        Label(0),
        Label(1),
        Label(2),
        Label(3),
        Label(4),
        Label(5),
        Label(6),
        Label(7),
    ];

    pub const SIMPLE: [Label; 3] = [Label(0), Label(1), Label(2)];

    pub fn new(value: u8) -> Result<Label, Error> {
        if value < 8 {
            Ok(Label(value))
        } else {
            Err(Error::InvalidLabel(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_simple(self) -> bool {
        self.0 < 3
    }

    pub fn is_composed(self) -> bool {
        !self.is_simple()
    }

    /// The parenthesized 012-string this label abbreviates.
    ///
    /// ```
    /// use twostep::Label;
    /// assert_eq!(Label::new(3).unwrap().expansion(), "10");
    /// assert_eq!(Label::new(7).unwrap().expansion(), "(21)0");
    /// ```
    pub fn expansion(self) -> &'static str {
        match self.0 {
            0 => "0",
            1 => "1",
            2 => "2",
            3 => "10",
            4 => "21",
            5 => "20",
            6 => "2(10)",
            _ => "(21)0",
        }
    }

    /// Label substitution used when dualizing a puzzle:
    /// `0 <-> 2`, `3 <-> 4`, `6 <-> 7`, with `1` and `5` fixed.
    pub fn dual(self) -> Label {
        Label(match self.0 {
            0 => 2,
            2 => 0,
            3 => 4,
            4 => 3,
            6 => 7,
            7 => 6,
            other => other,
        })
    }

    pub fn from_digit(c: char) -> Result<Label, Error> {
        match c.to_digit(10) {
            Some(d) if d < 8 => Ok(Label(d as u8)),
            _ => Err(Error::Parse(format!("not a puzzle label: {c:?}"))),
        }
    }
}

impl TryFrom<u8> for Label {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Label::new(value)
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(Label::ZERO.expansion(), "0");
        assert_eq!(Label(3).expansion(), "10");
        assert_eq!(Label(4).expansion(), "21");
        assert_eq!(Label(5).expansion(), "20");
        assert_eq!(Label(6).expansion(), "2(10)");
        assert_eq!(Label(7).expansion(), "(21)0");
    }

    #[test]
    fn dual_table() {
        assert_eq!(Label::ONE.dual(), Label::ONE);
        assert_eq!(Label(3).dual(), Label(4));
        assert_eq!(Label(5).dual(), Label(5));
        for l in Label::ALL {
            assert_eq!(l.dual().dual(), l);
            assert_eq!(l.dual().is_simple(), l.is_simple());
        }
    }

    #[test]
    fn classification() {
        assert!(Label::SIMPLE.iter().all(|l| l.is_simple()));
        assert_eq!(Label::ALL.iter().filter(|l| l.is_composed()).count(), 5);
        assert!(Label::new(8).is_err());
    }
}
