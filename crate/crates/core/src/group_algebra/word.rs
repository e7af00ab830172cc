use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A generator of `F₂` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    G1,
    G1Inv,
    G2,
    G2Inv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::G1, Letter::G1Inv, Letter::G2, Letter::G2Inv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::G1 => Letter::G1Inv,
            Letter::G1Inv => Letter::G1,
            Letter::G2 => Letter::G2Inv,
            Letter::G2Inv => Letter::G2,
        }
    }

    /// Generator index (0 or 1) and sign.
    pub fn generator(self) -> (usize, bool) {
        match self {
            Letter::G1 => (0, true),
            Letter::G1Inv => (0, false),
            Letter::G2 => (1, true),
            Letter::G2Inv => (1, false),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::G1 => "g1",
            Letter::G1Inv => "-g1",
            Letter::G2 => "g2",
            Letter::G2Inv => "-g2",
        })
    }
}

/// A word in `g1, g2` and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Reduced product.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| match tok {
                "g1" => Ok(Letter::G1),
                "-g1" => Ok(Letter::G1Inv),
                "g2" => Ok(Letter::G2),
                "-g2" => Ok(Letter::G2Inv),
                _ => Err(Error::Parse(format!("unknown letter `{tok}` (expected g1, -g1, g2, -g2)"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
