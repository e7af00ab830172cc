//! Discrete groups with exact element arithmetic and their finitely
//! supported complex group algebras.

mod element;
mod word;

pub use element::GroupAlgebraElement;
pub use word::{Letter, Word};

use serde_json::Value;
use std::fmt;
use std::sync::Arc;

use crate::descriptor::GroupDescriptor;
use crate::finite_group::FiniteGroup;
use crate::{Error, Result};

/// Heisenberg elements are triples `(n, m, l)` standing for the matrix
/// `[[1, n, l], [0, 1, m], [0, 0, 1]]`.
pub const HEIS_G: [i64; 3] = [1, 0, 0];
pub const HEIS_H: [i64; 3] = [0, 1, 0];
/// The central generator, `z = g h g⁻¹ h⁻¹`.
pub const HEIS_Z: [i64; 3] = [0, 0, 1];

#[derive(Clone, Debug)]
pub enum DiscreteGroup {
    /// `ℤᵈ`.
    Lattice(usize),
    /// The integer Heisenberg group `H₃(ℤ)`.
    Heisenberg,
    /// The free group on `g1`, `g2`.
    Free2,
    Finite(Arc<FiniteGroup>),
}

impl PartialEq for DiscreteGroup {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (DiscreteGroup::Lattice(a), DiscreteGroup::Lattice(b)) => a == b,
            (DiscreteGroup::Heisenberg, DiscreteGroup::Heisenberg) => true,
            (DiscreteGroup::Free2, DiscreteGroup::Free2) => true,
            (DiscreteGroup::Finite(a), DiscreteGroup::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Lattice(Vec<i64>),
    Heisenberg([i64; 3]),
    Word(Word),
    Finite(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Lattice(v) => write!(f, "{v:?}"),
            Element::Heisenberg(t) => write!(f, "{t:?}"),
            Element::Word(w) => write!(f, "\"{w}\""),
            Element::Finite(i) => write!(f, "#{i}"),
        }
    }
}

/// Heisenberg product `(n,m,l)·(n',m',l') = (n+n', m+m', l+l'+n·m')`.
pub fn heisenberg_mul(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]]
}

pub fn heisenberg_inv(a: [i64; 3]) -> [i64; 3] {
    [-a[0], -a[1], a[0] * a[1] - a[2]]
}

impl DiscreteGroup {
    pub fn finite_group(group: FiniteGroup) -> DiscreteGroup {
        DiscreteGroup::Finite(Arc::new(group))
    }

    pub fn finite(&self) -> Option<&Arc<FiniteGroup>> {
        match self {
            DiscreteGroup::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            DiscreteGroup::Lattice(d) => format!("Z^{d}"),
            DiscreteGroup::Heisenberg => "H3(Z)".into(),
            DiscreteGroup::Free2 => "F2".into(),
            DiscreteGroup::Finite(g) => g.label().to_string(),
        }
    }

    /// JSON descriptor; finite groups without a family (images, quotients)
    /// are described by label and order.
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            DiscreteGroup::Lattice(d) => GroupDescriptor::new("Z", &[*d as i64]),
            DiscreteGroup::Heisenberg => GroupDescriptor::new("heisenberg", &[]),
            DiscreteGroup::Free2 => GroupDescriptor::new("free2", &[]),
            DiscreteGroup::Finite(g) => match g.family() {
                Some(f) => f.into(),
                None => GroupDescriptor::new(&format!("finite:{}", g.label()), &[g.order() as i64]),
            },
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            DiscreteGroup::Lattice(d) => Element::Lattice(vec![0; *d]),
            DiscreteGroup::Heisenberg => Element::Heisenberg([0; 3]),
            DiscreteGroup::Free2 => Element::Word(Word::empty()),
            DiscreteGroup::Finite(g) => Element::Finite(g.identity()),
        }
    }

    /// Generators used for quotient maps and generator representations:
    /// unit vectors for `ℤᵈ`; `g, h, z` for Heisenberg; `g1, g2` for `F₂`;
    /// the stored generators of a finite group.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            DiscreteGroup::Lattice(d) => (0..*d)
                .map(|i| {
                    let mut v = vec![0; *d];
                    v[i] = 1;
                    Element::Lattice(v)
                })
                .collect(),
            DiscreteGroup::Heisenberg => vec![HEIS_G, HEIS_H, HEIS_Z].into_iter().map(Element::Heisenberg).collect(),
            DiscreteGroup::Free2 => vec![Element::Word(Word::letter(Letter::G1)), Element::Word(Word::letter(Letter::G2))],
            DiscreteGroup::Finite(g) => g.generators().iter().map(|&x| Element::Finite(x)).collect(),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (DiscreteGroup::Lattice(d), Element::Lattice(v)) => v.len() == *d,
            (DiscreteGroup::Heisenberg, Element::Heisenberg(_)) => true,
            (DiscreteGroup::Free2, Element::Word(w)) => w.is_reduced(),
            (DiscreteGroup::Finite(g), Element::Finite(i)) => *i < g.order(),
            _ => false,
        }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement(x.to_string()))
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (DiscreteGroup::Lattice(_), Element::Lattice(a), Element::Lattice(b)) => {
                Element::Lattice(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            (DiscreteGroup::Heisenberg, Element::Heisenberg(a), Element::Heisenberg(b)) => {
                Element::Heisenberg(heisenberg_mul(*a, *b))
            }
            (DiscreteGroup::Free2, Element::Word(a), Element::Word(b)) => Element::Word(a.concat(b)),
            (DiscreteGroup::Finite(g), Element::Finite(a), Element::Finite(b)) => Element::Finite(g.mul(*a, *b)),
            _ => panic!("mul: elements {x} and {y} do not belong to {}", self.label()),
        }
    }

    pub fn inv(&self, x: &Element) -> Element {
        match (self, x) {
            (DiscreteGroup::Lattice(_), Element::Lattice(a)) => Element::Lattice(a.iter().map(|p| -p).collect()),
            (DiscreteGroup::Heisenberg, Element::Heisenberg(a)) => Element::Heisenberg(heisenberg_inv(*a)),
            (DiscreteGroup::Free2, Element::Word(w)) => Element::Word(w.inverse()),
            (DiscreteGroup::Finite(g), Element::Finite(a)) => Element::Finite(g.inv(*a)),
            _ => panic!("inv: element {x} does not belong to {}", self.label()),
        }
    }

    /// Parses an element literal: integer array for `ℤᵈ`, `[n, m, l]` for
    /// Heisenberg, a word such as `"g1 g2 -g1"` for `F₂`, an index for finite
    /// groups. Words are freely reduced.
    pub fn parse_element(&self, v: &Value) -> Result<Element> {
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array()
                .ok_or_else(|| Error::Parse(format!("expected an integer array, got {v}")))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("expected an integer, got {x}"))))
                .collect()
        };
        let el = match self {
            DiscreteGroup::Lattice(_) => Element::Lattice(ints(v)?),
            DiscreteGroup::Heisenberg => {
                let t = ints(v)?;
                let t: [i64; 3] = t.try_into().map_err(|_| Error::Parse("Heisenberg literal needs 3 integers".into()))?;
                Element::Heisenberg(t)
            }
            DiscreteGroup::Free2 => {
                let s = v.as_str().ok_or_else(|| Error::Parse(format!("expected a word string, got {v}")))?;
                Element::Word(s.parse::<Word>()?.reduced())
            }
            DiscreteGroup::Finite(_) => {
                let i = v.as_u64().ok_or_else(|| Error::Parse(format!("expected an element index, got {v}")))?;
                Element::Finite(i as usize)
            }
        };
        self.check(&el)?;
        Ok(el)
    }

    pub fn element_json(&self, x: &Element) -> Value {
        match x {
            Element::Lattice(v) => Value::from(v.clone()),
            Element::Heisenberg(t) => Value::from(t.to_vec()),
            Element::Word(w) => Value::from(w.to_string()),
            Element::Finite(i) => Value::from(*i),
        }
    }
}
