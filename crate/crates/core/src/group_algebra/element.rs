use num_complex::Complex64;
use serde_json::{json, Value};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{DiscreteGroup, Element};
use crate::descriptor::GroupDescriptor;
use crate::{Error, Result};

/// A finitely supported function `G → ℂ`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    group: DiscreteGroup,
    terms: BTreeMap<Element, Complex64>,
}

impl GroupAlgebraElement {
    pub fn zero(group: DiscreteGroup) -> Self {
        GroupAlgebraElement { group, terms: BTreeMap::new() }
    }

    /// The point mass `δ_g`.
    pub fn delta(group: DiscreteGroup, g: Element) -> Result<Self> {
        Self::from_terms(group, [(g, Complex64::new(1.0, 0.0))])
    }

    pub fn identity(group: DiscreteGroup) -> Self {
        let e = group.identity();
        Self::delta(group, e).expect("identity belongs to its group")
    }

    /// Sums repeated elements and drops zero coefficients. Free-group words
    /// are reduced first.
    pub fn from_terms(group: DiscreteGroup, terms: impl IntoIterator<Item = (Element, Complex64)>) -> Result<Self> {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            let g = match g {
                Element::Word(w) => Element::Word(w.reduced()),
                other => other,
            };
            out.group.check(&g)?;
            out.add_term(g, c);
        }
        Ok(out)
    }

    /// Builds from terms already known to belong to `group`.
    pub(crate) fn from_terms_unchecked(group: DiscreteGroup, terms: impl IntoIterator<Item = (Element, Complex64)>) -> Self {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    fn add_term(&mut self, g: Element, c: Complex64) {
        match self.terms.entry(g) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == Complex64::new(0.0, 0.0) {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if c != Complex64::new(0.0, 0.0) {
                    v.insert(c);
                }
            }
        }
    }

    pub fn group(&self) -> &DiscreteGroup {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Element) -> Complex64 {
        self.terms.get(g).copied().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Element> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(index, coefficient)` pairs; only for finite groups.
    pub fn finite_terms(&self) -> Result<Vec<(usize, Complex64)>> {
        self.terms
            .iter()
            .map(|(g, c)| match g {
                Element::Finite(i) => Ok((*i, *c)),
                _ => Err(Error::UnsupportedGroup(format!("{} is not finite", self.group.label()))),
            })
            .collect()
    }

    /// `(a∗b)(x) = Σ_g a(g)·b(g⁻¹x)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(self.group.clone());
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(self.group.mul(g, h), a * b);
            }
        }
        Ok(out)
    }

    /// `a*(g) = conj(a(g⁻¹))`.
    pub fn involution(&self) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (self.group.inv(g), c.conj()));
        Self::from_terms_unchecked(self.group.clone(), terms)
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Norm of the coefficient vector in `ℓ²(G)`.
    pub fn l2_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, t: Complex64) -> Self {
        Self::from_terms_unchecked(self.group.clone(), self.terms.iter().map(|(g, c)| (g.clone(), c * t)))
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.terms.values().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// `{"group": descriptor, "terms": [{"g": literal, "c": [re, im]}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, c)| json!({"g": self.group.element_json(g), "c": [c.re, c.im]}))
            .collect();
        json!({"group": self.group.descriptor(), "terms": terms})
    }

    pub fn from_json(v: &Value, order_cap: usize) -> Result<Self> {
        let desc: GroupDescriptor = serde_json::from_value(
            v.get("group").cloned().ok_or_else(|| Error::Parse("missing `group`".into()))?,
        )
        .map_err(|e| Error::Parse(format!("group descriptor: {e}")))?;
        let group = desc.to_group(order_cap)?;
        Self::from_json_in(v, group)
    }

    /// Parses the `terms` of an element literal inside a known group.
    pub fn from_json_in(v: &Value, group: DiscreteGroup) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `terms` array".into()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let g = group.parse_element(t.get("g").ok_or_else(|| Error::Parse("term without `g`".into()))?)?;
            let c = t
                .get("c")
                .and_then(Value::as_array)
                .filter(|c| c.len() == 2)
                .and_then(|c| Some(Complex64::new(c[0].as_f64()?, c[1].as_f64()?)))
                .ok_or_else(|| Error::Parse("term coefficient must be [re, im]".into()))?;
            parsed.push((g, c));
        }
        Self::from_terms(group, parsed)
    }

    pub fn from_json_str(s: &str, order_cap: usize) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v, order_cap)
    }
}
