//! Finite quotients `G → G/N` of the supported groups.
//!
//! The set of all finite quotients is never enumerated. `ℤᵈ` and the
//! Heisenberg group use their congruence chains (reduction mod `n`), which
//! are cofinal; `F₂` uses a fixed catalog of surjections onto small groups;
//! a finite group uses quotients by normal subgroups.

use serde_json::{json, Value};
use std::sync::Arc;

use crate::descriptor::GroupDescriptor;
use crate::finite_group::{direct_product, heisenberg_mod_index, FiniteFamily, FiniteGroup};
use crate::group_algebra::{DiscreteGroup, Element, GroupAlgebraElement, Letter};
use crate::tolerances::Config;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum QuotientKind {
    /// `ℤᵈ` reduced coordinatewise modulo `moduli`.
    Modular { moduli: Vec<u64> },
    /// `H₃(ℤ) → H₃(ℤ/n)`, kernel the matrices congruent to 1 mod `n`.
    HeisenbergMod { modulus: u64 },
    /// Determined by the target images of the source generators.
    Generated { images: Vec<usize> },
    /// A finite group modulo a normal subgroup.
    Normal { kernel: Vec<usize>, coset_of: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    source: DiscreteGroup,
    target: Arc<FiniteGroup>,
    kind: QuotientKind,
    /// One preimage for every target element.
    section: Vec<Element>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_cap(order: Option<usize>, cap: usize) -> Result<usize> {
    match order {
        Some(o) if o <= cap => Ok(o),
        Some(o) => Err(Error::OrderCap { order: o, cap }),
        None => Err(Error::OrderCap { order: usize::MAX, cap }),
    }
}

impl FiniteQuotient {
    /// `ℤᵈ → ∏ ℤ/mᵢ`.
    pub fn modular(moduli: Vec<u64>, cap: usize) -> Result<FiniteQuotient> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::InvalidParams("moduli must be positive and nonempty".into()));
        }
        let family = if moduli.len() == 1 {
            FiniteFamily::Cyclic(moduli[0] as usize)
        } else {
            FiniteFamily::DirectProduct(moduli.iter().map(|&m| FiniteFamily::Cyclic(m as usize)).collect())
        };
        check_cap(family.order(), cap)?;
        let target = Arc::new(FiniteGroup::build_with_cap(&family, cap)?);
        let section = (0..target.order())
            .map(|mut x| {
                let mut v = vec![0i64; moduli.len()];
                for i in (0..moduli.len()).rev() {
                    v[i] = (x as u64 % moduli[i]) as i64;
                    x /= moduli[i] as usize;
                }
                Element::Lattice(v)
            })
            .collect();
        Ok(FiniteQuotient { source: DiscreteGroup::Lattice(moduli.len()), target, kind: QuotientKind::Modular { moduli }, section })
    }

    /// `H₃(ℤ) → H₃(ℤ/n)`.
    pub fn heisenberg_mod(n: u64, cap: usize) -> Result<FiniteQuotient> {
        if n == 0 {
            return Err(Error::InvalidParams("modulus must be positive".into()));
        }
        let family = FiniteFamily::HeisenbergMod(n as usize);
        check_cap(family.order(), cap)?;
        let target = Arc::new(FiniteGroup::build_with_cap(&family, cap)?);
        let n_us = n as usize;
        let section = (0..target.order())
            .map(|x| Element::Heisenberg([(x / (n_us * n_us)) as i64, ((x / n_us) % n_us) as i64, (x % n_us) as i64]))
            .collect();
        Ok(FiniteQuotient { source: DiscreteGroup::Heisenberg, target, kind: QuotientKind::HeisenbergMod { modulus: n }, section })
    }

    /// The quotient onto the subgroup of `ambient` generated by the images
    /// of the source generators (listed in [`DiscreteGroup::generators`]
    /// order). Fails if the images violate a defining relation of the source.
    pub fn from_generator_images(source: DiscreteGroup, ambient: &FiniteGroup, images: &[usize]) -> Result<FiniteQuotient> {
        let gens = source.generators();
        if images.len() != gens.len() || images.iter().any(|&i| i >= ambient.order()) {
            return Err(Error::InvalidParams(format!(
                "{} needs {} generator images inside a group of order {}",
                source.label(),
                gens.len(),
                ambient.order()
            )));
        }
        let (target, local) = if ambient.closure(images).len() == ambient.order() {
            (ambient.clone(), images.to_vec())
        } else {
            let label = format!("image in {}", ambient.label());
            let (sub, embed) = ambient.generated_subgroup(images, label);
            let mut pos = vec![usize::MAX; ambient.order()];
            for (i, &x) in embed.iter().enumerate() {
                pos[x] = i;
            }
            (sub, images.iter().map(|&x| pos[x]).collect())
        };
        let t = &target;
        let relations_hold = match &source {
            DiscreteGroup::Lattice(_) => local.iter().all(|&a| local.iter().all(|&b| t.mul(a, b) == t.mul(b, a))),
            DiscreteGroup::Heisenberg => {
                let (g, h, z) = (local[0], local[1], local[2]);
                t.mul(g, h) == t.mul(z, t.mul(h, g)) && t.mul(z, g) == t.mul(g, z) && t.mul(z, h) == t.mul(h, z)
            }
            DiscreteGroup::Free2 => true,
            DiscreteGroup::Finite(src) => {
                let phi: Vec<usize> = src.words().iter().map(|w| w.iter().fold(t.identity(), |acc, &i| t.mul(acc, local[i]))).collect();
                (0..src.order()).all(|x| (0..src.order()).all(|y| phi[src.mul(x, y)] == t.mul(phi[x], phi[y])))
            }
        };
        if !relations_hold {
            return Err(Error::InvalidParams("generator images do not define a homomorphism".into()));
        }
        // breadth-first section, tracking a source preimage of each element
        let mut section: Vec<Option<Element>> = vec![None; t.order()];
        section[t.identity()] = Some(source.identity());
        let mut queue = std::collections::VecDeque::from([t.identity()]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in local.iter().enumerate() {
                let y = t.mul(x, s);
                if section[y].is_none() {
                    section[y] = Some(source.mul(section[x].as_ref().unwrap(), &gens[i]));
                    queue.push_back(y);
                }
            }
        }
        let section = section.into_iter().map(|s| s.expect("generated subgroup is reached")).collect();
        Ok(FiniteQuotient { source, target: Arc::new(target), kind: QuotientKind::Generated { images: local }, section })
    }

    /// `F → F/N` for a normal subgroup `N` given by its elements.
    pub fn by_normal_subgroup(source: Arc<FiniteGroup>, kernel: &[usize]) -> Result<FiniteQuotient> {
        let mut kernel = kernel.to_vec();
        kernel.sort_unstable();
        kernel.dedup();
        let (target, coset_of) = source.quotient_by(&kernel)?;
        let mut section = vec![Element::Finite(0); target.order()];
        for x in (0..source.order()).rev() {
            section[coset_of[x]] = Element::Finite(x);
        }
        Ok(FiniteQuotient {
            source: DiscreteGroup::Finite(source),
            target: Arc::new(target),
            kind: QuotientKind::Normal { kernel, coset_of },
            section,
        })
    }

    /// The quotient onto the trivial group.
    pub fn trivial(source: &DiscreteGroup) -> FiniteQuotient {
        match source {
            DiscreteGroup::Lattice(d) => FiniteQuotient::modular(vec![1; *d], 1).expect("trivial"),
            DiscreteGroup::Heisenberg => FiniteQuotient::heisenberg_mod(1, 1).expect("trivial"),
            DiscreteGroup::Finite(f) => {
                FiniteQuotient::by_normal_subgroup(f.clone(), &(0..f.order()).collect::<Vec<_>>()).expect("trivial")
            }
            DiscreteGroup::Free2 => {
                FiniteQuotient::from_generator_images(source.clone(), &FiniteGroup::trivial(), &[0, 0]).expect("trivial")
            }
        }
    }

    pub fn source(&self) -> &DiscreteGroup {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn target_group(&self) -> DiscreteGroup {
        DiscreteGroup::Finite(self.target.clone())
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.target.order()
    }

    /// A preimage of target element `x`.
    pub fn lift(&self, x: usize) -> &Element {
        &self.section[x]
    }

    /// The quotient map. Panics if `g` is not an element of the source group.
    pub fn apply(&self, g: &Element) -> usize {
        assert!(self.source.contains(g), "{g} is not an element of {}", self.source.label());
        let t = &self.target;
        match (&self.kind, g) {
            (QuotientKind::Modular { moduli }, Element::Lattice(v)) => {
                v.iter().zip(moduli).fold(0usize, |acc, (&x, &m)| acc * m as usize + x.rem_euclid(m as i64) as usize)
            }
            (QuotientKind::HeisenbergMod { modulus }, Element::Heisenberg(e)) => heisenberg_mod_index(*modulus as usize, *e),
            (QuotientKind::Normal { coset_of, .. }, Element::Finite(x)) => coset_of[*x],
            (QuotientKind::Generated { images }, _) => match g {
                Element::Lattice(v) => v.iter().zip(images).fold(t.identity(), |acc, (&e, &s)| t.mul(acc, t.pow(s, e))),
                Element::Heisenberg([n, m, l]) => {
                    // (n, m, l) = z^l h^m g^n
                    let (gi, hi, zi) = (images[0], images[1], images[2]);
                    t.mul(t.pow(zi, *l), t.mul(t.pow(hi, *m), t.pow(gi, *n)))
                }
                Element::Word(w) => w.letters().iter().fold(t.identity(), |acc, &l| {
                    let (i, pos) = l.generator();
                    t.mul(acc, if pos { images[i] } else { t.inv(images[i]) })
                }),
                Element::Finite(x) => {
                    let DiscreteGroup::Finite(src) = &self.source else { unreachable!() };
                    src.words()[*x].iter().fold(t.identity(), |acc, &i| t.mul(acc, images[i]))
                }
            },
            _ => unreachable!("quotient kind does not match source element"),
        }
    }

    /// Images of the source generators.
    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().iter().map(|g| self.apply(g)).collect()
    }

    /// Whether `apply` is injective on `set`.
    pub fn is_injective_on(&self, set: &[Element]) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(set.len());
        let mut distinct = set.to_vec();
        distinct.sort();
        distinct.dedup();
        distinct.iter().all(|g| seen.insert(self.apply(g)))
    }

    /// Homomorphism check on all pairs of generators (with inverses) and on
    /// the given extra pairs.
    pub fn verify_homomorphism(&self, extra: &[(Element, Element)]) -> bool {
        let mut gens = self.source.generators();
        gens.extend(self.source.generators().iter().map(|g| self.source.inv(g)).collect::<Vec<_>>());
        gens.push(self.source.identity());
        let t = &self.target;
        let check = |x: &Element, y: &Element| self.apply(&self.source.mul(x, y)) == t.mul(self.apply(x), self.apply(y));
        gens.iter().all(|x| gens.iter().all(|y| check(x, y))) && extra.iter().all(|(x, y)| check(x, y))
            && self.apply(&self.source.identity()) == t.identity()
    }

    /// The generator images generate the whole target.
    pub fn verify_surjective(&self) -> bool {
        self.target.closure(&self.generator_images()).len() == self.target.order()
    }

    /// All source elements mapping to the identity; finite sources only.
    pub fn kernel(&self) -> Option<Vec<usize>> {
        let DiscreteGroup::Finite(src) = &self.source else { return None };
        Some((0..src.order()).filter(|&x| self.apply(&Element::Finite(x)) == self.target.identity()).collect())
    }

    /// `κ(a)(x) = Σ_{ρ(g) = x} a(g)`.
    pub fn kappa(&self, a: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        if a.group() != &self.source {
            return Err(Error::GroupMismatch);
        }
        let terms = a.terms().map(|(g, c)| (Element::Finite(self.apply(g)), *c));
        Ok(GroupAlgebraElement::from_terms_unchecked(self.target_group(), terms))
    }

    /// `{"group": ..., "kind": ..., "params": ...}`.
    pub fn to_json(&self) -> Value {
        let (kind, params) = match &self.kind {
            QuotientKind::Modular { moduli } => ("mod", json!(moduli)),
            QuotientKind::HeisenbergMod { modulus } => ("mod", json!([modulus])),
            QuotientKind::Generated { images } => {
                let target = match self.target.family() {
                    Some(f) => serde_json::to_value(GroupDescriptor::from(f)).unwrap(),
                    None => json!({"family": format!("finite:{}", self.target.label()), "params": [self.target.order()]}),
                };
                let kind = if self.source == DiscreteGroup::Free2 { "catalog" } else { "image" };
                (kind, json!({"target": target, "images": images}))
            }
            QuotientKind::Normal { kernel, .. } => ("normal", json!(kernel)),
        };
        json!({"group": self.source.descriptor(), "kind": kind, "params": params, "order": self.order()})
    }

    pub fn from_json(v: &Value, cap: usize) -> Result<FiniteQuotient> {
        let desc: GroupDescriptor = serde_json::from_value(
            v.get("group").cloned().ok_or_else(|| Error::Parse("quotient needs `group`".into()))?,
        )
        .map_err(|e| Error::Parse(format!("group descriptor: {e}")))?;
        let group = desc.to_group(cap)?;
        Self::from_json_in(v, &group, cap)
    }

    /// Parses a quotient descriptor for a known source group; the `group`
    /// field, if present, is ignored.
    pub fn from_json_in(v: &Value, group: &DiscreteGroup, cap: usize) -> Result<FiniteQuotient> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("quotient needs `kind`".into()))?;
        let params = v.get("params").cloned().unwrap_or(Value::Null);
        let ints = |p: &Value| -> Result<Vec<u64>> {
            p.as_array()
                .ok_or_else(|| Error::Parse("`params` must be an array".into()))?
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("bad parameter {x}"))))
                .collect()
        };
        match (kind, group) {
            ("mod", DiscreteGroup::Lattice(d)) => {
                let mut m = ints(&params)?;
                if m.len() == 1 && *d > 1 {
                    m = vec![m[0]; *d];
                }
                if m.len() != *d {
                    return Err(Error::Parse(format!("Z^{d} needs {d} moduli")));
                }
                FiniteQuotient::modular(m, cap)
            }
            ("mod", DiscreteGroup::Heisenberg) => {
                let m = ints(&params)?;
                let [n] = m[..] else { return Err(Error::Parse("Heisenberg quotient needs one modulus".into())) };
                FiniteQuotient::heisenberg_mod(n, cap)
            }
            ("catalog" | "image", _) if !matches!(group, DiscreteGroup::Finite(_)) || kind == "image" => {
                let target: GroupDescriptor = serde_json::from_value(params.get("target").cloned().unwrap_or(Value::Null))
                    .map_err(|e| Error::Parse(format!("catalog target: {e}")))?;
                let ambient = FiniteGroup::build_with_cap(&target.finite_family()?, cap)?;
                let images: Vec<usize> = ints(params.get("images").unwrap_or(&Value::Null))?.into_iter().map(|x| x as usize).collect();
                FiniteQuotient::from_generator_images(group.clone(), &ambient, &images)
            }
            ("normal", DiscreteGroup::Finite(f)) => {
                let kernel: Vec<usize> = ints(&params)?.into_iter().map(|x| x as usize).collect();
                FiniteQuotient::by_normal_subgroup(f.clone(), &kernel)
            }
            _ => Err(Error::Parse(format!("quotient kind `{kind}` is not available for {}", group.label()))),
        }
    }
}

/// A common refinement of two quotients: its kernel lies in both kernels.
pub fn refine(q1: &FiniteQuotient, q2: &FiniteQuotient, cap: usize) -> Result<FiniteQuotient> {
    if q1.source != q2.source {
        return Err(Error::GroupMismatch);
    }
    match (&q1.kind, &q2.kind) {
        (QuotientKind::Modular { moduli: a }, QuotientKind::Modular { moduli: b }) => {
            FiniteQuotient::modular(a.iter().zip(b).map(|(&x, &y)| lcm(x, y)).collect(), cap)
        }
        (QuotientKind::HeisenbergMod { modulus: a }, QuotientKind::HeisenbergMod { modulus: b }) => {
            FiniteQuotient::heisenberg_mod(lcm(*a, *b), cap)
        }
        _ => match &q1.source {
            DiscreteGroup::Finite(f) => {
                let (k1, k2) = (q1.kernel().unwrap(), q2.kernel().unwrap());
                let both: Vec<usize> = k1.into_iter().filter(|x| k2.binary_search(x).is_ok()).collect();
                FiniteQuotient::by_normal_subgroup(f.clone(), &both)
            }
            _ => {
                // image of the pair map into target₁ × target₂
                check_cap(q1.order().checked_mul(q2.order()), cap.saturating_mul(cap))?;
                let ambient = direct_product(&q1.target, &q2.target);
                let n2 = q2.order();
                let images: Vec<usize> =
                    q1.generator_images().into_iter().zip(q2.generator_images()).map(|(a, b)| a * n2 + b).collect();
                let q = FiniteQuotient::from_generator_images(q1.source.clone(), &ambient, &images)?;
                check_cap(Some(q.order()), cap)?;
                Ok(q)
            }
        },
    }
}

/// The surjection `fine.target → coarse.target` commuting with both
/// quotient maps. Fails with [`Error::NotRefinement`] when the kernel of
/// `fine` is not contained in the kernel of `coarse`.
pub fn connecting_map(fine: &FiniteQuotient, coarse: &FiniteQuotient) -> Result<Vec<usize>> {
    if fine.source != coarse.source {
        return Err(Error::GroupMismatch);
    }
    let phi: Vec<usize> = (0..fine.order()).map(|x| coarse.apply(fine.lift(x))).collect();
    let on_generators = fine.source.generators().iter().all(|g| phi[fine.apply(g)] == coarse.apply(g));
    let (ft, ct) = (&fine.target, &coarse.target);
    let homomorphism = on_generators && (0..ft.order()).all(|x| (0..ft.order()).all(|y| phi[ft.mul(x, y)] == ct.mul(phi[x], phi[y])));
    if homomorphism {
        Ok(phi)
    } else {
        Err(Error::NotRefinement(format!("order {} onto order {}", fine.order(), coarse.order())))
    }
}

/// Coefficient pushforward along a map of finite groups.
pub fn pushforward(a: &GroupAlgebraElement, map: &[usize], target: &Arc<FiniteGroup>) -> Result<GroupAlgebraElement> {
    let terms = a.finite_terms()?;
    if terms.iter().any(|&(x, _)| x >= map.len()) {
        return Err(Error::InvalidParams("element outside the domain of the map".into()));
    }
    Ok(GroupAlgebraElement::from_terms_unchecked(
        DiscreteGroup::Finite(target.clone()),
        terms.into_iter().map(|(x, c)| (Element::Finite(map[x]), c)),
    ))
}

/// Targets of the `F₂` catalog, ascending by order.
pub fn free2_catalog_targets() -> Vec<FiniteFamily> {
    let mut t: Vec<FiniteFamily> = (1..=12).map(FiniteFamily::Cyclic).collect();
    // symmetric(3) stands in for the isomorphic dihedral(3)
    t.push(FiniteFamily::Symmetric(3));
    t.extend((4..=8).map(FiniteFamily::Dihedral));
    t.push(FiniteFamily::Symmetric(4));
    t.push(FiniteFamily::HeisenbergMod(3));
    t.push(FiniteFamily::Symmetric(5));
    t.sort_by_key(|f| f.order().unwrap());
    t
}

/// Smallest quotient in the family's canonical chain (or catalog) that is
/// injective on `set`.
pub fn min_injective_quotient(group: &DiscreteGroup, set: &[Element], cfg: &Config) -> Result<FiniteQuotient> {
    if set.is_empty() {
        return Err(Error::InvalidParams("the set to separate is empty".into()));
    }
    for g in set {
        group.check(g)?;
    }
    let cap = cfg.order_cap;
    match group {
        DiscreteGroup::Lattice(d) => {
            let mut n = 1u64;
            while (n as usize).checked_pow(*d as u32).is_some_and(|o| o <= cap) {
                let residues: std::collections::HashSet<Vec<i64>> = set
                    .iter()
                    .map(|g| match g {
                        Element::Lattice(v) => v.iter().map(|x| x.rem_euclid(n as i64)).collect(),
                        _ => unreachable!(),
                    })
                    .collect();
                if residues.len() == distinct_count(set) {
                    return FiniteQuotient::modular(vec![n; *d], cap);
                }
                n += 1;
            }
            Err(Error::NotFound(format!("no uniform modulus with order <= {cap} separates the set")))
        }
        DiscreteGroup::Heisenberg => {
            let mut n = 1u64;
            while (n as usize).pow(3) <= cap {
                let residues: std::collections::HashSet<usize> = set
                    .iter()
                    .map(|g| match g {
                        Element::Heisenberg(e) => heisenberg_mod_index(n as usize, *e),
                        _ => unreachable!(),
                    })
                    .collect();
                if residues.len() == distinct_count(set) {
                    return FiniteQuotient::heisenberg_mod(n, cap);
                }
                n += 1;
            }
            Err(Error::NotFound(format!("no Heisenberg congruence quotient with order <= {cap} separates the set")))
        }
        DiscreteGroup::Free2 => {
            let words: Vec<&[Letter]> = set
                .iter()
                .map(|g| match g {
                    Element::Word(w) => w.letters(),
                    _ => unreachable!(),
                })
                .collect();
            let want = distinct_count(set);
            for family in free2_catalog_targets().into_iter().filter(|f| f.order().unwrap() <= cap) {
                let t = FiniteGroup::build_with_cap(&family, cap)?;
                let n = t.order();
                for a in 0..n {
                    for b in 0..n {
                        let eval = |w: &[Letter]| {
                            w.iter().fold(t.identity(), |acc, &l| {
                                let s = if l.generator().0 == 0 { a } else { b };
                                t.mul(acc, if l.generator().1 { s } else { t.inv(s) })
                            })
                        };
                        let images: std::collections::HashSet<usize> = words.iter().map(|w| eval(w)).collect();
                        if images.len() == want && t.closure(&[a, b]).len() == n {
                            return FiniteQuotient::from_generator_images(group.clone(), &t, &[a, b]);
                        }
                    }
                }
            }
            Err(Error::NotFound("no catalog quotient of F2 separates the set".into()))
        }
        DiscreteGroup::Finite(f) => {
            let mut kernels: Vec<Vec<usize>> = vec![(0..f.order()).collect()];
            for class in f.conjugacy_classes() {
                kernels.push(f.normal_closure(&class[..1]));
            }
            kernels.sort_by_key(|k| std::cmp::Reverse(k.len()));
            kernels.dedup();
            for k in kernels {
                let q = FiniteQuotient::by_normal_subgroup(f.clone(), &k)?;
                if q.is_injective_on(set) {
                    return Ok(q);
                }
            }
            unreachable!("the identity quotient is injective")
        }
    }
}

fn distinct_count(set: &[Element]) -> usize {
    let mut s = set.to_vec();
    s.sort();
    s.dedup();
    s.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{build_finite_group, permutation_index};
    use num_complex::Complex64;

    fn zq(m: u64) -> FiniteQuotient {
        FiniteQuotient::modular(vec![m], 5000).unwrap()
    }

    fn z(k: i64) -> Element {
        Element::Lattice(vec![k])
    }

    #[test]
    fn apply_examples() {
        assert_eq!(zq(3).apply(&z(5)), 2);
        assert_eq!(zq(3).apply(&z(-1)), 2);
        let q = FiniteQuotient::heisenberg_mod(2, 5000).unwrap();
        assert_eq!(q.apply(&Element::Heisenberg([1, 1, 1])), heisenberg_mod_index(2, [1, 1, 1]));
        assert_eq!(q.apply(&Element::Heisenberg([-1, 3, -5])), heisenberg_mod_index(2, [1, 1, 1]));
    }

    #[test]
    fn free_group_to_s3() {
        let s3 = build_finite_group(&FiniteFamily::Symmetric(3)).unwrap();
        let swap = permutation_index(&[1, 0, 2]);
        let cycle = permutation_index(&[1, 2, 0]);
        let q = FiniteQuotient::from_generator_images(DiscreteGroup::Free2, &s3, &[swap, cycle]).unwrap();
        assert_eq!(q.order(), 6);
        let w = DiscreteGroup::Free2.parse_element(&json!("g1 g2")).unwrap();
        // oracle: compose the permutations directly, (σ·τ)(i) = σ(τ(i))
        let (s, c) = ([1usize, 0, 2], [1usize, 2, 0]);
        let composed: Vec<usize> = (0..3).map(|i| s[c[i]]).collect();
        assert_eq!(q.apply(&w), s3.mul(swap, cycle));
        assert_eq!(q.apply(&w), permutation_index(&composed));
        assert!(q.verify_homomorphism(&[]));
        assert!(q.verify_surjective());
    }

    #[test]
    fn invalid_heisenberg_images_rejected() {
        let c4 = build_finite_group(&FiniteFamily::Cyclic(4)).unwrap();
        // abelian target forces z = 1, so z ↦ 1 (index 1) violates the relation
        assert!(FiniteQuotient::from_generator_images(DiscreteGroup::Heisenberg, &c4, &[1, 1, 1]).is_err());
        assert!(FiniteQuotient::from_generator_images(DiscreteGroup::Heisenberg, &c4, &[1, 1, 0]).is_ok());
    }

    #[test]
    fn refine_lattice_lcm() {
        let q = refine(&zq(4), &zq(6), 5000).unwrap();
        assert_eq!(q.kind(), &QuotientKind::Modular { moduli: vec![12] });
        for k in -24..=24 {
            if q.apply(&z(k)) == 0 {
                assert_eq!(zq(4).apply(&z(k)), 0);
                assert_eq!(zq(6).apply(&z(k)), 0);
            }
        }
        connecting_map(&q, &zq(4)).unwrap();
        connecting_map(&q, &zq(6)).unwrap();
        assert!(matches!(connecting_map(&zq(4), &zq(6)), Err(Error::NotRefinement(_))));
        assert_eq!(refine(&zq(5), &zq(5), 5000).unwrap().kind(), zq(5).kind());
    }

    #[test]
    fn refine_heisenberg() {
        let q2 = FiniteQuotient::heisenberg_mod(2, 5000).unwrap();
        let q3 = FiniteQuotient::heisenberg_mod(3, 5000).unwrap();
        let q = refine(&q2, &q3, 5000).unwrap();
        assert_eq!(q.order(), 216);
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -6..=6 {
                    let g = Element::Heisenberg([a, b, c]);
                    if q.apply(&g) == q.target().identity() {
                        assert_eq!(q2.apply(&g), q2.target().identity());
                        assert_eq!(q3.apply(&g), q3.target().identity());
                    }
                }
            }
        }
        assert!(connecting_map(&q, &q2).is_ok() && connecting_map(&q, &q3).is_ok());
        assert!(matches!(refine(&q, &q, 100), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn refine_free_group_catalog() {
        let s3 = build_finite_group(&FiniteFamily::Symmetric(3)).unwrap();
        let c2 = build_finite_group(&FiniteFamily::Cyclic(3)).unwrap();
        let q1 = FiniteQuotient::from_generator_images(DiscreteGroup::Free2, &s3, &[1, 3]).unwrap();
        let q2 = FiniteQuotient::from_generator_images(DiscreteGroup::Free2, &c2, &[1, 0]).unwrap();
        let q = refine(&q1, &q2, 5000).unwrap();
        let m1 = connecting_map(&q, &q1).unwrap();
        let m2 = connecting_map(&q, &q2).unwrap();
        for g in DiscreteGroup::Free2.generators() {
            assert_eq!(m1[q.apply(&g)], q1.apply(&g));
            assert_eq!(m2[q.apply(&g)], q2.apply(&g));
        }
    }

    #[test]
    fn refine_finite_intersects_kernels() {
        let d4 = Arc::new(build_finite_group(&FiniteFamily::Dihedral(4)).unwrap());
        let r = d4.generators()[0];
        let center = d4.normal_closure(&[d4.mul(r, r)]);
        let rot = d4.normal_closure(&[r]);
        let q1 = FiniteQuotient::by_normal_subgroup(d4.clone(), &center).unwrap();
        let q2 = FiniteQuotient::by_normal_subgroup(d4.clone(), &rot).unwrap();
        let q = refine(&q1, &q2, 5000).unwrap();
        assert_eq!(q.order(), 4);
        assert!(connecting_map(&q, &q1).is_ok() && connecting_map(&q, &q2).is_ok());
    }

    #[test]
    fn min_injective_examples() {
        let cfg = Config::default();
        let q = min_injective_quotient(&DiscreteGroup::Lattice(1), &[z(-1), z(0), z(1)], &cfg).unwrap();
        assert_eq!(q.kind(), &QuotientKind::Modular { moduli: vec![3] });
        assert!(!zq(2).is_injective_on(&[z(-1), z(0), z(1)]));

        let q = min_injective_quotient(&DiscreteGroup::Heisenberg, &[Element::Heisenberg([0; 3])], &cfg).unwrap();
        assert_eq!(q.order(), 1);

        let mut boxed = Vec::new();
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    boxed.push(Element::Heisenberg([a, b, c]));
                }
            }
        }
        let q = min_injective_quotient(&DiscreteGroup::Heisenberg, &boxed, &cfg).unwrap();
        assert_eq!(q.kind(), &QuotientKind::HeisenbergMod { modulus: 3 });
        assert!(!FiniteQuotient::heisenberg_mod(2, 5000).unwrap().is_injective_on(&boxed));
    }

    #[test]
    fn min_injective_free_group_separates() {
        let f2 = DiscreteGroup::Free2;
        let set: Vec<Element> = ["", "g1", "g2", "g1 g2", "g2 g1", "g1 g2 -g1 -g2"]
            .iter()
            .map(|s| f2.parse_element(&json!(s)).unwrap())
            .collect();
        let q = min_injective_quotient(&f2, &set, &Config::default()).unwrap();
        assert!(q.is_injective_on(&set));
        assert!(q.verify_surjective());
        assert!(!q.target().is_abelian());
    }

    #[test]
    fn min_injective_not_found_for_lattice_under_cap() {
        let cfg = Config { order_cap: 10, ..Config::default() };
        assert!(matches!(min_injective_quotient(&DiscreteGroup::Lattice(1), &[z(0), z(2520)], &cfg), Err(Error::NotFound(_))));
    }

    #[test]
    fn congruence_quotients_factor() {
        for n in 1..=4u64 {
            for k in 1..=3u64 {
                let fine = FiniteQuotient::heisenberg_mod(n * k, 5000).unwrap();
                let coarse = FiniteQuotient::heisenberg_mod(n, 5000).unwrap();
                let phi = connecting_map(&fine, &coarse).unwrap();
                for a in -3..=3 {
                    for b in -3..=3 {
                        let g = Element::Heisenberg([a, b, a * b - 1]);
                        assert_eq!(phi[fine.apply(&g)], coarse.apply(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_examples() {
        let d = |k| GroupAlgebraElement::delta(DiscreteGroup::Lattice(1), z(k)).unwrap();
        assert_eq!(zq(3).kappa(&d(5)).unwrap().support(), vec![Element::Finite(2)]);
        assert!(zq(2).kappa(&d(1).sub(&d(-1)).unwrap()).unwrap().is_zero());
        let h = DiscreteGroup::Heisenberg;
        let a = GroupAlgebraElement::from_terms(
            h.clone(),
            [(Element::Heisenberg([1, 0, 0]), Complex64::new(1.0, 0.0)), (Element::Heisenberg([-1, 0, 0]), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let q = FiniteQuotient::heisenberg_mod(2, 5000).unwrap();
        let k = q.kappa(&a).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.coefficient(&Element::Finite(q.apply(&Element::Heisenberg([1, 0, 0])))), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn json_roundtrip() {
        let q = FiniteQuotient::modular(vec![2, 3], 5000).unwrap();
        let back = FiniteQuotient::from_json(&q.to_json(), 5000).unwrap();
        assert_eq!(back.kind(), q.kind());
        let v = json!({"group": {"family": "free2"}, "kind": "catalog", "params": {"target": {"family": "symmetric", "params": [3]}, "images": [1, 3]}});
        assert_eq!(FiniteQuotient::from_json(&v, 5000).unwrap().order(), 6);
    }
}
