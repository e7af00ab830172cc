//! Finite groups stored by multiplication table, their regular
//! representations, and numerical splitting of the regular representation
//! into irreducible blocks.

mod decompose;
mod regular;

pub use decompose::{decompose_regular, DecompositionReport, DecompositionSummary, Irrep, IrrepDecomposition};
pub use regular::{left_convolution_matrix, regular_representation, RegularRepresentation};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::tolerances::ORDER_CAP;
use crate::{Error, Result};

/// The supported finite families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteFamily {
    Cyclic(usize),
    ElementaryAbelian2(usize),
    Dihedral(usize),
    /// Permutations of `n <= 6` points.
    Symmetric(usize),
    /// Unitriangular 3×3 matrices over `Z/n`.
    HeisenbergMod(usize),
    DirectProduct(Vec<FiniteFamily>),
}

impl FiniteFamily {
    /// Order from the family formula, `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            FiniteFamily::Cyclic(n) => Some(*n),
            FiniteFamily::ElementaryAbelian2(k) => 1usize.checked_shl(*k as u32).filter(|_| *k < 63),
            FiniteFamily::Dihedral(n) => n.checked_mul(2),
            FiniteFamily::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, i| acc.checked_mul(i)),
            FiniteFamily::HeisenbergMod(n) => n.checked_mul(*n)?.checked_mul(*n),
            FiniteFamily::DirectProduct(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FiniteFamily::Cyclic(n) => format!("cyclic({n})"),
            FiniteFamily::ElementaryAbelian2(k) => format!("elementary_abelian_2({k})"),
            FiniteFamily::Dihedral(n) => format!("dihedral({n})"),
            FiniteFamily::Symmetric(n) => format!("symmetric({n})"),
            FiniteFamily::HeisenbergMod(n) => format!("heisenberg_mod({n})"),
            FiniteFamily::DirectProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.label()).collect();
                format!("direct_product({})", parts.join(", "))
            }
        }
    }

    fn check_params(&self) -> Result<()> {
        match self {
            FiniteFamily::Cyclic(0) | FiniteFamily::Dihedral(0) | FiniteFamily::HeisenbergMod(0) => {
                Err(Error::InvalidParams(format!("{} needs a positive parameter", self.label())))
            }
            FiniteFamily::Symmetric(n) if *n == 0 || *n > 6 => {
                Err(Error::InvalidParams(format!("symmetric(n) needs 1 <= n <= 6, got {n}")))
            }
            FiniteFamily::DirectProduct(fs) => fs.iter().try_for_each(|f| f.check_params()),
            _ => Ok(()),
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    family: Option<FiniteFamily>,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    words: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            label: self.label.clone(),
            family: self.family.clone(),
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            identity: self.identity,
            generators: self.generators.clone(),
            words: OnceLock::new(),
        }
    }
}

/// Two groups are equal when their tables and generators agree; labels are
/// descriptive only.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.generators == other.generators
    }
}

pub fn build_finite_group(family: &FiniteFamily) -> Result<FiniteGroup> {
    FiniteGroup::build_with_cap(family, ORDER_CAP)
}

impl FiniteGroup {
    pub fn build_with_cap(family: &FiniteFamily, cap: usize) -> Result<FiniteGroup> {
        family.check_params()?;
        let order = family.order().ok_or(Error::OrderCap { order: usize::MAX, cap })?;
        if order > cap {
            return Err(Error::OrderCap { order, cap });
        }
        let (mul, generators) = family_table(family);
        let mut g = FiniteGroup::from_table(family.label(), order, mul, generators)?;
        g.family = Some(family.clone());
        Ok(g)
    }

    /// Builds a group from a flat `order × order` table. Validates the group
    /// axioms: associativity exhaustively up to order 60, on a fixed random
    /// sample above.
    pub fn from_table(label: String, order: usize, mul: Vec<u32>, generators: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidParams("multiplication table has the wrong shape".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParams("table entry out of range".into()));
        }
        let at = |x: usize, y: usize| mul[x * order + y] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidParams("no identity element".into()))?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| at(x, y) == identity)
                .ok_or_else(|| Error::InvalidParams(format!("element {x} has no inverse")))?;
            inv[x] = y as u32;
        }
        let assoc = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        let ok = if order <= 60 {
            (0..order).all(|x| (0..order).all(|y| (0..order).all(|z| assoc(x, y, z))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            (0..100_000).all(|_| {
                assoc(rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order))
            })
        };
        if !ok {
            return Err(Error::InvalidParams("table is not associative".into()));
        }
        let generators = generators.into_iter().filter(|&g| g != identity).collect();
        Ok(FiniteGroup { label, family: None, order, mul, inv, identity, generators, words: OnceLock::new() })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::build_with_cap(&FiniteFamily::Cyclic(1), 1).expect("trivial group")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Option<&FiniteFamily> {
        self.family.as_ref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..self.order).map(|g| self.mul(self.mul(g, x), self.inv(g))).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    /// For every element, a shortest word in the generators (by index into
    /// [`generators`](Self::generators)) that evaluates to it.
    pub fn words(&self) -> &[Vec<usize>] {
        self.words.get_or_init(|| {
            let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
            words[self.identity] = Some(Vec::new());
            let mut queue = VecDeque::from([self.identity]);
            while let Some(x) = queue.pop_front() {
                for (i, &s) in self.generators.iter().enumerate() {
                    let y = self.mul(x, s);
                    if words[y].is_none() {
                        let mut w = words[x].clone().unwrap();
                        w.push(i);
                        words[y] = Some(w);
                        queue.push_back(y);
                    }
                }
            }
            words.into_iter().map(|w| w.expect("generators must generate the group")).collect()
        })
    }

    /// Elements of the subgroup generated by `gens`, identity first, in
    /// breadth-first order.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// The subgroup generated by `gens` as a group in its own right, with the
    /// embedding (new index → old index). Generators map to the images of
    /// `gens`.
    pub fn generated_subgroup(&self, gens: &[usize], label: String) -> (FiniteGroup, Vec<usize>) {
        let elems = self.closure(gens);
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for &x in &elems {
            for &y in &elems {
                mul.push(pos[self.mul(x, y)] as u32);
            }
        }
        let new_gens = gens.iter().map(|&g| pos[g]).collect();
        let sub = FiniteGroup::from_table(label, n, mul, new_gens).expect("subgroup of a group is a group");
        (sub, elems)
    }

    /// Smallest normal subgroup containing `elems`, sorted.
    pub fn normal_closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut conj: Vec<usize> = Vec::new();
        for &x in elems {
            for g in 0..self.order {
                conj.push(self.mul(self.mul(g, x), self.inv(g)));
            }
        }
        conj.sort_unstable();
        conj.dedup();
        let mut out = self.closure(&conj);
        out.sort_unstable();
        out
    }

    pub fn is_normal_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elems {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        if !member[self.identity] {
            return false;
        }
        let closed = elems.iter().all(|&x| elems.iter().all(|&y| member[self.mul(x, self.inv(y))]));
        let normal = elems.iter().all(|&x| (0..self.order).all(|g| member[self.mul(self.mul(g, x), self.inv(g))]));
        closed && normal
    }

    /// The quotient by a normal subgroup, with the coset index of every
    /// element. Cosets are numbered by their smallest member.
    pub fn quotient_by(&self, kernel: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal_subgroup(kernel) {
            return Err(Error::InvalidParams("kernel is not a normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] == usize::MAX {
                for &k in kernel {
                    coset_of[self.mul(x, k)] = reps.len();
                }
                reps.push(x);
            }
        }
        let n = reps.len();
        let mut mul = Vec::with_capacity(n * n);
        for &x in &reps {
            for &y in &reps {
                mul.push(coset_of[self.mul(x, y)] as u32);
            }
        }
        let gens = self.generators.iter().map(|&g| coset_of[g]).collect();
        let label = format!("{}/N[{}]", self.label, kernel.len());
        let q = FiniteGroup::from_table(label, n, mul, gens)?;
        Ok((q, coset_of))
    }
}

/// Lexicographic rank of a permutation of `0..n`, which is its element
/// index in `symmetric(n)`.
pub fn permutation_index(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Index of the Heisenberg-mod-`n` element with entries `(a, b, c)`
/// (upper, right, corner), each reduced mod `n`.
pub fn heisenberg_mod_index(n: usize, entries: [i64; 3]) -> usize {
    let r = |v: i64| v.rem_euclid(n as i64) as usize;
    (r(entries[0]) * n + r(entries[1])) * n + r(entries[2])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // lexicographic order, so element i has permutation_index i
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn table_from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u32> {
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            mul.push(f(x, y) as u32);
        }
    }
    mul
}

fn family_table(family: &FiniteFamily) -> (Vec<u32>, Vec<usize>) {
    match family {
        FiniteFamily::Cyclic(n) => {
            let n = *n;
            (table_from_fn(n, |x, y| (x + y) % n), vec![1 % n])
        }
        FiniteFamily::ElementaryAbelian2(k) => {
            let order = 1usize << k;
            (table_from_fn(order, |x, y| x ^ y), (0..*k).map(|i| 1 << i).collect())
        }
        FiniteFamily::Dihedral(n) => {
            // index a + n·b stands for r^a s^b, with s r s = r^{-1}
            let n = *n;
            let f = |x: usize, y: usize| {
                let (a, b) = (x % n, x / n);
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                rot + n * ((b + d) % 2)
            };
            (table_from_fn(2 * n, f), vec![1 % n, n])
        }
        FiniteFamily::Symmetric(n) => {
            let perms = permutations(*n);
            let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
            // (σ·τ)(i) = σ(τ(i))
            let f = |x: usize, y: usize| {
                let comp: Vec<usize> = perms[y].iter().map(|&t| perms[x][t]).collect();
                index[comp.as_slice()]
            };
            let mut gens = Vec::new();
            if *n >= 2 {
                let mut swap: Vec<usize> = (0..*n).collect();
                swap.swap(0, 1);
                let cycle: Vec<usize> = (0..*n).map(|i| (i + 1) % n).collect();
                gens.push(permutation_index(&swap));
                gens.push(permutation_index(&cycle));
            }
            (table_from_fn(perms.len(), f), gens)
        }
        FiniteFamily::HeisenbergMod(n) => {
            let n = *n;
            let split = |x: usize| (x / (n * n), (x / n) % n, x % n);
            let f = |x: usize, y: usize| {
                let (a, b, c) = split(x);
                let (a2, b2, c2) = split(y);
                ((a + a2) % n * n + (b + b2) % n) * n + (c + c2 + a * b2) % n
            };
            let gens = vec![heisenberg_mod_index(n, [1, 0, 0]), heisenberg_mod_index(n, [0, 1, 0])];
            (table_from_fn(n * n * n, f), gens)
        }
        FiniteFamily::DirectProduct(fs) => {
            let parts: Vec<(usize, Vec<u32>, Vec<usize>)> = fs
                .iter()
                .map(|f| {
                    let (m, g) = family_table(f);
                    (f.order().unwrap(), m, g)
                })
                .collect();
            direct_product_table(&parts)
        }
    }
}

/// Mixed-radix product, first factor most significant. Generators are the
/// factor generators placed in their slot.
fn direct_product_table(parts: &[(usize, Vec<u32>, Vec<usize>)]) -> (Vec<u32>, Vec<usize>) {
    let orders: Vec<usize> = parts.iter().map(|p| p.0).collect();
    let total: usize = orders.iter().product();
    let mut strides = vec![1usize; parts.len()];
    for i in (0..parts.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * orders[i + 1];
    }
    let digit = |x: usize, i: usize| (x / strides[i]) % orders[i];
    let f = |x: usize, y: usize| {
        (0..parts.len())
            .map(|i| {
                let (o, m, _) = &parts[i];
                m[digit(x, i) * o + digit(y, i)] as usize * strides[i]
            })
            .sum()
    };
    let mut gens = Vec::new();
    for (i, (o, m, g)) in parts.iter().enumerate() {
        let identity = (0..*o).find(|&e| (0..*o).all(|x| m[e * o + x] as usize == x)).unwrap();
        let base: usize = (0..parts.len())
            .filter(|&j| j != i)
            .map(|j| {
                let (oj, mj, _) = &parts[j];
                let ej = (0..*oj).find(|&e| (0..*oj).all(|x| mj[e * oj + x] as usize == x)).unwrap();
                ej * strides[j]
            })
            .sum();
        for &s in g {
            if s != identity {
                gens.push(base + s * strides[i]);
            }
        }
    }
    (table_from_fn(total, f), gens)
}

/// Direct product of two explicit groups, first factor most significant.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let pa = (a.order, a.mul.clone(), a.generators.clone());
    let pb = (b.order, b.mul.clone(), b.generators.clone());
    let (mul, gens) = direct_product_table(&[pa, pb]);
    FiniteGroup::from_table(format!("{} x {}", a.label, b.label), a.order * b.order, mul, gens)
        .expect("product of groups is a group")
}
