//! Finite groups given by multiplication tables.
//!
//! Every group is a table over element indices `0..order`. Constructors
//! (permutation closure, named families, affine groups over fields and
//! near-fields, direct products) all produce a [`FiniteGroup`], and all
//! downstream row orders are pinned by the element indexing chosen here.

mod field;
mod iso;
mod perm;
mod spec;

pub(crate) use field::affine_from_tables;
pub use field::{build_affine_group, build_galois_field, GaloisField};
pub use iso::{is_isomorphic, small_generating_set};
pub use perm::{
    alternating_group, closure_from_generators, cycle_notation, cyclic_group, dihedral_group, quaternion_group,
    symmetric_group, Permutation,
};
pub use spec::{parse_group_spec, GroupSpec};

use std::collections::VecDeque;

use serde::Serialize;

/// Default upper bound on the order of any group built by a constructor.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Largest order for which exhaustive associativity checks and
/// isomorphism searches are attempted.
pub const EXHAUSTIVE_LIMIT: usize = 512;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap} (raise it with --cap)")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not a permutation of 0..{n}")]
    NotBijection { index: usize, n: usize },
    #[error("generators act on different numbers of points ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field order {0} is outside the supported range 2..=64")]
    FieldTooLarge(usize),
    #[error("subgroup is not normal: conjugating {member} by {by} leaves it")]
    NotNormal { member: usize, by: usize },
    #[error("cannot parse group spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
}

/// Minimal interface shared by stored tables and lazily-evaluated products.
pub trait GroupOps {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    /// `x g x^-1`
    fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.identity
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking that it is a Latin
    /// square with a two-sided identity. Associativity is checked separately
    /// by [`FiniteGroup::verify_axioms`].
    pub fn from_table(order: usize, mul: Vec<u32>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(n) = &names {
            if n.len() != order {
                return Err(GroupError::InvalidTable("name list has wrong length".into()));
            }
        }
        let mut seen = vec![0u32; order];
        for r in 0..order {
            for c in 0..order {
                let v = mul[r * order + c] as usize;
                if v >= order {
                    return Err(GroupError::InvalidTable(format!("entry {v} out of range")));
                }
                if seen[v] == (r + 1) as u32 {
                    return Err(GroupError::InvalidTable(format!("row {r} repeats {v}")));
                }
                seen[v] = (r + 1) as u32;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for c in 0..order {
            for r in 0..order {
                let v = mul[r * order + c] as usize;
                if seen[v] == (c + 1) as u32 {
                    return Err(GroupError::InvalidTable(format!("column {c} repeats {v}")));
                }
                seen[v] = (c + 1) as u32;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] as usize == identity)
                .expect("latin square has a right inverse");
            if mul[y * order + x] as usize != identity {
                return Err(GroupError::InvalidTable(format!("inverse of {x} is not two-sided")));
            }
            inv[x] = y as u32;
        }
        Ok(FiniteGroup { order, mul, identity, inv, names })
    }

    /// Builds from a closure computing products; used by the named constructors.
    pub(crate) fn from_fn(
        order: usize,
        names: Option<Vec<String>>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(f(a, b) as u32);
            }
        }
        Self::from_table(order, mul, names)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], identity: 0, inv: vec![0], names: Some(vec!["e".into()]) }
    }

    /// Exhaustive associativity check (only for order <= [`EXHAUSTIVE_LIMIT`]).
    /// Returns a violating triple on failure.
    pub fn verify_axioms(&self) -> Result<(), (usize, usize, usize)> {
        if self.order > EXHAUSTIVE_LIMIT {
            return Ok(());
        }
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Conjugacy classes sorted by representative, each representative the
    /// smallest index in its class.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let idx = out.len();
            let mut members = Vec::new();
            for x in 0..self.order {
                let c = self.conj(x, g);
                if class_of[c] == usize::MAX {
                    class_of[c] = idx;
                    members.push(c);
                }
            }
            members.sort_unstable();
            out.push(ConjugacyClass { rep: g, members });
        }
        out
    }

    /// `Z(g) = {h : hg = gh}`.
    pub fn centralizer(&self, g: usize) -> Subgroup {
        let members = (0..self.order).filter(|&h| self.commute(h, g)).collect();
        Subgroup::from_sorted(self.order, members)
    }

    /// Smallest subgroup containing `seeds`.
    pub fn subgroup_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != self.identity).collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(&inside)
    }

    /// Checks closure under products and inverses; `None` if `members` is a subgroup.
    pub fn subgroup_violation(&self, members: &[usize]) -> Option<String> {
        let mut inside = vec![false; self.order];
        for &m in members {
            inside[m] = true;
        }
        if !inside[self.identity] {
            return Some("identity missing".into());
        }
        for &a in members {
            if !inside[self.inv(a)] {
                return Some(format!("inverse of {a} missing"));
            }
            for &b in members {
                if !inside[self.mul(a, b)] {
                    return Some(format!("product {a}*{b} missing"));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h).is_none()
    }

    fn normality_witness(&self, h: &Subgroup) -> Option<(usize, usize)> {
        for &m in h.members() {
            for x in 0..self.order {
                if !h.contains(self.conj(x, m)) {
                    return Some((m, x));
                }
            }
        }
        None
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// element; the returned map sends each element to its coset index.
    pub fn quotient_map(&self, h: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if let Some((member, by)) = self.normality_witness(h) {
            return Err(GroupError::NotNormal { member, by });
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] == usize::MAX {
                for &m in h.members() {
                    coset[self.mul(g, m)] = reps.len();
                }
                reps.push(g);
            }
        }
        let q = FiniteGroup::from_fn(reps.len(), None, |a, b| coset[self.mul(reps[a], reps[b])])?;
        Ok((q, coset))
    }

    /// The subgroup as a group in its own right; local index `i` is
    /// `h.members()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let local = h.local_index_map();
        let names = self.names.as_ref().map(|n| h.members().iter().map(|&m| n[m].clone()).collect());
        let mem = h.members();
        FiniteGroup::from_fn(mem.len(), names, |a, b| local[self.mul(mem[a], mem[b])])
            .expect("a subgroup table is a group table")
    }

    /// `G x G'` with index `l * |G'| + r`.
    pub fn direct_product(&self, other: &FiniteGroup, cap: usize) -> Result<DirectProduct, GroupError> {
        let order = self.order * other.order;
        if order > cap {
            return Err(GroupError::CapExceeded { cap });
        }
        let view = ProductGroup::new(self, other);
        let names = match (&self.names, &other.names) {
            (Some(a), Some(b)) => {
                Some((0..order).map(|x| format!("({},{})", a[x / other.order], b[x % other.order])).collect())
            }
            _ => None,
        };
        let group = FiniteGroup::from_fn(order, names, |a, b| view.mul(a, b))?;
        Ok(DirectProduct { group, left_order: self.order, right_order: other.order })
    }
}

/// A conjugacy class with its canonical (minimal-index) representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Class partition with an element-to-class lookup.
#[derive(Clone, Debug)]
pub struct ClassStructure {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

impl ClassStructure {
    pub fn new(g: &FiniteGroup) -> Self {
        let classes = g.conjugacy_classes();
        let mut class_of = vec![0; g.order()];
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = i;
            }
        }
        ClassStructure { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A subgroup as a sorted list of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    #[serde(skip)]
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn from_sorted(parent_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent_order, members, mask }
    }

    pub fn from_members(parent_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self::from_sorted(parent_order, members)
    }

    fn from_mask(mask: &[bool]) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup { parent_order: mask.len(), members, mask: mask.to_vec() }
    }

    pub fn whole(parent_order: usize) -> Self {
        Self::from_sorted(parent_order, (0..parent_order).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    /// Parent index -> local index (`usize::MAX` outside the subgroup).
    pub fn local_index_map(&self) -> Vec<usize> {
        let mut local = vec![usize::MAX; self.parent_order];
        for (i, &m) in self.members.iter().enumerate() {
            local[m] = i;
        }
        local
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Subgroup::from_sorted(self.parent_order, members)
    }
}

/// `G x G'` evaluated componentwise without storing a table.
#[derive(Clone, Copy, Debug)]
pub struct ProductGroup<'a> {
    pub left: &'a FiniteGroup,
    pub right: &'a FiniteGroup,
}

impl<'a> ProductGroup<'a> {
    pub fn new(left: &'a FiniteGroup, right: &'a FiniteGroup) -> Self {
        ProductGroup { left, right }
    }

    #[inline]
    pub fn pair(&self, l: usize, r: usize) -> usize {
        l * self.right.order() + r
    }

    #[inline]
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }
}

impl GroupOps for ProductGroup<'_> {
    fn order(&self) -> usize {
        self.left.order() * self.right.order()
    }
    fn identity(&self) -> usize {
        self.pair(self.left.identity(), self.right.identity())
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        self.pair(self.left.mul(a1, b1), self.right.mul(a2, b2))
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        let (a1, a2) = self.split(a);
        self.pair(self.left.inv(a1), self.right.inv(a2))
    }
}

/// A stored direct product that remembers its factors.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left_order: usize,
    pub right_order: usize,
}

impl DirectProduct {
    pub fn project_left(&self, x: usize) -> usize {
        x / self.right_order
    }
    pub fn project_right(&self, x: usize) -> usize {
        x % self.right_order
    }
    pub fn pair(&self, l: usize, r: usize) -> usize {
        l * self.right_order + r
    }
}
