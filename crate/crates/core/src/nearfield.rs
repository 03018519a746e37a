//! Finite near-fields: axiom checking, the affine groups `H+ x| Hx`, the
//! order-9 proper near-field, and reconstruction of a near-field from a group
//! with a fixed-point-free conjugacy class `{e} u class(a) = Z(a)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{affine_from_tables, FiniteGroup, GaloisField, GroupError, GroupOps};

/// A near-field on `0..size`: `(H,+)` abelian, `(H\0,*)` a group, `0` absorbing,
/// and `x*(y+z) = x*y + x*z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearField {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: usize,
    one: usize,
}

/// First failed axiom with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    /// 1: additive abelian group, 2: zero absorbs, 3: multiplicative group,
    /// 4: left distributivity.
    pub axiom: u8,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} fails at {:?}: {}", self.axiom, self.witness, self.detail)
    }
}

fn violation(axiom: u8, witness: Vec<usize>, detail: impl Into<String>) -> AxiomViolation {
    AxiomViolation { axiom, witness, detail: detail.into() }
}

/// Exhaustive check of the four near-field axioms. On success returns the
/// additive and multiplicative identities.
pub fn check_nearfield_axioms(size: usize, add: &[u32], mul: &[u32]) -> Result<(usize, usize), AxiomViolation> {
    let n = size;
    if n < 2 || add.len() != n * n || mul.len() != n * n {
        return Err(violation(1, vec![], format!("tables must be {n}x{n} with at least two elements")));
    }
    if let Some(&v) = add.iter().chain(mul).find(|&&v| v as usize >= n) {
        return Err(violation(1, vec![v as usize], "table entry out of range"));
    }
    let a = |x: usize, y: usize| add[x * n + y] as usize;
    let m = |x: usize, y: usize| mul[x * n + y] as usize;

    let zero = (0..n)
        .find(|&z| (0..n).all(|x| a(z, x) == x && a(x, z) == x))
        .ok_or_else(|| violation(1, vec![], "no additive identity"))?;
    for x in 0..n {
        if !(0..n).any(|y| a(x, y) == zero) {
            return Err(violation(1, vec![x], "no additive inverse"));
        }
        for y in 0..n {
            if a(x, y) != a(y, x) {
                return Err(violation(1, vec![x, y], "addition not commutative"));
            }
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z)) {
                    return Err(violation(1, vec![x, y, z], "addition not associative"));
                }
            }
        }
    }

    for x in 0..n {
        if m(zero, x) != zero || m(x, zero) != zero {
            return Err(violation(2, vec![x], "zero does not absorb"));
        }
    }

    let units: Vec<usize> = (0..n).filter(|&x| x != zero).collect();
    for &x in &units {
        for &y in &units {
            if m(x, y) == zero {
                return Err(violation(3, vec![x, y], "product of nonzero elements is zero"));
            }
        }
    }
    let one = units
        .iter()
        .copied()
        .find(|&e| units.iter().all(|&x| m(e, x) == x && m(x, e) == x))
        .ok_or_else(|| violation(3, vec![], "no multiplicative identity"))?;
    for &x in &units {
        if !units.iter().any(|&y| m(x, y) == one && m(y, x) == one) {
            return Err(violation(3, vec![x], "no multiplicative inverse"));
        }
        for &y in &units {
            for &z in &units {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return Err(violation(3, vec![x, y, z], "multiplication not associative"));
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                    return Err(violation(4, vec![x, y, z], "x*(y+z) != x*y + x*z"));
                }
            }
        }
    }
    Ok((zero, one))
}

/// JSON form `{size, add, mul}` with row-major nested tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearFieldJson {
    pub size: usize,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
}

impl NearField {
    pub fn from_tables(size: usize, add: Vec<u32>, mul: Vec<u32>) -> Result<Self, AxiomViolation> {
        let (zero, one) = check_nearfield_axioms(size, &add, &mul)?;
        Ok(NearField { size, add, mul, zero, one })
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn zero(&self) -> usize {
        self.zero
    }
    pub fn one(&self) -> usize {
        self.one
    }
    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }
    pub fn add_table(&self) -> &[u32] {
        &self.add
    }
    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != self.zero {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    pub fn is_multiplicatively_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// A triple with `(x+y)*z != x*z + y*z`, if any.
    pub fn right_distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.add(x, y), z) != self.add(self.mul(x, z), self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_field(&self) -> bool {
        self.is_multiplicatively_commutative() && self.right_distributivity_witness().is_none()
    }

    /// Nonzero elements commuting multiplicatively with every element.
    pub fn multiplicative_center(&self) -> Vec<usize> {
        (0..self.size).filter(|&z| z != self.zero && (0..self.size).all(|y| self.mul(z, y) == self.mul(y, z))).collect()
    }

    /// `H\0` as a group; local index `i` is the `i`-th nonzero element.
    pub fn multiplicative_group(&self) -> FiniteGroup {
        let units: Vec<usize> = (0..self.size).filter(|&x| x != self.zero).collect();
        let mut pos = vec![usize::MAX; self.size];
        for (i, &u) in units.iter().enumerate() {
            pos[u] = i;
        }
        let mut table = Vec::with_capacity(units.len() * units.len());
        for &x in &units {
            for &y in &units {
                table.push(pos[self.mul(x, y)] as u32);
            }
        }
        FiniteGroup::from_table(units.len(), table, None).expect("near-field units form a group")
    }

    pub fn to_json(&self) -> NearFieldJson {
        let rows = |t: &[u32]| t.chunks(self.size).map(|r| r.to_vec()).collect();
        NearFieldJson { size: self.size, add: rows(&self.add), mul: rows(&self.mul) }
    }

    pub fn from_json(j: &NearFieldJson) -> Result<Self, AxiomViolation> {
        let flat = |t: &[Vec<u32>]| -> Result<Vec<u32>, AxiomViolation> {
            if t.len() != j.size || t.iter().any(|r| r.len() != j.size) {
                return Err(violation(1, vec![], "table shape does not match size"));
            }
            Ok(t.concat())
        };
        Self::from_tables(j.size, flat(&j.add)?, flat(&j.mul)?)
    }
}

pub fn nearfield_from_field(field: &GaloisField) -> NearField {
    NearField::from_tables(field.q, field.add_table().to_vec(), field.mul_table().to_vec())
        .expect("a finite field is a near-field")
}

/// The proper near-field of order 9: addition of `GF(9)` and
/// `x o y = x*y` when `x` is a square, `x*y^3` otherwise.
pub fn build_dickson_j9() -> NearField {
    let f = crate::group::build_galois_field(9).expect("9 is a prime power");
    let mut mul = vec![0u32; 81];
    for x in 0..9 {
        for y in 0..9 {
            let yy = if x == 0 || f.is_square(x) { y } else { f.pow(y, 3) };
            mul[x * 9 + y] = f.mul(x, yy) as u32;
        }
    }
    NearField::from_tables(9, f.add_table().to_vec(), mul).expect("J9 satisfies the near-field axioms")
}

/// `H+ x| Hx` with `(a,alpha)(b,beta) = (a + alpha*b, alpha*beta)`.
pub fn affine_group_from_nearfield(h: &NearField) -> Result<FiniteGroup, GroupError> {
    affine_from_tables(h.size, &h.add, &h.mul, h.zero)
}

/// Near-field isomorphism `a -> b` as an element map, by backtracking.
pub fn nearfield_isomorphism(a: &NearField, b: &NearField) -> Option<Vec<usize>> {
    if a.size != b.size {
        return None;
    }
    let n = a.size;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.zero] = b.zero;
    map[a.one] = b.one;
    used[b.zero] = true;
    used[b.one] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.zero && x != a.one).collect();
    fn consistent(a: &NearField, b: &NearField, map: &[usize], x: usize) -> bool {
        (0..a.size).filter(|&y| map[y] != usize::MAX).all(|y| {
            [
                (a.add(x, y), b.add(map[x], map[y])),
                (a.add(y, x), b.add(map[y], map[x])),
                (a.mul(x, y), b.mul(map[x], map[y])),
                (a.mul(y, x), b.mul(map[y], map[x])),
            ]
            .iter()
            .all(|&(s, t)| map[s] == usize::MAX || map[s] == t)
        })
    }
    fn go(a: &NearField, b: &NearField, order: &[usize], k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for t in 0..a.size {
            if used[t] {
                continue;
            }
            map[x] = t;
            used[t] = true;
            if consistent(a, b, map, x) && go(a, b, order, k + 1, map, used) {
                return true;
            }
            used[t] = false;
            map[x] = usize::MAX;
        }
        false
    }
    if !consistent(a, b, &map, a.one) {
        return None;
    }
    go(a, b, &order, 0, &mut map, &mut used).then_some(map)
}

#[derive(thiserror::Error, Clone, Debug, PartialEq, Eq)]
pub enum NearFieldError {
    #[error("the chosen element is the identity")]
    IdentityElement,
    #[error("Z(a) != {{e}} u class(a): element {witness} {detail}")]
    CentralizerMismatch { witness: usize, detail: String },
    #[error("product is ill-defined: Z(a) is not abelian ({0} and {1} do not commute)")]
    IllDefined(usize, usize),
    #[error("extracted tables are not a near-field: {0}")]
    Axiom(AxiomViolation),
    #[error("no complement: no g outside H with |Z(g)| = q-1 and G = H Z(g)")]
    NoComplement,
    #[error("split map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A near-field carried by `H = Z(a) = {e} u class(a)` inside a group.
#[derive(Clone, Debug)]
pub struct ExtractedNearField {
    pub near_field: NearField,
    pub a: usize,
    /// Group elements of `H`; near-field element `i` is `carrier[i]`.
    pub carrier: Vec<usize>,
    /// Conjugators `x_b` with `x_b a x_b^-1 = b`, indexed like `carrier`
    /// (`usize::MAX` at the identity).
    pub conjugators: Vec<usize>,
}

/// Builds the near-field on `Z(a)` with `+` the group operation and
/// `b x c = x_b x_c a x_c^-1 x_b^-1`, where `x_b` is the smallest element
/// conjugating `a` to `b` and `x_a = e`.
pub fn nearfield_from_group(g: &FiniteGroup, a: usize) -> Result<ExtractedNearField, NearFieldError> {
    let e = g.identity();
    if a == e {
        return Err(NearFieldError::IdentityElement);
    }
    let z = g.centralizer(a);
    let mut conj = vec![usize::MAX; g.order()];
    for x in 0..g.order() {
        let b = g.conj(x, a);
        if conj[b] == usize::MAX {
            conj[b] = x;
        }
    }
    conj[a] = e;
    for h in 0..g.order() {
        let in_z = z.contains(h);
        let in_class = h == e || conj[h] != usize::MAX;
        if in_z && !in_class {
            return Err(NearFieldError::CentralizerMismatch {
                witness: h,
                detail: "centralizes a but is not conjugate to it".into(),
            });
        }
        if in_class && !in_z {
            return Err(NearFieldError::CentralizerMismatch {
                witness: h,
                detail: "is conjugate to a but does not centralize it".into(),
            });
        }
    }
    let carrier = z.members().to_vec();
    for (i, &x) in carrier.iter().enumerate() {
        for &y in &carrier[i + 1..] {
            if !g.commute(x, y) {
                return Err(NearFieldError::IllDefined(x, y));
            }
        }
    }
    let local = z.local_index_map();
    let q = carrier.len();
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for (i, &b) in carrier.iter().enumerate() {
        for (j, &c) in carrier.iter().enumerate() {
            add[i * q + j] = local[g.mul(b, c)] as u32;
            let prod = if b == e || c == e { e } else { g.conj(conj[b], g.conj(conj[c], a)) };
            mul[i * q + j] = local[prod] as u32;
        }
    }
    let near_field = NearField::from_tables(q, add, mul).map_err(NearFieldError::Axiom)?;
    let conjugators = carrier.iter().map(|&b| if b == e { usize::MAX } else { conj[b] }).collect();
    Ok(ExtractedNearField { near_field, a, carrier, conjugators })
}

/// Verified isomorphism `G -> H+ x| Hx` (target indexed as in
/// [`affine_group_from_nearfield`]).
#[derive(Clone, Debug)]
pub struct SemidirectSplit {
    /// Element `g` whose centralizer complements `H`; the identity when `G = H`.
    pub complement_generator: usize,
    pub complement: Vec<usize>,
    pub map: Vec<usize>,
}

/// Writes every element as `bk` with `b` in `H` and `k` in `Z(g)` and sends
/// it to `(b, k a k^-1)`; the homomorphism property is checked exhaustively.
pub fn split_as_semidirect(g: &FiniteGroup, ext: &ExtractedNearField) -> Result<SemidirectSplit, NearFieldError> {
    let h = &ext.near_field;
    let q = h.size();
    let e = g.identity();
    let mut in_h = vec![usize::MAX; g.order()];
    for (i, &b) in ext.carrier.iter().enumerate() {
        in_h[b] = i;
    }
    let (gen, complement) = if g.order() == q {
        (e, vec![e])
    } else {
        let found = (0..g.order()).filter(|&x| in_h[x] == usize::MAX).find_map(|x| {
            let zx = g.centralizer(x);
            let meets_h_trivially = zx.members().iter().all(|&k| k == e || in_h[k] == usize::MAX);
            (zx.order() == q - 1 && meets_h_trivially && q * (q - 1) == g.order()).then(|| (x, zx.members().to_vec()))
        });
        found.ok_or(NearFieldError::NoComplement)?
    };
    let target = affine_group_from_nearfield(h)?;
    let units: Vec<usize> = (0..q).filter(|&x| x != h.zero()).collect();
    let mut unit_pos = vec![usize::MAX; q];
    for (i, &u) in units.iter().enumerate() {
        unit_pos[u] = i;
    }
    let mut map = vec![usize::MAX; g.order()];
    for &k in &complement {
        let alpha = in_h[g.conj(k, ext.a)];
        for (bi, &b) in ext.carrier.iter().enumerate() {
            let x = g.mul(b, k);
            if map[x] != usize::MAX {
                return Err(NearFieldError::NoComplement);
            }
            map[x] = bi * (q - 1) + unit_pos[alpha];
        }
    }
    if map.contains(&usize::MAX) {
        return Err(NearFieldError::NoComplement);
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if map[g.mul(x, y)] != target.mul(map[x], map[y]) {
                return Err(NearFieldError::NotHomomorphism(x, y));
            }
        }
    }
    Ok(SemidirectSplit { complement_generator: gen, complement, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_affine_group, build_galois_field, cyclic_group, is_isomorphic, quaternion_group};

    fn gf(q: usize) -> GaloisField {
        build_galois_field(q).unwrap()
    }

    #[test]
    fn fields_are_near_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let h = nearfield_from_field(&gf(q));
            assert!(h.is_field());
            assert_eq!((h.zero(), h.one()), (0, 1));
        }
    }

    #[test]
    fn transposed_entry_is_caught() {
        let f = gf(9);
        let mut mul = f.mul_table().to_vec();
        // swap x*y and y*x for a noncommuting perturbation: breaks commutativity
        // of a field, but must also break one of the near-field axioms
        let (x, y) = (2, 3);
        mul.swap(x * 9 + y, x * 9 + 4);
        let err = check_nearfield_axioms(9, f.add_table(), &mul).unwrap_err();
        assert!(err.axiom >= 3, "{err}");
        assert!(!err.witness.is_empty());
    }

    #[test]
    fn j9_is_proper() {
        let j = build_dickson_j9();
        assert!(!j.is_multiplicatively_commutative());
        let (x, y, z) = j.right_distributivity_witness().expect("right distributivity fails");
        assert_ne!(j.mul(j.add(x, y), z), j.add(j.mul(x, z), j.mul(y, z)));
        let units = j.multiplicative_group();
        assert_eq!(units.order(), 8);
        assert!(is_isomorphic(&units, &quaternion_group()).is_some());
        assert_eq!(j.multiplicative_center().len(), 2);
        assert!((1..9).all(|x| j.additive_order(x) == 3));
    }

    #[test]
    fn multiplicative_centers_are_nontrivial() {
        for q in [3, 4, 5, 7, 8, 9] {
            assert_eq!(nearfield_from_field(&gf(q)).multiplicative_center().len(), q - 1);
        }
        assert!(build_dickson_j9().multiplicative_center().len() > 1);
    }

    #[test]
    fn affine_from_nearfield() {
        let s3 = affine_group_from_nearfield(&nearfield_from_field(&gf(3))).unwrap();
        assert!(is_isomorphic(&s3, &crate::group::symmetric_group(3).unwrap()).is_some());
        let gj = affine_group_from_nearfield(&build_dickson_j9()).unwrap();
        let g9 = build_affine_group(&gf(9)).unwrap();
        assert_eq!(gj.order(), 72);
        assert!(gj.verify_axioms().is_ok());
        assert!(is_isomorphic(&gj, &g9).is_none());
    }

    #[test]
    fn extraction_round_trips() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let g = build_affine_group(&gf(q)).unwrap();
            let a = q - 1; // (1,1)
            let ext = nearfield_from_group(&g, a).unwrap();
            assert!(ext.near_field.is_field(), "q={q}");
            assert!(nearfield_isomorphism(&ext.near_field, &nearfield_from_field(&gf(q))).is_some());
            let split = split_as_semidirect(&g, &ext).unwrap();
            assert_eq!(split.complement.len(), q - 1);
            let back = affine_group_from_nearfield(&ext.near_field).unwrap();
            assert!(is_isomorphic(&back, &g).is_some());
        }
    }

    #[test]
    fn j9_extraction() {
        let g = affine_group_from_nearfield(&build_dickson_j9()).unwrap();
        let ext = nearfield_from_group(&g, 8).unwrap();
        assert!(!ext.near_field.is_multiplicatively_commutative());
        assert!(nearfield_isomorphism(&ext.near_field, &build_dickson_j9()).is_some());
        assert!(nearfield_isomorphism(&ext.near_field, &nearfield_from_field(&gf(9))).is_none());
        split_as_semidirect(&g, &ext).unwrap();
    }

    #[test]
    fn cyclic_group_fails_centralizer_check() {
        let z4 = cyclic_group(4).unwrap();
        assert!(matches!(nearfield_from_group(&z4, 1), Err(NearFieldError::CentralizerMismatch { .. })));
        assert_eq!(nearfield_from_group(&z4, 0).unwrap_err(), NearFieldError::IdentityElement);
    }

    #[test]
    fn json_round_trip() {
        let j = build_dickson_j9();
        let text = serde_json::to_string(&j.to_json()).unwrap();
        let back: NearFieldJson = serde_json::from_str(&text).unwrap();
        assert_eq!(NearField::from_json(&back).unwrap(), j);
    }
}
