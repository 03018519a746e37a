//! 2-cocycles on subgroups, characters of the algebras `A(K, phi)` in the
//! centre of `G x G'`, and the anyon permutations they induce.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::induce_character;
use crate::cyclo::{CycJsonError, CycNum, CycNumJson, Rational};
use crate::double::{format_permutation, DoubleError, QuantumDouble};
use crate::group::{
    build_affine_group, build_galois_field, FiniteGroup, GaloisField, GroupError, GroupOps, ProductGroup, Subgroup,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TrivalgError {
    #[error("cocycle support is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("cocycle identity fails at (f, g, h) = ({f}, {g}, {h})")]
    CocycleIdentity { f: usize, g: usize, h: usize },
    #[error("cocycle value at ({g}, {h}) is zero")]
    ZeroValue { g: usize, h: usize },
    #[error("expected {expected} cocycle values, got {got}")]
    Length { got: usize, expected: usize },
    #[error("multiplicity of X{x} (x) X'{y} is {value}, not an integer")]
    NonIntegral { x: usize, y: usize, value: String },
    #[error("decomposition leaves a residual at (g, h) = ({g}, {h}): character {got}, reconstruction {expected}")]
    Residual { g: usize, h: usize, got: String, expected: String },
    #[error("result is not of the form PJ: {0}")]
    NotPJ(String),
    #[error("decomposition is not a permutation")]
    NotPermutation,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error("bad cocycle JSON: {0}")]
    Json(String),
}

impl From<CycJsonError> for TrivalgError {
    fn from(e: CycJsonError) -> Self {
        TrivalgError::Json(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CocycleValues {
    /// `phi(g, h) = zeta_n^exps[g][h]`
    Phases {
        n: u32,
        exps: Vec<u32>,
    },
    Exact(Vec<CycNum>),
}

/// A function `K x K -> C^x` on a subgroup `K` of an ambient group, indexed by
/// ambient elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle2 {
    ambient_order: usize,
    members: Vec<usize>,
    local: Vec<usize>,
    values: CocycleValues,
}

impl Cocycle2 {
    fn build(k: &Subgroup, values: CocycleValues) -> Result<Self, TrivalgError> {
        let expected = k.order() * k.order();
        let got = match &values {
            CocycleValues::Phases { exps, .. } => exps.len(),
            CocycleValues::Exact(v) => v.len(),
        };
        if got != expected {
            return Err(TrivalgError::Length { got, expected });
        }
        Ok(Cocycle2 {
            ambient_order: k.parent_order(),
            members: k.members().to_vec(),
            local: k.local_index_map(),
            values,
        })
    }

    pub fn trivial(k: &Subgroup) -> Self {
        Self::build(k, CocycleValues::Phases { n: 1, exps: vec![0; k.order() * k.order()] }).expect("sizes match")
    }

    /// Values `zeta_n^exps[i * |K| + j]` on member pairs in member order.
    pub fn from_phases(k: &Subgroup, n: u32, exps: Vec<u32>) -> Result<Self, TrivalgError> {
        let exps = exps.into_iter().map(|e| e % n).collect();
        Self::build(k, CocycleValues::Phases { n, exps })
    }

    pub fn from_values(k: &Subgroup, values: Vec<CycNum>) -> Result<Self, TrivalgError> {
        Self::build(k, CocycleValues::Exact(values))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn ambient_order(&self) -> usize {
        self.ambient_order
    }
    pub fn contains(&self, g: usize) -> bool {
        self.local[g] != usize::MAX
    }
    pub fn values(&self) -> &CocycleValues {
        &self.values
    }

    fn slot(&self, g: usize, h: usize) -> usize {
        self.local[g] * self.members.len() + self.local[h]
    }

    pub fn value(&self, g: usize, h: usize) -> CycNum {
        match &self.values {
            CocycleValues::Phases { n, exps } => CycNum::zeta(*n, exps[self.slot(g, h)] as i64),
            CocycleValues::Exact(v) => v[self.slot(g, h)].clone(),
        }
    }

    /// Copy with one value replaced; the result is generally not a cocycle.
    pub fn with_value(&self, g: usize, h: usize, v: CycNum) -> Self {
        let slot = self.slot(g, h);
        let mut vals: Vec<CycNum> = match &self.values {
            CocycleValues::Phases { n, exps } => exps.iter().map(|&e| CycNum::zeta(*n, e as i64)).collect(),
            CocycleValues::Exact(v) => v.clone(),
        };
        vals[slot] = v;
        Cocycle2 { values: CocycleValues::Exact(vals), ..self.clone() }
    }

    pub fn to_json(&self) -> CocycleJson {
        let k = self.members.len();
        CocycleJson {
            ambient_order: self.ambient_order,
            members: self.members.clone(),
            values: (0..k)
                .map(|i| (0..k).map(|j| self.value(self.members[i], self.members[j]).to_json()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &CocycleJson) -> Result<Self, TrivalgError> {
        let k = Subgroup::from_members(j.ambient_order, j.members.clone());
        if k.members() != j.members.as_slice() {
            return Err(TrivalgError::Json("members must be sorted and distinct".into()));
        }
        if j.values.len() != k.order() || j.values.iter().any(|r| r.len() != k.order()) {
            return Err(TrivalgError::Length {
                got: j.values.iter().map(Vec::len).sum(),
                expected: k.order() * k.order(),
            });
        }
        let vals = j.values.iter().flatten().map(CycNum::from_json).collect::<Result<Vec<_>, _>>()?;
        Self::from_values(&k, vals)
    }
}

/// JSON form of a cocycle: `values[i][j] = phi(members[i], members[j])`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CocycleJson {
    pub ambient_order: usize,
    pub members: Vec<usize>,
    pub values: Vec<Vec<CycNumJson>>,
}

/// Checks that the support is a subgroup, all values are nonzero and
/// `phi(fg,h) phi(f,g) = phi(f,gh) phi(g,h)` on every triple.
pub fn validate_cocycle<G: GroupOps + Sync>(group: &G, phi: &Cocycle2) -> Result<(), TrivalgError> {
    let mem = &phi.members;
    for &a in mem {
        for &b in mem {
            let c = group.mul(a, b);
            if !phi.contains(c) {
                return Err(TrivalgError::NotSubgroup(format!("{a} * {b} = {c} lies outside")));
            }
        }
    }
    match &phi.values {
        CocycleValues::Phases { n, exps } => {
            let n = *n;
            let e = |g, h| exps[phi.slot(g, h)];
            let bad = mem.par_iter().find_map_first(|&f| {
                for &g in mem {
                    let fg = group.mul(f, g);
                    let efg = e(f, g);
                    for &h in mem {
                        if (e(fg, h) + efg) % n != (e(f, group.mul(g, h)) + e(g, h)) % n {
                            return Some((f, g, h));
                        }
                    }
                }
                None
            });
            if let Some((f, g, h)) = bad {
                return Err(TrivalgError::CocycleIdentity { f, g, h });
            }
        }
        CocycleValues::Exact(vals) => {
            for &g in mem {
                for &h in mem {
                    if vals[phi.slot(g, h)].is_zero() {
                        return Err(TrivalgError::ZeroValue { g, h });
                    }
                }
            }
            let bad = mem.par_iter().find_map_first(|&f| {
                for &g in mem {
                    let fg = group.mul(f, g);
                    for &h in mem {
                        let lhs = &vals[phi.slot(fg, h)] * &vals[phi.slot(f, g)];
                        let rhs = &vals[phi.slot(f, group.mul(g, h))] * &vals[phi.slot(g, h)];
                        if lhs != rhs {
                            return Some((f, g, h));
                        }
                    }
                }
                None
            });
            if let Some((f, g, h)) = bad {
                return Err(TrivalgError::CocycleIdentity { f, g, h });
            }
        }
    }
    Ok(())
}

/// `phi(g|h) = phi(g, h) phi(g h g^-1, g)^-1` for `g, h` in `K`.
pub fn phi_bar<G: GroupOps>(group: &G, phi: &Cocycle2, g: usize, h: usize) -> CycNum {
    let ghg = group.conj(g, h);
    match &phi.values {
        CocycleValues::Phases { n, exps } => {
            let e = exps[phi.slot(g, h)] as i64 - exps[phi.slot(ghg, g)] as i64;
            CycNum::zeta(*n, e)
        }
        CocycleValues::Exact(v) => &v[phi.slot(g, h)] * &v[phi.slot(ghg, g)].inv().expect("cocycle values are nonzero"),
    }
}

/// The character of `A(K, phi)` on the basis elements `g h*`:
/// `(1/|K|) [gh = hg] sum_{x : xgx^-1, xhx^-1 in K} phi(xgx^-1 | xhx^-1)`.
pub struct AlgebraCharacter<'a, G: GroupOps> {
    group: &'a G,
    phi: &'a Cocycle2,
    m: u32,
    normal: bool,
}

impl<'a, G: GroupOps + Sync> AlgebraCharacter<'a, G> {
    /// Values are returned in `Q(zeta_m)`; phase cocycles need `n | m`.
    pub fn new(group: &'a G, phi: &'a Cocycle2, m: u32) -> Result<Self, TrivalgError> {
        if phi.ambient_order != group.order() {
            return Err(TrivalgError::Length { got: phi.ambient_order, expected: group.order() });
        }
        validate_cocycle(group, phi)?;
        let normal = phi.members.iter().all(|&k| (0..group.order()).all(|x| phi.contains(group.conj(x, k))));
        Ok(AlgebraCharacter { group, phi, m, normal })
    }

    pub fn eval(&self, g: usize, h: usize) -> CycNum {
        let gr = self.group;
        if !gr.commute(g, h) || (self.normal && !(self.phi.contains(g) && self.phi.contains(h))) {
            return CycNum::zero(self.m);
        }
        let k = self.phi.order() as i128;
        match &self.phi.values {
            CocycleValues::Phases { n, exps } => {
                let n = *n as usize;
                let mut counts = vec![0i128; n];
                for x in 0..gr.order() {
                    let g1 = gr.conj(x, g);
                    if !self.phi.contains(g1) {
                        continue;
                    }
                    let h1 = gr.conj(x, h);
                    if !self.phi.contains(h1) {
                        continue;
                    }
                    let e =
                        exps[self.phi.slot(g1, h1)] as usize + n - exps[self.phi.slot(gr.conj(g1, h1), g1)] as usize;
                    counts[e % n] += 1;
                }
                CycNum::from_raw(n as u32, &counts, k).embed(self.m)
            }
            CocycleValues::Exact(_) => {
                let mut acc = CycNum::zero(self.m);
                for x in 0..gr.order() {
                    let (g1, h1) = (gr.conj(x, g), gr.conj(x, h));
                    if self.phi.contains(g1) && self.phi.contains(h1) {
                        acc += &phi_bar(gr, self.phi, g1, h1).embed(self.m);
                    }
                }
                acc.scale(Rational::new(1, k))
            }
        }
    }
}

/// Exact rank of a matrix over a cyclotomic field.
pub fn cyc_rank(mut rows: Vec<Vec<CycNum>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("pivot is nonzero");
        let pivot: Vec<CycNum> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for (dst, pv) in rows[r].iter_mut().zip(&pivot) {
                    *dst = &*dst - &(&f * pv);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Whether `[phi(x|y)]_{x in k1, y in k2}` is invertible.
pub fn check_nondegenerate<G: GroupOps>(group: &G, phi: &Cocycle2, k1: &[usize], k2: &[usize]) -> bool {
    if k1.len() != k2.len() {
        return false;
    }
    let rows = k1.iter().map(|&x| k2.iter().map(|&y| phi_bar(group, phi, x, y)).collect()).collect();
    cyc_rank(rows) == k1.len()
}

/// `K_1 = K ∩ (G x e)` and `K_2 = K ∩ (e x G')`, as product indices.
pub fn factor_intersections(prod: &ProductGroup<'_>, members: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (e1, e2) = (prod.left.identity(), prod.right.identity());
    let k1 = members.iter().copied().filter(|&x| prod.split(x).1 == e2).collect();
    let k2 = members.iter().copied().filter(|&x| prod.split(x).0 == e1).collect();
    (k1, k2)
}

/// `Delta(G) = {(g, g)}` inside `G x G`.
pub fn diagonal_subgroup(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    Subgroup::from_sorted(n * n, (0..n).map(|x| x * n + x).collect())
}

/// Multiplicities `M[X][X']` of `X ⊠ X'` in a character of `D(G x G')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub multiplicities: Vec<i128>,
    pub permutation: Option<Vec<usize>>,
    /// `sum M[X][X'] qdim(X) qdim(X')`, recorded without a target value.
    pub dim_total: i128,
    /// Conjugated sample points on which the reconstruction was compared.
    pub points_checked: usize,
}

impl EquivalenceReport {
    pub fn get(&self, x: usize, y: usize) -> i128 {
        self.multiplicities[x * self.cols + y]
    }
    pub fn is_permutation(&self) -> bool {
        self.permutation.is_some()
    }

    pub fn to_json(&self, names1: &[String], names2: &[String]) -> EquivalenceReportJson {
        let mut entries = Vec::new();
        for x in 0..self.rows {
            for y in 0..self.cols {
                let v = self.get(x, y);
                if v != 0 {
                    entries.push(MultiplicityJson {
                        x,
                        y,
                        x_name: names1[x].clone(),
                        y_name: names2[y].clone(),
                        multiplicity: v,
                    });
                }
            }
        }
        EquivalenceReportJson {
            rows: self.rows,
            cols: self.cols,
            is_permutation: self.is_permutation(),
            permutation: self.permutation.clone(),
            multiplicities: entries,
            dim_total: self.dim_total,
            points_checked: self.points_checked,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MultiplicityJson {
    pub x: usize,
    pub y: usize,
    pub x_name: String,
    pub y_name: String,
    pub multiplicity: i128,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EquivalenceReportJson {
    pub rows: usize,
    pub cols: usize,
    pub is_permutation: bool,
    pub permutation: Option<Vec<usize>>,
    pub multiplicities: Vec<MultiplicityJson>,
    pub dim_total: i128,
    pub points_checked: usize,
}

/// Decomposes a character of `D(G x G')`, given on product indices
/// `chi(g, h)` with `g = (g1, g2)`, `h = (h1, h2)`.
///
/// Only orbit representatives `((g_j, g'_k), (a, a'))` are needed for the
/// projections; the result is then compared against `chi` on one conjugated
/// copy of every representative, which catches inputs that are not class
/// functions.
pub fn decompose_over_double(
    qd1: &QuantumDouble,
    qd2: &QuantumDouble,
    chi: impl Fn(usize, usize) -> CycNum + Sync,
) -> Result<EquivalenceReport, TrivalgError> {
    let (g1, g2) = (qd1.group(), qd2.group());
    let prod = ProductGroup::new(g1, g2);
    let m = num_integer::lcm(qd1.modulus(), qd2.modulus());
    let (n1, n2) = (qd1.len(), qd2.len());

    let blocks: Vec<(usize, usize)> =
        qd1.class_order().iter().flat_map(|&c1| qd2.class_order().iter().map(move |&c2| (c1, c2))).collect();
    let results: Vec<Vec<(usize, usize, i128)>> = blocks
        .par_iter()
        .map(|&(c1, c2)| {
            let (z1, z2) = (qd1.centralizer(c1), qd2.centralizer(c2));
            let (reps1, reps2) = (z1.class_reps(), z2.class_reps());
            let (t1, t2) = (&z1.table, &z2.table);
            let h = prod.pair(z1.rep, z2.rep);
            let vals: Vec<Vec<CycNum>> =
                reps1.iter().map(|&x| reps2.iter().map(|&y| chi(prod.pair(x, y), h).embed(m)).collect()).collect();
            let conj1: Vec<Vec<CycNum>> =
                (0..t1.len()).map(|i| t1.row(i).iter().map(|v| v.conj().embed(m)).collect()).collect();
            let conj2: Vec<Vec<CycNum>> =
                (0..t2.len()).map(|j| t2.row(j).iter().map(|v| v.conj().embed(m)).collect()).collect();
            let scale = Rational::new(1, (z1.order() * z2.order()) as i128);
            let mut out = Vec::new();
            for (i, c1row) in conj1.iter().enumerate() {
                let partial: Vec<CycNum> = (0..reps2.len())
                    .map(|q| {
                        let mut acc = CycNum::zero(m);
                        for (p, cv) in c1row.iter().enumerate() {
                            if !vals[p][q].is_zero() {
                                acc += &(cv * &vals[p][q]).scale(Rational::from_integer(t1.class_size(p) as i128));
                            }
                        }
                        acc
                    })
                    .collect();
                for (j, c2row) in conj2.iter().enumerate() {
                    let mut acc = CycNum::zero(m);
                    for (q, cv) in c2row.iter().enumerate() {
                        if !partial[q].is_zero() {
                            acc += &(cv * &partial[q]).scale(Rational::from_integer(t2.class_size(q) as i128));
                        }
                    }
                    let v = acc.scale(scale);
                    let (x, y) = (qd1.anyon(c1, i), qd2.anyon(c2, j));
                    match v.as_integer() {
                        Some(0) => {}
                        Some(k) => out.push((x, y, k)),
                        None => return Err(TrivalgError::NonIntegral { x, y, value: v.to_string() }),
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;

    let mut multiplicities = vec![0i128; n1 * n2];
    for (x, y, k) in results.into_iter().flatten() {
        multiplicities[x * n2 + y] = k;
    }

    // Reconstruction at conjugated copies of the orbit representatives.
    let nonzero: Vec<(usize, usize, i128)> =
        (0..n1 * n2).filter(|&i| multiplicities[i] != 0).map(|i| (i / n2, i % n2, multiplicities[i])).collect();
    let points: Vec<(usize, usize)> = qd1
        .double_classes()
        .iter()
        .flat_map(|&(a, b, _)| {
            qd2.double_classes().into_iter().map(move |(c, d, _)| (prod.pair(a, c), prod.pair(b, d)))
        })
        .collect();
    let bad = points.par_iter().enumerate().find_map_first(|(i, &(g, h))| {
        let x = prod.pair((i * 7919 + 1) % g1.order(), (i * 104_729 + 3) % g2.order());
        let (g, h) = (prod.conj(x, g), prod.conj(x, h));
        let got = chi(g, h).embed(m);
        let ((ga, gb), (ha, hb)) = (prod.split(g), prod.split(h));
        let mut want = CycNum::zero(m);
        for &(x1, x2, k) in &nonzero {
            if qd1.anyons()[x1].class != qd1.classes().class_of[ha]
                || qd2.anyons()[x2].class != qd2.classes().class_of[hb]
            {
                continue;
            }
            let t =
                (qd1.anyon_character(x1, ga, ha) * qd2.anyon_character(x2, gb, hb)).scale(Rational::from_integer(k));
            want += &t.embed(m);
        }
        (got != want).then(|| TrivalgError::Residual { g, h, got: got.to_string(), expected: want.to_string() })
    });
    if let Some(e) = bad {
        return Err(e);
    }

    let permutation = (n1 == n2 && nonzero.len() == n1 && nonzero.iter().all(|&(_, _, k)| k == 1) && {
        let mut cols = vec![false; n2];
        nonzero.iter().all(|&(_, y, _)| !std::mem::replace(&mut cols[y], true))
    })
    .then(|| nonzero.iter().map(|&(_, y, _)| y).collect());
    let dim_total = nonzero.iter().map(|&(x, y, k)| k * (qd1.anyons()[x].qdim * qd2.anyons()[y].qdim) as i128).sum();
    Ok(EquivalenceReport { rows: n1, cols: n2, multiplicities, permutation, dim_total, points_checked: points.len() })
}

/// Character of `A(Delta(G), 1)` in closed form:
/// `[gh = hg] [g1 h1* ~ g2 h2*] |Z(g1) ∩ Z(h1)|`.
pub fn diagonal_character_closed_form(g: &FiniteGroup, x: usize, y: usize) -> i128 {
    let prod = ProductGroup::new(g, g);
    let ((g1, g2), (h1, h2)) = (prod.split(x), prod.split(y));
    if !g.commute(g1, h1) || !g.commute(g2, h2) {
        return 0;
    }
    if !(0..g.order()).any(|k| g.conj(k, g1) == g2 && g.conj(k, h1) == h2) {
        return 0;
    }
    (0..g.order()).filter(|&k| g.commute(k, g1) && g.commute(k, h1)).count() as i128
}

/// The permutation `X -> X'` read off from `A(Delta(G), 1)`.
pub fn diagonal_equivalence(qd: &QuantumDouble) -> Result<EquivalenceReport, TrivalgError> {
    let g = qd.group();
    let prod = ProductGroup::new(g, g);
    let delta = Cocycle2::trivial(&diagonal_subgroup(g));
    let chi = AlgebraCharacter::new(&prod, &delta, qd.modulus())?;
    decompose_over_double(qd, qd, |x, y| chi.eval(x, y))
}

/// `AGL(1, q)` with the subgroup
/// `U = {((a1, alpha), (a2, alpha^-1))}` of `G x G` and the cocycle
/// `phi(g, h) = omega^{tr(alpha a2 b1)}`, `omega = zeta_p^k`.
#[derive(Clone, Debug)]
pub struct AffineData {
    pub field: GaloisField,
    pub group: FiniteGroup,
    pub u: Subgroup,
    pub phi: Cocycle2,
    /// Power of `zeta_p` used as `omega`.
    pub omega_power: u32,
}

impl AffineData {
    pub fn q(&self) -> usize {
        self.field.q
    }

    /// `(a, alpha)` to its group index.
    pub fn element(&self, a: usize, alpha: usize) -> usize {
        a * (self.q() - 1) + alpha - 1
    }

    /// Group index to `(a, alpha)`.
    pub fn coords(&self, g: usize) -> (usize, usize) {
        (g / (self.q() - 1), g % (self.q() - 1) + 1)
    }

    pub fn product(&self) -> ProductGroup<'_> {
        ProductGroup::new(&self.group, &self.group)
    }

    /// The translation subgroup `K = {(a, 1)}`.
    pub fn translations(&self) -> Subgroup {
        Subgroup::from_members(self.group.order(), (0..self.q()).map(|a| self.element(a, 1)).collect())
    }

    /// Closed form of the character of `A(U, phi)`:
    /// `q - 1` on commuting pairs of `U` with `alpha != 1` or `beta != 1`, and
    /// `(q - 1)` or `-1` according to `a1 b2 = a2 b1` when both are translations.
    pub fn closed_form(&self, x: usize, y: usize) -> i128 {
        let prod = self.product();
        if !self.u.contains(x) || !self.u.contains(y) || !prod.commute(x, y) {
            return 0;
        }
        let q = self.q() as i128;
        let ((g1, g2), (h1, h2)) = (prod.split(x), prod.split(y));
        let ((a1, al), (a2, _)) = (self.coords(g1), self.coords(g2));
        let ((b1, be), (b2, _)) = (self.coords(h1), self.coords(h2));
        if al != 1 || be != 1 {
            return q - 1;
        }
        let f = &self.field;
        if f.mul(a1, b2) == f.mul(a2, b1) {
            q - 1
        } else {
            -1
        }
    }
}

pub fn affine_u_and_phi(q: usize) -> Result<AffineData, TrivalgError> {
    affine_u_and_phi_with_root(q, 1)
}

/// As [`affine_u_and_phi`] with `omega = zeta_p^k`, `k` prime to `p`.
pub fn affine_u_and_phi_with_root(q: usize, k: u32) -> Result<AffineData, TrivalgError> {
    let field = build_galois_field(q)?;
    let group = build_affine_group(&field)?;
    let n = group.order();
    let mut members = Vec::with_capacity(q * q * (q - 1));
    let elem = |a: usize, al: usize| a * (q - 1) + al - 1;
    for a1 in 0..q {
        for a2 in 0..q {
            for al in 1..q {
                let ali = field.inv(al).expect("units are invertible");
                members.push(elem(a1, al) * n + elem(a2, ali));
            }
        }
    }
    let u = Subgroup::from_members(n * n, members);
    let p = field.p as u32;
    let trace: Vec<u32> = (0..q).map(|a| field.trace(a) as u32).collect();
    let coords = |g: usize| (g / (q - 1), g % (q - 1) + 1);
    let mut exps = Vec::with_capacity(u.order() * u.order());
    for &x in u.members() {
        let (a2, al) = (coords(x % n).0, coords(x / n).1);
        let t = field.mul(al, a2);
        for &y in u.members() {
            let b1 = coords(y / n).0;
            exps.push(trace[field.mul(t, b1)] * k % p);
        }
    }
    let phi = Cocycle2::from_phases(&u, p, exps)?;
    Ok(AffineData { field, group, u, phi, omega_power: k })
}

/// `Psi(g h*) = sum_X chi_X ⊠ chi_{(class(x^-1), rho)}` over all anyons of
/// `D(G)`, on product indices of `G x G`.
pub fn psi_character(qd: &QuantumDouble, x: usize, y: usize) -> CycNum {
    let prod = ProductGroup::new(qd.group(), qd.group());
    let ((g1, g2), (h1, h2)) = (prod.split(x), prod.split(y));
    let mut acc = CycNum::zero(qd.modulus());
    for a in 0..qd.len() {
        acc += &(qd.anyon_character(a, g1, h1) * qd.anyon_character(qd.flux_inverse(a), g2, h2));
    }
    acc
}

/// `Gamma = (chi_C - chi_F) ⊠ (chi_C - chi_F)`.
pub fn gamma_character(qd: &QuantumDouble, c: usize, f: usize, x: usize, y: usize) -> CycNum {
    let prod = ProductGroup::new(qd.group(), qd.group());
    let ((g1, g2), (h1, h2)) = (prod.split(x), prod.split(y));
    let d1 = qd.anyon_character(c, g1, h1) - qd.anyon_character(f, g1, h1);
    let d2 = qd.anyon_character(c, g2, h2) - qd.anyon_character(f, g2, h2);
    d1 * d2
}

/// The chargeon `C = (e, Ind pi)` and fluxion `F = (class of (1,1), 1)` of
/// `D(AGL(1, q))`, with `pi` induced from the character `a -> zeta_p^tr(a)` of
/// the translations.
pub fn affine_chargeon_fluxion(qd: &QuantumDouble, data: &AffineData) -> (usize, usize) {
    let g = qd.group();
    let k = data.translations();
    let p = data.field.p as u32;
    let psi: Vec<CycNum> =
        k.members().iter().map(|&t| CycNum::zeta(p, data.field.trace(data.coords(t).0) as i64)).collect();
    let ind = induce_character(g, &k, &psi).expect("characters of abelian groups are class functions");
    let e_class = qd.classes().class_of[g.identity()];
    let z = qd.centralizer(e_class);
    let irrep = (0..z.table.len())
        .find(|&i| (0..g.order()).all(|x| z.value(i, x).embed(qd.modulus()) == ind[x].embed(qd.modulus())))
        .expect("the induced character is irreducible");
    let f_class = qd.classes().class_of[data.element(1, 1)];
    (qd.anyon(e_class, irrep), qd.anyon(f_class, 0))
}

/// Auto-equivalence of `Z(AGL(1, q))` obtained from `A(U, phi)` followed by
/// the `A(Delta(G), 1)` equivalence.
#[derive(Clone, Debug)]
pub struct Theorem34 {
    pub q: usize,
    pub names: Vec<String>,
    pub permutation: Vec<usize>,
    pub from_u: EquivalenceReport,
    pub from_delta: EquivalenceReport,
    pub c: usize,
    pub f: usize,
    pub j: Vec<usize>,
}

impl Theorem34 {
    pub fn to_json(&self) -> Theorem34Json {
        Theorem34Json {
            q: self.q,
            permutation: self
                .permutation
                .iter()
                .enumerate()
                .map(|(x, &y)| [self.names[x].clone(), self.names[y].clone()])
                .collect(),
            cycles: format_permutation(&self.names, &self.permutation),
            chargeon: self.names[self.c].clone(),
            fluxion: self.names[self.f].clone(),
            charge_conjugation: format_permutation(&self.names, &self.j),
            from_u: self.from_u.to_json(&self.names, &self.names),
            form_pj_verified: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Theorem34Json {
    pub q: usize,
    pub permutation: Vec<[String; 2]>,
    pub cycles: String,
    pub chargeon: String,
    pub fluxion: String,
    pub charge_conjugation: String,
    pub from_u: EquivalenceReportJson,
    pub form_pj_verified: bool,
}

impl fmt::Display for Theorem34 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "permutation: {}; J = {}; form PJ verified",
            format_permutation(&self.names, &self.permutation),
            format_permutation(&self.names, &self.j)
        )
    }
}

pub fn theorem34_permutation(q: usize) -> Result<Theorem34, TrivalgError> {
    theorem34_with_root(q, 1)
}

/// As [`theorem34_permutation`] with `omega = zeta_p^k`.
pub fn theorem34_with_root(q: usize, k: u32) -> Result<Theorem34, TrivalgError> {
    let data = affine_u_and_phi_with_root(q, k)?;
    let qd = QuantumDouble::new(data.group.clone());
    let prod = data.product();
    let chi = AlgebraCharacter::new(&prod, &data.phi, qd.modulus())?;
    let from_u = decompose_over_double(&qd, &qd, |x, y| chi.eval(x, y))?;
    let from_delta = diagonal_equivalence(&qd)?;
    let (sigma, delta) = match (&from_u.permutation, &from_delta.permutation) {
        (Some(s), Some(d)) => (s.clone(), d.clone()),
        _ => return Err(TrivalgError::NotPermutation),
    };
    let permutation: Vec<usize> = sigma.iter().map(|&y| delta[y]).collect();
    let (c, f) = affine_chargeon_fluxion(&qd, &data);
    let j = qd.charge_conjugation();
    let swap = |x: usize| {
        if x == c {
            f
        } else if x == f {
            c
        } else {
            x
        }
    };
    let names = qd.names().to_vec();
    if let Some(x) = (0..qd.len()).find(|&x| permutation[x] != swap(j[x])) {
        return Err(TrivalgError::NotPJ(format!(
            "{} maps to {}, PJ gives {}",
            names[x],
            names[permutation[x]],
            names[swap(j[x])]
        )));
    }
    Ok(Theorem34 { q, names, permutation, from_u, from_delta, c, f, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, symmetric_group};

    #[test]
    fn trivial_cocycle_and_phi_bar() {
        let g = symmetric_group(3).unwrap();
        let k = Subgroup::whole(6);
        let phi = Cocycle2::trivial(&k);
        validate_cocycle(&g, &phi).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert!(phi_bar(&g, &phi, a, b).is_one());
            }
        }
    }

    #[test]
    fn whole_group_and_trivial_subgroup() {
        let g = symmetric_group(3).unwrap();
        let whole = Cocycle2::trivial(&Subgroup::whole(6));
        let chi = AlgebraCharacter::new(&g, &whole, 6).unwrap();
        let triv = Cocycle2::trivial(&Subgroup::from_members(6, vec![0]));
        let chi_e = AlgebraCharacter::new(&g, &triv, 6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                if g.commute(a, b) {
                    assert!(chi.eval(a, b).is_one());
                    assert_eq!(chi_e.eval(a, b), CycNum::from_int(if a == 0 && b == 0 { 6 } else { 0 }));
                }
            }
        }
    }

    #[test]
    fn abelian_phi_bar_is_commutator_ratio() {
        let data = affine_u_and_phi(2).unwrap();
        let prod = data.product();
        validate_cocycle(&prod, &data.phi).unwrap();
        for &x in data.u.members() {
            for &y in data.u.members() {
                if prod.commute(x, y) && prod.conj(x, y) == y {
                    let want = data.phi.value(x, y) * data.phi.value(y, x).inv().unwrap();
                    assert_eq!(phi_bar(&prod, &data.phi, x, y), want);
                }
                let v = data.phi.value(x, y);
                assert!(v == CycNum::one() || v == CycNum::from_int(-1));
            }
        }
    }

    #[test]
    fn perturbed_cocycle_fails_with_witness() {
        let data = affine_u_and_phi(3).unwrap();
        let prod = data.product();
        validate_cocycle(&prod, &data.phi).unwrap();
        let (x, y) = (data.u.members()[4], data.u.members()[7]);
        let bad = data.phi.with_value(x, y, -data.phi.value(x, y));
        match validate_cocycle(&prod, &bad) {
            Err(TrivalgError::CocycleIdentity { f, g, h }) => {
                assert!([f, g, h].iter().any(|&t| t == x || t == y) || prod.mul(f, g) == x || prod.mul(g, h) == y);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn u_projects_onto_both_factors() {
        for q in [2, 3, 4, 5] {
            let data = affine_u_and_phi(q).unwrap();
            let prod = data.product();
            let n = data.group.order();
            assert_eq!(data.u.order(), q * q * (q - 1));
            for side in [0, 1] {
                let mut hit = vec![false; n];
                for &x in data.u.members() {
                    let (l, r) = prod.split(x);
                    hit[if side == 0 { l } else { r }] = true;
                }
                assert!(hit.iter().all(|&b| b));
            }
            assert!((0..n * n).all(|x| data.u.members().iter().all(|&k| data.u.contains(prod.conj(x, k)))));
        }
    }

    #[test]
    fn nondegeneracy() {
        let data = affine_u_and_phi(3).unwrap();
        let prod = data.product();
        let (k1, k2) = factor_intersections(&prod, data.u.members());
        assert_eq!((k1.len(), k2.len()), (3, 3));
        assert!(check_nondegenerate(&prod, &data.phi, &k1, &k2));
        let triv = Cocycle2::trivial(&data.u);
        assert!(!check_nondegenerate(&prod, &triv, &k1, &k2));
        let g = symmetric_group(3).unwrap();
        let gg = ProductGroup::new(&g, &g);
        let d = diagonal_subgroup(&g);
        let (d1, d2) = factor_intersections(&gg, d.members());
        assert_eq!((d1.len(), d2.len()), (1, 1));
        assert!(check_nondegenerate(&gg, &Cocycle2::trivial(&d), &d1, &d2));
    }

    #[test]
    fn diagonal_character_matches_closed_form() {
        let g = symmetric_group(3).unwrap();
        let prod = ProductGroup::new(&g, &g);
        let delta = Cocycle2::trivial(&diagonal_subgroup(&g));
        let chi = AlgebraCharacter::new(&prod, &delta, 6).unwrap();
        for x in 0..36 {
            for y in 0..36 {
                if prod.commute(x, y) {
                    assert_eq!(chi.eval(x, y), CycNum::from_int(diagonal_character_closed_form(&g, x, y)));
                }
            }
        }
    }

    #[test]
    fn diagonal_equivalence_is_charge_dual() {
        for g in [symmetric_group(3).unwrap(), cyclic_group(3).unwrap(), cyclic_group(4).unwrap()] {
            let qd = QuantumDouble::new(g);
            let rep = diagonal_equivalence(&qd).unwrap();
            let perm = rep.permutation.unwrap();
            assert_eq!(perm, (0..qd.len()).map(|x| qd.charge_dual(x)).collect::<Vec<_>>());
            assert_eq!(perm[0], 0);
        }
    }

    #[test]
    fn single_pair_decomposes_to_one_entry() {
        let qd = QuantumDouble::new(symmetric_group(3).unwrap());
        let prod = ProductGroup::new(qd.group(), qd.group());
        let rep = decompose_over_double(&qd, &qd, |x, y| {
            let ((g1, g2), (h1, h2)) = (prod.split(x), prod.split(y));
            qd.anyon_character(2, g1, h1) * qd.anyon_character(5, g2, h2)
        })
        .unwrap();
        assert_eq!(rep.multiplicities.iter().filter(|&&v| v != 0).count(), 1);
        assert_eq!(rep.get(2, 5), 1);
        assert!(!rep.is_permutation());
    }

    #[test]
    fn non_class_function_leaves_residual() {
        let qd = QuantumDouble::new(symmetric_group(3).unwrap());
        let bad = decompose_over_double(&qd, &qd, |x, y| CycNum::from_int(i128::from(x == 7 && y == 0)));
        assert!(matches!(bad, Err(TrivalgError::Residual { .. }) | Err(TrivalgError::NonIntegral { .. })));
    }

    #[test]
    fn q3_transposes_c_and_f() {
        let t = theorem34_permutation(3).unwrap();
        assert_eq!(format_permutation(&t.names, &t.permutation), "(C F)");
        assert_eq!((t.names[t.c].as_str(), t.names[t.f].as_str()), ("C", "F"));
        assert_eq!(t.to_string().lines().last().unwrap(), "permutation: (C F); J = identity; form PJ verified");
        let other_root = theorem34_with_root(3, 2).unwrap();
        assert_eq!(other_root.permutation, t.permutation);
    }

    #[test]
    fn q2_is_toric_code_exchange() {
        let t = theorem34_permutation(2).unwrap();
        assert_eq!(t.permutation.len(), 4);
        assert!(t.j.iter().enumerate().all(|(x, &y)| x == y));
        let (c, f) = (t.c, t.f);
        assert_eq!((t.permutation[c], t.permutation[f]), (f, c));
    }

    #[test]
    fn cocycle_json_round_trip() {
        let data = affine_u_and_phi(2).unwrap();
        let j = data.phi.to_json();
        let back = Cocycle2::from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap()).unwrap();
        for &x in data.u.members() {
            for &y in data.u.members() {
                assert_eq!(back.value(x, y), data.phi.value(x, y));
            }
        }
    }
}
