//! Anyons of the quantum double `D(G)`: labels, characters, S and T, charge
//! conjugation, Verlinde fusion and the comultiplication fusion oracle.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, CharacterTable};
use crate::cyclo::{CycMatrix, CycNum, CycNumJson, Rational};
use crate::group::{ClassStructure, FiniteGroup, GroupOps, Subgroup};

/// Fusion tensors are stored densely up to this many anyons.
pub const DENSE_FUSION_LIMIT: usize = 64;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("fusion multiplicity N[{x}][{y}][{z}] = {value} is not a non-negative integer")]
    BadMultiplicity { x: usize, y: usize, z: usize, value: String },
    #[error("multiplicity of anyon {index} is {value}, not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("unknown anyon {0:?}")]
    UnknownAnyon(String),
    #[error("modulus {m} is not a multiple of the group exponent {exponent}")]
    Modulus { m: u32, exponent: usize },
}

/// Centralizer `Z(a)` of a class representative with its character table.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub rep: usize,
    pub subgroup: Subgroup,
    /// Parent index -> local index in `subgroup.members()`.
    pub local: Vec<usize>,
    pub table: CharacterTable,
}

impl Centralizer {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Parent-group representatives of the classes of `Z(a)`, in table order.
    pub fn class_reps(&self) -> Vec<usize> {
        self.table.classes().classes.iter().map(|c| self.subgroup.members()[c.rep]).collect()
    }

    /// Character value of irrep `i` at a parent element of `Z(a)`.
    pub fn value(&self, irrep: usize, g: usize) -> &CycNum {
        self.table.value_at(irrep, self.local[g])
    }
}

/// A simple object `(class(a), pi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnyonLabel {
    pub index: usize,
    pub class: usize,
    pub class_rep: usize,
    pub irrep: usize,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub dim: usize,
    /// `|class| * dim`
    pub qdim: usize,
}

impl AnyonLabel {
    pub fn is_chargeon(&self, identity: usize) -> bool {
        self.class_rep == identity
    }
    pub fn is_fluxion(&self) -> bool {
        self.irrep == 0
    }
}

#[derive(Clone, Debug)]
pub struct QuantumDouble {
    group: FiniteGroup,
    m: u32,
    classes: ClassStructure,
    /// Class order used for anyons: identity class first, then by representative.
    class_order: Vec<usize>,
    /// `k_b` with `k_b a k_b^-1 = b` for the representative `a` of `b`'s class.
    conjugator: Vec<usize>,
    centralizers: Vec<Centralizer>,
    anyons: Vec<AnyonLabel>,
    first_anyon: Vec<usize>,
    names: Vec<String>,
}

impl QuantumDouble {
    /// Values live in `Q(zeta_e)`, `e` the exponent of `g`.
    pub fn new(group: FiniteGroup) -> Self {
        let e = group.exponent() as u32;
        Self::with_modulus(group, e).expect("the exponent divides itself")
    }

    /// Values live in `Q(zeta_m)`; `m` must be a multiple of the exponent.
    pub fn with_modulus(group: FiniteGroup, m: u32) -> Result<Self, DoubleError> {
        let exponent = group.exponent();
        if !(m as usize).is_multiple_of(exponent) {
            return Err(DoubleError::Modulus { m, exponent });
        }
        let classes = ClassStructure::new(&group);
        let id_class = classes.class_of[group.identity()];
        let mut class_order: Vec<usize> = (0..classes.len()).collect();
        class_order.sort_by_key(|&c| (c != id_class, classes.classes[c].rep));

        let mut conjugator = vec![usize::MAX; group.order()];
        for cl in &classes.classes {
            for x in 0..group.order() {
                let b = group.conj(x, cl.rep);
                if conjugator[b] == usize::MAX {
                    conjugator[b] = x;
                }
            }
            conjugator[cl.rep] = group.identity();
        }

        let centralizers: Vec<Centralizer> = classes
            .classes
            .par_iter()
            .map(|cl| {
                let subgroup = group.centralizer(cl.rep);
                let local = subgroup.local_index_map();
                let table = character_table(&group.subgroup_as_group(&subgroup)).embed(m);
                Centralizer { rep: cl.rep, subgroup, local, table }
            })
            .collect();

        let mut anyons = Vec::new();
        let mut first_anyon = vec![0; classes.len()];
        for &c in &class_order {
            first_anyon[c] = anyons.len();
            let z = &centralizers[c];
            for (irrep, &dim) in z.table.dims().iter().enumerate() {
                let class_size = classes.classes[c].size();
                anyons.push(AnyonLabel {
                    index: anyons.len(),
                    class: c,
                    class_rep: classes.classes[c].rep,
                    irrep,
                    class_size,
                    centralizer_order: z.order(),
                    dim,
                    qdim: class_size * dim,
                });
            }
        }
        let s3_like = group.order() == 6 && !group.is_abelian();
        let names = anyons
            .iter()
            .map(|x| {
                if s3_like {
                    ((b'A' + x.index as u8) as char).to_string()
                } else {
                    format!("({}, irrep#{})", group.name(x.class_rep), x.irrep)
                }
            })
            .collect();
        Ok(QuantumDouble { group, m, classes, class_order, conjugator, centralizers, anyons, first_anyon, names })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn modulus(&self) -> u32 {
        self.m
    }
    pub fn classes(&self) -> &ClassStructure {
        &self.classes
    }
    /// Classes in anyon order.
    pub fn class_order(&self) -> &[usize] {
        &self.class_order
    }
    pub fn anyons(&self) -> &[AnyonLabel] {
        &self.anyons
    }
    pub fn len(&self) -> usize {
        self.anyons.len()
    }
    pub fn is_empty(&self) -> bool {
        self.anyons.is_empty()
    }
    pub fn centralizer(&self, class: usize) -> &Centralizer {
        &self.centralizers[class]
    }
    pub fn conjugator(&self, b: usize) -> usize {
        self.conjugator[b]
    }
    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn anyon_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).or_else(|| name.parse().ok().filter(|&i| i < self.len()))
    }

    /// Anyon index of `(class, irrep)`.
    pub fn anyon(&self, class: usize, irrep: usize) -> usize {
        self.first_anyon[class] + irrep
    }

    /// `chi_X(g h*) = [h in class] [gh = hg] tr_pi(k_h^-1 g k_h)`.
    pub fn anyon_character(&self, x: usize, g: usize, h: usize) -> CycNum {
        let a = &self.anyons[x];
        if self.classes.class_of[h] != a.class || !self.group.commute(g, h) {
            return CycNum::zero(self.m);
        }
        let k = self.conjugator[h];
        let y = self.group.conj(self.group.inv(k), g);
        self.centralizers[a.class].value(a.irrep, y).clone()
    }

    /// Irrep of `Z(rep)` for `class` whose character matches `f` on the class
    /// representatives.
    fn find_irrep(&self, class: usize, f: impl Fn(usize) -> CycNum) -> usize {
        let z = &self.centralizers[class];
        let reps = z.class_reps();
        let vals: Vec<CycNum> = reps.iter().map(|&r| f(r)).collect();
        (0..z.table.len())
            .find(|&i| reps.iter().zip(&vals).all(|(&r, v)| z.value(i, r) == v))
            .expect("transported character is irreducible")
    }

    /// `(class(a^-1), rho)` with `rho` moved to the canonical centralizer,
    /// optionally conjugated.
    fn invert_flux(&self, x: usize, conjugate: bool) -> usize {
        let a = &self.anyons[x];
        let ainv = self.group.inv(a.class_rep);
        let target = self.classes.class_of[ainv];
        let k = self.conjugator[ainv];
        let z = &self.centralizers[a.class];
        let irrep = self.find_irrep(target, |y| {
            let v = z.value(a.irrep, self.group.conj(k, y));
            if conjugate {
                v.conj()
            } else {
                v.clone()
            }
        });
        self.anyon(target, irrep)
    }

    /// `X^v = (class(a^-1), pi*)`.
    pub fn charge_conjugate(&self, x: usize) -> usize {
        self.invert_flux(x, true)
    }

    /// `(class(a^-1), pi)`.
    pub fn flux_inverse(&self, x: usize) -> usize {
        self.invert_flux(x, false)
    }

    /// `(class(a), pi*)`.
    pub fn charge_dual(&self, x: usize) -> usize {
        let a = &self.anyons[x];
        self.anyon(a.class, self.centralizers[a.class].table.dual(a.irrep))
    }

    pub fn charge_conjugation(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.charge_conjugate(x)).collect()
    }

    /// The S matrix, row-major. Entries come from counting, per pair of
    /// classes, how often `(h a'^-1 h^-1, h^-1 a^-1 h)` lands in each pair of
    /// centralizer classes.
    pub fn s_matrix(&self) -> Vec<CycNum> {
        let n = self.len();
        let g = &self.group;
        let blocks: Vec<(usize, usize, Vec<CycNum>)> = self
            .class_order
            .iter()
            .flat_map(|&c1| self.class_order.iter().map(move |&c2| (c1, c2)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(c1, c2)| {
                let (z1, z2) = (&self.centralizers[c1], &self.centralizers[c2]);
                let (a1, a2) = (z1.rep, z2.rep);
                let (r1, r2) = (z1.table.classes().len(), z2.table.classes().len());
                let mut counts = vec![0i128; r1 * r2];
                let (a1i, a2i) = (g.inv(a1), g.inv(a2));
                for h in 0..g.order() {
                    let u = g.conj(h, a2i);
                    if !z1.subgroup.contains(u) {
                        continue;
                    }
                    let v = g.conj(g.inv(h), a1i);
                    counts[z1.table.class_of(z1.local[u]) * r2 + z2.table.class_of(z2.local[v])] += 1;
                }
                let scale = Rational::new(1, (z1.order() * z2.order()) as i128);
                let mut out = Vec::with_capacity(z1.table.len() * z2.table.len());
                for i in 0..z1.table.len() {
                    for j in 0..z2.table.len() {
                        let mut acc = CycNum::zero(self.m);
                        for p in 0..r1 {
                            for q in 0..r2 {
                                let c = counts[p * r2 + q];
                                if c != 0 {
                                    let t =
                                        (z1.table.value(i, p) * z2.table.value(j, q)).scale(Rational::from_integer(c));
                                    acc += &t;
                                }
                            }
                        }
                        out.push(acc.scale(scale));
                    }
                }
                (c1, c2, out)
            })
            .collect();
        let mut s = vec![CycNum::zero(self.m); n * n];
        for (c1, c2, vals) in blocks {
            let (d1, d2) = (self.centralizers[c1].table.len(), self.centralizers[c2].table.len());
            for i in 0..d1 {
                for j in 0..d2 {
                    s[self.anyon(c1, i) * n + self.anyon(c2, j)] = vals[i * d2 + j].clone();
                }
            }
        }
        s
    }

    /// Twists `T_X = tr_pi(a) / dim pi`.
    pub fn t_matrix(&self) -> Vec<CycNum> {
        self.anyons
            .iter()
            .map(|x| self.centralizers[x.class].value(x.irrep, x.class_rep).scale(Rational::new(1, x.dim as i128)))
            .collect()
    }

    /// Orbit representatives `(g, a)` of commuting pairs under simultaneous
    /// conjugation, with orbit sizes, grouped by the class of `a` in anyon
    /// class order.
    pub fn double_classes(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &c in &self.class_order {
            let z = &self.centralizers[c];
            let size = self.classes.classes[c].size();
            for (j, cl) in z.table.classes().classes.iter().enumerate() {
                out.push((z.subgroup.members()[cl.rep], z.rep, size * z.table.class_size(j)));
            }
        }
        out
    }

    /// Multiplicities of a `D(G)` class function given by its values on
    /// commuting pairs `(g, h)`. Only the double-class representatives are
    /// evaluated: `m_X = <chi(., a)|Z(a), pi>_{Z(a)}`.
    pub fn decompose(&self, chi: impl Fn(usize, usize) -> CycNum + Sync) -> Result<Vec<i128>, DoubleError> {
        let per_class: Vec<Vec<i128>> = self
            .class_order
            .par_iter()
            .map(|&c| {
                let z = &self.centralizers[c];
                let vals: Vec<CycNum> = z.class_reps().iter().map(|&g| chi(g, z.rep)).collect();
                (0..z.table.len())
                    .map(|i| {
                        let v = z.table.class_inner_product(&vals, z.table.row(i));
                        v.as_integer()
                            .ok_or_else(|| DoubleError::NonIntegral { index: self.anyon(c, i), value: v.to_string() })
                    })
                    .collect::<Result<Vec<i128>, DoubleError>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(per_class.concat())
    }

    /// `X (x) Y` decomposed through the comultiplication, independently of S.
    pub fn fusion_oracle(&self, x: usize, y: usize) -> Result<Vec<i128>, DoubleError> {
        let g = &self.group;
        let cx = &self.classes.classes[self.anyons[x].class];
        let ycls = self.anyons[y].class;
        self.decompose(|gg, h| {
            let mut acc = CycNum::zero(self.m);
            for &h1 in &cx.members {
                let h2 = g.mul(g.inv(h1), h);
                if self.classes.class_of[h2] != ycls || !g.commute(gg, h1) || !g.commute(gg, h2) {
                    continue;
                }
                acc += &(self.anyon_character(x, gg, h1) * self.anyon_character(y, gg, h2));
            }
            acc
        })
    }

    /// S, T, charge conjugation and (up to [`DENSE_FUSION_LIMIT`] anyons) the
    /// Verlinde fusion tensor.
    pub fn modular_data(&self) -> Result<ModularData, DoubleError> {
        let s = self.s_matrix();
        let t = self.t_matrix();
        let fusion = if self.len() <= DENSE_FUSION_LIMIT { Some(fusion_tensor(self, &s)?) } else { None };
        Ok(ModularData {
            order: self.group.order(),
            modulus: self.m,
            anyons: self.anyons.clone(),
            names: self.names.clone(),
            rep_names: self.anyons.iter().map(|x| self.group.name(x.class_rep)).collect(),
            class_rep_orders: self.anyons.iter().map(|x| self.group.element_order(x.class_rep)).collect(),
            s,
            t,
            conj: self.charge_conjugation(),
            fusion,
        })
    }
}

/// Dense `N[x][y][z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    n: usize,
    data: Vec<u32>,
}

impl FusionTensor {
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.data[(x * self.n + y) * self.n + z]
    }
    pub fn row(&self, x: usize, y: usize) -> &[u32] {
        &self.data[(x * self.n + y) * self.n..][..self.n]
    }
}

/// Verlinde rows `N[x][y][.]` for the given pairs, in exact arithmetic:
/// `P[(x,y)][u] = S_xu S_yu / S_0u` times `conj(S)^T`.
fn verlinde_rows(qd: &QuantumDouble, s: &[CycNum], pairs: &[(usize, usize)]) -> Result<Vec<Vec<u32>>, DoubleError> {
    let n = qd.len();
    let m = qd.modulus();
    let order = qd.group().order() as i128;
    let inv_s0: Vec<Rational> = qd
        .anyons()
        .iter()
        .map(|u| {
            assert!(u.qdim > 0, "S_0U vanishes");
            Rational::new(order, u.qdim as i128)
        })
        .collect();
    let p_entries: Vec<CycNum> = pairs
        .par_iter()
        .flat_map_iter(|&(x, y)| (0..n).map(move |u| (x, y, u)))
        .map(|(x, y, u)| (&s[x * n + u] * &s[y * n + u]).scale(inv_s0[u]))
        .collect();
    let p = CycMatrix::from_entries(m, pairs.len(), n, &p_entries);
    let sc = CycMatrix::from_entries(m, n, n, s).conj().transpose();
    let prod = p.matmul(&sc);
    pairs
        .iter()
        .enumerate()
        .map(|(r, &(x, y))| {
            (0..n)
                .map(|z| {
                    let v = prod.get(r, z);
                    match v.as_integer() {
                        Some(k) if k >= 0 => Ok(k as u32),
                        _ => Err(DoubleError::BadMultiplicity { x, y, z, value: v.to_string() }),
                    }
                })
                .collect()
        })
        .collect()
}

/// Full Verlinde tensor from an exact S matrix.
pub fn fusion_tensor(qd: &QuantumDouble, s: &[CycNum]) -> Result<FusionTensor, DoubleError> {
    let n = qd.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let rows = verlinde_rows(qd, s, &pairs)?;
    let mut data = vec![0u32; n * n * n];
    for (&(x, y), row) in pairs.iter().zip(rows) {
        data[(x * n + y) * n..][..n].copy_from_slice(&row);
        data[(y * n + x) * n..][..n].copy_from_slice(&row);
    }
    Ok(FusionTensor { n, data })
}

/// One Verlinde row `N[x][y][.]`.
pub fn fusion_row(qd: &QuantumDouble, s: &[CycNum], x: usize, y: usize) -> Result<Vec<u32>, DoubleError> {
    Ok(verlinde_rows(qd, s, &[(x, y)])?.pop().unwrap())
}

#[derive(Clone, Debug)]
pub struct ModularData {
    pub order: usize,
    pub modulus: u32,
    pub anyons: Vec<AnyonLabel>,
    pub names: Vec<String>,
    pub rep_names: Vec<String>,
    pub class_rep_orders: Vec<usize>,
    /// Row-major `n x n`.
    pub s: Vec<CycNum>,
    pub t: Vec<CycNum>,
    pub conj: Vec<usize>,
    pub fusion: Option<FusionTensor>,
}

impl ModularData {
    pub fn len(&self) -> usize {
        self.anyons.len()
    }
    pub fn is_empty(&self) -> bool {
        self.anyons.is_empty()
    }
    pub fn s(&self, x: usize, y: usize) -> &CycNum {
        &self.s[x * self.len() + y]
    }

    pub fn s_cyc(&self) -> CycMatrix {
        CycMatrix::from_entries(self.modulus, self.len(), self.len(), &self.s)
    }

    /// Checks every modular-data identity exactly; returns the first failure.
    pub fn check(&self) -> Result<(), String> {
        let n = self.len();
        let m = self.modulus;
        for x in 0..n {
            for y in 0..n {
                if self.s(x, y) != self.s(y, x) {
                    return Err(format!("S not symmetric at ({x},{y})"));
                }
            }
            let want = Rational::new(self.anyons[x].qdim as i128, self.order as i128);
            if self.s(0, x).as_rational() != Some(want) {
                return Err(format!("S_0{x} != qdim/|G|"));
            }
        }
        let qsum: usize = self.anyons.iter().map(|a| a.qdim * a.qdim).sum();
        if qsum != self.order * self.order {
            return Err(format!("sum of squared quantum dimensions is {qsum}"));
        }
        let s = self.s_cyc();
        let ident = CycMatrix::from_entries(
            m,
            n,
            n,
            &(0..n * n).map(|i| CycNum::from_int(i128::from(i / n == i % n))).collect::<Vec<_>>(),
        );
        if s.matmul(&s.conj().transpose()) != ident {
            return Err("S S^dagger != I".into());
        }
        let s2 = s.matmul(&s);
        let c = CycMatrix::from_entries(
            m,
            n,
            n,
            &(0..n * n).map(|i| CycNum::from_int(i128::from(self.conj[i / n] == i % n))).collect::<Vec<_>>(),
        );
        if s2 != c {
            return Err("S^2 != charge conjugation".into());
        }
        let st_entries: Vec<CycNum> = (0..n * n).map(|i| self.s(i / n, i % n) * &self.t[i % n]).collect();
        let st = CycMatrix::from_entries(m, n, n, &st_entries);
        if st.matmul(&st).matmul(&st) != s2 {
            return Err("(S T)^3 != S^2".into());
        }
        for (x, t) in self.t.iter().enumerate() {
            let ord = self.class_rep_orders[x] as u64;
            if !t.pow(ord).is_one() {
                return Err(format!("T_{x} is not a root of unity of order dividing {ord}"));
            }
        }
        for x in 0..n {
            if self.conj[self.conj[x]] != x {
                return Err(format!("charge conjugation is not an involution at {x}"));
            }
        }
        if let Some(f) = &self.fusion {
            for x in 0..n {
                if f.get(x, self.conj[x], 0) != 1 {
                    return Err(format!("N[{x}][{x}^v][0] != 1"));
                }
                for y in 0..n {
                    if f.get(0, x, y) != u32::from(x == y) {
                        return Err(format!("0 (x) {x} contains {y} wrongly"));
                    }
                    if f.row(x, y) != f.row(y, x) {
                        return Err(format!("fusion not commutative at ({x},{y})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ModularDataJson {
        let n = self.len();
        ModularDataJson {
            order: self.order,
            modulus: self.modulus,
            anyons: self
                .anyons
                .iter()
                .zip(&self.names)
                .zip(&self.rep_names)
                .map(|((a, name), rep)| AnyonJson {
                    index: a.index,
                    name: name.clone(),
                    class_rep: a.class_rep,
                    class_rep_name: rep.clone(),
                    irrep: a.irrep,
                    class_size: a.class_size,
                    dim: a.dim,
                    qdim: a.qdim,
                })
                .collect(),
            s: (0..n).map(|x| (0..n).map(|y| self.s(x, y).to_json()).collect()).collect(),
            t: self.t.iter().map(|v| v.to_json()).collect(),
            conj: self.conj.clone(),
            n: self.fusion.as_ref().map(|f| {
                let mut out = Vec::new();
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let v = f.get(x, y, z);
                            if v != 0 {
                                out.push([x, y, z, v as usize]);
                            }
                        }
                    }
                }
                out
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AnyonJson {
    pub index: usize,
    pub name: String,
    pub class_rep: usize,
    pub class_rep_name: String,
    pub irrep: usize,
    pub class_size: usize,
    pub dim: usize,
    pub qdim: usize,
}

/// JSON form of [`ModularData`]; `n` lists non-zero `[x, y, z, N_xy^z]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModularDataJson {
    pub order: usize,
    pub modulus: u32,
    pub anyons: Vec<AnyonJson>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<CycNumJson>>,
    #[serde(rename = "T")]
    pub t: Vec<CycNumJson>,
    pub conj: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Option<Vec<[usize; 4]>>,
}

/// Renders `sum_z N z` as `A + B + 2 C`.
pub fn format_fusion(names: &[String], row: &[u32]) -> String {
    let terms: Vec<String> = row
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(z, &v)| if v == 1 { names[z].clone() } else { format!("{v} {}", names[z]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Cycle notation over anyon names, e.g. `(C F)`; `identity` for the identity.
pub fn format_permutation(names: &[String], perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(names[x].as_str());
            x = perm[x];
        }
        cycles.push(format!("({})", cycle.join(" ")));
    }
    if cycles.is_empty() {
        "identity".into()
    } else {
        cycles.join("")
    }
}

impl fmt::Display for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(class rep {}, irrep {})", self.class_rep, self.irrep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_affine_group, build_galois_field, cyclic_group, symmetric_group};

    fn s3() -> QuantumDouble {
        QuantumDouble::new(symmetric_group(3).unwrap())
    }

    #[test]
    fn anyon_counts() {
        assert_eq!(s3().len(), 8);
        assert_eq!(QuantumDouble::new(FiniteGroup::trivial()).len(), 1);
        assert_eq!(QuantumDouble::new(cyclic_group(2).unwrap()).len(), 4);
        assert_eq!(s3().names().join(""), "ABCDEFGH");
    }

    #[test]
    fn trivial_anyon_character() {
        let qd = s3();
        for g in 0..6 {
            for h in 0..6 {
                let want = CycNum::from_int(i128::from(h == 0));
                assert_eq!(qd.anyon_character(0, g, h), want);
            }
        }
        for x in 0..qd.len() {
            assert_eq!(
                qd.anyon_character(x, 0, qd.anyons()[x].class_rep),
                CycNum::from_int(qd.anyons()[x].dim as i128)
            );
        }
    }

    #[test]
    fn fluxion_character_value() {
        let qd = s3();
        let f = qd.anyon_by_name("F").unwrap();
        let tau = qd.anyons()[f].class_rep;
        assert_eq!(qd.anyon_character(f, 0, tau), CycNum::one());
    }

    #[test]
    fn conjugator_choice_is_irrelevant() {
        let qd = QuantumDouble::new(build_affine_group(&build_galois_field(4).unwrap()).unwrap());
        let g = qd.group();
        for x in 0..qd.len() {
            let a = &qd.anyons()[x];
            let z = qd.centralizer(a.class);
            for h in qd.classes().classes[a.class].members.clone() {
                for gg in 0..g.order() {
                    if !g.commute(gg, h) {
                        continue;
                    }
                    let base = qd.anyon_character(x, gg, h);
                    for &w in z.subgroup.members() {
                        let k = g.mul(qd.conjugator(h), w);
                        let y = g.conj(g.inv(k), gg);
                        assert_eq!(z.value(a.irrep, y), &base);
                    }
                }
            }
        }
    }

    #[test]
    fn z3_charge_conjugation() {
        let qd = QuantumDouble::new(cyclic_group(3).unwrap());
        assert_eq!(qd.charge_conjugate(0), 0);
        let x = (0..qd.len())
            .find(|&x| qd.anyons()[x].class_rep == 1 && qd.anyon_character(x, 1, 1) == CycNum::zeta(3, 1))
            .unwrap();
        let y = qd.charge_conjugate(x);
        assert_eq!(qd.anyons()[y].class_rep, 2);
        assert_eq!(qd.anyon_character(y, 1, 2), CycNum::zeta(3, 2));
        for x in 0..qd.len() {
            assert_eq!(qd.charge_conjugate(qd.charge_conjugate(x)), x);
        }
    }

    #[test]
    fn s3_s_matrix_and_twists() {
        let qd = s3();
        let s = qd.s_matrix();
        let r = |n, d| CycNum::from_rational(Rational::new(n, d));
        assert_eq!(s[0], r(1, 6));
        assert_eq!(s[2 * 8 + 5], r(-1, 3));
        assert_eq!(s[3 * 8 + 3], r(1, 2));
        let t = qd.t_matrix();
        assert!(t[0].is_one() && t[2].is_one() && t[5].is_one());
        assert_eq!(t[4], CycNum::from_int(-1));
        assert!((0..8).all(|x| qd.charge_conjugate(x) == x));
    }

    #[test]
    fn z2_s_matrix() {
        let qd = QuantumDouble::new(cyclic_group(2).unwrap());
        let s = qd.s_matrix();
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(s[x * 4 + y], CycNum::from_rational(Rational::new(signs[x][y], 2)));
            }
        }
    }

    #[test]
    fn s3_fusion_both_routes() {
        let qd = s3();
        let md = qd.modular_data().unwrap();
        md.check().unwrap();
        let f = md.fusion.as_ref().unwrap();
        let names = qd.names();
        assert_eq!(format_fusion(names, f.row(2, 2)), "A + B + C");
        assert_eq!(format_fusion(names, f.row(3, 3)), "A + C + F + G + H");
        for x in 0..8 {
            for y in 0..8 {
                let oracle = qd.fusion_oracle(x, y).unwrap();
                assert_eq!(oracle, f.row(x, y).iter().map(|&v| v as i128).collect::<Vec<_>>());
            }
        }
    }
}
