//! Ordinary character tables (Burnside-Dixon) and class-function operations.
//!
//! Central characters are simultaneous eigenvectors of the class-multiplication
//! matrices. They are found modulo a prime `l = 1 (mod e)`, `e` the exponent,
//! and each value is lifted to `Q(zeta_e)` from the eigenvalue multiplicities
//! of the representing matrices, read off mod `l` through a fixed primitive
//! `e`-th root of unity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycNum, CycNumJson, Rational};
use crate::group::{ClassStructure, FiniteGroup, GroupOps, Subgroup};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("not a class function: value at {element} differs from its conjugate {conjugate}")]
    NotClassFunction { element: usize, conjugate: usize },
    #[error("multiplicity of irreducible {index} is {value}, not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("class function has {got} values, expected {expected}")]
    Length { got: usize, expected: usize },
}

/// Irreducible characters as rows over the canonical class order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    classes: ClassStructure,
    inverse_class: Vec<usize>,
    identity_class: usize,
    rep_names: Vec<String>,
    m: u32,
    rows: Vec<Vec<CycNum>>,
    dims: Vec<usize>,
}

mod modp {
    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
        pow(a, p - 2, p)
    }

    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    pub fn primitive_root(p: u64) -> u64 {
        let mut factors = Vec::new();
        let mut r = p - 1;
        let mut d = 2;
        while d * d <= r {
            if r.is_multiple_of(d) {
                factors.push(d);
                while r.is_multiple_of(d) {
                    r /= d;
                }
            }
            d += 1;
        }
        if r > 1 {
            factors.push(r);
        }
        (2..p).find(|&g| factors.iter().all(|&f| pow(g, (p - 1) / f, p) != 1)).unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let s = inv(rows[r][c], p);
            rows[r].iter_mut().for_each(|x| *x = *x * s % p);
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pr) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of the null space of a `n x n` matrix (row-major).
    pub fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, |r| r.len());
        let mut m = a.to_vec();
        let pivots = rref(&mut m, p);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (row, &pc) in m.iter().zip(&pivots) {
                    v[pc] = (p - row[f]) % p;
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)`, low degree first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
            if piv != c + 1 {
                h.swap(piv, c + 1);
                for row in h.iter_mut() {
                    row.swap(piv, c + 1);
                }
            }
            let s = inv(h[c + 1][c], p);
            for i in c + 2..n {
                let f = h[i][c] * s % p;
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = h[c + 1][j];
                    h[i][j] = (h[i][j] + p - f * v % p) % p;
                }
                for row in h.iter_mut() {
                    let v = row[i];
                    row[c + 1] = (row[c + 1] + f * v) % p;
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + p - h[k][k] * c % p) % p;
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = prod * h[i + 1][i] % p;
                let coef = h[i][k] * prod % p;
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + p - coef * c % p) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }
}

/// Simultaneous eigenspaces of the class matrices over `F_l`. Returns one
/// vector per irreducible (central character), or `None` if some space
/// fails to split.
fn central_characters(coef: &[Vec<Vec<u64>>], r: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    // coef[j][k][l]: matrix j acting on column vectors, entry (k, l)
    let apply = |mat: &Vec<Vec<u64>>, v: &[u64]| -> Vec<u64> {
        (0..r).map(|k| (0..r).fold(0, |acc, l| (acc + mat[k][l] * v[l]) % p)).collect()
    };
    let combo: Vec<Vec<u64>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|l| (0..r).fold(0, |acc, j| (acc + ((j * j + 7 * j + 3) as u64 % p) * coef[j][k][l]) % p))
                .collect()
        })
        .collect();
    let mut matrices = vec![combo];
    matrices.extend(coef.iter().cloned());

    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    let mut done = Vec::new();
    let mut which = vec![0usize];
    while let Some(mut basis) = pending.pop() {
        let mut start = which.pop().unwrap();
        if basis.len() == 1 {
            done.push(basis.pop().unwrap());
            continue;
        }
        let pivots = modp::rref(&mut basis, p);
        let d = basis.len();
        let mut split = None;
        while start < matrices.len() {
            let mat = &matrices[start];
            // restricted map in RREF coordinates: A[i][c] = (M b_c)[pivot_i]
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(mat, b)).collect();
            let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|c| images[c][pivots[i]]).collect()).collect();
            let cp = modp::charpoly(&a, p);
            let roots: Vec<u64> = (0..p).filter(|&x| modp::eval(&cp, x, p) == 0).collect();
            if roots.len() > 1 {
                let mut parts = Vec::new();
                for lam in roots {
                    let shifted: Vec<Vec<u64>> = (0..d)
                        .map(|i| (0..d).map(|c| (a[i][c] + if i == c { p - lam } else { 0 }) % p).collect())
                        .collect();
                    let ns = modp::nullspace(&shifted, p);
                    let vecs: Vec<Vec<u64>> = ns
                        .iter()
                        .map(|coords| {
                            (0..r).map(|k| (0..d).fold(0, |acc, c| (acc + coords[c] * basis[c][k]) % p)).collect()
                        })
                        .collect();
                    parts.push(vecs);
                }
                if parts.iter().map(|v| v.len()).sum::<usize>() != d {
                    return None;
                }
                split = Some(parts);
                break;
            }
            start += 1;
        }
        let parts = split?;
        for part in parts {
            pending.push(part);
            which.push(start + 1);
        }
    }
    Some(done)
}

fn smallest_prime(e: u64, lower: u64) -> impl Iterator<Item = u64> {
    (1..).map(move |k| k * e + 1).filter(move |&l| l > lower && modp::is_prime(l))
}

/// Per-class exponent vectors `n_k`: the value is `sum_k n_k zeta_e^k`.
type Lifted = Vec<Vec<i128>>;

fn dixon(
    g: &FiniteGroup,
    classes: &ClassStructure,
    inverse_class: &[usize],
    identity_class: usize,
) -> (u32, Vec<Lifted>) {
    let n = g.order();
    let r = classes.len();
    let e = g.exponent() as u64;
    let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size() as u64).collect();
    let mut counts = vec![vec![vec![0u64; r]; r]; r];
    for (l, cl) in classes.classes.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(g.inv(x), cl.rep);
            counts[classes.class_of[x]][classes.class_of[y]][l] += 1;
        }
    }
    let powers: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|cl| {
            (0..e)
                .scan(g.identity(), |acc, _| {
                    let cur = *acc;
                    *acc = g.mul(*acc, cl.rep);
                    Some(classes.class_of[cur])
                })
                .collect()
        })
        .collect();
    let bound = (2.0 * (n as f64).sqrt()).ceil() as u64;
    'prime: for p in smallest_prime(e, bound.max(2)) {
        let coef: Vec<Vec<Vec<u64>>> =
            counts.iter().map(|m| m.iter().map(|row| row.iter().map(|&c| c % p).collect()).collect()).collect();
        let Some(vecs) = central_characters(&coef, r, p) else { continue };
        if vecs.len() != r {
            continue;
        }
        let z = modp::pow(modp::primitive_root(p), (p - 1) / e, p);
        let zinv = modp::inv(z, p);
        let einv = modp::inv(e % p, p);
        let mut out = Vec::with_capacity(r);
        for v in vecs {
            let s = v[identity_class];
            if s == 0 {
                continue 'prime;
            }
            let s_inv = modp::inv(s, p);
            let omega: Vec<u64> = v.iter().map(|&x| x * s_inv % p).collect();
            let norm = (0..r)
                .fold(0, |acc, j| (acc + omega[j] * omega[inverse_class[j]] % p * modp::inv(sizes[j] % p, p)) % p);
            if norm == 0 {
                continue 'prime;
            }
            let d2 = (n as u64 % p) * modp::inv(norm, p) % p;
            let Some(d) = (1..=((n as f64).sqrt() as u64 + 1)).find(|&d| d * d % p == d2) else { continue 'prime };
            let chi: Vec<u64> = (0..r).map(|j| d * omega[j] % p * modp::inv(sizes[j] % p, p) % p).collect();
            let mut lifted = Vec::with_capacity(r);
            for j in 0..r {
                let mut ns = vec![0i128; e as usize];
                for (k, slot) in ns.iter_mut().enumerate() {
                    let step = modp::pow(zinv, k as u64, p);
                    let mut w = 1u64;
                    let mut acc = 0u64;
                    for i in 0..e as usize {
                        acc = (acc + chi[powers[j][i]] * w) % p;
                        w = w * step % p;
                    }
                    let nk = acc * einv % p;
                    if nk > d {
                        continue 'prime;
                    }
                    *slot = nk as i128;
                }
                lifted.push(ns);
            }
            out.push(lifted);
        }
        return (e as u32, out);
    }
    unreachable!("primes are unbounded")
}

impl CharacterTable {
    /// Table of `g` with values in `Q(zeta_e)`, `e` the exponent.
    pub fn new(g: &FiniteGroup) -> Self {
        let classes = ClassStructure::new(g);
        let inverse_class: Vec<usize> = classes.classes.iter().map(|c| classes.class_of[g.inv(c.rep)]).collect();
        let identity_class = classes.class_of[g.identity()];
        let (m, lifted) = dixon(g, &classes, &inverse_class, identity_class);
        let mut rows: Vec<Vec<CycNum>> =
            lifted.iter().map(|row| row.iter().map(|ns| CycNum::from_raw(m, ns, 1)).collect()).collect();
        let dim_of = |row: &Vec<CycNum>| row[identity_class].as_integer().expect("degree is an integer") as usize;
        let is_trivial = |row: &Vec<CycNum>| row.iter().all(|v| v.is_one());
        rows.sort_by(|a, b| {
            is_trivial(b).cmp(&is_trivial(a)).then(dim_of(a).cmp(&dim_of(b))).then_with(|| {
                a.iter().zip(b).map(|(x, y)| y.cmp_lex(x)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        let dims = rows.iter().map(dim_of).collect();
        let rep_names = classes.classes.iter().map(|c| g.name(c.rep)).collect();
        CharacterTable { order: g.order(), classes, inverse_class, identity_class, rep_names, m, rows, dims }
    }

    /// The same table with every value embedded into `Q(zeta_m)`.
    pub fn embed(&self, m: u32) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|v| v.embed(m)).collect()).collect();
        CharacterTable { m, rows, ..self.clone() }
    }

    pub fn group_order(&self) -> usize {
        self.order
    }
    pub fn modulus(&self) -> u32 {
        self.m
    }
    pub fn classes(&self) -> &ClassStructure {
        &self.classes
    }
    pub fn class_of(&self, g: usize) -> usize {
        self.classes.class_of[g]
    }
    pub fn class_size(&self, c: usize) -> usize {
        self.classes.classes[c].size()
    }
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }
    pub fn identity_class(&self) -> usize {
        self.identity_class
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.rows[i]
    }
    pub fn value(&self, irrep: usize, class: usize) -> &CycNum {
        &self.rows[irrep][class]
    }
    pub fn value_at(&self, irrep: usize, g: usize) -> &CycNum {
        &self.rows[irrep][self.classes.class_of[g]]
    }

    /// Character `irrep` as a per-element vector.
    pub fn character(&self, irrep: usize) -> Vec<CycNum> {
        self.classes.class_of.iter().map(|&c| self.rows[irrep][c].clone()).collect()
    }

    /// Row index of the complex-conjugate character.
    pub fn dual(&self, irrep: usize) -> usize {
        let target: Vec<CycNum> = self.rows[irrep].iter().map(|v| v.conj()).collect();
        self.rows.iter().position(|r| *r == target).expect("the dual of an irreducible is irreducible")
    }

    /// `<chi, psi>` for class functions given per class.
    pub fn class_inner_product(&self, chi: &[CycNum], psi: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero(self.m);
        for c in 0..self.classes.len() {
            let term = (&chi[c] * &psi[c].conj()).scale(Rational::from_integer(self.class_size(c) as i128));
            acc += &term;
        }
        acc.scale(Rational::new(1, self.order as i128))
    }

    /// Exact row and column orthogonality; the first failure is described.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let r = self.rows.len();
        for i in 0..r {
            for j in 0..r {
                let ip = self.class_inner_product(&self.rows[i], &self.rows[j]);
                let want = CycNum::from_int(i128::from(i == j));
                if ip != want {
                    return Err(format!("<chi_{i}, chi_{j}> = {ip}"));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                let s: CycNum = (0..r).map(|i| &self.rows[i][a] * &self.rows[i][b].conj()).sum();
                let want = if a == b { (self.order / self.class_size(a)) as i128 } else { 0 };
                if s != CycNum::from_int(want) {
                    return Err(format!("column sum over classes {a},{b} is {s}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            order: self.order,
            modulus: self.m,
            classes: self
                .classes
                .classes
                .iter()
                .zip(&self.rep_names)
                .map(|(c, n)| ClassJson { rep: c.rep, name: n.clone(), size: c.size() })
                .collect(),
            dims: self.dims.clone(),
            values: self.rows.iter().map(|r| r.iter().map(|v| v.to_json()).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassJson {
    pub rep: usize,
    pub name: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CharacterTableJson {
    pub order: usize,
    pub modulus: u32,
    pub classes: Vec<ClassJson>,
    pub dims: Vec<usize>,
    pub values: Vec<Vec<CycNumJson>>,
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cells: Vec<Vec<String>> =
            vec![std::iter::once(String::new()).chain(self.rep_names.iter().cloned()).collect()];
        cells.push(
            std::iter::once("size".to_string())
                .chain(self.classes.classes.iter().map(|c| c.size().to_string()))
                .collect(),
        );
        for (i, row) in self.rows.iter().enumerate() {
            cells.push(std::iter::once(format!("chi{i}")).chain(row.iter().map(|v| v.to_string())).collect());
        }
        let widths: Vec<usize> =
            (0..cells[0].len()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        for row in &cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
            writeln!(f, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }
}

pub fn character_table(g: &FiniteGroup) -> CharacterTable {
    CharacterTable::new(g)
}

/// `(1/|G|) sum_g chi(g) psi(g)*` for per-element class functions.
pub fn inner_product(chi: &[CycNum], psi: &[CycNum]) -> CycNum {
    assert_eq!(chi.len(), psi.len());
    let s: CycNum = chi.iter().zip(psi).map(|(a, b)| a * &b.conj()).sum();
    s.scale(Rational::new(1, chi.len() as i128))
}

/// Values of a per-element function of `G` on the members of `k`, in member order.
pub fn restrict_character(k: &Subgroup, chi: &[CycNum]) -> Vec<CycNum> {
    k.members().iter().map(|&m| chi[m].clone()).collect()
}

/// `Ind(chi)(g) = (1/|K|) sum_{x : x^-1 g x in K} chi(x^-1 g x)`, with `chi`
/// given on the members of `k` in member order.
pub fn induce_character(g: &FiniteGroup, k: &Subgroup, chi: &[CycNum]) -> Result<Vec<CycNum>, CharError> {
    if chi.len() != k.order() {
        return Err(CharError::Length { got: chi.len(), expected: k.order() });
    }
    let local = k.local_index_map();
    for &a in k.members() {
        for &x in k.members() {
            let c = g.conj(x, a);
            if chi[local[c]] != chi[local[a]] {
                return Err(CharError::NotClassFunction { element: a, conjugate: c });
            }
        }
    }
    let classes = ClassStructure::new(g);
    let m = chi.iter().map(|v| v.modulus()).fold(1u32, num_integer::lcm);
    let scale = Rational::new(1, k.order() as i128);
    let per_class: Vec<CycNum> = classes
        .classes
        .iter()
        .map(|cl| {
            let mut acc = CycNum::zero(m);
            for x in 0..g.order() {
                let y = g.conj(g.inv(x), cl.rep);
                if k.contains(y) {
                    acc += &chi[local[y]];
                }
            }
            acc.scale(scale)
        })
        .collect();
    Ok(classes.class_of.iter().map(|&c| per_class[c].clone()).collect())
}

/// Multiplicities of the irreducibles of `table` in a per-element class function.
pub fn decompose_into_irreducibles(table: &CharacterTable, chi: &[CycNum]) -> Result<Vec<i128>, CharError> {
    if chi.len() != table.order {
        return Err(CharError::Length { got: chi.len(), expected: table.order });
    }
    let per_class: Vec<CycNum> = table.classes.classes.iter().map(|c| chi[c.rep].clone()).collect();
    (0..table.len())
        .map(|i| {
            let v = table.class_inner_product(&per_class, table.row(i));
            v.as_integer().ok_or(CharError::NonIntegral { index: i, value: v.to_string() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        alternating_group, build_affine_group, build_galois_field, cyclic_group, dihedral_group, quaternion_group,
        symmetric_group,
    };

    #[test]
    fn modp_helpers() {
        assert_eq!(modp::pow(3, 4, 7), 4);
        assert_eq!(modp::inv(3, 7), 5);
        assert_eq!(modp::primitive_root(7), 3);
        // [[2,1],[0,3]] has charpoly x^2 - 5x + 6
        assert_eq!(modp::charpoly(&[vec![2, 1], vec![0, 3]], 7), vec![6, 2, 1]);
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
        let cp = modp::charpoly(&a, 101);
        // trace 15, det 0, sum of principal 2x2 minors -18
        assert_eq!(cp, vec![0, (101 - 18), 101 - 15, 1]);
        let ns = modp::nullspace(&a, 101);
        assert_eq!(ns.len(), 1);
    }

    #[test]
    fn cyclic_three() {
        let t = character_table(&cyclic_group(3).unwrap());
        assert_eq!(t.dims(), &[1, 1, 1]);
        assert_eq!(t.modulus(), 3);
        let w = CycNum::zeta(3, 1);
        let mut rows: Vec<Vec<CycNum>> = (0..3).map(|i| t.row(i).to_vec()).collect();
        rows.sort_by(|a, b| a[1].cmp_lex(&b[1]));
        let mut want: Vec<Vec<CycNum>> = (0..3).map(|j| (0..3).map(|k| w.pow(j * k)).collect()).collect();
        want.sort_by(|a, b| a[1].cmp_lex(&b[1]));
        assert_eq!(rows, want);
        assert!(t.row(0).iter().all(|v| v.is_one()));
    }

    #[test]
    fn small_tables_are_orthogonal() {
        let groups = [
            FiniteGroup::trivial(),
            cyclic_group(2).unwrap(),
            cyclic_group(12).unwrap(),
            symmetric_group(3).unwrap(),
            symmetric_group(4).unwrap(),
            dihedral_group(4).unwrap(),
            dihedral_group(5).unwrap(),
            quaternion_group(),
            alternating_group(4).unwrap(),
            alternating_group(5).unwrap(),
            build_affine_group(&build_galois_field(9).unwrap()).unwrap(),
        ];
        for g in &groups {
            let t = character_table(g);
            assert_eq!(t.len(), g.conjugacy_classes().len());
            assert_eq!(t.dims().iter().map(|d| d * d).sum::<usize>(), g.order());
            t.check_orthogonality().unwrap();
            assert!(t.row(0).iter().all(|v| v.is_one()));
            for i in 0..t.len() {
                assert!(t.row(i).iter().all(|v| v.is_integral()));
                assert_eq!(t.dual(t.dual(i)), i);
            }
            assert!(t.dims().windows(2).skip(1).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn a5_has_golden_ratio_values() {
        let t = character_table(&alternating_group(5).unwrap());
        assert_eq!(t.dims(), &[1, 3, 3, 4, 5]);
        let five_cycle = t.classes().classes.iter().position(|c| c.size() == 12).unwrap();
        let v = t.value(1, five_cycle);
        assert!(v.as_rational().is_none());
        let (re, im) = v.to_complex();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(im.abs() < 1e-12 && ((re - phi).abs() < 1e-12 || (re - (1.0 - phi)).abs() < 1e-12));
    }

    #[test]
    fn affine_four_dims() {
        let t = character_table(&build_affine_group(&build_galois_field(4).unwrap()).unwrap());
        assert_eq!(t.dims(), &[1, 1, 1, 3]);
    }

    #[test]
    fn a6_centralizer_table() {
        let a6 = alternating_group(6).unwrap();
        let a = a6.element_by_name("(0 1)(2 3)").unwrap();
        let z = a6.centralizer(a);
        let h = a6.subgroup_as_group(&z);
        let t = character_table(&h);
        assert_eq!(t.dims(), &[1, 1, 1, 1, 2]);
        let la = h.element_by_name("(0 1)(2 3)").unwrap();
        assert_eq!(t.value_at(4, la), &CycNum::from_int(-2));
        for i in 0..4 {
            assert!(t.value_at(i, la).is_one());
        }
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = symmetric_group(3).unwrap();
        let k = g.subgroup_closure(&[]);
        let ind = induce_character(&g, &k, &[CycNum::one()]).unwrap();
        assert_eq!(ind[g.identity()], CycNum::from_int(6));
        assert!(ind.iter().enumerate().all(|(x, v)| x == g.identity() || v.is_zero()));
        let t = character_table(&g);
        assert_eq!(decompose_into_irreducibles(&t, &ind).unwrap(), vec![1, 1, 2]);
        let triv = t.character(0);
        assert!(inner_product(&ind, &triv).is_one());
    }

    #[test]
    fn affine_induced_pi() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = build_galois_field(q).unwrap();
            let g = build_affine_group(&f).unwrap();
            let n = q - 1;
            let k = Subgroup::from_members(g.order(), (0..q).map(|a| a * n).collect());
            let kt = character_table(&g.subgroup_as_group(&k));
            let pi = induce_character(&g, &k, &kt.character(1)).unwrap();
            assert_eq!(pi[0], CycNum::from_int(n as i128), "q={q}");
            assert_eq!(pi[n], CycNum::from_int(-1));
            for x in 0..g.order() {
                if !k.contains(x) {
                    assert!(pi[x].is_zero());
                }
            }
            assert!(inner_product(&pi, &pi).is_one());
        }
    }

    #[test]
    fn non_class_function_rejected() {
        let g = symmetric_group(3).unwrap();
        let k = Subgroup::whole(6);
        let mut chi: Vec<CycNum> = (0..6).map(|_| CycNum::one()).collect();
        chi[1] = CycNum::from_int(5);
        assert!(matches!(induce_character(&g, &k, &chi), Err(CharError::NotClassFunction { .. })));
    }
}
