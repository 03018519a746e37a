//! Modular invariants of `(S, T)`: exact tests, permutation searches, and the
//! classification of groups with an invariant chargeon-fluxion transposition.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycNum, Rational};
use crate::double::{ModularData, QuantumDouble};
use crate::group::{is_isomorphic, GroupOps};
use crate::nearfield::{affine_group_from_nearfield, nearfield_from_group, split_as_semidirect, NearField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    Transposition,
    TranspositionJ,
    Permutation,
    General,
}

/// A square non-negative integer matrix over the anyons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCandidate {
    pub n: usize,
    /// Row-major.
    pub matrix: Vec<i128>,
    pub kind: CandidateKind,
}

impl InvariantCandidate {
    /// The matrix with `M[x][perm[x]] = 1`.
    pub fn from_permutation(perm: &[usize], kind: CandidateKind) -> Self {
        let n = perm.len();
        let mut matrix = vec![0; n * n];
        for (x, &y) in perm.iter().enumerate() {
            matrix[x * n + y] = 1;
        }
        InvariantCandidate { n, matrix, kind }
    }

    pub fn is_invariant(&self, md: &ModularData) -> bool {
        is_modular_invariant(&self.matrix, &md.s, &md.t)
    }
}

/// `MS = SM`, `M diag(T) = diag(T) M`, integer entries `>= 0` and `M_00 = 1`.
pub fn is_modular_invariant(m: &[i128], s: &[CycNum], t: &[CycNum]) -> bool {
    let n = t.len();
    if m.len() != n * n || s.len() != n * n || n == 0 || m[0] != 1 || m.iter().any(|&v| v < 0) {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if m[x * n + y] != 0 && t[x] != t[y] {
                return false;
            }
        }
    }
    let modulus = s.iter().map(CycNum::modulus).fold(1, num_integer::lcm);
    (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            let mut ms = CycNum::zero(modulus);
            let mut sm = CycNum::zero(modulus);
            for z in 0..n {
                let (a, b) = (m[x * n + z], m[z * n + y]);
                if a != 0 {
                    ms += &s[z * n + y].scale(Rational::from_integer(a));
                }
                if b != 0 {
                    sm += &s[x * n + z].scale(Rational::from_integer(b));
                }
            }
            ms == sm
        })
    })
}

/// For a permutation `sigma`, `P S = S P` and `P T = T P` reduce to
/// `S[sigma x][sigma y] = S[x][y]` and `T[sigma x] = T[x]`.
pub fn is_permutation_invariant(perm: &[usize], md: &ModularData) -> bool {
    let n = md.len();
    perm[0] == 0
        && (0..n).all(|x| md.t[perm[x]] == md.t[x])
        && (0..n).into_par_iter().all(|x| (0..n).all(|y| md.s(perm[x], perm[y]) == md.s(x, y)))
}

fn transposition(n: usize, x: usize, y: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(x, y);
    p
}

/// Unordered pairs `(x, y)`, `x < y`, whose transposition `P` (or `PJ` when
/// `with_j`) is a modular invariant. Pairs are pre-filtered on quantum
/// dimension and twist.
pub fn find_transposition_invariants(md: &ModularData, with_j: bool) -> Vec<(usize, usize)> {
    let n = md.len();
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| md.anyons[x].qdim == md.anyons[y].qdim && md.t[x] == md.t[y])
        .collect();
    pairs
        .into_iter()
        .filter(|&(x, y)| {
            let p = transposition(n, x, y);
            let perm: Vec<usize> = if with_j { (0..n).map(|z| p[md.conj[z]]).collect() } else { p };
            is_permutation_invariant(&perm, md)
        })
        .collect()
}

/// Invariant transpositions `(C, F)` with `C = (e, pi)`, `pi` nontrivial, and
/// `F = (class(a), 1)`, `a != e`.
pub fn chargeon_fluxion_pairs(qd: &QuantumDouble, md: &ModularData) -> Vec<(usize, usize)> {
    let e = qd.group().identity();
    let n = qd.len();
    let chargeons: Vec<usize> = (1..n).filter(|&x| qd.anyons()[x].is_chargeon(e)).collect();
    let fluxions: Vec<usize> =
        (1..n).filter(|&x| !qd.anyons()[x].is_chargeon(e) && qd.anyons()[x].is_fluxion()).collect();
    chargeons
        .iter()
        .flat_map(|&c| fluxions.iter().map(move |&f| (c, f)))
        .filter(|&(c, f)| md.anyons[c].qdim == md.anyons[f].qdim && md.t[c] == md.t[f])
        .filter(|&(c, f)| is_permutation_invariant(&transposition(n, c, f), md))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rung {
    pub label: char,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

/// The consequences of `(C, F)` being invariant, each evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    pub chargeon: usize,
    pub fluxion: usize,
    pub rungs: Vec<Rung>,
}

impl LadderReport {
    pub fn all_passed(&self) -> bool {
        self.rungs.iter().all(|r| r.passed)
    }
    pub fn rung(&self, label: char) -> Option<&Rung> {
        self.rungs.iter().find(|r| r.label == label)
    }
    pub fn first_failure(&self) -> Option<&Rung> {
        self.rungs.iter().find(|r| !r.passed)
    }
}

impl fmt::Display for LadderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rungs {
            writeln!(f, "({}) {:<5} {}: {}", r.label, if r.passed { "pass" } else { "FAIL" }, r.statement, r.detail)?;
        }
        Ok(())
    }
}

/// Checks (a)-(g) for a chargeon `c = (e, pi)` and fluxion `f = (class(a), 1)`.
pub fn necessary_condition_ladder(qd: &QuantumDouble, c: usize, f: usize) -> LadderReport {
    let g = qd.group();
    let e = g.identity();
    let (cx, fx) = (&qd.anyons()[c], &qd.anyons()[f]);
    let a = fx.class_rep;
    let whole = qd.centralizer(cx.class);
    let table = &whole.table;
    let pi = cx.irrep;
    let class_a = &qd.classes().classes[fx.class];
    let mut rungs = Vec::new();
    let mut push = |label, statement: &str, passed, detail: String| {
        rungs.push(Rung { label, statement: statement.into(), passed, detail })
    };

    let a_ok = cx.class_rep == e && fx.class_rep != e && cx.irrep != 0 && fx.irrep == 0;
    push('a', "pi nontrivial, a != e", a_ok, format!("C = {}, F = {}", qd.name(c), qd.name(f)));

    push(
        'b',
        "dim pi = |class(a)|",
        cx.dim == class_a.size(),
        format!("dim pi = {}, |class(a)| = {}", cx.dim, class_a.size()),
    );

    let mut support: Vec<usize> = class_a.members.clone();
    support.push(e);
    support.sort_unstable();
    let closure = g.subgroup_violation(&support);
    push(
        'c',
        "{e} u class(a) is a subgroup",
        closure.is_none(),
        closure.unwrap_or_else(|| format!("subgroup of order {}", support.len())),
    );

    let ainv = g.inv(a);
    let bad_mu = (0..table.len()).filter(|&mu| mu != pi).find(|&mu| {
        let d = CycNum::from_int(table.dims()[mu] as i128);
        *whole.value(mu, a) != d || *whole.value(mu, ainv) != d
    });
    push(
        'd',
        "tr_mu(a) = tr_mu(a^-1) = dim mu for mu != pi",
        bad_mu.is_none(),
        bad_mu.map_or_else(
            || "holds for every mu".into(),
            |mu| format!("fails for irrep {mu}: tr(a) = {}", whole.value(mu, a)),
        ),
    );

    let off = (0..g.order()).find(|&h| support.binary_search(&h).is_err() && !whole.value(pi, h).is_zero());
    let at_a = whole.value(pi, a).clone();
    push(
        'e',
        "tr_pi vanishes off {e} u class(a) and tr_pi(a) = -1",
        off.is_none() && at_a == CycNum::from_int(-1),
        match off {
            Some(h) => format!("tr_pi({}) = {}", g.name(h), whole.value(pi, h)),
            None => format!("tr_pi(a) = {at_a}"),
        },
    );

    let z = qd.centralizer(fx.class);
    push(
        'f',
        "|Z(a)| = |class(a)| + 1",
        z.order() == class_a.size() + 1,
        format!("|Z(a)| = {}, |class(a)| + 1 = {}", z.order(), class_a.size() + 1),
    );

    push('g', "Z(a) = {e} u class(a)", z.subgroup.members() == support.as_slice(), format!("|Z(a)| = {}", z.order()));

    LadderReport { chargeon: c, fluxion: f, rungs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearFieldSummary {
    pub size: usize,
    pub is_field: bool,
    pub multiplicatively_commutative: bool,
    pub center_size: usize,
    pub additive_order: usize,
}

impl NearFieldSummary {
    pub fn of(h: &NearField) -> Self {
        NearFieldSummary {
            size: h.size(),
            is_field: h.is_field(),
            multiplicatively_commutative: h.is_multiplicatively_commutative(),
            center_size: h.multiplicative_center().len(),
            additive_order: h.additive_order(h.one()),
        }
    }
}

/// Evidence collected for one invariant chargeon-fluxion pair.
#[derive(Clone, Debug)]
pub struct PairEvidence {
    pub chargeon: usize,
    pub fluxion: usize,
    pub ladder: LadderReport,
    pub near_field: Result<NearField, String>,
    /// Generator of the complement `H^x` in `G = H^+ x| H^x`.
    pub split: Result<usize, String>,
    /// `G` is isomorphic to the affine group of the extracted near-field.
    pub converse: Result<(), String>,
}

impl PairEvidence {
    pub fn verified(&self) -> bool {
        self.near_field.is_ok() && self.split.is_ok() && self.converse.is_ok()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// No chargeon-fluxion transposition is a modular invariant.
    NotApplicable,
    /// `G` is the affine group of the near-field.
    Affine(NearField),
    /// An invariant pair exists but the reconstruction broke.
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub group_order: usize,
    pub names: Vec<String>,
    pub pairs: Vec<PairEvidence>,
    pub verdict: Verdict,
}

impl ClassificationVerdict {
    pub fn is_affine(&self) -> bool {
        matches!(self.verdict, Verdict::Affine(_))
    }

    pub fn to_json(&self) -> ClassificationJson {
        ClassificationJson {
            group_order: self.group_order,
            verdict: match &self.verdict {
                Verdict::NotApplicable => "not_applicable".into(),
                Verdict::Affine(_) => "affine".into(),
                Verdict::Failed(_) => "failed".into(),
            },
            failure: if let Verdict::Failed(s) = &self.verdict { Some(s.clone()) } else { None },
            near_field: if let Verdict::Affine(h) = &self.verdict { Some(NearFieldSummary::of(h)) } else { None },
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    chargeon: self.names[p.chargeon].clone(),
                    fluxion: self.names[p.fluxion].clone(),
                    ladder: p.ladder.clone(),
                    near_field: p.near_field.as_ref().map(NearFieldSummary::of).map_err(Clone::clone).ok(),
                    split: p.split.clone().err().map_or("verified".into(), |e| e),
                    converse: p.converse.clone().err().map_or("verified".into(), |e| e),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairJson {
    pub chargeon: String,
    pub fluxion: String,
    pub ladder: LadderReport,
    pub near_field: Option<NearFieldSummary>,
    pub split: String,
    pub converse: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassificationJson {
    pub group_order: usize,
    pub verdict: String,
    pub failure: Option<String>,
    pub near_field: Option<NearFieldSummary>,
    pub pairs: Vec<PairJson>,
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::NotApplicable => {
                writeln!(f, "verdict: not applicable (no invariant chargeon-fluxion transposition)")?
            }
            Verdict::Affine(h) => {
                let s = NearFieldSummary::of(h);
                writeln!(
                    f,
                    "verdict: G = H+ x| Hx for a near-field H of order {} ({})",
                    s.size,
                    if s.is_field { "a field" } else { "a proper near-field" }
                )?
            }
            Verdict::Failed(e) => writeln!(f, "verdict: reconstruction failed: {e}")?,
        }
        for p in &self.pairs {
            writeln!(f, "pair ({} {})", self.names[p.chargeon], self.names[p.fluxion])?;
            write!(f, "{}", p.ladder)?;
            let status = |r: &Result<(), String>| r.clone().err().unwrap_or_else(|| "ok".into());
            writeln!(
                f,
                "(h) near-field on Z(a): {}",
                p.near_field.as_ref().map(|h| format!("order {}", h.size())).unwrap_or_else(|e| e.clone())
            )?;
            writeln!(
                f,
                "(i) complement: {}",
                p.split.as_ref().map(|g| format!("Z({g})")).unwrap_or_else(|e| e.clone())
            )?;
            writeln!(f, "(j) converse isomorphism: {}", status(&p.converse))?;
        }
        Ok(())
    }
}

/// Finds every invariant chargeon-fluxion transposition and rebuilds `G` as
/// the affine group of a near-field from each.
pub fn classify_group(qd: &QuantumDouble, md: &ModularData) -> ClassificationVerdict {
    let g = qd.group();
    let pairs: Vec<PairEvidence> = chargeon_fluxion_pairs(qd, md)
        .into_iter()
        .map(|(c, f)| {
            let ladder = necessary_condition_ladder(qd, c, f);
            let a = qd.anyons()[f].class_rep;
            let ext = nearfield_from_group(g, a).map_err(|e| e.to_string());
            let split = ext
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|x| split_as_semidirect(g, x).map(|s| s.complement_generator).map_err(|e| e.to_string()));
            let converse = ext.as_ref().map_err(Clone::clone).and_then(|x| {
                let affine = affine_group_from_nearfield(&x.near_field).map_err(|e| e.to_string())?;
                is_isomorphic(&affine, g)
                    .map(|_| ())
                    .ok_or_else(|| "affine group of H is not isomorphic to G".to_string())
            });
            PairEvidence { chargeon: c, fluxion: f, ladder, near_field: ext.map(|x| x.near_field), split, converse }
        })
        .collect();
    let verdict = match pairs.iter().find(|p| p.verified()) {
        Some(p) => Verdict::Affine(p.near_field.clone().expect("verified")),
        None if pairs.is_empty() => Verdict::NotApplicable,
        None => {
            let p = &pairs[0];
            let reason = [p.near_field.as_ref().err(), p.split.as_ref().err(), p.converse.as_ref().err()]
                .into_iter()
                .flatten()
                .next()
                .cloned()
                .unwrap_or_default();
            Verdict::Failed(reason)
        }
    };
    ClassificationVerdict { group_order: g.order(), names: qd.names().to_vec(), pairs, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, quaternion_group, symmetric_group};

    fn data(g: crate::group::FiniteGroup) -> (QuantumDouble, ModularData) {
        let qd = QuantumDouble::new(g);
        let md = qd.modular_data().unwrap();
        (qd, md)
    }

    #[test]
    fn identity_and_j_are_invariant() {
        let (_, md) = data(cyclic_group(3).unwrap());
        let n = md.len();
        let id: Vec<usize> = (0..n).collect();
        assert!(InvariantCandidate::from_permutation(&id, CandidateKind::Permutation).is_invariant(&md));
        assert!(InvariantCandidate::from_permutation(&md.conj, CandidateKind::Permutation).is_invariant(&md));
        let mut bad = InvariantCandidate::from_permutation(&id, CandidateKind::General);
        bad.matrix[0] = 2;
        assert!(!bad.is_invariant(&md));
    }

    #[test]
    fn s3_pair_is_c_f() {
        let (qd, md) = data(symmetric_group(3).unwrap());
        let pairs = chargeon_fluxion_pairs(&qd, &md);
        assert_eq!(pairs, vec![(2, 5)]);
        let p = InvariantCandidate::from_permutation(&transposition(8, 2, 5), CandidateKind::Transposition);
        assert!(p.is_invariant(&md));
        let ladder = necessary_condition_ladder(&qd, 2, 5);
        assert!(ladder.all_passed(), "{ladder}");
        let v = classify_group(&qd, &md);
        match v.verdict {
            Verdict::Affine(h) => assert!(h.size() == 3 && h.is_field()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toric_code_exchange() {
        let (qd, md) = data(cyclic_group(2).unwrap());
        let all = find_transposition_invariants(&md, false);
        assert!(all.contains(&(1, 2)));
        assert_eq!(chargeon_fluxion_pairs(&qd, &md), vec![(1, 2)]);
    }

    #[test]
    fn q8_ladder_reports_dimension_mismatch() {
        let (qd, md) = data(quaternion_group());
        assert!(chargeon_fluxion_pairs(&qd, &md).is_empty());
        let c = (1..qd.len()).find(|&x| qd.anyons()[x].is_chargeon(0) && qd.anyons()[x].dim == 2).unwrap();
        let f = (1..qd.len())
            .find(|&x| !qd.anyons()[x].is_chargeon(0) && qd.anyons()[x].is_fluxion() && qd.anyons()[x].class_size == 1)
            .unwrap();
        let ladder = necessary_condition_ladder(&qd, c, f);
        let b = ladder.rung('b').unwrap();
        assert!(!b.passed && b.detail.contains("dim pi = 2"));
        assert!(!necessary_condition_ladder(&qd, 0, f).rung('a').unwrap().passed);
        assert!(matches!(classify_group(&qd, &md).verdict, Verdict::NotApplicable));
    }
}
