//! Worked examples end to end, compared against the files in `golden/`.

use qdouble::cyclo::{CycNum, Rational};
use qdouble::double::{format_fusion, format_permutation, ModularData, QuantumDouble};
use qdouble::group::{alternating_group, cyclic_group, symmetric_group, GroupOps};
use qdouble::modinv::{chargeon_fluxion_pairs, find_transposition_invariants, is_modular_invariant};
use qdouble::trivalg::{
    affine_chargeon_fluxion, affine_u_and_phi, gamma_character, psi_character, theorem34_permutation, AlgebraCharacter,
};
use serde::Serialize;

use crate::{render, CliError, Output};

const S3_SMATRIX: &str = include_str!("../golden/s3_smatrix.txt");
const S3_FUSION: &str = include_str!("../golden/s3_fusion.txt");
const A6_CENTRALIZER: &str = include_str!("../golden/a6_centralizer.txt");

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct Report {
    target: String,
    passed: bool,
    checks: Vec<Check>,
    #[serde(skip)]
    sections: Vec<(String, String)>,
}

impl Report {
    fn new(target: &str) -> Self {
        Report { target: target.into(), passed: true, checks: Vec::new(), sections: Vec::new() }
    }
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
    fn section(&mut self, title: &str, body: String) {
        self.sections.push((title.into(), body));
    }
    fn into_output(self) -> Output {
        let mut text = String::new();
        for (title, body) in &self.sections {
            text.push_str(&format!("== {title}\n{body}\n"));
        }
        for c in &self.checks {
            text.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        text.push_str(&format!(
            "{}: {}\n",
            self.target,
            if self.passed { "all checks passed" } else { "some checks FAILED" }
        ));
        Output::new(text, &self)
    }
}

fn golden_rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).map(|l| l.split_whitespace().collect())
}

pub fn cross_check_fusion(qd: &QuantumDouble, md: &ModularData) -> Result<(), CliError> {
    let f = md.fusion.as_ref().expect("fusion tensor computed");
    for x in 0..qd.len() {
        for y in x..qd.len() {
            let oracle = qd.fusion_oracle(x, y).map_err(crate::compute_err)?;
            if oracle.iter().zip(f.row(x, y)).any(|(&a, &b)| a != b as i128) {
                return Err(CliError::compute(
                    format!(
                        "fusion of {} and {} differs between Verlinde and the comultiplication",
                        qd.name(x),
                        qd.name(y)
                    ),
                    "this indicates an internal inconsistency; please report the command line",
                ));
            }
        }
    }
    Ok(())
}

fn modular_data(qd: &QuantumDouble) -> Result<ModularData, CliError> {
    qd.modular_data().map_err(crate::compute_err)
}

fn s3(slow: bool) -> Result<Output, CliError> {
    let mut r = Report::new("s3");
    let qd = QuantumDouble::new(symmetric_group(3).map_err(crate::compute_err)?);
    let md = modular_data(&qd)?;
    r.section("anyons", render::anyons(&qd, &md.t));
    r.section("S", render::matrix(qd.names(), &md.s));

    let mut diffs = Vec::new();
    for (x, row) in golden_rows(S3_SMATRIX).enumerate() {
        for (y, v) in row.iter().enumerate() {
            let want = CycNum::from_rational(Rational::new(v.parse().expect("golden integers"), 6));
            if *md.s(x, y) != want {
                diffs.push(format!("S[{}][{}] = {} (golden {want})", qd.name(x), qd.name(y), md.s(x, y)));
            }
        }
    }
    r.check(
        "S matrix against golden/s3_smatrix.txt",
        diffs.is_empty(),
        if diffs.is_empty() {
            "64 entries equal".into()
        } else {
            format!("{} of 64 differ: {}", diffs.len(), diffs.join("; "))
        },
    );
    if !diffs.is_empty() {
        r.check("S identities", md.check().is_ok(), "computed S is unitary with S^2 = C and (ST)^3 = S^2");
    }

    let f = md.fusion.as_ref().expect("8 anyons");
    r.section("fusion", render::fusion_table(&md));
    let mut bad = Vec::new();
    for (x, row) in golden_rows(S3_FUSION).enumerate() {
        for (y, entry) in row.iter().enumerate() {
            let mut want = [0u32; 8];
            for t in entry.split('+') {
                want[qd.anyon_by_name(t).expect("golden names")] += 1;
            }
            if f.row(x, y) != want {
                bad.push(format!("{} x {} = {}", qd.name(x), qd.name(y), format_fusion(qd.names(), f.row(x, y))));
            }
        }
    }
    r.check(
        "fusion against golden/s3_fusion.txt",
        bad.is_empty(),
        if bad.is_empty() { "512 multiplicities equal".into() } else { bad.join("; ") },
    );
    cross_check_fusion(&qd, &md)?;
    r.check("fusion oracle", true, "comultiplication route agrees on every pair");

    let name = |s: &str| qd.anyon_by_name(s).expect("S3 names");
    let t_ok = md.t[name("C")].is_one() && md.t[name("F")].is_one() && md.t[name("E")] == CycNum::from_int(-1);
    r.check("twists", t_ok, "T_C = T_F = 1, T_E = -1");
    r.check("charge conjugation", md.conj.iter().enumerate().all(|(x, &y)| x == y), "every anyon is self-dual");
    let pairs = chargeon_fluxion_pairs(&qd, &md);
    r.check(
        "invariant chargeon-fluxion pairs",
        pairs == [(name("C"), name("F"))],
        pairs.iter().map(|&(c, f)| format!("({} {})", qd.name(c), qd.name(f))).collect::<Vec<_>>().join(" "),
    );
    if slow {
        md.check().map_err(crate::compute_err)?;
    }
    Ok(r.into_output())
}

fn a6(slow: bool) -> Result<Output, CliError> {
    let mut r = Report::new("a6");
    let g = alternating_group(6).map_err(crate::compute_err)?;
    let el = |s: &str| g.element_by_name(s).expect("A6 element");
    let cols = [g.identity(), el("(0 1)(2 3)"), el("(0 1)(4 5)"), el("(0 2)(1 3)"), el("(0 2 1 3)(4 5)")];
    let a = cols[1];
    let qd = QuantumDouble::new(g.clone());
    let class = qd.classes().class_of[a];
    let z = qd.centralizer(class);
    let members: Vec<usize> = (0..qd.len()).filter(|&x| qd.anyons()[x].class == class).collect();
    let mut table = format!("Z(a), a = (0 1)(2 3), |Z(a)| = {}\n", z.order());
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for row in golden_rows(A6_CENTRALIZER) {
        let want: Vec<CycNum> =
            row[1..].iter().map(|v| CycNum::from_int(v.parse().expect("golden integers"))).collect();
        match members.iter().find(|&&x| cols.iter().zip(&want).all(|(&h, w)| qd.anyon_character(x, h, a) == *w)) {
            Some(&x) => {
                table.push_str(&format!("{:<5} {}  -> anyon {}\n", row[0], row[1..].join(" "), qd.name(x)));
                found.push(x);
            }
            None => missing.push(row[0].to_string()),
        }
    }
    r.section("centralizer", table);
    let ok = missing.is_empty() && members.len() == 5;
    r.check(
        "centralizer table against golden/a6_centralizer.txt",
        ok,
        if ok { "5 irreps, dims 1,1,1,1,2, mu(a) = -2".to_string() } else { format!("unmatched rows {missing:?}") },
    );
    let md = modular_data(&qd)?;
    r.check("modular data identities", md.check().is_ok(), format!("{} anyons", md.len()));
    if found.len() >= 4 {
        let n = md.len();
        for (label, x, y) in [("(X1 X2)", found[0], found[1]), ("(X3 X4)", found[2], found[3])] {
            let mut m = vec![0i128; n * n];
            for w in 0..n {
                m[w * n
                    + if w == x {
                        y
                    } else if w == y {
                        x
                    } else {
                        w
                    }] = 1;
            }
            r.check(
                &format!("{label} is a modular invariant"),
                is_modular_invariant(&m, &md.s, &md.t),
                format!("({} {})", qd.name(x), qd.name(y)),
            );
        }
    }
    let search = find_transposition_invariants(&md, false);
    r.section(
        "invariant transpositions",
        search.iter().map(|&(x, y)| format!("({} {})\n", qd.name(x), qd.name(y))).collect(),
    );
    r.check(
        "no invariant chargeon-fluxion pair",
        chargeon_fluxion_pairs(&qd, &md).is_empty(),
        "A6 is not an affine group",
    );
    if slow {
        cross_check_fusion(&qd, &md)?;
        r.check("fusion oracle", true, "comultiplication route agrees on every pair");
    }
    Ok(r.into_output())
}

fn affine(q: usize) -> Result<Output, CliError> {
    let mut r = Report::new(&format!("affine:{q}"));
    let t = theorem34_permutation(q).map_err(crate::compute_err)?;
    r.section("auto-equivalence", format!("{t}\n"));
    r.check(
        "form PJ",
        true,
        format!("C = {}, F = {}, J = {}", t.names[t.c], t.names[t.f], format_permutation(&t.names, &t.j)),
    );
    r.check(
        "multiplicities from A(U, phi)",
        t.from_u.is_permutation(),
        format!("sum M qdim qdim = {}, {} points compared", t.from_u.dim_total, t.from_u.points_checked),
    );
    if q <= 5 {
        let data = affine_u_and_phi(q).map_err(crate::compute_err)?;
        let qd = QuantumDouble::new(data.group.clone());
        let prod = data.product();
        let chi = AlgebraCharacter::new(&prod, &data.phi, qd.modulus()).map_err(crate::compute_err)?;
        let (c, f) = affine_chargeon_fluxion(&qd, &data);
        let n = prod.order();
        let mut count = 0;
        let mut bad = None;
        for x in 0..n {
            for y in 0..n {
                if prod.commute(x, y) {
                    count += 1;
                    if chi.eval(x, y) != psi_character(&qd, x, y) - gamma_character(&qd, c, f, x, y) {
                        bad.get_or_insert((x, y));
                    }
                }
            }
        }
        r.check(
            "character equals Psi - Gamma",
            bad.is_none(),
            format!("{count} commuting pairs{}", bad.map_or(String::new(), |b| format!(", first mismatch {b:?}"))),
        );
    }
    Ok(r.into_output())
}

fn toric() -> Result<Output, CliError> {
    let mut r = Report::new("toric");
    let qd = QuantumDouble::new(cyclic_group(2).map_err(crate::compute_err)?);
    let md = modular_data(&qd)?;
    r.section("anyons", render::anyons(&qd, &md.t));
    r.section("S", render::matrix(qd.names(), &md.s));
    r.check("four anyons", qd.len() == 4, format!("{} anyons", qd.len()));
    let fermion = (0..4).filter(|&x| md.t[x] == CycNum::from_int(-1)).count();
    r.check("one fermion", fermion == 1, "the twists are 1, 1, 1, -1");
    let t = theorem34_permutation(2).map_err(crate::compute_err)?;
    r.section("exchange", format!("{t}\n"));
    r.check(
        "e-m exchange",
        format_permutation(&t.names, &t.permutation) == format!("({} {})", t.names[t.c], t.names[t.f]),
        "a single transposition of a chargeon and a fluxion",
    );
    let pairs = chargeon_fluxion_pairs(&qd, &md);
    r.check("invariant", pairs.len() == 1, format!("{} chargeon-fluxion pair", pairs.len()));
    Ok(r.into_output())
}

pub fn run(target: &str, cap: usize, slow: bool) -> Result<Output, CliError> {
    match target {
        "s3" => s3(slow),
        "a6" if cap < 360 => {
            Err(CliError::compute("A6 has order 360, above the cap", "raise the limit with --cap 360"))
        }
        "a6" => a6(slow),
        "toric" => toric(),
        t => match t.strip_prefix("affine:").map(str::parse::<usize>) {
            Some(Ok(q)) if q * (q - 1) <= cap => affine(q),
            Some(Ok(_)) => Err(CliError::compute("AGL1:q is above the cap", "raise the limit with --cap")),
            _ => Err(CliError::usage(
                format!("unknown target {t:?}"),
                "targets are s3, a6, affine:<q> (q a prime power) and toric",
            )),
        },
    }
}
