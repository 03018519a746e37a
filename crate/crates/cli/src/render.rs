use qdouble::cyclo::{CycNum, CycNumJson};
use qdouble::double::{format_fusion, AnyonJson, ModularData, QuantumDouble};
use qdouble::{CharacterTable, FiniteGroup, GroupOps, GroupSpec};
use serde::Serialize;

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn character_table(g: &FiniteGroup, t: &CharacterTable) -> String {
    let classes = &t.classes().classes;
    let mut rows = vec![
        std::iter::once("class".to_string()).chain(classes.iter().map(|c| g.name(c.rep))).collect::<Vec<_>>(),
        std::iter::once("size".to_string()).chain(classes.iter().map(|c| c.size().to_string())).collect(),
    ];
    for i in 0..t.len() {
        rows.push(
            std::iter::once(format!("chi{i}")).chain((0..classes.len()).map(|c| t.value(i, c).to_string())).collect(),
        );
    }
    pad_table(&rows)
}

pub fn anyons(qd: &QuantumDouble, t: &[CycNum]) -> String {
    let mut rows = vec![["#", "name", "flux", "|class|", "irrep", "dim", "qdim", "twist"].map(String::from).to_vec()];
    for (x, a) in qd.anyons().iter().enumerate() {
        rows.push(vec![
            x.to_string(),
            qd.name(x).to_string(),
            qd.group().name(a.class_rep),
            a.class_size.to_string(),
            a.irrep.to_string(),
            a.dim.to_string(),
            a.qdim.to_string(),
            t[x].to_string(),
        ]);
    }
    pad_table(&rows)
}

/// Rational matrices are shown over their common denominator
/// (`A: 1/6, 1/6, 2/6, ...`), others entry by entry.
pub fn matrix(names: &[String], s: &[CycNum]) -> String {
    let n = names.len();
    let rationals: Option<Vec<_>> = s.iter().map(CycNum::as_rational).collect();
    let cells: Vec<String> = match rationals {
        Some(rs) => {
            let d = rs.iter().fold(1i128, |acc, r| num_integer::lcm(acc, *r.denom()));
            rs.iter()
                .map(|r| {
                    let k = r.numer() * (d / r.denom());
                    if d == 1 {
                        k.to_string()
                    } else {
                        format!("{k}/{d}")
                    }
                })
                .collect()
        }
        None => s.iter().map(ToString::to_string).collect(),
    };
    let w = names.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut out = format!("{:w$}  columns: {}\n", "", names.join(", "));
    for x in 0..n {
        out.push_str(&format!("{:<w$}  {}\n", names[x], cells[x * n..(x + 1) * n].join(", ")));
    }
    out
}

pub fn twists(names: &[String], t: &[CycNum]) -> String {
    let rows: Vec<Vec<String>> = names.iter().zip(t).map(|(n, v)| vec![n.clone(), v.to_string()]).collect();
    pad_table(&rows)
}

pub fn fusion_table(md: &ModularData) -> String {
    let n = md.len();
    let f = md.fusion.as_ref().expect("fusion tensor computed");
    let compact = md.names.iter().all(|s| s.len() == 1);
    let mut rows = vec![std::iter::once("(x)".to_string()).chain(md.names.iter().cloned()).collect::<Vec<_>>()];
    if compact {
        for x in 0..n {
            let mut row = vec![md.names[x].clone()];
            row.extend((0..n).map(|y| format_fusion(&md.names, f.row(x, y)).replace(' ', "")));
            rows.push(row);
        }
        return pad_table(&rows);
    }
    let mut out = String::new();
    for x in 0..n {
        for y in x..n {
            out.push_str(&format!("{} x {} = {}\n", md.names[x], md.names[y], format_fusion(&md.names, f.row(x, y))));
        }
    }
    out
}

#[derive(Serialize)]
pub struct AnyonsJson {
    pub group: String,
    pub order: usize,
    pub anyons: Vec<AnyonJson>,
    pub twists: Vec<CycNumJson>,
}

fn anyon_json(qd: &QuantumDouble) -> Vec<AnyonJson> {
    qd.anyons()
        .iter()
        .enumerate()
        .map(|(x, a)| AnyonJson {
            index: x,
            name: qd.name(x).into(),
            class_rep: a.class_rep,
            class_rep_name: qd.group().name(a.class_rep),
            irrep: a.irrep,
            class_size: a.class_size,
            dim: a.dim,
            qdim: a.qdim,
        })
        .collect()
}

pub fn anyons_json(spec: &GroupSpec, qd: &QuantumDouble, t: &[CycNum]) -> AnyonsJson {
    AnyonsJson {
        group: spec.to_string(),
        order: qd.group().order(),
        anyons: anyon_json(qd),
        twists: t.iter().map(CycNum::to_json).collect(),
    }
}

#[derive(Serialize)]
pub struct SMatrixJson {
    pub group: String,
    pub names: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<CycNumJson>>,
}

pub fn smatrix_json(spec: &GroupSpec, qd: &QuantumDouble, s: &[CycNum]) -> SMatrixJson {
    let n = qd.len();
    SMatrixJson {
        group: spec.to_string(),
        names: qd.names().to_vec(),
        s: (0..n).map(|x| (0..n).map(|y| s[x * n + y].to_json()).collect()).collect(),
    }
}

#[derive(Serialize)]
pub struct TMatrixJson {
    pub group: String,
    pub names: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<CycNumJson>,
}

pub fn tmatrix_json(spec: &GroupSpec, qd: &QuantumDouble, t: &[CycNum]) -> TMatrixJson {
    TMatrixJson { group: spec.to_string(), names: qd.names().to_vec(), t: t.iter().map(CycNum::to_json).collect() }
}
