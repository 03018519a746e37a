//! Permutation closures and the named families `Z:n`, `D:n`, `S:n`, `A:n`.

use std::collections::{HashMap, VecDeque};

use super::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

/// Images of `0..n`; products compose left to right (`(ab)(i) = b(a(i))`).
pub type Permutation = Vec<u32>;

fn compose(a: &[u32], b: &[u32]) -> Permutation {
    a.iter().map(|&i| b[i as usize]).collect()
}

/// Zero-based cycle notation, `()` for the identity.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut j = p[start] as usize;
        while j != start {
            seen[j] = true;
            cyc.push(j);
            j = p[j] as usize;
        }
        let s: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&s.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Group generated by permutations, elements numbered breadth-first from the
/// identity with generators applied in input order.
pub fn closure_from_generators(gens: &[Permutation], cap: usize) -> Result<FiniteGroup, GroupError> {
    let n = gens.first().map_or(0, |g| g.len());
    for (index, g) in gens.iter().enumerate() {
        if g.len() != n {
            return Err(GroupError::DegreeMismatch(n, g.len()));
        }
        let mut hit = vec![false; n];
        for &x in g {
            if x as usize >= n || hit[x as usize] {
                return Err(GroupError::NotBijection { index, n });
            }
            hit[x as usize] = true;
        }
    }
    let identity: Permutation = (0..n as u32).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let p = compose(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() == cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(p.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(p);
            }
        }
    }
    let names = elems.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_fn(elems.len(), Some(names), |a, b| index[&compose(&elems[a], &elems[b])])
}

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut p: Permutation = (0..n as u32).collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()] as u32;
    }
    p
}

/// Cyclic group with element `i` standing for `r^i`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidTable("Z:0".into()));
    }
    let names = (0..n).map(|i| if i == 0 { "e".into() } else { format!("r^{i}") }).collect();
    FiniteGroup::from_fn(n, Some(names), |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`; index `i + n*j` stands for `r^i s^j`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidTable("D:0".into()));
    }
    let names = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r^{i}"),
                (0, _) => "s".to_string(),
                _ => format!("r^{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_fn(2 * n, Some(names), |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })
}

/// `S_n` generated by `(0 1)` then `(0 1 .. n-1)`.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup, GroupError> {
    let gens = if n < 2 { vec![] } else { vec![cycle(n, [0, 1]), cycle(n, 0..n)] };
    closure_or_trivial(n, &gens)
}

/// `A_n` generated by `(0 1 2)` and an even long cycle.
pub fn alternating_group(n: usize) -> Result<FiniteGroup, GroupError> {
    let gens = match n {
        0..=2 => vec![],
        3 => vec![cycle(n, [0, 1, 2])],
        _ if n % 2 == 1 => vec![cycle(n, [0, 1, 2]), cycle(n, 0..n)],
        _ => vec![cycle(n, [0, 1, 2]), cycle(n, 1..n)],
    };
    closure_or_trivial(n, &gens)
}

/// Quaternion group `Q8` in its regular representation; points `0..8` stand
/// for `1, i, j, k, -1, -i, -j, -k` and the generators are right
/// multiplication by `i` and `j`.
pub fn quaternion_group() -> FiniteGroup {
    closure_from_generators(&[vec![1, 4, 7, 2, 5, 0, 3, 6], vec![2, 3, 4, 5, 6, 7, 0, 1]], DEFAULT_ORDER_CAP)
        .expect("Q8 generators are permutations")
}

fn closure_or_trivial(n: usize, gens: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    if gens.is_empty() {
        let id: Permutation = (0..n as u32).collect();
        return FiniteGroup::from_table(1, vec![0], Some(vec![cycle_notation(&id)]));
    }
    closure_from_generators(gens, DEFAULT_ORDER_CAP)
}
