//! The group-spec mini-language: `Z:n`, `D:n`, `S:n`, `A:n`, `AGL1:q`,
//! `NF:J9` and `perm:[[..],..]`.

use std::fmt;
use std::str::FromStr;

use super::{
    alternating_group, build_affine_group, build_galois_field, closure_from_generators, cyclic_group, dihedral_group,
    symmetric_group, FiniteGroup, GroupError, Permutation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Affine(usize),
    /// Affine group over the proper near-field of order 9.
    NearFieldJ9,
    Perm(Vec<Permutation>),
}

fn parse_err(spec: &str, reason: impl Into<String>) -> GroupError {
    GroupError::Parse { spec: spec.to_string(), reason: reason.into() }
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec, GroupError> {
    let s = s.trim();
    let (head, arg) = s.split_once(':').ok_or_else(|| parse_err(s, "expected KIND:ARG, e.g. S:3 or AGL1:5"))?;
    let number = || -> Result<usize, GroupError> {
        let n: usize = arg.trim().parse().map_err(|_| parse_err(s, format!("{arg:?} is not a positive integer")))?;
        if n == 0 {
            return Err(parse_err(s, "argument must be positive"));
        }
        Ok(n)
    };
    match head.trim() {
        "Z" => Ok(GroupSpec::Cyclic(number()?)),
        "D" => Ok(GroupSpec::Dihedral(number()?)),
        "S" => Ok(GroupSpec::Symmetric(number()?)),
        "A" => Ok(GroupSpec::Alternating(number()?)),
        "AGL1" => Ok(GroupSpec::Affine(number()?)),
        "NF" if arg.trim() == "J9" => Ok(GroupSpec::NearFieldJ9),
        "NF" => Err(parse_err(s, "the only near-field token is NF:J9")),
        "perm" => {
            let gens: Vec<Permutation> = serde_json::from_str(arg)
                .map_err(|e| parse_err(s, format!("generators must be a JSON array of arrays: {e}")))?;
            Ok(GroupSpec::Perm(gens))
        }
        other => Err(parse_err(s, format!("unknown group kind {other:?} (use Z, D, S, A, AGL1, NF, perm)"))),
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Affine(q) => write!(f, "AGL1:{q}"),
            GroupSpec::NearFieldJ9 => write!(f, "NF:J9"),
            GroupSpec::Perm(g) => write!(f, "perm:{}", serde_json::to_string(g).expect("integers serialize")),
        }
    }
}

fn factorial(n: usize) -> usize {
    (2..=n).fold(1usize, |a, k| a.saturating_mul(k))
}

impl GroupSpec {
    /// Order known before construction, if any.
    pub fn expected_order(&self) -> Option<usize> {
        match *self {
            GroupSpec::Cyclic(n) => Some(n),
            GroupSpec::Dihedral(n) => Some(2 * n),
            GroupSpec::Symmetric(n) => Some(factorial(n)),
            GroupSpec::Alternating(n) => Some((factorial(n) / 2).max(1)),
            GroupSpec::Affine(q) => Some(q * (q - 1)),
            GroupSpec::NearFieldJ9 => Some(72),
            GroupSpec::Perm(_) => None,
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        if let Some(n) = self.expected_order() {
            if n > cap {
                return Err(GroupError::CapExceeded { cap });
            }
        }
        match self {
            GroupSpec::Cyclic(n) => cyclic_group(*n),
            GroupSpec::Dihedral(n) => dihedral_group(*n),
            GroupSpec::Symmetric(n) => symmetric_group(*n),
            GroupSpec::Alternating(n) => alternating_group(*n),
            GroupSpec::Affine(q) => build_affine_group(&build_galois_field(*q)?),
            GroupSpec::NearFieldJ9 => {
                crate::nearfield::affine_group_from_nearfield(&crate::nearfield::build_dickson_j9())
            }
            GroupSpec::Perm(gens) => closure_from_generators(gens, cap),
        }
    }
}
