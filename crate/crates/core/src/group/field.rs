//! Finite fields `F_q` (q <= 64) and the affine groups `F_q^+ x| F_q^*`.

use super::{FiniteGroup, GroupError};

/// `F_q` with elements encoded as `sum c_i p^i` for the polynomial `sum c_i x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    pub q: usize,
    pub p: usize,
    pub k: usize,
    /// Monic defining polynomial, low degree first (length `k + 1`).
    pub modulus: Vec<usize>,
    add: Vec<u32>,
    mul: Vec<u32>,
    /// Smallest element generating the multiplicative group.
    pub generator: usize,
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m` over `F_p`; both low degree first.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c != 0 {
            let off = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - c) * mc) % p;
            }
        }
    }
    r
}

/// Exhaustive test: no monic factor of degree `1..=deg/2` divides `f`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`,
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: usize, k: usize) -> Vec<usize> {
    let count = p.pow(k as u32);
    (0..count)
        .map(|i| {
            // digits most-significant-first = (c0, c1, ..) order
            let mut c = digits(i, p, k);
            c.reverse();
            c.push(1);
            c
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Builds `F_q` from the smallest monic irreducible polynomial.
pub fn build_galois_field(q: usize) -> Result<GaloisField, GroupError> {
    let (p, k) = prime_power(q).ok_or(GroupError::NotPrimePower(q))?;
    if q > 64 {
        return Err(GroupError::FieldTooLarge(q));
    }
    let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for a in 0..q {
        let da = digits(a, p, k);
        for b in 0..q {
            let db = digits(b, p, k);
            let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&s, p) as u32;
            let mut prod = vec![0usize; 2 * k - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = if k == 1 { prod } else { poly_rem(&prod, &modulus, p) };
            r.resize(k, 0);
            mul[a * q + b] = undigits(&r, p) as u32;
        }
    }
    let mut field = GaloisField { q, p, k, modulus, add, mul, generator: 0 };
    field.generator =
        (1..q).find(|&g| field.mult_order(g) == q - 1).expect("multiplicative group of a finite field is cyclic");
    Ok(field)
}

impl GaloisField {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    fn mult_order(&self, g: usize) -> usize {
        let (mut x, mut k) = (g, 1);
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Trace of the `F_p`-linear map `x -> a x`.
    pub fn trace(&self, a: usize) -> usize {
        (0..self.k)
            .map(|i| {
                let basis = self.p.pow(i as u32);
                digits(self.mul(a, basis), self.p, self.k)[i]
            })
            .sum::<usize>()
            % self.p
    }

    /// Squares of nonzero elements.
    pub fn is_square(&self, a: usize) -> bool {
        a != 0 && (1..self.q).any(|b| self.mul(b, b) == a)
    }
}

/// Affine group on tables of a field or near-field: elements `(a, alpha)`
/// with `alpha != zero`, product `(a + alpha*b, alpha*beta)`, numbered
/// `a * (q-1) + position of alpha among the nonzero elements`.
pub(crate) fn affine_from_tables(q: usize, add: &[u32], mul: &[u32], zero: usize) -> Result<FiniteGroup, GroupError> {
    let units: Vec<usize> = (0..q).filter(|&x| x != zero).collect();
    let mut unit_pos = vec![usize::MAX; q];
    for (i, &u) in units.iter().enumerate() {
        unit_pos[u] = i;
    }
    let n = q - 1;
    let names = (0..q * n).map(|x| format!("({},{})", x / n, units[x % n])).collect();
    FiniteGroup::from_fn(q * n, Some(names), |x, y| {
        let (a, al) = (x / n, units[x % n]);
        let (b, be) = (y / n, units[y % n]);
        let c = add[a * q + mul[al * q + b] as usize] as usize;
        let gamma = mul[al * q + be] as usize;
        c * n + unit_pos[gamma]
    })
}

/// `F_q^+ x| F_q^*` of order `q(q-1)`.
pub fn build_affine_group(field: &GaloisField) -> Result<FiniteGroup, GroupError> {
    affine_from_tables(field.q, &field.add, &field.mul, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_isomorphic, symmetric_group, GroupOps};

    #[test]
    fn small_fields() {
        let f2 = build_galois_field(2).unwrap();
        assert_eq!(f2.add_table(), &[0, 1, 1, 0]);
        assert_eq!(f2.mul_table(), &[0, 0, 0, 1]);
        let f4 = build_galois_field(4).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        // x = 2 satisfies x^2 + x + 1 = 0
        let x = 2;
        assert_eq!(f4.add(f4.add(f4.mul(x, x), x), 1), 0);
        assert!(matches!(build_galois_field(6), Err(GroupError::NotPrimePower(6))));
        assert!(matches!(build_galois_field(1), Err(GroupError::NotPrimePower(1))));
        assert!(matches!(build_galois_field(128), Err(GroupError::FieldTooLarge(128))));
    }

    #[test]
    fn gf9_uses_x2_plus_1() {
        // x^2+1 has no root in F_3 (0->1, 1->2, 2->2), so it is the first candidate
        assert!((0..3).all(|r| (r * r + 1) % 3 != 0));
        assert_eq!(build_galois_field(9).unwrap().modulus, vec![1, 0, 1]);
        // x^3+1 has the root 1, so x^3+x^2+1 comes first
        assert_eq!(build_galois_field(8).unwrap().modulus, vec![1, 0, 1, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = build_galois_field(q).unwrap();
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.pow(a, q - 1), 1, "q={q} a={a}");
                    assert!(f.inv(a).is_some());
                }
                if q <= 16 {
                    for b in 0..q {
                        assert_eq!(f.mul(a, b), f.mul(b, a));
                        for c in 0..q {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f = build_galois_field(9).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % 3);
            }
        }
        assert!((0..9).any(|a| f.trace(a) != 0));
        // prime field: trace is the identity
        let f5 = build_galois_field(5).unwrap();
        assert!((0..5).all(|a| f5.trace(a) == a));
    }

    #[test]
    fn affine_groups() {
        let g2 = build_affine_group(&build_galois_field(2).unwrap()).unwrap();
        assert_eq!(g2.order(), 2);
        let g3 = build_affine_group(&build_galois_field(3).unwrap()).unwrap();
        assert_eq!(g3.order(), 6);
        assert!(is_isomorphic(&g3, &symmetric_group(3).unwrap()).is_some());
        let g4 = build_affine_group(&build_galois_field(4).unwrap()).unwrap();
        assert!(g4.verify_axioms().is_ok());
        let mut sizes: Vec<usize> = g4.conjugacy_classes().iter().map(|c| c.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn affine_structure_facts() {
        let f = build_galois_field(5).unwrap();
        let g = build_affine_group(&f).unwrap();
        let n = f.q - 1;
        assert_eq!(g.identity(), 0);
        // (a, alpha)^-1 = (-alpha^-1 a, alpha^-1)
        for x in 0..g.order() {
            let (a, al) = (x / n, x % n + 1);
            let ai = f.inv(al).unwrap();
            let expect = f.mul(f.neg(ai), a) * n + (ai - 1);
            assert_eq!(g.inv(x), expect);
        }
        let one_one = n;
        let cls = g.conjugacy_classes().into_iter().find(|c| c.members.contains(&one_one)).unwrap();
        let expect: Vec<usize> = (1..f.q).map(|b| b * n).collect();
        assert_eq!(cls.members, expect);
        for x in 0..g.order() {
            if x % n != 0 {
                assert_eq!(g.centralizer(x).order(), f.q - 1);
            }
        }
    }
}
