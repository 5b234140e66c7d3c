//! The universal enveloping algebra in a PBW basis, through a fixed degree.
//!
//! A PBW monomial is a nondecreasing list of Lie basis indices in which odd
//! elements appear at most once. Left multiplication by a Lie basis element
//! is computed by straightening with
//! `x_i x_j = (-1)^{|i||j|} x_j x_i + [x_i, x_j]` and `x x = [x, x] / 2` for odd
//! `x`, and tabulated for every monomial up to the maximal degree.

use std::collections::HashMap;

use crate::error::LieError;
use crate::field::{sign, Field};
use crate::lie::GradedLieAlgebra;
use crate::linalg::Vector;
use crate::series::DimensionSequence;

#[derive(Clone, Debug)]
pub struct Enveloping {
    field: Field,
    max_degree: u32,
    monomials: Vec<Vec<usize>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<usize>, usize>,
    by_degree: Vec<Vec<usize>>,
    /// `(e, m) -> x_e * m` for every Lie basis index `e` and monomial `m` with
    /// `deg e + deg m <= max_degree`.
    left: HashMap<(usize, usize), Vector>,
    names: Vec<String>,
}

impl Enveloping {
    pub fn new(l: &GradedLieAlgebra, max_degree: u32) -> Result<Self, LieError> {
        if let Some(n) = l.truncation() {
            if max_degree > n {
                return Err(LieError::BeyondTruncation { degree: max_degree, truncation: n });
            }
        }
        let mut monomials = Vec::new();
        let mut cur = Vec::new();
        enumerate(l, max_degree, 0, 0, &mut cur, &mut monomials);
        let deg_of = |m: &Vec<usize>| m.iter().map(|&i| l.degree(i)).sum::<u32>();
        monomials.sort_by(|a, b| deg_of(a).cmp(&deg_of(b)).then_with(|| a.cmp(b)));
        let degrees: Vec<u32> = monomials.iter().map(deg_of).collect();
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let mut by_degree = vec![Vec::new(); max_degree as usize + 1];
        for (k, d) in degrees.iter().enumerate() {
            by_degree[*d as usize].push(k);
        }
        let names = monomials.iter().map(|m| monomial_name(l, m)).collect();
        let mut u = Enveloping {
            field: l.field(),
            max_degree,
            monomials,
            degrees,
            index,
            by_degree,
            left: HashMap::new(),
            names,
        };
        for e in 0..l.dim() {
            for m in 0..u.monomials.len() {
                if l.degree(e) + u.degrees[m] <= max_degree {
                    let mono = u.monomials[m].clone();
                    u.straighten(l, e, &mono);
                }
            }
        }
        Ok(u)
    }

    fn straighten(&mut self, l: &GradedLieAlgebra, i: usize, m: &[usize]) -> Vector {
        let f = self.field;
        let key_m = self.index[m];
        if let Some(v) = self.left.get(&(i, key_m)) {
            return v.clone();
        }
        let prepend = |u: &Self| {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(i);
            w.extend_from_slice(m);
            Vector::unit(u.index[&w], f)
        };
        let out = match m.first() {
            None => prepend(self),
            Some(&j) if i < j || (i == j && !l.is_odd(i)) => prepend(self),
            Some(&j) if i == j => {
                let rest = &m[1..];
                let half = f.from_i64(2).inv();
                let br = l.bracket_basis(i, i).expect("within range");
                let mut acc = Vector::zero();
                for (b, c) in br.iter() {
                    let t = self.straighten(l, b, rest);
                    acc.add_scaled(&(&half * c), &t);
                }
                acc
            }
            Some(&j) => {
                let rest = &m[1..];
                let t = self.straighten(l, i, rest);
                let s = sign(f, l.is_odd(i) && l.is_odd(j));
                let mut acc = Vector::zero();
                for (mono, c) in t.iter() {
                    let mv = self.monomials[mono].clone();
                    let u = self.straighten(l, j, &mv);
                    acc.add_scaled(&(&s * c), &u);
                }
                let br = l.bracket_basis(i, j).expect("within range");
                for (b, c) in br.iter() {
                    let t = self.straighten(l, b, rest);
                    acc.add_scaled(c, &t);
                }
                acc
            }
        };
        self.left.insert((i, key_m), out.clone());
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self, m: usize) -> u32 {
        self.degrees[m]
    }

    /// Monomial indices of degree `n` (empty outside `0..=max_degree`).
    pub fn of_degree(&self, n: i64) -> &[usize] {
        if n < 0 || n > self.max_degree as i64 {
            return &[];
        }
        &self.by_degree[n as usize]
    }

    pub fn dim_in_degree(&self, n: i64) -> usize {
        self.of_degree(n).len()
    }

    pub fn monomial(&self, m: usize) -> &[usize] {
        &self.monomials[m]
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn unit(&self) -> usize {
        self.index[&Vec::new()]
    }

    /// `x_e * m`; `None` when the product lies above the maximal degree.
    pub fn left_mul(&self, e: usize, m: usize) -> Option<&Vector> {
        self.left.get(&(e, m))
    }

    pub fn left_mul_vec(&self, e: usize, v: &Vector) -> Option<Vector> {
        let mut out = Vector::zero();
        for (m, c) in v.iter() {
            out.add_scaled(c, self.left_mul(e, m)?);
        }
        Some(out)
    }

    pub fn dims(&self) -> DimensionSequence {
        DimensionSequence::from_degrees(
            self.max_degree as usize,
            self.degrees.iter().map(|d| (*d as usize, 1)),
        )
    }
}

fn enumerate(
    l: &GradedLieAlgebra,
    max: u32,
    from: usize,
    deg: u32,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(cur.clone());
    for i in from..l.dim() {
        let d = l.degree(i);
        if deg + d > max {
            // basis is sorted by degree
            break;
        }
        cur.push(i);
        let next = if l.is_odd(i) { i + 1 } else { i };
        enumerate(l, max, next, deg + d, cur, out);
        cur.pop();
    }
}

fn monomial_name(l: &GradedLieAlgebra, m: &[usize]) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut r = k;
        while r < m.len() && m[r] == m[k] {
            r += 1;
        }
        let e = r - k;
        parts.push(if e == 1 { l.name(m[k]).to_string() } else { format!("{}^{e}", l.name(m[k])) });
        k = r;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::free_lie;
    use crate::series::pbw_series;

    #[test]
    fn dims_follow_pbw() {
        let (_, l) = free_lie(
            Field::Rational,
            &[("x".to_string(), 1), ("y".to_string(), 1)],
            7,
        )
        .unwrap();
        let u = Enveloping::new(&l, 7).unwrap();
        assert_eq!(u.dims(), pbw_series(&l.dims()).unwrap());
        assert_eq!(u.dims().to_u64_vec(), vec![1, 2, 4, 8, 16, 32, 64, 128]);
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let (_, l) = free_lie(Field::Rational, &[("x".to_string(), 1)], 4).unwrap();
        let u = Enveloping::new(&l, 4).unwrap();
        let x_mono = u.index_of(&[0]).unwrap();
        let sq = u.left_mul(0, x_mono).unwrap();
        let half = Field::Rational.from_i64(2).inv();
        assert_eq!(sq, &Vector::from_pairs([(u.index_of(&[1]).unwrap(), half)]));
    }

    #[test]
    fn tensor_algebra_is_associative_on_words() {
        // In the free case UL is the tensor algebra: products of the two
        // generators in different orders are independent.
        let (_, l) = free_lie(
            Field::Rational,
            &[("x".to_string(), 1), ("y".to_string(), 1)],
            4,
        )
        .unwrap();
        let u = Enveloping::new(&l, 4).unwrap();
        let one = u.unit();
        let mut words = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let v = u.left_mul(c, one).unwrap().clone();
                    let v = u.left_mul_vec(b, &v).unwrap();
                    let v = u.left_mul_vec(a, &v).unwrap();
                    words.push(v);
                }
            }
        }
        assert_eq!(crate::linalg::rank(Field::Rational, &words), 8);
    }
}
