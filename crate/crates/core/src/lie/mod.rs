//! Graded Lie algebras given by structure constants.
//!
//! The basis is kept sorted by degree (stable in input order). Brackets are
//! stored for index pairs `i <= j`; `[x_j, x_i]` is derived through
//! `[y, x] = -(-1)^{|x||y|} [x, y]`. An algebra is either complete (every
//! bracket is known) or truncated at `N`, in which case brackets landing above
//! `N` are unknown and asking for them is an error.

mod sub;

pub use sub::*;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::LieError;
use crate::field::{sign, Field, Scalar};
use crate::linalg::Vector;
use crate::series::DimensionSequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    field: Field,
    basis: Vec<BasisElement>,
    names: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), Vector>,
    /// Entries supplied as `(i, j)` with `i > j`, kept verbatim for validation.
    reversed: Vec<(usize, usize, Vector)>,
    truncation: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Homogeneity,
    Antisymmetry,
    Jacobi,
    Cube,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Homogeneity => "homogeneity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Jacobi => "jacobi",
            Axiom::Cube => "cube",
        })
    }
}

/// A failed axiom instance together with its nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub elements: Vec<String>,
    pub defect: Vec<(String, Scalar)>,
}

impl Violation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "axiom": self.axiom.to_string(),
            "elements": self.elements,
            "defect": self.defect.iter().map(|(b, c)| serde_json::json!({
                "basis": b, "coeff": c.to_string()
            })).collect::<Vec<_>>(),
        })
    }
}

impl GradedLieAlgebra {
    /// An algebra with the given basis and all brackets zero.
    pub fn new(
        field: Field,
        basis: Vec<(String, u32)>,
        truncation: Option<u32>,
    ) -> Result<Self, LieError> {
        let mut elems: Vec<BasisElement> = Vec::with_capacity(basis.len());
        let mut seen = HashMap::new();
        for (name, degree) in basis {
            if degree == 0 {
                return Err(LieError::DegreeZero(name));
            }
            if let Some(n) = truncation {
                if degree > n {
                    return Err(LieError::AboveTruncation { name, degree, truncation: n });
                }
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(LieError::DuplicateName(name));
            }
            elems.push(BasisElement { name, degree });
        }
        elems.sort_by_key(|e| e.degree);
        let names = elems.iter().enumerate().map(|(i, e)| (e.name.clone(), i)).collect();
        Ok(GradedLieAlgebra {
            field,
            basis: elems,
            names,
            table: BTreeMap::new(),
            reversed: Vec::new(),
            truncation,
        })
    }

    pub fn zero(field: Field) -> Self {
        GradedLieAlgebra::new(field, Vec::new(), None).expect("empty basis is valid")
    }

    /// Sets `[x_i, x_j] = value`. Entries with `i > j` are recorded as given and
    /// also used to derive the stored `(j, i)` entry unless that one is set.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        for k in value.indices() {
            self.check_index(k)?;
        }
        if let Some(n) = self.truncation {
            let target = self.basis[i].degree + self.basis[j].degree;
            if target > n {
                if value.is_zero() {
                    return Ok(());
                }
                return Err(LieError::BeyondTruncation { degree: target, truncation: n });
            }
        }
        if i <= j {
            if value.is_zero() {
                self.table.remove(&(i, j));
            } else {
                self.table.insert((i, j), value);
            }
        } else {
            let derived = value.scaled(&self.swap_sign(i, j));
            self.reversed.push((i, j, value));
            self.table.entry((j, i)).or_insert(derived);
            if self.table.get(&(j, i)).is_some_and(Vector::is_zero) {
                self.table.remove(&(j, i));
            }
        }
        Ok(())
    }

    pub fn set_bracket_by_name(
        &mut self,
        left: &str,
        right: &str,
        value: &[(&str, Scalar)],
    ) -> Result<(), LieError> {
        let i = self.index_of(left)?;
        let j = self.index_of(right)?;
        let mut v = Vector::zero();
        for (n, c) in value {
            v.add_at(self.index_of(n)?, c);
        }
        self.set_bracket(i, j, v)
    }

    fn check_index(&self, i: usize) -> Result<(), LieError> {
        if i < self.basis.len() {
            Ok(())
        } else {
            Err(LieError::BadIndex(i))
        }
    }

    /// `-(-1)^{|x_i||x_j|}`, the factor turning `[x_i, x_j]` into `[x_j, x_i]`.
    fn swap_sign(&self, i: usize, j: usize) -> Scalar {
        let both_odd = self.is_odd(i) && self.is_odd(j);
        sign(self.field, !both_odd)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.basis[i].degree % 2 == 1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LieError> {
        self.names.get(name).copied().ok_or_else(|| LieError::UnknownName(name.to_string()))
    }

    pub fn indices_of_degree(&self, d: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.basis[i].degree == d)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_odd(i)).collect()
    }

    pub fn even_dim(&self) -> usize {
        self.even_indices().len()
    }

    pub fn top_degree(&self) -> u32 {
        self.basis.last().map_or(0, |e| e.degree)
    }

    pub fn max_degree(&self) -> u32 {
        self.top_degree()
    }

    pub fn sum_of_degrees(&self) -> u64 {
        self.basis.iter().map(|e| e.degree as u64).sum()
    }

    pub fn is_odd_concentrated(&self) -> bool {
        (0..self.dim()).all(|i| self.is_odd(i))
    }

    /// Whether `deg` is within the range where brackets are known.
    pub fn in_range(&self, deg: u32) -> bool {
        self.truncation.is_none_or(|n| deg <= n)
    }

    /// Stored entries `(i, j) -> [x_i, x_j]` with `i <= j`, nonzero only.
    pub fn stored_brackets(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.table.iter().map(|(k, v)| (*k, v))
    }

    /// Dimensions through the truncation degree, or through the top degree for
    /// a complete algebra.
    pub fn dims(&self) -> DimensionSequence {
        let n = self.truncation.unwrap_or_else(|| self.top_degree()) as usize;
        DimensionSequence::from_degrees(n, self.basis.iter().map(|e| (e.degree as usize, 1)))
    }

    /// Dimensions through degree `n`; beyond the truncation this is an error.
    pub fn dims_through(&self, n: u32) -> Result<DimensionSequence, LieError> {
        if let Some(t) = self.truncation {
            if n > t {
                return Err(LieError::BeyondTruncation { degree: n, truncation: t });
            }
        }
        Ok(DimensionSequence::from_degrees(
            n as usize,
            self.basis.iter().map(|e| (e.degree as usize, 1)),
        ))
    }

    /// Degree of a homogeneous vector; `None` for zero.
    pub fn vector_degree(&self, v: &Vector) -> Result<Option<u32>, LieError> {
        let mut deg = None;
        for i in v.indices() {
            self.check_index(i)?;
            let d = self.basis[i].degree;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(LieError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// `[x_i, x_j]` without any truncation check (zero when unknown).
    fn raw_bracket_basis(&self, i: usize, j: usize) -> Vector {
        if i <= j {
            self.table.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            match self.table.get(&(j, i)) {
                Some(v) => v.scaled(&self.swap_sign(j, i)),
                None => Vector::zero(),
            }
        }
    }

    fn raw_bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let ab = a * b;
                out.add_scaled(&ab, &self.raw_bracket_basis(i, j));
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<Vector, LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        let target = self.basis[i].degree + self.basis[j].degree;
        if let Some(n) = self.truncation {
            if target > n {
                return Err(LieError::BeyondTruncation { degree: target, truncation: n });
            }
        }
        Ok(self.raw_bracket_basis(i, j))
    }

    /// Bilinear bracket of homogeneous vectors.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Result<Vector, LieError> {
        let du = self.vector_degree(u)?;
        let dv = self.vector_degree(v)?;
        let (du, dv) = match (du, dv) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(Vector::zero()),
        };
        if let Some(n) = self.truncation {
            if du + dv > n {
                return Err(LieError::BeyondTruncation { degree: du + dv, truncation: n });
            }
        }
        Ok(self.raw_bracket(u, v))
    }

    /// Bracket that reports `None` instead of an error above the truncation.
    pub fn try_bracket(&self, u: &Vector, v: &Vector) -> Result<Option<Vector>, LieError> {
        match self.bracket(u, v) {
            Ok(w) => Ok(Some(w)),
            Err(LieError::BeyondTruncation { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn named(&self, v: &Vector) -> Vec<(String, Scalar)> {
        v.iter()
            .map(|(i, c)| {
                let name = self.basis.get(i).map_or_else(|| format!("#{i}"), |e| e.name.clone());
                (name, c.clone())
            })
            .collect()
    }

    /// All axiom violations within the truncation. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let names = |ix: &[usize]| ix.iter().map(|&i| self.basis[i].name.clone()).collect();
        for (&(i, j), v) in &self.table {
            let target = self.basis[i].degree + self.basis[j].degree;
            let off: Vector = Vector::from_pairs(
                v.iter().filter(|(k, _)| self.basis[*k].degree != target).map(|(k, c)| (k, c.clone())),
            );
            if !off.is_zero() {
                out.push(Violation {
                    axiom: Axiom::Homogeneity,
                    elements: names(&[i, j]),
                    defect: self.named(&off),
                });
            }
            if i == j && !self.is_odd(i) {
                // [x,x] + [x,x] = 0 for even x
                out.push(Violation {
                    axiom: Axiom::Antisymmetry,
                    elements: names(&[i, i]),
                    defect: self.named(&v.scaled(&self.field.from_i64(2))),
                });
            }
        }
        for (i, j, given) in &self.reversed {
            // [x_j, x_i] + (-1)^{|x_i||x_j|} [x_i, x_j]
            let stored = self.raw_bracket_basis(*j, *i);
            let mut defect = stored;
            defect.add_scaled(&(-&self.swap_sign(*i, *j)), given);
            if !defect.is_zero() {
                out.push(Violation {
                    axiom: Axiom::Antisymmetry,
                    elements: names(&[*j, *i]),
                    defect: self.named(&defect),
                });
            }
        }
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let deg = self.basis[i].degree + self.basis[j].degree + self.basis[k].degree;
                    if !self.in_range(deg) {
                        continue;
                    }
                    let defect = self.jacobiator(i, j, k);
                    if !defect.is_zero() {
                        out.push(Violation {
                            axiom: Axiom::Jacobi,
                            elements: names(&[i, j, k]),
                            defect: self.named(&defect),
                        });
                    }
                }
            }
        }
        if self.field.characteristic() == 3 {
            for i in 0..n {
                if self.is_odd(i) && self.in_range(3 * self.basis[i].degree) {
                    let x = Vector::unit(i, self.field);
                    let c = self.raw_bracket(&x, &self.raw_bracket_basis(i, i));
                    if !c.is_zero() {
                        out.push(Violation {
                            axiom: Axiom::Cube,
                            elements: names(&[i]),
                            defect: self.named(&c),
                        });
                    }
                }
            }
        }
        out
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]` on basis elements.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let f = self.field;
        let (x, y, z) = (Vector::unit(i, f), Vector::unit(j, f), Vector::unit(k, f));
        let mut out = self.raw_bracket(&x, &self.raw_bracket_basis(j, k));
        out.add_scaled(&f.from_i64(-1), &self.raw_bracket(&self.raw_bracket_basis(i, j), &z));
        let s = sign(f, self.is_odd(i) && self.is_odd(j));
        out.add_scaled(&(-&s), &self.raw_bracket(&y, &self.raw_bracket_basis(i, k)));
        out
    }

    /// Direct sum; cross brackets vanish. Names are suffixed `.1`/`.2` only
    /// when the two bases share a name.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, LieError> {
        Ok(self.direct_sum_with_maps(other)?.0)
    }

    /// Direct sum together with the positions of each summand's basis
    /// elements in the sum (`None` when cut off by the truncation).
    #[allow(clippy::type_complexity)]
    pub fn direct_sum_with_maps(
        &self,
        other: &Self,
    ) -> Result<(Self, Vec<Option<usize>>, Vec<Option<usize>>), LieError> {
        if self.field != other.field {
            return Err(LieError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let clash = other.basis.iter().any(|e| self.names.contains_key(&e.name));
        let rename = |e: &BasisElement, k: usize| {
            if clash {
                format!("{}.{k}", e.name)
            } else {
                e.name.clone()
            }
        };
        let truncation = match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let keep = |e: &BasisElement| truncation.is_none_or(|n| e.degree <= n);
        let mut basis = Vec::new();
        for e in self.basis.iter().filter(|e| keep(e)) {
            basis.push((rename(e, 1), e.degree));
        }
        for e in other.basis.iter().filter(|e| keep(e)) {
            basis.push((rename(e, 2), e.degree));
        }
        let mut sum = GradedLieAlgebra::new(self.field, basis, truncation)?;
        let mut maps = Vec::new();
        for (part, k) in [(self, 1), (other, 2)] {
            let map: Vec<Option<usize>> = part
                .basis
                .iter()
                .map(|e| sum.names.get(&rename(e, k)).copied())
                .collect();
            maps.push(map.clone());
            for (&(i, j), v) in &part.table {
                if let (Some(a), Some(b)) = (map[i], map[j]) {
                    if !sum.in_range(sum.degree(a) + sum.degree(b)) {
                        continue;
                    }
                    let w = v.map_indices(|t| map[t].expect("target within truncation"));
                    let (a, b, w) = if a <= b {
                        (a, b, w)
                    } else {
                        (b, a, w.scaled(&sum.swap_sign(a, b)))
                    };
                    sum.set_bracket(a, b, w)?;
                }
            }
        }
        let second = maps.pop().expect("two summands");
        let first = maps.pop().expect("two summands");
        Ok((sum, first, second))
    }

    /// The ideal `L_{>n}` and the finite-dimensional quotient `L / L_{>n}`.
    pub fn truncation_ideal(&self, n: u32) -> Result<(Subspace, GradedLieAlgebra), LieError> {
        let mut ideal = Subspace::new(self.field);
        for i in 0..self.dim() {
            if self.basis[i].degree > n {
                ideal.insert(self, &Vector::unit(i, self.field))?;
            }
        }
        let keep: Vec<(String, u32)> = self
            .basis
            .iter()
            .filter(|e| e.degree <= n)
            .map(|e| (e.name.clone(), e.degree))
            .collect();
        let complete = self.truncation.is_none_or(|t| n < t);
        let mut q = GradedLieAlgebra::new(
            self.field,
            keep,
            if complete { None } else { self.truncation },
        )?;
        for (&(i, j), v) in &self.table {
            let target = self.basis[i].degree + self.basis[j].degree;
            if target > n {
                continue;
            }
            let w = v.map_indices(|t| q.names[&self.basis[t].name]);
            q.set_bracket(q.names[&self.basis[i].name], q.names[&self.basis[j].name], w)?;
        }
        Ok((ideal, q))
    }

    /// `L / I` for an ideal `I`. The quotient basis consists of the parent basis
    /// elements that are not pivots of `I`.
    pub fn quotient_by(&self, ideal: &Subspace) -> Result<GradedLieAlgebra, LieError> {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| !ideal.is_pivot(self, i)).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut q = GradedLieAlgebra::new(
            self.field,
            keep.iter().map(|&i| (self.basis[i].name.clone(), self.basis[i].degree)).collect(),
            self.truncation,
        )?;
        // `keep` is sorted by degree, so positions agree with q's basis order.
        for (a, &i) in keep.iter().enumerate() {
            for &j in &keep[a..] {
                if !self.in_range(self.degree(i) + self.degree(j)) {
                    continue;
                }
                let v = ideal.reduce(self, &self.raw_bracket_basis(i, j));
                let w = v.map_indices(|t| pos[&t]);
                q.set_bracket(pos[&i], pos[&j], w)?;
            }
        }
        Ok(q)
    }

    /// The same algebra with a smaller truncation.
    pub fn restrict(&self, n: u32) -> Result<GradedLieAlgebra, LieError> {
        if let Some(t) = self.truncation {
            if n > t {
                return Err(LieError::BeyondTruncation { degree: n, truncation: t });
            }
        }
        let keep: Vec<(String, u32)> = self
            .basis
            .iter()
            .filter(|e| e.degree <= n)
            .map(|e| (e.name.clone(), e.degree))
            .collect();
        let mut r = GradedLieAlgebra::new(self.field, keep, Some(n))?;
        for (&(i, j), v) in &self.table {
            if self.degree(i) + self.degree(j) <= n {
                let w = v.map_indices(|t| r.names[&self.basis[t].name]);
                r.set_bracket(r.names[&self.basis[i].name], r.names[&self.basis[j].name], w)?;
            }
        }
        Ok(r)
    }

    /// Marks a truncated algebra complete when its structure forces all
    /// higher degrees to vanish: nothing lives in degrees `t+1..=N` where
    /// `t` is the top basis degree and `2t <= N`, and no generator lies above
    /// `N`. The caller vouches for the last condition.
    pub fn close_if_determined(mut self) -> Self {
        if let Some(n) = self.truncation {
            if 2 * self.top_degree() <= n {
                self.truncation = None;
            }
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn heisenberg() -> GradedLieAlgebra {
        // x, y in degree 2, z = [x,y] in degree 4
        let mut l = GradedLieAlgebra::new(
            q(),
            vec![("x".into(), 2), ("y".into(), 2), ("z".into(), 4)],
            None,
        )
        .unwrap();
        l.set_bracket_by_name("x", "y", &[("z", q().one())]).unwrap();
        l
    }

    #[test]
    fn abelian_is_valid() {
        let l = GradedLieAlgebra::new(q(), vec![("u".into(), 1), ("v".into(), 2)], None).unwrap();
        assert!(l.validate().is_empty());
    }

    #[test]
    fn even_pair_with_equal_signs_violates_antisymmetry() {
        let mut l = GradedLieAlgebra::new(
            q(),
            vec![("x".into(), 2), ("y".into(), 2), ("z".into(), 4)],
            None,
        )
        .unwrap();
        l.set_bracket_by_name("x", "y", &[("z", q().one())]).unwrap();
        l.set_bracket_by_name("y", "x", &[("z", q().one())]).unwrap();
        let v = l.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].axiom, Axiom::Antisymmetry);
        assert_eq!(v[0].elements, vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn derived_reverse_entries_follow_sign_rule() {
        let l = heisenberg();
        let (x, y) = (Vector::unit(0, q()), Vector::unit(1, q()));
        assert_eq!(l.bracket(&y, &x).unwrap(), Vector::unit(2, q()).neg());
        assert!(l.bracket(&x, &x).unwrap().is_zero());
        assert!(l.validate().is_empty());
    }

    #[test]
    fn broken_jacobi_is_reported() {
        // odd x of degree 1 with [x,x] = y and [x,y] = z violates Jacobi
        let mut l = GradedLieAlgebra::new(
            q(),
            vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 3)],
            None,
        )
        .unwrap();
        l.set_bracket_by_name("x", "x", &[("y", q().one())]).unwrap();
        l.set_bracket_by_name("x", "y", &[("z", q().one())]).unwrap();
        let v = l.validate();
        assert!(v.iter().any(|v| v.axiom == Axiom::Jacobi && v.elements == ["x", "x", "x"]));
    }

    #[test]
    fn cube_condition_in_characteristic_three() {
        let f3 = Field::prime(3).unwrap();
        let mut l = GradedLieAlgebra::new(
            f3,
            vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 3)],
            None,
        )
        .unwrap();
        l.set_bracket_by_name("x", "x", &[("y", f3.one())]).unwrap();
        l.set_bracket_by_name("x", "y", &[("z", f3.one())]).unwrap();
        // Jacobi on (x,x,x) is 3[x,[x,x]] = 0 here; only the cube check fires.
        let v = l.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].axiom, Axiom::Cube);
    }

    #[test]
    fn truncation_is_an_error_not_zero() {
        let l = GradedLieAlgebra::new(q(), vec![("a".into(), 2), ("b".into(), 3)], Some(4)).unwrap();
        let (a, b) = (Vector::unit(0, q()), Vector::unit(1, q()));
        assert!(matches!(l.bracket(&a, &b), Err(LieError::BeyondTruncation { degree: 5, .. })));
        assert!(l.bracket(&a, &a).unwrap().is_zero());
        assert!(l.dims_through(5).is_err());
    }

    #[test]
    fn direct_sum_adds_dims() {
        let h = heisenberg();
        let s = h.direct_sum(&h).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(s.validate().is_empty());
        assert_eq!(s.dims(), h.dims().add(&h.dims()));
        let z = GradedLieAlgebra::zero(q());
        assert_eq!(h.direct_sum(&z).unwrap().dims(), h.dims());
        let f5 = GradedLieAlgebra::zero(Field::prime(5).unwrap());
        assert!(h.direct_sum(&f5).is_err());
    }

    #[test]
    fn truncation_ideal_quotients() {
        let h = heisenberg();
        let (i, quot) = h.truncation_ideal(2).unwrap();
        assert_eq!(i.dim(), 1);
        assert_eq!(quot.dim(), 2);
        assert!(quot.stored_brackets().next().is_none());
        let (i, quot) = h.truncation_ideal(10).unwrap();
        assert_eq!(i.dim(), 0);
        assert_eq!(quot.dims(), h.dims());
        assert_eq!(h.truncation_ideal(0).unwrap().1.dim(), 0);
        let q2 = h.quotient_by(&h.truncation_ideal(2).unwrap().0).unwrap();
        assert_eq!(q2.dim(), 2);
    }
}
