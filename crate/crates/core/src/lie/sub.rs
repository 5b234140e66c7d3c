//! Homogeneous subspaces, generated subalgebras and ideals, derived and lower
//! central series, the span `E(L)` of ad-nilpotent even elements, and orbits.

use std::collections::BTreeMap;

use super::GradedLieAlgebra;
use crate::error::LieError;
use crate::field::Field;
use crate::linalg::{Rref, Vector};
use crate::series::DimensionSequence;

/// A graded subspace of a Lie algebra, kept as one reduced echelon form per
/// degree. Pivots are the lowest basis index in each row.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    pieces: BTreeMap<u32, Rref>,
}

impl Subspace {
    pub fn new(field: Field) -> Self {
        Subspace { field, pieces: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(Rref::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dim_in_degree(&self, d: u32) -> usize {
        self.pieces.get(&d).map_or(0, Rref::dim)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.pieces.iter().filter(|(_, r)| r.dim() > 0).map(|(d, _)| *d)
    }

    /// Inserts a vector, splitting it into homogeneous components first.
    /// Returns whether the subspace grew.
    pub fn insert(&mut self, l: &GradedLieAlgebra, v: &Vector) -> Result<bool, LieError> {
        let mut grew = false;
        for (d, part) in split_by_degree(l, v)? {
            grew |= self.pieces.entry(d).or_insert_with(|| Rref::new(self.field)).insert(&part);
        }
        Ok(grew)
    }

    pub fn contains(&self, l: &GradedLieAlgebra, v: &Vector) -> Result<bool, LieError> {
        Ok(self.reduce(l, v).is_zero())
    }

    /// Normal form modulo the subspace.
    pub fn reduce(&self, l: &GradedLieAlgebra, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (d, part) in split_by_degree(l, v).expect("indices in range") {
            match self.pieces.get(&d) {
                Some(r) => out.add(&r.reduce(&part)),
                None => out.add(&part),
            }
        }
        out
    }

    pub fn is_pivot(&self, l: &GradedLieAlgebra, i: usize) -> bool {
        self.pieces.get(&l.degree(i)).is_some_and(|r| r.is_pivot(i))
    }

    /// Echelon basis, ordered by degree then pivot.
    pub fn basis(&self) -> Vec<Vector> {
        self.pieces.values().flat_map(|r| r.rows().map(|(_, v)| v.clone())).collect()
    }

    pub fn basis_with_degrees(&self) -> Vec<(u32, Vector)> {
        self.pieces
            .iter()
            .flat_map(|(d, r)| r.rows().map(move |(_, v)| (*d, v.clone())))
            .collect()
    }

    pub fn dims(&self, truncation: usize) -> DimensionSequence {
        DimensionSequence::from_degrees(
            truncation,
            self.pieces.iter().map(|(d, r)| (*d as usize, r.dim() as u64)),
        )
    }

    pub fn whole(l: &GradedLieAlgebra) -> Self {
        let mut s = Subspace::new(l.field());
        for i in 0..l.dim() {
            s.insert(l, &Vector::unit(i, l.field())).expect("basis vector");
        }
        s
    }

    /// Same subspace, as a canonical comparable value.
    pub fn canonical(&self) -> Vec<(u32, Vec<Vector>)> {
        self.pieces
            .iter()
            .filter(|(_, r)| r.dim() > 0)
            .map(|(d, r)| (*d, r.rows().map(|(_, v)| v.clone()).collect()))
            .collect()
    }

    /// The subspace as a Lie algebra in its own right (it must be closed under
    /// the bracket). Basis elements are named after the parent element when the
    /// row is a unit vector and `e<k>` otherwise.
    pub fn to_algebra(&self, l: &GradedLieAlgebra) -> Result<GradedLieAlgebra, LieError> {
        let rows = self.basis_with_degrees();
        let names: Vec<String> = rows
            .iter()
            .enumerate()
            .map(|(k, (_, v))| match v.leading() {
                Some((i, c)) if v.len() == 1 && c.is_one() => l.name(i).to_string(),
                _ => format!("e{k}"),
            })
            .collect();
        let mut sub = GradedLieAlgebra::new(
            l.field(),
            names.iter().cloned().zip(rows.iter().map(|(d, _)| *d)).collect(),
            l.truncation(),
        )?;
        let pos_of = |pivot: usize| rows.iter().position(|(_, v)| v.leading().map(|p| p.0) == Some(pivot));
        for a in 0..rows.len() {
            for b in a..rows.len() {
                let Some(w) = l.try_bracket(&rows[a].1, &rows[b].1)? else { continue };
                let mut coords = Vector::zero();
                for (d, part) in split_by_degree(l, &w)? {
                    let r = self.pieces.get(&d);
                    let c = r.and_then(|r| r.coordinates(&part)).ok_or_else(|| {
                        LieError::Invalid("subspace is not closed under the bracket".into())
                    })?;
                    for (p, x) in c {
                        coords.add_at(pos_of(p).expect("pivot row"), &x);
                    }
                }
                sub.set_bracket(a, b, coords)?;
            }
        }
        Ok(sub)
    }
}

fn split_by_degree(l: &GradedLieAlgebra, v: &Vector) -> Result<BTreeMap<u32, Vector>, LieError> {
    let mut out: BTreeMap<u32, Vector> = BTreeMap::new();
    for (i, c) in v.iter() {
        if i >= l.dim() {
            return Err(LieError::BadIndex(i));
        }
        out.entry(l.degree(i)).or_default().add_at(i, c);
    }
    Ok(out)
}

/// A subspace obtained by closure, with a flag recording whether some bracket
/// needed for the closure fell above the truncation.
#[derive(Clone, Debug)]
pub struct Closure {
    pub space: Subspace,
    /// True when every bracket between members was known.
    pub exact: bool,
}

/// Closure of `span(gens)` under the bracket, through the truncation.
pub fn subalgebra_generated(l: &GradedLieAlgebra, gens: &[Vector]) -> Result<Closure, LieError> {
    close(l, gens, false)
}

/// Smallest ideal containing `gens`, through the truncation.
pub fn ideal_generated(l: &GradedLieAlgebra, gens: &[Vector]) -> Result<Closure, LieError> {
    close(l, gens, true)
}

fn close(l: &GradedLieAlgebra, gens: &[Vector], ideal: bool) -> Result<Closure, LieError> {
    let f = l.field();
    let mut space = Subspace::new(f);
    let mut members: Vec<Vector> = Vec::new();
    let mut queue: Vec<Vector> = Vec::new();
    let mut exact = true;
    for g in gens {
        for (_, part) in split_by_degree(l, g)? {
            if space.insert(l, &part)? {
                queue.push(part);
            }
        }
    }
    let basis: Vec<Vector> = (0..l.dim()).map(|i| Vector::unit(i, f)).collect();
    while let Some(v) = queue.pop() {
        members.push(v.clone());
        let partners: Vec<Vector> = if ideal { basis.clone() } else { members.clone() };
        for w in &partners {
            match l.try_bracket(&v, w)? {
                Some(b) => {
                    if !b.is_zero() && space.insert(l, &b)? {
                        queue.push(b);
                    }
                }
                None => exact = false,
            }
        }
    }
    Ok(Closure { space, exact })
}

/// Span of all brackets `[u, v]` with `u` in `a` and `v` in `b`.
fn bracket_span(
    l: &GradedLieAlgebra,
    a: &Subspace,
    b: &Subspace,
) -> Result<(Subspace, bool), LieError> {
    let mut out = Subspace::new(l.field());
    let mut exact = true;
    let ab = a.basis();
    let bb = b.basis();
    for u in &ab {
        for v in &bb {
            match l.try_bracket(u, v)? {
                Some(w) => {
                    out.insert(l, &w)?;
                }
                None => exact = false,
            }
        }
    }
    Ok((out, exact))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// The series reaches zero and every bracket involved was known. The value
    /// is the solvlength (derived series) or nilpotency class (lower central).
    Certified(usize),
    /// Zero within the truncation at this step, but some contributing bracket
    /// lies above the truncation.
    ZeroWithinTruncation(usize),
    /// Still nonzero after the given number of steps (the series stabilized).
    Stabilized(usize),
}

#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub space: Subspace,
    /// Exact when no bracket above the truncation fed this or an earlier term.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// Term 0 is the starting space.
    pub terms: Vec<SeriesTerm>,
    pub verdict: SeriesVerdict,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.space.dim()).collect()
    }

    pub fn certified_value(&self) -> Option<usize> {
        match self.verdict {
            SeriesVerdict::Certified(k) => Some(k),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let verdict = match &self.verdict {
            SeriesVerdict::Certified(k) => serde_json::json!({ "certified": k }),
            SeriesVerdict::ZeroWithinTruncation(k) => {
                serde_json::json!({ "zero_within_truncation": k })
            }
            SeriesVerdict::Stabilized(k) => serde_json::json!({ "stabilized_nonzero": k }),
        };
        serde_json::json!({
            "dims": self.dims(),
            "exact": self.terms.iter().map(|t| t.exact).collect::<Vec<_>>(),
            "verdict": verdict,
        })
    }
}

/// `S ⊇ [S,S] ⊇ [[S,S],[S,S]] ⊇ ...`; the solvlength is the number of steps
/// to reach zero (0 for the zero space, 1 for a nonzero abelian one).
pub fn derived_series(l: &GradedLieAlgebra, start: &Subspace) -> Result<SeriesReport, LieError> {
    run_series(l, start, false)
}

/// `S ⊇ [S,S] ⊇ [S,[S,S]] ⊇ ...`; the class `c` has `C^c != 0 = C^{c+1}` with
/// `C^1 = S`.
pub fn lower_central_series(
    l: &GradedLieAlgebra,
    start: &Subspace,
) -> Result<SeriesReport, LieError> {
    run_series(l, start, true)
}

fn run_series(l: &GradedLieAlgebra, start: &Subspace, central: bool) -> Result<SeriesReport, LieError> {
    let mut terms = vec![SeriesTerm { space: start.clone(), exact: true }];
    loop {
        let cur = terms.last().expect("nonempty");
        let k = terms.len() - 1;
        if cur.space.is_zero() {
            let verdict = if cur.exact {
                SeriesVerdict::Certified(k)
            } else {
                SeriesVerdict::ZeroWithinTruncation(k)
            };
            return Ok(SeriesReport { terms, verdict });
        }
        let (next, exact) = if central {
            bracket_span(l, start, &cur.space)?
        } else {
            bracket_span(l, &cur.space, &cur.space)?
        };
        let exact = exact && cur.exact;
        if next.canonical() == cur.space.canonical() {
            terms.push(SeriesTerm { space: next, exact });
            return Ok(SeriesReport { terms, verdict: SeriesVerdict::Stabilized(k) });
        }
        terms.push(SeriesTerm { space: next, exact });
    }
}

/// Outcome of the ad-nilpotency test for one even basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyStatus {
    /// `(ad x)^m` kills every basis element, with all iterates computed exactly.
    Certified { exponent: usize },
    /// Some orbit left the truncation before dying.
    Unknown,
    /// An orbit was still alive after the exponent bound (complete algebras only).
    NotNilpotent,
}

#[derive(Clone, Debug)]
pub struct EReport {
    pub space: Subspace,
    pub tested: Vec<(usize, NilpotencyStatus)>,
    /// True when some even element could not be certified either way.
    pub truncation_limited: bool,
    pub exponent_bound: usize,
}

impl EReport {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn to_json(&self, l: &GradedLieAlgebra) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim(),
            "elements": self.tested.iter().filter(|(_, s)| matches!(s, NilpotencyStatus::Certified { .. }))
                .map(|(i, _)| l.name(*i).to_string()).collect::<Vec<_>>(),
            "uncertified": self.tested.iter().filter(|(_, s)| !matches!(s, NilpotencyStatus::Certified { .. }))
                .map(|(i, _)| l.name(*i).to_string()).collect::<Vec<_>>(),
            "truncation_limited": self.truncation_limited,
            "exponent_bound": self.exponent_bound,
        })
    }
}

/// Tests whether `ad x` is nilpotent on every basis element, iterating at most
/// `bound` times per orbit.
pub fn ad_nilpotency(l: &GradedLieAlgebra, x: usize, bound: usize) -> Result<NilpotencyStatus, LieError> {
    let f = l.field();
    let xv = Vector::unit(x, f);
    let mut worst = 0;
    for b in 0..l.dim() {
        let mut cur = Vector::unit(b, f);
        let mut m = 0;
        loop {
            if cur.is_zero() {
                break;
            }
            if m >= bound {
                return Ok(NilpotencyStatus::NotNilpotent);
            }
            match l.try_bracket(&xv, &cur)? {
                Some(next) => cur = next,
                None => return Ok(NilpotencyStatus::Unknown),
            }
            m += 1;
        }
        worst = worst.max(m);
    }
    Ok(NilpotencyStatus::Certified { exponent: worst })
}

/// Span of the even basis elements whose adjoint action is certified
/// nilpotent. Truncation never manufactures nilpotency: an orbit that leaves
/// the computed range leaves its element out.
pub fn e_of_l(l: &GradedLieAlgebra) -> Result<EReport, LieError> {
    e_of_l_with_bound(l, default_exponent_bound(l))
}

pub fn default_exponent_bound(l: &GradedLieAlgebra) -> usize {
    l.dim() + 1
}

pub fn e_of_l_with_bound(l: &GradedLieAlgebra, bound: usize) -> Result<EReport, LieError> {
    let mut space = Subspace::new(l.field());
    let mut tested = Vec::new();
    let mut limited = false;
    for x in l.even_indices() {
        let status = ad_nilpotency(l, x, bound)?;
        match status {
            NilpotencyStatus::Certified { .. } => {
                space.insert(l, &Vector::unit(x, l.field()))?;
            }
            NilpotencyStatus::Unknown => limited = true,
            NilpotencyStatus::NotNilpotent => {
                if !l.is_complete() {
                    limited = true;
                }
            }
        }
        tested.push((x, status));
    }
    Ok(EReport { space, tested, truncation_limited: limited, exponent_bound: bound })
}

/// Dimensions of the smallest subspace containing `x` and stable under `ad e`
/// for every `e` in `acting`, through degree `n`. With `modulo`, the
/// computation takes place in `L / modulo` (which must be an `acting`-stable
/// subspace).
pub fn orbit_dims(
    l: &GradedLieAlgebra,
    acting: &Subspace,
    x: &Vector,
    n: u32,
    modulo: Option<&Subspace>,
) -> Result<DimensionSequence, LieError> {
    if let Some(t) = l.truncation() {
        if n > t {
            return Err(LieError::BeyondTruncation { degree: n, truncation: t });
        }
    }
    let reduce = |v: &Vector| match modulo {
        Some(m) => m.reduce(l, v),
        None => v.clone(),
    };
    let mut orbit = Subspace::new(l.field());
    let mut queue = Vec::new();
    let start = reduce(x);
    if !start.is_zero() && l.vector_degree(&start)?.is_some_and(|d| d <= n) && orbit.insert(l, &start)? {
        queue.push(start);
    }
    let acting = acting.basis();
    while let Some(v) = queue.pop() {
        for e in &acting {
            let (Some(de), Some(dv)) = (l.vector_degree(e)?, l.vector_degree(&v)?) else { continue };
            if de + dv > n {
                continue;
            }
            let w = reduce(&l.bracket(e, &v)?);
            if !w.is_zero() && orbit.insert(l, &w)? {
                queue.push(w);
            }
        }
    }
    Ok(orbit.dims(n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(n: u32) -> GradedLieAlgebra {
        // a in degree 2 acting freely on odd y_1, y_3, ...
        let q = Field::Rational;
        let mut basis = vec![("a".to_string(), 2)];
        for d in (1..=n).step_by(2) {
            basis.push((format!("y{d}"), d));
        }
        let mut l = GradedLieAlgebra::new(q, basis, Some(n)).unwrap();
        for d in (1..=n.saturating_sub(2)).step_by(2) {
            l.set_bracket_by_name("a", &format!("y{d}"), &[(&format!("y{}", d + 2), q.one())])
                .unwrap();
        }
        l
    }

    #[test]
    fn free_tower_excludes_a_from_e() {
        let l = tower(15);
        assert!(l.validate().is_empty());
        let e = e_of_l(&l).unwrap();
        assert_eq!(e.dim(), 0);
        assert!(e.truncation_limited);
    }

    #[test]
    fn abelian_e_is_even_part() {
        let q = Field::Rational;
        let l = GradedLieAlgebra::new(
            q,
            vec![("u".into(), 2), ("v".into(), 3), ("w".into(), 4)],
            None,
        )
        .unwrap();
        let e = e_of_l(&l).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(!e.truncation_limited);
        assert_eq!(derived_series(&l, &Subspace::whole(&l)).unwrap().verdict, SeriesVerdict::Certified(1));
        assert_eq!(
            lower_central_series(&l, &Subspace::whole(&l)).unwrap().verdict,
            SeriesVerdict::Certified(1)
        );
        let z = GradedLieAlgebra::zero(q);
        assert_eq!(
            lower_central_series(&z, &Subspace::whole(&z)).unwrap().verdict,
            SeriesVerdict::Certified(0)
        );
    }

    #[test]
    fn generated_subalgebra_of_one_even_element_is_a_line() {
        let l = tower(11);
        let a = Vector::unit(l.index_of("a").unwrap(), Field::Rational);
        let c = subalgebra_generated(&l, &[a]).unwrap();
        assert_eq!(c.space.dim(), 1);
        let all: Vec<Vector> = (0..l.dim()).map(|i| Vector::unit(i, Field::Rational)).collect();
        let c = subalgebra_generated(&l, &all).unwrap();
        assert_eq!(c.space.dim(), l.dim());
        let again = subalgebra_generated(&l, &c.space.basis()).unwrap();
        assert_eq!(again.space.canonical(), c.space.canonical());
    }

    #[test]
    fn orbit_of_tower() {
        let l = tower(11);
        let a = Vector::unit(l.index_of("a").unwrap(), Field::Rational);
        let a = subalgebra_generated(&l, &[a]).unwrap().space;
        let y1 = Vector::unit(l.index_of("y1").unwrap(), Field::Rational);
        let o = orbit_dims(&l, &a, &y1, 11, None).unwrap();
        assert_eq!(o.to_u64_vec(), vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert!(orbit_dims(&l, &a, &Vector::zero(), 11, None).unwrap().top_degree().is_none());
    }

    #[test]
    fn truncated_series_are_not_certified() {
        let l = tower(11);
        let whole = Subspace::whole(&l);
        let d = derived_series(&l, &whole).unwrap();
        assert_eq!(d.verdict, SeriesVerdict::ZeroWithinTruncation(2));
        let sub = subalgebra_generated(&l, &[Vector::unit(0, Field::Rational)]).unwrap().space;
        assert!(to_algebra_ok(&l, &sub));
    }

    fn to_algebra_ok(l: &GradedLieAlgebra, s: &Subspace) -> bool {
        s.to_algebra(l).map(|a| a.validate().is_empty()).unwrap_or(false)
    }
}
