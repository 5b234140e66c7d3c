//! Sparse exact linear algebra.
//!
//! [`Vector`] is a sparse coordinate vector over a [`Field`]. [`Rref`] keeps a
//! subspace in reduced row echelon form with unit pivots, which gives canonical
//! normal forms modulo the subspace. [`Echelon`] is the workhorse for ranks and
//! kernels of large maps: over the rationals it keeps every row integral and
//! primitive (fraction-free elimination), over a prime field it is plain
//! Gaussian elimination. Pivots are always the lowest nonzero coordinate, so
//! results depend only on the coordinate order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { entries: BTreeMap::new() }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        let mut v = Vector::zero();
        v.entries.insert(i, field.one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v = Vector::zero();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.entries {
            self.add_at(*i, &(c * x));
        }
    }

    pub fn add(&mut self, other: &Vector) {
        for (i, x) in &other.entries {
            self.add_at(*i, x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            entries: self.entries.iter().map(|(i, x)| (*i, c * x)).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// Re-indexes coordinates through `f`, summing collisions.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> Vector {
        let mut out = Vector::zero();
        for (i, x) in &self.entries {
            out.add_at(f(*i), x);
        }
        out
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }
}

/// A subspace kept in reduced row echelon form with unit pivots.
#[derive(Clone, Debug)]
pub struct Rref {
    field: Field,
    rows: BTreeMap<usize, Vector>,
}

impl Rref {
    pub fn new(field: Field) -> Self {
        Rref { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Normal form of `v` modulo the subspace; supported on non-pivot coordinates.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(*p).cloned() {
                v.add_scaled(&(-&c), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let r = self.reduce(v);
        let (p, lead) = match r.leading() {
            Some((p, c)) => (p, c.clone()),
            None => return false,
        };
        let r = r.scaled(&lead.inv());
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                row.add_scaled(&(-&c), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Coordinates of a member of the subspace with respect to the rows,
    /// keyed by pivot. Returns `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<BTreeMap<usize, Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.rows
                .keys()
                .filter_map(|p| v.get(*p).map(|c| (*p, c.clone())))
                .collect(),
        )
    }
}

#[derive(Clone, Debug)]
struct Row {
    row: Vector,
    tag: Vector,
}

/// Incremental echelon form used for ranks and kernels.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    pivots: BTreeMap<usize, Row>,
    track: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, pivots: BTreeMap::new(), track: false }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a vector; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, v: &Vector) -> bool {
        self.insert_tagged(v, Vector::zero()).is_none()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut r = Row { row: normalize(self.field, v.clone()), tag: Vector::zero() };
        self.reduce_row(&mut r, false);
        r.row.is_zero()
    }

    fn reduce_row(&self, r: &mut Row, track: bool) {
        loop {
            let (lead, c) = match r.row.leading() {
                Some((i, c)) => (i, c.clone()),
                None => return,
            };
            let piv = match self.pivots.get(&lead) {
                Some(p) => p,
                None => return,
            };
            let pc = piv.row.get(lead).cloned().expect("pivot entry");
            match self.field {
                Field::Rational => {
                    // r <- pc * r - c * piv, then divide out the content.
                    let mut row = r.row.scaled(&pc);
                    row.add_scaled(&(-&c), &piv.row);
                    let mut tag = Vector::zero();
                    if track {
                        tag = r.tag.scaled(&pc);
                        tag.add_scaled(&(-&c), &piv.tag);
                    }
                    let g = content(&row, if track { Some(&tag) } else { None });
                    if let Some(g) = g {
                        let ginv = Scalar::Q(BigRational::from_integer(g)).inv();
                        row = row.scaled(&ginv);
                        if track {
                            tag = tag.scaled(&ginv);
                        }
                    }
                    r.row = row;
                    r.tag = tag;
                }
                Field::Prime(_) => {
                    let f = &c / &pc;
                    r.row.add_scaled(&(-&f), &piv.row);
                    if track {
                        r.tag.add_scaled(&(-&f), &piv.tag);
                    }
                }
            }
        }
    }

    /// Inserts `v` carrying `tag`; when `v` reduces to zero returns the reduced
    /// tag (a relation among the inserted vectors).
    fn insert_tagged(&mut self, v: &Vector, tag: Vector) -> Option<Vector> {
        let track = self.track;
        let (row, tag) = match self.field {
            Field::Rational => normalize_pair(v, &tag, track),
            Field::Prime(_) => (v.clone(), tag),
        };
        let mut r = Row { row, tag };
        self.reduce_row(&mut r, track);
        match r.row.leading() {
            Some((lead, _)) => {
                self.pivots.insert(lead, r);
                None
            }
            None => Some(r.tag),
        }
    }
}

/// Scales a rational vector to a primitive integral one (positive leading entry).
fn normalize(field: Field, v: Vector) -> Vector {
    match field {
        Field::Rational => normalize_pair(&v, &Vector::zero(), false).0,
        Field::Prime(_) => v,
    }
}

fn normalize_pair(v: &Vector, tag: &Vector, track: bool) -> (Vector, Vector) {
    let mut l = BigInt::one();
    let all = v.iter().chain(if track { Some(tag.iter()) } else { None }.into_iter().flatten());
    for (_, c) in all {
        if let Scalar::Q(q) = c {
            l = l.lcm(q.denom());
        }
    }
    let s = Scalar::Q(BigRational::from_integer(l));
    let mut row = v.scaled(&s);
    let mut t = if track { tag.scaled(&s) } else { Vector::zero() };
    if let Some(g) = content(&row, if track { Some(&t) } else { None }) {
        let ginv = Scalar::Q(BigRational::from_integer(g)).inv();
        row = row.scaled(&ginv);
        if track {
            t = t.scaled(&ginv);
        }
    }
    (row, t)
}

/// gcd of all (integral) entries, when it is not 1.
fn content(row: &Vector, tag: Option<&Vector>) -> Option<BigInt> {
    let mut g = BigInt::zero();
    for (_, c) in row.iter().chain(tag.into_iter().flat_map(|t| t.iter())) {
        if let Scalar::Q(q) = c {
            g = g.gcd(q.numer());
            if g.is_one() {
                return None;
            }
        }
    }
    if g.is_zero() || g.abs().is_one() {
        None
    } else {
        Some(g.abs())
    }
}

/// Rank of the span of `images` together with a basis of the kernel of the map
/// sending the `i`-th source basis vector to `images[i]`.
pub fn rank_and_kernel(field: Field, images: &[Vector]) -> (usize, Vec<Vector>) {
    let mut ech = Echelon::new(field);
    ech.track = true;
    let mut kernel = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Some(rel) = ech.insert_tagged(v, Vector::unit(i, field)) {
            kernel.push(rel);
        }
    }
    (ech.rank(), kernel)
}

pub fn rank(field: Field, images: &[Vector]) -> usize {
    let mut ech = Echelon::new(field);
    for v in images {
        ech.insert(v);
    }
    ech.rank()
}

/// Applies the map given by `images` to a source vector.
pub fn apply(images: &[Vector], v: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (i, c) in v.iter() {
        out.add_scaled(c, &images[i]);
    }
    out
}

/// Modulus for [`rank_mod_prime`], the Mersenne prime `2^61 - 1`.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce_mod(c: &Scalar, p: u64) -> Option<u64> {
    match c {
        Scalar::P(v, _) => Some(v % p),
        Scalar::Q(q) => {
            let pb = BigInt::from(p);
            let n = q.numer().mod_floor(&pb);
            let d = q.denom().mod_floor(&pb);
            let (n, d): (u64, u64) = (n.try_into().ok()?, d.try_into().ok()?);
            (d != 0).then(|| mul_mod(n, pow_mod(d, p - 2, p), p))
        }
    }
}

/// Rank of `images` reduced modulo `p`. Over the rationals this is a lower
/// bound for the true rank. `None` when a denominator vanishes mod `p`.
pub fn rank_mod_prime(images: &[Vector], p: u64) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for v in images {
        let mut row: Vec<(usize, u64)> = Vec::with_capacity(v.len());
        for (i, c) in v.iter() {
            let x = reduce_mod(c, p)?;
            if x != 0 {
                row.push((i, x));
            }
        }
        while let Some(&(lead, c)) = row.first() {
            let Some(piv) = pivots.get(&lead) else { break };
            // row <- row - c * piv (pivot entry is 1)
            let mut out = Vec::with_capacity(row.len() + piv.len());
            let (mut a, mut b) = (0, 0);
            while a < row.len() || b < piv.len() {
                let ia = row.get(a).map_or(usize::MAX, |e| e.0);
                let ib = piv.get(b).map_or(usize::MAX, |e| e.0);
                let (i, x) = if ia < ib {
                    a += 1;
                    (ia, row[a - 1].1)
                } else if ib < ia {
                    b += 1;
                    (ib, p - mul_mod(c, piv[b - 1].1, p))
                } else {
                    a += 1;
                    b += 1;
                    (ia, (row[a - 1].1 + p - mul_mod(c, piv[b - 1].1, p)) % p)
                };
                if x != 0 {
                    out.push((i, x));
                }
            }
            row = out;
        }
        if let Some(&(lead, c)) = row.first() {
            let inv = pow_mod(c, p - 2, p);
            for e in row.iter_mut() {
                e.1 = mul_mod(e.1, inv, p);
            }
            pivots.insert(lead, row);
        }
    }
    Some(pivots.len())
}
