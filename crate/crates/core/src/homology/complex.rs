//! The Chevalley-Eilenberg resolution `UL ⊗ Γ(sL) ⊗ M` and its chain complex
//! `Γ(sL) ⊗ M`.
//!
//! `Γ(sL)` is the graded-commutative divided power algebra on the suspension:
//! `|s x| = |x| + 1`, so `s x` is an exterior generator for even `x` and a
//! divided power generator for odd `x`. A monomial is a sorted list of
//! `(index, exponent)`. Its homological degree is the sum of exponents and its
//! internal degree (weight) is `sum a |x|`, unsuspended, so all differentials
//! preserve the weight. Signs are Koszul signs in the suspended degrees.
//!
//! Convention, for a monomial `ω` with `B_j` the suspended degree of the
//! factors before position `j`:
//! - pulling one `s x_j` to the front costs `(-1)^{|s x_j| B_j}` (coproduct
//!   component, coefficient 1 even for divided powers);
//! - `d(s x_j · s x_k · r) = (-1)^{|s x_j|} s[x_j, x_k] · r` and
//!   `d(γ_2(s x) · r) = ½ s[x, x] · r`;
//! - on the resolution,
//!   `D(1⊗ω⊗m) = Σ_j ± (x_j ⊗ r_j ⊗ m - (-1)^{|x_j||r_j|} 1 ⊗ r_j ⊗ x_j m) + 1 ⊗ dω ⊗ m`.
//!
//! `D` is linear over `UL` up to the Koszul sign; the coefficients are twisted
//! by `(-1)^{|a|(q-1)}` so that the stored map is plainly `UL`-linear. Both
//! `D² = 0` and `d² = 0` are checked on construction.

use std::collections::{BTreeMap, HashMap};

use super::module::GradedModule;
use crate::error::HomologyError;
use crate::field::{sign, Field, Scalar};
use crate::lie::GradedLieAlgebra;
use crate::linalg::{rank, Vector};

pub type Gamma = Vec<(usize, u32)>;

fn s_deg(l: &GradedLieAlgebra, e: usize) -> u32 {
    l.degree(e) + 1
}

fn s_odd(l: &GradedLieAlgebra, e: usize) -> bool {
    l.degree(e).is_multiple_of(2)
}

pub fn gamma_q(g: &Gamma) -> usize {
    g.iter().map(|(_, a)| *a as usize).sum()
}

pub fn gamma_weight(l: &GradedLieAlgebra, g: &Gamma) -> i64 {
    g.iter().map(|(e, a)| (*a as i64) * l.degree(*e) as i64).sum()
}

fn gamma_sdeg(l: &GradedLieAlgebra, g: &Gamma) -> u64 {
    g.iter().map(|(e, a)| (*a as u64) * s_deg(l, *e) as u64).sum()
}

pub fn gamma_name(l: &GradedLieAlgebra, g: &Gamma) -> String {
    if g.is_empty() {
        return "1".to_string();
    }
    g.iter()
        .map(|(e, a)| if *a == 1 { format!("s{}", l.name(*e)) } else { format!("s{}^({a})", l.name(*e)) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Removes one factor at position `pos`; returns the sign parity and the rest.
fn extract(l: &GradedLieAlgebra, g: &Gamma, pos: usize) -> (bool, Gamma) {
    let before: u64 = g[..pos].iter().map(|(e, a)| (*a as u64) * s_deg(l, *e) as u64).sum();
    let e = g[pos].0;
    let neg = s_odd(l, e) && before % 2 == 1;
    let mut rest = g.clone();
    if rest[pos].1 == 1 {
        rest.remove(pos);
    } else {
        rest[pos].1 -= 1;
    }
    (neg, rest)
}

/// `s x_b · g`: sign parity, integer coefficient and the product monomial.
fn insert(l: &GradedLieAlgebra, b: usize, g: &Gamma) -> Option<(bool, u32, Gamma)> {
    let before: u64 = g.iter().filter(|(e, _)| *e < b).map(|(e, a)| (*a as u64) * s_deg(l, *e) as u64).sum();
    let neg = s_odd(l, b) && before % 2 == 1;
    let mut out = g.clone();
    match out.binary_search_by_key(&b, |(e, _)| *e) {
        Ok(p) => {
            if s_odd(l, b) {
                return None;
            }
            out[p].1 += 1;
            Some((neg, out[p].1, out))
        }
        Err(p) => {
            out.insert(p, (b, 1));
            Some((neg, 1, out))
        }
    }
}

/// The CE differential on `Γ(sL)` (without module terms).
pub fn ce_differential(l: &GradedLieAlgebra, g: &Gamma) -> Result<Vec<(Gamma, Scalar)>, HomologyError> {
    let f = l.field();
    let mut acc: BTreeMap<Gamma, Scalar> = BTreeMap::new();
    let add = |acc: &mut BTreeMap<Gamma, Scalar>, k: Gamma, c: Scalar| {
        let e = acc.entry(k).or_insert_with(|| f.zero());
        *e += &c;
    };
    let prefix: Vec<u64> = g
        .iter()
        .scan(0u64, |s, (e, a)| {
            let before = *s;
            *s += (*a as u64) * s_deg(l, *e) as u64;
            Some(before)
        })
        .collect();
    for j in 0..g.len() {
        let (ej, aj) = g[j];
        let sj = s_deg(l, ej) as u64;
        for k in j + 1..g.len() {
            let ek = g[k].0;
            let sk = s_deg(l, ek) as u64;
            let parity = sj * prefix[j] + sk * (prefix[k] - sj) + sj;
            let mut rest = g.clone();
            // remove k first so that position j stays valid
            if rest[k].1 == 1 {
                rest.remove(k);
            } else {
                rest[k].1 -= 1;
            }
            if rest[j].1 == 1 {
                rest.remove(j);
            } else {
                rest[j].1 -= 1;
            }
            let br = l.bracket_basis(ej, ek)?;
            for (b, c) in br.iter() {
                if let Some((neg, coeff, prod)) = insert(l, b, &rest) {
                    let s = sign(f, (parity % 2 == 1) ^ neg);
                    add(&mut acc, prod, &(&s * c) * &f.from_i64(coeff as i64));
                }
            }
        }
        if !s_odd(l, ej) && aj >= 2 {
            let mut rest = g.clone();
            if aj == 2 {
                rest.remove(j);
            } else {
                rest[j].1 -= 2;
            }
            let half = f.from_i64(2).inv();
            let br = l.bracket_basis(ej, ej)?;
            for (b, c) in br.iter() {
                if let Some((neg, coeff, prod)) = insert(l, b, &rest) {
                    let s = sign(f, neg);
                    add(&mut acc, prod, &(&(&s * c) * &half) * &f.from_i64(coeff as i64));
                }
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// All `Γ(sL)` monomials with homological degree `<= q_max` and weight
/// `<= weight_cap`.
pub fn gamma_monomials(l: &GradedLieAlgebra, q_max: usize, weight_cap: i64) -> Vec<Gamma> {
    fn rec(
        l: &GradedLieAlgebra,
        from: usize,
        q_left: usize,
        w_left: i64,
        cur: &mut Gamma,
        out: &mut Vec<Gamma>,
    ) {
        out.push(cur.clone());
        for e in from..l.dim() {
            let d = l.degree(e) as i64;
            if d > w_left {
                break;
            }
            let max_a = if s_odd(l, e) { 1 } else { q_left.min((w_left / d) as usize) };
            for a in 1..=max_a.min(q_left) {
                cur.push((e, a as u32));
                rec(l, e + 1, q_left - a, w_left - a as i64 * d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(l, 0, q_max, weight_cap, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gen {
    pub omega: Gamma,
    pub m: usize,
    pub weight: i64,
}

/// One term `coeff · a · h` of a boundary, where `a` is 1 or the Lie basis
/// element `lie`, and `h` indexes a generator one homological degree lower.
#[derive(Clone, Debug)]
pub struct Term {
    pub lie: Option<usize>,
    pub target: usize,
    pub coeff: Scalar,
}

/// Free resolution of a finite module through homological degree `q_max`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub field: Field,
    pub gens: Vec<Vec<Gen>>,
    pub boundary: Vec<Vec<Vec<Term>>>,
    pub labels: Vec<Vec<String>>,
}

impl Resolution {
    pub fn new(
        l: &GradedLieAlgebra,
        m: &GradedModule,
        q_max: usize,
        weight_cap: Option<i64>,
    ) -> Result<Self, HomologyError> {
        let f = l.field();
        if m.field() != f {
            return Err(HomologyError::FieldMismatch);
        }
        let cap = match (weight_cap, l.truncation()) {
            (Some(c), Some(n)) => c.min(n as i64),
            (Some(c), None) => c,
            (None, Some(n)) => n as i64,
            (None, None) => (q_max as i64) * l.top_degree() as i64 + m.top_degree() as i64,
        };
        let mut gens: Vec<Vec<Gen>> = vec![Vec::new(); q_max + 1];
        for omega in gamma_monomials(l, q_max, cap) {
            let q = gamma_q(&omega);
            let w = gamma_weight(l, &omega);
            for mi in 0..m.dim() {
                let weight = w + m.degree(mi) as i64;
                if weight <= cap {
                    gens[q].push(Gen { omega: omega.clone(), m: mi, weight });
                }
            }
        }
        for level in gens.iter_mut() {
            level.sort_by(|a, b| (a.weight, &a.omega, a.m).cmp(&(b.weight, &b.omega, b.m)));
        }
        let index: Vec<HashMap<(Gamma, usize), usize>> = gens
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(k, g)| ((g.omega.clone(), g.m), k)).collect())
            .collect();
        let mut boundary: Vec<Vec<Vec<Term>>> = vec![Vec::new()];
        for q in 1..=q_max {
            let mut level = Vec::with_capacity(gens[q].len());
            for g in &gens[q] {
                level.push(resolution_boundary(l, m, g, q, &index[q - 1])?);
            }
            boundary.push(level);
        }
        let labels = gens
            .iter()
            .map(|lv| lv.iter().map(|g| format!("{}|{}", gamma_name(l, &g.omega), m.name(g.m))).collect())
            .collect();
        let r = Resolution { field: f, gens, boundary, labels };
        r.check_square_zero(l)?;
        Ok(r)
    }

    pub fn q_max(&self) -> usize {
        self.gens.len() - 1
    }

    /// Verifies `D ∘ D = 0` with `UL`-linear extension.
    fn check_square_zero(&self, l: &GradedLieAlgebra) -> Result<(), HomologyError> {
        let f = self.field;
        for q in 2..=self.q_max() {
            for (gi, g) in self.gens[q].iter().enumerate() {
                // target generator -> (PBW word of length <= 2) -> coefficient
                let mut acc: BTreeMap<(usize, Vec<usize>), Scalar> = BTreeMap::new();
                for t in &self.boundary[q][gi] {
                    for u in &self.boundary[q - 1][t.target] {
                        let c = &t.coeff * &u.coeff;
                        for (word, k) in pbw_product(l, t.lie, u.lie)? {
                            let e = acc.entry((u.target, word)).or_insert_with(|| f.zero());
                            *e += &(&c * &k);
                        }
                    }
                }
                if acc.values().any(|c| !c.is_zero()) {
                    return Err(HomologyError::BoundarySquaredNonzero { q, degree: g.weight });
                }
            }
        }
        Ok(())
    }
}

/// Normal form of `a · b` for `a`, `b` each 1 or a Lie basis element.
fn pbw_product(
    l: &GradedLieAlgebra,
    a: Option<usize>,
    b: Option<usize>,
) -> Result<Vec<(Vec<usize>, Scalar)>, HomologyError> {
    let f = l.field();
    Ok(match (a, b) {
        (None, None) => vec![(vec![], f.one())],
        (Some(x), None) | (None, Some(x)) => vec![(vec![x], f.one())],
        (Some(x), Some(y)) => {
            if x < y || (x == y && !l.is_odd(x)) {
                vec![(vec![x, y], f.one())]
            } else if x == y {
                let half = f.from_i64(2).inv();
                l.bracket_basis(x, x)?.iter().map(|(b, c)| (vec![b], &half * c)).collect()
            } else {
                let mut v = vec![(vec![y, x], sign(f, l.is_odd(x) && l.is_odd(y)))];
                v.extend(l.bracket_basis(x, y)?.iter().map(|(b, c)| (vec![b], c.clone())));
                v
            }
        }
    })
}

fn resolution_boundary(
    l: &GradedLieAlgebra,
    m: &GradedModule,
    g: &Gen,
    q: usize,
    lower: &HashMap<(Gamma, usize), usize>,
) -> Result<Vec<Term>, HomologyError> {
    let f = l.field();
    let mut acc: BTreeMap<(Option<usize>, usize), Scalar> = BTreeMap::new();
    let mut add = |lie: Option<usize>, target: usize, c: Scalar| {
        let e = acc.entry((lie, target)).or_insert_with(|| f.zero());
        *e += &c;
    };
    let find = |omega: &Gamma, mi: usize| -> usize {
        *lower.get(&(omega.clone(), mi)).expect("boundary stays within the weight cap")
    };
    for pos in 0..g.omega.len() {
        let e = g.omega[pos].0;
        let (neg, rest) = extract(l, &g.omega, pos);
        let sigma = sign(f, neg);
        let twist = sign(f, (l.degree(e) as usize * (q - 1)) % 2 == 1);
        add(Some(e), find(&rest, g.m), &sigma * &twist);
        let pass = sign(f, (l.degree(e) as u64 * gamma_sdeg(l, &rest)) % 2 == 1);
        let s = -&(&sigma * &pass);
        for (m2, c) in m.act(e, g.m).iter() {
            add(None, find(&rest, m2), &s * c);
        }
    }
    for (omega, c) in ce_differential(l, &g.omega)? {
        add(None, find(&omega, g.m), c);
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((lie, target), coeff)| Term { lie, target, coeff })
        .collect())
}

/// A bigraded complex with boundaries `C_{q,d} -> C_{q-1,d}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    q_max: usize,
    labels: BTreeMap<(usize, i64), Vec<String>>,
    /// Images of the basis vectors of `C_{q,d}`, for `q >= 1`.
    boundary: BTreeMap<(usize, i64), Vec<Vector>>,
}

impl ChainComplex {
    /// Builds a complex from basis labels and boundary images, checking
    /// `∂ ∘ ∂ = 0`. Spaces are stored through `q_max + 1`.
    pub fn from_parts(
        field: Field,
        q_max: usize,
        labels: BTreeMap<(usize, i64), Vec<String>>,
        boundary: BTreeMap<(usize, i64), Vec<Vector>>,
    ) -> Result<Self, HomologyError> {
        let cx = ChainComplex { field, q_max, labels, boundary };
        for (&(q, d), imgs) in &cx.boundary {
            if q < 2 {
                continue;
            }
            for v in imgs {
                let mut w = Vector::zero();
                for (i, c) in v.iter() {
                    if let Some(col) = cx.boundary.get(&(q - 1, d)).and_then(|b| b.get(i)) {
                        w.add_scaled(c, col);
                    }
                }
                if !w.is_zero() {
                    return Err(HomologyError::BoundarySquaredNonzero { q, degree: d });
                }
            }
        }
        Ok(cx)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn dim(&self, q: usize, d: i64) -> usize {
        self.labels.get(&(q, d)).map_or(0, Vec::len)
    }

    pub fn labels(&self, q: usize, d: i64) -> &[String] {
        self.labels.get(&(q, d)).map_or(&[], |v| &v[..])
    }

    pub fn boundary(&self, q: usize, d: i64) -> &[Vector] {
        self.boundary.get(&(q, d)).map_or(&[], |v| &v[..])
    }

    pub fn internal_degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.labels.keys().map(|(_, d)| *d).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// `Γ(sL) ⊗ M` with the CE boundary, for `q <= q_max` and weights `<= d_max`.
pub fn ce_chain_complex(
    l: &GradedLieAlgebra,
    m: &GradedModule,
    q_max: usize,
    d_max: i64,
) -> Result<ChainComplex, HomologyError> {
    let res = Resolution::new(l, m, q_max + 1, Some(d_max))?;
    let mut labels: BTreeMap<(usize, i64), Vec<String>> = BTreeMap::new();
    let mut pos: Vec<Vec<usize>> = Vec::new();
    for (q, level) in res.gens.iter().enumerate() {
        let mut p = Vec::with_capacity(level.len());
        for (k, g) in level.iter().enumerate() {
            let slot = labels.entry((q, g.weight)).or_default();
            p.push(slot.len());
            slot.push(res.labels[q][k].clone());
        }
        pos.push(p);
    }
    let mut boundary: BTreeMap<(usize, i64), Vec<Vector>> = BTreeMap::new();
    for q in 1..res.gens.len() {
        for (k, g) in res.gens[q].iter().enumerate() {
            let mut v = Vector::zero();
            for t in &res.boundary[q][k] {
                if t.lie.is_none() {
                    v.add_at(pos[q - 1][t.target], &t.coeff);
                }
            }
            boundary.entry((q, g.weight)).or_default().push(v);
        }
    }
    ChainComplex::from_parts(l.field(), q_max, labels, boundary)
}

/// `dim H_{q,d}` for `q <= q_max` and every stored internal degree.
pub fn homology_dims(cx: &ChainComplex) -> BTreeMap<(usize, i64), usize> {
    let mut out = BTreeMap::new();
    for d in cx.internal_degrees() {
        for q in 0..=cx.q_max() {
            let n = cx.dim(q, d);
            let r_out = if q == 0 { 0 } else { rank(cx.field(), cx.boundary(q, d)) };
            let r_in = rank(cx.field(), cx.boundary(q + 1, d));
            out.insert((q, d), n - r_out - r_in);
        }
    }
    out
}

/// Totals over internal degrees, indexed by `q`.
pub fn homology_by_q(table: &BTreeMap<(usize, i64), usize>, q_max: usize) -> Vec<usize> {
    let mut v = vec![0; q_max + 1];
    for (&(q, _), &n) in table {
        if q <= q_max {
            v[q] += n;
        }
    }
    v
}
