//! Finite-dimensional graded modules over a graded Lie algebra.

use std::collections::BTreeMap;

use crate::enveloping::Enveloping;
use crate::error::HomologyError;
use crate::field::{sign, Field};
use crate::lie::GradedLieAlgebra;
use crate::linalg::Vector;
use crate::series::DimensionSequence;

/// A module given by the action of each Lie basis element on each module
/// basis element. Indices refer to the algebra the module was built for.
#[derive(Clone, Debug)]
pub struct GradedModule {
    field: Field,
    basis: Vec<(String, u32)>,
    action: BTreeMap<(usize, usize), Vector>,
}

impl GradedModule {
    pub fn new(field: Field, basis: Vec<(String, u32)>) -> Self {
        GradedModule { field, basis, action: BTreeMap::new() }
    }

    /// The ground field in degree 0 with the zero action.
    pub fn trivial(field: Field) -> Self {
        GradedModule::new(field, vec![("1".to_string(), 0)])
    }

    /// `L` acting on itself by the bracket. Needs a complete algebra.
    pub fn adjoint(l: &GradedLieAlgebra) -> Result<Self, HomologyError> {
        if let Some(t) = l.truncation() {
            return Err(HomologyError::Truncated { truncation: t });
        }
        let f = l.field();
        let mut m = GradedModule::new(f, l.basis().iter().map(|e| (e.name.clone(), e.degree)).collect());
        for x in 0..l.dim() {
            for y in 0..l.dim() {
                let v = l.bracket_basis(x, y)?;
                m.set_action(x, y, v);
            }
        }
        Ok(m)
    }

    /// `UL / UL_{>k}`: the regular module cut off above degree `k`.
    pub fn truncated_regular(l: &GradedLieAlgebra, k: u32) -> Result<Self, HomologyError> {
        let u = Enveloping::new(l, k)?;
        let mut m = GradedModule::new(
            l.field(),
            (0..u.len()).map(|i| (u.name(i).to_string(), u.degree(i))).collect(),
        );
        for e in 0..l.dim() {
            for i in 0..u.len() {
                if let Some(v) = u.left_mul(e, i) {
                    m.set_action(e, i, v.clone());
                }
            }
        }
        Ok(m)
    }

    /// `M1 ⊗ M2` over `L1 ⊕ L2`, where `map1`/`map2` place the summands'
    /// basis elements in the sum. The second factor acts with the sign
    /// `(-1)^{|y||m1|}`.
    pub fn tensor(
        m1: &GradedModule,
        m2: &GradedModule,
        sum: &GradedLieAlgebra,
        map1: &[Option<usize>],
        map2: &[Option<usize>],
    ) -> Result<Self, HomologyError> {
        if m1.field != m2.field {
            return Err(HomologyError::FieldMismatch);
        }
        let f = m1.field;
        let sum_dim = sum.dim();
        let n2 = m2.dim();
        let idx = |a: usize, b: usize| a * n2 + b;
        let mut basis = Vec::with_capacity(m1.dim() * n2);
        for (na, da) in &m1.basis {
            for (nb, db) in &m2.basis {
                basis.push((format!("{na}⊗{nb}"), da + db));
            }
        }
        let mut t = GradedModule::new(f, basis);
        let mut inv1 = vec![None; sum_dim];
        let mut inv2 = vec![None; sum_dim];
        for (i, p) in map1.iter().enumerate() {
            if let Some(p) = p {
                inv1[*p] = Some(i);
            }
        }
        for (i, p) in map2.iter().enumerate() {
            if let Some(p) = p {
                inv2[*p] = Some(i);
            }
        }
        for e in 0..sum_dim {
            for a in 0..m1.dim() {
                for b in 0..n2 {
                    let mut v = Vector::zero();
                    if let Some(x) = inv1[e] {
                        for (a2, c) in m1.act(x, a).iter() {
                            v.add_at(idx(a2, b), c);
                        }
                    }
                    if let Some(y) = inv2[e] {
                        let s = sign(f, sum.is_odd(e) && m1.degree(a) % 2 == 1);
                        for (b2, c) in m2.act(y, b).iter() {
                            v.add_at(idx(a, b2), &(&s * c));
                        }
                    }
                    t.set_action(e, idx(a, b), v);
                }
            }
        }
        Ok(t)
    }

    pub fn set_action(&mut self, x: usize, m: usize, v: Vector) {
        if v.is_zero() {
            self.action.remove(&(x, m));
        } else {
            self.action.insert((x, m), v);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, m: usize) -> u32 {
        self.basis[m].1
    }

    pub fn name(&self, m: usize) -> &str {
        &self.basis[m].0
    }

    pub fn basis(&self) -> &[(String, u32)] {
        &self.basis
    }

    pub fn top_degree(&self) -> u32 {
        self.basis.iter().map(|b| b.1).max().unwrap_or(0)
    }

    pub fn act(&self, x: usize, m: usize) -> Vector {
        self.action.get(&(x, m)).cloned().unwrap_or_default()
    }

    pub fn act_vec(&self, x: usize, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (m, c) in v.iter() {
            out.add_scaled(c, &self.act(x, m));
        }
        out
    }

    pub fn actions(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.action.iter().map(|(k, v)| (*k, v))
    }

    pub fn dims(&self) -> DimensionSequence {
        DimensionSequence::from_degrees(
            self.top_degree() as usize,
            self.basis.iter().map(|b| (b.1 as usize, 1)),
        )
    }

    /// Checks degree additivity and
    /// `x(y m) - (-1)^{|x||y|} y(x m) = [x,y] m` on all basis triples whose
    /// bracket is known.
    pub fn validate(&self, l: &GradedLieAlgebra) -> Result<(), HomologyError> {
        if self.field != l.field() {
            return Err(HomologyError::FieldMismatch);
        }
        let bad = |s: String| Err(HomologyError::InvalidModule(s));
        for (&(x, m), v) in &self.action {
            if x >= l.dim() || m >= self.dim() {
                return bad(format!("action index ({x}, {m}) out of range"));
            }
            for (k, _) in v.iter() {
                if k >= self.dim() {
                    return bad(format!("action value index {k} out of range"));
                }
                if self.degree(k) != self.degree(m) + l.degree(x) {
                    return bad(format!(
                        "{} acting on {} lands in degree {}, expected {}",
                        l.name(x),
                        self.name(m),
                        self.degree(k),
                        self.degree(m) + l.degree(x)
                    ));
                }
            }
        }
        for x in 0..l.dim() {
            for y in x..l.dim() {
                let Ok(br) = l.bracket_basis(x, y) else { continue };
                let s = sign(self.field, l.is_odd(x) && l.is_odd(y));
                for m in 0..self.dim() {
                    let mut lhs = self.act_vec(x, &self.act(y, m));
                    lhs.add_scaled(&(-&s), &self.act_vec(y, &self.act(x, m)));
                    let mut rhs = Vector::zero();
                    for (b, c) in br.iter() {
                        rhs.add_scaled(c, &self.act(b, m));
                    }
                    if lhs != rhs {
                        return bad(format!(
                            "module axiom fails for ({}, {}) on {}",
                            l.name(x),
                            l.name(y),
                            self.name(m)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The module argument of grade and Ext computations.
#[derive(Clone, Debug)]
pub enum ModuleSpec {
    /// `UL` itself, resolved by itself.
    Free,
    Finite(GradedModule),
}

impl ModuleSpec {
    pub fn trivial(field: Field) -> Self {
        ModuleSpec::Finite(GradedModule::trivial(field))
    }

    pub fn top_degree(&self) -> u32 {
        match self {
            ModuleSpec::Free => 0,
            ModuleSpec::Finite(m) => m.top_degree(),
        }
    }
}
