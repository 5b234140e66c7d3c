//! Graded Lie algebras given by generators and relators, computed degree by
//! degree through a truncation.
//!
//! Degree `n` of the quotient is the space of formal brackets `[b_i, b_j]` of
//! lower basis elements (`i <= j`, even self-brackets omitted) plus the new
//! generators of degree `n`, modulo the Jacobi identities of the lower algebra,
//! the cube identities in characteristic 3, and the relators of degree `n`.
//! Each degree is final once processed. Free algebras are the case with no
//! relators; their dimensions are checked against the PBW oracle every time.

use std::collections::HashMap;
use std::fmt;

use crate::error::{LieError, PresentationError};
use crate::field::{sign, Field, Scalar};
use crate::lie::GradedLieAlgebra;
use crate::linalg::{Rref, Vector};
use crate::series::{free_lie_dims, DimensionSequence};

/// A bracket expression in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieWord {
    Gen(usize),
    Br(Box<LieWord>, Box<LieWord>),
}

impl LieWord {
    pub fn br(a: LieWord, b: LieWord) -> LieWord {
        LieWord::Br(Box::new(a), Box::new(b))
    }

    /// `(ad a)^k w`
    pub fn ad_power(a: &LieWord, k: usize, w: LieWord) -> LieWord {
        (0..k).fold(w, |acc, _| LieWord::br(a.clone(), acc))
    }

    pub fn degree(&self, gens: &[Generator]) -> u32 {
        match self {
            LieWord::Gen(g) => gens[*g].degree,
            LieWord::Br(a, b) => a.degree(gens) + b.degree(gens),
        }
    }

    pub fn display<'a>(&'a self, gens: &'a [Generator]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, gens }
    }

    pub fn to_sexpr(&self, gens: &[Generator]) -> serde_json::Value {
        match self {
            LieWord::Gen(g) => serde_json::Value::String(gens[*g].name.clone()),
            LieWord::Br(a, b) => serde_json::json!(["br", a.to_sexpr(gens), b.to_sexpr(gens)]),
        }
    }

    fn max_gen(&self) -> usize {
        match self {
            LieWord::Gen(g) => *g,
            LieWord::Br(a, b) => a.max_gen().max(b.max_gen()),
        }
    }
}

struct WordDisplay<'a> {
    word: &'a LieWord,
    gens: &'a [Generator],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word {
            LieWord::Gen(g) => f.write_str(&self.gens[*g].name),
            LieWord::Br(a, b) => write!(
                f,
                "[{},{}]",
                WordDisplay { word: a, gens: self.gens },
                WordDisplay { word: b, gens: self.gens }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// A homogeneous linear combination of Lie words, set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub terms: Vec<(Scalar, LieWord)>,
}

impl Relator {
    pub fn word(field: Field, w: LieWord) -> Relator {
        Relator { terms: vec![(field.one(), w)] }
    }

    pub fn to_sexpr(&self, gens: &[Generator]) -> serde_json::Value {
        let term = |(c, w): &(Scalar, LieWord)| {
            if c.is_one() {
                w.to_sexpr(gens)
            } else {
                serde_json::json!(["scale", c.to_string(), w.to_sexpr(gens)])
            }
        };
        if self.terms.len() == 1 {
            term(&self.terms[0])
        } else {
            let mut v = vec![serde_json::json!("add")];
            v.extend(self.terms.iter().map(term));
            serde_json::Value::Array(v)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    field: Field,
    generators: Vec<Generator>,
    relators: Vec<Relator>,
    truncation: u32,
}

impl Presentation {
    pub fn new(
        field: Field,
        generators: Vec<(String, u32)>,
        truncation: u32,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        let mut gens = Vec::with_capacity(generators.len());
        for (name, degree) in generators {
            if degree == 0 {
                return Err(LieError::DegreeZero(name).into());
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(LieError::DuplicateName(name).into());
            }
            gens.push(Generator { name, degree });
        }
        if let Some(min) = gens.iter().map(|g| g.degree).min() {
            if truncation < min {
                return Err(PresentationError::TruncationTooSmall { truncation, min_degree: min });
            }
        }
        Ok(Presentation { field, generators: gens, relators: Vec::new(), truncation })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Result<LieWord, PresentationError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(LieWord::Gen)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    /// Adds a relator after checking that it is homogeneous.
    pub fn add_relator(&mut self, r: Relator) -> Result<(), PresentationError> {
        let index = self.relators.len();
        let mut degrees: Vec<u32> = Vec::new();
        for (c, w) in &r.terms {
            if c.field() != self.field {
                return Err(LieError::FieldMismatch(c.field().to_string(), self.field.to_string()).into());
            }
            if w.max_gen() >= self.generators.len() {
                return Err(PresentationError::MalformedWord(format!("generator index {}", w.max_gen())));
            }
            degrees.push(w.degree(&self.generators));
        }
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.len() > 1 {
            return Err(PresentationError::NotHomogeneous { index, degrees });
        }
        self.relators.push(r);
        Ok(())
    }

    pub fn add_word(&mut self, w: LieWord) -> Result<(), PresentationError> {
        self.add_relator(Relator::word(self.field, w))
    }

    /// Degree of relator `k` (0 for an empty relator).
    pub fn relator_degree(&self, k: usize) -> u32 {
        self.relators[k].terms.first().map_or(0, |(_, w)| w.degree(&self.generators))
    }

    /// Same presentation with a different truncation.
    pub fn with_truncation(&self, n: u32) -> Result<Self, PresentationError> {
        let mut p = Presentation::new(
            self.field,
            self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
            n,
        )?;
        p.relators = self.relators.clone();
        Ok(p)
    }

    /// Free product with a free algebra on `fresh` generators: the generators
    /// are merged and the relators kept.
    pub fn free_product(&self, fresh: &[(String, u32)]) -> Result<Self, PresentationError> {
        let mut gens: Vec<(String, u32)> =
            self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
        gens.extend(fresh.iter().cloned());
        let mut p = Presentation::new(self.field, gens, self.truncation)?;
        p.relators = self.relators.clone();
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field.to_json(),
            "truncation": self.truncation,
            "generators": self.generators.iter().map(|g| serde_json::json!({
                "name": g.name, "degree": g.degree
            })).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| r.to_sexpr(&self.generators)).collect::<Vec<_>>(),
        })
    }

    /// Parses a relator s-expression: a generator name, `["br", u, v]`,
    /// `["add", r1, r2, ...]` or `["scale", "c", r]`.
    pub fn parse_relator(&self, v: &serde_json::Value) -> Result<Relator, PresentationError> {
        Ok(Relator { terms: self.parse_terms(v)? })
    }

    fn parse_terms(&self, v: &serde_json::Value) -> Result<Vec<(Scalar, LieWord)>, PresentationError> {
        let bad = |m: &str| PresentationError::MalformedWord(format!("{m}: {v}"));
        match v {
            serde_json::Value::String(s) => Ok(vec![(self.field.one(), self.generator(s)?)]),
            serde_json::Value::Array(items) => {
                let head = items.first().and_then(|h| h.as_str()).ok_or_else(|| bad("missing operator"))?;
                match head {
                    "br" => {
                        if items.len() != 3 {
                            return Err(bad("`br` takes two arguments"));
                        }
                        let a = self.parse_terms(&items[1])?;
                        let b = self.parse_terms(&items[2])?;
                        let mut out = Vec::new();
                        for (ca, wa) in &a {
                            for (cb, wb) in &b {
                                out.push((ca * cb, LieWord::br(wa.clone(), wb.clone())));
                            }
                        }
                        Ok(out)
                    }
                    "add" => {
                        let mut out = Vec::new();
                        for it in &items[1..] {
                            out.extend(self.parse_terms(it)?);
                        }
                        Ok(out)
                    }
                    "scale" => {
                        if items.len() != 3 {
                            return Err(bad("`scale` takes a coefficient and a word"));
                        }
                        let c = match &items[1] {
                            serde_json::Value::String(s) => self.field.parse(s)?,
                            serde_json::Value::Number(n) => self.field.parse(&n.to_string())?,
                            _ => return Err(bad("coefficient must be a string or integer")),
                        };
                        Ok(self.parse_terms(&items[2])?.into_iter().map(|(d, w)| (&c * &d, w)).collect())
                    }
                    other => Err(bad(&format!("unknown operator `{other}`"))),
                }
            }
            _ => Err(bad("expected a generator name or a list")),
        }
    }
}

/// The quotient algebra with a bracket word naming each basis element.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub algebra: GradedLieAlgebra,
    pub words: Vec<LieWord>,
}

/// Basis words of a free graded Lie algebra, grouped by degree.
#[derive(Clone, Debug)]
pub struct FreeLieBasis {
    pub generators: Vec<Generator>,
    pub by_degree: Vec<Vec<LieWord>>,
}

impl FreeLieBasis {
    pub fn dims(&self) -> DimensionSequence {
        DimensionSequence::from_degrees(
            self.by_degree.len() - 1,
            self.by_degree.iter().enumerate().map(|(d, w)| (d, w.len() as u64)),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Symbol {
    Pair(usize, usize),
    Gen(usize),
}

struct Engine<'a> {
    pres: &'a Presentation,
    field: Field,
    degrees: Vec<u32>,
    words: Vec<LieWord>,
    by_degree: Vec<Vec<usize>>,
    table: HashMap<(usize, usize), Vector>,
    gen_image: Vec<Option<Vector>>,
}

impl<'a> Engine<'a> {
    fn odd(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    /// `-(-1)^{|i||j|}`
    fn swap_sign(&self, i: usize, j: usize) -> Scalar {
        sign(self.field, !(self.odd(i) && self.odd(j)))
    }

    fn br_basis(&self, i: usize, j: usize) -> Vector {
        if i <= j {
            self.table.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.table.get(&(j, i)).map_or_else(Vector::zero, |v| v.scaled(&self.swap_sign(j, i)))
        }
    }

    fn br(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_scaled(&(a * b), &self.br_basis(i, j));
            }
        }
        out
    }

    /// `[x_u, x_b]` as a combination of degree-n symbols.
    fn sym(&self, u: usize, b: usize, index: &HashMap<Symbol, usize>) -> Vector {
        if u == b && !self.odd(u) {
            return Vector::zero();
        }
        let (key, c) = if u <= b {
            (Symbol::Pair(u, b), self.field.one())
        } else {
            (Symbol::Pair(b, u), self.swap_sign(u, b))
        };
        Vector::from_pairs([(index[&key], c)])
    }

    fn outer(&self, x: &Vector, y: &Vector, index: &HashMap<Symbol, usize>) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.sym(i, j, index));
            }
        }
        out
    }

    /// Value of a word of degree below the current one.
    fn eval_low(&self, w: &LieWord) -> Vector {
        match w {
            LieWord::Gen(g) => self.gen_image[*g].clone().expect("lower generator processed"),
            LieWord::Br(a, b) => self.br(&self.eval_low(a), &self.eval_low(b)),
        }
    }

    fn eval_top(&self, w: &LieWord, index: &HashMap<Symbol, usize>) -> Vector {
        match w {
            LieWord::Gen(g) => Vector::unit(index[&Symbol::Gen(*g)], self.field),
            LieWord::Br(a, b) => self.outer(&self.eval_low(a), &self.eval_low(b), index),
        }
    }

    fn step(&mut self, n: u32, relators: &[usize]) {
        let f = self.field;
        let unit = |i: usize| Vector::unit(i, f);
        let lower_of = |d: u32| -> &[usize] {
            self.by_degree.get(d as usize).map_or(&[][..], |v| &v[..])
        };
        let mut symbols: Vec<Symbol> = Vec::new();
        for d in 1..=n / 2 {
            let e = n - d;
            for &i in lower_of(d) {
                for &j in lower_of(e) {
                    if i > j || (i == j && d % 2 == 0) {
                        continue;
                    }
                    symbols.push(Symbol::Pair(i, j));
                }
            }
        }
        for (g, gen) in self.pres.generators.iter().enumerate() {
            if gen.degree == n {
                symbols.push(Symbol::Gen(g));
            }
        }
        let index: HashMap<Symbol, usize> = symbols.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut rels = Rref::new(f);
        // Jacobi on multisets u <= v <= w of total degree n.
        for du in 1..n {
            for dv in du..n {
                if du + dv >= n {
                    break;
                }
                let dw = n - du - dv;
                if dw < dv {
                    continue;
                }
                for &u in lower_of(du) {
                    for &v in lower_of(dv) {
                        if v < u {
                            continue;
                        }
                        for &w in lower_of(dw) {
                            if w < v {
                                continue;
                            }
                            let mut j = self.outer(&unit(u), &self.br_basis(v, w), &index);
                            j.add_scaled(&f.from_i64(-1), &self.outer(&self.br_basis(u, v), &unit(w), &index));
                            let s = sign(f, self.odd(u) && self.odd(v));
                            j.add_scaled(&(-&s), &self.outer(&unit(v), &self.br_basis(u, w), &index));
                            rels.insert(&j);
                        }
                    }
                }
            }
        }
        if f.characteristic() == 3 && n.is_multiple_of(3) && (n / 3) % 2 == 1 {
            for &u in lower_of(n / 3) {
                let c = self.outer(&unit(u), &self.br_basis(u, u), &index);
                rels.insert(&c);
            }
        }
        for &k in relators {
            let mut v = Vector::zero();
            for (c, w) in &self.pres.relators[k].terms {
                v.add_scaled(c, &self.eval_top(w, &index));
            }
            rels.insert(&v);
        }
        let mut new_index = HashMap::new();
        let mut level = Vec::new();
        for (s, sym) in symbols.iter().enumerate() {
            if rels.is_pivot(s) {
                continue;
            }
            let id = self.degrees.len();
            self.degrees.push(n);
            self.words.push(match sym {
                Symbol::Pair(i, j) => LieWord::br(self.words[*i].clone(), self.words[*j].clone()),
                Symbol::Gen(g) => LieWord::Gen(*g),
            });
            new_index.insert(s, id);
            level.push(id);
        }
        while self.by_degree.len() <= n as usize {
            self.by_degree.push(Vec::new());
        }
        self.by_degree[n as usize] = level;
        for (s, sym) in symbols.iter().enumerate() {
            let nf = rels.reduce(&unit(s)).map_indices(|t| new_index[&t]);
            match sym {
                Symbol::Pair(i, j) => {
                    if !nf.is_zero() {
                        self.table.insert((*i, *j), nf);
                    }
                }
                Symbol::Gen(g) => self.gen_image[*g] = Some(nf),
            }
        }
    }
}

/// The quotient of the free graded Lie algebra on the generators by the ideal
/// generated by the relators, through the truncation degree. When the result
/// provably has nothing above its top degree it is returned as complete.
pub fn quotient(pres: &Presentation) -> Result<QuotientResult, PresentationError> {
    let n_max = pres.truncation;
    let mut engine = Engine {
        pres,
        field: pres.field,
        degrees: Vec::new(),
        words: Vec::new(),
        by_degree: vec![Vec::new()],
        table: HashMap::new(),
        gen_image: vec![None; pres.generators.len()],
    };
    let mut by_deg: HashMap<u32, Vec<usize>> = HashMap::new();
    for k in 0..pres.relators.len() {
        let d = pres.relator_degree(k);
        if d >= 1 && d <= n_max {
            by_deg.entry(d).or_default().push(k);
        }
    }
    for n in 1..=n_max {
        let rels = by_deg.remove(&n).unwrap_or_default();
        engine.step(n, &rels);
    }
    let names: Vec<(String, u32)> = engine
        .words
        .iter()
        .zip(&engine.degrees)
        .map(|(w, d)| (w.display(&pres.generators).to_string(), *d))
        .collect();
    let mut l = GradedLieAlgebra::new(pres.field, names, Some(n_max))?;
    let mut entries: Vec<_> = engine.table.iter().collect();
    entries.sort_by_key(|(k, _)| **k);
    for ((i, j), v) in entries {
        l.set_bracket(*i, *j, v.clone())?;
    }
    let l = if pres.generators.iter().all(|g| g.degree <= n_max) { l.close_if_determined() } else { l };
    Ok(QuotientResult { algebra: l, words: engine.words })
}

/// The free graded Lie algebra on `generators` through degree `n`.
pub fn free_lie(
    field: Field,
    generators: &[(String, u32)],
    n: u32,
) -> Result<(FreeLieBasis, GradedLieAlgebra), PresentationError> {
    let pres = Presentation::new(field, generators.to_vec(), n)?;
    let q = quotient(&pres)?;
    let mut by_degree = vec![Vec::new(); n as usize + 1];
    for (w, i) in q.words.iter().zip(0..) {
        by_degree[q.algebra.degree(i) as usize].push(w.clone());
    }
    let basis = FreeLieBasis { generators: pres.generators.clone(), by_degree };
    let degs: Vec<usize> = generators.iter().map(|g| g.1 as usize).collect();
    if basis.dims() != free_lie_dims(&degs, n as usize) {
        return Err(LieError::Invalid(
            "free Lie basis disagrees with the PBW dimension oracle".into(),
        )
        .into());
    }
    Ok((basis, q.algebra))
}

/// Degrees of the `example3` generators up to `n`: each is the least odd
/// integer exceeding the sum of its predecessors.
pub fn example3_degrees(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut sum = 0u64;
    loop {
        let mut d = sum + 1;
        if d.is_multiple_of(2) {
            d += 1;
        }
        if d > n as u64 {
            return out;
        }
        out.push(d as u32);
        sum += d;
    }
}

/// Whether every degree `<= n` is a sum of distinct generator degrees in at
/// most one way, checked by enumerating subsets.
pub fn subset_sums_unique(degrees: &[u32], n: u32) -> bool {
    let mut count = vec![0u32; n as usize + 1];
    count[0] = 1;
    for &d in degrees {
        for s in (d as usize..=n as usize).rev() {
            count[s] += count[s - d as usize];
        }
    }
    count.iter().all(|&c| c <= 1)
}

/// Abelian, odd-concentrated, one generator in each `example3` degree.
pub fn example3(field: Field, n: u32) -> Result<GradedLieAlgebra, PresentationError> {
    if n < 1 {
        return Err(PresentationError::TruncationTooSmall { truncation: n, min_degree: 1 });
    }
    let basis = example3_degrees(n).into_iter().enumerate().map(|(i, d)| (format!("x{}", i + 1), d)).collect();
    Ok(GradedLieAlgebra::new(field, basis, Some(n))?)
}

pub fn example4_y_name(n: u32, k: u32) -> String {
    match k {
        0 => format!("x{n}"),
        1 => format!("[a,x{n}]"),
        _ => format!("ad(a)^{k}(x{n})"),
    }
}

/// The `example4` algebra in closed form: `a` in degree 2 and `y_{n,k} = (ad a)^k x_n` in
/// degree `2^n + 1 + 2k` for `n >= 2`, `0 <= k <= n`, with
/// `[a, y_{n,k}] = y_{n,k+1}` (zero for `k = n`) and all other brackets zero.
pub fn example4(field: Field, n: u32) -> Result<GradedLieAlgebra, PresentationError> {
    if n < 2 {
        return Err(PresentationError::TruncationTooSmall { truncation: n, min_degree: 2 });
    }
    let mut basis = vec![("a".to_string(), 2)];
    let mut ys = Vec::new();
    let mut r = 2u32;
    while (1u64 << r) < n as u64 {
        for k in 0..=r {
            let d = (1u64 << r) + 1 + 2 * k as u64;
            if d <= n as u64 {
                basis.push((example4_y_name(r, k), d as u32));
                ys.push((r, k));
            }
        }
        r += 1;
    }
    let mut l = GradedLieAlgebra::new(field, basis, Some(n))?;
    for &(r, k) in &ys {
        if k < r {
            let next = example4_y_name(r, k + 1);
            if l.index_of(&next).is_ok() {
                l.set_bracket_by_name("a", &example4_y_name(r, k), &[(&next, field.one())])?;
            }
        }
    }
    Ok(l)
}

/// The `example4` algebra as a presentation: generators `a` (degree 2) and `x_n`
/// (degree `2^n + 1`, `n >= 2`), relators `[(ad a)^k x_r, (ad a)^l x_s]` and
/// `(ad a)^{n+1} x_n`, expanded through the truncation.
pub fn example4_presentation(field: Field, n: u32) -> Result<Presentation, PresentationError> {
    let mut gens = vec![("a".to_string(), 2)];
    let mut r = 2u32;
    while (1u64 << r) < n as u64 {
        gens.push((format!("x{r}"), (1u32 << r) + 1));
        r += 1;
    }
    let mut p = Presentation::new(field, gens, n)?;
    let a = p.generator("a")?;
    let mut ys: Vec<(u32, LieWord)> = Vec::new();
    for g in 1..p.generators.len() {
        let base = p.generators[g].degree;
        let mut k = 0;
        while base + 2 * k <= n {
            ys.push((base + 2 * k, LieWord::ad_power(&a, k as usize, LieWord::Gen(g))));
            k += 1;
        }
        let rank = (g + 1) as u32; // x_r sits at position r - 1
        if base + 2 * (rank + 1) <= n {
            p.add_word(LieWord::ad_power(&a, rank as usize + 1, LieWord::Gen(g)))?;
        }
    }
    for i in 0..ys.len() {
        for j in i..ys.len() {
            if ys[i].0 + ys[j].0 <= n {
                p.add_word(LieWord::br(ys[i].1.clone(), ys[j].1.clone()))?;
            }
        }
    }
    Ok(p)
}

/// `a` (degree 2) and `b` (degree 3) with `[a,b] = 0`, freely multiplied with
/// a fresh odd generator `v` of degree 1.
pub fn free_product_demo(field: Field, n: u32) -> Result<Presentation, PresentationError> {
    if n < 1 {
        return Err(PresentationError::TruncationTooSmall { truncation: n, min_degree: 1 });
    }
    let mut base = Presentation::new(field, vec![("a".into(), 2), ("b".into(), 3)], n.max(2))?;
    let w = LieWord::br(base.generator("a")?, base.generator("b")?);
    base.add_word(w)?;
    base.free_product(&[("v".to_string(), 1)])?.with_truncation(n)
}

#[derive(Clone, Debug)]
pub enum Builtin {
    Algebra(GradedLieAlgebra),
    Presentation(Presentation),
}

pub const BUILTIN_NAMES: &[&str] = &["example3", "example4", "example4-presentation", "free_product_demo"];

pub fn builtin(name: &str, field: Field, n: u32) -> Result<Builtin, PresentationError> {
    match name {
        "example3" => Ok(Builtin::Algebra(example3(field, n)?)),
        "example4" => Ok(Builtin::Algebra(example4(field, n)?)),
        "example4-presentation" => Ok(Builtin::Presentation(example4_presentation(field, n)?)),
        "free_product_demo" => Ok(Builtin::Presentation(free_product_demo(field, n)?)),
        other => Err(PresentationError::UnknownBuiltin(other.to_string())),
    }
}
