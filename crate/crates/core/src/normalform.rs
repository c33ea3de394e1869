//! Noncommutative Gröbner bases for admissible ideals of path algebras.
//!
//! Words are arrow sequences ordered degree-lexicographically, with arrows
//! compared by declaration index. Completion resolves every overlap between
//! leading words, so the resulting rewriting system is confluent and its
//! irreducible words form a basis of the quotient algebra.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::presentation::{PathWord, Presentation, Quiver};

pub const DEFAULT_DEGREE_BOUND: usize = 50;

/// A nonempty arrow sequence under degree-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Poly = BTreeMap<Word, Scalar>;

fn poly_add(field: &Field, p: &mut Poly, w: Word, c: Scalar) {
    if c == 0 {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x = field.add(*x, c);
            if *x == 0 {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

/// `lead → tail`, meaning `lead ≡ Σ tail` modulo the ideal; every tail word
/// is smaller than `lead`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lead: Word,
    pub tail: Vec<(Scalar, Word)>,
    id: u64,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    field: Field,
    quiver: Quiver,
    rules: Vec<Rule>,
    index: HashMap<Vec<usize>, usize>,
    lead_lengths: Vec<usize>,
    next_id: u64,
}

impl RewriteSystem {
    fn new(field: Field, quiver: Quiver) -> Self {
        RewriteSystem {
            field,
            quiver,
            rules: Vec::new(),
            index: HashMap::new(),
            lead_lengths: Vec::new(),
            next_id: 0,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn reindex(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.0.clone(), i))
            .collect();
        let mut lens: Vec<usize> = self.rules.iter().map(|r| r.lead.0.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        self.lead_lengths = lens;
    }

    /// Leftmost occurrence of a leading word inside `w`: (position, rule).
    fn find_lead(&self, w: &[usize]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &l in &self.lead_lengths {
                if start + l > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[start..start + l]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// Whether some leading word is a suffix of `w`.
    fn has_lead_suffix(&self, w: &[usize]) -> bool {
        self.lead_lengths
            .iter()
            .take_while(|&&l| l <= w.len())
            .any(|&l| self.index.contains_key(&w[w.len() - l..]))
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        self.find_lead(w).is_none()
    }

    fn reduce_poly(&self, poly: Poly) -> Poly {
        let f = &self.field;
        let mut work = poly;
        let mut out = Poly::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_lead(&w.0) {
                Some((pos, ri)) => {
                    let rule = &self.rules[ri];
                    let (pre, post) = (&w.0[..pos], &w.0[pos + rule.lead.0.len()..]);
                    for (tc, tw) in &rule.tail {
                        let mut nw = Vec::with_capacity(pre.len() + tw.0.len() + post.len());
                        nw.extend_from_slice(pre);
                        nw.extend_from_slice(&tw.0);
                        nw.extend_from_slice(post);
                        poly_add(f, &mut work, Word(nw), f.mul(c, *tc));
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    /// Unique normal form of a linear combination of paths.
    pub fn normal_form(&self, element: &[(Scalar, PathWord)]) -> Vec<(Scalar, PathWord)> {
        let f = &self.field;
        let mut trivial: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut poly = Poly::new();
        for (c, w) in element {
            match w {
                PathWord::Trivial(v) => {
                    let e = trivial.entry(*v).or_insert(0);
                    *e = f.add(*e, *c);
                }
                PathWord::Arrows(a) => poly_add(f, &mut poly, Word(a.clone()), *c),
            }
        }
        let reduced = self.reduce_poly(poly);
        trivial
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(v, c)| (c, PathWord::Trivial(v)))
            .chain(reduced.into_iter().map(|(w, c)| (c, PathWord::Arrows(w.0))))
            .collect()
    }

    fn insert_rule(&mut self, poly: Poly) -> Option<Vec<Poly>> {
        let f = self.field.clone();
        let (lead, lc) = poly.last_key_value().map(|(w, c)| (w.clone(), *c))?;
        let inv = f.inv(lc);
        let tail: Vec<(Scalar, Word)> = poly
            .iter()
            .rev()
            .skip(1)
            .map(|(w, c)| (f.neg(f.mul(inv, *c)), w.clone()))
            .collect();
        let contains = |big: &[usize], small: &[usize]| {
            small.len() <= big.len() && big.windows(small.len()).any(|win| win == small)
        };
        let mut displaced = Vec::new();
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for r in self.rules.drain(..) {
            if contains(&r.lead.0, &lead.0) {
                displaced.push(rule_poly(&f, &r));
            } else {
                kept.push(r);
            }
        }
        kept.push(Rule {
            lead,
            tail,
            id: self.next_id,
        });
        self.next_id += 1;
        self.rules = kept;
        self.reindex();
        Some(displaced)
    }

    /// Fully reduces every tail; a rule whose tail changes gets a fresh id so
    /// its overlaps are recomputed.
    fn interreduce(&mut self) {
        let f = self.field.clone();
        for i in 0..self.rules.len() {
            let tail_poly: Poly = self.rules[i]
                .tail
                .iter()
                .map(|(c, w)| (w.clone(), *c))
                .collect();
            let reduced = self.reduce_poly(tail_poly.clone());
            if reduced != tail_poly {
                let _ = &f;
                self.rules[i].tail = reduced.into_iter().rev().map(|(w, c)| (c, w)).collect();
                self.rules[i].id = self.next_id;
                self.next_id += 1;
            }
        }
    }

    /// All overlap ambiguities `(i, j, k)`: the last `k` letters of lead `i`
    /// equal the first `k` letters of lead `j`, with both leads longer than `k`.
    fn overlaps(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (a, b) = (&ri.lead.0, &rj.lead.0);
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out.sort_by_key(|&(i, j, k)| self.rules[i].lead.0.len() + self.rules[j].lead.0.len() - k);
        out
    }

    fn s_poly(&self, i: usize, j: usize, k: usize) -> Poly {
        let f = &self.field;
        let (ri, rj) = (&self.rules[i], &self.rules[j]);
        let a = &ri.lead.0;
        let right = &rj.lead.0[k..];
        let left = &a[..a.len() - k];
        let mut s = Poly::new();
        for (c, w) in &ri.tail {
            let mut nw = w.0.clone();
            nw.extend_from_slice(right);
            poly_add(f, &mut s, Word(nw), *c);
        }
        for (c, w) in &rj.tail {
            let mut nw = left.to_vec();
            nw.extend_from_slice(&w.0);
            poly_add(f, &mut s, Word(nw), f.neg(*c));
        }
        s
    }

    /// True iff every overlap ambiguity resolves to zero.
    pub fn is_confluent(&self) -> bool {
        self.overlaps()
            .into_iter()
            .all(|(i, j, k)| self.reduce_poly(self.s_poly(i, j, k)).is_empty())
    }

    fn max_lead(&self) -> usize {
        self.lead_lengths.last().copied().unwrap_or(0)
    }

    /// Detects arbitrarily long normal words via cycles in the graph of
    /// normal windows of length `max(L-1, 1)`, L the longest leading word.
    pub fn check_finite(&self) -> Result<()> {
        let q = &self.quiver;
        let k = self.max_lead().saturating_sub(1).max(1);
        let mut level: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
        for _ in 1..k {
            level = self.extend_level(&level);
        }
        let states: HashMap<Vec<usize>, usize> =
            level.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let succ: Vec<Vec<usize>> = level
            .iter()
            .map(|u| {
                self.successors(u)
                    .into_iter()
                    .filter_map(|b| {
                        let mut v = u[1..].to_vec();
                        v.push(b);
                        states.get(&v).copied()
                    })
                    .collect()
            })
            .collect();
        // iterative DFS with colours: 0 unseen, 1 on stack, 2 done
        let mut colour = vec![0u8; level.len()];
        for root in 0..level.len() {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next < succ[node].len() {
                    let child = succ[node][*next];
                    *next += 1;
                    match colour[child] {
                        0 => {
                            colour[child] = 1;
                            stack.push((child, 0));
                        }
                        1 => {
                            let start = stack.iter().position(|&(n, _)| n == child).unwrap();
                            let witness = stack[start..]
                                .iter()
                                .map(|&(n, _)| q.format_word(&PathWord::Arrows(level[n].clone())))
                                .collect::<Vec<_>>()
                                .join(" -> ");
                            return Err(Error::InfiniteDimensional { witness });
                        }
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                    stack.pop();
                }
            }
        }
        Ok(())
    }

    /// Arrows `b` such that `w·b` is a normal path (given `w` normal).
    fn successors(&self, w: &[usize]) -> Vec<usize> {
        let q = &self.quiver;
        let end = q.arrows[*w.last().unwrap()].target;
        let mut buf = w.to_vec();
        let mut out = Vec::new();
        for (b, arrow) in q.arrows.iter().enumerate() {
            if arrow.source != end {
                continue;
            }
            buf.push(b);
            if !self.has_lead_suffix(&buf) {
                out.push(b);
            }
            buf.pop();
        }
        out
    }

    fn extend_level(&self, level: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut next = Vec::new();
        for w in level {
            for b in self.successors(w) {
                let mut nw = w.clone();
                nw.push(b);
                next.push(nw);
            }
        }
        next
    }

    /// All normal words: trivial paths first, then arrow words in deglex order.
    pub fn normal_words(&self) -> Result<Vec<PathWord>> {
        self.check_finite()?;
        let mut out: Vec<PathWord> = (0..self.quiver.vertices.len())
            .map(PathWord::Trivial)
            .collect();
        let mut level: Vec<Vec<usize>> = (0..self.quiver.arrows.len()).map(|a| vec![a]).collect();
        while !level.is_empty() {
            level.sort();
            out.extend(level.iter().cloned().map(PathWord::Arrows));
            level = self.extend_level(&level);
        }
        Ok(out)
    }
}

fn rule_poly(f: &Field, r: &Rule) -> Poly {
    let mut p = Poly::new();
    p.insert(r.lead.clone(), 1);
    for (c, w) in &r.tail {
        poly_add(f, &mut p, w.clone(), f.neg(*c));
    }
    p
}

/// Completes the relations of `pres` to a reduced confluent rewriting system.
pub fn complete(pres: &Presentation, degree_bound: usize) -> Result<RewriteSystem> {
    let field = pres.field.clone();
    let mut rs = RewriteSystem::new(field.clone(), pres.quiver.clone());
    let mut pending: Vec<Poly> = Vec::new();
    for rel in &pres.relations {
        let mut p = Poly::new();
        for (c, w) in &rel.terms {
            if w.len() > degree_bound {
                return Err(Error::DegreeBoundExceeded {
                    bound: degree_bound,
                    degree: w.len(),
                });
            }
            poly_add(&field, &mut p, Word(w.arrows().to_vec()), *c);
        }
        pending.push(p);
    }

    let mut resolved: HashSet<(u64, u64, usize)> = HashSet::new();
    loop {
        // smallest leading word first
        pending.sort_by(|a, b| b.last_key_value().cmp(&a.last_key_value()));
        while let Some(p) = pending.pop() {
            let r = rs.reduce_poly(p);
            let Some((lead, _)) = r.last_key_value() else {
                continue;
            };
            if lead.0.len() > degree_bound {
                return Err(Error::DegreeBoundExceeded {
                    bound: degree_bound,
                    degree: lead.0.len(),
                });
            }
            if let Some(displaced) = rs.insert_rule(r) {
                pending.extend(displaced);
            }
        }
        rs.interreduce();

        for (i, j, k) in rs.overlaps() {
            let key = (rs.rules[i].id, rs.rules[j].id, k);
            if !resolved.insert(key) {
                continue;
            }
            let s = rs.reduce_poly(rs.s_poly(i, j, k));
            if !s.is_empty() {
                pending.push(s);
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    debug_assert!(rs.is_confluent());
    Ok(rs)
}

/// Finite-dimensional algebra given by a normal-word basis and structure constants.
#[derive(Debug, Clone)]
pub struct AlgebraTable {
    presentation: Presentation,
    rewrite: RewriteSystem,
    basis: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    lengths: Vec<usize>,
    ends: Vec<(usize, usize)>,
    prod_start: Vec<usize>,
    prod_entries: Vec<(usize, Scalar)>,
    partners: Vec<Vec<usize>>,
    unit: Vec<Scalar>,
}

/// Completes, enumerates the normal-word basis and verifies the table.
pub fn build_algebra(pres: &Presentation, degree_bound: usize) -> Result<AlgebraTable> {
    let rs = complete(pres, degree_bound)?;
    build_table(pres, rs)
}

pub fn build_table(pres: &Presentation, rs: RewriteSystem) -> Result<AlgebraTable> {
    let basis = rs.normal_words()?;
    let q = pres.quiver.clone();
    let dim = basis.len();
    let index: HashMap<PathWord, usize> =
        basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let lengths = basis.iter().map(PathWord::len).collect();
    let ends: Vec<(usize, usize)> = basis.iter().map(|w| (q.source(w), q.target(w))).collect();

    let mut prod_start = Vec::with_capacity(dim * dim + 1);
    let mut prod_entries = Vec::new();
    let mut partners = vec![Vec::new(); dim];
    for i in 0..dim {
        for j in 0..dim {
            prod_start.push(prod_entries.len());
            if ends[i].1 != ends[j].0 {
                continue;
            }
            let before = prod_entries.len();
            match (&basis[i], &basis[j]) {
                (PathWord::Trivial(_), _) => prod_entries.push((j, 1)),
                (_, PathWord::Trivial(_)) => prod_entries.push((i, 1)),
                (PathWord::Arrows(a), PathWord::Arrows(b)) => {
                    let mut w = a.clone();
                    w.extend_from_slice(b);
                    for (c, nw) in rs.normal_form(&[(1, PathWord::Arrows(w))]) {
                        let k = *index.get(&nw).ok_or_else(|| Error::ConsistencyFailure {
                            check: "normal words closed under reduction".into(),
                            witness: q.format_word(&nw),
                        })?;
                        prod_entries.push((k, c));
                    }
                }
            }
            if prod_entries.len() > before {
                partners[i].push(j);
            }
        }
    }
    prod_start.push(prod_entries.len());

    let mut unit = vec![0; dim];
    for (i, w) in basis.iter().enumerate() {
        if w.is_trivial() {
            unit[i] = 1;
        }
    }
    let table = AlgebraTable {
        presentation: pres.clone(),
        rewrite: rs,
        basis,
        index,
        lengths,
        ends,
        prod_start,
        prod_entries,
        partners,
        unit,
    };
    table.verify()?;
    Ok(table)
}

impl AlgebraTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn field(&self) -> &Field {
        &self.presentation.field
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn basis_index(&self, w: &PathWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// (source, target) vertex of basis word `i`.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `b_i · b_j`, sparse.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        let n = self.dim();
        let k = i * n + j;
        &self.prod_entries[self.prod_start[k]..self.prod_start[k + 1]]
    }

    /// Indices `j` with `b_i · b_j != 0`.
    pub fn right_partners(&self, i: usize) -> &[usize] {
        &self.partners[i]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn format_word(&self, i: usize) -> String {
        self.presentation.quiver.format_word(&self.basis[i])
    }

    /// Coordinate vector of an arbitrary combination of paths.
    pub fn normal_form(&self, element: &[(Scalar, PathWord)]) -> Vec<Scalar> {
        let mut v = vec![0; self.dim()];
        let f = self.field();
        for (c, w) in self.rewrite.normal_form(element) {
            let i = self.index[&w];
            v[i] = f.add(v[i], c);
        }
        v
    }

    /// Coordinates of an element expression such as `a*a + b1*b2`.
    pub fn element(&self, text: &str) -> Result<Vec<Scalar>> {
        let terms = self.presentation.parse_element(text)?;
        Ok(self.normal_form(&terms))
    }

    pub fn format_element(&self, v: &[Scalar]) -> String {
        let terms: Vec<(Scalar, PathWord)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c, self.basis[i].clone()))
            .collect();
        self.presentation.format_combination(&terms)
    }

    fn mul_basis_vec(&self, i: usize, v: &[Scalar], out: &mut [Scalar], scale: Scalar) {
        let f = self.field();
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, pc) in self.product(i, j) {
                out[k] = f.add(out[k], f.mul(scale, f.mul(c, pc)));
            }
        }
    }

    fn verify(&self) -> Result<()> {
        let f = self.field();
        let n = self.dim();
        let fail = |check: &str, witness: String| Error::ConsistencyFailure {
            check: check.into(),
            witness,
        };

        for (ri, rel) in self.presentation.relations.iter().enumerate() {
            if self.normal_form(&rel.terms).iter().any(|&c| c != 0) {
                return Err(fail("relation evaluates to zero", format!("relation {ri}")));
            }
        }

        for i in 0..n {
            if self.length(i) >= 2 {
                let a = self.basis[i].arrows();
                for s in 0..a.len() {
                    for e in s + 1..=a.len() {
                        if (s, e) != (0, a.len())
                            && !self.index.contains_key(&PathWord::Arrows(a[s..e].to_vec()))
                        {
                            return Err(fail("factor closure", self.format_word(i)));
                        }
                    }
                }
            }
            let e = self.basis_vector(i);
            let mut left = vec![0; n];
            let mut right = vec![0; n];
            for (u, &c) in self.unit.iter().enumerate() {
                if c != 0 {
                    self.mul_basis_vec(u, &e, &mut left, c);
                    let mut tmp = vec![0; n];
                    self.mul_basis_vec(i, &self.unit, &mut tmp, 1);
                    right = tmp;
                }
            }
            if left != e || right != e {
                return Err(fail("unit law", self.format_word(i)));
            }
        }

        // (b_i b_j) b_k = b_i (b_j b_k); only composable triples can be nonzero
        for i in 0..n {
            for &j in &self.partners[i] {
                let ij = self.product(i, j);
                for &k in &self.partners[j] {
                    let mut lhs = vec![0; n];
                    for &(m, c) in ij {
                        for &(r, d) in self.product(m, k) {
                            lhs[r] = f.add(lhs[r], f.mul(c, d));
                        }
                    }
                    let mut rhs = vec![0; n];
                    for &(m, c) in self.product(j, k) {
                        for &(r, d) in self.product(i, m) {
                            rhs[r] = f.add(rhs[r], f.mul(c, d));
                        }
                    }
                    if lhs != rhs {
                        return Err(fail(
                            "associativity",
                            format!(
                                "({}, {}, {})",
                                self.format_word(i),
                                self.format_word(j),
                                self.format_word(k)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
