//! Vocabularies, finite structures, domain atoms, atom sets and atom relations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Index of a domain element in declaration order.
pub type Elem = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Object,
    Function,
    Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub arity: usize,
}

impl Symbol {
    pub fn object(name: &str) -> Self {
        Symbol { name: name.into(), kind: SymbolKind::Object, arity: 0 }
    }

    pub fn function(name: &str, arity: usize) -> Self {
        Symbol { name: name.into(), kind: SymbolKind::Function, arity }
    }

    pub fn predicate(name: &str, arity: usize) -> Self {
        Symbol { name: name.into(), kind: SymbolKind::Predicate, arity }
    }
}

/// A set of non-logical symbols with unique names. `=` is never a member.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    symbols: BTreeMap<String, Symbol>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: Symbol) -> Result<()> {
        if symbol.name == "=" || self.symbols.contains_key(&symbol.name) {
            return Err(Error::DuplicateSymbol(symbol.name));
        }
        self.symbols.insert(symbol.name.clone(), symbol);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Value assigned to a symbol by a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interpretation {
    Object(Elem),
    /// Dense table indexed in mixed radix, first argument most significant.
    Function(Vec<Elem>),
    Predicate(BTreeSet<Vec<Elem>>),
}

/// A finite domain with total interpretations of its vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    domain: Vec<String>,
    vocabulary: Vocabulary,
    values: BTreeMap<String, Interpretation>,
}

fn table_index(domain_size: usize, args: &[Elem]) -> usize {
    args.iter().fold(0usize, |acc, &a| acc * domain_size + a as usize)
}

impl FiniteStructure {
    pub fn new<S: AsRef<str>>(domain: &[S]) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        let mut names = Vec::with_capacity(domain.len());
        for d in domain {
            let d = d.as_ref();
            if !seen.insert(d) {
                return Err(Error::DuplicateElement(d.into()));
            }
            names.push(d.to_string());
        }
        Ok(FiniteStructure { domain: names, vocabulary: Vocabulary::new(), values: BTreeMap::new() })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.domain.iter().position(|d| d == name).map(|i| i as Elem)
    }

    pub fn elem_name(&self, e: Elem) -> &str {
        &self.domain[e as usize]
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.vocabulary.get(name)
    }

    pub fn interpretation(&self, name: &str) -> Option<&Interpretation> {
        self.values.get(name)
    }

    fn check_elem(&self, symbol: &str, e: Elem) -> Result<()> {
        if (e as usize) < self.domain.len() {
            Ok(())
        } else {
            Err(Error::InvalidInterpretation { symbol: symbol.into(), reason: "element outside the domain".into() })
        }
    }

    pub fn set_object(&mut self, name: &str, value: Elem) -> Result<()> {
        self.check_elem(name, value)?;
        self.vocabulary.insert(Symbol::object(name))?;
        self.values.insert(name.into(), Interpretation::Object(value));
        Ok(())
    }

    /// Installs a function table; it must be total on Dⁿ.
    pub fn set_function(&mut self, name: &str, arity: usize, table: &BTreeMap<Vec<Elem>, Elem>) -> Result<()> {
        let n = self.domain.len();
        let size = n.checked_pow(arity as u32).ok_or_else(|| Error::InvalidInterpretation {
            symbol: name.into(),
            reason: "table too large".into(),
        })?;
        if table.len() != size {
            return Err(Error::InvalidInterpretation { symbol: name.into(), reason: "function table is not total".into() });
        }
        let mut dense = alloc::vec![0; size];
        for (args, &v) in table {
            if args.len() != arity {
                return Err(Error::InvalidInterpretation { symbol: name.into(), reason: "wrong number of arguments".into() });
            }
            for &a in args {
                self.check_elem(name, a)?;
            }
            self.check_elem(name, v)?;
            dense[table_index(n, args)] = v;
        }
        self.vocabulary.insert(Symbol::function(name, arity))?;
        self.values.insert(name.into(), Interpretation::Function(dense));
        Ok(())
    }

    pub fn set_predicate(&mut self, name: &str, arity: usize, tuples: BTreeSet<Vec<Elem>>) -> Result<()> {
        for t in &tuples {
            if t.len() != arity {
                return Err(Error::InvalidInterpretation { symbol: name.into(), reason: "tuple of wrong length".into() });
            }
            for &a in t {
                self.check_elem(name, a)?;
            }
        }
        self.vocabulary.insert(Symbol::predicate(name, arity))?;
        self.values.insert(name.into(), Interpretation::Predicate(tuples));
        Ok(())
    }

    pub fn object(&self, name: &str) -> Option<Elem> {
        match self.values.get(name)? {
            Interpretation::Object(e) => Some(*e),
            _ => None,
        }
    }

    pub fn apply(&self, name: &str, args: &[Elem]) -> Option<Elem> {
        match self.values.get(name)? {
            Interpretation::Function(t) if self.vocabulary.get(name)?.arity == args.len() => {
                Some(t[table_index(self.domain.len(), args)])
            }
            Interpretation::Object(e) if args.is_empty() => Some(*e),
            _ => None,
        }
    }

    pub fn holds(&self, name: &str, args: &[Elem]) -> Option<bool> {
        match self.values.get(name)? {
            Interpretation::Predicate(s) if self.vocabulary.get(name)?.arity == args.len() => Some(s.contains(args)),
            _ => None,
        }
    }

    /// The reduct to the named symbols.
    pub fn restrict_to<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<FiniteStructure> {
        let mut out = FiniteStructure { domain: self.domain.clone(), vocabulary: Vocabulary::new(), values: BTreeMap::new() };
        for name in names {
            let sym = self.vocabulary.get(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
            out.vocabulary.insert(sym.clone())?;
            out.values.insert(name.into(), self.values[name].clone());
        }
        Ok(out)
    }
}

/// A defined predicate applied to domain elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainAtom {
    pub predicate: Symbol,
    pub args: Vec<Elem>,
}

/// The canonical enumeration of domat(defp(Δ), D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    domain: Vec<String>,
    preds: Vec<Symbol>,
    offsets: Vec<usize>,
    size: usize,
}

impl Universe {
    /// Predicates are sorted by name; arguments vary in mixed radix, first argument most significant.
    pub fn new<S: AsRef<str>>(defined_preds: &[Symbol], domain: &[S]) -> Self {
        let mut preds: Vec<Symbol> = defined_preds.to_vec();
        preds.sort_by(|a, b| a.name.cmp(&b.name));
        preds.dedup_by(|a, b| a.name == b.name);
        let n = domain.len();
        let mut offsets = Vec::with_capacity(preds.len() + 1);
        let mut size = 0;
        for p in &preds {
            offsets.push(size);
            size += n.pow(p.arity as u32);
        }
        offsets.push(size);
        Universe { domain: domain.iter().map(|d| d.as_ref().to_string()).collect(), preds, offsets, size }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn predicates(&self) -> &[Symbol] {
        &self.preds
    }

    pub fn predicate_index(&self, name: &str) -> Option<usize> {
        self.preds.binary_search_by(|p| p.name.as_str().cmp(name)).ok()
    }

    /// The contiguous index range of a predicate's atoms.
    pub fn predicate_range(&self, pred: usize) -> core::ops::Range<usize> {
        self.offsets[pred]..self.offsets[pred + 1]
    }

    pub fn predicate_of(&self, atom: usize) -> usize {
        match self.offsets.binary_search(&atom) {
            Ok(mut i) => {
                while self.offsets[i + 1] == atom {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        }
    }

    pub fn args_of(&self, atom: usize) -> Vec<Elem> {
        let p = self.predicate_of(atom);
        let arity = self.preds[p].arity;
        let n = self.domain.len();
        let mut rest = atom - self.offsets[p];
        let mut args = alloc::vec![0; arity];
        for slot in args.iter_mut().rev() {
            *slot = (rest % n) as Elem;
            rest /= n;
        }
        args
    }

    pub fn atom(&self, index: usize) -> DomainAtom {
        DomainAtom { predicate: self.preds[self.predicate_of(index)].clone(), args: self.args_of(index) }
    }

    pub fn index_of_parts(&self, pred: usize, args: &[Elem]) -> usize {
        self.offsets[pred] + table_index(self.domain.len(), args)
    }

    pub fn index_of(&self, atom: &DomainAtom) -> Option<usize> {
        let p = self.predicate_index(&atom.predicate.name)?;
        if self.preds[p].arity != atom.args.len() || atom.args.iter().any(|&a| a as usize >= self.domain.len()) {
            return None;
        }
        Some(self.index_of_parts(p, &atom.args))
    }

    /// Looks up an atom given by predicate name and element names.
    pub fn lookup(&self, pred: &str, args: &[&str]) -> Option<usize> {
        let p = self.predicate_index(pred)?;
        if self.preds[p].arity != args.len() {
            return None;
        }
        let mut elems = Vec::with_capacity(args.len());
        for a in args {
            elems.push(self.domain.iter().position(|d| d == a)? as Elem);
        }
        Some(self.index_of_parts(p, &elems))
    }

    /// `R(a,b)`, or the bare name for 0-ary atoms.
    pub fn name(&self, index: usize) -> String {
        let p = self.predicate_of(index);
        let mut s = self.preds[p].name.clone();
        let args = self.args_of(index);
        if !args.is_empty() {
            s.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&self.domain[*a as usize]);
            }
            s.push(')');
        }
        s
    }

    pub fn names(&self, set: &AtomSet) -> Vec<String> {
        set.iter().map(|i| self.name(i)).collect()
    }

    pub fn atoms(&self) -> impl Iterator<Item = DomainAtom> + '_ {
        (0..self.size).map(|i| self.atom(i))
    }
}

/// Lists domat(preds, D) in canonical order.
pub fn enumerate_domain_atoms<S: AsRef<str>>(defined_preds: &[Symbol], domain: &[S]) -> Vec<DomainAtom> {
    Universe::new(defined_preds, domain).atoms().collect()
}

/// A subset of the universe, stored as a bitset over canonical atom indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    len: usize,
    words: Vec<u64>,
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl AtomSet {
    pub fn empty(len: usize) -> Self {
        AtomSet { len, words: alloc::vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the universe this set lives in.
    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true if the atom was not yet present.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "atom index {i} outside universe of {}", self.len);
        let had = self.contains(i);
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.words[i / 64] &= !(1 << (i % 64));
        }
        had
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &AtomSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &AtomSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> AtomSet {
        AtomSet::full(self.len).difference(self)
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical comparison: by size, then by the ascending member list.
    pub fn canonical_cmp(&self, other: &AtomSet) -> core::cmp::Ordering {
        self.count().cmp(&other.count()).then_with(|| self.iter().cmp(other.iter()))
    }
}

/// A binary relation on the universe. `contains(a, b)` reads `a ∝ b`.
#[derive(Clone, PartialEq, Eq)]
pub struct AtomRelation {
    len: usize,
    /// `below[b]` is {a | a ∝ b}.
    below: Vec<AtomSet>,
}

impl fmt::Debug for AtomRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl AtomRelation {
    pub fn empty(len: usize) -> Self {
        AtomRelation { len, below: alloc::vec![AtomSet::empty(len); len] }
    }

    /// The total relation ∝_t.
    pub fn total(len: usize) -> Self {
        AtomRelation { len, below: alloc::vec![AtomSet::full(len); len] }
    }

    pub fn from_pairs(len: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(len);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.below[b].insert(a);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn strictly_below(&self, a: usize, b: usize) -> bool {
        self.contains(a, b) && !self.contains(b, a)
    }

    /// {B | B ∝ atom}.
    pub fn related_to(&self, atom: usize) -> &AtomSet {
        &self.below[atom]
    }

    /// {B | B ≺ atom} for the strict part.
    pub fn strict_below(&self, atom: usize) -> AtomSet {
        let mut s = AtomSet::empty(self.len);
        for b in self.below[atom].iter() {
            if !self.below[b].contains(atom) {
                s.insert(b);
            }
        }
        s
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len).flat_map(move |a| (0..self.len).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.below.iter().map(AtomSet::count).sum()
    }

    pub fn union(&self, other: &AtomRelation) -> AtomRelation {
        AtomRelation { len: self.len, below: self.below.iter().zip(&other.below).map(|(a, b)| a.union(b)).collect() }
    }

    pub fn strict_part(&self) -> AtomRelation {
        AtomRelation { len: self.len, below: (0..self.len).map(|a| self.strict_below(a)).collect() }
    }

    pub fn transitive_closure(&self) -> AtomRelation {
        let mut below = self.below.clone();
        // Warshall: if k ∝ b then everything below k is below b.
        for k in 0..self.len {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        AtomRelation { len: self.len, below }
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len).all(|b| self.below[b].iter().all(|k| self.below[k].is_subset(&self.below[b])))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len).all(|a| !self.contains(a, a))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.pairs().all(|(a, b)| !self.contains(b, a))
    }

    /// A cycle of the strict part, if any, listed in order a₀ ≺ a₁ ≺ … ≺ a₀.
    pub fn strict_cycle(&self) -> Option<Vec<usize>> {
        let strict = self.strict_part();
        // Edges a -> b whenever a ≺ b; iterative DFS with colours.
        let mut colour = alloc::vec![0u8; self.len];
        let mut parent = alloc::vec![usize::MAX; self.len];
        let succ: Vec<Vec<usize>> = {
            let mut s = alloc::vec![Vec::new(); self.len];
            for b in 0..self.len {
                for a in strict.below[b].iter() {
                    s[a].push(b);
                }
            }
            s
        };
        for root in 0..self.len {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = alloc::vec![(root, 0usize)];
            colour[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < succ[v].len() {
                    let w = succ[v][*next];
                    *next += 1;
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = alloc::vec![w];
                            let mut x = v;
                            while x != w {
                                cycle.push(x);
                                x = parent[x];
                            }
                            cycle.reverse();
                            cycle.rotate_right(1);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// Selects the part of the relation used by [`restrict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictMode {
    AllRelated,
    StrictlyBelow,
}

/// 𝔄|∝A or 𝔄|≺A.
pub fn restrict(set: &AtomSet, rel: &AtomRelation, atom: usize, mode: RestrictMode) -> Result<AtomSet> {
    if atom >= rel.universe_len() {
        return Err(Error::AtomOutsideUniverse(alloc::format!("#{atom}")));
    }
    Ok(match mode {
        RestrictMode::AllRelated => set.intersection(rel.related_to(atom)),
        RestrictMode::StrictlyBelow => set.intersection(&rel.strict_below(atom)),
    })
}

/// O∘𝔄: the context extended with the defined atoms of `defined` as predicate extensions.
pub fn compose(context: &FiniteStructure, universe: &Universe, defined: &AtomSet) -> Result<FiniteStructure> {
    if context.domain() != universe.domain() || defined.universe_len() != universe.len() {
        return Err(Error::DomainMismatch);
    }
    let mut out = context.clone();
    for (p, sym) in universe.predicates().iter().enumerate() {
        let tuples = universe.predicate_range(p).filter(|&i| defined.contains(i)).map(|i| universe.args_of(i)).collect();
        out.set_predicate(&sym.name, sym.arity, tuples)?;
    }
    Ok(out)
}

/// Reads the defined-atom set back out of a composed structure.
pub fn defined_part(structure: &FiniteStructure, universe: &Universe) -> Result<AtomSet> {
    if structure.domain() != universe.domain() {
        return Err(Error::DomainMismatch);
    }
    let mut set = AtomSet::empty(universe.len());
    for (p, sym) in universe.predicates().iter().enumerate() {
        match structure.interpretation(&sym.name) {
            Some(Interpretation::Predicate(tuples)) => {
                for t in tuples {
                    set.insert(universe.index_of_parts(p, t));
                }
            }
            _ => return Err(Error::UnknownSymbol(sym.name.clone())),
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn enumeration_order() {
        let u = Universe::new(&[Symbol::predicate("Val", 0), Symbol::predicate("T", 1)], &["p", "d1"]);
        let names: Vec<String> = (0..u.len()).map(|i| u.name(i)).collect();
        assert_eq!(names, vec!["T(p)", "T(d1)", "Val"]);
        let u = Universe::new(&[Symbol::predicate("R", 2)], &["a", "b", "c"]);
        assert_eq!(u.len(), 9);
        assert_eq!(u.name(0), "R(a,a)");
        assert_eq!(u.name(1), "R(a,b)");
        assert_eq!(u.name(8), "R(c,c)");
        for i in 0..9 {
            assert_eq!(u.index_of(&u.atom(i)), Some(i));
        }
    }

    #[test]
    fn empty_predicate_ranges() {
        let u = Universe::new(&[Symbol::predicate("A", 0), Symbol::predicate("B", 0)], &["x"]);
        assert_eq!(u.name(0), "A");
        assert_eq!(u.name(1), "B");
        assert_eq!(u.predicate_of(1), 1);
    }

    #[test]
    fn restrict_total_is_empty_strictly() {
        let rel = AtomRelation::total(3);
        let set = AtomSet::full(3);
        assert!(restrict(&set, &rel, 1, RestrictMode::StrictlyBelow).unwrap().is_empty());
        assert_eq!(restrict(&set, &rel, 1, RestrictMode::AllRelated).unwrap(), set);
        assert!(restrict(&set, &AtomRelation::empty(3), 0, RestrictMode::AllRelated).unwrap().is_empty());
        assert!(restrict(&set, &rel, 7, RestrictMode::AllRelated).is_err());
    }

    #[test]
    fn closure_and_cycles() {
        let r = AtomRelation::from_pairs(4, [(0, 1), (1, 2)]).transitive_closure();
        assert!(r.contains(0, 2));
        assert!(r.is_transitive() && r.is_irreflexive() && r.is_asymmetric());
        assert!(r.strict_cycle().is_none());
        let c = AtomRelation::from_pairs(3, [(0, 1), (1, 0)]);
        // Mutual pairs vanish from the strict part, so no strict cycle.
        assert!(c.strict_cycle().is_none());
        let c = AtomRelation::from_pairs(3, [(0, 1), (1, 2), (2, 0)]);
        let cyc = c.strict_cycle().unwrap();
        assert_eq!(cyc.len(), 3);
        for w in 0..3 {
            assert!(c.strictly_below(cyc[w], cyc[(w + 1) % 3]));
        }
    }

    #[test]
    fn compose_round_trip() {
        let mut o = FiniteStructure::new(&["a", "b", "c"]).unwrap();
        o.set_predicate("G", 2, [vec![0, 0], vec![1, 2], vec![2, 1]].into_iter().collect()).unwrap();
        let u = Universe::new(&[Symbol::predicate("R", 2)], o.domain());
        let set = AtomSet::from_indices(9, [0]);
        let s = compose(&o, &u, &set).unwrap();
        assert_eq!(s.holds("R", &[0, 0]), Some(true));
        assert_eq!(s.holds("R", &[1, 1]), Some(false));
        assert_eq!(s.holds("G", &[1, 2]), Some(true));
        assert_eq!(s.restrict_to(["G"]).unwrap(), o);
        assert_eq!(defined_part(&s, &u).unwrap(), set);
        let other = FiniteStructure::new(&["a"]).unwrap();
        assert_eq!(compose(&other, &u, &set), Err(Error::DomainMismatch));
    }

    #[test]
    fn function_tables_must_be_total() {
        let mut o = FiniteStructure::new(&["a", "b"]).unwrap();
        let partial: BTreeMap<Vec<Elem>, Elem> = [(vec![0], 1)].into_iter().collect();
        assert!(o.set_function("s", 1, &partial).is_err());
        let total: BTreeMap<Vec<Elem>, Elem> = [(vec![0], 1), (vec![1], 1)].into_iter().collect();
        o.set_function("s", 1, &total).unwrap();
        assert_eq!(o.apply("s", &[0]), Some(1));
        assert!(FiniteStructure::new::<&str>(&[]).is_err());
        assert!(FiniteStructure::new(&["a", "a"]).is_err());
    }
}
