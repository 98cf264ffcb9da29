//! Object-level syntax: formulas, formula multisets, sequents, languages
//! and translations, together with parsing, canonical serialization, and
//! the size / variable accounting everything else builds on.
//!
//! Sizes are token counts of the canonical serialization (parentheses,
//! connective names and identifiers each count one; whitespace does not),
//! so size is additive over subterms plus a fixed per-node overhead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::sexp::{parse_one, Sexp, SexpError};

/// The four propositional units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Zero,
    One,
    Top,
    Bot,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Zero => "zero",
            Constant::One => "one",
            Constant::Top => "top",
            Constant::Bot => "bot",
        }
    }

    pub const ALL: [Constant; 4] = [Constant::Zero, Constant::One, Constant::Top, Constant::Bot];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryConn {
    Not,
    Box,
    Bang,
}

impl UnaryConn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryConn::Not => "not",
            UnaryConn::Box => "box",
            UnaryConn::Bang => "bang",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryConn {
    And,
    Or,
    Imp,
    Fuse,
    Plus,
}

impl BinaryConn {
    pub fn name(self) -> &'static str {
        match self {
            BinaryConn::And => "and",
            BinaryConn::Or => "or",
            BinaryConn::Imp => "imp",
            BinaryConn::Fuse => "fuse",
            BinaryConn::Plus => "plus",
        }
    }
}

/// A connective descriptor: a name and an arity. Arity-0 connectives are
/// the constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connective {
    pub name: &'static str,
    pub arity: usize,
}

/// A propositional formula over the fixed connective alphabet.
///
/// Children are `Arc`-shared so clones are cheap; equality and ordering
/// are structural. The derived total order is the canonical multiset
/// order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Arc<str>),
    Const(Constant),
    Unary(UnaryConn, Arc<Formula>),
    Binary(BinaryConn, Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: impl AsRef<str>) -> Formula {
        Formula::Atom(Arc::from(name.as_ref()))
    }
    pub fn zero() -> Formula {
        Formula::Const(Constant::Zero)
    }
    pub fn one() -> Formula {
        Formula::Const(Constant::One)
    }
    pub fn top() -> Formula {
        Formula::Const(Constant::Top)
    }
    pub fn bot() -> Formula {
        Formula::Const(Constant::Bot)
    }
    pub fn not(a: Formula) -> Formula {
        Formula::Unary(UnaryConn::Not, Arc::new(a))
    }
    pub fn boxed(a: Formula) -> Formula {
        Formula::Unary(UnaryConn::Box, Arc::new(a))
    }
    pub fn bang(a: Formula) -> Formula {
        Formula::Unary(UnaryConn::Bang, Arc::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinaryConn::And, Arc::new(a), Arc::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinaryConn::Or, Arc::new(a), Arc::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinaryConn::Imp, Arc::new(a), Arc::new(b))
    }
    pub fn fuse(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinaryConn::Fuse, Arc::new(a), Arc::new(b))
    }
    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinaryConn::Plus, Arc::new(a), Arc::new(b))
    }

    /// Token count of the canonical serialization.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Const(_) => 1,
            Formula::Unary(_, a) => 3 + a.size(),
            Formula::Binary(_, a, b) => 3 + a.size() + b.size(),
        }
    }

    /// The atoms occurring in the formula; the four units are excluded.
    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Const(_) => {}
            Formula::Unary(_, a) => a.collect_vars(out),
            Formula::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Proper subformulas, depth-first.
    pub fn proper_subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::Atom(_) | Formula::Const(_) => {}
                Formula::Unary(_, a) => {
                    out.push(a);
                    walk(a, out);
                }
                Formula::Binary(_, a, b) => {
                    out.push(a);
                    walk(a, out);
                    out.push(b);
                    walk(b, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        let e = parse_one(text)?;
        Formula::from_sexp(&e)
    }

    pub fn from_sexp(e: &Sexp) -> Result<Formula, ParseError> {
        match e {
            Sexp::Sym(s, pos) => match s.as_str() {
                "zero" => Ok(Formula::zero()),
                "one" => Ok(Formula::one()),
                "top" => Ok(Formula::top()),
                "bot" => Ok(Formula::bot()),
                _ if is_atom_name(s) => Ok(Formula::atom(s)),
                _ => Err(ParseError::Syntax { pos: *pos, msg: format!("invalid atom name {s:?}") }),
            },
            Sexp::List(items, pos) => {
                let head = match items.first().and_then(Sexp::as_sym) {
                    Some(h) => h,
                    None => return Err(ParseError::Syntax { pos: *pos, msg: "expected connective head".into() }),
                };
                let args = &items[1..];
                let unary = |c: UnaryConn| -> Result<Formula, ParseError> {
                    if args.len() != 1 {
                        return Err(ParseError::ArityMismatch { pos: *pos, head: head.to_string(), expected: 1, got: args.len() });
                    }
                    Ok(Formula::Unary(c, Arc::new(Formula::from_sexp(&args[0])?)))
                };
                let binary = |c: BinaryConn| -> Result<Formula, ParseError> {
                    if args.len() != 2 {
                        return Err(ParseError::ArityMismatch { pos: *pos, head: head.to_string(), expected: 2, got: args.len() });
                    }
                    Ok(Formula::Binary(c, Arc::new(Formula::from_sexp(&args[0])?), Arc::new(Formula::from_sexp(&args[1])?)))
                };
                match head {
                    "and" => binary(BinaryConn::And),
                    "or" => binary(BinaryConn::Or),
                    "imp" => binary(BinaryConn::Imp),
                    "fuse" => binary(BinaryConn::Fuse),
                    "plus" => binary(BinaryConn::Plus),
                    "not" => unary(UnaryConn::Not),
                    "box" => unary(UnaryConn::Box),
                    "bang" => unary(UnaryConn::Bang),
                    _ => Err(ParseError::Syntax { pos: *pos, msg: format!("unknown connective {head:?}") }),
                }
            }
        }
    }
}

const RESERVED: &[&str] = &[
    "and", "or", "imp", "fuse", "plus", "not", "box", "bang", "zero", "one", "top", "bot", "seq", "mseq", "ant", "suc",
    "rule", "axiom", "calculus", "proof", "node", "by", "bind", "children", "premises", "conclusion", "discipline",
    "base", "admissible", "import",
];

pub fn is_atom_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('?')
        && !s.starts_with('$')
        && s.chars().next().map(|c| c.is_alphabetic() || c == '_').unwrap_or(false)
        && !RESERVED.contains(&s)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Const(c) => write!(f, "{}", c.name()),
            Formula::Unary(c, a) => write!(f, "({} {})", c.name(), a),
            Formula::Binary(c, a, b) => write!(f, "({} {} {})", c.name(), a, b),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch at byte {pos}: {head} expects {expected} arguments, got {got}")]
    ArityMismatch { pos: usize, head: String, expected: usize, got: usize },
}

impl From<SexpError> for ParseError {
    fn from(e: SexpError) -> Self {
        match e {
            SexpError::Syntax { pos, msg } => ParseError::Syntax { pos, msg },
        }
    }
}

/// A multiset of formulas kept in canonical (sorted) order, so equal
/// multisets have identical serializations and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FMultiset(Vec<Formula>);

impl FMultiset {
    pub fn new() -> FMultiset {
        FMultiset(Vec::new())
    }

    pub fn singleton(f: Formula) -> FMultiset {
        FMultiset(vec![f])
    }

    pub fn from_vec(mut v: Vec<Formula>) -> FMultiset {
        v.sort();
        FMultiset(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, f: Formula) {
        let idx = self.0.partition_point(|x| x <= &f);
        self.0.insert(idx, f);
    }

    pub fn union(&self, other: &FMultiset) -> FMultiset {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        FMultiset::from_vec(v)
    }

    /// Multiset difference; occurrences in `other` not present here are
    /// ignored, so `(a ∪ b) ∖ b = a` holds exactly.
    pub fn difference(&self, other: &FMultiset) -> FMultiset {
        let mut v = self.0.clone();
        for f in &other.0 {
            if let Some(i) = v.iter().position(|x| x == f) {
                v.remove(i);
            }
        }
        FMultiset(v)
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.0.iter().filter(|x| *x == f).count()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    pub fn remove_one(&mut self, f: &Formula) -> bool {
        if let Ok(i) = self.0.binary_search(f) {
            self.0.remove(i);
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }

    /// Distinct formulas with their occurrence counts.
    pub fn counted(&self) -> Vec<(Formula, usize)> {
        let mut out: Vec<(Formula, usize)> = Vec::new();
        for f in &self.0 {
            match out.last_mut() {
                Some((g, n)) if g == f => *n += 1,
                _ => out.push((f.clone(), 1)),
            }
        }
        out
    }

    /// Apply a unary connective to every element (`□Γ`; `□∅ = ∅`).
    pub fn wrap(&self, c: UnaryConn) -> FMultiset {
        FMultiset::from_vec(self.0.iter().map(|f| Formula::Unary(c, Arc::new(f.clone()))).collect())
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            f.collect_vars(&mut out);
        }
        out
    }

    pub fn size(&self) -> usize {
        2 + self.0.iter().map(Formula::size).sum::<usize>()
    }
}

impl FromIterator<Formula> for FMultiset {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        FMultiset::from_vec(iter.into_iter().collect())
    }
}

impl fmt::Display for FMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A sequent: a pair of formula multisets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sequent {
    pub ant: FMultiset,
    pub suc: FMultiset,
}

impl Sequent {
    pub fn new(ant: FMultiset, suc: FMultiset) -> Sequent {
        Sequent { ant, suc }
    }

    pub fn is_single_conclusion(&self) -> bool {
        self.suc.len() <= 1
    }

    /// Sequent composition `S · T`: antecedents and succedents are
    /// combined pairwise, `(S^a ∪ T^a ⇒ S^s ∪ T^s)`.
    pub fn compose(&self, other: &Sequent) -> Sequent {
        Sequent { ant: self.ant.union(&other.ant), suc: self.suc.union(&other.suc) }
    }

    /// Token count of the canonical serialization.
    pub fn size(&self) -> usize {
        3 + self.ant.size() + self.suc.size()
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = self.ant.vars();
        out.extend(self.suc.vars());
        out
    }

    pub fn parse(text: &str) -> Result<Sequent, ParseError> {
        let e = parse_one(text)?;
        Sequent::from_sexp(&e)
    }

    pub fn from_sexp(e: &Sexp) -> Result<Sequent, ParseError> {
        let items = e.as_list().ok_or_else(|| ParseError::Syntax { pos: e.pos(), msg: "expected (seq ...)".into() })?;
        if items.len() != 3 || items[0].as_sym() != Some("seq") {
            return Err(ParseError::Syntax { pos: e.pos(), msg: "expected (seq (ANT*) (SUC*))".into() });
        }
        let side = |e: &Sexp| -> Result<FMultiset, ParseError> {
            let items = e.as_list().ok_or_else(|| ParseError::Syntax { pos: e.pos(), msg: "expected a formula list".into() })?;
            items.iter().map(Formula::from_sexp).collect::<Result<Vec<_>, _>>().map(FMultiset::from_vec)
        };
        Ok(Sequent { ant: side(&items[1])?, suc: side(&items[2])? })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(seq {} {})", self.ant, self.suc)
    }
}

/// `size` for any serializable value: tokens of the canonical text form.
pub fn token_count(text: &str) -> usize {
    let mut count = 0usize;
    let mut in_sym = false;
    for c in text.chars() {
        match c {
            '(' | ')' => {
                count += 1;
                in_sym = false;
            }
            c if c.is_whitespace() => in_sym = false,
            _ => {
                if !in_sym {
                    count += 1;
                }
                in_sym = true;
            }
        }
    }
    count
}

/// A language: the fixed core alphabet plus optional modality,
/// exponential, primitive negation and additive disjunction.
///
/// Every language contains `{∧, ∨, →, *, 0, 1}` (and the lattice units
/// `⊤, ⊥`); the flags only govern `□`, `!`, `¬` and `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    pub has_box: bool,
    pub has_bang: bool,
    pub has_neg: bool,
    pub has_plus: bool,
}

impl Language {
    pub fn core() -> Language {
        Language { has_box: false, has_bang: false, has_neg: false, has_plus: false }
    }

    pub fn multi() -> Language {
        Language { has_plus: true, ..Language::core() }
    }

    pub fn classical() -> Language {
        Language { has_neg: true, has_plus: true, has_box: false, has_bang: false }
    }

    pub fn connectives(&self) -> Vec<Connective> {
        let mut out = vec![
            Connective { name: "and", arity: 2 },
            Connective { name: "or", arity: 2 },
            Connective { name: "imp", arity: 2 },
            Connective { name: "fuse", arity: 2 },
            Connective { name: "zero", arity: 0 },
            Connective { name: "one", arity: 0 },
            Connective { name: "top", arity: 0 },
            Connective { name: "bot", arity: 0 },
        ];
        if self.has_plus {
            out.push(Connective { name: "plus", arity: 2 });
        }
        if self.has_neg {
            out.push(Connective { name: "not", arity: 1 });
        }
        if self.has_box {
            out.push(Connective { name: "box", arity: 1 });
        }
        if self.has_bang {
            out.push(Connective { name: "bang", arity: 1 });
        }
        out
    }

    pub fn allows_unary(&self, c: UnaryConn) -> bool {
        match c {
            UnaryConn::Not => self.has_neg,
            UnaryConn::Box => self.has_box,
            UnaryConn::Bang => self.has_bang,
        }
    }

    pub fn allows_binary(&self, c: BinaryConn) -> bool {
        match c {
            BinaryConn::Plus => self.has_plus,
            _ => true,
        }
    }

    pub fn check_formula(&self, f: &Formula) -> Result<(), UndeclaredConnective> {
        match f {
            Formula::Atom(_) | Formula::Const(_) => Ok(()),
            Formula::Unary(c, a) => {
                if !self.allows_unary(*c) {
                    return Err(UndeclaredConnective(c.name()));
                }
                self.check_formula(a)
            }
            Formula::Binary(c, a, b) => {
                if !self.allows_binary(*c) {
                    return Err(UndeclaredConnective(c.name()));
                }
                self.check_formula(a)?;
                self.check_formula(b)
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("connective {0:?} is not declared in this language")]
pub struct UndeclaredConnective(pub &'static str);

/// Key identifying a connective in a translation's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConnKey {
    Const(Constant),
    Unary(UnaryConn),
    Binary(BinaryConn),
}

/// A translation maps connectives to templates over the placeholder
/// atoms `p1`, `p2`, each of which may occur at most once. Connectives
/// outside the explicit map are fixed (translated to themselves) when
/// `fixes_rest` is set.
#[derive(Debug, Clone)]
pub struct Translation {
    templates: BTreeMap<ConnKey, Formula>,
    fixes_rest: bool,
}

impl Translation {
    pub fn identity() -> Translation {
        Translation { templates: BTreeMap::new(), fixes_rest: true }
    }

    pub fn partial() -> Translation {
        Translation { templates: BTreeMap::new(), fixes_rest: false }
    }

    pub fn with(mut self, key: ConnKey, template: Formula) -> Result<Translation, TranslationError> {
        for p in ["p1", "p2"] {
            let atom = Formula::atom(p);
            let occurrences = std::iter::once(&template)
                .chain(template.proper_subformulas())
                .filter(|f| **f == atom)
                .count();
            if occurrences > 1 {
                return Err(TranslationError::PlaceholderRepeated { placeholder: p });
            }
        }
        self.templates.insert(key, template);
        Ok(self)
    }

    /// The canonical translation into classical logic: fusion to
    /// conjunction, addition to disjunction, `1` to `⊤` and `0` to `⊥`.
    pub fn canonical() -> Translation {
        Translation::identity()
            .with(ConnKey::Binary(BinaryConn::Fuse), Formula::and(Formula::atom("p1"), Formula::atom("p2")))
            .unwrap()
            .with(ConnKey::Binary(BinaryConn::Plus), Formula::or(Formula::atom("p1"), Formula::atom("p2")))
            .unwrap()
            .with(ConnKey::Const(Constant::One), Formula::top())
            .unwrap()
            .with(ConnKey::Const(Constant::Zero), Formula::bot())
            .unwrap()
    }

    /// The largest template size; `|φ^t| ≤ c · |φ|` with this `c`.
    pub fn expansion_bound(&self) -> usize {
        self.templates.values().map(Formula::size).max().unwrap_or(1).max(3)
    }

    fn subst_placeholders(template: &Formula, args: &[Formula]) -> Formula {
        match template {
            Formula::Atom(a) if &**a == "p1" => args[0].clone(),
            Formula::Atom(a) if &**a == "p2" && args.len() > 1 => args[1].clone(),
            Formula::Atom(_) | Formula::Const(_) => template.clone(),
            Formula::Unary(c, x) => Formula::Unary(*c, Arc::new(Self::subst_placeholders(x, args))),
            Formula::Binary(c, x, y) => Formula::Binary(
                *c,
                Arc::new(Self::subst_placeholders(x, args)),
                Arc::new(Self::subst_placeholders(y, args)),
            ),
        }
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula, TranslationError> {
        match f {
            Formula::Atom(_) => Ok(f.clone()),
            Formula::Const(c) => match self.templates.get(&ConnKey::Const(*c)) {
                Some(t) => Ok(t.clone()),
                None if self.fixes_rest => Ok(f.clone()),
                None => Err(TranslationError::UndeclaredConnective { name: c.name() }),
            },
            Formula::Unary(c, a) => {
                let ta = self.apply(a)?;
                match self.templates.get(&ConnKey::Unary(*c)) {
                    Some(t) => Ok(Self::subst_placeholders(t, &[ta])),
                    None if self.fixes_rest => Ok(Formula::Unary(*c, Arc::new(ta))),
                    None => Err(TranslationError::UndeclaredConnective { name: c.name() }),
                }
            }
            Formula::Binary(c, a, b) => {
                let ta = self.apply(a)?;
                let tb = self.apply(b)?;
                match self.templates.get(&ConnKey::Binary(*c)) {
                    Some(t) => Ok(Self::subst_placeholders(t, &[ta, tb])),
                    None if self.fixes_rest => Ok(Formula::Binary(*c, Arc::new(ta), Arc::new(tb))),
                    None => Err(TranslationError::UndeclaredConnective { name: c.name() }),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TranslationError {
    #[error("connective {name:?} is not in the translation's domain")]
    UndeclaredConnective { name: &'static str },
    #[error("placeholder {placeholder} occurs more than once in a template")]
    PlaceholderRepeated { placeholder: &'static str },
}

/// Fold a list into a right-nested chain of the given binary connective,
/// with the calculus conventions for degenerate lists: an empty fusion is
/// `1`, an empty conjunction `⊤`, an empty addition `0`, an empty
/// disjunction `⊥`, and singleton lists collapse to their element.
pub fn big_op(conn: BinaryConn, items: &[Formula]) -> Formula {
    match items {
        [] => match conn {
            BinaryConn::Fuse => Formula::one(),
            BinaryConn::And => Formula::top(),
            BinaryConn::Plus => Formula::zero(),
            BinaryConn::Or => Formula::bot(),
            BinaryConn::Imp => unreachable!("no empty implication"),
        },
        [x] => x.clone(),
        [x, rest @ ..] => Formula::Binary(conn, Arc::new(x.clone()), Arc::new(big_op(conn, rest))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = Formula::parse("(and p q)").unwrap();
        assert_eq!(f, Formula::and(Formula::atom("p"), Formula::atom("q")));
        assert_eq!(f.to_string(), "(and p q)");

        let s = Sequent::parse("(seq ((and p q)) (p))").unwrap();
        assert_eq!(s.ant, FMultiset::singleton(Formula::and(Formula::atom("p"), Formula::atom("q"))));
        assert_eq!(s.suc, FMultiset::singleton(Formula::atom("p")));
    }

    #[test]
    fn arity_mismatch() {
        match Formula::parse("(and p)") {
            Err(ParseError::ArityMismatch { expected: 2, got: 1, .. }) => {}
            other => panic!("expected arity mismatch, got {other:?}"),
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(Formula::atom("p").size(), 1);
        let pq = Formula::and(Formula::atom("p"), Formula::atom("q"));
        assert_eq!(pq.size(), 5);
        assert_eq!(pq.size(), token_count(&pq.to_string()));
        let s = Sequent::parse("(seq (p q) ())").unwrap();
        assert_eq!(s.size(), token_count(&s.to_string()));
    }

    #[test]
    fn size_monotone_on_subformulas() {
        let f = Formula::parse("(imp (and p (not q)) (or p one))").unwrap();
        for sub in f.proper_subformulas() {
            assert!(sub.size() < f.size());
        }
    }

    #[test]
    fn vars_examples() {
        let f = Formula::parse("(and p (imp q p))").unwrap();
        let vars = f.vars();
        let vs: Vec<&str> = vars.iter().map(|s| &**s).collect();
        assert_eq!(vs, vec!["p", "q"]);
        assert!(Formula::one().vars().is_empty());
        assert!(Formula::not(Formula::top()).vars().is_empty());
    }

    #[test]
    fn multiset_laws() {
        let a = FMultiset::from_vec(vec![Formula::atom("p"), Formula::atom("p"), Formula::atom("q")]);
        let b = FMultiset::from_vec(vec![Formula::atom("p"), Formula::atom("r")]);
        assert_eq!(a.union(&b).difference(&b), a);
        assert_eq!(a.union(&b), b.union(&a));
        assert_eq!(a.count(&Formula::atom("p")), 2);
    }

    #[test]
    fn canonical_translation() {
        let t = Translation::canonical();
        let f = Formula::parse("(fuse p q)").unwrap();
        assert_eq!(t.apply(&f).unwrap(), Formula::parse("(and p q)").unwrap());
        assert_eq!(t.apply(&Formula::one()).unwrap(), Formula::top());
        assert_eq!(t.apply(&Formula::zero()).unwrap(), Formula::bot());
        let id = Translation::identity();
        assert_eq!(id.apply(&f).unwrap(), f);
    }

    #[test]
    fn partial_translation_errors() {
        let t = Translation::partial();
        match t.apply(&Formula::parse("(fuse p q)").unwrap()) {
            Err(TranslationError::UndeclaredConnective { name: "fuse" }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn sequent_composition() {
        let s = Sequent::parse("(seq (p) (q))").unwrap();
        let t = Sequent::parse("(seq (r) (s2))").unwrap();
        let st = s.compose(&t);
        assert_eq!(st, Sequent::parse("(seq (p r) (q s2))").unwrap());
    }
}
