//! Meta-level syntax and the rule/axiom taxonomy.
//!
//! Rule schemas are meta-sequents over formula variables (`?phi`) and
//! meta-multiset variables (`$Gamma`, optionally wrapped as `(box $Gamma)`
//! for modal rules). Instantiation is explicit: proofs carry the full
//! substitution and the kernel never searches for a match.
//!
//! `classify_rule` pattern-matches a schema against the semi-analytic,
//! context-sharing, multi-conclusion, focused and modal templates, and
//! decides the polarity-preserving (PPF) and monotonicity-preserving
//! (MPF) properties by a sufficient syntactic criterion. Matching is
//! structural, so it is invariant under renaming of meta-variables and
//! reordering of premises.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::sexp::{parse_one, Sexp};
use crate::syntax::{is_atom_name, BinaryConn, Constant, FMultiset, Formula, ParseError, Sequent, UnaryConn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Discipline {
    Single,
    Multi,
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discipline::Single => write!(f, "single"),
            Discipline::Multi => write!(f, "multi"),
        }
    }
}

/// A meta-formula: formulas extended with formula variables as leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaFormula {
    Atom(Arc<str>),
    Const(Constant),
    FVar(Arc<str>),
    Unary(UnaryConn, Arc<MetaFormula>),
    Binary(BinaryConn, Arc<MetaFormula>, Arc<MetaFormula>),
}

impl MetaFormula {
    pub fn fvar(name: impl AsRef<str>) -> MetaFormula {
        MetaFormula::FVar(Arc::from(name.as_ref()))
    }
    pub fn atom(name: impl AsRef<str>) -> MetaFormula {
        MetaFormula::Atom(Arc::from(name.as_ref()))
    }
    pub fn not(a: MetaFormula) -> MetaFormula {
        MetaFormula::Unary(UnaryConn::Not, Arc::new(a))
    }
    pub fn un(c: UnaryConn, a: MetaFormula) -> MetaFormula {
        MetaFormula::Unary(c, Arc::new(a))
    }
    pub fn bin(c: BinaryConn, a: MetaFormula, b: MetaFormula) -> MetaFormula {
        MetaFormula::Binary(c, Arc::new(a), Arc::new(b))
    }

    pub fn from_formula(f: &Formula) -> MetaFormula {
        match f {
            Formula::Atom(a) => MetaFormula::Atom(a.clone()),
            Formula::Const(c) => MetaFormula::Const(*c),
            Formula::Unary(c, a) => MetaFormula::Unary(*c, Arc::new(MetaFormula::from_formula(a))),
            Formula::Binary(c, a, b) => {
                MetaFormula::Binary(*c, Arc::new(MetaFormula::from_formula(a)), Arc::new(MetaFormula::from_formula(b)))
            }
        }
    }

    /// Meta-variables and atoms occurring in the meta-formula (the units
    /// are excluded, matching `Formula::vars`).
    pub fn vars(&self) -> BTreeSet<MetaVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<MetaVar>) {
        match self {
            MetaFormula::Atom(a) => {
                out.insert(MetaVar::Atom(a.clone()));
            }
            MetaFormula::FVar(v) => {
                out.insert(MetaVar::FVar(v.clone()));
            }
            MetaFormula::Const(_) => {}
            MetaFormula::Unary(_, a) => a.collect_vars(out),
            MetaFormula::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn instantiate(&self, subst: &Substitution) -> Result<Formula, InstantiateError> {
        match self {
            MetaFormula::Atom(a) => Ok(Formula::Atom(a.clone())),
            MetaFormula::Const(c) => Ok(Formula::Const(*c)),
            MetaFormula::FVar(v) => subst
                .formula(v)
                .cloned()
                .ok_or_else(|| InstantiateError::MissingBinding { var: format!("?{v}") }),
            MetaFormula::Unary(c, a) => Ok(Formula::Unary(*c, Arc::new(a.instantiate(subst)?))),
            MetaFormula::Binary(c, a, b) => {
                Ok(Formula::Binary(*c, Arc::new(a.instantiate(subst)?), Arc::new(b.instantiate(subst)?)))
            }
        }
    }

    pub fn from_sexp(e: &Sexp) -> Result<MetaFormula, ParseError> {
        match e {
            Sexp::Sym(s, pos) => {
                if let Some(name) = s.strip_prefix('?') {
                    if name.is_empty() {
                        return Err(ParseError::Syntax { pos: *pos, msg: "empty formula-variable name".into() });
                    }
                    return Ok(MetaFormula::fvar(name));
                }
                match s.as_str() {
                    "zero" => Ok(MetaFormula::Const(Constant::Zero)),
                    "one" => Ok(MetaFormula::Const(Constant::One)),
                    "top" => Ok(MetaFormula::Const(Constant::Top)),
                    "bot" => Ok(MetaFormula::Const(Constant::Bot)),
                    _ if is_atom_name(s) => Ok(MetaFormula::atom(s)),
                    _ => Err(ParseError::Syntax { pos: *pos, msg: format!("invalid meta-formula symbol {s:?}") }),
                }
            }
            Sexp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(Sexp::as_sym)
                    .ok_or_else(|| ParseError::Syntax { pos: *pos, msg: "expected connective head".into() })?;
                let args = &items[1..];
                let unary = |c: UnaryConn| -> Result<MetaFormula, ParseError> {
                    if args.len() != 1 {
                        return Err(ParseError::ArityMismatch { pos: *pos, head: head.to_string(), expected: 1, got: args.len() });
                    }
                    Ok(MetaFormula::un(c, MetaFormula::from_sexp(&args[0])?))
                };
                let binary = |c: BinaryConn| -> Result<MetaFormula, ParseError> {
                    if args.len() != 2 {
                        return Err(ParseError::ArityMismatch { pos: *pos, head: head.to_string(), expected: 2, got: args.len() });
                    }
                    Ok(MetaFormula::bin(c, MetaFormula::from_sexp(&args[0])?, MetaFormula::from_sexp(&args[1])?))
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

impl fmt::Display for MetaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaFormula::Atom(a) => write!(f, "{a}"),
            MetaFormula::Const(c) => write!(f, "{}", c.name()),
            MetaFormula::FVar(v) => write!(f, "?{v}"),
            MetaFormula::Unary(c, a) => write!(f, "({} {})", c.name(), a),
            MetaFormula::Binary(c, a, b) => write!(f, "({} {} {})", c.name(), a, b),
        }
    }
}

/// A variable at the meta level: an object atom or a formula variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaVar {
    Atom(Arc<str>),
    FVar(Arc<str>),
}

/// One occurrence of a meta-multiset variable, optionally under a unary
/// connective (`□Γ`, `!Γ`), which instantiation applies elementwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CtxItem {
    pub var: Arc<str>,
    pub wrap: Option<UnaryConn>,
}

impl CtxItem {
    pub fn plain(name: impl AsRef<str>) -> CtxItem {
        CtxItem { var: Arc::from(name.as_ref()), wrap: None }
    }
    pub fn wrapped(name: impl AsRef<str>, c: UnaryConn) -> CtxItem {
        CtxItem { var: Arc::from(name.as_ref()), wrap: Some(c) }
    }
}

impl fmt::Display for CtxItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.wrap {
            None => write!(f, "${}", self.var),
            Some(c) => write!(f, "({} ${})", c.name(), self.var),
        }
    }
}

/// One side of a meta-sequent: meta-formulas plus context occurrences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MetaSide {
    pub formulas: Vec<MetaFormula>,
    pub contexts: Vec<CtxItem>,
}

impl MetaSide {
    pub fn new(formulas: Vec<MetaFormula>, contexts: Vec<CtxItem>) -> MetaSide {
        MetaSide { formulas, contexts }
    }

    pub fn instantiate(&self, subst: &Substitution) -> Result<FMultiset, InstantiateError> {
        let mut out = Vec::new();
        for mf in &self.formulas {
            out.push(mf.instantiate(subst)?);
        }
        let mut ms = FMultiset::from_vec(out);
        for ctx in &self.contexts {
            let bound = subst
                .context(&ctx.var)
                .ok_or_else(|| InstantiateError::MissingBinding { var: format!("${}", ctx.var) })?;
            let part = match ctx.wrap {
                None => bound.clone(),
                Some(c) => bound.wrap(c),
            };
            ms = ms.union(&part);
        }
        Ok(ms)
    }

    fn fmt_items(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.contexts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        for m in &self.formulas {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

/// A meta-sequent: the premises and conclusions of rule schemas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MetaSequent {
    pub ant: MetaSide,
    pub suc: MetaSide,
}

impl MetaSequent {
    pub fn new(ant: MetaSide, suc: MetaSide) -> MetaSequent {
        MetaSequent { ant, suc }
    }

    pub fn instantiate(&self, subst: &Substitution) -> Result<Sequent, InstantiateError> {
        Ok(Sequent { ant: self.ant.instantiate(subst)?, suc: self.suc.instantiate(subst)? })
    }

    /// All meta-variables: formula variables and context variables.
    pub fn fvars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for side in [&self.ant, &self.suc] {
            for mf in &side.formulas {
                for v in mf.vars() {
                    if let MetaVar::FVar(name) = v {
                        out.insert(name);
                    }
                }
            }
        }
        out
    }

    pub fn ctxvars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for side in [&self.ant, &self.suc] {
            for c in &side.contexts {
                out.insert(c.var.clone());
            }
        }
        out
    }

    pub fn from_sexp(e: &Sexp) -> Result<MetaSequent, ParseError> {
        let items = e.as_list().ok_or_else(|| ParseError::Syntax { pos: e.pos(), msg: "expected (mseq ...)".into() })?;
        if items.len() != 3 || items[0].as_sym() != Some("mseq") {
            return Err(ParseError::Syntax { pos: e.pos(), msg: "expected (mseq (ant ...) (suc ...))".into() });
        }
        let side = |e: &Sexp, tag: &str| -> Result<MetaSide, ParseError> {
            let items = e.as_list().ok_or_else(|| ParseError::Syntax { pos: e.pos(), msg: format!("expected ({tag} ...)") })?;
            if items.first().and_then(Sexp::as_sym) != Some(tag) {
                return Err(ParseError::Syntax { pos: e.pos(), msg: format!("expected ({tag} ...)") });
            }
            let mut side = MetaSide::default();
            for item in &items[1..] {
                match item {
                    Sexp::Sym(s, _) if s.starts_with('$') => {
                        side.contexts.push(CtxItem::plain(&s[1..]));
                    }
                    Sexp::List(sub, _)
                        if sub.len() == 2
                            && matches!(sub[0].as_sym(), Some("box") | Some("bang"))
                            && sub[1].as_sym().map(|s| s.starts_with('$')).unwrap_or(false) =>
                    {
                        let c = if sub[0].as_sym() == Some("box") { UnaryConn::Box } else { UnaryConn::Bang };
                        let name = sub[1].as_sym().unwrap();
                        side.contexts.push(CtxItem::wrapped(&name[1..], c));
                    }
                    _ => side.formulas.push(MetaFormula::from_sexp(item)?),
                }
            }
            Ok(side)
        };
        Ok(MetaSequent { ant: side(&items[1], "ant")?, suc: side(&items[2], "suc")? })
    }

    pub fn parse(text: &str) -> Result<MetaSequent, ParseError> {
        MetaSequent::from_sexp(&parse_one(text)?)
    }
}

impl fmt::Display for MetaSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(mseq (ant ")?;
        self.ant.fmt_items(f)?;
        write!(f, ") (suc ")?;
        self.suc.fmt_items(f)?;
        write!(f, "))")
    }
}

/// An explicit substitution: formula variables to formulas, context
/// variables to formula multisets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution {
    formulas: BTreeMap<Arc<str>, Formula>,
    contexts: BTreeMap<Arc<str>, FMultiset>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn bind_formula(mut self, var: impl AsRef<str>, f: Formula) -> Substitution {
        self.formulas.insert(Arc::from(var.as_ref()), f);
        self
    }

    pub fn bind_context(mut self, var: impl AsRef<str>, ms: FMultiset) -> Substitution {
        self.contexts.insert(Arc::from(var.as_ref()), ms);
        self
    }

    pub fn set_formula(&mut self, var: impl AsRef<str>, f: Formula) {
        self.formulas.insert(Arc::from(var.as_ref()), f);
    }

    pub fn set_context(&mut self, var: impl AsRef<str>, ms: FMultiset) {
        self.contexts.insert(Arc::from(var.as_ref()), ms);
    }

    pub fn formula(&self, var: &str) -> Option<&Formula> {
        self.formulas.get(var)
    }

    pub fn context(&self, var: &str) -> Option<&FMultiset> {
        self.contexts.get(var)
    }

    pub fn formula_bindings(&self) -> impl Iterator<Item = (&Arc<str>, &Formula)> {
        self.formulas.iter()
    }

    pub fn context_bindings(&self) -> impl Iterator<Item = (&Arc<str>, &FMultiset)> {
        self.contexts.iter()
    }
}

/// A rule schema with a name and a discipline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: String,
    pub premises: Vec<MetaSequent>,
    pub conclusion: MetaSequent,
    pub discipline: Discipline,
}

impl RuleSchema {
    pub fn new(name: impl Into<String>, premises: Vec<MetaSequent>, conclusion: MetaSequent, discipline: Discipline) -> RuleSchema {
        RuleSchema { name: name.into(), premises, conclusion, discipline }
    }

    pub fn fvars(&self) -> BTreeSet<Arc<str>> {
        let mut out = self.conclusion.fvars();
        for p in &self.premises {
            out.extend(p.fvars());
        }
        out
    }

    pub fn ctxvars(&self) -> BTreeSet<Arc<str>> {
        let mut out = self.conclusion.ctxvars();
        for p in &self.premises {
            out.extend(p.ctxvars());
        }
        out
    }

    /// Every context variable of a premise must occur in the conclusion.
    pub fn contexts_flow_downward(&self) -> bool {
        let concl = self.conclusion.ctxvars();
        self.premises.iter().all(|p| p.ctxvars().is_subset(&concl))
    }
}

/// Instantiate a rule schema, producing concrete premises and conclusion.
///
/// The substitution must be total on the schema's variables; in
/// single-conclusion discipline every produced sequent must have at most
/// one succedent formula.
pub fn instantiate(rule: &RuleSchema, subst: &Substitution) -> Result<(Vec<Sequent>, Sequent), InstantiateError> {
    let mut premises = Vec::with_capacity(rule.premises.len());
    for p in &rule.premises {
        premises.push(p.instantiate(subst)?);
    }
    let conclusion = rule.conclusion.instantiate(subst)?;
    if rule.discipline == Discipline::Single {
        for s in premises.iter().chain(std::iter::once(&conclusion)) {
            if !s.is_single_conclusion() {
                return Err(InstantiateError::DisciplineViolation {
                    rule: rule.name.clone(),
                    sequent: s.to_string(),
                });
            }
        }
    }
    Ok((premises, conclusion))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("missing binding for {var}")]
    MissingBinding { var: String },
    #[error("single-conclusion discipline violated by rule {rule}: {sequent}")]
    DisciplineViolation { rule: String, sequent: String },
}

// ---------------------------------------------------------------------
// Polarity
// ---------------------------------------------------------------------

/// Result of the positivity check for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Every occurrence lies outside all negation scopes and outside the
    /// precedent of every implication.
    PositiveOnly,
    /// Some occurrence is under a negation or in an implication
    /// precedent. The reading is literal: a doubled negation does not
    /// restore positivity.
    HasNonPositive,
    Absent,
}

/// Positivity of `var` in `mf`.
pub fn polarity(mf: &MetaFormula, var: &MetaVar) -> Polarity {
    let mut seen = false;
    let mut nonpos = false;
    fn walk(mf: &MetaFormula, var: &MetaVar, shielded: bool, seen: &mut bool, nonpos: &mut bool) {
        match mf {
            MetaFormula::Atom(a) => {
                if matches!(var, MetaVar::Atom(v) if v == a) {
                    *seen = true;
                    if shielded {
                        *nonpos = true;
                    }
                }
            }
            MetaFormula::FVar(x) => {
                if matches!(var, MetaVar::FVar(v) if v == x) {
                    *seen = true;
                    if shielded {
                        *nonpos = true;
                    }
                }
            }
            MetaFormula::Const(_) => {}
            MetaFormula::Unary(UnaryConn::Not, a) => walk(a, var, true, seen, nonpos),
            MetaFormula::Unary(_, a) => walk(a, var, shielded, seen, nonpos),
            MetaFormula::Binary(BinaryConn::Imp, a, b) => {
                walk(a, var, true, seen, nonpos);
                walk(b, var, shielded, seen, nonpos);
            }
            MetaFormula::Binary(_, a, b) => {
                walk(a, var, shielded, seen, nonpos);
                walk(b, var, shielded, seen, nonpos);
            }
        }
    }
    walk(mf, var, false, &mut seen, &mut nonpos);
    if !seen {
        Polarity::Absent
    } else if nonpos {
        Polarity::HasNonPositive
    } else {
        Polarity::PositiveOnly
    }
}

/// Positivity of an atom in an object formula.
pub fn formula_polarity(f: &Formula, atom: &str) -> Polarity {
    polarity(&MetaFormula::from_formula(f), &MetaVar::Atom(Arc::from(atom)))
}

/// A formula is syntactically monotone when every one of its atoms is
/// positive-only.
pub fn syntactically_monotone(f: &Formula) -> bool {
    f.vars().iter().all(|a| formula_polarity(f, a) == Polarity::PositiveOnly)
}

// ---------------------------------------------------------------------
// Rule classification
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalKind {
    K,
    D,
    RS4,
    LS4,
    Four,
    FourD,
    None,
}

impl ModalKind {
    pub fn is_semi_analytic(self) -> bool {
        matches!(self, ModalKind::K | ModalKind::D | ModalKind::RS4 | ModalKind::LS4)
    }
    pub fn is_modal(self) -> bool {
        !matches!(self, ModalKind::None)
    }
}

impl fmt::Display for ModalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModalKind::K => "K",
            ModalKind::D => "D",
            ModalKind::RS4 => "RS4",
            ModalKind::LS4 => "LS4",
            ModalKind::Four => "4",
            ModalKind::FourD => "4D",
            ModalKind::None => "none",
        };
        write!(f, "{s}")
    }
}

/// Flags produced by `classify_rule`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleClassification {
    pub occurrence_preserving: bool,
    pub left_semi_analytic: bool,
    pub right_semi_analytic: bool,
    pub context_sharing: bool,
    pub mc_left_semi_analytic: bool,
    pub mc_right_semi_analytic: bool,
    pub modal: ModalKind,
    pub focused_left: bool,
    pub focused_right: bool,
    pub ppf: bool,
    pub mpf: bool,
}

impl RuleClassification {
    fn none() -> RuleClassification {
        RuleClassification {
            occurrence_preserving: false,
            left_semi_analytic: false,
            right_semi_analytic: false,
            context_sharing: false,
            mc_left_semi_analytic: false,
            mc_right_semi_analytic: false,
            modal: ModalKind::None,
            focused_left: false,
            focused_right: false,
            ppf: false,
            mpf: false,
        }
    }

    pub fn semi_analytic_single(&self) -> bool {
        self.left_semi_analytic || self.right_semi_analytic || self.modal.is_semi_analytic()
    }

    pub fn semi_analytic_multi(&self) -> bool {
        self.mc_left_semi_analytic || self.mc_right_semi_analytic || self.modal.is_semi_analytic()
    }

    pub fn focused(&self) -> bool {
        self.focused_left || self.focused_right
    }
}

/// Block structure recovered by matching: which premises belong to which
/// context block, so interpolant extraction never re-infers grouping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleShapes {
    /// Left single-conclusion shape: psi blocks (meta succedents) and phi
    /// blocks (context succedents).
    pub sc_left: Option<LeftShape>,
    pub sc_right: Option<RightShape>,
    pub ctx_sharing: Option<CsShape>,
    pub mc_left: Option<McShape>,
    pub mc_right: Option<McShape>,
    pub modal: Option<ModalShape>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiBlock {
    pub ctx: Arc<str>,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBlock {
    pub ctx: Arc<str>,
    pub delta: Arc<str>,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftShape {
    pub principal: MetaFormula,
    pub psi_blocks: Vec<PsiBlock>,
    pub phi_blocks: Vec<PhiBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightShape {
    pub principal: MetaFormula,
    pub blocks: Vec<PsiBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsBlock {
    pub ctx: Arc<str>,
    pub delta: Arc<str>,
    pub s_premises: Vec<usize>,
    pub r_premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsShape {
    pub principal: MetaFormula,
    pub blocks: Vec<CsBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McBlock {
    pub ctx: Arc<str>,
    pub delta: Arc<str>,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McShape {
    pub principal: MetaFormula,
    pub blocks: Vec<McBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalShape {
    pub kind: ModalKind,
    pub wrapper: UnaryConn,
    pub ctx: Arc<str>,
    /// Succedent formula variable for K / RS4 / 4 (none for D / 4D).
    pub phi: Option<Arc<str>>,
    /// Context and principal variable for LS4.
    pub ls4_delta: Option<Arc<str>>,
    pub ls4_phi: Option<Arc<str>>,
}

fn premise_meta_vars(rule: &RuleSchema) -> BTreeSet<MetaVar> {
    let mut out = BTreeSet::new();
    for p in &rule.premises {
        for side in [&p.ant, &p.suc] {
            for mf in &side.formulas {
                out.extend(mf.vars());
            }
        }
    }
    out
}

/// The occurrence-preserving condition: every meta-variable or atom in a
/// premise meta-formula occurs in some conclusion meta-formula.
pub fn check_occurrence_preserving(rule: &RuleSchema) -> bool {
    let mut concl_vars = BTreeSet::new();
    for side in [&rule.conclusion.ant, &rule.conclusion.suc] {
        for mf in &side.formulas {
            concl_vars.extend(mf.vars());
        }
    }
    premise_meta_vars(rule).is_subset(&concl_vars)
}

fn all_plain_distinct(ctxs: &[CtxItem]) -> Option<Vec<Arc<str>>> {
    let mut names = Vec::new();
    for c in ctxs {
        if c.wrap.is_some() || names.contains(&c.var) {
            return None;
        }
        names.push(c.var.clone());
    }
    Some(names)
}

fn match_modal(rule: &RuleSchema) -> Option<ModalShape> {
    let c = &rule.conclusion;
    // LS4 (`Γ, φ ⇒ Δ  ⊢  Γ, □φ ⇒ Δ`), also the left exponential rule.
    if rule.premises.len() == 1 {
        let p = &rule.premises[0];
        if let (Some(cg), Some(cd)) = (all_plain_distinct(&c.ant.contexts), all_plain_distinct(&c.suc.contexts)) {
            if cg.len() == 1
                && cd.len() == 1
                && c.suc.formulas.is_empty()
                && c.ant.formulas.len() == 1
                && p.ant.contexts == vec![CtxItem::plain(&*cg[0])]
                && p.suc.contexts == vec![CtxItem::plain(&*cd[0])]
                && p.suc.formulas.is_empty()
                && p.ant.formulas.len() == 1
            {
                if let MetaFormula::Unary(w, inner) = &c.ant.formulas[0] {
                    if matches!(w, UnaryConn::Box | UnaryConn::Bang) && **inner == p.ant.formulas[0] {
                        if let MetaFormula::FVar(v) = &p.ant.formulas[0] {
                            return Some(ModalShape {
                                kind: ModalKind::LS4,
                                wrapper: *w,
                                ctx: cg[0].clone(),
                                phi: None,
                                ls4_delta: Some(cd[0].clone()),
                                ls4_phi: Some(v.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    // The boxed-conclusion shapes: K, D, RS4, 4, 4D.
    if rule.premises.len() != 1 {
        return None;
    }
    let p = &rule.premises[0];
    if !c.ant.formulas.is_empty() || !c.suc.contexts.is_empty() || c.ant.contexts.len() != 1 {
        return None;
    }
    let ctx = &c.ant.contexts[0];
    let w = ctx.wrap?;
    if !matches!(w, UnaryConn::Box | UnaryConn::Bang) {
        return None;
    }
    let phi = match c.suc.formulas.as_slice() {
        [] => None,
        [MetaFormula::Unary(w2, inner)] if *w2 == w => match &**inner {
            MetaFormula::FVar(v) => Some(v.clone()),
            _ => return None,
        },
        _ => return None,
    };
    if !p.suc.contexts.is_empty() {
        return None;
    }
    let premise_suc_matches = match (&phi, p.suc.formulas.as_slice()) {
        (None, []) => true,
        (Some(v), [MetaFormula::FVar(v2)]) => v == v2,
        _ => false,
    };
    if !premise_suc_matches {
        return None;
    }
    if !p.ant.formulas.is_empty() {
        return None;
    }
    let kind = match p.ant.contexts.as_slice() {
        // K (`Γ ⇒ φ`) or D (`Γ ⇒`).
        [one] if one.var == ctx.var && one.wrap.is_none() => {
            if phi.is_some() {
                ModalKind::K
            } else {
                ModalKind::D
            }
        }
        // RS4 (`□Γ ⇒ φ`); only counts with a succedent formula.
        [one] if one.var == ctx.var && one.wrap == Some(w) && phi.is_some() => ModalKind::RS4,
        // 4 (`□Γ, Γ ⇒ φ`) and 4D (`□Γ, Γ ⇒`).
        [a, b] => {
            let vars_ok = a.var == ctx.var && b.var == ctx.var;
            let wraps = (a.wrap, b.wrap);
            let wraps_ok = wraps == (Some(w), None) || wraps == (None, Some(w));
            if vars_ok && wraps_ok {
                if phi.is_some() {
                    ModalKind::Four
                } else {
                    ModalKind::FourD
                }
            } else {
                return None;
            }
        }
        _ => return None,
    };
    Some(ModalShape { kind, wrapper: w, ctx: ctx.var.clone(), phi, ls4_delta: None, ls4_phi: None })
}

struct PremiseView<'a> {
    ant_ctx: Option<&'a CtxItem>,
    ant_metas: &'a [MetaFormula],
    suc_ctx: Option<&'a CtxItem>,
    suc_metas: &'a [MetaFormula],
}

fn view_premise(p: &MetaSequent) -> Option<PremiseView<'_>> {
    let ant_ctx = match p.ant.contexts.as_slice() {
        [] => None,
        [one] => Some(one),
        _ => return None,
    };
    let suc_ctx = match p.suc.contexts.as_slice() {
        [] => None,
        [one] => Some(one),
        _ => return None,
    };
    Some(PremiseView { ant_ctx, ant_metas: &p.ant.formulas, suc_ctx, suc_metas: &p.suc.formulas })
}

fn match_sc_left(rule: &RuleSchema) -> Option<LeftShape> {
    let c = &rule.conclusion;
    let principal = match c.ant.formulas.as_slice() {
        [one] => one.clone(),
        _ => return None,
    };
    if !c.suc.formulas.is_empty() {
        return None;
    }
    let ant_vars = all_plain_distinct(&c.ant.contexts)?;
    let suc_vars = all_plain_distinct(&c.suc.contexts)?;
    if suc_vars.is_empty() {
        // A left rule needs at least one context block on the right.
        return None;
    }
    let mut dup_check: BTreeSet<&Arc<str>> = ant_vars.iter().collect();
    dup_check.extend(suc_vars.iter());
    if dup_check.len() != ant_vars.len() + suc_vars.len() {
        return None;
    }

    let mut psi: BTreeMap<Arc<str>, Vec<usize>> = BTreeMap::new();
    let mut phi: BTreeMap<Arc<str>, (Arc<str>, Vec<usize>)> = BTreeMap::new();
    for (idx, p) in rule.premises.iter().enumerate() {
        let v = view_premise(p)?;
        let g = v.ant_ctx?;
        if g.wrap.is_some() || !ant_vars.contains(&g.var) {
            return None;
        }
        match (v.suc_ctx, v.suc_metas.is_empty()) {
            (Some(d), true) => {
                if d.wrap.is_some() || !suc_vars.contains(&d.var) {
                    return None;
                }
                let entry = phi.entry(g.var.clone()).or_insert_with(|| (d.var.clone(), Vec::new()));
                if entry.0 != d.var {
                    return None;
                }
                entry.1.push(idx);
            }
            (None, _) => {
                psi.entry(g.var.clone()).or_default().push(idx);
            }
            (Some(_), false) => return None,
        }
    }
    // Psi and phi context variables must be disjoint; every conclusion
    // context must be bound by some premise.
    if psi.keys().any(|k| phi.contains_key(k)) {
        return None;
    }
    let used_d: BTreeSet<&Arc<str>> = phi.values().map(|(d, _)| d).collect();
    if !ant_vars.iter().all(|g| psi.contains_key(g) || phi.contains_key(g)) {
        return None;
    }
    if !suc_vars.iter().all(|d| used_d.contains(d)) {
        return None;
    }
    if phi.is_empty() {
        return None;
    }
    // Blocks ordered by first premise occurrence.
    let mut psi_blocks: Vec<PsiBlock> =
        psi.into_iter().map(|(ctx, premises)| PsiBlock { ctx, premises }).collect();
    psi_blocks.sort_by_key(|b| b.premises[0]);
    let mut phi_blocks: Vec<PhiBlock> =
        phi.into_iter().map(|(ctx, (delta, premises))| PhiBlock { ctx, delta, premises }).collect();
    phi_blocks.sort_by_key(|b| b.premises[0]);
    Some(LeftShape { principal, psi_blocks, phi_blocks })
}

fn match_sc_right(rule: &RuleSchema) -> Option<RightShape> {
    let c = &rule.conclusion;
    let principal = match c.suc.formulas.as_slice() {
        [one] => one.clone(),
        _ => return None,
    };
    if !c.ant.formulas.is_empty() || !c.suc.contexts.is_empty() {
        return None;
    }
    let ant_vars = all_plain_distinct(&c.ant.contexts)?;
    let mut blocks: BTreeMap<Arc<str>, Vec<usize>> = BTreeMap::new();
    for (idx, p) in rule.premises.iter().enumerate() {
        let v = view_premise(p)?;
        let g = v.ant_ctx?;
        if g.wrap.is_some() || !ant_vars.contains(&g.var) || v.suc_ctx.is_some() {
            return None;
        }
        blocks.entry(g.var.clone()).or_default().push(idx);
    }
    if !ant_vars.iter().all(|g| blocks.contains_key(g)) || blocks.is_empty() {
        return None;
    }
    let mut out: Vec<PsiBlock> = blocks.into_iter().map(|(ctx, premises)| PsiBlock { ctx, premises }).collect();
    out.sort_by_key(|b| b.premises[0]);
    Some(RightShape { principal, blocks: out })
}

fn match_cs(rule: &RuleSchema) -> Option<CsShape> {
    let c = &rule.conclusion;
    let principal = match c.ant.formulas.as_slice() {
        [one] => one.clone(),
        _ => return None,
    };
    if !c.suc.formulas.is_empty() {
        return None;
    }
    let ant_vars = all_plain_distinct(&c.ant.contexts)?;
    let suc_vars = all_plain_distinct(&c.suc.contexts)?;
    if ant_vars.len() != suc_vars.len() || ant_vars.is_empty() {
        return None;
    }
    let mut s_map: BTreeMap<Arc<str>, Vec<usize>> = BTreeMap::new();
    let mut r_map: BTreeMap<Arc<str>, (Arc<str>, Vec<usize>)> = BTreeMap::new();
    for (idx, p) in rule.premises.iter().enumerate() {
        let v = view_premise(p)?;
        let g = v.ant_ctx?;
        if g.wrap.is_some() || !ant_vars.contains(&g.var) {
            return None;
        }
        match (v.suc_ctx, v.suc_metas.is_empty()) {
            (Some(d), true) => {
                if d.wrap.is_some() || !suc_vars.contains(&d.var) {
                    return None;
                }
                let entry = r_map.entry(g.var.clone()).or_insert_with(|| (d.var.clone(), Vec::new()));
                if entry.0 != d.var {
                    return None;
                }
                entry.1.push(idx);
            }
            (None, _) => s_map.entry(g.var.clone()).or_default().push(idx),
            (Some(_), false) => return None,
        }
    }
    // Every block needs its succedent context bound.
    if !ant_vars.iter().all(|g| r_map.contains_key(g)) {
        return None;
    }
    // Genuine sharing: some block carries premises of both types.
    if !s_map.keys().any(|g| r_map.contains_key(g)) {
        return None;
    }
    if s_map.keys().any(|g| !r_map.contains_key(g)) {
        return None;
    }
    let mut blocks: Vec<CsBlock> = r_map
        .into_iter()
        .map(|(ctx, (delta, r_premises))| {
            let s_premises = s_map.get(&ctx).cloned().unwrap_or_default();
            CsBlock { ctx, delta, s_premises, r_premises }
        })
        .collect();
    blocks.sort_by_key(|b| b.r_premises[0]);
    Some(CsShape { principal, blocks })
}

fn match_mc(rule: &RuleSchema, left: bool) -> Option<McShape> {
    let c = &rule.conclusion;
    let principal = if left {
        match c.ant.formulas.as_slice() {
            [one] => one.clone(),
            _ => return None,
        }
    } else {
        match c.suc.formulas.as_slice() {
            [one] => one.clone(),
            _ => return None,
        }
    };
    if left && !c.suc.formulas.is_empty() {
        return None;
    }
    if !left && !c.ant.formulas.is_empty() {
        return None;
    }
    let ant_vars = all_plain_distinct(&c.ant.contexts)?;
    let suc_vars = all_plain_distinct(&c.suc.contexts)?;
    if ant_vars.len() != suc_vars.len() || ant_vars.is_empty() {
        return None;
    }
    let mut map: BTreeMap<Arc<str>, (Arc<str>, Vec<usize>)> = BTreeMap::new();
    for (idx, p) in rule.premises.iter().enumerate() {
        let v = view_premise(p)?;
        let g = v.ant_ctx?;
        let d = v.suc_ctx?;
        if g.wrap.is_some() || d.wrap.is_some() || !ant_vars.contains(&g.var) || !suc_vars.contains(&d.var) {
            return None;
        }
        let entry = map.entry(g.var.clone()).or_insert_with(|| (d.var.clone(), Vec::new()));
        if entry.0 != d.var {
            return None;
        }
        entry.1.push(idx);
    }
    if !ant_vars.iter().all(|g| map.contains_key(g)) {
        return None;
    }
    let used_d: BTreeSet<&Arc<str>> = map.values().map(|(d, _)| d).collect();
    if !suc_vars.iter().all(|d| used_d.contains(d)) {
        return None;
    }
    let mut blocks: Vec<McBlock> =
        map.into_iter().map(|(ctx, (delta, premises))| McBlock { ctx, delta, premises }).collect();
    blocks.sort_by_key(|b| b.premises[0]);
    Some(McShape { principal, blocks })
}

/// The sufficient syntactic criterion for PPF / MPF: for every variable
/// positive-only in the principal formula, every premise antecedent
/// meta-formula must keep it positive-only (or not mention it).
fn polarity_preserving(principal: &MetaFormula, premise_ant_metas: &[&MetaFormula]) -> bool {
    for var in principal.vars() {
        if polarity(principal, &var) != Polarity::PositiveOnly {
            continue;
        }
        for mf in premise_ant_metas {
            if polarity(mf, &var) == Polarity::HasNonPositive {
                return false;
            }
        }
    }
    true
}

/// Classify a rule schema against every template.
pub fn classify_rule(rule: &RuleSchema) -> (RuleClassification, RuleShapes) {
    let mut cls = RuleClassification::none();
    cls.occurrence_preserving = check_occurrence_preserving(rule);

    let modal = match_modal(rule);
    if let Some(m) = &modal {
        cls.modal = m.kind;
    }

    let mut shapes = RuleShapes { sc_left: None, sc_right: None, ctx_sharing: None, mc_left: None, mc_right: None, modal };

    if cls.occurrence_preserving && !rule.premises.is_empty() {
        shapes.sc_left = match_sc_left(rule);
        shapes.sc_right = match_sc_right(rule);
        shapes.ctx_sharing = match_cs(rule);
        shapes.mc_left = match_mc(rule, true);
        shapes.mc_right = match_mc(rule, false);
    }

    cls.left_semi_analytic = shapes.sc_left.is_some();
    cls.right_semi_analytic = shapes.sc_right.is_some();
    cls.context_sharing = shapes.ctx_sharing.is_some();
    cls.mc_left_semi_analytic = shapes.mc_left.is_some();
    cls.mc_right_semi_analytic = shapes.mc_right.is_some();

    if let Some(shape) = &shapes.mc_left {
        let focused = rule.premises.iter().all(|p| p.suc.formulas.is_empty());
        cls.focused_left = focused;
        if focused {
            let metas: Vec<&MetaFormula> = rule.premises.iter().flat_map(|p| p.ant.formulas.iter()).collect();
            let preserving = polarity_preserving(&shape.principal, &metas);
            cls.ppf = preserving;
            cls.mpf = preserving;
        }
    }
    if let Some(shape) = &shapes.mc_right {
        let focused = rule.premises.iter().all(|p| p.ant.formulas.is_empty());
        cls.focused_right = focused;
        if focused {
            let metas: Vec<&MetaFormula> = Vec::new();
            let preserving = polarity_preserving(&shape.principal, &metas);
            cls.ppf = preserving;
            cls.mpf = preserving;
        }
    }

    (cls, shapes)
}

// ---------------------------------------------------------------------
// Axiom classification
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Identity,
    ContextFreeRight,
    ContextFreeLeft,
    ContextualLeft,
    ContextualRight,
    None,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomKind::Identity => "identity",
            AxiomKind::ContextFreeRight => "cf-right",
            AxiomKind::ContextFreeLeft => "cf-left",
            AxiomKind::ContextualLeft => "ctx-left",
            AxiomKind::ContextualRight => "ctx-right",
            AxiomKind::None => "none",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomClassification {
    pub kind: AxiomKind,
    pub focused: bool,
    pub strongly_focused: bool,
}

fn pairwise_equal_vars(metas: &[MetaFormula]) -> bool {
    let mut iter = metas.iter();
    let first = match iter.next() {
        Some(m) => m.vars(),
        None => return true,
    };
    iter.all(|m| m.vars() == first)
}

fn no_vars(metas: &[MetaFormula]) -> bool {
    metas.iter().all(|m| m.vars().is_empty())
}

/// Classify an axiom schema against the five focused-axiom forms.
pub fn classify_axiom(a: &MetaSequent) -> AxiomClassification {
    let ant_ctx = all_plain_distinct(&a.ant.contexts);
    let suc_ctx = all_plain_distinct(&a.suc.contexts);
    let (ant_ctx, suc_ctx) = match (ant_ctx, suc_ctx) {
        (Some(x), Some(y)) => (x, y),
        _ => return AxiomClassification { kind: AxiomKind::None, focused: false, strongly_focused: false },
    };
    let ant = &a.ant.formulas;
    let suc = &a.suc.formulas;

    // (1) Identity: `φ ⇒ φ` for a single formula variable.
    if ant_ctx.is_empty() && suc_ctx.is_empty() && ant.len() == 1 && suc.len() == 1 && ant[0] == suc[0] {
        if matches!(ant[0], MetaFormula::FVar(_)) {
            return AxiomClassification { kind: AxiomKind::Identity, focused: true, strongly_focused: true };
        }
    }
    // (2) Context-free right: `⇒ ᾱ`.
    if ant_ctx.is_empty() && suc_ctx.is_empty() && ant.is_empty() && !suc.is_empty() {
        if pairwise_equal_vars(suc) {
            return AxiomClassification {
                kind: AxiomKind::ContextFreeRight,
                focused: true,
                strongly_focused: no_vars(suc),
            };
        }
    }
    // (3) Context-free left: `β̄ ⇒`.
    if ant_ctx.is_empty() && suc_ctx.is_empty() && suc.is_empty() && !ant.is_empty() {
        if pairwise_equal_vars(ant) {
            return AxiomClassification { kind: AxiomKind::ContextFreeLeft, focused: true, strongly_focused: true };
        }
    }
    // (4) Contextual left: `Γ, φ̄ ⇒ Δ`.
    if ant_ctx.len() == 1 && suc_ctx.len() == 1 && suc.is_empty() && !ant.is_empty() {
        if pairwise_equal_vars(ant) {
            return AxiomClassification { kind: AxiomKind::ContextualLeft, focused: true, strongly_focused: true };
        }
    }
    // (5) Contextual right: `Γ ⇒ φ̄, Δ`.
    if ant_ctx.len() == 1 && suc_ctx.len() == 1 && ant.is_empty() && !suc.is_empty() {
        if pairwise_equal_vars(suc) {
            return AxiomClassification {
                kind: AxiomKind::ContextualRight,
                focused: true,
                strongly_focused: no_vars(suc),
            };
        }
    }
    AxiomClassification { kind: AxiomKind::None, focused: false, strongly_focused: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(text: &str) -> MetaSequent {
        MetaSequent::parse(text).unwrap()
    }

    fn sc_rule(name: &str, premises: &[&str], conclusion: &str) -> RuleSchema {
        RuleSchema::new(name, premises.iter().map(|p| ms(p)).collect(), ms(conclusion), Discipline::Single)
    }

    fn mc_rule(name: &str, premises: &[&str], conclusion: &str) -> RuleSchema {
        RuleSchema::new(name, premises.iter().map(|p| ms(p)).collect(), ms(conclusion), Discipline::Multi)
    }

    #[test]
    fn instantiate_land() {
        let r = sc_rule(
            "and-l1",
            &["(mseq (ant $Gamma ?phi) (suc $Delta))"],
            "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))",
        );
        let subst = Substitution::new()
            .bind_formula("phi", Formula::atom("p"))
            .bind_formula("psi", Formula::atom("q"))
            .bind_context("Gamma", FMultiset::new())
            .bind_context("Delta", FMultiset::singleton(Formula::atom("p")));
        let (prem, concl) = instantiate(&r, &subst).unwrap();
        assert_eq!(prem, vec![Sequent::parse("(seq (p) (p))").unwrap()]);
        assert_eq!(concl, Sequent::parse("(seq ((and p q)) (p))").unwrap());
    }

    #[test]
    fn instantiate_missing_binding() {
        let r = sc_rule("and-l1", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))");
        let subst = Substitution::new()
            .bind_formula("phi", Formula::atom("p"))
            .bind_context("Gamma", FMultiset::new())
            .bind_context("Delta", FMultiset::new());
        assert!(matches!(instantiate(&r, &subst), Err(InstantiateError::MissingBinding { .. })));
    }

    #[test]
    fn instantiate_discipline_violation() {
        let r = sc_rule("weak-r", &["(mseq (ant $Gamma) (suc))"], "(mseq (ant $Gamma) (suc ?phi $Delta))");
        let subst = Substitution::new()
            .bind_formula("phi", Formula::atom("p"))
            .bind_context("Gamma", FMultiset::new())
            .bind_context("Delta", FMultiset::singleton(Formula::atom("q")));
        assert!(matches!(instantiate(&r, &subst), Err(InstantiateError::DisciplineViolation { .. })));
    }

    #[test]
    fn modal_k_convention_box_empty() {
        let r = sc_rule("box-k", &["(mseq (ant $Gamma) (suc ?phi))"], "(mseq (ant (box $Gamma)) (suc (box ?phi)))");
        let subst = Substitution::new().bind_formula("phi", Formula::atom("p")).bind_context("Gamma", FMultiset::new());
        let (prem, concl) = instantiate(&r, &subst).unwrap();
        assert_eq!(prem[0], Sequent::parse("(seq () (p))").unwrap());
        assert_eq!(concl, Sequent::parse("(seq () ((box p)))").unwrap());
    }

    #[test]
    fn polarity_examples() {
        let p = MetaVar::Atom(Arc::from("p"));
        let f = MetaFormula::from_formula(&Formula::parse("(and p (or q p))").unwrap());
        assert_eq!(polarity(&f, &p), Polarity::PositiveOnly);
        let f = MetaFormula::from_formula(&Formula::parse("(imp p q)").unwrap());
        assert_eq!(polarity(&f, &p), Polarity::HasNonPositive);
        let f = MetaFormula::from_formula(&Formula::parse("(not (not p))").unwrap());
        assert_eq!(polarity(&f, &p), Polarity::HasNonPositive);
        let f = MetaFormula::from_formula(&Formula::parse("(or q r)").unwrap());
        assert_eq!(polarity(&f, &p), Polarity::Absent);
    }

    #[test]
    fn classify_cut_not_semi_analytic() {
        let cut = mc_rule(
            "cut",
            &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Gamma ?phi) (suc $Delta))"],
            "(mseq (ant $Gamma) (suc $Delta))",
        );
        let (cls, _) = classify_rule(&cut);
        assert!(!cls.occurrence_preserving);
        assert!(!cls.semi_analytic_single() && !cls.semi_analytic_multi());
    }

    #[test]
    fn classify_weakening_vacuous_occurrence() {
        let lw = sc_rule("weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma ?phi) (suc $Delta))");
        let (cls, _) = classify_rule(&lw);
        assert!(cls.occurrence_preserving);
        assert!(cls.left_semi_analytic);
    }

    #[test]
    fn classify_dyckhoff_context_sharing() {
        let dyck = sc_rule(
            "dyckhoff-impimp-l",
            &[
                "(mseq (ant $Gamma (imp ?psi ?gam)) (suc (imp ?phi ?psi)))",
                "(mseq (ant $Gamma ?gam) (suc $Delta))",
            ],
            "(mseq (ant $Gamma (imp (imp ?phi ?psi) ?gam)) (suc $Delta))",
        );
        let (cls, shapes) = classify_rule(&dyck);
        assert!(cls.context_sharing);
        assert!(!cls.left_semi_analytic);
        let cs = shapes.ctx_sharing.unwrap();
        assert_eq!(cs.blocks.len(), 1);
        assert_eq!(cs.blocks[0].s_premises, vec![0]);
        assert_eq!(cs.blocks[0].r_premises, vec![1]);
    }

    #[test]
    fn classify_sc_rimp_right_but_not_focused() {
        let rimp = sc_rule("imp-r", &["(mseq (ant $Gamma ?phi) (suc ?psi))"], "(mseq (ant $Gamma) (suc (imp ?phi ?psi)))");
        let (cls, _) = classify_rule(&rimp);
        assert!(cls.right_semi_analytic);
        assert!(!cls.focused_right && !cls.focused_left);
    }

    #[test]
    fn classify_mc_land_focused_ppf() {
        let land = mc_rule("and-l1", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))");
        let (cls, _) = classify_rule(&land);
        assert!(cls.mc_left_semi_analytic && cls.focused_left && cls.ppf && cls.mpf);
    }

    #[test]
    fn classify_mc_limp_focused_via_negation() {
        // The two-premise left implication rule with a negated premise.
        let limp = mc_rule(
            "imp-l",
            &["(mseq (ant $Gamma1 (not ?phi)) (suc $Delta1))", "(mseq (ant $Gamma2 ?psi) (suc $Delta2))"],
            "(mseq (ant $Gamma1 $Gamma2 (imp ?phi ?psi)) (suc $Delta1 $Delta2))",
        );
        let (cls, shapes) = classify_rule(&limp);
        assert!(cls.focused_left && cls.ppf && cls.mpf);
        assert_eq!(shapes.mc_left.unwrap().blocks.len(), 2);
    }

    #[test]
    fn classification_invariant_under_renaming_and_reordering() {
        let a = mc_rule(
            "fuse-r",
            &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Sigma) (suc ?psi $Lambda))"],
            "(mseq (ant $Gamma $Sigma) (suc (fuse ?phi ?psi) $Delta $Lambda))",
        );
        let b = mc_rule(
            "fuse-r",
            &["(mseq (ant $C2) (suc ?y $D2))", "(mseq (ant $C1) (suc ?x $D1))"],
            "(mseq (ant $C1 $C2) (suc (fuse ?x ?y) $D1 $D2))",
        );
        let (ca, _) = classify_rule(&a);
        let (cb, _) = classify_rule(&b);
        assert_eq!(ca, cb);
    }

    #[test]
    fn classify_axiom_examples() {
        let id = classify_axiom(&ms("(mseq (ant ?phi) (suc ?phi))"));
        assert_eq!(id.kind, AxiomKind::Identity);
        assert!(id.focused && id.strongly_focused);

        let negr = classify_axiom(&ms("(mseq (ant) (suc ?phi (not ?phi)))"));
        assert_eq!(negr.kind, AxiomKind::ContextFreeRight);
        assert!(negr.focused && !negr.strongly_focused);

        let negtop = classify_axiom(&ms("(mseq (ant $Gamma (not top)) (suc $Delta))"));
        assert_eq!(negtop.kind, AxiomKind::ContextualLeft);
        assert!(negtop.focused && negtop.strongly_focused);

        let negl = classify_axiom(&ms("(mseq (ant ?phi (not ?phi)) (suc))"));
        assert_eq!(negl.kind, AxiomKind::ContextFreeLeft);
        assert!(negl.strongly_focused);

        let lkax = classify_axiom(&ms("(mseq (ant $Gamma ?phi) (suc ?phi $Delta))"));
        assert_eq!(lkax.kind, AxiomKind::None);
        assert!(!lkax.focused);
    }

    #[test]
    fn modal_shapes() {
        let k = sc_rule("box-k", &["(mseq (ant $Gamma) (suc ?phi))"], "(mseq (ant (box $Gamma)) (suc (box ?phi)))");
        assert_eq!(classify_rule(&k).0.modal, ModalKind::K);
        let d = sc_rule("box-d", &["(mseq (ant $Gamma) (suc))"], "(mseq (ant (box $Gamma)) (suc))");
        assert_eq!(classify_rule(&d).0.modal, ModalKind::D);
        let rs4 = sc_rule("bang-r", &["(mseq (ant (bang $Gamma)) (suc ?phi))"], "(mseq (ant (bang $Gamma)) (suc (bang ?phi)))");
        assert_eq!(classify_rule(&rs4).0.modal, ModalKind::RS4);
        let ls4 = sc_rule("box-ls4", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (box ?phi)) (suc $Delta))");
        let (cls, _) = classify_rule(&ls4);
        assert_eq!(cls.modal, ModalKind::LS4);
        assert!(cls.left_semi_analytic);
        let four = sc_rule("box-4", &["(mseq (ant (box $Gamma) $Gamma) (suc ?phi))"], "(mseq (ant (box $Gamma)) (suc (box ?phi)))");
        let (cls, _) = classify_rule(&four);
        assert_eq!(cls.modal, ModalKind::Four);
        assert!(!cls.semi_analytic_single());
    }
}
