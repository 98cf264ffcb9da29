//! Built-in calculi, the user-calculus loader, and calculus validation.
//!
//! A calculus is a named set of axiom schemas and rule schemas over a
//! language, with a discipline (single- or multi-conclusion), a base
//! tag naming the substructural core its interpolation witnesses may
//! draw on, and a list of admissible extra rules (weakening and friends)
//! that proofs and witnesses may cite by name.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::schema::{
    classify_axiom, classify_rule, AxiomClassification, Discipline, MetaSequent, RuleClassification, RuleSchema,
    RuleShapes,
};
use crate::schema::ModalKind;
use crate::sexp::{parse_one, Sexp};
use crate::syntax::{BinaryConn, Language, ParseError, UnaryConn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseTag {
    FLeMinus,
    FLe,
    CFLeMinus,
    CFLe,
    Mall,
}

impl BaseTag {
    pub fn name(self) -> &'static str {
        match self {
            BaseTag::FLeMinus => "FLe-",
            BaseTag::FLe => "FLe",
            BaseTag::CFLeMinus => "CFLe-",
            BaseTag::CFLe => "CFLe",
            BaseTag::Mall => "MALL",
        }
    }

    pub fn parse(s: &str) -> Option<BaseTag> {
        match s {
            "FLe-" => Some(BaseTag::FLeMinus),
            "FLe" => Some(BaseTag::FLe),
            "CFLe-" => Some(BaseTag::CFLeMinus),
            "CFLe" => Some(BaseTag::CFLe),
            "MALL" => Some(BaseTag::Mall),
            _ => None,
        }
    }

    pub fn discipline(self) -> Discipline {
        match self {
            BaseTag::FLeMinus | BaseTag::FLe => Discipline::Single,
            _ => Discipline::Multi,
        }
    }

    pub fn has_implication(self) -> bool {
        !matches!(self, BaseTag::Mall)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomSchema {
    pub name: String,
    pub schema: MetaSequent,
    pub classification: AxiomClassification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedRule {
    pub schema: RuleSchema,
    pub classification: RuleClassification,
    pub shapes: RuleShapes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calculus {
    pub name: String,
    pub language: Language,
    pub discipline: Discipline,
    pub base: BaseTag,
    pub axioms: Vec<AxiomSchema>,
    pub rules: Vec<ClassifiedRule>,
    pub admissible: Vec<String>,
}

impl Calculus {
    pub fn axiom(&self, name: &str) -> Option<&AxiomSchema> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn rule(&self, name: &str) -> Option<&ClassifiedRule> {
        self.rules.iter().find(|r| r.schema.name == name)
    }

    /// Resolve a rule name for checking: the calculus' own rules first,
    /// then its admissible extras.
    pub fn resolve_rule(&self, name: &str) -> Option<ClassifiedRule> {
        if let Some(r) = self.rule(name) {
            return Some(r.clone());
        }
        if self.admissible.iter().any(|a| a == name) {
            if let Some(schema) = extra_rule(name, self.discipline) {
                let (classification, shapes) = classify_rule(&schema);
                return Some(ClassifiedRule { schema, classification, shapes });
            }
        }
        None
    }

    pub fn names(&self) -> BTreeSet<&str> {
        self.axioms.iter().map(|a| a.name.as_str()).chain(self.rules.iter().map(|r| r.schema.name.as_str())).collect()
    }

    /// The calculus extended by its base bundle and admissible extras;
    /// interpolation witnesses are checked against this.
    pub fn witness_calculus(&self) -> Calculus {
        let mut out = self.clone();
        out.name = format!("{}+base", self.name);
        let (axioms, rules) = base_bundle(self.base);
        for a in axioms {
            if out.axiom(&a.name).is_none() {
                out.axioms.push(a);
            }
        }
        for r in rules {
            if out.rule(&r.schema.name).is_none() {
                out.rules.push(r);
            }
        }
        for name in &self.admissible {
            if out.rule(name).is_none() {
                if let Some(schema) = extra_rule(name, self.discipline) {
                    let (classification, shapes) = classify_rule(&schema);
                    out.rules.push(ClassifiedRule { schema, classification, shapes });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), LoadError> {
        let mut seen = BTreeSet::new();
        for name in self.axioms.iter().map(|a| &a.name).chain(self.rules.iter().map(|r| &r.schema.name)) {
            if !seen.insert(name.clone()) {
                return Err(LoadError::DuplicateName { name: name.clone() });
            }
        }
        if self.discipline == Discipline::Multi && !self.language.has_plus {
            return Err(LoadError::InvalidCalculus { msg: "multi-conclusion calculi require + in the language".into() });
        }
        for a in &self.axioms {
            self.validate_mseq(&a.schema, &a.name)?;
        }
        for r in &self.rules {
            if r.schema.discipline != self.discipline {
                return Err(LoadError::DisciplineMix { name: r.schema.name.clone() });
            }
            if !r.schema.contexts_flow_downward() {
                return Err(LoadError::InvalidCalculus {
                    msg: format!("rule {}: premise context variable missing from the conclusion", r.schema.name),
                });
            }
            self.validate_mseq(&r.schema.conclusion, &r.schema.name)?;
            for p in &r.schema.premises {
                self.validate_mseq(p, &r.schema.name)?;
            }
        }
        self.validate_modal_dependencies()?;
        Ok(())
    }

    fn validate_mseq(&self, m: &MetaSequent, owner: &str) -> Result<(), LoadError> {
        // A single-conclusion schema may still carry succedent context
        // variables (they must instantiate to the empty multiset), but
        // two succedent meta-formulas can never fit.
        if self.discipline == Discipline::Single && m.suc.formulas.len() > 1 {
            return Err(LoadError::DisciplineMix { name: owner.to_string() });
        }
        for side in [&m.ant, &m.suc] {
            for ctx in &side.contexts {
                if let Some(w) = ctx.wrap {
                    if !self.language.allows_unary(w) {
                        return Err(LoadError::InvalidCalculus {
                            msg: format!("{owner}: wrapped context uses undeclared connective {}", w.name()),
                        });
                    }
                }
            }
            for mf in &side.formulas {
                check_meta_language(&self.language, mf, owner)?;
            }
        }
        Ok(())
    }

    fn validate_modal_dependencies(&self) -> Result<(), LoadError> {
        let kinds: Vec<(ModalKind, UnaryConn)> = self
            .rules
            .iter()
            .filter_map(|r| r.shapes.modal.as_ref().map(|m| (m.kind, m.wrapper)))
            .collect();
        let has = |k: ModalKind, w: UnaryConn| kinds.iter().any(|(k2, w2)| *k2 == k && *w2 == w);
        for (k, w) in &kinds {
            match k {
                ModalKind::D if !has(ModalKind::K, *w) => {
                    return Err(LoadError::ModalDependencyViolation { needs: "K", along: "D" })
                }
                ModalKind::RS4 if !has(ModalKind::LS4, *w) => {
                    return Err(LoadError::ModalDependencyViolation { needs: "LS4", along: "RS4" })
                }
                ModalKind::FourD if !has(ModalKind::Four, *w) => {
                    return Err(LoadError::ModalDependencyViolation { needs: "4", along: "4D" })
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn check_meta_language(lang: &Language, mf: &crate::schema::MetaFormula, owner: &str) -> Result<(), LoadError> {
    use crate::schema::MetaFormula as MF;
    match mf {
        MF::Atom(_) | MF::Const(_) | MF::FVar(_) => Ok(()),
        MF::Unary(c, a) => {
            if !lang.allows_unary(*c) {
                return Err(LoadError::InvalidCalculus { msg: format!("{owner}: undeclared connective {}", c.name()) });
            }
            check_meta_language(lang, a, owner)
        }
        MF::Binary(c, a, b) => {
            if !lang.allows_binary(*c) {
                return Err(LoadError::InvalidCalculus { msg: format!("{owner}: undeclared connective {}", c.name()) });
            }
            check_meta_language(lang, a, owner)?;
            check_meta_language(lang, b, owner)
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(calculus {}", self.name)?;
        writeln!(f, "  (discipline {})", self.discipline)?;
        writeln!(f, "  (base {})", self.base.name())?;
        write!(f, "  (admissible")?;
        for a in &self.admissible {
            write!(f, " {a}")?;
        }
        writeln!(f, ")")?;
        for a in &self.axioms {
            writeln!(f, "  (axiom {} {})", a.name, a.schema)?;
        }
        for r in &self.rules {
            write!(f, "  (rule {} (premises", r.schema.name)?;
            for p in &r.schema.premises {
                write!(f, " {p}")?;
            }
            writeln!(f, ") (conclusion {}))", r.schema.conclusion)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LoadError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("unknown calculus {name:?}")]
    UnknownCalculus { name: String },
    #[error("modal dependency violated: rule {along} requires rule {needs}")]
    ModalDependencyViolation { needs: &'static str, along: &'static str },
    #[error("discipline mix in {name}: succedent too wide for a single-conclusion calculus")]
    DisciplineMix { name: String },
    #[error("duplicate schema name {name:?}")]
    DuplicateName { name: String },
    #[error("invalid calculus: {msg}")]
    InvalidCalculus { msg: String },
}

// ---------------------------------------------------------------------
// Schema table shared by the built-in calculi
// ---------------------------------------------------------------------

type RuleSpec = (&'static str, &'static [&'static str], &'static str);

const AX_IDENTITY: (&str, &str) = ("identity", "(mseq (ant ?phi) (suc ?phi))");
const AX_ONE: (&str, &str) = ("one-ax", "(mseq (ant) (suc one))");
const AX_ZERO: (&str, &str) = ("zero-ax", "(mseq (ant zero) (suc))");
const AX_TOP: (&str, &str) = ("top-ax", "(mseq (ant $Gamma) (suc top $Delta))");
const AX_BOT: (&str, &str) = ("bot-ax", "(mseq (ant $Gamma bot) (suc $Delta))");

const FLE_MINUS_RULES: &[RuleSpec] = &[
    ("one-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma one) (suc $Delta))"),
    ("zero-r", &["(mseq (ant $Gamma) (suc))"], "(mseq (ant $Gamma) (suc zero))"),
    ("and-l1", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))"),
    ("and-l2", &["(mseq (ant $Gamma ?psi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))"),
    (
        "and-r",
        &["(mseq (ant $Gamma) (suc ?phi))", "(mseq (ant $Gamma) (suc ?psi))"],
        "(mseq (ant $Gamma) (suc (and ?phi ?psi)))",
    ),
    (
        "or-l",
        &["(mseq (ant $Gamma ?phi) (suc $Delta))", "(mseq (ant $Gamma ?psi) (suc $Delta))"],
        "(mseq (ant $Gamma (or ?phi ?psi)) (suc $Delta))",
    ),
    ("or-r1", &["(mseq (ant $Gamma) (suc ?phi))"], "(mseq (ant $Gamma) (suc (or ?phi ?psi)))"),
    ("or-r2", &["(mseq (ant $Gamma) (suc ?psi))"], "(mseq (ant $Gamma) (suc (or ?phi ?psi)))"),
    ("fuse-l", &["(mseq (ant $Gamma ?phi ?psi) (suc $Delta))"], "(mseq (ant $Gamma (fuse ?phi ?psi)) (suc $Delta))"),
    (
        "fuse-r",
        &["(mseq (ant $Gamma) (suc ?phi))", "(mseq (ant $Sigma) (suc ?psi))"],
        "(mseq (ant $Gamma $Sigma) (suc (fuse ?phi ?psi)))",
    ),
    (
        "imp-l",
        &["(mseq (ant $Gamma) (suc ?phi))", "(mseq (ant $Sigma ?psi) (suc $Lambda))"],
        "(mseq (ant $Gamma $Sigma (imp ?phi ?psi)) (suc $Lambda))",
    ),
    ("imp-r", &["(mseq (ant $Gamma ?phi) (suc ?psi))"], "(mseq (ant $Gamma) (suc (imp ?phi ?psi)))"),
];

const CFLE_MINUS_RULES: &[RuleSpec] = &[
    ("one-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma one) (suc $Delta))"),
    ("zero-r", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma) (suc zero $Delta))"),
    ("and-l1", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))"),
    ("and-l2", &["(mseq (ant $Gamma ?psi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))"),
    (
        "and-r",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Gamma) (suc ?psi $Delta))"],
        "(mseq (ant $Gamma) (suc (and ?phi ?psi) $Delta))",
    ),
    (
        "or-l",
        &["(mseq (ant $Gamma ?phi) (suc $Delta))", "(mseq (ant $Gamma ?psi) (suc $Delta))"],
        "(mseq (ant $Gamma (or ?phi ?psi)) (suc $Delta))",
    ),
    ("or-r1", &["(mseq (ant $Gamma) (suc ?phi $Delta))"], "(mseq (ant $Gamma) (suc (or ?phi ?psi) $Delta))"),
    ("or-r2", &["(mseq (ant $Gamma) (suc ?psi $Delta))"], "(mseq (ant $Gamma) (suc (or ?phi ?psi) $Delta))"),
    ("fuse-l", &["(mseq (ant $Gamma ?phi ?psi) (suc $Delta))"], "(mseq (ant $Gamma (fuse ?phi ?psi)) (suc $Delta))"),
    (
        "fuse-r",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Sigma) (suc ?psi $Lambda))"],
        "(mseq (ant $Gamma $Sigma) (suc (fuse ?phi ?psi) $Delta $Lambda))",
    ),
    (
        "imp-l",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Sigma ?psi) (suc $Lambda))"],
        "(mseq (ant $Gamma $Sigma (imp ?phi ?psi)) (suc $Delta $Lambda))",
    ),
    ("imp-r", &["(mseq (ant $Gamma ?phi) (suc ?psi $Delta))"], "(mseq (ant $Gamma) (suc (imp ?phi ?psi) $Delta))"),
    (
        "plus-l",
        &["(mseq (ant $Gamma ?phi) (suc $Delta))", "(mseq (ant $Sigma ?psi) (suc $Lambda))"],
        "(mseq (ant $Gamma $Sigma (plus ?phi ?psi)) (suc $Delta $Lambda))",
    ),
    ("plus-r", &["(mseq (ant $Gamma) (suc ?phi ?psi $Delta))"], "(mseq (ant $Gamma) (suc (plus ?phi ?psi) $Delta))"),
];

const WEAK_SC: &[RuleSpec] = &[
    ("weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma ?phi) (suc $Delta))"),
    ("weak-r", &["(mseq (ant $Gamma) (suc))"], "(mseq (ant $Gamma) (suc ?phi))"),
];

const WEAK_MC: &[RuleSpec] = &[
    ("weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma ?phi) (suc $Delta))"),
    ("weak-r", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma) (suc ?phi $Delta))"),
];

const CONTR_L: RuleSpec =
    ("contr-l", &["(mseq (ant $Gamma ?phi ?phi) (suc $Delta))"], "(mseq (ant $Gamma ?phi) (suc $Delta))");
const CONTR_R: RuleSpec =
    ("contr-r", &["(mseq (ant $Gamma) (suc ?phi ?phi $Delta))"], "(mseq (ant $Gamma) (suc ?phi $Delta))");

const BANG_RULES: &[RuleSpec] = &[
    ("bang-r", &["(mseq (ant (bang $Gamma)) (suc ?phi))"], "(mseq (ant (bang $Gamma)) (suc (bang ?phi)))"),
    ("bang-l", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (bang ?phi)) (suc $Delta))"),
    ("bang-weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma (bang ?phi)) (suc $Delta))"),
    (
        "bang-contr-l",
        &["(mseq (ant $Gamma (bang ?phi) (bang ?phi)) (suc $Delta))"],
        "(mseq (ant $Gamma (bang ?phi)) (suc $Delta))",
    ),
];

const BOX_K: RuleSpec = ("box-k", &["(mseq (ant $Gamma) (suc ?phi))"], "(mseq (ant (box $Gamma)) (suc (box ?phi)))");
const BOX_D: RuleSpec = ("box-d", &["(mseq (ant $Gamma) (suc))"], "(mseq (ant (box $Gamma)) (suc))");
const BOX_RS4: RuleSpec =
    ("box-rs4", &["(mseq (ant (box $Gamma)) (suc ?phi))"], "(mseq (ant (box $Gamma)) (suc (box ?phi)))");
const BOX_LS4: RuleSpec =
    ("box-ls4", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma (box ?phi)) (suc $Delta))");

const LK_AXIOMS: &[(&str, &str)] = &[
    ("lk-ax", "(mseq (ant $Gamma ?phi) (suc ?phi $Delta))"),
    ("lk-top", "(mseq (ant $Gamma) (suc top $Delta))"),
    ("lk-bot", "(mseq (ant $Gamma bot) (suc $Delta))"),
];

const LK_RULES: &[RuleSpec] = &[
    ("and-l", &["(mseq (ant $Gamma ?phi ?psi) (suc $Delta))"], "(mseq (ant $Gamma (and ?phi ?psi)) (suc $Delta))"),
    (
        "and-r",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Gamma) (suc ?psi $Delta))"],
        "(mseq (ant $Gamma) (suc (and ?phi ?psi) $Delta))",
    ),
    (
        "or-l",
        &["(mseq (ant $Gamma ?phi) (suc $Delta))", "(mseq (ant $Gamma ?psi) (suc $Delta))"],
        "(mseq (ant $Gamma (or ?phi ?psi)) (suc $Delta))",
    ),
    ("or-r", &["(mseq (ant $Gamma) (suc ?phi ?psi $Delta))"], "(mseq (ant $Gamma) (suc (or ?phi ?psi) $Delta))"),
    (
        "imp-l",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Gamma ?psi) (suc $Delta))"],
        "(mseq (ant $Gamma (imp ?phi ?psi)) (suc $Delta))",
    ),
    ("imp-r", &["(mseq (ant $Gamma ?phi) (suc ?psi $Delta))"], "(mseq (ant $Gamma) (suc (imp ?phi ?psi) $Delta))"),
    ("not-l", &["(mseq (ant $Gamma) (suc ?phi $Delta))"], "(mseq (ant $Gamma (not ?phi)) (suc $Delta))"),
    ("not-r", &["(mseq (ant $Gamma ?phi) (suc $Delta))"], "(mseq (ant $Gamma) (suc (not ?phi) $Delta))"),
    (
        "cut",
        &["(mseq (ant $Gamma) (suc ?phi $Delta))", "(mseq (ant $Gamma ?phi) (suc $Delta))"],
        "(mseq (ant $Gamma) (suc $Delta))",
    ),
];

const FOCUSED_CPC_AXIOMS: &[(&str, &str)] = &[
    ("identity", "(mseq (ant ?phi) (suc ?phi))"),
    ("neg-pair-l", "(mseq (ant ?phi (not ?phi)) (suc))"),
    ("neg-pair-r", "(mseq (ant) (suc ?phi (not ?phi)))"),
    ("neg-one-ax", "(mseq (ant (not one)) (suc))"),
    ("neg-zero-ax", "(mseq (ant) (suc (not zero)))"),
    ("neg-bot-ax", "(mseq (ant $Gamma) (suc (not bot) $Delta))"),
    ("neg-top-ax", "(mseq (ant $Gamma (not top)) (suc $Delta))"),
    ("one-ax", "(mseq (ant) (suc one))"),
    ("zero-ax", "(mseq (ant zero) (suc))"),
    ("top-ax", "(mseq (ant $Gamma) (suc top $Delta))"),
    ("bot-ax", "(mseq (ant $Gamma bot) (suc $Delta))"),
];

const FOCUSED_CPC_IMP_RULES: &[RuleSpec] = &[
    ("imp-r", &["(mseq (ant $Gamma) (suc (not ?phi) ?psi $Delta))"], "(mseq (ant $Gamma) (suc (imp ?phi ?psi) $Delta))"),
    (
        "imp-l",
        &["(mseq (ant $Gamma (not ?phi)) (suc $Delta))", "(mseq (ant $Sigma ?psi) (suc $Lambda))"],
        "(mseq (ant $Gamma $Sigma (imp ?phi ?psi)) (suc $Delta $Lambda))",
    ),
];

fn parse_axiom(name: &str, text: &str) -> AxiomSchema {
    let schema = MetaSequent::parse(text).expect("built-in axiom parses");
    let classification = classify_axiom(&schema);
    AxiomSchema { name: name.to_string(), schema, classification }
}

fn parse_rule(spec: &RuleSpec, discipline: Discipline) -> ClassifiedRule {
    let premises = spec.1.iter().map(|p| MetaSequent::parse(p).expect("built-in premise parses")).collect();
    let conclusion = MetaSequent::parse(spec.2).expect("built-in conclusion parses");
    let schema = RuleSchema::new(spec.0, premises, conclusion, discipline);
    let (classification, shapes) = classify_rule(&schema);
    ClassifiedRule { schema, classification, shapes }
}

/// The named admissible extras proofs and witnesses may cite.
pub fn extra_rule(name: &str, discipline: Discipline) -> Option<RuleSchema> {
    let spec: RuleSpec = match name {
        "weak-l" => WEAK_MC[0],
        "weak-r" => {
            if discipline == Discipline::Single {
                WEAK_SC[1]
            } else {
                WEAK_MC[1]
            }
        }
        "contr-l" => CONTR_L,
        "contr-r" => {
            if discipline == Discipline::Single {
                return None;
            }
            CONTR_R
        }
        "box-weak-l" => ("box-weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma (box ?phi)) (suc $Delta))"),
        "bang-weak-l" => ("bang-weak-l", &["(mseq (ant $Gamma) (suc $Delta))"], "(mseq (ant $Gamma (bang ?phi)) (suc $Delta))"),
        "cs-imp-l" => (
            "cs-imp-l",
            &["(mseq (ant $Gamma) (suc ?phi))", "(mseq (ant $Gamma ?psi) (suc $Delta))"],
            "(mseq (ant $Gamma (imp ?phi ?psi)) (suc $Delta))",
        ),
        _ => return None,
    };
    let premises = spec.1.iter().map(|p| MetaSequent::parse(p).unwrap()).collect();
    Some(RuleSchema::new(spec.0, premises, MetaSequent::parse(spec.2).unwrap(), discipline))
}

/// The De Morgan family, generated from the classical dual of each
/// negated connective:
///   `¬(φ∧ψ) ~ ¬φ or ¬ψ`, `¬(φ∨ψ) ~ ¬φ and ¬ψ`, `¬(φ*ψ) ~ ¬φ + ¬ψ`,
///   `¬(φ+ψ) ~ ¬φ * ¬ψ`, `¬(φ→ψ) ~ φ * ¬ψ`, `¬¬φ ~ φ`.
fn de_morgan_rules() -> Vec<RuleSpec> {
    vec![
        (
            "nand-l",
            &[
                "(mseq (ant $Gamma (not ?phi)) (suc $Delta))",
                "(mseq (ant $Gamma (not ?psi)) (suc $Delta))",
            ][..],
            "(mseq (ant $Gamma (not (and ?phi ?psi))) (suc $Delta))",
        ),
        ("nand-r1", &["(mseq (ant $Gamma) (suc (not ?phi) $Delta))"][..], "(mseq (ant $Gamma) (suc (not (and ?phi ?psi)) $Delta))"),
        ("nand-r2", &["(mseq (ant $Gamma) (suc (not ?psi) $Delta))"][..], "(mseq (ant $Gamma) (suc (not (and ?phi ?psi)) $Delta))"),
        ("nor-l1", &["(mseq (ant $Gamma (not ?phi)) (suc $Delta))"][..], "(mseq (ant $Gamma (not (or ?phi ?psi))) (suc $Delta))"),
        ("nor-l2", &["(mseq (ant $Gamma (not ?psi)) (suc $Delta))"][..], "(mseq (ant $Gamma (not (or ?phi ?psi))) (suc $Delta))"),
        (
            "nor-r",
            &[
                "(mseq (ant $Gamma) (suc (not ?phi) $Delta))",
                "(mseq (ant $Gamma) (suc (not ?psi) $Delta))",
            ][..],
            "(mseq (ant $Gamma) (suc (not (or ?phi ?psi)) $Delta))",
        ),
        (
            "nfuse-l",
            &[
                "(mseq (ant $Gamma (not ?phi)) (suc $Delta))",
                "(mseq (ant $Sigma (not ?psi)) (suc $Lambda))",
            ][..],
            "(mseq (ant $Gamma $Sigma (not (fuse ?phi ?psi))) (suc $Delta $Lambda))",
        ),
        ("nfuse-r", &["(mseq (ant $Gamma) (suc (not ?phi) (not ?psi) $Delta))"][..], "(mseq (ant $Gamma) (suc (not (fuse ?phi ?psi)) $Delta))"),
        ("nplus-l", &["(mseq (ant $Gamma (not ?phi) (not ?psi)) (suc $Delta))"][..], "(mseq (ant $Gamma (not (plus ?phi ?psi))) (suc $Delta))"),
        (
            "nplus-r",
            &[
                "(mseq (ant $Gamma) (suc (not ?phi) $Delta))",
                "(mseq (ant $Sigma) (suc (not ?psi) $Lambda))",
            ][..],
            "(mseq (ant $Gamma $Sigma) (suc (not (plus ?phi ?psi)) $Delta $Lambda))",
        ),
        ("nimp-l", &["(mseq (ant $Gamma ?phi (not ?psi)) (suc $Delta))"][..], "(mseq (ant $Gamma (not (imp ?phi ?psi))) (suc $Delta))"),
        (
            "nimp-r",
            &[
                "(mseq (ant $Gamma) (suc ?phi $Delta))",
                "(mseq (ant $Sigma) (suc (not ?psi) $Lambda))",
            ][..],
            "(mseq (ant $Gamma $Sigma) (suc (not (imp ?phi ?psi)) $Delta $Lambda))",
        ),
        ("nneg-l", &["(mseq (ant $Gamma ?phi) (suc $Delta))"][..], "(mseq (ant $Gamma (not (not ?phi))) (suc $Delta))"),
        ("nneg-r", &["(mseq (ant $Gamma) (suc ?phi $Delta))"][..], "(mseq (ant $Gamma) (suc (not (not ?phi)) $Delta))"),
    ]
}

fn assemble(
    name: &str,
    language: Language,
    discipline: Discipline,
    base: BaseTag,
    axioms: &[(&str, &str)],
    rules: &[RuleSpec],
    admissible: &[&str],
) -> Calculus {
    let calc = Calculus {
        name: name.to_string(),
        language,
        discipline,
        base,
        axioms: axioms.iter().map(|(n, t)| parse_axiom(n, t)).collect(),
        rules: rules.iter().map(|spec| parse_rule(spec, discipline)).collect(),
        admissible: admissible.iter().map(|s| s.to_string()).collect(),
    };
    calc.validate().unwrap_or_else(|e| panic!("built-in calculus {name} invalid: {e}"));
    calc
}

/// The base bundles interpolation witnesses may draw on.
pub fn base_bundle(tag: BaseTag) -> (Vec<AxiomSchema>, Vec<ClassifiedRule>) {
    let calc = match tag {
        BaseTag::FLeMinus => builtin("FLe-").unwrap(),
        BaseTag::FLe => builtin("FLe").unwrap(),
        BaseTag::CFLeMinus => builtin("CFLe-").unwrap(),
        BaseTag::CFLe => builtin("CFLe").unwrap(),
        BaseTag::Mall => builtin("MALL").unwrap(),
    };
    (calc.axioms, calc.rules)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "FLe-", "FLe", "FLew", "FLec", "CFLe-", "CFLe", "CFLew", "CFLec", "MALL", "ILL", "CLL", "FLe+K", "FLe+KD",
    "FLe+S4", "CFLe+K", "LK", "FocusedCPC",
];

/// Construct a built-in calculus by name.
pub fn builtin(name: &str) -> Result<Calculus, LoadError> {
    let sc_axioms_minus = [AX_IDENTITY, AX_ONE, AX_ZERO];
    let sc_axioms = [AX_IDENTITY, AX_ONE, AX_ZERO, AX_TOP, AX_BOT];
    let mc_axioms_minus = [AX_IDENTITY, AX_ONE, AX_ZERO];
    let mc_axioms = [AX_IDENTITY, AX_ONE, AX_ZERO, AX_TOP, AX_BOT];

    let with_box = |mut l: Language| {
        l.has_box = true;
        l
    };
    let with_bang = |mut l: Language| {
        l.has_bang = true;
        l
    };

    let calc = match name {
        "FLe-" => assemble(name, Language::core(), Discipline::Single, BaseTag::FLeMinus, &sc_axioms_minus, FLE_MINUS_RULES, &[]),
        "FLe" => assemble(name, Language::core(), Discipline::Single, BaseTag::FLe, &sc_axioms, FLE_MINUS_RULES, &[]),
        "FLew" => {
            let rules: Vec<RuleSpec> = FLE_MINUS_RULES.iter().chain(WEAK_SC.iter()).copied().collect();
            assemble(name, Language::core(), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "FLec" => {
            let mut rules: Vec<RuleSpec> = FLE_MINUS_RULES.to_vec();
            rules.push(CONTR_L);
            assemble(name, Language::core(), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "CFLe-" => assemble(name, Language::multi(), Discipline::Multi, BaseTag::CFLeMinus, &mc_axioms_minus, CFLE_MINUS_RULES, &[]),
        "CFLe" => assemble(name, Language::multi(), Discipline::Multi, BaseTag::CFLe, &mc_axioms, CFLE_MINUS_RULES, &[]),
        "CFLew" => {
            let rules: Vec<RuleSpec> = CFLE_MINUS_RULES.iter().chain(WEAK_MC.iter()).copied().collect();
            assemble(name, Language::multi(), Discipline::Multi, BaseTag::CFLe, &mc_axioms, &rules, &[])
        }
        "CFLec" => {
            let mut rules: Vec<RuleSpec> = CFLE_MINUS_RULES.to_vec();
            rules.push(CONTR_L);
            rules.push(CONTR_R);
            assemble(name, Language::multi(), Discipline::Multi, BaseTag::CFLe, &mc_axioms, &rules, &[])
        }
        "MALL" => {
            let rules: Vec<RuleSpec> =
                CFLE_MINUS_RULES.iter().filter(|(n, _, _)| *n != "imp-l" && *n != "imp-r").copied().collect();
            assemble(name, Language::multi(), Discipline::Multi, BaseTag::Mall, &mc_axioms, &rules, &[])
        }
        "ILL" => {
            let rules: Vec<RuleSpec> = FLE_MINUS_RULES.iter().chain(BANG_RULES.iter()).copied().collect();
            assemble(name, with_bang(Language::core()), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "CLL" => {
            let rules: Vec<RuleSpec> = CFLE_MINUS_RULES.iter().chain(BANG_RULES.iter()).copied().collect();
            assemble(name, with_bang(Language::multi()), Discipline::Multi, BaseTag::CFLe, &mc_axioms, &rules, &[])
        }
        "FLe+K" => {
            let mut rules: Vec<RuleSpec> = FLE_MINUS_RULES.to_vec();
            rules.push(BOX_K);
            assemble(name, with_box(Language::core()), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "FLe+KD" => {
            let mut rules: Vec<RuleSpec> = FLE_MINUS_RULES.to_vec();
            rules.push(BOX_K);
            rules.push(BOX_D);
            assemble(name, with_box(Language::core()), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "FLe+S4" => {
            let mut rules: Vec<RuleSpec> = FLE_MINUS_RULES.to_vec();
            rules.push(BOX_RS4);
            rules.push(BOX_LS4);
            assemble(name, with_box(Language::core()), Discipline::Single, BaseTag::FLe, &sc_axioms, &rules, &[])
        }
        "CFLe+K" => {
            let mut rules: Vec<RuleSpec> = CFLE_MINUS_RULES.to_vec();
            rules.push(BOX_K);
            assemble(name, with_box(Language::multi()), Discipline::Multi, BaseTag::CFLe, &mc_axioms, &rules, &[])
        }
        "LK" => {
            let mut rules: Vec<RuleSpec> = LK_RULES.to_vec();
            rules.extend_from_slice(WEAK_MC);
            rules.push(CONTR_L);
            rules.push(CONTR_R);
            assemble(name, Language::classical(), Discipline::Multi, BaseTag::CFLe, LK_AXIOMS, &rules, &[])
        }
        "FocusedCPC" => {
            let core: Vec<RuleSpec> =
                CFLE_MINUS_RULES.iter().filter(|(n, _, _)| *n != "imp-l" && *n != "imp-r").copied().collect();
            let mut rules: Vec<RuleSpec> = core;
            rules.extend_from_slice(FOCUSED_CPC_IMP_RULES);
            rules.extend(de_morgan_rules());
            rules.extend_from_slice(WEAK_MC);
            rules.push(CONTR_L);
            rules.push(CONTR_R);
            assemble(name, Language::classical(), Discipline::Multi, BaseTag::CFLe, FOCUSED_CPC_AXIOMS, &rules, &[])
        }
        _ => return Err(LoadError::UnknownCalculus { name: name.to_string() }),
    };
    Ok(calc)
}

/// The focused classical calculus.
pub fn focused_cpc() -> Calculus {
    builtin("FocusedCPC").unwrap()
}

// ---------------------------------------------------------------------
// Loader
// ---------------------------------------------------------------------

/// Parse a calculus file. Language flags are inferred from the schemas
/// (plus the discipline, which forces `+`).
pub fn load(text: &str) -> Result<Calculus, LoadError> {
    let e = parse_one(text).map_err(ParseError::from)?;
    from_sexp(&e)
}

pub fn from_sexp(e: &Sexp) -> Result<Calculus, LoadError> {
    let items = e
        .as_list()
        .filter(|items| items.first().and_then(Sexp::as_sym) == Some("calculus"))
        .ok_or_else(|| syntax(e.pos(), "expected (calculus NAME ...)"))?;
    if items.len() < 2 {
        return Err(syntax(e.pos(), "expected (calculus NAME ...)"));
    }
    let name = items[1].as_sym().ok_or_else(|| syntax(items[1].pos(), "expected calculus name"))?.to_string();

    let mut discipline = None;
    let mut base = None;
    let mut admissible = Vec::new();
    let mut axioms: Vec<(String, MetaSequent)> = Vec::new();
    let mut rules: Vec<RuleSchema> = Vec::new();

    for item in &items[2..] {
        let sub = item.as_list().ok_or_else(|| syntax(item.pos(), "expected a clause"))?;
        match sub.first().and_then(Sexp::as_sym) {
            Some("discipline") => {
                let d = sub.get(1).and_then(Sexp::as_sym).ok_or_else(|| syntax(item.pos(), "expected single|multi"))?;
                discipline = Some(match d {
                    "single" => Discipline::Single,
                    "multi" => Discipline::Multi,
                    _ => return Err(syntax(item.pos(), "expected single|multi")),
                });
            }
            Some("base") => {
                let b = sub.get(1).and_then(Sexp::as_sym).ok_or_else(|| syntax(item.pos(), "expected a base tag"))?;
                base = Some(BaseTag::parse(b).ok_or_else(|| syntax(item.pos(), "unknown base tag"))?);
            }
            Some("admissible") => {
                for a in &sub[1..] {
                    admissible.push(a.as_sym().ok_or_else(|| syntax(a.pos(), "expected a rule name"))?.to_string());
                }
            }
            Some("axiom") => {
                if sub.len() != 3 {
                    return Err(syntax(item.pos(), "expected (axiom NAME MSEQ)"));
                }
                let axname = sub[1].as_sym().ok_or_else(|| syntax(sub[1].pos(), "expected axiom name"))?.to_string();
                axioms.push((axname, MetaSequent::from_sexp(&sub[2])?));
            }
            Some("rule") => {
                if sub.len() != 4 {
                    return Err(syntax(item.pos(), "expected (rule NAME (premises ...) (conclusion MSEQ))"));
                }
                let rname = sub[1].as_sym().ok_or_else(|| syntax(sub[1].pos(), "expected rule name"))?.to_string();
                let prem_list = sub[2]
                    .as_list()
                    .filter(|l| l.first().and_then(Sexp::as_sym) == Some("premises"))
                    .ok_or_else(|| syntax(sub[2].pos(), "expected (premises ...)"))?;
                let concl_list = sub[3]
                    .as_list()
                    .filter(|l| l.first().and_then(Sexp::as_sym) == Some("conclusion") && l.len() == 2)
                    .ok_or_else(|| syntax(sub[3].pos(), "expected (conclusion MSEQ)"))?;
                let premises = prem_list[1..].iter().map(MetaSequent::from_sexp).collect::<Result<Vec<_>, _>>()?;
                let conclusion = MetaSequent::from_sexp(&concl_list[1])?;
                // Discipline is attached once the header is known.
                rules.push(RuleSchema::new(rname, premises, conclusion, Discipline::Multi));
            }
            Some(other) => return Err(syntax(item.pos(), format!("unknown clause {other:?}"))),
            None => return Err(syntax(item.pos(), "expected a clause")),
        }
    }

    let discipline = discipline.ok_or_else(|| syntax(e.pos(), "missing (discipline ...)"))?;
    let base = base.ok_or_else(|| syntax(e.pos(), "missing (base ...)"))?;

    let mut language = if discipline == Discipline::Multi { Language::multi() } else { Language::core() };
    {
        let mut scan = |m: &MetaSequent| {
            use crate::schema::MetaFormula as MF;
            fn scan_mf(lang: &mut Language, mf: &MF) {
                match mf {
                    MF::Atom(_) | MF::Const(_) | MF::FVar(_) => {}
                    MF::Unary(c, a) => {
                        match c {
                            UnaryConn::Not => lang.has_neg = true,
                            UnaryConn::Box => lang.has_box = true,
                            UnaryConn::Bang => lang.has_bang = true,
                        }
                        scan_mf(lang, a);
                    }
                    MF::Binary(c, a, b) => {
                        if *c == BinaryConn::Plus {
                            lang.has_plus = true;
                        }
                        scan_mf(lang, a);
                        scan_mf(lang, b);
                    }
                }
            }
            for side in [&m.ant, &m.suc] {
                for ctx in &side.contexts {
                    match ctx.wrap {
                        Some(UnaryConn::Box) => language.has_box = true,
                        Some(UnaryConn::Bang) => language.has_bang = true,
                        Some(UnaryConn::Not) | None => {}
                    }
                }
                for mf in &side.formulas {
                    scan_mf(&mut language, mf);
                }
            }
        };
        for (_, a) in &axioms {
            scan(a);
        }
        for r in &rules {
            scan(&r.conclusion);
            for p in &r.premises {
                scan(p);
            }
        }
    }

    let calc = Calculus {
        name,
        language,
        discipline,
        base,
        axioms: axioms
            .into_iter()
            .map(|(n, schema)| {
                let classification = classify_axiom(&schema);
                AxiomSchema { name: n, schema, classification }
            })
            .collect(),
        rules: rules
            .into_iter()
            .map(|mut schema| {
                schema.discipline = discipline;
                let (classification, shapes) = classify_rule(&schema);
                ClassifiedRule { schema, classification, shapes }
            })
            .collect(),
        admissible,
    };
    calc.validate()?;
    Ok(calc)
}

fn syntax(pos: usize, msg: impl Into<String>) -> LoadError {
    LoadError::Parse(ParseError::Syntax { pos, msg: msg.into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_construct_and_validate() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            assert_eq!(&c.name, name);
        }
        assert!(matches!(builtin("nope"), Err(LoadError::UnknownCalculus { .. })));
    }

    #[test]
    fn mall_is_cfle_minus_implication() {
        let mall = builtin("MALL").unwrap();
        let cfle = builtin("CFLe").unwrap();
        let mall_names: Vec<_> = mall.rules.iter().map(|r| r.schema.name.clone()).collect();
        let cfle_names: Vec<_> = cfle.rules.iter().map(|r| r.schema.name.clone()).collect();
        assert!(!mall_names.contains(&"imp-l".to_string()));
        assert!(!mall_names.contains(&"imp-r".to_string()));
        let expected: Vec<_> = cfle_names.into_iter().filter(|n| n != "imp-l" && n != "imp-r").collect();
        assert_eq!(mall_names, expected);
    }

    #[test]
    fn ill_is_fle_plus_bang_rules() {
        let ill = builtin("ILL").unwrap();
        let fle = builtin("FLe").unwrap();
        let extra: Vec<_> = ill.rules.iter().map(|r| r.schema.name.as_str()).filter(|n| fle.rule(n).is_none()).collect();
        assert_eq!(extra, vec!["bang-r", "bang-l", "bang-weak-l", "bang-contr-l"]);
        assert_eq!(ill.rule("bang-r").unwrap().classification.modal, ModalKind::RS4);
    }

    #[test]
    fn flew_weak_r_has_empty_premise_succedent() {
        let flew = builtin("FLew").unwrap();
        let wr = flew.rule("weak-r").unwrap();
        assert!(wr.schema.premises[0].suc.formulas.is_empty());
        assert!(wr.schema.premises[0].suc.contexts.is_empty());
    }

    #[test]
    fn builtins_semi_analytic_except_lk_cut() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            for r in &c.rules {
                let sa = match c.discipline {
                    Discipline::Single => r.classification.semi_analytic_single(),
                    Discipline::Multi => r.classification.semi_analytic_multi(),
                };
                if *name == "LK" {
                    if r.schema.name == "cut" {
                        assert!(!sa, "cut must not classify as semi-analytic");
                    }
                } else {
                    assert!(sa, "{name}/{} should be semi-analytic", r.schema.name);
                }
            }
            if *name != "LK" {
                for a in &c.axioms {
                    assert!(a.classification.focused, "{name}/{} should be a focused axiom", a.name);
                }
            }
        }
    }

    #[test]
    fn focused_cpc_rules_all_focused() {
        let f = focused_cpc();
        for r in &f.rules {
            assert!(r.classification.focused(), "{} should be focused", r.schema.name);
            assert!(r.classification.ppf && r.classification.mpf, "{} should be PPF/MPF", r.schema.name);
        }
        let negr = f.axiom("neg-pair-r").unwrap();
        assert!(negr.classification.focused && !negr.classification.strongly_focused);
        let negl = f.axiom("neg-pair-l").unwrap();
        assert!(negl.classification.strongly_focused);
    }

    #[test]
    fn roundtrip_builtin_fle() {
        let fle = builtin("FLe").unwrap();
        let text = fle.to_string();
        let back = load(&text).unwrap();
        assert_eq!(fle, back);
    }

    #[test]
    fn load_rejects_d_without_k() {
        let text = "(calculus bad (discipline single) (base FLe)
            (axiom identity (mseq (ant ?phi) (suc ?phi)))
            (rule box-d (premises (mseq (ant $Gamma) (suc))) (conclusion (mseq (ant (box $Gamma)) (suc)))))";
        assert!(matches!(load(text), Err(LoadError::ModalDependencyViolation { needs: "K", .. })));
    }

    #[test]
    fn load_rejects_contr_r_in_single_conclusion() {
        let text = "(calculus bad (discipline single) (base FLe)
            (axiom identity (mseq (ant ?phi) (suc ?phi)))
            (rule contr-r (premises (mseq (ant $Gamma) (suc ?phi ?phi $Delta))) (conclusion (mseq (ant $Gamma) (suc ?phi $Delta)))))";
        assert!(matches!(load(text), Err(LoadError::DisciplineMix { .. })));
    }

    #[test]
    fn side_conditions_are_inexpressible() {
        // The grammar has no clause for guards on contexts, so a rule
        // whose soundness depends on one cannot be written.
        let text = "(calculus bad (discipline multi) (base CFLe)
            (axiom identity (mseq (ant ?phi) (suc ?phi)))
            (rule kc (premises (mseq (ant $Gamma ?phi) (suc ?psi $Delta)))
                     (conclusion (mseq (ant $Gamma) (suc (imp ?phi ?psi) $Delta)))
                     (guard negated $Delta)))";
        assert!(load(text).is_err());
    }
}
