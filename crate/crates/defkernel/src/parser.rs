//! Problem files, formulas, atoms and DNF text.
//!
//! ```text
//! domain a b c ;
//! pred G/2 = { (a,a), (b,c), (c,b) } ;
//! pred R/2 ;
//! define {
//!   R(x,y) <- G(x,y).
//!   R(x,y) <- exists z: (R(x,z) & R(z,y)).
//! }
//! order { R(a,a) < R(b,b). }
//! expect defined { R(a,a) } ;
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use defkernel_core::dnf::{Disjunct, DnfFormula};
use defkernel_core::syntax::{normalize_rule, GeneralRule};
use defkernel_core::{
    AtomRelation, AtomSet, Definition, Elem, Expectations, FiniteStructure, Formula, Problem, SymbolKind, Term,
    Vocabulary,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> PResult<T> {
    Err(ParseError { line: pos.line, col: pos.col, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Colon,
    Slash,
    Eq,
    Arrow,     // <-
    Lt,        // <
    MapsTo,    // ->
    Implies,   // =>
    Tilde,
    Amp,
    Bar,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Slash => "`/`",
            Tok::Eq => "`=`",
            Tok::Arrow => "`<-`",
            Tok::Lt => "`<`",
            Tok::MapsTo => "`->`",
            Tok::Implies => "`=>`",
            Tok::Tilde => "`~`",
            Tok::Amp => "`&`",
            Tok::Bar => "`|`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn lex(text: &str) -> PResult<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let next = chars.get(i + 1).copied();
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            '/' => Some(Tok::Slash),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            '<' if next == Some('-') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            '<' => Some(Tok::Lt),
            '-' if next == Some('>') => {
                adv = 2;
                Some(Tok::MapsTo)
            }
            '=' if next == Some('>') => {
                adv = 2;
                Some(Tok::Implies)
            }
            '=' => Some(Tok::Eq),
            c if is_ident_char(c) => {
                let start = i;
                while i + adv < chars.len() && is_ident_char(chars[i + adv]) {
                    adv += 1;
                }
                Some(Tok::Ident(chars[start..start + adv].iter().collect()))
            }
            other => return err(pos, format!("unexpected character `{other}`")),
        };
        if let Some(t) = tok {
            out.push((t, pos));
        }
        i += adv;
        col += adv;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Debug, Clone)]
enum RawTerm {
    Name(String, Pos),
    App(String, Vec<RawTerm>, Pos),
}

#[derive(Debug, Clone)]
enum RawFormula {
    True,
    False,
    Atom(String, Vec<RawTerm>, Pos),
    Eq(RawTerm, RawTerm),
    Not(Box<RawFormula>),
    And(Box<RawFormula>, Box<RawFormula>),
    Or(Box<RawFormula>, Box<RawFormula>),
    Implies(Box<RawFormula>, Box<RawFormula>),
    Exists(String, Box<RawFormula>),
    Forall(String, Box<RawFormula>),
}

/// A ground atom as written: predicate and element names.
#[derive(Debug, Clone)]
struct RawAtom {
    pred: String,
    args: Vec<String>,
    pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {want}, found {}", self.peek()))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            other => err(pos, format!("expected identifier, found {other}")),
        }
    }

    fn number(&mut self) -> PResult<usize> {
        let (s, pos) = self.ident()?;
        s.parse().or_else(|_| err(pos, format!("expected a number, found `{s}`")))
    }

    fn term(&mut self) -> PResult<RawTerm> {
        let (name, pos) = self.ident()?;
        if self.eat(&Tok::LParen) {
            let args = self.term_list()?;
            Ok(RawTerm::App(name, args, pos))
        } else {
            Ok(RawTerm::Name(name, pos))
        }
    }

    // After `(`; consumes the closing `)`.
    fn term_list(&mut self) -> PResult<Vec<RawTerm>> {
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn formula(&mut self) -> PResult<RawFormula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.formula()?;
            return Ok(RawFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<RawFormula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            let g = self.conjunction()?;
            f = RawFormula::Or(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<RawFormula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            let g = self.unary()?;
            f = RawFormula::And(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn unary(&mut self) -> PResult<RawFormula> {
        if self.eat(&Tok::Tilde) {
            return Ok(RawFormula::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<RawFormula> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if (s == "exists" || s == "forall") && matches!(self.peek_at(1), Tok::Ident(_)) => {
                self.bump();
                let (v, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                self.expect(Tok::LParen)?;
                let body = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(if s == "exists" {
                    RawFormula::Exists(v, Box::new(body))
                } else {
                    RawFormula::Forall(v, Box::new(body))
                })
            }
            Tok::Ident(s) if s == "true" && *self.peek_at(1) != Tok::Eq => {
                self.bump();
                Ok(RawFormula::True)
            }
            Tok::Ident(s) if s == "false" && *self.peek_at(1) != Tok::Eq => {
                self.bump();
                Ok(RawFormula::False)
            }
            Tok::Ident(_) => {
                let t = self.term()?;
                if self.eat(&Tok::Eq) {
                    let rhs = self.term()?;
                    return Ok(RawFormula::Eq(t, rhs));
                }
                Ok(match t {
                    RawTerm::Name(n, p) => RawFormula::Atom(n, Vec::new(), p),
                    RawTerm::App(n, args, p) => RawFormula::Atom(n, args, p),
                })
            }
            other => err(pos, format!("expected a formula, found {other}")),
        }
    }

    fn ground_atom(&mut self) -> PResult<RawAtom> {
        let (pred, pos) = self.ident()?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
            loop {
                args.push(self.ident()?.0);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(RawAtom { pred, args, pos })
    }

    fn tuple(&mut self) -> PResult<(Vec<String>, Pos)> {
        let pos = self.pos();
        if self.eat(&Tok::LParen) {
            let mut items = Vec::new();
            if self.eat(&Tok::RParen) {
                return Ok((items, pos));
            }
            loop {
                items.push(self.ident()?.0);
                if self.eat(&Tok::RParen) {
                    return Ok((items, pos));
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok((vec![self.ident()?.0], pos))
    }
}

struct PredDecl {
    arity: usize,
    tuples: Option<Vec<(Vec<String>, Pos)>>,
    pos: Pos,
}

struct FunDecl {
    arity: usize,
    table: Vec<(Vec<String>, String, Pos)>,
    pos: Pos,
}

struct RawRule {
    head: String,
    args: Vec<RawTerm>,
    body: RawFormula,
    pos: Pos,
}

#[derive(Default)]
struct RawProblem {
    domain: Option<(Vec<String>, Pos)>,
    preds: BTreeMap<String, PredDecl>,
    funs: BTreeMap<String, FunDecl>,
    objs: BTreeMap<String, (String, Pos)>,
    rules: Vec<RawRule>,
    define_pos: Option<Pos>,
    order: Option<Vec<Vec<RawAtom>>>,
    expect_sets: BTreeMap<String, Vec<RawAtom>>,
    expect_flags: BTreeMap<String, bool>,
}

const EXPECT_SETS: [&str; 3] = ["defined", "underivable", "undecided"];
const EXPECT_FLAGS: [&str; 4] = ["saturated", "fixpoint", "minimal", "unique"];

impl RawProblem {
    fn declared(&self, name: &str) -> bool {
        self.preds.contains_key(name) || self.funs.contains_key(name) || self.objs.contains_key(name)
    }
}

fn parse_raw(p: &mut Parser) -> PResult<RawProblem> {
    let mut raw = RawProblem::default();
    loop {
        let pos = p.pos();
        let kw = match p.peek().clone() {
            Tok::Eof => return Ok(raw),
            Tok::Ident(s) => s,
            other => return err(pos, format!("expected a declaration, found {other}")),
        };
        p.bump();
        match kw.as_str() {
            "domain" => {
                if raw.domain.is_some() {
                    return err(pos, "domain declared twice");
                }
                let mut elems = Vec::new();
                while let Tok::Ident(_) = p.peek() {
                    elems.push(p.ident()?.0);
                }
                p.expect(Tok::Semi)?;
                raw.domain = Some((elems, pos));
            }
            "pred" => {
                let (name, npos) = p.ident()?;
                p.expect(Tok::Slash)?;
                let arity = p.number()?;
                let tuples = if p.eat(&Tok::Eq) {
                    p.expect(Tok::LBrace)?;
                    let mut ts = Vec::new();
                    if !p.eat(&Tok::RBrace) {
                        loop {
                            ts.push(p.tuple()?);
                            if p.eat(&Tok::RBrace) {
                                break;
                            }
                            p.expect(Tok::Comma)?;
                        }
                    }
                    Some(ts)
                } else {
                    None
                };
                p.expect(Tok::Semi)?;
                if raw.declared(&name) {
                    return err(npos, format!("symbol `{name}` declared twice"));
                }
                raw.preds.insert(name, PredDecl { arity, tuples, pos: npos });
            }
            "fun" => {
                let (name, npos) = p.ident()?;
                p.expect(Tok::Slash)?;
                let arity = p.number()?;
                p.expect(Tok::Eq)?;
                p.expect(Tok::LBrace)?;
                let mut table = Vec::new();
                if !p.eat(&Tok::RBrace) {
                    loop {
                        let (args, tpos) = p.tuple()?;
                        p.expect(Tok::MapsTo)?;
                        let (v, _) = p.ident()?;
                        table.push((args, v, tpos));
                        if p.eat(&Tok::RBrace) {
                            break;
                        }
                        p.expect(Tok::Comma)?;
                    }
                }
                p.expect(Tok::Semi)?;
                if raw.declared(&name) {
                    return err(npos, format!("symbol `{name}` declared twice"));
                }
                raw.funs.insert(name, FunDecl { arity, table, pos: npos });
            }
            "obj" => {
                let (name, npos) = p.ident()?;
                p.expect(Tok::Eq)?;
                let (v, _) = p.ident()?;
                p.expect(Tok::Semi)?;
                if raw.declared(&name) {
                    return err(npos, format!("symbol `{name}` declared twice"));
                }
                raw.objs.insert(name, (v, npos));
            }
            "define" => {
                raw.define_pos.get_or_insert(pos);
                p.expect(Tok::LBrace)?;
                while !p.eat(&Tok::RBrace) {
                    let (head, hpos) = p.ident()?;
                    let args = if p.eat(&Tok::LParen) { p.term_list()? } else { Vec::new() };
                    p.expect(Tok::Arrow)?;
                    let body = p.formula()?;
                    p.expect(Tok::Dot)?;
                    raw.rules.push(RawRule { head, args, body, pos: hpos });
                }
                p.eat(&Tok::Semi);
            }
            "order" => {
                p.expect(Tok::LBrace)?;
                let chains = raw.order.get_or_insert_with(Vec::new);
                while !p.eat(&Tok::RBrace) {
                    let mut chain = vec![p.ground_atom()?];
                    while p.eat(&Tok::Lt) {
                        chain.push(p.ground_atom()?);
                    }
                    p.expect(Tok::Dot)?;
                    chains.push(chain);
                }
                p.eat(&Tok::Semi);
            }
            "expect" => {
                let (name, npos) = p.ident()?;
                if EXPECT_SETS.contains(&name.as_str()) {
                    p.expect(Tok::LBrace)?;
                    let mut atoms = Vec::new();
                    while !p.eat(&Tok::RBrace) {
                        atoms.push(p.ground_atom()?);
                        p.eat(&Tok::Comma);
                    }
                    p.expect(Tok::Semi)?;
                    raw.expect_sets.entry(name).or_default().extend(atoms);
                } else if EXPECT_FLAGS.contains(&name.as_str()) {
                    let (v, vpos) = p.ident()?;
                    let b = match v.as_str() {
                        "true" => true,
                        "false" => false,
                        _ => return err(vpos, "expected `true` or `false`"),
                    };
                    p.expect(Tok::Semi)?;
                    raw.expect_flags.insert(name, b);
                } else {
                    return err(npos, format!("unknown expectation `{name}`"));
                }
            }
            other => return err(pos, format!("unknown declaration `{other}`")),
        }
    }
}

struct Resolver<'a> {
    vocab: &'a Vocabulary,
    /// Predicates that may appear in formulas, with arities.
    preds: &'a BTreeMap<String, usize>,
}

impl Resolver<'_> {
    fn term(&self, t: &RawTerm, scope: &[String], free_ok: bool) -> PResult<Term> {
        match t {
            RawTerm::Name(n, pos) => {
                if scope.contains(n) {
                    Ok(Term::Var(n.clone()))
                } else {
                    match self.vocab.get(n) {
                        Some(s) if s.kind == SymbolKind::Object => Ok(Term::obj(n)),
                        Some(_) => err(*pos, format!("`{n}` is not an object symbol")),
                        None if free_ok => Ok(Term::Var(n.clone())),
                        None => err(*pos, format!("unbound variable or undeclared object `{n}`")),
                    }
                }
            }
            RawTerm::App(n, args, pos) => match self.vocab.get(n) {
                Some(s) if s.kind == SymbolKind::Function && s.arity == args.len() => {
                    let args = args.iter().map(|a| self.term(a, scope, free_ok)).collect::<PResult<Vec<_>>>()?;
                    Ok(Term::Apply(n.clone(), args))
                }
                Some(s) if s.kind == SymbolKind::Function => {
                    err(*pos, format!("`{n}` takes {} arguments, found {}", s.arity, args.len()))
                }
                Some(s) if s.kind == SymbolKind::Object && args.is_empty() => Ok(Term::obj(n)),
                _ => err(*pos, format!("unknown function `{n}`")),
            },
        }
    }

    fn formula(&self, f: &RawFormula, scope: &mut Vec<String>, free_ok: bool) -> PResult<Formula> {
        Ok(match f {
            RawFormula::True => Formula::True,
            RawFormula::False => Formula::False,
            RawFormula::Atom(p, args, pos) => match self.preds.get(p) {
                Some(&a) if a == args.len() => {
                    let args = args.iter().map(|t| self.term(t, scope, free_ok)).collect::<PResult<Vec<_>>>()?;
                    Formula::Atom(p.clone(), args)
                }
                Some(&a) => return err(*pos, format!("`{p}` takes {a} arguments, found {}", args.len())),
                None => return err(*pos, format!("unknown predicate `{p}`")),
            },
            RawFormula::Eq(a, b) => Formula::Eq(self.term(a, scope, free_ok)?, self.term(b, scope, free_ok)?),
            RawFormula::Not(a) => Formula::not(self.formula(a, scope, free_ok)?),
            RawFormula::And(a, b) => Formula::and(self.formula(a, scope, free_ok)?, self.formula(b, scope, free_ok)?),
            RawFormula::Or(a, b) => Formula::or(self.formula(a, scope, free_ok)?, self.formula(b, scope, free_ok)?),
            RawFormula::Implies(a, b) => {
                Formula::implies(self.formula(a, scope, free_ok)?, self.formula(b, scope, free_ok)?)
            }
            RawFormula::Exists(v, a) | RawFormula::Forall(v, a) => {
                scope.push(v.clone());
                let body = self.formula(a, scope, free_ok);
                scope.pop();
                if matches!(f, RawFormula::Exists(..)) {
                    Formula::exists(v, body?)
                } else {
                    Formula::forall(v, body?)
                }
            }
        })
    }
}

fn head_vars(args: &[RawTerm], vocab: &Vocabulary, out: &mut Vec<String>) {
    for a in args {
        match a {
            RawTerm::Name(n, _) => {
                if !vocab.contains(n) && !out.contains(n) {
                    out.push(n.clone());
                }
            }
            RawTerm::App(_, inner, _) => head_vars(inner, vocab, out),
        }
    }
}

fn resolve_atom(problem: &Problem, a: &RawAtom) -> PResult<usize> {
    let args: Vec<&str> = a.args.iter().map(String::as_str).collect();
    problem
        .universe()
        .lookup(&a.pred, &args)
        .ok_or_else(|| ParseError { line: a.pos.line, col: a.pos.col, message: format!("unknown defined atom `{}`", atom_text(a)) })
}

fn atom_text(a: &RawAtom) -> String {
    if a.args.is_empty() {
        a.pred.clone()
    } else {
        format!("{}({})", a.pred, a.args.join(","))
    }
}

/// Parses a complete problem file.
pub fn parse_problem(text: &str) -> PResult<Problem> {
    let mut p = Parser::new(text)?;
    let raw = parse_raw(&mut p)?;
    let Some((domain, dpos)) = &raw.domain else {
        return err(Pos { line: 1, col: 1 }, "missing `domain` declaration");
    };
    let mut context = FiniteStructure::new(domain).or_else(|e| err(*dpos, e.to_string()))?;
    let elem = |name: &str, pos: Pos| -> PResult<Elem> {
        domain.iter().position(|d| d == name).map(|i| i as Elem).ok_or_else(|| ParseError {
            line: pos.line,
            col: pos.col,
            message: format!("`{name}` is not a domain element"),
        })
    };
    let heads: BTreeSet<&str> = raw.rules.iter().map(|r| r.head.as_str()).collect();
    for (name, d) in &raw.preds {
        match (&d.tuples, heads.contains(name.as_str())) {
            (Some(_), true) => return err(d.pos, format!("defined predicate `{name}` cannot have an extension")),
            (None, false) => return err(d.pos, format!("parameter `{name}` has no extension")),
            (None, true) => {}
            (Some(ts), false) => {
                let mut set = BTreeSet::new();
                for (t, tpos) in ts {
                    if t.len() != d.arity {
                        return err(*tpos, format!("tuple of length {} for `{name}`/{}", t.len(), d.arity));
                    }
                    set.insert(t.iter().map(|x| elem(x, *tpos)).collect::<PResult<Vec<_>>>()?);
                }
                context.set_predicate(name, d.arity, set).or_else(|e| err(d.pos, e.to_string()))?;
            }
        }
    }
    for (name, f) in &raw.funs {
        let mut table = BTreeMap::new();
        for (args, v, tpos) in &f.table {
            if args.len() != f.arity {
                return err(*tpos, format!("entry of length {} for `{name}`/{}", args.len(), f.arity));
            }
            let key = args.iter().map(|x| elem(x, *tpos)).collect::<PResult<Vec<_>>>()?;
            if table.insert(key, elem(v, *tpos)?).is_some() {
                return err(*tpos, format!("duplicate entry for `{name}`"));
            }
        }
        context.set_function(name, f.arity, &table).or_else(|e| err(f.pos, e.to_string()))?;
    }
    for (name, (v, opos)) in &raw.objs {
        context.set_object(name, elem(v, *opos)?).or_else(|e| err(*opos, e.to_string()))?;
    }
    let mut vocab = context.vocabulary().clone();
    let mut preds: BTreeMap<String, usize> = raw.preds.iter().map(|(n, d)| (n.clone(), d.arity)).collect();
    for r in &raw.rules {
        match raw.preds.get(&r.head) {
            None => return err(r.pos, format!("undeclared predicate `{}`", r.head)),
            Some(d) if d.arity != r.args.len() => {
                return err(r.pos, format!("`{}` takes {} arguments, found {}", r.head, d.arity, r.args.len()))
            }
            _ => {}
        }
    }
    for (n, d) in &raw.preds {
        if d.tuples.is_none() {
            let _ = vocab.insert(defkernel_core::Symbol::predicate(n, d.arity));
        }
        preds.insert(n.clone(), d.arity);
    }
    let resolver = Resolver { vocab: context.vocabulary(), preds: &preds };
    let mut rules = Vec::new();
    for r in &raw.rules {
        let mut scope = Vec::new();
        head_vars(&r.args, context.vocabulary(), &mut scope);
        let args = r.args.iter().map(|t| resolver.term(t, &scope, false)).collect::<PResult<Vec<_>>>()?;
        let body = resolver.formula(&r.body, &mut scope.clone(), false)?;
        let rule = normalize_rule(&GeneralRule { head: r.head.clone(), args, body }).or_else(|e| err(r.pos, e.to_string()))?;
        rules.push(rule);
    }
    let dpos = raw.define_pos.unwrap_or_default();
    if rules.is_empty() {
        return err(dpos, "no rules: a `define` block is required");
    }
    let mut problem = Problem::new(Definition::new(rules), context).or_else(|e| err(dpos, e.to_string()))?;
    if let Some(chains) = &raw.order {
        let mut rel = AtomRelation::empty(problem.len());
        for chain in chains {
            let ids = chain.iter().map(|a| resolve_atom(&problem, a)).collect::<PResult<Vec<_>>>()?;
            for w in ids.windows(2) {
                rel.insert(w[0], w[1]);
            }
        }
        problem = problem.with_relation(rel.transitive_closure()).or_else(|e| err(dpos, e.to_string()))?;
    }
    let mut ex = Expectations::default();
    for (name, atoms) in &raw.expect_sets {
        let mut set = problem.empty_set();
        for a in atoms {
            set.insert(resolve_atom(&problem, a)?);
        }
        match name.as_str() {
            "defined" => ex.defined = Some(set),
            "underivable" => ex.underivable = Some(set),
            _ => ex.undecided = Some(set),
        }
    }
    ex.flags = raw.expect_flags.clone();
    Ok(problem.with_expectations(ex))
}

fn expect_end(p: &Parser) -> PResult<()> {
    match p.peek() {
        Tok::Eof => Ok(()),
        other => err(p.pos(), format!("unexpected {other} after end")),
    }
}

/// Parses a formula against a vocabulary; unknown bare names become free variables.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> PResult<Formula> {
    let mut p = Parser::new(text)?;
    let raw = p.formula()?;
    expect_end(&p)?;
    let preds: BTreeMap<String, usize> =
        vocab.iter().filter(|s| s.kind == SymbolKind::Predicate).map(|s| (s.name.clone(), s.arity)).collect();
    Resolver { vocab, preds: &preds }.formula(&raw, &mut Vec::new(), true)
}

/// The context vocabulary plus the defined predicates.
pub fn problem_vocabulary(problem: &Problem) -> Vocabulary {
    let mut v = problem.context().vocabulary().clone();
    for s in problem.universe().predicates() {
        let _ = v.insert(s.clone());
    }
    v
}

/// Parses `P`, `P()` or `R(a,b)` against the problem's universe.
pub fn parse_atom(problem: &Problem, text: &str) -> PResult<usize> {
    let mut p = Parser::new(text)?;
    let a = p.ground_atom()?;
    expect_end(&p)?;
    resolve_atom(problem, &a)
}

/// Parses `(p & ~q) | q | ~p`.
pub fn parse_dnf(text: &str) -> PResult<DnfFormula> {
    let mut p = Parser::new(text)?;
    let mut disjuncts = Vec::new();
    loop {
        let open = p.eat(&Tok::LParen);
        let mut d = Disjunct::default();
        loop {
            let neg = p.eat(&Tok::Tilde);
            let (name, pos) = p.ident()?;
            if name == "true" || name == "false" {
                return err(pos, "constants are not literals");
            }
            if neg {
                d.neg.insert(name);
            } else {
                d.pos.insert(name);
            }
            if !p.eat(&Tok::Amp) {
                break;
            }
        }
        if open {
            p.expect(Tok::RParen)?;
        }
        disjuncts.push(d);
        if !p.eat(&Tok::Bar) {
            break;
        }
    }
    expect_end(&p)?;
    DnfFormula::from_disjuncts(disjuncts).or_else(|e| err(Pos { line: 1, col: 1 }, e.to_string()))
}

fn write_tuple(out: &mut String, domain: &[String], t: &[Elem]) {
    out.push('(');
    for (i, e) in t.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&domain[*e as usize]);
    }
    out.push(')');
}

fn write_set(out: &mut String, problem: &Problem, set: &AtomSet) {
    out.push_str(&problem.names(set).join(" "));
}

/// Problem file text; `parse_problem(render_problem(p))` reproduces `p`.
pub fn render_problem(problem: &Problem) -> String {
    use defkernel_core::model::Interpretation;
    use std::fmt::Write;
    let ctx = problem.context();
    let domain = ctx.domain();
    let mut out = String::new();
    let _ = writeln!(out, "domain {} ;", domain.join(" "));
    for sym in ctx.vocabulary().iter() {
        match ctx.interpretation(&sym.name) {
            Some(Interpretation::Predicate(ts)) => {
                let _ = write!(out, "pred {}/{} = {{ ", sym.name, sym.arity);
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_tuple(&mut out, domain, t);
                }
                out.push_str(if ts.is_empty() { "} ;\n" } else { " } ;\n" });
            }
            Some(Interpretation::Function(table)) => {
                let _ = write!(out, "fun {}/{} = {{ ", sym.name, sym.arity);
                let n = domain.len();
                for (i, v) in table.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let mut args = vec![0 as Elem; sym.arity];
                    let mut rest = i;
                    for slot in args.iter_mut().rev() {
                        *slot = (rest % n) as Elem;
                        rest /= n;
                    }
                    write_tuple(&mut out, domain, &args);
                    let _ = write!(out, "->{}", domain[*v as usize]);
                }
                out.push_str(" } ;\n");
            }
            Some(Interpretation::Object(e)) => {
                let _ = writeln!(out, "obj {} = {} ;", sym.name, domain[*e as usize]);
            }
            None => {}
        }
    }
    for s in problem.universe().predicates() {
        let _ = writeln!(out, "pred {}/{} ;", s.name, s.arity);
    }
    out.push_str("define {\n");
    for r in &problem.definition().rules {
        let _ = writeln!(out, "  {r}");
    }
    out.push_str("}\n");
    if let Some(rel) = problem.declared_relation() {
        out.push_str("order {\n");
        for (a, b) in rel.pairs() {
            let _ = writeln!(out, "  {} < {}.", problem.name(a), problem.name(b));
        }
        out.push_str("}\n");
    }
    let ex = problem.expectations();
    for (name, set) in [("defined", &ex.defined), ("underivable", &ex.underivable), ("undecided", &ex.undecided)] {
        if let Some(s) = set {
            let _ = write!(out, "expect {name} {{");
            if !s.is_empty() {
                out.push(' ');
                write_set(&mut out, problem, s);
                out.push(' ');
            }
            out.push_str("} ;\n");
        }
    }
    for (k, v) in &ex.flags {
        let _ = writeln!(out, "expect {k} {v} ;");
    }
    out
}

pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TC: &str = "domain a b c ;
pred G/2 = { (a,a), (b,c), (c,b) } ;
pred R/2 ;
define {
  R(x,y) <- G(x,y).
  R(x,y) <- exists z: (R(x,z) & R(z,y)).
}
";

    #[test]
    fn tc_file() {
        let p = parse_problem(TC).unwrap();
        assert_eq!(p.definition().rules.len(), 2);
        assert_eq!(p.context().holds("G", &[1, 2]), Some(true));
        assert_eq!(p.len(), 9);
    }

    #[test]
    fn order_is_closed() {
        let text = "domain 0 1 2 ; pred Next/2 = { (0,1), (1,2) } ; obj zero = 0 ; pred Even/1 ;
            define { Even(zero) <- true. Even(x) <- exists y: (Next(y,x) & ~Even(y)). }
            order { Even(0) < Even(1). Even(1) < Even(2). }";
        let p = parse_problem(text).unwrap();
        let rel = p.declared_relation().unwrap();
        assert!(rel.contains(p.atom("Even(0)").unwrap(), p.atom("Even(2)").unwrap()));
        assert_eq!(p.definition().rules[0].to_string(), "Even($v0) <- $v0 = zero & true.");
    }

    #[test]
    fn malformed_head() {
        let e = parse_problem("domain a ; pred G/2 = {} ; pred R/2 ; define { R(x, <- G(x,x). }").unwrap_err();
        assert_eq!((e.line, e.col), (1, 53));
        assert!(e.message.contains("expected identifier"), "{}", e.message);
    }

    #[test]
    fn formulas() {
        let mut v = Vocabulary::new();
        v.insert(defkernel_core::Symbol::predicate("Even", 1)).unwrap();
        v.insert(defkernel_core::Symbol::predicate("R", 2)).unwrap();
        v.insert(defkernel_core::Symbol::predicate("G", 2)).unwrap();
        v.insert(defkernel_core::Symbol::predicate("Term", 1)).unwrap();
        assert_eq!(parse_formula("~Even(x)", &v).unwrap(), Formula::not(Formula::atom("Even", vec![Term::var("x")])));
        let f = parse_formula("exists z: (R(x,z) & R(z,y))", &v).unwrap();
        assert_eq!(f.to_string(), "exists z: (R(x,z) & R(z,y))");
        let f = parse_formula("forall y: (G(x,y) => Term(y))", &v).unwrap();
        let want = Formula::forall(
            "y",
            Formula::or(
                Formula::not(Formula::atom("G", vec![Term::var("x"), Term::var("y")])),
                Formula::atom("Term", vec![Term::var("y")]),
            ),
        );
        assert_eq!(f.desugar(), want);
        assert!(parse_formula("Foo(x)", &v).is_err());
        assert!(parse_formula("Even(x) Even(y)", &v).is_err());
    }

    #[test]
    fn dnf_text() {
        let d = parse_dnf("(p & ~q) | q | ~p").unwrap();
        assert_eq!(d.variables, vec!["p", "q"]);
        assert_eq!(d.disjuncts.len(), 3);
        assert_eq!(d.to_string(), "(p & ~q) | q | ~p");
        assert!(parse_dnf("p |").is_err());
    }
}
