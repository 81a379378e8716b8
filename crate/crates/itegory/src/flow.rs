//! The flowchart mini-language.
//!
//! A program declares finite sets and partial maps by name, binds
//! expressions, and runs directives:
//!
//! ```text
//! set X { s0 s1 s2 }
//! set A { done }
//! map f : X -> X { s0->s1 s1->s2 }
//! map g : X -> A { s2->done }
//! let loop = until g do f
//! eval loop at s0
//! ```
//!
//! `until g do f` is the loop construct: run `f` until `g` applies, then
//! emit `g`'s output, which is the guarded-iteration operator of
//! [`crate::wand`].
//! The other expression forms are composition `;`, join `|`, `star`,
//! `restrict`, `compl`, `zero SRC DST`, and `id SET`.
//!
//! The grammar is line-oriented and whitespace-insensitive inside braces;
//! `#` starts a comment. Names are resolved and shapes are checked at
//! parse time, so every diagnostic carries a line and column. The
//! disjointness required by `until` and `|` depends on map values, not
//! shapes, so it is checked at evaluation time; a violation is a
//! *semantic* error naming the overlapping element. Partiality itself is
//! never an error: an undefined result prints as the literal token
//! `undefined`.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::finpar::{FinObj, PartialMap, RestIdem};
use crate::interference::InterferenceRel;
use crate::wand::{complement, kleene_wand0, upper_star};

/// A diagnostic from parsing or evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowError {
    /// Lexical, syntactic, name-resolution, or shape errors, with the
    /// position they were detected at.
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    /// Evaluation-time violations: overlapping domains in `until`/`|`,
    /// or `compl` of a map that is not a restriction idempotent.
    Semantic { message: String },
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::Parse { line, col, message } => {
                write!(f, "parse error at {line}:{col}: {message}")
            }
            FlowError::Semantic { message } => write!(f, "semantic error: {message}"),
        }
    }
}

impl std::error::Error for FlowError {}

/// Expression syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ref(String),
    /// Diagrammatic composition `e1 ; e2`.
    Seq(Box<Expr>, Box<Expr>),
    /// Disjoint join `e1 | e2`.
    Join(Box<Expr>, Box<Expr>),
    /// `until GUARD do BODY`: iterate the body until the guard applies.
    Until { guard: String, body: Box<Expr> },
    Star(Box<Expr>),
    Restrict(Box<Expr>),
    Compl(Box<Expr>),
    Zero(String, String),
    Id(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Eval { target: String, at: String },
    Check { left: String, right: String },
}

/// A parsed, name-resolved, shape-checked program.
#[derive(Clone, Debug)]
pub struct Program {
    sets: Vec<(String, FinObj)>,
    maps: Vec<(String, PartialMap)>,
    lets: Vec<(String, Expr)>,
    directives: Vec<Directive>,
}

impl Program {
    pub fn sets(&self) -> &[(String, FinObj)] {
        &self.sets
    }

    pub fn maps(&self) -> &[(String, PartialMap)] {
        &self.maps
    }

    pub fn lets(&self) -> &[(String, Expr)] {
        &self.lets
    }

    pub fn directives(&self) -> &[Directive] {
        &self.directives
    }

    fn set(&self, name: &str) -> Option<&FinObj> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    fn value(&self, name: &str) -> Option<ValueRef<'_>> {
        if let Some((_, m)) = self.maps.iter().find(|(n, _)| n == name) {
            return Some(ValueRef::Map(m));
        }
        if let Some((_, e)) = self.lets.iter().find(|(n, _)| n == name) {
            return Some(ValueRef::Binding(e));
        }
        None
    }
}

enum ValueRef<'a> {
    Map(&'a PartialMap),
    Binding(&'a Expr),
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Arrow,
    Eq,
    Semi,
    Pipe,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Newline,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Newline => write!(f, "end of line"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, FlowError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let mut chars = line.char_indices().peekable();
        while let Some(&(byte, c)) = chars.peek() {
            let col = byte + 1;
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    chars.next();
                }
                ':' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::Colon, line: line_no, col });
                }
                '=' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::Eq, line: line_no, col });
                }
                ';' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::Semi, line: line_no, col });
                }
                '|' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::Pipe, line: line_no, col });
                }
                '(' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::LParen, line: line_no, col });
                }
                ')' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::RParen, line: line_no, col });
                }
                '{' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::LBrace, line: line_no, col });
                }
                '}' => {
                    chars.next();
                    out.push(Spanned { tok: Tok::RBrace, line: line_no, col });
                }
                '-' => {
                    chars.next();
                    match chars.peek() {
                        Some(&(_, '>')) => {
                            chars.next();
                            out.push(Spanned { tok: Tok::Arrow, line: line_no, col });
                        }
                        _ => {
                            return Err(FlowError::Parse {
                                line: line_no,
                                col,
                                message: "expected `->`".into(),
                            })
                        }
                    }
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let mut ident = String::new();
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_alphanumeric() || c == '_' {
                            ident.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push(Spanned { tok: Tok::Ident(ident), line: line_no, col });
                }
                other => {
                    return Err(FlowError::Parse {
                        line: line_no,
                        col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        out.push(Spanned { tok: Tok::Newline, line: line_no, col: line.len() + 1 });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    program: Program,
}

/// Shapes inferred for bindings during parsing.
type Shapes = HashMap<String, (FinObj, FinObj)>;

pub fn parse(text: &str) -> Result<Program, FlowError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        program: Program {
            sets: Vec::new(),
            maps: Vec::new(),
            lets: Vec::new(),
            directives: Vec::new(),
        },
    };
    let mut shapes: Shapes = HashMap::new();
    while !parser.at_end() {
        parser.skip_newlines();
        if parser.at_end() {
            break;
        }
        parser.statement(&mut shapes)?;
    }
    Ok(parser.program)
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(s) => (s.line, s.col),
            None => self
                .toks
                .last()
                .map(|s| (s.line, s.col))
                .unwrap_or((1, 1)),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, FlowError> {
        let (line, col) = self.here();
        Err(FlowError::Parse {
            line,
            col,
            message: message.into(),
        })
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Newline)) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FlowError> {
        match self.peek() {
            Some(s) if s.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(s) => {
                let found = s.tok.clone();
                self.fail(format!("expected {tok}, found {found}"))
            }
            None => self.fail(format!("expected {tok}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, FlowError> {
        match self.peek().cloned() {
            Some(Spanned { tok: Tok::Ident(name), .. }) => {
                self.pos += 1;
                Ok(name)
            }
            Some(s) => {
                let found = s.tok.clone();
                self.fail(format!("expected {what}, found {found}"))
            }
            None => self.fail(format!("expected {what}, found end of input")),
        }
    }

    fn end_statement(&mut self) -> Result<(), FlowError> {
        match self.peek() {
            None => Ok(()),
            Some(s) if s.tok == Tok::Newline => {
                self.pos += 1;
                Ok(())
            }
            Some(s) => {
                let found = s.tok.clone();
                self.fail(format!("expected end of line, found {found}"))
            }
        }
    }

    fn statement(&mut self, shapes: &mut Shapes) -> Result<(), FlowError> {
        let keyword = self.ident("a statement keyword")?;
        match keyword.as_str() {
            "set" => self.set_decl(),
            "map" => self.map_decl(shapes),
            "let" => self.let_decl(shapes),
            "eval" => self.eval_directive(shapes),
            "check" => self.check_directive(shapes),
            other => self.fail(format!(
                "expected one of set/map/let/eval/check, found `{other}`"
            )),
        }
    }

    fn declare_unique(&self, kind: &str, name: &str) -> Result<(), FlowError> {
        let clash = match kind {
            "set" => self.program.set(name).is_some(),
            _ => self.program.value(name).is_some(),
        };
        if clash {
            return self.fail(format!("{kind} name `{name}` is already declared"));
        }
        Ok(())
    }

    fn set_decl(&mut self) -> Result<(), FlowError> {
        let name = self.ident("a set name")?;
        self.declare_unique("set", &name)?;
        self.expect(Tok::LBrace)?;
        let mut labels = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek().cloned() {
                Some(Spanned { tok: Tok::RBrace, .. }) => {
                    self.pos += 1;
                    break;
                }
                Some(Spanned { tok: Tok::Ident(l), .. }) => {
                    self.pos += 1;
                    labels.push(l);
                }
                _ => return self.fail("expected an element label or `}`"),
            }
        }
        let obj = match FinObj::labeled(labels) {
            Ok(obj) => obj,
            Err(Error::Invalid { detail, .. }) => return self.fail(detail),
            Err(e) => return self.fail(e.to_string()),
        };
        self.program.sets.push((name, obj));
        self.end_statement()
    }

    fn map_decl(&mut self, shapes: &mut Shapes) -> Result<(), FlowError> {
        let name = self.ident("a map name")?;
        self.declare_unique("map", &name)?;
        self.expect(Tok::Colon)?;
        let src_name = self.ident("a source set name")?;
        let src = match self.program.set(&src_name) {
            Some(o) => o.clone(),
            None => return self.fail(format!("unknown set `{src_name}`")),
        };
        self.expect(Tok::Arrow)?;
        let dst_name = self.ident("a target set name")?;
        let dst = match self.program.set(&dst_name) {
            Some(o) => o.clone(),
            None => return self.fail(format!("unknown set `{dst_name}`")),
        };
        self.expect(Tok::LBrace)?;
        let mut entries: Vec<(usize, usize)> = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek().cloned() {
                Some(Spanned { tok: Tok::RBrace, .. }) => {
                    self.pos += 1;
                    break;
                }
                Some(Spanned { tok: Tok::Ident(from), .. }) => {
                    self.pos += 1;
                    let x = match src.index_of(&from) {
                        Some(x) => x,
                        None => {
                            return self.fail(format!("`{from}` is not an element of `{src_name}`"))
                        }
                    };
                    self.expect(Tok::Arrow)?;
                    let to = self.ident("a target element label")?;
                    let y = match dst.index_of(&to) {
                        Some(y) => y,
                        None => {
                            return self.fail(format!("`{to}` is not an element of `{dst_name}`"))
                        }
                    };
                    entries.push((x, y));
                }
                _ => return self.fail("expected an entry `from->to` or `}`"),
            }
        }
        let map = match PartialMap::from_entries(src.clone(), dst.clone(), &entries) {
            Ok(m) => m,
            Err(Error::Invalid { detail, .. }) => return self.fail(detail),
            Err(e) => return self.fail(e.to_string()),
        };
        shapes.insert(name.clone(), (src, dst));
        self.program.maps.push((name, map));
        self.end_statement()
    }

    fn let_decl(&mut self, shapes: &mut Shapes) -> Result<(), FlowError> {
        let name = self.ident("a binding name")?;
        self.declare_unique("let", &name)?;
        self.expect(Tok::Eq)?;
        let expr = self.expr(shapes)?;
        let shape = self.infer(&expr, shapes)?;
        shapes.insert(name.clone(), shape);
        self.program.lets.push((name, expr));
        self.end_statement()
    }

    fn eval_directive(&mut self, shapes: &mut Shapes) -> Result<(), FlowError> {
        let target = self.ident("a bound name")?;
        let (dom, _) = match shapes.get(&target) {
            Some(s) => s.clone(),
            None => return self.fail(format!("unknown name `{target}`")),
        };
        let at_kw = self.ident("`at`")?;
        if at_kw != "at" {
            return self.fail(format!("expected `at`, found `{at_kw}`"));
        }
        let label = self.ident("an element label")?;
        if dom.index_of(&label).is_none() {
            return self.fail(format!("`{label}` is not an element of the domain of `{target}`"));
        }
        self.program.directives.push(Directive::Eval { target, at: label });
        self.end_statement()
    }

    fn check_directive(&mut self, shapes: &mut Shapes) -> Result<(), FlowError> {
        let left = self.ident("a bound name")?;
        let (ldom, _) = match shapes.get(&left) {
            Some(s) => s.clone(),
            None => return self.fail(format!("unknown name `{left}`")),
        };
        let kw = self.ident("`disjoint`")?;
        if kw != "disjoint" {
            return self.fail(format!("expected `disjoint`, found `{kw}`"));
        }
        let right = self.ident("a bound name")?;
        let (rdom, _) = match shapes.get(&right) {
            Some(s) => s.clone(),
            None => return self.fail(format!("unknown name `{right}`")),
        };
        if !ldom.compatible(&rdom) {
            return self.fail(format!(
                "`{left}` and `{right}` have different domains ({ldom} vs {rdom})"
            ));
        }
        self.program.directives.push(Directive::Check { left, right });
        self.end_statement()
    }

    // expr := join; join := seq ('|' seq)*; seq := unary (';' unary)*
    fn expr(&mut self, shapes: &Shapes) -> Result<Expr, FlowError> {
        let mut lhs = self.seq(shapes)?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Pipe)) {
            self.pos += 1;
            let rhs = self.seq(shapes)?;
            lhs = Expr::Join(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn seq(&mut self, shapes: &Shapes) -> Result<Expr, FlowError> {
        let mut lhs = self.unary(shapes)?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Semi)) {
            self.pos += 1;
            let rhs = self.unary(shapes)?;
            lhs = Expr::Seq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self, shapes: &Shapes) -> Result<Expr, FlowError> {
        match self.peek().cloned() {
            Some(Spanned { tok: Tok::LParen, .. }) => {
                self.pos += 1;
                let inner = self.expr(shapes)?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Spanned { tok: Tok::Ident(word), .. }) => {
                self.pos += 1;
                match word.as_str() {
                    "until" => {
                        let guard = self.ident("a guard name")?;
                        if shapes.get(&guard).is_none() {
                            return self.fail(format!("unknown name `{guard}`"));
                        }
                        let do_kw = self.ident("`do`")?;
                        if do_kw != "do" {
                            return self.fail(format!("expected `do`, found `{do_kw}`"));
                        }
                        let body = self.unary(shapes)?;
                        Ok(Expr::Until { guard, body: Box::new(body) })
                    }
                    "star" => Ok(Expr::Star(Box::new(self.unary(shapes)?))),
                    "restrict" => Ok(Expr::Restrict(Box::new(self.unary(shapes)?))),
                    "compl" => Ok(Expr::Compl(Box::new(self.unary(shapes)?))),
                    "zero" => {
                        let src = self.ident("a source set name")?;
                        if self.program.set(&src).is_none() {
                            return self.fail(format!("unknown set `{src}`"));
                        }
                        let dst = self.ident("a target set name")?;
                        if self.program.set(&dst).is_none() {
                            return self.fail(format!("unknown set `{dst}`"));
                        }
                        Ok(Expr::Zero(src, dst))
                    }
                    "id" => {
                        let set = self.ident("a set name")?;
                        if self.program.set(&set).is_none() {
                            return self.fail(format!("unknown set `{set}`"));
                        }
                        Ok(Expr::Id(set))
                    }
                    name => {
                        if shapes.get(name).is_none() {
                            return self.fail(format!("unknown name `{name}`"));
                        }
                        Ok(Expr::Ref(name.to_string()))
                    }
                }
            }
            Some(s) => {
                let found = s.tok.clone();
                self.fail(format!("expected an expression, found {found}"))
            }
            None => self.fail("expected an expression, found end of input"),
        }
    }

    /// Infer the (dom, cod) shape of an expression, reporting shape and
    /// typing errors at the current statement's position.
    fn infer(&self, expr: &Expr, shapes: &Shapes) -> Result<(FinObj, FinObj), FlowError> {
        match expr {
            Expr::Ref(name) => shapes
                .get(name)
                .cloned()
                .ok_or(())
                .or_else(|_| self.fail(format!("unknown name `{name}`"))),
            Expr::Seq(e1, e2) => {
                let (d1, c1) = self.infer(e1, shapes)?;
                let (d2, c2) = self.infer(e2, shapes)?;
                if !c1.compatible(&d2) {
                    return self.fail(format!(
                        "cannot compose: left ends in {c1} but right starts from {d2}"
                    ));
                }
                Ok((d1, c2))
            }
            Expr::Join(e1, e2) => {
                let (d1, c1) = self.infer(e1, shapes)?;
                let (d2, c2) = self.infer(e2, shapes)?;
                if !d1.compatible(&d2) || !c1.compatible(&c2) {
                    return self.fail(format!(
                        "cannot join maps of different shapes ({d1} -> {c1} vs {d2} -> {c2})"
                    ));
                }
                Ok((d1, c1))
            }
            Expr::Until { guard, body } => {
                let (bd, bc) = self.infer(body, shapes)?;
                if !bd.compatible(&bc) {
                    return self.fail("body must be an endomorphism".to_string());
                }
                let (gd, gc) = shapes
                    .get(guard)
                    .cloned()
                    .ok_or(())
                    .or_else(|_| self.fail(format!("unknown name `{guard}`")))?;
                if !gd.compatible(&bd) {
                    return self.fail(format!(
                        "guard domain {gd} does not match body domain {bd}"
                    ));
                }
                Ok((bd, gc))
            }
            Expr::Star(e) => {
                let (d, c) = self.infer(e, shapes)?;
                if !d.compatible(&c) {
                    return self.fail("star requires an endomorphism".to_string());
                }
                Ok((d, c))
            }
            Expr::Restrict(e) => {
                let (d, _) = self.infer(e, shapes)?;
                Ok((d.clone(), d))
            }
            Expr::Compl(e) => {
                let (d, c) = self.infer(e, shapes)?;
                if !d.compatible(&c) {
                    return self.fail("compl requires a restriction idempotent".to_string());
                }
                Ok((d, c))
            }
            Expr::Zero(src, dst) => Ok((
                self.program.set(src).cloned().expect("checked at parse"),
                self.program.set(dst).cloned().expect("checked at parse"),
            )),
            Expr::Id(set) => {
                let o = self.program.set(set).cloned().expect("checked at parse");
                Ok((o.clone(), o))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

fn semantic(message: impl Into<String>) -> FlowError {
    FlowError::Semantic {
        message: message.into(),
    }
}

/// Evaluate an expression into the finite model.
pub fn eval_expr(program: &Program, expr: &Expr) -> Result<PartialMap, FlowError> {
    match expr {
        Expr::Ref(name) => match program.value(name) {
            Some(ValueRef::Map(m)) => Ok(m.clone()),
            Some(ValueRef::Binding(e)) => eval_expr(program, e),
            None => Err(semantic(format!("unknown name `{name}`"))),
        },
        Expr::Seq(e1, e2) => {
            let m1 = eval_expr(program, e1)?;
            let m2 = eval_expr(program, e2)?;
            m1.compose(&m2).map_err(|e| semantic(e.to_string()))
        }
        Expr::Join(e1, e2) => {
            let m1 = eval_expr(program, e1)?;
            let m2 = eval_expr(program, e2)?;
            InterferenceRel::maximal()
                .join_maps(m1.dom(), m1.cod(), &[m1.clone(), m2])
                .map_err(|e| semantic(e.to_string()))
        }
        Expr::Until { guard, body } => {
            let body_map = eval_expr(program, body)?;
            let guard_map = eval_expr(program, &Expr::Ref(guard.clone()))?;
            kleene_wand0(&body_map, &guard_map).map_err(|e| semantic(e.to_string()))
        }
        Expr::Star(e) => {
            let m = eval_expr(program, e)?;
            upper_star(&m).map_err(|e| semantic(e.to_string()))
        }
        Expr::Restrict(e) => Ok(eval_expr(program, e)?.restriction().into_map()),
        Expr::Compl(e) => {
            let m = eval_expr(program, e)?;
            let idem = RestIdem::try_new(m).map_err(|e| semantic(e.to_string()))?;
            Ok(complement(&idem).into_map())
        }
        Expr::Zero(src, dst) => Ok(PartialMap::zero(
            program.set(src).expect("resolved at parse"),
            program.set(dst).expect("resolved at parse"),
        )),
        Expr::Id(set) => Ok(PartialMap::identity(program.set(set).expect("resolved at parse"))),
    }
}

/// Run every directive, producing one output line per directive.
pub fn run_program(program: &Program) -> Result<Vec<String>, FlowError> {
    let mut out = Vec::new();
    for directive in &program.directives {
        match directive {
            Directive::Eval { target, at } => {
                let map = eval_expr(program, &Expr::Ref(target.clone()))?;
                let x = map
                    .dom()
                    .index_of(at)
                    .ok_or_else(|| semantic(format!("`{at}` is not in the domain of `{target}`")))?;
                out.push(match map.apply(x) {
                    None => "undefined".to_string(),
                    Some(y) => map
                        .cod()
                        .label_of(y)
                        .map(str::to_string)
                        .unwrap_or_else(|| y.to_string()),
                });
            }
            Directive::Check { left, right } => {
                let lm = eval_expr(program, &Expr::Ref(left.clone()))?;
                let rm = eval_expr(program, &Expr::Ref(right.clone()))?;
                let disjoint = InterferenceRel::maximal()
                    .perp(&lm, &rm)
                    .map_err(|e| semantic(e.to_string()))?;
                out.push(disjoint.to_string());
            }
        }
    }
    Ok(out)
}

/// Parse and run in one step.
pub fn run_text(text: &str) -> Result<Vec<String>, FlowError> {
    run_program(&parse(text)?)
}

// ---------------------------------------------------------------------------
// printer
// ---------------------------------------------------------------------------

fn print_expr(expr: &Expr, out: &mut String, level: u8) {
    // levels: 0 join, 1 seq, 2 unary
    let this_level = match expr {
        Expr::Join(..) => 0,
        Expr::Seq(..) => 1,
        _ => 2,
    };
    let need_parens = this_level < level;
    if need_parens {
        out.push('(');
    }
    match expr {
        Expr::Ref(name) => out.push_str(name),
        Expr::Seq(a, b) => {
            print_expr(a, out, 1);
            out.push_str(" ; ");
            print_expr(b, out, 2);
        }
        Expr::Join(a, b) => {
            print_expr(a, out, 0);
            out.push_str(" | ");
            print_expr(b, out, 1);
        }
        Expr::Until { guard, body } => {
            out.push_str("until ");
            out.push_str(guard);
            out.push_str(" do ");
            print_expr(body, out, 2);
        }
        Expr::Star(e) => {
            out.push_str("star ");
            print_expr(e, out, 2);
        }
        Expr::Restrict(e) => {
            out.push_str("restrict ");
            print_expr(e, out, 2);
        }
        Expr::Compl(e) => {
            out.push_str("compl ");
            print_expr(e, out, 2);
        }
        Expr::Zero(s, d) => {
            out.push_str("zero ");
            out.push_str(s);
            out.push(' ');
            out.push_str(d);
        }
        Expr::Id(s) => {
            out.push_str("id ");
            out.push_str(s);
        }
    }
    if need_parens {
        out.push(')');
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, obj) in &self.sets {
            let labels = obj.labels().unwrap_or(&[]);
            writeln!(f, "set {name} {{ {} }}", labels.join(" "))?;
        }
        for (name, map) in &self.maps {
            let src = self
                .sets
                .iter()
                .find(|(_, o)| o.compatible(map.dom()))
                .map(|(n, _)| n.as_str())
                .unwrap_or("?");
            let dst = self
                .sets
                .iter()
                .find(|(_, o)| o.compatible(map.cod()))
                .map(|(n, _)| n.as_str())
                .unwrap_or("?");
            let mut entries = Vec::new();
            for (x, e) in map.table().iter().enumerate() {
                if let Some(y) = e {
                    let from = map.dom().label_of(x).unwrap_or_default().to_string();
                    let to = map.cod().label_of(*y).unwrap_or_default().to_string();
                    entries.push(format!("{from}->{to}"));
                }
            }
            writeln!(f, "map {name} : {src} -> {dst} {{ {} }}", entries.join(" "))?;
        }
        for (name, expr) in &self.lets {
            let mut rendered = String::new();
            print_expr(expr, &mut rendered, 0);
            writeln!(f, "let {name} = {rendered}")?;
        }
        for directive in &self.directives {
            match directive {
                Directive::Eval { target, at } => writeln!(f, "eval {target} at {at}")?,
                Directive::Check { left, right } => {
                    writeln!(f, "check {left} disjoint {right}")?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP_PROGRAM: &str = "\
set X { s0 s1 s2 }
set A { done }
map f : X -> X { s0->s1 s1->s2 }
map g : X -> A { s2->done }
let loop = until g do f
eval loop at s0
";

    #[test]
    fn worked_program_parses_to_expected_shape() {
        let p = parse(LOOP_PROGRAM).unwrap();
        assert_eq!(p.sets().len(), 2);
        assert_eq!(p.maps().len(), 2);
        assert_eq!(p.lets().len(), 1);
        assert_eq!(p.directives().len(), 1);
    }

    #[test]
    fn loop_program_runs_to_done() {
        assert_eq!(run_text(LOOP_PROGRAM).unwrap(), vec!["done"]);
    }

    #[test]
    fn cyclic_variant_is_undefined() {
        let text = "\
set X { s0 s1 s2 }
set A { done }
map f : X -> X { s0->s1 s1->s0 }
map g : X -> A { s2->done }
let loop = until g do f
eval loop at s1
eval loop at s2
";
        assert_eq!(run_text(text).unwrap(), vec!["undefined", "done"]);
    }

    #[test]
    fn restrict_and_star_and_join() {
        let text = "\
set X { s0 s1 s2 }
map f : X -> X { s0->s1 s1->s2 }
map h : X -> X { s2->s0 }
let r = restrict f
let st = star f
let both = f | h
eval r at s0
eval st at s0
eval both at s2
";
        assert_eq!(run_text(text).unwrap(), vec!["s0", "s2", "s0"]);
    }

    #[test]
    fn non_endomorphic_until_is_a_type_error() {
        let text = "\
set X { s0 }
set Y { t0 }
map f : X -> Y { s0->t0 }
map g : X -> Y { }
let bad = until g do f
";
        match parse(text) {
            Err(FlowError::Parse { line, message, .. }) => {
                assert_eq!(line, 5);
                assert!(message.contains("endomorphism"), "{message}");
            }
            other => panic!("expected a type error, got {other:?}"),
        }
    }

    #[test]
    fn unbalanced_braces_report_position() {
        let text = "set X { s0 s1\nmap f : X -> X { }\n";
        match parse(text) {
            Err(FlowError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn overlap_in_until_is_a_semantic_error_naming_the_element() {
        let text = "\
set X { s0 s1 }
set A { done }
map f : X -> X { s0->s1 }
map g : X -> A { s0->done }
let bad = until g do f
eval bad at s0
";
        match run_text(text) {
            Err(FlowError::Semantic { message }) => {
                assert!(message.contains("s0"), "{message}");
            }
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn compl_requires_an_idempotent() {
        let text = "\
set X { s0 s1 }
map f : X -> X { s0->s1 }
let c = compl f
eval c at s0
";
        assert!(matches!(run_text(text), Err(FlowError::Semantic { .. })));
    }

    #[test]
    fn check_directive_prints_truth() {
        let text = "\
set X { s0 s1 }
set A { done }
map f : X -> A { s0->done }
map g : X -> A { s1->done }
map h : X -> A { s0->done }
check f disjoint g
check f disjoint h
";
        assert_eq!(run_text(text).unwrap(), vec!["true", "false"]);
    }

    #[test]
    fn print_parse_round_trip_is_identity() {
        let programs = [
            LOOP_PROGRAM,
            "set X { a b }\nmap f : X -> X { a->b }\nlet t = (f ; f) | restrict f\neval t at a\n",
            "set X { a }\nlet z = zero X X\nlet i = id X\ncheck z disjoint i\n",
        ];
        for text in programs {
            let once = parse(text).unwrap().to_string();
            let twice = parse(&once).unwrap().to_string();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn until_guard_with_trailing_semantics_matches_simulation() {
        use crate::lawlab::step_simulate;
        let p = parse(LOOP_PROGRAM).unwrap();
        let loop_map = eval_expr(&p, &Expr::Ref("loop".into())).unwrap();
        let f = &p.maps()[0].1;
        let g = &p.maps()[1].1;
        for x in 0..3 {
            assert_eq!(loop_map.apply(x), step_simulate(f, g, x).unwrap());
        }
    }
}
