//! Surface syntax: lexer, parser, scope resolution and pretty-printer.
//!
//! The grammar is whitespace-insensitive with `--` line comments:
//!
//! ```text
//! file    := ("level" NAT ";")? ext* "sig" IDENT "{" entry* "}"
//! ext     := "external" IDENT (":" IDENT)? ";"
//! entry   := IDENT ":" expr ";"
//! expr    := "(" IDENT ":" expr ")" arrow expr
//!          | app (arrow expr)?
//! arrow   := ("->" | "=>") ("ext" | "inf")?
//! app     := atom (atom | "[" metaexpr "]")*
//! atom    := IDENT | "U" | "El" atom | "Id" atom atom atom | "Refl" atom
//!          | "Bool" | "Fin" NAT | "(" expr ")"
//! metaexpr:= IDENT | "true" | "false" | NAT
//! ```
//!
//! Arrows are classified by the elaborator according to the kind of their
//! domain; `ext`/`inf` markers force the external or infinitary reading.

mod lexer;
mod parser;
mod printer;
mod resolve;

pub use parser::parse;
pub use printer::print;
pub use resolve::resolve;

use thiserror::Error;

/// A source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("{span}: error: expected {expected}, found {found}")]
    Syntax {
        span: Span,
        expected: String,
        found: String,
    },
    #[error("{span}: error: duplicate name `{name}`")]
    DuplicateName { name: String, span: Span },
    #[error("{span}: error: unbound name `{name}`")]
    UnboundName { name: String, span: Span },
}

impl SurfaceError {
    pub fn span(&self) -> Span {
        match self {
            SurfaceError::Syntax { span, .. }
            | SurfaceError::DuplicateName { span, .. }
            | SurfaceError::UnboundName { span, .. } => *span,
        }
    }
}

/// A parsed signature file before elaboration.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSignature {
    pub name: String,
    pub level: u64,
    pub externals: Vec<RawExternal>,
    pub entries: Vec<RawEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawExternal {
    pub name: String,
    /// `None` declares an opaque set; `Some(s)` an opaque constant of the
    /// declared set `s`.
    pub of_set: Option<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawEntry {
    pub name: String,
    pub ty: RawExpr,
    pub span: Span,
}

/// What an identifier occurrence refers to, filled in by [`resolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefKind {
    /// Telescope entry or local binder, as a de Bruijn index at the use
    /// site (entries and binders share one index space).
    Local(usize),
    /// A declared external set.
    ExtSet,
    /// A declared external constant.
    ExtConst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Plain,
    Ext,
    Inf,
}

/// Surface expressions; types and terms share this tree and are told
/// apart during elaboration.
#[derive(Debug, Clone, PartialEq)]
pub enum RawExpr {
    Ident {
        name: String,
        span: Span,
        resolved: Option<RefKind>,
    },
    U(Span),
    El(Box<RawExpr>, Span),
    Arrow {
        binder: Option<String>,
        marker: Marker,
        dom: Box<RawExpr>,
        cod: Box<RawExpr>,
        span: Span,
    },
    App(Box<RawExpr>, Box<RawExpr>, Span),
    MetaApp(Box<RawExpr>, RawMetaExpr, Span),
    Id(Box<RawExpr>, Box<RawExpr>, Box<RawExpr>, Span),
    Refl(Box<RawExpr>, Span),
    Bool(Span),
    Fin(u64, Span),
}

impl RawExpr {
    pub fn span(&self) -> Span {
        match self {
            RawExpr::Ident { span, .. }
            | RawExpr::U(span)
            | RawExpr::El(_, span)
            | RawExpr::Arrow { span, .. }
            | RawExpr::App(_, _, span)
            | RawExpr::MetaApp(_, _, span)
            | RawExpr::Id(_, _, _, span)
            | RawExpr::Refl(_, span)
            | RawExpr::Bool(span)
            | RawExpr::Fin(_, span) => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawMetaExpr {
    Ident {
        name: String,
        span: Span,
        resolved: Option<RefKind>,
    },
    True(Span),
    False(Span),
    Nat(u64, Span),
}

impl RawMetaExpr {
    pub fn span(&self) -> Span {
        match self {
            RawMetaExpr::Ident { span, .. }
            | RawMetaExpr::True(span)
            | RawMetaExpr::False(span)
            | RawMetaExpr::Nat(_, span) => *span,
        }
    }
}
