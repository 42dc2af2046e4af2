use super::{Span, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(u64),
    Level,
    External,
    Sig,
    U,
    El,
    Id,
    Refl,
    Bool,
    Fin,
    True,
    False,
    Ext,
    Inf,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Arrow,
    FatArrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Eof => "end of input".to_owned(),
            Tok::LParen => "`(`".to_owned(),
            Tok::RParen => "`)`".to_owned(),
            Tok::LBrace => "`{`".to_owned(),
            Tok::RBrace => "`}`".to_owned(),
            Tok::LBracket => "`[`".to_owned(),
            Tok::RBracket => "`]`".to_owned(),
            Tok::Colon => "`:`".to_owned(),
            Tok::Semi => "`;`".to_owned(),
            Tok::Arrow => "`->`".to_owned(),
            Tok::FatArrow => "`=>`".to_owned(),
            kw => format!("`{}`", keyword_text(kw)),
        }
    }
}

fn keyword_text(t: &Tok) -> &'static str {
    match t {
        Tok::Level => "level",
        Tok::External => "external",
        Tok::Sig => "sig",
        Tok::U => "U",
        Tok::El => "El",
        Tok::Id => "Id",
        Tok::Refl => "Refl",
        Tok::Bool => "Bool",
        Tok::Fin => "Fin",
        Tok::True => "true",
        Tok::False => "false",
        Tok::Ext => "ext",
        Tok::Inf => "inf",
        _ => "?",
    }
}

#[derive(Debug, Clone)]
pub struct Lexeme {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Lexeme>, SurfaceError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }

    loop {
        let span = Span { line, col };
        let Some(&c) = chars.peek() else {
            out.push(Lexeme { tok: Tok::Eof, span });
            return Ok(out);
        };
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '-' => {
                bump!();
                match chars.peek() {
                    Some('-') => {
                        // line comment
                        while let Some(&c) = chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            bump!();
                        }
                    }
                    Some('>') => {
                        bump!();
                        out.push(Lexeme { tok: Tok::Arrow, span });
                    }
                    other => {
                        return Err(SurfaceError::Syntax {
                            span,
                            expected: "`->` or `--`".to_owned(),
                            found: other
                                .map(|c| format!("`-{c}`"))
                                .unwrap_or_else(|| "end of input".to_owned()),
                        })
                    }
                }
            }
            '=' => {
                bump!();
                match chars.peek() {
                    Some('>') => {
                        bump!();
                        out.push(Lexeme { tok: Tok::FatArrow, span });
                    }
                    other => {
                        return Err(SurfaceError::Syntax {
                            span,
                            expected: "`=>`".to_owned(),
                            found: other
                                .map(|c| format!("`={c}`"))
                                .unwrap_or_else(|| "end of input".to_owned()),
                        })
                    }
                }
            }
            '(' => {
                bump!();
                out.push(Lexeme { tok: Tok::LParen, span });
            }
            ')' => {
                bump!();
                out.push(Lexeme { tok: Tok::RParen, span });
            }
            '{' => {
                bump!();
                out.push(Lexeme { tok: Tok::LBrace, span });
            }
            '}' => {
                bump!();
                out.push(Lexeme { tok: Tok::RBrace, span });
            }
            '[' => {
                bump!();
                out.push(Lexeme { tok: Tok::LBracket, span });
            }
            ']' => {
                bump!();
                out.push(Lexeme { tok: Tok::RBracket, span });
            }
            ':' => {
                bump!();
                out.push(Lexeme { tok: Tok::Colon, span });
            }
            ';' => {
                bump!();
                out.push(Lexeme { tok: Tok::Semi, span });
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(d as u64))
                            .ok_or_else(|| SurfaceError::Syntax {
                                span,
                                expected: "a smaller number".to_owned(),
                                found: "numeric overflow".to_owned(),
                            })?;
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push(Lexeme { tok: Tok::Nat(n), span });
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_char(c) {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "level" => Tok::Level,
                    "external" => Tok::External,
                    "sig" => Tok::Sig,
                    "U" => Tok::U,
                    "El" => Tok::El,
                    "Id" => Tok::Id,
                    "Refl" => Tok::Refl,
                    "Bool" => Tok::Bool,
                    "Fin" => Tok::Fin,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "ext" => Tok::Ext,
                    "inf" => Tok::Inf,
                    _ => Tok::Ident(name),
                };
                out.push(Lexeme { tok, span });
            }
            other => {
                return Err(SurfaceError::Syntax {
                    span,
                    expected: "a token".to_owned(),
                    found: format!("`{other}`"),
                })
            }
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}
