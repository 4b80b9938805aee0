//! Line-oriented C-like prototype files.
//!
//! ```text
//! # comment
//! %types execstack refstack
//! struct refstack
//! struct refstack * initRef (int size) ! uses: refstack
//! void ePush (struct execstack * es, int i) ! uses: execstack
//! ```
//!
//! One prototype per line. `struct X` alone declares a record type. The
//! optional `! uses: A, B` annotation lists the types whose fields the
//! function touches. Without a `%types` directive the subject types are all
//! struct names in order of first appearance; annotations may only name
//! subject types.

use std::collections::HashSet;

use super::Corpus;
use crate::error::{Error, Result};
use crate::feature::ComponentRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Directive(String),
    Star,
    LParen,
    RParen,
    Comma,
    Bang,
    Colon,
    Semi,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Directive(s) => format!("`%{s}`"),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
        }
    }
}

/// A token and its 1-based column.
type Spanned = (Tok, usize);

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(line: &str, line_no: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '!' => Some(Tok::Bang),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            toks.push((tok, col));
            i += 1;
            continue;
        }
        let directive = c == '%';
        let start = if directive { i + 1 } else { i };
        if !chars.get(start).copied().is_some_and(is_ident_start) {
            return Err(Error::parse_at(
                line_no,
                if directive { start + 1 } else { col },
                format!("unexpected character `{}`", chars.get(start).copied().unwrap_or(c)),
            ));
        }
        let mut end = start;
        while end < chars.len() && is_ident_char(chars[end]) {
            end += 1;
        }
        let word: String = chars[start..end].iter().collect();
        toks.push((if directive { Tok::Directive(word) } else { Tok::Ident(word) }, col));
        i = end;
    }
    Ok(toks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TypeName {
    Void,
    Struct(String),
    Other(String),
}

struct LineParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse_at(self.line, self.col(), message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, usize)> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let col = self.col();
                self.pos += 1;
                Ok((s.clone(), col))
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn ty(&mut self) -> Result<TypeName> {
        let (word, _) = self.ident("a type")?;
        let ty = match word.as_str() {
            "void" => TypeName::Void,
            "struct" => TypeName::Struct(self.ident("a struct name")?.0),
            _ => TypeName::Other(word),
        };
        while self.eat(&Tok::Star) {}
        Ok(ty)
    }

    fn finish(&mut self) -> Result<()> {
        self.eat(&Tok::Semi);
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of line")),
        }
    }
}

struct Proto {
    name: String,
    name_col: usize,
    returns: TypeName,
    params: Vec<TypeName>,
    uses: Vec<(String, usize)>,
}

enum Line {
    Blank,
    Types(Vec<String>),
    StructDecl(String),
    Proto(Proto),
}

fn parse_line(toks: &[Spanned], line: usize, line_len: usize) -> Result<Line> {
    let mut p = LineParser {
        toks,
        pos: 0,
        line,
        end_col: line_len + 1,
    };
    match p.peek() {
        None => return Ok(Line::Blank),
        Some(Tok::Directive(d)) if d == "types" => {
            p.pos += 1;
            let mut names = vec![p.ident("a type name after `%types`")?.0];
            while let Some(Tok::Ident(_)) = p.peek() {
                names.push(p.ident("a type name")?.0);
            }
            p.finish()?;
            return Ok(Line::Types(names));
        }
        Some(Tok::Directive(d)) => return Err(p.error(format!("unknown directive `%{d}`"))),
        _ => {}
    }

    // `struct X` on its own declares a record type.
    if let [(Tok::Ident(kw), _), (Tok::Ident(name), _), rest @ ..] = toks {
        if kw == "struct" && matches!(rest, [] | [(Tok::Semi, _)]) {
            return Ok(Line::StructDecl(name.clone()));
        }
    }

    let returns = p.ty()?;
    let (name, name_col) = p.ident("a function name")?;
    p.expect(Tok::LParen)?;
    let mut params = Vec::new();
    if !p.eat(&Tok::RParen) {
        loop {
            let col = p.col();
            let ty = p.ty()?;
            if ty == TypeName::Void {
                return Err(Error::parse_at(line, col, "parameter cannot have type `void`"));
            }
            p.ident("a parameter name")?;
            params.push(ty);
            if p.eat(&Tok::RParen) {
                break;
            }
            if !p.eat(&Tok::Comma) {
                return Err(p.unexpected("`,` or `)`"));
            }
        }
    }
    let mut uses = Vec::new();
    if p.eat(&Tok::Bang) {
        match p.ident("`uses`")? {
            (kw, _) if kw == "uses" => {}
            (kw, col) => {
                return Err(Error::parse_at(line, col, format!("expected `uses`, found `{kw}`")))
            }
        }
        p.expect(Tok::Colon)?;
        uses.push(p.ident("a type name")?);
        while p.eat(&Tok::Comma) {
            uses.push(p.ident("a type name")?);
        }
    }
    p.finish()?;
    Ok(Line::Proto(Proto {
        name,
        name_col,
        returns,
        params,
        uses,
    }))
}

/// Parses a declarations file into a corpus.
pub fn parse_declarations(text: &str) -> Result<Corpus> {
    let mut declared_types: Option<(Vec<String>, usize)> = None;
    let mut struct_names: Vec<String> = Vec::new();
    let mut seen_structs = HashSet::new();
    let mut note_struct = |name: &str, names: &mut Vec<String>| {
        if seen_structs.insert(name.to_owned()) {
            names.push(name.to_owned());
        }
    };
    let mut names = HashSet::new();
    let mut components = Vec::new();
    // (line, column, type) for every annotation entry, checked once types are known.
    let mut annotations = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(raw, line)?;
        match parse_line(&toks, line, raw.chars().count())? {
            Line::Blank => {}
            Line::Types(list) => {
                if let Some((_, first)) = declared_types {
                    return Err(Error::parse_at(
                        line,
                        1,
                        format!("`%types` already given on line {first}"),
                    ));
                }
                let mut uniq = HashSet::new();
                for (k, t) in list.iter().enumerate() {
                    if !uniq.insert(t) {
                        let col = toks[k + 1].1;
                        return Err(Error::parse_at(line, col, format!("duplicate type `{t}`")));
                    }
                }
                declared_types = Some((list, line));
            }
            Line::StructDecl(name) => note_struct(&name, &mut struct_names),
            Line::Proto(proto) => {
                if !names.insert(proto.name.clone()) {
                    return Err(Error::parse_at(
                        line,
                        proto.name_col,
                        format!("duplicate function name `{}`", proto.name),
                    ));
                }
                let mut type_name = |ty: TypeName, names: &mut Vec<String>| match ty {
                    TypeName::Void => None,
                    TypeName::Struct(s) => {
                        note_struct(&s, names);
                        Some(s)
                    }
                    TypeName::Other(s) => Some(s),
                };
                let mut record = ComponentRecord::new(proto.name);
                record.returns = type_name(proto.returns, &mut struct_names);
                record.args = proto
                    .params
                    .into_iter()
                    .filter_map(|t| type_name(t, &mut struct_names))
                    .collect();
                for (ty, col) in proto.uses {
                    annotations.push((line, col, ty.clone()));
                    record.uses_fields.insert(ty);
                }
                components.push(record);
            }
        }
    }

    let subject_types = match declared_types {
        Some((list, _)) => list,
        None => struct_names,
    };
    for (line, col, ty) in annotations {
        if !subject_types.contains(&ty) {
            return Err(Error::parse_at(
                line,
                col,
                format!("`{ty}` is not a declared subject type"),
            ));
        }
    }
    if components.is_empty() {
        return Err(Error::parse_at(text.lines().count().max(1), 1, "no prototypes found"));
    }
    if subject_types.is_empty() {
        return Err(Error::parse_at(1, 1, "no subject types: add `%types` or struct types"));
    }
    Ok(Corpus {
        subject_types,
        components,
    })
}
