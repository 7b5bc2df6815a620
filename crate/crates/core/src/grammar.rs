//! Text syntax for words and presentations.
//!
//! ```text
//! presentation := "<" [ident ("," ident)*] "|" [rel ("," rel)*] ">"
//! rel          := word | word "=" word          (u = v means u v^-1)
//! word         := factor (["*"] factor)*  |  "1"
//! factor       := atom ["^" exponent]
//! atom         := ident | "(" word ")" | "[" word "," word "]"
//! exponent     := int | "{" int "}" | "(" int ")"
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use crate::error::{Error, Result};
use crate::word::{free_reduce, Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: start_line,
                column: start_col,
            });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            let v = s.parse::<i64>().map_err(|_| Error::Syntax {
                line: start_line,
                column: start_col,
                message: format!("integer `{s}` out of range"),
            })?;
            out.push(Token {
                tok: Tok::Int(v),
                line: start_line,
                column: start_col,
            });
        } else if "<>|,()[]{}^*=-+".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: start_line,
                column: start_col,
            });
            i += 1;
            col += 1;
        } else {
            return Err(Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.error(format!("expected generator name, found {}", describe(&t))),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Sym('(') | Tok::Sym('['))
            || self.peek() == &Tok::Int(1)
    }

    fn int(&mut self) -> Result<i64> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            t => self.error(format!("expected integer, found {}", describe(&t))),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('{') {
            let v = self.int()?;
            self.expect('}')?;
            Ok(v)
        } else if self.eat('(') {
            let v = self.int()?;
            self.expect(')')?;
            Ok(v)
        } else {
            self.int()
        }
    }

    /// Parses a word, returning its letters without reduction.
    fn word(&mut self) -> Result<Vec<Letter>> {
        if self.peek() == &Tok::Int(1) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        if !self.starts_factor() {
            return self.error(format!("expected a word, found {}", describe(self.peek())));
        }
        let mut letters = Vec::new();
        loop {
            letters.extend(self.factor()?);
            if self.eat('*') {
                if !self.starts_factor() {
                    return self.error("expected a factor after `*`");
                }
                continue;
            }
            if !self.starts_factor() {
                break;
            }
        }
        Ok(letters)
    }

    fn factor(&mut self) -> Result<Vec<Letter>> {
        let base = match self.peek().clone() {
            Tok::Int(1) => {
                self.pos += 1;
                Vec::new()
            }
            Tok::Ident(name) => {
                let alphabet = self.alphabet.expect("word parsing requires an alphabet");
                let g = match alphabet.lookup(&name) {
                    Some(g) => g,
                    None => {
                        let t = &self.toks[self.pos];
                        return Err(Error::Syntax {
                            line: t.line,
                            column: t.column,
                            message: format!("unknown generator `{name}`"),
                        });
                    }
                };
                self.pos += 1;
                vec![Letter::positive(g)]
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                let mut w = u.clone();
                w.extend(v.iter().copied());
                w.extend(u.iter().rev().map(|l| l.inverse()));
                w.extend(v.iter().rev().map(|l| l.inverse()));
                w
            }
            t => return self.error(format!("expected a factor, found {}", describe(&t))),
        };
        if self.eat('^') {
            let e = self.exponent()?;
            let unit: Vec<Letter> = if e < 0 {
                base.iter().rev().map(|l| l.inverse()).collect()
            } else {
                base
            };
            let mut out = Vec::with_capacity(unit.len() * e.unsigned_abs() as usize);
            for _ in 0..e.unsigned_abs() {
                out.extend_from_slice(&unit);
            }
            Ok(out)
        } else {
            Ok(base)
        }
    }

    fn relator(&mut self) -> Result<Vec<Letter>> {
        let mut lhs = self.word()?;
        if self.eat('=') {
            let rhs = self.word()?;
            lhs.extend(rhs.iter().rev().map(|l| l.inverse()));
        }
        Ok(lhs)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

/// Parses a word over `alphabet` without free reduction.
pub fn parse_word_unreduced(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        alphabet: Some(alphabet),
    };
    let letters = p.word()?;
    if p.peek() != &Tok::End {
        return p.error(format!("trailing input {}", describe(p.peek())));
    }
    Ok(Word::from_letters(letters))
}

/// Parses a word over `alphabet` and freely reduces it.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    parse_word_unreduced(text, alphabet).map(|w| free_reduce(&w))
}

/// Parses a relator (`u` or `u = v`) over `alphabet`, unreduced.
pub fn parse_relator(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        alphabet: Some(alphabet),
    };
    let letters = p.relator()?;
    if p.peek() != &Tok::End {
        return p.error(format!("trailing input {}", describe(p.peek())));
    }
    Ok(Word::from_letters(letters))
}

/// Parses `< gens | rels >`, returning the alphabet and unreduced relators.
pub fn parse_presentation_parts(text: &str) -> Result<(Alphabet, Vec<Word>)> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        alphabet: None,
    };
    p.expect('<')?;
    let mut alphabet = Alphabet::default();
    if !matches!(p.peek(), Tok::Sym('|')) {
        loop {
            let t = p.toks[p.pos].clone();
            let name = p.ident()?;
            if let Err(e) = alphabet.push(&name) {
                return Err(Error::Syntax {
                    line: t.line,
                    column: t.column,
                    message: e.to_string(),
                });
            }
            if !p.eat(',') {
                break;
            }
        }
    }
    p.expect('|')?;
    let mut relators = Vec::new();
    let mut parser = Parser {
        toks: std::mem::take(&mut p.toks),
        pos: p.pos,
        alphabet: Some(&alphabet),
    };
    if !matches!(parser.peek(), Tok::Sym('>')) {
        loop {
            relators.push(Word::from_letters(parser.relator()?));
            if !parser.eat(',') {
                break;
            }
        }
    }
    parser.expect('>')?;
    if parser.peek() != &Tok::End {
        return parser.error(format!("trailing input {}", describe(parser.peek())));
    }
    Ok((alphabet, relators))
}
