use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Kind {
    Int(BigInt),
    Ident(String),
    /// `e^{…}` with its index list, unsorted.
    Basis(Vec<usize>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Equals,
    Colon,
    Newline,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: Kind,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: col,
        message: msg.into(),
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let push = |out: &mut Vec<Token>, kind| {
            out.push(Token {
                kind,
                line: start.0,
                col: start.1,
            })
        };
        if c == '\n' {
            push(&mut out, Kind::Newline);
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
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            col += i - s;
            push(&mut out, Kind::Int(digits.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[s..i].iter().collect();
            col += i - s;
            if word == "e" && chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'{') {
                i += 2;
                col += 2;
                let s = i;
                while i < chars.len() && chars[i] != '}' && chars[i] != '\n' {
                    i += 1;
                }
                if chars.get(i) != Some(&'}') {
                    return Err(syntax(start.0, start.1, "unterminated e^{"));
                }
                let body: String = chars[s..i].iter().collect();
                let indices = basis_indices(&body).map_err(|m| syntax(start.0, start.1, m))?;
                col += i - s + 1;
                i += 1;
                push(&mut out, Kind::Basis(indices));
                continue;
            }
            push(&mut out, Kind::Ident(word));
            continue;
        }
        let kind = match c {
            '+' => Kind::Plus,
            '-' | '−' => Kind::Minus,
            '*' => Kind::Star,
            '/' => Kind::Slash,
            '^' => Kind::Caret,
            '(' => Kind::LParen,
            ')' => Kind::RParen,
            '[' => Kind::LBracket,
            ']' => Kind::RBracket,
            ',' => Kind::Comma,
            ';' => Kind::Semi,
            '=' => Kind::Equals,
            ':' => Kind::Colon,
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        push(&mut out, kind);
        i += 1;
        col += 1;
    }
    Ok(out)
}

/// "135" → [1, 3, 5]; "1,12" → [1, 12].
fn basis_indices(body: &str) -> std::result::Result<Vec<usize>, String> {
    let body = body.trim();
    if body.is_empty() {
        return Err("empty e^{}".into());
    }
    let parts: Vec<&str> = if body.contains(',') {
        body.split(',').map(str::trim).collect()
    } else {
        body.split("").filter(|s| !s.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(0) => Err("basis indices start at 1".to_string()),
            Ok(v) => Ok(v),
            Err(_) => Err(format!("bad basis index `{p}`")),
        })
        .collect()
}
