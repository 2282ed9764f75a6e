//! Line-oriented parser for `.pv` sources.
//!
//! ```text
//! file   := stmt*                      (`#` comments, blank lines ignored)
//! stmt   := IDENT "=" body | "main" "=" IDENT ("|" IDENT)*
//! body   := action ("." action)*
//! action := ("P"|"V") "(" IDENT ")" | ("P"|"V") IDENT-SUFFIX
//! ```

use super::{Action, Op, ParseError, Process, ProgramError, PvProgram};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Eq,
    Dot,
    Pipe,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eq => "`=`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '=' | '.' | '|' | '(' | ')' => {
                let tok = match c {
                    '=' => Tok::Eq,
                    '.' => Tok::Dot,
                    '|' => Tok::Pipe,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((tok, col));
                i += 1;
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Line {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line_no: usize,
    end_col: usize,
}

impl Line {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line_no,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<(Tok, usize), ParseError> {
        match self.toks.get(self.pos).cloned() {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.err(self.end_col, format!("expected {expected}, found end of line"))),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<usize, ParseError> {
        let (tok, col) = self.next(&want.describe())?;
        if tok == want {
            Ok(col)
        } else {
            Err(self.err(col, format!("expected {}, found {}", want.describe(), tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.next(what)? {
            (Tok::Ident(s), col) => Ok((s, col)),
            (tok, col) => Err(self.err(col, format!("expected {what}, found {}", tok.describe()))),
        }
    }

    fn action(&mut self) -> Result<Action, ParseError> {
        let (word, col) = self.ident("an action")?;
        let op = match word.chars().next() {
            Some('P') => Op::P,
            Some('V') => Op::V,
            _ => return Err(self.err(col, format!("expected a P or V action, found `{word}`"))),
        };
        let resource = if word.len() == 1 {
            if !matches!(self.peek(), Some((Tok::LParen, _))) {
                return Err(self.err(col + 1, format!("missing resource after `{word}`")));
            }
            self.expect(Tok::LParen)?;
            let (res, _) = self.ident("a resource name")?;
            self.expect(Tok::RParen)?;
            res
        } else {
            word[1..].to_string()
        };
        Ok(Action { op, resource })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some((tok, col)) => Err(self.err(*col, format!("unexpected {}", tok.describe()))),
        }
    }
}

/// Entries of `main` with their positions, and the line of `main` itself.
type MainLine = (Vec<(String, usize, usize)>, usize);

/// Parses PV source text. Without a `main` line every declared process
/// runs, in declaration order.
pub fn parse(source: &str) -> Result<PvProgram, ParseError> {
    let mut processes: Vec<(Process, usize)> = Vec::new();
    let mut main: Option<MainLine> = None;

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokenize(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut line = Line {
            toks,
            pos: 0,
            line_no,
            end_col: raw.chars().count() + 1,
        };
        let (name, name_col) = line.ident("a process name or `main`")?;
        line.expect(Tok::Eq)?;
        if name == "main" {
            if main.is_some() {
                return Err(line.err(name_col, "duplicate `main` declaration"));
            }
            let mut entries = Vec::new();
            loop {
                let (entry, col) = line.ident("a process name")?;
                entries.push((entry, line_no, col));
                match line.peek() {
                    Some((Tok::Pipe, _)) => {
                        line.pos += 1;
                    }
                    _ => break,
                }
            }
            line.finish()?;
            main = Some((entries, line_no));
        } else {
            if processes.iter().any(|(p, _)| p.name == name) {
                return Err(line.err(name_col, format!("duplicate process `{name}`")));
            }
            if line.peek().is_none() {
                return Err(line.err(line.end_col, format!("process `{name}` has an empty body")));
            }
            let mut body = vec![line.action()?];
            while let Some((Tok::Dot, _)) = line.peek() {
                line.pos += 1;
                body.push(line.action()?);
            }
            line.finish()?;
            processes.push((Process { name, body }, line_no));
        }
    }

    let main_names = match &main {
        Some((entries, _)) => {
            for (entry, line, col) in entries {
                if !processes.iter().any(|(p, _)| &p.name == entry) {
                    return Err(ParseError {
                        line: *line,
                        col: *col,
                        message: format!("unknown process `{entry}` in main"),
                    });
                }
            }
            entries.iter().map(|(e, _, _)| e.clone()).collect()
        }
        None => processes.iter().map(|(p, _)| p.name.clone()).collect(),
    };
    let processes: Vec<Process> = processes.into_iter().map(|(p, _)| p).collect();
    PvProgram::new(processes, main_names).map_err(|e| {
        // every declaration error is caught above with a position
        let message = match e {
            ProgramError::DuplicateProcess(n) => format!("duplicate process `{n}`"),
            ProgramError::UnknownProcess(n) => format!("unknown process `{n}` in main"),
            ProgramError::EmptyBody(n) => format!("process `{n}` has an empty body"),
        };
        ParseError {
            line: 1,
            col: 1,
            message,
        }
    })
}
