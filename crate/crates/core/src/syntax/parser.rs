//! Recursive-descent parser for the `.ael` formula grammar.
//!
//! Precedence, tightest first: `~`, `K`, `M`; `&`; `|`; `->` (right
//! associative); `<->` (non-associative). `M φ` is read as `~K ~φ`.

use std::sync::Arc;

use super::{default_vocabulary, Formula, Theory};
use crate::error::{Error, Result};
use crate::worlds::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Knows,
    Possible,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(name) => format!("atom `{name}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::Knows => "`K`".into(),
            Token::Possible => "`M`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

struct Spanned {
    token: Token,
    column: usize,
}

fn tokenize(text: &str, line: usize, first_column: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = first_column + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (token, width) = match c {
            '~' => (Token::Not, 1),
            '&' => (Token::And, 1),
            '|' => (Token::Or, 1),
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Token::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => (Token::Iff, 3),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                    end += 1;
                }
                let word: String = chars[start..end].iter().collect();
                let token = match word.as_str() {
                    "K" => Token::Knows,
                    "M" => Token::Possible,
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Atom(word),
                };
                (token, end - start)
            }
            other => return Err(Error::parse(line, column, format!("unexpected character `{other}`"))),
        };
        tokens.push(Spanned { token, column });
        i += width;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |s| s.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column(), message)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let left = self.implication()?;
        if self.eat(&Token::Iff) {
            let right = self.implication()?;
            if self.peek() == Some(&Token::Iff) {
                return Err(self.error("`<->` is non-associative; add parentheses"));
            }
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.eat(&Token::Or) {
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat(&Token::Knows) {
            return Ok(Formula::knows(self.unary()?));
        }
        if self.eat(&Token::Possible) {
            return Ok(Formula::possible(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let token = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error("unexpected end of input, expected a formula")),
        };
        match token {
            Token::Atom(name) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Token::True => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Token::False => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Token::LParen => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {}, expected a formula", other.describe()))),
        }
    }
}

/// Parses a formula that occupies `text`, reporting positions relative to
/// the given line and starting column.
pub(crate) fn parse_formula_at(text: &str, line: usize, first_column: usize) -> Result<Formula> {
    let tokens = tokenize(text, line, first_column)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
        end_column: first_column + text.chars().count(),
    };
    let f = parser.formula()?;
    if let Some(t) = parser.peek() {
        return Err(parser.error(format!("unexpected {} after formula", t.describe())));
    }
    Ok(f)
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_at(text, 1, 1)
}

/// Strips a `#` comment; returns the remaining text.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

/// Recognizes a `vocab:` header line and returns its atom list.
pub(crate) fn parse_vocab_header(code: &str, line: usize) -> Result<Option<Vocabulary>> {
    let trimmed = code.trim_start();
    let Some(rest) = trimmed.strip_prefix("vocab:") else {
        return Ok(None);
    };
    Vocabulary::new(rest.split_whitespace())
        .map(Some)
        .map_err(|e| Error::parse(line, 1, e.to_string()))
}

/// Parses `.ael` text: an optional `vocab:` header as the first
/// non-blank line, then one formula per line, `#` comments.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut vocab: Option<Vocabulary> = None;
    let mut formulas = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = strip_comment(raw);
        if code.trim().is_empty() {
            continue;
        }
        if let Some(v) = parse_vocab_header(code, line)? {
            if seen_content {
                return Err(Error::parse(line, 1, "`vocab:` header must precede all formulas"));
            }
            vocab = Some(v);
            seen_content = true;
            continue;
        }
        seen_content = true;
        formulas.push(parse_formula_at(code, line, 1)?);
    }
    let vocab = match vocab {
        Some(v) => v,
        None => default_vocabulary(&formulas)?,
    };
    Theory::new(Arc::new(vocab), formulas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn truth_sayer() {
        assert_eq!(
            parse_formula("K P -> P").unwrap(),
            Formula::implies(Formula::knows(atom("P")), atom("P"))
        );
    }

    #[test]
    fn liar() {
        assert_eq!(
            parse_formula("~K P -> P").unwrap(),
            Formula::implies(Formula::not(Formula::knows(atom("P"))), atom("P"))
        );
    }

    #[test]
    fn dangling_operator_is_error() {
        match parse_formula("P &") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 4);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn possible_desugars() {
        assert_eq!(parse_formula("M P").unwrap(), Formula::possible(atom("P")));
        assert_eq!(parse_formula("M P").unwrap().to_string(), "~K ~P");
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("P -> Q -> R").unwrap(),
            Formula::implies(atom("P"), Formula::implies(atom("Q"), atom("R")))
        );
        assert_eq!(
            parse_formula("K P | ~K P -> P").unwrap(),
            Formula::implies(
                Formula::or(Formula::knows(atom("P")), Formula::not(Formula::knows(atom("P")))),
                atom("P")
            )
        );
        assert_eq!(
            parse_formula("P | Q & R").unwrap(),
            Formula::or(atom("P"), Formula::and(atom("Q"), atom("R")))
        );
        assert_eq!(
            parse_formula("K P <-> Q").unwrap(),
            Formula::iff(Formula::knows(atom("P")), atom("Q"))
        );
    }

    #[test]
    fn iff_chain_is_rejected() {
        assert!(matches!(parse_formula("P <-> Q <-> R"), Err(Error::Parse { .. })));
    }

    #[test]
    fn keywords_are_not_atoms() {
        assert_eq!(parse_formula("true & false").unwrap(), Formula::and(Formula::Top, Formula::Bottom));
        assert!(parse_formula("K").is_err());
        assert_eq!(parse_formula("KP").unwrap(), atom("KP"));
    }

    #[test]
    fn bad_character_position() {
        match parse_formula("P $ Q") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn theory_with_header_and_comments() {
        let t = parse_theory("# truth sayer\nvocab: Q P\n\nK P -> P  # rule\n").unwrap();
        assert_eq!(t.vocabulary().names(), &["Q".to_string(), "P".to_string()]);
        assert_eq!(t.formulas().len(), 1);
    }

    #[test]
    fn theory_default_vocabulary_first_occurrence() {
        let t = parse_theory("Q -> P\nR").unwrap();
        assert_eq!(t.vocabulary().names(), &["Q".to_string(), "P".to_string(), "R".to_string()]);
    }

    #[test]
    fn theory_atom_outside_header_is_error() {
        assert_eq!(parse_theory("vocab: P\nQ"), Err(Error::UnknownAtom("Q".into())));
    }

    #[test]
    fn theory_error_carries_line() {
        match parse_theory("P\n\nQ ->") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
