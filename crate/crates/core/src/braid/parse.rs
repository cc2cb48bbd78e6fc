//! Text form of braid words:
//!
//! ```text
//! word     := header ';' syllable*
//! header   := 'strands=' even-int [';' 'flips=' bitstring]
//! syllable := ('b' | 'h' | 'g') index ('^' signed-int)?
//! ```
//!
//! Syllables are whitespace separated. `b` marks parallel strands, `h`
//! antiparallel ones, `g` leaves the orientation to propagation.

use super::{BraidWord, Orientation, Syllable};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let start = self.pos;
        for c in word.chars() {
            if self.bump() != Some(c) {
                return Err(self.error_at(start, format!("expected '{word}'")));
            }
        }
        Ok(())
    }

    fn looking_at(&self, word: &str) -> bool {
        word.chars()
            .enumerate()
            .all(|(i, c)| self.chars.get(self.pos + i) == Some(&c))
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, "number out of range"))
    }

    fn signed(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let v = self.unsigned()?;
        let v = i64::try_from(v).map_err(|_| self.error_at(start, "number out of range"))?;
        Ok(if negative { -v } else { v })
    }
}

pub fn parse(text: &str) -> Result<BraidWord> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    cur.keyword("strands")?;
    cur.skip_ws();
    cur.expect('=')?;
    cur.skip_ws();
    let strands_at = cur.pos;
    let strands = cur.unsigned()? as usize;
    if strands < 2 || !strands.is_multiple_of(2) {
        return Err(cur.error_at(
            strands_at,
            format!("strand count must be even and at least 2, got {strands}"),
        ));
    }
    cur.skip_ws();
    cur.expect(';')?;
    cur.skip_ws();

    let mut flips = None;
    if cur.looking_at("flips") {
        cur.keyword("flips")?;
        cur.skip_ws();
        cur.expect('=')?;
        cur.skip_ws();
        let start = cur.pos;
        let mut bits = Vec::new();
        while let Some(c @ ('0' | '1')) = cur.peek() {
            bits.push(c == '1');
            cur.pos += 1;
        }
        if bits.len() != strands / 2 {
            return Err(cur.error_at(
                start,
                format!("expected {} flip bits, found {}", strands / 2, bits.len()),
            ));
        }
        flips = Some(bits);
        cur.skip_ws();
        cur.expect(';')?;
    }

    let mut syllables = Vec::new();
    loop {
        cur.skip_ws();
        let Some(c) = cur.peek() else { break };
        let orientation = match c {
            'b' => Orientation::Parallel,
            'h' => Orientation::Antiparallel,
            'g' => Orientation::Auto,
            other => return Err(cur.error(format!("unexpected '{other}', expected b, h or g"))),
        };
        cur.pos += 1;
        let index_at = cur.pos;
        let index = cur.unsigned()? as usize;
        let mut power = 1i64;
        if cur.peek() == Some('^') {
            cur.pos += 1;
            power = cur.signed()?;
        }
        if cur.peek().is_some_and(|c| !c.is_whitespace()) {
            return Err(cur.error("syllables must be separated by whitespace"));
        }
        if index == 0 || index >= strands {
            let _ = index_at;
            return Err(Error::IndexOutOfRange { index, strands });
        }
        if power == 0 {
            return Err(Error::ZeroPower { index });
        }
        let power = i32::try_from(power).map_err(|_| cur.error_at(index_at, "power out of range"))?;
        syllables.push(Syllable {
            index,
            power,
            orientation,
        });
    }

    let mut word = BraidWord::new(strands, syllables)?;
    if let Some(f) = flips {
        word = word.with_flips(f)?;
    }
    Ok(word)
}
