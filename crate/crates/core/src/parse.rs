//! Text syntax for structure equations and for forms.
//!
//! Presentations list `d e^1, …, d e^m` in parentheses:
//!
//! ```text
//! (0^3, 12, 14, 24)          real mode, compact digit pairs
//! (0, -12, 34, 0, 15, 46)
//! (0^8, 1^10 - 2*3^4)        caret pairs, required once an index exceeds 9
//! (0^4, -12 - 34)            complex mode: entries are d φ^k
//! (0, 0, 2*dphi^3 = i*11' - 22')
//! ```
//!
//! `0^k` repeats a closed entry; a trailing `'` marks a conjugate index in
//! complex mode (`12'` is `φ^1 ∧ φ̄^2`). Coefficients are rationals, `i`,
//! `RATIONAL i`, or `(a+b i)`, followed by `*`.
//!
//! Form expressions use `e` with digit strings (`e134`) or parenthesised
//! lists (`e(1,3,10)`): `e13 - 3/2 e46 + (1+2 i) e5`.

use std::str::FromStr;

use crate::basis::Mono;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::scalar::{Field, Gq, Scalar, Q};

/// Which coframe the entries of a presentation refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Entries are `d e^k` for a real coframe.
    Real,
    /// Entries are `d φ^k` for a complex (1,0)-coframe; forms live on
    /// `φ^1…φ^n, φ̄^1…φ̄^n`.
    Complex,
}

/// Parsed entries before any structural validation.
#[derive(Clone, Debug)]
pub struct RawPresentation {
    pub mode: Mode,
    /// Number of entries (`2n` real, `n` complex).
    pub entries: usize,
    /// Entry images. Real mode: forms on `entries` generators. Complex
    /// mode: forms on `2·entries` generators, `φ^a` at bit `a-1` and `φ̄^a`
    /// at bit `n+a-1`.
    pub images: Vec<Form<Gq>>,
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Character cursor with absolute positions for error reporting.
struct Cursor<'a> {
    chars: Vec<char>,
    at: usize,
    offset: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, offset: usize) -> Cursor<'a> {
        Cursor {
            chars: src.chars().collect(),
            at: 0,
            offset,
            _src: src,
        }
    }

    fn pos(&self) -> usize {
        self.offset + self.at
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn peek_nonws(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn eat_ws(&mut self, c: char) -> bool {
        self.skip_ws();
        self.eat(c)
    }

    fn digits(&mut self) -> String {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        self.chars[start..self.at].iter().collect()
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.at >= self.chars.len()
    }

    /// Optional sign, with `−` accepted for `-`.
    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.at += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.at += 1;
                Some(true)
            }
            _ => None,
        }
    }

    /// A rational literal `p` or `p/q` (no sign).
    fn rational(&mut self) -> Result<Option<Q>> {
        let start = self.at;
        let n = self.digits();
        if n.is_empty() {
            return Ok(None);
        }
        let mut text = n;
        if self.peek() == Some('/') {
            self.at += 1;
            let d = self.digits();
            if d.is_empty() {
                return Err(perr(self.pos(), "expected a denominator"));
            }
            text = format!("{text}/{d}");
        }
        Q::from_str(&text)
            .map(Some)
            .map_err(|_| perr(self.offset + start, format!("invalid rational `{text}`")))
    }

    /// `(a+b i)`.
    fn paren_gauss(&mut self) -> Result<Gq> {
        let start = self.pos();
        let mut body = String::new();
        loop {
            match self.peek() {
                Some(')') => {
                    self.at += 1;
                    break;
                }
                Some(c) => {
                    body.push(if c == '−' { '-' } else { c });
                    self.at += 1;
                }
                None => return Err(perr(start, "unclosed parenthesis")),
            }
        }
        Gq::from_str(&body).map_err(|_| perr(start, format!("invalid coefficient `({body})`")))
    }
}

/// Split the inside of the outer parentheses at top-level commas, returning
/// each piece with its absolute offset (in characters).
fn split_entries(text: &str) -> Result<Vec<(String, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let open = chars
        .iter()
        .position(|c| !c.is_whitespace())
        .ok_or_else(|| perr(0, "empty presentation"))?;
    if chars[open] != '(' {
        return Err(perr(open, "expected `(`"));
    }
    let mut depth = 0;
    let mut pieces = Vec::new();
    let mut cur = String::new();
    let mut cur_start = open + 1;
    let mut close = None;
    for (i, &c) in chars.iter().enumerate().skip(open + 1) {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' if depth == 0 => {
                close = Some(i);
                break;
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => {
                pieces.push((std::mem::take(&mut cur), cur_start));
                cur_start = i + 1;
            }
            _ => cur.push(c),
        }
    }
    let close = close.ok_or_else(|| perr(chars.len(), "missing `)`"))?;
    pieces.push((cur, cur_start));
    if let Some(p) = chars[close + 1..].iter().position(|c| !c.is_whitespace()) {
        return Err(perr(close + 1 + p, "unexpected text after `)`"));
    }
    Ok(pieces)
}

/// `Some(k)` when the entry is `0`, `0^k` or `0` with a superscript count.
fn zero_run(entry: &str, offset: usize) -> Result<Option<usize>> {
    let t = entry.trim();
    let Some(rest) = t.strip_prefix('0') else {
        return Ok(None);
    };
    let rest = rest.trim_start();
    if rest.is_empty() {
        return Ok(Some(1));
    }
    if let Some(n) = rest.strip_prefix('^') {
        return n
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| perr(offset, format!("invalid repeat count in `{t}`")));
    }
    if rest.chars().all(|c| SUPERSCRIPTS.contains(&c)) {
        let n = rest
            .chars()
            .map(|c| SUPERSCRIPTS.iter().position(|&s| s == c).unwrap())
            .fold(0usize, |acc, d| acc * 10 + d);
        return Ok(Some(n));
    }
    Ok(None)
}

/// Parse a presentation in the given mode.
///
/// ```
/// use acscohom::parse::{parse_presentation_text, Mode};
/// let raw = parse_presentation_text("(0^3, 12, 14, 24)", Mode::Real).unwrap();
/// assert_eq!(raw.entries, 6);
/// assert_eq!(raw.images[4].to_string(), "e14");
/// ```
pub fn parse_presentation_text(text: &str, mode: Mode) -> Result<RawPresentation> {
    let pieces = split_entries(text)?;
    let mut runs = Vec::new();
    let mut count = 0usize;
    for (piece, offset) in &pieces {
        if piece.trim().is_empty() {
            return Err(perr(*offset, "empty entry"));
        }
        match zero_run(piece, *offset)? {
            Some(k) => {
                runs.push((None, k));
                count += k;
            }
            None => {
                runs.push((Some((piece.as_str(), *offset)), 1));
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(perr(0, "presentation has no entries"));
    }
    if count > 16 {
        return Err(perr(0, format!("{count} generators exceeds the supported 16")));
    }
    let form_dim = match mode {
        Mode::Real => count,
        Mode::Complex => 2 * count,
    };
    let mut images = Vec::with_capacity(count);
    for (entry, k) in runs {
        match entry {
            None => images.extend((0..k).map(|_| Form::zero(form_dim))),
            Some((src, offset)) => {
                let position = images.len() + 1;
                images.push(parse_entry(src, offset, mode, count, position)?);
            }
        }
    }
    Ok(RawPresentation {
        mode,
        entries: count,
        images,
    })
}

fn parse_entry(src: &str, offset: usize, mode: Mode, n: usize, position: usize) -> Result<Form<Gq>> {
    let (scale, body, body_offset) = match src.find('=') {
        Some(eq) => {
            let lhs = &src[..eq];
            let c = parse_lhs(lhs, offset, mode, position)?;
            let rhs_offset = offset + src[..eq + 1].chars().count();
            (Some(c), &src[eq + 1..], rhs_offset)
        }
        None => (None, src, offset),
    };
    let mut cur = Cursor::new(body, body_offset);
    let mut form = parse_pair_sum(&mut cur, mode, n)?;
    if let Some(c) = scale {
        form = form.scale(&c.inv());
    }
    Ok(form)
}

/// `c*d phi^k` / `d e^k` on the left of `=`; returns `c`.
fn parse_lhs(lhs: &str, offset: usize, mode: Mode, position: usize) -> Result<Gq> {
    let mut cur = Cursor::new(lhs, offset);
    let neg = cur.sign().unwrap_or(false);
    let mut c = parse_coefficient(&mut cur)?.unwrap_or_else(Gq::one);
    if neg {
        c = -c;
    }
    cur.skip_ws();
    if !cur.eat('d') {
        return Err(perr(cur.pos(), "expected `d` on the left of `=`"));
    }
    cur.skip_ws();
    let rest: String = cur.chars[cur.at..].iter().collect();
    let (name_len, complex_name) = if rest.starts_with("phi") {
        (3, true)
    } else if rest.starts_with('φ') {
        (1, true)
    } else if rest.starts_with('e') {
        (1, false)
    } else {
        return Err(perr(cur.pos(), "expected `phi` or `e` after `d`"));
    };
    if complex_name != (mode == Mode::Complex) {
        return Err(perr(
            cur.pos(),
            "use `d phi^k` in complex mode and `d e^k` in real mode",
        ));
    }
    cur.at += name_len;
    cur.eat('^');
    let k = cur.digits();
    let k: usize = k.parse().map_err(|_| perr(cur.pos(), "expected the entry index"))?;
    if k != position {
        return Err(perr(cur.pos(), format!("entry {position} is labelled as entry {k}")));
    }
    if !cur.done() {
        return Err(perr(cur.pos(), "unexpected text before `=`"));
    }
    if c.is_zero() {
        return Err(perr(offset, "zero coefficient on the left of `=`"));
    }
    Ok(c)
}

/// Optional coefficient followed by `*` (the `*` may be omitted after an
/// `i`). Returns `None` when the next token is an index pair.
fn parse_coefficient(cur: &mut Cursor<'_>) -> Result<Option<Gq>> {
    cur.skip_ws();
    let save = cur.at;
    if cur.peek() == Some('(') {
        cur.at += 1;
        let g = cur.paren_gauss()?;
        cur.eat_ws('*');
        return Ok(Some(g));
    }
    if cur.peek() == Some('i') {
        cur.at += 1;
        cur.eat_ws('*');
        return Ok(Some(Gq::i()));
    }
    if let Some(q) = cur.rational()? {
        match cur.peek_nonws() {
            Some('*') => {
                cur.at += 1;
                return Ok(Some(Gq::real(q)));
            }
            Some('i') => {
                cur.at += 1;
                cur.eat_ws('*');
                return Ok(Some(Gq::new(Q::zero(), q)));
            }
            _ => {}
        }
    }
    cur.at = save;
    Ok(None)
}

/// One index with an optional conjugate marker; returns the generator bit.
fn finish_index(cur: &mut Cursor<'_>, idx: usize, at: usize, mode: Mode, n: usize, marker: bool) -> Result<usize> {
    if idx == 0 || idx > n {
        return Err(perr(at, format!("index {idx} out of range 1..={n}")));
    }
    let conj = marker && cur.eat('\'');
    match (mode, conj) {
        (Mode::Real, true) => Err(perr(at, "conjugate markers need complex mode")),
        (Mode::Real, false) | (Mode::Complex, false) => Ok(idx - 1),
        (Mode::Complex, true) => Ok(n + idx - 1),
    }
}

fn parse_pair(cur: &mut Cursor<'_>, mode: Mode, n: usize) -> Result<(usize, usize)> {
    cur.skip_ws();
    let start = cur.pos();
    let first = cur.digits();
    if first.is_empty() {
        return Err(perr(start, "expected an index pair"));
    }
    let caret_or_conj = cur.peek() == Some('^') || (cur.peek() == Some('\'') && first.len() == 1);
    if caret_or_conj {
        let a: usize = first.parse().map_err(|_| perr(start, "index too large"))?;
        let a = finish_index(cur, a, start, mode, n, true)?;
        let compact = !cur.eat('^');
        let second_at = cur.pos();
        let second = cur.digits();
        if second.is_empty() {
            return Err(perr(second_at, "expected a second index"));
        }
        if compact && (second.len() != 1 || n > 9) {
            return Err(perr(second_at, "use `a^b` for index pairs"));
        }
        let b: usize = second.parse().map_err(|_| perr(second_at, "index too large"))?;
        let b = finish_index(cur, b, second_at, mode, n, true)?;
        return Ok((a, b));
    }
    if first.len() != 2 {
        return Err(perr(start, format!("`{first}` is not a digit pair; write `a^b`")));
    }
    if n > 9 {
        return Err(perr(start, "compact digit pairs need at most 9 indices; write `a^b`"));
    }
    let digits: Vec<usize> = first.chars().map(|c| c as usize - '0' as usize).collect();
    let a = finish_index(cur, digits[0], start, mode, n, false)?;
    // A conjugate marker after a compact pair belongs to the second index.
    let b = finish_index(cur, digits[1], start + 1, mode, n, true)?;
    Ok((a, b))
}

fn parse_pair_sum(cur: &mut Cursor<'_>, mode: Mode, n: usize) -> Result<Form<Gq>> {
    let dim = match mode {
        Mode::Real => n,
        Mode::Complex => 2 * n,
    };
    let mut out = Form::zero(dim);
    let mut first = true;
    loop {
        if cur.done() {
            if first {
                return Err(perr(cur.pos(), "empty entry"));
            }
            break;
        }
        let sign = cur.sign();
        if sign.is_none() && !first {
            return Err(perr(cur.pos(), "expected `+` or `-` between terms"));
        }
        let c = parse_coefficient(cur)?.unwrap_or_else(Gq::one);
        let (a, b) = parse_pair(cur, mode, n)?;
        let c = if sign == Some(true) { -c } else { c };
        let term = Form::term(dim, Mono(1 << a), Gq::one()).wedge(&Form::term(dim, Mono(1 << b), c));
        if term.is_zero() {
            return Err(perr(cur.pos(), "repeated index in a pair"));
        }
        out += term;
        first = false;
    }
    Ok(out)
}

/// Parse a form expression on `dim` generators.
///
/// ```
/// use acscohom::parse::parse_form;
/// let f = parse_form("e13 - 3/2 e46 + (1+2 i) e5", 6).unwrap();
/// assert_eq!(f.to_string(), "(1+2 i) e5 + e13 - 3/2 e46");
/// ```
pub fn parse_form(text: &str, dim: usize) -> Result<Form<Gq>> {
    let mut cur = Cursor::new(text, 0);
    let mut out = Form::zero(dim);
    let mut first = true;
    loop {
        if cur.done() {
            if first {
                return Err(perr(0, "empty form"));
            }
            return Ok(out);
        }
        let sign = cur.sign();
        if sign.is_none() && !first {
            return Err(perr(cur.pos(), "expected `+` or `-` between terms"));
        }
        first = false;
        cur.skip_ws();
        let coeff_at = cur.pos();
        let mut c = if cur.eat('(') {
            Some(cur.paren_gauss()?)
        } else {
            cur.rational()?.map(Gq::real)
        };
        cur.skip_ws();
        if cur.peek() == Some('i') {
            cur.at += 1;
            c = Some(match c {
                Some(q) if q.is_real() => Gq::new(Q::zero(), q.re),
                Some(_) => return Err(perr(coeff_at, "`i` after a complex coefficient")),
                None => Gq::i(),
            });
        }
        cur.eat_ws('*');
        cur.skip_ws();
        let mono = if cur.eat('e') {
            parse_index_list(&mut cur, dim)?
        } else if c.is_some() {
            Mono(0)
        } else {
            return Err(perr(cur.pos(), "expected a coefficient or `e`"));
        };
        let c = c.unwrap_or_else(Gq::one);
        let c = if sign == Some(true) { -c } else { c };
        let mut term = Form::one(dim).scale(&c);
        for i in mono.indices() {
            term = term.wedge(&Form::term(dim, Mono(1 << i), Gq::one()));
        }
        if term.is_zero() && !c.is_zero() {
            return Err(perr(cur.pos(), "repeated index"));
        }
        out += term;
    }
}

/// `134`, `^{1,3,10}`, or `(1,3,10)` after an `e`; indices strictly
/// increasing.
fn parse_index_list(cur: &mut Cursor<'_>, dim: usize) -> Result<Mono> {
    let at = cur.pos();
    let list: Vec<usize> = if cur.eat('(') || (cur.eat('^') && cur.eat('{')) {
        let mut v = Vec::new();
        loop {
            cur.skip_ws();
            let d = cur.digits();
            if d.is_empty() {
                return Err(perr(cur.pos(), "expected an index"));
            }
            v.push(d.parse().map_err(|_| perr(cur.pos(), "index too large"))?);
            cur.skip_ws();
            if cur.eat(',') {
                continue;
            }
            if cur.eat(')') || cur.eat('}') {
                break;
            }
            return Err(perr(cur.pos(), "expected `,` or `)`"));
        }
        v
    } else {
        let d = cur.digits();
        if d.is_empty() {
            return Err(perr(cur.pos(), "expected indices after `e`"));
        }
        if dim > 9 {
            return Err(perr(
                at,
                "digit-string indices need at most 9 generators; write e(1,10)",
            ));
        }
        d.chars().map(|c| c as usize - '0' as usize).collect()
    };
    let mut mask = 0u32;
    let mut last = 0;
    for &i in &list {
        if i == 0 || i > dim {
            return Err(perr(at, format!("index {i} out of range 1..={dim}")));
        }
        if i <= last {
            return Err(perr(at, "indices must be strictly increasing"));
        }
        last = i;
        mask |= 1 << (i - 1);
    }
    Ok(Mono(mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> Form<Gq> {
        Form::e(dim, idx)
    }

    #[test]
    fn real_presentations() {
        let raw = parse_presentation_text("(0^3, 12, 14, 24)", Mode::Real).unwrap();
        assert_eq!(raw.entries, 6);
        assert_eq!(raw.images[3], e(6, &[1, 2]));
        assert_eq!(raw.images[5], e(6, &[2, 4]));
        let raw = parse_presentation_text("(0, -12, 34, 0, 15, 46)", Mode::Real).unwrap();
        assert_eq!(raw.images[1], -e(6, &[1, 2]));
        assert_eq!(raw.images[2], e(6, &[3, 4]));
        let raw = parse_presentation_text("(0⁶)", Mode::Real).unwrap();
        assert!(raw.images.iter().all(Form::is_zero));
        let raw = parse_presentation_text("(0^2, 1/2*13 - 2*24, 21)", Mode::Real).unwrap();
        assert_eq!(
            raw.images[2],
            e(4, &[1, 3]).scale(&Gq::ratio(1, 2)) - e(4, &[2, 4]).scale(&Gq::int(2))
        );
        assert_eq!(raw.images[3], -e(4, &[1, 2]));
    }

    #[test]
    fn caret_pairs_and_large_dims() {
        let text = "(0^9, 1^2 + 3^4)";
        let raw = parse_presentation_text(text, Mode::Real).unwrap();
        assert_eq!(raw.images[9], e(10, &[1, 2]) + e(10, &[3, 4]));
        let err = parse_presentation_text("(0^9, 12)", Mode::Real).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn complex_entries() {
        let raw = parse_presentation_text("(0, 0, -12)", Mode::Complex).unwrap();
        assert_eq!(raw.images[2], -e(6, &[1, 2]));
        let raw = parse_presentation_text("(0, 0, 2*dphi^3 = i*11' - 22')", Mode::Complex).unwrap();
        let want = e(6, &[1, 4]).scale(&Gq::new(Q::zero(), Q::new(1, 2))) - e(6, &[2, 5]).scale(&Gq::ratio(1, 2));
        assert_eq!(raw.images[2], want);
        let raw = parse_presentation_text("(0, 1'2)", Mode::Complex).unwrap();
        assert_eq!(raw.images[1], e(4, &[3, 2]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation_text("(0, 1x)", Mode::Real) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_presentation_text("(0, 17)", Mode::Real).is_err());
        assert!(parse_presentation_text("0, 12", Mode::Real).is_err());
        assert!(parse_presentation_text("(0, 12", Mode::Real).is_err());
        assert!(parse_presentation_text("(0, 11)", Mode::Real).is_err());
    }

    #[test]
    fn forms() {
        let f = parse_form("e13 - e46", 6).unwrap();
        assert_eq!(f, e(6, &[1, 3]) - e(6, &[4, 6]));
        let g = parse_form("2*e14 + 1/2 e23 - i e5 + 3", 6).unwrap();
        assert_eq!(g.coeff_of(&[5]), -Gq::i());
        assert_eq!(g.coeff_of(&[]), Gq::int(3));
        let h = parse_form("e(1,10) + 2 i e^{3,4}", 10).unwrap();
        assert_eq!(h.coeff_of(&[3, 4]), Gq::new(Q::zero(), Q::from(2)));
        assert!(parse_form("e21", 6).is_err());
        assert!(parse_form("e17", 6).is_err());
    }
}
