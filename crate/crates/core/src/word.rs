//! Alphabets, finite words and eventually periodic points.
//!
//! Words store symbol *indices* into an [`Alphabet`]; the alphabet is only
//! needed to parse and render text. Index order is the symbol order used for
//! lexicographic sorting and for the coordinatewise order of hereditary shifts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

pub type Symbol = u8;

const RESERVED: &[char] = &['(', ')', '^', '[', ']', ',', '"'];

/// Ordered set of distinct single-character symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 || symbols.len() > 255 {
            return Err(Error::InvalidAlphabet(alloc::format!(
                "size {} outside 2..=255",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if c.is_whitespace() || RESERVED.contains(c) {
                return Err(Error::InvalidAlphabet(alloc::format!(
                    "reserved symbol {c:?}"
                )));
            }
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(alloc::format!(
                    "duplicate symbol {c:?}"
                )));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1}` with `0 < 1`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: alloc::vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(|i| i as Symbol)
            .ok_or(Error::UnknownSymbol(c))
    }

    pub fn char_of(&self, s: Symbol) -> Result<char> {
        self.symbols
            .get(s as usize)
            .copied()
            .ok_or(Error::SymbolOutOfRange(s))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| self.index_of(c))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Renders a word; symbols outside the alphabet show as `?`.
    pub fn render(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.char_of(s).unwrap_or('?')).collect()
    }

    pub fn contains_word(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.symbols.len())
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_words(&self, n: usize) -> Vec<Word> {
        let k = self.len();
        let mut out = Vec::new();
        let mut cur = alloc::vec![0 as Symbol; n];
        loop {
            out.push(Word(cur.clone()));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if (cur[i] as usize) + 1 < k {
                    cur[i] += 1;
                    for c in cur[i + 1..].iter_mut() {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet(")?;
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite word; may be empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(s: &[Symbol]) -> Self {
        Word(s.to_vec())
    }

    /// Parses a word of `0`/`1` digits over the binary alphabet.
    pub fn binary(text: &str) -> Self {
        Alphabet::binary().parse_word(text).expect("binary word")
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn count(&self, s: Symbol) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"")?;
        for &s in &self.0 {
            if s < 10 {
                write!(f, "{s}")?;
            } else {
                write!(f, "<{s}>")?;
            }
        }
        write!(f, "\"")
    }
}

/// An eventually periodic point `preperiod · period^∞`, kept in canonical form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicPoint {
    preperiod: Word,
    period: Word,
}

impl PeriodicPoint {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut period = primitive_root(&period);
        let mut pre = preperiod.0;
        while let (Some(&a), Some(&b)) = (pre.last(), period.last()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        Ok(PeriodicPoint {
            preperiod: Word(pre),
            period: Word(period),
        })
    }

    pub fn periodic(period: Word) -> Result<Self> {
        Self::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        let pre = self.preperiod.len();
        if i < pre {
            self.preperiod[i]
        } else {
            self.period[(i - pre) % self.period.len()]
        }
    }

    /// The shifted point `σ(self)`.
    pub fn shift(&self) -> PeriodicPoint {
        if self.preperiod.is_empty() {
            let mut p = self.period.0.clone();
            p.rotate_left(1);
            PeriodicPoint {
                preperiod: Word::empty(),
                period: Word(p),
            }
        } else {
            let pre = Word(self.preperiod[1..].to_vec());
            PeriodicPoint {
                preperiod: pre,
                period: self.period.clone(),
            }
        }
    }

    pub fn shift_by(&self, m: usize) -> PeriodicPoint {
        let pre = self.preperiod.len();
        if m <= pre {
            return PeriodicPoint {
                preperiod: Word(self.preperiod[m..].to_vec()),
                period: self.period.clone(),
            };
        }
        let mut p = self.period.0.clone();
        let r = (m - pre) % p.len();
        p.rotate_left(r);
        PeriodicPoint {
            preperiod: Word::empty(),
            period: Word(p),
        }
    }

    /// The word `x_{[i,j)}`.
    pub fn subword(&self, i: usize, j: usize) -> Result<Word> {
        if i >= j {
            return Err(Error::InvalidRange { start: i, end: j });
        }
        Ok((i..j).map(|t| self.symbol_at(t)).collect())
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|t| self.symbol_at(t)).collect()
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        parse_point(alphabet, text)
    }

    /// Renders as `pre(period)^inf`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = alphabet.render(&self.preperiod);
        s.push('(');
        s.push_str(&alphabet.render(&self.period));
        s.push_str(")^inf");
        s
    }
}

impl fmt::Debug for PeriodicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})^inf", self.preperiod, self.period)
    }
}

fn primitive_root(w: &[Symbol]) -> Vec<Symbol> {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]) {
            return w[..d].to_vec();
        }
    }
    w.to_vec()
}

/// Normalized Hamming distance `|{j : u_j != w_j}| / n`.
pub fn hamming_normalized(u: &[Symbol], w: &[Symbol]) -> Result<ExactRational> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(ExactRational::from_counts(
        hamming_count(u, w) as u64,
        u.len() as u64,
    ))
}

/// Number of mismatching positions over the common length.
pub fn hamming_count(u: &[Symbol], w: &[Symbol]) -> usize {
    u.iter().zip(w).filter(|(a, b)| a != b).count()
}

/// Exact mismatch density of two eventually periodic points.
///
/// For such points the Cesàro averages converge, so the upper and lower
/// densities coincide. The value is read off one aligned super-period
/// starting after both preperiods.
pub fn mismatch_density(p: &PeriodicPoint, q: &PeriodicPoint) -> ExactRational {
    let start = p.preperiod.len().max(q.preperiod.len());
    let len = num_integer::lcm(p.period.len(), q.period.len());
    let count = (start..start + len)
        .filter(|&i| p.symbol_at(i) != q.symbol_at(i))
        .count();
    ExactRational::from_counts(count as u64, len as u64)
}

/// Smallest and largest prefix mismatch density of `u` against `w` over
/// prefix lengths `from..=len`: finite-horizon stand-ins for lim inf / lim sup.
pub fn prefix_density_range(
    u: &[Symbol],
    w: &[Symbol],
    from: usize,
) -> Result<(ExactRational, ExactRational)> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    let from = from.max(1);
    if from > u.len() {
        return Err(Error::InvalidRange {
            start: from,
            end: u.len(),
        });
    }
    let mut count = 0u64;
    let mut lo: Option<ExactRational> = None;
    let mut hi: Option<ExactRational> = None;
    for n in 1..=u.len() {
        if u[n - 1] != w[n - 1] {
            count += 1;
        }
        if n >= from {
            let d = ExactRational::from_counts(count, n as u64);
            lo = Some(match lo {
                Some(l) => l.min(d.clone()),
                None => d.clone(),
            });
            hi = Some(match hi {
                Some(h) => h.max(d),
                None => d,
            });
        }
    }
    Ok((lo.unwrap_or_default(), hi.unwrap_or_default()))
}

// Point syntax: items followed by a final `(...)^inf` group. An item is a
// symbol or a parenthesised group, optionally raised to a finite power `^n`.
// Whitespace is ignored, so `((10)^2 0^3)^inf` and `10(100)^inf` both parse.

enum Repeat {
    Times(usize),
    Forever,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(alloc::format!("{msg} at position {}", self.pos))
    }

    // Parses a sequence until `)` or end; returns the expanded word and, when an
    // `^inf` item was met, the split (preperiod, period).
    fn sequence(&mut self, top: bool) -> Result<(Vec<Symbol>, Option<Vec<Symbol>>)> {
        let mut out = Vec::new();
        self.skip_ws();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let atom = if c == '(' {
                self.pos += 1;
                let (inner, inf) = self.sequence(false)?;
                if inf.is_some() {
                    return Err(self.err("nested ^inf"));
                }
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            } else {
                self.pos += 1;
                alloc::vec![self.alphabet.index_of(c)?]
            };
            match self.repeat()? {
                Repeat::Times(n) => {
                    for _ in 0..n {
                        out.extend_from_slice(&atom);
                    }
                    self.skip_ws();
                }
                Repeat::Forever => {
                    if !top {
                        return Err(self.err("^inf only allowed on the outermost final group"));
                    }
                    self.skip_ws();
                    if self.peek().is_some() {
                        return Err(self.err("^inf must be the last item"));
                    }
                    if atom.is_empty() {
                        return Err(Error::EmptyWord);
                    }
                    return Ok((out, Some(atom)));
                }
            }
        }
        Ok((out, None))
    }

    fn repeat(&mut self) -> Result<Repeat> {
        if self.peek() != Some('^') {
            return Ok(Repeat::Times(1));
        }
        self.pos += 1;
        if self.chars[self.pos..].starts_with(&['i', 'n', 'f']) {
            self.pos += 3;
            return Ok(Repeat::Forever);
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let tok: String = self.chars[start..self.pos].iter().collect();
        tok.parse::<usize>()
            .map(Repeat::Times)
            .map_err(|_| self.err("bad exponent"))
    }
}

fn parse_point(alphabet: &Alphabet, text: &str) -> Result<PeriodicPoint> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let (pre, period) = parser.sequence(true)?;
    if parser.peek().is_some() {
        return Err(parser.err("unbalanced ')'"));
    }
    match period {
        Some(period) => PeriodicPoint::new(Word(pre), Word(period)),
        None => Err(Error::Parse(String::from(
            "point must end with a `(...)^inf` group",
        ))),
    }
}

/// Parses a finite word using the same grouping syntax as points, without `^inf`.
pub fn parse_word_expr(alphabet: &Alphabet, text: &str) -> Result<Word> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let (w, inf) = parser.sequence(true)?;
    if inf.is_some() || parser.peek().is_some() {
        return Err(Error::Parse(String::from(
            "expected a finite word expression",
        )));
    }
    Ok(Word(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(s: &str) -> PeriodicPoint {
        PeriodicPoint::parse(&Alphabet::binary(), s).unwrap()
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(['a']).is_err());
        assert!(Alphabet::new(['a', 'a']).is_err());
        assert!(Alphabet::new(['a', '(']).is_err());
        let a = Alphabet::new(['a', 'b', 'c']).unwrap();
        assert_eq!(a.index_of('c').unwrap(), 2);
        assert_eq!(a.all_words(2).len(), 9);
    }

    #[test]
    fn hamming_examples() {
        let w = Word::binary;
        assert!(hamming_normalized(&w("0101"), &w("0101"))
            .unwrap()
            .is_zero());
        assert_eq!(
            hamming_normalized(&w("0101"), &w("1010")).unwrap(),
            ExactRational::one()
        );
        // brute-force count over the 14 positions
        let u = "10101010100000";
        let v = "01010101010101";
        let count = u.chars().zip(v.chars()).filter(|(a, b)| a != b).count();
        assert_eq!(count, 12);
        assert_eq!(
            hamming_normalized(&w(u), &w(v)).unwrap(),
            ExactRational::new(12, 14)
        );
        assert_eq!(
            hamming_normalized(&w("01"), &w("010")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
        assert_eq!(hamming_normalized(&w(""), &w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(bin("(0101)^inf"), bin("(01)^inf"));
        assert_eq!(bin("1(01)^inf"), bin("(10)^inf"));
        assert_eq!(bin("0(0)^inf"), bin("(0)^inf"));
        let p = bin("10(100)^inf");
        assert_eq!(p.preperiod(), &Word::binary("1"));
        assert_eq!(p.period(), &Word::binary("010"));
        let q = bin("11(100)^inf");
        assert_eq!(q.preperiod(), &Word::binary("11"));
        assert_eq!(q.period(), &Word::binary("100"));
        assert_eq!(q.render(&Alphabet::binary()), "11(100)^inf");
        assert_eq!(bin("011(011)^inf"), bin("(011)^inf"));
    }

    #[test]
    fn grouped_syntax() {
        let a = bin("((10)^2 0^3)^inf");
        let b = bin("((10)(10)0 0 0)^inf");
        assert_eq!(a, b);
        assert_eq!(a.period(), &Word::binary("1010000"));
        assert!(PeriodicPoint::parse(&Alphabet::binary(), "0101").is_err());
        assert!(PeriodicPoint::parse(&Alphabet::binary(), "(01)^inf 0").is_err());
        assert!(PeriodicPoint::parse(&Alphabet::binary(), "((01)^inf)").is_err());
        assert!(PeriodicPoint::parse(&Alphabet::binary(), "(02)^inf").is_err());
        assert!(PeriodicPoint::parse(&Alphabet::binary(), "()^inf").is_err());
        assert_eq!(
            parse_word_expr(&Alphabet::binary(), "(10)^3 0^2").unwrap(),
            Word::binary("10101000")
        );
    }

    #[test]
    fn mismatch_density_examples() {
        let p = bin("(01)^inf");
        assert!(mismatch_density(&p, &p).is_zero());
        assert_eq!(mismatch_density(&p, &bin("(10)^inf")), ExactRational::one());
        assert_eq!(
            mismatch_density(&bin("((10)^2 0^3)^inf"), &bin("(0)^inf")),
            ExactRational::new(2, 7)
        );
        // preperiods do not matter
        assert!(mismatch_density(&bin("111(0)^inf"), &bin("(0)^inf")).is_zero());
    }

    #[test]
    fn subword_examples() {
        let p = bin("((10)^2 0^3)^inf");
        assert_eq!(p.subword(0, 7).unwrap(), Word::binary("1010000"));
        assert_eq!(p.subword(7, 14).unwrap(), Word::binary("1010000"));
        assert!(p.subword(3, 3).is_err());
        // y^(1) = ((10)^2 0^3)^inf: 2·1·(1+1) ones in the first 2·1·(4+3) symbols
        assert_eq!(p.subword(0, 14).unwrap().count(1), 4);
    }

    #[test]
    fn shift_drops_first_symbol() {
        let p = bin("1(10)^inf");
        let s = p.shift();
        for i in 0..20 {
            assert_eq!(s.symbol_at(i), p.symbol_at(i + 1));
        }
        for m in 0..9 {
            let q = p.shift_by(m);
            for i in 0..20 {
                assert_eq!(q.symbol_at(i), p.symbol_at(i + m));
            }
        }
    }

    #[test]
    fn lower_density_triangle_failure_on_finite_horizon() {
        // y alternates blocks of 0s and 1s of super-exponentially growing length.
        // Against x = 0^inf and z = 1^inf the lower densities of y are both tiny,
        // while x and z disagree everywhere.
        let mut y = Vec::new();
        let mut len = 1usize;
        let mut bit = 0u8;
        while y.len() < 200_000 {
            y.extend(core::iter::repeat_n(bit, len));
            bit ^= 1;
            len *= 8;
        }
        y.truncate(200_000);
        let x = alloc::vec![0u8; y.len()];
        let z = alloc::vec![1u8; y.len()];
        let from = 1000;
        let (xy_lo, xy_hi) = prefix_density_range(&x, &y, from).unwrap();
        let (yz_lo, _) = prefix_density_range(&y, &z, from).unwrap();
        let (xz_lo, _) = prefix_density_range(&x, &z, from).unwrap();
        assert_eq!(xz_lo, ExactRational::one());
        assert!(xy_lo.clone() + yz_lo.clone() < xz_lo, "{xy_lo} + {yz_lo}");
        // the upper densities are large, as they must be for a pseudometric
        assert!(xy_hi > ExactRational::new(1, 2));
    }
}
