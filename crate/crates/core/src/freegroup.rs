//! Reduced words over the doubled alphabet and the free-group law.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator_index: usize,
    pub barred: bool,
}

impl Letter {
    pub fn gen(i: usize) -> Self {
        Letter { generator_index: i, barred: false }
    }

    pub fn bar(i: usize) -> Self {
        Letter { generator_index: i, barred: true }
    }

    pub fn inverse(self) -> Self {
        Letter { generator_index: self.generator_index, barred: !self.barred }
    }

    /// Dense index into per-letter tables: `2 * generator + barred`.
    pub fn code(self) -> usize {
        2 * self.generator_index + usize::from(self.barred)
    }

    pub fn from_code(code: usize) -> Self {
        Letter { generator_index: code / 2, barred: code % 2 == 1 }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator_index == other.generator_index && self.barred != other.barred
    }
}

/// All `2n` letters in code order.
pub fn letters(n: usize) -> impl Iterator<Item = Letter> + Clone {
    (0..2 * n).map(Letter::from_code)
}

/// An element of the free monoid over the doubled alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].is_inverse_of(p[1]))
    }

    /// Only generators, no formal inverses.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.barred)
    }

    /// Unbarred word from generator indices.
    pub fn from_gens(gens: &[usize]) -> Word {
        Word(gens.iter().map(|&g| Letter::gen(g)).collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// A reduced word: the canonical form of an element of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Word);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Word::empty())
    }

    pub fn letter(l: Letter) -> Self {
        GroupElement(Word(vec![l]))
    }

    /// Wrap a word already known to be reduced.
    pub fn from_reduced(w: Word) -> Result<Self> {
        if w.is_reduced() {
            Ok(GroupElement(w))
        } else {
            Err(Error::Precondition("word is not reduced".into()))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0 .0
    }

    /// The length l(w).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.0 .0.last().copied()
    }
}

/// Unique reduced word equal to `w` in the free group (single stack scan).
pub fn reduce(w: &Word) -> GroupElement {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        match stack.last() {
            Some(&top) if top.is_inverse_of(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    GroupElement(Word(stack))
}

pub fn group_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    reduce(&a.0.concat(&b.0))
}

pub fn group_inv(a: &GroupElement) -> GroupElement {
    GroupElement(Word(a.letters().iter().rev().map(|l| l.inverse()).collect()))
}

/// Longest proper prefix and the nonempty suffixes in increasing length.
pub fn prefix_suffixes(w: &GroupElement) -> Result<(GroupElement, Vec<GroupElement>)> {
    let ls = w.letters();
    if ls.is_empty() {
        return Err(Error::Precondition("prefix of the identity is undefined".into()));
    }
    let prefix = GroupElement(Word(ls[..ls.len() - 1].to_vec()));
    let suffixes = (1..=ls.len())
        .map(|k| GroupElement(Word(ls[ls.len() - k..].to_vec())))
        .collect();
    Ok((prefix, suffixes))
}

/// True iff the parts multiply to `w` without any cancellation.
pub fn is_reduced_factorization(w: &GroupElement, parts: &[GroupElement]) -> bool {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    if total != w.len() {
        return false;
    }
    let prod = parts.iter().fold(GroupElement::identity(), |acc, p| group_mul(&acc, p));
    &prod == w
}

/// Ordered generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        if names.is_empty() {
            return Err(Error::Precondition("alphabet must be nonempty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Precondition(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Comma-separated list, e.g. `x,y,z`.
    pub fn parse(list: &str) -> Result<Self> {
        let parts: Vec<&str> = list.split(',').filter(|s| !s.trim().is_empty()).collect();
        Self::new(&parts)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.names[l.generator_index];
        if l.barred {
            format!("{n}^-1")
        } else {
            n.clone()
        }
    }

    /// Space-separated letters; the empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters().iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn format_element(&self, g: &GroupElement) -> String {
        self.format_word(g.word())
    }

    /// Split a run of name characters into generator names. Exact names win;
    /// otherwise the run must segment uniquely-greedily into declared names.
    pub fn split_name(&self, run: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.index_of(run) {
            return Some(vec![i]);
        }
        // longest-match segmentation with backtracking
        fn go(al: &Alphabet, s: &str, acc: &mut Vec<usize>) -> bool {
            if s.is_empty() {
                return true;
            }
            let mut cands: Vec<usize> =
                (0..al.names.len()).filter(|&i| s.starts_with(al.names[i].as_str())).collect();
            cands.sort_by_key(|&i| std::cmp::Reverse(al.names[i].len()));
            for i in cands {
                acc.push(i);
                if go(al, &s[al.names[i].len()..], acc) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        go(self, run, &mut acc).then_some(acc)
    }

    /// Parse a word: names, `x^-1` or `x'` for inverses, juxtaposed or
    /// whitespace-separated; `1` (or an empty string) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let bytes = text.as_bytes();
        let mut out: Vec<Letter> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            // a lone `1` is the empty word
            if c.is_whitespace() || (c == '1' && out.is_empty() && text[i + 1..].trim().is_empty()) {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let run = &text[start..i];
                let gens = self
                    .split_name(run)
                    .ok_or_else(|| Error::UnknownGenerator(run.to_string()))?;
                out.extend(gens.into_iter().map(Letter::gen));
            } else if c == '\'' {
                let last = out.last_mut().ok_or(Error::Parse { pos: i, msg: "dangling `'`".into() })?;
                *last = last.inverse();
                i += 1;
            } else if text[i..].starts_with("^-1") {
                let last = out.last_mut().ok_or(Error::Parse { pos: i, msg: "dangling `^-1`".into() })?;
                *last = last.inverse();
                i += 3;
            } else {
                return Err(Error::Parse { pos: i, msg: format!("unexpected `{c}` in word") });
            }
        }
        Ok(Word(out))
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        Ok(reduce(&self.parse_word(text)?))
    }
}

/// Generic fallback rendering (`g0`, `g1^-1`, ...).
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters()
            .iter()
            .map(|l| if l.barred { format!("g{}^-1", l.generator_index) } else { format!("g{}", l.generator_index) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
