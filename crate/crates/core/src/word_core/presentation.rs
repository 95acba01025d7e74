use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{ExponentVector, Word, DEFAULT_STEP_BUDGET};
use crate::group::GroupError;

/// Which conjugate a relation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `x_j x_i x_j^-1`
    Pos,
    /// `x_j^-1 x_i x_j`
    Neg,
}

impl Direction {
    pub(crate) fn slot(self) -> usize {
        match self {
            Direction::Pos => 0,
            Direction::Neg => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Direction::Pos => "conj",
            Direction::Neg => "conjinv",
        }
    }

    /// Exponent carried by `x_j` on the left of the conjugate.
    pub fn left_exp(self) -> i64 {
        match self {
            Direction::Pos => 1,
            Direction::Neg => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("relation `{keyword} {j} {i}` needs 1 <= i < j <= m (index out of subnormal range)")]
    IndexOutOfRange {
        keyword: &'static str,
        j: usize,
        i: usize,
    },
    #[error("relation for x_{j} uses generator {k}, violating subnormality (only indices < {j} allowed)")]
    NotSubnormal { j: usize, k: usize },
    #[error("duplicate relation `{keyword} {j} {i}`")]
    Duplicate {
        keyword: &'static str,
        j: usize,
        i: usize,
    },
    #[error("missing `gens <m>` line")]
    MissingGens,
    #[error("generator count must be positive")]
    NoGenerators,
    #[error("collecting relation words failed: {0}")]
    Collection(GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A group with a rational series given by conjugation relations.
#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    pub(crate) m: usize,
    /// `relations[j][i][dir]`, zero-based, `i < j`.
    relations: Vec<Vec<[Word; 2]>>,
    /// Collected forms of the relation words.
    pub(crate) images: Vec<Vec<[ExponentVector; 2]>>,
    /// `trivial[j][i]`: both conjugates of `x_i` by `x_j` equal `x_i`.
    pub(crate) trivial: Vec<Vec<bool>>,
    pub(crate) step_budget: u64,
}

impl Presentation {
    /// Build from an explicit relation table (zero-based keys `(j, i, dir)`).
    /// Missing pairs default to commuting.
    pub fn new(
        name: impl Into<String>,
        m: usize,
        table: BTreeMap<(usize, usize, Direction), Word>,
    ) -> Result<Self, ParseErrorKind> {
        if m == 0 {
            return Err(ParseErrorKind::NoGenerators);
        }
        let mut relations: Vec<Vec<[Word; 2]>> = (0..m)
            .map(|j| {
                (0..j)
                    .map(|i| {
                        let w = Word::from_pairs(&[(i, 1)]);
                        [w.clone(), w]
                    })
                    .collect()
            })
            .collect();
        for (&(j, i, dir), w) in &table {
            if !(i < j && j < m) {
                return Err(ParseErrorKind::IndexOutOfRange {
                    keyword: dir.keyword(),
                    j: j + 1,
                    i: i + 1,
                });
            }
            if let Some(k) = w.max_gen() {
                if k >= j {
                    return Err(ParseErrorKind::NotSubnormal { j: j + 1, k: k + 1 });
                }
            }
            relations[j][i][dir.slot()] = w.clone();
        }
        let mut p = Presentation {
            name: name.into(),
            m,
            relations,
            images: Vec::with_capacity(m),
            trivial: Vec::with_capacity(m),
            step_budget: DEFAULT_STEP_BUDGET,
        };
        // Images at level j only depend on levels below j.
        for j in 0..m {
            let mut row = Vec::with_capacity(j);
            let mut triv = Vec::with_capacity(j);
            for i in 0..j {
                let pos = p
                    .collect(&p.relations[j][i][0])
                    .map_err(ParseErrorKind::Collection)?;
                let neg = p
                    .collect(&p.relations[j][i][1])
                    .map_err(ParseErrorKind::Collection)?;
                let unit = ExponentVector::unit(m, i);
                triv.push(pos == unit && neg == unit);
                row.push([pos, neg]);
            }
            p.images.push(row);
            p.trivial.push(triv);
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Generator count `m`.
    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget.max(1);
        self
    }

    /// Relation word for the conjugate of `x_i` by `x_j` (zero-based, `i < j`).
    pub fn relation(&self, j: usize, i: usize, dir: Direction) -> &Word {
        &self.relations[j][i][dir.slot()]
    }

    /// Collected form of [`Presentation::relation`].
    pub fn relation_image(&self, j: usize, i: usize, dir: Direction) -> &ExponentVector {
        &self.images[j][i][dir.slot()]
    }

    /// True when `x_i` and `x_j` commute according to the table.
    pub fn commutes(&self, j: usize, i: usize) -> bool {
        let (j, i) = if j > i { (j, i) } else { (i, j) };
        j == i || self.trivial[j][i]
    }

    /// True when every relation is the commuting one.
    pub fn is_abelian(&self) -> bool {
        self.trivial.iter().all(|row| row.iter().all(|&t| t))
    }

    pub fn identity_vector(&self) -> ExponentVector {
        ExponentVector::identity(self.m)
    }

    pub fn unit(&self, gen: usize) -> ExponentVector {
        ExponentVector::unit(self.m, gen)
    }

    /// Validate a word's generator indices against this presentation.
    pub fn check_word(&self, w: &Word) -> Result<(), String> {
        match w.max_gen() {
            Some(k) if k >= self.m => Err(format!(
                "generator {} out of range (presentation has {} generators)",
                k + 1,
                self.m
            )),
            _ => Ok(()),
        }
    }

    /// Render back to the `.rsp` text format, listing only non-commuting relations.
    pub fn to_rsp(&self) -> String {
        let mut out = format!("name {}\ngens {}\n", self.name, self.m);
        for j in 0..self.m {
            for i in 0..j {
                if self.trivial[j][i] {
                    continue;
                }
                for dir in [Direction::Pos, Direction::Neg] {
                    out.push_str(&format!(
                        "{} {} {} -> {}\n",
                        dir.keyword(),
                        j + 1,
                        i + 1,
                        self.relation(j, i, dir)
                    ));
                }
            }
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={})", self.name, self.m)
    }
}

/// Whitespace-separated tokens with their one-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Statements of one line, split on `;`, with their byte offsets.
fn statements(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    line.split(';').map(move |seg| {
        let here = offset;
        offset += seg.len() + 1;
        (here, seg)
    })
}

/// Parse the `.rsp` text format. `;` may separate statements on one line.
///
/// ```text
/// name klein
/// gens 2
/// conj 2 1 -> 1^-1      # x2 x1 x2^-1 = x1^-1
/// conjinv 2 1 -> 1^-1   # x2^-1 x1 x2 = x1^-1
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut name = String::from("unnamed");
    let mut gens: Option<(usize, usize)> = None;
    let mut table: BTreeMap<(usize, usize, Direction), Word> = BTreeMap::new();
    let mut pending: Vec<(usize, usize, usize, usize, Direction, Word)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        for (offset, stmt) in statements(line) {
        let toks: Vec<(usize, &str)> = tokens(stmt)
            .into_iter()
            .map(|(c, t)| (c + offset, t))
            .collect();
        let Some(&(col0, kw)) = toks.first() else {
            continue;
        };
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        let syntax = |column: usize, msg: String| err(column, ParseErrorKind::Syntax(msg));
        match kw {
            "name" => {
                if toks.len() != 2 {
                    return Err(syntax(col0, "expected `name <id>`".into()));
                }
                name = toks[1].1.to_string();
            }
            "gens" => {
                if toks.len() != 2 {
                    return Err(syntax(col0, "expected `gens <m>`".into()));
                }
                let (c, t) = toks[1];
                let m: usize = t
                    .parse()
                    .map_err(|_| syntax(c, format!("bad generator count `{t}`")))?;
                if m == 0 {
                    return Err(err(c, ParseErrorKind::NoGenerators));
                }
                if gens.is_some() {
                    return Err(syntax(col0, "duplicate `gens` line".into()));
                }
                gens = Some((m, line_no));
            }
            "conj" | "conjinv" => {
                let dir = if kw == "conj" {
                    Direction::Pos
                } else {
                    Direction::Neg
                };
                if toks.len() < 4 || toks[3].1 != "->" {
                    return Err(syntax(
                        col0,
                        format!("expected `{kw} <j> <i> -> <word>`"),
                    ));
                }
                let parse_idx = |(c, t): (usize, &str)| -> Result<usize, ParseError> {
                    t.parse::<usize>()
                        .map_err(|_| syntax(c, format!("bad generator index `{t}`")))
                };
                let j = parse_idx(toks[1])?;
                let i = parse_idx(toks[2])?;
                if i == 0 || j == 0 || i >= j {
                    return Err(err(
                        toks[1].0,
                        ParseErrorKind::IndexOutOfRange {
                            keyword: dir.keyword(),
                            j,
                            i,
                        },
                    ));
                }
                let word_col = toks.get(4).map(|t| t.0).unwrap_or(toks[3].0 + 2);
                let word_text: Vec<&str> = toks[4..].iter().map(|t| t.1).collect();
                let w = Word::parse(&word_text.join(" ")).map_err(|m| syntax(word_col, m))?;
                if let Some(k) = w.max_gen() {
                    if k + 1 >= j {
                        return Err(err(
                            word_col,
                            ParseErrorKind::NotSubnormal { j, k: k + 1 },
                        ));
                    }
                }
                let key = (j - 1, i - 1, dir);
                if table.contains_key(&key) {
                    return Err(err(
                        col0,
                        ParseErrorKind::Duplicate {
                            keyword: dir.keyword(),
                            j,
                            i,
                        },
                    ));
                }
                table.insert(key, w.clone());
                pending.push((line_no, toks[1].0, j, i, dir, w));
            }
            other => {
                return Err(syntax(col0, format!("unknown directive `{other}`")));
            }
        }
        }
    }

    let Some((m, _)) = gens else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            kind: ParseErrorKind::MissingGens,
        });
    };
    for (line, column, j, i, dir, _) in &pending {
        if *j > m {
            return Err(ParseError {
                line: *line,
                column: *column,
                kind: ParseErrorKind::IndexOutOfRange {
                    keyword: dir.keyword(),
                    j: *j,
                    i: *i,
                },
            });
        }
    }
    Presentation::new(name, m, table).map_err(|kind| ParseError {
        line: 1,
        column: 1,
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KLEIN: &str = "name klein\ngens 2; conj 2 1 -> 1^-1; conjinv 2 1 -> 1^-1";

    fn klein() -> Presentation {
        parse_presentation(KLEIN).unwrap()
    }

    #[test]
    fn klein_relations() {
        let p = klein();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.name(), "klein");
        assert_eq!(p.relation(1, 0, Direction::Pos), &Word::from_pairs(&[(0, -1)]));
        assert_eq!(p.relation(1, 0, Direction::Neg), &Word::from_pairs(&[(0, -1)]));
        assert!(!p.is_abelian());
    }

    #[test]
    fn integers_have_empty_tables() {
        let p = parse_presentation("gens 1").unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.is_abelian());
        assert_eq!(p.to_rsp(), "name unnamed\ngens 1\n");
    }

    #[test]
    fn missing_relations_default_to_commuting() {
        let p = parse_presentation("gens 3\nconj 3 2 -> 1^-1 2^1\nconjinv 3 2 -> 1^1 2^1").unwrap();
        assert_eq!(p.relation(1, 0, Direction::Pos), &Word::from_pairs(&[(0, 1)]));
        assert!(p.commutes(2, 0));
        assert!(!p.commutes(2, 1));
    }

    #[test]
    fn rejects_out_of_range_index() {
        let e = parse_presentation("gens 2\nconj 1 2 -> 1^1").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { .. }));
        let e = parse_presentation("gens 2\nconj 3 1 -> 1^1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { j: 3, .. }));
    }

    #[test]
    fn rejects_non_subnormal_word() {
        let e = parse_presentation("gens 2\nconj 2 1 -> 2^1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
        assert!(matches!(e.kind, ParseErrorKind::NotSubnormal { j: 2, k: 2 }));
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        let e = parse_presentation("gens 2\nconj 2 1 -> 1^-1\nconj 2 1 -> 1^1").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Duplicate { .. }));
        let e = parse_presentation("gens 2\nfrobnicate").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("gens 2\nconj 2 1 1^-1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("name x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingGens);
        let e = parse_presentation("gens 2\nconj 2 1 -> 1^0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_presentation("# header\n\nname k # trailing\ngens 2 # two\nconj 2 1 -> 1^-1\nconjinv 2 1 -> 1^-1\n").unwrap();
        assert_eq!(p.name(), "k");
        let again = parse_presentation(&p.to_rsp()).unwrap();
        assert_eq!(again.to_rsp(), p.to_rsp());
    }
}
