//! The shipped example presentations.

use crate::word_core::{parse_presentation, Presentation};

pub const Z: &str = include_str!("../corpus/z.rsp");
pub const Z2: &str = include_str!("../corpus/z2.rsp");
pub const Z2REL: &str = include_str!("../corpus/z2rel.rsp");
pub const KLEIN: &str = include_str!("../corpus/klein.rsp");
pub const HEIS: &str = include_str!("../corpus/heis.rsp");
pub const T2: &str = include_str!("../corpus/t2.rsp");
pub const T3: &str = include_str!("../corpus/t3.rsp");
pub const T4: &str = include_str!("../corpus/t4.rsp");

pub const ALL: [(&str, &str); 8] = [
    ("z", Z),
    ("z2", Z2),
    ("z2rel", Z2REL),
    ("klein", KLEIN),
    ("heis", HEIS),
    ("t2", T2),
    ("t3", T3),
    ("t4", T4),
];

/// Source text of a shipped presentation by name.
pub fn source(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parse a shipped presentation; panics only if the corpus itself is broken.
pub fn load(name: &str) -> Presentation {
    let src = source(name).unwrap_or_else(|| panic!("no shipped presentation `{name}`"));
    parse_presentation(src).unwrap_or_else(|e| panic!("corpus file {name}.rsp: {e}"))
}

/// The family `T_n`: `a_{i+1} a_i a_{i+1}^-1 = a_i^-1`, distant generators commute.
pub fn rivas_family(n: usize) -> Presentation {
    let mut text = format!("name t{n}\ngens {n}\n");
    for i in 1..n {
        text.push_str(&format!("conj {} {i} -> {i}^-1\nconjinv {} {i} -> {i}^-1\n", i + 1, i + 1));
    }
    parse_presentation(&text).expect("generated presentation is well formed")
}
