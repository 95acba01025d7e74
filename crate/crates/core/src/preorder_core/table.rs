use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{PreorderError, PreorderEvaluator, Sign};
use crate::group::Ball;
use crate::report::{int, ReportElement};
use crate::word_core::{level_membership, ExponentVector};

type BasePredicate<E> = Box<dyn Fn(&E) -> bool + Send + Sync>;

/// A sign function known only on finitely many elements.
pub struct TableEvaluator<E> {
    entries: BTreeMap<E, Sign>,
    base: BasePredicate<E>,
    base_level: Option<usize>,
}

impl<E: fmt::Debug> fmt::Debug for TableEvaluator<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TableEvaluator")
            .field("entries", &self.entries)
            .field("base_level", &self.base_level)
            .finish()
    }
}

impl<E: Ord + Clone> TableEvaluator<E> {
    pub fn new(
        entries: BTreeMap<E, Sign>,
        base: impl Fn(&E) -> bool + Send + Sync + 'static,
    ) -> Self {
        TableEvaluator {
            entries,
            base: Box::new(base),
            base_level: None,
        }
    }

    /// Tabulate another evaluator over a ball.
    pub fn tabulate<F>(phi: &F, ball: &Ball<E>, base: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self
    where
        F: PreorderEvaluator<E> + ?Sized,
    {
        let entries = ball
            .iter()
            .filter(|g| phi.in_domain(g))
            .map(|g| (g.clone(), phi.sign(g)))
            .collect();
        Self::new(entries, base)
    }

    pub fn entries(&self) -> &BTreeMap<E, Sign> {
        &self.entries
    }

    pub fn set(&mut self, g: E, s: Sign) {
        self.entries.insert(g, s);
    }
}

impl<E: Ord + Sync> PreorderEvaluator<E> for TableEvaluator<E> {
    fn sign(&self, g: &E) -> Sign {
        self.entries.get(g).copied().unwrap_or(Sign::Zero)
    }

    fn in_base(&self, g: &E) -> bool {
        (self.base)(g)
    }

    fn in_domain(&self, g: &E) -> bool {
        self.entries.contains_key(g)
    }
}

impl TableEvaluator<ExponentVector> {
    /// Table over a presentation whose declared base is `G_level`.
    pub fn at_level(entries: BTreeMap<ExponentVector, Sign>, level: usize) -> Self {
        let mut t = Self::new(entries, move |g| level_membership(g, level));
        t.base_level = Some(level);
        t
    }

    pub fn base_level(&self) -> Option<usize> {
        self.base_level
    }

    /// Dump as `{presentation, radius, base_level, entries: [[vector, sign], ...]}`.
    pub fn to_json(&self, presentation: &str, radius: usize) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(g, s)| json!([g.to_json(), s.symbol()]))
            .collect();
        json!({
            "presentation": presentation,
            "radius": int(radius),
            "base_level": self.base_level.map(int),
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PreorderError> {
        let bad = |m: &str| PreorderError::Literal(format!("evaluator dump: {m}"));
        let level: usize = v
            .get("base_level")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing base_level"))?
            .parse()
            .map_err(|_| bad("bad base_level"))?;
        let mut entries = BTreeMap::new();
        for e in v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?
        {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("entry"))?;
            let vec = pair[0]
                .as_array()
                .ok_or_else(|| bad("vector"))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("exponent"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let s = pair[1]
                .as_str()
                .and_then(Sign::parse)
                .ok_or_else(|| bad("sign"))?;
            entries.insert(ExponentVector(vec), s);
        }
        Ok(Self::at_level(entries, level))
    }
}
