use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use conradian::corpus;
use conradian::dynamics::{dyadic_points, Dyadic};
use conradian::preorder_core::parse_cone_literal;
use conradian::word_core::parse_presentation;
use conradian::{ExponentVector, Presentation, Sign, SignVectorCone};

use crate::Global;

/// A file path, or failing that a shipped presentation named by its stem.
pub fn presentation(global: &Global) -> Result<Presentation> {
    let spec = global
        .rsp
        .as_deref()
        .ok_or_else(|| anyhow!("--rsp is required for this command"))?;
    let path = Path::new(spec);
    let text = if path.exists() {
        std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?
    } else {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(spec);
        corpus::source(stem)
            .ok_or_else(|| anyhow!("{spec}: no such file and no shipped presentation of that name"))?
            .to_string()
    };
    let mut p = parse_presentation(&text).map_err(|e| anyhow!("{spec}: {e}"))?;
    if let Some(b) = global.budget {
        p = p.with_step_budget(b);
    }
    Ok(p)
}

/// A cone literal; a missing `l=` comes from `level`, else from the vector length.
pub fn cone(p: &Presentation, text: &str, level: Option<usize>) -> Result<SignVectorCone> {
    let lit = parse_cone_literal(text)?;
    let m = p.rank();
    let l = match (lit.level, level) {
        (Some(l), Some(k)) if l != k => bail!("cone literal says l={l} but --level is {k}"),
        (Some(l), _) | (None, Some(l)) => l,
        (None, None) => m
            .checked_sub(lit.eps.len())
            .ok_or_else(|| anyhow!("{} directions for {m} generators", lit.eps.len()))?,
    };
    Ok(SignVectorCone::new(m, l, lit.eps)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub g: ExponentVector,
    pub to: Option<Sign>,
}

/// `g=(1,0)` optionally followed by `,to=<+|-|0>`.
pub fn perturbation(text: &str) -> Result<Perturbation> {
    let t = text.trim();
    let rest = t
        .strip_prefix("g=")
        .ok_or_else(|| anyhow!("perturbation must start with g=: `{t}`"))?;
    let close = rest
        .find(')')
        .ok_or_else(|| anyhow!("unclosed vector in `{t}`"))?;
    let g = ExponentVector::parse(&rest[..=close]).map_err(|e| anyhow!(e))?;
    let tail = rest[close + 1..].trim();
    let to = if tail.is_empty() {
        None
    } else {
        let v = tail
            .strip_prefix(',')
            .map(str::trim)
            .and_then(|s| s.strip_prefix("to="))
            .ok_or_else(|| anyhow!("expected `,to=<sign>` in `{t}`"))?;
        Some(Sign::parse(v).ok_or_else(|| anyhow!("bad sign `{v}`"))?)
    };
    Ok(Perturbation { g, to })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Points {
    Dyadic { max_num: u64, max_exp: u64 },
    Ball { radius: usize },
}

impl Points {
    pub fn parse(text: &str) -> Result<Points> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        match parts.as_slice() {
            ["dyadic", n, e] => Ok(Points::Dyadic {
                max_num: n.parse().context("dyadic numerator bound")?,
                max_exp: e.parse().context("dyadic exponent bound")?,
            }),
            ["ball", r] => Ok(Points::Ball {
                radius: r.parse().context("ball radius")?,
            }),
            _ => bail!("points must be dyadic:<num>:<exp> or ball:<radius>, got `{text}`"),
        }
    }

    pub fn dyadics(&self) -> Result<Vec<Dyadic>> {
        match *self {
            Points::Dyadic { max_num, max_exp } => Ok(dyadic_points(max_num, max_exp)),
            Points::Ball { .. } => bail!("the bs12 action needs dyadic points"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_syntax() {
        let p = perturbation("g=(1,0)").unwrap();
        assert_eq!(p.g, ExponentVector::from_i64s(&[1, 0]));
        assert_eq!(p.to, None);
        let p = perturbation("g=(2,0),to=0").unwrap();
        assert_eq!(p.to, Some(Sign::Zero));
        assert!(perturbation("(1,0)").is_err());
    }

    #[test]
    fn points_syntax() {
        assert_eq!(Points::parse("dyadic:8:3").unwrap(), Points::Dyadic { max_num: 8, max_exp: 3 });
        assert_eq!(Points::parse("ball:3").unwrap(), Points::Ball { radius: 3 });
        assert!(Points::parse("grid:3").is_err());
    }

    #[test]
    fn cone_level_inference() {
        let p = corpus::load("z2rel");
        assert_eq!(cone(&p, "eps=[+]", None).unwrap().level(), 1);
        assert_eq!(cone(&p, "eps=[+]", Some(1)).unwrap().level(), 1);
        assert!(cone(&p, "l=0,eps=[+]", Some(1)).is_err());
        assert_eq!(cone(&p, "l=0,eps=[+,-]", None).unwrap().level(), 0);
    }
}
