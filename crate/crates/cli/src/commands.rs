use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use conradian::axioms::{
    ambient_family, cone_axiom_audit, conradian_audit, convexity_audit, enumerate_all, enumerate_relative,
    full_audit, isolation_check, perturb_falsify, FamilyMember, Isolation, Perturbed,
};
use conradian::dynamics::{
    bs12_affine_action, bs12_eval_at_zero_preorder, crossing_from_violation, crossing_search, verify_crossing, Bs12,
    CosetAction, OrderedAction, SearchConfig, SearchOutcome,
};
use conradian::group::{ball, Ball, Group};
use conradian::preorder_core::{PreorderEvaluator, TableEvaluator};
use conradian::report::{int, ReportElement};
use conradian::series_analysis::{
    abelian_jump_scan, certify_from_level, certify_no_abelian_jumps, lowest_certified_level, subnormality_audit,
    Certification,
};
use conradian::word_core::{consistency_audit, level_membership};
use conradian::{ExponentVector, Presentation, SignVectorCone, Word};

use crate::inputs::{self, Points};
use crate::{Check, Cli, Command, Global, Outcome, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, EXIT_REFUSED};

const AUDIT_RADIUS: usize = 3;
const ESCALATION_STEPS: usize = 2;

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Enumerate {
            all,
            level,
            audit,
            force_relative,
        } => enumerate(g, *all, *level, *audit, *force_relative),
        Command::Audit {
            cone,
            evaluator,
            bs12,
            check,
            level,
            perturb,
            n_max,
        } => {
            let opts = AuditOptions {
                check: *check,
                level: *level,
                perturb: perturb.as_deref(),
                n_max: *n_max,
                radius: g.radius.unwrap_or(AUDIT_RADIUS),
            };
            if *bs12 {
                audit_bs12(&opts)
            } else {
                audit_presentation(g, cone.as_deref(), evaluator.as_deref(), &opts)
            }
        }
        Command::Crossing {
            action,
            word_bound,
            n_bound,
            points,
            allow_proxy,
            bridge,
        } => {
            let cfg = SearchConfig {
                word_bound: *word_bound,
                n_bound: *n_bound,
                require_certificate: !allow_proxy,
            };
            crossing(g, action, points.as_deref(), &cfg, *bridge)
        }
        Command::Isolate { level, target } => isolate(g, *level, target),
        Command::Scan => scan(g),
        Command::Ball => list_ball(g),
        Command::Collect { word } => collect(g, word),
        Command::Consistency => consistency(g),
    }
}

fn outcome(code: i32, report: Value) -> Result<Outcome> {
    Ok(Outcome { code, report })
}

fn certification_json(c: &Certification) -> (Value, Value) {
    match c {
        Certification::Certified(cert) => (cert.to_json(), Value::Null),
        Certification::Refused(r) => (Value::Null, r.to_json()),
    }
}

fn enumerate(g: &Global, all: bool, level: Option<usize>, audit: bool, force: bool) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let radius = g.radius.unwrap_or(AUDIT_RADIUS);
    let (certification, scope_level) = match level {
        Some(l) if !all => (certify_from_level(&p, l)?, Some(l)),
        _ => (certify_no_abelian_jumps(&p)?, None),
    };
    let (cert_json, refusal_json) = certification_json(&certification);
    let mut report = json!({
        "command": "enumerate",
        "presentation": p.name(),
        "certificate": cert_json,
        "refusal": refusal_json,
    });
    let cones: Vec<SignVectorCone>;
    let mut code = EXIT_OK;
    match (&certification, scope_level) {
        (Certification::Certified(cert), None) => {
            let r = enumerate_all(&p, cert)?;
            code = if r.matches() { EXIT_OK } else { EXIT_ERROR };
            report["enumeration"] = r.to_json();
            cones = r.cones;
        }
        (Certification::Certified(cert), Some(l)) => {
            let r = enumerate_relative(&p, l, cert)?;
            code = if r.matches() { EXIT_OK } else { EXIT_ERROR };
            report["enumeration"] = r.to_json();
            cones = r.cones;
        }
        (Certification::Refused(_), Some(l)) if force => {
            cones = SignVectorCone::all_at_level(p.rank(), l)?;
            report["enumeration"] = json!({
                "scope": "relative",
                "level": int(l),
                "complete": false,
                "cones": cones.iter().map(SignVectorCone::to_json).collect::<Vec<_>>(),
            });
        }
        (Certification::Refused(_), _) => {
            if force {
                bail!("--force-relative needs --level");
            }
            return outcome(EXIT_REFUSED, report);
        }
    }
    if audit {
        let b = ball(&p, radius)?;
        let mut audits = Vec::new();
        for c in &cones {
            let r = full_audit(&p, c, &b, 8)?;
            if !r.pass() {
                code = EXIT_NEGATIVE;
            }
            audits.push(json!({ "cone": c.id(), "report": r.to_json() }));
        }
        report["audits"] = Value::Array(audits);
    }
    outcome(code, report)
}

struct AuditOptions<'a> {
    check: Check,
    level: Option<usize>,
    perturb: Option<&'a str>,
    n_max: u32,
    radius: usize,
}

type Subgroup<'a, E> = (String, Box<dyn Fn(&E) -> bool + Sync + 'a>);

/// Runs the selected checks; returns the report and whether everything passed.
fn run_checks<G, F>(
    group: &G,
    phi: &F,
    b: &Ball<G::Elem>,
    opts: &AuditOptions,
    subgroups: &[Subgroup<'_, G::Elem>],
) -> Result<(Value, bool)>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let mut pass = true;
    let mut out = json!({});
    let clauses = match opts.check {
        Check::All => Some(full_audit(group, phi, b, opts.n_max)?),
        Check::Axioms => Some(cone_axiom_audit(group, phi, b)?),
        Check::Conradian => Some(conradian_audit(group, phi, b, opts.n_max)?),
        Check::Convexity => None,
    };
    if let Some(r) = clauses {
        pass &= r.pass();
        out["audit"] = r.to_json();
    }
    if matches!(opts.check, Check::All | Check::Convexity) && !subgroups.is_empty() {
        let mut conv = Vec::new();
        for (label, pred) in subgroups {
            let r = convexity_audit(group, phi, b, |g| pred(g), label)?;
            pass &= r.pass();
            conv.push(r.to_json());
        }
        out["convexity"] = Value::Array(conv);
    }
    Ok((out, pass))
}

fn level_subgroups<'a>(base: usize, m: usize, only: Option<usize>) -> Result<Vec<Subgroup<'a, ExponentVector>>> {
    let levels: Vec<usize> = match only {
        Some(k) if k > m => bail!("level {k} is above the generator count {m}"),
        Some(k) => vec![k],
        None => (base..=m).collect(),
    };
    Ok(levels
        .into_iter()
        .map(|k| {
            let f: Box<dyn Fn(&ExponentVector) -> bool + Sync> = Box::new(move |g| level_membership(g, k));
            (format!("G_{k}"), f)
        })
        .collect())
}

fn audit_presentation(
    g: &Global,
    cone: Option<&str>,
    evaluator: Option<&std::path::Path>,
    opts: &AuditOptions,
) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let b = ball(&p, opts.radius)?;
    let (subject, phi, base): (Value, Box<dyn PreorderEvaluator<ExponentVector>>, usize) = match (cone, evaluator) {
        (Some(c), None) => {
            let c = inputs::cone(&p, c, None)?;
            let l = c.level();
            (json!({ "cone": c.to_json() }), Box::new(c), l)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let t = TableEvaluator::from_json(&serde_json::from_str(&text)?)?;
            let l = t.base_level().unwrap_or(0);
            (json!({ "evaluator": path.display().to_string() }), Box::new(t), l)
        }
        _ => bail!("give exactly one of --cone, --evaluator or --bs12"),
    };
    let subgroups = level_subgroups(base, p.rank(), opts.level)?;
    let mut report = json!({
        "command": "audit",
        "presentation": p.name(),
        "subject": subject,
        "radius": int(opts.radius),
        // a user-supplied table can be audited but is not classified
        "classification": if evaluator.is_some() { "audited, unclassified" } else { "sign-vector cone" },
    });
    let (checks, pass) = match opts.perturb {
        None => run_checks(&p, &*phi, &b, opts, &subgroups)?,
        Some(spec) => {
            let pert = inputs::perturbation(spec)?;
            let mut falsification = None;
            for r in opts.radius..=opts.radius + ESCALATION_STEPS {
                let br = ball(&p, r)?;
                let f = perturb_falsify(&p, &*phi, &br, &pert.g, pert.to, opts.n_max)?;
                let done = f.clause.is_some();
                falsification = Some(f);
                if done {
                    break;
                }
            }
            let f = falsification.expect("at least one radius tried");
            report["perturbation"] = f.to_json();
            let perturbed = Perturbed::new(&*phi, f.g.clone(), f.perturbed);
            let br = ball(&p, f.radius)?;
            let (checks, pass) = run_checks(&p, &perturbed, &br, opts, &subgroups)?;
            (checks, pass && f.clause.is_none())
        }
    };
    report["checks"] = checks;
    report["pass"] = json!(pass);
    outcome(if pass { EXIT_OK } else { EXIT_NEGATIVE }, report)
}

fn audit_bs12(opts: &AuditOptions) -> Result<Outcome> {
    if opts.perturb.is_some() {
        bail!("--perturb is only supported for presentation-based preorders");
    }
    let group = Bs12;
    let phi = bs12_eval_at_zero_preorder();
    let b = ball(&group, opts.radius)?;
    let (checks, pass) = run_checks(&group, &phi, &b, opts, &[])?;
    let report = json!({
        "command": "audit",
        "subject": "bs12 evaluation at 0",
        "radius": int(opts.radius),
        "checks": checks,
        "pass": pass,
    });
    outcome(if pass { EXIT_OK } else { EXIT_NEGATIVE }, report)
}

fn named_letters<G: Group>(group: &G, names: &[String]) -> Result<Vec<(String, G::Elem)>> {
    Ok(names.iter().cloned().zip(group.letters()?).collect())
}

fn generator_names(m: usize) -> Vec<String> {
    (1..=m).flat_map(|i| [format!("x{i}"), format!("x{i}^-1")]).collect()
}

fn search_json<A: OrderedAction>(act: &A, out: &SearchOutcome<A::Elem, A::Point>) -> Result<(Value, i32)> {
    let mut v = out.to_json();
    let code = match out {
        SearchOutcome::Found(w) => {
            v["verification"] = verify_crossing(act, w)?.to_json();
            EXIT_OK
        }
        SearchOutcome::NoneFound { .. } => EXIT_NEGATIVE,
    };
    Ok((v, code))
}

fn crossing(g: &Global, action: &str, points: Option<&str>, cfg: &SearchConfig, bridge: bool) -> Result<Outcome> {
    let mut report = json!({
        "command": "crossing",
        "action": action,
        "word_bound": int(cfg.word_bound),
        "n_bound": int(cfg.n_bound),
        "require_certificate": cfg.require_certificate,
    });
    let code;
    if action == "bs12" {
        let pts_spec = Points::parse(points.unwrap_or("dyadic:8:3"))?;
        let act = bs12_affine_action();
        let names: Vec<String> = Bs12::LETTER_NAMES.iter().map(|s| s.to_string()).collect();
        let letters = named_letters(&Bs12, &names)?;
        let out = crossing_search(&act, &letters, &pts_spec.dyadics()?, cfg)?;
        let (v, c) = search_json(&act, &out)?;
        report["points"] = json!(points.unwrap_or("dyadic:8:3"));
        report["result"] = v;
        code = c;
        if bridge {
            report["bridge"] = bs12_bridge(g.radius.unwrap_or(AUDIT_RADIUS), cfg.n_bound.max(4))?;
        }
    } else if let Some(lit) = action.strip_prefix("coset:") {
        let p = inputs::presentation(g)?;
        let c = inputs::cone(&p, lit, None)?;
        let radius = match points.map(Points::parse).transpose()? {
            Some(Points::Ball { radius }) => radius,
            Some(Points::Dyadic { .. }) => bail!("coset actions take ball:<radius> points"),
            None => g.radius.unwrap_or(AUDIT_RADIUS),
        };
        let pts = ball(&p, radius)?.elements;
        let act = CosetAction::new(&p, &c);
        let letters = named_letters(&p, &generator_names(p.rank()))?;
        let out = crossing_search(&act, &letters, &pts, cfg)?;
        let (v, cd) = search_json(&act, &out)?;
        report["presentation"] = json!(p.name());
        report["cone"] = c.to_json();
        report["points"] = json!(format!("ball:{radius}"));
        report["result"] = v;
        code = cd;
        if bridge {
            report["bridge"] = json!({ "note": "cones are conradian; there is no violation to convert" });
        }
    } else {
        bail!("unknown action `{action}`: use bs12 or coset:<cone>");
    }
    outcome(code, report)
}

fn bs12_bridge(radius: usize, bound: u64) -> Result<Value> {
    let group = Bs12;
    let phi = bs12_eval_at_zero_preorder();
    let b = ball(&group, radius)?;
    let audit = conradian_audit(&group, &phi, &b, bound as u32)?;
    let stats = audit.conradian.as_ref().expect("conradian audit keeps stats");
    let Some((a, bb)) = stats.persistent_violations.first() else {
        return Ok(json!({ "conradian_pass": audit.pass(), "violation": null }));
    };
    let w = crossing_from_violation(&group, &phi, a, bb, bound)?;
    Ok(json!({
        "conradian_pass": audit.pass(),
        "violation": { "a": a.to_json(), "b": bb.to_json(), "bound": int(bound) },
        "witness": w.to_json(),
    }))
}

fn isolate(g: &Global, level: Option<usize>, target: &str) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let t = inputs::cone(&p, target, level)?;
    let family = ambient_family(&p)?;
    let idx = family
        .iter()
        .position(|m| *m == FamilyMember::Cone(t.clone()))
        .ok_or_else(|| anyhow!("{t} is not in a certified part of the series, so it has no finite family"))?;
    let radius = g.radius.unwrap_or(1);
    let b = ball(&p, radius)?;
    let iso = isolation_check(&p, idx, &family, &b)?;
    let code = match iso {
        Isolation::IsolatedBy { .. } => EXIT_OK,
        Isolation::NotSeparatedAtRadius { .. } => EXIT_NEGATIVE,
    };
    outcome(
        code,
        json!({
            "command": "isolate",
            "presentation": p.name(),
            "target": t.to_json(),
            "radius": int(radius),
            "family": family.iter().map(FamilyMember::id).collect::<Vec<_>>(),
            "result": iso.to_json(),
        }),
    )
}

fn scan(g: &Global) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let radius = g.radius.unwrap_or(2);
    let normality: Vec<Value> = subnormality_audit(&p, radius)?
        .iter()
        .map(|l| {
            json!({
                "level": int(l.level),
                "checked": int(l.checked),
                "pass": l.pass(),
                "failures": l.failures.iter().map(|(g, s, c)| json!({
                    "g": g.to_json(), "s": int(s), "conjugate": c.to_json(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let levels: Vec<Value> = abelian_jump_scan(&p, radius)?.iter().map(|r| r.to_json()).collect();
    let (cert, refusal) = certification_json(&certify_no_abelian_jumps(&p)?);
    outcome(
        EXIT_OK,
        json!({
            "command": "scan",
            "presentation": p.name(),
            "radius": int(radius),
            "subnormality": normality,
            "levels": levels,
            "certificate": cert,
            "refusal": refusal,
            "lowest_certified_level": lowest_certified_level(&p)?.map(int),
        }),
    )
}

fn list_ball(g: &Global) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let radius = g.radius.unwrap_or(2);
    let b = ball(&p, radius)?;
    outcome(
        EXIT_OK,
        json!({
            "command": "ball",
            "presentation": p.name(),
            "radius": int(radius),
            "size": int(b.len()),
            "elements": b.iter().map(ReportElement::to_json).collect::<Vec<_>>(),
        }),
    )
}

fn collect(g: &Global, word: &str) -> Result<Outcome> {
    let p: Presentation = inputs::presentation(g)?;
    let w = Word::parse(word).map_err(|e| anyhow!(e))?;
    p.check_word(&w).map_err(|e| anyhow!(e))?;
    let nf = p.collect(&w)?;
    outcome(
        EXIT_OK,
        json!({
            "command": "collect",
            "presentation": p.name(),
            "word": w.to_string(),
            "normal_form": nf.to_json(),
            "normal_form_word": nf.to_word().to_string(),
        }),
    )
}

fn consistency(g: &Global) -> Result<Outcome> {
    let p = inputs::presentation(g)?;
    let r = consistency_audit(&p, g.radius.unwrap_or(2))?;
    let mut v = r.to_json();
    v["command"] = json!("consistency");
    v["presentation"] = json!(p.name());
    outcome(if r.pass() { EXIT_OK } else { EXIT_NEGATIVE }, v)
}
