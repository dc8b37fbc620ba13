use anyhow::{bail, Context, Result};
use symcode::ce::{column_zero_window, probe_membership, ColumnSchemeZ, DecodeVerdict, Enumerator};
use symcode::intalg::{kernel_witness, moved_region, psi_check, PhiClass, PsiVerdict};
use symcode::lang::parse;
use symcode::pairing::pair;
use symcode::perm::{classify, cycle_profile, window_image, AtomRegistry, ClassVerdict, PermExpr, Window};
use symcode::pi2::{decode_at_horizon, ColumnScheme2, Construction, Pi2Predicate};
use symcode::pipeline::{lifted_probe_membership, Target};
use symcode::verify::{acceptance, properties, Record, Report};
use symcode::vspace::{delta_embed, nsim_identity, property_d_holds, refute_property_d, Field, Subspace, Vector};

use crate::config::{source, Settings, Source};

const DEFAULT_WINDOW: u64 = 64;
const DEFAULT_HORIZON: u64 = 200;
const DEFAULT_STAGES: u64 = 1600;
const DEFAULT_THRESHOLD: u64 = 10;

/// Marks a record that reports a value without a reference to compare to.
const NO_REFERENCE: &str = "-";

pub enum PermAction {
    Eval(u64),
    Image(u64),
    Profile(u64),
    Classify(u64),
}

fn expr(s: &Settings) -> Result<(String, PermExpr)> {
    let text = s.expr.clone().context("--expr is required")?;
    let e = parse(&text, &AtomRegistry::standard()).with_context(|| format!("parsing `{text}`"))?;
    Ok((text, e))
}

fn window(n: u64) -> Result<Window> {
    Ok(Window::new(n)?)
}

fn field(s: &Settings) -> Result<Field> {
    Ok(s.field.as_deref().unwrap_or("Q").parse()?)
}

fn info(name: &str, inputs: String, got: String) -> Record {
    Record::new(name, inputs, NO_REFERENCE, got, true)
}

fn class_text(v: &ClassVerdict) -> String {
    match v {
        ClassVerdict::FinTwoCycles(k) => format!("FinTwoCycles({k})"),
        ClassVerdict::InfEvidence { two_cycles, window } => format!("InfEvidence({two_cycles} in {window})"),
        ClassVerdict::Unknown => "Unknown".into(),
    }
}

pub fn perm(s: &Settings, action: PermAction) -> Result<Report> {
    let (text, e) = expr(s)?;
    let mut r = Report::new(format!("perm --expr {text}"));
    match action {
        PermAction::Eval(x) => {
            let y = e.eval(x)?;
            let back = e.eval_inverse(y)?;
            r.push(info("eval", format!("x={x}"), y.to_string()));
            r.push(Record::compare(
                "eval.inverse",
                format!("y={y}"),
                x.to_string(),
                back.to_string(),
            ));
        }
        PermAction::Image(n) => {
            let moved: Vec<String> = window_image(&e, window(n)?)?
                .into_iter()
                .filter(|(x, y)| x != y)
                .map(|(x, y)| format!("{x}->{y}"))
                .collect();
            r.push(info("image", format!("window={n}"), moved.join(" ")));
        }
        PermAction::Profile(n) => {
            let w = window(n)?;
            let p = cycle_profile(&e, w, w.default_budget())?;
            let mut parts: Vec<String> = p.counts.iter().map(|(l, c)| format!("{l}:{c}")).collect();
            parts.push(format!("escapes:{}", p.escapes));
            r.push(info("profile", format!("window={n}"), parts.join(" ")));
            r.push(info(
                "profile.two_cycles",
                format!("window={n}"),
                p.two_cycles().to_string(),
            ));
        }
        PermAction::Classify(n) => {
            let t = s.threshold.unwrap_or(DEFAULT_THRESHOLD);
            let v = classify(&e, window(n)?, t as usize)?;
            r.push(info("classify", format!("window={n} threshold={t}"), class_text(&v)));
        }
    }
    Ok(r)
}

fn enumerator(s: &Settings) -> Result<Enumerator> {
    let arg = s.set.as_deref().unwrap_or("evens");
    Ok(match source(arg)? {
        Source::Named(name) => Enumerator::named(&name, s.horizon.unwrap_or(DEFAULT_HORIZON))?,
        Source::File { path, text } => Enumerator::parse_table(&path.display().to_string(), &text, s.horizon)?,
    })
}

fn predicate(s: &Settings) -> Result<Pi2Predicate> {
    let arg = s.pred.as_deref().unwrap_or("always");
    Ok(match source(arg)? {
        Source::Named(name) => Pi2Predicate::named(&name)?,
        Source::File { text, .. } => Pi2Predicate::parse_table(&text)?,
    })
}

fn verdict_text(v: DecodeVerdict) -> String {
    match v {
        DecodeVerdict::In { stage } => format!("In(t={stage})"),
        DecodeVerdict::NotByHorizon { horizon } => format!("NotByHorizon({horizon})"),
    }
}

/// Membership by the horizon, read off the enumeration itself.
fn ce_truth(e: &Enumerator, n: u64) -> DecodeVerdict {
    match e.stage_of(n) {
        Some(stage) => DecodeVerdict::In { stage },
        None => DecodeVerdict::NotByHorizon { horizon: e.horizon() },
    }
}

fn ce_window(s: &Settings, e: &Enumerator) -> Result<Window> {
    match s.window {
        Some(n) => window(n),
        None => Ok(column_zero_window(ColumnSchemeZ, e.horizon())),
    }
}

pub fn code2(s: &Settings) -> Result<Report> {
    let e = enumerator(s)?;
    let w = ce_window(s, &e)?;
    let count = s.n.unwrap_or(32);
    let mut r = Report::new(format!(
        "code2 --set {} --horizon {} --window {}",
        e.name(),
        e.horizon(),
        w.bound()
    ));
    for n in 0..count {
        let p = probe_membership(n, ColumnSchemeZ, &e, w)?;
        let inputs = format!("g0={} g1={}", p.g0_nontrivial as u8, p.g1_nontrivial as u8);
        r.push(Record::compare(
            format!("n{n:04}"),
            inputs,
            verdict_text(ce_truth(&e, n)),
            verdict_text(p.verdict),
        ));
    }
    Ok(r)
}

fn class_name(v: &ClassVerdict) -> &'static str {
    match v {
        ClassVerdict::InfEvidence { .. } => "in",
        ClassVerdict::FinTwoCycles(_) => "out",
        ClassVerdict::Unknown => "unknown",
    }
}

pub fn code3(s: &Settings) -> Result<Report> {
    let pred = predicate(s)?;
    let stages = s.stages.unwrap_or(DEFAULT_STAGES);
    let threshold = s.threshold.unwrap_or(DEFAULT_THRESHOLD);
    let count = s.n.unwrap_or(16);
    let mut r = Report::new(format!(
        "code3 --pred {} --stages {stages} --threshold {threshold}",
        s.pred.as_deref().unwrap_or(pred.name())
    ));
    let milestones = [stages.div_ceil(4), stages.div_ceil(2), stages];
    let mut c = Construction::new(ColumnScheme2, pred.clone());
    for &m in &milestones {
        c.run_to(m);
        for n in 0..count {
            let want = (0..)
                .take_while(|&t| pair(n, t) < m)
                .filter(|&t| pred.holds(n, t))
                .count();
            r.push(Record::compare(
                format!("n{n:04}.count@{m:06}"),
                format!("S={m}"),
                want.to_string(),
                c.case1_count(n).to_string(),
            ));
        }
    }
    for n in 0..count {
        let v = decode_at_horizon(&c, n, threshold);
        let want = if pred.truth_class(n) { "in" } else { "out" };
        r.push(Record::new(
            format!("n{n:04}.verdict"),
            class_text(&v),
            want,
            class_name(&v),
            class_name(&v) == want,
        ));
    }
    Ok(r)
}

pub fn gsl(s: &Settings) -> Result<Report> {
    let (text, e) = expr(s)?;
    let f = field(s)?;
    let n = s.window.unwrap_or(DEFAULT_WINDOW);
    let w = window(n)?;
    let inputs = format!("field={f} window={n}");
    let mut r = Report::new(format!("gsl --expr {text} --field {f} --window {n}"));
    let g = delta_embed(f, e.clone())?;
    let mut mismatch = None;
    for i in w.points() {
        let want = Vector::basis(f, e.eval(i)?);
        if g.rep().apply_basis(i)? != want {
            mismatch = Some(i);
            break;
        }
    }
    r.push(Record::compare(
        "delta.basis_images",
        inputs.clone(),
        "e_i -> e_p(i)".into(),
        mismatch.map_or("e_i -> e_p(i)".into(), |i| format!("differs at e_{i}")),
    ));
    let moves = w.points().map(|x| e.eval(x)).collect::<Result<Vec<_>, _>>()?;
    let moves = moves.iter().enumerate().any(|(x, &y)| x as u64 != y);
    r.push(Record::compare(
        "delta.nsim_identity",
        inputs.clone(),
        moves.to_string(),
        nsim_identity(g.rep(), w)?.to_string(),
    ));
    if let Some(fin) = e.finitary()? {
        // (D) is linear in v, so the window basis vectors decide it there.
        let samples: Vec<Vector> = w.points().map(|i| Vector::basis(f, i)).collect();
        r.push(Record::compare(
            "property_d",
            inputs,
            "holds".into(),
            if property_d_holds(f, &fin, &samples)? {
                "holds"
            } else {
                "fails"
            }
            .into(),
        ));
    } else if e.swap_certificate()?.is_some() {
        let wsp = Subspace::coordinate(f, w.points());
        let x = refute_property_d(f, &e, &wsp)?;
        r.push(info(
            "property_d.witness",
            format!("{inputs} W=span(e_0..e_{})", n - 1),
            x.to_string(),
        ));
    } else {
        r.push(info("property_d", inputs, "neither finitary nor certified".into()));
    }
    Ok(r)
}

pub fn ba(s: &Settings) -> Result<Report> {
    let (text, e) = expr(s)?;
    let n = s.window.unwrap_or(DEFAULT_WINDOW);
    let w = window(n)?;
    let inputs = format!("window={n}");
    let mut r = Report::new(format!("ba --expr {text} --window {n}"));
    let c = PhiClass::of(&e)?;
    let region = moved_region(&c, w);
    r.push(info(
        "moved_region",
        inputs.clone(),
        format!(
            "{}{}",
            region.region,
            if region.partial { " (cut at window)" } else { "" }
        ),
    ));
    let (want, sup_known) = match &c {
        PhiClass::Finitary(_) => ("SupExists", true),
        PhiClass::Certified { cert, .. } if !cert.has_fixed_points() => ("SupExists", false),
        PhiClass::Certified { .. } => ("NoSupEvidence", false),
    };
    let v = psi_check(&c, w)?;
    let got = match &v {
        PsiVerdict::SupExists(z) => format!("SupExists {z}"),
        PsiVerdict::NoSupEvidence { candidates } => format!("NoSupEvidence ({} candidates refuted)", candidates.len()),
    };
    let mut pass = v.kind() == want;
    if let (PsiVerdict::SupExists(z), true) = (&v, sup_known) {
        pass &= *z == region.region;
    }
    r.push(Record::new("psi", inputs.clone(), want, got, pass));
    if let PhiClass::Finitary(f) = &c {
        if !f.is_identity() {
            let k = kernel_witness(f)?;
            r.push(Record::compare(
                "kernel_witness",
                format!("a={}", k.a),
                "verified".into(),
                if k.verified() { "verified" } else { "rejected" }.into(),
            ));
        }
    }
    Ok(r)
}

pub fn pipeline(s: &Settings) -> Result<Report> {
    let e = enumerator(s)?;
    let w = ce_window(s, &e)?;
    let count = s.n.unwrap_or(8);
    let target = match s.target.as_deref().unwrap_or("gsl") {
        "gsl" => Target::Gsl(field(s)?),
        "ba" => Target::Ba,
        t => bail!("unknown target `{t}` (expected gsl or ba)"),
    };
    let label = match target {
        Target::Gsl(f) => format!("gsl --field {f}"),
        Target::Ba => "ba".into(),
    };
    let mut r = Report::new(format!(
        "pipeline --set {} --target {label} --horizon {} --window {}",
        e.name(),
        e.horizon(),
        w.bound()
    ));
    for n in 0..count {
        let lifted = lifted_probe_membership(target, n, ColumnSchemeZ, &e, w)?;
        let direct = probe_membership(n, ColumnSchemeZ, &e, w)?;
        let want = ce_truth(&e, n);
        r.push(Record::new(
            format!("n{n:04}"),
            format!("direct={}", verdict_text(direct.verdict)),
            verdict_text(want),
            verdict_text(lifted.verdict),
            lifted == direct && lifted.verdict == want,
        ));
    }
    Ok(r)
}

pub fn suite(s: &Settings, name: &str) -> Result<Report> {
    let seed = s.seed.unwrap_or(0);
    match name {
        "acceptance" => Ok(acceptance(seed)),
        "properties" => Ok(properties(seed)),
        _ => bail!("unknown suite `{name}` (expected acceptance or properties)"),
    }
}
