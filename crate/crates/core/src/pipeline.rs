//! Decoding c.e. membership through the lifted groups.
//!
//! The generators `w, g0, g1, b` are lifted once, into GSL by `δ` or into
//! `Aut(B_η)` by `H`; the probes `[g_i, b^{w^{-n}}]` are then formed and
//! tested in the target group alone.

use thiserror::Error;

use crate::ce::{
    column_zero_points, gen_b, gen_g0, gen_g1, gen_w, CeError, ColumnSchemeZ, DecodeVerdict, Enumerator, ProbeReport,
};
use crate::intalg::{BElem, InducedAut, IntalgError};
use crate::perm::Window;
use crate::vspace::{delta_embed, nsim_identity_on, Field, GslElement, VspaceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Gsl(Field),
    Ba,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Vspace(#[from] VspaceError),
    #[error(transparent)]
    Intalg(#[from] IntalgError),
}

struct Probes<G> {
    c0: G,
    c1: G,
}

fn gsl_probes(field: Field, s: ColumnSchemeZ, e: &Enumerator, n: u64) -> Result<Probes<GslElement>, VspaceError> {
    let d = |p| delta_embed(field, p);
    let (w, g0, g1, b) = (d(gen_w(s))?, d(gen_g0(s))?, d(gen_g1(s))?, d(gen_b(s, e))?);
    let y = w.pow(-(n as i64))?;
    let shifted = y.inverse()?.then(&b)?.then(&y)?;
    Ok(Probes {
        c0: g0.commutator(&shifted)?,
        c1: g1.commutator(&shifted)?,
    })
}

fn ba_probes(s: ColumnSchemeZ, e: &Enumerator, n: u64) -> Probes<InducedAut> {
    let h = InducedAut::new;
    let (w, g0, g1, b) = (h(gen_w(s)), h(gen_g0(s)), h(gen_g1(s)), h(gen_b(s, e)));
    let mut y = InducedAut::new(crate::perm::PermExpr::identity());
    for _ in 0..n {
        y = y.then(&w.inverse());
    }
    let shifted = y.inverse().then(&b).then(&y);
    Probes {
        c0: g0.commutator(&shifted),
        c1: g1.commutator(&shifted),
    }
}

/// Same contract as [`crate::ce::probe_membership`], with each probe judged
/// in the lifted group: `≁ 1` on the column-0 basis vectors for GSL, moving
/// some column-0 unit interval for `B_η`.
pub fn lifted_probe_membership(
    target: Target,
    n: u64,
    s: ColumnSchemeZ,
    e: &Enumerator,
    w: Window,
) -> Result<ProbeReport, PipelineError> {
    let needed = s.encode(0, e.horizon() + 1);
    if !w.contains(needed) {
        return Err(CeError::WindowTooSmall { needed: needed + 1 }.into());
    }
    let points: Vec<u64> = column_zero_points(s, w).collect();
    let (g0_nontrivial, g1_nontrivial) = match target {
        Target::Gsl(field) => {
            let p = gsl_probes(field, s, e, n)?;
            (
                nsim_identity_on(p.c0.rep(), points.iter().copied())?,
                nsim_identity_on(p.c1.rep(), points.iter().copied())?,
            )
        }
        Target::Ba => {
            let p = ba_probes(s, e, n);
            let moves = |h: &InducedAut| -> Result<bool, IntalgError> {
                for &x in &points {
                    let u = BElem::unit(x as i64);
                    if h.apply(&u)? != u {
                        return Ok(true);
                    }
                }
                Ok(false)
            };
            (moves(&p.c0)?, moves(&p.c1)?)
        }
    };
    let verdict = if g0_nontrivial || g1_nontrivial {
        DecodeVerdict::In {
            stage: e.stage_of(n).ok_or(CeError::Inconsistent(n))?,
        }
    } else {
        DecodeVerdict::NotByHorizon { horizon: e.horizon() }
    };
    Ok(ProbeReport {
        verdict,
        g0_nontrivial,
        g1_nontrivial,
    })
}
