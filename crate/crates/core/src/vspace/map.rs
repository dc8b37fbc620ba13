use std::collections::{BTreeMap, BTreeSet};

use super::vector::invert_matrix;
use super::{Field, Scalar, Sigma, Subspace, Vector, VspaceError};
use crate::perm::{PermExpr, Window};

/// Rule giving the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mu {
    /// `e_i ↦ e_{p(i)}`.
    PermInduced(PermExpr),
    /// Listed basis images, identity on every other basis vector.
    FiniteModification(BTreeMap<u64, Vector>),
    /// `α·m`.
    Scaled(Scalar, Box<SemilinearMap>),
    /// First map, then second.
    Compose(Box<SemilinearMap>, Box<SemilinearMap>),
}

/// Additive map `μ` with `μ(αu + βv) = σ(α)μ(u) + σ(β)μ(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    field: Field,
    sigma: Sigma,
    mu: Mu,
}

impl SemilinearMap {
    pub fn identity(field: Field) -> Self {
        SemilinearMap::perm_induced(field, PermExpr::identity())
    }

    pub fn perm_induced(field: Field, p: PermExpr) -> Self {
        SemilinearMap {
            field,
            sigma: Sigma::Identity,
            mu: Mu::PermInduced(p),
        }
    }

    /// `c·e_i ↦ σ(c)·e_{p(i)}`.
    pub fn perm_induced_twisted(field: Field, p: PermExpr, sigma: Sigma) -> Result<Self, VspaceError> {
        sigma.check_field(field)?;
        Ok(SemilinearMap {
            field,
            sigma,
            mu: Mu::PermInduced(p),
        })
    }

    pub fn finite_modification(field: Field, sigma: Sigma, table: BTreeMap<u64, Vector>) -> Result<Self, VspaceError> {
        sigma.check_field(field)?;
        if table.values().any(|v| v.field() != field) {
            return Err(VspaceError::FieldMismatch);
        }
        Ok(SemilinearMap {
            field,
            sigma,
            mu: Mu::FiniteModification(table),
        })
    }

    pub fn scaled(alpha: Scalar, m: SemilinearMap) -> Result<Self, VspaceError> {
        if alpha.field() != m.field {
            return Err(VspaceError::FieldMismatch);
        }
        if alpha.is_zero() {
            return Err(VspaceError::DivisionByZero);
        }
        Ok(SemilinearMap {
            field: m.field,
            sigma: m.sigma,
            mu: Mu::Scaled(alpha, Box::new(m)),
        })
    }

    /// `m1` first, then `m2`. Two permutation-induced maps compose to the
    /// map induced by the product.
    pub fn compose(m1: SemilinearMap, m2: SemilinearMap) -> Result<Self, VspaceError> {
        if m1.field != m2.field {
            return Err(VspaceError::FieldMismatch);
        }
        if let (Mu::PermInduced(p), Mu::PermInduced(q)) = (&m1.mu, &m2.mu) {
            return Ok(SemilinearMap {
                field: m1.field,
                sigma: m1.sigma.then(m2.sigma),
                mu: Mu::PermInduced(PermExpr::Prod(vec![p.clone(), q.clone()])),
            });
        }
        Ok(SemilinearMap {
            field: m1.field,
            sigma: m1.sigma.then(m2.sigma),
            mu: Mu::Compose(Box::new(m1), Box::new(m2)),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sigma(&self) -> Sigma {
        self.sigma
    }

    pub fn mu(&self) -> &Mu {
        &self.mu
    }

    pub fn apply_basis(&self, i: u64) -> Result<Vector, VspaceError> {
        self.apply(&Vector::basis(self.field, i))
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, VspaceError> {
        if v.field() != self.field {
            return Err(VspaceError::FieldMismatch);
        }
        match &self.mu {
            Mu::PermInduced(p) => {
                let mut pairs = Vec::new();
                for (i, a) in v.entries() {
                    pairs.push((p.eval(i)?, self.sigma.apply(a)));
                }
                Ok(Vector::from_pairs(self.field, pairs))
            }
            Mu::FiniteModification(t) => {
                let mut r = Vector::zero(self.field);
                for (i, a) in v.entries() {
                    let a = self.sigma.apply(a);
                    r = match t.get(&i) {
                        Some(img) => r.axpy(&a, img),
                        None => r.axpy(&a, &Vector::basis(self.field, i)),
                    };
                }
                Ok(r)
            }
            Mu::Scaled(alpha, m) => Ok(m.apply(v)?.scale(alpha)),
            Mu::Compose(m1, m2) => m2.apply(&m1.apply(v)?),
        }
    }

    pub fn invert(&self) -> Result<SemilinearMap, VspaceError> {
        let sigma = self.sigma.inverse();
        Ok(match &self.mu {
            Mu::PermInduced(p) => SemilinearMap {
                field: self.field,
                sigma,
                mu: Mu::PermInduced(p.clone().inv()),
            },
            Mu::FiniteModification(t) => self.invert_table(t)?,
            Mu::Scaled(alpha, m) => SemilinearMap::scaled(sigma.apply(&alpha.inv()?), m.invert()?)?,
            Mu::Compose(m1, m2) => SemilinearMap::compose(m2.invert()?, m1.invert()?)?,
        })
    }

    /// On `U` = listed indices plus the supports of their images the map is
    /// the matrix `A` (columns are images); the inverse is `σ⁻¹`-semilinear
    /// with matrix `σ⁻¹(A)⁻¹`.
    fn invert_table(&self, t: &BTreeMap<u64, Vector>) -> Result<SemilinearMap, VspaceError> {
        let f = self.field;
        let sinv = self.sigma.inverse();
        let u: Vec<u64> = t
            .keys()
            .copied()
            .chain(t.values().flat_map(|v| v.support().collect::<Vec<_>>()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let col = |k: u64| t.get(&k).cloned().unwrap_or_else(|| Vector::basis(f, k));
        let a: Vec<Vec<Scalar>> = u
            .iter()
            .map(|&j| u.iter().map(|&k| sinv.apply(&col(k).get(j))).collect())
            .collect();
        let n = invert_matrix(f, &a)?;
        let table = u
            .iter()
            .enumerate()
            .map(|(j, &uj)| {
                let img = Vector::from_pairs(f, u.iter().enumerate().map(|(k, &uk)| (uk, n[k][j].clone())));
                (uj, img)
            })
            .collect();
        SemilinearMap::finite_modification(f, sinv, table)
    }

    /// Images of `e_0, …, e_{N−1}`.
    pub fn window_images(&self, w: Window) -> Result<Vec<Vector>, VspaceError> {
        w.points().map(|i| self.apply_basis(i)).collect()
    }

    /// `Some(bijective)` when the basis images of the window stay inside it,
    /// `None` when the window is not closed under the map.
    pub fn bijective_on(&self, w: Window) -> Result<Option<bool>, VspaceError> {
        let imgs = self.window_images(w)?;
        if imgs.iter().any(|v| v.max_index().is_some_and(|m| m >= w.bound())) {
            return Ok(None);
        }
        Ok(Some(Subspace::span(self.field, imgs).dim() as u64 == w.bound()))
    }
}

/// An element of GSL modulo scalars, held in scalar-normal form: the
/// leading coordinate of the image of `e_0` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GslElement {
    rep: SemilinearMap,
}

impl GslElement {
    pub fn normalize(m: SemilinearMap) -> Result<Self, VspaceError> {
        let mut core = m;
        while let Mu::Scaled(_, inner) = core.mu {
            core = *inner;
        }
        let img = core.apply_basis(0)?;
        let (_, lead) = img.leading().ok_or(VspaceError::NotInvertible)?;
        let rep = if lead.is_one() {
            core
        } else {
            SemilinearMap::scaled(lead.inv()?, core)?
        };
        Ok(GslElement { rep })
    }

    pub fn identity(field: Field) -> Self {
        GslElement {
            rep: SemilinearMap::identity(field),
        }
    }

    pub fn rep(&self) -> &SemilinearMap {
        &self.rep
    }

    pub fn field(&self) -> Field {
        self.rep.field
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, VspaceError> {
        self.rep.apply(v)
    }

    /// `self` first, then `o`.
    pub fn then(&self, o: &GslElement) -> Result<Self, VspaceError> {
        GslElement::normalize(SemilinearMap::compose(self.rep.clone(), o.rep.clone())?)
    }

    pub fn inverse(&self) -> Result<Self, VspaceError> {
        GslElement::normalize(self.rep.invert()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, VspaceError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut r = GslElement::identity(self.field());
        for _ in 0..k.unsigned_abs() {
            r = r.then(&base)?;
        }
        Ok(r)
    }

    /// `self⁻¹ · o⁻¹ · self · o`.
    pub fn commutator(&self, o: &GslElement) -> Result<Self, VspaceError> {
        self.inverse()?.then(&o.inverse()?)?.then(self)?.then(o)
    }
}

/// `δ(p)`: `e_i ↦ e_{p(i)}` with identity σ.
pub fn delta_embed(field: Field, p: PermExpr) -> Result<GslElement, VspaceError> {
    GslElement::normalize(SemilinearMap::perm_induced(field, p))
}

/// Same σ, and one nonzero `α` with `μ1(e_i) = α·μ2(e_i)` on the window.
pub fn equivalent_mod_scalar(m1: &SemilinearMap, m2: &SemilinearMap, w: Window) -> Result<bool, VspaceError> {
    if m1.field != m2.field {
        return Err(VspaceError::FieldMismatch);
    }
    if m1.sigma != m2.sigma {
        return Ok(false);
    }
    let mut alpha: Option<Scalar> = None;
    for i in w.points() {
        let (a, b) = (m1.apply_basis(i)?, m2.apply_basis(i)?);
        let Some((j, bj)) = b.leading() else {
            return Err(VspaceError::NotInvertible);
        };
        let ratio = a.get(j).div(bj)?;
        if ratio.is_zero() || alpha.as_ref().is_some_and(|x| *x != ratio) || a != b.scale(&ratio) {
            return Ok(false);
        }
        alpha = Some(ratio);
    }
    Ok(true)
}

/// Whether `m ≁ 1` is visible on the window: σ is nontrivial, `μ(e_0)` is
/// independent of `e_0`, or some later `e_i` is scaled by a different factor.
pub fn nsim_identity(m: &SemilinearMap, w: Window) -> Result<bool, VspaceError> {
    nsim_identity_on(m, w.points())
}

/// [`nsim_identity`] over `e_0` and the given basis indices.
pub fn nsim_identity_on(m: &SemilinearMap, indices: impl IntoIterator<Item = u64>) -> Result<bool, VspaceError> {
    if m.sigma != Sigma::Identity {
        return Ok(true);
    }
    let img0 = m.apply_basis(0)?;
    let alpha = img0.get(0);
    if alpha.is_zero() || img0 != Vector::basis(m.field, 0).scale(&alpha) {
        return Ok(true);
    }
    for i in indices {
        if m.apply_basis(i)? != Vector::basis(m.field, i).scale(&alpha) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The lattice map `S ↦ μ(S)`.
pub fn induced(g: &GslElement, s: &Subspace) -> Result<Subspace, VspaceError> {
    let imgs = s.basis().iter().map(|b| g.apply(b)).collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(s.field(), imgs))
}
