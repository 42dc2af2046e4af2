//! Slow well-formedness validator.
//!
//! Re-derives the typing of a checked telescope from scratch, entry by
//! entry, using plain rule applications rather than the elaborator's
//! bidirectional machinery. Used as a regression check on elaborator
//! output and on generated signatures.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use super::norm::{conv_tm, conv_ty, normalize_ty};
use super::subst::{subst_tm, subst_ty, Subst};
use super::{Binding, CoreTm, CoreTy, Ctx, MetaExpr, MetaTy};

/// External declarations in scope: opaque sets and opaque constants of
/// those sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Externals {
    sets: BTreeSet<String>,
    consts: BTreeMap<String, String>,
}

impl Externals {
    pub fn declare_set(&mut self, name: &str) {
        self.sets.insert(name.to_owned());
    }

    pub fn declare_const(&mut self, name: &str, set: &str) {
        self.consts.insert(name.to_owned(), set.to_owned());
    }

    pub fn is_set(&self, name: &str) -> bool {
        self.sets.contains(name)
    }

    pub fn const_set(&self, name: &str) -> Option<&str> {
        self.consts.get(name).map(String::as_str)
    }

    pub fn set_names(&self) -> impl Iterator<Item = &str> {
        self.sets.iter().map(String::as_str)
    }

    pub fn const_names(&self) -> impl Iterator<Item = (&str, &str)> {
        self.consts.iter().map(|(c, s)| (c.as_str(), s.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty() && self.consts.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum WfError {
    #[error("entry {entry}: {source}")]
    Entry {
        entry: String,
        #[source]
        source: Box<WfError>,
    },
    #[error("variable {0} out of scope or of the wrong kind")]
    BadVariable(usize),
    #[error("undeclared external {0}")]
    UndeclaredExternal(String),
    #[error("Fin must have at least one element")]
    EmptyFin,
    #[error("meta literal does not fit its set: {0}")]
    BadMetaLiteral(String),
    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch { expected: String, got: String },
    #[error("term is not inferable: {0}")]
    NotInferable(String),
    #[error("expected a function type, got {0}")]
    NotAFunction(String),
    #[error("meta variable used as a set must have a declared-set type")]
    NotASet,
}

/// Validate a whole telescope against its external declarations.
pub fn validate_signature(
    externals: &Externals,
    entries: &[(String, CoreTy)],
) -> Result<(), WfError> {
    let mut ctx = Ctx::new();
    for (name, ty) in entries {
        validate_entry(externals, &ctx, ty).map_err(|e| WfError::Entry {
            entry: name.clone(),
            source: Box::new(e),
        })?;
        ctx = ctx.push_obj(ty.clone());
    }
    Ok(())
}

/// Validate one entry type in the context of the entries before it.
pub fn validate_entry(ext: &Externals, ctx: &Ctx, ty: &CoreTy) -> Result<(), WfError> {
    wf_ty(ext, ctx, ty)
}

fn wf_ty(ext: &Externals, ctx: &Ctx, ty: &CoreTy) -> Result<(), WfError> {
    match ty {
        CoreTy::U => Ok(()),
        CoreTy::El(a) => check_tm(ext, ctx, a, &CoreTy::U),
        CoreTy::Pi(dom, cod) => {
            check_tm(ext, ctx, dom, &CoreTy::U)?;
            wf_ty(ext, &ctx.push_obj(CoreTy::El(dom.clone())), cod)
        }
        CoreTy::PiExt(dom, cod) => {
            wf_meta_ty(ext, ctx, dom)?;
            wf_ty(ext, &ctx.push_meta(dom.clone()), cod)
        }
    }
}

fn wf_meta_ty(ext: &Externals, ctx: &Ctx, mt: &MetaTy) -> Result<(), WfError> {
    match mt {
        MetaTy::Var(ix) => match ctx.get(*ix) {
            Some(Binding::Meta(MetaTy::Declared(_))) => Ok(()),
            Some(Binding::Meta(_)) => Err(WfError::NotASet),
            _ => Err(WfError::BadVariable(*ix)),
        },
        MetaTy::Declared(name) => {
            if ext.is_set(name) {
                Ok(())
            } else {
                Err(WfError::UndeclaredExternal(name.clone()))
            }
        }
        MetaTy::Bool => Ok(()),
        MetaTy::Fin(n) => {
            if *n >= 1 {
                Ok(())
            } else {
                Err(WfError::EmptyFin)
            }
        }
    }
}

fn check_meta_expr(
    ext: &Externals,
    ctx: &Ctx,
    e: &MetaExpr,
    expected: &MetaTy,
) -> Result<(), WfError> {
    match e {
        MetaExpr::MetaVar(ix) => match ctx.get(*ix) {
            Some(Binding::Meta(_)) => {
                let got = ctx.lookup_meta(*ix);
                if &got == expected {
                    Ok(())
                } else {
                    Err(WfError::TypeMismatch {
                        expected: format!("{expected:?}"),
                        got: format!("{got:?}"),
                    })
                }
            }
            _ => Err(WfError::BadVariable(*ix)),
        },
        MetaExpr::BoolLit(_) => match expected {
            MetaTy::Bool => Ok(()),
            other => Err(WfError::BadMetaLiteral(format!(
                "boolean against {other:?}"
            ))),
        },
        MetaExpr::FinLit(k, n) => match expected {
            MetaTy::Fin(m) if m == n && k < n => Ok(()),
            _ => Err(WfError::BadMetaLiteral(format!("{k} of Fin {n}"))),
        },
        MetaExpr::OpaqueConst(c) => match (ext.const_set(c), expected) {
            (Some(s), MetaTy::Declared(d)) if s == d => Ok(()),
            (None, _) => Err(WfError::UndeclaredExternal(c.clone())),
            (Some(s), other) => Err(WfError::BadMetaLiteral(format!(
                "constant of {s} against {other:?}"
            ))),
        },
    }
}

fn check_tm(ext: &Externals, ctx: &Ctx, t: &CoreTm, expected: &CoreTy) -> Result<(), WfError> {
    let expected = normalize_ty(ctx, expected);
    match (t, &expected) {
        (CoreTm::Lam(body), CoreTy::Pi(dom, cod)) => {
            check_tm(ext, &ctx.push_obj(CoreTy::El((**dom).clone())), body, cod)
        }
        (CoreTm::LamExt(body), CoreTy::PiExt(dom, cod)) => {
            check_tm(ext, &ctx.push_meta(dom.clone()), body, cod)
        }
        (CoreTm::LamInf(body), CoreTy::El(CoreTm::PiInf(dom, b))) => check_tm(
            ext,
            &ctx.push_meta(dom.clone()),
            body,
            &CoreTy::El((**b).clone()),
        ),
        (CoreTm::Refl(u), CoreTy::El(CoreTm::Id(a, l, r))) => {
            let el_a = CoreTy::El((**a).clone());
            check_tm(ext, ctx, u, &el_a)?;
            if conv_tm(ctx, u, l, &el_a) && conv_tm(ctx, u, r, &el_a) {
                Ok(())
            } else {
                Err(WfError::TypeMismatch {
                    expected: format!("El (Id _ {l:?} {r:?})"),
                    got: format!("Refl {u:?}"),
                })
            }
        }
        (CoreTm::Proof, CoreTy::El(CoreTm::Id(..))) => Ok(()),
        (CoreTm::Lam(_) | CoreTm::LamExt(_) | CoreTm::LamInf(_) | CoreTm::Proof, other) => {
            Err(WfError::TypeMismatch {
                expected: format!("{other:?}"),
                got: format!("{t:?}"),
            })
        }
        _ => {
            let got = infer(ext, ctx, t)?;
            if conv_ty(ctx, &got, &expected) {
                Ok(())
            } else {
                Err(WfError::TypeMismatch {
                    expected: format!("{expected:?}"),
                    got: format!("{got:?}"),
                })
            }
        }
    }
}

fn infer(ext: &Externals, ctx: &Ctx, t: &CoreTm) -> Result<CoreTy, WfError> {
    match t {
        CoreTm::Var(ix) => match ctx.get(*ix) {
            Some(Binding::Obj(_)) => Ok(ctx.lookup_obj(*ix)),
            _ => Err(WfError::BadVariable(*ix)),
        },
        CoreTm::App(f, a) => match normalize_ty(ctx, &infer(ext, ctx, f)?) {
            CoreTy::Pi(dom, cod) => {
                check_tm(ext, ctx, a, &CoreTy::El(dom))?;
                Ok(subst_ty(&cod, &Subst::single_obj((**a).clone())))
            }
            other => Err(WfError::NotAFunction(format!("{other:?}"))),
        },
        CoreTm::AppExt(f, e) => match normalize_ty(ctx, &infer(ext, ctx, f)?) {
            CoreTy::PiExt(dom, cod) => {
                check_meta_expr(ext, ctx, e, &dom)?;
                Ok(subst_ty(&cod, &Subst::single_meta(e.clone())))
            }
            other => Err(WfError::NotAFunction(format!("{other:?}"))),
        },
        CoreTm::AppInf(f, e) => match normalize_ty(ctx, &infer(ext, ctx, f)?) {
            CoreTy::El(CoreTm::PiInf(dom, b)) => {
                check_meta_expr(ext, ctx, e, &dom)?;
                Ok(CoreTy::El(subst_tm(&b, &Subst::single_meta(e.clone()))))
            }
            other => Err(WfError::NotAFunction(format!("{other:?}"))),
        },
        CoreTm::PiInf(dom, b) => {
            wf_meta_ty(ext, ctx, dom)?;
            check_tm(ext, &ctx.push_meta(dom.clone()), b, &CoreTy::U)?;
            Ok(CoreTy::U)
        }
        CoreTm::Id(a, l, r) => {
            check_tm(ext, ctx, a, &CoreTy::U)?;
            let el_a = CoreTy::El((**a).clone());
            check_tm(ext, ctx, l, &el_a)?;
            check_tm(ext, ctx, r, &el_a)?;
            Ok(CoreTy::U)
        }
        CoreTm::Refl(u) => match infer(ext, ctx, u)? {
            CoreTy::El(code) => Ok(CoreTy::El(CoreTm::id(
                code,
                (**u).clone(),
                (**u).clone(),
            ))),
            other => Err(WfError::NotInferable(format!("Refl at {other:?}"))),
        },
        CoreTm::Lam(_) | CoreTm::LamExt(_) | CoreTm::LamInf(_) | CoreTm::Proof => {
            Err(WfError::NotInferable(format!("{t:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_telescope_is_well_formed() {
        let entries = vec![
            ("N".to_owned(), CoreTy::U),
            ("zero".to_owned(), CoreTy::el(CoreTm::Var(0))),
            (
                "suc".to_owned(),
                CoreTy::pi(CoreTm::Var(1), CoreTy::el(CoreTm::Var(2))),
            ),
        ];
        validate_signature(&Externals::default(), &entries).unwrap();
    }

    #[test]
    fn rejects_el_of_element() {
        // El zero is ill-formed: zero has type El N, not U.
        let entries = vec![
            ("N".to_owned(), CoreTy::U),
            ("zero".to_owned(), CoreTy::el(CoreTm::Var(0))),
            ("bad".to_owned(), CoreTy::el(CoreTm::Var(0))),
        ];
        assert!(validate_signature(&Externals::default(), &entries).is_err());
    }

    #[test]
    fn rejects_undeclared_external() {
        let entries = vec![(
            "bad".to_owned(),
            CoreTy::pi_ext(MetaTy::Declared("Mystery".into()), CoreTy::U),
        )];
        assert!(matches!(
            validate_signature(&Externals::default(), &entries),
            Err(WfError::Entry { .. })
        ));
    }
}
