//! Normalization and conversion.
//!
//! Normalization is type-directed: terms of the three function types are
//! eta-expanded to lambda form, beta-redexes are unfolded, and every term
//! whose type is `El (Id ..)` collapses to the canonical [`CoreTm::Proof`]
//! token, making identity proofs definitionally irrelevant. Conversion is
//! structural equality of normal forms.
//!
//! Preconditions are the usual kernel ones: inputs are well-typed and
//! context types are already normal. Violations are programmer errors and
//! panic.

use super::subst::{subst_tm, subst_ty, Subst};
use super::{CoreTm, CoreTy, Ctx};

pub fn normalize_ty(ctx: &Ctx, ty: &CoreTy) -> CoreTy {
    match ty {
        CoreTy::U => CoreTy::U,
        CoreTy::El(a) => CoreTy::El(nf_at(ctx, a, &CoreTy::U)),
        CoreTy::Pi(dom, cod) => {
            let dom = nf_at(ctx, dom, &CoreTy::U);
            let inner = ctx.push_obj(CoreTy::El(dom.clone()));
            CoreTy::pi(dom, normalize_ty(&inner, cod))
        }
        CoreTy::PiExt(dom, cod) => {
            let inner = ctx.push_meta(dom.clone());
            CoreTy::pi_ext(dom.clone(), normalize_ty(&inner, cod))
        }
    }
}

/// Normalize `t` against its type.
pub fn normalize_tm(ctx: &Ctx, t: &CoreTm, ty: &CoreTy) -> CoreTm {
    nf_at(ctx, t, &normalize_ty(ctx, ty))
}

pub fn conv_ty(ctx: &Ctx, a: &CoreTy, b: &CoreTy) -> bool {
    normalize_ty(ctx, a) == normalize_ty(ctx, b)
}

/// Conversion of two terms of the same type.
pub fn conv_tm(ctx: &Ctx, t: &CoreTm, u: &CoreTm, ty: &CoreTy) -> bool {
    let ty = normalize_ty(ctx, ty);
    nf_at(ctx, t, &ty) == nf_at(ctx, u, &ty)
}

/// Infer the (normalized) type of a term, when its head permits
/// synthesis. Lambdas and proof tokens are check-only and yield `None`.
pub fn infer_tm(ctx: &Ctx, t: &CoreTm) -> Option<CoreTy> {
    match t {
        CoreTm::Var(ix) => Some(normalize_ty(ctx, &ctx.lookup_obj(*ix))),
        CoreTm::App(f, a) => match infer_tm(ctx, f)? {
            CoreTy::Pi(_, cod) => {
                Some(normalize_ty(ctx, &subst_ty(&cod, &Subst::single_obj((**a).clone()))))
            }
            _ => None,
        },
        CoreTm::AppExt(f, e) => match infer_tm(ctx, f)? {
            CoreTy::PiExt(_, cod) => {
                Some(normalize_ty(ctx, &subst_ty(&cod, &Subst::single_meta(e.clone()))))
            }
            _ => None,
        },
        CoreTm::AppInf(f, e) => match infer_tm(ctx, f)? {
            CoreTy::El(CoreTm::PiInf(_, b)) => {
                let code = subst_tm(&b, &Subst::single_meta(e.clone()));
                Some(normalize_ty(ctx, &CoreTy::El(code)))
            }
            _ => None,
        },
        CoreTm::PiInf(..) | CoreTm::Id(..) => Some(CoreTy::U),
        CoreTm::Refl(u) => match infer_tm(ctx, u)? {
            CoreTy::El(code) => Some(CoreTy::El(CoreTm::id(code, (**u).clone(), (**u).clone()))),
            _ => None,
        },
        CoreTm::Lam(_) | CoreTm::LamExt(_) | CoreTm::LamInf(_) | CoreTm::Proof => None,
    }
}

/// Normalize `t` against an already-normal type.
fn nf_at(ctx: &Ctx, t: &CoreTm, ty: &CoreTy) -> CoreTm {
    match ty {
        CoreTy::Pi(dom, cod) => {
            let inner = ctx.push_obj(CoreTy::El((**dom).clone()));
            let body = CoreTm::app(subst_tm(t, &Subst::shift(1)), CoreTm::Var(0));
            CoreTm::Lam(Box::new(nf_at(&inner, &body, cod)))
        }
        CoreTy::PiExt(dom, cod) => {
            let inner = ctx.push_meta(dom.clone());
            let body =
                CoreTm::app_ext(subst_tm(t, &Subst::shift(1)), super::MetaExpr::MetaVar(0));
            CoreTm::LamExt(Box::new(nf_at(&inner, &body, cod)))
        }
        CoreTy::El(code) => match code {
            CoreTm::Id(..) => CoreTm::Proof,
            CoreTm::PiInf(dom, b) => {
                let inner = ctx.push_meta(dom.clone());
                let body =
                    CoreTm::app_inf(subst_tm(t, &Subst::shift(1)), super::MetaExpr::MetaVar(0));
                CoreTm::LamInf(Box::new(nf_at(&inner, &body, &CoreTy::El((**b).clone()))))
            }
            _ => nf_base(ctx, t),
        },
        CoreTy::U => nf_base(ctx, t),
    }
}

/// Normalize a term whose type is `U` or a neutral `El`.
fn nf_base(ctx: &Ctx, t: &CoreTm) -> CoreTm {
    match whnf(t) {
        CoreTm::PiInf(dom, b) => {
            let inner = ctx.push_meta(dom.clone());
            CoreTm::pi_inf(dom, nf_at(&inner, &b, &CoreTy::U))
        }
        CoreTm::Id(a, l, r) => {
            let a = nf_at(ctx, &a, &CoreTy::U);
            let side_ty = CoreTy::El(a.clone());
            let l = nf_at(ctx, &l, &side_ty);
            let r = nf_at(ctx, &r, &side_ty);
            CoreTm::id(a, l, r)
        }
        // Proof tokens are collapsed by the El (Id ..) case before we get
        // here; tolerate them for totality.
        CoreTm::Refl(_) | CoreTm::Proof => CoreTm::Proof,
        neutral @ (CoreTm::Var(_)
        | CoreTm::App(..)
        | CoreTm::AppExt(..)
        | CoreTm::AppInf(..)) => nf_neutral(ctx, &neutral).0,
        ill => panic!("lambda at base type during normalization: {ill:?}"),
    }
}

/// Unfold head beta-redexes.
fn whnf(t: &CoreTm) -> CoreTm {
    match t {
        CoreTm::App(f, a) => match whnf(f) {
            CoreTm::Lam(body) => whnf(&subst_tm(&body, &Subst::single_obj((**a).clone()))),
            fw => CoreTm::app(fw, (**a).clone()),
        },
        CoreTm::AppExt(f, e) => match whnf(f) {
            CoreTm::LamExt(body) => whnf(&subst_tm(&body, &Subst::single_meta(e.clone()))),
            fw => CoreTm::app_ext(fw, e.clone()),
        },
        CoreTm::AppInf(f, e) => match whnf(f) {
            CoreTm::LamInf(body) => whnf(&subst_tm(&body, &Subst::single_meta(e.clone()))),
            fw => CoreTm::app_inf(fw, e.clone()),
        },
        other => other.clone(),
    }
}

/// Normalize a whnf neutral spine, returning the normal form and its
/// normal type.
fn nf_neutral(ctx: &Ctx, t: &CoreTm) -> (CoreTm, CoreTy) {
    match t {
        CoreTm::Var(ix) => {
            let ty = normalize_ty(ctx, &ctx.lookup_obj(*ix));
            (CoreTm::Var(*ix), ty)
        }
        CoreTm::App(f, a) => {
            let (f_nf, f_ty) = nf_neutral(ctx, f);
            let CoreTy::Pi(dom, cod) = f_ty else {
                panic!("application head has non-function type {f_ty:?}");
            };
            let a_nf = nf_at(ctx, a, &CoreTy::El((*dom).clone()));
            let res = subst_ty(&cod, &Subst::single_obj(a_nf.clone()));
            (CoreTm::app(f_nf, a_nf), normalize_ty(ctx, &res))
        }
        CoreTm::AppExt(f, e) => {
            let (f_nf, f_ty) = nf_neutral(ctx, f);
            let CoreTy::PiExt(_, cod) = f_ty else {
                panic!("external application head has type {f_ty:?}");
            };
            let res = subst_ty(&cod, &Subst::single_meta(e.clone()));
            (CoreTm::app_ext(f_nf, e.clone()), normalize_ty(ctx, &res))
        }
        CoreTm::AppInf(f, e) => {
            let (f_nf, f_ty) = nf_neutral(ctx, f);
            let CoreTy::El(CoreTm::PiInf(_, b)) = f_ty else {
                panic!("infinitary application head has type {f_ty:?}");
            };
            let code = subst_tm(&b, &Subst::single_meta(e.clone()));
            let res = normalize_ty(ctx, &CoreTy::El(code));
            (CoreTm::app_inf(f_nf, e.clone()), res)
        }
        other => panic!("not a neutral term: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{MetaExpr, MetaTy};

    /// Context for the checked Nat telescope:
    /// `[N : U, zero : El 0, suc : Pi 1 (El 2)]`.
    fn nat_ctx() -> Ctx {
        Ctx::new()
            .push_obj(CoreTy::U)
            .push_obj(CoreTy::el(CoreTm::Var(0)))
            .push_obj(CoreTy::pi(CoreTm::Var(1), CoreTy::el(CoreTm::Var(2))))
    }

    #[test]
    fn beta_reduces() {
        // (lam x. x) zero at El N, inside the Nat context.
        let ctx = nat_ctx();
        let zero = CoreTm::Var(1);
        let t = CoreTm::app(CoreTm::lam(CoreTm::Var(0)), zero.clone());
        let ty = CoreTy::el(CoreTm::Var(2));
        assert_eq!(normalize_tm(&ctx, &t, &ty), normalize_tm(&ctx, &zero, &ty));
    }

    #[test]
    fn eta_agrees_with_expansion() {
        // lam x. (suc x) and suc itself normalize identically.
        let ctx = nat_ctx();
        let suc = CoreTm::Var(0);
        let ty = CoreTy::pi(CoreTm::Var(2), CoreTy::el(CoreTm::Var(3)));
        let expanded = CoreTm::lam(CoreTm::app(
            subst_tm(&suc, &Subst::shift(1)),
            CoreTm::Var(0),
        ));
        assert_eq!(
            normalize_tm(&ctx, &expanded, &ty),
            normalize_tm(&ctx, &suc, &ty)
        );
    }

    #[test]
    fn id_proofs_collapse() {
        // Both Refl zero and a variable of the same Id type normalize to
        // the canonical proof.
        let ctx = nat_ctx();
        let zero = CoreTm::Var(1);
        let id_ty = CoreTy::el(CoreTm::id(CoreTm::Var(2), zero.clone(), zero.clone()));
        let refl = CoreTm::refl(zero);
        assert_eq!(normalize_tm(&ctx, &refl, &id_ty), CoreTm::Proof);

        let shifted_ty = subst_ty(&id_ty, &Subst::shift(1));
        let inner = ctx.push_obj(normalize_ty(&ctx, &id_ty));
        assert_eq!(normalize_tm(&inner, &CoreTm::Var(0), &shifted_ty), CoreTm::Proof);
        assert!(conv_tm(&inner, &CoreTm::Var(0), &subst_tm(&refl, &Subst::shift(1)), &shifted_ty));
    }

    #[test]
    fn distinct_neutrals_do_not_convert() {
        // zero vs suc zero at El N.
        let ctx = nat_ctx();
        let zero = CoreTm::Var(1);
        let suc_zero = CoreTm::app(CoreTm::Var(0), zero.clone());
        let ty = CoreTy::el(CoreTm::Var(2));
        assert!(conv_tm(&ctx, &zero, &zero, &ty));
        assert!(!conv_tm(&ctx, &zero, &suc_zero, &ty));
    }

    #[test]
    fn normalization_idempotent() {
        let ctx = nat_ctx();
        let ty = CoreTy::pi(CoreTm::Var(2), CoreTy::el(CoreTm::Var(3)));
        let t = CoreTm::lam(CoreTm::app(CoreTm::Var(1), CoreTm::Var(0)));
        let once = normalize_tm(&ctx, &t, &ty);
        let twice = normalize_tm(&ctx, &once, &ty);
        assert_eq!(once, twice);
    }

    #[test]
    fn infinitary_eta() {
        // A variable of type El (PiInf Bool N) expands to a LamInf. The
        // PiInf body sits under one meta binder, so N is Var 3 in the
        // stored binding and Var 4 in the full context.
        let ctx = nat_ctx().push_obj(CoreTy::el(CoreTm::pi_inf(
            MetaTy::Bool,
            CoreTm::Var(3),
        )));
        let nf = normalize_tm(
            &ctx,
            &CoreTm::Var(0),
            &CoreTy::el(CoreTm::pi_inf(MetaTy::Bool, CoreTm::Var(4))),
        );
        let expect = CoreTm::LamInf(Box::new(CoreTm::app_inf(
            CoreTm::Var(1),
            MetaExpr::MetaVar(0),
        )));
        assert_eq!(nf, expect);
    }
}
