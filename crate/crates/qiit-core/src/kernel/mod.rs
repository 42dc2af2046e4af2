//! Core syntax of the signature language: de Bruijn terms and types,
//! substitution, normalization and conversion.
//!
//! Binders never carry names; alpha-equivalence is plain structural
//! equality. Object-level and meta-level binders share one index space:
//! a context is a stack of [`Binding`]s and `Var`/`MetaVar` indices count
//! enclosing binders of either kind, innermost first.

mod norm;
mod subst;
mod wf;

pub use norm::{conv_tm, conv_ty, infer_tm, normalize_tm, normalize_ty};
pub use subst::{subst_binding, subst_meta_expr, subst_meta_ty, subst_tm, subst_ty, Subst, SubstEntry};
pub use wf::{validate_entry, validate_signature, Externals, WfError};

/// A type of the signature language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoreTy {
    /// The universe of sorts.
    U,
    /// Decoding of a sort code; the term has type `U`.
    El(CoreTm),
    /// Inductive function space; domain is a sort code, codomain binds
    /// one object variable.
    Pi(CoreTm, Box<CoreTy>),
    /// External function space; domain is a meta-level set, codomain
    /// binds one meta variable.
    PiExt(MetaTy, Box<CoreTy>),
}

/// A term of the signature language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoreTm {
    /// Object variable (de Bruijn index).
    Var(usize),
    App(Box<CoreTm>, Box<CoreTm>),
    /// Body binds one object variable.
    Lam(Box<CoreTm>),
    AppExt(Box<CoreTm>, MetaExpr),
    /// Body binds one meta variable.
    LamExt(Box<CoreTm>),
    /// Infinitary function code in `U`; body binds one meta variable and
    /// is itself a sort code.
    PiInf(MetaTy, Box<CoreTm>),
    AppInf(Box<CoreTm>, MetaExpr),
    /// Body binds one meta variable.
    LamInf(Box<CoreTm>),
    /// Equality code in `U`: sort, left side, right side.
    Id(Box<CoreTm>, Box<CoreTm>, Box<CoreTm>),
    Refl(Box<CoreTm>),
    /// Canonical identity proof. All terms of type `El (Id a t u)`
    /// normalize to this token; it is check-only and never inferred.
    Proof,
}

/// A meta-level set: the domain of external and infinitary functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MetaTy {
    /// A meta variable of declared-set type used as a set (de Bruijn
    /// index into the shared context).
    Var(usize),
    /// An opaque set from the signature's external declarations.
    Declared(String),
    Bool,
    /// `Fin(n)` with `n >= 1`.
    Fin(u64),
}

/// A meta-level expression: an element of a meta-level set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MetaExpr {
    MetaVar(usize),
    BoolLit(bool),
    /// `FinLit(k, n)` with `k < n`.
    FinLit(u64, u64),
    /// An opaque constant from the external declarations.
    OpaqueConst(String),
}

/// One context binding: either an object variable with its type or a
/// meta variable with its set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Obj(CoreTy),
    Meta(MetaTy),
}

/// A typing context. Index 0 is the innermost binding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ctx {
    bindings: Vec<Binding>,
}

impl Ctx {
    pub fn new() -> Self {
        Ctx::default()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Look up a binding; the result is *not* shifted into the current
    /// context. Use [`Ctx::lookup_obj`] for a usable type.
    pub fn get(&self, ix: usize) -> Option<&Binding> {
        let n = self.bindings.len();
        if ix < n {
            Some(&self.bindings[n - 1 - ix])
        } else {
            None
        }
    }

    /// The type of object variable `ix`, shifted so it is well-scoped in
    /// the full context. Panics when the index is out of range or the
    /// binding is a meta binding.
    pub fn lookup_obj(&self, ix: usize) -> CoreTy {
        match self.get(ix) {
            Some(Binding::Obj(ty)) => subst_ty(ty, &Subst::shift(ix + 1)),
            other => panic!("object variable {ix} bound to {other:?}"),
        }
    }

    /// The set of meta variable `ix`, shifted into the full context.
    pub fn lookup_meta(&self, ix: usize) -> MetaTy {
        match self.get(ix) {
            Some(Binding::Meta(mt)) => subst::subst_meta_ty(mt, &Subst::shift(ix + 1)),
            other => panic!("meta variable {ix} bound to {other:?}"),
        }
    }

    pub fn push_obj(&self, ty: CoreTy) -> Ctx {
        let mut bindings = self.bindings.clone();
        bindings.push(Binding::Obj(ty));
        Ctx { bindings }
    }

    pub fn push_meta(&self, mt: MetaTy) -> Ctx {
        let mut bindings = self.bindings.clone();
        bindings.push(Binding::Meta(mt));
        Ctx { bindings }
    }
}

impl CoreTm {
    pub fn var(ix: usize) -> CoreTm {
        CoreTm::Var(ix)
    }

    pub fn app(f: CoreTm, a: CoreTm) -> CoreTm {
        CoreTm::App(Box::new(f), Box::new(a))
    }

    pub fn app_ext(f: CoreTm, e: MetaExpr) -> CoreTm {
        CoreTm::AppExt(Box::new(f), e)
    }

    pub fn app_inf(f: CoreTm, e: MetaExpr) -> CoreTm {
        CoreTm::AppInf(Box::new(f), e)
    }

    pub fn lam(body: CoreTm) -> CoreTm {
        CoreTm::Lam(Box::new(body))
    }

    pub fn pi_inf(dom: MetaTy, body: CoreTm) -> CoreTm {
        CoreTm::PiInf(dom, Box::new(body))
    }

    pub fn id(sort: CoreTm, lhs: CoreTm, rhs: CoreTm) -> CoreTm {
        CoreTm::Id(Box::new(sort), Box::new(lhs), Box::new(rhs))
    }

    pub fn refl(t: CoreTm) -> CoreTm {
        CoreTm::Refl(Box::new(t))
    }
}

impl CoreTy {
    pub fn el(t: CoreTm) -> CoreTy {
        CoreTy::El(t)
    }

    pub fn pi(dom: CoreTm, cod: CoreTy) -> CoreTy {
        CoreTy::Pi(dom, Box::new(cod))
    }

    pub fn pi_ext(dom: MetaTy, cod: CoreTy) -> CoreTy {
        CoreTy::PiExt(dom, Box::new(cod))
    }
}
