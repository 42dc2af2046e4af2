//! Simultaneous capture-avoiding substitution.
//!
//! A substitution maps the first `entries.len()` variables of the source
//! context to terms or meta expressions over the target context, and
//! renumbers the remaining variables with `shift`.

use super::{Binding, CoreTm, CoreTy, MetaExpr, MetaTy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstEntry {
    Obj(CoreTm),
    Meta(MetaExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subst {
    entries: Vec<SubstEntry>,
    shift: usize,
}

impl Subst {
    pub fn identity() -> Subst {
        Subst { entries: Vec::new(), shift: 0 }
    }

    /// Weakening: renumber every variable up by `n`.
    pub fn shift(n: usize) -> Subst {
        Subst { entries: Vec::new(), shift: n }
    }

    /// Instantiate the innermost object binder with `t`.
    pub fn single_obj(t: CoreTm) -> Subst {
        Subst { entries: vec![SubstEntry::Obj(t)], shift: 0 }
    }

    /// Instantiate the innermost meta binder with `e`.
    pub fn single_meta(e: MetaExpr) -> Subst {
        Subst { entries: vec![SubstEntry::Meta(e)], shift: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty() && self.shift == 0
    }

    /// Push the substitution under one object binder: variable 0 is kept
    /// and everything else moves across.
    pub fn lift_obj(&self) -> Subst {
        self.lift(SubstEntry::Obj(CoreTm::Var(0)))
    }

    /// Push the substitution under one meta binder.
    pub fn lift_meta(&self) -> Subst {
        self.lift(SubstEntry::Meta(MetaExpr::MetaVar(0)))
    }

    fn lift(&self, keep: SubstEntry) -> Subst {
        let up = Subst::shift(1);
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(keep);
        entries.extend(self.entries.iter().map(|e| apply_entry(e, &up)));
        Subst { entries, shift: self.shift + 1 }
    }

    pub fn lift_for(&self, binding_is_meta: bool) -> Subst {
        if binding_is_meta {
            self.lift_meta()
        } else {
            self.lift_obj()
        }
    }

    /// Composite substitution: applying the result equals applying
    /// `self` and then `other`.
    pub fn compose(&self, other: &Subst) -> Subst {
        let mut entries: Vec<SubstEntry> =
            self.entries.iter().map(|e| apply_entry(e, other)).collect();
        if self.shift <= other.entries.len() {
            entries.extend(other.entries[self.shift..].iter().cloned());
            Subst { entries, shift: other.shift }
        } else {
            Subst { entries, shift: self.shift - other.entries.len() + other.shift }
        }
    }

    fn lookup(&self, ix: usize) -> Option<&SubstEntry> {
        self.entries.get(ix)
    }

    fn renumber(&self, ix: usize) -> usize {
        debug_assert!(ix >= self.entries.len());
        ix - self.entries.len() + self.shift
    }
}

fn apply_entry(e: &SubstEntry, s: &Subst) -> SubstEntry {
    match e {
        SubstEntry::Obj(t) => SubstEntry::Obj(subst_tm(t, s)),
        SubstEntry::Meta(m) => SubstEntry::Meta(subst_meta_expr(m, s)),
    }
}

pub fn subst_ty(ty: &CoreTy, s: &Subst) -> CoreTy {
    if s.is_identity() {
        return ty.clone();
    }
    match ty {
        CoreTy::U => CoreTy::U,
        CoreTy::El(a) => CoreTy::El(subst_tm(a, s)),
        CoreTy::Pi(dom, cod) => {
            CoreTy::pi(subst_tm(dom, s), subst_ty(cod, &s.lift_obj()))
        }
        CoreTy::PiExt(dom, cod) => {
            CoreTy::pi_ext(subst_meta_ty(dom, s), subst_ty(cod, &s.lift_meta()))
        }
    }
}

pub fn subst_tm(t: &CoreTm, s: &Subst) -> CoreTm {
    if s.is_identity() {
        return t.clone();
    }
    match t {
        CoreTm::Var(ix) => match s.lookup(*ix) {
            Some(SubstEntry::Obj(t)) => t.clone(),
            Some(SubstEntry::Meta(_)) => {
                panic!("object variable {ix} substituted by a meta expression")
            }
            None => CoreTm::Var(s.renumber(*ix)),
        },
        CoreTm::App(f, a) => CoreTm::app(subst_tm(f, s), subst_tm(a, s)),
        CoreTm::Lam(b) => CoreTm::Lam(Box::new(subst_tm(b, &s.lift_obj()))),
        CoreTm::AppExt(f, e) => CoreTm::app_ext(subst_tm(f, s), subst_meta_expr(e, s)),
        CoreTm::LamExt(b) => CoreTm::LamExt(Box::new(subst_tm(b, &s.lift_meta()))),
        CoreTm::PiInf(dom, b) => {
            CoreTm::pi_inf(subst_meta_ty(dom, s), subst_tm(b, &s.lift_meta()))
        }
        CoreTm::AppInf(f, e) => CoreTm::app_inf(subst_tm(f, s), subst_meta_expr(e, s)),
        CoreTm::LamInf(b) => CoreTm::LamInf(Box::new(subst_tm(b, &s.lift_meta()))),
        CoreTm::Id(a, l, r) => {
            CoreTm::id(subst_tm(a, s), subst_tm(l, s), subst_tm(r, s))
        }
        CoreTm::Refl(t) => CoreTm::refl(subst_tm(t, s)),
        CoreTm::Proof => CoreTm::Proof,
    }
}

pub fn subst_meta_ty(mt: &MetaTy, s: &Subst) -> MetaTy {
    match mt {
        MetaTy::Var(ix) => match s.lookup(*ix) {
            Some(SubstEntry::Meta(MetaExpr::MetaVar(j))) => MetaTy::Var(*j),
            Some(SubstEntry::Meta(MetaExpr::OpaqueConst(n))) => MetaTy::Declared(n.clone()),
            Some(other) => panic!("meta set variable {ix} substituted by {other:?}"),
            None => MetaTy::Var(s.renumber(*ix)),
        },
        MetaTy::Declared(n) => MetaTy::Declared(n.clone()),
        MetaTy::Bool => MetaTy::Bool,
        MetaTy::Fin(n) => MetaTy::Fin(*n),
    }
}

pub fn subst_meta_expr(e: &MetaExpr, s: &Subst) -> MetaExpr {
    match e {
        MetaExpr::MetaVar(ix) => match s.lookup(*ix) {
            Some(SubstEntry::Meta(m)) => m.clone(),
            Some(SubstEntry::Obj(_)) => {
                panic!("meta variable {ix} substituted by an object term")
            }
            None => MetaExpr::MetaVar(s.renumber(*ix)),
        },
        lit => lit.clone(),
    }
}

/// Apply a substitution to one context binding.
pub fn subst_binding(b: &Binding, s: &Subst) -> Binding {
    match b {
        Binding::Obj(ty) => Binding::Obj(subst_ty(ty, s)),
        Binding::Meta(mt) => Binding::Meta(subst_meta_ty(mt, s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_var() {
        assert_eq!(subst_tm(&CoreTm::Var(0), &Subst::identity()), CoreTm::Var(0));
    }

    #[test]
    fn shift_id_term() {
        // Id(Var 2, Var 0, Var 1) shifted by 1
        let t = CoreTm::id(CoreTm::Var(2), CoreTm::Var(0), CoreTm::Var(1));
        let expect = CoreTm::id(CoreTm::Var(3), CoreTm::Var(1), CoreTm::Var(2));
        assert_eq!(subst_tm(&t, &Subst::shift(1)), expect);
    }

    #[test]
    fn instantiate_el() {
        // In the two-entry Nat prefix [N, zero], the type El (Var 0)
        // instantiated with the zero term becomes El zero, where zero is
        // Var 0 in the one-entry prefix. Derived by hand on the telescope.
        let zero = CoreTm::Var(0);
        let ty = CoreTy::el(CoreTm::Var(0));
        assert_eq!(
            subst_ty(&ty, &Subst::single_obj(zero.clone())),
            CoreTy::el(zero)
        );
    }

    #[test]
    fn compose_matches_sequential_application() {
        let t = CoreTm::app(CoreTm::Var(2), CoreTm::app(CoreTm::Var(0), CoreTm::Var(1)));
        let s1 = Subst::single_obj(CoreTm::lam(CoreTm::Var(0)));
        let s2 = Subst::shift(3);
        let lhs = subst_tm(&subst_tm(&t, &s1), &s2);
        let rhs = subst_tm(&t, &s1.compose(&s2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lift_keeps_bound_variable() {
        // (lam (Var 0 applied to Var 1))[Var 0 := Var 5] keeps Var 0 under
        // the binder and maps the free Var 1 to the shifted image.
        let t = CoreTm::lam(CoreTm::app(CoreTm::Var(0), CoreTm::Var(1)));
        let s = Subst::single_obj(CoreTm::Var(5));
        let expect = CoreTm::lam(CoreTm::app(CoreTm::Var(0), CoreTm::Var(6)));
        assert_eq!(subst_tm(&t, &s), expect);
    }
}
