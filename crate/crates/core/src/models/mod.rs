//! Curve models, their validity checks, and the reduced-form generators.

pub mod bounds;
pub mod gen;
pub mod groebner;
pub mod smooth;

use serde::Serialize;

use crate::algebra::form::{e4, Exp, HomogForm, MonoTable};
use crate::algebra::{Fe, Field, UniPoly};
use crate::error::{Error, InvalidReason, Result};

pub use bounds::{ekedahl_feasible, ft_maximal_feasible};
pub use smooth::{is_smooth_ci_g4, quintic_singularities, QuinticVerdict};

/// Normal form of the quadric of a canonical genus-4 curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QType {
    N1,
    N2,
    Dege,
}

impl QType {
    pub fn tag(self) -> &'static str {
        match self {
            QType::N1 => "N1",
            QType::N2 => "N2",
            QType::Dege => "Dege",
        }
    }
}

/// The singularity at `(0:0:1)` of a trigonal quintic model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TrigCase {
    SplitNode,
    NonSplitNode,
    Cusp,
}

/// `c y^2 = f(x)` of genus `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyper {
    pub c: Fe,
    pub f: UniPoly,
    pub g: usize,
}

/// `V(Q, P)` in `P^3` with `Q` fixed by the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical {
    pub qtype: QType,
    pub cubic: HomogForm,
}

/// `V(F)` in `P^2` with its unique singular point at `(0:0:1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trigonal {
    pub case: TrigCase,
    pub quintic: HomogForm,
}

/// Fiber product data of a Howe curve; `nu` scales the second curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoweParams {
    pub a1: Fe,
    pub b1: Fe,
    pub a2: Fe,
    pub b2: Fe,
    pub lambda: Fe,
    pub mu: Fe,
    pub nu: Fe,
}

impl HoweParams {
    /// `f1 = x^3 + A1 mu^2 x + B1 mu^3`.
    pub fn f1(&self, k: &Field) -> UniPoly {
        let mu2 = k.sqr(self.mu);
        UniPoly::from_coeffs(vec![k.mul(self.b1, k.mul(mu2, self.mu)), k.mul(self.a1, mu2), k.zero(), k.one()])
    }
    /// `f2 = (x - lambda)^3 + A2 nu^2 (x - lambda) + B2 nu^3`.
    pub fn f2(&self, k: &Field) -> UniPoly {
        let nu2 = k.sqr(self.nu);
        let base = UniPoly::from_coeffs(vec![k.mul(self.b2, k.mul(nu2, self.nu)), k.mul(self.a2, nu2), k.zero(), k.one()]);
        base.compose_affine(k.one(), k.neg(self.lambda), k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveModel {
    Elliptic { a: Fe, b: Fe },
    Hyperelliptic(Hyper),
    CanonicalG4(Canonical),
    TrigonalQuintic(Trigonal),
    Howe(HoweParams),
}

/// The quadric `Q` for a type (`eps` is the field's least non-square).
pub fn quadric(qtype: QType, k: &Field) -> HomogForm {
    let terms: Vec<(Exp, Fe)> = match qtype {
        QType::N1 => vec![(e4(1, 0, 0, 1), k.from_u64(2)), (e4(0, 1, 1, 0), k.from_u64(2))],
        QType::N2 => vec![
            (e4(1, 0, 0, 1), k.from_u64(2)),
            (e4(0, 2, 0, 0), k.one()),
            (e4(0, 0, 2, 0), k.neg(k.non_square())),
        ],
        QType::Dege => vec![(e4(0, 1, 0, 1), k.from_u64(2)), (e4(0, 0, 2, 0), k.one())],
    };
    HomogForm::from_terms(4, 2, terms, k).expect("valid quadric")
}

/// `P mod Q`: the remainder of the cubic after eliminating one fixed
/// monomial of `Q` (`xw` for N1 and N2 via `x w = ...`, `z^2` for Dege).
pub fn reduce_mod_quadric(p: &HomogForm, qtype: QType, k: &Field) -> HomogForm {
    // eliminate monomial `lead` using Q = c * lead + rest
    let q = quadric(qtype, k);
    let lead = match qtype {
        QType::N1 | QType::N2 => e4(1, 0, 0, 1),
        QType::Dege => e4(0, 0, 2, 0),
    };
    let c_inv = k.inv(q.coeff(&lead)).unwrap();
    let rest: Vec<(Exp, Fe)> = q.terms().iter().filter(|(e, _)| *e != lead).map(|&(e, c)| (e, k.neg(k.mul(c, c_inv)))).collect();
    // lead = sum rest
    let mut cur: Vec<(Exp, Fe)> = p.terms().to_vec();
    loop {
        let mut changed = false;
        let mut next: Vec<(Exp, Fe)> = Vec::new();
        for (e, c) in cur {
            if (0..4).all(|v| e[v] >= lead[v]) {
                let base = crate::algebra::form::sub_exp(&e, &lead);
                for &(r, rc) in &rest {
                    next.push((crate::algebra::form::add_exp(&base, &r), k.mul(c, rc)));
                }
                changed = true;
            } else {
                next.push((e, c));
            }
        }
        let f = HomogForm::from_terms(4, p.degree(), next, k).expect("degree kept");
        if !changed {
            return f;
        }
        cur = f.terms().to_vec();
    }
}

impl CurveModel {
    /// Validated elliptic curve `y^2 = x^3 + A x + B`.
    pub fn elliptic(a: Fe, b: Fe, k: &Field) -> Result<CurveModel> {
        let disc = k.add(k.scale(k.pow(a, 3), 4), k.scale(k.sqr(b), 27));
        if disc.is_zero() {
            return Err(Error::InvalidModel(InvalidReason::DegenerateDiscriminant));
        }
        Ok(CurveModel::Elliptic { a, b })
    }

    pub fn hyperelliptic(c: Fe, f: UniPoly, g: usize, k: &Field) -> Result<CurveModel> {
        if c.is_zero() || g == 0 {
            return Err(Error::Argument("c must be a unit and g positive".into()));
        }
        match f.deg() {
            Some(d) if d == 2 * g + 1 || d == 2 * g + 2 => {}
            _ => return Err(Error::InvalidModel(InvalidReason::Inseparable)),
        }
        if !f.is_separable(k) {
            return Err(Error::InvalidModel(InvalidReason::Inseparable));
        }
        Ok(CurveModel::Hyperelliptic(Hyper { c, f, g }))
    }

    pub fn canonical(qtype: QType, cubic: HomogForm, k: &Field) -> Result<CurveModel> {
        if cubic.nvars() != 4 || cubic.degree() != 3 {
            return Err(Error::Argument("canonical models need a quaternary cubic".into()));
        }
        if reduce_mod_quadric(&cubic, qtype, k).is_zero() {
            return Err(Error::InvalidModel(InvalidReason::Reducible));
        }
        if !is_smooth_ci_g4(qtype, &cubic, k)? {
            return Err(Error::InvalidModel(InvalidReason::WrongSingularity));
        }
        Ok(CurveModel::CanonicalG4(Canonical { qtype, cubic }))
    }

    pub fn trigonal(case: TrigCase, quintic: HomogForm, k: &Field) -> Result<CurveModel> {
        if quintic.nvars() != 3 || quintic.degree() != 5 {
            return Err(Error::Argument("trigonal models need a ternary quintic".into()));
        }
        match quintic_singularities(case, &quintic, k)? {
            QuinticVerdict::ValidUniqueSingularity => Ok(CurveModel::TrigonalQuintic(Trigonal { case, quintic })),
            QuinticVerdict::WrongType => Err(Error::InvalidModel(InvalidReason::WrongSingularity)),
            QuinticVerdict::ExtraSingularity => Err(Error::InvalidModel(InvalidReason::Reducible)),
        }
    }

    pub fn howe(h: HoweParams, k: &Field) -> Result<CurveModel> {
        if h.mu.is_zero() || h.nu.is_zero() {
            return Err(Error::InvalidModel(InvalidReason::NotHoweType));
        }
        for (a, b) in [(h.a1, h.b1), (h.a2, h.b2)] {
            CurveModel::elliptic(a, b, k)?;
        }
        let g = h.f1(k).gcd(&h.f2(k), k);
        if g.deg() != Some(0) {
            return Err(Error::InvalidModel(InvalidReason::NotHoweType));
        }
        Ok(CurveModel::Howe(h))
    }

    pub fn genus(&self) -> usize {
        match self {
            CurveModel::Elliptic { .. } => 1,
            CurveModel::Hyperelliptic(h) => h.g,
            CurveModel::CanonicalG4(_) | CurveModel::Howe(_) => 4,
            CurveModel::TrigonalQuintic(_) => 5,
        }
    }

    /// Canonical serialisation: decimal coefficient strings in the
    /// documented per-family order.
    ///
    /// * elliptic: `A, B`
    /// * hyperelliptic: `c`, then `f_0 .. f_deg`
    /// * canonical: type tag, then all cubic monomials in descending lex order
    /// * trigonal: case tag, then all quintic monomials in descending lex order
    /// * Howe: `A1, B1, A2, B2, lambda, mu, nu`
    pub fn serialize(&self, k: &Field) -> Vec<String> {
        match self {
            CurveModel::Elliptic { a, b } => vec![k.format(*a), k.format(*b)],
            CurveModel::Hyperelliptic(h) => {
                let mut v = vec![k.format(h.c)];
                v.extend(h.f.to_strings(k));
                v
            }
            CurveModel::CanonicalG4(c) => {
                let mut v = vec![c.qtype.tag().to_string()];
                v.extend(c.cubic.to_strings(k));
                v
            }
            CurveModel::TrigonalQuintic(t) => {
                let tag = match t.case {
                    TrigCase::SplitNode => "split-node",
                    TrigCase::NonSplitNode => "non-split-node",
                    TrigCase::Cusp => "cusp",
                };
                let mut v = vec![tag.to_string()];
                v.extend(t.quintic.to_strings(k));
                v
            }
            CurveModel::Howe(h) => [h.a1, h.b1, h.a2, h.b2, h.lambda, h.mu, h.nu].iter().map(|&x| k.format(x)).collect(),
        }
    }
}

impl CurveModel {
    /// Inverse of [`CurveModel::serialize`] for a record of the given census
    /// family, through the validating constructors.
    pub fn parse(family: &str, fields: &[String], k: &Field) -> Result<CurveModel> {
        let el = |s: &String| k.parse(s);
        let form = |n: usize, d: usize, v: &[String]| -> Result<HomogForm> {
            let t = MonoTable::new(n, d);
            if v.len() != t.len() {
                return Err(Error::Argument(format!("expected {} coefficients, got {}", t.len(), v.len())));
            }
            let cs = v.iter().map(el).collect::<Result<Vec<_>>>()?;
            Ok(HomogForm::from_dense(n, d, &t, &cs))
        };
        let arity = |n: usize| -> Result<()> {
            if fields.len() == n {
                Ok(())
            } else {
                Err(Error::Argument(format!("{family} models have {n} fields, got {}", fields.len())))
            }
        };
        match family {
            "elliptic" => {
                arity(2)?;
                CurveModel::elliptic(el(&fields[0])?, el(&fields[1])?, k)
            }
            "howe-a" | "howe-b" => {
                arity(7)?;
                let v = fields.iter().map(el).collect::<Result<Vec<_>>>()?;
                let h = HoweParams { a1: v[0], b1: v[1], a2: v[2], b2: v[3], lambda: v[4], mu: v[5], nu: v[6] };
                CurveModel::howe(h, k)
            }
            f if f.starts_with("canonical4") => {
                let qtype = match fields.first().map(String::as_str) {
                    Some("N1") => QType::N1,
                    Some("N2") => QType::N2,
                    Some("Dege") => QType::Dege,
                    other => return Err(Error::Argument(format!("unknown quadric type {other:?}"))),
                };
                CurveModel::canonical(qtype, form(4, 3, &fields[1..])?, k)
            }
            f if f.starts_with("trigonal") => {
                let case = match fields.first().map(String::as_str) {
                    Some("split-node") => TrigCase::SplitNode,
                    Some("non-split-node") => TrigCase::NonSplitNode,
                    Some("cusp") => TrigCase::Cusp,
                    other => return Err(Error::Argument(format!("unknown singularity {other:?}"))),
                };
                CurveModel::trigonal(case, form(3, 5, &fields[1..])?, k)
            }
            "genus2" | "hyper3" | "hyper4" | "hyper5" => {
                let (c, f) = fields.split_first().ok_or_else(|| Error::Argument("empty model".into()))?;
                let f = UniPoly::from_coeffs(f.iter().map(el).collect::<Result<_>>()?);
                let deg = f.deg().unwrap_or(0);
                CurveModel::hyperelliptic(el(c)?, f, deg.saturating_sub(1) / 2, k)
            }
            _ => Err(Error::Argument(format!("unknown family {family}"))),
        }
    }
}
