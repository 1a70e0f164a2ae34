//! Per-algebra alphabets and evaluation of parsed expressions.

use std::collections::BTreeSet;

use dnilp_core::budget::Budget;
use dnilp_core::commalg::{PolyIdeal, QuotientAlgebra};
use dnilp_core::diffops::curve::{curve_context, MonomialCurve};
use dnilp_core::diffops::suites::r1_presentation;
use dnilp_core::filtration::{element_order, AlgebraHandle, DeltaFamily, OrderStatus, WeylHandle};
use dnilp_core::localization::{
    loc_add, loc_mul, loc_scale, LocalizationContext, LocalizedElement, LocalizedHandle,
};
use dnilp_core::poly::{default_names, DerivationSpec, Rat};
use dnilp_core::skew::{
    gwa_mul, ore_mul, GwaElement, GwaHandle, GwaPresentation, OreElement, OrePresentation,
};
use dnilp_core::{Error, MultiPoly, WeylElement};
use num_traits::One;
use serde_json::{json, Value};

use crate::parse::{parse_checked, Expr};
use crate::CliError;

type CoreResult<T> = dnilp_core::Result<T>;

pub trait Algebra {
    type V: Clone + PartialEq;

    fn selector(&self) -> String;
    fn allow_negative(&self) -> bool {
        false
    }
    fn knows(&self, name: &str) -> bool;
    fn constant(&self, c: Rat) -> Self::V;
    fn symbol(&self, name: &str) -> CoreResult<Self::V>;
    fn indexed(&self, name: &str, _idx: &[i64]) -> CoreResult<Self::V> {
        Err(Error::Structural(format!(
            "`{name}[...]` is not defined here"
        )))
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> CoreResult<Self::V>;
    fn scale(&self, a: &Self::V, c: &Rat) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> CoreResult<Self::V>;
    fn inverse_power(&self, _a: &Self::V, _k: u32) -> CoreResult<Self::V> {
        Err(Error::Structural(
            "negative powers need a localized algebra".into(),
        ))
    }
    fn render(&self, a: &Self::V) -> String;

    /// `ord` support; algebras without a handle refuse.
    fn order(
        &self,
        _e: &Self::V,
        _delta: &[Self::V],
        _bound: usize,
        _budget: &Budget,
    ) -> CoreResult<Value> {
        Err(Error::Structural(format!(
            "the order engine is not available for {}",
            self.selector()
        )))
    }

    fn parse(&self, text: &str) -> Result<Self::V, CliError> {
        let known = |s: &str| self.knows(s);
        let e = parse_checked(text, self.allow_negative(), &known)?;
        Ok(self.eval(&e)?)
    }

    fn eval(&self, e: &Expr) -> CoreResult<Self::V> {
        Ok(match e {
            Expr::Num(c) => self.constant(c.clone()),
            Expr::Sym(s) => self.symbol(s)?,
            Expr::Indexed(s, idx) => self.indexed(s, idx)?,
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let nb = self.scale(&self.eval(b)?, &-Rat::one());
                self.add(&self.eval(a)?, &nb)?
            }
            Expr::Neg(a) => self.scale(&self.eval(a)?, &-Rat::one()),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    self.inverse_power(&base, (-k) as u32)?
                } else {
                    let mut out = self.constant(Rat::one());
                    for _ in 0..*k {
                        out = self.mul(&out, &base)?;
                    }
                    out
                }
            }
            Expr::Comm(a, b) => self.commutator(&self.eval(a)?, &self.eval(b)?)?,
        })
    }

    fn commutator(&self, a: &Self::V, b: &Self::V) -> CoreResult<Self::V> {
        let ab = self.mul(a, b)?;
        let ba = self.scale(&self.mul(b, a)?, &-Rat::one());
        self.add(&ab, &ba)
    }
}

fn order_doc<H: AlgebraHandle>(
    h: &H,
    e: &H::Elem,
    delta: Vec<H::Elem>,
    bound: usize,
    budget: &Budget,
) -> CoreResult<Value> {
    let fam = DeltaFamily::new(h, delta)?;
    let r = element_order(e, &fam, bound, budget)?;
    let status = match r.status {
        OrderStatus::Zero => "zero",
        OrderStatus::Order(_) => "order",
        OrderStatus::ExceedsBound(_) => "exceeds-bound",
    };
    Ok(json!({
        "status": status,
        "order": r.order(),
        "witness": r.witness,
        "image": r.image.as_ref().map(|i| h.render(i)),
        "bound": bound,
    }))
}

fn index_of(name: &str, prefix: &str, n: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.starts_with('0') {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (1..=n).contains(&i).then(|| i - 1)
}

/// `A_n` with `x1..xn`, `d1..dn`; rank 1 also accepts `x`, `d` and
/// `h = x1*d1`.
pub struct WeylAlg {
    pub n: usize,
}

impl WeylAlg {
    fn weyl_symbol(n: usize, name: &str) -> CoreResult<WeylElement> {
        if let Some(i) = index_of(name, "x", n) {
            return Ok(WeylElement::x(n, i));
        }
        if let Some(i) = index_of(name, "d", n) {
            return Ok(WeylElement::d(n, i));
        }
        if n == 1 {
            match name {
                "h" => return Ok(WeylElement::h()),
                "x" => return Ok(WeylElement::x(1, 0)),
                "d" => return Ok(WeylElement::d(1, 0)),
                _ => {}
            }
        }
        Err(Error::Structural(format!("unknown symbol `{name}`")))
    }

    fn weyl_knows(n: usize, name: &str) -> bool {
        Self::weyl_symbol(n, name).is_ok()
    }
}

impl Algebra for WeylAlg {
    type V = WeylElement;
    fn selector(&self) -> String {
        format!("weyl:{}", self.n)
    }
    fn knows(&self, name: &str) -> bool {
        Self::weyl_knows(self.n, name)
    }
    fn constant(&self, c: Rat) -> WeylElement {
        WeylElement::scalar(self.n, c)
    }
    fn symbol(&self, name: &str) -> CoreResult<WeylElement> {
        Self::weyl_symbol(self.n, name)
    }
    fn add(&self, a: &WeylElement, b: &WeylElement) -> CoreResult<WeylElement> {
        a.try_add(b)
    }
    fn scale(&self, a: &WeylElement, c: &Rat) -> WeylElement {
        a.scale(c)
    }
    fn mul(&self, a: &WeylElement, b: &WeylElement) -> CoreResult<WeylElement> {
        a.try_mul(b)
    }
    fn render(&self, a: &WeylElement) -> String {
        a.render()
    }
    fn order(
        &self,
        e: &WeylElement,
        delta: &[WeylElement],
        bound: usize,
        budget: &Budget,
    ) -> CoreResult<Value> {
        order_doc(&WeylHandle::new(self.n), e, delta.to_vec(), bound, budget)
    }
}

/// Left fractions over `A_1` (`loc:x`) or Laurent operators on a curve
/// (`curve:a,b,...`).
pub struct LocAlg {
    pub ctx: LocalizationContext,
    pub curve: Option<MonomialCurve>,
}

impl LocAlg {
    pub fn at_x() -> Self {
        LocAlg {
            ctx: LocalizationContext::at_x(),
            curve: None,
        }
    }

    pub fn curve(curve: MonomialCurve) -> Self {
        LocAlg {
            ctx: curve_context(),
            curve: Some(curve),
        }
    }

    fn s(&self) -> LocalizedElement {
        LocalizedElement::from_weyl(self.ctx.s().clone())
    }
}

impl Algebra for LocAlg {
    type V = LocalizedElement;
    fn selector(&self) -> String {
        match &self.curve {
            None => "loc:x".into(),
            Some(c) => format!(
                "curve:{}",
                c.generators()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
    fn allow_negative(&self) -> bool {
        true
    }
    fn knows(&self, name: &str) -> bool {
        match self.curve {
            None => WeylAlg::weyl_knows(1, name),
            Some(_) => name == "t" || name == "d",
        }
    }
    fn constant(&self, c: Rat) -> LocalizedElement {
        LocalizedElement::from_weyl(WeylElement::scalar(1, c))
    }
    fn symbol(&self, name: &str) -> CoreResult<LocalizedElement> {
        let w = match (&self.curve, name) {
            (None, _) => WeylAlg::weyl_symbol(1, name)?,
            (Some(_), "t") => WeylElement::x(1, 0),
            (Some(_), "d") => WeylElement::d(1, 0),
            _ => return Err(Error::Structural(format!("unknown symbol `{name}`"))),
        };
        Ok(LocalizedElement::from_weyl(w))
    }
    fn add(&self, a: &LocalizedElement, b: &LocalizedElement) -> CoreResult<LocalizedElement> {
        loc_add(a, b, &self.ctx)
    }
    fn scale(&self, a: &LocalizedElement, c: &Rat) -> LocalizedElement {
        loc_scale(a, c)
    }
    fn mul(&self, a: &LocalizedElement, b: &LocalizedElement) -> CoreResult<LocalizedElement> {
        loc_mul(a, b, &self.ctx)
    }
    fn inverse_power(&self, a: &LocalizedElement, k: u32) -> CoreResult<LocalizedElement> {
        if *a != self.s() {
            return Err(Error::Structural(format!(
                "only {} is invertible here",
                self.ctx.render_weyl(self.ctx.s())
            )));
        }
        Ok(LocalizedElement::new(k, WeylElement::one(1)))
    }
    fn render(&self, a: &LocalizedElement) -> String {
        a.render(&self.ctx)
    }
    fn order(
        &self,
        e: &LocalizedElement,
        delta: &[LocalizedElement],
        bound: usize,
        budget: &Budget,
    ) -> CoreResult<Value> {
        order_doc(
            &LocalizedHandle::new(self.ctx.clone()),
            e,
            delta.to_vec(),
            bound,
            budget,
        )
    }
}

/// A generalized Weyl algebra from a presentation; `x`/`y` (rank 1) or
/// `x1..`/`y1..` and `v[...]` name the graded generators.
pub struct GwaAlg {
    pub presentation: GwaPresentation,
    pub label: String,
}

impl GwaAlg {
    fn generator(&self, name: &str) -> Option<GwaElement> {
        let p = &self.presentation;
        let r = p.rank();
        if r == 1 && name == "x" {
            return Some(GwaElement::x(p, 0));
        }
        if r == 1 && name == "y" {
            return Some(GwaElement::y(p, 0));
        }
        if let Some(i) = index_of(name, "x", r) {
            return Some(GwaElement::x(p, i));
        }
        index_of(name, "y", r).map(|i| GwaElement::y(p, i))
    }
}

impl Algebra for GwaAlg {
    type V = GwaElement;
    fn selector(&self) -> String {
        format!("gwa:{}", self.label)
    }
    fn knows(&self, name: &str) -> bool {
        name == "v"
            || self.presentation.base_names().iter().any(|b| b == name)
            || self.generator(name).is_some()
    }
    fn constant(&self, c: Rat) -> GwaElement {
        GwaElement::one(&self.presentation).scale(&c)
    }
    fn symbol(&self, name: &str) -> CoreResult<GwaElement> {
        let p = &self.presentation;
        if let Some(i) = p.base_names().iter().position(|b| b == name) {
            return Ok(GwaElement::base(p, MultiPoly::var(p.base_vars(), i)));
        }
        self.generator(name)
            .ok_or_else(|| Error::Structural(format!("unknown symbol `{name}`")))
    }
    fn indexed(&self, name: &str, idx: &[i64]) -> CoreResult<GwaElement> {
        let p = &self.presentation;
        if name != "v" || idx.len() != p.rank() {
            return Err(Error::Structural(format!(
                "expected v[...] with {} indices",
                p.rank()
            )));
        }
        Ok(GwaElement::term(
            p,
            idx.to_vec(),
            MultiPoly::one(p.base_vars()),
        ))
    }
    fn add(&self, a: &GwaElement, b: &GwaElement) -> CoreResult<GwaElement> {
        a.add(b)
    }
    fn scale(&self, a: &GwaElement, c: &Rat) -> GwaElement {
        a.scale(c)
    }
    fn mul(&self, a: &GwaElement, b: &GwaElement) -> CoreResult<GwaElement> {
        gwa_mul(a, b, &self.presentation)
    }
    fn render(&self, a: &GwaElement) -> String {
        a.render(&self.presentation)
    }
    fn order(
        &self,
        e: &GwaElement,
        delta: &[GwaElement],
        bound: usize,
        budget: &Budget,
    ) -> CoreResult<Value> {
        order_doc(
            &GwaHandle::new(self.presentation.clone()),
            e,
            delta.to_vec(),
            bound,
            budget,
        )
    }
}

pub struct OreAlg {
    pub presentation: OrePresentation,
    pub label: String,
}

impl Algebra for OreAlg {
    type V = OreElement;
    fn selector(&self) -> String {
        format!("ore:{}", self.label)
    }
    fn knows(&self, name: &str) -> bool {
        let p = &self.presentation;
        p.base().names().iter().any(|b| b == name) || p.names().iter().any(|b| b == name)
    }
    fn constant(&self, c: Rat) -> OreElement {
        OreElement::one(&self.presentation).scale(&c)
    }
    fn symbol(&self, name: &str) -> CoreResult<OreElement> {
        let p = &self.presentation;
        if let Some(i) = p.base().names().iter().position(|b| b == name) {
            return OreElement::from_base(p, &MultiPoly::var(p.base().nvars(), i));
        }
        if let Some(i) = p.names().iter().position(|b| b == name) {
            return OreElement::var(p, i);
        }
        Err(Error::Structural(format!("unknown symbol `{name}`")))
    }
    fn add(&self, a: &OreElement, b: &OreElement) -> CoreResult<OreElement> {
        a.add(b)
    }
    fn scale(&self, a: &OreElement, c: &Rat) -> OreElement {
        a.scale(c)
    }
    fn mul(&self, a: &OreElement, b: &OreElement) -> CoreResult<OreElement> {
        ore_mul(a, b, &self.presentation)
    }
    fn render(&self, a: &OreElement) -> String {
        a.render(&self.presentation)
    }
}

/// Commutative polynomials in named variables.
pub struct PolyAlg {
    pub names: Vec<String>,
}

impl Algebra for PolyAlg {
    type V = MultiPoly;
    fn selector(&self) -> String {
        format!("poly:{}", self.names.join(","))
    }
    fn knows(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }
    fn constant(&self, c: Rat) -> MultiPoly {
        MultiPoly::constant(self.names.len(), c)
    }
    fn symbol(&self, name: &str) -> CoreResult<MultiPoly> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| MultiPoly::var(self.names.len(), i))
            .ok_or_else(|| Error::Structural(format!("unknown symbol `{name}`")))
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> CoreResult<MultiPoly> {
        a.try_add(b)
    }
    fn scale(&self, a: &MultiPoly, c: &Rat) -> MultiPoly {
        a.scale(c)
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> CoreResult<MultiPoly> {
        a.try_mul(b)
    }
    fn render(&self, a: &MultiPoly) -> String {
        a.render(&self.names)
    }
}

pub enum AnyAlgebra {
    Weyl(WeylAlg),
    Loc(LocAlg),
    Gwa(GwaAlg),
    Ore(OreAlg),
    Poly(PolyAlg),
}

/// Runs `$body` with `$a` bound to the concrete algebra.
#[macro_export]
macro_rules! on_algebra {
    ($alg:expr, $a:ident => $body:expr) => {
        match $alg {
            $crate::algebra::AnyAlgebra::Weyl($a) => $body,
            $crate::algebra::AnyAlgebra::Loc($a) => $body,
            $crate::algebra::AnyAlgebra::Gwa($a) => $body,
            $crate::algebra::AnyAlgebra::Ore($a) => $body,
            $crate::algebra::AnyAlgebra::Poly($a) => $body,
        }
    };
}

fn rat_value(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| CliError::Usage(format!("expected an integer, got {n}"))),
        Value::String(s) => {
            let p = PolyAlg { names: vec![] };
            let c = p.parse(s)?;
            if c.is_constant() {
                Ok(c.constant_term())
            } else {
                Err(CliError::Usage(format!("expected a rational, got `{s}`")))
            }
        }
        other => Err(CliError::Usage(format!("expected a number, got {other}"))),
    }
}

fn string_list(doc: &Value, key: &str) -> Result<Vec<String>, CliError> {
    match doc.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(a)) => a
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| CliError::Usage(format!("`{key}` must hold strings")))
            })
            .collect(),
        Some(_) => Err(CliError::Usage(format!("`{key}` must be an array"))),
    }
}

fn read_doc(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

/// `{base_vars, sigma_shifts, defining_elements}`.
pub fn gwa_from_json(doc: &Value) -> Result<GwaPresentation, CliError> {
    let names = string_list(doc, "base_vars")?;
    let base = PolyAlg {
        names: names.clone(),
    };
    let shifts = match doc.get("sigma_shifts") {
        Some(Value::Array(rows)) => rows
            .iter()
            .map(|row| match row {
                Value::Array(r) => r.iter().map(rat_value).collect::<Result<Vec<_>, _>>(),
                _ => Err(CliError::Usage("`sigma_shifts` rows must be arrays".into())),
            })
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(CliError::Usage("missing `sigma_shifts`".into())),
    };
    let a = string_list(doc, "defining_elements")?
        .iter()
        .map(|s| base.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GwaPresentation::new(names, shifts, a)?)
}

/// `{base_vars, derivation_images, defining_elements, ore_vars?}`; the
/// defining elements are relations of the base ring.
pub fn ore_from_json(doc: &Value) -> Result<OrePresentation, CliError> {
    let names = string_list(doc, "base_vars")?;
    let base = PolyAlg {
        names: names.clone(),
    };
    let m = names.len();
    let derivations = match doc.get("derivation_images") {
        Some(Value::Array(rows)) => rows
            .iter()
            .map(|row| {
                let imgs = match row {
                    Value::Array(r) => r
                        .iter()
                        .map(|v| {
                            v.as_str()
                                .ok_or_else(|| {
                                    CliError::Usage("derivation images are strings".into())
                                })
                                .and_then(|s| base.parse(s))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                    _ => {
                        return Err(CliError::Usage(
                            "`derivation_images` rows must be arrays".into(),
                        ))
                    }
                };
                Ok(DerivationSpec::new(imgs)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        _ => return Err(CliError::Usage("missing `derivation_images`".into())),
    };
    let rels = string_list(doc, "defining_elements")?
        .iter()
        .map(|s| base.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = if rels.is_empty() {
        PolyIdeal::zero(m)
    } else {
        PolyIdeal::new(m, rels)?
    };
    let mut ore_names = string_list(doc, "ore_vars")?;
    if ore_names.is_empty() {
        ore_names = (1..=derivations.len()).map(|i| format!("x{i}")).collect();
    }
    let q = QuotientAlgebra::with_names(ideal, names)?;
    Ok(OrePresentation::new(q, derivations, ore_names)?)
}

/// Parses an `--algebra` selector; `vars` names polynomial variables.
pub fn select(selector: &str, vars: Option<Vec<String>>) -> Result<AnyAlgebra, CliError> {
    let (kind, arg) = selector.split_once(':').unwrap_or((selector, ""));
    match kind {
        "weyl" => {
            let n: usize = if arg.is_empty() {
                1
            } else {
                arg.parse()
                    .map_err(|_| CliError::Usage(format!("bad rank `{arg}`")))?
            };
            if n == 0 {
                return Err(CliError::Usage("rank must be positive".into()));
            }
            Ok(AnyAlgebra::Weyl(WeylAlg { n }))
        }
        "loc" => match arg {
            "" | "x" | "x1" => Ok(AnyAlgebra::Loc(LocAlg::at_x())),
            _ => Err(CliError::Usage(format!(
                "localization is supported at x, not `{arg}`"
            ))),
        },
        "curve" => {
            let gens = arg
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("bad curve `{arg}`")))?;
            Ok(AnyAlgebra::Loc(LocAlg::curve(MonomialCurve::new(gens)?)))
        }
        "gwa" => {
            let presentation = match arg {
                "weyl" => GwaPresentation::weyl(),
                "r1" => r1_presentation(),
                path => gwa_from_json(&read_doc(path)?)?,
            };
            Ok(AnyAlgebra::Gwa(GwaAlg {
                presentation,
                label: arg.to_string(),
            }))
        }
        "ore" => {
            let presentation = match arg {
                "weyl" => OrePresentation::new(
                    QuotientAlgebra::with_names(PolyIdeal::zero(1), vec!["t".into()])?,
                    vec![DerivationSpec::partial(1, 0)],
                    vec!["x".into()],
                )?,
                path => ore_from_json(&read_doc(path)?)?,
            };
            Ok(AnyAlgebra::Ore(OreAlg {
                presentation,
                label: arg.to_string(),
            }))
        }
        "poly" => {
            let names: Vec<String> = if arg.is_empty() {
                vars.unwrap_or_else(|| default_names(1))
            } else {
                arg.split(',').map(|s| s.trim().to_string()).collect()
            };
            Ok(AnyAlgebra::Poly(PolyAlg { names }))
        }
        _ => Err(CliError::Usage(format!("unknown algebra `{selector}`"))),
    }
}

/// Identifiers of `texts`, sorted, skipping numbers.
pub fn infer_variables(texts: &[String]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    for t in texts {
        let mut cur = String::new();
        for c in t.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_alphanumeric() || c == '_' {
                cur.push(c);
                continue;
            }
            if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                seen.insert(cur.clone());
            }
            cur.clear();
        }
    }
    seen.into_iter().collect()
}
