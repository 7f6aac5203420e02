//! Text forms for fields, q-polynomials and family descriptors.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context, Result};
use scatpoly::families::{
    lunardon_polverino, phi, phi_adjoint_form, pseudoregulus, quadrinomial_psi, PhiParams,
};
use scatpoly::{FieldCtx, FieldElem, LinPoly};

/// `p^eps^n:c0,c1,...,cd`, modulus coefficients low degree first, leading 1 included.
pub fn field_descriptor(field: &FieldCtx) -> String {
    let coeffs: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
    format!("{}^{}^{}:{}", field.p(), field.eps(), field.n(), coeffs.join(","))
}

/// `q-poly n=<n> [i:elem_index, ...]`
pub fn qpoly_to_string(f: &LinPoly<'_>) -> String {
    let field = f.field();
    let terms: Vec<String> = f.terms().map(|(i, c)| format!("{i}:{}", field.index(c))).collect();
    format!("q-poly n={} [{}]", f.n(), terms.join(", "))
}

pub fn parse_qpoly<'f>(field: &'f FieldCtx, s: &str) -> Result<LinPoly<'f>> {
    let rest = s.trim().strip_prefix("q-poly").ok_or_else(|| anyhow!("expected \"q-poly n=<n> [...]\""))?;
    let rest = rest.trim_start();
    let rest = rest.strip_prefix("n=").ok_or_else(|| anyhow!("missing n= in {s:?}"))?;
    let (n, body) = rest.split_once('[').ok_or_else(|| anyhow!("missing '[' in {s:?}"))?;
    let n: u32 = n.trim().parse().with_context(|| format!("bad n in {s:?}"))?;
    ensure!(n == field.n(), "polynomial has n = {n} but the field has n = {}", field.n());
    let body = body.trim_end().strip_suffix(']').ok_or_else(|| anyhow!("missing ']' in {s:?}"))?;
    let mut terms = Vec::new();
    for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (i, c) = item.split_once(':').ok_or_else(|| anyhow!("term {item:?} is not i:index"))?;
        let i: usize = i.trim().parse().with_context(|| format!("bad exponent in {item:?}"))?;
        ensure!(i < n as usize, "exponent {i} is not below n = {n}");
        let c: u64 = c.trim().parse().with_context(|| format!("bad coefficient in {item:?}"))?;
        terms.push((i, field.elem(c)?));
    }
    Ok(LinPoly::from_terms(field, &terms))
}

/// A polynomial named by family and parameters, or given explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Phi { t: usize, j: usize, m: u64 },
    Pseudoregulus { n: usize, s: usize },
    LunardonPolverino { n: usize, s: usize, delta: u64 },
    Psi { t: usize, s: usize, h: u64 },
    PhiAdjoint { t: usize, mu: u64 },
    Explicit(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Phi { t, j, m } => write!(f, "phi:t={t},J={j},m={m}"),
            Family::Pseudoregulus { n, s } => write!(f, "pr:{n},{s}"),
            Family::LunardonPolverino { n, s, delta } => write!(f, "lp:{n},{s},delta={delta}"),
            Family::Psi { t, s, h } => write!(f, "psi:{t},{s},h={h}"),
            Family::PhiAdjoint { t, mu } => write!(f, "phiT:{t},mu={mu}"),
            Family::Explicit(s) => f.write_str(s),
        }
    }
}

/// Fills named slots from `key=value` items or, failing a key, by position.
fn slots(name: &str, body: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let mut out: Vec<Option<u64>> = vec![None; keys.len()];
    let items: Vec<&str> = body.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    ensure!(items.len() == keys.len(), "{name} takes {} parameters ({}), got {:?}", keys.len(), keys.join(","), body);
    for (pos, item) in items.iter().enumerate() {
        let (slot, value) = match item.split_once('=') {
            Some((k, v)) => {
                let k = k.trim();
                let slot = keys.iter().position(|&x| x == k).ok_or_else(|| anyhow!("{name} has no parameter {k:?}"))?;
                (slot, v)
            }
            None => (pos, *item),
        };
        ensure!(out[slot].is_none(), "{name}: parameter {} given twice", keys[slot]);
        out[slot] = Some(value.trim().parse().with_context(|| format!("{name}: bad value {value:?}"))?);
    }
    Ok(out.into_iter().map(|x| x.expect("every slot filled")).collect())
}

impl FromStr for Family {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("q-poly") {
            return Ok(Family::Explicit(s.to_string()));
        }
        let (name, body) = s.split_once(':').ok_or_else(|| anyhow!("family descriptor {s:?} lacks ':'"))?;
        let z = |v: u64| v as usize;
        Ok(match name {
            "phi" => {
                let v = slots(name, body, &["t", "J", "m"])?;
                Family::Phi { t: z(v[0]), j: z(v[1]), m: v[2] }
            }
            "pr" => {
                let v = slots(name, body, &["n", "s"])?;
                Family::Pseudoregulus { n: z(v[0]), s: z(v[1]) }
            }
            "lp" => {
                let v = slots(name, body, &["n", "s", "delta"])?;
                Family::LunardonPolverino { n: z(v[0]), s: z(v[1]), delta: v[2] }
            }
            "psi" => {
                let v = slots(name, body, &["t", "s", "h"])?;
                Family::Psi { t: z(v[0]), s: z(v[1]), h: v[2] }
            }
            "phiT" => {
                let v = slots(name, body, &["t", "mu"])?;
                Family::PhiAdjoint { t: z(v[0]), mu: v[1] }
            }
            other => bail!("unknown family {other:?}; expected phi, pr, lp, psi, phiT or a q-poly"),
        })
    }
}

impl Family {
    pub fn build<'f>(&self, field: &'f FieldCtx) -> Result<LinPoly<'f>> {
        let n = field.n() as usize;
        let tower = |t: usize| -> Result<()> {
            ensure!(2 * t == n, "descriptor has t = {t} but the field has n = {n}, so t must be {}", n / 2);
            Ok(())
        };
        let top = |m: usize| -> Result<()> {
            ensure!(m == n, "descriptor has n = {m} but the field has n = {n}");
            Ok(())
        };
        let elem = |i: u64| -> Result<FieldElem> { Ok(field.elem(i)?) };
        Ok(match *self {
            Family::Phi { t, j, m } => {
                tower(t)?;
                phi(field, &PhiParams::new(field, t, j, elem(m)?)?)?
            }
            Family::Pseudoregulus { n: m, s } => {
                top(m)?;
                pseudoregulus(field, s)?
            }
            Family::LunardonPolverino { n: m, s, delta } => {
                top(m)?;
                lunardon_polverino(field, s, elem(delta)?)?
            }
            Family::Psi { t, s, h } => {
                tower(t)?;
                quadrinomial_psi(field, t, s, elem(h)?)?.0
            }
            Family::PhiAdjoint { t, mu } => {
                tower(t)?;
                phi_adjoint_form(field, t, elem(mu)?)?
            }
            Family::Explicit(ref s) => parse_qpoly(field, s)?,
        })
    }
}
