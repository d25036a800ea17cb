//! Line-oriented ring definition files, polynomial expressions, and
//! identity literals.
//!
//! Ring file grammar (comments start with `#`, blank lines ignored):
//!
//! ```text
//! ring.kind = zn|matrix|triangular|truncpoly|product|structure
//! ring.params = <integers, comma separated>
//! ring.labels = <names for g1..gk>          # optional
//! ring.left  = <kind>:<params>              # product only
//! ring.right = <kind>:<params>              # product only
//! [structure]                               # kind = structure only
//! g1*g2 = 2g1 + g3
//! [derivation]                              # optional, at most one
//! D(g1) = 0
//! inner = E12
//! zero
//! ```
//!
//! Element literals are sums of `<int><generator>` terms (`2g1 + g3`,
//! `E12`, `0`), whitespace-insensitive. Polynomial expressions are sums of
//! `x^i*(<element>)`, `x*(<element>)`, or `(<element>)` terms; duplicate
//! degrees are summed. Parsing is total: every input yields a value or a
//! positioned `ParseError`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::finring::{
    build_matrix_ring, build_product, build_triangular_ring, build_truncated_poly, build_zn,
    FiniteRing, RingElement,
};
use crate::identities::MultilinearIdentity;
use crate::skewpoly::SkewPoly;

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

/// One `<int><name>` term of an element literal; `name` is empty for a bare
/// integer (only the literal `0` is meaningful that way).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemLit {
    pub terms: Vec<(i128, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Zn,
    Matrix,
    Triangular,
    Truncpoly,
    Product,
    Structure,
}

impl RingKind {
    fn from_str(s: &str) -> Option<RingKind> {
        match s {
            "zn" => Some(RingKind::Zn),
            "matrix" => Some(RingKind::Matrix),
            "triangular" => Some(RingKind::Triangular),
            "truncpoly" => Some(RingKind::Truncpoly),
            "product" => Some(RingKind::Product),
            "structure" => Some(RingKind::Structure),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivSpec {
    Zero,
    Inner(ElemLit),
    Images(Vec<(String, ElemLit)>),
}

/// Parsed but not yet semantically checked ring definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingFile {
    pub kind: RingKind,
    pub params: Vec<u64>,
    pub labels: Option<Vec<String>>,
    pub left: Option<(RingKind, Vec<u64>)>,
    pub right: Option<(RingKind, Vec<u64>)>,
    pub structure: Vec<(usize, usize, ElemLit)>,
    pub derivation: Option<DerivSpec>,
}

fn parse_u64_list(s: &str, line: usize) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| perr(line, 1, format!("expected an integer, got '{}'", p.trim())))
        })
        .collect()
}

fn parse_elem_lit(s: &str, line: usize) -> Result<ElemLit> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(line, 1, "empty element literal"));
    }
    let mut terms = Vec::new();
    for part in compact.split('+') {
        if part.is_empty() {
            return Err(perr(line, 1, "empty term in element literal"));
        }
        let bytes = part.as_bytes();
        let mut i = 0;
        let neg = bytes[0] == b'-';
        if neg {
            i = 1;
        }
        let num_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i128 = if i > num_start {
            part[num_start..i]
                .parse::<i128>()
                .map_err(|_| perr(line, 1, "coefficient out of range"))?
        } else {
            1
        };
        let coeff = if neg { -coeff } else { coeff };
        let name = &part[i..];
        if name.is_empty() {
            if i == num_start {
                return Err(perr(line, 1, format!("malformed term '{part}'")));
            }
            if coeff != 0 {
                return Err(perr(
                    line,
                    1,
                    "a bare integer term must be 0; attach a generator otherwise",
                ));
            }
            terms.push((0, String::new()));
            continue;
        }
        if !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
            || !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            return Err(perr(line, 1, format!("malformed generator name '{name}'")));
        }
        terms.push((coeff, name.to_string()));
    }
    Ok(ElemLit { terms })
}

fn parse_gen_name(s: &str, line: usize) -> Result<String> {
    let t = s.trim();
    if t.is_empty()
        || !t
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        || !t.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
    {
        return Err(perr(line, 1, format!("malformed generator name '{t}'")));
    }
    Ok(t.to_string())
}

fn parse_kind_params(s: &str, line: usize) -> Result<(RingKind, Vec<u64>)> {
    let (kind_s, params_s) = match s.split_once(':') {
        Some((k, p)) => (k.trim(), p),
        None => (s.trim(), ""),
    };
    let kind = RingKind::from_str(kind_s)
        .ok_or_else(|| perr(line, 1, format!("unknown ring kind '{kind_s}'")))?;
    if matches!(kind, RingKind::Product | RingKind::Structure) {
        return Err(perr(line, 1, "nested product/structure rings are not supported"));
    }
    Ok((kind, parse_u64_list(params_s, line)?))
}

pub fn parse_ringfile(text: &str) -> Result<RingFile> {
    #[derive(PartialEq)]
    enum Section {
        Top,
        Structure,
        Derivation,
    }
    let mut kind: Option<RingKind> = None;
    let mut params: Vec<u64> = Vec::new();
    let mut labels: Option<Vec<String>> = None;
    let mut left = None;
    let mut right = None;
    let mut structure = Vec::new();
    let mut derivation: Option<DerivSpec> = None;
    let mut section = Section::Top;
    let mut seen_derivation_section = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            match line {
                "[structure]" => section = Section::Structure,
                "[derivation]" => {
                    if seen_derivation_section {
                        return Err(perr(line_no, 1, "duplicate [derivation] section"));
                    }
                    seen_derivation_section = true;
                    section = Section::Derivation;
                }
                _ => return Err(perr(line_no, 1, format!("unknown section '{line}'"))),
            }
            continue;
        }
        match section {
            Section::Top => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| perr(line_no, 1, "expected 'key = value'"))?;
                match key.trim() {
                    "ring.kind" => {
                        if kind.is_some() {
                            return Err(perr(line_no, 1, "duplicate ring.kind"));
                        }
                        kind = Some(RingKind::from_str(value.trim()).ok_or_else(|| {
                            perr(line_no, 1, format!("unknown ring kind '{}'", value.trim()))
                        })?);
                    }
                    "ring.params" => params = parse_u64_list(value, line_no)?,
                    "ring.labels" => {
                        labels = Some(
                            value
                                .split(',')
                                .map(|l| parse_gen_name(l, line_no))
                                .collect::<Result<_>>()?,
                        )
                    }
                    "ring.left" => left = Some(parse_kind_params(value, line_no)?),
                    "ring.right" => right = Some(parse_kind_params(value, line_no)?),
                    other => {
                        return Err(perr(line_no, 1, format!("unknown key '{other}'")));
                    }
                }
            }
            Section::Structure => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| perr(line_no, 1, "expected 'gI*gJ = <element>'"))?;
                let lhs: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
                let (a, b) = lhs
                    .split_once('*')
                    .ok_or_else(|| perr(line_no, 1, "expected 'gI*gJ' on the left"))?;
                let gen_index = |s: &str| -> Result<usize> {
                    s.strip_prefix('g')
                        .and_then(|d| d.parse::<usize>().ok())
                        .and_then(|i| i.checked_sub(1))
                        .ok_or_else(|| {
                            perr(line_no, 1, format!("expected a generator 'gN', got '{s}'"))
                        })
                };
                structure.push((gen_index(a)?, gen_index(b)?, parse_elem_lit(rhs, line_no)?));
            }
            Section::Derivation => {
                if line == "zero" {
                    if derivation.is_some() {
                        return Err(perr(line_no, 1, "conflicting derivation specifications"));
                    }
                    derivation = Some(DerivSpec::Zero);
                } else if let Some(rest) = line.strip_prefix("inner") {
                    let rest = rest.trim_start();
                    let value = rest
                        .strip_prefix('=')
                        .ok_or_else(|| perr(line_no, 1, "expected 'inner = <element>'"))?;
                    if derivation.is_some() {
                        return Err(perr(line_no, 1, "conflicting derivation specifications"));
                    }
                    derivation = Some(DerivSpec::Inner(parse_elem_lit(value, line_no)?));
                } else if let Some(rest) = line.strip_prefix("D(") {
                    let (gen, rest) = rest
                        .split_once(')')
                        .ok_or_else(|| perr(line_no, 1, "expected 'D(<generator>) = <element>'"))?;
                    let value = rest
                        .trim_start()
                        .strip_prefix('=')
                        .ok_or_else(|| perr(line_no, 1, "expected '=' after 'D(...)'"))?;
                    let name = parse_gen_name(gen, line_no)?;
                    let lit = parse_elem_lit(value, line_no)?;
                    match &mut derivation {
                        None => derivation = Some(DerivSpec::Images(vec![(name, lit)])),
                        Some(DerivSpec::Images(v)) => v.push((name, lit)),
                        Some(_) => {
                            return Err(perr(line_no, 1, "conflicting derivation specifications"))
                        }
                    }
                } else {
                    return Err(perr(line_no, 1, format!("unrecognized derivation line '{line}'")));
                }
            }
        }
    }
    let kind = kind.ok_or_else(|| perr(1, 1, "missing ring.kind"))?;
    Ok(RingFile {
        kind,
        params,
        labels,
        left,
        right,
        structure,
        derivation,
    })
}

/// A validated ring together with its derivation and generator name table.
pub struct BuiltRing {
    pub ring: Arc<FiniteRing>,
    pub deriv: Arc<Derivation>,
    pub labels: BTreeMap<String, usize>,
}

impl BuiltRing {
    pub fn resolve(&self, lit: &ElemLit) -> Result<RingElement> {
        let k = self.ring.generator_count();
        let mut residues = vec![0i128; k];
        for (coeff, name) in &lit.terms {
            if name.is_empty() {
                continue; // literal 0
            }
            let idx = *self.labels.get(name).ok_or_else(|| {
                Error::ShapeError(format!("unknown generator '{name}'"))
            })?;
            residues[idx] += coeff;
        }
        self.ring.element(&residues)
    }
}

fn builder_labels(kind: RingKind, params: &[u64]) -> Vec<(String, usize)> {
    match kind {
        RingKind::Zn => vec![("one".into(), 0)],
        RingKind::Matrix => {
            let n = params.first().copied().unwrap_or(0) as usize;
            let mut v = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    v.push((format!("E{}{}", i + 1, j + 1), i * n + j));
                }
            }
            v
        }
        RingKind::Triangular => {
            let n = params.first().copied().unwrap_or(0) as usize;
            let mut v = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in i..n {
                    v.push((format!("E{}{}", i + 1, j + 1), idx));
                    idx += 1;
                }
            }
            v
        }
        RingKind::Truncpoly => {
            let e = params.get(1).copied().unwrap_or(0) as usize;
            let mut v = vec![("one".into(), 0)];
            if e > 1 {
                v.push(("t".into(), 1));
            }
            for i in 2..e {
                v.push((format!("t{i}"), i));
            }
            v
        }
        RingKind::Product | RingKind::Structure => Vec::new(),
    }
}

fn build_basic(kind: RingKind, params: &[u64], caps: &Caps) -> Result<Arc<FiniteRing>> {
    let want = |n: usize| -> Result<()> {
        if params.len() != n {
            Err(Error::ShapeError(format!(
                "ring kind expects {n} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    match kind {
        RingKind::Zn => {
            want(1)?;
            build_zn(params[0], caps)
        }
        RingKind::Matrix => {
            want(2)?;
            build_matrix_ring(params[0] as usize, params[1], caps)
        }
        RingKind::Triangular => {
            want(2)?;
            build_triangular_ring(params[0] as usize, params[1], caps)
        }
        RingKind::Truncpoly => {
            want(2)?;
            build_truncated_poly(params[0], params[1] as usize, caps)
        }
        RingKind::Product | RingKind::Structure => unreachable!("handled by caller"),
    }
}

/// Resolve a parsed ring file into a validated ring and derivation.
pub fn build_ringfile(rf: &RingFile, caps: &Caps) -> Result<BuiltRing> {
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    let ring = match rf.kind {
        RingKind::Product => {
            let (lk, lp) = rf
                .left
                .as_ref()
                .ok_or_else(|| Error::ShapeError("product ring needs ring.left".into()))?;
            let (rk, rp) = rf
                .right
                .as_ref()
                .ok_or_else(|| Error::ShapeError("product ring needs ring.right".into()))?;
            let lhs = build_basic(*lk, lp, caps)?;
            let rhs = build_basic(*rk, rp, caps)?;
            let k1 = lhs.generator_count();
            for (name, idx) in builder_labels(*lk, lp) {
                labels.insert(format!("l_{name}"), idx);
            }
            for (name, idx) in builder_labels(*rk, rp) {
                labels.insert(format!("r_{name}"), k1 + idx);
            }
            build_product(&lhs, &rhs, caps)?
        }
        RingKind::Structure => {
            let k = rf.params.len();
            if k == 0 {
                return Err(Error::ShapeError(
                    "structure ring needs ring.params = <moduli>".into(),
                ));
            }
            // resolve right-hand sides with only gN names available
            let mut table = vec![vec![vec![0u64; k]; k]; k];
            let mut filled = vec![vec![false; k]; k];
            for (i, j, lit) in &rf.structure {
                if *i >= k || *j >= k {
                    return Err(Error::ShapeError(format!(
                        "generator index out of range in g{}*g{}",
                        i + 1,
                        j + 1
                    )));
                }
                let mut residues = vec![0i128; k];
                for (coeff, name) in &lit.terms {
                    if name.is_empty() {
                        continue;
                    }
                    let idx = name
                        .strip_prefix('g')
                        .and_then(|d| d.parse::<usize>().ok())
                        .and_then(|x| x.checked_sub(1))
                        .filter(|&x| x < k)
                        .ok_or_else(|| {
                            Error::ShapeError(format!("unknown generator '{name}'"))
                        })?;
                    residues[idx] += coeff;
                }
                if filled[*i][*j] {
                    return Err(Error::ShapeError(format!(
                        "duplicate table entry g{}*g{}",
                        i + 1,
                        j + 1
                    )));
                }
                filled[*i][*j] = true;
                table[*i][*j] = residues
                    .iter()
                    .zip(&rf.params)
                    .map(|(&r, &m)| r.rem_euclid(m as i128) as u64)
                    .collect();
            }
            FiniteRing::build_structure(rf.params.clone(), table, caps)?
        }
        basic => {
            for (name, idx) in builder_labels(basic, &rf.params) {
                labels.insert(name, idx);
            }
            build_basic(basic, &rf.params, caps)?
        }
    };
    let k = ring.generator_count();
    for i in 0..k {
        labels.insert(format!("g{}", i + 1), i);
    }
    if let Some(user_labels) = &rf.labels {
        if user_labels.len() != k {
            return Err(Error::ShapeError(format!(
                "ring.labels lists {} names for {k} generators",
                user_labels.len()
            )));
        }
        for (i, name) in user_labels.iter().enumerate() {
            labels.insert(name.clone(), i);
        }
    }

    let mut built = BuiltRing {
        ring: ring.clone(),
        deriv: Arc::new(Derivation::trivial(ring.clone())),
        labels,
    };
    let deriv = match &rf.derivation {
        None | Some(DerivSpec::Zero) => Derivation::trivial(ring.clone()),
        Some(DerivSpec::Inner(lit)) => {
            let b = built.resolve(lit)?;
            Derivation::inner(ring.clone(), &b)?
        }
        Some(DerivSpec::Images(entries)) => {
            let mut images = vec![ring.zero(); k];
            for (name, lit) in entries {
                let idx = *built.labels.get(name).ok_or_else(|| {
                    Error::ShapeError(format!("unknown generator '{name}'"))
                })?;
                images[idx] = built.resolve(lit)?;
            }
            Derivation::new(ring.clone(), images)?
        }
    };
    built.deriv = Arc::new(deriv);
    Ok(built)
}

/// Convenience: parse then build.
pub fn load_ringfile(text: &str, caps: &Caps) -> Result<BuiltRing> {
    build_ringfile(&parse_ringfile(text)?, caps)
}

/// Parse a polynomial expression in the context of a built ring.
///
/// Grammar: terms `x^<int>*(<element>)`, `x*(<element>)`, or `(<element>)`
/// joined by `+` at parenthesis depth zero; duplicate degrees are summed;
/// the bare literal `0` is the zero polynomial.
pub fn parse_poly(text: &str, ctx: &BuiltRing) -> Result<SkewPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(SkewPoly::zero(ctx.deriv.clone()));
    }
    // split on '+' outside parentheses
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in compact.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| perr(1, i + 1, "unbalanced ')'"))?
            }
            '+' if depth == 0 => {
                parts.push(&compact[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(perr(1, compact.len(), "unbalanced '('"));
    }
    parts.push(&compact[start..]);

    let mut coeffs: Vec<RingElement> = Vec::new();
    let ring = ctx.ring.clone();
    for part in parts {
        if part.is_empty() {
            return Err(perr(1, 1, "empty polynomial term"));
        }
        let (degree, lit_s) = if let Some(rest) = part.strip_prefix("x^") {
            let (num, rest) = rest
                .split_once("*(")
                .ok_or_else(|| perr(1, 1, format!("malformed term '{part}'")))?;
            let d = num
                .parse::<usize>()
                .map_err(|_| perr(1, 1, format!("bad exponent '{num}'")))?;
            if d > 10_000 {
                return Err(perr(1, 1, "exponent too large"));
            }
            (d, rest)
        } else if let Some(rest) = part.strip_prefix("x*(") {
            (1, rest)
        } else if let Some(rest) = part.strip_prefix('(') {
            (0, rest)
        } else {
            return Err(perr(1, 1, format!("malformed term '{part}'")));
        };
        let lit_s = lit_s
            .strip_suffix(')')
            .ok_or_else(|| perr(1, 1, format!("missing ')' in term '{part}'")))?;
        let value = ctx
            .resolve(&parse_elem_lit(lit_s, 1)?)
            .map_err(|e| match e {
                Error::ShapeError(msg) => perr(1, 1, msg),
                other => other,
            })?;
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, ring.zero());
        }
        coeffs[degree] = ring.add(&coeffs[degree], &value);
    }
    SkewPoly::from_coeffs(ctx.deriv.clone(), coeffs)
}

/// Parse an identity literal like `x1*x2 - x2*x1` or `2*x1*x2*x3 + ...`.
pub fn parse_identity(text: &str) -> Result<MultilinearIdentity> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(1, 1, "empty identity"));
    }
    // split into signed terms
    let mut terms_raw: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for c in compact.chars() {
        match c {
            '+' | '-' if !cur.is_empty() => {
                terms_raw.push((sign, std::mem::take(&mut cur)));
                sign = if c == '-' { -1 } else { 1 };
            }
            '-' if cur.is_empty() => sign = -sign,
            '+' if cur.is_empty() => {}
            _ => cur.push(c),
        }
    }
    if cur.is_empty() {
        return Err(perr(1, 1, "dangling sign in identity"));
    }
    terms_raw.push((sign, cur));

    let mut parsed: Vec<(Vec<usize>, i64)> = Vec::new();
    let mut arity = 0usize;
    for (sign, term) in &terms_raw {
        let mut coeff = *sign;
        let mut perm = Vec::new();
        for (fi, factor) in term.split('*').enumerate() {
            if let Some(var) = factor.strip_prefix('x') {
                let idx = var
                    .parse::<usize>()
                    .ok()
                    .and_then(|i| i.checked_sub(1))
                    .ok_or_else(|| perr(1, 1, format!("bad variable '{factor}'")))?;
                if idx >= 64 {
                    return Err(perr(1, 1, "variable index too large"));
                }
                perm.push(idx);
                arity = arity.max(idx + 1);
            } else if fi == 0 {
                let c = factor
                    .parse::<i64>()
                    .map_err(|_| perr(1, 1, format!("bad coefficient '{factor}'")))?;
                coeff = coeff
                    .checked_mul(c)
                    .ok_or_else(|| perr(1, 1, "coefficient out of range"))?;
            } else {
                return Err(perr(1, 1, format!("unexpected factor '{factor}'")));
            }
        }
        if perm.is_empty() {
            return Err(perr(1, 1, "identity term has no variables"));
        }
        parsed.push((perm, coeff));
    }
    MultilinearIdentity::new(arity, parsed).map_err(|e| match e {
        Error::ShapeError(msg) => perr(1, 1, msg),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn zn_with_zero_derivation() {
        let built = load_ringfile("ring.kind=zn\nring.params=4\n[derivation]\nzero", &caps())
            .unwrap();
        assert_eq!(built.ring.order(), 4);
        assert!(built.deriv.is_trivial());
    }

    #[test]
    fn truncpoly_with_formal_derivative() {
        let text = "ring.kind=truncpoly\nring.params=2,2\n[derivation]\nD(g1)=0\nD(g2)=g1";
        let built = load_ringfile(text, &caps()).unwrap();
        assert_eq!(built.ring.order(), 4);
        let t = built.ring.generator(1);
        assert_eq!(built.deriv.apply(&t), built.ring.generator(0));
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let text = "ring.kind=structure\nring.params=2,2\n[structure]\ng1*g2 = 3g9";
        let rf = parse_ringfile(text).unwrap(); // syntax is fine
        assert!(matches!(
            build_ringfile(&rf, &caps()),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn labels_resolve_in_derivations() {
        let text = "ring.kind=triangular\nring.params=2,2\n[derivation]\ninner = E12";
        let built = load_ringfile(text, &caps()).unwrap();
        assert!(!built.deriv.is_trivial());
    }

    #[test]
    fn product_ring_with_prefixed_labels() {
        let text = "ring.kind=product\nring.left=zn:2\nring.right=matrix:2,2\n\
                    [derivation]\ninner = r_E12";
        let built = load_ringfile(text, &caps()).unwrap();
        assert_eq!(built.ring.order(), 32);
        assert!(built.labels.contains_key("l_one"));
        assert!(built.labels.contains_key("r_E21"));
    }

    #[test]
    fn poly_parse_basic() {
        let built =
            load_ringfile("ring.kind=zn\nring.params=4\n[derivation]\nzero", &caps()).unwrap();
        let p = parse_poly("x^1*(2g1)", &built).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coefficient(1), built.ring.element(&[2]).unwrap());

        // duplicate degrees are summed: 2 + 2 = 0 mod 4
        let q = parse_poly("x^1*(2g1) + x^1*(2g1)", &built).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn poly_round_trip_canonical() {
        let text = "ring.kind=truncpoly\nring.params=2,2\n[derivation]\nD(g2)=g1";
        let built = load_ringfile(text, &caps()).unwrap();
        let p = parse_poly("x^2*(g2) + (g1)", &built).unwrap();
        let printed = p.to_string();
        assert_eq!(printed, "x^2*(g2) + (g1)");
        assert_eq!(parse_poly(&printed, &built).unwrap(), p);
    }

    #[test]
    fn identity_literal_commutator() {
        let f = parse_identity("x1*x2 - x2*x1").unwrap();
        assert_eq!(f.arity(), 2);
        assert_eq!(f.terms().len(), 2);
        assert!(f.has_unit_leading_coefficient());
    }

    #[test]
    fn identity_rejects_non_permutations() {
        assert!(parse_identity("x1*x1").is_err());
        assert!(parse_identity("x1*x3").is_err()); // x2 missing
    }

    #[test]
    fn parser_never_panics_on_junk() {
        for text in ["", "=", "[", "ring.kind=", "ring.kind=zn\nring.params=9999999999999999999999"] {
            let _ = parse_ringfile(text);
        }
    }
}
