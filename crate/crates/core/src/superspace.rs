//! Polynomial super vector fields on C^{2|3} with coordinates
//! (z1, z2, ε, ε1, ε2): exact graded brackets of derivations, and the
//! linear realization of the holomorphically twisted symmetry algebra —
//! nine odd directions, two translations, the surviving rotation copy
//! acting on the even coordinates, and the sl(3) R-symmetry block
//! acting on the odd ones.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::superlie::{Parity, SuperLieAlgebra};
use crate::twist::{named_family, Family, Layout4d};
use crate::{Error, ExactMatrix, Scalar};

/// Odd-monomial bitmask: bit 0 = ε, bit 1 = ε1, bit 2 = ε2.
type OddMask = u8;

const ODD_NAMES: [&str; 3] = ["ε", "ε1", "ε2"];
const SLOT_NAMES: [&str; 5] = ["∂z1", "∂z2", "∂ε", "∂ε1", "∂ε2"];

/// Coefficient slots of a vector field, in coordinate order.
pub const SLOT_Z1: usize = 0;
pub const SLOT_Z2: usize = 1;
pub const SLOT_EPS: usize = 2;
pub const SLOT_EPS1: usize = 3;
pub const SLOT_EPS2: usize = 4;

/// Sign of merging two ordered odd monomials: (−1)^{inversions}, where
/// an inversion is a factor of `b` that must move left past a greater
/// factor of `a`. `true` means negative.
fn interleave_negative(a: OddMask, b: OddMask) -> bool {
    let mut inv = 0u32;
    for j in 0..3 {
        if b & (1 << j) != 0 {
            inv += u32::from(a >> (j + 1)).count_ones();
        }
    }
    inv % 2 == 1
}

/// Polynomial in (z1, z2) and the odd variables (ε, ε1, ε2), kept in
/// normal form: odd factors sorted ε < ε1 < ε2 with sign tracking, zero
/// coefficients pruned.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<(u32, u32, OddMask), Scalar>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        SuperPolynomial::default()
    }

    pub fn one() -> Self {
        SuperPolynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        SuperPolynomial::monomial(0, 0, 0, c)
    }

    /// The coordinate function z_j for j ∈ {1, 2}.
    pub fn z(j: usize) -> Self {
        assert!(j == 1 || j == 2, "z index must be 1 or 2");
        let exps = if j == 1 { (1, 0) } else { (0, 1) };
        SuperPolynomial::monomial(exps.0, exps.1, 0, Scalar::one())
    }

    /// The odd coordinate: index 0 is ε, 1 is ε1, 2 is ε2.
    pub fn eps(i: usize) -> Self {
        assert!(i < 3, "odd index must be 0, 1 or 2");
        SuperPolynomial::monomial(0, 0, 1 << i, Scalar::one())
    }

    pub fn monomial(z1: u32, z2: u32, mask: OddMask, c: Scalar) -> Self {
        assert!(mask < 8, "odd mask uses bits 0..3");
        let mut p = SuperPolynomial::default();
        if !c.is_zero() {
            p.terms.insert((z1, z2, mask), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0, 0))
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, OddMask), &Scalar)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32, OddMask), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn plus(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &SuperPolynomial) -> SuperPolynomial {
        self.plus(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> SuperPolynomial {
        let mut out = SuperPolynomial::default();
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * c);
        }
        out
    }

    /// Product of polynomials; repeated odd factors vanish and odd
    /// reordering contributes the interleave sign.
    pub fn times(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::default();
        for ((a1, a2, am), ac) in &self.terms {
            for ((b1, b2, bm), bc) in &other.terms {
                if am & bm != 0 {
                    continue;
                }
                let mut c = ac * bc;
                if interleave_negative(*am, *bm) {
                    c = -c;
                }
                out.insert_add((a1 + b1, a2 + b2, am | bm), c);
            }
        }
        out
    }

    /// ∂/∂z_j.
    pub fn d_z(&self, j: usize) -> SuperPolynomial {
        assert!(j == 1 || j == 2, "z index must be 1 or 2");
        let mut out = SuperPolynomial::default();
        for ((z1, z2, m), c) in &self.terms {
            let e = if j == 1 { *z1 } else { *z2 };
            if e == 0 {
                continue;
            }
            let key = if j == 1 {
                (z1 - 1, *z2, *m)
            } else {
                (*z1, z2 - 1, *m)
            };
            out.insert_add(key, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Left odd derivative ∂/∂ε_i: the sign counts the odd factors it
    /// moves past before reaching ε_i.
    pub fn d_eps(&self, i: usize) -> SuperPolynomial {
        assert!(i < 3, "odd index must be 0, 1 or 2");
        let bit = 1u8 << i;
        let mut out = SuperPolynomial::default();
        for ((z1, z2, m), c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let mut v = c.clone();
            if below % 2 == 1 {
                v = -v;
            }
            out.insert_add((*z1, *z2, m & !bit), v);
        }
        out
    }

    /// Parity of a homogeneous polynomial: `None` for zero, an error
    /// when monomials of both parities are present.
    pub fn parity(&self) -> Result<Option<Parity>, Error> {
        let mut seen: Option<Parity> = None;
        for (z1z2m, _) in &self.terms {
            let p = if z1z2m.2.count_ones() % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            match seen {
                None => seen = Some(p),
                Some(q) if q == p => {}
                Some(_) => {
                    return Err(Error::Structure(
                        "polynomial mixes even and odd monomials".into(),
                    ))
                }
            }
        }
        Ok(seen)
    }
}

fn monomial_string(z1: u32, z2: u32, mask: OddMask) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (sym, e) in [("z1", z1), ("z2", z2)] {
        match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            _ => parts.push(format!("{sym}^{e}")),
        }
    }
    for i in 0..3 {
        if mask & (1 << i) != 0 {
            parts.push(ODD_NAMES[i].to_string());
        }
    }
    parts.join("*")
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((z1, z2, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = monomial_string(*z1, *z2, *m);
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Derivation of the super-polynomial ring, stored by its coefficient
/// polynomials on (∂z1, ∂z2, ∂ε, ∂ε1, ∂ε2).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SuperVectorField {
    pub coeffs: [SuperPolynomial; 5],
}

impl SuperVectorField {
    pub fn zero() -> Self {
        SuperVectorField::default()
    }

    /// The field `poly · ∂_slot`.
    pub fn term(slot: usize, poly: SuperPolynomial) -> Self {
        assert!(slot < 5, "slot must index (∂z1, ∂z2, ∂ε, ∂ε1, ∂ε2)");
        let mut v = SuperVectorField::default();
        v.coeffs[slot] = poly;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPolynomial::is_zero)
    }

    pub fn plus(&self, other: &SuperVectorField) -> SuperVectorField {
        let mut out = self.clone();
        for s in 0..5 {
            out.coeffs[s] = out.coeffs[s].plus(&other.coeffs[s]);
        }
        out
    }

    pub fn minus(&self, other: &SuperVectorField) -> SuperVectorField {
        self.plus(&other.scaled(&-Scalar::one()))
    }

    pub fn scaled(&self, c: &Scalar) -> SuperVectorField {
        let mut out = SuperVectorField::default();
        for s in 0..5 {
            out.coeffs[s] = self.coeffs[s].scaled(c);
        }
        out
    }

    /// Parity of a homogeneous field (coefficient parity combined with
    /// the parity of the ∂-slot): `None` for zero, an error when mixed.
    pub fn parity(&self) -> Result<Option<Parity>, Error> {
        let mut seen: Option<Parity> = None;
        for (s, poly) in self.coeffs.iter().enumerate() {
            let slot_odd = s >= 2;
            for ((_, _, m), _) in poly.terms() {
                let odd = (m.count_ones() % 2 == 1) != slot_odd;
                let p = if odd { Parity::Odd } else { Parity::Even };
                match seen {
                    None => seen = Some(p),
                    Some(q) if q == p => {}
                    Some(_) => {
                        return Err(Error::Structure(
                            "vector field is not parity-homogeneous".into(),
                        ))
                    }
                }
            }
        }
        Ok(seen)
    }

    /// The derivation applied to a polynomial: Σ coeff_s · ∂_s(f).
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (s, poly) in self.coeffs.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let df = match s {
                0 => f.d_z(1),
                1 => f.d_z(2),
                _ => f.d_eps(s - 2),
            };
            out = out.plus(&poly.times(&df));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (s, poly) in self.coeffs.iter().enumerate() {
            if !poly.is_zero() {
                map.insert(SLOT_NAMES[s].to_string(), Value::String(poly.to_string()));
            }
        }
        Value::Object(map)
    }
}

impl fmt::Display for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, poly) in self.coeffs.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let sym = SLOT_NAMES[s];
            if poly.terms.len() == 1 {
                let ((z1, z2, m), c) = poly.terms.iter().next().unwrap();
                let mono = monomial_string(*z1, *z2, *m);
                let mut parts = Vec::new();
                if !c.is_one() {
                    parts.push(format!("({c})"));
                }
                if !mono.is_empty() {
                    parts.push(mono);
                }
                parts.push(sym.to_string());
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "({poly})*{sym}")?;
            }
        }
        Ok(())
    }
}

/// Graded commutator of derivations, [x, y] = x∘y − (−1)^{|x||y|} y∘x,
/// computed on the coordinate functions. Errors on inhomogeneous input.
pub fn vf_bracket(
    x: &SuperVectorField,
    y: &SuperVectorField,
) -> Result<SuperVectorField, Error> {
    let px = x.parity()?;
    let py = y.parity()?;
    let (px, py) = match (px, py) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(SuperVectorField::zero()),
    };
    let both_odd = px == Parity::Odd && py == Parity::Odd;
    let mut out = SuperVectorField::zero();
    for s in 0..5 {
        let t = x.apply(&y.coeffs[s]);
        let u = y.apply(&x.coeffs[s]);
        out.coeffs[s] = if both_odd { t.plus(&u) } else { t.minus(&u) };
    }
    Ok(out)
}

/// The generators the realization covers, each with its vector in full
/// algebra coordinates and its vector field: the nine odd directions
/// away from the e1 column, the two surviving translations, the minus
/// rotation copy on (z1, z2), and — when an R-symmetry is present —
/// the sl(3) block on (e2, f1, f2) acting on (ε, ε1, ε2).
fn realized_span(
    alg: &SuperLieAlgebra,
    lay: &Layout4d,
) -> Result<Vec<(String, Vec<Scalar>, SuperVectorField)>, Error> {
    if lay.k != 4 {
        return Err(Error::Unsupported(
            "the superspace realization needs the four-flavour supercharge space".into(),
        ));
    }
    let unit = |name: &str| -> Result<Vec<Scalar>, Error> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| Error::Structure(format!("missing generator `{name}`")))?;
        let mut v = vec![Scalar::zero(); alg.dim()];
        v[i] = Scalar::one();
        Ok(v)
    };
    let p_eps = |i: usize| SuperPolynomial::eps(i);
    let m_one = -Scalar::one();

    let mut span: Vec<(String, Vec<Scalar>, SuperVectorField)> = Vec::new();

    // odd generators, with the printed (−1)^{i+1} signs on the f's
    let odd_table: [(&str, usize, SuperPolynomial); 9] = [
        ("α2⊗e2", SLOT_EPS, SuperPolynomial::one()),
        ("α2⊗f1", SLOT_EPS1, SuperPolynomial::one()),
        ("α2⊗f2", SLOT_EPS2, SuperPolynomial::constant(m_one.clone())),
        ("α1∨⊗e2*", SLOT_Z1, p_eps(0)),
        ("α1∨⊗f1*", SLOT_Z1, p_eps(1)),
        ("α1∨⊗f2*", SLOT_Z1, p_eps(2).scaled(&m_one)),
        ("α2∨⊗e2*", SLOT_Z2, p_eps(0)),
        ("α2∨⊗f1*", SLOT_Z2, p_eps(1)),
        ("α2∨⊗f2*", SLOT_Z2, p_eps(2).scaled(&m_one)),
    ];
    for (name, slot, poly) in odd_table {
        span.push((name.to_string(), unit(name)?, SuperVectorField::term(slot, poly)));
    }

    for (name, slot) in [("∂z1", SLOT_Z1), ("∂z2", SLOT_Z2)] {
        span.push((
            name.to_string(),
            unit(name)?,
            SuperVectorField::term(slot, SuperPolynomial::one()),
        ));
    }

    // the rotation copy fixing the holomorphic point acts on (z1, z2)
    // by the fundamental, as the field −Σ X_{lj} z_j ∂z_l
    let z = SuperPolynomial::z;
    let rot_table: [(&str, SuperVectorField); 3] = [
        (
            "H-",
            SuperVectorField::term(SLOT_Z1, z(1).scaled(&m_one))
                .plus(&SuperVectorField::term(SLOT_Z2, z(2))),
        ),
        ("E-", SuperVectorField::term(SLOT_Z1, z(2).scaled(&m_one))),
        ("F-", SuperVectorField::term(SLOT_Z2, z(1).scaled(&m_one))),
    ];
    for (name, field) in rot_table {
        span.push((name.to_string(), unit(name)?, field));
    }

    if !lay.rsym.is_empty() {
        // η-coordinates (ε, ε1, ε2) carry (e2, f1, f2) with signs
        // t = (1, 1, −1); a Levi element D realizes as −Σ (tDt)_{lm} η_m ∂η_l
        let t = [1i64, 1, -1];
        for u in 0..3usize {
            for v in 0..3usize {
                if u == v {
                    continue;
                }
                let name = format!("Y{}{}", u + 2, v + 2);
                let c = Scalar::from_int(-t[u] * t[v]);
                let field = SuperVectorField::term(SLOT_EPS + u, p_eps(v).scaled(&c));
                span.push((name.clone(), unit(&name)?, field));
            }
        }
        // traceless diagonal part: η_u ∂η_u − η_{u+1} ∂η_{u+1}, negated
        for u in 0..2usize {
            let name = format!("Y{}{}-Y{}{}", u + 2, u + 2, u + 3, u + 3);
            let vec = match alg.index_of(&name) {
                Some(i) => {
                    let mut v = vec![Scalar::zero(); alg.dim()];
                    v[i] = Scalar::one();
                    v
                }
                None => {
                    // diagonal units are separate generators here
                    let a = unit(&format!("Y{}{}", u + 2, u + 2))?;
                    let b = unit(&format!("Y{}{}", u + 3, u + 3))?;
                    a.iter().zip(&b).map(|(x, y)| x.clone() - y.clone()).collect()
                }
            };
            let field = SuperVectorField::term(SLOT_EPS + u, p_eps(u).scaled(&m_one))
                .plus(&SuperVectorField::term(SLOT_EPS + u + 1, p_eps(u + 1)));
            span.push((name, vec, field));
        }
    }
    Ok(span)
}

fn span_matrix(alg: &SuperLieAlgebra, span: &[(String, Vec<Scalar>, SuperVectorField)]) -> ExactMatrix {
    ExactMatrix::from_fn(alg.dim(), span.len(), |r, c| span[c].1[r].clone())
}

fn combine(
    span: &[(String, Vec<Scalar>, SuperVectorField)],
    coords: &[Scalar],
) -> SuperVectorField {
    let mut out = SuperVectorField::zero();
    for (c, (_, _, field)) in coords.iter().zip(span) {
        if !c.is_zero() {
            out = out.plus(&field.scaled(c));
        }
    }
    out
}

/// The vector field of an element of the twisted algebra, extended
/// linearly from the displayed generator assignments. Errors when the
/// element has a component outside the realized span — in particular
/// the nilradical directions e_i ↦ e1, which have no assigned fields.
pub fn realize(alg: &SuperLieAlgebra, v: &[Scalar]) -> Result<SuperVectorField, Error> {
    let lay = Layout4d::detect(alg)?;
    if v.len() != alg.dim() {
        return Err(Error::Dimension(format!(
            "element has {} coordinates, algebra dimension is {}",
            v.len(),
            alg.dim()
        )));
    }
    let span = realized_span(alg, &lay)?;
    let coords = span_matrix(alg, &span).solve(v)?;
    Ok(combine(&span, &coords))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub x: String,
    pub y: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub checked: usize,
    pub pairs: Vec<PairCheck>,
    pub pass: bool,
}

/// Verifies the realization is a homomorphism: for every unordered pair
/// of realized generators, the graded bracket of the fields equals the
/// field of the algebra bracket. The report lists every pair.
pub fn check_representation(alg: &SuperLieAlgebra) -> Result<RepresentationReport, Error> {
    let lay = Layout4d::detect(alg)?;
    let span = realized_span(alg, &lay)?;
    let s_mat = span_matrix(alg, &span);
    let n = span.len();

    let mut pairs_idx = Vec::new();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs_idx.push((i, j));
            brackets.push(alg.bracket_dense(&span[i].1, &span[j].1));
        }
    }
    let rhs = ExactMatrix::from_fn(alg.dim(), brackets.len(), |r, c| brackets[c][r].clone());
    let wholesale = s_mat.solve_columns(&rhs).ok();

    let mut pairs = Vec::with_capacity(pairs_idx.len());
    let mut pass = true;
    for (p, &(i, j)) in pairs_idx.iter().enumerate() {
        let lhs = vf_bracket(&span[i].2, &span[j].2)?;
        let expected = match &wholesale {
            Some(x) => Some(combine(&span, &x.col(p))),
            None => s_mat.solve(&brackets[p]).ok().map(|c| combine(&span, &c)),
        };
        let ok = expected.is_some_and(|e| e == lhs);
        pass &= ok;
        pairs.push(PairCheck {
            x: span[i].0.clone(),
            y: span[j].0.clone(),
            pass: ok,
        });
    }
    Ok(RepresentationReport {
        checked: pairs.len(),
        pairs,
        pass,
    })
}

/// The field of a named square-zero family member, on cohomology: the
/// holomorphic point itself realizes as zero, the (μ:ν) family as
/// μ(ε1∂z1 + ε2∂z2) + ν∂ε, and the interpolating family as
/// ∂ε − λ ε2∂z2 (its λ → 0 limit is the ν-direction field ∂ε).
pub fn family_vector_field(family: &Family) -> Result<SuperVectorField, Error> {
    let kw = |mu: &Scalar, nu: &Scalar| -> Result<SuperVectorField, Error> {
        if mu.is_zero() && nu.is_zero() {
            return Err(Error::Structure(
                "the (μ:ν) family has no member at μ = ν = 0".into(),
            ));
        }
        let mut f = SuperVectorField::term(SLOT_Z1, SuperPolynomial::eps(1).scaled(mu))
            .plus(&SuperVectorField::term(
                SLOT_Z2,
                SuperPolynomial::eps(2).scaled(mu),
            ));
        f = f.plus(&SuperVectorField::term(
            SLOT_EPS,
            SuperPolynomial::constant(nu.clone()),
        ));
        Ok(f)
    };
    let ht_tail = |lambda: &Scalar| {
        SuperVectorField::term(SLOT_Z2, SuperPolynomial::eps(2).scaled(&-lambda.clone()))
    };
    match family {
        Family::Hol => Ok(SuperVectorField::zero()),
        Family::Kw { mu, nu } => kw(mu, nu),
        Family::A => kw(&Scalar::zero(), &Scalar::one()),
        Family::B => kw(&Scalar::one(), &Scalar::zero()),
        Family::Ht { lambda } => Ok(SuperVectorField::term(SLOT_EPS, SuperPolynomial::one())
            .plus(&ht_tail(lambda))),
        Family::HtPrime { lambda } => Ok(ht_tail(lambda)),
    }
}

/// The realized field of an element's cohomology class: the exact
/// α1⊗e1 component is dropped before realizing.
pub fn realize_class(alg: &SuperLieAlgebra, v: &[Scalar]) -> Result<SuperVectorField, Error> {
    let mut w = v.to_vec();
    if let Some(i) = alg.index_of("α1⊗e1") {
        w[i] = Scalar::zero();
    }
    realize(alg, &w)
}

/// Convenience: the realized class field of a named family member.
pub fn named_family_field(
    alg: &SuperLieAlgebra,
    family: &Family,
) -> Result<SuperVectorField, Error> {
    let q = named_family(alg, family)?;
    realize_class(alg, &q.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlie::{build_susy_4d, RSymmetry};

    fn p(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn eps_field(slot: usize, i: usize) -> SuperVectorField {
        SuperVectorField::term(slot, SuperPolynomial::eps(i))
    }

    #[test]
    fn odd_monomials_square_to_zero_and_anticommute() {
        let e = SuperPolynomial::eps(0);
        let e1 = SuperPolynomial::eps(1);
        let e2 = SuperPolynomial::eps(2);
        assert!(e.times(&e).is_zero());
        assert_eq!(e1.times(&e), e.times(&e1).scaled(&-Scalar::one()));
        let ee1 = e.times(&e1);
        assert_eq!(
            ee1.times(&e2),
            SuperPolynomial::monomial(0, 0, 0b111, Scalar::one())
        );
        // moving ε past two greater factors costs two signs
        let e1e2 = e1.times(&e2);
        assert_eq!(
            e1e2.times(&e),
            SuperPolynomial::monomial(0, 0, 0b111, Scalar::one())
        );
    }

    #[test]
    fn odd_derivatives_track_position_signs() {
        let m = SuperPolynomial::monomial(0, 0, 0b111, Scalar::one());
        assert_eq!(m.d_eps(0), SuperPolynomial::monomial(0, 0, 0b110, Scalar::one()));
        assert_eq!(m.d_eps(1), SuperPolynomial::monomial(0, 0, 0b101, -Scalar::one()));
        assert_eq!(m.d_eps(2), SuperPolynomial::monomial(0, 0, 0b011, Scalar::one()));
        let q = SuperPolynomial::monomial(2, 1, 0, p("3"));
        assert_eq!(q.d_z(1), SuperPolynomial::monomial(1, 1, 0, p("6")));
        assert_eq!(q.d_z(2), SuperPolynomial::monomial(2, 0, 0, p("3")));
    }

    #[test]
    fn bracket_examples() {
        let d_eps = SuperVectorField::term(SLOT_EPS, SuperPolynomial::one());
        let e_dz1 = eps_field(SLOT_Z1, 0);
        let dz1 = SuperVectorField::term(SLOT_Z1, SuperPolynomial::one());
        assert_eq!(vf_bracket(&d_eps, &e_dz1).unwrap(), dz1);

        let d_eps1 = SuperVectorField::term(SLOT_EPS1, SuperPolynomial::one());
        let e1_dz1 = eps_field(SLOT_Z1, 1);
        assert_eq!(vf_bracket(&d_eps1, &e1_dz1).unwrap(), dz1);

        let e1_dz1 = eps_field(SLOT_Z1, 1);
        let e2_dz2 = eps_field(SLOT_Z2, 2);
        assert!(vf_bracket(&e1_dz1, &e2_dz2).unwrap().is_zero());

        assert!(vf_bracket(&d_eps, &d_eps).unwrap().is_zero());

        // a non-constant even field against an odd one
        let e_de = SuperVectorField::term(SLOT_EPS, SuperPolynomial::eps(0));
        assert_eq!(vf_bracket(&d_eps, &e_de).unwrap(), d_eps);
    }

    #[test]
    fn inhomogeneous_fields_are_rejected() {
        let mixed = SuperVectorField::term(SLOT_Z1, SuperPolynomial::one())
            .plus(&SuperVectorField::term(SLOT_EPS, SuperPolynomial::one()));
        assert!(mixed.parity().is_err());
        let d_eps = SuperVectorField::term(SLOT_EPS, SuperPolynomial::one());
        assert!(vf_bracket(&mixed, &d_eps).is_err());
    }

    #[test]
    fn realize_matches_the_displayed_assignments() {
        let alg = build_susy_4d(4, RSymmetry::SlW).unwrap();
        let unit = |n: &str| {
            let mut v = vec![Scalar::zero(); alg.dim()];
            v[alg.index_of(n).unwrap()] = Scalar::one();
            v
        };
        let got = realize(&alg, &unit("α2⊗f1")).unwrap();
        assert_eq!(got, SuperVectorField::term(SLOT_EPS1, SuperPolynomial::one()));
        let got = realize(&alg, &unit("α2⊗f2")).unwrap();
        assert_eq!(
            got,
            SuperVectorField::term(SLOT_EPS2, SuperPolynomial::constant(-Scalar::one()))
        );
        let got = realize(&alg, &unit("α1∨⊗e2*")).unwrap();
        assert_eq!(got, eps_field(SLOT_Z1, 0));
        let got = realize(&alg, &unit("α2∨⊗f2*")).unwrap();
        assert_eq!(got, eps_field(SLOT_Z2, 2).scaled(&-Scalar::one()));
        let got = realize(&alg, &unit("H-")).unwrap();
        let expected = SuperVectorField::term(SLOT_Z1, SuperPolynomial::z(1).scaled(&-Scalar::one()))
            .plus(&SuperVectorField::term(SLOT_Z2, SuperPolynomial::z(2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn realize_rejects_unrealized_directions() {
        let alg = build_susy_4d(4, RSymmetry::SlW).unwrap();
        for name in ["Y12", "Y13", "Y14", "E+", "H+", "α1⊗e1", "α2⊗e1", "∂z̄1"] {
            let mut v = vec![Scalar::zero(); alg.dim()];
            v[alg.index_of(name).unwrap()] = Scalar::one();
            assert!(
                matches!(realize(&alg, &v), Err(Error::NotInSpan)),
                "{name} should not be realizable"
            );
        }
    }

    #[test]
    fn family_fields_match_their_formulas() {
        let b = family_vector_field(&Family::B).unwrap();
        let expected = eps_field(SLOT_Z1, 1).plus(&eps_field(SLOT_Z2, 2));
        assert_eq!(b, expected);
        assert_eq!(b.to_string(), "ε1*∂z1 + ε2*∂z2");

        let a = family_vector_field(&Family::A).unwrap();
        assert_eq!(a, SuperVectorField::term(SLOT_EPS, SuperPolynomial::one()));
        assert_eq!(a.to_string(), "∂ε");

        assert!(family_vector_field(&Family::Kw {
            mu: Scalar::zero(),
            nu: Scalar::zero()
        })
        .is_err());

        let ht = family_vector_field(&Family::Ht { lambda: p("3") }).unwrap();
        let expected = SuperVectorField::term(SLOT_EPS, SuperPolynomial::one())
            .plus(&eps_field(SLOT_Z2, 2).scaled(&p("-3")));
        assert_eq!(ht, expected);
        assert_eq!(ht.to_string(), "(-3)*ε2*∂z2 + ∂ε");
        assert!(vf_bracket(&ht, &ht).unwrap().is_zero());
    }
}
