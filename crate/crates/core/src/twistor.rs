//! Line-bundle cohomology on P¹, Berezinian degrees of super projective
//! spaces, the twistor-space pseudo-Hermitian norm and Penrose fibration,
//! and the fiberwise field content of the linearized correspondence.
//!
//! Conventions. P¹ = P(S+) carries homogeneous coordinates (Z2, Z3);
//! sections of O(k) are identified with homogeneous degree-k expressions in
//! (Z2, Z3), written as Z2^k·g(w) in the affine coordinate w = Z3/Z2. The
//! antichiral spinor space S− is two-dimensional with symplectic basis
//! (β1, β2), ε(β1, β2) = 1, and H⁰(O(1) ⊗ S−) ≅ V carries the quadratic
//! form q(e) = e₁∧e₂. Field-content tables list so(4;C)-irreps by the
//! labels C, V ≅ S+⊗S−, Sym²S±, S±, S = S+⊕S−; only multiplicities are
//! computed, so no trivialization choices enter the tables.

use crate::clifford::{build_gamma, so_action};
use crate::matrix::ExactMatrix;
use crate::par;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::superlie::Parity;
use crate::Error;
use num::rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

// ---------------------------------------------------------------------------
// Line bundles on P¹
// ---------------------------------------------------------------------------

/// Cohomology dimensions (h⁰, h¹) of O(k) on P¹.
pub fn h_dims(k: i64) -> (usize, usize) {
    let h0 = (k + 1).max(0) as usize;
    let h1 = (-k - 1).max(0) as usize;
    (h0, h1)
}

/// Euler characteristic h⁰ − h¹ = k + 1 of O(k) on P¹.
pub fn euler_characteristic(k: i64) -> i64 {
    k + 1
}

/// Degree of the Berezinian line bundle of CP^{n|m}: the bundle is
/// O(m − n − 1), so the space is super Calabi–Yau exactly when m = n + 1.
pub fn berezinian_cpnm(n: usize, m: usize) -> i64 {
    assert!(n >= 1, "berezinian_cpnm: base projective space needs n ≥ 1");
    m as i64 - n as i64 - 1
}

/// True when the Berezinian of CP^{n|m} is trivial.
pub fn is_super_calabi_yau(n: usize, m: usize) -> bool {
    berezinian_cpnm(n, m) == 0
}

// ---------------------------------------------------------------------------
// Twistor norm and signature
// ---------------------------------------------------------------------------

/// Gram matrix of the pseudo-Hermitian form on T = S− ⊕ S+ pairing the two
/// summands: ⟨v, z⟩ = v̄₀z₂ + v̄₁z₃ + v̄₂z₀ + v̄₃z₁.
pub fn twistor_gram() -> ExactMatrix {
    ExactMatrix::from_int_rows(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
    ])
}

/// Value of the pseudo-Hermitian twistor form on a single vector,
/// Σ conj(z_a)·H[a,b]·z_b. Always real; both summands S− ⊕ 0 and 0 ⊕ S+
/// are isotropic.
pub fn twistor_norm(z: &[Scalar]) -> Scalar {
    assert_eq!(z.len(), 4, "twistor_norm: expected 4 coordinates");
    let h = twistor_gram();
    let mut acc = Scalar::zero();
    for a in 0..4 {
        for b in 0..4 {
            if h.get(a, b).is_zero() {
                continue;
            }
            acc += &(&(&z[a].conj() * h.get(a, b)) * &z[b]);
        }
    }
    acc
}

/// Signature of a real symmetric matrix by exact congruence
/// diagonalization: returns (positive, negative) inertia counts.
fn real_symmetric_signature(g: &ExactMatrix) -> (usize, usize) {
    assert_eq!(g.rows, g.cols, "signature: square matrix required");
    let n = g.rows;
    let zero_re = BigRational::from_integer(0.into());
    let mut m = g.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    loop {
        let pivot = active.iter().copied().find(|&p| !m.get(p, p).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All active diagonal entries vanish: if some off-diagonal
                // entry survives, e_a ← e_a + e_b makes a nonzero diagonal
                // (2·m[a][b]); otherwise the remaining block is zero.
                let off = active
                    .iter()
                    .flat_map(|&a| active.iter().map(move |&b| (a, b)))
                    .find(|&(a, b)| a != b && !m.get(a, b).is_zero());
                match off {
                    None => break,
                    Some((a, b)) => {
                        for j in 0..n {
                            let t = m.get(a, j).clone() + m.get(b, j).clone();
                            m.set(a, j, t);
                        }
                        for i in 0..n {
                            let t = m.get(i, a).clone() + m.get(i, b).clone();
                            m.set(i, a, t);
                        }
                        continue;
                    }
                }
            }
        };
        let d = m.get(p, p).clone();
        if d.re > zero_re {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&q| q != p);
        for &q in &active {
            let c = m.get(p, q).clone() / d.clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = m.get(q, j).clone() - (&c * m.get(p, j));
                m.set(q, j, t);
            }
            for i in 0..n {
                let t = m.get(i, q).clone() - (&c * m.get(i, p));
                m.set(i, q, t);
            }
        }
    }
    (pos, neg)
}

/// Signature of a Hermitian matrix via the Gram matrix of its real form on
/// basis (e_a, i·e_a): the real signature is exactly doubled.
fn hermitian_signature(h: &ExactMatrix) -> Result<(usize, usize), Error> {
    if h.dagger() != *h {
        return Err(Error::NotSymmetric);
    }
    let n = h.rows;
    let g = ExactMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (a, ai) = (i % n, i >= n);
        let (b, bi) = (j % n, j >= n);
        let e = h.get(a, b);
        let part = match (ai, bi) {
            (false, false) | (true, true) => e.re.clone(),
            (false, true) => -e.im.clone(),
            (true, false) => e.im.clone(),
        };
        Scalar::new(part, BigRational::from_integer(0.into()))
    });
    let (p, q) = real_symmetric_signature(&g);
    debug_assert!(p % 2 == 0 && q % 2 == 0);
    Ok((p / 2, q / 2))
}

/// Signature of the twistor form, computed from the Gram matrix of its
/// real form.
pub fn signature_check() -> (usize, usize) {
    hermitian_signature(&twistor_gram()).expect("twistor Gram matrix is Hermitian")
}

// ---------------------------------------------------------------------------
// Quaternions and the Penrose fibration
// ---------------------------------------------------------------------------

/// Quaternion over Q(i), stored as a + b·j with the twist rule j·w = w̄·j,
/// so (a + bj)(c + dj) = (ac − b·conj(d)) + (ad + b·conj(c))·j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quaternion {
    pub a: Scalar,
    pub b: Scalar,
}

impl Quaternion {
    pub fn zero() -> Self {
        Quaternion {
            a: Scalar::zero(),
            b: Scalar::zero(),
        }
    }

    pub fn one() -> Self {
        Quaternion {
            a: Scalar::one(),
            b: Scalar::zero(),
        }
    }

    pub fn from_complex(a: Scalar) -> Self {
        Quaternion {
            a,
            b: Scalar::zero(),
        }
    }

    pub fn j() -> Self {
        Quaternion {
            a: Scalar::zero(),
            b: Scalar::one(),
        }
    }

    /// w₀ + j·w₁ in stored form: j·w₁ = conj(w₁)·j.
    pub fn from_left_j_pair(w0: &Scalar, w1: &Scalar) -> Self {
        Quaternion {
            a: w0.clone(),
            b: w1.conj(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn mul(&self, rhs: &Quaternion) -> Quaternion {
        let a = (&self.a * &rhs.a).clone() - (&self.b * &rhs.b.conj()).clone();
        let b = (&self.a * &rhs.b).clone() + (&self.b * &rhs.a.conj()).clone();
        Quaternion { a, b }
    }

    pub fn plus(&self, rhs: &Quaternion) -> Quaternion {
        Quaternion {
            a: self.a.clone() + &rhs.a,
            b: self.b.clone() + &rhs.b,
        }
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion {
            a: self.a.conj(),
            b: -self.b.clone(),
        }
    }

    /// |q|² = |a|² + |b|², a real scalar.
    pub fn norm_sq(&self) -> Scalar {
        Scalar::new(
            self.a.norm_sq() + self.b.norm_sq(),
            BigRational::from_integer(0.into()),
        )
    }

    pub fn inverse(&self) -> Result<Quaternion, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        let c = self.conj();
        Ok(Quaternion {
            a: c.a / n.clone(),
            b: c.b / n,
        })
    }
}

impl std::fmt::Display for Quaternion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})j", self.b)
        } else {
            write!(f, "({}) + ({})j", self.a, self.b)
        }
    }
}

/// A point of HP¹ in homogeneous coordinates (q1 : q2), with equivalence
/// under simultaneous *right* multiplication by a nonzero quaternion.
#[derive(Clone, Debug)]
pub struct Hp1Point {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

impl Hp1Point {
    /// The point at infinity is (1 : 0).
    pub fn is_infinity(&self) -> bool {
        self.q2.is_zero()
    }

    /// Right-scaling invariance: (q1·λ : q2·λ) ∼ (q1 : q2), detected via
    /// the left quotient q1·q2⁻¹ (or q2 = 0 on both sides).
    pub fn equivalent(&self, other: &Hp1Point) -> bool {
        match (self.q2.is_zero(), other.q2.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                let a = self.q1.mul(&self.q2.inverse().expect("nonzero"));
                let b = other.q1.mul(&other.q2.inverse().expect("nonzero"));
                a == b
            }
        }
    }
}

/// The Penrose fibration (Z0:Z1:Z2:Z3) ↦ (Z0 + jZ1 : Z2 + jZ3) ∈ HP¹.
/// Errors on the zero quadruple. Points off the line {Z2 = Z3 = 0} land in
/// the affine chart complement of the point at infinity (1 : 0).
pub fn penrose_map(z: &[Scalar]) -> Result<Hp1Point, Error> {
    assert_eq!(z.len(), 4, "penrose_map: expected 4 coordinates");
    if z.iter().all(|c| c.is_zero()) {
        return Err(Error::Unsupported(
            "the zero quadruple is not a projective point".into(),
        ));
    }
    Ok(Hp1Point {
        q1: Quaternion::from_left_j_pair(&z[0], &z[1]),
        q2: Quaternion::from_left_j_pair(&z[2], &z[3]),
    })
}

/// The holomorphic projection (Z0:Z1:Z2:Z3) ↦ (Z2:Z3) ∈ P(S+), defined away
/// from the line {Z2 = Z3 = 0}.
pub fn twistor_projection(z: &[Scalar]) -> Result<(Scalar, Scalar), Error> {
    assert_eq!(z.len(), 4, "twistor_projection: expected 4 coordinates");
    if z[2].is_zero() && z[3].is_zero() {
        return Err(Error::Unsupported(
            "projection undefined on the line Z2 = Z3 = 0".into(),
        ));
    }
    Ok((z[2].clone(), z[3].clone()))
}

// ---------------------------------------------------------------------------
// The Λ-decomposition of Sym(ΠO(−1)⁴)
// ---------------------------------------------------------------------------

/// One summand O(degree), with a symbolic auxiliary factor carrying its
/// multiplicity, its cohomological degree, and its parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineBundleTerm {
    pub degree: i64,
    pub aux_rep: String,
    pub multiplicity: usize,
    pub cohomological_degree: i64,
    pub parity: Parity,
}

impl LineBundleTerm {
    pub fn h_dims(&self) -> (usize, usize) {
        h_dims(self.degree)
    }
}

fn binomial4(i: usize) -> usize {
    [1, 4, 6, 4, 1][i]
}

/// Sym^i(ΠO(−1)⁴) ≅ Λ^i(O(−1)⁴) = O(−i) ⊗ Λ^i(W*): one term of degree −i
/// with multiplicity C(4,i) and parity i mod 2. Errors for i > 4.
pub fn lambda_decompose(i: usize) -> Result<Vec<LineBundleTerm>, Error> {
    if i > 4 {
        return Err(Error::Unsupported(format!(
            "Λ^{i} of a rank-4 bundle vanishes; expected 0 ≤ i ≤ 4"
        )));
    }
    Ok(vec![LineBundleTerm {
        degree: -(i as i64),
        aux_rep: format!("Λ^{i}(W*)"),
        multiplicity: binomial4(i),
        cohomological_degree: 0,
        parity: if i % 2 == 0 { Parity::Even } else { Parity::Odd },
    }])
}

// ---------------------------------------------------------------------------
// Field content of the pushforward
// ---------------------------------------------------------------------------

/// so(4;C)-irrep labels used in field-content tables. V ≅ S+⊗S− and
/// S = S+⊕S− are kept unexpanded, matching the displayed direct sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum IrrepLabel {
    C,
    V,
    Sym2SPlus,
    Sym2SMinus,
    SPlus,
    SMinus,
    S,
}

impl IrrepLabel {
    pub fn dim(self) -> usize {
        match self {
            IrrepLabel::C => 1,
            IrrepLabel::V => 4,
            IrrepLabel::Sym2SPlus | IrrepLabel::Sym2SMinus => 3,
            IrrepLabel::SPlus | IrrepLabel::SMinus => 2,
            IrrepLabel::S => 4,
        }
    }
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IrrepLabel::C => "C",
            IrrepLabel::V => "V",
            IrrepLabel::Sym2SPlus => "Sym²S+",
            IrrepLabel::Sym2SMinus => "Sym²S-",
            IrrepLabel::SPlus => "S+",
            IrrepLabel::SMinus => "S-",
            IrrepLabel::S => "S",
        };
        write!(f, "{s}")
    }
}

/// One irrep at one cohomological degree, with its copy count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContentEntry {
    pub label: IrrepLabel,
    pub degree: usize,
    pub multiplicity: usize,
}

/// Field content of one of the three Serre-dual groups of line-bundle
/// summands, as a canonically sorted list of (irrep, degree, multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldContentTable {
    /// The O(k) degrees assembled into this group.
    pub k_values: Vec<i64>,
    /// Copy count of the whole group inside Λ(O(−1)⁴).
    pub multiplicity: usize,
    pub entries: Vec<ContentEntry>,
}

impl FieldContentTable {
    /// Total dimension Σ dim(label)·multiplicity over all entries.
    pub fn total_dimension(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.label.dim() * e.multiplicity)
            .sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k_values": self.k_values,
            "multiplicity": self.multiplicity,
            "entries": self.entries.iter().map(|e| json!({
                "label": e.label.to_string(),
                "degree": e.degree,
                "multiplicity": e.multiplicity,
            })).collect::<Vec<_>>(),
            "total_dimension": self.total_dimension(),
        })
    }

    /// Text table mirroring the displayed direct sums, one line per degree.
    pub fn to_text(&self) -> String {
        let header = self
            .k_values
            .iter()
            .map(|k| format!("O({k})"))
            .collect::<Vec<_>>()
            .join(" ⊕ ");
        let mut lines = vec![format!(
            "{header} group, multiplicity {}:",
            self.multiplicity
        )];
        let max_deg = self.entries.iter().map(|e| e.degree).max().unwrap_or(0);
        for d in 0..=max_deg {
            let at_d: Vec<String> = self
                .entries
                .iter()
                .filter(|e| e.degree == d)
                .map(|e| e.label.to_string())
                .collect();
            if !at_d.is_empty() {
                lines.push(format!("  degree {d}: {}", at_d.join(" ⊕ ")));
            }
        }
        lines.push(format!("  total dimension {}", self.total_dimension()));
        lines.join("\n")
    }
}

/// H^i(O(m)) as an so(4;C)-irrep tensored with Λ^j S−. Powers of S+ arise
/// as H⁰(O(a)) ≅ Sym^a S+ and, by Serre duality, H¹(O(−a−2)) ≅ Sym^a S+.
fn wedge_tensor(sym_power: usize, j: usize) -> IrrepLabel {
    match (sym_power, j) {
        (0, 0) | (0, 2) => IrrepLabel::C,
        (1, 0) | (1, 2) => IrrepLabel::SPlus,
        (2, 0) | (2, 2) => IrrepLabel::Sym2SPlus,
        (0, 1) => IrrepLabel::SMinus,
        (1, 1) => IrrepLabel::V,
        _ => unreachable!("no Sym^{sym_power}S+ ⊗ Λ^{j}S− terms arise for k ∈ [−4, 0]"),
    }
}

/// Field content of the group of line-bundle terms containing O(k), read
/// off the first page of the two-row spectral sequence: at bidegree (i, j)
/// the space H^i(O(k + j)) ⊗ Λ^j S− sits in total degree i + j. Each k is
/// grouped with its Serre-dual partner −4 − k, and S+ ⊕ S− pairs at equal
/// degree coalesce into S = S+ ⊕ S−.
pub fn pushforward_content(k: i64) -> Result<FieldContentTable, Error> {
    let (ks, multiplicity) = match k {
        0 | -4 => (vec![0i64, -4], 1usize),
        -1 | -3 => (vec![-1i64, -3], 4),
        -2 => (vec![-2i64], 6),
        _ => {
            return Err(Error::Unsupported(format!(
                "pushforward content only defined for k ∈ {{0, −1, −2, −3, −4}}, got {k}"
            )))
        }
    };
    // Raw E1 terms (degree, label), one per nonvanishing H^i(O(k+j)).
    let mut raw: Vec<(usize, IrrepLabel)> = Vec::new();
    for &kk in &ks {
        for j in 0..=2i64 {
            let m = kk + j;
            let (h0, h1) = h_dims(m);
            if h0 > 0 {
                raw.push((j as usize, wedge_tensor(m as usize, j as usize)));
            }
            if h1 > 0 {
                raw.push((1 + j as usize, wedge_tensor((-m - 2) as usize, j as usize)));
            }
        }
    }
    // Coalesce S+ ⊕ S− at the same degree into S.
    loop {
        let mut merged = false;
        'outer: for d in 0..=3usize {
            let plus = raw.iter().position(|&(dd, l)| dd == d && l == IrrepLabel::SPlus);
            let minus = raw.iter().position(|&(dd, l)| dd == d && l == IrrepLabel::SMinus);
            if let (Some(p), Some(m)) = (plus, minus) {
                let (hi, lo) = (p.max(m), p.min(m));
                raw.remove(hi);
                raw.remove(lo);
                raw.push((d, IrrepLabel::S));
                merged = true;
                break 'outer;
            }
        }
        if !merged {
            break;
        }
    }
    // Collect into sorted entries carrying the group multiplicity.
    raw.sort_by_key(|&(d, l)| (d, l));
    let mut entries: Vec<ContentEntry> = Vec::new();
    for (d, l) in raw {
        match entries.iter_mut().find(|e| e.degree == d && e.label == l) {
            Some(e) => e.multiplicity += multiplicity,
            None => entries.push(ContentEntry {
                label: l,
                degree: d,
                multiplicity,
            }),
        }
    }
    Ok(FieldContentTable {
        k_values: ks,
        multiplicity,
        entries,
    })
}

// ---------------------------------------------------------------------------
// The Dirac symbol
// ---------------------------------------------------------------------------

/// Extracts the submatrix of `m` on arbitrary row/column index lists.
fn pick(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> ExactMatrix {
    ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        m.get(rows[i], cols[j]).clone()
    })
}

/// The common scalar c such that, for every direction x, the composite
///
///   S− → V ⊗ S− ≅ S+ ⊗ S− ⊗ S− ↠ S+ ⊗ Λ²S− ≅ S+
///
/// (first arrow x ⊗ 1, with V ≅ S+⊗S− the unique equivariant
/// identification) equals c·ρ(x), Clifford multiplication in the
/// four-dimensional spinor model. Errors if the intertwiner space is not
/// one-dimensional or the proportionality fails.
pub fn dirac_symbol_scalar() -> Result<Scalar, Error> {
    let model = build_gamma(4)?;
    let (plus_set, minus_set) = model
        .weyl_coordinate_sets()
        .ok_or_else(|| Error::Structure("Weyl spaces are not coordinate spans".into()))?;
    let plus: Vec<usize> = plus_set.into_iter().collect();
    let minus: Vec<usize> = minus_set.into_iter().collect();
    let action = so_action(&model);

    // Solve for the equivariant identification T: V → S+ ⊗ S− from
    // T·ρ_V(g) = (σ_g|S+ ⊗ 1 + 1 ⊗ σ_g|S−)·T over all so(4) generators,
    // vectorizing row-major so that vec(A·T·Bᵀ) = (A ⊗ B)·vec(T).
    let id4 = ExactMatrix::identity(4);
    let id2 = ExactMatrix::identity(2);
    let mut constraints: Option<ExactMatrix> = None;
    for g in 0..action.pairs.len() {
        let sigma = &action.spinor[g];
        let a = pick(sigma, &plus, &plus);
        let b = pick(sigma, &minus, &minus);
        let rho_tensor = a.kron(&id2) + id2.kron(&b);
        let block = id4.kron(&action.vector[g].transpose()) - rho_tensor.kron(&id4);
        constraints = Some(match constraints {
            None => block,
            Some(c) => c.vstack(&block),
        });
    }
    let kernel = constraints.expect("so(4) has generators").kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::Structure(format!(
            "expected a one-dimensional intertwiner space V → S+⊗S−, found {}",
            kernel.len()
        )));
    }
    let t = ExactMatrix::from_fn(4, 4, |r, c| kernel[0][r * 4 + c].clone());

    // ε on S−: ε(β1, β2) = 1.
    let eps = ExactMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);

    // composite(x)[p, s] = Σ_q T(x)[p·2+q]·ε[q, s], against ρ(x)|S−→S+.
    let composite_of = |x: &[Scalar]| -> ExactMatrix {
        let tx = t.apply(x);
        ExactMatrix::from_fn(2, 2, |p, s| {
            let mut acc = Scalar::zero();
            for q in 0..2 {
                acc += &(&tx[p * 2 + q] * eps.get(q, s));
            }
            acc
        })
    };
    let clifford_block = |x: &[Scalar]| -> ExactMatrix { pick(&model.rho_of(x), &plus, &minus) };

    let mut scalar: Option<Scalar> = None;
    for dir in 0..4 {
        let mut x = vec![Scalar::zero(); 4];
        x[dir] = Scalar::one();
        let comp = composite_of(&x);
        let rho = clifford_block(&x);
        if rho.is_zero() {
            return Err(Error::Structure(
                "Clifford multiplication vanishes on a basis direction".into(),
            ));
        }
        if scalar.is_none() {
            'find: for i in 0..2 {
                for j in 0..2 {
                    if !rho.get(i, j).is_zero() {
                        scalar = Some(comp.get(i, j).clone() / rho.get(i, j).clone());
                        break 'find;
                    }
                }
            }
        }
        let c = scalar.clone().expect("nonzero Clifford block");
        if comp != rho.scale(&c) {
            return Err(Error::Structure(format!(
                "composite differs from {c}·ρ on basis direction {dir}"
            )));
        }
    }
    let c = scalar.expect("four directions checked");
    if c.is_zero() {
        return Err(Error::Structure("composite map vanishes identically".into()));
    }
    // Linearity spot-check on a mixed direction.
    let mixed: Vec<Scalar> = vec![
        Scalar::one(),
        Scalar::zero(),
        Scalar::from_int(2),
        Scalar::i(),
    ];
    if composite_of(&mixed) != clifford_block(&mixed).scale(&c) {
        return Err(Error::Structure("composite is not linear in the direction".into()));
    }
    Ok(c)
}

/// True when the composite through S+ ⊗ Λ²S− agrees with Clifford
/// multiplication up to one common scalar for all four directions.
pub fn dirac_symbol_check() -> bool {
    dirac_symbol_scalar().is_ok()
}

// ---------------------------------------------------------------------------
// Sections of O(1) ⊗ S− and the Koszul sequence
// ---------------------------------------------------------------------------

/// A linear form c₂·Z2 + c₃·Z3 on P(S+).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub z2: Scalar,
    pub z3: Scalar,
}

impl LinearForm {
    pub fn new(z2: Scalar, z3: Scalar) -> Self {
        LinearForm { z2, z3 }
    }

    pub fn is_zero(&self) -> bool {
        self.z2.is_zero() && self.z3.is_zero()
    }

    pub fn scaled(&self, c: &Scalar) -> LinearForm {
        LinearForm {
            z2: &self.z2 * c,
            z3: &self.z3 * c,
        }
    }
}

/// A global section e = e₁ ⊗ β1 + e₂ ⊗ β2 of O(1) ⊗ S−.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub beta1: LinearForm,
    pub beta2: LinearForm,
}

impl Section {
    /// e₁ ∧ e₂ ∈ Λ²⟨Z2, Z3⟩ ≅ C: the quadratic form on H⁰(O(1) ⊗ S−).
    pub fn quadratic_form(&self) -> Scalar {
        (&self.beta1.z2 * &self.beta2.z3).clone() - (&self.beta1.z3 * &self.beta2.z2).clone()
    }

    /// True when the two component forms are linearly independent, i.e.
    /// the section has no zero on P¹.
    pub fn nonvanishing(&self) -> bool {
        !self.quadratic_form().is_zero()
    }
}

/// Wedge pairing of two linear forms: f ∧ g ↦ f₂g₃ − f₃g₂.
fn form_wedge(f: &LinearForm, g: &LinearForm) -> Scalar {
    (&f.z2 * &g.z3).clone() - (&f.z3 * &g.z2).clone()
}

/// The four real-coordinate sections of O(1) ⊗ S−, an orthonormal basis of
/// H⁰(O(1) ⊗ S−) ≅ V for the polarized wedge form.
pub fn coordinate_sections() -> [Section; 4] {
    let z2 = || LinearForm::new(Scalar::one(), Scalar::zero());
    let z3 = || LinearForm::new(Scalar::zero(), Scalar::one());
    let i = Scalar::i();
    [
        // x¹ = Z2⊗β1 + Z3⊗β2
        Section {
            beta1: z2(),
            beta2: z3(),
        },
        // x² = i(Z2⊗β1 − Z3⊗β2)
        Section {
            beta1: z2().scaled(&i),
            beta2: z3().scaled(&-i.clone()),
        },
        // x³ = i(Z2⊗β2 + Z3⊗β1)
        Section {
            beta1: z3().scaled(&i),
            beta2: z2().scaled(&i),
        },
        // x⁴ = Z2⊗β2 − Z3⊗β1
        Section {
            beta1: z3().scaled(&-Scalar::one()),
            beta2: z2(),
        },
    ]
}

/// Gram matrix B(xⁱ, xʲ) of the polarized wedge form on the coordinate
/// sections; comes out as the identity.
pub fn section_gram() -> ExactMatrix {
    let xs = coordinate_sections();
    let half = Scalar::from_ratio(1, 2);
    ExactMatrix::from_fn(4, 4, |i, j| {
        let s = form_wedge(&xs[i].beta1, &xs[j].beta2) + &form_wedge(&xs[j].beta1, &xs[i].beta2);
        &s * &half
    })
}

/// Monomial basis of homogeneous degree-m polynomials in (Z2, Z3): index t
/// is Z2^{m−t}·Z3^t. Dimension m + 1, empty for m < 0.
fn poly_dim(m: i64) -> usize {
    (m + 1).max(0) as usize
}

/// Matrix of multiplication by a linear form, P_m → P_{m+1}.
fn poly_mult_matrix(form: &LinearForm, m: i64) -> ExactMatrix {
    let (src, dst) = (poly_dim(m), poly_dim(m + 1));
    let mut mat = ExactMatrix::zeros(dst, src);
    for t in 0..src {
        mat.set(t, t, form.z2.clone());
        mat.set(t + 1, t, form.z3.clone());
    }
    mat
}

/// Exactness bookkeeping for one graded degree of the Koszul sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulDegree {
    pub degree: usize,
    /// h⁰ dimensions of the three graded pieces.
    pub dims: [usize; 3],
    pub injective: bool,
    pub middle_exact: bool,
    /// Dimension of the cokernel at the right end.
    pub cokernel_dim: usize,
    /// h¹(O(degree − 2)): the expected defect of the section-level sequence.
    pub expected_h1: usize,
    pub euler_zero: bool,
    pub pass: bool,
}

/// Report over all graded degrees up to the bound, for all four coordinate
/// sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub degree_bound: usize,
    pub sections_checked: usize,
    pub degrees: Vec<KoszulDegree>,
    pub pass: bool,
}

fn koszul_degree_for(e: &Section, d: usize) -> KoszulDegree {
    let di = d as i64;
    let dims = [poly_dim(di - 2), 2 * poly_dim(di - 1), poly_dim(di)];
    // map1: f ↦ (e₁f, e₂f); map2: (g₁, g₂) ↦ g₁e₂ − g₂e₁.
    let m1 = poly_mult_matrix(&e.beta1, di - 2).vstack(&poly_mult_matrix(&e.beta2, di - 2));
    let m2 = poly_mult_matrix(&e.beta2, di - 1)
        .hstack(&poly_mult_matrix(&e.beta1, di - 1).scale(&-Scalar::one()));
    debug_assert!(m2.mat_mul(&m1).is_zero());
    let injective = m1.rank() == dims[0];
    let image = Subspace::span(dims[1], &m1.image_basis());
    let kernel = Subspace::span(dims[1], &m2.kernel_basis());
    let middle_exact = image.contains(&kernel) && kernel.contains(&image);
    let cokernel_dim = dims[2] - m2.rank();
    let expected_h1 = h_dims(di - 2).1;
    let chi = |m: i64| {
        let (a, b) = h_dims(m);
        a as i64 - b as i64
    };
    let euler_zero = chi(di - 2) - 2 * chi(di - 1) + chi(di) == 0;
    let pass = injective && middle_exact && cokernel_dim == expected_h1 && euler_zero;
    KoszulDegree {
        degree: d,
        dims,
        injective,
        middle_exact,
        cokernel_dim,
        expected_h1,
        euler_zero,
        pass,
    }
}

/// Verifies the Koszul sequence O(−2) → O(−1) ⊗ S− → O ⊗ Λ²S− (maps:
/// multiplication and wedge by one coordinate section) degree by degree on
/// monomial bases, for each of the four coordinate sections. The graded
/// sequence of global sections is exact in every positive degree; in degree
/// zero the cokernel C is accounted for by h¹(O(−2)) = 1.
pub fn koszul_exactness_check(degree_bound: usize) -> KoszulReport {
    assert!(degree_bound >= 2, "degree bound below the first interesting degree");
    let sections = coordinate_sections();
    let mut degrees = Vec::new();
    let mut pass = true;
    for d in 0..=degree_bound {
        let per_section: Vec<KoszulDegree> =
            sections.iter().map(|e| koszul_degree_for(e, d)).collect();
        let agree = per_section.windows(2).all(|w| w[0] == w[1]);
        let mut row = per_section[0].clone();
        row.pass &= agree;
        pass &= row.pass;
        degrees.push(row);
    }
    KoszulReport {
        degree_bound,
        sections_checked: sections.len(),
        degrees,
        pass,
    }
}

// ---------------------------------------------------------------------------
// Two-chart Čech model
// ---------------------------------------------------------------------------

/// An inclusive exponent window [lo, hi] of Laurent coefficients in
/// w = Z3/Z2, representing Σ c_m·w^m with the section Z2^k·g(w).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    fn index_of(&self, m: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&m).then(|| (m - self.lo) as usize)
    }
}

/// Chart U₀ = {Z2 ≠ 0}: g is polynomial in w.
fn chart0_window(_k: i64, n: i64) -> Window {
    Window { lo: 0, hi: n }
}

/// Chart U₁ = {Z3 ≠ 0}: g = w^k·h(1/w) with h polynomial.
fn chart1_window(k: i64, n: i64) -> Window {
    Window { lo: k - n, hi: k }
}

/// Overlap window chosen so that the model's cohomology is exact: it is the
/// union of the two chart windows together with the gap (k, 0) that carries
/// h¹ for k ≤ −2.
fn overlap_window(k: i64, n: i64) -> Window {
    Window { lo: k - n, hi: n }
}

/// Čech coboundary C⁰ = chart0 ⊕ chart1 → C¹ = overlap for O(k), per
/// single component: (b₀, b₁) ↦ b₁ − b₀.
fn coboundary_matrix(k: i64, n: i64) -> ExactMatrix {
    let (w0, w1, ov) = (chart0_window(k, n), chart1_window(k, n), overlap_window(k, n));
    let mut m = ExactMatrix::zeros(ov.len(), w0.len() + w1.len());
    for t in 0..w0.len() {
        let idx = ov.index_of(w0.lo + t as i64).expect("chart window inside overlap");
        m.set(idx, t, -Scalar::one());
    }
    for t in 0..w1.len() {
        let idx = ov.index_of(w1.lo + t as i64).expect("chart window inside overlap");
        m.set(idx, w0.len() + t, Scalar::one());
    }
    m
}

/// Multiplication by a linear form as a matrix between two windows:
/// Z2 keeps the exponent (the trivializing factor absorbs it), Z3 shifts
/// it up by one. Exponents falling outside the target window are dropped.
fn window_mult_matrix(form: &LinearForm, src: Window, dst: Window) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(dst.len(), src.len());
    for t in 0..src.len() {
        let e = src.lo + t as i64;
        if let Some(i) = dst.index_of(e) {
            m.set(i, t, form.z2.clone());
        }
        if let Some(i) = dst.index_of(e + 1) {
            m.set(i, t, form.z3.clone());
        }
    }
    m
}

/// Čech cohomology dimensions (h⁰, h¹) of O(k) in the truncated two-chart
/// model. Errors when the truncation is too small for the degree.
pub fn cech_h_dims(k: i64, truncation: usize) -> Result<(usize, usize), Error> {
    let n = truncation as i64;
    if k.abs() > n - 2 {
        return Err(Error::Unsupported(format!(
            "truncation {truncation} too small for O({k}); need |k| ≤ truncation − 2"
        )));
    }
    let delta = coboundary_matrix(k, n);
    let h0 = delta.cols - delta.rank();
    let h1 = delta.rows - delta.rank();
    Ok((h0, h1))
}

/// One term O(degree)^rank of a bounded Čech-modeled complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CechTerm {
    pub degree: i64,
    pub rank: usize,
}

/// Two-chart Čech model of a bounded complex of O(k)-terms on P¹ whose
/// maps are matrices of linear forms in (Z2, Z3); consecutive degrees step
/// by one. Laurent coefficients are truncated to |exponent| ≤ truncation.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub truncation: usize,
    pub terms: Vec<CechTerm>,
    /// maps[s] has shape terms[s+1].rank × terms[s].rank.
    maps: Vec<Vec<Vec<LinearForm>>>,
}

impl CechComplex {
    pub fn new(
        truncation: usize,
        terms: Vec<CechTerm>,
        maps: Vec<Vec<Vec<LinearForm>>>,
    ) -> Result<Self, Error> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(Error::Dimension(
                "need one map between each pair of consecutive terms".into(),
            ));
        }
        let max_k = terms.iter().map(|t| t.degree.abs()).max().unwrap_or(0);
        if (truncation as i64) < max_k + 2 {
            return Err(Error::Unsupported(format!(
                "truncation {truncation} too small; need ≥ {} for these degrees",
                max_k + 2
            )));
        }
        for (s, w) in terms.windows(2).enumerate() {
            if w[1].degree != w[0].degree + 1 {
                return Err(Error::Dimension(
                    "linear-form maps must raise the degree by exactly one".into(),
                ));
            }
            let m = &maps[s];
            if m.len() != w[1].rank || m.iter().any(|row| row.len() != w[0].rank) {
                return Err(Error::Dimension(format!(
                    "map {s} must have shape {}×{}",
                    w[1].rank, w[0].rank
                )));
            }
        }
        Ok(CechComplex {
            truncation,
            terms,
            maps,
        })
    }

    /// The Koszul row O(−2) → O(−1)² → O of a nonvanishing section: first
    /// map (e₁, e₂), second map (e₂, −e₁).
    pub fn koszul_row(e: &Section, truncation: usize) -> Result<Self, Error> {
        if !e.nonvanishing() {
            return Err(Error::DegenerateForm);
        }
        CechComplex::new(
            truncation,
            vec![
                CechTerm { degree: -2, rank: 1 },
                CechTerm { degree: -1, rank: 2 },
                CechTerm { degree: 0, rank: 1 },
            ],
            vec![
                vec![vec![e.beta1.clone()], vec![e.beta2.clone()]],
                vec![vec![
                    e.beta2.clone(),
                    e.beta1.scaled(&-Scalar::one()),
                ]],
            ],
        )
    }

    /// Čech cohomology dimensions of term `s`, rank-weighted.
    pub fn term_h_dims(&self, s: usize) -> Result<(usize, usize), Error> {
        let t = &self.terms[s];
        let (h0, h1) = cech_h_dims(t.degree, self.truncation)?;
        Ok((h0 * t.rank, h1 * t.rank))
    }

    /// Block matrix of map `s` on one window kind, acting componentwise.
    fn map_matrix(&self, s: usize, src: Window, dst: Window) -> ExactMatrix {
        let (rin, rout) = (self.terms[s].rank, self.terms[s + 1].rank);
        let mut rows: Option<ExactMatrix> = None;
        for out in 0..rout {
            let mut row_blocks: Option<ExactMatrix> = None;
            for inp in 0..rin {
                let block = window_mult_matrix(&self.maps[s][out][inp], src, dst);
                row_blocks = Some(match row_blocks {
                    None => block,
                    Some(b) => b.hstack(&block),
                });
            }
            let row = row_blocks.expect("nonzero input rank");
            rows = Some(match rows {
                None => row,
                Some(r) => r.vstack(&row),
            });
        }
        rows.expect("nonzero output rank")
    }

    /// Verifies that consecutive maps compose to zero on all three window
    /// representations, and that every term's model cohomology matches the
    /// exact line-bundle dimensions.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.truncation as i64;
        for s in 0..self.maps.len().saturating_sub(1) {
            let (k0, k1, k2) = (
                self.terms[s].degree,
                self.terms[s + 1].degree,
                self.terms[s + 2].degree,
            );
            for windows in [
                (chart0_window(k0, n), chart0_window(k1, n), chart0_window(k2, n)),
                (chart1_window(k0, n), chart1_window(k1, n), chart1_window(k2, n)),
                (overlap_window(k0, n), overlap_window(k1, n), overlap_window(k2, n)),
            ] {
                let first = self.map_matrix(s, windows.0, windows.1);
                let second = self.map_matrix(s + 1, windows.1, windows.2);
                if !second.mat_mul(&first).is_zero() {
                    return Err(Error::Structure(format!(
                        "maps {s} and {} do not compose to zero",
                        s + 1
                    )));
                }
            }
        }
        for s in 0..self.terms.len() {
            let got = self.term_h_dims(s)?;
            let (h0, h1) = h_dims(self.terms[s].degree);
            let want = (h0 * self.terms[s].rank, h1 * self.terms[s].rank);
            if got != want {
                return Err(Error::Structure(format!(
                    "model cohomology {got:?} of term {s} differs from exact {want:?}"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The second-page differential
// ---------------------------------------------------------------------------

/// One zig-zag e_i ∘ δ⁻¹ ∘ e_j applied to the generating Čech cocycle w⁻¹
/// of H¹(O(−2)): returns the resulting 0-cochain of O ⊗ Λ²S− as
/// (chart0 window vector, chart1 window vector).
fn e2_zigzag(ei: &Section, ej: &Section, n: i64) -> Result<(Vec<Scalar>, Vec<Scalar>), Error> {
    // Generator of H¹(O(−2)) in the overlap window.
    let ov2 = overlap_window(-2, n);
    let mut c = vec![Scalar::zero(); ov2.len()];
    c[ov2.index_of(-1).expect("w⁻¹ inside window")] = Scalar::one();

    // e_j·c per S−-component, in the overlap window of O(−1).
    let ov1 = overlap_window(-1, n);
    let mult = |form: &LinearForm| window_mult_matrix(form, ov2, ov1).apply(&c);
    let r = [mult(&ej.beta1), mult(&ej.beta2)];

    // Solve δb = e_j·c: the coboundary of O(−1) is square and invertible
    // (h⁰ = h¹ = 0), so the solution is unique.
    let delta = coboundary_matrix(-1, n);
    let w0_1 = chart0_window(-1, n);
    let w1_1 = chart1_window(-1, n);
    let mut b0 = Vec::new();
    let mut b1 = Vec::new();
    for comp in &r {
        let b = delta.solve(comp)?;
        b0.push(b[..w0_1.len()].to_vec());
        b1.push(b[w0_1.len()..].to_vec());
    }

    // g = e_i ∧ b = e_i1·b² − e_i2·b¹ on each chart, landing in O(0).
    let w0_0 = chart0_window(0, n);
    let w1_0 = chart1_window(0, n);
    let wedge = |src: Window, dst: Window, b: &[Vec<Scalar>]| -> Vec<Scalar> {
        let first = window_mult_matrix(&ei.beta1, src, dst).apply(&b[1]);
        let second = window_mult_matrix(&ei.beta2, src, dst).apply(&b[0]);
        first
            .into_iter()
            .zip(second)
            .map(|(x, y)| x - y)
            .collect()
    };
    Ok((wedge(w0_1, w0_0, &b0), wedge(w1_1, w1_0, &b1)))
}

/// The matrix M[i][j] of the second-page differential on the
/// one-dimensional pieces H¹(O(−2)) → H⁰(O ⊗ Λ²S−), computed from the
/// symmetrized zig-zag ½(e_i δ⁻¹ e_j + e_j δ⁻¹ e_i) over the coordinate
/// sections. Errors if the truncation is below 4 or a symmetrized cochain
/// fails to glue to a global constant.
pub fn e2_laplacian_matrix(truncation: usize) -> Result<ExactMatrix, Error> {
    if truncation < 4 {
        return Err(Error::Unsupported(
            "truncation below 4 leaves the probed cohomology unstable".into(),
        ));
    }
    let n = truncation as i64;
    let xs = coordinate_sections();
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
    let raw = par::map_collect(pairs.clone(), |&(i, j)| e2_zigzag(&xs[i], &xs[j], n));
    let mut grid: Vec<Vec<(Vec<Scalar>, Vec<Scalar>)>> = vec![Vec::new(); 4];
    for ((i, _), res) in pairs.into_iter().zip(raw) {
        grid[i].push(res?);
    }

    let w0 = chart0_window(0, n);
    let w1 = chart1_window(0, n);
    let ov = overlap_window(0, n);
    let half = Scalar::from_ratio(1, 2);
    let mut m = ExactMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let sym = |part: fn(&(Vec<Scalar>, Vec<Scalar>)) -> &Vec<Scalar>| -> Vec<Scalar> {
                part(&grid[i][j])
                    .iter()
                    .zip(part(&grid[j][i]))
                    .map(|(x, y)| &(x.clone() + y) * &half)
                    .collect()
            };
            let g0 = sym(|g| &g.0);
            let g1 = sym(|g| &g.1);
            // The symmetrized cochain must be a cocycle: g1 − g0 = 0 on the
            // whole overlap window, forcing a global constant.
            for e in ov.lo..=ov.hi {
                let v0 = w0.index_of(e).map(|t| g0[t].clone()).unwrap_or_default();
                let v1 = w1.index_of(e).map(|t| g1[t].clone()).unwrap_or_default();
                if v0 != v1 {
                    return Err(Error::Structure(format!(
                        "symmetrized ({i},{j}) cochain fails to glue at exponent {e}"
                    )));
                }
            }
            m.set(i, j, g0[w0.index_of(0).expect("constant slot")].clone());
        }
    }
    Ok(m)
}

/// True when the matrix of second-page differentials is δ^{ij} up to one
/// global invertible scalar.
pub fn e2_laplacian_check(truncation: usize) -> Result<bool, Error> {
    let m = e2_laplacian_matrix(truncation)?;
    let c = m.get(0, 0).clone();
    if c.is_zero() {
        return Ok(false);
    }
    Ok(m == ExactMatrix::identity(4).scale(&c))
}

// ---------------------------------------------------------------------------
// The weighted tangent-complex table
// ---------------------------------------------------------------------------

/// One summand O(−|S|) of Λ(O(−1)⁴) indexed by a subset S of the four odd
/// directions, after the weight twist (−1, 0, +1, 0) on directions
/// (1, 2, 3, 4): the cohomological degree is the total weight and the
/// parity of |S| flips when the weight is odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedTangentRow {
    pub subscripts: String,
    pub degree: i64,
    pub cohomological_degree: i64,
    pub parity: Parity,
}

/// All sixteen subsets, sorted by size then lexicographically. The table is
/// static data for golden comparison; its differential is out of scope.
pub fn twisted_tangent_table() -> Vec<TwistedTangentRow> {
    let weight = |d: usize| -> i64 {
        match d {
            1 => -1,
            3 => 1,
            _ => 0,
        }
    };
    let mut rows = Vec::new();
    for mask in 0..16u32 {
        let dirs: Vec<usize> = (1..=4).filter(|d| mask & (1 << (d - 1)) != 0).collect();
        let w: i64 = dirs.iter().map(|&d| weight(d)).sum();
        let size = dirs.len() as i64;
        let parity = if (size + w) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let subscripts = if dirs.is_empty() {
            "∅".to_string()
        } else {
            dirs.iter().map(|d| d.to_string()).collect::<String>()
        };
        rows.push(TwistedTangentRow {
            subscripts,
            degree: -size,
            cohomological_degree: w,
            parity,
        });
    }
    rows.sort_by(|a, b| {
        (-a.degree, a.subscripts.clone()).cmp(&(-b.degree, b.subscripts.clone()))
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn line_bundle_dimensions_and_duality() {
        assert_eq!(h_dims(0), (1, 0));
        assert_eq!(h_dims(-1), (0, 0));
        assert_eq!(h_dims(-4), (0, 3));
        assert_eq!(h_dims(3), (4, 0));
        for k in -9..=9 {
            let (h0, h1) = h_dims(k);
            assert_eq!(h0 * h1, 0);
            assert_eq!(h0, h_dims(-k - 2).1, "Serre duality at k = {k}");
            assert_eq!(h0 as i64 - h1 as i64, euler_characteristic(k));
        }
    }

    #[test]
    fn berezinian_degrees() {
        assert_eq!(berezinian_cpnm(3, 4), 0);
        assert!(is_super_calabi_yau(3, 4));
        assert_eq!(berezinian_cpnm(3, 0), -4);
        assert!(!is_super_calabi_yau(3, 0));
        assert_eq!(berezinian_cpnm(1, 2), 0);
        assert!(is_super_calabi_yau(1, 2));
    }

    #[test]
    fn twistor_form_values_and_signature() {
        // Both summands are isotropic.
        assert!(twistor_norm(&[s(1), s(0), s(0), s(0)]).is_zero());
        assert!(twistor_norm(&[s(0), s(0), s(3), s(-2)]).is_zero());
        // A diagonal real vector pairs positively.
        assert_eq!(twistor_norm(&[s(1), s(2), s(1), s(2)]), s(10));
        // The form is real-valued but indefinite.
        let v = [Scalar::i(), s(0), s(1), s(0)];
        let norm = twistor_norm(&v);
        assert!(norm.is_real());
        assert_eq!(signature_check(), (2, 2));
    }

    #[test]
    fn quaternion_arithmetic_rules() {
        let j = Quaternion::j();
        assert_eq!(j.mul(&j), Quaternion::from_complex(s(-1)));
        // j·w = w̄·j
        let w = Scalar::from_parts(1, 1, 2, 1); // 1 + 2i
        let jw = j.mul(&Quaternion::from_complex(w.clone()));
        let wbar_j = Quaternion::from_complex(w.conj()).mul(&j);
        assert_eq!(jw, wbar_j);
        let q = Quaternion::from_left_j_pair(&w, &Scalar::i());
        let inv = q.inverse().unwrap();
        assert_eq!(q.mul(&inv), Quaternion::one());
        assert_eq!(inv.mul(&q), Quaternion::one());
        assert!(Quaternion::zero().inverse().is_err());
    }

    #[test]
    fn penrose_map_examples() {
        let p = penrose_map(&[s(1), s(0), s(1), s(0)]).unwrap();
        assert_eq!(p.q1, Quaternion::one());
        assert_eq!(p.q2, Quaternion::one());
        assert!(penrose_map(&[s(0), s(0), s(0), s(0)]).is_err());
        // Right-scaling invariance for complex λ.
        let z = [s(1), Scalar::i(), s(2), s(-1)];
        let base = penrose_map(&z).unwrap();
        for lam in [Scalar::i(), Scalar::from_parts(1, 1, 1, 1), s(-3)] {
            let scaled: Vec<Scalar> = z.iter().map(|c| c * &lam).collect();
            assert!(penrose_map(&scaled).unwrap().equivalent(&base));
        }
        // The line Z0 = Z1 = 0 misses the point at infinity (1:0).
        for (a, b) in [(s(1), s(0)), (s(0), s(1)), (s(2), Scalar::i())] {
            let p = penrose_map(&[s(0), s(0), a, b]).unwrap();
            assert!(!p.is_infinity());
            assert!(p.equivalent(&Hp1Point {
                q1: Quaternion::zero(),
                q2: Quaternion::one(),
            }));
        }
        // The removed line Z2 = Z3 = 0 is exactly what maps to infinity.
        let inf = penrose_map(&[s(1), Scalar::i(), s(0), s(0)]).unwrap();
        assert!(inf.is_infinity());
        assert!(twistor_projection(&[s(1), s(0), s(0), s(0)]).is_err());
        assert_eq!(
            twistor_projection(&[s(9), s(9), s(2), s(3)]).unwrap(),
            (s(2), s(3))
        );
    }

    #[test]
    fn lambda_decomposition_multiplicities() {
        let terms = lambda_decompose(2).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].degree, -2);
        assert_eq!(terms[0].multiplicity, 6);
        assert_eq!(terms[0].parity, Parity::Even);
        assert_eq!(lambda_decompose(3).unwrap()[0].multiplicity, 4);
        assert_eq!(lambda_decompose(3).unwrap()[0].parity, Parity::Odd);
        assert_eq!(lambda_decompose(0).unwrap()[0].degree, 0);
        assert!(lambda_decompose(5).is_err());
        let total: usize = (0..=4)
            .map(|i| lambda_decompose(i).unwrap()[0].multiplicity)
            .sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn field_content_of_the_three_groups() {
        let gauge = pushforward_content(0).unwrap();
        assert_eq!(gauge.k_values, vec![0, -4]);
        assert_eq!(gauge.multiplicity, 1);
        let want = vec![
            (IrrepLabel::C, 0, 1),
            (IrrepLabel::V, 1, 1),
            (IrrepLabel::Sym2SPlus, 1, 1),
            (IrrepLabel::V, 2, 1),
            (IrrepLabel::Sym2SPlus, 2, 1),
            (IrrepLabel::C, 3, 1),
        ];
        let got: Vec<(IrrepLabel, usize, usize)> = gauge
            .entries
            .iter()
            .map(|e| (e.label, e.degree, e.multiplicity))
            .collect();
        assert_eq!(got, want);
        assert_eq!(gauge.total_dimension(), 16);
        assert_eq!(pushforward_content(-4).unwrap(), gauge);

        let spinors = pushforward_content(-1).unwrap();
        let got: Vec<(IrrepLabel, usize, usize)> = spinors
            .entries
            .iter()
            .map(|e| (e.label, e.degree, e.multiplicity))
            .collect();
        assert_eq!(got, vec![(IrrepLabel::S, 1, 4), (IrrepLabel::S, 2, 4)]);
        assert_eq!(spinors.total_dimension(), 32);
        assert_eq!(pushforward_content(-3).unwrap(), spinors);

        let scalars = pushforward_content(-2).unwrap();
        let got: Vec<(IrrepLabel, usize, usize)> = scalars
            .entries
            .iter()
            .map(|e| (e.label, e.degree, e.multiplicity))
            .collect();
        assert_eq!(got, vec![(IrrepLabel::C, 1, 6), (IrrepLabel::C, 2, 6)]);
        assert_eq!(scalars.total_dimension(), 12);

        assert!(pushforward_content(1).is_err());
        assert!(pushforward_content(-5).is_err());
        // A four-dimensional theory: degrees 0..3 only.
        for table in [&gauge, &spinors, &scalars] {
            assert!(table.entries.iter().all(|e| e.degree <= 3));
        }
    }

    #[test]
    fn dirac_symbol_matches_clifford_multiplication() {
        let c = dirac_symbol_scalar().unwrap();
        assert!(!c.is_zero());
        assert!(dirac_symbol_check());
    }

    #[test]
    fn coordinate_sections_are_orthonormal_and_nonvanishing() {
        for x in coordinate_sections() {
            assert!(x.nonvanishing());
            assert_eq!(x.quadratic_form(), s(1));
        }
        assert_eq!(section_gram(), ExactMatrix::identity(4));
    }

    #[test]
    fn koszul_sequence_is_exact_in_positive_degrees() {
        let report = koszul_exactness_check(5);
        assert!(report.pass);
        assert_eq!(report.sections_checked, 4);
        let d2 = &report.degrees[2];
        assert_eq!(d2.dims, [1, 4, 3]);
        assert!(d2.injective && d2.middle_exact);
        assert_eq!(d2.cokernel_dim, 0);
        // Degree 0: the cokernel C is the expected h¹(O(−2)) contribution.
        let d0 = &report.degrees[0];
        assert_eq!(d0.dims, [0, 0, 1]);
        assert_eq!(d0.cokernel_dim, 1);
        assert_eq!(d0.expected_h1, 1);
        assert!(d0.euler_zero && d0.pass);
        for d in &report.degrees {
            assert!(d.euler_zero);
        }
    }

    #[test]
    fn cech_model_reproduces_line_bundle_cohomology() {
        for k in -4..=4 {
            assert_eq!(cech_h_dims(k, 6).unwrap(), h_dims(k), "O({k})");
        }
        assert!(cech_h_dims(-5, 6).is_err());
        for x in coordinate_sections() {
            let row = CechComplex::koszul_row(&x, 5).unwrap();
            row.validate().unwrap();
            assert_eq!(row.term_h_dims(0).unwrap(), (0, 1));
            assert_eq!(row.term_h_dims(1).unwrap(), (0, 0));
            assert_eq!(row.term_h_dims(2).unwrap(), (1, 0));
        }
        assert!(CechComplex::koszul_row(&coordinate_sections()[0], 3).is_err());
        let degenerate = Section {
            beta1: LinearForm::new(s(1), s(0)),
            beta2: LinearForm::new(s(2), s(0)),
        };
        assert!(CechComplex::koszul_row(&degenerate, 5).is_err());
    }

    #[test]
    fn second_page_differential_is_a_multiple_of_the_identity() {
        let m = e2_laplacian_matrix(4).unwrap();
        // The scalar depends only on the coboundary orientation and the
        // choice of generator w⁻¹; with these conventions it is −1.
        assert_eq!(m, ExactMatrix::identity(4).scale(&s(-1)));
        assert!(e2_laplacian_check(4).unwrap());
        assert!(e2_laplacian_matrix(3).is_err());
        // Off-diagonal entries vanish and all diagonal entries agree.
        assert_eq!(*m.get(0, 1), s(0));
        assert_eq!(m.get(1, 1), m.get(2, 2));
    }

    #[test]
    fn twisted_tangent_rows_pair_under_complementation() {
        let rows = twisted_tangent_table();
        assert_eq!(rows.len(), 16);
        let find = |sub: &str| rows.iter().find(|r| r.subscripts == sub).unwrap();
        assert_eq!(find("∅").cohomological_degree, 0);
        assert_eq!(find("1").cohomological_degree, -1);
        assert_eq!(find("1").parity, Parity::Even);
        assert_eq!(find("2").parity, Parity::Odd);
        assert_eq!(find("13").cohomological_degree, 0);
        assert_eq!(find("1234").degree, -4);
        // Complementary subsets: degrees sum to −4, cohomological degrees
        // negate, parities agree.
        for r in &rows {
            let comp: String = if r.subscripts == "∅" {
                "1234".into()
            } else {
                (1..=4)
                    .filter(|d| !r.subscripts.contains(&d.to_string()))
                    .map(|d| d.to_string())
                    .collect::<String>()
            };
            let comp = if comp.is_empty() {
                find("∅")
            } else {
                find(&comp)
            };
            assert_eq!(r.degree + comp.degree, -4);
            assert_eq!(r.cohomological_degree + comp.cohomological_degree, 0);
            assert_eq!(r.parity, comp.parity);
        }
    }
}
