//! Finite-dimensional super Lie algebras as labeled structure constants,
//! the supersymmetry algebras in dimensions 2, 4, and 10, and the
//! dimensional reductions 10 → 4 and 4 → 2.
//!
//! An algebra stores its bracket sparsely on basis pairs i ≤ j; the
//! graded antisymmetry rule recovers the other order. `jacobi_check`
//! verifies the graded Jacobi identity on every basis triple by brute
//! force (in parallel when the `parallel` feature is on). Builders
//! construct every bracket explicitly — rotation action, R-symmetry
//! action, and the Γ-pairing of supercharges — so nothing is trusted
//! beyond exact arithmetic.

use crate::clifford::{build_pairing, so_action, ChiralityPattern, SpinorModel};
use crate::matrix::ExactMatrix;
use crate::par;
use crate::scalar::Scalar;
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    Rotation,
    RSymmetry,
    Translation,
    Supercharge,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BasisLabel {
    pub name: String,
    pub parity: Parity,
    /// C×-weight where the algebra carries one (the 2d algebras and the
    /// 4 → 2 reduction); None elsewhere.
    pub weight: Option<i64>,
    pub block: Block,
}

impl BasisLabel {
    fn new(name: impl Into<String>, parity: Parity, weight: Option<i64>, block: Block) -> Self {
        BasisLabel {
            name: name.into(),
            parity,
            weight,
            block,
        }
    }
}

/// Sparse vector over the algebra basis: sorted (index, coefficient)
/// pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

fn sparse_canon(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn sparse_scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

#[derive(Clone)]
pub struct SuperLieAlgebra {
    pub basis: Vec<BasisLabel>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// Result of the exhaustive graded-Jacobi verification.
#[derive(Debug, Clone, Serialize)]
pub struct JacobiReport {
    /// Failing basis triples (i ≤ j ≤ k) with their labels.
    pub failures: Vec<(usize, usize, usize)>,
    pub triples_checked: usize,
}

impl JacobiReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl SuperLieAlgebra {
    pub fn new(basis: Vec<BasisLabel>) -> Self {
        SuperLieAlgebra {
            basis,
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn block_indices(&self, block: Block) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].block == block).collect()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis.iter().filter(|b| b.parity == Parity::Odd).count()
    }

    pub fn even_dim(&self) -> usize {
        self.dim() - self.odd_dim()
    }

    fn parity_sign(&self, i: usize, j: usize) -> i64 {
        if self.basis[i].parity == Parity::Odd && self.basis[j].parity == Parity::Odd {
            1 // [x,y] = +[y,x] for odd pairs
        } else {
            -1
        }
    }

    /// Sets [b_i, b_j]; either argument order is accepted and stored
    /// canonically (i ≤ j) using graded antisymmetry.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) {
        let value = sparse_canon(value);
        let (key, value) = if i <= j {
            ((i, j), value)
        } else {
            let sign = Scalar::from_int(self.parity_sign(i, j));
            ((j, i), sparse_scale(&value, &sign))
        };
        if value.is_empty() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
    }

    /// [b_i, b_j] for any order of indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let stored = self.brackets.get(&(j, i)).cloned().unwrap_or_default();
            sparse_scale(&stored, &Scalar::from_int(self.parity_sign(i, j)))
        }
    }

    /// Bilinear extension of the bracket to dense coefficient vectors.
    /// Well-defined for arbitrary (possibly mixed-parity) vectors since
    /// the structure constants already encode the grading.
    pub fn bracket_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim(), "bracket: wrong length");
        assert_eq!(y.len(), self.dim(), "bracket: wrong length");
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += &(&c * xi) * yj;
                }
            }
        }
        out
    }

    /// Matrix of ad(x) = [x, −] on the whole algebra.
    pub fn ad_matrix(&self, x: &[Scalar]) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            let mut unit = vec![Scalar::zero(); n];
            unit[j] = Scalar::one();
            let col = self.bracket_dense(x, &unit);
            for (r, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(r, j, c);
                }
            }
        }
        m
    }

    /// Matrix of [b_g, −] restricted to one block (rows and columns are
    /// the block's indices in order). Errors if the action leaves the
    /// block.
    pub fn action_matrix(&self, g: usize, block: Block) -> Result<ExactMatrix, Error> {
        let idx = self.block_indices(block);
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut m = ExactMatrix::zeros(idx.len(), idx.len());
        for (c, &j) in idx.iter().enumerate() {
            for (k, coef) in self.bracket_basis(g, j) {
                match pos.get(&k) {
                    Some(&r) => m.set(r, c, coef),
                    None => {
                        return Err(Error::Structure(format!(
                            "[{}, {}] leaves the {:?} block",
                            self.basis[g].name, self.basis[j].name, block
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Structural validation: unique labels, parity grading of every
    /// stored bracket, [x,x] = 0 for even x, the block-grading rules
    /// ([Q,Q] ⊆ translations, [V,V] = 0, [V,Q] = 0), and weight
    /// additivity wherever weights are assigned.
    pub fn validate(&self) -> Result<(), Error> {
        let mut names = BTreeSet::new();
        for b in &self.basis {
            if !names.insert(b.name.as_str()) {
                return Err(Error::Structure(format!("duplicate basis label {}", b.name)));
            }
            if (b.block == Block::Supercharge) != (b.parity == Parity::Odd) {
                return Err(Error::Structure(format!(
                    "label {} has parity inconsistent with its block",
                    b.name
                )));
            }
        }
        for (&(i, j), value) in &self.brackets {
            if i >= self.dim() || j >= self.dim() {
                return Err(Error::Structure("bracket index out of range".into()));
            }
            if i == j && self.basis[i].parity == Parity::Even && !value.is_empty() {
                return Err(Error::Structure(format!(
                    "[x,x] ≠ 0 for even x = {}",
                    self.basis[i].name
                )));
            }
            let odd_in = (self.basis[i].parity == Parity::Odd) ^ (self.basis[j].parity == Parity::Odd);
            let out_parity = if odd_in { Parity::Odd } else { Parity::Even };
            for (k, _) in value {
                if *k >= self.dim() {
                    return Err(Error::Structure("bracket target out of range".into()));
                }
                if self.basis[*k].parity != out_parity {
                    return Err(Error::Structure(format!(
                        "[{}, {}] violates parity grading",
                        self.basis[i].name, self.basis[j].name
                    )));
                }
            }
            use Block::*;
            let blocks = (self.basis[i].block, self.basis[j].block);
            let allowed: Option<&[Block]> = match blocks {
                (Supercharge, Supercharge) => Some(&[Translation]),
                (Translation, Translation)
                | (Translation, Supercharge)
                | (Supercharge, Translation) => Some(&[]),
                _ => None,
            };
            if let Some(allowed) = allowed {
                for (k, _) in value {
                    if !allowed.contains(&self.basis[*k].block) {
                        return Err(Error::Structure(format!(
                            "[{}, {}] violates block grading",
                            self.basis[i].name, self.basis[j].name
                        )));
                    }
                }
            }
            if let (Some(wi), Some(wj)) = (self.basis[i].weight, self.basis[j].weight) {
                for (k, _) in value {
                    if self.basis[*k].weight != Some(wi + wj) {
                        return Err(Error::Structure(format!(
                            "[{}, {}] violates weight additivity",
                            self.basis[i].name, self.basis[j].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobi_failures<F>(&self, map: F) -> JacobiReport
    where
        F: Fn(Vec<(usize, usize, usize)>) -> Vec<Option<(usize, usize, usize)>>,
    {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k))))
            .collect();
        let total = triples.len();
        let failures = map(triples).into_iter().flatten().collect();
        JacobiReport {
            failures,
            triples_checked: total,
        }
    }

    fn jacobi_triple_fails(&self, i: usize, j: usize, k: usize) -> bool {
        let p = |a: usize| (self.basis[a].parity == Parity::Odd) as u32;
        let sign = |e: u32| if e % 2 == 0 { 1 } else { -1 };
        // (−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]]
        let mut acc = vec![Scalar::zero(); self.dim()];
        let terms = [(i, j, k), (j, k, i), (k, i, j)];
        for (x, y, z) in terms {
            let s = Scalar::from_int(sign(p(x) * p(z)));
            let inner = self.bracket_basis(y, z);
            for (m, c) in inner {
                for (t, d) in self.bracket_basis(x, m) {
                    acc[t] += &(&d * &c) * &s;
                }
            }
        }
        acc.iter().any(|c| !c.is_zero())
    }

    /// Exhaustive graded-Jacobi check over all basis triples, in
    /// parallel when available.
    pub fn jacobi_check(&self) -> JacobiReport {
        self.jacobi_failures(|triples| {
            par::map_collect(triples, |&(i, j, k)| {
                if self.jacobi_triple_fails(i, j, k) {
                    Some((i, j, k))
                } else {
                    None
                }
            })
        })
    }

    /// The same check forced onto one thread (for benchmarking the
    /// parallel speedup; results are identical).
    pub fn jacobi_check_seq(&self) -> JacobiReport {
        self.jacobi_failures(|triples| {
            par::map_collect_seq(triples, |&(i, j, k)| {
                if self.jacobi_triple_fails(i, j, k) {
                    Some((i, j, k))
                } else {
                    None
                }
            })
        })
    }

    /// True iff no nonzero odd element brackets to zero with the whole
    /// odd block (the Γ-pairing is nondegenerate).
    pub fn gamma_nondegenerate(&self) -> bool {
        let odd = self.block_indices(Block::Supercharge);
        let tr = self.block_indices(Block::Translation);
        let flat = ExactMatrix::from_fn(odd.len(), odd.len() * tr.len(), |r, col| {
            let (tcol, t) = (col / odd.len(), col % odd.len());
            let v = self.bracket_basis(odd[r], odd[t]);
            v.iter()
                .find(|(k, _)| *k == tr[tcol])
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Scalar::zero)
        });
        flat.rank() == odd.len()
    }

    pub fn to_json(&self) -> String {
        let doc = AlgebraJson {
            basis: self.basis.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), v)| BracketJson {
                    left: i,
                    right: j,
                    value: v.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("algebra serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: AlgebraJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra JSON: {e}")))?;
        let mut alg = SuperLieAlgebra::new(doc.basis);
        for b in doc.brackets {
            if b.left >= alg.dim() || b.right >= alg.dim() || b.left > b.right {
                return Err(Error::Parse("bracket indices out of order or range".into()));
            }
            alg.set_bracket(b.left, b.right, b.value);
        }
        alg.validate()?;
        Ok(alg)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    basis: Vec<BasisLabel>,
    brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    left: usize,
    right: usize,
    value: SparseVec,
}

// ---------------------------------------------------------------------------
// Shared construction helpers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RSymmetry {
    GlW,
    SlW,
    Trivial,
}

impl RSymmetry {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "gl" => Ok(RSymmetry::GlW),
            "sl" => Ok(RSymmetry::SlW),
            "trivial" => Ok(RSymmetry::Trivial),
            other => Err(Error::Parse(format!("unknown R-symmetry `{other}`"))),
        }
    }
}

/// Basis names for W: the conventional (e1,e2,f1,f2) for W_dim = 4,
/// plain w1..wk otherwise.
pub fn w_basis_names(k: usize) -> Vec<String> {
    if k == 4 {
        ["e1", "e2", "f1", "f2"].map(String::from).to_vec()
    } else {
        (1..=k).map(|i| format!("w{i}")).collect()
    }
}

/// Labeled basis matrices of the chosen R-symmetry algebra on W.
pub fn r_symmetry_basis(k: usize, r: RSymmetry) -> Vec<(String, ExactMatrix)> {
    let mut out = Vec::new();
    let unit = |l: usize, m: usize| {
        let mut e = ExactMatrix::zeros(k, k);
        e.set(l, m, Scalar::one());
        e
    };
    match r {
        RSymmetry::Trivial => {}
        RSymmetry::GlW => {
            for l in 0..k {
                for m in 0..k {
                    out.push((format!("Y{}{}", l + 1, m + 1), unit(l, m)));
                }
            }
        }
        RSymmetry::SlW => {
            for l in 0..k {
                for m in 0..k {
                    if l != m {
                        out.push((format!("Y{}{}", l + 1, m + 1), unit(l, m)));
                    }
                }
            }
            for l in 0..k.saturating_sub(1) {
                let name = format!("Y{0}{0}-Y{1}{1}", l + 1, l + 2);
                out.push((name, unit(l, l) - unit(l + 1, l + 1)));
            }
        }
    }
    out
}

/// Expands matrices in a fixed list of basis matrices (exact solve).
pub(crate) struct MatrixResolver {
    flat: ExactMatrix,
}

impl MatrixResolver {
    pub(crate) fn new(mats: &[ExactMatrix]) -> Self {
        assert!(!mats.is_empty(), "resolver needs a nonempty basis");
        let (r, c) = (mats[0].rows, mats[0].cols);
        let flat = ExactMatrix::from_fn(r * c, mats.len(), |row, col| {
            mats[col].get(row / c, row % c).clone()
        });
        MatrixResolver { flat }
    }

    pub(crate) fn resolve(&self, m: &ExactMatrix) -> Result<Vec<Scalar>, Error> {
        let flatm: Vec<Scalar> = (0..m.rows * m.cols)
            .map(|i| m.get(i / m.cols, i % m.cols).clone())
            .collect();
        self.flat.solve(&flatm)
    }
}

const SL2_H: [[i64; 2]; 2] = [[1, 0], [0, -1]];
const SL2_E: [[i64; 2]; 2] = [[0, 1], [0, 0]];
const SL2_F: [[i64; 2]; 2] = [[0, 0], [1, 0]];

// ---------------------------------------------------------------------------
// 4d N=k algebra
// ---------------------------------------------------------------------------

/// The 4d supersymmetry algebra on W = C^k: so(4;C) = sl2⊕sl2 in the
/// (H±, E±, F±) basis, R-symmetry gl(W)/sl(W)/0, translations
/// (∂z̄1, ∂z̄2, ∂z1, ∂z2) = S+⊗S−, and supercharges S+⊗W ⊕ S−⊗W* with
/// [α_a⊗w_i, α_b∨⊗w_j*] = δ_ij·Γ(α_a, α_b∨).
pub fn build_susy_4d(w_dim: usize, r: RSymmetry) -> Result<SuperLieAlgebra, Error> {
    if !(1..=4).contains(&w_dim) {
        return Err(Error::Unsupported(format!(
            "W dimension must be between 1 and 4, got {w_dim}"
        )));
    }
    let k = w_dim;
    let wn = w_basis_names(k);
    let rbasis = r_symmetry_basis(k, r);

    let mut basis = Vec::new();
    for n in ["H+", "E+", "F+", "H-", "E-", "F-"] {
        basis.push(BasisLabel::new(n, Parity::Even, None, Block::Rotation));
    }
    let rot0 = 0usize;
    let rsym0 = basis.len();
    for (n, _) in &rbasis {
        basis.push(BasisLabel::new(n.clone(), Parity::Even, None, Block::RSymmetry));
    }
    let tr0 = basis.len();
    for n in ["∂z̄1", "∂z̄2", "∂z1", "∂z2"] {
        basis.push(BasisLabel::new(n, Parity::Even, None, Block::Translation));
    }
    let odd0 = basis.len();
    // order: α1⊗W, α2⊗W, α1∨⊗W*, α2∨⊗W*
    for a in 1..=2 {
        for w in &wn {
            basis.push(BasisLabel::new(
                format!("α{a}⊗{w}"),
                Parity::Odd,
                None,
                Block::Supercharge,
            ));
        }
    }
    for b in 1..=2 {
        for w in &wn {
            basis.push(BasisLabel::new(
                format!("α{b}∨⊗{w}*"),
                Parity::Odd,
                None,
                Block::Supercharge,
            ));
        }
    }

    let mut alg = SuperLieAlgebra::new(basis);

    // sl2 ⊕ sl2 internal brackets: [H,E] = 2E, [H,F] = −2F, [E,F] = H
    for copy in 0..2 {
        let (h, e, f) = (rot0 + 3 * copy, rot0 + 3 * copy + 1, rot0 + 3 * copy + 2);
        alg.set_bracket(h, e, vec![(e, Scalar::from_int(2))]);
        alg.set_bracket(h, f, vec![(f, Scalar::from_int(-2))]);
        alg.set_bracket(e, f, vec![(h, Scalar::one())]);
    }

    let sl2_mats: [ExactMatrix; 3] = [
        ExactMatrix::from_int_rows(&[&SL2_H[0], &SL2_H[1]]),
        ExactMatrix::from_int_rows(&[&SL2_E[0], &SL2_E[1]]),
        ExactMatrix::from_int_rows(&[&SL2_F[0], &SL2_F[1]]),
    ];

    // rotation action on translations: V = S+⊗S−, index v(a,b) with
    // a the S+ index and b the S− index, ordered (∂z̄1,∂z̄2,∂z1,∂z2)
    let vidx = |a: usize, b: usize| tr0 + 2 * a + b;
    for (copy, on_first) in [(0usize, true), (1usize, false)] {
        for (which, mat) in sl2_mats.iter().enumerate() {
            let g = rot0 + 3 * copy + which;
            for a in 0..2 {
                for b in 0..2 {
                    let mut val: SparseVec = Vec::new();
                    for to in 0..2 {
                        let c = if on_first {
                            mat.get(to, a).clone()
                        } else {
                            mat.get(to, b).clone()
                        };
                        if !c.is_zero() {
                            let target = if on_first { vidx(to, b) } else { vidx(a, to) };
                            val.push((target, c));
                        }
                    }
                    alg.set_bracket(g, vidx(a, b), val);
                }
            }
        }
    }

    // rotation action on supercharges: the + copy on S+⊗W, the − copy
    // on S−⊗W* (each acts on the spinor factor only)
    let q_pos = |a: usize, i: usize| odd0 + a * k + i; // α_{a+1}⊗w_i
    let q_neg = |b: usize, j: usize| odd0 + 2 * k + b * k + j; // α_{b+1}∨⊗w_j*
    for (which, mat) in sl2_mats.iter().enumerate() {
        let gp = rot0 + which;
        let gm = rot0 + 3 + which;
        for a in 0..2 {
            for i in 0..k {
                let mut val: SparseVec = Vec::new();
                for to in 0..2 {
                    let c = mat.get(to, a).clone();
                    if !c.is_zero() {
                        val.push((q_pos(to, i), c));
                    }
                }
                alg.set_bracket(gp, q_pos(a, i), val);
            }
        }
        for b in 0..2 {
            for j in 0..k {
                let mut val: SparseVec = Vec::new();
                for to in 0..2 {
                    let c = mat.get(to, b).clone();
                    if !c.is_zero() {
                        val.push((q_neg(to, j), c));
                    }
                }
                alg.set_bracket(gm, q_neg(b, j), val);
            }
        }
    }

    // R-symmetry: internal commutators, fundamental on W, −transpose on W*
    if !rbasis.is_empty() {
        let mats: Vec<ExactMatrix> = rbasis.iter().map(|(_, m)| m.clone()).collect();
        let resolver = MatrixResolver::new(&mats);
        for x in 0..mats.len() {
            for y in (x + 1)..mats.len() {
                let comm = mats[x].commutator(&mats[y]);
                let coeffs = resolver.resolve(&comm)?;
                let val: SparseVec = coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (rsym0 + t, c))
                    .collect();
                alg.set_bracket(rsym0 + x, rsym0 + y, val);
            }
        }
        for (g, mat) in mats.iter().enumerate() {
            for a in 0..2 {
                for i in 0..k {
                    let val: SparseVec = (0..k)
                        .filter(|&l| !mat.get(l, i).is_zero())
                        .map(|l| (q_pos(a, l), mat.get(l, i).clone()))
                        .collect();
                    alg.set_bracket(rsym0 + g, q_pos(a, i), val);
                }
            }
            for b in 0..2 {
                for j in 0..k {
                    let val: SparseVec = (0..k)
                        .filter(|&m| !mat.get(j, m).is_zero())
                        .map(|m| (q_neg(b, m), -mat.get(j, m).clone()))
                        .collect();
                    alg.set_bracket(rsym0 + g, q_neg(b, j), val);
                }
            }
        }
    }

    // Γ: [α_a⊗w_i, α_b∨⊗w_j*] = δ_ij ∂ at position (a,b)
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..k {
                alg.set_bracket(q_pos(a, i), q_neg(b, i), vec![(vidx(a, b), Scalar::one())]);
            }
        }
    }

    alg.validate()?;
    Ok(alg)
}

// ---------------------------------------------------------------------------
// 2d N=(N1,N2) algebra
// ---------------------------------------------------------------------------

/// The 2d supersymmetry algebra: so(2;C) = ⟨R⟩, supercharges of circle
/// weight ±1 pairing into the weight ±2 translation lines q and p, and
/// the Γ-preserving R-symmetry so(N1;C)⊕so(N2;C).
pub fn build_susy_2d(n1: usize, n2: usize) -> Result<SuperLieAlgebra, Error> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::Unsupported("at least one supersymmetry is required".into()));
    }
    let mut basis = vec![BasisLabel::new("R", Parity::Even, Some(0), Block::Rotation)];
    let mut so_plus = Vec::new();
    let mut so_minus = Vec::new();
    for (n, sign, list) in [(n1, "+", &mut so_plus), (n2, "-", &mut so_minus)] {
        for l in 0..n {
            for m in (l + 1)..n {
                list.push(basis.len());
                basis.push(BasisLabel::new(
                    format!("A{sign}{}{}", l + 1, m + 1),
                    Parity::Even,
                    Some(0),
                    Block::RSymmetry,
                ));
            }
        }
    }
    let tr0 = basis.len();
    basis.push(BasisLabel::new("q", Parity::Even, Some(2), Block::Translation));
    basis.push(BasisLabel::new("p", Parity::Even, Some(-2), Block::Translation));
    let odd_plus0 = basis.len();
    for i in 0..n1 {
        basis.push(BasisLabel::new(
            format!("σ+⊗a{}", i + 1),
            Parity::Odd,
            Some(1),
            Block::Supercharge,
        ));
    }
    let odd_minus0 = basis.len();
    for i in 0..n2 {
        basis.push(BasisLabel::new(
            format!("σ-⊗b{}", i + 1),
            Parity::Odd,
            Some(-1),
            Block::Supercharge,
        ));
    }

    let mut alg = SuperLieAlgebra::new(basis);
    let r = 0usize;
    alg.set_bracket(r, tr0, vec![(tr0, Scalar::from_int(2))]);
    alg.set_bracket(r, tr0 + 1, vec![(tr0 + 1, Scalar::from_int(-2))]);
    for i in 0..n1 {
        alg.set_bracket(r, odd_plus0 + i, vec![(odd_plus0 + i, Scalar::one())]);
    }
    for i in 0..n2 {
        alg.set_bracket(r, odd_minus0 + i, vec![(odd_minus0 + i, Scalar::from_int(-1))]);
    }

    // so(N) internals and action, per chirality
    for (n, gens, odd0) in [(n1, &so_plus, odd_plus0), (n2, &so_minus, odd_minus0)] {
        if gens.is_empty() {
            continue;
        }
        let mut mats = Vec::new();
        for l in 0..n {
            for m in (l + 1)..n {
                let mut a = ExactMatrix::zeros(n, n);
                a.set(l, m, Scalar::one());
                a.set(m, l, Scalar::from_int(-1));
                mats.push(a);
            }
        }
        let resolver = MatrixResolver::new(&mats);
        for x in 0..mats.len() {
            for y in (x + 1)..mats.len() {
                let coeffs = resolver.resolve(&mats[x].commutator(&mats[y]))?;
                let val: SparseVec = coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (gens[t], c))
                    .collect();
                alg.set_bracket(gens[x], gens[y], val);
            }
        }
        for (g, mat) in mats.iter().enumerate() {
            for i in 0..n {
                let val: SparseVec = (0..n)
                    .filter(|&l| !mat.get(l, i).is_zero())
                    .map(|l| (odd0 + l, mat.get(l, i).clone()))
                    .collect();
                alg.set_bracket(gens[g], odd0 + i, val);
            }
        }
    }

    // Γ: same-chirality pairs land in the matching weight line
    for i in 0..n1 {
        alg.set_bracket(odd_plus0 + i, odd_plus0 + i, vec![(tr0, Scalar::one())]);
    }
    for i in 0..n2 {
        alg.set_bracket(odd_minus0 + i, odd_minus0 + i, vec![(tr0 + 1, Scalar::one())]);
    }

    alg.validate()?;
    Ok(alg)
}

// ---------------------------------------------------------------------------
// 10d N=1 algebra
// ---------------------------------------------------------------------------

/// The 10d N=(1,0) supersymmetry algebra of a rank-32 spinor model:
/// so(10;C) in the M_{a,b} basis, ten translations named after the
/// quadratic-space basis, and the 16 positive-chirality supercharges
/// Q1..Q16 with the ++ pairing as odd bracket.
pub fn build_susy_10d(model: &SpinorModel) -> Result<SuperLieAlgebra, Error> {
    if model.space.dim != 10 {
        return Err(Error::Unsupported(format!(
            "10d algebra needs a 10-dimensional model, got {}",
            model.space.dim
        )));
    }
    model.validate()?;
    let gamma = build_pairing(model, ChiralityPattern::PlusPlus)?;
    let action = so_action(model);
    let (plus, _) = model
        .weyl_coordinate_sets()
        .ok_or_else(|| Error::Structure("Weyl spaces are not coordinate spans".into()))?;
    let plus: Vec<usize> = plus.into_iter().collect();
    let plus_pos: BTreeMap<usize, usize> = plus.iter().enumerate().map(|(p, &i)| (i, p)).collect();

    let mut basis = Vec::new();
    for &(a, b) in &action.pairs {
        basis.push(BasisLabel::new(
            format!("M_{{{},{}}}", model.space.names[a], model.space.names[b]),
            Parity::Even,
            None,
            Block::Rotation,
        ));
    }
    let tr0 = basis.len();
    for n in &model.space.names {
        basis.push(BasisLabel::new(n.clone(), Parity::Even, None, Block::Translation));
    }
    let odd0 = basis.len();
    for t in 1..=plus.len() {
        basis.push(BasisLabel::new(format!("Q{t}"), Parity::Odd, None, Block::Supercharge));
    }

    let mut alg = SuperLieAlgebra::new(basis);
    let n = model.space.dim;
    let gram = &model.space.gram;
    let pair_pos: BTreeMap<(usize, usize), usize> = action
        .pairs
        .iter()
        .enumerate()
        .map(|(p, &ab)| (ab, p))
        .collect();
    // signed basis coefficient of e_a∧e_b
    let pair_coeff = |a: usize, b: usize, c: &Scalar| -> Option<(usize, Scalar)> {
        if a == b || c.is_zero() {
            return None;
        }
        if a < b {
            Some((pair_pos[&(a, b)], c.clone()))
        } else {
            Some((pair_pos[&(b, a)], -c.clone()))
        }
    };

    // so-so: [x_ab, x_cd] = B(b,c)x_ad − B(a,c)x_bd − B(b,d)x_ac + B(a,d)x_bc
    for x in 0..action.pairs.len() {
        for y in (x + 1)..action.pairs.len() {
            let (a, b) = action.pairs[x];
            let (c, d) = action.pairs[y];
            let mut val: SparseVec = Vec::new();
            val.extend(pair_coeff(a, d, gram.get(b, c)));
            val.extend(pair_coeff(b, d, &-gram.get(a, c).clone()));
            val.extend(pair_coeff(a, c, &-gram.get(b, d).clone()));
            val.extend(pair_coeff(b, c, gram.get(a, d)));
            alg.set_bracket(x, y, val);
        }
    }

    // so-translation and so-supercharge
    for g in 0..action.pairs.len() {
        for j in 0..n {
            let val: SparseVec = (0..n)
                .filter(|&a| !action.vector[g].get(a, j).is_zero())
                .map(|a| (tr0 + a, action.vector[g].get(a, j).clone()))
                .collect();
            alg.set_bracket(g, tr0 + j, val);
        }
        for (t, &col) in plus.iter().enumerate() {
            let mut val: SparseVec = Vec::new();
            for r in 0..model.spinor_dim {
                let c = action.spinor[g].get(r, col);
                if c.is_zero() {
                    continue;
                }
                match plus_pos.get(&r) {
                    Some(&rp) => val.push((odd0 + rp, c.clone())),
                    None => {
                        return Err(Error::Structure(
                            "so action does not preserve the chirality block".into(),
                        ))
                    }
                }
            }
            alg.set_bracket(g, odd0 + t, val);
        }
    }

    // Γ on supercharges
    for s in 0..plus.len() {
        for t in s..plus.len() {
            let val: SparseVec = (0..n)
                .filter(|&a| !gamma.components[a].get(plus[s], plus[t]).is_zero())
                .map(|a| (tr0 + a, gamma.components[a].get(plus[s], plus[t]).clone()))
                .collect();
            alg.set_bracket(odd0 + s, odd0 + t, val);
        }
    }

    alg.validate()?;
    Ok(alg)
}

// ---------------------------------------------------------------------------
// Reduction 10 → 4
// ---------------------------------------------------------------------------

/// Everything the 10 → 4 reduction verified, plus the frames aligning the
/// reduced algebra with the 4d N=4 algebra.
#[derive(Clone, Serialize)]
pub struct Reduction10To4Report {
    pub kept_rotations: usize,
    pub r_symmetry_rotations: usize,
    pub dropped_rotations: usize,
    /// Multiplicity of S± in the odd block (expected (4, 4)).
    pub multiplicities: (usize, usize),
    pub trivial_odd_summands: usize,
    /// [S+⊗W, S+⊗W] has no component along the kept translations.
    pub same_chirality_v4_zero: bool,
    /// [S+⊗W, S−⊗W*] has no component along the dropped translations.
    pub opposite_chirality_v6_zero: bool,
    /// Γ restricted to (α_a⊗W)×(α_b∨⊗W*) factors as δ_ij on a common
    /// translation frame.
    pub gamma_factorizes: bool,
    pub r_image_traceless: bool,
    pub r_image_dim: usize,
    /// Exhaustive structure-constant agreement with build_susy_4d(4, sl).
    pub structure_match: bool,
    /// Columns: (∂z̄1, ∂z̄2, ∂z1, ∂z2) in kept-translation coordinates.
    pub translation_frame: ExactMatrix,
    /// Columns: the W basis inside the odd block.
    pub w_frame: ExactMatrix,
    /// Columns: the (renormalized) W* basis inside the odd block.
    pub w_dual_frame: ExactMatrix,
}

/// Exact square root in Q(i) of a real rational (r² ↦ r, −r² ↦ i·r).
fn gaussian_sqrt(s: &Scalar) -> Result<Scalar, Error> {
    use num::{BigRational, Signed, Zero};
    if !s.is_real() {
        return Err(Error::Unsupported("square root of a non-real scalar".into()));
    }
    let r = &s.re;
    if r.is_zero() {
        return Ok(Scalar::zero());
    }
    let mag = r.abs();
    let (num, den) = (mag.numer(), mag.denom());
    let (sn, sd) = (num.sqrt(), den.sqrt());
    if &(&sn * &sn) != num || &(&sd * &sd) != den {
        return Err(Error::Unsupported(format!("{s} has no rational square root")));
    }
    let root = Scalar {
        re: BigRational::new(sn, sd),
        im: BigRational::zero(),
    };
    if r.is_positive() {
        Ok(root)
    } else {
        Ok(&root * &Scalar::i())
    }
}

fn proportional_to(y: &[Scalar], line: &[Scalar]) -> Option<Scalar> {
    let p = line.iter().position(|x| !x.is_zero())?;
    let mu = &y[p] * &line[p].inverse().ok()?;
    for k in 0..y.len() {
        if y[k] != &mu * &line[k] {
            return None;
        }
    }
    Some(mu)
}

/// Dimensional reduction of a 10d algebra along the complement of four
/// chosen translation coordinates. Returns the quotient algebra — kept
/// rotations so(4;C), transverse rotations so(6;C) reclassified as
/// R-symmetry, four translations, all sixteen supercharges — together
/// with a report that verifies it is isomorphic to the 4d N=4 algebra
/// with sl(W) R-symmetry by explicit frames and an exhaustive
/// structure-constant comparison.
pub fn reduce_10_to_4(
    alg: &SuperLieAlgebra,
    embedding: &[usize],
) -> Result<(SuperLieAlgebra, Reduction10To4Report), Error> {
    let tr = alg.block_indices(Block::Translation);
    let rot = alg.block_indices(Block::Rotation);
    let odd = alg.block_indices(Block::Supercharge);
    if tr.len() != 10 || rot.len() != 45 || odd.len() != 16 || !alg.block_indices(Block::RSymmetry).is_empty() {
        return Err(Error::Structure(
            "reduction expects a 10d algebra with 45 rotations, 10 translations, 16 supercharges".into(),
        ));
    }
    if embedding.len() != 4 {
        return Err(Error::Dimension("embedding must choose exactly 4 coordinates".into()));
    }
    let kept: BTreeSet<usize> = embedding.iter().copied().collect();
    if kept.len() != 4 || kept.iter().any(|&c| c >= 10) {
        return Err(Error::Dimension("embedding coordinates must be 4 distinct values < 10".into()));
    }

    // classify rotations by their action on the translation split
    let tr_action: Vec<ExactMatrix> = rot
        .iter()
        .map(|&g| alg.action_matrix(g, Block::Translation))
        .collect::<Result<_, _>>()?;
    let mut so4 = Vec::new(); // positions into `rot`
    let mut so6 = Vec::new();
    let mut dropped_rot = Vec::new();
    for (gpos, t) in tr_action.iter().enumerate() {
        let mut touches_kept = false;
        let mut touches_dropped = false;
        let mut mixes = false;
        for c in 0..10 {
            for r in 0..10 {
                if t.get(r, c).is_zero() {
                    continue;
                }
                match (kept.contains(&c), kept.contains(&r)) {
                    (true, true) => touches_kept = true,
                    (false, false) => touches_dropped = true,
                    _ => mixes = true,
                }
            }
        }
        if mixes || (touches_kept && touches_dropped) {
            dropped_rot.push(gpos);
        } else if touches_kept {
            so4.push(gpos);
        } else {
            so6.push(gpos);
        }
    }
    if so4.len() != 6 || so6.len() != 15 {
        return Err(Error::Structure(format!(
            "rotation split came out {} / {} instead of 6 / 15",
            so4.len(),
            so6.len()
        )));
    }

    // ---- build the quotient algebra ----
    let kept_tr: Vec<usize> = embedding.to_vec(); // positions into `tr`, caller order
    let mut new_basis = Vec::new();
    let mut old_of_new: Vec<usize> = Vec::new();
    for &gpos in &so4 {
        let old = rot[gpos];
        new_basis.push(BasisLabel::new(
            alg.basis[old].name.clone(),
            Parity::Even,
            None,
            Block::Rotation,
        ));
        old_of_new.push(old);
    }
    for &gpos in &so6 {
        let old = rot[gpos];
        new_basis.push(BasisLabel::new(
            alg.basis[old].name.clone(),
            Parity::Even,
            None,
            Block::RSymmetry,
        ));
        old_of_new.push(old);
    }
    for &c in &kept_tr {
        let old = tr[c];
        new_basis.push(BasisLabel::new(
            alg.basis[old].name.clone(),
            Parity::Even,
            None,
            Block::Translation,
        ));
        old_of_new.push(old);
    }
    for &q in &odd {
        new_basis.push(BasisLabel::new(
            alg.basis[q].name.clone(),
            Parity::Odd,
            None,
            Block::Supercharge,
        ));
        old_of_new.push(q);
    }
    let new_of_old: BTreeMap<usize, usize> =
        old_of_new.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let dropped_translations: BTreeSet<usize> = (0..10)
        .filter(|c| !kept.contains(c))
        .map(|c| tr[c])
        .collect();

    let mut reduced = SuperLieAlgebra::new(new_basis);
    let mut opposite_chirality_v6_zero = true;
    for i in 0..old_of_new.len() {
        for j in i..old_of_new.len() {
            let mut val: SparseVec = Vec::new();
            for (k, c) in alg.bracket_basis(old_of_new[i], old_of_new[j]) {
                if let Some(&nk) = new_of_old.get(&k) {
                    val.push((nk, c));
                } else if dropped_translations.contains(&k) {
                    // quotient by the transverse translations
                    continue;
                } else {
                    return Err(Error::Structure(format!(
                        "[{}, {}] leaves the reduction subalgebra",
                        alg.basis[old_of_new[i]].name, alg.basis[old_of_new[j]].name
                    )));
                }
            }
            reduced.set_bracket(i, j, val);
        }
    }
    reduced.validate()?;

    // ---- sl2⊕sl2 inside the kept so(4) ----
    let n_red = reduced.dim();
    let so4_new: Vec<usize> = (0..6).collect();
    let r_new: Vec<usize> = (6..21).collect();
    let tr_new: Vec<usize> = (21..25).collect();
    let odd_new: Vec<usize> = (25..41).collect();

    // support of each so(4) generator on the kept coordinates
    let kept_vec: Vec<usize> = kept.iter().copied().collect();
    let support = |gpos: usize| -> BTreeSet<usize> {
        let t = &tr_action[so4[gpos]];
        let mut s = BTreeSet::new();
        for (ci, &c) in kept_vec.iter().enumerate() {
            for (ri, &r) in kept_vec.iter().enumerate() {
                if !t.get(r, c).is_zero() {
                    s.insert(ci);
                    s.insert(ri);
                }
            }
        }
        s
    };
    let mut cartan_pair = None;
    'search: for x in 0..6 {
        let sx = support(x);
        if sx.len() != 2 {
            continue;
        }
        for y in (x + 1)..6 {
            let sy = support(y);
            if sy.len() == 2 && sx.is_disjoint(&sy) {
                cartan_pair = Some((x, y));
                break 'search;
            }
        }
    }
    let (ca, cb) = cartan_pair
        .ok_or_else(|| Error::Structure("no commuting Cartan pair found in so(4)".into()))?;

    // normalize each circle generator to spinor eigenvalues ±1
    let odd_action = |x: &[Scalar]| -> ExactMatrix {
        ExactMatrix::from_fn(16, 16, |r, c| {
            let mut unit = vec![Scalar::zero(); n_red];
            unit[odd_new[c]] = Scalar::one();
            reduced.bracket_dense(x, &unit)[odd_new[r]].clone()
        })
    };
    let unit_vec = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n_red];
        v[i] = Scalar::one();
        v
    };
    let normalize_circle = |gen: usize| -> Result<Vec<Scalar>, Error> {
        let a = odd_action(&unit_vec(so4_new[gen]));
        let a2 = a.mat_mul(&a);
        let mu = a2.get(0, 0).clone();
        if a2 != ExactMatrix::identity(16).scale(&mu) || mu.is_zero() {
            return Err(Error::Structure("Cartan generator squares to a non-scalar".into()));
        }
        let x = gaussian_sqrt(&mu)?;
        let mut h = vec![Scalar::zero(); n_red];
        h[so4_new[gen]] = x.inverse()?;
        Ok(h)
    };
    let ha = normalize_circle(ca)?;
    let hb = normalize_circle(cb)?;
    let half = Scalar::from_ratio(1, 2);
    let add_scaled = |x: &[Scalar], y: &[Scalar], cy: &Scalar| -> Vec<Scalar> {
        (0..n_red)
            .map(|i| {
                let mut t = x[i].clone();
                t += &(&y[i] * cy);
                t
            })
            .collect()
    };
    let h_plus: Vec<Scalar> = add_scaled(&ha, &hb, &Scalar::one())
        .iter()
        .map(|c| c * &half)
        .collect();
    let h_minus: Vec<Scalar> = add_scaled(&ha, &hb, &Scalar::from_int(-1))
        .iter()
        .map(|c| c * &half)
        .collect();

    // root vectors: solve ad-eigenvalue conditions inside span(so4)
    let ad_on_so4 = |x: &[Scalar]| -> ExactMatrix {
        ExactMatrix::from_fn(6, 6, |r, c| {
            let br = reduced.bracket_dense(x, &unit_vec(so4_new[c]));
            br[so4_new[r]].clone()
        })
    };
    let ad_hp = ad_on_so4(&h_plus);
    let ad_hm = ad_on_so4(&h_minus);
    let root_vector = |lp: i64, lm: i64| -> Result<Vec<Scalar>, Error> {
        let shift_p = ad_hp.clone() - ExactMatrix::identity(6).scale(&Scalar::from_int(lp));
        let shift_m = ad_hm.clone() - ExactMatrix::identity(6).scale(&Scalar::from_int(lm));
        let kernel = shift_p.vstack(&shift_m).kernel_basis();
        if kernel.len() != 1 {
            return Err(Error::Structure(format!(
                "root space ({lp},{lm}) has dimension {}",
                kernel.len()
            )));
        }
        let coeffs = kernel.into_iter().next().expect("len checked");
        let mut v = vec![Scalar::zero(); n_red];
        for (p, c) in coeffs.into_iter().enumerate() {
            v[so4_new[p]] = c;
        }
        Ok(v)
    };
    let e_plus = root_vector(2, 0)?;
    let mut f_plus = root_vector(-2, 0)?;
    let e_minus = root_vector(0, 2)?;
    let mut f_minus = root_vector(0, -2)?;
    // normalize [E,F] = H
    let fix_sl2 = |e: &[Scalar], f: &mut Vec<Scalar>, h: &[Scalar]| -> Result<(), Error> {
        let ef = reduced.bracket_dense(e, f);
        let kappa = proportional_to(&ef, h)
            .ok_or_else(|| Error::Structure("[E,F] is not proportional to H".into()))?;
        let inv = kappa.inverse()?;
        for c in f.iter_mut() {
            *c = &*c * &inv;
        }
        Ok(())
    };
    fix_sl2(&e_plus, &mut f_plus, &h_plus)?;
    fix_sl2(&e_minus, &mut f_minus, &h_minus)?;

    // ---- odd decomposition ----
    let hp_odd = odd_action(&h_plus);
    let ep_odd = odd_action(&e_plus);
    let fp_odd = odd_action(&f_plus);
    let hm_odd = odd_action(&h_minus);
    let em_odd = odd_action(&e_minus);
    let fm_odd = odd_action(&f_minus);
    let id16 = ExactMatrix::identity(16);
    let highest = |h: &ExactMatrix, killers: &[&ExactMatrix]| -> Vec<Vec<Scalar>> {
        let mut stacked = h.clone() - id16.clone();
        for k in killers {
            stacked = stacked.vstack(k);
        }
        stacked.kernel_basis()
    };
    let w_vecs = highest(&hp_odd, &[&ep_odd, &hm_odd, &em_odd, &fm_odd]);
    let xi_vecs = highest(&hm_odd, &[&em_odd, &hp_odd, &ep_odd, &fp_odd]);
    let multiplicities = (w_vecs.len(), xi_vecs.len());
    if multiplicities != (4, 4) {
        return Err(Error::Structure(format!(
            "odd multiplicities came out {multiplicities:?} instead of (4, 4)"
        )));
    }

    // Γ factorization on (α1⊗W) × (α1∨⊗W*)
    let odd_embed = |v16: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n_red];
        for (p, c) in v16.iter().enumerate() {
            v[odd_new[p]] = c.clone();
        }
        v
    };
    let tr_part = |v: &[Scalar]| -> Vec<Scalar> {
        tr_new.iter().map(|&t| v[t].clone()).collect()
    };
    let w_full: Vec<Vec<Scalar>> = w_vecs.iter().map(|v| odd_embed(v)).collect();
    let xi_full: Vec<Vec<Scalar>> = xi_vecs.iter().map(|v| odd_embed(v)).collect();
    let mut d1: Option<Vec<Scalar>> = None;
    let mut p_mat = ExactMatrix::zeros(4, 4);
    let mut gamma_factorizes = true;
    for i in 0..4 {
        for j in 0..4 {
            let br = tr_part(&reduced.bracket_dense(&w_full[i], &xi_full[j]));
            if br.iter().all(|c| c.is_zero()) {
                continue;
            }
            match &d1 {
                None => {
                    d1 = Some(br.clone());
                    p_mat.set(i, j, Scalar::one());
                }
                Some(line) => match proportional_to(&br, line) {
                    Some(mu) => p_mat.set(i, j, mu),
                    None => gamma_factorizes = false,
                },
            }
        }
    }
    let d1 = d1.ok_or_else(|| Error::Structure("Γ vanishes on the highest-weight pairing".into()))?;
    let p_inv = p_mat
        .inverse()
        .map_err(|_| Error::Structure("Γ highest-weight pairing is degenerate".into()))?;
    // renormalized dual frame: ξ'_j = Σ_m ξ_m (P⁻¹)_{mj}
    let xi_norm: Vec<Vec<Scalar>> = (0..4)
        .map(|j| {
            let mut v = vec![Scalar::zero(); n_red];
            for m in 0..4 {
                let c = p_inv.get(m, j);
                if c.is_zero() {
                    continue;
                }
                for t in 0..n_red {
                    let add = &xi_full[m][t] * c;
                    v[t] += &add;
                }
            }
            v
        })
        .collect();
    // re-verify δ_ij against d1
    for i in 0..4 {
        for j in 0..4 {
            let br = tr_part(&reduced.bracket_dense(&w_full[i], &xi_norm[j]));
            let expect: Vec<Scalar> = if i == j {
                d1.clone()
            } else {
                vec![Scalar::zero(); 4]
            };
            if br != expect {
                gamma_factorizes = false;
            }
        }
    }

    // full odd frames: α1⊗w, α2⊗w = F+·(α1⊗w), α1∨⊗ξ', α2∨⊗ξ' = F−·(α1∨⊗ξ')
    let apply_f = |f: &ExactMatrix, v: &[Scalar]| -> Vec<Scalar> {
        let v16: Vec<Scalar> = odd_new.iter().map(|&t| v[t].clone()).collect();
        odd_embed(&f.apply(&v16))
    };
    let mut odd_frame: Vec<Vec<Scalar>> = Vec::with_capacity(16);
    for v in &w_full {
        odd_frame.push(v.clone());
    }
    for v in &w_full {
        odd_frame.push(apply_f(&fp_odd, v));
    }
    for v in &xi_norm {
        odd_frame.push(v.clone());
    }
    for v in &xi_norm {
        odd_frame.push(apply_f(&fm_odd, v));
    }
    let u_mat = ExactMatrix::from_fn(16, 16, |r, c| odd_frame[c][odd_new[r]].clone());
    let u_inv = u_mat
        .inverse()
        .map_err(|_| Error::Structure("odd frame is not a basis".into()))?;
    let trivial_odd_summands = 0; // 2·4 + 2·4 = 16 exhausts the odd block

    // translation frame from the four bracket-defined directions
    let d_zbar1 = tr_part(&reduced.bracket_dense(&odd_frame[0], &odd_frame[8]));
    let d_zbar2 = tr_part(&reduced.bracket_dense(&odd_frame[0], &odd_frame[12]));
    let d_z1 = tr_part(&reduced.bracket_dense(&odd_frame[4], &odd_frame[8]));
    let d_z2 = tr_part(&reduced.bracket_dense(&odd_frame[4], &odd_frame[12]));
    let translation_frame = ExactMatrix::from_fn(4, 4, |r, c| {
        [&d_zbar1, &d_zbar2, &d_z1, &d_z2][c][r].clone()
    });
    let t_inv = translation_frame
        .inverse()
        .map_err(|_| Error::Structure("Γ image does not span the kept translations".into()))?;

    // residue checks
    let mut same_chirality_v4_zero = true;
    for i in 0..8 {
        for j in 0..8 {
            let br = reduced.bracket_dense(&odd_frame[i], &odd_frame[j]);
            if br.iter().any(|c| !c.is_zero()) {
                same_chirality_v4_zero = false;
            }
            let br2 = reduced.bracket_dense(&odd_frame[8 + i], &odd_frame[8 + j]);
            if br2.iter().any(|c| !c.is_zero()) {
                same_chirality_v4_zero = false;
            }
        }
    }
    // opposite-chirality pairs must have no component on the dropped
    // translations in the original algebra
    let odd_embed_old = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); alg.dim()];
        for (p, &t) in odd_new.iter().enumerate() {
            out[odd[p]] = v[t].clone();
        }
        out
    };
    for i in 0..8 {
        for j in 8..16 {
            let br = alg.bracket_dense(&odd_embed_old(&odd_frame[i]), &odd_embed_old(&odd_frame[j]));
            for &dt in &dropped_translations {
                if !br[dt].is_zero() {
                    opposite_chirality_v6_zero = false;
                }
            }
        }
    }

    // so(6) → sl(W)
    let w16: Vec<Vec<Scalar>> = w_vecs.clone();
    let w_mat = ExactMatrix::from_fn(16, 4, |r, c| w16[c][r].clone());
    let xi16: Vec<Vec<Scalar>> = xi_norm
        .iter()
        .map(|v| odd_new.iter().map(|&t| v[t].clone()).collect())
        .collect();
    let xi_mat = ExactMatrix::from_fn(16, 4, |r, c| xi16[c][r].clone());
    let mut r_images: Vec<ExactMatrix> = Vec::with_capacity(15);
    let mut r_image_traceless = true;
    for &g in &r_new {
        let o = odd_action(&unit_vec(g));
        // Y_g: action on the W frame
        let img = o.mat_mul(&w_mat);
        let y = w_mat
            .solve_columns(&img)
            .map_err(|_| Error::Structure("so(6) does not preserve the W frame".into()))?;
        if !y.trace().is_zero() {
            r_image_traceless = false;
        }
        // dual action must be −Yᵀ on the ξ' frame
        let img_dual = o.mat_mul(&xi_mat);
        let y_dual = xi_mat
            .solve_columns(&img_dual)
            .map_err(|_| Error::Structure("so(6) does not preserve the W* frame".into()))?;
        if y_dual != y.transpose().scale(&Scalar::from_int(-1)) {
            return Err(Error::Structure("so(6) dual action is not −Yᵀ".into()));
        }
        r_images.push(y);
    }
    let r_flat = ExactMatrix::from_fn(15, 16, |g, i| r_images[g].get(i / 4, i % 4).clone());
    let r_image_dim = r_flat.rank();

    // ---- exhaustive comparison with the 4d N=4 algebra ----
    let target = build_susy_4d(4, RSymmetry::SlW)?;
    let sl_mats: Vec<ExactMatrix> = r_symmetry_basis(4, RSymmetry::SlW)
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let sl_resolver = MatrixResolver::new(&sl_mats);
    let t_rot0 = 0usize;
    let t_rsym0 = 6usize;
    let t_tr0 = 21usize;
    let t_odd0 = 25usize;

    // φ: reduced basis index → dense vector over the target basis
    let sl2_frame = [&h_plus, &e_plus, &f_plus, &h_minus, &e_minus, &f_minus];
    let c_mat = ExactMatrix::from_fn(6, 6, |r, c| sl2_frame[c][so4_new[r]].clone());
    let c_inv = c_mat
        .inverse()
        .map_err(|_| Error::Structure("sl2⊕sl2 frame is degenerate".into()))?;
    let mut phi: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); target.dim()]; n_red];
    for (r, &idx) in so4_new.iter().enumerate() {
        // coordinates of the r-th so4 generator over (H+,E+,F+,H−,E−,F−)
        for t in 0..6 {
            phi[idx][t_rot0 + t] = c_inv.get(t, r).clone();
        }
    }
    for (gpos, &idx) in r_new.iter().enumerate() {
        let coeffs = sl_resolver.resolve(&r_images[gpos])?;
        for (t, c) in coeffs.into_iter().enumerate() {
            phi[idx][t_rsym0 + t] = c;
        }
    }
    for (c, &idx) in tr_new.iter().enumerate() {
        for t in 0..4 {
            phi[idx][t_tr0 + t] = t_inv.get(t, c).clone();
        }
    }
    for (c, &idx) in odd_new.iter().enumerate() {
        for t in 0..16 {
            phi[idx][t_odd0 + t] = u_inv.get(t, c).clone();
        }
    }
    let mut structure_match = true;
    'outer: for i in 0..n_red {
        for j in i..n_red {
            let lhs_red = reduced.bracket_basis(i, j);
            let mut lhs = vec![Scalar::zero(); target.dim()];
            for (k, c) in lhs_red {
                for t in 0..target.dim() {
                    lhs[t] += &phi[k][t] * &c;
                }
            }
            let rhs = target.bracket_dense(&phi[i], &phi[j]);
            if lhs != rhs {
                structure_match = false;
                break 'outer;
            }
        }
    }

    let report = Reduction10To4Report {
        kept_rotations: so4.len(),
        r_symmetry_rotations: so6.len(),
        dropped_rotations: dropped_rot.len(),
        multiplicities,
        trivial_odd_summands,
        same_chirality_v4_zero,
        opposite_chirality_v6_zero,
        gamma_factorizes,
        r_image_traceless,
        r_image_dim,
        structure_match,
        translation_frame,
        w_frame: w_mat,
        w_dual_frame: xi_mat,
    };
    Ok((reduced, report))
}

// ---------------------------------------------------------------------------
// Reduction 4 → 2
// ---------------------------------------------------------------------------

/// Weight bookkeeping of the 4 → 2 reduction: for every supercharge, its
/// weights under the kept rotation R = H+ − H− and the transverse
/// rotation R⊥ = H+ + H− (which becomes an R-symmetry).
#[derive(Clone, Serialize)]
pub struct Reduction4To2Report {
    /// (label, R-weight, R⊥-weight) for every supercharge.
    pub odd_weights: Vec<(String, i64, i64)>,
    pub plus_count: usize,
    pub minus_count: usize,
    /// Labels of the two surviving translation classes (weight +2, −2).
    pub kept_translations: (String, String),
    /// Labels of the two translations killed by the reduction.
    pub reduced_translations: (String, String),
}

/// Dimensional reduction of a 4d algebra to two dimensions: keep the
/// Cartan ⟨H+, H−⟩, quotient by the transverse translation plane
/// ⟨∂z̄1, ∂z2⟩, and re-grade by the kept rotation R = H+ − H−. The
/// result is an N=(2k, 2k) algebra whose R-symmetry holds the transverse
/// rotation R⊥ = H+ + H− alongside the inherited g_R.
pub fn reduce_4_to_2(
    alg: &SuperLieAlgebra,
) -> Result<(SuperLieAlgebra, Reduction4To2Report), Error> {
    let need = |name: &str| {
        alg.index_of(name)
            .ok_or_else(|| Error::Structure(format!("not a 4d algebra: missing {name}")))
    };
    let hp = need("H+")?;
    let hm = need("H-")?;
    let zbar1 = need("∂z̄1")?;
    let zbar2 = need("∂z̄2")?;
    let z1 = need("∂z1")?;
    let z2 = need("∂z2")?;
    let odd = alg.block_indices(Block::Supercharge);
    let rsym = alg.block_indices(Block::RSymmetry);
    if odd.len() % 4 != 0 || odd.is_empty() {
        return Err(Error::Structure("not a 4d algebra: odd block is not 4k-dimensional".into()));
    }
    let k = odd.len() / 4;

    let n_old = alg.dim();
    let unit = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n_old];
        v[i] = Scalar::one();
        v
    };
    let r_tr: Vec<Scalar> = (0..n_old)
        .map(|i| {
            if i == hp {
                Scalar::one()
            } else if i == hm {
                Scalar::from_int(-1)
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let r_par: Vec<Scalar> = (0..n_old)
        .map(|i| {
            if i == hp || i == hm {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();

    // diagonal weight of x under ad of a Cartan combination
    let weight_of = |cartan: &[Scalar], x: usize| -> Result<i64, Error> {
        let br = alg.bracket_dense(cartan, &unit(x));
        let mut w: Option<Scalar> = None;
        for (t, c) in br.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if t != x {
                return Err(Error::Structure(format!(
                    "{} is not a weight vector",
                    alg.basis[x].name
                )));
            }
            w = Some(c.clone());
        }
        let w = w.unwrap_or_else(Scalar::zero);
        let repr = format!("{w}");
        repr.parse::<i64>()
            .map_err(|_| Error::Structure(format!("non-integer weight {repr}")))
    };

    // assemble the reduced basis
    let mut basis = vec![
        BasisLabel::new("R", Parity::Even, Some(0), Block::Rotation),
        BasisLabel::new("R⊥", Parity::Even, Some(0), Block::RSymmetry),
    ];
    // old elements carried over: g_R, the two surviving translations, all odd
    let mut carried: Vec<usize> = Vec::new();
    for &g in &rsym {
        basis.push(BasisLabel::new(
            alg.basis[g].name.clone(),
            Parity::Even,
            Some(0),
            Block::RSymmetry,
        ));
        carried.push(g);
    }
    basis.push(BasisLabel::new("q", Parity::Even, Some(2), Block::Translation));
    carried.push(zbar2);
    basis.push(BasisLabel::new("p", Parity::Even, Some(-2), Block::Translation));
    carried.push(z1);
    let mut odd_weights = Vec::new();
    for &q in &odd {
        let w_tr = weight_of(&r_tr, q)?;
        let w_par = weight_of(&r_par, q)?;
        odd_weights.push((alg.basis[q].name.clone(), w_tr, w_par));
        basis.push(BasisLabel::new(
            alg.basis[q].name.clone(),
            Parity::Odd,
            Some(w_tr),
            Block::Supercharge,
        ));
        carried.push(q);
    }

    let mut reduced = SuperLieAlgebra::new(basis);
    // projection: old dense vector → new sparse value (drop ∂z̄1, ∂z2,
    // and anything outside the carried set — only the transverse
    // translations may actually appear)
    let new_index: BTreeMap<usize, usize> = carried
        .iter()
        .enumerate()
        .map(|(pos, &o)| (o, pos + 2))
        .collect();
    let project = |v: Vec<Scalar>| -> Result<SparseVec, Error> {
        let mut out: SparseVec = Vec::new();
        for (t, c) in v.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match new_index.get(&t) {
                Some(&n) => out.push((n, c)),
                None if t == zbar1 || t == z2 => {}
                None => {
                    return Err(Error::Structure(format!(
                        "reduction bracket leaves the subalgebra at {}",
                        alg.basis[t].name
                    )))
                }
            }
        }
        Ok(out)
    };

    // brackets of R and R⊥ with everything
    let cartans: [(usize, &Vec<Scalar>); 2] = [(0, &r_tr), (1, &r_par)];
    for (new_i, cart) in cartans {
        for (pos, &o) in carried.iter().enumerate() {
            let val = project(alg.bracket_dense(cart, &unit(o)))?;
            reduced.set_bracket(new_i, pos + 2, val);
        }
    }
    // [R, R⊥] = 0 (both Cartan); nothing to set
    // carried × carried
    for (pi, &oi) in carried.iter().enumerate() {
        for (pj, &oj) in carried.iter().enumerate() {
            if pj < pi {
                continue;
            }
            let val = project(alg.bracket_dense(&unit(oi), &unit(oj)))?;
            reduced.set_bracket(pi + 2, pj + 2, val);
        }
    }
    reduced.validate()?;

    let plus_count = odd_weights.iter().filter(|(_, w, _)| *w == 1).count();
    let minus_count = odd_weights.iter().filter(|(_, w, _)| *w == -1).count();
    if plus_count != 2 * k || minus_count != 2 * k {
        return Err(Error::Structure(format!(
            "chirality split came out ({plus_count}, {minus_count}) instead of ({}, {})",
            2 * k,
            2 * k
        )));
    }

    let report = Reduction4To2Report {
        odd_weights,
        plus_count,
        minus_count,
        kept_translations: (
            format!("q = {}", alg.basis[zbar2].name),
            format!("p = {}", alg.basis[z1].name),
        ),
        reduced_translations: (
            alg.basis[zbar1].name.clone(),
            alg.basis[z2].name.clone(),
        ),
    };
    Ok((reduced, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn abelian_algebra_passes_jacobi() {
        let basis = vec![
            BasisLabel::new("x", Parity::Even, None, Block::Translation),
            BasisLabel::new("y", Parity::Even, None, Block::Translation),
            BasisLabel::new("θ", Parity::Odd, None, Block::Supercharge),
        ];
        let alg = SuperLieAlgebra::new(basis);
        alg.validate().unwrap();
        let report = alg.jacobi_check();
        assert!(report.pass());
        assert_eq!(report.triples_checked, 10);
    }

    #[test]
    fn corrupted_constant_fails_jacobi_with_offending_triple() {
        let mut alg = build_susy_4d(2, RSymmetry::GlW).unwrap();
        assert!(alg.jacobi_check().pass());
        // corrupt [H+, E+] = 2E+ into 3E+
        let (h, e) = (alg.index_of("H+").unwrap(), alg.index_of("E+").unwrap());
        alg.set_bracket(h, e, vec![(e, s("3"))]);
        let report = alg.jacobi_check();
        assert!(!report.pass());
        assert!(report
            .failures
            .iter()
            .any(|&(i, j, k)| [i, j, k].contains(&h) && [i, j, k].contains(&e)));
    }

    #[test]
    fn susy_4d_dimensions_and_paper_brackets() {
        let alg = build_susy_4d(4, RSymmetry::SlW).unwrap();
        assert_eq!(alg.even_dim(), 25); // 6 + 15 + 4
        assert_eq!(alg.odd_dim(), 16);
        let q = alg.index_of("α1⊗e1").unwrap();
        let qd = alg.index_of("α1∨⊗e1*").unwrap();
        let zbar1 = alg.index_of("∂z̄1").unwrap();
        assert_eq!(alg.bracket_basis(q, qd), vec![(zbar1, s("1"))]);
        // dual-basis orthogonality
        let qf = alg.index_of("α1∨⊗f1*").unwrap();
        assert!(alg.bracket_basis(q, qf).is_empty());
        // graded symmetry of the odd bracket
        assert_eq!(alg.bracket_basis(qd, q), vec![(zbar1, s("1"))]);
    }

    #[test]
    fn susy_4d_rejects_out_of_range() {
        assert!(build_susy_4d(0, RSymmetry::Trivial).is_err());
        assert!(build_susy_4d(5, RSymmetry::Trivial).is_err());
    }

    #[test]
    fn susy_2d_counts_and_weights() {
        let alg = build_susy_2d(1, 1).unwrap();
        assert_eq!(alg.odd_dim(), 2);
        assert_eq!(alg.block_indices(Block::Translation).len(), 2);
        let sp = alg.index_of("σ+⊗a1").unwrap();
        let q = alg.index_of("q").unwrap();
        assert_eq!(alg.bracket_basis(sp, sp), vec![(q, s("1"))]);
        // chiral (2,0) is allowed, (0,0) is not
        assert!(build_susy_2d(2, 0).is_ok());
        assert!(build_susy_2d(0, 0).is_err());
    }

    #[test]
    fn json_roundtrip_preserves_everything() {
        let alg = build_susy_2d(2, 1).unwrap();
        let text = alg.to_json();
        let back = SuperLieAlgebra::from_json(&text).unwrap();
        assert_eq!(back.basis, alg.basis);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                assert_eq!(back.bracket_basis(i, j), alg.bracket_basis(i, j));
            }
        }
    }

    #[test]
    fn gaussian_sqrt_cases() {
        assert_eq!(gaussian_sqrt(&s("1/16")).unwrap(), s("1/4"));
        assert_eq!(gaussian_sqrt(&s("-1/4")).unwrap(), s("1/2*i"));
        assert_eq!(gaussian_sqrt(&s("0")).unwrap(), s("0"));
        assert!(gaussian_sqrt(&s("2")).is_err());
        assert!(gaussian_sqrt(&s("i")).is_err());
    }

    #[test]
    fn weight_additivity_is_enforced() {
        let mut alg = build_susy_2d(1, 1).unwrap();
        let sp = alg.index_of("σ+⊗a1").unwrap();
        let p = alg.index_of("p").unwrap();
        // weight-violating bracket: [σ+, σ+] = p would need weight 2
        alg.set_bracket(sp, sp, vec![(p, s("1"))]);
        assert!(alg.validate().is_err());
    }
}
