//! A one-qubit code against the collective errors `Id, X^⊗n, Y^⊗n, Z^⊗n`.
//!
//! `|0_L⟩` is a stable symmetric hypergraph state and `|1_L⟩ = Z_1 Z_2 |0_L⟩`.
//! With `P = Σ_a |a⟩⟨a|` over the two logical states, `P E P` is
//! `Σ_{ab} ⟨a|E|b⟩ |a⟩⟨b|`, so traces and Frobenius norms of such operators
//! reduce to 2x2 arithmetic with the Gram matrix `G_ab = ⟨a|b⟩`. That keeps
//! the check exact even when the two states are not orthonormal (as for the
//! negative control) without forming `2^n x 2^n` matrices.

use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{classify, StabilizerClass};
use crate::error::{Error, Result};
use crate::statevec::{
    apply_gates, apply_pauli, build_symmetric_state, is_stabilized, Gate, Pauli, PauliWord, Phase,
    StateVector, DENSITY_CAP,
};
use crate::sym_core::CardinalityVector;

/// Tolerance for the proportionality and Hermiticity checks.
pub const QEC_TOL: f64 = 1e-10;

pub type Alpha = [[Complex64; 4]; 4];

#[derive(Clone, Debug)]
pub struct Code {
    state: CardinalityVector,
    zero_logical: StateVector,
    one_logical: StateVector,
    class: StabilizerClass,
}

impl Code {
    pub fn state(&self) -> &CardinalityVector {
        &self.state
    }

    pub fn zero_logical(&self) -> &StateVector {
        &self.zero_logical
    }

    pub fn one_logical(&self) -> &StateVector {
        &self.one_logical
    }

    pub fn class(&self) -> StabilizerClass {
        self.class
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    /// The same code with `|1_L⟩` replaced, for negative controls.
    pub fn with_one_logical(&self, one: StateVector) -> Result<Self> {
        if one.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: one.n(),
            });
        }
        Ok(Self {
            one_logical: one,
            ..self.clone()
        })
    }

    fn logicals(&self) -> [&StateVector; 2] {
        [&self.zero_logical, &self.one_logical]
    }
}

pub fn build_code(k: &CardinalityVector) -> Result<Code> {
    let class = classify(k);
    if !class.is_stable() {
        return Err(Error::Precondition(format!("{k} has no local Pauli stabilizer")));
    }
    if k.n() < 3 {
        return Err(Error::Precondition(format!("the code needs n >= 3, got {k}")));
    }
    if k.n() > DENSITY_CAP {
        return Err(Error::ResourceLimit {
            what: "n (code)",
            limit: DENSITY_CAP,
            requested: k.n(),
        });
    }
    let zero = build_symmetric_state(k)?;
    let one = apply_gates(&[Gate::Z(1), Gate::Z(2)], &zero)?;
    Ok(Code {
        state: k.clone(),
        zero_logical: zero,
        one_logical: one,
        class,
    })
}

/// `E_0..E_3 = Id, X^⊗n, Y^⊗n, Z^⊗n`.
pub fn errors(n: usize) -> [PauliWord; 4] {
    [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z].map(|p| PauliWord::uniform(Phase::ONE, p, n))
}

type M2 = [[Complex64; 2]; 2];

/// `(⟨a|W|b⟩)_{ab}` over the logical basis.
fn logical_block(code: &Code, w: &PauliWord) -> Result<M2> {
    let [zero, one] = code.logicals();
    let images = [apply_pauli(w, zero)?, apply_pauli(w, one)?];
    Ok([
        [zero.inner(&images[0]), zero.inner(&images[1])],
        [one.inner(&images[0]), one.inner(&images[1])],
    ])
}

fn gram(code: &Code) -> M2 {
    let [zero, one] = code.logicals();
    [
        [zero.inner(zero), zero.inner(one)],
        [one.inner(zero), one.inner(one)],
    ]
}

/// `E_i† E_j` as a single phased word (Paulis are Hermitian).
fn product_word(a: &PauliWord, b: &PauliWord) -> PauliWord {
    let mut phase = a.phase.conj() * b.phase;
    let letters = a
        .letters
        .iter()
        .zip(&b.letters)
        .map(|(&p, &q)| {
            let (r, ph) = pauli_product(p, q);
            phase *= ph;
            r
        })
        .collect();
    PauliWord::new(phase, letters)
}

fn pauli_product(p: Pauli, q: Pauli) -> (Pauli, Phase) {
    use Pauli::*;
    match (p, q) {
        (I, r) | (r, I) => (r, Phase::ONE),
        (a, b) if a == b => (I, Phase::ONE),
        (X, Y) => (Z, Phase::I),
        (Y, X) => (Z, Phase::MINUS_I),
        (Y, Z) => (X, Phase::I),
        (Z, Y) => (X, Phase::MINUS_I),
        (Z, X) => (Y, Phase::I),
        (X, Z) => (Y, Phase::MINUS_I),
        _ => unreachable!(),
    }
}

/// `α = tr(P W P) / tr(P)` and the residual `‖P W P - α P‖_F`.
fn project(block: &M2, g: &M2) -> (Complex64, f64) {
    // tr(|a⟩⟨b|) = G_ba
    let tr = |d: &M2| -> Complex64 {
        (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| d[a][b] * g[b][a])
            .sum()
    };
    let id = [[Complex64::from(1.0), Complex64::from(0.0)], [Complex64::from(0.0), Complex64::from(1.0)]];
    let alpha = tr(block) / tr(&id);
    let mut d = *block;
    for (a, row) in d.iter_mut().enumerate() {
        row[a] -= alpha;
    }
    // ‖Σ D_ab |a⟩⟨b|‖_F² = Σ conj(D_ab) D_cd G_ac G_db
    let mut norm2 = Complex64::from(0.0);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    norm2 += d[a][b].conj() * d[c][e] * g[a][c] * g[e][b];
                }
            }
        }
    }
    (alpha, norm2.re.max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct KnillLaflamme {
    pub alpha: Alpha,
    pub max_residual: f64,
    pub hermitian: bool,
}

impl KnillLaflamme {
    pub fn passes(&self) -> bool {
        self.max_residual < QEC_TOL && self.hermitian
    }
}

/// `α_ij` with the largest proportionality residual and a Hermiticity flag.
pub fn knill_laflamme(code: &Code) -> Result<KnillLaflamme> {
    let errs = errors(code.n());
    let g = gram(code);
    let mut alpha = [[Complex64::from(0.0); 4]; 4];
    let mut max_residual: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let block = logical_block(code, &product_word(&errs[i], &errs[j]))?;
            let (a, r) = project(&block, &g);
            alpha[i][j] = a;
            max_residual = max_residual.max(r);
        }
    }
    let hermitian = (0..4).all(|i| (0..4).all(|j| (alpha[i][j] - alpha[j][i].conj()).norm() < QEC_TOL));
    Ok(KnillLaflamme {
        alpha,
        max_residual,
        hermitian,
    })
}

/// `(α_ij)`; a proportionality failure is reported as a consistency error.
pub fn alpha_matrix(code: &Code) -> Result<Alpha> {
    let kl = knill_laflamme(code)?;
    if kl.max_residual >= QEC_TOL {
        return Err(Error::Consistency(format!(
            "P E_i† E_j P is not proportional to P for {} (residual {:.3e})",
            code.state, kl.max_residual
        )));
    }
    if !kl.hermitian {
        return Err(Error::Consistency(format!("(α_ij) for {} is not Hermitian", code.state)));
    }
    Ok(kl.alpha)
}

pub fn knill_laflamme_check(code: &Code) -> bool {
    knill_laflamme(code).is_ok_and(|kl| kl.passes())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn i_pow(n: usize) -> Complex64 {
    Phase::power_of_i(n as u64).value()
}

fn minus_i_pow(n: usize) -> Complex64 {
    Phase::power_of_i(3 * n as u64).value()
}

/// The reference α table, with `i^n` evaluated at `n`.
///
/// For even `n` its `(3,2)` entry (`X` classes) and `(3,1)` entry (`Y` class)
/// are not the conjugates of their transposes, so this table is not Hermitian
/// there; see [`corrected_alpha_table`].
pub fn reference_alpha_table(class: StabilizerClass, n: usize) -> Option<Alpha> {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let ip = i_pow(n);
    let mp = minus_i_pow(n);
    Some(match class {
        StabilizerClass::XPlus => [[o, o, z, z], [o, o, z, z], [z, z, o, ip], [z, z, -ip, o]],
        StabilizerClass::XMinus => [[o, -o, z, z], [-o, o, z, z], [z, z, o, -ip], [z, z, ip, o]],
        StabilizerClass::YPlus => [[o, z, o, z], [z, o, z, mp], [o, z, o, z], [z, -mp, z, o]],
        StabilizerClass::Unstable => return None,
    })
}

/// The reference table with each lower entry replaced by the conjugate of
/// the upper one. Agrees with [`reference_alpha_table`] for odd `n`.
pub fn corrected_alpha_table(class: StabilizerClass, n: usize) -> Option<Alpha> {
    let mut t = reference_alpha_table(class, n)?;
    let upper = t;
    for (i, row) in t.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate().take(i) {
            *x = upper[j][i].conj();
        }
    }
    Some(t)
}

pub fn alpha_distance(a: &Alpha, b: &Alpha) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeStructure {
    /// Both logicals are fixed by the class word.
    pub shared_stabilizer: bool,
    /// `⟨0_L|1_L⟩ = 0`.
    pub orthogonal: bool,
    /// `⟨0_L|Z^⊗n|1_L⟩ = 0`.
    pub z_cross_vanishes: bool,
    /// `⟨0_L|Z^⊗n|0_L⟩ = ⟨1_L|Z^⊗n|1_L⟩ = 0`.
    pub z_diagonal_vanishes: bool,
}

impl CodeStructure {
    pub fn all(&self) -> bool {
        self.shared_stabilizer && self.orthogonal && self.z_cross_vanishes && self.z_diagonal_vanishes
    }
}

pub fn lemma9_checks(code: &Code) -> Result<CodeStructure> {
    let n = code.n();
    let word = PauliWord::for_class(code.class, n)
        .ok_or_else(|| Error::Precondition("code state has no class word".into()))?;
    let zw = PauliWord::uniform(Phase::ONE, Pauli::Z, n);
    let [zero, one] = code.logicals();
    let small = |x: Complex64| x.norm() < QEC_TOL;
    let z_one = apply_pauli(&zw, one)?;
    let z_zero = apply_pauli(&zw, zero)?;
    Ok(CodeStructure {
        shared_stabilizer: is_stabilized(&word, zero) && is_stabilized(&word, one),
        orthogonal: small(zero.inner(one)),
        z_cross_vanishes: small(zero.inner(&z_one)),
        z_diagonal_vanishes: small(zero.inner(&z_zero)) && small(one.inner(&z_one)),
    })
}

/// `Σ_w (-1)^w C(n-2, w)` in exact integers.
pub fn alternating_row_sum(n: usize) -> Result<i128> {
    if !(2..=120).contains(&n) {
        return Err(Error::Precondition(format!("row n - 2 needs 2 <= n <= 120, got {n}")));
    }
    let r = n - 2;
    let mut binom = 1i128;
    let mut sum = 0i128;
    for w in 0..=r {
        sum += if w % 2 == 0 { binom } else { -binom };
        binom = binom * (r - w) as i128 / (w + 1) as i128;
    }
    Ok(sum)
}

/// `|1_L⟩` with the sign of one amplitude flipped.
pub fn corrupted_one_logical(code: &Code, index: usize) -> Result<StateVector> {
    let mut s = code.one_logical.clone();
    let amp = s.amplitudes_mut();
    let len = amp.len();
    let a = amp.get_mut(index).ok_or(Error::DimensionMismatch {
        expected: len,
        found: index,
    })?;
    *a = -*a;
    Ok(s)
}
