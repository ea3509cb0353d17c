//! Dense state-vector oracle.
//!
//! Qubit `q` (1-based) is bit `n - q` of a basis index, so qubit 1 is the most
//! significant bit. Hyperedges use the same convention as bitmasks over
//! basis-index bits. Every gate in this module (Paulis, generalized
//! controlled-Z, `C_∅ = -Id`) maps a basis state to a scaled basis state, so
//! operators are applied and materialized by following basis states.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::StabilizerClass;
use crate::error::{Error, Result};
use crate::sym_core::{sign_vector, CardinalityVector};

/// Default cap on `n` for building dense states.
pub const DENSE_CAP: usize = 20;
/// Hard cap for the [`Hypergraph`] bitmask representation.
pub const HYPERGRAPH_CAP: usize = 24;
/// Cap on `n` for the exhaustive local Pauli search (`4^n` words).
pub const SEARCH_CAP: usize = 8;
/// Cap on `n` for density matrices.
pub const DENSITY_CAP: usize = 12;

/// Tolerance for state equality.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for operator identities.
pub const OPERATOR_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hypergraph on vertices `1..=n`, edges as nonempty vertex bitmasks.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<u32>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(raw: HypergraphJson) -> Result<Self> {
        let mut g = Hypergraph::new(raw.n)?;
        for e in &raw.edges {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("edge {e:?} is not a sorted vertex list")));
            }
            if !g.add_edge(e)? {
                return Err(Error::Parse(format!("duplicate edge {e:?}")));
            }
        }
        Ok(g)
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(g: Hypergraph) -> Self {
        HypergraphJson {
            n: g.n,
            edges: g.edges().map(|e| g.vertices(e)).collect(),
        }
    }
}

impl Hypergraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("a hypergraph needs at least one vertex".into()));
        }
        if n > HYPERGRAPH_CAP {
            return Err(Error::ResourceLimit {
                what: "n",
                limit: HYPERGRAPH_CAP,
                requested: n,
            });
        }
        Ok(Self {
            n,
            edges: BTreeSet::new(),
        })
    }

    /// The complete symmetric hypergraph `K_n^m`.
    pub fn symmetric(k: &CardinalityVector) -> Result<Self> {
        let mut g = Self::new(k.n())?;
        let n = k.n();
        let levels = k.mask();
        g.edges = (1u32..(1u32 << n))
            .filter(|e| (levels >> e.count_ones()) & 1 == 1)
            .collect();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds an edge given as 1-based vertices; returns false if it was present.
    pub fn add_edge(&mut self, vertices: &[usize]) -> Result<bool> {
        if vertices.is_empty() {
            return Err(Error::Precondition("hyperedges must be nonempty".into()));
        }
        let mut mask = 0u32;
        for &v in vertices {
            mask |= self.vertex_bit(v)?;
        }
        Ok(self.edges.insert(mask))
    }

    pub fn add_edge_mask(&mut self, mask: u32) -> Result<bool> {
        if mask == 0 || mask >> self.n != 0 {
            return Err(Error::Precondition(format!("bad edge mask {mask:#b}")));
        }
        Ok(self.edges.insert(mask))
    }

    pub fn edges(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Bit of vertex `v` (1-based) in basis indices and edge masks.
    pub fn vertex_bit(&self, v: usize) -> Result<u32> {
        vertex_bit(self.n, v)
    }

    /// 1-based sorted vertex list of an edge mask.
    pub fn vertices(&self, mask: u32) -> Vec<usize> {
        (1..=self.n)
            .filter(|&v| mask & (1u32 << (self.n - v)) != 0)
            .collect()
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field(
                "edges",
                &self.edges().map(|e| self.vertices(e)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

pub fn vertex_bit(n: usize, v: usize) -> Result<u32> {
    if v == 0 || v > n {
        return Err(Error::Precondition(format!("vertex {v} outside 1..={n}")));
    }
    Ok(1u32 << (n - v))
}

/// Dense vector of `2^n` complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amp: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amp.len(),
            });
        }
        Ok(Self { n, amp })
    }

    /// `|+⟩^⊗n`.
    pub fn uniform(n: usize) -> Result<Self> {
        check_dense(n)?;
        let a = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
        Ok(Self {
            n,
            amp: vec![a; 1 << n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.n == other.n && self.distance(other) < tol
    }

    /// Negates the amplitudes of basis states whose bits cover `mask`.
    pub fn apply_controlled_z(&mut self, mask: u32) {
        if mask == 0 {
            self.amp.iter_mut().for_each(|a| *a = -*a);
            return;
        }
        let mask = mask as usize;
        let free = ((1usize << self.n) - 1) & !mask;
        // Walk the subsets of the complement, each OR-ed with the edge.
        let mut sub = free;
        loop {
            let i = sub | mask;
            self.amp[i] = -self.amp[i];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
}

fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        return Err(Error::ResourceLimit {
            what: "n (dense)",
            limit: DENSE_CAP,
            requested: n,
        });
    }
    Ok(())
}

/// `(Π_e C_e) |+⟩^⊗n`, one masked sign-flip pass per hyperedge.
pub fn build_state(g: &Hypergraph) -> Result<StateVector> {
    let mut s = StateVector::uniform(g.n())?;
    for e in g.edges() {
        s.apply_controlled_z(e);
    }
    Ok(s)
}

/// `|K_n^m⟩` read off its weight sign vector.
pub fn build_symmetric_state(k: &CardinalityVector) -> Result<StateVector> {
    check_dense(k.n())?;
    let f = sign_vector(k);
    let scale = (0.5f64).powf(k.n() as f64 / 2.0);
    let amp = (0..1usize << k.n())
        .map(|i| Complex64::new(f.get(i.count_ones() as usize) as f64 * scale, 0.0))
        .collect();
    Ok(StateVector { n: k.n(), amp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A power of `i`: `i^k` for `k in 0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);
    pub const ALL: [Phase; 4] = [Self::ONE, Self::I, Self::MINUS_ONE, Self::MINUS_I];

    pub fn power_of_i(k: u64) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn value(self) -> Complex64 {
        match self.0 {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => -ONE,
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    fn prefix(self) -> &'static str {
        ["+", "+i", "-", "-i"][self.0 as usize]
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

impl std::ops::MulAssign for Phase {
    fn mul_assign(&mut self, other: Phase) {
        *self = *self * other;
    }
}

/// `phase · σ_1 ⊗ ... ⊗ σ_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    pub phase: Phase,
    pub letters: Vec<Pauli>,
}

impl PauliWord {
    pub fn new(phase: Phase, letters: Vec<Pauli>) -> Self {
        Self { phase, letters }
    }

    pub fn uniform(phase: Phase, letter: Pauli, n: usize) -> Self {
        Self::new(phase, vec![letter; n])
    }

    pub fn identity(n: usize) -> Self {
        Self::uniform(Phase::ONE, Pauli::I, n)
    }

    /// The word whose stability the class asserts: `X^⊗n`, `-X^⊗n` or `Y^⊗n`.
    pub fn for_class(class: StabilizerClass, n: usize) -> Option<Self> {
        match class {
            StabilizerClass::XPlus => Some(Self::uniform(Phase::ONE, Pauli::X, n)),
            StabilizerClass::XMinus => Some(Self::uniform(Phase::MINUS_ONE, Pauli::X, n)),
            StabilizerClass::YPlus => Some(Self::uniform(Phase::ONE, Pauli::Y, n)),
            StabilizerClass::Unstable => None,
        }
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == Phase::ONE && self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// `(x_mask, z_mask, base)` with `P|I⟩ = base · (-1)^{|I & z|} |I ^ x⟩`.
    fn action(&self) -> (usize, usize, Phase) {
        let n = self.n();
        let mut x = 0usize;
        let mut z = 0usize;
        let mut ys = 0u64;
        for (q, &p) in self.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                // Y = i X Z
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ys += 1;
                }
            }
        }
        (x, z, self.phase * Phase::power_of_i(ys))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    /// Parses an optional phase prefix (`+`, `-`, `+i`, `-i`, `i`) followed by letters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, s)
        };
        let letters = rest
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("bad Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty Pauli word".into()));
        }
        Ok(Self::new(phase, letters))
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A basis-state-to-basis-state gate.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    /// Generalized controlled-Z on a vertex bitmask; the empty mask is `-Id`.
    C(u32),
    Word(PauliWord),
    Scalar(Phase),
}

impl Gate {
    fn prepare(&self, n: usize) -> Result<(usize, usize, Phase, usize)> {
        // (x_mask, z_mask, phase, controlled_z_mask); controlled_z_mask = usize::MAX when unused
        let unused = usize::MAX;
        let bit = |q: usize| vertex_bit(n, q).map(|b| b as usize);
        Ok(match self {
            Gate::X(q) => (bit(*q)?, 0, Phase::ONE, unused),
            Gate::Z(q) => (0, bit(*q)?, Phase::ONE, unused),
            Gate::Y(q) => (bit(*q)?, bit(*q)?, Phase::I, unused),
            Gate::C(mask) => {
                if *mask as usize >> n != 0 {
                    return Err(Error::Precondition(format!("edge mask {mask:#b} exceeds n = {n}")));
                }
                (0, 0, Phase::ONE, *mask as usize)
            }
            Gate::Word(w) => {
                if w.n() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: w.n(),
                    });
                }
                let (x, z, p) = w.action();
                (x, z, p, unused)
            }
            Gate::Scalar(p) => (0, 0, *p, unused),
        })
    }
}

/// Compiled gate sequence acting on basis states.
struct Program {
    steps: Vec<(usize, usize, Phase, usize)>,
}

impl Program {
    fn compile(n: usize, gates: &[Gate]) -> Result<Self> {
        Ok(Self {
            steps: gates.iter().map(|g| g.prepare(n)).collect::<Result<_>>()?,
        })
    }

    /// Image of `|index⟩` as `(phase exponent, index')`, gates applied first to last.
    #[inline]
    fn run(&self, mut index: usize) -> (u8, usize) {
        let mut phase = 0u8;
        for &(x, z, p, c) in &self.steps {
            if c != usize::MAX {
                if index & c == c {
                    phase ^= 2;
                }
                continue;
            }
            // X^x Z^z |I⟩ with Z acting first.
            if (index & z).count_ones() % 2 == 1 {
                phase ^= 2;
            }
            phase = (phase + p.exponent()) & 3;
            index ^= x;
        }
        (phase, index)
    }
}

/// Applies `gates` in order (the first gate acts first).
pub fn apply_gates(gates: &[Gate], s: &StateVector) -> Result<StateVector> {
    let prog = Program::compile(s.n, gates)?;
    let mut out = vec![ZERO; s.amp.len()];
    for (i, &a) in s.amp.iter().enumerate() {
        let (p, j) = prog.run(i);
        out[j] += Phase(p).value() * a;
    }
    Ok(StateVector { n: s.n, amp: out })
}

/// Dense `2^n x 2^n` matrix of the gate sequence (first gate rightmost in the product).
pub fn dense_operator(n: usize, gates: &[Gate]) -> Result<Array2<Complex64>> {
    if n > DENSITY_CAP {
        return Err(Error::ResourceLimit {
            what: "n (dense operator)",
            limit: DENSITY_CAP,
            requested: n,
        });
    }
    let prog = Program::compile(n, gates)?;
    let dim = 1usize << n;
    let mut m = Array2::from_elem((dim, dim), ZERO);
    for col in 0..dim {
        let (p, row) = prog.run(col);
        m[[row, col]] += Phase(p).value();
    }
    Ok(m)
}

pub fn pauli_matrix(word: &PauliWord) -> Result<Array2<Complex64>> {
    dense_operator(word.n(), &[Gate::Word(word.clone())])
}

pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn apply_pauli(word: &PauliWord, s: &StateVector) -> Result<StateVector> {
    if word.n() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            found: word.n(),
        });
    }
    apply_gates(&[Gate::Word(word.clone())], s)
}

pub fn is_stabilized(word: &PauliWord, s: &StateVector) -> bool {
    apply_pauli(word, s).is_ok_and(|img| img.distance(s) < STATE_TOL)
}

/// Every `c·σ_1⊗...⊗σ_n` with `c ∈ {±1, ±i}` that fixes `s`, except the identity.
///
/// For each letter string `P` the expectation `λ = ⟨s|P|s⟩` is computed; since
/// `P` is unitary, `P|s⟩ = λ|s⟩` iff `|λ| = 1`, and then `c·P` stabilizes `s`
/// exactly for `c = λ̄`. This covers all `4·4^n` phased words.
pub fn search_local_pauli_stabilizers(s: &StateVector) -> Result<Vec<PauliWord>> {
    let n = s.n;
    if n > SEARCH_CAP {
        return Err(Error::ResourceLimit {
            what: "n (Pauli search)",
            limit: SEARCH_CAP,
            requested: n,
        });
    }
    let norm = s.norm_sqr();
    let words: Vec<PauliWord> = (0..1usize << (2 * n))
        .into_par_iter()
        .filter_map(|code| {
            let letters: Vec<Pauli> = (0..n).map(|q| Pauli::ALL[(code >> (2 * q)) & 3]).collect();
            let word = PauliWord::new(Phase::ONE, letters);
            let (x, z, base) = word.action();
            let base = base.value();
            let lambda: Complex64 = s
                .amp
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let sign = if (i & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                    s.amp[i ^ x].conj() * a * sign
                })
                .sum::<Complex64>()
                * base
                / norm;
            let phase = Phase::ALL
                .into_iter()
                .find(|p| (p.value() - lambda).norm() < STATE_TOL)?;
            let stab = PauliWord::new(phase.conj(), word.letters);
            (!stab.is_identity()).then_some(stab)
        })
        .collect();
    Ok(words)
}

/// `g_j = X_j Π_{e ∋ j} C_{e \ j}` as a gate sequence (diagonal part first).
pub fn g_operator_gates(g: &Hypergraph, j: usize) -> Result<Vec<Gate>> {
    let bit = g.vertex_bit(j)?;
    let mut gates: Vec<Gate> = g
        .edges()
        .filter(|e| e & bit != 0)
        .map(|e| Gate::C(e & !bit))
        .collect();
    gates.push(Gate::X(j));
    Ok(gates)
}

pub fn g_operator_apply(g: &Hypergraph, j: usize, s: &StateVector) -> Result<StateVector> {
    if g.n() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            found: g.n(),
        });
    }
    apply_gates(&g_operator_gates(g, j)?, s)
}

/// `Π_j g_j` as a gate sequence; the `g_j` commute, so the order is immaterial.
pub fn product_of_g_gates(g: &Hypergraph) -> Result<Vec<Gate>> {
    let mut all = Vec::new();
    for j in (1..=g.n()).rev() {
        all.extend(g_operator_gates(g, j)?);
    }
    Ok(all)
}

/// `|s⟩⟨s|`.
pub fn density_matrix(s: &StateVector) -> Result<Array2<Complex64>> {
    if s.n > DENSITY_CAP {
        return Err(Error::ResourceLimit {
            what: "n (density matrix)",
            limit: DENSITY_CAP,
            requested: s.n,
        });
    }
    let dim = s.amp.len();
    Ok(Array2::from_shape_fn((dim, dim), |(r, c)| {
        s.amp[r] * s.amp[c].conj()
    }))
}

/// Traces out the given 1-based qubits of an `n`-qubit density matrix.
///
/// The kept qubits stay in increasing order, so the first kept qubit is the
/// most significant bit of the reduced index.
pub fn partial_trace_dense(
    rho: &Array2<Complex64>,
    n: usize,
    traced: &[usize],
) -> Result<Array2<Complex64>> {
    let dim = 1usize << n;
    if rho.dim() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.nrows(),
        });
    }
    let traced: BTreeSet<usize> = traced.iter().copied().collect();
    if let Some(&q) = traced.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::Precondition(format!("qubit {q} outside 1..={n}")));
    }
    let kept: Vec<usize> = (1..=n).filter(|q| !traced.contains(q)).collect();
    let traced: Vec<usize> = traced.into_iter().collect();
    let kept_base = scatter_all(n, &kept);
    let traced_base = scatter_all(n, &traced);
    let out_dim = kept_base.len();
    Ok(Array2::from_shape_fn((out_dim, out_dim), |(a, b)| {
        traced_base
            .iter()
            .map(|&c| rho[[kept_base[a] | c, kept_base[b] | c]])
            .sum()
    }))
}

/// `tr_traced |s⟩⟨s|` without forming the full density matrix.
pub fn reduced_density_matrix(s: &StateVector, traced: &[usize]) -> Result<Array2<Complex64>> {
    let n = s.n;
    let traced: BTreeSet<usize> = traced.iter().copied().collect();
    if let Some(&q) = traced.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::Precondition(format!("qubit {q} outside 1..={n}")));
    }
    let kept: Vec<usize> = (1..=n).filter(|q| !traced.contains(q)).collect();
    if kept.len() > DENSITY_CAP {
        return Err(Error::ResourceLimit {
            what: "kept qubits (density matrix)",
            limit: DENSITY_CAP,
            requested: kept.len(),
        });
    }
    let traced: Vec<usize> = traced.into_iter().collect();
    let kept_base = scatter_all(n, &kept);
    let traced_base = scatter_all(n, &traced);
    let dim = kept_base.len();
    Ok(Array2::from_shape_fn((dim, dim), |(a, b)| {
        traced_base
            .iter()
            .map(|&c| s.amp[kept_base[a] | c] * s.amp[kept_base[b] | c].conj())
            .sum()
    }))
}

/// Full basis index for every local index over `qubits` (first qubit most significant).
fn scatter_all(n: usize, qubits: &[usize]) -> Vec<usize> {
    let len = qubits.len();
    (0..1usize << len)
        .map(|local| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                if (local >> (len - 1 - pos)) & 1 == 1 {
                    acc | (1usize << (n - q))
                } else {
                    acc
                }
            })
        })
        .collect()
}

/// Purity `tr(ρ²)` of a Hermitian matrix.
pub fn purity(rho: &Array2<Complex64>) -> f64 {
    rho.iter().map(|x| x.norm_sqr()).sum()
}

pub fn trace(rho: &Array2<Complex64>) -> Complex64 {
    rho.diag().iter().sum()
}
