//! The Mermin-type operator `M = Σ_j g_j + Π_j g_j` on symmetric hypergraph states.
//!
//! Quantum side: every `g_j` fixes `|K⟩`, and for an `X`-class state the
//! product `Π_j g_j` collapses to `±X^⊗n`, so `⟨M⟩ = n ± 1`.
//!
//! Classical side: each distinct subset `T = e \ {j}` becomes a ±1 variable
//! `c_T` (with `c_∅ = -1` fixed), each `X_j` a ±1 variable, and
//! `M = Σ_j X_j C_j + s Π_j X_j` where `C_j = Π_{e ∋ j} c_{e\j}` and `s` is the
//! sign of `Π_j g_j`.
//!
//! Assignments are encoded as integers: bit `i` set means variable `i` is
//! `-1`. Variables `0..n` are `X_1..X_n`, followed by the `c_T` ordered by
//! `|T|` and then by vertex list.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, StabilizerClass};
use crate::error::{Error, Result};
use crate::pascal::binom_mod2;
use crate::statevec::{self, Hypergraph, Pauli, PauliWord, Phase};
use crate::sym_core::CardinalityVector;

/// Largest variable count settled by exhaustive search.
pub const EXHAUSTIVE_CAP: usize = 26;
/// Default number of random restarts above the exhaustive cap.
pub const DEFAULT_RESTARTS: usize = 256;
/// Largest `n` for the dense quantum value.
pub const QUANTUM_CAP: usize = 14;

/// `Π_j g_j` computed symbolically, or `None` when it is not a local Pauli word.
///
/// A residual gate `C_S` with `|S| = d >= 1` arises once for every hyperedge
/// `e ⊋ S` (taking `f = e \ S`), so its multiplicity is
/// `Σ_{m_i >= d+1} C(n-d, m_i-d)`. Surviving `d = 1` gates form `Z^⊗n`, and
/// `X^⊗n Z^⊗n = (-i)^n Y^⊗n`.
pub fn symbolic_product_of_g(k: &CardinalityVector) -> Option<PauliWord> {
    let n = k.n();
    let multiplicity = |d: usize| {
        k.m()
            .iter()
            .filter(|&&mi| mi > d)
            .fold(0u8, |acc, &mi| acc ^ binom_mod2((n - d) as u64, (mi - d) as u64))
    };
    if (2..n).any(|d| multiplicity(d) == 1) {
        return None;
    }
    let sign = if k.edge_count_parity() == 1 {
        Phase::MINUS_ONE
    } else {
        Phase::ONE
    };
    Some(if n >= 1 && multiplicity(1) == 1 {
        // (-i)^n = i^{3n}
        PauliWord::uniform(sign * Phase::power_of_i(3 * n as u64), Pauli::Y, n)
    } else {
        PauliWord::uniform(sign, Pauli::X, n)
    })
}

/// `Π_j g_j` for a stable state, checked against its class.
pub fn product_of_g(k: &CardinalityVector) -> Result<PauliWord> {
    let class = classify(k);
    let expected = PauliWord::for_class(class, k.n())
        .ok_or_else(|| Error::Precondition(format!("{k} has no local Pauli stabilizer")))?;
    match symbolic_product_of_g(k) {
        Some(w) if w == expected => Ok(w),
        other => Err(Error::Consistency(format!(
            "product of g_j for {k} is {other:?}, class {class} predicts {expected}"
        ))),
    }
}

/// `⟨K| Σ_j g_j + Π_j g_j |K⟩`, evaluated on the dense state.
pub fn quantum_value(k: &CardinalityVector) -> Result<f64> {
    let class = classify(k);
    if class != StabilizerClass::XMinus {
        return Err(Error::Precondition(format!("{k} is {class}, not X_MINUS")));
    }
    if k.n() > QUANTUM_CAP {
        return Err(Error::ResourceLimit {
            what: "n (quantum value)",
            limit: QUANTUM_CAP,
            requested: k.n(),
        });
    }
    mermin_expectation(&Hypergraph::symmetric(k)?)
}

/// `⟨G| Σ_j g_j + Π_j g_j |G⟩` for any hypergraph.
pub fn mermin_expectation(g: &Hypergraph) -> Result<f64> {
    let s = statevec::build_state(g)?;
    let mut total = 0.0;
    for j in 1..=g.n() {
        total += s.inner(&statevec::g_operator_apply(g, j, &s)?).re;
    }
    let all = statevec::apply_gates(&statevec::product_of_g_gates(g)?, &s)?;
    Ok(total + s.inner(&all).re)
}

/// The classical variables of `M` for a symmetric state.
#[derive(Clone, Debug)]
pub struct MerminSystem {
    n: usize,
    /// Sign `s` of `Π_j g_j = s X^⊗n`.
    sign: i64,
    /// Subset masks of the `c_T` variables (vertex `v` is bit `n - v`).
    subsets: Vec<u32>,
    /// `C_j` picks up the fixed `c_∅ = -1` (a level of size 1 exists).
    empty_factor: i64,
}

impl MerminSystem {
    pub fn new(k: &CardinalityVector) -> Result<Self> {
        let n = k.n();
        if n > 31 {
            return Err(Error::ResourceLimit {
                what: "n (classical variables)",
                limit: 31,
                requested: n,
            });
        }
        let sign = match product_of_g(k)? {
            w if w == PauliWord::uniform(Phase::ONE, Pauli::X, n) => 1,
            w if w == PauliWord::uniform(Phase::MINUS_ONE, Pauli::X, n) => -1,
            w => {
                return Err(Error::Precondition(format!(
                    "{k} has Π g_j = {w}, which has no classical ±1 value"
                )))
            }
        };
        let mut subsets = Vec::new();
        for &mi in k.m().iter().filter(|&&mi| mi >= 2) {
            let mut level: Vec<u32> = (1u32..(1u32 << n))
                .filter(|t| t.count_ones() as usize == mi - 1)
                .collect();
            level.sort_by_key(|&t| vertex_list(n, t));
            subsets.extend(level);
        }
        Ok(Self {
            n,
            sign,
            subsets,
            empty_factor: if k.m().first() == Some(&1) { -1 } else { 1 },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Total number of free variables `V`.
    pub fn variable_count(&self) -> usize {
        self.n + self.subsets.len()
    }

    /// 1-based vertex lists of the `c_T` variables, in variable order.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        self.subsets.iter().map(|&t| vertex_list(self.n, t)).collect()
    }

    /// `C_j` for each `j` under the given `c_T` values.
    pub fn c_products(&self, c: &[i8]) -> Vec<i64> {
        (1..=self.n)
            .map(|j| {
                let bit = 1u32 << (self.n - j);
                self.subsets
                    .iter()
                    .zip(c)
                    .filter(|(&t, _)| t & bit == 0)
                    .fold(self.empty_factor, |acc, (_, &v)| acc * v as i64)
            })
            .collect()
    }

    /// `M` for explicit variable values.
    pub fn value(&self, x: &[i8], c: &[i8]) -> i64 {
        let cj = self.c_products(c);
        let sum: i64 = x.iter().zip(&cj).map(|(&xj, &cj)| xj as i64 * cj).sum();
        let prod: i64 = x.iter().map(|&v| v as i64).product();
        sum + self.sign * prod
    }

    /// `Π_j C_j` from the parity of how often each `c_T` occurs: `c_T` sits
    /// in the `n - |T|` products `C_j` with `j ∉ T`, and `c_∅` in all `n`.
    pub fn parity_product(&self, c: &[i8]) -> i64 {
        let mut acc = if self.n % 2 == 1 { self.empty_factor } else { 1 };
        for (&t, &v) in self.subsets.iter().zip(c) {
            if (self.n - t.count_ones() as usize) % 2 == 1 {
                acc *= v as i64;
            }
        }
        acc
    }

    pub fn assignment(&self, x: Vec<i8>, c: Vec<i8>) -> Result<ClassicalAssignment> {
        if x.len() != self.n || c.len() != self.subsets.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variable_count(),
                found: x.len() + c.len(),
            });
        }
        if x.iter().chain(&c).any(|v| v.abs() != 1) {
            return Err(Error::Precondition("classical variables must be ±1".into()));
        }
        Ok(ClassicalAssignment {
            x,
            c: self
                .subsets()
                .into_iter()
                .zip(c)
                .map(|(subset, value)| SubsetValue { subset, value })
                .collect(),
        })
    }

    /// Decodes an assignment integer (bit `i` set means variable `i` is `-1`).
    pub fn decode(&self, code: u64) -> ClassicalAssignment {
        let v = |i: usize| if (code >> i) & 1 == 1 { -1 } else { 1 };
        let x = (0..self.n).map(v).collect();
        let c = (self.n..self.variable_count()).map(v).collect();
        self.assignment(x, c).expect("decoded assignment is well formed")
    }

    fn split<'a>(&self, a: &'a ClassicalAssignment) -> Result<(&'a [i8], Vec<i8>)> {
        let subsets = self.subsets();
        if a.x.len() != self.n
            || a.c.len() != subsets.len()
            || a.c.iter().zip(&subsets).any(|(sv, t)| &sv.subset != t)
        {
            return Err(Error::Precondition(
                "assignment variables do not match the state".into(),
            ));
        }
        if a.x.iter().chain(a.c.iter().map(|sv| &sv.value)).any(|v| v.abs() != 1) {
            return Err(Error::Precondition("classical variables must be ±1".into()));
        }
        Ok((&a.x, a.c.iter().map(|sv| sv.value).collect()))
    }

    /// Compiled form for fast exhaustive evaluation.
    fn compile(&self) -> Compiled {
        let columns = (1..=self.n)
            .map(|j| {
                let bit = 1u32 << (self.n - j);
                self.subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| t & bit == 0)
                    .fold(0u64, |acc, (i, _)| acc | (1u64 << (self.n + i)))
            })
            .collect();
        Compiled {
            n: self.n,
            sign: self.sign,
            empty_factor: self.empty_factor,
            columns,
        }
    }
}

struct Compiled {
    n: usize,
    sign: i64,
    empty_factor: i64,
    columns: Vec<u64>,
}

impl Compiled {
    #[inline]
    fn value(&self, code: u64) -> i64 {
        let mut sum = 0i64;
        for (j, &col) in self.columns.iter().enumerate() {
            let flips = ((code >> j) & 1) as u32 + (code & col).count_ones();
            sum += if flips.is_multiple_of(2) { 1 } else { -1 };
        }
        let sum = sum * self.empty_factor;
        let xs = code & ((1u64 << self.n) - 1);
        let prod = if xs.count_ones().is_multiple_of(2) { 1 } else { -1 };
        sum + self.sign * prod
    }
}

fn vertex_list(n: usize, mask: u32) -> Vec<usize> {
    (1..=n).filter(|&v| mask & (1u32 << (n - v)) != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetValue {
    pub subset: Vec<usize>,
    pub value: i8,
}

/// ±1 values for `X_1..X_n` and for every `c_T`, `T` a 1-based vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalAssignment {
    pub x: Vec<i8>,
    pub c: Vec<SubsetValue>,
}

impl ClassicalAssignment {
    /// Sets the variable for `subset` (1-based vertex list); returns false if it does not exist.
    pub fn set_c(&mut self, subset: &[usize], value: i8) -> bool {
        match self.c.iter_mut().find(|sv| sv.subset == subset) {
            Some(sv) => {
                sv.value = value;
                true
            }
            None => false,
        }
    }
}

/// `M` under a classical assignment.
pub fn classical_value(k: &CardinalityVector, a: &ClassicalAssignment) -> Result<i64> {
    let sys = MerminSystem::new(k)?;
    let (x, c) = sys.split(a)?;
    Ok(sys.value(x, &c))
}

/// How the classical maximum is searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Exhaustive search when `V` is at most this.
    pub exhaustive_cap: usize,
    /// Random restarts otherwise.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            exhaustive_cap: EXHAUSTIVE_CAP,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MerminReport {
    pub state: CardinalityVector,
    pub quantum: f64,
    pub classical_max: i64,
    pub exhaustive: bool,
    pub variables: usize,
    pub witness: ClassicalAssignment,
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
}

/// Largest classical value of `M` for an `X_MINUS` state, plus the quantum value.
pub fn classical_max(k: &CardinalityVector, budget: SearchBudget) -> Result<MerminReport> {
    let quantum = quantum_value(k)?;
    let sys = MerminSystem::new(k)?;
    let v = sys.variable_count();
    let (best, witness, exhaustive, seed, iterations) = if v <= budget.exhaustive_cap.min(62) {
        let (best, code) = exhaustive_max(&sys);
        (best, sys.decode(code), true, None, None)
    } else {
        let (best, x, c, iters) = hill_climb(&sys, budget);
        (best, sys.assignment(x, c)?, false, Some(budget.seed), Some(iters))
    };
    Ok(MerminReport {
        state: k.clone(),
        quantum,
        classical_max: best,
        exhaustive,
        variables: v,
        witness,
        violation: quantum > best as f64 + 1e-9,
        seed,
        iterations,
    })
}

/// Maximum over all `2^V` assignments and the smallest code attaining it.
fn exhaustive_max(sys: &MerminSystem) -> (i64, u64) {
    let compiled = sys.compile();
    let v = sys.variable_count();
    let chunk_bits = v.saturating_sub(8).min(v);
    let chunks = 1u64 << (v - chunk_bits);
    (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let base = hi << chunk_bits;
            let mut best = (i64::MIN, 0u64);
            for lo in 0..(1u64 << chunk_bits) {
                let code = base | lo;
                let val = compiled.value(code);
                if val > best.0 {
                    best = (val, code);
                }
            }
            best
        })
        .reduce(
            || (i64::MIN, u64::MAX),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    a
                } else {
                    b
                }
            },
        )
}

/// Seeded restarts of best-improvement single-flip hill climbing.
///
/// Returns the best value, its assignment and the number of flips evaluated.
fn hill_climb(sys: &MerminSystem, budget: SearchBudget) -> (i64, Vec<i8>, Vec<i8>, u64) {
    let n = sys.n;
    let members: Vec<Vec<usize>> = sys
        .subsets
        .iter()
        .map(|&t| (0..n).filter(|&j| t & (1u32 << (n - 1 - j)) == 0).collect())
        .collect();
    let results: Vec<(i64, Vec<i8>, Vec<i8>, u64)> = (0..budget.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(r as u64);
            let mut x: Vec<i8> = (0..n).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let mut c: Vec<i8> = (0..sys.subsets.len())
                .map(|_| if rng.random() { 1 } else { -1 })
                .collect();
            let mut cj = sys.c_products(&c);
            let mut evaluated = 0u64;
            loop {
                let prod: i64 = x.iter().map(|&v| v as i64).product();
                let mut best_delta = 0i64;
                let mut best_var = None;
                for j in 0..n {
                    let d = -2 * x[j] as i64 * cj[j] - 2 * sys.sign * prod;
                    if d > best_delta {
                        best_delta = d;
                        best_var = Some(j);
                    }
                }
                for (i, m) in members.iter().enumerate() {
                    let d: i64 = m.iter().map(|&j| -2 * x[j] as i64 * cj[j]).sum();
                    if d > best_delta {
                        best_delta = d;
                        best_var = Some(n + i);
                    }
                }
                evaluated += sys.variable_count() as u64;
                match best_var {
                    None => break,
                    Some(j) if j < n => x[j] = -x[j],
                    Some(v) => {
                        c[v - n] = -c[v - n];
                        for &j in &members[v - n] {
                            cj[j] = -cj[j];
                        }
                    }
                }
            }
            (sys.value(&x, &c), x, c, evaluated)
        })
        .collect();
    let total: u64 = results.iter().map(|r| r.3).sum();
    // First restart attaining the maximum, for determinism.
    let best = results
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one restart");
    (best.0, best.1, best.2, total)
}

/// The two-level chain: `down`, prepend level 1, then `up` until an
/// `X_MINUS` state is reached. The start is not included.
pub fn build_two_level_family(start: &CardinalityVector) -> Result<Vec<CardinalityVector>> {
    let class = classify(start);
    if class != StabilizerClass::XMinus || start.k() != 1 || start.m()[0] < 2 {
        return Err(Error::Precondition(format!(
            "the chain starts from a single-level X_MINUS state with m >= 2, got {start} ({class})"
        )));
    }
    let down = start.down()?;
    let mut chain = vec![down.clone()];
    let mut cur = CardinalityVector::new(
        down.n(),
        std::iter::once(1).chain(down.m().iter().copied()).collect(),
    )?;
    chain.push(cur.clone());
    while classify(&cur) != StabilizerClass::XMinus {
        cur = cur.up(false)?;
        chain.push(cur.clone());
    }
    let n = cur.n();
    if let Some(&bad) = cur.m().iter().find(|&&mi| (n - mi + 1) % 2 == 1) {
        return Err(Error::Consistency(format!(
            "terminal state {cur} has n - m + 1 odd at level {bad}"
        )));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::{dense_operator, max_abs_diff, pauli_matrix, OPERATOR_TOL};
    use crate::sym_core::all_nonempty;

    fn k(text: &str) -> CardinalityVector {
        text.parse().unwrap()
    }

    fn word(text: &str) -> PauliWord {
        text.parse().unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_of_g(&k("K6^3")).unwrap(), word("XXXXXX"));
        assert_eq!(product_of_g(&k("K7^4")).unwrap(), word("-XXXXXXX"));
        assert_eq!(product_of_g(&k("K4^3")).unwrap(), word("YYYY"));
        assert!(matches!(product_of_g(&k("K3^3")), Err(Error::Precondition(_))));
    }

    #[test]
    fn symbolic_product_matches_dense() {
        for n in 1..=7 {
            for v in all_nonempty(n) {
                let g = Hypergraph::symmetric(&v).unwrap();
                let dense = dense_operator(n, &statevec::product_of_g_gates(&g).unwrap()).unwrap();
                match symbolic_product_of_g(&v) {
                    Some(w) => {
                        let diff = max_abs_diff(&dense, &pauli_matrix(&w).unwrap());
                        assert!(diff < OPERATOR_TOL, "{v:?} {w}");
                    }
                    None => {
                        // Not a local Pauli word: off-diagonal support is a single
                        // permutation, so some entry has a basis-dependent sign.
                        let x = pauli_matrix(&PauliWord::uniform(Phase::ONE, Pauli::X, n)).unwrap();
                        let y = pauli_matrix(&PauliWord::uniform(Phase::ONE, Pauli::Y, n)).unwrap();
                        for p in Phase::ALL {
                            let c = num_complex::Complex64::from(p.value());
                            assert!(max_abs_diff(&dense, &x.mapv(|e| e * c)) > 0.5);
                            assert!(max_abs_diff(&dense, &y.mapv(|e| e * c)) > 0.5);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quantum_values() {
        for (t, want) in [("K3^2", 4.0), ("K5^3,4", 6.0), ("K7^4", 8.0)] {
            assert!((quantum_value(&k(t)).unwrap() - want).abs() < 1e-10, "{t}");
        }
        assert!(quantum_value(&k("K6^3")).is_err());
    }

    #[test]
    fn variable_counts() {
        for (t, v) in [("K3^2", 6), ("K7^2", 14), ("K5^3,4", 25), ("K7^4", 42)] {
            assert_eq!(MerminSystem::new(&k(t)).unwrap().variable_count(), v, "{t}");
        }
    }

    #[test]
    fn all_plus_gives_n_minus_one() {
        for t in ["K3^2", "K5^3,4", "K7^4", "K7^2"] {
            let v = k(t);
            let sys = MerminSystem::new(&v).unwrap();
            assert_eq!(classical_value(&v, &sys.decode(0)).unwrap(), v.n() as i64 - 1);
        }
    }

    #[test]
    fn counterexample_witness() {
        let v = k("K5^3,4");
        let sys = MerminSystem::new(&v).unwrap();
        let mut a = sys.decode(0);
        for j in [3, 4, 5] {
            a.x[j - 1] = -1;
        }
        assert!(a.set_c(&[1, 2], -1));
        assert_eq!(classical_value(&v, &a).unwrap(), 6);
    }

    #[test]
    fn flipping_all_x_keeps_product_for_even_n() {
        let v = k("K6^3"); // X_PLUS, s = +1
        let sys = MerminSystem::new(&v).unwrap();
        let c = vec![1i8; sys.variable_count() - 6];
        let x = vec![1i8, -1, 1, 1, -1, 1];
        let flipped: Vec<i8> = x.iter().map(|v| -v).collect();
        let prod = |x: &[i8]| x.iter().map(|&v| v as i64).product::<i64>();
        assert_eq!(prod(&x), prod(&flipped));
        let a = sys.value(&x, &c) - sys.value(&flipped, &c);
        let sums: i64 = sys.c_products(&c).iter().zip(&x).map(|(cj, &xj)| 2 * cj * xj as i64).sum();
        assert_eq!(a, sums);
    }

    #[test]
    fn domain_mismatch_is_rejected() {
        let a = MerminSystem::new(&k("K3^2")).unwrap().decode(0);
        assert!(classical_value(&k("K5^3,4"), &a).is_err());
        let mut bad = a.clone();
        bad.x[0] = 0;
        assert!(classical_value(&k("K3^2"), &bad).is_err());
    }

    /// Best over `X` for fixed `c`: `n + 1` when `s Π C_j = 1`, else `n - 1`.
    fn closed_form_max(sys: &MerminSystem) -> i64 {
        let cv = sys.variable_count() - sys.n();
        let reachable = (0..1u64 << cv).any(|code| {
            let c: Vec<i8> = (0..cv).map(|i| if (code >> i) & 1 == 1 { -1 } else { 1 }).collect();
            sys.sign() * sys.c_products(&c).iter().product::<i64>() == 1
        });
        sys.n() as i64 + if reachable { 1 } else { -1 }
    }

    #[test]
    fn exhaustive_agrees_with_closed_form() {
        for n in 1..=7 {
            for v in all_nonempty(n) {
                let Ok(sys) = MerminSystem::new(&v) else { continue };
                if sys.variable_count() > 20 {
                    continue;
                }
                let (best, code) = exhaustive_max(&sys);
                assert_eq!(best, closed_form_max(&sys), "{v:?}");
                assert_eq!(sys.compile().value(code), best);
            }
        }
    }

    #[test]
    fn compiled_value_matches_direct() {
        let sys = MerminSystem::new(&k("K5^3,4")).unwrap();
        let compiled = sys.compile();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let code: u64 = rng.random_range(0..1u64 << 25);
            let a = sys.decode(code);
            let (x, c) = sys.split(&a).unwrap();
            assert_eq!(compiled.value(code), sys.value(x, &c));
        }
    }

    #[test]
    fn parity_product_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for t in ["K5^3,4", "K3^2", "K7^4", "K6^3", "K3^1,2"] {
            let Ok(sys) = MerminSystem::new(&k(t)) else { continue };
            for _ in 0..200 {
                let c: Vec<i8> = (0..sys.variable_count() - sys.n())
                    .map(|_| if rng.random() { 1 } else { -1 })
                    .collect();
                assert_eq!(sys.parity_product(&c), sys.c_products(&c).iter().product::<i64>());
            }
        }
    }

    #[test]
    fn small_reports() {
        let r = classical_max(&k("K3^2"), SearchBudget::default()).unwrap();
        assert_eq!(r.classical_max, 2);
        assert!(r.exhaustive && r.violation);
        assert_eq!(r.quantum.round(), 4.0);
        let r = classical_max(&k("K7^2"), SearchBudget::default()).unwrap();
        assert!(r.classical_max <= 6 && r.violation);
    }

    #[test]
    fn randomized_fallback_is_reproducible() {
        let budget = SearchBudget {
            exhaustive_cap: 10,
            restarts: 16,
            seed: 42,
        };
        let a = classical_max(&k("K7^4"), budget).unwrap();
        let b = classical_max(&k("K7^4"), budget).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhaustive);
        assert_eq!(a.seed, Some(42));
        assert!(a.classical_max <= 6);
        assert_eq!(classical_value(&k("K7^4"), &a.witness).unwrap(), a.classical_max);
    }

    #[test]
    fn two_level_chain() {
        let chain = build_two_level_family(&k("K7^4")).unwrap();
        let texts: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            texts,
            ["K6^3", "K6^1,3", "K7^2,4", "K8^3,5", "K9^4,6", "K10^5,7", "K11^6,8"]
        );
        assert_eq!(classify(chain.last().unwrap()), StabilizerClass::XMinus);
        assert!(build_two_level_family(&k("K6^3")).is_err());
        assert!(build_two_level_family(&k("K5^3,4")).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = classical_max(&k("K3^2"), SearchBudget::default()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in ["state", "quantum", "classical_max", "exhaustive", "witness", "violation"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json.get("seed").is_none());
    }
}
