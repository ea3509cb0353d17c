//! Partial traces of symmetric hypergraph states and reconstruction from them.
//!
//! Tracing out one qubit of `|K⟩` gives the equal mixture of the deleted and
//! shrunk states, and the two operations commute, so tracing `k` qubits gives
//! weight `C(k, j) / 2^k` to `D^j S^{k-j} K`, whose signed weight vector is
//! the window `(f_{k-j}, ..., f_{n-j})` of the parent.
//!
//! When every hyperedge has at least `k + 1` vertices, `f_0 = ... = f_k = 1`
//! and the first column of the reduced matrix determines the rest of `f` by
//! a forward recurrence.

use ndarray::Array2;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pascal::MAX_DIM;
use crate::statevec::{build_symmetric_state, DENSITY_CAP};
use crate::sym_core::{g_from_e, sign_vector, CardinalityVector, SignVector};

/// Snapping tolerance for recovered signs.
pub const SNAP_TOL: f64 = 1e-6;
/// Largest `k` handled by the exact binomial weights.
pub const MAX_TRACED: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixtureTerm {
    /// Exact weight `C(k, j) / 2^k`.
    #[serde(serialize_with = "ratio_text")]
    pub weight: Ratio<u64>,
    /// Number of deletions `j`; the remaining `k - j` steps are shrinks.
    pub deletions: usize,
    pub state: CardinalityVector,
    /// `sign_vector(state)`, which starts with `+1`.
    pub component: SignVector,
    /// Global sign from shrunk 1-edges (`C_∅ = -Id`).
    pub sign_flag: i8,
}

impl MixtureTerm {
    /// The component's weights including the global sign.
    pub fn signed_weights(&self) -> Vec<i8> {
        self.component.entries().iter().map(|&f| f * self.sign_flag).collect()
    }
}

fn ratio_text<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Convex combination of symmetric hypergraph states on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricMixture {
    pub n: usize,
    pub terms: Vec<MixtureTerm>,
}

impl SymmetricMixture {
    pub fn total_weight(&self) -> Ratio<u64> {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// `Σ w |ψ⟩⟨ψ|` as a dense matrix, with each component's global sign applied.
    pub fn density(&self) -> Result<Array2<Complex64>> {
        if self.n > DENSITY_CAP {
            return Err(Error::ResourceLimit {
                what: "n (density matrix)",
                limit: DENSITY_CAP,
                requested: self.n,
            });
        }
        let dim = 1usize << self.n;
        let mut rho = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
        for t in &self.terms {
            let psi = build_symmetric_state(&t.state)?;
            let sign = t.sign_flag as f64;
            let w = *t.weight.numer() as f64 / *t.weight.denom() as f64;
            let amp: Vec<Complex64> = psi.amplitudes().iter().map(|a| a * sign).collect();
            for (r, ar) in amp.iter().enumerate() {
                for (c, ac) in amp.iter().enumerate() {
                    rho[[r, c]] += ar * ac.conj() * w;
                }
            }
        }
        Ok(rho)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Mixture left after tracing out `k` qubits of `|K⟩`.
pub fn trace_mixture(k_state: &CardinalityVector, k: usize) -> Result<SymmetricMixture> {
    let n = k_state.n();
    if k >= n {
        return Err(Error::Precondition(format!(
            "cannot trace {k} of {n} qubits; at least one must remain"
        )));
    }
    if k > MAX_TRACED {
        return Err(Error::ResourceLimit {
            what: "k (traced qubits)",
            limit: MAX_TRACED,
            requested: k,
        });
    }
    let f = sign_vector(k_state);
    let denom = 1u64 << k;
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut state = k_state.clone();
        let mut sign = 1i8;
        for _ in 0..k - j {
            let s = state.shrink_vertex()?;
            sign *= s.sign;
            state = s.state;
        }
        for _ in 0..j {
            state = state.delete_vertex()?;
        }
        let term = MixtureTerm {
            weight: Ratio::new(binomial(k, j), denom),
            deletions: j,
            component: sign_vector(&state),
            state,
            sign_flag: sign,
        };
        let window = &f.entries()[k - j..=n - j];
        if term.signed_weights() != window {
            return Err(Error::Consistency(format!(
                "component D^{j} S^{} of {k_state} is not the window f[{}..={}]",
                k - j,
                k - j,
                n - j
            )));
        }
        terms.push(term);
    }
    Ok(SymmetricMixture { n: n - k, terms })
}

/// `v_j = Σ_t w_t f^{(t)}_j` over the signed component weights.
///
/// This is `2^{-k} Σ_ℓ C(k, ℓ) f_{j+ℓ}`. When the parent's smallest hyperedge
/// has at least `k + 1` vertices every component starts with `+1`, and `v` is
/// the first column of the reduced matrix scaled by `2^{n-k}`.
pub fn first_column(mix: &SymmetricMixture) -> Vec<f64> {
    first_column_exact(mix)
        .into_iter()
        .map(|r| *r.numer() as f64 / *r.denom() as f64)
        .collect()
}

pub fn first_column_exact(mix: &SymmetricMixture) -> Vec<Ratio<i64>> {
    (0..=mix.n)
        .map(|j| {
            mix.terms
                .iter()
                .map(|t| {
                    let w = Ratio::new(*t.weight.numer() as i64, *t.weight.denom() as i64);
                    w * (t.signed_weights()[j] as i64)
                })
                .sum()
        })
        .collect()
}

/// First column of a dense reduced density matrix, scaled by its dimension.
pub fn dense_first_column(rho: &Array2<Complex64>) -> Vec<f64> {
    let dim = rho.nrows() as f64;
    let m = rho.nrows().trailing_zeros() as usize;
    // Entry at the lowest index of each weight.
    (0..=m)
        .map(|w| {
            let index = if w == 0 { 0 } else { (1usize << w) - 1 };
            rho[[index, 0]].re * dim
        })
        .collect()
}

/// Coefficients used by the reconstruction recurrence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientVariant {
    /// `f_{j+k} = 2^k v_j - Σ_{ℓ<k} C(k, ℓ) f_{j+ℓ}`.
    #[default]
    Binomial,
    /// The same recurrence with `C(k+1, ℓ)` in place of `C(k, ℓ)`.
    PrintedShifted,
}

impl CoefficientVariant {
    pub const ALL: [CoefficientVariant; 2] = [Self::Binomial, Self::PrintedShifted];

    fn coefficient(self, k: usize, l: usize) -> f64 {
        match self {
            Self::Binomial => binomial(k, l) as f64,
            Self::PrintedShifted => binomial(k + 1, l) as f64,
        }
    }
}

/// Recovers the sign vector of an `n`-qubit state from the first column of
/// its reduced matrix on `n - k` qubits.
pub fn reconstruct(v: &[f64], n: usize, k: usize, variant: CoefficientVariant) -> Result<SignVector> {
    if k >= n || n + 1 > MAX_DIM {
        return Err(Error::Precondition(format!("need 0 <= k < n <= {}, got n = {n}, k = {k}", MAX_DIM - 1)));
    }
    if v.len() != n - k + 1 {
        return Err(Error::DimensionMismatch {
            expected: n - k + 1,
            found: v.len(),
        });
    }
    let scale = (1u64 << k) as f64;
    let mut f = vec![1i8; n + 1];
    for (j, &vj) in v.iter().enumerate() {
        let rest: f64 = (0..k).map(|l| variant.coefficient(k, l) * f[j + l] as f64).sum();
        let value = scale * vj - rest;
        if j == 0 {
            if (value - 1.0).abs() > SNAP_TOL {
                return Err(Error::PreconditionMismatch(format!(
                    "v_0 gives f_{k} = {value}, but the smallest hyperedge must have more than {k} vertices"
                )));
            }
            continue;
        }
        f[j + k] = if (value - 1.0).abs() <= SNAP_TOL {
            1
        } else if (value + 1.0).abs() <= SNAP_TOL {
            -1
        } else {
            return Err(Error::InconsistentInput(format!(
                "recovered f_{} = {value} is not ±1",
                j + k
            )));
        };
    }
    let f = SignVector::new(f)?;
    let recovered = f.to_cardinalities()?;
    debug_assert_eq!(g_from_e(&f.exponents())?.bits(), recovered.mask());
    if recovered.min_cardinality().is_some_and(|m1| m1 < k + 1) {
        return Err(Error::PreconditionMismatch(format!(
            "recovered {recovered} has a hyperedge with at most {k} vertices"
        )));
    }
    Ok(f)
}

/// Roundtrip failures of `variant` over every qualifying state with `n <= max_n`, `1 <= k <= max_k`.
pub fn roundtrip_failures(variant: CoefficientVariant, max_n: usize, max_k: usize) -> Result<usize> {
    let mut failures = 0;
    for n in 2..=max_n {
        for state in crate::sym_core::all_nonempty(n) {
            for k in 1..=max_k.min(n - 1) {
                if state.min_cardinality().is_some_and(|m1| m1 < k + 1) {
                    continue;
                }
                let v = first_column(&trace_mixture(&state, k)?);
                match reconstruct(&v, n, k, variant) {
                    Ok(f) if f == sign_vector(&state) => {}
                    _ => failures += 1,
                }
            }
        }
    }
    Ok(failures)
}
