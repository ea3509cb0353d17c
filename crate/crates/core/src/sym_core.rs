//! Data model for symmetric hypergraph states `|K_n^m⟩`.
//!
//! A symmetric hypergraph on `n` vertices is complete in each of the hyperedge
//! cardinalities `1 <= m_1 < ... < m_k <= n`. Three equivalent descriptions
//! are used throughout the crate:
//!
//! * the [`CardinalityVector`] `(n; m_1, ..., m_k)`,
//! * the cardinality indicator `g` (bit `w` set iff `w` is one of the `m_j`),
//! * the exponent vector `e` of the weight sign vector, `f_w = (-1)^{e_w}`.
//!
//! `e = A g` and `g = A e` over GF(2), where `A` is the Pascal matrix mod 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pascal::{binom_mod2, pascal_matrix};

/// Largest qubit count representable by the bitmask views (`n + 1 <= 128`).
pub const MAX_QUBITS: usize = 127;

/// `(n; m_1 < ... < m_k)`, the name of the symmetric hypergraph `K_n^m`.
///
/// `k = 0` (no hyperedges) is accepted as an intermediate value; it names `|+⟩^⊗n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCardinalities")]
pub struct CardinalityVector {
    n: usize,
    m: Vec<usize>,
}

#[derive(Deserialize)]
struct RawCardinalities {
    n: usize,
    m: Vec<usize>,
}

impl TryFrom<RawCardinalities> for CardinalityVector {
    type Error = Error;

    fn try_from(raw: RawCardinalities) -> Result<Self> {
        CardinalityVector::new(raw.n, raw.m)
    }
}

impl CardinalityVector {
    pub fn new(n: usize, m: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCardinalities("n must be at least 1".into()));
        }
        if n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "n",
                limit: MAX_QUBITS,
                requested: n,
            });
        }
        if m.first() == Some(&0) {
            return Err(Error::InvalidCardinalities(
                "hyperedge cardinalities must be positive".into(),
            ));
        }
        if m.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCardinalities(
                "cardinalities must be strictly increasing".into(),
            ));
        }
        if m.last().is_some_and(|&top| top > n) {
            return Err(Error::InvalidCardinalities(format!(
                "cardinality {} exceeds n = {n}",
                m.last().unwrap()
            )));
        }
        Ok(Self { n, m })
    }

    /// Single-level state `K_n^m`.
    pub fn single(n: usize, m: usize) -> Result<Self> {
        Self::new(n, vec![m])
    }

    /// Edgeless hypergraph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Build from a cardinality bitmask (bit `w` set iff level `w` is present).
    pub fn from_mask(n: usize, mask: u128) -> Result<Self> {
        if mask & 1 == 1 {
            return Err(Error::InvalidCardinalities(
                "cardinality 0 is not a hyperedge".into(),
            ));
        }
        if n < 127 && mask >> (n + 1) != 0 {
            return Err(Error::InvalidCardinalities(format!(
                "mask has levels above n = {n}"
            )));
        }
        Self::new(n, bits(mask).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.m.is_empty()
    }

    pub fn min_cardinality(&self) -> Option<usize> {
        self.m.first().copied()
    }

    /// Cardinality bitmask: bit `w` is set iff `w` is a level.
    pub fn mask(&self) -> u128 {
        self.m.iter().fold(0u128, |acc, &w| acc | (1u128 << w))
    }

    /// Number of hyperedges modulo 2, `Σ_j C(n, m_j) mod 2`.
    pub fn edge_count_parity(&self) -> u8 {
        self.m
            .iter()
            .fold(0u8, |acc, &mj| acc ^ binom_mod2(self.n as u64, mj as u64))
    }

    /// Down map `(n, m) -> (n-1, m-1)`, dropping a resulting zero level.
    pub fn down(&self) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::Underflow(self.n));
        }
        let m = self.m.iter().filter(|&&mj| mj > 1).map(|mj| mj - 1).collect();
        Self::new(self.n - 1, m)
    }

    /// Up map `(n, m) -> (n+1, m+1)`, optionally prepending the level 1.
    pub fn up(&self, prepend_one: bool) -> Result<Self> {
        let mut m = Vec::with_capacity(self.m.len() + 1);
        if prepend_one {
            m.push(1);
        }
        m.extend(self.m.iter().map(|mj| mj + 1));
        Self::new(self.n + 1, m)
    }

    /// Remove one vertex together with every hyperedge containing it.
    pub fn delete_vertex(&self) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::Underflow(self.n));
        }
        let m = self.m.iter().copied().filter(|&mj| mj != self.n).collect();
        Self::new(self.n - 1, m)
    }

    /// Remove one vertex but keep its hyperedges, shrunk by one.
    ///
    /// Levels `w` of the result follow `g'_w = g_w + g_{w+1} (mod 2)`: a
    /// `w`-subset of the remaining vertices receives one `C_e` from level `w`
    /// and one from level `w+1`, and `C_e^2 = Id`. A shrunk 1-edge becomes
    /// `C_∅ = -Id`, which is reported as the global sign of the result.
    pub fn shrink_vertex(&self) -> Result<SignedState> {
        if self.n < 2 {
            return Err(Error::Underflow(self.n));
        }
        let g = self.mask();
        let shrunk = (g ^ (g >> 1)) & low_mask(self.n);
        let sign = if shrunk & 1 == 1 { -1 } else { 1 };
        Ok(SignedState {
            state: Self::from_mask(self.n - 1, shrunk & !1)?,
            sign,
        })
    }

    /// Render as the text form `K<n>^<m1,m2,...>`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CardinalityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}^", self.n)?;
        for (i, mj) in self.m.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{mj}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CardinalityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CardinalityVector {
    type Err = Error;

    /// Parses `K<digits>^<digits>(,<digits>)*`; an empty level list parses as edgeless.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected K<n>^<m1,m2,...>, got {s:?}"));
        let rest = s.trim().strip_prefix('K').ok_or_else(bad)?;
        let (n_text, m_text) = rest.split_once('^').ok_or_else(bad)?;
        let n: usize = parse_digits(n_text).ok_or_else(bad)?;
        let m = if m_text.is_empty() {
            Vec::new()
        } else {
            m_text
                .split(',')
                .map(|t| parse_digits(t).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        CardinalityVector::new(n, m).map_err(|e| match e {
            Error::ResourceLimit { .. } => e,
            other => Error::Parse(other.to_string()),
        })
    }
}

fn parse_digits(t: &str) -> Option<usize> {
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// A state together with a global sign (from `C_∅ = -Id` factors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedState {
    pub state: CardinalityVector,
    pub sign: i8,
}

/// GF(2) vector of length `n + 1` stored as a bitmask; bit 0 is always clear.
///
/// Serves as both the cardinality indicator `g` and the sign exponent `e`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndicatorVector {
    n: usize,
    bits: u128,
}

impl IndicatorVector {
    pub fn new(n: usize, bits: u128) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "n",
                limit: MAX_QUBITS,
                requested: n,
            });
        }
        if bits & !low_mask(n + 1) != 0 {
            return Err(Error::InvalidCardinalities(format!(
                "indicator has bits beyond position {n}"
            )));
        }
        if bits & 1 == 1 {
            return Err(Error::InvalidSignVector(
                "bit 0 must be clear: no state has f_0 = -1".into(),
            ));
        }
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn get(&self, w: usize) -> u8 {
        ((self.bits >> w) & 1) as u8
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..=self.n).map(|w| self.get(w)).collect()
    }
}

impl fmt::Debug for IndicatorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

pub fn indicator_from_cardinalities(k: &CardinalityVector) -> IndicatorVector {
    IndicatorVector {
        n: k.n,
        bits: k.mask(),
    }
}

pub fn cardinalities_from_indicator(g: &IndicatorVector) -> CardinalityVector {
    CardinalityVector::from_mask(g.n, g.bits).expect("indicator invariants hold")
}

/// `e = A g`: `e_w = Σ_j C(w, m_j) mod 2`.
pub fn e_from_g(g: &IndicatorVector) -> IndicatorVector {
    let bits = exponent_bits(g.n, g.bits);
    IndicatorVector { n: g.n, bits }
}

/// `g = A e`, recovering the hypergraph from its sign exponents.
pub fn g_from_e(e: &IndicatorVector) -> Result<IndicatorVector> {
    if e.bits & 1 == 1 {
        return Err(Error::InvalidSignVector("e_0 = 1".into()));
    }
    let a = pascal_matrix(e.n)?;
    IndicatorVector::new(e.n, a.mul_vec(e.bits))
}

/// Sign exponents of `K_n^g` as a bitmask over weights `0..=n`.
pub(crate) fn exponent_bits(n: usize, g: u128) -> u128 {
    let mut e = 0u128;
    for w in 0..=n {
        let mut levels = g;
        let mut parity = 0u8;
        while levels != 0 {
            let mj = levels.trailing_zeros() as u64;
            parity ^= binom_mod2(w as u64, mj);
            levels &= levels - 1;
        }
        e |= (parity as u128) << w;
    }
    e
}

/// The weight sign vector `(f_0, ..., f_n)`, each entry `±1`, with `f_0 = +1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignVector {
    f: Vec<i8>,
}

impl SignVector {
    pub fn new(f: Vec<i8>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidSignVector("empty".into()));
        }
        if f.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidSignVector("entries must be ±1".into()));
        }
        if f[0] != 1 {
            return Err(Error::InvalidSignVector("f_0 must be +1".into()));
        }
        Ok(Self { f })
    }

    pub fn from_exponents(e: &IndicatorVector) -> Self {
        Self {
            f: (0..=e.n)
                .map(|w| if e.get(w) == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.f.len() - 1
    }

    pub fn entries(&self) -> &[i8] {
        &self.f
    }

    pub fn get(&self, w: usize) -> i8 {
        self.f[w]
    }

    pub fn exponents(&self) -> IndicatorVector {
        let bits = self
            .f
            .iter()
            .enumerate()
            .fold(0u128, |acc, (w, &x)| acc | (((x < 0) as u128) << w));
        IndicatorVector { n: self.n(), bits }
    }

    /// The hypergraph whose state has this sign vector.
    pub fn to_cardinalities(&self) -> Result<CardinalityVector> {
        Ok(cardinalities_from_indicator(&g_from_e(&self.exponents())?))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.f)
    }
}

pub fn sign_vector(k: &CardinalityVector) -> SignVector {
    SignVector::from_exponents(&e_from_g(&indicator_from_cardinalities(k)))
}

pub(crate) fn low_mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Every cardinality vector on `n` vertices with at least one level, in mask order.
pub fn all_nonempty(n: usize) -> impl Iterator<Item = CardinalityVector> {
    assert!(n < 63, "exhaustive iteration limited to n < 63");
    (1u64..(1u64 << n)).map(move |s| {
        CardinalityVector::from_mask(n, (s as u128) << 1).expect("valid by construction")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(text: &str) -> CardinalityVector {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(k("K11^6,8").to_string(), "K11^6,8");
        assert_eq!(k("K4^3").m(), &[3]);
        assert!(k("K3^").is_edgeless());
        for bad in ["K0^", "K4^3,3", "K4^5", "K4^0", "4^3", "K4", "K4^3,", "K^3", "Kx^3"] {
            assert!(bad.parse::<CardinalityVector>().is_err(), "{bad}");
        }
    }

    #[test]
    fn json_roundtrip_validates() {
        let v: CardinalityVector = serde_json::from_str(r#"{"n":5,"m":[3,4]}"#).unwrap();
        assert_eq!(v, k("K5^3,4"));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"n":5,"m":[3,4]}"#);
        assert!(serde_json::from_str::<CardinalityVector>(r#"{"n":3,"m":[4]}"#).is_err());
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(indicator_from_cardinalities(&k("K4^3")).to_vec(), vec![0, 0, 0, 1, 0]);
        assert_eq!(
            indicator_from_cardinalities(&k("K5^3,4")).to_vec(),
            vec![0, 0, 0, 1, 1, 0]
        );
        for n in 1..=12 {
            for v in all_nonempty(n) {
                assert_eq!(cardinalities_from_indicator(&indicator_from_cardinalities(&v)), v);
            }
        }
    }

    #[test]
    fn exponent_examples() {
        let e = e_from_g(&indicator_from_cardinalities(&k("K4^3")));
        assert_eq!(e.to_vec(), vec![0, 0, 0, 1, 0]);
        let e = e_from_g(&indicator_from_cardinalities(&k("K6^3")));
        assert_eq!(e.to_vec(), vec![0, 0, 0, 1, 0, 0, 0]);
        let zero = IndicatorVector::new(7, 0).unwrap();
        assert_eq!(e_from_g(&zero), zero);
        assert_eq!(g_from_e(&zero).unwrap(), zero);
        let g = g_from_e(&IndicatorVector::new(4, 0b01000).unwrap()).unwrap();
        assert_eq!(cardinalities_from_indicator(&g), k("K4^3"));
    }

    #[test]
    fn odd_e0_is_rejected() {
        assert!(matches!(
            IndicatorVector::new(3, 0b1001),
            Err(Error::InvalidSignVector(_))
        ));
    }

    #[test]
    fn sign_vector_examples() {
        assert_eq!(sign_vector(&k("K4^3")).entries(), &[1, 1, 1, -1, 1]);
        assert_eq!(sign_vector(&k("K6^3")).entries(), &[1, 1, 1, -1, 1, 1, 1]);
        assert_eq!(sign_vector(&k("K3^2")).entries(), &[1, 1, -1, -1]);
    }

    #[test]
    fn down_and_up_examples() {
        assert_eq!(k("K7^4").down().unwrap(), k("K6^3"));
        assert_eq!(k("K6^1,3").down().unwrap(), k("K5^2"));
        assert_eq!(k("K11^6,8").down().unwrap(), k("K10^5,7"));
        assert_eq!(k("K1^1").down(), Err(Error::Underflow(1)));
        assert_eq!(k("K6^1,3").up(false).unwrap(), k("K7^2,4"));
        assert_eq!(k("K2^1").up(true).unwrap(), k("K3^1,2"));
    }

    #[test]
    fn delete_examples() {
        assert_eq!(k("K4^3").delete_vertex().unwrap(), k("K3^3"));
        assert_eq!(k("K4^4").delete_vertex().unwrap(), k("K3^"));
        assert_eq!(k("K5^3,5").delete_vertex().unwrap(), k("K4^3"));
        assert_eq!(k("K1^1").delete_vertex(), Err(Error::Underflow(1)));
    }

    #[test]
    fn shrink_examples() {
        let s = k("K4^3").shrink_vertex().unwrap();
        assert_eq!((s.state, s.sign), (k("K3^2,3"), 1));
        for n in 2..=10 {
            let s = CardinalityVector::single(n, n).unwrap().shrink_vertex().unwrap();
            assert_eq!(s.state, CardinalityVector::single(n - 1, n - 1).unwrap());
        }
        let s = k("K5^3,4").shrink_vertex().unwrap();
        assert_eq!(s.state, k("K4^2,4"));
        let s = k("K3^1,2").shrink_vertex().unwrap();
        assert_eq!((s.state, s.sign), (k("K2^2"), -1));
    }

    #[test]
    fn delete_and_shrink_are_windows_of_the_sign_vector() {
        for n in 2..=12 {
            for v in all_nonempty(n) {
                let f = sign_vector(&v);
                let d = sign_vector(&v.delete_vertex().unwrap());
                assert_eq!(d.entries(), &f.entries()[..n]);
                let s = v.shrink_vertex().unwrap();
                let window: Vec<i8> = sign_vector(&s.state)
                    .entries()
                    .iter()
                    .map(|x| x * s.sign)
                    .collect();
                assert_eq!(window, &f.entries()[1..], "{v:?}");
            }
        }
    }
}
