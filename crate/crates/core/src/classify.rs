//! Which local Pauli words stabilize `|K_n^m⟩`.
//!
//! Stability under `c·P^⊗n` for `P ∈ {X, Y}` is a parity condition on the sign
//! exponents read forwards and backwards (a "palindrome" condition):
//!
//! | word      | condition on `e_w + e_{n-w}` (mod 2)   | parity of `n` |
//! |-----------|----------------------------------------|---------------|
//! | `X`       | `0`                                    | any           |
//! | `-X`      | `1`                                    | any           |
//! | `Y`       | `w + n/2`                              | even          |
//! | `-Y`      | `w + n/2 + 1`                          | even          |
//! | `iY`      | `w + (n+1)/2 + 1`                      | odd           |
//! | `-iY`     | `w + (n+1)/2`                          | odd           |
//!
//! Only the first three are ever satisfied. The classification is also
//! available in closed form for single-level states ([`classify_base`]) and
//! recursively through the down map ([`classify_recursive`]).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pascal::binom_mod2;
use crate::sym_core::{exponent_bits, low_mask, CardinalityVector};

/// Default cap on `n` for exhaustive enumeration.
pub const ENUMERATION_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StabilizerClass {
    #[serde(rename = "X_PLUS")]
    XPlus,
    #[serde(rename = "X_MINUS")]
    XMinus,
    #[serde(rename = "Y_PLUS")]
    YPlus,
    #[serde(rename = "NONE")]
    Unstable,
}

impl StabilizerClass {
    pub const STABLE: [StabilizerClass; 3] = [Self::XPlus, Self::XMinus, Self::YPlus];

    pub fn is_stable(self) -> bool {
        self != Self::Unstable
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::XPlus => "X_PLUS",
            Self::XMinus => "X_MINUS",
            Self::YPlus => "Y_PLUS",
            Self::Unstable => "NONE",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag.to_ascii_uppercase().as_str() {
            "X_PLUS" | "X" | "+X" => Some(Self::XPlus),
            "X_MINUS" | "-X" => Some(Self::XMinus),
            "Y_PLUS" | "Y" | "+Y" => Some(Self::YPlus),
            "NONE" => Some(Self::Unstable),
            _ => None,
        }
    }

    /// The palindrome condition that characterizes this class.
    pub fn condition(self) -> Option<Palindrome> {
        match self {
            Self::XPlus => Some(Palindrome::X),
            Self::XMinus => Some(Palindrome::MinusX),
            Self::YPlus => Some(Palindrome::Y),
            Self::Unstable => None,
        }
    }
}

impl fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Palindrome {
    X,
    MinusX,
    Y,
    MinusY,
    IY,
    MinusIY,
}

impl Palindrome {
    pub const ALL: [Palindrome; 6] = [
        Self::X,
        Self::MinusX,
        Self::Y,
        Self::MinusY,
        Self::IY,
        Self::MinusIY,
    ];
}

/// Bit `w` is set iff `w` is odd, for `w in 0..=n`.
fn odd_weights(n: usize) -> u128 {
    0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAAu128 & low_mask(n + 1)
}

fn reverse_bits(e: u128, n: usize) -> u128 {
    e.reverse_bits() >> (127 - n)
}

/// Evaluates a palindrome condition on a sign exponent bitmask.
pub(crate) fn palindrome_holds(e: u128, n: usize, which: Palindrome) -> bool {
    let all = low_mask(n + 1);
    let diff = e ^ reverse_bits(e, n);
    let target = match which {
        Palindrome::X => 0,
        Palindrome::MinusX => all,
        Palindrome::Y | Palindrome::MinusY if n % 2 == 1 => return false,
        Palindrome::IY | Palindrome::MinusIY if n.is_multiple_of(2) => return false,
        Palindrome::Y | Palindrome::MinusY => {
            let offset = (n / 2) as u8 + (which == Palindrome::MinusY) as u8;
            odd_weights(n) ^ if offset % 2 == 1 { all } else { 0 }
        }
        Palindrome::IY | Palindrome::MinusIY => {
            let offset = n.div_ceil(2) as u8 + (which == Palindrome::IY) as u8;
            odd_weights(n) ^ if offset % 2 == 1 { all } else { 0 }
        }
    };
    diff == target
}

pub fn check_palindrome(k: &CardinalityVector, which: Palindrome) -> bool {
    palindrome_holds(exponent_bits(k.n(), k.mask()), k.n(), which)
}

pub(crate) fn classify_exponents(e: u128, n: usize) -> StabilizerClass {
    let holds: Vec<Palindrome> = Palindrome::ALL
        .into_iter()
        .filter(|&p| palindrome_holds(e, n, p))
        .collect();
    assert!(
        holds.len() <= 1,
        "state with exponents {e:#b} satisfies several palindrome conditions: {holds:?}"
    );
    match holds.first() {
        None => StabilizerClass::Unstable,
        Some(Palindrome::X) => StabilizerClass::XPlus,
        Some(Palindrome::MinusX) => StabilizerClass::XMinus,
        Some(Palindrome::Y) => StabilizerClass::YPlus,
        Some(p) => panic!("state with exponents {e:#b} satisfies the impossible condition {p:?}"),
    }
}

/// Classifies by evaluating all six palindrome conditions.
///
/// Panics if more than one condition holds, or if one of the three
/// conditions that can never hold (`-Y`, `±iY`) does.
pub fn classify(k: &CardinalityVector) -> StabilizerClass {
    classify_exponents(exponent_bits(k.n(), k.mask()), k.n())
}

/// Closed-form classification of the single-level state `K_n^m`.
pub fn classify_base(n: usize, m: usize) -> StabilizerClass {
    assert!(1 <= m && m <= n, "classify_base needs 1 <= m <= n");
    // (i) 2^t <= m < 2^{t+1}, n - m + 1 a positive multiple of 2^{t+1}.
    let t = usize::BITS - 1 - m.leading_zeros();
    let block = 1usize << (t + 1);
    if (n - m + 1).is_multiple_of(block) {
        return StabilizerClass::XPlus;
    }
    // (ii) m = 2^t, n = (2s+1)2^t + 2^t - 1, i.e. n + 1 a multiple of 2^{t+1}.
    if m.is_power_of_two() && (n + 1).is_multiple_of(2 * m) {
        return StabilizerClass::XMinus;
    }
    // (iii) m = 2^t + 1, n a positive multiple of 2^{t+1}.
    if m >= 2 && (m - 1).is_power_of_two() && n.is_multiple_of(2 * (m - 1)) {
        return StabilizerClass::YPlus;
    }
    StabilizerClass::Unstable
}

/// Classification by descent: single-level states use [`classify_base`],
/// otherwise the class follows from the class of the down state and the
/// parity of the edge count.
pub fn classify_recursive(k: &CardinalityVector) -> StabilizerClass {
    match k.m() {
        [] => classify(k),
        [m] => classify_base(k.n(), *m),
        _ => {
            let below = match k.down() {
                Ok(d) if !d.is_edgeless() => classify_recursive(&d),
                _ => return classify(k),
            };
            match (below, k.edge_count_parity()) {
                (StabilizerClass::XPlus, 0) => StabilizerClass::XPlus,
                (StabilizerClass::XPlus, _) => StabilizerClass::XMinus,
                (StabilizerClass::XMinus, _) => StabilizerClass::YPlus,
                _ => StabilizerClass::Unstable,
            }
        }
    }
}

/// Class of the down state predicted from the class of a stable state.
pub fn going_down_predict(c: StabilizerClass) -> Result<StabilizerClass> {
    match c {
        StabilizerClass::XPlus | StabilizerClass::XMinus => Ok(StabilizerClass::XPlus),
        StabilizerClass::YPlus => Ok(StabilizerClass::XMinus),
        StabilizerClass::Unstable => Err(Error::UndefinedTransition(c.tag().into())),
    }
}

/// Up states of an `X_PLUS` or `X_MINUS` state with their predicted classes.
///
/// For `X_PLUS` both `(n+1, m+1)` and `(n+1, 1 ++ (m+1))` are returned; for odd
/// `n` both are `X_PLUS`, for even `n` exactly one is. The split is decided by
/// the edge-count parity of the up state. For `X_MINUS` only `(n+1, m+1)` is
/// returned, predicted `Y_PLUS`.
pub fn going_up_expand(
    k: &CardinalityVector,
) -> Result<Vec<(CardinalityVector, StabilizerClass)>> {
    match classify(k) {
        StabilizerClass::XPlus => {
            let plain = k.up(false)?;
            let with_one = k.up(true)?;
            let predict = |u: &CardinalityVector| {
                if u.edge_count_parity() == 0 {
                    StabilizerClass::XPlus
                } else {
                    StabilizerClass::XMinus
                }
            };
            let (cp, co) = (predict(&plain), predict(&with_one));
            let both_plus = cp == StabilizerClass::XPlus && co == StabilizerClass::XPlus;
            if (k.n() % 2 == 1) != both_plus || (k.n().is_multiple_of(2) && cp == co) {
                return Err(Error::Consistency(format!(
                    "up states of {k} predicted {cp} and {co}"
                )));
            }
            Ok(vec![(plain, cp), (with_one, co)])
        }
        StabilizerClass::XMinus => Ok(vec![(k.up(false)?, StabilizerClass::YPlus)]),
        other => Err(Error::Precondition(format!(
            "going up needs an X_PLUS or X_MINUS state, {k} is {other}"
        ))),
    }
}

/// All `K_n^m` of the given class, `m` in lexicographic order.
pub fn enumerate_stable(n: usize, class: StabilizerClass) -> Result<Vec<CardinalityVector>> {
    enumerate_stable_capped(n, class, ENUMERATION_CAP)
}

pub fn enumerate_stable_capped(
    n: usize,
    class: StabilizerClass,
    cap: usize,
) -> Result<Vec<CardinalityVector>> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "n",
            limit: cap,
            requested: n,
        });
    }
    // Column w of the Pascal matrix: the weights at which level w flips the sign.
    let columns: Vec<u128> = (0..=n)
        .map(|mj| {
            (0..=n).fold(0u128, |acc, w| {
                acc | ((binom_mod2(w as u64, mj as u64) as u128) << w)
            })
        })
        .collect();
    let mut found: Vec<CardinalityVector> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter_map(|subset| {
            let g = (subset as u128) << 1;
            let mut e = 0u128;
            let mut levels = g;
            while levels != 0 {
                e ^= columns[levels.trailing_zeros() as usize];
                levels &= levels - 1;
            }
            (classify_exponents(e, n) == class)
                .then(|| CardinalityVector::from_mask(n, g).expect("valid mask"))
        })
        .collect();
    found.sort_by(|a, b| a.m().cmp(b.m()));
    Ok(found)
}

/// `2^⌊n/2⌋ - 1`, the number of `X_PLUS` states on `n` qubits.
pub fn predicted_x_plus_count(n: usize) -> u64 {
    (1u64 << (n / 2)) - 1
}

/// Rank over the rationals of the `(n-1) x 3` matrix with rows `(f_j, f_{j+1}, f_{j+2})`.
pub fn lemma6_rank(k: &CardinalityVector) -> Result<usize> {
    if k.n() < 3 || k.min_cardinality().is_none_or(|m1| m1 < 2) {
        return Err(Error::Precondition(format!(
            "rank of sign triples needs n >= 3 and m_1 >= 2, got {k}"
        )));
    }
    let f = crate::sym_core::sign_vector(k);
    let f = f.entries();
    let rows: Vec<[i64; 3]> = (0..=k.n() - 2)
        .map(|j| [f[j] as i64, f[j + 1] as i64, f[j + 2] as i64])
        .collect();
    Ok(integer_rank(rows))
}

/// Fraction-free Gaussian elimination on integer rows.
fn integer_rank<const C: usize>(mut rows: Vec<[i64; C]>) -> usize {
    let mut rank = 0;
    for col in 0..C {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &pc) in row.iter_mut().zip(&p) {
                *x = *x * p[col] - pc * factor;
            }
            let g = row.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
