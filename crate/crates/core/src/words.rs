//! The pavement word w_{α,β} over the two-letter alphabet {Q, H}, together
//! with the (u, v, w) rotation data used to close the solid-torus sphere.
//!
//! For β > 0 the word is defined recursively by
//! w_{1,0} = Q, w_{0,1} = H, w_{α+β,β}(a,t) = w_{α,β}(a,at),
//! w_{α,α+β}(a,t) = w_{α,β}(at,t); for β ≤ 0 (forcing α = 1) it is Q H^{|β|}.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Letter {
    Q,
    H,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alpha={0} and beta={1} must be coprime")]
    NotCoprime(i64, i64),
    #[error("beta={1} <= 0 requires alpha=1, got alpha={0}")]
    NegativeBetaAlpha(i64, i64),
    #[error("alpha={0} must be non-negative")]
    NegativeAlpha(i64),
}

/// A pavement word with its rotation data. Letters are 1-indexed in the
/// accessors to match the x_{k,1}..x_{k,z} convention used by the simplex
/// wiring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PavementWord {
    pub alpha: i64,
    pub beta: i64,
    pub letters: Vec<Letter>,
    pub u: i64,
    pub v: i64,
    /// rotation pivot index (1-based)
    pub w: usize,
    /// word length
    pub z: usize,
}

impl PavementWord {
    /// Letter x_i, 1-based.
    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i - 1]
    }

    /// #{ i >= l | x_i = c }, 1-based l.
    pub fn count_from(&self, l: usize, c: Letter) -> i64 {
        self.letters[l - 1..].iter().filter(|&&x| x == c).count() as i64
    }

    pub fn count(&self, c: Letter) -> i64 {
        self.count_from(1, c)
    }

    pub fn word_string(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Q => 'Q',
                Letter::H => 'H',
            })
            .collect()
    }
}

impl fmt::Display for PavementWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} u={} v={} w={} z={}",
            self.word_string(),
            self.u,
            self.v,
            self.w,
            self.z
        )
    }
}

fn letters_rec(alpha: i64, beta: i64) -> Vec<Letter> {
    if (alpha, beta) == (1, 0) {
        return vec![Letter::Q];
    }
    if (alpha, beta) == (0, 1) {
        return vec![Letter::H];
    }
    if alpha > beta {
        // w_{α,β}(a,t) = w_{α-β,β}(a, at): substitute H -> QH
        letters_rec(alpha - beta, beta)
            .into_iter()
            .flat_map(|l| match l {
                Letter::Q => vec![Letter::Q],
                Letter::H => vec![Letter::Q, Letter::H],
            })
            .collect()
    } else {
        // w_{α,β}(a,t) = w_{α,β-α}(at, t): substitute Q -> QH
        letters_rec(alpha, beta - alpha)
            .into_iter()
            .flat_map(|l| match l {
                Letter::Q => vec![Letter::Q, Letter::H],
                Letter::H => vec![Letter::H],
            })
            .collect()
    }
}

/// Build w_{α,β}. For β > 0: gcd(α,β) = 1 with α ≥ 0; for β ≤ 0: α = 1 and
/// the word is Q H^{|β|} with (u,v,w) = (1, 0, z).
pub fn build_word(alpha: i64, beta: i64) -> Result<PavementWord, WordError> {
    if alpha < 0 {
        return Err(WordError::NegativeAlpha(alpha));
    }
    if beta <= 0 {
        if alpha != 1 {
            return Err(WordError::NegativeBetaAlpha(alpha, beta));
        }
        let z = (1 + beta.abs()) as usize;
        let mut letters = vec![Letter::Q];
        letters.extend(std::iter::repeat_n(Letter::H, z - 1));
        return Ok(PavementWord {
            alpha,
            beta,
            letters,
            u: 1,
            v: 0,
            w: z,
            z,
        });
    }
    if alpha.gcd(&beta) != 1 {
        return Err(WordError::NotCoprime(alpha, beta));
    }
    let letters = letters_rec(alpha, beta);
    let z = letters.len();
    debug_assert_eq!(z as i64, alpha + beta);

    // α u - β v = 1 normalized into 0 < u <= β, 0 <= v < α
    let (u, v) = if alpha == 0 {
        // w_{0,1} = H only
        (1, 0)
    } else {
        let eg = i64::extended_gcd(&alpha, &beta);
        // eg: alpha*x + beta*y = 1
        let mut u = eg.x;
        u = u.rem_euclid(beta);
        if u == 0 {
            u = beta;
        }
        let v = (alpha * u - 1) / beta;
        (u, v)
    };
    let w = (z as i64 - u - v + 1) as usize;
    Ok(PavementWord {
        alpha,
        beta,
        letters,
        u,
        v,
        w,
        z,
    })
}

/// Verify the rotation/decomposition theorem on a built word (β > 0):
/// (i) w_{α,β} = w_{α-v,β-u} · w_{v,u};
/// (ii) w equals its rotation x_w..x_{z-1} Q H x_2..x_{w-1};
/// (iii) the suffix x_w..x_z holds exactly v Q's and u H's.
pub fn check_rotation_identity(word: &PavementWord) -> bool {
    assert!(word.beta > 0, "rotation identity applies to beta > 0");
    let (alpha, beta, u, v, w, z) = (word.alpha, word.beta, word.u, word.v, word.w, word.z);

    let left = match build_word(alpha - v, beta - u) {
        Ok(wd) => wd.letters,
        Err(_) => return false,
    };
    let right = match build_word(v, u) {
        Ok(wd) => wd.letters,
        Err(_) => return false,
    };
    let concat: Vec<Letter> = left.into_iter().chain(right).collect();
    if concat != word.letters {
        return false;
    }

    // rotation: x_w .. x_{z-1}, Q, H, x_2 .. x_{w-1}
    let mut rotated = Vec::with_capacity(z);
    rotated.extend((w..z).map(|i| word.letter(i)));
    rotated.push(Letter::Q);
    rotated.push(Letter::H);
    rotated.extend((2..w).map(|i| word.letter(i)));
    if rotated != word.letters {
        return false;
    }

    word.count_from(w, Letter::Q) == v && word.count_from(w, Letter::H) == u
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn base_words() {
        assert_eq!(build_word(1, 0).unwrap().word_string(), "Q");
        assert_eq!(build_word(0, 1).unwrap().word_string(), "H");
        assert_eq!(build_word(1, 1).unwrap().word_string(), "QH");
    }

    #[test]
    fn word_5_2() {
        let w = build_word(5, 2).unwrap();
        assert_eq!(w.word_string(), "QQQHQQH");
        assert_eq!((w.u, w.v, w.w, w.z), (1, 2, 5, 7));
    }

    #[test]
    fn word_2_3() {
        assert_eq!(build_word(2, 3).unwrap().word_string(), "QHQHH");
    }

    #[test]
    fn word_negative_beta() {
        let w = build_word(1, -2).unwrap();
        assert_eq!(w.word_string(), "QHH");
        assert_eq!((w.u, w.v, w.w, w.z), (1, 0, 3, 3));
        assert!(build_word(2, -1).is_err());
        assert!(build_word(2, 4).is_err());
    }

    #[test]
    fn rotation_examples() {
        assert!(check_rotation_identity(&build_word(5, 2).unwrap()));
        for beta in 1..=6 {
            assert!(check_rotation_identity(&build_word(1, beta).unwrap()));
        }
    }

    #[test]
    fn rotation_exhaustive_small() {
        for alpha in 1i64..=49 {
            for beta in 1i64..=(50 - alpha) {
                if alpha.gcd(&beta) != 1 {
                    continue;
                }
                let w = build_word(alpha, beta).unwrap();
                assert_eq!(w.count(Letter::Q), alpha);
                assert_eq!(w.count(Letter::H), beta);
                assert_eq!(w.letter(1), Letter::Q);
                assert_eq!(w.letter(w.z), Letter::H);
                assert!(
                    check_rotation_identity(&w),
                    "rotation fails for ({alpha},{beta})"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn bezout_window(alpha in 1i64..400, beta in 1i64..400) {
            prop_assume!(alpha.gcd(&beta) == 1);
            let w = build_word(alpha, beta).unwrap();
            prop_assert_eq!(alpha * w.u - beta * w.v, 1);
            prop_assert!(0 < w.u && w.u <= beta);
            prop_assert!(0 <= w.v && w.v < alpha);
            prop_assert_eq!(w.w as i64, w.z as i64 - w.u - w.v + 1);
            // determinism
            prop_assert_eq!(build_word(alpha, beta).unwrap(), w);
        }
    }
}
