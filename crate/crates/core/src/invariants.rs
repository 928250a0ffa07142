//! Seifert invariant lists: parsing, validation, and the derived constants
//! (a, c, n, r, case trichotomy, sign vector, fiber reordering) that drive
//! every other module.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeifertType {
    O1,
    O2,
    N1,
    N2,
    N3,
    N4,
}

impl SeifertType {
    pub fn is_orientable_base(self) -> bool {
        matches!(self, SeifertType::O1 | SeifertType::O2)
    }

    /// Minimal admissible genus for the type.
    pub fn min_genus(self) -> u32 {
        match self {
            SeifertType::O1 => 0,
            SeifertType::O2 | SeifertType::N1 | SeifertType::N2 => 1,
            SeifertType::N3 => 2,
            SeifertType::N4 => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SeifertType::O1 => "o1",
            SeifertType::O2 => "o2",
            SeifertType::N1 => "n1",
            SeifertType::N2 => "n2",
            SeifertType::N3 => "n3",
            SeifertType::N4 => "n4",
        }
    }
}

impl fmt::Display for SeifertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("fiber ({0},{1}): a and b must be coprime")]
    NotCoprime(i64, i64),
    #[error("fiber ({0},{1}): a must be a positive integer (only (±1,0) is accepted with a<0)")]
    NonPositiveA(i64, i64),
    #[error("fiber ({0},{1}): b must be positive when a > 1 (this tool does not renormalize)")]
    NonPositiveB(i64, i64),
    #[error("type {0} requires genus >= {1}, got {2}")]
    GenusTooSmall(SeifertType, u32, u32),
    #[error("arithmetic overflow while deriving constants")]
    Overflow,
}

/// Normalized Seifert invariant list. `fibers[0]` is always the extra
/// non-exceptional fiber `(1, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub e: i64,
    pub ty: SeifertType,
    pub g: u32,
    pub fibers: Vec<(i64, i64)>,
}

impl SeifertInvariants {
    pub fn new(
        e: i64,
        ty: SeifertType,
        g: u32,
        exceptional: &[(i64, i64)],
    ) -> Result<Self, InvariantError> {
        if g < ty.min_genus() {
            return Err(InvariantError::GenusTooSmall(ty, ty.min_genus(), g));
        }
        let mut fibers = Vec::with_capacity(exceptional.len() + 1);
        fibers.push((1, e));
        for &(a, b) in exceptional {
            let (a, b) = if (a, b) == (-1, 0) { (1, 0) } else { (a, b) };
            if a <= 0 {
                return Err(InvariantError::NonPositiveA(a, b));
            }
            if a.gcd(&b) != 1 {
                return Err(InvariantError::NotCoprime(a, b));
            }
            if b <= 0 && a != 1 {
                return Err(InvariantError::NonPositiveB(a, b));
            }
            fibers.push((a, b));
        }
        Ok(Self { e, ty, g, fibers })
    }

    /// Number of fibers minus one (fibers are indexed 0..=m).
    pub fn m(&self) -> usize {
        self.fibers.len() - 1
    }

    /// g' = 2g for orientable base, g otherwise.
    pub fn g_prime(&self) -> usize {
        if self.ty.is_orientable_base() {
            2 * self.g as usize
        } else {
            self.g as usize
        }
    }

    /// The index bound `*` of the fan families: 4g for o-types, 2g for n-types.
    pub fn star(&self) -> usize {
        2 * self.g_prime()
    }

    /// Signs ε_j, j = 1..g'.
    pub fn eps_signs(&self) -> Vec<i64> {
        let gp = self.g_prime();
        (1..=gp)
            .map(|j| match self.ty {
                SeifertType::O1 | SeifertType::N1 => 1,
                SeifertType::O2 | SeifertType::N2 => -1,
                SeifertType::N3 => {
                    if j == 1 {
                        1
                    } else {
                        -1
                    }
                }
                SeifertType::N4 => {
                    if j <= 2 {
                        1
                    } else {
                        -1
                    }
                }
            })
            .collect()
    }

    /// Canonical input-grammar rendering of this list.
    pub fn to_grammar(&self) -> String {
        let mut s = format!("e={};type={};g={}", self.e, self.ty, self.g);
        if self.fibers.len() > 1 {
            let parts: Vec<String> = self.fibers[1..]
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            s.push_str(&format!(";fibers={}", parts.join(",")));
        }
        s
    }
}

/// Parse the CLI grammar `e=<int>;type=<o1|..|n4>;g=<uint>[;fibers=(a,b),...]`.
/// Whitespace-insensitive.
pub fn parse(text: &str) -> Result<SeifertInvariants, InvariantError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut e: Option<i64> = None;
    let mut ty: Option<SeifertType> = None;
    let mut g: Option<u32> = None;
    let mut fibers: Vec<(i64, i64)> = Vec::new();
    for field in compact.split(';') {
        if field.is_empty() {
            continue;
        }
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| InvariantError::Syntax(format!("expected key=value, got `{field}`")))?;
        match key {
            "e" => {
                e = Some(
                    value
                        .parse()
                        .map_err(|_| InvariantError::Syntax(format!("bad integer `{value}`")))?,
                )
            }
            "type" => {
                ty = Some(match value {
                    "o1" => SeifertType::O1,
                    "o2" => SeifertType::O2,
                    "n1" => SeifertType::N1,
                    "n2" => SeifertType::N2,
                    "n3" => SeifertType::N3,
                    "n4" => SeifertType::N4,
                    other => return Err(InvariantError::Syntax(format!("unknown type `{other}`"))),
                })
            }
            "g" => {
                g = Some(
                    value
                        .parse()
                        .map_err(|_| InvariantError::Syntax(format!("bad genus `{value}`")))?,
                )
            }
            "fibers" => fibers = parse_fibers(value)?,
            other => return Err(InvariantError::Syntax(format!("unknown key `{other}`"))),
        }
    }
    let e = e.ok_or_else(|| InvariantError::Syntax("missing `e=`".into()))?;
    let ty = ty.ok_or_else(|| InvariantError::Syntax("missing `type=`".into()))?;
    let g = g.ok_or_else(|| InvariantError::Syntax("missing `g=`".into()))?;
    SeifertInvariants::new(e, ty, g, &fibers)
}

fn parse_fibers(value: &str) -> Result<Vec<(i64, i64)>, InvariantError> {
    let mut out = Vec::new();
    let mut rest = value;
    while !rest.is_empty() {
        let rest2 = rest
            .strip_prefix('(')
            .ok_or_else(|| InvariantError::Syntax(format!("expected `(` in `{rest}`")))?;
        let (body, tail) = rest2
            .split_once(')')
            .ok_or_else(|| InvariantError::Syntax(format!("unclosed fiber pair in `{rest}`")))?;
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| InvariantError::Syntax(format!("expected `a,b` in `({body})`")))?;
        let a: i64 = a
            .parse()
            .map_err(|_| InvariantError::Syntax(format!("bad integer `{a}`")))?;
        let b: i64 = b
            .parse()
            .map_err(|_| InvariantError::Syntax(format!("bad integer `{b}`")))?;
        out.push((a, b));
        rest = tail.strip_prefix(',').unwrap_or(tail);
        if rest == tail && !tail.is_empty() && !tail.starts_with('(') {
            return Err(InvariantError::Syntax(format!("unexpected `{tail}`")));
        }
    }
    Ok(out)
}

/// The trichotomy on (n, c mod p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Case1 => write!(f, "1"),
            Case::Case2 => write!(f, "2"),
            Case::Case3 => write!(f, "3"),
        }
    }
}

/// Everything derived from an invariant list and a prime.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub p: u64,
    /// lcm of the |a_k|
    pub a: i64,
    /// c = Σ b_k (a / a_k), exact
    pub c: i64,
    /// number of a_k divisible by p
    pub n: usize,
    /// number of b_k divisible by p (meaningful when n = 0)
    pub r: usize,
    pub gp: usize,
    pub star: usize,
    pub case: Case,
    pub eps_signs: Vec<i64>,
    /// fiber_order[i] = original index of the fiber in slot i of the
    /// p-reordered view (identity when n = 0)
    pub fiber_order: Vec<usize>,
}

impl DerivedConstants {
    /// Fibers in the reordered view.
    pub fn fibers(&self, inv: &SeifertInvariants) -> Vec<(i64, i64)> {
        self.fiber_order.iter().map(|&i| inv.fibers[i]).collect()
    }
}

fn p_valuation(mut x: i64, p: u64) -> u32 {
    let p = p as i64;
    let mut v = 0;
    while x != 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Derive all constants for `(inv, p)`. The reordering by decreasing
/// p-valuation is applied only in `fiber_order`; `inv` is untouched.
pub fn derive(inv: &SeifertInvariants, p: u64) -> Result<DerivedConstants, InvariantError> {
    let mut a: i64 = 1;
    for &(ak, _) in &inv.fibers {
        a = a
            .checked_mul(ak.abs() / a.gcd(&ak.abs()))
            .ok_or(InvariantError::Overflow)?;
    }
    let mut c: i128 = 0;
    for &(ak, bk) in &inv.fibers {
        c += bk as i128 * (a / ak) as i128;
    }
    let c: i64 = c.try_into().map_err(|_| InvariantError::Overflow)?;

    let pi = p as i64;
    let n = inv.fibers.iter().filter(|&&(ak, _)| ak % pi == 0).count();
    let r = inv.fibers.iter().filter(|&&(_, bk)| bk % pi == 0).count();
    let case = if n > 0 {
        Case::Case3
    } else if c % pi == 0 {
        Case::Case1
    } else {
        Case::Case2
    };

    let mut fiber_order: Vec<usize> = (0..inv.fibers.len()).collect();
    if n > 0 {
        // p-divisible first, by decreasing valuation; stable among ties
        fiber_order.sort_by_key(|&i| {
            let v = p_valuation(inv.fibers[i].0, p);
            (std::cmp::Reverse(v), i)
        });
    }

    Ok(DerivedConstants {
        p,
        a,
        c,
        n,
        r,
        gp: inv.g_prime(),
        star: inv.star(),
        case,
        eps_signs: inv.eps_signs(),
        fiber_order,
    })
}

/// Render the fundamental group presentation (diagnostic output only).
pub fn presentation_pi1(inv: &SeifertInvariants) -> String {
    let gp = inv.g_prime();
    let mut gens: Vec<String> = (0..inv.fibers.len()).map(|k| format!("q_{k}")).collect();
    gens.extend((1..=gp).map(|j| format!("v_{j}")));
    gens.push("h".into());

    let mut rels = Vec::new();
    for (k, &(ak, bk)) in inv.fibers.iter().enumerate() {
        rels.push(format!("[q_{k},h]"));
        rels.push(format!("q_{k}^{ak} h^{bk}"));
    }
    for (j, &eps) in inv.eps_signs().iter().enumerate() {
        rels.push(format!("v_{} h v_{}^-1 h^-{}", j + 1, j + 1, eps));
    }
    let v_word = if inv.ty.is_orientable_base() {
        (1..=inv.g as usize)
            .map(|i| format!("[v{},v{}]", 2 * i - 1, 2 * i))
            .collect::<Vec<_>>()
            .join("")
    } else {
        (1..=inv.g as usize)
            .map(|j| format!("v{j}^2"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let long = (0..inv.fibers.len())
        .map(|k| format!("q_{k}"))
        .collect::<Vec<_>>()
        .join(" ");
    rels.push(if v_word.is_empty() {
        long
    } else {
        format!("{long} {v_word}")
    });

    format!("<{} | {}>", gens.join(", "), rels.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_empty_fibers() {
        let inv = parse("e=0;type=o1;g=1").unwrap();
        assert_eq!(inv.fibers, vec![(1, 0)]);
        assert_eq!(inv.g, 1);
        assert_eq!(inv.ty, SeifertType::O1);
    }

    #[test]
    fn parse_prepends_normalized_fiber() {
        let inv = parse("e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)").unwrap();
        assert_eq!(inv.fibers, vec![(1, -1), (2, 1), (3, 1), (5, 1)]);
    }

    #[test]
    fn parse_whitespace_insensitive() {
        let inv = parse(" e = -1 ; type = n2 ; g = 1 ; fibers = ( 2 , 1 ) ").unwrap();
        assert_eq!(inv.fibers, vec![(1, -1), (2, 1)]);
    }

    #[test]
    fn parse_rejects_bad_genus() {
        assert_eq!(
            parse("e=0;type=n3;g=1").unwrap_err(),
            InvariantError::GenusTooSmall(SeifertType::N3, 2, 1)
        );
        assert!(parse("e=0;type=n4;g=2").is_err());
        assert!(parse("e=0;type=o2;g=0").is_err());
    }

    #[test]
    fn parse_rejects_bad_fibers() {
        assert_eq!(
            parse("e=0;type=o1;g=0;fibers=(2,4)").unwrap_err(),
            InvariantError::NotCoprime(2, 4)
        );
        assert!(parse("e=0;type=o1;g=0;fibers=(0,1)").is_err());
        assert!(parse("e=0;type=o1;g=0;fibers=(-3,1)").is_err());
        // the pavement construction needs b > 0 once a > 1
        assert_eq!(
            parse("e=0;type=o1;g=0;fibers=(3,-1)").unwrap_err(),
            InvariantError::NonPositiveB(3, -1)
        );
        assert!(parse("e=-2;type=o1;g=0;fibers=(1,-4)").is_ok());
        // (-1,0) is normalized, (1,0) kept
        let inv = parse("e=0;type=o1;g=0;fibers=(-1,0),(1,0)").unwrap();
        assert_eq!(inv.fibers, vec![(1, 0), (1, 0), (1, 0)]);
    }

    #[test]
    fn derive_case1_trivial() {
        let inv = parse("e=0;type=o1;g=1").unwrap();
        let d = derive(&inv, 3).unwrap();
        assert_eq!((d.c, d.n), (0, 0));
        assert_eq!(d.case, Case::Case1);
        assert_eq!(d.star, 4);
        assert_eq!(d.gp, 2);
    }

    #[test]
    fn derive_poincare_p7() {
        let inv = parse("e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)").unwrap();
        let d = derive(&inv, 7).unwrap();
        assert_eq!(d.a, 30);
        assert_eq!(d.c, -30 + 15 + 10 + 6);
        assert_eq!(d.c, 1);
        assert_eq!(d.n, 0);
        assert_eq!(d.case, Case::Case2);
    }

    #[test]
    fn derive_poincare_p2_reorders() {
        let inv = parse("e=-1;type=o1;g=0;fibers=(2,1),(3,1),(5,1)").unwrap();
        let d = derive(&inv, 2).unwrap();
        assert_eq!(d.n, 1);
        assert_eq!(d.case, Case::Case3);
        // fiber (2,1) (original index 1) moves to slot 0
        assert_eq!(d.fiber_order, vec![1, 0, 2, 3]);
        assert_eq!(d.fibers(&inv)[0], (2, 1));
    }

    #[test]
    fn derive_valuation_order() {
        let inv = parse("e=0;type=o1;g=0;fibers=(2,1),(4,3)").unwrap();
        let d = derive(&inv, 2).unwrap();
        // nu_2(4) = 2 beats nu_2(2) = 1; ties stay in input order
        assert_eq!(d.fiber_order, vec![2, 1, 0]);
        let inv = parse("e=0;type=o1;g=0;fibers=(3,1),(3,2)").unwrap();
        let d = derive(&inv, 3).unwrap();
        assert_eq!(d.fiber_order, vec![1, 2, 0]);
    }

    #[test]
    fn eps_sign_tables() {
        let mk = |t, g| SeifertInvariants::new(0, t, g, &[]).unwrap().eps_signs();
        assert_eq!(mk(SeifertType::O1, 1), vec![1, 1]);
        assert_eq!(mk(SeifertType::O2, 1), vec![-1, -1]);
        assert_eq!(mk(SeifertType::N1, 2), vec![1, 1]);
        assert_eq!(mk(SeifertType::N2, 2), vec![-1, -1]);
        assert_eq!(mk(SeifertType::N3, 3), vec![1, -1, -1]);
        assert_eq!(mk(SeifertType::N4, 4), vec![1, 1, -1, -1]);
    }

    #[test]
    fn presentation_examples() {
        let inv = parse("e=0;type=o1;g=0").unwrap();
        let s = presentation_pi1(&inv);
        assert!(s.contains("[q_0,h]"));
        assert!(s.contains("q_0^1 h^0"));
        let o = parse("e=0;type=o1;g=1").unwrap();
        assert!(presentation_pi1(&o).contains("[v1,v2]"));
        let n = parse("e=0;type=n2;g=2").unwrap();
        assert!(presentation_pi1(&n).contains("v1^2 v2^2"));
    }

    proptest! {
        #[test]
        fn case_is_function_of_n_and_c(e in -5i64..5, seed in any::<u64>()) {
            let primes = [2u64, 3, 5, 7];
            let p = primes[(seed % 4) as usize];
            let fibers: Vec<(i64,i64)> = match seed % 3 {
                0 => vec![],
                1 => vec![(2, 1), (3, 1)],
                _ => vec![(5, 2), (3, 2)],
            };
            let inv = SeifertInvariants::new(e, SeifertType::O1, 0, &fibers).unwrap();
            let d = derive(&inv, p).unwrap();
            let expect = if d.n > 0 { Case::Case3 }
                else if d.c % (p as i64) == 0 { Case::Case1 } else { Case::Case2 };
            prop_assert_eq!(d.case, expect);
            // reorder is a permutation preserving the multiset
            let mut orig = inv.fibers.clone();
            let mut perm = d.fibers(&inv);
            orig.sort_unstable();
            perm.sort_unstable();
            prop_assert_eq!(orig, perm);
        }

        #[test]
        fn no_fibers_e_divisible_is_case1(g in 0u32..3, mult in -4i64..=4) {
            for p in [2u64, 3, 5] {
                let inv = SeifertInvariants::new(mult * p as i64, SeifertType::O1, g, &[]).unwrap();
                prop_assert_eq!(derive(&inv, p).unwrap().case, Case::Case1);
            }
        }
    }
}
