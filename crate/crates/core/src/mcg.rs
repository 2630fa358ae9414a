//! Mapping classes of the torus as integer matrices.
//!
//! A self-map of the torus is recorded by its action on `H₁(T; Z)` in the
//! basis `(m, l)`: the first column is the image of `m`, the second the image
//! of `l`. Reduction mod 2 lands in `GL₂(Z/2)`, a group of six elements. Its
//! two-element subgroup `H = {U, V}` (identity and swap) decides whether a
//! reparametrized inclusion of the standard torus is regularly homotopic to
//! the inclusion, and the coset tells the parity of quadruple points of any
//! such homotopy.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

use crate::embedding::H1Class;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("matrix has determinant {det}, expected ±1")]
    NotUnimodular { det: i128 },
    #[error("reduction mod 2 is {tau}, which is outside {{U, V}}")]
    NotRegularlyHomotopic { tau: MappingClassMod2 },
    #[error("reduction mod 2 is {tau}, expected U")]
    NotInTauU { tau: MappingClassMod2 },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
}

impl McgError {
    pub fn name(&self) -> &'static str {
        match self {
            McgError::NotUnimodular { .. } => "NotUnimodular",
            McgError::NotRegularlyHomotopic { .. } => "NotRegularlyHomotopic",
            McgError::NotInTauU { .. } => "NotInTauU",
            McgError::UnknownGenerator(_) => "UnknownGenerator",
            McgError::Parse { .. } => "ParseError",
            McgError::Overflow => "Overflow",
        }
    }
}

/// An integer 2×2 matrix `(a b; c d)` of determinant ±1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClass {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MappingClass {
    pub const IDENTITY: MappingClass = MappingClass {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// Exchanges `m` and `l`.
    pub const SWAP: MappingClass = MappingClass {
        a: 0,
        b: 1,
        c: 1,
        d: 0,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, McgError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 && det != -1 {
            return Err(McgError::NotUnimodular { det });
        }
        Ok(MappingClass { a, b, c, d })
    }

    /// `[a, b, c, d]`, row by row.
    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.entries()
            .iter()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> MappingClass {
        let det = self.det();
        MappingClass {
            a: det * self.d,
            b: -det * self.b,
            c: -det * self.c,
            d: det * self.a,
        }
    }

    pub fn checked_mul(&self, rhs: &MappingClass) -> Option<MappingClass> {
        let dot = |x: i64, y: i64, z: i64, w: i64| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
        Some(MappingClass {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    pub fn tau(&self) -> MappingClassMod2 {
        let bit = |x: i64| x.rem_euclid(2) == 1;
        MappingClassMod2::from_bits(bit(self.a), bit(self.b), bit(self.c), bit(self.d))
            .expect("a unimodular matrix is invertible mod 2")
    }
}

impl Mul for MappingClass {
    type Output = MappingClass;

    /// Panics on overflow; see [`MappingClass::checked_mul`].
    fn mul(self, rhs: MappingClass) -> MappingClass {
        self.checked_mul(&rhs)
            .expect("overflow in mapping class product")
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {};{} {})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MappingClass {
    type Err = McgError;

    /// Four whitespace-separated integers `a b c d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: &str| McgError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let nums: Vec<i64> = s
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(&e.to_string()))?;
        let [a, b, c, d] = nums[..] else {
            return Err(parse_err("expected four integers \"a b c d\""));
        };
        MappingClass::new(a, b, c, d)
    }
}

/// An element of `GL₂(Z/2)`, stored as four bits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClassMod2 {
    a: bool,
    b: bool,
    c: bool,
    d: bool,
}

impl MappingClassMod2 {
    pub const U: MappingClassMod2 = MappingClassMod2 {
        a: true,
        b: false,
        c: false,
        d: true,
    };
    pub const V: MappingClassMod2 = MappingClassMod2 {
        a: false,
        b: true,
        c: true,
        d: false,
    };

    pub fn from_bits(a: bool, b: bool, c: bool, d: bool) -> Option<Self> {
        ((a & d) ^ (b & c)).then_some(MappingClassMod2 { a, b, c, d })
    }

    /// The six invertible matrices over Z/2.
    pub fn all() -> Vec<MappingClassMod2> {
        (0..16u8)
            .filter_map(|m| {
                MappingClassMod2::from_bits(m & 8 != 0, m & 4 != 0, m & 2 != 0, m & 1 != 0)
            })
            .collect()
    }

    pub fn in_h(&self) -> bool {
        *self == Self::U || *self == Self::V
    }

    /// Over Z/2 every invertible 2×2 matrix has determinant 1, so the
    /// inverse is the adjugate.
    pub fn inverse(&self) -> MappingClassMod2 {
        MappingClassMod2 {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, class: H1Class) -> H1Class {
        let (x, y) = class.bits();
        H1Class::from_bits((self.a & x) ^ (self.b & y), (self.c & x) ^ (self.d & y))
            .expect("invertible matrices map nonzero classes to nonzero classes")
    }
}

impl Mul for MappingClassMod2 {
    type Output = MappingClassMod2;

    fn mul(self, r: MappingClassMod2) -> MappingClassMod2 {
        MappingClassMod2 {
            a: (self.a & r.a) ^ (self.b & r.c),
            b: (self.a & r.b) ^ (self.b & r.d),
            c: (self.c & r.a) ^ (self.d & r.c),
            d: (self.c & r.b) ^ (self.d & r.d),
        }
    }
}

impl fmt::Display for MappingClassMod2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bit = |x: bool| u8::from(x);
        let body = format!(
            "[{} {};{} {}]",
            bit(self.a),
            bit(self.b),
            bit(self.c),
            bit(self.d)
        );
        match *self {
            Self::U => write!(f, "U{body}"),
            Self::V => write!(f, "V{body}"),
            _ => f.write_str(&body),
        }
    }
}

pub fn tau(m: &MappingClass) -> MappingClassMod2 {
    m.tau()
}

/// Whether `i ∘ f` is regularly homotopic to the inclusion `i` of the
/// standard torus: exactly when `τ(f) ∈ {U, V}`.
pub fn reg_homotopic_to_inclusion(m: &MappingClass) -> bool {
    m.tau().in_h()
}

/// Parity of quadruple points of any generic regular homotopy from
/// `i ∘ f` to `i ∘ g`, where `f`, `g` are self-maps of the standard torus.
///
/// Determined by `τ(g · f⁻¹)`: `U` gives 0 and `V` gives 1. Any other value
/// means the two immersions are not regularly homotopic.
pub fn q_parity(f: &MappingClass, g: &MappingClass) -> Result<bool, McgError> {
    let t = g.tau() * f.tau().inverse();
    match t {
        MappingClassMod2::U => Ok(false),
        MappingClassMod2::V => Ok(true),
        tau => Err(McgError::NotRegularlyHomotopic { tau }),
    }
}

/// Generators of `τ⁻¹(U)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `(1 2; 0 1)`, a double Dehn twist along the meridian.
    MeridianTwist,
    /// `(1 0; 2 1)`, a double Dehn twist along the longitude.
    LongitudeTwist,
    /// `(−1 0; 0 −1)`, rotation by π about the x axis.
    Rotation,
    /// `(−1 0; 0 1)`, reflection in the xy-plane.
    Reflection,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::MeridianTwist,
        Generator::LongitudeTwist,
        Generator::Rotation,
        Generator::Reflection,
    ];

    pub fn matrix(self) -> MappingClass {
        let (a, b, c, d) = match self {
            Generator::MeridianTwist => (1, 2, 0, 1),
            Generator::LongitudeTwist => (1, 0, 2, 1),
            Generator::Rotation => (-1, 0, 0, -1),
            Generator::Reflection => (-1, 0, 0, 1),
        };
        MappingClass { a, b, c, d }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::MeridianTwist => "S",
            Generator::LongitudeTwist => "L",
            Generator::Rotation => "N",
            Generator::Reflection => "R",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Generator, McgError> {
        Generator::ALL
            .into_iter()
            .find(|g| g.symbol() == s)
            .ok_or_else(|| McgError::UnknownGenerator(s.to_string()))
    }

    fn is_involution(self) -> bool {
        matches!(self, Generator::Rotation | Generator::Reflection)
    }

    /// `self^power`, in closed form.
    pub fn power(self, power: i64) -> Result<MappingClass, McgError> {
        let two_k = power.checked_mul(2).ok_or(McgError::Overflow)?;
        Ok(match self {
            Generator::MeridianTwist => MappingClass {
                a: 1,
                b: two_k,
                c: 0,
                d: 1,
            },
            Generator::LongitudeTwist => MappingClass {
                a: 1,
                b: 0,
                c: two_k,
                d: 1,
            },
            g if power.rem_euclid(2) == 0 => {
                let _ = g;
                MappingClass::IDENTITY
            }
            g => g.matrix(),
        })
    }
}

/// A generator raised to a nonzero power.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub power: i64,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            f.write_str(self.generator.symbol())
        } else {
            write!(f, "{}^{}", self.generator.symbol(), self.power)
        }
    }
}

/// A product of generator powers, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `generator^power`, merging with a trailing letter of the same
    /// generator. Involutions are reduced mod 2.
    pub fn push(&mut self, generator: Generator, power: i64) {
        let mut power = power;
        if let Some(last) = self.letters.last() {
            if last.generator == generator {
                power += last.power;
                self.letters.pop();
            }
        }
        if generator.is_involution() {
            power = power.rem_euclid(2);
        }
        if power != 0 {
            self.letters.push(Letter { generator, power });
        }
    }

    pub fn product(&self) -> Result<MappingClass, McgError> {
        self.letters
            .iter()
            .try_fold(MappingClass::IDENTITY, |acc, l| {
                acc.checked_mul(&l.generator.power(l.power)?)
                    .ok_or(McgError::Overflow)
            })
    }

    /// The inverse word: letters reversed with negated powers.
    pub fn inverse(&self) -> Word {
        let mut w = Word::new();
        for l in self.letters.iter().rev() {
            w.push(l.generator, -l.power);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = McgError;

    /// Space-separated letters such as `S^2 L^-1 N R`; `1` or an empty string
    /// is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (sym, power) = match token.split_once('^') {
                Some((sym, p)) => (
                    sym,
                    p.parse::<i64>().map_err(|e| McgError::Parse {
                        input: token.to_string(),
                        reason: e.to_string(),
                    })?,
                ),
                None => (token, 1),
            };
            w.push(Generator::from_symbol(sym)?, power);
        }
        Ok(w)
    }
}

/// `q` minimizing `|n − 2qd|`; the remainder `r = n − 2qd` satisfies
/// `|r| ≤ |d|`. Ties go to the smaller `|r|`, then to positive `r`.
fn even_quotient(n: i64, d: i64) -> i64 {
    debug_assert!(d != 0);
    let (n, two_d) = (n as i128, 2 * d as i128);
    let q0 = n.div_euclid(two_d);
    let candidates = [q0 - 1, q0, q0 + 1];
    let best = candidates
        .into_iter()
        .min_by_key(|&q| {
            let r = n - q * two_d;
            (r.abs(), r < 0)
        })
        .expect("three candidates");
    best as i64
}

/// Writes `M ∈ τ⁻¹(U)` as a word in the four generators.
///
/// Row operations by even multiples run a Euclidean reduction on the first
/// column: the meridian twist adds `2k` times row 2 to row 1, the longitude
/// twist adds `2k` times row 1 to row 2. Forced-even quotients keep the
/// column's parity pattern `(odd, even)`, so the remainder never vanishes
/// in the odd slot and the reduction ends at `(±1, 0)`. The meridian twist
/// then clears the upper-right entry and the two diagonal generators fix
/// signs.
pub fn decompose_tau_u(m: &MappingClass) -> Result<Word, McgError> {
    if m.tau() != MappingClassMod2::U {
        return Err(McgError::NotInTauU { tau: m.tau() });
    }
    let mut cur = *m;
    // row operations applied on the left, in order
    let mut ops = Word::new();
    let mut apply = |cur: &mut MappingClass, g: Generator, k: i64| -> Result<(), McgError> {
        if k != 0 {
            *cur = g.power(k)?.checked_mul(cur).ok_or(McgError::Overflow)?;
            ops.letters.push(Letter {
                generator: g,
                power: k,
            });
        }
        Ok(())
    };
    while cur.c != 0 {
        if cur.a.unsigned_abs() > cur.c.unsigned_abs() {
            let q = even_quotient(cur.a, cur.c);
            apply(&mut cur, Generator::MeridianTwist, -q)?;
        } else {
            let q = even_quotient(cur.c, cur.a);
            apply(&mut cur, Generator::LongitudeTwist, -q)?;
        }
    }
    debug_assert!(cur.a.abs() == 1 && cur.d.abs() == 1 && cur.b % 2 == 0);
    // (a b; 0 d) with a, d = ±1: S^k adds 2k·d to b
    let k = -(cur.b / 2) * cur.d;
    apply(&mut cur, Generator::MeridianTwist, k)?;

    // E_r ⋯ E_1 M = D, so M = E_1⁻¹ ⋯ E_r⁻¹ D
    let mut word = Word::new();
    for l in ops.letters() {
        word.push(l.generator, -l.power);
    }
    match (cur.a, cur.d) {
        (1, 1) => {}
        (-1, -1) => word.push(Generator::Rotation, 1),
        (-1, 1) => word.push(Generator::Reflection, 1),
        (1, -1) => {
            word.push(Generator::Rotation, 1);
            word.push(Generator::Reflection, 1);
        }
        _ => unreachable!("diagonal of a unimodular upper-triangular matrix is ±1"),
    }
    Ok(word)
}
