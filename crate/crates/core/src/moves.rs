//! Symbolic regular homotopies with quadruple-point parity bookkeeping.
//!
//! Moves A, A⁻¹ and B each pass through exactly one quadruple point.
//! Isotopies, segments that only create or remove double curves, and rigid
//! motions pass through none.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::mcg::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MovesError {
    #[error("Morse counts {n_min} - {n_saddle} + {n_max} must equal chi - 1 = {expected}")]
    InconsistentMorseData {
        n_min: u32,
        n_saddle: u32,
        n_max: u32,
        expected: i64,
    },
    #[error("line {line}: unknown move token {token:?}")]
    UnknownToken { line: usize, token: String },
}

impl MovesError {
    pub fn name(&self) -> &'static str {
        match self {
            MovesError::InconsistentMorseData { .. } => "InconsistentMorseData",
            MovesError::UnknownToken { .. } => "UnknownToken",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Creates one circle of intersection and one Dehn twist.
    A,
    AInv,
    /// Exchanges two pairs of intersection arcs.
    B,
    Iso,
    RigidRot,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::A,
        MoveKind::AInv,
        MoveKind::B,
        MoveKind::Iso,
        MoveKind::RigidRot,
    ];

    pub fn token(self) -> &'static str {
        match self {
            MoveKind::A => "A",
            MoveKind::AInv => "A_INV",
            MoveKind::B => "B",
            MoveKind::Iso => "ISO",
            MoveKind::RigidRot => "ROT",
        }
    }

    /// Number of quadruple points, mod 2.
    pub fn parity(self) -> bool {
        matches!(self, MoveKind::A | MoveKind::AInv | MoveKind::B)
    }

    /// The same homotopy run backwards.
    pub fn reversed(self) -> MoveKind {
        match self {
            MoveKind::A => MoveKind::AInv,
            MoveKind::AInv => MoveKind::A,
            other => other,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveToken {
    pub kind: MoveKind,
    pub note: Option<String>,
}

impl MoveToken {
    pub fn new(kind: MoveKind) -> Self {
        MoveToken { kind, note: None }
    }

    pub fn noted(kind: MoveKind, note: impl Into<String>) -> Self {
        MoveToken {
            kind,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence {
    tokens: Vec<MoveToken>,
}

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence::default()
    }

    pub fn from_kinds(kinds: &[MoveKind]) -> Self {
        MoveSequence {
            tokens: kinds.iter().copied().map(MoveToken::new).collect(),
        }
    }

    pub fn tokens(&self) -> &[MoveToken] {
        &self.tokens
    }

    pub fn kinds(&self) -> impl Iterator<Item = MoveKind> + '_ {
        self.tokens.iter().map(|t| t.kind)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn push(&mut self, token: MoveToken) {
        self.tokens.push(token);
    }

    pub fn extend(&mut self, other: &MoveSequence) {
        self.tokens.extend_from_slice(&other.tokens);
    }

    pub fn concat(&self, other: &MoveSequence) -> MoveSequence {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// Time reversal: tokens in reverse order, A and A⁻¹ exchanged.
    pub fn reversed(&self) -> MoveSequence {
        MoveSequence {
            tokens: self
                .tokens
                .iter()
                .rev()
                .map(|t| MoveToken {
                    kind: t.kind.reversed(),
                    note: t.note.clone(),
                })
                .collect(),
        }
    }

    /// Attaches `note` to every token that has none.
    pub fn annotated(mut self, note: &str) -> MoveSequence {
        for t in &mut self.tokens {
            t.note.get_or_insert_with(|| note.to_string());
        }
        self
    }

    /// One token per line, notes as trailing comments.
    pub fn to_move_file(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(t.kind.token());
            if let Some(note) = &t.note {
                out.push_str("  # ");
                out.push_str(note);
            }
            out.push('\n');
        }
        out
    }

    /// Reads one token per line. Text after `#` is a comment; a comment on
    /// a token line becomes that token's note.
    pub fn parse_move_file(text: &str) -> Result<MoveSequence, MovesError> {
        let mut seq = MoveSequence::new();
        for (i, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b.trim(), Some(c.trim())),
                None => (raw.trim(), None),
            };
            if body.is_empty() {
                continue;
            }
            let kind = body
                .parse::<MoveKind>()
                .map_err(|token| MovesError::UnknownToken { line: i + 1, token })?;
            seq.push(MoveToken {
                kind,
                note: comment.filter(|c| !c.is_empty()).map(str::to_string),
            });
        }
        Ok(seq)
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.kinds().map(MoveKind::token).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Parity of the number of quadruple points.
pub fn q_of(seq: &MoveSequence) -> bool {
    seq.kinds().fold(false, |acc, k| acc ^ k.parity())
}

/// Two A moves along parallel meridians, a B move merging the rings, and an
/// A⁻¹ removing the merged ring: a double Dehn twist along the meridian.
pub fn builder_double_meridian_twist() -> MoveSequence {
    use MoveKind::*;
    MoveSequence::from_kinds(&[A, A, B, AInv]).annotated("double meridian twist")
}

/// The same construction along the longitude, which also bounds a disc on
/// one side of the standard torus.
pub fn builder_double_longitude_twist() -> MoveSequence {
    use MoveKind::*;
    MoveSequence::from_kinds(&[A, A, B, AInv]).annotated("double longitude twist")
}

/// Rigid rotation by π about the x axis.
pub fn builder_rotate_pi() -> MoveSequence {
    MoveSequence::from_kinds(&[MoveKind::RigidRot]).annotated("rotation by pi")
}

/// Reflection in the xy-plane: two A moves, then an isotopy.
pub fn builder_reflect_xy() -> MoveSequence {
    use MoveKind::*;
    MoveSequence::from_kinds(&[A, A, Iso]).annotated("reflection in the xy-plane")
}

/// Exchange of meridian and longitude: an A move on a small circle,
/// double curves only, then an isotopy.
pub fn builder_swap_ml() -> MoveSequence {
    use MoveKind::*;
    MoveSequence::from_kinds(&[A, Iso, Iso]).annotated("swap meridian and longitude")
}

/// Critical-point counts of a Morse function on a closed surface with a disc
/// removed, the boundary circle being the minimal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MorseData {
    n_min: u32,
    n_saddle: u32,
    n_max: u32,
    chi: i64,
}

impl MorseData {
    pub fn new(n_min: u32, n_saddle: u32, n_max: u32, chi: i64) -> Result<Self, MovesError> {
        if n_min as i64 - n_saddle as i64 + n_max as i64 != chi - 1 {
            return Err(MovesError::InconsistentMorseData {
                n_min,
                n_saddle,
                n_max,
                expected: chi - 1,
            });
        }
        Ok(MorseData {
            n_min,
            n_saddle,
            n_max,
            chi,
        })
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    pub fn n_saddle(&self) -> u32 {
        self.n_saddle
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }
}

/// The homotopy realizing a Dehn twist of a surface: an initial A move
/// matching the removed disc, then one move per critical point in order
/// minima, saddles, maxima.
pub fn builder_lemma_l2(morse: &MorseData) -> MoveSequence {
    let mut seq = MoveSequence::new();
    seq.push(MoveToken::noted(MoveKind::A, "initial disc"));
    let groups = [
        (morse.n_min, MoveKind::A, "minimum"),
        (morse.n_saddle, MoveKind::B, "saddle"),
        (morse.n_max, MoveKind::AInv, "maximum"),
    ];
    for (count, kind, note) in groups {
        for _ in 0..count {
            seq.push(MoveToken::noted(kind, note));
        }
    }
    seq
}

/// Concatenates the homotopies of the generators in `word`, with an
/// optional leading meridian/longitude swap. Negative powers use the
/// reversed homotopy.
pub fn builder_word_to_moves(word: &Word, swap_prefix: bool) -> MoveSequence {
    let mut seq = if swap_prefix {
        builder_swap_ml()
    } else {
        MoveSequence::new()
    };
    for letter in word.letters() {
        let block = match letter.generator {
            Generator::MeridianTwist => builder_double_meridian_twist(),
            Generator::LongitudeTwist => builder_double_longitude_twist(),
            Generator::Rotation => builder_rotate_pi(),
            Generator::Reflection => builder_reflect_xy(),
        };
        let block = if letter.power < 0 {
            block.reversed()
        } else {
            block
        };
        for _ in 0..letter.power.unsigned_abs() {
            seq.extend(&block);
        }
    }
    seq
}
