//! Free-group words, Stallings foldings for subgroup membership, and maps
//! from free groups to finite targets given by generator images.

mod fold;
mod images;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fold::{fold_subgroup, graph_member, SubgroupGraph};
pub use images::{enumerate_gen_images, kernel_key, kernels_equal, GenImages, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("enumeration of {count} assignments exceeds the cap {cap}")]
    SizeCap { count: u128, cap: u128 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("generator index {gen} out of range for rank {rank}")]
    GeneratorOutOfRange { gen: usize, rank: usize },
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Freely reduces a raw letter sequence.
pub fn reduce_word(raw: impl IntoIterator<Item = Letter>) -> FreeWord {
    let mut letters: Vec<Letter> = Vec::new();
    for l in raw {
        if letters.last() == Some(&l.inv()) {
            letters.pop();
        } else {
            letters.push(l);
        }
    }
    FreeWord { letters }
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self { letters: vec![Letter::new(gen, false)] }
    }

    /// `g^k` for a single generator.
    pub fn gen_power(gen: usize, k: i64) -> Self {
        let l = Letter::new(gen, k < 0);
        Self { letters: vec![l; k.unsigned_abs() as usize] }
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

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        reduce_word(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// Replaces generator `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[FreeWord]) -> FreeWord {
        reduce_word(self.letters.iter().flat_map(|l| {
            let w = if l.inverse { subs[l.gen].inverse() } else { subs[l.gen].clone() };
            w.letters
        }))
    }

    /// Parses `"a b^-1 a^3"` over the given generator names.
    pub fn parse(s: &str, names: &[String]) -> Result<FreeWord, FreeGroupError> {
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| FreeGroupError::Parse(token.into()))?),
                None => (token, 1),
            };
            let gen = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| FreeGroupError::Parse(token.into()))?;
            raw.extend(std::iter::repeat(Letter::new(gen, exp < 0)).take(exp.unsigned_abs() as usize));
        }
        Ok(reduce_word(raw))
    }

    /// Formats with generator names, collapsing runs into exponents.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("x{}", l.gen));
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_gen().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn reduction_examples() {
        let n = names();
        assert_eq!(FreeWord::parse("a b b^-1", &n).unwrap(), FreeWord::parse("a", &n).unwrap());
        assert!(reduce_word([]).is_empty());
        assert_eq!(FreeWord::parse("a^-1 a b", &n).unwrap(), FreeWord::generator(1));
        assert_eq!(FreeWord::parse("a^3 b^-2", &n).unwrap().display_with(&n), "a^3 b^-2");
        assert!(FreeWord::parse("c", &n).is_err());
    }

    fn letter() -> impl Strategy<Value = Letter> {
        (0usize..3, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn reduce_is_idempotent_and_shrinking(raw in prop::collection::vec(letter(), 0..20)) {
            let w = reduce_word(raw.clone());
            prop_assert!(w.len() <= raw.len());
            prop_assert_eq!(reduce_word(w.letters().to_vec()), w.clone());
            prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        }

        #[test]
        fn multiplication_is_associative(
            x in prop::collection::vec(letter(), 0..10),
            y in prop::collection::vec(letter(), 0..10),
            z in prop::collection::vec(letter(), 0..10),
        ) {
            let (x, y, z) = (reduce_word(x), reduce_word(y), reduce_word(z));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert!(x.mul(&x.inverse()).is_empty());
        }
    }
}
