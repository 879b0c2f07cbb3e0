//! Freely reduced words in two generators `a`, `b`.
//!
//! The algorithm tracks, alongside each matrix pair, the words expressing the
//! current generators in the original ones (and vice versa), so a stopping
//! pair can be reported symbolically. Words reduce eagerly on every push, so
//! a `Word` is always freely reduced.

use std::fmt;

use crate::moebius::Moebius;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
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

    /// Appends a letter, cancelling it against the current tail if inverse.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Evaluates the word at matrices for `a` and `b`.
    pub fn evaluate(&self, a: &Moebius, b: &Moebius) -> Moebius {
        let a_inv = a.inverse();
        let b_inv = b.inverse();
        let mut out = Moebius::IDENTITY;
        for &l in &self.letters {
            let factor = match l {
                Letter::A => a,
                Letter::AInv => &a_inv,
                Letter::B => b,
                Letter::BInv => &b_inv,
            };
            out = out.compose(factor);
        }
        out
    }

    /// Rewrites the word by sending a ↦ `image_a`, b ↦ `image_b`.
    pub fn substitute(&self, image_a: &Word, image_b: &Word) -> Word {
        let a_inv = image_a.inverse();
        let b_inv = image_b.inverse();
        let mut out = Word::identity();
        for &l in &self.letters {
            let image = match l {
                Letter::A => image_a,
                Letter::AInv => &a_inv,
                Letter::B => image_b,
                Letter::BInv => &b_inv,
            };
            out = out.concat(image);
        }
        out
    }

    /// Removes matched inverse pairs from the two ends until the word is
    /// cyclically reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && *letters.last().unwrap() == letters[0].inverse() {
            letters.pop();
            letters.remove(0);
        }
        Word { letters }
    }

    /// Canonical representative of the conjugacy class of the word and its
    /// inverse: the lexicographically least rotation over the cyclic
    /// reduction and its inverse. Two words get equal keys exactly when they
    /// name the same unoriented closed curve.
    pub fn conjugacy_key(&self) -> Vec<Letter> {
        let core = self.cyclically_reduced();
        let mut best: Option<Vec<Letter>> = None;
        for candidate in [core.clone(), core.inverse()] {
            let n = candidate.letters.len();
            for r in 0..n.max(1) {
                let mut rot: Vec<Letter> = Vec::with_capacity(n);
                rot.extend_from_slice(&candidate.letters[r..]);
                rot.extend_from_slice(&candidate.letters[..r]);
                let key = rot.iter().map(|l| l.symbol()).collect::<String>();
                let better = match &best {
                    None => true,
                    Some(b) => key < b.iter().map(|l| l.symbol()).collect::<String>(),
                };
                if better {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::Moebius;

    fn w(s: &str) -> Word {
        let mut out = Word::identity();
        for ch in s.chars() {
            out.push(match ch {
                'a' => Letter::A,
                'A' => Letter::AInv,
                'b' => Letter::B,
                'B' => Letter::BInv,
                _ => panic!("bad letter"),
            });
        }
        out
    }

    #[test]
    fn free_reduction_on_push() {
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("abBA"), Word::identity());
        assert_eq!(w("abBc".replace('c', "a").as_str()).to_string(), "aa");
    }

    #[test]
    fn concat_and_inverse() {
        let u = w("ab");
        assert_eq!(u.concat(&u.inverse()), Word::identity());
        assert_eq!(w("aB").inverse().to_string(), "bA");
        assert_eq!(w("ab").concat(&w("Ba")).to_string(), "aa");
    }

    #[test]
    fn powers() {
        assert_eq!(w("ab").pow(2).to_string(), "abab");
        assert_eq!(w("ab").pow(-1).to_string(), "BA");
        assert_eq!(w("ab").pow(0), Word::identity());
    }

    #[test]
    fn evaluation_is_homomorphism() {
        let a = Moebius::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let b = Moebius::new(1.0, 1.0, 1.0, 2.0).unwrap();
        let u = w("abA");
        let v = w("aBa");
        let lhs = u.concat(&v).evaluate(&a, &b);
        let rhs = u.evaluate(&a, &b).compose(&v.evaluate(&a, &b));
        for (x, y) in [
            (lhs.a, rhs.a),
            (lhs.b, rhs.b),
            (lhs.c, rhs.c),
            (lhs.d, rhs.d),
        ] {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn substitution_composes() {
        // a ↦ b⁻¹, b ↦ a⁻¹bⁿ is the Fibonacci rewiring; check n = 2 on ab.
        let image_a = w("B");
        let image_b = w("A").concat(&w("b").pow(2));
        assert_eq!(w("ab").substitute(&image_a, &image_b).to_string(), "BAbb");
    }

    #[test]
    fn conjugacy_keys() {
        assert_eq!(w("abA").conjugacy_key(), w("b").conjugacy_key());
        // ab and ba are conjugate; ab and BA are inverse-related.
        assert_eq!(w("ab").conjugacy_key(), w("ba").conjugacy_key());
        assert_eq!(w("ab").conjugacy_key(), w("BA").conjugacy_key());
        assert_ne!(w("ab").conjugacy_key(), w("aB").conjugacy_key());
    }
}
