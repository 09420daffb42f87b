//! Lyndon words with their standard bracketing, a Hall basis of the free
//! Lie algebra.

use std::fmt;

/// How a basis element is built: a generator, or the bracket of two earlier
/// elements (indices into the same basis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Generator(u8),
    Bracket(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    pub word: Vec<u8>,
    pub shape: Shape,
}

impl HallElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Lyndon basis of the free Lie algebra on `generators` letters through
/// degree `max_degree`, ordered by degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    generators: usize,
    max_degree: usize,
    elements: Vec<HallElement>,
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

fn lyndon_words(m: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let top = (m - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let len = w.len();
        while w.len() < n {
            w.push(w[w.len() - len]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl HallBasis {
    pub fn new(generators: usize, max_degree: usize) -> Self {
        assert!(generators <= u8::MAX as usize + 1);
        let words = lyndon_words(generators, max_degree);
        let index: std::collections::HashMap<Vec<u8>, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let elements = words
            .into_iter()
            .map(|w| {
                let shape = if w.len() == 1 {
                    Shape::Generator(w[0])
                } else {
                    let split = (1..w.len())
                        .find(|&i| is_lyndon(&w[i..]))
                        .expect("a single letter is Lyndon");
                    Shape::Bracket(index[&w[..split]], index[&w[split..]])
                };
                HallElement { word: w, shape }
            })
            .collect();
        Self {
            generators,
            max_degree,
            elements,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn count_in_degree(&self, d: usize) -> usize {
        self.elements.iter().filter(|e| e.degree() == d).count()
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.elements.iter().position(|e| e.word == word)
    }

    /// Bracket notation, with letters `X, Y, Z, …` for up to 26 generators.
    pub fn display(&self, idx: usize) -> String {
        let mut s = String::new();
        self.write(idx, &mut s);
        s
    }

    fn write(&self, idx: usize, out: &mut String) {
        match self.elements[idx].shape {
            Shape::Generator(g) => {
                if self.generators <= 3 {
                    out.push((b'X' + g) as char);
                } else {
                    out.push_str(&format!("x{}", g + 1));
                }
            }
            Shape::Bracket(a, b) => {
                out.push('[');
                self.write(a, out);
                out.push(',');
                self.write(b, out);
                out.push(']');
            }
        }
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|i| self.display(i)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Dimension of the degree `n` part of the free Lie algebra on `m` letters.
pub fn witt_dimension(m: usize, n: usize) -> usize {
    fn mobius(mut n: usize) -> i64 {
        let mut res = 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                res = -res;
            }
            d += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    }
    let total: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (m as i64).pow((n / d) as u32))
        .sum();
    (total / n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letters_small_degrees() {
        let h = HallBasis::new(2, 3);
        let names: Vec<String> = (0..h.len()).map(|i| h.display(i)).collect();
        assert_eq!(names, vec!["X", "Y", "[X,Y]", "[X,[X,Y]]", "[[X,Y],Y]"]);
        assert_eq!(h.count_in_degree(3), 2);
    }

    #[test]
    fn witt_counts() {
        for m in 2..=3 {
            let h = HallBasis::new(m, 6);
            for d in 1..=6 {
                assert_eq!(h.count_in_degree(d), witt_dimension(m, d), "m={m} d={d}");
            }
        }
        assert_eq!(witt_dimension(2, 3), 2);
        assert_eq!(witt_dimension(2, 6), 9);
    }

    #[test]
    fn lyndon_check() {
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[0, 1, 1]));
        assert!(!is_lyndon(&[0, 1, 0]));
        assert!(!is_lyndon(&[1, 1]));
    }
}
