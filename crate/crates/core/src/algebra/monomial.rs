//! Wedge monomials encoded as a pair of generator bitmasks.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of (1,0)-generators.
pub const MAX_GENERATORS: usize = 64;

/// A basis monomial `φ^{i_1}∧…∧φ^{i_p}∧φ̄^{j_1}∧…∧φ̄^{j_q}` with
/// `i_1 < … < i_p` and `j_1 < … < j_q`.
///
/// Bit `k` of `holo` stands for the generator `f{k+1}` and bit `k` of `anti`
/// for its conjugate `~f{k+1}`. Signs everywhere are relative to the
/// canonical order: holomorphic factors ascending, then antiholomorphic
/// factors ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub holo: u64,
    pub anti: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { holo: 0, anti: 0 };

    pub fn new(holo: u64, anti: u64) -> Self {
        Monomial { holo, anti }
    }

    /// The (1,0)-generator with zero-based index `k`.
    pub fn holo_gen(k: usize) -> Self {
        Monomial::new(1 << k, 0)
    }

    /// The (0,1)-generator with zero-based index `k`.
    pub fn anti_gen(k: usize) -> Self {
        Monomial::new(0, 1 << k)
    }

    pub fn p(&self) -> usize {
        self.holo.count_ones() as usize
    }

    pub fn q(&self) -> usize {
        self.anti.count_ones() as usize
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn degree(&self) -> usize {
        self.p() + self.q()
    }

    /// Largest generator index used, plus one (0 for the unit monomial).
    pub fn span(&self) -> usize {
        let used = self.holo | self.anti;
        (u64::BITS - used.leading_zeros()) as usize
    }

    /// `self ∧ rhs` as `(sign, monomial)`, or `None` when a generator repeats.
    pub fn wedge(&self, rhs: &Monomial) -> Option<(bool, Monomial)> {
        if self.holo & rhs.holo != 0 || self.anti & rhs.anti != 0 {
            return None;
        }
        // rhs.holo moves past self.anti, then both blocks merge.
        let mut swaps = rhs.p() * self.q();
        swaps += merge_inversions(self.holo, rhs.holo);
        swaps += merge_inversions(self.anti, rhs.anti);
        Some((swaps % 2 == 1, Monomial::new(self.holo | rhs.holo, self.anti | rhs.anti)))
    }

    /// The conjugate monomial with its reordering sign `(−1)^{pq}`.
    pub fn conjugate(&self) -> (bool, Monomial) {
        ((self.p() * self.q()) % 2 == 1, Monomial::new(self.anti, self.holo))
    }

    /// Factors in canonical order as `(is_conjugate, zero-based index)`.
    pub fn factors(&self) -> impl Iterator<Item = (bool, usize)> + '_ {
        bits(self.holo).map(|k| (false, k)).chain(bits(self.anti).map(|k| (true, k)))
    }

    /// Splits off the factor at canonical position `pos`, returning the
    /// monomials before and after it.
    pub(crate) fn split_at_factor(&self, pos: usize) -> (Monomial, (bool, usize), Monomial) {
        let factors: Vec<_> = self.factors().collect();
        let mut before = Monomial::ONE;
        let mut after = Monomial::ONE;
        for (i, &(conj, k)) in factors.iter().enumerate() {
            let target = if i < pos {
                &mut before
            } else if i > pos {
                &mut after
            } else {
                continue;
            };
            if conj {
                target.anti |= 1 << k;
            } else {
                target.holo |= 1 << k;
            }
        }
        (before, factors[pos], after)
    }
}

/// Number of pairs `(x, y)` with `x ∈ a`, `y ∈ b`, `x > y`.
fn merge_inversions(a: u64, b: u64) -> usize {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if y >= 63 { 0 } else { !0u64 << (y + 1) };
        count += (a & above).count_ones() as usize;
    }
    count
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(k)
        }
    })
}

/// The smaller set in lexicographic order of sorted index sequences is the
/// one holding the lowest differing element.
fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Total degree first, then lexicographic on the canonical factor sequence.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_cmp(self.holo, other.holo))
            .then_with(|| lex_cmp(self.anti, other.anti))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structure-file syntax, e.g. `f1^f2^~f1`; the unit monomial prints as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        for (i, (conj, k)) in self.factors().enumerate() {
            if i > 0 {
                write!(f, "^")?;
            }
            write!(f, "{}f{}", if conj { "~" } else { "" }, k + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials on `m` generators of bidegree `(p, q)`, in canonical order.
pub fn monomials_of_bidegree(m: usize, p: usize, q: usize) -> Vec<Monomial> {
    let holos = subsets(m, p);
    let antis = subsets(m, q);
    let mut out = Vec::with_capacity(holos.len() * antis.len());
    for &h in &holos {
        for &a in &antis {
            out.push(Monomial::new(h, a));
        }
    }
    out.sort();
    out
}

/// All monomials on `m` generators of total degree `k`, in canonical order.
pub fn monomials_of_degree(m: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in 0..=k.min(m) {
        if k - p <= m {
            out.extend(monomials_of_bidegree(m, p, k - p));
        }
    }
    out.sort();
    out
}

/// `k`-element subsets of `{0..m}` as bitmasks.
fn subsets(m: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, m: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..m {
            if m - i < k {
                break;
            }
            go(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: usize) -> Monomial {
        Monomial::holo_gen(k - 1)
    }
    fn fb(k: usize) -> Monomial {
        Monomial::anti_gen(k - 1)
    }

    #[test]
    fn repeated_generator_vanishes() {
        assert_eq!(f(1).wedge(&f(1)), None);
        assert_eq!(fb(2).wedge(&fb(2)), None);
    }

    #[test]
    fn transposition_signs() {
        let (neg, mono) = fb(1).wedge(&f(1)).unwrap();
        assert!(neg);
        assert_eq!(mono, Monomial::new(1, 1));
        let (neg, mono) = f(2).wedge(&f(1)).unwrap();
        assert!(neg);
        assert_eq!(mono, Monomial::new(0b11, 0));
        let (neg, _) = f(1).wedge(&f(2)).unwrap();
        assert!(!neg);
    }

    #[test]
    fn wedge_sign_matches_permutation_parity() {
        // f3 ∧ ~f1 ∧ f1 ∧ ~f2: sorted to f1 f3 ~f1 ~f2.
        let left = Monomial::new(0b100, 0b001);
        let right = Monomial::new(0b001, 0b010);
        let (neg, mono) = left.wedge(&right).unwrap();
        assert_eq!(mono, Monomial::new(0b101, 0b011));
        // concatenation f3 ~f1 f1 ~f2 -> positions (f1,f3,~f1,~f2) = (2,0,1,3): 2 inversions
        assert!(!neg);
    }

    #[test]
    fn canonical_order() {
        let mut v = monomials_of_degree(2, 2);
        v.sort();
        let names: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["f1^f2", "f1^~f1", "f1^~f2", "f2^~f1", "f2^~f2", "~f1^~f2"]);
    }

    #[test]
    fn counts_are_binomial() {
        assert_eq!(monomials_of_bidegree(4, 2, 1).len(), 6 * 4);
        assert_eq!(monomials_of_degree(3, 3).len(), 20);
        assert_eq!(monomials_of_bidegree(2, 3, 0).len(), 0);
    }

    #[test]
    fn conjugate_sign() {
        let (neg, mono) = Monomial::new(0b1, 0b10).conjugate();
        assert!(neg);
        assert_eq!(mono, Monomial::new(0b10, 0b1));
    }
}
