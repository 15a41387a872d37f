//! Combinatorial codes over at most 64 neurons.
//!
//! Neurons are 1-indexed at every public boundary and stored as bit
//! positions `i - 1` of a single `u64`. Codewords order by weight first and
//! then by the numeric value of their mask, which is the canonical order used
//! by every writer in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_NEURONS: usize = 64;

/// Cap on the number of faces materialised for a downward closure.
pub const MAX_COMPLEX_FACES: usize = 1 << 22;

/// A set of neurons, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword(u64);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    pub const fn from_bits(bits: u64) -> Self {
        Codeword(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `[n] = {1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_NEURONS);
        if n == MAX_NEURONS {
            Codeword(u64::MAX)
        } else {
            Codeword((1u64 << n) - 1)
        }
    }

    pub fn singleton(neuron: usize) -> Self {
        assert!((1..=MAX_NEURONS).contains(&neuron), "neuron {neuron} out of range");
        Codeword(1u64 << (neuron - 1))
    }

    /// Builds a codeword from 1-indexed neurons, rejecting anything outside `[n]`.
    pub fn from_neurons(n: usize, neurons: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in neurons {
            if i == 0 || i > n || i > MAX_NEURONS {
                return Err(Error::NeuronOutOfRange {
                    word: neurons.to_vec(),
                    neuron: i,
                    n,
                });
            }
            bits |= 1u64 << (i - 1);
        }
        Ok(Codeword(bits))
    }

    /// The 1-indexed neurons in increasing order.
    pub fn neurons(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i + 1)
            }
        })
    }

    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, neuron: usize) -> bool {
        neuron >= 1 && neuron <= MAX_NEURONS && self.0 & (1u64 << (neuron - 1)) != 0
    }

    pub fn is_subset_of(self, other: Codeword) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Codeword) -> Codeword {
        Codeword(self.0 | other.0)
    }

    pub fn intersection(self, other: Codeword) -> Codeword {
        Codeword(self.0 & other.0)
    }

    pub fn difference(self, other: Codeword) -> Codeword {
        Codeword(self.0 & !other.0)
    }

    pub fn with(self, neuron: usize) -> Codeword {
        self.union(Codeword::singleton(neuron))
    }

    /// Largest neuron present, 0 for the empty word.
    pub fn max_neuron(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// All subsets of this codeword (including the empty set and itself).
    pub fn subsets(self) -> impl Iterator<Item = Codeword> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Codeword(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }
}

impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.max_neuron() <= 9 {
            for i in self.iter() {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A combinatorial code on `n` neurons. Always contains the empty word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Code {
    n: usize,
    words: BTreeSet<Codeword>,
}

impl Code {
    /// Ingests 1-indexed neuron lists, deduplicating and adding `∅`.
    pub fn from_words<I, W>(n: usize, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::InvalidNeuronCount(n));
        }
        let parsed = words
            .into_iter()
            .map(|w| Codeword::from_neurons(n, w.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Code::from_codewords(n, parsed)
    }

    /// Like [`Code::from_words`] but rejects inputs that do not list `∅`.
    pub fn from_words_strict<I, W>(n: usize, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[usize]>,
    {
        let words: Vec<W> = words.into_iter().collect();
        if !words.iter().any(|w| w.as_ref().is_empty()) {
            return Err(Error::MissingEmptyWord);
        }
        Code::from_words(n, words)
    }

    /// Builds a code from masks. `n = 0` is accepted here so that the code
    /// `{∅}` on no neurons can appear as an intermediate value.
    pub fn from_codewords(n: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        if n > MAX_NEURONS {
            return Err(Error::InvalidNeuronCount(n));
        }
        let full = Codeword::full(n);
        let mut set = BTreeSet::new();
        set.insert(Codeword::EMPTY);
        for w in words {
            if !w.is_subset_of(full) {
                let neuron = w.difference(full).iter().next().unwrap_or(0);
                return Err(Error::NeuronOutOfRange {
                    word: w.neurons(),
                    neuron,
                    n,
                });
            }
            set.insert(w);
        }
        Ok(Code { n, words: set })
    }

    /// The code `{∅}` on `n` neurons.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_NEURONS);
        Code {
            n,
            words: std::iter::once(Codeword::EMPTY).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Never true: `∅` is always present. Provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, c: Codeword) -> bool {
        self.words.contains(&c)
    }

    /// Codewords in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().copied()
    }

    pub fn codewords(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    /// Position of `c` in canonical order.
    pub fn index_of(&self, c: Codeword) -> Option<usize> {
        self.words.iter().position(|&w| w == c)
    }

    pub fn full_word(&self) -> Codeword {
        Codeword::full(self.n)
    }

    pub(crate) fn check_subset(&self, sigma: Codeword) -> Result<()> {
        if sigma.is_subset_of(self.full_word()) {
            Ok(())
        } else {
            Err(Error::NeuronOutOfRange {
                word: sigma.neurons(),
                neuron: sigma.difference(self.full_word()).iter().next().unwrap_or(0),
                n: self.n,
            })
        }
    }

    /// Codewords not properly contained in any other codeword.
    pub fn maximal_codewords(&self) -> Vec<Codeword> {
        let words: Vec<Codeword> = self.iter().collect();
        words
            .iter()
            .copied()
            .filter(|&c| !words.iter().any(|&o| o != c && c.is_subset_of(o)))
            .collect()
    }

    /// Non-empty codewords minimal under inclusion.
    pub fn minimal_nonempty_codewords(&self) -> Vec<Codeword> {
        let nonempty: Vec<Codeword> = self.iter().filter(|c| !c.is_empty()).collect();
        nonempty
            .iter()
            .copied()
            .filter(|&c| !nonempty.iter().any(|&o| o != c && o.is_subset_of(c)))
            .collect()
    }

    /// `Tk_C(σ)`: all codewords containing `σ`.
    pub fn trunk(&self, sigma: Codeword) -> Result<Vec<Codeword>> {
        self.check_subset(sigma)?;
        Ok(self.trunk_unchecked(sigma).collect())
    }

    pub(crate) fn trunk_unchecked(&self, sigma: Codeword) -> impl Iterator<Item = Codeword> + '_ {
        self.iter().filter(move |c| sigma.is_subset_of(*c))
    }

    /// Intersection of all codewords containing `σ`, or `None` if the trunk is empty.
    pub fn trunk_core(&self, sigma: Codeword) -> Option<Codeword> {
        self.trunk_unchecked(sigma)
            .fold(None, |acc: Option<Codeword>, c| {
                Some(acc.map_or(c, |a| a.intersection(c)))
            })
    }

    /// `dim Δ(C)`: the largest weight minus one, `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.iter().map(|c| c.weight() as i64).max().unwrap_or(0) - 1
    }

    pub fn max_weight(&self) -> usize {
        self.iter().map(Codeword::weight).max().unwrap_or(0)
    }

    pub fn is_simplicial_complex(&self) -> bool {
        self.maximal_codewords()
            .into_iter()
            .all(|m| m.subsets().all(|s| self.contains(s)))
    }

    /// `Δ(C)`, the smallest simplicial complex containing the code.
    pub fn simplicial_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.n, self.maximal_codewords())
    }

    /// Whether `σ` is a face of `Δ(C)`, without materialising the complex.
    pub fn in_complex(&self, sigma: Codeword) -> bool {
        self.iter().any(|c| sigma.is_subset_of(c))
    }

    pub fn is_intersection_complete(&self) -> bool {
        self.first_missing_intersection().is_none()
    }

    /// A witness pair `(c1, c2)` whose intersection is not a codeword.
    pub fn first_missing_intersection(&self) -> Option<(Codeword, Codeword)> {
        let words: Vec<Codeword> = self.iter().collect();
        for (i, &a) in words.iter().enumerate() {
            for &b in &words[i + 1..] {
                if !self.contains(a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The smallest intersection complete code containing this one.
    pub fn intersection_completion(&self) -> Code {
        let mut words: BTreeSet<Codeword> = self.words.clone();
        let mut frontier: Vec<Codeword> = words.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let current: Vec<Codeword> = words.iter().copied().collect();
            for b in current {
                let c = a.intersection(b);
                if words.insert(c) {
                    frontier.push(c);
                }
            }
        }
        Code { n: self.n, words }
    }

    /// Membership of `σ` in the intersection completion, decided by the
    /// trunk criterion: `Tk(σ)` is non-empty and strictly shrinks when any
    /// neuron outside `σ` is added.
    pub fn completion_membership(&self, sigma: Codeword) -> Result<bool> {
        self.check_subset(sigma)?;
        if sigma.is_empty() {
            return Ok(true);
        }
        let trunk: Vec<Codeword> = self.trunk_unchecked(sigma).collect();
        if trunk.is_empty() {
            return Ok(false);
        }
        let outside = self.full_word().difference(sigma);
        Ok(outside
            .iter()
            .all(|i| trunk.iter().any(|c| !c.contains(i))))
    }

    /// Restricts every codeword to `σ` without relabelling.
    pub(crate) fn map_words(&self, n: usize, f: impl Fn(Codeword) -> Codeword) -> Result<Code> {
        Code::from_codewords(n, self.iter().map(f))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maximal: HashSet<Codeword> = self.maximal_codewords().into_iter().collect();
        // Listed from largest to smallest, maximal words marked with `*`.
        let parts: Vec<String> = self
            .words
            .iter()
            .rev()
            .copied()
            .map(|c| {
                if maximal.contains(&c) && !c.is_empty() {
                    format!("{c}*")
                } else {
                    c.to_string()
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, {})", self.n, self)
    }
}

/// A code closed under subsets, with its facets cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    code: Code,
    facets: Vec<Codeword>,
}

impl SimplicialComplex {
    /// The complex generated by `facets` on vertex set `[n]`.
    pub fn from_facets(n: usize, facets: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        let gens: Vec<Codeword> = facets.into_iter().collect();
        let mut faces = BTreeSet::new();
        faces.insert(Codeword::EMPTY);
        for &f in &gens {
            if f.weight() > 22 {
                return Err(Error::cap("facet weight for downward closure", f.weight(), 22));
            }
            for s in f.subsets() {
                faces.insert(s);
            }
            if faces.len() > MAX_COMPLEX_FACES {
                return Err(Error::cap("faces in downward closure", faces.len(), MAX_COMPLEX_FACES));
            }
        }
        let code = Code::from_codewords(n, faces)?;
        let facets = code.maximal_codewords();
        Ok(SimplicialComplex { code, facets })
    }

    /// Wraps a code that must already be closed under subsets.
    pub fn from_code(code: Code) -> Result<Self> {
        if !code.is_simplicial_complex() {
            return Err(Error::NotSimplicialComplex(format!("{code}")));
        }
        let facets = code.maximal_codewords();
        Ok(SimplicialComplex { code, facets })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn into_code(self) -> Code {
        self.code
    }

    pub fn facets(&self) -> &[Codeword] {
        &self.facets
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn dim(&self) -> i64 {
        self.code.dim()
    }

    pub fn contains(&self, sigma: Codeword) -> bool {
        self.code.contains(sigma)
    }

    /// Whether this is the full simplex `2^[n]`.
    pub fn is_full_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0] == Codeword::full(self.n())
    }

    /// The cone `Δ * apex`, whose facets are the facets of `Δ` with `apex` added.
    pub fn cone(&self, apex: usize) -> Result<SimplicialComplex> {
        if apex <= self.n() || apex > MAX_NEURONS {
            return Err(Error::precondition(format!(
                "cone apex {apex} must lie in {}..={MAX_NEURONS}",
                self.n() + 1
            )));
        }
        let a = Codeword::singleton(apex);
        let words = self
            .code
            .iter()
            .flat_map(|s| [s, s.union(a)])
            .collect::<Vec<_>>();
        let code = Code::from_codewords(apex, words)?;
        let facets = code.maximal_codewords();
        Ok(SimplicialComplex { code, facets })
    }
}
