//! Constructors for the named code families.

use crate::code::{Code, Codeword, SimplicialComplex, MAX_NEURONS};
use crate::error::{Error, Result};

fn singletons(n: usize) -> Code {
    Code::from_codewords(n, (1..=n).map(Codeword::singleton)).expect("singletons fit in [n]")
}

/// `S_n` over `[n+1]`: `[n]`, every singleton, the pairs `{i, n+1}`, and `∅`.
pub fn make_s_n(n: usize) -> Result<Code> {
    if n == 0 || n + 1 > MAX_NEURONS {
        return Err(Error::precondition(format!("S_n needs 1 <= n <= {}, got {n}", MAX_NEURONS - 1)));
    }
    let c = singletons(n);
    make_s_c_over_d(&c, &c)
}

/// `S_Δ = (Δ * (n+1)) ∪ {[n]}` over `[n+1]`.
pub fn make_s_delta(delta: &SimplicialComplex) -> Result<Code> {
    make_s_c_over_d(delta.code(), delta.code())
}

/// `T_n` over `[2n]`: the pairs `{2k-1, 2k}`, the odd and even words, all
/// singletons, and `∅`.
pub fn make_t_n(n: usize) -> Result<Code> {
    if n == 0 || 2 * n > MAX_NEURONS {
        return Err(Error::precondition(format!("T_n needs 1 <= n <= {}, got {n}", MAX_NEURONS / 2)));
    }
    let mut words: Vec<Codeword> = (1..=2 * n).map(Codeword::singleton).collect();
    let mut odd = Codeword::EMPTY;
    let mut even = Codeword::EMPTY;
    for k in 1..=n {
        words.push(Codeword::singleton(2 * k - 1).with(2 * k));
        odd = odd.with(2 * k - 1);
        even = even.with(2 * k);
    }
    words.push(odd);
    words.push(even);
    Code::from_codewords(2 * n, words)
}

/// `S_{C/D} = C ∪ {[n]} ∪ {d ∪ {n+1} : d ∈ D}` over `[n+1]`.
///
/// `D` may be given on fewer neurons than `C`; its words are read as subsets
/// of `[n]` for `n = C.n()`.
pub fn make_s_c_over_d(c: &Code, d: &Code) -> Result<Code> {
    let n = c.n();
    if n + 1 > MAX_NEURONS {
        return Err(Error::InvalidNeuronCount(n + 1));
    }
    if d.n() > n {
        return Err(Error::precondition(format!(
            "D lives on {} neurons but C only on {n}",
            d.n()
        )));
    }
    if let Some(w) = d.iter().find(|w| !c.contains(*w)) {
        return Err(Error::precondition(format!("D is not contained in C: {w} is missing from C")));
    }
    if let Some((a, b)) = c.first_missing_intersection() {
        return Err(Error::NotIntersectionComplete(format!("C: {a} ∩ {b} is not a codeword")));
    }
    if let Some((a, b)) = d.first_missing_intersection() {
        return Err(Error::NotIntersectionComplete(format!("D: {a} ∩ {b} is not a codeword")));
    }
    let apex = Codeword::singleton(n + 1);
    let words = c
        .iter()
        .chain(std::iter::once(Codeword::full(n)))
        .chain(d.iter().map(|w| w.union(apex)));
    Code::from_codewords(n + 1, words)
}

/// The set `D` used by `S_{C/min}`: minimal non-empty codewords plus `∅`.
pub fn minimal_words_code(c: &Code) -> Code {
    Code::from_codewords(c.n(), c.minimal_nonempty_codewords()).expect("subwords of C fit in [n]")
}

/// `S_{C/min}`.
pub fn make_s_c_over_min(c: &Code) -> Result<Code> {
    make_s_c_over_d(c, &minimal_words_code(c))
}
